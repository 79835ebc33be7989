//! Exact commutative coefficient rings: the integers, the rationals and
//! residue rings `Z/m`.
//!
//! Every coefficient is stored in canonical form (reduced fraction with
//! positive denominator, residue in `[0, m)`), so equal values compare
//! equal bit for bit. Binary operations assert that both operands live in
//! the same ring; mixing rings is a caller bug, not a recoverable state.

use std::fmt;
use std::str::FromStr;

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Zero};

use crate::Error;

/// Which coefficient ring an element or matrix lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// The ring of integers.
    Integer,
    /// The field of rationals.
    Rational,
    /// The residue ring `Z/m`, `m >= 2`.
    Modular(u64),
}

impl RingSpec {
    /// Residue ring constructor, rejecting degenerate moduli.
    pub fn modular(m: u64) -> Result<Self, Error> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        Ok(RingSpec::Modular(m))
    }

    /// True for the rings in which every nonzero element is invertible,
    /// i.e. the rings the linear-algebra routines accept.
    pub fn is_field(&self) -> bool {
        match self {
            RingSpec::Integer => false,
            RingSpec::Rational => true,
            RingSpec::Modular(m) => is_prime(*m),
        }
    }

    pub fn zero(&self) -> Coefficient {
        match self {
            RingSpec::Integer => Coefficient::Int(BigInt::zero()),
            RingSpec::Rational => Coefficient::Rat(BigRational::zero()),
            RingSpec::Modular(m) => Coefficient::Mod {
                value: 0,
                modulus: *m,
            },
        }
    }

    pub fn one(&self) -> Coefficient {
        self.from_i64(1)
    }

    /// Canonical image of a machine integer in this ring.
    pub fn from_i64(&self, v: i64) -> Coefficient {
        match self {
            RingSpec::Integer => Coefficient::Int(BigInt::from(v)),
            RingSpec::Rational => Coefficient::Rat(BigRational::from_integer(BigInt::from(v))),
            RingSpec::Modular(_) => self.from_bigint(BigInt::from(v)),
        }
    }

    /// Canonical image of an arbitrary-precision integer.
    pub fn from_bigint(&self, v: BigInt) -> Coefficient {
        match self {
            RingSpec::Integer => Coefficient::Int(v),
            RingSpec::Rational => Coefficient::Rat(BigRational::from_integer(v)),
            RingSpec::Modular(m) => {
                let m_big = BigInt::from(*m);
                let mut r = v % &m_big;
                if r.sign() == Sign::Minus {
                    r += &m_big;
                }
                let (_, digits) = r.to_u64_digits();
                Coefficient::Mod {
                    value: digits.first().copied().unwrap_or(0),
                    modulus: *m,
                }
            }
        }
    }

    /// Parse a coefficient literal: an integer in any ring, `p/q` in the
    /// rationals only.
    pub fn parse_coeff(&self, s: &str) -> Result<Coefficient, Error> {
        if let Some((p, q)) = s.split_once('/') {
            if *self != RingSpec::Rational {
                return Err(Error::BadCoefficient(format!(
                    "fraction `{s}` is only valid over Q (ring is {self})"
                )));
            }
            let p = BigInt::from_str(p.trim())
                .map_err(|_| Error::BadCoefficient(format!("bad numerator in `{s}`")))?;
            let q = BigInt::from_str(q.trim())
                .map_err(|_| Error::BadCoefficient(format!("bad denominator in `{s}`")))?;
            if q.is_zero() {
                return Err(Error::BadCoefficient(format!("zero denominator in `{s}`")));
            }
            Ok(Coefficient::Rat(BigRational::new(p, q)))
        } else {
            let v = BigInt::from_str(s.trim())
                .map_err(|_| Error::BadCoefficient(format!("bad integer literal `{s}`")))?;
            Ok(self.from_bigint(v))
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integer => write!(f, "Z"),
            RingSpec::Rational => write!(f, "Q"),
            RingSpec::Modular(m) => write!(f, "Zmod:{m}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "Z" | "z" => Ok(RingSpec::Integer),
            "Q" | "q" => Ok(RingSpec::Rational),
            _ => {
                let m = s
                    .strip_prefix("Zmod:")
                    .or_else(|| s.strip_prefix("zmod:"))
                    .or_else(|| s.strip_prefix("Z/"))
                    .ok_or_else(|| Error::BadRing(s.to_string()))?;
                let m: u64 = m.parse().map_err(|_| Error::BadRing(s.to_string()))?;
                RingSpec::modular(m)
            }
        }
    }
}

/// An exact element of one of the supported rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Int(BigInt),
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Coefficient {
    pub fn ring(&self) -> RingSpec {
        match self {
            Coefficient::Int(_) => RingSpec::Integer,
            Coefficient::Rat(_) => RingSpec::Rational,
            Coefficient::Mod { modulus, .. } => RingSpec::Modular(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Int(v) => v.is_zero(),
            Coefficient::Rat(v) => v.is_zero(),
            Coefficient::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Int(v) => v.is_one(),
            Coefficient::Rat(v) => v.is_one(),
            Coefficient::Mod { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Int(a), Coefficient::Int(b)) => Coefficient::Int(a + b),
            (Coefficient::Rat(a), Coefficient::Rat(b)) => Coefficient::Rat(a + b),
            (
                Coefficient::Mod { value: a, modulus: m },
                Coefficient::Mod { value: b, modulus: m2 },
            ) if m == m2 => Coefficient::Mod {
                value: ((*a as u128 + *b as u128) % *m as u128) as u64,
                modulus: *m,
            },
            _ => panic!("ring mismatch: {} vs {}", self.ring(), other.ring()),
        }
    }

    pub fn neg(&self) -> Coefficient {
        match self {
            Coefficient::Int(a) => Coefficient::Int(-a),
            Coefficient::Rat(a) => Coefficient::Rat(-a),
            Coefficient::Mod { value, modulus } => Coefficient::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    pub fn sub(&self, other: &Coefficient) -> Coefficient {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Int(a), Coefficient::Int(b)) => Coefficient::Int(a * b),
            (Coefficient::Rat(a), Coefficient::Rat(b)) => Coefficient::Rat(a * b),
            (
                Coefficient::Mod { value: a, modulus: m },
                Coefficient::Mod { value: b, modulus: m2 },
            ) if m == m2 => Coefficient::Mod {
                value: ((*a as u128 * *b as u128) % *m as u128) as u64,
                modulus: *m,
            },
            _ => panic!("ring mismatch: {} vs {}", self.ring(), other.ring()),
        }
    }

    /// Multiplicative inverse, when this element is a unit.
    pub fn inv(&self) -> Option<Coefficient> {
        match self {
            Coefficient::Int(v) => {
                if v.is_one() || (-v).is_one() {
                    Some(Coefficient::Int(v.clone()))
                } else {
                    None
                }
            }
            Coefficient::Rat(v) => {
                if v.is_zero() {
                    None
                } else {
                    Some(Coefficient::Rat(v.recip()))
                }
            }
            Coefficient::Mod { value, modulus } => {
                mod_inverse(*value, *modulus).map(|value| Coefficient::Mod {
                    value,
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        self.inv().is_some()
    }

    /// Exact division; panics if `other` is not a unit (callers check).
    pub fn div(&self, other: &Coefficient) -> Coefficient {
        let inv = other
            .inv()
            .unwrap_or_else(|| panic!("division by non-unit {other}"));
        self.mul(&inv)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Int(v) => write!(f, "{v}"),
            Coefficient::Rat(v) => {
                if v.denom().is_one() {
                    write!(f, "{}", v.numer())
                } else {
                    write!(f, "{}/{}", v.numer(), v.denom())
                }
            }
            Coefficient::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Extended-Euclid inverse of `a` modulo `m`; `None` when `gcd(a, m) != 1`.
fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin, valid for all `u64` inputs with this base set.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let pow_mod = |b: u64, mut e: u64| -> u64 {
        let mut acc: u128 = 1;
        let mut base = b as u128 % n as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % n as u128;
            }
            base = base * base % n as u128;
            e >>= 1;
        }
        acc as u64
    };
    'base: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn coeff(ring: RingSpec, v: i64) -> Coefficient {
        ring.from_i64(v)
    }

    #[test]
    fn integer_arithmetic() {
        let r = RingSpec::Integer;
        assert_eq!(coeff(r, 2).add(&coeff(r, 3)), coeff(r, 5));
        assert_eq!(coeff(r, 2).mul(&coeff(r, -3)), coeff(r, -6));
        assert!(!coeff(r, 2).is_unit());
        assert!(coeff(r, -1).is_unit());
    }

    #[test]
    fn rational_arithmetic() {
        let r = RingSpec::Rational;
        let half = r.parse_coeff("1/2").unwrap();
        let two_thirds = r.parse_coeff("2/3").unwrap();
        assert_eq!(half.mul(&two_thirds), r.parse_coeff("1/3").unwrap());
        assert!(half.is_unit());
        assert_eq!(half.to_string(), "1/2");
        // canonical form: reduced, positive denominator
        assert_eq!(r.parse_coeff("-2/-4").unwrap(), half);
    }

    #[test]
    fn modular_arithmetic() {
        let r = RingSpec::modular(5).unwrap();
        assert_eq!(coeff(r, 3).mul(&coeff(r, 4)), coeff(r, 2));
        let z6 = RingSpec::modular(6).unwrap();
        assert!(!z6.from_i64(3).is_unit());
        assert!(z6.from_i64(5).is_unit());
        assert_eq!(z6.from_i64(-1), z6.from_i64(5));
    }

    #[test]
    fn field_detection() {
        assert!(RingSpec::Rational.is_field());
        assert!(!RingSpec::Integer.is_field());
        assert!(RingSpec::Modular(5).is_field());
        assert!(!RingSpec::Modular(6).is_field());
        assert!(RingSpec::Modular(2).is_field());
        assert!(RingSpec::Modular(4294967311).is_field()); // prime > 2^32
    }

    #[test]
    fn ring_spec_parsing() {
        assert_eq!("Z".parse::<RingSpec>().unwrap(), RingSpec::Integer);
        assert_eq!("Q".parse::<RingSpec>().unwrap(), RingSpec::Rational);
        assert_eq!("Zmod:7".parse::<RingSpec>().unwrap(), RingSpec::Modular(7));
        assert!("Zmod:1".parse::<RingSpec>().is_err());
        assert!("F7".parse::<RingSpec>().is_err());
    }

    #[test]
    fn fraction_literal_rejected_outside_q() {
        assert!(RingSpec::Integer.parse_coeff("1/2").is_err());
        assert!(RingSpec::Modular(5).parse_coeff("1/2").is_err());
    }

    fn arb_ring() -> impl Strategy<Value = RingSpec> {
        prop_oneof![
            Just(RingSpec::Integer),
            Just(RingSpec::Rational),
            (2u64..50).prop_map(RingSpec::Modular),
        ]
    }

    proptest! {
        #[test]
        fn ring_axioms((ring, a, b, c) in arb_ring().prop_flat_map(|r| {
            (Just(r), -100i64..100, -100i64..100, -100i64..100)
        })) {
            let (a, b, c) = (ring.from_i64(a), ring.from_i64(b), ring.from_i64(c));
            // associativity
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            // commutativity
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            // distributivity
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            // inverses where they exist
            if let Some(inv) = a.inv() {
                prop_assert!(a.mul(&inv).is_one());
            }
        }

        #[test]
        fn canonical_rationals(p in -200i64..200, q in 1i64..200, k in 1i64..50) {
            let r = RingSpec::Rational;
            let plain = r.parse_coeff(&format!("{p}/{q}")).unwrap();
            let scaled = r.parse_coeff(&format!("{}/{}", p * k, q * k)).unwrap();
            prop_assert_eq!(plain, scaled);
        }
    }
}
