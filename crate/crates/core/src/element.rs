//! Sparse normal-form elements of the algebra `S_n(A)` of one-sided
//! inverses of `A[x_1..x_n]`, together with the involution, the
//! augmentation, the Laurent quotient map and the matrix-unit expansion.
//!
//! An element is a finite map from basis monomials `x^alpha y^beta` to
//! nonzero coefficients. Products of basis monomials are again basis
//! monomials, so multiplication is a plain sparse convolution and every
//! result is already in normal form.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::monomial::{EIndex, Exp, Monomial};
use crate::ring::{Coefficient, RingSpec};
use crate::Error;

/// An element of `S_n(A)` in the canonical monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    n: usize,
    ring: RingSpec,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl Element {
    pub fn zero(n: usize, ring: RingSpec) -> Self {
        assert!(n >= 1, "n must be positive");
        Element {
            n,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, ring: RingSpec) -> Self {
        Element::monomial(Monomial::one(n), ring.one())
    }

    pub fn scalar(n: usize, c: Coefficient) -> Self {
        Element::monomial(Monomial::one(n), c)
    }

    /// Single-term element `c * x^alpha y^beta`; drops `c = 0`.
    pub fn monomial(m: Monomial, c: Coefficient) -> Self {
        let n = m.n();
        let ring = c.ring();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element { n, ring, terms }
    }

    /// The generator `x_i`, 1-based as in the display syntax.
    pub fn gen_x(i: usize, n: usize, ring: RingSpec) -> Self {
        assert!((1..=n).contains(&i), "generator index out of range");
        Element::monomial(Monomial::x(i - 1, n), ring.one())
    }

    /// The generator `y_i`, 1-based.
    pub fn gen_y(i: usize, n: usize, ring: RingSpec) -> Self {
        assert!((1..=n).contains(&i), "generator index out of range");
        Element::monomial(Monomial::y(i - 1, n), ring.one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (graded, then lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, m: &Monomial) -> Coefficient {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Smallest `d` with every term inside the degree box `T_d`.
    pub fn box_degree(&self) -> Exp {
        self.terms
            .keys()
            .map(Monomial::box_degree)
            .max()
            .unwrap_or(0)
    }

    fn assert_compatible(&self, other: &Element) {
        assert_eq!(self.n, other.n, "dimension mismatch: n themselves differ");
        assert_eq!(
            self.ring, other.ring,
            "ring mismatch: {} vs {}",
            self.ring, other.ring
        );
    }

    fn add_term(terms: &mut BTreeMap<Monomial, Coefficient>, m: Monomial, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        self.assert_compatible(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Element::add_term(&mut terms, m.clone(), c.clone());
        }
        Element {
            n: self.n,
            ring: self.ring,
            terms,
        }
    }

    pub fn neg(&self) -> Element {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.neg()))
            .collect();
        Element {
            n: self.n,
            ring: self.ring,
            terms,
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coefficient) -> Element {
        assert_eq!(self.ring, c.ring(), "ring mismatch in scale");
        if c.is_zero() {
            return Element::zero(self.n, self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.clone(), v.mul(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Element {
            n: self.n,
            ring: self.ring,
            terms,
        }
    }

    /// Normal-form product: sparse convolution over the monomial product.
    pub fn mul(&self, other: &Element) -> Element {
        self.assert_compatible(other);
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                Element::add_term(&mut terms, m1.mul(m2), c1.mul(c2));
            }
        }
        Element {
            n: self.n,
            ring: self.ring,
            terms,
        }
    }

    pub fn pow(&self, e: Exp) -> Element {
        let mut acc = Element::one(self.n, self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The involution `x_i <-> y_i`: an anti-automorphism fixing `A`.
    pub fn involution(&self) -> Element {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.star(), c.clone()))
            .collect();
        Element {
            n: self.n,
            ring: self.ring,
            terms,
        }
    }

    /// The augmentation: every generator maps to 1, so this is the sum of
    /// all coefficients. A split ring epimorphism onto `A`.
    pub fn pi(&self) -> Coefficient {
        let mut acc = self.ring.zero();
        for c in self.terms.values() {
            acc = acc.add(c);
        }
        acc
    }

    /// Image in the Laurent quotient: `x^alpha y^beta` maps to the
    /// exponent vector `alpha - beta`, coefficients summed.
    pub fn laurent_image(&self) -> LaurentPoly {
        let mut terms: BTreeMap<Vec<i64>, Coefficient> = BTreeMap::new();
        for (m, c) in &self.terms {
            let expo: Vec<i64> = m
                .alpha
                .iter()
                .zip(m.beta.iter())
                .map(|(&a, &b)| a as i64 - b as i64)
                .collect();
            let entry = terms.entry(expo).or_insert_with(|| self.ring.zero());
            *entry = entry.add(c);
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly {
            n: self.n,
            ring: self.ring,
            terms,
        }
    }

    /// Keep only the terms inside the degree box `T_d`.
    pub fn truncate(&self, d: Exp) -> Element {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.in_box(d))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Element {
            n: self.n,
            ring: self.ring,
            terms,
        }
    }

    /// The matrix unit `E_{alpha beta}`: product over every index `i` of
    /// `x_i^a y_i^b - x_i^(a+1) y_i^(b+1)`, expanded to its `2^n` terms.
    pub fn e_unit(e: &EIndex, ring: RingSpec) -> Element {
        let n = e.n();
        let mut acc = Element::one(n, ring);
        for i in 0..n {
            let (a, b) = (e.alpha[i], e.beta[i]);
            let mut lo = Monomial::one(n);
            lo.alpha[i] = a;
            lo.beta[i] = b;
            let mut hi = Monomial::one(n);
            hi.alpha[i] = a + 1;
            hi.beta[i] = b + 1;
            let factor = Element::monomial(lo, ring.one())
                .sub(&Element::monomial(hi, ring.one()));
            acc = acc.mul(&factor);
        }
        acc
    }

    /// Exact coordinates of this element in the matrix-unit family, when it
    /// lies in their span; `None` otherwise.
    ///
    /// Works greedily from the graded-lex top: the leading monomial of a
    /// finite combination `sum c E_{alpha beta}` is `x^(alpha+1) y^(beta+1)`
    /// for the largest index pair, so each step strips one `E`-unit.
    pub fn e_span_coordinates(&self) -> Option<BTreeMap<EIndex, Coefficient>> {
        let mut rest = self.clone();
        let mut coords = BTreeMap::new();
        let sign_flip = self.n % 2 == 1;
        while !rest.is_zero() {
            let (m, c) = rest.terms.iter().next_back()?;
            if m.alpha.iter().any(|&e| e == 0) || m.beta.iter().any(|&e| e == 0) {
                return None;
            }
            let idx = EIndex::new(
                m.alpha.iter().map(|&e| e - 1).collect(),
                m.beta.iter().map(|&e| e - 1).collect(),
            );
            // the leading monomial carries sign (-1)^n from the expansion
            let coeff = if sign_flip { c.neg() } else { c.clone() };
            rest = rest.sub(&Element::e_unit(&idx, self.ring).scale(&coeff));
            coords.insert(idx, coeff);
        }
        Some(coords)
    }

    /// Rebuild an element from matrix-unit coordinates.
    pub fn from_e_coordinates(
        coords: &BTreeMap<EIndex, Coefficient>,
        n: usize,
        ring: RingSpec,
    ) -> Element {
        let mut acc = Element::zero(n, ring);
        for (idx, c) in coords {
            acc = acc.add(&Element::e_unit(idx, ring).scale(c));
        }
        acc
    }

    /// Canonical JSON value: `{"n", "ring", "terms": [...]}` with terms in
    /// canonical order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                json!({
                    "alpha": m.alpha,
                    "beta": m.beta,
                    "coeff": c.to_string(),
                })
            })
            .collect();
        json!({
            "n": self.n,
            "ring": self.ring.to_string(),
            "terms": terms,
        })
    }

    /// Inverse of [`Element::to_json`].
    pub fn from_json(v: &Value) -> Result<Element, Error> {
        let bad = |msg: &str| Error::BadJson(msg.to_string());
        let n = v["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        let ring: RingSpec = v["ring"]
            .as_str()
            .ok_or_else(|| bad("missing ring"))?
            .parse()?;
        let mut out = Element::zero(n, ring);
        for t in v["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
            let read_vec = |key: &str| -> Result<Vec<Exp>, Error> {
                t[key]
                    .as_array()
                    .ok_or_else(|| bad("term missing exponents"))?
                    .iter()
                    .map(|e| {
                        e.as_u64()
                            .map(|v| v as Exp)
                            .ok_or_else(|| bad("bad exponent"))
                    })
                    .collect()
            };
            let alpha = read_vec("alpha")?;
            let beta = read_vec("beta")?;
            if alpha.len() != n || beta.len() != n {
                return Err(bad("exponent vector length differs from n"));
            }
            let c = ring.parse_coeff(t["coeff"].as_str().ok_or_else(|| bad("missing coeff"))?)?;
            out = out.add(&Element::monomial(Monomial::new(alpha, beta), c));
        }
        Ok(out)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let (sign, mag) = match c {
                Coefficient::Int(v) if v.sign() == num::bigint::Sign::Minus => {
                    ("-", Coefficient::Int(-v))
                }
                Coefficient::Rat(v) if v.numer().sign() == num::bigint::Sign::Minus => {
                    ("-", Coefficient::Rat(-v))
                }
                _ => ("+", c.clone()),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            // after a minus sign a bare power would rebind (unary minus is
            // tighter than ^ in the expression grammar), so keep the unit
            // coefficient explicit there
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() && sign != "-" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// A Laurent polynomial, the image of an element under the quotient that
/// inverts every `x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    n: usize,
    ring: RingSpec,
    terms: BTreeMap<Vec<i64>, Coefficient>,
}

impl LaurentPoly {
    pub fn zero(n: usize, ring: RingSpec) -> Self {
        LaurentPoly {
            n,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Coefficient)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, other.n, "dimension mismatch");
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(|| self.ring.zero());
            *entry = entry.add(c);
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly {
            n: self.n,
            ring: self.ring,
            terms,
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, other.n, "dimension mismatch");
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let mut terms: BTreeMap<Vec<i64>, Coefficient> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                let entry = terms.entry(e).or_insert_with(|| self.ring.zero());
                *entry = entry.add(&c1.mul(c2));
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly {
            n: self.n,
            ring: self.ring,
            terms,
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.n;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut factors = Vec::new();
                for (i, &p) in e.iter().enumerate() {
                    if p != 0 {
                        let base = if n == 1 {
                            "x".to_string()
                        } else {
                            format!("x{}", i + 1)
                        };
                        if p == 1 {
                            factors.push(base);
                        } else {
                            factors.push(format!("{base}^{p}"));
                        }
                    }
                }
                if factors.is_empty() {
                    format!("{c}")
                } else if c.is_one() {
                    factors.join("*")
                } else {
                    format!("{c}*{}", factors.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: RingSpec = RingSpec::Rational;
    const Z: RingSpec = RingSpec::Integer;

    fn x() -> Element {
        Element::gen_x(1, 1, Z)
    }

    fn y() -> Element {
        Element::gen_y(1, 1, Z)
    }

    fn one() -> Element {
        Element::one(1, Z)
    }

    #[test]
    fn one_sided_inverse() {
        assert_eq!(y().mul(&x()), one());
        let xy = x().mul(&y());
        assert_ne!(xy, one());
        assert_eq!(xy.num_terms(), 1);
    }

    #[test]
    fn commuting_subring_product() {
        // (x - 1)(x + 1) = x^2 - 1
        let p = x().sub(&one()).mul(&x().add(&one()));
        let expected = x().pow(2).sub(&one());
        assert_eq!(p, expected);
    }

    #[test]
    fn involution_examples() {
        // (x^2 y)* = x y^2
        let f = x().pow(2).mul(&y());
        assert_eq!(f.involution(), x().mul(&y().pow(2)));
        // xy is a fixed point: (xy)* = y* x* = x y
        let xy = x().mul(&y());
        assert_eq!(xy.involution(), xy);
        // E_00 = 1 - xy is a fixed point
        let e00 = Element::e_unit(&EIndex::new(vec![0], vec![0]), Z);
        assert_eq!(e00.involution(), e00);
    }

    #[test]
    fn augmentation_examples() {
        let f = x().pow(2).mul(&y().pow(3));
        assert!(f.pi().is_one());
        let e00 = Element::e_unit(&EIndex::new(vec![0], vec![0]), Z);
        assert!(e00.pi().is_zero());
        // 3x - 2y + 1 -> 2
        let g = x()
            .scale(&Z.from_i64(3))
            .sub(&y().scale(&Z.from_i64(2)))
            .add(&one());
        assert_eq!(g.pi(), Z.from_i64(2));
    }

    #[test]
    fn laurent_examples() {
        let f = x().pow(2).mul(&y().pow(3));
        let img = f.laurent_image();
        let mut expected = LaurentPoly::zero(1, Z);
        expected.terms.insert(vec![-1], Z.one());
        assert_eq!(img, expected);

        let e00 = Element::e_unit(&EIndex::new(vec![0], vec![0]), Z);
        assert!(e00.laurent_image().is_zero());

        let g = x().add(&y());
        assert_eq!(g.laurent_image().terms.len(), 2);
    }

    #[test]
    fn e_unit_expansions() {
        let e00 = Element::e_unit(&EIndex::new(vec![0], vec![0]), Z);
        assert_eq!(e00, one().sub(&x().mul(&y())));

        let e12 = Element::e_unit(&EIndex::new(vec![1], vec![2]), Z);
        let expected = x()
            .mul(&y().pow(2))
            .sub(&x().pow(2).mul(&y().pow(3)));
        assert_eq!(e12, expected);

        // n = 2: four terms
        let e = Element::e_unit(&EIndex::new(vec![0, 0], vec![0, 0]), Z);
        assert_eq!(e.num_terms(), 4);
        assert!(e.pi().is_zero());
    }

    #[test]
    fn truncate_examples() {
        let f = x().pow(3).add(&x());
        assert_eq!(f.truncate(2), x());
        let e00 = Element::e_unit(&EIndex::new(vec![0], vec![0]), Z);
        assert_eq!(e00.truncate(1), e00);
        let g = x().pow(2).mul(&y().pow(2));
        assert!(g.truncate(1).is_zero());
    }

    #[test]
    fn e_span_round_trip() {
        let mut coords = BTreeMap::new();
        coords.insert(EIndex::new(vec![0], vec![2]), Z.from_i64(3));
        coords.insert(EIndex::new(vec![1], vec![0]), Z.from_i64(-2));
        let f = Element::from_e_coordinates(&coords, 1, Z);
        assert_eq!(f.e_span_coordinates(), Some(coords));
        // x is not in the span of the matrix units
        assert_eq!(x().e_span_coordinates(), None);
        // nor is 1
        assert_eq!(one().e_span_coordinates(), None);
    }

    #[test]
    fn e_span_round_trip_n2() {
        let mut coords = BTreeMap::new();
        coords.insert(EIndex::new(vec![0, 1], vec![2, 0]), Z.from_i64(5));
        coords.insert(EIndex::new(vec![1, 1], vec![0, 0]), Z.from_i64(-1));
        let f = Element::from_e_coordinates(&coords, 2, Z);
        assert_eq!(f.e_span_coordinates(), Some(coords));
    }

    #[test]
    fn json_round_trip() {
        let f = x()
            .pow(2)
            .scale(&Z.from_i64(3))
            .sub(&y())
            .add(&one());
        let v = f.to_json();
        assert_eq!(Element::from_json(&v).unwrap(), f);
        let g = Element::zero(2, Q);
        assert_eq!(Element::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn display_reads_naturally() {
        let f = x().pow(2).sub(&one());
        assert_eq!(f.to_string(), "-1 + x^2");
        assert_eq!(Element::zero(1, Z).to_string(), "0");
    }

    proptest! {
        #[test]
        fn homomorphism_properties_on_random_pairs(seed in 0u64..500) {
            // pi and the Laurent map are ring homomorphisms; the involution
            // is an anti-automorphism
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 1 + (seed as usize % 2);
            let f = sample::random_element(&mut rng, n, Q, 4, 3);
            let g = sample::random_element(&mut rng, n, Q, 4, 3);

            let fg = f.mul(&g);
            prop_assert_eq!(fg.pi(), f.pi().mul(&g.pi()));
            prop_assert_eq!(
                fg.laurent_image(),
                f.laurent_image().mul(&g.laurent_image())
            );
            prop_assert_eq!(fg.involution(), g.involution().mul(&f.involution()));
            prop_assert_eq!(
                f.add(&g).laurent_image(),
                f.laurent_image().add(&g.laurent_image())
            );
            prop_assert_eq!(f.involution().involution(), f);
        }
    }
}
