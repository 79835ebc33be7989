//! Module actions used by the regularity arguments: the left module of
//! polynomials in the `x` generators, and the right module of polynomials
//! in `y` at `n = 1`.
//!
//! On the left module, `x_i` shifts an exponent up and `y_i` shifts it
//! down, killing the term at zero. On the right module over `A[y]`,
//! multiplication by `x` shifts down (so it is locally nilpotent) and by
//! `y` shifts up.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::element::Element;
use crate::monomial::Exp;
use crate::ring::{Coefficient, RingSpec};
use crate::Error;

/// A sparse polynomial: a finite map from exponent vectors to nonzero
/// coefficients. Used both for the `x`-polynomials of the left module and
/// the `y`-polynomials of the right module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    ring: RingSpec,
    terms: BTreeMap<Vec<Exp>, Coefficient>,
}

impl Poly {
    pub fn zero(n: usize, ring: RingSpec) -> Self {
        Poly {
            n,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, ring: RingSpec) -> Self {
        Poly::term(vec![0; n], ring.one())
    }

    pub fn term(expo: Vec<Exp>, c: Coefficient) -> Self {
        let n = expo.len();
        let ring = c.ring();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(expo, c);
        }
        Poly { n, ring, terms }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Exp>, &Coefficient)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> Exp {
        self.terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.n, other.n, "dimension mismatch");
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(|| self.ring.zero());
            *entry = entry.add(c);
        }
        terms.retain(|_, c| !c.is_zero());
        Poly {
            n: self.n,
            ring: self.ring,
            terms,
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Poly {
        let mut terms = BTreeMap::new();
        for (e, v) in &self.terms {
            let prod = v.mul(c);
            if !prod.is_zero() {
                terms.insert(e.clone(), prod);
            }
        }
        Poly {
            n: self.n,
            ring: self.ring,
            terms,
        }
    }

    /// Interpret an element with no `y` exponents as a polynomial in `x`.
    pub fn from_x_element(f: &Element) -> Result<Poly, Error> {
        let mut terms = BTreeMap::new();
        for (m, c) in f.terms() {
            if m.beta.iter().any(|&b| b > 0) {
                return Err(Error::NotAPolynomial(f.to_string()));
            }
            terms.insert(m.alpha.clone(), c.clone());
        }
        Ok(Poly {
            n: f.n(),
            ring: f.ring(),
            terms,
        })
    }

    /// Interpret a univariate element with no `x` exponents as a
    /// polynomial in `y`.
    pub fn from_y_element(f: &Element) -> Result<Poly, Error> {
        if f.n() != 1 {
            return Err(Error::UnivariateOnly(f.n()));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in f.terms() {
            if m.alpha[0] > 0 {
                return Err(Error::NotAPolynomial(f.to_string()));
            }
            terms.insert(m.beta.clone(), c.clone());
        }
        Ok(Poly {
            n: 1,
            ring: f.ring(),
            terms,
        })
    }

    pub fn to_json(&self, variable: &str) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!({ "exponents": e, "coeff": c.to_string() }))
            .collect();
        json!({
            "n": self.n,
            "ring": self.ring.to_string(),
            "variable": variable,
            "terms": terms,
        })
    }

    fn display_with(&self, name: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut factors = Vec::new();
                for (i, &p) in e.iter().enumerate() {
                    if p > 0 {
                        let base = if self.n == 1 {
                            name.to_string()
                        } else {
                            format!("{name}{}", i + 1)
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
        parts.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("x"))
    }
}

/// Left action of an element on a polynomial in the `x` generators:
/// the basis monomial `x^alpha y^beta` sends `x^gamma` to
/// `x^(alpha + gamma - beta)` when `gamma >= beta` componentwise and to
/// zero otherwise.
pub fn act_left(f: &Element, p: &Poly) -> Poly {
    assert_eq!(f.n(), p.n, "dimension mismatch");
    assert_eq!(f.ring(), p.ring, "ring mismatch");
    let mut out = Poly::zero(p.n, p.ring);
    for (m, c) in f.terms() {
        for (gamma, v) in &p.terms {
            if gamma.iter().zip(&m.beta).any(|(&g, &b)| g < b) {
                continue;
            }
            let expo: Vec<Exp> = gamma
                .iter()
                .zip(&m.beta)
                .zip(&m.alpha)
                .map(|((&g, &b), &a)| g - b + a)
                .collect();
            out = out.add(&Poly::term(expo, c.mul(v)));
        }
    }
    out
}

/// Right action of a univariate element on a polynomial in `y`:
/// `y^i * x = y^(i-1)` (zero at `i = 0`) and `y^i * y = y^(i+1)`, extended
/// over the monomials `x^a y^b` of `f` as shift down `a` then up `b`.
pub fn act_right_on_ypoly(q: &Poly, f: &Element) -> Result<Poly, Error> {
    if q.n != 1 || f.n() != 1 {
        return Err(Error::UnivariateOnly(f.n().max(q.n)));
    }
    assert_eq!(f.ring(), q.ring, "ring mismatch");
    let mut out = Poly::zero(1, q.ring);
    for (m, c) in f.terms() {
        let (a, b) = (m.alpha[0], m.beta[0]);
        for (e, v) in &q.terms {
            let i = e[0];
            if i < a {
                continue; // shifted past zero
            }
            out = out.add(&Poly::term(vec![i - a + b], c.mul(v)));
        }
    }
    Ok(out)
}

/// Iterate `q * x` until it vanishes and return the number of steps;
/// `None` if it survives past `bound` (it never does: the action of `x`
/// on `A[y]` is locally nilpotent).
pub fn nilpotence_steps(q: &Poly, bound: Exp) -> Result<Option<Exp>, Error> {
    let x = Element::gen_x(1, 1, q.ring);
    let mut cur = q.clone();
    for k in 0..=bound {
        if cur.is_zero() {
            return Ok(Some(k));
        }
        cur = act_right_on_ypoly(&cur, &x)?;
    }
    Ok(None)
}

/// Matrix of `q -> q * f` on the `y`-polynomials of degree `<= d`, in the
/// basis `1, y, .., y^d` (rows reach `y^(d + box_degree(f))`). Feed the
/// rows to the raw kernel routines to test injectivity.
pub fn right_action_matrix_on_y(f: &Element, d: Exp) -> Result<Vec<Vec<Coefficient>>, Error> {
    if f.n() != 1 {
        return Err(Error::UnivariateOnly(f.n()));
    }
    let ring = f.ring();
    let nrows = (d + f.box_degree()) as usize + 1;
    let ncols = d as usize + 1;
    let mut rows = vec![vec![ring.zero(); ncols]; nrows];
    for j in 0..ncols {
        let q = Poly::term(vec![j as Exp], ring.one());
        let image = act_right_on_ypoly(&q, f)?;
        for (e, c) in image.terms() {
            rows[e[0] as usize][j] = c.clone();
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::monomial::EIndex;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Z: RingSpec = RingSpec::Integer;
    const Q: RingSpec = RingSpec::Rational;

    fn xp(expo: Vec<Exp>) -> Poly {
        Poly::term(expo, Z.one())
    }

    #[test]
    fn left_action_rules() {
        // y * 1 = 0
        let y = Element::gen_y(1, 1, Z);
        assert!(act_left(&y, &Poly::one(1, Z)).is_zero());
        // x1 * x1 x2 = x1^2 x2
        let x1 = Element::gen_x(1, 2, Z);
        let p = xp(vec![1, 1]);
        assert_eq!(act_left(&x1, &p), xp(vec![2, 1]));
    }

    #[test]
    fn e_unit_action_is_a_matrix_unit() {
        // E_{b g} * x^a = delta_{g a} x^b
        let e = Element::e_unit(&EIndex::new(vec![2], vec![3]), Z);
        assert_eq!(act_left(&e, &xp(vec![3])), xp(vec![2]));
        assert!(act_left(&e, &xp(vec![2])).is_zero());
        // and over n = 2 against the expanded product
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let beta = sample::random_monomial(&mut rng, 2, 3).alpha;
            let gamma = sample::random_monomial(&mut rng, 2, 3).alpha;
            let alpha = sample::random_monomial(&mut rng, 2, 3).alpha;
            let e = Element::e_unit(&EIndex::new(beta.clone(), gamma.clone()), Z);
            let got = act_left(&e, &xp(alpha.clone()));
            let expected = if gamma == alpha {
                xp(beta.clone())
            } else {
                Poly::zero(2, Z)
            };
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn action_is_associative_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let f = sample::random_element(&mut rng, 2, Z, 3, 2);
            let g = sample::random_element(&mut rng, 2, Z, 3, 2);
            let p = xp(sample::random_monomial(&mut rng, 2, 2).alpha);
            assert_eq!(act_left(&f.mul(&g), &p), act_left(&f, &act_left(&g, &p)));
        }
    }

    #[test]
    fn action_factors_through_the_y_quotient() {
        // f * 1 only depends on f modulo the left ideal generated by the y's
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let f = sample::random_element(&mut rng, 2, Z, 3, 2);
            let g = sample::random_element(&mut rng, 2, Z, 3, 2);
            let y1 = Element::gen_y(1, 2, Z);
            let shifted = f.add(&g.mul(&y1));
            assert_eq!(
                act_left(&f, &Poly::one(2, Z)),
                act_left(&shifted, &Poly::one(2, Z))
            );
        }
    }

    #[test]
    fn right_action_rules() {
        let x = Element::gen_x(1, 1, Z);
        // y^2 * x = y
        let q = Poly::term(vec![2], Z.one());
        assert_eq!(act_right_on_ypoly(&q, &x).unwrap(), Poly::term(vec![1], Z.one()));
        // 1 * x = 0
        assert!(act_right_on_ypoly(&Poly::one(1, Z), &x).unwrap().is_zero());
        // (1 + y)(x - 1) = -y
        let q = Poly::one(1, Z).add(&Poly::term(vec![1], Z.one()));
        let f = x.sub(&Element::one(1, Z));
        let got = act_right_on_ypoly(&q, &f).unwrap();
        assert_eq!(got, Poly::term(vec![1], Z.from_i64(-1)));
    }

    #[test]
    fn right_action_is_a_module_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let f = sample::random_element(&mut rng, 1, Z, 3, 2);
            let g = sample::random_element(&mut rng, 1, Z, 3, 2);
            let q = Poly::from_y_element(
                &sample::random_element(&mut rng, 1, Z, 3, 3)
                    .involution()
                    .truncate(3),
            );
            let Ok(q) = q else { continue };
            let lhs = act_right_on_ypoly(&q, &f.mul(&g)).unwrap();
            let rhs = act_right_on_ypoly(&act_right_on_ypoly(&q, &f).unwrap(), &g).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn x_is_locally_nilpotent_on_ypolys() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..50 {
            let e = sample::random_monomial(&mut rng, 1, 5).beta;
            let q = Poly::term(e.clone(), Z.from_i64(2));
            let steps = nilpotence_steps(&q, q.degree() + 1).unwrap();
            assert_eq!(steps, Some(e[0] + 1));
        }
    }

    #[test]
    fn x_minus_one_acts_injectively_on_ypolys() {
        let f = Element::gen_x(1, 1, Q).sub(&Element::one(1, Q));
        for d in 0..=5 {
            let rows = right_action_matrix_on_y(&f, d).unwrap();
            let kernel = linalg::kernel_basis_raw(&rows, d as usize + 1, Q).unwrap();
            assert!(kernel.is_empty(), "a y-polynomial was killed at d = {d}");
        }
    }

    #[test]
    fn polynomial_conversions() {
        let x = Element::gen_x(1, 1, Z);
        let p = Poly::from_x_element(&x.pow(2)).unwrap();
        assert_eq!(p, xp(vec![2]));
        let y = Element::gen_y(1, 1, Z);
        assert!(Poly::from_x_element(&y).is_err());
        assert!(Poly::from_y_element(&y).is_ok());
        assert!(Poly::from_y_element(&x).is_err());
    }
}
