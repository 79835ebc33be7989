//! Basis monomials `x^alpha y^beta` and the index pairs of the matrix-unit
//! family `E_{alpha beta}`.
//!
//! The defining relations (`y_i x_i = 1`, all other generator pairs
//! commuting) rewrite any product of two basis monomials into a single
//! basis monomial, so the monomial product below is closed: no expansion
//! into sums is ever needed.

use std::cmp::Ordering;
use std::fmt;

/// Exponent type for the `x`/`y` generator powers.
pub type Exp = u32;

/// The basis word `x^alpha y^beta`; both vectors have length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub alpha: Vec<Exp>,
    pub beta: Vec<Exp>,
}

impl Monomial {
    pub fn new(alpha: Vec<Exp>, beta: Vec<Exp>) -> Self {
        assert_eq!(alpha.len(), beta.len(), "exponent vectors must share n");
        Monomial { alpha, beta }
    }

    pub fn one(n: usize) -> Self {
        Monomial {
            alpha: vec![0; n],
            beta: vec![0; n],
        }
    }

    /// The generator `x_i` (0-based index).
    pub fn x(i: usize, n: usize) -> Self {
        let mut m = Monomial::one(n);
        m.alpha[i] = 1;
        m
    }

    /// The generator `y_i` (0-based index).
    pub fn y(i: usize, n: usize) -> Self {
        let mut m = Monomial::one(n);
        m.beta[i] = 1;
        m
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.alpha.iter().map(|&e| e as u64).sum::<u64>()
            + self.beta.iter().map(|&e| e as u64).sum::<u64>()
    }

    /// Largest exponent appearing in either vector: the smallest `d` with
    /// this monomial inside the degree box `T_d`.
    pub fn box_degree(&self) -> Exp {
        self.alpha
            .iter()
            .chain(self.beta.iter())
            .copied()
            .max()
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.alpha.iter().all(|&e| e == 0) && self.beta.iter().all(|&e| e == 0)
    }

    /// True when every exponent is `<= d`.
    pub fn in_box(&self, d: Exp) -> bool {
        self.box_degree() <= d
    }

    /// Normal form of the product `(x^a y^b) * (x^c y^d)`.
    ///
    /// Componentwise, `y^b x^c` collapses to `x^(c-b)` or `y^(b-c)`, so the
    /// result is `x^(a + max(c-b, 0)) y^(d + max(b-c, 0))`.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.n(), other.n(), "monomials must share n");
        let n = self.n();
        let mut alpha = Vec::with_capacity(n);
        let mut beta = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = (self.alpha[i], self.beta[i]);
            let (c, d) = (other.alpha[i], other.beta[i]);
            alpha.push(a + c.saturating_sub(b));
            beta.push(d + b.saturating_sub(c));
        }
        Monomial { alpha, beta }
    }

    /// Swap the `x` and `y` exponents; the monomial part of the involution.
    pub fn star(&self) -> Monomial {
        Monomial {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }
}

// Canonical term order: graded by total degree, then lexicographic on
// (alpha, beta). This fixes iteration, display and serialization order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.alpha.cmp(&other.alpha))
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let n = self.n();
        let mut parts = Vec::new();
        for (i, &e) in self.alpha.iter().enumerate() {
            if e > 0 {
                parts.push(gen_power("x", i, e, n));
            }
        }
        for (i, &e) in self.beta.iter().enumerate() {
            if e > 0 {
                parts.push(gen_power("y", i, e, n));
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

fn gen_power(name: &str, i: usize, e: Exp, n: usize) -> String {
    let base = if n == 1 {
        name.to_string()
    } else {
        format!("{}{}", name, i + 1)
    };
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

/// Index pair of the matrix unit `E_{alpha beta}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EIndex {
    pub alpha: Vec<Exp>,
    pub beta: Vec<Exp>,
}

impl EIndex {
    pub fn new(alpha: Vec<Exp>, beta: Vec<Exp>) -> Self {
        assert_eq!(alpha.len(), beta.len(), "index vectors must share n");
        EIndex { alpha, beta }
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    /// `E_{a b} * x_k` collapses to a single `E` index or to zero:
    /// the `k`-th `beta` entry shifts down, vanishing at zero.
    pub fn mul_x(&self, k: usize) -> Option<EIndex> {
        if self.beta[k] == 0 {
            return None;
        }
        let mut out = self.clone();
        out.beta[k] -= 1;
        Some(out)
    }

    /// `E_{a b} * y_k`: the `k`-th `beta` entry shifts up.
    pub fn mul_y(&self, k: usize) -> EIndex {
        let mut out = self.clone();
        out.beta[k] += 1;
        out
    }

    /// `x_k * E_{a b}`: the `k`-th `alpha` entry shifts up.
    pub fn x_mul(&self, k: usize) -> EIndex {
        let mut out = self.clone();
        out.alpha[k] += 1;
        out
    }

    /// `y_k * E_{a b}` collapses or vanishes on `alpha`.
    pub fn y_mul(&self, k: usize) -> Option<EIndex> {
        if self.alpha[k] == 0 {
            return None;
        }
        let mut out = self.clone();
        out.alpha[k] -= 1;
        Some(out)
    }
}

impl Ord for EIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = Monomial::new(self.alpha.clone(), self.beta.clone());
        let b = Monomial::new(other.alpha.clone(), other.beta.clone());
        a.cmp(&b)
    }
}

impl PartialOrd for EIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() == 1 {
            write!(f, "E[{},{}]", self.alpha[0], self.beta[0])
        } else {
            let a: Vec<String> = self.alpha.iter().map(|e| e.to_string()).collect();
            let b: Vec<String> = self.beta.iter().map(|e| e.to_string()).collect();
            write!(f, "E[({}),({})]", a.join(","), b.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m1(a: Exp, b: Exp) -> Monomial {
        Monomial::new(vec![a], vec![b])
    }

    #[test]
    fn defining_relation_collapses() {
        // y * x = 1
        assert_eq!(m1(0, 1).mul(&m1(1, 0)), m1(0, 0));
        // x * y stays x*y
        assert_eq!(m1(1, 0).mul(&m1(0, 1)), m1(1, 1));
    }

    #[test]
    fn idempotent_word() {
        // (xy)(xy) = xy
        assert_eq!(m1(1, 1).mul(&m1(1, 1)), m1(1, 1));
    }

    #[test]
    fn mixed_powers() {
        // (x^2 y)(x y^3) = x^2 y^3
        assert_eq!(m1(2, 1).mul(&m1(1, 3)), m1(2, 3));
    }

    #[test]
    fn term_order_is_graded_then_lex() {
        let mut v = vec![m1(0, 2), m1(1, 0), m1(0, 0), m1(1, 1), m1(2, 0)];
        v.sort();
        assert_eq!(v, vec![m1(0, 0), m1(1, 0), m1(0, 2), m1(1, 1), m1(2, 0)]);
    }

    #[test]
    fn display_uses_indexed_names_only_for_n_above_one() {
        assert_eq!(m1(2, 1).to_string(), "x^2*y");
        let m = Monomial::new(vec![1, 0], vec![0, 3]);
        assert_eq!(m.to_string(), "x1*y2^3");
        assert_eq!(Monomial::one(2).to_string(), "1");
    }

    fn arb_monomial(n: usize, max: Exp) -> impl Strategy<Value = Monomial> {
        (
            prop::collection::vec(0..=max, n),
            prop::collection::vec(0..=max, n),
        )
            .prop_map(|(a, b)| Monomial::new(a, b))
    }

    proptest! {
        #[test]
        fn product_is_associative(
            (a, b, c) in (1usize..=3).prop_flat_map(|n| {
                (arb_monomial(n, 6), arb_monomial(n, 6), arb_monomial(n, 6))
            })
        ) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn involution_reverses_products(
            (a, b) in (1usize..=3).prop_flat_map(|n| {
                (arb_monomial(n, 6), arb_monomial(n, 6))
            })
        ) {
            prop_assert_eq!(a.mul(&b).star(), b.star().mul(&a.star()));
            prop_assert_eq!(a.star().star(), a);
        }
    }
}
