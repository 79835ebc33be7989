//! One-sided division, ideal membership and the conjugation endomorphism
//! attached to a right normal element.
//!
//! Non-membership in a one-sided ideal is not decidable at a truncation,
//! so failed searches report `NotFoundUpToDegree`: bounded evidence, never
//! a proof. Every returned quotient is verified by exact multiplication
//! before it leaves this module.

use serde::Serialize;
use serde_json::{json, Value};

use crate::element::Element;
use crate::linalg::{self, Side, TruncBasis};
use crate::monomial::{Exp, Monomial};
use crate::parallel;

use crate::Error;

/// Where the divisor sits in the product under search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DivisorSide {
    /// Search `g` with `g * t = f`.
    TOnRight,
    /// Search `g` with `t * g = f`.
    TOnLeft,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DivisionStatus {
    Found,
    NotFoundUpToDegree,
}

/// Outcome of an escalating-degree division search.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisionResult {
    pub quotient: Option<Element>,
    pub degree_used: Exp,
    pub status: DivisionStatus,
}

impl DivisionResult {
    pub fn found(&self) -> bool {
        self.status == DivisionStatus::Found
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": match self.status {
                DivisionStatus::Found => "found",
                DivisionStatus::NotFoundUpToDegree => "not-found-up-to-degree",
            },
            "degree_used": self.degree_used,
            "quotient": self.quotient.as_ref().map(Element::to_json),
        })
    }
}

/// Search a one-sided quotient of `f` by `t` over boxes of increasing
/// degree, starting at the box of `f`. The first solution found is
/// returned after an exact multiplication check.
pub fn divide(
    f: &Element,
    t: &Element,
    side: DivisorSide,
    max_d: Exp,
) -> Result<DivisionResult, Error> {
    let mult_side = match side {
        DivisorSide::TOnRight => Side::Right, // g |-> g * t
        DivisorSide::TOnLeft => Side::Left,   // g |-> t * g
    };
    let start = f.box_degree();
    let mut degree_used = start.min(max_d);
    for d in start..=max_d {
        degree_used = d;
        let map = linalg::mult_map(t, mult_side, &TruncBasis::full(f.n(), d))?;
        if let Some(g) = linalg::solve(&map, f)? {
            let product = match side {
                DivisorSide::TOnRight => g.mul(t),
                DivisorSide::TOnLeft => t.mul(&g),
            };
            assert_eq!(&product, f, "solver returned a non-quotient");
            return Ok(DivisionResult {
                quotient: Some(g),
                degree_used: d,
                status: DivisionStatus::Found,
            });
        }
    }
    Ok(DivisionResult {
        quotient: None,
        degree_used,
        status: DivisionStatus::NotFoundUpToDegree,
    })
}

/// Constructive witness for the splitting of the augmentation at `n = 1`:
/// a `g` with `g * (x - 1) = f - pi(f)`, assembled term by term from
///
/// * `x^a - 1 = (1 + x + .. + x^(a-1)) (x - 1)`
/// * `y^b - 1 = -(y + y^2 + .. + y^b) (x - 1)`
///
/// and `x^a y^b - 1 = x^a (y^b - 1) + (x^a - 1)`.
pub fn pi_complement_divisor(f: &Element) -> Result<Element, Error> {
    if f.n() != 1 {
        return Err(Error::UnivariateOnly(f.n()));
    }
    let ring = f.ring();
    let mut g = Element::zero(1, ring);
    for (m, c) in f.terms() {
        let (a, b) = (m.alpha[0], m.beta[0]);
        let mut term_divisor = Element::zero(1, ring);
        // -x^a (y + .. + y^b)
        for j in 1..=b {
            term_divisor = term_divisor.sub(&Element::monomial(
                Monomial::new(vec![a], vec![j]),
                ring.one(),
            ));
        }
        // 1 + x + .. + x^(a-1)
        for i in 0..a {
            term_divisor = term_divisor.add(&Element::monomial(
                Monomial::new(vec![i], vec![0]),
                ring.one(),
            ));
        }
        g = g.add(&term_divisor.scale(c));
    }
    Ok(g)
}

/// The unique `g` with `a * t = t * g`, found by left division and
/// certified unique through a zero kernel at the box of the solution.
///
/// For a right regular, right normal `t` the quotient always exists;
/// uniqueness additionally needs `t` left regular, which is what the
/// kernel check enforces operationally.
pub fn tau(t: &Element, a: &Element, max_d: Exp) -> Result<Element, Error> {
    let c = a.mul(t);
    let start = c.box_degree();
    for d in start..=max_d {
        let map = linalg::mult_map(t, Side::Left, &TruncBasis::full(t.n(), d))?;
        if let Some(g) = linalg::solve(&map, &c)? {
            if !linalg::nullspace(&map)?.is_empty() {
                return Err(Error::NonUniqueQuotient);
            }
            assert_eq!(t.mul(&g), c, "solver returned a non-quotient");
            return Ok(g);
        }
    }
    Err(Error::NotFoundUpToDegree(max_d))
}

/// One sample entry of a commutator-membership report.
#[derive(Clone, Debug, Serialize)]
pub struct CommutatorWitness {
    pub sample: String,
    pub commutator: String,
    pub trivially_zero: bool,
    pub member: bool,
    pub quotient: Option<Value>,
}

/// Report for the condition `t a - a t` lies in `t^2 S` for sample `a`'s.
#[derive(Clone, Debug, Serialize)]
pub struct T2Report {
    pub t: String,
    pub witnesses: Vec<CommutatorWitness>,
    pub pass: bool,
}

/// For each sample `a`, compute `c = t a - a t` and search a quotient
/// `g` with `t^2 g = c`; every found quotient is verified exactly.
pub fn check_t2_condition(
    t: &Element,
    samples: &[Element],
    max_d: Exp,
) -> Result<T2Report, Error> {
    let t2 = t.mul(t);
    let mut witnesses = Vec::new();
    for a in samples {
        let c = t.mul(a).sub(&a.mul(t));
        if c.is_zero() {
            witnesses.push(CommutatorWitness {
                sample: a.to_string(),
                commutator: "0".to_string(),
                trivially_zero: true,
                member: true,
                quotient: None,
            });
            continue;
        }
        let div = divide(&c, &t2, DivisorSide::TOnLeft, max_d)?;
        witnesses.push(CommutatorWitness {
            sample: a.to_string(),
            commutator: c.to_string(),
            trivially_zero: false,
            member: div.found(),
            quotient: div.quotient.as_ref().map(Element::to_json),
        });
    }
    let pass = witnesses.iter().all(|w| w.member);
    Ok(T2Report {
        t: t.to_string(),
        witnesses,
        pass,
    })
}

/// Kernel dimensions of one multiplication map per box degree.
#[derive(Clone, Debug, Serialize)]
pub struct KernelProfile {
    pub side: String,
    pub dims: Vec<usize>,
}

/// Regularity evidence: kernels of both multiplication maps over a sweep
/// of box degrees; `t` passes when every kernel is zero.
#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub t: String,
    pub max_degree: Exp,
    pub left: KernelProfile,
    pub right: KernelProfile,
    pub regular_up_to_degree: bool,
}

pub fn regularity_report(t: &Element, max_d: Exp) -> Result<RegularityReport, Error> {
    let jobs: Vec<(Side, Exp)> = [Side::Left, Side::Right]
        .into_iter()
        .flat_map(|s| (0..=max_d).map(move |d| (s, d)))
        .collect();
    let dims = parallel::map_collect(&jobs, |&(side, d)| {
        let map = linalg::mult_map(t, side, &TruncBasis::full(t.n(), d))?;
        Ok::<usize, Error>(linalg::nullspace_coords(&map)?.len())
    });
    let mut left = Vec::new();
    let mut right = Vec::new();
    for ((side, _), dim) in jobs.iter().zip(dims) {
        match side {
            Side::Left => left.push(dim?),
            Side::Right => right.push(dim?),
        }
    }
    let regular = left.iter().chain(right.iter()).all(|&k| k == 0);
    Ok(RegularityReport {
        t: t.to_string(),
        max_degree: max_d,
        left: KernelProfile {
            side: "left".to_string(),
            dims: left,
        },
        right: KernelProfile {
            side: "right".to_string(),
            dims: right,
        },
        regular_up_to_degree: regular,
    })
}

/// Default search bound for univariate division problems.
pub const DEFAULT_MAX_DEGREE: Exp = 8;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::EIndex;
    use crate::ring::RingSpec;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: RingSpec = RingSpec::Rational;

    fn x() -> Element {
        Element::gen_x(1, 1, Q)
    }

    fn y() -> Element {
        Element::gen_y(1, 1, Q)
    }

    fn one() -> Element {
        Element::one(1, Q)
    }

    fn e00() -> Element {
        Element::e_unit(&EIndex::new(vec![0], vec![0]), Q)
    }

    #[test]
    fn right_division_example() {
        // 1 - y = y (x - 1)
        let f = one().sub(&y());
        let r = divide(&f, &x().sub(&one()), DivisorSide::TOnRight, 8).unwrap();
        assert_eq!(r.quotient, Some(y()));
    }

    #[test]
    fn left_division_example() {
        // (y - 1)(xy - 1) = E_00
        let r = divide(&e00(), &y().sub(&one()), DivisorSide::TOnLeft, 8).unwrap();
        assert_eq!(r.quotient, Some(x().mul(&y()).sub(&one())));
    }

    #[test]
    fn bounded_non_membership_certificate() {
        // (x - 1) g = E_00 has no solution at any box degree
        let r = divide(&e00(), &x().sub(&one()), DivisorSide::TOnLeft, 6).unwrap();
        assert_eq!(r.status, DivisionStatus::NotFoundUpToDegree);
        assert_eq!(r.quotient, None);
        // and symmetrically g (y - 1) = E_00 fails
        let r = divide(&e00(), &y().sub(&one()), DivisorSide::TOnRight, 6).unwrap();
        assert_eq!(r.status, DivisionStatus::NotFoundUpToDegree);
    }

    #[test]
    fn ideal_equality_witnesses() {
        // y - 1 = (-y)(x - 1) and x - 1 = (y - 1)(-x)
        let r = divide(&y().sub(&one()), &x().sub(&one()), DivisorSide::TOnRight, 8).unwrap();
        assert_eq!(r.quotient, Some(y().neg()));
        let r = divide(&x().sub(&one()), &y().sub(&one()), DivisorSide::TOnLeft, 8).unwrap();
        assert_eq!(r.quotient, Some(x().neg()));
    }

    #[test]
    fn pi_complement_closed_forms() {
        // x^2 - 1 = (x + 1)(x - 1)
        let g = pi_complement_divisor(&x().pow(2)).unwrap();
        assert_eq!(g, x().add(&one()));
        // y - 1 = (-y)(x - 1)
        let g = pi_complement_divisor(&y()).unwrap();
        assert_eq!(g, y().neg());
        // xy - 1 = (1 - xy)(x - 1)
        let f = x().mul(&y());
        let g = pi_complement_divisor(&f).unwrap();
        let residue = f.sub(&Element::scalar(1, f.pi()));
        assert_eq!(g.mul(&x().sub(&one())), residue);
    }

    #[test]
    fn pi_complement_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = x().sub(&one());
        for _ in 0..100 {
            let f = sample::random_element(&mut rng, 1, Q, 5, 3);
            let g = pi_complement_divisor(&f).unwrap();
            let residue = f.sub(&Element::scalar(1, f.pi()));
            assert_eq!(g.mul(&t), residue);
            assert!(residue.pi().is_zero());
        }
    }

    #[test]
    fn pi_complement_requires_univariate() {
        let f = Element::gen_x(1, 2, Q);
        assert_eq!(pi_complement_divisor(&f), Err(Error::UnivariateOnly(2)));
    }

    #[test]
    fn tau_of_x() {
        // x (y - 1) = (y - 1)(1 + x - xy)
        let t = y().sub(&one());
        let g = tau(&t, &x(), 8).unwrap();
        let expected = one().add(&x()).sub(&x().mul(&y()));
        assert_eq!(g, expected);
    }

    #[test]
    fn tau_fixes_scalars_and_t() {
        let t = y().sub(&one());
        let a = Element::scalar(1, Q.from_i64(5));
        assert_eq!(tau(&t, &a, 8).unwrap(), a);
        assert_eq!(tau(&t, &y(), 8).unwrap(), y());
    }

    #[test]
    fn tau_rejects_irregular_divisor() {
        // E_00 kills x on the left, so quotients by it are never unique
        let err = tau(&e00(), &e00(), 4).unwrap_err();
        assert!(matches!(
            err,
            Error::NonUniqueQuotient | Error::NotFoundUpToDegree(_)
        ));
    }

    #[test]
    fn commutator_membership_for_t_squared() {
        let t = y().sub(&one());
        let samples = vec![x(), x().pow(2), x().mul(&y()), e00(), y()];
        let report = check_t2_condition(&t, &samples, 8).unwrap();
        assert!(report.pass);
        // a = y commutes with t
        assert!(report.witnesses[4].trivially_zero);
    }

    #[test]
    fn regularity_of_the_augmentation_generators() {
        for t in [x().sub(&one()), y().sub(&one())] {
            let report = regularity_report(&t, 4).unwrap();
            assert!(report.regular_up_to_degree);
            assert_eq!(report.left.dims, vec![0; 5]);
            assert_eq!(report.right.dims, vec![0; 5]);
        }
    }

    #[test]
    fn e00_is_not_regular() {
        let report = regularity_report(&e00(), 2).unwrap();
        assert!(!report.regular_up_to_degree);
        // x is killed on the left and y on the right at box degree 1
        assert!(report.left.dims[1] > 0);
        assert!(report.right.dims[1] > 0);
    }
}
