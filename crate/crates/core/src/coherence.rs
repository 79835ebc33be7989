//! Kernel structure of right multiplication by `x1 - x2` at `n = 2`.
//!
//! The kernel inside the matrix-unit span is spanned by the anti-diagonal
//! sums `v_alpha(s) = sum over beta1 + beta2 = s of E_{alpha beta}`, and
//! `v_alpha(s) = x^alpha v_0(s)`. On the box of index degree `d` this
//! gives `(d+1)^3` independent vectors, a dimension that grows without
//! bound in `d` — the finite certificate family behind the failure of
//! coherence for two or more variables. Everything here is verified by
//! exact arithmetic and exact elimination; nothing is asserted beyond the
//! truncation actually computed.

use serde::Serialize;

use crate::element::Element;
use crate::linalg::{self, Side, TruncBasis};
use crate::monomial::{EIndex, Exp, Monomial};
use crate::parallel;
use crate::ring::RingSpec;
use crate::Error;

/// One basis vector of the kernel: the anti-diagonal matrix-unit sum for
/// a fixed `alpha` and level `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelVector {
    pub alpha: [Exp; 2],
    pub s: Exp,
    pub element: Element,
}

/// The vector `v_alpha(s)` as an exact element of the algebra at `n = 2`.
pub fn v(alpha: [Exp; 2], s: Exp, ring: RingSpec) -> KernelVector {
    let mut acc = Element::zero(2, ring);
    for b1 in 0..=s {
        let b2 = s - b1;
        let idx = EIndex::new(vec![alpha[0], alpha[1]], vec![b1, b2]);
        acc = acc.add(&Element::e_unit(&idx, ring));
    }
    KernelVector {
        alpha,
        s,
        element: acc,
    }
}

/// The difference `x1 - x2` at `n = 2`.
pub fn shift_difference(ring: RingSpec) -> Element {
    Element::gen_x(1, 2, ring).sub(&Element::gen_x(2, 2, ring))
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub max_s: Exp,
    pub max_alpha: Exp,
    pub annihilation_checked: usize,
    pub y_annihilation_checked: usize,
    pub translation_checked: usize,
    pub pass: bool,
    pub first_failure: Option<String>,
}

/// Exact checks of the three defining identities of the kernel family:
///
/// 1. `v_alpha(s) * (x1 - x2) = 0`,
/// 2. `y^beta * v_0(s) = 0` for every nonzero `beta`,
/// 3. `v_alpha(s) = x^alpha * v_0(s)`.
pub fn verify_kernel_identities(
    max_s: Exp,
    max_alpha: Exp,
    ring: RingSpec,
) -> IdentityReport {
    let g = shift_difference(ring);
    let mut failures: Vec<String> = Vec::new();
    let mut annihilation = 0usize;
    let mut translation = 0usize;
    for a1 in 0..=max_alpha {
        for a2 in 0..=max_alpha {
            for s in 0..=max_s {
                let kv = v([a1, a2], s, ring);
                annihilation += 1;
                if !kv.element.mul(&g).is_zero() {
                    failures.push(format!("v_({a1},{a2})({s}) * (x1 - x2) != 0"));
                }
                // v_alpha(s) = x^alpha v_0(s)
                translation += 1;
                let x_alpha = Element::monomial(
                    Monomial::new(vec![a1, a2], vec![0, 0]),
                    ring.one(),
                );
                let v0 = v([0, 0], s, ring);
                if x_alpha.mul(&v0.element) != kv.element {
                    failures.push(format!("v_({a1},{a2})({s}) != x^alpha v_0({s})"));
                }
            }
        }
    }
    // y^beta v_0(s) = 0 for 0 < |beta| <= max_s
    let mut y_checked = 0usize;
    for b1 in 0..=max_s {
        for b2 in 0..=max_s {
            if b1 + b2 == 0 || b1 + b2 > max_s {
                continue;
            }
            let y_beta = Element::monomial(
                Monomial::new(vec![0, 0], vec![b1, b2]),
                ring.one(),
            );
            for s in 0..=max_s {
                y_checked += 1;
                let v0 = v([0, 0], s, ring);
                if !y_beta.mul(&v0.element).is_zero() {
                    failures.push(format!("y^({b1},{b2}) v_0({s}) != 0"));
                }
            }
        }
    }
    IdentityReport {
        max_s,
        max_alpha,
        annihilation_checked: annihilation,
        y_annihilation_checked: y_checked,
        translation_checked: translation,
        pass: failures.is_empty(),
        first_failure: failures.into_iter().next(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelDimensionReport {
    pub d: Exp,
    pub kernel_dim: usize,
    pub expected_dim: usize,
    pub dimension_matches: bool,
    pub basis_matches: bool,
}

/// Compute the exact kernel of right multiplication by `x1 - x2` on the
/// matrix-unit box of index degree `d` and compare it with the span of
/// `{v_alpha(s) : alpha in the box, s <= d}`: the dimensions must both be
/// `(d+1)^3` and the two spans must coincide as subspaces.
pub fn kernel_dimension_check(d: Exp, ring: RingSpec) -> Result<KernelDimensionReport, Error> {
    let g = shift_difference(ring);
    let domain = TruncBasis::e_span(2, d);
    let map = linalg::mult_map(&g, Side::Right, &domain)?;
    let kernel = linalg::nullspace_coords(&map)?;
    let expected = ((d as usize) + 1).pow(3);

    // candidate family in the same coordinates
    let mut family = Vec::new();
    for a1 in 0..=d {
        for a2 in 0..=d {
            for s in 0..=d {
                let kv = v([a1, a2], s, ring);
                let coords = domain
                    .coords_of(&kv.element, ring)
                    .expect("v vectors live in the box by construction");
                family.push(coords);
            }
        }
    }

    // span equality: rank(K) = rank(V) = rank(K stacked with V)
    let rank_kernel = linalg::rank_raw(&kernel, ring)?;
    let rank_family = linalg::rank_raw(&family, ring)?;
    let mut stacked = kernel.clone();
    stacked.extend(family.iter().cloned());
    let rank_stacked = linalg::rank_raw(&stacked, ring)?;
    let basis_matches =
        rank_kernel == expected && rank_family == expected && rank_stacked == expected;

    Ok(KernelDimensionReport {
        d,
        kernel_dim: kernel.len(),
        expected_dim: expected,
        dimension_matches: kernel.len() == expected,
        basis_matches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectSumReport {
    pub d: Exp,
    pub vectors: usize,
    pub rank: usize,
    pub independent: bool,
}

/// Verify that `{x^alpha v_0(s) : alpha in the box, s <= d}` is linearly
/// independent, the truncation evidence that the left ideals generated by
/// the `v_0(s)` meet trivially. Products are expanded through the algebra,
/// not through the matrix-unit shortcut.
pub fn direct_sum_check(d: Exp, ring: RingSpec) -> Result<DirectSumReport, Error> {
    let codomain = TruncBasis::full(2, d + 1);
    let mut rows = Vec::new();
    for a1 in 0..=d {
        for a2 in 0..=d {
            for s in 0..=d {
                let x_alpha = Element::monomial(
                    Monomial::new(vec![a1, a2], vec![0, 0]),
                    ring.one(),
                );
                let w = x_alpha.mul(&v([0, 0], s, ring).element);
                let coords = codomain
                    .coords_of(&w, ring)
                    .expect("box d + 1 holds every product");
                rows.push(coords);
            }
        }
    }
    let rank = linalg::rank_raw(&rows, ring)?;
    Ok(DirectSumReport {
        d,
        vectors: rows.len(),
        rank,
        independent: rank == rows.len(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoherenceReport {
    pub max_degree: Exp,
    pub identities: IdentityReport,
    pub kernel: Vec<KernelDimensionReport>,
    pub direct_sum: Vec<DirectSumReport>,
    pub laurent_images_vanish: bool,
    pub pass: bool,
}

/// The full sweep: identities, per-degree kernel dimensions with basis
/// match, direct-sum independence, and the Laurent-image check that every
/// kernel vector lies in the ideal the quotient kills.
pub fn coherence_report(max_d: Exp, ring: RingSpec) -> Result<CoherenceReport, Error> {
    let identities = verify_kernel_identities(4.min(max_d.max(2)).max(2), 3, ring);
    let degrees: Vec<Exp> = (0..=max_d).collect();
    let kernel = parallel::map_collect(&degrees, |&d| kernel_dimension_check(d, ring))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let direct_sum = parallel::map_collect(&degrees, |&d| direct_sum_check(d, ring))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;

    // the quotient by the matrix-unit ideal is a domain, so kernel vectors
    // must map to zero there; their Laurent images witness that
    let g = shift_difference(ring);
    let mut laurent_ok = !g.laurent_image().is_zero();
    for d in 0..=max_d {
        let map = linalg::mult_map(&g, Side::Right, &TruncBasis::e_span(2, d))?;
        for kv in linalg::nullspace(&map)? {
            if !kv.laurent_image().is_zero() {
                laurent_ok = false;
            }
        }
    }

    let pass = identities.pass
        && kernel.iter().all(|k| k.dimension_matches && k.basis_matches)
        && direct_sum.iter().all(|r| r.independent)
        && laurent_ok;
    Ok(CoherenceReport {
        max_degree: max_d,
        identities,
        kernel,
        direct_sum,
        laurent_images_vanish: laurent_ok,
        pass,
    })
}
