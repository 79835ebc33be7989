//! Exact linear algebra on truncation coordinates.
//!
//! A `TruncationMap` is the matrix of a fixed left or right multiplication
//! map restricted to a degree-box truncation of the domain. The codomain
//! box is always enlarged to contain every image, so a kernel vector of
//! the matrix is a genuine annihilator in the algebra, not a truncation
//! artifact.
//!
//! Elimination over `Q` is fraction-free (Bareiss): rows are cleared to
//! integers and every intermediate entry stays an integer minor, which
//! keeps coefficient growth polynomial. Over `Z/p` ordinary Gaussian
//! elimination is used. Pivots are chosen deterministically (first nonzero
//! in column order), so kernel bases and solutions are reproducible bit
//! for bit.

use num::{BigInt, BigRational, Integer, One, Zero};

use crate::element::Element;
use crate::monomial::{EIndex, Exp, Monomial};
use crate::parallel;
use crate::ring::{Coefficient, RingSpec};
use crate::Error;

/// Which span of the truncation box a basis enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpanKind {
    /// All basis monomials `x^alpha y^beta` with every exponent `<= d`.
    Full,
    /// All matrix units `E_{alpha beta}` with every index entry `<= d`.
    ESpan,
}

/// Multiplication side for [`mult_map`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// The map `u -> g * u`.
    Left,
    /// The map `u -> u * g`.
    Right,
}

/// An ordered basis of a degree-box truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncBasis {
    n: usize,
    d: Exp,
    kind: SpanKind,
    keys: Vec<Monomial>,
}

impl TruncBasis {
    pub fn full(n: usize, d: Exp) -> Self {
        TruncBasis {
            n,
            d,
            kind: SpanKind::Full,
            keys: box_keys(n, d),
        }
    }

    pub fn e_span(n: usize, d: Exp) -> Self {
        TruncBasis {
            n,
            d,
            kind: SpanKind::ESpan,
            keys: box_keys(n, d),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> Exp {
        self.d
    }

    pub fn kind(&self) -> SpanKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Index pairs in canonical graded-lex order.
    pub fn keys(&self) -> &[Monomial] {
        &self.keys
    }

    pub fn position(&self, key: &Monomial) -> Option<usize> {
        self.keys.binary_search(key).ok()
    }

    /// The `i`-th basis vector as an element.
    pub fn element_at(&self, i: usize, ring: RingSpec) -> Element {
        let key = &self.keys[i];
        match self.kind {
            SpanKind::Full => Element::monomial(key.clone(), ring.one()),
            SpanKind::ESpan => Element::e_unit(
                &EIndex::new(key.alpha.clone(), key.beta.clone()),
                ring,
            ),
        }
    }

    /// Exact coordinates of `f` in this basis, or `None` if `f` does not
    /// lie in the span.
    pub fn coords_of(&self, f: &Element, ring: RingSpec) -> Option<Vec<Coefficient>> {
        assert_eq!(f.n(), self.n, "dimension mismatch");
        let mut coords = vec![ring.zero(); self.keys.len()];
        match self.kind {
            SpanKind::Full => {
                for (m, c) in f.terms() {
                    let i = self.position(m)?;
                    coords[i] = c.clone();
                }
            }
            SpanKind::ESpan => {
                for (idx, c) in f.e_span_coordinates()? {
                    let key = Monomial::new(idx.alpha, idx.beta);
                    let i = self.position(&key)?;
                    coords[i] = c;
                }
            }
        }
        Some(coords)
    }

    /// Linear combination of the basis with the given coordinates.
    pub fn element_from_coords(&self, coords: &[Coefficient], ring: RingSpec) -> Element {
        assert_eq!(coords.len(), self.keys.len(), "coordinate length mismatch");
        let mut acc = Element::zero(self.n, ring);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.element_at(i, ring).scale(c));
            }
        }
        acc
    }
}

fn box_keys(n: usize, d: Exp) -> Vec<Monomial> {
    let mut keys = Vec::new();
    let mut digits = vec![0 as Exp; 2 * n];
    loop {
        keys.push(Monomial::new(
            digits[..n].to_vec(),
            digits[n..].to_vec(),
        ));
        // odometer over [0, d]^{2n}
        let mut i = 0;
        loop {
            if i == digits.len() {
                keys.sort();
                return keys;
            }
            if digits[i] < d {
                digits[i] += 1;
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// The exact matrix of a multiplication map on truncation coordinates.
#[derive(Clone, Debug)]
pub struct TruncationMap {
    domain: TruncBasis,
    codomain: TruncBasis,
    ring: RingSpec,
    /// Row-major, `codomain.len()` rows by `domain.len()` columns.
    rows: Vec<Vec<Coefficient>>,
}

impl TruncationMap {
    pub fn domain(&self) -> &TruncBasis {
        &self.domain
    }

    pub fn codomain(&self) -> &TruncBasis {
        &self.codomain
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn rows(&self) -> &[Vec<Coefficient>] {
        &self.rows
    }

    /// Build a map from explicit columns (codomain coordinates per domain
    /// basis vector); used for module actions and custom maps.
    pub fn from_columns(
        domain: TruncBasis,
        codomain: TruncBasis,
        ring: RingSpec,
        columns: &[Vec<Coefficient>],
    ) -> Self {
        assert_eq!(columns.len(), domain.len(), "one column per basis vector");
        let rows = transpose(columns, codomain.len(), ring);
        TruncationMap {
            domain,
            codomain,
            ring,
            rows,
        }
    }

    /// Apply the map to a domain coordinate vector.
    pub fn apply(&self, v: &[Coefficient]) -> Vec<Coefficient> {
        assert_eq!(v.len(), self.domain.len());
        self.rows
            .iter()
            .map(|row| {
                let mut acc = self.ring.zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }
}

fn transpose(
    columns: &[Vec<Coefficient>],
    nrows: usize,
    ring: RingSpec,
) -> Vec<Vec<Coefficient>> {
    let mut rows = vec![vec![ring.zero(); columns.len()]; nrows];
    for (j, col) in columns.iter().enumerate() {
        assert_eq!(col.len(), nrows, "column length mismatch");
        for (i, c) in col.iter().enumerate() {
            if !c.is_zero() {
                rows[i][j] = c.clone();
            }
        }
    }
    rows
}

/// Matrix of multiplication by `g` on the given domain box. The codomain
/// box is `d + box_degree(g)`, large enough for every image, so kernels
/// are genuine. Columns are built in parallel when enabled.
pub fn mult_map(g: &Element, side: Side, domain: &TruncBasis) -> Result<TruncationMap, Error> {
    mult_map_inner(g, side, domain, None, true)
}

/// Sequential twin of [`mult_map`], kept for benchmarking.
pub fn mult_map_seq(g: &Element, side: Side, domain: &TruncBasis) -> Result<TruncationMap, Error> {
    mult_map_inner(g, side, domain, None, false)
}

/// [`mult_map`] with an explicit codomain box degree (must contain all
/// images); used when several maps need a common codomain.
pub fn mult_map_with_codomain(
    g: &Element,
    side: Side,
    domain: &TruncBasis,
    codomain_d: Exp,
) -> Result<TruncationMap, Error> {
    mult_map_inner(g, side, domain, Some(codomain_d), true)
}

fn mult_map_inner(
    g: &Element,
    side: Side,
    domain: &TruncBasis,
    codomain_d: Option<Exp>,
    par: bool,
) -> Result<TruncationMap, Error> {
    let ring = g.ring();
    if !ring.is_field() {
        return Err(Error::FieldRequired(ring));
    }
    assert_eq!(g.n(), domain.n(), "dimension mismatch");
    let d_cod = codomain_d.unwrap_or(domain.degree() + g.box_degree());
    let codomain = match domain.kind() {
        SpanKind::Full => TruncBasis::full(domain.n(), d_cod),
        SpanKind::ESpan => TruncBasis::e_span(domain.n(), d_cod),
    };
    let build = |j: usize| -> Vec<Coefficient> {
        let b = domain.element_at(j, ring);
        let image = match side {
            Side::Left => g.mul(&b),
            Side::Right => b.mul(g),
        };
        codomain
            .coords_of(&image, ring)
            .expect("codomain box contains every image by the degree bound")
    };
    let columns = if par {
        parallel::map_indices(domain.len(), build)
    } else {
        parallel::map_indices_seq(domain.len(), build)
    };
    Ok(TruncationMap::from_columns(
        domain.clone(),
        codomain,
        ring,
        &columns,
    ))
}

/// Exact kernel basis of the map, as elements of the algebra. The basis is
/// the canonical one derived from the reduced echelon form: one vector per
/// free column, deterministic.
pub fn nullspace(map: &TruncationMap) -> Result<Vec<Element>, Error> {
    let raw = nullspace_coords(map)?;
    Ok(raw
        .iter()
        .map(|v| map.domain.element_from_coords(v, map.ring))
        .collect())
}

/// Kernel basis as raw domain coordinate vectors.
pub fn nullspace_coords(map: &TruncationMap) -> Result<Vec<Vec<Coefficient>>, Error> {
    kernel_basis_raw(&map.rows, map.domain.len(), map.ring)
}

/// Rank of the map.
pub fn rank(map: &TruncationMap) -> Result<usize, Error> {
    rank_raw(&map.rows, map.ring)
}

/// Any exact preimage of `target` under the map, or `None` when `target`
/// is outside the codomain span or the system is inconsistent.
pub fn solve(map: &TruncationMap, target: &Element) -> Result<Option<Element>, Error> {
    let Some(rhs) = map.codomain.coords_of(target, map.ring) else {
        return Ok(None);
    };
    let sol = solve_raw(&map.rows, &rhs, map.domain.len(), map.ring)?;
    Ok(sol.map(|v| map.domain.element_from_coords(&v, map.ring)))
}

// ---------------------------------------------------------------------------
// Raw elimination
// ---------------------------------------------------------------------------

struct Echelon {
    rows: Vec<Vec<Coefficient>>,
    pivots: Vec<usize>,
    ncols: usize,
    ring: RingSpec,
}

fn check_field(ring: RingSpec) -> Result<(), Error> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(Error::FieldRequired(ring))
    }
}

fn echelon_of(matrix: &[Vec<Coefficient>], ncols: usize, ring: RingSpec) -> Result<Echelon, Error> {
    check_field(ring)?;
    match ring {
        RingSpec::Rational => Ok(bareiss_echelon(matrix, ncols)),
        RingSpec::Modular(p) => Ok(modp_echelon(matrix, ncols, p)),
        RingSpec::Integer => unreachable!("rejected by check_field"),
    }
}

/// Fraction-free elimination: denominators are cleared per row, then every
/// update is `(pivot * a_ij - a_ic * a_rj) / previous_pivot`, which stays
/// integral (Bareiss). Deterministic first-nonzero pivoting.
fn bareiss_echelon(matrix: &[Vec<Coefficient>], ncols: usize) -> Echelon {
    let mut m: Vec<Vec<BigInt>> = matrix.iter().map(|row| clear_denominators(row)).collect();
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (pivot_row, below) = {
            let (head, tail) = m.split_at_mut(r + 1);
            (&head[r], tail)
        };
        let pivot = pivot_row[c].clone();
        for row in below.iter_mut() {
            if row[c].is_zero() {
                // rows untouched by this pivot still need the Bareiss
                // rescale to keep the minor invariant
                for j in (c + 1)..ncols {
                    if row[j].is_zero() {
                        continue;
                    }
                    let num = &pivot * &row[j];
                    debug_assert!(num.is_multiple_of(&prev));
                    row[j] = num / &prev;
                }
                continue;
            }
            let lead = row[c].clone();
            for j in (c + 1)..ncols {
                let num = &pivot * &row[j] - &lead * &pivot_row[j];
                debug_assert!(num.is_multiple_of(&prev));
                row[j] = num / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    m.truncate(r);
    let rows = m
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|v| Coefficient::Rat(BigRational::from_integer(v)))
                .collect()
        })
        .collect();
    Echelon {
        rows,
        pivots,
        ncols,
        ring: RingSpec::Rational,
    }
}

fn clear_denominators(row: &[Coefficient]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in row {
        if let Coefficient::Rat(v) = c {
            if !v.is_zero() {
                lcm = lcm.lcm(v.denom());
            }
        }
    }
    row.iter()
        .map(|c| match c {
            Coefficient::Rat(v) => (v * BigRational::from_integer(lcm.clone())).to_integer(),
            _ => panic!("rational matrix expected"),
        })
        .collect()
}

fn modp_echelon(matrix: &[Vec<Coefficient>], ncols: usize, p: u64) -> Echelon {
    let as_u64 = |c: &Coefficient| -> u64 {
        match c {
            Coefficient::Mod { value, modulus } => {
                assert_eq!(*modulus, p, "modulus mismatch");
                *value
            }
            _ => panic!("modular matrix expected"),
        }
    };
    let mut m: Vec<Vec<u64>> = matrix
        .iter()
        .map(|row| row.iter().map(as_u64).collect())
        .collect();
    let nrows = m.len();
    let mulp = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let subp = |a: u64, b: u64| ((a as u128 + p as u128 - b as u128) % p as u128) as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(q) = (r..nrows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, q);
        let inv = Coefficient::Mod {
            value: m[r][c],
            modulus: p,
        }
        .inv()
        .expect("nonzero residue mod prime");
        let inv = match inv {
            Coefficient::Mod { value, .. } => value,
            _ => unreachable!(),
        };
        for i in (r + 1)..nrows {
            if m[i][c] == 0 {
                continue;
            }
            let factor = mulp(m[i][c], inv);
            for j in c..ncols {
                let delta = mulp(factor, m[r][j]);
                m[i][j] = subp(m[i][j], delta);
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    m.truncate(r);
    let rows = m
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|value| Coefficient::Mod { value, modulus: p })
                .collect()
        })
        .collect();
    Echelon {
        rows,
        pivots,
        ncols,
        ring: RingSpec::Modular(p),
    }
}

impl Echelon {
    /// Canonical kernel basis: one vector per free column `f`, with a 1 in
    /// position `f` and pivot entries from exact back-substitution. This is
    /// the basis the reduced row echelon form induces.
    fn kernel_basis(&self) -> Vec<Vec<Coefficient>> {
        let ring = self.ring;
        let pivot_set: Vec<usize> = self.pivots.clone();
        let mut basis = Vec::new();
        for f in 0..self.ncols {
            if pivot_set.contains(&f) {
                continue;
            }
            let mut v = vec![ring.zero(); self.ncols];
            v[f] = ring.one();
            for (i, &ci) in self.pivots.iter().enumerate().rev() {
                let row = &self.rows[i];
                let mut s = ring.zero();
                for j in (ci + 1)..self.ncols {
                    if !row[j].is_zero() && !v[j].is_zero() {
                        s = s.add(&row[j].mul(&v[j]));
                    }
                }
                v[ci] = s.neg().div(&row[ci]);
            }
            basis.push(v);
        }
        basis
    }
}

/// Kernel basis of `matrix` (as a map on column vectors), canonical and
/// deterministic. `ncols` disambiguates empty matrices.
pub fn kernel_basis_raw(
    matrix: &[Vec<Coefficient>],
    ncols: usize,
    ring: RingSpec,
) -> Result<Vec<Vec<Coefficient>>, Error> {
    if matrix.is_empty() {
        check_field(ring)?;
        // zero map: the kernel is everything
        let mut basis = Vec::new();
        for f in 0..ncols {
            let mut v = vec![ring.zero(); ncols];
            v[f] = ring.one();
            basis.push(v);
        }
        return Ok(basis);
    }
    Ok(echelon_of(matrix, ncols, ring)?.kernel_basis())
}

/// Rank of `matrix` over the field `ring`.
pub fn rank_raw(matrix: &[Vec<Coefficient>], ring: RingSpec) -> Result<usize, Error> {
    if matrix.is_empty() {
        check_field(ring)?;
        return Ok(0);
    }
    let ncols = matrix[0].len();
    Ok(echelon_of(matrix, ncols, ring)?.pivots.len())
}

/// A particular solution of `matrix * v = rhs` (free variables set to
/// zero), or `None` when the system is inconsistent.
pub fn solve_raw(
    matrix: &[Vec<Coefficient>],
    rhs: &[Coefficient],
    ncols: usize,
    ring: RingSpec,
) -> Result<Option<Vec<Coefficient>>, Error> {
    check_field(ring)?;
    assert_eq!(matrix.len(), rhs.len(), "rhs length mismatch");
    if matrix.is_empty() {
        return Ok(Some(vec![ring.zero(); ncols]));
    }
    // eliminate the augmented matrix [M | rhs]
    let augmented: Vec<Vec<Coefficient>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let ech = echelon_of(&augmented, ncols + 1, ring)?;
    if ech.pivots.contains(&ncols) {
        return Ok(None); // pivot in the rhs column: inconsistent
    }
    let mut v = vec![ring.zero(); ncols + 1];
    v[ncols] = ring.one().neg(); // move rhs to the left: M v - b = 0
    for (i, &ci) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[i];
        let mut s = ring.zero();
        for j in (ci + 1)..=ncols {
            if !row[j].is_zero() && !v[j].is_zero() {
                s = s.add(&row[j].mul(&v[j]));
            }
        }
        v[ci] = s.neg().div(&row[ci]);
    }
    v.truncate(ncols);
    Ok(Some(v))
}
