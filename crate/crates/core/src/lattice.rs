//! Integer lattices: Hermite and Smith normal forms over `BigInt`, sublattice
//! comparison, elementary-abelian quotient coordinates and semilattices given by
//! their supporting class.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type IntVector = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("containment violation: second lattice is not inside the first")]
    ContainmentViolation,
    #[error("quotient is not elementary abelian of exponent {0}")]
    NotElementary(u32),
    #[error("vector {0:?} does not lie in the ambient lattice")]
    VectorOutside(IntVector),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemilatticeError {
    #[error("supporting class does not contain the empty set (0 must lie in S)")]
    MissingZero,
    #[error("supporting class does not span Z_2^{0}")]
    NotSpanning(usize),
    #[error("support index {0} out of range for rank {1}")]
    IndexOutOfRange(usize, usize),
}

fn big_rows(gens: &[IntVector]) -> Vec<Vec<BigInt>> {
    gens.iter()
        .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Row-style Hermite normal form: positive pivots, entries above a pivot
/// reduced into `[0, pivot)`, zero rows dropped.
pub fn hnf(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        loop {
            let pick = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(p) = pick else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -&*x;
                }
            }
            let pivot_row = rows[r].clone();
            for i in 0..r {
                let q = rows[i][c].div_floor(&pivot_row[c]);
                if !q.is_zero() {
                    for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
    rows
}

/// Diagonal of the Smith normal form of `m` together with the column transform
/// `v` (so `u * m * v = diag` for some unimodular `u`).
pub fn smith_with_cols(m: &[Vec<BigInt>], ncols: usize) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let nrows = a.len();
    let mut v: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut diag = Vec::new();
    for t in 0..nrows.min(ncols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nrows {
                for j in t..ncols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (diag, v);
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            for row in v.iter_mut() {
                row.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let prow = a[t].clone();
                for (x, y) in a[i].iter_mut().zip(&prow) {
                    *x -= &q * y;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
                for row in v.iter_mut() {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..nrows)
                .find(|&i| (t + 1..ncols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let row_i = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(&row_i) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
        }
        diag.push(a[t][t].clone());
    }
    (diag, v)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sublattice {
    dim: usize,
    hnf: Vec<Vec<BigInt>>,
}

impl Sublattice {
    pub fn span(gens: &[IntVector], dim: usize) -> Result<Self, LatticeError> {
        if let Some(g) = gens.iter().find(|g| g.len() != dim) {
            return Err(LatticeError::DimensionMismatch { expected: dim, found: g.len() });
        }
        Ok(Self::from_big(big_rows(gens), dim))
    }

    pub fn from_big(rows: Vec<Vec<BigInt>>, dim: usize) -> Self {
        Sublattice { dim, hnf: hnf(rows, dim) }
    }

    pub fn full(dim: usize) -> Self {
        let gens: Vec<IntVector> = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::span(&gens, dim).expect("identity rows")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.hnf.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.hnf
    }

    pub fn rows_i64(&self) -> Vec<IntVector> {
        self.hnf
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).expect("hnf entry fits in i64")).collect())
            .collect()
    }

    pub fn scaled(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        Self::from_big(self.hnf.iter().map(|r| r.iter().map(|x| x * &k).collect()).collect(), self.dim)
    }

    pub fn sum(&self, other: &Sublattice) -> Self {
        let mut rows = self.hnf.clone();
        rows.extend(other.hnf.iter().cloned());
        Self::from_big(rows, self.dim)
    }

    /// Coordinates of `v` with respect to the HNF rows, if `v` lies in the lattice.
    pub fn coords_big(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut rest = v.to_vec();
        let mut out = Vec::with_capacity(self.hnf.len());
        for row in &self.hnf {
            let pc = row.iter().position(|x| !x.is_zero()).expect("nonzero hnf row");
            let (q, r) = rest[pc].div_rem(&row[pc]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
            out.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(out)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        v.len() == self.dim
            && self.coords_big(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()).is_some()
    }

    pub fn is_subset_of(&self, other: &Sublattice) -> bool {
        self.dim == other.dim && self.hnf.iter().all(|r| other.coords_big(r).is_some())
    }

    /// `[self : ℤ^dim]` when full rank, otherwise `None`.
    pub fn index_in_full(&self) -> Option<BigInt> {
        (self.rank() == self.dim).then(|| {
            self.hnf
                .iter()
                .map(|r| r.iter().find(|x| !x.is_zero()).cloned().unwrap_or_default())
                .product()
        })
    }
}

impl fmt::Display for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .hnf
            .iter()
            .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

pub fn hnf_span(gens: &[IntVector], dim: usize) -> Result<Sublattice, LatticeError> {
    Sublattice::span(gens, dim)
}

pub fn generates(gens: &[IntVector], target: &Sublattice) -> Result<bool, LatticeError> {
    Ok(Sublattice::span(gens, target.dim())? == *target)
}

/// Elementary divisors of `a / b` larger than one; a free summand is reported as `0`.
pub fn quotient_invariants(a: &Sublattice, b: &Sublattice) -> Result<Vec<BigInt>, LatticeError> {
    Ok(QuotientMap::new(a, b)?.divisors().to_vec())
}

/// Coordinates on `a / b` via the Smith form of `b` written in a basis of `a`.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    ambient: Sublattice,
    v: Vec<Vec<BigInt>>,
    diag: Vec<BigInt>,
    divisors: Vec<BigInt>,
}

impl QuotientMap {
    pub fn new(a: &Sublattice, b: &Sublattice) -> Result<Self, LatticeError> {
        if a.dim() != b.dim() {
            return Err(LatticeError::DimensionMismatch { expected: a.dim(), found: b.dim() });
        }
        let mut m = Vec::with_capacity(b.rank());
        for row in b.rows() {
            m.push(a.coords_big(row).ok_or(LatticeError::ContainmentViolation)?);
        }
        let r = a.rank();
        let (mut diag, v) = smith_with_cols(&m, r);
        diag.resize(r, BigInt::zero());
        let divisors = diag.iter().filter(|d| !d.is_one()).cloned().collect();
        Ok(QuotientMap { ambient: a.clone(), v, diag, divisors })
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    /// Image of `x` in `⊕ ℤ/d_i` (components with `d_i = 1` dropped; `d_i = 0` left unreduced).
    pub fn image(&self, x: &[i64]) -> Result<Vec<BigInt>, LatticeError> {
        let xb: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
        let c = self.ambient.coords_big(&xb).ok_or_else(|| LatticeError::VectorOutside(x.to_vec()))?;
        let mut out = Vec::new();
        for (j, d) in self.diag.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            let mut s = BigInt::zero();
            for (i, ci) in c.iter().enumerate() {
                s += ci * &self.v[i][j];
            }
            out.push(if d.is_zero() { s } else { s.mod_floor(d) });
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisVerdict {
    IsBasis,
    NotSpanning,
    Dependent,
    Duplicate,
}

/// Classifies the images of `vectors` in the elementary abelian `p`-group `a / b`.
pub fn zp_basis_verdict(
    vectors: &[IntVector],
    a: &Sublattice,
    b: &Sublattice,
    p: u32,
) -> Result<BasisVerdict, LatticeError> {
    let qm = QuotientMap::new(a, b)?;
    let pb = BigInt::from(p);
    if qm.divisors().iter().any(|d| *d != pb) {
        return Err(LatticeError::NotElementary(p));
    }
    let images = vectors.iter().map(|v| qm.image(v)).collect::<Result<Vec<_>, _>>()?;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] == images[j] {
                return Ok(BasisVerdict::Duplicate);
            }
        }
    }
    let rows: Vec<Vec<u32>> = images
        .iter()
        .map(|im| im.iter().map(|x| u32::try_from(x).expect("reduced residue")).collect())
        .collect();
    let rank = rank_mod_p(rows, p);
    let d = qm.divisors().len();
    Ok(if rank < vectors.len() {
        BasisVerdict::Dependent
    } else if rank < d {
        BasisVerdict::NotSpanning
    } else {
        BasisVerdict::IsBasis
    })
}

pub fn z2_basis_verdict(
    vectors: &[IntVector],
    a: &Sublattice,
    b: &Sublattice,
) -> Result<BasisVerdict, LatticeError> {
    zp_basis_verdict(vectors, a, b, 2)
}

fn inv_mod(x: u32, p: u32) -> u32 {
    (1..p).find(|y| (x as u64 * *y as u64) % p as u64 == 1).expect("p prime")
}

pub fn rank_mod_p(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] % p != 0) else { continue };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c] % p, p);
        for x in rows[r].iter_mut() {
            *x = (*x % p) * inv % p;
        }
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] % p == 0 {
                continue;
            }
            let f = row[c] % p;
            for (x, y) in row.iter_mut().zip(&prow) {
                *x = (*x % p + p * p - f * y % p) % p;
            }
        }
        r += 1;
    }
    r
}

/// Bitmask of a supp vector: bit `r` set iff coordinate `r` (0-based) is odd.
pub type SuppMask = u32;

pub fn parity_mask(v: &[i64]) -> SuppMask {
    v.iter()
        .enumerate()
        .filter(|(_, x)| x.rem_euclid(2) == 1)
        .fold(0, |m, (i, _)| m | (1 << i))
}

/// A semilattice `S = ⊎_{J ∈ supp} (τ_J + 2Λ)` in `Λ = ℤ^ν`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Semilattice {
    nu: usize,
    supp: BTreeSet<SuppMask>,
}

#[derive(Serialize, Deserialize)]
struct SemilatticeJson {
    nu: usize,
    supp: Vec<Vec<usize>>,
}

impl Semilattice {
    pub fn validate(nu: usize, supp: impl IntoIterator<Item = SuppMask>) -> Result<Self, SemilatticeError> {
        let supp: BTreeSet<SuppMask> = supp.into_iter().collect();
        if let Some(&m) = supp.iter().find(|&&m| nu < 32 && m >> nu != 0) {
            return Err(SemilatticeError::IndexOutOfRange(32 - m.leading_zeros() as usize, nu));
        }
        if !supp.contains(&0) {
            return Err(SemilatticeError::MissingZero);
        }
        let rows: Vec<Vec<u32>> = supp
            .iter()
            .map(|m| (0..nu).map(|i| (m >> i) & 1).collect())
            .collect();
        if rank_mod_p(rows, 2) < nu {
            return Err(SemilatticeError::NotSpanning(nu));
        }
        Ok(Semilattice { nu, supp })
    }

    /// Builds from 1-based index lists, e.g. `[[], [1], [2]]`.
    pub fn from_index_sets(nu: usize, sets: &[Vec<usize>]) -> Result<Self, SemilatticeError> {
        let mut masks = Vec::with_capacity(sets.len());
        for set in sets {
            let mut m = 0;
            for &i in set {
                if i == 0 || i > nu {
                    return Err(SemilatticeError::IndexOutOfRange(i, nu));
                }
                m |= 1 << (i - 1);
            }
            masks.push(m);
        }
        Self::validate(nu, masks)
    }

    pub fn lattice(nu: usize) -> Self {
        Semilattice { nu, supp: (0..1u32 << nu).collect() }
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn index(&self) -> usize {
        self.supp.len() - 1
    }

    pub fn is_lattice(&self) -> bool {
        self.supp.len() == 1 << self.nu
    }

    pub fn supp(&self) -> &BTreeSet<SuppMask> {
        &self.supp
    }

    pub fn contains_mask(&self, m: SuppMask) -> bool {
        self.supp.contains(&m)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        v.len() == self.nu && self.supp.contains(&parity_mask(v))
    }

    /// Nonzero supp classes ordered by size, then by their sorted index lists.
    pub fn ordered_classes(&self) -> Vec<SuppMask> {
        let mut v: Vec<SuppMask> = self.supp.iter().copied().filter(|&m| m != 0).collect();
        v.sort_by_key(|&m| (m.count_ones(), mask_indices(m)));
        v
    }

    pub fn index_sets(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<SuppMask> = self.supp.iter().copied().collect();
        v.sort_by_key(|&m| (m.count_ones(), mask_indices(m)));
        v.into_iter().map(|m| mask_indices(m).into_iter().map(|i| i + 1).collect()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SemilatticeJson { nu: self.nu, supp: self.index_sets() }).expect("plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        let raw: SemilatticeJson = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
        Self::from_index_sets(raw.nu, &raw.supp).map_err(|e| e.to_string())
    }
}

/// 0-based indices of the set bits of `m`.
pub fn mask_indices(m: SuppMask) -> Vec<usize> {
    (0..32).filter(|i| (m >> i) & 1 == 1).collect()
}

/// `τ_J = Σ_{r ∈ J} σ_r` as a coordinate vector.
pub fn tau(m: SuppMask, nu: usize) -> IntVector {
    (0..nu).map(|i| i64::from((m >> i) & 1)).collect()
}

pub fn semilattice_validate(nu: usize, supp: &[Vec<usize>]) -> Result<Semilattice, SemilatticeError> {
    Semilattice::from_index_sets(nu, supp)
}

pub fn semilattice_contains(s: &Semilattice, v: &[i64]) -> Result<bool, LatticeError> {
    if v.len() != s.nu() {
        return Err(LatticeError::DimensionMismatch { expected: s.nu(), found: v.len() });
    }
    Ok(s.contains(v))
}
