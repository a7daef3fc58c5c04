//! The Weyl group acting on `Ṽ = V̇ ⊕ V⁰ ⊕ (V⁰)*` by exact rational matrices.
//!
//! Basis order is `(α₁..α_ℓ, σ₁..σ_ν, λ₁..λ_ν)` with `(σᵢ, λⱼ) = δᵢⱼ`. A matrix
//! stores the image of basis vector `j` in column `j`, so a word
//! `[β₁, β₂, …]` evaluates to `w_{β₁} w_{β₂} ⋯`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::earoot::{ExtAffineRootSystem, Root};
use crate::lattice::IntVector;

pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("root {0} is isotropic")]
    IsotropicRoot(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("{0} is not a root of the system")]
    RootOutsideSystem(String),
    #[error("long entries may only use σ_(t+1)..σ_ν: {0}")]
    DomainConstraintViolated(String),
    #[error("orbit parity is only available for types A1 and B2")]
    UnsupportedOrbitCriterion,
    #[error("coset parity ψ_i is only available for type B")]
    UnsupportedCosetParity,
    #[error("dimension mismatch")]
    DimensionMismatch,
}

fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperbolicSpace {
    l: usize,
    nu: usize,
    k: i64,
    gram: Vec<Vec<i64>>,
}

impl HyperbolicSpace {
    pub fn new(ears: &ExtAffineRootSystem) -> Self {
        let (l, nu) = (ears.rank(), ears.nu());
        let n = l + 2 * nu;
        let mut gram = vec![vec![0; n]; n];
        for (i, row) in ears.finite().gram().iter().enumerate() {
            gram[i][..l].copy_from_slice(row);
        }
        for i in 0..nu {
            gram[l + i][l + nu + i] = 1;
            gram[l + nu + i][l + i] = 1;
        }
        HyperbolicSpace { l, nu, k: ears.k(), gram }
    }

    pub fn dim(&self) -> usize {
        self.l + 2 * self.nu
    }

    pub fn rank(&self) -> usize {
        self.l
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn embed(&self, r: &Root) -> Vec<Q> {
        let mut v: Vec<Q> = r.fin.iter().chain(&r.iso).map(|&x| q(x)).collect();
        v.resize(self.dim(), Q::zero());
        v
    }

    pub fn basis(&self, j: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[j] = Q::one();
        v
    }

    pub fn sigma(&self, i: usize) -> Vec<Q> {
        self.basis(self.l + i)
    }

    pub fn lambda(&self, i: usize) -> Vec<Q> {
        self.basis(self.l + self.nu + i)
    }

    pub fn ip(&self, a: &[Q], b: &[Q]) -> Q {
        let mut s = Q::zero();
        for (i, row) in self.gram.iter().enumerate() {
            if a[i].is_zero() {
                continue;
            }
            for (j, &g) in row.iter().enumerate() {
                if g != 0 && !b[j].is_zero() {
                    s += &a[i] * &b[j] * q(g);
                }
            }
        }
        s
    }

    fn check(&self, r: &Root) -> Result<(), WeylError> {
        if r.fin.len() != self.l || r.iso.len() != self.nu {
            return Err(WeylError::DimensionMismatch);
        }
        Ok(())
    }

    pub fn reflection(&self, alpha: &Root) -> Result<WeylElement, WeylError> {
        self.check(alpha)?;
        let a = self.embed(alpha);
        let norm = self.ip(&a, &a);
        if norm.is_zero() {
            return Err(WeylError::IsotropicRoot(alpha.to_string()));
        }
        let n = self.dim();
        let mut m = WeylElement::identity(n);
        for j in 0..n {
            let c = q(2) * self.ip(&self.basis(j), &a) / &norm;
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                let d = &c * &a[i];
                m.a[i * n + j] -= d;
            }
        }
        Ok(m)
    }

    pub fn word_eval(&self, word: &[Root]) -> Result<WeylElement, WeylError> {
        let mut m = WeylElement::identity(self.dim());
        for r in word {
            m = m.mul(&self.reflection(r)?);
        }
        Ok(m)
    }

    pub fn word_equal(&self, a: &[Root], b: &[Root]) -> Result<bool, WeylError> {
        Ok(self.word_eval(a)? == self.word_eval(b)?)
    }

    /// `t⁽ⁱ⁾_α(x) = x − (x,σᵢ/k)α + ((x,α) − ½(α,α)(x,σᵢ/k))σᵢ/k` for `α ∈ V`.
    pub fn t_map(&self, i: usize, alpha: &Root) -> Result<WeylElement, WeylError> {
        self.check(alpha)?;
        if i >= self.nu {
            return Err(WeylError::IndexOutOfRange(format!("i = {}", i + 1)));
        }
        let a = self.embed(alpha);
        let s = self.sigma(i);
        let kq = q(self.k);
        let half_norm = self.ip(&a, &a) / q(2);
        let n = self.dim();
        let mut m = WeylElement::identity(n);
        for j in 0..n {
            let x = self.basis(j);
            let xs = self.ip(&x, &s) / &kq;
            let xa = self.ip(&x, &a);
            let cs = (xa - &half_norm * &xs) / &kq;
            for r in 0..n {
                let delta = -(&xs * &a[r]) + &cs * &s[r];
                m.a[r * n + j] += delta;
            }
        }
        Ok(m)
    }

    /// `c_ij := t⁽ⁱ⁾_{−σⱼ}`, 1-based indices.
    pub fn c_ij(&self, i: usize, j: usize) -> Result<WeylElement, WeylError> {
        if i == 0 || j == 0 || i > self.nu || j > self.nu || i == j {
            return Err(WeylError::IndexOutOfRange(format!("c_{i}{j} with ν = {}", self.nu)));
        }
        let mut iso = vec![0; self.nu];
        iso[j - 1] = -1;
        self.t_map(i - 1, &Root::new(vec![0; self.l], iso))
    }

    /// `∏_{i<j} c_ij^{kα·mᵢ·mⱼ}`.
    pub fn c_product(&self, k_alpha: i64, m: &[i64]) -> Result<WeylElement, WeylError> {
        let mut out = WeylElement::identity(self.dim());
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                let e = k_alpha * m[i] * m[j];
                if e != 0 {
                    out = out.mul(&self.c_ij(i + 1, j + 1)?.pow(e));
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    n: usize,
    a: Vec<Q>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        let mut a = vec![Q::zero(); n * n];
        for i in 0..n {
            a[i * n + i] = Q::one();
        }
        WeylElement { n, a }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Q {
        &self.a[i * self.n + j]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.n).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.n)
    }

    pub fn mul(&self, o: &WeylElement) -> WeylElement {
        let n = self.n;
        let mut a = vec![Q::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let x = &self.a[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = &o.a[k * n + j];
                    if !y.is_zero() {
                        a[i * n + j] += x * y;
                    }
                }
            }
        }
        WeylElement { n, a }
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        (0..self.n)
            .map(|i| (0..self.n).fold(Q::zero(), |s, j| s + &self.a[i * self.n + j] * &v[j]))
            .collect()
    }

    pub fn inverse(&self) -> Option<WeylElement> {
        let n = self.n;
        let mut m = self.a.clone();
        let mut inv = WeylElement::identity(n).a;
        for c in 0..n {
            let p = (c..n).find(|&r| !m[r * n + c].is_zero())?;
            for j in 0..n {
                m.swap(c * n + j, p * n + j);
                inv.swap(c * n + j, p * n + j);
            }
            let piv = m[c * n + c].clone();
            for j in 0..n {
                m[c * n + j] = &m[c * n + j] / &piv;
                inv[c * n + j] = &inv[c * n + j] / &piv;
            }
            for r in 0..n {
                if r == c || m[r * n + c].is_zero() {
                    continue;
                }
                let f = m[r * n + c].clone();
                for j in 0..n {
                    let (x, y) = (&m[c * n + j] * &f, &inv[c * n + j] * &f);
                    m[r * n + j] -= x;
                    inv[r * n + j] -= y;
                }
            }
        }
        Some(WeylElement { n, a: inv })
    }

    pub fn pow(&self, e: i64) -> WeylElement {
        let base = if e < 0 { self.inverse().expect("invertible") } else { self.clone() };
        let mut out = WeylElement::identity(self.n);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn transpose(&self) -> WeylElement {
        let n = self.n;
        let a = (0..n * n).map(|x| self.a[(x % n) * n + x / n].clone()).collect();
        WeylElement { n, a }
    }

    /// `MᵀGM = G`.
    pub fn is_isometry(&self, space: &HyperbolicSpace) -> bool {
        let g = WeylElement { n: self.n, a: space.gram.iter().flatten().map(|&x| q(x)).collect() };
        self.transpose().mul(&g).mul(self) == g
    }

    pub fn rows_as_strings(&self) -> Vec<Vec<String>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.entry(i, j).to_string()).collect()).collect()
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows_as_strings();
        let w = rows.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for row in rows {
            let cells: Vec<String> = row.iter().map(|s| format!("{s:>w$}")).collect();
            writeln!(f, "[ {} ]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The reflection word `(w_{α+σ}w_α)(w_α w_{α+σ₁})^{m₁}⋯(w_α w_{α+σ_ν})^{m_ν}`.
pub fn c_pair_word(ears: &ExtAffineRootSystem, alpha: &Root, sigma: &[i64]) -> Result<Vec<Root>, WeylError> {
    if sigma.len() != ears.nu() || alpha.iso.len() != ears.nu() || alpha.fin.len() != ears.rank() {
        return Err(WeylError::DimensionMismatch);
    }
    let need = |r: &Root| {
        if ears.is_nonisotropic_root(r) {
            Ok(r.clone())
        } else {
            Err(WeylError::RootOutsideSystem(r.to_string()))
        }
    };
    let a = need(alpha)?;
    let s = Root::new(vec![0; ears.rank()], sigma.to_vec());
    let mut word = vec![need(&a.add(&s))?, a.clone()];
    for (i, &m) in sigma.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let mut e = vec![0; ears.nu()];
        e[i] = 1;
        let ai = need(&a.add(&Root::new(vec![0; ears.rank()], e)))?;
        let pair = if m > 0 { [a.clone(), ai] } else { [ai, a.clone()] };
        for _ in 0..m.abs() {
            word.extend(pair.iter().cloned());
        }
    }
    Ok(word)
}

pub fn c_pair(space: &HyperbolicSpace, ears: &ExtAffineRootSystem, alpha: &Root, sigma: &[i64]) -> Result<WeylElement, WeylError> {
    space.word_eval(&c_pair_word(ears, alpha, sigma)?)
}

/// `k(α)`: `k` for short roots, 1 for long roots.
pub fn k_of(ears: &ExtAffineRootSystem, alpha: &Root) -> i64 {
    if ears.finite().is_short(&alpha.fin) {
        ears.k()
    } else {
        1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub eps: i8,
    pub long: bool,
    pub eta: IntVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedCollection {
    pub triples: Vec<Triple>,
}

impl ReducedCollection {
    fn k_of(&self, ears: &ExtAffineRootSystem, tr: &Triple) -> i64 {
        if tr.long || ears.finite().simply_laced() {
            1
        } else {
            ears.k()
        }
    }

    pub fn check_domain(&self, ears: &ExtAffineRootSystem) -> Result<(), WeylError> {
        for tr in &self.triples {
            if tr.eta.len() != ears.nu() || !(tr.eps == 1 || tr.eps == -1) {
                return Err(WeylError::DimensionMismatch);
            }
            if tr.long && ears.finite().simply_laced() {
                return Err(WeylError::DomainConstraintViolated("no long roots in a simply laced type".into()));
            }
            if tr.long && tr.eta[..ears.t()].iter().any(|&m| m != 0) {
                return Err(WeylError::DomainConstraintViolated(format!("{:?}", tr.eta)));
            }
        }
        Ok(())
    }

    /// `Σ_p k(α_p) ε_p m_{ip} m_{jp} = 0` for all `i < j`.
    pub fn reduced_check(&self, ears: &ExtAffineRootSystem) -> Result<bool, WeylError> {
        self.check_domain(ears)?;
        let nu = ears.nu();
        for i in 0..nu {
            for j in i + 1..nu {
                let s: i64 = self
                    .triples
                    .iter()
                    .map(|tr| self.k_of(ears, tr) * tr.eps as i64 * tr.eta[i] * tr.eta[j])
                    .sum();
                if s != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn theta(&self, ears: &ExtAffineRootSystem, tr: &Triple) -> Root {
        let (s, l) = ears.highest();
        if tr.long {
            l.expect("checked domain")
        } else {
            s
        }
    }

    /// The reflection word of `∏_p c_{(α_p, η_p)}^{ε_p}`.
    pub fn relator_word(&self, ears: &ExtAffineRootSystem) -> Result<Vec<Root>, WeylError> {
        self.check_domain(ears)?;
        let mut word = Vec::new();
        for tr in &self.triples {
            let mut w = c_pair_word(ears, &self.theta(ears, tr), &tr.eta)?;
            if tr.eps < 0 {
                w.reverse();
            }
            word.extend(w);
        }
        Ok(word)
    }

    /// Appends triples with `η = σ_i + σ_j` until every pairwise sum vanishes.
    /// Pairs touching a twisted coordinate are balanced with short triples,
    /// the others with long ones where the type has them.
    pub fn completed(ears: &ExtAffineRootSystem, triples: Vec<Triple>) -> Result<ReducedCollection, WeylError> {
        let mut rc = ReducedCollection { triples };
        rc.check_domain(ears)?;
        let nu = ears.nu();
        let has_long = !ears.finite().simply_laced();
        for i in 0..nu {
            for j in i + 1..nu {
                let d: i64 = rc.triples.iter().map(|tr| rc.k_of(ears, tr) * tr.eps as i64 * tr.eta[i] * tr.eta[j]).sum();
                if d == 0 {
                    continue;
                }
                let long = has_long && j >= ears.t() && i >= ears.t();
                let step = if long || !has_long { 1 } else { ears.k() };
                if d % step != 0 {
                    return Err(WeylError::DomainConstraintViolated(format!("pair ({i},{j}) defect {d}")));
                }
                let mut eta = vec![0; nu];
                eta[i] = 1;
                eta[j] = 1;
                let eps = if d > 0 { -1 } else { 1 };
                for _ in 0..(d / step).abs() {
                    rc.triples.push(Triple { eps, long, eta: eta.clone() });
                }
            }
        }
        Ok(rc)
    }

    pub fn relation_holds(&self, space: &HyperbolicSpace, ears: &ExtAffineRootSystem) -> Result<bool, WeylError> {
        let mut m = WeylElement::identity(space.dim());
        self.check_domain(ears)?;
        for tr in &self.triples {
            let c = c_pair(space, ears, &self.theta(ears, tr), &tr.eta)?;
            m = m.mul(&if tr.eps < 0 { c.inverse().expect("invertible") } else { c });
        }
        Ok(m.is_identity())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParityKind {
    /// `w_α ↦ 1` for short `α`, 0 for long.
    Length,
    /// `w_α ↦ 1` iff `α ∈ W·β`, decided by the coset criterion. This is a
    /// homomorphism only when `W` has the presentation by conjugation.
    Orbit(Root),
    /// `w_α ↦ 1` iff `α ∈ Ṙ_sh + σᵢ + ⟨L⟩`, 1-based `i ≤ t`.
    ShortCoset(usize),
}

pub fn parity_hom(ears: &ExtAffineRootSystem, kind: &ParityKind, alpha: &Root) -> Result<u8, WeylError> {
    if !ears.is_nonisotropic_root(alpha) {
        return Err(WeylError::RootOutsideSystem(alpha.to_string()));
    }
    match kind {
        ParityKind::Length => Ok(ears.is_short(alpha) as u8),
        ParityKind::ShortCoset(i) => {
            if ears.finite().xtype() != crate::finroot::XType::B {
                return Err(WeylError::UnsupportedCosetParity);
            }
            if *i == 0 || *i > ears.t() {
                return Err(WeylError::IndexOutOfRange(format!("ψ_{i} with t = {}", ears.t())));
            }
            if !ears.is_short(alpha) {
                return Ok(0);
            }
            let mut d = alpha.iso.clone();
            d[i - 1] -= 1;
            Ok(ears.l_set().span().contains(&d) as u8)
        }
        ParityKind::Orbit(beta) => {
            if !ears.is_nonisotropic_root(beta) {
                return Err(WeylError::RootOutsideSystem(beta.to_string()));
            }
            let diff = alpha.sub(beta).coords();
            let is_b2 = ears.finite().xtype() == crate::finroot::XType::B && ears.rank() == 2;
            if ears.is_a1() {
                Ok(ears.span_r().scaled(2).contains(&diff) as u8)
            } else if is_b2 {
                if ears.is_short(beta) != ears.is_short(alpha) {
                    return Ok(0);
                }
                let lat = if ears.is_short(beta) { ears.span_long() } else { ears.span_short().scaled(2) };
                Ok(lat.contains(&diff) as u8)
            } else {
                Err(WeylError::UnsupportedOrbitCriterion)
            }
        }
    }
}

pub fn parity_word(ears: &ExtAffineRootSystem, kind: &ParityKind, word: &[Root]) -> Result<u8, WeylError> {
    let mut s = 0;
    for r in word {
        s ^= parity_hom(ears, kind, r)?;
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchResult {
    Found(Vec<Root>),
    /// `exhausted` means the whole generated subgroup was enumerated, so the
    /// target is certainly outside it.
    NotFound { maxlen: usize, explored: usize, exhausted: bool },
}

/// Elements reachable by words of length exactly `r` for `r = 0..=depth`, each
/// keyed to its lexicographically least shortest word (indices into `gens`).
fn ball(
    space: &HyperbolicSpace,
    gens: &[WeylElement],
    depth: usize,
    node_cap: usize,
) -> Vec<Vec<(WeylElement, Vec<usize>)>> {
    let mut seen: HashMap<WeylElement, ()> = HashMap::new();
    let id = WeylElement::identity(space.dim());
    seen.insert(id.clone(), ());
    let mut levels = vec![vec![(id, Vec::new())]];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (m, w) in levels.last().expect("nonempty") {
            for (gi, g) in gens.iter().enumerate() {
                if w.last() == Some(&gi) {
                    continue;
                }
                let p = m.mul(g);
                if seen.contains_key(&p) {
                    continue;
                }
                seen.insert(p.clone(), ());
                let mut nw = w.clone();
                nw.push(gi);
                next.push((p, nw));
            }
            if seen.len() > node_cap {
                break;
            }
        }
        levels.push(next);
        if seen.len() > node_cap {
            break;
        }
    }
    levels
}

/// Shortest word in `gens` equal to `target`, by meeting in the middle.
pub fn bounded_word_search(
    space: &HyperbolicSpace,
    target: &WeylElement,
    gens: &[Root],
    maxlen: usize,
) -> Result<SearchResult, WeylError> {
    bounded_word_search_capped(space, target, gens, maxlen, 4_000_000)
}

pub fn bounded_word_search_capped(
    space: &HyperbolicSpace,
    target: &WeylElement,
    gens: &[Root],
    maxlen: usize,
    node_cap: usize,
) -> Result<SearchResult, WeylError> {
    let mats: Vec<WeylElement> = gens.iter().map(|g| space.reflection(g)).collect::<Result<_, _>>()?;
    let half = maxlen.div_ceil(2);
    let levels = ball(space, &mats, half, node_cap);
    let explored: usize = levels.iter().map(Vec::len).sum();
    let exhausted = levels.last().map_or(false, Vec::is_empty) && explored <= node_cap;
    let mut index: HashMap<&WeylElement, &Vec<usize>> = HashMap::new();
    for lvl in &levels {
        for (m, w) in lvl {
            index.insert(m, w);
        }
    }
    for total in 0..=maxlen {
        let a = total.div_ceil(2);
        let b = total - a;
        if a >= levels.len() {
            break;
        }
        let mut best: Option<Vec<usize>> = None;
        // target = g·h with |g| = a and |h| = b; h⁻¹ is h read backwards.
        for lvl in levels.iter().take(b + 1).skip(b) {
            for (_, hw) in lvl {
                let mut t = target.clone();
                for &gi in hw.iter().rev() {
                    t = t.mul(&mats[gi]);
                }
                if let Some(gw) = index.get(&t) {
                    if gw.len() != a {
                        continue;
                    }
                    let word: Vec<usize> = gw.iter().chain(hw.iter()).copied().collect();
                    if best.as_ref().map_or(true, |b| word < *b) {
                        best = Some(word);
                    }
                }
            }
        }
        if let Some(w) = best {
            return Ok(SearchResult::Found(w.into_iter().map(|i| gens[i].clone()).collect()));
        }
    }
    Ok(SearchResult::NotFound { maxlen, explored, exhausted })
}

/// Distinct elements generated by `gens` in breadth-first order, at most `limit`.
pub fn bfs_elements(space: &HyperbolicSpace, gens: &[Root], limit: usize) -> Result<Vec<(Vec<Root>, WeylElement)>, WeylError> {
    let mats: Vec<WeylElement> = gens.iter().map(|g| space.reflection(g)).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    let mut depth = 0;
    loop {
        let levels = ball(space, &mats, depth, limit);
        let total: usize = levels.iter().map(Vec::len).sum();
        let grew = levels.last().map_or(false, |l| !l.is_empty());
        if total >= limit || !grew {
            for (m, w) in levels.into_iter().flatten().take(limit) {
                out.push((w.iter().map(|&i| gens[i].clone()).collect(), m));
            }
            return Ok(out);
        }
        depth += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::earoot::build_ears;
    use crate::finroot::{FiniteRootSystem, XType};
    use crate::lattice::Semilattice;

    fn a1(s: Semilattice) -> ExtAffineRootSystem {
        ExtAffineRootSystem::simply_laced(FiniteRootSystem::parse("A1").unwrap(), s).unwrap()
    }

    fn r(fin: &[i64], iso: &[i64]) -> Root {
        Root::new(fin.to_vec(), iso.to_vec())
    }

    fn qi(x: i64) -> Q {
        q(x)
    }

    #[test]
    fn reflections_in_a1() {
        let e = a1(Semilattice::lattice(2));
        let sp = HyperbolicSpace::new(&e);
        let w = sp.reflection(&r(&[1], &[0, 0])).unwrap();
        assert_eq!(w.column(0), vec![qi(-1), qi(0), qi(0), qi(0), qi(0)]);
        for j in 1..5 {
            assert_eq!(w.column(j), sp.basis(j));
        }
        let w2 = sp.reflection(&r(&[-1], &[1, 0])).unwrap();
        // λ₁ ↦ λ₁ + α − σ₁
        assert_eq!(w2.column(3), vec![qi(1), qi(-1), qi(0), qi(1), qi(0)]);
        assert!(w2.mul(&w2).is_identity());
        assert!(w2.is_isometry(&sp));
        assert!(sp.reflection(&r(&[0], &[1, 0])).is_err());
        assert!(sp.word_eval(&[]).unwrap().is_identity());
    }

    #[test]
    fn c12_closed_form() {
        let e = a1(Semilattice::lattice(2));
        let sp = HyperbolicSpace::new(&e);
        let c = sp.c_ij(1, 2).unwrap();
        // λ₁ ↦ λ₁ + σ₂, λ₂ ↦ λ₂ − σ₁
        assert_eq!(c.column(3), vec![qi(0), qi(0), qi(1), qi(1), qi(0)]);
        assert_eq!(c.column(4), vec![qi(0), qi(-1), qi(0), qi(0), qi(1)]);
        assert!(c.mul(&sp.c_ij(2, 1).unwrap()).is_identity());
        assert!(sp.c_ij(1, 1).is_err());
        assert!(sp.c_ij(1, 3).is_err());
    }

    #[test]
    fn translation_from_two_reflections() {
        // w_{α+σᵢ} w_α = t⁽ⁱ⁾_{k(α)α}
        for code in ["A1", "B2", "G2"] {
            let f = FiniteRootSystem::parse(code).unwrap();
            let e = ExtAffineRootSystem::build(f.clone(), 2, 0, Semilattice::lattice(0), Semilattice::lattice(2)).unwrap();
            let sp = HyperbolicSpace::new(&e);
            for fin in f.roots() {
                let a = Root::new(fin.clone(), vec![0, 0]);
                for i in 0..2 {
                    let mut s = vec![0, 0];
                    s[i] = 1;
                    let lhs = sp.word_eval(&[a.add(&Root::new(vec![0; f.rank()], s)), a.clone()]).unwrap();
                    let rhs = sp.t_map(i, &a.scale(k_of(&e, &a))).unwrap();
                    assert_eq!(lhs, rhs, "{code} {a}");
                }
            }
        }
    }

    #[test]
    fn c_pair_examples() {
        let e = a1(Semilattice::lattice(2));
        let sp = HyperbolicSpace::new(&e);
        let a = r(&[1], &[0, 0]);
        assert!(c_pair(&sp, &e, &a, &[1, 0]).unwrap().is_identity());
        assert_eq!(c_pair(&sp, &e, &a, &[1, 1]).unwrap(), sp.c_ij(1, 2).unwrap());
        let b2 = build_ears(XType::B, 2, 2, 1, Semilattice::lattice(1), Semilattice::lattice(1)).unwrap();
        let sp2 = HyperbolicSpace::new(&b2);
        let thl = b2.highest().1.unwrap();
        assert!(c_pair(&sp2, &b2, &thl, &[0, 3]).unwrap().is_identity());
        assert!(matches!(c_pair(&sp2, &b2, &thl, &[1, 1]), Err(WeylError::RootOutsideSystem(_))));
    }

    #[test]
    fn reduced_collections() {
        let e = a1(Semilattice::lattice(2));
        let sp = HyperbolicSpace::new(&e);
        let t = |eps, eta: &[i64]| Triple { eps, long: false, eta: eta.to_vec() };
        let c = ReducedCollection { triples: vec![t(1, &[1, 1]), t(-1, &[1, 1])] };
        assert!(c.reduced_check(&e).unwrap());
        assert!(c.relation_holds(&sp, &e).unwrap());
        let single = ReducedCollection { triples: vec![t(1, &[1, 1])] };
        assert!(!single.reduced_check(&e).unwrap());
        assert!(!single.relation_holds(&sp, &e).unwrap());
        let b2 = build_ears(XType::B, 2, 2, 1, Semilattice::lattice(1), Semilattice::lattice(1)).unwrap();
        let bad = ReducedCollection { triples: vec![Triple { eps: 1, long: true, eta: vec![1, 0] }] };
        assert!(matches!(bad.reduced_check(&b2), Err(WeylError::DomainConstraintViolated(_))));
    }

    #[test]
    fn completion_is_reduced() {
        let b2 = build_ears(XType::B, 2, 3, 1, Semilattice::lattice(1), Semilattice::lattice(2)).unwrap();
        let sp = HyperbolicSpace::new(&b2);
        let seed = vec![
            Triple { eps: 1, long: false, eta: vec![2, -1, 1] },
            Triple { eps: -1, long: true, eta: vec![0, 3, 2] },
            Triple { eps: 1, long: false, eta: vec![1, 1, -2] },
        ];
        let c = ReducedCollection::completed(&b2, seed).unwrap();
        assert!(c.triples.len() > 3);
        assert!(c.reduced_check(&b2).unwrap());
        assert!(c.relation_holds(&sp, &b2).unwrap());
    }

    #[test]
    fn parity_examples() {
        let b2 = build_ears(XType::B, 2, 1, 0, Semilattice::lattice(0), Semilattice::lattice(1)).unwrap();
        let short = r(&[0, 1], &[0]);
        let w = vec![short.clone(), r(&[1, 1], &[0]), short.clone()];
        assert_eq!(parity_word(&b2, &ParityKind::Length, &w).unwrap(), 1);
        let half = Semilattice::from_index_sets(2, &[vec![], vec![1], vec![2]]).unwrap();
        let a = a1(half);
        let alpha = r(&[1], &[0, 0]);
        assert_eq!(parity_hom(&a, &ParityKind::Orbit(alpha.clone()), &r(&[-1], &[1, 0])).unwrap(), 0);
        assert_eq!(parity_hom(&a, &ParityKind::Orbit(alpha.clone()), &r(&[-1], &[2, 0])).unwrap(), 1);
        let b3 = build_ears(XType::B, 3, 2, 1, Semilattice::lattice(1), Semilattice::lattice(1)).unwrap();
        let ths = b3.highest().0;
        let x = ths.add(&r(&[0, 0, 0], &[1, 0]));
        assert_eq!(parity_hom(&b3, &ParityKind::ShortCoset(1), &x).unwrap(), 1);
        assert_eq!(parity_hom(&b3, &ParityKind::ShortCoset(1), &ths).unwrap(), 0);
        assert_eq!(parity_hom(&b3, &ParityKind::Orbit(ths.clone()), &ths), Err(WeylError::UnsupportedOrbitCriterion));
    }

    #[test]
    fn word_search_basics() {
        let e = a1(Semilattice::lattice(2));
        let sp = HyperbolicSpace::new(&e);
        let a = r(&[1], &[0, 0]);
        let b = r(&[-1], &[1, 0]);
        let target = sp.reflection(&a).unwrap();
        assert_eq!(bounded_word_search(&sp, &target, &[a.clone(), b.clone()], 3).unwrap(), SearchResult::Found(vec![a.clone()]));
        let c = sp.c_ij(1, 2).unwrap();
        assert!(matches!(bounded_word_search(&sp, &c, &[a.clone(), b.clone()], 12).unwrap(), SearchResult::NotFound { .. }));
        let w = sp.word_eval(&[a.clone(), b.clone(), a.clone()]).unwrap();
        assert_eq!(w, sp.reflection(&e.reflect(&a, &b)).unwrap());
        let found = bounded_word_search(&sp, &w, &[a.clone(), b.clone()], 5).unwrap();
        assert_eq!(found, SearchResult::Found(vec![a.clone(), b.clone(), a]));
    }

    #[test]
    fn bfs_limits() {
        let e = a1(Semilattice::lattice(2));
        let sp = HyperbolicSpace::new(&e);
        let els = bfs_elements(&sp, &[r(&[1], &[0, 0])], 50).unwrap();
        assert_eq!(els.len(), 2);
        let els = bfs_elements(&sp, &[r(&[1], &[0, 0]), r(&[-1], &[1, 0])], 50).unwrap();
        assert_eq!(els.len(), 50);
    }
}
