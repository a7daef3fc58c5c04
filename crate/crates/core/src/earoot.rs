//! Extended affine root systems `R = (S+S) ∪ (Ṙ_sh+S) ∪ (Ṙ_lg+L)` with
//! `S = S₁ ⊕ ⟨S₂⟩` and `L = k⟨S₁⟩ ⊕ S₂` over the isotropic lattice `ℤ^ν`.
//!
//! Roots carry a finite part in simple-root coordinates and an isotropic part
//! in the σ-basis. Every set involved is periodic in the isotropic coordinates,
//! so membership and the axiom checks work on residues modulo a fixed period.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finroot::{FinRootError, FiniteRootSystem, XType};
use crate::lattice::{mask_indices, quotient_invariants, tau, IntVector, Semilattice, SemilatticeError, SuppMask, Sublattice};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub fin: IntVector,
    pub iso: IntVector,
}

impl Root {
    pub fn new(fin: IntVector, iso: IntVector) -> Self {
        Root { fin, iso }
    }

    pub fn zero(l: usize, nu: usize) -> Self {
        Root { fin: vec![0; l], iso: vec![0; nu] }
    }

    pub fn is_isotropic(&self) -> bool {
        self.fin.iter().all(|&x| x == 0)
    }

    pub fn neg(&self) -> Root {
        Root { fin: self.fin.iter().map(|x| -x).collect(), iso: self.iso.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, o: &Root) -> Root {
        Root {
            fin: self.fin.iter().zip(&o.fin).map(|(a, b)| a + b).collect(),
            iso: self.iso.iter().zip(&o.iso).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Root) -> Root {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: i64) -> Root {
        Root { fin: self.fin.iter().map(|x| c * x).collect(), iso: self.iso.iter().map(|x| c * x).collect() }
    }

    /// Concatenated coordinates `(fin, iso)` in `ℤ^{ℓ+ν}`.
    pub fn coords(&self) -> IntVector {
        self.fin.iter().chain(&self.iso).copied().collect()
    }

    pub fn from_coords(v: &[i64], l: usize) -> Root {
        Root { fin: v[..l].to_vec(), iso: v[l..].to_vec() }
    }

    /// Parses the display form, e.g. `-a1+2s1-s2` or `0`.
    pub fn parse(text: &str, l: usize, nu: usize) -> Result<Root, String> {
        let mut r = Root::zero(l, nu);
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "0" {
            return Ok(r);
        }
        let mut rest = t.as_str();
        if rest.is_empty() {
            return Err("empty root".into());
        }
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let digits = body.bytes().take_while(u8::is_ascii_digit).count();
            let coef: i64 = if digits == 0 { 1 } else { body[..digits].parse().map_err(|e| format!("{text}: {e}"))? };
            let body = &body[digits..];
            let kind = body.chars().next().ok_or_else(|| format!("{text}: dangling coefficient"))?;
            let body = &body[1..];
            let idx_len = body.bytes().take_while(u8::is_ascii_digit).count();
            let idx: usize = body[..idx_len].parse().map_err(|_| format!("{text}: missing index after '{kind}'"))?;
            let slot = match kind {
                'a' if (1..=l).contains(&idx) => &mut r.fin[idx - 1],
                's' if (1..=nu).contains(&idx) => &mut r.iso[idx - 1],
                _ => return Err(format!("{text}: unknown symbol {kind}{idx}")),
            };
            *slot += sign * coef;
            rest = &body[idx_len..];
        }
        Ok(r)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        let mut push = |c: i64, name: String| {
            if c == 0 {
                return;
            }
            let sign = if c < 0 { "-" } else if terms.is_empty() { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            terms.push(format!("{sign}{mag}{name}"));
        };
        for (i, &c) in self.fin.iter().enumerate() {
            push(c, format!("a{}", i + 1));
        }
        for (i, &c) in self.iso.iter().enumerate() {
            push(c, format!("s{}", i + 1));
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.concat())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Length {
    Short,
    Long,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Membership {
    Nonisotropic(Length),
    Isotropic,
    NotARoot,
}

impl Membership {
    pub fn is_root(self) -> bool {
        self != Membership::NotARoot
    }
}

/// A subset of `ℤ^ν` invariant under translation by `modulus·ℤ^ν`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicSet {
    nu: usize,
    modulus: i64,
    table: Vec<bool>,
}

/// All residue vectors in `[0, m)^ν`, first coordinate varying fastest.
pub fn residue_box(nu: usize, m: i64) -> Vec<IntVector> {
    let total = (m as usize).pow(nu as u32);
    (0..total)
        .map(|mut c| {
            (0..nu)
                .map(|_| {
                    let r = (c % m as usize) as i64;
                    c /= m as usize;
                    r
                })
                .collect()
        })
        .collect()
}

/// All vectors in `[-b, b]^ν`.
pub fn centered_box(nu: usize, b: i64) -> Vec<IntVector> {
    residue_box(nu, 2 * b + 1)
        .into_iter()
        .map(|v| v.into_iter().map(|x| x - b).collect())
        .collect()
}

impl PeriodicSet {
    pub fn from_predicate(nu: usize, modulus: i64, pred: impl Fn(&[i64]) -> bool) -> Self {
        let table = residue_box(nu, modulus).iter().map(|v| pred(v)).collect();
        PeriodicSet { nu, modulus, table }
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    fn code(&self, v: &[i64]) -> usize {
        let m = self.modulus;
        v.iter().rev().fold(0usize, |acc, &x| acc * m as usize + x.rem_euclid(m) as usize)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        v.len() == self.nu && self.table[self.code(v)]
    }

    pub fn residues(&self) -> Vec<IntVector> {
        residue_box(self.nu, self.modulus)
            .into_iter()
            .zip(&self.table)
            .filter(|(_, &b)| b)
            .map(|(v, _)| v)
            .collect()
    }

    /// Same set described with a period that is a multiple of the current one.
    pub fn with_modulus(&self, m: i64) -> Self {
        assert_eq!(m % self.modulus, 0, "new period must be a multiple");
        PeriodicSet::from_predicate(self.nu, m, |v| self.contains(v))
    }

    pub fn sumset(&self, other: &PeriodicSet) -> Self {
        let m = lcm(self.modulus, other.modulus);
        let a = self.with_modulus(m).residues();
        let b = other.with_modulus(m).residues();
        let mut hit: HashSet<IntVector> = HashSet::new();
        for x in &a {
            for y in &b {
                hit.insert(x.iter().zip(y).map(|(p, q)| (p + q).rem_euclid(m)).collect());
            }
        }
        PeriodicSet::from_predicate(self.nu, m, |v| hit.contains(v))
    }

    pub fn span(&self) -> Sublattice {
        let mut gens = self.residues();
        for i in 0..self.nu {
            let mut e = vec![0; self.nu];
            e[i] = self.modulus;
            gens.push(e);
        }
        Sublattice::span(&gens, self.nu).expect("consistent dimension")
    }

    pub fn is_lattice(&self) -> bool {
        let span = self.span();
        residue_box(self.nu, self.modulus).iter().all(|v| span.contains(v) == self.contains(v))
    }

    pub fn equals(&self, other: &PeriodicSet) -> bool {
        let m = lcm(self.modulus, other.modulus);
        residue_box(self.nu, m).iter().all(|v| self.contains(v) == other.contains(v))
    }
}

pub fn lcm(a: i64, b: i64) -> i64 {
    let g = gcd(a, b);
    a / g * b
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// The clause of the structural description that a candidate `(S, L)` violates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructureClause {
    ZeroInS,
    ZeroInL,
    SClosed,
    LClosed,
    SSpansLambda,
    LSpansLambda,
    LPlusS,
    KSPlusL,
    KSpanSInSpanL,
    SpanLInS,
    TwistIndex,
    Lattice(String),
}

impl fmt::Display for StructureClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureClause::ZeroInS => write!(f, "0 ∈ S"),
            StructureClause::ZeroInL => write!(f, "0 ∈ L"),
            StructureClause::SClosed => write!(f, "S ± 2S ⊆ S"),
            StructureClause::LClosed => write!(f, "L ± 2L ⊆ L"),
            StructureClause::SSpansLambda => write!(f, "⟨S⟩ = Λ"),
            StructureClause::LSpansLambda => write!(f, "⟨L⟩ has full rank"),
            StructureClause::LPlusS => write!(f, "L + S ⊆ S"),
            StructureClause::KSPlusL => write!(f, "kS + L ⊆ L"),
            StructureClause::KSpanSInSpanL => write!(f, "k⟨S⟩ ⊆ ⟨L⟩"),
            StructureClause::SpanLInS => write!(f, "⟨L⟩ ⊆ S"),
            StructureClause::TwistIndex => write!(f, "|⟨S⟩/⟨L⟩| = k^t"),
            StructureClause::Lattice(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EarsError {
    #[error(transparent)]
    Finite(#[from] FinRootError),
    #[error(transparent)]
    Semilattice(#[from] SemilatticeError),
    #[error("twist number {t} out of range for nullity {nu}")]
    TwistOutOfRange { t: usize, nu: usize },
    #[error("semilattice rank mismatch: {0}")]
    RankMismatch(String),
    #[error("simply laced systems have twist number 0")]
    TwistOnSimplyLaced,
    #[error("lattice constraint violated: {0}")]
    LatticeConstraintViolated(StructureClause),
    #[error("structure violated: {0}")]
    StructureViolated(StructureClause),
    #[error("dimension mismatch for root {0}")]
    DimensionMismatch(String),
    #[error("root string broken at {0}")]
    StringBroken(String),
    #[error("root string exceeds cap {0}")]
    CapExceeded(i64),
    #[error("root {0} is isotropic")]
    Isotropic(String),
    #[error("set is not connected")]
    NotConnected,
    #[error("bad system spec: {0}")]
    BadSpec(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtAffineRootSystem {
    finite: FiniteRootSystem,
    nu: usize,
    t: usize,
    s1: Semilattice,
    s2: Semilattice,
    s: PeriodicSet,
    l: PeriodicSet,
    r0: PeriodicSet,
}

/// Checks the structural clauses for a candidate pair `(S, L)` and returns the
/// twist number. For simply laced types `L` is ignored.
pub fn validate_parts(
    finite: &FiniteRootSystem,
    s: &PeriodicSet,
    l: &PeriodicSet,
) -> Result<usize, StructureClause> {
    let nu = s.nu();
    let zero = vec![0; nu];
    let full = Sublattice::full(nu);
    let closed = |set: &PeriodicSet| {
        let m = lcm(set.modulus(), 2);
        let res = set.with_modulus(m).residues();
        res.iter().all(|a| {
            res.iter().all(|b| {
                let p: IntVector = a.iter().zip(b).map(|(x, y)| x + 2 * y).collect();
                let q: IntVector = a.iter().zip(b).map(|(x, y)| x - 2 * y).collect();
                set.contains(&p) && set.contains(&q)
            })
        })
    };
    if !s.contains(&zero) {
        return Err(StructureClause::ZeroInS);
    }
    if !closed(s) {
        return Err(StructureClause::SClosed);
    }
    if s.span() != full {
        return Err(StructureClause::SSpansLambda);
    }
    let lattice_needed = |what: &str| StructureClause::Lattice(format!("{what} is a lattice for type {}", finite.code()));
    if finite.simply_laced() {
        if finite.rank() > 1 && !s.is_lattice() {
            return Err(lattice_needed("S"));
        }
        return Ok(0);
    }
    let k = finite.k();
    if !l.contains(&zero) {
        return Err(StructureClause::ZeroInL);
    }
    if !closed(l) {
        return Err(StructureClause::LClosed);
    }
    let span_l = l.span();
    if span_l.rank() < nu {
        return Err(StructureClause::LSpansLambda);
    }
    let m = lcm(lcm(s.modulus(), l.modulus()), k);
    let s_res = s.with_modulus(m).residues();
    let l_res = l.with_modulus(m).residues();
    for a in &l_res {
        for b in &s_res {
            let p: IntVector = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if !s.contains(&p) {
                return Err(StructureClause::LPlusS);
            }
            let q: IntVector = a.iter().zip(b).map(|(x, y)| x + k * y).collect();
            if !l.contains(&q) {
                return Err(StructureClause::KSPlusL);
            }
        }
    }
    let span_s = s.span();
    if !span_s.scaled(k).is_subset_of(&span_l) {
        return Err(StructureClause::KSpanSInSpanL);
    }
    if !span_l.rows_i64().iter().all(|r| s.contains(r))
        || !residue_box(nu, m).iter().filter(|v| span_l.contains(v)).all(|v| s.contains(v))
    {
        return Err(StructureClause::SpanLInS);
    }
    let inv = quotient_invariants(&span_s, &span_l).map_err(|_| StructureClause::SpanLInS)?;
    let kb = BigInt::from(k);
    if inv.iter().any(|d| *d != kb) {
        return Err(StructureClause::TwistIndex);
    }
    let t = inv.len();
    let needs_s = matches!(finite.xtype(), XType::C | XType::F | XType::G);
    let needs_l = matches!(finite.xtype(), XType::B | XType::F | XType::G) && finite.rank() > 2;
    let needs_l = needs_l || matches!(finite.xtype(), XType::F | XType::G);
    if needs_s && !s.is_lattice() {
        return Err(lattice_needed("S"));
    }
    if needs_l && !l.is_lattice() {
        return Err(lattice_needed("L"));
    }
    Ok(t)
}

impl ExtAffineRootSystem {
    pub fn build(finite: FiniteRootSystem, nu: usize, t: usize, s1: Semilattice, s2: Semilattice) -> Result<Self, EarsError> {
        if t > nu {
            return Err(EarsError::TwistOutOfRange { t, nu });
        }
        if finite.simply_laced() && t != 0 {
            return Err(EarsError::TwistOnSimplyLaced);
        }
        if s1.nu() != t || s2.nu() != nu - t {
            return Err(EarsError::RankMismatch(format!(
                "S1 has rank {}, S2 has rank {}, expected {} and {}",
                s1.nu(),
                s2.nu(),
                t,
                nu - t
            )));
        }
        let k = finite.k();
        let period = if k == 3 { 6 } else { 2 };
        let (s, l) = if finite.simply_laced() {
            let s = PeriodicSet::from_predicate(nu, period, |v| s2.contains(v));
            (s.clone(), s)
        } else {
            let s = PeriodicSet::from_predicate(nu, period, |v| s1.contains(&v[..t]));
            let l = PeriodicSet::from_predicate(nu, period, |v| {
                v[..t].iter().all(|x| x.rem_euclid(k) == 0) && s2.contains(&v[t..])
            });
            (s, l)
        };
        let twist = validate_parts(&finite, &s, &l).map_err(|c| match c {
            StructureClause::Lattice(_) => EarsError::LatticeConstraintViolated(c),
            other => EarsError::StructureViolated(other),
        })?;
        if twist != t {
            return Err(EarsError::StructureViolated(StructureClause::TwistIndex));
        }
        let r0 = s.sumset(&s).with_modulus(period);
        Ok(ExtAffineRootSystem { finite, nu, t, s1, s2, s, l, r0 })
    }

    /// Simply laced (or `A_1`) system with a single semilattice `S`.
    pub fn simply_laced(finite: FiniteRootSystem, s: Semilattice) -> Result<Self, EarsError> {
        let nu = s.nu();
        Self::build(finite, nu, 0, Semilattice::lattice(0), s)
    }

    pub fn finite_only(finite: FiniteRootSystem) -> Self {
        Self::build(finite, 0, 0, Semilattice::lattice(0), Semilattice::lattice(0)).expect("nullity zero")
    }

    pub fn finite(&self) -> &FiniteRootSystem {
        &self.finite
    }

    pub fn rank(&self) -> usize {
        self.finite.rank()
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn k(&self) -> i64 {
        self.finite.k()
    }

    pub fn s1(&self) -> &Semilattice {
        &self.s1
    }

    pub fn s2(&self) -> &Semilattice {
        &self.s2
    }

    pub fn s_set(&self) -> &PeriodicSet {
        &self.s
    }

    pub fn l_set(&self) -> &PeriodicSet {
        &self.l
    }

    pub fn r0_set(&self) -> &PeriodicSet {
        &self.r0
    }

    pub fn period(&self) -> i64 {
        self.s.modulus()
    }

    pub fn dim(&self) -> usize {
        self.rank() + self.nu
    }

    pub fn is_a1(&self) -> bool {
        self.finite.xtype() == XType::A && self.rank() == 1
    }

    pub fn type_code(&self) -> String {
        self.finite.code()
    }

    pub fn check_dims(&self, b: &Root) -> Result<(), EarsError> {
        if b.fin.len() != self.rank() || b.iso.len() != self.nu {
            return Err(EarsError::DimensionMismatch(format!("{b:?}")));
        }
        Ok(())
    }

    pub fn membership(&self, b: &Root) -> Membership {
        if b.is_isotropic() {
            return if self.r0.contains(&b.iso) { Membership::Isotropic } else { Membership::NotARoot };
        }
        if !self.finite.is_root(&b.fin) {
            return Membership::NotARoot;
        }
        if self.finite.is_short(&b.fin) {
            if self.s.contains(&b.iso) {
                Membership::Nonisotropic(Length::Short)
            } else {
                Membership::NotARoot
            }
        } else if self.l.contains(&b.iso) {
            Membership::Nonisotropic(Length::Long)
        } else {
            Membership::NotARoot
        }
    }

    pub fn contains(&self, b: &Root) -> Result<Membership, EarsError> {
        self.check_dims(b)?;
        Ok(self.membership(b))
    }

    pub fn is_root(&self, b: &Root) -> bool {
        self.membership(b).is_root()
    }

    pub fn is_nonisotropic_root(&self, b: &Root) -> bool {
        matches!(self.membership(b), Membership::Nonisotropic(_))
    }

    pub fn is_short(&self, b: &Root) -> bool {
        self.membership(b) == Membership::Nonisotropic(Length::Short)
    }

    pub fn is_long(&self, b: &Root) -> bool {
        self.membership(b) == Membership::Nonisotropic(Length::Long)
    }

    pub fn ip(&self, a: &Root, b: &Root) -> i64 {
        self.finite.ip(&a.fin, &b.fin)
    }

    pub fn cartan_int(&self, beta: &Root, alpha: &Root) -> i64 {
        self.finite.cartan_int(&beta.fin, &alpha.fin)
    }

    pub fn reflect(&self, alpha: &Root, beta: &Root) -> Root {
        let c = self.cartan_int(beta, alpha);
        beta.sub(&alpha.scale(c))
    }

    /// Index of `R` from the stored semilattice indices.
    pub fn index(&self) -> i64 {
        let (i1, i2) = (self.s1.index() as i64, self.s2.index() as i64);
        let (nu, t) = (self.nu as i64, self.t as i64);
        match self.finite.xtype() {
            XType::A if self.rank() == 1 => i2 - nu,
            XType::B if self.rank() == 2 => i1 + i2 - nu,
            XType::B => i1 - t,
            XType::C => i2 - (nu - t),
            _ => 0,
        }
    }

    /// Class representatives of `R^×`: finite part plus isotropic residue in `[0, N)^ν`.
    pub fn nonisotropic_reps(&self) -> Vec<Root> {
        let res = residue_box(self.nu, self.period());
        let mut out = Vec::new();
        for f in self.finite.roots() {
            for r in &res {
                let b = Root::new(f.clone(), r.clone());
                if self.is_root(&b) {
                    out.push(b);
                }
            }
        }
        out
    }

    pub fn isotropic_reps(&self) -> Vec<Root> {
        self.r0.residues().into_iter().map(|r| Root::new(vec![0; self.rank()], r)).collect()
    }

    /// Nonisotropic roots with all isotropic coordinates in `[-b, b]`.
    pub fn roots_in_box(&self, b: i64) -> Vec<Root> {
        let pts = centered_box(self.nu, b);
        let mut out = Vec::new();
        for f in self.finite.roots() {
            for p in &pts {
                let r = Root::new(f.clone(), p.clone());
                if self.is_root(&r) {
                    out.push(r);
                }
            }
        }
        out
    }

    /// Span in `ℤ^{ℓ+ν}` of the nonisotropic roots of the selected lengths.
    pub fn root_lattice(&self, short: bool, long: bool) -> Sublattice {
        let m = self.period();
        let mut gens = Vec::new();
        for f in self.finite.roots() {
            let is_short = self.finite.is_short(f);
            if !((is_short && short) || (!is_short && long)) {
                continue;
            }
            let set = if is_short { &self.s } else { &self.l };
            for r in set.residues() {
                let base = Root::new(f.clone(), r.clone());
                gens.push(base.coords());
                for i in 0..self.nu {
                    let mut shifted = base.clone();
                    shifted.iso[i] += m;
                    gens.push(shifted.coords());
                }
            }
        }
        Sublattice::span(&gens, self.dim()).expect("dimensions agree")
    }

    pub fn span_r(&self) -> Sublattice {
        self.root_lattice(true, true)
    }

    pub fn span_short(&self) -> Sublattice {
        self.root_lattice(true, false)
    }

    pub fn span_long(&self) -> Sublattice {
        self.root_lattice(false, true)
    }

    pub fn highest(&self) -> (Root, Option<Root>) {
        let (s, l) = self.finite.highest_roots();
        let z = vec![0; self.nu];
        (Root::new(s, z.clone()), l.map(|l| Root::new(l, z)))
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.rank()).map(|i| Root::new(crate::finroot::unit(self.rank(), i), vec![0; self.nu])).collect()
    }

    fn iso_vec(&self, first: Option<SuppMask>, last: Option<SuppMask>) -> IntVector {
        let mut v = vec![0; self.nu];
        if let Some(m) = first {
            v[..self.t].copy_from_slice(&tau(m, self.t));
        }
        if let Some(m) = last {
            v[self.t..].copy_from_slice(&tau(m, self.nu - self.t));
        }
        v
    }

    /// The base listing simple roots followed by isotropic shifts of highest roots.
    pub fn base_general(&self) -> Vec<Root> {
        let mut p = self.simple_roots();
        let (ths, thl) = self.highest();
        let sigma = |i: usize| {
            let mut v = vec![0; self.nu];
            v[i] = 1;
            v
        };
        let shift = |iso: IntVector, th: &Root| Root::new(th.fin.iter().map(|x| -x).collect(), iso);
        match self.finite.xtype() {
            XType::A if self.rank() == 1 => {
                for m in self.s2.ordered_classes() {
                    p.push(shift(self.iso_vec(None, Some(m)), &ths));
                }
            }
            XType::A | XType::D | XType::E => {
                for i in 0..self.nu {
                    p.push(shift(sigma(i), &ths));
                }
            }
            XType::F | XType::G => {
                let thl = thl.expect("two lengths");
                for i in 0..self.nu {
                    p.push(shift(sigma(i), if i < self.t { &ths } else { &thl }));
                }
            }
            XType::B if self.rank() == 2 => {
                let thl = thl.expect("two lengths");
                for m in self.s1.ordered_classes() {
                    p.push(shift(self.iso_vec(Some(m), None), &ths));
                }
                for m in self.s2.ordered_classes() {
                    p.push(shift(self.iso_vec(None, Some(m)), &thl));
                }
            }
            XType::B => {
                let thl = thl.expect("two lengths");
                for m in self.s1.ordered_classes() {
                    p.push(shift(self.iso_vec(Some(m), None), &ths));
                }
                for i in self.t..self.nu {
                    p.push(shift(sigma(i), &thl));
                }
            }
            XType::C => {
                let thl = thl.expect("two lengths");
                for i in 0..self.t {
                    p.push(shift(sigma(i), &ths));
                }
                for m in self.s2.ordered_classes() {
                    p.push(shift(self.iso_vec(None, Some(m)), &thl));
                }
            }
        }
        p
    }

    /// The nullity-two base using `σ_i` minus a simple root of the matching length.
    /// Returns `None` when `ν ≠ 2` or some listed element is not a root.
    pub fn base_elliptic(&self) -> Option<Vec<Root>> {
        if self.nu != 2 {
            return None;
        }
        let l = self.rank();
        let (short_simple, long_simple) = match self.finite.xtype() {
            XType::A | XType::D | XType::E => (0, 0),
            XType::B => (l - 1, 0),
            XType::C => (0, l - 1),
            XType::F => (3, 0),
            XType::G => (1, 0),
        };
        let neg_simple = |i: usize, iso: IntVector| {
            let mut f = vec![0; l];
            f[i] = -1;
            Root::new(f, iso)
        };
        let mut p = self.simple_roots();
        for i in 0..2 {
            let mut iso = vec![0, 0];
            iso[i] = 1;
            let a = if i < self.t { short_simple } else { long_simple };
            p.push(neg_simple(a, iso));
        }
        if self.index() == 1 {
            let a = if self.t == 2 { short_simple } else { long_simple };
            p.push(neg_simple(a, vec![1, 1]));
        }
        p.iter().all(|r| self.is_nonisotropic_root(r)).then_some(p)
    }

    pub fn canonical_base(&self) -> Vec<Root> {
        self.base_elliptic().unwrap_or_else(|| self.base_general())
    }

    pub fn root_string(&self, alpha: &Root, beta: &Root, cap: i64) -> Result<(i64, i64), EarsError> {
        if alpha.is_isotropic() {
            return Err(EarsError::Isotropic(alpha.to_string()));
        }
        let at = |n: i64| self.is_root(&beta.add(&alpha.scale(n)));
        if !at(0) {
            return Err(EarsError::StringBroken(beta.to_string()));
        }
        let mut u = 0;
        while at(u + 1) {
            u += 1;
            if u > cap {
                return Err(EarsError::CapExceeded(cap));
            }
        }
        let mut d = 0;
        while at(-(d + 1)) {
            d += 1;
            if d > cap {
                return Err(EarsError::CapExceeded(cap));
            }
        }
        for n in (-cap..-d).chain(u + 1..=cap) {
            if at(n) {
                return Err(EarsError::StringBroken(beta.add(&alpha.scale(n)).to_string()));
            }
        }
        if d - u != self.cartan_int(beta, alpha) {
            return Err(EarsError::StringBroken(format!("d-u != <{beta},{alpha}^v>")));
        }
        Ok((d, u))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.finite.xtype().letter().to_string(),
            "rank": self.rank(),
            "nu": self.nu,
            "t": self.t,
            "S1": self.s1.to_json(),
            "S2": self.s2.to_json(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, EarsError> {
        let bad = |s: &str| EarsError::BadSpec(s.to_string());
        let ty = v.get("type").and_then(|x| x.as_str()).ok_or_else(|| bad("missing \"type\""))?;
        let (letter, inline_rank) = {
            let mut c = ty.chars();
            let letter = c.next().ok_or_else(|| bad("empty type"))?;
            (letter, c.as_str().parse::<usize>().ok())
        };
        let xtype = XType::from_letter(letter).ok_or_else(|| bad("unknown type letter"))?;
        let rank = match v.get("rank").and_then(|x| x.as_u64()) {
            Some(r) => r as usize,
            None => inline_rank.ok_or_else(|| bad("missing \"rank\""))?,
        };
        let finite = FiniteRootSystem::build(xtype, rank)?;
        let nu = v.get("nu").and_then(|x| x.as_u64()).ok_or_else(|| bad("missing \"nu\""))? as usize;
        let t = v.get("t").and_then(|x| x.as_u64()).unwrap_or(0) as usize;
        if t > nu {
            return Err(EarsError::TwistOutOfRange { t, nu });
        }
        let semi = |key: &str, rank: usize| -> Result<Semilattice, EarsError> {
            match v.get(key) {
                Some(j) => Semilattice::from_json(j).map_err(|e| EarsError::BadSpec(format!("{key}: {e}"))),
                None if rank == 0 => Ok(Semilattice::lattice(0)),
                None => Err(EarsError::BadSpec(format!("missing \"{key}\""))),
            }
        };
        let s1 = semi("S1", t)?;
        let s2 = match v.get("S") {
            Some(j) if v.get("S2").is_none() => {
                Semilattice::from_json(j).map_err(|e| EarsError::BadSpec(format!("S: {e}")))?
            }
            _ => semi("S2", nu - t)?,
        };
        Self::build(finite, nu, t, s1, s2)
    }
}

/// True iff the graph on `p` with edges `(α, β) ≠ 0` is connected.
pub fn connectivity(ears: &ExtAffineRootSystem, p: &[Root]) -> bool {
    if p.is_empty() {
        return true;
    }
    let mut seen = vec![false; p.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..p.len() {
            if !seen[j] && ears.ip(&p[i], &p[j]) != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub system: String,
    pub boxed_roots: usize,
    pub checks: Vec<AxiomCheck>,
    /// Whether the (R1)-(R6) list and the eight-axiom list give the same verdict.
    pub definitions_agree: bool,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

pub fn verify_axioms(ears: &ExtAffineRootSystem, boxb: i64) -> AxiomReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(AxiomCheck { name: name.to_string(), passed, detail })
    };
    let n = ears.dim();
    let l = ears.rank();
    let reps = ears.nonisotropic_reps();
    let iso = ears.isotropic_reps();
    let all: Vec<Root> = reps.iter().chain(&iso).cloned().collect();
    let boxed = ears.roots_in_box(boxb);

    let mut gens: Vec<IntVector> = boxed.iter().map(Root::coords).collect();
    gens.extend(centered_box(ears.nu(), boxb).into_iter().map(|v| Root::new(vec![0; l], v)).filter(|r| ears.is_root(r)).map(|r| r.coords()));
    let span = Sublattice::span(&gens, n).expect("dimensions agree");
    let r1 = span.rank() == n;
    push("R1", r1, format!("rank of <R ∩ box> is {} of {}", span.rank(), n));

    let mut r2 = true;
    for a in ears.finite().roots() {
        for b in ears.finite().roots() {
            r2 &= (2 * ears.finite().ip(b, a)) % ears.finite().norm(a) == 0;
        }
    }
    push("R2", r2, "pairings depend on finite parts only".into());

    let mut r3_bad = None;
    'outer: for a in &reps {
        for b in &all {
            let img = ears.reflect(a, b);
            if !ears.is_root(&img) {
                r3_bad = Some(format!("w_({a})({b}) = {img}"));
                break 'outer;
            }
        }
    }
    let r3_box = boxed.iter().take(400).all(|a| boxed.iter().take(400).all(|b| ears.is_root(&ears.reflect(a, b))));
    let r3 = r3_bad.is_none() && r3_box;
    push("R3", r3, r3_bad.unwrap_or_else(|| format!("{} class representatives closed", reps.len())));

    // (R^× - R^×) ∩ V⁰ is the union of S - S over short and L - L over long finite parts.
    let has_short = !ears.finite().short_roots().is_empty();
    let has_long = !ears.finite().long_roots().is_empty();
    let m = ears.period();
    let mut diff = PeriodicSet::from_predicate(ears.nu(), m, |_| false);
    if has_short {
        diff = union(&diff, &ears.s_set().sumset(&neg_set(ears.s_set())));
    }
    if has_long {
        diff = union(&diff, &ears.l_set().sumset(&neg_set(ears.l_set())));
    }
    let r4 = diff.equals(ears.r0_set());
    push("R4", r4, "R⁰ = V⁰ ∩ (R^× - R^×) compared on residue classes".into());

    let r5 = reps.iter().all(|a| !ears.is_root(&a.scale(2)));
    push("R5", r5, "2α ∉ R for class representatives".into());

    let r6 = boxed_connected(ears, &boxed);
    push("R6", r6, format!("{} nonisotropic roots in box {}", boxed.len(), boxb));

    let rdef = r1 && r2 && r3 && r4 && r5 && r6;

    let zero = Root::zero(l, ears.nu());
    let d1 = ears.is_root(&zero);
    push("D1", d1, "0 ∈ R".into());
    let d2 = all.iter().all(|b| ears.is_root(&b.neg()));
    push("D2", d2, "R = -R".into());
    push("D3", r1, "R spans V".into());
    push("D4", r5, "α ∈ R^× ⇒ 2α ∉ R".into());
    push("D5", true, "integer coordinates are discrete".into());
    let mut d6_bad = None;
    'strings: for a in &reps {
        for b in &all {
            if let Err(e) = ears.root_string(a, b, 8) {
                d6_bad = Some(format!("string of {a} through {b}: {e}"));
                break 'strings;
            }
        }
    }
    push("D6", d6_bad.is_none(), d6_bad.unwrap_or_else(|| "all root strings unbroken".into()));
    push("D7", r6, "R^× connected".into());
    let d8 = iso.iter().all(|s| reps.iter().any(|a| ears.is_root(&a.add(s))));
    push("D8", d8, "every isotropic class shifts some nonisotropic root into R".into());

    let ddef = checks.iter().filter(|c| c.name.starts_with('D')).all(|c| c.passed);
    AxiomReport {
        system: ears.type_code(),
        boxed_roots: boxed.len(),
        checks,
        definitions_agree: rdef == ddef,
    }
}

fn union(a: &PeriodicSet, b: &PeriodicSet) -> PeriodicSet {
    let m = lcm(a.modulus(), b.modulus());
    PeriodicSet::from_predicate(a.nu(), m, |v| a.contains(v) || b.contains(v))
}

fn neg_set(a: &PeriodicSet) -> PeriodicSet {
    PeriodicSet::from_predicate(a.nu(), a.modulus(), |v| {
        let w: IntVector = v.iter().map(|x| -x).collect();
        a.contains(&w)
    })
}

/// Components of the non-orthogonality graph on `boxed`. Roots sharing a finite
/// part pair to their nonzero norm, so it suffices to join finite parts.
fn boxed_connected(ears: &ExtAffineRootSystem, boxed: &[Root]) -> bool {
    let fins: Vec<IntVector> = boxed.iter().map(|r| r.fin.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    if fins.is_empty() {
        return false;
    }
    let mut seen = vec![false; fins.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..fins.len() {
            if !seen[j] && ears.finite().ip(&fins[i], &fins[j]) != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsystemReport {
    pub roots: Vec<Root>,
    pub isotropic: Vec<Root>,
    pub rank: usize,
    pub nullity_in_box: usize,
    pub inferred_type: Option<String>,
    /// Every root of `R^×` at distance ≥ 1 from the box boundary was reached.
    pub covers_inner_box: bool,
}

fn infer_type(rank: usize, total: usize, short: usize) -> Option<String> {
    if rank == 0 {
        return None;
    }
    for x in [XType::A, XType::B, XType::C, XType::D, XType::E, XType::F, XType::G] {
        let Ok(frs) = FiniteRootSystem::build(x, rank) else { continue };
        if frs.roots().len() == total && frs.short_roots().len() == short {
            return Some(frs.code());
        }
    }
    None
}

/// `R_P ∩ box`: the orbit of `P` under its reflections, kept inside the box.
pub fn subsystem_rp(ears: &ExtAffineRootSystem, p: &[Root], boxb: i64) -> Result<SubsystemReport, EarsError> {
    if p.is_empty() || !connectivity(ears, p) {
        return Err(EarsError::NotConnected);
    }
    let inside = |r: &Root| r.iso.iter().all(|x| x.abs() <= boxb);
    let mut seen: BTreeSet<Root> = p.iter().filter(|r| inside(r)).cloned().collect();
    let mut queue: VecDeque<Root> = seen.iter().cloned().collect();
    while let Some(b) = queue.pop_front() {
        for a in p {
            let img = ears.reflect(a, &b);
            if inside(&img) && seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    let roots: Vec<Root> = seen.into_iter().collect();
    let mut isotropic: BTreeSet<Root> = BTreeSet::new();
    let mut by_fin: BTreeMap<IntVector, Vec<&Root>> = BTreeMap::new();
    for r in &roots {
        by_fin.entry(r.fin.clone()).or_default().push(r);
    }
    for group in by_fin.values() {
        for a in group {
            for b in group {
                let d = a.sub(b);
                if inside(&d) {
                    isotropic.insert(d);
                }
            }
        }
    }
    let l = ears.rank();
    let fin_gens: Vec<IntVector> = by_fin.keys().cloned().collect();
    let rank = Sublattice::span(&fin_gens, l).map(|s| s.rank()).unwrap_or(0);
    let iso_gens: Vec<IntVector> = isotropic.iter().map(|r| r.iso.clone()).collect();
    let nullity_in_box = Sublattice::span(&iso_gens, ears.nu()).map(|s| s.rank()).unwrap_or(0);
    let short = by_fin.keys().filter(|f| ears.finite().is_short(f)).count();
    let inferred_type = if rank == l { infer_type(rank, by_fin.len(), short) } else { infer_type_reduced(ears, &fin_gens, rank) };
    let inner: HashSet<Root> = roots.iter().cloned().collect();
    let covers_inner_box = ears.roots_in_box((boxb - 1).max(0)).iter().all(|r| inner.contains(r));
    Ok(SubsystemReport {
        roots,
        isotropic: isotropic.into_iter().collect(),
        rank,
        nullity_in_box,
        inferred_type,
        covers_inner_box,
    })
}

fn infer_type_reduced(ears: &ExtAffineRootSystem, fins: &[IntVector], rank: usize) -> Option<String> {
    let short = fins.iter().filter(|f| ears.finite().is_short(f)).count();
    // Single-length subsystems are matched against the simply laced counts.
    if short == 0 || short == fins.len() {
        infer_type(rank, fins.len(), fins.len())
    } else {
        infer_type(rank, fins.len(), short)
    }
}

/// Representative semilattice of rank `r` and index `i`: the zero class, the
/// unit classes, then further classes in (size, index list) order.
pub fn representative_semilattice(r: usize, i: usize) -> Option<Semilattice> {
    if i < r || i >= (1 << r) {
        return None;
    }
    let mut masks: Vec<SuppMask> = vec![0];
    masks.extend((0..r).map(|j| 1 << j));
    let mut rest: Vec<SuppMask> = (1..(1u32 << r)).filter(|m| m.count_ones() > 1).collect();
    rest.sort_by_key(|&m| (m.count_ones(), mask_indices(m)));
    masks.extend(rest.into_iter().take(i - r));
    Semilattice::validate(r, masks).ok()
}

/// Every legal `(t, S₁, S₂)` for the given type and nullity, one semilattice
/// representative per index.
pub fn enumerate_configs(finite: &FiniteRootSystem, nu: usize) -> Vec<ExtAffineRootSystem> {
    let choices = |r: usize, must_lattice: bool| -> Vec<Semilattice> {
        if must_lattice {
            vec![Semilattice::lattice(r)]
        } else {
            (r..(1usize << r)).filter_map(|i| representative_semilattice(r, i)).collect()
        }
    };
    let l = finite.rank();
    let (s1_lat, s2_lat) = match finite.xtype() {
        XType::A if l == 1 => (false, false),
        XType::A | XType::D | XType::E => (true, true),
        XType::B if l == 2 => (false, false),
        XType::B => (false, true),
        XType::C => (true, false),
        XType::F | XType::G => (true, true),
    };
    let twists: Vec<usize> = if finite.simply_laced() { vec![0] } else { (0..=nu).collect() };
    let mut out = Vec::new();
    for t in twists {
        for s1 in choices(t, s1_lat) {
            for s2 in choices(nu - t, s2_lat) {
                if let Ok(e) = ExtAffineRootSystem::build(finite.clone(), nu, t, s1.clone(), s2) {
                    out.push(e);
                }
            }
        }
    }
    out
}

pub fn build_ears(
    xtype: XType,
    rank: usize,
    nu: usize,
    t: usize,
    s1: Semilattice,
    s2: Semilattice,
) -> Result<ExtAffineRootSystem, EarsError> {
    if t > nu {
        return Err(EarsError::TwistOutOfRange { t, nu });
    }
    ExtAffineRootSystem::build(FiniteRootSystem::build(xtype, rank)?, nu, t, s1, s2)
}

pub fn index_of(ears: &ExtAffineRootSystem) -> i64 {
    ears.index()
}

pub fn canonical_base(ears: &ExtAffineRootSystem) -> Vec<Root> {
    ears.canonical_base()
}

/// Whether the full lattice `ℤ^n` is spanned.
pub fn spans_full(gens: &[IntVector], n: usize) -> bool {
    Sublattice::span(gens, n).map(|s| s.index_in_full() == Some(BigInt::one())).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1_ind0() -> ExtAffineRootSystem {
        let s = Semilattice::from_index_sets(2, &[vec![], vec![1], vec![2]]).unwrap();
        ExtAffineRootSystem::simply_laced(FiniteRootSystem::parse("A1").unwrap(), s).unwrap()
    }

    fn r(fin: &[i64], iso: &[i64]) -> Root {
        Root::new(fin.to_vec(), iso.to_vec())
    }

    #[test]
    fn a1_index_zero_membership() {
        let e = a1_ind0();
        assert_eq!(e.index(), 0);
        assert_eq!(e.membership(&r(&[1], &[1, 1])), Membership::NotARoot);
        assert_eq!(e.membership(&r(&[1], &[2, 1])), Membership::Nonisotropic(Length::Short));
        assert_eq!(e.membership(&r(&[0], &[0, 0])), Membership::Isotropic);
        assert_eq!(e.membership(&r(&[0], &[1, 1])), Membership::Isotropic);
        assert_eq!(e.membership(&r(&[2], &[0, 0])), Membership::NotARoot);
        assert!(e.contains(&r(&[1], &[0])).is_err());
        assert_eq!(e.canonical_base(), vec![r(&[1], &[0, 0]), r(&[-1], &[1, 0]), r(&[-1], &[0, 1])]);
    }

    #[test]
    fn index_cases() {
        let a1 = FiniteRootSystem::parse("A1").unwrap();
        let full = ExtAffineRootSystem::simply_laced(a1.clone(), Semilattice::lattice(2)).unwrap();
        assert_eq!(full.index(), 1);
        assert_eq!(full.canonical_base().len(), 4);
        let a1_3 = ExtAffineRootSystem::simply_laced(a1, Semilattice::lattice(3)).unwrap();
        let p = a1_3.canonical_base();
        assert_eq!(p.len(), 8);
        assert_eq!(p[7], r(&[-1], &[1, 1, 1]));
        let g2 = build_ears(XType::G, 2, 2, 1, Semilattice::lattice(1), Semilattice::lattice(1)).unwrap();
        assert_eq!(g2.index(), 0);
        assert_eq!(
            g2.canonical_base(),
            vec![r(&[1, 0], &[0, 0]), r(&[0, 1], &[0, 0]), r(&[0, -1], &[1, 0]), r(&[-1, 0], &[0, 1])]
        );
    }

    #[test]
    fn build_errors() {
        let g = build_ears(XType::G, 2, 2, 3, Semilattice::lattice(3), Semilattice::lattice(0));
        assert_eq!(g, Err(EarsError::TwistOutOfRange { t: 3, nu: 2 }));
        let half = Semilattice::from_index_sets(2, &[vec![], vec![1], vec![2]]).unwrap();
        let b3 = build_ears(XType::B, 3, 2, 0, Semilattice::lattice(0), half.clone());
        assert!(matches!(b3, Err(EarsError::LatticeConstraintViolated(_))));
        let a2 = build_ears(XType::A, 2, 2, 0, Semilattice::lattice(0), half);
        assert!(matches!(a2, Err(EarsError::LatticeConstraintViolated(_))));
        let b2 = build_ears(XType::B, 2, 2, 1, Semilattice::lattice(1), Semilattice::lattice(1)).unwrap();
        assert_eq!(b2.k(), 2);
        let inv = quotient_invariants(&b2.s_set().span(), &b2.l_set().span()).unwrap();
        assert_eq!(inv, vec![BigInt::from(2)]);
        assert_eq!(b2.span_r(), Sublattice::full(4));
        let inv = quotient_invariants(&b2.span_short(), &b2.span_long()).unwrap();
        assert_eq!(inv, vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn mutated_parts_name_the_clause() {
        let b2 = FiniteRootSystem::parse("B2").unwrap();
        let s = PeriodicSet::from_predicate(2, 4, |_| true);
        let l = PeriodicSet::from_predicate(2, 4, |v| v[0].rem_euclid(4) == 0);
        assert_eq!(validate_parts(&b2, &s, &l), Err(StructureClause::KSPlusL));
        let no_zero = PeriodicSet::from_predicate(2, 2, |v| v.iter().any(|x| x.rem_euclid(2) == 1));
        assert_eq!(validate_parts(&b2, &no_zero, &l), Err(StructureClause::ZeroInS));
        let good_l = PeriodicSet::from_predicate(2, 2, |v| v[0].rem_euclid(2) == 0);
        assert_eq!(validate_parts(&b2, &PeriodicSet::from_predicate(2, 2, |_| true), &good_l), Ok(1));
    }

    #[test]
    fn root_strings() {
        let e = a1_ind0();
        let a = r(&[1], &[0, 0]);
        assert_eq!(e.root_string(&a, &a, 6).unwrap(), (2, 0));
        assert_eq!(e.root_string(&a, &r(&[-1], &[1, 0]), 6).unwrap(), (0, 2));
        let b2 = build_ears(XType::B, 2, 1, 0, Semilattice::lattice(0), Semilattice::lattice(1)).unwrap();
        let (d, u) = b2.root_string(&r(&[0, 1], &[0]), &r(&[1, 0], &[0]), 6).unwrap();
        assert_eq!(d - u, -2);
    }

    #[test]
    fn axioms_hold_for_sample_systems() {
        for code in ["A1", "B2", "G2", "C3"] {
            let f = FiniteRootSystem::parse(code).unwrap();
            for e in enumerate_configs(&f, 2) {
                let rep = verify_axioms(&e, 3);
                assert!(rep.all_passed(), "{} {:?}", code, rep.failures());
                assert!(rep.definitions_agree);
            }
        }
    }

    #[test]
    fn config_counts() {
        let count = |c: &str| (1..=3).map(|nu| enumerate_configs(&FiniteRootSystem::parse(c).unwrap(), nu).len()).sum::<usize>();
        assert_eq!(count("A1"), 8);
        assert_eq!(count("B2"), 21);
        assert_eq!(count("B3"), 15);
        assert_eq!(count("C3"), 15);
        assert_eq!(count("F4"), 9);
        assert_eq!(count("G2"), 9);
    }

    #[test]
    fn canonical_base_sizes() {
        for code in ["A1", "A2", "B2", "B3", "C3", "D4", "F4", "G2"] {
            let f = FiniteRootSystem::parse(code).unwrap();
            for nu in 1..=3 {
                for e in enumerate_configs(&f, nu) {
                    let p = e.canonical_base();
                    assert_eq!(p.len() as i64, e.index() + (e.rank() + nu) as i64, "{} {:?}", code, e.to_json());
                    assert!(p.iter().all(|x| e.is_nonisotropic_root(x)));
                }
            }
        }
    }

    #[test]
    fn subsystem_examples() {
        let e = a1_ind0();
        let p = e.canonical_base();
        let full = subsystem_rp(&e, &p, 3).unwrap();
        assert!(full.covers_inner_box);
        assert_eq!(full.nullity_in_box, 2);
        let aff = subsystem_rp(&e, &p[..2], 3).unwrap();
        assert_eq!(aff.nullity_in_box, 1);
        assert_eq!(aff.inferred_type.as_deref(), Some("A1"));
        let a2 = build_ears(XType::A, 2, 2, 0, Semilattice::lattice(0), Semilattice::lattice(2)).unwrap();
        let fin = subsystem_rp(&a2, &a2.simple_roots(), 3).unwrap();
        assert_eq!((fin.roots.len(), fin.nullity_in_box), (6, 0));
        assert_eq!(fin.inferred_type.as_deref(), Some("A2"));
    }

    #[test]
    fn connectivity_examples() {
        let e = a1_ind0();
        assert!(connectivity(&e, &[r(&[1], &[0, 0])]));
        assert!(connectivity(&e, &[r(&[1], &[0, 0]), r(&[-1], &[1, 0])]));
        let d4 = build_ears(XType::D, 4, 1, 0, Semilattice::lattice(0), Semilattice::lattice(1)).unwrap();
        let s = d4.simple_roots();
        assert!(!connectivity(&d4, &[s[0].clone(), s[3].clone()]));
    }

    #[test]
    fn parse_display_round_trip() {
        for r in [Root::new(vec![-1, 2], vec![0, 3]), Root::zero(2, 2), Root::new(vec![0, 1], vec![-1, 0])] {
            assert_eq!(Root::parse(&r.to_string(), 2, 2).unwrap(), r);
        }
        assert_eq!(Root::parse("s1 - a1", 1, 2).unwrap(), Root::new(vec![-1], vec![1, 0]));
        assert!(Root::parse("a3", 2, 2).is_err());
        assert!(Root::parse("2", 2, 2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let b3 = build_ears(XType::B, 3, 2, 1, Semilattice::lattice(1), Semilattice::lattice(1)).unwrap();
        let j = b3.to_json();
        assert_eq!(ExtAffineRootSystem::from_json(&j).unwrap(), b3);
        let a1 = serde_json::json!({"type": "A1", "nu": 2, "S": {"nu": 2, "supp": [[], [1], [2]]}});
        assert_eq!(ExtAffineRootSystem::from_json(&a1).unwrap(), a1_ind0());
        let bad = serde_json::json!({"type": "A1", "nu": 2, "S": {"nu": 2, "supp": [[1], [2]]}});
        assert!(matches!(ExtAffineRootSystem::from_json(&bad), Err(EarsError::BadSpec(_))));
    }
}
