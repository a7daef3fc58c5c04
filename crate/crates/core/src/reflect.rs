//! Recognition of reflectable sets and bases, Weyl-group generation verdicts
//! with certificates, cardinality formulas and finite-subsystem extraction.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::earoot::{connectivity, ExtAffineRootSystem, Root};
use crate::finroot::{finite_reflectable_oracle, FiniteVerdict, XType};
use crate::lattice::{rank_mod_p, BasisVerdict, IntVector, QuotientMap, Sublattice};
use crate::weyl::{bounded_word_search, parity_hom, HyperbolicSpace, ParityKind, SearchResult, WeylError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReflectError {
    #[error("{0} is not a nonisotropic root of the system")]
    NotInSystem(String),
    #[error("cardinality is not an invariant for type {0}")]
    TypeNotCovered(String),
    #[error("no subset projects onto a base of the finite root system")]
    NoFiniteBase,
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// One condition of the recognition theorems, evaluated in both its
/// reflectable-set form (cover, spanning) and base form (partition, basis).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub set_ok: bool,
    pub base_ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recognition {
    pub generates_lattice: bool,
    pub reflectable_set: bool,
    pub reflectable_base: bool,
    pub clauses: Vec<Clause>,
}

fn check_members(ears: &ExtAffineRootSystem, p: &[Root]) -> Result<Vec<Root>, ReflectError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in p {
        if ears.check_dims(r).is_err() || !ears.is_nonisotropic_root(r) {
            return Err(ReflectError::NotInSystem(r.to_string()));
        }
        if seen.insert(r.clone()) {
            out.push(r.clone());
        }
    }
    Ok(out)
}

pub fn generates_lattice(ears: &ExtAffineRootSystem, p: &[Root]) -> bool {
    let gens: Vec<IntVector> = p.iter().map(Root::coords).collect();
    Sublattice::span(&gens, ears.dim()).map(|s| s == ears.span_r()).unwrap_or(false)
}

/// Cover / partition of the classes in `reps` by cosets `α + m`, `α ∈ pi`.
fn cover_clause(name: &str, pi: &[Root], reps: &[Root], m: &Sublattice) -> Clause {
    let mut uncovered = None;
    let mut overlap = None;
    for r in reps {
        let hits = pi.iter().filter(|a| m.contains(&r.sub(a).coords())).count();
        if hits == 0 && uncovered.is_none() {
            uncovered = Some(r.to_string());
        }
        if hits > 1 && overlap.is_none() {
            overlap = Some(r.to_string());
        }
    }
    let detail = match (&uncovered, &overlap) {
        (Some(u), _) => format!("class of {u} not covered"),
        (None, Some(o)) => format!("class of {o} covered more than once"),
        (None, None) => format!("{} classes partitioned", reps.len()),
    };
    Clause { name: name.into(), set_ok: uncovered.is_none(), base_ok: uncovered.is_none() && overlap.is_none(), detail }
}

/// Spanning / basis test for the images of `pi` in the elementary `p`-group `a / b`.
fn basis_clause(name: &str, pi: &[Root], a: &Sublattice, b: &Sublattice, p: u32) -> Clause {
    let vecs: Vec<IntVector> = pi.iter().map(Root::coords).collect();
    let qm = match QuotientMap::new(a, b) {
        Ok(q) => q,
        Err(e) => return Clause { name: name.into(), set_ok: false, base_ok: false, detail: e.to_string() },
    };
    let dim = qm.divisors().len();
    let images: Vec<Vec<u32>> = vecs
        .iter()
        .map(|v| {
            qm.image(v)
                .map(|im| im.iter().map(|x| u32::try_from(x).expect("reduced residue")).collect())
                .unwrap_or_default()
        })
        .collect();
    let rank = rank_mod_p(images, p);
    let verdict = crate::lattice::zp_basis_verdict(&vecs, a, b, p);
    let base_ok = matches!(verdict, Ok(BasisVerdict::IsBasis));
    Clause {
        name: name.into(),
        set_ok: rank == dim,
        base_ok,
        detail: format!("images span rank {rank} of {dim} over Z_{p}; verdict {verdict:?}"),
    }
}

fn split_lengths(ears: &ExtAffineRootSystem, p: &[Root]) -> (Vec<Root>, Vec<Root>) {
    p.iter().cloned().partition(|r| ears.is_short(r))
}

fn class_reps(ears: &ExtAffineRootSystem, short: bool) -> Vec<Root> {
    ears.nonisotropic_reps().into_iter().filter(|r| ears.is_short(r) == short).collect()
}

pub fn recognize(ears: &ExtAffineRootSystem, p: &[Root]) -> Result<Recognition, ReflectError> {
    let p = check_members(ears, p)?;
    let gen = generates_lattice(ears, &p);
    let (psh, plg) = split_lengths(ears, &p);
    let l = ears.rank();
    let k = ears.k() as u32;
    let mut clauses = Vec::new();
    match ears.finite().xtype() {
        XType::A if l == 1 => {
            clauses.push(cover_clause("R^x = U (a + 2<R>) ∩ R", &p, &ears.nonisotropic_reps(), &ears.span_r().scaled(2)));
        }
        XType::A | XType::D | XType::E => {
            let target = ears.span_r();
            let mut redundant = None;
            for i in 0..p.len() {
                let rest: Vec<IntVector> = p.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r.coords()).collect();
                if Sublattice::span(&rest, ears.dim()).map(|s| s == target).unwrap_or(false) {
                    redundant = Some(p[i].to_string());
                    break;
                }
            }
            clauses.push(Clause {
                name: "minimal generating set of <R>".into(),
                set_ok: gen,
                base_ok: gen && redundant.is_none(),
                detail: redundant.map_or("no element can be dropped".into(), |r| format!("{r} can be dropped")),
            });
        }
        XType::B if l == 2 => {
            clauses.push(cover_clause("R_sh = U (a + <R_lg>) ∩ R_sh", &psh, &class_reps(ears, true), &ears.span_long()));
            clauses.push(cover_clause("R_lg = U (a + 2<R_sh>) ∩ R_lg", &plg, &class_reps(ears, false), &ears.span_short().scaled(2)));
        }
        XType::B => {
            clauses.push(cover_clause("R_sh = U (a + <R_lg>) ∩ R_sh", &psh, &class_reps(ears, true), &ears.span_long()));
            clauses.push(basis_clause("P_lg basis of <R_lg>/2<R_sh>", &plg, &ears.span_long(), &ears.span_short().scaled(2), 2));
        }
        XType::C => {
            clauses.push(cover_clause("R_lg = U (a + 2<R_sh>) ∩ R_lg", &plg, &class_reps(ears, false), &ears.span_short().scaled(2)));
            clauses.push(basis_clause("P_sh basis of <R_sh>/<R_lg>", &psh, &ears.span_short(), &ears.span_long(), 2));
        }
        XType::F | XType::G => {
            clauses.push(basis_clause(&format!("P_sh basis of <R_sh>/<R_lg> over Z_{k}"), &psh, &ears.span_short(), &ears.span_long(), k));
            clauses.push(basis_clause(
                &format!("P_lg basis of <R_lg>/{k}<R_sh> over Z_{k}"),
                &plg,
                &ears.span_long(),
                &ears.span_short().scaled(k as i64),
                k,
            ));
        }
    }
    let reflectable_set = gen && clauses.iter().all(|c| c.set_ok);
    let reflectable_base = gen && clauses.iter().all(|c| c.base_ok);
    Ok(Recognition { generates_lattice: gen, reflectable_set, reflectable_base, clauses })
}

pub fn is_reflectable_set(ears: &ExtAffineRootSystem, p: &[Root]) -> Result<bool, ReflectError> {
    Ok(recognize(ears, p)?.reflectable_set)
}

pub fn is_reflectable_base(ears: &ExtAffineRootSystem, p: &[Root]) -> Result<bool, ReflectError> {
    Ok(recognize(ears, p)?.reflectable_base)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cardinality {
    pub total: usize,
    pub short: usize,
    pub long: usize,
}

/// Cardinality of every reflectable base, for the types where it is an invariant.
pub fn expected_cardinality(ears: &ExtAffineRootSystem) -> Result<Cardinality, ReflectError> {
    let l = ears.rank();
    let (nu, t) = (ears.nu(), ears.t());
    let (i1, i2) = (ears.s1().index(), ears.s2().index());
    let (short, long) = match ears.finite().xtype() {
        XType::A if l == 1 => (1 + i2, 0),
        XType::B if l == 2 => (1 + i1, 1 + i2),
        XType::B => (1 + i1, (l - 1) + (nu - t)),
        XType::C => ((l - 1) + t, 1 + i2),
        XType::F => (2 + t, 2 + (nu - t)),
        XType::G => (1 + t, 1 + (nu - t)),
        _ => return Err(ReflectError::TypeNotCovered(ears.type_code())),
    };
    Ok(Cardinality { total: short + long, short, long })
}

pub fn cardinality_of(ears: &ExtAffineRootSystem, p: &[Root]) -> Cardinality {
    let short = p.iter().filter(|r| ears.is_short(r)).count();
    Cardinality { total: p.len(), short, long: p.len() - short }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Removal {
    CertifiedNecessary(String),
    CertifiedRedundant(Vec<Root>),
    Unknown(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Yes(String),
    No(String),
    Unknown(String),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "Yes",
            Verdict::No(_) => "No",
            Verdict::Unknown(_) => "Unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub system: String,
    pub set: Vec<Root>,
    pub cardinality: Cardinality,
    pub connected: bool,
    pub recognition: Recognition,
    pub reflectable_set: bool,
    pub reflectable_base: bool,
    pub generates_weyl: Verdict,
    pub removals: Vec<(Root, Removal)>,
    pub m_m: Verdict,
    pub m_c: Verdict,
}

/// Whether `W` has the presentation by conjugation, by the sufficient conditions known.
fn presentation_by_conjugation(ears: &ExtAffineRootSystem) -> bool {
    ears.nu() <= 2
        || (ears.finite().simply_laced() && ears.rank() > 1)
        || matches!(ears.finite().xtype(), XType::F | XType::G)
}

/// `ℤ₂`-valued homomorphisms of `W` usable as certificates, with their names.
fn parity_certificates<'a>(ears: &'a ExtAffineRootSystem, p: &[Root]) -> Vec<(String, Box<dyn Fn(&Root) -> u8 + 'a>)> {
    let mut out: Vec<(String, Box<dyn Fn(&Root) -> u8 + 'a>)> = Vec::new();
    if !ears.finite().simply_laced() {
        out.push(("Ψ (short reflections)".into(), Box::new(|r: &Root| ears.is_short(r) as u8)));
        out.push(("det·Ψ (long reflections)".into(), Box::new(|r: &Root| ears.is_long(r) as u8)));
    }
    if ears.finite().xtype() == XType::B {
        for i in 1..=ears.t() {
            out.push((
                format!("ψ_{i}"),
                Box::new(move |r: &Root| parity_hom(ears, &ParityKind::ShortCoset(i), r).unwrap_or(0)),
            ));
        }
    }
    let orbit_ok = ears.is_a1() || (ears.finite().xtype() == XType::B && ears.rank() == 2);
    if orbit_ok && presentation_by_conjugation(ears) {
        let mut betas: Vec<Root> = p.to_vec();
        betas.extend(ears.canonical_base());
        for b in betas {
            let name = format!("Φ_({b})");
            out.push((name, Box::new(move |r: &Root| parity_hom(ears, &ParityKind::Orbit(b.clone()), r).unwrap_or(0))));
        }
    }
    out
}

/// Decides `W_Q ∋ w_target` as far as certificates allow.
fn membership(
    ears: &ExtAffineRootSystem,
    space: &HyperbolicSpace,
    q: &[Root],
    target: &Root,
    maxlen: usize,
) -> Result<Removal, ReflectError> {
    if q.contains(target) {
        return Ok(Removal::CertifiedRedundant(vec![target.clone()]));
    }
    for (name, f) in parity_certificates(ears, q) {
        if f(target) == 1 && q.iter().all(|r| f(r) == 0) {
            return Ok(Removal::CertifiedNecessary(format!("parity {name}")));
        }
    }
    let t = space.reflection(target)?;
    match bounded_word_search(space, &t, q, maxlen)? {
        SearchResult::Found(w) => {
            debug_assert_eq!(space.word_eval(&w)?, t);
            Ok(Removal::CertifiedRedundant(w))
        }
        SearchResult::NotFound { exhausted: true, explored, .. } => {
            Ok(Removal::CertifiedNecessary(format!("generated subgroup enumerated ({explored} elements)")))
        }
        SearchResult::NotFound { maxlen, .. } => Ok(Removal::Unknown(format!("no word up to length {maxlen}"))),
    }
}

pub fn classify(ears: &ExtAffineRootSystem, p: &[Root], maxlen: usize) -> Result<Classification, ReflectError> {
    let p = check_members(ears, p)?;
    let space = HyperbolicSpace::new(ears);
    let rec = recognize(ears, &p)?;
    let connected = connectivity(ears, &p);
    let card = cardinality_of(ears, &p);
    let dim = ears.dim();

    let generates_weyl = if rec.reflectable_set {
        Verdict::Yes("reflectable set".into())
    } else if !rec.generates_lattice {
        Verdict::No("lattice: <P> != <R>".into())
    } else if !connected {
        Verdict::No("P is not connected".into())
    } else {
        let mut verdict = Verdict::Yes("every canonical reflection is a word in P".into());
        for b in ears.canonical_base() {
            match membership(ears, &space, &p, &b, maxlen)? {
                Removal::CertifiedRedundant(_) => {}
                Removal::CertifiedNecessary(why) => {
                    verdict = Verdict::No(format!("w_({b}) not in W_P: {why}"));
                    break;
                }
                Removal::Unknown(why) => verdict = Verdict::Unknown(format!("w_({b}): {why}")),
            }
        }
        verdict
    };

    let mut removals = Vec::new();
    for (i, a) in p.iter().enumerate() {
        let q: Vec<Root> = p.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, r)| r.clone()).collect();
        let r = if !generates_lattice(ears, &q) {
            let gens: Vec<IntVector> = q.iter().map(Root::coords).collect();
            let span = Sublattice::span(&gens, dim).expect("dimensions agree");
            let idx = span.index_in_full().map_or("infinite".to_string(), |x| x.to_string());
            Removal::CertifiedNecessary(format!("lattice: <P \\ {{{a}}}> has rank {} and index {idx}", span.rank()))
        } else if !connectivity(ears, &q) {
            Removal::CertifiedNecessary("P without it is not connected".into())
        } else {
            membership(ears, &space, &q, a, maxlen)?
        };
        removals.push((a.clone(), r));
    }

    let shortcut = if rec.reflectable_base {
        if card.total == dim {
            Some("reflectable base with |P| = l + nu")
        } else if ears.finite().simply_laced() && ears.rank() > 1 {
            Some("simply laced rank > 1: M_r = M_rm")
        } else if presentation_by_conjugation(ears) {
            Some("presentation by conjugation: M_r = M_rm")
        } else if ears.index() == 0 {
            Some("ind(R) = 0: M_r = M_rm")
        } else {
            None
        }
    } else {
        None
    };

    let m_m = if let Verdict::No(why) = &generates_weyl {
        Verdict::No(format!("W_P != W: {why}"))
    } else if let Some((a, Removal::CertifiedRedundant(w))) = removals.iter().find(|(_, r)| matches!(r, Removal::CertifiedRedundant(_))) {
        let word: Vec<String> = w.iter().map(|r| r.to_string()).collect();
        Verdict::No(format!("w_({a}) = {}", word.join(" ")))
    } else if generates_weyl.is_yes() && removals.iter().all(|(_, r)| matches!(r, Removal::CertifiedNecessary(_))) {
        Verdict::Yes("every removal certified necessary".into())
    } else if let Some(s) = shortcut {
        Verdict::Yes(s.into())
    } else {
        Verdict::Unknown("some removal undecided".into())
    };

    let c_equals_dim = ears.index() == 0 || (ears.finite().simply_laced() && ears.rank() > 1) || matches!(ears.finite().xtype(), XType::F | XType::G);
    let m_c = if m_m.is_no() {
        Verdict::No("not in M_m".into())
    } else if card.total < dim {
        Verdict::No("|P| < l + nu".into())
    } else if generates_weyl.is_yes() && card.total == dim {
        Verdict::Yes("generates W with |P| = l + nu".into())
    } else if c_equals_dim && card.total > dim {
        Verdict::No(format!("|P| = {} > c = l + nu = {dim}", card.total))
    } else {
        Verdict::Unknown("c is not determined".into())
    };

    Ok(Classification {
        system: ears.type_code(),
        set: p,
        cardinality: card,
        connected,
        reflectable_set: rec.reflectable_set,
        reflectable_base: rec.reflectable_base,
        recognition: rec,
        generates_weyl,
        removals,
        m_m,
        m_c,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Minimality {
    Minimal(String),
    Unknown,
}

pub fn minimality_report(ears: &ExtAffineRootSystem) -> Minimality {
    let x = ears.finite().xtype();
    if ears.nu() <= 2 {
        Minimality::Minimal("nullity <= 2".into())
    } else if ears.finite().simply_laced() && ears.rank() > 1 {
        Minimality::Minimal("simply laced rank > 1".into())
    } else if matches!(x, XType::F | XType::G) {
        Minimality::Minimal("type F4 or G2".into())
    } else if ears.index() == 0 {
        Minimality::Minimal("ind(R) = 0".into())
    } else {
        Minimality::Unknown
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteExtraction {
    pub base: Vec<Root>,
    pub closure: Vec<Root>,
}

/// A subset of `P` projecting onto a base of the finite root system, with its
/// orbit closure.
pub fn extract_finite(ears: &ExtAffineRootSystem, p: &[Root]) -> Result<FiniteExtraction, ReflectError> {
    let p = check_members(ears, p)?;
    if !is_reflectable_set(ears, &p)? {
        return Err(ReflectError::NoFiniteBase);
    }
    let l = ears.rank();
    let frs = ears.finite();
    let mut idx: Vec<usize> = (0..l).collect();
    loop {
        let proj: Vec<IntVector> = idx.iter().map(|&i| p[i].fin.clone()).collect();
        let distinct = proj.iter().collect::<BTreeSet<_>>().len() == l;
        if distinct && finite_reflectable_oracle(frs, &proj) == FiniteVerdict::Base {
            let base: Vec<Root> = idx.iter().map(|&i| p[i].clone()).collect();
            let mut seen: BTreeSet<Root> = base.iter().cloned().collect();
            let mut stack: Vec<Root> = base.clone();
            while let Some(b) = stack.pop() {
                for a in &base {
                    let img = ears.reflect(a, &b);
                    if seen.insert(img.clone()) {
                        stack.push(img);
                    }
                }
            }
            return Ok(FiniteExtraction { base, closure: seen.into_iter().collect() });
        }
        // next combination of l indices out of |P|
        let n = p.len();
        let mut i = l;
        loop {
            if i == 0 {
                return Err(ReflectError::NoFiniteBase);
            }
            i -= 1;
            if idx[i] < n - l + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..l {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::earoot::{build_ears, enumerate_configs};
    use crate::finroot::{finite_min_gen_oracle, FiniteRootSystem};
    use crate::lattice::Semilattice;

    fn r(fin: &[i64], iso: &[i64]) -> Root {
        Root::new(fin.to_vec(), iso.to_vec())
    }

    fn a1_ind0() -> ExtAffineRootSystem {
        let s = Semilattice::from_index_sets(2, &[vec![], vec![1], vec![2]]).unwrap();
        ExtAffineRootSystem::simply_laced(FiniteRootSystem::parse("A1").unwrap(), s).unwrap()
    }

    #[test]
    fn a1_examples() {
        let e = a1_ind0();
        let p = e.canonical_base();
        assert!(is_reflectable_base(&e, &p).unwrap());
        assert!(!is_reflectable_set(&e, &p[..2]).unwrap());
        let c = classify(&e, &p, 6).unwrap();
        assert!(c.m_c.is_yes());
        assert!(c.m_m.is_yes());
        assert_eq!(expected_cardinality(&e).unwrap(), Cardinality { total: 3, short: 3, long: 0 });
        assert!(matches!(is_reflectable_set(&e, &[r(&[1], &[1, 1])]), Err(ReflectError::NotInSystem(_))));
    }

    #[test]
    fn cardinalities() {
        let f4 = build_ears(XType::F, 4, 2, 1, Semilattice::lattice(1), Semilattice::lattice(1)).unwrap();
        assert_eq!(expected_cardinality(&f4).unwrap(), Cardinality { total: 6, short: 3, long: 3 });
        let a2 = build_ears(XType::A, 2, 2, 0, Semilattice::lattice(0), Semilattice::lattice(2)).unwrap();
        assert!(matches!(expected_cardinality(&a2), Err(ReflectError::TypeNotCovered(_))));
        let b3 = build_ears(XType::B, 3, 2, 1, Semilattice::lattice(1), Semilattice::lattice(1)).unwrap();
        assert_eq!(expected_cardinality(&b3).unwrap().total, 5);
    }

    #[test]
    fn canonical_bases_match_table() {
        for code in ["A1", "B2", "B3", "C3", "F4", "G2"] {
            let f = FiniteRootSystem::parse(code).unwrap();
            for nu in 1..=3 {
                for e in enumerate_configs(&f, nu) {
                    let p = e.canonical_base();
                    let rec = recognize(&e, &p).unwrap();
                    assert!(rec.reflectable_base, "{code} {} {:?}", e.to_json(), rec.clauses);
                    assert_eq!(cardinality_of(&e, &p), expected_cardinality(&e).unwrap());
                    for c in &rec.clauses {
                        assert!(c.set_ok);
                    }
                }
            }
        }
    }

    #[test]
    fn dropping_short_or_long_breaks_generation() {
        for code in ["B2", "B3", "C3", "F4", "G2"] {
            let f = FiniteRootSystem::parse(code).unwrap();
            for e in enumerate_configs(&f, 2) {
                let p = e.canonical_base();
                let (sh, lg) = split_lengths(&e, &p);
                assert!(!sh.is_empty() && !lg.is_empty());
                assert!(!is_reflectable_set(&e, &sh).unwrap());
                assert!(!is_reflectable_set(&e, &lg).unwrap());
            }
        }
    }

    #[test]
    fn finite_agrees_with_oracles() {
        for code in ["A1", "A2", "B2", "G2"] {
            let f = FiniteRootSystem::parse(code).unwrap();
            let e = ExtAffineRootSystem::finite_only(f.clone());
            let roots: Vec<Root> = f.roots().iter().map(|x| Root::new(x.clone(), vec![])).collect();
            let l = f.rank();
            let n = roots.len();
            for mask in 1u32..(1 << n) {
                if mask.count_ones() as usize > l + 1 {
                    continue;
                }
                let p: Vec<Root> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| roots[i].clone()).collect();
                let fins: Vec<IntVector> = p.iter().map(|x| x.fin.clone()).collect();
                let c = classify(&e, &p, 12).unwrap();
                let oracle = finite_reflectable_oracle(&f, &fins);
                assert_eq!(c.reflectable_base, oracle == FiniteVerdict::Base, "{code} {fins:?}");
                assert_eq!(c.reflectable_set, matches!(oracle, FiniteVerdict::Base | FiniteVerdict::SetNotBase));
                let mg = finite_min_gen_oracle(&f, &fins);
                assert!(!matches!(c.m_m, Verdict::Unknown(_)), "{code} {fins:?} {:?}", c.m_m);
                assert_eq!(c.m_m.is_yes(), mg, "{code} {fins:?}");
                assert_eq!(c.m_c.is_yes(), mg && p.len() == l);
            }
        }
    }

    #[test]
    fn minimality_clauses() {
        let e8 = build_ears(XType::E, 8, 4, 0, Semilattice::lattice(0), Semilattice::lattice(4)).unwrap();
        assert_eq!(minimality_report(&e8), Minimality::Minimal("simply laced rank > 1".into()));
        let a1 = a1_ind0();
        assert_eq!(minimality_report(&a1), Minimality::Minimal("nullity <= 2".into()));
        let s1 = Semilattice::from_index_sets(2, &[vec![], vec![1], vec![2], vec![1, 2]]).unwrap();
        let b3 = build_ears(XType::B, 3, 3, 2, s1, Semilattice::lattice(1)).unwrap();
        assert_eq!(b3.index(), 1);
        assert_eq!(minimality_report(&b3), Minimality::Unknown);
    }

    #[test]
    fn finite_extraction() {
        let a2 = build_ears(XType::A, 2, 2, 0, Semilattice::lattice(0), Semilattice::lattice(2)).unwrap();
        let ex = extract_finite(&a2, &a2.canonical_base()).unwrap();
        assert_eq!(ex.base, a2.simple_roots());
        assert_eq!(ex.closure.len(), 6);
        let b2 = build_ears(XType::B, 2, 2, 1, Semilattice::lattice(1), Semilattice::lattice(1)).unwrap();
        assert_eq!(extract_finite(&b2, &b2.canonical_base()).unwrap().base, b2.simple_roots());
        let a1 = ExtAffineRootSystem::simply_laced(FiniteRootSystem::parse("A1").unwrap(), Semilattice::lattice(2)).unwrap();
        let ex = extract_finite(&a1, &a1.canonical_base()).unwrap();
        assert_eq!(ex.base, vec![r(&[1], &[0, 0])]);
        assert!(matches!(extract_finite(&a1, &a1.canonical_base()[..2]), Err(ReflectError::NoFiniteBase)));
    }

    #[test]
    fn a2_base_with_five_elements() {
        let a2 = build_ears(XType::A, 2, 2, 0, Semilattice::lattice(0), Semilattice::lattice(2)).unwrap();
        let p = vec![r(&[1, 0], &[0, 0]), r(&[0, 1], &[0, 0]), r(&[1, 0], &[2, 0]), r(&[0, 1], &[3, 0]), r(&[0, 1], &[0, 1])];
        let c = classify(&a2, &p, 4).unwrap();
        assert!(c.reflectable_base);
        assert!(c.removals.iter().all(|(_, x)| matches!(x, Removal::CertifiedNecessary(_))));
        assert!(c.m_m.is_yes());
        assert!(c.m_c.is_no());
    }

    #[test]
    fn a1_nullity_three_redundant_reflection() {
        let e = ExtAffineRootSystem::simply_laced(FiniteRootSystem::parse("A1").unwrap(), Semilattice::lattice(3)).unwrap();
        let mut p = vec![r(&[1], &[0, 0, 0])];
        for m in 1u32..8 {
            let iso: Vec<i64> = (0..3).map(|i| (m >> i & 1) as i64).collect();
            p.push(r(&[-1], &iso));
        }
        assert!(is_reflectable_base(&e, &p).unwrap());
        let c = classify(&e, &p, 10).unwrap();
        assert!(c.m_m.is_no(), "{:?}", c.m_m);
        let space = HyperbolicSpace::new(&e);
        let (a, w) = c
            .removals
            .iter()
            .find_map(|(a, x)| match x {
                Removal::CertifiedRedundant(w) => Some((a, w)),
                _ => None,
            })
            .unwrap();
        assert!(!w.contains(a));
        assert_eq!(space.word_eval(w).unwrap(), space.reflection(a).unwrap());
    }
}
