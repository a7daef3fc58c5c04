//! Worked examples run end to end.

use serde::{Deserialize, Serialize};

use crate::earoot::{ExtAffineRootSystem, Root};
use crate::finroot::{FiniteRootSystem, XType};
use crate::lattice::Semilattice;
use crate::liepres::{a1_elliptic, bracket, letter_elem, GradedPresentation, Quotient, RelationOptions};
use crate::reflect::{classify, Removal};
use crate::weyl::HyperbolicSpace;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
}

struct Checks {
    passed: bool,
    details: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks { passed: true, details: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.details.push(format!("{} {what}", if ok { "ok  " } else { "FAIL" }));
        self.passed &= ok;
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(format!("     {}", what.into()));
    }

    fn finish(self, name: &str) -> ExampleReport {
        ExampleReport { name: name.into(), passed: self.passed, details: self.details }
    }
}

fn eps(iso: [i64; 3], sign: i64) -> Root {
    Root::new(vec![sign], iso.to_vec())
}

/// `A1`, nullity 3, `S = Λ`: `ε` together with `τ_J − ε` for all nonempty `J`.
pub fn a1_nullity3_system() -> (ExtAffineRootSystem, Vec<Root>) {
    let e = ExtAffineRootSystem::simply_laced(FiniteRootSystem::build(XType::A, 1).expect("A1"), Semilattice::lattice(3))
        .expect("valid");
    let mut p = vec![eps([0, 0, 0], 1)];
    for m in 1u32..8 {
        p.push(eps([(m & 1) as i64, (m >> 1 & 1) as i64, (m >> 2 & 1) as i64], -1));
    }
    (e, p)
}

/// The nine-reflection word for `w_(σ1+σ2+σ3−ε)`, leftmost factor first.
pub fn a1_nullity3_word() -> Vec<Root> {
    let mut w = a1_nullity3_word_variant();
    w[0] = eps([1, 1, 0], -1);
    w
}

/// The same word with `σ1+σ3−ε` as its first factor. It does not equal
/// `w_(σ1+σ2+σ3−ε)`, not even on `V`.
pub fn a1_nullity3_word_variant() -> Vec<Root> {
    vec![
        eps([1, 0, 1], -1),
        eps([1, 0, 0], -1),
        eps([1, 0, 1], -1),
        eps([0, 0, 0], 1),
        eps([0, 0, 1], -1),
        eps([0, 0, 0], 1),
        eps([0, 1, 0], -1),
        eps([0, 1, 1], -1),
        eps([0, 0, 0], 1),
    ]
}

pub fn redundant_reflection(maxlen: usize) -> ExampleReport {
    let mut c = Checks::new();
    let (e, p) = a1_nullity3_system();
    let space = HyperbolicSpace::new(&e);
    let target = eps([1, 1, 1], -1);
    let word = a1_nullity3_word();
    let lhs = space.word_eval(&word).expect("roots");
    let rhs = space.reflection(&target).expect("root");
    c.check(lhs == rhs, format!("word of {} reflections equals w_({target}) as a {}x{} matrix", word.len(), rhs.dim(), rhs.dim()));
    c.check(!word.contains(&target), "word avoids the target reflection");
    let variant = space.word_eval(&a1_nullity3_word_variant()).expect("roots");
    c.note(format!("with first factor w_({}) the product is {}the target", a1_nullity3_word_variant()[0], if variant == rhs { "" } else { "not " }));
    match classify(&e, &p, maxlen) {
        Ok(cl) => {
            c.check(cl.reflectable_base, "P is a reflectable base (M_r = Yes)");
            c.check(cl.m_m.is_no(), format!("M_m = {}", cl.m_m.label()));
            let rem = cl.removals.iter().find(|(a, _)| *a == target).map(|(_, r)| r.clone());
            match rem {
                Some(Removal::CertifiedRedundant(w)) => {
                    let found = space.word_eval(&w).map(|m| m == rhs).unwrap_or(false);
                    c.check(found, format!("search witness of length {} verified", w.len()));
                }
                other => c.check(false, format!("removal of {target}: {other:?}")),
            }
            c.check(cl.m_c.is_no(), format!("M_c = {}", cl.m_c.label()));
        }
        Err(err) => c.check(false, err.to_string()),
    }
    c.finish("a1-nullity3-redundant-reflection")
}

/// `A2`, nullity 2, `S = Λ`, with a five-element reflectable base.
pub fn a2_five_element_base() -> (ExtAffineRootSystem, Vec<Root>) {
    let e = ExtAffineRootSystem::simply_laced(FiniteRootSystem::build(XType::A, 2).expect("A2"), Semilattice::lattice(2))
        .expect("valid");
    let r = |f: [i64; 2], i: [i64; 2]| Root::new(f.to_vec(), i.to_vec());
    let p = vec![r([1, 0], [0, 0]), r([0, 1], [0, 0]), r([1, 0], [2, 0]), r([0, 1], [3, 0]), r([0, 1], [0, 1])];
    (e, p)
}

pub fn large_base(maxlen: usize) -> ExampleReport {
    let mut c = Checks::new();
    let (e, p) = a2_five_element_base();
    c.check(e.canonical_base().len() == 4, format!("canonical base has {} elements", e.canonical_base().len()));
    match classify(&e, &p, maxlen) {
        Ok(cl) => {
            c.check(cl.reflectable_base, format!("{}-element set is a reflectable base", p.len()));
            for (a, r) in &cl.removals {
                let ok = matches!(r, Removal::CertifiedNecessary(why) if why.starts_with("lattice"));
                c.check(ok, format!("removing {a}: {r:?}"));
            }
            c.check(cl.m_m.is_yes(), format!("M_m = {}", cl.m_m.label()));
            c.check(cl.m_c.is_no(), format!("M_c = {}", cl.m_c.label()));
        }
        Err(err) => c.check(false, err.to_string()),
    }
    c.finish("a2-five-element-base")
}

/// `[[X_(σ1−α), X_α], X_(σ2−α)]` in `A1`, nullity 2, index 1.
pub fn root_space_from_three(maxlen: usize) -> ExampleReport {
    let mut c = Checks::new();
    let e = a1_elliptic(1);
    let base = e.canonical_base();
    c.note(format!("P = {{{}}}", base.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")));
    let pres = match GradedPresentation::new(&e, &base, RelationOptions::default()) {
        Ok(p) => p,
        Err(err) => {
            c.check(false, err.to_string());
            return c.finish("a1-index1-root-space");
        }
    };
    let q = match Quotient::compute(&pres, maxlen.max(3)) {
        Ok(q) => q,
        Err(err) => {
            c.check(false, err.to_string());
            return c.finish("a1-index1-root-space");
        }
    };
    let ix = |r: Root| pres.letter_of(&r).expect("letter");
    let a = ix(Root::new(vec![1], vec![0, 0]));
    let y = ix(Root::new(vec![-1], vec![1, 0]));
    let z = ix(Root::new(vec![-1], vec![0, 1]));
    let v = bracket(&bracket(&letter_elem(y), &letter_elem(a)), &letter_elem(z));
    let w = vec![-1, 1, 1];
    let nf = q.normal_form(&w, v);
    c.check(!nf.is_empty(), "bracket of the three root vectors is nonzero at weight s1+s2-a1");
    if let Ok(d) = q.dim(&w) {
        c.note(format!("truncated quotient has dim {d} at s1+s2-a1 up to length {}", q.maxlen()));
    }
    c.finish("a1-index1-root-space")
}

pub fn all(maxlen: usize) -> Vec<ExampleReport> {
    vec![redundant_reflection(maxlen), large_base(maxlen), root_space_from_three(maxlen.min(5))]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_pass() {
        for r in all(10) {
            assert!(r.passed, "{}: {:#?}", r.name, r.details);
        }
    }
}
