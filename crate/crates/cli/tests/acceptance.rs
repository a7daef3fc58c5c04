//! One PASS/FAIL line per acceptance criterion. Exits nonzero only when a
//! criterion outside `KNOWN_GAPS` fails.

use std::collections::HashSet;
use std::time::Instant;

use ears_cli::sample;
use ears_core::earoot::{build_ears, enumerate_configs, validate_parts, verify_axioms, ExtAffineRootSystem, PeriodicSet, Root, StructureClause};
use ears_core::finroot::{finite_min_gen_oracle, finite_reflectable_oracle, FiniteRootSystem, FiniteVerdict, XType};
use ears_core::lattice::{IntVector, Semilattice, SemilatticeError};
use ears_core::liepres::{a1_elliptic, GradedPresentation, LieError, Mic1Outcome, Quotient, RelationOptions};
use ears_core::reflect::{classify, Removal, Verdict};
use ears_core::tables::{self, Filter, TableKind};
use ears_core::weyl::{bfs_elements, c_pair, k_of, parity_word, HyperbolicSpace, ParityKind};
use ears_core::worked;

/// Criteria whose failure is expected: the reference nine-reflection word is
/// not the stated reflection, and the extra `A1` relation holds without both
/// sides vanishing.
const KNOWN_GAPS: [u8; 2] = [2, 7];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn run(n: u8, limit_s: f64, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let secs = start.elapsed().as_secs_f64();
    let in_time = secs < limit_s;
    let pass = o.pass && in_time;
    let timing = format!("{secs:.1}s of {limit_s:.0}s");
    println!("{} {n}: {} [{timing}{}]", if pass { "PASS" } else { "FAIL" }, o.detail, if in_time { "" } else { ", too slow" });
    pass
}

fn lattice(n: usize) -> Semilattice {
    Semilattice::lattice(n)
}

fn table2() -> Outcome {
    let r = tables::check(TableKind::Table2, &Filter::default());
    let mut bad = r.failures.clone();
    bad.extend(r.mismatches.iter().cloned());
    for row in &r.rows {
        let want = row["ind_R"].as_i64().unwrap_or(-1) + row["nu"].as_i64().unwrap_or(-1) + rank_of(row["type"].as_str().unwrap_or("?"));
        if row["total"].as_i64() != Some(want) {
            bad.push(format!("{row}: |P| != ind(R)+l+nu"));
        }
    }
    let types: HashSet<&str> = r.rows.iter().filter_map(|x| x["type"].as_str()).collect();
    let detail = format!(
        "{} configurations over {} types, nu 1..3 (stated bound 40); canonical bases recognised, (|P|,|P_sh|,|P_lg|) exact; {} problems",
        r.rows.len(),
        types.len(),
        bad.len()
    );
    outcome(bad.is_empty() && types.len() == 6, if bad.is_empty() { detail } else { format!("{detail}: {}", bad[0]) })
}

fn rank_of(code: &str) -> i64 {
    code[1..].parse().unwrap_or(-100)
}

fn nine_reflections() -> Outcome {
    let (e, p) = worked::a1_nullity3_system();
    let space = HyperbolicSpace::new(&e);
    let target = Root::new(vec![-1], vec![1, 1, 1]);
    let rhs = space.reflection(&target).expect("root");
    let reference = space.word_eval(&worked::a1_nullity3_word_variant()).expect("roots") == rhs;
    let corrected = space.word_eval(&worked::a1_nullity3_word()).expect("roots") == rhs;
    let cl = classify(&e, &p, 10).expect("classifies");
    let witness = cl.removals.iter().find(|(a, _)| *a == target).and_then(|(_, r)| match r {
        Removal::CertifiedRedundant(w) => Some(w.clone()),
        _ => None,
    });
    let witness_ok = witness.as_ref().is_some_and(|w| space.word_eval(w).map(|m| m == rhs).unwrap_or(false));
    let detail = format!(
        "reference word equals w_({target}) as 7x7 matrix: {reference}; with first factor w_(-a1+s1+s2): {corrected}; M_r {}, M_m {}, witness of length {} verified {witness_ok}",
        if cl.reflectable_base { "Yes" } else { "No" },
        cl.m_m.label(),
        witness.as_ref().map_or(0, Vec::len)
    );
    outcome(reference && cl.reflectable_base && cl.m_m.is_no() && witness_ok, detail)
}

fn five_element_base() -> Outcome {
    let (e, p) = worked::a2_five_element_base();
    let cl = classify(&e, &p, 10).expect("classifies");
    let lattice_certs = cl
        .removals
        .iter()
        .filter(|(_, r)| matches!(r, Removal::CertifiedNecessary(w) if w.starts_with("lattice")))
        .count();
    let canon = e.canonical_base().len();
    let pass = cl.reflectable_base && canon == 4 && p.len() == 5 && lattice_certs == 5 && cl.m_m.is_yes() && cl.m_c.is_no();
    outcome(
        pass,
        format!(
            "5-element set is a reflectable base: {}; canonical base has {canon}; {lattice_certs}/5 removals carry lattice certificates; M_m {}, M_c {}",
            cl.reflectable_base,
            cl.m_m.label(),
            cl.m_c.label()
        ),
    )
}

fn weyl_systems() -> Vec<ExtAffineRootSystem> {
    vec![
        a1_elliptic(0),
        build_ears(XType::A, 1, 3, 0, lattice(0), lattice(3)).unwrap(),
        build_ears(XType::A, 2, 2, 0, lattice(0), lattice(2)).unwrap(),
        build_ears(XType::A, 2, 3, 0, lattice(0), lattice(3)).unwrap(),
        build_ears(XType::B, 2, 2, 1, lattice(1), lattice(1)).unwrap(),
        build_ears(XType::B, 2, 3, 1, lattice(1), lattice(2)).unwrap(),
        build_ears(XType::G, 2, 2, 1, lattice(1), lattice(1)).unwrap(),
        build_ears(XType::G, 2, 3, 2, lattice(2), lattice(1)).unwrap(),
    ]
}

fn weyl_identities() -> Outcome {
    let mut rng = sample::rng(20);
    let (mut pairs, mut pair_fail, mut colls, mut coll_fail) = (0, 0, 0, 0);
    for e in weyl_systems() {
        let space = HyperbolicSpace::new(&e);
        for _ in 0..65 {
            let Some((a, m)) = sample::c_pair(&e, &mut rng, 3) else { continue };
            pairs += 1;
            let lhs = c_pair(&space, &e, &a, &m).expect("sampled word is admissible");
            let rhs = space.c_product(k_of(&e, &a), &m).expect("closed form");
            pair_fail += (lhs != rhs) as usize;
        }
        for _ in 0..26 {
            let Some(c) = sample::reduced(&e, &mut rng, 3, 2) else { continue };
            colls += 1;
            let ok = c.reduced_check(&e).unwrap_or(false) && c.relation_holds(&space, &e).unwrap_or(false);
            coll_fail += (!ok) as usize;
        }
    }
    outcome(
        pairs >= 500 && colls >= 200 && pair_fail == 0 && coll_fail == 0,
        format!("{pairs} (α,σ) pairs with |m_i| <= 3, {pair_fail} mismatches; {colls} reduced collections, {coll_fail} not the identity (seed 20)"),
    )
}

fn finite_oracle() -> Outcome {
    let (mut subsets, mut disagree) = (0, Vec::new());
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
            subsets += 1;
            let p: Vec<Root> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| roots[i].clone()).collect();
            let fins: Vec<IntVector> = p.iter().map(|x| x.fin.clone()).collect();
            let c = classify(&e, &p, 12).expect("classifies");
            let base = finite_reflectable_oracle(&f, &fins) == FiniteVerdict::Base;
            let mg = finite_min_gen_oracle(&f, &fins);
            let agree = c.reflectable_base == base
                && !matches!(c.m_m, Verdict::Unknown(_))
                && c.m_m.is_yes() == mg
                && c.m_c.is_yes() == (mg && p.len() == l)
                && base == mg;
            if !agree {
                disagree.push(format!("{code} {fins:?}"));
            }
        }
    }
    let detail = format!("{subsets} subsets of size <= l+1 in A1, A2, B2, G2; M_r = M_m = M_c agree with brute force on all but {}", disagree.len());
    outcome(disagree.is_empty(), detail)
}

fn axiom_suite() -> Outcome {
    let mut built = 0;
    let mut failed = Vec::new();
    for code in tables::BASE_TYPES {
        let f = FiniteRootSystem::parse(code).unwrap();
        for nu in 1..=3 {
            for e in enumerate_configs(&f, nu) {
                built += 1;
                let r = verify_axioms(&e, 3);
                if !r.all_passed() || !r.definitions_agree {
                    failed.push(format!("{} nu={nu}: {:?}", e.type_code(), r.failures()));
                }
            }
        }
    }
    let missing_zero = Semilattice::from_index_sets(2, &[vec![1], vec![2]]);
    let b2 = FiniteRootSystem::parse("B2").unwrap();
    let s = PeriodicSet::from_predicate(2, 4, |_| true);
    let l = PeriodicSet::from_predicate(2, 4, |v| v[0].rem_euclid(4) == 0);
    let ks = validate_parts(&b2, &s, &l);
    let mut_ok = missing_zero == Err(SemilatticeError::MissingZero) && ks == Err(StructureClause::KSPlusL);
    let detail = format!(
        "{built} built systems pass at box 3 ({} fail); supp without ∅ rejected: {}; L without kS+L rejected: {}",
        failed.len(),
        missing_zero.as_ref().err().map_or("accepted".into(), |e| format!("{e:?}")),
        ks.as_ref().err().map_or("accepted".into(), |c| format!("{c:?} ({c})"))
    );
    outcome(failed.is_empty() && mut_ok, detail)
}

fn elliptic_presentation() -> Outcome {
    let e = a1_elliptic(0);
    let pres = GradedPresentation::new(&e, &e.canonical_base(), RelationOptions::default()).expect("base");
    let q = Quotient::compute(&pres, 7).expect("computes");
    let cartan = q.cartan_dim().expect("window");
    let mut in_window = 0;
    let mut outside = Vec::new();
    let mut wrong = Vec::new();
    let roots: Vec<Root> = e.roots_in_box(2).into_iter().filter(|r| !r.is_isotropic()).collect();
    for b in &roots {
        match q.dim(&b.coords()) {
            Ok(1) => in_window += 1,
            Ok(d) => wrong.push(format!("{b}: {d}")),
            Err(_) => outside.push(b.to_string()),
        }
    }
    let non_roots: Vec<(Vec<i64>, usize)> = q
        .dims()
        .into_iter()
        .filter(|(w, _)| !pres.root_of(w).is_isotropic() && !pres.in_r(w))
        .collect();
    let nonzero = non_roots.iter().filter(|(_, d)| *d != 0).count();
    let mic1 = q.mic1_check().expect("window");
    let (mut phi_pass, mut phi_fail, mut phi_skip) = (0, 0, 0);
    for g in pres.base() {
        for b in &roots {
            match q.phi_check(g, b) {
                Ok(r) if r.holds => phi_pass += 1,
                Ok(_) => phi_fail += 1,
                Err(LieError::WindowTooSmall(_)) => phi_skip += 1,
                Err(err) => panic!("{err}"),
            }
        }
    }
    let dims_ok = wrong.is_empty() && in_window >= 20;
    let pass = cartan == 5 && dims_ok && non_roots.len() >= 20 && nonzero == 0 && mic1 == Mic1Outcome::BothSidesZero && phi_fail == 0;
    let detail = format!(
        "cartan_dim {cartan}; {in_window} roots with |coords| <= 2 have dim 1, {} wrong, {} need more than 7 letters ({}); {} non-root weights, {nonzero} nonzero; mic1 {mic1:?} (required BothSidesZero); phi {phi_pass} pass, {phi_fail} fail, {phi_skip} outside the window",
        wrong.len(),
        outside.len(),
        outside.join(", "),
        non_roots.len()
    );
    outcome(pass, detail)
}

fn parity_soundness() -> Outcome {
    let e = build_ears(XType::B, 3, 2, 1, lattice(1), lattice(1)).unwrap();
    let space = HyperbolicSpace::new(&e);
    let mut rng = sample::rng(8);
    let (mut words, mut nonzero, mut not_relators) = (0, 0, 0);
    for i in 0..100 {
        let Some(w) = sample::relator_word(&e, &mut rng, i) else { continue };
        words += 1;
        not_relators += (!space.word_eval(&w).expect("roots").is_identity()) as usize;
        nonzero += (parity_word(&e, &ParityKind::ShortCoset(1), &w).expect("type B") != 0) as usize;
    }
    let boxed = e.roots_in_box(1);
    let long: Vec<Root> = boxed.iter().filter(|r| e.is_long(r)).cloned().collect();
    let elems = bfs_elements(&space, &long, 10_000).expect("long roots");
    let shorts: HashSet<_> = e
        .roots_in_box(3)
        .iter()
        .filter(|r| e.is_short(r))
        .map(|r| space.reflection(r).expect("root"))
        .collect();
    let hits = elems.iter().filter(|(_, m)| shorts.contains(m)).count();
    let pass = words == 100 && nonzero == 0 && not_relators == 0 && elems.len() == 10_000 && hits == 0;
    outcome(
        pass,
        format!(
            "ψ_1 vanishes on {} of {words} relator words of the three forms; {} words from {} long generators, {hits} equal one of {} short reflections",
            words - nonzero,
            elems.len(),
            long.len(),
            shorts.len()
        ),
    )
}

fn main() {
    let results = [
        (1, run(1, 30.0, table2)),
        (2, run(2, 5.0, nine_reflections)),
        (3, run(3, 5.0, five_element_base)),
        (4, run(4, 60.0, weyl_identities)),
        (5, run(5, 60.0, finite_oracle)),
        (6, run(6, 600.0, axiom_suite)),
        (7, run(7, 600.0, elliptic_presentation)),
        (8, run(8, 60.0, parity_soundness)),
    ];
    let unexpected: Vec<u8> = results.iter().filter(|(n, ok)| !ok && !KNOWN_GAPS.contains(n)).map(|(n, _)| *n).collect();
    let passed = results.iter().filter(|(_, ok)| *ok).count();
    println!("{passed}/8 criteria pass; known gaps {KNOWN_GAPS:?}");
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
