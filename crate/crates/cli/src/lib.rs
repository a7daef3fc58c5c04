//! The `ears` command-line front end.

pub mod input;
pub mod sample;

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ears_core::earoot::{verify_axioms, ExtAffineRootSystem, Root};
use ears_core::liepres::{GradedPresentation, LieError, Mic1Outcome, NonRootFamily, Quotient, RelationOptions};
use ears_core::reflect::{classify, expected_cardinality, minimality_report, recognize, Removal};
use ears_core::tables::{self, Filter, TableKind};
use ears_core::weyl::{bounded_word_search, c_pair_word, k_of, HyperbolicSpace, ReducedCollection, SearchResult};
use ears_core::worked;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "ears", version, about = "Extended affine root systems, reflectable bases and Weyl group identities")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Box radius for root enumeration.
    #[arg(long = "box", global = true, default_value_t = 3)]
    pub boxb: i64,
    /// Word length for searches, bracket length for the Lie quotient.
    #[arg(long, global = true)]
    pub maxlen: Option<usize>,
    /// Seed for sampled instances.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Build a system and print its invariants and bases.
    Build { spec: String },
    /// Membership of roots in the system.
    Member {
        spec: String,
        #[arg(long = "root", required = true, allow_hyphen_values = true)]
        roots: Vec<String>,
    },
    /// Check the axioms on the roots inside the box.
    Axioms { spec: String },
    /// Check whether a set is a reflectable base.
    Base {
        spec: String,
        #[arg(default_value = "canonical", allow_hyphen_values = true)]
        set: String,
    },
    /// Recognition, removal certificates and minimality verdicts for a set.
    Classify {
        spec: String,
        #[arg(default_value = "canonical", allow_hyphen_values = true)]
        set: String,
    },
    /// Weyl group words, c-pair identities, reduced collections and word search.
    #[command(subcommand)]
    Weyl(WeylCmd),
    /// Root space dimensions of the truncated Serre-type presentation.
    #[command(subcommand)]
    Lie(LieCmd),
    /// Regenerate the base and cardinality tables and diff them against the golden copies.
    Tables {
        /// `table1`, `table2`, `table4` or `all`.
        #[arg(default_value = "all")]
        which: String,
        /// Only rows of this type, e.g. `C3`.
        #[arg(long = "type")]
        type_code: Option<String>,
        /// Only rows with this nullity.
        #[arg(long)]
        nu: Option<usize>,
        /// Only rows with this twist number.
        #[arg(long = "t")]
        t: Option<usize>,
        /// Write regenerated tables into this directory.
        #[arg(long)]
        write_golden: Option<PathBuf>,
    },
    /// Run the worked examples end to end.
    PaperExamples,
}

#[derive(Debug, Subcommand)]
pub enum WeylCmd {
    /// Evaluate a reflection word as an exact matrix.
    Eval {
        spec: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Compare against another word.
        #[arg(long, allow_hyphen_values = true)]
        equals: Option<String>,
        /// Compare against a single reflection.
        #[arg(long, allow_hyphen_values = true)]
        reflection: Option<String>,
    },
    /// Check `c_(α,σ) = ∏ c_ij^(k(α) mᵢ mⱼ)`.
    Cpair {
        spec: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
    },
    /// Check that reduced collections give the identity.
    Reduced {
        spec: String,
        /// JSON array of `{"eps", "long", "eta"}` triples.
        #[arg(long)]
        collection: Option<String>,
        /// Number of seeded random collections.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Shortest word in the generators equal to a reflection.
    Search {
        spec: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, default_value = "canonical", allow_hyphen_values = true)]
        gens: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Relations {
    Full,
    Strings,
    None,
}

#[derive(Debug, Args)]
pub struct LieArgs {
    pub spec: String,
    /// `canonical`, `table1`, `table4`, a file or a comma-separated list.
    #[arg(long, default_value = "canonical", allow_hyphen_values = true)]
    pub base: String,
    /// Family of relations for non-root weights.
    #[arg(long, value_enum, default_value_t = Relations::Full)]
    pub relations: Relations,
    /// Impose the extra relation of the `A1` elliptic case.
    #[arg(long)]
    pub mic1: bool,
}

#[derive(Debug, Subcommand)]
pub enum LieCmd {
    /// Graded dimensions of the truncated quotient.
    Dims(LieArgs),
    /// Dimension of the degree-zero part.
    Cartan(LieArgs),
    /// Check that `Φ_γ` maps `L_β` onto `L_(w_γ β)`.
    Phi {
        #[command(flatten)]
        args: LieArgs,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
    },
    /// Evaluate both sides of the extra `A1` relation.
    Mic1(LieArgs),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub system: Option<Value>,
    pub ok: bool,
    pub result: Value,
    pub seed: u64,
    pub elapsed_ms: u64,
}

struct Outcome {
    system: Option<Value>,
    ok: bool,
    result: Value,
    lines: Vec<String>,
}

impl Outcome {
    fn new(system: Option<&ExtAffineRootSystem>, ok: bool, result: Value, lines: Vec<String>) -> Outcome {
        Outcome { system: system.map(invariants), ok, result, lines }
    }
}

pub fn invariants(e: &ExtAffineRootSystem) -> Value {
    json!({
        "type": e.type_code(),
        "rank": e.rank(),
        "nu": e.nu(),
        "t": e.t(),
        "k": e.k(),
        "ind": e.index(),
        "S1": e.s1().to_json(),
        "S2": e.s2().to_json(),
    })
}

fn header(e: &ExtAffineRootSystem) -> String {
    format!(
        "{} nu={} t={} k={} ind(R)={} S1={:?} S2={:?}",
        e.type_code(),
        e.nu(),
        e.t(),
        e.k(),
        e.index(),
        e.s1().index_sets(),
        e.s2().index_sets()
    )
}

fn show(rs: &[Root]) -> String {
    format!("{{{}}}", rs.iter().map(Root::to_string).collect::<Vec<_>>().join(", "))
}

fn strs(rs: &[Root]) -> Value {
    json!(rs.iter().map(Root::to_string).collect::<Vec<_>>())
}

fn matrix_lines(rows: &[Vec<String>]) -> Vec<String> {
    let w = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    rows.iter()
        .map(|r| format!("  [ {} ]", r.iter().map(|s| format!("{s:>w$}")).collect::<Vec<_>>().join(" ")))
        .collect()
}

/// Parses `args`, runs the command and prints its report. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(n) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let start = Instant::now();
    match dispatch(&cli) {
        Ok(out) => {
            let report = Report {
                command: argv.iter().skip(1).map(|s| s.to_string_lossy().into_owned()).collect(),
                system: out.system,
                ok: out.ok,
                result: out.result,
                seed: cli.seed,
                elapsed_ms: start.elapsed().as_millis() as u64,
            };
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                for l in &out.lines {
                    println!("{l}");
                }
                println!("{}", if out.ok { "ok" } else { "FAILED" });
            }
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.cmd {
        Cmd::Build { spec } => build(spec),
        Cmd::Member { spec, roots } => member(spec, roots),
        Cmd::Axioms { spec } => axioms(spec, cli.boxb),
        Cmd::Base { spec, set } => base(spec, set),
        Cmd::Classify { spec, set } => classify_cmd(spec, set, cli.maxlen.unwrap_or(10)),
        Cmd::Weyl(w) => weyl(cli, w),
        Cmd::Lie(l) => lie(cli, l),
        Cmd::Tables { which, type_code, nu, t, write_golden } => {
            let filter = Filter { type_code: type_code.clone(), nu: *nu, t: *t };
            tables_cmd(which, &filter, write_golden.as_ref())
        }
        Cmd::PaperExamples => paper_examples(cli.maxlen.unwrap_or(10)),
    }
}

fn build(spec: &str) -> Result<Outcome> {
    let e = input::spec(spec)?;
    let canonical = e.canonical_base();
    let elliptic = e.base_elliptic();
    let expected = expected_cardinality(&e).ok();
    let minimality = minimality_report(&e);
    let mut lines = vec![header(&e), format!("canonical base ({}): {}", canonical.len(), show(&canonical))];
    if let Some(p) = &elliptic {
        lines.push(format!("elliptic base ({}): {}", p.len(), show(p)));
    }
    if let Some(c) = &expected {
        lines.push(format!("expected |P| = {} ({} short, {} long)", c.total, c.short, c.long));
    }
    lines.push(format!("minimality: {minimality:?}"));
    let result = json!({
        "canonical_base": canonical,
        "elliptic_base": elliptic,
        "expected_cardinality": expected,
        "minimality": minimality,
    });
    Ok(Outcome::new(Some(&e), true, result, lines))
}

fn member(spec: &str, roots: &[String]) -> Result<Outcome> {
    let e = input::spec(spec)?;
    let mut lines = vec![header(&e)];
    let mut rows = Vec::new();
    for r in roots {
        let root = input::root(&e, r)?;
        let m = e.membership(&root);
        lines.push(format!("{root}: {m:?}"));
        rows.push(json!({"root": root, "membership": m, "is_root": m.is_root()}));
    }
    Ok(Outcome::new(Some(&e), true, json!(rows), lines))
}

fn axioms(spec: &str, boxb: i64) -> Result<Outcome> {
    let e = input::spec(spec)?;
    let rep = verify_axioms(&e, boxb);
    let mut lines = vec![header(&e), format!("{} roots in box {boxb}", rep.boxed_roots)];
    for c in &rep.checks {
        lines.push(format!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail));
    }
    lines.push(format!("definitions agree: {}", rep.definitions_agree));
    let ok = rep.all_passed() && rep.definitions_agree;
    Ok(Outcome::new(Some(&e), ok, serde_json::to_value(&rep)?, lines))
}

fn base(spec: &str, set: &str) -> Result<Outcome> {
    let e = input::spec(spec)?;
    let p = input::root_set(&e, set)?;
    let rec = recognize(&e, &p)?;
    let mut lines = vec![header(&e), format!("P = {}", show(&p)), format!("generates lattice: {}", rec.generates_lattice)];
    for c in &rec.clauses {
        lines.push(format!("{}: set {} base {} ({})", c.name, c.set_ok, c.base_ok, c.detail));
    }
    lines.push(format!("reflectable set: {}, reflectable base: {}", rec.reflectable_set, rec.reflectable_base));
    let ok = rec.reflectable_base;
    Ok(Outcome::new(Some(&e), ok, json!({"set": p, "recognition": rec}), lines))
}

fn removal_line(a: &Root, r: &Removal) -> String {
    match r {
        Removal::CertifiedNecessary(why) => format!("  without {a}: necessary ({why})"),
        Removal::CertifiedRedundant(w) => format!("  without {a}: redundant, w_({a}) = {}", word_text(w)),
        Removal::Unknown(why) => format!("  without {a}: unknown ({why})"),
    }
}

fn word_text(w: &[Root]) -> String {
    w.iter().map(|r| format!("w_({r})")).collect::<Vec<_>>().join(" ")
}

fn classify_cmd(spec: &str, set: &str, maxlen: usize) -> Result<Outcome> {
    let e = input::spec(spec)?;
    let p = input::root_set(&e, set)?;
    let cl = classify(&e, &p, maxlen)?;
    let mut lines = vec![
        header(&e),
        format!("P = {}", show(&cl.set)),
        format!("|P| = {} ({} short, {} long), connected: {}", cl.cardinality.total, cl.cardinality.short, cl.cardinality.long, cl.connected),
        format!("reflectable set: {}, M_r: {}", cl.reflectable_set, if cl.reflectable_base { "Yes" } else { "No" }),
        format!("generates W: {:?}", cl.generates_weyl),
        "removals:".into(),
    ];
    lines.extend(cl.removals.iter().map(|(a, r)| removal_line(a, r)));
    lines.push(format!("M_m: {:?}", cl.m_m));
    lines.push(format!("M_c: {:?}", cl.m_c));
    let ok = cl.reflectable_set;
    Ok(Outcome::new(Some(&e), ok, serde_json::to_value(&cl)?, lines))
}

fn weyl(cli: &Cli, cmd: &WeylCmd) -> Result<Outcome> {
    match cmd {
        WeylCmd::Eval { spec, word, equals, reflection } => {
            let e = input::spec(spec)?;
            let sp = HyperbolicSpace::new(&e);
            let w = input::roots(&e, word)?;
            let m = sp.word_eval(&w)?;
            let mut lines = vec![header(&e), format!("word: {}", word_text(&w))];
            lines.extend(matrix_lines(&m.rows_as_strings()));
            let other = match (equals, reflection) {
                (Some(x), None) => Some(sp.word_eval(&input::roots(&e, x)?)?),
                (None, Some(r)) => Some(sp.reflection(&input::root(&e, r)?)?),
                (None, None) => None,
                _ => bail!("give at most one of --equals and --reflection"),
            };
            let equal = other.map(|o| o == m);
            if let Some(eq) = equal {
                lines.push(format!("equal: {eq}"));
            }
            let result = json!({"word": w, "matrix": m.rows_as_strings(), "equal": equal});
            Ok(Outcome::new(Some(&e), equal.unwrap_or(true), result, lines))
        }
        WeylCmd::Cpair { spec, alpha, sigma } => {
            let e = input::spec(spec)?;
            let sp = HyperbolicSpace::new(&e);
            let a = input::root(&e, alpha)?;
            let m = input::int_vector(sigma, e.nu())?;
            let word = c_pair_word(&e, &a, &m)?;
            let lhs = sp.word_eval(&word)?;
            let k = k_of(&e, &a);
            let rhs = sp.c_product(k, &m)?;
            let holds = lhs == rhs;
            let mut lines = vec![header(&e), format!("c_({a}, {m:?}) with k(α) = {k}")];
            lines.extend(matrix_lines(&lhs.rows_as_strings()));
            lines.push(format!("equals the product of c_ij powers: {holds}"));
            let result = json!({"alpha": a, "sigma": m, "k_alpha": k, "word": word, "matrix": lhs.rows_as_strings(), "holds": holds});
            Ok(Outcome::new(Some(&e), holds, result, lines))
        }
        WeylCmd::Reduced { spec, collection, random } => {
            let e = input::spec(spec)?;
            let sp = HyperbolicSpace::new(&e);
            let mut cols = Vec::new();
            if let Some(c) = collection {
                cols.push(ReducedCollection { triples: input::triples(c)? });
            }
            if let Some(n) = random {
                let mut rng = sample::rng(cli.seed);
                for _ in 0..*n {
                    cols.push(sample::reduced(&e, &mut rng, 3, 2).ok_or_else(|| anyhow!("no admissible collection found"))?);
                }
            }
            if cols.is_empty() {
                bail!("give --collection or --random");
            }
            let mut lines = vec![header(&e)];
            let mut rows = Vec::new();
            let mut ok = true;
            for (i, c) in cols.iter().enumerate() {
                let reduced = c.reduced_check(&e)?;
                let identity = c.relation_holds(&sp, &e)?;
                ok &= !reduced || identity;
                lines.push(format!("#{i}: {} triples, reduced {reduced}, product is identity {identity}", c.triples.len()));
                rows.push(json!({"triples": c.triples, "reduced": reduced, "identity": identity}));
            }
            Ok(Outcome::new(Some(&e), ok, json!(rows), lines))
        }
        WeylCmd::Search { spec, target, gens } => {
            let e = input::spec(spec)?;
            let sp = HyperbolicSpace::new(&e);
            let t = input::root(&e, target)?;
            let g = input::root_set(&e, gens)?;
            let maxlen = cli.maxlen.unwrap_or(10);
            let res = bounded_word_search(&sp, &sp.reflection(&t)?, &g, maxlen)?;
            let mut lines = vec![header(&e), format!("generators: {}", show(&g))];
            let ok = match &res {
                SearchResult::Found(w) => {
                    lines.push(format!("w_({t}) = {}", word_text(w)));
                    true
                }
                SearchResult::NotFound { explored, exhausted, .. } => {
                    lines.push(format!("no word up to length {maxlen} ({explored} elements, exhausted {exhausted})"));
                    false
                }
            };
            Ok(Outcome::new(Some(&e), ok, json!({"target": t, "generators": g, "maxlen": maxlen, "result": res}), lines))
        }
    }
}

fn presentation(a: &LieArgs) -> Result<(ExtAffineRootSystem, GradedPresentation)> {
    let e = input::spec(&a.spec)?;
    let p = input::root_set(&e, &a.base)?;
    let non_root = match a.relations {
        Relations::Full => NonRootFamily::Full,
        Relations::Strings => NonRootFamily::StringsOnly,
        Relations::None => NonRootFamily::Omitted,
    };
    let pres = GradedPresentation::new(&e, &p, RelationOptions { non_root, mic1: a.mic1 })?;
    Ok((e, pres))
}

fn lie_header(e: &ExtAffineRootSystem, pres: &GradedPresentation, maxlen: usize) -> Vec<String> {
    let o = pres.options();
    let family = match o.non_root {
        NonRootFamily::Full => "full",
        NonRootFamily::StringsOnly => "strings",
        NonRootFamily::Omitted => "none",
    };
    let extra = if o.mic1 { " plus mic1" } else { "" };
    vec![header(e), format!("P = {}", show(pres.base())), format!("non-root relations {family}{extra}, brackets up to length {maxlen}")]
}

fn lie(cli: &Cli, cmd: &LieCmd) -> Result<Outcome> {
    let maxlen = cli.maxlen.unwrap_or(match cmd {
        LieCmd::Cartan(_) => 3,
        LieCmd::Mic1(_) => 4,
        _ => 7,
    });
    match cmd {
        LieCmd::Dims(a) => {
            let (e, pres) = presentation(a)?;
            let q = Quotient::compute(&pres, maxlen)?;
            let mut lines = lie_header(&e, &pres, maxlen);
            let mut map = serde_json::Map::new();
            let mut rows = Vec::new();
            let mut bad = Vec::new();
            for (w, d) in q.dims() {
                let r = pres.root_of(&w);
                let class = if r.is_isotropic() {
                    "isotropic"
                } else if pres.in_r(&w) {
                    "root"
                } else {
                    "non-root"
                };
                if (class == "root" && d != 1) || (class == "non-root" && d != 0) {
                    bad.push(r.to_string());
                }
                lines.push(format!("  {:<16} {:<9} {d}", r.to_string(), class));
                map.insert(r.to_string(), json!(d));
                rows.push(json!({"weight": r, "class": class, "dim": d}));
            }
            if !bad.is_empty() {
                lines.push(format!("unexpected dimensions at {}", bad.join(", ")));
            }
            let result = json!({"maxlen": maxlen, "base": strs(pres.base()), "dims": map, "weights": rows, "unexpected": bad});
            Ok(Outcome::new(Some(&e), bad.is_empty(), result, lines))
        }
        LieCmd::Cartan(a) => {
            let (e, pres) = presentation(a)?;
            let q = Quotient::compute(&pres, maxlen.max(3))?;
            let d = q.cartan_dim()?;
            let expected = e.rank() + 2 * e.nu();
            let mut lines = lie_header(&e, &pres, q.maxlen());
            lines.push(format!("degree-zero dimension {d} (expected {expected})"));
            Ok(Outcome::new(Some(&e), d == expected, json!({"cartan_dim": d, "expected": expected}), lines))
        }
        LieCmd::Phi { args, gamma, beta } => {
            let (e, pres) = presentation(args)?;
            let q = Quotient::compute(&pres, maxlen)?;
            let gammas = match gamma {
                Some(g) => vec![input::root(&e, g)?],
                None => pres.base().to_vec(),
            };
            let betas = match beta {
                Some(b) => vec![input::root(&e, b)?],
                None => e.roots_in_box(cli.boxb).into_iter().filter(|r| !r.is_isotropic()).collect(),
            };
            let mut lines = lie_header(&e, &pres, maxlen);
            let mut reports = Vec::new();
            let (mut pass, mut fail, mut skipped) = (0, 0, 0);
            for g in &gammas {
                for b in &betas {
                    match q.phi_check(g, b) {
                        Ok(r) => {
                            if r.holds {
                                pass += 1;
                            } else {
                                fail += 1;
                                lines.push(format!("  FAIL γ={g} β={b}: {r:?}"));
                            }
                            reports.push(r);
                        }
                        Err(LieError::WindowTooSmall(_)) => skipped += 1,
                        Err(err) => return Err(err.into()),
                    }
                }
            }
            lines.push(format!("{pass} pass, {fail} fail, {skipped} outside the window"));
            let result = json!({"pass": pass, "fail": fail, "outside_window": skipped, "checks": reports});
            Ok(Outcome::new(Some(&e), fail == 0, result, lines))
        }
        LieCmd::Mic1(a) => {
            let (e, pres) = presentation(a)?;
            let q = Quotient::compute(&pres, maxlen.max(4))?;
            let o = q.mic1_check()?;
            let mut lines = lie_header(&e, &pres, q.maxlen());
            lines.push(format!("outcome: {o:?}"));
            Ok(Outcome::new(Some(&e), o != Mic1Outcome::Fails, json!({"outcome": o}), lines))
        }
    }
}

fn tables_cmd(which: &str, filter: &Filter, write: Option<&PathBuf>) -> Result<Outcome> {
    let kinds: Vec<TableKind> = if which == "all" {
        TableKind::all().to_vec()
    } else {
        vec![TableKind::parse(which).ok_or_else(|| anyhow!("unknown table {which}; use table1, table2, table4 or all"))?]
    };
    let mut lines = Vec::new();
    let mut out = Vec::new();
    let mut ok = true;
    for k in kinds {
        if let Some(dir) = write {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(format!("{}.json", k.name()));
            std::fs::write(&path, tables::render_golden(&tables::regenerate(k)))?;
            lines.push(format!("wrote {}", path.display()));
        }
        let r = tables::check(k, filter);
        ok &= r.passed();
        lines.push(format!("{}: {} rows, {} mismatches, {} failures", r.table, r.rows.len(), r.mismatches.len(), r.failures.len()));
        for row in &r.rows {
            lines.push(format!("  {row}"));
        }
        lines.extend(r.mismatches.iter().chain(&r.failures).map(|m| format!("  FAIL {m}")));
        out.push(r);
    }
    Ok(Outcome::new(None, ok, serde_json::to_value(&out)?, lines))
}

fn paper_examples(maxlen: usize) -> Result<Outcome> {
    let reports = worked::all(maxlen);
    let mut lines = Vec::new();
    for r in &reports {
        lines.push(format!("{} {}", if r.passed { "pass" } else { "FAIL" }, r.name));
        lines.extend(r.details.iter().map(|d| format!("  {d}")));
    }
    let ok = reports.iter().all(|r| r.passed);
    Ok(Outcome::new(None, ok, serde_json::to_value(&reports)?, lines))
}
