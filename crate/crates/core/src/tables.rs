//! Regeneration of the base and cardinality tables, diffed against the
//! embedded golden copies in `data/`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::earoot::{enumerate_configs, ExtAffineRootSystem, Root};
use crate::finroot::FiniteRootSystem;
use crate::reflect::{cardinality_of, expected_cardinality, is_reflectable_base};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableKind {
    Table1,
    Table2,
    Table4,
}

impl TableKind {
    pub fn parse(s: &str) -> Option<TableKind> {
        match s {
            "table1" | "1" => Some(TableKind::Table1),
            "table2" | "2" => Some(TableKind::Table2),
            "table4" | "4" => Some(TableKind::Table4),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TableKind::Table1 => "table1",
            TableKind::Table2 => "table2",
            TableKind::Table4 => "table4",
        }
    }

    pub fn all() -> [TableKind; 3] {
        [TableKind::Table1, TableKind::Table2, TableKind::Table4]
    }
}

/// Types covered by the cardinality table.
pub const CARDINALITY_TYPES: [&str; 6] = ["A1", "B2", "B3", "C3", "F4", "G2"];
/// Types covered by the base tables.
pub const BASE_TYPES: [&str; 8] = ["A1", "A2", "B2", "B3", "C3", "D4", "F4", "G2"];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Filter {
    pub type_code: Option<String>,
    pub nu: Option<usize>,
    pub t: Option<usize>,
}

impl Filter {
    fn keeps(&self, e: &ExtAffineRootSystem) -> bool {
        self.type_code.as_deref().is_none_or(|c| c.eq_ignore_ascii_case(&e.type_code()))
            && self.nu.is_none_or(|n| n == e.nu())
            && self.t.is_none_or(|t| t == e.t())
    }
}

fn roots_json(p: &[Root]) -> Value {
    Value::Array(p.iter().map(|r| Value::String(r.to_string())).collect())
}

fn config_json(e: &ExtAffineRootSystem) -> Value {
    json!({
        "type": e.type_code(),
        "nu": e.nu(),
        "t": e.t(),
        "S1": e.s1().index_sets(),
        "S2": e.s2().index_sets(),
        "ind_S1": e.s1().index(),
        "ind_S2": e.s2().index(),
        "ind_R": e.index(),
    })
}

fn configs(types: &[&str], nus: &[usize]) -> Vec<ExtAffineRootSystem> {
    let mut out = Vec::new();
    for code in types {
        let f = FiniteRootSystem::parse(code).expect("known type");
        for &nu in nus {
            out.extend(enumerate_configs(&f, nu));
        }
    }
    out
}

fn row(kind: TableKind, e: &ExtAffineRootSystem) -> Option<Value> {
    let mut v = config_json(e);
    let obj = v.as_object_mut().expect("object");
    match kind {
        TableKind::Table1 => {
            let p = e.base_general();
            obj.insert("base".into(), roots_json(&p));
            obj.insert("size".into(), json!(p.len()));
            obj.insert("is_base".into(), json!(is_reflectable_base(e, &p).unwrap_or(false)));
        }
        TableKind::Table2 => {
            let p = e.canonical_base();
            let c = cardinality_of(e, &p);
            obj.insert("total".into(), json!(c.total));
            obj.insert("short".into(), json!(c.short));
            obj.insert("long".into(), json!(c.long));
            obj.insert("is_base".into(), json!(is_reflectable_base(e, &p).unwrap_or(false)));
            obj.insert("formula_agrees".into(), json!(expected_cardinality(e).ok() == Some(c)));
        }
        TableKind::Table4 => {
            let p = e.base_elliptic()?;
            obj.insert("base".into(), roots_json(&p));
            obj.insert("size".into(), json!(p.len()));
            obj.insert("is_base".into(), json!(is_reflectable_base(e, &p).unwrap_or(false)));
        }
    }
    Some(v)
}

/// Rows computed from the root systems themselves.
pub fn regenerate(kind: TableKind) -> Vec<Value> {
    let cs = match kind {
        TableKind::Table1 => configs(&BASE_TYPES, &[1, 2, 3]),
        TableKind::Table2 => configs(&CARDINALITY_TYPES, &[1, 2, 3]),
        TableKind::Table4 => configs(&BASE_TYPES, &[2]),
    };
    cs.iter().filter_map(|e| row(kind, e)).collect()
}

/// Golden-file layout: one compact row per line, keys sorted.
pub fn render_golden(rows: &[Value]) -> String {
    let lines: Vec<String> = rows.iter().map(|r| format!("  {}", serde_json::to_string(r).expect("json"))).collect();
    format!("[\n{}\n]\n", lines.join(",\n"))
}

pub fn golden(kind: TableKind) -> Vec<Value> {
    let text = match kind {
        TableKind::Table1 => include_str!("../data/table1.json"),
        TableKind::Table2 => include_str!("../data/table2.json"),
        TableKind::Table4 => include_str!("../data/table4.json"),
    };
    serde_json::from_str(text).expect("embedded golden table parses")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub table: String,
    pub rows: Vec<Value>,
    pub mismatches: Vec<String>,
    pub failures: Vec<String>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.failures.is_empty()
    }
}

fn row_key(v: &Value) -> String {
    format!("{} nu={} t={} S1={} S2={}", v["type"].as_str().unwrap_or("?"), v["nu"], v["t"], v["S1"], v["S2"])
}

/// Regenerates a table, diffs it against the golden copy and collects rows
/// whose base fails recognition or whose counts disagree with the formula.
pub fn check(kind: TableKind, filter: &Filter) -> TableReport {
    let fresh = regenerate(kind);
    let gold = golden(kind);
    let mut mismatches = Vec::new();
    if fresh.len() != gold.len() {
        mismatches.push(format!("{} rows regenerated, {} in golden copy", fresh.len(), gold.len()));
    }
    for (a, b) in fresh.iter().zip(&gold) {
        if a != b {
            mismatches.push(format!("{}: regenerated {a} but golden {b}", row_key(a)));
        }
    }
    let mut failures = Vec::new();
    for r in &fresh {
        if r["is_base"] != json!(true) {
            failures.push(format!("{}: not a reflectable base", row_key(r)));
        }
        if kind == TableKind::Table2 && r["formula_agrees"] != json!(true) {
            failures.push(format!("{}: counts disagree with the cardinality formula", row_key(r)));
        }
    }
    let keep = |r: &Value| {
        let code = r["type"].as_str().unwrap_or("");
        filter.type_code.as_deref().is_none_or(|c| c.eq_ignore_ascii_case(code))
            && filter.nu.is_none_or(|n| r["nu"] == json!(n))
            && filter.t.is_none_or(|t| r["t"] == json!(t))
    };
    TableReport {
        table: kind.name().into(),
        rows: fresh.into_iter().filter(keep).collect(),
        mismatches,
        failures,
    }
}

/// Configurations of the cardinality table, optionally filtered.
pub fn cardinality_configs(filter: &Filter) -> Vec<ExtAffineRootSystem> {
    configs(&CARDINALITY_TYPES, &[1, 2, 3]).into_iter().filter(|e| filter.keeps(e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_tables_match() {
        for k in TableKind::all() {
            let r = check(k, &Filter::default());
            assert!(r.passed(), "{}: {:?} {:?}", r.table, r.mismatches, r.failures);
        }
    }

    #[test]
    fn golden_layout_is_stable() {
        for k in TableKind::all() {
            let text = match k {
                TableKind::Table1 => include_str!("../data/table1.json"),
                TableKind::Table2 => include_str!("../data/table2.json"),
                TableKind::Table4 => include_str!("../data/table4.json"),
            };
            assert_eq!(render_golden(&regenerate(k)), text);
        }
    }

    #[test]
    fn filtered_rows() {
        let f = Filter { type_code: Some("B3".into()), nu: Some(2), t: Some(1) };
        let r = check(TableKind::Table2, &f);
        assert!(r.rows.iter().any(|x| x["ind_S1"] == json!(1) && x["total"] == json!(5)));
        let f = Filter { type_code: Some("C3".into()), nu: Some(2), t: Some(0) };
        let r = check(TableKind::Table4, &f);
        let row = r.rows.iter().find(|x| x["ind_R"] == json!(1)).unwrap();
        assert_eq!(row["size"], json!(6));
        let f = Filter { type_code: Some("A1".into()), nu: Some(1), t: None };
        let r = check(TableKind::Table1, &f);
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0]["base"], json!(["a1", "-a1+s1"]));
    }
}
