//! Finite irreducible reduced root systems in simple-root coordinates.
//!
//! Node numbering: `B_ℓ` has `α_ℓ` short, `C_ℓ` has `α_ℓ` long, `F_4` has
//! `α_1, α_2` long, `G_2` has `α_1` long, `D` and `E` follow Bourbaki. The Gram
//! matrix is integral with short roots of norm 2.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::IntVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum XType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinRootError {
    #[error("illegal type/rank pair {0}{1}")]
    IllegalTypeRank(char, usize),
    #[error("cannot parse root system code {0:?}")]
    BadCode(String),
}

impl XType {
    pub fn letter(self) -> char {
        match self {
            XType::A => 'A',
            XType::B => 'B',
            XType::C => 'C',
            XType::D => 'D',
            XType::E => 'E',
            XType::F => 'F',
            XType::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => XType::A,
            'B' => XType::B,
            'C' => XType::C,
            'D' => XType::D,
            'E' => XType::E,
            'F' => XType::F,
            'G' => XType::G,
            _ => return None,
        })
    }

    pub fn legal_rank(self, l: usize) -> bool {
        match self {
            XType::A => l >= 1,
            XType::B => l >= 2,
            XType::C => l >= 3,
            XType::D => l >= 4,
            XType::E => (6..=8).contains(&l),
            XType::F => l == 4,
            XType::G => l == 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRootSystem {
    xtype: XType,
    rank: usize,
    gram: Vec<Vec<i64>>,
    roots: Vec<IntVector>,
    index: HashMap<IntVector, usize>,
}

fn cartan_edges(xtype: XType, l: usize) -> Vec<(usize, usize)> {
    let chain = |n: usize| (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match xtype {
        XType::A | XType::B | XType::C | XType::F | XType::G => chain(l),
        XType::D => {
            let mut e = chain(l - 1);
            e.push((l - 3, l - 1));
            e
        }
        XType::E => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..l - 1).map(|i| (i, i + 1)));
            e
        }
    }
}

fn simple_norms(xtype: XType, l: usize) -> Vec<i64> {
    match xtype {
        XType::A | XType::D | XType::E => vec![2; l],
        XType::B => (0..l).map(|i| if i + 1 < l { 4 } else { 2 }).collect(),
        XType::C => (0..l).map(|i| if i + 1 < l { 2 } else { 4 }).collect(),
        XType::F => vec![4, 4, 2, 2],
        XType::G => vec![6, 2],
    }
}

impl FiniteRootSystem {
    pub fn build(xtype: XType, rank: usize) -> Result<Self, FinRootError> {
        if !xtype.legal_rank(rank) {
            return Err(FinRootError::IllegalTypeRank(xtype.letter(), rank));
        }
        let norms = simple_norms(xtype, rank);
        let mut gram = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            gram[i][i] = norms[i];
        }
        for (i, j) in cartan_edges(xtype, rank) {
            // Adjacent simple roots: (α_i, α_j) = -max(|α_i|², |α_j|²)/2.
            let v = -(norms[i].max(norms[j]) / 2);
            gram[i][j] = v;
            gram[j][i] = v;
        }
        let mut frs = FiniteRootSystem { xtype, rank, gram, roots: Vec::new(), index: HashMap::new() };
        frs.close_roots();
        Ok(frs)
    }

    pub fn parse(code: &str) -> Result<Self, FinRootError> {
        code.parse()
    }

    fn close_roots(&mut self) {
        let simples: Vec<IntVector> = (0..self.rank).map(|i| unit(self.rank, i)).collect();
        let mut seen: HashSet<IntVector> = simples.iter().cloned().collect();
        let mut queue: VecDeque<IntVector> = simples.iter().cloned().collect();
        while let Some(b) = queue.pop_front() {
            for a in &simples {
                let img = self.reflect(a, &b);
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let mut roots: Vec<IntVector> = seen.into_iter().collect();
        roots.sort_by_key(|r| {
            let h: i64 = r.iter().sum();
            (h < 0, h.abs(), r.iter().map(|x| -x.abs()).collect::<Vec<_>>())
        });
        self.index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        self.roots = roots;
    }

    pub fn xtype(&self) -> XType {
        self.xtype
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn code(&self) -> String {
        format!("{}{}", self.xtype.letter(), self.rank)
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn roots(&self) -> &[IntVector] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &IntVector> {
        self.roots.iter().filter(|r| r.iter().sum::<i64>() > 0)
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.index.contains_key(v)
    }

    pub fn simply_laced(&self) -> bool {
        matches!(self.xtype, XType::A | XType::D | XType::E)
    }

    /// Ratio of long to short squared lengths: 1, 2 or 3.
    pub fn k(&self) -> i64 {
        match self.xtype {
            XType::A | XType::D | XType::E => 1,
            XType::B | XType::C | XType::F => 2,
            XType::G => 3,
        }
    }

    pub fn ip(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    pub fn norm(&self, a: &[i64]) -> i64 {
        self.ip(a, a)
    }

    pub fn is_short(&self, a: &[i64]) -> bool {
        self.norm(a) == 2
    }

    pub fn is_long(&self, a: &[i64]) -> bool {
        !self.simply_laced() && self.norm(a) == 2 * self.k()
    }

    /// `⟨β, α∨⟩ = 2(β,α)/(α,α)`.
    pub fn cartan_int(&self, beta: &[i64], alpha: &[i64]) -> i64 {
        let num = 2 * self.ip(beta, alpha);
        let den = self.norm(alpha);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    pub fn reflect(&self, alpha: &[i64], beta: &[i64]) -> IntVector {
        let c = self.cartan_int(beta, alpha);
        beta.iter().zip(alpha).map(|(b, a)| b - c * a).collect()
    }

    pub fn short_roots(&self) -> Vec<IntVector> {
        self.roots.iter().filter(|r| self.is_short(r)).cloned().collect()
    }

    pub fn long_roots(&self) -> Vec<IntVector> {
        self.roots.iter().filter(|r| self.is_long(r)).cloned().collect()
    }

    /// Highest short root and, when two lengths occur, highest long root.
    pub fn highest_roots(&self) -> (IntVector, Option<IntVector>) {
        let top = |pred: &dyn Fn(&IntVector) -> bool| {
            self.positive_roots()
                .filter(|r| pred(r))
                .max_by_key(|r| r.iter().sum::<i64>())
                .cloned()
        };
        let short = top(&|r| self.is_short(r)).expect("short roots exist");
        let long = if self.simply_laced() { None } else { top(&|r| self.is_long(r)) };
        (short, long)
    }

    /// Matrix of `w_α` acting on simple-root coordinates (columns are images of `α_j`).
    pub fn reflection_matrix(&self, alpha: &[i64]) -> Vec<Vec<i64>> {
        let cols: Vec<IntVector> = (0..self.rank).map(|j| self.reflect(alpha, &unit(self.rank, j))).collect();
        (0..self.rank).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
    }

    /// `W_P · P`, the orbit of `P` under the reflections it defines.
    pub fn orbit_closure(&self, p: &[IntVector]) -> BTreeSet<IntVector> {
        let mut seen: BTreeSet<IntVector> = p.iter().cloned().collect();
        let mut queue: VecDeque<IntVector> = p.iter().cloned().collect();
        while let Some(b) = queue.pop_front() {
            for a in p {
                let img = self.reflect(a, &b);
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        seen
    }

    pub fn weyl_order(&self) -> usize {
        let gens: Vec<IntVector> = (0..self.rank).map(|i| unit(self.rank, i)).collect();
        self.group_order(&gens)
    }

    /// Order of the subgroup generated by the reflections in `gens`.
    pub fn group_order(&self, gens: &[IntVector]) -> usize {
        let mats: Vec<Vec<Vec<i64>>> = gens.iter().map(|g| self.reflection_matrix(g)).collect();
        let id: Vec<Vec<i64>> = (0..self.rank).map(|i| unit(self.rank, i)).collect();
        let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(m) = queue.pop_front() {
            for g in &mats {
                let prod = int_matmul(&m, g);
                if seen.insert(prod.clone()) {
                    queue.push_back(prod);
                }
            }
        }
        seen.len()
    }
}

impl FromStr for FiniteRootSystem {
    type Err = FinRootError;

    fn from_str(code: &str) -> Result<Self, Self::Err> {
        let code = code.trim();
        let mut chars = code.chars();
        let letter = chars.next().ok_or_else(|| FinRootError::BadCode(code.into()))?;
        let xtype = XType::from_letter(letter).ok_or_else(|| FinRootError::BadCode(code.into()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| FinRootError::BadCode(code.into()))?;
        FiniteRootSystem::build(xtype, rank)
    }
}

impl fmt::Display for FiniteRootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

pub fn unit(n: usize, i: usize) -> IntVector {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn int_matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![0; m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            let x = a[i][k];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * bk[j];
            }
        }
    }
    out
}

pub fn build_finite(xtype: XType, rank: usize) -> Result<FiniteRootSystem, FinRootError> {
    FiniteRootSystem::build(xtype, rank)
}

pub fn highest_roots(frs: &FiniteRootSystem) -> (IntVector, Option<IntVector>) {
    frs.highest_roots()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FiniteVerdict {
    Base,
    /// Reflectable set with a proper reflectable subset.
    SetNotBase,
    NotReflectableSet,
    NotSet,
}

fn is_finite_reflectable(frs: &FiniteRootSystem, p: &[IntVector]) -> bool {
    !p.is_empty() && frs.orbit_closure(p).len() == frs.roots().len()
}

pub fn finite_reflectable_oracle(frs: &FiniteRootSystem, p: &[IntVector]) -> FiniteVerdict {
    if p.iter().any(|a| !frs.is_root(a)) {
        return FiniteVerdict::NotSet;
    }
    if !is_finite_reflectable(frs, p) {
        return FiniteVerdict::NotReflectableSet;
    }
    // Reflectability is monotone, so single removals decide minimality.
    let redundant = (0..p.len()).any(|i| {
        let rest: Vec<IntVector> = p.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, a)| a.clone()).collect();
        is_finite_reflectable(frs, &rest)
    });
    if redundant {
        FiniteVerdict::SetNotBase
    } else {
        FiniteVerdict::Base
    }
}

pub fn finite_min_gen_oracle(frs: &FiniteRootSystem, p: &[IntVector]) -> bool {
    let order = frs.weyl_order();
    if p.iter().any(|a| !frs.is_root(a)) || frs.group_order(p) != order {
        return false;
    }
    (0..p.len()).all(|i| {
        let rest: Vec<IntVector> = p.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, a)| a.clone()).collect();
        frs.group_order(&rest) != order
    })
}
