//! Weight-graded nilpotent quotients of the Serre-type presentation attached to
//! a reflectable base.
//!
//! Lie elements live in the tensor algebra on the letters `X_β`, `β ∈ P ∪ −P`.
//! The Cartan generators are eliminated: `[X_β, X_−β]` plays the role of `H_β`,
//! so (III) and (IV) become `[[X_β, X_−β], X_γ] − (γ, β^∨) X_γ` and (I) becomes
//! the linear relations among the coroots of `P`. The ideal is closed by
//! bracketing with letters up to the length cutoff.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::earoot::{ExtAffineRootSystem, Root};
use crate::finroot::XType;
use crate::reflect::is_reflectable_base;

type Q = BigRational;
pub type Weight = Vec<i64>;

const LETTER_BITS: u32 = 5;
pub const MAX_WORD: usize = 11;
pub const MAX_LETTERS: usize = 1 << LETTER_BITS;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("P is not a reflectable base")]
    NotABase,
    #[error("{0} letters exceed the alphabet limit {MAX_LETTERS}")]
    TooManyLetters(usize),
    #[error("maxlen {0} outside 1..={MAX_WORD}")]
    MaxlenOutOfRange(usize),
    #[error("weight {0:?} is not reachable within the length window")]
    WindowTooSmall(Weight),
    #[error("{0}")]
    NotApplicable(String),
}

/// A word in the letters, packed left-aligned with its length in the top bits,
/// so that the integer order sorts by length first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(u64);

impl Word {
    const LEN_SHIFT: u32 = 60;

    pub fn letter(i: usize) -> Word {
        Word::from_letters(&[i as u8])
    }

    pub fn from_letters(ls: &[u8]) -> Word {
        assert!(ls.len() <= MAX_WORD);
        let mut x = (ls.len() as u64) << Self::LEN_SHIFT;
        for (i, &l) in ls.iter().enumerate() {
            x |= (l as u64) << (LETTER_BITS * (MAX_WORD - 1 - i) as u32);
        }
        Word(x)
    }

    pub fn len(self) -> usize {
        (self.0 >> Self::LEN_SHIFT) as usize
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }

    pub fn letters(self) -> Vec<u8> {
        (0..self.len()).map(|i| self.at(i)).collect()
    }

    fn at(self, i: usize) -> u8 {
        ((self.0 >> (LETTER_BITS * (MAX_WORD - 1 - i) as u32)) & (MAX_LETTERS as u64 - 1)) as u8
    }

    fn body(self) -> u64 {
        self.0 & ((1u64 << Self::LEN_SHIFT) - 1)
    }

    pub fn concat(self, o: Word) -> Word {
        let n = self.len() + o.len();
        assert!(n <= MAX_WORD);
        Word(((n as u64) << Self::LEN_SHIFT) | self.body() | (o.body() >> (LETTER_BITS * self.len() as u32)))
    }
}

/// Element of the tensor algebra.
pub type LieElem = BTreeMap<Word, Q>;

pub fn letter_elem(i: usize) -> LieElem {
    LieElem::from([(Word::letter(i), Q::one())])
}

fn axpy(acc: &mut LieElem, c: &Q, v: &LieElem) {
    for (w, x) in v {
        let e = acc.entry(*w).or_insert_with(Q::zero);
        *e += c * x;
        if e.is_zero() {
            acc.remove(w);
        }
    }
}

pub fn scale(c: &Q, v: &LieElem) -> LieElem {
    if c.is_zero() {
        return LieElem::new();
    }
    v.iter().map(|(w, x)| (*w, c * x)).collect()
}

pub fn sub(a: &LieElem, b: &LieElem) -> LieElem {
    let mut r = a.clone();
    axpy(&mut r, &-Q::one(), b);
    r
}

fn concat_product(a: &LieElem, b: &LieElem) -> LieElem {
    let mut r = LieElem::new();
    for (u, x) in a {
        for (v, y) in b {
            let e = r.entry(u.concat(*v)).or_insert_with(Q::zero);
            *e += x * y;
        }
    }
    r.retain(|_, x| !x.is_zero());
    r
}

pub fn bracket(a: &LieElem, b: &LieElem) -> LieElem {
    let mut r = concat_product(a, b);
    axpy(&mut r, &-Q::one(), &concat_product(b, a));
    r
}

/// `ad X_i (v)`.
pub fn ad(i: usize, v: &LieElem) -> LieElem {
    let x = Word::letter(i);
    let mut r = LieElem::new();
    for (w, c) in v {
        *r.entry(x.concat(*w)).or_insert_with(Q::zero) += c;
        *r.entry(w.concat(x)).or_insert_with(Q::zero) -= c;
    }
    r.retain(|_, c| !c.is_zero());
    r
}

/// `[Y_0, [Y_1, [..., Y_m]]]`.
pub fn right_normed(ys: &[LieElem]) -> LieElem {
    let (last, rest) = ys.split_last().expect("nonempty");
    rest.iter().rev().fold(last.clone(), |acc, y| bracket(y, &acc))
}

pub fn max_len(v: &LieElem) -> usize {
    v.keys().next_back().map_or(0, |w| w.len())
}

/// Bracketed word in the letters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bracket {
    Letter(usize),
    Pair(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn letters(&self) -> Vec<usize> {
        match self {
            Bracket::Letter(i) => vec![*i],
            Bracket::Pair(a, b) => {
                let mut v = a.letters();
                v.extend(b.letters());
                v
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Bracket::Letter(_) => 1,
            Bracket::Pair(a, b) => a.len() + b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn expand(&self) -> LieElem {
        match self {
            Bracket::Letter(i) => letter_elem(*i),
            Bracket::Pair(a, b) => bracket(&a.expand(), &b.expand()),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        match self {
            Bracket::Letter(i) => names[*i].clone(),
            Bracket::Pair(a, b) => format!("[{}, {}]", a.render(names), b.render(names)),
        }
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracket::Letter(i) => write!(f, "x{i}"),
            Bracket::Pair(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

fn is_lyndon(w: &[u8]) -> bool {
    (1..w.len()).all(|i| w < &w[i..])
}

/// Standard bracketing of a Lyndon word: split off the longest proper Lyndon suffix.
fn standard_bracket(w: &[u8]) -> Bracket {
    if w.len() == 1 {
        return Bracket::Letter(w[0] as usize);
    }
    let i = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("single letters are Lyndon");
    Bracket::Pair(Box::new(standard_bracket(&w[..i])), Box::new(standard_bracket(&w[i..])))
}

/// All Lyndon words of length `1..=n` over `k` letters (Duval's algorithm).
pub fn lyndon_words(k: usize, n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if k == 0 || n == 0 {
        return out;
    }
    let mut w: Vec<i32> = vec![-1];
    while let Some(last) = w.last_mut() {
        *last += 1;
        out.push(w.iter().map(|&x| x as u8).collect());
        let m = w.len();
        while w.len() < n {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(k as i32 - 1)) {
            w.pop();
        }
    }
    out
}

fn weight_of(weights: &[Weight], letters: impl IntoIterator<Item = usize>) -> Weight {
    let mut acc = vec![0; weights[0].len()];
    for i in letters {
        for (a, x) in acc.iter_mut().zip(&weights[i]) {
            *a += x;
        }
    }
    acc
}

/// Lyndon basis of the free Lie algebra on letters with the given weights,
/// grouped by multidegree and filtered by `window`.
pub fn hall_basis(weights: &[Weight], maxlen: usize, window: impl Fn(&Weight) -> bool) -> BTreeMap<Weight, Vec<Bracket>> {
    let mut out: BTreeMap<Weight, Vec<Bracket>> = BTreeMap::new();
    for w in lyndon_words(weights.len(), maxlen) {
        let wt = weight_of(weights, w.iter().map(|&x| x as usize));
        if window(&wt) {
            out.entry(wt).or_default().push(standard_bracket(&w));
        }
    }
    out
}

/// Row-echelon span of tensor elements with pivot at the largest word.
#[derive(Debug, Clone, Default)]
pub struct Span {
    rows: HashMap<Word, LieElem>,
}

impl Span {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_top(&self, mut v: LieElem) -> LieElem {
        while let Some((&piv, c)) = v.iter().next_back() {
            let Some(row) = self.rows.get(&piv) else { break };
            let c = c.clone();
            axpy(&mut v, &-c, row);
        }
        v
    }

    /// Fully reduced remainder: no word of the result is a pivot.
    pub fn normal_form(&self, mut v: LieElem) -> LieElem {
        let mut bound: Option<Word> = None;
        loop {
            let next = match bound {
                None => v.keys().rev().find(|w| self.rows.contains_key(w)).copied(),
                Some(b) => v.range(..b).rev().find(|(w, _)| self.rows.contains_key(w)).map(|(w, _)| *w),
            };
            let Some(p) = next else { return v };
            let c = v[&p].clone();
            axpy(&mut v, &-c, &self.rows[&p]);
            bound = Some(p);
        }
    }

    /// Adds `v`; returns the stored row when it is new.
    pub fn add(&mut self, v: LieElem) -> Option<LieElem> {
        let v = self.reduce_top(v);
        let (&piv, c) = v.iter().next_back()?;
        let inv = c.recip();
        let row = scale(&inv, &v);
        self.rows.insert(piv, row.clone());
        Some(row)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NonRootFamily {
    /// Every bracket of non-root weight vanishes.
    Full,
    /// Only `ad X_α^{n_(α,β)} X_β = 0` with `n_(α,β) = min{n : nα + β ∉ R}`.
    StringsOnly,
    Omitted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationOptions {
    pub non_root: NonRootFamily,
    pub mic1: bool,
}

impl Default for RelationOptions {
    fn default() -> Self {
        RelationOptions { non_root: NonRootFamily::Full, mic1: false }
    }
}

#[derive(Debug, Clone)]
pub struct GradedPresentation {
    ears: ExtAffineRootSystem,
    base: Vec<Root>,
    letters: Vec<Root>,
    weights: Vec<Weight>,
    options: RelationOptions,
}

impl GradedPresentation {
    pub fn new(ears: &ExtAffineRootSystem, base: &[Root], options: RelationOptions) -> Result<Self, LieError> {
        if !is_reflectable_base(ears, base).map_err(|_| LieError::NotABase)? {
            return Err(LieError::NotABase);
        }
        let mut letters = base.to_vec();
        letters.extend(base.iter().map(Root::neg));
        if letters.len() > MAX_LETTERS {
            return Err(LieError::TooManyLetters(letters.len()));
        }
        let weights = letters.iter().map(Root::coords).collect();
        Ok(GradedPresentation { ears: ears.clone(), base: base.to_vec(), letters, weights, options })
    }

    pub fn ears(&self) -> &ExtAffineRootSystem {
        &self.ears
    }

    pub fn base(&self) -> &[Root] {
        &self.base
    }

    pub fn letters(&self) -> &[Root] {
        &self.letters
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn options(&self) -> RelationOptions {
        self.options
    }

    pub fn letter_names(&self) -> Vec<String> {
        self.letters.iter().map(|r| format!("X({r})")).collect()
    }

    pub fn letter_of(&self, r: &Root) -> Option<usize> {
        self.letters.iter().position(|x| x == r)
    }

    pub fn neg_letter(&self, i: usize) -> usize {
        let n = self.base.len();
        if i < n { i + n } else { i - n }
    }

    pub fn root_of(&self, w: &[i64]) -> Root {
        Root::from_coords(w, self.ears.rank())
    }

    pub fn in_r(&self, w: &[i64]) -> bool {
        self.ears.is_root(&self.root_of(w))
    }

    /// `(X_j weight, X_i coroot)`.
    fn cartan(&self, j: usize, i: usize) -> i64 {
        self.ears.cartan_int(&self.letters[j], &self.letters[i])
    }

    fn h(&self, i: usize) -> LieElem {
        bracket(&letter_elem(i), &letter_elem(self.neg_letter(i)))
    }

    /// Relations other than the non-root family, tagged with their weights.
    fn relations(&self) -> Vec<(Weight, LieElem)> {
        let n = self.base.len();
        let zero = vec![0; self.ears.dim()];
        let mut out = Vec::new();
        for c in coroot_relations(&self.ears, &self.base) {
            let mut v = LieElem::new();
            for (i, ci) in c.iter().enumerate() {
                axpy(&mut v, ci, &self.h(i));
            }
            out.push((zero.clone(), v));
        }
        for i in 0..n {
            let h = self.h(i);
            for j in 0..self.letters.len() {
                let mut v = bracket(&h, &letter_elem(j));
                axpy(&mut v, &Q::from_integer((-self.cartan(j, i)).into()), &letter_elem(j));
                out.push((self.weights[j].clone(), v));
            }
        }
        if self.options.non_root == NonRootFamily::StringsOnly {
            for a in 0..self.letters.len() {
                for b in 0..self.letters.len() {
                    if a == b {
                        continue;
                    }
                    let mut m = 1;
                    while self.ears.is_root(&self.letters[b].add(&self.letters[a].scale(m))) {
                        m += 1;
                    }
                    let mut v = letter_elem(b);
                    for _ in 0..m {
                        v = ad(a, &v);
                    }
                    let w = self.letters[b].add(&self.letters[a].scale(m)).coords();
                    out.push((w, v));
                }
            }
        }
        if self.options.mic1 {
            if let Ok((w, lhs, rhs)) = self.mic1_sides() {
                out.push((w, sub(&lhs, &rhs)));
            }
        }
        out
    }

    /// Both sides of the `A1` relation comparing
    /// `½ ad X_(σ1−α) ad X_(α−σ1) [X_(α−σ1), X_(σ2−α)]` with `[X_(α−σ1), X_(σ2−α)]`.
    fn mic1_sides(&self) -> Result<(Weight, LieElem, LieElem), LieError> {
        if !self.ears.is_a1() || self.ears.nu() != 2 {
            return Err(LieError::NotApplicable("requires type A1 with nullity 2".into()));
        }
        let a = Root::new(vec![1], vec![0, 0]);
        let y = self
            .letter_of(&Root::new(vec![-1], vec![1, 0]))
            .ok_or_else(|| LieError::NotApplicable("s1-a1 not in P".into()))?;
        let z = self
            .letter_of(&Root::new(vec![-1], vec![0, 1]))
            .ok_or_else(|| LieError::NotApplicable("s2-a1 not in P".into()))?;
        if self.letter_of(&a).is_none() {
            return Err(LieError::NotApplicable("a1 not in P".into()));
        }
        let ny = self.neg_letter(y);
        let rhs = bracket(&letter_elem(ny), &letter_elem(z));
        let lhs = scale(&Q::new(1.into(), 2.into()), &ad(y, &ad(ny, &rhs)));
        Ok((weight_of(&self.weights, [ny, z]), lhs, rhs))
    }
}

/// Rational linear relations `Σ c_i β_i^∨ = 0` among the coroots of `base`.
fn coroot_relations(ears: &ExtAffineRootSystem, base: &[Root]) -> Vec<Vec<Q>> {
    let n = base.len();
    let d = ears.dim();
    // columns are the coroots 2β/(β,β)
    let mut m: Vec<Vec<Q>> = (0..d)
        .map(|r| {
            base.iter()
                .map(|b| Q::new((2 * b.coords()[r]).into(), ears.ip(b, b).into()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..d).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..d {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pr = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); n];
            v[free] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

/// The truncated quotient: Lyndon basis of the free Lie algebra and echelon
/// spans of the ideal, per weight, for brackets of length at most `maxlen`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pres: GradedPresentation,
    maxlen: usize,
    hall: BTreeMap<Weight, Vec<Bracket>>,
    ideal: HashMap<Weight, Span>,
    killed: std::collections::HashSet<Weight>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mic1Outcome {
    BothSidesZero,
    HoldsNontrivially,
    Fails,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiReport {
    pub gamma: Root,
    pub beta: Root,
    pub target: Root,
    pub dim_source: usize,
    pub dim_target: usize,
    pub image_rank: usize,
    pub stray_weights: Vec<Root>,
    pub holds: bool,
}

impl Quotient {
    pub fn compute(pres: &GradedPresentation, maxlen: usize) -> Result<Quotient, LieError> {
        if maxlen == 0 || maxlen >= MAX_WORD {
            return Err(LieError::MaxlenOutOfRange(maxlen));
        }
        let hall = hall_basis(&pres.weights, maxlen, |_| true);
        let zero = vec![0; pres.ears.dim()];
        let kills = pres.options.non_root == NonRootFamily::Full;
        let killed: std::collections::HashSet<Weight> =
            hall.keys().filter(|w| kills && **w != zero && !pres.in_r(w)).cloned().collect();
        let mut ideal: HashMap<Weight, Span> = HashMap::new();
        let mut frontier: Vec<(Weight, LieElem)> = Vec::new();
        for w in &killed {
            for b in &hall[w] {
                frontier.push((w.clone(), b.expand()));
            }
        }
        frontier.sort_by(|a, b| a.0.cmp(&b.0));
        for (w, v) in pres.relations() {
            if max_len(&v) > maxlen || killed.contains(&w) {
                continue;
            }
            if let Some(row) = ideal.entry(w.clone()).or_default().add(v) {
                frontier.push((w, row));
            }
        }
        let nl = pres.letters.len();
        let killed_ref = &killed;
        while !frontier.is_empty() {
            let images: Vec<(Weight, LieElem)> = frontier
                .par_iter()
                .filter(|(_, v)| max_len(v) < maxlen)
                .flat_map_iter(|(w, v)| {
                    (0..nl).filter_map(move |i| {
                        let u: Weight = w.iter().zip(&pres.weights[i]).map(|(a, b)| a + b).collect();
                        if killed_ref.contains(&u) {
                            return None;
                        }
                        Some((u, ad(i, v)))
                    })
                })
                .collect();
            let mut grouped: BTreeMap<Weight, Vec<LieElem>> = BTreeMap::new();
            for (u, x) in images {
                grouped.entry(u).or_default().push(x);
            }
            let mut work: Vec<(Weight, Span, Vec<LieElem>)> = grouped
                .into_iter()
                .map(|(u, xs)| {
                    let s = ideal.remove(&u).unwrap_or_default();
                    (u, s, xs)
                })
                .collect();
            let added: Vec<Vec<(Weight, LieElem)>> = work
                .par_iter_mut()
                .map(|(u, s, xs)| xs.drain(..).filter_map(|x| s.add(x)).map(|r| (u.clone(), r)).collect())
                .collect();
            for (u, s, _) in work {
                ideal.insert(u, s);
            }
            frontier = added.into_iter().flatten().collect();
        }
        Ok(Quotient { pres: pres.clone(), maxlen, hall, ideal, killed })
    }

    pub fn presentation(&self) -> &GradedPresentation {
        &self.pres
    }

    pub fn maxlen(&self) -> usize {
        self.maxlen
    }

    pub fn hall(&self) -> &BTreeMap<Weight, Vec<Bracket>> {
        &self.hall
    }

    pub fn reachable(&self, w: &[i64]) -> bool {
        self.hall.contains_key(w)
    }

    pub fn dim(&self, w: &[i64]) -> Result<usize, LieError> {
        let Some(hb) = self.hall.get(w) else { return Err(LieError::WindowTooSmall(w.to_vec())) };
        if self.killed.contains(w) {
            return Ok(0);
        }
        let r = self.ideal.get(w).map_or(0, Span::rank);
        Ok(hb.len() - r)
    }

    pub fn dims(&self) -> BTreeMap<Weight, usize> {
        self.hall.keys().map(|w| (w.clone(), self.dim(w).expect("reachable"))).collect()
    }

    pub fn normal_form(&self, w: &[i64], v: LieElem) -> LieElem {
        if self.killed.contains(w) {
            return LieElem::new();
        }
        match self.ideal.get(w) {
            Some(s) => s.normal_form(v),
            None => v,
        }
    }

    /// Rank of `vs` in the quotient at weight `w`.
    pub fn rank_at(&self, w: &[i64], vs: &[LieElem]) -> usize {
        if self.killed.contains(w) {
            return 0;
        }
        let mut s = self.ideal.get(w).cloned().unwrap_or_default();
        vs.iter().filter(|v| s.add((*v).clone()).is_some()).count()
    }

    /// Quotient basis at `w`, shortest brackets first, as normal forms.
    pub fn basis(&self, w: &[i64]) -> Result<Vec<LieElem>, LieError> {
        let hb = self.hall.get(w).ok_or_else(|| LieError::WindowTooSmall(w.to_vec()))?;
        if self.killed.contains(w) {
            return Ok(Vec::new());
        }
        let mut s = self.ideal.get(w).cloned().unwrap_or_default();
        let mut sorted: Vec<&Bracket> = hb.iter().collect();
        sorted.sort_by_key(|b| b.len());
        let mut out = Vec::new();
        for b in sorted {
            let e = b.expand();
            if s.add(e.clone()).is_some() {
                out.push(self.normal_form(w, e));
            }
        }
        Ok(out)
    }

    /// `dim Ĥ`: rank of the `[X_β, X_−β]`, `β ∈ P`, at weight zero plus the two derivations.
    pub fn cartan_dim(&self) -> Result<usize, LieError> {
        if self.pres.ears.nu() != 2 {
            return Err(LieError::NotApplicable("requires nullity 2".into()));
        }
        if self.maxlen < 2 {
            return Err(LieError::MaxlenOutOfRange(self.maxlen));
        }
        let hs: Vec<LieElem> = (0..self.pres.base.len()).map(|i| self.pres.h(i)).collect();
        Ok(self.rank_at(&vec![0; self.pres.ears.dim()], &hs) + 2)
    }

    fn ad_reduced(&self, i: usize, w: &[i64], v: &LieElem) -> Result<Option<(Weight, LieElem)>, LieError> {
        let u: Weight = w.iter().zip(&self.pres.weights[i]).map(|(a, b)| a + b).collect();
        if max_len(v) + 1 > self.maxlen {
            return Err(LieError::WindowTooSmall(u));
        }
        let x = self.normal_form(&u, ad(i, v));
        Ok((!x.is_empty()).then_some((u, x)))
    }

    /// `exp(c ad X_i)` on a weight-homogeneous element, as weight components.
    fn exp_ad(&self, i: usize, c: i64, w: &[i64], v: &LieElem) -> Result<BTreeMap<Weight, LieElem>, LieError> {
        let mut out = BTreeMap::new();
        out.insert(w.to_vec(), v.clone());
        let mut term = (w.to_vec(), v.clone());
        let mut n = 1i64;
        loop {
            let Some((u, x)) = self.ad_reduced(i, &term.0, &term.1)? else { break };
            let x = scale(&Q::new(c.into(), n.into()), &x);
            axpy(out.entry(u.clone()).or_default(), &Q::one(), &x);
            term = (u, x);
            n += 1;
        }
        Ok(out)
    }

    fn exp_ad_all(&self, i: usize, c: i64, x: &BTreeMap<Weight, LieElem>) -> Result<BTreeMap<Weight, LieElem>, LieError> {
        let mut out: BTreeMap<Weight, LieElem> = BTreeMap::new();
        for (w, v) in x {
            for (u, y) in self.exp_ad(i, c, w, v)? {
                axpy(out.entry(u).or_default(), &Q::one(), &y);
            }
        }
        Ok(out
            .into_iter()
            .map(|(u, y)| {
                let y = self.normal_form(&u, y);
                (u, y)
            })
            .filter(|(_, y)| !y.is_empty())
            .collect())
    }

    /// `Φ_γ = exp(ad X_γ) exp(−ad X_−γ) exp(ad X_γ)` applied to `v` of weight `w`.
    pub fn phi(&self, gamma: usize, w: &[i64], v: &LieElem) -> Result<BTreeMap<Weight, LieElem>, LieError> {
        let ng = self.pres.neg_letter(gamma);
        let x = BTreeMap::from([(w.to_vec(), v.clone())]);
        let x = self.exp_ad_all(gamma, 1, &x)?;
        let x = self.exp_ad_all(ng, -1, &x)?;
        self.exp_ad_all(gamma, 1, &x)
    }

    /// Checks `Φ_γ(L̂_β) = L̂_(w_γ β)` in the truncated quotient.
    pub fn phi_check(&self, gamma: &Root, beta: &Root) -> Result<PhiReport, LieError> {
        let gi = self
            .pres
            .letter_of(gamma)
            .ok_or_else(|| LieError::NotApplicable(format!("{gamma} is not a letter")))?;
        let target = self.pres.ears.reflect(gamma, beta);
        let bw = beta.coords();
        let tw = target.coords();
        let src = self.basis(&bw)?;
        let dim_target = self.dim(&tw)?;
        let mut images = Vec::new();
        let mut stray = std::collections::BTreeSet::new();
        for v in &src {
            for (u, y) in self.phi(gi, &bw, v)? {
                if u == tw {
                    images.push(y);
                } else {
                    stray.insert(u);
                }
            }
        }
        let image_rank = self.rank_at(&tw, &images);
        let stray_weights: Vec<Root> = stray.iter().map(|u| self.pres.root_of(u)).collect();
        Ok(PhiReport {
            gamma: gamma.clone(),
            beta: beta.clone(),
            target,
            dim_source: src.len(),
            dim_target,
            image_rank,
            holds: stray_weights.is_empty() && image_rank == dim_target && src.len() == dim_target,
            stray_weights,
        })
    }

    pub fn mic1_check(&self) -> Result<Mic1Outcome, LieError> {
        let (w, lhs, rhs) = self.pres.mic1_sides()?;
        if self.maxlen < 4 {
            return Err(LieError::WindowTooSmall(w));
        }
        let l = self.normal_form(&w, lhs);
        let r = self.normal_form(&w, rhs);
        Ok(if l.is_empty() && r.is_empty() {
            Mic1Outcome::BothSidesZero
        } else if self.normal_form(&w, sub(&l, &r)).is_empty() {
            Mic1Outcome::HoldsNontrivially
        } else {
            Mic1Outcome::Fails
        })
    }
}

pub fn quotient_dims(pres: &GradedPresentation, maxlen: usize) -> Result<BTreeMap<Weight, usize>, LieError> {
    Ok(Quotient::compute(pres, maxlen)?.dims())
}

pub fn cartan_dim(pres: &GradedPresentation) -> Result<usize, LieError> {
    Quotient::compute(pres, 3)?.cartan_dim()
}

pub fn mic1_check(pres: &GradedPresentation, maxlen: usize) -> Result<Mic1Outcome, LieError> {
    Quotient::compute(pres, maxlen.max(4))?.mic1_check()
}

/// Counts of `±γ` letters in a bracket, for each `γ ∈ P`.
pub fn class_counts(pres: &GradedPresentation, b: &Bracket) -> Vec<usize> {
    let n = pres.base.len();
    let mut c = vec![0; n];
    for l in b.letters() {
        c[l % n] += 1;
    }
    c
}

/// Coefficients of `w` in the basis `P` when `P` is linearly independent.
pub fn base_coordinates(pres: &GradedPresentation, w: &[i64]) -> Option<Vec<BigInt>> {
    let n = pres.base.len();
    let d = w.len();
    if n != d {
        return None;
    }
    let mut m: Vec<Vec<Q>> = (0..d)
        .map(|r| {
            let mut row: Vec<Q> = pres.base.iter().map(|b| Q::from_integer(b.coords()[r].into())).collect();
            row.push(Q::from_integer(w[r].into()));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..d {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pr = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
    }
    m.iter()
        .map(|row| {
            let x = &row[n];
            x.is_integer().then(|| x.to_integer())
        })
        .collect()
}

pub fn a1_elliptic(ind: usize) -> ExtAffineRootSystem {
    use crate::finroot::FiniteRootSystem;
    use crate::lattice::Semilattice;
    let sets: Vec<Vec<usize>> = if ind == 0 { vec![vec![], vec![1], vec![2]] } else { vec![vec![], vec![1], vec![2], vec![1, 2]] };
    let s = Semilattice::from_index_sets(2, &sets).expect("valid");
    ExtAffineRootSystem::simply_laced(FiniteRootSystem::build(XType::A, 1).expect("A1"), s).expect("valid")
}
