//! Seeded sampling of identity instances.

use ears_core::earoot::{ExtAffineRootSystem, Root};
use ears_core::weyl::{c_pair_word, ReducedCollection, Triple};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

const ATTEMPTS: usize = 10_000;

fn nonisotropic(e: &ExtAffineRootSystem, b: i64) -> Vec<Root> {
    e.roots_in_box(b).into_iter().filter(|r| !r.is_isotropic()).collect()
}

/// A pair `(α, σ)` with `|mᵢ| ≤ bound` for which every reflection in the
/// word of `c_(α,σ)` is a root.
pub fn c_pair(e: &ExtAffineRootSystem, rng: &mut Rng64, bound: i64) -> Option<(Root, Vec<i64>)> {
    let pool = nonisotropic(e, 2);
    for _ in 0..ATTEMPTS {
        let a = pool.choose(rng)?.clone();
        let m: Vec<i64> = (0..e.nu()).map(|_| rng.gen_range(-bound..=bound)).collect();
        if c_pair_word(e, &a, &m).is_ok() {
            return Some((a, m));
        }
    }
    None
}

fn triple(e: &ExtAffineRootSystem, rng: &mut Rng64, bound: i64) -> Triple {
    let long = !e.finite().simply_laced() && rng.gen_bool(0.5);
    let eta = (0..e.nu())
        .map(|i| if long && i < e.t() { 0 } else { rng.gen_range(-bound..=bound) })
        .collect();
    Triple { eps: if rng.gen_bool(0.5) { 1 } else { -1 }, long, eta }
}

/// A reduced collection of `n` random triples completed by balancing
/// triples, with every reflection of its relator word a root.
pub fn reduced(e: &ExtAffineRootSystem, rng: &mut Rng64, n: usize, bound: i64) -> Option<ReducedCollection> {
    for _ in 0..ATTEMPTS {
        let ts: Vec<Triple> = (0..n).map(|_| triple(e, rng, bound)).collect();
        let Ok(c) = ReducedCollection::completed(e, ts) else { continue };
        if c.relator_word(e).is_ok() {
            return Some(c);
        }
    }
    None
}

/// A relator word of one of the three defining forms, chosen by `kind % 3`:
/// `w_α²`, the conjugation relation `w_α w_β w_α w_(w_α β)`, or the word of
/// a reduced collection.
pub fn relator_word(e: &ExtAffineRootSystem, rng: &mut Rng64, kind: usize) -> Option<Vec<Root>> {
    let pool = nonisotropic(e, 2);
    match kind % 3 {
        0 => {
            let a = pool.choose(rng)?.clone();
            Some(vec![a.clone(), a])
        }
        1 => {
            let a = pool.choose(rng)?.clone();
            let b = pool.choose(rng)?.clone();
            let c = e.reflect(&a, &b);
            Some(vec![a.clone(), b, a, c])
        }
        _ => reduced(e, rng, 3, 2)?.relator_word(e).ok(),
    }
}
