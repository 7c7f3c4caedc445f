//! Seeded random instances with exact rational entries.
//!
//! Instance `i` of a run seeded with `s` is drawn from its own ChaCha stream
//! `(s, i)`, so results do not depend on thread count or evaluation order.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::prob::{Channel, ProbVec};
use crate::rational::Rational;

pub type InstanceRng = ChaCha8Rng;

/// Default denominator of sampled entries.
pub const DEFAULT_DENOMINATOR: u64 = 1_000_000;

pub fn rng_for(seed: u64, instance: u64) -> InstanceRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(instance);
    rng
}

/// Runs `f` on `count` independent streams in parallel; output order is the
/// instance order.
pub fn instances<T, F>(seed: u64, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut InstanceRng, usize) -> T + Sync,
{
    (0..count)
        .into_par_iter()
        .map(|i| f(&mut rng_for(seed, i as u64), i))
        .collect()
}

/// Integer weights summing to `total`, proportional to `w` (largest remainder).
fn apportion(w: &[f64], total: u64) -> Vec<u64> {
    let sum: f64 = w.iter().sum();
    let exact: Vec<f64> = w.iter().map(|x| x / sum * total as f64).collect();
    let mut out: Vec<u64> = exact.iter().map(|x| x.floor() as u64).collect();
    let assigned: u64 = out.iter().sum();
    let mut order: Vec<usize> = (0..w.len()).collect();
    order.sort_by(|&a, &b| {
        let (fa, fb) = (exact[a] - exact[a].floor(), exact[b] - exact[b].floor());
        fb.total_cmp(&fa).then(a.cmp(&b))
    });
    for &i in order.iter().cycle().take(total.saturating_sub(assigned) as usize) {
        out[i] += 1;
    }
    out
}

fn from_counts(counts: &[u64], den: u64) -> ProbVec {
    let d = BigInt::from(den);
    ProbVec::from_trusted(
        counts
            .iter()
            .map(|&c| Rational::new(BigInt::from(c), d.clone()))
            .collect(),
    )
}

/// A Dirichlet(1, .., 1) draw snapped to multiples of `1/den`.
/// With `positive`, every entry is at least `1/den` (requires `den ≥ n`).
pub fn random_prob_vec<R: Rng>(rng: &mut R, n: usize, den: u64, positive: bool) -> ProbVec {
    let w: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let counts = if positive {
        assert!(den >= n as u64, "denominator too small for a positive vector");
        apportion(&w, den - n as u64).into_iter().map(|c| c + 1).collect()
    } else {
        apportion(&w, den)
    };
    from_counts(&counts, den)
}

/// Like [`random_prob_vec`] but with a random number of zeros: each entry is
/// dropped with probability `zero_prob`, keeping at least one.
pub fn random_sparse_prob_vec<R: Rng>(rng: &mut R, n: usize, den: u64, zero_prob: f64) -> ProbVec {
    let keep: Vec<bool> = (0..n).map(|_| !rng.random_bool(zero_prob)).collect();
    let live: Vec<usize> = (0..n).filter(|&i| keep[i]).collect();
    let live = if live.is_empty() {
        vec![rng.random_range(0..n)]
    } else {
        live
    };
    let sub = random_prob_vec(rng, live.len(), den, true);
    let mut e = vec![Rational::from_integer(0.into()); n];
    for (k, &i) in live.iter().enumerate() {
        e[i] = sub.get(k).clone();
    }
    ProbVec::from_trusted(e)
}

/// Integer weights in `1..=max_weight`, normalised. Denominators stay small,
/// which keeps embeddings short.
pub fn random_small_prob_vec<R: Rng>(rng: &mut R, n: usize, max_weight: u64) -> ProbVec {
    let counts: Vec<u64> = (0..n).map(|_| rng.random_range(1..=max_weight)).collect();
    let total = counts.iter().sum();
    from_counts(&counts, total)
}

/// A channel whose rows are independent [`random_prob_vec`] draws.
pub fn random_channel<R: Rng>(rng: &mut R, n: usize, m: usize, den: u64) -> Channel {
    Channel::from_trusted(
        (0..n)
            .map(|_| random_prob_vec(rng, m, den, false).into_entries())
            .collect(),
    )
}

/// A channel with entries that are multiples of `1/den` and many zeros.
pub fn random_sparse_channel<R: Rng>(rng: &mut R, n: usize, m: usize, den: u64) -> Channel {
    Channel::from_trusted(
        (0..n)
            .map(|_| random_sparse_prob_vec(rng, m, den, 0.4).into_entries())
            .collect(),
    )
}
