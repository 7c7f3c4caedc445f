#![allow(dead_code)]

//! Generators and brute-force oracles shared by the integration tests.
//! Nothing here calls into the decision procedures under test.

use majorlab::{Channel, ProbVec, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn pv(v: &[(i64, i64)]) -> ProbVec {
    ProbVec::new(v.iter().map(|&(a, b)| r(a, b)).collect()).unwrap()
}

pub fn from_weights(w: &[u32]) -> ProbVec {
    let total: u64 = w.iter().map(|&x| x as u64).sum();
    ProbVec::new(
        w.iter()
            .map(|&x| Rational::new(BigInt::from(x), BigInt::from(total)))
            .collect(),
    )
    .unwrap()
}

/// Weights with at least one positive entry.
fn weights(n: std::ops::RangeInclusive<usize>, lo: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(lo..=12u32, n).prop_filter("nonzero", |w| w.iter().any(|&x| x > 0))
}

pub fn prob_vec(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ProbVec> {
    weights(n, 0).prop_map(|w| from_weights(&w))
}

pub fn positive_prob_vec(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ProbVec> {
    weights(n, 1).prop_map(|w| from_weights(&w))
}

pub fn pair(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = (ProbVec, ProbVec)> {
    n.prop_flat_map(|n| (prob_vec(n..=n), prob_vec(n..=n)))
}

pub fn channel(n: usize, m: usize) -> impl Strategy<Value = Channel> {
    prop::collection::vec(weights(m..=m, 0), n)
        .prop_map(|rows| Channel::new(rows.iter().map(|w| from_weights(w).into_entries()).collect()).unwrap())
}

/// A convex mixture of up to three permutation matrices.
pub fn bistochastic(n: usize) -> impl Strategy<Value = Channel> {
    let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
    (prop::collection::vec((1..=5u32, perm), 1..=3)).prop_map(move |terms| {
        let total: u32 = terms.iter().map(|t| t.0).sum();
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for (w, p) in &terms {
            for (i, &j) in p.iter().enumerate() {
                rows[i][j] += r(*w as i64, total as i64);
            }
        }
        Channel::new(rows).unwrap()
    })
}

/// Hardy-Littlewood-Polya partial sums on the sorted, padded vectors.
pub fn partial_sum_majorises(p: &ProbVec, q: &ProbVec) -> bool {
    let n = p.len().max(q.len());
    let sorted = |v: &ProbVec| {
        let mut e = v.entries().to_vec();
        e.resize(n, Rational::zero());
        e.sort_by(|a, b| b.cmp(a));
        e
    };
    let (a, b) = (sorted(p), sorted(q));
    let (mut sa, mut sb) = (Rational::zero(), Rational::zero());
    for i in 0..n {
        sa += &a[i];
        sb += &b[i];
        if sa < sb {
            return false;
        }
    }
    true
}

/// `Σ (p_x - t q_x)_+`.
fn hockey_stick(p: &ProbVec, q: &ProbVec, t: &Rational) -> Rational {
    p.entries()
        .iter()
        .zip(q.entries())
        .map(|(a, b)| a - t * b)
        .filter(|x| x.is_positive())
        .sum()
}

fn breakpoints(p: &ProbVec, q: &ProbVec) -> Vec<Rational> {
    p.entries()
        .iter()
        .zip(q.entries())
        .filter(|(_, b)| !b.is_zero())
        .map(|(a, b)| a / b)
        .collect()
}

/// `(p, q) ≻ (p2, q2)` iff `Σ (p - t q)_+ ≥ Σ (p2 - t q2)_+` for all `t ≥ 0`.
/// Both sides are piecewise linear in `t`, constant past the last
/// breakpoint, so checking `0` and every breakpoint suffices.
pub fn hockey_stick_majorises(p: &ProbVec, q: &ProbVec, p2: &ProbVec, q2: &ProbVec) -> bool {
    let mut ts = breakpoints(p, q);
    ts.extend(breakpoints(p2, q2));
    ts.push(Rational::zero());
    ts.iter().all(|t| hockey_stick(p, q, t) >= hockey_stick(p2, q2, t))
}

pub fn tv(p: &ProbVec, q: &ProbVec) -> Rational {
    p.entries()
        .iter()
        .zip(q.entries())
        .map(|(a, b)| (a - b).abs())
        .sum::<Rational>()
        / r(2, 1)
}

/// `Σ q_x f(p_x/q_x)` for the total-variation generator `f(t) = |t - 1|/2`.
pub fn tv_by_generator(p: &ProbVec, q: &ProbVec) -> Rational {
    p.entries()
        .iter()
        .zip(q.entries())
        .map(|(a, b)| b * (a / b - r(1, 1)).abs() / r(2, 1))
        .sum()
}

/// Direct Rényi divergence in bits from float entries, for full-support `q`.
pub fn renyi_direct(alpha: f64, p: &ProbVec, q: &ProbVec) -> f64 {
    let (p, q) = (p.to_f64_vec(), q.to_f64_vec());
    let pairs = p.iter().zip(&q).filter(|(a, _)| **a > 0.0);
    if alpha == 1.0 {
        pairs.map(|(a, b)| a * (a / b).log2()).sum()
    } else if alpha.is_infinite() {
        pairs.map(|(a, b)| (a / b).log2()).fold(f64::NEG_INFINITY, f64::max)
    } else if alpha == 0.0 {
        -pairs.map(|(_, b)| *b).sum::<f64>().log2()
    } else {
        pairs
            .map(|(a, b)| a.powf(alpha) * b.powf(1.0 - alpha))
            .sum::<f64>()
            .log2()
            / (alpha - 1.0)
    }
}

pub fn sup_norm(p: &ProbVec, q: &ProbVec) -> f64 {
    p.to_f64_vec()
        .iter()
        .zip(q.to_f64_vec())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}
