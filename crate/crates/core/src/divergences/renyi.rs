//! Rényi divergences and entropies, evaluated on weighted blocks so that the
//! same code serves plain vectors and run-length embeddings.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{MajorError, Result};
use crate::prob::{check_same_len, BlockVec, ExtReal, ProbVec};
use crate::rational::{from_biguint, log2_abs, log2_biguint, Rational};

/// An order `α ∈ [0, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct RenyiOrder(f64);

impl RenyiOrder {
    pub const ZERO: RenyiOrder = RenyiOrder(0.0);
    pub const HALF: RenyiOrder = RenyiOrder(0.5);
    pub const ONE: RenyiOrder = RenyiOrder(1.0);
    pub const TWO: RenyiOrder = RenyiOrder(2.0);
    pub const INFINITY: RenyiOrder = RenyiOrder(f64::INFINITY);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha < 0.0 {
            return Err(MajorError::InvalidValue(format!("Rényi order {alpha} outside [0, ∞]")));
        }
        Ok(RenyiOrder(alpha))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn is_infinite(&self) -> bool {
        self.0.is_infinite()
    }
}

impl fmt::Display for RenyiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// One term `(p_i, q_i)` repeated `m` times.
pub(crate) struct Term<'a> {
    pub p: &'a Rational,
    pub q: &'a Rational,
    pub m: BigUint,
}

fn log_sum_exp2(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + xs.iter().map(|x| (x - max).exp2()).sum::<f64>().log2()
}

/// `D_α` over weighted terms; the `p` and `q` masses must each total one.
pub(crate) fn renyi_terms(alpha: RenyiOrder, terms: &[Term<'_>]) -> Result<ExtReal> {
    let a = alpha.value();
    let on_p = terms.iter().filter(|t| !t.p.is_zero());
    if a == 0.0 {
        let mass: Rational = on_p.map(|t| t.q * from_biguint(&t.m)).sum();
        return ExtReal::neg_log2_of(&mass);
    }
    if alpha.is_infinite() {
        let mut best: Option<Rational> = None;
        for t in on_p {
            if t.q.is_zero() {
                return Ok(ExtReal::INFINITY);
            }
            let r = t.p / t.q;
            if best.as_ref().is_none_or(|b| r > *b) {
                best = Some(r);
            }
        }
        return ExtReal::new(log2_abs(&best.expect("p has mass")));
    }
    if a == 1.0 {
        let mut sum = 0.0;
        for t in on_p {
            if t.q.is_zero() {
                return Ok(ExtReal::INFINITY);
            }
            let mp = t.p * from_biguint(&t.m);
            sum += crate::rational::to_f64(&mp) * log2_abs(&(t.p / t.q));
        }
        return ExtReal::new(sum);
    }
    let mut logs = Vec::new();
    for t in on_p {
        if t.q.is_zero() {
            if a > 1.0 {
                return Ok(ExtReal::INFINITY);
            }
            continue;
        }
        // log2(m q (p/q)^α)
        logs.push(log2_biguint(&t.m) + log2_abs(t.q) + a * log2_abs(&(t.p / t.q)));
    }
    if logs.is_empty() {
        return Ok(ExtReal::INFINITY);
    }
    ExtReal::new(log_sum_exp2(&logs) / (a - 1.0))
}

/// `D_α(p‖q)` in bits.
pub fn renyi_divergence(alpha: RenyiOrder, p: &ProbVec, q: &ProbVec) -> Result<ExtReal> {
    check_same_len(p, q)?;
    if p == q {
        return Ok(ExtReal::ZERO);
    }
    let terms: Vec<Term<'_>> = p
        .entries()
        .iter()
        .zip(q.entries())
        .map(|(p, q)| Term {
            p,
            q,
            m: BigUint::one(),
        })
        .collect();
    renyi_terms(alpha, &terms)
}

/// `D_α(r‖u^(k))` for a run-length encoded `r` of length `k`.
pub fn renyi_divergence_to_uniform(alpha: RenyiOrder, r: &BlockVec) -> Result<ExtReal> {
    let k = from_biguint(&r.len());
    let uk = Rational::one() / k;
    let terms: Vec<Term<'_>> = r
        .blocks()
        .iter()
        .map(|(v, m)| Term {
            p: v,
            q: &uk,
            m: m.clone(),
        })
        .collect();
    renyi_terms(alpha, &terms)
}

pub fn min_relative_entropy(p: &ProbVec, q: &ProbVec) -> Result<ExtReal> {
    renyi_divergence(RenyiOrder::ZERO, p, q)
}

pub fn max_relative_entropy(p: &ProbVec, q: &ProbVec) -> Result<ExtReal> {
    renyi_divergence(RenyiOrder::INFINITY, p, q)
}

/// `H_α` over `(value, multiplicity)` blocks.
pub(crate) fn renyi_entropy_blocks(alpha: RenyiOrder, blocks: &[(Rational, BigUint)]) -> f64 {
    let a = alpha.value();
    let live = blocks.iter().filter(|(v, m)| !v.is_zero() && !m.is_zero());
    let h = if a == 0.0 {
        log2_biguint(&live.map(|(_, m)| m.clone()).sum())
    } else if alpha.is_infinite() {
        -log2_abs(live.map(|(v, _)| v).max().expect("mass somewhere"))
    } else if a == 1.0 {
        -live
            .map(|(v, m)| crate::rational::to_f64(&(v * from_biguint(m))) * log2_abs(v))
            .sum::<f64>()
    } else {
        let logs: Vec<f64> = live.map(|(v, m)| log2_biguint(m) + a * log2_abs(v)).collect();
        log_sum_exp2(&logs) / (1.0 - a)
    };
    h.max(0.0)
}

/// `H_α(p)` in bits; `H_∞(p) = -log max p`.
pub fn renyi_entropy(alpha: RenyiOrder, p: &ProbVec) -> f64 {
    renyi_entropy_blocks(alpha, BlockVec::from_prob_vec(p).blocks())
}
