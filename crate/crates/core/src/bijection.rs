//! The correspondence between relative entropies and entropies:
//! `H(p) = log n - D(p‖u^(n))` one way, `D(p‖q) = log k - H(r)` the other.

use std::sync::Arc;

use crate::divergences::{DivergenceFn, EntropyFn, Flags, RenyiEntropy, RenyiOrder, SharedDivergence, SharedEntropy};
use crate::error::{MajorError, Result};
use crate::prob::{ExtReal, ProbVec};
use crate::rational::log2_biguint;
use crate::relmaj::extension::extend;
use crate::relmaj::{embed_blocks, relatively_majorises};

/// `p ↦ log n - D(p‖u^(n))`.
pub struct EntropyFromRelent {
    d: SharedDivergence,
}

impl EntropyFn for EntropyFromRelent {
    fn flags(&self) -> Flags {
        let f = self.d.flags();
        Flags {
            name: format!("entropy_of({})", f.name),
            ..f
        }
    }

    fn evaluate(&self, p: &ProbVec) -> Result<f64> {
        let n = p.len();
        let d = self.d.evaluate(p, &ProbVec::uniform(n)?)?;
        let d = d
            .finite()
            .ok_or_else(|| MajorError::InvalidValue(format!("{} is infinite against uniform", self.d.name())))?;
        Ok(((n as f64).log2() - d).max(0.0))
    }
}

pub fn entropy_from_relent(d: SharedDivergence) -> EntropyFromRelent {
    EntropyFromRelent { d }
}

fn log_k_minus(h: &dyn EntropyFn, p: &ProbVec, q: &ProbVec) -> Result<ExtReal> {
    let (r, k) = embed_blocks(p, q)?;
    ExtReal::new(log2_biguint(&k) - h.evaluate_blocks(&r)?)
}

/// `log k - H(r)` for the embedding `(p, q) ∼ (r, u^(k))`, continuously
/// extended to `q` with zeros.
pub fn relent_from_entropy(h: &dyn EntropyFn, p: &ProbVec, q: &ProbVec) -> Result<ExtReal> {
    extend(p, q, |p, q| log_k_minus(h, p, q))
}

/// `(p, q) ↦ log k - H(r)` packaged as a divergence.
pub struct RelentFromEntropy {
    h: SharedEntropy,
}

impl DivergenceFn for RelentFromEntropy {
    fn flags(&self) -> Flags {
        let f = self.h.flags();
        Flags {
            name: format!("relent_of({})", f.name),
            ..f
        }
    }

    fn evaluate(&self, p: &ProbVec, q: &ProbVec) -> Result<ExtReal> {
        relent_from_entropy(self.h.as_ref(), p, q)
    }
}

pub fn relent_from_entropy_fn(h: SharedEntropy) -> RelentFromEntropy {
    RelentFromEntropy { h }
}

fn check_witness(r: &ProbVec, k: usize) -> Result<ProbVec> {
    if r.len() != k {
        return Err(MajorError::DimensionMismatch {
            expected: k,
            found: r.len(),
        });
    }
    ProbVec::uniform(k)
}

/// `log k - H(r)` after checking `(p, q) ≻ (r, u^(k))`: a lower bound on the
/// smallest extension of `H`.
pub fn extension_lower_witness(h: &dyn EntropyFn, p: &ProbVec, q: &ProbVec, r: &ProbVec, k: usize) -> Result<ExtReal> {
    let u = check_witness(r, k)?;
    if !relatively_majorises(p, q, r, &u)? {
        return Err(MajorError::WitnessInfeasible("(p, q) does not majorise (r, u)".into()));
    }
    ExtReal::new((k as f64).log2() - h.evaluate(r)?)
}

/// `log k - H(r)` after checking `(r, u^(k)) ≻ (p, q)`: an upper bound on the
/// largest extension of `H`.
pub fn extension_upper_witness(h: &dyn EntropyFn, p: &ProbVec, q: &ProbVec, r: &ProbVec, k: usize) -> Result<ExtReal> {
    let u = check_witness(r, k)?;
    if !relatively_majorises(r, &u, p, q)? {
        return Err(MajorError::WitnessInfeasible("(r, u) does not majorise (p, q)".into()));
    }
    ExtReal::new((k as f64).log2() - h.evaluate(r)?)
}

/// `(H_min(p), H(p), H_max(p))` with `H_min = -log max p` and `H_max = log |supp p|`.
pub fn entropy_sandwich(h: &dyn EntropyFn, p: &ProbVec) -> Result<(f64, f64, f64)> {
    Ok((
        crate::divergences::renyi_entropy(RenyiOrder::INFINITY, p),
        h.evaluate(p)?,
        crate::divergences::renyi_entropy(RenyiOrder::ZERO, p),
    ))
}

/// `H_max = H_0`, which the inverse map sends to `D_min`.
pub fn max_entropy() -> SharedEntropy {
    Arc::new(RenyiEntropy(RenyiOrder::ZERO))
}
