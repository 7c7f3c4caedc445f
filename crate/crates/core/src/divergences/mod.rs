//! Divergences and entropies: the Rényi family, derived extremal bounds, dual
//! relative entropies and Schur-convex constructions.

mod bounds;
mod renyi;
mod schur;

use std::fmt;
use std::sync::Arc;

pub use bounds::{
    derived_max, derived_min, dual_relative_entropy, lambda_max, lambda_min, pathological_relative_entropy,
    DualAnalysis, DualClass, DualDivergence,
};
pub(crate) use renyi::renyi_entropy_blocks;
pub use renyi::{
    max_relative_entropy, min_relative_entropy, renyi_divergence, renyi_divergence_to_uniform, renyi_entropy,
    RenyiOrder,
};
pub use schur::{f_divergence, schur_divergence, FKind, FunctionOfBlocks, SchurDivergence};

use crate::error::{MajorError, Result};
use crate::prob::{BlockVec, ExtReal, ProbVec};

/// Properties a divergence claims; the axiom probes test them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    pub name: String,
    pub claims_additivity: bool,
    pub claims_dpi: bool,
}

/// A functional on pairs of probability vectors with values in `[0, ∞]`.
pub trait DivergenceFn: Send + Sync {
    fn flags(&self) -> Flags;
    fn evaluate(&self, p: &ProbVec, q: &ProbVec) -> Result<ExtReal>;

    fn name(&self) -> String {
        self.flags().name
    }
}

/// A functional on probability vectors with values in `[0, ∞)`.
pub trait EntropyFn: Send + Sync {
    /// `claims_dpi` here stands for monotonicity under mixing.
    fn flags(&self) -> Flags;
    fn evaluate(&self, p: &ProbVec) -> Result<f64>;

    /// Evaluation on a run-length encoded vector; the default writes it out.
    fn evaluate_blocks(&self, r: &BlockVec) -> Result<f64> {
        self.evaluate(&r.to_prob_vec()?)
    }

    fn name(&self) -> String {
        self.flags().name
    }
}

pub type SharedDivergence = Arc<dyn DivergenceFn>;
pub type SharedEntropy = Arc<dyn EntropyFn>;

/// The Rényi relative entropy of a fixed order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Renyi(pub RenyiOrder);

impl DivergenceFn for Renyi {
    fn flags(&self) -> Flags {
        Flags {
            name: format!("renyi({})", self.0),
            claims_additivity: true,
            claims_dpi: true,
        }
    }

    fn evaluate(&self, p: &ProbVec, q: &ProbVec) -> Result<ExtReal> {
        renyi_divergence(self.0, p, q)
    }
}

/// `D_path(p‖q) = D_min(p‖q) + D_min(q‖p)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Pathological;

impl DivergenceFn for Pathological {
    fn flags(&self) -> Flags {
        Flags {
            name: "path".into(),
            claims_additivity: true,
            claims_dpi: true,
        }
    }

    fn evaluate(&self, p: &ProbVec, q: &ProbVec) -> Result<ExtReal> {
        pathological_relative_entropy(p, q)
    }
}

/// The Rényi entropy of a fixed order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenyiEntropy(pub RenyiOrder);

impl EntropyFn for RenyiEntropy {
    fn flags(&self) -> Flags {
        Flags {
            name: format!("renyi_entropy({})", self.0),
            claims_additivity: true,
            claims_dpi: true,
        }
    }

    fn evaluate(&self, p: &ProbVec) -> Result<f64> {
        Ok(renyi_entropy(self.0, p))
    }

    fn evaluate_blocks(&self, r: &BlockVec) -> Result<f64> {
        Ok(renyi_entropy_blocks(self.0, r.blocks()))
    }
}

impl fmt::Debug for dyn DivergenceFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DivergenceFn({})", self.name())
    }
}

impl fmt::Debug for dyn EntropyFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EntropyFn({})", self.name())
    }
}

/// Parses `"alpha:A"`, `"kl"`, `"min"`, `"max"`, `"path"`, `"tv"` or `"chi2"`.
/// `A` is a number or `inf`.
pub fn parse_divergence(name: &str) -> Result<SharedDivergence> {
    let s = name.trim().to_ascii_lowercase();
    Ok(match s.as_str() {
        "kl" => Arc::new(Renyi(RenyiOrder::ONE)),
        "min" => Arc::new(Renyi(RenyiOrder::ZERO)),
        "max" => Arc::new(Renyi(RenyiOrder::INFINITY)),
        "path" => Arc::new(Pathological),
        "tv" => Arc::new(f_divergence(FKind::Tv)),
        "chi2" => Arc::new(f_divergence(FKind::Chi2)),
        _ => match s.strip_prefix("alpha:") {
            Some(a) => Arc::new(Renyi(parse_order(a)?)),
            None => return Err(MajorError::Parse(format!("unknown divergence {name:?}"))),
        },
    })
}

/// Parses a Rényi order: a nonnegative number or `inf`.
pub fn parse_order(s: &str) -> Result<RenyiOrder> {
    let s = s.trim();
    if matches!(s, "inf" | "infinity" | "∞") {
        return Ok(RenyiOrder::INFINITY);
    }
    let value: f64 = match crate::rational::parse_rational(s) {
        Ok(r) => crate::rational::to_f64(&r),
        Err(_) => return Err(MajorError::Parse(format!("bad order {s:?}"))),
    };
    RenyiOrder::new(value)
}

/// Parses `"alpha:A"`, `"min"`, `"max"` or `"shannon"` into an entropy.
pub fn parse_entropy(name: &str) -> Result<SharedEntropy> {
    let s = name.trim().to_ascii_lowercase();
    let order = match s.as_str() {
        "shannon" => RenyiOrder::ONE,
        "max" => RenyiOrder::ZERO,
        "min" => RenyiOrder::INFINITY,
        _ => match s.strip_prefix("alpha:") {
            Some(a) => parse_order(a)?,
            None => return Err(MajorError::Parse(format!("unknown entropy {name:?}"))),
        },
    };
    Ok(Arc::new(RenyiEntropy(order)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_names() {
        assert_eq!(parse_divergence("alpha:2").unwrap().name(), "renyi(2)");
        assert_eq!(parse_divergence("alpha:inf").unwrap().name(), "renyi(inf)");
        assert_eq!(parse_divergence("alpha:1/2").unwrap().name(), "renyi(0.5)");
        assert_eq!(parse_divergence("path").unwrap().name(), "path");
        assert!(parse_divergence("alpha:-1").is_err());
        assert!(parse_divergence("bregman").is_err());
        assert_eq!(parse_entropy("min").unwrap().name(), "renyi_entropy(inf)");
    }
}
