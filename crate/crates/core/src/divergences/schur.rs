//! Divergences `D_g(p‖q) = g(r)` built from a Schur-convex `g` and the
//! embedding `(p, q) ∼ (r, u^(k))`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{DivergenceFn, Flags};
use crate::error::Result;
use crate::prob::BlockVec;
use crate::prob::{ExtReal, ProbVec};
use crate::rational::{from_biguint, log2_abs, to_f64, Rational};
use crate::relmaj::embed_blocks;
use crate::relmaj::extension::extend;

/// A function of a probability vector given in run-length form, assumed
/// Schur-convex and invariant under `r ↦ r ⊗ u^(k)`.
pub trait FunctionOfBlocks: Send + Sync {
    fn name(&self) -> String;
    fn eval_blocks(&self, r: &BlockVec) -> Result<f64>;

    /// Exact value, when the function is rational.
    fn eval_blocks_exact(&self, _r: &BlockVec) -> Option<Rational> {
        None
    }
}

/// Generators `f` of Csiszár f-divergences: convex with `f(1) = 0`.
#[derive(Clone)]
pub enum FKind {
    /// `|t - 1| / 2`.
    Tv,
    /// `(t - 1)²`.
    Chi2,
    /// `t log t`.
    Kl,
    Custom {
        name: String,
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for FKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FKind {
    pub fn name(&self) -> String {
        match self {
            FKind::Tv => "tv".into(),
            FKind::Chi2 => "chi2".into(),
            FKind::Kl => "kl".into(),
            FKind::Custom { name, .. } => name.clone(),
        }
    }

    /// `f(t)` for rational `f`.
    pub fn eval_exact(&self, t: &Rational) -> Option<Rational> {
        let d = t - Rational::one();
        match self {
            FKind::Tv => Some(d.abs() / Rational::from_integer(2.into())),
            FKind::Chi2 => Some(&d * &d),
            _ => None,
        }
    }

    pub fn eval(&self, t: &Rational) -> f64 {
        match self {
            FKind::Kl if t.is_zero() => 0.0,
            FKind::Kl => to_f64(t) * log2_abs(t),
            FKind::Custom { f, .. } => f(to_f64(t)),
            _ => to_f64(&self.eval_exact(t).expect("rational generator")),
        }
    }
}

/// `g_f(r) = (1/N) Σ f(N r_i)` over a vector of length `N`.
struct FGenerator(FKind);

impl FunctionOfBlocks for FGenerator {
    fn name(&self) -> String {
        self.0.name()
    }

    fn eval_blocks(&self, r: &BlockVec) -> Result<f64> {
        if let Some(v) = self.eval_blocks_exact(r) {
            return Ok(to_f64(&v));
        }
        let n = from_biguint(&r.len());
        Ok(r.blocks()
            .iter()
            .map(|(v, m)| to_f64(&(from_biguint(m) / &n)) * self.0.eval(&(v * &n)))
            .sum())
    }

    fn eval_blocks_exact(&self, r: &BlockVec) -> Option<Rational> {
        let n = from_biguint(&r.len());
        let mut total = Rational::zero();
        for (v, m) in r.blocks() {
            total += from_biguint(m) * self.0.eval_exact(&(v * &n))?;
        }
        Some(total / n)
    }
}

/// `D_g` for a function of blocks `g`.
#[derive(Clone)]
pub struct SchurDivergence {
    g: Arc<dyn FunctionOfBlocks>,
    additive: bool,
}

impl SchurDivergence {
    /// Exact `D_g(p‖q)` for full-support `q`, when `g` is rational.
    pub fn evaluate_exact(&self, p: &ProbVec, q: &ProbVec) -> Result<Option<Rational>> {
        let (r, _) = embed_blocks(p, q)?;
        Ok(self.g.eval_blocks_exact(&r))
    }

    fn evaluate_full_support(&self, p: &ProbVec, q: &ProbVec) -> Result<ExtReal> {
        let (r, _) = embed_blocks(p, q)?;
        ExtReal::new(self.g.eval_blocks(&r)?)
    }
}

impl DivergenceFn for SchurDivergence {
    fn flags(&self) -> Flags {
        Flags {
            name: self.g.name(),
            claims_additivity: self.additive,
            claims_dpi: true,
        }
    }

    fn evaluate(&self, p: &ProbVec, q: &ProbVec) -> Result<ExtReal> {
        extend(p, q, |p, q| self.evaluate_full_support(p, q))
    }
}

pub fn schur_divergence(g: Arc<dyn FunctionOfBlocks>) -> SchurDivergence {
    SchurDivergence { g, additive: false }
}

/// The f-divergence `Σ q_x f(p_x / q_x)` as `D_g` with `g(r) = (1/N) Σ f(N r_i)`.
pub fn f_divergence(f: FKind) -> SchurDivergence {
    let additive = matches!(f, FKind::Kl);
    SchurDivergence {
        g: Arc::new(FGenerator(f)),
        additive,
    }
}
