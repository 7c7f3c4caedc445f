use std::sync::Arc;

use num_traits::{One, Zero};

use super::{min_relative_entropy, DivergenceFn, Flags, SharedDivergence};
use crate::error::Result;
use crate::prob::{check_same_len, ExtReal, ProbVec};
use crate::rational::Rational;

/// `λ_min = 2^{-D_min(p‖q)} = Σ_{x ∈ supp p} q_x`, exact.
pub fn lambda_min(p: &ProbVec, q: &ProbVec) -> Result<Rational> {
    p.mass_on_support_of(q)
}

/// `λ_max = 2^{-D_max(p‖q)} = min_{p_x > 0} q_x / p_x`, exact; zero when some
/// `q_x = 0 < p_x`.
pub fn lambda_max(p: &ProbVec, q: &ProbVec) -> Result<Rational> {
    Ok(match p.max_ratio(q)? {
        Some(r) => Rational::one() / r,
        None => Rational::zero(),
    })
}

fn binary(lambda: Rational) -> ProbVec {
    let rest = Rational::one() - &lambda;
    ProbVec::from_trusted(vec![lambda, rest])
}

fn e1() -> ProbVec {
    ProbVec::from_trusted(vec![Rational::one(), Rational::zero()])
}

/// `D(e1 ‖ [λ_min, 1-λ_min])`, the smallest value any monotone divergence
/// normalised like `D` can take on `(p, q)`.
pub fn derived_min(d: &dyn DivergenceFn, p: &ProbVec, q: &ProbVec) -> Result<ExtReal> {
    d.evaluate(&e1(), &binary(lambda_min(p, q)?))
}

/// `D(e1 ‖ [λ_max, 1-λ_max])`, the largest such value.
pub fn derived_max(d: &dyn DivergenceFn, p: &ProbVec, q: &ProbVec) -> Result<ExtReal> {
    d.evaluate(&e1(), &binary(lambda_max(p, q)?))
}

pub fn pathological_relative_entropy(p: &ProbVec, q: &ProbVec) -> Result<ExtReal> {
    check_same_len(p, q)?;
    Ok(min_relative_entropy(p, q)? + min_relative_entropy(q, p)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualClass {
    /// `s ∈ (0, ∞)`.
    Symmetric,
    /// `s = ∞`.
    Asymmetric,
    /// `s = 0`.
    Pathological,
}

impl DualClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            DualClass::Symmetric => "symmetric",
            DualClass::Asymmetric => "asymmetric",
            DualClass::Pathological => "pathological",
        }
    }
}

/// `D_*(p‖q) = D(q‖p) / s`.
pub struct DualDivergence {
    inner: SharedDivergence,
    s: f64,
}

impl DualDivergence {
    pub fn scale(&self) -> f64 {
        self.s
    }
}

impl DivergenceFn for DualDivergence {
    fn flags(&self) -> Flags {
        let f = self.inner.flags();
        Flags {
            name: format!("dual({})", f.name),
            ..f
        }
    }

    fn evaluate(&self, p: &ProbVec, q: &ProbVec) -> Result<ExtReal> {
        let v = self.inner.evaluate(q, p)?;
        if v.is_infinite() {
            return Ok(v);
        }
        ExtReal::new(v.value() / self.s)
    }
}

pub struct DualAnalysis {
    /// `s = D(u^(2) ‖ e1)`.
    pub s: ExtReal,
    /// `D(e1 ‖ u^(2))`, the other argument order.
    pub s_reversed: ExtReal,
    pub class: DualClass,
    /// Present iff the class is symmetric.
    pub dual: Option<DualDivergence>,
}

pub fn dual_relative_entropy(d: SharedDivergence) -> Result<DualAnalysis> {
    let u = ProbVec::from_trusted(vec![Rational::new(1.into(), 2.into()); 2]);
    let s = d.evaluate(&u, &e1())?;
    let s_reversed = d.evaluate(&e1(), &u)?;
    let class = if s.is_infinite() {
        DualClass::Asymmetric
    } else if s.value() == 0.0 {
        DualClass::Pathological
    } else {
        DualClass::Symmetric
    };
    let dual = (class == DualClass::Symmetric).then(|| DualDivergence {
        inner: Arc::clone(&d),
        s: s.value(),
    });
    Ok(DualAnalysis {
        s,
        s_reversed,
        class,
        dual,
    })
}
