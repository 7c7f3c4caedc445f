//! Continuous extension of a functional known on full-support rational `q`
//! to second arguments with zeros.

use num_traits::{One, Zero};

use super::approx::rational_upper_approx;
use crate::error::{MajorError, Result};
use crate::prob::{check_same_len, ExtReal, ProbVec};
use crate::rational::{rat, Rational};

/// Two-sided approximants must agree within this.
pub const EXTENSION_TOL: f64 = 1e-9;
pub const EXTENSION_ROUNDS: usize = 40;

/// Drops the symbols where both `p` and `q` vanish.
pub fn drop_common_zeros(p: &ProbVec, q: &ProbVec) -> Result<(ProbVec, ProbVec)> {
    check_same_len(p, q)?;
    let keep: Vec<usize> = (0..p.len())
        .filter(|&i| !(p.get(i).is_zero() && q.get(i).is_zero()))
        .collect();
    Ok((p.restrict(&keep)?, q.restrict(&keep)?))
}

/// Evaluates `f(p, q)`, calling `f` only on full-support second arguments.
///
/// When `q` has zeros outside the support of `p`, two approximant families are
/// followed as `δ` halves from `1/100`: the curve-raising rational approximants
/// and the mixtures `(1-δ) q + δ u`. The value is returned once both sequences
/// have settled and agree within [`EXTENSION_TOL`]; `+∞` when both grow
/// without bound; otherwise [`MajorError::ExtensionDiverged`] with the last
/// bracket.
pub fn extend<F>(p: &ProbVec, q: &ProbVec, f: F) -> Result<ExtReal>
where
    F: Fn(&ProbVec, &ProbVec) -> Result<ExtReal>,
{
    let (p, q) = drop_common_zeros(p, q)?;
    if q.has_full_support() {
        return f(&p, &q);
    }
    let u = ProbVec::uniform(q.len())?;
    let mut delta = rat(1, 100);
    let mut upper_side: Vec<f64> = Vec::new();
    let mut mix_side: Vec<f64> = Vec::new();
    for _ in 0..EXTENSION_ROUNDS {
        let q1 = rational_upper_approx(&p, &q, &delta)?;
        let q2 = mixture(&q, &u, &delta);
        let a = f(&p, &q1)?.value();
        let b = f(&p, &q2)?.value();
        upper_side.push(a);
        mix_side.push(b);
        if settled(&upper_side) && settled(&mix_side) && (a - b).abs() <= EXTENSION_TOL {
            return ExtReal::new(a);
        }
        if diverging(&upper_side) && diverging(&mix_side) {
            return Ok(ExtReal::INFINITY);
        }
        delta /= Rational::from_integer(2.into());
    }
    let (a, b) = (
        *upper_side.last().expect("rounds > 0"),
        *mix_side.last().expect("rounds > 0"),
    );
    Err(MajorError::ExtensionDiverged {
        lower: a.min(b),
        upper: a.max(b),
    })
}

fn mixture(q: &ProbVec, u: &ProbVec, delta: &Rational) -> ProbVec {
    let keep = Rational::one() - delta;
    ProbVec::from_trusted(
        q.entries()
            .iter()
            .zip(u.entries())
            .map(|(a, b)| &keep * a + delta * b)
            .collect(),
    )
}

/// The last step moved the value by at most [`EXTENSION_TOL`].
fn settled(values: &[f64]) -> bool {
    match values {
        [.., x, y] => x.is_finite() && y.is_finite() && (y - x).abs() <= EXTENSION_TOL,
        _ => false,
    }
}

/// Growth that does not slow down: the last few increments exceed `1e-3` and
/// none shrinks below `0.9×` its predecessor.
fn diverging(values: &[f64]) -> bool {
    const WINDOW: usize = 4;
    if values.iter().any(|v| v.is_infinite()) {
        return values.last().is_some_and(|v| v.is_infinite());
    }
    if values.len() < WINDOW + 1 {
        return false;
    }
    let tail = &values[values.len() - WINDOW - 1..];
    let inc: Vec<f64> = tail.windows(2).map(|w| w[1] - w[0]).collect();
    inc.iter().all(|&d| d > 1e-3) && inc.windows(2).all(|w| w[1] >= 0.9 * w[0])
}
