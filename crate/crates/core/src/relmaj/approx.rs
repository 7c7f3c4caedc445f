//! Rational approximants of the second argument that move the Lorenz curve
//! in a known direction.

use num_traits::{One, Signed, Zero};

use super::lorenz::{cmp_ratio, ratio_order, relatively_majorises};
use crate::error::{MajorError, Result};
use crate::prob::{check_same_len, ProbVec};
use crate::rational::{rat, Rational};

/// Index groups of equal likelihood ratio, in descending ratio order.
struct RatioGroups {
    /// Indices with `p > 0 = q`.
    infinite: Vec<usize>,
    /// Finite-ratio groups; the last one carries the smallest ratio.
    finite: Vec<Vec<usize>>,
    /// Indices with `p = q = 0`.
    common_zeros: Vec<usize>,
}

fn ratio_groups(p: &ProbVec, q: &ProbVec) -> RatioGroups {
    let mut infinite = Vec::new();
    let mut finite: Vec<Vec<usize>> = Vec::new();
    for i in ratio_order(p, q) {
        if q.get(i).is_zero() {
            infinite.push(i);
            continue;
        }
        match finite.last_mut() {
            Some(g) if cmp_ratio(p.get(g[0]), q.get(g[0]), p.get(i), q.get(i)).is_eq() => g.push(i),
            _ => finite.push(vec![i]),
        }
    }
    let common_zeros = (0..p.len())
        .filter(|&i| p.get(i).is_zero() && q.get(i).is_zero())
        .collect();
    RatioGroups {
        infinite,
        finite,
        common_zeros,
    }
}

fn sum_over(v: &ProbVec, idx: &[usize]) -> Rational {
    idx.iter().map(|&i| v.get(i)).sum()
}

const MAX_HALVINGS: usize = 256;

/// A strictly positive rational `q'` within `δ` of `q` (sup norm) with
/// `(p, q) ≻ (p, q')`.
///
/// High-ratio groups gain mass, the smallest-ratio group pays for it
/// proportionally. Symbols outside both supports can only be filled when
/// some symbol already has `p = 0 < q`.
pub fn rational_upper_approx(p: &ProbVec, q: &ProbVec, delta: &Rational) -> Result<ProbVec> {
    check_same_len(p, q)?;
    if !delta.is_positive() {
        return Err(MajorError::InvalidValue("delta must be positive".into()));
    }
    if p == q {
        return Err(MajorError::DegenerateInput("p = q".into()));
    }
    let g = ratio_groups(p, q);
    let last = g.finite.last().expect("q has mass somewhere");
    let zero_ratio_last = p.get(last[0]).is_zero();
    if !g.common_zeros.is_empty() && !zero_ratio_last {
        return Err(MajorError::DegenerateInput(
            "symbols outside both supports cannot be filled without a symbol where only q is positive".into(),
        ));
    }
    let middle = &g.finite[..g.finite.len() - 1];
    let max_finite_ratio = g
        .finite
        .first()
        .map(|grp| p.get(grp[0]) / q.get(grp[0]))
        .unwrap_or_else(Rational::zero);
    let scale_inf = Rational::one() / max_finite_ratio.max(Rational::one());
    let q_last = sum_over(q, last);
    let p_inf = sum_over(p, &g.infinite);
    let q_mid: Rational = middle.iter().map(|grp| sum_over(q, grp)).sum();
    let zeros = Rational::from_integer(g.common_zeros.len().into());

    let mut h = delta.clone().min(rat(1, 2));
    for _ in 0..MAX_HALVINGS {
        let extra = &h * (&scale_inf * &p_inf + &q_mid + &zeros);
        let t = &extra / &q_last;
        if t < Rational::one() {
            let mut e = q.entries().to_vec();
            for &i in &g.infinite {
                e[i] = &h * &scale_inf * p.get(i);
            }
            for &i in middle.iter().flatten() {
                e[i] = (Rational::one() + &h) * q.get(i);
            }
            for &i in &g.common_zeros {
                e[i] = h.clone();
            }
            for &i in last {
                e[i] = (Rational::one() - &t) * q.get(i);
            }
            let cand = ProbVec::from_trusted(e);
            if cand.has_full_support() && cand.sup_distance(q)? <= *delta && relatively_majorises(p, q, p, &cand)? {
                return Ok(cand);
            }
        }
        h /= Rational::from_integer(2.into());
    }
    Err(MajorError::DegenerateInput("no admissible perturbation found".into()))
}

/// A rational `q'` with the support of `q`, within `δ` of `q`, and
/// `(p, q') ≻ (p, q)`.
///
/// Finite-ratio groups other than the last lose mass, the last group absorbs
/// it; symbols with `q = 0` are untouched.
pub fn rational_lower_approx(p: &ProbVec, q: &ProbVec, delta: &Rational) -> Result<ProbVec> {
    check_same_len(p, q)?;
    if !delta.is_positive() {
        return Err(MajorError::InvalidValue("delta must be positive".into()));
    }
    let g = ratio_groups(p, q);
    let last = g.finite.last().expect("q has mass somewhere");
    let front = &g.finite[..g.finite.len() - 1];
    let q_front: Rational = front.iter().map(|grp| sum_over(q, grp)).sum();
    let q_last = sum_over(q, last);
    let mut h = delta.clone().min(rat(1, 2));
    for _ in 0..MAX_HALVINGS {
        let t = &h * &q_front / &q_last;
        let mut e = q.entries().to_vec();
        for &i in front.iter().flatten() {
            e[i] = (Rational::one() - &h) * q.get(i);
        }
        for &i in last {
            e[i] = (Rational::one() + &t) * q.get(i);
        }
        let cand = ProbVec::from_trusted(e);
        if cand.sup_distance(q)? <= *delta && relatively_majorises(p, &cand, p, q)? {
            return Ok(cand);
        }
        h /= Rational::from_integer(2.into());
    }
    Err(MajorError::DegenerateInput("no admissible perturbation found".into()))
}
