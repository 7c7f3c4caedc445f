use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::prob::{check_same_len, BlockVec, ProbVec};
use crate::rational::{from_biguint, Rational};

/// The lower boundary of the testing region of a pair `(p, q)`.
///
/// Vertices run from `(0, 0)` to `(1, 1)`; `a` accumulates `p`, `b` accumulates
/// `q`, and slopes `Δb/Δa` never decrease.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LorenzCurve {
    vertices: Vec<(Rational, Rational)>,
}

/// Compares likelihood ratios `p1/q1` and `p2/q2`, with `x/0 = ∞` for `x > 0`.
/// Both pairs must be nonzero.
pub(crate) fn cmp_ratio(p1: &Rational, q1: &Rational, p2: &Rational, q2: &Rational) -> Ordering {
    match (q1.is_zero(), q2.is_zero()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => (p1 * q2).cmp(&(p2 * q1)),
    }
}

/// Indices with `p_i + q_i > 0`, sorted by ratio descending, ties by index.
pub fn ratio_order(p: &ProbVec, q: &ProbVec) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..p.len())
        .filter(|&i| !(p.get(i).is_zero() && q.get(i).is_zero()))
        .collect();
    idx.sort_by(|&i, &j| cmp_ratio(p.get(j), q.get(j), p.get(i), q.get(i)));
    idx
}

impl LorenzCurve {
    /// Builds a curve from `(Δa, Δb)` increments that are already in
    /// non-increasing ratio order.
    fn from_steps(steps: impl Iterator<Item = (Rational, Rational)>) -> Self {
        let mut a = Rational::zero();
        let mut b = Rational::zero();
        let mut vertices = vec![(a.clone(), b.clone())];
        for (da, db) in steps {
            a += da;
            b += db;
            vertices.push((a.clone(), b.clone()));
        }
        Self { vertices }
    }

    pub fn vertices(&self) -> &[(Rational, Rational)] {
        &self.vertices
    }

    /// The same curve with repeated and collinear vertices removed.
    pub fn normalised(&self) -> Self {
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            if out.last() == Some(v) {
                continue;
            }
            if out.len() >= 2 {
                let (a0, b0) = &out[out.len() - 2];
                let (a1, b1) = &out[out.len() - 1];
                // Cross product of the two segments vanishes iff collinear.
                if (a1 - a0) * (&v.1 - b1) == (b1 - b0) * (&v.0 - a1) {
                    out.pop();
                }
            }
            out.push(v.clone());
        }
        Self { vertices: out }
    }

    /// The lowest `b` on the curve above `a ∈ [0, 1]`.
    pub fn value_at(&self, a: &Rational) -> Rational {
        let v = &self.vertices;
        let mut best: Option<Rational> = None;
        for w in v.windows(2) {
            let ((a0, b0), (a1, b1)) = (&w[0], &w[1]);
            let here = if a0 == a {
                Some(b0.clone())
            } else if a1 == a {
                Some(b1.clone())
            } else if a0 < a && a < a1 {
                Some(b0 + (b1 - b0) * (a - a0) / (a1 - a0))
            } else {
                None
            };
            if let Some(h) = here {
                if best.as_ref().is_none_or(|b| h < *b) {
                    best = Some(h);
                }
            }
        }
        best.unwrap_or_else(Rational::one)
    }

    /// True iff this curve is nowhere above `other`, i.e. its testing region
    /// contains the other one.
    pub fn lies_below(&self, other: &LorenzCurve) -> bool {
        let mut xs: Vec<&Rational> = self.vertices.iter().chain(&other.vertices).map(|(a, _)| a).collect();
        xs.sort();
        xs.dedup();
        xs.into_iter().all(|a| self.value_at(a) <= other.value_at(a))
    }

    /// Checks the curve invariants: endpoints, monotone coordinates, convexity.
    pub fn is_valid(&self) -> bool {
        let v = &self.vertices;
        let zero = (Rational::zero(), Rational::zero());
        let one = (Rational::one(), Rational::one());
        if v.first() != Some(&zero) || v.last() != Some(&one) {
            return false;
        }
        let steps: Vec<(Rational, Rational)> = v.windows(2).map(|w| (&w[1].0 - &w[0].0, &w[1].1 - &w[0].1)).collect();
        if steps
            .iter()
            .any(|(da, db)| *da < Rational::zero() || *db < Rational::zero())
        {
            return false;
        }
        // Slope db/da non-decreasing, compared by cross-multiplication.
        steps.windows(2).all(|s| &s[0].1 * &s[1].0 <= &s[1].1 * &s[0].0)
    }

    /// Curve of `(r, u^(k))` for a run-length encoded `r` of total length `k`.
    pub fn of_uniform_blocks(r: &BlockVec) -> Self {
        let k = from_biguint(&r.len());
        let mut blocks: Vec<&(Rational, num_bigint::BigUint)> =
            r.blocks().iter().filter(|(_, m)| !m.is_zero()).collect();
        blocks.sort_by(|x, y| y.0.cmp(&x.0));
        Self::from_steps(blocks.into_iter().map(|(v, m)| {
            let m = from_biguint(m);
            (v * &m, m / &k)
        }))
    }
}

/// The lower Lorenz curve of `(p, q)`.
pub fn lorenz_curve(p: &ProbVec, q: &ProbVec) -> Result<LorenzCurve> {
    check_same_len(p, q)?;
    let order = ratio_order(p, q);
    Ok(LorenzCurve::from_steps(
        order.into_iter().map(|i| (p.get(i).clone(), q.get(i).clone())),
    ))
}

/// Blackwell test: true iff some channel maps `p ↦ p2` and `q ↦ q2`.
pub fn relatively_majorises(p: &ProbVec, q: &ProbVec, p2: &ProbVec, q2: &ProbVec) -> Result<bool> {
    Ok(lorenz_curve(p, q)?.lies_below(&lorenz_curve(p2, q2)?))
}
