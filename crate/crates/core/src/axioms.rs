//! Randomised probes of the axioms, the order parameter, the faithfulness
//! classifier and the second-derivative check for Rényi divergences.
//!
//! Orders and second derivatives are reported in natural units (the bit value
//! times `ln 2`), the scale on which the order of `D_α` equals `α`.

use std::f64::consts::LN_2;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::divergences::{renyi_divergence, DivergenceFn, FunctionOfBlocks, RenyiOrder};
use crate::error::{MajorError, Result};
use crate::prob::{ext_diff, BlockVec, Channel, ExtReal, ProbVec};
use crate::rational::{rat, Rational};
use crate::sampling::{instances, random_channel, random_prob_vec, random_sparse_prob_vec, InstanceRng};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub inputs: String,
    pub margin: f64,
}

/// Outcome of probing one axiom. `violations` is nonempty iff
/// `worst_margin < -tolerance`.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub axiom: String,
    pub instances: usize,
    /// Instances whose evaluation raised an error.
    pub skipped: usize,
    pub worst_margin: f64,
    pub tolerance: f64,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    fn from_margins(axiom: &str, tolerance: f64, results: Vec<Option<(f64, String)>>) -> Self {
        let skipped = results.iter().filter(|r| r.is_none()).count();
        let mut worst = f64::INFINITY;
        let mut violations = Vec::new();
        for (margin, inputs) in results.iter().flatten() {
            worst = worst.min(*margin);
            if *margin < -tolerance {
                violations.push(Violation {
                    inputs: inputs.clone(),
                    margin: *margin,
                });
            }
        }
        AxiomReport {
            axiom: axiom.into(),
            instances: results.len() - skipped,
            skipped,
            worst_margin: worst,
            tolerance,
            violations,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn describe(parts: &[(&str, &dyn std::fmt::Display)]) -> String {
    parts
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// `-|a - b|` on the extended half-line (`∞` against `∞` counts as equal).
fn closeness(a: ExtReal, b: ExtReal) -> f64 {
    match (a.is_infinite(), b.is_infinite()) {
        (true, true) => 0.0,
        (false, false) => -(a.value() - b.value()).abs(),
        _ => f64::NEG_INFINITY,
    }
}

fn random_pair(rng: &mut InstanceRng, n: usize) -> (ProbVec, ProbVec) {
    let den = 1_000_000;
    (
        random_sparse_prob_vec(rng, n, den, 0.2),
        random_sparse_prob_vec(rng, n, den, 0.2),
    )
}

/// Tests data processing, additivity, identity and normalisation on seeded
/// random instances. Identical seeds give identical reports.
pub fn probe_axioms(d: &dyn DivergenceFn, samples: usize, seed: u64, tolerance: f64) -> Vec<AxiomReport> {
    let dpi = instances(seed, samples, |rng, _| {
        let n = rng.random_range(2..=4);
        let m = rng.random_range(2..=4);
        let (p, q) = random_pair(rng, n);
        let w = random_channel(rng, n, m, 1000);
        let (pw, qw) = (w.apply(&p).ok()?, w.apply(&q).ok()?);
        let before = d.evaluate(&p, &q).ok()?;
        let after = d.evaluate(&pw, &qw).ok()?;
        Some((
            ext_diff(before, after),
            describe(&[("p", &p), ("q", &q), ("pW", &pw), ("qW", &qw)]),
        ))
    });
    let additivity = instances(seed ^ 0xadd, samples, |rng, _| {
        let n1 = rng.random_range(1..=3);
        let n2 = rng.random_range(2..=3);
        let (p1, q1) = random_pair(rng, n1);
        let (p2, q2) = random_pair(rng, n2);
        let joint = d.evaluate(&p1.tensor(&p2), &q1.tensor(&q2)).ok()?;
        let sum = d.evaluate(&p1, &q1).ok()? + d.evaluate(&p2, &q2).ok()?;
        Some((
            closeness(joint, sum),
            describe(&[("p1", &p1), ("q1", &q1), ("p2", &p2), ("q2", &q2)]),
        ))
    });
    let identity = instances(seed ^ 0x1d, samples, |rng, _| {
        let n = rng.random_range(1..=4);
        let p = random_sparse_prob_vec(rng, n, 1_000_000, 0.2);
        let v = d.evaluate(&p, &p).ok()?;
        Some((closeness(v, ExtReal::ZERO), describe(&[("p", &p)])))
    });
    let one = ProbVec::uniform(1).expect("n = 1");
    let e1 = ProbVec::point_mass(0, 2).expect("n = 2");
    let u2 = ProbVec::uniform(2).expect("n = 2");
    let norm = vec![
        d.evaluate(&one, &one)
            .ok()
            .map(|v| (closeness(v, ExtReal::ZERO), "D(1||1)".to_string())),
        d.evaluate(&e1, &u2).ok().map(|v| {
            (
                closeness(v, ExtReal::new(1.0).expect("finite")),
                "D(e1||u2)".to_string(),
            )
        }),
    ];
    vec![
        AxiomReport::from_margins("data-processing", tolerance, dpi),
        AxiomReport::from_margins("additivity", tolerance, additivity),
        AxiomReport::from_margins("identity", tolerance, identity),
        AxiomReport::from_margins("normalisation", tolerance, norm),
    ]
}

/// Spot checks of the properties a function of blocks needs to define a
/// divergence: Schur convexity and invariance under `r ↦ r ⊗ u^(k)`.
pub fn spot_check_schur_function(g: &dyn FunctionOfBlocks, samples: usize, seed: u64) -> Vec<AxiomReport> {
    let schur = instances(seed, samples, |rng, _| {
        let n = rng.random_range(2..=5);
        let p = random_sparse_prob_vec(rng, n, 1000, 0.2);
        let q = random_mixing(rng, n).apply(&p).ok()?;
        let gp = g.eval_blocks(&BlockVec::from_prob_vec(&p)).ok()?;
        let gq = g.eval_blocks(&BlockVec::from_prob_vec(&q)).ok()?;
        Some((gp - gq, describe(&[("p", &p), ("q", &q)])))
    });
    let tensor = instances(seed ^ 0x7e, samples, |rng, _| {
        let n = rng.random_range(1..=5);
        let k: u32 = rng.random_range(2..=7);
        let p = random_sparse_prob_vec(rng, n, 1000, 0.2);
        let r = BlockVec::from_prob_vec(&p);
        let kr = Rational::from_integer(k.into());
        let rk = BlockVec::new(
            r.blocks()
                .iter()
                .map(|(v, m)| (v / &kr, m * BigUint::from(k)))
                .collect(),
        )
        .ok()?;
        let a = g.eval_blocks(&r).ok()?;
        let b = g.eval_blocks(&rk).ok()?;
        Some((-(a - b).abs(), describe(&[("p", &p), ("k", &k)])))
    });
    vec![
        AxiomReport::from_margins("schur-convexity", DEFAULT_TOLERANCE, schur),
        AxiomReport::from_margins("tensor-invariance", DEFAULT_TOLERANCE, tensor),
    ]
}

/// A random convex mixture of three permutation matrices.
fn random_mixing(rng: &mut InstanceRng, n: usize) -> Channel {
    let weights = random_prob_vec(rng, 3, 100, false);
    let mut rows = vec![vec![Rational::zero(); n]; n];
    for w in weights.entries() {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        for (i, &j) in perm.iter().enumerate() {
            rows[i][j] += w;
        }
    }
    Channel::from_trusted(rows)
}

/// `2^{-k}` for `k = 3..=12`.
pub fn default_schedule() -> Vec<f64> {
    (3..=12).map(|k| 0.5f64.powi(k)).collect()
}

/// Values above this make the order estimate `+∞`.
pub const ORDER_CAP: f64 = 1e3;

#[derive(Clone, Debug, PartialEq)]
pub struct OrderEstimate {
    /// `2 min_ε f(ε)/ε²` in natural units, or `+∞` above [`ORDER_CAP`].
    /// A finite-schedule surrogate for the lower limit, which it bounds from
    /// above.
    pub value: f64,
    pub schedule: Vec<f64>,
    /// `2 f(ε)/ε²` for each schedule entry.
    pub ratios: Vec<f64>,
}

fn perturbed_binary(eps: &Rational) -> ProbVec {
    let half = rat(1, 2);
    ProbVec::from_trusted(vec![&half + eps * &half, &half - eps * &half])
}

/// Estimates the order of `D` from `f(ε) = D(u + εΔ ‖ u)`, `Δ = (1/2, -1/2)`.
pub fn order_parameter(d: &dyn DivergenceFn, schedule: &[f64]) -> Result<OrderEstimate> {
    if schedule.is_empty()
        || schedule.iter().any(|&e| !(e > 0.0 && e <= 1.0))
        || schedule.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(MajorError::DomainViolation(
            "schedule must decrease strictly within (0, 1]".into(),
        ));
    }
    let u = ProbVec::uniform(2)?;
    let mut ratios = Vec::with_capacity(schedule.len());
    for &e in schedule {
        let er = crate::rational::from_f64_exact(e)?;
        let f = d.evaluate(&perturbed_binary(&er), &u)?;
        ratios.push(2.0 * f.value() * LN_2 / (e * e));
    }
    let last = *ratios.last().expect("nonempty");
    let value = if last.is_nan() || last > ORDER_CAP {
        f64::INFINITY
    } else {
        ratios.iter().copied().fold(f64::INFINITY, f64::min)
    };
    Ok(OrderEstimate {
        value,
        schedule: schedule.to_vec(),
        ratios,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Faithfulness {
    NotFaithful,
    FaithfulEvidence,
}

impl Faithfulness {
    pub fn as_str(&self) -> &'static str {
        match self {
            Faithfulness::NotFaithful => "not-faithful",
            Faithfulness::FaithfulEvidence => "faithful-evidence",
        }
    }
}

/// Orders at or below this count as zero.
pub const ZERO_ORDER: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct FaithfulnessReport {
    pub verdict: Faithfulness,
    /// Distinct `p ≠ q` with equal supports and `D(p‖q) = 0`.
    pub witness: Option<(ProbVec, ProbVec)>,
    pub order: OrderEstimate,
    pub pairs_tested: usize,
    /// Smallest `D(p‖q)` seen over the tested pairs.
    pub smallest_value: f64,
}

/// Looks for a zero of `D` on distinct equal-support pairs and estimates the
/// order. Not faithful iff a zero is found or the order estimate vanishes.
pub fn classify_faithfulness(d: &dyn DivergenceFn, samples: usize, seed: u64) -> Result<FaithfulnessReport> {
    let found = instances(seed, samples, |rng, _| {
        let n = rng.random_range(2..=4);
        let size = rng.random_range(2..=n);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        let support = &idx[..size];
        let draw = |rng: &mut InstanceRng| {
            let sub = random_prob_vec(rng, size, 1000, true);
            let mut e = vec![Rational::zero(); n];
            for (k, &i) in support.iter().enumerate() {
                e[i] = sub.get(k).clone();
            }
            ProbVec::from_trusted(e)
        };
        let (p, q) = (draw(rng), draw(rng));
        if p == q {
            return None;
        }
        let v = d.evaluate(&p, &q).ok()?;
        Some((v.value(), p, q))
    });
    let tested: Vec<_> = found.into_iter().flatten().collect();
    let pairs_tested = tested.len();
    let smallest_value = tested.iter().map(|t| t.0).fold(f64::INFINITY, f64::min);
    let witness = tested.into_iter().find(|(v, _, _)| *v <= 0.0);
    let order = order_parameter(d, &default_schedule())?;
    let verdict = if witness.is_some() || order.value <= ZERO_ORDER {
        Faithfulness::NotFaithful
    } else {
        Faithfulness::FaithfulEvidence
    };
    Ok(FaithfulnessReport {
        verdict,
        witness: witness.map(|(_, p, q)| (p, q)),
        order,
        pairs_tested,
        smallest_value,
    })
}

/// Step of the central difference.
pub const SECOND_DIFFERENCE_STEP: (i64, i64) = (1, 10_000);

/// `(numeric, analytic)` second derivative of `ε ↦ D_α(u + εv ‖ u)` at zero,
/// in natural units; the analytic value is `α d |v|²`.
pub fn renyi_second_derivative_check(alpha: RenyiOrder, d: usize, v: &[Rational]) -> Result<(f64, f64)> {
    if v.len() != d {
        return Err(MajorError::DimensionMismatch {
            expected: d,
            found: v.len(),
        });
    }
    if !v.iter().sum::<Rational>().is_zero() {
        return Err(MajorError::DomainViolation("direction must sum to zero".into()));
    }
    let u = ProbVec::uniform(d)?;
    let h = rat(SECOND_DIFFERENCE_STEP.0, SECOND_DIFFERENCE_STEP.1);
    let at = |s: &Rational| -> Result<f64> {
        let entries: Vec<Rational> = u.entries().iter().zip(v).map(|(a, b)| a + s * b).collect();
        if entries.iter().any(|e| *e < Rational::zero()) {
            return Err(MajorError::DomainViolation("step leaves the simplex".into()));
        }
        Ok(renyi_divergence(alpha, &ProbVec::new(entries)?, &u)?.value())
    };
    let plus = at(&h)?;
    let minus = at(&-h.clone())?;
    let hf = crate::rational::to_f64(&h);
    let numeric = (plus + minus) / (hf * hf) * LN_2;
    let norm2: f64 = v.iter().map(|x| crate::rational::to_f64(&(x * x))).sum();
    let analytic = if alpha.is_infinite() {
        f64::INFINITY
    } else {
        alpha.value() * d as f64 * norm2
    };
    Ok((numeric, analytic))
}

#[cfg(test)]
mod tests {
    use num_traits::One;

    use super::*;
    use crate::divergences::{f_divergence, FKind, Pathological, Renyi};

    #[test]
    fn renyi_probe_is_clean() {
        let reports = probe_axioms(&Renyi(RenyiOrder::TWO), 200, 1, DEFAULT_TOLERANCE);
        for r in &reports {
            assert!(r.passed(), "{r:?}");
        }
        assert_eq!(
            reports,
            probe_axioms(&Renyi(RenyiOrder::TWO), 200, 1, DEFAULT_TOLERANCE)
        );
    }

    #[test]
    fn tv_is_not_additive() {
        let reports = probe_axioms(&f_divergence(FKind::Tv), 100, 3, DEFAULT_TOLERANCE);
        assert!(reports[0].passed());
        assert!(!reports[1].passed());
        assert!(reports[1].worst_margin < -DEFAULT_TOLERANCE);
    }

    #[test]
    fn orders() {
        for a in [0.5, 1.0, 2.0] {
            let est = order_parameter(&Renyi(RenyiOrder::new(a).unwrap()), &default_schedule()).unwrap();
            assert!((est.value - a).abs() <= 0.05 * a, "{a}: {est:?}");
        }
        let path = order_parameter(&Pathological, &default_schedule()).unwrap();
        assert_eq!(path.value, 0.0);
        let max = order_parameter(&Renyi(RenyiOrder::INFINITY), &default_schedule()).unwrap();
        assert!(max.value.is_infinite());
        assert!(order_parameter(&Pathological, &[0.1, 0.2]).is_err());
    }

    #[test]
    fn faithfulness() {
        let r = classify_faithfulness(&Pathological, 50, 0).unwrap();
        assert_eq!(r.verdict, Faithfulness::NotFaithful);
        let (p, q) = r.witness.unwrap();
        assert_ne!(p, q);
        assert_eq!(p.support(), q.support());
        let r = classify_faithfulness(&Renyi(RenyiOrder::ONE), 50, 0).unwrap();
        assert_eq!(r.verdict, Faithfulness::FaithfulEvidence);
        assert!(r.witness.is_none());
        let r = classify_faithfulness(&Renyi(RenyiOrder::ZERO), 50, 0).unwrap();
        assert_eq!(r.verdict, Faithfulness::NotFaithful);
    }

    #[test]
    fn second_derivative() {
        let (num, ana) = renyi_second_derivative_check(RenyiOrder::ONE, 2, &[rat(1, 2), rat(-1, 2)]).unwrap();
        assert_eq!(ana, 1.0);
        assert!((num - ana).abs() < 1e-3);
        let (num, ana) =
            renyi_second_derivative_check(RenyiOrder::TWO, 3, &[rat(1, 3), rat(0, 1), rat(-1, 3)]).unwrap();
        assert!((ana - 4.0 / 3.0).abs() < 1e-15);
        assert!((num - ana).abs() < 1e-3 * ana);
        let (num, ana) = renyi_second_derivative_check(RenyiOrder::ZERO, 2, &[rat(1, 2), rat(-1, 2)]).unwrap();
        assert_eq!(ana, 0.0);
        assert!(num.abs() <= 1e-6);
        assert!(renyi_second_derivative_check(RenyiOrder::ONE, 2, &[rat(1, 2), rat(1, 2)]).is_err());
        assert!(renyi_second_derivative_check(RenyiOrder::ONE, 2, &[rat(6000, 1), rat(-6000, 1)]).is_err());
    }

    #[test]
    fn schur_spot_checks() {
        struct Tv;
        impl FunctionOfBlocks for Tv {
            fn name(&self) -> String {
                "tv".into()
            }
            fn eval_blocks(&self, r: &BlockVec) -> Result<f64> {
                let n = crate::rational::from_biguint(&r.len());
                let s: Rational = r
                    .blocks()
                    .iter()
                    .map(|(v, m)| {
                        let d: Rational = v * &n - Rational::one();
                        crate::rational::from_biguint(m) * if d < Rational::zero() { -d } else { d }
                    })
                    .sum();
                Ok(crate::rational::to_f64(&(s / n)))
            }
        }
        for r in spot_check_schur_function(&Tv, 100, 2) {
            assert!(r.passed(), "{r:?}");
        }
    }
}
