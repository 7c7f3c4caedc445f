mod common;

use std::sync::Arc;

use common::*;
use majorlab::divergences::{
    derived_max, derived_min, dual_relative_entropy, f_divergence, max_relative_entropy, min_relative_entropy,
    parse_divergence, renyi_divergence, DivergenceFn, DualClass, FKind, Pathological, Renyi, RenyiOrder,
};
use majorlab::prob::apply_channel;
use majorlab::{ExtReal, ProbVec};
use proptest::prelude::*;

fn grid() -> Vec<RenyiOrder> {
    let mut g: Vec<f64> = (0..=16).map(|i| i as f64 / 4.0).collect();
    g.push(f64::INFINITY);
    g.into_iter().map(|a| RenyiOrder::new(a).unwrap()).collect()
}

fn d(a: RenyiOrder, p: &ProbVec, q: &ProbVec) -> ExtReal {
    renyi_divergence(a, p, q).unwrap()
}

fn le(a: ExtReal, b: ExtReal, slack: f64) -> bool {
    b.is_infinite() || (a.is_finite() && a.value() <= b.value() + slack)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn monotone_in_order((p, q) in pair(1..=5)) {
        let vals: Vec<ExtReal> = grid().into_iter().map(|a| d(a, &p, &q)).collect();
        for w in vals.windows(2) {
            prop_assert!(le(w[0], w[1], 1e-9), "{:?}", vals);
        }
        prop_assert_eq!(vals[0], min_relative_entropy(&p, &q).unwrap());
        prop_assert_eq!(*vals.last().unwrap(), max_relative_entropy(&p, &q).unwrap());
    }

    #[test]
    fn matches_direct_formula(p in prob_vec(1..=5), q in positive_prob_vec(1..=5)) {
        let q = q.padded(p.len().max(q.len()));
        let p = p.padded(q.len());
        prop_assume!(q.has_full_support());
        for a in grid() {
            let v = d(a, &p, &q).value();
            prop_assert!((v - renyi_direct(a.value(), &p, &q)).abs() <= 1e-9);
        }
    }

    #[test]
    fn point_masses_give_surprisal(p in prob_vec(1..=6)) {
        for x in p.support() {
            let e = ProbVec::point_mass(x, p.len()).unwrap();
            let surprisal = -majorlab::rational::to_f64(p.get(x)).log2();
            for a in grid() {
                prop_assert!((d(a, &e, &p).value() - surprisal).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn data_processing((p, q) in pair(3..=3), w in channel(3, 2)) {
        let (pw, qw) = (apply_channel(&p, &w).unwrap(), apply_channel(&q, &w).unwrap());
        for a in grid() {
            prop_assert!(le(d(a, &pw, &qw), d(a, &p, &q), 1e-9));
        }
    }

    #[test]
    fn additive((p1, q1) in pair(1..=3), (p2, q2) in pair(1..=3)) {
        for a in grid() {
            let joint = d(a, &p1.tensor(&p2), &q1.tensor(&q2));
            let sum = d(a, &p1, &q1) + d(a, &p2, &q2);
            prop_assert_eq!(joint.is_infinite(), sum.is_infinite());
            if joint.is_finite() {
                prop_assert!((joint.value() - sum.value()).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn triangle(p in prob_vec(3..=3), t in positive_prob_vec(3..=3), q in positive_prob_vec(3..=3)) {
        let dmax = max_relative_entropy(&t, &q).unwrap();
        for a in grid() {
            prop_assert!(le(d(a, &p, &q), d(a, &p, &t) + dmax, 1e-9));
        }
    }

    #[test]
    fn continuity(p in prob_vec(3..=3), q in positive_prob_vec(3..=3), q2 in positive_prob_vec(3..=3)) {
        let min = q.to_f64_vec().into_iter().chain(q2.to_f64_vec()).fold(1.0, f64::min);
        let bound = (1.0 + sup_norm(&q, &q2) / min).log2();
        for a in grid() {
            let gap = (d(a, &p, &q).value() - d(a, &p, &q2).value()).abs();
            prop_assert!(gap <= bound + 1e-9);
        }
    }

    #[test]
    fn tv_matches_generator_sum(p in prob_vec(1..=5), q in positive_prob_vec(1..=5)) {
        let n = p.len().max(q.len());
        let (p, q) = (p.padded(n), q.padded(n));
        prop_assume!(q.has_full_support());
        let tv_g = f_divergence(FKind::Tv);
        let exact = tv_g.evaluate_exact(&p, &q).unwrap().unwrap();
        prop_assert_eq!(&exact, &tv_by_generator(&p, &q));
        prop_assert_eq!(exact, tv(&p, &q));
    }

    #[test]
    fn derived_bounds_sandwich_tv((p, q) in pair(2..=4)) {
        let tv_g = f_divergence(FKind::Tv);
        let v = tv_g.evaluate(&p, &q);
        prop_assume!(v.is_ok());
        let v = v.unwrap();
        let lo = derived_min(&tv_g, &p, &q).unwrap();
        let hi = derived_max(&tv_g, &p, &q).unwrap();
        prop_assert!(le(lo, v, 1e-9) && le(v, hi, 1e-9), "{lo} {v} {hi}");
    }
}

#[test]
fn boundary_conventions() {
    let p = pv(&[(1, 2), (1, 2), (0, 1)]);
    let q = pv(&[(0, 1), (1, 2), (1, 2)]);
    assert!(d(RenyiOrder::ONE, &p, &q).is_infinite());
    assert!(d(RenyiOrder::TWO, &p, &q).is_infinite());
    assert!((d(RenyiOrder::HALF, &p, &q).value() - 2.0).abs() < 1e-12);
    assert_eq!(d(RenyiOrder::ZERO, &p, &q).value(), 1.0);
    let disjoint = pv(&[(0, 1), (0, 1), (1, 1)]);
    assert!(d(RenyiOrder::ZERO, &p, &disjoint).is_infinite());
    assert!(d(RenyiOrder::HALF, &p, &disjoint).is_infinite());
}

#[test]
fn parsing_divergences() {
    for s in ["alpha:2", "alpha:inf", "kl", "min", "max", "path", "tv", "chi2"] {
        assert!(parse_divergence(s).is_ok(), "{s}");
    }
    assert!(parse_divergence("alpha:-1").is_err());
    assert!(parse_divergence("nope").is_err());
}

#[test]
fn duals() {
    let kl = dual_relative_entropy(Arc::new(Renyi(RenyiOrder::ONE))).unwrap();
    assert_eq!(kl.class, DualClass::Asymmetric);
    assert!(kl.s.is_infinite());
    let path = dual_relative_entropy(Arc::new(Pathological)).unwrap();
    assert_eq!(path.class, DualClass::Symmetric);
    let dmin = dual_relative_entropy(Arc::new(Renyi(RenyiOrder::ZERO))).unwrap();
    assert_eq!(dmin.class, DualClass::Pathological);
    assert!(dmin.dual.is_none());
}

#[test]
fn pathological_is_blind_inside_the_support() {
    let p = pv(&[(1, 3), (2, 3)]);
    let q = pv(&[(1, 2), (1, 2)]);
    assert_eq!(Pathological.evaluate(&p, &q).unwrap(), ExtReal::ZERO);
    let e = pv(&[(1, 1), (0, 1)]);
    assert_eq!(Pathological.evaluate(&e, &q).unwrap().value(), 1.0);
}
