//! Trumping and catalytic relative majorisation.
//!
//! The Rényi conditions range over a continuum of orders, so they are
//! semi-decided on a grid and reported as a three-valued verdict. A brute-force
//! catalyst search gives exact positive certificates.

use num_integer::Integer;
use rayon::prelude::*;

use crate::divergences::{renyi_divergence, RenyiOrder};
use crate::error::{MajorError, Result};
use crate::prob::{check_same_len, ext_diff, ExtReal, ProbVec};
use crate::rational::{log2_abs, Rational};
use crate::relmaj::relatively_majorises;

/// Below this a margin is a violation.
pub const FAIL_THRESHOLD: f64 = -1e-12;
/// At or above this a strict margin counts as satisfied.
pub const HOLD_THRESHOLD: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// Order at which a condition is violated; `0` stands for the limit
    /// `α → 0⁺`. `condition` is 1 for `D_α(p‖·)` and 2 for the reversed
    /// arguments.
    Alpha { alpha: f64, condition: u8 },
    /// A catalyst pair passing the exact Blackwell test.
    Catalyst { r: ProbVec, t: ProbVec },
}

#[derive(Clone, Debug, PartialEq)]
pub struct TriState {
    pub verdict: Verdict,
    /// Smallest slack over all checked inequalities.
    pub margin: f64,
    /// Present whenever the verdict is [`Verdict::Fails`].
    pub witness: Option<Witness>,
}

/// `t/(1-t)` for `t = i/(points+1)`, `i = 1..=points`, together with `0`
/// (the `α → 0⁺` limit), `1/2`, `1` and `∞`; sorted and deduplicated.
pub fn default_grid(points: usize) -> Vec<f64> {
    let mut g: Vec<f64> = (1..=points)
        .map(|i| {
            let t = i as f64 / (points + 1) as f64;
            t / (1.0 - t)
        })
        .chain([0.0, 0.5, 1.0, f64::INFINITY])
        .collect();
    g.sort_by(f64::total_cmp);
    g.dedup();
    g
}

pub const DEFAULT_GRID_POINTS: usize = 64;

/// One margin per condition at a single order.
struct Slack {
    alpha: f64,
    margins: [f64; 2],
}

fn diff(a: ExtReal, b: ExtReal) -> f64 {
    ext_diff(a, b)
}

fn summarise(slacks: Vec<Slack>, strict: bool) -> TriState {
    let mut worst = f64::INFINITY;
    let mut at = None;
    for s in &slacks {
        for (c, &m) in s.margins.iter().enumerate() {
            if m < worst {
                worst = m;
                at = Some(Witness::Alpha {
                    alpha: s.alpha,
                    condition: c as u8 + 1,
                });
            }
        }
    }
    let verdict = if worst < FAIL_THRESHOLD {
        Verdict::Fails
    } else if !strict || worst >= HOLD_THRESHOLD {
        Verdict::Holds
    } else {
        Verdict::Inconclusive
    };
    TriState {
        verdict,
        margin: worst,
        witness: if verdict == Verdict::Fails { at } else { None },
    }
}

/// Removes zeros and pads both vectors to the larger support size.
fn canonical_pair(p: &ProbVec, p2: &ProbVec) -> Result<(ProbVec, ProbVec)> {
    let a = p.restrict(&p.support())?;
    let b = p2.restrict(&p2.support())?;
    let n = a.len().max(b.len());
    Ok((a.padded(n), b.padded(n)))
}

fn min_entry(p: &ProbVec) -> &Rational {
    p.entries().iter().min().expect("nonempty")
}

/// `log2(max p / max p2)` exactly up to the final rounding.
fn max_ratio_margin(p: &ProbVec, p2: &ProbVec) -> f64 {
    log2_abs(&(p.max_entry() / p2.max_entry()))
}

/// Grid check of the strict Rényi conditions for `p` trumping `p2`:
/// `D_α(p‖u) > D_α(p2‖u)` and `D_α(u‖p) > D_α(u‖p2)` for every `α > 0`.
///
/// Zeros may be added or removed freely, so both vectors are first reduced
/// to their supports and padded to a common length, which makes one of them
/// full-support. Grid entry `0` evaluates the `α → 0⁺` limit of the
/// rescaled conditions.
pub fn trumps(p: &ProbVec, p2: &ProbVec, grid: &[f64]) -> Result<TriState> {
    let (a, b) = canonical_pair(p, p2)?;
    if a.sorted_desc() == b.sorted_desc() {
        return Err(MajorError::PreconditionViolated(
            "the two vectors coincide up to permutation".into(),
        ));
    }
    let n = a.len();
    let u = ProbVec::uniform(n)?;
    let slacks: Vec<Slack> = grid
        .par_iter()
        .map(|&alpha| -> Result<Slack> {
            let margins = if alpha == 0.0 {
                let (sa, sb) = (a.support_size(), b.support_size());
                let first = if sa != sb {
                    (sb as f64).log2() - (sa as f64).log2()
                } else {
                    diff(
                        renyi_divergence(RenyiOrder::ONE, &u, &a)?,
                        renyi_divergence(RenyiOrder::ONE, &u, &b)?,
                    )
                };
                let second = diff(
                    renyi_divergence(RenyiOrder::ONE, &a, &u)?,
                    renyi_divergence(RenyiOrder::ONE, &b, &u)?,
                );
                [first, second]
            } else if alpha.is_infinite() {
                let second = match (a.has_full_support(), b.has_full_support()) {
                    (true, true) => log2_abs(&(min_entry(&b) / min_entry(&a))),
                    (false, true) => f64::INFINITY,
                    (true, false) => f64::NEG_INFINITY,
                    (false, false) => 0.0,
                };
                [max_ratio_margin(&a, &b), second]
            } else {
                let order = RenyiOrder::new(alpha)?;
                [
                    diff(renyi_divergence(order, &a, &u)?, renyi_divergence(order, &b, &u)?),
                    diff(renyi_divergence(order, &u, &a)?, renyi_divergence(order, &u, &b)?),
                ]
            };
            Ok(Slack { alpha, margins })
        })
        .collect::<Result<_>>()?;
    Ok(summarise(slacks, true))
}

/// Grid check of `D_α(p‖q) ≥ D_α(p2‖q2)` and `D_α(q‖p) ≥ D_α(q2‖p2)` for
/// `α ≥ 1/2` and `α = ∞`. Requires `p` or `q` to have full support.
pub fn catalytic_relmaj(p: &ProbVec, q: &ProbVec, p2: &ProbVec, q2: &ProbVec, grid: &[f64]) -> Result<TriState> {
    check_same_len(p, q)?;
    check_same_len(p2, q2)?;
    if !p.has_full_support() && !q.has_full_support() {
        return Err(MajorError::PreconditionViolated(
            "either p or q must have full support".into(),
        ));
    }
    let mut orders: Vec<f64> = grid.iter().copied().filter(|&a| a >= 0.5).collect();
    if !orders.iter().any(|a| a.is_infinite()) {
        orders.push(f64::INFINITY);
    }
    let slacks: Vec<Slack> = orders
        .par_iter()
        .map(|&alpha| -> Result<Slack> {
            let o = RenyiOrder::new(alpha)?;
            Ok(Slack {
                alpha,
                margins: [
                    diff(renyi_divergence(o, p, q)?, renyi_divergence(o, p2, q2)?),
                    diff(renyi_divergence(o, q, p)?, renyi_divergence(o, q2, p2)?),
                ],
            })
        })
        .collect::<Result<_>>()?;
    Ok(summarise(slacks, false))
}

/// Exact check that `(p⊗r, q⊗t) ≻ (p2⊗r, q2⊗t)`.
pub fn verify_trumping_witness(
    p: &ProbVec,
    q: &ProbVec,
    p2: &ProbVec,
    q2: &ProbVec,
    r: &ProbVec,
    t: &ProbVec,
) -> Result<bool> {
    check_same_len(r, t)?;
    if !t.has_full_support() {
        return Err(MajorError::PreconditionViolated("t must have full support".into()));
    }
    relatively_majorises(&p.tensor(r), &q.tensor(t), &p2.tensor(r), &q2.tensor(t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalystSearch {
    /// `t` is uniform on the catalyst's alphabet; for uniform `q = q2` this
    /// is ordinary trumping.
    Plain,
    /// `t` ranges over the same rational grid as `r`.
    Free,
}

/// Positive compositions of `d` into `parts` parts in lexicographic order,
/// excluding those with a common factor shared with `d` (already seen with a
/// smaller denominator). With `non_increasing`, only sorted ones.
fn compositions(d: u64, parts: usize, non_increasing: bool) -> Vec<Vec<u64>> {
    fn rec(left: u64, parts: usize, cap: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>, ni: bool) {
        if parts == 1 {
            if left >= 1 && (!ni || left <= cap) {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let hi = left.saturating_sub(parts as u64 - 1);
        for x in 1..=hi.min(if ni { cap } else { hi }) {
            cur.push(x);
            rec(left - x, parts - 1, x, cur, out, ni);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, parts, d, &mut Vec::new(), &mut out, non_increasing);
    out.retain(|c| c.iter().fold(d, |g, &x| g.gcd(&x)) == 1);
    out
}

fn to_prob(c: &[u64]) -> ProbVec {
    let d: u64 = c.iter().sum();
    ProbVec::from_trusted(c.iter().map(|&x| Rational::new(x.into(), d.into())).collect())
}

/// Searches rational catalysts of dimension `≤ max_dim` with denominators
/// `≤ denominator_bound`. Returns the first `(r, t)` in enumeration order
/// (dimension, denominator, lexicographic) passing
/// [`verify_trumping_witness`]. Only non-increasing `r` are tried, which loses
/// nothing since permuting `r` and `t` jointly preserves the test.
pub fn brute_force_catalyst(
    p: &ProbVec,
    q: &ProbVec,
    p2: &ProbVec,
    q2: &ProbVec,
    max_dim: usize,
    denominator_bound: u64,
    mode: CatalystSearch,
) -> Result<Option<(ProbVec, ProbVec)>> {
    check_same_len(p, q)?;
    check_same_len(p2, q2)?;
    for dim in 1..=max_dim {
        let mut cands: Vec<(ProbVec, ProbVec)> = Vec::new();
        let ts: Vec<ProbVec> = match mode {
            CatalystSearch::Plain => vec![ProbVec::uniform(dim)?],
            CatalystSearch::Free => (1..=denominator_bound)
                .flat_map(|d| compositions(d, dim, false))
                .map(|c| to_prob(&c))
                .collect(),
        };
        for d in 1..=denominator_bound {
            for c in compositions(d, dim, true) {
                let r = to_prob(&c);
                for t in &ts {
                    cands.push((r.clone(), t.clone()));
                }
            }
        }
        let found = cands
            .into_par_iter()
            .map(|(r, t)| verify_trumping_witness(p, q, p2, q2, &r, &t).map(|ok| ok.then_some((r, t))))
            .find_first(|res| !matches!(res, Ok(None)));
        if let Some(res) = found {
            return res;
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majorisation::majorises;
    use crate::rational::rat;

    fn pv(v: &[(i64, i64)]) -> ProbVec {
        ProbVec::new(v.iter().map(|&(a, b)| rat(a, b)).collect()).unwrap()
    }

    fn pair() -> (ProbVec, ProbVec) {
        (
            pv(&[(1, 2), (1, 4), (1, 4), (0, 1)]),
            pv(&[(2, 5), (2, 5), (1, 10), (1, 10)]),
        )
    }

    #[test]
    fn grid_shape() {
        let g = default_grid(64);
        assert_eq!(g.len(), 64 + 4);
        assert_eq!(g[0], 0.0);
        assert!(g.last().unwrap().is_infinite());
    }

    #[test]
    fn compositions_enumerate() {
        assert_eq!(compositions(5, 2, true), vec![vec![3, 2], vec![4, 1]]);
        assert_eq!(compositions(4, 2, false), vec![vec![1, 3], vec![3, 1]]);
        assert_eq!(compositions(1, 1, true), vec![vec![1]]);
        assert!(compositions(2, 1, true).is_empty());
    }

    #[test]
    fn incomparable_pair_is_trumped() {
        let (p, p2) = pair();
        assert!(!majorises(&p, &p2));
        let c = pv(&[(3, 5), (2, 5)]);
        assert!(majorises(&p.tensor(&c), &p2.tensor(&c)));
        let u4 = ProbVec::uniform(4).unwrap();
        let u2 = ProbVec::uniform(2).unwrap();
        assert!(verify_trumping_witness(&p, &u4, &p2, &u4, &c, &u2).unwrap());
        let v = trumps(&p, &p2, &default_grid(DEFAULT_GRID_POINTS)).unwrap();
        assert_eq!(v.verdict, Verdict::Holds, "{v:?}");
        let found = brute_force_catalyst(&p, &u4, &p2, &u4, 2, 5, CatalystSearch::Plain).unwrap();
        let (r, t) = found.expect("catalyst exists");
        assert!(verify_trumping_witness(&p, &u4, &p2, &u4, &r, &t).unwrap());
    }

    #[test]
    fn reversed_pair_fails() {
        let (p, p2) = pair();
        let v = trumps(&p2, &p, &default_grid(DEFAULT_GRID_POINTS)).unwrap();
        assert_eq!(v.verdict, Verdict::Fails);
        assert!(matches!(v.witness, Some(Witness::Alpha { .. })));
        let p = pv(&[(1, 2), (1, 3), (1, 6)]);
        let u = ProbVec::uniform(3).unwrap();
        assert_eq!(trumps(&u, &p, &default_grid(8)).unwrap().verdict, Verdict::Fails);
        assert_eq!(trumps(&p, &u, &default_grid(8)).unwrap().verdict, Verdict::Holds);
        assert!(brute_force_catalyst(&u, &u, &p, &u, 3, 4, CatalystSearch::Plain)
            .unwrap()
            .is_none());
    }

    #[test]
    fn equal_vectors_rejected() {
        let p = pv(&[(1, 2), (1, 3), (1, 6)]);
        let p2 = pv(&[(1, 6), (1, 2), (1, 3), (0, 1)]);
        assert!(matches!(
            trumps(&p, &p2, &default_grid(4)),
            Err(MajorError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn trivial_catalyst_reduces_to_blackwell() {
        let p = pv(&[(1, 2), (1, 2)]);
        let q = pv(&[(1, 4), (3, 4)]);
        let one = pv(&[(1, 1)]);
        assert_eq!(
            verify_trumping_witness(&p, &q, &q, &p, &one, &one).unwrap(),
            relatively_majorises(&p, &q, &q, &p).unwrap()
        );
        assert!(matches!(
            verify_trumping_witness(&p, &q, &q, &p, &pv(&[(1, 1), (0, 1)]), &pv(&[(1, 1), (0, 1)])),
            Err(MajorError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn catalytic_conditions_follow_blackwell() {
        let p = pv(&[(1, 2), (1, 3), (1, 6)]);
        let q = pv(&[(1, 6), (1, 3), (1, 2)]);
        let u = ProbVec::uniform(3).unwrap();
        let v = catalytic_relmaj(&p, &q, &u, &u, &default_grid(16)).unwrap();
        assert_eq!(v.verdict, Verdict::Holds);
        let v = catalytic_relmaj(&u, &u, &p, &q, &default_grid(16)).unwrap();
        assert_eq!(v.verdict, Verdict::Fails);
        let e = pv(&[(1, 1), (0, 1), (0, 1)]);
        assert!(matches!(
            catalytic_relmaj(&e, &e, &p, &q, &default_grid(4)),
            Err(MajorError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn free_search_finds_identity_for_blackwell_pairs() {
        let p = pv(&[(1, 2), (1, 3), (1, 6)]);
        let q = pv(&[(1, 6), (1, 3), (1, 2)]);
        let u = ProbVec::uniform(3).unwrap();
        let (r, t) = brute_force_catalyst(&p, &q, &u, &u, 2, 3, CatalystSearch::Free)
            .unwrap()
            .unwrap();
        assert_eq!((r.len(), t.len()), (1, 1));
    }
}
