use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use super::lorenz::{lorenz_curve, ratio_order};
use super::simplex::feasible_point;
use crate::error::{MajorError, Result};
use crate::prob::{check_same_len, BlockVec, Channel, ProbVec};
use crate::rational::{common_denominator, Rational};

/// A channel `W` with `pW = p2` and `qW = q2`, found by exact linear
/// feasibility; `None` if no such channel exists.
pub fn channel_witness(p: &ProbVec, q: &ProbVec, p2: &ProbVec, q2: &ProbVec) -> Result<Option<Channel>> {
    check_same_len(p, q)?;
    check_same_len(p2, q2)?;
    let (n, m) = (p.len(), p2.len());
    let var = |i: usize, j: usize| i * m + j;
    let mut a = Vec::with_capacity(n + 2 * m);
    let mut b = Vec::with_capacity(n + 2 * m);
    for i in 0..n {
        let mut row = vec![Rational::zero(); n * m];
        for j in 0..m {
            row[var(i, j)] = Rational::from_integer(1.into());
        }
        a.push(row);
        b.push(Rational::from_integer(1.into()));
    }
    for (src, dst) in [(p, p2), (q, q2)] {
        for j in 0..m {
            let mut row = vec![Rational::zero(); n * m];
            for i in 0..n {
                row[var(i, j)] = src.get(i).clone();
            }
            a.push(row);
            b.push(dst.get(j).clone());
        }
    }
    Ok(feasible_point(&a, &b).map(|x| Channel::from_trusted(x.chunks(m).map(<[Rational]>::to_vec).collect())))
}

/// The embedding `(p, q) ∼ (r, u^(k))` in run-length form.
///
/// `q` must have full support. `k` is the least common denominator of `q`;
/// blocks `p_x u^(k_x)` with `q_x = k_x / k` appear in ratio-descending order.
pub fn embed_blocks(p: &ProbVec, q: &ProbVec) -> Result<(BlockVec, BigUint)> {
    check_same_len(p, q)?;
    if !q.has_full_support() {
        return Err(MajorError::NotFullSupport);
    }
    let k = common_denominator(q.entries());
    let kr = Rational::from_integer(k.clone());
    let blocks = ratio_order(p, q)
        .into_iter()
        .map(|i| {
            let kx = (q.get(i) * &kr).to_integer();
            let value = p.get(i) / Rational::from_integer(kx.clone());
            (value, kx.to_biguint().expect("positive"))
        })
        .collect();
    Ok((BlockVec::new(blocks)?, k.to_biguint().expect("positive")))
}

/// The embedding `(p, q) ∼ (r, u^(k))` with `r` written out in full.
pub fn embed_to_uniform(p: &ProbVec, q: &ProbVec) -> Result<(ProbVec, usize)> {
    let (r, k) = embed_blocks(p, q)?;
    let k = k
        .to_usize()
        .ok_or_else(|| MajorError::DomainViolation("embedding too long".into()))?;
    Ok((r.to_prob_vec()?, k))
}

/// The channel spreading symbol `i` uniformly over its own block of `k_i`
/// outputs, so that `q W = u^(k)`. Blocks follow index order.
pub fn dilution_channel(q: &ProbVec) -> Result<(Channel, usize)> {
    if !q.has_full_support() {
        return Err(MajorError::NotFullSupport);
    }
    let k: BigInt = common_denominator(q.entries());
    let k = k
        .to_usize()
        .ok_or_else(|| MajorError::DomainViolation("dilution too wide".into()))?;
    let kr = Rational::from_integer(k.into());
    let widths: Vec<usize> = q
        .entries()
        .iter()
        .map(|x| (x * &kr).to_integer().to_usize().expect("fits"))
        .collect();
    let mut rows = Vec::with_capacity(q.len());
    let mut start = 0;
    for &w in &widths {
        let mut row = vec![Rational::zero(); k];
        let v = Rational::new(1.into(), w.into());
        for x in &mut row[start..start + w] {
            *x = v.clone();
        }
        start += w;
        rows.push(row);
    }
    Ok((Channel::from_trusted(rows), k))
}

/// True iff `(p, q)` and `(r, u^(k))` relatively majorise each other.
pub fn equivalent_to_uniform_blocks(p: &ProbVec, q: &ProbVec, r: &BlockVec) -> Result<bool> {
    let a = lorenz_curve(p, q)?;
    let b = super::lorenz::LorenzCurve::of_uniform_blocks(r);
    Ok(a.lies_below(&b) && b.lies_below(&a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::relmaj::relatively_majorises;

    fn pv(v: &[(i64, i64)]) -> ProbVec {
        ProbVec::new(v.iter().map(|&(a, b)| rat(a, b)).collect()).unwrap()
    }

    #[test]
    fn embeds_small_pair() {
        let (r, k) = embed_to_uniform(&pv(&[(1, 2), (1, 2)]), &pv(&[(1, 3), (2, 3)])).unwrap();
        assert_eq!(k, 3);
        assert_eq!(r, pv(&[(1, 2), (1, 4), (1, 4)]));
    }

    #[test]
    fn uniform_pair_embeds_to_itself() {
        let u = ProbVec::uniform(4).unwrap();
        assert_eq!(embed_to_uniform(&u, &u).unwrap(), (u.clone(), 4));
    }

    #[test]
    fn figure_one_embedding() {
        let p = pv(&[(1, 3), (1, 4), (1, 4), (1, 6)]);
        let q = pv(&[(1, 12), (1, 6), (1, 3), (5, 12)]);
        let (r, k) = embed_blocks(&p, &q).unwrap();
        assert_eq!(k, BigUint::from(12u32));
        let widths: Vec<u32> = r.blocks().iter().map(|(_, m)| m.to_u32().unwrap()).collect();
        assert_eq!(widths, vec![1, 2, 4, 5]);
        let (rv, _) = embed_to_uniform(&p, &q).unwrap();
        let u = ProbVec::uniform(12).unwrap();
        assert!(relatively_majorises(&p, &q, &rv, &u).unwrap());
        assert!(relatively_majorises(&rv, &u, &p, &q).unwrap());
        assert_eq!(
            lorenz_curve(&rv, &u).unwrap().normalised(),
            lorenz_curve(&p, &q).unwrap().normalised()
        );
        assert!(equivalent_to_uniform_blocks(&p, &q, &r).unwrap());
    }

    #[test]
    fn embedding_needs_full_support() {
        let q = pv(&[(1, 1), (0, 1)]);
        assert_eq!(embed_blocks(&q, &q), Err(MajorError::NotFullSupport));
        assert_eq!(dilution_channel(&q).map(|_| ()), Err(MajorError::NotFullSupport));
    }

    #[test]
    fn dilution_maps_to_uniform() {
        let q = pv(&[(1, 3), (2, 3)]);
        let (w, k) = dilution_channel(&q).unwrap();
        assert_eq!(k, 3);
        assert_eq!(
            w.rows(),
            &[
                vec![rat(1, 1), rat(0, 1), rat(0, 1)],
                vec![rat(0, 1), rat(1, 2), rat(1, 2)]
            ]
        );
        assert_eq!(w.apply(&q).unwrap(), ProbVec::uniform(3).unwrap());
        let (w, _) = dilution_channel(&ProbVec::uniform(3).unwrap()).unwrap();
        assert_eq!(w, Channel::identity(3));
    }

    #[test]
    fn witness_for_unreachable_pair_is_absent() {
        let u = ProbVec::uniform(2).unwrap();
        let w = channel_witness(&u, &u, &pv(&[(1, 1), (0, 1)]), &pv(&[(0, 1), (1, 1)])).unwrap();
        assert!(w.is_none());
    }

    #[test]
    fn witness_from_sharp_pair() {
        let e1 = pv(&[(1, 1), (0, 1)]);
        let e2 = pv(&[(0, 1), (1, 1)]);
        let p2 = pv(&[(1, 2), (1, 3), (1, 6)]);
        let q2 = pv(&[(0, 1), (1, 4), (3, 4)]);
        let w = channel_witness(&e1, &e2, &p2, &q2).unwrap().unwrap();
        assert_eq!(w.apply(&e1).unwrap(), p2);
        assert_eq!(w.apply(&e2).unwrap(), q2);
    }
}
