//! Exact phase-one simplex for `A x = b, x ≥ 0` over the rationals.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// Returns a nonnegative solution of `A x = b`, or `None` if there is none.
/// Rows with negative right-hand side are negated first. Bland's rule rules
/// out cycling.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let n = a.first().map_or(0, Vec::len);
    let width = n + rows;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(rows);
    let mut rhs: Vec<Rational> = Vec::with_capacity(rows);
    for (r, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut line: Vec<Rational> = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
        line.resize(width, Rational::zero());
        line[n + r] = Rational::from_integer(1.into());
        t.push(line);
        rhs.push(if flip { -bi } else { bi.clone() });
    }
    let mut basis: Vec<usize> = (n..width).collect();
    // Reduced costs of the auxiliary objective Σ artificials.
    let mut cost: Vec<Rational> = (0..width)
        .map(|j| {
            if j < n {
                -t.iter().map(|row| &row[j]).sum::<Rational>()
            } else {
                Rational::zero()
            }
        })
        .collect();

    while let Some(e) = (0..width).find(|&j| cost[j].is_negative()) {
        let mut pivot: Option<(usize, Rational)> = None;
        for r in 0..rows {
            if !t[r][e].is_positive() {
                continue;
            }
            let ratio = &rhs[r] / &t[r][e];
            let better = match &pivot {
                None => true,
                Some((pr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*pr]),
            };
            if better {
                pivot = Some((r, ratio));
            }
        }
        // The auxiliary problem is bounded below by zero.
        let (p, _) = pivot.expect("phase one is bounded");
        let inv = Rational::from_integer(1.into()) / &t[p][e];
        for x in t[p].iter_mut() {
            *x *= &inv;
        }
        rhs[p] *= &inv;
        let prow = t[p].clone();
        let prhs = rhs[p].clone();
        for r in 0..rows {
            if r == p || t[r][e].is_zero() {
                continue;
            }
            let f = t[r][e].clone();
            for (x, y) in t[r].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            rhs[r] -= &f * &prhs;
        }
        let f = cost[e].clone();
        for (x, y) in cost.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        basis[p] = e;
    }

    let mut x = vec![Rational::zero(); width];
    for (r, &j) in basis.iter().enumerate() {
        x[j] = rhs[r].clone();
    }
    if x[n..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    x.truncate(n);
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn finds_a_point() {
        // x + y = 1, x - y = 1/2.
        let a = vec![vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(-1, 1)]];
        let x = feasible_point(&a, &[rat(1, 1), rat(1, 2)]).unwrap();
        assert_eq!(x, vec![rat(3, 4), rat(1, 4)]);
    }

    #[test]
    fn detects_infeasibility() {
        // x + y = 1, x + y = 2.
        let a = vec![vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(1, 1)]];
        assert!(feasible_point(&a, &[rat(1, 1), rat(2, 1)]).is_none());
        // x = -1.
        assert!(feasible_point(&[vec![rat(1, 1)]], &[rat(-1, 1)]).is_none());
    }

    #[test]
    fn handles_redundant_rows() {
        let a = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        let x = feasible_point(&a, &[rat(2, 1), rat(4, 1)]).unwrap();
        assert_eq!(&x[0] + rat(2, 1) * &x[1], rat(2, 1));
    }
}
