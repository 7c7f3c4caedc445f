//! Majorisation of probability vectors, mixing-channel witnesses and the
//! Birkhoff decomposition of bistochastic matrices.

use num_traits::{One, Signed, Zero};

use crate::error::{MajorError, Result};
use crate::prob::{Channel, ProbVec};
use crate::rational::Rational;

/// A permutation `σ` of `{0, .., n-1}`, acting as the matrix with ones at `(i, σ(i))`.
pub type Permutation = Vec<usize>;

/// True iff `p ≻ q`: every partial sum of `p↓` dominates that of `q↓`.
/// The shorter vector is padded with zeros.
pub fn majorises(p: &ProbVec, q: &ProbVec) -> bool {
    let n = p.len().max(q.len());
    let a = p.padded(n).sorted_desc();
    let b = q.padded(n).sorted_desc();
    let mut sa = Rational::zero();
    let mut sb = Rational::zero();
    for (x, y) in a.iter().zip(&b) {
        sa += x;
        sb += y;
        if sa < sb {
            return false;
        }
    }
    true
}

/// Indices sorted by value descending, ties by index.
fn desc_order(v: &[Rational]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[b].cmp(&v[a]));
    idx
}

/// A mixing channel `W` with `p|supp · W = q`.
///
/// Rows are indexed by the support of `p` in increasing order, columns by the
/// symbols of `q`. `W` consists of rows of a square bistochastic matrix, so
/// [`Channel::is_mixing`] holds; it is itself bistochastic when `|supp p| = |q|`.
pub fn mixing_witness(p: &ProbVec, q: &ProbVec) -> Result<Channel> {
    if !majorises(p, q) {
        return Err(MajorError::NotMajorised);
    }
    let support = p.support();
    let m = q.len();
    // supp p ≤ m whenever p ≻ q.
    debug_assert!(support.len() <= m);
    let mut x: Vec<Rational> = support.iter().map(|&i| p.get(i).clone()).collect();
    x.resize(m, Rational::zero());

    let xo = desc_order(&x);
    let yo = desc_order(q.entries());
    let y: Vec<Rational> = yo.iter().map(|&i| q.get(i).clone()).collect();

    let mut b: Vec<Vec<Rational>> = Channel::identity(m).rows().to_vec();
    // x stays sorted along `xo`: each T-transform fixes one more coordinate.
    loop {
        let sx: Vec<&Rational> = xo.iter().map(|&i| &x[i]).collect();
        let Some(j) = (0..m).rev().find(|&s| *sx[s] > y[s]) else {
            break;
        };
        let k = (j + 1..m)
            .find(|&s| *sx[s] < y[s])
            .expect("majorisation leaves a deficit after every surplus");
        let delta = (sx[j] - &y[j]).min(&y[k] - sx[k]);
        let mu = &delta / (sx[j] - sx[k]);
        let (a, c) = (xo[j], xo[k]);
        x[a] -= &delta;
        x[c] += &delta;
        // B ← B·T with T = (1-μ)I + μ·swap(a, c).
        let lam = Rational::one() - &mu;
        for row in b.iter_mut() {
            let (ra, rc) = (row[a].clone(), row[c].clone());
            row[a] = &lam * &ra + &mu * &rc;
            row[c] = &mu * &ra + &lam * &rc;
        }
    }
    // x equals q up to the permutation xo[s] → yo[s].
    let mut perm = vec![0; m];
    for s in 0..m {
        perm[xo[s]] = yo[s];
    }
    let b = Channel::from_trusted(b).compose(&Channel::permutation(&perm))?;
    let rows = b.rows()[..support.len()].to_vec();
    Ok(Channel::from_trusted(rows))
}

/// Writes a square bistochastic `W` as `Σ w_i P_{σ_i}` with at most
/// `(n-1)² + 1` terms.
pub fn birkhoff_decompose(w: &Channel) -> Result<Vec<(Rational, Permutation)>> {
    let n = w.inputs();
    if !w.is_square() || !w.column_sums().iter().all(|c| c.is_one()) {
        return Err(MajorError::NotBistochastic);
    }
    let mut rest: Vec<Vec<Rational>> = w.rows().to_vec();
    let mut terms = Vec::new();
    while rest.iter().any(|r| r.iter().any(|e| e.is_positive())) {
        let perm = perfect_matching(&rest).ok_or(MajorError::NotBistochastic)?;
        let weight = (0..n).map(|i| rest[i][perm[i]].clone()).min().expect("n ≥ 1");
        for (i, &j) in perm.iter().enumerate() {
            rest[i][j] -= &weight;
        }
        terms.push((weight, perm));
    }
    Ok(terms)
}

/// A perfect matching on the positive entries, by augmenting paths.
fn perfect_matching(m: &[Vec<Rational>]) -> Option<Permutation> {
    let n = m.len();
    let mut col_owner: Vec<Option<usize>> = vec![None; n];
    for row in 0..n {
        let mut seen = vec![false; n];
        if !augment(m, row, &mut seen, &mut col_owner) {
            return None;
        }
    }
    let mut perm = vec![0; n];
    for (j, owner) in col_owner.iter().enumerate() {
        perm[owner.expect("perfect")] = j;
    }
    Some(perm)
}

fn augment(m: &[Vec<Rational>], row: usize, seen: &mut [bool], col_owner: &mut [Option<usize>]) -> bool {
    for j in 0..m.len() {
        if seen[j] || !m[row][j].is_positive() {
            continue;
        }
        seen[j] = true;
        let free = match col_owner[j] {
            None => true,
            Some(other) => augment(m, other, seen, col_owner),
        };
        if free {
            col_owner[j] = Some(row);
            return true;
        }
    }
    false
}
