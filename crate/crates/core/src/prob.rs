//! Probability vectors, channels and the extended half-line.
//!
//! Everything structural is exact: entries are [`Rational`]s and validity
//! checks compare sums against one without rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{MajorError, Result};
use crate::rational::{format_rational, from_biguint, log2_abs, to_f64, Rational};

/// A probability vector on the alphabet `{0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProbVec {
    entries: Vec<Rational>,
}

impl ProbVec {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(MajorError::Empty);
        }
        if let Some(index) = entries.iter().position(|e| e.is_negative()) {
            return Err(MajorError::NegativeEntry { index });
        }
        let sum: Rational = entries.iter().sum();
        if !sum.is_one() {
            return Err(MajorError::NotNormalised {
                sum: format_rational(&sum),
            });
        }
        Ok(Self { entries })
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_trusted(entries: Vec<Rational>) -> Self {
        debug_assert!(Self::new(entries.clone()).is_ok());
        Self { entries }
    }

    /// The uniform distribution on `n` symbols.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(MajorError::Empty);
        }
        let e = Rational::new(1.into(), (n as u64).into());
        Ok(Self { entries: vec![e; n] })
    }

    /// The deterministic distribution with all mass on symbol `i` (zero-based).
    pub fn point_mass(i: usize, n: usize) -> Result<Self> {
        if i >= n {
            return Err(MajorError::IndexOutOfRange { index: i, n });
        }
        let mut entries = vec![Rational::zero(); n];
        entries[i] = Rational::one();
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.entries[i]
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.entries.iter().map(to_f64).collect()
    }

    /// Indices with strictly positive mass.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.entries[i].is_positive()).collect()
    }

    pub fn support_size(&self) -> usize {
        self.entries.iter().filter(|e| e.is_positive()).count()
    }

    pub fn has_full_support(&self) -> bool {
        self.entries.iter().all(|e| e.is_positive())
    }

    /// Entries in non-increasing order.
    pub fn sorted_desc(&self) -> Vec<Rational> {
        let mut v = self.entries.clone();
        v.sort_by(|a, b| b.cmp(a));
        v
    }

    pub fn max_entry(&self) -> &Rational {
        self.entries.iter().max().expect("nonempty")
    }

    /// Appends zeros up to length `n` (no-op if already that long).
    pub fn padded(&self, n: usize) -> Self {
        let mut entries = self.entries.clone();
        if entries.len() < n {
            entries.resize(n, Rational::zero());
        }
        Self { entries }
    }

    /// Keeps only the listed indices, which must carry all of the mass.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        Self::new(indices.iter().map(|&i| self.entries[i].clone()).collect())
    }

    /// Kronecker product `self ⊗ other`.
    pub fn tensor(&self, other: &ProbVec) -> ProbVec {
        let entries = self
            .entries
            .iter()
            .flat_map(|a| other.entries.iter().map(move |b| a * b))
            .collect();
        ProbVec { entries }
    }

    /// Largest ratio `p_i / q_i` over the support of `self`, `None` if some
    /// `q_i = 0` there (the ratio is infinite).
    pub fn max_ratio(&self, q: &ProbVec) -> Result<Option<Rational>> {
        check_same_len(self, q)?;
        let mut best: Option<Rational> = None;
        for (p, q) in self.entries.iter().zip(&q.entries) {
            if p.is_zero() {
                continue;
            }
            if q.is_zero() {
                return Ok(None);
            }
            let r = p / q;
            if best.as_ref().is_none_or(|b| r > *b) {
                best = Some(r);
            }
        }
        Ok(best)
    }

    /// `Σ_{i ∈ supp(self)} q_i`.
    pub fn mass_on_support_of(&self, q: &ProbVec) -> Result<Rational> {
        check_same_len(self, q)?;
        Ok(self
            .entries
            .iter()
            .zip(&q.entries)
            .filter(|(p, _)| p.is_positive())
            .map(|(_, q)| q.clone())
            .sum())
    }

    /// Largest absolute entry-wise difference.
    pub fn sup_distance(&self, other: &ProbVec) -> Result<Rational> {
        check_same_len(self, other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or_else(Rational::zero))
    }
}

impl fmt::Display for ProbVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub(crate) fn check_same_len(p: &ProbVec, q: &ProbVec) -> Result<()> {
    if p.len() != q.len() {
        return Err(MajorError::DimensionMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    Ok(())
}

pub fn make_prob_vec(entries: Vec<Rational>) -> Result<ProbVec> {
    ProbVec::new(entries)
}

pub fn uniform(n: usize) -> Result<ProbVec> {
    ProbVec::uniform(n)
}

pub fn point_mass(i: usize, n: usize) -> Result<ProbVec> {
    ProbVec::point_mass(i, n)
}

pub fn tensor(p: &ProbVec, q: &ProbVec) -> ProbVec {
    p.tensor(q)
}

/// Concatenates `weight · block` for each entry; the weights must form a
/// probability vector.
pub fn direct_sum_scaled(blocks: &[(Rational, ProbVec)]) -> Result<ProbVec> {
    if blocks.is_empty() {
        return Err(MajorError::Empty);
    }
    ProbVec::new(blocks.iter().map(|(w, _)| w.clone()).collect())?;
    let entries = blocks
        .iter()
        .flat_map(|(w, b)| b.entries.iter().map(move |e| w * e))
        .collect();
    Ok(ProbVec::from_trusted(entries))
}

/// A right-stochastic matrix: `rows[i][j]` is the probability of output `j`
/// given input `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Channel {
    rows: Vec<Vec<Rational>>,
    outputs: usize,
}

impl Channel {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(MajorError::Empty);
        }
        let outputs = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != outputs {
                return Err(MajorError::DimensionMismatch {
                    expected: outputs,
                    found: row.len(),
                });
            }
            if let Some(j) = row.iter().position(|e| e.is_negative()) {
                return Err(MajorError::NegativeEntry { index: i * outputs + j });
            }
            let sum: Rational = row.iter().sum();
            if !sum.is_one() {
                return Err(MajorError::NotNormalised {
                    sum: format_rational(&sum),
                });
            }
        }
        Ok(Self { rows, outputs })
    }

    pub(crate) fn from_trusted(rows: Vec<Vec<Rational>>) -> Self {
        debug_assert!(Self::new(rows.clone()).is_ok());
        let outputs = rows[0].len();
        Self { rows, outputs }
    }

    pub fn identity(n: usize) -> Self {
        Self::permutation(&(0..n).collect::<Vec<_>>())
    }

    /// The matrix sending input `i` to output `perm[i]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let rows = perm
            .iter()
            .map(|&j| {
                let mut row = vec![Rational::zero(); n];
                row[j] = Rational::one();
                row
            })
            .collect();
        Self { rows, outputs: n }
    }

    pub fn inputs(&self) -> usize {
        self.rows.len()
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn is_square(&self) -> bool {
        self.inputs() == self.outputs
    }

    pub fn column_sums(&self) -> Vec<Rational> {
        (0..self.outputs)
            .map(|j| self.rows.iter().map(|r| &r[j]).sum())
            .collect()
    }

    /// `p W`, exact.
    pub fn apply(&self, p: &ProbVec) -> Result<ProbVec> {
        if p.len() != self.inputs() {
            return Err(MajorError::DimensionMismatch {
                expected: self.inputs(),
                found: p.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.outputs];
        for (pi, row) in p.entries().iter().zip(&self.rows) {
            if pi.is_zero() {
                continue;
            }
            for (o, w) in out.iter_mut().zip(row) {
                if !w.is_zero() {
                    *o += pi * w;
                }
            }
        }
        Ok(ProbVec::from_trusted(out))
    }

    /// Matrix product `self · other` (apply `self` first).
    pub fn compose(&self, other: &Channel) -> Result<Channel> {
        if self.outputs != other.inputs() {
            return Err(MajorError::DimensionMismatch {
                expected: self.outputs,
                found: other.inputs(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut out = vec![Rational::zero(); other.outputs];
                for (w, orow) in row.iter().zip(&other.rows) {
                    if w.is_zero() {
                        continue;
                    }
                    for (o, x) in out.iter_mut().zip(orow) {
                        if !x.is_zero() {
                            *o += w * x;
                        }
                    }
                }
                out
            })
            .collect();
        Ok(Channel::from_trusted(rows))
    }

    /// Kronecker product of channels, acting on tensor-product inputs.
    pub fn tensor(&self, other: &Channel) -> Channel {
        let mut rows = Vec::with_capacity(self.inputs() * other.inputs());
        for a in &self.rows {
            for b in &other.rows {
                rows.push(a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect());
            }
        }
        Channel::from_trusted(rows)
    }

    /// True iff `u^(n) W = u^(m)`: every column sums to `n/m`.
    pub fn is_bistochastic(&self) -> bool {
        let target = Rational::new((self.inputs() as u64).into(), (self.outputs as u64).into());
        self.column_sums().iter().all(|c| *c == target)
    }

    /// True iff the channel is a block of rows of some square bistochastic
    /// matrix, i.e. every column sums to at most one. These are the maps that
    /// pad with zero-probability symbols and then mix.
    pub fn is_mixing(&self) -> bool {
        self.inputs() <= self.outputs && self.column_sums().iter().all(|c| *c <= Rational::one())
    }
}

pub fn apply_channel(p: &ProbVec, w: &Channel) -> Result<ProbVec> {
    w.apply(p)
}

pub fn is_bistochastic(w: &Channel) -> bool {
    w.is_bistochastic()
}

/// A value in `[0, +∞]`. Never NaN, never negative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal(0.0);
    pub const INFINITY: ExtReal = ExtReal(f64::INFINITY);

    /// Round-off below zero (down to `-1e-9`) is clamped to zero; anything
    /// more negative, or NaN, is an error.
    pub fn new(x: f64) -> Result<Self> {
        if x.is_nan() {
            return Err(MajorError::InvalidValue("NaN".into()));
        }
        if x < -1e-9 {
            return Err(MajorError::InvalidValue(format!("negative value {x}")));
        }
        Ok(ExtReal(x.max(0.0)))
    }

    pub fn is_infinite(&self) -> bool {
        self.0.is_infinite()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    /// The value as `f64`, with `+∞` mapped to `f64::INFINITY`.
    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn finite(&self) -> Option<f64> {
        self.0.is_finite().then_some(self.0)
    }

    /// `log2(r)` for a rational `r ≥ 1`, exact up to the final rounding.
    pub fn log2_of(r: &Rational) -> Result<Self> {
        if r.is_zero() {
            return Ok(Self::INFINITY);
        }
        Self::new(log2_abs(r))
    }

    /// `-log2(r)` for `r ∈ [0, 1]`; `r = 0` gives `+∞`.
    pub fn neg_log2_of(r: &Rational) -> Result<Self> {
        if r.is_zero() {
            return Ok(Self::INFINITY);
        }
        Self::new(-log2_abs(r))
    }
}

impl Add for ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: ExtReal) -> ExtReal {
        ExtReal(self.0 + rhs.0)
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Difference `a - b` on the extended half-line; `∞ - ∞` is reported as 0.
pub fn ext_diff(a: ExtReal, b: ExtReal) -> f64 {
    match (a.is_infinite(), b.is_infinite()) {
        (true, true) => 0.0,
        _ => a.value() - b.value(),
    }
}

/// A run-length encoded probability vector: `(value, multiplicity)` blocks.
///
/// Used for embeddings `⊕ p_x u^(k_x)` whose length can be far too large to
/// materialise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockVec {
    blocks: Vec<(Rational, BigUint)>,
}

/// Longest vector [`BlockVec::to_prob_vec`] will build.
pub const MAX_MATERIALISED_LEN: u64 = 1 << 20;

impl BlockVec {
    pub fn new(blocks: Vec<(Rational, BigUint)>) -> Result<Self> {
        if blocks.is_empty() || blocks.iter().all(|(_, m)| m.is_zero()) {
            return Err(MajorError::Empty);
        }
        if blocks.iter().any(|(v, _)| v.is_negative()) {
            return Err(MajorError::NegativeEntry { index: 0 });
        }
        let total: Rational = blocks.iter().map(|(v, m)| v * from_biguint(m)).sum();
        if !total.is_one() {
            return Err(MajorError::NotNormalised {
                sum: format_rational(&total),
            });
        }
        Ok(Self { blocks })
    }

    pub fn from_prob_vec(p: &ProbVec) -> Self {
        Self {
            blocks: p.entries().iter().map(|e| (e.clone(), BigUint::one())).collect(),
        }
    }

    pub fn blocks(&self) -> &[(Rational, BigUint)] {
        &self.blocks
    }

    /// Total number of entries.
    pub fn len(&self) -> BigUint {
        self.blocks.iter().map(|(_, m)| m.clone()).sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_prob_vec(&self) -> Result<ProbVec> {
        let len = self.len().to_u64().unwrap_or(u64::MAX);
        if len > MAX_MATERIALISED_LEN {
            return Err(MajorError::DomainViolation(format!(
                "vector of length {len} is too long to materialise"
            )));
        }
        let entries = self
            .blocks
            .iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v.clone(), m.to_usize().unwrap_or(0)))
            .collect();
        Ok(ProbVec::from_trusted(entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn pv(v: &[(i64, i64)]) -> ProbVec {
        ProbVec::new(v.iter().map(|&(a, b)| rat(a, b)).collect()).unwrap()
    }

    #[test]
    fn construction_and_errors() {
        assert_eq!(pv(&[(1, 3), (1, 4), (1, 4), (1, 6)]).len(), 4);
        assert_eq!(pv(&[(1, 1)]).entries(), &[rat(1, 1)]);
        assert!(matches!(
            ProbVec::new(vec![rat(1, 2), rat(1, 3)]),
            Err(MajorError::NotNormalised { .. })
        ));
        assert_eq!(
            ProbVec::new(vec![rat(3, 2), rat(-1, 2)]),
            Err(MajorError::NegativeEntry { index: 1 })
        );
        assert_eq!(ProbVec::new(vec![]), Err(MajorError::Empty));
    }

    #[test]
    fn uniform_and_point_mass() {
        assert_eq!(ProbVec::uniform(2).unwrap(), pv(&[(1, 2), (1, 2)]));
        assert_eq!(ProbVec::uniform(1).unwrap(), pv(&[(1, 1)]));
        assert_eq!(ProbVec::point_mass(0, 3).unwrap(), pv(&[(1, 1), (0, 1), (0, 1)]));
        assert_eq!(
            ProbVec::point_mass(3, 3),
            Err(MajorError::IndexOutOfRange { index: 3, n: 3 })
        );
    }

    #[test]
    fn tensor_and_direct_sum() {
        let p = pv(&[(1, 2), (1, 2)]);
        let q = pv(&[(1, 3), (2, 3)]);
        assert_eq!(p.tensor(&q), pv(&[(1, 6), (1, 3), (1, 6), (1, 3)]));
        assert_eq!(p.tensor(&pv(&[(1, 1)])), p);
        let r = direct_sum_scaled(&[
            (rat(1, 2), ProbVec::uniform(1).unwrap()),
            (rat(1, 2), ProbVec::uniform(2).unwrap()),
        ])
        .unwrap();
        assert_eq!(r, pv(&[(1, 2), (1, 4), (1, 4)]));
        assert!(matches!(
            direct_sum_scaled(&[(rat(1, 2), p.clone()), (rat(1, 3), p)]),
            Err(MajorError::NotNormalised { .. })
        ));
    }

    #[test]
    fn channel_application() {
        let w = Channel::new(vec![vec![rat(1, 2), rat(1, 2)], vec![rat(0, 1), rat(1, 1)]]).unwrap();
        assert_eq!(w.apply(&pv(&[(1, 1), (0, 1)])).unwrap(), pv(&[(1, 2), (1, 2)]));
        let mix = Channel::new(vec![vec![rat(1, 2), rat(1, 2)]; 2]).unwrap();
        let u = ProbVec::uniform(2).unwrap();
        assert_eq!(mix.apply(&u).unwrap(), u);
        let dilute = Channel::new(vec![
            vec![rat(1, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 2), rat(1, 2)],
        ])
        .unwrap();
        assert_eq!(
            dilute.apply(&pv(&[(1, 3), (2, 3)])).unwrap(),
            ProbVec::uniform(3).unwrap()
        );
        assert!(matches!(
            w.apply(&u.padded(3)),
            Err(MajorError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn bistochastic_detection() {
        let mix = Channel::new(vec![vec![rat(1, 2), rat(1, 2)]; 2]).unwrap();
        assert!(mix.is_bistochastic());
        let collapse = Channel::new(vec![vec![rat(1, 1), rat(0, 1)]; 2]).unwrap();
        assert!(!collapse.is_bistochastic());
        let pad = Channel::new(vec![vec![rat(1, 2), rat(1, 2)]]).unwrap();
        assert!(pad.is_bistochastic());
        assert!(pad.is_mixing());
    }

    #[test]
    fn channel_validation() {
        assert!(Channel::new(vec![vec![rat(1, 2), rat(1, 3)]]).is_err());
        assert!(Channel::new(vec![vec![rat(1, 1)], vec![rat(1, 2), rat(1, 2)]]).is_err());
        assert!(Channel::new(vec![vec![rat(3, 2), rat(-1, 2)]]).is_err());
    }

    #[test]
    fn ext_real_rejects_nan_and_negative() {
        assert!(ExtReal::new(f64::NAN).is_err());
        assert!(ExtReal::new(-1.0).is_err());
        assert_eq!(ExtReal::new(-1e-15).unwrap(), ExtReal::ZERO);
        assert!(ExtReal::neg_log2_of(&rat(0, 1)).unwrap().is_infinite());
        assert_eq!(ExtReal::neg_log2_of(&rat(1, 2)).unwrap().value(), 1.0);
    }

    #[test]
    fn block_vectors() {
        let b = BlockVec::new(vec![(rat(1, 2), BigUint::from(1u32)), (rat(1, 4), BigUint::from(2u32))]).unwrap();
        assert_eq!(b.len(), BigUint::from(3u32));
        assert_eq!(b.to_prob_vec().unwrap(), pv(&[(1, 2), (1, 4), (1, 4)]));
        assert!(BlockVec::new(vec![(rat(1, 2), BigUint::from(1u32))]).is_err());
    }
}
