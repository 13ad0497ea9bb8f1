//! Dimension data of pure and mixed Hodge structures.
//!
//! Everything here is bookkeeping on finite tables `(p, q) -> dim`. No
//! cohomology classes are ever represented; a "Hodge structure" is just the
//! multiset of its Hodge types.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{HodgeError, Result};

/// Dimension of a cohomology group (or graded piece of one).
pub type Dim = u128;

pub(crate) fn add_dims(a: Dim, b: Dim) -> Result<Dim> {
    a.checked_add(b).ok_or(HodgeError::Overflow)
}

pub(crate) fn mul_dims(a: Dim, b: Dim) -> Result<Dim> {
    a.checked_mul(b).ok_or(HodgeError::Overflow)
}

/// Finite map `(p, q) -> dimension`. Zero entries are never stored, so two
/// tables are equal iff they have the same support and values.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BigradedDims {
    entries: BTreeMap<(i32, i32), Dim>,
}

impl BigradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table from `(p, q, value)` triples. Repeated keys are summed.
    pub fn from_entries<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i32, i32, Dim)>,
    {
        let mut t = Self::new();
        for (p, q, v) in entries {
            t.add_at(p, q, v)?;
        }
        Ok(t)
    }

    /// A single entry; `value = 0` gives the empty table.
    pub fn single(p: i32, q: i32, value: Dim) -> Self {
        let mut t = Self::new();
        if value > 0 {
            t.entries.insert((p, q), value);
        }
        t
    }

    pub fn get(&self, p: i32, q: i32) -> Dim {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn add_at(&mut self, p: i32, q: i32, value: Dim) -> Result<()> {
        if value == 0 {
            return Ok(());
        }
        let slot = self.entries.entry((p, q)).or_insert(0);
        *slot = add_dims(*slot, value)?;
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in lexicographic `(p, q)` order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, i32, Dim)> + '_ {
        self.entries.iter().map(|(&(p, q), &v)| (p, q, v))
    }

    pub fn total(&self) -> Result<Dim> {
        self.entries.values().try_fold(0, |acc, &v| add_dims(acc, v))
    }

    /// Tensor with the `s`-th power of the Tate structure `(1,1)`.
    pub fn tate_twist(&self, s: i32) -> Self {
        self.shifted(s, s)
    }

    /// Re-indexes every entry `(p, q) -> (p + dp, q + dq)`.
    pub fn shifted(&self, dp: i32, dq: i32) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .map(|(&(p, q), &v)| ((p + dp, q + dq), v))
                .collect(),
        }
    }

    /// `(p, q) -> (q, p)`.
    pub fn conjugate(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|(&(p, q), &v)| ((q, p), v)).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.iter().all(|(p, q, v)| self.get(q, p) == v)
    }

    /// Every entry lies on the line `p + q = weight`.
    pub fn is_pure_of_weight(&self, weight: i32) -> bool {
        self.iter().all(|(p, q, _)| p + q == weight)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (p, q, v) in other.iter() {
            out.add_at(p, q, v)?;
        }
        Ok(out)
    }

    /// Componentwise difference; any negative entry is an error naming `what`.
    pub fn checked_sub(&self, other: &Self, what: &str) -> Result<Self> {
        let mut out = self.clone();
        for (p, q, v) in other.iter() {
            let have = out.get(p, q);
            let left = have.checked_sub(v).ok_or_else(|| {
                HodgeError::Consistency(format!(
                    "{what}: h^{{{p},{q}}} would be negative ({have} - {v})"
                ))
            })?;
            if left == 0 {
                out.entries.remove(&(p, q));
            } else {
                out.entries.insert((p, q), left);
            }
        }
        Ok(out)
    }

    /// Drops every entry outside `0 <= p, q <= bound`.
    pub(crate) fn clamped(&self, bound: i32) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .filter(|(&(p, q), _)| (0..=bound).contains(&p) && (0..=bound).contains(&q))
                .map(|(&k, &v)| (k, v))
                .collect(),
        }
    }
}

impl fmt::Debug for BigradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|((p, q), v)| (format!("({p},{q})"), v)))
            .finish()
    }
}

/// One way a table of putative Hodge numbers fails to be a Hodge diamond.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiamondViolation {
    /// Degree list does not have length `2 * dim + 1`.
    DegreeCount { dim: usize, found: usize },
    /// Entry off the line `p + q = k` or outside `[0, dim]`.
    Support { k: usize, p: i32, q: i32 },
    /// `h^{p,q} != h^{q,p}`.
    Conjugation { k: usize, p: i32, q: i32 },
    /// `h^{p,q}` in degree `k` differs from `h^{n-p,n-q}` in degree `2n-k`.
    Duality { k: usize, p: i32, q: i32 },
    /// Degree-0 table not concentrated at `(0,0)` or zero there.
    DegreeZero,
}

impl fmt::Display for DiamondViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DegreeCount { dim, found } => {
                write!(f, "expected {} degree tables for dim {dim}, found {found}", 2 * dim + 1)
            }
            Self::Support { k, p, q } => write!(f, "entry ({p},{q}) not allowed in degree {k}"),
            Self::Conjugation { k, p, q } => {
                write!(f, "h^{{{p},{q}}} != h^{{{q},{p}}} in degree {k}")
            }
            Self::Duality { k, p, q } => write!(f, "duality fails at ({p},{q}) in degree {k}"),
            Self::DegreeZero => write!(f, "degree-0 table must be a positive multiple of (0,0)"),
        }
    }
}

/// Full cohomology table of a smooth projective variety of complex dimension
/// `dim`: one [`BigradedDims`] per degree `0..=2*dim`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HodgeDiamond {
    dim: usize,
    table: Vec<BigradedDims>,
}

impl HodgeDiamond {
    /// Validates every diamond invariant.
    pub fn new(dim: usize, table: Vec<BigradedDims>) -> Result<Self> {
        let d = Self::unchecked(dim, table);
        match d.violations().into_iter().next() {
            None => Ok(d),
            Some(v) => Err(HodgeError::InvalidDiamond(v.to_string())),
        }
    }

    /// No validation; pair with [`HodgeDiamond::violations`] when reading
    /// untrusted input.
    pub fn unchecked(dim: usize, table: Vec<BigradedDims>) -> Self {
        Self { dim, table }
    }

    /// `count` points.
    pub fn points(count: Dim) -> Self {
        Self { dim: 0, table: vec![BigradedDims::single(0, 0, count)] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Table of degree `k`; empty outside `[0, 2*dim]`.
    pub fn degree(&self, k: i64) -> BigradedDims {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.table.get(k))
            .cloned()
            .unwrap_or_default()
    }

    pub fn degrees(&self) -> impl Iterator<Item = (usize, &BigradedDims)> {
        self.table.iter().enumerate()
    }

    pub fn middle(&self) -> BigradedDims {
        self.degree(self.dim as i64)
    }

    pub fn h(&self, p: i32, q: i32) -> Dim {
        if p < 0 || q < 0 {
            return 0;
        }
        self.degree((p + q) as i64).get(p, q)
    }

    pub fn betti(&self, k: i64) -> Result<Dim> {
        self.degree(k).total()
    }

    pub fn violations(&self) -> Vec<DiamondViolation> {
        let n = self.dim;
        let mut out = Vec::new();
        if self.table.len() != 2 * n + 1 {
            out.push(DiamondViolation::DegreeCount { dim: n, found: self.table.len() });
            return out;
        }
        let ni = n as i32;
        for (k, t) in self.table.iter().enumerate() {
            for (p, q, v) in t.iter() {
                if p + q != k as i32 || !(0..=ni).contains(&p) || !(0..=ni).contains(&q) {
                    out.push(DiamondViolation::Support { k, p, q });
                    continue;
                }
                if p < q && t.get(q, p) != v || p > q && t.get(q, p) == 0 {
                    out.push(DiamondViolation::Conjugation { k, p, q });
                }
                if self.table[2 * n - k].get(ni - p, ni - q) != v {
                    out.push(DiamondViolation::Duality { k, p, q });
                }
            }
        }
        let h0 = &self.table[0];
        if h0.get(0, 0) == 0 || h0.iter().count() != 1 {
            out.push(DiamondViolation::DegreeZero);
        }
        out
    }

    /// Alternating sum of Betti numbers.
    pub fn euler_characteristic(&self) -> Result<i128> {
        let mut chi: i128 = 0;
        for (k, t) in self.degrees() {
            let b = i128::try_from(t.total()?).map_err(|_| HodgeError::Overflow)?;
            chi = if k % 2 == 0 { chi.checked_add(b) } else { chi.checked_sub(b) }
                .ok_or(HodgeError::Overflow)?;
        }
        Ok(chi)
    }

    /// The degree-`(2n-k)` table pushed through `(p,q) -> (n-p, n-q)`. For a
    /// valid diamond this is the degree-`k` table again.
    pub fn dual_reflect(&self, k: i64) -> Result<BigradedDims> {
        let n = self.dim as i64;
        if !(0..=2 * n).contains(&k) {
            return Err(HodgeError::Range { what: "degree", value: k, lo: 0, hi: 2 * n });
        }
        let ni = n as i32;
        Ok(BigradedDims {
            entries: self
                .degree(2 * n - k)
                .iter()
                .map(|(p, q, v)| ((ni - p, ni - q), v))
                .collect(),
        })
    }
}

impl fmt::Debug for HodgeDiamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HodgeDiamond")
            .field("dim", &self.dim)
            .field("table", &self.table)
            .finish()
    }
}

/// Weight-graded dimension data of a mixed Hodge structure on `H^degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightGradedMHS {
    degree: i32,
    pieces: Vec<(i32, BigradedDims)>,
}

impl WeightGradedMHS {
    /// Weights must be strictly increasing and each piece pure of its weight.
    pub fn new(degree: i32, pieces: Vec<(i32, BigradedDims)>) -> Result<Self> {
        if pieces.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(HodgeError::InvalidMhs("weights must be strictly increasing".into()));
        }
        if let Some((w, _)) = pieces.iter().find(|(w, d)| !d.is_pure_of_weight(*w)) {
            return Err(HodgeError::InvalidMhs(format!("piece of weight {w} is not pure")));
        }
        Ok(Self { degree, pieces })
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn pieces(&self) -> &[(i32, BigradedDims)] {
        &self.pieces
    }

    pub fn piece(&self, weight: i32) -> BigradedDims {
        self.pieces
            .iter()
            .find(|(w, _)| *w == weight)
            .map(|(_, d)| d.clone())
            .unwrap_or_default()
    }

    pub fn total_dim(&self) -> Result<Dim> {
        self.pieces.iter().try_fold(0, |acc, (_, d)| add_dims(acc, d.total()?))
    }

    pub fn pieces_symmetric(&self) -> bool {
        self.pieces.iter().all(|(_, d)| d.is_symmetric())
    }

    /// `p -> dim Gr_F^p`, summed over all weight pieces. Only `p` with a
    /// nonzero value appear.
    pub fn graded_f_dims(&self) -> Result<BTreeMap<i32, Dim>> {
        let mut out = BTreeMap::new();
        for (_, d) in &self.pieces {
            for (p, _, v) in d.iter() {
                let slot = out.entry(p).or_insert(0);
                *slot = add_dims(*slot, v)?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p2() -> HodgeDiamond {
        HodgeDiamond::new(
            2,
            vec![
                BigradedDims::single(0, 0, 1),
                BigradedDims::new(),
                BigradedDims::single(1, 1, 1),
                BigradedDims::new(),
                BigradedDims::single(2, 2, 1),
            ],
        )
        .unwrap()
    }

    fn elliptic() -> HodgeDiamond {
        HodgeDiamond::new(
            1,
            vec![
                BigradedDims::single(0, 0, 1),
                BigradedDims::from_entries([(1, 0, 1), (0, 1, 1)]).unwrap(),
                BigradedDims::single(1, 1, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn twist_examples() {
        let a = BigradedDims::single(1, 1, 19);
        assert_eq!(a.tate_twist(1), BigradedDims::single(2, 2, 19));
        assert_eq!(a.tate_twist(0), a);
        assert_eq!(BigradedDims::single(0, 0, 76).tate_twist(1), BigradedDims::single(1, 1, 76));
    }

    #[test]
    fn zero_is_not_stored() {
        let mut a = BigradedDims::single(0, 0, 0);
        assert!(a.is_empty());
        a.add_at(1, 1, 0).unwrap();
        assert!(a.is_empty());
        let b = BigradedDims::single(1, 1, 3);
        assert!(b.checked_sub(&b, "x").unwrap().is_empty());
    }

    #[test]
    fn negative_difference_is_error() {
        let a = BigradedDims::single(1, 1, 1);
        let b = BigradedDims::single(1, 1, 2);
        assert!(matches!(a.checked_sub(&b, "t"), Err(HodgeError::Consistency(_))));
    }

    #[test]
    fn negative_indices_survive_twists() {
        let a = BigradedDims::single(0, 0, 2).tate_twist(-1);
        assert_eq!(a.get(-1, -1), 2);
        assert_eq!(a.tate_twist(1).get(0, 0), 2);
    }

    #[test]
    fn dual_reflect_examples() {
        assert_eq!(p2().dual_reflect(4).unwrap(), BigradedDims::single(2, 2, 1));
        assert_eq!(HodgeDiamond::points(6).dual_reflect(0).unwrap(), BigradedDims::single(0, 0, 6));
        assert!(matches!(p2().dual_reflect(5), Err(HodgeError::Range { .. })));
        assert!(matches!(p2().dual_reflect(-1), Err(HodgeError::Range { .. })));
    }

    #[test]
    fn euler_examples() {
        assert_eq!(p2().euler_characteristic().unwrap(), 3);
        assert_eq!(elliptic().euler_characteristic().unwrap(), 0);
        assert_eq!(HodgeDiamond::points(6).euler_characteristic().unwrap(), 6);
    }

    #[test]
    fn violations_are_detected() {
        let bad = HodgeDiamond::unchecked(
            1,
            vec![
                BigradedDims::single(0, 0, 1),
                BigradedDims::from_entries([(1, 0, 2), (0, 1, 1)]).unwrap(),
                BigradedDims::single(1, 1, 1),
            ],
        );
        let v = bad.violations();
        assert!(v.iter().any(|v| matches!(v, DiamondViolation::Conjugation { .. })));
        assert!(HodgeDiamond::new(1, vec![]).is_err());
        let off_line = HodgeDiamond::unchecked(0, vec![BigradedDims::single(1, 0, 1)]);
        assert!(!off_line.violations().is_empty());
    }

    #[test]
    fn mhs_weights_must_increase() {
        let a = BigradedDims::single(1, 1, 1);
        assert!(WeightGradedMHS::new(2, vec![(2, a.clone()), (2, a.clone())]).is_err());
        assert!(WeightGradedMHS::new(2, vec![(3, a)]).is_err());
        let empty = WeightGradedMHS::new(3, vec![]).unwrap();
        assert!(empty.graded_f_dims().unwrap().is_empty());
        assert_eq!(empty.total_dim().unwrap(), 0);
    }

    fn table() -> impl Strategy<Value = BigradedDims> {
        proptest::collection::vec((-4i32..6, -4i32..6, 0u128..1000), 0..8)
            .prop_map(|v| BigradedDims::from_entries(v).unwrap())
    }

    proptest! {
        #[test]
        fn twists_compose(t in table(), a in -5i32..5, b in -5i32..5) {
            prop_assert_eq!(t.tate_twist(a).tate_twist(b), t.tate_twist(a + b));
            prop_assert_eq!(t.tate_twist(a).tate_twist(-a), t.clone());
            prop_assert_eq!(t.tate_twist(a).total().unwrap(), t.total().unwrap());
        }

        #[test]
        fn graded_f_is_additive(xs in proptest::collection::vec(0u128..50, 1..4),
                                ys in proptest::collection::vec(0u128..50, 1..4)) {
            // pieces of weight 1 and 3 built from symmetric pairs
            let mk = |w: i32, vs: &[u128]| {
                let mut t = BigradedDims::new();
                for (i, &v) in vs.iter().enumerate() {
                    let p = i as i32;
                    if 2 * p > w { break; }
                    t.add_at(p, w - p, v).unwrap();
                    if 2 * p != w { t.add_at(w - p, p, v).unwrap(); }
                }
                t
            };
            let a = WeightGradedMHS::new(2, vec![(1, mk(1, &xs))]).unwrap();
            let b = WeightGradedMHS::new(2, vec![(3, mk(3, &ys))]).unwrap();
            let both = WeightGradedMHS::new(2, vec![(1, mk(1, &xs)), (3, mk(3, &ys))]).unwrap();
            let mut sum = a.graded_f_dims().unwrap();
            for (p, v) in b.graded_f_dims().unwrap() {
                *sum.entry(p).or_insert(0) += v;
            }
            prop_assert_eq!(both.graded_f_dims().unwrap(), sum);
        }
    }
}
