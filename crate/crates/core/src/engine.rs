//! Hodge diamonds of complete intersections by degenerating a degree-`d`
//! hypersurface into the union of hypersurfaces of degrees `d1 + d2 = d`.
//!
//! For `V_d` of dimension `n` inside the ambient `A'` cut out by the other
//! degrees, write `I2 = V_{d1} ∩ V_{d2}` and `I3 = V_d ∩ V_{d1} ∩ V_{d2}`.
//! The limit mixed Hodge structure on `H^n(V_d)` has graded pieces
//!
//! ```text
//! Gr^W_{n-1} = H^{n-1}_prim(I2)
//! Gr^W_n     = H^n_prim(V_{d1}) ⊕ H^n_prim(V_{d2}) ⊕ H^{n-2}(I3)(-1)
//! Gr^W_{n+1} = H^{n-1}_prim(I2)(-1)
//! ```
//!
//! and its Hodge-filtration graded dimensions are the Hodge numbers of the
//! smooth `V_d`. Degrees away from the middle come from Lefschetz (below) and
//! Poincaré duality (above). Every subproblem is strictly smaller in
//! `(dimension, total degree)`, so the recursion terminates; all results are
//! memoized under [`MemoKey`].

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{BigradedDims, HodgeDiamond, WeightGradedMHS};
use crate::error::{HodgeError, Result};
use crate::variety::{
    point_count, tower_section, CiSpec, CustomAmbient, Fill, MemoEntry, MemoKey, MemoStore, Subvariety,
};

/// What "primitive" means for a zero-dimensional intersection.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PrimConvention {
    /// Cokernel of `H^0(ambient) -> H^0(points)`: `#points - 1`.
    #[default]
    Reduced,
    /// Full `H^0`. Wrong; kept so verification can show that it fails.
    FullH0,
}

/// Canonical split `d = 1 + (d - 1)`.
pub fn choose_split(d: u32) -> Result<(u32, u32)> {
    if d < 2 {
        return Err(HodgeError::Precondition(format!("cannot split degree {d}")));
    }
    Ok((1, d - 1))
}

/// One degeneration step `V_d => V_{d1} + V_{d2}` with its subproblems.
#[derive(Clone, Debug)]
pub struct SplitPlan {
    pub hypersurface: CiSpec,
    pub d: u32,
    pub d1: u32,
    pub d2: u32,
    pub v_d1: CiSpec,
    pub v_d2: CiSpec,
    pub i2: CiSpec,
    pub i3: Subvariety,
}

impl SplitPlan {
    /// Splits the largest degree of `spec` as `d1 + d2` (in either order).
    pub fn new(spec: &CiSpec, d1: u32, d2: u32) -> Result<Self> {
        let d = spec
            .degrees
            .iter()
            .copied()
            .max()
            .filter(|&d| d >= 2)
            .ok_or_else(|| HodgeError::Precondition(format!("{spec} has no degree >= 2 to split")))?;
        if spec.dim() == 0 {
            return Err(HodgeError::Precondition(format!("{spec} is zero-dimensional")));
        }
        if d1 == 0 || d2 == 0 || d1 + d2 != d {
            return Err(HodgeError::Precondition(format!("split {d1}+{d2} does not add up to {d}")));
        }
        let (d1, d2) = (d1.min(d2), d1.max(d2));
        let mut rest = spec.degrees.clone();
        let at = rest.iter().position(|&x| x == d).unwrap();
        rest.remove(at);
        let base = CiSpec::new(spec.ambient.clone(), rest)?;
        let as_ci = |s: Subvariety| match s {
            Subvariety::Ci(c) => Ok(c),
            Subvariety::EmptyVariety => {
                Err(HodgeError::Consistency(format!("unexpected empty subproblem of {spec}")))
            }
        };
        let plan = Self {
            hypersurface: spec.clone(),
            d,
            d1,
            d2,
            v_d1: as_ci(base.cut(&[d1])?)?,
            v_d2: as_ci(base.cut(&[d2])?)?,
            i2: as_ci(base.cut(&[d1, d2])?)?,
            i3: base.cut(&[d, d1, d2])?,
        };
        plan.check_well_founded()?;
        Ok(plan)
    }

    pub fn canonical(spec: &CiSpec) -> Result<Self> {
        let d = spec.degrees.iter().copied().max().unwrap_or(0);
        let (d1, d2) = choose_split(d)?;
        Self::new(spec, d1, d2)
    }

    pub fn dim(&self) -> usize {
        self.hypersurface.dim()
    }

    fn check_well_founded(&self) -> Result<()> {
        let order = |s: &CiSpec| (s.dim(), s.total_degree());
        let top = order(&self.hypersurface);
        let mut subs = vec![&self.v_d1, &self.v_d2, &self.i2];
        if let Subvariety::Ci(c) = &self.i3 {
            subs.push(c);
        }
        match subs.into_iter().find(|s| order(s) >= top) {
            Some(s) => Err(HodgeError::Consistency(format!(
                "subproblem {s} is not smaller than {}",
                self.hypersurface
            ))),
            None => Ok(()),
        }
    }

    fn children(&self) -> Vec<MemoKey> {
        let mut out = vec![self.v_d1.key(), self.v_d2.key(), self.i2.key()];
        if let Subvariety::Ci(c) = &self.i3 {
            out.push(c.key());
        }
        out.dedup();
        out
    }
}

/// The five summands of the middle-degree formula, each re-indexed onto the
/// line `p + q = n` so that `h^{p,n-p}(V_d)` is their sum at `(p, n-p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MiddleTerms {
    /// `H^{n-1}_prim(I2)`, contributing at `(p, q+1)`.
    pub i2_prim: BigradedDims,
    pub v_d1_prim: BigradedDims,
    pub v_d2_prim: BigradedDims,
    /// `H^{n-2}(I3)` twisted once.
    pub i3_twisted: BigradedDims,
    /// `H^{n-1}_prim(I2)` twisted once, contributing at `(p+1, q)`.
    pub i2_prim_twisted: BigradedDims,
}

impl MiddleTerms {
    pub fn as_array(&self) -> [&BigradedDims; 5] {
        [&self.i2_prim, &self.v_d1_prim, &self.v_d2_prim, &self.i3_twisted, &self.i2_prim_twisted]
    }

    pub fn sum(&self) -> Result<BigradedDims> {
        self.as_array()
            .into_iter()
            .try_fold(BigradedDims::new(), |acc, t| acc.checked_add(t))
    }
}

/// Fills a diamond of dimension `n` from its middle table: degrees below `n`
/// are the ambient's, degrees above by duality.
pub fn lefschetz_fill(ambient: &HodgeDiamond, n: usize, middle: &BigradedDims) -> Result<HodgeDiamond> {
    if !middle.is_symmetric() {
        return Err(HodgeError::Symmetry(format!("middle table {middle:?}")));
    }
    if !middle.is_pure_of_weight(n as i32) {
        return Err(HodgeError::Precondition(format!("middle table {middle:?} is not of weight {n}")));
    }
    if ambient.dim() < n {
        return Err(HodgeError::Dimension(format!(
            "ambient of dim {} cannot contain a {n}-dimensional section",
            ambient.dim()
        )));
    }
    let ni = n as i32;
    let mut table: Vec<BigradedDims> = (0..n).map(|k| ambient.degree(k as i64)).collect();
    table.push(middle.clone());
    for k in n + 1..=2 * n {
        table.push(reflect(&table[2 * n - k], ni)?);
    }
    HodgeDiamond::new(n, table)
}

// (p,q) -> (n-p, n-q)
fn reflect(t: &BigradedDims, n: i32) -> Result<BigradedDims> {
    BigradedDims::from_entries(t.iter().map(|(p, q, v)| (n - p, n - q, v)))
}

/// Kernel of the Lefschetz operator on degree `k >= dim`:
/// `h^{p,q}(H^k) - h^{p+1,q+1}(H^{k+2})`.
pub fn prim_above(diamond: &HodgeDiamond, k: i64) -> Result<BigradedDims> {
    if k < diamond.dim() as i64 {
        return Err(HodgeError::Precondition(format!(
            "prim_above needs k >= {}, got {k}",
            diamond.dim()
        )));
    }
    diamond
        .degree(k)
        .checked_sub(&diamond.degree(k + 2).tate_twist(-1), "primitive part above the middle")
}

/// Mismatch found by [`Engine::high_degree_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeMismatch {
    pub k: usize,
    pub expected: BigradedDims,
    pub found: BigradedDims,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HighDegreeReport {
    pub checked: Vec<usize>,
    pub mismatches: Vec<DegreeMismatch>,
}

impl HighDegreeReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Reachable part of the memo DAG below a root.
#[derive(Clone, Debug)]
pub struct Trace {
    pub root: MemoKey,
    pub nodes: BTreeMap<MemoKey, MemoEntry>,
}

impl Trace {
    /// Longest root-to-leaf path, counted in edges.
    pub fn depth(&self) -> usize {
        fn go(t: &Trace, k: &MemoKey, seen: &mut BTreeMap<MemoKey, usize>) -> usize {
            if let Some(&d) = seen.get(k) {
                return d;
            }
            let d = t.nodes[k]
                .children
                .iter()
                .map(|c| 1 + go(t, c, seen))
                .max()
                .unwrap_or(0);
            seen.insert(k.clone(), d);
            d
        }
        go(self, &self.root, &mut BTreeMap::new())
    }
}

/// Memoized recursion engine.
#[derive(Debug, Default)]
pub struct Engine {
    memo: MemoStore,
    convention: PrimConvention,
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_convention(convention: PrimConvention) -> Self {
        Self { memo: MemoStore::new(), convention }
    }

    pub fn memo(&self) -> &MemoStore {
        &self.memo
    }

    pub fn compute_diamond(&self, spec: &CiSpec) -> Result<Arc<HodgeDiamond>> {
        let key = spec.key();
        if let Some(d) = self.memo.get(&key) {
            return Ok(d);
        }
        let (diamond, fill, children) = if key.degrees.is_empty() {
            (tower_section(&spec.ambient, key.shift)?, Fill::LinearBase, Vec::new())
        } else if spec.dim() == 0 {
            (HodgeDiamond::points(point_count(spec)?), Fill::PointCount, Vec::new())
        } else {
            let plan = SplitPlan::canonical(spec)?;
            let diamond = self.diamond_via(&plan)?;
            let fill = Fill::Middle { d: plan.d, d1: plan.d1, d2: plan.d2 };
            (diamond, fill, plan.children())
        };
        if let Some(v) = diamond.violations().first() {
            return Err(HodgeError::Consistency(format!("computed diamond of {spec}: {v}")));
        }
        let entry = MemoEntry { dim: spec.dim(), diamond: Arc::new(diamond), fill, children };
        Ok(self.memo.insert(key, entry))
    }

    /// Diamond of `plan.hypersurface` through the given split, bypassing the
    /// memo for the top node.
    pub fn diamond_via(&self, plan: &SplitPlan) -> Result<HodgeDiamond> {
        let middle = self.middle_hodge(plan)?;
        let ambient = tower_section(&plan.hypersurface.ambient, 0)?;
        lefschetz_fill(&ambient, plan.dim(), &middle)
    }

    /// Middle-degree primitive cohomology: the cokernel of restriction from the
    /// ambient, as a componentwise difference.
    pub fn prim_middle(&self, spec: &CiSpec) -> Result<BigradedDims> {
        let m = spec.dim();
        let own = self.compute_diamond(spec)?.middle();
        if m == 0 && self.convention == PrimConvention::FullH0 {
            return Ok(own);
        }
        let ambient = tower_section(&spec.ambient, 0)?.degree(m as i64);
        own.checked_sub(&ambient, &format!("primitive middle cohomology of {spec}"))
    }

    fn i3_middle(&self, plan: &SplitPlan) -> Result<BigradedDims> {
        match &plan.i3 {
            Subvariety::EmptyVariety => Ok(BigradedDims::new()),
            Subvariety::Ci(c) => Ok(self.compute_diamond(c)?.middle()),
        }
    }

    pub fn middle_terms(&self, plan: &SplitPlan) -> Result<MiddleTerms> {
        let i2 = self.prim_middle(&plan.i2)?;
        Ok(MiddleTerms {
            i2_prim: i2.shifted(0, 1),
            v_d1_prim: self.prim_middle(&plan.v_d1)?,
            v_d2_prim: self.prim_middle(&plan.v_d2)?,
            i3_twisted: self.i3_middle(plan)?.tate_twist(1),
            i2_prim_twisted: i2.shifted(1, 0),
        })
    }

    /// Middle Hodge numbers of `plan.hypersurface`.
    pub fn middle_hodge(&self, plan: &SplitPlan) -> Result<BigradedDims> {
        let n = plan.dim() as i32;
        let out = self.middle_terms(plan)?.sum()?;
        if !out.is_symmetric() {
            return Err(HodgeError::Symmetry(format!("middle of {}: {out:?}", plan.hypersurface)));
        }
        if out.clamped(n) != out {
            return Err(HodgeError::Consistency(format!(
                "middle of {} has entries outside [0, {n}]",
                plan.hypersurface
            )));
        }
        Ok(out)
    }

    pub fn assemble_amhs(&self, plan: &SplitPlan) -> Result<WeightGradedMHS> {
        let n = plan.dim() as i32;
        let i2 = self.prim_middle(&plan.i2)?;
        let pure = self
            .prim_middle(&plan.v_d1)?
            .checked_add(&self.prim_middle(&plan.v_d2)?)?
            .checked_add(&self.i3_middle(plan)?.tate_twist(1))?;
        WeightGradedMHS::new(n, vec![(n - 1, i2.clone()), (n, pure), (n + 1, i2.tate_twist(1))])
    }

    /// Checks `H^k(V_d) = prim_above(I2, k-2)(-1) ⊕ H^{k-2}(I3)(-1)` for
    /// `n + 2 <= k <= 2n` against the computed diamond.
    pub fn high_degree_check(&self, plan: &SplitPlan) -> Result<HighDegreeReport> {
        let n = plan.dim();
        let vd = self.compute_diamond(&plan.hypersurface)?;
        let i2 = self.compute_diamond(&plan.i2)?;
        let i3 = match &plan.i3 {
            Subvariety::EmptyVariety => None,
            Subvariety::Ci(c) => Some(self.compute_diamond(c)?),
        };
        let mut report = HighDegreeReport::default();
        for k in n + 2..=2 * n {
            let from_i3 = i3.as_ref().map(|d| d.degree(k as i64 - 2)).unwrap_or_default();
            let expected = prim_above(&i2, k as i64 - 2)?.checked_add(&from_i3)?.tate_twist(1);
            let found = vd.degree(k as i64);
            report.checked.push(k);
            if expected != found {
                report.mismatches.push(DegreeMismatch { k, expected, found });
            }
        }
        Ok(report)
    }

    /// Custom ambient whose tower is `spec` cut by `0..=dim` further
    /// hyperplanes, computed through this engine.
    pub fn tower_of(&self, id: &str, spec: &CiSpec) -> Result<CustomAmbient> {
        let m = spec.dim();
        let sections = (0..=m)
            .map(|r| {
                let mut degrees = spec.degrees.clone();
                degrees.extend(std::iter::repeat_n(1, r));
                let cut = CiSpec::new(spec.ambient.clone(), degrees)?;
                Ok((*self.compute_diamond(&cut)?).clone())
            })
            .collect::<Result<Vec<_>>>()?;
        let degree = sections[m].h(0, 0);
        Ok(CustomAmbient { id: id.to_string(), dim: m, degree, sections })
    }

    /// The memoized subproblem DAG below `spec`, computing it if needed.
    pub fn trace(&self, spec: &CiSpec) -> Result<Trace> {
        self.compute_diamond(spec)?;
        let root = spec.key();
        let mut nodes = BTreeMap::new();
        let mut stack = vec![root.clone()];
        while let Some(k) = stack.pop() {
            if nodes.contains_key(&k) {
                continue;
            }
            let entry = self
                .memo
                .entry(&k)
                .ok_or_else(|| HodgeError::Consistency(format!("{k} missing from memo")))?;
            stack.extend(entry.children.iter().cloned());
            nodes.insert(k, entry);
        }
        Ok(Trace { root, nodes })
    }
}
