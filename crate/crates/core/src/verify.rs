//! Cross-checks of the recursion against the oracles and its own internal
//! identities over a range of ambients and degrees.

use serde::Serialize;

use crate::algebra::{BigradedDims, HodgeDiamond};
use crate::diagnostics::{blowup_correction, union_euler_check};
use crate::engine::{Engine, PrimConvention, SplitPlan};
use crate::error::{HodgeError, Result};
use crate::oracles::{chi_y_ci, chi_y_self_check, griffiths_prim_dims, reconstruct_middle};
use crate::variety::{projective_space_diamond, CiSpec, Subvariety};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_degree: u32,
    pub max_ambient_dim: usize,
    pub convention: PrimConvention,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { max_degree: 6, max_ambient_dim: 5, convention: PrimConvention::Reduced }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, label: impl FnOnce() -> String, outcome: Result<Option<String>>) {
        self.cases += 1;
        match outcome {
            Ok(None) => {}
            Ok(Some(msg)) => self.failures.push(format!("{}: {msg}", label())),
            Err(e) => self.failures.push(format!("{}: {e}", label())),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerifyReport {
    pub max_degree: u32,
    pub max_ambient_dim: usize,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

/// Hypersurfaces of degree `2..=max_degree` in `P^2..=P^max_ambient_dim`.
pub fn hypersurfaces(cfg: &VerifyConfig) -> Vec<CiSpec> {
    let mut out = Vec::new();
    for m in 2..=cfg.max_ambient_dim {
        for d in 2..=cfg.max_degree {
            out.push(CiSpec::in_projective(m, &[d]).expect("hypersurface fits"));
        }
    }
    out
}

/// Nondecreasing multidegrees with entries `1..=max_entry` and length
/// `1..=max_len`, in `P^1..=P^max_ambient`.
pub fn complete_intersections(max_entry: u32, max_len: usize, max_ambient: usize) -> Vec<CiSpec> {
    fn extend(prefix: &mut Vec<u32>, len: usize, max_entry: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        let lo = prefix.last().copied().unwrap_or(1);
        for d in lo..=max_entry {
            prefix.push(d);
            extend(prefix, len, max_entry, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for m in 1..=max_ambient {
        for len in 1..=max_len.min(m) {
            let mut degs = Vec::new();
            extend(&mut Vec::new(), len, max_entry, &mut degs);
            out.extend(degs.into_iter().map(|ds| CiSpec::in_projective(m, &ds).expect("fits")));
        }
    }
    out
}

/// All splits `d1 <= d2` of the largest degree.
pub fn all_splits(spec: &CiSpec) -> Vec<(u32, u32)> {
    let d = spec.degrees.iter().copied().max().unwrap_or(0);
    (1..=d / 2).map(|d1| (d1, d - d1)).collect()
}

/// Diamond of a complete intersection in projective space predicted by the
/// χ_y oracle: forced `h^{p,p} = 1` off the middle plus the reconstructed
/// middle.
pub fn chi_y_diamond(degrees: &[u32], ambient: usize) -> Result<HodgeDiamond> {
    let n = ambient - degrees.len();
    let middle = reconstruct_middle(&chi_y_ci(degrees, ambient)?, n)?;
    let proj = projective_space_diamond(n);
    let table = (0..=2 * n)
        .map(|k| if k == n { middle.clone() } else { proj.degree(k as i64) })
        .collect();
    HodgeDiamond::new(n, table)
}

fn differ<T: std::fmt::Debug + PartialEq>(what: &str, engine: &T, oracle: &T) -> Option<String> {
    (engine != oracle).then(|| format!("{what}: engine {engine:?} != expected {oracle:?}"))
}

fn griffiths_check(e: &Engine, spec: &CiSpec) -> Result<Option<String>> {
    let n = spec.dim();
    let d = spec.degrees[0];
    let mut expected = griffiths_prim_dims(d, n as u32)?;
    if n.is_multiple_of(2) {
        expected.add_at(n as i32 / 2, n as i32 / 2, 1)?;
    }
    Ok(differ("middle", &e.compute_diamond(spec)?.middle(), &expected))
}

fn chi_y_check(e: &Engine, spec: &CiSpec) -> Result<Option<String>> {
    let m = spec.ambient.dim();
    let expected = chi_y_diamond(&spec.degrees, m)?;
    let got = e.compute_diamond(spec)?;
    if let Some(msg) = differ("diamond", &*got, &expected) {
        return Ok(Some(msg));
    }
    let chi = chi_y_ci(&spec.degrees, m)?;
    // χ_y at y = -1
    let top: i128 = chi.iter().enumerate().map(|(p, c)| if p % 2 == 0 { *c } else { -c }).sum();
    Ok(differ("euler characteristic", &got.euler_characteristic()?, &top))
}

fn split_check(e: &Engine, spec: &CiSpec) -> Result<Option<String>> {
    let mut reference: Option<(BigradedDims, Vec<(i32, u128)>)> = None;
    for (d1, d2) in all_splits(spec) {
        let plan = SplitPlan::new(spec, d1, d2)?;
        let middle = e.middle_hodge(&plan)?;
        let gr: Vec<(i32, u128)> = e.assemble_amhs(&plan)?.graded_f_dims()?.into_iter().collect();
        match &reference {
            None => reference = Some((middle, gr)),
            Some((m0, g0)) => {
                if let Some(msg) = differ(&format!("split {d1}+{d2} middle"), &middle, m0) {
                    return Ok(Some(msg));
                }
                if let Some(msg) = differ(&format!("split {d1}+{d2} Gr_F"), &gr, g0) {
                    return Ok(Some(msg));
                }
            }
        }
    }
    Ok(None)
}

/// Weight-`(n+1)` piece is the twist of weight `n-1`, total dimension is the
/// middle Betti number, every piece is conjugation-symmetric, and the Gr_F
/// collapse equals the middle Hodge numbers.
pub fn amhs_invariants(e: &Engine, plan: &SplitPlan) -> Result<Option<String>> {
    let n = plan.dim() as i32;
    let mhs = e.assemble_amhs(plan)?;
    if mhs.piece(n + 1) != mhs.piece(n - 1).tate_twist(1) {
        return Ok(Some("weight n+1 piece is not the twist of weight n-1".into()));
    }
    let diamond = e.compute_diamond(&plan.hypersurface)?;
    if let Some(msg) = differ("total dimension", &mhs.total_dim()?, &diamond.betti(n as i64)?) {
        return Ok(Some(msg));
    }
    if !mhs.pieces_symmetric() {
        return Ok(Some("a weight piece is not conjugation-symmetric".into()));
    }
    let collapse: Vec<(i32, u128)> = mhs.graded_f_dims()?.into_iter().collect();
    let middle: Vec<(i32, u128)> = diamond.middle().iter().map(|(p, _, v)| (p, v)).collect();
    Ok(differ("Gr_F collapse", &collapse, &middle))
}

fn high_degree(e: &Engine, plan: &SplitPlan) -> Result<Option<String>> {
    let r = e.high_degree_check(plan)?;
    Ok(r.mismatches.first().map(|m| {
        format!("H^{}: expected {:?}, found {:?}", m.k, m.expected, m.found)
    }))
}

fn union_euler(e: &Engine, plan: &SplitPlan) -> Result<Option<String>> {
    let v1 = e.compute_diamond(&plan.v_d1)?;
    let center = match &plan.i3 {
        Subvariety::EmptyVariety => None,
        Subvariety::Ci(c) => Some(e.compute_diamond(c)?),
    };
    let v2 = blowup_correction(&*e.compute_diamond(&plan.v_d2)?, center.as_deref())?;
    let i2 = e.compute_diamond(&plan.i2)?;
    let r = union_euler_check(&v1, &v2, &i2, &*e.compute_diamond(&plan.hypersurface)?)?;
    Ok((!r.passed()).then(|| {
        format!("components give {}, nearby fiber gives {}", r.from_components, r.from_nearby_fiber)
    }))
}

const GENUS_IDENTITY: &str = "genus identity g(d) = g(d1) + g(d2) + d1*d2 - 1";

fn plane_curve_genus(e: &Engine, d: u32) -> Result<Option<String>> {
    genus_identity(e, d).map_err(|err| HodgeError::Consistency(format!("{GENUS_IDENTITY}: {err}")))
}

fn genus_identity(e: &Engine, d: u32) -> Result<Option<String>> {
    let genus = |d: u32| -> Result<u128> {
        Ok(e.compute_diamond(&CiSpec::in_projective(2, &[d])?)?.h(1, 0))
    };
    let g = genus(d)?;
    let classical = ((d as u128 - 1) * (d as u128).saturating_sub(2)) / 2;
    if g != classical {
        return Ok(Some(format!("{GENUS_IDENTITY} violated: g({d}) = {g}, (d-1)(d-2)/2 = {classical}")));
    }
    for d1 in 1..=d / 2 {
        let d2 = d - d1;
        let rhs = genus(d1)? + genus(d2)? + (d1 * d2) as u128 - 1;
        if g != rhs {
            return Ok(Some(format!("{GENUS_IDENTITY} violated at {d}={d1}+{d2}: {g} != {rhs}")));
        }
    }
    Ok(None)
}

pub fn run_verify(cfg: &VerifyConfig) -> VerifyReport {
    let e = Engine::with_convention(cfg.convention);
    let hyper = hypersurfaces(cfg);
    let cis = complete_intersections(cfg.max_degree.min(4), 3, cfg.max_ambient_dim);

    let mut self_check = CheckOutcome::new("oracle-self-check");
    self_check.record(|| "chi_y on projective spaces and quadrics".into(), chi_y_self_check(cfg.max_ambient_dim).map(|_| None));

    let mut griffiths = CheckOutcome::new("oracle-griffiths");
    let mut splits = CheckOutcome::new("split-independence");
    let mut amhs = CheckOutcome::new("amhs-invariants");
    let mut high = CheckOutcome::new("high-degree");
    let mut euler = CheckOutcome::new("union-euler");
    for spec in &hyper {
        griffiths.record(|| spec.to_string(), griffiths_check(&e, spec));
        splits.record(|| spec.to_string(), split_check(&e, spec));
        for (d1, d2) in all_splits(spec) {
            let label = || format!("{spec} split {d1}+{d2}");
            let plan = SplitPlan::new(spec, d1, d2);
            amhs.record(label, plan.clone().and_then(|p| amhs_invariants(&e, &p)));
            high.record(label, plan.clone().and_then(|p| high_degree(&e, &p)));
            euler.record(label, plan.and_then(|p| union_euler(&e, &p)));
        }
    }

    let mut chi_y = CheckOutcome::new("oracle-chi-y");
    for spec in &cis {
        chi_y.record(|| spec.to_string(), chi_y_check(&e, spec));
        if spec.dim() >= 1 && spec.total_degree() > 0 {
            let plan = SplitPlan::canonical(spec);
            amhs.record(|| format!("{spec} canonical"), plan.clone().and_then(|p| amhs_invariants(&e, &p)));
            high.record(|| format!("{spec} canonical"), plan.and_then(|p| high_degree(&e, &p)));
        }
    }

    let mut genus = CheckOutcome::new("plane-curve-genus");
    for d in 1..=cfg.max_degree.max(2) {
        genus.record(|| format!("P2[{d}]"), plane_curve_genus(&e, d));
    }

    VerifyReport {
        max_degree: cfg.max_degree,
        max_ambient_dim: cfg.max_ambient_dim,
        checks: vec![self_check, griffiths, chi_y, splits, amhs, high, euler, genus],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_range_passes() {
        let r = run_verify(&VerifyConfig { max_degree: 4, max_ambient_dim: 4, ..Default::default() });
        for c in &r.checks {
            assert!(c.passed(), "{}: {:?}", c.name, c.failures);
            assert!(c.cases > 0, "{} ran no cases", c.name);
        }
    }

    #[test]
    fn injected_fault_names_the_genus_identity() {
        let r = run_verify(&VerifyConfig {
            max_degree: 4,
            max_ambient_dim: 3,
            convention: PrimConvention::FullH0,
        });
        assert!(!r.passed());
        let genus = r.checks.iter().find(|c| c.name == "plane-curve-genus").unwrap();
        assert!(!genus.passed());
        assert!(genus.failures.iter().all(|f| f.contains("g(d) = g(d1) + g(d2) + d1*d2 - 1")), "{:?}", genus.failures);
    }

    #[test]
    fn enumerations() {
        assert_eq!(all_splits(&CiSpec::in_projective(4, &[5]).unwrap()), vec![(1, 4), (2, 3)]);
        let cis = complete_intersections(2, 2, 2);
        let labels: Vec<String> = cis.iter().map(|c| c.to_string()).collect();
        assert_eq!(labels, ["P1+1[]", "P1[2]", "P2+1[]", "P2[2]", "P2+2[]", "P2+1[2]", "P2[2,2]"]);
    }
}
