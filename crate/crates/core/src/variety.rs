//! Ambient varieties, complete-intersection specifications and the memo
//! store keyed by canonical multidegrees.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::algebra::{mul_dims, BigradedDims, DiamondViolation, Dim, HodgeDiamond};
use crate::error::{HodgeError, Result};

/// Polarized ambient variety together with its tower of generic linear
/// sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmbientSpec {
    ProjectiveSpace { n: usize },
    Custom(CustomAmbient),
}

/// User-supplied ambient. `sections[r]` is the diamond of the intersection
/// of `r` generic hyperplane sections, down to the zero-dimensional one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CustomAmbient {
    pub id: String,
    pub dim: usize,
    /// Declared degree; must equal `h^{0,0}` of the last section.
    pub degree: Dim,
    pub sections: Vec<HodgeDiamond>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecViolation {
    SectionCount { expected: usize, found: usize },
    Chain { r: usize, expected: usize, found: usize },
    Diamond { r: usize, violation: DiamondViolation },
    /// Sections `r` and `r + 1` disagree in degree `k` below the middle of
    /// the smaller one.
    Lefschetz { r: usize, k: usize },
    Disconnected { r: usize },
    Degree { declared: Dim, found: Dim },
    ReservedId(String),
}

impl fmt::Display for SpecViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SectionCount { expected, found } => {
                write!(f, "expected {expected} sections, found {found}")
            }
            Self::Chain { r, expected, found } => {
                write!(f, "sections[{r}] has dim {found}, expected {expected}")
            }
            Self::Diamond { r, violation } => write!(f, "sections[{r}]: {violation}"),
            Self::Lefschetz { r, k } => {
                write!(f, "sections[{r}] and sections[{}] differ in degree {k}", r + 1)
            }
            Self::Disconnected { r } => write!(f, "sections[{r}] must have h^{{0,0}} = 1"),
            Self::Degree { declared, found } => {
                write!(f, "declared degree {declared} but last section has {found} points")
            }
            Self::ReservedId(id) => write!(f, "id {id:?} is reserved for projective spaces"),
        }
    }
}

pub fn projective_space_diamond(n: usize) -> HodgeDiamond {
    let table = (0..=2 * n)
        .map(|k| {
            if k % 2 == 0 {
                BigradedDims::single((k / 2) as i32, (k / 2) as i32, 1)
            } else {
                BigradedDims::new()
            }
        })
        .collect();
    HodgeDiamond::unchecked(n, table)
}

impl AmbientSpec {
    pub fn projective(n: usize) -> Self {
        Self::ProjectiveSpace { n }
    }

    /// Validated custom ambient.
    pub fn custom(ambient: CustomAmbient) -> Result<Self> {
        let spec = Self::Custom(ambient);
        let report = validate_custom_spec(&spec);
        if report.is_empty() {
            Ok(spec)
        } else {
            let msgs: Vec<String> = report.iter().map(|v| v.to_string()).collect();
            Err(HodgeError::Specification(msgs.join("; ")))
        }
    }

    pub fn id(&self) -> String {
        match self {
            Self::ProjectiveSpace { n } => format!("P{n}"),
            Self::Custom(c) => c.id.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::ProjectiveSpace { n } => *n,
            Self::Custom(c) => c.dim,
        }
    }
}

pub fn tower_section(ambient: &AmbientSpec, r: usize) -> Result<HodgeDiamond> {
    let m = ambient.dim();
    if r > m {
        return Err(HodgeError::Range { what: "section index", value: r as i64, lo: 0, hi: m as i64 });
    }
    Ok(match ambient {
        AmbientSpec::ProjectiveSpace { n } => projective_space_diamond(n - r),
        AmbientSpec::Custom(c) => c.sections[r].clone(),
    })
}

pub fn ambient_degree(ambient: &AmbientSpec) -> Dim {
    match ambient {
        AmbientSpec::ProjectiveSpace { .. } => 1,
        AmbientSpec::Custom(c) => c.sections.last().map(|s| s.h(0, 0)).unwrap_or(0),
    }
}

/// Bezout: number of points of a zero-dimensional complete intersection.
pub fn point_count(spec: &CiSpec) -> Result<Dim> {
    if spec.dim() != 0 {
        return Err(HodgeError::Dimension(format!(
            "point count needs a zero-dimensional intersection, got dim {}",
            spec.dim()
        )));
    }
    spec.degrees
        .iter()
        .try_fold(ambient_degree(&spec.ambient), |acc, &d| mul_dims(acc, d as Dim))
}

/// Empty report iff `ambient` satisfies every tower invariant. Projective
/// spaces are always valid.
pub fn validate_custom_spec(ambient: &AmbientSpec) -> Vec<SpecViolation> {
    let c = match ambient {
        AmbientSpec::ProjectiveSpace { .. } => return Vec::new(),
        AmbientSpec::Custom(c) => c,
    };
    let mut out = Vec::new();
    let m = c.dim;
    let id = c.id.as_str();
    if id.len() > 1 && id.starts_with('P') && id[1..].bytes().all(|b| b.is_ascii_digit()) {
        out.push(SpecViolation::ReservedId(c.id.clone()));
    }
    if c.sections.len() != m + 1 {
        out.push(SpecViolation::SectionCount { expected: m + 1, found: c.sections.len() });
        return out;
    }
    let chain_ok: Vec<bool> = c
        .sections
        .iter()
        .enumerate()
        .map(|(r, s)| {
            let ok = s.dim() == m - r;
            if !ok {
                out.push(SpecViolation::Chain { r, expected: m - r, found: s.dim() });
            }
            ok
        })
        .collect();
    for (r, s) in c.sections.iter().enumerate() {
        out.extend(s.violations().into_iter().map(|violation| SpecViolation::Diamond { r, violation }));
        if r < m && s.h(0, 0) != 1 {
            out.push(SpecViolation::Disconnected { r });
        }
    }
    for r in 0..m {
        if !(chain_ok[r] && chain_ok[r + 1]) {
            continue;
        }
        // iso below the middle of the smaller section
        for k in 0..(m - r - 1) {
            if c.sections[r].degree(k as i64) != c.sections[r + 1].degree(k as i64) {
                out.push(SpecViolation::Lefschetz { r, k });
            }
        }
    }
    let found = c.sections[m].h(0, 0);
    if found == 0 || found != c.degree {
        out.push(SpecViolation::Degree { declared: c.degree, found });
    }
    out
}

/// Smooth complete intersection of hypersurfaces of the given degrees in a
/// fixed ambient. Genericity and transversality are assumed, not checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiSpec {
    pub ambient: Arc<AmbientSpec>,
    pub degrees: Vec<u32>,
}

/// A subvariety that may be empty (dimension -1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subvariety {
    EmptyVariety,
    Ci(CiSpec),
}

impl CiSpec {
    pub fn new(ambient: Arc<AmbientSpec>, degrees: Vec<u32>) -> Result<Self> {
        if degrees.contains(&0) {
            return Err(HodgeError::Specification("degrees must be positive".into()));
        }
        if degrees.len() > ambient.dim() {
            return Err(HodgeError::Specification(format!(
                "{} hypersurfaces in a {}-dimensional ambient leave nothing",
                degrees.len(),
                ambient.dim()
            )));
        }
        Ok(Self { ambient, degrees })
    }

    pub fn in_projective(n: usize, degrees: &[u32]) -> Result<Self> {
        Self::new(Arc::new(AmbientSpec::projective(n)), degrees.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.ambient.dim() - self.degrees.len()
    }

    /// Cuts further by `extra`; empty when the result would have dimension -1.
    pub fn cut(&self, extra: &[u32]) -> Result<Subvariety> {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(extra);
        if degrees.len() == self.ambient.dim() + 1 {
            return Ok(Subvariety::EmptyVariety);
        }
        Self::new(self.ambient.clone(), degrees).map(Subvariety::Ci)
    }

    pub fn key(&self) -> MemoKey {
        let shift = self.degrees.iter().filter(|&&d| d == 1).count();
        let mut degrees: Vec<u32> = self.degrees.iter().copied().filter(|&d| d > 1).collect();
        degrees.sort_unstable();
        MemoKey { ambient: self.ambient.id(), shift, degrees }
    }

    /// Same variety with degree-1 factors dropped and sorted.
    pub fn normalized_degrees(&self) -> Vec<u32> {
        self.key().degrees
    }

    pub fn linear_shift(&self) -> usize {
        self.degrees.iter().filter(|&&d| d == 1).count()
    }

    /// Sum of non-linear degrees; with [`CiSpec::dim`] it orders the recursion.
    pub fn total_degree(&self) -> u64 {
        self.degrees.iter().filter(|&&d| d > 1).map(|&d| d as u64).sum()
    }
}

impl fmt::Display for CiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

/// Canonical memo key: ambient id, number of linear factors (a shift along
/// the tower) and the sorted remaining degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MemoKey {
    pub ambient: String,
    pub shift: usize,
    pub degrees: Vec<u32>,
}

impl fmt::Display for MemoKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ambient)?;
        if self.shift > 0 {
            write!(f, "+{}", self.shift)?;
        }
        let ds: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", ds.join(","))
    }
}

/// How a memo entry was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fill {
    LinearBase,
    PointCount,
    /// Middle degree by the degeneration formula with split `(d1, d2)` of
    /// `d`, other degrees by Lefschetz and duality.
    Middle { d: u32, d1: u32, d2: u32 },
}

impl fmt::Display for Fill {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LinearBase => write!(f, "linear base"),
            Self::PointCount => write!(f, "point count"),
            Self::Middle { d, d1, d2 } => {
                write!(f, "middle formula {d}={d1}+{d2}, Lefschetz fill")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct MemoEntry {
    pub dim: usize,
    pub diamond: Arc<HodgeDiamond>,
    pub fill: Fill,
    pub children: Vec<MemoKey>,
}

/// Write-once cache of computed diamonds. Readers run concurrently; a second
/// write of the same key keeps the first value.
#[derive(Debug, Default)]
pub struct MemoStore {
    entries: RwLock<HashMap<MemoKey, MemoEntry>>,
}

impl MemoStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &MemoKey) -> Option<Arc<HodgeDiamond>> {
        self.entries.read().unwrap().get(key).map(|e| e.diamond.clone())
    }

    pub fn entry(&self, key: &MemoKey) -> Option<MemoEntry> {
        self.entries.read().unwrap().get(key).cloned()
    }

    pub fn insert(&self, key: MemoKey, entry: MemoEntry) -> Arc<HodgeDiamond> {
        let mut map = self.entries.write().unwrap();
        let slot = map.entry(key).or_insert(entry);
        slot.diamond.clone()
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_spaces() {
        let p0 = projective_space_diamond(0);
        assert_eq!(p0, HodgeDiamond::points(1));
        let p4 = projective_space_diamond(4);
        assert!(p4.violations().is_empty());
        for p in 0..=4 {
            assert_eq!(p4.h(p, p), 1);
        }
        assert_eq!(p4.degree(3), BigradedDims::new());
        assert_eq!(p4.euler_characteristic().unwrap(), 5);
    }

    #[test]
    fn projective_tower() {
        let p4 = AmbientSpec::projective(4);
        for r in 0..=4 {
            assert_eq!(tower_section(&p4, r).unwrap(), projective_space_diamond(4 - r));
        }
        assert!(matches!(tower_section(&p4, 5), Err(HodgeError::Range { .. })));
        assert_eq!(ambient_degree(&AmbientSpec::projective(7)), 1);
    }

    #[test]
    fn bezout_counts() {
        assert_eq!(point_count(&CiSpec::in_projective(2, &[2, 3]).unwrap()).unwrap(), 6);
        assert_eq!(point_count(&CiSpec::in_projective(3, &[2, 2, 2]).unwrap()).unwrap(), 8);
        assert!(matches!(
            point_count(&CiSpec::in_projective(3, &[2, 2]).unwrap()),
            Err(HodgeError::Dimension(_))
        ));
    }

    #[test]
    fn too_many_degrees() {
        assert!(CiSpec::in_projective(2, &[2, 2, 2]).is_err());
        assert!(CiSpec::in_projective(2, &[0]).is_err());
        let curve = CiSpec::in_projective(2, &[3]).unwrap();
        assert_eq!(curve.cut(&[2]).unwrap().clone(), Subvariety::Ci(CiSpec::in_projective(2, &[3, 2]).unwrap()));
        assert_eq!(curve.cut(&[2, 2]).unwrap(), Subvariety::EmptyVariety);
        assert!(curve.cut(&[2, 2, 2]).is_err());
    }

    #[test]
    fn keys_are_canonical() {
        let a = CiSpec::in_projective(6, &[3, 1, 2, 1]).unwrap().key();
        let b = CiSpec::in_projective(6, &[1, 2, 3, 1]).unwrap().key();
        assert_eq!(a, b);
        assert_eq!(a.shift, 2);
        assert_eq!(a.degrees, vec![2, 3]);
        assert_eq!(a.to_string(), "P6+2[2,3]");
    }

    #[test]
    fn store_keeps_first_write() {
        let store = MemoStore::new();
        let key = CiSpec::in_projective(1, &[]).unwrap().key();
        let mk = |n| MemoEntry {
            dim: 0,
            diamond: Arc::new(HodgeDiamond::points(n)),
            fill: Fill::PointCount,
            children: vec![],
        };
        store.insert(key.clone(), mk(2));
        let kept = store.insert(key.clone(), mk(3));
        assert_eq!(kept.h(0, 0), 2);
        assert_eq!(store.len(), 1);
    }

    #[test]
    fn reserved_ids() {
        let spec = AmbientSpec::Custom(CustomAmbient {
            id: "P3".into(),
            dim: 0,
            degree: 1,
            sections: vec![HodgeDiamond::points(1)],
        });
        assert_eq!(validate_custom_spec(&spec), vec![SpecViolation::ReservedId("P3".into())]);
    }
}
