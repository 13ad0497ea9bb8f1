//! Dimension-level checks on the geometry around the degeneration: the
//! circle bundle along the double locus, the small-resolution blow-up and
//! Euler characteristics of the special fiber.

use crate::algebra::{BigradedDims, HodgeDiamond, WeightGradedMHS};
use crate::engine::prim_above;
use crate::error::{HodgeError, Result};

/// Mixed Hodge dimensions of the unit normal circle bundle `T` over the
/// double locus `I2`, a `(2n-1)`-dimensional real manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleBundleCohomology {
    pub base: HodgeDiamond,
    pub degrees: Vec<WeightGradedMHS>,
}

impl CircleBundleCohomology {
    pub fn degree(&self, k: usize) -> Option<&WeightGradedMHS> {
        self.degrees.get(k)
    }

    pub fn betti(&self) -> Result<Vec<u128>> {
        self.degrees.iter().map(|m| m.total_dim()).collect()
    }

    pub fn euler_characteristic(&self) -> Result<i128> {
        let mut chi = 0i128;
        for (k, b) in self.betti()?.into_iter().enumerate() {
            let b = i128::try_from(b).map_err(|_| HodgeError::Overflow)?;
            chi += if k % 2 == 0 { b } else { -b };
        }
        Ok(chi)
    }
}

/// Gysin sequence with an ample Euler class: below the middle of `I2` only
/// the cokernel of the Lefschetz operator survives (weight `k`), from the
/// middle on only its kernel, shifted up by one twist (weight `k + 1`).
pub fn circle_bundle_cohomology(i2: &HodgeDiamond, n: usize) -> Result<CircleBundleCohomology> {
    if n == 0 || i2.dim() + 1 != n {
        return Err(HodgeError::Dimension(format!(
            "circle bundle over a base of dim {} for n = {n}",
            i2.dim()
        )));
    }
    let mut degrees = Vec::with_capacity(2 * n);
    for k in 0..2 * n {
        let ki = k as i64;
        let mhs = if k < n {
            let coker = i2
                .degree(ki)
                .checked_sub(&i2.degree(ki - 2).tate_twist(1), "circle bundle cokernel")?;
            WeightGradedMHS::new(k as i32, vec![(k as i32, coker)])?
        } else {
            let ker = prim_above(i2, ki - 1)?.tate_twist(1);
            WeightGradedMHS::new(k as i32, vec![(k as i32 + 1, ker)])?
        };
        degrees.push(mhs);
    }
    Ok(CircleBundleCohomology { base: i2.clone(), degrees })
}

/// `H^k(blow-up) = H^k(base) ⊕ H^{k-2}(center)(-1)` for a codimension-two
/// center; `None` is the empty center.
pub fn blowup_correction(base: &HodgeDiamond, center: Option<&HodgeDiamond>) -> Result<HodgeDiamond> {
    let Some(center) = center else {
        return Ok(base.clone());
    };
    if center.dim() + 2 != base.dim() {
        return Err(HodgeError::Dimension(format!(
            "center of dim {} in a base of dim {}",
            center.dim(),
            base.dim()
        )));
    }
    let table = base
        .degrees()
        .map(|(k, t)| t.checked_add(&center.degree(k as i64 - 2).tate_twist(1)))
        .collect::<Result<Vec<BigradedDims>>>()?;
    HodgeDiamond::new(base.dim(), table)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionEulerReport {
    /// `χ(V_{d1}) + χ(Ṽ_{d2}) - χ(I2)`.
    pub from_components: i128,
    /// `χ(V_d) + χ(I2)`: the nearby fiber is the two open components glued
    /// along the circle bundle, and `χ(T) = 0`.
    pub from_nearby_fiber: i128,
}

impl UnionEulerReport {
    pub fn passed(&self) -> bool {
        self.from_components == self.from_nearby_fiber
    }
}

/// Mayer–Vietoris for the special fiber `V_{d1} ∪ Ṽ_{d2}` against the smooth
/// nearby fiber `V_d`.
pub fn union_euler_check(
    v1: &HodgeDiamond,
    v2_tilde: &HodgeDiamond,
    i2: &HodgeDiamond,
    nearby: &HodgeDiamond,
) -> Result<UnionEulerReport> {
    let n = nearby.dim();
    if v1.dim() != n || v2_tilde.dim() != n || i2.dim() + 1 != n {
        return Err(HodgeError::Dimension(format!(
            "components of dims {}, {}, double locus {} for a fiber of dim {n}",
            v1.dim(),
            v2_tilde.dim(),
            i2.dim()
        )));
    }
    let i2_chi = i2.euler_characteristic()?;
    Ok(UnionEulerReport {
        from_components: v1.euler_characteristic()? + v2_tilde.euler_characteristic()? - i2_chi,
        from_nearby_fiber: nearby.euler_characteristic()? + i2_chi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Engine;
    use crate::variety::{projective_space_diamond, CiSpec};

    fn ci(n: usize, ds: &[u32]) -> HodgeDiamond {
        (*Engine::new().compute_diamond(&CiSpec::in_projective(n, ds).unwrap()).unwrap()).clone()
    }

    fn dims(c: &CircleBundleCohomology) -> Vec<(i32, u128)> {
        c.degrees
            .iter()
            .map(|m| {
                let (w, d) = &m.pieces()[0];
                (*w, d.total().unwrap())
            })
            .collect()
    }

    #[test]
    fn hopf_pattern() {
        let t = circle_bundle_cohomology(&projective_space_diamond(1), 2).unwrap();
        assert_eq!(t.betti().unwrap(), vec![1, 0, 0, 1]);
        assert_eq!(t.degree(3).unwrap().piece(4), BigradedDims::single(2, 2, 1));
        assert_eq!(t.euler_characteristic().unwrap(), 0);
    }

    #[test]
    fn over_elliptic_curve() {
        let t = circle_bundle_cohomology(&ci(2, &[3]), 2).unwrap();
        assert_eq!(dims(&t), vec![(0, 1), (1, 2), (3, 2), (4, 1)]);
    }

    #[test]
    fn over_k3() {
        let t = circle_bundle_cohomology(&ci(4, &[3, 2]), 3).unwrap();
        let h2 = t.degree(2).unwrap().piece(2);
        assert_eq!(h2, BigradedDims::from_entries([(2, 0, 1), (1, 1, 19), (0, 2, 1)]).unwrap());
        assert_eq!(t.euler_characteristic().unwrap(), 0);
        assert!(circle_bundle_cohomology(&ci(4, &[3, 2]), 2).is_err());
    }

    #[test]
    fn weights_are_k_or_k_plus_one() {
        for (n, ds) in [(3, vec![2u32, 2]), (4, vec![3, 2]), (5, vec![2, 2, 3]), (4, vec![4, 4])] {
            let base = ci(n, &ds);
            let t = circle_bundle_cohomology(&base, base.dim() + 1).unwrap();
            for (k, m) in t.degrees.iter().enumerate() {
                for (w, _) in m.pieces() {
                    assert!(*w == k as i32 || *w == k as i32 + 1);
                }
            }
            assert_eq!(t.euler_characteristic().unwrap(), 0);
        }
    }

    #[test]
    fn blowups() {
        let q3 = ci(4, &[2]);
        assert_eq!(blowup_correction(&q3, None).unwrap(), q3);
        let curve = ci(4, &[5, 3, 2]);
        assert_eq!(curve.h(1, 0), 76);
        let b = blowup_correction(&q3, Some(&curve)).unwrap();
        assert_eq!((b.h(1, 1), b.h(2, 1), b.h(2, 2)), (2, 76, 2));
        let p2 = blowup_correction(&projective_space_diamond(2), Some(&HodgeDiamond::points(1))).unwrap();
        assert_eq!(p2.h(1, 1), 2);
        assert!(blowup_correction(&q3, Some(&HodgeDiamond::points(1))).is_err());
    }

    #[test]
    fn quintic_special_fiber() {
        let x3 = ci(4, &[3]);
        let x2 = blowup_correction(&ci(4, &[2]), Some(&ci(4, &[5, 3, 2]))).unwrap();
        let k3 = ci(4, &[3, 2]);
        let r = union_euler_check(&x3, &x2, &k3, &ci(4, &[5])).unwrap();
        assert_eq!(r.from_components, -6 - 146 - 24);
        assert!(r.passed());
    }

    #[test]
    fn two_planes_in_p3() {
        let p2 = projective_space_diamond(2);
        let blown = blowup_correction(&p2, Some(&HodgeDiamond::points(2))).unwrap();
        let r = union_euler_check(&p2, &blown, &projective_space_diamond(1), &ci(3, &[2])).unwrap();
        assert_eq!((r.from_components, r.from_nearby_fiber), (6, 6));
    }

    #[test]
    fn curve_case_has_no_blowup() {
        for d in 2..=9u32 {
            let v1 = projective_space_diamond(1);
            let v2 = ci(2, &[d - 1]);
            let i2 = HodgeDiamond::points((d - 1) as u128);
            assert!(union_euler_check(&v1, &v2, &i2, &ci(2, &[d])).unwrap().passed(), "d={d}");
        }
    }
}
