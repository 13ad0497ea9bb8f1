//! Classical Hodge-number computations for complete intersections in
//! projective space, independent of the degeneration recursion:
//!
//! * Griffiths residues: primitive middle Hodge numbers of a hypersurface as
//!   graded dimensions of the Jacobian ring of a Fermat polynomial.
//! * Hirzebruch–Riemann–Roch: the χ_y genus as an exact rational power series.
//! * Adjunction: the genus of a complete-intersection curve.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{BigradedDims, Dim};
use crate::error::{HodgeError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleSource {
    Griffiths,
    ChiY,
    Adjunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleValues {
    Dims(BigradedDims),
    Integer(i128),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub source: OracleSource,
    pub values: OracleValues,
    pub note: String,
}

impl fmt::Display for OracleSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Griffiths => "griffiths",
            Self::ChiY => "chi_y",
            Self::Adjunction => "adjunction",
        })
    }
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Monomials of degree `target` in `vars` variables with every exponent at
/// most `cap`, by inclusion–exclusion over the variables that exceed it.
pub fn capped_monomial_count(target: i64, vars: i64, cap: i64) -> BigInt {
    if target < 0 || cap < 0 {
        return BigInt::zero();
    }
    let mut total = BigInt::zero();
    for j in 0..=vars {
        let rest = target - j * (cap + 1);
        if rest < 0 {
            break;
        }
        let term = binomial(vars, j) * binomial(rest + vars - 1, vars - 1);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn to_dim(v: &BigInt) -> Result<Dim> {
    if v.is_negative() {
        return Err(HodgeError::Consistency(format!("negative count {v}")));
    }
    v.to_u128().ok_or(HodgeError::Overflow)
}

/// Primitive middle Hodge numbers `h^{n-q,q}_prim` of a smooth degree-`d`
/// hypersurface of dimension `n` in `P^{n+1}`.
pub fn griffiths_prim_dims(d: u32, n: u32) -> Result<BigradedDims> {
    if d < 1 || n < 1 {
        return Err(HodgeError::Precondition(format!("griffiths oracle needs d, n >= 1 (got {d}, {n})")));
    }
    let (d, n) = (d as i64, n as i64);
    let mut out = BigradedDims::new();
    for q in 0..=n {
        let target = (q + 1) * d - (n + 2);
        let count = capped_monomial_count(target, n + 2, d - 2);
        out.add_at((n - q) as i32, q as i32, to_dim(&count)?)?;
    }
    Ok(out)
}

/// Truncated power series in one variable with exact rational coefficients.
#[derive(Clone, Debug, PartialEq)]
struct Series(Vec<BigRational>);

impl Series {
    fn from_fn(len: usize, f: impl Fn(usize) -> BigRational) -> Self {
        Self((0..len).map(f).collect())
    }

    fn mul(&self, other: &Self) -> Self {
        let len = self.0.len();
        let mut out = vec![BigRational::zero(); len];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        Self(out)
    }

    fn inverse(&self) -> Result<Self> {
        let len = self.0.len();
        let c0 = &self.0[0];
        if c0.is_zero() {
            return Err(HodgeError::Consistency("series with zero constant term".into()));
        }
        let mut out = vec![BigRational::zero(); len];
        out[0] = c0.recip();
        for k in 1..len {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                acc += &self.0[i] * &out[k - i];
            }
            out[k] = -acc / c0;
        }
        Ok(Self(out))
    }

    fn pow(&self, e: usize) -> Self {
        let mut acc = Self::from_fn(self.0.len(), |i| if i == 0 { BigRational::one() } else { BigRational::zero() });
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `f(x) -> f(c x)`.
    fn scale(&self, c: i64) -> Self {
        let c = BigRational::from_integer(BigInt::from(c));
        let mut pw = BigRational::one();
        let mut out = Vec::with_capacity(self.0.len());
        for a in &self.0 {
            out.push(a * &pw);
            pw *= &c;
        }
        Self(out)
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `x (1 + y e^{-x}) / (1 - e^{-x})` for a fixed rational `y`.
fn chi_y_characteristic(len: usize, y: &BigRational) -> Result<Series> {
    // (1 - e^{-x}) / x = sum (-1)^k x^k / (k+1)!
    let denom = Series::from_fn(len, |k| {
        let s = if k % 2 == 0 { 1 } else { -1 };
        BigRational::new(BigInt::from(s), factorial(k + 1))
    });
    let numer = Series::from_fn(len, |k| {
        let s = if k % 2 == 0 { 1 } else { -1 };
        let e = BigRational::new(BigInt::from(s), factorial(k));
        let v = y * e;
        if k == 0 {
            v + BigRational::one()
        } else {
            v
        }
    });
    Ok(numer.mul(&denom.inverse()?))
}

/// `χ_y` of the complete intersection evaluated at a rational `y != -1`.
fn chi_y_at(degrees: &[u32], ambient: usize, y: &BigRational) -> Result<BigRational> {
    let n = ambient - degrees.len();
    let len = n + 1;
    let q = chi_y_characteristic(len, y)?;
    // T_X = (N+1) O(1) - O - sum O(d_i)
    let mut integrand = q.pow(ambient + 1);
    let trivial = q.0[0].clone();
    let mut normal = Series::from_fn(len, |i| if i == 0 { trivial.clone() } else { BigRational::zero() });
    let mut degree = BigRational::one();
    for &d in degrees {
        normal = normal.mul(&q.scale(d as i64));
        degree *= rat(d as i64);
    }
    integrand = integrand.mul(&normal.inverse()?);
    Ok(&integrand.0[n] * degree)
}

/// `χ_p = Σ_q (-1)^q h^{p,q}` for `p = 0..=dim`, for the complete
/// intersection of the given degrees in `P^ambient`.
pub fn chi_y_ci(degrees: &[u32], ambient: usize) -> Result<Vec<i128>> {
    if degrees.len() > ambient {
        return Err(HodgeError::Dimension(format!(
            "{} hypersurfaces in P^{ambient}",
            degrees.len()
        )));
    }
    if degrees.contains(&0) {
        return Err(HodgeError::Precondition("degrees must be positive".into()));
    }
    let n = ambient - degrees.len();
    // χ_y has degree n in y: sample at y = 0..=n and interpolate exactly.
    let samples: Vec<(BigRational, BigRational)> = (0..=n as i64)
        .map(|y| chi_y_at(degrees, ambient, &rat(y)).map(|v| (rat(y), v)))
        .collect::<Result<_>>()?;
    let coeffs = interpolate(&samples);
    coeffs
        .iter()
        .enumerate()
        .map(|(p, c)| {
            if !c.is_integer() {
                return Err(HodgeError::Consistency(format!(
                    "chi_{p} of {degrees:?} in P^{ambient} is not an integer: {c}"
                )));
            }
            c.to_integer().to_i128().ok_or(HodgeError::Overflow)
        })
        .collect()
}

/// Coefficients (constant first) of the polynomial through `points`.
fn interpolate(points: &[(BigRational, BigRational)]) -> Vec<BigRational> {
    let len = points.len();
    let mut out = vec![BigRational::zero(); len];
    for (j, (xj, yj)) in points.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (m, (xm, _)) in points.iter().enumerate() {
            if m == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (i, b) in basis.iter().enumerate() {
                next[i + 1] += b;
                next[i] -= b * xm;
            }
            basis = next;
            denom *= xj - xm;
        }
        let scale = yj / denom;
        for (i, b) in basis.iter().enumerate() {
            out[i] += b * &scale;
        }
    }
    out
}

/// Middle Hodge numbers of an `n`-dimensional complete intersection in
/// projective space from its `χ_p`, after removing the `h^{p,p} = 1` classes
/// forced in every even degree other than `n`.
pub fn reconstruct_middle(chi: &[i128], n: usize) -> Result<BigradedDims> {
    if chi.len() != n + 1 {
        return Err(HodgeError::Dimension(format!("expected {} values of chi_p, got {}", n + 1, chi.len())));
    }
    let mut out = BigradedDims::new();
    for (p, &c) in chi.iter().enumerate() {
        let sign = |e: usize| if e.is_multiple_of(2) { 1i128 } else { -1 };
        let forced = if 2 * p != n { sign(p) } else { 0 };
        let h = sign(n - p) * (c - forced);
        if h < 0 {
            return Err(HodgeError::Consistency(format!("reconstructed h^{{{p},{}}} = {h}", n - p)));
        }
        out.add_at(p as i32, (n - p) as i32, h as Dim)?;
    }
    Ok(out)
}

/// Genus of the complete-intersection curve of the given degrees in
/// `P^ambient`: `2g - 2 = deg · (Σ d_i - ambient - 1)`.
pub fn genus_adjunction(degrees: &[u32], ambient: usize) -> Result<Dim> {
    if degrees.len() + 1 != ambient {
        return Err(HodgeError::Dimension(format!(
            "{} hypersurfaces in P^{ambient} do not cut out a curve",
            degrees.len()
        )));
    }
    let deg = degrees.iter().try_fold(1i128, |a, &d| a.checked_mul(d as i128)).ok_or(HodgeError::Overflow)?;
    let sum: i128 = degrees.iter().map(|&d| d as i128).sum();
    let twice = deg.checked_mul(sum - ambient as i128 - 1).ok_or(HodgeError::Overflow)? + 2;
    if twice < 0 || twice % 2 != 0 {
        return Err(HodgeError::Consistency(format!("2g = {twice} for {degrees:?}")));
    }
    Ok((twice / 2) as Dim)
}

/// Checks `chi_y_ci` on projective spaces and smooth quadrics, whose Hodge
/// numbers are known independently.
pub fn chi_y_self_check(max_dim: usize) -> Result<()> {
    let sign = |p: usize| if p.is_multiple_of(2) { 1i128 } else { -1 };
    for n in 0..=max_dim {
        let proj: Vec<i128> = (0..=n).map(sign).collect();
        let got = chi_y_ci(&[], n)?;
        if got != proj {
            return Err(HodgeError::Consistency(format!("chi_y(P^{n}) = {got:?}, expected {proj:?}")));
        }
        let quadric: Vec<i128> = (0..=n).map(|p| sign(p) * if 2 * p == n { 2 } else { 1 }).collect();
        let got = chi_y_ci(&[2], n + 1)?;
        if got != quadric {
            return Err(HodgeError::Consistency(format!("chi_y(Q^{n}) = {got:?}, expected {quadric:?}")));
        }
    }
    Ok(())
}

impl OracleResult {
    pub fn griffiths(d: u32, n: u32) -> Result<Self> {
        Ok(Self {
            source: OracleSource::Griffiths,
            values: OracleValues::Dims(griffiths_prim_dims(d, n)?),
            note: format!("Jacobian ring of the Fermat hypersurface of degree {d} in P^{}", n + 1),
        })
    }

    pub fn chi_y(degrees: &[u32], ambient: usize) -> Result<Self> {
        let n = ambient - degrees.len().min(ambient);
        Ok(Self {
            source: OracleSource::ChiY,
            values: OracleValues::Dims(reconstruct_middle(&chi_y_ci(degrees, ambient)?, n)?),
            note: format!("Riemann-Roch for {degrees:?} in P^{ambient}"),
        })
    }

    pub fn adjunction(degrees: &[u32], ambient: usize) -> Result<Self> {
        Ok(Self {
            source: OracleSource::Adjunction,
            values: OracleValues::Integer(genus_adjunction(degrees, ambient)? as i128),
            note: format!("genus of {degrees:?} in P^{ambient}"),
        })
    }
}
