//! Closed-form dimension and cohomology counts for Hirzebruch surfaces,
//! rational scrolls and their Hilbert schemes. Every function refuses inputs
//! outside the range where its formula is known to hold.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `χ(T_S)` for any rational scroll.
pub const CHI_TANGENT: i64 = 6;

fn domain(msg: String) -> Error {
    Error::Domain(msg)
}

/// The class `a·g + b·f` on `F_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClass {
    pub m: i64,
    pub a: i64,
    pub b: i64,
}

impl DivisorClass {
    pub fn is_ample(&self) -> bool {
        self.a > 0 && self.b > 0
    }

    pub fn h0(&self) -> Result<i64> {
        h0_hirzebruch(self.m, self.a, self.b)
    }
}

/// `h^0(F_m, O(ag + bf)) = (a+1)(am/2 + b + 1)`; higher cohomology vanishes.
pub fn h0_hirzebruch(m: i64, a: i64, b: i64) -> Result<i64> {
    if m < 0 || a <= 0 || b <= 0 {
        return Err(domain(format!("class {a}g + {b}f on F_{m} is not ample")));
    }
    let v = Ratio::from_integer(a + 1) * (Ratio::new(a * m, 2) + Ratio::from_integer(b + 1));
    if !v.is_integer() {
        return Err(Error::InternalConsistency(format!("h0 of {a}g + {b}f on F_{m} is {v}")));
    }
    Ok(v.to_integer())
}

/// `h^0(N_{S/P^N}) = (N+1)(D+2) − 7` for a scroll of degree `D`.
pub fn h0_normal_bundle(n: i64, degree: i64) -> Result<i64> {
    check_hilbert_range(degree, n)?;
    Ok((n + 1) * (degree + 2) - 7)
}

/// `(N+1)·h^0(F_m, O(ag + bf)) − 7` for `F_m` embedded by `ag + bf`.
pub fn h0_normal_bundle_general(n: i64, m: i64, a: i64, b: i64) -> Result<i64> {
    if n < 3 {
        return Err(domain(format!("need N >= 3, got {n}")));
    }
    Ok((n + 1) * h0_hirzebruch(m, a, b)? - 7)
}

/// `h^1(F_m, T_{F_m})`: `m − 1` for `m ≥ 1`, and `0` for the quadric `F_0`.
pub fn h1_tangent_hirzebruch(m: i64) -> Result<i64> {
    if m < 0 {
        return Err(domain(format!("negative Hirzebruch index {m}")));
    }
    Ok((m - 1).max(0))
}

fn check_hilbert_range(degree: i64, n: i64) -> Result<()> {
    if n < 3 || n > degree + 1 {
        return Err(domain(format!("need D+1 >= N >= 3, got D = {degree}, N = {n}")));
    }
    Ok(())
}

/// Dimension of the Hilbert scheme component of degree-`D` rational scrolls in `P^N`.
pub fn dim_hilbert(degree: i64, n: i64) -> Result<i64> {
    check_hilbert_range(degree, n)?;
    Ok((n + 1) * (degree + 2) - 7)
}

/// Dimension of the locus of scrolls of type `(u, D−u)`:
/// `(D+2)N + 2u − 4 − δ_{u,v}`.
pub fn dim_stratum(degree: i64, n: i64, u: i64) -> Result<i64> {
    check_hilbert_range(degree, n)?;
    if u < 1 || 2 * u > degree {
        return Err(domain(format!("need 1 <= u <= D/2, got u = {u}, D = {degree}")));
    }
    let delta = (u == degree - u) as i64;
    Ok((degree + 2) * n + 2 * u - 4 - delta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimFormulas {
    /// Codimension `j(N−3+j)` of the locus meeting a `j`-dimensional family.
    pub sigma_j: i64,
    /// `N − 2`.
    pub sigma_1: i64,
    /// Upper bound `r(N−4)` on the codimension of scrolls with `r` double points.
    pub bound_r: i64,
    /// Whether `rN ≤ (D+2)² − 1`, the range where `bound_r` holds.
    pub bound_valid: bool,
    /// Largest `r` guaranteed to be realized: `D − N + 1`.
    pub guaranteed_r: i64,
    /// Degree `C(D−2, 2)` of the secant variety of `S_{u,v}`.
    pub secant_degree: i64,
}

pub fn codim_formulas(n: i64, degree: i64, j: i64, r: i64) -> Result<CodimFormulas> {
    if !(degree >= n && n >= 5) {
        return Err(domain(format!("need D >= N >= 5, got D = {degree}, N = {n}")));
    }
    if j < 1 || r < 0 {
        return Err(domain(format!("need j >= 1 and r >= 0, got j = {j}, r = {r}")));
    }
    Ok(CodimFormulas {
        sigma_j: j * (n - 3 + j),
        sigma_1: n - 2,
        bound_r: r * (n - 4),
        bound_valid: r * n <= (degree + 2) * (degree + 2) - 1,
        guaranteed_r: degree - n + 1,
        secant_degree: (degree - 2) * (degree - 3) / 2,
    })
}

/// `P_S(x) = (D/2) x² + (D/2 + 1) x + 1`, highest coefficient first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HilbertPolynomial {
    pub coeffs: [Ratio<i64>; 3],
}

impl HilbertPolynomial {
    pub fn eval(&self, x: i64) -> Ratio<i64> {
        let x = Ratio::from_integer(x);
        (self.coeffs[0] * x + self.coeffs[1]) * x + self.coeffs[2]
    }

    pub fn to_strings(&self) -> [String; 3] {
        self.coeffs.map(|c| c.to_string())
    }
}

pub fn hilbert_polynomial(degree: i64) -> Result<HilbertPolynomial> {
    if degree < 1 {
        return Err(domain(format!("need D >= 1, got {degree}")));
    }
    let half = Ratio::new(degree, 2);
    Ok(HilbertPolynomial {
        coeffs: [half, half + 1, Ratio::from_integer(1)],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Feasibility {
    /// The family is small enough to lie in cubic fourfolds.
    Unobstructed,
    /// The family is too large: its generic member lies on no cubic fourfold.
    Obstructed,
    /// Outside the range where the bound decides anything.
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub n: i64,
    pub degree: i64,
    pub singularities: i64,
    /// `−n² + 14n + 11`.
    pub dim_lower_bound: i64,
    pub threshold: i64,
    pub status: Feasibility,
}

/// Families of scrolls of dimension at least this cannot lie generically in
/// cubic fourfolds.
pub const CUBIC_THRESHOLD: i64 = 55;

/// Whether scrolls of degree `2n+1` with `n(n−2)` double points can be
/// expected in cubic fourfolds.
pub fn higher_disc_feasibility(n: i64) -> Result<FeasibilityReport> {
    if n < 2 {
        return Err(domain(format!("need n >= 2, got {n}")));
    }
    let bound = -n * n + 14 * n + 11;
    let status = if n >= 9 {
        Feasibility::Unknown
    } else if bound >= CUBIC_THRESHOLD {
        Feasibility::Obstructed
    } else {
        Feasibility::Unobstructed
    };
    Ok(FeasibilityReport {
        n,
        degree: 2 * n + 1,
        singularities: n * (n - 2),
        dim_lower_bound: bound,
        threshold: CUBIC_THRESHOLD,
        status,
    })
}

/// Everything the formulas say about scrolls of degree `D` in `P^N` with
/// `r` double points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsTable {
    #[serde(rename = "D")]
    pub degree: i64,
    #[serde(rename = "N")]
    pub n: i64,
    pub r: i64,
    pub dim_hilbert: i64,
    pub h0_normal_bundle: i64,
    pub chi_tangent: i64,
    /// `(u, dim)` for each type `(u, D−u)`.
    pub strata: Vec<(i64, i64)>,
    pub hilbert_polynomial: [String; 3],
    pub codim: Option<CodimFormulas>,
    /// `dim_hilbert − bound_r`, when the bound applies.
    pub singular_stratum_lower_bound: Option<i64>,
}

/// A stratum `H_{u,v}` of scrolls of type `(u,v)` in `P^N`, with a target
/// number `r` of double points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertStratum {
    pub degree: i64,
    pub n: i64,
    pub u: i64,
    pub v: i64,
    pub r: i64,
}

impl HilbertStratum {
    pub fn new(degree: i64, n: i64, u: i64, r: i64) -> Result<Self> {
        dim_stratum(degree, n, u)?;
        if r < 0 {
            return Err(domain(format!("negative singularity count {r}")));
        }
        Ok(HilbertStratum {
            degree,
            n,
            u,
            v: degree - u,
            r,
        })
    }

    pub fn delta(&self) -> i64 {
        (self.u == self.v) as i64
    }

    pub fn dim(&self) -> i64 {
        dim_stratum(self.degree, self.n, self.u).expect("validated at construction")
    }
}

pub fn dims_table(degree: i64, n: i64, r: i64) -> Result<DimsTable> {
    let dim = dim_hilbert(degree, n)?;
    if r < 0 {
        return Err(domain(format!("negative singularity count {r}")));
    }
    let strata = (1..=degree / 2)
        .map(|u| Ok((u, dim_stratum(degree, n, u)?)))
        .collect::<Result<Vec<_>>>()?;
    let codim = if degree >= n && n >= 5 {
        Some(codim_formulas(n, degree, 1, r)?)
    } else {
        None
    };
    Ok(DimsTable {
        degree,
        n,
        r,
        dim_hilbert: dim,
        h0_normal_bundle: h0_normal_bundle(n, degree)?,
        chi_tangent: CHI_TANGENT,
        strata,
        hilbert_polynomial: hilbert_polynomial(degree)?.to_strings(),
        codim,
        singular_stratum_lower_bound: codim.filter(|c| c.bound_valid).map(|c| dim - c.bound_r),
    })
}
