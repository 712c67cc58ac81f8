//! Rational normal scrolls `S_{u,v} ⊂ P^{D+1}` and their linear projections.

mod image;
mod projection;
mod singular;
mod tangent;

use serde::{Deserialize, Serialize};

use crate::algebra::field::Field;
use crate::algebra::matrix::ExactMatrix;
use crate::algebra::poly::MultiPoly;
use crate::error::{Error, Result};

pub use image::{image_forms, image_forms_count};
pub use projection::{ProjectionJson, ProjectionMatrix};
pub use singular::{pair_matrix, scan_points, singular_pairs, SingularPair, SingularScrollReport};
pub use tangent::{tangent_clearance, tangent_clearance_closure, tangent_matrix};

/// Discrete type of a scroll of type `(u, v)` projected into `P^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScrollSpec {
    u: u32,
    v: u32,
    #[serde(rename = "N")]
    n: u32,
}

impl ScrollSpec {
    pub fn new(u: u32, v: u32, n: u32) -> Result<Self> {
        if u < 1 || v < u {
            return Err(Error::InvalidSpec(format!("need 1 <= u <= v, got u={u}, v={v}")));
        }
        if n < 3 || n > u + v + 1 {
            return Err(Error::InvalidSpec(format!(
                "need 3 <= N <= D+1 = {}, got N={n}",
                u + v + 1
            )));
        }
        if (u + v + 2) as usize > crate::algebra::poly::MAX_VARS {
            return Err(Error::InvalidSpec(format!("D = {} is too large", u + v)));
        }
        Ok(ScrollSpec { u, v, n })
    }

    pub fn u(&self) -> u32 {
        self.u
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    /// Ambient dimension `N` of the target.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Degree `D = u + v`.
    pub fn degree(&self) -> u32 {
        self.u + self.v
    }

    /// Hirzebruch index `m = v - u`.
    pub fn m(&self) -> u32 {
        self.v - self.u
    }

    /// Number of homogeneous coordinates upstairs, `D + 2`.
    pub fn source_dim(&self) -> usize {
        (self.u + self.v + 2) as usize
    }

    /// Number of homogeneous coordinates of the target, `N + 1`.
    pub fn target_dim(&self) -> usize {
        (self.n + 1) as usize
    }

    /// The range `D >= N >= 5` in which singular scrolls are studied.
    pub fn require_singular_range(&self) -> Result<()> {
        if self.degree() >= self.n && self.n >= 5 {
            Ok(())
        } else {
            Err(Error::InvalidSpec(format!(
                "singular scrolls need D >= N >= 5, got D={}, N={}",
                self.degree(),
                self.n
            )))
        }
    }

    pub(crate) fn require_u1(&self, what: &str) -> Result<()> {
        if self.u == 1 {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("{what} is only implemented for u = 1, got u = {}", self.u)))
        }
    }
}

/// A point of `P^1`: an affine parameter or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamPoint {
    Finite(i64),
    Infinity,
}

impl ParamPoint {
    pub fn value<F: Field>(&self, ctx: F::Ctx) -> Option<F> {
        match self {
            ParamPoint::Finite(s) => Some(F::from_i64(ctx, *s)),
            ParamPoint::Infinity => None,
        }
    }
}

impl std::fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamPoint::Finite(s) => write!(f, "{s}"),
            ParamPoint::Infinity => write!(f, "inf"),
        }
    }
}

fn unit<F: Field>(ctx: F::Ctx, len: usize, i: usize) -> Vec<F> {
    let mut e = vec![F::zero(ctx); len];
    e[i] = F::one(ctx);
    e
}

fn powers<F: Field>(s: &F, n: u32) -> Vec<F> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut acc = F::one(s.ctx());
    for _ in 0..=n {
        out.push(acc.clone());
        acc = acc.mul(s);
    }
    out
}

/// Point `(1, s, ..., s^u, 0, ..., 0)` of the directrix block.
pub fn directrix_point<F: Field>(ctx: F::Ctx, spec: &ScrollSpec, s: &ParamPoint) -> Vec<F> {
    let len = spec.source_dim();
    match s.value::<F>(ctx) {
        Some(x) => {
            let mut row = powers(&x, spec.u);
            row.resize(len, F::zero(ctx));
            row
        }
        None => unit(ctx, len, spec.u as usize),
    }
}

/// Derivative of [`directrix_point`] in `s`; at infinity the limiting
/// direction `e_{u-1}`.
pub fn directrix_tangent<F: Field>(ctx: F::Ctx, spec: &ScrollSpec, s: &ParamPoint) -> Vec<F> {
    let len = spec.source_dim();
    match s.value::<F>(ctx) {
        Some(x) => {
            let p = powers(&x, spec.u);
            let mut row = vec![F::zero(ctx); len];
            for j in 1..=spec.u as usize {
                row[j] = p[j - 1].mul(&F::from_i64(ctx, j as i64));
            }
            row
        }
        None => unit(ctx, len, spec.u as usize - 1),
    }
}

/// `θ(s) = (0, ..., 0, 1, s, ..., s^v)`, the point of the degree-`v` curve.
pub fn theta<F: Field>(ctx: F::Ctx, spec: &ScrollSpec, s: &ParamPoint) -> Vec<F> {
    let len = spec.source_dim();
    let off = spec.u as usize + 1;
    match s.value::<F>(ctx) {
        Some(x) => {
            let mut row = vec![F::zero(ctx); off];
            row.extend(powers(&x, spec.v));
            row
        }
        None => unit(ctx, len, len - 1),
    }
}

/// `θ'(s)`; at infinity the limiting tangent direction `e_{D}`.
pub fn theta_prime<F: Field>(ctx: F::Ctx, spec: &ScrollSpec, s: &ParamPoint) -> Vec<F> {
    let len = spec.source_dim();
    let off = spec.u as usize + 1;
    match s.value::<F>(ctx) {
        Some(x) => {
            let p = powers(&x, spec.v);
            let mut row = vec![F::zero(ctx); len];
            for j in 1..=spec.v as usize {
                row[off + j] = p[j - 1].mul(&F::from_i64(ctx, j as i64));
            }
            row
        }
        None => unit(ctx, len, len - 2),
    }
}

/// `(1, s, ..., s^u, t, ts, ..., ts^v)`; at `s = ∞` the point
/// `e_u + t e_{D+1}` of the limiting ruling.
pub fn scroll_param<F: Field>(ctx: F::Ctx, spec: &ScrollSpec, s: &ParamPoint, t: &F) -> Vec<F> {
    directrix_point::<F>(ctx, spec, s)
        .iter()
        .zip(theta::<F>(ctx, spec, s))
        .map(|(a, b)| a.add(&b.mul(t)))
        .collect()
}

/// The 2×2 minors of the `2 × D` matrix
/// `[x_0 .. x_{u-1} | x_{u+1} .. x_{D}; x_1 .. x_u | x_{u+2} .. x_{D+1}]`.
pub fn minor_ideal<F: Field>(ctx: F::Ctx, spec: &ScrollSpec) -> Vec<MultiPoly<F>> {
    let n = spec.source_dim();
    let (u, v) = (spec.u as usize, spec.v as usize);
    let cols: Vec<(usize, usize)> = (0..u).map(|i| (i, i + 1)).chain((0..v).map(|j| (u + 1 + j, u + 2 + j))).collect();
    let x = |i: usize| MultiPoly::<F>::var(ctx, n, i);
    let mut out = Vec::new();
    for a in 0..cols.len() {
        for b in a + 1..cols.len() {
            let (ta, ba) = cols[a];
            let (tb, bb) = cols[b];
            out.push(x(ta).mul(&x(bb)).sub(&x(tb).mul(&x(ba))));
        }
    }
    out
}

/// Matrix whose rows span the rulings at `s_values` (`u = 1`): the two
/// directrix rows followed by `θ(s_i)`. For a single ruling the second
/// directrix row is the tangent direction.
pub fn ruling_matrix<F: Field>(ctx: F::Ctx, spec: &ScrollSpec, s_values: &[ParamPoint]) -> Result<ExactMatrix<F>> {
    spec.require_u1("ruling_matrix")?;
    if s_values.is_empty() {
        return Err(Error::Shape("ruling_matrix needs at least one parameter".into()));
    }
    for (i, a) in s_values.iter().enumerate() {
        if s_values[..i].contains(a) {
            return Err(Error::DuplicateParameter(a.to_string()));
        }
    }
    let mut rows = vec![directrix_point(ctx, spec, &s_values[0])];
    rows.push(match s_values.get(1) {
        Some(s) => directrix_point(ctx, spec, s),
        None => directrix_tangent(ctx, spec, &s_values[0]),
    });
    rows.extend(s_values.iter().map(|s| theta(ctx, spec, s)));
    ExactMatrix::from_rows(ctx, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Fp, Q};

    const P: u32 = 31;

    #[test]
    fn spec_validation() {
        assert!(ScrollSpec::new(1, 8, 5).is_ok());
        assert!(ScrollSpec::new(0, 8, 5).is_err());
        assert!(ScrollSpec::new(3, 2, 4).is_err());
        assert!(ScrollSpec::new(1, 2, 5).is_err());
        assert!(ScrollSpec::new(1, 2, 2).is_err());
        let s = ScrollSpec::new(2, 7, 5).unwrap();
        assert_eq!((s.degree(), s.m(), s.source_dim(), s.target_dim()), (9, 5, 11, 6));
        assert!(ScrollSpec::new(1, 3, 5).unwrap().require_singular_range().is_err());
    }

    #[test]
    fn parametrization_examples() {
        let spec = ScrollSpec::new(1, 8, 5).unwrap();
        let z = |x| Fp::new(x, P);
        let p0 = scroll_param(P, &spec, &ParamPoint::Finite(0), &z(0));
        assert_eq!(p0[0], z(1));
        assert!(p0[1..].iter().all(|c| c.is_zero()));
        let p1 = scroll_param(P, &spec, &ParamPoint::Finite(0), &z(1));
        let mut want = vec![z(0); 11];
        want[0] = z(1);
        want[2] = z(1);
        assert_eq!(p1, want);
        let inf = scroll_param(P, &spec, &ParamPoint::Infinity, &z(3));
        assert_eq!((inf[1], inf[10]), (z(1), z(3)));
    }

    #[test]
    fn minors_vanish_on_parametrization() {
        for (u, v) in [(1, 8), (1, 2), (2, 3), (3, 3)] {
            let spec = ScrollSpec::new(u, v, 3).unwrap();
            let ideal = minor_ideal::<Fp>(P, &spec);
            let d = (u + v) as usize;
            assert_eq!(ideal.len(), d * (d - 1) / 2);
            for s in (0..P as i64).map(ParamPoint::Finite).chain([ParamPoint::Infinity]) {
                for t in [0, 1, 7, 30] {
                    let pt = scroll_param(P, &spec, &s, &Fp::new(t, P));
                    for g in &ideal {
                        assert!(g.eval(&pt).unwrap().is_zero(), "({u},{v}) s={s} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn ruling_matrix_ranks() {
        let spec = ScrollSpec::new(1, 8, 5).unwrap();
        let f = |i: i64| ParamPoint::Finite(i);
        let m = ruling_matrix::<Q>((), &spec, &[f(0), f(1)]).unwrap();
        assert_eq!((m.rows(), m.cols(), m.rank()), (4, 11, 4));
        assert_eq!(ruling_matrix::<Q>((), &spec, &[f(3)]).unwrap().rank(), 3);
        assert_eq!(ruling_matrix::<Fp>(P, &spec, &[ParamPoint::Infinity]).unwrap().rank(), 3);
        let all: Vec<_> = (0..8).map(f).chain([ParamPoint::Infinity]).collect();
        assert_eq!(ruling_matrix::<Q>((), &spec, &all).unwrap().rank(), 11);
        assert!(matches!(
            ruling_matrix::<Q>((), &spec, &[f(2), f(2)]),
            Err(Error::DuplicateParameter(_))
        ));
        let spec2 = ScrollSpec::new(2, 3, 5).unwrap();
        assert!(matches!(ruling_matrix::<Q>((), &spec2, &[f(1)]), Err(Error::Unsupported(_))));
    }

    #[test]
    fn tangent_vectors_are_derivatives() {
        // symmetric differences are exact on quadratics
        let spec = ScrollSpec::new(1, 2, 3).unwrap();
        let at = |x: i64| theta::<Q>((), &spec, &ParamPoint::Finite(x));
        let thp = theta_prime::<Q>((), &spec, &ParamPoint::Finite(3));
        let (a, b) = (at(4), at(2));
        for j in 0..thp.len() {
            assert_eq!(a[j].sub(&b[j]).mul(&Q::new(1, 2)), thp[j]);
        }
        let dt = directrix_tangent::<Q>((), &spec, &ParamPoint::Finite(5));
        assert_eq!(dt[1], Q::int(1));
        assert_eq!(theta_prime::<Fp>(P, &spec, &ParamPoint::Infinity)[3], Fp::new(1, P));
    }
}
