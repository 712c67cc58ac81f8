//! Cubic hypersurfaces through a projected scroll: polarization, lines,
//! smoothness, first-order deformations of the ruling curve, and the
//! intersection-theoretic invariants.

mod classify;
mod deformation;
mod invariants;
mod search;

use crate::algebra::field::Field;
use crate::algebra::matrix::ExactMatrix;
use crate::algebra::poly::{MultiPoly, TermJson};
use crate::error::{Error, Result};
use crate::scroll::{image_forms, ProjectionMatrix};

pub use classify::{classify_cubic, rational_singular_points, Classification, SingularWitness};
pub use deformation::{fano_deformation_dim, FanoDeformationReport, SymmetryDeduction, SYMMETRY};
pub use invariants::{
    discriminant, discriminant_table, selfint_from_double_points, unirational_degree, DiscriminantRecord,
    UnirationalDegree,
};
pub use search::{search_cubics, scroll_points, CubicHit, CubicSearch, RANDOM_CANDIDATES};

/// A nonzero homogeneous cubic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicForm<F: Field> {
    poly: MultiPoly<F>,
}

impl<F: Field> CubicForm<F> {
    pub fn new(poly: MultiPoly<F>) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroForm);
        }
        if !poly.is_homogeneous() || poly.degree() != Some(3) {
            return Err(Error::NonHomogeneous(format!(
                "expected a cubic form, got degree {:?}",
                poly.degree()
            )));
        }
        Ok(CubicForm { poly })
    }

    pub fn poly(&self) -> &MultiPoly<F> {
        &self.poly
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn ctx(&self) -> F::Ctx {
        self.poly.ctx()
    }

    pub fn eval(&self, z: &[F]) -> Result<F> {
        self.poly.eval(z)
    }

    pub fn gradient(&self) -> Vec<MultiPoly<F>> {
        (0..self.nvars()).map(|i| self.poly.derivative(i)).collect()
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.poly.to_json()
    }
}

fn check_char<F: Field>(ctx: F::Ctx) -> Result<F> {
    let c = F::characteristic(ctx);
    if c == 2 || c == 3 {
        return Err(Error::UnsupportedCharacteristic(c));
    }
    Ok(F::from_i64(ctx, 6).inv().expect("6 is invertible"))
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Symmetric trilinear form of `f` evaluated at ring elements: for each term
/// `c·z_a z_b z_c`, `c/6 · Σ_σ x_{σa} y_{σb} w_{σc}`.
pub fn polarize_in<F: Field, A: crate::algebra::poly::Algebra<F>>(f: &CubicForm<F>, x: &[A], y: &[A], w: &[A]) -> Result<A> {
    let n = f.nvars();
    for arg in [x, y, w] {
        if arg.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: arg.len(),
            });
        }
    }
    let sixth = check_char::<F>(f.ctx())?;
    let mut acc = x[0].zero_like();
    for (m, c) in f.poly.terms() {
        let mut idx = Vec::with_capacity(3);
        for i in 0..n {
            for _ in 0..m.exp(i) {
                idx.push(i);
            }
        }
        let mut sum = x[0].zero_like();
        for p in PERMS {
            let t = x[idx[p[0]]].mul(&y[idx[p[1]]]).mul(&w[idx[p[2]]]);
            sum = sum.add(&t);
        }
        acc = acc.add(&sum.scale(&c.mul(&sixth)));
    }
    Ok(acc)
}

pub fn polarize<F: Field>(f: &CubicForm<F>, x: &[F], y: &[F], w: &[F]) -> Result<F> {
    polarize_in(f, x, y, w)
}

/// `T(b1,b1,b1), T(b1,b1,b2), T(b1,b2,b2), T(b2,b2,b2)` in any algebra.
pub fn fano_equations_in<F: Field, A: crate::algebra::poly::Algebra<F>>(f: &CubicForm<F>, b1: &[A], b2: &[A]) -> Result<[A; 4]> {
    Ok([
        polarize_in(f, b1, b1, b1)?,
        polarize_in(f, b1, b1, b2)?,
        polarize_in(f, b1, b2, b2)?,
        polarize_in(f, b2, b2, b2)?,
    ])
}

/// The four equations of the Fano scheme at the line spanned by the rows of
/// `b`; all vanish iff the line lies on `{f = 0}`.
pub fn fano_equations<F: Field>(f: &CubicForm<F>, b: &ExactMatrix<F>) -> Result<[F; 4]> {
    if b.rows() != 2 || b.cols() != f.nvars() {
        return Err(Error::Shape(format!(
            "line matrix must be 2x{}, got {}x{}",
            f.nvars(),
            b.rows(),
            b.cols()
        )));
    }
    if b.rank() < 2 {
        return Err(Error::DependentRows);
    }
    fano_equations_in(f, b.row(0), b.row(1))
}

/// Basis of the cubics containing the projected scroll.
pub fn find_containing_cubics<F: Field>(pm: &ProjectionMatrix<F>) -> Vec<CubicForm<F>> {
    image_forms(pm, 3)
        .into_iter()
        .map(|p| CubicForm::new(p).expect("kernel vectors are nonzero cubics"))
        .collect()
}
