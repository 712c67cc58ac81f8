use std::collections::HashMap;

use super::ProjectionMatrix;
use crate::algebra::field::Field;
use crate::algebra::matrix::ExactMatrix;
use crate::algebra::poly::{monomials_of_degree, Monomial, MultiPoly};

/// `z(s, t) = (1, s, ..., s^u, t, ..., ts^v)·Λ` in the affine chart, as
/// polynomials in `(s, t)`.
pub(crate) fn image_param<F: Field>(pm: &ProjectionMatrix<F>) -> Vec<MultiPoly<F>> {
    let spec = pm.spec();
    let ctx = pm.ctx();
    let lam = pm.lambda();
    let u = spec.u();
    let param: Vec<Monomial> = (0..=u)
        .map(|i| Monomial::from_exps(&[i, 0]))
        .chain((0..=spec.v()).map(|j| Monomial::from_exps(&[j, 1])))
        .collect();
    (0..lam.cols())
        .map(|k| {
            let mut z = MultiPoly::zero(ctx, 2);
            for (i, m) in param.iter().enumerate() {
                z.add_term(*m, lam.get(i, k).clone());
            }
            z
        })
        .collect()
}

/// Interpolation matrix: one row per degree-`d` monomial in `N+1` variables,
/// one column per `(s, t)` monomial of its pullback.
fn interpolation_matrix<F: Field>(pm: &ProjectionMatrix<F>, d: u32) -> (Vec<Monomial>, ExactMatrix<F>) {
    let ctx = pm.ctx();
    let z = image_param(pm);
    let n = z.len();
    let mut memo: HashMap<Monomial, MultiPoly<F>> = HashMap::new();
    memo.insert(Monomial::one(), MultiPoly::one(ctx, 2));
    for e in 1..=d {
        for m in monomials_of_degree(n, e) {
            let i = m.max_var().expect("positive degree");
            let prev = &memo[&Monomial::var(i).quotient_of(&m)];
            let prod = prev.mul(&z[i]);
            memo.insert(m, prod);
        }
    }
    let rows_m = monomials_of_degree(n, d);
    let mut col_index: HashMap<Monomial, usize> = HashMap::new();
    for m in &rows_m {
        for (st, _) in memo[m].terms() {
            let next = col_index.len();
            col_index.entry(*st).or_insert(next);
        }
    }
    let mut mat = ExactMatrix::zeros(ctx, rows_m.len(), col_index.len().max(1));
    for (r, m) in rows_m.iter().enumerate() {
        for (st, c) in memo[m].terms() {
            mat.set(r, col_index[st], c.clone());
        }
    }
    (rows_m, mat)
}

/// Basis of the degree-`d` forms in `N+1` variables vanishing on the
/// projected scroll.
pub fn image_forms<F: Field>(pm: &ProjectionMatrix<F>, d: u32) -> Vec<MultiPoly<F>> {
    let ctx = pm.ctx();
    let n = pm.spec().target_dim();
    let (mons, mat) = interpolation_matrix(pm, d);
    mat.left_kernel_basis()
        .into_iter()
        .map(|coeffs| {
            let mut f = MultiPoly::zero(ctx, n);
            for (m, c) in mons.iter().zip(coeffs) {
                f.add_term(*m, c);
            }
            f
        })
        .collect()
}

/// Dimension of the space returned by [`image_forms`], from the rank alone.
pub fn image_forms_count<F: Field>(pm: &ProjectionMatrix<F>, d: u32) -> usize {
    let (mons, mat) = interpolation_matrix(pm, d);
    mons.len() - mat.rank()
}
