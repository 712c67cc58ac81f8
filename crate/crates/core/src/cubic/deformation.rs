//! First-order deformations of the ruling curve of `S_{1,v}` inside the Fano
//! variety of lines of a cubic containing the projected scroll.
//!
//! The ruling at `(r:s)` is spanned by the rows of `R = Q(r,s)·Λ` with
//! `Q = [[r, s, 0, …], [0, 0, r^v, r^{v-1}s, …, s^v]]`. A deformation adds an
//! arbitrary linear form to each entry of the first row and an arbitrary
//! `v`-form to each entry of the second; the four Fano equations must vanish
//! to first order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{fano_equations_in, CubicForm};
use crate::algebra::field::{Field, Fp};
use crate::algebra::jet::JetPoly;
use crate::algebra::matrix::ExactMatrix;
use crate::algebra::poly::{Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::scroll::ProjectionMatrix;

/// Directions of the linear system that come from symmetries rather than
/// from genuine deformations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryDeduction {
    /// Change of basis of the two rows.
    pub gl2: usize,
    /// Reparametrization of `P^1`.
    pub automorphisms_p1: usize,
    /// Rescaling of the four equations.
    pub equation_rescaling: usize,
}

impl SymmetryDeduction {
    pub fn total(&self) -> usize {
        self.gl2 + self.automorphisms_p1 + self.equation_rescaling
    }
}

pub const SYMMETRY: SymmetryDeduction = SymmetryDeduction {
    gl2: 4,
    automorphisms_p1: 3,
    equation_rescaling: 4,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanoDeformationReport {
    pub prime: u32,
    pub unknowns: usize,
    pub equations: usize,
    /// `(r,s)`-degree of each of the four equations.
    pub equation_degrees: [u32; 4],
    pub rank: usize,
    pub symmetry: SymmetryDeduction,
    pub dimension: i64,
    /// Rank over `F_p` never exceeds rank over `Q`, so `dimension` bounds the
    /// characteristic-zero value from above.
    pub dimension_is_upper_bound_over_q: bool,
}

/// Builds and ranks the linear system in the deformation coefficients.
/// Coefficient layout: entry `(1, i)` of `dR` is `Σ_j c_{2i+j} r^{1-j} s^j`,
/// entry `(2, i)` is `Σ_j c_{2(N+1)+(v+1)i+j} r^{v-j} s^j`.
pub fn fano_deformation_dim(pm: &ProjectionMatrix<Fp>, f: &CubicForm<Fp>) -> Result<FanoDeformationReport> {
    let spec = pm.spec();
    spec.require_u1("fano_deformation_dim")?;
    let p = pm.ctx();
    if f.ctx() != p {
        return Err(Error::ContextMismatch {
            expected: Fp::context(p),
            found: Fp::context(f.ctx()),
        });
    }
    if f.nvars() != spec.target_dim() {
        return Err(Error::ArityMismatch {
            expected: spec.target_dim(),
            got: f.nvars(),
        });
    }
    let v = spec.v();
    let cols = spec.target_dim();
    let lam = pm.lambda();
    let row2_offset = 2 * cols;
    let unknowns = row2_offset + (v as usize + 1) * cols;
    let rs = |i: u32, j: u32| Monomial::from_exps(&[i, j]);

    let mut b1 = Vec::with_capacity(cols);
    let mut b2 = Vec::with_capacity(cols);
    for k in 0..cols {
        let mut base1 = MultiPoly::zero(p, 2);
        base1.add_term(rs(1, 0), *lam.get(0, k));
        base1.add_term(rs(0, 1), *lam.get(1, k));
        let mut grad1 = vec![MultiPoly::zero(p, 2); unknowns];
        for j in 0..2u32 {
            grad1[2 * k + j as usize] = MultiPoly::monomial(p, 2, rs(1 - j, j), Fp::one(p));
        }
        let mut base2 = MultiPoly::zero(p, 2);
        let mut grad2 = vec![MultiPoly::zero(p, 2); unknowns];
        for j in 0..=v {
            base2.add_term(rs(v - j, j), *lam.get(2 + j as usize, k));
            grad2[row2_offset + (v as usize + 1) * k + j as usize] = MultiPoly::monomial(p, 2, rs(v - j, j), Fp::one(p));
        }
        b1.push(JetPoly::new(base1, grad1)?);
        b2.push(JetPoly::new(base2, grad2)?);
    }

    let eqs = fano_equations_in(f, &b1, &b2)?;
    let degrees = [3, v + 2, 2 * v + 1, 3 * v];
    for (e, eq) in eqs.iter().enumerate() {
        if let Some((m, _)) = eq.base().terms().next() {
            return Err(Error::NotContained {
                equation: e,
                monomial: m.render(&["r".to_string(), "s".to_string()]),
            });
        }
    }
    let rows: Vec<Vec<Fp>> = eqs
        .par_iter()
        .zip(degrees.par_iter())
        .flat_map_iter(|(eq, &d)| {
            (0..=d).map(move |i| {
                let m = rs(d - i, i);
                eq.gradient().iter().map(|g| g.coeff(&m)).collect::<Vec<Fp>>()
            })
        })
        .collect();
    let equations = rows.len();
    let rank = ExactMatrix::from_rows(p, rows)?.rank();
    Ok(FanoDeformationReport {
        prime: p,
        unknowns,
        equations,
        equation_degrees: degrees,
        rank,
        symmetry: SYMMETRY,
        dimension: unknowns as i64 - rank as i64 - SYMMETRY.total() as i64,
        dimension_is_upper_bound_over_q: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::find_containing_cubics;
    use crate::scroll::ScrollSpec;

    const P: u32 = 31;

    #[test]
    fn foreign_cubic_is_rejected_with_its_first_term() {
        let spec = ScrollSpec::new(1, 4, 5).unwrap();
        let lam = ExactMatrix::<Fp>::identity(P, 7).select_columns(&[0, 1, 2, 3, 4, 6]);
        let pm = ProjectionMatrix::new(spec, lam).unwrap();
        let f = CubicForm::new(MultiPoly::var(P, 6, 0).pow(3)).unwrap();
        match fano_deformation_dim(&pm, &f) {
            Err(Error::NotContained { equation: 0, monomial }) => assert_eq!(monomial, "r^3"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn counts_follow_the_degrees() {
        // S_{1,2} ⊂ P^4 sits on the cubic q·z_0 for any of its quadrics q
        let spec = ScrollSpec::new(1, 2, 4).unwrap();
        let pm = ProjectionMatrix::new(spec, ExactMatrix::<Fp>::identity(P, 5)).unwrap();
        let cubics = find_containing_cubics(&pm);
        assert!(!cubics.is_empty());
        let rep = fano_deformation_dim(&pm, &cubics[0]).unwrap();
        assert_eq!(rep.unknowns, 2 * 5 + 3 * 5);
        assert_eq!(rep.equation_degrees, [3, 4, 5, 6]);
        assert_eq!(rep.equations, 4 + 5 + 6 + 7);
        assert_eq!(rep.dimension, rep.unknowns as i64 - rep.rank as i64 - 11);
    }
}
