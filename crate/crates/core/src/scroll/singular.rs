use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tangent::{tangent_clearance, tangent_clearance_closure};
use super::{directrix_point, theta, ParamPoint, ProjectionMatrix, ScrollSpec};
use crate::algebra::field::{Field, Fp};
use crate::algebra::matrix::ExactMatrix;
use crate::error::Result;

/// All points of `P^1(F_p)`: `0, ..., p-1, ∞`.
pub fn scan_points(p: u32) -> Vec<ParamPoint> {
    (0..p as i64).map(ParamPoint::Finite).chain([ParamPoint::Infinity]).collect()
}

/// `P(a, b)·Λ`: the images of the spans of the rulings at `a` and `b`.
pub fn pair_matrix<F: Field>(pm: &ProjectionMatrix<F>, a: &ParamPoint, b: &ParamPoint) -> Result<ExactMatrix<F>> {
    let p = super::ruling_matrix(pm.ctx(), pm.spec(), &[*a, *b])?;
    p.mul(pm.lambda())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPair {
    pub params: [ParamPoint; 2],
    /// Common point of the two image lines, first nonzero coordinate 1.
    pub image_point: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularScrollReport {
    pub spec: ScrollSpec,
    pub prime: u32,
    pub lambda_digest: String,
    pub pairs: Vec<SingularPair>,
    pub pair_count: usize,
    pub distinct_points: usize,
    /// Pairs whose image span has rank below 3 (a ruling collapsed).
    pub degenerate_pairs: Vec<[ParamPoint; 2]>,
    /// No `F_p`-rational ruling has its tangent space meeting the center.
    pub tangent_clearance: bool,
    /// The same over the algebraic closure of `F_p`.
    pub tangent_clearance_closure: bool,
}

fn normalize(v: &[Fp]) -> Option<Vec<u32>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.inv()?;
    Some(v.iter().map(|x| x.mul(&inv).value()).collect())
}

fn combine(a: &Fp, x: &[Fp], b: &Fp, y: &[Fp]) -> Vec<Fp> {
    x.iter().zip(y).map(|(xi, yi)| a.mul(xi).add(&b.mul(yi))).collect()
}

/// Exhaustive scan of all unordered pairs of rulings over `P^1(F_p)` for
/// pairs whose images meet (`u = 1`).
pub fn singular_pairs(pm: &ProjectionMatrix<Fp>) -> Result<SingularScrollReport> {
    let spec = *pm.spec();
    spec.require_u1("singular_pairs")?;
    pm.require_full_rank()?;
    let p = pm.ctx();
    let pts = scan_points(p);
    let images: Vec<(Vec<Fp>, Vec<Fp>)> = pts
        .iter()
        .map(|s| {
            Ok((
                pm.project(&directrix_point(p, &spec, s))?,
                pm.project(&theta(p, &spec, s))?,
            ))
        })
        .collect::<Result<_>>()?;

    let idx: Vec<(usize, usize)> = (0..pts.len())
        .flat_map(|i| (i + 1..pts.len()).map(move |j| (i, j)))
        .collect();
    let scanned: Vec<(usize, usize, usize, Option<Vec<u32>>)> = idx
        .par_iter()
        .map(|&(i, j)| {
            let (ai, ti) = &images[i];
            let (aj, tj) = &images[j];
            let m = ExactMatrix::from_rows(p, vec![ai.clone(), ti.clone(), aj.clone(), tj.clone()])
                .expect("rows share a length");
            let rank = m.rank();
            let point = if rank == 3 {
                let k = &m.left_kernel_basis()[0];
                let on_i = combine(&k[0], ai, &k[1], ti);
                let on_j = combine(&k[2], aj, &k[3], tj);
                normalize(&on_i).or_else(|| normalize(&on_j))
            } else {
                None
            };
            (i, j, rank, point)
        })
        .collect();

    let mut pairs = Vec::new();
    let mut degenerate_pairs = Vec::new();
    for (i, j, rank, point) in scanned {
        match rank {
            3 => pairs.push(SingularPair {
                params: [pts[i], pts[j]],
                image_point: point.unwrap_or_default(),
            }),
            r if r < 3 => degenerate_pairs.push([pts[i], pts[j]]),
            _ => {}
        }
    }
    let distinct: BTreeSet<&Vec<u32>> = pairs.iter().map(|q| &q.image_point).collect();
    Ok(SingularScrollReport {
        spec,
        prime: p,
        lambda_digest: pm.digest(),
        pair_count: pairs.len(),
        distinct_points: distinct.len(),
        pairs,
        degenerate_pairs,
        tangent_clearance: tangent_clearance(pm)?,
        tangent_clearance_closure: tangent_clearance_closure(pm)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Q;

    #[test]
    fn unprojected_scroll_has_no_pairs() {
        // N = D + 1 and Λ = identity: the scroll itself
        let spec = ScrollSpec::new(1, 4, 6).unwrap();
        let lam = ExactMatrix::<Fp>::identity(11, 7);
        let pm = ProjectionMatrix::new(spec, lam).unwrap();
        let rep = singular_pairs(&pm).unwrap();
        assert_eq!(rep.pair_count, 0);
        assert!(rep.degenerate_pairs.is_empty());
        assert!(rep.tangent_clearance && rep.tangent_clearance_closure);
        assert_eq!(scan_points(11).len(), 12);
    }

    #[test]
    fn rank_deficient_projection_is_rejected() {
        let spec = ScrollSpec::new(1, 4, 5).unwrap();
        let pm = ProjectionMatrix::new(spec, ExactMatrix::<Fp>::zeros(7, 7, 6)).unwrap();
        assert!(singular_pairs(&pm).is_err());
        let spec2 = ScrollSpec::new(2, 4, 5).unwrap();
        let pm2 = ProjectionMatrix::new(spec2, ExactMatrix::<Q>::identity((), 8).select_columns(&[0, 1, 2, 3, 4, 5]))
            .unwrap()
            .reduce(7)
            .unwrap();
        assert!(singular_pairs(&pm2).is_err());
    }
}
