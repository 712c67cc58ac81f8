use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{classify_cubic, Classification, CubicForm};
use crate::algebra::field::{Field, Fp};
use crate::algebra::poly::MultiPoly;
use crate::error::{Error, Result};
use crate::scroll::{scan_points, scroll_param, theta, ProjectionMatrix};

/// Random combinations tried after the basis cubics themselves.
pub const RANDOM_CANDIDATES: usize = 200;

const BATCH: usize = 8;

/// Rational points of the projected scroll over `F_p`, including the
/// points at `t = ∞` on every ruling.
pub fn scroll_points(pm: &ProjectionMatrix<Fp>) -> Result<Vec<Vec<Fp>>> {
    let p = pm.ctx();
    let spec = pm.spec();
    let mut out = Vec::new();
    for s in scan_points(p) {
        for t in 0..p {
            out.push(pm.project(&scroll_param(p, spec, &s, &Fp::new(t as i64, p)))?);
        }
        out.push(pm.project(&theta(p, spec, &s))?);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct CubicHit<F: Field> {
    /// Position in the candidate list: basis cubics first, then random
    /// combinations.
    pub candidate: usize,
    pub combination: Vec<F>,
    pub form: CubicForm<F>,
    pub classification: Classification,
}

#[derive(Debug, Clone)]
pub struct CubicSearch<F: Field> {
    pub seed: u64,
    pub basis_dim: usize,
    /// Candidates classified before both kinds were found or the list ran
    /// out. Batches are fixed-size, so this does not depend on thread count.
    pub candidates_examined: usize,
    pub smooth: Option<CubicHit<F>>,
    pub singular: Option<CubicHit<F>>,
}

fn candidates<F: Field>(ctx: F::Ctx, k: usize, seed: u64) -> Vec<Vec<F>> {
    let mut out: Vec<Vec<F>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { F::one(ctx) } else { F::zero(ctx) }).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < k + RANDOM_CANDIDATES {
        let c: Vec<F> = (0..k).map(|_| F::from_i64(ctx, rng.gen_range(-1000..=1000))).collect();
        if c.iter().any(|x| !x.is_zero()) {
            out.push(c);
        }
    }
    out
}

/// Looks for a smooth and a singular member of the linear system spanned by
/// `basis`. Candidates are classified in parallel batches; within each kind
/// the lowest candidate index wins.
pub fn search_cubics<F: Field>(basis: &[CubicForm<F>], hints: &[Vec<F>], seed: u64) -> Result<CubicSearch<F>> {
    let Some(first) = basis.first() else {
        return Ok(CubicSearch {
            seed,
            basis_dim: 0,
            candidates_examined: 0,
            smooth: None,
            singular: None,
        });
    };
    let ctx = first.ctx();
    let n = first.nvars();
    let cands = candidates::<F>(ctx, basis.len(), seed);
    let mut smooth = None;
    let mut singular = None;
    let mut examined = 0;
    for (b, chunk) in cands.chunks(BATCH).enumerate() {
        let results: Vec<Result<(Vec<F>, CubicForm<F>, Classification)>> = chunk
            .par_iter()
            .map(|c| {
                let mut poly = MultiPoly::zero(ctx, n);
                for (coef, f) in c.iter().zip(basis) {
                    if !coef.is_zero() {
                        poly = poly.add(&f.poly().scale(coef));
                    }
                }
                let form = CubicForm::new(poly)?;
                let class = classify_cubic(&form, hints)?;
                Ok((c.clone(), form, class))
            })
            .collect();
        for (i, r) in results.into_iter().enumerate() {
            let (combination, form, classification) = match r {
                Ok(x) => x,
                Err(Error::ZeroForm) => continue,
                Err(e) => return Err(e),
            };
            let slot = if classification.is_smooth() {
                &mut smooth
            } else {
                &mut singular
            };
            if slot.is_none() {
                *slot = Some(CubicHit {
                    candidate: b * BATCH + i,
                    combination,
                    form,
                    classification,
                });
            }
        }
        examined += chunk.len();
        if smooth.is_some() && singular.is_some() {
            break;
        }
    }
    Ok(CubicSearch {
        seed,
        basis_dim: basis.len(),
        candidates_examined: examined,
        smooth,
        singular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 31;

    fn z(i: usize) -> MultiPoly<Fp> {
        MultiPoly::var(P, 6, i)
    }

    #[test]
    fn finds_both_kinds_in_a_pencil() {
        let fermat = (0..6).fold(MultiPoly::zero(P, 6), |acc, i| acc.add(&z(i).pow(3)));
        let cone = z(0).pow(3).add(&z(1).pow(3));
        let basis = vec![CubicForm::new(cone).unwrap(), CubicForm::new(fermat).unwrap()];
        let res = search_cubics(&basis, &[], 5).unwrap();
        assert_eq!(res.singular.as_ref().unwrap().candidate, 0);
        assert_eq!(res.smooth.as_ref().unwrap().candidate, 1);
        assert_eq!(res.candidates_examined, BATCH);
        let again = search_cubics(&basis, &[], 5).unwrap();
        assert_eq!(again.smooth.unwrap().combination, res.smooth.unwrap().combination);
    }

    #[test]
    fn empty_basis_finds_nothing() {
        let res = search_cubics::<Fp>(&[], &[], 0).unwrap();
        assert!(res.smooth.is_none() && res.singular.is_none());
    }
}
