use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CubicForm;
use crate::algebra::field::{Field, Fp};
use crate::error::{Error, Result};
use crate::groebner::{IdealBasis, MonomialOrder};

/// Evidence that a cubic hypersurface is singular.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SingularWitness {
    /// A point where all partial derivatives vanish.
    RationalPoint { point: Vec<String> },
    /// The Jacobian ideal's Gröbner basis misses a pure power of some variable.
    NonemptyLocus {
        basis_size: usize,
        free_variables: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Classification {
    /// The grevlex basis of the Jacobian ideal has a pure power of every
    /// variable among its leading monomials; `pure_powers[i]` is the
    /// smallest such exponent for `z_i`.
    Smooth { basis_size: usize, pure_powers: Vec<u32> },
    Singular { witness: SingularWitness },
}

impl Classification {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Classification::Smooth { .. })
    }
}

fn require_char<F: Field>(ctx: F::Ctx) -> Result<()> {
    let c = F::characteristic(ctx);
    if c == 3 {
        return Err(Error::UnsupportedCharacteristic(c));
    }
    Ok(())
}

/// Jacobian criterion. Points in `hints` are tried first; if one of them is
/// singular it is returned as the witness without a Gröbner computation.
pub fn classify_cubic<F: Field>(f: &CubicForm<F>, hints: &[Vec<F>]) -> Result<Classification> {
    let ctx = f.ctx();
    require_char::<F>(ctx)?;
    let grad = f.gradient();
    for h in hints {
        if h.iter().all(|x| x.is_zero()) {
            continue;
        }
        let mut all = true;
        for g in &grad {
            if !g.eval(h)?.is_zero() {
                all = false;
                break;
            }
        }
        if all {
            return Ok(Classification::Singular {
                witness: SingularWitness::RationalPoint {
                    point: h.iter().map(Field::to_decimal).collect(),
                },
            });
        }
    }
    let gens: Vec<_> = grad.into_iter().filter(|g| !g.is_zero()).collect();
    let n = f.nvars();
    let gb = IdealBasis::new(ctx, n, &gens, MonomialOrder::GrevLex)?;
    let leads = gb.leading_monomials();
    let mut pure: Vec<Option<u32>> = vec![None; n];
    for m in &leads {
        if let Some(i) = m.pure_power_var() {
            let e = m.degree();
            pure[i] = Some(pure[i].map_or(e, |old: u32| old.min(e)));
        }
    }
    if pure.iter().all(Option::is_some) {
        Ok(Classification::Smooth {
            basis_size: leads.len(),
            pure_powers: pure.into_iter().map(Option::unwrap).collect(),
        })
    } else {
        Ok(Classification::Singular {
            witness: SingularWitness::NonemptyLocus {
                basis_size: leads.len(),
                free_variables: (0..n).filter(|&i| pure[i].is_none()).collect(),
            },
        })
    }
}

struct Term {
    coeff: u64,
    exps: [u32; 6],
}

/// Every normalized point of `P^5(F_p)` where all partials of `f` vanish,
/// in enumeration order, stopping after `limit` hits.
pub fn rational_singular_points(f: &CubicForm<Fp>, limit: usize) -> Result<Vec<Vec<u32>>> {
    let p = f.ctx();
    require_char::<Fp>(p)?;
    if f.nvars() != 6 {
        return Err(Error::Shape(format!("point scan expects 6 variables, got {}", f.nvars())));
    }
    let partials: Vec<Vec<Term>> = f
        .gradient()
        .iter()
        .map(|g| {
            g.terms()
                .map(|(m, c)| {
                    let e = m.exps(6);
                    Term {
                        coeff: c.value() as u64,
                        exps: [e[0], e[1], e[2], e[3], e[4], e[5]],
                    }
                })
                .collect()
        })
        .collect();
    let pm = p as u64;
    let powers = |x: u64| -> [u64; 3] { [1, x, x * x % pm] };

    let mut out = Vec::new();
    for lead in 0..5usize {
        let free = 4 - lead;
        let count = (p as u64).pow(free as u32);
        let hits: Vec<Vec<u32>> = (0..count)
            .into_par_iter()
            .flat_map_iter(|idx| {
                let mut z = [0u64; 5];
                z[lead] = 1;
                let mut rest = idx;
                for k in (lead + 1..5).rev() {
                    z[k] = rest % pm;
                    rest /= pm;
                }
                let pw: Vec<[u64; 3]> = z.iter().map(|&x| powers(x)).collect();
                // each partial as a + b z5 + c z5^2
                let quads: Vec<[u64; 3]> = partials
                    .iter()
                    .map(|terms| {
                        let mut q = [0u64; 3];
                        for t in terms {
                            let mut v = t.coeff;
                            for k in 0..5 {
                                v = v * pw[k][t.exps[k] as usize] % pm;
                            }
                            let e5 = t.exps[5] as usize;
                            q[e5] = (q[e5] + v) % pm;
                        }
                        q
                    })
                    .collect();
                let mut local = Vec::new();
                for t in 0..pm {
                    let t2 = t * t % pm;
                    if quads.iter().all(|q| (q[0] + q[1] * t + q[2] * t2) % pm == 0) {
                        let mut pt: Vec<u32> = z.iter().map(|&x| x as u32).collect();
                        pt.push(t as u32);
                        local.push(pt);
                    }
                }
                local
            })
            .collect();
        out.extend(hits);
        if out.len() >= limit {
            out.truncate(limit);
            return Ok(out);
        }
    }
    let e5: Vec<Fp> = (0..6).map(|i| Fp::new((i == 5) as i64, p)).collect();
    let mut singular = true;
    for g in f.gradient() {
        if !g.eval(&e5)?.is_zero() {
            singular = false;
            break;
        }
    }
    if singular && out.len() < limit {
        out.push(vec![0, 0, 0, 0, 0, 1]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::MultiPoly;

    const P: u32 = 31;

    fn z(i: usize) -> MultiPoly<Fp> {
        MultiPoly::var(P, 6, i)
    }

    fn fermat() -> CubicForm<Fp> {
        CubicForm::new((0..6).fold(MultiPoly::zero(P, 6), |acc, i| acc.add(&z(i).pow(3)))).unwrap()
    }

    #[test]
    fn fermat_is_smooth() {
        let c = classify_cubic(&fermat(), &[]).unwrap();
        assert_eq!(
            c,
            Classification::Smooth {
                basis_size: 6,
                pure_powers: vec![2; 6]
            }
        );
        assert!(rational_singular_points(&fermat(), 10).unwrap().is_empty());
    }

    #[test]
    fn triple_plane_is_singular() {
        let f = CubicForm::new(z(0).pow(3)).unwrap();
        match classify_cubic(&f, &[]).unwrap() {
            Classification::Singular {
                witness: SingularWitness::NonemptyLocus { free_variables, .. },
            } => assert_eq!(free_variables, vec![1, 2, 3, 4, 5]),
            other => panic!("{other:?}"),
        }
        let hint = vec![Fp::new(0, P), Fp::new(1, P), Fp::new(0, P), Fp::new(0, P), Fp::new(0, P), Fp::new(0, P)];
        assert!(matches!(
            classify_cubic(&f, &[hint]).unwrap(),
            Classification::Singular {
                witness: SingularWitness::RationalPoint { .. }
            }
        ));
    }

    #[test]
    fn nodal_cubic_has_one_rational_node() {
        // z5·q + c with q, c in z0..z4 is singular at e_5
        let quad = z(0).pow(2).add(&z(1).mul(&z(2))).add(&z(3).mul(&z(4)));
        let cubes = (0..5).fold(MultiPoly::zero(P, 6), |acc, i| acc.add(&z(i).pow(3)));
        let f = CubicForm::new(z(5).mul(&quad).add(&cubes)).unwrap();
        let pts = rational_singular_points(&f, 100).unwrap();
        assert_eq!(pts, vec![vec![0, 0, 0, 0, 0, 1]]);
        assert!(!classify_cubic(&f, &[]).unwrap().is_smooth());
    }

    #[test]
    fn scan_stops_at_limit_and_finds_a_line_of_nodes() {
        // singular along the line z2 = ... = z5 = 0
        let f = CubicForm::new(
            z(2).pow(3)
                .add(&z(3).pow(3))
                .add(&z(0).mul(&z(4)).mul(&z(4)))
                .add(&z(1).mul(&z(5)).mul(&z(5))),
        )
        .unwrap();
        let all = rational_singular_points(&f, 1000).unwrap();
        assert_eq!(all.len(), 32);
        assert!(all.iter().all(|pt| pt[2..].iter().all(|&x| x == 0)));
        assert_eq!(rational_singular_points(&f, 3).unwrap().len(), 3);
    }

    #[test]
    fn characteristic_three_is_rejected() {
        let f = CubicForm::new(MultiPoly::<Fp>::var(3, 6, 0).pow(3)).unwrap();
        assert!(matches!(classify_cubic(&f, &[]), Err(Error::UnsupportedCharacteristic(3))));
    }
}
