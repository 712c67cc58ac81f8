//! Gröbner bases and the ideal-theoretic services built on them.

mod buchberger;
pub mod order;

use serde::{Deserialize, Serialize};

use crate::algebra::field::{Context, Field};
use crate::algebra::poly::{default_names, monomials_of_degree, Monomial, MultiPoly, TermJson, MAX_VARS};
use crate::error::{Error, Result};
use buchberger::{reduce, reduced_basis, OrderedPoly};
pub use order::MonomialOrder;

/// A reduced Gröbner basis together with its ring and order.
#[derive(Clone, Debug)]
pub struct IdealBasis<F: Field> {
    ctx: F::Ctx,
    nvars: usize,
    order: MonomialOrder,
    gens: Vec<MultiPoly<F>>,
}

fn check_ring<F: Field>(ctx: F::Ctx, nvars: usize, gens: &[MultiPoly<F>]) -> Result<()> {
    if nvars > MAX_VARS {
        return Err(Error::Shape(format!("{nvars} variables exceeds the limit of {MAX_VARS}")));
    }
    for g in gens {
        if g.nvars() != nvars {
            return Err(Error::ArityMismatch {
                expected: nvars,
                got: g.nvars(),
            });
        }
        if g.ctx() != ctx {
            return Err(Error::ContextMismatch {
                expected: F::context(ctx),
                found: F::context(g.ctx()),
            });
        }
    }
    Ok(())
}

impl<F: Field> IdealBasis<F> {
    /// Computes the reduced Gröbner basis of `(gens)`. An empty generator
    /// list gives the zero ideal.
    pub fn new(ctx: F::Ctx, nvars: usize, gens: &[MultiPoly<F>], order: MonomialOrder) -> Result<Self> {
        check_ring(ctx, nvars, gens)?;
        if let MonomialOrder::Block(k) = order {
            if k > nvars {
                return Err(Error::Shape(format!("block of size {k} in {nvars} variables")));
            }
        }
        Ok(IdealBasis {
            ctx,
            nvars,
            order,
            gens: reduced_basis(ctx, nvars, gens, order),
        })
    }

    pub fn generators(&self) -> &[MultiPoly<F>] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_unit(&self) -> bool {
        self.leading_monomials().iter().any(|m| m.degree() == 0)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens
            .iter()
            .map(|g| {
                *g.terms()
                    .map(|(m, _)| m)
                    .max_by_key(|m| self.order.key(m, self.nvars))
                    .expect("basis elements are nonzero")
            })
            .collect()
    }

    fn ordered(&self) -> Vec<OrderedPoly<F>> {
        self.gens.iter().map(|g| OrderedPoly::from_poly(g, self.order)).collect()
    }

    /// Remainder of `f` on division by the basis; zero iff `f` is in the ideal.
    pub fn normal_form(&self, f: &MultiPoly<F>) -> Result<MultiPoly<F>> {
        check_ring(self.ctx, self.nvars, std::slice::from_ref(f))?;
        let basis = self.ordered();
        let all: Vec<usize> = (0..basis.len()).collect();
        let r = reduce(
            f.terms().map(|(m, c)| (*m, c.clone())),
            &basis,
            &all,
            self.order,
            self.nvars,
        );
        Ok(r.to_poly(self.ctx, self.nvars))
    }

    pub fn contains(&self, f: &MultiPoly<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    fn require_homogeneous(&self) -> Result<()> {
        match self.gens.iter().position(|g| !g.is_homogeneous()) {
            Some(i) => Err(Error::NonHomogeneous(format!("basis element {i} is not homogeneous"))),
            None => Ok(()),
        }
    }

    /// `dim_k I_d` for a homogeneous ideal: degree-`d` monomials minus
    /// standard monomials.
    pub fn graded_piece_dim(&self, d: u32) -> Result<usize> {
        self.require_homogeneous()?;
        let leads = self.leading_monomials();
        Ok(monomials_of_degree(self.nvars, d)
            .iter()
            .filter(|m| leads.iter().any(|l| l.divides(m)))
            .count())
    }

    /// Whether a homogeneous ideal has no zeros in projective space over the
    /// algebraic closure: some power of every variable must be a leading
    /// monomial.
    pub fn is_projectively_empty(&self) -> Result<bool> {
        self.require_homogeneous()?;
        let leads = self.leading_monomials();
        if leads.iter().any(|m| m.degree() == 0) {
            return Ok(true);
        }
        Ok((0..self.nvars).all(|i| leads.iter().any(|m| m.pure_power_var() == Some(i))))
    }
}

/// Elimination ideal `I ∩ k[x_keep]`, returned as a grevlex basis in the
/// variables `keep` (renumbered in the given order).
pub fn eliminate<F: Field>(ctx: F::Ctx, nvars: usize, gens: &[MultiPoly<F>], keep: &[usize]) -> Result<IdealBasis<F>> {
    check_ring(ctx, nvars, gens)?;
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    let mut seen = vec![false; nvars];
    for &k in keep {
        if k >= nvars || seen[k] {
            return Err(Error::Shape(format!("invalid keep index {k}")));
        }
        seen[k] = true;
    }
    // new position of each old variable: eliminated block first
    let elim: Vec<usize> = (0..nvars).filter(|i| !seen[*i]).collect();
    let mut perm = vec![0usize; nvars];
    for (pos, &v) in elim.iter().chain(keep.iter()).enumerate() {
        perm[v] = pos;
    }
    let permute = |g: &MultiPoly<F>| {
        let mut q = MultiPoly::zero(ctx, nvars);
        for (m, c) in g.terms() {
            let mut e = vec![0u32; nvars];
            for (i, &p) in perm.iter().enumerate() {
                e[p] = m.exp(i);
            }
            q.add_term(Monomial::from_exps(&e), c.clone());
        }
        q
    };
    let moved: Vec<MultiPoly<F>> = gens.iter().map(permute).collect();
    let big = IdealBasis::new(ctx, nvars, &moved, MonomialOrder::Block(elim.len()))?;
    let shift = elim.len();
    let kept: Vec<MultiPoly<F>> = big
        .gens
        .iter()
        .filter(|g| g.terms().all(|(m, _)| (0..shift).all(|i| m.exp(i) == 0)))
        .map(|g| {
            let mut q = MultiPoly::zero(ctx, keep.len());
            for (m, c) in g.terms() {
                let e: Vec<u32> = (shift..nvars).map(|i| m.exp(i)).collect();
                q.add_term(Monomial::from_exps(&e), c.clone());
            }
            q
        })
        .collect();
    IdealBasis::new(ctx, keep.len(), &kept, MonomialOrder::GrevLex)
}

/// JSON exchange form for ideals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub variables: Vec<String>,
    pub modulus: Option<u32>,
    pub polynomials: Vec<Vec<TermJson>>,
}

impl IdealJson {
    pub fn from_polys<F: Field>(ctx: F::Ctx, nvars: usize, polys: &[MultiPoly<F>]) -> Self {
        IdealJson {
            variables: default_names(nvars),
            modulus: F::context(ctx).modulus(),
            polynomials: polys.iter().map(MultiPoly::to_json).collect(),
        }
    }

    pub fn to_polys<F: Field>(&self, ctx: F::Ctx) -> Result<Vec<MultiPoly<F>>> {
        let want = F::context(ctx);
        let have = match self.modulus {
            Some(p) => Context::Prime(p),
            None => Context::Rational,
        };
        if want != have {
            return Err(Error::ContextMismatch {
                expected: want,
                found: have,
            });
        }
        self.polynomials
            .iter()
            .map(|t| MultiPoly::from_json(ctx, self.variables.len(), t))
            .collect()
    }
}
