//! First-order jets `base + ε Σ c_i grad_i` with `ε² = 0`.

use super::field::Field;
use super::poly::{Algebra, MultiPoly};
use crate::error::{Error, Result};

/// A polynomial together with its first-order variation in a fixed number
/// of deformation coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JetPoly<F: Field> {
    base: MultiPoly<F>,
    grad: Vec<MultiPoly<F>>,
}

impl<F: Field> JetPoly<F> {
    pub fn new(base: MultiPoly<F>, grad: Vec<MultiPoly<F>>) -> Result<Self> {
        for g in &grad {
            if g.nvars() != base.nvars() {
                return Err(Error::ArityMismatch {
                    expected: base.nvars(),
                    got: g.nvars(),
                });
            }
        }
        Ok(JetPoly { base, grad })
    }

    /// A jet with no variation.
    pub fn constant(base: MultiPoly<F>, ncoeffs: usize) -> Self {
        let z = base.zero_like();
        JetPoly {
            base,
            grad: vec![z; ncoeffs],
        }
    }

    /// `base + ε · c_k · direction`.
    pub fn with_direction(base: MultiPoly<F>, ncoeffs: usize, k: usize, direction: MultiPoly<F>) -> Self {
        let mut j = Self::constant(base, ncoeffs);
        j.grad[k] = direction;
        j
    }

    pub fn base(&self) -> &MultiPoly<F> {
        &self.base
    }

    pub fn gradient(&self) -> &[MultiPoly<F>] {
        &self.grad
    }

    pub fn ncoeffs(&self) -> usize {
        self.grad.len()
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.grad.len(), o.grad.len(), "jets with different coefficient counts");
    }
}

impl<F: Field> Algebra<F> for JetPoly<F> {
    fn zero_like(&self) -> Self {
        Self::constant(self.base.zero_like(), self.grad.len())
    }

    fn add(&self, o: &Self) -> Self {
        self.check(o);
        JetPoly {
            base: self.base.add(&o.base),
            grad: self.grad.iter().zip(&o.grad).map(|(a, b)| a.add(b)).collect(),
        }
    }

    /// `(a + εx)(b + εy) = ab + ε(ay + bx)`.
    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        JetPoly {
            base: self.base.mul(&o.base),
            grad: self
                .grad
                .iter()
                .zip(&o.grad)
                .map(|(x, y)| {
                    let mut g = x.zero_like();
                    if !y.is_zero() && !self.base.is_zero() {
                        g = g.add(&self.base.mul(y));
                    }
                    if !x.is_zero() && !o.base.is_zero() {
                        g = g.add(&x.mul(&o.base));
                    }
                    g
                })
                .collect(),
        }
    }

    fn scale(&self, c: &F) -> Self {
        JetPoly {
            base: self.base.scale(c),
            grad: self.grad.iter().map(|g| g.scale(c)).collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.base.is_zero() && self.grad.iter().all(MultiPoly::is_zero)
    }
}

/// First-order substitution `f(args)`.
pub fn jet_eval<F: Field>(f: &MultiPoly<F>, args: &[JetPoly<F>]) -> Result<JetPoly<F>> {
    if args.len() != f.nvars() {
        return Err(Error::ArityMismatch {
            expected: f.nvars(),
            got: args.len(),
        });
    }
    let Some(first) = args.first() else {
        // no variables: f is a constant in an empty ring
        return Err(Error::ArityMismatch { expected: 1, got: 0 });
    };
    let one = JetPoly::constant(MultiPoly::one(first.base.ctx(), first.base.nvars()), first.ncoeffs());
    f.eval_in(args, &one)
}
