//! Dense univariate polynomials, used for gcd certificates.

use super::field::Field;

/// Coefficients in increasing degree, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly<F: Field> {
    ctx: F::Ctx,
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(ctx: F::Ctx, mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(F::is_zero) {
            coeffs.pop();
        }
        UniPoly { ctx, coeffs }
    }

    pub fn zero(ctx: F::Ctx) -> Self {
        UniPoly { ctx, coeffs: Vec::new() }
    }

    pub fn constant(ctx: F::Ctx, c: F) -> Self {
        Self::new(ctx, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = F::zero(self.ctx);
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z).add(o.coeffs.get(i).unwrap_or(&z)))
            .collect();
        Self::new(self.ctx, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&F::one(self.ctx).neg()))
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.ctx, self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.ctx);
        }
        let mut c = vec![F::zero(self.ctx); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Self::new(self.ctx, c)
    }

    pub fn rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.len();
        let inv = d.coeffs[dl - 1].inv().expect("nonzero leading coefficient");
        while r.len() >= dl {
            let lead = r[r.len() - 1].mul(&inv);
            let shift = r.len() - dl;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[shift + j] = r[shift + j].sub(&lead.mul(dc));
            }
            r.pop();
            while r.last().is_some_and(F::is_zero) {
                r.pop();
            }
        }
        Self::new(self.ctx, r)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.coeffs.last() {
            Some(l) => a.scale(&l.inv().expect("nonzero")),
            None => a,
        }
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(self.ctx), |acc, c| acc.mul(x).add(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Fp;

    fn up(c: &[i64]) -> UniPoly<Fp> {
        UniPoly::new(31, c.iter().map(|&x| Fp::new(x, 31)).collect())
    }

    #[test]
    fn gcd_of_products() {
        // (x-1)(x-2) and (x-1)(x+5)
        let a = up(&[-1, 1]).mul(&up(&[-2, 1]));
        let b = up(&[-1, 1]).mul(&up(&[5, 1]));
        assert_eq!(a.gcd(&b), up(&[-1, 1]));
        assert_eq!(up(&[3]).gcd(&a), up(&[1]));
    }

    #[test]
    fn remainder_and_eval() {
        let a = up(&[1, 0, 1]);
        let r = a.rem(&up(&[-2, 1]));
        assert_eq!(r, up(&[5]));
        assert_eq!(a.eval(&Fp::new(2, 31)), Fp::new(5, 31));
        assert_eq!(up(&[0, 0]).degree(), None);
    }
}
