//! Multivariate polynomials with dense exponent vectors.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::Field;
use crate::error::{Error, Result};

/// Largest variable count any pipeline uses is 17; leave some headroom.
pub const MAX_VARS: usize = 24;

/// Exponent vector with cached total degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u16,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            exps: [0; MAX_VARS],
            deg: 0,
        }
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::one();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(e: &[u32]) -> Self {
        assert!(e.len() <= MAX_VARS, "too many variables");
        let mut m = Self::one();
        for (i, &x) in e.iter().enumerate() {
            m.exps[i] = u8::try_from(x).expect("exponent above 255");
            m.deg += x as u16;
        }
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn mul(&self, o: &Self) -> Self {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].checked_add(o.exps[i]).expect("exponent overflow");
        }
        m.deg += o.deg;
        m
    }

    #[inline]
    pub fn divides(&self, o: &Self) -> bool {
        self.deg <= o.deg && self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    #[inline]
    pub fn quotient_of(&self, o: &Self) -> Self {
        let mut m = *o;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        m
    }

    pub fn lcm(&self, o: &Self) -> Self {
        let mut m = Self::one();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(o.exps[i]);
            m.deg += m.exps[i] as u16;
        }
        m
    }

    pub fn is_coprime(&self, o: &Self) -> bool {
        self.exps
            .iter()
            .zip(&o.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Index of the single variable if this is a pure power `x_i^e`, e ≥ 1.
    pub fn pure_power_var(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..MAX_VARS).filter(|&i| self.exps[i] > 0).collect();
        (nz.len() == 1).then(|| nz[0])
    }

    pub fn max_var(&self) -> Option<usize> {
        (0..MAX_VARS).rev().find(|&i| self.exps[i] > 0)
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = names
            .iter()
            .enumerate()
            .filter(|(i, _)| self.exps[*i] > 0)
            .map(|(i, n)| {
                if self.exps[i] == 1 {
                    n.clone()
                } else {
                    format!("{n}^{}", self.exps[i])
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Storage order only (degree, then lexicographic); Gröbner code uses its own
/// monomial orders.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.max_var().map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// Polynomial in `nvars` variables with coefficients in `F`. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<F: Field> {
    nvars: usize,
    ctx: F::Ctx,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(ctx: F::Ctx, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        MultiPoly {
            nvars,
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: F::Ctx, nvars: usize, c: F) -> Self {
        let mut p = Self::zero(ctx, nvars);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one(ctx: F::Ctx, nvars: usize) -> Self {
        Self::constant(ctx, nvars, F::one(ctx))
    }

    pub fn var(ctx: F::Ctx, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        Self::monomial(ctx, nvars, Monomial::var(i), F::one(ctx))
    }

    pub fn monomial(ctx: F::Ctx, nvars: usize, m: Monomial, c: F) -> Self {
        let mut p = Self::zero(ctx, nvars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ctx: F::Ctx, nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, F)>) -> Result<Self> {
        let mut p = Self::zero(ctx, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    got: e.len(),
                });
            }
            if c.ctx() != ctx {
                return Err(Error::ContextMismatch {
                    expected: F::context(ctx),
                    found: F::context(c.ctx()),
                });
            }
            p.add_term(Monomial::from_exps(&e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ctx(&self) -> F::Ctx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(|| F::zero(self.ctx))
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.neg());
        }
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&F::one(self.ctx).neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx, self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, v)| (*m, v.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &F) -> Self {
        let mut r = Self::zero(self.ctx, self.nvars);
        if c.is_zero() {
            return r;
        }
        for (k, v) in &self.terms {
            r.terms.insert(k.mul(m), v.mul(c));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let mut r = Self::zero(self.ctx, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ctx, self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut r = Self::zero(self.ctx, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps(self.nvars);
            exps[i] -= 1;
            r.add_term(Monomial::from_exps(&exps), c.mul(&F::from_i64(self.ctx, e as i64)));
        }
        r
    }

    pub fn eval(&self, point: &[F]) -> Result<F> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = F::zero(self.ctx);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = t.mul(&x.pow(e as u64));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Substitutes ring elements for the variables.
    pub fn eval_in<A: Algebra<F>>(&self, args: &[A], one: &A) -> Result<A> {
        if args.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: args.len(),
            });
        }
        let mut acc = one.zero_like();
        for (m, c) in &self.terms {
            let mut t = one.scale(c);
            for (i, a) in args.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t = t.mul(a);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<G: Field>(&self, ctx: G::Ctx, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        let mut r = MultiPoly::zero(ctx, self.nvars);
        for (m, c) in &self.terms {
            r.add_term(*m, f(c));
        }
        r
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                if m.degree() == 0 {
                    c.to_string()
                } else if c.is_one() {
                    m.render(names)
                } else {
                    format!("{c}*{}", m.render(names))
                }
            })
            .collect();
        parts.join(" + ")
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.nvars, o.nvars, "polynomials from different rings");
        assert!(self.ctx == o.ctx, "polynomials over different fields");
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.nvars);
        write!(f, "{}", self.render(&names))
    }
}

pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// All exponent vectors of total degree `d` in `n` variables, in
/// lexicographically decreasing order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur.push(left);
            out.push(Monomial::from_exps(cur));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(n, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(n, 0, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Commutative algebras over `F` that polynomials can be evaluated in:
/// scalars, polynomials, and first-order jets.
pub trait Algebra<F: Field>: Clone {
    fn zero_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, c: &F) -> Self;
    fn is_zero(&self) -> bool;
}

impl<F: Field> Algebra<F> for F {
    fn zero_like(&self) -> Self {
        F::zero(self.ctx())
    }
    fn add(&self, o: &Self) -> Self {
        Field::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Field::mul(self, o)
    }
    fn scale(&self, c: &F) -> Self {
        Field::mul(self, c)
    }
    fn is_zero(&self) -> bool {
        Field::is_zero(self)
    }
}

impl<F: Field> Algebra<F> for MultiPoly<F> {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.ctx, self.nvars)
    }
    fn add(&self, o: &Self) -> Self {
        MultiPoly::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        MultiPoly::mul(self, o)
    }
    fn scale(&self, c: &F) -> Self {
        MultiPoly::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
}

/// JSON term form `{"coeff": "3/2", "exps": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

impl<F: Field> MultiPoly<F> {
    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| TermJson {
                coeff: c.to_decimal(),
                exps: m.exps(self.nvars),
            })
            .collect()
    }

    pub fn from_json(ctx: F::Ctx, nvars: usize, terms: &[TermJson]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|t| Ok((t.exps.clone(), F::parse(ctx, &t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(ctx, nvars, parsed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{Fp, Q};

    fn x(i: usize) -> MultiPoly<Fp> {
        MultiPoly::var(31, 3, i)
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = x(0).add(&x(1));
        let q = p.sub(&x(1));
        assert_eq!(q, x(0));
        assert_eq!(q.len(), 1);
        assert!(x(0).sub(&x(0)).is_zero());
        assert!(x(2).scale(&Fp::new(31, 31)).is_zero());
    }

    #[test]
    fn arithmetic_identities() {
        let p = x(0).add(&x(1).scale(&Fp::new(3, 31)));
        let q = x(2).mul(&x(0)).add(&MultiPoly::one(31, 3));
        let r = x(1).pow(2);
        assert_eq!(p.mul(&q), q.mul(&p));
        assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
    }

    #[test]
    fn derivative_and_eval() {
        // f = x0^2 x1 + 5
        let f = x(0).pow(2).mul(&x(1)).add(&MultiPoly::constant(31, 3, Fp::new(5, 31)));
        assert_eq!(f.derivative(0), x(0).mul(&x(1)).scale(&Fp::new(2, 31)));
        let v = f.eval(&[Fp::new(2, 31), Fp::new(3, 31), Fp::new(9, 31)]).unwrap();
        assert_eq!(v, Fp::new(17, 31));
        assert!(f.eval(&[Fp::new(1, 31)]).is_err());
        assert!(!f.is_homogeneous());
        assert!(f.homogeneous_part(3).is_homogeneous());
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(6, 3).len(), 56);
        assert_eq!(monomials_of_degree(6, 2).len(), 21);
        assert_eq!(monomials_of_degree(2, 24).len(), 25);
        assert_eq!(monomials_of_degree(17, 3).len(), 969);
    }

    #[test]
    fn json_roundtrip() {
        let f = MultiPoly::<Q>::from_terms((), 2, vec![(vec![2, 0], Q::new(1, 2)), (vec![0, 1], Q::int(-1))]).unwrap();
        let j = f.to_json();
        let g = MultiPoly::<Q>::from_json((), 2, &j).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn eval_in_polynomial_ring_composes() {
        // f(a, b) = a*b with a = x0 + 1, b = x0 - 1 gives x0^2 - 1
        let f = MultiPoly::<Q>::var((), 2, 0).mul(&MultiPoly::var((), 2, 1));
        let t = MultiPoly::<Q>::var((), 1, 0);
        let one = MultiPoly::<Q>::one((), 1);
        let got = f.eval_in(&[t.add(&one), t.sub(&one)], &one).unwrap();
        assert_eq!(got, t.mul(&t).sub(&one));
    }
}
