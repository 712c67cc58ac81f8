//! Exact scalar fields: prime fields `F_p` and the rationals.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{gaussian_rank, ExactMatrix};
use crate::error::{Error, Result};

/// Which field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Context {
    Prime(u32),
    Rational,
}

impl Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Context::Prime(p) => write!(f, "F_{p}"),
            Context::Rational => write!(f, "Q"),
        }
    }
}

impl Context {
    pub fn modulus(&self) -> Option<u32> {
        match self {
            Context::Prime(p) => Some(*p),
            Context::Rational => None,
        }
    }
}

/// An exact field. Elements carry enough information to recover their
/// context, so mixed-context data can be detected at construction time.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    type Ctx: Copy + Eq + Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn context(ctx: Self::Ctx) -> Context;
    fn characteristic(ctx: Self::Ctx) -> u64;

    fn zero(ctx: Self::Ctx) -> Self;
    fn one(ctx: Self::Ctx) -> Self;
    fn from_i64(ctx: Self::Ctx, v: i64) -> Self;
    fn from_bigint(ctx: Self::Ctx, v: &BigInt) -> Self;
    fn parse(ctx: Self::Ctx, s: &str) -> Result<Self>;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Canonical decimal rendering used by the JSON exchange formats.
    fn to_decimal(&self) -> String {
        self.to_string()
    }

    /// Rank of a matrix over this field. Prime fields use plain Gaussian
    /// elimination; the rationals override this with fraction-free elimination.
    fn matrix_rank(m: &ExactMatrix<Self>) -> usize {
        gaussian_rank(m)
    }

    /// Scale factor that makes a coefficient list "nice" before Gröbner
    /// reduction. Over the rationals this clears denominators and content.
    fn content_normalizer(coeffs: &[Self]) -> Option<Self> {
        let _ = coeffs;
        None
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u32) -> Result<u32> {
    if is_prime(p as u64) {
        Ok(p)
    } else {
        Err(Error::NotPrime(p as u64))
    }
}

/// Element of `F_p`, stored canonically in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(v: i64, p: u32) -> Self {
        let m = p as i64;
        Fp {
            value: v.rem_euclid(m) as u32,
            modulus: p,
        }
    }

    pub fn from_u64(v: u64, p: u32) -> Self {
        Fp {
            value: (v % p as u64) as u32,
            modulus: p,
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn signed(&self) -> i64 {
        let v = self.value as i64;
        if v > self.modulus as i64 / 2 {
            v - self.modulus as i64
        } else {
            v
        }
    }

    #[inline]
    fn check(&self, other: &Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed prime moduli in arithmetic"
        );
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}%{}", self.value, self.modulus)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Field for Fp {
    type Ctx = u32;

    fn ctx(&self) -> u32 {
        self.modulus
    }

    fn context(ctx: u32) -> Context {
        Context::Prime(ctx)
    }

    fn characteristic(ctx: u32) -> u64 {
        ctx as u64
    }

    fn zero(p: u32) -> Self {
        Fp { value: 0, modulus: p }
    }

    fn one(p: u32) -> Self {
        Fp::from_u64(1, p)
    }

    fn from_i64(p: u32, v: i64) -> Self {
        Fp::new(v, p)
    }

    fn from_bigint(p: u32, v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(p));
        Fp {
            value: r.to_u32().expect("residue fits"),
            modulus: p,
        }
    }

    fn parse(p: u32, s: &str) -> Result<Self> {
        let q = parse_rational(s)?;
        Q(q).reduce(p)
            .ok_or_else(|| Error::Parse(format!("`{s}` has a denominator divisible by {p}")))
    }

    #[inline]
    fn is_zero(&self) -> bool {
        self.value == 0
    }

    #[inline]
    fn is_one(&self) -> bool {
        self.value == 1 % self.modulus
    }

    #[inline]
    fn add(&self, o: &Self) -> Self {
        self.check(o);
        let s = self.value as u64 + o.value as u64;
        let m = self.modulus as u64;
        Fp {
            value: (if s >= m { s - m } else { s }) as u32,
            modulus: self.modulus,
        }
    }

    #[inline]
    fn sub(&self, o: &Self) -> Self {
        self.check(o);
        let m = self.modulus as u64;
        let s = self.value as u64 + m - o.value as u64;
        Fp {
            value: (if s >= m { s - m } else { s }) as u32,
            modulus: self.modulus,
        }
    }

    #[inline]
    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        Fp {
            value: ((self.value as u64 * o.value as u64) % self.modulus as u64) as u32,
            modulus: self.modulus,
        }
    }

    #[inline]
    fn neg(&self) -> Self {
        if self.value == 0 {
            *self
        } else {
            Fp {
                value: self.modulus - self.value,
                modulus: self.modulus,
            }
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // extended Euclid on i64
        let (mut a, mut b) = (self.value as i64, self.modulus as i64);
        let (mut x0, mut x1) = (1i64, 0i64);
        while b != 0 {
            let q = a / b;
            (a, b) = (b, a - q * b);
            (x0, x1) = (x1, x0 - q * x1);
        }
        if a != 1 {
            return None;
        }
        Some(Fp::new(x0, self.modulus))
    }
}

/// Arbitrary-precision rational, always in lowest terms with positive denominator
/// (guaranteed by `BigRational`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Q(pub BigRational);

impl Q {
    pub fn new(num: i64, den: i64) -> Self {
        Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn int(v: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    /// Image in `F_p`, or `None` when `p` divides the denominator.
    pub fn reduce(&self, p: u32) -> Option<Fp> {
        let den = Fp::from_bigint(p, self.0.denom());
        if den.is_zero() {
            return None;
        }
        let num = Fp::from_bigint(p, self.0.numer());
        Some(num.mul(&den.inv()?))
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("`{s}` is not a decimal integer or fraction"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("`{s}` has zero denominator")));
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

impl Field for Q {
    type Ctx = ();

    fn ctx(&self) {}

    fn context(_: ()) -> Context {
        Context::Rational
    }

    fn characteristic(_: ()) -> u64 {
        0
    }

    fn zero(_: ()) -> Self {
        Q(BigRational::zero())
    }

    fn one(_: ()) -> Self {
        Q(BigRational::one())
    }

    fn from_i64(_: (), v: i64) -> Self {
        Q::int(v)
    }

    fn from_bigint(_: (), v: &BigInt) -> Self {
        Q(BigRational::from_integer(v.clone()))
    }

    fn parse(_: (), s: &str) -> Result<Self> {
        parse_rational(s).map(Q)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn add(&self, o: &Self) -> Self {
        Q(&self.0 + &o.0)
    }

    fn sub(&self, o: &Self) -> Self {
        Q(&self.0 - &o.0)
    }

    fn mul(&self, o: &Self) -> Self {
        Q(&self.0 * &o.0)
    }

    fn neg(&self) -> Self {
        Q(-&self.0)
    }

    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Q(self.0.recip()))
        }
    }

    fn matrix_rank(m: &ExactMatrix<Self>) -> usize {
        super::bareiss::rational_rank(m)
    }

    fn content_normalizer(coeffs: &[Self]) -> Option<Self> {
        // multiply by lcm of denominators, divide by gcd of numerators
        let mut lcm = BigInt::one();
        for c in coeffs {
            lcm = lcm.lcm(c.0.denom());
        }
        let mut g = BigInt::zero();
        for c in coeffs {
            let n = c.0.numer() * (&lcm / c.0.denom());
            g = g.gcd(&n);
        }
        if g.is_zero() {
            return None;
        }
        let lead_negative = coeffs.first().map(|c| c.0.is_negative()).unwrap_or(false);
        let g = if lead_negative { -g } else { g };
        Some(Q(BigRational::new(lcm, g)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_roundtrip() {
        for p in [2u32, 3, 31, 101, 1009] {
            for v in 1..p.min(200) {
                let a = Fp::from_u64(v as u64, p);
                assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn fp_canonical_range() {
        let a = Fp::new(-1, 31);
        assert_eq!(a.value(), 30);
        assert_eq!(a.signed(), -1);
        assert_eq!(Fp::new(62, 31).value(), 0);
    }

    #[test]
    fn rational_lowest_terms_and_reduction() {
        let a = Q::new(6, -4);
        assert_eq!(a.to_string(), "-3/2");
        let r = a.reduce(31).unwrap();
        assert_eq!(r.mul(&Fp::new(2, 31)), Fp::new(-3, 31));
        assert!(Q::new(1, 31).reduce(31).is_none());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Q::parse((), " -7/21 ").unwrap(), Q::new(-1, 3));
        assert!(Q::parse((), "1/0").is_err());
        assert!(Q::parse((), "x").is_err());
        assert_eq!(Fp::parse(31, "-1").unwrap().value(), 30);
        assert!(Fp::parse(31, "1/62").is_err());
    }

    #[test]
    fn primality() {
        assert!(check_prime(31).is_ok());
        assert!(check_prime(1).is_err());
        assert!(check_prime(33).is_err());
    }

    #[test]
    fn content_normalizer_clears_denominators() {
        let cs = [Q::new(1, 2), Q::new(-3, 4)];
        let k = Q::content_normalizer(&cs).unwrap();
        let scaled: Vec<_> = cs.iter().map(|c| c.mul(&k)).collect();
        assert_eq!(scaled, vec![Q::int(2), Q::int(-3)]);
    }
}
