//! Exact rational arithmetic, integer factorization and squarefree
//! decomposition.
//!
//! [`Rational`] is always kept in lowest terms with a positive denominator,
//! so structural equality and hashing coincide with numeric equality.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot factor zero")]
    FactorZero,
    #[error("composite cofactor {cofactor} resisted factorization")]
    FactorizationTooHard { cofactor: BigUint },
}

/// Arbitrary-precision rational number in canonical form.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer / denom`. Panics when `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn try_new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ExactError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Self::new(numer, denom))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn signum(&self) -> i32 {
        match self.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn checked_recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    /// Integer power; negative exponents invert. Panics on `0^negative`.
    pub fn pow(&self, exp: i32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn pow_u(&self, exp: u32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    /// Height `max(|p|, |q|)` of `p/q` in lowest terms.
    pub fn height(&self) -> BigInt {
        let n = self.numer().abs();
        let d = self.denom().clone();
        if n > d {
            n
        } else {
            d
        }
    }

    /// Exact square root when `self` is the square of a rational.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(Rational::new(n, d))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(n: $t) -> Self {
                Rational::from_integer(BigInt::from(n))
            }
        }
    )*};
}
from_prim!(i32, i64, u32, u64, usize, i128);

macro_rules! binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational($tr::$m(&self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational($tr::$m(self.0, rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational($tr::$m(self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational($tr::$m(&self.0, rhs.0))
            }
        }
        impl $atr<&Rational> for Rational {
            fn $am(&mut self, rhs: &Rational) {
                $atr::$am(&mut self.0, &rhs.0)
            }
        }
        impl $atr<Rational> for Rational {
            fn $am(&mut self, rhs: Rational) {
                $atr::$am(&mut self.0, rhs.0)
            }
        }
    };
}
binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);
binop!(Div, div, DivAssign, div_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::one()
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom().is_one() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ExactError;

    /// Accepts `p` or `p/q` with optional sign and surrounding whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ExactError::Parse(s.to_string());
        match t.split_once('/') {
            None => {
                let n = BigInt::from_str(t).map_err(|_| err())?;
                Ok(Rational::from_integer(n))
            }
            Some((a, b)) => {
                let n = BigInt::from_str(a.trim()).map_err(|_| err())?;
                let b = b.trim();
                if b.starts_with('+') || b.starts_with('-') {
                    return Err(err());
                }
                let d = BigInt::from_str(b).map_err(|_| err())?;
                Rational::try_new(n, d)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Integer factorization

const TRIAL_LIMIT: u32 = 1_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter(|(_, &p)| p)
            .map(|(i, _)| i as u32)
            .collect()
    })
}

/// Signed integer written as `sign · Π pᵉ` with primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerFactorization {
    pub sign: i8,
    pub factors: Vec<(BigUint, u32)>,
}

impl IntegerFactorization {
    pub fn recompose(&self) -> BigInt {
        let mag: BigUint = self
            .factors
            .iter()
            .map(|(p, e)| num_traits::pow(p.clone(), *e as usize))
            .product();
        let mag = BigInt::from(mag);
        if self.sign < 0 {
            -mag
        } else {
            mag
        }
    }
}

/// Effort limits for [`Factorizer::factor`].
#[derive(Debug, Clone, Copy)]
pub struct Factorizer {
    /// Inputs with more bits than this may fail with `FactorizationTooHard`.
    pub bound_bits: u64,
    /// Iterations per rho attempt.
    pub rho_iterations: u64,
    /// Number of polynomial constants tried by rho.
    pub rho_attempts: u64,
}

impl Default for Factorizer {
    fn default() -> Self {
        Factorizer {
            bound_bits: 96,
            rho_iterations: 1 << 22,
            rho_attempts: 16,
        }
    }
}

/// Factors `n` with the default effort limits.
pub fn factor_integer(n: &BigInt) -> Result<IntegerFactorization, ExactError> {
    Factorizer::default().factor(n)
}

impl Factorizer {
    pub fn factor(&self, n: &BigInt) -> Result<IntegerFactorization, ExactError> {
        if n.is_zero() {
            return Err(ExactError::FactorZero);
        }
        let sign = if n.is_negative() { -1 } else { 1 };
        let mut rest = n.magnitude().clone();
        let mut factors: Vec<(BigUint, u32)> = Vec::new();

        for &p in small_primes() {
            if rest.is_one() {
                break;
            }
            let pb = BigUint::from(p);
            if &pb * &pb > rest {
                break;
            }
            let mut e = 0u32;
            while (&rest % p).is_zero() {
                rest /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((pb, e));
            }
        }

        if !rest.is_one() {
            let mut large = Vec::new();
            // After trial division every factor of `rest` exceeds the trial limit.
            let limit = BigUint::from(TRIAL_LIMIT);
            if rest <= &limit * &limit || is_probable_prime(&rest) {
                large.push(rest);
            } else {
                let oversized = rest.bits() > self.bound_bits;
                self.split_composite(rest, &mut large, oversized)?;
            }
            large.sort();
            for p in large {
                match factors.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => factors.push((p, 1)),
                }
            }
        }
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(IntegerFactorization { sign, factors })
    }

    fn split_composite(
        &self,
        n: BigUint,
        out: &mut Vec<BigUint>,
        oversized: bool,
    ) -> Result<(), ExactError> {
        if n.is_one() {
            return Ok(());
        }
        if is_probable_prime(&n) {
            out.push(n);
            return Ok(());
        }
        if let Some(r) = perfect_power_root(&n) {
            let (root, k) = r;
            for _ in 0..k {
                self.split_composite(root.clone(), out, oversized)?;
            }
            return Ok(());
        }
        // Rho gets more room for inputs inside the configured bound.
        let budget = if oversized {
            self.rho_iterations / 4
        } else {
            self.rho_iterations
        };
        for c in 1..=self.rho_attempts {
            if let Some(d) = brent_rho(&n, c, budget) {
                let other = &n / &d;
                self.split_composite(d, out, oversized)?;
                self.split_composite(other, out, oversized)?;
                return Ok(());
            }
        }
        Err(ExactError::FactorizationTooHard { cofactor: n })
    }
}

fn perfect_power_root(n: &BigUint) -> Option<(BigUint, u32)> {
    let bits = n.bits() as u32;
    for k in 2..=bits.max(2) {
        let r = n.nth_root(k);
        if r < BigUint::from(2u32) {
            break;
        }
        if num_traits::pow(r.clone(), k as usize) == *n {
            return Some((r, k));
        }
    }
    None
}

fn brent_rho(n: &BigUint, c: u64, max_iter: u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let m: u64 = 128;
    let mut iters: u64 = 0;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
            iters += m;
            if iters > max_iter {
                return None;
            }
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

/// Miller–Rabin with the first thirteen prime bases. Deterministic (no
/// false positives) for `n < 3.317 · 10^24`.
pub fn is_probable_prime(n: &BigUint) -> bool {
    const BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &b in &BASES {
        if (n % b).is_zero() {
            return *n == BigUint::from(b);
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'outer: for &b in &BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

// ---------------------------------------------------------------------------
// Squarefree decomposition of rationals

/// `r = c² · d` with `d` a squarefree integer and `c > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SquarefreeDecomp {
    #[serde(rename = "D", serialize_with = "ser_bigint")]
    pub d: BigInt,
    pub c: Rational,
}

fn ser_bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

impl SquarefreeDecomp {
    pub fn reconstruct(&self) -> Rational {
        &self.c * &self.c * Rational::from_integer(self.d.clone())
    }
}

pub fn squarefree_part(r: &Rational) -> Result<SquarefreeDecomp, ExactError> {
    if r.is_zero() {
        return Ok(SquarefreeDecomp {
            d: BigInt::zero(),
            c: Rational::one(),
        });
    }
    let num = factor_integer(r.numer())?;
    let den = factor_integer(r.denom())?;
    let mut d = BigInt::from(num.sign);
    let mut c_num = BigInt::one();
    let mut c_den = BigInt::one();
    for (p, e) in &num.factors {
        let p = BigInt::from(p.clone());
        c_num *= num_traits::pow(p.clone(), (e / 2) as usize);
        if e % 2 == 1 {
            d *= p;
        }
    }
    // p^-e = (p^-ceil(e/2))² · p^(2·ceil(e/2) - e)
    for (p, e) in &den.factors {
        let p = BigInt::from(p.clone());
        let half = (*e).div_ceil(2);
        c_den *= num_traits::pow(p.clone(), half as usize);
        if e % 2 == 1 {
            d *= p;
        }
    }
    Ok(SquarefreeDecomp {
        d,
        c: Rational::new(c_num, c_den),
    })
}
