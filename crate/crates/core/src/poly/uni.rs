use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::zpoly;
use crate::exact::Rational;

/// Dense univariate polynomial over the rationals, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
    var: char,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>, var: char) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs, var }
    }

    pub fn from_ints(coeffs: &[i64], var: char) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect(), var)
    }

    pub fn from_bigints(coeffs: &[BigInt], var: char) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from).collect(), var)
    }

    pub fn zero(var: char) -> Self {
        UniPoly {
            coeffs: Vec::new(),
            var,
        }
    }

    pub fn constant(c: Rational, var: char) -> Self {
        Self::new(vec![c], var)
    }

    pub fn one(var: char) -> Self {
        Self::constant(Rational::one(), var)
    }

    /// `c · varᵏ`
    pub fn monomial(c: Rational, k: usize, var: char) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs, var)
    }

    pub fn var(var: char) -> Self {
        Self::monomial(Rational::one(), 1, var)
    }

    pub fn variable(&self) -> char {
        self.var
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from(i))
            .collect();
        Self::new(coeffs, self.var)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.var)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lead().recip())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division. Panics when `d` is zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        let inv = d.lead().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(self.var), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    r[k + j] -= t;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q, self.var), UniPoly::new(r, self.var))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, f: &UniPoly) -> bool {
        !self.is_zero() && f.div_rem(self).1.is_zero()
    }

    /// Writes `self = content · prim` with `prim` integral, primitive and
    /// with positive leading coefficient. The zero polynomial maps to
    /// `(0, [])`.
    pub fn primitive_integer(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Rational::new(g, l), prim)
    }

    /// Primitive integer normalization as a `UniPoly` (positive leading
    /// coefficient). Zero stays zero.
    pub fn primitive(&self) -> UniPoly {
        let (_, p) = self.primitive_integer();
        UniPoly::from_bigints(&p, self.var)
    }

    /// Greatest common divisor, normalized primitive with positive leading
    /// coefficient (zero when both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (_, a) = self.primitive_integer();
        let (_, b) = other.primitive_integer();
        UniPoly::from_bigints(&zpoly::gcd(&a, &b), self.var)
    }

    /// `self(g(var))`
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(g.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &UniPoly::constant(c.clone(), g.var);
        }
        acc
    }

    /// Replaces `var` by `var^s`.
    pub fn substitute_power(&self, s: u32) -> UniPoly {
        assert!(s >= 1, "power substitution needs s >= 1");
        let s = s as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * s + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * s] = c.clone();
        }
        UniPoly::new(coeffs, self.var)
    }

    /// Squarefree part `f / gcd(f, f')`, primitive normalized.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.is_constant() {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").primitive()
    }

    /// Number of distinct roots over the algebraic closure.
    pub fn distinct_root_count(&self) -> usize {
        self.squarefree_part().degree().unwrap_or(0)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{}", self.var, i),
            };
            write_term(f, c, &mono, first)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Writes `c·mono` with a leading sign separator; shared by the printers.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    c: &Rational,
    mono: &str,
    first: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else if neg {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    let a = c.abs();
    if mono.is_empty() {
        write!(f, "{a}")
    } else if a.is_one() {
        write!(f, "{mono}")
    } else {
        write!(f, "{a}*{mono}")
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::new(coeffs, self.var)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPoly::new(coeffs, self.var)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.var);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs, self.var)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                $tr::$m(&self, &rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c, 'z')
    }

    #[test]
    fn arithmetic_and_display() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!((&a * &b).to_string(), "z^2 - 1");
        assert_eq!(p(&[8, 1, 0, 2]).to_string(), "2*z^3 + z + 8");
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!(UniPoly::new(vec![Rational::new(-1, 2)], 'x').to_string(), "-1/2");
        assert_eq!(&a - &a, UniPoly::zero('z'));
    }

    #[test]
    fn division() {
        let f = p(&[-1, 0, 0, 0, 1]);
        let (q, r) = f.div_rem(&p(&[1, 0, 1]));
        assert_eq!(q, p(&[-1, 0, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[1, 2, 3]).div_rem(&p(&[1, 2]));
        assert_eq!(&(&q * &p(&[1, 2])) + &r, p(&[1, 2, 3]));
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn gcd_and_primitive() {
        let f = &p(&[-1, 1]) * &p(&[2, 3]);
        let g = &p(&[-1, 1]) * &p(&[5, 0, 1]);
        assert_eq!(f.gcd(&g), p(&[-1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[1, 1])), p(&[1]));
        let h = UniPoly::new(vec![Rational::new(1, 2), Rational::new(-3, 4)], 'z');
        let (c, prim) = h.primitive_integer();
        assert_eq!(prim, vec![BigInt::from(-2), BigInt::from(3)]);
        assert_eq!(c, Rational::new(-1, 4));
    }

    #[test]
    fn power_substitution() {
        assert_eq!(p(&[1, 1]).substitute_power(2), p(&[1, 0, 1]));
        assert_eq!(p(&[0, 0, 1]).substitute_power(3), p(&[0, 0, 0, 0, 0, 0, 1]));
        assert_eq!(
            p(&[-1, 0, 0, 0, 1]).substitute_power(2),
            p(&[-1, 0, 0, 0, 0, 0, 0, 0, 1])
        );
    }

    #[test]
    fn compose_and_squarefree() {
        let f = p(&[0, 0, 1]);
        assert_eq!(f.compose(&p(&[1, 1])), p(&[1, 2, 1]));
        let g = &p(&[-1, 1]).pow(3) * &p(&[2, 1]);
        assert_eq!(g.squarefree_part(), &p(&[-1, 1]) * &p(&[2, 1]));
        assert_eq!(g.distinct_root_count(), 2);
    }
}
