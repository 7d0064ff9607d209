use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::bivariate::BiPoly;
use super::uni::{write_term, UniPoly};
use super::PolyError;
use crate::exact::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }
}

/// Exponent triple of `X^a Y^b Z^c`, ordered degree-reverse-lexicographically
/// (for equal total degree: fewer `Z`, then fewer `Y`, is larger).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = other.0;
        (a0 + a1 + a2)
            .cmp(&(b0 + b1 + b2))
            .then(b2.cmp(&a2))
            .then(b1.cmp(&a1))
            .then(a0.cmp(&b0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Homogeneous polynomial in `X, Y, Z` with rational coefficients, stored
/// sparsely. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomogPoly {
    degree: u32,
    terms: BTreeMap<Monomial, Rational>,
}

/// `F(x0, 1, z)` together with how far its z-degree falls short of `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub poly: UniPoly,
    pub deficiency: u32,
}

impl HomogPoly {
    pub fn zero(degree: u32) -> Self {
        HomogPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(c: Rational, exps: [u32; 3]) -> Self {
        let mut p = Self::zero(exps.iter().sum());
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Self::monomial(Rational::one(), e)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    /// Sums the given terms; all exponent triples must share one total
    /// degree. An empty term list needs an explicit degree.
    pub fn from_terms<I>(terms: I, degree: Option<u32>) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = ([u32; 3], Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        let mut deg = degree;
        for (e, c) in terms {
            let m = Monomial(e);
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d != m.degree() => {
                    return Err(PolyError::NotHomogeneous {
                        expected: d,
                        found: m.degree(),
                    })
                }
                _ => {}
            }
            let entry = map.entry(m).or_insert_with(Rational::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(HomogPoly {
            degree: deg.unwrap_or(0),
            terms: map,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[u32; 3], &Rational)> {
        self.terms.iter().map(|(m, c)| (&m.0, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: [u32; 3]) -> Rational {
        self.terms
            .get(&Monomial(exps))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Whether the variable occurs in some term.
    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.0[v.index()] > 0)
    }

    pub fn evaluate(&self, x: &Rational, y: &Rational, z: &Rational) -> Rational {
        let pt = [x, y, z];
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, v) in pt.iter().enumerate() {
                if m.0[k] > 0 {
                    t *= v.pow_u(m.0[k]);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        HomogPoly {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Sum of two forms of the same degree. Panics on degree mismatch.
    pub fn add(&self, other: &HomogPoly) -> HomogPoly {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(*m).or_insert_with(Rational::zero);
            *e += c;
        }
        terms.retain(|_, c| !c.is_zero());
        HomogPoly {
            degree: self.degree,
            terms,
        }
    }

    pub fn sub(&self, other: &HomogPoly) -> HomogPoly {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn mul(&self, other: &HomogPoly) -> HomogPoly {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let m = Monomial([a.0[0] + b.0[0], a.0[1] + b.0[1], a.0[2] + b.0[2]]);
                let e = terms.entry(m).or_insert_with(Rational::zero);
                *e += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        HomogPoly {
            degree: self.degree + other.degree,
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> HomogPoly {
        let mut acc = HomogPoly::constant(Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative; degree `d - 1` (zero form when `d = 0`).
    pub fn partial(&self, v: Var) -> HomogPoly {
        let k = v.index();
        let mut out = HomogPoly::zero(self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut n = m.0;
            n[k] -= 1;
            out.terms.insert(Monomial(n), c * Rational::from(e));
        }
        out
    }

    /// `F(x0, 1, z)` as a polynomial in `z`.
    pub fn fiber_poly(&self, x0: &Rational) -> Result<Fiber, PolyError> {
        let mut coeffs = vec![Rational::zero(); self.degree as usize + 1];
        for (m, c) in &self.terms {
            let [a, _, cz] = m.0;
            coeffs[cz as usize] += c * x0.pow_u(a);
        }
        let poly = UniPoly::new(coeffs, 'z');
        match poly.degree() {
            None => Err(PolyError::FiberIdenticallyZero { x0: x0.clone() }),
            Some(dz) => Ok(Fiber {
                deficiency: self.degree - dz as u32,
                poly,
            }),
        }
    }

    /// `F(1, 0, z)`: the fiber over the point at infinity of the x-line.
    pub fn fiber_at_infinity(&self) -> Result<Fiber, PolyError> {
        let mut coeffs = vec![Rational::zero(); self.degree as usize + 1];
        for (m, c) in &self.terms {
            if m.0[1] == 0 {
                coeffs[m.0[2] as usize] += c;
            }
        }
        let poly = UniPoly::new(coeffs, 'z');
        match poly.degree() {
            None => Err(PolyError::FiberIdenticallyZero {
                x0: Rational::zero(),
            }),
            Some(dz) => Ok(Fiber {
                deficiency: self.degree - dz as u32,
                poly,
            }),
        }
    }

    /// Homogenized `x ↦ t0 + t·x`, i.e. `X ↦ t0·Y + t·X`.
    pub fn substitute_shift_scale(&self, t0: &Rational, t: &Rational) -> Result<HomogPoly, PolyError> {
        if t.is_zero() {
            return Err(PolyError::InvalidScale);
        }
        let x_image = HomogPoly::var(Var::X)
            .scale(t)
            .add(&HomogPoly::var(Var::Y).scale(t0));
        Ok(self.substitute(&[x_image, HomogPoly::var(Var::Y), HomogPoly::var(Var::Z)]))
    }

    /// Replaces `X, Y, Z` by the given forms (all of one common degree).
    pub fn substitute(&self, images: &[HomogPoly; 3]) -> HomogPoly {
        let img_deg = images[0].degree;
        let mut out = HomogPoly::zero(self.degree * img_deg);
        let mut powers: [Vec<HomogPoly>; 3] = Default::default();
        for k in 0..3 {
            let max_e = self.terms.keys().map(|m| m.0[k]).max().unwrap_or(0);
            let mut pw = vec![HomogPoly::constant(Rational::one())];
            for e in 1..=max_e as usize {
                let next = pw[e - 1].mul(&images[k]);
                pw.push(next);
            }
            powers[k] = pw;
        }
        for (m, c) in &self.terms {
            let t = powers[0][m.0[0] as usize]
                .mul(&powers[1][m.0[1] as usize])
                .mul(&powers[2][m.0[2] as usize])
                .scale(c);
            out = out.add(&t);
        }
        out
    }

    /// `F(M·v)` for a 3×3 matrix `M` acting on column vectors `v = (X,Y,Z)`.
    pub fn linear_transform(&self, m: &[[Rational; 3]; 3]) -> HomogPoly {
        let row = |i: usize| {
            let mut f = HomogPoly::zero(1);
            for (j, v) in [Var::X, Var::Y, Var::Z].into_iter().enumerate() {
                f = f.add(&HomogPoly::var(v).scale(&m[i][j]));
            }
            f
        };
        self.substitute(&[row(0), row(1), row(2)])
    }

    /// The coefficient of `Z^k` viewed as a binary form in `X, Y`.
    pub fn z_slice(&self, k: u32) -> HomogPoly {
        let mut out = HomogPoly::zero(self.degree.saturating_sub(k));
        for (m, c) in &self.terms {
            if m.0[2] == k {
                out.terms.insert(Monomial([m.0[0], m.0[1], 0]), c.clone());
            }
        }
        out
    }

    /// Dehomogenization `F(x, 1, z)` as a polynomial in `z` over `ℚ[x]`.
    pub fn affine_y1(&self) -> BiPoly {
        let mut coeffs = vec![UniPoly::zero('x'); self.degree as usize + 1];
        for (m, c) in &self.terms {
            let mono = UniPoly::monomial(c.clone(), m.0[0] as usize, 'x');
            let k = m.0[2] as usize;
            coeffs[k] = &coeffs[k] + &mono;
        }
        BiPoly::new(coeffs)
    }

    /// Scales to integer coefficients with content 1 (sign kept).
    pub fn primitive(&self) -> HomogPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        for c in self.terms.values() {
            g = g.gcd(&(c.numer() * (&l / c.denom())));
        }
        self.scale(&Rational::new(l, g))
    }

    pub fn reduce_mod_p(&self, p: u64) -> Result<HomogPolyModP, PolyError> {
        let pb = BigInt::from(p);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let den = c.denom().mod_floor(&pb);
            if den.is_zero() {
                return Err(PolyError::BadReductionPrime {
                    p,
                    reason: "denominator vanishes",
                });
            }
            let num = c.numer().mod_floor(&pb).to_u64().unwrap();
            let den = den.to_u64().unwrap();
            let v = num * mod_inverse(den, p) % p;
            if v != 0 {
                terms.insert(*m, v);
            }
        }
        if terms.is_empty() {
            return Err(PolyError::BadReductionPrime {
                p,
                reason: "reduction drops the degree",
            });
        }
        Ok(HomogPolyModP {
            p,
            degree: self.degree,
            terms,
        })
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

fn monomial_string(e: &[u32; 3]) -> String {
    let names = ['X', 'Y', 'Z'];
    let parts: Vec<String> = e
        .iter()
        .zip(names)
        .filter(|(k, _)| **k > 0)
        .map(|(k, n)| if *k == 1 { n.to_string() } else { format!("{n}^{k}") })
        .collect();
    parts.join("*")
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            write_term(f, c, &monomial_string(&m.0), i == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (deg {})", self.degree)
    }
}

/// Homogeneous form over `𝔽_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogPolyModP {
    pub p: u64,
    pub degree: u32,
    pub terms: BTreeMap<Monomial, u64>,
}

impl HomogPolyModP {
    pub fn evaluate(&self, x: u64, y: u64, z: u64) -> u64 {
        let p = self.p as u128;
        let pw = |b: u64, e: u32| {
            let mut r = 1u128;
            for _ in 0..e {
                r = r * b as u128 % p;
            }
            r
        };
        let mut acc = 0u128;
        for (m, c) in &self.terms {
            let t = *c as u128 * pw(x, m.0[0]) % p * pw(y, m.0[1]) % p * pw(z, m.0[2]) % p;
            acc = (acc + t) % p;
        }
        acc as u64
    }

    pub fn partial(&self, v: Var) -> HomogPolyModP {
        let k = v.index();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[k] as u64;
            if e == 0 {
                continue;
            }
            let val = (*c as u128 * (e % self.p) as u128 % self.p as u128) as u64;
            if val != 0 {
                let mut n = m.0;
                n[k] -= 1;
                terms.insert(Monomial(n), val);
            }
        }
        HomogPolyModP {
            p: self.p,
            degree: self.degree.saturating_sub(1),
            terms,
        }
    }
}

impl fmt::Display for HomogPolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let c = Rational::from(*c);
            write_term(f, &c, &monomial_string(&m.0), i == 0)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    pub(crate) fn fermat(d: u32, sign_z: i64) -> HomogPoly {
        HomogPoly::from_terms(
            [([d, 0, 0], q(1)), ([0, d, 0], q(1)), ([0, 0, d], q(sign_z))],
            None,
        )
        .unwrap()
    }

    fn klein() -> HomogPoly {
        HomogPoly::from_terms(
            [([3, 1, 0], q(1)), ([0, 3, 1], q(1)), ([1, 0, 3], q(1))],
            None,
        )
        .unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let f = fermat(4, -1);
        assert_eq!(f.evaluate(&q(1), &q(0), &q(1)), q(0));
        assert_eq!(f.evaluate(&q(1), &q(1), &q(1)), q(1));
        assert_eq!(klein().evaluate(&q(0), &q(0), &q(1)), q(0));
    }

    #[test]
    fn partial_examples() {
        let f = fermat(4, 1);
        assert_eq!(f.partial(Var::X), HomogPoly::monomial(q(4), [3, 0, 0]));
        let zd = HomogPoly::monomial(q(7), [0, 0, 5]);
        let dx = zd.partial(Var::X);
        assert!(dx.is_zero());
        assert_eq!(dx.degree(), 4);
        let x3y = HomogPoly::monomial(q(1), [3, 1, 0]);
        assert_eq!(x3y.partial(Var::Y), HomogPoly::monomial(q(1), [3, 0, 0]));
    }

    #[test]
    fn fiber_examples() {
        let k = klein();
        let fib = k.fiber_poly(&q(1)).unwrap();
        assert_eq!(fib.poly, UniPoly::from_ints(&[1, 1, 0, 1], 'z'));
        assert_eq!(fib.deficiency, 1);
        let fib = k.fiber_poly(&q(0)).unwrap();
        assert_eq!(fib.poly, UniPoly::from_ints(&[0, 1], 'z'));
        assert_eq!(fib.deficiency, 3);
        let conic = fermat(2, -1);
        assert_eq!(
            conic.fiber_poly(&q(0)).unwrap().poly,
            UniPoly::from_ints(&[1, 0, -1], 'z')
        );
        // X·(X - Y) contains the line X = Y
        let red = HomogPoly::from_terms([([2, 0, 0], q(1)), ([1, 1, 0], q(-1))], None).unwrap();
        assert!(matches!(
            red.fiber_poly(&q(1)),
            Err(PolyError::FiberIdenticallyZero { .. })
        ));
    }

    #[test]
    fn shift_scale_examples() {
        let x = HomogPoly::var(Var::X);
        assert_eq!(x.substitute_shift_scale(&q(0), &q(1)).unwrap(), x);
        let x2 = HomogPoly::monomial(q(1), [2, 0, 0]);
        let expect = HomogPoly::from_terms(
            [([2, 0, 0], q(1)), ([1, 1, 0], q(2)), ([0, 2, 0], q(1))],
            None,
        )
        .unwrap();
        assert_eq!(x2.substitute_shift_scale(&q(1), &q(1)).unwrap(), expect);
        let xz = HomogPoly::monomial(q(1), [1, 0, 1]);
        let expect = HomogPoly::from_terms([([1, 0, 1], q(3)), ([0, 1, 1], q(2))], None).unwrap();
        assert_eq!(xz.substitute_shift_scale(&q(2), &q(3)).unwrap(), expect);
        assert_eq!(
            x.substitute_shift_scale(&q(1), &q(0)),
            Err(PolyError::InvalidScale)
        );
    }

    #[test]
    fn reduction_mod_p() {
        let f = fermat(4, -1).reduce_mod_p(3).unwrap();
        assert_eq!(f.to_string(), "X^4 + Y^4 + 2*Z^4");
        let half = HomogPoly::monomial(Rational::new(1, 2), [2, 0, 0]);
        assert!(matches!(
            half.reduce_mod_p(2),
            Err(PolyError::BadReductionPrime { p: 2, .. })
        ));
        let five = HomogPoly::monomial(q(5), [3, 1, 0]);
        assert!(matches!(
            five.reduce_mod_p(5),
            Err(PolyError::BadReductionPrime { p: 5, .. })
        ));
        assert_eq!(half.reduce_mod_p(7).unwrap().evaluate(1, 0, 0), 4);
    }

    #[test]
    fn display_degrevlex() {
        assert_eq!(klein().to_string(), "X^3*Y + Y^3*Z + X*Z^3");
        assert_eq!(fermat(4, -1).to_string(), "X^4 + Y^4 - Z^4");
        let g = HomogPoly::from_terms(
            [([1, 1, 0], Rational::new(-3, 2)), ([0, 0, 2], q(1)), ([2, 0, 0], q(2))],
            None,
        )
        .unwrap();
        assert_eq!(g.to_string(), "2*X^2 - 3/2*X*Y + Z^2");
    }

    #[test]
    fn linear_transform_identity_and_swap() {
        let o = q(0);
        let l = q(1);
        let id = [
            [l.clone(), o.clone(), o.clone()],
            [o.clone(), l.clone(), o.clone()],
            [o.clone(), o.clone(), l.clone()],
        ];
        assert_eq!(klein().linear_transform(&id), klein());
        let swap = [
            [o.clone(), l.clone(), o.clone()],
            [l.clone(), o.clone(), o.clone()],
            [o.clone(), o.clone(), l.clone()],
        ];
        let k = klein().linear_transform(&swap);
        assert_eq!(k.coeff([1, 3, 0]), q(1));
        assert_eq!(k.coeff([3, 0, 1]), q(1));
    }
}
