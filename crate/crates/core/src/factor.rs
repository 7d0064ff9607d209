//! Factorization of univariate polynomials over ℚ.
//!
//! Pipeline: primitive part → squarefree decomposition (Yun) → choice of a
//! good prime → factorization modulo `p` (distinct-degree, then
//! Cantor–Zassenhaus) → quadratic Hensel lifting past a Mignotte bound →
//! recombination of lifted factors by subset search.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{factor_integer, Rational};
use crate::ff::{seeded_rng, FpPoly, PrimeField};
use crate::poly::zpoly;
use crate::poly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("degree {degree} exceeds the factorization bound {bound}")]
    DegreeBoundExceeded { degree: usize, bound: usize },
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial must be nonconstant")]
    ConstantPolynomial,
}

/// `unit · Π factorᵐ` with primitive integral factors of positive leading
/// coefficient, ordered by degree and then by coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<FactorEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorEntry {
    #[serde(rename = "coeffs")]
    pub poly: UniPoly,
    #[serde(rename = "mult")]
    pub multiplicity: u32,
}

impl Factorization {
    pub fn expand(&self) -> UniPoly {
        let var = self
            .factors
            .first()
            .map(|f| f.poly.variable())
            .unwrap_or('z');
        let mut acc = UniPoly::constant(self.unit.clone(), var);
        for f in &self.factors {
            acc = &acc * &f.poly.pow(f.multiplicity);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].multiplicity == 1
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FactorConfig {
    pub max_degree: usize,
    /// Good primes examined before settling on the one with fewest
    /// modular factors.
    pub primes_tried: usize,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            max_degree: 24,
            primes_tried: 5,
        }
    }
}

pub fn factor_over_q(f: &UniPoly) -> Result<Factorization, FactorError> {
    factor_over_q_with(f, &FactorConfig::default())
}

pub fn factor_over_q_with(f: &UniPoly, cfg: &FactorConfig) -> Result<Factorization, FactorError> {
    let deg = f.degree().ok_or(FactorError::ZeroPolynomial)?;
    if deg > cfg.max_degree {
        return Err(FactorError::DegreeBoundExceeded {
            degree: deg,
            bound: cfg.max_degree,
        });
    }
    let var = f.variable();
    if deg == 0 {
        return Ok(Factorization {
            unit: f.lead(),
            factors: Vec::new(),
        });
    }
    let mut entries: Vec<(Vec<BigInt>, u32)> = Vec::new();
    for (part, mult) in squarefree_decomposition(f) {
        let (_, prim) = part.primitive_integer();
        for g in factor_squarefree_primitive(&prim, cfg) {
            entries.push((g, mult));
        }
    }
    entries.sort_by(|a, b| canonical_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    let mut lc_prod = Rational::one();
    for (g, m) in &entries {
        lc_prod *= Rational::from(g.last().unwrap().clone()).pow_u(*m);
    }
    let unit = f.lead() / lc_prod;
    Ok(Factorization {
        unit,
        factors: entries
            .into_iter()
            .map(|(g, m)| FactorEntry {
                poly: UniPoly::from_bigints(&g, var),
                multiplicity: m,
            })
            .collect(),
    })
}

fn canonical_cmp(a: &[BigInt], b: &[BigInt]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub fn is_irreducible(f: &UniPoly) -> Result<bool, FactorError> {
    match f.degree() {
        None => Err(FactorError::ZeroPolynomial),
        Some(0) => Err(FactorError::ConstantPolynomial),
        Some(_) => Ok(factor_over_q(f)?.is_irreducible()),
    }
}

/// Yun's squarefree decomposition: pairwise coprime squarefree parts with
/// multiplicities, each primitive with positive leading coefficient, in
/// increasing multiplicity. Constants produce an empty list.
pub fn squarefree_decomposition(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    if f.is_constant() {
        return Vec::new();
    }
    let f = f.primitive();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0).expect("gcd divides f");
    let c = df.exact_div(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        b = b.exact_div(&a).expect("gcd divides");
        let c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
        if !a.is_constant() {
            out.push((a.primitive(), i));
        }
        i += 1;
    }
    out
}

/// All rational roots, repeated by multiplicity, ordered by absolute value
/// with positive before negative.
pub fn rational_roots(f: &UniPoly) -> Vec<Rational> {
    if f.is_zero() || f.is_constant() {
        return Vec::new();
    }
    let (_, mut a) = f.primitive_integer();
    let mut roots = Vec::new();
    while a.first().is_some_and(|c| c.is_zero()) {
        a.remove(0);
        roots.push(Rational::zero());
    }
    if a.len() > 1 {
        match divisor_candidates(&a) {
            Some(cands) => {
                for r in cands {
                    // deflate by (q·z - p) as long as it divides
                    let lin = vec![-r.numer().clone(), r.denom().clone()];
                    while a.len() > 1 {
                        match zpoly::exact_div(&a, &lin) {
                            Some(q) => {
                                a = q;
                                roots.push(r.clone());
                            }
                            None => break,
                        }
                    }
                }
            }
            None => {
                let fac = factor_over_q(&UniPoly::from_bigints(&a, 'z')).expect("within bound");
                for e in fac.factors {
                    if e.poly.degree() == Some(1) {
                        let r = -e.poly.coeff(0) / e.poly.coeff(1);
                        for _ in 0..e.multiplicity {
                            roots.push(r.clone());
                        }
                    }
                }
            }
        }
    }
    roots.sort_by(|x, y| x.abs().cmp(&y.abs()).then(y.cmp(x)));
    roots
}

const MAX_ROOT_CANDIDATES: usize = 50_000;

/// Candidates `±p/q` with `p | a₀`, `q | aₙ` that pass the `f(±1)`
/// divisibility filters. `None` when enumeration would be too large.
fn divisor_candidates(a: &[BigInt]) -> Option<Vec<Rational>> {
    let a0 = a[0].abs();
    let an = a.last().unwrap().abs();
    let dp = divisors(&a0)?;
    let dq = divisors(&an)?;
    if dp.len().saturating_mul(dq.len()) > MAX_ROOT_CANDIDATES {
        return None;
    }
    let f1 = zpoly::eval(a, &BigInt::one());
    let fm1 = zpoly::eval(a, &BigInt::from(-1));
    let mut out = Vec::new();
    for q in &dq {
        for p in &dp {
            if !p.gcd(q).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let pp = p * BigInt::from(sign);
                // f(1) ≡ 0 mod (q - p), f(-1) ≡ 0 mod (q + p)
                let qm = q - &pp;
                let qp = q + &pp;
                if !qm.is_zero() && !(&f1 % &qm).is_zero() {
                    continue;
                }
                if !qp.is_zero() && !(&fm1 % &qp).is_zero() {
                    continue;
                }
                let value = eval_homogenized(a, &pp, q);
                if value.is_zero() {
                    out.push(Rational::new(pp, q.clone()));
                }
            }
        }
    }
    Some(out)
}

/// `Σ aᵢ pⁱ q^(n-i)`, i.e. `qⁿ f(p/q)`.
fn eval_homogenized(a: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    let n = a.len() - 1;
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    let mut terms = vec![BigInt::zero(); n + 1];
    for i in (0..=n).rev() {
        terms[i] = qpow.clone();
        qpow *= q;
    }
    let mut ppow = BigInt::one();
    for i in 0..=n {
        acc += &a[i] * &ppow * &terms[i];
        ppow *= p;
    }
    acc
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    if n.is_zero() {
        return None;
    }
    let fac = factor_integer(n).ok()?;
    let mut divs = vec![BigInt::one()];
    for (p, e) in fac.factors {
        let p = BigInt::from(p);
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pw = d.clone();
            next.push(pw.clone());
            for _ in 0..e {
                pw *= &p;
                next.push(pw.clone());
            }
        }
        divs = next;
        if divs.len() > MAX_ROOT_CANDIDATES {
            return None;
        }
    }
    divs.sort();
    Some(divs)
}

// ---------------------------------------------------------------------------
// Zassenhaus on a squarefree primitive integer polynomial

fn factor_squarefree_primitive(g: &[BigInt], cfg: &FactorConfig) -> Vec<Vec<BigInt>> {
    let g = zpoly::primitive(g);
    let n = g.len() - 1;
    if n <= 1 {
        return vec![g];
    }
    if g[0].is_zero() {
        let rest = zpoly::primitive(&g[1..]);
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        out.extend(factor_squarefree_primitive(&rest, cfg));
        return out;
    }
    let Some(p) = choose_prime(&g, cfg.primes_tried) else {
        unreachable!("a squarefree integer polynomial has good primes");
    };
    let field = PrimeField::new(p);
    let gp = reduce(&field, &g);
    let mut rng = seeded_rng();
    let modular = field.factor_squarefree(&field.monic(&gp), &mut rng);
    if modular.len() == 1 {
        return vec![g];
    }

    let lc = g.last().unwrap().abs();
    // Mignotte: every factor h of g has |coeff| <= 2^n ||g||_2; the
    // lc-scaled candidates need an extra factor |lc|.
    let bound = (BigInt::one() << n) * zpoly::l2_norm_ceil(&g) * &lc;
    let target = bound * 2 + 1;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut steps = 0;
    while modulus < target {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let lifted = multifactor_lift(&g, &modular, &field, steps);
    recombine(&g, &lifted, &modulus)
}

fn reduce(field: &PrimeField, a: &[BigInt]) -> FpPoly {
    let pb = BigInt::from(field.modulus());
    field.trim(
        a.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest primes `p ≥ 17` keeping the degree and squarefreeness; among
/// the first `tries` of them, the one with fewest modular factors.
fn choose_prime(g: &[BigInt], tries: usize) -> Option<u64> {
    let mut best: Option<(usize, u64)> = None;
    let mut found = 0;
    let mut p = 17u64;
    while found < tries && p < 100_000 {
        if is_prime_u64(p) {
            let field = PrimeField::new(p);
            let gp = reduce(&field, g);
            if gp.len() == g.len() && field.is_squarefree(&gp) {
                found += 1;
                let count = field.count_factors_squarefree(&field.monic(&gp));
                if best.is_none_or(|(c, _)| count < c) {
                    best = Some((count, p));
                }
                if count == 1 {
                    break;
                }
            }
        }
        p += 1;
    }
    best.map(|(_, p)| p)
}

// --- arithmetic in (ℤ/mℤ)[x] ----------------------------------------------

fn zmod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    zpoly::trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    zmod(&zpoly::mul(a, b), m)
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic(a: &[BigInt], h: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let a = zmod(a, m);
    if a.len() < h.len() {
        return (Vec::new(), a);
    }
    let dh = h.len() - 1;
    let mut r = a;
    let mut q = vec![BigInt::zero(); r.len() - dh];
    for k in (0..q.len()).rev() {
        let c = r[k + dh].mod_floor(m);
        if !c.is_zero() {
            for (j, hc) in h.iter().enumerate() {
                r[k + j] = (&r[k + j] - &c * hc).mod_floor(m);
            }
        }
        q[k] = c;
    }
    r.truncate(dh);
    (zmod(&q, m), zmod(&r, m))
}

fn from_fp(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from `f ≡ g·h`, `s·g + t·h ≡ 1 (mod m)` to the
/// same relations modulo `m²`. `h` stays monic.
#[allow(clippy::type_complexity)]
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let m2 = m * m;
    let e = zmod(&zpoly::sub(f, &zpoly::mul(g, h)), &m2);
    let (q, r) = divrem_monic(&mul_mod(s, &e, &m2), h, &m2);
    let g_new = zmod(
        &zpoly::add(&zpoly::add(g, &zpoly::mul(t, &e)), &zpoly::mul(&q, g)),
        &m2,
    );
    let h_new = zmod(&zpoly::add(h, &r), &m2);
    let b = zmod(
        &zpoly::sub(
            &zpoly::add(&zpoly::mul(s, &g_new), &zpoly::mul(t, &h_new)),
            &[BigInt::one()],
        ),
        &m2,
    );
    let (c, d) = divrem_monic(&mul_mod(s, &b, &m2), &h_new, &m2);
    let s_new = zmod(&zpoly::sub(s, &d), &m2);
    let t_new = zmod(
        &zpoly::sub(&zpoly::sub(t, &zpoly::mul(t, &b)), &zpoly::mul(&c, &g_new)),
        &m2,
    );
    (g_new, h_new, s_new, t_new)
}

/// Lifts `f ≡ lc(f)·Π uᵢ (mod p)` to monic factors modulo `p^(2^steps)`.
fn multifactor_lift(f: &[BigInt], factors: &[FpPoly], field: &PrimeField, steps: u32) -> Vec<Vec<BigInt>> {
    let p = BigInt::from(field.modulus());
    let mut big_m = p.clone();
    for _ in 0..steps {
        big_m = &big_m * &big_m;
    }
    if factors.len() == 1 {
        let lc = f.last().unwrap().mod_floor(&big_m);
        let inv = lc.modinv(&big_m).expect("leading coefficient invertible");
        return vec![zmod(&zpoly::scale(f, &inv), &big_m)];
    }
    let half = factors.len() / 2;
    let (left, right) = factors.split_at(half);
    let fp = reduce(field, f);
    let lc_p = *fp.last().unwrap();
    let mut g0 = vec![lc_p];
    for u in left {
        g0 = field.poly_mul(&g0, u);
    }
    let mut h0 = vec![1u64];
    for u in right {
        h0 = field.poly_mul(&h0, u);
    }
    let (one, s0, t0) = field.poly_ext_gcd(&g0, &h0);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (from_fp(&g0), from_fp(&h0), from_fp(&s0), from_fp(&t0));
    let mut m = p;
    for _ in 0..steps {
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let mut out = multifactor_lift(&g, left, field, steps);
    out.extend(multifactor_lift(&h, right, field, steps));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m >> 1;
    zpoly::trim(
        a.iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

/// Subset recombination of lifted monic factors into true factors over ℤ.
fn recombine(g: &[BigInt], lifted: &[Vec<BigInt>], m: &BigInt) -> Vec<Vec<BigInt>> {
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut f_star = g.to_vec();
    let mut out = Vec::new();
    let mut s = 1;
    let mut tc_cache: HashMap<usize, BigInt> = HashMap::new();
    for (i, u) in lifted.iter().enumerate() {
        tc_cache.insert(i, u[0].clone());
    }
    'outer: while 2 * s <= remaining.len() {
        let b = f_star.last().unwrap().clone();
        let target_tc = &b * &f_star[0];
        let mut combo: Vec<usize> = (0..s).collect();
        loop {
            let subset: Vec<usize> = combo.iter().map(|&k| remaining[k]).collect();
            // trailing coefficient of b·Π u_i must divide b·f*(0)
            let mut tc = b.clone();
            for &i in &subset {
                tc = (tc * &tc_cache[&i]).mod_floor(m);
            }
            let tc = symmetric(&[tc], m).into_iter().next().unwrap_or_default();
            if !tc.is_zero() && (&target_tc % &tc).is_zero() {
                let mut cand = vec![b.clone()];
                for &i in &subset {
                    cand = mul_mod(&cand, &lifted[i], m);
                }
                let cand = zpoly::primitive(&symmetric(&cand, m));
                if let Some(q) = zpoly::exact_div(&f_star, &cand) {
                    out.push(cand);
                    f_star = zpoly::primitive(&q);
                    remaining.retain(|i| !subset.contains(i));
                    continue 'outer;
                }
            }
            if !next_combination(&mut combo, remaining.len()) {
                break;
            }
        }
        s += 1;
    }
    out.push(f_star);
    out
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c, 'z')
    }

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn rational_root_examples() {
        assert_eq!(rational_roots(&z(&[-4, 0, 1])), vec![q(2), q(-2)]);
        assert!(rational_roots(&z(&[1, 1, 0, 1])).is_empty());
        assert!(rational_roots(&z(&[8, 1, 0, 2])).is_empty());
        // (2z - 1)^2 (z + 3) z
        let f = &(&z(&[-1, 2]).pow(2) * &z(&[3, 1])) * &z(&[0, 1]);
        assert_eq!(
            rational_roots(&f),
            vec![q(0), Rational::new(1, 2), Rational::new(1, 2), q(-3)]
        );
    }

    #[test]
    fn squarefree_examples() {
        let f = &z(&[-1, 1]).pow(2) * &z(&[2, 1]);
        assert_eq!(squarefree_decomposition(&f), vec![(z(&[2, 1]), 1), (z(&[-1, 1]), 2)]);
        assert_eq!(squarefree_decomposition(&z(&[1, 0, 1])), vec![(z(&[1, 0, 1]), 1)]);
        assert_eq!(
            squarefree_decomposition(&z(&[1, 0, -2, 0, 1])),
            vec![(z(&[-1, 0, 1]), 2)]
        );
    }

    #[test]
    fn factor_examples() {
        let f = factor_over_q(&z(&[-1, 0, 0, 0, 1])).unwrap();
        let polys: Vec<UniPoly> = f.factors.iter().map(|e| e.poly.clone()).collect();
        assert_eq!(polys, vec![z(&[-1, 1]), z(&[1, 1]), z(&[1, 0, 1])]);
        assert_eq!(f.unit, q(1));

        assert!(factor_over_q(&z(&[1, 1, 0, 1])).unwrap().is_irreducible());

        let f = factor_over_q(&z(&[1, 0, 1]).pow(2)).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].poly, z(&[1, 0, 1]));
        assert_eq!(f.factors[0].multiplicity, 2);
    }

    #[test]
    fn irreducibility_examples() {
        assert_eq!(is_irreducible(&z(&[1, 0, 1])), Ok(true));
        assert_eq!(is_irreducible(&z(&[-1, 0, 1])), Ok(false));
        assert_eq!(is_irreducible(&z(&[8, 1, 0, 2])), Ok(true));
        assert_eq!(is_irreducible(&z(&[3])), Err(FactorError::ConstantPolynomial));
    }

    #[test]
    fn units_and_rational_coefficients() {
        let f = UniPoly::new(vec![Rational::new(-1, 2), q(0), Rational::new(1, 2)], 'z');
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.unit, Rational::new(1, 2));
        assert_eq!(fac.expand(), f);
        let g = z(&[6, -4, -2]);
        let fac = factor_over_q(&g).unwrap();
        assert_eq!(fac.unit, q(-2));
        assert_eq!(fac.expand(), g);
    }

    #[test]
    fn swinnerton_dyer_style_recombination() {
        // x^4 - 10x^2 + 1 is irreducible but splits into linear or quadratic
        // factors modulo every prime
        assert!(factor_over_q(&z(&[1, 0, -10, 0, 1])).unwrap().is_irreducible());
        // (x^4 - 10x^2 + 1)(x^2 - 2)(x^3 + x + 1)
        let f = &(&z(&[1, 0, -10, 0, 1]) * &z(&[-2, 0, 1])) * &z(&[1, 1, 0, 1]);
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn degree_bound() {
        let mut c = vec![0i64; 26];
        c[0] = 1;
        c[25] = 1;
        assert!(matches!(
            factor_over_q(&z(&c)),
            Err(FactorError::DegreeBoundExceeded { degree: 25, bound: 24 })
        ));
        let mut c = vec![0i64; 25];
        c[0] = -1;
        c[24] = 1;
        // z^24 - 1 has one factor per divisor of 24
        let fac = factor_over_q(&z(&c)).unwrap();
        assert_eq!(fac.factors.len(), 8);
        assert_eq!(fac.expand(), z(&c));
    }

    #[test]
    fn json_shape() {
        let fac = factor_over_q(&z(&[-1, 0, 1])).unwrap();
        let v = serde_json::to_value(&fac).unwrap();
        assert_eq!(v["unit"], "1");
        assert_eq!(v["factors"][0]["coeffs"], serde_json::json!(["-1", "1"]));
        assert_eq!(v["factors"][0]["mult"], 1);
    }
}
