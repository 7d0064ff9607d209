//! Arithmetic in `𝔽_p` and `𝔽_p[x]` for word-sized primes: the modular
//! side of factorization and smoothness certificates.
//!
//! Polynomials are coefficient vectors, lowest degree first, with no
//! trailing zeros.

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type FpPoly = Vec<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be prime and below `2^32`.
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 32)).contains(&p), "unsupported field size {p}");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    // --- polynomials -------------------------------------------------------

    pub fn trim(&self, mut f: FpPoly) -> FpPoly {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(out)
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(out)
    }

    pub fn poly_scale(&self, a: &[u64], c: u64) -> FpPoly {
        self.trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.trim(out)
    }

    pub fn poly_divrem(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut r = a.to_vec();
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], inv);
            if c != 0 {
                for (j, &bc) in b.iter().enumerate() {
                    r[k + j] = self.sub(r[k + j], self.mul(c, bc));
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn poly_rem(&self, a: &[u64], b: &[u64]) -> FpPoly {
        self.poly_divrem(a, b).1
    }

    pub fn monic(&self, f: &[u64]) -> FpPoly {
        match f.last() {
            None => Vec::new(),
            Some(&l) => self.poly_scale(f, self.inv(l)),
        }
    }

    /// Monic gcd (zero when both are zero).
    pub fn poly_gcd(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        while !y.is_empty() {
            let r = self.poly_rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    pub fn poly_ext_gcd(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.last() {
            None => (Vec::new(), s0, t0),
            Some(&l) => {
                let inv = self.inv(l);
                (
                    self.poly_scale(&r0, inv),
                    self.poly_scale(&s0, inv),
                    self.poly_scale(&t0, inv),
                )
            }
        }
    }

    pub fn poly_derivative(&self, f: &[u64]) -> FpPoly {
        self.trim(
            f.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul(c, i as u64 % self.p))
                .collect(),
        )
    }

    pub fn poly_eval(&self, f: &[u64], x: u64) -> u64 {
        f.iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// `base^e mod m` with a big exponent.
    pub fn poly_powmod(&self, base: &[u64], e: &BigUint, m: &[u64]) -> FpPoly {
        let mut result = self.poly_rem(&[1], m);
        let b = self.poly_rem(base, m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = self.poly_rem(&self.poly_mul(&result, &result), m);
            if e.bit(i) {
                result = self.poly_rem(&self.poly_mul(&result, &b), m);
            }
        }
        result
    }

    pub fn is_squarefree(&self, f: &[u64]) -> bool {
        let d = self.poly_derivative(f);
        if d.is_empty() {
            return f.len() <= 1;
        }
        self.poly_gcd(f, &d).len() == 1
    }

    /// Squarefree decomposition of a monic polynomial in characteristic `p`:
    /// `f = Π gᵢ^mᵢ` with each `gᵢ` monic squarefree.
    pub fn squarefree_decomposition(&self, f: &[u64]) -> Vec<(FpPoly, u32)> {
        let f = self.monic(f);
        if f.len() <= 1 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let d = self.poly_derivative(&f);
        if d.is_empty() {
            // f = g(x^p) = g(x)^p
            let root: FpPoly = f.iter().step_by(self.p as usize).copied().collect();
            for (g, m) in self.squarefree_decomposition(&root) {
                out.push((g, m * self.p as u32));
            }
            return out;
        }
        let mut c = self.poly_gcd(&f, &d);
        let mut w = self.poly_divrem(&f, &c).0;
        let mut i = 1u32;
        while w.len() > 1 {
            let y = self.poly_gcd(&w, &c);
            let z = self.poly_divrem(&w, &y).0;
            if z.len() > 1 {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = self.poly_divrem(&c, &w).0;
        }
        if c.len() > 1 {
            let root: FpPoly = c.iter().step_by(self.p as usize).copied().collect();
            for (g, m) in self.squarefree_decomposition(&root) {
                out.push((g, m * self.p as u32));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(product of all irreducible factors of degree d, d)`.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut rest = self.monic(f);
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let pb = BigUint::from(self.p);
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                let deg = rest.len() - 1;
                out.push((rest, deg));
                break;
            }
            h = self.poly_powmod(&h, &pb, &rest);
            let g = self.poly_gcd(&self.poly_sub(&h, &x), &rest);
            if g.len() > 1 {
                rest = self.poly_divrem(&rest, &g).0;
                h = self.poly_rem(&h, &rest);
                out.push((g, d));
            }
        }
        out
    }

    /// Cantor–Zassenhaus equal-degree splitting (odd `p`): `f` monic,
    /// squarefree, all irreducible factors of degree `d`.
    pub fn equal_degree(&self, f: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        assert!(self.p > 2, "equal-degree splitting needs odd p");
        let e = (num_traits::pow(BigUint::from(self.p), d) - 1u32) >> 1;
        loop {
            let a: FpPoly = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() <= 1 {
                continue;
            }
            let g = self.poly_gcd(&a, f);
            let g = if g.len() > 1 {
                g
            } else {
                let b = self.poly_powmod(&a, &e, f);
                self.poly_gcd(&self.poly_sub(&b, &[1]), f)
            };
            if g.len() > 1 && g.len() < f.len() {
                let h = self.poly_divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&h, d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a monic squarefree polynomial, sorted.
    pub fn factor_squarefree(&self, f: &[u64], rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    /// Full factorization `f = lc · Π gᵢ^mᵢ`.
    pub fn factor(&self, f: &[u64], rng: &mut ChaCha8Rng) -> (u64, Vec<(FpPoly, u32)>) {
        let f = self.trim(f.to_vec());
        let lc = *f.last().expect("factoring zero polynomial");
        let mut out = Vec::new();
        for (g, m) in self.squarefree_decomposition(&f) {
            for h in self.factor_squarefree(&g, rng) {
                out.push((h, m));
            }
        }
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
        (lc, out)
    }

    /// Number of irreducible factors of a squarefree polynomial (with
    /// degree information only; no splitting).
    pub fn count_factors_squarefree(&self, f: &[u64]) -> usize {
        self.distinct_degree(f)
            .iter()
            .map(|(g, d)| (g.len() - 1) / d)
            .sum()
    }

    // --- linear algebra ----------------------------------------------------

    pub fn det(&self, mut m: Vec<Vec<u64>>) -> u64 {
        let n = m.len();
        let mut det = 1u64;
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| m[i][k] != 0) else {
                return 0;
            };
            if piv != k {
                m.swap(piv, k);
                det = self.neg(det);
            }
            det = self.mul(det, m[k][k]);
            let inv = self.inv(m[k][k]);
            for i in k + 1..n {
                if m[i][k] == 0 {
                    continue;
                }
                let factor = self.mul(m[i][k], inv);
                for j in k..n {
                    let t = self.mul(factor, m[k][j]);
                    m[i][j] = self.sub(m[i][j], t);
                }
            }
        }
        det
    }

    /// Sylvester resultant with formal degrees `len - 1` (leading entries
    /// may vanish).
    pub fn resultant_formal(&self, f: &[u64], g: &[u64]) -> u64 {
        let m = f.len().saturating_sub(1);
        let n = g.len().saturating_sub(1);
        let size = m + n;
        let mut rows = Vec::with_capacity(size);
        for i in 0..n {
            let mut row = vec![0u64; size];
            for (j, &c) in f.iter().rev().enumerate() {
                row[i + j] = c;
            }
            rows.push(row);
        }
        for i in 0..m {
            let mut row = vec![0u64; size];
            for (j, &c) in g.iter().rev().enumerate() {
                row[i + j] = c;
            }
            rows.push(row);
        }
        self.det(rows)
    }

    /// Lagrange interpolation through `(xs[i], ys[i])` with distinct `xs`.
    pub fn interpolate(&self, xs: &[u64], ys: &[u64]) -> FpPoly {
        let mut out: FpPoly = Vec::new();
        for i in 0..xs.len() {
            if ys[i] == 0 {
                continue;
            }
            let mut basis = vec![1u64];
            let mut denom = 1u64;
            for j in 0..xs.len() {
                if i == j {
                    continue;
                }
                basis = self.poly_mul(&basis, &[self.neg(xs[j]), 1]);
                denom = self.mul(denom, self.sub(xs[i], xs[j]));
            }
            let c = self.mul(ys[i], self.inv(denom));
            out = self.poly_add(&out, &self.poly_scale(&basis, c));
        }
        out
    }
}

/// The deterministic generator used by every randomized modular routine.
pub fn seeded_rng() -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(0x5eed_c0de)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gcd_and_ext_gcd() {
        let f = PrimeField::new(17);
        let a = f.poly_mul(&[1, 1], &[3, 0, 1]);
        let b = f.poly_mul(&[1, 1], &[5, 1]);
        assert_eq!(f.poly_gcd(&a, &b), vec![1, 1]);
        let (g, s, t) = f.poly_ext_gcd(&[3, 0, 1], &[5, 1]);
        assert_eq!(g, vec![1]);
        let lhs = f.poly_add(&f.poly_mul(&s, &[3, 0, 1]), &f.poly_mul(&t, &[5, 1]));
        assert_eq!(lhs, vec![1]);
    }

    #[test]
    fn factor_x4_minus_1() {
        // x^4 - 1 = (x-1)(x+1)(x-4)(x+4) over F_17 since 4^2 = -1
        let f = PrimeField::new(17);
        let mut rng = seeded_rng();
        let (lc, fs) = f.factor(&[16, 0, 0, 0, 1], &mut rng);
        assert_eq!(lc, 1);
        assert_eq!(fs.len(), 4);
        assert!(fs.iter().all(|(g, m)| g.len() == 2 && *m == 1));
        // x^2 + 1 is irreducible mod 19
        let f = PrimeField::new(19);
        let (_, fs) = f.factor(&[1, 0, 1], &mut rng);
        assert_eq!(fs, vec![(vec![1, 0, 1], 1)]);
    }

    #[test]
    fn squarefree_in_characteristic_p() {
        let f = PrimeField::new(3);
        // (x+1)^3 (x+2) = x^4 + 2x^3 + 0x^2 + 2x + 2 over F_3
        let cube = f.poly_mul(&f.poly_mul(&[1, 1], &[1, 1]), &[1, 1]);
        let g = f.poly_mul(&cube, &[2, 1]);
        let dec = f.squarefree_decomposition(&g);
        assert!(dec.contains(&(vec![1, 1], 3)));
        assert!(dec.contains(&(vec![2, 1], 1)));
    }

    #[test]
    fn det_and_interpolation() {
        let f = PrimeField::new(101);
        assert_eq!(f.det(vec![vec![2, 1], vec![1, 3]]), 5);
        let xs = [1, 2, 3, 4];
        let poly = [7, 0, 3, 1];
        let ys: Vec<u64> = xs.iter().map(|&x| f.poly_eval(&poly, x)).collect();
        assert_eq!(f.interpolate(&xs, &ys), poly.to_vec());
    }

    proptest! {
        #[test]
        fn factor_mod_p_multiplies_back(coeffs in proptest::collection::vec(0u64..23, 2..10)) {
            let f = PrimeField::new(23);
            let poly = f.trim(coeffs);
            prop_assume!(poly.len() >= 2);
            let mut rng = seeded_rng();
            let (lc, fs) = f.factor(&poly, &mut rng);
            let mut prod = vec![lc];
            for (g, m) in &fs {
                for _ in 0..*m {
                    prod = f.poly_mul(&prod, g);
                }
                prop_assert_eq!(f.count_factors_squarefree(g), 1);
            }
            prop_assert_eq!(prod, poly);
        }
    }
}
