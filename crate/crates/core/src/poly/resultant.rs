//! Sylvester resultants computed by fraction-free (Bareiss) elimination.

use super::uni::UniPoly;
use crate::exact::Rational;

/// Integral domain with exact division, enough for Bareiss elimination.
pub trait Domain: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / d`, where `d` is known to divide `self`.
    fn exact_div(&self, d: &Self) -> Self;
}

impl Domain for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
}

impl Domain for UniPoly {
    fn zero_like(&self) -> Self {
        UniPoly::zero(self.variable())
    }
    fn one_like(&self) -> Self {
        UniPoly::one(self.variable())
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, d: &Self) -> Self {
        UniPoly::exact_div(self, d).expect("Bareiss pivot divides exactly")
    }
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn bareiss_det<R: Domain>(mut m: Vec<Vec<R>>, unit: &R) -> R {
    let n = m.len();
    if n == 0 {
        return unit.one_like();
    }
    let mut sign_flip = false;
    let mut prev = unit.one_like();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return unit.zero_like(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.exact_div(&prev);
            }
            m[i][k] = unit.zero_like();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Sylvester matrix of `f` and `g` given by coefficient slices (lowest
/// degree first). Formal degrees are `len - 1`; leading entries may be zero.
pub fn sylvester<R: Domain>(f: &[R], g: &[R]) -> Vec<Vec<R>> {
    let m = f.len().saturating_sub(1);
    let n = g.len().saturating_sub(1);
    let size = m + n;
    let zero = f.first().or(g.first()).expect("nonempty input").zero_like();
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of two coefficient slices with formal degrees `len - 1`.
pub fn resultant_generic<R: Domain>(f: &[R], g: &[R]) -> R {
    let unit = f.first().or(g.first()).expect("nonempty input").clone();
    bareiss_det(sylvester(f, g), &unit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn det_small() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        assert_eq!(bareiss_det(m, &q(0)), q(5));
        let m = vec![
            vec![q(0), q(1), q(2)],
            vec![q(1), q(0), q(3)],
            vec![q(4), q(-3), q(8)],
        ];
        // cofactor expansion along the first row: -1·(8-12) + 2·(-3-0) = -2
        assert_eq!(bareiss_det(m, &q(0)), q(-2));
        let singular = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(bareiss_det(singular, &q(0)), q(0));
    }

    #[test]
    fn constant_inputs() {
        // Res(c, g) = c^deg g
        let r = resultant_generic(&[q(3)], &[q(1), q(0), q(1)]);
        assert_eq!(r, q(9));
    }
}
