//! Arithmetic in `ℚ(α) = ℚ[x]/(h)` for irreducible `h`, and gcds in `ℚ(α)[z]`.

use crate::poly::UniPoly;

pub(crate) struct NumberField {
    modulus: UniPoly,
}

/// Polynomial in `z` over the field, coefficients low degree first.
pub(crate) type KPoly = Vec<UniPoly>;

impl NumberField {
    pub fn new(h: &UniPoly) -> Self {
        NumberField {
            modulus: h.clone().with_var('x').monic(),
        }
    }

    pub fn reduce(&self, a: &UniPoly) -> UniPoly {
        a.clone().with_var('x').div_rem(&self.modulus).1
    }

    fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        self.reduce(&(a * b))
    }

    /// Inverse of a nonzero element.
    fn inv(&self, a: &UniPoly) -> UniPoly {
        let (mut r0, mut r1) = (self.modulus.clone(), self.reduce(a));
        let (mut t0, mut t1) = (UniPoly::zero('x'), UniPoly::one('x'));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let t = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        debug_assert!(r0.is_constant(), "modulus must be irreducible");
        let c = r0.coeff(0);
        self.reduce(&t0.scale(&c.recip()))
    }

    fn trim(&self, mut f: KPoly) -> KPoly {
        for c in f.iter_mut() {
            *c = self.reduce(c);
        }
        while f.last().is_some_and(|c| c.is_zero()) {
            f.pop();
        }
        f
    }

    fn rem(&self, a: &KPoly, b: &KPoly) -> KPoly {
        let mut r = self.trim(a.clone());
        let db = b.len() - 1;
        let inv_lead = self.inv(&b[db]);
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = self.mul(&r[r.len() - 1], &inv_lead);
            for (j, bc) in b.iter().enumerate() {
                r[k + j] = self.reduce(&(&r[k + j] - &(&c * bc)));
            }
            r = self.trim(r);
        }
        r
    }

    pub fn gcd(&self, a: &KPoly, b: &KPoly) -> KPoly {
        let (mut a, mut b) = (self.trim(a.clone()), self.trim(b.clone()));
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        if let Some(lead) = a.last().cloned() {
            let inv = self.inv(&lead);
            a = a.iter().map(|c| self.mul(c, &inv)).collect();
        }
        a
    }
}

/// `F(α, z)` where the coefficients of `F` in `z` are polynomials in `x`.
pub(crate) fn specialize(coeffs: &[UniPoly], field: &NumberField) -> KPoly {
    field.trim(coeffs.to_vec())
}

pub(crate) fn degree(f: &KPoly) -> Option<usize> {
    f.len().checked_sub(1)
}
