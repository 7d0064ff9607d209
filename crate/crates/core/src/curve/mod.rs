//! Plane curves `F(X, Y, Z) = 0`: smoothness, genus, points on projection
//! fibers, normalization through a rational point and Riemann–Hurwitz.

mod numfield;
mod smooth;

use std::sync::OnceLock;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::{squarefree_part, Rational, SquarefreeDecomp};
use crate::factor::{factor_over_q, FactorError};
use crate::poly::{HomogPoly, PolyError, UniPoly};

pub use smooth::{
    prime_schedule, smoothness_exact, smoothness_modular, Chart, IntMatrix, SingularWitness,
    SmoothWitness, SmoothnessCertificate,
};

/// Largest residue-field degree the exact smoothness path will work in.
pub const EXACT_BUDGET: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("plane curve must have degree at least 2, got {0}")]
    DegreeTooSmall(u32),
    #[error("curve is not smooth")]
    NotSmooth,
    #[error("smoothness could not be decided within the configured budget")]
    Inconclusive,
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("center point is singular")]
    SingularCenter,
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("inconsistent ramification data (g={g}, n={n}, r={r})")]
    InconsistentRamification { g: u64, n: u64, r: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Factor(#[from] FactorError),
}

pub type Matrix3 = [[Rational; 3]; 3];

#[derive(Debug)]
pub struct PlaneCurve {
    form: HomogPoly,
    certificate: OnceLock<Result<SmoothnessCertificate, CurveError>>,
}

impl Clone for PlaneCurve {
    fn clone(&self) -> Self {
        let certificate = OnceLock::new();
        if let Some(c) = self.certificate.get() {
            let _ = certificate.set(c.clone());
        }
        PlaneCurve {
            form: self.form.clone(),
            certificate,
        }
    }
}

impl PartialEq for PlaneCurve {
    fn eq(&self, other: &Self) -> bool {
        self.form == other.form
    }
}

impl PlaneCurve {
    pub fn new(form: HomogPoly) -> Result<Self, CurveError> {
        if form.degree() < 2 || form.is_zero() {
            return Err(CurveError::DegreeTooSmall(form.degree()));
        }
        Ok(PlaneCurve {
            form,
            certificate: OnceLock::new(),
        })
    }

    pub fn form(&self) -> &HomogPoly {
        &self.form
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }

    pub fn contains(&self, p: &[Rational; 3]) -> bool {
        self.form.evaluate(&p[0], &p[1], &p[2]).is_zero()
    }

    /// Modular certificate when one exists in the prime schedule, exact
    /// elimination otherwise. Cached after the first call.
    pub fn is_smooth(&self) -> Result<SmoothnessCertificate, CurveError> {
        self.certificate
            .get_or_init(|| {
                if let Some(w) = smoothness_modular(&self.form, &prime_schedule()) {
                    return Ok(SmoothnessCertificate::Smooth { witness: w });
                }
                smoothness_exact(&self.form, EXACT_BUDGET)
            })
            .clone()
    }

    pub fn genus_smooth(&self) -> Result<u64, CurveError> {
        if !self.is_smooth()?.is_smooth() {
            return Err(CurveError::NotSmooth);
        }
        let d = self.degree() as u64;
        Ok((d - 1) * (d - 2) / 2)
    }

    pub fn points_on_fiber(&self, x0: &Rational, level: usize) -> Result<Vec<AlgebraicPoint>, CurveError> {
        points_on_fiber(&self.form, x0, level)
    }

    pub fn count_fiber_multiplicities(&self, at: &FiberAt) -> Result<(usize, u32), CurveError> {
        let fiber = match at {
            FiberAt::Finite(x0) => self.form.fiber_poly(x0)?,
            FiberAt::Infinity => self.form.fiber_at_infinity()?,
        };
        Ok((fiber.poly.distinct_root_count(), fiber.deficiency))
    }

    /// Moves the smooth rational point `p` to `(0:0:1)` and makes the
    /// `Z^(d-1)` coefficient form equal to `X`. The returned matrix `T`
    /// satisfies `F'(v) = F(T·v)`.
    pub fn normalize_through_point(&self, p: &[Rational; 3]) -> Result<(PlaneCurve, Matrix3), CurveError> {
        let k = p
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or(CurveError::ZeroPoint)?;
        if !self.contains(p) {
            return Err(CurveError::PointNotOnCurve);
        }
        let mut t0 = zero_matrix();
        let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
        for (col, &i) in others.iter().enumerate() {
            t0[i][col] = Rational::one();
        }
        for (r, row) in t0.iter_mut().enumerate() {
            row[2] = p[r].clone();
        }
        let f0 = self.form.linear_transform(&t0);
        let d = self.degree();
        let ell = f0.z_slice(d - 1);
        if ell.is_zero() {
            return Err(CurveError::SingularCenter);
        }
        let alpha = ell.coeff([1, 0, 0]);
        let beta = ell.coeff([0, 1, 0]);
        let mut s = zero_matrix();
        s[2][2] = Rational::one();
        if !alpha.is_zero() {
            s[0][0] = alpha.recip();
            s[0][1] = -(&beta / &alpha);
            s[1][1] = Rational::one();
        } else {
            s[0][1] = Rational::one();
            s[1][0] = beta.recip();
        }
        let t = mat_mul(&t0, &s);
        let curve = PlaneCurve::new(self.form.linear_transform(&t))?;
        Ok((curve, t))
    }
}

fn zero_matrix() -> Matrix3 {
    Default::default()
}

pub fn mat_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut m = zero_matrix();
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = (0..3).map(|k| &a[i][k] * &b[k][j]).sum();
        }
    }
    m
}

pub fn identity_matrix() -> Matrix3 {
    let mut m = zero_matrix();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

/// Scales so that the last nonzero coordinate is 1.
pub fn normalize_projective(v: [Rational; 3]) -> [Rational; 3] {
    match v.iter().rposition(|c| !c.is_zero()) {
        Some(k) => {
            let s = v[k].recip();
            v.map(|c| c * &s)
        }
        None => v,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberAt {
    Finite(Rational),
    Infinity,
}

/// A closed point `(x, 1, z)` with `z` a root of `minpoly_z`; conjugates are
/// one object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicPoint {
    pub x: Rational,
    pub minpoly_z: UniPoly,
    pub degree: usize,
    pub disc: Option<SquarefreeDecomp>,
}

impl AlgebraicPoint {
    /// `minpoly` must be irreducible over ℚ. For quadratics `disc` is left
    /// empty when the discriminant cannot be factored.
    pub fn new(x: Rational, minpoly: &UniPoly) -> Self {
        let minpoly_z = minpoly.clone().with_var('z').primitive();
        let degree = minpoly_z.degree().expect("nonzero minimal polynomial");
        let disc = if degree == 2 {
            let (c, b, a) = (minpoly_z.coeff(0), minpoly_z.coeff(1), minpoly_z.coeff(2));
            let w = (&b * &b - Rational::from(4) * &a * &c) / (Rational::from(4) * &a * &a);
            squarefree_part(&w).ok()
        } else {
            None
        };
        AlgebraicPoint {
            x,
            minpoly_z,
            degree,
            disc,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }

    /// The `z`-coordinate of a rational point.
    pub fn rational_z(&self) -> Option<Rational> {
        self.is_rational()
            .then(|| -self.minpoly_z.coeff(0) / self.minpoly_z.coeff(1))
    }
}

impl Serialize for AlgebraicPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AlgebraicPoint", 5)?;
        st.serialize_field("x", &self.x)?;
        st.serialize_field("y", "1")?;
        st.serialize_field("minpoly_z", &self.minpoly_z)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("disc", &self.disc)?;
        st.end()
    }
}

/// One point per irreducible factor of `F(x0, 1, z)` of degree at most
/// `level`, ordered by degree and coefficient vector.
pub fn points_on_fiber(f: &HomogPoly, x0: &Rational, level: usize) -> Result<Vec<AlgebraicPoint>, CurveError> {
    let fiber = f.fiber_poly(x0)?;
    if fiber.poly.is_constant() {
        return Ok(Vec::new());
    }
    let fac = factor_over_q(&fiber.poly)?;
    Ok(fac
        .factors
        .iter()
        .filter(|e| e.poly.degree().is_some_and(|k| k <= level))
        .map(|e| AlgebraicPoint::new(x0.clone(), &e.poly))
        .collect())
}

/// Ramification data of a degree-`n` cover of a genus-`g` curve with total
/// ramification `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RHData {
    pub g: u64,
    pub n: u64,
    pub r: u64,
}

/// `g'` with `2g' - 2 = n(2g - 2) + r`.
pub fn riemann_hurwitz_genus(data: RHData) -> Result<u64, CurveError> {
    let RHData { g, n, r } = data;
    let err = CurveError::InconsistentRamification { g, n, r };
    if n == 0 {
        return Err(err);
    }
    let rhs = n as i128 * (2 * g as i128 - 2) + r as i128;
    if rhs % 2 != 0 || rhs + 2 < 0 {
        return Err(err);
    }
    Ok(((rhs + 2) / 2) as u64)
}
