//! Constructive generators: quadratic progressions on hyperelliptic models,
//! the bielliptic quartic with its elliptic quotient and power tower, and
//! n-level progressions through projection from a rational point.

use serde::Serialize;
use thiserror::Error;

use crate::curve::{
    riemann_hurwitz_genus, AlgebraicPoint, CurveError, Matrix3, PlaneCurve, RHData,
};
use crate::exact::Rational;
use crate::poly::{BiPoly, HomogPoly, PolyError, UniPoly, Var};
use crate::progression::{Progression, ProgressionError};

pub const MAX_TRACE_LEVELS: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("hyperelliptic model needs deg f >= 2, got {0:?}")]
    ModelDegree(Option<usize>),
    #[error("leading coefficient a must be nonzero")]
    ZeroLeading,
    #[error("{which} must be a binary form in X, Y of degree {expected}")]
    BadBinaryForm { which: &'static str, expected: u32 },
    #[error("point is not on the quotient model")]
    NotOnQuotient,
    #[error("degenerate model: {0}")]
    DegenerateModel(&'static str),
    #[error("t0 must be nonzero")]
    ZeroStart,
    #[error("exponent s must be positive")]
    ZeroExponent,
    #[error("levels must be between 1 and {max}, got {levels}")]
    LevelsOutOfRange { levels: u32, max: u32 },
    #[error("fiber over x = {x} (term {index}) is a nonzero constant")]
    EmptyFiber { index: u64, x: Rational },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Progression(#[from] ProgressionError),
}

// --- hyperelliptic models ------------------------------------------------

/// `z² = f(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperellipticModel {
    f: UniPoly,
}

impl HyperellipticModel {
    pub fn new(f: UniPoly) -> Result<Self, ConstructError> {
        match f.degree() {
            Some(d) if d >= 2 => Ok(HyperellipticModel { f: f.with_var('x') }),
            other => Err(ConstructError::ModelDegree(other)),
        }
    }

    pub fn f(&self) -> &UniPoly {
        &self.f
    }

    /// The point over `x`: linear when `f(x)` is a square, else `z² - f(x)`.
    pub fn point_over(&self, x: Rational) -> AlgebraicPoint {
        let w = self.f.eval(&x);
        let minpoly = match w.sqrt_exact() {
            Some(r) => UniPoly::new(vec![-r, Rational::one()], 'z'),
            None => UniPoly::new(vec![-w, Rational::zero(), Rational::one()], 'z'),
        };
        AlgebraicPoint::new(x, &minpoly)
    }
}

/// The first `count` points `(x_i, 1, √f(x_i))` over the terms of `p`.
pub fn hyperelliptic_progression<'a>(
    m: &'a HyperellipticModel,
    p: &'a Progression,
    count: usize,
) -> impl Iterator<Item = AlgebraicPoint> + 'a {
    p.terms().take(count).map(move |x| m.point_over(x))
}

// --- bielliptic quartics -------------------------------------------------

/// `a·Z⁴ + L2(X,Y)·Z² + L4(X,Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiellipticQuartic {
    a: Rational,
    l2: HomogPoly,
    l4: HomogPoly,
}

fn check_binary(form: &HomogPoly, which: &'static str, degree: u32) -> Result<(), ConstructError> {
    if form.degree() != degree || form.involves(Var::Z) {
        return Err(ConstructError::BadBinaryForm {
            which,
            expected: degree,
        });
    }
    Ok(())
}

/// `B(g(x), 1)` for a binary form `B(X, Y)`.
fn binary_at(form: &HomogPoly, g: &UniPoly) -> UniPoly {
    let mut out = UniPoly::zero('x');
    for (e, c) in form.terms() {
        out = &out + &g.pow(e[0]).scale(c);
    }
    out
}

impl BiellipticQuartic {
    pub fn new(a: Rational, l2: HomogPoly, l4: HomogPoly) -> Result<Self, ConstructError> {
        if a.is_zero() {
            return Err(ConstructError::ZeroLeading);
        }
        check_binary(&l2, "L2", 2)?;
        check_binary(&l4, "L4", 4)?;
        Ok(BiellipticQuartic { a, l2, l4 })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn l2(&self) -> &HomogPoly {
        &self.l2
    }

    pub fn l4(&self) -> &HomogPoly {
        &self.l4
    }

    /// `L2(x,1)² - 4a·L4(x,1)`: the branch locus of the quotient map.
    pub fn discriminant(&self) -> UniPoly {
        let x = UniPoly::var('x');
        let l2 = binary_at(&self.l2, &x);
        let l4 = binary_at(&self.l4, &x);
        &(&l2 * &l2) - &l4.scale(&(Rational::from(4) * &self.a))
    }

    /// `a·z⁴ + L2(g)·z² + L4(g)` as a model in `(x, z)`.
    fn quartic_model(&self, g: &UniPoly) -> BiPoly {
        let zero = UniPoly::zero('x');
        BiPoly::new(vec![
            binary_at(&self.l4, g),
            zero.clone(),
            binary_at(&self.l2, g),
            zero,
            UniPoly::constant(self.a.clone(), 'x'),
        ])
    }

    /// `a·w² + L2(g)·w + L4(g)` as a model in `(x, w)`.
    fn quotient_model(&self, g: &UniPoly) -> BiPoly {
        BiPoly::new(vec![
            binary_at(&self.l4, g),
            binary_at(&self.l2, g),
            UniPoly::constant(self.a.clone(), 'x'),
        ])
    }
}

pub fn assemble_bielliptic(q: &BiellipticQuartic) -> PlaneCurve {
    let z = HomogPoly::var(Var::Z);
    let form = z
        .pow(4)
        .scale(&q.a)
        .add(&q.l2.mul(&z.pow(2)))
        .add(&q.l4);
    PlaneCurve::new(form).expect("quartic with a != 0 has degree 4")
}

/// Genus-one quotient `a·w² + L2(x,1)·w + L4(x,1) = 0` of a bielliptic
/// quartic under `z ↦ -z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticQuotient {
    pub model: BiPoly,
}

impl EllipticQuotient {
    pub fn contains(&self, x: &Rational, w: &Rational) -> bool {
        self.model.evaluate(x, w).is_zero()
    }

    /// Image of `(x, 1, z)` under `(x, z) ↦ (x, z²)`.
    pub fn pushforward(&self, x: &Rational, z: &Rational) -> (Rational, Rational) {
        (x.clone(), z * z)
    }

    pub fn display(&self) -> String {
        self.model.display_vars('x', 'w')
    }
}

pub fn elliptic_quotient(q: &BiellipticQuartic) -> EllipticQuotient {
    EllipticQuotient {
        model: q.quotient_model(&UniPoly::var('x')),
    }
}

/// The point of the quartic over a rational point `(x0, w0)` of its
/// quotient: `z² = w0`.
pub fn lift_quadratic(q: &BiellipticQuartic, x0: &Rational, w0: &Rational) -> Result<AlgebraicPoint, ConstructError> {
    if !elliptic_quotient(q).contains(x0, w0) {
        return Err(ConstructError::NotOnQuotient);
    }
    let minpoly = match w0.sqrt_exact() {
        Some(r) => UniPoly::new(vec![-r, Rational::one()], 'z'),
        None => UniPoly::new(vec![-w0.clone(), Rational::zero(), Rational::one()], 'z'),
    };
    Ok(AlgebraicPoint::new(x0.clone(), &minpoly))
}

/// `C_s: a·z⁴ + L2(t0·x^s, 1)·z² + L4(t0·x^s, 1)` and its quotient `H_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerLevel {
    pub s: u32,
    pub t0: Rational,
    pub model: BiPoly,
    pub quotient: BiPoly,
}

impl TowerLevel {
    /// `(x, z) ↦ (x², z)`, from level `2s` down to level `s`.
    pub fn cover_map(x: &Rational, z: &Rational) -> (Rational, Rational) {
        (x * x, z.clone())
    }

    /// `(x, z) ↦ (x, z²)`, from `C_s` to `H_s`.
    pub fn quotient_map(x: &Rational, z: &Rational) -> (Rational, Rational) {
        (x.clone(), z * z)
    }

    pub fn model_string(&self) -> String {
        self.model.display_vars('x', 'z')
    }

    pub fn quotient_string(&self) -> String {
        self.quotient.display_vars('x', 'w')
    }
}

pub fn tower_level(q: &BiellipticQuartic, t0: &Rational, s: u32) -> Result<TowerLevel, ConstructError> {
    if t0.is_zero() {
        return Err(ConstructError::ZeroStart);
    }
    if s == 0 {
        return Err(ConstructError::ZeroExponent);
    }
    let g = UniPoly::monomial(t0.clone(), s as usize, 'x');
    Ok(TowerLevel {
        s,
        t0: t0.clone(),
        model: q.quartic_model(&g),
        quotient: q.quotient_model(&g),
    })
}

/// Ramification of `H_{2s} → H_s`, `(x, w) ↦ (x², w)`, measured on fibers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ramification {
    pub base_genus: u64,
    pub degree: u64,
    /// Distinct points of `H_{2s}` over `x = 0`, each of index 2.
    pub over_zero: usize,
    /// Distinct points of `H_{2s}` over `x = ∞`, each of index 2.
    pub over_infinity: usize,
    pub r: u64,
    pub source: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceLevel {
    pub s: u32,
    pub model: String,
    pub quotient: String,
    pub genus: u64,
    pub cs_flag: bool,
    pub ramification: Ramification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinitenessTrace {
    pub discriminant: UniPoly,
    /// Genus of the elliptic quotient, from its 4 branch points.
    pub base_genus: u64,
    pub levels: Vec<TraceLevel>,
    /// First level whose quotient has genus > 3.
    pub obstruction_level: Option<u32>,
}

/// Points of the weighted model `Σ c_k(x) w^k` over `x = ∞`, where the
/// coefficient of `w^k` has weighted degree `(2 - k)·weight`.
fn fiber_at_infinity(h: &BiPoly, weight: usize) -> UniPoly {
    let coeffs = (0..=2)
        .map(|k| h.coeff(k).coeff((2 - k) * weight))
        .collect();
    UniPoly::new(coeffs, 'w')
}

/// Genera of `H_2, H_4, …, H_{2^levels}` by Riemann–Hurwitz along
/// `H_{2s} → H_s`, starting from the elliptic quotient `H_1`.
pub fn finiteness_trace(q: &BiellipticQuartic, t0: &Rational, levels: u32) -> Result<FinitenessTrace, ConstructError> {
    if levels == 0 || levels > MAX_TRACE_LEVELS {
        return Err(ConstructError::LevelsOutOfRange {
            levels,
            max: MAX_TRACE_LEVELS,
        });
    }
    if t0.is_zero() {
        return Err(ConstructError::ZeroStart);
    }
    let disc = q.discriminant();
    if disc.degree() != Some(4) {
        return Err(ConstructError::DegenerateModel("discriminant does not have degree 4"));
    }
    if disc.coeff(0).is_zero() {
        return Err(ConstructError::DegenerateModel("discriminant vanishes at x = 0"));
    }
    if disc.distinct_root_count() != 4 {
        return Err(ConstructError::DegenerateModel("discriminant is not squarefree"));
    }
    let base_genus = riemann_hurwitz_genus(RHData { g: 0, n: 2, r: 4 })?;
    let mut genus = base_genus;
    let mut out = Vec::new();
    let mut obstruction_level = None;
    for i in 1..=levels {
        let s = 1u32 << i;
        let level = tower_level(q, t0, s)?;
        let over_zero_poly = level.quotient.at_x(&Rational::zero()).with_var('w');
        let over_inf_poly = fiber_at_infinity(&level.quotient, 2 * s as usize);
        let (over_zero, over_infinity) = (
            over_zero_poly.distinct_root_count(),
            over_inf_poly.distinct_root_count(),
        );
        if over_zero_poly.degree() != Some(2) || over_zero != 2 {
            return Err(ConstructError::DegenerateModel("quotient is branched over x = 0"));
        }
        if over_inf_poly.degree() != Some(2) || over_infinity != 2 {
            return Err(ConstructError::DegenerateModel("quotient is branched over x = ∞"));
        }
        let r = (over_zero + over_infinity) as u64;
        let next = riemann_hurwitz_genus(RHData { g: genus, n: 2, r })?;
        let cs_flag = next > 3;
        if cs_flag && obstruction_level.is_none() {
            obstruction_level = Some(i);
        }
        out.push(TraceLevel {
            s,
            model: level.model_string(),
            quotient: level.quotient_string(),
            genus: next,
            cs_flag,
            ramification: Ramification {
                base_genus: genus,
                degree: 2,
                over_zero,
                over_infinity,
                r,
                source: "distinct w-roots of the quotient fibers over x = 0 and x = ∞",
            },
        });
        genus = next;
    }
    Ok(FinitenessTrace {
        discriminant: disc,
        base_genus,
        levels: out,
        obstruction_level,
    })
}

// --- n-level progressions ------------------------------------------------

/// Pull-based stream of points over the terms of a progression on a curve
/// normalized through a rational point. Each fiber contributes its
/// lowest-degree factor.
pub struct NLevelProgression {
    curve: PlaneCurve,
    transform: Matrix3,
    progression: Progression,
    level: usize,
    index: u64,
    count: u64,
}

impl NLevelProgression {
    /// The normalized curve `C'` on which the points lie.
    pub fn curve(&self) -> &PlaneCurve {
        &self.curve
    }

    /// `T` with `C'(v) = C(T·v)`.
    pub fn transform(&self) -> &Matrix3 {
        &self.transform
    }

    pub fn level(&self) -> usize {
        self.level
    }
}

impl Iterator for NLevelProgression {
    type Item = Result<AlgebraicPoint, ConstructError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.index >= self.count {
            return None;
        }
        self.index += 1;
        let x = self.progression.term(self.index);
        let item = match self.curve.points_on_fiber(&x, self.level) {
            Ok(points) => points.into_iter().next().ok_or(ConstructError::EmptyFiber {
                index: self.index,
                x,
            }),
            Err(e) => Err(e.into()),
        };
        Some(item)
    }
}

pub fn n_level_progression(
    c: &PlaneCurve,
    point: &[Rational; 3],
    p: &Progression,
    count: u64,
) -> Result<NLevelProgression, ConstructError> {
    if !c.is_smooth()?.is_smooth() {
        return Err(CurveError::NotSmooth.into());
    }
    let (curve, transform) = c.normalize_through_point(point)?;
    let level = c.degree() as usize - 1;
    Ok(NLevelProgression {
        curve,
        transform,
        progression: p.clone(),
        level,
        index: 0,
        count,
    })
}
