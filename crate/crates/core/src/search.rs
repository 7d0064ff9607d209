//! Height-bounded point search on the chart `Y = 1`, longest progressions
//! among found points, and the verdict table.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::construct::{elliptic_quotient, BiellipticQuartic, HyperellipticModel};
use crate::curve::{AlgebraicPoint, CurveError, PlaneCurve};
use crate::exact::Rational;
use crate::factor::rational_roots;
use crate::poly::{PolyError, UniPoly};
use crate::progression::{longest_ap, longest_gp, Kind, ProgressionError, ProgressionMatch, Rules};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("height bound must be at least 1")]
    InvalidHeight,
    #[error("level {level} exceeds the curve degree {degree}")]
    LevelTooLarge { level: usize, degree: u32 },
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("need at least 2 distinct x-values, found {found}")]
    NotEnoughPoints { found: usize },
    #[error("no two of the {found} x-values form an admissible progression")]
    NoAdmissibleProgression { found: usize },
    #[error("worker pool: {0}")]
    Workers(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Progression(#[from] ProgressionError),
}

/// `max(|p|, q)` for `x = p/q` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HeightBound(u64);

impl HeightBound {
    pub fn new(h: u64) -> Result<Self, SearchError> {
        if h == 0 {
            return Err(SearchError::InvalidHeight);
        }
        Ok(HeightBound(h))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

pub fn height(x: &Rational) -> BigInt {
    x.height()
}

/// Every rational of height at most `h`, ordered by height and then value.
pub fn rationals_up_to(h: HeightBound) -> Vec<Rational> {
    let h = h.get() as i64;
    let mut out = Vec::new();
    for q in 1..=h {
        for p in -h..=h {
            if p.gcd(&q) == 1 || (p == 0 && q == 1) {
                out.push(Rational::new(p, q));
            }
        }
    }
    out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { workers: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointSearch {
    pub height: HeightBound,
    pub level: usize,
    pub points: Vec<AlgebraicPoint>,
    /// `x`-values whose fiber vanishes identically (a line `X = x·Y` on the
    /// curve); they carry no points here.
    pub zero_fibers: Vec<Rational>,
}

fn point_order(a: &AlgebraicPoint, b: &AlgebraicPoint) -> std::cmp::Ordering {
    a.x.height()
        .cmp(&b.x.height())
        .then_with(|| a.x.cmp(&b.x))
        .then_with(|| a.degree.cmp(&b.degree))
        .then_with(|| a.rational_z().cmp(&b.rational_z()))
        .then_with(|| a.minpoly_z.coeffs().cmp(b.minpoly_z.coeffs()))
}

enum FiberOutcome {
    Points(Vec<AlgebraicPoint>),
    Zero(Rational),
}

fn run_fibers<F>(c: &PlaneCurve, h: HeightBound, level: usize, cfg: SearchConfig, per_fiber: F) -> Result<PointSearch, SearchError>
where
    F: Fn(&Rational, &UniPoly) -> Result<Vec<AlgebraicPoint>, CurveError> + Sync,
{
    let xs = rationals_up_to(h);
    let work = |x: &Rational| -> Result<FiberOutcome, CurveError> {
        match c.form().fiber_poly(x) {
            Ok(fiber) => Ok(FiberOutcome::Points(per_fiber(x, &fiber.poly)?)),
            Err(PolyError::FiberIdenticallyZero { .. }) => Ok(FiberOutcome::Zero(x.clone())),
            Err(e) => Err(e.into()),
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| SearchError::Workers(e.to_string()))?;
    let outcomes: Vec<Result<FiberOutcome, CurveError>> = pool.install(|| xs.par_iter().map(work).collect());
    let mut points = Vec::new();
    let mut zero_fibers = Vec::new();
    for o in outcomes {
        match o? {
            FiberOutcome::Points(p) => points.extend(p),
            FiberOutcome::Zero(x) => zero_fibers.push(x),
        }
    }
    points.sort_by(point_order);
    Ok(PointSearch {
        height: h,
        level,
        points,
        zero_fibers,
    })
}

/// All points `(x, 1, z)` with `z` rational and height of `x` at most `h`.
pub fn rational_points(c: &PlaneCurve, h: HeightBound, cfg: SearchConfig) -> Result<PointSearch, SearchError> {
    run_fibers(c, h, 1, cfg, |x, fiber| {
        let mut roots = rational_roots(fiber);
        roots.dedup();
        Ok(roots
            .into_iter()
            .map(|r| AlgebraicPoint::new(x.clone(), &UniPoly::new(vec![-r, Rational::one()], 'z')))
            .collect())
    })
}

/// Points of degree at most `n` over every `x` of height at most `h`.
pub fn level_points(c: &PlaneCurve, h: HeightBound, n: usize, cfg: SearchConfig) -> Result<PointSearch, SearchError> {
    if n == 0 {
        return Err(SearchError::ZeroLevel);
    }
    if n > c.degree() as usize {
        return Err(SearchError::LevelTooLarge {
            level: n,
            degree: c.degree(),
        });
    }
    if n == 1 {
        return rational_points(c, h, cfg);
    }
    run_fibers(c, h, n, cfg, |x, _| c.points_on_fiber(x, n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveProgression {
    pub progression: ProgressionMatch,
    pub points: Vec<AlgebraicPoint>,
}

/// Longest progression among the `x`-values of `level_points`; maximal for
/// that finite set only.
pub fn longest_progression_on_curve(
    c: &PlaneCurve,
    h: HeightBound,
    n: usize,
    kind: Kind,
    rules: Rules,
    cfg: SearchConfig,
) -> Result<CurveProgression, SearchError> {
    let found = level_points(c, h, n, cfg)?;
    let mut xs: Vec<Rational> = found.points.iter().map(|p| p.x.clone()).collect();
    xs.sort();
    xs.dedup();
    if kind == Kind::Geometric {
        xs.retain(|x| !x.is_zero());
    }
    if xs.len() < 2 {
        return Err(SearchError::NotEnoughPoints { found: xs.len() });
    }
    let progression = match kind {
        Kind::Arithmetic => longest_ap(&xs, rules)?,
        Kind::Geometric => longest_gp(&xs, rules)?.ok_or(SearchError::NoAdmissibleProgression { found: xs.len() })?,
    };
    let points = progression
        .members
        .iter()
        .flat_map(|x| found.points.iter().filter(move |p| &p.x == x).cloned())
        .collect();
    Ok(CurveProgression { progression, points })
}

// --- verdicts --------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Finite,
    InfiniteConstructive,
    Conditional,
}

pub mod anchors {
    pub const RATIONAL_FINITE: &str = "must be finite";
    pub const DEGREE_AT_LEAST_5: &str = "is always finite";
    pub const QUARTIC: &str = "always of finite length";
    pub const HYPERELLIPTIC: &str = "canonical 2-1 morphism";
    pub const GAMMA2_CRITERION: &str = "is an infinite set if and only if";
    pub const N_LEVEL: &str = "admits an n-level progression of infinite length";
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictLine {
    pub status: Status,
    pub rule: &'static str,
    pub citation: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
}

impl VerdictLine {
    fn new(status: Status, rule: &'static str, citation: &'static str) -> Self {
        VerdictLine {
            status,
            rule,
            citation,
            condition: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NLevelLine {
    pub n: usize,
    #[serde(flatten)]
    pub line: VerdictLine,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub degree: Option<u32>,
    pub smooth: Option<bool>,
    pub genus: Option<u64>,
    pub rational_progressions: Option<VerdictLine>,
    pub quadratic_progressions: Option<VerdictLine>,
    /// Infinitude of the set of quadratic points, for bielliptic normal forms.
    pub quadratic_points: Option<VerdictLine>,
    pub n_level: Option<NLevelLine>,
    pub citations: Vec<&'static str>,
}

#[derive(Debug, Clone, Default)]
pub struct VerdictInput {
    pub curve: Option<PlaneCurve>,
    pub hyperelliptic: Option<HyperellipticModel>,
    pub point: Option<[Rational; 3]>,
}

/// Genus of the smooth model of `z² = f` for squarefree `f`.
fn hyperelliptic_genus(f: &UniPoly) -> Option<u64> {
    let d = f.degree()?;
    (f.distinct_root_count() == d).then(|| ((d as u64).saturating_sub(1)) / 2)
}

/// `a·Z⁴ + L2·Z² + L4` with `a ≠ 0`, read off a quartic with only even
/// powers of `Z`.
pub fn bielliptic_normal_form(c: &PlaneCurve) -> Option<BiellipticQuartic> {
    let f = c.form();
    if c.degree() != 4 || f.terms().any(|(e, _)| e[2] % 2 == 1) {
        return None;
    }
    BiellipticQuartic::new(f.coeff([0, 0, 4]), f.z_slice(2), f.z_slice(0)).ok()
}

pub fn verdict(input: &VerdictInput) -> Result<Verdict, SearchError> {
    let mut v = Verdict {
        degree: input.curve.as_ref().map(|c| c.degree()),
        smooth: None,
        genus: None,
        rational_progressions: None,
        quadratic_progressions: None,
        quadratic_points: None,
        n_level: None,
        citations: Vec::new(),
    };
    if let Some(model) = &input.hyperelliptic {
        v.quadratic_progressions = Some(VerdictLine::new(
            Status::InfiniteConstructive,
            "hyperelliptic-model",
            anchors::HYPERELLIPTIC,
        ));
        v.genus = hyperelliptic_genus(model.f());
        if v.genus.is_some_and(|g| g >= 1) {
            v.rational_progressions = Some(VerdictLine::new(
                Status::Finite,
                "genus>=1",
                anchors::RATIONAL_FINITE,
            ));
        }
    } else if let Some(c) = &input.curve {
        let cert = c.is_smooth()?;
        v.smooth = Some(cert.is_smooth());
        if !cert.is_smooth() {
            return Err(CurveError::NotSmooth.into());
        }
        let d = c.degree();
        let g = c.genus_smooth()?;
        v.genus = Some(g);
        if g >= 1 {
            v.rational_progressions = Some(VerdictLine::new(
                Status::Finite,
                "genus>=1",
                anchors::RATIONAL_FINITE,
            ));
        }
        if d >= 5 {
            v.quadratic_progressions = Some(VerdictLine::new(Status::Finite, "degree>=5", anchors::DEGREE_AT_LEAST_5));
        } else if d == 4 {
            v.quadratic_progressions = Some(VerdictLine::new(Status::Finite, "degree=4", anchors::QUARTIC));
            if let Some(q) = bielliptic_normal_form(c) {
                let mut line = VerdictLine::new(Status::Conditional, "bielliptic-normal-form", anchors::GAMMA2_CRITERION);
                line.condition = Some(format!(
                    "elliptic quotient {} = 0 has positive rank",
                    elliptic_quotient(&q).display()
                ));
                v.quadratic_points = Some(line);
            }
        }
        if d >= 4 {
            if let Some(p) = &input.point {
                if !c.contains(p) {
                    return Err(CurveError::PointNotOnCurve.into());
                }
                v.n_level = Some(NLevelLine {
                    n: d as usize - 1,
                    line: VerdictLine::new(Status::InfiniteConstructive, "gonal-projection", anchors::N_LEVEL),
                });
            }
        }
    }
    let lines = [
        &v.rational_progressions,
        &v.quadratic_progressions,
        &v.quadratic_points,
    ];
    v.citations = lines
        .into_iter()
        .flatten()
        .map(|l| l.citation)
        .chain(v.n_level.as_ref().map(|l| l.line.citation))
        .collect();
    Ok(v)
}

/// Naive absolute value of a height for display.
pub fn height_u64(x: &Rational) -> Option<u64> {
    u64::try_from(x.height().abs()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::HomogPoly;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn form(terms: &[(i64, [u32; 3])]) -> HomogPoly {
        HomogPoly::from_terms(terms.iter().map(|(c, e)| (*e, q(*c))), None).unwrap()
    }

    fn h(n: u64) -> HeightBound {
        HeightBound::new(n).unwrap()
    }

    fn klein() -> PlaneCurve {
        PlaneCurve::new(form(&[(1, [3, 1, 0]), (1, [0, 3, 1]), (1, [1, 0, 3])])).unwrap()
    }

    fn fermat4() -> PlaneCurve {
        PlaneCurve::new(form(&[(1, [4, 0, 0]), (1, [0, 4, 0]), (-1, [0, 0, 4])])).unwrap()
    }

    #[test]
    fn enumeration_by_height() {
        assert_eq!(rationals_up_to(h(1)), vec![q(-1), q(0), q(1)]);
        let xs = rationals_up_to(h(2));
        assert_eq!(xs.len(), 7);
        assert_eq!(xs[3], q(-2));
        assert_eq!(xs[4], Rational::new(-1, 2));
        assert_eq!(HeightBound::new(0), Err(SearchError::InvalidHeight));
    }

    #[test]
    fn fermat_points() {
        let found = rational_points(&fermat4(), h(2), SearchConfig::default()).unwrap();
        let xz: Vec<(Rational, Rational)> = found
            .points
            .iter()
            .map(|p| (p.x.clone(), p.rational_z().unwrap()))
            .collect();
        assert_eq!(xz, vec![(q(0), q(-1)), (q(0), q(1))]);
    }

    #[test]
    fn fermat_quadratic_points() {
        let found = level_points(&fermat4(), h(1), 2, SearchConfig::default()).unwrap();
        let at0: Vec<usize> = found.points.iter().filter(|p| p.x.is_zero()).map(|p| p.degree).collect();
        assert_eq!(at0, vec![1, 1, 2]);
        assert!(found.points.iter().all(|p| p.x.is_zero()));
    }

    #[test]
    fn klein_levels() {
        let found = level_points(&klein(), h(1), 3, SearchConfig::default()).unwrap();
        assert!(found
            .points
            .iter()
            .any(|p| p.x == q(1) && p.minpoly_z == UniPoly::from_ints(&[1, 1, 0, 1], 'z')));
        let rational = rational_points(&klein(), h(1), SearchConfig::default()).unwrap();
        assert!(rational.points.iter().any(|p| p.x.is_zero() && p.rational_z() == Some(q(0))));
    }

    #[test]
    fn longest_on_curve() {
        // every x gives a point on Z^2 - X*Z + ... use z^2 = x^2 type curve
        let c = PlaneCurve::new(form(&[(1, [0, 0, 2]), (-1, [2, 0, 0])])).unwrap();
        let r = longest_progression_on_curve(&c, h(1), 1, Kind::Arithmetic, Rules::default(), SearchConfig::default()).unwrap();
        assert_eq!(r.progression.members, vec![q(-1), q(0), q(1)]);
        assert_eq!(r.progression.progression.t, q(1));
        let empty = PlaneCurve::new(form(&[(1, [0, 0, 2]), (1, [2, 0, 0]), (1, [0, 2, 0])])).unwrap();
        assert!(matches!(
            longest_progression_on_curve(&empty, h(3), 1, Kind::Arithmetic, Rules::default(), SearchConfig::default()),
            Err(SearchError::NotEnoughPoints { found: 0 })
        ));
    }

    #[test]
    fn verdict_table() {
        let quintic = PlaneCurve::new(form(&[(1, [5, 0, 0]), (1, [0, 5, 0]), (1, [0, 0, 5])])).unwrap();
        let v = verdict(&VerdictInput {
            curve: Some(quintic),
            ..Default::default()
        })
        .unwrap();
        assert_eq!(v.quadratic_progressions.as_ref().unwrap().citation, anchors::DEGREE_AT_LEAST_5);
        assert_eq!(v.genus, Some(6));

        let v = verdict(&VerdictInput {
            curve: Some(klein()),
            point: Some([q(0), q(0), q(1)]),
            ..Default::default()
        })
        .unwrap();
        assert_eq!(v.quadratic_progressions.as_ref().unwrap().status, Status::Finite);
        let n = v.n_level.as_ref().unwrap();
        assert_eq!((n.n, n.line.status), (3, Status::InfiniteConstructive));

        let v = verdict(&VerdictInput {
            hyperelliptic: Some(HyperellipticModel::new(UniPoly::from_ints(&[1, 0, 0, 0, 1], 'x')).unwrap()),
            ..Default::default()
        })
        .unwrap();
        assert_eq!(v.quadratic_progressions.unwrap().status, Status::InfiniteConstructive);

        let v = verdict(&VerdictInput {
            curve: Some(fermat4()),
            ..Default::default()
        })
        .unwrap();
        assert_eq!(v.quadratic_points.unwrap().status, Status::Conditional);
    }
}
