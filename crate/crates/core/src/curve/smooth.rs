//! Smoothness certificates for plane curves.
//!
//! The modular path reduces a unimodular change of coordinates of `F`
//! modulo a prime and checks, over the algebraic closure of `𝔽_p`, that the
//! three partials have no common zero: on the chart `Y = 1` through
//! `gcd(Res_z(F_Z, F_X), Res_z(F_Z, F_Y))`, and on the line `Y = 0`
//! directly. The exact path runs the same elimination over ℚ and resolves
//! each candidate `x`-coordinate in its residue field.

use rand::Rng;
use serde::Serialize;

use super::numfield::{self, NumberField};
use super::{normalize_projective, CurveError};
use crate::exact::Rational;
use crate::factor::{factor_over_q_with, rational_roots, FactorConfig};
use crate::ff::{seeded_rng, FpPoly, PrimeField};
use crate::poly::{BiPoly, HomogPoly, HomogPolyModP, UniPoly, Var};

pub type IntMatrix = [[i64; 3]; 3];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SmoothnessCertificate {
    Smooth { witness: SmoothWitness },
    Singular { witness: SingularWitness },
}

impl SmoothnessCertificate {
    pub fn is_smooth(&self) -> bool {
        matches!(self, SmoothnessCertificate::Smooth { .. })
    }
}

/// Enough data to rerun the check: `F` is composed with `transform`
/// (`F'(v) = F(T·v)`) before elimination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum SmoothWitness {
    Modular { prime: u64, transform: IntMatrix },
    Exact { transform: IntMatrix },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Chart {
    #[serde(rename = "Y=1")]
    AffineY1,
    #[serde(rename = "Y=0")]
    LineY0,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SingularWitness {
    RationalPoint {
        point: [Rational; 3],
    },
    /// Singular points exist over the field cut out by `x_minpoly` (in the
    /// transformed coordinates of `transform`).
    Elimination {
        chart: Chart,
        transform: IntMatrix,
        x_minpoly: UniPoly,
        common_factor_degree: usize,
    },
}

/// Primes `101 ≤ p ≤ 499`.
pub fn prime_schedule() -> Vec<u64> {
    (101u64..=499)
        .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect()
}

const IDENTITY: IntMatrix = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

fn to_rational(m: &IntMatrix) -> [[Rational; 3]; 3] {
    m.map(|row| row.map(Rational::from))
}

/// Identity followed by a few seeded unimodular matrices.
fn modular_transforms() -> Vec<IntMatrix> {
    let mut rng = seeded_rng();
    let mut out = vec![IDENTITY];
    for _ in 0..3 {
        let mut r = || rng.gen_range(-3i64..=3);
        let (a, b, c) = (r(), r(), r());
        let (e, f, g) = (r(), r(), r());
        let upper = [[1, a, b], [0, 1, c], [0, 0, 1]];
        let lower = [[1, 0, 0], [e, 1, 0], [f, g, 1]];
        out.push(mat_mul(&upper, &lower));
    }
    out
}

fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut m = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    m
}

/// Looks for a prime of good reduction at which the curve is smooth.
pub fn smoothness_modular(f: &HomogPoly, primes: &[u64]) -> Option<SmoothWitness> {
    let d = f.degree() as u64;
    if d == 0 || f.is_zero() {
        return None;
    }
    let f = f.primitive();
    let transformed: Vec<(IntMatrix, HomogPoly)> = modular_transforms()
        .into_iter()
        .map(|t| (t, f.linear_transform(&to_rational(&t))))
        .collect();
    let m = d - 1;
    for &p in primes {
        if d.is_multiple_of(p) || m * m + 1 >= p {
            continue;
        }
        for (t, g) in &transformed {
            // unimodular transforms: one failure to keep degree d fails all
            let Ok(gp) = g.reduce_mod_p(p) else { break };
            if gp.evaluate(0, 0, 1) == 0 {
                continue;
            }
            if modular_clean(&gp) {
                return Some(SmoothWitness::Modular {
                    prime: p,
                    transform: *t,
                });
            }
        }
    }
    None
}

/// `form(x, 1, z)` with formal length `deg + 1`.
fn specialize_y1(form: &HomogPolyModP, field: &PrimeField, x: u64) -> FpPoly {
    let mut out = vec![0u64; form.degree as usize + 1];
    for (mono, &c) in &form.terms {
        let [a, _, k] = mono.0;
        let t = field.mul(c, field.pow(x, a as u64));
        out[k as usize] = field.add(out[k as usize], t);
    }
    out
}

/// `form(x, 0, 1)` as a polynomial in `x`.
fn restrict_y0_mod(form: &HomogPolyModP, field: &PrimeField) -> FpPoly {
    let mut out = vec![0u64; form.degree as usize + 1];
    for (mono, &c) in &form.terms {
        if mono.0[1] == 0 {
            out[mono.0[0] as usize] = field.add(out[mono.0[0] as usize], c);
        }
    }
    field.trim(out)
}

/// True when the partials of `g` have no common zero over `𝔽̄_p`. Requires
/// `g(0,0,1) ≠ 0`, so `∂g/∂Z` keeps its full degree in `z` on every fiber.
fn modular_clean(g: &HomogPolyModP) -> bool {
    let p = g.p;
    let field = PrimeField::new(p);
    let gx = g.partial(Var::X);
    let gy = g.partial(Var::Y);
    let gz = g.partial(Var::Z);
    let m = g.degree as u64 - 1;
    let xs: Vec<u64> = (0..m * m + 1).collect();
    let mut rx = Vec::with_capacity(xs.len());
    let mut ry = Vec::with_capacity(xs.len());
    for &x in &xs {
        let pz = specialize_y1(&gz, &field, x);
        rx.push(field.resultant_formal(&pz, &specialize_y1(&gx, &field, x)));
        ry.push(field.resultant_formal(&pz, &specialize_y1(&gy, &field, x)));
    }
    let rx = field.interpolate(&xs, &rx);
    let ry = field.interpolate(&xs, &ry);
    if field.poly_gcd(&rx, &ry) != vec![1] {
        return false;
    }
    if [&gx, &gy, &gz].iter().all(|q| q.evaluate(1, 0, 0) == 0) {
        return false;
    }
    let line = [&gx, &gy, &gz]
        .iter()
        .map(|q| restrict_y0_mod(q, &field))
        .fold(Vec::new(), |acc, q| field.poly_gcd(&acc, &q));
    line == vec![1]
}

// --- exact path ---------------------------------------------------------

fn restrict_y0(form: &HomogPoly) -> UniPoly {
    let mut coeffs = vec![Rational::zero(); form.degree() as usize + 1];
    for (e, c) in form.terms() {
        if e[1] == 0 {
            coeffs[e[0] as usize] += c;
        }
    }
    UniPoly::new(coeffs, 'x')
}

fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a UniPoly>) -> UniPoly {
    polys
        .into_iter()
        .fold(UniPoly::zero('z'), |acc, q| if acc.is_zero() { q.primitive() } else { acc.gcd(q) })
}

fn apply(t: &IntMatrix, v: [Rational; 3]) -> [Rational; 3] {
    let mut out: [Rational; 3] = Default::default();
    for (i, row) in t.iter().enumerate() {
        out[i] = (0..3).map(|k| Rational::from(row[k]) * &v[k]).sum();
    }
    normalize_projective(out)
}

/// Full elimination over ℚ. `budget` caps the degree of residue fields in
/// which candidate singular points are resolved.
pub fn smoothness_exact(f: &HomogPoly, budget: usize) -> Result<SmoothnessCertificate, CurveError> {
    let t = exact_shear(f);
    let g = f.linear_transform(&to_rational(&t));
    let partials = [g.partial(Var::X), g.partial(Var::Y), g.partial(Var::Z)];
    let singular_at = |v: [Rational; 3]| SmoothnessCertificate::Singular {
        witness: SingularWitness::RationalPoint { point: apply(&t, v) },
    };
    if partials[0].is_zero() && partials[1].is_zero() {
        // g is a multiple of Z^d
        return Ok(singular_at([Rational::one(), Rational::zero(), Rational::zero()]));
    }
    let affine: Vec<BiPoly> = partials.iter().map(|q| q.affine_y1()).collect();

    // chart Y = 1
    let mut elim = UniPoly::zero('x');
    for k in 0..2 {
        if partials[k].is_zero() {
            continue;
        }
        let r = affine[2].resultant_z(&affine[k])?;
        elim = if elim.is_zero() { r } else { elim.gcd(&r) };
    }
    if !elim.is_constant() {
        let cfg = FactorConfig {
            max_degree: 256,
            ..FactorConfig::default()
        };
        let fac = factor_over_q_with(&elim, &cfg).map_err(|_| CurveError::Inconclusive)?;
        for entry in fac.factors {
            let h = entry.poly;
            let dh = h.degree().unwrap_or(0);
            if dh == 1 {
                let x0 = -h.coeff(0) / h.coeff(1);
                let fibers: Vec<UniPoly> = affine.iter().map(|a| a.at_x(&x0)).collect();
                let common = gcd_all(fibers.iter().filter(|q| !q.is_zero()));
                if !common.is_constant() {
                    if let Some(z0) = rational_roots(&common).into_iter().next() {
                        return Ok(singular_at([x0, Rational::one(), z0]));
                    }
                    return Ok(SmoothnessCertificate::Singular {
                        witness: SingularWitness::Elimination {
                            chart: Chart::AffineY1,
                            transform: t,
                            x_minpoly: h,
                            common_factor_degree: common.degree().unwrap_or(0),
                        },
                    });
                }
            } else if dh > budget {
                return Err(CurveError::Inconclusive);
            } else {
                let field = NumberField::new(&h);
                let common = affine
                    .iter()
                    .map(|a| numfield::specialize(a.coeffs(), &field))
                    .fold(Vec::new(), |acc, q| field.gcd(&acc, &q));
                if let Some(k) = numfield::degree(&common).filter(|&k| k > 0) {
                    return Ok(SmoothnessCertificate::Singular {
                        witness: SingularWitness::Elimination {
                            chart: Chart::AffineY1,
                            transform: t,
                            x_minpoly: h,
                            common_factor_degree: k,
                        },
                    });
                }
            }
        }
    }

    // line Y = 0
    let origin = [Rational::one(), Rational::zero(), Rational::zero()];
    if partials
        .iter()
        .all(|q| q.evaluate(&origin[0], &origin[1], &origin[2]).is_zero())
    {
        return Ok(singular_at(origin));
    }
    let line: Vec<UniPoly> = partials.iter().map(restrict_y0).collect();
    let common = gcd_all(line.iter().filter(|q| !q.is_zero()));
    if !common.is_constant() {
        if let Some(x0) = rational_roots(&common).into_iter().next() {
            return Ok(singular_at([x0, Rational::zero(), Rational::one()]));
        }
        return Ok(SmoothnessCertificate::Singular {
            witness: SingularWitness::Elimination {
                chart: Chart::LineY0,
                transform: t,
                x_minpoly: common.with_var('x'),
                common_factor_degree: 0,
            },
        });
    }
    Ok(SmoothnessCertificate::Smooth {
        witness: SmoothWitness::Exact { transform: t },
    })
}

/// `X ↦ X + aZ, Y ↦ Y + bZ` with the smallest `(a, b)` such that
/// `F(a, b, 1) ≠ 0`.
fn exact_shear(f: &HomogPoly) -> IntMatrix {
    let one = Rational::one();
    for r in 0i64..=16 {
        for a in -r..=r {
            for b in -r..=r {
                if a.abs().max(b.abs()) != r {
                    continue;
                }
                if !f.evaluate(&Rational::from(a), &Rational::from(b), &one).is_zero() {
                    return [[1, 0, a], [0, 1, b], [0, 0, 1]];
                }
            }
        }
    }
    IDENTITY
}
