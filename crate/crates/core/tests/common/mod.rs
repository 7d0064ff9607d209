#![allow(dead_code)]

use curveprog_core::curve::PlaneCurve;
use curveprog_core::exact::Rational;
use curveprog_core::poly::{HomogPoly, UniPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub fn q(n: i64) -> Rational {
    Rational::from(n)
}

pub fn form(terms: &[(i64, [u32; 3])]) -> HomogPoly {
    HomogPoly::from_terms(terms.iter().map(|(c, e)| (*e, q(*c))), None).unwrap()
}

pub fn curve(terms: &[(i64, [u32; 3])]) -> PlaneCurve {
    PlaneCurve::new(form(terms)).unwrap()
}

pub fn klein() -> PlaneCurve {
    curve(&[(1, [3, 1, 0]), (1, [0, 3, 1]), (1, [1, 0, 3])])
}

pub fn fermat(d: u32, sign: i64) -> PlaneCurve {
    curve(&[(1, [d, 0, 0]), (1, [0, d, 0]), (sign, [0, 0, d])])
}

/// Named curves with their expected smoothness.
pub fn corpus() -> Vec<(&'static str, PlaneCurve, bool)> {
    vec![
        ("fermat4", fermat(4, -1), true),
        ("klein", klein(), true),
        ("fermat5", fermat(5, 1), true),
        ("fermat3", fermat(3, 1), true),
        ("conic", curve(&[(1, [1, 0, 1]), (-1, [0, 2, 0])]), true),
        ("cusp", curve(&[(1, [0, 2, 1]), (-1, [3, 0, 0])]), false),
        ("node", curve(&[(1, [0, 2, 1]), (-1, [3, 0, 0]), (-1, [2, 0, 1])]), false),
        (
            "two-conics",
            // (X^2 + Y^2 - 2Z^2)(X^2 + 2Y^2 - 3Z^2): conjugate intersections
            curve(&[
                (1, [4, 0, 0]),
                (3, [2, 2, 0]),
                (-5, [2, 0, 2]),
                (2, [0, 4, 0]),
                (-7, [0, 2, 2]),
                (6, [0, 0, 4]),
            ]),
            false,
        ),
        ("bielliptic", curve(&[(1, [0, 0, 4]), (1, [2, 0, 2]), (1, [0, 4, 0]), (-1, [4, 0, 0])]), true),
        ("elliptic", curve(&[(1, [0, 2, 1]), (-1, [3, 0, 0]), (1, [1, 0, 2]), (-1, [0, 0, 3])]), true),
        ("tacnode", curve(&[(1, [0, 2, 2]), (-1, [4, 0, 0]), (-1, [0, 4, 0])]), false),
        ("sextic", curve(&[(1, [6, 0, 0]), (2, [0, 6, 0]), (-3, [0, 0, 6]), (1, [3, 3, 0])]), true),
    ]
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs().to_u64().expect("constant fits in u64");
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.into_iter().map(BigInt::from).collect()
}

/// Rational roots by the rational root theorem with trial-division divisors.
pub fn naive_rational_roots(f: &UniPoly) -> Vec<Rational> {
    let lcm = f
        .coeffs()
        .iter()
        .fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c.numer() * &lcm) / c.denom())
        .collect();
    let mut roots = Vec::new();
    if ints.iter().all(Zero::is_zero) {
        return roots;
    }
    while ints.first().is_some_and(Zero::is_zero) {
        ints.remove(0);
        if !roots.contains(&Rational::zero()) {
            roots.push(Rational::zero());
        }
    }
    if ints.len() >= 2 {
        let reduced = UniPoly::new(ints.iter().map(|c| Rational::from(c.clone())).collect(), 'z');
        // Cauchy bound on |z|
        let lead = ints.last().unwrap().to_f64().unwrap().abs();
        let cauchy = 1.0 + ints.iter().map(|c| c.to_f64().unwrap().abs() / lead).fold(0.0, f64::max);
        let lead_divisors = divisors(ints.last().unwrap());
        for a in divisors(&ints[0]) {
            for b in &lead_divisors {
                if a.gcd(b) != BigInt::from(1) || a.to_f64().unwrap() > cauchy * b.to_f64().unwrap() {
                    continue;
                }
                for sign in [1, -1] {
                    let r = Rational::from(a.clone() * sign) / Rational::from(b.clone());
                    if !float_near_root(&ints, r.to_f64()) {
                        continue;
                    }
                    if reduced.eval(&r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Cheap prefilter: `f(r)` is not clearly nonzero in floating point.
fn float_near_root(c: &[BigInt], r: f64) -> bool {
    let (mut value, mut scale) = (0.0f64, 0.0f64);
    for (i, a) in c.iter().enumerate() {
        let term = a.to_f64().unwrap() * r.powi(i as i32);
        value += term;
        scale += term.abs();
    }
    value.abs() <= 1e-6 * scale
}

/// All reduced `p/q` with `max(|p|, q) <= h` by a plain double loop.
pub fn naive_rationals(h: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    for p in -h..=h {
        for den in 1..=h {
            if p.gcd(&den) == 1 || (p == 0 && den == 1) {
                out.push(Rational::new(p, den));
            }
        }
    }
    out
}

// ---- irreducibility oracle ----

fn eval_scaled(c: &[i128], p: i128, den: i128) -> i128 {
    // sum c_i p^i den^(n-i)
    let n = c.len() - 1;
    c.iter()
        .enumerate()
        .map(|(i, a)| a * p.pow(i as u32) * den.pow((n - i) as u32))
        .sum()
}

fn divisors_i128(n: i128) -> Vec<i128> {
    let n = n.abs();
    (1..=n).filter(|d| n % d == 0).collect()
}

fn has_rational_root(c: &[i128]) -> bool {
    if c[0] == 0 {
        return true;
    }
    let lead = *c.last().unwrap();
    divisors_i128(c[0]).into_iter().any(|p| {
        divisors_i128(lead)
            .into_iter()
            .any(|d| eval_scaled(c, p, d) == 0 || eval_scaled(c, -p, d) == 0)
    })
}

/// Whether `a z^2 + b z + c` divides the quartic `f` over the integers.
fn quadratic_divides(f: &[i128], a: i128, b: i128, c: i128) -> bool {
    let mut r = f.to_vec();
    for k in (2..=4).rev() {
        if r[k] % a != 0 {
            return false;
        }
        let m = r[k] / a;
        r[k] -= m * a;
        r[k - 1] -= m * b;
        r[k - 2] -= m * c;
    }
    r[0] == 0 && r[1] == 0
}

/// Irreducibility over ℚ for degree <= 4 by rational roots and an
/// exhaustive search for integer quadratic factors.
pub fn oracle_irreducible(c: &[i64]) -> bool {
    let c: Vec<i128> = c.iter().map(|&x| x as i128).collect();
    let deg = c.len() - 1;
    if deg == 1 {
        return true;
    }
    if has_rational_root(&c) {
        return false;
    }
    if deg < 4 {
        return true;
    }
    let norm = (c.iter().map(|x| x * x).sum::<i128>() as f64).sqrt().ceil() as i128;
    let bound = 4 * norm;
    for a in divisors_i128(c[4]) {
        for c0 in divisors_i128(c[0]) {
            for c0 in [c0, -c0] {
                for b in -bound..=bound {
                    if quadratic_divides(&c, a, b, c0) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

// ---- progression oracles ----

fn subsets(v: &[Rational]) -> impl Iterator<Item = Vec<Rational>> + '_ {
    (0u32..1 << v.len()).map(move |mask| {
        v.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, x)| x.clone())
            .collect()
    })
}

pub fn dedup(s: &[Rational]) -> Vec<Rational> {
    let mut v = s.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Best `(len, t, t0)` over every subset forming an ascending AP.
pub fn ap_oracle(s: &[Rational]) -> (usize, Rational, Rational) {
    let v = dedup(s);
    let mut best: Option<(usize, Rational, Rational)> = None;
    for sub in subsets(&v).filter(|x| x.len() >= 2) {
        let t = &sub[1] - &sub[0];
        if sub.windows(2).all(|w| &w[1] - &w[0] == t) {
            let t0 = &sub[0] - &t;
            let cand = (sub.len(), t, t0);
            best = match best {
                Some(b) if b.0 > cand.0 || (b.0 == cand.0 && (&b.1, &b.2) <= (&cand.1, &cand.2)) => Some(b),
                _ => Some(cand),
            };
        }
    }
    best.unwrap()
}

/// Best `(len, |t|, t0, t)` over every subset forming a GP with `|t| > 1`.
pub fn gp_oracle(s: &[Rational]) -> Option<(usize, Rational, Rational, Rational)> {
    let v = dedup(s);
    let mut best: Option<(usize, Rational, Rational, Rational)> = None;
    for mut sub in subsets(&v).filter(|x| x.len() >= 2) {
        sub.sort_by_key(|x| x.abs());
        let t = &sub[1] / &sub[0];
        if t.abs() <= Rational::one() || !sub.windows(2).all(|w| &w[1] / &w[0] == t) {
            continue;
        }
        let t0 = &sub[0] / &t;
        let cand = (sub.len(), t.abs(), t0, t);
        best = match best {
            Some(b) if b.0 > cand.0 || (b.0 == cand.0 && (&b.1, &b.2, &b.3) <= (&cand.1, &cand.2, &cand.3)) => Some(b),
            _ => Some(cand),
        };
    }
    best
}

