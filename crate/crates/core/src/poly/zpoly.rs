//! Dense integer polynomials as plain coefficient vectors (lowest degree
//! first, no trailing zeros). Internal workhorse for gcds and factoring.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn trim(mut f: Vec<BigInt>) -> Vec<BigInt> {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

pub fn degree(f: &[BigInt]) -> Option<usize> {
    f.len().checked_sub(1)
}

pub fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(f: &[BigInt]) -> Vec<BigInt> {
    if f.is_empty() {
        return Vec::new();
    }
    let mut g = content(f);
    if f.last().unwrap().is_negative() {
        g = -g;
    }
    f.iter().map(|c| c / &g).collect()
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect(),
    )
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn scale(a: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    trim(a.iter().map(|x| x * c).collect())
}

pub fn derivative(f: &[BigInt]) -> Vec<BigInt> {
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

pub fn eval(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b`.
pub fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    assert!(!b.is_empty(), "pseudo-division by zero");
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bc;
        }
        r = trim(r);
    }
    r
}

/// Gcd via the primitive remainder sequence; primitive, positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() {
        return primitive(b);
    }
    if b.is_empty() {
        return primitive(a);
    }
    let (mut x, mut y) = if a.len() >= b.len() {
        (primitive(a), primitive(b))
    } else {
        (primitive(b), primitive(a))
    };
    while !y.is_empty() {
        let r = prem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    primitive(&x)
}

/// Exact quotient over ℤ, `None` when `d` does not divide `f` in ℤ[x].
pub fn exact_div(f: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    if d.is_empty() {
        return None;
    }
    if f.is_empty() {
        return Some(Vec::new());
    }
    if f.len() < d.len() {
        return None;
    }
    let dd = d.len() - 1;
    let ld = d.last().unwrap();
    let mut r = f.to_vec();
    let mut q = vec![BigInt::zero(); f.len() - dd];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + dd].div_rem(ld);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, dc) in d.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
        }
        q[k] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(trim(q))
}

pub fn max_norm(f: &[BigInt]) -> BigInt {
    f.iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
}

/// Ceiling of the Euclidean norm.
pub fn l2_norm_ceil(f: &[BigInt]) -> BigInt {
    let s: BigInt = f.iter().map(|c| c * c).sum();
    let r = num_integer::Roots::sqrt(&s);
    if &r * &r == s {
        r
    } else {
        r + BigInt::one()
    }
}
