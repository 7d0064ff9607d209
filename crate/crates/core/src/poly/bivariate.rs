use std::fmt;

use super::resultant::resultant_generic;
use super::uni::{write_term, UniPoly};
use super::PolyError;
use crate::exact::Rational;

/// Affine model `Σ aₖ(x) zᵏ`: a polynomial in `z` whose coefficients are
/// polynomials in `x`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let coeffs = coeffs.into_iter().map(|c| c.with_var('x')).collect();
        BiPoly { coeffs }
    }

    /// Lifts a polynomial in `x` to a `z`-constant model.
    pub fn from_x(p: UniPoly) -> Self {
        Self::new(vec![p])
    }

    /// Lifts a polynomial in `z` with constant coefficients.
    pub fn from_z(p: &UniPoly) -> Self {
        Self::new(
            p.coeffs()
                .iter()
                .map(|c| UniPoly::constant(c.clone(), 'x'))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> UniPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(|| UniPoly::zero('x'))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_z(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.degree()).max()
    }

    pub fn evaluate(&self, x: &Rational, z: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.eval(x);
        }
        acc
    }

    /// Specializes `x = x0`, giving a polynomial in `z`.
    pub fn at_x(&self, x0: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c.eval(x0)).collect(), 'z')
    }

    /// Replaces `x` by `g(x)` in every coefficient.
    pub fn substitute_x(&self, g: &UniPoly) -> BiPoly {
        let g = g.clone().with_var('x');
        BiPoly::new(self.coeffs.iter().map(|c| c.compose(&g)).collect())
    }

    /// Replaces `x` by `x^s`.
    pub fn substitute_power(&self, s: u32) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(|c| c.substitute_power(s)).collect())
    }

    /// Replaces `z` by `z^s`.
    pub fn substitute_z_power(&self, s: u32) -> BiPoly {
        let s = s as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![UniPoly::zero('x'); (self.coeffs.len() - 1) * s + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * s] = c.clone();
        }
        BiPoly::new(coeffs)
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        BiPoly::new((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        BiPoly::new((0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::new(Vec::new());
        }
        let mut out = vec![UniPoly::zero('x'); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(out)
    }

    /// Partial derivative in `z`.
    pub fn derivative_z(&self) -> BiPoly {
        BiPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rational::from(k)))
                .collect(),
        )
    }

    /// Partial derivative in `x`.
    pub fn derivative_x(&self) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(|c| c.derivative()).collect())
    }

    /// `Res_z(self, other)` as a polynomial in `x`.
    pub fn resultant_z(&self, other: &BiPoly) -> Result<UniPoly, PolyError> {
        if self.is_zero() || other.is_zero() {
            return Err(PolyError::ZeroInput);
        }
        Ok(resultant_generic(&self.coeffs, &other.coeffs))
    }
}

impl BiPoly {
    /// Prints with the given names for the two variables.
    pub fn display_vars(&self, x: char, z: char) -> String {
        DisplayVars { p: self, x, z }.to_string()
    }
}

struct DisplayVars<'a> {
    p: &'a BiPoly,
    x: char,
    z: char,
}

impl fmt::Display for DisplayVars<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        let (xv, zv) = (self.x, self.z);
        let mut first = true;
        for (k, c) in self.p.coeffs.iter().enumerate().rev() {
            for (i, a) in c.coeffs().iter().enumerate().rev() {
                if a.is_zero() {
                    continue;
                }
                let mut parts = Vec::new();
                match i {
                    0 => {}
                    1 => parts.push(xv.to_string()),
                    _ => parts.push(format!("{xv}^{i}")),
                }
                match k {
                    0 => {}
                    1 => parts.push(zv.to_string()),
                    _ => parts.push(format!("{zv}^{k}")),
                }
                write_term(f, a, &parts.join("*"), first)?;
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        DisplayVars { p: self, x: 'x', z: 'z' }.fmt(f)
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
