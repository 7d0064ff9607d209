//! Text input: homogeneous forms in `X, Y, Z`, univariate polynomials,
//! projective points and rationals.
//!
//! A polynomial is a sum of terms `[coeff][*]v^a[*]w^b...` joined by `+` and
//! `-`, where `coeff` is an integer or `p/q` and exponents default to 1.
//! Whitespace is ignored.

use std::collections::BTreeSet;

use curveprog_core::exact::Rational;
use curveprog_core::poly::{HomogPoly, UniPoly};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("parse error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("not homogeneous: terms of degree {0} and {1}")]
    NotHomogeneous(u32, u32),
    #[error("expected a form of degree {expected}, got degree {found}")]
    WrongDegree { expected: u32, found: u32 },
    #[error("variable {0} is not allowed here")]
    ForbiddenVariable(char),
    #[error("more than one variable in a univariate polynomial: {0} and {1}")]
    MixedVariables(char, char),
}

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        position,
        message: message.into(),
    }
}

/// One parsed term: coefficient and exponent per variable letter.
#[derive(Debug)]
struct Term {
    start: usize,
    coeff: Rational,
    powers: Vec<(char, u32)>,
}

impl Term {
    fn degree(&self) -> u32 {
        self.powers.iter().map(|(_, e)| e).sum()
    }
}

struct Lexer {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Lexer {
    fn new(src: &str) -> Self {
        let chars: Vec<(usize, char)> = src.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
        Lexer {
            chars,
            pos: 0,
            len: src.chars().count(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    /// Position of the next character, or the end of input.
    fn here(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        (!digits.is_empty()).then(|| digits.parse().expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if !self.eat('^') {
            return Ok(1);
        }
        let at = self.here();
        let n = self.integer().ok_or_else(|| syntax(at, "expected a nonnegative integer exponent"))?;
        u32::try_from(n).map_err(|_| syntax(at, "exponent too large"))
    }

    fn term(&mut self, sign: i32) -> Result<Term, ParseError> {
        let start = self.here();
        let mut coeff = Rational::one();
        let mut saw_coeff = false;
        if let Some(n) = self.integer() {
            saw_coeff = true;
            coeff = Rational::from(n);
            if self.eat('/') {
                let at = self.here();
                let d = self.integer().ok_or_else(|| syntax(at, "expected a denominator"))?;
                if d.is_zero() {
                    return Err(syntax(at, "zero denominator"));
                }
                coeff = Rational::from(coeff.numer().clone()) / Rational::from(d);
            }
        }
        let mut powers = Vec::new();
        loop {
            let star = (saw_coeff || !powers.is_empty()) && self.eat('*');
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() => {
                    self.bump();
                    let e = self.exponent()?;
                    powers.push((c, e));
                }
                _ if star => return Err(syntax(self.here(), "expected a variable after '*'")),
                _ => break,
            }
        }
        if !saw_coeff && powers.is_empty() {
            return Err(syntax(start, "expected a coefficient or a variable"));
        }
        if sign < 0 {
            coeff = -coeff;
        }
        Ok(Term { start, coeff, powers })
    }

    fn terms(&mut self) -> Result<Vec<Term>, ParseError> {
        if self.chars.is_empty() {
            return Err(syntax(0, "empty input"));
        }
        let mut out = Vec::new();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            out.push(self.term(sign)?);
            match self.peek() {
                None => return Ok(out),
                Some('+') => {
                    self.bump();
                    sign = 1;
                }
                Some('-') => {
                    self.bump();
                    sign = -1;
                }
                Some(c) => return Err(syntax(self.here(), format!("unexpected '{c}'"))),
            }
        }
    }
}

/// A parsed plane curve equation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveExpr {
    pub source: String,
    #[serde(serialize_with = "display")]
    pub poly: HomogPoly,
    pub variables: BTreeSet<char>,
}

fn display<S: serde::Serializer>(p: &HomogPoly, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(p)
}

fn xyz_index(c: char) -> Result<usize, ParseError> {
    match c.to_ascii_uppercase() {
        'X' => Ok(0),
        'Y' => Ok(1),
        'Z' => Ok(2),
        _ => Err(ParseError::ForbiddenVariable(c)),
    }
}

/// Exponent triples with coefficients, the common degree and the variables used.
type ParsedTerms = (Vec<([u32; 3], Rational)>, Option<u32>, BTreeSet<char>);

fn homogeneous_terms(text: &str) -> Result<ParsedTerms, ParseError> {
    let terms = Lexer::new(text).terms()?;
    let mut vars = BTreeSet::new();
    let mut out = Vec::new();
    let first_degree = terms.first().map(Term::degree);
    for t in &terms {
        let mut e = [0u32; 3];
        for &(c, k) in &t.powers {
            let i = xyz_index(c).map_err(|_| syntax(t.start, format!("unknown variable '{c}'")))?;
            e[i] += k;
            if k > 0 {
                vars.insert(c.to_ascii_uppercase());
            }
        }
        if let Some(d) = first_degree {
            if t.degree() != d {
                return Err(ParseError::NotHomogeneous(d, t.degree()));
            }
        }
        out.push((e, t.coeff.clone()));
    }
    Ok((out, first_degree, vars))
}

/// Parses a homogeneous form in `X, Y, Z` (lowercase accepted).
pub fn parse_curve(text: &str) -> Result<CurveExpr, ParseError> {
    let (terms, degree, variables) = homogeneous_terms(text)?;
    let poly = HomogPoly::from_terms(terms, degree).map_err(|_| syntax(0, "inconsistent degrees"))?;
    Ok(CurveExpr {
        source: text.to_string(),
        poly,
        variables,
    })
}

/// Parses a binary form in `X, Y` of the given degree; `"0"` gives the zero
/// form.
pub fn parse_binary_form(text: &str, degree: u32) -> Result<HomogPoly, ParseError> {
    let (terms, _, vars) = homogeneous_terms(text)?;
    if vars.contains(&'Z') {
        return Err(ParseError::ForbiddenVariable('Z'));
    }
    let terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    if let Some((e, _)) = terms.first() {
        let found = e.iter().sum();
        if found != degree {
            return Err(ParseError::WrongDegree { expected: degree, found });
        }
    }
    HomogPoly::from_terms(terms, Some(degree)).map_err(|_| syntax(0, "inconsistent degrees"))
}

/// Parses a polynomial in a single variable letter. A constant gets
/// `default_var`.
pub fn parse_univariate(text: &str, default_var: char) -> Result<UniPoly, ParseError> {
    let terms = Lexer::new(text).terms()?;
    let mut var: Option<char> = None;
    let mut coeffs: Vec<Rational> = Vec::new();
    for t in &terms {
        let mut k = 0usize;
        for &(c, e) in &t.powers {
            match var {
                Some(v) if v != c => return Err(ParseError::MixedVariables(v, c)),
                _ => var = Some(c),
            }
            k += e as usize;
        }
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rational::zero());
        }
        coeffs[k] += t.coeff.clone();
    }
    Ok(UniPoly::new(coeffs, var.unwrap_or(default_var)))
}

pub fn parse_rational(text: &str) -> Result<Rational, String> {
    text.parse::<Rational>().map_err(|e| e.to_string())
}

/// `x,y,z` with rational coordinates.
pub fn parse_point(text: &str) -> Result<[Rational; 3], String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated coordinates, got {}", parts.len()));
    }
    let mut out: [Rational; 3] = Default::default();
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = parse_rational(part)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn named_curves() {
        let fermat = parse_curve("X^4 + Y^4 - Z^4").unwrap();
        assert_eq!(fermat.poly.degree(), 4);
        assert_eq!(fermat.poly.coeff([0, 0, 4]), q(-1));
        let klein = parse_curve("X^3*Y + Y^3*Z + Z^3*X").unwrap();
        assert_eq!(klein.poly.degree(), 4);
        assert_eq!(klein.poly.to_string(), "X^3*Y + Y^3*Z + X*Z^3");
        assert_eq!(parse_curve("x^3y+y^3z+z^3x").unwrap().poly, klein.poly);
    }

    #[test]
    fn homogeneity_is_checked() {
        assert_eq!(parse_curve("X^2 + Y^3").unwrap_err(), ParseError::NotHomogeneous(2, 3));
    }

    #[test]
    fn coefficients_and_implicit_parts() {
        let p = parse_curve("-3/4 X Y + 2*Z*Z - X^2").unwrap();
        assert_eq!(p.poly.coeff([1, 1, 0]), Rational::new(-3, 4));
        assert_eq!(p.poly.coeff([0, 0, 2]), q(2));
        assert_eq!(p.poly.coeff([2, 0, 0]), q(-1));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_curve("X^2 + * Y^2") {
            Err(ParseError::Syntax { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_curve("X^ + Y"), Err(ParseError::Syntax { position: 3, .. })));
        assert!(matches!(parse_curve(""), Err(ParseError::Syntax { position: 0, .. })));
        assert!(matches!(parse_curve("X + W"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_curve("X/2"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn univariate_and_binary() {
        let f = parse_univariate("z^4 - 1", 'x').unwrap();
        assert_eq!(f, UniPoly::from_ints(&[-1, 0, 0, 0, 1], 'z'));
        assert_eq!(parse_univariate("x^2 + y", 'x'), Err(ParseError::MixedVariables('x', 'y')));
        let l2 = parse_binary_form("0", 2).unwrap();
        assert!(l2.is_zero() && l2.degree() == 2);
        assert!(parse_binary_form("X^2*Z", 3).is_err());
        assert_eq!(
            parse_binary_form("X^3", 4).unwrap_err(),
            ParseError::WrongDegree { expected: 4, found: 3 }
        );
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("0, 1/2,1").unwrap(), [q(0), Rational::new(1, 2), q(1)]);
        assert!(parse_point("1,2").is_err());
    }
}
