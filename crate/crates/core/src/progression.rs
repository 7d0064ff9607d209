//! Arithmetic and geometric progression laws on ℚ and longest-progression
//! detection in finite sets.
//!
//! Terms are indexed from 1: `x_i = t0 + i·t` or `x_i = t0·t^i`.

use std::collections::HashMap;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Kind {
    Arithmetic,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Length::Finite(n) => s.serialize_u64(*n),
            Length::Infinite => s.serialize_str("INFINITE"),
        }
    }
}

/// Admissibility rules for laws.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rules {
    /// Forbid `t0 = 0` for arithmetic laws.
    pub strict: bool,
    /// Permit geometric ratios `±1`.
    pub allow_degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgressionError {
    #[error("arithmetic step t must be nonzero")]
    ZeroStep,
    #[error("t0 must be nonzero")]
    ZeroStart,
    #[error("geometric ratio {0} is degenerate")]
    DegenerateRatio(Rational),
    #[error("0 cannot be a member of a geometric progression")]
    ZeroInSet,
    #[error("need at least {needed} values, got {got}")]
    TooFewElements { needed: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Progression {
    pub kind: Kind,
    pub t0: Rational,
    pub t: Rational,
    pub length: Length,
}

pub const NONSTANDARD_T0: &str = "nonstandard-t0";

impl Progression {
    pub fn new(kind: Kind, t0: Rational, t: Rational, length: Length, rules: Rules) -> Result<Self, ProgressionError> {
        check_law(kind, &t0, &t, rules)?;
        Ok(Progression { kind, t0, t, length })
    }

    pub fn arithmetic(t0: Rational, t: Rational) -> Result<Self, ProgressionError> {
        Self::new(Kind::Arithmetic, t0, t, Length::Infinite, Rules::default())
    }

    pub fn geometric(t0: Rational, t: Rational) -> Result<Self, ProgressionError> {
        Self::new(Kind::Geometric, t0, t, Length::Infinite, Rules::default())
    }

    pub fn with_length(mut self, length: Length) -> Self {
        self.length = length;
        self
    }

    /// The `i`-th term.
    ///
    /// # Panics
    /// If `i == 0`.
    pub fn term(&self, i: u64) -> Rational {
        assert!(i >= 1, "progressions are indexed from 1");
        match self.kind {
            Kind::Arithmetic => &self.t0 + &self.t * Rational::from(i),
            Kind::Geometric => &self.t0 * self.t.pow_u(i as u32),
        }
    }

    /// Terms `x_1, x_2, …`, finite or not according to `length`.
    pub fn terms(&self) -> impl Iterator<Item = Rational> + '_ {
        let end = match self.length {
            Length::Finite(n) => n,
            Length::Infinite => u64::MAX,
        };
        let mut current = self.t0.clone();
        (1..=end).map(move |_| {
            current = match self.kind {
                Kind::Arithmetic => &current + &self.t,
                Kind::Geometric => &current * &self.t,
            };
            current.clone()
        })
    }

    pub fn flags(&self) -> Vec<&'static str> {
        if self.kind == Kind::Arithmetic && self.t0.is_zero() {
            vec![NONSTANDARD_T0]
        } else {
            Vec::new()
        }
    }
}

fn check_law(kind: Kind, t0: &Rational, t: &Rational, rules: Rules) -> Result<(), ProgressionError> {
    match kind {
        Kind::Arithmetic => {
            if t.is_zero() {
                return Err(ProgressionError::ZeroStep);
            }
            if rules.strict && t0.is_zero() {
                return Err(ProgressionError::ZeroStart);
            }
        }
        Kind::Geometric => {
            if t0.is_zero() {
                return Err(ProgressionError::ZeroStart);
            }
            if t.is_zero() || (!rules.allow_degenerate && t.abs().is_one()) {
                return Err(ProgressionError::DegenerateRatio(t.clone()));
            }
        }
    }
    Ok(())
}

/// A progression together with the set members it consists of, in term
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProgressionMatch {
    #[serde(flatten)]
    pub progression: Progression,
    pub members: Vec<Rational>,
}

impl ProgressionMatch {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn sorted_unique(s: &[Rational]) -> Vec<Rational> {
    let mut v = s.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Longest arithmetic progression among the distinct values of `s`.
///
/// The step is reported positive, ties go to the smallest `|t|` and then the
/// smallest `t0`. Under `rules.strict` a progression whose ascending form
/// has `t0 = 0` is reported in descending form instead.
pub fn longest_ap(s: &[Rational], rules: Rules) -> Result<ProgressionMatch, ProgressionError> {
    let v = sorted_unique(s);
    let n = v.len();
    if n < 2 {
        return Err(ProgressionError::TooFewElements { needed: 2, got: n });
    }
    let index: HashMap<&Rational, usize> = v.iter().enumerate().map(|(i, x)| (x, i)).collect();
    // len[i * n + j]: longest chain ending with v[i], v[j]
    let mut len = vec![2u32; n * n];
    let mut best: Option<(u32, Rational, Rational, usize)> = None;
    for j in 1..n {
        for i in 0..j {
            let diff = &v[j] - &v[i];
            let prev = &v[i] - &diff;
            let l = match index.get(&prev) {
                Some(&k) => len[k * n + i] + 1,
                None => 2,
            };
            len[i * n + j] = l;
            let improves = match &best {
                None => true,
                Some((bl, bt, bt0, _)) => {
                    l > *bl
                        || (l == *bl && {
                            let t0 = &v[j] - &diff * Rational::from(l);
                            (&diff, &t0) < (bt, bt0)
                        })
                }
            };
            if improves {
                let t0 = &v[j] - &diff * Rational::from(l);
                best = Some((l, diff, t0, j));
            }
        }
    }
    let (l, t, t0, _) = best.expect("n >= 2");
    let mut members: Vec<Rational> = (1..=l as u64).map(|i| &t0 + &t * Rational::from(i)).collect();
    let (t0, t) = if rules.strict && t0.is_zero() {
        members.reverse();
        (&members[0] + &t, -t)
    } else {
        (t0, t)
    };
    Ok(ProgressionMatch {
        progression: Progression {
            kind: Kind::Arithmetic,
            t0,
            t,
            length: Length::Finite(l as u64),
        },
        members,
    })
}

/// Longest geometric progression among the distinct values of `s`, with
/// `|t| > 1` (terms increase in absolute value). The pair `{a, -a}` counts
/// as a progression with `t = -1` only under `rules.allow_degenerate`.
/// `None` when no two values form an admissible progression.
pub fn longest_gp(s: &[Rational], rules: Rules) -> Result<Option<ProgressionMatch>, ProgressionError> {
    if s.iter().any(|x| x.is_zero()) {
        return Err(ProgressionError::ZeroInSet);
    }
    let mut v = sorted_unique(s);
    let n = v.len();
    if n < 2 {
        return Err(ProgressionError::TooFewElements { needed: 2, got: n });
    }
    v.sort_by(|a, b| a.abs().cmp(&b.abs()).then(a.cmp(b)));
    let index: HashMap<&Rational, usize> = v.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut len = vec![2u32; n * n];
    let mut best: Option<(u32, Rational, Rational)> = None;
    let consider = |best: &mut Option<(u32, Rational, Rational)>, l: u32, t: Rational, t0: Rational| {
        let key = (t.abs(), t0.clone(), t.clone());
        let better = match best {
            None => true,
            Some((bl, bt, bt0)) => l > *bl || (l == *bl && key < (bt.abs(), bt0.clone(), bt.clone())),
        };
        if better {
            *best = Some((l, t, t0));
        }
    };
    for j in 1..n {
        for i in 0..j {
            let ratio = &v[j] / &v[i];
            if ratio.abs().is_one() {
                if rules.allow_degenerate && ratio.is_negative() {
                    let t0 = &v[i] / &ratio;
                    consider(&mut best, 2, ratio, t0);
                }
                continue;
            }
            let prev = &v[i] / &ratio;
            let l = match index.get(&prev) {
                Some(&k) if k < i => len[k * n + i] + 1,
                _ => 2,
            };
            len[i * n + j] = l;
            let t0 = &v[j] / ratio.pow_u(l);
            consider(&mut best, l, ratio, t0);
        }
    }
    Ok(best.map(|(l, t, t0)| {
        let members: Vec<Rational> = (1..=l).map(|i| &t0 * t.pow_u(i)).collect();
        ProgressionMatch {
            progression: Progression {
                kind: Kind::Geometric,
                t0,
                t,
                length: Length::Finite(l as u64),
            },
            members,
        }
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    None,
    Arithmetic { t0: Rational, t: Rational },
    Geometric { t0: Rational, t: Rational },
    Both { arithmetic: (Rational, Rational), geometric: (Rational, Rational) },
}

/// Fits the ordered list `xs` exactly, as consecutive terms from `i = 1`.
pub fn classify(xs: &[Rational], rules: Rules) -> Result<Classification, ProgressionError> {
    if xs.len() < 3 {
        return Err(ProgressionError::TooFewElements {
            needed: 3,
            got: xs.len(),
        });
    }
    let arith = {
        let t = &xs[1] - &xs[0];
        let fits = xs.windows(2).all(|w| &w[1] - &w[0] == t);
        let t0 = &xs[0] - &t;
        (fits && check_law(Kind::Arithmetic, &t0, &t, rules).is_ok()).then_some((t0, t))
    };
    let geom = if xs[0].is_zero() {
        None
    } else {
        let t = &xs[1] / &xs[0];
        let fits = xs.windows(2).all(|w| !w[0].is_zero() && &w[1] / &w[0] == t);
        let t0 = if t.is_zero() { Rational::zero() } else { &xs[0] / &t };
        (fits && check_law(Kind::Geometric, &t0, &t, rules).is_ok()).then_some((t0, t))
    };
    Ok(match (arith, geom) {
        (None, None) => Classification::None,
        (Some((t0, t)), None) => Classification::Arithmetic { t0, t },
        (None, Some((t0, t))) => Classification::Geometric { t0, t },
        (Some(a), Some(g)) => Classification::Both {
            arithmetic: a,
            geometric: g,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn qs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn term_examples() {
        let p = Progression::arithmetic(q(1), q(1)).unwrap();
        assert_eq!(p.term(3), q(4));
        let p = Progression::geometric(q(1), q(2)).unwrap();
        assert_eq!(p.term(4), q(16));
        let p = Progression::geometric(q(3), Rational::new(1, 2)).unwrap();
        assert_eq!(p.term(2), Rational::new(3, 4));
        let first: Vec<Rational> = p.terms().take(3).collect();
        assert_eq!(first, vec![Rational::new(3, 2), Rational::new(3, 4), Rational::new(3, 8)]);
    }

    #[test]
    fn law_admissibility() {
        assert_eq!(Progression::arithmetic(q(1), q(0)), Err(ProgressionError::ZeroStep));
        let p = Progression::arithmetic(q(0), q(1)).unwrap();
        assert_eq!(p.flags(), vec![NONSTANDARD_T0]);
        let strict = Rules {
            strict: true,
            ..Rules::default()
        };
        assert_eq!(
            Progression::new(Kind::Arithmetic, q(0), q(1), Length::Infinite, strict),
            Err(ProgressionError::ZeroStart)
        );
        assert!(matches!(
            Progression::geometric(q(1), q(-1)),
            Err(ProgressionError::DegenerateRatio(_))
        ));
        let lax = Rules {
            allow_degenerate: true,
            ..Rules::default()
        };
        assert!(Progression::new(Kind::Geometric, q(1), q(-1), Length::Infinite, lax).is_ok());
    }

    #[test]
    fn longest_ap_examples() {
        let m = longest_ap(&qs(&[1, 3, 4, 5, 7, 9]), Rules::default()).unwrap();
        assert_eq!(m.members, qs(&[1, 3, 5, 7, 9]));
        assert_eq!(m.progression.t, q(2));
        assert_eq!(m.progression.t0, q(-1));
        let m = longest_ap(&qs(&[0, 10]), Rules::default()).unwrap();
        assert_eq!(m.members, qs(&[0, 10]));
        assert_eq!(m.progression.t, q(10));
    }

    #[test]
    fn strict_ap_uses_descending_form() {
        let strict = Rules {
            strict: true,
            ..Rules::default()
        };
        let m = longest_ap(&qs(&[2, 4, 6]), strict).unwrap();
        assert_eq!(m.members, qs(&[6, 4, 2]));
        assert_eq!((m.progression.t0.clone(), m.progression.t.clone()), (q(8), q(-2)));
        assert!(matches!(classify(&m.members, strict).unwrap(), Classification::Arithmetic { .. }));
    }

    #[test]
    fn longest_gp_examples() {
        let m = longest_gp(&qs(&[1, 2, 3, 4, 8, 16]), Rules::default()).unwrap().unwrap();
        assert_eq!(m.members, qs(&[1, 2, 4, 8, 16]));
        assert_eq!(m.progression.t, q(2));
        let m = longest_gp(&qs(&[1, -2, 4, -8]), Rules::default()).unwrap().unwrap();
        assert_eq!(m.members, qs(&[1, -2, 4, -8]));
        assert_eq!(m.progression.t, q(-2));
        assert_eq!(longest_gp(&qs(&[0, 1]), Rules::default()), Err(ProgressionError::ZeroInSet));
        assert_eq!(longest_gp(&qs(&[1, -1]), Rules::default()), Ok(None));
        let lax = Rules {
            allow_degenerate: true,
            ..Rules::default()
        };
        let m = longest_gp(&qs(&[1, -1]), lax).unwrap().unwrap();
        assert_eq!(m.progression.t, q(-1));
    }

    #[test]
    fn classify_examples() {
        let r = Rules::default();
        assert_eq!(
            classify(&qs(&[2, 4, 6]), r).unwrap(),
            Classification::Arithmetic { t0: q(0), t: q(2) }
        );
        assert_eq!(
            classify(&qs(&[2, 4, 8]), r).unwrap(),
            Classification::Geometric { t0: q(1), t: q(2) }
        );
        assert_eq!(classify(&qs(&[1, 2, 4, 7]), r).unwrap(), Classification::None);
        let strict = Rules {
            strict: true,
            ..Rules::default()
        };
        assert_eq!(classify(&qs(&[2, 4, 6]), strict).unwrap(), Classification::None);
    }

    #[test]
    fn json_shape() {
        let m = longest_ap(&qs(&[1, 2]), Rules::default()).unwrap();
        let v = serde_json::to_value(&m).unwrap();
        assert_eq!(v["kind"], "ARITHMETIC");
        assert_eq!(v["length"], 2);
        assert_eq!(v["members"], serde_json::json!(["1", "2"]));
        let inf = serde_json::to_value(Progression::arithmetic(q(1), q(1)).unwrap()).unwrap();
        assert_eq!(inf["length"], "INFINITE");
    }
}
