//! Sparse integer Laurent polynomials in `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent → coefficient, never storing a zero coefficient.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "BTreeMap<i32, i64>", into = "BTreeMap<i32, i64>")]
pub struct LaurentPoly(BTreeMap<i32, i64>);

impl From<BTreeMap<i32, i64>> for LaurentPoly {
    fn from(mut m: BTreeMap<i32, i64>) -> Self {
        m.retain(|_, c| *c != 0);
        LaurentPoly(m)
    }
}

impl From<LaurentPoly> for BTreeMap<i32, i64> {
    fn from(p: LaurentPoly) -> Self {
        p.0
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i32, coeff: i64) -> Self {
        let mut m = BTreeMap::new();
        if coeff != 0 {
            m.insert(exp, coeff);
        }
        LaurentPoly(m)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        let c = self.0.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.0.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.0.get(&exp).copied().unwrap_or(0)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, i64)> + '_ {
        self.0.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.0.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.0.keys().next_back().copied()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.0.values().all(|&c| c > 0)
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> i64 {
        self.0.values().sum()
    }

    /// Substitutes `t ↦ t⁻¹`.
    pub fn bar(&self) -> Self {
        LaurentPoly(self.0.iter().map(|(&e, &c)| (-e, c)).collect())
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.0.iter().all(|(&e, &c)| self.coeff(-e) == c)
    }

    /// True iff every term has positive exponent and positive coefficient.
    pub fn in_t_nat_t(&self) -> bool {
        self.0.iter().all(|(&e, &c)| e > 0 && c > 0)
    }

    /// `t^{5}+2t^{7}+…`, ascending.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let mono = match e {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{{{e}}}"),
            };
            let mag = c.abs();
            let body = match (mag, mono.is_empty()) {
                (_, true) => mag.to_string(),
                (1, false) => mono,
                (_, false) => format!("{mag}{mono}"),
            };
            if c < 0 {
                s.push('-');
            } else if i > 0 {
                s.push('+');
            }
            s.push_str(&body);
        }
        s
    }
}

/// Splits `f` as `d + l` with `l` bar-invariant and `d ∈ t·Z≥0[t]`.
///
/// `l` copies the negative part of `f`, mirrored onto positive exponents, plus
/// the constant term of `f`.
pub fn bar_split(f: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
    let mut l = LaurentPoly::zero();
    for (e, c) in f.terms() {
        if e < 0 {
            l.add_term(e, c);
            l.add_term(-e, c);
        } else if e == 0 {
            l.add_term(0, c);
        }
    }
    let d = f - &l;
    if !d.in_t_nat_t() {
        return Err(Error::PositivityViolation(format!("{f} splits with non-positive part {d}")));
    }
    Ok((d, l))
}

pub fn bar_involution(f: &LaurentPoly) -> LaurentPoly {
    f.bar()
}

impl fmt::Display for LaurentPoly {
    /// `t^11 + 2t^9 + 2t^7 + t^5`, descending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let mono = match e {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{e}"),
            };
            let mag = c.abs();
            let body = match (mag, mono.is_empty()) {
                (_, true) => mag.to_string(),
                (1, false) => mono,
                (_, false) => format!("{mag}{mono}"),
            };
            match (i, c < 0) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    /// Parses sums like `t^11 + 2t^9 - 3t^-1 + 4`; `^{..}` braces are accepted.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a Laurent polynomial: {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace() && *c != '{' && *c != '}').collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev.is_some() && prev != Some('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
            prev = Some(ch);
        }
        terms.push(cur);
        let mut p = LaurentPoly::zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, term.strip_prefix('+').unwrap_or(&term)),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coeff, exp) = match body.find('t') {
                None => (body.parse::<i64>().map_err(|_| bad())?, 0),
                Some(pos) => {
                    let c = match &body[..pos] {
                        "" => 1,
                        cs => cs.trim_end_matches('*').parse::<i64>().map_err(|_| bad())?,
                    };
                    let e = match &body[pos + 1..] {
                        "" => 1,
                        rest => rest.strip_prefix('^').ok_or_else(bad)?.parse::<i32>().map_err(|_| bad())?,
                    };
                    (c, e)
                }
            };
            p.add_term(exp, sign * coeff);
        }
        Ok(p)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly(self.0.iter().map(|(&e, &c)| (e, -c)).collect())
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, -c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn display_and_latex() {
        let f = LaurentPoly::from_terms([(5, 1), (7, 2), (9, 2), (11, 1)]);
        assert_eq!(f.to_string(), "t^11 + 2t^9 + 2t^7 + t^5");
        assert_eq!(f.to_latex(), "t^{5}+2t^{7}+2t^{9}+t^{11}");
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"5":1,"7":2,"9":2,"11":1}"#);
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("t - t^-1").to_string(), "t - t^-1");
        assert_eq!(p("-2t^-3 + 1").to_latex(), "-2t^{-3}+1");
    }

    #[test]
    fn bar_examples() {
        assert_eq!(bar_involution(&LaurentPoly::one()), LaurentPoly::one());
        assert_eq!(bar_involution(&p("t^2 + 3t^-1")), p("t^-2 + 3t"));
        assert!(p("t + t^-1").is_bar_invariant());
    }

    #[test]
    fn bar_split_examples() {
        assert_eq!(bar_split(&p("t + t^-1")).unwrap(), (LaurentPoly::zero(), p("t + t^-1")));
        assert_eq!(bar_split(&p("t^2 + 1")).unwrap(), (p("t^2"), LaurentPoly::one()));
        assert_eq!(bar_split(&p("2t^3 + t + t^-1")).unwrap(), (p("2t^3"), p("t + t^-1")));
        assert!(matches!(bar_split(&p("-t^2")), Err(Error::PositivityViolation(_))));
        assert!(matches!(bar_split(&p("t^-1")), Err(Error::PositivityViolation(_))));
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "t^", "x", "2t^a", "+"] {
            assert!(s.parse::<LaurentPoly>().is_err(), "{s}");
        }
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i32..7, -4i64..5), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn display_round_trips(f in arb_poly()) {
            prop_assert_eq!(f.to_string().parse::<LaurentPoly>().unwrap(), f.clone());
            prop_assert_eq!(f.to_latex().parse::<LaurentPoly>().unwrap(), f.clone());
            let json = serde_json::to_string(&f).unwrap();
            prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&json).unwrap(), f);
        }

        #[test]
        fn bar_split_reassembles(f in arb_poly()) {
            if let Ok((d, l)) = bar_split(&f) {
                prop_assert_eq!(&d + &l, f);
                prop_assert!(l.is_bar_invariant());
                prop_assert!(d.in_t_nat_t());
            }
        }

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }
    }
}
