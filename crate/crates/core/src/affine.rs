//! Affine forms `c + Σ a_p·p` over named formal parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, qi, Q};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineForm {
    // Field order matters for the derived `Ord`: atoms sort by parameter
    // part first, then by constant.
    coeffs: BTreeMap<String, Q>,
    constant: Q,
}

impl AffineForm {
    pub fn constant(c: Q) -> Self {
        AffineForm {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(qi(c))
    }

    pub fn zero() -> Self {
        Self::constant(Q::zero())
    }

    /// The form `1·param`.
    pub fn param(name: &str) -> Self {
        Self::linear(name, Q::one(), Q::zero())
    }

    /// The form `a·param + b`.
    pub fn linear(name: &str, a: Q, b: Q) -> Self {
        let mut coeffs = BTreeMap::new();
        if !a.is_zero() {
            coeffs.insert(name.to_string(), a);
        }
        AffineForm {
            coeffs,
            constant: b,
        }
    }

    pub fn from_parts(constant: Q, coeffs: impl IntoIterator<Item = (String, Q)>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, a)| !a.is_zero()).collect();
        AffineForm { coeffs, constant }
    }

    pub fn constant_term(&self) -> &Q {
        &self.constant
    }

    pub fn coeffs(&self) -> &BTreeMap<String, Q> {
        &self.coeffs
    }

    pub fn coeff(&self, param: &str) -> Q {
        self.coeffs.get(param).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn as_constant(&self) -> Option<&Q> {
        self.is_constant().then_some(&self.constant)
    }

    pub fn is_zero(&self) -> bool {
        self.is_constant() && self.constant.is_zero()
    }

    /// First parameter (in name order) with a nonzero coefficient.
    pub fn leading(&self) -> Option<(&String, &Q)> {
        self.coeffs.iter().next()
    }

    pub fn scale(&self, k: &Q) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        AffineForm {
            coeffs: self
                .coeffs
                .iter()
                .map(|(p, a)| (p.clone(), a * k))
                .collect(),
            constant: &self.constant * k,
        }
    }

    pub fn add_const(&self, c: &Q) -> Self {
        let mut out = self.clone();
        out.constant += c;
        out
    }

    /// Substitutes `param := value`.
    pub fn substitute(&self, param: &str, value: &AffineForm) -> Self {
        match self.coeffs.get(param) {
            None => self.clone(),
            Some(a) => {
                let mut rest = self.clone();
                rest.coeffs.remove(param);
                &rest + &value.scale(a)
            }
        }
    }

    pub fn eval(&self, param: &str, value: &Q) -> Self {
        self.substitute(param, &AffineForm::constant(value.clone()))
    }

    /// Evaluates with every parameter assigned; `None` if one is missing.
    pub fn eval_all(&self, values: &BTreeMap<String, Q>) -> Option<Q> {
        let mut acc = self.constant.clone();
        for (p, a) in &self.coeffs {
            acc += a * values.get(p)?;
        }
        Some(acc)
    }

    /// `1 - self`, the functional-equation partner of a zeta argument.
    pub fn reflect(&self) -> Self {
        (-self).add_const(&Q::one())
    }

    pub fn params(&self) -> impl Iterator<Item = &String> {
        self.coeffs.keys()
    }

    /// Parses the rendered form: `6s+2`, `-s+1/2`, `(1/2)s`, `2*s1-u2+3`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not an affine form: {text:?}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms: Vec<String> = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        for ch in compact.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 && !cur.is_empty() => {
                    terms.push(std::mem::take(&mut cur));
                }
                _ => {}
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut out = AffineForm::zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-Q::one(), rest),
                None => (Q::one(), term.strip_prefix('+').unwrap_or(&term)),
            };
            let split = body
                .char_indices()
                .find(|(_, c)| c.is_ascii_alphabetic() || *c == '_')
                .map(|(i, _)| i);
            match split {
                None => out = out.add_const(&(sign * parse_q(body).map_err(|_| bad())?)),
                Some(i) => {
                    let (coeff, name) = body.split_at(i);
                    if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                        return Err(bad());
                    }
                    let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
                    let coeff = coeff
                        .strip_prefix('(')
                        .and_then(|c| c.strip_suffix(')'))
                        .unwrap_or(coeff);
                    let a = if coeff.is_empty() {
                        Q::one()
                    } else {
                        parse_q(coeff).map_err(|_| bad())?
                    };
                    out = &out + &AffineForm::linear(name, sign * a, Q::zero());
                }
            }
        }
        Ok(out)
    }
}

impl Add for &AffineForm {
    type Output = AffineForm;
    fn add(self, rhs: &AffineForm) -> AffineForm {
        let mut coeffs = self.coeffs.clone();
        for (p, a) in &rhs.coeffs {
            let e = coeffs.entry(p.clone()).or_insert_with(Q::zero);
            *e += a;
            if e.is_zero() {
                coeffs.remove(p);
            }
        }
        AffineForm {
            coeffs,
            constant: &self.constant + &rhs.constant,
        }
    }
}

impl Add for AffineForm {
    type Output = AffineForm;
    fn add(self, rhs: AffineForm) -> AffineForm {
        &self + &rhs
    }
}

impl Sub for &AffineForm {
    type Output = AffineForm;
    fn sub(self, rhs: &AffineForm) -> AffineForm {
        self + &(-rhs)
    }
}

impl Sub for AffineForm {
    type Output = AffineForm;
    fn sub(self, rhs: AffineForm) -> AffineForm {
        &self - &rhs
    }
}

impl Neg for &AffineForm {
    type Output = AffineForm;
    fn neg(self) -> AffineForm {
        self.scale(&-Q::one())
    }
}

impl Neg for AffineForm {
    type Output = AffineForm;
    fn neg(self) -> AffineForm {
        -&self
    }
}

impl Mul<&Q> for &AffineForm {
    type Output = AffineForm;
    fn mul(self, k: &Q) -> AffineForm {
        self.scale(k)
    }
}

fn fmt_coeff(a: &Q, name: &str, first: bool) -> String {
    let sign = if a.is_negative() {
        "-"
    } else if first {
        ""
    } else {
        "+"
    };
    let mag = a.abs();
    if mag.is_one() {
        format!("{sign}{name}")
    } else if mag.is_integer() {
        format!("{sign}{}{name}", mag.numer())
    } else {
        format!("{sign}({}){name}", fmt_q(&mag))
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (p, a) in &self.coeffs {
            out.push_str(&fmt_coeff(a, p, out.is_empty()));
        }
        if out.is_empty() {
            out = fmt_q(&self.constant);
        } else if !self.constant.is_zero() {
            if self.constant.is_negative() {
                out.push('-');
            } else {
                out.push('+');
            }
            out.push_str(&fmt_q(&self.constant.abs()));
        }
        f.write_str(&out)
    }
}

/// Wire form: `{const: "p/q", coeffs: {name: "p/q"}}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AffineJson {
    #[serde(rename = "const")]
    pub constant: String,
    pub coeffs: BTreeMap<String, String>,
}

impl From<&AffineForm> for AffineJson {
    fn from(a: &AffineForm) -> Self {
        AffineJson {
            constant: fmt_q(&a.constant),
            coeffs: a
                .coeffs
                .iter()
                .map(|(p, c)| (p.clone(), fmt_q(c)))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn renders_like_the_tables() {
        let s = AffineForm::param("s");
        assert_eq!(s.scale(&qi(6)).add_const(&qi(2)).to_string(), "6s+2");
        assert_eq!(s.scale(&qi(6)).add_const(&qi(-1)).to_string(), "6s-1");
        assert_eq!((-&s).add_const(&q(1, 2)).to_string(), "-s+1/2");
        assert_eq!(AffineForm::int(-3).to_string(), "-3");
        assert_eq!(s.scale(&q(1, 2)).to_string(), "(1/2)s");
    }

    #[test]
    fn substitution_and_reflection() {
        let x = AffineForm::linear("s", qi(6), qi(2));
        assert_eq!(x.eval("s", &q(1, 6)), AffineForm::int(3));
        assert_eq!(x.reflect(), AffineForm::linear("s", qi(-6), qi(-1)));
        let y = x.substitute("s", &AffineForm::linear("t", q(1, 6), q(1, 6)));
        assert_eq!(y, AffineForm::linear("t", qi(1), qi(3)));
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn parse_round_trips() {
        for text in ["6s+2", "-s+1/2", "(1/2)s", "-3", "2s1-u2+3", "s"] {
            assert_eq!(AffineForm::parse(text).unwrap().to_string(), text);
        }
        assert_eq!(
            AffineForm::parse("2*s + 3").unwrap(),
            AffineForm::linear("s", qi(2), qi(3))
        );
        assert!(AffineForm::parse("2s+").is_err());
        assert!(AffineForm::parse("0.5s").is_err());
    }
}
