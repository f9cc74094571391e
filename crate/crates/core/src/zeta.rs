//! Formal products of completed Dedekind zeta functions.
//!
//! A [`ZetaExpr`] is `c · ∏ f^e · ∏ R_L^m · ∏ ξ_L(x)^n` where the `f` are
//! monic affine forms, `R_L` is the residue of `ξ_L` at 1 and the `ξ_L(x)`
//! are atoms with affine arguments. Multiplication merges atoms with the same
//! argument; [`ZetaExpr::canonical`] additionally applies `ξ_L(x) = ξ_L(1−x)`
//! so that two expressions agree as functions iff their canonical forms are
//! identical.
//!
//! Laurent analysis works in one parameter at a time. Near its poles
//! `ξ_L(ε) ≈ −R_L/ε` and `ξ_L(1+ε) ≈ R_L/ε`; the chain rule through
//! `ξ_L(a·p + b)` gives `±R_L/a`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::affine::{AffineForm, AffineJson};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, Q};
use crate::root_datum::FieldLabel;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZetaAtom {
    pub label: FieldLabel,
    pub arg: AffineForm,
    pub exponent: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZetaExpr {
    scalar: Q,
    factors: BTreeMap<AffineForm, i32>,
    residues: BTreeMap<FieldLabel, i32>,
    atoms: BTreeMap<(FieldLabel, AffineForm), i32>,
}

fn bump<K: Ord>(map: &mut BTreeMap<K, i32>, key: K, e: i32) {
    if e == 0 {
        return;
    }
    let slot = map.entry(key);
    match slot {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(e);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += e;
            if *o.get() == 0 {
                o.remove();
            }
        }
    }
}

fn qpow(x: &Q, e: i32) -> Q {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Representative of `{x, 1−x}`: positive leading parameter coefficient,
/// or the larger value for constants.
pub fn canonical_arg(x: &AffineForm) -> AffineForm {
    let y = x.reflect();
    match x.leading() {
        Some((_, a)) if a.is_negative() => y,
        Some(_) => x.clone(),
        None if y.constant_term() > x.constant_term() => y,
        None => x.clone(),
    }
}

impl Default for ZetaExpr {
    fn default() -> Self {
        Self::one()
    }
}

impl ZetaExpr {
    pub fn one() -> Self {
        Self::scalar(Q::one())
    }

    pub fn scalar(c: Q) -> Self {
        ZetaExpr {
            scalar: c,
            factors: BTreeMap::new(),
            residues: BTreeMap::new(),
            atoms: BTreeMap::new(),
        }
    }

    pub fn xi(label: &FieldLabel, arg: AffineForm) -> Self {
        Self::xi_pow(label, arg, 1)
    }

    pub fn xi_pow(label: &FieldLabel, arg: AffineForm, e: i32) -> Self {
        let mut out = Self::one();
        bump(&mut out.atoms, (label.clone(), arg), e);
        out
    }

    pub fn residue(label: &FieldLabel) -> Self {
        Self::residue_pow(label, 1)
    }

    pub fn residue_pow(label: &FieldLabel, e: i32) -> Self {
        let mut out = Self::one();
        bump(&mut out.residues, label.clone(), e);
        out
    }

    /// A polynomial factor `f^e`; fails on the zero form.
    pub fn factor_pow(f: &AffineForm, e: i32) -> Result<Self> {
        let mut out = Self::one();
        out.push_factor(f, e)?;
        Ok(out)
    }

    pub fn factor(f: &AffineForm) -> Result<Self> {
        Self::factor_pow(f, 1)
    }

    fn push_factor(&mut self, f: &AffineForm, e: i32) -> Result<()> {
        if e == 0 {
            return Ok(());
        }
        match f.leading() {
            None => {
                let c = f.constant_term();
                if c.is_zero() {
                    if e < 0 {
                        return Err(Error::ZeroExpression(
                            "division by an identically zero factor".into(),
                        ));
                    }
                    self.scalar = Q::zero();
                } else {
                    self.scalar *= qpow(c, e);
                }
            }
            Some((_, a)) => {
                let a = a.clone();
                self.scalar *= qpow(&a, e);
                bump(&mut self.factors, f.scale(&a.recip()), e);
            }
        }
        Ok(())
    }

    pub fn scalar_part(&self) -> &Q {
        &self.scalar
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scalar.is_one()
            && self.factors.is_empty()
            && self.residues.is_empty()
            && self.atoms.is_empty()
    }

    pub fn atoms(&self) -> Vec<ZetaAtom> {
        self.atoms
            .iter()
            .map(|((label, arg), &exponent)| ZetaAtom {
                label: label.clone(),
                arg: arg.clone(),
                exponent,
            })
            .collect()
    }

    pub fn factors(&self) -> &BTreeMap<AffineForm, i32> {
        &self.factors
    }

    pub fn residues(&self) -> &BTreeMap<FieldLabel, i32> {
        &self.residues
    }

    pub fn residue_exponent(&self, label: &FieldLabel) -> i32 {
        self.residues.get(label).copied().unwrap_or(0)
    }

    /// Total atom exponent counted positively in the numerator.
    pub fn numerator_atom_count(&self) -> i32 {
        self.atoms.values().filter(|&&e| e > 0).sum()
    }

    pub fn mul(&self, other: &ZetaExpr) -> ZetaExpr {
        let mut out = self.clone();
        out.scalar *= &other.scalar;
        for (f, &e) in &other.factors {
            bump(&mut out.factors, f.clone(), e);
        }
        for (l, &e) in &other.residues {
            bump(&mut out.residues, l.clone(), e);
        }
        for (k, &e) in &other.atoms {
            bump(&mut out.atoms, k.clone(), e);
        }
        out
    }

    pub fn pow(&self, e: i32) -> Result<ZetaExpr> {
        if e < 0 && self.is_zero() {
            return Err(Error::ZeroExpression("inverse of zero".into()));
        }
        let mut out = Self::scalar(qpow(&self.scalar, e));
        if e == 0 {
            return Ok(Self::one());
        }
        for (f, &k) in &self.factors {
            bump(&mut out.factors, f.clone(), k * e);
        }
        for (l, &k) in &self.residues {
            bump(&mut out.residues, l.clone(), k * e);
        }
        for (key, &k) in &self.atoms {
            bump(&mut out.atoms, key.clone(), k * e);
        }
        Ok(out)
    }

    pub fn inv(&self) -> Result<ZetaExpr> {
        self.pow(-1)
    }

    pub fn div(&self, other: &ZetaExpr) -> Result<ZetaExpr> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn scale(&self, k: &Q) -> ZetaExpr {
        let mut out = self.clone();
        out.scalar *= k;
        out
    }

    pub fn neg(&self) -> ZetaExpr {
        self.scale(&-Q::one())
    }

    /// Applies the functional equation to every atom and merges.
    pub fn canonical(&self) -> ZetaExpr {
        let mut out = self.clone();
        out.atoms = BTreeMap::new();
        for ((label, arg), &e) in &self.atoms {
            bump(&mut out.atoms, (label.clone(), canonical_arg(arg)), e);
        }
        out
    }

    /// Equality as functions.
    pub fn same_function(&self, other: &ZetaExpr) -> bool {
        self.canonical() == other.canonical()
    }

    /// Splits off the scalar: `self = c · monomial`.
    pub fn split_scalar(&self) -> (Q, ZetaExpr) {
        let mut mono = self.clone();
        mono.scalar = Q::one();
        (self.scalar.clone(), mono)
    }

    /// Rewrites every argument and polynomial factor through `f`.
    pub fn map_args(&self, f: impl Fn(&AffineForm) -> AffineForm) -> Result<ZetaExpr> {
        let mut out = Self::scalar(self.scalar.clone());
        out.residues = self.residues.clone();
        for (g, &e) in &self.factors {
            out.push_factor(&f(g), e)?;
        }
        for ((label, arg), &e) in &self.atoms {
            bump(&mut out.atoms, (label.clone(), f(arg)), e);
        }
        Ok(out)
    }

    pub fn substitute(&self, param: &str, value: &AffineForm) -> Result<ZetaExpr> {
        self.map_args(|a| a.substitute(param, value))
    }

    pub fn params(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .factors
            .keys()
            .chain(self.atoms.keys().map(|(_, a)| a))
            .flat_map(|a| a.params().cloned())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Leading Laurent term in `param` at `point`; other parameters stay
    /// generic. With `assume_no_real_zeros`, constant arguments strictly
    /// between 0 and 1 are treated as regular nonzero values.
    pub fn laurent(
        &self,
        param: &str,
        point: &Q,
        assume_no_real_zeros: bool,
    ) -> Result<LaurentData> {
        if self.is_zero() {
            return Err(Error::ZeroExpression(self.to_string()));
        }
        let mut order: i64 = 0;
        let mut lead = Self::scalar(self.scalar.clone());
        lead.residues = self.residues.clone();
        for (f, &e) in &self.factors {
            let a = f.coeff(param);
            let b = f.eval(param, point);
            if b.is_zero() {
                order += e as i64;
                lead.scalar *= qpow(&a, e);
            } else {
                lead.push_factor(&b, e)?;
            }
        }
        for ((label, arg), &e) in &self.atoms {
            let a = arg.coeff(param);
            let b = arg.eval(param, point);
            let Some(c) = b.as_constant() else {
                bump(&mut lead.atoms, (label.clone(), b), e);
                continue;
            };
            let at_pole = c.is_zero() || c.is_one();
            if at_pole {
                if a.is_zero() {
                    return Err(Error::DegenerateAtom(format!("xi_{label}({arg})")));
                }
                order -= e as i64;
                let sign = if c.is_one() { Q::one() } else { -Q::one() };
                lead.scalar *= qpow(&(sign / &a), e);
                bump(&mut lead.residues, label.clone(), e);
                continue;
            }
            if c.is_positive() && *c < Q::one() && !assume_no_real_zeros {
                return Err(Error::IndeterminateZeroRegion(format!(
                    "xi_{label}({arg}) at {param}={} has argument {}",
                    fmt_q(point),
                    fmt_q(c)
                )));
            }
            bump(&mut lead.atoms, (label.clone(), b), e);
        }
        Ok(LaurentData {
            order,
            leading: lead.canonical(),
        })
    }

    pub fn order_at(&self, param: &str, point: &Q, assume_no_real_zeros: bool) -> Result<i64> {
        Ok(self.laurent(param, point, assume_no_real_zeros)?.order)
    }

    pub fn to_json(&self) -> ZetaJson {
        ZetaJson {
            scalar: fmt_q(&self.scalar),
            factors: self
                .factors
                .iter()
                .map(|(f, &exp)| FactorJson { arg: f.into(), exp })
                .collect(),
            residues: self
                .residues
                .iter()
                .map(|(l, &exp)| ResidueJson {
                    label: l.symbol.clone(),
                    exp,
                })
                .collect(),
            atoms: self
                .atoms
                .iter()
                .map(|((l, a), &exp)| AtomJson {
                    label: l.symbol.clone(),
                    arg: a.into(),
                    exp,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AtomJson {
    pub label: String,
    pub arg: AffineJson,
    pub exp: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorJson {
    pub arg: AffineJson,
    pub exp: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueJson {
    pub label: String,
    pub exp: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaJson {
    pub scalar: String,
    pub factors: Vec<FactorJson>,
    pub residues: Vec<ResidueJson>,
    pub atoms: Vec<AtomJson>,
}

/// `R` for the base field, `R_K`, `R_E`, ... otherwise.
pub fn residue_symbol(label: &FieldLabel) -> String {
    if label.symbol == "F" {
        "R".into()
    } else {
        format!("R_{}", label.symbol)
    }
}

fn powered(base: String, e: i32) -> String {
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

impl fmt::Display for ZetaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scalar.is_zero() {
            return f.write_str("0");
        }
        let mut num: Vec<String> = Vec::new();
        let mut den: Vec<String> = Vec::new();
        let mag = self.scalar.abs();
        if !mag.numer().is_one() {
            num.push(mag.numer().to_string());
        }
        if !mag.denom().is_one() {
            den.push(mag.denom().to_string());
        }
        let mut place = |item: String, e: i32| {
            if e > 0 {
                num.push(powered(item, e));
            } else {
                den.push(powered(item, -e));
            }
        };
        for (l, &e) in &self.residues {
            place(residue_symbol(l), e);
        }
        for (g, &e) in &self.factors {
            place(format!("({g})"), e);
        }
        for ((l, a), &e) in &self.atoms {
            place(format!("xi_{l}({a})"), e);
        }
        let sign = if self.scalar.is_negative() { "-" } else { "" };
        let num = if num.is_empty() {
            "1".to_string()
        } else {
            num.join("*")
        };
        let body = match den.len() {
            0 => num,
            1 => format!("{num}/{}", den[0]),
            _ => format!("{num}/({})", den.join("*")),
        };
        write!(f, "{sign}{body}")
    }
}

/// Order of vanishing (negative for poles) and leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentData {
    pub order: i64,
    pub leading: ZetaExpr,
}

impl LaurentData {
    pub fn mul(&self, other: &LaurentData) -> LaurentData {
        LaurentData {
            order: self.order + other.order,
            leading: self.leading.mul(&other.leading).canonical(),
        }
    }
}

/// A rational linear combination of scalar-free canonical monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinComb {
    terms: BTreeMap<ZetaExpr, Q>,
}

impl LinComb {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, expr: &ZetaExpr) {
        self.add_scaled(expr, &Q::one());
    }

    pub fn add_scaled(&mut self, expr: &ZetaExpr, k: &Q) {
        let (c, mono) = expr.canonical().split_scalar();
        let c = c * k;
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ZetaExpr> + '_ {
        self.terms.iter().map(|(m, c)| m.scale(c))
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().map(|t| t.to_string()).collect();
        f.write_str(&parts.join(" + ").replace("+ -", "- "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn s(a: i64, b: Q) -> AffineForm {
        AffineForm::linear("s", qi(a), b)
    }

    fn xf(arg: AffineForm) -> ZetaExpr {
        ZetaExpr::xi(&FieldLabel::F(), arg)
    }

    fn xk(arg: AffineForm) -> ZetaExpr {
        ZetaExpr::xi(&FieldLabel::K(), arg)
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(xf(s(-6, qi(1))).canonical(), xf(s(6, qi(0))));
        assert_eq!(xk(s(6, qi(1))).canonical(), xk(s(6, qi(1))));
        let prod = xf(s(-1, q(1, 2))).mul(&xf(s(1, q(1, 2))));
        assert_eq!(
            prod.canonical(),
            ZetaExpr::xi_pow(&FieldLabel::F(), s(1, q(1, 2)), 2)
        );
        assert_eq!(xf(AffineForm::int(-1)).canonical(), xf(AffineForm::int(2)));
    }

    #[test]
    fn orders_from_the_tables() {
        let sixth = q(1, 6);
        let e = xf(s(6, qi(0))).div(&xf(s(6, qi(3)))).unwrap();
        assert_eq!(e.order_at("s", &sixth, false).unwrap(), -1);
        let e = ZetaExpr::xi_pow(&FieldLabel::F(), s(6, qi(0)), 2)
            .div(&xf(s(6, qi(3))).mul(&xf(s(6, qi(1)))))
            .unwrap();
        assert_eq!(e.order_at("s", &sixth, false).unwrap(), -2);
        let e = xf(s(6, qi(1)))
            .div(&xf(s(6, qi(3))))
            .unwrap()
            .mul(&xk(s(6, qi(0))).div(&xk(s(6, qi(1)))).unwrap());
        assert_eq!(e.order_at("s", &sixth, false).unwrap(), -1);
    }

    #[test]
    fn leading_coefficients() {
        let sixth = q(1, 6);
        let ratio = xf(s(6, qi(-1))).div(&xf(s(6, qi(0)))).unwrap();
        let l = ratio.laurent("s", &sixth, false).unwrap();
        assert_eq!(l.order, 0);
        assert_eq!(l.leading, ZetaExpr::scalar(qi(-1)));

        let l = xf(s(6, qi(0))).laurent("s", &sixth, false).unwrap();
        assert_eq!(l.order, -1);
        assert_eq!(l.leading, ZetaExpr::residue(&FieldLabel::F()).scale(&sixth));
        assert_eq!(l.leading.to_string(), "R/6");
    }

    #[test]
    fn zero_region_is_refused() {
        let e = xk(s(1, qi(0)));
        assert!(matches!(
            e.laurent("s", &q(1, 2), false),
            Err(Error::IndeterminateZeroRegion(_))
        ));
        let l = e.laurent("s", &q(1, 2), true).unwrap();
        assert_eq!(l.order, 0);
        assert!(matches!(
            xf(AffineForm::int(1)).laurent("s", &qi(0), false),
            Err(Error::DegenerateAtom(_))
        ));
    }

    #[test]
    fn factors_normalize_and_vanish() {
        let f = ZetaExpr::factor(&s(6, qi(-1))).unwrap();
        assert_eq!(f.scalar_part(), &qi(6));
        let l = f.laurent("s", &q(1, 6), false).unwrap();
        assert_eq!((l.order, l.leading), (1, ZetaExpr::scalar(qi(6))));
        assert!(ZetaExpr::factor_pow(&AffineForm::zero(), -1).is_err());
        let g = ZetaExpr::factor(&s(-1, qi(1)))
            .unwrap()
            .mul(&ZetaExpr::factor(&s(1, qi(-1))).unwrap().inv().unwrap());
        assert_eq!(g, ZetaExpr::scalar(qi(-1)));
    }

    #[test]
    fn rendering() {
        let r = ZetaExpr::residue(&FieldLabel::F());
        let e = r
            .mul(&xf(AffineForm::int(3)))
            .mul(&xk(AffineForm::int(2)))
            .div(
                &xf(AffineForm::int(2))
                    .mul(&xf(AffineForm::int(4)))
                    .mul(&xk(AffineForm::int(3)))
                    .scale(&qi(5)),
            )
            .unwrap();
        assert_eq!(
            e.to_string(),
            "R*xi_F(3)*xi_K(2)/(5*xi_F(2)*xi_F(4)*xi_K(3))"
        );
        let e = r.div(&xf(AffineForm::int(2))).unwrap();
        assert_eq!(e.to_string(), "R/xi_F(2)");
        assert_eq!(
            ZetaExpr::residue(&FieldLabel::K()).neg().to_string(),
            "-R_K"
        );
    }

    #[test]
    fn lin_comb_cancels() {
        let a = xf(AffineForm::int(2)).scale(&qi(3));
        let mut c = LinComb::new();
        c.add(&a);
        c.add(&a.neg());
        assert!(c.is_zero());
        c.add(&xf(AffineForm::int(-1)));
        c.add(&xf(AffineForm::int(2)));
        assert_eq!(c.to_string(), "2*xi_F(2)");
    }
}
