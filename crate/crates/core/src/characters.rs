//! Unramified torus characters affine in formal parameters.
//!
//! A [`TorusCharacter`] is `λ = Σ λ_j ω_j` in the relative fundamental-weight
//! coordinates of [`RootSystem`]; coordinate `j` is the exponent of
//! `|t_j|_{F_j}`. The Weyl action `w_i(λ) = λ − ⟨λ, α̌_i⟩·|α_i|` uses the
//! simple root characters from the root datum.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::affine::{AffineForm, AffineJson};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, qi, Q};
use crate::root_datum::{Preset, Root, RootSystem};
use crate::weyl::WeylWord;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusCharacter {
    coords: Vec<AffineForm>,
}

impl TorusCharacter {
    pub fn new(coords: Vec<AffineForm>) -> Self {
        TorusCharacter { coords }
    }

    pub fn constant(values: &[Q]) -> Self {
        TorusCharacter {
            coords: values.iter().cloned().map(AffineForm::constant).collect(),
        }
    }

    pub fn ints(values: &[i64]) -> Self {
        Self::constant(&values.iter().map(|&v| qi(v)).collect::<Vec<_>>())
    }

    /// `(p1, ..., pr)` with each coordinate its own parameter.
    pub fn generic(rank: usize, prefix: &str) -> Self {
        TorusCharacter {
            coords: (1..=rank)
                .map(|j| AffineForm::param(&format!("{prefix}{j}")))
                .collect(),
        }
    }

    pub fn coords(&self) -> &[AffineForm] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn zero(rank: usize) -> Self {
        TorusCharacter {
            coords: vec![AffineForm::zero(); rank],
        }
    }

    pub fn add(&self, other: &TorusCharacter) -> Self {
        TorusCharacter {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &TorusCharacter) -> Self {
        TorusCharacter {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &Q) -> Self {
        TorusCharacter {
            coords: self.coords.iter().map(|a| a.scale(k)).collect(),
        }
    }

    /// Multiplies by an affine form; only valid when `self` is constant.
    pub fn scale_affine(&self, form: &AffineForm) -> Result<Self> {
        let mut coords = Vec::with_capacity(self.rank());
        for c in &self.coords {
            let k = c.as_constant().ok_or_else(|| {
                Error::InvalidInput("cannot multiply two non-constant characters".into())
            })?;
            coords.push(form.scale(k));
        }
        Ok(TorusCharacter { coords })
    }

    pub fn eval(&self, param: &str, value: &Q) -> Self {
        TorusCharacter {
            coords: self.coords.iter().map(|c| c.eval(param, value)).collect(),
        }
    }

    pub fn substitute(&self, param: &str, value: &AffineForm) -> Self {
        TorusCharacter {
            coords: self
                .coords
                .iter()
                .map(|c| c.substitute(param, value))
                .collect(),
        }
    }

    /// Coordinate-wise `d/dparam`.
    pub fn derivative(&self, param: &str) -> Vec<Q> {
        self.coords.iter().map(|c| c.coeff(param)).collect()
    }

    pub fn as_constants(&self) -> Option<Vec<Q>> {
        self.coords
            .iter()
            .map(|c| c.as_constant().cloned())
            .collect()
    }

    pub fn is_constant(&self) -> bool {
        self.coords.iter().all(AffineForm::is_constant)
    }

    /// `|t_1|^{a}|t_2|^{b}|t_3|_K^{c}`-style rendering.
    pub fn render(&self, sys: &RootSystem) -> String {
        let mut out = String::new();
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out.push_str(&t_symbol(sys, j));
            if c.as_constant() != Some(&Q::one()) {
                out.push_str(&format!("^{{{c}}}"));
            }
        }
        if out.is_empty() {
            "1".into()
        } else {
            out
        }
    }

    /// Fraction rendering for constant characters, e.g. `|t2|^3/(|t1|^3|t3|_K)`.
    pub fn render_fraction(&self, sys: &RootSystem) -> String {
        let Some(vals) = self.as_constants() else {
            return self.render(sys);
        };
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (j, v) in vals.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let mag = v.abs();
            let mut term = t_symbol(sys, j);
            if !mag.is_one() {
                if mag.is_integer() {
                    term.push_str(&format!("^{}", fmt_q(&mag)));
                } else {
                    term.push_str(&format!("^{{{}}}", fmt_q(&mag)));
                }
            }
            if v.is_negative() {
                den.push(term);
            } else {
                num.push(term);
            }
        }
        let num = if num.is_empty() {
            "1".to_string()
        } else {
            num.concat()
        };
        match den.len() {
            0 => num,
            1 => format!("{num}/{}", den[0]),
            _ => format!("{num}/({})", den.concat()),
        }
    }

    pub fn to_json(&self) -> Vec<AffineJson> {
        self.coords.iter().map(AffineJson::from).collect()
    }
}

fn t_symbol(sys: &RootSystem, j: usize) -> String {
    let label = sys.simple_label(j);
    if label.is_base() {
        format!("|t{}|", j + 1)
    } else {
        format!("|t{}|_{}", j + 1, label.symbol)
    }
}

impl fmt::Display for TorusCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn check_rank(sys: &RootSystem, lambda: &TorusCharacter) -> Result<()> {
    if lambda.rank() != sys.rank() {
        return Err(Error::InvalidInput(format!(
            "character of rank {} on a system of rank {}",
            lambda.rank(),
            sys.rank()
        )));
    }
    Ok(())
}

pub fn pairing(sys: &RootSystem, lambda: &TorusCharacter, root: &Root) -> Result<AffineForm> {
    check_rank(sys, lambda)?;
    sys.pair(&lambda.coords, root)
}

pub fn simple_reflection(sys: &RootSystem, i: usize, lambda: &TorusCharacter) -> TorusCharacter {
    let col = sys.simple_character(i);
    let li = lambda.coords[i].clone();
    TorusCharacter {
        coords: lambda
            .coords
            .iter()
            .zip(&col)
            .map(|(c, k)| c - &li.scale(k))
            .collect(),
    }
}

/// `w·λ`, the letters of `w` applied right to left.
pub fn weyl_act(sys: &RootSystem, w: &WeylWord, lambda: &TorusCharacter) -> Result<TorusCharacter> {
    w.validate(sys)?;
    check_rank(sys, lambda)?;
    Ok(w.letters()
        .iter()
        .rev()
        .fold(lambda.clone(), |acc, &i| simple_reflection(sys, i, &acc)))
}

/// `w⁻¹·λ`.
pub fn weyl_act_inverse(
    sys: &RootSystem,
    w: &WeylWord,
    lambda: &TorusCharacter,
) -> Result<TorusCharacter> {
    weyl_act(sys, &w.inverse(), lambda)
}

fn check_levi(sys: &RootSystem, levi: &[usize]) -> Result<()> {
    match levi.iter().find(|&&i| i >= sys.rank()) {
        Some(i) => Err(Error::InvalidInput(format!(
            "Levi index {} out of range",
            i + 1
        ))),
        None => Ok(()),
    }
}

fn in_span(root: &Root, idx: &[usize]) -> bool {
    root.coords()
        .iter()
        .enumerate()
        .all(|(k, &c)| c == 0 || idx.contains(&k))
}

/// Modular character of the parabolic of the Levi spanned by `ambient`
/// whose own Levi is spanned by `levi`: the sum of `|α|_{F_α}` over roots of
/// the ambient Levi not in the smaller one.
pub fn relative_modular_character(
    sys: &RootSystem,
    ambient: &[usize],
    levi: &[usize],
) -> Result<TorusCharacter> {
    check_levi(sys, ambient)?;
    check_levi(sys, levi)?;
    let mut acc = vec![Q::zero(); sys.rank()];
    for root in sys.positive_roots() {
        if in_span(root, ambient) && !in_span(root, levi) {
            for (a, c) in acc.iter_mut().zip(sys.root_character(root)?) {
                *a += c;
            }
        }
    }
    Ok(TorusCharacter::constant(&acc))
}

pub fn modular_character(sys: &RootSystem, levi: &[usize]) -> Result<TorusCharacter> {
    let all: Vec<usize> = (0..sys.rank()).collect();
    relative_modular_character(sys, &all, levi)
}

/// Standard maximal parabolics of the D4 forms: `P` (Heisenberg) drops the
/// central node 2, `Q` drops node 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Parabolic {
    Borel,
    P,
    Q,
}

impl Parabolic {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "borel" | "B" | "Borel" => Ok(Parabolic::Borel),
            "P" => Ok(Parabolic::P),
            "Q" => Ok(Parabolic::Q),
            other => Err(Error::Parse(format!("unknown parabolic {other:?}"))),
        }
    }

    pub fn dropped_node(self) -> Option<usize> {
        match self {
            Parabolic::Borel => None,
            Parabolic::P => Some(1),
            Parabolic::Q => Some(0),
        }
    }

    pub fn levi(self, sys: &RootSystem) -> Result<Vec<usize>> {
        match self.dropped_node() {
            None => Ok(Vec::new()),
            Some(k) if k < sys.rank() => Ok((0..sys.rank()).filter(|&i| i != k).collect()),
            Some(_) => Err(Error::UnsupportedGroup(format!(
                "parabolic {self:?} needs rank at least 2, {} has rank {}",
                sys.name(),
                sys.rank()
            ))),
        }
    }
}

impl fmt::Display for Parabolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parabolic::Borel => "borel",
            Parabolic::P => "P",
            Parabolic::Q => "Q",
        })
    }
}

/// `δ_P^{s+1/2} δ_B^{-1/2}` for the standard parabolic with this Levi.
pub fn degenerate_line(sys: &RootSystem, levi: &[usize], param: &str) -> Result<TorusCharacter> {
    let delta_p = modular_character(sys, levi)?;
    let delta_b = modular_character(sys, &[])?;
    let s_plus_half = AffineForm::linear(param, Q::one(), q(1, 2));
    Ok(delta_p
        .scale_affine(&s_plus_half)?
        .sub(&delta_b.scale(&q(1, 2))))
}

/// `δ_B^{1/2} δ_P^{s-1/2}`, the contragredient-side line.
pub fn dual_line(sys: &RootSystem, levi: &[usize], param: &str) -> Result<TorusCharacter> {
    let delta_p = modular_character(sys, levi)?;
    let delta_b = modular_character(sys, &[])?;
    let s_minus_half = AffineForm::linear(param, Q::one(), q(-1, 2));
    Ok(delta_b
        .scale(&q(1, 2))
        .add(&delta_p.scale_affine(&s_minus_half)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LineName {
    ChiQ,
    ChiP,
    MuP,
    MuQ,
    Kappa,
}

impl LineName {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "chiQ" => Ok(LineName::ChiQ),
            "chiP" => Ok(LineName::ChiP),
            "muP" => Ok(LineName::MuP),
            "muQ" => Ok(LineName::MuQ),
            "kappa" => Ok(LineName::Kappa),
            other => Err(Error::Parse(format!("unknown line {other:?}"))),
        }
    }

    pub fn parabolic(self) -> Parabolic {
        match self {
            LineName::ChiP | LineName::MuP => Parabolic::P,
            LineName::ChiQ | LineName::MuQ | LineName::Kappa => Parabolic::Q,
        }
    }

    pub fn build(self, sys: &RootSystem, param: &str) -> Result<TorusCharacter> {
        if !sys.preset_kind().is_some_and(Preset::is_d4_form) {
            return Err(Error::UnsupportedGroup(format!(
                "named lines are defined for the D4 forms, not {}",
                sys.name()
            )));
        }
        let levi = self.parabolic().levi(sys)?;
        match self {
            LineName::ChiQ | LineName::ChiP => degenerate_line(sys, &levi, param),
            LineName::MuQ | LineName::MuP => dual_line(sys, &levi, param),
            LineName::Kappa => {
                let mu_q = dual_line(sys, &levi, param)?;
                Ok(simple_reflection(sys, 0, &mu_q))
            }
        }
    }
}

impl fmt::Display for LineName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LineName::ChiQ => "chiQ",
            LineName::ChiP => "chiP",
            LineName::MuP => "muP",
            LineName::MuQ => "muQ",
            LineName::Kappa => "kappa",
        })
    }
}

pub fn line_chi_q(sys: &RootSystem) -> Result<TorusCharacter> {
    LineName::ChiQ.build(sys, "s")
}

pub fn line_chi_p(sys: &RootSystem) -> Result<TorusCharacter> {
    LineName::ChiP.build(sys, "s")
}

pub fn line_mu_p(sys: &RootSystem) -> Result<TorusCharacter> {
    LineName::MuP.build(sys, "s")
}

pub fn line_mu_q(sys: &RootSystem) -> Result<TorusCharacter> {
    LineName::MuQ.build(sys, "s")
}

pub fn line_kappa(sys: &RootSystem) -> Result<TorusCharacter> {
    LineName::Kappa.build(sys, "s")
}

#[derive(Clone, Debug)]
pub struct IotaReport {
    /// `ι_{P,Q}(s1, s2)`.
    pub iota_pq: TorusCharacter,
    /// `ι_{Q,P}(u1, u2)`.
    pub iota_qp: TorusCharacter,
    /// `ι_{Q,P}((5s2−s1)/4, (s1+5s2)/6)`, equal to `iota_pq` coordinatewise.
    pub iota_qp_substituted: TorusCharacter,
    /// `ι_{P,Q}(−1/2, 3/10)`.
    pub special_pq: TorusCharacter,
    /// `ι_{Q,P}(1/2, 1/6)`.
    pub special_qp: TorusCharacter,
    /// `w_1·ι_{P,Q}(1/2, 3/10)`.
    pub reflected: TorusCharacter,
}

impl IotaReport {
    pub fn holds(&self) -> bool {
        self.iota_pq == self.iota_qp_substituted
            && self.special_pq == self.special_qp
            && self.reflected == self.special_pq
    }
}

fn first_mismatch(lhs: &TorusCharacter, rhs: &TorusCharacter) -> Result<()> {
    for (k, (a, b)) in lhs.coords.iter().zip(&rhs.coords).enumerate() {
        if a != b {
            return Err(Error::IotaMismatch {
                coord: k + 1,
                lhs: a.to_string(),
                rhs: b.to_string(),
            });
        }
    }
    Ok(())
}

/// Builds `ι_{P,Q}(s1,s2) = (δ^M_{M∩R})^{s1} δ_P^{s2}` and
/// `ι_{Q,P}(u1,u2) = (δ^L_{L∩R})^{u1} δ_Q^{u2}` and checks the change of
/// variables between them as an identity of affine characters.
pub fn iota_check(sys: &RootSystem) -> Result<IotaReport> {
    if !matches!(sys.preset_kind(), Some(Preset::QuasiD4 | Preset::SplitD4)) {
        return Err(Error::UnsupportedGroup(format!(
            "the pair (P, Q) is only compared on split and quasi-split D4, not {}",
            sys.name()
        )));
    }
    let m = Parabolic::P.levi(sys)?;
    let l = Parabolic::Q.levi(sys)?;
    let m_cap_l: Vec<usize> = m.iter().copied().filter(|i| l.contains(i)).collect();
    let delta_m = relative_modular_character(sys, &m, &m_cap_l)?;
    let delta_l = relative_modular_character(sys, &l, &m_cap_l)?;
    let delta_p = modular_character(sys, &m)?;
    let delta_q = modular_character(sys, &l)?;

    let plane = |a: &TorusCharacter, b: &TorusCharacter, x: &AffineForm, y: &AffineForm| {
        Ok::<_, Error>(a.scale_affine(x)?.add(&b.scale_affine(y)?))
    };
    let s1 = AffineForm::param("s1");
    let s2 = AffineForm::param("s2");
    let iota_pq = plane(&delta_m, &delta_p, &s1, &s2)?;
    let iota_qp = plane(
        &delta_l,
        &delta_q,
        &AffineForm::param("u1"),
        &AffineForm::param("u2"),
    )?;
    let u1 = (&s2.scale(&qi(5)) - &s1).scale(&q(1, 4));
    let u2 = (&s1 + &s2.scale(&qi(5))).scale(&q(1, 6));
    let iota_qp_substituted = iota_qp.substitute("u1", &u1).substitute("u2", &u2);
    first_mismatch(&iota_pq, &iota_qp_substituted)?;

    let at = |c: &TorusCharacter, a: &str, x: Q, b: &str, y: Q| c.eval(a, &x).eval(b, &y);
    let special_pq = at(&iota_pq, "s1", q(-1, 2), "s2", q(3, 10));
    let special_qp = at(&iota_qp, "u1", q(1, 2), "u2", q(1, 6));
    first_mismatch(&special_pq, &special_qp)?;
    let reflected = simple_reflection(sys, 0, &at(&iota_pq, "s1", q(1, 2), "s2", q(3, 10)));
    first_mismatch(&reflected, &special_pq)?;
    Ok(IotaReport {
        iota_pq,
        iota_qp,
        iota_qp_substituted,
        special_pq,
        special_qp,
        reflected,
    })
}
