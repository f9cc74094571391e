//! Satake-parameter bookkeeping for the standard 7-dimensional
//! representation of the dual group of G2.
//!
//! Weights are handled as cocharacters of the torus of G2 (the dual group
//! swaps roots and coroots), written in the simple-coroot basis. A torus
//! parameter `λ` in fundamental-weight coordinates turns the weight `μ` into
//! the shifted factor `L(s + ⟨λ, μ⟩, ·)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::characters::modular_character;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, qi, Q};
use crate::root_datum::{LengthClass, Preset, Root, RootSystem};
use crate::weyl::{self, WeylWord};

fn g2() -> RootSystem {
    RootSystem::preset(Preset::G2)
}

/// Weights of the standard representation in the simple-root basis of G2:
/// zero and the six short roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSet {
    pub weights: Vec<Vec<i64>>,
}

impl WeightSet {
    pub fn standard() -> Self {
        let sys = g2();
        let mut weights = vec![vec![0, 0]];
        for info in sys.root_infos() {
            if info.length == LengthClass::Short {
                weights.push(info.root.coords().to_vec());
                weights.push(info.root.negate().coords().to_vec());
            }
        }
        WeightSet { weights }
    }

    pub fn sum(&self) -> Vec<i64> {
        self.weights
            .iter()
            .fold(vec![0, 0], |acc, w| vec![acc[0] + w[0], acc[1] + w[1]])
    }
}

/// The pair of orthogonal cocharacters realizing the map `r`: the coroot of
/// the highest (long) root and the coroot of the short simple root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPairEmbedding {
    pub long_root: Root,
    pub short_root: Root,
    pub long_cochar: Vec<Q>,
    pub short_cochar: Vec<Q>,
}

impl DualPairEmbedding {
    pub fn standard() -> Self {
        let long = Root::new(vec![3, 2]).expect("3α+2β");
        let short = Root::new(vec![1, 0]).expect("α");
        Self::from_roots(&g2(), long, short).expect("3α+2β and α are orthogonal")
    }

    pub fn from_roots(sys: &RootSystem, long_root: Root, short_root: Root) -> Result<Self> {
        let long_cochar = sys.coroot(&long_root)?;
        let short_cochar = sys.coroot(&short_root)?;
        let pair = DualPairEmbedding {
            long_root,
            short_root,
            long_cochar,
            short_cochar,
        };
        if !pair.orthogonal(sys)? {
            return Err(Error::InvalidInput(format!(
                "{} and {} are not orthogonal",
                pair.long_root, pair.short_root
            )));
        }
        Ok(pair)
    }

    pub fn orthogonal(&self, sys: &RootSystem) -> Result<bool> {
        let a = sys.pair_q(&sys.root_character(&self.long_root)?, &self.short_root)?;
        let b = sys.pair_q(&sys.root_character(&self.short_root)?, &self.long_root)?;
        Ok(a.is_zero() && b.is_zero())
    }

    /// `w·(long, short)`.
    pub fn conjugate(&self, sys: &RootSystem, w: &WeylWord) -> Result<Self> {
        Self::from_roots(
            sys,
            weyl::act_on_root(sys, w, &self.long_root)?,
            weyl::act_on_root(sys, w, &self.short_root)?,
        )
    }
}

fn weight_pairing(sys: &RootSystem, weight: &[i64], cochar: &[Q]) -> Q {
    // Weight as a character in fundamental-weight coordinates: A·n.
    (0..sys.rank())
        .map(|k| {
            let c: i64 = (0..sys.rank())
                .map(|i| sys.cartan()[k][i] * weight[i])
                .sum();
            qi(c) * &cochar[k]
        })
        .sum()
}

/// Bi-weights `(⟨μ, long⟩, ⟨μ, short⟩)` for a given embedding, sorted.
pub fn restrict_via(pair: &DualPairEmbedding) -> Vec<(i64, i64)> {
    let sys = g2();
    let mut out: Vec<(i64, i64)> = WeightSet::standard()
        .weights
        .iter()
        .map(|w| {
            let m = weight_pairing(&sys, w, &pair.long_cochar);
            let n = weight_pairing(&sys, w, &pair.short_cochar);
            (
                m.to_integer().try_into().unwrap(),
                n.to_integer().try_into().unwrap(),
            )
        })
        .collect();
    out.sort();
    out
}

pub fn restrict_via_r() -> Vec<(i64, i64)> {
    restrict_via(&DualPairEmbedding::standard())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LLabel {
    Zeta,
    Chi,
    Tau,
}

impl LLabel {
    pub fn degree(self) -> u32 {
        match self {
            LLabel::Zeta | LLabel::Chi => 1,
            LLabel::Tau => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LFactor {
    pub shift: Q,
    pub label: LLabel,
    pub multiplicity: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    VTau,
    VChi,
}

impl Source {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "Vtau" | "V_tau" => Ok(Source::VTau),
            "Vchi" | "V_chi" => Ok(Source::VChi),
            other => Err(Error::Parse(format!("unknown source {other:?}"))),
        }
    }
}

/// A multiset of shifted factors, kept sorted by shift and then label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LFactorization {
    factors: BTreeMap<(Q, LLabel), u32>,
}

impl LFactorization {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, shift: Q, label: LLabel, multiplicity: u32) {
        if multiplicity > 0 {
            *self.factors.entry((shift, label)).or_insert(0) += multiplicity;
        }
    }

    pub fn from_factors(items: &[(Q, LLabel, u32)]) -> Self {
        let mut out = Self::new();
        for (s, l, m) in items {
            out.push(s.clone(), *l, *m);
        }
        out
    }

    pub fn factors(&self) -> Vec<LFactor> {
        self.factors
            .iter()
            .map(|((shift, label), &multiplicity)| LFactor {
                shift: shift.clone(),
                label: *label,
                multiplicity,
            })
            .collect()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|((_, l), m)| l.degree() * m).sum()
    }

    /// Replaces `L(·, χ)` by `ζ` for trivial `χ`.
    pub fn with_trivial_chi(&self) -> Self {
        let mut out = Self::new();
        for ((s, l), &m) in &self.factors {
            let l = if *l == LLabel::Chi { LLabel::Zeta } else { *l };
            out.push(s.clone(), l, m);
        }
        out
    }

    /// Pole order at `s = point` under the modeled regularity axioms:
    /// `ζ(u)` has its only pole at `u = 1` and is nonzero for `u > 1`;
    /// `L(u, τ)` for cuspidal `τ` and `L(u, χ)` for nontrivial `χ` are
    /// regular and nonzero for `u ≥ 1`.
    pub fn order_at(&self, point: &Q, chi_trivial: bool) -> Result<i64> {
        let f = if chi_trivial {
            self.with_trivial_chi()
        } else {
            self.clone()
        };
        let mut order = 0i64;
        for ((shift, label), &m) in &f.factors {
            let u = point + shift;
            if u < Q::one() {
                return Err(Error::UnmodeledPoint(format!(
                    "{} at argument {}",
                    render_factor(shift, *label, 1),
                    fmt_q(&u)
                )));
            }
            if *label == LLabel::Zeta && u.is_one() {
                order += m as i64;
            }
        }
        Ok(order)
    }

    pub fn order_at_2(&self, chi_trivial: bool) -> Result<i64> {
        self.order_at(&qi(2), chi_trivial)
    }
}

fn render_arg(shift: &Q) -> String {
    if shift.is_zero() {
        "s".into()
    } else if shift.is_negative() {
        format!("s-{}", fmt_q(&-shift))
    } else {
        format!("s+{}", fmt_q(shift))
    }
}

fn render_factor(shift: &Q, label: LLabel, m: u32) -> String {
    let arg = render_arg(shift);
    let base = match label {
        LLabel::Zeta => format!("zeta({arg})"),
        LLabel::Chi => format!("L({arg},chi)"),
        LLabel::Tau => format!("L({arg},tau)"),
    };
    if m == 1 {
        base
    } else {
        format!("{base}^{m}")
    }
}

impl fmt::Display for LFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|((s, l), &m)| render_factor(s, *l, m))
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// From the bi-weights: `(±1, n)` pairs form `L(s + n/2, τ)`, `(0, n)` gives
/// `ζ(s + n/2)` through the Arthur `SL_2`.
pub fn factorization_from_biweights(biweights: &[(i64, i64)]) -> Result<LFactorization> {
    let mut out = LFactorization::new();
    let mut tau: BTreeMap<i64, (u32, u32)> = BTreeMap::new();
    for &(m, n) in biweights {
        match m {
            0 => out.push(q(n, 2), LLabel::Zeta, 1),
            1 => tau.entry(n).or_default().0 += 1,
            -1 => tau.entry(n).or_default().1 += 1,
            _ => {
                return Err(Error::InvalidInput(format!(
                    "bi-weight ({m},{n}) is not in the standard module of GL2"
                )))
            }
        }
    }
    for (n, (plus, minus)) in tau {
        if plus != minus {
            return Err(Error::InvalidInput(format!(
                "unpaired GL2 weights at Arthur weight {n}"
            )));
        }
        out.push(q(n, 2), LLabel::Tau, plus);
    }
    Ok(out)
}

/// Cocharacters `μ` of the 7-dimensional representation: zero and the
/// coroots of the long roots, in the simple-coroot basis.
pub fn dual_weights() -> Vec<Vec<Q>> {
    let sys = g2();
    let mut out = vec![vec![Q::zero(), Q::zero()]];
    for info in sys.root_infos() {
        if info.length == LengthClass::Long {
            let c = sys.coroot(&info.root).expect("positive root");
            out.push(c.iter().map(|x| -x).collect());
            out.push(c);
        }
    }
    out
}

/// Satake parameter of a constituent of `Ind_{P1} π(1,χ) δ_{P1}^{1/5}`,
/// where `P1` has Levi the long simple root: the real part `δ_{P1}^{1/5}`
/// and the direction `η` carrying `χ`.
pub fn vchi_parameter() -> Result<(Vec<Q>, Vec<i64>)> {
    let sys = g2();
    let delta = modular_character(&sys, &[1])?;
    let real: Vec<Q> = delta
        .as_constants()
        .expect("modular characters are constant")
        .iter()
        .map(|x| x * q(1, 5))
        .collect();
    // χ sits on the second diagonal entry of the GL2 Levi, i.e. along ω_β.
    Ok((real, vec![0, 1]))
}

pub fn lfactor_standard(source: Source) -> Result<LFactorization> {
    match source {
        Source::VTau => factorization_from_biweights(&restrict_via_r()),
        Source::VChi => {
            let (real, eta) = vchi_parameter()?;
            let mut out = LFactorization::new();
            for mu in dual_weights() {
                let shift: Q = real.iter().zip(&mu).map(|(a, b)| a * b).sum();
                let twist: Q = eta.iter().zip(&mu).map(|(a, b)| qi(*a) * b).sum();
                let odd = !(twist.to_integer() % 2u8).is_zero();
                let label = if odd { LLabel::Chi } else { LLabel::Zeta };
                out.push(shift, label, 1);
            }
            Ok(out)
        }
    }
}

/// Shifts `j/2 − l` for `l = 0..=j`: the Arthur `Sym^j` expansion.
pub fn arthur_expand(j: u32) -> Vec<Q> {
    (0..=j as i64).map(|l| q(j as i64, 2) - qi(l)).collect()
}

/// Rightmost pole of `∏_l ζ(s + j/2 − l)`, at `s = j/2 + 1`.
pub fn arthur_rightmost_pole(j: u32) -> Q {
    let min_shift = arthur_expand(j).into_iter().min().expect("j+1 shifts");
    Q::one() - min_shift
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_set() {
        let w = WeightSet::standard();
        assert_eq!(w.weights.len(), 7);
        assert_eq!(w.sum(), vec![0, 0]);
        for x in &w.weights {
            assert!(w.weights.contains(&x.iter().map(|c| -c).collect()));
        }
    }

    // Oracle: pair the weights, written in fundamental coordinates by hand,
    // with the coroots (1,2) and (1,0) written by hand.
    #[test]
    fn biweights_by_hand() {
        let fundamental = [(0, 0), (2, -1), (-2, 1), (-1, 1), (1, -1), (1, 0), (-1, 0)];
        let mut want: Vec<(i64, i64)> = fundamental.iter().map(|&(a, b)| (a + 2 * b, a)).collect();
        want.sort();
        assert_eq!(restrict_via_r(), want);
        assert_eq!(
            want,
            vec![(-1, -1), (-1, 1), (0, -2), (0, 0), (0, 2), (1, -1), (1, 1)]
        );
    }

    #[test]
    fn embedding_is_orthogonal() {
        let pair = DualPairEmbedding::standard();
        assert_eq!(pair.long_cochar, vec![qi(1), qi(2)]);
        assert_eq!(pair.short_cochar, vec![qi(1), qi(0)]);
        assert!(pair.orthogonal(&g2()).unwrap());
    }

    #[test]
    fn factorizations() {
        let tau = lfactor_standard(Source::VTau).unwrap();
        assert_eq!(
            tau.to_string(),
            "zeta(s-1)*L(s-1/2,tau)*zeta(s)*L(s+1/2,tau)*zeta(s+1)"
        );
        assert_eq!(tau.degree(), 7);
        let chi = lfactor_standard(Source::VChi).unwrap();
        assert_eq!(
            chi.to_string(),
            "zeta(s-1)*L(s-1,chi)*zeta(s)*L(s,chi)^2*zeta(s+1)*L(s+1,chi)"
        );
        assert_eq!(chi.degree(), 7);
        assert_eq!(tau.order_at_2(false).unwrap(), 1);
        assert_eq!(chi.order_at_2(false).unwrap(), 1);
        assert_eq!(chi.order_at_2(true).unwrap(), 2);
        assert!(matches!(
            tau.order_at(&qi(1), false),
            Err(Error::UnmodeledPoint(_))
        ));
    }

    #[test]
    fn arthur() {
        assert_eq!(arthur_expand(0), vec![qi(0)]);
        assert_eq!(arthur_expand(1), vec![q(1, 2), q(-1, 2)]);
        assert_eq!(arthur_expand(2), vec![qi(1), qi(0), qi(-1)]);
        assert_eq!(arthur_rightmost_pole(2), qi(2));
    }
}
