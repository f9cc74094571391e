//! Constant terms of degenerate Eisenstein series along the Borel.
//!
//! For a Weyl element `w` the spherical intertwining operator contributes
//!
//! ```text
//! J(w, λ) = ∏_{α>0, w⁻¹α<0} ξ_{F_α}(⟨λ,α̌⟩) / ξ_{F_α}(⟨λ,α̌⟩+1)
//! ```
//!
//! times the exponent `w⁻¹·λ`. Pole orders come from grouping terms by the
//! exponent at the point and expanding each group to first order in the
//! logarithm of the torus variable. The normalized series
//! `E♯ = L(λ)·Σ_w F_w(λ)` is checked for `W`-invariance and entireness.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::affine::AffineForm;
use crate::characters::{
    pairing, simple_reflection, weyl_act_inverse, LineName, Parabolic, TorusCharacter,
};
use crate::error::{Error, Result};
use crate::rational::{q, qi, Q};
use crate::root_datum::{Preset, Root, RootSystem};
use crate::weyl::{self, WeylWord};
use crate::zeta::{LaurentData, LinComb, ZetaExpr};

#[derive(Clone, Debug)]
pub struct GKTerm {
    pub word: WeylWord,
    pub j_factor: ZetaExpr,
    pub exponent: TorusCharacter,
}

#[derive(Clone, Debug)]
pub struct ConstantTerm {
    pub system: RootSystem,
    pub levi: Vec<usize>,
    pub line: TorusCharacter,
    pub param: String,
    pub terms: Vec<GKTerm>,
}

/// The Gindikin–Karpelevich factor `J(w, λ)`, canonicalized.
pub fn j_factor(sys: &RootSystem, w: &WeylWord, lambda: &TorusCharacter) -> Result<ZetaExpr> {
    let mut out = ZetaExpr::one();
    for root in weyl::inversion_set(sys, w)? {
        let x = pairing(sys, lambda, &root)?;
        let label = sys.label_of(&root)?;
        out = out
            .mul(&ZetaExpr::xi(label, x.clone()))
            .mul(&ZetaExpr::xi_pow(label, x.add_const(&Q::one()), -1));
    }
    Ok(out.canonical())
}

pub fn gk_term(sys: &RootSystem, w: &WeylWord, lambda: &TorusCharacter) -> Result<GKTerm> {
    let word = w.reduce(sys)?;
    Ok(GKTerm {
        j_factor: j_factor(sys, &word, lambda)?,
        exponent: weyl_act_inverse(sys, &word, lambda)?,
        word,
    })
}

fn line_param(line: &TorusCharacter) -> Result<String> {
    let mut params: Vec<String> = line
        .coords()
        .iter()
        .flat_map(|c| c.params().cloned())
        .collect();
    params.sort();
    params.dedup();
    match params.len() {
        0 => Ok("s".into()),
        1 => Ok(params.remove(0)),
        _ => Err(Error::InvalidInput(format!(
            "line {line} depends on more than one parameter"
        ))),
    }
}

pub fn constant_term(
    sys: &RootSystem,
    levi: &[usize],
    line: &TorusCharacter,
) -> Result<ConstantTerm> {
    if line.rank() != sys.rank() {
        return Err(Error::InvalidInput(
            "line rank does not match the system".into(),
        ));
    }
    let param = line_param(line)?;
    let terms = weyl::coset_reps(sys, levi)?
        .iter()
        .map(|w| gk_term(sys, w, line))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConstantTerm {
        system: sys.clone(),
        levi: levi.to_vec(),
        line: line.clone(),
        param,
        terms,
    })
}

/// Constant term of the Eisenstein series induced from the degenerate line
/// of a standard parabolic.
pub fn standard_constant_term(sys: &RootSystem, parabolic: Parabolic) -> Result<ConstantTerm> {
    let levi = parabolic.levi(sys)?;
    let line = crate::characters::degenerate_line(sys, &levi, "s")?;
    constant_term(sys, &levi, &line)
}

#[derive(Clone, Debug)]
pub struct TermAtPoint {
    pub word: WeylWord,
    pub laurent: LaurentData,
    pub exponent: TorusCharacter,
}

#[derive(Clone, Debug)]
pub struct ExponentGroup {
    pub exponent: TorusCharacter,
    pub members: Vec<WeylWord>,
    /// Order of vanishing of the group sum (negative for a pole).
    pub order: i64,
    /// Sum of the most singular leading coefficients of the members.
    pub leading: LinComb,
    /// Coefficients of `log|t_j|` at the next order when `leading` cancels.
    pub log_term: Option<Vec<LinComb>>,
}

impl ExponentGroup {
    pub fn pole_order(&self) -> i64 {
        -self.order
    }

    pub fn cancelled(&self) -> bool {
        self.log_term.is_some()
    }
}

#[derive(Clone, Debug)]
pub struct PoleReport {
    pub point: Q,
    pub order: i64,
    pub terms: Vec<TermAtPoint>,
    pub groups: Vec<ExponentGroup>,
    pub surviving_exponents: Vec<TorusCharacter>,
    pub square_integrable: bool,
}

/// Langlands' criterion in the form used here: the exponent lies in the open
/// negative cone spanned by the simple roots.
pub fn in_negative_cone(sys: &RootSystem, exponent: &TorusCharacter) -> bool {
    match exponent.as_constants() {
        Some(v) => sys.to_root_coords(&v).iter().all(Signed::is_negative),
        None => false,
    }
}

pub fn terms_at(
    ct: &ConstantTerm,
    point: &Q,
    assume_no_real_zeros: bool,
) -> Result<Vec<TermAtPoint>> {
    ct.terms
        .iter()
        .map(|t| {
            Ok(TermAtPoint {
                word: t.word.clone(),
                laurent: t.j_factor.laurent(&ct.param, point, assume_no_real_zeros)?,
                exponent: t.exponent.eval(&ct.param, point),
            })
        })
        .collect()
}

pub fn pole_report(ct: &ConstantTerm, point: &Q, assume_no_real_zeros: bool) -> Result<PoleReport> {
    let terms = terms_at(ct, point, assume_no_real_zeros)?;
    let mut order_of_groups: Vec<TorusCharacter> = Vec::new();
    let mut by_exponent: BTreeMap<TorusCharacter, Vec<usize>> = BTreeMap::new();
    for (k, t) in terms.iter().enumerate() {
        by_exponent
            .entry(t.exponent.clone())
            .or_insert_with(|| {
                order_of_groups.push(t.exponent.clone());
                Vec::new()
            })
            .push(k);
    }
    let mut groups = Vec::new();
    for exponent in order_of_groups {
        let idx = &by_exponent[&exponent];
        let k = idx.iter().map(|&m| terms[m].laurent.order).min().unwrap();
        let lowest: Vec<usize> = idx
            .iter()
            .copied()
            .filter(|&m| terms[m].laurent.order == k)
            .collect();
        let mut leading = LinComb::new();
        for &m in &lowest {
            leading.add(&terms[m].laurent.leading);
        }
        let (order, log_term) = if !leading.is_zero() {
            (k, None)
        } else {
            let rank = ct.system.rank();
            let mut logs = vec![LinComb::new(); rank];
            for &m in &lowest {
                let d = ct.terms[m].exponent.derivative(&ct.param);
                for (j, dj) in d.iter().enumerate() {
                    logs[j].add_scaled(&terms[m].laurent.leading, dj);
                }
            }
            if logs.iter().all(LinComb::is_zero) {
                return Err(Error::NeedsHigherLogOrder(format!(
                    "terms {} with exponent {} cancel through first order",
                    lowest
                        .iter()
                        .map(|&m| terms[m].word.to_string())
                        .collect::<Vec<_>>()
                        .join(", "),
                    exponent
                )));
            }
            (k + 1, Some(logs))
        };
        groups.push(ExponentGroup {
            members: idx.iter().map(|&m| terms[m].word.clone()).collect(),
            exponent,
            order,
            leading,
            log_term,
        });
    }
    let order = groups
        .iter()
        .map(ExponentGroup::pole_order)
        .max()
        .unwrap_or(0);
    let surviving_exponents: Vec<TorusCharacter> = groups
        .iter()
        .filter(|g| g.pole_order() == order)
        .map(|g| g.exponent.clone())
        .collect();
    let square_integrable = surviving_exponents
        .iter()
        .all(|e| in_negative_cone(&ct.system, e));
    Ok(PoleReport {
        point: point.clone(),
        order,
        terms,
        groups,
        surviving_exponents,
        square_integrable,
    })
}

/// A pair `(w, w·w_i)` of representatives whose exponents agree at the point.
#[derive(Clone, Debug)]
pub struct KeysShahidiPair {
    pub word: WeylWord,
    pub partner: WeylWord,
    pub simple_index: usize,
    pub leading: ZetaExpr,
    pub partner_leading: ZetaExpr,
}

impl KeysShahidiPair {
    /// Ratio of the partner's leading coefficient to `w`'s.
    pub fn ratio(&self) -> Result<ZetaExpr> {
        Ok(self.partner_leading.div(&self.leading)?.canonical())
    }

    pub fn negated(&self) -> bool {
        self.partner_leading.same_function(&self.leading.neg())
    }
}

pub fn keys_shahidi_pairs(
    ct: &ConstantTerm,
    point: &Q,
    assume_no_real_zeros: bool,
) -> Result<Vec<KeysShahidiPair>> {
    let sys = &ct.system;
    let terms = terms_at(ct, point, assume_no_real_zeros)?;
    let position: BTreeMap<WeylWord, usize> = terms
        .iter()
        .enumerate()
        .map(|(k, t)| (t.word.clone(), k))
        .collect();
    let mut out = Vec::new();
    for t in &terms {
        for i in 0..sys.rank() {
            let partner = t.word.concat(&WeylWord::new(vec![i])).reduce(sys)?;
            if partner.len() != t.word.len() + 1 {
                continue;
            }
            let Some(&m) = position.get(&partner) else {
                continue;
            };
            let u = &terms[m];
            if u.exponent != t.exponent || u.laurent.order != t.laurent.order {
                continue;
            }
            out.push(KeysShahidiPair {
                word: t.word.clone(),
                partner,
                simple_index: i,
                leading: t.laurent.leading.clone(),
                partner_leading: u.laurent.leading.clone(),
            });
        }
    }
    Ok(out)
}

/// Maps a word in the simple reflections of split D4 to the relative Weyl
/// group of a quasi-split form by folding graph-automorphism orbits.
pub fn fold_word(preset: Preset, absolute: &WeylWord) -> Result<WeylWord> {
    // Orbit of each absolute node (0-based) as a relative index.
    let orbit: [usize; 4] = match preset {
        Preset::SplitD4 => return Ok(absolute.clone()),
        Preset::QuasiD4 => [0, 1, 2, 2],
        Preset::TriD4 => [0, 1, 0, 0],
        other => {
            return Err(Error::UnsupportedGroup(format!(
                "{} is not a form of D4",
                other.name()
            )))
        }
    };
    let orbit_size = |o: usize| orbit.iter().filter(|&&x| x == o).count();
    let letters = absolute.letters();
    if let Some(&bad) = letters.iter().find(|&&i| i >= 4) {
        return Err(Error::InvalidInput(format!(
            "letter {} exceeds rank 4",
            bad + 1
        )));
    }
    let mut out = Vec::new();
    let mut k = 0;
    while k < letters.len() {
        let o = orbit[letters[k]];
        let mut run = vec![letters[k]];
        while k + run.len() < letters.len() && orbit[letters[k + run.len()]] == o {
            run.push(letters[k + run.len()]);
        }
        let mut distinct = run.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() != run.len() || run.len() != orbit_size(o) {
            return Err(Error::InvalidInput(format!(
                "{absolute} does not fold to the relative Weyl group"
            )));
        }
        out.push(o);
        k += run.len();
    }
    Ok(WeylWord::new(out))
}

pub fn intertwiner_residue(
    sys: &RootSystem,
    w: &WeylWord,
    line: &TorusCharacter,
    point: &Q,
    assume_no_real_zeros: bool,
) -> Result<LaurentData> {
    let param = line_param(line)?;
    j_factor(sys, &w.reduce(sys)?, line)?.laurent(&param, point, assume_no_real_zeros)
}

/// `∏_{α>0} ξ_{F_α}(⟨λ,α̌⟩+1)·(⟨λ,α̌⟩+1)(⟨λ,α̌⟩−1)`.
pub fn sharp_normalizer(sys: &RootSystem, lambda: &TorusCharacter) -> Result<ZetaExpr> {
    Ok(zeta_normalizer(sys, lambda)?.mul(&polynomial_normalizer(sys, lambda)?))
}

/// The zeta part `∏ ξ_{F_α}(⟨λ,α̌⟩+1)` of the normalizer.
pub fn zeta_normalizer(sys: &RootSystem, lambda: &TorusCharacter) -> Result<ZetaExpr> {
    let mut out = ZetaExpr::one();
    for root in sys.positive_roots() {
        let x = pairing(sys, lambda, root)?;
        out = out.mul(&ZetaExpr::xi(sys.label_of(root)?, x.add_const(&Q::one())));
    }
    Ok(out.canonical())
}

/// The polynomial part `∏ (⟨λ,α̌⟩+1)(⟨λ,α̌⟩−1)` of the normalizer.
pub fn polynomial_normalizer(sys: &RootSystem, lambda: &TorusCharacter) -> Result<ZetaExpr> {
    let mut out = ZetaExpr::one();
    for root in sys.positive_roots() {
        let x = pairing(sys, lambda, root)?;
        out = out
            .mul(&ZetaExpr::factor(&x.add_const(&Q::one()))?)
            .mul(&ZetaExpr::factor(&x.add_const(&-Q::one()))?);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SharpLimit {
    pub line: TorusCharacter,
    pub point: Q,
    /// Roots whose `l^±` factor vanishes identically on the line.
    pub dropped: Vec<Root>,
    pub order: i64,
    /// Leading coefficient in the line parameter.
    pub leading_in_param: ZetaExpr,
    /// Coefficient of the line parameter in the moving coordinate.
    pub moving_scale: Q,
    /// Leading coefficient in the moving coordinate.
    pub leading: ZetaExpr,
}

/// Leading Laurent term of the normalizer along a degenerate line, dropping
/// the polynomial factors that vanish identically on it.
pub fn sharp_limit(
    sys: &RootSystem,
    line: &TorusCharacter,
    point: &Q,
    assume_no_real_zeros: bool,
) -> Result<SharpLimit> {
    let param = line_param(line)?;
    let mut expr = zeta_normalizer(sys, line)?;
    let mut dropped = Vec::new();
    for root in sys.positive_roots() {
        let x = pairing(sys, line, root)?;
        for shift in [Q::one(), -Q::one()] {
            let f = x.add_const(&shift);
            if f.is_zero() {
                dropped.push(root.clone());
            } else {
                expr = expr.mul(&ZetaExpr::factor(&f)?);
            }
        }
    }
    let l = expr.laurent(&param, point, assume_no_real_zeros)?;
    let moving: Vec<&AffineForm> = line.coords().iter().filter(|c| !c.is_constant()).collect();
    let moving_scale = match moving.as_slice() {
        [c] => c.coeff(&param),
        _ => {
            return Err(Error::InvalidInput(format!(
                "line {line} has no single moving coordinate"
            )))
        }
    };
    let rescale = num_traits::pow(moving_scale.clone(), l.order.unsigned_abs() as usize);
    let rescale = if l.order >= 0 {
        rescale.recip()
    } else {
        rescale
    };
    Ok(SharpLimit {
        line: line.clone(),
        point: point.clone(),
        dropped,
        order: l.order,
        leading: l.leading.scale(&rescale),
        leading_in_param: l.leading,
        moving_scale,
    })
}

#[derive(Clone, Debug)]
pub struct SiegelWeil {
    pub sharp_p: SharpLimit,
    pub sharp_q: SharpLimit,
    /// `C_Q / C_P`, both measured in their moving coordinates.
    pub ratio: ZetaExpr,
    /// Same ratio with the `P` side measured in the line parameter.
    pub ratio_in_param: ZetaExpr,
    pub residue_word: WeylWord,
    pub residue: LaurentData,
    /// `ratio / A`, the constant between the sections.
    pub section_constant: ZetaExpr,
    pub section_constant_in_param: ZetaExpr,
}

pub fn siegel_weil_constant(sys: &RootSystem) -> Result<SiegelWeil> {
    let preset = match sys.preset_kind() {
        Some(p @ (Preset::QuasiD4 | Preset::SplitD4)) => p,
        _ => {
            return Err(Error::UnsupportedGroup(format!(
                "Siegel-Weil constants are computed for split and quasi-split D4, not {}",
                sys.name()
            )))
        }
    };
    let p_point = q(3, 10);
    let q_point = q(1, 6);
    let sharp_p = sharp_limit(sys, &LineName::MuP.build(sys, "s")?, &p_point, false)?;
    let sharp_q = sharp_limit(sys, &LineName::MuQ.build(sys, "s")?, &q_point, false)?;
    let ratio = sharp_q.leading.div(&sharp_p.leading)?.canonical();
    let ratio_in_param = sharp_q.leading.div(&sharp_p.leading_in_param)?.canonical();
    let residue_word = fold_word(preset, &WeylWord::from_labels(&[2, 3, 4, 2])?)?;
    let residue = intertwiner_residue(
        sys,
        &residue_word,
        &LineName::ChiP.build(sys, "s")?,
        &p_point,
        false,
    )?;
    let section_constant = ratio.div(&residue.leading)?.canonical();
    let section_constant_in_param = ratio_in_param.div(&residue.leading)?.canonical();
    Ok(SiegelWeil {
        sharp_p,
        sharp_q,
        ratio,
        ratio_in_param,
        residue_word,
        residue,
        section_constant,
        section_constant_in_param,
    })
}

/// `F_w(λ) = ∏_{w⁻¹α>0} ξ(⟨λ,α̌⟩+1) · ∏_{w⁻¹α<0} ξ(⟨λ,α̌⟩)`.
pub fn f_w(sys: &RootSystem, w: &WeylWord, lambda: &TorusCharacter) -> Result<ZetaExpr> {
    let mut out = ZetaExpr::one();
    for root in sys.positive_roots() {
        let x = pairing(sys, lambda, root)?;
        let arg = if weyl::act_inverse_on_root(sys, w, root)?.is_positive() {
            x.add_const(&Q::one())
        } else {
            x
        };
        out = out.mul(&ZetaExpr::xi(sys.label_of(root)?, arg));
    }
    Ok(out.canonical())
}

#[derive(Clone, Debug)]
pub struct InvarianceMismatch {
    pub word: WeylWord,
    pub lhs: ZetaExpr,
    pub rhs: ZetaExpr,
}

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub simple_index: usize,
    pub checked: usize,
    pub mismatches: Vec<InvarianceMismatch>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks `F(w_i·λ) = F(λ)` term by term for generic `λ`: the term of `w`
/// at `w_i·λ` must equal the term of `w_i·w` at `λ`, with the same exponent
/// and the same polynomial normalizer.
pub fn sharp_invariance_check(sys: &RootSystem, i: usize) -> Result<InvarianceReport> {
    if i >= sys.rank() {
        return Err(Error::InvalidInput(format!("no simple root {}", i + 1)));
    }
    let lambda = TorusCharacter::generic(sys.rank(), "s");
    let moved = simple_reflection(sys, i, &lambda);
    let mut mismatches = Vec::new();
    let poly = polynomial_normalizer(sys, &lambda)?;
    let poly_moved = polynomial_normalizer(sys, &moved)?;
    if poly != poly_moved {
        mismatches.push(InvarianceMismatch {
            word: WeylWord::identity(),
            lhs: poly_moved,
            rhs: poly,
        });
    }
    let all = weyl::elements(sys)?;
    for w in &all {
        let partner = w.prepend(i).reduce(sys)?;
        let lhs = f_w(sys, w, &moved)?;
        let rhs = f_w(sys, &partner, &lambda)?;
        let same_exponent =
            weyl_act_inverse(sys, w, &moved)? == weyl_act_inverse(sys, &partner, &lambda)?;
        if lhs != rhs || !same_exponent {
            mismatches.push(InvarianceMismatch {
                word: w.clone(),
                lhs,
                rhs,
            });
        }
    }
    Ok(InvarianceReport {
        simple_index: i,
        checked: all.len(),
        mismatches,
    })
}

/// Generic point of `H_{α_i}^0` moved off by `ε`: coordinate `i` is `e`.
fn h0_point(sys: &RootSystem, i: usize) -> TorusCharacter {
    let mut coords = TorusCharacter::generic(sys.rank(), "s").coords().to_vec();
    coords[i] = AffineForm::param("e");
    TorusCharacter::new(coords)
}

/// Residues of `F_w` and `F_{w_i w}` along `H_{α_i}^0` cancel.
pub fn h0_cancellation_check(sys: &RootSystem, i: usize, w: &WeylWord) -> Result<bool> {
    if i >= sys.rank() {
        return Err(Error::InvalidInput(format!("no simple root {}", i + 1)));
    }
    let lambda = h0_point(sys, i);
    let partner = w.prepend(i).reduce(sys)?;
    let zero = Q::zero();
    let a = f_w(sys, w, &lambda)?.laurent("e", &zero, false)?;
    let b = f_w(sys, &partner, &lambda)?.laurent("e", &zero, false)?;
    for (word, l) in [(w, &a), (&partner, &b)] {
        if l.order != -1 {
            return Err(Error::HyperplaneDegeneracy(format!(
                "F_{word} has order {} along the hyperplane of simple root {}",
                l.order,
                i + 1
            )));
        }
    }
    let ea = weyl_act_inverse(sys, w, &lambda)?.eval("e", &zero);
    let eb = weyl_act_inverse(sys, &partner, &lambda)?.eval("e", &zero);
    let mut sum = LinComb::new();
    sum.add(&a.leading);
    sum.add(&b.leading);
    Ok(ea == eb && sum.is_zero())
}

#[derive(Clone, Debug, Default)]
pub struct H0Report {
    pub checked: usize,
    pub failures: Vec<(usize, WeylWord)>,
}

impl H0Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// [`h0_cancellation_check`] over every simple root and every `w ∈ W`.
pub fn h0_exhaustive(sys: &RootSystem) -> Result<H0Report> {
    let mut report = H0Report::default();
    for w in weyl::elements(sys)? {
        for i in 0..sys.rank() {
            report.checked += 1;
            if !h0_cancellation_check(sys, i, &w)? {
                report.failures.push((i, w.clone()));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct SurvivingPole {
    pub root: String,
    pub shift: i64,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct EntirenessReport {
    pub hyperplanes: usize,
    pub surviving: Vec<SurvivingPole>,
}

impl EntirenessReport {
    pub fn entire(&self) -> bool {
        self.surviving.is_empty()
    }
}

/// Generic point of `H_α^ε` moved off by `d`, solved for the first
/// coordinate the coroot of `α` involves.
fn hyperplane_point(sys: &RootSystem, root: &Root, shift: i64) -> Result<TorusCharacter> {
    let c = sys.coroot(root)?;
    let j = c
        .iter()
        .position(|x| !x.is_zero())
        .expect("coroots are nonzero");
    let generic = TorusCharacter::generic(sys.rank(), "s");
    let mut rest = AffineForm::linear("d", Q::one(), qi(shift));
    for (k, ck) in c.iter().enumerate() {
        if k != j {
            rest = &rest - &generic.coords()[k].scale(ck);
        }
    }
    let mut coords = generic.coords().to_vec();
    coords[j] = rest.scale(&c[j].recip());
    Ok(TorusCharacter::new(coords))
}

/// Looks for poles of `L(λ)·Σ_w F_w(λ)·[w⁻¹λ]` along every `H_α^ε`,
/// `ε ∈ {−1, 0, 1}`, grouping terms by exponent on the hyperplane.
pub fn entireness_check(sys: &RootSystem) -> Result<EntirenessReport> {
    let all = weyl::elements(sys)?;
    let mut report = EntirenessReport::default();
    let zero = Q::zero();
    for root in sys.positive_roots() {
        for shift in [-1i64, 0, 1] {
            report.hyperplanes += 1;
            let lambda = hyperplane_point(sys, root, shift)?;
            let poly = polynomial_normalizer(sys, &lambda)?;
            let mut groups: BTreeMap<TorusCharacter, Vec<LaurentData>> = BTreeMap::new();
            for w in &all {
                let term = poly.mul(&f_w(sys, w, &lambda)?);
                let l = term.laurent("d", &zero, false)?;
                let e = weyl_act_inverse(sys, w, &lambda)?.eval("d", &zero);
                groups.entry(e).or_default().push(l);
            }
            for (exponent, members) in groups {
                let k = members.iter().map(|l| l.order).min().unwrap();
                if k >= 0 {
                    continue;
                }
                let mut sum = LinComb::new();
                for l in members.iter().filter(|l| l.order == k) {
                    sum.add(&l.leading);
                }
                if !sum.is_zero() || k < -1 {
                    report.surviving.push(SurvivingPole {
                        root: root.to_string(),
                        shift,
                        detail: format!("order {} at exponent {}: {}", -k, exponent, sum),
                    });
                }
            }
        }
    }
    Ok(report)
}
