//! Shared fixtures and property checks for the integration tests.
#![allow(dead_code)]

use eisencalc::affine::AffineForm;
use eisencalc::characters::{pairing, weyl_act, weyl_act_inverse, TorusCharacter};
use eisencalc::eisenstein::j_factor;
use eisencalc::local_integrals::{tate_integral, RationalX, ShellFunction};
use eisencalc::rational::{q, qi, Q};
use eisencalc::weyl::{act_on_root, elements};
use eisencalc::{FieldLabel, Preset, Root, RootSystem, WeylWord, ZetaExpr};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const GROUPS: [Preset; 5] = [
    Preset::SplitD4,
    Preset::QuasiD4,
    Preset::TriD4,
    Preset::G2,
    Preset::A1,
];

pub fn sys(p: Preset) -> RootSystem {
    RootSystem::preset(p)
}

pub fn form(text: &str) -> AffineForm {
    AffineForm::parse(text).expect("well-formed affine form")
}

/// `xi_L(arg)`, `L` one of `F`, `K`, `E`.
pub fn xi(label: &str, arg: &str) -> ZetaExpr {
    ZetaExpr::xi(&label_named(label), form(arg))
}

pub fn label_named(label: &str) -> FieldLabel {
    match label {
        "F" => FieldLabel::F(),
        "K" => FieldLabel::K(),
        "E" => FieldLabel::E(),
        other => panic!("no field label {other}"),
    }
}

/// Product of `xi` atoms over product of `xi` atoms.
pub fn ratio(num: &[(&str, &str)], den: &[(&str, &str)]) -> ZetaExpr {
    let mul = |atoms: &[(&str, &str)]| {
        atoms
            .iter()
            .fold(ZetaExpr::one(), |acc, (l, a)| acc.mul(&xi(l, a)))
    };
    mul(num).div(&mul(den)).expect("nonzero denominator")
}

/// `c · R_F^r · ∏ xi_L(n)^e` with constant arguments.
pub fn monomial(c: Q, r: i32, atoms: &[(&str, i64, i32)]) -> ZetaExpr {
    atoms.iter().fold(
        ZetaExpr::scalar(c).mul(&ZetaExpr::residue_pow(&FieldLabel::F(), r)),
        |acc, &(l, n, e)| {
            acc.mul(&ZetaExpr::xi_pow(
                &label_named(l),
                AffineForm::constant(qi(n)),
                e,
            ))
        },
    )
}

pub fn ints(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| qi(x)).collect()
}

pub fn half() -> Q {
    q(1, 2)
}

/// Independent action of `w⁻¹` on a constant character in fundamental
/// coordinates: the letters of `w` are applied first to last, each as
/// `λ ↦ λ − λ_i·c_i` with `(c_i)_k = A[k][i]·deg_i/deg_k`.
pub fn oracle_inverse_action(
    cartan: &[&[i64]],
    degrees: &[i64],
    word: &[usize],
    lambda: &[Q],
) -> Vec<Q> {
    let mut out = lambda.to_vec();
    for &i in word {
        let li = out[i].clone();
        for k in 0..out.len() {
            out[k] -= &li * q(cartan[k][i] * degrees[i], degrees[k]);
        }
    }
    out
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn run(
    cases: u32,
    strategy: impl Strategy<Value = (usize, usize)>,
    check: impl Fn(usize, usize) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases)
        .run(&strategy, |(a, b)| check(a, b))
        .map_err(|e| e.to_string())
}

/// `J(w₁w₂, λ) = J(w₂, w₁⁻¹·λ)·J(w₁, λ)` for a generic character and
/// random splittings of canonical reduced words.
pub fn gk_cocycle(p: Preset, cases: u32) -> Result<(), String> {
    let sys = sys(p);
    let all = elements(&sys).map_err(|e| e.to_string())?;
    let lambda = TorusCharacter::generic(sys.rank(), "s");
    let max_len = all.iter().map(WeylWord::len).max().unwrap_or(0);
    run(cases, (0..all.len(), 0..=max_len), |i, cut| {
        let w = &all[i];
        let cut = cut.min(w.len());
        let (l, r) = w.letters().split_at(cut);
        let (w1, w2) = (WeylWord::new(l.to_vec()), WeylWord::new(r.to_vec()));
        let lhs = j_factor(&sys, w, &lambda).map_err(fail)?;
        let moved = weyl_act_inverse(&sys, &w1, &lambda).map_err(fail)?;
        let rhs = j_factor(&sys, &w2, &moved)
            .map_err(fail)?
            .mul(&j_factor(&sys, &w1, &lambda).map_err(fail)?);
        prop_assert!(lhs.same_function(&rhs), "{w} = {w1}·{w2}: {lhs} vs {rhs}");
        Ok(())
    })
}

/// `⟨w·λ, w·α̌⟩ = ⟨λ, α̌⟩` for random `w`, integral `λ` and roots `α`.
pub fn pairing_invariance(p: Preset, cases: u32) -> Result<(), String> {
    let sys = sys(p);
    let all = elements(&sys).map_err(|e| e.to_string())?;
    let roots: Vec<Root> = sys
        .positive_roots()
        .flat_map(|r| [r.clone(), r.negate()])
        .collect();
    let rank = sys.rank();
    let strategy = (
        0..all.len(),
        0..roots.len(),
        prop::collection::vec(-6i64..=6, rank),
    );
    runner(cases)
        .run(&strategy, |(i, j, coords)| {
            let lambda = TorusCharacter::ints(&coords);
            let w = &all[i];
            let before = pairing(&sys, &lambda, &roots[j]).map_err(fail)?;
            let moved = weyl_act(&sys, w, &lambda).map_err(fail)?;
            let image = act_on_root(&sys, w, &roots[j]).map_err(fail)?;
            let after = pairing(&sys, &moved, &image).map_err(fail)?;
            prop_assert_eq!(before, after);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn arb_zeta() -> impl Strategy<Value = ZetaExpr> {
    let atom = (
        prop_oneof![Just("F"), Just("K"), Just("E")],
        -3i64..=3,
        -5i64..=5,
        -2i32..=2,
    )
        // A constant argument at 0 or 1 sits on a pole: not a finite atom.
        .prop_filter("finite constant atom", |(_, a, b, _)| {
            *a != 0 || !(0..=1).contains(b)
        });
    (
        prop::collection::vec(atom, 0..5),
        -4i64..=4,
        1i64..=4,
        -1i32..=1,
    )
        .prop_filter("nonzero scalar", |(_, c, _, _)| *c != 0)
        .prop_map(|(atoms, c, d, r)| {
            atoms.into_iter().fold(
                ZetaExpr::scalar(q(c, d)).mul(&ZetaExpr::residue_pow(&FieldLabel::K(), r)),
                |acc, (l, a, b, e)| {
                    acc.mul(&ZetaExpr::xi_pow(
                        &label_named(l),
                        AffineForm::linear("s", qi(a), qi(b)),
                        e,
                    ))
                },
            )
        })
}

/// Idempotence and multiplicativity of canonicalization.
pub fn canonicalize_laws(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(arb_zeta(), arb_zeta()), |(a, b)| {
            let ca = a.canonical();
            prop_assert_eq!(ca.canonical(), ca.clone());
            let lhs = a.mul(&b).canonical();
            let rhs = ca.mul(&b.canonical()).canonical();
            prop_assert_eq!(lhs.to_string(), rhs.to_string());
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// `lattice(k) = shell(k) + … + shell(m−1) + lattice(m)` for `k ≤ m`.
pub fn shell_additivity(cases: u32) -> Result<(), String> {
    let z = form("2s+3");
    run(cases, (0usize..40, 0usize..12), |start, span| {
        let k = start as i64 - 20;
        let m = k + span as i64;
        let whole = tate_integral(ShellFunction::Lattice(k), &z).value;
        let pieces: RationalX = (k..m).fold(
            tate_integral(ShellFunction::Lattice(m), &z).value,
            |acc, j| acc.add(&tate_integral(ShellFunction::Shell(j), &z).value),
        );
        prop_assert_eq!(whole, pieces);
        Ok(())
    })
}

fn fail(e: eisencalc::Error) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}
