mod common;

use common::*;
use eisencalc::characters::{
    degenerate_line, modular_character, weyl_act, Parabolic, TorusCharacter,
};
use eisencalc::eisenstein::{constant_term, keys_shahidi_pairs, terms_at};
use eisencalc::rational::{q, qi, Q};
use eisencalc::weyl::{coset_reps, elements, length};
use eisencalc::{AffineForm, FieldLabel, Preset, WeylWord, ZetaExpr};
use proptest::prelude::*;

fn arb_group() -> impl Strategy<Value = Preset> {
    prop::sample::select(GROUPS.to_vec())
}

fn arb_point() -> impl Strategy<Value = Q> {
    prop::sample::select(vec![
        qi(-1),
        qi(0),
        q(1, 6),
        q(1, 2),
        qi(1),
        qi(2),
        q(3, 10),
    ])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn laurent_data_is_multiplicative(a in arb_zeta(), b in arb_zeta(), s in arb_point()) {
        let la = a.laurent("s", &s, true).unwrap();
        let lb = b.laurent("s", &s, true).unwrap();
        let lab = a.mul(&b).laurent("s", &s, true).unwrap();
        prop_assert_eq!(lab.order, la.order + lb.order);
        prop_assert!(lab.leading.same_function(&la.leading.mul(&lb.leading)));
    }

    #[test]
    fn functional_equation_leaves_laurent_data(e in arb_zeta(), s in arb_point()) {
        let one = AffineForm::constant(qi(1));
        let flipped = e.map_args(|x| &one - x).unwrap();
        prop_assert!(flipped.same_function(&e));
        let (l, r) = (e.laurent("s", &s, true).unwrap(), flipped.laurent("s", &s, true).unwrap());
        prop_assert_eq!(l.order, r.order);
        prop_assert!(l.leading.same_function(&r.leading));
    }

    #[test]
    fn rank_one_ratio_is_minus_one_at_its_zero(
        a in prop::sample::select(vec![-6i64, -3, -2, -1, 1, 2, 3, 6]),
        b in -6i64..=6,
        label in prop::sample::select(vec!["F", "K", "E"]),
    ) {
        let x = AffineForm::linear("s", qi(a), qi(b));
        let lab = label_named(label);
        let e = ZetaExpr::xi(&lab, x.clone())
            .div(&ZetaExpr::xi(&lab, &x + &AffineForm::constant(qi(1))))
            .unwrap();
        let d = e.laurent("s", &q(-b, a), false).unwrap();
        prop_assert_eq!(d.order, 0);
        prop_assert!(d.leading.same_function(&ZetaExpr::scalar(qi(-1))), "{}", d.leading);
    }

    #[test]
    fn action_respects_reduction(
        p in arb_group(),
        letters in prop::collection::vec(0usize..4, 0..14),
        coords in prop::collection::vec(-5i64..=5, 4),
    ) {
        let sys = sys(p);
        let w = WeylWord::new(letters.into_iter().map(|i| i % sys.rank()).collect());
        let r = w.reduce(&sys).unwrap();
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(length(&sys, &r).unwrap(), r.len());
        let lambda = TorusCharacter::ints(&coords[..sys.rank()]);
        prop_assert_eq!(weyl_act(&sys, &w, &lambda).unwrap(), weyl_act(&sys, &r, &lambda).unwrap());
    }
}

#[test]
fn gk_cocycle_all_groups() {
    for p in GROUPS {
        gk_cocycle(p, 200).unwrap();
    }
}

#[test]
fn pairing_invariance_all_groups() {
    for p in GROUPS {
        pairing_invariance(p, 200).unwrap();
    }
}

#[test]
fn canonicalization_laws() {
    canonicalize_laws(500).unwrap();
}

#[test]
fn shell_decomposition() {
    shell_additivity(500).unwrap();
}

#[test]
fn simple_reflections_permute_positive_roots() {
    for p in GROUPS {
        let sys = sys(p);
        for i in 0..sys.rank() {
            for root in sys.positive_roots() {
                let image = sys.reflect(i, root).unwrap();
                if root
                    .coords()
                    .iter()
                    .enumerate()
                    .all(|(k, &c)| c == i64::from(k == i))
                {
                    assert_eq!(image, root.negate());
                } else {
                    assert!(
                        image.is_positive() && sys.contains(&image),
                        "{root} -> {image}"
                    );
                }
            }
        }
    }
}

#[test]
fn roots_pair_to_two_with_their_coroots() {
    for p in GROUPS {
        let sys = sys(p);
        for root in sys.positive_roots() {
            let c = sys.root_character(root).unwrap();
            assert_eq!(sys.pair_q(&c, root).unwrap(), qi(2), "{} {root}", p.name());
        }
    }
}

#[test]
fn root_counts_and_labels() {
    let counts = [
        (Preset::SplitD4, 12),
        (Preset::QuasiD4, 9),
        (Preset::TriD4, 6),
        (Preset::G2, 6),
        (Preset::A1, 1),
    ];
    for (p, n) in counts {
        assert_eq!(sys(p).num_positive_roots(), n, "{}", p.name());
    }
    let quasi = sys(Preset::QuasiD4);
    let k_roots: Vec<String> = quasi
        .positive_roots()
        .filter(|r| *quasi.label_of(r).unwrap() == FieldLabel::K())
        .map(ToString::to_string)
        .collect();
    assert_eq!(k_roots, ["(0,0,1)", "(0,1,1)", "(1,1,1)"]);
    let tri = sys(Preset::TriD4);
    let short = tri.simple_label(0);
    assert_eq!(*short, FieldLabel::E());
    assert_eq!(short.degree, 3);
}

#[test]
fn borel_modular_character_is_two_rho() {
    for p in GROUPS {
        let sys = sys(p);
        let delta = modular_character(&sys, &[]).unwrap();
        assert_eq!(
            delta,
            TorusCharacter::ints(&vec![2; sys.rank()]),
            "{}",
            p.name()
        );
    }
}

#[test]
fn degenerate_line_at_zero_is_half_difference_of_modular_characters() {
    for p in [Preset::SplitD4, Preset::QuasiD4, Preset::TriD4] {
        let sys = sys(p);
        for parabolic in [Parabolic::P, Parabolic::Q] {
            let levi = parabolic.levi(&sys).unwrap();
            let line = degenerate_line(&sys, &levi, "s").unwrap().eval("s", &qi(0));
            let expected = modular_character(&sys, &levi)
                .unwrap()
                .sub(&modular_character(&sys, &[]).unwrap())
                .scale(&half());
            assert_eq!(line, expected, "{} {parabolic}", p.name());
        }
    }
}

#[test]
fn j_factor_has_one_atom_pair_per_inverted_root() {
    for p in GROUPS {
        let sys = sys(p);
        let lambda = TorusCharacter::generic(sys.rank(), "s");
        for w in elements(&sys).unwrap() {
            let j = eisencalc::eisenstein::j_factor(&sys, &w, &lambda).unwrap();
            assert_eq!(
                j.numerator_atom_count() as usize,
                w.len(),
                "{} {w}",
                p.name()
            );
        }
    }
}

#[test]
fn coset_counts() {
    for (p, parabolic, n) in [
        (Preset::QuasiD4, Parabolic::Q, 6),
        (Preset::SplitD4, Parabolic::Q, 8),
        (Preset::SplitD4, Parabolic::P, 24),
        (Preset::QuasiD4, Parabolic::Borel, 48),
    ] {
        let sys = sys(p);
        let reps = coset_reps(&sys, &parabolic.levi(&sys).unwrap()).unwrap();
        assert_eq!(reps.len(), n, "{} {parabolic}", p.name());
    }
}

/// Whenever a simple reflection fixes the evaluated exponent, the two terms
/// joined by it carry opposite leading coefficients.
#[test]
fn keys_shahidi_holds_for_every_detected_pair() {
    for p in [Preset::SplitD4, Preset::QuasiD4, Preset::TriD4] {
        let sys = sys(p);
        for (parabolic, point) in [(Parabolic::Q, q(1, 6)), (Parabolic::P, q(3, 10))] {
            let levi = parabolic.levi(&sys).unwrap();
            let line = degenerate_line(&sys, &levi, "s").unwrap();
            let ct = constant_term(&sys, &levi, &line).unwrap();
            let at = terms_at(&ct, &point, false).unwrap();
            for pair in keys_shahidi_pairs(&ct, &point, false).unwrap() {
                let t = at.iter().find(|t| t.word == pair.word).unwrap();
                let moved =
                    eisencalc::characters::simple_reflection(&sys, pair.simple_index, &t.exponent);
                if moved == t.exponent && t.laurent.order < 0 {
                    assert!(
                        pair.negated(),
                        "{} {} {}",
                        p.name(),
                        pair.word,
                        pair.partner
                    );
                }
            }
        }
    }
}
