use eisencalc::dual_side::{
    arthur_expand, dual_weights, factorization_from_biweights, restrict_via, restrict_via_r,
    DualPairEmbedding, WeightSet,
};
use eisencalc::rational::qi;
use eisencalc::weyl::elements;
use eisencalc::{Preset, Root, RootSystem};

fn g2() -> RootSystem {
    RootSystem::preset(Preset::G2)
}

#[test]
fn standard_weights() {
    let ws = WeightSet::standard();
    assert_eq!(ws.weights.len(), 7);
    assert!(ws.sum().iter().all(|&c| c == 0));
    let zeros = ws
        .weights
        .iter()
        .filter(|w| w.iter().all(|&c| c == 0))
        .count();
    assert_eq!(zeros, 1);
    for w in &ws.weights {
        let neg: Vec<i64> = w.iter().map(|c| -c).collect();
        assert!(ws.weights.contains(&neg));
    }
    assert_eq!(dual_weights().len(), 7);
}

#[test]
fn embedding_roots_are_orthogonal() {
    let sys = g2();
    assert!(DualPairEmbedding::standard().orthogonal(&sys).unwrap());
}

#[test]
fn bi_weights_are_negation_closed() {
    let bw = restrict_via_r();
    for &(m, n) in &bw {
        assert!(bw.contains(&(-m, -n)));
    }
}

/// Conjugating the pair of roots by any Weyl element leaves the bi-weight
/// multiset unchanged.
#[test]
fn bi_weights_are_conjugation_invariant() {
    let sys = g2();
    let base = DualPairEmbedding::standard();
    let expected = restrict_via_r();
    for w in elements(&sys).unwrap() {
        let moved = base.conjugate(&sys, &w).unwrap();
        assert!(moved.orthogonal(&sys).unwrap());
        assert_eq!(restrict_via(&moved), expected, "{w}");
    }
}

#[test]
fn other_orthogonal_pairs_give_the_same_decomposition() {
    let sys = g2();
    let pair = DualPairEmbedding::from_roots(
        &sys,
        Root::new(vec![0, 1]).unwrap(),
        Root::new(vec![2, 1]).unwrap(),
    )
    .unwrap();
    assert!(pair.orthogonal(&sys).unwrap());
    assert_eq!(restrict_via(&pair), restrict_via_r());
}

#[test]
fn factorization_degree_is_seven() {
    let f = factorization_from_biweights(&restrict_via_r()).unwrap();
    assert_eq!(f.degree(), 7);
}

#[test]
fn arthur_shifts_are_symmetric() {
    for j in 0..8u32 {
        let shifts = arthur_expand(j);
        assert_eq!(shifts.len(), j as usize + 1);
        let mut negated: Vec<_> = shifts.iter().map(|s| -s).collect();
        negated.reverse();
        assert_eq!(negated, shifts);
        assert_eq!(shifts.iter().sum::<eisencalc::Q>(), qi(0));
    }
}
