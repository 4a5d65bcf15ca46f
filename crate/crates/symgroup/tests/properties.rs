use nalgebra::DMatrix;
use partitions::{enumerate_diagrams, YoungDiagram};
use proptest::prelude::*;
use symgroup::{all_permutations, coset_transversal, OrthogonalIrrep, Permutation};

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).map(|i| i + 1).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_one_line(&v).unwrap())
}

fn diagram_and_pair() -> impl Strategy<Value = (YoungDiagram, Permutation, Permutation)> {
    (2usize..=6).prop_flat_map(|n| {
        let ds = enumerate_diagrams(n, n);
        (prop::sample::select(ds), permutation(n), permutation(n))
    })
}

proptest! {
    #[test]
    fn representation_is_orthogonal_homomorphism((mu, p, q) in diagram_and_pair()) {
        let irrep = OrthogonalIrrep::new(&mu);
        let mp = irrep.matrix(&p).unwrap();
        let mq = irrep.matrix(&q).unwrap();
        let mpq = irrep.matrix(&p.compose(&q).unwrap()).unwrap();
        prop_assert!((mpq - &mp * &mq).amax() < 1e-11);
        let id = DMatrix::identity(irrep.dim(), irrep.dim());
        prop_assert!((mp.transpose() * &mp - id).amax() < 1e-11);
        let inv = irrep.matrix(&p.inverse()).unwrap();
        prop_assert!((inv - mp.transpose()).amax() < 1e-11);
    }

    #[test]
    fn character_is_conjugation_invariant((mu, p, q) in diagram_and_pair()) {
        let irrep = OrthogonalIrrep::new(&mu);
        let conj = q.compose(&p).unwrap().compose(&q.inverse()).unwrap();
        prop_assert!((irrep.character(&p).unwrap() - irrep.character(&conj).unwrap()).abs() < 1e-10);
        prop_assert!((irrep.character(&p).unwrap() - irrep.matrix(&p).unwrap().trace()).abs() < 1e-10);
    }

    #[test]
    fn composition_is_associative(p in permutation(6), q in permutation(6), r in permutation(6)) {
        let left = p.compose(&q).unwrap().compose(&r).unwrap();
        let right = p.compose(&q.compose(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn every_element_factors_through_a_coset_representative(p in permutation(5), h in 0usize..=5) {
        let reps = coset_transversal(5, h);
        let hits = reps
            .iter()
            .filter(|t| {
                let s = p.compose(&t.inverse()).unwrap();
                (h..5).all(|i| s.apply(i + 1) == i + 1)
            })
            .count();
        prop_assert_eq!(hits, 1);
    }
}

#[test]
fn sign_is_a_character() {
    for p in all_permutations(5) {
        let sign = OrthogonalIrrep::new(&YoungDiagram::column(5)).character(&p).unwrap();
        assert_eq!(sign.round() as i32, p.sign());
    }
}
