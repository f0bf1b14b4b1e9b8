use proptest::prelude::*;
use qsubiso::ansatz::{circular_topology, classical_permutation, emit_gates, reachable_permutations, ParamVector};
use qsubiso::encoding::{compose, phase_diagonal};
use qsubiso::graph::{classical_loss, disparity, permute, AdjacencyMatrix, PartialPermutation, VertexPermutation};
use qsubiso::oracle::{backtracking_match, closed_form_amplitude, enumerate_matches};
use qsubiso::simulator::Statevector;
use qsubiso::solver::{exact_utility, run_single, LossCircuitSpec, SolverConfig};

fn matrix(order: usize) -> impl Strategy<Value = AdjacencyMatrix> {
    let pairs = order * (order - 1) / 2;
    proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
        let mut rows = vec![vec![0u8; order]; order];
        let pairs = (0..order).flat_map(|i| (i + 1..order).map(move |j| (i, j)));
        for ((i, j), b) in pairs.zip(bits) {
            rows[i][j] = b as u8;
            rows[j][i] = b as u8;
        }
        AdjacencyMatrix::from_rows(&rows).unwrap()
    })
}

fn permutation(n: usize) -> impl Strategy<Value = VertexPermutation> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| VertexPermutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permute_then_inverse_restores(a in matrix(8), p in permutation(8)) {
        let back = permute(&permute(&a, &p).unwrap(), &p.inverse()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn diagonal_is_a_homomorphism(a in matrix(4), b in matrix(4)) {
        let lhs = compose(&phase_diagonal(&a), &phase_diagonal(&b)).unwrap();
        prop_assert_eq!(lhs, phase_diagonal(&a.xor(&b).unwrap()));
    }

    #[test]
    fn closed_form_is_one_minus_disparity(a in matrix(8), b in matrix(4), p in permutation(8)) {
        let block = permute(&a, &p).unwrap().upper_block(4).unwrap();
        let amp = closed_form_amplitude(&a, &b, &p).unwrap();
        prop_assert!((amp - (1.0 - disparity(&block, &b).unwrap())).abs() < 1e-12);
        let loss = classical_loss(&a, &b, &p).unwrap();
        prop_assert_eq!(loss == 0, amp == 1.0);
    }

    #[test]
    fn circuit_matches_closed_form(a in matrix(8), b in matrix(4), bits in proptest::collection::vec(any::<bool>(), 15)) {
        let t = circular_topology(3).unwrap();
        let p = classical_permutation(&t, &bits).unwrap();
        let spec = LossCircuitSpec::auto(a.clone(), b.clone(), t).unwrap();
        let u = exact_utility(&spec, &ParamVector::from_bits(&bits)).unwrap();
        prop_assert!((u - closed_form_amplitude(&a, &b, &p).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn fragment_preserves_norm(theta in proptest::collection::vec(-10.0f64..10.0, 15), x in 0usize..64) {
        let t = circular_topology(3).unwrap();
        let prog = emit_gates(&t, &ParamVector::new(theta).unwrap(), false, 3).unwrap();
        let mut s = Statevector::basis(6, x).unwrap();
        s.apply_program(&prog).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn oracles_agree(a in matrix(8), b in matrix(4)) {
        let census = enumerate_matches(&a, &b).unwrap().census().unwrap();
        let bt = backtracking_match(&a, &b).unwrap();
        prop_assert_eq!(census.matches.unwrap(), bt.clone());
        for m in &bt {
            prop_assert_eq!(classical_loss(&a, &b, &m.completion()).unwrap(), 0);
        }
    }

    #[test]
    fn partial_permutation_round_trip(p in permutation(16)) {
        let pp = PartialPermutation::from_permutation(&p, 4).unwrap();
        let again = PartialPermutation::from_permutation(&pp.completion(), 4).unwrap();
        prop_assert_eq!(pp, again);
    }
}

#[test]
fn unreachable_instance_runs_to_the_step_cap() {
    // Paw (4 edges) against a star (3 edges): no relabeling matches, which
    // the enumeration of all 2^10 bit strings confirms.
    let paw =
        AdjacencyMatrix::from_rows(&[vec![0, 1, 0, 1], vec![1, 0, 1, 1], vec![0, 1, 0, 0], vec![1, 1, 0, 0]]).unwrap();
    let star =
        AdjacencyMatrix::from_rows(&[vec![0, 1, 1, 1], vec![1, 0, 0, 0], vec![1, 0, 0, 0], vec![1, 0, 0, 0]]).unwrap();
    let t = circular_topology(2).unwrap();
    for p in reachable_permutations(&t).unwrap() {
        assert!(classical_loss(&paw, &star, &p).unwrap() > 0);
    }
    let r = run_single(&paw, &star, &t, &SolverConfig::exact(3)).unwrap();
    assert!(!r.converged);
    assert_eq!(r.steps_used, 128);
    assert_eq!(r.quantum_loss_trace.len(), 128);
    assert_eq!(r.best_classical_loss_trace.len(), 128);
}
