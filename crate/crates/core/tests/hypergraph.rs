mod common;

use common::*;
use hyperconn::hypergraph::{
    algebraic_connectivity, candidate_pairs, connectivity_index, ensemble_laplacian, is_m_connected,
    laplacian_tensor, sample_hypergraph, EnsembleSpec, Hypergraph, LaplacianTensor, WeightDistribution,
};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Hypergraph<f64>> {
    prop::sample::select(vec![(3usize, 1usize), (4, 1), (5, 1), (4, 2), (5, 2)]).prop_flat_map(|(m, half)| {
        let pairs = candidate_pairs(m, half);
        let n = pairs.len();
        prop::collection::vec(prop::option::of(0.1f64..3.0), n).prop_map(move |ws| {
            let chosen = pairs.iter().zip(ws).filter_map(|((s, d), w)| w.map(|w| (s.clone(), d.clone(), w)));
            Hypergraph::from_pairs(m, half, chosen).unwrap()
        })
    })
}

/// Laplacian of an ordinary graph as a plain matrix.
fn graph_matrix(m: usize, edges: &[(usize, usize)]) -> DMatrix<f64> {
    let mut l = DMatrix::zeros(m, m);
    for &(a, b) in edges {
        l[(a, a)] += 1.0;
        l[(b, b)] += 1.0;
        l[(a, b)] -= 1.0;
        l[(b, a)] -= 1.0;
    }
    l
}

proptest! {
    #[test]
    fn laplacian_invariants(g in arb_graph()) {
        let l = laplacian_tensor(&g);
        prop_assert!(l.value.is_hermitian(0.0));
        prop_assert!(l.ones_residual() <= 1e-9);
        let spectrum = oracle_eigenvalues(&l.value);
        prop_assert!(*spectrum.last().unwrap() >= -1e-9);
        // At least m^M - m!/(m-M)! + 1 zero eigenvalues.
        let k = connectivity_index(g.m, g.half).unwrap();
        let n = l.value.total();
        let zeros = spectrum.iter().filter(|v| v.abs() <= 1e-8).count();
        prop_assert!(zeros >= n - k, "{zeros} zeros, need {}", n - k);
        let alpha = algebraic_connectivity(&l, g.m, g.half).unwrap();
        prop_assert!((alpha - spectrum[k - 1]).abs() <= 1e-9 * (1.0 + alpha.abs()));
    }

    #[test]
    fn connected_graphs_have_nonnegative_alpha(g in arb_graph()) {
        if is_m_connected(&g) {
            let alpha = algebraic_connectivity(&laplacian_tensor(&g), g.m, g.half).unwrap();
            prop_assert!(alpha >= -1e-9);
        }
    }

    #[test]
    fn json_round_trip(g in arb_graph()) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.json");
        g.save(&path).unwrap();
        prop_assert_eq!(Hypergraph::<f64>::load(&path).unwrap(), g);
    }

    #[test]
    fn laplacian_is_additive(a in arb_graph(), seed in any::<u64>()) {
        // The sum of two Laplacians is the Laplacian of the merged graph.
        let spec = EnsembleSpec {
            n_graphs: 1, m: a.m, half: a.half, seed,
            distribution: WeightDistribution::UniformWeight { low: 0.0, high: 1.0 },
            center: false, normalize: false,
        };
        let b = sample_hypergraph::<f64>(&spec, 0).unwrap();
        let sum = ensemble_laplacian(&[laplacian_tensor(&a), laplacian_tensor(&b)]).unwrap();
        let mut merged: std::collections::BTreeMap<(Vec<usize>, Vec<usize>), f64> = Default::default();
        for e in a.edges.iter().chain(&b.edges) {
            *merged.entry((e.source.clone(), e.dest.clone())).or_default() += e.weight;
        }
        let g = Hypergraph::new(
            a.m,
            a.half,
            merged.into_iter().map(|((s, d), w)| hyperconn::hypergraph::Hyperedge::new(s, d, w)).collect(),
        ).unwrap();
        prop_assert!(sum.value.approx_eq(&laplacian_tensor(&g).value, 1e-12));
    }
}

#[test]
fn fiedler_values_against_matrix_oracle() {
    let cases: Vec<(usize, Vec<(usize, usize)>, f64)> = vec![
        (3, vec![(0, 1), (1, 2)], 1.0),
        (3, vec![(0, 1), (1, 2), (0, 2)], 3.0),
        (4, vec![(0, 1), (1, 2), (2, 3), (3, 0)], 2.0),
        (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 4.0),
        (4, vec![(0, 1), (2, 3)], 0.0),
    ];
    for (m, edges, expected) in cases {
        let g = Hypergraph::<f64>::from_pairs(m, 1, edges.iter().map(|&(a, b)| (vec![a], vec![b], 1.0))).unwrap();
        let alpha = algebraic_connectivity(&laplacian_tensor(&g), m, 1).unwrap();
        let mut oracle: Vec<f64> = graph_matrix(m, &edges).symmetric_eigenvalues().iter().copied().collect();
        oracle.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // Second smallest = (m-1)-th largest.
        assert!((alpha - oracle[1]).abs() <= 1e-9);
        assert!((alpha - expected).abs() <= 1e-9);
    }
}

#[test]
fn sampling_is_reproducible() {
    let spec = EnsembleSpec {
        n_graphs: 3,
        m: 5,
        half: 2,
        distribution: WeightDistribution::BernoulliEdge { p: 0.4, weight: 1.5 },
        center: false,
        normalize: false,
        seed: 99,
    };
    for i in 0..10 {
        assert_eq!(
            sample_hypergraph::<f64>(&spec, i).unwrap(),
            sample_hypergraph::<f64>(&spec, i).unwrap()
        );
    }
    let distinct: std::collections::BTreeSet<_> = (0..20)
        .map(|i| format!("{:?}", sample_hypergraph::<f64>(&spec, i).unwrap().edges))
        .collect();
    assert!(distinct.len() > 1);
    let mut other = spec.clone();
    other.seed = 100;
    let differs = (0..20).any(|i| {
        sample_hypergraph::<f64>(&spec, i).unwrap() != sample_hypergraph::<f64>(&other, i).unwrap()
    });
    assert!(differs);
}

#[test]
fn wrong_shape_laplacian_rejected() {
    let g = Hypergraph::<f64>::from_pairs(4, 2, [(vec![0, 1], vec![2, 3], 1.0)]).unwrap();
    let l: LaplacianTensor<f64> = laplacian_tensor(&g);
    assert!(algebraic_connectivity(&l, 4, 1).is_err());
    assert!(algebraic_connectivity(&l, 5, 2).is_err());
}
