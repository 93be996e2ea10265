//! Property tests for the algebraic invariants: decomposition shape over
//! arbitrary matrices, linearity of the matrix action, power laws, codec
//! round trips, and the quadratic-extension arithmetic.

use proptest::prelude::*;

use movegraph::graph::{decode_vertex, encode_vertex};
use movegraph::{
    gcd, Gf2Element, IntMatrix, ModMatrix, ModVector, Modulus, MoveGraph,
    verify_cycle_divisibility,
};

/// A random square integer matrix together with a modulus small enough
/// that the full graph stays tiny.
fn matrix_and_modulus() -> impl Strategy<Value = (Vec<Vec<i64>>, u64)> {
    (1usize..=3, 2u64..=12).prop_flat_map(|(dim, n)| {
        let entries = prop::collection::vec(
            prop::collection::vec(-5i64..=5, dim..=dim),
            dim..=dim,
        );
        (entries, Just(n))
    })
}

fn mod_matrix(rows: &[Vec<i64>], n: u64) -> ModMatrix {
    ModMatrix::new(rows, Modulus::new(n).unwrap()).unwrap()
}

proptest! {
    #[test]
    fn decomposition_invariants_hold_for_any_matrix((rows, n) in matrix_and_modulus()) {
        let matrix = mod_matrix(&rows, n);
        let graph = MoveGraph::build(&matrix).unwrap();
        let d = graph.decompose();

        // Totality: out-degree one everywhere, in-degrees sum to n^m.
        let indeg_total: u64 = graph.in_degrees().iter().map(|&x| x as u64).sum();
        prop_assert_eq!(indeg_total, graph.vertex_count());

        // Cycles are disjoint and spectrum totals count cycle vertices.
        let mut on_cycle = vec![false; graph.vertex_count() as usize];
        for cycle in d.cycles() {
            for &v in cycle {
                prop_assert!(!on_cycle[v as usize]);
                on_cycle[v as usize] = true;
            }
        }
        let total: u64 = d.spectrum().iter().map(|(len, count)| len * count).sum();
        prop_assert_eq!(total, d.on_cycle_count());

        // Tail marks exactly the off-cycle vertices, and walking any
        // vertex tail_length steps lands on its cycle.
        for v in 0..graph.vertex_count() {
            prop_assert_eq!(d.is_on_cycle(v), on_cycle[v as usize]);
            let mut u = v;
            for _ in 0..d.tail_length(v) {
                u = graph.successor(u);
            }
            prop_assert!(d.is_on_cycle(u));
            prop_assert_eq!(d.cycle_of(u), d.cycle_of(v));
        }
    }

    #[test]
    fn invertible_matrices_give_pure_cycle_graphs((rows, n) in matrix_and_modulus()) {
        let matrix = mod_matrix(&rows, n);
        prop_assume!(gcd(matrix.det_mod(), n) == 1);
        if let Some(k) = matrix.zn_order() {
            let graph = MoveGraph::build(&matrix).unwrap();
            prop_assert!(verify_cycle_divisibility(&graph, k).unwrap());
        }
    }

    #[test]
    fn mat_apply_is_linear(
        (rows, n) in matrix_and_modulus(),
        seed_x in prop::collection::vec(-20i64..=20, 3),
        seed_y in prop::collection::vec(-20i64..=20, 3),
    ) {
        let matrix = mod_matrix(&rows, n);
        let modulus = matrix.modulus();
        let dim = matrix.dim();
        let x = ModVector::new(&seed_x[..dim], modulus).unwrap();
        let y = ModVector::new(&seed_y[..dim], modulus).unwrap();
        let sum_then_apply = matrix.apply(&x.add(&y).unwrap()).unwrap();
        let apply_then_sum = matrix.apply(&x).unwrap().add(&matrix.apply(&y).unwrap()).unwrap();
        prop_assert_eq!(sum_then_apply, apply_then_sum);
    }

    #[test]
    fn mat_pow_matches_naive_and_adds_exponents(
        (rows, n) in matrix_and_modulus(),
        a in 0u64..12,
        b in 0u64..12,
    ) {
        let matrix = mod_matrix(&rows, n);
        let mut naive = ModMatrix::identity(matrix.dim(), matrix.modulus()).unwrap();
        for _ in 0..a {
            naive = naive.mul(&matrix).unwrap();
        }
        prop_assert_eq!(matrix.pow(a), naive);
        prop_assert_eq!(
            matrix.pow(a + b),
            matrix.pow(a).mul(&matrix.pow(b)).unwrap()
        );
    }

    #[test]
    fn vertex_codec_round_trips(n in 2u64..=16, m in 1usize..=4, seed in 0u64..1_000_000) {
        let count = n.pow(m as u32);
        let v = seed % count;
        let coords = decode_vertex(v, n, m);
        prop_assert_eq!(coords.len(), m);
        prop_assert!(coords.iter().all(|&c| c < n));
        prop_assert_eq!(encode_vertex(&coords, n), v);
    }

    #[test]
    fn build_and_decompose_are_deterministic((rows, n) in matrix_and_modulus()) {
        let matrix = mod_matrix(&rows, n);
        let g1 = MoveGraph::build(&matrix).unwrap();
        let g2 = MoveGraph::build(&matrix).unwrap();
        prop_assert_eq!(&g1, &g2);
        prop_assert_eq!(g1.decompose(), g2.decompose());
        prop_assert_eq!(g1.document().to_json(), g2.document().to_json());
    }

    #[test]
    fn gf2_ring_laws(
        p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 17, 19, 23]),
        xa in 0i64..25, xb in 0i64..25,
        ya in 0i64..25, yb in 0i64..25,
        za in 0i64..25, zb in 0i64..25,
    ) {
        let x = Gf2Element::new(xa, xb, p).unwrap();
        let y = Gf2Element::new(ya, yb, p).unwrap();
        let z = Gf2Element::new(za, zb, p).unwrap();
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(
            x.mul(&y).unwrap().mul(&z).unwrap(),
            x.mul(&y.mul(&z).unwrap()).unwrap()
        );
        // Norm is multiplicative.
        prop_assert_eq!(x.mul(&y).unwrap().norm(), (x.norm() * y.norm()) % p);
        // (1 + w)(1 - w) = 2.
        let two = Gf2Element::new(1, 1, p).unwrap()
            .mul(&Gf2Element::new(1, -1, p).unwrap())
            .unwrap();
        prop_assert_eq!((two.a(), two.b()), (2 % p, 0));
    }

    #[test]
    fn tensor_embedding_commutes(
        n1 in 2u64..=6,
        n2 in 1u64..=6,
    ) {
        // f(v) = n2 v commutes with the matrix action into the larger
        // modulus, independent of coprimality.
        let subadd = IntMatrix::new(&[vec![1, -1], vec![1, 1]]).unwrap();
        let small = MoveGraph::build(&subadd.reduce(Modulus::new(n1).unwrap())).unwrap();
        let big = MoveGraph::build(&subadd.reduce(Modulus::new(n1 * n2).unwrap())).unwrap();
        for v in 0..small.vertex_count() {
            let f = |u: u64| {
                let scaled: Vec<u64> = small.decode(u).iter().map(|&c| c * n2).collect();
                big.encode(&scaled)
            };
            prop_assert_eq!(big.successor(f(v)), f(small.successor(v)));
        }
    }
}
