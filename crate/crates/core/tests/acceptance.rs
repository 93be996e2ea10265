//! Acceptance suite: one test per release criterion, each printing a
//! single pass/fail line (run with `--nocapture` to see them on
//! success). Every comparison is exact; the stated time budgets are
//! asserted, not just observed.

#![allow(clippy::manual_is_multiple_of)]

use std::collections::BTreeMap;
use std::time::Instant;

use movegraph::report::{
    fixed_matrix_grid, fixed_similarity_triples, run_verify, SuiteSelection, VerifyConfig,
};
use movegraph::{
    gcd, is_prime, mod8_criterion, oeis_terms, predict, subadd_int_matrix, subadd_matrix,
    tensor_iso_witness, tree_report, similarity_iso_witness, verify_cycle_divisibility,
    verify_embedding, verify_level_arcs, verify_mixed, verify_odd_n, IntMatrix,
    LevelPartition, Mod8Criterion, Modulus, MoveGraph, SizeBudget,
};

fn budget() -> SizeBudget {
    SizeBudget::default()
}

fn subadd_graph(n: u64) -> MoveGraph {
    MoveGraph::build(&subadd_matrix(Modulus::new(n).unwrap())).unwrap()
}

fn spectrum_of(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
    pairs.iter().copied().collect()
}

struct Criterion {
    number: u32,
    name: &'static str,
    started: Instant,
    limit_secs: u64,
}

impl Criterion {
    fn start(number: u32, name: &'static str, limit_secs: u64) -> Self {
        Self {
            number,
            name,
            started: Instant::now(),
            limit_secs,
        }
    }

    fn finish(self) {
        let elapsed = self.started.elapsed();
        println!(
            "acceptance criterion {} ({}): PASS in {:.2?}",
            self.number, self.name, elapsed
        );
        assert!(
            elapsed.as_secs() < self.limit_secs,
            "criterion {} exceeded its {}s budget: {:.2?}",
            self.number,
            self.limit_secs,
            elapsed
        );
    }
}

#[test]
fn criterion_1_fixed_spectra() {
    let c = Criterion::start(1, "fixed spectra and component counts", 1);

    assert_eq!(
        subadd_graph(3).decompose().spectrum(),
        &spectrum_of(&[(1, 1), (8, 1)])
    );
    assert_eq!(
        subadd_graph(5).decompose().spectrum(),
        &spectrum_of(&[(1, 1), (2, 2), (4, 5)])
    );
    assert_eq!(subadd_graph(3).weak_components().count, 2);
    assert_eq!(subadd_graph(5).weak_components().count, 8);
    assert_eq!(subadd_graph(6).weak_components().count, 2);

    let perm3 = IntMatrix::new(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
    let g = MoveGraph::build(&perm3.reduce(Modulus::new(3).unwrap())).unwrap();
    assert_eq!(g.decompose().spectrum(), &spectrum_of(&[(1, 3), (3, 8)]));

    c.finish();
}

#[test]
fn criterion_2_perfect_binary_tree_structure() {
    let c = Criterion::start(2, "perfect binary tree structure", 30);

    for r in 1..=10u32 {
        let n = 1u64 << r;
        let partition = LevelPartition::build(r, budget()).unwrap();
        let cards = partition.cardinalities();
        assert_eq!(cards.len(), (2 * r + 1) as usize, "r={r}");
        for (i, &card) in cards.iter().enumerate() {
            assert_eq!(
                card,
                LevelPartition::expected_cardinality(r, i),
                "r={r} i={i}"
            );
        }

        // Parentless set equals P_0 exactly, child levels advance, parent
        // counts are two above P_0, and the origin's parents are right.
        assert!(verify_level_arcs(r, budget()).unwrap(), "r={r}");

        let report = tree_report(r, budget()).unwrap();
        let graph = subadd_graph(n);
        let origin = graph.encode(&[0, 0]);
        let root = graph.encode(&[n / 2, n / 2]);

        assert!(report.is_inverted_pbt, "r={r}");
        assert!(report.leaf_level_uniform, "r={r}");
        assert_eq!(report.root_vertex, root, "r={r}");
        assert_eq!(report.depth, 2 * r - 1, "r={r}");

        // Tree vertex and arc counts of a perfect binary tree on
        // 4^r - 1 nodes: arcs stay inside the tree except at the root.
        let tree_vertices = graph.vertex_count() - 1;
        assert_eq!(tree_vertices, (1u64 << (2 * r)) - 1, "r={r}");
        let tree_arcs = (0..graph.vertex_count())
            .filter(|&v| v != origin && graph.successor(v) != origin)
            .count() as u64;
        assert_eq!(tree_arcs, tree_vertices - 1, "r={r}");

        // The two closing arcs at the origin.
        assert_eq!(report.closing_arcs, [[root, origin], [origin, origin]]);
        assert_eq!(graph.successor(root), origin);
        assert_eq!(graph.successor(origin), origin);
    }

    c.finish();
}

#[test]
fn criterion_3_oracle_equivalence() {
    let c = Criterion::start(3, "oracle equivalence", 60);

    for p in (3..200u64).filter(|&p| is_prime(p)) {
        let prediction = predict(p).unwrap();
        let enumerated = subadd_graph(p).decompose();
        assert!(enumerated.is_all_cycles(), "p={p}");
        assert_eq!(
            &prediction.predicted_spectrum(),
            enumerated.spectrum(),
            "p={p}"
        );
        assert_eq!(
            prediction.secondary_exists,
            prediction.k % 8 != 0,
            "p={p}"
        );
        match mod8_criterion(p).unwrap() {
            Mod8Criterion::NoneGuaranteed => assert!(!prediction.secondary_exists, "p={p}"),
            Mod8Criterion::ExistsGuaranteed => assert!(prediction.secondary_exists, "p={p}"),
            Mod8Criterion::Undetermined => assert_eq!(p % 8, 1),
        }
    }

    c.finish();
}

#[test]
fn criterion_4_structure_theorem_suite() {
    let c = Criterion::start(4, "structure theorem suite", 60);

    // Cycle divisibility and zero tails over the fixed 200-matrix grid.
    let grid = fixed_matrix_grid();
    assert_eq!(grid.len(), 200);
    for n in [3u64, 5, 7, 9, 11] {
        let modulus = Modulus::new(n).unwrap();
        for matrix in &grid {
            let det = matrix.det().unsigned_abs() as u64;
            if gcd(det % n, n) != 1 {
                continue;
            }
            let reduced = matrix.reduce(modulus);
            let graph = MoveGraph::build(&reduced).unwrap();
            let k = reduced.zn_order().expect("invertible matrix has an order");
            assert!(
                verify_cycle_divisibility(&graph, k).unwrap(),
                "matrix {:?} n={n}",
                matrix.rows()
            );
        }
    }

    // Induced embeddings v -> n2 v for every (n1, n2) with n1 * n2 <= 36.
    let subadd = subadd_int_matrix();
    for n1 in 2..=36u64 {
        for n2 in 1..=36 / n1 {
            assert!(
                verify_embedding(&subadd, n1, n2, budget()).unwrap(),
                "embedding n1={n1} n2={n2}"
            );
        }
    }

    // Tensor-product witnesses for every coprime pair with n1 * n2 <= 36.
    for n1 in 2..=36u64 {
        for n2 in 2..=36 / n1 {
            if gcd(n1, n2) != 1 {
                continue;
            }
            let witness = tensor_iso_witness(&subadd, n1, n2, budget()).unwrap();
            witness.validate().unwrap();
        }
    }

    // Similarity witnesses for the twenty fixed (M1, S, n) triples.
    let triples = fixed_similarity_triples();
    assert_eq!(triples.len(), 20);
    for (m1, s, n) in triples {
        let reduced = m1.reduce(Modulus::new(n).unwrap());
        let witness = similarity_iso_witness(&reduced, &s, budget()).unwrap();
        witness.validate().unwrap();
    }

    c.finish();
}

#[test]
fn criterion_5_odd_n_suite() {
    let c = Criterion::start(5, "odd-n suite", 30);

    let mut n = 3u64;
    while n <= 99 {
        let verdict = verify_odd_n(n, budget()).unwrap();
        assert!(verdict.all_cycles, "n={n}");
        assert!(verdict.max_divisor_ok, "n={n}");
        n += 2;
    }

    for n1 in [3u64, 5, 7, 9] {
        for k in [1u32, 2] {
            let verdict = verify_mixed(n1, k, budget()).unwrap();
            assert_eq!(verdict.copies_found, n1 * n1, "n1={n1} k={k}");
            assert!(verdict.component_match, "n1={n1} k={k}");
        }
    }

    c.finish();
}

/// Independent brute-force component counter: union-find straight on
/// coordinate pairs, sharing nothing with the library's graph path.
fn components_brute_force(n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let size = (n * n) as usize;
    let mut parent: Vec<usize> = (0..size).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for a in 0..n {
        for b in 0..n {
            let v = (a * n + b) as usize;
            let w = (((a + n - b) % n) * n + (a + b) % n) as usize;
            let (ra, rb) = (find(&mut parent, v), find(&mut parent, w));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    (0..size).filter(|&v| find(&mut parent, v) == v).count() as u64
}

#[test]
fn criterion_6_sequence_generation() {
    let c = Criterion::start(6, "sequence generation", 10);

    let golden: Vec<u64> = include_str!("golden/oeis_first20.txt")
        .lines()
        .map(|l| l.parse().unwrap())
        .collect();
    assert_eq!(golden.len(), 20);

    let emitted = oeis_terms(20, budget()).unwrap();
    assert_eq!(emitted, golden, "library terms vs frozen golden file");

    let brute: Vec<u64> = (1..=20).map(components_brute_force).collect();
    assert_eq!(brute, golden, "independent enumerator vs frozen golden file");

    c.finish();
}

#[test]
fn criterion_7_determinism() {
    let c = Criterion::start(7, "determinism", 600);

    let config = VerifyConfig::default();
    let first = run_verify(&config, SuiteSelection::All).unwrap();
    let second = run_verify(&config, SuiteSelection::All).unwrap();
    assert!(first.all_passed, "verify suites: {:#?}", first.suites);
    assert_eq!(
        first.to_json().into_bytes(),
        second.to_json().into_bytes(),
        "reports must be byte-identical"
    );

    c.finish();
}
