//! The verification suites: every structure theorem re-checked by
//! enumeration over a budgeted grid, with a deterministic JSON report.
//!
//! A failed check here means a mathematical property was falsified on a
//! finite case — a build-breaking event, which the CLI maps to its own
//! reserved exit status.

use serde::Serialize;

use crate::error::Result;
use crate::graph::{MoveGraph, SizeBudget};
use crate::modular::{gcd, is_prime, IntMatrix, Modulus};
use crate::predictor::{mod8_criterion, predict, verify_prediction, Mod8Criterion};
use crate::subadd::{
    subadd_int_matrix, subadd_matrix, tree_report, verify_level_arcs, verify_mixed,
    verify_odd_n, LevelPartition,
};
use crate::witness::{
    similarity_iso_witness, tensor_iso_witness, tensor_product_decomposition,
    verify_cycle_divisibility, verify_embedding, verify_linear_combination_closure,
    verify_scaling_property,
};

/// Parameters of a verification run. The defaults match the acceptance
/// grid; the CLI can narrow or widen them.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    /// Upper bound of the odd-modulus sweep.
    pub odd_n_max: u64,
    /// Bound on `n1 * n2` for the embedding and tensor sweeps.
    pub pair_product_max: u64,
    /// Upper bound (inclusive) of the prime sweep.
    pub p_max: u64,
    /// Upper bound of the power-of-two exponent sweep.
    pub r_max: u32,
    #[serde(skip)]
    pub budget: SizeBudget,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            odd_n_max: 99,
            pair_product_max: 36,
            p_max: 199,
            r_max: 10,
            budget: SizeBudget::default(),
        }
    }
}

/// Outcome of one suite: how many checks ran and which failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub checks: u64,
    pub failures: Vec<String>,
}

/// The full report, serialisable byte-identically across runs.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub suites: Vec<SuiteResult>,
    pub all_passed: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }
}

/// Collects check outcomes for one suite.
struct Recorder {
    name: &'static str,
    checks: u64,
    failures: Vec<String>,
}

impl Recorder {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 32 {
            self.failures.push(label());
        }
    }

    fn result(self) -> SuiteResult {
        SuiteResult {
            name: self.name.to_string(),
            passed: self.failures.is_empty(),
            checks: self.checks,
            failures: self.failures,
        }
    }
}

fn perm3_int_matrix() -> IntMatrix {
    IntMatrix::new(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).expect("static matrix")
}

/// The fixed matrix grid: all 2x2 integer matrices with entries in
/// [-2, 2], enumerated lexicographically, nonsingular over Q, first 200.
pub fn fixed_matrix_grid() -> Vec<IntMatrix> {
    let mut grid = Vec::with_capacity(200);
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in -2i64..=2 {
                for d in -2i64..=2 {
                    if a * d - b * c == 0 {
                        continue;
                    }
                    grid.push(IntMatrix::new(&[vec![a, b], vec![c, d]]).expect("square"));
                    if grid.len() == 200 {
                        return grid;
                    }
                }
            }
        }
    }
    grid
}

/// The twenty fixed (M1, S, n) similarity triples. Every S is unimodular,
/// so the exact conjugate is integer-entried and `gcd(n, det S) = 1`
/// holds for every n.
pub fn fixed_similarity_triples() -> Vec<(IntMatrix, IntMatrix, u64)> {
    let m = |rows: &[[i64; 2]; 2]| {
        IntMatrix::new(&[rows[0].to_vec(), rows[1].to_vec()]).expect("square")
    };
    let subadd = [[1, -1], [1, 1]];
    let swap = [[0, 1], [1, 0]];
    let shear = [[1, 1], [0, 1]];
    let mixed = [[2, 1], [1, 1]];
    let rot = [[0, -1], [1, 0]];
    let s1 = [[1, 0], [1, 1]];
    let s2 = [[1, 1], [0, 1]];
    let s3 = [[0, 1], [1, 0]];
    let s4 = [[1, 2], [0, 1]];
    let s5 = [[2, 1], [1, 1]];
    let s6 = [[3, 2], [1, 1]];
    let s7 = [[1, 0], [2, 1]];
    let s8 = [[1, -1], [0, 1]];
    let s9 = [[2, 3], [1, 2]];
    let s10 = [[1, 1], [1, 2]];
    vec![
        (m(&subadd), m(&s1), 5),
        (m(&subadd), m(&s2), 3),
        (m(&subadd), m(&s3), 7),
        (m(&subadd), m(&s4), 11),
        (m(&subadd), m(&s5), 13),
        (m(&swap), m(&s1), 3),
        (m(&swap), m(&s6), 5),
        (m(&shear), m(&s2), 7),
        (m(&shear), m(&s7), 5),
        (m(&mixed), m(&s3), 3),
        (m(&mixed), m(&s8), 11),
        (m(&rot), m(&s9), 5),
        (m(&rot), m(&s1), 7),
        (m(&subadd), m(&s10), 9),
        (m(&swap), m(&s4), 9),
        (m(&shear), m(&s5), 4),
        (m(&mixed), m(&s9), 8),
        (m(&rot), m(&s10), 6),
        (m(&subadd), m(&s7), 6),
        (m(&swap), m(&s8), 8),
    ]
}

fn spectrum_eq(graph_n: u64, expected: &[(u64, u64)], budget: SizeBudget) -> Result<bool> {
    let g = MoveGraph::build_with_budget(&subadd_matrix(Modulus::new(graph_n)?), budget)?;
    let want: std::collections::BTreeMap<u64, u64> = expected.iter().copied().collect();
    Ok(g.decompose().spectrum() == &want)
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

/// Pinned small-case fixtures: spectra and component counts that are
/// known exactly.
pub fn suite_fixtures(config: &VerifyConfig) -> Result<SuiteResult> {
    let b = config.budget;
    let mut rec = Recorder::new("fixtures");

    rec.check(spectrum_eq(3, &[(1, 1), (8, 1)], b)?, || {
        "subadd n=3 spectrum".into()
    });
    rec.check(spectrum_eq(5, &[(1, 1), (2, 2), (4, 5)], b)?, || {
        "subadd n=5 spectrum".into()
    });

    let components = |n: u64| -> Result<u64> {
        Ok(
            MoveGraph::build_with_budget(&subadd_matrix(Modulus::new(n)?), b)?
                .weak_components()
                .count,
        )
    };
    rec.check(components(3)? == 2, || "subadd n=3 components".into());
    rec.check(components(5)? == 8, || "subadd n=5 components".into());
    rec.check(components(6)? == 2, || "subadd n=6 components".into());

    let perm3 = MoveGraph::build_with_budget(&perm3_int_matrix().reduce(Modulus::new(3)?), b)?;
    let want: std::collections::BTreeMap<u64, u64> = [(1, 3), (3, 8)].into_iter().collect();
    rec.check(perm3.decompose().spectrum() == &want, || {
        "perm3 n=3 spectrum".into()
    });

    Ok(rec.result())
}

/// Structure theorems over the fixed grid: cycle divisibility, scaling,
/// linear-combination closure, embeddings, tensor witnesses, similarity
/// witnesses, and the k-cycle existence check.
pub fn suite_structure(config: &VerifyConfig) -> Result<SuiteResult> {
    let b = config.budget;
    let mut rec = Recorder::new("structure");
    let subadd = subadd_int_matrix();
    let perm3 = perm3_int_matrix();

    // Cycle lengths divide the Z_n-order; no tails (fixed 200-matrix grid).
    let grid = fixed_matrix_grid();
    for n in [3u64, 5, 7, 9, 11] {
        if n > config.odd_n_max.max(3) {
            continue;
        }
        let modulus = Modulus::new(n)?;
        for (index, matrix) in grid.iter().enumerate() {
            let det = matrix.det().unsigned_abs() as u64;
            if gcd(det % n, n) != 1 {
                continue;
            }
            let reduced = matrix.reduce(modulus);
            let graph = MoveGraph::build_with_budget(&reduced, b)?;
            match reduced.zn_order() {
                Some(k) => rec.check(
                    verify_cycle_divisibility(&graph, k)?,
                    || format!("divisibility grid[{index}] n={n}"),
                ),
                None => rec.check(false, || format!("order missing grid[{index}] n={n}")),
            }
        }
    }

    // Scaling property over invertible scalars.
    for n in (3..=12u64).step_by(2) {
        let graph = MoveGraph::build_with_budget(&subadd.reduce(Modulus::new(n)?), b)?;
        for s in 1..n {
            if gcd(s, n) != 1 {
                continue;
            }
            rec.check(verify_scaling_property(&graph, s)?, || {
                format!("scaling subadd n={n} s={s}")
            });
        }
    }
    for n in 2..=8u64 {
        let graph = MoveGraph::build_with_budget(&perm3.reduce(Modulus::new(n)?), b)?;
        for s in 1..n {
            if gcd(s, n) != 1 {
                continue;
            }
            rec.check(verify_scaling_property(&graph, s)?, || {
                format!("scaling perm3 n={n} s={s}")
            });
        }
    }

    // Linear-combination closure on all-cycle graphs.
    for n in [3u64, 5, 7] {
        let graph = MoveGraph::build_with_budget(&subadd.reduce(Modulus::new(n)?), b)?;
        rec.check(verify_linear_combination_closure(&graph), || {
            format!("linear combination closure n={n}")
        });
    }

    // Embeddings: v -> n2 v, coprimality not required.
    for n1 in 2..=config.pair_product_max {
        for n2 in 1..=config.pair_product_max / n1 {
            rec.check(verify_embedding(&subadd, n1, n2, b)?, || {
                format!("embedding subadd {n1} into {}", n1 * n2)
            });
        }
    }
    for n1 in 2..=12u64 {
        for n2 in 1..=12 / n1 {
            rec.check(verify_embedding(&perm3, n1, n2, b)?, || {
                format!("embedding perm3 {n1} into {}", n1 * n2)
            });
        }
    }

    // Tensor witnesses for coprime pairs, plus the product-spectrum
    // round trip as an independent route.
    for n1 in 2..=config.pair_product_max {
        for n2 in 2..=config.pair_product_max / n1 {
            if gcd(n1, n2) != 1 {
                continue;
            }
            rec.check(tensor_iso_witness(&subadd, n1, n2, b).is_ok(), || {
                format!("tensor witness subadd {n1}x{n2}")
            });
            let g1 = MoveGraph::build_with_budget(&subadd.reduce(Modulus::new(n1)?), b)?;
            let g2 = MoveGraph::build_with_budget(&subadd.reduce(Modulus::new(n2)?), b)?;
            let g12 =
                MoveGraph::build_with_budget(&subadd.reduce(Modulus::new(n1 * n2)?), b)?;
            rec.check(
                tensor_product_decomposition(&g1, &g2).spectrum() == g12.decompose().spectrum(),
                || format!("tensor spectrum subadd {n1}x{n2}"),
            );
            if n1 * n2 <= 12 {
                rec.check(tensor_iso_witness(&perm3, n1, n2, b).is_ok(), || {
                    format!("tensor witness perm3 {n1}x{n2}")
                });
            }
        }
    }

    // Similarity witnesses for the fixed triples.
    for (index, (m1, s, n)) in fixed_similarity_triples().into_iter().enumerate() {
        let reduced = m1.reduce(Modulus::new(n)?);
        rec.check(similarity_iso_witness(&reduced, &s, b).is_ok(), || {
            format!("similarity triple[{index}] n={n}")
        });
    }

    // A k-cycle exists whenever the order is finite (odd primes <= 50).
    for p in (3..=50u64).filter(|&p| is_prime(p)) {
        for (name, matrix) in [("subadd", &subadd), ("perm3", &perm3)] {
            let reduced = matrix.reduce(Modulus::new(p)?);
            let Some(k) = reduced.zn_order() else {
                rec.check(false, || format!("{name} mod {p} lost its order"));
                continue;
            };
            let graph = MoveGraph::build_with_budget(&reduced, b)?;
            rec.check(graph.decompose().has_cycle_of_length(k), || {
                format!("k-cycle existence {name} p={p} k={k}")
            });
        }
    }

    Ok(rec.result())
}

/// Level partition, arcs and tree shape for every r up to the bound.
pub fn suite_levels(config: &VerifyConfig) -> Result<SuiteResult> {
    let b = config.budget;
    let mut rec = Recorder::new("levels");
    for r in 1..=config.r_max {
        let partition = LevelPartition::build(r, b)?;
        let cards = partition.cardinalities();
        let cards_ok = cards.len() == (2 * r + 1) as usize
            && cards
                .iter()
                .enumerate()
                .all(|(i, &c)| c == LevelPartition::expected_cardinality(r, i));
        rec.check(cards_ok, || format!("level cardinalities r={r}"));
        rec.check(verify_level_arcs(r, b)?, || format!("level arcs r={r}"));

        let report = tree_report(r, b)?;
        rec.check(report.is_inverted_pbt, || format!("inverted PBT r={r}"));
        rec.check(report.leaf_level_uniform, || format!("leaf levels r={r}"));
        rec.check(report.depth == 2 * r - 1, || {
            format!("measured depth r={r}: got {}", report.depth)
        });
        let n = 1u64 << r;
        let expected_root = (n / 2) + n * (n / 2);
        rec.check(report.root_vertex == expected_root, || {
            format!("root vertex r={r}")
        });
        rec.check(
            report.closing_arcs == [[expected_root, 0], [0, 0]],
            || format!("closing arcs r={r}"),
        );
    }
    Ok(rec.result())
}

/// Odd moduli: all cycles, lengths dividing 4 phi(n).
pub fn suite_odd(config: &VerifyConfig) -> Result<SuiteResult> {
    let mut rec = Recorder::new("odd");
    let mut n = 3u64;
    while n <= config.odd_n_max {
        let verdict = verify_odd_n(n, config.budget)?;
        rec.check(verdict.all_cycles, || format!("all cycles n={n}"));
        rec.check(verdict.max_divisor_ok, || format!("4 phi(n) divisor n={n}"));
        n += 2;
    }
    Ok(rec.result())
}

/// Mixed moduli n1 * 2^k: copy counts and component matching.
pub fn suite_mixed(config: &VerifyConfig) -> Result<SuiteResult> {
    let mut rec = Recorder::new("mixed");
    for n1 in [3u64, 5, 7, 9] {
        if n1 > config.odd_n_max.max(3) {
            continue;
        }
        for k in [1u32, 2] {
            let verdict = verify_mixed(n1, k, config.budget)?;
            rec.check(verdict.copies_found == n1 * n1, || {
                format!("copies n1={n1} k={k}: got {}", verdict.copies_found)
            });
            rec.check(verdict.component_match, || {
                format!("component match n1={n1} k={k}")
            });
        }
    }
    Ok(rec.result())
}

/// The master oracle-equivalence sweep: prediction equals enumeration
/// for every odd prime in range, plus the mod-8 consequences.
pub fn suite_prediction(config: &VerifyConfig) -> Result<SuiteResult> {
    let mut rec = Recorder::new("prediction");
    for p in (3..=config.p_max).filter(|&p| is_prime(p)) {
        rec.check(verify_prediction(p, config.budget)?, || {
            format!("prediction vs enumeration p={p}")
        });
        let pred = predict(p)?;
        rec.check(pred.secondary_exists == (pred.k % 8 != 0), || {
            format!("8 | k criterion p={p}")
        });
        match mod8_criterion(p)? {
            Mod8Criterion::NoneGuaranteed => {
                rec.check(!pred.secondary_exists, || format!("mod-8 none p={p}"))
            }
            Mod8Criterion::ExistsGuaranteed => {
                rec.check(pred.secondary_exists, || format!("mod-8 exists p={p}"))
            }
            Mod8Criterion::Undetermined => {}
        }
    }
    Ok(rec.result())
}

/// Which suites to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteSelection {
    All,
    Fixtures,
    Structure,
    Levels,
    Odd,
    Mixed,
    Prediction,
}

impl SuiteSelection {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "all" => Self::All,
            "fixtures" => Self::Fixtures,
            "structure" => Self::Structure,
            "levels" => Self::Levels,
            "odd" => Self::Odd,
            "mixed" => Self::Mixed,
            "prediction" => Self::Prediction,
            _ => return None,
        })
    }
}

/// Run the selected suites and assemble the report.
pub fn run_verify(config: &VerifyConfig, selection: SuiteSelection) -> Result<VerifyReport> {
    use SuiteSelection::*;
    let mut suites = Vec::new();
    let wants = |s: SuiteSelection| selection == All || selection == s;
    if wants(Fixtures) {
        suites.push(suite_fixtures(config)?);
    }
    if wants(Structure) {
        suites.push(suite_structure(config)?);
    }
    if wants(Levels) {
        suites.push(suite_levels(config)?);
    }
    if wants(Odd) {
        suites.push(suite_odd(config)?);
    }
    if wants(Mixed) {
        suites.push(suite_mixed(config)?);
    }
    if wants(Prediction) {
        suites.push(suite_prediction(config)?);
    }
    let all_passed = suites.iter().all(|s| s.passed);
    Ok(VerifyReport {
        config: config.clone(),
        suites,
        all_passed,
    })
}
