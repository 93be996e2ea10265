//! Move graphs on `Z_n^m` and the structure of the sub-add family.
//!
//! An `m x m` integer matrix `M` acts on `Z_n^m`; the move graph puts an
//! arc from every vertex `x` to `M x^T`. This crate constructs these
//! functional graphs exactly, decomposes them into cycles and in-trees,
//! verifies the general structure theorems by explicit enumeration and
//! witness maps, and — for the sub-add matrix `[[1, -1], [1, 1]]` —
//! derives the full cycle spectrum modulo an odd prime from finite-field
//! eigenvalue orders, cross-checking the analytic route against the
//! enumerative one.
//!
//! Everything is exact integer arithmetic; outputs are deterministic and
//! serialise to stable JSON, DOT and CSV.

// `n % d == 0` reads better than is_multiple_of in divisibility-heavy code.
#![allow(clippy::manual_is_multiple_of)]

pub mod decompose;
pub mod error;
pub mod gf;
pub mod graph;
pub mod modular;
pub mod predictor;
pub mod report;
pub mod subadd;
pub mod witness;

pub use decompose::Decomposition;
pub use error::{Error, Result};
pub use gf::{sqrt_minus_one, Gf2Element};
pub use graph::{GraphDocument, MoveGraph, SizeBudget, VertexId, WeakComponents};
pub use modular::{
    canonical, euler_phi, gcd, is_prime, mult_order, IntMatrix, ModMatrix, ModVector, Modulus,
};
pub use predictor::{
    mod8_criterion, oeis_terms, predict, survey, survey_csv, survey_json, verify_prediction,
    CaseLabel, Mod8Criterion, PrimePrediction, SurveyRow,
};
pub use report::{run_verify, SuiteSelection, VerifyConfig, VerifyReport};
pub use subadd::{
    level_of, subadd_int_matrix, subadd_matrix, tree_report, verify_level_arcs, verify_mixed,
    verify_odd_n, LevelPartition, MixedVerdict, OddVerdict, TreeReport,
};
pub use witness::{
    similarity_iso_witness, tensor_iso_witness, verify_cycle_divisibility, verify_embedding,
    verify_scaling_property, IsoWitness,
};
