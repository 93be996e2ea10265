//! The move graph: the functional graph on `Z_n^m` induced by a move
//! matrix, with arc `x -> M x^T` at every vertex.
//!
//! Vertices are encoded little-endian mixed radix: the vertex
//! `(x_1, ..., x_m)` has index `x_1 + x_2 n + ... + x_m n^(m-1)`, so the
//! first coordinate is least significant. The encoding round-trips
//! exactly and is part of the crate's output contract.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::modular::ModMatrix;

/// Index of a vertex of `Z_n^m` in `[0, n^m)`.
pub type VertexId = u64;

/// Cap on the number of vertices a single construction may allocate.
///
/// The default keeps a successor array within roughly 800 MB of 8-byte
/// ids. Override per call, or through `MOVEGRAPH_BUDGET` in the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeBudget(pub u64);

impl Default for SizeBudget {
    fn default() -> Self {
        SizeBudget(100_000_000)
    }
}

/// The move graph on `Z_n^m`: every vertex carries exactly one out-arc,
/// recorded in the successor array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveGraph {
    matrix: ModMatrix,
    successor: Vec<VertexId>,
}

impl MoveGraph {
    /// Populate the successor array by applying the matrix to every
    /// decoded vertex, under the default size budget.
    pub fn build(matrix: &ModMatrix) -> Result<Self> {
        Self::build_with_budget(matrix, SizeBudget::default())
    }

    pub fn build_with_budget(matrix: &ModMatrix, budget: SizeBudget) -> Result<Self> {
        let n = matrix.modulus().get();
        let m = matrix.dim();
        let count = checked_vertex_count(n, m, budget)?;

        let mut successor = vec![0u64; count as usize];
        let mut coords = vec![0u64; m];
        for index in 0..count {
            let mut succ_index = 0u64;
            // Successor coordinates accumulated most-significant first so
            // the index can be built by Horner's rule.
            for row in (0..m).rev() {
                let mut acc: u128 = 0;
                for (col, &coord) in coords.iter().enumerate() {
                    acc += matrix.entry(row, col) as u128 * coord as u128;
                }
                succ_index = succ_index * n + (acc % n as u128) as u64;
            }
            successor[index as usize] = succ_index;

            // Odometer step to the next vertex.
            for c in coords.iter_mut() {
                *c += 1;
                if *c < n {
                    break;
                }
                *c = 0;
            }
        }
        Ok(Self {
            matrix: matrix.clone(),
            successor,
        })
    }

    pub fn matrix(&self) -> &ModMatrix {
        &self.matrix
    }

    pub fn modulus(&self) -> u64 {
        self.matrix.modulus().get()
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn vertex_count(&self) -> u64 {
        self.successor.len() as u64
    }

    pub fn successor(&self, v: VertexId) -> VertexId {
        self.successor[v as usize]
    }

    pub fn successors(&self) -> &[VertexId] {
        &self.successor
    }

    /// True when `(u, v)` is an arc.
    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        self.successor[u as usize] == v
    }

    pub fn encode(&self, coords: &[u64]) -> VertexId {
        encode_vertex(coords, self.modulus())
    }

    pub fn decode(&self, v: VertexId) -> Vec<u64> {
        decode_vertex(v, self.modulus(), self.dim())
    }

    /// Cycle/tree decomposition of the successor map.
    pub fn decompose(&self) -> Decomposition {
        Decomposition::of_successors(&self.successor)
    }

    /// Weakly connected components of the underlying undirected graph.
    pub fn weak_components(&self) -> WeakComponents {
        weak_components_of(&self.successor)
    }

    /// In-degree of every vertex.
    pub fn in_degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.successor.len()];
        for &s in &self.successor {
            deg[s as usize] += 1;
        }
        deg
    }

    /// DOT rendering: one line per arc, vertices labelled `"(x1,...,xm)"`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph movegraph {\n");
        for v in 0..self.vertex_count() {
            let _ = writeln!(
                out,
                "    \"{}\" -> \"{}\";",
                vertex_label(&self.decode(v)),
                vertex_label(&self.decode(self.successor(v)))
            );
        }
        out.push_str("}\n");
        out
    }

    /// The JSON document `{n, m, matrix, successor, spectrum}` with stable
    /// key order.
    pub fn document(&self) -> GraphDocument {
        GraphDocument {
            n: self.modulus(),
            m: self.dim() as u64,
            matrix: self.matrix.rows(),
            successor: self.successor.clone(),
            spectrum: self.decompose().spectrum().clone(),
        }
    }
}

/// `n^m`, rejected if it overflows or exceeds the budget.
pub fn checked_vertex_count(n: u64, m: usize, budget: SizeBudget) -> Result<u64> {
    let mut count: u128 = 1;
    for _ in 0..m {
        count = count.saturating_mul(n as u128);
    }
    if count > budget.0 as u128 {
        return Err(Error::Capacity {
            required: count,
            budget: budget.0,
        });
    }
    Ok(count as u64)
}

pub fn encode_vertex(coords: &[u64], n: u64) -> VertexId {
    let mut index = 0u64;
    for &c in coords.iter().rev() {
        debug_assert!(c < n);
        index = index * n + c;
    }
    index
}

pub fn decode_vertex(index: VertexId, n: u64, m: usize) -> Vec<u64> {
    let mut coords = vec![0u64; m];
    let mut rest = index;
    for c in coords.iter_mut() {
        *c = rest % n;
        rest /= n;
    }
    debug_assert_eq!(rest, 0);
    coords
}

pub fn vertex_label(coords: &[u64]) -> String {
    let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Weak-component count plus a deterministic per-vertex label: the
/// smallest vertex id contained in the component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakComponents {
    pub count: u64,
    pub labels: Vec<VertexId>,
}

pub(crate) fn weak_components_of(successor: &[VertexId]) -> WeakComponents {
    let n = successor.len();
    let mut parent: Vec<u32> = (0..n as u32).collect();

    fn find(parent: &mut [u32], mut v: u32) -> u32 {
        while parent[v as usize] != v {
            parent[v as usize] = parent[parent[v as usize] as usize];
            v = parent[v as usize];
        }
        v
    }

    for (v, &s) in successor.iter().enumerate() {
        let a = find(&mut parent, v as u32);
        let b = find(&mut parent, s as u32);
        if a != b {
            // Union by smaller root keeps labels canonical.
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi as usize] = lo;
        }
    }

    let mut labels = vec![0u64; n];
    let mut count = 0u64;
    for (v, label) in labels.iter_mut().enumerate() {
        let root = find(&mut parent, v as u32);
        if root as usize == v {
            count += 1;
        }
        *label = root as u64;
    }
    WeakComponents { count, labels }
}

/// Serialisable graph document with the exported field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphDocument {
    pub n: u64,
    pub m: u64,
    pub matrix: Vec<Vec<u64>>,
    pub successor: Vec<VertexId>,
    pub spectrum: BTreeMap<u64, u64>,
}

impl GraphDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serialises")
    }
}
