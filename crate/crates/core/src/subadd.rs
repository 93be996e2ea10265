//! Everything specific to the sub-add matrix `[[1, -1], [1, 1]]`, which
//! sends `(a, b)` to `(a - b, a + b)`.
//!
//! Mod `2^r` the graph is a single inverted perfect binary tree draining
//! into the loop at the origin, stratified by the 2-adic level partition.
//! Mod odd `n` the graph is a disjoint union of cycles, and mixed moduli
//! factor through the tensor decomposition.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    checked_vertex_count, encode_vertex, MoveGraph, SizeBudget, VertexId,
};
use crate::modular::{euler_phi, IntMatrix, ModMatrix, Modulus};

/// The sub-add matrix as an integer matrix.
pub fn subadd_int_matrix() -> IntMatrix {
    IntMatrix::new(&[vec![1, -1], vec![1, 1]]).expect("static matrix")
}

/// The sub-add matrix reduced mod `n`: `[[1, n-1], [1, 1]]`.
pub fn subadd_matrix(n: Modulus) -> ModMatrix {
    subadd_int_matrix().reduce(n)
}

// ---------------------------------------------------------------------------
// Level partition of Z_{2^r}^2
// ---------------------------------------------------------------------------

/// The partition `P_0, ..., P_{2r}` of `Z_{2^r}^2`.
///
/// Write a nonzero vertex as `(2^t x, 2^t y)` with `t` the smaller 2-adic
/// valuation of the two canonical coordinates, so at least one of `x, y`
/// is odd. The vertex belongs to `P_{2t}` when exactly one is odd and to
/// `P_{2t+1}` when both are; `(0, 0)` alone fills `P_{2r}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelPartition {
    pub r: u32,
    pub levels: Vec<Vec<VertexId>>,
}

/// Level index of the vertex `(a, b)` of `Z_{2^r}^2`.
///
/// Parity of a residue class is the parity of its canonical
/// representative, which is well-defined because `2^r` is even.
pub fn level_of(a: u64, b: u64, r: u32) -> usize {
    if a == 0 && b == 0 {
        return (2 * r) as usize;
    }
    // trailing_zeros of 0 is the full word width, which acts as the
    // +infinity valuation: the minimum still comes from the other side.
    let t = a.trailing_zeros().min(b.trailing_zeros());
    debug_assert!(t < r);
    let x_odd = (a >> t) & 1 == 1;
    let y_odd = (b >> t) & 1 == 1;
    if x_odd && y_odd {
        (2 * t + 1) as usize
    } else {
        (2 * t) as usize
    }
}

impl LevelPartition {
    /// Classify every vertex of `Z_{2^r}^2`. Level sets come out sorted
    /// ascending because vertices are scanned in index order.
    pub fn build(r: u32, budget: SizeBudget) -> Result<Self> {
        if r < 1 {
            return Err(Error::Domain("r must be >= 1".into()));
        }
        let n = 1u64
            .checked_shl(r)
            .ok_or_else(|| Error::Domain(format!("2^{r} overflows")))?;
        let count = checked_vertex_count(n, 2, budget)?;
        let mut levels = vec![Vec::new(); (2 * r + 1) as usize];
        for v in 0..count {
            levels[level_of(v % n, v / n, r)].push(v);
        }
        Ok(Self { r, levels })
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    pub fn cardinalities(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.len() as u64).collect()
    }

    /// `|P_i| = 2^(2r - i - 1)` for `i < 2r`, and `|P_2r| = 1`.
    pub fn expected_cardinality(r: u32, i: usize) -> u64 {
        if i == (2 * r) as usize {
            1
        } else {
            1u64 << (2 * r as u64 - i as u64 - 1)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("partition serialises")
    }
}

/// Check the level-arc structure of the sub-add graph mod `2^r`:
///
/// (a) every vertex of `P_i` (`i < 2r`) has its unique child in `P_{i+1}`,
///     and the origin's child is itself;
/// (b) a vertex is parentless exactly when it lies in `P_0`;
/// (c) for `r > 1`, every vertex outside `P_0` has exactly two parents;
/// (d) the two parents of the origin are itself and one `P_{2r-1}` vertex.
pub fn verify_level_arcs(r: u32, budget: SizeBudget) -> Result<bool> {
    let partition = LevelPartition::build(r, budget)?;
    let n = 1u64 << r;
    let graph = MoveGraph::build_with_budget(&subadd_matrix(Modulus::new(n)?), budget)?;

    let mut level = vec![0usize; graph.vertex_count() as usize];
    for (i, members) in partition.levels.iter().enumerate() {
        for &v in members {
            level[v as usize] = i;
        }
    }
    let top = (2 * r) as usize;
    let origin = encode_vertex(&[0, 0], n);

    // (a) child advances one level; the origin fixes itself.
    for v in 0..graph.vertex_count() {
        let child = graph.successor(v);
        if level[v as usize] == top {
            if child != v {
                return Ok(false);
            }
        } else if level[child as usize] != level[v as usize] + 1 {
            return Ok(false);
        }
    }

    let in_deg = graph.in_degrees();

    // (b) parentless <=> P_0.
    for v in 0..graph.vertex_count() {
        if (in_deg[v as usize] == 0) != (level[v as usize] == 0) {
            return Ok(false);
        }
    }

    // (c) two parents everywhere above P_0, for r > 1.
    if r > 1 {
        for v in 0..graph.vertex_count() {
            if level[v as usize] > 0 && in_deg[v as usize] != 2 {
                return Ok(false);
            }
        }
    }

    // (d) parents of the origin: itself plus one vertex of P_{2r-1}.
    let parents: Vec<VertexId> = (0..graph.vertex_count())
        .filter(|&v| graph.successor(v) == origin)
        .collect();
    if parents.len() != 2 || !parents.contains(&origin) {
        return Ok(false);
    }
    let other = parents.into_iter().find(|&v| v != origin);
    match other {
        Some(v) => Ok(level[v as usize] == top - 1),
        None => Ok(false),
    }
}

// ---------------------------------------------------------------------------
// Tree shape of the sub-add graph mod 2^r
// ---------------------------------------------------------------------------

/// Measured shape of the subgraph induced on `Z_{2^r}^2` minus the
/// origin, plus the two arcs that re-attach the origin.
///
/// The depth is always measured as the longest leaf-to-root distance,
/// never taken from a closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeReport {
    pub r: u32,
    pub depth: u32,
    pub is_inverted_pbt: bool,
    pub leaf_level_uniform: bool,
    pub root_vertex: VertexId,
    pub closing_arcs: [[VertexId; 2]; 2],
}

impl TreeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialises")
    }
}

/// Analyze the tree structure of the sub-add graph mod `2^r`.
pub fn tree_report(r: u32, budget: SizeBudget) -> Result<TreeReport> {
    if r < 1 {
        return Err(Error::Domain("r must be >= 1".into()));
    }
    let n = 1u64 << r;
    let graph = MoveGraph::build_with_budget(&subadd_matrix(Modulus::new(n)?), budget)?;
    let origin = encode_vertex(&[0, 0], n);
    let decomposition = graph.decompose();

    // The only cycle must be the self-loop at the origin; every other
    // vertex is then a tree vertex with tail >= 1.
    let loop_only = decomposition.cycles() == [vec![origin]];

    // The root is the unique childless tree vertex: its successor is the
    // origin. Tail length measures arcs to the loop, so distance to the
    // root is tail - 1.
    let tree_parents_of_origin: Vec<VertexId> = (0..graph.vertex_count())
        .filter(|&v| v != origin && graph.successor(v) == origin)
        .collect();
    let root = *tree_parents_of_origin.first().unwrap_or(&origin);
    let root_is_unique = tree_parents_of_origin.len() == 1;
    let expected_root = encode_vertex(&[n / 2, n / 2], n);

    let depth = decomposition.max_tail_length().saturating_sub(1);

    let in_deg = graph.in_degrees();
    let mut leaf_level_uniform = true;
    let mut parent_counts_ok = true;
    let mut tree_vertices = 0u64;
    for v in 0..graph.vertex_count() {
        if v == origin {
            continue;
        }
        tree_vertices += 1;
        // In-degree inside the tree equals the graph in-degree: no tree
        // vertex has the origin as a parent (the origin's child is itself).
        let deg = in_deg[v as usize];
        if deg == 0 {
            if decomposition.tail_length(v).saturating_sub(1) != depth {
                leaf_level_uniform = false;
            }
        } else if deg != 2 {
            parent_counts_ok = false;
        }
    }

    let perfect_count = match 1u64.checked_shl(depth + 1) {
        Some(p) => p - 1,
        None => 0,
    };
    let is_inverted_pbt = loop_only
        && root_is_unique
        && root == expected_root
        && parent_counts_ok
        && leaf_level_uniform
        && tree_vertices == perfect_count;

    Ok(TreeReport {
        r,
        depth,
        is_inverted_pbt,
        leaf_level_uniform,
        root_vertex: root,
        closing_arcs: [[root, origin], [origin, origin]],
    })
}

// ---------------------------------------------------------------------------
// Odd and mixed moduli
// ---------------------------------------------------------------------------

/// Verdict of the odd-modulus checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OddVerdict {
    /// The graph decomposed into cycles only (no tree vertices).
    pub all_cycles: bool,
    /// Every cycle length divides `4 * phi(n)`.
    pub max_divisor_ok: bool,
    /// The `Z_n`-order of the sub-add matrix.
    pub k: u64,
}

/// Check the odd-modulus structure of the sub-add graph: a disjoint
/// union of cycles whose lengths divide `4 * phi(n)`.
pub fn verify_odd_n(n: u64, budget: SizeBudget) -> Result<OddVerdict> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Domain(format!("n must be odd and >= 3, got {n}")));
    }
    let modulus = Modulus::new(n)?;
    let matrix = subadd_matrix(modulus);
    let graph = MoveGraph::build_with_budget(&matrix, budget)?;
    let decomposition = graph.decompose();

    let k = matrix.zn_order().ok_or_else(|| {
        Error::Internal(format!("sub-add matrix mod {n} must have finite order"))
    })?;
    let bound = 4 * euler_phi(n);
    Ok(OddVerdict {
        all_cycles: decomposition.is_all_cycles(),
        max_divisor_ok: decomposition.spectrum().keys().all(|len| bound % len == 0),
        k,
    })
}

/// Verdict of the mixed-modulus checks for `n = n1 * 2^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MixedVerdict {
    /// Copies of the mod-`2^k` graph located through the tensor witness.
    pub copies_found: u64,
    /// The graph has as many weak components as the mod-`n1` graph.
    pub component_match: bool,
}

/// Locate the `n1^2` vertex-disjoint copies of the mod-`2^k` sub-add
/// graph inside the mod-`n1*2^k` graph, and compare weak-component
/// counts with the mod-`n1` graph.
///
/// Copies are located constructively through the tensor map
/// `f(x, y) = n1*y + n2*x` with `x` fixed: the copy at `x` is
/// `{f(x, y)}` over all `y`, and its arcs land in the copy at `Mx`
/// exactly as the mod-`2^k` graph dictates. A copy counts only if every
/// one of its arcs matches that shape and it is disjoint from all others.
pub fn verify_mixed(n1: u64, k: u32, budget: SizeBudget) -> Result<MixedVerdict> {
    if n1 < 3 || n1 % 2 == 0 {
        return Err(Error::Domain(format!("n1 must be odd and >= 3, got {n1}")));
    }
    if k < 1 {
        return Err(Error::Domain("k must be >= 1".into()));
    }
    let n2 = 1u64
        .checked_shl(k)
        .ok_or_else(|| Error::Domain(format!("2^{k} overflows")))?;
    let n = n1
        .checked_mul(n2)
        .ok_or_else(|| Error::Domain(format!("{n1} * 2^{k} overflows")))?;
    checked_vertex_count(n, 2, budget)?;

    let g1 = MoveGraph::build_with_budget(&subadd_matrix(Modulus::new(n1)?), budget)?;
    let g2 = MoveGraph::build_with_budget(&subadd_matrix(Modulus::new(n2)?), budget)?;
    let big = MoveGraph::build_with_budget(&subadd_matrix(Modulus::new(n)?), budget)?;

    let combine = |xc: &[u64], yc: &[u64]| -> VertexId {
        let coords: Vec<u64> = xc
            .iter()
            .zip(yc)
            .map(|(&a, &b)| ((n1 as u128 * b as u128 + n2 as u128 * a as u128) % n as u128) as u64)
            .collect();
        encode_vertex(&coords, n)
    };

    let mut covered = vec![false; big.vertex_count() as usize];
    let mut copies_found = 0u64;
    for x in 0..g1.vertex_count() {
        let xc = g1.decode(x);
        let sx = g1.decode(g1.successor(x));
        let mut copy_ok = true;
        for y in 0..g2.vertex_count() {
            let v = combine(&xc, &g2.decode(y));
            if covered[v as usize] {
                copy_ok = false;
                break;
            }
            covered[v as usize] = true;
            let expected = combine(&sx, &g2.decode(g2.successor(y)));
            if big.successor(v) != expected {
                copy_ok = false;
                break;
            }
        }
        if copy_ok {
            copies_found += 1;
        }
    }

    Ok(MixedVerdict {
        copies_found,
        component_match: big.weak_components().count == g1.weak_components().count,
    })
}
