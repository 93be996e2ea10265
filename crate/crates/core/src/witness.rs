//! Explicit isomorphism witnesses and the structure-theorem checks.
//!
//! A witness is never trusted: every constructor validates the map it
//! returns by exhaustive arc checks over the whole vertex set, so a
//! returned witness is a verified proof object. Validation failure in a
//! constructor indicates a bug and surfaces as an internal error.

use crate::decompose::Decomposition;
use crate::error::{Error, Result};
use crate::graph::{
    checked_vertex_count, decode_vertex, encode_vertex, MoveGraph, SizeBudget, VertexId,
};
use crate::modular::{adjugate_i128, det_i128, gcd, IntMatrix, ModMatrix, Modulus};

/// An explicit isomorphism between two functional graphs, stored as the
/// two successor arrays plus the vertex bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    domain_successor: Vec<VertexId>,
    codomain_successor: Vec<VertexId>,
    vertex_map: Vec<VertexId>,
}

impl IsoWitness {
    pub fn new(
        domain_successor: Vec<VertexId>,
        codomain_successor: Vec<VertexId>,
        vertex_map: Vec<VertexId>,
    ) -> Self {
        Self {
            domain_successor,
            codomain_successor,
            vertex_map,
        }
    }

    pub fn vertex_map(&self) -> &[VertexId] {
        &self.vertex_map
    }

    pub fn domain_successors(&self) -> &[VertexId] {
        &self.domain_successor
    }

    pub fn codomain_successors(&self) -> &[VertexId] {
        &self.codomain_successor
    }

    /// Exhaustive validation: the map is a bijection and preserves arcs
    /// and non-arcs in both directions.
    ///
    /// For functional graphs this is checked as: `f` is a bijection,
    /// `f(succ(v)) = succ(f(v))` for every domain vertex, and the same
    /// for `f^{-1}` on every codomain vertex. Every arc on both sides is
    /// covered; nothing is sampled.
    pub fn validate(&self) -> Result<()> {
        let n = self.domain_successor.len();
        if self.codomain_successor.len() != n || self.vertex_map.len() != n {
            return Err(Error::Contract(
                "witness components disagree on vertex count".into(),
            ));
        }
        let mut inverse = vec![u64::MAX; n];
        for (v, &image) in self.vertex_map.iter().enumerate() {
            if image as usize >= n {
                return Err(Error::Internal(format!(
                    "vertex {v} maps outside the codomain"
                )));
            }
            if inverse[image as usize] != u64::MAX {
                return Err(Error::Internal(format!(
                    "vertex map is not injective at image {image}"
                )));
            }
            inverse[image as usize] = v as u64;
        }
        for v in 0..n {
            let mapped_succ = self.vertex_map[self.domain_successor[v] as usize];
            let succ_mapped = self.codomain_successor[self.vertex_map[v] as usize];
            if mapped_succ != succ_mapped {
                return Err(Error::Internal(format!(
                    "arc at domain vertex {v} is not preserved"
                )));
            }
        }
        for w in 0..n {
            let v = inverse[w];
            let pulled = inverse[self.codomain_successor[w] as usize];
            if self.domain_successor[v as usize] != pulled {
                return Err(Error::Internal(format!(
                    "arc at codomain vertex {w} is not reflected"
                )));
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Cycle-structure checks
// ---------------------------------------------------------------------------

/// Check that every cycle length divides the `Z_n`-order `k` and that no
/// vertex sits on a tree.
///
/// The caller asserts `k` is the `Z_n`-order of the graph's matrix; this
/// is re-derived and a mismatch (or a matrix with no order up to `k`) is
/// a precondition error.
pub fn verify_cycle_divisibility(graph: &MoveGraph, k: u64) -> Result<bool> {
    match graph.matrix().zn_order_capped(k.max(1)) {
        None => Err(Error::Precondition(format!(
            "matrix has no Z_n-order within {k}"
        ))),
        Some(order) if order != k => Err(Error::Precondition(format!(
            "stated order {k} differs from computed order {order}"
        ))),
        Some(_) => {
            let d = graph.decompose();
            Ok(d.is_all_cycles() && d.spectrum().keys().all(|len| k % len == 0))
        }
    }
}

/// Check that `x` and `s*x` lie on cycles of equal length for every
/// on-cycle vertex `x` (`gcd(s, n) = 1` required).
pub fn verify_scaling_property(graph: &MoveGraph, s: u64) -> Result<bool> {
    let n = graph.modulus();
    if gcd(s % n, n) != 1 {
        return Err(Error::Domain(format!("gcd({s}, {n}) != 1")));
    }
    let d = graph.decompose();
    for v in 0..graph.vertex_count() {
        if !d.is_on_cycle(v) {
            continue;
        }
        let coords = graph.decode(v);
        let scaled: Vec<u64> = coords
            .iter()
            .map(|&c| ((c as u128 * s as u128) % n as u128) as u64)
            .collect();
        let w = graph.encode(&scaled);
        if !d.is_on_cycle(w) || d.cycle_length_of(v) != d.cycle_length_of(w) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Embeddings and isomorphism witnesses
// ---------------------------------------------------------------------------

/// Check that `v -> n2*v` embeds the move graph mod `n1` into the move
/// graph mod `n1*n2` as an induced subgraph: injective, and over all
/// vertex pairs of the small graph, arcs and non-arcs agree with the
/// image.
///
/// `n2 = 1` is the identity embedding and is allowed.
pub fn verify_embedding(
    matrix: &IntMatrix,
    n1: u64,
    n2: u64,
    budget: SizeBudget,
) -> Result<bool> {
    if n2 == 0 {
        return Err(Error::Domain("n2 must be >= 1".into()));
    }
    let small = MoveGraph::build_with_budget(&matrix.reduce(Modulus::new(n1)?), budget)?;
    let big_modulus = Modulus::new(n1.checked_mul(n2).ok_or_else(|| {
        Error::Domain(format!("product {n1} * {n2} overflows"))
    })?)?;
    let big = MoveGraph::build_with_budget(&matrix.reduce(big_modulus), budget)?;

    let nv = small.vertex_count();
    let mut image = vec![0u64; nv as usize];
    let mut seen = vec![false; big.vertex_count() as usize];
    for v in 0..nv {
        let coords: Vec<u64> = small.decode(v).iter().map(|&c| c * n2).collect();
        let f = big.encode(&coords);
        if seen[f as usize] {
            return Ok(false); // not injective
        }
        seen[f as usize] = true;
        image[v as usize] = f;
    }
    for u in 0..nv {
        for v in 0..nv {
            let arc_small = small.has_arc(u, v);
            let arc_big = big.has_arc(image[u as usize], image[v as usize]);
            if arc_small != arc_big {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The successor map of the tensor product of two functional graphs,
/// on pair indices `x * |g2| + y`.
pub fn tensor_product_successors(g1: &MoveGraph, g2: &MoveGraph) -> Vec<VertexId> {
    let n2 = g2.vertex_count();
    let mut succ = Vec::with_capacity((g1.vertex_count() * n2) as usize);
    for x in 0..g1.vertex_count() {
        let sx = g1.successor(x);
        for y in 0..n2 {
            succ.push(sx * n2 + g2.successor(y));
        }
    }
    succ
}

/// The explicit isomorphism `f(x, y) = n1*y + n2*x` from the tensor
/// product of the move graphs mod `n1` and mod `n2` onto the move graph
/// mod `n1*n2`, for coprime `n1, n2 >= 2`. The returned witness has been
/// validated exhaustively.
pub fn tensor_iso_witness(
    matrix: &IntMatrix,
    n1: u64,
    n2: u64,
    budget: SizeBudget,
) -> Result<IsoWitness> {
    if gcd(n1, n2) != 1 {
        return Err(Error::Domain(format!("gcd({n1}, {n2}) != 1")));
    }
    let m1 = Modulus::new(n1)?;
    let m2 = Modulus::new(n2)?;
    let product = n1.checked_mul(n2).ok_or_else(|| {
        Error::Domain(format!("product {n1} * {n2} overflows"))
    })?;
    let m12 = Modulus::new(product)?;
    checked_vertex_count(product, matrix.dim(), budget)?;

    let g1 = MoveGraph::build_with_budget(&matrix.reduce(m1), budget)?;
    let g2 = MoveGraph::build_with_budget(&matrix.reduce(m2), budget)?;
    let g12 = MoveGraph::build_with_budget(&matrix.reduce(m12), budget)?;

    let dim = matrix.dim();
    let nv2 = g2.vertex_count();
    let mut vertex_map = vec![0u64; (g1.vertex_count() * nv2) as usize];
    for x in 0..g1.vertex_count() {
        let xc = decode_vertex(x, n1, dim);
        for y in 0..nv2 {
            let yc = decode_vertex(y, n2, dim);
            let combined: Vec<u64> = xc
                .iter()
                .zip(&yc)
                .map(|(&a, &b)| ((n1 as u128 * b as u128 + n2 as u128 * a as u128)
                    % product as u128) as u64)
                .collect();
            vertex_map[(x * nv2 + y) as usize] = encode_vertex(&combined, product);
        }
    }

    let witness = IsoWitness::new(
        tensor_product_successors(&g1, &g2),
        g12.successors().to_vec(),
        vertex_map,
    );
    witness.validate()?;
    Ok(witness)
}

/// Conjugate `m1` by `s`: computes `s^{-1} m1 s` exactly via adjugate
/// division, using the canonical entries of `m1` as integer
/// representatives. Rejects singular `s` and non-integral results.
fn conjugate_exact(m1: &ModMatrix, s: &IntMatrix) -> Result<IntMatrix> {
    let dim = m1.dim();
    if s.dim() != dim {
        return Err(Error::Contract(format!(
            "dimension mismatch: {} vs {}",
            dim,
            s.dim()
        )));
    }
    let s_entries: Vec<i128> = s.rows().iter().flatten().map(|&e| e as i128).collect();
    let det = det_i128(&s_entries, dim);
    if det == 0 {
        return Err(Error::Domain("S is not invertible over the rationals".into()));
    }
    let adj = adjugate_i128(&s_entries, dim);
    let m1_entries: Vec<i128> = m1.rows().iter().flatten().map(|&e| e as i128).collect();

    // adj(S) * M1 * S, then divide every entry by det(S).
    let left = mat_mul_i128(&adj, &m1_entries, dim);
    let full = mat_mul_i128(&left, &s_entries, dim);
    let mut rows = vec![vec![0i64; dim]; dim];
    for r in 0..dim {
        for c in 0..dim {
            let value = full[r * dim + c];
            if value % det != 0 {
                return Err(Error::Domain(
                    "S^{-1} M1 S is not integer-entried".into(),
                ));
            }
            let q = value / det;
            rows[r][c] = i64::try_from(q).map_err(|_| {
                Error::Domain("conjugated entry exceeds i64".into())
            })?;
        }
    }
    IntMatrix::new(&rows)
}

fn mat_mul_i128(a: &[i128], b: &[i128], dim: usize) -> Vec<i128> {
    let mut out = vec![0i128; dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            let mut acc = 0i128;
            for k in 0..dim {
                acc += a[r * dim + k] * b[k * dim + c];
            }
            out[r * dim + c] = acc;
        }
    }
    out
}

/// The similarity witness of an integer conjugation: for `m2 = s^{-1} m1 s`
/// with `gcd(n, det s) = 1`, the map `v -> S v^T` is an isomorphism from
/// the move graph of `m2` to the move graph of `m1` (both mod `n`). The
/// conjugate is computed exactly; the witness is validated exhaustively.
pub fn similarity_iso_witness(
    m1: &ModMatrix,
    s: &IntMatrix,
    budget: SizeBudget,
) -> Result<IsoWitness> {
    let modulus = m1.modulus();
    let n = modulus.get();
    let det_s = {
        let s_entries: Vec<i128> = s.rows().iter().flatten().map(|&e| e as i128).collect();
        det_i128(&s_entries, s.dim())
    };
    if gcd((det_s.unsigned_abs() % n as u128) as u64, n) != 1 {
        return Err(Error::Domain(format!(
            "gcd(n, det S) != 1: n = {n}, det S = {det_s}"
        )));
    }
    let m2 = conjugate_exact(m1, s)?.reduce(modulus);

    let g1 = MoveGraph::build_with_budget(m1, budget)?;
    let g2 = MoveGraph::build_with_budget(&m2, budget)?;
    let s_reduced = s.reduce(modulus);

    let mut vertex_map = vec![0u64; g2.vertex_count() as usize];
    for (v, slot) in vertex_map.iter_mut().enumerate() {
        let coords = g2.decode(v as u64);
        let dim = coords.len();
        let mapped: Vec<u64> = (0..dim)
            .map(|r| {
                let mut acc: u128 = 0;
                for (c, &coord) in coords.iter().enumerate() {
                    acc += s_reduced.entry(r, c) as u128 * coord as u128;
                }
                (acc % n as u128) as u64
            })
            .collect();
        *slot = g1.encode(&mapped);
    }

    let witness = IsoWitness::new(
        g2.successors().to_vec(),
        g1.successors().to_vec(),
        vertex_map,
    );
    witness.validate()?;
    Ok(witness)
}

/// Linear-combination closure of cycle vertices: for on-cycle `x`, `y`,
/// the vertex `x + y` lies on a cycle whose length divides
/// `lcm(len(x), len(y))`. Checked over all pairs.
pub fn verify_linear_combination_closure(graph: &MoveGraph) -> bool {
    let d = graph.decompose();
    if !d.is_all_cycles() {
        return false;
    }
    let n = graph.modulus();
    let nv = graph.vertex_count();
    let lcm = |a: u64, b: u64| a / gcd(a, b) * b;
    for x in 0..nv {
        let xc = graph.decode(x);
        for y in 0..nv {
            let yc = graph.decode(y);
            let sum: Vec<u64> = xc.iter().zip(&yc).map(|(&a, &b)| (a + b) % n).collect();
            let z = graph.encode(&sum);
            let bound = lcm(d.cycle_length_of(x), d.cycle_length_of(y));
            if bound % d.cycle_length_of(z) != 0 {
                return false;
            }
        }
    }
    true
}

/// Spectrum of the tensor product of two move graphs, decomposed
/// directly from the product successor map (an independent route to the
/// spectrum of the graph mod `n1*n2` when `gcd(n1, n2) = 1`).
pub fn tensor_product_decomposition(g1: &MoveGraph, g2: &MoveGraph) -> Decomposition {
    Decomposition::of_successors(&tensor_product_successors(g1, g2))
}
