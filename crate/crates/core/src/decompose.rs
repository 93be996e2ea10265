//! Cycle/tree decomposition of a functional graph.
//!
//! Every vertex of a finite functional graph reaches a unique directed
//! cycle; the vertices off the cycles form in-trees hanging from them.
//! The decomposition records, for every vertex, the cycle its trajectory
//! enters and the distance to it, plus the cycle list and the spectrum
//! (cycle length -> multiplicity).

use std::collections::BTreeMap;

use crate::graph::VertexId;

const UNASSIGNED: u32 = u32::MAX;

/// Decomposition of a functional graph into cycles and in-trees.
///
/// Cycles are canonicalised: each is rotated so its minimal vertex leads,
/// and the list is sorted by that leader, so identical inputs produce
/// bit-identical output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    cycles: Vec<Vec<VertexId>>,
    tail_length: Vec<u32>,
    cycle_of: Vec<u32>,
    spectrum: BTreeMap<u64, u64>,
}

impl Decomposition {
    /// Decompose a successor map.
    ///
    /// Single pass with three-state marking (unvisited / on the current
    /// path / settled), fully iterative so arbitrarily long tails cannot
    /// overflow the stack. O(n) time and memory.
    pub fn of_successors(successor: &[VertexId]) -> Self {
        let n = successor.len();
        // 0 = unvisited, 1 = on current path, 2 = settled.
        let mut state = vec![0u8; n];
        let mut tail_length = vec![0u32; n];
        let mut cycle_of = vec![UNASSIGNED; n];
        let mut cycles: Vec<Vec<VertexId>> = Vec::new();

        let mut path: Vec<VertexId> = Vec::new();
        for start in 0..n as u64 {
            if state[start as usize] != 0 {
                continue;
            }
            path.clear();
            let mut v = start;
            while state[v as usize] == 0 {
                state[v as usize] = 1;
                path.push(v);
                v = successor[v as usize];
            }

            if state[v as usize] == 1 {
                // The walk closed on itself: v starts a new cycle. Collect
                // it by following successors until v comes back around.
                let id = cycles.len() as u32;
                let mut cycle = vec![v];
                let mut u = successor[v as usize];
                while u != v {
                    cycle.push(u);
                    u = successor[u as usize];
                }
                for &c in &cycle {
                    state[c as usize] = 2;
                    tail_length[c as usize] = 0;
                    cycle_of[c as usize] = id;
                }
                cycles.push(canonical_rotation(cycle));
            }

            // Settle the remaining path vertices back to front; each
            // successor is settled by the time its predecessor is visited.
            for &u in path.iter().rev() {
                if state[u as usize] == 2 {
                    continue;
                }
                let s = successor[u as usize] as usize;
                tail_length[u as usize] = tail_length[s] + 1;
                cycle_of[u as usize] = cycle_of[s];
                state[u as usize] = 2;
            }
        }

        // Deterministic order: sort cycles by leader and remap ids.
        let mut order: Vec<usize> = (0..cycles.len()).collect();
        order.sort_by_key(|&i| cycles[i][0]);
        let mut remap = vec![0u32; cycles.len()];
        for (new_id, &old_id) in order.iter().enumerate() {
            remap[old_id] = new_id as u32;
        }
        let mut sorted_cycles = vec![Vec::new(); cycles.len()];
        for (old_id, cycle) in cycles.into_iter().enumerate() {
            sorted_cycles[remap[old_id] as usize] = cycle;
        }
        for c in cycle_of.iter_mut() {
            *c = remap[*c as usize];
        }

        let mut spectrum = BTreeMap::new();
        for cycle in &sorted_cycles {
            *spectrum.entry(cycle.len() as u64).or_insert(0) += 1;
        }

        Self {
            cycles: sorted_cycles,
            tail_length,
            cycle_of,
            spectrum,
        }
    }

    /// The cycles, each in successor order starting from its minimal
    /// vertex, sorted by that leader.
    pub fn cycles(&self) -> &[Vec<VertexId>] {
        &self.cycles
    }

    /// Distance from each vertex to its cycle; zero exactly on cycles.
    pub fn tail_lengths(&self) -> &[u32] {
        &self.tail_length
    }

    pub fn tail_length(&self, v: VertexId) -> u32 {
        self.tail_length[v as usize]
    }

    /// Index into `cycles` of the cycle this vertex's trajectory enters.
    pub fn cycle_of(&self, v: VertexId) -> usize {
        self.cycle_of[v as usize] as usize
    }

    /// Map from cycle length to the number of cycles of that length.
    pub fn spectrum(&self) -> &BTreeMap<u64, u64> {
        &self.spectrum
    }

    pub fn is_on_cycle(&self, v: VertexId) -> bool {
        self.tail_length[v as usize] == 0
    }

    /// Length of the cycle the vertex's trajectory enters.
    pub fn cycle_length_of(&self, v: VertexId) -> u64 {
        self.cycles[self.cycle_of(v)].len() as u64
    }

    pub fn has_cycle_of_length(&self, ell: u64) -> bool {
        self.spectrum.contains_key(&ell)
    }

    pub fn on_cycle_count(&self) -> u64 {
        self.cycles.iter().map(|c| c.len() as u64).sum()
    }

    pub fn max_tail_length(&self) -> u32 {
        self.tail_length.iter().copied().max().unwrap_or(0)
    }

    /// True when the graph is a disjoint union of cycles.
    pub fn is_all_cycles(&self) -> bool {
        self.max_tail_length() == 0
    }
}

fn canonical_rotation(mut cycle: Vec<VertexId>) -> Vec<VertexId> {
    let min_pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, &v)| v)
        .map(|(i, _)| i)
        .expect("cycle is non-empty");
    cycle.rotate_left(min_pos);
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MoveGraph;
    use crate::modular::{ModMatrix, Modulus};

    fn subadd_graph(n: u64) -> MoveGraph {
        let m = ModMatrix::new(&[vec![1, -1], vec![1, 1]], Modulus::new(n).unwrap()).unwrap();
        MoveGraph::build(&m).unwrap()
    }

    fn perm3_graph(n: u64) -> MoveGraph {
        let m = ModMatrix::new(
            &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]],
            Modulus::new(n).unwrap(),
        )
        .unwrap();
        MoveGraph::build(&m).unwrap()
    }

    fn spectrum_of(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn subadd_mod_3_spectrum() {
        // One fixed point and one 8-cycle.
        let d = subadd_graph(3).decompose();
        assert_eq!(d.spectrum(), &spectrum_of(&[(1, 1), (8, 1)]));
        assert!(d.is_all_cycles());
    }

    #[test]
    fn subadd_mod_5_spectrum() {
        // One fixed point, two 2-cycles, five 4-cycles.
        let d = subadd_graph(5).decompose();
        assert_eq!(d.spectrum(), &spectrum_of(&[(1, 1), (2, 2), (4, 5)]));
    }

    #[test]
    fn perm3_mod_3_spectrum() {
        // Three self-loops at the constant vectors, eight 3-cycles.
        let d = perm3_graph(3).decompose();
        assert_eq!(d.spectrum(), &spectrum_of(&[(1, 3), (3, 8)]));
    }

    #[test]
    fn subadd_mod_4_is_a_tree_into_the_origin() {
        let g = subadd_graph(4);
        let d = g.decompose();
        assert_eq!(d.spectrum(), &spectrum_of(&[(1, 1)]));
        assert_eq!(d.cycles(), &[vec![0]]);
        // Every vertex drains to the self-loop at (0,0); the two vertices
        // deepest in the tree sit 4 arcs away.
        assert_eq!(d.max_tail_length(), 4);
        assert!((0..g.vertex_count()).all(|v| d.cycle_of(v) == 0));
    }

    #[test]
    fn cycles_are_rotated_to_minimal_leader_and_sorted() {
        let d = subadd_graph(5).decompose();
        let cycles = d.cycles();
        for cycle in cycles {
            let min = cycle.iter().min().unwrap();
            assert_eq!(&cycle[0], min);
        }
        for pair in cycles.windows(2) {
            assert!(pair[0][0] < pair[1][0]);
        }
    }

    #[test]
    fn cycles_follow_successor_order() {
        let g = subadd_graph(5);
        let d = g.decompose();
        for cycle in d.cycles() {
            for i in 0..cycle.len() {
                let next = cycle[(i + 1) % cycle.len()];
                assert_eq!(g.successor(cycle[i]), next);
            }
        }
    }

    #[test]
    fn cycles_are_pairwise_disjoint_and_spectrum_totals_match() {
        for g in [subadd_graph(5), subadd_graph(12), perm3_graph(4)] {
            let d = g.decompose();
            let mut seen = vec![false; g.vertex_count() as usize];
            for cycle in d.cycles() {
                for &v in cycle {
                    assert!(!seen[v as usize], "vertex {v} appears in two cycles");
                    seen[v as usize] = true;
                }
            }
            let on_cycle = seen.iter().filter(|&&b| b).count() as u64;
            let total: u64 = d.spectrum().iter().map(|(len, count)| len * count).sum();
            assert_eq!(total, on_cycle);
            for v in 0..g.vertex_count() {
                assert_eq!(d.tail_length(v) == 0, seen[v as usize]);
            }
        }
    }

    #[test]
    fn tail_lengths_count_arcs_to_the_cycle() {
        for g in [subadd_graph(4), subadd_graph(12)] {
            let d = g.decompose();
            for v in 0..g.vertex_count() {
                let t = d.tail_length(v);
                if t > 0 {
                    assert_eq!(d.tail_length(g.successor(v)), t - 1);
                } else {
                    assert!(d.is_on_cycle(g.successor(v)));
                }
            }
        }
    }

    #[test]
    fn cycle_length_lookup() {
        assert!(subadd_graph(3).decompose().has_cycle_of_length(8));
        let d5 = subadd_graph(5).decompose();
        assert!(d5.has_cycle_of_length(4));
        assert!(!d5.has_cycle_of_length(3));
    }

    #[test]
    fn decomposition_is_deterministic() {
        let a = subadd_graph(12).decompose();
        let b = subadd_graph(12).decompose();
        assert_eq!(a, b);
    }

    #[test]
    fn long_tail_does_not_recurse() {
        // A single path 0 <- 1 <- 2 <- ... with a self-loop at 0: tails
        // up to 200k exercise the iterative settle loop.
        let n = 200_000u64;
        let successor: Vec<VertexId> = (0..n).map(|v| v.saturating_sub(1)).collect();
        let d = Decomposition::of_successors(&successor);
        assert_eq!(d.cycles(), &[vec![0]]);
        assert_eq!(d.max_tail_length(), (n - 1) as u32);
    }
}
