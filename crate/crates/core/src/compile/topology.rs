use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::CompileError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TopologyKind {
    Linear,
    Circular,
    GridNn,
    AllToAll,
}

impl TopologyKind {
    pub const ALL: [TopologyKind; 4] =
        [TopologyKind::Linear, TopologyKind::Circular, TopologyKind::GridNn, TopologyKind::AllToAll];

    pub fn parse(s: &str) -> Result<Self, CompileError> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "linear" => Ok(TopologyKind::Linear),
            "circular" | "ring" => Ok(TopologyKind::Circular),
            "grid" | "grid_nn" | "nearest_neighbor" => Ok(TopologyKind::GridNn),
            "all_to_all" | "full" => Ok(TopologyKind::AllToAll),
            other => Err(CompileError::UnknownTopology(other.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TopologyKind::Linear => "linear",
            TopologyKind::Circular => "circular",
            TopologyKind::GridNn => "grid_nn",
            TopologyKind::AllToAll => "all_to_all",
        }
    }
}

/// Physical qubit connectivity.
///
/// `grid_nn` places site `i` at row `i / cols`, column `i % cols` of the
/// smallest near-square grid (`cols = ceil(sqrt(n))`) and connects sites at
/// Manhattan distance one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Topology {
    pub kind: TopologyKind,
    pub num_qubits: usize,
}

impl Topology {
    pub fn new(kind: TopologyKind, num_qubits: usize) -> Result<Self, CompileError> {
        if num_qubits == 0 {
            return Err(CompileError::EmptyTopology);
        }
        Ok(Topology { kind, num_qubits })
    }

    pub fn linear(n: usize) -> Self {
        Topology { kind: TopologyKind::Linear, num_qubits: n }
    }

    pub fn circular(n: usize) -> Self {
        Topology { kind: TopologyKind::Circular, num_qubits: n }
    }

    pub fn grid(n: usize) -> Self {
        Topology { kind: TopologyKind::GridNn, num_qubits: n }
    }

    pub fn all_to_all(n: usize) -> Self {
        Topology { kind: TopologyKind::AllToAll, num_qubits: n }
    }

    /// `(rows, cols)` of the grid layout.
    pub fn grid_shape(&self) -> (usize, usize) {
        let n = self.num_qubits;
        let mut cols = (n as f64).sqrt().ceil() as usize;
        while cols * cols < n {
            cols += 1;
        }
        let cols = cols.max(1);
        (n.div_ceil(cols), cols)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.num_qubits;
        if i == j || i >= n || j >= n {
            return false;
        }
        match self.kind {
            TopologyKind::Linear => i.abs_diff(j) == 1,
            TopologyKind::Circular => {
                let d = i.abs_diff(j);
                d == 1 || d == n - 1
            }
            TopologyKind::GridNn => {
                let (_, cols) = self.grid_shape();
                let (ri, ci) = (i / cols, i % cols);
                let (rj, cj) = (j / cols, j % cols);
                ri.abs_diff(rj) + ci.abs_diff(cj) == 1
            }
            TopologyKind::AllToAll => true,
        }
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.num_qubits).filter(|&j| self.adjacent(i, j)).collect()
    }

    /// Shortest adjacency path from `from` to `to`, both endpoints included.
    /// Ties resolve toward lower-indexed neighbours.
    pub fn shortest_path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let n = self.num_qubits;
        if from >= n || to >= n {
            return None;
        }
        let mut prev = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(u) = queue.pop_front() {
            if u == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn adjacency_rules() {
        let lin = Topology::linear(3);
        assert!(lin.adjacent(0, 1) && !lin.adjacent(0, 2));
        let ring = Topology::circular(3);
        assert!(ring.adjacent(0, 2));
        assert!(!Topology::circular(5).adjacent(0, 2));
        let grid = Topology::grid(5);
        assert_eq!(grid.grid_shape(), (2, 3));
        assert!(grid.adjacent(0, 3) && grid.adjacent(1, 4) && !grid.adjacent(2, 3));
        assert_eq!(Topology::grid(4).grid_shape(), (2, 2));
        assert!(Topology::all_to_all(4).adjacent(0, 3));
        assert!(!Topology::all_to_all(4).adjacent(2, 2));
    }

    #[test]
    fn paths() {
        assert_eq!(Topology::linear(4).shortest_path(0, 3), Some(vec![0, 1, 2, 3]));
        assert_eq!(Topology::circular(5).shortest_path(0, 3), Some(vec![0, 4, 3]));
        assert_eq!(Topology::grid(9).shortest_path(0, 8).map(|p| p.len()), Some(5));
    }

    proptest! {
        #[test]
        fn adjacency_is_symmetric_and_irreflexive(n in 1usize..20, i in 0usize..20, j in 0usize..20) {
            for kind in TopologyKind::ALL {
                let t = Topology::new(kind, n).unwrap();
                prop_assert_eq!(t.adjacent(i, j), t.adjacent(j, i));
                prop_assert!(!t.adjacent(i, i));
            }
        }

        #[test]
        fn every_topology_is_connected(n in 1usize..25) {
            for kind in TopologyKind::ALL {
                let t = Topology::new(kind, n).unwrap();
                for j in 0..n {
                    prop_assert!(t.shortest_path(0, j).is_some());
                }
            }
        }
    }
}
