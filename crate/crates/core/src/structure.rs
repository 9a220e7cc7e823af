//! Degree, connectivity and block structure.

use crate::graph::{Adjacency, GraphError};

pub fn min_degree<A: Adjacency>(g: &A) -> Result<usize, GraphError> {
    (0..g.order())
        .map(|v| g.degree(v))
        .min()
        .ok_or(GraphError::Empty)
}

pub fn max_degree<A: Adjacency>(g: &A) -> Option<usize> {
    (0..g.order()).map(|v| g.degree(v)).max()
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn components<A: Adjacency>(g: &A) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected<A: Adjacency>(g: &A) -> bool {
    g.order() > 0 && components(g).len() == 1
}

/// Blocks (maximal 2-connected subgraphs, bridges, isolated vertices) and
/// cut vertices, computed with the Hopcroft–Tarjan lowpoint recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    /// Vertex sets of the blocks, each sorted.
    pub blocks: Vec<Vec<usize>>,
    /// Sorted cut vertices.
    pub cut_vertices: Vec<usize>,
}

pub fn block_structure<A: Adjacency>(g: &A) -> BlockStructure {
    let n = g.order();
    let mut st = BlockState {
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        time: 0,
        edge_stack: Vec::new(),
        blocks: Vec::new(),
        is_cut: vec![false; n],
    };
    for r in 0..n {
        if st.disc[r] != usize::MAX {
            continue;
        }
        if g.degree(r) == 0 {
            st.disc[r] = st.time;
            st.time += 1;
            st.blocks.push(vec![r]);
            continue;
        }
        let children = st.visit(g, r, usize::MAX);
        if children > 1 {
            st.is_cut[r] = true;
        }
    }
    let mut blocks = st.blocks;
    for b in &mut blocks {
        b.sort_unstable();
        b.dedup();
    }
    blocks.sort();
    BlockStructure {
        blocks,
        cut_vertices: (0..n).filter(|&v| st.is_cut[v]).collect(),
    }
}

struct BlockState {
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    edge_stack: Vec<(usize, usize)>,
    blocks: Vec<Vec<usize>>,
    is_cut: Vec<bool>,
}

impl BlockState {
    /// Returns the number of DFS children of `v`.
    fn visit<A: Adjacency>(&mut self, g: &A, v: usize, parent: usize) -> usize {
        self.disc[v] = self.time;
        self.low[v] = self.time;
        self.time += 1;
        let mut children = 0;
        let nbrs: Vec<usize> = g.neighbors(v).collect();
        for w in nbrs {
            if self.disc[w] == usize::MAX {
                children += 1;
                self.edge_stack.push((v, w));
                self.visit(g, w, v);
                self.low[v] = self.low[v].min(self.low[w]);
                if self.low[w] >= self.disc[v] {
                    if parent != usize::MAX {
                        self.is_cut[v] = true;
                    }
                    let mut block = Vec::new();
                    while let Some((a, b)) = self.edge_stack.pop() {
                        block.push(a);
                        block.push(b);
                        if (a, b) == (v, w) {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if w != parent && self.disc[w] < self.disc[v] {
                self.edge_stack.push((v, w));
                self.low[v] = self.low[v].min(self.disc[w]);
            }
        }
        children
    }
}

/// True iff the graph has at least three vertices, is connected and has no
/// cut vertex.
pub fn is_two_connected<A: Adjacency>(g: &A) -> bool {
    if g.order() < 3 || !is_connected(g) {
        return false;
    }
    block_structure(g).cut_vertices.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn degrees() {
        assert_eq!(min_degree(&Graph::complete(4).unwrap()), Ok(3));
        assert_eq!(min_degree(&Graph::cycle(5).unwrap()), Ok(2));
        assert_eq!(min_degree(&Graph::empty(0).unwrap()), Err(GraphError::Empty));
    }

    #[test]
    fn component_examples() {
        let k4 = Graph::complete(4).unwrap();
        let two = k4.disjoint_union(&k4).unwrap();
        let comps = components(&two);
        assert_eq!(comps, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]);
        assert_eq!(components(&Graph::empty(3).unwrap()).len(), 3);
        assert_eq!(components(&Graph::cycle(6).unwrap()).len(), 1);
    }

    #[test]
    fn two_connectivity() {
        assert!(is_two_connected(&Graph::cycle(4).unwrap()));
        assert!(!is_two_connected(&Graph::path(3).unwrap()));
        assert!(!is_two_connected(&Graph::complete(2).unwrap()));
        // bowtie: two triangles sharing vertex 0
        let bowtie =
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        assert!(!is_two_connected(&bowtie));
        let bs = block_structure(&bowtie);
        assert_eq!(bs.cut_vertices, vec![0]);
        assert_eq!(bs.blocks, vec![vec![0, 1, 2], vec![0, 3, 4]]);
    }

    #[test]
    fn blocks_of_a_path_are_its_edges() {
        let bs = block_structure(&Graph::path(4).unwrap());
        assert_eq!(bs.blocks, vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        assert_eq!(bs.cut_vertices, vec![1, 2]);
    }
}
