//! Gallai graphs, Gallai indices and Gallai simplicial complexes.
//!
//! The Gallai graph of a simple graph has one vertex per edge; two edges are
//! adjacent when they are incident but the third pair of their endpoints is
//! not an edge (they do not span a triangle). Each adjacent pair contributes
//! its three endpoints as a Gallai index, each isolated Gallai vertex
//! contributes its two; the Gallai simplicial complex is generated by those
//! index sets. For trees the complex carries an explicit shelling assembled
//! from a path decomposition.

use thiserror::Error;

use crate::complex::{ComplexError, Face, SimplicialComplex};
use crate::shelling::{
    check_order_definition, check_order_residuals, OrderVerdict, ShellingCertificate,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge at vertex {vertex}")]
    LoopEdge { vertex: u32 },
    #[error("duplicate edge {u} {v}")]
    DuplicateEdge { u: u32, v: u32 },
    #[error("vertex {vertex} is outside the declared range 1..={n}")]
    VertexOutOfRange { vertex: u32, n: u32 },
    #[error("graph has no edges")]
    Edgeless,
    #[error("graph is not a tree")]
    NotATree,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GallaiError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A finite simple graph on the vertex set `1..=n`.
///
/// Edges are stored as ordered pairs `(u, v)` with `u < v`, sorted
/// lexicographically; that sort is the canonical edge order used to label
/// Gallai-graph vertices. `n = 0` is allowed (the Gallai graph of an
/// edgeless graph has no vertices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    edges: Vec<(u32, u32)>,
}

impl Graph {
    pub fn new<I>(n: u32, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut normalized: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::LoopEdge { vertex: a });
            }
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge {
                u: w[0].0,
                v: w[0].1,
            });
        }
        Ok(Self {
            n,
            edges: normalized,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v && self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Neighbor labels in ascending order.
    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let adjacency = self.adjacency();
        let mut seen = vec![false; self.n as usize + 1];
        let mut stack = vec![1u32];
        seen[1] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == self.n
    }

    /// Connected and acyclic.
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.edges.len() as u32 == self.n - 1
    }

    /// Adjacency lists indexed by vertex label (index 0 unused), neighbors
    /// ascending.
    fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adjacency = vec![Vec::new(); self.n as usize + 1];
        for &(u, v) in &self.edges {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        adjacency
    }
}

/// The Gallai graph together with the canonical labeling of its vertices by
/// the source graph's edges: vertex `i` of [`Self::graph`] is
/// `vertex_edges[i - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GallaiGraph {
    pub graph: Graph,
    pub vertex_edges: Vec<(u32, u32)>,
}

/// Builds the Gallai graph: one vertex per edge of `g` in canonical edge
/// order; two vertices adjacent iff the edges share an endpoint and the
/// remaining pair of endpoints is not an edge of `g`.
pub fn gallai_graph(g: &Graph) -> GallaiGraph {
    let edges = g.edges();
    let m = edges.len();
    let mut gamma_edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if let Some((shared, x, y)) = incident(edges[i], edges[j]) {
                debug_assert!(shared != x && shared != y);
                if !g.has_edge(x, y) {
                    gamma_edges.push((i as u32 + 1, j as u32 + 1));
                }
            }
        }
    }
    GallaiGraph {
        graph: Graph::new(m as u32, gamma_edges).expect("indices in range"),
        vertex_edges: edges.to_vec(),
    }
}

/// Shared endpoint and the two remaining endpoints of an incident edge
/// pair, or `None` when the edges are disjoint.
fn incident(e: (u32, u32), f: (u32, u32)) -> Option<(u32, u32, u32)> {
    let (a, b) = e;
    let (c, d) = f;
    if a == c {
        Some((a, b, d))
    } else if a == d {
        Some((a, b, c))
    } else if b == c {
        Some((b, a, d))
    } else if b == d {
        Some((b, a, c))
    } else {
        None
    }
}

/// The set of Gallai indices: 3-sets from adjacent Gallai-vertex pairs and
/// 2-sets from isolated Gallai vertices, canonically sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GallaiIndexSet {
    members: Vec<Face>,
}

impl GallaiIndexSet {
    pub fn members(&self) -> &[Face] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn triples(&self) -> impl Iterator<Item = Face> + '_ {
        self.members.iter().copied().filter(|f| f.size() == 3)
    }

    pub fn pairs(&self) -> impl Iterator<Item = Face> + '_ {
        self.members.iter().copied().filter(|f| f.size() == 2)
    }
}

pub fn gallai_indices(g: &Graph) -> Result<GallaiIndexSet, GallaiError> {
    if g.edge_count() == 0 {
        return Err(GraphError::Edgeless.into());
    }
    let gallai = gallai_graph(g);
    let mut members: Vec<Face> = Vec::new();
    let mut isolated = vec![true; gallai.vertex_edges.len()];
    for &(i, j) in gallai.graph.edges() {
        isolated[i as usize - 1] = false;
        isolated[j as usize - 1] = false;
        let (a, b) = gallai.vertex_edges[i as usize - 1];
        let (c, d) = gallai.vertex_edges[j as usize - 1];
        members.push(Face::from_vertices([a, b, c, d])?);
    }
    for (idx, &(u, v)) in gallai.vertex_edges.iter().enumerate() {
        if isolated[idx] {
            members.push(Face::from_vertices([u, v])?);
        }
    }
    members.sort();
    members.dedup();
    Ok(GallaiIndexSet { members })
}

/// The Gallai simplicial complex over the source graph's vertex set,
/// generated by the Gallai indices. A 2-set survives as a facet only when no
/// 3-set of the index set contains it.
pub fn gallai_complex(g: &Graph) -> Result<SimplicialComplex, GallaiError> {
    let indices = gallai_indices(g)?;
    Ok(SimplicialComplex::new(
        g.n(),
        indices.members().iter().copied(),
    )?)
}

/// A tree's Gallai complex together with a shelling order of its facets.
#[derive(Clone, Debug)]
pub struct TreeShelling {
    pub complex: SimplicialComplex,
    pub certificate: ShellingCertificate,
}

/// Constructs a shelling of the Gallai complex of a tree.
///
/// The facet order follows a path decomposition: a longest leaf-to-leaf path
/// contributes its consecutive vertex triples first; every further path
/// opens at an already covered vertex through a new edge, pairing that edge
/// with all previously processed edges there (the junction triples) before
/// walking on towards a leaf. Junctions are drained depth-first in discovery
/// order. The resulting order is validated against the definitional oracle
/// before it is returned.
pub fn tree_shelling(tree: &Graph) -> Result<TreeShelling, GallaiError> {
    if !tree.is_tree() {
        return Err(GraphError::NotATree.into());
    }
    let complex = gallai_complex(tree)?;

    if tree.edge_count() == 1 {
        let certificate = ShellingCertificate {
            order: vec![1],
            steps: Vec::new(),
        };
        debug_assert!(check_order_definition(&complex, &certificate.order).unwrap());
        return Ok(TreeShelling {
            complex,
            certificate,
        });
    }

    let faces = path_decomposition_order(tree);
    debug_assert_eq!(faces.len(), complex.facet_count());
    let order: Vec<usize> = faces
        .iter()
        .map(|f| {
            complex
                .facets()
                .binary_search(f)
                .expect("emitted triple is a facet")
                + 1
        })
        .collect();

    let certificate =
        match check_order_residuals(&complex, &order).expect("path order is a permutation") {
            OrderVerdict::Shelling(cert) => cert,
            OrderVerdict::FailsAt { step } => {
                panic!("tree path order lost linear residuals at step {step}")
            }
        };
    let replay = check_order_definition(&complex, &certificate.order)
        .expect("certificate order is a permutation");
    assert!(replay, "tree shelling failed the definitional oracle");
    Ok(TreeShelling {
        complex,
        certificate,
    })
}

/// Facet triples of the tree's Gallai complex in path-decomposition order.
fn path_decomposition_order(tree: &Graph) -> Vec<Face> {
    let adjacency = tree.adjacency();
    let trunk = longest_path(tree, &adjacency);

    let mut walker = PathWalker {
        adjacency: &adjacency,
        processed_at: vec![Vec::new(); tree.n() as usize + 1],
        faces: Vec::new(),
    };
    for pair in trunk.windows(2) {
        walker.process_edge(pair[0], pair[1]);
    }
    for &v in &trunk {
        walker.drain_junctions(v);
    }
    walker.faces
}

struct PathWalker<'a> {
    adjacency: &'a [Vec<u32>],
    /// Other endpoints of already processed edges at each vertex, in
    /// processing order.
    processed_at: Vec<Vec<u32>>,
    faces: Vec<Face>,
}

impl PathWalker<'_> {
    /// Processes the new edge `(a, b)` whose endpoint `a` is covered: emits
    /// one triple pairing it with every previously processed edge at `a`.
    fn process_edge(&mut self, a: u32, b: u32) {
        for idx in 0..self.processed_at[a as usize].len() {
            let x = self.processed_at[a as usize][idx];
            self.faces
                .push(Face::from_vertices([x, a, b]).expect("labels validated"));
        }
        self.processed_at[a as usize].push(b);
        self.processed_at[b as usize].push(a);
    }

    fn next_unprocessed(&self, v: u32) -> Option<u32> {
        self.adjacency[v as usize]
            .iter()
            .copied()
            .find(|&w| !self.processed_at[v as usize].contains(&w))
    }

    /// Opens every remaining branch at `v`: walks each new path down to a
    /// leaf, then recursively drains the junctions the path created.
    fn drain_junctions(&mut self, v: u32) {
        while let Some(first) = self.next_unprocessed(v) {
            let mut path = vec![v, first];
            self.process_edge(v, first);
            let mut current = first;
            while let Some(next) = self.next_unprocessed(current) {
                self.process_edge(current, next);
                path.push(next);
                current = next;
            }
            for &u in &path[1..] {
                self.drain_junctions(u);
            }
        }
    }
}

/// Longest leaf-to-leaf path by double sweep, oriented to start at the
/// smaller endpoint; distance ties go to the smaller vertex label.
fn longest_path(tree: &Graph, adjacency: &[Vec<u32>]) -> Vec<u32> {
    let far = |start: u32| -> (u32, Vec<u32>) {
        let mut parent = vec![0u32; tree.n() as usize + 1];
        let mut dist = vec![u32::MAX; tree.n() as usize + 1];
        dist[start as usize] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        let mut best = start;
        while let Some(v) = queue.pop_front() {
            if dist[v as usize] > dist[best as usize]
                || (dist[v as usize] == dist[best as usize] && v < best)
            {
                best = v;
            }
            for &w in &adjacency[v as usize] {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    parent[w as usize] = v;
                    queue.push_back(w);
                }
            }
        }
        (best, parent)
    };

    let (u, _) = far(1);
    let (v, parent) = far(u);
    let mut path = vec![v];
    let mut current = v;
    while current != u {
        current = parent[current as usize];
        path.push(current);
    }
    // path currently runs v -> u; orient from the smaller endpoint
    if path[0] > *path.last().expect("nonempty path") {
        path.reverse();
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    

    fn face(vs: &[u32]) -> Face {
        Face::from_vertices(vs.iter().copied()).unwrap()
    }

    fn graph(n: u32, edges: &[(u32, u32)]) -> Graph {
        Graph::new(n, edges.iter().copied()).unwrap()
    }

    /// Hexagon 1-2-3-4-5-6 with chords {3,5} and {2,6}; its two triangles
    /// are {1,2,6} and {3,4,5}.
    fn hexagon_with_chords() -> Graph {
        graph(
            6,
            &[
                (1, 6),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (3, 5),
                (2, 6),
            ],
        )
    }

    /// Two triangles sharing vertex 3 plus the pendant edge {5,6}.
    fn two_triangles_pendant() -> Graph {
        graph(6, &[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5), (5, 6)])
    }

    #[test]
    fn graph_construction_and_validation() {
        let g = graph(3, &[(3, 1), (1, 2)]);
        assert_eq!(g.edges(), &[(1, 2), (1, 3)]);
        assert!(g.has_edge(2, 1));
        assert!(!g.has_edge(2, 3));
        assert_eq!(g.neighbors(1), vec![2, 3]);
        assert_eq!(g.degree(1), 2);

        assert_eq!(
            Graph::new(2, [(1, 1)]),
            Err(GraphError::LoopEdge { vertex: 1 })
        );
        assert_eq!(
            Graph::new(2, [(1, 2), (2, 1)]),
            Err(GraphError::DuplicateEdge { u: 1, v: 2 })
        );
        assert_eq!(
            Graph::new(2, [(1, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 2 })
        );
    }

    #[test]
    fn gallai_graph_of_edgeless_graph_is_empty() {
        let gallai = gallai_graph(&graph(3, &[]));
        assert_eq!(gallai.graph.n(), 0);
        assert!(gallai.graph.edges().is_empty());
        assert!(gallai.vertex_edges.is_empty());
    }

    #[test]
    fn is_tree_cases() {
        assert!(graph(3, &[(1, 2), (2, 3)]).is_tree());
        assert!(!graph(3, &[(1, 2), (2, 3), (1, 3)]).is_tree());
        assert!(!graph(2, &[]).is_tree());
        assert!(graph(1, &[]).is_tree());
    }

    #[test]
    fn gallai_graph_of_hexagon_with_chords() {
        let g = hexagon_with_chords();
        // canonical edge order:
        // 1={1,2} 2={1,6} 3={2,3} 4={2,6} 5={3,4} 6={3,5} 7={4,5} 8={5,6}
        let gallai = gallai_graph(&g);
        assert_eq!(gallai.graph.n(), 8);
        assert_eq!(
            gallai.vertex_edges,
            vec![
                (1, 2),
                (1, 6),
                (2, 3),
                (2, 6),
                (3, 4),
                (3, 5),
                (4, 5),
                (5, 6)
            ]
        );
        assert_eq!(
            gallai.graph.edges(),
            &[
                (1, 3),
                (2, 8),
                (3, 4),
                (3, 5),
                (3, 6),
                (4, 8),
                (6, 8),
                (7, 8)
            ]
        );
    }

    #[test]
    fn gallai_graph_of_triangle_is_isolated() {
        let g = graph(3, &[(1, 2), (1, 3), (2, 3)]);
        let gallai = gallai_graph(&g);
        assert_eq!(gallai.graph.n(), 3);
        assert!(gallai.graph.edges().is_empty());
    }

    #[test]
    fn gallai_graph_of_path() {
        let g = graph(3, &[(1, 2), (2, 3)]);
        let gallai = gallai_graph(&g);
        assert_eq!(gallai.graph.n(), 2);
        assert_eq!(gallai.graph.edges(), &[(1, 2)]);
    }

    #[test]
    fn gallai_indices_of_two_triangles_pendant() {
        let omega = gallai_indices(&two_triangles_pendant()).unwrap();
        assert_eq!(
            omega.members(),
            &[
                face(&[1, 2]),
                face(&[1, 3, 4]),
                face(&[1, 3, 5]),
                face(&[2, 3, 4]),
                face(&[2, 3, 5]),
                face(&[3, 5, 6]),
                face(&[4, 5, 6]),
            ]
        );
    }

    #[test]
    fn gallai_indices_of_triangle_and_single_edge() {
        let omega = gallai_indices(&graph(3, &[(1, 2), (1, 3), (2, 3)])).unwrap();
        assert_eq!(
            omega.members(),
            &[face(&[1, 2]), face(&[1, 3]), face(&[2, 3])]
        );

        let omega = gallai_indices(&graph(2, &[(1, 2)])).unwrap();
        assert_eq!(omega.members(), &[face(&[1, 2])]);

        assert!(matches!(
            gallai_indices(&graph(2, &[])),
            Err(GallaiError::Graph(GraphError::Edgeless))
        ));
    }

    #[test]
    fn gallai_complex_cases() {
        let c = gallai_complex(&two_triangles_pendant()).unwrap();
        assert_eq!(c.facet_count(), 7);
        assert_eq!(c.dimension_and_purity(), (2, false));
        assert!(c.facets().contains(&face(&[1, 2])));
        assert!(c.is_connected());

        let triangle = gallai_complex(&graph(3, &[(1, 2), (1, 3), (2, 3)])).unwrap();
        assert_eq!(triangle.dimension(), 1);
        assert_eq!(
            triangle.facets(),
            &[face(&[1, 2]), face(&[1, 3]), face(&[2, 3])]
        );

        let star = gallai_complex(&graph(4, &[(1, 2), (1, 3), (1, 4)])).unwrap();
        assert_eq!(
            star.facets(),
            &[face(&[1, 2, 3]), face(&[1, 2, 4]), face(&[1, 3, 4])]
        );
    }

    #[test]
    fn tree_shelling_of_path() {
        let t = graph(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]);
        let shelling = tree_shelling(&t).unwrap();
        assert_eq!(shelling.certificate.order, vec![1, 2, 3]);
        assert_eq!(
            shelling.complex.facets(),
            &[face(&[1, 2, 3]), face(&[2, 3, 4]), face(&[3, 4, 5])]
        );
        assert!(check_order_definition(&shelling.complex, &shelling.certificate.order).unwrap());
    }

    #[test]
    fn tree_shelling_of_star() {
        let t = graph(4, &[(1, 2), (1, 3), (1, 4)]);
        let shelling = tree_shelling(&t).unwrap();
        assert!(check_order_definition(&shelling.complex, &shelling.certificate.order).unwrap());
        assert_eq!(shelling.complex.facet_count(), 3);
    }

    #[test]
    fn tree_shelling_of_branched_path() {
        let t = graph(6, &[(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)]);
        let shelling = tree_shelling(&t).unwrap();
        let faces: Vec<Face> = shelling
            .certificate
            .order
            .iter()
            .map(|&p| shelling.complex.facets()[p - 1])
            .collect();
        // trunk triples first, then the branch triples at the junction
        assert_eq!(
            faces,
            vec![
                face(&[1, 2, 3]),
                face(&[2, 3, 4]),
                face(&[3, 4, 5]),
                face(&[2, 3, 6]),
                face(&[3, 4, 6]),
            ]
        );
        assert!(check_order_definition(&shelling.complex, &shelling.certificate.order).unwrap());
    }

    #[test]
    fn tree_shelling_of_single_edge() {
        let t = graph(2, &[(1, 2)]);
        let shelling = tree_shelling(&t).unwrap();
        assert_eq!(shelling.certificate.order, vec![1]);
        assert!(shelling.certificate.steps.is_empty());
        assert_eq!(shelling.complex.facets(), &[face(&[1, 2])]);
    }

    #[test]
    fn tree_shelling_rejects_non_trees() {
        assert!(matches!(
            tree_shelling(&graph(3, &[(1, 2), (1, 3), (2, 3)])),
            Err(GallaiError::Graph(GraphError::NotATree))
        ));
        assert!(matches!(
            tree_shelling(&graph(1, &[])),
            Err(GallaiError::Graph(GraphError::Edgeless))
        ));
    }

    #[test]
    fn gallai_graph_size_bounds() {
        for seed in 0..100u64 {
            let n = 2 + (seed % 9) as u32;
            let g = crate::random::random_connected_graph(seed, n, 0.4).unwrap();
            let gallai = gallai_graph(&g);
            assert_eq!(gallai.graph.n() as usize, g.edge_count());
            let incident_pairs: usize = (1..=n)
                .map(|v| {
                    let d = g.degree(v);
                    d * d.saturating_sub(1) / 2
                })
                .sum();
            assert!(gallai.graph.edge_count() <= incident_pairs);
        }
    }

    #[test]
    fn gallai_complex_of_connected_graph_is_connected() {
        for seed in 0..200u64 {
            let n = 2 + (seed % 9) as u32;
            let g = crate::random::random_connected_graph(seed, n, 0.35).unwrap();
            let c = gallai_complex(&g).unwrap();
            assert!(c.is_connected(), "seed {seed}, graph {g:?}");
        }
    }

    #[test]
    fn dimension_one_iff_complex_equals_graph() {
        for seed in 0..200u64 {
            let n = 2 + (seed % 9) as u32;
            let g = crate::random::random_connected_graph(seed, n, 0.35).unwrap();
            let c = gallai_complex(&g).unwrap();
            let edge_faces: Vec<Face> = g.edges().iter().map(|&(u, v)| face(&[u, v])).collect();
            let facets: Vec<Face> = c.facets().to_vec();
            let equals_graph = facets == edge_faces;
            assert_eq!(c.dimension() == 1, equals_graph, "seed {seed}");
        }
    }

    #[test]
    fn tree_indices_are_all_adjacent_triples() {
        // in a tree every pair of incident edges yields a triple
        for seed in 0..150u64 {
            let n = 3 + (seed % 10) as u32;
            let t = crate::random::random_tree(seed, n).unwrap();
            let omega = gallai_indices(&t).unwrap();
            let mut expected: Vec<Face> = Vec::new();
            for b in 1..=n {
                let nbrs = t.neighbors(b);
                for (i, &a) in nbrs.iter().enumerate() {
                    for &c in &nbrs[i + 1..] {
                        expected.push(face(&[a, b, c]));
                    }
                }
            }
            expected.sort();
            expected.dedup();
            assert_eq!(omega.members(), &expected[..], "seed {seed}");
        }
    }
}
