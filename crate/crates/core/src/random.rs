//! Seeded generators for property tests and fuzzing.
//!
//! Everything here is a pure function of its arguments. The generator is a
//! pinned splitmix64, so identical seeds give identical structures on every
//! platform and run.

use crate::complex::{ComplexError, Face, SimplicialComplex, MAX_VERTICES};
use crate::gallai::{Graph, GraphError};

/// splitmix64 with the standard constants.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform-ish value in `0..bound`; the modulo bias is irrelevant at
    /// test scale.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }

    /// Bernoulli draw with probability `p`.
    pub fn chance(&mut self, p: f64) -> bool {
        (self.next_u64() >> 11) as f64 / ((1u64 << 53) as f64) < p
    }
}

/// A random complex over `1..=n` with at most `max_facets` facets (fewer
/// when normalization absorbs some).
pub fn random_complex(
    seed: u64,
    n: u32,
    max_facets: usize,
) -> Result<SimplicialComplex, ComplexError> {
    if n == 0 || n > MAX_VERTICES {
        return Err(ComplexError::AmbientTooLarge { n });
    }
    let mut rng = SplitMix64::new(seed);
    // cap face sizes around two thirds of n; near-full faces absorb
    // everything and collapse the complex to one facet
    let max_size = (2 * n / 3).max(1);
    let faces: Vec<Face> = (0..max_facets.max(1))
        .map(|_| {
            let size = 1 + rng.below(max_size as u64) as u32;
            let mut face = Face::EMPTY;
            while face.size() < size {
                let v = 1 + rng.below(n as u64) as u32;
                face = face.union(Face::singleton(v).expect("label in range"));
            }
            face
        })
        .collect();
    SimplicialComplex::new(n, faces)
}

/// A random tree on `1..=n` built by attaching each vertex to a random
/// earlier one.
pub fn random_tree(seed: u64, n: u32) -> Result<Graph, GraphError> {
    if n == 0 || n > MAX_VERTICES {
        return Err(GraphError::VertexOutOfRange {
            vertex: n,
            n: MAX_VERTICES,
        });
    }
    let mut rng = SplitMix64::new(seed);
    let edges = (2..=n).map(|v| (1 + rng.below(v as u64 - 1) as u32, v));
    Graph::new(n, edges)
}

/// A random connected graph: a random tree skeleton plus every further pair
/// independently with probability `p`.
pub fn random_connected_graph(seed: u64, n: u32, p: f64) -> Result<Graph, GraphError> {
    let tree = random_tree(seed, n)?;
    let mut rng = SplitMix64::new(seed ^ 0xd1b5_4a32_d192_ed03);
    let mut edges: Vec<(u32, u32)> = tree.edges().to_vec();
    for u in 1..=n {
        for v in u + 1..=n {
            if !tree.has_edge(u, v) && rng.chance(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random_tree(7, 5).unwrap(), random_tree(7, 5).unwrap());
        assert_eq!(
            random_complex(11, 6, 4).unwrap(),
            random_complex(11, 6, 4).unwrap()
        );
        assert_eq!(
            random_connected_graph(3, 6, 0.5).unwrap(),
            random_connected_graph(3, 6, 0.5).unwrap()
        );
    }

    #[test]
    fn random_complex_respects_bounds() {
        for seed in 0..50 {
            let c = random_complex(seed, 5, 4).unwrap();
            assert!(c.facet_count() <= 4);
            assert!(c.facets().iter().all(|f| f.max_vertex().unwrap() <= 5));
        }
    }

    #[test]
    fn random_tree_is_tree() {
        for seed in 0..50 {
            assert!(random_tree(seed, 8).unwrap().is_tree());
        }
    }

    #[test]
    fn random_connected_graph_is_connected() {
        for seed in 0..50 {
            let g = random_connected_graph(seed, 6, 0.5).unwrap();
            assert!(g.is_connected());
            assert_eq!(g.n(), 6);
        }
    }

    #[test]
    fn capacity_errors() {
        assert!(random_complex(0, 65, 3).is_err());
        assert!(random_tree(0, 65).is_err());
    }
}
