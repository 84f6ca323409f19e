//! Simplicial complexes as antichains of facets over vertices `1..=n`.
//!
//! Faces are one-word bitsets, so every operation in this module reduces to
//! word-level set algebra. The facet list of a complex is kept in a canonical
//! sort (size, then lexicographic on the ascending vertex list), which makes
//! equality of complexes plain list equality.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Largest supported vertex label: faces are single `u64` bitsets.
pub const MAX_VERTICES: u32 = 64;

/// Errors from complex construction and facet-level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("facet list is empty")]
    EmptyFacetList,
    #[error("the empty face cannot be a facet")]
    EmptyFace,
    #[error("vertex {vertex} is not representable (supported labels are 1..=64)")]
    UnrepresentableVertex { vertex: u32 },
    #[error("vertex {vertex} is outside the declared range 1..={n}")]
    VertexOutOfRange { vertex: u32, n: u32 },
    #[error("vertex range n={n} exceeds the one-word capacity of 64")]
    AmbientTooLarge { n: u32 },
    #[error("intersection prefix is empty")]
    EmptyPrefix,
    #[error("facet index set is empty")]
    EmptyIndexSet,
    #[error("facet index {index} is outside 1..={count}")]
    FacetIndexOutOfRange { index: usize, count: usize },
}

/// A set of vertex labels from `1..=64`, packed into one machine word.
///
/// The same value doubles as a squarefree monomial (vertex `j` stands for
/// the variable `x_j`): `is_subset_of` is divisibility, `intersection` is
/// the gcd and `difference` the quotient by it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    /// The empty face. Never a facet; it appears only in intersection
    /// complexes of dimension -1.
    pub const EMPTY: Face = Face(0);

    /// Builds a face from vertex labels. Labels outside `1..=64` are
    /// rejected; duplicates collapse.
    pub fn from_vertices<I>(vertices: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = u32>,
    {
        let mut bits = 0u64;
        for vertex in vertices {
            if vertex == 0 || vertex > MAX_VERTICES {
                return Err(ComplexError::UnrepresentableVertex { vertex });
            }
            bits |= 1 << (vertex - 1);
        }
        Ok(Face(bits))
    }

    pub fn singleton(vertex: u32) -> Result<Self, ComplexError> {
        Self::from_vertices([vertex])
    }

    /// The face `{1, 2, ..., n}`.
    pub(crate) fn full(n: u32) -> Face {
        debug_assert!(n <= MAX_VERTICES);
        if n == 0 {
            Face::EMPTY
        } else {
            Face(u64::MAX >> (MAX_VERTICES - n))
        }
    }

    /// Vertex labels in ascending order.
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    /// Number of vertices.
    pub fn size(self) -> u32 {
        self.0.count_ones()
    }

    /// `|F| - 1`; the empty face has dimension -1.
    pub fn dim(self) -> i32 {
        self.size() as i32 - 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, vertex: u32) -> bool {
        (1..=MAX_VERTICES).contains(&vertex) && self.0 >> (vertex - 1) & 1 == 1
    }

    pub fn is_subset_of(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_strict_subset_of(self, other: Face) -> bool {
        self != other && self.is_subset_of(other)
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    /// Set difference `self \ other`.
    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn min_vertex(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    pub fn max_vertex(self) -> Option<u32> {
        (self.0 != 0).then(|| MAX_VERTICES - self.0.leading_zeros())
    }
}

impl Ord for Face {
    /// Canonical order: size first, then lexicographic on the ascending
    /// vertex list. For equal sizes the list comparison is decided by the
    /// smallest label in the symmetric difference; the side containing it
    /// sorts first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ascending iterator over the vertex labels of a face.
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() + 1;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// The inclusion-maximal members of a face list, deduplicated and
/// canonically sorted.
pub(crate) fn maximal_faces(faces: &[Face]) -> Vec<Face> {
    let mut sorted = faces.to_vec();
    sorted.sort();
    sorted.dedup();
    sorted
        .iter()
        .copied()
        .filter(|&f| !sorted.iter().any(|&g| f.is_strict_subset_of(g)))
        .collect()
}

/// A simplicial complex over `1..=n`, stored as its facet antichain.
///
/// Construction normalizes arbitrary face lists: dominated and duplicate
/// faces are dropped and the survivors are canonically sorted, so two equal
/// complexes have identical facet lists. Values are immutable after
/// construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: u32,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// Normalizes `faces` into the antichain of its maximal members over the
    /// vertex range `1..=n`. Idempotent: feeding the facets of a complex
    /// back in reproduces the complex.
    pub fn new<I>(n: u32, faces: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = Face>,
    {
        if n > MAX_VERTICES {
            return Err(ComplexError::AmbientTooLarge { n });
        }
        let faces: Vec<Face> = faces.into_iter().collect();
        if faces.is_empty() {
            return Err(ComplexError::EmptyFacetList);
        }
        for &face in &faces {
            if face.is_empty() {
                return Err(ComplexError::EmptyFace);
            }
            let top = face.max_vertex().expect("nonempty face");
            if top > n {
                return Err(ComplexError::VertexOutOfRange { vertex: top, n });
            }
        }
        Ok(Self {
            n,
            facets: maximal_faces(&faces),
        })
    }

    /// Upper bound of the vertex range.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Facets in canonical order.
    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// The facet at a 1-based position of the canonical order.
    pub fn facet(&self, position: usize) -> Result<Face, ComplexError> {
        if position < 1 || position > self.facets.len() {
            return Err(ComplexError::FacetIndexOutOfRange {
                index: position,
                count: self.facets.len(),
            });
        }
        Ok(self.facets[position - 1])
    }

    /// Union of all facets; vertices of `1..=n` outside it are isolated.
    pub fn vertex_support(&self) -> Face {
        self.facets.iter().copied().fold(Face::EMPTY, Face::union)
    }

    /// Maximal facet dimension, paired with purity (whether every facet
    /// attains it).
    pub fn dimension_and_purity(&self) -> (i32, bool) {
        let dim = self.dimension();
        (dim, self.facets.iter().all(|f| f.dim() == dim))
    }

    pub fn dimension(&self) -> i32 {
        self.facets
            .iter()
            .map(|f| f.dim())
            .max()
            .expect("complex has facets")
    }

    pub fn is_pure(&self) -> bool {
        self.dimension_and_purity().1
    }

    /// Facet-to-facet connectedness: every pair of facets is joined by a
    /// chain of facets with pairwise nonempty consecutive intersections.
    /// Isolated ambient vertices are ignored.
    pub fn is_connected(&self) -> bool {
        let count = self.facets.len();
        let mut seen = vec![false; count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(i) = stack.pop() {
            for (j, facet) in self.facets.iter().enumerate() {
                if !seen[j] && !self.facets[i].intersection(*facet).is_empty() {
                    seen[j] = true;
                    reached += 1;
                    stack.push(j);
                }
            }
        }
        reached == count
    }

    /// The subcomplex generated by the facets at the given 1-based
    /// positions. Any subset of an antichain is an antichain, so the
    /// selected facets are the facets of the result.
    pub fn restriction(&self, positions: &[usize]) -> Result<Self, ComplexError> {
        if positions.is_empty() {
            return Err(ComplexError::EmptyIndexSet);
        }
        let mut selected = positions.to_vec();
        selected.sort_unstable();
        selected.dedup();
        for &p in &selected {
            if p < 1 || p > self.facets.len() {
                return Err(ComplexError::FacetIndexOutOfRange {
                    index: p,
                    count: self.facets.len(),
                });
            }
        }
        Ok(Self {
            n: self.n,
            facets: selected.iter().map(|&p| self.facets[p - 1]).collect(),
        })
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, facet) in self.facets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{facet}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(n={}, {})", self.n, self)
    }
}

/// The subcomplex generated by the intersections of one face with a list of
/// predecessor faces. Unlike [`SimplicialComplex`], this may be the void of
/// dimension -1 whose only face is the empty face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionComplex {
    facets: Vec<Face>,
    dim: i32,
}

impl IntersectionComplex {
    /// Maximal faces, canonically sorted. Exactly `[Face::EMPTY]` when the
    /// dimension is -1.
    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn dim(&self) -> i32 {
        self.dim
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().all(|f| f.dim() == self.dim)
    }

    /// Pure of exactly the given dimension.
    pub fn is_pure_of_dim(&self, dim: i32) -> bool {
        self.dim == dim && self.is_pure()
    }
}

/// The intersection subcomplex generated by `{ face ∩ p : p in prefix }`.
///
/// The result holds the maximal elements of those intersections; when all of
/// them are empty it degenerates to the empty face with dimension -1.
pub fn intersection_complex(
    prefix: &[Face],
    face: Face,
) -> Result<IntersectionComplex, ComplexError> {
    if prefix.is_empty() {
        return Err(ComplexError::EmptyPrefix);
    }
    let intersections: Vec<Face> = prefix
        .iter()
        .map(|&p| face.intersection(p))
        .filter(|f| !f.is_empty())
        .collect();
    if intersections.is_empty() {
        return Ok(IntersectionComplex {
            facets: vec![Face::EMPTY],
            dim: -1,
        });
    }
    let facets = maximal_faces(&intersections);
    let dim = facets.iter().map(|f| f.dim()).max().expect("nonempty");
    Ok(IntersectionComplex { facets, dim })
}
