//! Shellability of simplicial complexes, decided algebraically.
//!
//! A simplicial complex is stored as the antichain of its facets. Whether a
//! facet order is a shelling can be read off the facet ideal: at every step
//! the minimal generators of the residual set (the quotients of the current
//! generator by its gcd with each predecessor) must all be linear. This crate
//! implements that criterion next to the definitional one, searches for
//! shelling orders with a pruned backtracking search, characterizes leaves
//! and simplicial trees through the same quotient algebra, and constructs
//! Gallai simplicial complexes of graphs together with an explicit shelling
//! order for trees.
//!
//! Module map:
//! - [`complex`]: faces as one-word bitsets, facet antichains, intersection
//!   subcomplexes, connectedness.
//! - [`ideal`]: squarefree monomial arithmetic, facet and non-face ideals,
//!   residual and colon generators, `indeg`, purity.
//! - [`shelling`]: per-order checks (definitional oracle and residual
//!   criterion), shelling search, leaf and simplicial-tree tests.
//! - [`gallai`]: simple graphs, the Gallai graph, Gallai indices, the Gallai
//!   simplicial complex, and the constructive shelling for trees.
//! - [`io`], [`report`], [`cli`]: file formats, verdict reports, and the
//!   command-line front end.
//! - [`random`]: seeded, platform-stable generators used by property tests.

pub mod cli;
pub mod complex;
pub mod gallai;
pub mod ideal;
pub mod io;
pub mod random;
pub mod report;
pub mod shelling;

pub use complex::{intersection_complex, Face, IntersectionComplex, SimplicialComplex};
pub use gallai::{
    gallai_complex, gallai_graph, gallai_indices, tree_shelling, GallaiGraph, GallaiIndexSet, Graph,
};
pub use ideal::{
    facet_ideal, minimal_generators, minimal_nonfaces, Monomial, OrderedIdeal, ResidualSet,
};
pub use shelling::{
    check_order_definition, check_order_residuals, find_shelling, is_leaf, is_leaf_definition,
    is_simplicial_tree, OrderVerdict, SearchOutcome, SearchReport, ShellingCertificate,
};
