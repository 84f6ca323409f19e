//! Shelling-order checks, shelling search, leaves and simplicial trees.
//!
//! Two independent routes decide whether a facet order is a shelling:
//!
//! - [`check_order_definition`] replays the definition directly: at every
//!   step the intersection of the new facet with the span of its
//!   predecessors must be pure of one dimension lower.
//! - [`check_order_residuals`] works on the facet ideal: at every step the
//!   minimal generators of the residual set must all be linear, and the
//!   residual variables become the certificate steps.
//!
//! The two routes are equivalent and deliberately share no code beyond the
//! bitset primitives; [`find_shelling`] searches with the residual test and
//! validates any certificate against the definitional oracle before
//! returning it.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::complex::{intersection_complex, Face, SimplicialComplex};
use crate::ideal::{minimal_generators, OrderedIdeal};

/// Most facets the subset-mask search machinery supports.
pub const SEARCH_FACET_LIMIT: usize = 64;

/// Default facet cap for [`is_simplicial_tree`], which enumerates all facet
/// subsets.
pub const SIMPLICIAL_TREE_FACET_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShellingError {
    #[error("order has length {got}, expected {expected}")]
    OrderLengthMismatch { got: usize, expected: usize },
    #[error("order position {position} is outside 1..={count}")]
    OrderPositionOutOfRange { position: usize, count: usize },
    #[error("order repeats position {position}")]
    OrderRepeatsPosition { position: usize },
    #[error("facet index {index} is outside 1..={count}")]
    FacetIndexOutOfRange { index: usize, count: usize },
    #[error("simplicial-tree test is capped at {limit} facets, got {facets}")]
    FacetLimitExceeded { facets: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search budget of {budget} nodes exhausted after expanding {nodes_expanded}")]
    BudgetExhausted { budget: u64, nodes_expanded: u64 },
    #[error("shelling search supports at most 64 facets, got {facets}")]
    TooManyFacets { facets: usize },
}

/// A witnessed shelling order.
///
/// `order` lists 1-based facet positions of the canonical facet list.
/// `steps[j - 2]` records, for each step `j >= 2`, the vertices whose
/// singletons are the minimal residuals of that step; removing each one
/// from the step's facet reproduces the facets of the step's intersection
/// complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellingCertificate {
    pub order: Vec<usize>,
    pub steps: Vec<Vec<u32>>,
}

/// Outcome of checking one explicit facet order against the residual
/// criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderVerdict {
    Shelling(ShellingCertificate),
    /// The 1-based step (position within the order) whose minimal residuals
    /// are not all linear.
    FailsAt {
        step: usize,
    },
}

impl OrderVerdict {
    pub fn certificate(self) -> Option<ShellingCertificate> {
        match self {
            OrderVerdict::Shelling(cert) => Some(cert),
            OrderVerdict::FailsAt { .. } => None,
        }
    }
}

fn validate_order(order: &[usize], count: usize) -> Result<(), ShellingError> {
    if order.len() != count {
        return Err(ShellingError::OrderLengthMismatch {
            got: order.len(),
            expected: count,
        });
    }
    let mut seen = vec![false; count];
    for &p in order {
        if p < 1 || p > count {
            return Err(ShellingError::OrderPositionOutOfRange { position: p, count });
        }
        if seen[p - 1] {
            return Err(ShellingError::OrderRepeatsPosition { position: p });
        }
        seen[p - 1] = true;
    }
    Ok(())
}

/// Definitional oracle: the order is a shelling iff for every step `j >= 2`
/// the intersection of the step's facet with the span of its predecessors
/// is pure of dimension `dim(F_j) - 1`. A step with only the empty
/// intersection (dimension -1) is accepted exactly when the facet is a
/// single vertex. The first facet is unconstrained.
pub fn check_order_definition(
    complex: &SimplicialComplex,
    order: &[usize],
) -> Result<bool, ShellingError> {
    validate_order(order, complex.facet_count())?;
    let faces: Vec<Face> = order.iter().map(|&p| complex.facets()[p - 1]).collect();
    for j in 1..faces.len() {
        let ic = intersection_complex(&faces[..j], faces[j]).expect("nonempty prefix");
        if !ic.is_pure_of_dim(faces[j].dim() - 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Residual criterion: builds the facet ideal in the given order and demands
/// linear minimal residuals at every step. On success the certificate
/// records each step's residual vertices; on failure the verdict carries the
/// first failing step.
pub fn check_order_residuals(
    complex: &SimplicialComplex,
    order: &[usize],
) -> Result<OrderVerdict, ShellingError> {
    validate_order(order, complex.facet_count())?;
    let gens: Vec<Face> = order.iter().map(|&p| complex.facets()[p - 1]).collect();
    let ideal = OrderedIdeal::new(complex.n(), gens).expect("facet antichain is a minimal system");
    let mut steps = Vec::with_capacity(order.len().saturating_sub(1));
    for i in 2..=ideal.len() {
        let rs = ideal.residual_set(i).expect("position in range");
        if !rs.is_linear() {
            return Ok(OrderVerdict::FailsAt { step: i });
        }
        steps.push(
            rs.minimal()
                .iter()
                .map(|m| m.min_vertex().expect("linear monomial"))
                .collect(),
        );
    }
    Ok(OrderVerdict::Shelling(ShellingCertificate {
        order: order.to_vec(),
        steps,
    }))
}

/// Whether appending `facets[candidate]` after the prefix passes the
/// linear-residual step test. The minimal residuals are all linear iff every
/// residual is divisible by some singleton residual; this needs no
/// allocation.
fn step_residuals_linear(facets: &[Face], prefix: &[usize], candidate: usize) -> bool {
    let f_i = facets[candidate];
    let mut singles = Face::EMPTY;
    for &k in prefix {
        let r = f_i.difference(facets[k]);
        if r.size() == 1 {
            singles = singles.union(r);
        }
    }
    prefix
        .iter()
        .all(|&k| !f_i.difference(facets[k]).intersection(singles).is_empty())
}

/// Options for [`find_shelling_with`].
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Cap on expanded nodes; exceeding it aborts the search with
    /// [`SearchError::BudgetExhausted`].
    pub budget: Option<u64>,
    /// Explore first-facet branches on separate threads. Any valid
    /// certificate may be returned; the sequential default is deterministic.
    pub parallel: bool,
    /// Memoize visited predecessor sets only above this facet count.
    pub memo_min_facets: usize,
    /// Cap on stored predecessor sets; the search stays correct when it is
    /// hit, it just stops recording.
    pub memo_cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            budget: None,
            parallel: false,
            memo_min_facets: 10,
            memo_cap: 1 << 22,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Shelling(ShellingCertificate),
    /// Every maximal prefix was visited or pruned; no shelling order exists.
    Exhausted,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub nodes_expanded: u64,
    pub prefixes_pruned: u64,
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn certificate(&self) -> Option<&ShellingCertificate> {
        match &self.outcome {
            SearchOutcome::Shelling(cert) => Some(cert),
            SearchOutcome::Exhausted => None,
        }
    }
}

struct SearchCtx<'a> {
    facets: &'a [Face],
    /// 0-based facet indices, descending dimension, ties in canonical order.
    candidates: &'a [usize],
    budget: Option<u64>,
    nodes: &'a AtomicU64,
    stop: &'a AtomicBool,
}

enum Halt {
    Budget,
    Cancelled,
}

struct BranchState {
    memo: Option<HashSet<u64>>,
    memo_cap: usize,
    pruned: u64,
}

/// Per-branch search result paired with the branch's prune count.
type BranchResult = (Result<Option<Vec<usize>>, Halt>, u64);

/// Depth-first extension of `prefix` (0-based indices, `used` its bitmask).
/// The step test depends only on the set of predecessors, never their
/// order, so prefixes with equal facet sets are interchangeable and `used`
/// doubles as the memo key.
fn dfs(
    ctx: &SearchCtx<'_>,
    state: &mut BranchState,
    prefix: &mut Vec<usize>,
    used: u64,
) -> Result<Option<Vec<usize>>, Halt> {
    if ctx.stop.load(Ordering::Relaxed) {
        return Err(Halt::Cancelled);
    }
    if prefix.len() == ctx.facets.len() {
        return Ok(Some(prefix.clone()));
    }
    if let Some(memo) = state.memo.as_mut() {
        if memo.contains(&used) {
            state.pruned += 1;
            return Ok(None);
        }
        if memo.len() < state.memo_cap {
            memo.insert(used);
        }
    }
    let expanded = ctx.nodes.fetch_add(1, Ordering::Relaxed) + 1;
    if let Some(budget) = ctx.budget {
        if expanded > budget {
            ctx.stop.store(true, Ordering::Relaxed);
            return Err(Halt::Budget);
        }
    }
    for &candidate in ctx.candidates {
        if used >> candidate & 1 == 1 {
            continue;
        }
        if !prefix.is_empty() && !step_residuals_linear(ctx.facets, prefix, candidate) {
            continue;
        }
        prefix.push(candidate);
        let sub = dfs(ctx, state, prefix, used | 1 << candidate)?;
        prefix.pop();
        if sub.is_some() {
            return Ok(sub);
        }
    }
    Ok(None)
}

/// Backtracking search for a shelling order, unbounded and sequential.
pub fn find_shelling(complex: &SimplicialComplex) -> SearchReport {
    find_shelling_with(complex, &SearchOptions::default())
        .expect("unbounded search cannot run out of budget")
}

/// Backtracking search for a shelling order.
///
/// Partial prefixes are extended only through facets that pass the
/// linear-residual step test, in descending facet dimension (ties broken
/// canonically). Above `memo_min_facets` facets, already-expanded
/// predecessor sets are pruned. A found order is validated against
/// [`check_order_definition`] before it is returned.
pub fn find_shelling_with(
    complex: &SimplicialComplex,
    options: &SearchOptions,
) -> Result<SearchReport, SearchError> {
    let start = Instant::now();
    let facets = complex.facets();
    if facets.len() > SEARCH_FACET_LIMIT {
        return Err(SearchError::TooManyFacets {
            facets: facets.len(),
        });
    }
    let mut candidates: Vec<usize> = (0..facets.len()).collect();
    candidates.sort_by_key(|&i| std::cmp::Reverse(facets[i].size()));
    let use_memo = facets.len() > options.memo_min_facets;

    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let ctx = SearchCtx {
        facets,
        candidates: &candidates,
        budget: options.budget,
        nodes: &nodes,
        stop: &stop,
    };

    let (found, pruned) = if options.parallel && facets.len() > 1 {
        search_parallel(&ctx, options, &candidates)?
    } else {
        let mut state = BranchState {
            memo: use_memo.then(HashSet::new),
            memo_cap: options.memo_cap,
            pruned: 0,
        };
        let found = match dfs(&ctx, &mut state, &mut Vec::new(), 0) {
            Ok(found) => found,
            Err(Halt::Budget) => {
                return Err(SearchError::BudgetExhausted {
                    budget: options.budget.expect("budget halt implies a budget"),
                    nodes_expanded: nodes.load(Ordering::Relaxed),
                })
            }
            Err(Halt::Cancelled) => unreachable!("sequential search is never cancelled"),
        };
        (found, state.pruned)
    };

    let outcome = match found {
        Some(order0) => SearchOutcome::Shelling(certify(complex, &order0)),
        None => SearchOutcome::Exhausted,
    };
    Ok(SearchReport {
        outcome,
        nodes_expanded: nodes.load(Ordering::Relaxed),
        prefixes_pruned: pruned,
        elapsed: start.elapsed(),
    })
}

/// One thread per first facet. Each branch keeps its own memo; the node
/// budget is shared. The first branch (in candidate order) that finds an
/// order wins, and a success cancels the others.
fn search_parallel(
    ctx: &SearchCtx<'_>,
    options: &SearchOptions,
    candidates: &[usize],
) -> Result<(Option<Vec<usize>>, u64), SearchError> {
    let use_memo = ctx.facets.len() > options.memo_min_facets;
    let branch_results: Vec<BranchResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = candidates
            .iter()
            .map(|&first| {
                scope.spawn(move || {
                    let mut state = BranchState {
                        memo: use_memo.then(HashSet::new),
                        memo_cap: options.memo_cap,
                        pruned: 0,
                    };
                    let mut prefix = vec![first];
                    let result = dfs(ctx, &mut state, &mut prefix, 1 << first);
                    if let Ok(Some(_)) = &result {
                        ctx.stop.store(true, Ordering::Relaxed);
                    }
                    (result, state.pruned)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("branch panicked"))
            .collect()
    });

    let pruned: u64 = branch_results.iter().map(|(_, p)| p).sum();
    for (result, _) in &branch_results {
        if let Ok(Some(order)) = result {
            return Ok((Some(order.clone()), pruned));
        }
    }
    if branch_results
        .iter()
        .any(|(r, _)| matches!(r, Err(Halt::Budget)))
    {
        return Err(SearchError::BudgetExhausted {
            budget: options.budget.expect("budget halt implies a budget"),
            nodes_expanded: ctx.nodes.load(Ordering::Relaxed),
        });
    }
    Ok((None, pruned))
}

/// Turns a 0-based search order into a certificate and cross-checks it
/// against the definitional oracle. The two routes must never disagree.
fn certify(complex: &SimplicialComplex, order0: &[usize]) -> ShellingCertificate {
    let order: Vec<usize> = order0.iter().map(|&i| i + 1).collect();
    match check_order_residuals(complex, &order).expect("search order is a permutation") {
        OrderVerdict::Shelling(cert) => {
            let replay = check_order_definition(complex, &cert.order)
                .expect("certificate order is a permutation");
            assert!(
                replay,
                "residual certificate failed the definitional oracle"
            );
            cert
        }
        OrderVerdict::FailsAt { step } => {
            panic!("search accepted an order whose residuals fail at step {step}")
        }
    }
}

/// Algebraic leaf test: the facet is a leaf iff the residuals of its
/// monomial against all other facet monomials generate a principal ideal
/// (their minimal antichain is a single monomial). The only facet of a
/// one-facet complex is a leaf.
pub fn is_leaf(complex: &SimplicialComplex, position: usize) -> Result<bool, ShellingError> {
    let facets = complex.facets();
    if position < 1 || position > facets.len() {
        return Err(ShellingError::FacetIndexOutOfRange {
            index: position,
            count: facets.len(),
        });
    }
    if facets.len() == 1 {
        return Ok(true);
    }
    let f_i = facets[position - 1];
    let residuals: Vec<Face> = facets
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != position - 1)
        .map(|(_, &f_j)| f_i.difference(f_j))
        .collect();
    Ok(minimal_generators(&residuals).len() == 1)
}

/// Definitional leaf test, the independent oracle for [`is_leaf`]: some
/// other facet `G` satisfies `F ∩ F' ⊆ F ∩ G` for every other facet `F'`.
pub fn is_leaf_definition(
    complex: &SimplicialComplex,
    position: usize,
) -> Result<bool, ShellingError> {
    let facets = complex.facets();
    if position < 1 || position > facets.len() {
        return Err(ShellingError::FacetIndexOutOfRange {
            index: position,
            count: facets.len(),
        });
    }
    if facets.len() == 1 {
        return Ok(true);
    }
    let i = position - 1;
    let f = facets[i];
    Ok(facets.iter().enumerate().any(|(k, &g)| {
        k != i
            && facets
                .iter()
                .enumerate()
                .all(|(j, &other)| j == i || f.intersection(other).is_subset_of(f.intersection(g)))
    }))
}

fn subset_has_leaf(faces: &[Face]) -> bool {
    if faces.len() == 1 {
        return true;
    }
    (0..faces.len()).any(|i| {
        let residuals: Vec<Face> = faces
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &g)| faces[i].difference(g))
            .collect();
        minimal_generators(&residuals).len() == 1
    })
}

/// Simplicial-tree test: connected, and every nonempty facet subset spans a
/// subcomplex containing a leaf. All `2^s - 1` subsets are enumerated, so
/// the facet count is capped.
pub fn is_simplicial_tree(complex: &SimplicialComplex) -> Result<bool, ShellingError> {
    is_simplicial_tree_with_limit(complex, SIMPLICIAL_TREE_FACET_LIMIT)
}

pub fn is_simplicial_tree_with_limit(
    complex: &SimplicialComplex,
    limit: usize,
) -> Result<bool, ShellingError> {
    let facets = complex.facets();
    // subsets are one-word masks, so 63 facets is the hard ceiling however
    // high the caller raises the limit
    let limit = limit.min(63);
    if facets.len() > limit {
        return Err(ShellingError::FacetLimitExceeded {
            facets: facets.len(),
            limit,
        });
    }
    if !complex.is_connected() {
        return Ok(false);
    }
    let count = facets.len();
    let mut selected = Vec::with_capacity(count);
    for mask in 1u64..(1 << count) {
        selected.clear();
        selected.extend(
            (0..count)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| facets[i]),
        );
        if !subset_has_leaf(&selected) {
            return Ok(false);
        }
    }
    Ok(true)
}
