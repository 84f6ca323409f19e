//! Squarefree monomial arithmetic on the facet representation.
//!
//! A squarefree monomial is a [`Face`] read as its support set: vertex `j`
//! is the variable `x_j`, divisibility is support inclusion, the gcd is the
//! support intersection and the quotient by a gcd is the support difference.
//! This module builds facet ideals and Stanley-Reisner (non-face) ideals,
//! and computes the two order-dependent quotient families that drive the
//! shellability criterion:
//!
//! - the residual set at position `i`, `u_k = m_i / gcd(m_k, m_i)` for every
//!   predecessor `k < i` (support `F_i \ F_k`), and
//! - the colon generators at position `i`, the minimal generators of
//!   `(m_1, ..., m_{i-1}) : (m_i)`, i.e. of `{ m_k / gcd(m_k, m_i) }`
//!   (support `F_k \ F_i`).
//!
//! The two families are dual: their supports are disjoint and their union is
//! the symmetric difference of the two facets.

use thiserror::Error;

use crate::complex::{Face, SimplicialComplex, MAX_VERTICES};

/// A squarefree monomial, identified with its support set.
pub type Monomial = Face;

/// Default cap on `n` for non-face enumeration; output size can grow as
/// `2^n`, so the failure is made explicit instead of silent.
pub const NONFACE_ENUMERATION_LIMIT: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generator {position} is constant (empty support)")]
    ConstantGenerator { position: usize },
    #[error("generator {divisor} divides generator {multiple}; the system is not minimal")]
    NonMinimalSystem { divisor: usize, multiple: usize },
    #[error("variable x{variable} is outside the declared ring 1..={n}")]
    VariableOutOfRange { variable: u32, n: u32 },
    #[error("ring size n={n} exceeds the one-word capacity of 64 variables")]
    RingTooLarge { n: u32 },
    #[error("position {position} is outside 2..={count}")]
    PositionOutOfRange { position: usize, count: usize },
    #[error("indeg of an empty monomial list is undefined")]
    EmptyMonomialList,
    #[error("non-face enumeration is capped at n={limit}, got n={n}")]
    EnumerationCapExceeded { n: u32, limit: u32 },
}

/// Renders a monomial as `x1*x4*x5` (ascending indices); the constant
/// monomial renders as `1`.
pub fn monomial_string(m: Monomial) -> String {
    if m.is_empty() {
        return "1".to_string();
    }
    m.vertices()
        .map(|v| format!("x{v}"))
        .collect::<Vec<_>>()
        .join("*")
}

/// An ordered minimal generating system of a squarefree monomial ideal.
///
/// Minimality (no generator divides another) is enforced at construction.
/// The order is significant: residual and colon computations depend on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedIdeal {
    n: u32,
    gens: Vec<Monomial>,
}

impl OrderedIdeal {
    pub fn new<I>(n: u32, gens: I) -> Result<Self, IdealError>
    where
        I: IntoIterator<Item = Monomial>,
    {
        if n > MAX_VERTICES {
            return Err(IdealError::RingTooLarge { n });
        }
        let gens: Vec<Monomial> = gens.into_iter().collect();
        if gens.is_empty() {
            return Err(IdealError::EmptyGenerators);
        }
        for (i, &g) in gens.iter().enumerate() {
            if g.is_empty() {
                return Err(IdealError::ConstantGenerator { position: i + 1 });
            }
            let top = g.max_vertex().expect("nonempty support");
            if top > n {
                return Err(IdealError::VariableOutOfRange { variable: top, n });
            }
        }
        for (i, &a) in gens.iter().enumerate() {
            for (j, &b) in gens.iter().enumerate() {
                if i != j && a.is_subset_of(b) {
                    return Err(IdealError::NonMinimalSystem {
                        divisor: i + 1,
                        multiple: j + 1,
                    });
                }
            }
        }
        Ok(Self { n, gens })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    fn check_position(&self, position: usize) -> Result<(), IdealError> {
        // position 1 has no predecessors and is rejected
        if position < 2 || position > self.gens.len() {
            return Err(IdealError::PositionOutOfRange {
                position,
                count: self.gens.len(),
            });
        }
        Ok(())
    }

    /// The residual set at a 1-based `position >= 2`: the quotients of the
    /// generator there by its gcd with each predecessor, in predecessor
    /// order, together with their minimal antichain under divisibility.
    pub fn residual_set(&self, position: usize) -> Result<ResidualSet, IdealError> {
        self.check_position(position)?;
        let m_i = self.gens[position - 1];
        let raw: Vec<Monomial> = self.gens[..position - 1]
            .iter()
            .map(|&m_k| m_i.difference(m_k))
            .collect();
        let minimal = minimal_generators(&raw);
        Ok(ResidualSet {
            position,
            raw,
            minimal,
        })
    }

    /// Minimal generators of the colon ideal of the predecessors by the
    /// generator at a 1-based `position >= 2`. Note the numerator is the
    /// predecessor, dual to [`Self::residual_set`].
    pub fn colon_generators(&self, position: usize) -> Result<Vec<Monomial>, IdealError> {
        self.check_position(position)?;
        let m_i = self.gens[position - 1];
        let raw: Vec<Monomial> = self.gens[..position - 1]
            .iter()
            .map(|&m_k| m_k.difference(m_i))
            .collect();
        Ok(minimal_generators(&raw))
    }

    /// Whether every residual set of this order is minimally generated by
    /// linear monomials. On failure reports the least failing position.
    pub fn has_linear_residuals(&self) -> (bool, Option<usize>) {
        for i in 2..=self.gens.len() {
            let rs = self.residual_set(i).expect("position in range");
            if rs.minimal.iter().any(|m| m.size() != 1) {
                return (false, Some(i));
            }
        }
        (true, None)
    }

    /// Whether `indeg` of the colon ideal is 1 at every position `>= 2`.
    /// Strictly weaker than linear residuals.
    pub fn has_quasi_linear_quotients(&self) -> bool {
        (2..=self.gens.len()).all(|i| {
            let colon = self.colon_generators(i).expect("position in range");
            indeg(&colon) == Ok(1)
        })
    }

    /// Pure of some degree `d` with full support: every generator has
    /// degree `d` and every variable of the declared ring divides some
    /// generator.
    pub fn is_pure_squarefree(&self) -> bool {
        let support = self.gens.iter().copied().fold(Face::EMPTY, Face::union);
        let degree = self.gens[0].size();
        support == Face::full(self.n) && self.gens.iter().all(|g| g.size() == degree)
    }
}

/// The residual set at one position of an [`OrderedIdeal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualSet {
    position: usize,
    raw: Vec<Monomial>,
    minimal: Vec<Monomial>,
}

impl ResidualSet {
    /// 1-based position `i` the set belongs to.
    pub fn position(&self) -> usize {
        self.position
    }

    /// One residual per predecessor, in predecessor order.
    pub fn raw(&self) -> &[Monomial] {
        &self.raw
    }

    /// Minimal antichain of the residuals under divisibility; nonempty
    /// whenever the position is valid.
    pub fn minimal(&self) -> &[Monomial] {
        &self.minimal
    }

    /// Degree of the smallest minimal residual.
    pub fn indeg(&self) -> u32 {
        self.minimal
            .iter()
            .map(|m| m.size())
            .min()
            .expect("nonempty")
    }

    /// Whether the minimal residuals are all linear.
    pub fn is_linear(&self) -> bool {
        self.minimal.iter().all(|m| m.size() == 1)
    }
}

/// The facet ideal: one generator per facet, with the facet as support, in
/// the complex's canonical facet order. Minimality is automatic because
/// facets form an antichain.
pub fn facet_ideal(complex: &SimplicialComplex) -> OrderedIdeal {
    OrderedIdeal {
        n: complex.n(),
        gens: complex.facets().to_vec(),
    }
}

/// Deduplicated minimal antichain under divisibility: keeps a monomial iff
/// no other element of the list divides it. Canonically sorted.
pub fn minimal_generators(monomials: &[Monomial]) -> Vec<Monomial> {
    let mut sorted = monomials.to_vec();
    sorted.sort();
    sorted.dedup();
    sorted
        .iter()
        .copied()
        .filter(|&m| !sorted.iter().any(|&d| d.is_strict_subset_of(m)))
        .collect()
}

/// The minimum degree among the minimal generators of the list. For a
/// monomial ideal this is the least `j` with a degree-`j` minimal generator,
/// i.e. the least nonzero graded Betti number in homological degree 0.
pub fn indeg(monomials: &[Monomial]) -> Result<u32, IdealError> {
    if monomials.is_empty() {
        return Err(IdealError::EmptyMonomialList);
    }
    Ok(minimal_generators(monomials)
        .iter()
        .map(|m| m.size())
        .min()
        .expect("nonempty"))
}

/// Iterator over all size-`k` subsets of `{1..n}` as bitsets, in ascending
/// numeric order (Gosper's hack).
struct SizeKSubsets {
    current: u64,
    limit: u64,
    done: bool,
}

fn size_k_subsets(n: u32, k: u32) -> SizeKSubsets {
    debug_assert!(n < 63 && k >= 1);
    SizeKSubsets {
        current: (1u64 << k) - 1,
        limit: 1u64 << n,
        done: k > n,
    }
}

impl Iterator for SizeKSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done || self.current >= self.limit {
            return None;
        }
        let out = self.current;
        let low = self.current & self.current.wrapping_neg();
        let ripple = self.current.wrapping_add(low);
        if ripple == 0 {
            self.done = true;
        } else {
            self.current = (((ripple ^ self.current) >> 2) / low) | ripple;
        }
        Some(out)
    }
}

/// Minimal non-faces of the complex as monomials, canonically sorted: the
/// inclusion-minimal subsets of `1..=n` that are not contained in any facet.
///
/// Enumerates subsets by increasing size up to `dim + 2` (a minimal non-face
/// can never be larger), pruning supersets of non-faces already found.
pub fn minimal_nonfaces(complex: &SimplicialComplex) -> Result<Vec<Monomial>, IdealError> {
    minimal_nonfaces_with_limit(complex, NONFACE_ENUMERATION_LIMIT)
}

pub fn minimal_nonfaces_with_limit(
    complex: &SimplicialComplex,
    limit: u32,
) -> Result<Vec<Monomial>, IdealError> {
    let n = complex.n();
    // the subset walk shifts one-word masks, so 62 is the hard ceiling
    // however high the caller raises the limit
    let limit = limit.min(62);
    if n > limit {
        return Err(IdealError::EnumerationCapExceeded { n, limit });
    }
    let facets = complex.facets();
    let max_size = ((complex.dimension() + 2) as u32).min(n);
    let mut found: Vec<Monomial> = Vec::new();
    for k in 1..=max_size {
        for bits in size_k_subsets(n, k) {
            let subset = Face::from_vertices((0..64).filter(|b| bits >> b & 1 == 1).map(|b| b + 1))
                .expect("bits within range");
            if found.iter().any(|&m| m.is_subset_of(subset)) {
                continue;
            }
            if !facets.iter().any(|&f| subset.is_subset_of(f)) {
                found.push(subset);
            }
        }
    }
    found.sort();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::intersection_complex;

    fn m(vs: &[u32]) -> Monomial {
        Face::from_vertices(vs.iter().copied()).unwrap()
    }

    fn complex(n: u32, facets: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::new(n, facets.iter().map(|vs| m(vs))).unwrap()
    }

    /// The triangle-cycle facet ideal in its classical listed order, which
    /// differs from the canonical facet order.
    fn triangle_cycle_ideal() -> OrderedIdeal {
        OrderedIdeal::new(
            5,
            [m(&[1, 2, 3]), m(&[2, 3, 4]), m(&[3, 4, 5]), m(&[1, 4, 5])],
        )
        .unwrap()
    }

    #[test]
    fn facet_ideal_uses_canonical_order() {
        let c = complex(5, &[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[1, 4, 5]]);
        let ideal = facet_ideal(&c);
        assert_eq!(
            ideal.gens(),
            &[m(&[1, 2, 3]), m(&[1, 4, 5]), m(&[2, 3, 4]), m(&[3, 4, 5])]
        );
        assert_eq!(ideal.n(), 5);

        let single = facet_ideal(&complex(1, &[&[1]]));
        assert_eq!(single.gens(), &[m(&[1])]);
    }

    #[test]
    fn facet_ideal_of_gallai_style_complex() {
        let c = complex(
            6,
            &[
                &[1, 2],
                &[1, 3, 4],
                &[1, 3, 5],
                &[2, 3, 5],
                &[3, 5, 6],
                &[4, 5, 6],
                &[2, 3, 4],
            ],
        );
        let ideal = facet_ideal(&c);
        assert_eq!(ideal.len(), 7);
        assert!(ideal.gens().contains(&m(&[1, 2])));
        assert!(ideal.gens().contains(&m(&[1, 3, 4])));
    }

    #[test]
    fn minimal_generators_cases() {
        assert_eq!(
            minimal_generators(&[m(&[1]), m(&[1, 5]), m(&[4, 5])]),
            vec![m(&[1]), m(&[4, 5])]
        );
        assert_eq!(
            minimal_generators(&[m(&[2, 3]), m(&[2, 3]), m(&[3])]),
            vec![m(&[3])]
        );
        assert_eq!(minimal_generators(&[]), Vec::<Monomial>::new());
    }

    #[test]
    fn residual_set_cases() {
        let ideal = triangle_cycle_ideal();
        let rs = ideal.residual_set(4).unwrap();
        assert_eq!(rs.raw(), &[m(&[4, 5]), m(&[1, 5]), m(&[1])]);
        assert_eq!(rs.minimal(), &[m(&[1]), m(&[4, 5])]);
        assert!(!rs.is_linear());

        let rs = ideal.residual_set(2).unwrap();
        assert_eq!(rs.raw(), &[m(&[4])]);
        assert_eq!(rs.minimal(), &[m(&[4])]);
        assert!(rs.is_linear());

        assert_eq!(
            ideal.residual_set(1),
            Err(IdealError::PositionOutOfRange {
                position: 1,
                count: 4
            })
        );
    }

    #[test]
    fn colon_generators_cases() {
        let ideal = triangle_cycle_ideal();
        assert_eq!(ideal.colon_generators(4).unwrap(), vec![m(&[3])]);
        assert_eq!(ideal.colon_generators(2).unwrap(), vec![m(&[1])]);
        assert_eq!(
            ideal.colon_generators(1),
            Err(IdealError::PositionOutOfRange {
                position: 1,
                count: 4
            })
        );
    }

    #[test]
    fn indeg_cases() {
        assert_eq!(indeg(&[m(&[1]), m(&[4, 5])]), Ok(1));
        assert_eq!(indeg(&[m(&[4, 5]), m(&[1, 5])]), Ok(2));
        assert_eq!(indeg(triangle_cycle_ideal().gens()), Ok(3));
        assert_eq!(indeg(&[]), Err(IdealError::EmptyMonomialList));
    }

    #[test]
    fn linear_residuals_cases() {
        let (ok, first) = triangle_cycle_ideal().has_linear_residuals();
        assert!(!ok);
        assert_eq!(first, Some(4));

        let chain = facet_ideal(&complex(4, &[&[1, 2, 3], &[2, 3, 4]]));
        assert_eq!(chain.has_linear_residuals(), (true, None));

        let single = OrderedIdeal::new(3, [m(&[1, 2])]).unwrap();
        assert_eq!(single.has_linear_residuals(), (true, None));
    }

    #[test]
    fn quasi_linear_quotients_cases() {
        assert!(triangle_cycle_ideal().has_quasi_linear_quotients());

        let disjoint = OrderedIdeal::new(4, [m(&[1, 2]), m(&[3, 4])]).unwrap();
        assert_eq!(disjoint.colon_generators(2).unwrap(), vec![m(&[1, 2])]);
        assert!(!disjoint.has_quasi_linear_quotients());

        let single = OrderedIdeal::new(3, [m(&[1, 2])]).unwrap();
        assert!(single.has_quasi_linear_quotients());
    }

    #[test]
    fn pure_squarefree_cases() {
        assert!(triangle_cycle_ideal().is_pure_squarefree());
        let mixed = OrderedIdeal::new(4, [m(&[1, 2]), m(&[2, 3, 4])]).unwrap();
        assert!(!mixed.is_pure_squarefree());
        let sparse = OrderedIdeal::new(3, [m(&[1, 2])]).unwrap();
        assert!(!sparse.is_pure_squarefree());
    }

    #[test]
    fn ordered_ideal_rejects_non_minimal_systems() {
        assert_eq!(
            OrderedIdeal::new(3, [m(&[1]), m(&[1, 2])]),
            Err(IdealError::NonMinimalSystem {
                divisor: 1,
                multiple: 2
            })
        );
        assert_eq!(
            OrderedIdeal::new(3, [m(&[1, 2]), m(&[1, 2])]),
            Err(IdealError::NonMinimalSystem {
                divisor: 1,
                multiple: 2
            })
        );
        assert_eq!(OrderedIdeal::new(3, []), Err(IdealError::EmptyGenerators));
        assert_eq!(
            OrderedIdeal::new(3, [Face::EMPTY]),
            Err(IdealError::ConstantGenerator { position: 1 })
        );
        assert_eq!(
            OrderedIdeal::new(3, [m(&[4])]),
            Err(IdealError::VariableOutOfRange { variable: 4, n: 3 })
        );
    }

    /// Brute-force oracle: enumerate every subset of `{1..n}`, keep the
    /// non-faces, then filter to the inclusion-minimal ones.
    fn nonfaces_by_enumeration(c: &SimplicialComplex) -> Vec<Monomial> {
        let n = c.n();
        let mut nonfaces: Vec<Monomial> = Vec::new();
        for bits in 1u64..(1 << n) {
            let s =
                Face::from_vertices((0..n).filter(|b| bits >> b & 1 == 1).map(|b| b + 1)).unwrap();
            if !c.facets().iter().any(|&f| s.is_subset_of(f)) {
                nonfaces.push(s);
            }
        }
        let mut minimal: Vec<Monomial> = nonfaces
            .iter()
            .copied()
            .filter(|&s| !nonfaces.iter().any(|&t| t.is_strict_subset_of(s)))
            .collect();
        minimal.sort();
        minimal
    }

    #[test]
    fn minimal_nonfaces_cases() {
        let path = complex(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(minimal_nonfaces(&path).unwrap(), vec![m(&[1, 3])]);

        let cycle = complex(5, &[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[1, 4, 5]]);
        let expected = vec![m(&[2, 5]), m(&[1, 2, 4]), m(&[1, 3, 4]), m(&[1, 3, 5])];
        assert_eq!(nonfaces_by_enumeration(&cycle), expected);
        assert_eq!(minimal_nonfaces(&cycle).unwrap(), expected);

        let simplex = complex(3, &[&[1, 2, 3]]);
        assert_eq!(minimal_nonfaces(&simplex).unwrap(), Vec::<Monomial>::new());
    }

    #[test]
    fn minimal_nonfaces_agrees_with_enumeration_oracle() {
        for seed in 0..150u64 {
            let n = 2 + (seed % 6) as u32;
            let c = crate::random::random_complex(seed, n, 5).unwrap();
            assert_eq!(
                minimal_nonfaces(&c).unwrap(),
                nonfaces_by_enumeration(&c),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn minimal_nonfaces_cap() {
        let c = complex(21, &[&[1, 2]]);
        assert_eq!(
            minimal_nonfaces(&c),
            Err(IdealError::EnumerationCapExceeded { n: 21, limit: 20 })
        );
        assert!(minimal_nonfaces_with_limit(&c, 21).is_ok());

        // limits above the mask width clamp to 62 instead of overflowing
        let wide = complex(64, &[&[1, 2]]);
        assert_eq!(
            minimal_nonfaces_with_limit(&wide, u32::MAX),
            Err(IdealError::EnumerationCapExceeded { n: 64, limit: 62 })
        );
    }

    #[test]
    fn residual_and_colon_are_dual() {
        for seed in 0..200u64 {
            let n = 3 + (seed % 5) as u32;
            let c = crate::random::random_complex(seed, n, 6).unwrap();
            let ideal = facet_ideal(&c);
            for i in 2..=ideal.len() {
                let f_i = ideal.gens()[i - 1];
                let residuals = ideal.residual_set(i).unwrap();
                for (k, &u_k) in residuals.raw().iter().enumerate() {
                    let f_k = ideal.gens()[k];
                    let colon_raw = f_k.difference(f_i);
                    assert_eq!(u_k, f_i.difference(f_k));
                    assert!(u_k.intersection(colon_raw).is_empty());
                    // union of the dual quotients is the symmetric difference
                    assert_eq!(
                        u_k.union(colon_raw),
                        f_i.union(f_k).difference(f_i.intersection(f_k))
                    );
                    // deg(u_k) = dim(F_i) - dim(F_i ∩ F_k)
                    assert_eq!(u_k.size() as i32, f_i.dim() - f_i.intersection(f_k).dim());
                }
            }
        }
    }

    #[test]
    fn residual_indeg_matches_intersection_dimension() {
        // indeg of the minimal residuals at step i equals
        // dim(F_i) - dim(<F_1..F_{i-1}> ∩ <F_i>) for every order
        use itertools::Itertools;
        for seed in 0..100u64 {
            let n = 3 + (seed % 5) as u32;
            let c = crate::random::random_complex(seed, n, 4).unwrap();
            let facets = c.facets();
            for perm in (0..facets.len()).permutations(facets.len()) {
                let ordered: Vec<Face> = perm.iter().map(|&p| facets[p]).collect();
                let ideal = OrderedIdeal::new(c.n(), ordered.clone()).unwrap();
                for i in 2..=ordered.len() {
                    let rs = ideal.residual_set(i).unwrap();
                    let ic = intersection_complex(&ordered[..i - 1], ordered[i - 1]).unwrap();
                    assert_eq!(rs.indeg() as i32, ordered[i - 1].dim() - ic.dim());
                }
            }
        }
    }

    #[test]
    fn facet_ideal_round_trips_through_supports() {
        for seed in 0..100u64 {
            let n = 2 + (seed % 6) as u32;
            let c = crate::random::random_complex(seed, n, 5).unwrap();
            let ideal = facet_ideal(&c);
            let back = SimplicialComplex::new(ideal.n(), ideal.gens().iter().copied()).unwrap();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn minimal_generators_is_antichain_and_covers_input() {
        for seed in 0..100u64 {
            let mut rng = crate::random::SplitMix64::new(seed);
            let count = 1 + rng.below(8) as usize;
            let ms: Vec<Monomial> = (0..count)
                .map(|_| {
                    let bits = rng.next_u64() & 0x7f;
                    Face::from_vertices((0..7).filter(|b| bits >> b & 1 == 1).map(|b| b + 1))
                        .unwrap()
                })
                .collect();
            let min = minimal_generators(&ms);
            for (i, &a) in min.iter().enumerate() {
                for (j, &b) in min.iter().enumerate() {
                    assert!(i == j || !a.is_subset_of(b), "not an antichain");
                }
            }
            for &input in &ms {
                assert!(min.iter().any(|&g| g.is_subset_of(input)));
            }
        }
    }

    #[test]
    fn monomial_strings() {
        assert_eq!(monomial_string(m(&[1, 4, 5])), "x1*x4*x5");
        assert_eq!(monomial_string(m(&[2])), "x2");
        assert_eq!(monomial_string(Face::EMPTY), "1");
    }
}
