//! Combinatorial Nullstellensatz engine: certify a nonzero target
//! coefficient, then locate a grid witness by bounded exhaustive search.
//!
//! The principle: if `f` has total degree exactly `k_1 + ... + k_n`, the
//! coefficient of `x_1^{k_1} ... x_n^{k_n}` is nonzero, and `|A_i| > k_i`
//! for every `i`, then `f` is nonzero somewhere on the grid `A_1 x ... x A_n`.
//! The witness search is therefore guaranteed to succeed whenever the
//! certificate holds; exhausting the grid under a valid certificate is a
//! fatal internal inconsistency, not a negative result.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::budget::Budget;
use crate::polyring::{CoefficientRing, Monomial, PolyError, SparsePoly};

/// Errors from certification and witness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CnError {
    Poly(PolyError),
    /// Grid shape does not match the polynomial arity.
    GridArity { expected: usize, got: usize },
    /// Grid ring differs from the polynomial ring.
    RingMismatch,
    /// A grid set contains a repeated element (after ring normalization).
    DuplicateGridElement { set: usize },
    /// `|A_i| <= k_i`: the hypothesis `|A_i| > k_i` fails.
    GridTooSmall { set: usize, size: usize, target: u32 },
    /// `deg f` exceeds the sum of the targets.
    DegreeTooLarge { degree: u32, target_sum: u32 },
    /// Search budget exhausted before the grid was covered.
    BudgetExceeded { evaluations: u64 },
    /// A valid certificate produced no witness on the full grid. This must
    /// never happen; it indicates a defect in the engine itself.
    InternalInconsistency,
}

impl fmt::Display for CnError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CnError::Poly(e) => write!(f, "{e}"),
            CnError::GridArity { expected, got } => {
                write!(f, "grid has {got} sets, polynomial has {expected} variables")
            }
            CnError::RingMismatch => write!(f, "grid and polynomial rings differ"),
            CnError::DuplicateGridElement { set } => {
                write!(f, "grid set {set} contains a repeated element")
            }
            CnError::GridTooSmall { set, size, target } => write!(
                f,
                "grid set {set} has {size} elements, needs more than {target}"
            ),
            CnError::DegreeTooLarge { degree, target_sum } => write!(
                f,
                "polynomial degree {degree} exceeds target sum {target_sum}"
            ),
            CnError::BudgetExceeded { evaluations } => {
                write!(f, "evaluation budget exhausted after {evaluations} points")
            }
            CnError::InternalInconsistency => write!(
                f,
                "certificate is valid but no grid witness exists (engine defect)"
            ),
        }
    }
}

impl std::error::Error for CnError {}

impl From<PolyError> for CnError {
    fn from(e: PolyError) -> Self {
        CnError::Poly(e)
    }
}

/// The grid `A_1 x ... x A_n` together with the target exponents
/// `(k_1, ..., k_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridFamily {
    ring: CoefficientRing,
    sets: Vec<Vec<BigInt>>,
    target_degrees: Vec<u32>,
}

impl GridFamily {
    /// Validates element distinctness within each set and the size
    /// hypothesis `|A_i| > k_i`.
    pub fn new(
        ring: CoefficientRing,
        sets: Vec<Vec<BigInt>>,
        target_degrees: Vec<u32>,
    ) -> Result<Self, CnError> {
        if sets.len() != target_degrees.len() {
            return Err(CnError::GridArity {
                expected: target_degrees.len(),
                got: sets.len(),
            });
        }
        let sets: Vec<Vec<BigInt>> = sets
            .into_iter()
            .map(|set| set.into_iter().map(|v| ring.normalize(v)).collect())
            .collect();
        for (i, set) in sets.iter().enumerate() {
            let mut sorted = set.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != set.len() {
                return Err(CnError::DuplicateGridElement { set: i });
            }
            if set.len() <= target_degrees[i] as usize {
                return Err(CnError::GridTooSmall {
                    set: i,
                    size: set.len(),
                    target: target_degrees[i],
                });
            }
        }
        Ok(GridFamily {
            ring,
            sets,
            target_degrees,
        })
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn sets(&self) -> &[Vec<BigInt>] {
        &self.sets
    }

    pub fn target_degrees(&self) -> &[u32] {
        &self.target_degrees
    }

    pub fn target_sum(&self) -> u32 {
        self.target_degrees.iter().sum()
    }

    fn check_poly(&self, f: &SparsePoly) -> Result<(), CnError> {
        if f.arity() != self.sets.len() {
            return Err(CnError::GridArity {
                expected: f.arity(),
                got: self.sets.len(),
            });
        }
        if f.ring() != &self.ring {
            return Err(CnError::RingMismatch);
        }
        Ok(())
    }
}

/// Outcome of certification: the extracted coefficient, whether the total
/// degree matches the target sum exactly, and the grid witness when the
/// certificate applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub coefficient: BigInt,
    pub degree_matches: bool,
    pub witness: Option<Vec<BigInt>>,
}

/// Certifies the target coefficient of `f` against `grid` and, when the
/// certificate applies (nonzero coefficient at exactly matching total
/// degree), finds the lexicographically first grid witness.
///
/// A zero coefficient is not an error: it yields a certificate with no
/// claim and no witness.
pub fn certify(f: &SparsePoly, grid: &GridFamily) -> Result<Certificate, CnError> {
    grid.check_poly(f)?;
    let target_sum = grid.target_sum();
    let degree = f.total_degree();
    if degree > target_sum {
        return Err(CnError::DegreeTooLarge {
            degree,
            target_sum,
        });
    }
    let target = Monomial::new(grid.target_degrees.clone());
    let coefficient = grid.ring.normalize(f.coeff(&target)?);
    let degree_matches = degree == target_sum;
    if coefficient.is_zero() || !degree_matches {
        return Ok(Certificate {
            coefficient,
            degree_matches,
            witness: None,
        });
    }
    match witness_search(f, grid, &Budget::unlimited())? {
        Some(witness) => Ok(Certificate {
            coefficient,
            degree_matches,
            witness: Some(witness),
        }),
        None => Err(CnError::InternalInconsistency),
    }
}

/// First tuple of the grid, in position order (odometer with the first
/// coordinate advancing fastest), where `f` does not vanish. `Ok(None)`
/// means the whole grid was searched and every value was zero; running out
/// of budget is an error, reported separately.
pub fn witness_search(
    f: &SparsePoly,
    grid: &GridFamily,
    budget: &Budget,
) -> Result<Option<Vec<BigInt>>, CnError> {
    grid.check_poly(f)?;
    let n = grid.sets.len();
    let mut index = vec![0usize; n];
    let mut meter = budget.meter();
    loop {
        if !meter.tick() {
            return Err(CnError::BudgetExceeded {
                evaluations: meter.used(),
            });
        }
        let point: Vec<BigInt> = index
            .iter()
            .enumerate()
            .map(|(i, &ix)| grid.sets[i][ix].clone())
            .collect();
        let value = f.evaluate(&point)?;
        if !grid.ring.is_zero(&value) {
            return Ok(Some(point));
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(None);
            }
            index[pos] += 1;
            if index[pos] < grid.sets[pos].len() {
                break;
            }
            index[pos] = 0;
            pos += 1;
        }
    }
}
