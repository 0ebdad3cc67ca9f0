//! Restricted-sumset machinery over prime fields (and the group-side
//! transfer): governing coefficients in both direct-extraction and
//! closed-form evaluation, witness searches with clause-by-clause
//! revalidation, and cardinality lower bounds checked by full enumeration.
//!
//! The parameter bundle ties five positive integers `h, k, l, m, n` to the
//! derived quantities used everywhere: the exclusion capacities
//! `K = (k-1)n - (m+1)C(n,2)` and `L = (l-1)n - (h+1)C(n,2)`, and the exact
//! integer divisor `N = K0 * L0` of the closed-form coefficient. Every
//! factorial ratio is computed over the integers and must divide exactly;
//! a non-exact division is reported as a fatal inconsistency, never rounded.

mod bounds;
mod lemmas;
mod witnesses;

pub use bounds::{
    corollary51_sdr, theorem14_check, theorem51_sumset, SdrOutcome, Theorem14Report,
    Theorem51Report,
};
pub use lemmas::{
    lemma41_coefficient, lemma41_coefficient_symbolic, lemma51_check, CoeffMode, Lemma51Report,
};
pub use witnesses::{
    theorem12_polynomial, theorem12_witness, theorem13_witness, verify_theorem12_witness,
    verify_theorem13_witness, FieldInstance, GroupInstance, WitnessOutcome,
};

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::groups::GroupError;
use crate::permdet::MatrixError;
use crate::polyring::{choose2, exact_div, factorial, PolyError};

/// Errors from parameter validation and the sumset operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SumsetError {
    Poly(PolyError),
    Group(GroupError),
    Matrix(MatrixError),
    /// One of `h, k, l, m, n` is zero.
    NonPositiveParameter(&'static str),
    /// A degree condition `k-1 >= m(n-1)` (or its `l, h` twin) fails.
    DegreeCondition {
        parameter: &'static str,
        needed: u64,
        got: u64,
    },
    /// Field operations require a prime modulus.
    NotAPrimeField,
    /// The field characteristic is at or below a required bound.
    CharacteristicTooSmall { p: u64, must_exceed: u64 },
    /// A family does not have the expected number of sets.
    WrongSetCount {
        family: &'static str,
        expected: usize,
        got: usize,
    },
    /// A set does not have the expected cardinality.
    WrongCardinality {
        family: &'static str,
        index: usize,
        expected: usize,
        got: usize,
    },
    /// A set contains a repeated element (after normalization).
    DuplicateElement { family: &'static str, index: usize },
    /// The weights `c_i` must be pairwise distinct.
    WeightsNotDistinct,
    /// A polynomial that must be monic of the stated degree is not.
    NotMonic { family: &'static str, index: usize },
    /// A polynomial coefficient vector has the wrong length.
    WrongDegree {
        family: &'static str,
        index: usize,
        expected_len: usize,
        got: usize,
    },
    /// The top coefficients `[x^m] P_i` must be pairwise distinct.
    LeadingCoefficientsNotDistinct,
    /// An exclusion set exceeds its capacity.
    ExclusionTooLarge {
        family: &'static str,
        size: usize,
        max: u64,
    },
    /// A pairwise exclusion set `S_ij` exceeds its capacity `2m - 1`.
    PairExclusionTooLarge {
        i: usize,
        j: usize,
        size: usize,
        max: u64,
    },
    /// A pairwise exclusion key is out of range or not `i < j`.
    BadPairIndex { i: usize, j: usize },
    /// Instance is too large for the direct-extraction route.
    DeskScaleExceeded { detail: String },
    /// An exact integer division failed; fatal inconsistency.
    NonIntegralRatio { context: &'static str },
    /// A guaranteed object was not found by exhaustive search; fatal
    /// inconsistency, expected never.
    InternalInconsistency { context: &'static str },
    /// Search node budget exhausted; not a mathematical claim.
    BudgetExceeded { nodes: u64 },
}

impl fmt::Display for SumsetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumsetError::Poly(e) => write!(f, "{e}"),
            SumsetError::Group(e) => write!(f, "{e}"),
            SumsetError::Matrix(e) => write!(f, "{e}"),
            SumsetError::NonPositiveParameter(name) => {
                write!(f, "parameter {name} must be positive")
            }
            SumsetError::DegreeCondition {
                parameter,
                needed,
                got,
            } => write!(
                f,
                "degree condition fails: {parameter} - 1 = {got} must be at least {needed}"
            ),
            SumsetError::NotAPrimeField => write!(f, "operation requires a prime field"),
            SumsetError::CharacteristicTooSmall { p, must_exceed } => {
                write!(f, "field characteristic {p} must exceed {must_exceed}")
            }
            SumsetError::WrongSetCount {
                family,
                expected,
                got,
            } => write!(f, "family {family} has {got} sets, expected {expected}"),
            SumsetError::WrongCardinality {
                family,
                index,
                expected,
                got,
            } => write!(
                f,
                "{family}[{index}] has {got} elements, expected {expected}"
            ),
            SumsetError::DuplicateElement { family, index } => {
                write!(f, "{family}[{index}] contains a repeated element")
            }
            SumsetError::WeightsNotDistinct => write!(f, "weights must be pairwise distinct"),
            SumsetError::NotMonic { family, index } => {
                write!(f, "{family}[{index}] must be monic of the stated degree")
            }
            SumsetError::WrongDegree {
                family,
                index,
                expected_len,
                got,
            } => write!(
                f,
                "{family}[{index}] has {got} coefficients, expected {expected_len}"
            ),
            SumsetError::LeadingCoefficientsNotDistinct => {
                write!(f, "top-degree coefficients must be pairwise distinct")
            }
            SumsetError::ExclusionTooLarge { family, size, max } => {
                write!(f, "exclusion set {family} has {size} elements, capacity {max}")
            }
            SumsetError::PairExclusionTooLarge { i, j, size, max } => write!(
                f,
                "pair exclusion S[{i},{j}] has {size} elements, must be under {max}"
            ),
            SumsetError::BadPairIndex { i, j } => {
                write!(f, "pair exclusion key ({i}, {j}) must satisfy i < j within range")
            }
            SumsetError::DeskScaleExceeded { detail } => {
                write!(f, "instance exceeds the direct-extraction scale: {detail}")
            }
            SumsetError::NonIntegralRatio { context } => write!(
                f,
                "factorial ratio for {context} did not divide exactly (fatal inconsistency)"
            ),
            SumsetError::InternalInconsistency { context } => {
                write!(f, "fatal inconsistency: {context}")
            }
            SumsetError::BudgetExceeded { nodes } => {
                write!(f, "search budget exhausted after {nodes} nodes")
            }
        }
    }
}

impl std::error::Error for SumsetError {}

impl From<PolyError> for SumsetError {
    fn from(e: PolyError) -> Self {
        SumsetError::Poly(e)
    }
}

impl From<GroupError> for SumsetError {
    fn from(e: GroupError) -> Self {
        SumsetError::Group(e)
    }
}

impl From<MatrixError> for SumsetError {
    fn from(e: MatrixError) -> Self {
        SumsetError::Matrix(e)
    }
}

/// The five base parameters and their validated derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumsetParams {
    h: u32,
    k: u32,
    l: u32,
    m: u32,
    n: usize,
}

impl SumsetParams {
    /// Validates positivity and the degree conditions
    /// `k - 1 >= m(n - 1)`, `l - 1 >= h(n - 1)`.
    pub fn new(h: u32, k: u32, l: u32, m: u32, n: usize) -> Result<Self, SumsetError> {
        for (name, value) in [
            ("h", h as u64),
            ("k", k as u64),
            ("l", l as u64),
            ("m", m as u64),
            ("n", n as u64),
        ] {
            if value == 0 {
                return Err(SumsetError::NonPositiveParameter(name));
            }
        }
        let need_k = m as u64 * (n as u64 - 1);
        if (k as u64) - 1 < need_k {
            return Err(SumsetError::DegreeCondition {
                parameter: "k",
                needed: need_k,
                got: k as u64 - 1,
            });
        }
        let need_l = h as u64 * (n as u64 - 1);
        if (l as u64) - 1 < need_l {
            return Err(SumsetError::DegreeCondition {
                parameter: "l",
                needed: need_l,
                got: l as u64 - 1,
            });
        }
        Ok(SumsetParams { h, k, l, m, n })
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `K = (k-1)n - (m+1) C(n,2)`; nonnegative under the degree condition.
    pub fn big_k(&self) -> u64 {
        let value = (self.k as i128 - 1) * self.n as i128
            - (self.m as i128 + 1) * choose2(self.n) as i128;
        debug_assert!(value >= 0, "degree condition keeps K nonnegative");
        value as u64
    }

    /// `L = (l-1)n - (h+1) C(n,2)`.
    pub fn big_l(&self) -> u64 {
        let value = (self.l as i128 - 1) * self.n as i128
            - (self.h as i128 + 1) * choose2(self.n) as i128;
        debug_assert!(value >= 0, "degree condition keeps L nonnegative");
        value as u64
    }

    /// `K0 = m^{-C(n,2)} prod_r (k-1-rm)!/r!`, exact.
    pub fn k0(&self) -> Result<BigInt, SumsetError> {
        stair_divisor(self.k, self.m, self.n, "K0")
    }

    /// `L0 = h^{-C(n,2)} prod_r (l-1-rh)!/r!`, exact.
    pub fn l0(&self) -> Result<BigInt, SumsetError> {
        stair_divisor(self.l, self.h, self.n, "L0")
    }

    /// `N = K0 * L0`, the exact divisor in the closed-form coefficient.
    pub fn closed_form_divisor(&self) -> Result<BigInt, SumsetError> {
        Ok(self.k0()? * self.l0()?)
    }

    /// The closed-form scalar `K! L! / N`, exact.
    pub fn closed_form_scalar(&self) -> Result<BigInt, SumsetError> {
        let numerator = factorial(self.big_k() as u32) * factorial(self.big_l() as u32);
        exact_div(&numerator, &self.closed_form_divisor()?)
            .ok_or(SumsetError::NonIntegralRatio { context: "K!L!/N" })
    }
}

/// `step^{-C(n,2)} * prod_{r=0}^{n-1} (cap-1-r*step)! / r!` as one exact
/// division: the numerator product of factorials over the denominator
/// `step^{C(n,2)} * prod r!`.
fn stair_divisor(cap: u32, step: u32, n: usize, context: &'static str) -> Result<BigInt, SumsetError> {
    let mut numerator = BigInt::one();
    let mut denominator = BigInt::from(step).pow(choose2(n) as u32);
    for r in 0..n as u32 {
        numerator *= factorial(cap - 1 - r * step);
        denominator *= factorial(r);
    }
    exact_div(&numerator, &denominator).ok_or(SumsetError::NonIntegralRatio { context })
}
