//! Permanents and determinants over commutative rings.
//!
//! Matrices are generic over a small [`RingElem`] trait so the same code
//! serves exact integers and sparse polynomials. The permanent has two
//! routes: an inclusion-exclusion formula walked with subset Gray-code
//! updates (the fast path for scalar entries), and plain Leibniz enumeration
//! (preferred for polynomial entries, and the oracle the other path is tested
//! against). The determinant is division-free throughout — entries live in
//! rings where division is not available.

pub mod identities;

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::polyring::SparsePoly;

/// Errors from matrix construction and evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    /// Input rows do not form a nonempty square matrix.
    NotSquare { rows: usize, cols: Option<usize> },
    /// Entries disagree on ring/arity context.
    IncompatibleEntries,
    /// Dimension too large for the enumeration this operation performs.
    TooLarge { n: usize, max: usize },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::NotSquare { rows, cols } => match cols {
                Some(c) => write!(f, "matrix is {rows}x{c}, expected square"),
                None => write!(f, "matrix has {rows} rows and ragged columns"),
            },
            MatrixError::IncompatibleEntries => {
                write!(f, "matrix entries disagree on ring context")
            }
            MatrixError::TooLarge { n, max } => {
                write!(f, "dimension {n} exceeds enumeration cap {max}")
            }
        }
    }
}

impl std::error::Error for MatrixError {}

/// Element of a commutative ring with enough structure for permanents and
/// determinants. `zero`/`one` take `&self` so context-carrying elements
/// (polynomials with a ring and arity) can reproduce their context.
pub trait RingElem: Clone + PartialEq + fmt::Debug {
    /// When true, `permanent` uses Leibniz enumeration instead of the
    /// Gray-code inclusion-exclusion walk.
    const LEIBNIZ_PERMANENT: bool = false;

    fn ring_zero(&self) -> Self;
    fn ring_one(&self) -> Self;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_sub(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn is_ring_zero(&self) -> bool;

    /// True when the two elements share ring context.
    fn same_context(&self, _other: &Self) -> bool {
        true
    }
}

impl RingElem for BigInt {
    fn ring_zero(&self) -> Self {
        BigInt::zero()
    }

    fn ring_one(&self) -> Self {
        BigInt::from(1)
    }

    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
}

impl RingElem for SparsePoly {
    const LEIBNIZ_PERMANENT: bool = true;

    fn ring_zero(&self) -> Self {
        SparsePoly::zero(*self.ring(), self.arity())
    }

    fn ring_one(&self) -> Self {
        SparsePoly::one(*self.ring(), self.arity())
    }

    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs).expect("matrix entries validated as compatible")
    }

    fn ring_sub(&self, rhs: &Self) -> Self {
        self.sub(rhs).expect("matrix entries validated as compatible")
    }

    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs).expect("matrix entries validated as compatible")
    }

    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }

    fn same_context(&self, other: &Self) -> bool {
        self.ring() == other.ring() && self.arity() == other.arity()
    }
}

/// A permutation of `{0, .., n-1}` with its sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates that `images` is a bijection on `{0, .., n-1}`.
    pub fn from_images(images: Vec<usize>) -> Option<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(Permutation { images })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.len(), other.len());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    /// `+1` for even permutations, `-1` for odd, by inversion count.
    pub fn sign(&self) -> i8 {
        let mut inversions = 0usize;
        for i in 0..self.images.len() {
            for j in (i + 1)..self.images.len() {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        if inversions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All of `S_n` in lexicographic image order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (0..n)
            .permutations(n)
            .map(|images| Permutation { images })
    }
}

/// A nonempty square matrix over a commutative ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMatrix<T> {
    n: usize,
    entries: Vec<T>,
}

impl<T: RingElem> RingMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::NotSquare { rows: 0, cols: None });
        }
        for row in &rows {
            if row.len() != n {
                return Err(MatrixError::NotSquare {
                    rows: n,
                    cols: Some(row.len()),
                });
            }
        }
        let entries: Vec<T> = rows.into_iter().flatten().collect();
        let first = entries[0].clone();
        if !entries.iter().all(|e| first.same_context(e)) {
            return Err(MatrixError::IncompatibleEntries);
        }
        Ok(RingMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    /// Matrix product, for property tests like `det(AB) = det(A) det(B)`.
    pub fn matmul(&self, other: &RingMatrix<T>) -> Result<RingMatrix<T>, MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::NotSquare {
                rows: self.n,
                cols: Some(other.n),
            });
        }
        let n = self.n;
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let mut acc = self.entries[0].ring_zero();
                for k in 0..n {
                    acc = acc.ring_add(&self.at(i, k).ring_mul(other.at(k, j)));
                }
                row.push(acc);
            }
            rows.push(row);
        }
        RingMatrix::from_rows(rows)
    }

    /// Permanent via Leibniz enumeration over `S_n`.
    pub fn permanent_leibniz(&self) -> T {
        let mut acc = self.entries[0].ring_zero();
        for sigma in Permutation::all(self.n) {
            let mut prod = self.entries[0].ring_one();
            for i in 0..self.n {
                prod = prod.ring_mul(self.at(i, sigma.apply(i)));
            }
            acc = acc.ring_add(&prod);
        }
        acc
    }

    /// Permanent via inclusion-exclusion over column subsets, with Gray-code
    /// updates so each step changes a single column in the running row sums.
    pub fn permanent_ryser(&self) -> T {
        let n = self.n;
        assert!(n <= 63, "Ryser path supports n <= 63");
        let zero = self.entries[0].ring_zero();
        let mut row_sums: Vec<T> = vec![zero.clone(); n];
        let mut acc = zero;
        let mut prev_gray: u64 = 0;
        for g in 1u64..(1u64 << n) {
            let gray = g ^ (g >> 1);
            let changed = (gray ^ prev_gray).trailing_zeros() as usize;
            let adding = gray & (1 << changed) != 0;
            for (i, sum) in row_sums.iter_mut().enumerate() {
                *sum = if adding {
                    sum.ring_add(self.at(i, changed))
                } else {
                    sum.ring_sub(self.at(i, changed))
                };
            }
            prev_gray = gray;
            let mut prod = self.entries[0].ring_one();
            for sum in &row_sums {
                prod = prod.ring_mul(sum);
            }
            // Sign (-1)^(n - |S|).
            if (n as u32 - gray.count_ones()).is_multiple_of(2) {
                acc = acc.ring_add(&prod);
            } else {
                acc = acc.ring_sub(&prod);
            }
        }
        acc
    }

    /// Permanent. Scalar entries take the Gray-code route, polynomial entries
    /// the Leibniz route; the two agree and are cross-checked in tests.
    pub fn permanent(&self) -> T {
        if T::LEIBNIZ_PERMANENT {
            self.permanent_leibniz()
        } else {
            self.permanent_ryser()
        }
    }

    /// Determinant via signed Leibniz enumeration.
    pub fn determinant_leibniz(&self) -> T {
        let mut acc = self.entries[0].ring_zero();
        for sigma in Permutation::all(self.n) {
            let mut prod = self.entries[0].ring_one();
            for i in 0..self.n {
                prod = prod.ring_mul(self.at(i, sigma.apply(i)));
            }
            if sigma.sign() > 0 {
                acc = acc.ring_add(&prod);
            } else {
                acc = acc.ring_sub(&prod);
            }
        }
        acc
    }

    /// Division-free determinant by Laplace expansion with shared minors:
    /// layer `r` holds the minors of the first `r` rows on each column
    /// subset of size `r`. `O(2^n · n)` ring operations, no division.
    pub fn determinant_minors(&self) -> T {
        let n = self.n;
        assert!(n <= 20, "minor-expansion determinant supports n <= 20");
        let zero = self.entries[0].ring_zero();
        let one = self.entries[0].ring_one();
        let mut layer: Vec<Option<T>> = vec![None; 1 << n];
        layer[0] = Some(one);
        for r in 0..n {
            let mut next: Vec<Option<T>> = vec![None; 1 << n];
            for (mask, minor) in layer.iter().enumerate() {
                let Some(minor) = minor else { continue };
                for j in 0..n {
                    let bit = 1usize << j;
                    if mask & bit != 0 {
                        continue;
                    }
                    // Sign: row index r plus the position j takes inside the
                    // sorted column set.
                    let pos = (mask & (bit - 1)).count_ones() as usize;
                    let term = self.at(r, j).ring_mul(minor);
                    let slot = &mut next[mask | bit];
                    let current = slot.take().unwrap_or_else(|| zero.clone());
                    *slot = Some(if (r + pos).is_multiple_of(2) {
                        current.ring_add(&term)
                    } else {
                        current.ring_sub(&term)
                    });
                }
            }
            layer = next;
        }
        layer[(1 << n) - 1].take().unwrap_or(zero)
    }

    /// Determinant: Leibniz for small `n`, shared-minor expansion beyond.
    /// Both are division-free; matrices in this crate stay below `n = 9`.
    pub fn determinant(&self) -> T {
        if self.n <= 6 {
            self.determinant_leibniz()
        } else {
            self.determinant_minors()
        }
    }
}
