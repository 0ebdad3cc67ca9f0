//! Executable checkers for the determinant/permanent duality and symmetry
//! identities, plus the multi-row sign identity behind the distinct-sum
//! ordering theorem.
//!
//! Each checker computes its left side by literal coefficient extraction
//! through the polynomial engine and its right side from the closed form
//! (factorial ratios times a determinant or permanent, or the weighted
//! permutation sums of the general statements). Checkers report both side
//! values verbatim and an equality flag; they never assert internally, so a
//! failing instance stays diagnosable.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{MatrixError, Permutation, RingMatrix};
use crate::polyring::{
    choose2, exact_div, factorial, CoefficientRing, DegreeCap, Monomial,
    PolyError, SparsePoly,
};

/// Errors from the identity checkers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityError {
    Matrix(MatrixError),
    Poly(PolyError),
    /// Profile vectors disagree with the matrix dimension.
    ProfileShape { expected: usize, got: usize },
    /// The extraction targets cannot absorb the forced exponents
    /// (`sum k_i < M`).
    PowerDeficit { sum_k: u64, needed: u64 },
    /// `k*n` minus the forced exponents is negative.
    NegativeSumPower,
    /// A factorial multiplier failed to divide exactly. This indicates a
    /// checker bug, never something to round.
    NonIntegralMultiplier,
    /// Dimension/row-count outside the enumeration cap of this checker.
    EnumerationCap { n: usize, m: usize },
    /// Row array is empty or ragged.
    RaggedArray,
    /// `delta` must be 0 or 1.
    BadDelta(u8),
}

impl fmt::Display for IdentityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityError::Matrix(e) => write!(f, "{e}"),
            IdentityError::Poly(e) => write!(f, "{e}"),
            IdentityError::ProfileShape { expected, got } => {
                write!(f, "profile length {got} does not match dimension {expected}")
            }
            IdentityError::PowerDeficit { sum_k, needed } => {
                write!(f, "sum of extraction targets {sum_k} is below the forced degree {needed}")
            }
            IdentityError::NegativeSumPower => write!(f, "negative balancing power"),
            IdentityError::NonIntegralMultiplier => {
                write!(f, "factorial multiplier did not divide exactly (checker bug)")
            }
            IdentityError::EnumerationCap { n, m } => {
                write!(f, "instance n={n}, m={m} exceeds the enumeration cap (n <= 4, m <= 5)")
            }
            IdentityError::RaggedArray => write!(f, "rows must be nonempty and of equal length"),
            IdentityError::BadDelta(d) => write!(f, "delta must be 0 or 1, got {d}"),
        }
    }
}

impl std::error::Error for IdentityError {}

impl From<MatrixError> for IdentityError {
    fn from(e: MatrixError) -> Self {
        IdentityError::Matrix(e)
    }
}

impl From<PolyError> for IdentityError {
    fn from(e: PolyError) -> Self {
        IdentityError::Poly(e)
    }
}

/// Extraction target exponents: one per variable, or one value for all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KTarget {
    Uniform(u32),
    PerVariable(Vec<u32>),
}

impl KTarget {
    fn to_vec(&self, n: usize) -> Result<Vec<u32>, IdentityError> {
        match self {
            KTarget::Uniform(k) => Ok(vec![*k; n]),
            KTarget::PerVariable(ks) if ks.len() == n => Ok(ks.clone()),
            KTarget::PerVariable(ks) => Err(IdentityError::ProfileShape {
                expected: n,
                got: ks.len(),
            }),
        }
    }

    fn uniform(&self) -> Option<u32> {
        match self {
            KTarget::Uniform(k) => Some(*k),
            KTarget::PerVariable(ks) => {
                let first = *ks.first()?;
                ks.iter().all(|&k| k == first).then_some(first)
            }
        }
    }
}

/// Exponent data for the duality checkers: extraction targets `k`, matrix
/// exponents `m`, the optional Vandermonde factor switch `delta`, and the
/// second exponent vector `l` used by the symmetric identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentProfile {
    pub k: KTarget,
    pub m: Vec<u32>,
    pub delta: u8,
    pub l: Option<Vec<u32>>,
}

impl ExponentProfile {
    pub fn new(k: KTarget, m: Vec<u32>, delta: u8) -> Self {
        ExponentProfile { k, m, delta, l: None }
    }

    fn validate(&self, n: usize) -> Result<(Vec<u32>, bool, u32), IdentityError> {
        if self.m.len() != n {
            return Err(IdentityError::ProfileShape {
                expected: n,
                got: self.m.len(),
            });
        }
        let delta = match self.delta {
            0 => false,
            1 => true,
            d => return Err(IdentityError::BadDelta(d)),
        };
        let k = self.k.to_vec(n)?;
        let sum_k: u64 = k.iter().map(|&v| v as u64).sum();
        let forced: u64 =
            self.m.iter().map(|&v| v as u64).sum::<u64>() + if delta { choose2(n) } else { 0 };
        if sum_k < forced {
            return Err(IdentityError::PowerDeficit {
                sum_k,
                needed: forced,
            });
        }
        Ok((k, delta, (sum_k - forced) as u32))
    }
}

/// Result of a duality check: the extracted coefficient, the weighted
/// permutation sum, and (when the profile matches a special case) the
/// factorial-ratio closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub lhs: BigInt,
    pub rhs_sigma: BigInt,
    pub rhs_closed: Option<BigInt>,
    pub equal: bool,
}

/// Result of the four-part symmetry check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    /// `(lhs, rhs)` per identity, in statement order.
    pub sides: Vec<(BigInt, BigInt)>,
    pub flags: [bool; 4],
    pub all_equal: bool,
}

/// Result of the multi-row sign identity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma21Report {
    pub lhs: BigInt,
    pub rhs: BigInt,
    /// True when the even-row-count variant (permanent factor) was used.
    pub even_variant: bool,
    pub equal: bool,
}

fn int_ring() -> CoefficientRing {
    CoefficientRing::integers()
}

/// Matrix with entries `w_ij * x_j^{exps[i]}`, where `w_ij` comes from `a`
/// or is 1 when `a` is `None`.
fn monomial_matrix(
    a: Option<&RingMatrix<BigInt>>,
    exps: &[u32],
    n: usize,
    arity: usize,
) -> Result<RingMatrix<SparsePoly>, IdentityError> {
    let ring = int_ring();
    let mut rows = Vec::with_capacity(n);
    for (i, &e) in exps.iter().enumerate() {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let coeff = match a {
                Some(a) => a.at(i, j).clone(),
                None => BigInt::one(),
            };
            let mut mono = vec![0u32; arity];
            mono[j] = e;
            row.push(SparsePoly::from_terms(
                ring,
                arity,
                [(Monomial::new(mono), coeff)],
            )?);
        }
        rows.push(row);
    }
    Ok(RingMatrix::from_rows(rows)?)
}

/// `x_j - x_i` factors for all `i < j`.
fn difference_factors(n: usize, arity: usize) -> Result<Vec<SparsePoly>, IdentityError> {
    let ring = int_ring();
    let mut factors = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let xi = SparsePoly::var(ring, arity, i)?;
            let xj = SparsePoly::var(ring, arity, j)?;
            factors.push(xj.sub(&xi)?);
        }
    }
    Ok(factors)
}

/// `[x^k]` of `base * prod (x_j - x_i)^delta * (sum x)^power`, with every
/// intermediate truncated at the extraction targets.
fn extract_with_factors(
    base: SparsePoly,
    k: &[u32],
    delta: bool,
    power: u32,
) -> Result<BigInt, IdentityError> {
    let n = k.len();
    let ring = int_ring();
    let cap = DegreeCap::per_variable(k.to_vec());
    let mut acc = base;
    if delta {
        for f in difference_factors(n, n)? {
            acc = acc.mul_capped(&f, &cap)?;
        }
    }
    if power > 0 {
        let ones = vec![BigInt::one(); n];
        let sum_pow = crate::polyring::power_linear_form(ring, n, &ones, power, &cap)?;
        acc = acc.mul_capped(&sum_pow, &cap)?;
    }
    let target = Monomial::new(k.to_vec());
    Ok(acc.coeff(&target)?)
}

/// Which of the two dual statements is being checked: determinant on the
/// extraction side (weighted sum signed by `eps`), or permanent on the
/// extraction side (dual weights).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DualitySide {
    DetExtraction,
    PerExtraction,
}

/// The general weighted permutation sum: for each admissible `sigma` the
/// integer multiplier is `(sum k - M)!` divided by the per-row falling
/// products, skipping offsets that land in the difference set when the
/// Vandermonde factor is present. The division must be exact.
fn sigma_sum(
    a: &RingMatrix<BigInt>,
    k: &[u32],
    m: &[u32],
    delta: bool,
    power: u32,
    side: DualitySide,
) -> Result<BigInt, IdentityError> {
    let n = a.n();
    let numerator = factorial(power);
    let mut total = BigInt::from(0);
    'sigma: for sigma in Permutation::all(n) {
        let mut d = Vec::with_capacity(n);
        for i in 0..n {
            let di = k[sigma.apply(i)] as i64 - m[i] as i64;
            if di < 0 {
                continue 'sigma;
            }
            d.push(di as u64);
        }
        let mut dset: Vec<u64> = d.clone();
        dset.sort_unstable();
        dset.dedup();
        if delta && dset.len() < n {
            continue;
        }
        let mut denom = BigInt::one();
        for &di in &d {
            for j in 0..di {
                if delta && dset.binary_search(&j).is_ok() {
                    continue;
                }
                denom *= BigInt::from(di - j);
            }
        }
        let multiplier =
            exact_div(&numerator, &denom).ok_or(IdentityError::NonIntegralMultiplier)?;
        let weight: i8 = match (side, delta) {
            (DualitySide::DetExtraction, false) => sigma.sign(),
            (DualitySide::PerExtraction, false) => 1,
            _ => {
                // sigma' sorts positions by ascending difference; its sign
                // enters alone for the determinant statement and multiplied
                // by eps(sigma) for the permanent one.
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by_key(|&i| d[i]);
                let sigma_prime =
                    Permutation::from_images(order).expect("argsort is a bijection");
                match side {
                    DualitySide::DetExtraction => sigma_prime.sign(),
                    DualitySide::PerExtraction => sigma.sign() * sigma_prime.sign(),
                }
            }
        };
        let mut prod = multiplier;
        for i in 0..n {
            prod *= a.at(i, sigma.apply(i));
        }
        if weight > 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(total)
}

/// `(kn - sum m)! / prod (k - m_i)!` — the uniform-target multinomial ratio.
fn plain_ratio(n: usize, k: u32, m: &[u32]) -> Result<BigInt, IdentityError> {
    let sum_m: u64 = m.iter().map(|&v| v as u64).sum();
    let total = (k as u64) * (n as u64) - sum_m;
    let numerator = factorial(total as u32);
    let mut denom = BigInt::one();
    for &mi in m {
        denom *= factorial(k - mi);
    }
    exact_div(&numerator, &denom).ok_or(IdentityError::NonIntegralMultiplier)
}

/// The strictly-increasing-exponent ratio used by the Vandermonde-weighted
/// special cases: `(kn - C(n,2) - sum m)!` over the per-row products of
/// `(j - m_i)` with `j` running through `(m_i, k]` minus the later exponents.
fn vandermonde_ratio(n: usize, k: u32, m: &[u32]) -> Result<BigInt, IdentityError> {
    let sum_m: u64 = m.iter().map(|&v| v as u64).sum();
    let total = (k as u64) * (n as u64) - choose2(n) - sum_m;
    let numerator = factorial(total as u32);
    let mut denom = BigInt::one();
    for i in 0..n {
        for j in (m[i] + 1)..=k {
            if m[(i + 1)..].contains(&j) {
                continue;
            }
            denom *= BigInt::from(j - m[i]);
        }
    }
    exact_div(&numerator, &denom).ok_or(IdentityError::NonIntegralMultiplier)
}

fn is_ascending(m: &[u32]) -> bool {
    m.windows(2).all(|w| w[0] <= w[1])
}

fn is_strictly_ascending(m: &[u32]) -> bool {
    m.windows(2).all(|w| w[0] < w[1])
}

fn closed_form(
    a: &RingMatrix<BigInt>,
    prof: &ExponentProfile,
    delta: bool,
    side: DualitySide,
) -> Result<Option<BigInt>, IdentityError> {
    let n = a.n();
    let Some(k) = prof.k.uniform() else {
        return Ok(None);
    };
    if prof.m.iter().any(|&mi| mi > k) {
        return Ok(None);
    }
    if !delta {
        if !is_ascending(&prof.m) {
            return Ok(None);
        }
        let ratio = plain_ratio(n, k, &prof.m)?;
        let carrier = match side {
            DualitySide::DetExtraction => a.determinant(),
            DualitySide::PerExtraction => a.permanent(),
        };
        Ok(Some(ratio * carrier))
    } else {
        if !is_strictly_ascending(&prof.m) {
            return Ok(None);
        }
        let ratio = vandermonde_ratio(n, k, &prof.m)?;
        let carrier = match side {
            DualitySide::DetExtraction => a.permanent(),
            DualitySide::PerExtraction => a.determinant(),
        };
        let signed = if choose2(n).is_multiple_of(2) { ratio } else { -ratio };
        Ok(Some(signed * carrier))
    }
}

fn check_duality(
    a: &RingMatrix<BigInt>,
    prof: &ExponentProfile,
    side: DualitySide,
) -> Result<DualityReport, IdentityError> {
    let n = a.n();
    let (k, delta, power) = prof.validate(n)?;
    let weighted = monomial_matrix(Some(a), &prof.m, n, n)?;
    let base = match side {
        DualitySide::DetExtraction => weighted.determinant(),
        DualitySide::PerExtraction => weighted.permanent(),
    };
    let lhs = extract_with_factors(base, &k, delta, power)?;
    let rhs_sigma = sigma_sum(a, &k, &prof.m, delta, power, side)?;
    let rhs_closed = closed_form(a, prof, delta, side)?;
    let equal =
        lhs == rhs_sigma && rhs_closed.as_ref().is_none_or(|closed| *closed == lhs);
    Ok(DualityReport {
        lhs,
        rhs_sigma,
        rhs_closed,
        equal,
    })
}

/// Checks the duality family with the determinant on the extraction side:
/// the general weighted-sum statement, plus the uniform-target closed forms
/// (determinant ratio without the Vandermonde factor, permanent ratio with
/// it) when the profile qualifies.
pub fn check_duality_31(
    a: &RingMatrix<BigInt>,
    prof: &ExponentProfile,
) -> Result<DualityReport, IdentityError> {
    check_duality(a, prof, DualitySide::DetExtraction)
}

/// Dual of [`check_duality_31`]: permanent on the extraction side,
/// determinant and permanent swapped in the closed forms.
pub fn check_duality_32(
    a: &RingMatrix<BigInt>,
    prof: &ExponentProfile,
) -> Result<DualityReport, IdentityError> {
    check_duality(a, prof, DualitySide::PerExtraction)
}

fn symmetry_side(
    a: &RingMatrix<BigInt>,
    k: u32,
    first_exps: &[u32],
    second_exps: &[u32],
    power: u32,
    first_per: bool,
    second_per: bool,
) -> Result<BigInt, IdentityError> {
    let n = a.n();
    let weighted = monomial_matrix(Some(a), first_exps, n, n)?;
    let first = if first_per {
        weighted.permanent()
    } else {
        weighted.determinant()
    };
    let plain = monomial_matrix(None, second_exps, n, n)?;
    let second = if second_per {
        plain.permanent()
    } else {
        plain.determinant()
    };
    let cap = DegreeCap::uniform(k, n);
    let base = first.mul_capped(&second, &cap)?;
    extract_with_factors(base, &vec![k; n], false, power)
}

/// Checks the four symmetric identities obtained by swapping the two
/// exponent vectors across the weighted and plain matrix factors, in all
/// det/per combinations.
pub fn check_symmetry_33(
    a: &RingMatrix<BigInt>,
    k: u32,
    l: &[u32],
    m: &[u32],
) -> Result<SymmetryReport, IdentityError> {
    let n = a.n();
    if l.len() != n || m.len() != n {
        return Err(IdentityError::ProfileShape {
            expected: n,
            got: if l.len() != n { l.len() } else { m.len() },
        });
    }
    let forced: u64 = l.iter().chain(m.iter()).map(|&v| v as u64).sum();
    let total = (k as u64) * (n as u64);
    if total < forced {
        return Err(IdentityError::NegativeSumPower);
    }
    let power = (total - forced) as u32;
    let combos = [(false, false), (true, false), (false, true), (true, true)];
    let mut sides = Vec::with_capacity(4);
    let mut flags = [false; 4];
    for (idx, &(first_per, second_per)) in combos.iter().enumerate() {
        let lhs = symmetry_side(a, k, l, m, power, first_per, second_per)?;
        let rhs = symmetry_side(a, k, m, l, power, first_per, second_per)?;
        flags[idx] = lhs == rhs;
        sides.push((lhs, rhs));
    }
    let all_equal = flags.iter().all(|&f| f);
    Ok(SymmetryReport {
        sides,
        flags,
        all_equal,
    })
}

/// Checks the multi-row sign identity: the signed sum over all permutation
/// tuples of the pairwise column-product differences against the product of
/// per-row difference products (odd row count), or against that product with
/// the last row replaced by a power-matrix permanent (even row count).
///
/// Enumeration is exhaustive over `S_n^{m-1}`, so the instance is hard-capped
/// at `n <= 4`, `m <= 5`.
pub fn check_lemma_21(rows: &[Vec<BigInt>]) -> Result<Lemma21Report, IdentityError> {
    let m = rows.len();
    if m == 0 || rows[0].is_empty() {
        return Err(IdentityError::RaggedArray);
    }
    let n = rows[0].len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(IdentityError::RaggedArray);
    }
    if n > 4 || m > 5 {
        return Err(IdentityError::EnumerationCap { n, m });
    }

    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let signs: Vec<i8> = perms.iter().map(Permutation::sign).collect();
    let tuples = m - 1;
    let mut index = vec![0usize; tuples];
    let mut lhs = BigInt::from(0);
    loop {
        let mut sign = 1i8;
        for &ix in &index {
            sign *= signs[ix];
        }
        // Column products: last row entry times the permuted entries of the
        // earlier rows.
        let mut col = Vec::with_capacity(n);
        for j in 0..n {
            let mut prod = rows[m - 1][j].clone();
            for (s, &ix) in index.iter().enumerate() {
                prod *= &rows[s][perms[ix].apply(j)];
            }
            col.push(prod);
        }
        let mut term = BigInt::one();
        for i in 0..n {
            for j in (i + 1)..n {
                term *= &col[j] - &col[i];
            }
        }
        if sign > 0 {
            lhs += term;
        } else {
            lhs -= term;
        }
        // Odometer over the permutation tuple.
        let mut pos = 0;
        loop {
            if pos == tuples {
                break;
            }
            index[pos] += 1;
            if index[pos] < perms.len() {
                break;
            }
            index[pos] = 0;
            pos += 1;
        }
        if pos == tuples {
            break;
        }
    }

    let even_variant = m.is_multiple_of(2);
    let upto = if even_variant { m - 1 } else { m };
    let mut rhs = BigInt::one();
    for row in rows.iter().take(upto) {
        for i in 0..n {
            for j in (i + 1)..n {
                rhs *= &row[j] - &row[i];
            }
        }
    }
    if even_variant {
        // Permanent of the power matrix built from the last row.
        let mut power_rows = Vec::with_capacity(n);
        for i in 0..n as u32 {
            power_rows.push(
                rows[m - 1]
                    .iter()
                    .map(|v| v.pow(i))
                    .collect::<Vec<BigInt>>(),
            );
        }
        rhs *= RingMatrix::from_rows(power_rows)?.permanent();
    }

    let equal = lhs == rhs;
    Ok(Lemma21Report {
        lhs,
        rhs,
        even_variant,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> RingMatrix<BigInt> {
        RingMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn duality_trivial_dimension() {
        // n = 1 with k = m = 0: both sides collapse to the single entry.
        let a = int_matrix(&[&[42]]);
        let prof = ExponentProfile::new(KTarget::Uniform(0), vec![0], 0);
        let report = check_duality_31(&a, &prof).unwrap();
        assert!(report.equal);
        assert_eq!(report.lhs, BigInt::from(42));
        assert_eq!(report.rhs_closed, Some(BigInt::from(42)));
        let report = check_duality_32(&a, &prof).unwrap();
        assert!(report.equal);
        assert_eq!(report.lhs, BigInt::from(42));
    }

    #[test]
    fn duality_31_two_by_two_plain() {
        // k = 1 uniform, exponents (0, 1): coefficient equals det(A).
        let a = int_matrix(&[&[3, -2], &[5, 7]]);
        let prof = ExponentProfile::new(KTarget::Uniform(1), vec![0, 1], 0);
        let report = check_duality_31(&a, &prof).unwrap();
        assert!(report.equal, "{report:?}");
        assert_eq!(report.lhs, a.determinant());
        assert_eq!(report.rhs_closed, Some(a.determinant()));
    }

    #[test]
    fn duality_31_two_by_two_vandermonde() {
        // k = 2, exponents (0, 1), with the Vandermonde factor: the closed
        // form is minus the permanent (ratio 1, sign (-1)^1).
        let a = int_matrix(&[&[3, -2], &[5, 7]]);
        let prof = ExponentProfile::new(KTarget::Uniform(2), vec![0, 1], 1);
        let report = check_duality_31(&a, &prof).unwrap();
        assert!(report.equal, "{report:?}");
        assert_eq!(report.lhs, -a.permanent());
    }

    #[test]
    fn duality_32_two_by_two() {
        let a = int_matrix(&[&[2, 9], &[-4, 3]]);
        let prof = ExponentProfile::new(KTarget::Uniform(1), vec![0, 1], 0);
        let report = check_duality_32(&a, &prof).unwrap();
        assert!(report.equal, "{report:?}");
        assert_eq!(report.lhs, a.permanent());

        let prof = ExponentProfile::new(KTarget::Uniform(2), vec![0, 1], 1);
        let report = check_duality_32(&a, &prof).unwrap();
        assert!(report.equal, "{report:?}");
        assert_eq!(report.lhs, -a.determinant());
    }

    #[test]
    fn duality_general_weighted_sums() {
        // Non-uniform targets exercise the general statement only.
        let a = int_matrix(&[&[1, 4], &[-3, 2]]);
        for delta in [0, 1] {
            let prof =
                ExponentProfile::new(KTarget::PerVariable(vec![3, 1]), vec![0, 1], delta);
            let report = check_duality_31(&a, &prof).unwrap();
            assert!(report.equal, "delta={delta}: {report:?}");
            assert!(report.rhs_closed.is_none());
            let report = check_duality_32(&a, &prof).unwrap();
            assert!(report.equal, "delta={delta}: {report:?}");
        }
    }

    #[test]
    fn duality_rejects_power_deficit() {
        let a = int_matrix(&[&[1, 4], &[-3, 2]]);
        let prof = ExponentProfile::new(KTarget::Uniform(0), vec![1, 1], 0);
        assert!(matches!(
            check_duality_31(&a, &prof),
            Err(IdentityError::PowerDeficit { .. })
        ));
    }

    #[test]
    fn symmetry_trivial_dimension() {
        let a = int_matrix(&[&[5]]);
        let report = check_symmetry_33(&a, 3, &[1], &[2]).unwrap();
        assert!(report.all_equal, "{report:?}");
    }

    #[test]
    fn symmetry_two_by_two() {
        let a = int_matrix(&[&[2, -1], &[7, 4]]);
        let report = check_symmetry_33(&a, 2, &[0, 1], &[0, 1]).unwrap();
        assert!(report.all_equal, "{report:?}");

        let report = check_symmetry_33(&a, 3, &[0, 2], &[1, 1]).unwrap();
        assert!(report.flags[0], "{report:?}");
        assert!(report.flags[3], "{report:?}");
        assert!(report.all_equal, "{report:?}");
    }

    #[test]
    fn symmetry_rejects_negative_power() {
        let a = int_matrix(&[&[2, -1], &[7, 4]]);
        assert!(matches!(
            check_symmetry_33(&a, 1, &[2, 2], &[1, 1]),
            Err(IdentityError::NegativeSumPower)
        ));
    }

    #[test]
    fn lemma21_single_column() {
        let rows = vec![vec![BigInt::from(9)], vec![BigInt::from(-3)], vec![BigInt::from(4)]];
        let report = check_lemma_21(&rows).unwrap();
        assert!(report.equal);
        assert_eq!(report.lhs, BigInt::one());
    }

    #[test]
    fn lemma21_three_rows() {
        let rows: Vec<Vec<BigInt>> = [[3i64, -1], [2, 5], [0, 7]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let report = check_lemma_21(&rows).unwrap();
        assert!(!report.even_variant);
        assert!(report.equal, "{report:?}");
        // rhs is the product of per-row differences.
        let expected = BigInt::from((-1 - 3) * (5 - 2) * 7);
        assert_eq!(report.rhs, expected);
    }

    #[test]
    fn lemma21_even_variant() {
        let rows: Vec<Vec<BigInt>> = [[3i64, -1], [2, 5]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let report = check_lemma_21(&rows).unwrap();
        assert!(report.even_variant);
        assert!(report.equal, "{report:?}");
        // rhs = per([[1,1],[2,5]]) * (-1 - 3) = 7 * -4.
        assert_eq!(report.rhs, BigInt::from(-28));
    }

    #[test]
    fn lemma21_enumeration_cap() {
        let rows = vec![vec![BigInt::one(); 5]; 3];
        assert!(matches!(
            check_lemma_21(&rows),
            Err(IdentityError::EnumerationCap { .. })
        ));
        let rows = vec![vec![BigInt::one(); 2]; 6];
        assert!(matches!(
            check_lemma_21(&rows),
            Err(IdentityError::EnumerationCap { .. })
        ));
    }

    #[test]
    fn lemma21_one_row() {
        let rows: Vec<Vec<BigInt>> =
            vec![[2i64, 5, 11].iter().map(|&v| BigInt::from(v)).collect()];
        let report = check_lemma_21(&rows).unwrap();
        assert!(report.equal);
        assert_eq!(report.lhs, BigInt::from((5 - 2) * (11 - 2) * (11 - 5)));
    }
}
