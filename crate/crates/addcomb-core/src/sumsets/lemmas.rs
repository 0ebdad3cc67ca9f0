//! The governing coefficients: direct extraction versus closed form.
//!
//! The first family of checks extracts the target coefficient of
//!
//! ```text
//! prod_{i<j} (c_j x_j y_j - c_i x_i y_i)(x_j^m - x_i^m)(y_j^h - y_i^h)
//!     * (x_1 + ... + x_n)^K * (y_1 + ... + y_n)^L
//! ```
//!
//! at `x_i^{k-1} y_i^{l-1}` and compares it with `(K! L! / N) prod (c_j - c_i)`.
//! The second family does the analogous comparison for the single-variable
//! product with `(x_j - x_i)^{2m-1} (x_j y_j - x_i y_i)` factors, whose
//! closed form is a signed factorial ratio times the permanent of the
//! `y`-power matrix. Weights `c` can be symbolic (extra variables) or
//! concrete ring elements; one polynomial engine serves both.

use num_bigint::BigInt;
use num_traits::One;

use super::{SumsetError, SumsetParams};
use crate::permdet::RingMatrix;
use crate::polyring::{
    choose2, exact_div, expand_product, factorial, power_linear_form, CoefficientRing, DegreeCap,
    Monomial, SparsePoly,
};

/// Evaluation route for a coefficient: literal extraction, or the closed
/// formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffMode {
    Direct,
    ClosedForm,
}

/// Two-term factor `coeff_hi * prod(hi_vars) - coeff_lo * prod(lo_vars)`.
fn two_term(
    ring: CoefficientRing,
    arity: usize,
    hi_vars: &[(usize, u32)],
    hi_coeff: BigInt,
    lo_vars: &[(usize, u32)],
    lo_coeff: BigInt,
) -> Result<SparsePoly, SumsetError> {
    let build = |vars: &[(usize, u32)]| {
        let mut exps = vec![0u32; arity];
        for &(v, e) in vars {
            exps[v] = e;
        }
        Monomial::new(exps)
    };
    Ok(SparsePoly::from_terms(
        ring,
        arity,
        [(build(hi_vars), hi_coeff), (build(lo_vars), -lo_coeff)],
    )?)
}

fn check_direct_scale(params: &SumsetParams) -> Result<(), SumsetError> {
    // Direct extraction is exponential in the profile; the acceptance grid
    // tops out at n = 3 with k = l = 6, so that is the supported envelope.
    if params.n() > 3 || params.k() > 6 || params.l() > 6 {
        return Err(SumsetError::DeskScaleExceeded {
            detail: format!(
                "n = {}, k = {}, l = {} (limit n <= 3, k, l <= 6)",
                params.n(),
                params.k(),
                params.l()
            ),
        });
    }
    Ok(())
}

/// Builds the weighted product polynomial and extracts the target
/// coefficient. `c_var` maps index `i` to the variable carrying `c_i` when
/// the weights are symbolic; otherwise `c_val` supplies concrete weights.
fn lemma41_direct(
    params: &SumsetParams,
    ring: CoefficientRing,
    c_val: Option<&[BigInt]>,
) -> Result<SparsePoly, SumsetError> {
    check_direct_scale(params)?;
    let n = params.n();
    let symbolic = c_val.is_none();
    let arity = if symbolic { 3 * n } else { 2 * n };
    let x = |i: usize| i;
    let y = |i: usize| n + i;

    let mut caps = vec![params.k() - 1; n];
    caps.extend(vec![params.l() - 1; n]);
    if symbolic {
        caps.extend(vec![(n as u32).saturating_sub(1); n]);
    }
    let cap = DegreeCap::per_variable(caps);

    let mut factors = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let (hi, lo) = match c_val {
                None => (
                    (vec![(x(j), 1), (y(j), 1), (2 * n + j, 1)], BigInt::one()),
                    (vec![(x(i), 1), (y(i), 1), (2 * n + i, 1)], BigInt::one()),
                ),
                Some(c) => (
                    (vec![(x(j), 1), (y(j), 1)], c[j].clone()),
                    (vec![(x(i), 1), (y(i), 1)], c[i].clone()),
                ),
            };
            factors.push(two_term(ring, arity, &hi.0, hi.1, &lo.0, lo.1)?);
            factors.push(two_term(
                ring,
                arity,
                &[(x(j), params.m())],
                BigInt::one(),
                &[(x(i), params.m())],
                BigInt::one(),
            )?);
            factors.push(two_term(
                ring,
                arity,
                &[(y(j), params.h())],
                BigInt::one(),
                &[(y(i), params.h())],
                BigInt::one(),
            )?);
        }
    }
    // Low-degree difference factors first, then the high-power linear forms,
    // all truncated against the extraction caps.
    let mut product = expand_product(ring, arity, &factors, &cap)?;
    let mut x_ones = vec![BigInt::one(); n];
    x_ones.resize(arity, BigInt::from(0));
    let mut y_ones = vec![BigInt::from(0); n];
    y_ones.extend(vec![BigInt::one(); n]);
    y_ones.resize(arity, BigInt::from(0));
    let x_power = power_linear_form(ring, arity, &x_ones, params.big_k() as u32, &cap)?;
    let y_power = power_linear_form(ring, arity, &y_ones, params.big_l() as u32, &cap)?;
    product = product.mul_capped(&x_power, &cap)?;
    product = product.mul_capped(&y_power, &cap)?;

    let fixed: Vec<(usize, u32)> = (0..n)
        .map(|i| (x(i), params.k() - 1))
        .chain((0..n).map(|i| (y(i), params.l() - 1)))
        .collect();
    Ok(product.coefficient_at(&fixed)?)
}

/// `prod_{i<j} (c_j - c_i)` over symbolic weights, arity `n`.
fn weight_vandermonde(ring: CoefficientRing, n: usize) -> Result<SparsePoly, SumsetError> {
    let mut factors = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            factors.push(
                SparsePoly::var(ring, n, j)?.sub(&SparsePoly::var(ring, n, i)?)?,
            );
        }
    }
    Ok(expand_product(ring, n, &factors, &DegreeCap::Unbounded)?)
}

/// The target coefficient with symbolic weights, as a polynomial in
/// `c_1, ..., c_n` (variables `x1, ..., xn` of the result).
pub fn lemma41_coefficient_symbolic(
    params: &SumsetParams,
    mode: CoeffMode,
) -> Result<SparsePoly, SumsetError> {
    let ring = CoefficientRing::integers();
    let n = params.n();
    match mode {
        CoeffMode::Direct => {
            let coeff = lemma41_direct(params, ring, None)?;
            let c_vars: Vec<usize> = (2 * n..3 * n).collect();
            Ok(coeff.restrict_to_vars(&c_vars)?)
        }
        CoeffMode::ClosedForm => {
            let scalar = params.closed_form_scalar()?;
            Ok(weight_vandermonde(ring, n)?.scale(&scalar))
        }
    }
}

/// The target coefficient with concrete, pairwise-distinct weights.
pub fn lemma41_coefficient(
    params: &SumsetParams,
    c: &[BigInt],
    ring: &CoefficientRing,
    mode: CoeffMode,
) -> Result<BigInt, SumsetError> {
    let n = params.n();
    if c.len() != n {
        return Err(SumsetError::WrongSetCount {
            family: "c",
            expected: n,
            got: c.len(),
        });
    }
    let c: Vec<BigInt> = c.iter().map(|v| ring.normalize(v.clone())).collect();
    let mut sorted = c.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != n {
        return Err(SumsetError::WeightsNotDistinct);
    }
    match mode {
        CoeffMode::Direct => {
            let coeff = lemma41_direct(params, *ring, Some(&c))?;
            Ok(ring.normalize(coeff.coeff(&Monomial::unit())?))
        }
        CoeffMode::ClosedForm => {
            let mut value = ring.normalize(params.closed_form_scalar()?);
            for i in 0..n {
                for j in (i + 1)..n {
                    value = ring.mul(&value, &ring.sub(&c[j], &c[i]));
                }
            }
            Ok(value)
        }
    }
}

/// Result of the single-variable coefficient check: both sides as
/// polynomials in `y_1, ..., y_n`, plus the signed factorial scalar of the
/// closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma51Report {
    pub lhs: SparsePoly,
    pub rhs: SparsePoly,
    pub scalar: BigInt,
    pub equal: bool,
}

/// Compares, as polynomials in `y`, the coefficient of `x_i^{k-1}` in
/// `prod_{i<j} (x_j - x_i)^{2m-1} (x_j y_j - x_i y_i) * (sum x)^N` with the
/// signed factorial multiple of the permanent of `(y_j^{i-1})`, where
/// `N = (k - 1 - m(n-1)) n`.
pub fn lemma51_check(k: u32, m: u32, n: usize) -> Result<Lemma51Report, SumsetError> {
    for (name, value) in [("k", k as u64), ("m", m as u64), ("n", n as u64)] {
        if value == 0 {
            return Err(SumsetError::NonPositiveParameter(name));
        }
    }
    if (k as u64) - 1 < m as u64 * (n as u64 - 1) {
        return Err(SumsetError::DegreeCondition {
            parameter: "k",
            needed: m as u64 * (n as u64 - 1),
            got: k as u64 - 1,
        });
    }
    if n > 3 || m > 2 || k > 5 {
        return Err(SumsetError::DeskScaleExceeded {
            detail: format!("k = {k}, m = {m}, n = {n} (limit n <= 3, m <= 2, k <= 5)"),
        });
    }
    let ring = CoefficientRing::integers();
    let arity = 2 * n;
    let big_n = ((k as u64 - 1) - m as u64 * (n as u64 - 1)) * n as u64;

    let mut caps = vec![k - 1; n];
    caps.extend(vec![(n as u32).saturating_sub(1); n]);
    let cap = DegreeCap::per_variable(caps);

    let mut factors = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let diff = two_term(ring, arity, &[(j, 1)], BigInt::one(), &[(i, 1)], BigInt::one())?;
            for _ in 0..(2 * m - 1) {
                factors.push(diff.clone());
            }
            factors.push(two_term(
                ring,
                arity,
                &[(j, 1), (n + j, 1)],
                BigInt::one(),
                &[(i, 1), (n + i, 1)],
                BigInt::one(),
            )?);
        }
    }
    let mut product = expand_product(ring, arity, &factors, &cap)?;
    let mut x_ones = vec![BigInt::one(); n];
    x_ones.resize(arity, BigInt::from(0));
    let x_power = power_linear_form(ring, arity, &x_ones, big_n as u32, &cap)?;
    product = product.mul_capped(&x_power, &cap)?;

    let fixed: Vec<(usize, u32)> = (0..n).map(|i| (i, k - 1)).collect();
    let y_vars: Vec<usize> = (n..2 * n).collect();
    let lhs = product.coefficient_at(&fixed)?.restrict_to_vars(&y_vars)?;

    // Closed-form side: signed factorial scalar times per(y_j^{i-1}).
    let mut numerator = factorial(m * n as u32) * factorial(big_n as u32);
    let mut denominator = factorial(m).pow(n as u32) * factorial(n as u32);
    for r in 0..n as u32 {
        numerator *= factorial(r * m);
        denominator *= factorial(k - 1 - r * m);
    }
    let mut scalar = exact_div(&numerator, &denominator).ok_or(SumsetError::NonIntegralRatio {
        context: "single-variable closed form",
    })?;
    if (m as u64 * choose2(n)) % 2 == 1 {
        scalar = -scalar;
    }
    let mut power_rows = Vec::with_capacity(n);
    for i in 0..n as u32 {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut exps = vec![0u32; n];
            exps[j] = i;
            row.push(SparsePoly::from_terms(
                ring,
                n,
                [(Monomial::new(exps), BigInt::one())],
            )?);
        }
        power_rows.push(row);
    }
    let rhs = RingMatrix::from_rows(power_rows)?.permanent().scale(&scalar);

    let equal = lhs == rhs;
    Ok(Lemma51Report {
        lhs,
        rhs,
        scalar,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn lemma41_trivial_dimension() {
        // n = 1: empty products on both routes give 1.
        let params = SumsetParams::new(2, 4, 3, 1, 1).unwrap();
        let direct = lemma41_coefficient_symbolic(&params, CoeffMode::Direct).unwrap();
        let closed = lemma41_coefficient_symbolic(&params, CoeffMode::ClosedForm).unwrap();
        let one = SparsePoly::one(CoefficientRing::integers(), 1);
        assert_eq!(direct, one);
        assert_eq!(closed, one);
    }

    #[test]
    fn lemma41_symbolic_minimal_two() {
        // n = 2, m = h = 1, k = l = 2: the coefficient is c2 - c1.
        let params = SumsetParams::new(1, 2, 2, 1, 2).unwrap();
        let direct = lemma41_coefficient_symbolic(&params, CoeffMode::Direct).unwrap();
        let closed = lemma41_coefficient_symbolic(&params, CoeffMode::ClosedForm).unwrap();
        assert_eq!(direct, closed);
        assert_eq!(direct.to_string(), "-x1 + x2");
    }

    #[test]
    fn lemma41_concrete_matches() {
        // n = 2, m = h = 1, k = l = 3 over the integers with c = (0, 1).
        let params = SumsetParams::new(1, 3, 3, 1, 2).unwrap();
        let ring = CoefficientRing::integers();
        let c = [int(0), int(1)];
        let direct = lemma41_coefficient(&params, &c, &ring, CoeffMode::Direct).unwrap();
        let closed = lemma41_coefficient(&params, &c, &ring, CoeffMode::ClosedForm).unwrap();
        assert_eq!(direct, closed);
        assert_eq!(direct, int(1));
    }

    #[test]
    fn lemma41_rejects_repeated_weights() {
        let params = SumsetParams::new(1, 2, 2, 1, 2).unwrap();
        let gf5 = CoefficientRing::mod_p(5).unwrap();
        assert!(matches!(
            lemma41_coefficient(&params, &[int(2), int(7)], &gf5, CoeffMode::ClosedForm),
            Err(SumsetError::WeightsNotDistinct)
        ));
    }

    #[test]
    fn lemma41_desk_scale_guard() {
        let params = SumsetParams::new(1, 8, 8, 1, 2).unwrap();
        assert!(matches!(
            lemma41_coefficient_symbolic(&params, CoeffMode::Direct),
            Err(SumsetError::DeskScaleExceeded { .. })
        ));
        // Closed form has no scale limit.
        lemma41_coefficient_symbolic(&params, CoeffMode::ClosedForm).unwrap();
    }

    #[test]
    fn lemma51_trivial_dimension() {
        let report = lemma51_check(4, 2, 1).unwrap();
        assert!(report.equal);
        let one = SparsePoly::one(CoefficientRing::integers(), 1);
        assert_eq!(report.lhs, one);
        assert_eq!(report.scalar, int(1));
    }

    #[test]
    fn lemma51_two_by_minimal() {
        // n = 2, m = 1, k = 2: both sides are -(y1 + y2).
        let report = lemma51_check(2, 1, 2).unwrap();
        assert!(report.equal, "{report:?}");
        assert_eq!(report.lhs.to_string(), "-x1 - x2");
        assert_eq!(report.scalar, int(-1));
    }

    #[test]
    fn lemma51_two_by_three() {
        let report = lemma51_check(3, 2, 2).unwrap();
        assert!(report.equal, "{report:?}");
    }

    #[test]
    fn lemma51_rejects_bad_degrees() {
        assert!(matches!(
            lemma51_check(2, 2, 2),
            Err(SumsetError::DegreeCondition { .. })
        ));
        assert!(matches!(
            lemma51_check(9, 1, 2),
            Err(SumsetError::DeskScaleExceeded { .. })
        ));
    }
}
