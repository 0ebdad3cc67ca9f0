//! Sparse multivariate polynomials with exact coefficients.
//!
//! Coefficients live in an explicit [`CoefficientRing`] — arbitrary-precision
//! integers, or integers modulo a prime — and polynomials are monomial-keyed
//! sparse maps. Products can be truncated against a per-variable
//! [`DegreeCap`]: when every factor in a chain has nonnegative exponents, the
//! capped chain agrees with the uncapped product on every monomial within the
//! cap, which is all that single-coefficient extraction needs.
//!
//! Symbolic parameters are handled by enlarging the variable arity, never by
//! a separate coefficient type; the same engine computes both sides of every
//! identity in this crate.

mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use text::parse_poly;

/// Errors from ring construction and polynomial arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// Modulus of a modular ring must be prime.
    NotPrime(u64),
    /// Operands declare different variable counts.
    ArityMismatch { left: usize, right: usize },
    /// Operands live in different coefficient rings.
    RingMismatch,
    /// A monomial or point uses more variables than the polynomial declares.
    VariableOutOfRange { index: usize, arity: usize },
    /// Degree cap vector has the wrong length.
    CapLength { expected: usize, got: usize },
    /// Text form could not be parsed.
    Parse(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::NotPrime(p) => write!(f, "{p} is not prime"),
            PolyError::ArityMismatch { left, right } => {
                write!(f, "arity mismatch: {left} vs {right}")
            }
            PolyError::RingMismatch => write!(f, "coefficient ring mismatch"),
            PolyError::VariableOutOfRange { index, arity } => {
                write!(f, "variable x{} out of range for arity {arity}", index + 1)
            }
            PolyError::CapLength { expected, got } => {
                write!(f, "cap vector has length {got}, expected {expected}")
            }
            PolyError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Deterministic Miller-Rabin, valid for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    // These witnesses are enough for every 64-bit integer.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The coefficient domain: exact integers, or integers mod a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Integers,
    IntegersModP(u64),
}

impl CoefficientRing {
    pub fn integers() -> Self {
        CoefficientRing::Integers
    }

    /// Builds the prime field `Z/pZ`; primality is checked here.
    pub fn mod_p(p: u64) -> Result<Self, PolyError> {
        if !is_prime_u64(p) {
            return Err(PolyError::NotPrime(p));
        }
        Ok(CoefficientRing::IntegersModP(p))
    }

    /// 0 for the integers, `p` for `Z/pZ`.
    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientRing::Integers => 0,
            CoefficientRing::IntegersModP(p) => *p,
        }
    }

    /// Canonical representative: the value itself over `Z`, the residue in
    /// `[0, p)` over `Z/pZ`.
    pub fn normalize(&self, v: BigInt) -> BigInt {
        match self {
            CoefficientRing::Integers => v,
            CoefficientRing::IntegersModP(p) => {
                let p = BigInt::from(*p);
                let r = v % &p;
                if r.is_negative() {
                    r + p
                } else {
                    r
                }
            }
        }
    }

    pub fn is_zero(&self, v: &BigInt) -> bool {
        match self {
            CoefficientRing::Integers => v.is_zero(),
            CoefficientRing::IntegersModP(_) => self.normalize(v.clone()).is_zero(),
        }
    }

    pub fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.normalize(a + b)
    }

    pub fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.normalize(a - b)
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: &BigInt) -> BigInt {
        self.normalize(-a)
    }
}

/// Exponent vector with trailing zeros trimmed, so equal monomials compare
/// equal no matter how many explicit zeros the caller supplied.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Monomial { exponents }
    }

    /// The constant monomial `1`.
    pub fn unit() -> Self {
        Monomial { exponents: Vec::new() }
    }

    /// `x_index` (0-based).
    pub fn var(index: usize) -> Self {
        let mut exponents = vec![0; index + 1];
        exponents[index] = 1;
        Monomial { exponents }
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exponents.get(index).copied().unwrap_or(0)
    }

    /// Number of variables actually used (index of last nonzero + 1).
    pub fn arity(&self) -> usize {
        self.exponents.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.exponents.len().max(other.exponents.len());
        let mut exps = vec![0u32; len];
        for (i, e) in self.exponents.iter().enumerate() {
            exps[i] += e;
        }
        for (i, e) in other.exponents.iter().enumerate() {
            exps[i] += e;
        }
        Monomial::new(exps)
    }

    pub fn iter_exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.exponents.iter().copied()
    }
}

impl Ord for Monomial {
    /// Graded-lexicographic: total degree first, then lexicographic on the
    /// (conceptually zero-padded) exponent vectors.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let len = self.exponents.len().max(other.exponents.len());
        for i in 0..len {
            match self.exponent(i).cmp(&other.exponent(i)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Per-variable exponent ceiling used to truncate products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeCap {
    Unbounded,
    PerVariable(Vec<u32>),
}

impl DegreeCap {
    pub fn per_variable(caps: Vec<u32>) -> Self {
        DegreeCap::PerVariable(caps)
    }

    /// Uniform cap `c` across `arity` variables.
    pub fn uniform(c: u32, arity: usize) -> Self {
        DegreeCap::PerVariable(vec![c; arity])
    }

    fn admits(&self, m: &Monomial) -> bool {
        match self {
            DegreeCap::Unbounded => true,
            DegreeCap::PerVariable(caps) => {
                m.iter_exponents().enumerate().all(|(i, e)| {
                    e <= caps.get(i).copied().unwrap_or(u32::MAX)
                })
            }
        }
    }

    fn check_len(&self, arity: usize) -> Result<(), PolyError> {
        match self {
            DegreeCap::Unbounded => Ok(()),
            DegreeCap::PerVariable(caps) if caps.len() == arity => Ok(()),
            DegreeCap::PerVariable(caps) => Err(PolyError::CapLength {
                expected: arity,
                got: caps.len(),
            }),
        }
    }
}

/// Sparse multivariate polynomial over a [`CoefficientRing`].
///
/// Invariants: no stored zero coefficients; every monomial fits within the
/// declared arity; modular coefficients are kept in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    ring: CoefficientRing,
    arity: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePoly {
    pub fn zero(ring: CoefficientRing, arity: usize) -> Self {
        SparsePoly {
            ring,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: CoefficientRing, arity: usize, value: BigInt) -> Self {
        let mut poly = SparsePoly::zero(ring, arity);
        poly.add_term(Monomial::unit(), value);
        poly
    }

    pub fn one(ring: CoefficientRing, arity: usize) -> Self {
        SparsePoly::constant(ring, arity, BigInt::one())
    }

    /// The variable `x_index` (0-based).
    pub fn var(ring: CoefficientRing, arity: usize, index: usize) -> Result<Self, PolyError> {
        if index >= arity {
            return Err(PolyError::VariableOutOfRange { index, arity });
        }
        let mut poly = SparsePoly::zero(ring, arity);
        poly.add_term(Monomial::var(index), BigInt::one());
        Ok(poly)
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, combining
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(ring: CoefficientRing, arity: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut poly = SparsePoly::zero(ring, arity);
        for (m, c) in terms {
            if m.arity() > arity {
                return Err(PolyError::VariableOutOfRange {
                    index: m.arity() - 1,
                    arity,
                });
            }
            poly.add_term(m, c);
        }
        Ok(poly)
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Maximum total degree over all terms; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        let c = self.ring.normalize(c);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let combined = self.ring.add(slot.get(), &c);
                if combined.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = combined;
                }
            }
        }
    }

    fn check_compatible(&self, other: &SparsePoly) -> Result<(), PolyError> {
        if self.arity != other.arity {
            return Err(PolyError::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), self.ring.neg(c));
        }
        Ok(out)
    }

    pub fn neg(&self) -> SparsePoly {
        let mut out = SparsePoly::zero(self.ring, self.arity);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), self.ring.neg(c));
        }
        out
    }

    pub fn scale(&self, factor: &BigInt) -> SparsePoly {
        let mut out = SparsePoly::zero(self.ring, self.arity);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), self.ring.mul(c, factor));
        }
        out
    }

    /// Product with every monomial exceeding `cap` in any variable deleted.
    pub fn mul_capped(&self, other: &SparsePoly, cap: &DegreeCap) -> Result<SparsePoly, PolyError> {
        self.check_compatible(other)?;
        cap.check_len(self.arity)?;
        let mut out = SparsePoly::zero(self.ring, self.arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if !cap.admits(&m) {
                    continue;
                }
                out.add_term(m, ca * cb);
            }
        }
        Ok(out)
    }

    /// Uncapped product.
    pub fn mul(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.mul_capped(other, &DegreeCap::Unbounded)
    }

    /// Exact coefficient at `m`; zero if the monomial is absent.
    pub fn coeff(&self, m: &Monomial) -> Result<BigInt, PolyError> {
        if m.arity() > self.arity {
            return Err(PolyError::VariableOutOfRange {
                index: m.arity() - 1,
                arity: self.arity,
            });
        }
        Ok(self.terms.get(m).cloned().unwrap_or_else(BigInt::zero))
    }

    /// Coefficient polynomial: keeps the terms whose exponents match `fixed`
    /// exactly on the listed variables, with those variables stripped. The
    /// result has the same arity; the fixed variables simply no longer occur.
    pub fn coefficient_at(&self, fixed: &[(usize, u32)]) -> Result<SparsePoly, PolyError> {
        for &(idx, _) in fixed {
            if idx >= self.arity {
                return Err(PolyError::VariableOutOfRange {
                    index: idx,
                    arity: self.arity,
                });
            }
        }
        let mut out = SparsePoly::zero(self.ring, self.arity);
        'term: for (m, c) in &self.terms {
            for &(idx, want) in fixed {
                if m.exponent(idx) != want {
                    continue 'term;
                }
            }
            let mut exps: Vec<u32> = (0..self.arity).map(|i| m.exponent(i)).collect();
            for &(idx, _) in fixed {
                exps[idx] = 0;
            }
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over just `vars` (in the given order),
    /// failing if any term touches a variable outside the list.
    pub fn restrict_to_vars(&self, vars: &[usize]) -> Result<SparsePoly, PolyError> {
        let mut position = vec![None; self.arity];
        for (new_idx, &old_idx) in vars.iter().enumerate() {
            if old_idx >= self.arity {
                return Err(PolyError::VariableOutOfRange {
                    index: old_idx,
                    arity: self.arity,
                });
            }
            position[old_idx] = Some(new_idx);
        }
        let mut out = SparsePoly::zero(self.ring, vars.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; vars.len()];
            for (i, e) in m.iter_exponents().enumerate() {
                if e == 0 {
                    continue;
                }
                match position[i] {
                    Some(j) => exps[j] = e,
                    None => {
                        return Err(PolyError::VariableOutOfRange {
                            index: i,
                            arity: vars.len(),
                        })
                    }
                }
            }
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    /// Exact evaluation at a full point (`point.len() == arity`). Powers of
    /// each coordinate are tabulated once up to the degree actually used.
    pub fn evaluate(&self, point: &[BigInt]) -> Result<BigInt, PolyError> {
        if point.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                left: self.arity,
                right: point.len(),
            });
        }
        let mut max_exp = vec![0u32; self.arity];
        for m in self.terms.keys() {
            for (i, e) in m.iter_exponents().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let powers: Vec<Vec<BigInt>> = point
            .iter()
            .zip(&max_exp)
            .map(|(v, &top)| {
                let base = self.ring.normalize(v.clone());
                let mut table = Vec::with_capacity(top as usize + 1);
                table.push(BigInt::one());
                for _ in 0..top {
                    let next = self.ring.mul(table.last().unwrap(), &base);
                    table.push(next);
                }
                table
            })
            .collect();
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut prod = c.clone();
            for (i, e) in m.iter_exponents().enumerate() {
                if e == 0 {
                    continue;
                }
                prod = self.ring.mul(&prod, &powers[i][e as usize]);
            }
            acc = self.ring.add(&acc, &prod);
        }
        Ok(acc)
    }
}

/// Left fold of [`SparsePoly::mul_capped`] over `factors`; the empty product
/// is the constant 1. Deterministic in the order the caller supplies.
pub fn expand_product(
    ring: CoefficientRing,
    arity: usize,
    factors: &[SparsePoly],
    cap: &DegreeCap,
) -> Result<SparsePoly, PolyError> {
    cap.check_len(arity)?;
    let mut acc = SparsePoly::one(ring, arity);
    for f in factors {
        acc = acc.mul_capped(f, cap)?;
    }
    Ok(acc)
}

/// `(coeffs[0]·x_1 + ... + coeffs[d-1]·x_d)^e`, truncated against `cap`.
///
/// Generated directly from the multinomial expansion (compositions of `e`
/// that respect the cap) rather than by repeated multiplication; the two
/// routes produce identical term maps and the tests hold them to that.
pub fn power_linear_form(
    ring: CoefficientRing,
    arity: usize,
    coeffs: &[BigInt],
    e: u32,
    cap: &DegreeCap,
) -> Result<SparsePoly, PolyError> {
    if coeffs.len() > arity {
        return Err(PolyError::VariableOutOfRange {
            index: coeffs.len() - 1,
            arity,
        });
    }
    cap.check_len(arity)?;
    let active: Vec<(usize, BigInt)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !ring.is_zero(c))
        .map(|(i, c)| (i, ring.normalize(c.clone())))
        .collect();
    let mut out = SparsePoly::zero(ring, arity);
    if e == 0 {
        return Ok(SparsePoly::one(ring, arity));
    }
    if active.is_empty() {
        return Ok(out);
    }
    let factorials = factorial_table(e);
    let cap_of = |var: usize| -> u32 {
        match cap {
            DegreeCap::Unbounded => e,
            DegreeCap::PerVariable(caps) => caps[var].min(e),
        }
    };
    // DFS over the exponent compositions e = e_1 + ... + e_d with e_i within
    // the cap, accumulating coefficient products along the way.
    let mut exps = vec![0u32; arity];
    #[allow(clippy::too_many_arguments)]
    fn descend(
        ring: &CoefficientRing,
        active: &[(usize, BigInt)],
        pos: usize,
        remaining: u32,
        exps: &mut Vec<u32>,
        coeff_prod: BigInt,
        factorials: &[BigInt],
        cap_of: &dyn Fn(usize) -> u32,
        out: &mut SparsePoly,
    ) {
        if pos == active.len() {
            if remaining == 0 {
                // multinomial e! / prod(e_i!)
                let mut denom = BigInt::one();
                for &(var, _) in active {
                    denom *= &factorials[exps[var] as usize];
                }
                let multinomial = factorials.last().unwrap() / denom;
                out.add_term(
                    Monomial::new(exps.clone()),
                    ring.mul(&multinomial, &coeff_prod),
                );
            }
            return;
        }
        let (var, ref c) = active[pos];
        let max_here = cap_of(var).min(remaining);
        let mut power = BigInt::one();
        for take in 0..=max_here {
            // Tail variables must be able to absorb the remainder; when this
            // is the last variable only take == remaining survives.
            if pos + 1 == active.len() && take != remaining {
                power = ring.mul(&power, c);
                continue;
            }
            exps[var] = take;
            descend(
                ring,
                active,
                pos + 1,
                remaining - take,
                exps,
                ring.mul(&coeff_prod, &power),
                factorials,
                cap_of,
                out,
            );
            exps[var] = 0;
            power = ring.mul(&power, c);
        }
    }
    descend(
        &ring,
        &active,
        0,
        e,
        &mut exps,
        BigInt::one(),
        &factorials,
        &cap_of,
        &mut out,
    );
    Ok(out)
}

/// `[0!, 1!, ..., n!]` as exact integers.
pub fn factorial_table(n: u32) -> Vec<BigInt> {
    let mut table = Vec::with_capacity(n as usize + 1);
    table.push(BigInt::one());
    for i in 1..=n {
        let next = table.last().unwrap() * BigInt::from(i);
        table.push(next);
    }
    table
}

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> BigInt {
    factorial_table(n).pop().unwrap()
}

/// Binomial coefficient `C(n, 2)` as a machine integer.
pub fn choose2(n: usize) -> u64 {
    (n as u64) * (n as u64).saturating_sub(1) / 2
}

impl fmt::Display for SparsePoly {
    /// Canonical text form: terms in descending graded-lexicographic order,
    /// e.g. `2*x1*x2 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (sign_str, magnitude) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign_str == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign_str} ")?;
            }
            let mut wrote_factor = false;
            if !magnitude.is_one() || m.total_degree() == 0 {
                write!(f, "{magnitude}")?;
                wrote_factor = true;
            }
            for (i, e) in m.iter_exponents().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_factor {
                    write!(f, "*")?;
                }
                write!(f, "x{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote_factor = true;
            }
        }
        Ok(())
    }
}

/// Checks that the integer division `numerator / denominator` is exact.
pub fn exact_div(numerator: &BigInt, denominator: &BigInt) -> Option<BigInt> {
    if denominator.is_zero() {
        return None;
    }
    let (q, r) = num_integer::Integer::div_rem(numerator, denominator);
    if r.is_zero() {
        Some(q)
    } else {
        None
    }
}
