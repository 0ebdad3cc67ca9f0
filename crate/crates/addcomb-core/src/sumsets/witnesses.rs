//! Witness searches with full precondition validation and independent
//! revalidation of every returned witness.
//!
//! The field-side search looks for `a_i ∈ A_i`, `b_i ∈ B_i` with
//! `a_1 + ... + a_n ∉ S`, `b_1 + ... + b_n ∉ T`, and for all `i < j`:
//! `a_i b_i c_i ≠ a_j b_j c_j`, `P_i(a_i) ≠ P_j(a_j)`, `Q_i(b_i) ≠ Q_j(b_j)`.
//! The group-side transfer replaces the polynomial clauses with scalar
//! multiples (`m a_i` pairwise distinct, `h b_i` pairwise distinct) and
//! reads the exclusions as set membership of `{a_1, ..., a_n}`.
//!
//! Existence is guaranteed under the validated preconditions, so exhausting
//! the grid is reported as `Inconsistent` — a mathematical event that is
//! expected never to fire, kept distinct from budget exhaustion.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{SumsetError, SumsetParams};
use crate::budget::Budget;
use crate::groups::{GroupElement, GroupSpec};
use crate::polyring::{
    expand_product, power_linear_form, CoefficientRing, DegreeCap, Monomial, SparsePoly,
};

/// Search outcome: a witness tuple, or exhaustion of the full grid under
/// valid preconditions (expected never).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessOutcome<T> {
    Witness { a: Vec<T>, b: Vec<T> },
    Inconsistent,
}

/// A fully explicit field-side instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldInstance {
    pub field: CoefficientRing,
    pub a_sets: Vec<Vec<BigInt>>,
    pub b_sets: Vec<Vec<BigInt>>,
    pub c: Vec<BigInt>,
    /// Monic polynomials of degree `m`, coefficients low to high.
    pub p_polys: Vec<Vec<BigInt>>,
    /// Monic polynomials of degree `h`, coefficients low to high.
    pub q_polys: Vec<Vec<BigInt>>,
    pub s_excluded: Vec<BigInt>,
    pub t_excluded: Vec<BigInt>,
}

fn normalized_distinct_sets(
    sets: &[Vec<BigInt>],
    ring: &CoefficientRing,
    family: &'static str,
    expected_count: usize,
    expected_size: usize,
) -> Result<Vec<Vec<BigInt>>, SumsetError> {
    if sets.len() != expected_count {
        return Err(SumsetError::WrongSetCount {
            family,
            expected: expected_count,
            got: sets.len(),
        });
    }
    sets.iter()
        .enumerate()
        .map(|(index, set)| {
            if set.len() != expected_size {
                return Err(SumsetError::WrongCardinality {
                    family,
                    index,
                    expected: expected_size,
                    got: set.len(),
                });
            }
            let normalized: Vec<BigInt> =
                set.iter().map(|v| ring.normalize(v.clone())).collect();
            let mut sorted = normalized.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != expected_size {
                return Err(SumsetError::DuplicateElement { family, index });
            }
            Ok(normalized)
        })
        .collect()
}

fn normalized_exclusions(
    values: &[BigInt],
    ring: &CoefficientRing,
    family: &'static str,
    max: u64,
) -> Result<Vec<BigInt>, SumsetError> {
    let normalized: Vec<BigInt> = values.iter().map(|v| ring.normalize(v.clone())).collect();
    let mut sorted = normalized.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != normalized.len() {
        return Err(SumsetError::DuplicateElement { family, index: 0 });
    }
    if normalized.len() as u64 > max {
        return Err(SumsetError::ExclusionTooLarge {
            family,
            size: normalized.len(),
            max,
        });
    }
    Ok(sorted)
}

fn monic_polys(
    polys: &[Vec<BigInt>],
    ring: &CoefficientRing,
    family: &'static str,
    count: usize,
    degree: u32,
) -> Result<Vec<Vec<BigInt>>, SumsetError> {
    if polys.len() != count {
        return Err(SumsetError::WrongSetCount {
            family,
            expected: count,
            got: polys.len(),
        });
    }
    polys
        .iter()
        .enumerate()
        .map(|(index, coeffs)| {
            if coeffs.len() != degree as usize + 1 {
                return Err(SumsetError::WrongDegree {
                    family,
                    index,
                    expected_len: degree as usize + 1,
                    got: coeffs.len(),
                });
            }
            let normalized: Vec<BigInt> =
                coeffs.iter().map(|v| ring.normalize(v.clone())).collect();
            if !normalized[degree as usize].is_one() {
                return Err(SumsetError::NotMonic { family, index });
            }
            Ok(normalized)
        })
        .collect()
}

/// Horner evaluation in the ring.
pub(crate) fn eval_poly(coeffs: &[BigInt], x: &BigInt, ring: &CoefficientRing) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = ring.add(&ring.mul(&acc, x), c);
    }
    acc
}

impl FieldInstance {
    /// Validates every hypothesis clause and returns the normalized copy the
    /// searches run on. Each violated clause maps to its own error.
    pub fn validated(&self, params: &SumsetParams) -> Result<FieldInstance, SumsetError> {
        let n = params.n();
        let p = match self.field {
            CoefficientRing::IntegersModP(p) => p,
            CoefficientRing::Integers => return Err(SumsetError::NotAPrimeField),
        };
        let bound = params.big_k().max(params.big_l());
        if p <= bound {
            return Err(SumsetError::CharacteristicTooSmall {
                p,
                must_exceed: bound,
            });
        }
        let ring = self.field;
        let a_sets =
            normalized_distinct_sets(&self.a_sets, &ring, "A", n, params.k() as usize)?;
        let b_sets =
            normalized_distinct_sets(&self.b_sets, &ring, "B", n, params.l() as usize)?;
        let c: Vec<BigInt> = {
            if self.c.len() != n {
                return Err(SumsetError::WrongSetCount {
                    family: "c",
                    expected: n,
                    got: self.c.len(),
                });
            }
            let normalized: Vec<BigInt> =
                self.c.iter().map(|v| ring.normalize(v.clone())).collect();
            let mut sorted = normalized.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != n {
                return Err(SumsetError::WeightsNotDistinct);
            }
            normalized
        };
        let p_polys = monic_polys(&self.p_polys, &ring, "P", n, params.m())?;
        let q_polys = monic_polys(&self.q_polys, &ring, "Q", n, params.h())?;
        let s_excluded = normalized_exclusions(&self.s_excluded, &ring, "S", params.big_k())?;
        let t_excluded = normalized_exclusions(&self.t_excluded, &ring, "T", params.big_l())?;
        Ok(FieldInstance {
            field: self.field,
            a_sets,
            b_sets,
            c,
            p_polys,
            q_polys,
            s_excluded,
            t_excluded,
        })
    }
}

/// Advances a mixed-radix odometer with the first position fastest; returns
/// false when the space is exhausted.
pub(crate) fn advance(index: &mut [usize], radices: &[usize]) -> bool {
    for (pos, slot) in index.iter_mut().enumerate() {
        *slot += 1;
        if *slot < radices[pos] {
            return true;
        }
        *slot = 0;
    }
    false
}

fn clauses_violated_field(
    inst: &FieldInstance,
    a: &[BigInt],
    b: &[BigInt],
) -> Vec<String> {
    let ring = &inst.field;
    let n = inst.c.len();
    let mut violations = Vec::new();
    let products: Vec<BigInt> = (0..n)
        .map(|i| ring.mul(&ring.mul(&a[i], &b[i]), &inst.c[i]))
        .collect();
    let p_values: Vec<BigInt> = (0..n)
        .map(|i| eval_poly(&inst.p_polys[i], &a[i], ring))
        .collect();
    let q_values: Vec<BigInt> = (0..n)
        .map(|i| eval_poly(&inst.q_polys[i], &b[i], ring))
        .collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if products[i] == products[j] {
                violations.push(format!("a_i b_i c_i collision at ({i}, {j})"));
            }
            if p_values[i] == p_values[j] {
                violations.push(format!("P value collision at ({i}, {j})"));
            }
            if q_values[i] == q_values[j] {
                violations.push(format!("Q value collision at ({i}, {j})"));
            }
        }
    }
    let a_sum = a.iter().fold(BigInt::zero(), |acc, v| ring.add(&acc, v));
    let b_sum = b.iter().fold(BigInt::zero(), |acc, v| ring.add(&acc, v));
    if inst.s_excluded.contains(&a_sum) {
        violations.push("a-sum lies in S".into());
    }
    if inst.t_excluded.contains(&b_sum) {
        violations.push("b-sum lies in T".into());
    }
    violations
}

/// Exhaustive grid search for a field-side witness, first grid position
/// advancing fastest (the same order the certificate witness search uses).
pub fn theorem12_witness(
    inst: &FieldInstance,
    params: &SumsetParams,
    budget: &Budget,
) -> Result<WitnessOutcome<BigInt>, SumsetError> {
    let inst = inst.validated(params)?;
    let n = params.n();
    let radices: Vec<usize> = inst
        .a_sets
        .iter()
        .map(Vec::len)
        .chain(inst.b_sets.iter().map(Vec::len))
        .collect();
    let mut index = vec![0usize; 2 * n];
    let mut meter = budget.meter();
    loop {
        if !meter.tick() {
            return Err(SumsetError::BudgetExceeded {
                nodes: meter.used(),
            });
        }
        let a: Vec<BigInt> = (0..n).map(|i| inst.a_sets[i][index[i]].clone()).collect();
        let b: Vec<BigInt> = (0..n)
            .map(|i| inst.b_sets[i][index[n + i]].clone())
            .collect();
        if clauses_violated_field(&inst, &a, &b).is_empty() {
            return Ok(WitnessOutcome::Witness { a, b });
        }
        if !advance(&mut index, &radices) {
            return Ok(WitnessOutcome::Inconsistent);
        }
    }
}

/// Independent clause-by-clause recheck of a claimed witness; returns the
/// list of violations (empty means valid). Membership in the ground sets is
/// checked too.
pub fn verify_theorem12_witness(
    inst: &FieldInstance,
    params: &SumsetParams,
    a: &[BigInt],
    b: &[BigInt],
) -> Result<Vec<String>, SumsetError> {
    let inst = inst.validated(params)?;
    let n = params.n();
    let mut violations = Vec::new();
    if a.len() != n || b.len() != n {
        violations.push("witness has wrong length".into());
        return Ok(violations);
    }
    let ring = &inst.field;
    let a: Vec<BigInt> = a.iter().map(|v| ring.normalize(v.clone())).collect();
    let b: Vec<BigInt> = b.iter().map(|v| ring.normalize(v.clone())).collect();
    for i in 0..n {
        if !inst.a_sets[i].contains(&a[i]) {
            violations.push(format!("a[{i}] is not a member of A[{i}]"));
        }
        if !inst.b_sets[i].contains(&b[i]) {
            violations.push(format!("b[{i}] is not a member of B[{i}]"));
        }
    }
    violations.extend(clauses_violated_field(&inst, &a, &b));
    Ok(violations)
}

/// The proof polynomial of the field-side theorem, over the instance field
/// in `2n` variables (`x` block then `y` block), built uncapped:
///
/// ```text
/// prod_{i<j} (P_j(x_j) - P_i(x_i)) (Q_j(y_j) - Q_i(y_i)) (c_j x_j y_j - c_i x_i y_i)
///   * (sum x)^{K - |S|} * prod_{s in S} (sum x - s)
///   * (sum y)^{L - |T|} * prod_{t in T} (sum y - t)
/// ```
///
/// Its coefficient at `x_i^{k-1} y_i^{l-1}` equals the governing coefficient,
/// so the certificate route predicts exactly the witnesses the direct search
/// finds.
pub fn theorem12_polynomial(
    inst: &FieldInstance,
    params: &SumsetParams,
) -> Result<SparsePoly, SumsetError> {
    let inst = inst.validated(params)?;
    let n = params.n();
    let ring = inst.field;
    let arity = 2 * n;

    let single_var_poly = |var: usize, coeffs: &[BigInt]| -> Result<SparsePoly, SumsetError> {
        let mut terms = Vec::new();
        for (d, c) in coeffs.iter().enumerate() {
            let mut exps = vec![0u32; arity];
            exps[var] = d as u32;
            terms.push((Monomial::new(exps), c.clone()));
        }
        Ok(SparsePoly::from_terms(ring, arity, terms)?)
    };

    let mut factors = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            factors.push(
                single_var_poly(j, &inst.p_polys[j])?
                    .sub(&single_var_poly(i, &inst.p_polys[i])?)?,
            );
            factors.push(
                single_var_poly(n + j, &inst.q_polys[j])?
                    .sub(&single_var_poly(n + i, &inst.q_polys[i])?)?,
            );
            let mut hi = vec![0u32; arity];
            hi[j] = 1;
            hi[n + j] = 1;
            let mut lo = vec![0u32; arity];
            lo[i] = 1;
            lo[n + i] = 1;
            factors.push(SparsePoly::from_terms(
                ring,
                arity,
                [
                    (Monomial::new(hi), inst.c[j].clone()),
                    (Monomial::new(lo), ring.neg(&inst.c[i])),
                ],
            )?);
        }
    }

    let mut x_ones = vec![BigInt::one(); n];
    x_ones.resize(arity, BigInt::zero());
    let mut y_ones = vec![BigInt::zero(); n];
    y_ones.extend(vec![BigInt::one(); n]);

    let sum_minus = |ones: &[BigInt], shift: &BigInt| -> Result<SparsePoly, SumsetError> {
        let linear = SparsePoly::from_terms(
            ring,
            arity,
            ones.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (Monomial::var(i), c.clone())),
        )?;
        Ok(linear.sub(&SparsePoly::constant(ring, arity, shift.clone()))?)
    };

    factors.push(power_linear_form(
        ring,
        arity,
        &x_ones,
        (params.big_k() - inst.s_excluded.len() as u64) as u32,
        &DegreeCap::Unbounded,
    )?);
    for s in &inst.s_excluded {
        factors.push(sum_minus(&x_ones, s)?);
    }
    factors.push(power_linear_form(
        ring,
        arity,
        &y_ones,
        (params.big_l() - inst.t_excluded.len() as u64) as u32,
        &DegreeCap::Unbounded,
    )?);
    for t in &inst.t_excluded {
        factors.push(sum_minus(&y_ones, t)?);
    }

    Ok(expand_product(ring, arity, &factors, &DegreeCap::Unbounded)?)
}

/// A group-side instance: exclusions are families of `n`-element sets,
/// membership is set equality (listings are canonicalized by sorting).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupInstance {
    pub spec: GroupSpec,
    pub a_sets: Vec<Vec<GroupElement>>,
    pub b_sets: Vec<Vec<GroupElement>>,
    pub c: Vec<GroupElement>,
    pub s_excluded: Vec<Vec<GroupElement>>,
    pub t_excluded: Vec<Vec<GroupElement>>,
}

impl GroupInstance {
    fn validated(&self, params: &SumsetParams) -> Result<GroupInstance, SumsetError> {
        let n = params.n();
        let spec = self.spec;
        let check_family = |sets: &[Vec<GroupElement>],
                            family: &'static str,
                            size: usize|
         -> Result<Vec<Vec<GroupElement>>, SumsetError> {
            if sets.len() != n {
                return Err(SumsetError::WrongSetCount {
                    family,
                    expected: n,
                    got: sets.len(),
                });
            }
            sets.iter()
                .enumerate()
                .map(|(index, set)| {
                    if set.len() != size {
                        return Err(SumsetError::WrongCardinality {
                            family,
                            index,
                            expected: size,
                            got: set.len(),
                        });
                    }
                    for el in set {
                        if !spec.conforms(el) {
                            return Err(SumsetError::Group(
                                crate::groups::GroupError::Conformance {
                                    expected_rank: spec.free_rank(),
                                    got: el.free_part().len(),
                                },
                            ));
                        }
                    }
                    let mut sorted = set.clone();
                    sorted.sort();
                    sorted.dedup();
                    if sorted.len() != size {
                        return Err(SumsetError::DuplicateElement { family, index });
                    }
                    Ok(set.clone())
                })
                .collect()
        };
        let a_sets = check_family(&self.a_sets, "A", params.k() as usize)?;
        let b_sets = check_family(&self.b_sets, "B", params.l() as usize)?;
        if self.c.len() != n {
            return Err(SumsetError::WrongSetCount {
                family: "c",
                expected: n,
                got: self.c.len(),
            });
        }
        let mut c_sorted = self.c.clone();
        c_sorted.sort();
        c_sorted.dedup();
        if c_sorted.len() != n {
            return Err(SumsetError::WeightsNotDistinct);
        }
        let canonical_members = |members: &[Vec<GroupElement>],
                                 family: &'static str,
                                 max: u64|
         -> Result<Vec<Vec<GroupElement>>, SumsetError> {
            let mut canon: Vec<Vec<GroupElement>> = members
                .iter()
                .enumerate()
                .map(|(index, member)| {
                    let mut sorted = member.clone();
                    sorted.sort();
                    sorted.dedup();
                    if sorted.len() != n || member.len() != n {
                        return Err(SumsetError::WrongCardinality {
                            family,
                            index,
                            expected: n,
                            got: member.len(),
                        });
                    }
                    Ok(sorted)
                })
                .collect::<Result<_, _>>()?;
            canon.sort();
            canon.dedup();
            if canon.len() != members.len() {
                return Err(SumsetError::DuplicateElement { family, index: 0 });
            }
            if canon.len() as u64 > max {
                return Err(SumsetError::ExclusionTooLarge {
                    family,
                    size: canon.len(),
                    max,
                });
            }
            Ok(canon)
        };
        let s_excluded = canonical_members(&self.s_excluded, "S", params.big_k())?;
        let t_excluded = canonical_members(&self.t_excluded, "T", params.big_l())?;
        Ok(GroupInstance {
            spec,
            a_sets,
            b_sets,
            c: self.c.clone(),
            s_excluded,
            t_excluded,
        })
    }
}

fn clauses_violated_group(
    inst: &GroupInstance,
    params: &SumsetParams,
    a: &[GroupElement],
    b: &[GroupElement],
) -> Vec<String> {
    let spec = &inst.spec;
    let n = params.n();
    let mut violations = Vec::new();
    let sums: Vec<GroupElement> = (0..n)
        .map(|i| {
            spec.add(&spec.add(&a[i], &b[i]).expect("validated"), &inst.c[i])
                .expect("validated")
        })
        .collect();
    let ma: Vec<GroupElement> = a
        .iter()
        .map(|v| spec.scalar_mul(params.m() as i64, v).expect("validated"))
        .collect();
    let hb: Vec<GroupElement> = b
        .iter()
        .map(|v| spec.scalar_mul(params.h() as i64, v).expect("validated"))
        .collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if sums[i] == sums[j] {
                violations.push(format!("a_i + b_i + c_i collision at ({i}, {j})"));
            }
            if ma[i] == ma[j] {
                violations.push(format!("m*a collision at ({i}, {j})"));
            }
            if hb[i] == hb[j] {
                violations.push(format!("h*b collision at ({i}, {j})"));
            }
        }
    }
    let mut a_set = a.to_vec();
    a_set.sort();
    if inst.s_excluded.contains(&a_set) {
        violations.push("{a_1, ..., a_n} lies in S".into());
    }
    let mut b_set = b.to_vec();
    b_set.sort();
    if inst.t_excluded.contains(&b_set) {
        violations.push("{b_1, ..., b_n} lies in T".into());
    }
    violations
}

/// Group-side witness search (same odometer order as the field search).
pub fn theorem13_witness(
    inst: &GroupInstance,
    params: &SumsetParams,
    budget: &Budget,
) -> Result<WitnessOutcome<GroupElement>, SumsetError> {
    let inst = inst.validated(params)?;
    let n = params.n();
    let radices: Vec<usize> = inst
        .a_sets
        .iter()
        .map(Vec::len)
        .chain(inst.b_sets.iter().map(Vec::len))
        .collect();
    let mut index = vec![0usize; 2 * n];
    let mut meter = budget.meter();
    loop {
        if !meter.tick() {
            return Err(SumsetError::BudgetExceeded {
                nodes: meter.used(),
            });
        }
        let a: Vec<GroupElement> = (0..n).map(|i| inst.a_sets[i][index[i]].clone()).collect();
        let b: Vec<GroupElement> = (0..n)
            .map(|i| inst.b_sets[i][index[n + i]].clone())
            .collect();
        if clauses_violated_group(&inst, params, &a, &b).is_empty() {
            return Ok(WitnessOutcome::Witness { a, b });
        }
        if !advance(&mut index, &radices) {
            return Ok(WitnessOutcome::Inconsistent);
        }
    }
}

/// Independent recheck of a group-side witness.
pub fn verify_theorem13_witness(
    inst: &GroupInstance,
    params: &SumsetParams,
    a: &[GroupElement],
    b: &[GroupElement],
) -> Result<Vec<String>, SumsetError> {
    let inst = inst.validated(params)?;
    let n = params.n();
    let mut violations = Vec::new();
    if a.len() != n || b.len() != n {
        violations.push("witness has wrong length".into());
        return Ok(violations);
    }
    for i in 0..n {
        if !inst.a_sets[i].contains(&a[i]) {
            violations.push(format!("a[{i}] is not a member of A[{i}]"));
        }
        if !inst.b_sets[i].contains(&b[i]) {
            violations.push(format!("b[{i}] is not a member of B[{i}]"));
        }
    }
    violations.extend(clauses_violated_group(&inst, params, a, b));
    Ok(violations)
}
