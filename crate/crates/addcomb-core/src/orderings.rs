//! Solvers and verifiers for distinct-column-sum orderings.
//!
//! Given subsets `A_1, ..., A_m` of a group with cyclic torsion, each of size
//! `n`, the solver looks for a listing of each `A_i` so that the `n` column
//! sums are pairwise distinct. For odd `m` such an ordering always exists in
//! this group model; for even `m` the full-group families over even-order
//! cyclic groups are obstructed, and the four-group fixture shows the cyclic
//! torsion hypothesis cannot be dropped. Both obstructions are exercised by
//! exhaustive search in the tests.
//!
//! The last row is kept in input order: any solution can be column-permuted
//! so its last row is input-ordered, so this costs no completeness and
//! shrinks the search by a factor of `n!`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;

use crate::budget::{Budget, Meter};
use crate::groups::{ElementOrder, GroupElement, GroupError, GroupSpec};
use crate::polyring::CoefficientRing;

/// Errors from family validation and the ordering searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderingError {
    Group(GroupError),
    /// Family has no sets.
    EmptyFamily,
    /// Sets have unequal sizes (or size zero).
    RaggedFamily,
    /// A set contains a repeated element.
    DuplicateElement { set: usize },
    /// Solution and family shapes disagree.
    ShapeMismatch,
    /// Solution fails its own internal invariants (stored sums wrong or
    /// not pairwise distinct).
    InvalidSolution,
    /// Search node budget exhausted; not a mathematical claim.
    BudgetExceeded { nodes: u64 },
    /// Exhaustion in a regime where a solution is guaranteed (odd row count
    /// over cyclic torsion); indicates an engine defect, expected never.
    InternalInconsistency,
    /// The even-row-count solver needs an even number of sets.
    RowCountNotEven { m: usize },
    /// The even-row-count solver requires every element of the last set to
    /// have finite odd order.
    LastSetEvenOrder { index: usize },
    /// Weight values must be pairwise distinct.
    DuplicateWeight,
    /// A set has the wrong cardinality for this operation.
    WrongCardinality { set: usize, expected: usize, got: usize },
}

impl fmt::Display for OrderingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingError::Group(e) => write!(f, "{e}"),
            OrderingError::EmptyFamily => write!(f, "family has no sets"),
            OrderingError::RaggedFamily => write!(f, "sets must share one positive size"),
            OrderingError::DuplicateElement { set } => {
                write!(f, "set {set} contains a repeated element")
            }
            OrderingError::ShapeMismatch => write!(f, "solution shape does not match family"),
            OrderingError::InvalidSolution => write!(f, "solution fails recomputation"),
            OrderingError::BudgetExceeded { nodes } => {
                write!(f, "search budget exhausted after {nodes} nodes")
            }
            OrderingError::InternalInconsistency => write!(
                f,
                "no ordering found although one is guaranteed (engine defect)"
            ),
            OrderingError::RowCountNotEven { m } => {
                write!(f, "expected an even number of sets, got {m}")
            }
            OrderingError::LastSetEvenOrder { index } => write!(
                f,
                "element {index} of the last set does not have finite odd order"
            ),
            OrderingError::DuplicateWeight => write!(f, "weights must be pairwise distinct"),
            OrderingError::WrongCardinality { set, expected, got } => {
                write!(f, "set {set} has {got} elements, expected {expected}")
            }
        }
    }
}

impl std::error::Error for OrderingError {}

impl From<GroupError> for OrderingError {
    fn from(e: GroupError) -> Self {
        OrderingError::Group(e)
    }
}

/// A family `A_1, ..., A_m` of `n`-element subsets of one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetFamily {
    spec: GroupSpec,
    sets: Vec<Vec<GroupElement>>,
}

impl SubsetFamily {
    pub fn new(spec: GroupSpec, sets: Vec<Vec<GroupElement>>) -> Result<Self, OrderingError> {
        if sets.is_empty() {
            return Err(OrderingError::EmptyFamily);
        }
        let n = sets[0].len();
        if n == 0 || sets.iter().any(|s| s.len() != n) {
            return Err(OrderingError::RaggedFamily);
        }
        for (i, set) in sets.iter().enumerate() {
            for el in set {
                if !spec.conforms(el) {
                    return Err(OrderingError::Group(GroupError::Conformance {
                        expected_rank: spec.free_rank(),
                        got: el.free_part().len(),
                    }));
                }
            }
            let mut sorted = set.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != n {
                return Err(OrderingError::DuplicateElement { set: i });
            }
        }
        Ok(SubsetFamily { spec, sets })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn sets(&self) -> &[Vec<GroupElement>] {
        &self.sets
    }

    pub fn row_count(&self) -> usize {
        self.sets.len()
    }

    pub fn set_size(&self) -> usize {
        self.sets[0].len()
    }

    /// The family restricted to the first `m` sets.
    fn prefix(&self, m: usize) -> SubsetFamily {
        SubsetFamily {
            spec: self.spec,
            sets: self.sets[..m].to_vec(),
        }
    }
}

/// A table whose row `i` is a permutation of `A_i`, with the column sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingSolution {
    pub table: Vec<Vec<GroupElement>>,
    pub column_sums: Vec<GroupElement>,
}

/// Search result: a witness ordering, or exhaustion of the ordering space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(OrderingSolution),
    NoSolution,
}

struct OrderingSearch<'a> {
    fam: &'a SubsetFamily,
    n: usize,
    free_rows: usize,
    /// Index permutation per free row, position -> element index.
    choice: Vec<Vec<usize>>,
    /// Column sums including the fixed last row from the start.
    partial: Vec<GroupElement>,
    meter: Meter,
}

impl<'a> OrderingSearch<'a> {
    fn run(fam: &'a SubsetFamily, budget: &Budget) -> Result<SolveOutcome, OrderingError> {
        let m = fam.row_count();
        let n = fam.set_size();
        let spec = fam.spec();
        let partial = fam.sets[m - 1].clone();
        let mut search = OrderingSearch {
            fam,
            n,
            free_rows: m - 1,
            choice: vec![vec![usize::MAX; n]; m - 1],
            partial,
            meter: budget.meter(),
        };
        let _ = spec;
        match search.descend_row(0)? {
            true => {
                let mut table = Vec::with_capacity(m);
                for (s, perm) in search.choice.iter().enumerate() {
                    table.push(perm.iter().map(|&ix| fam.sets[s][ix].clone()).collect());
                }
                table.push(fam.sets[m - 1].clone());
                Ok(SolveOutcome::Solved(OrderingSolution {
                    table,
                    column_sums: search.partial,
                }))
            }
            false => Ok(SolveOutcome::NoSolution),
        }
    }

    fn descend_row(&mut self, row: usize) -> Result<bool, OrderingError> {
        if row == self.free_rows {
            return Ok(self.all_sums_distinct());
        }
        let mut used = vec![false; self.n];
        self.descend_pos(row, 0, &mut used)
    }

    fn descend_pos(
        &mut self,
        row: usize,
        pos: usize,
        used: &mut Vec<bool>,
    ) -> Result<bool, OrderingError> {
        if pos == self.n {
            return self.descend_row(row + 1);
        }
        let spec = *self.fam.spec();
        let last_free_row = row + 1 == self.free_rows;
        for ix in 0..self.n {
            if used[ix] {
                continue;
            }
            if !self.meter.tick() {
                return Err(OrderingError::BudgetExceeded {
                    nodes: self.meter.used(),
                });
            }
            let saved = self.partial[pos].clone();
            let next = spec
                .add(&saved, &self.fam.sets[row][ix])
                .expect("family validated against spec");
            // Once the final free row fills a column its sum is complete;
            // collide-with-earlier-column means this branch is dead.
            if last_free_row && self.partial[..pos].contains(&next) {
                continue;
            }
            self.partial[pos] = next;
            used[ix] = true;
            self.choice[row][pos] = ix;
            if self.descend_pos(row, pos + 1, used)? {
                return Ok(true);
            }
            used[ix] = false;
            self.partial[pos] = saved;
        }
        Ok(false)
    }

    fn all_sums_distinct(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.n);
        self.partial.iter().all(|s| seen.insert(s.clone()))
    }
}

/// Searches for an ordering of each set making all column sums distinct.
///
/// The last row stays in input order; the remaining rows are tried in
/// lexicographic index-permutation order, so the first solution found is the
/// lexicographically first under that convention. `NoSolution` is returned
/// only after the whole ordering space is exhausted — and with an odd number
/// of sets a solution is guaranteed over cyclic torsion, so exhaustion there
/// is reported as an internal inconsistency rather than a negative.
pub fn find_ordering(fam: &SubsetFamily, budget: &Budget) -> Result<SolveOutcome, OrderingError> {
    match OrderingSearch::run(fam, budget)? {
        SolveOutcome::NoSolution if fam.row_count() % 2 == 1 => {
            Err(OrderingError::InternalInconsistency)
        }
        outcome => Ok(outcome),
    }
}

/// Recomputes everything: rows must be permutations of the family sets and
/// the column sums (recomputed, not trusted) pairwise distinct.
pub fn verify_ordering(
    sol: &OrderingSolution,
    fam: &SubsetFamily,
) -> Result<bool, OrderingError> {
    let m = fam.row_count();
    let n = fam.set_size();
    if sol.table.len() != m || sol.table.iter().any(|r| r.len() != n) {
        return Err(OrderingError::ShapeMismatch);
    }
    if sol.column_sums.len() != n {
        return Err(OrderingError::ShapeMismatch);
    }
    let spec = fam.spec();
    for (row, set) in sol.table.iter().zip(fam.sets()) {
        let mut row_sorted = row.clone();
        let mut set_sorted = set.clone();
        row_sorted.sort();
        set_sorted.sort();
        if row_sorted != set_sorted {
            return Ok(false);
        }
    }
    let mut seen = HashSet::with_capacity(n);
    for j in 0..n {
        let mut sum = spec.identity();
        for row in &sol.table {
            sum = spec.add(&sum, &row[j])?;
        }
        if !seen.insert(sum) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The completing row: negations of the column sums, listed so that every
/// extended column sums to the identity. The solution is revalidated first
/// (sums recomputed from the table and checked pairwise distinct).
pub fn complete_to_zero_sum(
    sol: &OrderingSolution,
    spec: &GroupSpec,
) -> Result<Vec<GroupElement>, OrderingError> {
    let n = sol.column_sums.len();
    if sol.table.is_empty() || sol.table.iter().any(|r| r.len() != n) {
        return Err(OrderingError::InvalidSolution);
    }
    let mut seen = HashSet::with_capacity(n);
    for j in 0..n {
        let mut sum = spec.identity();
        for row in &sol.table {
            sum = spec.add(&sum, &row[j])?;
        }
        if sum != sol.column_sums[j] || !seen.insert(sum) {
            return Err(OrderingError::InvalidSolution);
        }
    }
    sol.column_sums
        .iter()
        .map(|s| spec.neg(s).map_err(OrderingError::from))
        .collect()
}

/// Even-row-count solver: requires every element of the last set to have
/// finite odd order (checked before any search). Solves the first `m - 1`
/// rows, then looks for a numbering of the last set that keeps all sums
/// distinct; if that fails it falls back to the full backtracking search,
/// so exhaustion remains a complete claim.
pub fn find_ordering_even(
    fam: &SubsetFamily,
    budget: &Budget,
) -> Result<SolveOutcome, OrderingError> {
    let m = fam.row_count();
    if !m.is_multiple_of(2) {
        return Err(OrderingError::RowCountNotEven { m });
    }
    let spec = fam.spec();
    let last = &fam.sets()[m - 1];
    for (index, el) in last.iter().enumerate() {
        match spec.element_order(el)? {
            ElementOrder::Finite(t) if t % 2 == 1 => {}
            _ => return Err(OrderingError::LastSetEvenOrder { index }),
        }
    }

    let n = fam.set_size();
    if let SolveOutcome::Solved(prefix_sol) = find_ordering(&fam.prefix(m - 1), budget)? {
        // Try numberings of the last set against the found prefix.
        let mut perm: Vec<usize> = Vec::with_capacity(n);
        let mut used = vec![false; n];
        let mut meter = budget.meter();
        if extend_with_last_row(
            spec,
            &prefix_sol.column_sums,
            last,
            &mut perm,
            &mut used,
            &mut meter,
        )? {
            let mut table = prefix_sol.table.clone();
            table.push(perm.iter().map(|&ix| last[ix].clone()).collect());
            let column_sums = (0..n)
                .map(|j| spec.add(&prefix_sol.column_sums[j], &last[perm[j]]))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(SolveOutcome::Solved(OrderingSolution { table, column_sums }));
        }
    }
    // Complete fallback over all rows.
    find_ordering(fam, budget)
}

fn extend_with_last_row(
    spec: &GroupSpec,
    prefix_sums: &[GroupElement],
    last: &[GroupElement],
    perm: &mut Vec<usize>,
    used: &mut [bool],
    meter: &mut Meter,
) -> Result<bool, OrderingError> {
    let n = prefix_sums.len();
    let pos = perm.len();
    if pos == n {
        return Ok(true);
    }
    for ix in 0..n {
        if used[ix] {
            continue;
        }
        if !meter.tick() {
            return Err(OrderingError::BudgetExceeded {
                nodes: meter.used(),
            });
        }
        let sum = spec.add(&prefix_sums[pos], &last[ix])?;
        let collides = (0..pos).any(|j| {
            let prior = spec
                .add(&prefix_sums[j], &last[perm[j]])
                .expect("validated elements");
            prior == sum
        });
        if collides {
            continue;
        }
        perm.push(ix);
        used[ix] = true;
        if extend_with_last_row(spec, prefix_sums, last, perm, used, meter)? {
            return Ok(true);
        }
        used[ix] = false;
        perm.pop();
    }
    Ok(false)
}

/// The two representative systems returned by the product-ordering search.
pub type SdrPair = (Vec<BigInt>, Vec<BigInt>);

/// Distinct-representative pair with distinct weighted products: choices
/// `a_i ∈ A_i` (pairwise distinct values), `b_i ∈ B_i` (pairwise distinct),
/// such that the products `a_i b_i c_i` are pairwise distinct in the ring.
/// Exhaustive over representative pairs, lexicographically first by index.
pub fn find_sdr_product_ordering(
    a_sets: &[Vec<BigInt>],
    b_sets: &[Vec<BigInt>],
    c: &[BigInt],
    ring: &CoefficientRing,
    budget: &Budget,
) -> Result<Option<SdrPair>, OrderingError> {
    let n = c.len();
    if n == 0 || a_sets.len() != n || b_sets.len() != n {
        return Err(OrderingError::ShapeMismatch);
    }
    let normalize_sets = |sets: &[Vec<BigInt>]| -> Result<Vec<Vec<BigInt>>, OrderingError> {
        sets.iter()
            .enumerate()
            .map(|(i, set)| {
                if set.len() != n {
                    return Err(OrderingError::WrongCardinality {
                        set: i,
                        expected: n,
                        got: set.len(),
                    });
                }
                let normalized: Vec<BigInt> =
                    set.iter().map(|v| ring.normalize(v.clone())).collect();
                let mut sorted = normalized.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() != n {
                    return Err(OrderingError::DuplicateElement { set: i });
                }
                Ok(normalized)
            })
            .collect()
    };
    let a_sets = normalize_sets(a_sets)?;
    let b_sets = normalize_sets(b_sets)?;
    let c: Vec<BigInt> = c.iter().map(|v| ring.normalize(v.clone())).collect();
    let mut c_sorted = c.clone();
    c_sorted.sort();
    c_sorted.dedup();
    if c_sorted.len() != n {
        return Err(OrderingError::DuplicateWeight);
    }

    let mut meter = budget.meter();
    let mut a_pick: Vec<BigInt> = Vec::with_capacity(n);
    let mut found: Option<SdrPair> = None;
    sdr_a(
        &a_sets, &b_sets, &c, ring, &mut a_pick, &mut meter, &mut found,
    )?;
    Ok(found)
}

fn sdr_a(
    a_sets: &[Vec<BigInt>],
    b_sets: &[Vec<BigInt>],
    c: &[BigInt],
    ring: &CoefficientRing,
    a_pick: &mut Vec<BigInt>,
    meter: &mut Meter,
    found: &mut Option<SdrPair>,
) -> Result<(), OrderingError> {
    let n = c.len();
    let pos = a_pick.len();
    if pos == n {
        let mut b_pick = Vec::with_capacity(n);
        let mut products = Vec::with_capacity(n);
        return sdr_b(
            b_sets, c, ring, a_pick, &mut b_pick, &mut products, meter, found,
        );
    }
    for candidate in &a_sets[pos] {
        if found.is_some() {
            return Ok(());
        }
        if a_pick.contains(candidate) {
            continue;
        }
        if !meter.tick() {
            return Err(OrderingError::BudgetExceeded {
                nodes: meter.used(),
            });
        }
        a_pick.push(candidate.clone());
        sdr_a(a_sets, b_sets, c, ring, a_pick, meter, found)?;
        a_pick.pop();
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn sdr_b(
    b_sets: &[Vec<BigInt>],
    c: &[BigInt],
    ring: &CoefficientRing,
    a_pick: &[BigInt],
    b_pick: &mut Vec<BigInt>,
    products: &mut Vec<BigInt>,
    meter: &mut Meter,
    found: &mut Option<SdrPair>,
) -> Result<(), OrderingError> {
    let n = c.len();
    let pos = b_pick.len();
    if pos == n {
        *found = Some((a_pick.to_vec(), b_pick.clone()));
        return Ok(());
    }
    for candidate in &b_sets[pos] {
        if found.is_some() {
            return Ok(());
        }
        if b_pick.contains(candidate) {
            continue;
        }
        if !meter.tick() {
            return Err(OrderingError::BudgetExceeded {
                nodes: meter.used(),
            });
        }
        let product = ring.mul(&ring.mul(&a_pick[pos], candidate), &c[pos]);
        if products.contains(&product) {
            continue;
        }
        b_pick.push(candidate.clone());
        products.push(product);
        sdr_b(b_sets, c, ring, a_pick, b_pick, products, meter, found)?;
        b_pick.pop();
        products.pop();
    }
    Ok(())
}

/// Hard-coded counterexample fixture: the four-group `Z/2 ⊕ Z/2` family
/// `A_1 = {00, 01}`, `A_2 = {00, 10}`, `A_3 = ... = A_m = {00, 11}` with odd
/// `m >= 3`. Returns true iff some choice of orderings makes the two column
/// sums distinct — exhaustive over all `2^m` orderings. The four-group is
/// deliberately not a supported group spec; it exists only to show the
/// cyclic-torsion hypothesis is needed.
pub fn klein_family_ordering_exists(m: usize) -> bool {
    assert!(m >= 3 && m % 2 == 1, "fixture is defined for odd m >= 3");
    let mut sets: Vec<[(u8, u8); 2]> = vec![[(0, 0), (0, 1)], [(0, 0), (1, 0)]];
    for _ in 2..m {
        sets.push([(0, 0), (1, 1)]);
    }
    let xor = |a: (u8, u8), b: (u8, u8)| (a.0 ^ b.0, a.1 ^ b.1);
    for mask in 0u32..(1 << m) {
        let mut col0 = (0u8, 0u8);
        let mut col1 = (0u8, 0u8);
        for (i, set) in sets.iter().enumerate() {
            let flip = (mask >> i) & 1 == 1;
            let (first, second) = if flip { (set[1], set[0]) } else { (set[0], set[1]) };
            col0 = xor(col0, first);
            col1 = xor(col1, second);
        }
        if col0 != col1 {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    fn residues(spec: &GroupSpec, vs: &[i64]) -> Vec<GroupElement> {
        vs.iter().map(|&v| spec.residue(v).unwrap()).collect()
    }

    fn family(spec: GroupSpec, sets: &[&[i64]]) -> SubsetFamily {
        SubsetFamily::new(
            spec,
            sets.iter().map(|s| residues(&spec, s)).collect(),
        )
        .unwrap()
    }

    /// Independent oracle: exhaustively enumerates index permutations of the
    /// free rows (last row fixed) in lexicographic order and returns the
    /// first table with distinct column sums.
    fn oracle_first_solution(fam: &SubsetFamily) -> Option<Vec<Vec<usize>>> {
        use itertools::Itertools;
        let m = fam.row_count();
        let n = fam.set_size();
        let spec = fam.spec();
        let all: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let mut stack = vec![0usize; m - 1];
        'outer: loop {
            let perms: Vec<&Vec<usize>> = stack.iter().map(|&i| &all[i]).collect();
            let mut sums = Vec::with_capacity(n);
            for j in 0..n {
                let mut sum = fam.sets()[m - 1][j].clone();
                for (s, perm) in perms.iter().enumerate() {
                    sum = spec.add(&sum, &fam.sets()[s][perm[j]]).unwrap();
                }
                sums.push(sum);
            }
            let mut sorted = sums.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() == n {
                return Some(perms.into_iter().cloned().collect());
            }
            // lexicographic odometer, last row's permutation fastest
            let mut pos = m - 1;
            loop {
                if pos == 0 {
                    break 'outer;
                }
                pos -= 1;
                stack[pos] += 1;
                if stack[pos] < all.len() {
                    continue 'outer;
                }
                stack[pos] = 0;
            }
        }
        None
    }

    #[test]
    fn z3_triple_full_group() {
        let fam = family(z(3), &[&[0, 1, 2], &[0, 1, 2], &[0, 1, 2]]);
        let outcome = find_ordering(&fam, &Budget::unlimited()).unwrap();
        let SolveOutcome::Solved(sol) = outcome else {
            panic!("a solution is guaranteed for odd m over cyclic torsion")
        };
        assert!(verify_ordering(&sol, &fam).unwrap());
        // Last row fixed in input order.
        assert_eq!(sol.table[2], residues(&z(3), &[0, 1, 2]));
        // Column sums are 0, 1, 2 in some order; here the lexicographically
        // first solution gives exactly (0, 1, 2).
        let sums: Vec<u64> = sol.column_sums.iter().map(|e| e.torsion_part()).collect();
        assert_eq!(sums, vec![0, 1, 2]);
        // Against the independent exhaustive oracle.
        let oracle = oracle_first_solution(&fam).unwrap();
        for (s, perm) in oracle.iter().enumerate() {
            let row: Vec<GroupElement> =
                perm.iter().map(|&ix| fam.sets()[s][ix].clone()).collect();
            assert_eq!(sol.table[s], row, "row {s} differs from oracle");
        }
    }

    #[test]
    fn single_column_is_trivial() {
        let fam = family(z(7), &[&[3], &[5], &[6], &[1], &[0]]);
        let SolveOutcome::Solved(sol) = find_ordering(&fam, &Budget::unlimited()).unwrap() else {
            panic!("n = 1 always solves")
        };
        assert!(verify_ordering(&sol, &fam).unwrap());
        assert_eq!(sol.column_sums[0].torsion_part(), (3 + 5 + 6 + 1) % 7);
    }

    #[test]
    fn verify_rejects_tampering() {
        let fam = family(z(5), &[&[0, 1], &[2, 4], &[1, 3]]);
        let SolveOutcome::Solved(sol) = find_ordering(&fam, &Budget::unlimited()).unwrap() else {
            panic!("solvable")
        };
        assert!(verify_ordering(&sol, &fam).unwrap());

        // Column swap keeps it valid: distinctness is order-free.
        let mut swapped = sol.clone();
        swapped.table.iter_mut().for_each(|row| row.swap(0, 1));
        swapped.column_sums.swap(0, 1);
        assert!(verify_ordering(&swapped, &fam).unwrap());

        // Replacing a row with a non-permutation fails.
        let mut broken = sol.clone();
        broken.table[0][0] = broken.table[0][1].clone();
        assert!(!verify_ordering(&broken, &fam).unwrap());

        // Shape mismatch errors out rather than returning false.
        let small = family(z(5), &[&[0, 1], &[2, 4]]);
        assert!(matches!(
            verify_ordering(&sol, &small),
            Err(OrderingError::ShapeMismatch)
        ));
    }

    #[test]
    fn completion_and_round_trip() {
        let spec = z(3);
        let fam = family(spec, &[&[0, 1, 2], &[0, 1, 2], &[0, 1, 2]]);
        let SolveOutcome::Solved(sol) = find_ordering(&fam, &Budget::unlimited()).unwrap() else {
            panic!("solvable")
        };
        let completion = complete_to_zero_sum(&sol, &spec).unwrap();
        // Sums (0,1,2) negate to (0,2,1).
        let negs: Vec<u64> = completion.iter().map(|e| e.torsion_part()).collect();
        assert_eq!(negs, vec![0, 2, 1]);
        // Appending the completion kills every column sum and forms a set.
        for (sum, extra) in sol.column_sums.iter().zip(&completion) {
            assert_eq!(spec.add(sum, extra).unwrap(), spec.identity());
        }
        let mut dedup = completion.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), completion.len());

        // Tampered solutions are rejected.
        let mut bad = sol.clone();
        bad.column_sums[0] = bad.column_sums[1].clone();
        assert!(matches!(
            complete_to_zero_sum(&bad, &spec),
            Err(OrderingError::InvalidSolution)
        ));
    }

    #[test]
    fn even_solver_happy_path() {
        // Z/3, m = 2, both sets the full group: every order is odd.
        let fam = family(z(3), &[&[0, 1, 2], &[0, 1, 2]]);
        let SolveOutcome::Solved(sol) = find_ordering_even(&fam, &Budget::unlimited()).unwrap()
        else {
            panic!("guaranteed when the last set has odd orders")
        };
        assert!(verify_ordering(&sol, &fam).unwrap());
    }

    #[test]
    fn even_solver_rejects_even_order_elements() {
        let fam = family(z(2), &[&[0, 1], &[0, 1]]);
        assert!(matches!(
            find_ordering_even(&fam, &Budget::unlimited()),
            Err(OrderingError::LastSetEvenOrder { index: 1 })
        ));
        let full: &[i64] = &[0, 1, 2];
        let odd_m = family(z(3), &[full, full, full]);
        assert!(matches!(
            find_ordering_even(&odd_m, &Budget::unlimited()),
            Err(OrderingError::RowCountNotEven { m: 3 })
        ));
    }

    #[test]
    fn parity_obstruction_full_group_even_m() {
        // Full-group families over Z/2 and Z/4 with even m admit no
        // distinct-sum ordering; exhaustive search confirms it.
        for n in [2u64, 4] {
            let all: Vec<i64> = (0..n as i64).collect();
            for m in [2usize, 4] {
                let fam = family(z(n), &vec![all.as_slice(); m]);
                let outcome = find_ordering(&fam, &Budget::unlimited()).unwrap();
                assert_eq!(
                    outcome,
                    SolveOutcome::NoSolution,
                    "Z/{n} with m = {m} must be obstructed"
                );
            }
        }
    }

    #[test]
    fn klein_fixture_has_no_ordering() {
        assert!(!klein_family_ordering_exists(3));
        assert!(!klein_family_ordering_exists(5));
    }

    #[test]
    fn budget_exhaustion_reported_distinctly() {
        let full: &[i64] = &[0, 1, 2, 3];
        let fam = family(z(4), &[full, full, full, full]);
        match find_ordering(&fam, &Budget::limited(5)) {
            Err(OrderingError::BudgetExceeded { nodes }) => assert!(nodes > 5),
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn sdr_products_small_field() {
        let gf7 = CoefficientRing::mod_p(7).unwrap();
        let big = |vs: &[i64]| vs.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>();
        let a_sets = vec![big(&[1, 2]), big(&[3, 4])];
        let b_sets = vec![big(&[1, 2]), big(&[3, 4])];
        let c = big(&[1, 2]);
        let found =
            find_sdr_product_ordering(&a_sets, &b_sets, &c, &gf7, &Budget::unlimited())
                .unwrap()
                .expect("guaranteed over GF(7) with distinct weights");
        let (a, b) = found;
        // Representatives come from their sets, pairwise distinct.
        assert!(a[0] != a[1] && b[0] != b[1]);
        // Products pairwise distinct mod 7.
        let p0 = gf7.mul(&gf7.mul(&a[0], &b[0]), &c[0]);
        let p1 = gf7.mul(&gf7.mul(&a[1], &b[1]), &c[1]);
        assert_ne!(p0, p1);
    }

    #[test]
    fn sdr_products_char_two_probe() {
        // GF(2) with weights (0, 1): weights are distinct (0 is allowed) and
        // the solver's output must satisfy distinctness, checked here
        // exhaustively against the clause definitions.
        let gf2 = CoefficientRing::mod_p(2).unwrap();
        let big = |vs: &[i64]| vs.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>();
        let a_sets = vec![big(&[0, 1]), big(&[0, 1])];
        let b_sets = vec![big(&[0, 1]), big(&[0, 1])];
        let c = big(&[0, 1]);
        let (a, b) =
            find_sdr_product_ordering(&a_sets, &b_sets, &c, &gf2, &Budget::unlimited())
                .unwrap()
                .expect("a representative pair exists over GF(2)");
        assert_ne!(a[0], a[1]);
        assert_ne!(b[0], b[1]);
        let p0 = gf2.mul(&gf2.mul(&a[0], &b[0]), &c[0]);
        let p1 = gf2.mul(&gf2.mul(&a[1], &b[1]), &c[1]);
        assert_ne!(p0, p1);
    }

    #[test]
    fn sdr_products_rejects_duplicate_weights() {
        let gf7 = CoefficientRing::mod_p(7).unwrap();
        let big = |vs: &[i64]| vs.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>();
        let sets = vec![big(&[1, 2]), big(&[3, 4])];
        assert!(matches!(
            find_sdr_product_ordering(&sets, &sets, &big(&[3, 3]), &gf7, &Budget::unlimited()),
            Err(OrderingError::DuplicateWeight)
        ));
        // 8 = 1 mod 7 collides after normalization too.
        assert!(matches!(
            find_sdr_product_ordering(&sets, &sets, &big(&[1, 8]), &gf7, &Budget::unlimited()),
            Err(OrderingError::DuplicateWeight)
        ));
    }

    #[test]
    fn sdr_single_position() {
        let gf5 = CoefficientRing::mod_p(5).unwrap();
        let big = |vs: &[i64]| vs.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>();
        let (a, b) = find_sdr_product_ordering(
            &[big(&[4])],
            &[big(&[2])],
            &big(&[3]),
            &gf5,
            &Budget::unlimited(),
        )
        .unwrap()
        .expect("n = 1 is trivial");
        assert_eq!(a, big(&[4]));
        assert_eq!(b, big(&[2]));
    }
}
