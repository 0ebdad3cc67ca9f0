//! Oracle tests for the permanent/determinant engine and the identity
//! checkers: everything here is compared against a deliberately naive
//! expansion path (plain term lists, no sparse maps, no truncation, its own
//! permutation generator) so the two routes share no code.

use addcomb_core::permdet::identities::{
    check_duality_31, check_duality_32, check_lemma_21, check_symmetry_33, ExponentProfile,
    KTarget,
};
use addcomb_core::permdet::{RingMatrix, RingElem};
use addcomb_core::polyring::{CoefficientRing, Monomial, SparsePoly};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Term-list polynomial with i128 coefficients; quadratic merge, no maps.
#[derive(Clone, Debug)]
struct NaivePoly {
    arity: usize,
    terms: Vec<(Vec<u32>, i128)>,
}

impl NaivePoly {
    fn zero(arity: usize) -> Self {
        NaivePoly {
            arity,
            terms: Vec::new(),
        }
    }

    fn constant(arity: usize, v: i128) -> Self {
        NaivePoly {
            arity,
            terms: vec![(vec![0; arity], v)],
        }
        .normalized()
    }

    fn monomial(arity: usize, exps: Vec<u32>, coeff: i128) -> Self {
        assert_eq!(exps.len(), arity);
        NaivePoly {
            arity,
            terms: vec![(exps, coeff)],
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        let mut merged: Vec<(Vec<u32>, i128)> = Vec::new();
        for (exps, c) in self.terms.drain(..) {
            if let Some(slot) = merged.iter_mut().find(|(e, _)| *e == exps) {
                slot.1 = slot.1.checked_add(c).expect("oracle overflow");
            } else {
                merged.push((exps, c));
            }
        }
        merged.retain(|(_, c)| *c != 0);
        NaivePoly {
            arity: self.arity,
            terms: merged,
        }
    }

    fn add(&self, other: &NaivePoly) -> NaivePoly {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.clone());
        NaivePoly {
            arity: self.arity,
            terms,
        }
        .normalized()
    }

    fn sub(&self, other: &NaivePoly) -> NaivePoly {
        let negated: Vec<(Vec<u32>, i128)> = other
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), -c))
            .collect();
        self.add(&NaivePoly {
            arity: self.arity,
            terms: negated,
        })
    }

    fn mul(&self, other: &NaivePoly) -> NaivePoly {
        let mut terms = Vec::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                terms.push((exps, ca.checked_mul(*cb).expect("oracle overflow")));
            }
        }
        NaivePoly {
            arity: self.arity,
            terms,
        }
        .normalized()
    }

    fn coeff(&self, exps: &[u32]) -> i128 {
        self.terms
            .iter()
            .find(|(e, _)| e == exps)
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }
}

/// Local permutation generator (recursive), independent of the engine's.
fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn build(remaining: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..remaining.len() {
            let v = remaining.remove(i);
            prefix.push(v);
            build(remaining, prefix, out);
            prefix.pop();
            remaining.insert(i, v);
        }
    }
    let mut out = Vec::new();
    build(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

fn perm_sign(perm: &[usize]) -> i128 {
    let mut sign = 1i128;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Signed or unsigned permutation sum of a naive polynomial matrix.
fn naive_perm_sum(entries: &[Vec<NaivePoly>], signed: bool) -> NaivePoly {
    let n = entries.len();
    let arity = entries[0][0].arity;
    let mut acc = NaivePoly::zero(arity);
    for perm in all_perms(n) {
        let mut prod = NaivePoly::constant(arity, 1);
        for (i, &j) in perm.iter().enumerate() {
            prod = prod.mul(&entries[i][j]);
        }
        let sign = if signed { perm_sign(&perm) } else { 1 };
        let signed_prod = NaivePoly {
            arity,
            terms: prod
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), sign * c))
                .collect(),
        };
        acc = acc.add(&signed_prod);
    }
    acc
}

fn naive_vandermonde(n: usize) -> NaivePoly {
    let mut acc = NaivePoly::constant(n, 1);
    for i in 0..n {
        for j in (i + 1)..n {
            let xi = NaivePoly::monomial(n, unit_exp(n, i), 1);
            let xj = NaivePoly::monomial(n, unit_exp(n, j), 1);
            acc = acc.mul(&xj.sub(&xi));
        }
    }
    acc
}

fn unit_exp(arity: usize, i: usize) -> Vec<u32> {
    let mut exps = vec![0; arity];
    exps[i] = 1;
    exps
}

fn naive_sum_power(arity: usize, n: usize, e: u32) -> NaivePoly {
    let mut sum = NaivePoly::zero(arity);
    for i in 0..n {
        sum = sum.add(&NaivePoly::monomial(arity, unit_exp(arity, i), 1));
    }
    let mut acc = NaivePoly::constant(arity, 1);
    for _ in 0..e {
        acc = acc.mul(&sum);
    }
    acc
}

/// Oracle for the duality left sides: literal uncapped expansion of
/// det-or-per(a_ij x_j^{m_i}) * vandermonde^delta * (sum x)^power.
fn naive_duality_lhs(
    a: &[Vec<i128>],
    k: &[u32],
    m: &[u32],
    delta: bool,
    use_permanent: bool,
) -> i128 {
    let n = a.len();
    let entries: Vec<Vec<NaivePoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut exps = vec![0; n];
                    exps[j] = m[i];
                    NaivePoly::monomial(n, exps, a[i][j])
                })
                .collect()
        })
        .collect();
    let mut poly = naive_perm_sum(&entries, !use_permanent);
    if delta {
        poly = poly.mul(&naive_vandermonde(n));
    }
    let sum_k: u32 = k.iter().sum();
    let sum_m: u32 = m.iter().sum();
    let forced = sum_m + if delta { (n * (n - 1) / 2) as u32 } else { 0 };
    poly = poly.mul(&naive_sum_power(n, n, sum_k - forced));
    poly.coeff(k)
}

fn big_matrix(a: &[Vec<i128>]) -> RingMatrix<BigInt> {
    RingMatrix::from_rows(
        a.iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect(),
    )
    .unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, lo: i128, hi: i128) -> Vec<Vec<i128>> {
    (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect()
}

#[test]
fn vandermonde_determinant_equals_difference_product() {
    // det(x_j^{i-1}) computed by the engine over polynomial entries equals
    // the naive expansion of prod_{i<j} (x_j - x_i), coefficient by
    // coefficient, for n <= 4.
    let ring = CoefficientRing::integers();
    for n in 1..=4usize {
        let mut rows = Vec::new();
        for i in 0..n {
            let mut row = Vec::new();
            for j in 0..n {
                let mut exps = vec![0u32; n];
                exps[j] = i as u32;
                row.push(
                    SparsePoly::from_terms(ring, n, [(Monomial::new(exps), BigInt::from(1))])
                        .unwrap(),
                );
            }
            rows.push(row);
        }
        let det = RingMatrix::from_rows(rows).unwrap().determinant();
        let oracle = naive_vandermonde(n);
        assert_eq!(det.term_count(), oracle.terms.len(), "n = {n}");
        for (exps, c) in &oracle.terms {
            let engine_coeff = det.coeff(&Monomial::new(exps.clone())).unwrap();
            assert_eq!(engine_coeff, BigInt::from(*c), "n = {n}, exps {exps:?}");
        }
    }
}

#[test]
fn gray_code_permanent_matches_leibniz_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for trial in 0..200 {
        let n = rng.gen_range(1..=7);
        let a = big_matrix(&random_matrix(&mut rng, n, -9, 9));
        assert_eq!(
            a.permanent_ryser(),
            a.permanent_leibniz(),
            "trial {trial}, n = {n}"
        );
    }
}

#[test]
fn determinant_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..60 {
        let n = rng.gen_range(1..=4);
        let a = big_matrix(&random_matrix(&mut rng, n, -6, 6));
        let b = big_matrix(&random_matrix(&mut rng, n, -6, 6));
        let ab = a.matmul(&b).unwrap();
        assert_eq!(ab.determinant(), a.determinant() * b.determinant());
    }
}

#[test]
fn permanent_and_determinant_agree_mod_two_and_at_dimension_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for _ in 0..80 {
        let n = rng.gen_range(1..=5);
        let a = big_matrix(&random_matrix(&mut rng, n, -9, 9));
        let difference = a.permanent() - a.determinant();
        assert!((difference % BigInt::from(2)).is_ring_zero());
        if n == 1 {
            assert_eq!(a.permanent(), a.determinant());
        }
    }
}

#[test]
fn duality_checkers_match_naive_expansion() {
    // Both report sides of the duality checkers agree with the naive
    // uncapped expansion on seeded random instances.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    for trial in 0..40 {
        let n = rng.gen_range(1..=3);
        let a = random_matrix(&mut rng, n, -5, 5);
        let m: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let delta = rng.gen_bool(0.5);
        let forced: u32 =
            m.iter().sum::<u32>() + if delta { (n * (n - 1) / 2) as u32 } else { 0 };
        // Targets: random split that absorbs the forced degree.
        let extra: u32 = rng.gen_range(0..=2);
        let mut k = vec![0u32; n];
        let total = forced + extra;
        for _ in 0..total {
            let slot = rng.gen_range(0..n);
            k[slot] += 1;
        }
        let prof = ExponentProfile::new(
            KTarget::PerVariable(k.clone()),
            m.clone(),
            u8::from(delta),
        );
        let matrix = big_matrix(&a);

        let report = check_duality_31(&matrix, &prof).unwrap();
        let oracle = naive_duality_lhs(&a, &k, &m, delta, false);
        assert_eq!(report.lhs, BigInt::from(oracle), "trial {trial} (det side)");
        assert!(report.equal, "trial {trial} (det side): {report:?}");

        let report = check_duality_32(&matrix, &prof).unwrap();
        let oracle = naive_duality_lhs(&a, &k, &m, delta, true);
        assert_eq!(report.lhs, BigInt::from(oracle), "trial {trial} (per side)");
        assert!(report.equal, "trial {trial} (per side): {report:?}");
    }
}

#[test]
fn symmetry_checker_matches_naive_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for trial in 0..25 {
        let n = rng.gen_range(1..=3);
        let a = random_matrix(&mut rng, n, -4, 4);
        let l: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let m: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let forced: u64 = l.iter().chain(m.iter()).map(|&v| v as u64).sum();
        let k = forced.div_ceil(n as u64) as u32 + rng.gen_range(0..=1);
        let power = k * n as u32 - forced as u32;
        let report = check_symmetry_33(&big_matrix(&a), k, &l, &m).unwrap();
        assert!(report.all_equal, "trial {trial}: {report:?}");

        // Cross-check one side of the plain det*det identity naively.
        let arity = n;
        let entries_weighted: Vec<Vec<NaivePoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut exps = vec![0; arity];
                        exps[j] = l[i];
                        NaivePoly::monomial(arity, exps, a[i][j])
                    })
                    .collect()
            })
            .collect();
        let entries_plain: Vec<Vec<NaivePoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut exps = vec![0; arity];
                        exps[j] = m[i];
                        NaivePoly::monomial(arity, exps, 1)
                    })
                    .collect()
            })
            .collect();
        let poly = naive_perm_sum(&entries_weighted, true)
            .mul(&naive_perm_sum(&entries_plain, true))
            .mul(&naive_sum_power(arity, n, power));
        let oracle = poly.coeff(&vec![k; n]);
        assert_eq!(
            report.sides[0].0,
            BigInt::from(oracle),
            "trial {trial}: det*det left side"
        );
    }
}

#[test]
fn lemma21_exhaustive_small_grid() {
    // All 3x2 arrays with entries in [0, 3]: the signed permutation-tuple
    // sum equals the product of per-row difference products.
    let mut count = 0u32;
    for bits in 0..4096u32 {
        let mut value = bits;
        let mut rows = vec![vec![BigInt::from(0); 2]; 3];
        for row in rows.iter_mut() {
            for slot in row.iter_mut() {
                *slot = BigInt::from(value % 4);
                value /= 4;
            }
        }
        let report = check_lemma_21(&rows).unwrap();
        assert!(report.equal, "entries {rows:?}");
        count += 1;
    }
    assert_eq!(count, 4096);
}

#[test]
fn lemma21_random_three_by_three_and_even_variant() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    for _ in 0..20 {
        let rows: Vec<Vec<BigInt>> = (0..3)
            .map(|_| (0..3).map(|_| BigInt::from(rng.gen_range(-4i64..=4))).collect())
            .collect();
        let report = check_lemma_21(&rows).unwrap();
        assert!(report.equal, "{report:?}");
    }
    // Even row counts exercise the permanent variant.
    for m in [2usize, 4] {
        for _ in 0..10 {
            let rows: Vec<Vec<BigInt>> = (0..m)
                .map(|_| (0..2).map(|_| BigInt::from(rng.gen_range(-4i64..=4))).collect())
                .collect();
            let report = check_lemma_21(&rows).unwrap();
            assert!(report.even_variant);
            assert!(report.equal, "{report:?}");
        }
    }
}
