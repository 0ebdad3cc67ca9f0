//! Exact arithmetic in `Z^r ⊕ Z/NZ`.
//!
//! Every finitely generated abelian group whose torsion subgroup is cyclic is
//! isomorphic to `Z^r ⊕ Z/NZ` for some free rank `r ≥ 0` and torsion modulus
//! `N ≥ 1` (`N = 1` meaning torsion-free). All the group-side searches in
//! this crate work in this model; it is small enough to test exhaustively
//! and large enough to host every finite computation we run.
//!
//! Free-part coordinates are arbitrary-precision integers so sums never wrap.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Errors from group construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    /// Torsion modulus must be at least 1.
    InvalidModulus,
    /// Element does not conform to the group spec (wrong free rank).
    Conformance { expected_rank: usize, got: usize },
    /// Text form could not be parsed.
    Parse(String),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::InvalidModulus => write!(f, "torsion modulus must be >= 1"),
            GroupError::Conformance { expected_rank, got } => write!(
                f,
                "element has free rank {got}, group expects {expected_rank}"
            ),
            GroupError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for GroupError {}

/// The group `Z^r ⊕ Z/NZ`.
///
/// `(r, N) = (0, 1)` is the trivial group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    free_rank: usize,
    torsion_modulus: u64,
}

/// An element of `Z^r ⊕ Z/NZ`: an integer vector of length `r` and a residue
/// in `[0, N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    free: Vec<BigInt>,
    torsion: u64,
}

/// Order of a group element: least `t >= 1` with `t·a = 0`, or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementOrder {
    Finite(u64),
    Infinite,
}

impl GroupSpec {
    pub fn new(free_rank: usize, torsion_modulus: u64) -> Result<Self, GroupError> {
        if torsion_modulus == 0 {
            return Err(GroupError::InvalidModulus);
        }
        Ok(GroupSpec {
            free_rank,
            torsion_modulus,
        })
    }

    /// The trivial group `Z^0 ⊕ Z/1Z`.
    pub fn trivial() -> Self {
        GroupSpec {
            free_rank: 0,
            torsion_modulus: 1,
        }
    }

    /// The cyclic group `Z/NZ`.
    pub fn cyclic(n: u64) -> Result<Self, GroupError> {
        GroupSpec::new(0, n)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_modulus(&self) -> u64 {
        self.torsion_modulus
    }

    /// True iff `a` is an element of this group shape.
    pub fn conforms(&self, a: &GroupElement) -> bool {
        a.free.len() == self.free_rank && a.torsion < self.torsion_modulus
    }

    fn check(&self, a: &GroupElement) -> Result<(), GroupError> {
        if !self.conforms(a) {
            return Err(GroupError::Conformance {
                expected_rank: self.free_rank,
                got: a.free.len(),
            });
        }
        Ok(())
    }

    /// The identity element (all zeros).
    pub fn identity(&self) -> GroupElement {
        GroupElement {
            free: vec![BigInt::zero(); self.free_rank],
            torsion: 0,
        }
    }

    /// Builds an element, reducing the torsion coordinate mod `N`.
    pub fn element(&self, free: Vec<BigInt>, torsion: i64) -> Result<GroupElement, GroupError> {
        if free.len() != self.free_rank {
            return Err(GroupError::Conformance {
                expected_rank: self.free_rank,
                got: free.len(),
            });
        }
        let n = self.torsion_modulus as i128;
        let t = (torsion as i128).rem_euclid(n) as u64;
        Ok(GroupElement { free, torsion: t })
    }

    /// Shorthand for elements of a purely torsion group (`r = 0`).
    pub fn residue(&self, torsion: i64) -> Result<GroupElement, GroupError> {
        self.element(Vec::new(), torsion)
    }

    /// Componentwise sum; torsion reduced mod `N`.
    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        let free = a
            .free
            .iter()
            .zip(&b.free)
            .map(|(x, y)| x + y)
            .collect();
        let torsion = (a.torsion + b.torsion) % self.torsion_modulus;
        Ok(GroupElement { free, torsion })
    }

    /// Additive inverse.
    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        let free = a.free.iter().map(|x| -x).collect();
        let torsion = if a.torsion == 0 {
            0
        } else {
            self.torsion_modulus - a.torsion
        };
        Ok(GroupElement { free, torsion })
    }

    /// Integer scalar multiple `t·a` (`t` may be negative).
    pub fn scalar_mul(&self, t: i64, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        let scalar = BigInt::from(t);
        let free = a.free.iter().map(|x| x * &scalar).collect();
        let n = self.torsion_modulus as i128;
        let torsion = ((a.torsion as i128) * (t as i128)).rem_euclid(n) as u64;
        Ok(GroupElement { free, torsion })
    }

    /// Least `t >= 1` with `t·a = 0`; infinite when the free part is nonzero.
    ///
    /// The identity has order 1, and every finite order divides `N`.
    pub fn element_order(&self, a: &GroupElement) -> Result<ElementOrder, GroupError> {
        self.check(a)?;
        if a.free.iter().any(|x| !x.is_zero()) {
            return Ok(ElementOrder::Infinite);
        }
        let n = self.torsion_modulus;
        let g = n.gcd(&a.torsion);
        Ok(ElementOrder::Finite(n / g))
    }

    /// Fold of [`GroupSpec::add`]; the empty list yields the identity.
    pub fn sum_all(&self, xs: &[GroupElement]) -> Result<GroupElement, GroupError> {
        let mut acc = self.identity();
        for x in xs {
            acc = self.add(&acc, x)?;
        }
        Ok(acc)
    }

    /// Every element, for finite groups (`r = 0`), in residue order.
    pub fn all_elements(&self) -> Option<Vec<GroupElement>> {
        if self.free_rank != 0 {
            return None;
        }
        Some(
            (0..self.torsion_modulus)
                .map(|t| GroupElement {
                    free: Vec::new(),
                    torsion: t,
                })
                .collect(),
        )
    }
}

impl GroupElement {
    pub fn free_part(&self) -> &[BigInt] {
        &self.free
    }

    pub fn torsion_part(&self) -> u64 {
        self.torsion
    }

    /// Parses the text form `r:v1,...,vr;t:k`. The free list may be empty
    /// (`r:;t:3`), and the torsion residue is reduced against `spec`.
    pub fn parse(s: &str, spec: &GroupSpec) -> Result<GroupElement, GroupError> {
        let s = s.trim();
        let (free_str, tor_str) = s
            .split_once(';')
            .ok_or_else(|| GroupError::Parse(format!("missing ';' in element `{s}`")))?;
        let free_body = free_str
            .strip_prefix("r:")
            .ok_or_else(|| GroupError::Parse(format!("expected `r:` prefix in `{s}`")))?;
        let tor_body = tor_str
            .strip_prefix("t:")
            .ok_or_else(|| GroupError::Parse(format!("expected `t:` prefix in `{s}`")))?;
        let mut free = Vec::new();
        if !free_body.trim().is_empty() {
            for piece in free_body.split(',') {
                let v = BigInt::from_str(piece.trim())
                    .map_err(|e| GroupError::Parse(format!("bad free coordinate `{piece}`: {e}")))?;
                free.push(v);
            }
        }
        let torsion = i64::from_str(tor_body.trim())
            .map_err(|e| GroupError::Parse(format!("bad torsion residue `{tor_body}`: {e}")))?;
        spec.element(free, torsion)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r:")?;
        for (i, v) in self.free.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ";t:{}", self.torsion)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.free_rank, self.torsion_modulus) {
            (0, 1) => write!(f, "Z^0"),
            (0, n) => write!(f, "Z/{n}"),
            (r, 1) => write!(f, "Z^{r}"),
            (r, n) => write!(f, "Z^{r} x Z/{n}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    /// Accepts `Z/N`, `Z^r`, `Z`, and products like `Z^2 x Z/6`.
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let mut free_rank = 0usize;
        let mut torsion: Option<u64> = None;
        for part in s.split('x') {
            let part = part.trim();
            if part.is_empty() {
                return Err(GroupError::Parse(format!("empty factor in `{s}`")));
            }
            if let Some(n) = part.strip_prefix("Z/") {
                let n: u64 = n
                    .trim()
                    .parse()
                    .map_err(|e| GroupError::Parse(format!("bad modulus in `{part}`: {e}")))?;
                if n == 0 {
                    return Err(GroupError::InvalidModulus);
                }
                if torsion.replace(n).is_some() {
                    return Err(GroupError::Parse(format!(
                        "more than one torsion factor in `{s}`"
                    )));
                }
            } else if let Some(r) = part.strip_prefix("Z^") {
                let r: usize = r
                    .trim()
                    .parse()
                    .map_err(|e| GroupError::Parse(format!("bad rank in `{part}`: {e}")))?;
                free_rank += r;
            } else if part == "Z" {
                free_rank += 1;
            } else {
                return Err(GroupError::Parse(format!("unrecognized factor `{part}`")));
            }
        }
        GroupSpec::new(free_rank, torsion.unwrap_or(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(spec: &GroupSpec, free: &[i64], t: i64) -> GroupElement {
        spec.element(free.iter().map(|&v| BigInt::from(v)).collect(), t)
            .unwrap()
    }

    #[test]
    fn add_reduces_torsion() {
        let spec = GroupSpec::cyclic(5).unwrap();
        let sum = spec.add(&el(&spec, &[], 3), &el(&spec, &[], 4)).unwrap();
        assert_eq!(sum, el(&spec, &[], 2));
    }

    #[test]
    fn add_free_inverse() {
        let spec = GroupSpec::new(1, 1).unwrap();
        let sum = spec.add(&el(&spec, &[7], 0), &el(&spec, &[-7], 0)).unwrap();
        assert_eq!(sum, spec.identity());
    }

    #[test]
    fn add_componentwise() {
        let spec = GroupSpec::new(1, 4).unwrap();
        let sum = spec
            .add(&el(&spec, &[1], 3), &el(&spec, &[2], 3))
            .unwrap();
        assert_eq!(sum, el(&spec, &[3], 2));
    }

    #[test]
    fn add_rejects_rank_mismatch() {
        let spec = GroupSpec::new(2, 3).unwrap();
        let other = GroupSpec::new(1, 3).unwrap();
        let err = spec
            .add(&el(&other, &[1], 0), &el(&other, &[1], 0))
            .unwrap_err();
        assert!(matches!(err, GroupError::Conformance { .. }));
    }

    #[test]
    fn order_in_z6() {
        let spec = GroupSpec::cyclic(6).unwrap();
        assert_eq!(
            spec.element_order(&el(&spec, &[], 2)).unwrap(),
            ElementOrder::Finite(3)
        );
    }

    #[test]
    fn order_of_free_generator_is_infinite() {
        let spec = GroupSpec::new(1, 1).unwrap();
        assert_eq!(
            spec.element_order(&el(&spec, &[1], 0)).unwrap(),
            ElementOrder::Infinite
        );
    }

    #[test]
    fn order_of_identity() {
        let spec = GroupSpec::cyclic(9).unwrap();
        assert_eq!(
            spec.element_order(&spec.identity()).unwrap(),
            ElementOrder::Finite(1)
        );
    }

    #[test]
    fn order_divides_modulus() {
        for n in 1..=12u64 {
            let spec = GroupSpec::cyclic(n).unwrap();
            for a in spec.all_elements().unwrap() {
                match spec.element_order(&a).unwrap() {
                    ElementOrder::Finite(t) => assert_eq!(n % t, 0, "order {t} !| {n}"),
                    ElementOrder::Infinite => panic!("finite group has infinite order"),
                }
            }
        }
    }

    #[test]
    fn sum_of_z4_is_unique_involution() {
        let spec = GroupSpec::cyclic(4).unwrap();
        let total = spec.sum_all(&spec.all_elements().unwrap()).unwrap();
        assert_eq!(total, el(&spec, &[], 2));
    }

    #[test]
    fn sum_of_z5_vanishes() {
        let spec = GroupSpec::cyclic(5).unwrap();
        let total = spec.sum_all(&spec.all_elements().unwrap()).unwrap();
        assert_eq!(total, spec.identity());
    }

    #[test]
    fn sum_of_even_cyclic_is_order_two_element() {
        // For an even-order cyclic group the full sum is the unique element
        // of order 2, i.e. the residue N/2.
        for n in [2u64, 4, 6, 8, 10] {
            let spec = GroupSpec::cyclic(n).unwrap();
            let total = spec.sum_all(&spec.all_elements().unwrap()).unwrap();
            assert_eq!(total.torsion_part(), n / 2);
            assert_eq!(
                spec.element_order(&total).unwrap(),
                ElementOrder::Finite(2)
            );
        }
    }

    #[test]
    fn empty_sum_is_identity() {
        let spec = GroupSpec::new(2, 7).unwrap();
        assert_eq!(spec.sum_all(&[]).unwrap(), spec.identity());
    }

    #[test]
    fn scalar_mul_matches_repeated_add() {
        let spec = GroupSpec::new(1, 6).unwrap();
        let a = el(&spec, &[2], 5);
        let mut acc = spec.identity();
        for _ in 0..7 {
            acc = spec.add(&acc, &a).unwrap();
        }
        assert_eq!(spec.scalar_mul(7, &a).unwrap(), acc);
        let neg = spec.scalar_mul(-1, &a).unwrap();
        assert_eq!(neg, spec.neg(&a).unwrap());
    }

    #[test]
    fn group_laws_exhaustive_small() {
        // Exhaustive associativity/commutativity/identity/inverse sweep for
        // r <= 1, N <= 12 with free coordinates in [-3, 3].
        let mut checked = 0u64;
        for (r, n_max, lo, hi) in [(0usize, 12u64, 0i64, 0i64), (1, 4, -3, 3)] {
            for n in 1..=n_max {
                let spec = GroupSpec::new(r, n).unwrap();
                let mut elements = Vec::new();
                for t in 0..n as i64 {
                    for v in lo..=hi {
                        let free = if r == 0 { vec![] } else { vec![v] };
                        elements.push(el(&spec, &free, t));
                        if r == 0 {
                            break;
                        }
                    }
                }
                for a in &elements {
                    assert_eq!(spec.add(a, &spec.identity()).unwrap(), *a);
                    assert_eq!(
                        spec.add(a, &spec.neg(a).unwrap()).unwrap(),
                        spec.identity()
                    );
                    for b in &elements {
                        assert_eq!(spec.add(a, b).unwrap(), spec.add(b, a).unwrap());
                        for c in &elements {
                            let ab_c = spec.add(&spec.add(a, b).unwrap(), c).unwrap();
                            let a_bc = spec.add(a, &spec.add(b, c).unwrap()).unwrap();
                            assert_eq!(ab_c, a_bc);
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 10_000);
    }

    #[test]
    fn text_roundtrip() {
        let spec = GroupSpec::new(2, 9).unwrap();
        let a = el(&spec, &[-4, 11], -2);
        let s = a.to_string();
        assert_eq!(s, "r:-4,11;t:7");
        assert_eq!(GroupElement::parse(&s, &spec).unwrap(), a);

        let cyclic = GroupSpec::cyclic(6).unwrap();
        let b = el(&cyclic, &[], 5);
        assert_eq!(b.to_string(), "r:;t:5");
        assert_eq!(GroupElement::parse("r:;t:5", &cyclic).unwrap(), b);
    }

    #[test]
    fn spec_text_roundtrip() {
        for s in ["Z/6", "Z^2", "Z^0", "Z^1 x Z/4"] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!("Z".parse::<GroupSpec>().unwrap(), GroupSpec::new(1, 1).unwrap());
        assert_eq!(
            "Z x Z/5".parse::<GroupSpec>().unwrap(),
            GroupSpec::new(1, 5).unwrap()
        );
        assert!("Z/0".parse::<GroupSpec>().is_err());
        assert!("Q".parse::<GroupSpec>().is_err());
    }
}
