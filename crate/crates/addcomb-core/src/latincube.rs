//! Cayley addition cubes, subcube extraction, and Latin transversal search.
//!
//! A transversal of an `n x n x n` cube is a set of `n` cells no two of
//! which lie on a common line; equivalently, no two cells agree in two or
//! more coordinates. Cells may share a single coordinate, so the search
//! space is strictly larger than the permutation-aligned triples — the
//! search here covers all of it. A transversal is Latin when its cell values
//! are pairwise distinct; a subcube may carry more than `n` distinct symbols,
//! so the verifier checks value distinctness only, never alphabet size.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;

/// Errors from cube construction and transversal search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CubeError {
    /// Entry array length is not `n^3`.
    BadShape { n: usize, len: usize },
    /// Index subsets for a subcube must be equal-sized, sorted, distinct and
    /// in range.
    BadSubcubeIndices(String),
    /// A transversal refers to a cell outside the cube.
    CellOutOfRange { cell: (usize, usize, usize), n: usize },
    /// Transversal has the wrong number of cells.
    WrongCellCount { expected: usize, got: usize },
    /// Search budget exhausted; not a mathematical claim.
    BudgetExceeded { nodes: u64 },
}

impl fmt::Display for CubeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubeError::BadShape { n, len } => {
                write!(f, "expected {}^3 = {} entries, got {len}", n, n * n * n)
            }
            CubeError::BadSubcubeIndices(msg) => write!(f, "bad subcube indices: {msg}"),
            CubeError::CellOutOfRange { cell, n } => {
                write!(f, "cell {cell:?} out of range for side {n}")
            }
            CubeError::WrongCellCount { expected, got } => {
                write!(f, "expected {expected} cells, got {got}")
            }
            CubeError::BudgetExceeded { nodes } => {
                write!(f, "search budget exhausted after {nodes} nodes")
            }
        }
    }
}

impl std::error::Error for CubeError {}

/// Dynamic bitset; word-width fast path falls out of the representation.
#[derive(Debug, Clone)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }
}

/// An `n x n x n` cube of symbols with a cached Latin flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cube {
    n: usize,
    entries: Vec<u32>,
    latin: bool,
}

impl Cube {
    /// Builds a cube from row-major entries (`index = (i*n + j)*n + k`);
    /// the Latin flag is recomputed, never trusted.
    pub fn from_entries(n: usize, entries: Vec<u32>) -> Result<Cube, CubeError> {
        if n == 0 || entries.len() != n * n * n {
            return Err(CubeError::BadShape {
                n,
                len: entries.len(),
            });
        }
        let mut cube = Cube {
            n,
            entries,
            latin: false,
        };
        cube.latin = cube.compute_latin();
        Ok(cube)
    }

    /// The Cayley addition cube of `Z/NZ`: entry at `(i, j, k)` is
    /// `i + j + k mod N`. Every line is a bijection, so the cube is Latin.
    pub fn cayley(n: usize) -> Cube {
        assert!(n >= 1, "side must be positive");
        let mut entries = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    entries.push(((i + j + k) % n) as u32);
                }
            }
        }
        Cube {
            n,
            entries,
            latin: true,
        }
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> u32 {
        self.entries[(i * self.n + j) * self.n + k]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// True iff no line (fix two coordinates, vary the third) repeats a
    /// symbol.
    pub fn is_latin(&self) -> bool {
        self.latin
    }

    fn compute_latin(&self) -> bool {
        let n = self.n;
        let mut seen: Vec<bool> = Vec::new();
        let alphabet = self.entries.iter().max().map_or(0, |&m| m as usize + 1);
        for a in 0..n {
            for b in 0..n {
                for line in 0..3 {
                    seen.clear();
                    seen.resize(alphabet, false);
                    for t in 0..n {
                        let v = match line {
                            0 => self.entry(a, b, t),
                            1 => self.entry(a, t, b),
                            _ => self.entry(t, a, b),
                        } as usize;
                        if seen[v] {
                            return false;
                        }
                        seen[v] = true;
                    }
                }
            }
        }
        true
    }

    /// Restriction to `A x B x C`; the index sets must be equal-sized,
    /// strictly increasing and in range. The Latin flag is recomputed.
    pub fn subcube(&self, a: &[usize], b: &[usize], c: &[usize]) -> Result<Cube, CubeError> {
        let n = a.len();
        if n == 0 || b.len() != n || c.len() != n {
            return Err(CubeError::BadSubcubeIndices(format!(
                "sizes {}, {}, {} must be equal and positive",
                a.len(),
                b.len(),
                c.len()
            )));
        }
        for axis in [a, b, c] {
            if axis.windows(2).any(|w| w[0] >= w[1]) {
                return Err(CubeError::BadSubcubeIndices(
                    "indices must be strictly increasing".into(),
                ));
            }
            if *axis.last().unwrap() >= self.n {
                return Err(CubeError::BadSubcubeIndices(format!(
                    "index {} out of range for side {}",
                    axis.last().unwrap(),
                    self.n
                )));
            }
        }
        let mut entries = Vec::with_capacity(n * n * n);
        for &i in a {
            for &j in b {
                for &k in c {
                    entries.push(self.entry(i, j, k));
                }
            }
        }
        Cube::from_entries(n, entries)
    }
}

/// `n` cells, no two on a common line, with the values found at them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    pub cells: Vec<(usize, usize, usize)>,
    pub values: Vec<u32>,
}

/// Verification outcome, separating the placement condition from value
/// distinctness (a transversal need not be Latin).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransversalCheck {
    /// No two cells agree in two or more coordinates.
    pub cells_disjoint: bool,
    /// The cube values at the cells are pairwise distinct.
    pub values_distinct: bool,
}

impl TransversalCheck {
    pub fn is_latin_transversal(&self) -> bool {
        self.cells_disjoint && self.values_distinct
    }
}

/// Recomputes both transversal conditions against the cube; stored values
/// are ignored.
pub fn verify_transversal(t: &Transversal, cube: &Cube) -> Result<TransversalCheck, CubeError> {
    let n = cube.side();
    if t.cells.len() != n {
        return Err(CubeError::WrongCellCount {
            expected: n,
            got: t.cells.len(),
        });
    }
    for &cell in &t.cells {
        let (i, j, k) = cell;
        if i >= n || j >= n || k >= n {
            return Err(CubeError::CellOutOfRange { cell, n });
        }
    }
    let mut cells_disjoint = true;
    for (idx, &(i1, j1, k1)) in t.cells.iter().enumerate() {
        for &(i2, j2, k2) in &t.cells[(idx + 1)..] {
            let agreements =
                usize::from(i1 == i2) + usize::from(j1 == j2) + usize::from(k1 == k2);
            if agreements >= 2 {
                cells_disjoint = false;
            }
        }
    }
    let mut values: Vec<u32> = t
        .cells
        .iter()
        .map(|&(i, j, k)| cube.entry(i, j, k))
        .collect();
    values.sort_unstable();
    let len_before = values.len();
    values.dedup();
    Ok(TransversalCheck {
        cells_disjoint,
        values_distinct: values.len() == len_before,
    })
}

/// Finds a Latin transversal, or `None` after exhausting the full space.
///
/// Two phases. The first looks only at permutation-aligned transversals
/// (all three coordinates pairwise distinct, one cell per first-axis layer)
/// using per-axis occupancy bitmasks plus a value set; this is a heuristic
/// that succeeds immediately on Cayley cubes and their isotopies, and its
/// answer is the lexicographically first aligned transversal. If no aligned
/// transversal exists, the second phase searches the full cell space — a
/// transversal may legally share a single coordinate between cells — with
/// coordinate-pair occupancy masks, returning the lexicographically first
/// transversal overall. Only exhaustion of the second phase is `None`.
pub fn find_latin_transversal(
    cube: &Cube,
    budget: &Budget,
) -> Result<Option<Transversal>, CubeError> {
    let n = cube.side();
    let alphabet = cube.entries().iter().max().map_or(0, |&m| m as usize + 1);
    let mut meter = budget.meter();

    let mut aligned = AlignedSearch {
        cube,
        n,
        used_j: BitSet::new(n),
        used_k: BitSet::new(n),
        used_value: BitSet::new(alphabet),
        picked: Vec::with_capacity(n),
        meter: &mut meter,
    };
    if aligned.descend(0)? {
        let cells = aligned.picked.clone();
        let values = cells.iter().map(|&(i, j, k)| cube.entry(i, j, k)).collect();
        return Ok(Some(Transversal { cells, values }));
    }

    let mut general = GeneralSearch {
        cube,
        n,
        used_ij: BitSet::new(n * n),
        used_ik: BitSet::new(n * n),
        used_jk: BitSet::new(n * n),
        used_value: BitSet::new(alphabet),
        picked: Vec::with_capacity(n),
        meter: &mut meter,
    };
    if general.descend(0)? {
        let cells = general.picked.clone();
        let values = cells.iter().map(|&(i, j, k)| cube.entry(i, j, k)).collect();
        Ok(Some(Transversal { cells, values }))
    } else {
        Ok(None)
    }
}

/// Phase 1: one cell per first-axis layer, all second and third coordinates
/// distinct.
struct AlignedSearch<'a, 'm> {
    cube: &'a Cube,
    n: usize,
    used_j: BitSet,
    used_k: BitSet,
    used_value: BitSet,
    picked: Vec<(usize, usize, usize)>,
    meter: &'m mut crate::budget::Meter,
}

impl AlignedSearch<'_, '_> {
    fn descend(&mut self, layer: usize) -> Result<bool, CubeError> {
        let n = self.n;
        if layer == n {
            return Ok(true);
        }
        for j in 0..n {
            if self.used_j.get(j) {
                continue;
            }
            for k in 0..n {
                if self.used_k.get(k) {
                    continue;
                }
                if !self.meter.tick() {
                    return Err(CubeError::BudgetExceeded {
                        nodes: self.meter.used(),
                    });
                }
                let value = self.cube.entry(layer, j, k) as usize;
                if self.used_value.get(value) {
                    continue;
                }
                self.used_j.set(j);
                self.used_k.set(k);
                self.used_value.set(value);
                self.picked.push((layer, j, k));
                if self.descend(layer + 1)? {
                    return Ok(true);
                }
                self.picked.pop();
                self.used_j.clear(j);
                self.used_k.clear(k);
                self.used_value.clear(value);
            }
        }
        Ok(false)
    }
}

/// Phase 2: cells in flat lexicographic order; a candidate is admissible iff
/// its `(i,j)`, `(i,k)` and `(j,k)` pairs are all unused, so two chosen cells
/// never agree in two coordinates but may share one.
struct GeneralSearch<'a, 'm> {
    cube: &'a Cube,
    n: usize,
    used_ij: BitSet,
    used_ik: BitSet,
    used_jk: BitSet,
    used_value: BitSet,
    picked: Vec<(usize, usize, usize)>,
    meter: &'m mut crate::budget::Meter,
}

impl GeneralSearch<'_, '_> {
    fn descend(&mut self, start: usize) -> Result<bool, CubeError> {
        let n = self.n;
        if self.picked.len() == n {
            return Ok(true);
        }
        let total = n * n * n;
        let remaining_needed = n - self.picked.len();
        // Flat indices increase along the chosen list, so the first success
        // is the lexicographically first transversal.
        for flat in start..total {
            if total - flat < remaining_needed {
                break;
            }
            if !self.meter.tick() {
                return Err(CubeError::BudgetExceeded {
                    nodes: self.meter.used(),
                });
            }
            let k = flat % n;
            let j = (flat / n) % n;
            let i = flat / (n * n);
            if self.used_ij.get(i * n + j)
                || self.used_ik.get(i * n + k)
                || self.used_jk.get(j * n + k)
            {
                continue;
            }
            let value = self.cube.entry(i, j, k) as usize;
            if self.used_value.get(value) {
                continue;
            }
            self.used_ij.set(i * n + j);
            self.used_ik.set(i * n + k);
            self.used_jk.set(j * n + k);
            self.used_value.set(value);
            self.picked.push((i, j, k));
            if self.descend(flat + 1)? {
                return Ok(true);
            }
            self.picked.pop();
            self.used_ij.clear(i * n + j);
            self.used_ik.clear(i * n + k);
            self.used_jk.clear(j * n + k);
            self.used_value.clear(value);
        }
        Ok(false)
    }
}

/// A seeded isotopy of the Cayley cube: random bijections on the three axes
/// and on the symbol alphabet. Isotopy preserves the Latin property, so the
/// output is always Latin — but this is a documented NON-uniform sampler of
/// Latin cubes, useful for probing, not for statistics over all cubes.
pub fn perturbed_latin_cube(n: usize, seed: u64) -> Cube {
    assert!(n >= 1, "side must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perms: Vec<Vec<usize>> = Vec::with_capacity(4);
    for _ in 0..4 {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut rng);
        perms.push(p);
    }
    let (px, py, pz, ps) = (&perms[0], &perms[1], &perms[2], &perms[3]);
    let mut entries = Vec::with_capacity(n * n * n);
    for &x in px.iter() {
        for &y in py.iter() {
            for &z in pz.iter() {
                entries.push(ps[(x + y + z) % n] as u32);
            }
        }
    }
    let cube = Cube::from_entries(n, entries).expect("shape is correct by construction");
    debug_assert!(cube.is_latin());
    cube
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cayley_basics() {
        let c1 = Cube::cayley(1);
        assert_eq!(c1.entry(0, 0, 0), 0);
        assert!(c1.is_latin());

        let c2 = Cube::cayley(2);
        assert_eq!(c2.entry(1, 1, 1), 1);
        assert_eq!(c2.entry(0, 1, 1), 0);
        assert!(c2.is_latin());

        let c3 = Cube::cayley(3);
        assert!(c3.is_latin());
        // Spot-check a line: fixing (i, j) = (1, 2), the k-line is a
        // bijection onto {0, 1, 2}.
        let mut line: Vec<u32> = (0..3).map(|k| c3.entry(1, 2, k)).collect();
        line.sort_unstable();
        assert_eq!(line, vec![0, 1, 2]);
    }

    #[test]
    fn subcube_extraction() {
        let c = Cube::cayley(4);
        let full = c.subcube(&[0, 1, 2, 3], &[0, 1, 2, 3], &[0, 1, 2, 3]).unwrap();
        assert_eq!(full, c);

        let s = c.subcube(&[0, 1], &[0, 1], &[0, 1]).unwrap();
        assert_eq!(s.entry(0, 0, 0), 0);
        assert_eq!(s.entry(1, 1, 1), 3);
        assert!(s.is_latin());

        let single = c.subcube(&[2], &[3], &[1]).unwrap();
        assert_eq!(single.entry(0, 0, 0), (2 + 3 + 1) % 4);

        assert!(c.subcube(&[0, 1], &[0], &[0, 1]).is_err());
        assert!(c.subcube(&[1, 0], &[0, 1], &[0, 1]).is_err());
        assert!(c.subcube(&[0, 4], &[0, 1], &[0, 1]).is_err());
    }

    #[test]
    fn transversal_of_cayley_two() {
        let c = Cube::cayley(2);
        let t = find_latin_transversal(&c, &Budget::unlimited())
            .unwrap()
            .expect("guaranteed for Cayley cubes");
        assert_eq!(t.cells, vec![(0, 0, 0), (1, 1, 1)]);
        assert_eq!(t.values, vec![0, 1]);
        assert!(verify_transversal(&t, &c).unwrap().is_latin_transversal());
    }

    #[test]
    fn transversal_of_z4_subcube() {
        let c = Cube::cayley(4).subcube(&[0, 1], &[0, 1], &[0, 1]).unwrap();
        let t = find_latin_transversal(&c, &Budget::unlimited())
            .unwrap()
            .expect("guaranteed for Cayley subcubes");
        assert_eq!(t.cells, vec![(0, 0, 0), (1, 1, 1)]);
        assert_eq!(t.values, vec![0, 3]);
    }

    #[test]
    fn transversal_of_trivial_cube() {
        let c = Cube::cayley(1);
        let t = find_latin_transversal(&c, &Budget::unlimited())
            .unwrap()
            .unwrap();
        assert_eq!(t.cells, vec![(0, 0, 0)]);
    }

    #[test]
    fn search_considers_shared_single_coordinates() {
        // Every permutation-aligned pair repeats a value, so the aligned
        // phase fails; the only Latin transversals here share one coordinate
        // between their two cells, and the full-space phase must find them.
        let entries = vec![
            0, 1, //  (0,0,0) (0,0,1)
            2, 3, //  (0,1,0) (0,1,1)
            3, 2, //  (1,0,0) (1,0,1)
            1, 0, //  (1,1,0) (1,1,1)
        ];
        let c = Cube::from_entries(2, entries).unwrap();
        let t = find_latin_transversal(&c, &Budget::unlimited())
            .unwrap()
            .expect("a coordinate-sharing Latin transversal exists");
        assert_eq!(t.cells, vec![(0, 0, 0), (0, 1, 1)]);
        assert_eq!(t.values, vec![0, 3]);
        assert!(verify_transversal(&t, &c).unwrap().is_latin_transversal());
    }

    #[test]
    fn verifier_distinguishes_conditions() {
        let c = Cube::cayley(2);
        // Shares two coordinates: not a transversal.
        let bad_cells = Transversal {
            cells: vec![(0, 0, 0), (0, 0, 1)],
            values: vec![],
        };
        let check = verify_transversal(&bad_cells, &c).unwrap();
        assert!(!check.cells_disjoint);

        // Proper transversal with repeated values: transversal yes, Latin no.
        let dup_values = Transversal {
            cells: vec![(0, 0, 1), (1, 0, 0)],
            values: vec![],
        };
        let check = verify_transversal(&dup_values, &c).unwrap();
        assert!(check.cells_disjoint);
        assert!(!check.values_distinct);
        assert!(!check.is_latin_transversal());

        // Out-of-range cell is an error, not a false.
        let oob = Transversal {
            cells: vec![(0, 0, 0), (2, 1, 1)],
            values: vec![],
        };
        assert!(matches!(
            verify_transversal(&oob, &c),
            Err(CubeError::CellOutOfRange { .. })
        ));
    }

    #[test]
    fn verifier_rejects_single_cell_mutations() {
        let c = Cube::cayley(3);
        let t = find_latin_transversal(&c, &Budget::unlimited())
            .unwrap()
            .unwrap();
        for idx in 0..t.cells.len() {
            for axis in 0..3 {
                let mut mutated = t.clone();
                let cell = &mut mutated.cells[idx];
                let coord = match axis {
                    0 => &mut cell.0,
                    1 => &mut cell.1,
                    _ => &mut cell.2,
                };
                *coord = (*coord + 1) % 3;
                let check = verify_transversal(&mutated, &c).unwrap();
                assert!(
                    !check.is_latin_transversal(),
                    "mutation {idx}/{axis} should break the transversal"
                );
            }
        }
    }

    #[test]
    fn perturbed_cube_is_reproducible_and_latin() {
        for n in 1..=5 {
            let a = perturbed_latin_cube(n, 42);
            let b = perturbed_latin_cube(n, 42);
            assert_eq!(a, b, "same seed must reproduce byte-for-byte");
            assert!(a.is_latin());
            let other = perturbed_latin_cube(n, 43);
            if n > 2 {
                assert_ne!(a, other, "different seeds should usually differ at n={n}");
            }
        }
    }

    #[test]
    fn budget_exhaustion_reported() {
        let c = Cube::cayley(4);
        assert!(matches!(
            find_latin_transversal(&c, &Budget::limited(2)),
            Err(CubeError::BudgetExceeded { .. })
        ));
    }
}
