//! The geometric symmetry group of the grid.
//!
//! Every symmetry has a unique normal form `(rows, cols, transposed)`: a
//! band permutation of the rows, a band permutation of the columns, and an
//! optional transpose. Row and column permutations commute, so any word in
//! the generators collapses to this form. As a map on cell positions:
//!
//! ```text
//! transposed = false:  (i, j) ↦ (rows(i), cols(j))
//! transposed = true:   (i, j) ↦ (rows(j), cols(i))
//! ```
//!
//! Composition is ordinary function composition, rightmost factor first.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::perm::{BandPermutation, BoxSize};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridSymmetry {
    rows: BandPermutation,
    cols: BandPermutation,
    transposed: bool,
}

impl GridSymmetry {
    pub fn new(rows: BandPermutation, cols: BandPermutation, transposed: bool) -> Result<Self> {
        rows.size().ensure_same(cols.size())?;
        Ok(GridSymmetry {
            rows,
            cols,
            transposed,
        })
    }

    /// `E`.
    pub fn identity(size: BoxSize) -> Self {
        let e = BandPermutation::identity(size);
        GridSymmetry {
            rows: e,
            cols: e,
            transposed: false,
        }
    }

    /// Matrix transposition `d`.
    pub fn transpose(size: BoxSize) -> Self {
        GridSymmetry {
            transposed: true,
            ..Self::identity(size)
        }
    }

    /// The row action `r`.
    pub fn row_permutation(rows: BandPermutation) -> Self {
        GridSymmetry {
            rows,
            cols: BandPermutation::identity(rows.size()),
            transposed: false,
        }
    }

    /// The column action `d r d`.
    pub fn column_permutation(cols: BandPermutation) -> Self {
        GridSymmetry {
            rows: BandPermutation::identity(cols.size()),
            cols,
            transposed: false,
        }
    }

    #[inline]
    pub fn rows(&self) -> &BandPermutation {
        &self.rows
    }

    #[inline]
    pub fn cols(&self) -> &BandPermutation {
        &self.cols
    }

    #[inline]
    pub fn is_transposed(&self) -> bool {
        self.transposed
    }

    #[inline]
    pub fn size(&self) -> BoxSize {
        self.rows.size()
    }

    pub fn is_identity(&self) -> bool {
        !self.transposed && self.rows.is_identity() && self.cols.is_identity()
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.size().ensure_same(other.size())?;
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        let (x, y) = if self.transposed {
            (&other.cols, &other.rows)
        } else {
            (&other.rows, &other.cols)
        };
        GridSymmetry {
            rows: self.rows.compose_unchecked(x),
            cols: self.cols.compose_unchecked(y),
            transposed: self.transposed ^ other.transposed,
        }
    }

    pub fn inverse(&self) -> Self {
        if self.transposed {
            GridSymmetry {
                rows: self.cols.inverse(),
                cols: self.rows.inverse(),
                transposed: true,
            }
        } else {
            GridSymmetry {
                rows: self.rows.inverse(),
                cols: self.cols.inverse(),
                transposed: false,
            }
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Self::identity(self.size());
        for _ in 0..exponent {
            acc = self.compose_unchecked(&acc);
        }
        acc
    }

    pub fn order(&self) -> u32 {
        let mut acc = *self;
        let mut k = 1;
        while !acc.is_identity() {
            acc = self.compose_unchecked(&acc);
            k += 1;
        }
        k
    }

    pub fn classify(&self) -> SymmetryClass {
        SymmetryClass::from_pattern(
            !self.rows.is_identity(),
            !self.cols.is_identity(),
            self.transposed,
        )
    }

    /// Where the content of cell `(i, j)` (1-based) ends up.
    #[inline]
    pub fn map_cell(&self, i: usize, j: usize) -> (usize, usize) {
        if self.transposed {
            (self.rows.image(j), self.cols.image(i))
        } else {
            (self.rows.image(i), self.cols.image(j))
        }
    }

    /// Position in [`enumerate_group`] order.
    pub fn rank(&self) -> u64 {
        let count = self.size().band_perm_count();
        (self.transposed as u64 * count + self.rows.rank() as u64) * count + self.cols.rank() as u64
    }

    pub fn from_rank(rank: u64, size: BoxSize) -> Option<Self> {
        let count = size.band_perm_count();
        if rank >= size.group_order() {
            return None;
        }
        let cols = BandPermutation::from_rank((rank % count) as usize, size)?;
        let rows = BandPermutation::from_rank((rank / count % count) as usize, size)?;
        Some(GridSymmetry {
            rows,
            cols,
            transposed: rank / (count * count) == 1,
        })
    }

    /// Uniform random element.
    pub fn random<R: Rng + ?Sized>(size: BoxSize, rng: &mut R) -> Self {
        Self::from_rank(rng.gen_range(0..size.group_order()), size).expect("rank in range")
    }

    /// One of the named geometric symmetries; only defined for 9×9 grids.
    pub fn named(name: NamedSymmetry, size: BoxSize) -> Result<Self> {
        if size != BoxSize::SUDOKU {
            return Err(Error::NamedNeedsSudoku(name.as_str()));
        }
        let r1 = BandPermutation::reversal(size);
        let e = BandPermutation::identity(size);
        let (rows, cols, transposed) = match name {
            NamedSymmetry::H => (r1, e, false),
            NamedSymmetry::H1 => (e, r1, false),
            NamedSymmetry::D => (r1, r1, true),
            NamedSymmetry::V => (e, r1, true),
            NamedSymmetry::W => (r1, e, true),
            NamedSymmetry::F => (r1, r1, false),
        };
        Ok(GridSymmetry {
            rows,
            cols,
            transposed,
        })
    }
}

impl Mul for GridSymmetry {
    type Output = GridSymmetry;

    /// `g * h = g ∘ h`. Panics on mismatched box sizes.
    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs).expect("box size mismatch")
    }
}

impl fmt::Display for GridSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} c[", self.rows)?;
        for v in self.cols.images() {
            write!(f, "{v}")?;
        }
        f.write_str("]")?;
        if self.transposed {
            f.write_str(" d")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GridSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Named reflections and rotations of the 9×9 grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedSymmetry {
    /// Reflection in the 5th row: `a_{i,j} → a_{10−i,j}`.
    H,
    /// Reflection in the 5th column: `a_{i,j} → a_{i,10−j}`.
    H1,
    /// Reflection in the anti-diagonal: `a_{i,j} → a_{10−j,10−i}`.
    D,
    /// Quarter turn clockwise: `a_{i,j} → a_{j,10−i}`.
    V,
    /// Three quarter turns clockwise, `V³`: `a_{i,j} → a_{10−j,i}`.
    W,
    /// Half turn about the centre cell: `a_{i,j} → a_{10−i,10−j}`.
    F,
}

impl NamedSymmetry {
    pub const ALL: [NamedSymmetry; 6] = [
        NamedSymmetry::H,
        NamedSymmetry::H1,
        NamedSymmetry::D,
        NamedSymmetry::V,
        NamedSymmetry::W,
        NamedSymmetry::F,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NamedSymmetry::H => "H",
            NamedSymmetry::H1 => "H1",
            NamedSymmetry::D => "D",
            NamedSymmetry::V => "V",
            NamedSymmetry::W => "W",
            NamedSymmetry::F => "F",
        }
    }
}

impl FromStr for NamedSymmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedSymmetry::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Expr {
                position: 0,
                message: format!("unknown symmetry name {s:?}"),
            })
    }
}

/// The eight-way partition of the group by which normal-form components
/// are non-trivial.
///
/// | class | rows | cols | transposed | shape       |
/// |-------|------|------|------------|-------------|
/// | A1    | E    | E    | no         | `E`         |
/// | A2    | E    | E    | yes        | `d`         |
/// | A3    | ≠E   | E    | no         | `r`         |
/// | A4    | ≠E   | E    | yes        | `r d`       |
/// | A5    | E    | ≠E   | yes        | `d r`       |
/// | A6    | E    | ≠E   | no         | `d r d`     |
/// | A7    | ≠E   | ≠E   | yes        | `r d r`     |
/// | A8    | ≠E   | ≠E   | no         | `r d r d`   |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SymmetryClass {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
}

impl SymmetryClass {
    pub const ALL: [SymmetryClass; 8] = [
        SymmetryClass::A1,
        SymmetryClass::A2,
        SymmetryClass::A3,
        SymmetryClass::A4,
        SymmetryClass::A5,
        SymmetryClass::A6,
        SymmetryClass::A7,
        SymmetryClass::A8,
    ];

    pub fn from_pattern(rows_moved: bool, cols_moved: bool, transposed: bool) -> Self {
        use SymmetryClass::*;
        match (rows_moved, cols_moved, transposed) {
            (false, false, false) => A1,
            (false, false, true) => A2,
            (true, false, false) => A3,
            (true, false, true) => A4,
            (false, true, true) => A5,
            (false, true, false) => A6,
            (true, true, true) => A7,
            (true, true, false) => A8,
        }
    }

    /// `(rows ≠ E, cols ≠ E, transposed)`.
    pub fn pattern(self) -> (bool, bool, bool) {
        use SymmetryClass::*;
        match self {
            A1 => (false, false, false),
            A2 => (false, false, true),
            A3 => (true, false, false),
            A4 => (true, false, true),
            A5 => (false, true, true),
            A6 => (false, true, false),
            A7 => (true, true, true),
            A8 => (true, true, false),
        }
    }

    /// 1..=8.
    pub fn index(self) -> u8 {
        self as u8 + 1
    }

    /// Number of elements in the class: 1, `n`, or `n²` with `n` the number
    /// of non-identity band permutations.
    pub fn cardinality(self, size: BoxSize) -> u64 {
        let n = size.band_perm_count() - 1;
        let (r, c, _) = self.pattern();
        match (r, c) {
            (false, false) => 1,
            (true, true) => n * n,
            _ => n,
        }
    }

    pub fn as_str(self) -> &'static str {
        ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"][self as usize]
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Every element of the group exactly once, in rank order.
pub fn enumerate_group(size: BoxSize) -> impl Iterator<Item = GridSymmetry> {
    let perms: Vec<BandPermutation> = BandPermutation::enumerate(size).collect();
    [false, true].into_iter().flat_map(move |transposed| {
        let perms = perms.clone();
        (0..perms.len()).flat_map(move |ri| {
            let rows = perms[ri];
            let perms = perms.clone();
            (0..perms.len()).map(move |ci| GridSymmetry {
                rows,
                cols: perms[ci],
                transposed,
            })
        })
    })
}

/// `d`, adjacent row swaps inside the first band, and adjacent band swaps.
/// For 9×9 grids: `d`, `(1 2)`, `(2 3)`, bands `1↔2`, bands `2↔3`.
pub fn standard_generators(size: BoxSize) -> Vec<GridSymmetry> {
    let b = size.block();
    let mut gens = vec![GridSymmetry::transpose(size)];
    for k in 1..b {
        let swap = BandPermutation::swap_rows(size, k, k + 1).expect("rows in range");
        gens.push(GridSymmetry::row_permutation(swap));
    }
    for k in 1..b {
        let swap = BandPermutation::swap_bands(size, k, k + 1).expect("bands in range");
        gens.push(GridSymmetry::row_permutation(swap));
    }
    gens
}

/// Size of the subgroup generated by `generators`, by breadth-first search
/// over right multiplication by generators.
pub fn bfs_closure(generators: &[GridSymmetry]) -> Result<u64> {
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    let size = first.size();
    for g in generators {
        size.ensure_same(g.size())?;
    }
    let order = size.group_order() as usize;
    let mut seen = vec![0u64; order.div_ceil(64)];
    let mut mark = |rank: u64| {
        let (word, bit) = ((rank / 64) as usize, rank % 64);
        let fresh = seen[word] & (1 << bit) == 0;
        seen[word] |= 1 << bit;
        fresh
    };
    let identity = GridSymmetry::identity(size);
    mark(identity.rank());
    let mut frontier = vec![identity];
    let mut count = 1u64;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for s in generators {
                let h = g.compose_unchecked(s);
                if mark(h.rank()) {
                    count += 1;
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    Ok(count)
}

/// Checks that every row permutation commutes with every column permutation
/// on normal forms. Returns the number of pairs checked.
pub fn verify_prop1(size: BoxSize, workers: usize) -> Result<u64> {
    let perms: Vec<BandPermutation> = BandPermutation::enumerate(size).collect();
    let failures = par::map_ranges(perms.len(), workers, |range| {
        for lambda in &perms[range] {
            let row = GridSymmetry::row_permutation(*lambda);
            for mu in &perms {
                let col = GridSymmetry::column_permutation(*mu);
                if row.compose_unchecked(&col) != col.compose_unchecked(&row) {
                    return Some((*lambda, *mu));
                }
            }
        }
        None
    });
    if let Some((lambda, mu)) = failures.into_iter().flatten().next() {
        return Err(Error::Prop1Violation {
            row: lambda.to_string(),
            col: mu.to_string(),
        });
    }
    Ok((perms.len() * perms.len()) as u64)
}

/// Traces `(i, j)` through `r_λ, d, r_μ, d` one generator at a time (and
/// through `d, r_μ, d, r_λ` for the other side) and compares both endpoints
/// with the normal-form product.
pub fn prop1_chain_agrees(
    lambda: &BandPermutation,
    mu: &BandPermutation,
    i: usize,
    j: usize,
) -> bool {
    let size = lambda.size();
    let d = GridSymmetry::transpose(size);
    let r_lambda = GridSymmetry::row_permutation(*lambda);
    let r_mu = GridSymmetry::row_permutation(*mu);
    let trace = |steps: &[&GridSymmetry]| {
        steps
            .iter()
            .fold((i, j), |(a, b), step| step.map_cell(a, b))
    };
    let left = trace(&[&r_lambda, &d, &r_mu, &d]);
    let right = trace(&[&d, &r_mu, &d, &r_lambda]);
    let product = r_lambda.compose_unchecked(&GridSymmetry::column_permutation(*mu));
    left == right && left == product.map_cell(i, j) && left == (lambda.image(i), mu.image(j))
}

/// Sampled coordinate-chain checks for [`prop1_chain_agrees`] over every cell.
pub fn verify_prop1_chains(size: BoxSize, samples: usize, seed: u64) -> Result<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = size.band_perm_count() as usize;
    let n = size.side();
    for _ in 0..samples {
        let lambda = BandPermutation::from_rank(rng.gen_range(0..count), size).expect("rank");
        let mu = BandPermutation::from_rank(rng.gen_range(0..count), size).expect("rank");
        for i in 1..=n {
            for j in 1..=n {
                if !prop1_chain_agrees(&lambda, &mu, i, j) {
                    return Err(Error::Prop1Violation {
                        row: lambda.to_string(),
                        col: mu.to_string(),
                    });
                }
            }
        }
    }
    Ok(samples as u64)
}

pub type ProductTable = BTreeMap<(SymmetryClass, SymmetryClass), BTreeSet<SymmetryClass>>;

/// Classes reachable as `g·h` with `g ∈ left`, `h ∈ right`, derived from the
/// composition law alone.
///
/// A composed component is `E` when both factors are `E`, is `≠E` when
/// exactly one is, and can be either when both are non-identity. Row and
/// column components are independent.
pub fn class_product(left: SymmetryClass, right: SymmetryClass) -> BTreeSet<SymmetryClass> {
    let (r1, c1, t1) = left.pattern();
    let (r2, c2, t2) = right.pattern();
    let (x, y) = if t1 { (c2, r2) } else { (r2, c2) };
    let outcomes = |a: bool, b: bool| -> &'static [bool] {
        match (a, b) {
            (false, false) => &[false],
            (true, true) => &[false, true],
            _ => &[true],
        }
    };
    let mut out = BTreeSet::new();
    for &row in outcomes(r1, x) {
        for &col in outcomes(c1, y) {
            out.insert(SymmetryClass::from_pattern(row, col, t1 ^ t2));
        }
    }
    out
}

pub fn class_product_table() -> ProductTable {
    let mut table = ProductTable::new();
    for left in SymmetryClass::ALL {
        for right in SymmetryClass::ALL {
            table.insert((left, right), class_product(left, right));
        }
    }
    table
}

/// Draws a random member of `class`.
///
/// Non-identity components come from a mixture: three quarters of the time
/// from a small pool closed under inverses, otherwise uniformly. The pool
/// makes identity-collapsing products (`p · p⁻¹`) frequent enough to be
/// witnessed by sampling, which uniform draws at 1/1295 would not.
pub fn sample_class_member<R: Rng + ?Sized>(
    class: SymmetryClass,
    size: BoxSize,
    rng: &mut R,
) -> GridSymmetry {
    let count = size.band_perm_count() as usize;
    let n = size.side();
    let shift: Vec<usize> = (0..n).map(|i| (i + size.block()) % n + 1).collect();
    let cycle = BandPermutation::from_images(&shift, size).expect("band shift");
    let pool = [BandPermutation::reversal(size), cycle, cycle.inverse()];
    let mut component = |moved: bool| {
        if !moved {
            BandPermutation::identity(size)
        } else if rng.gen_range(0..4) < 3 {
            pool[rng.gen_range(0..pool.len())]
        } else {
            BandPermutation::from_rank(rng.gen_range(1..count), size).expect("rank")
        }
    };
    let (r, c, transposed) = class.pattern();
    let rows = component(r);
    let cols = component(c);
    GridSymmetry {
        rows,
        cols,
        transposed,
    }
}

/// Result of checking [`class_product_table`] against sampled products.
#[derive(Clone, Debug)]
pub struct ProductTableCheck {
    pub predicted: ProductTable,
    pub observed: ProductTable,
    pub samples_per_pair: usize,
    /// Observed products outside the predicted set.
    pub unexpected: Vec<(SymmetryClass, SymmetryClass, SymmetryClass)>,
    /// Predicted classes never observed.
    pub unwitnessed: Vec<(SymmetryClass, SymmetryClass, SymmetryClass)>,
}

impl ProductTableCheck {
    pub fn passed(&self) -> bool {
        self.unexpected.is_empty() && self.unwitnessed.is_empty()
    }
}

pub fn check_product_table(size: BoxSize, samples_per_pair: usize, seed: u64) -> ProductTableCheck {
    let predicted = class_product_table();
    let mut observed = ProductTable::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut unexpected = Vec::new();
    let mut unwitnessed = Vec::new();
    for (&(left, right), expected) in &predicted {
        let seen = observed.entry((left, right)).or_default();
        for _ in 0..samples_per_pair {
            let g = sample_class_member(left, size, &mut rng);
            let h = sample_class_member(right, size, &mut rng);
            let class = g.compose_unchecked(&h).classify();
            if seen.insert(class) && !expected.contains(&class) {
                unexpected.push((left, right, class));
            }
        }
        for &class in expected.difference(seen) {
            unwitnessed.push((left, right, class));
        }
    }
    ProductTableCheck {
        predicted,
        observed,
        samples_per_pair,
        unexpected,
        unwitnessed,
    }
}
