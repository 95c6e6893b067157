//! Canonical forms, equivalence and stabilizers.
//!
//! The canonical grid of an orbit is the one whose row-major line
//! serialization is lexicographically least. Digits compare as numbers with
//! the empty cell lowest, which matches the order of the characters `.`,
//! `1`, …, `9`.
//!
//! With relabeling enabled, each transformed grid is first relabeled so that
//! digits appear as `1, 2, 3, …` in row-major order of first occurrence.
//! That relabeling is the least over all digit permutations of a fixed grid,
//! so minimizing it over the geometric group gives the minimum over the
//! whole product group without enumerating `N!` relabelings.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{DigitPermutation, Grid};
use crate::par;
use crate::perm::{BandPermutation, BoxSize, MAX_SIDE};
use crate::symmetry::GridSymmetry;

const MAX_CELLS: usize = MAX_SIDE * MAX_SIDE;

/// Which group the orbit is taken over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Geometric symmetries only.
    Geometry,
    /// Geometric symmetries combined with digit relabeling.
    #[default]
    GeometryAndRelabel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub grid: Grid,
    /// `grid == input.apply_symmetry(symmetry).apply_relabel(relabel)`; the
    /// earliest symmetry in enumeration order that achieves the minimum.
    pub symmetry: GridSymmetry,
    pub relabel: DigitPermutation,
}

/// Relabels digits to `1, 2, 3, …` in order of first appearance. Digits that
/// never appear take the remaining labels in increasing order.
pub fn first_occurrence_relabel(grid: &Grid) -> (Grid, DigitPermutation) {
    let size = grid.size();
    let n = size.side();
    let mut images = [0u8; MAX_SIDE + 1];
    let mut next = 1u8;
    for &v in grid.cells() {
        if v != 0 && images[v as usize] == 0 {
            images[v as usize] = next;
            next += 1;
        }
    }
    for slot in images.iter_mut().take(n + 1).skip(1) {
        if *slot == 0 {
            *slot = next;
            next += 1;
        }
    }
    let relabel = DigitPermutation::from_raw(size, images);
    let out = grid.apply_relabel(&relabel).expect("same size");
    (out, relabel)
}

/// Precomputed inverse permutations, as source offsets for the scan.
struct Tables {
    n: usize,
    count: usize,
    /// `inv[p][k]` for every band permutation `p`.
    inv: Vec<[usize; MAX_SIDE]>,
}

impl Tables {
    fn new(size: BoxSize) -> Self {
        let n = size.side();
        let inv: Vec<[usize; MAX_SIDE]> = BandPermutation::enumerate(size)
            .map(|p| {
                let inv = p.inverse();
                let mut out = [0usize; MAX_SIDE];
                for (k, slot) in out.iter_mut().enumerate().take(n) {
                    *slot = inv.raw()[k] as usize;
                }
                out
            })
            .collect();
        Tables {
            n,
            count: inv.len(),
            inv,
        }
    }

    fn units(&self) -> usize {
        2 * self.count
    }

    /// Calls `f(rank, row_offsets, col_offsets)` for every symmetry in the
    /// given units, where the image cell `(i, j)` reads source cell
    /// `row_offsets[i] + col_offsets[j]`.
    fn for_each<F>(&self, units: std::ops::Range<usize>, mut f: F)
    where
        F: FnMut(u64, &[usize; MAX_SIDE], &[usize; MAX_SIDE]),
    {
        let n = self.n;
        for unit in units {
            let transposed = unit >= self.count;
            let ri = unit % self.count;
            let mut rows = self.inv[ri];
            if !transposed {
                rows.iter_mut().for_each(|v| *v *= n);
            }
            for ci in 0..self.count {
                let mut cols = self.inv[ci];
                if transposed {
                    cols.iter_mut().for_each(|v| *v *= n);
                }
                let rank = (unit * self.count + ci) as u64;
                f(rank, &rows, &cols);
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Cmp {
    Less,
    Equal,
}

/// Writes the (optionally relabeled) image into `out` while comparing it
/// with `against`. Returns `None` as soon as the image is known to be
/// greater, otherwise whether it is less or equal.
#[inline]
fn image_against(
    cells: &[u8],
    n: usize,
    rows: &[usize; MAX_SIDE],
    cols: &[usize; MAX_SIDE],
    relabel: bool,
    against: &[u8; MAX_CELLS],
    out: &mut [u8; MAX_CELLS],
) -> Option<Cmp> {
    let mut map = [0u8; MAX_SIDE + 1];
    let mut next = 1u8;
    let mut cmp = Cmp::Equal;
    for (i, &base) in rows[..n].iter().enumerate() {
        for j in 0..n {
            let v = cells[base + cols[j]];
            let w = if relabel && v != 0 {
                let slot = &mut map[v as usize];
                if *slot == 0 {
                    *slot = next;
                    next += 1;
                }
                *slot
            } else {
                v
            };
            let k = i * n + j;
            if cmp == Cmp::Equal {
                if w > against[k] {
                    return None;
                }
                if w < against[k] {
                    cmp = Cmp::Less;
                }
            }
            out[k] = w;
        }
    }
    Some(cmp)
}

fn scan_minimum(
    tables: &Tables,
    cells: &[u8],
    relabel: bool,
    units: std::ops::Range<usize>,
) -> Option<([u8; MAX_CELLS], u64)> {
    let n = tables.n;
    let mut best = [u8::MAX; MAX_CELLS];
    let mut best_rank = None;
    let mut scratch = [0u8; MAX_CELLS];
    tables.for_each(units, |rank, rows, cols| {
        if image_against(cells, n, rows, cols, relabel, &best, &mut scratch) == Some(Cmp::Less) {
            best[..n * n].copy_from_slice(&scratch[..n * n]);
            best_rank = Some(rank);
        }
    });
    best_rank.map(|rank| (best, rank))
}

/// Canonical form of `grid` over the chosen group, scanning the geometric
/// symmetries on `workers` threads. The result is independent of `workers`.
pub fn canonicalize(grid: &Grid, mode: Mode, workers: usize) -> Result<CanonicalForm> {
    if !grid.is_valid() {
        return Err(Error::InvalidGrid);
    }
    let size = grid.size();
    let tables = Tables::new(size);
    let relabel = mode == Mode::GeometryAndRelabel;
    let locals = par::map_ranges(tables.units(), workers, |units| {
        scan_minimum(&tables, grid.cells(), relabel, units)
    });
    let cells_len = size.cells();
    // Ranges come back in rank order and each local minimum is the earliest
    // in its range, so the strict `<` keeps the earliest global minimum.
    let (_, rank) = locals
        .into_iter()
        .flatten()
        .reduce(|a, b| {
            if b.0[..cells_len] < a.0[..cells_len] {
                b
            } else {
                a
            }
        })
        .expect("group is non-empty");
    let symmetry = GridSymmetry::from_rank(rank, size).expect("rank in range");
    let moved = grid.apply_symmetry(&symmetry)?;
    let (canonical, relabel) = match mode {
        Mode::Geometry => (moved, DigitPermutation::identity(size)),
        Mode::GeometryAndRelabel => first_occurrence_relabel(&moved),
    };
    Ok(CanonicalForm {
        grid: canonical,
        symmetry,
        relabel,
    })
}

pub fn are_equivalent(a: &Grid, b: &Grid, mode: Mode, workers: usize) -> Result<bool> {
    a.size().ensure_same(b.size())?;
    let ca = canonicalize(a, mode, workers)?;
    let cb = canonicalize(b, mode, workers)?;
    Ok(ca.grid == cb.grid)
}

/// Automorphisms of a complete grid up to relabeling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StabilizerReport {
    /// Geometric symmetries that map the grid to a relabeling of itself.
    /// For a complete grid each one has exactly one witnessing relabel.
    pub stabilizer_size: u64,
    /// Number of distinct grids in the orbit under geometry and relabeling.
    pub orbit_size: u64,
    /// Order of the combined group, `stabilizer_size · orbit_size`.
    pub group_order: u64,
}

pub fn stabilizer(grid: &Grid, workers: usize) -> Result<StabilizerReport> {
    if !grid.is_valid() {
        return Err(Error::InvalidGrid);
    }
    if !grid.is_complete() {
        return Err(Error::IncompleteGrid);
    }
    let size = grid.size();
    let tables = Tables::new(size);
    let (pattern, _) = first_occurrence_relabel(grid);
    let mut target = [0u8; MAX_CELLS];
    target[..size.cells()].copy_from_slice(pattern.cells());
    let n = tables.n;
    let counts = par::map_ranges(tables.units(), workers, |units| {
        let mut scratch = [0u8; MAX_CELLS];
        let mut hits = 0u64;
        tables.for_each(units, |_, rows, cols| {
            if image_against(grid.cells(), n, rows, cols, true, &target, &mut scratch)
                == Some(Cmp::Equal)
            {
                hits += 1;
            }
        });
        hits
    });
    let stabilizer_size: u64 = counts.into_iter().sum();
    let group_order = size.full_group_order();
    Ok(StabilizerReport {
        stabilizer_size,
        orbit_size: group_order / stabilizer_size,
        group_order,
    })
}
