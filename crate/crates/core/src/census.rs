//! Exhaustive 4×4 census: every complete Shidoku grid, partitioned into
//! equivalence classes two independent ways.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::canonical::{canonicalize, stabilizer, Mode};
use crate::grid::{DigitPermutation, Grid};
use crate::perm::BoxSize;
use crate::symmetry::enumerate_group;

/// All complete grids of the given box size, in lexicographic order, by
/// cell-by-cell backtracking. Only practical for `b = 2`.
pub fn enumerate_complete_grids(size: BoxSize) -> Vec<Grid> {
    let n = size.side();
    let b = size.block();
    let mut cells = vec![0u8; n * n];
    let mut out = Vec::new();
    fn fill(k: usize, n: usize, b: usize, cells: &mut [u8], size: BoxSize, out: &mut Vec<Grid>) {
        if k == cells.len() {
            out.push(Grid::new(size, cells.to_vec()).expect("values in range"));
            return;
        }
        let (i, j) = (k / n, k % n);
        for v in 1..=n as u8 {
            let clash = (0..n).any(|t| cells[i * n + t] == v || cells[t * n + j] == v)
                || (0..b).any(|di| {
                    (0..b).any(|dj| cells[((i / b) * b + di) * n + (j / b) * b + dj] == v)
                });
            if !clash {
                cells[k] = v;
                fill(k + 1, n, b, cells, size, out);
                cells[k] = 0;
            }
        }
    }
    fill(0, n, b, &mut cells, size, &mut out);
    out
}

/// Every digit permutation of the box size, identity first.
pub fn all_relabels(size: BoxSize) -> Vec<DigitPermutation> {
    let mut images: Vec<usize> = (1..=size.side()).collect();
    let mut out = Vec::new();
    loop {
        out.push(DigitPermutation::from_images(&images, size).expect("permutation"));
        // next lexicographic permutation
        let Some(i) = (1..images.len()).rev().find(|&i| images[i - 1] < images[i]) else {
            return out;
        };
        let j = (i..images.len())
            .rev()
            .find(|&j| images[j] > images[i - 1])
            .expect("pivot");
        images.swap(i - 1, j);
        images[i..].reverse();
    }
}

/// The orbit of `grid`, by applying every group element directly.
pub fn orbit(grid: &Grid, mode: Mode) -> BTreeSet<Grid> {
    let relabels = match mode {
        Mode::Geometry => vec![DigitPermutation::identity(grid.size())],
        Mode::GeometryAndRelabel => all_relabels(grid.size()),
    };
    let mut out = BTreeSet::new();
    for g in enumerate_group(grid.size()) {
        let moved = grid.apply_symmetry(&g).expect("same size");
        for o in &relabels {
            out.insert(moved.apply_relabel(o).expect("same size"));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusClass {
    pub canonical: String,
    pub size: usize,
    pub stabilizer_size: u64,
    pub orbit_size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Census {
    pub total: usize,
    pub classes: usize,
    pub class_sizes: Vec<usize>,
    pub details: Vec<CensusClass>,
    /// Canonical-form grouping and direct orbit expansion gave the same
    /// partition.
    pub partitions_agree: bool,
}

/// Partition by canonical form: class index of every grid.
fn partition_by_canonical(grids: &[Grid], mode: Mode, workers: usize) -> (Vec<usize>, Vec<Grid>) {
    let mut reps: BTreeMap<Grid, usize> = BTreeMap::new();
    let mut canon = Vec::new();
    let labels = grids
        .iter()
        .map(|g| {
            let form = canonicalize(g, mode, workers).expect("complete grids are valid");
            let next = reps.len();
            *reps.entry(form.grid.clone()).or_insert_with(|| {
                canon.push(form.grid);
                next
            })
        })
        .collect();
    (labels, canon)
}

/// Partition by flooding orbits: class index of every grid.
fn partition_by_orbits(grids: &[Grid], mode: Mode) -> Vec<usize> {
    let index: HashMap<&Grid, usize> = grids.iter().enumerate().map(|(k, g)| (g, k)).collect();
    let mut labels = vec![usize::MAX; grids.len()];
    let mut classes = 0;
    for k in 0..grids.len() {
        if labels[k] != usize::MAX {
            continue;
        }
        for member in orbit(&grids[k], mode) {
            labels[index[&member]] = classes;
        }
        classes += 1;
    }
    labels
}

fn same_partition(a: &[usize], b: &[usize]) -> bool {
    let mut forward = HashMap::new();
    let mut backward = HashMap::new();
    a.iter()
        .zip(b)
        .all(|(&x, &y)| *forward.entry(x).or_insert(y) == y && *backward.entry(y).or_insert(x) == x)
}

/// Census of complete 4×4 grids under geometry and relabeling.
pub fn shidoku_census(workers: usize) -> Census {
    let size = BoxSize::SHIDOKU;
    let mode = Mode::GeometryAndRelabel;
    let grids = enumerate_complete_grids(size);
    let (canon_labels, canon) = partition_by_canonical(&grids, mode, workers);
    let orbit_labels = partition_by_orbits(&grids, mode);
    let partitions_agree = same_partition(&canon_labels, &orbit_labels);
    let mut details: Vec<CensusClass> = canon
        .iter()
        .enumerate()
        .map(|(class, rep)| {
            let report = stabilizer(rep, workers).expect("complete");
            CensusClass {
                canonical: rep.to_string(),
                size: canon_labels.iter().filter(|&&l| l == class).count(),
                stabilizer_size: report.stabilizer_size,
                orbit_size: report.orbit_size,
            }
        })
        .collect();
    details.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    Census {
        total: grids.len(),
        classes: details.len(),
        class_sizes: details.iter().map(|c| c.size).collect(),
        details,
        partitions_agree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabel_count() {
        let all = all_relabels(BoxSize::SHIDOKU);
        assert_eq!(all.len(), 24);
        assert!(all[0].is_identity());
        let distinct: BTreeSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 24);
    }

    #[test]
    fn grids_are_complete_and_distinct() {
        let grids = enumerate_complete_grids(BoxSize::SHIDOKU);
        assert!(grids.iter().all(Grid::is_complete));
        let distinct: BTreeSet<_> = grids.iter().collect();
        assert_eq!(distinct.len(), grids.len());
    }

    #[test]
    fn partition_comparison() {
        assert!(same_partition(&[0, 0, 1], &[5, 5, 2]));
        assert!(!same_partition(&[0, 0, 1], &[5, 2, 2]));
        assert!(!same_partition(&[0, 1, 1], &[0, 0, 1]));
    }
}
