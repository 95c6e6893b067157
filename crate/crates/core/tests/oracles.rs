//! Brute-force oracles, independent of the library's enumeration and
//! canonicalization code paths.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use sudoku_symmetry::census::{enumerate_complete_grids, orbit, shidoku_census};
use sudoku_symmetry::{BandPermutation, BoxSize, Grid, Mode};

/// All permutations of `0..n` by Heap's algorithm.
fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    let mut out = vec![a.clone()];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Order as the lcm of cycle lengths.
fn cycle_order(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut order = 1;
    for start in 0..p.len() {
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = p[k];
            len += 1;
        }
        if len > 0 {
            order = order / gcd(order, len) * len;
        }
    }
    order
}

fn band_structured(p: &[usize], b: usize) -> bool {
    p.chunks(b)
        .all(|chunk| chunk.iter().all(|&v| v / b == chunk[0] / b))
}

#[test]
fn band_perms_match_filtered_symmetric_group() {
    for (size, expected) in [(BoxSize::SHIDOKU, 8usize), (BoxSize::SUDOKU, 1296)] {
        let b = size.block();
        let oracle: BTreeMap<Vec<usize>, usize> = all_permutations(size.side())
            .into_iter()
            .filter(|p| band_structured(p, b))
            .map(|p| {
                let order = cycle_order(&p);
                (p.iter().map(|v| v + 1).collect(), order)
            })
            .collect();
        assert_eq!(oracle.len(), expected);
        let ours: BTreeMap<Vec<usize>, usize> = BandPermutation::enumerate(size)
            .map(|p| (p.images(), p.order() as usize))
            .collect();
        assert_eq!(ours, oracle);
    }
}

#[test]
fn band_order_spectrum_from_cycle_types() {
    let mut spectrum: BTreeMap<usize, usize> = BTreeMap::new();
    for p in all_permutations(9)
        .into_iter()
        .filter(|p| band_structured(p, 3))
    {
        *spectrum.entry(cycle_order(&p)).or_default() += 1;
    }
    let keys: Vec<usize> = spectrum.keys().copied().collect();
    assert_eq!(keys, vec![1, 2, 3, 4, 6, 9, 12]);
    assert_eq!(
        spectrum,
        BTreeMap::from([
            (1, 1),
            (2, 135),
            (3, 98),
            (4, 216),
            (6, 594),
            (9, 144),
            (12, 108)
        ])
    );
}

/// Complete 4×4 grids by filtering all choices of four row permutations.
fn shidoku_by_rows() -> BTreeSet<Grid> {
    let rows: Vec<Vec<u8>> = all_permutations(4)
        .into_iter()
        .map(|p| p.into_iter().map(|v| v as u8 + 1).collect())
        .collect();
    let mut out = BTreeSet::new();
    for a in &rows {
        for b in &rows {
            for c in &rows {
                for d in &rows {
                    let grid = Grid::from_rows(
                        BoxSize::SHIDOKU,
                        &[a.clone(), b.clone(), c.clone(), d.clone()],
                    )
                    .unwrap();
                    if grid.is_complete() {
                        out.insert(grid);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn shidoku_enumeration_matches_row_filter() {
    let oracle = shidoku_by_rows();
    assert_eq!(oracle.len(), 288);
    let ours: BTreeSet<Grid> = enumerate_complete_grids(BoxSize::SHIDOKU)
        .into_iter()
        .collect();
    assert_eq!(ours, oracle);
}

#[test]
fn shidoku_census_and_orbit_membership() {
    let census = shidoku_census(2);
    assert_eq!(census.total, 288);
    assert_eq!(census.classes, 2);
    assert_eq!(census.class_sizes.iter().sum::<usize>(), 288);
    assert!(census.partitions_agree);
    assert_eq!(
        census
            .details
            .iter()
            .map(|c| c.orbit_size as usize)
            .sum::<usize>(),
        288
    );
    for class in &census.details {
        assert_eq!(class.orbit_size as usize, class.size);
        assert_eq!(class.stabilizer_size * class.orbit_size, 128 * 24);
    }

    // Canonical-form equality against direct orbit membership for pairs
    // drawn from every class.
    let grids = enumerate_complete_grids(BoxSize::SHIDOKU);
    let orbits: Vec<BTreeSet<Grid>> = census
        .details
        .iter()
        .map(|c| {
            orbit(
                &Grid::parse(&c.canonical).unwrap(),
                Mode::GeometryAndRelabel,
            )
        })
        .collect();
    for (x, a) in grids.iter().enumerate().step_by(7) {
        for b in grids.iter().skip(x % 5).step_by(11) {
            let direct = orbits.iter().any(|o| o.contains(a) && o.contains(b));
            let canon = sudoku_symmetry::are_equivalent(a, b, Mode::GeometryAndRelabel, 1).unwrap();
            assert_eq!(direct, canon, "{a} vs {b}");
        }
    }
}

#[test]
fn geometry_only_orbits_on_shidoku() {
    // Without relabeling each orbit has 128/stab elements; the canonical
    // form must agree with direct orbit expansion on every grid.
    let grids = enumerate_complete_grids(BoxSize::SHIDOKU);
    let mut classes: BTreeMap<Grid, BTreeSet<Grid>> = BTreeMap::new();
    for g in &grids {
        let canon = sudoku_symmetry::canonicalize(g, Mode::Geometry, 1)
            .unwrap()
            .grid;
        classes.entry(canon).or_default().insert(g.clone());
    }
    for (canon, members) in &classes {
        assert_eq!(&orbit(canon, Mode::Geometry), members);
    }
    assert_eq!(classes.values().map(BTreeSet::len).sum::<usize>(), 288);
}
