//! End-to-end audit of the group: order, class partition, commutation of row
//! and column actions, element orders, named symmetries, the class product
//! table, and compatibility with digit relabeling.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::grid::{shifted_grid, DigitPermutation, Grid};
use crate::par;
use crate::perm::{BandPermutation, BoxSize};
use crate::symmetry::{
    bfs_closure, check_product_table, enumerate_group, standard_generators, verify_prop1,
    verify_prop1_chains, GridSymmetry, NamedSymmetry, SymmetryClass,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct AuditConfig {
    pub size: BoxSize,
    pub seed: u64,
    pub workers: usize,
    pub prop1_chain_samples: usize,
    pub commutation_samples: usize,
    pub product_samples_per_pair: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            size: BoxSize::SUDOKU,
            seed: 0,
            workers: par::default_workers(),
            prop1_chain_samples: 1000,
            commutation_samples: 1000,
            product_samples_per_pair: 512,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct NotationCheck {
    pub id: &'static str,
    pub reading: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditReport {
    pub schema_version: u32,
    #[serde(rename = "box")]
    pub box_size: usize,
    pub seed: u64,
    pub group_order: u64,
    pub enumerated_order: u64,
    pub bfs_closure_order: u64,
    pub generator_set_size: usize,
    pub class_cardinalities: BTreeMap<SymmetryClass, u64>,
    pub cardinality_sum: u64,
    pub prop1_checked: u64,
    pub prop1_chain_samples: u64,
    /// Element orders of the band permutations, with multiplicities.
    pub order_spectrum: BTreeMap<u32, u64>,
    /// Element orders over the whole geometric group.
    pub group_order_spectrum: BTreeMap<u32, u64>,
    pub product_table: BTreeMap<SymmetryClass, BTreeMap<SymmetryClass, Vec<SymmetryClass>>>,
    pub product_samples_per_pair: usize,
    pub commutation_samples: usize,
    pub relabel_group_order: u64,
    pub full_group_order: u64,
    pub notation: Vec<NotationCheck>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl AuditReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// A random valid grid: the shifted fixture moved by a random symmetry and
/// relabeling, with roughly `blank_fraction` of the cells cleared.
pub fn random_valid_grid<R: Rng + ?Sized>(size: BoxSize, blank_fraction: f64, rng: &mut R) -> Grid {
    let g = GridSymmetry::random(size, rng);
    let o = DigitPermutation::random(size, rng);
    let mut grid = shifted_grid(size)
        .apply_symmetry(&g)
        .and_then(|grid| grid.apply_relabel(&o))
        .expect("same size");
    let n = size.side();
    for i in 1..=n {
        for j in 1..=n {
            if rng.gen_bool(blank_fraction) {
                grid.set(i, j, 0).expect("zero is in range");
            }
        }
    }
    grid
}

/// For every sample, relabel-then-move equals move-then-relabel.
pub fn check_relabel_commutation(size: BoxSize, samples: usize, seed: u64) -> Option<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..samples {
        let blank = if k % 2 == 0 { 0.0 } else { 0.4 };
        let grid = random_valid_grid(size, blank, &mut rng);
        let g = GridSymmetry::random(size, &mut rng);
        let o = DigitPermutation::random(size, &mut rng);
        let left = grid.apply_relabel(&o).and_then(|x| x.apply_symmetry(&g));
        let right = grid.apply_symmetry(&g).and_then(|x| x.apply_relabel(&o));
        if left != right {
            return Some(format!("sample {k}: {g} and {o} disagree on {grid}"));
        }
    }
    None
}

/// Expected image of a 1-based cell under a named symmetry.
type CellMap = fn(usize, usize) -> (usize, usize);

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        passed,
        detail: detail.into(),
    }
}

fn named_checks(size: BoxSize) -> (bool, String) {
    if size != BoxSize::SUDOKU {
        return (
            true,
            "named symmetries are defined for 9×9 only; skipped".into(),
        );
    }
    let named = |n| GridSymmetry::named(n, size).expect("9×9");
    let (h, h1, dd, v, w, f) = (
        named(NamedSymmetry::H),
        named(NamedSymmetry::H1),
        named(NamedSymmetry::D),
        named(NamedSymmetry::V),
        named(NamedSymmetry::W),
        named(NamedSymmetry::F),
    );
    let e = GridSymmetry::identity(size);
    let d = GridSymmetry::transpose(size);
    let r1 = GridSymmetry::row_permutation(BandPermutation::reversal(size));
    let mut failed = Vec::new();
    let mut expect = |ok: bool, what: &str| {
        if !ok {
            failed.push(what.to_string());
        }
    };
    expect(v.pow(4) == e, "V^4 = E");
    expect(w == v.pow(3), "W = V^3");
    expect(w.pow(2) == v.pow(2), "W^2 = V^2");
    expect(w.pow(3) == v, "W^3 = V");
    expect(f == v.pow(2), "F = V^2");
    expect(dd == r1 * d * r1, "D = r1 d r1");
    expect(h1 == d * r1 * d, "H1 = d r1 d");
    expect(h == r1, "H = r1");
    expect(v == d * r1, "V = d r1");
    let formulas: [(&GridSymmetry, &str, CellMap); 6] = [
        (&h, "H: (10-i, j)", |i, j| (10 - i, j)),
        (&h1, "H1: (i, 10-j)", |i, j| (i, 10 - j)),
        (&v, "V: (j, 10-i)", |i, j| (j, 10 - i)),
        (&v.pow(3), "V^3: (10-j, i)", |i, j| (10 - j, i)),
        (&f, "F: (10-i, 10-j)", |i, j| (10 - i, 10 - j)),
        (&dd, "D: (10-j, 10-i)", |i, j| (10 - j, 10 - i)),
    ];
    let grid = shifted_grid(size);
    for (g, what, formula) in formulas {
        let moved = grid.apply_symmetry(g).expect("9×9");
        let ok = (1..=9).all(|i| {
            (1..=9).all(|j| {
                let (ti, tj) = formula(i, j);
                g.map_cell(i, j) == (ti, tj) && moved.get(ti, tj) == grid.get(i, j)
            })
        });
        expect(ok, what);
    }
    use SymmetryClass::*;
    for (g, class, what) in [
        (&h, A3, "H in A3"),
        (&h1, A6, "H1 in A6"),
        (&dd, A7, "D in A7"),
        (&v, A5, "V in A5"),
        (&v.pow(3), A4, "V^3 in A4"),
        (&f, A8, "F in A8"),
    ] {
        expect(g.classify() == class, what);
    }
    if failed.is_empty() {
        (
            true,
            "all identities, index formulas and class memberships hold".into(),
        )
    } else {
        (false, format!("failed: {}", failed.join(", ")))
    }
}

fn notation_checks(size: BoxSize, band_spectrum: &BTreeMap<u32, u64>) -> Vec<NotationCheck> {
    let mut out = Vec::new();
    let n = size.band_perm_count() - 1;
    out.push(NotationCheck {
        id: "cardinality-sum",
        reading: "2 + 4n + 2n^2 equals the group order, n the number of non-identity band permutations (b = 3: 2 + 4(6^4 - 1) + 2(6^4 - 1)^2 = 2 * 6^8)",
        holds: 2 + 4 * n + 2 * n * n == size.group_order(),
    });
    out.push(NotationCheck {
        id: "exponent-12",
        reading:
            "r_i^12 is read as the twelfth power; every band permutation has p^9 = E or p^12 = E",
        holds: band_spectrum.keys().all(|k| 9 % k == 0 || 12 % k == 0),
    });
    if size == BoxSize::SUDOKU {
        let named = |n| GridSymmetry::named(n, size).expect("9×9");
        let d = named(NamedSymmetry::D);
        let f = named(NamedSymmetry::F);
        let r1 = GridSymmetry::row_permutation(BandPermutation::reversal(size));
        let t = GridSymmetry::transpose(size);
        out.push(NotationCheck {
            id: "anti-diagonal-formula",
            reading: "D = r1 d r1 sends a_{i,j} to a_{10-j,10-i}; a_{10-i,10-j} is F, and D != F",
            holds: (1..=9).all(|i| (1..=9).all(|j| d.map_cell(i, j) == (10 - j, 10 - i))) && d != f,
        });
        out.push(NotationCheck {
            id: "v-cubed-word",
            reading: "V^3 = r,d and W = r,d are read as r1 d",
            holds: named(NamedSymmetry::V).pow(3) == r1 * t && named(NamedSymmetry::W) == r1 * t,
        });
    }
    out
}

fn group_order_spectrum(size: BoxSize, workers: usize) -> BTreeMap<u32, u64> {
    let order = size.group_order();
    let per_worker = par::map_ranges(order as usize, workers, |range| {
        let mut local = BTreeMap::new();
        for rank in range {
            let g = GridSymmetry::from_rank(rank as u64, size).expect("rank in range");
            *local.entry(g.order()).or_insert(0u64) += 1;
        }
        local
    });
    let mut out = BTreeMap::new();
    for local in per_worker {
        for (k, v) in local {
            *out.entry(k).or_insert(0) += v;
        }
    }
    out
}

pub fn run_audit(config: &AuditConfig) -> AuditReport {
    let size = config.size;
    let mut checks = Vec::new();

    let expected_order = size.group_order();
    let mut enumerated = 0u64;
    let mut ranks_in_order = true;
    let mut cardinalities: BTreeMap<SymmetryClass, u64> =
        SymmetryClass::ALL.iter().map(|&c| (c, 0)).collect();
    for (k, g) in enumerate_group(size).enumerate() {
        ranks_in_order &= g.rank() == k as u64;
        *cardinalities
            .get_mut(&g.classify())
            .expect("all classes present") += 1;
        enumerated += 1;
    }
    let generators = standard_generators(size);
    let closure = bfs_closure(&generators).expect("non-empty generators");
    checks.push(check(
        "group_order",
        enumerated == expected_order && closure == expected_order && ranks_in_order,
        format!(
            "enumerated {enumerated} distinct normal forms, BFS closure of {} generators reached {closure}, expected 2*(b!)^(2b+2) = {expected_order}",
            generators.len()
        ),
    ));

    let cardinality_sum: u64 = cardinalities.values().sum();
    let class_ok = cardinalities
        .iter()
        .all(|(class, &count)| count == class.cardinality(size))
        && cardinality_sum == expected_order;
    checks.push(check(
        "class_partition",
        class_ok,
        format!("sum of class sizes {cardinality_sum}"),
    ));

    let prop1 = verify_prop1(size, config.workers);
    checks.push(check(
        "prop1_exhaustive",
        prop1.is_ok(),
        match &prop1 {
            Ok(n) => format!("{n} row/column pairs commute"),
            Err(e) => e.to_string(),
        },
    ));
    let chains = verify_prop1_chains(size, config.prop1_chain_samples, config.seed);
    checks.push(check(
        "prop1_cell_chains",
        chains.is_ok(),
        match &chains {
            Ok(n) => format!("{n} sampled pairs traced cell by cell"),
            Err(e) => e.to_string(),
        },
    ));

    let mut order_spectrum = BTreeMap::new();
    let mut powers_ok = true;
    for p in BandPermutation::enumerate(size) {
        *order_spectrum.entry(p.order()).or_insert(0u64) += 1;
        if size == BoxSize::SUDOKU {
            powers_ok &= p.pow(9).is_identity() || p.pow(12).is_identity();
        }
    }
    checks.push(check(
        "band_orders",
        powers_ok,
        format!(
            "orders observed: {:?}",
            order_spectrum.keys().collect::<Vec<_>>()
        ),
    ));

    let group_spectrum = group_order_spectrum(size, config.workers);
    let lcm = group_spectrum
        .keys()
        .fold(1u64, |acc, &k| lcm(acc, k as u64));
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(1));
    let exponent_ok = (0..200).all(|_| {
        GridSymmetry::random(size, &mut rng)
            .pow(lcm as u32)
            .is_identity()
    });
    checks.push(check(
        "group_orders",
        exponent_ok && group_spectrum.values().sum::<u64>() == expected_order,
        format!("group exponent {lcm}"),
    ));

    let (named_ok, named_detail) = named_checks(size);
    checks.push(check("named_symmetries", named_ok, named_detail));

    let commutation = check_relabel_commutation(
        size,
        config.commutation_samples,
        config.seed.wrapping_add(2),
    );
    checks.push(check(
        "relabel_commutation",
        commutation.is_none(),
        commutation.unwrap_or_else(|| format!("{} samples commute", config.commutation_samples)),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(3));
    let validity_ok = (0..config.commutation_samples).all(|k| {
        let grid = random_valid_grid(size, if k % 2 == 0 { 0.0 } else { 0.4 }, &mut rng);
        let g = GridSymmetry::random(size, &mut rng);
        let o = DigitPermutation::random(size, &mut rng);
        let moved = grid.apply_symmetry(&g).expect("same size");
        moved.is_valid()
            && moved.apply_relabel(&o).expect("same size").is_valid()
            && moved.cells().iter().filter(|&&v| v == 0).count()
                == grid.cells().iter().filter(|&&v| v == 0).count()
    });
    checks.push(check(
        "validity_preserved",
        validity_ok,
        format!(
            "{} sampled (symmetry, relabel, grid) triples",
            config.commutation_samples
        ),
    ));

    let table = check_product_table(
        size,
        config.product_samples_per_pair,
        config.seed.wrapping_add(4),
    );
    let mut product_table: BTreeMap<SymmetryClass, BTreeMap<SymmetryClass, Vec<SymmetryClass>>> =
        BTreeMap::new();
    for (&(left, right), classes) in &table.predicted {
        product_table
            .entry(left)
            .or_default()
            .insert(right, classes.iter().copied().collect());
    }
    checks.push(check(
        "product_table",
        table.passed(),
        format!(
            "{} unexpected, {} unwitnessed over {} samples per pair",
            table.unexpected.len(),
            table.unwitnessed.len(),
            table.samples_per_pair
        ),
    ));

    let full = size.full_group_order();
    checks.push(check(
        "full_group_order",
        full == expected_order * size.relabel_group_order(),
        format!("{expected_order} * {} = {full}", size.relabel_group_order()),
    ));

    let notation = notation_checks(size, &order_spectrum);
    checks.push(check(
        "notation",
        notation.iter().all(|n| n.holds),
        format!("{} readings checked", notation.len()),
    ));

    let passed = checks.iter().all(|c| c.passed);
    AuditReport {
        schema_version: SCHEMA_VERSION,
        box_size: size.block(),
        seed: config.seed,
        group_order: expected_order,
        enumerated_order: enumerated,
        bfs_closure_order: closure,
        generator_set_size: generators.len(),
        class_cardinalities: cardinalities,
        cardinality_sum,
        prop1_checked: prop1.unwrap_or(0),
        prop1_chain_samples: chains.unwrap_or(0),
        order_spectrum,
        group_order_spectrum: group_spectrum,
        product_table,
        product_samples_per_pair: config.product_samples_per_pair,
        commutation_samples: config.commutation_samples,
        relabel_group_order: size.relabel_group_order(),
        full_group_order: full,
        notation,
        checks,
        passed,
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
