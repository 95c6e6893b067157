//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the target
//! exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sudoku_symmetry::audit::check_relabel_commutation;
use sudoku_symmetry::census::shidoku_census;
use sudoku_symmetry::symmetry::{
    bfs_closure, check_product_table, enumerate_group, standard_generators, verify_prop1,
    verify_prop1_chains,
};
use sudoku_symmetry::{
    canonicalize, stabilizer, BandPermutation, BoxSize, DigitPermutation, GridFormat, GridSymmetry,
    Mode, NamedSymmetry, SymmetryClass,
};

const S: BoxSize = BoxSize::SUDOKU;
/// 2·6⁸
const GROUP_ORDER: u64 = 3_359_232;
/// 2·6⁸·9!
const FULL_ORDER: u64 = 3_359_232 * 362_880;
const N: u64 = 1295;

type Outcome = Result<String, String>;
type CellMap = fn(usize, usize) -> (usize, usize);
type Criterion = fn() -> Outcome;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    ensure(
        elapsed <= limit,
        format!("{what} took {elapsed:?}, limit {limit:?}"),
    )?;
    Ok(elapsed)
}

fn c1_group_order() -> Outcome {
    let start = Instant::now();
    let closure = bfs_closure(&standard_generators(S)).map_err(|e| e.to_string())?;
    let enumerated = enumerate_group(S).count() as u64;
    let elapsed = within(start, Duration::from_secs(60), "closure + enumeration")?;
    ensure(closure == GROUP_ORDER, format!("BFS closure {closure}"))?;
    ensure(
        enumerated == GROUP_ORDER,
        format!("enumeration {enumerated}"),
    )?;
    ensure(S.group_order() == 2 * 6u64.pow(8), "formula")?;
    Ok(format!("bfs = enumerate = {GROUP_ORDER} in {elapsed:?}"))
}

fn c2_class_partition() -> Outcome {
    let mut counts = [0u64; 8];
    for g in enumerate_group(S) {
        counts[g.classify() as usize] += 1;
    }
    let expected = [1, 1, N, N, N, N, N * N, N * N];
    ensure(counts == expected, format!("cardinalities {counts:?}"))?;
    let sum: u64 = counts.iter().sum();
    ensure(sum == GROUP_ORDER, format!("sum {sum}"))?;
    ensure(2 + 4 * N + 2 * N * N == GROUP_ORDER, "closed-form sum")?;
    Ok(format!("{counts:?} sum {sum}"))
}

fn c3_row_column_commutation() -> Outcome {
    let start = Instant::now();
    let pairs = verify_prop1(S, 1).map_err(|e| e.to_string())?;
    ensure(pairs == 1296 * 1296, format!("{pairs} pairs"))?;
    let chains = verify_prop1_chains(S, 1000, 0).map_err(|e| e.to_string())?;
    // grid-action agreement: r_λ (d r_μ d) and (d r_μ d) r_λ move a grid identically
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let grids = common::fixed_grids();
    let d = GridSymmetry::transpose(S);
    for k in 0..1000 {
        let lambda = GridSymmetry::row_permutation(
            BandPermutation::from_rank(rng.gen_range(0..1296), S).unwrap(),
        );
        let mu = GridSymmetry::row_permutation(
            BandPermutation::from_rank(rng.gen_range(0..1296), S).unwrap(),
        );
        let grid = &grids[k % grids.len()];
        let apply_seq = |steps: &[&GridSymmetry]| {
            steps
                .iter()
                .fold(grid.clone(), |g, s| g.apply_symmetry(s).unwrap())
        };
        // rightmost factor first
        let left = apply_seq(&[&d, &mu, &d, &lambda]);
        let right = apply_seq(&[&lambda, &d, &mu, &d]);
        ensure(left == right, format!("grid actions differ for sample {k}"))?;
    }
    let elapsed = within(start, Duration::from_secs(60), "commutation check")?;
    Ok(format!(
        "{pairs} pairs exhaustive, {chains} cell chains, 1000 grid actions, {elapsed:?}"
    ))
}

fn c4_element_orders() -> Outcome {
    let mut spectrum = BTreeSet::new();
    for p in BandPermutation::enumerate(S) {
        ensure(
            p.pow(9).is_identity() || p.pow(12).is_identity(),
            format!("{p} has neither p^9 = E nor p^12 = E"),
        )?;
        spectrum.insert(p.order());
    }
    let expected: BTreeSet<u32> = [1, 2, 3, 4, 6, 9, 12].into();
    ensure(spectrum == expected, format!("spectrum {spectrum:?}"))?;
    Ok(format!("1296 elements, spectrum {spectrum:?}"))
}

fn c5_named() -> Outcome {
    let named = |n| GridSymmetry::named(n, S).unwrap();
    let (h, h1, dd, v, w, f) = (
        named(NamedSymmetry::H),
        named(NamedSymmetry::H1),
        named(NamedSymmetry::D),
        named(NamedSymmetry::V),
        named(NamedSymmetry::W),
        named(NamedSymmetry::F),
    );
    let d = GridSymmetry::transpose(S);
    let r1 = GridSymmetry::row_permutation(BandPermutation::reversal(S));
    ensure(v.pow(4).is_identity(), "V^4 = E")?;
    ensure(w == v.pow(3), "W = V^3")?;
    ensure(w.pow(2) == v.pow(2), "W^2 = V^2")?;
    ensure(w.pow(3) == v, "W^3 = V")?;
    ensure(f == v.pow(2), "F = V^2")?;
    ensure(dd == r1 * d * r1, "D = r1 d r1")?;
    ensure(h1 == d * r1 * d, "H1 = d r1 d")?;
    let grid = &common::fixed_grids()[1];
    let formulas: [(&GridSymmetry, &str, CellMap); 6] = [
        (&h, "H", |i, j| (10 - i, j)),
        (&h1, "H1", |i, j| (i, 10 - j)),
        (&v, "V", |i, j| (j, 10 - i)),
        (&w, "V^3", |i, j| (10 - j, i)),
        (&f, "F", |i, j| (10 - i, 10 - j)),
        (&dd, "D", |i, j| (10 - j, 10 - i)),
    ];
    for (g, name, formula) in formulas {
        let moved = grid.apply_symmetry(g).unwrap();
        for i in 1..=9 {
            for j in 1..=9 {
                let (ti, tj) = formula(i, j);
                ensure(
                    moved.get(ti, tj) == grid.get(i, j),
                    format!("{name} at ({i},{j})"),
                )?;
            }
        }
    }
    Ok("7 identities and 6 index formulas".into())
}

fn c6_commutation() -> Outcome {
    match check_relabel_commutation(S, 1000, 0) {
        None => Ok("1000 seeded (g, o, grid) triples commute".into()),
        Some(failure) => Err(failure),
    }
}

fn c7_product_table() -> Outcome {
    let check = check_product_table(S, 256, 0);
    ensure(
        check.unexpected.is_empty(),
        format!("unexpected products {:?}", check.unexpected),
    )?;
    ensure(
        check.unwitnessed.is_empty(),
        format!("unwitnessed classes {:?}", check.unwitnessed),
    )?;
    ensure(check.predicted.len() == 64, "64 pairs")?;
    use SymmetryClass::*;
    let a7a8: BTreeSet<_> = [A2, A4, A5, A7].into();
    ensure(check.predicted[&(A7, A8)] == a7a8, "(A7, A8) entry")?;
    ensure(check.observed[&(A7, A8)] == a7a8, "(A7, A8) observed")?;
    Ok(format!(
        "64 pairs x {} samples, (A7, A8) = {{A2, A4, A5, A7}}",
        check.samples_per_pair
    ))
}

fn c8_shidoku() -> Outcome {
    let start = Instant::now();
    let census = shidoku_census(1);
    let elapsed = within(start, Duration::from_secs(10), "census")?;
    ensure(census.total == 288, format!("total {}", census.total))?;
    ensure(census.classes == 2, format!("classes {}", census.classes))?;
    ensure(
        census.partitions_agree,
        "canonical and orbit partitions differ",
    )?;
    ensure(
        census.class_sizes.iter().sum::<usize>() == 288,
        "class sizes",
    )?;
    Ok(format!(
        "288 grids, 2 classes {:?}, {elapsed:?}",
        census.class_sizes
    ))
}

fn c9_canonicalization() -> Outcome {
    let grids = common::fixed_grids();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut slowest = Duration::ZERO;
    for (k, grid) in grids.iter().enumerate() {
        let start = Instant::now();
        let base = canonicalize(grid, Mode::GeometryAndRelabel, 1).map_err(|e| e.to_string())?;
        slowest = slowest.max(within(
            start,
            Duration::from_secs(30),
            "single-worker canonicalization",
        )?);
        let text = |f: &sudoku_symmetry::CanonicalForm| {
            format!(
                "{}{}{}",
                f.grid.to_text(GridFormat::Line),
                f.symmetry,
                f.relabel
            )
        };
        for workers in [2, 8] {
            let other = canonicalize(grid, Mode::GeometryAndRelabel, workers).unwrap();
            ensure(
                text(&other) == text(&base),
                format!("grid {k}: {workers} workers differ"),
            )?;
        }
        let again = canonicalize(&base.grid, Mode::GeometryAndRelabel, 1).unwrap();
        ensure(again.grid == base.grid, format!("grid {k}: not idempotent"))?;
        for _ in 0..20 {
            let g = GridSymmetry::random(S, &mut rng);
            let o = DigitPermutation::random(S, &mut rng);
            let moved = grid.apply_symmetry(&g).unwrap().apply_relabel(&o).unwrap();
            let form = canonicalize(&moved, Mode::GeometryAndRelabel, 2).unwrap();
            ensure(
                form.grid == base.grid,
                format!("grid {k}: perturbation changed canonical form"),
            )?;
        }
    }
    Ok(format!(
        "5 grids x 20 perturbations, slowest single-worker run {slowest:?}"
    ))
}

fn c10_orbit_stabilizer() -> Outcome {
    let mut sizes = Vec::new();
    for grid in common::fixed_grids() {
        let report = stabilizer(&grid, 2).map_err(|e| e.to_string())?;
        ensure(
            FULL_ORDER.is_multiple_of(report.stabilizer_size),
            "stabilizer does not divide",
        )?;
        ensure(
            report.orbit_size * report.stabilizer_size == FULL_ORDER,
            "orbit x stabilizer",
        )?;
        sizes.push(report.stabilizer_size);
    }
    for class in shidoku_census(1).details {
        ensure(
            class.stabilizer_size * class.orbit_size == 128 * 24,
            "shidoku orbit x stabilizer",
        )?;
    }
    Ok(format!("stabilizer sizes {sizes:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("1 group order", c1_group_order),
        ("2 class partition", c2_class_partition),
        ("3 row/column commutation", c3_row_column_commutation),
        ("4 element orders", c4_element_orders),
        ("5 named symmetries", c5_named),
        ("6 relabel commutation", c6_commutation),
        ("7 class product table", c7_product_table),
        ("8 shidoku census", c8_shidoku),
        ("9 canonicalization", c9_canonicalization),
        ("10 orbit-stabilizer", c10_orbit_stabilizer),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                println!("FAIL  criterion {name}: {detail}");
                failed.push(name);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
