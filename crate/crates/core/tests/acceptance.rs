//! The ten acceptance criteria. Runs without the libtest harness so that
//! every criterion prints exactly one PASS/FAIL line.

use std::process::ExitCode;
use std::time::Instant;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use ramsey_core::bitcore::{delta_u64, monotone_witness_set, Direction, Label};
use ramsey_core::expander::{check_edge_distribution, check_max_degree, generate, CheckMode, ExpanderParams};
use ramsey_core::hypergraph::{Graph, Hypergraph};
use ramsey_core::pathhyper::{count_paths, path_hypergraph};
use ramsey_core::search::{
    count_mono_cliques, count_mono_cliques_table, extremal_number_small, kst_bound, max_mono_clique,
    max_mono_clique_table, ramsey_number_small, supersaturation_bound, verify_good_coloring,
    verify_lower_bound_instance, RamseyPattern, SearchBudget, WindowTable,
};
use ramsey_core::stepup::{verify_base, BaseColoring, Color, EdgeColoring};
use ramsey_core::strongcolor::{greedy_strong_coloring, validate_strong_coloring, BoundCheck};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn cycle_base() -> BaseColoring {
    BaseColoring::from_red_pairs(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])
}

fn labels(xs: impl IntoIterator<Item = u64>) -> Vec<Label> {
    xs.into_iter().map(Label::from).collect()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn delta(x: u64, y: u64) -> u32 {
    delta_u64(x, y).expect("distinct")
}

fn delta_calculus() -> Outcome {
    let p1: u64 = (0u64..1 << 16)
        .into_par_iter()
        .map(|x| {
            (x + 1..1 << 16)
                .filter(|&y| {
                    let d = delta(x, y);
                    (x >> d) & 1 != 0 || (y >> d) & 1 != 1
                })
                .count() as u64
        })
        .sum();
    let p2: u64 = (0u64..1 << 10)
        .into_par_iter()
        .map(|x| {
            let mut bad = 0;
            for y in x + 1..1 << 10 {
                let dxy = delta(x, y);
                for z in y + 1..1 << 10 {
                    bad += u64::from(dxy == delta(y, z));
                }
            }
            bad
        })
        .sum();
    let p3: u64 = (0u64..256)
        .into_par_iter()
        .map(|a| {
            let mut bad = 0;
            for b in a + 1..256 {
                let dab = delta(a, b);
                for c in b + 1..256 {
                    let dbc = delta(b, c);
                    for d in c + 1..256 {
                        let max = dab.max(dbc).max(delta(c, d));
                        bad += u64::from(delta(a, d) != max);
                    }
                }
            }
            bad
        })
        .sum();
    ensure(p1 + p2 + p3 == 0, format!("violations P1={p1} P2={p2} P3={p3}"))?;
    Ok("P1, P2, P3: 0 violations".into())
}

fn stepping_up_sharpness() -> Outcome {
    let base = cycle_base();
    ensure(verify_base(&base, 3).ok, "base has a monochromatic triangle")?;
    let c = EdgeColoring::stepped(base, 3).map_err(|e| e.to_string())?;
    let window = labels(0..16);
    let r = max_mono_clique(&c, &window, SearchBudget::default()).map_err(|e| e.to_string())?;
    ensure(r.size == 3, format!("max mono clique {}", r.size))?;
    // a mono 4-set would need a mono triangle among its delta values
    let four = count_mono_cliques(&c, 4, &window).map_err(|e| e.to_string())?;
    ensure(four.values().all(|&n| n == 0), format!("mono 4-sets {four:?}"))?;
    Ok(format!("max mono clique = 3 ({} nodes)", r.nodes_expanded))
}

fn monotone_inheritance() -> Outcome {
    let c3 = EdgeColoring::stepped(cycle_base(), 3).map_err(|e| e.to_string())?;
    let c4 = EdgeColoring::stepped(cycle_base(), 4).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for run in 0..100 {
        let positions: Vec<u64> = (0..16u64)
            .combinations(7)
            .nth(rng.gen_range(0..11440))
            .expect("C(16,7) sets");
        let direction = if run % 2 == 0 {
            Direction::Increasing
        } else {
            Direction::Decreasing
        };
        let set = monotone_witness_set(&positions, direction).map_err(|e| e.to_string())?;
        for sub in set.iter().cloned().combinations(4) {
            let mut image: Vec<Label> = sub
                .windows(2)
                .map(|w| Label::from(ramsey_core::bitcore::delta(&w[0], &w[1]).expect("distinct")))
                .collect();
            image.sort();
            let lifted = c4.color_of(&sub).map_err(|e| e.to_string())?;
            let lower = c3.color_of(&image).map_err(|e| e.to_string())?;
            ensure(
                lifted == lower,
                format!("run {run}: {sub:?} gives {lifted}, delta image gives {lower}"),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} four-subsets, 0 violations"))
}

fn strong_coloring_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut tight = 0;
    for run in 0..200 {
        let k = [3, 4, 5][run % 3];
        let n = rng.gen_range(k + 1..=400);
        let available = (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1));
        let m = rng.gen_range(1..=10_000usize).min(available as usize);
        let h = Hypergraph::random(k, n, m, &mut rng)
            .map_err(|e| e.to_string())?
            .without_isolated();
        let (sc, trace) = greedy_strong_coloring(&h).map_err(|e| e.to_string())?;
        let valid = validate_strong_coloring(&h, sc.classes()).map_err(|e| e.to_string())?;
        let b = BoundCheck::new(&sc, &trace);
        ensure(valid.ok, format!("run {run}: not strong"))?;
        ensure(b.t_ok(), format!("run {run}: t = {} > {}", b.t, b.t_limit))?;
        ensure(b.n0_ok(k, m), format!("run {run}: n0 = {} > {}", b.n0, b.n0_limit))?;
        ensure(
            b.product_ok(),
            format!("run {run}: log2 product {} > {}", b.log2_product, b.log2_product_limit),
        )?;
        tight += usize::from(b.tight_product_ok());
    }
    Ok(format!(
        "200 hypergraphs, all strong and within bounds; {tight}/200 also within 2k*sqrt(m) + log2(m)"
    ))
}

fn ramsey_oracle() -> Outcome {
    let p = RamseyPattern::Clique(3);
    let r = ramsey_number_small(&p, 2, 2, SearchBudget::default()).map_err(|e| e.to_string())?;
    ensure(r.n == 6, format!("R(3,3) computed as {}", r.n))?;
    ensure(
        verify_good_coloring(&p, 2, 2, 5, &r.lower_certificate),
        "stored K_5 coloring is not good",
    )?;
    ensure(r.refutation_nodes > 0, "no refutation recorded")?;
    Ok(format!(
        "R(3,3) = 6, K_5 certificate checked, K_6 refuted in {} nodes",
        r.refutation_nodes
    ))
}

fn turan_oracle() -> Outcome {
    let ex = |n: usize, parts: &[usize]| {
        extremal_number_small(n, parts, SearchBudget::default())
            .map(|r| r.value)
            .map_err(|e| e.to_string())
    };
    let values: Vec<usize> = (4..=7).map(|n| ex(n, &[2, 2])).collect::<Result<_, _>>()?;
    ensure(values == [4, 6, 7, 9], format!("ex(n, C4) for n = 4..7 is {values:?}"))?;
    let mut instances: Vec<(usize, Vec<usize>)> = Vec::new();
    for parts in [vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]] {
        instances.extend((1..=7).map(|n| (n, parts.clone())));
    }
    instances.extend((1..=6).map(|n| (n, vec![1, 1, 1])));
    let mut previous: Option<(Vec<usize>, usize)> = None;
    for (n, parts) in &instances {
        let value = ex(*n, parts)?;
        let bound = kst_bound(*n, parts);
        ensure(
            (value as f64) < bound,
            format!("ex({n}, {parts:?}) = {value} >= {bound}"),
        )?;
        if let Some((prev_parts, prev)) = &previous {
            if prev_parts == parts {
                ensure(value >= *prev, format!("ex decreases at n = {n} for {parts:?}"))?;
            }
        }
        previous = Some((parts.clone(), value));
    }
    Ok(format!(
        "ex(n, C4) = {values:?}, {} instances below the bound",
        instances.len()
    ))
}

fn supersaturation() -> Outcome {
    let s = supersaturation_bound(7, 6, 3, 2, 2).map_err(|e| e.to_string())?;
    ensure(
        s.exact == BigRational::new(7.into(), 8.into()),
        format!("bound {}", s.exact),
    )?;
    ensure(s.holds(), "closed form exceeds exact value")?;
    let majority_floor = s.exact_ceil();
    let total_floor = supersaturation_bound(7, 6, 3, 1, 2)
        .map_err(|e| e.to_string())?
        .exact_ceil();
    ensure(total_floor == BigInt::from(2), format!("total floor {total_floor}"))?;
    let mut violations = 0u64;
    let mut fewest = u64::MAX;
    for mask in 0..1u64 << 21 {
        let table = WindowTable::from_base(&BaseColoring::from_mask(7, mask));
        let counts = count_mono_cliques_table(&table, 3).map_err(|e| e.to_string())?;
        let red = counts[&Color::Red];
        let blue = counts[&Color::Blue];
        fewest = fewest.min(red + blue);
        if BigInt::from(red + blue) < total_floor || BigInt::from(red.max(blue)) < majority_floor {
            violations += 1;
        }
    }
    ensure(violations == 0, format!("{violations} colorings below the bound"))?;
    // the same count through the clique search on one coloring
    let table = WindowTable::from_base(&BaseColoring::from_mask(7, 0));
    ensure(
        max_mono_clique_table(&table, SearchBudget::default())
            .map_err(|e| e.to_string())?
            .size
            == 7,
        "mono K_7",
    )?;
    Ok(format!(
        "2^21 colorings, 0 violations, fewest mono triangles = {fewest}"
    ))
}

fn expander() -> Outcome {
    for seed in 0..100 {
        let params = ExpanderParams::new(200, 64.0, seed).map_err(|e| e.to_string())?;
        let g = generate(&params).map_err(|e| e.to_string())?;
        ensure(
            check_max_degree(&g, 64.0) && g.max_degree() <= 128,
            format!("seed {seed}: max degree {}", g.max_degree()),
        )?;
    }
    let params = ExpanderParams::new(12, 8.0, 1).map_err(|e| e.to_string())?;
    let report = |p: &ExpanderParams| {
        let g = generate(p).map_err(|e| e.to_string())?;
        check_edge_distribution(&g, 8.0, CheckMode::Exhaustive).map_err(|e| e.to_string())
    };
    let first = report(&params)?;
    ensure(
        first.pairs_checked == 462,
        format!("pairs checked {}", first.pairs_checked),
    )?;
    ensure(first == report(&params)?, "report differs between identical runs")?;
    Ok(format!(
        "100 runs with max degree <= 128, 462 pairs, {} violations reported",
        first.violations.len()
    ))
}

fn path_hypergraphs() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for run in 0..50 {
        let n = rng.gen_range(2..=9);
        let g = Graph::gnp(n, rng.gen_range(0.1..0.9), &mut rng);
        let h2 = path_hypergraph(&g, 2).map_err(|e| e.to_string())?;
        ensure(
            h2 == Hypergraph::complete(n, 2).map_err(|e| e.to_string())?,
            format!("run {run}: H(G,2)"),
        )?;
        for k in 3..=5 {
            let h = path_hypergraph(&g, k).map_err(|e| e.to_string())?;
            let paths = count_paths(&g, k - 1).map_err(|e| e.to_string())?;
            ensure(
                h.edge_count() as u64 <= n as u64 * paths,
                format!("run {run}, k = {k}: {} edges", h.edge_count()),
            )?;
        }
    }
    let edges = |g: Graph, k: usize| {
        path_hypergraph(&g, k)
            .map(|h| h.edges().to_vec())
            .map_err(|e| e.to_string())
    };
    let triangle = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).map_err(|e| e.to_string())?;
    let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).map_err(|e| e.to_string())?;
    let path = Graph::new(3, [(0, 1), (1, 2)]).map_err(|e| e.to_string())?;
    ensure(edges(triangle, 3)? == [vec![0, 1, 2]], "triangle")?;
    ensure(edges(star, 3)? == [vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3]], "star")?;
    ensure(edges(path, 4)?.is_empty(), "short path")?;
    Ok("50 random graphs and the hand examples match".into())
}

fn pipeline() -> Outcome {
    let r = verify_lower_bound_instance(
        3,
        3,
        &cycle_base(),
        &Graph::petersen(),
        Some(&labels(0..16)),
        SearchBudget::nodes(100_000_000),
    )
    .map_err(|e| e.to_string())?;
    ensure(r.base_verified, "base not verified")?;
    ensure(r.outcome != "budget", "budget exhausted")?;
    ensure(r.witness_valid != Some(false), "found embedding fails validation")?;
    Ok(format!("outcome {} after {} nodes", r.outcome, r.nodes_expanded))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("delta calculus", delta_calculus),
        ("stepping-up sharpness", stepping_up_sharpness),
        ("monotone inheritance", monotone_inheritance),
        ("strong coloring bounds", strong_coloring_bounds),
        ("Ramsey oracle", ramsey_oracle),
        ("Turan oracle", turan_oracle),
        ("supersaturation", supersaturation),
        ("expander construction", expander),
        ("path hypergraph", path_hypergraphs),
        ("pipeline smoke test", pipeline),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
