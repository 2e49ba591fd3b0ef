//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{brute_clique, per_unit_cell, split_at};
use sigmacolor::algorithms::block_color_bound;
use sigmacolor::harness::{seeded_instance, RandomSpec};
use sigmacolor::presenters::recurrence::{limit, table, Family, Size};
use sigmacolor::presenters::{four_split, lemma_4sets_check, Branch, ColorSet, FixedSequence, SplitOutcome};
use sigmacolor::rational::q;
use sigmacolor::{
    clique_number, evaluate, offline_optimal_coloring, run_game, verify_proper, BlockAlgorithm, FirstFit, Interval,
    OnlineAlgorithm, Rational, SchemaParams, Transcript,
};

type Outcome = Result<String, String>;

fn recipe(text: &str) -> SchemaParams {
    text.parse().expect("valid recipe")
}

/// Plays `recipe` at `omega` and returns the transcript with the branch taken.
fn play(algo: &mut dyn OnlineAlgorithm, recipe: &SchemaParams, omega: u64) -> (Transcript, Option<Branch>) {
    let mut p = recipe.presenter(omega);
    let t = run_game(algo, &mut p).expect("game runs to completion");
    (t, p.branch())
}

/// Every obligation of a strategy run: enough colors, clique at most omega,
/// proper, lengths and region.
fn check_run(label: &str, t: &Transcript, recipe: &SchemaParams, omega: u64, floor: u64) -> Result<(), String> {
    let r = evaluate(t, recipe, omega);
    if !r.passed() || (r.colors_used as u64) < floor {
        return Err(format!("{label} omega={omega}: {r:?} (need {floor} colors)"));
    }
    Ok(())
}

fn criteria_1_2() -> (Outcome, Outcome) {
    let params = [(q("1"), 1u64), (q("3/2"), 2), (q("2"), 1), (q("5/3"), 3)];
    let recipes: Vec<SchemaParams> = [
        "base",
        "lower32(base)",
        "lower53(base)",
        "lower74(base)",
        "lower52(base,gamma=1/2,n=5)",
    ]
    .iter()
    .map(|r| recipe(r))
    .collect();

    // Each job: block parameters and either a recipe game or a random instance index.
    let mut jobs: Vec<(Rational, u64, Result<(SchemaParams, u64), u64>)> = Vec::new();
    for (sigma, b) in &params {
        for r in recipes.iter().filter(|r| r.sigma() <= sigma) {
            for omega in 20..=60 {
                jobs.push((sigma.clone(), *b, Ok((r.clone(), omega))));
            }
        }
        for i in 0..200 {
            jobs.push((sigma.clone(), *b, Err(i)));
        }
    }
    let results: Vec<(bool, bool, String)> = jobs
        .par_iter()
        .map(|(sigma, b, source)| {
            let mut algo = BlockAlgorithm::new(sigma.clone(), *b).unwrap();
            let (t, label) = match source {
                Ok((r, omega)) => (play(&mut algo, r, *omega).0, format!("{r} omega={omega}")),
                Err(i) => {
                    let spec = RandomSpec {
                        count: 200,
                        intervals: 150,
                        window: q("30"),
                        sigma: sigma.clone(),
                        denominator: 12,
                    };
                    let xs = seeded_instance(2024, *i, &spec);
                    let t = run_game(&mut algo, &mut FixedSequence::new(xs)).unwrap();
                    (t, format!("random #{i}"))
                }
            };
            let omega = clique_number(&t.intervals()) as u64;
            let bound = block_color_bound(algo.phi(), *b, omega);
            let within = t.distinct_colors() as u64 <= bound;
            let proper = verify_proper(&t).is_ok();
            (within, proper, format!("sigma={sigma} b={b} {label}: {} colors, bound {bound}", t.distinct_colors()))
        })
        .collect();
    let games = results.len();
    let over: Vec<&String> = results.iter().filter(|r| !r.0).map(|r| &r.2).collect();
    let improper: Vec<&String> = results.iter().filter(|r| !r.1).map(|r| &r.2).collect();
    let c1 = if over.is_empty() {
        Ok(format!("{games} games within the block bound"))
    } else {
        Err(format!("{} of {games} over the bound, first: {}", over.len(), over[0]))
    };
    let c2 = if improper.is_empty() {
        Ok(format!("{games} transcripts proper"))
    } else {
        Err(format!("{} improper, first: {}", improper.len(), improper[0]))
    };
    (c1, c2)
}

fn criterion_3() -> Outcome {
    let r = recipe("lower32(base)");
    let eps = q("1/10");
    if r.sigma() != &(q("1") + eps.clone()) || r.region() != &(q("2") + eps) {
        return Err(format!("unexpected parameters sigma={} M={}", r.sigma(), r.region()));
    }
    (10..=100u64).into_par_iter().try_for_each(|omega| {
        let floor = omega + omega / 2;
        let (t, _) = play(&mut FirstFit::new(), &r, omega);
        check_run("firstfit", &t, &r, omega, floor)?;
        let (t, _) = play(&mut BlockAlgorithm::new(q("2"), 1).unwrap(), &r, omega);
        check_run("block(2,1)", &t, &r, omega, floor)
    })?;
    Ok("omega 10..=100 vs firstfit and block(sigma=2,b=1)".into())
}

fn criterion_4() -> Outcome {
    let r = recipe("lower53(base)");
    if r.guaranteed_colors(99) != 165 {
        return Err(format!("guarantee at 99 is {}", r.guaranteed_colors(99)));
    }
    (9..=99u64).into_par_iter().try_for_each(|omega| {
        let floor = 2 * (omega / 3) + omega;
        if r.guaranteed_colors(omega) != floor {
            return Err(format!("guarantee at {omega} is {}", r.guaranteed_colors(omega)));
        }
        let (t, _) = play(&mut FirstFit::new(), &r, omega);
        check_run("firstfit", &t, &r, omega, floor)?;
        let (t, _) = play(&mut BlockAlgorithm::new(q("2"), 1).unwrap(), &r, omega);
        check_run("block(2,1)", &t, &r, omega, floor)
    })?;
    Ok("omega 9..=99 vs firstfit and block(sigma=2,b=1), 165 at 99".into())
}

fn criterion_5() -> Outcome {
    let r = recipe("lower74(base)");
    if r.guaranteed_colors(100) != 175 {
        return Err(format!("guarantee at 100 is {}", r.guaranteed_colors(100)));
    }
    let block_sigma = r.sigma().clone();
    let branches: Vec<(Branch, Branch)> = (20..=100u64)
        .into_par_iter()
        .map(|omega| {
            let w = omega / 2;
            let floor = w + w + omega.div_ceil(4) + omega - w;
            let (t, shared) = play(&mut FirstFit::new(), &r, omega);
            check_run("firstfit", &t, &r, omega, floor)?;
            let (t, spread) = play(&mut split_at(q("2")), &r, omega);
            check_run("split(2)", &t, &r, omega, floor)?;
            let b = BlockAlgorithm::default_b(&block_sigma).unwrap();
            let (t, _) = play(&mut BlockAlgorithm::new(block_sigma.clone(), b).unwrap(), &r, omega);
            check_run("block", &t, &r, omega, floor)?;
            Ok((shared.unwrap(), spread.unwrap()))
        })
        .collect::<Result<_, String>>()?;
    if !branches.iter().all(|&(a, b)| a == Branch::Lower74Shared && b == Branch::Lower74Spread) {
        return Err(format!("scripted algorithms did not force the expected branches: {branches:?}"));
    }
    Ok("omega 20..=100, firstfit forces the shared branch and split(2) the spread branch, 175 at 100".into())
}

fn criterion_6() -> Outcome {
    let r = recipe("lower52(base,gamma=1/2,n=5)");
    let omega = 20;
    if r.guaranteed_colors(omega) != 30 {
        return Err(format!("guarantee is {}", r.guaranteed_colors(omega)));
    }
    let sigma = r.sigma().clone();
    let runs: Vec<(&str, Box<dyn Fn() -> Box<dyn OnlineAlgorithm> + Sync>, Branch)> = vec![
        ("firstfit", Box::new(|| Box::new(FirstFit::new())), Branch::Lower52DoubleBridge),
        ("split(1/2)", Box::new(|| Box::new(split_at(q("1/2")))), Branch::Lower52Bridge),
        ("per-unit-cell", Box::new(|| Box::new(per_unit_cell())), Branch::Lower52Union),
        (
            "block",
            Box::new(move || {
                let b = BlockAlgorithm::default_b(&sigma).unwrap();
                Box::new(BlockAlgorithm::new(sigma.clone(), b).unwrap())
            }),
            Branch::Lower52Union,
        ),
    ];
    let mut detail = Vec::new();
    for (label, make, expected) in &runs {
        let mut algo = make();
        let (t, branch) = play(&mut algo, &r, omega);
        check_run(label, &t, &r, omega, 30)?;
        if branch != Some(*expected) {
            return Err(format!("{label}: expected {expected:?}, got {branch:?}"));
        }
        detail.push(format!("{label} {} colors {:?}", t.distinct_colors(), expected));
    }
    Ok(detail.join(", "))
}

fn set_of(xs: &[usize]) -> ColorSet {
    xs.iter().copied().collect()
}

fn union_of(sets: &[ColorSet]) -> ColorSet {
    sets.iter().flatten().copied().collect()
}

fn random_family(rng: &mut ChaCha8Rng, count: usize, universe: usize, k: usize) -> Vec<ColorSet> {
    (0..count)
        .map(|_| {
            let mut s = ColorSet::new();
            while s.len() < k {
                s.insert(rng.random_range(0..universe));
            }
            s
        })
        .collect()
}

fn criterion_7() -> Outcome {
    // Exhaustive: all 2-subsets of a 6-element universe, all 4-tuples.
    let pairs: Vec<ColorSet> = (0..6)
        .flat_map(|a| ((a + 1)..6).map(move |b| set_of(&[a, b])))
        .collect();
    let gammas = [q("0"), q("1/4"), q("1/2"), q("3/4"), q("1")];
    let mut checked = 0u64;
    for g in &gammas {
        for a in &pairs {
            for b in &pairs {
                for c in &pairs {
                    for d in &pairs {
                        if !lemma_4sets_check([a, b, c, d], g) {
                            return Err(format!("four-set check fails at {a:?} {b:?} {c:?} {d:?}, gamma {g}"));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let k = rng.random_range(1..=8);
        let universe = rng.random_range(k..=24);
        let fam = random_family(&mut rng, 4, universe, k);
        let g = Rational::new(rng.random_range(0..=12), 12);
        if !lemma_4sets_check([&fam[0], &fam[1], &fam[2], &fam[3]], &g) {
            return Err(format!("four-set check fails at {fam:?}, gamma {g}"));
        }
    }

    for trial in 0..1000 {
        let k = rng.random_range(1..=10);
        let fam = random_family(&mut rng, 16, 40, k);
        let g = Rational::new(rng.random_range(0..=12), 12);
        match four_split(&fam, k, &g).map_err(|e| e.to_string())? {
            SplitOutcome::Union { union } => {
                let needed = (q("1") + &g / &q("3")).pow(2) * Rational::from(k);
                if union != union_of(&fam) || Rational::from(union.len()) < needed {
                    return Err(format!("trial {trial}: union {} below {needed}", union.len()));
                }
            }
            SplitOutcome::Partition { ranges, witness, .. } => {
                let contiguous = ranges[0].start == 0
                    && ranges[3].end == 16
                    && ranges.windows(2).all(|w| w[0].end == w[1].start)
                    && ranges.iter().all(|r| !r.is_empty());
                let unions: Vec<ColorSet> = ranges.iter().map(|r| union_of(&fam[r.clone()])).collect();
                let common: ColorSet = unions[0]
                    .iter()
                    .copied()
                    .filter(|c| unions[1..].iter().all(|u| u.contains(c)))
                    .collect();
                let needed = (q("1") - g.clone()) * Rational::from(k);
                if !contiguous || common != witness || Rational::from(witness.len()) < needed {
                    return Err(format!("trial {trial}: ranges {ranges:?}, witness {} below {needed}", witness.len()));
                }
            }
        }
    }
    Ok(format!("{checked} exhaustive families, 10^4 random families, 10^3 four-splits"))
}

fn criterion_8() -> Outcome {
    let g = q("0.21030395");
    for family in Family::ALL {
        let gamma = if family == Family::Lower52 { g.clone() } else { q("1/2") };
        for row in table(family, 20, &gamma).map_err(|e| e.to_string())? {
            if row.discrepancy() > 1e-9 {
                return Err(format!("{family} k={}: exact {} vs closed {}", row.k, row.alpha, row.closed_form));
            }
        }
    }
    let row = |family, k: usize, gamma: &Rational| table(family, k as u32, gamma).unwrap().remove(k);
    let half = q("1/2");
    let checks = [
        (row(Family::Lower32, 2, &half).alpha == q("8/5"), "lower32 n=2 is 8/5"),
        (row(Family::Lower53, 1, &half).alpha == q("5/3"), "lower53 n=1 is 5/3"),
        (row(Family::Lower74, 1, &half).alpha == q("7/4"), "lower74 n=1 is 7/4"),
    ];
    if let Some((_, what)) = checks.iter().find(|c| !c.0) {
        return Err(format!("row mismatch: {what}"));
    }
    let top = row(Family::Lower52, 3, &g);
    if top.alpha < q("2") || top.region != Size::PowerOfFour(39) || top.region.value() != BigInt::from(4).pow(39) {
        return Err(format!("lower52 n=3: alpha {} region {}", top.alpha, top.region));
    }
    Ok(format!("closed forms within 1e-9 for n <= 20, lower52 n=3 alpha {:.10} at 4^39", top.alpha.to_f64()))
}

fn criterion_9() -> Outcome {
    let mut detail = Vec::new();
    for family in [Family::Lower32, Family::Lower53, Family::Lower74] {
        let rows = table(family, 60, &q("1/2")).map_err(|e| e.to_string())?;
        let last = rows.last().unwrap().alpha.to_f64();
        let target = limit(family, 0.5);
        if (last - target).abs() > 1e-9 {
            return Err(format!("{family}: {last} vs limit {target}"));
        }
        detail.push(format!("{family} {last:.12}"));
    }
    Ok(detail.join(", "))
}

fn criterion_10() -> Outcome {
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases: 500,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    );
    let instance = prop::collection::vec((0i64..400, 1i64..=60), 0..=200).prop_map(|raw| {
        raw.into_iter()
            .map(|(l, len)| Interval::with_length(Rational::new(l, 4), &Rational::new(len, 12)).unwrap())
            .collect::<Vec<_>>()
    });
    runner
        .run(&instance, |xs| {
            let omega = clique_number(&xs);
            prop_assert_eq!(omega, brute_clique(&xs));
            let colors = offline_optimal_coloring(&xs);
            let t: Transcript = xs.iter().cloned().zip(colors.iter().copied()).collect();
            prop_assert!(verify_proper(&t).is_ok());
            prop_assert_eq!(colors.iter().collect::<BTreeSet<_>>().len(), omega);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("500 random instances of up to 200 intervals".into())
}

fn report(id: &str, name: &str, limit: Duration, elapsed: Duration, outcome: Outcome) -> bool {
    let (ok, detail) = match outcome {
        Ok(d) if elapsed <= limit => (true, d),
        Ok(d) => (false, format!("{d}; took longer than {limit:?}")),
        Err(e) => (false, e),
    };
    println!(
        "criterion {id:>2} {name:<28} {} ({:.2}s, limit {}s): {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    ok
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut ok = true;

    let ((c1, c2), t) = timed(criteria_1_2);
    ok &= report("1", "block upper bound", secs(30), t, c1);
    ok &= report("2", "propriety", secs(30), t, c2);

    let singles: [(&str, &str, u64, fn() -> Outcome); 8] = [
        ("3", "3/2 family", 5, criterion_3),
        ("4", "5/3 family", 5, criterion_4),
        ("5", "7/4 family", 10, criterion_5),
        ("6", "5/2 machinery", 60, criterion_6),
        ("7", "combinatorial lemmas", 30, criterion_7),
        ("8", "recurrences and table rows", 1, criterion_8),
        ("9", "recurrence limits", 1, criterion_9),
        ("10", "oracle equivalence", 10, criterion_10),
    ];
    for (id, name, limit, run) in singles {
        let (outcome, t) = timed(run);
        ok &= report(id, name, secs(limit), t, outcome);
    }

    if ok {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: some criteria FAILED");
        ExitCode::FAILURE
    }
}
