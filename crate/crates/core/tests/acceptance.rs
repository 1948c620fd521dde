//! Acceptance suite. Runs every criterion at its exact tolerance and prints
//! one PASS/FAIL line each; exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sbox_core::affine::AffineMap;
use sbox_core::enumeration::{enumerate_strong, EnumerationConfig, EnumerationResult, Pruning};
use sbox_core::invariance::subspaces_by_dimension;
use sbox_core::oracle;
use sbox_core::spectral::BooleanComponent;
use sbox_core::verification::implications::Implication;
use sbox_core::verification::sampling::{random_function, random_normalized_permutation};
use sbox_core::verification::{check_implications, verify_facts, FactStatus, FixtureSource};
use sbox_core::{
    anf, ddt, degree_spectrum, differential_uniformity, is_weakly_apn, lin, n_hat, walsh_spectrum,
    SBox,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn random_permutation(m: u32, rng: &mut ChaCha8Rng) -> SBox {
    let f = random_normalized_permutation(m, rng);
    let c = rng.gen_range(0..f.size()) as u8;
    SBox::new(m, f.table().iter().map(|&y| y ^ c).collect()).unwrap()
}

fn fact_fixtures() -> Outcome {
    let report = verify_facts(&FixtureSource::Embedded);
    let cases: Vec<_> = report
        .cases
        .iter()
        .filter(|c| c.id != "serpent-classification")
        .collect();
    ensure!(
        cases.len() == 5,
        "expected 5 fixed-table cases, found {}",
        cases.len()
    );
    for case in &cases {
        ensure!(case.status == FactStatus::Pass, "{}", report.render_text());
    }
    Ok(format!(
        "{} cases, {} claims",
        cases.len(),
        cases.iter().map(|c| c.claims.len()).sum::<usize>()
    ))
}

fn serpent_classification() -> Outcome {
    let report = verify_facts(&FixtureSource::Embedded);
    let case = report
        .case("serpent-classification")
        .ok_or("serpent case missing")?;
    ensure!(case.status == FactStatus::Pass, "{}", report.render_text());
    Ok("S3 S4 S5 S7 strong, others not, none very strong".into())
}

fn run(config: EnumerationConfig) -> Result<EnumerationResult, String> {
    enumerate_strong(&config).map_err(|e| e.to_string())
}

fn enumeration_counts() -> Outcome {
    let shards = 4;
    let (mut strong, mut very_strong) = (0, 0);
    for shard_id in 0..shards {
        let r = run(EnumerationConfig {
            shards,
            shard_id,
            ..Default::default()
        })?;
        strong += r.strong_count;
        very_strong += r.very_strong_count;
    }
    ensure!(strong == 55296, "strong count {strong}, expected 55296");
    ensure!(
        very_strong == 2304,
        "very strong count {very_strong}, expected 2304"
    );
    let closure = EnumerationResult {
        strong_count: strong,
        very_strong_count: very_strong,
        ..Default::default()
    };
    ensure!(
        closure.strong_translation_closure() == 884736,
        "translation closure {}",
        closure.strong_translation_closure()
    );

    let mut checked = Vec::new();
    for prefix in [vec![1, 2], vec![3, 5, 8, 6, 13, 15]] {
        let config = |pruning| EnumerationConfig {
            emit_tables: true,
            pruning,
            prefix: prefix.clone(),
            ..Default::default()
        };
        let pruned = run(config(Pruning::Full))?;
        let unpruned = run(config(Pruning::Off))?;
        ensure!(
            pruned.strong_list == unpruned.strong_list
                && pruned.very_strong_count == unpruned.very_strong_count,
            "prefix {prefix:?}: pruned {} / {} vs unpruned {} / {}",
            pruned.strong_count,
            pruned.very_strong_count,
            unpruned.strong_count,
            unpruned.very_strong_count
        );
        checked.push(format!("{prefix:?} -> {}", pruned.strong_count));
    }
    Ok(format!(
        "{strong} strong, {very_strong} very strong, closure 884736; pruned == unpruned on {}",
        checked.join(", ")
    ))
}

fn implications() -> Outcome {
    let report = check_implications(100_000, 1, &[3, 4, 5], None).map_err(|e| e.to_string())?;
    ensure!(report.violation_count() == 0, "{}", report.render_text());
    for implication in Implication::ALL {
        ensure!(
            report.result(implication, 4).is_some(),
            "{implication:?} was not evaluated"
        );
    }
    for m in [3, 5] {
        ensure!(
            report.result(Implication::WeaklyApnBoundsNHat, m).is_some(),
            "n_hat bound not evaluated at m={m}"
        );
    }
    Ok(format!("{} results, 0 violations", report.results.len()))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for i in 0..100 {
        let f = random_permutation(4, &mut rng);
        let w = walsh_spectrum(&f);
        let direct = oracle::direct_walsh(&f);
        for (a, row) in direct.iter().enumerate() {
            for (b, &expected) in row.iter().enumerate() {
                ensure!(
                    w.get(a, b) == expected,
                    "sample {i} {:?}: W[{a}][{b}] {} vs {expected}",
                    f.table(),
                    w.get(a, b)
                );
            }
        }
    }
    for i in 0..1000 {
        let m = rng.gen_range(1..=8);
        let truth: Vec<bool> = (0..1usize << m).map(|_| rng.gen()).collect();
        let c = BooleanComponent::new(m, truth).unwrap();
        let form = anf(&c);
        ensure!(
            form.to_component() == c,
            "component {i}: ANF round trip failed"
        );
        for x in 0..1usize << m {
            ensure!(
                oracle::evaluate_anf(form.coefficients(), x) == c.truth()[x],
                "component {i}: ANF disagrees at x={x}"
            );
        }
    }
    let mut weakly = 0;
    for i in 0..1000 {
        let f = if i % 2 == 0 {
            random_permutation(4, &mut rng)
        } else {
            random_function(4, &mut rng)
        };
        let fast = is_weakly_apn(&f);
        ensure!(
            fast == oracle::weakly_apn_by_sets(&f),
            "weakly APN disagreement on {:?}",
            f.table()
        );
        weakly += usize::from(fast);
    }
    Ok(format!(
        "100 Walsh spectra, 1000 ANF round trips, 1000 weak-APN verdicts ({weakly} weakly APN)"
    ))
}

fn image_profile(f: &SBox) -> Vec<usize> {
    let table = ddt(f);
    let mut sizes: Vec<usize> = (1..f.size()).map(|u| table.image_size(u)).collect();
    sizes.sort_unstable();
    sizes
}

fn affine_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    for i in 0..1000 {
        let f = random_permutation(4, &mut rng);
        let a = AffineMap::random(4, &mut rng);
        let b = AffineMap::random(4, &mut rng);
        let g = AffineMap::conjugate(&f, &a, &b);
        let same = differential_uniformity(&f) == differential_uniformity(&g)
            && is_weakly_apn(&f) == is_weakly_apn(&g)
            && lin(&f) == lin(&g)
            && degree_spectrum(&f) == degree_spectrum(&g)
            && n_hat(&f) == n_hat(&g)
            && image_profile(&f) == image_profile(&g);
        ensure!(
            same,
            "triple {i}: measures differ for {:?} and {:?}",
            f.table(),
            g.table()
        );
    }
    Ok("1000 triples".into())
}

fn structural_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for i in 0..500 {
        let m = rng.gen_range(2..=8);
        let f = if i % 2 == 0 {
            random_permutation(m, &mut rng)
        } else {
            random_function(m, &mut rng)
        };
        let n = f.size();
        let table = ddt(&f);
        for u in 0..n {
            let row = table.row(u);
            ensure!(row.iter().sum::<u32>() == n as u32, "m={m} row {u} sum");
            ensure!(
                row.iter().all(|c| c % 2 == 0),
                "m={m} row {u} has an odd entry"
            );
        }
        let w = walsh_spectrum(&f);
        for b in 0..n {
            let energy: i64 = w
                .column(b)
                .iter()
                .map(|&c| i64::from(c) * i64::from(c))
                .sum();
            ensure!(
                energy == (n * n) as i64,
                "m={m} column {b}: sum of squares {energy}"
            );
        }
    }
    let counts: Vec<usize> = subspaces_by_dimension(4)[1..4]
        .iter()
        .map(Vec::len)
        .collect();
    ensure!(counts == [15, 35, 15], "subspace counts {counts:?}");
    Ok("500 random tables m=2..8; subspaces 15/35/15".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("fact-fixtures", fact_fixtures),
        ("serpent-classification", serpent_classification),
        ("enumeration-counts", enumeration_counts),
        ("implications", implications),
        ("oracle-equivalence", oracle_equivalence),
        ("affine-invariance", affine_invariance),
        ("structural-invariants", structural_invariants),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name:<24} {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name:<24} {why} ({secs:.2}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
