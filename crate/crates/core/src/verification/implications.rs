//! Implications between the measures, checked over seeded random
//! normalized permutations plus a few forced tables.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::sampling::{power_map, random_normalized_permutation};
use crate::oracle;
use crate::predicates::{analyze, AnalysisReport};
use crate::{Result, SBox, SboxError};

pub const SUPPORTED_DIMS: [u32; 4] = [3, 4, 5, 6];
const BATCH: u64 = 1024;
const MAX_WITNESSES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Implication {
    /// 4-uniform and strongly 2-anti-invariant ⇒ weakly APN (4-bit).
    AntiInvariantImpliesWeaklyApn,
    /// `n_hat = 0` ⇒ weakly APN (4-bit).
    NoConstantDerivativeComponentImpliesWeaklyApn,
    /// weakly APN ⇒ `n_hat <= 1` (any dimension).
    WeaklyApnBoundsNHat,
    /// weakly APN ⇒ degree 3 and `n_3 ∈ {12, 14, 15}` (4-bit).
    WeaklyApnDegreeSpectrum,
    /// weakly APN ⇒ degree 3 and `n_3 ∈ {14, 15}` (4-bit).
    WeaklyApnDegreeSpectrumSharp,
    /// `Lin = 8`, 4-uniform and `n_3 >= 14` ⇒ weakly APN (4-bit).
    OptimalHighDegreeImpliesWeaklyApn,
}

impl Implication {
    pub const ALL: [Implication; 6] = [
        Implication::AntiInvariantImpliesWeaklyApn,
        Implication::NoConstantDerivativeComponentImpliesWeaklyApn,
        Implication::WeaklyApnBoundsNHat,
        Implication::WeaklyApnDegreeSpectrum,
        Implication::WeaklyApnDegreeSpectrumSharp,
        Implication::OptimalHighDegreeImpliesWeaklyApn,
    ];

    pub fn applies_to(self, m: u32) -> bool {
        self == Implication::WeaklyApnBoundsNHat || m == 4
    }

    /// `(hypothesis, conclusion)` for one analysed S-box.
    pub fn evaluate(self, r: &AnalysisReport) -> (bool, bool) {
        let n3 = r.n(3);
        match self {
            Implication::AntiInvariantImpliesWeaklyApn => (
                r.delta_star <= 4 && r.anti_invariant_2 == Some(true),
                r.weakly_apn,
            ),
            Implication::NoConstantDerivativeComponentImpliesWeaklyApn => {
                (r.n_hat == 0, r.weakly_apn)
            }
            Implication::WeaklyApnBoundsNHat => (r.weakly_apn, r.n_hat <= 1),
            Implication::WeaklyApnDegreeSpectrum => {
                (r.weakly_apn, r.degree == 3 && [12, 14, 15].contains(&n3))
            }
            Implication::WeaklyApnDegreeSpectrumSharp => {
                (r.weakly_apn, r.degree == 3 && [14, 15].contains(&n3))
            }
            Implication::OptimalHighDegreeImpliesWeaklyApn => {
                (r.lin == 8 && r.delta_star <= 4 && n3 >= 14, r.weakly_apn)
            }
        }
    }
}

/// Slow-path recomputation attached to a violation, to tell a fast-path bug
/// from a genuine counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRecheck {
    pub delta_star: u32,
    pub lin: u32,
    pub weakly_apn: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub table: String,
    pub report: AnalysisReport,
    pub oracle: OracleRecheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImplicationResult {
    pub implication: Implication,
    pub m: u32,
    pub checked: u64,
    pub holds: u64,
    pub vacuous: u64,
    pub violations: u64,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImplicationReport {
    pub samples: u64,
    pub seed: u64,
    pub dims: Vec<u32>,
    pub results: Vec<ImplicationResult>,
}

impl ImplicationReport {
    pub fn violation_count(&self) -> u64 {
        self.results.iter().map(|r| r.violations).sum()
    }

    pub fn result(&self, implication: Implication, m: u32) -> Option<&ImplicationResult> {
        self.results
            .iter()
            .find(|r| r.implication == implication && r.m == m)
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report is always serializable");
        serde_json::to_string_pretty(&value).expect("JSON values always serialize")
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "{} samples per dimension, seed {}, dims {:?}\n",
            self.samples, self.seed, self.dims
        );
        for r in &self.results {
            let tag = if r.violations == 0 { "OK  " } else { "FAIL" };
            out.push_str(&format!(
                "[{tag}] m={} {:<52} checked {:>7}  holds {:>7}  vacuous {:>7}  violations {}\n",
                r.m,
                serde_json::to_value(r.implication)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_owned))
                    .unwrap_or_default(),
                r.checked,
                r.holds,
                r.vacuous,
                r.violations
            ));
            for w in &r.witnesses {
                out.push_str(&format!(
                    "       witness {} (oracle: delta* {}, Lin {}, weakly APN {})\n",
                    w.table, w.oracle.delta_star, w.oracle.lin, w.oracle.weakly_apn
                ));
            }
        }
        out
    }
}

fn tally(m: u32, sboxes: impl IntoIterator<Item = SBox>) -> Vec<ImplicationResult> {
    let mut results: Vec<ImplicationResult> = Implication::ALL
        .into_iter()
        .filter(|i| i.applies_to(m))
        .map(|implication| ImplicationResult {
            implication,
            m,
            checked: 0,
            holds: 0,
            vacuous: 0,
            violations: 0,
            witnesses: Vec::new(),
        })
        .collect();
    for f in sboxes {
        let report = analyze(&f);
        for r in results.iter_mut() {
            r.checked += 1;
            match r.implication.evaluate(&report) {
                (false, _) => r.vacuous += 1,
                (true, true) => r.holds += 1,
                (true, false) => {
                    r.violations += 1;
                    if r.witnesses.len() < MAX_WITNESSES {
                        r.witnesses.push(Witness {
                            table: f.to_csv(),
                            report: report.clone(),
                            oracle: OracleRecheck {
                                delta_star: oracle::delta_star(&f),
                                lin: oracle::lin(&f),
                                weakly_apn: oracle::weakly_apn_by_sets(&f),
                            },
                        });
                    }
                }
            }
        }
    }
    results
}

fn merge(into: &mut [ImplicationResult], from: Vec<ImplicationResult>) {
    for (a, b) in into.iter_mut().zip(from) {
        debug_assert_eq!(a.implication, b.implication);
        a.checked += b.checked;
        a.holds += b.holds;
        a.vacuous += b.vacuous;
        a.violations += b.violations;
        let room = MAX_WITNESSES.saturating_sub(a.witnesses.len());
        a.witnesses.extend(b.witnesses.into_iter().take(room));
    }
}

/// Tables always checked in addition to the random samples: the identity
/// (every hypothesis false) and, in odd dimension, the APN cube map.
pub fn forced_samples(m: u32) -> Vec<SBox> {
    let mut out = vec![SBox::identity(m).expect("supported dimension")];
    if m % 2 == 1 {
        out.push(power_map(m, 3));
    }
    out
}

/// Random batch `batch` of dimension `m`; its stream depends only on
/// `(seed, m, batch)`, so results do not depend on the worker count.
fn batch_samples(seed: u64, m: u32, batch: u64, count: u64) -> Vec<SBox> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((u64::from(m) << 40) | batch);
    (0..count)
        .map(|_| random_normalized_permutation(m, &mut rng))
        .collect()
}

/// Evaluates every applicable implication on `samples` seeded random
/// normalized permutations per dimension (plus the forced tables).
pub fn check_implications(
    samples: u64,
    seed: u64,
    dims: &[u32],
    threads: Option<usize>,
) -> Result<ImplicationReport> {
    if samples == 0 {
        return Err(SboxError::InvalidDims(
            "sample count must be positive".into(),
        ));
    }
    if dims.is_empty() {
        return Err(SboxError::InvalidDims("no dimensions given".into()));
    }
    if let Some(bad) = dims.iter().find(|m| !SUPPORTED_DIMS.contains(m)) {
        return Err(SboxError::InvalidDims(format!(
            "dimension {bad} is not one of {SUPPORTED_DIMS:?}"
        )));
    }
    let mut dims = dims.to_vec();
    dims.sort_unstable();
    dims.dedup();

    let jobs: Vec<(u32, u64, u64)> = dims
        .iter()
        .flat_map(|&m| {
            (0..samples.div_ceil(BATCH)).map(move |b| (m, b, BATCH.min(samples - b * BATCH)))
        })
        .collect();
    let run = |&(m, b, count): &(u32, u64, u64)| (m, tally(m, batch_samples(seed, m, b, count)));

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .expect("worker pool construction does not fail for a positive size");
    let partials: Vec<(u32, Vec<ImplicationResult>)> =
        pool.install(|| jobs.par_iter().map(run).collect());

    let mut results = Vec::new();
    for &m in &dims {
        let mut acc = tally(m, forced_samples(m));
        for (pm, part) in partials.iter().filter(|(pm, _)| *pm == m) {
            debug_assert_eq!(*pm, m);
            merge(&mut acc, part.clone());
        }
        results.extend(acc);
    }
    Ok(ImplicationReport {
        samples,
        seed,
        dims,
        results,
    })
}
