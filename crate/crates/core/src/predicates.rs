//! Composite verdicts (optimal, strong, very strong) and the one-shot report.

use serde::{Deserialize, Serialize};

use crate::differential::Ddt;
use crate::invariance::is_strongly_anti_invariant;
use crate::spectral::{degree_spectrum, n_hat, walsh_spectrum, DegreeSpectrum};
use crate::{Result, SBox, SboxError};

/// Every measure of one S-box.
///
/// Fields that only make sense for particular inputs are `None` when not
/// applicable: anti-invariance needs a normalized permutation, the verdicts
/// additionally need `m = 4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub sbox: String,
    pub m: u32,
    pub bijective: bool,
    pub normalized: bool,
    pub delta_star: u32,
    pub weakly_apn: bool,
    /// Smallest derivative image `min_{u != 0} |Im(f_u)|`.
    pub weak_delta_profile: usize,
    pub lin: u32,
    pub lin1: u32,
    pub diff1: u32,
    pub degree: i32,
    pub degree_spectrum: DegreeSpectrum,
    pub n_hat: usize,
    pub anti_invariant_1: Option<bool>,
    pub anti_invariant_2: Option<bool>,
    pub optimal: Option<bool>,
    pub strong: Option<bool>,
    pub very_strong: Option<bool>,
}

/// The measures the strong predicate looks at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrongCriteria {
    pub weakly_apn: bool,
    pub delta_star: u32,
    pub lin: u32,
    pub diff1: u32,
    pub lin1: u32,
    pub n3: usize,
}

impl StrongCriteria {
    pub fn is_optimal(&self) -> bool {
        self.lin == 8 && self.delta_star <= 4
    }

    pub fn is_strong(&self) -> bool {
        self.weakly_apn
            && self.delta_star <= 4
            && self.lin == 8
            && self.diff1 == 0
            && self.lin1 == 4
            && self.n3 >= 14
    }
}

impl AnalysisReport {
    pub fn n(&self, degree: i32) -> usize {
        self.degree_spectrum.get(degree)
    }

    fn criteria(&self) -> StrongCriteria {
        StrongCriteria {
            weakly_apn: self.weakly_apn,
            delta_star: self.delta_star,
            lin: self.lin,
            diff1: self.diff1,
            lin1: self.lin1,
            n3: self.n(3),
        }
    }

    /// Recomputes the verdicts from the measure fields and compares.
    pub fn verdicts_consistent(&self) -> bool {
        let applicable = self.m == 4 && self.bijective && self.normalized;
        let c = self.criteria();
        let optimal = (self.m == 4 && self.bijective).then(|| c.is_optimal());
        let strong = applicable.then(|| c.is_strong());
        let very_strong = match (strong, self.anti_invariant_2) {
            (Some(s), Some(ai)) => Some(s && ai),
            _ => None,
        };
        self.optimal == optimal
            && self.strong == strong
            && self.very_strong == very_strong
            && self.weakly_apn == (4 * self.weak_delta_profile > 1 << self.m)
            && self.degree == self.degree_spectrum.max_degree()
    }

    pub fn to_json(&self) -> String {
        // Value maps are key-sorted, which keeps the output byte-stable.
        let value = serde_json::to_value(self).expect("report is always serializable");
        serde_json::to_string(&value).expect("JSON values always serialize")
    }
}

pub fn analyze(f: &SBox) -> AnalysisReport {
    let table = Ddt::of(f);
    let walsh = walsh_spectrum(f);
    let spectrum = degree_spectrum(f);
    let bijective = f.is_bijective();
    let normalized = f.is_normalized();

    let anti = |level| {
        (bijective && normalized)
            .then(|| is_strongly_anti_invariant(f, level).ok())
            .flatten()
    };
    let anti_invariant_1 = anti(1);
    let anti_invariant_2 = anti(2);

    let mut report = AnalysisReport {
        sbox: f.to_csv(),
        m: f.dimension(),
        bijective,
        normalized,
        delta_star: table.differential_uniformity(),
        weakly_apn: table.is_weakly_delta_uniform(2),
        weak_delta_profile: table.min_image_size(),
        lin: walsh.lin(),
        lin1: walsh.lin1(),
        diff1: table.diff1(),
        degree: spectrum.max_degree(),
        degree_spectrum: spectrum,
        n_hat: n_hat(f),
        anti_invariant_1,
        anti_invariant_2,
        optimal: None,
        strong: None,
        very_strong: None,
    };
    let c = report.criteria();
    if f.dimension() == 4 && bijective {
        report.optimal = Some(c.is_optimal());
        if normalized {
            let strong = c.is_strong();
            report.strong = Some(strong);
            report.very_strong = anti_invariant_2.map(|ai| strong && ai);
        }
    }
    report
}

fn require_four_bit_permutation(f: &SBox) -> Result<()> {
    if f.dimension() != 4 {
        return Err(SboxError::WrongDimension {
            expected: 4,
            found: f.dimension(),
        });
    }
    if !f.is_bijective() {
        return Err(SboxError::NotBijective);
    }
    Ok(())
}

fn require_strong_input(f: &SBox) -> Result<()> {
    require_four_bit_permutation(f)?;
    if !f.is_normalized() {
        return Err(SboxError::NotNormalized(f.apply(0)));
    }
    Ok(())
}

/// `Lin(f) = 8` and `f` is 4-differentially uniform.
pub fn is_optimal(f: &SBox) -> Result<bool> {
    require_four_bit_permutation(f)?;
    Ok(walsh_spectrum(f).lin() == 8 && Ddt::of(f).differential_uniformity() <= 4)
}

/// Weakly APN, 4-differentially uniform, `Lin = 8`, `Diff1 = 0`, `Lin1 = 4`
/// and `n_3 >= 14`. Cheap DDT checks run before the Walsh and degree work.
pub fn is_strong(f: &SBox) -> Result<bool> {
    require_strong_input(f)?;
    let table = Ddt::of(f);
    if table.diff1() != 0
        || table.differential_uniformity() > 4
        || !table.is_weakly_delta_uniform(2)
    {
        return Ok(false);
    }
    let walsh = walsh_spectrum(f);
    if walsh.lin() != 8 || walsh.lin1() != 4 {
        return Ok(false);
    }
    Ok(degree_spectrum(f).get(3) >= 14)
}

/// Strong and strongly 2-anti-invariant.
pub fn is_very_strong(f: &SBox) -> Result<bool> {
    Ok(is_strong(f)? && is_strongly_anti_invariant(f, 2)?)
}
