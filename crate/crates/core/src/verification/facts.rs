//! Fixed-table facts: each case names fixture S-boxes and the measure
//! values they are claimed to have.

use std::fmt;

use serde::Serialize;

use super::fixtures::{lookup, FixtureSource, NamedSbox, COUNTEREXAMPLE_FILE, SERPENT_FILE};
use crate::predicates::{analyze, AnalysisReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Bijective,
    WeaklyApn,
    DeltaStar,
    NHat,
    Degree,
    N3,
    Lin,
    Strong,
    VeryStrong,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Observed {
    Int(i64),
    Bool(bool),
    NotApplicable,
}

impl Measure {
    fn read(self, r: &AnalysisReport) -> Observed {
        use Observed::*;
        let opt = |v: Option<bool>| v.map_or(NotApplicable, Bool);
        match self {
            Measure::Bijective => Bool(r.bijective),
            Measure::WeaklyApn => Bool(r.weakly_apn),
            Measure::DeltaStar => Int(r.delta_star.into()),
            Measure::NHat => Int(r.n_hat as i64),
            Measure::Degree => Int(r.degree.into()),
            Measure::N3 => Int(r.n(3) as i64),
            Measure::Lin => Int(r.lin.into()),
            Measure::Strong => opt(r.strong),
            Measure::VeryStrong => opt(r.very_strong),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Equals(i64),
    GreaterThan(i64),
    AtMost(i64),
    Is(bool),
}

impl Expectation {
    fn holds(self, observed: Observed) -> bool {
        match (self, observed) {
            (Expectation::Equals(e), Observed::Int(o)) => o == e,
            (Expectation::GreaterThan(e), Observed::Int(o)) => o > e,
            (Expectation::AtMost(e), Observed::Int(o)) => o <= e,
            (Expectation::Is(e), Observed::Bool(o)) => o == e,
            _ => false,
        }
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Equals(v) => write!(f, "== {v}"),
            Expectation::GreaterThan(v) => write!(f, "> {v}"),
            Expectation::AtMost(v) => write!(f, "<= {v}"),
            Expectation::Is(v) => write!(f, "is {v}"),
        }
    }
}

impl Serialize for Expectation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub subject: String,
    pub measure: Measure,
    pub expected: Expectation,
    pub observed: Observed,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactStatus {
    Pass,
    Fail,
    MissingFixture,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactCase {
    pub id: &'static str,
    pub statement: &'static str,
    pub status: FactStatus,
    pub claims: Vec<Claim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactReport {
    pub cases: Vec<FactCase>,
}

impl FactReport {
    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.status == FactStatus::Pass)
    }

    pub fn case(&self, id: &str) -> Option<&FactCase> {
        self.cases.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report is always serializable");
        serde_json::to_string_pretty(&value).expect("JSON values always serialize")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for case in &self.cases {
            let tag = match case.status {
                FactStatus::Pass => "PASS",
                FactStatus::Fail => "FAIL",
                FactStatus::MissingFixture => "MISSING",
            };
            out.push_str(&format!("[{tag}] {}: {}\n", case.id, case.statement));
            if let Some(err) = &case.error {
                out.push_str(&format!("       error: {err}\n"));
            }
            for claim in case.claims.iter().filter(|c| !c.holds) {
                out.push_str(&format!(
                    "       {} {:?}: expected {}, observed {:?}\n",
                    claim.subject, claim.measure, claim.expected, claim.observed
                ));
            }
            if let Some(note) = case.note {
                out.push_str(&format!("       note: {note}\n"));
            }
        }
        out
    }
}

struct CaseSpec {
    id: &'static str,
    statement: &'static str,
    file: &'static str,
    normalize: bool,
    note: Option<&'static str>,
    claims: Vec<(&'static str, Measure, Expectation)>,
}

fn case_specs() -> Vec<CaseSpec> {
    use Expectation::*;
    use Measure::*;

    let mut serpent_claims = Vec::new();
    for (i, name) in ["S0", "S1", "S2", "S3", "S4", "S5", "S6", "S7"]
        .into_iter()
        .enumerate()
    {
        serpent_claims.push((name, Bijective, Is(true)));
        serpent_claims.push((name, Strong, Is([3, 4, 5, 7].contains(&i))));
        serpent_claims.push((name, VeryStrong, Is(false)));
    }

    vec![
        CaseSpec {
            id: "weakly-apn-without-4-uniformity",
            statement: "f1 is weakly APN but not 4-differentially uniform",
            file: COUNTEREXAMPLE_FILE,
            normalize: false,
            note: None,
            claims: vec![
                ("f1", Bijective, Is(true)),
                ("f1", WeaklyApn, Is(true)),
                ("f1", DeltaStar, GreaterThan(4)),
            ],
        },
        CaseSpec {
            id: "weakly-apn-with-constant-derivative-component",
            statement: "f1 is weakly APN with n_hat = 1",
            file: COUNTEREXAMPLE_FILE,
            normalize: false,
            note: None,
            claims: vec![
                ("f1", Bijective, Is(true)),
                ("f1", WeaklyApn, Is(true)),
                ("f1", NHat, Equals(1)),
            ],
        },
        CaseSpec {
            id: "n-hat-bound-not-sufficient",
            statement: "f2 has n_hat = 1 but is not weakly APN",
            file: COUNTEREXAMPLE_FILE,
            normalize: false,
            note: None,
            claims: vec![
                ("f2", Bijective, Is(true)),
                ("f2", NHat, Equals(1)),
                ("f2", WeaklyApn, Is(false)),
            ],
        },
        CaseSpec {
            id: "degree-conditions-not-sufficient",
            statement: "f2 has degree 3 and n3 = 14 but is not weakly APN",
            file: COUNTEREXAMPLE_FILE,
            normalize: false,
            note: None,
            claims: vec![
                ("f2", Bijective, Is(true)),
                ("f2", Degree, Equals(3)),
                ("f2", N3, Equals(14)),
                ("f2", WeaklyApn, Is(false)),
            ],
        },
        CaseSpec {
            id: "optimal-hypotheses-necessary",
            statement: "f3 (Lin = 8, n3 = 14) and f4 (4-uniform, n3 = 14) are not weakly APN",
            file: COUNTEREXAMPLE_FILE,
            normalize: false,
            note: None,
            claims: vec![
                ("f3", Bijective, Is(true)),
                ("f3", Lin, Equals(8)),
                ("f3", N3, Equals(14)),
                ("f3", WeaklyApn, Is(false)),
                ("f4", Bijective, Is(true)),
                ("f4", DeltaStar, AtMost(4)),
                ("f4", N3, Equals(14)),
                ("f4", WeaklyApn, Is(false)),
            ],
        },
        CaseSpec {
            id: "serpent-classification",
            statement: "SERPENT S3, S4, S5, S7 are strong, the rest are not; none is very strong",
            file: SERPENT_FILE,
            normalize: true,
            note: Some(
                "SERPENT tables are normalized by output translation, x -> S(x) ^ S(0), before evaluation",
            ),
            claims: serpent_claims,
        },
    ]
}

fn run_case(spec: CaseSpec, entries: &Result<Vec<NamedSbox>, super::FixtureError>) -> FactCase {
    let mut case = FactCase {
        id: spec.id,
        statement: spec.statement,
        status: FactStatus::Pass,
        claims: Vec::new(),
        note: spec.note,
        error: None,
    };
    let entries = match entries {
        Ok(e) => e,
        Err(err) => {
            case.status = FactStatus::MissingFixture;
            case.error = Some(err.to_string());
            return case;
        }
    };
    let mut reports: Vec<(&str, AnalysisReport)> = Vec::new();
    for &(subject, measure, expected) in &spec.claims {
        let index = match reports.iter().position(|(s, _)| *s == subject) {
            Some(i) => i,
            None => match lookup(entries, spec.file, subject) {
                Ok(sbox) => {
                    let sbox = if spec.normalize {
                        sbox.normalize()
                    } else {
                        sbox.clone()
                    };
                    reports.push((subject, analyze(&sbox)));
                    reports.len() - 1
                }
                Err(err) => {
                    case.status = FactStatus::MissingFixture;
                    case.error = Some(err.to_string());
                    return case;
                }
            },
        };
        let report = &reports[index].1;
        let observed = measure.read(report);
        let holds = expected.holds(observed);
        if !holds {
            case.status = FactStatus::Fail;
        }
        case.claims.push(Claim {
            subject: subject.to_owned(),
            measure,
            expected,
            observed,
            holds,
        });
    }
    case
}

/// Checks every fixed-table fact. A missing fixture file marks only the
/// cases that need it; the rest still run.
pub fn verify_facts(source: &FixtureSource) -> FactReport {
    let counterexamples = source.load(COUNTEREXAMPLE_FILE);
    let serpent = source.load(SERPENT_FILE);
    let cases = case_specs()
        .into_iter()
        .map(|spec| {
            let entries = if spec.file == SERPENT_FILE {
                &serpent
            } else {
                &counterexamples
            };
            run_case(spec, entries)
        })
        .collect();
    FactReport { cases }
}
