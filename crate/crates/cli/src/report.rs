//! The JSON documents written to standard output.
//!
//! Integers that may exceed 64 bits are strings.

use std::collections::BTreeMap;

use apcover_core::below::{CoverPart, TuscInstance};
use apcover_core::zp::ZpAp;
use apcover_core::Ap;
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct ApJson {
    pub first: String,
    pub diff: String,
    pub len: usize,
}

impl From<&Ap> for ApJson {
    fn from(a: &Ap) -> Self {
        ApJson {
            first: a.first().to_string(),
            diff: a.diff().to_string(),
            len: a.len(),
        }
    }
}

impl From<&ZpAp> for ApJson {
    fn from(a: &ZpAp) -> Self {
        ApJson {
            first: a.start.to_string(),
            diff: a.diff.to_string(),
            len: a.len,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SetJson {
    /// Index of the explicit set, absent for sets from the implicit family.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explicit: Option<usize>,
    pub elements: Vec<usize>,
}

impl SetJson {
    pub fn new(part: &CoverPart, inst: &TuscInstance) -> Self {
        SetJson {
            explicit: match part {
                CoverPart::Explicit(i) => Some(*i),
                CoverPart::Small(_) => None,
            },
            elements: part.elements(inst).to_vec(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Progressions(Vec<ApJson>),
    Sets(Vec<SetJson>),
}

impl Witness {
    pub fn size(&self) -> usize {
        match self {
            Witness::Progressions(v) => v.len(),
            Witness::Sets(v) => v.len(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub problem: &'static str,
    pub minimize: bool,
    pub decision: Decision,
    /// The budget asked about, or the minimum found.
    pub k: usize,
    pub n: usize,
    /// Cover size the decision is about for below-guarantee problems.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub elapsed_ms: f64,
    pub stats: BTreeMap<&'static str, u64>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub problem: &'static str,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SuiteJson {
    pub suite: &'static str,
    pub cases: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleJson>,
}

#[derive(Debug, Serialize)]
pub struct CounterexampleJson {
    pub case: u64,
    pub instance: Vec<String>,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct ProptestReport {
    pub seed: u64,
    pub budget: u64,
    pub passed: bool,
    pub suites: Vec<SuiteJson>,
}
