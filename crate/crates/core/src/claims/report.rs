use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped-hypothesis-false")]
    SkippedHypothesisFalse,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedHypothesisFalse => "skipped-hypothesis-false",
        }
    }
}

/// First `n` where the claim breaks, with the residues on each side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: u64,
    pub index: u64,
    pub value: u64,
    pub expected: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub paper_ref: String,
    pub kind: String,
    pub params: serde_json::Value,
    pub status: Status,
    pub range: [u64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EngineInfo {
    pub name: &'static str,
    pub version: &'static str,
    pub max_order: usize,
    pub max_modular_order: usize,
}

impl Default for EngineInfo {
    fn default() -> Self {
        EngineInfo {
            name: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            max_order: crate::series::MAX_EXACT_ORDER,
            max_modular_order: crate::series::MAX_MODULAR_ORDER,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub engine: EngineInfo,
    pub claims: Vec<VerificationReport>,
}

impl Report {
    pub fn new(claims: Vec<VerificationReport>) -> Self {
        Report { schema_version: SCHEMA_VERSION, engine: EngineInfo::default(), claims }
    }

    pub fn count(&self, status: Status) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }

    pub fn all_pass(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
