use serde::Serialize;

use crate::goldens::{Golden, Provenance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
    Timeout,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
            Status::Timeout => "timeout",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueEntry {
    pub name: String,
    pub value: String,
    pub provenance: Provenance,
    /// Golden value when it differs from `value`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub scenario: String,
    pub anchor: String,
    pub values: Vec<ValueEntry>,
    pub status: Status,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn empty(scenario: &str, anchor: &str) -> Report {
        Report {
            scenario: scenario.into(),
            anchor: anchor.into(),
            values: Vec::new(),
            status: Status::Pass,
            elapsed_ms: 0,
            error: None,
        }
    }

    pub fn failed(scenario: &str, anchor: &str, status: Status, msg: String) -> Report {
        Report { status, error: Some(msg), ..Report::empty(scenario, anchor) }
    }

    /// Compare computed values against the goldens, entry by entry and in order.
    pub fn compare(scenario: &str, golden: &Golden, computed: Vec<(String, String)>) -> Report {
        let mut values = Vec::new();
        let mut ok = computed.len() == golden.values.len();
        for (i, (name, value)) in computed.into_iter().enumerate() {
            let g = golden.values.get(i).filter(|g| g.name == name);
            let expected = match g {
                Some(g) if g.value == value => None,
                Some(g) => Some(g.value.clone()),
                None => Some("<no golden>".into()),
            };
            ok &= expected.is_none();
            let provenance = g.map_or(Provenance::Computed, |g| g.provenance);
            values.push(ValueEntry { name, value, provenance, expected });
        }
        let error = (!ok && values.len() != golden.values.len())
            .then(|| format!("{} values computed, {} expected", values.len(), golden.values.len()));
        Report {
            scenario: scenario.into(),
            anchor: golden.anchor.clone(),
            values,
            status: if ok { Status::Pass } else { Status::Fail },
            elapsed_ms: 0,
            error,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn emit_text(r: &Report) -> String {
    let mut out = format!("[{}] {}\n", r.scenario, r.anchor);
    for v in &r.values {
        out.push_str(&format!("  {} = {}  ({})", v.name, v.value, v.provenance.as_str()));
        if let Some(e) = &v.expected {
            out.push_str(&format!("  expected {e}"));
        }
        out.push('\n');
    }
    if let Some(e) = &r.error {
        out.push_str(&format!("  error: {e}\n"));
    }
    out.push_str(&format!("  status: {} ({} ms)\n", r.status.as_str(), r.elapsed_ms));
    out
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Text => emit_text(r),
        Format::Json => serde_json::to_string_pretty(r).expect("report serializes") + "\n",
    }
}

pub fn emit_reports(rs: &[Report], format: Format) -> String {
    match format {
        Format::Text => rs.iter().map(emit_text).collect::<Vec<_>>().join("\n"),
        Format::Json => serde_json::to_string_pretty(rs).expect("reports serialize") + "\n",
    }
}
