//! Serializable result records and their text renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::exact::{Params, Quantity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Quad,
    Oracle,
    Brute,
}

/// One computed quantity. Exact integers travel as decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComputationResult {
    pub quantity: Quantity,
    pub params: Params,
    pub method: Method,
    pub form: Option<String>,
    pub value: Option<String>,
    pub float_value: Option<f64>,
    pub abs_err: Option<f64>,
    pub nodes: Option<usize>,
    pub exactness_degree: Option<u64>,
    pub elapsed_ms: f64,
    pub seed: Option<u64>,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

impl ComputationResult {
    pub const CSV_HEADER: &'static str =
        "quantity,N,s,method,form,value,float_value,abs_err,nodes,exactness_degree,elapsed_ms,seed";

    pub fn csv_row(&self) -> String {
        [
            self.quantity.to_string(),
            opt(&self.params.n),
            self.params.s.to_string(),
            serde_plain(&self.method),
            opt(&self.form),
            opt(&self.value),
            opt(&self.float_value),
            opt(&self.abs_err),
            opt(&self.nodes),
            opt(&self.exactness_degree),
            format!("{:.3}", self.elapsed_ms),
            opt(&self.seed),
        ]
        .join(",")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "quantity: {}", self.quantity);
        let _ = writeln!(out, "params: {}", self.params);
        let _ = writeln!(out, "method: {}", serde_plain(&self.method));
        if let Some(form) = &self.form {
            let _ = writeln!(out, "form: {form}");
        }
        if let Some(v) = &self.value {
            let _ = writeln!(out, "value: {v}");
        }
        if let Some(v) = self.float_value {
            let _ = writeln!(out, "float_value: {v}");
        }
        if let Some(v) = self.abs_err {
            let _ = writeln!(out, "abs_err: {v:e}");
        }
        if let Some(v) = self.nodes {
            let _ = writeln!(out, "nodes: {v}");
        }
        if let Some(v) = self.exactness_degree {
            let _ = writeln!(out, "exactness_degree: {v}");
        }
        let _ = writeln!(out, "elapsed_ms: {:.3}", self.elapsed_ms);
        out
    }
}

/// Lower-case name of a unit enum variant, as serde renders it.
fn serde_plain<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRow {
    pub suite: String,
    pub case: String,
    pub expected: String,
    pub got: String,
    pub status: Status,
}

/// Outcome of a verification suite. Carries no timings, so equal inputs give
/// byte-identical renderings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<CaseRow>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, seed: u64, cases: Vec<CaseRow>) -> Self {
        let failed = cases.iter().filter(|c| c.status == Status::Fail).count();
        Self {
            suite: suite.into(),
            seed,
            passed: cases.len() - failed,
            failed,
            cases,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.cases {
            w.serialize(row).expect("in-memory csv write");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("utf-8 csv")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let _ = writeln!(
                out,
                "{tag} [{}] {}: expected {} got {}",
                c.suite, c.case, c.expected, c.got
            );
        }
        let _ = writeln!(
            out,
            "suite {} seed {}: {} passed, {} failed",
            self.suite, self.seed, self.passed, self.failed
        );
        out
    }
}
