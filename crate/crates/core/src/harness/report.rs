use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::nevanlinna::IntervalSet;

pub const SCHEMA: &str = "merodiff.report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    /// The bound failed and masking was cut off by its budget.
    #[serde(rename = "FAIL_MASK")]
    FailMask,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::FailMask => "FAIL_MASK",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub r: f64,
    pub value: f64,
    pub masked: bool,
    pub extra: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub schema: &'static str,
    pub experiment: String,
    pub claim: String,
    pub function: String,
    pub parameters: BTreeMap<String, String>,
    /// Names of the `extra` columns.
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
    pub masked: IntervalSet,
    pub masked_log_measure: f64,
    pub slope: Option<f64>,
    pub half_width: Option<f64>,
    pub bound: Option<f64>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    /// Columns `r,value,masked` then the experiment-specific ones; summary
    /// lines are `#` comments at the top.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# schema={SCHEMA}");
        let _ = writeln!(out, "# experiment={} function={} verdict={}", self.experiment, self.function, self.verdict.label());
        if let Some(s) = self.slope {
            let _ = writeln!(
                out,
                "# slope={} half_width={} bound={} masked_log_measure={}",
                num(s),
                num(self.half_width.unwrap_or(f64::NAN)),
                num(self.bound.unwrap_or(f64::NAN)),
                num(self.masked_log_measure)
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "# {n}");
        }
        let mut header = vec!["r".to_string(), "value".into(), "masked".into()];
        header.extend(self.columns.iter().cloned());
        let _ = writeln!(out, "{}", header.join(","));
        for row in &self.rows {
            let mut cells = vec![num(row.r), num(row.value), u8::from(row.masked).to_string()];
            cells.extend(row.extra.iter().map(|&x| num(x)));
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// One-line summary.
    pub fn summary(&self) -> String {
        let mut s = format!("{} {} [{}]", self.experiment, self.verdict.label(), self.function);
        if let (Some(slope), Some(bound)) = (self.slope, self.bound) {
            let _ = write!(s, " slope={slope:.4} bound={bound:.4} masked_lm={:.4}", self.masked_log_measure);
        }
        s
    }
}
