//! Report assembly, JSON serialization and CSV scan output.

use std::io::{self, Write};

use serde::Serialize;
use serde_json::Value;

use kummer_core::curvature::{GlueScan, MuReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    /// Reported value with nothing to check it against.
    #[serde(rename = "INFO")]
    Info,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim {
    pub module: &'static str,
    pub id: String,
    pub status: Status,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl Claim {
    pub fn info(module: &'static str, id: &str, value: impl ToString) -> Self {
        Claim { module, id: id.to_string(), status: Status::Info, value: value.to_string(), expected: None, tolerance: None }
    }

    pub fn check(module: &'static str, id: &str, ok: bool, value: impl ToString) -> Self {
        Claim { status: Status::from_bool(ok), ..Claim::info(module, id, value) }
    }

    /// Numeric check `ok` at the given tolerance.
    pub fn within(module: &'static str, id: &str, ok: bool, value: f64, tolerance: f64) -> Self {
        Claim { tolerance: Some(tolerance), ..Claim::check(module, id, ok, format!("{value:.6e}")) }
    }

    /// Comparison against the spec's expected block.
    pub fn expect<T: PartialEq + ToString>(module: &'static str, id: &str, actual: &T, expected: &T) -> Self {
        Claim {
            expected: Some(expected.to_string()),
            ..Claim::check(module, id, actual == expected, actual.to_string())
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecEcho {
    pub name: String,
    pub version: u32,
    pub dimension: usize,
    pub generators: Vec<String>,
    pub source: String,
}

/// One block per module that ran, in pipeline order.
#[derive(Clone, Debug, Serialize)]
pub struct ModuleBlock {
    pub module: &'static str,
    pub data: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub spec: SpecEcho,
    pub modules: Vec<ModuleBlock>,
    pub claims: Vec<Claim>,
    pub notes: Vec<String>,
    pub overall: Status,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn module(&self, name: &str) -> Option<&Value> {
        self.modules.iter().find(|m| m.module == name).map(|m| &m.data)
    }

    pub fn claim(&self, module: &str, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.module == module && c.id == id)
    }

    /// Pretty JSON with sorted object keys; identical inputs give identical
    /// bytes.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report is always serializable");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn write_text(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "spec: {} (version {}, n = {})", self.spec.name, self.spec.version, self.spec.dimension)?;
        for c in &self.claims {
            write!(out, "{:<4} {:<14} {:<34} {}", c.status.label(), c.module, c.id, c.value)?;
            if let Some(e) = &c.expected {
                write!(out, " (expected {e})")?;
            }
            if let Some(t) = c.tolerance {
                write!(out, " (tol {t:.1e})")?;
            }
            writeln!(out)?;
        }
        for n in &self.notes {
            writeln!(out, "note: {n}")?;
        }
        writeln!(out, "overall: {}", self.overall.label())
    }
}

/// Float rounded to ten significant digits so that reports do not depend on
/// the last bits of a platform's libm.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        let rounded: f64 = format!("{x:.9e}").parse().expect("formatted float parses");
        serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
    } else {
        Value::Null
    }
}

pub const ANNULUS_CSV_HEADER: &str = "d,r_sup,sup_ric_annulus,sup_rm_annulus";
pub const MU_CSV_HEADER: &str = "d,rescaled_sup_ric,diam_bound,mu_proxy";

pub fn write_annulus_csv(out: &mut impl Write, scan: &GlueScan) -> io::Result<()> {
    writeln!(out, "{ANNULUS_CSV_HEADER}")?;
    for r in &scan.rows {
        writeln!(out, "{:.9e},{:.9e},{:.9e},{:.9e}", r.d, r.r_sup, r.sup_ric, r.sup_rm)?;
    }
    Ok(())
}

pub fn write_mu_csv(out: &mut impl Write, mu: &MuReport) -> io::Result<()> {
    writeln!(out, "{MU_CSV_HEADER}")?;
    for r in &mu.rows {
        writeln!(out, "{:.9e},{:.9e},{:.9e},{:.9e}", r.d, r.rescaled_sup_ric, r.diam_bound, r.mu_proxy)?;
    }
    Ok(())
}
