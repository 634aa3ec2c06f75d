use std::collections::BTreeMap;

use bjorling_core::PatchCertificate;
use bjorling_core::Tolerances;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparator {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = ">")]
    Greater,
}

impl Comparator {
    pub fn holds(self, value: f64, tolerance: f64) -> bool {
        match self {
            Comparator::Less => value < tolerance,
            Comparator::Greater => value > tolerance,
        }
    }
}

/// One pass/fail flag: `pass == (value comparator tolerance)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub comparator: Comparator,
    pub pass: bool,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        value: f64,
        comparator: Comparator,
        tolerance: f64,
    ) -> Self {
        Check {
            name: name.into(),
            value,
            tolerance,
            comparator,
            pass: comparator.holds(value, tolerance),
        }
    }

    pub fn less(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self::new(name, value, Comparator::Less, tolerance)
    }

    /// A stage that could not run at all; recorded so the report stays
    /// complete.
    pub fn failed(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            value: f64::NAN,
            tolerance: 0.0,
            comparator: Comparator::Less,
            pass: false,
        }
    }
}

/// Checks and numbers for one surface.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub name: String,
    pub all_pass: bool,
    pub checks: Vec<Check>,
    pub results: BTreeMap<String, Value>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Section {
            name: name.into(),
            all_pass: true,
            ..Default::default()
        }
    }

    pub fn check(&mut self, c: Check) {
        self.all_pass &= c.pass;
        self.checks.push(c);
    }

    pub fn result(&mut self, key: &str, v: impl Serialize) {
        self.results.insert(
            key.to_string(),
            serde_json::to_value(v).unwrap_or(Value::Null),
        );
    }

    pub fn certificate(&mut self, cert: &PatchCertificate, tol: &Tolerances) {
        for (name, value, bound, _) in cert.checks(tol) {
            self.check(Check::less(name, value, bound));
        }
        self.check(Check::new(
            "immersion_margin_min",
            cert.margin_min,
            Comparator::Greater,
            0.0,
        ));
        self.result("certificate", cert);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub tool_version: &'static str,
    pub config: RunConfig,
    pub samples: BTreeMap<&'static str, usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: &'static str,
    /// Seconds since the Unix epoch; the only field that varies between
    /// identical runs.
    pub timestamp: u64,
    pub all_pass: bool,
    pub sections: Vec<Section>,
    pub provenance: Provenance,
}

impl Report {
    pub fn new(
        config: &RunConfig,
        sections: Vec<Section>,
        samples: BTreeMap<&'static str, usize>,
    ) -> Self {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Report {
            schema_version: SCHEMA_VERSION,
            command: config.command.name(),
            timestamp,
            all_pass: sections.iter().all(|s| s.all_pass),
            sections,
            provenance: Provenance {
                tool_version: env!("CARGO_PKG_VERSION"),
                config: config.clone(),
                samples,
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
