//! Structured verifier outcomes.
//!
//! JSON field order is fixed: `schema`, `command`, `inputs`, `quantities`,
//! `assertions`, `config`. Maps keep insertion order.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cube::{BooleanFunction, RealFunction};

pub const SCHEMA_VERSION: u32 = 1;

/// Relative tolerance: `lhs <= rhs` passes when `lhs <= rhs + rel * max(1, |rhs|)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance(pub f64);

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(1e-9)
    }
}

impl Tolerance {
    /// Zero slack, for identities that are exact in dyadic arithmetic.
    pub const EXACT: Tolerance = Tolerance(0.0);

    #[inline]
    pub fn slack(self, rhs: f64) -> f64 {
        self.0 * rhs.abs().max(1.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "==")]
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "==",
        }
    }

    pub fn holds(self, lhs: f64, rhs: f64, tol: Tolerance) -> bool {
        match self {
            Relation::Le => lhs <= rhs + tol.slack(rhs),
            Relation::Ge => lhs + tol.slack(rhs) >= rhs,
            Relation::Eq => (lhs - rhs).abs() <= tol.slack(rhs),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub log_base: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: IndexMap<String, Value>,
    pub quantities: IndexMap<String, f64>,
    pub assertions: Vec<Assertion>,
    pub config: ReportConfig,
    /// Structured payload such as a coalition trace or a leaderboard.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub details: Option<Value>,
    #[serde(skip)]
    tol: Tolerance,
}

impl Report {
    pub fn new(command: impl Into<String>, tol: Tolerance) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.into(),
            inputs: IndexMap::new(),
            quantities: IndexMap::new(),
            assertions: Vec::new(),
            config: ReportConfig { tolerance: tol.0, log_base: None, seed: None },
            details: None,
            tol,
        }
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    pub fn input(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(name.to_owned(), value.into());
        self
    }

    pub fn quantity(&mut self, name: &str, value: f64) -> &mut Self {
        self.quantities.insert(name.to_owned(), value);
        self
    }

    pub fn log_base(&mut self, base: &str) -> &mut Self {
        self.config.log_base = Some(base.to_owned());
        self
    }

    pub fn seed(&mut self, seed: u64) -> &mut Self {
        self.config.seed = Some(seed);
        self
    }

    pub fn details(&mut self, value: impl Serialize) -> &mut Self {
        self.details = Some(serde_json::to_value(value).expect("details serialize"));
        self
    }

    pub fn assert_with(
        &mut self,
        name: &str,
        lhs: f64,
        relation: Relation,
        rhs: f64,
        tol: Tolerance,
    ) -> bool {
        let pass = relation.holds(lhs, rhs, tol);
        self.assertions.push(Assertion {
            name: name.to_owned(),
            lhs,
            rhs,
            relation,
            pass,
            witness: None,
        });
        pass
    }

    pub fn assert_le(&mut self, name: &str, lhs: f64, rhs: f64) -> bool {
        self.assert_with(name, lhs, Relation::Le, rhs, self.tol)
    }

    pub fn assert_ge(&mut self, name: &str, lhs: f64, rhs: f64) -> bool {
        self.assert_with(name, lhs, Relation::Ge, rhs, self.tol)
    }

    pub fn assert_eq(&mut self, name: &str, lhs: f64, rhs: f64) -> bool {
        self.assert_with(name, lhs, Relation::Eq, rhs, self.tol)
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.pass)
    }

    /// Attaches `witness` to every failing assertion that has none yet.
    pub fn attach_witness(&mut self, witness: &str) {
        for a in self.assertions.iter_mut().filter(|a| !a.pass && a.witness.is_none()) {
            a.witness = Some(witness.to_owned());
        }
    }

    pub(crate) fn witness_boolean(&mut self, f: &BooleanFunction) {
        if !self.passed() {
            self.attach_witness(&crate::format::write_bfn(f));
        }
    }

    pub(crate) fn witness_real(&mut self, f: &RealFunction) {
        if !self.passed() {
            self.attach_witness(&crate::format::write_real(f));
        }
    }

    /// Appends another report's rows, prefixing names with `prefix`.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for (k, v) in other.quantities {
            self.quantities.insert(format!("{prefix}{k}"), v);
        }
        for mut a in other.assertions {
            a.name = format!("{prefix}{}", a.name);
            self.assertions.push(a);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable table.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "  input     {k:<28} {v}");
        }
        for (k, v) in &self.quantities {
            let _ = writeln!(out, "  quantity  {k:<28} {v:.12}");
        }
        for a in &self.assertions {
            let _ = writeln!(
                out,
                "  [{}] {:<32} {:.12} {} {:.12}",
                if a.pass { "PASS" } else { "FAIL" },
                a.name,
                a.lhs,
                a.relation.symbol(),
                a.rhs
            );
            if let Some(w) = &a.witness {
                let _ = writeln!(out, "         witness: {}", w.replace('\n', " | "));
            }
        }
        out
    }
}
