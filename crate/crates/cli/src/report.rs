use std::fmt::Write;

use grothkit_core::budget::Budget;
use grothkit_core::iso::IsoWitness;
use grothkit_core::report::{Method, Verdict};
use grothkit_core::FinCat;
use grothkit_dsl::{dot, print_workspace, Workspace};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Refuted,
    /// Usage or input errors.
    Error,
    BudgetExceeded,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Refuted => 1,
            Outcome::Error => 2,
            Outcome::BudgetExceeded => 3,
        }
    }
}

impl From<Verdict> for Outcome {
    fn from(v: Verdict) -> Outcome {
        match v {
            Verdict::Pass => Outcome::Pass,
            Verdict::Refuted => Outcome::Refuted,
            Verdict::BudgetExceeded => Outcome::BudgetExceeded,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BudgetUse {
    pub used: u64,
    pub limit: u64,
}

/// The machine-readable result of one command.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub verdict: Outcome,
    pub witnesses: Vec<Value>,
    pub counterexamples: Vec<Value>,
    pub budget: BudgetUse,
    /// Human-readable lines for text mode.
    #[serde(skip)]
    pub notes: Vec<String>,
    #[serde(skip)]
    pub document: Option<String>,
    #[serde(skip)]
    pub graphs: Vec<String>,
}

impl Report {
    pub fn new(command: &str, inputs: &[String], budget: &Budget) -> Report {
        Report {
            command: command.to_owned(),
            inputs: inputs.to_vec(),
            verdict: Outcome::Pass,
            witnesses: vec![],
            counterexamples: vec![],
            budget: BudgetUse {
                used: budget.used,
                limit: budget.limit,
            },
            notes: vec![],
            document: None,
            graphs: vec![],
        }
    }

    pub fn note(&mut self, s: impl Into<String>) -> &mut Self {
        self.notes.push(s.into());
        self
    }

    pub fn witness(&mut self, v: Value) -> &mut Self {
        self.witnesses.push(v);
        self
    }

    /// Records a counterexample and marks the report refuted.
    pub fn refute(&mut self, v: Value) -> &mut Self {
        self.counterexamples.push(v);
        if self.verdict == Outcome::Pass {
            self.verdict = Outcome::Refuted;
        }
        self
    }

    pub fn set(&mut self, verdict: impl Into<Outcome>) -> &mut Self {
        self.verdict = verdict.into();
        self
    }

    pub fn document(&mut self, ws: &Workspace) -> &mut Self {
        self.document = Some(print_workspace(ws));
        self
    }

    pub fn graph(&mut self, name: &str, c: &FinCat) -> &mut Self {
        self.graphs.push(dot(name, c));
        self
    }

    pub fn spend(&mut self, budget: &Budget) -> &mut Self {
        self.budget = BudgetUse {
            used: budget.used,
            limit: budget.limit,
        };
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = serde_json::to_value(self.verdict)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned));
        let _ = writeln!(out, "{}: {}", self.command, verdict.unwrap_or_default());
        for n in &self.notes {
            let _ = writeln!(out, "  {n}");
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "  witness: {w}");
        }
        for c in &self.counterexamples {
            let _ = writeln!(out, "  counterexample: {c}");
        }
        let _ = writeln!(
            out,
            "  budget: {} of {}",
            self.budget.used, self.budget.limit
        );
        out
    }
}

/// A witness as JSON: its flavor, how it was found, and its tables.
pub fn iso_json(w: &IsoWitness, method: Option<Method>) -> Value {
    json!({ "flavor": w.flavor(), "method": method, "tables": w.tables() })
}
