//! Verdicts shared by the round-trip and pseudonaturality checks.

use serde::Serialize;

use crate::budget::Search;
use crate::fincat::{CatDiagram, DiagramMor, FunctorData};
use crate::iso::IsoWitness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Refuted,
    BudgetExceeded,
}

/// How a witness was obtained: the comparison map read off the
/// constructions, or a bounded search after that map failed to verify.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Canonical,
    Search,
}

#[derive(Clone, Debug)]
pub struct RoundtripReport {
    pub verdict: Verdict,
    pub method: Option<Method>,
    pub witness: Option<IsoWitness>,
    pub detail: String,
}

impl RoundtripReport {
    pub(crate) fn refuted(detail: impl Into<String>) -> Self {
        RoundtripReport {
            verdict: Verdict::Refuted,
            method: None,
            witness: None,
            detail: detail.into(),
        }
    }

    pub(crate) fn canonical(w: IsoWitness, detail: impl Into<String>) -> Self {
        RoundtripReport {
            verdict: Verdict::Pass,
            method: Some(Method::Canonical),
            witness: Some(w),
            detail: detail.into(),
        }
    }

    pub(crate) fn from_search(s: Search<IsoWitness>, what: &str) -> Self {
        match s {
            Search::Found(w) => match w.verify() {
                Ok(()) => RoundtripReport {
                    verdict: Verdict::Pass,
                    method: Some(Method::Search),
                    witness: Some(w),
                    detail: format!("{what}: isomorphism found by search"),
                },
                Err(e) => {
                    RoundtripReport::refuted(format!("{what}: witness failed to verify: {}", e.0))
                }
            },
            Search::ProvedNone => {
                RoundtripReport::refuted(format!("{what}: no isomorphism exists"))
            }
            Search::Exceeded => RoundtripReport {
                verdict: Verdict::BudgetExceeded,
                method: Some(Method::Search),
                witness: None,
                detail: format!("{what}: search budget exhausted"),
            },
        }
    }
}

/// Bijective components assembled into a verified diagram isomorphism.
pub(crate) fn diagram_iso(
    source: &CatDiagram,
    target: &CatDiagram,
    comps: Vec<FunctorData>,
) -> Option<IsoWitness> {
    let inverses: Vec<FunctorData> = comps.iter().map(|c| c.inverse()).collect::<Option<_>>()?;
    let forward = DiagramMor::new(source.clone(), target.clone(), comps).ok()?;
    let backward = DiagramMor::new(target.clone(), source.clone(), inverses).ok()?;
    let w = IsoWitness::Diagram { forward, backward };
    w.verify().ok().map(|()| w)
}
