//! Opfibrations in the 2-category of Cat-valued diagrams and the indexed
//! Grothendieck construction.
//!
//! A [`DiagramOpfib`] over `F` is a strict diagram morphism `φ: G ⇒ F` whose
//! components are split opfibrations and whose naturality squares are
//! cleavage preserving; this componentwise criterion is used as the
//! definition.

mod construct;
mod dual;
mod roundtrip;

use std::sync::Arc;

use serde::Serialize;

use crate::fincat::{same_cat, CatDiagram, DiagramMor, FinCat, FunctorData, Modification, ObjId};
use crate::opfib::{
    check_cleavage_preserving, check_discrete_opfib, pullback_opfib, reindex_along, Cleavage,
    CleavagePreservingFailure, CleavedOpfib, DiscreteCounterexample, OpfibError, PulledBack,
    SplitCounterexample,
};

pub use crate::report::{Method, RoundtripReport, Verdict};
pub use construct::{
    fibre_inclusion, indexed_fibres, indexed_fibres_map, indexed_groth, indexed_groth_map,
    IndexedError, IndexedFibres, IndexedGroth,
};
pub use dual::{
    check_split_fib, dualize_diagram, dualize_opfib, groth_op, representable_presheaf, DualOpfib,
};
pub use roundtrip::{
    discrete_check_diagram, discrete_check_opfib, pseudonat_check, roundtrip_diagram,
    roundtrip_opfib, DiscreteReport, PseudonatReport,
};

/// A diagram morphism `φ: G ⇒ F` with a cleavage on every component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramOpfib {
    over: CatDiagram,
    total: CatDiagram,
    components: Vec<CleavedOpfib>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiagramOpfibFailure {
    Shape {
        detail: String,
    },
    /// `F(h)∘φ_A ≠ φ_B∘G(h)`.
    Naturality {
        morphism: String,
    },
    Split {
        object: String,
        counterexample: SplitCounterexample,
    },
    Discrete {
        object: String,
        counterexample: DiscreteCounterexample,
    },
    Square {
        morphism: String,
        failure: CleavagePreservingFailure,
    },
}

impl std::fmt::Display for DiagramOpfibFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DiagramOpfibFailure::Shape { detail } => f.write_str(detail),
            DiagramOpfibFailure::Naturality { morphism } => {
                write!(f, "naturality square at `{morphism}` fails")
            }
            DiagramOpfibFailure::Split {
                object,
                counterexample,
            } => {
                write!(
                    f,
                    "component at `{object}` is not split: {counterexample:?}"
                )
            }
            DiagramOpfibFailure::Discrete {
                object,
                counterexample,
            } => write!(
                f,
                "component at `{object}` has {} lifts of `{}` from `{}`",
                counterexample.lifts, counterexample.morphism, counterexample.object
            ),
            DiagramOpfibFailure::Square { morphism, failure } => {
                write!(
                    f,
                    "square at `{morphism}` is not cleavage preserving: {failure:?}"
                )
            }
        }
    }
}

/// Every failure found; passes iff empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DiagramOpfibReport {
    pub failures: Vec<DiagramOpfibFailure>,
}

impl DiagramOpfibReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

impl std::fmt::Display for DiagramOpfibReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.failures.is_empty() {
            return f.write_str("pass");
        }
        let parts: Vec<String> = self.failures.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

impl std::error::Error for DiagramOpfibReport {}

fn shape_checks(over: &CatDiagram, total: &CatDiagram, comps: &[CleavedOpfib]) -> Option<String> {
    if !same_cat(over.base(), total.base()) {
        return Some("diagrams live on different bases".into());
    }
    let base = over.base();
    if comps.len() != base.ob_count() {
        return Some("a component is required for every base object".into());
    }
    for a in base.objects() {
        let q = &comps[a.index()];
        if !same_cat(q.total(), total.at(a)) || !same_cat(q.base(), over.at(a)) {
            return Some(format!(
                "component at `{}` has the wrong boundary",
                base.ob_name(a)
            ));
        }
    }
    None
}

/// Checks strict naturality, then each component (split, or discrete when
/// `discrete` is set) and, unless `discrete`, each square for cleavage
/// preservation.
pub fn check_diagram_opfib(
    over: &CatDiagram,
    total: &CatDiagram,
    comps: &[CleavedOpfib],
    discrete: bool,
) -> DiagramOpfibReport {
    let mut failures = Vec::new();
    if let Some(detail) = shape_checks(over, total, comps) {
        failures.push(DiagramOpfibFailure::Shape { detail });
        return DiagramOpfibReport { failures };
    }
    let base = over.base();
    for h in base.morphisms() {
        let (a, b) = (base.src(h), base.tgt(h));
        let lhs = FunctorData::compose(over.at_mor(h), comps[a.index()].functor());
        let rhs = FunctorData::compose(comps[b.index()].functor(), total.at_mor(h));
        if lhs != rhs {
            failures.push(DiagramOpfibFailure::Naturality {
                morphism: base.mor_name(h).to_owned(),
            });
        }
    }
    if !failures.is_empty() {
        return DiagramOpfibReport { failures };
    }
    for a in base.objects() {
        let q = &comps[a.index()];
        let object = base.ob_name(a).to_owned();
        if discrete {
            if let Some(counterexample) = check_discrete_opfib(q.functor()) {
                failures.push(DiagramOpfibFailure::Discrete {
                    object,
                    counterexample,
                });
            }
        } else if let Some(cx) = q.status().counterexamples().first() {
            failures.push(DiagramOpfibFailure::Split {
                object,
                counterexample: (*cx).clone(),
            });
        }
    }
    if !discrete {
        for h in base.morphisms() {
            let (a, b) = (base.src(h), base.tgt(h));
            let failure = check_cleavage_preserving(
                total.at_mor(h),
                over.at_mor(h),
                &comps[a.index()],
                &comps[b.index()],
            );
            if let Some(failure) = failure {
                failures.push(DiagramOpfibFailure::Square {
                    morphism: base.mor_name(h).to_owned(),
                    failure,
                });
            }
        }
    }
    DiagramOpfibReport { failures }
}

impl DiagramOpfib {
    pub fn new(
        over: CatDiagram,
        total: CatDiagram,
        components: Vec<CleavedOpfib>,
    ) -> Result<DiagramOpfib, DiagramOpfibReport> {
        let report = check_diagram_opfib(&over, &total, &components, false);
        if report.pass() {
            Ok(DiagramOpfib {
                over,
                total,
                components,
            })
        } else {
            Err(report)
        }
    }

    /// Stores the data without checking; use [`DiagramOpfib::check`].
    pub fn candidate(over: CatDiagram, total: CatDiagram, components: Vec<CleavedOpfib>) -> Self {
        DiagramOpfib {
            over,
            total,
            components,
        }
    }

    pub fn check(&self) -> DiagramOpfibReport {
        check_diagram_opfib(&self.over, &self.total, &self.components, false)
    }

    pub fn check_discrete(&self) -> DiagramOpfibReport {
        check_diagram_opfib(&self.over, &self.total, &self.components, true)
    }

    /// `id: F ⇒ F` with identity cleavages.
    pub fn identity(f: &CatDiagram) -> DiagramOpfib {
        let components = f
            .base()
            .objects()
            .map(|a| CleavedOpfib::identity(f.at(a)))
            .collect();
        DiagramOpfib {
            over: f.clone(),
            total: f.clone(),
            components,
        }
    }

    pub fn over(&self) -> &CatDiagram {
        &self.over
    }

    pub fn total(&self) -> &CatDiagram {
        &self.total
    }

    pub fn base(&self) -> &Arc<FinCat> {
        self.over.base()
    }

    pub fn at(&self, a: ObjId) -> &CleavedOpfib {
        &self.components[a.index()]
    }

    pub fn components(&self) -> &[CleavedOpfib] {
        &self.components
    }

    /// `φ` as a diagram morphism `G ⇒ F`.
    pub fn as_diagram_mor(&self) -> DiagramMor {
        DiagramMor::new(
            self.total.clone(),
            self.over.clone(),
            self.components
                .iter()
                .map(|q| q.functor().clone())
                .collect(),
        )
        .expect("components are strictly natural")
    }

    /// A copy with one lift of component `a` replaced.
    pub fn with_lift(
        &self,
        a: ObjId,
        x: ObjId,
        f: crate::fincat::MorId,
        lift: crate::fincat::MorId,
    ) -> Self {
        let mut components = self.components.clone();
        components[a.index()] = components[a.index()].with_lift(x, f, lift);
        DiagramOpfib {
            over: self.over.clone(),
            total: self.total.clone(),
            components,
        }
    }
}

/// A morphism `ξ: φ → ψ` of opfibrations over the same `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramOpfibMor {
    pub source: DiagramOpfib,
    pub target: DiagramOpfib,
    pub xi: DiagramMor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OpfibMorFailure {
    Shape {
        detail: String,
    },
    /// `ψ_A∘ξ_A ≠ φ_A`.
    Triangle {
        object: String,
    },
    Cleavage {
        object: String,
        failure: CleavagePreservingFailure,
    },
}

/// `None` on pass; otherwise the first failure.
pub fn check_diagram_opfib_mor(
    xi: &DiagramMor,
    phi: &DiagramOpfib,
    psi: &DiagramOpfib,
) -> Option<OpfibMorFailure> {
    if phi.over != psi.over || *xi.source() != phi.total || *xi.target() != psi.total {
        return Some(OpfibMorFailure::Shape {
            detail: "boundaries do not match".into(),
        });
    }
    let base = phi.base();
    for a in base.objects() {
        let tri = FunctorData::compose(psi.at(a).functor(), xi.at(a));
        if tri != *phi.at(a).functor() {
            return Some(OpfibMorFailure::Triangle {
                object: base.ob_name(a).to_owned(),
            });
        }
    }
    for a in base.objects() {
        let id = FunctorData::identity(phi.over.at(a));
        if let Some(failure) = check_cleavage_preserving(xi.at(a), &id, phi.at(a), psi.at(a)) {
            return Some(OpfibMorFailure::Cleavage {
                object: base.ob_name(a).to_owned(),
                failure,
            });
        }
    }
    None
}

impl DiagramOpfibMor {
    pub fn new(
        source: DiagramOpfib,
        target: DiagramOpfib,
        xi: DiagramMor,
    ) -> Result<DiagramOpfibMor, OpfibMorFailure> {
        match check_diagram_opfib_mor(&xi, &source, &target) {
            None => Ok(DiagramOpfibMor { source, target, xi }),
            Some(f) => Err(f),
        }
    }

    pub fn identity(phi: &DiagramOpfib) -> DiagramOpfibMor {
        DiagramOpfibMor {
            source: phi.clone(),
            target: phi.clone(),
            xi: DiagramMor::identity(&phi.total),
        }
    }
}

/// `α*φ` together with the pullback squares of each component.
#[derive(Clone, Debug)]
pub struct PulledDiagramOpfib {
    pub opfib: DiagramOpfib,
    pub squares: Vec<PulledBack>,
}

/// Componentwise pullback of `φ` along `α: F' ⇒ F`.
pub fn pullback_diagram_opfib(
    alpha: &DiagramMor,
    phi: &DiagramOpfib,
) -> Result<PulledDiagramOpfib, OpfibError> {
    if *alpha.target() != phi.over {
        return Err(OpfibError::Mismatch(
            "α does not land in the base diagram of φ".into(),
        ));
    }
    let f1 = alpha.source().clone();
    let base = f1.base().clone();
    let squares: Vec<PulledBack> = base
        .objects()
        .map(|a| pullback_opfib(alpha.at(a), phi.at(a)))
        .collect::<Result<_, _>>()?;
    let at_ob: Vec<Arc<FinCat>> = squares.iter().map(|s| s.square.total.clone()).collect();
    let g = &phi.total;
    let at_mor = base
        .morphisms()
        .map(|h| {
            let (a, b) = (base.src(h), base.tgt(h));
            let (sa, sb) = (&squares[a.index()].square, &squares[b.index()].square);
            let ob_map = sa
                .total
                .objects()
                .map(|p| {
                    let (x, e) = (sa.first.ob(p), sa.second.ob(p));
                    sb.ob_of(f1.at_mor(h).ob(x), g.at_mor(h).ob(e))
                        .expect("square commutes")
                })
                .collect();
            let mor_map = sa
                .total
                .morphisms()
                .map(|m| {
                    let (x, e) = (sa.first.mor(m), sa.second.mor(m));
                    sb.mor_of(f1.at_mor(h).mor(x), g.at_mor(h).mor(e))
                        .expect("square commutes")
                })
                .collect();
            FunctorData::new(sa.total.clone(), sb.total.clone(), ob_map, mor_map)
                .expect("componentwise functor")
        })
        .collect();
    let total = CatDiagram::new(base.clone(), at_ob, at_mor).map_err(OpfibError::Diagram)?;
    let components = squares.iter().map(|s| s.opfib.clone()).collect();
    let opfib = DiagramOpfib::new(f1, total, components).map_err(|r| {
        OpfibError::Mismatch(format!(
            "pulled back data fails the componentwise criterion: {r}"
        ))
    })?;
    Ok(PulledDiagramOpfib { opfib, squares })
}

/// `δ*: α*φ → β*φ` for a modification `δ: α ⇒ β`, obtained by lifting each
/// component of `δ` through the cleavages of `φ`.
pub fn two_cell_action(
    delta: &Modification,
    phi: &DiagramOpfib,
) -> Result<(PulledDiagramOpfib, PulledDiagramOpfib, DiagramOpfibMor), OpfibError> {
    let from = pullback_diagram_opfib(delta.dom(), phi)?;
    let to = pullback_diagram_opfib(delta.cod(), phi)?;
    let base = phi.base();
    let components = base
        .objects()
        .map(|a| {
            reindex_along(
                delta.at(a),
                phi.at(a),
                &from.squares[a.index()],
                &to.squares[a.index()],
            )
        })
        .collect();
    let xi = DiagramMor::new(from.opfib.total.clone(), to.opfib.total.clone(), components)
        .map_err(OpfibError::Diagram)?;
    let m = DiagramOpfibMor::new(from.opfib.clone(), to.opfib.clone(), xi).map_err(|f| {
        OpfibError::Mismatch(format!("lifted 2-cell is not an opfibration map: {f:?}"))
    })?;
    Ok((from, to, m))
}

/// The product-projection opfibration `F × H ⇒ F` with lifts `(f, id)`.
pub fn projection_opfib(f: &CatDiagram, h: &CatDiagram) -> DiagramOpfib {
    let prod = CatDiagram::product(f, h);
    let base = f.base();
    let components = base
        .objects()
        .map(|a| {
            let p = crate::fincat::build::first_projection(prod.at(a), f.at(a), h.at(a));
            let hd = h.at(a);
            let (nd, md) = (hd.ob_count(), hd.mor_count());
            let cleavage = Cleavage::from_fn(&p, |x, g| {
                let y = ObjId::new(x.index() % nd);
                crate::fincat::MorId::new(g.index() * md + hd.id(y).index())
            });
            CleavedOpfib::new(p, cleavage).expect("projection lifts")
        })
        .collect();
    DiagramOpfib::new(f.clone(), prod, components).expect("projections satisfy the criterion")
}
