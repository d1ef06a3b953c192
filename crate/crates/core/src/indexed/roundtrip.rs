use serde::Serialize;

use crate::budget::Budget;
use crate::fincat::{CatDiagram, DiagramMor, FunctorData, ObjId};
use crate::groth::groth_map;
use crate::iso::{diagram_iso_search, diagram_iso_search_over, IsoWitness};
use crate::opfib::check_cleavage_preserving;
use crate::report::{diagram_iso, Method, RoundtripReport, Verdict};

use super::construct::{indexed_fibres, indexed_groth, IndexedError};
use super::{pullback_diagram_opfib, DiagramOpfib, DiagramOpfibFailure};

fn over_and_cleavage(w: &IsoWitness, from: &DiagramOpfib, to: &DiagramOpfib) -> bool {
    let IsoWitness::Diagram { forward, backward } = w else {
        return false;
    };
    from.base().objects().all(|a| {
        let id = FunctorData::identity(from.over().at(a));
        FunctorData::compose(to.at(a).functor(), forward.at(a)) == *from.at(a).functor()
            && check_cleavage_preserving(forward.at(a), &id, from.at(a), to.at(a)).is_none()
            && check_cleavage_preserving(backward.at(a), &id, to.at(a), from.at(a)).is_none()
    })
}

/// `indexed_groth(indexed_fibres(φ)) ≅ φ` over `F`, cleavage preserving.
pub fn roundtrip_opfib(phi: &DiagramOpfib, budget: &mut Budget) -> RoundtripReport {
    let fib = match indexed_fibres(phi) {
        Ok(f) => f,
        Err(e) => return RoundtripReport::refuted(e.to_string()),
    };
    let back = match indexed_groth(&fib.z, phi.over()) {
        Ok(b) => b,
        Err(e) => return RoundtripReport::refuted(e.to_string()),
    };
    let psi = &back.opfib;
    let base = phi.base();
    // (X,ξ) ↦ ξ inside its fibre; (α,Ξ)@ξ ↦ Ξ ∘ lift(ξ, α)
    let comps: Vec<FunctorData> = base
        .objects()
        .map(|a| {
            let (part, sys, q) = (&back.parts[a.index()], &fib.systems[a.index()], phi.at(a));
            let ga = phi.total().at(a);
            let ob_map = part
                .total()
                .objects()
                .map(|e| {
                    let (x, xi) = part.ob_prov(e);
                    sys.embeddings[x.index()].ob(xi)
                })
                .collect();
            let mor_map = part
                .total()
                .morphisms()
                .map(|m| {
                    let (alpha, big_xi, xi) = part.mor_prov(m);
                    let x = phi.over().at(a).src(alpha);
                    let x1 = phi.over().at(a).tgt(alpha);
                    let e = sys.embeddings[x.index()].ob(xi);
                    ga.comp(sys.embeddings[x1.index()].mor(big_xi), q.lift(e, alpha))
                })
                .collect();
            FunctorData::new(part.total().clone(), ga.clone(), ob_map, mor_map)
        })
        .collect::<Result<_, _>>()
        .unwrap_or_default();
    if comps.len() == base.ob_count() {
        if let Some(w) = diagram_iso(psi.total(), phi.total(), comps) {
            if over_and_cleavage(&w, psi, phi) {
                return RoundtripReport {
                    verdict: Verdict::Pass,
                    method: Some(Method::Canonical),
                    witness: Some(w),
                    detail: "opfibration round trip: canonical comparison verified".into(),
                };
            }
        }
    }
    let left: Vec<FunctorData> = base
        .objects()
        .map(|a| psi.at(a).functor().clone())
        .collect();
    let right: Vec<FunctorData> = base
        .objects()
        .map(|a| phi.at(a).functor().clone())
        .collect();
    let s = diagram_iso_search_over(psi.total(), phi.total(), Some((&left, &right)), budget);
    let mut report = RoundtripReport::from_search(s, "opfibration round trip");
    if let Some(w) = &report.witness {
        if !over_and_cleavage(w, psi, phi) {
            report = RoundtripReport::refuted(
                "opfibration round trip: the isomorphism found does not preserve cleavages",
            );
        }
    }
    report
}

/// `indexed_fibres(indexed_groth(Z, F)) ≅ Z` as diagrams on `∫F`.
pub fn roundtrip_diagram(z: &CatDiagram, f: &CatDiagram, budget: &mut Budget) -> RoundtripReport {
    let built = match indexed_groth(z, f) {
        Ok(b) => b,
        Err(e) => return RoundtripReport::refuted(e.to_string()),
    };
    let fib = match indexed_fibres(&built.opfib) {
        Ok(r) => r,
        Err(e) => return RoundtripReport::refuted(e.to_string()),
    };
    let gf = &fib.groth_f;
    // a fibre object (X,ξ) of G(A) ↦ ξ; a vertical (id,Ξ) ↦ Ξ
    let comps: Vec<FunctorData> = gf
        .total()
        .objects()
        .map(|e| {
            let (a, x) = gf.ob_prov(e);
            let (part, emb) = (
                &built.parts[a.index()],
                &fib.systems[a.index()].embeddings[x.index()],
            );
            let ob_map = emb.ob_map().iter().map(|&t| part.ob_prov(t).1).collect();
            let mor_map = emb.mor_map().iter().map(|&t| part.mor_prov(t).1).collect();
            FunctorData::new(fib.z.at(e).clone(), z.at(e).clone(), ob_map, mor_map)
        })
        .collect::<Result<_, _>>()
        .unwrap_or_default();
    let target = z.precompose(&FunctorData::identity(gf.total()));
    if comps.len() == gf.total().ob_count() {
        if let Some(w) = diagram_iso(&fib.z, &target, comps) {
            return RoundtripReport {
                verdict: Verdict::Pass,
                method: Some(Method::Canonical),
                witness: Some(w),
                detail: "diagram round trip: canonical comparison verified".into(),
            };
        }
    }
    RoundtripReport::from_search(
        diagram_iso_search(&fib.z, &target, budget),
        "diagram round trip",
    )
}

/// Both sides of the discrete/Set-valued correspondence for one instance.
#[derive(Clone, Debug, Serialize)]
pub struct DiscreteReport {
    /// Whether the opfibration side is discrete.
    pub discrete: bool,
    /// Whether the diagram side is Set-valued.
    pub set_valued: bool,
    /// The failing component when not discrete.
    pub counterexample: Option<DiagramOpfibFailure>,
    /// The first non-discrete fibre `(A,X)`.
    pub fat_fibre: Option<String>,
}

impl DiscreteReport {
    /// The biconditional holds.
    pub fn agrees(&self) -> bool {
        self.discrete == self.set_valued
    }
}

fn fat_fibre(z: &CatDiagram) -> Option<String> {
    let base = z.base();
    base.objects()
        .find(|&e| !z.at(e).is_discrete())
        .map(|e| base.ob_name(e).to_owned())
}

fn discrete_side(phi: &DiagramOpfib) -> (bool, Option<DiagramOpfibFailure>) {
    let report = phi.check_discrete();
    (report.pass(), report.failures.into_iter().next())
}

/// `φ` is discrete iff `indexed_fibres(φ)` is Set-valued.
pub fn discrete_check_opfib(phi: &DiagramOpfib) -> Result<DiscreteReport, IndexedError> {
    let z = indexed_fibres(phi)?.z;
    let (discrete, counterexample) = discrete_side(phi);
    Ok(DiscreteReport {
        discrete,
        set_valued: z.is_set_valued(),
        counterexample,
        fat_fibre: fat_fibre(&z),
    })
}

/// `Z` is Set-valued iff `indexed_groth(Z, F)` is discrete.
pub fn discrete_check_diagram(
    z: &CatDiagram,
    f: &CatDiagram,
) -> Result<DiscreteReport, IndexedError> {
    let phi = indexed_groth(z, f)?.opfib;
    let (discrete, counterexample) = discrete_side(&phi);
    Ok(DiscreteReport {
        discrete,
        set_valued: z.is_set_valued(),
        counterexample,
        fat_fibre: fat_fibre(z),
    })
}

#[derive(Clone, Debug)]
pub struct PseudonatReport {
    pub verdict: Verdict,
    pub method: Option<Method>,
    pub witness: Option<IsoWitness>,
    pub detail: String,
}

/// Compares `indexed_fibres(α*φ)` with `indexed_fibres(φ) ∘ ∫α` on `∫F′`.
pub fn pseudonat_check(
    alpha: &DiagramMor,
    phi: &DiagramOpfib,
    budget: &mut Budget,
) -> Result<PseudonatReport, IndexedError> {
    let pulled = pullback_diagram_opfib(alpha, phi)?;
    let lower = indexed_fibres(&pulled.opfib)?;
    let upper = indexed_fibres(phi)?;
    let int_alpha = groth_map(alpha, &lower.groth_f, &upper.groth_f);
    let reindexed = upper.z.precompose(&int_alpha);
    let gf1 = &lower.groth_f;
    // a pullback object (X′,E) over X′ ↦ E in the fibre over α_A X′
    let comps: Option<Vec<FunctorData>> = gf1
        .total()
        .objects()
        .map(|e| {
            let (a, x1) = gf1.ob_prov(e);
            let sq = &pulled.squares[a.index()].square;
            let emb = &lower.systems[a.index()].embeddings[x1.index()];
            let sys = &upper.systems[a.index()];
            let ob_map: Vec<ObjId> = emb
                .ob_map()
                .iter()
                .map(|&p| sys.ob_pos[sq.second.ob(p).index()])
                .collect();
            let mor_map = emb
                .mor_map()
                .iter()
                .map(|&p| sys.mor_pos[sq.second.mor(p).index()])
                .collect::<Option<Vec<_>>>()?;
            FunctorData::new(
                lower.z.at(e).clone(),
                reindexed.at(e).clone(),
                ob_map,
                mor_map,
            )
            .ok()
        })
        .collect();
    if let Some(w) = comps.and_then(|c| diagram_iso(&lower.z, &reindexed, c)) {
        return Ok(PseudonatReport {
            verdict: Verdict::Pass,
            method: Some(Method::Canonical),
            witness: Some(w),
            detail: "pseudonaturality square: canonical comparison verified".into(),
        });
    }
    let r = RoundtripReport::from_search(
        diagram_iso_search(&lower.z, &reindexed, budget),
        "pseudonaturality square",
    );
    Ok(PseudonatReport {
        verdict: r.verdict,
        method: r.method,
        witness: r.witness,
        detail: r.detail,
    })
}
