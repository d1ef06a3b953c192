use std::sync::Arc;

use crate::fincat::{
    same_cat, CatDiagram, DiagramMor, DiagramReport, FinCat, FunctorData, MorId, ObjId,
};
use crate::groth::{groth, groth_map, GrothTotal};
use crate::opfib::{fibres, solve_cartesian, CleavedOpfib, FibreSystem, OpfibError};

use super::{DiagramOpfib, DiagramOpfibMor, DiagramOpfibReport, OpfibMorFailure};

/// The inclusion `F(A) → ∫F`, `X ↦ (A,X)`, `α ↦ (id,α)`.
pub fn fibre_inclusion(gt: &GrothTotal, a: ObjId) -> FunctorData {
    let fa = gt.diagram().at(a);
    let ob_map = fa.objects().map(|x| gt.ob_of(a, x)).collect();
    let mor_map = fa.morphisms().map(|alpha| gt.vertical(a, alpha)).collect();
    FunctorData::assemble(fa.clone(), gt.total().clone(), ob_map, mor_map)
}

/// `indexed_groth(Z, F)` with the per-object Grothendieck constructions kept
/// for provenance lookups.
#[derive(Clone, Debug)]
pub struct IndexedGroth {
    pub groth_f: GrothTotal,
    pub z: CatDiagram,
    /// `∫(Z∘inc_A)` for each base object `A`.
    pub parts: Vec<GrothTotal>,
    pub opfib: DiagramOpfib,
}

#[derive(Clone, Debug, thiserror::Error)]
pub enum IndexedError {
    #[error("the diagram does not live on the total category of the Grothendieck construction")]
    BaseMismatch,
    #[error(transparent)]
    Opfib(#[from] OpfibError),
    #[error("constructed data fails the componentwise criterion: {0}")]
    Criterion(DiagramOpfibReport),
}

/// `G(A) = ∫(Z∘inc_A)`, `G(h)(X,ξ) = (F(h)X, Z(h,id)ξ)`, `φ_A` the
/// first projection with lifts `(α, id)`.
pub fn indexed_groth(z: &CatDiagram, f: &CatDiagram) -> Result<IndexedGroth, IndexedError> {
    let gf = groth(f);
    if !same_cat(z.base(), gf.total()) {
        return Err(IndexedError::BaseMismatch);
    }
    let base = f.base().clone();
    let parts: Vec<GrothTotal> = base
        .objects()
        .map(|a| groth(&z.precompose(&fibre_inclusion(&gf, a))))
        .collect();
    let at_ob: Vec<Arc<FinCat>> = parts.iter().map(|p| p.total().clone()).collect();
    let at_mor: Vec<FunctorData> = base
        .morphisms()
        .map(|h| {
            let (a, b) = (base.src(h), base.tgt(h));
            let (ga, gb, fh) = (&parts[a.index()], &parts[b.index()], f.at_mor(h));
            let ob_map = ga
                .total()
                .objects()
                .map(|e| {
                    let (x, xi) = ga.ob_prov(e);
                    let zh = z.at_mor(gf.cartesian(h, x));
                    gb.ob_of(fh.ob(x), zh.ob(xi))
                })
                .collect();
            let mor_map = ga
                .total()
                .morphisms()
                .map(|m| {
                    let (alpha, big_xi, xi) = ga.mor_prov(m);
                    let fa = f.at(a);
                    let (x, x1) = (fa.src(alpha), fa.tgt(alpha));
                    let src_img = z.at_mor(gf.cartesian(h, x)).ob(xi);
                    let xi_img = z.at_mor(gf.cartesian(h, x1)).mor(big_xi);
                    gb.mor_of(fh.mor(alpha), src_img, xi_img)
                })
                .collect();
            FunctorData::new(
                at_ob[a.index()].clone(),
                at_ob[b.index()].clone(),
                ob_map,
                mor_map,
            )
            .expect("transition of the indexed construction is a functor")
        })
        .collect();
    let g = CatDiagram::new(base.clone(), at_ob, at_mor).map_err(OpfibError::Diagram)?;
    let components: Vec<CleavedOpfib> = parts.iter().map(|p| p.opfib().clone()).collect();
    let opfib = DiagramOpfib::new(f.clone(), g, components).map_err(IndexedError::Criterion)?;
    Ok(IndexedGroth {
        groth_f: gf,
        z: z.clone(),
        parts,
        opfib,
    })
}

/// `indexed_fibres(φ)` with the fibre systems of every component.
#[derive(Clone, Debug)]
pub struct IndexedFibres {
    pub groth_f: GrothTotal,
    pub systems: Vec<FibreSystem>,
    pub z: CatDiagram,
}

/// `Z(A,X) = φ_A⁻¹(X)`, `Z(h,α) = α_* ∘ G(h)|`.
pub fn indexed_fibres(phi: &DiagramOpfib) -> Result<IndexedFibres, IndexedError> {
    let report = phi.check();
    if !report.pass() {
        return Err(IndexedError::Criterion(report));
    }
    let f = phi.over();
    let g = phi.total();
    let gf = groth(f);
    let base = f.base().clone();
    let systems: Vec<FibreSystem> = base
        .objects()
        .map(|a| fibres(phi.at(a)))
        .collect::<Result<_, _>>()?;
    let tot = gf.total().clone();
    let at_ob: Vec<Arc<FinCat>> = tot
        .objects()
        .map(|e| {
            let (a, x) = gf.ob_prov(e);
            systems[a.index()].diagram.at(x).clone()
        })
        .collect();
    let at_mor: Vec<FunctorData> = tot
        .morphisms()
        .map(|m| {
            let (h, alpha, x) = gf.mor_prov(m);
            let (a, b) = (base.src(h), base.tgt(h));
            let (sa, sb) = (&systems[a.index()], &systems[b.index()]);
            let (qb, gh) = (phi.at(b), g.at_mor(h));
            let x1 = f.at(b).tgt(alpha);
            let emb = &sa.embeddings[x.index()];
            let ob_map: Vec<ObjId> = emb
                .ob_map()
                .iter()
                .map(|&e| sb.ob_pos[qb.push(gh.ob(e), alpha).index()])
                .collect();
            let id_x1 = f.at(b).id(x1);
            let mor_map: Vec<MorId> = emb
                .mor_map()
                .iter()
                .map(|&v| {
                    let v1 = gh.mor(v);
                    let gb = g.at(b);
                    let (e1, e2) = (gb.src(v1), gb.tgt(v1));
                    let other = gb.comp(qb.lift(e2, alpha), v1);
                    let u = solve_cartesian(qb.functor(), qb.lift(e1, alpha), other, id_x1);
                    sb.mor_pos[u.index()].expect("solution is vertical")
                })
                .collect();
            let (s, t) = (tot.src(m), tot.tgt(m));
            FunctorData::new(
                at_ob[s.index()].clone(),
                at_ob[t.index()].clone(),
                ob_map,
                mor_map,
            )
            .expect("reindexing between fibres is a functor")
        })
        .collect();
    let z = CatDiagram::new(tot, at_ob, at_mor).map_err(OpfibError::Diagram)?;
    Ok(IndexedFibres {
        groth_f: gf,
        systems,
        z,
    })
}

/// `∫(γ∘inc_A)` on each component, for `γ: Z ⇒ Z′` on `∫F`.
pub fn indexed_groth_map(
    gamma: &DiagramMor,
    from: &IndexedGroth,
    to: &IndexedGroth,
) -> Result<DiagramOpfibMor, OpfibMorFailure> {
    let gf = &from.groth_f;
    let components = gf
        .base()
        .objects()
        .map(|a| {
            let (pa, qa) = (&from.parts[a.index()], &to.parts[a.index()]);
            let inc = fibre_inclusion(gf, a);
            let comps = inc.ob_map().iter().map(|&e| gamma.at(e).clone()).collect();
            let whiskered = DiagramMor::new(pa.diagram().clone(), qa.diagram().clone(), comps)
                .map_err(|r| OpfibMorFailure::Shape {
                    detail: r.to_string(),
                })?;
            Ok(groth_map(&whiskered, pa, qa))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let xi = DiagramMor::new(
        from.opfib.total().clone(),
        to.opfib.total().clone(),
        components,
    )
    .map_err(|r| OpfibMorFailure::Shape {
        detail: r.to_string(),
    })?;
    DiagramOpfibMor::new(from.opfib.clone(), to.opfib.clone(), xi)
}

/// `ξ` restricted to fibres, as a diagram morphism `Z_φ ⇒ Z_ψ` on `∫F`.
pub fn indexed_fibres_map(
    xi: &DiagramOpfibMor,
    from: &IndexedFibres,
    to: &IndexedFibres,
) -> Result<DiagramMor, DiagramReport> {
    let gf = &from.groth_f;
    let comps = gf
        .total()
        .objects()
        .map(|e| {
            let (a, x) = gf.ob_prov(e);
            let emb = &from.systems[a.index()].embeddings[x.index()];
            let target = &to.systems[a.index()];
            let k = xi.xi.at(a);
            let ob_map = emb
                .ob_map()
                .iter()
                .map(|&t| target.ob_pos[k.ob(t).index()])
                .collect();
            let mor_map = emb
                .mor_map()
                .iter()
                .map(|&t| {
                    target.mor_pos[k.mor(t).index()].expect("ξ commutes with the projections")
                })
                .collect();
            FunctorData::assemble(from.z.at(e).clone(), to.z.at(e).clone(), ob_map, mor_map)
        })
        .collect();
    DiagramMor::new(from.z.clone(), to.z.clone(), comps)
}
