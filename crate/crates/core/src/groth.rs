//! The Grothendieck construction, its action on diagram morphisms, the
//! universal oplax cocone and base change.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budget;
use crate::fincat::{
    same_cat, CatDiagram, DiagramMor, FinCat, FunctorData, MorId, NatTransData, NatTransReport,
    ObjId,
};
use crate::iso::{diagram_iso_search, over_base_iso_search, IsoWitness};
use crate::opfib::{
    check_cleavage_preserving, fibres, pullback_opfib, Cleavage, CleavedOpfib, PulledBack,
};
use crate::report::{diagram_iso, RoundtripReport};

/// `∫F` with its projection, canonical cleavage and provenance tables.
#[derive(Clone, Debug)]
pub struct GrothTotal {
    diagram: CatDiagram,
    opfib: CleavedOpfib,
    ob_prov: Vec<(ObjId, ObjId)>,
    /// `(f, α, X)` for `(f,α): (C,X) → (D,X')`.
    mor_prov: Vec<(MorId, MorId, ObjId)>,
    ob_index: HashMap<(ObjId, ObjId), ObjId>,
    mor_index: HashMap<(MorId, ObjId, MorId), MorId>,
}

/// Objects `(C,X)` ordered by `(C, X)`; morphisms `(f,α)` ordered by
/// `(f, X, α)`, suffixed `@X` when `F(f)` identifies several sources.
pub fn groth(diagram: &CatDiagram) -> GrothTotal {
    let base = diagram.base().clone();
    let mut objects = Vec::new();
    let mut ob_prov = Vec::new();
    let mut ob_index = HashMap::new();
    for c in base.objects() {
        let fc = diagram.at(c);
        for x in fc.objects() {
            ob_index.insert((c, x), ObjId::new(ob_prov.len()));
            ob_prov.push((c, x));
            objects.push(format!("({},{})", base.ob_name(c), fc.ob_name(x)));
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_prov = Vec::new();
    let mut mor_index = HashMap::new();
    for f in base.morphisms() {
        let (c, d) = (base.src(f), base.tgt(f));
        let (fc, fd, ff) = (diagram.at(c), diagram.at(d), diagram.at_mor(f));
        let mut hits = vec![0usize; fd.ob_count()];
        for x in fc.objects() {
            hits[ff.ob(x).index()] += 1;
        }
        for x in fc.objects() {
            let y = ff.ob(x);
            for &alpha in fd.out_of(y) {
                let s = ob_index[&(c, x)];
                let t = ob_index[&(d, fd.tgt(alpha))];
                let name = if base.is_identity(f) && fd.is_identity(alpha) {
                    format!("id_{}", objects[s.index()])
                } else if hits[y.index()] > 1 {
                    format!(
                        "({},{})@{}",
                        base.mor_name(f),
                        fd.mor_name(alpha),
                        fc.ob_name(x)
                    )
                } else {
                    format!("({},{})", base.mor_name(f), fd.mor_name(alpha))
                };
                mor_index.insert((f, x, alpha), MorId::new(mor_prov.len()));
                mor_prov.push((f, alpha, x));
                morphisms.push((name, s, t));
            }
        }
    }
    let identity = ob_prov
        .iter()
        .map(|&(c, x)| mor_index[&(base.id(c), x, diagram.at(c).id(x))])
        .collect();
    // (g,β)∘(f,α) = (g∘f, β∘F(g)(α))
    let total = FinCat::from_fn(objects, morphisms, identity, |second, first| {
        let (g, beta, _) = mor_prov[second.index()];
        let (f, alpha, x) = mor_prov[first.index()];
        let fe = diagram.at(base.tgt(g));
        let composite = fe.comp(beta, diagram.at_mor(g).mor(alpha));
        mor_index.get(&(base.comp(g, f), x, composite)).copied()
    })
    .expect("the composition rule satisfies the category laws");
    let total = Arc::new(total);
    let projection = FunctorData::assemble(
        total.clone(),
        base.clone(),
        ob_prov.iter().map(|p| p.0).collect(),
        mor_prov.iter().map(|p| p.0).collect(),
    );
    let cleavage = Cleavage::from_fn(&projection, |e, f| {
        let (c, x) = ob_prov[e.index()];
        debug_assert_eq!(base.src(f), c);
        let y = diagram.at_mor(f).ob(x);
        mor_index[&(f, x, diagram.at(base.tgt(f)).id(y))]
    });
    let opfib = CleavedOpfib::new(projection, cleavage).expect("canonical cleavage is total");
    GrothTotal {
        diagram: diagram.clone(),
        opfib,
        ob_prov,
        mor_prov,
        ob_index,
        mor_index,
    }
}

impl GrothTotal {
    pub fn diagram(&self) -> &CatDiagram {
        &self.diagram
    }

    pub fn total(&self) -> &Arc<FinCat> {
        self.opfib.total()
    }

    pub fn base(&self) -> &Arc<FinCat> {
        self.diagram.base()
    }

    pub fn projection(&self) -> &FunctorData {
        self.opfib.functor()
    }

    /// The projection with the canonical cleavage `(f, id)`.
    pub fn opfib(&self) -> &CleavedOpfib {
        &self.opfib
    }

    /// `(C, X)` for a total object.
    pub fn ob_prov(&self, e: ObjId) -> (ObjId, ObjId) {
        self.ob_prov[e.index()]
    }

    /// `(f, α, X)` for a total morphism `(f,α): (C,X) → (D,X')`.
    pub fn mor_prov(&self, m: MorId) -> (MorId, MorId, ObjId) {
        self.mor_prov[m.index()]
    }

    pub fn ob_of(&self, c: ObjId, x: ObjId) -> ObjId {
        self.ob_index[&(c, x)]
    }

    /// `(f, α)` out of `(src f, x)`.
    pub fn mor_of(&self, f: MorId, x: ObjId, alpha: MorId) -> MorId {
        self.mor_index[&(f, x, alpha)]
    }

    /// `(id_C, α)`.
    pub fn vertical(&self, c: ObjId, alpha: MorId) -> MorId {
        let fc = self.diagram.at(c);
        self.mor_of(self.base().id(c), fc.src(alpha), alpha)
    }

    /// `(f, id)` out of `(src f, x)`.
    pub fn cartesian(&self, f: MorId, x: ObjId) -> MorId {
        let base = self.base();
        let y = self.diagram.at_mor(f).ob(x);
        self.mor_of(f, x, self.diagram.at(base.tgt(f)).id(y))
    }
}

/// `∫γ: ∫F → ∫G` for a strict diagram morphism `γ: F ⇒ G`.
pub fn groth_map(gamma: &DiagramMor, from: &GrothTotal, to: &GrothTotal) -> FunctorData {
    assert!(
        gamma.source() == from.diagram() && gamma.target() == to.diagram(),
        "groth_map over mismatched diagrams"
    );
    let base = from.base();
    let ob_map = from
        .total()
        .objects()
        .map(|e| {
            let (c, x) = from.ob_prov(e);
            to.ob_of(c, gamma.at(c).ob(x))
        })
        .collect();
    let mor_map = from
        .total()
        .morphisms()
        .map(|m| {
            let (f, alpha, x) = from.mor_prov(m);
            let (c, d) = (base.src(f), base.tgt(f));
            to.mor_of(f, gamma.at(c).ob(x), gamma.at(d).mor(alpha))
        })
        .collect();
    FunctorData::assemble(from.total().clone(), to.total().clone(), ob_map, mor_map)
}

/// The factorization of a morphism `(f,α)` as `(id,α)∘(f,id)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub cartesian: MorId,
    pub vertical: MorId,
}

pub fn factorize(gt: &GrothTotal, m: MorId) -> Factorization {
    let (f, alpha, x) = gt.mor_prov(m);
    let cartesian = gt.cartesian(f, x);
    let vertical = gt.vertical(gt.base().tgt(f), alpha);
    debug_assert_eq!(gt.total().comp(vertical, cartesian), m);
    Factorization {
        cartesian,
        vertical,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum CoconeError {
    #[error("{detail}")]
    Shape { detail: String },
    #[error("structure cell at `{morphism}`: {report}")]
    Cell { morphism: String, report: String },
    #[error("structure cell at the identity of `{object}` is not the identity")]
    Unit { object: String },
    #[error("pasting fails for {g}.{f} at `{object}`")]
    Pasting {
        g: String,
        f: String,
        object: String,
    },
    #[error("factorization does not reproduce the cocone: {detail}")]
    Reproduce { detail: String },
}

/// A lax cocone `σ: F ⇒ ΔU` with components `σ_C: F(C) → U` and structure
/// cells `σ_f: σ_C ⇒ σ_D∘F(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxCocone {
    diagram: CatDiagram,
    vertex: Arc<FinCat>,
    components: Vec<FunctorData>,
    cells: Vec<NatTransData>,
}

impl LaxCocone {
    pub fn new(
        diagram: CatDiagram,
        vertex: Arc<FinCat>,
        components: Vec<FunctorData>,
        cells: Vec<NatTransData>,
    ) -> Result<LaxCocone, CoconeError> {
        let base = diagram.base().clone();
        if components.len() != base.ob_count() || cells.len() != base.mor_count() {
            return Err(CoconeError::Shape {
                detail: "a component per object and a cell per morphism".into(),
            });
        }
        for c in base.objects() {
            let s = &components[c.index()];
            if !same_cat(s.dom(), diagram.at(c)) || !same_cat(s.cod(), &vertex) {
                return Err(CoconeError::Shape {
                    detail: format!("component at `{}` has the wrong boundary", base.ob_name(c)),
                });
            }
        }
        for f in base.morphisms() {
            let (c, d) = (base.src(f), base.tgt(f));
            let cell = &cells[f.index()];
            let want_cod = FunctorData::compose(&components[d.index()], diagram.at_mor(f));
            if *cell.dom() != components[c.index()] || *cell.cod() != want_cod {
                return Err(CoconeError::Cell {
                    morphism: base.mor_name(f).to_owned(),
                    report: "cell does not go from σ_C to σ_D.F(f)".into(),
                });
            }
        }
        for c in base.objects() {
            let cell = &cells[base.id(c).index()];
            if *cell != NatTransData::identity(&components[c.index()]) {
                return Err(CoconeError::Unit {
                    object: base.ob_name(c).to_owned(),
                });
            }
        }
        for f in base.morphisms() {
            let fc = diagram.at(base.src(f));
            for &g in base.out_of(base.tgt(f)) {
                let gf = base.comp(g, f);
                for x in fc.objects() {
                    let pasted = vertex.comp(
                        cells[g.index()].at(diagram.at_mor(f).ob(x)),
                        cells[f.index()].at(x),
                    );
                    if cells[gf.index()].at(x) != pasted {
                        return Err(CoconeError::Pasting {
                            g: base.mor_name(g).to_owned(),
                            f: base.mor_name(f).to_owned(),
                            object: fc.ob_name(x).to_owned(),
                        });
                    }
                }
            }
        }
        Ok(LaxCocone {
            diagram,
            vertex,
            components,
            cells,
        })
    }

    /// Builds cells from raw components and validates naturality of each.
    pub fn from_components(
        diagram: CatDiagram,
        vertex: Arc<FinCat>,
        components: Vec<FunctorData>,
        cell_components: Vec<Vec<MorId>>,
    ) -> Result<LaxCocone, CoconeError> {
        let base = diagram.base().clone();
        if components.len() != base.ob_count() || cell_components.len() != base.mor_count() {
            return Err(CoconeError::Shape {
                detail: "a component per object and a cell per morphism".into(),
            });
        }
        let mut cells = Vec::with_capacity(base.mor_count());
        for (f, comps) in base.morphisms().zip(cell_components) {
            let (c, d) = (base.src(f), base.tgt(f));
            let cod = FunctorData::compose(&components[d.index()], diagram.at_mor(f));
            let cell = NatTransData::new(components[c.index()].clone(), cod, comps).map_err(
                |r: NatTransReport| CoconeError::Cell {
                    morphism: base.mor_name(f).to_owned(),
                    report: r.to_string(),
                },
            )?;
            cells.push(cell);
        }
        LaxCocone::new(diagram, vertex, components, cells)
    }

    pub fn diagram(&self) -> &CatDiagram {
        &self.diagram
    }

    pub fn vertex(&self) -> &Arc<FinCat> {
        &self.vertex
    }

    pub fn component(&self, c: ObjId) -> &FunctorData {
        &self.components[c.index()]
    }

    pub fn cell(&self, f: MorId) -> &NatTransData {
        &self.cells[f.index()]
    }

    /// `Δs∘σ`: the cocone obtained by postcomposing with `s: U → V`.
    pub fn postcompose(&self, s: &FunctorData) -> LaxCocone {
        assert!(
            same_cat(s.dom(), &self.vertex),
            "postcomposition with a functor out of another vertex"
        );
        LaxCocone {
            diagram: self.diagram.clone(),
            vertex: s.cod().clone(),
            components: self
                .components
                .iter()
                .map(|c| FunctorData::compose(s, c))
                .collect(),
            cells: self
                .cells
                .iter()
                .map(|t| NatTransData::whisker_left(s, t))
                .collect(),
        }
    }
}

/// The universal cocone `inc: F ⇒ Δ∫F`: `X ↦ (C,X)`, `α ↦ (id,α)`, with
/// cells `(inc_f)_X = (f,id)`.
pub fn inc_cocone(gt: &GrothTotal) -> LaxCocone {
    let f_diag = gt.diagram();
    let base = gt.base();
    let total = gt.total();
    let components: Vec<FunctorData> = base
        .objects()
        .map(|c| {
            let fc = f_diag.at(c);
            FunctorData::assemble(
                fc.clone(),
                total.clone(),
                fc.objects().map(|x| gt.ob_of(c, x)).collect(),
                fc.morphisms().map(|a| gt.vertical(c, a)).collect(),
            )
        })
        .collect();
    let cells = base
        .morphisms()
        .map(|f| {
            let (c, d) = (base.src(f), base.tgt(f));
            let cod = FunctorData::compose(&components[d.index()], f_diag.at_mor(f));
            let comps = f_diag.at(c).objects().map(|x| gt.cartesian(f, x)).collect();
            NatTransData::new(components[c.index()].clone(), cod, comps)
                .expect("inc cells are natural")
        })
        .collect();
    LaxCocone::new(f_diag.clone(), total.clone(), components, cells)
        .expect("inc satisfies the unit and pasting laws")
}

/// Counterexample to `(f,id)∘(id,α) = (id,F(f)(α))∘(f,id)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterchangeFailure {
    pub f: String,
    pub alpha: String,
}

pub fn check_interchange(gt: &GrothTotal) -> Option<InterchangeFailure> {
    let (base, total, f_diag) = (gt.base(), gt.total(), gt.diagram());
    for f in base.morphisms() {
        let (c, d) = (base.src(f), base.tgt(f));
        let fc = f_diag.at(c);
        for alpha in fc.morphisms() {
            let lhs = total.comp(gt.cartesian(f, fc.tgt(alpha)), gt.vertical(c, alpha));
            let rhs = total.comp(
                gt.vertical(d, f_diag.at_mor(f).mor(alpha)),
                gt.cartesian(f, fc.src(alpha)),
            );
            if lhs != rhs {
                return Some(InterchangeFailure {
                    f: base.mor_name(f).to_owned(),
                    alpha: fc.mor_name(alpha).to_owned(),
                });
            }
        }
    }
    None
}

/// The functor `s: ∫F → U` with `s(C,X) = σ_C(X)` and
/// `s(f,α) = σ_D(α)∘(σ_f)_X`, checked to reproduce `σ`.
pub fn cocone_factorize(gt: &GrothTotal, sigma: &LaxCocone) -> Result<FunctorData, CoconeError> {
    if sigma.diagram() != gt.diagram() {
        return Err(CoconeError::Shape {
            detail: "cocone is over another diagram".into(),
        });
    }
    let (base, total, u) = (gt.base(), gt.total(), sigma.vertex());
    let ob_map = total
        .objects()
        .map(|e| {
            let (c, x) = gt.ob_prov(e);
            sigma.component(c).ob(x)
        })
        .collect();
    let mor_map = total
        .morphisms()
        .map(|m| {
            let (f, alpha, x) = gt.mor_prov(m);
            let d = base.tgt(f);
            u.comp(sigma.component(d).mor(alpha), sigma.cell(f).at(x))
        })
        .collect();
    let s = FunctorData::new(total.clone(), u.clone(), ob_map, mor_map).map_err(|r| {
        CoconeError::Reproduce {
            detail: r.to_string(),
        }
    })?;
    if inc_cocone(gt).postcompose(&s) != *sigma {
        return Err(CoconeError::Reproduce {
            detail: "Δs.inc differs from σ".into(),
        });
    }
    Ok(s)
}

/// The canonical comparison `∫(F∘H) → H*∫F`, `(D,X) ↦ (D,(HD,X))`.
#[derive(Clone, Debug)]
pub struct BaseChange {
    pub reindexed: GrothTotal,
    pub pulled: PulledBack,
    pub witness: IsoWitness,
    pub cleavage_preserving: bool,
}

pub fn base_change(h: &FunctorData, f_diag: &CatDiagram) -> Result<BaseChange, String> {
    if !same_cat(h.cod(), f_diag.base()) {
        return Err("the functor does not land in the base of the diagram".into());
    }
    let big = groth(f_diag);
    let reindexed = groth(&f_diag.precompose(h));
    let pulled = pullback_opfib(h, big.opfib()).map_err(|e| e.to_string())?;
    let b = h.dom();
    let (src, dst) = (reindexed.total(), &pulled.square.total);
    let ob_map: Vec<ObjId> = src
        .objects()
        .map(|e| {
            let (d, x) = reindexed.ob_prov(e);
            pulled
                .square
                .ob_of(d, big.ob_of(h.ob(d), x))
                .expect("pair lies in the pullback")
        })
        .collect();
    let mor_map: Vec<MorId> = src
        .morphisms()
        .map(|m| {
            let (g, alpha, x) = reindexed.mor_prov(m);
            pulled
                .square
                .mor_of(g, big.mor_of(h.mor(g), x, alpha))
                .expect("pair lies in the pullback")
        })
        .collect();
    let forward = FunctorData::new(src.clone(), dst.clone(), ob_map, mor_map)
        .map_err(|r| format!("comparison is not a functor: {r}"))?;
    let backward = forward.inverse().ok_or("comparison is not bijective")?;
    let witness = IsoWitness::OverBase {
        forward: forward.clone(),
        backward: backward.clone(),
        left: reindexed.projection().clone(),
        right: pulled.opfib.functor().clone(),
    };
    witness.verify().map_err(|e| e.to_string())?;
    let id_b = FunctorData::identity(b);
    let cleavage_preserving =
        check_cleavage_preserving(&forward, &id_b, reindexed.opfib(), &pulled.opfib).is_none()
            && check_cleavage_preserving(&backward, &id_b, &pulled.opfib, reindexed.opfib())
                .is_none();
    Ok(BaseChange {
        reindexed,
        pulled,
        witness,
        cleavage_preserving,
    })
}

/// `fibres(∫F) ≅ F`: the fibre of `∫F` over `C` is `F(C)` relabelled.
pub fn roundtrip_classical_diagram(f: &CatDiagram, budget: &mut Budget) -> RoundtripReport {
    let gt = groth(f);
    let sys = match fibres(gt.opfib()) {
        Ok(s) => s,
        Err(e) => return RoundtripReport::refuted(e.to_string()),
    };
    let target = f.precompose(&FunctorData::identity(f.base()));
    let comps: Option<Vec<FunctorData>> = f
        .base()
        .objects()
        .map(|c| {
            let emb = &sys.embeddings[c.index()];
            let ob_map = emb.ob_map().iter().map(|&e| gt.ob_prov(e).1).collect();
            let mor_map = emb.mor_map().iter().map(|&m| gt.mor_prov(m).1).collect();
            FunctorData::new(sys.diagram.at(c).clone(), f.at(c).clone(), ob_map, mor_map).ok()
        })
        .collect();
    if let Some(w) = comps.and_then(|c| diagram_iso(&sys.diagram, &target, c)) {
        return RoundtripReport::canonical(
            w,
            "fibres of the construction: canonical comparison verified",
        );
    }
    RoundtripReport::from_search(
        diagram_iso_search(&sys.diagram, &target, budget),
        "fibres of the construction",
    )
}

/// `∫fibres(q) ≅ q` over the base, cleavage preserving.
pub fn roundtrip_classical_opfib(q: &CleavedOpfib, budget: &mut Budget) -> RoundtripReport {
    let sys = match fibres(q) {
        Ok(s) => s,
        Err(e) => return RoundtripReport::refuted(e.to_string()),
    };
    let gt = groth(&sys.diagram);
    let tot = q.total();
    let base = q.base();
    // (C,X) ↦ X; (f,α)@X ↦ α ∘ lift(X, f)
    let ob_map = gt.total().objects().map(|e| {
        let (c, x) = gt.ob_prov(e);
        sys.embeddings[c.index()].ob(x)
    });
    let mor_map = gt.total().morphisms().map(|m| {
        let (f, alpha, x) = gt.mor_prov(m);
        let e = sys.embeddings[base.src(f).index()].ob(x);
        tot.comp(sys.embeddings[base.tgt(f).index()].mor(alpha), q.lift(e, f))
    });
    let preserving = |w: &IsoWitness| {
        let IsoWitness::OverBase {
            forward, backward, ..
        } = w
        else {
            return false;
        };
        let id = FunctorData::identity(base);
        check_cleavage_preserving(forward, &id, gt.opfib(), q).is_none()
            && check_cleavage_preserving(backward, &id, q, gt.opfib()).is_none()
    };
    let canonical = FunctorData::new(
        gt.total().clone(),
        tot.clone(),
        ob_map.collect(),
        mor_map.collect(),
    )
    .ok()
    .and_then(|forward| {
        let backward = forward.inverse()?;
        let w = IsoWitness::OverBase {
            forward,
            backward,
            left: gt.projection().clone(),
            right: q.functor().clone(),
        };
        (w.verify().is_ok() && preserving(&w)).then_some(w)
    });
    if let Some(w) = canonical {
        return RoundtripReport::canonical(
            w,
            "construction on the fibres: canonical comparison verified",
        );
    }
    let mut r = RoundtripReport::from_search(
        over_base_iso_search(gt.projection(), q.functor(), budget),
        "construction on the fibres",
    );
    if r.witness.as_ref().is_some_and(|w| !preserving(w)) {
        r = RoundtripReport::refuted(
            "construction on the fibres: the isomorphism found does not preserve cleavages",
        );
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::build;
    use crate::iso::iso_search;

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn constant_terminal_recovers_the_base() {
        let a = arc(build::commutative_square());
        let gt = groth(&CatDiagram::constant(&a, &arc(build::terminal())));
        assert!(iso_search(gt.total(), &a, &mut Budget::default()).is_found());
        assert!(gt.opfib().is_split());
    }

    #[test]
    fn constant_diagram_gives_the_product() {
        let a = arc(build::walking_arrow());
        let b = arc(build::walking_iso());
        let gt = groth(&CatDiagram::constant(&a, &b));
        let prod = arc(build::product(&a, &b));
        assert!(iso_search(gt.total(), &prod, &mut Budget::default()).is_found());
    }

    #[test]
    fn factorization_recomposes() {
        let a = arc(build::walking_arrow());
        let gt = groth(&CatDiagram::constant(&a, &arc(build::chain(3))));
        for m in gt.total().morphisms() {
            let fz = factorize(&gt, m);
            assert_eq!(gt.total().comp(fz.vertical, fz.cartesian), m);
        }
    }

    #[test]
    fn inc_factorizes_as_identity() {
        let a = arc(build::chain(3));
        let gt = groth(&CatDiagram::constant(&a, &arc(build::walking_arrow())));
        let inc = inc_cocone(&gt);
        assert!(check_interchange(&gt).is_none());
        assert!(cocone_factorize(&gt, &inc).unwrap().is_identity());
    }

    #[test]
    fn base_change_along_identity() {
        let a = arc(build::walking_arrow());
        let d = CatDiagram::constant(&a, &arc(build::discrete(2)));
        let bc = base_change(&FunctorData::identity(&a), &d).unwrap();
        assert!(bc.cleavage_preserving);
    }
}
