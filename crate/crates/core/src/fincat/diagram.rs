use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::build;
use super::category::FinCat;
use super::functor::{same_cat, FunctorData};
use super::ids::{MorId, ObjId};
use super::nat::NatTransData;

/// A strict Cat-valued diagram `F: A → Cat`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatDiagram {
    base: Arc<FinCat>,
    at_ob: Vec<Arc<FinCat>>,
    at_mor: Vec<FunctorData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum DiagramViolation {
    #[error("{detail}")]
    Shape { detail: String },
    #[error("functor at `{morphism}` does not go between the assigned categories")]
    Boundary { morphism: String },
    #[error("functor at the identity of `{object}` is not the identity")]
    Identity { object: String },
    #[error("F({g}.{f}) != F({g}).F({f})")]
    Strictness { g: String, f: String },
    #[error("naturality square at `{morphism}` fails")]
    Naturality { morphism: String },
    #[error("modification law at `{morphism}` fails on `{object}`")]
    Modification { morphism: String, object: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DiagramReport {
    pub violations: Vec<DiagramViolation>,
}

impl fmt::Display for DiagramReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

impl std::error::Error for DiagramReport {}

fn shape(detail: impl Into<String>) -> DiagramReport {
    DiagramReport {
        violations: vec![DiagramViolation::Shape {
            detail: detail.into(),
        }],
    }
}

impl CatDiagram {
    pub fn new(
        base: Arc<FinCat>,
        at_ob: Vec<Arc<FinCat>>,
        at_mor: Vec<FunctorData>,
    ) -> Result<CatDiagram, DiagramReport> {
        if at_ob.len() != base.ob_count() || at_mor.len() != base.mor_count() {
            return Err(shape(
                "diagram does not assign data to every base object and morphism",
            ));
        }
        let mut violations = Vec::new();
        for h in base.morphisms() {
            let t = &at_mor[h.index()];
            if !same_cat(t.dom(), &at_ob[base.src(h).index()])
                || !same_cat(t.cod(), &at_ob[base.tgt(h).index()])
            {
                violations.push(DiagramViolation::Boundary {
                    morphism: base.mor_name(h).to_owned(),
                });
            }
        }
        if !violations.is_empty() {
            return Err(DiagramReport { violations });
        }
        for x in base.objects() {
            if !at_mor[base.id(x).index()].is_identity() {
                violations.push(DiagramViolation::Identity {
                    object: base.ob_name(x).to_owned(),
                });
            }
        }
        for f in base.morphisms() {
            for &g in base.out_of(base.tgt(f)) {
                let direct = &at_mor[base.comp(g, f).index()];
                let pasted = FunctorData::compose(&at_mor[g.index()], &at_mor[f.index()]);
                if direct.ob_map() != pasted.ob_map() || direct.mor_map() != pasted.mor_map() {
                    violations.push(DiagramViolation::Strictness {
                        g: base.mor_name(g).to_owned(),
                        f: base.mor_name(f).to_owned(),
                    });
                }
            }
        }
        if violations.is_empty() {
            Ok(CatDiagram {
                base,
                at_ob,
                at_mor,
            })
        } else {
            Err(DiagramReport { violations })
        }
    }

    /// Fills identities automatically and asks `at` for the other morphisms.
    pub fn from_fn(
        base: Arc<FinCat>,
        at_ob: Vec<Arc<FinCat>>,
        mut at: impl FnMut(MorId) -> FunctorData,
    ) -> Result<CatDiagram, DiagramReport> {
        if at_ob.len() != base.ob_count() {
            return Err(shape(
                "diagram does not assign a category to every base object",
            ));
        }
        let at_mor = base
            .morphisms()
            .map(|h| {
                if base.is_identity(h) {
                    FunctorData::identity(&at_ob[base.src(h).index()])
                } else {
                    at(h)
                }
            })
            .collect();
        CatDiagram::new(base, at_ob, at_mor)
    }

    /// `ΔC`: every object to `c`, every morphism to the identity.
    pub fn constant(base: &Arc<FinCat>, c: &Arc<FinCat>) -> CatDiagram {
        let id = FunctorData::identity(c);
        CatDiagram {
            base: base.clone(),
            at_ob: vec![c.clone(); base.ob_count()],
            at_mor: vec![id; base.mor_count()],
        }
    }

    /// The Set-valued diagram `Hom(c0, -)`, each hom-set as a discrete category.
    pub fn corepresentable(base: &Arc<FinCat>, c0: ObjId) -> CatDiagram {
        let at_ob: Vec<Arc<FinCat>> = base
            .objects()
            .map(|x| {
                let names = base
                    .hom(c0, x)
                    .iter()
                    .map(|&u| base.mor_name(u).to_owned())
                    .collect();
                Arc::new(build::discrete_named(names))
            })
            .collect();
        let position = |x: ObjId, u: MorId| {
            base.hom(c0, x)
                .iter()
                .position(|&v| v == u)
                .expect("hom element")
        };
        let at_mor = base
            .morphisms()
            .map(|h| {
                let (s, t) = (base.src(h), base.tgt(h));
                let dom = &at_ob[s.index()];
                let cod = &at_ob[t.index()];
                let ob_map: Vec<ObjId> = base
                    .hom(c0, s)
                    .iter()
                    .map(|&u| ObjId::new(position(t, base.comp(h, u))))
                    .collect();
                let mor_map = ob_map.iter().map(|&y| cod.id(y)).collect();
                FunctorData::assemble(dom.clone(), cod.clone(), ob_map, mor_map)
            })
            .collect();
        CatDiagram {
            base: base.clone(),
            at_ob,
            at_mor,
        }
    }

    /// `F∘H` for `H: B → A`.
    pub fn precompose(&self, h: &FunctorData) -> CatDiagram {
        assert!(
            same_cat(h.cod(), &self.base),
            "precomposition along a functor into another base"
        );
        CatDiagram {
            base: h.dom().clone(),
            at_ob: h
                .ob_map()
                .iter()
                .map(|x| self.at_ob[x.index()].clone())
                .collect(),
            at_mor: h
                .mor_map()
                .iter()
                .map(|m| self.at_mor[m.index()].clone())
                .collect(),
        }
    }

    /// Pointwise product of two diagrams on the same base.
    pub fn product(left: &CatDiagram, right: &CatDiagram) -> CatDiagram {
        assert!(
            same_cat(&left.base, &right.base),
            "pointwise product over different bases"
        );
        let at_ob: Vec<Arc<FinCat>> = left
            .base
            .objects()
            .map(|x| Arc::new(build::product(left.at(x), right.at(x))))
            .collect();
        let at_mor = left
            .base
            .morphisms()
            .map(|h| {
                let (s, t) = (left.base.src(h), left.base.tgt(h));
                build::product_functor(
                    &at_ob[s.index()],
                    &at_ob[t.index()],
                    left.at_mor(h),
                    right.at_mor(h),
                )
            })
            .collect();
        CatDiagram {
            base: left.base.clone(),
            at_ob,
            at_mor,
        }
    }

    /// Every fibre category and every functor replaced by its opposite.
    pub fn opposite_fibres(&self) -> CatDiagram {
        let at_ob: Vec<Arc<FinCat>> = self.at_ob.iter().map(|c| Arc::new(c.opposite())).collect();
        let at_mor = self
            .base
            .morphisms()
            .map(|h| {
                let t = &self.at_mor[h.index()];
                FunctorData::assemble(
                    at_ob[self.base.src(h).index()].clone(),
                    at_ob[self.base.tgt(h).index()].clone(),
                    t.ob_map().to_vec(),
                    t.mor_map().to_vec(),
                )
            })
            .collect();
        CatDiagram {
            base: self.base.clone(),
            at_ob,
            at_mor,
        }
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn at(&self, x: ObjId) -> &Arc<FinCat> {
        &self.at_ob[x.index()]
    }

    pub fn at_mor(&self, h: MorId) -> &FunctorData {
        &self.at_mor[h.index()]
    }

    /// True iff every category of the diagram is discrete.
    pub fn is_set_valued(&self) -> bool {
        self.at_ob.iter().all(|c| c.is_discrete())
    }
}

/// A strict morphism of diagrams `γ: F ⇒ G` over one base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramMor {
    source: CatDiagram,
    target: CatDiagram,
    components: Vec<FunctorData>,
}

impl DiagramMor {
    pub fn new(
        source: CatDiagram,
        target: CatDiagram,
        components: Vec<FunctorData>,
    ) -> Result<DiagramMor, DiagramReport> {
        if !same_cat(&source.base, &target.base) {
            return Err(shape("diagrams live on different bases"));
        }
        let base = source.base.clone();
        if components.len() != base.ob_count() {
            return Err(shape("a component is required for every base object"));
        }
        let mut violations = Vec::new();
        for x in base.objects() {
            let c = &components[x.index()];
            if !same_cat(c.dom(), source.at(x)) || !same_cat(c.cod(), target.at(x)) {
                violations.push(DiagramViolation::Shape {
                    detail: format!("component at `{}` has the wrong boundary", base.ob_name(x)),
                });
            }
        }
        if !violations.is_empty() {
            return Err(DiagramReport { violations });
        }
        for h in base.morphisms() {
            let (s, t) = (base.src(h), base.tgt(h));
            let lhs = FunctorData::compose(target.at_mor(h), &components[s.index()]);
            let rhs = FunctorData::compose(&components[t.index()], source.at_mor(h));
            if lhs.ob_map() != rhs.ob_map() || lhs.mor_map() != rhs.mor_map() {
                violations.push(DiagramViolation::Naturality {
                    morphism: base.mor_name(h).to_owned(),
                });
            }
        }
        if violations.is_empty() {
            Ok(DiagramMor {
                source,
                target,
                components,
            })
        } else {
            Err(DiagramReport { violations })
        }
    }

    pub fn identity(f: &CatDiagram) -> DiagramMor {
        DiagramMor {
            source: f.clone(),
            target: f.clone(),
            components: f
                .base
                .objects()
                .map(|x| FunctorData::identity(f.at(x)))
                .collect(),
        }
    }

    /// `second ∘ first`.
    pub fn compose(second: &DiagramMor, first: &DiagramMor) -> DiagramMor {
        assert_eq!(
            first.target, second.source,
            "non-composable diagram morphisms"
        );
        DiagramMor {
            source: first.source.clone(),
            target: second.target.clone(),
            components: first
                .components
                .iter()
                .zip(&second.components)
                .map(|(a, b)| FunctorData::compose(b, a))
                .collect(),
        }
    }

    pub fn source(&self) -> &CatDiagram {
        &self.source
    }

    pub fn target(&self) -> &CatDiagram {
        &self.target
    }

    pub fn at(&self, x: ObjId) -> &FunctorData {
        &self.components[x.index()]
    }

    pub fn components(&self) -> &[FunctorData] {
        &self.components
    }
}

/// A modification `δ: α ⇒ β` between parallel diagram morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modification {
    dom: DiagramMor,
    cod: DiagramMor,
    components: Vec<NatTransData>,
}

impl Modification {
    pub fn new(
        dom: DiagramMor,
        cod: DiagramMor,
        components: Vec<NatTransData>,
    ) -> Result<Modification, DiagramReport> {
        if dom.source != cod.source || dom.target != cod.target {
            return Err(shape("diagram morphisms are not parallel"));
        }
        let base = dom.source.base.clone();
        if components.len() != base.ob_count() {
            return Err(shape("a component is required for every base object"));
        }
        let mut violations = Vec::new();
        for x in base.objects() {
            let c = &components[x.index()];
            if c.dom() != dom.at(x) || c.cod() != cod.at(x) {
                violations.push(DiagramViolation::Shape {
                    detail: format!("component at `{}` has the wrong boundary", base.ob_name(x)),
                });
            }
        }
        if !violations.is_empty() {
            return Err(DiagramReport { violations });
        }
        let src = &dom.source;
        let tgt = &dom.target;
        for h in base.morphisms() {
            let (a, b) = (base.src(h), base.tgt(h));
            let fa = src.at(a);
            for x in fa.objects() {
                let left = tgt.at_mor(h).mor(components[a.index()].at(x));
                let right = components[b.index()].at(src.at_mor(h).ob(x));
                if left != right {
                    violations.push(DiagramViolation::Modification {
                        morphism: base.mor_name(h).to_owned(),
                        object: fa.ob_name(x).to_owned(),
                    });
                }
            }
        }
        if violations.is_empty() {
            Ok(Modification {
                dom,
                cod,
                components,
            })
        } else {
            Err(DiagramReport { violations })
        }
    }

    pub fn identity(alpha: &DiagramMor) -> Modification {
        Modification {
            dom: alpha.clone(),
            cod: alpha.clone(),
            components: alpha
                .components
                .iter()
                .map(NatTransData::identity)
                .collect(),
        }
    }

    /// `second ∘ first`, componentwise vertical composition.
    pub fn vertical(second: &Modification, first: &Modification) -> Modification {
        assert_eq!(first.cod, second.dom, "non-composable modifications");
        Modification {
            dom: first.dom.clone(),
            cod: second.cod.clone(),
            components: first
                .components
                .iter()
                .zip(&second.components)
                .map(|(a, b)| NatTransData::vertical(b, a))
                .collect(),
        }
    }

    pub fn dom(&self) -> &DiagramMor {
        &self.dom
    }

    pub fn cod(&self) -> &DiagramMor {
        &self.cod
    }

    pub fn at(&self, x: ObjId) -> &NatTransData {
        &self.components[x.index()]
    }

    pub fn components(&self) -> &[NatTransData] {
        &self.components
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_diagram_validates() {
        let base = Arc::new(build::chain(3));
        let b = Arc::new(build::walking_arrow());
        let d = CatDiagram::constant(&base, &b);
        let again = CatDiagram::new(d.base.clone(), d.at_ob.clone(), d.at_mor.clone());
        assert_eq!(again.unwrap(), d);
    }

    #[test]
    fn strictness_violation_names_the_pair() {
        // every non-identity goes to the swap, so F(0<=2) = swap != swap.swap
        let base = Arc::new(build::chain(3));
        let two = Arc::new(build::discrete(2));
        let swap = FunctorData::new(
            two.clone(),
            two.clone(),
            vec![ObjId::new(1), ObjId::new(0)],
            vec![MorId::new(1), MorId::new(0)],
        )
        .unwrap();
        let at_mor = base.morphisms().map(|h| {
            if base.is_identity(h) {
                FunctorData::identity(&two)
            } else {
                swap.clone()
            }
        });
        let err =
            CatDiagram::new(base.clone(), vec![two.clone(); 3], at_mor.collect()).unwrap_err();
        assert_eq!(
            err.violations,
            vec![DiagramViolation::Strictness {
                g: "1<=2".into(),
                f: "0<=1".into()
            }]
        );
    }

    #[test]
    fn corepresentable_is_valid_and_set_valued() {
        let base = Arc::new(build::commutative_square());
        let bottom = base.find_ob("00").unwrap();
        let d = CatDiagram::corepresentable(&base, bottom);
        let again = CatDiagram::new(d.base.clone(), d.at_ob.clone(), d.at_mor.clone()).unwrap();
        assert!(again.is_set_valued());
        assert_eq!(again.at(base.find_ob("11").unwrap()).ob_count(), 1);
    }

    #[test]
    fn identity_modification_validates() {
        let base = Arc::new(build::walking_arrow());
        let d = CatDiagram::constant(&base, &Arc::new(build::walking_iso()));
        let id = DiagramMor::identity(&d);
        let m = Modification::identity(&id);
        assert!(Modification::new(id.clone(), id, m.components.clone()).is_ok());
    }
}
