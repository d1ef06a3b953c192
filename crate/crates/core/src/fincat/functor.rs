use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::category::FinCat;
use super::ids::{MorId, ObjId};

/// A functor between two finite categories, stored as total maps.
#[derive(Clone)]
pub struct FunctorData {
    dom: Arc<FinCat>,
    cod: Arc<FinCat>,
    ob_map: Vec<ObjId>,
    mor_map: Vec<MorId>,
}

/// Name-level functor tables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawFunctor {
    pub ob_map: Vec<(String, String)>,
    pub mor_map: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum FunctorViolation {
    #[error("{what} has no image")]
    Unmapped { what: String },
    #[error("`{name}` is not declared")]
    Dangling { name: String },
    #[error("image `{image}` of `{morphism}` has the wrong endpoints")]
    Endpoints { morphism: String, image: String },
    #[error("identity of `{object}` is not preserved")]
    Identity { object: String },
    #[error("F({g}.{f}) != F({g}).F({f})")]
    Composite { g: String, f: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FunctorReport {
    pub violations: Vec<FunctorViolation>,
}

impl fmt::Display for FunctorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

impl std::error::Error for FunctorReport {}

impl FunctorData {
    /// Checks that the maps are total and preserve endpoints, identities and
    /// every composite.
    pub fn new(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        ob_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Result<FunctorData, FunctorReport> {
        let mut violations = Vec::new();
        if ob_map.len() != dom.ob_count() || mor_map.len() != dom.mor_count() {
            violations.push(FunctorViolation::Unmapped {
                what: "domain".into(),
            });
            return Err(FunctorReport { violations });
        }
        if ob_map.iter().any(|x| x.index() >= cod.ob_count())
            || mor_map.iter().any(|f| f.index() >= cod.mor_count())
        {
            violations.push(FunctorViolation::Dangling {
                name: "image index".into(),
            });
            return Err(FunctorReport { violations });
        }
        for f in dom.morphisms() {
            let image = mor_map[f.index()];
            if cod.src(image) != ob_map[dom.src(f).index()]
                || cod.tgt(image) != ob_map[dom.tgt(f).index()]
            {
                violations.push(FunctorViolation::Endpoints {
                    morphism: dom.mor_name(f).to_owned(),
                    image: cod.mor_name(image).to_owned(),
                });
            }
        }
        if !violations.is_empty() {
            return Err(FunctorReport { violations });
        }
        for x in dom.objects() {
            if mor_map[dom.id(x).index()] != cod.id(ob_map[x.index()]) {
                violations.push(FunctorViolation::Identity {
                    object: dom.ob_name(x).to_owned(),
                });
            }
        }
        for f in dom.morphisms() {
            for &g in dom.out_of(dom.tgt(f)) {
                let lhs = mor_map[dom.comp(g, f).index()];
                let rhs = cod.comp(mor_map[g.index()], mor_map[f.index()]);
                if lhs != rhs {
                    violations.push(FunctorViolation::Composite {
                        g: dom.mor_name(g).to_owned(),
                        f: dom.mor_name(f).to_owned(),
                    });
                }
            }
        }
        if violations.is_empty() {
            Ok(FunctorData {
                dom,
                cod,
                ob_map,
                mor_map,
            })
        } else {
            Err(FunctorReport { violations })
        }
    }

    /// Name-level validation.
    pub fn from_raw(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        raw: &RawFunctor,
    ) -> Result<FunctorData, FunctorReport> {
        let mut violations = Vec::new();
        let obs: HashMap<&str, &str> = raw
            .ob_map
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        let mors: HashMap<&str, &str> = raw
            .mor_map
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        for (a, b) in &raw.ob_map {
            if dom.find_ob(a).is_none() {
                violations.push(FunctorViolation::Dangling { name: a.clone() });
            }
            if cod.find_ob(b).is_none() {
                violations.push(FunctorViolation::Dangling { name: b.clone() });
            }
        }
        for (a, b) in &raw.mor_map {
            if dom.find_mor(a).is_none() {
                violations.push(FunctorViolation::Dangling { name: a.clone() });
            }
            if cod.find_mor(b).is_none() {
                violations.push(FunctorViolation::Dangling { name: b.clone() });
            }
        }
        let mut ob_map = Vec::with_capacity(dom.ob_count());
        for x in dom.objects() {
            match obs.get(dom.ob_name(x)).and_then(|y| cod.find_ob(y)) {
                Some(y) => ob_map.push(y),
                None => violations.push(FunctorViolation::Unmapped {
                    what: format!("object `{}`", dom.ob_name(x)),
                }),
            }
        }
        let mut mor_map = Vec::with_capacity(dom.mor_count());
        for f in dom.morphisms() {
            match mors.get(dom.mor_name(f)).and_then(|g| cod.find_mor(g)) {
                Some(g) => mor_map.push(g),
                None => violations.push(FunctorViolation::Unmapped {
                    what: format!("morphism `{}`", dom.mor_name(f)),
                }),
            }
        }
        if !violations.is_empty() {
            return Err(FunctorReport { violations });
        }
        FunctorData::new(dom, cod, ob_map, mor_map)
    }

    pub(crate) fn assemble(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        ob_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> FunctorData {
        debug_assert_eq!(ob_map.len(), dom.ob_count());
        debug_assert_eq!(mor_map.len(), dom.mor_count());
        FunctorData {
            dom,
            cod,
            ob_map,
            mor_map,
        }
    }

    pub fn identity(c: &Arc<FinCat>) -> FunctorData {
        FunctorData {
            dom: c.clone(),
            cod: c.clone(),
            ob_map: c.objects().collect(),
            mor_map: c.morphisms().collect(),
        }
    }

    /// The functor constant at `x`.
    pub fn constant(dom: &Arc<FinCat>, cod: &Arc<FinCat>, x: ObjId) -> FunctorData {
        FunctorData {
            dom: dom.clone(),
            cod: cod.clone(),
            ob_map: vec![x; dom.ob_count()],
            mor_map: vec![cod.id(x); dom.mor_count()],
        }
    }

    /// `g∘f`. Panics when `f.cod` and `g.dom` differ.
    pub fn compose(g: &FunctorData, f: &FunctorData) -> FunctorData {
        assert!(
            same_cat(&f.cod, &g.dom),
            "functor composite over mismatched categories"
        );
        FunctorData {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            ob_map: f.ob_map.iter().map(|x| g.ob_map[x.index()]).collect(),
            mor_map: f.mor_map.iter().map(|m| g.mor_map[m.index()]).collect(),
        }
    }

    pub fn dom(&self) -> &Arc<FinCat> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCat> {
        &self.cod
    }

    pub fn ob(&self, x: ObjId) -> ObjId {
        self.ob_map[x.index()]
    }

    pub fn mor(&self, f: MorId) -> MorId {
        self.mor_map[f.index()]
    }

    pub fn ob_map(&self) -> &[ObjId] {
        &self.ob_map
    }

    pub fn mor_map(&self) -> &[MorId] {
        &self.mor_map
    }

    pub fn is_identity(&self) -> bool {
        same_cat(&self.dom, &self.cod)
            && self.ob_map.iter().enumerate().all(|(i, x)| x.index() == i)
            && self.mor_map.iter().enumerate().all(|(i, f)| f.index() == i)
    }

    /// The inverse functor, when both maps are bijections.
    pub fn inverse(&self) -> Option<FunctorData> {
        if self.dom.ob_count() != self.cod.ob_count()
            || self.dom.mor_count() != self.cod.mor_count()
        {
            return None;
        }
        let mut ob_inv = vec![None; self.cod.ob_count()];
        for (i, y) in self.ob_map.iter().enumerate() {
            if ob_inv[y.index()].replace(ObjId::new(i)).is_some() {
                return None;
            }
        }
        let mut mor_inv = vec![None; self.cod.mor_count()];
        for (i, g) in self.mor_map.iter().enumerate() {
            if mor_inv[g.index()].replace(MorId::new(i)).is_some() {
                return None;
            }
        }
        Some(FunctorData {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            ob_map: ob_inv.into_iter().collect::<Option<_>>()?,
            mor_map: mor_inv.into_iter().collect::<Option<_>>()?,
        })
    }

    /// The same maps read between opposite categories.
    pub fn opposite(&self) -> FunctorData {
        FunctorData {
            dom: Arc::new(self.dom.opposite()),
            cod: Arc::new(self.cod.opposite()),
            ob_map: self.ob_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }

    /// Name-level tables, identities included.
    pub fn to_raw(&self) -> RawFunctor {
        RawFunctor {
            ob_map: self
                .dom
                .objects()
                .map(|x| {
                    (
                        self.dom.ob_name(x).to_owned(),
                        self.cod.ob_name(self.ob(x)).to_owned(),
                    )
                })
                .collect(),
            mor_map: self
                .dom
                .morphisms()
                .map(|f| {
                    (
                        self.dom.mor_name(f).to_owned(),
                        self.cod.mor_name(self.mor(f)).to_owned(),
                    )
                })
                .collect(),
        }
    }
}

/// Pointer equality or table equality.
pub fn same_cat(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for FunctorData {
    fn eq(&self, other: &Self) -> bool {
        self.ob_map == other.ob_map
            && self.mor_map == other.mor_map
            && same_cat(&self.dom, &other.dom)
            && same_cat(&self.cod, &other.cod)
    }
}

impl Eq for FunctorData {}

impl fmt::Debug for FunctorData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctorData")
            .field("ob_map", &self.ob_map)
            .field("mor_map", &self.mor_map)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::build;

    #[test]
    fn identity_functor_validates() {
        let c = Arc::new(build::walking_iso());
        let id = FunctorData::identity(&c);
        let again = FunctorData::new(c.clone(), c.clone(), id.ob_map.clone(), id.mor_map.clone());
        assert!(again.unwrap().is_identity());
    }

    #[test]
    fn collapsing_walking_arrow_onto_one_object_breaks_endpoints_only_if_arrow_kept() {
        let a = Arc::new(build::walking_arrow());
        let t = Arc::new(build::terminal());
        let collapse = FunctorData::constant(&a, &t, ObjId::new(0));
        assert!(FunctorData::new(
            a.clone(),
            t,
            collapse.ob_map.clone(),
            collapse.mor_map.clone()
        )
        .is_ok());

        // send both objects to `a` but keep f ↦ f
        let bad = FunctorData::new(
            a.clone(),
            a.clone(),
            vec![ObjId::new(0), ObjId::new(0)],
            a.morphisms().collect(),
        );
        let err = bad.unwrap_err();
        assert!(matches!(
            err.violations[0],
            FunctorViolation::Endpoints { .. }
        ));
    }

    #[test]
    fn raw_functor_reports_unmapped_morphism() {
        let a = Arc::new(build::walking_arrow());
        let raw = RawFunctor {
            ob_map: vec![("a".into(), "a".into()), ("b".into(), "b".into())],
            mor_map: vec![
                ("id_a".into(), "id_a".into()),
                ("id_b".into(), "id_b".into()),
            ],
        };
        let err = FunctorData::from_raw(a.clone(), a, &raw).unwrap_err();
        assert_eq!(
            err.violations,
            vec![FunctorViolation::Unmapped {
                what: "morphism `f`".into()
            }]
        );
    }

    #[test]
    fn inverse_of_swap() {
        let c = Arc::new(build::walking_iso());
        let f = c.find_mor("f").unwrap();
        let g = c.find_mor("f_inv").unwrap();
        let mut mor = vec![MorId::new(0); c.mor_count()];
        mor[f.index()] = g;
        mor[g.index()] = f;
        let (a, b) = (c.find_ob("a").unwrap(), c.find_ob("b").unwrap());
        mor[c.id(a).index()] = c.id(b);
        mor[c.id(b).index()] = c.id(a);
        let mut ob = vec![ObjId::new(0); 2];
        ob[a.index()] = b;
        ob[b.index()] = a;
        let swap = FunctorData::new(c.clone(), c.clone(), ob, mor).unwrap();
        let inv = swap.inverse().unwrap();
        assert!(FunctorData::compose(&inv, &swap).is_identity());
    }
}
