use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::functor::{same_cat, FunctorData};
use super::ids::{MorId, ObjId};

/// A natural transformation between parallel functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransData {
    dom: FunctorData,
    cod: FunctorData,
    components: Vec<MorId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum NatTransViolation {
    #[error("functors are not parallel")]
    Boundaries,
    #[error("no component at `{object}`")]
    Unmapped { object: String },
    #[error("`{name}` is not declared")]
    Dangling { name: String },
    #[error("component `{component}` at `{object}` has the wrong endpoints")]
    Endpoints { object: String, component: String },
    #[error("naturality square at `{morphism}` fails")]
    Naturality { morphism: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NatTransReport {
    pub violations: Vec<NatTransViolation>,
}

impl fmt::Display for NatTransReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

impl std::error::Error for NatTransReport {}

impl NatTransData {
    pub fn new(
        dom: FunctorData,
        cod: FunctorData,
        components: Vec<MorId>,
    ) -> Result<NatTransData, NatTransReport> {
        let mut violations = Vec::new();
        if !same_cat(dom.dom(), cod.dom()) || !same_cat(dom.cod(), cod.cod()) {
            violations.push(NatTransViolation::Boundaries);
            return Err(NatTransReport { violations });
        }
        let c = dom.dom().clone();
        let d = dom.cod().clone();
        if components.len() != c.ob_count() {
            violations.push(NatTransViolation::Unmapped {
                object: "domain".into(),
            });
            return Err(NatTransReport { violations });
        }
        for x in c.objects() {
            let k = components[x.index()];
            if k.index() >= d.mor_count() {
                violations.push(NatTransViolation::Dangling {
                    name: format!("#{}", k.index()),
                });
                return Err(NatTransReport { violations });
            }
            if d.src(k) != dom.ob(x) || d.tgt(k) != cod.ob(x) {
                violations.push(NatTransViolation::Endpoints {
                    object: c.ob_name(x).to_owned(),
                    component: d.mor_name(k).to_owned(),
                });
            }
        }
        if !violations.is_empty() {
            return Err(NatTransReport { violations });
        }
        for m in c.morphisms() {
            let lhs = d.comp(cod.mor(m), components[c.src(m).index()]);
            let rhs = d.comp(components[c.tgt(m).index()], dom.mor(m));
            if lhs != rhs {
                violations.push(NatTransViolation::Naturality {
                    morphism: c.mor_name(m).to_owned(),
                });
            }
        }
        if violations.is_empty() {
            Ok(NatTransData {
                dom,
                cod,
                components,
            })
        } else {
            Err(NatTransReport { violations })
        }
    }

    /// Name-level components `(object, morphism)`.
    pub fn from_raw(
        dom: FunctorData,
        cod: FunctorData,
        raw: &[(String, String)],
    ) -> Result<NatTransData, NatTransReport> {
        let c = dom.dom().clone();
        let d = dom.cod().clone();
        let table: HashMap<&str, &str> =
            raw.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let mut violations = Vec::new();
        for (a, b) in raw {
            if c.find_ob(a).is_none() {
                violations.push(NatTransViolation::Dangling { name: a.clone() });
            }
            if d.find_mor(b).is_none() {
                violations.push(NatTransViolation::Dangling { name: b.clone() });
            }
        }
        let mut components = Vec::new();
        for x in c.objects() {
            match table.get(c.ob_name(x)).and_then(|m| d.find_mor(m)) {
                Some(m) => components.push(m),
                None => violations.push(NatTransViolation::Unmapped {
                    object: c.ob_name(x).to_owned(),
                }),
            }
        }
        if !violations.is_empty() {
            return Err(NatTransReport { violations });
        }
        NatTransData::new(dom, cod, components)
    }

    pub fn identity(f: &FunctorData) -> NatTransData {
        let d = f.cod();
        NatTransData {
            dom: f.clone(),
            cod: f.clone(),
            components: f.dom().objects().map(|x| d.id(f.ob(x))).collect(),
        }
    }

    pub fn dom(&self) -> &FunctorData {
        &self.dom
    }

    pub fn cod(&self) -> &FunctorData {
        &self.cod
    }

    pub fn at(&self, x: ObjId) -> MorId {
        self.components[x.index()]
    }

    pub fn components(&self) -> &[MorId] {
        &self.components
    }

    /// `second ∘ first`, componentwise.
    pub fn vertical(second: &NatTransData, first: &NatTransData) -> NatTransData {
        assert_eq!(
            first.cod, second.dom,
            "vertical composite of non-composable cells"
        );
        let d = first.dom.cod();
        NatTransData {
            dom: first.dom.clone(),
            cod: second.cod.clone(),
            components: first
                .components
                .iter()
                .zip(&second.components)
                .map(|(a, b)| d.comp(*b, *a))
                .collect(),
        }
    }

    /// `h ⋆ θ`: postcompose every component with `h`.
    pub fn whisker_left(h: &FunctorData, theta: &NatTransData) -> NatTransData {
        NatTransData {
            dom: FunctorData::compose(h, &theta.dom),
            cod: FunctorData::compose(h, &theta.cod),
            components: theta.components.iter().map(|m| h.mor(*m)).collect(),
        }
    }

    /// `θ ⋆ k`: restrict the components along `k`.
    pub fn whisker_right(theta: &NatTransData, k: &FunctorData) -> NatTransData {
        NatTransData {
            dom: FunctorData::compose(&theta.dom, k),
            cod: FunctorData::compose(&theta.cod, k),
            components: k.ob_map().iter().map(|x| theta.at(*x)).collect(),
        }
    }

    /// The componentwise inverse, if every component is invertible.
    pub fn inverse(&self) -> Option<NatTransData> {
        let d = self.dom.cod();
        let components = self
            .components
            .iter()
            .map(|m| d.inverse(*m))
            .collect::<Option<_>>()?;
        Some(NatTransData {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            components,
        })
    }

    /// The same components, read between opposite functors.
    pub fn opposite(&self) -> NatTransData {
        NatTransData {
            dom: self.cod.opposite(),
            cod: self.dom.opposite(),
            components: self.components.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::build;
    use std::sync::Arc;

    #[test]
    fn constant_functors_in_walking_iso_are_isomorphic() {
        let c = Arc::new(build::walking_iso());
        let t = Arc::new(build::terminal());
        let a = c.find_ob("a").unwrap();
        let b = c.find_ob("b").unwrap();
        let fa = FunctorData::constant(&t, &c, a);
        let fb = FunctorData::constant(&t, &c, b);
        let f = c.find_mor("f").unwrap();
        let theta = NatTransData::new(fa.clone(), fb.clone(), vec![f]).unwrap();
        let inv = theta.inverse().unwrap();
        assert_eq!(
            NatTransData::vertical(&inv, &theta),
            NatTransData::identity(&fa)
        );
    }

    #[test]
    fn naturality_failure_names_the_morphism() {
        let pair = Arc::new(
            crate::fincat::FinCat::from_fn(
                vec!["a".into(), "b".into()],
                vec![
                    ("id_a".into(), ObjId::new(0), ObjId::new(0)),
                    ("id_b".into(), ObjId::new(1), ObjId::new(1)),
                    ("f".into(), ObjId::new(0), ObjId::new(1)),
                    ("g".into(), ObjId::new(0), ObjId::new(1)),
                ],
                vec![MorId::new(0), MorId::new(1)],
                |g, f| {
                    if g.index() <= 1 {
                        Some(f)
                    } else {
                        Some(g)
                    }
                },
            )
            .unwrap(),
        );
        let arrow = Arc::new(build::walking_arrow());
        let obs = vec![ObjId::new(0), ObjId::new(1)];
        let pick = |target: &str| {
            let mut mors = vec![MorId::new(0); arrow.mor_count()];
            mors[arrow.find_mor("id_a").unwrap().index()] = MorId::new(0);
            mors[arrow.find_mor("id_b").unwrap().index()] = MorId::new(1);
            mors[arrow.find_mor("f").unwrap().index()] = pair.find_mor(target).unwrap();
            FunctorData::new(arrow.clone(), pair.clone(), obs.clone(), mors).unwrap()
        };
        let err = NatTransData::new(pick("f"), pick("g"), vec![MorId::new(0), MorId::new(1)])
            .unwrap_err();
        assert_eq!(
            err.violations,
            vec![NatTransViolation::Naturality {
                morphism: "f".into()
            }]
        );
    }
}
