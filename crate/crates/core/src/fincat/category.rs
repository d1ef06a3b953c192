use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use super::ids::{MorId, ObjId};

const NONE: u32 = u32::MAX;
const MAX_REPORTED: usize = 64;

/// A finite category stored as explicit tables.
///
/// Objects and morphisms carry opaque names; the composition table is total
/// on composable pairs. Values are immutable once built and every
/// constructor that accepts outside data re-checks the category laws.
#[derive(Clone)]
pub struct FinCat {
    objects: Vec<String>,
    mor_names: Vec<String>,
    src: Vec<ObjId>,
    tgt: Vec<ObjId>,
    identity: Vec<MorId>,
    comp: Vec<u32>,
    hom: Vec<Vec<MorId>>,
    out: Vec<Vec<MorId>>,
    inn: Vec<Vec<MorId>>,
    ob_index: HashMap<String, ObjId>,
    mor_index: HashMap<String, MorId>,
}

/// Name-level tables as they come from a file or a user.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// `(name, source, target)`
    pub morphisms: Vec<(String, String, String)>,
    /// `(object, identity morphism)`
    pub identities: Vec<(String, String)>,
    /// `(g, f, g∘f)`
    pub composites: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum CategoryViolation {
    #[error("object `{name}` declared twice")]
    DuplicateObject { name: String },
    #[error("morphism `{name}` declared twice")]
    DuplicateMorphism { name: String },
    #[error("morphism `{morphism}` refers to undeclared object `{object}`")]
    DanglingObject { morphism: String, object: String },
    #[error("{context} refers to undeclared morphism `{name}`")]
    DanglingMorphism { context: String, name: String },
    #[error("object `{object}` has no identity")]
    MissingIdentity { object: String },
    #[error("identity `{morphism}` of `{object}` is not an endomorphism of `{object}`")]
    IdentityEndpoints { object: String, morphism: String },
    #[error("composite {g}.{f} is not defined")]
    MissingComposite { g: String, f: String },
    #[error("composite {g}.{f} declared for a non-composable pair")]
    SpuriousComposite { g: String, f: String },
    #[error("composite {g}.{f} declared as both `{first}` and `{second}`")]
    ConflictingComposite {
        g: String,
        f: String,
        first: String,
        second: String,
    },
    #[error("composite {g}.{f} = {result} has the wrong endpoints")]
    CompositeEndpoints {
        g: String,
        f: String,
        result: String,
    },
    #[error("id.{f} != {f}")]
    LeftIdentity { f: String },
    #[error("{f}.id != {f}")]
    RightIdentity { f: String },
    #[error("({h}.{g}).{f} != {h}.({g}.{f})")]
    Associativity { h: String, g: String, f: String },
}

/// Every law violation found while validating tables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CategoryReport {
    pub violations: Vec<CategoryViolation>,
    /// Violations found beyond the reporting cap.
    pub omitted: usize,
}

impl CategoryReport {
    fn push(&mut self, v: CategoryViolation) {
        if self.violations.len() < MAX_REPORTED {
            self.violations.push(v);
        } else {
            self.omitted += 1;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CategoryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        if self.omitted > 0 {
            write!(f, " (+{} more)", self.omitted)?;
        }
        Ok(())
    }
}

impl std::error::Error for CategoryReport {}

impl FinCat {
    /// Builds a category from index tables, asking `compose` for every
    /// composable pair `(g, f)`, then checks identity and associativity laws.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<(String, ObjId, ObjId)>,
        identity: Vec<MorId>,
        mut compose: impl FnMut(MorId, MorId) -> Option<MorId>,
    ) -> Result<FinCat, CategoryReport> {
        let mut report = CategoryReport::default();
        let n = objects.len();
        let m = morphisms.len();

        let mut ob_index = HashMap::with_capacity(n);
        for (i, name) in objects.iter().enumerate() {
            if ob_index.insert(name.clone(), ObjId::new(i)).is_some() {
                report.push(CategoryViolation::DuplicateObject { name: name.clone() });
            }
        }
        let mut mor_index = HashMap::with_capacity(m);
        for (i, (name, s, t)) in morphisms.iter().enumerate() {
            if mor_index.insert(name.clone(), MorId::new(i)).is_some() {
                report.push(CategoryViolation::DuplicateMorphism { name: name.clone() });
            }
            for end in [s, t] {
                if end.index() >= n {
                    report.push(CategoryViolation::DanglingObject {
                        morphism: name.clone(),
                        object: format!("#{}", end.index()),
                    });
                }
            }
        }
        if identity.len() != n {
            for name in objects.iter().skip(identity.len()) {
                report.push(CategoryViolation::MissingIdentity {
                    object: name.clone(),
                });
            }
        }
        if !report.is_empty() {
            return Err(report);
        }

        let src: Vec<ObjId> = morphisms.iter().map(|(_, s, _)| *s).collect();
        let tgt: Vec<ObjId> = morphisms.iter().map(|(_, _, t)| *t).collect();
        let mor_names: Vec<String> = morphisms.into_iter().map(|(name, _, _)| name).collect();

        for (x, &e) in identity.iter().enumerate() {
            if e.index() >= m || src[e.index()].index() != x || tgt[e.index()].index() != x {
                report.push(CategoryViolation::IdentityEndpoints {
                    object: objects[x].clone(),
                    morphism: mor_names
                        .get(e.index())
                        .cloned()
                        .unwrap_or_else(|| "?".into()),
                });
            }
        }
        if !report.is_empty() {
            return Err(report);
        }

        let (hom, out, inn) = adjacency(n, &src, &tgt);
        let mut comp = vec![NONE; m * m];
        for f in 0..m {
            for &g in &out[tgt[f].index()] {
                let gi = g.index();
                match compose(g, MorId::new(f)) {
                    None => report.push(CategoryViolation::MissingComposite {
                        g: mor_names[gi].clone(),
                        f: mor_names[f].clone(),
                    }),
                    Some(h) if h.index() >= m => report.push(CategoryViolation::DanglingMorphism {
                        context: format!("composite {}.{}", mor_names[gi], mor_names[f]),
                        name: format!("#{}", h.index()),
                    }),
                    Some(h) => {
                        if src[h.index()] != src[f] || tgt[h.index()] != tgt[gi] {
                            report.push(CategoryViolation::CompositeEndpoints {
                                g: mor_names[gi].clone(),
                                f: mor_names[f].clone(),
                                result: mor_names[h.index()].clone(),
                            });
                        }
                        comp[gi * m + f] = h.0;
                    }
                }
            }
        }
        if !report.is_empty() {
            return Err(report);
        }

        let cat = FinCat {
            objects,
            mor_names,
            src,
            tgt,
            identity,
            comp,
            hom,
            out,
            inn,
            ob_index,
            mor_index,
        };
        cat.check_laws(&mut report);
        if report.is_empty() {
            Ok(cat)
        } else {
            Err(report)
        }
    }

    /// Validates name-level tables. Every problem is reported with the
    /// offending names; law checks run only once the tables are structurally
    /// complete.
    pub fn from_raw(raw: &RawCategory) -> Result<FinCat, CategoryReport> {
        let mut report = CategoryReport::default();
        let mut ob_index: HashMap<&str, usize> = HashMap::new();
        for (i, o) in raw.objects.iter().enumerate() {
            if ob_index.insert(o, i).is_some() {
                report.push(CategoryViolation::DuplicateObject { name: o.clone() });
            }
        }
        let mut mor_index: HashMap<&str, usize> = HashMap::new();
        let mut morphisms = Vec::with_capacity(raw.morphisms.len());
        for (i, (name, s, t)) in raw.morphisms.iter().enumerate() {
            if mor_index.insert(name, i).is_some() {
                report.push(CategoryViolation::DuplicateMorphism { name: name.clone() });
            }
            let mut ends = [ObjId::new(0); 2];
            for (slot, end) in [s, t].into_iter().enumerate() {
                match ob_index.get(end.as_str()) {
                    Some(&x) => ends[slot] = ObjId::new(x),
                    None => report.push(CategoryViolation::DanglingObject {
                        morphism: name.clone(),
                        object: end.clone(),
                    }),
                }
            }
            morphisms.push((name.clone(), ends[0], ends[1]));
        }

        let mut identity = vec![None; raw.objects.len()];
        for (o, e) in &raw.identities {
            let Some(&x) = ob_index.get(o.as_str()) else {
                report.push(CategoryViolation::DanglingMorphism {
                    context: format!("identity declaration for `{o}`"),
                    name: o.clone(),
                });
                continue;
            };
            match mor_index.get(e.as_str()) {
                Some(&f) => identity[x] = Some(MorId::new(f)),
                None => report.push(CategoryViolation::DanglingMorphism {
                    context: format!("identity of `{o}`"),
                    name: e.clone(),
                }),
            }
        }
        for (x, id) in identity.iter().enumerate() {
            if id.is_none() {
                report.push(CategoryViolation::MissingIdentity {
                    object: raw.objects[x].clone(),
                });
            }
        }

        let mut table: HashMap<(usize, usize), usize> = HashMap::new();
        for (g, f, h) in &raw.composites {
            let lookup = |name: &String, report: &mut CategoryReport| {
                let found = mor_index.get(name.as_str()).copied();
                if found.is_none() {
                    report.push(CategoryViolation::DanglingMorphism {
                        context: format!("composite {g}.{f}"),
                        name: name.clone(),
                    });
                }
                found
            };
            let (Some(gi), Some(fi), Some(hi)) = (
                lookup(g, &mut report),
                lookup(f, &mut report),
                lookup(h, &mut report),
            ) else {
                continue;
            };
            if raw.morphisms[fi].2 != raw.morphisms[gi].1 {
                report.push(CategoryViolation::SpuriousComposite {
                    g: g.clone(),
                    f: f.clone(),
                });
                continue;
            }
            if let Some(prev) = table.insert((gi, fi), hi) {
                if prev != hi {
                    report.push(CategoryViolation::ConflictingComposite {
                        g: g.clone(),
                        f: f.clone(),
                        first: raw.morphisms[prev].0.clone(),
                        second: h.clone(),
                    });
                }
            }
        }
        if !report.is_empty() {
            return Err(report);
        }
        let identity = identity.into_iter().map(Option::unwrap).collect();
        FinCat::from_fn(raw.objects.clone(), morphisms, identity, |g, f| {
            table.get(&(g.index(), f.index())).map(|&h| MorId::new(h))
        })
    }

    /// Assembles tables already known to satisfy the laws.
    pub(crate) fn assemble(
        objects: Vec<String>,
        morphisms: Vec<(String, ObjId, ObjId)>,
        identity: Vec<MorId>,
        comp: Vec<u32>,
    ) -> FinCat {
        let n = objects.len();
        let src: Vec<ObjId> = morphisms.iter().map(|(_, s, _)| *s).collect();
        let tgt: Vec<ObjId> = morphisms.iter().map(|(_, _, t)| *t).collect();
        let mor_names: Vec<String> = morphisms.into_iter().map(|(name, _, _)| name).collect();
        let (hom, out, inn) = adjacency(n, &src, &tgt);
        let ob_index = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), ObjId::new(i)))
            .collect();
        let mor_index = mor_names
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), MorId::new(i)))
            .collect();
        FinCat {
            objects,
            mor_names,
            src,
            tgt,
            identity,
            comp,
            hom,
            out,
            inn,
            ob_index,
            mor_index,
        }
    }

    fn check_laws(&self, report: &mut CategoryReport) {
        for f in self.morphisms() {
            let s = self.src(f);
            let t = self.tgt(f);
            if self.comp(self.id(t), f) != f {
                report.push(CategoryViolation::LeftIdentity {
                    f: self.mor_name(f).to_owned(),
                });
            }
            if self.comp(f, self.id(s)) != f {
                report.push(CategoryViolation::RightIdentity {
                    f: self.mor_name(f).to_owned(),
                });
            }
        }
        for f in self.morphisms() {
            for &g in self.out_of(self.tgt(f)) {
                let gf = self.comp(g, f);
                for &h in self.out_of(self.tgt(g)) {
                    if self.comp(self.comp(h, g), f) != self.comp(h, gf) {
                        report.push(CategoryViolation::Associativity {
                            h: self.mor_name(h).to_owned(),
                            g: self.mor_name(g).to_owned(),
                            f: self.mor_name(f).to_owned(),
                        });
                    }
                }
            }
        }
    }

    pub fn ob_count(&self) -> usize {
        self.objects.len()
    }

    pub fn mor_count(&self) -> usize {
        self.mor_names.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = ObjId> + Clone {
        (0..self.objects.len()).map(ObjId::new)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = MorId> + Clone {
        (0..self.mor_names.len()).map(MorId::new)
    }

    pub fn ob_name(&self, x: ObjId) -> &str {
        &self.objects[x.index()]
    }

    pub fn mor_name(&self, f: MorId) -> &str {
        &self.mor_names[f.index()]
    }

    pub fn find_ob(&self, name: &str) -> Option<ObjId> {
        self.ob_index.get(name).copied()
    }

    pub fn find_mor(&self, name: &str) -> Option<MorId> {
        self.mor_index.get(name).copied()
    }

    pub fn src(&self, f: MorId) -> ObjId {
        self.src[f.index()]
    }

    pub fn tgt(&self, f: MorId) -> ObjId {
        self.tgt[f.index()]
    }

    pub fn id(&self, x: ObjId) -> MorId {
        self.identity[x.index()]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.src(f) == self.tgt(f) && self.id(self.src(f)) == f
    }

    /// `g∘f`, when `tgt(f) = src(g)`.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.tgt(f) != self.src(g) {
            return None;
        }
        let h = self.comp[g.index() * self.mor_count() + f.index()];
        (h != NONE).then_some(MorId(h))
    }

    /// `g∘f`; panics on a non-composable pair.
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.compose(g, f).unwrap_or_else(|| {
            panic!(
                "{}.{} is not composable",
                self.mor_name(g),
                self.mor_name(f)
            )
        })
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.hom[x.index() * self.ob_count() + y.index()]
    }

    pub fn out_of(&self, x: ObjId) -> &[MorId] {
        &self.out[x.index()]
    }

    pub fn into_obj(&self, x: ObjId) -> &[MorId] {
        &self.inn[x.index()]
    }

    /// The inverse of `f`, if it has one.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (s, t) = (self.src(f), self.tgt(f));
        self.hom(t, s)
            .iter()
            .copied()
            .find(|&g| self.comp(g, f) == self.id(s) && self.comp(f, g) == self.id(t))
    }

    /// True iff the only morphisms are identities.
    pub fn is_discrete(&self) -> bool {
        self.mor_count() == self.ob_count()
    }

    pub fn opposite(&self) -> FinCat {
        let m = self.mor_count();
        let morphisms = self
            .morphisms()
            .map(|f| (self.mor_name(f).to_owned(), self.tgt(f), self.src(f)))
            .collect();
        let mut comp = vec![NONE; m * m];
        for g in 0..m {
            for f in 0..m {
                comp[g * m + f] = self.comp[f * m + g];
            }
        }
        FinCat::assemble(self.objects.clone(), morphisms, self.identity.clone(), comp)
    }

    /// The same category with objects and morphisms sorted by name.
    pub fn canonical(&self) -> FinCat {
        let mut ob_order: Vec<ObjId> = self.objects().collect();
        ob_order.sort_by(|a, b| self.ob_name(*a).cmp(self.ob_name(*b)));
        let mut mor_order: Vec<MorId> = self.morphisms().collect();
        mor_order.sort_by(|a, b| self.mor_name(*a).cmp(self.mor_name(*b)));
        let mut ob_new = vec![ObjId::new(0); self.ob_count()];
        for (i, x) in ob_order.iter().enumerate() {
            ob_new[x.index()] = ObjId::new(i);
        }
        let mut mor_new = vec![MorId::new(0); self.mor_count()];
        for (i, f) in mor_order.iter().enumerate() {
            mor_new[f.index()] = MorId::new(i);
        }
        let m = self.mor_count();
        let mut comp = vec![NONE; m * m];
        for g in self.morphisms() {
            for f in self.morphisms() {
                if let Some(h) = self.compose(g, f) {
                    comp[mor_new[g.index()].index() * m + mor_new[f.index()].index()] =
                        mor_new[h.index()].0;
                }
            }
        }
        let objects = ob_order
            .iter()
            .map(|&x| self.ob_name(x).to_owned())
            .collect();
        let morphisms = mor_order
            .iter()
            .map(|&f| {
                (
                    self.mor_name(f).to_owned(),
                    ob_new[self.src(f).index()],
                    ob_new[self.tgt(f).index()],
                )
            })
            .collect();
        let identity = ob_order
            .iter()
            .map(|&x| mor_new[self.id(x).index()])
            .collect();
        FinCat::assemble(objects, morphisms, identity, comp)
    }

    /// Table equality after sorting identifiers.
    pub fn same_tables(&self, other: &FinCat) -> bool {
        self == other || self.canonical() == other.canonical()
    }

    /// The full subcategory-like restriction to the listed objects and
    /// morphisms, kept in the listed order. The lists must be closed under
    /// identities and composition.
    pub fn restrict(&self, obs: &[ObjId], mors: &[MorId]) -> Result<FinCat, CategoryReport> {
        let mut ob_pos = vec![None; self.ob_count()];
        for (i, x) in obs.iter().enumerate() {
            ob_pos[x.index()] = Some(ObjId::new(i));
        }
        let mut mor_pos = vec![None; self.mor_count()];
        for (i, f) in mors.iter().enumerate() {
            mor_pos[f.index()] = Some(MorId::new(i));
        }
        let mut report = CategoryReport::default();
        let mut morphisms = Vec::with_capacity(mors.len());
        for &f in mors {
            match (ob_pos[self.src(f).index()], ob_pos[self.tgt(f).index()]) {
                (Some(s), Some(t)) => morphisms.push((self.mor_name(f).to_owned(), s, t)),
                _ => report.push(CategoryViolation::DanglingObject {
                    morphism: self.mor_name(f).to_owned(),
                    object: self.ob_name(self.src(f)).to_owned(),
                }),
            }
        }
        let mut identity = Vec::with_capacity(obs.len());
        for &x in obs {
            match mor_pos[self.id(x).index()] {
                Some(e) => identity.push(e),
                None => report.push(CategoryViolation::MissingIdentity {
                    object: self.ob_name(x).to_owned(),
                }),
            }
        }
        if !report.is_empty() {
            return Err(report);
        }
        FinCat::from_fn(
            obs.iter().map(|&x| self.ob_name(x).to_owned()).collect(),
            morphisms,
            identity,
            |g, f| mor_pos[self.comp(mors[g.index()], mors[f.index()]).index()],
        )
    }

    /// Name-level tables, identities and identity composites included.
    pub fn to_raw(&self) -> RawCategory {
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms()
                .map(|f| {
                    (
                        self.mor_name(f).to_owned(),
                        self.ob_name(self.src(f)).to_owned(),
                        self.ob_name(self.tgt(f)).to_owned(),
                    )
                })
                .collect(),
            identities: self
                .objects()
                .map(|x| {
                    (
                        self.ob_name(x).to_owned(),
                        self.mor_name(self.id(x)).to_owned(),
                    )
                })
                .collect(),
            composites: self
                .morphisms()
                .flat_map(|f| {
                    self.out_of(self.tgt(f)).iter().map(move |&g| {
                        (
                            self.mor_name(g).to_owned(),
                            self.mor_name(f).to_owned(),
                            self.mor_name(self.comp(g, f)).to_owned(),
                        )
                    })
                })
                .collect(),
        }
    }
}

/// Hom sets, then out-lists and in-lists per object.
type Adjacency = (Vec<Vec<MorId>>, Vec<Vec<MorId>>, Vec<Vec<MorId>>);

fn adjacency(n: usize, src: &[ObjId], tgt: &[ObjId]) -> Adjacency {
    let mut hom = vec![Vec::new(); n * n];
    let mut out = vec![Vec::new(); n];
    let mut inn = vec![Vec::new(); n];
    for (i, (s, t)) in src.iter().zip(tgt).enumerate() {
        let f = MorId::new(i);
        hom[s.index() * n + t.index()].push(f);
        out[s.index()].push(f);
        inn[t.index()].push(f);
    }
    (hom, out, inn)
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.objects == other.objects
                && self.mor_names == other.mor_names
                && self.src == other.src
                && self.tgt == other.tgt
                && self.identity == other.identity
                && self.comp == other.comp)
    }
}

impl Eq for FinCat {}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.objects)
            .field("morphisms", &self.mor_names)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(objects: &[&str], morphisms: &[(&str, &str, &str)]) -> RawCategory {
        let mut raw = RawCategory {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            morphisms: morphisms
                .iter()
                .map(|(n, s, t)| (n.to_string(), s.to_string(), t.to_string()))
                .collect(),
            ..Default::default()
        };
        for o in objects {
            let id = format!("id_{o}");
            raw.morphisms
                .push((id.clone(), o.to_string(), o.to_string()));
            raw.identities.push((o.to_string(), id));
        }
        for (name, s, t) in raw.morphisms.clone() {
            raw.composites
                .push((format!("id_{t}"), name.clone(), name.clone()));
            if !name.starts_with("id_") {
                raw.composites
                    .push((name.clone(), format!("id_{s}"), name.clone()));
            }
        }
        raw
    }

    #[test]
    fn walking_arrow_tables_validate() {
        let c = FinCat::from_raw(&raw(&["a", "b"], &[("f", "a", "b")])).unwrap();
        assert_eq!(c.ob_count(), 2);
        assert_eq!(c.mor_count(), 3);
        let f = c.find_mor("f").unwrap();
        assert_eq!(c.ob_name(c.src(f)), "a");
        assert!(!c.is_identity(f));
        assert!(c.inverse(f).is_none());
    }

    #[test]
    fn dangling_object_is_named() {
        let mut r = raw(&["a"], &[]);
        r.morphisms.push(("f".into(), "a".into(), "zz".into()));
        let err = FinCat::from_raw(&r).unwrap_err();
        assert!(err.violations.contains(&CategoryViolation::DanglingObject {
            morphism: "f".into(),
            object: "zz".into()
        }));
    }

    #[test]
    fn partial_table_reports_missing_pair() {
        let mut r = raw(
            &["a", "b", "c"],
            &[("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")],
        );
        r.composites.retain(|(g, f, _)| !(g == "id_b" && f == "f"));
        let err = FinCat::from_raw(&r).unwrap_err();
        assert!(err.violations.iter().any(
            |v| matches!(v, CategoryViolation::MissingComposite { g, f } if g == "id_b" && f == "f")
        ));
        // g.f is also undeclared
        assert!(err.violations.iter().any(
            |v| matches!(v, CategoryViolation::MissingComposite { g, f } if g == "g" && f == "f")
        ));
    }

    #[test]
    fn broken_left_identity_is_reported() {
        let mut r = raw(&["a", "b"], &[("f", "a", "b"), ("f2", "a", "b")]);
        for c in r.composites.iter_mut() {
            if c.0 == "id_b" && c.1 == "f" {
                c.2 = "f2".into();
            }
        }
        let err = FinCat::from_raw(&r).unwrap_err();
        assert!(err
            .violations
            .contains(&CategoryViolation::LeftIdentity { f: "f".into() }));
    }

    #[test]
    fn opposite_is_an_involution() {
        let c = FinCat::from_raw(&raw(&["a", "b"], &[("f", "a", "b")])).unwrap();
        let op = c.opposite();
        let f = op.find_mor("f").unwrap();
        assert_eq!(op.ob_name(op.src(f)), "b");
        assert_eq!(op.opposite(), c);
    }

    #[test]
    fn canonical_sorts_and_preserves_structure() {
        let c = FinCat::from_raw(&raw(&["b", "a"], &[("f", "b", "a")])).unwrap();
        let k = c.canonical();
        assert_eq!(k.ob_name(ObjId::new(0)), "a");
        assert!(c.same_tables(&k));
        assert_eq!(k.canonical(), k);
    }
}
