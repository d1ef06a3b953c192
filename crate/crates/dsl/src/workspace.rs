//! Name resolution: declarations become validated entities.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use grothkit_core::fincat::{
    build, same_cat, CatDiagram, DiagramMor, DiagramReport, DiagramViolation, FinCat, FunctorData,
    FunctorReport, FunctorViolation, MorId, NatTransData, NatTransReport, NatTransViolation, ObjId,
    RawCategory,
};
use grothkit_core::groth::{groth, inc_cocone, CoconeError, LaxCocone};
use grothkit_core::indexed::{
    indexed_fibres, indexed_groth, projection_opfib, pullback_diagram_opfib,
    representable_presheaf, DiagramOpfib, DiagramOpfibFailure, DiagramOpfibReport,
};
use grothkit_core::opfib::{discrete_cleavage, fibres, pullback_opfib, Cleavage, CleavedOpfib};
use indexmap::IndexMap;

use crate::ast::{Decl, Def, Expr, Kind, Located, Pair, Triple};
use crate::diag::{Class, Diagnostic, Law, Pos};
use crate::parser::parse_file;

/// Name of the implicit identity on `x`.
pub fn default_id(x: &str) -> String {
    format!("id_{x}")
}

#[derive(Clone, Debug)]
pub struct CatEntry {
    pub value: Arc<FinCat>,
    /// The builder expression, for entities declared with `=`.
    pub expr: Option<Expr>,
}

#[derive(Clone, Debug)]
pub struct FunctorEntry {
    pub value: FunctorData,
    pub dom: String,
    pub cod: String,
    pub expr: Option<Expr>,
}

#[derive(Clone, Debug)]
pub struct NatEntry {
    pub value: NatTransData,
    pub dom: String,
    pub cod: String,
    pub expr: Option<Expr>,
}

#[derive(Clone, Debug)]
pub struct DiagramEntry {
    pub value: CatDiagram,
    pub base: String,
    pub at_ob: Vec<String>,
    /// `None` on identities.
    pub at_mor: Vec<Option<String>>,
    pub expr: Option<Expr>,
}

#[derive(Clone, Debug)]
pub struct DiagMorEntry {
    pub value: DiagramMor,
    pub dom: String,
    pub cod: String,
    pub components: Vec<String>,
    pub expr: Option<Expr>,
}

/// Lift placement is checked on entry; the split laws are not.
#[derive(Clone, Debug)]
pub struct CleavageEntry {
    pub value: CleavedOpfib,
    pub functor: String,
    pub expr: Option<Expr>,
}

/// Only the shape is checked on entry; see [`DiagramOpfib::check`].
#[derive(Clone, Debug)]
pub struct OpfibEntry {
    pub value: DiagramOpfib,
    pub over: String,
    pub total: String,
    /// `(functor, cleavage)` per base object.
    pub components: Vec<(String, String)>,
    pub expr: Option<Expr>,
}

#[derive(Clone, Debug)]
pub struct CoconeEntry {
    pub value: LaxCocone,
    pub diagram: String,
    pub vertex: String,
    pub components: Vec<String>,
    pub expr: Option<Expr>,
}

/// Named entities in declaration order.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub categories: IndexMap<String, CatEntry>,
    pub functors: IndexMap<String, FunctorEntry>,
    pub nattrans: IndexMap<String, NatEntry>,
    pub diagrams: IndexMap<String, DiagramEntry>,
    pub diagmors: IndexMap<String, DiagMorEntry>,
    pub cleavages: IndexMap<String, CleavageEntry>,
    pub opfibs: IndexMap<String, OpfibEntry>,
    pub cocones: IndexMap<String, CoconeEntry>,
    order: Vec<(Kind, String)>,
    /// Names helpers must not take.
    reserved: HashSet<String>,
}

fn reference(pos: &Pos, msg: impl Into<String>) -> Diagnostic {
    Diagnostic::new(Class::Reference, pos.clone(), msg)
}

fn builder(pos: &Pos, detail: impl Into<String>) -> Diagnostic {
    let detail = detail.into();
    Diagnostic::law(pos.clone(), "builder", Law::Builder { detail })
}

fn functor_law(pos: &Pos, name: &str, violations: Vec<FunctorViolation>) -> Diagnostic {
    Diagnostic::law(
        pos.clone(),
        &format!("functor `{name}`"),
        Law::Functor {
            report: FunctorReport { violations },
        },
    )
}

fn diagram_law(pos: &Pos, what: &str, report: DiagramReport) -> Diagnostic {
    Diagnostic::law(pos.clone(), what, Law::Diagram { report })
}

fn opfib_shape(pos: &Pos, name: &str, detail: String) -> Diagnostic {
    let report = DiagramOpfibReport {
        failures: vec![DiagramOpfibFailure::Shape { detail }],
    };
    Diagnostic::law(
        pos.clone(),
        &format!("opfib `{name}`"),
        Law::Opfib { report },
    )
}

fn find_ob(c: &FinCat, l: &Located, what: &str) -> Result<ObjId, Diagnostic> {
    c.find_ob(&l.name)
        .ok_or_else(|| reference(&l.pos, format!("`{}` is not an object of {what}", l.name)))
}

fn find_mor(c: &FinCat, l: &Located, what: &str) -> Result<MorId, Diagnostic> {
    c.find_mor(&l.name)
        .ok_or_else(|| reference(&l.pos, format!("`{}` is not a morphism of {what}", l.name)))
}

/// Rejects a second entry for the same key.
fn once<K: std::hash::Hash + Eq, V>(
    map: &mut HashMap<K, V>,
    k: K,
    v: V,
    pos: &Pos,
    what: &str,
) -> Result<(), Diagnostic> {
    if map.insert(k, v).is_some() {
        return Err(Diagnostic::new(
            Class::Semantic,
            pos.clone(),
            format!("{what} is given twice"),
        ));
    }
    Ok(())
}

/// Explicit tables; identities implicit, composites with identities filled in.
fn explicit_category(
    name: &Located,
    objects: &[Located],
    arrows: &[Triple],
    ids: &[Pair],
    compose: &[Triple],
) -> Result<FinCat, Diagnostic> {
    let declared: HashSet<&str> = objects.iter().map(|o| o.name.as_str()).collect();
    let mut id_of: HashMap<&str, String> = HashMap::new();
    for (o, e) in ids {
        if !declared.contains(o.name.as_str()) {
            return Err(reference(
                &o.pos,
                format!("`{}` is not a declared object", o.name),
            ));
        }
        once(
            &mut id_of,
            o.name.as_str(),
            e.name.clone(),
            &o.pos,
            &format!("identity of `{}`", o.name),
        )?;
    }
    let mut raw = RawCategory {
        objects: objects.iter().map(|o| o.name.clone()).collect(),
        ..Default::default()
    };
    let mut ends: HashMap<String, (String, String)> = HashMap::new();
    for o in objects {
        let id = id_of
            .get(o.name.as_str())
            .cloned()
            .unwrap_or_else(|| default_id(&o.name));
        raw.morphisms
            .push((id.clone(), o.name.clone(), o.name.clone()));
        raw.identities.push((o.name.clone(), id.clone()));
        ends.insert(id, (o.name.clone(), o.name.clone()));
    }
    for (f, a, b) in arrows {
        for end in [a, b] {
            if !declared.contains(end.name.as_str()) {
                return Err(reference(
                    &end.pos,
                    format!("`{}` is not a declared object", end.name),
                ));
            }
        }
        raw.morphisms
            .push((f.name.clone(), a.name.clone(), b.name.clone()));
        ends.insert(f.name.clone(), (a.name.clone(), b.name.clone()));
    }
    let mut given: HashSet<(&str, &str)> = HashSet::new();
    for (g, f, h) in compose {
        for m in [g, f, h] {
            if !ends.contains_key(&m.name) {
                return Err(reference(
                    &m.pos,
                    format!("`{}` is not a declared morphism", m.name),
                ));
            }
        }
        given.insert((g.name.as_str(), f.name.as_str()));
        raw.composites
            .push((g.name.clone(), f.name.clone(), h.name.clone()));
    }
    let mut extra = Vec::new();
    for (o, id) in &raw.identities {
        for (m, s, t) in &raw.morphisms {
            if t == o && !given.contains(&(id.as_str(), m.as_str())) {
                extra.push((id.clone(), m.clone(), m.clone()));
            }
            if s == o && m != id && !given.contains(&(m.as_str(), id.as_str())) {
                extra.push((m.clone(), id.clone(), m.clone()));
            }
        }
    }
    raw.composites.extend(extra);
    FinCat::from_raw(&raw).map_err(|report| {
        Diagnostic::law(
            name.pos.clone(),
            &format!("category `{}`", name.name),
            Law::Category { report },
        )
    })
}

fn int(e: &Expr) -> Result<usize, Diagnostic> {
    match e {
        Expr::Name(l) => l
            .name
            .parse::<usize>()
            .ok()
            .filter(|&n| n <= 64)
            .ok_or_else(|| {
                reference(
                    &l.pos,
                    format!("expected a size from 0 to 64, found `{}`", l.name),
                )
            }),
        Expr::Call { head, .. } => Err(reference(&head.pos, "expected a number")),
    }
}

fn bare(e: &Expr) -> Result<&Located, Diagnostic> {
    match e {
        Expr::Name(l) => Ok(l),
        Expr::Call { head, .. } => Err(reference(
            &head.pos,
            "expected a name, found a builder call",
        )),
    }
}

fn arity<'e>(head: &Located, args: &'e [Expr], n: usize) -> Result<&'e [Expr], Diagnostic> {
    if args.len() == n {
        Ok(args)
    } else {
        Err(reference(
            &head.pos,
            format!(
                "`{}` takes {n} argument(s), found {}",
                head.name,
                args.len()
            ),
        ))
    }
}

fn unknown_builder(head: &Located, kind: Kind, known: &str) -> Diagnostic {
    reference(
        &head.pos,
        format!(
            "`{}` is not a {} builder; known: {known}",
            head.name,
            kind.keyword()
        ),
    )
}

impl Workspace {
    pub fn new() -> Workspace {
        Workspace::default()
    }

    /// Parses and resolves one file.
    pub fn parse(file: &str, text: &str) -> Result<Workspace, Diagnostic> {
        let mut ws = Workspace::new();
        ws.extend(file, text)?;
        Ok(ws)
    }

    /// Adds the declarations of another file; later files may refer to
    /// entities of earlier ones.
    pub fn extend(&mut self, file: &str, text: &str) -> Result<(), Diagnostic> {
        for d in parse_file(file, text)? {
            self.declare(&d)?;
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Declarations in order, as `(kind, name)`.
    pub fn order(&self) -> &[(Kind, String)] {
        &self.order
    }

    pub fn contains(&self, kind: Kind, name: &str) -> bool {
        match kind {
            Kind::Category => self.categories.contains_key(name),
            Kind::Functor => self.functors.contains_key(name),
            Kind::NatTrans => self.nattrans.contains_key(name),
            Kind::Diagram => self.diagrams.contains_key(name),
            Kind::DiagMor => self.diagmors.contains_key(name),
            Kind::Cleavage => self.cleavages.contains_key(name),
            Kind::Opfib => self.opfibs.contains_key(name),
            Kind::Cocone => self.cocones.contains_key(name),
        }
    }

    fn category(&self, l: &Located) -> Result<&CatEntry, Diagnostic> {
        self.categories
            .get(&l.name)
            .ok_or_else(|| reference(&l.pos, format!("no category named `{}`", l.name)))
    }

    fn functor(&self, l: &Located) -> Result<&FunctorEntry, Diagnostic> {
        self.functors
            .get(&l.name)
            .ok_or_else(|| reference(&l.pos, format!("no functor named `{}`", l.name)))
    }

    fn diagram(&self, l: &Located) -> Result<&DiagramEntry, Diagnostic> {
        self.diagrams
            .get(&l.name)
            .ok_or_else(|| reference(&l.pos, format!("no diagram named `{}`", l.name)))
    }

    fn cleavage(&self, l: &Located) -> Result<&CleavageEntry, Diagnostic> {
        self.cleavages
            .get(&l.name)
            .ok_or_else(|| reference(&l.pos, format!("no cleavage named `{}`", l.name)))
    }

    fn declare(&mut self, d: &Decl) -> Result<(), Diagnostic> {
        let name = &d.name;
        if self.contains(d.kind, &name.name) {
            return Err(reference(
                &name.pos,
                format!("{} `{}` is declared twice", d.kind.keyword(), name.name),
            ));
        }
        let expr = match &d.def {
            Def::Built(e) => Some(e.clone()),
            _ => None,
        };
        let key = name.name.clone();
        match (&d.def, d.kind) {
            (Def::Built(e), Kind::Category) => {
                let value = self.eval_category(e)?;
                self.categories
                    .insert(key.clone(), CatEntry { value, expr });
            }
            (
                Def::Category {
                    objects,
                    arrows,
                    ids,
                    compose,
                },
                _,
            ) => {
                let value = Arc::new(explicit_category(name, objects, arrows, ids, compose)?);
                self.categories
                    .insert(key.clone(), CatEntry { value, expr });
            }
            (Def::Built(e), Kind::Functor) => {
                let value = self.eval_functor(e)?;
                self.functors.insert(
                    key.clone(),
                    FunctorEntry {
                        value,
                        dom: String::new(),
                        cod: String::new(),
                        expr,
                    },
                );
            }
            (Def::Functor { dom, cod, ob, arr }, _) => {
                let value = self.explicit_functor(name, dom, cod, ob, arr)?;
                let entry = FunctorEntry {
                    value,
                    dom: dom.name.clone(),
                    cod: cod.name.clone(),
                    expr,
                };
                self.functors.insert(key.clone(), entry);
            }
            (Def::Built(e), Kind::NatTrans) => {
                let value = self.eval_nat(e)?;
                self.nattrans.insert(
                    key.clone(),
                    NatEntry {
                        value,
                        dom: String::new(),
                        cod: String::new(),
                        expr,
                    },
                );
            }
            (Def::NatTrans { dom, cod, at }, _) => {
                let value = self.explicit_nat(name, dom, cod, at)?;
                self.nattrans.insert(
                    key.clone(),
                    NatEntry {
                        value,
                        dom: dom.name.clone(),
                        cod: cod.name.clone(),
                        expr,
                    },
                );
            }
            (Def::Built(e), Kind::Diagram) => {
                let value = self.eval_diagram(e)?;
                let entry = DiagramEntry {
                    value,
                    base: String::new(),
                    at_ob: vec![],
                    at_mor: vec![],
                    expr,
                };
                self.diagrams.insert(key.clone(), entry);
            }
            (Def::Diagram { base, at }, _) => {
                let entry = self.explicit_diagram(name, base, at)?;
                self.diagrams.insert(key.clone(), entry);
            }
            (Def::Built(e), Kind::DiagMor) => {
                let value = self.eval_diagmor(e)?;
                let entry = DiagMorEntry {
                    value,
                    dom: String::new(),
                    cod: String::new(),
                    components: vec![],
                    expr,
                };
                self.diagmors.insert(key.clone(), entry);
            }
            (
                Def::DiagMor {
                    dom,
                    cod,
                    components,
                },
                _,
            ) => {
                let entry = self.explicit_diagmor(name, dom, cod, components)?;
                self.diagmors.insert(key.clone(), entry);
            }
            (Def::Built(e), Kind::Cleavage) => {
                let value = self.eval_cleavage(e)?;
                self.cleavages.insert(
                    key.clone(),
                    CleavageEntry {
                        value,
                        functor: String::new(),
                        expr,
                    },
                );
            }
            (Def::Cleavage { functor, lifts }, _) => {
                let value = self.explicit_cleavage(name, functor, lifts)?;
                self.cleavages.insert(
                    key.clone(),
                    CleavageEntry {
                        value,
                        functor: functor.name.clone(),
                        expr,
                    },
                );
            }
            (Def::Built(e), Kind::Opfib) => {
                let value = self.eval_opfib(e)?;
                let entry = OpfibEntry {
                    value,
                    over: String::new(),
                    total: String::new(),
                    components: vec![],
                    expr,
                };
                self.opfibs.insert(key.clone(), entry);
            }
            (
                Def::Opfib {
                    over,
                    total,
                    components,
                },
                _,
            ) => {
                let entry = self.explicit_opfib(name, over.as_ref(), total.as_ref(), components)?;
                self.opfibs.insert(key.clone(), entry);
            }
            (Def::Built(e), Kind::Cocone) => {
                let value = self.eval_cocone(e)?;
                let entry = CoconeEntry {
                    value,
                    diagram: String::new(),
                    vertex: String::new(),
                    components: vec![],
                    expr,
                };
                self.cocones.insert(key.clone(), entry);
            }
            (
                Def::Cocone {
                    diagram,
                    vertex,
                    components,
                    cells,
                },
                _,
            ) => {
                let entry =
                    self.explicit_cocone(name, diagram, vertex.as_ref(), components, cells)?;
                self.cocones.insert(key.clone(), entry);
            }
        }
        self.order.push((d.kind, key));
        Ok(())
    }

    fn explicit_functor(
        &self,
        name: &Located,
        dom: &Located,
        cod: &Located,
        ob: &[Pair],
        arr: &[Pair],
    ) -> Result<FunctorData, Diagnostic> {
        let (c, d) = (
            self.category(dom)?.value.clone(),
            self.category(cod)?.value.clone(),
        );
        let mut obs = HashMap::new();
        for (a, b) in ob {
            let (x, y) = (
                find_ob(&c, a, &format!("`{}`", dom.name))?,
                find_ob(&d, b, &format!("`{}`", cod.name))?,
            );
            once(&mut obs, x, y, &a.pos, &format!("image of `{}`", a.name))?;
        }
        let mut mors = HashMap::new();
        for (f, g) in arr {
            let (x, y) = (
                find_mor(&c, f, &format!("`{}`", dom.name))?,
                find_mor(&d, g, &format!("`{}`", cod.name))?,
            );
            once(&mut mors, x, y, &f.pos, &format!("image of `{}`", f.name))?;
        }
        let mut unmapped = Vec::new();
        let ob_map: Vec<ObjId> = c
            .objects()
            .map(|x| {
                obs.get(&x).copied().unwrap_or_else(|| {
                    unmapped.push(FunctorViolation::Unmapped {
                        what: format!("object `{}`", c.ob_name(x)),
                    });
                    x
                })
            })
            .collect();
        if !unmapped.is_empty() {
            return Err(functor_law(&name.pos, &name.name, unmapped));
        }
        let mor_map: Vec<MorId> = c
            .morphisms()
            .map(|f| match mors.get(&f) {
                Some(&g) => g,
                None if c.is_identity(f) => d.id(ob_map[c.src(f).index()]),
                None => {
                    unmapped.push(FunctorViolation::Unmapped {
                        what: format!("morphism `{}`", c.mor_name(f)),
                    });
                    f
                }
            })
            .collect();
        if !unmapped.is_empty() {
            return Err(functor_law(&name.pos, &name.name, unmapped));
        }
        FunctorData::new(c, d, ob_map, mor_map)
            .map_err(|r| functor_law(&name.pos, &name.name, r.violations))
    }

    fn explicit_nat(
        &self,
        name: &Located,
        dom: &Located,
        cod: &Located,
        at: &[Pair],
    ) -> Result<NatTransData, Diagnostic> {
        let (f, g) = (
            self.functor(dom)?.value.clone(),
            self.functor(cod)?.value.clone(),
        );
        let (c, d) = (f.dom().clone(), f.cod().clone());
        let mut comps = HashMap::new();
        for (x, m) in at {
            let (xi, mi) = (
                find_ob(&c, x, "the domain")?,
                find_mor(&d, m, "the codomain")?,
            );
            once(
                &mut comps,
                xi,
                mi,
                &x.pos,
                &format!("component at `{}`", x.name),
            )?;
        }
        let law = |violations| {
            Diagnostic::law(
                name.pos.clone(),
                &format!("nattrans `{}`", name.name),
                Law::NatTrans {
                    report: NatTransReport { violations },
                },
            )
        };
        let missing: Vec<NatTransViolation> = c
            .objects()
            .filter(|x| !comps.contains_key(x))
            .map(|x| NatTransViolation::Unmapped {
                object: c.ob_name(x).to_owned(),
            })
            .collect();
        if !missing.is_empty() {
            return Err(law(missing));
        }
        let components = c.objects().map(|x| comps[&x]).collect();
        NatTransData::new(f, g, components).map_err(|r| law(r.violations))
    }

    fn explicit_diagram(
        &self,
        name: &Located,
        base: &Located,
        at: &[Pair],
    ) -> Result<DiagramEntry, Diagnostic> {
        let a = self.category(base)?.value.clone();
        let (mut obs, mut mors) = (HashMap::new(), HashMap::new());
        for (k, v) in at {
            if let Some(x) = a.find_ob(&k.name) {
                let c = self.category(v)?;
                once(
                    &mut obs,
                    x,
                    (v.name.clone(), c.value.clone()),
                    &k.pos,
                    &format!("`at {}`", k.name),
                )?;
            } else if let Some(h) = a.find_mor(&k.name) {
                let t = self.functor(v)?;
                once(
                    &mut mors,
                    h,
                    (v.name.clone(), t.value.clone()),
                    &k.pos,
                    &format!("`at {}`", k.name),
                )?;
            } else {
                return Err(reference(
                    &k.pos,
                    format!(
                        "`{}` is neither an object nor a morphism of `{}`",
                        k.name, base.name
                    ),
                ));
            }
        }
        let what = format!("diagram `{}`", name.name);
        let shape = |detail: String| {
            diagram_law(
                &name.pos,
                &what,
                DiagramReport {
                    violations: vec![DiagramViolation::Shape { detail }],
                },
            )
        };
        let mut at_ob = Vec::new();
        let mut cats = Vec::new();
        for x in a.objects() {
            let Some((n, c)) = obs.get(&x) else {
                return Err(shape(format!("no category at `{}`", a.ob_name(x))));
            };
            at_ob.push(n.clone());
            cats.push(c.clone());
        }
        let mut at_mor = Vec::new();
        let mut funs = Vec::new();
        for h in a.morphisms() {
            match mors.get(&h) {
                Some((n, t)) => {
                    at_mor.push(if a.is_identity(h) {
                        None
                    } else {
                        Some(n.clone())
                    });
                    funs.push(t.clone());
                }
                None if a.is_identity(h) => {
                    at_mor.push(None);
                    funs.push(FunctorData::identity(&cats[a.src(h).index()]));
                }
                None => return Err(shape(format!("no functor at `{}`", a.mor_name(h)))),
            }
        }
        let value = CatDiagram::new(a, cats, funs).map_err(|r| diagram_law(&name.pos, &what, r))?;
        Ok(DiagramEntry {
            value,
            base: base.name.clone(),
            at_ob,
            at_mor,
            expr: None,
        })
    }

    fn explicit_diagmor(
        &self,
        name: &Located,
        dom: &Located,
        cod: &Located,
        components: &[Pair],
    ) -> Result<DiagMorEntry, Diagnostic> {
        let (f, g) = (
            self.diagram(dom)?.value.clone(),
            self.diagram(cod)?.value.clone(),
        );
        let a = f.base().clone();
        let mut comps = HashMap::new();
        for (k, v) in components {
            let x = find_ob(&a, k, "the base")?;
            let t = self.functor(v)?;
            once(
                &mut comps,
                x,
                (v.name.clone(), t.value.clone()),
                &k.pos,
                &format!("component at `{}`", k.name),
            )?;
        }
        let what = format!("diagmor `{}`", name.name);
        if let Some(x) = a.objects().find(|x| !comps.contains_key(x)) {
            let detail = format!("no component at `{}`", a.ob_name(x));
            return Err(diagram_law(
                &name.pos,
                &what,
                DiagramReport {
                    violations: vec![DiagramViolation::Shape { detail }],
                },
            ));
        }
        let names = a.objects().map(|x| comps[&x].0.clone()).collect();
        let value = DiagramMor::new(f, g, a.objects().map(|x| comps[&x].1.clone()).collect())
            .map_err(|r| diagram_law(&name.pos, &what, r))?;
        Ok(DiagMorEntry {
            value,
            dom: dom.name.clone(),
            cod: cod.name.clone(),
            components: names,
            expr: None,
        })
    }

    fn explicit_cleavage(
        &self,
        name: &Located,
        functor: &Located,
        lifts: &[Triple],
    ) -> Result<CleavedOpfib, Diagnostic> {
        let p = self.functor(functor)?.value.clone();
        let (e, c) = (p.dom().clone(), p.cod().clone());
        let mut map = HashMap::new();
        for (x, f, l) in lifts {
            let key = (
                find_ob(&e, x, "the total category")?,
                find_mor(&c, f, "the base")?,
            );
            let li = find_mor(&e, l, "the total category")?;
            once(
                &mut map,
                key,
                li,
                &x.pos,
                &format!("lift of (`{}`, `{}`)", x.name, f.name),
            )?;
        }
        for x in e.objects() {
            let fx = c.id(p.ob(x));
            map.entry((x, fx)).or_insert(e.id(x));
        }
        CleavedOpfib::new(p, Cleavage::from_map(map)).map_err(|err| {
            Diagnostic::law(
                name.pos.clone(),
                &format!("cleavage `{}`", name.name),
                Law::Cleavage {
                    detail: err.to_string(),
                },
            )
        })
    }

    fn explicit_opfib(
        &self,
        name: &Located,
        over: Option<&Located>,
        total: Option<&Located>,
        components: &[Triple],
    ) -> Result<OpfibEntry, Diagnostic> {
        let missing = |what: &str| {
            Diagnostic::new(
                Class::Syntax,
                name.pos.clone(),
                format!("opfib `{}` needs `{what}:`", name.name),
            )
        };
        let over = over.ok_or_else(|| missing("over"))?;
        let total = total.ok_or_else(|| missing("total"))?;
        let (f, g) = (
            self.diagram(over)?.value.clone(),
            self.diagram(total)?.value.clone(),
        );
        if !same_cat(f.base(), g.base()) {
            return Err(opfib_shape(
                &name.pos,
                &name.name,
                "over and total diagrams live on different bases".into(),
            ));
        }
        let a = f.base().clone();
        let mut comps = HashMap::new();
        for (k, p, cl) in components {
            let x = find_ob(&a, k, "the base")?;
            let pf = self.functor(p)?;
            let ce = self.cleavage(cl)?;
            let matches = if ce.expr.is_none() {
                ce.functor == p.name
            } else {
                *ce.value.functor() == pf.value
            };
            if !matches {
                return Err(reference(
                    &cl.pos,
                    format!("cleavage `{}` is not a cleavage of `{}`", cl.name, p.name),
                ));
            }
            let v = (p.name.clone(), cl.name.clone(), ce.value.clone());
            once(
                &mut comps,
                x,
                v,
                &k.pos,
                &format!("component at `{}`", k.name),
            )?;
        }
        let mut names = Vec::new();
        let mut cleaved = Vec::new();
        for x in a.objects() {
            let Some((p, cl, q)) = comps.get(&x) else {
                return Err(opfib_shape(
                    &name.pos,
                    &name.name,
                    format!("no component at `{}`", a.ob_name(x)),
                ));
            };
            if !same_cat(q.total(), g.at(x)) || !same_cat(q.base(), f.at(x)) {
                return Err(opfib_shape(
                    &name.pos,
                    &name.name,
                    format!("component at `{}` has the wrong boundary", a.ob_name(x)),
                ));
            }
            names.push((p.clone(), cl.clone()));
            cleaved.push(q.clone());
        }
        Ok(OpfibEntry {
            value: DiagramOpfib::candidate(f, g, cleaved),
            over: over.name.clone(),
            total: total.name.clone(),
            components: names,
            expr: None,
        })
    }

    fn explicit_cocone(
        &self,
        name: &Located,
        diagram: &Located,
        vertex: Option<&Located>,
        components: &[Pair],
        cells: &[Triple],
    ) -> Result<CoconeEntry, Diagnostic> {
        let vertex = vertex.ok_or_else(|| {
            Diagnostic::new(
                Class::Syntax,
                name.pos.clone(),
                format!("cocone `{}` needs `vertex:`", name.name),
            )
        })?;
        let d = self.diagram(diagram)?.value.clone();
        let u = self.category(vertex)?.value.clone();
        let a = d.base().clone();
        let law = |error| {
            Diagnostic::law(
                name.pos.clone(),
                &format!("cocone `{}`", name.name),
                Law::Cocone { error },
            )
        };
        let mut comps = HashMap::new();
        for (k, v) in components {
            let x = find_ob(&a, k, "the base")?;
            let t = self.functor(v)?;
            once(
                &mut comps,
                x,
                (v.name.clone(), t.value.clone()),
                &k.pos,
                &format!("component at `{}`", k.name),
            )?;
        }
        let mut cell_map = HashMap::new();
        for (f, x, m) in cells {
            let fi = find_mor(&a, f, "the base")?;
            let xi = find_ob(d.at(a.src(fi)), x, "the source fibre")?;
            let mi = find_mor(&u, m, "the vertex")?;
            once(
                &mut cell_map,
                (fi, xi),
                mi,
                &f.pos,
                &format!("cell at (`{}`, `{}`)", f.name, x.name),
            )?;
        }
        let mut names = Vec::new();
        let mut funs = Vec::new();
        for x in a.objects() {
            let Some((n, t)) = comps.get(&x) else {
                return Err(law(CoconeError::Shape {
                    detail: format!("no component at `{}`", a.ob_name(x)),
                }));
            };
            names.push(n.clone());
            funs.push(t.clone());
        }
        let mut cell_components = Vec::new();
        for f in a.morphisms() {
            let src = a.src(f);
            let mut col = Vec::new();
            for x in d.at(src).objects() {
                match cell_map.get(&(f, x)) {
                    Some(&m) => col.push(m),
                    None if a.is_identity(f) => col.push(u.id(funs[src.index()].ob(x))),
                    None => {
                        return Err(law(CoconeError::Shape {
                            detail: format!(
                                "no cell at (`{}`, `{}`)",
                                a.mor_name(f),
                                d.at(src).ob_name(x)
                            ),
                        }))
                    }
                }
            }
            cell_components.push(col);
        }
        let value = LaxCocone::from_components(d, u, funs, cell_components).map_err(law)?;
        Ok(CoconeEntry {
            value,
            diagram: diagram.name.clone(),
            vertex: vertex.name.clone(),
            components: names,
            expr: None,
        })
    }

    // builders

    pub(crate) fn eval_category(&self, e: &Expr) -> Result<Arc<FinCat>, Diagnostic> {
        let (head, args): (&Located, &[Expr]) = match e {
            Expr::Name(l) => {
                if let Some(c) = self.categories.get(&l.name) {
                    return Ok(c.value.clone());
                }
                (l, &[])
            }
            Expr::Call { head, args } => (head, args),
        };
        let c = match head.name.as_str() {
            "terminal" => build::terminal(),
            "walking_arrow" => build::walking_arrow(),
            "walking_iso" => build::walking_iso(),
            "commutative_square" => build::commutative_square(),
            "discrete" | "chain" | "cyclic" => {
                let n = int(&arity(head, args, 1)?[0])?;
                match head.name.as_str() {
                    "discrete" => build::discrete(n),
                    "chain" if n > 0 => build::chain(n),
                    "cyclic" if n > 0 => build::delooping(&build::CayleyTable::cyclic(n))
                        .map_err(|err| builder(&head.pos, err.to_string()))?,
                    _ => return Err(builder(&head.pos, format!("`{}` needs a positive size", head.name))),
                }
            }
            "product" => {
                let a = arity(head, args, 2)?;
                build::product(&*self.eval_category(&a[0])?, &*self.eval_category(&a[1])?)
            }
            "opposite" => build::opposite(&*self.eval_category(&arity(head, args, 1)?[0])?),
            "slice" | "coslice" => {
                let a = arity(head, args, 2)?;
                let c = self.eval_category(&a[0])?;
                let x = bare(&a[1])?;
                find_ob(&c, x, "the category")?;
                let built = if head.name == "slice" { build::slice(&c, &x.name) } else { build::coslice(&c, &x.name) };
                built.map_err(|err| builder(&head.pos, err.to_string()))?
            }
            "groth" => {
                let d = self.eval_diagram(&arity(head, args, 1)?[0])?;
                return Ok(groth(&d).total().clone());
            }
            _ if matches!(e, Expr::Name(_)) => {
                return Err(reference(&head.pos, format!("no category named `{}`", head.name)))
            }
            _ => {
                return Err(unknown_builder(
                    head,
                    Kind::Category,
                    "terminal, walking_arrow, walking_iso, commutative_square, discrete, chain, cyclic, product, opposite, slice, coslice, groth",
                ))
            }
        };
        if matches!(e, Expr::Call { .. })
            && !matches!(
                head.name.as_str(),
                "discrete" | "chain" | "cyclic" | "product" | "opposite" | "slice" | "coslice"
            )
        {
            arity(head, args, 0)?;
        }
        Ok(Arc::new(c))
    }

    pub(crate) fn eval_functor(&self, e: &Expr) -> Result<FunctorData, Diagnostic> {
        let (head, args) = match e {
            Expr::Name(l) => return Ok(self.functor(l)?.value.clone()),
            Expr::Call { head, args } => (head, args),
        };
        match head.name.as_str() {
            "identity" => Ok(FunctorData::identity(
                &self.eval_category(&arity(head, args, 1)?[0])?,
            )),
            "compose" => {
                let a = arity(head, args, 2)?;
                let (g, f) = (self.eval_functor(&a[0])?, self.eval_functor(&a[1])?);
                if !same_cat(f.cod(), g.dom()) {
                    return Err(builder(
                        &head.pos,
                        "compose(G, F) needs the codomain of F to be the domain of G",
                    ));
                }
                Ok(FunctorData::compose(&g, &f))
            }
            "projection" => Ok(groth(&self.eval_diagram(&arity(head, args, 1)?[0])?)
                .projection()
                .clone()),
            "constant" => {
                let a = arity(head, args, 3)?;
                let (c, d) = (self.eval_category(&a[0])?, self.eval_category(&a[1])?);
                let x = find_ob(&d, bare(&a[2])?, "the codomain")?;
                Ok(FunctorData::constant(&c, &d, x))
            }
            _ => Err(unknown_builder(
                head,
                Kind::Functor,
                "identity, compose, projection, constant",
            )),
        }
    }

    pub(crate) fn eval_nat(&self, e: &Expr) -> Result<NatTransData, Diagnostic> {
        match e {
            Expr::Name(l) => self
                .nattrans
                .get(&l.name)
                .map(|n| n.value.clone())
                .ok_or_else(|| reference(&l.pos, format!("no nattrans named `{}`", l.name))),
            Expr::Call { head, args } if head.name == "identity" => Ok(NatTransData::identity(
                &self.eval_functor(&arity(head, args, 1)?[0])?,
            )),
            Expr::Call { head, .. } => Err(unknown_builder(head, Kind::NatTrans, "identity")),
        }
    }

    pub(crate) fn eval_diagram(&self, e: &Expr) -> Result<CatDiagram, Diagnostic> {
        let (head, args) = match e {
            Expr::Name(l) => return Ok(self.diagram(l)?.value.clone()),
            Expr::Call { head, args } => (head, args),
        };
        let fail = |msg: String| builder(&head.pos, msg);
        match head.name.as_str() {
            "constant" => {
                let a = arity(head, args, 2)?;
                Ok(CatDiagram::constant(&self.eval_category(&a[0])?, &self.eval_category(&a[1])?))
            }
            "corepresentable" | "representable" => {
                let a = arity(head, args, 2)?;
                let c = self.eval_category(&a[0])?;
                let x = find_ob(&c, bare(&a[1])?, "the category")?;
                Ok(if head.name == "corepresentable" {
                    CatDiagram::corepresentable(&c, x)
                } else {
                    representable_presheaf(&c, x)
                })
            }
            "product" => {
                let a = arity(head, args, 2)?;
                let (l, r) = (self.eval_diagram(&a[0])?, self.eval_diagram(&a[1])?);
                if !same_cat(l.base(), r.base()) {
                    return Err(fail("product of diagrams on different bases".into()));
                }
                Ok(CatDiagram::product(&l, &r))
            }
            "precompose" => {
                let a = arity(head, args, 2)?;
                let (d, h) = (self.eval_diagram(&a[0])?, self.eval_functor(&a[1])?);
                if !same_cat(h.cod(), d.base()) {
                    return Err(fail("precompose(D, H) needs H to land in the base of D".into()));
                }
                Ok(d.precompose(&h))
            }
            "dual" => Ok(self.eval_diagram(&arity(head, args, 1)?[0])?.opposite_fibres()),
            "fibres" => {
                let q = self.eval_cleavage(&arity(head, args, 1)?[0])?;
                fibres(&q).map(|s| s.diagram).map_err(|err| fail(err.to_string()))
            }
            "indexed_fibres" => {
                let phi = self.eval_opfib(&arity(head, args, 1)?[0])?;
                indexed_fibres(&phi).map(|r| r.z).map_err(|err| fail(err.to_string()))
            }
            _ => Err(unknown_builder(
                head,
                Kind::Diagram,
                "constant, corepresentable, representable, product, precompose, dual, fibres, indexed_fibres",
            )),
        }
    }

    pub(crate) fn eval_diagmor(&self, e: &Expr) -> Result<DiagramMor, Diagnostic> {
        let (head, args) = match e {
            Expr::Name(l) => {
                return self
                    .diagmors
                    .get(&l.name)
                    .map(|n| n.value.clone())
                    .ok_or_else(|| reference(&l.pos, format!("no diagmor named `{}`", l.name)))
            }
            Expr::Call { head, args } => (head, args),
        };
        match head.name.as_str() {
            "identity" => Ok(DiagramMor::identity(
                &self.eval_diagram(&arity(head, args, 1)?[0])?,
            )),
            "compose" => {
                let a = arity(head, args, 2)?;
                let (second, first) = (self.eval_diagmor(&a[0])?, self.eval_diagmor(&a[1])?);
                if first.target() != second.source() {
                    return Err(builder(
                        &head.pos,
                        "compose(b, a) needs the target of a to be the source of b",
                    ));
                }
                Ok(DiagramMor::compose(&second, &first))
            }
            _ => Err(unknown_builder(head, Kind::DiagMor, "identity, compose")),
        }
    }

    pub(crate) fn eval_cleavage(&self, e: &Expr) -> Result<CleavedOpfib, Diagnostic> {
        let (head, args) = match e {
            Expr::Name(l) => return Ok(self.cleavage(l)?.value.clone()),
            Expr::Call { head, args } => (head, args),
        };
        let fail = |msg: String| builder(&head.pos, msg);
        match head.name.as_str() {
            "groth" => Ok(groth(&self.eval_diagram(&arity(head, args, 1)?[0])?)
                .opfib()
                .clone()),
            "identity" => Ok(CleavedOpfib::identity(
                &self.eval_category(&arity(head, args, 1)?[0])?,
            )),
            "discrete" => {
                let p = self.eval_functor(&arity(head, args, 1)?[0])?;
                let cl = discrete_cleavage(&p)
                    .ok_or_else(|| fail("the functor is not a discrete opfibration".into()))?;
                CleavedOpfib::new(p, cl).map_err(|err| fail(err.to_string()))
            }
            "pullback" => {
                let a = arity(head, args, 2)?;
                let (h, q) = (self.eval_functor(&a[0])?, self.eval_cleavage(&a[1])?);
                pullback_opfib(&h, &q)
                    .map(|p| p.opfib)
                    .map_err(|err| fail(err.to_string()))
            }
            _ => Err(unknown_builder(
                head,
                Kind::Cleavage,
                "groth, identity, discrete, pullback",
            )),
        }
    }

    pub(crate) fn eval_opfib(&self, e: &Expr) -> Result<DiagramOpfib, Diagnostic> {
        let (head, args) = match e {
            Expr::Name(l) => {
                return self
                    .opfibs
                    .get(&l.name)
                    .map(|n| n.value.clone())
                    .ok_or_else(|| reference(&l.pos, format!("no opfib named `{}`", l.name)))
            }
            Expr::Call { head, args } => (head, args),
        };
        let fail = |msg: String| builder(&head.pos, msg);
        match head.name.as_str() {
            "identity" => Ok(DiagramOpfib::identity(
                &self.eval_diagram(&arity(head, args, 1)?[0])?,
            )),
            "projection" => {
                let a = arity(head, args, 2)?;
                let (f, h) = (self.eval_diagram(&a[0])?, self.eval_diagram(&a[1])?);
                if !same_cat(f.base(), h.base()) {
                    return Err(fail("projection of diagrams on different bases".into()));
                }
                Ok(projection_opfib(&f, &h))
            }
            "groth" => {
                let a = arity(head, args, 2)?;
                let (z, f) = (self.eval_diagram(&a[0])?, self.eval_diagram(&a[1])?);
                indexed_groth(&z, &f)
                    .map(|r| r.opfib)
                    .map_err(|err| fail(err.to_string()))
            }
            "pullback" => {
                let a = arity(head, args, 2)?;
                let (alpha, phi) = (self.eval_diagmor(&a[0])?, self.eval_opfib(&a[1])?);
                pullback_diagram_opfib(&alpha, &phi)
                    .map(|r| r.opfib)
                    .map_err(|err| fail(err.to_string()))
            }
            _ => Err(unknown_builder(
                head,
                Kind::Opfib,
                "identity, projection, groth, pullback",
            )),
        }
    }

    pub(crate) fn eval_cocone(&self, e: &Expr) -> Result<LaxCocone, Diagnostic> {
        match e {
            Expr::Name(l) => self
                .cocones
                .get(&l.name)
                .map(|n| n.value.clone())
                .ok_or_else(|| reference(&l.pos, format!("no cocone named `{}`", l.name))),
            Expr::Call { head, args } if head.name == "inc" => Ok(inc_cocone(&groth(
                &self.eval_diagram(&arity(head, args, 1)?[0])?,
            ))),
            Expr::Call { head, .. } => Err(unknown_builder(head, Kind::Cocone, "inc")),
        }
    }

    // generated entities

    fn taken(&self, name: &str) -> bool {
        self.reserved.contains(name) || self.order.iter().any(|(_, n)| n == name)
    }

    /// `hint`, or `hint_2`, `hint_3`, ... if that name is in use.
    pub fn fresh(&self, hint: &str) -> String {
        if !self.taken(hint) {
            return hint.to_owned();
        }
        (2..)
            .map(|i| format!("{hint}_{i}"))
            .find(|n| !self.taken(n))
            .expect("unbounded")
    }

    fn claim(&self, kind: Kind, name: Option<&str>, hint: &str) -> String {
        match name {
            Some(n) => {
                assert!(
                    !self.contains(kind, n),
                    "{} `{n}` already exists",
                    kind.keyword()
                );
                n.to_owned()
            }
            None => self.fresh(hint),
        }
    }

    /// Adds `c` with explicit tables, reusing an equal category if present.
    pub fn add_category(&mut self, hint: &str, c: &Arc<FinCat>) -> String {
        if let Some((n, _)) = self.categories.iter().find(|(_, e)| same_cat(&e.value, c)) {
            return n.clone();
        }
        self.put_category(None, hint, c)
    }

    fn put_category(&mut self, name: Option<&str>, hint: &str, c: &Arc<FinCat>) -> String {
        let name = self.claim(Kind::Category, name, hint);
        self.categories.insert(
            name.clone(),
            CatEntry {
                value: c.clone(),
                expr: None,
            },
        );
        self.order.push((Kind::Category, name.clone()));
        name
    }

    pub fn add_functor(&mut self, hint: &str, f: &FunctorData) -> String {
        if let Some((n, _)) = self.functors.iter().find(|(_, e)| e.value == *f) {
            return n.clone();
        }
        self.put_functor(None, hint, f)
    }

    fn put_functor(&mut self, name: Option<&str>, hint: &str, f: &FunctorData) -> String {
        let dom = self.add_category(&format!("{hint}_dom"), f.dom());
        let cod = self.add_category(&format!("{hint}_cod"), f.cod());
        let name = self.claim(Kind::Functor, name, hint);
        self.functors.insert(
            name.clone(),
            FunctorEntry {
                value: f.clone(),
                dom,
                cod,
                expr: None,
            },
        );
        self.order.push((Kind::Functor, name.clone()));
        name
    }

    fn put_nat(&mut self, name: Option<&str>, hint: &str, t: &NatTransData) -> String {
        let dom = self.add_functor(&format!("{hint}_dom"), t.dom());
        let cod = self.add_functor(&format!("{hint}_cod"), t.cod());
        let name = self.claim(Kind::NatTrans, name, hint);
        self.nattrans.insert(
            name.clone(),
            NatEntry {
                value: t.clone(),
                dom,
                cod,
                expr: None,
            },
        );
        self.order.push((Kind::NatTrans, name.clone()));
        name
    }

    /// Adds `d` together with its base, fibres and transition functors.
    pub fn add_diagram(&mut self, hint: &str, d: &CatDiagram) -> String {
        if let Some((n, _)) = self.diagrams.iter().find(|(_, e)| e.value == *d) {
            return n.clone();
        }
        self.put_diagram(None, hint, d)
    }

    fn put_diagram(&mut self, name: Option<&str>, hint: &str, d: &CatDiagram) -> String {
        let a = d.base().clone();
        let base = self.add_category(&format!("{hint}_base"), &a);
        let at_ob = a
            .objects()
            .map(|x| self.add_category(&format!("{hint}_{}", a.ob_name(x)), d.at(x)))
            .collect();
        let at_mor = a
            .morphisms()
            .map(|h| {
                (!a.is_identity(h))
                    .then(|| self.add_functor(&format!("{hint}_{}", a.mor_name(h)), d.at_mor(h)))
            })
            .collect();
        let name = self.claim(Kind::Diagram, name, hint);
        self.diagrams.insert(
            name.clone(),
            DiagramEntry {
                value: d.clone(),
                base,
                at_ob,
                at_mor,
                expr: None,
            },
        );
        self.order.push((Kind::Diagram, name.clone()));
        name
    }

    pub fn add_diagmor(&mut self, hint: &str, m: &DiagramMor) -> String {
        self.put_diagmor(None, hint, m)
    }

    fn put_diagmor(&mut self, name: Option<&str>, hint: &str, m: &DiagramMor) -> String {
        let dom = self.add_diagram(&format!("{hint}_dom"), m.source());
        let cod = self.add_diagram(&format!("{hint}_cod"), m.target());
        let a = m.source().base().clone();
        let components = a
            .objects()
            .map(|x| self.add_functor(&format!("{hint}_{}", a.ob_name(x)), m.at(x)))
            .collect();
        let name = self.claim(Kind::DiagMor, name, hint);
        self.diagmors.insert(
            name.clone(),
            DiagMorEntry {
                value: m.clone(),
                dom,
                cod,
                components,
                expr: None,
            },
        );
        self.order.push((Kind::DiagMor, name.clone()));
        name
    }

    /// Adds `q` and its functor.
    pub fn add_cleavage(&mut self, hint: &str, q: &CleavedOpfib) -> String {
        if let Some((n, _)) = self
            .cleavages
            .iter()
            .find(|(_, e)| e.expr.is_none() && e.value == *q)
        {
            return n.clone();
        }
        self.put_cleavage(None, hint, q)
    }

    fn put_cleavage(&mut self, name: Option<&str>, hint: &str, q: &CleavedOpfib) -> String {
        let functor = self.add_functor(&format!("{hint}_p"), q.functor());
        let name = self.claim(Kind::Cleavage, name, hint);
        self.cleavages.insert(
            name.clone(),
            CleavageEntry {
                value: q.clone(),
                functor,
                expr: None,
            },
        );
        self.order.push((Kind::Cleavage, name.clone()));
        name
    }

    /// Adds `phi` with both diagrams and every component.
    pub fn add_opfib(&mut self, hint: &str, phi: &DiagramOpfib) -> String {
        self.put_opfib(None, hint, phi)
    }

    fn put_opfib(&mut self, name: Option<&str>, hint: &str, phi: &DiagramOpfib) -> String {
        let over = self.add_diagram(&format!("{hint}_over"), phi.over());
        let total = self.add_diagram(&format!("{hint}_total"), phi.total());
        let a = phi.base().clone();
        let components = a
            .objects()
            .map(|x| {
                let cl = self.add_cleavage(&format!("{hint}_{}", a.ob_name(x)), phi.at(x));
                (self.cleavages[&cl].functor.clone(), cl)
            })
            .collect();
        let name = self.claim(Kind::Opfib, name, hint);
        self.opfibs.insert(
            name.clone(),
            OpfibEntry {
                value: phi.clone(),
                over,
                total,
                components,
                expr: None,
            },
        );
        self.order.push((Kind::Opfib, name.clone()));
        name
    }

    fn put_cocone(&mut self, name: Option<&str>, hint: &str, s: &LaxCocone) -> String {
        let diagram = self.add_diagram(&format!("{hint}_diagram"), s.diagram());
        let vertex = self.add_category(&format!("{hint}_vertex"), s.vertex());
        let a = s.diagram().base().clone();
        let components = a
            .objects()
            .map(|x| self.add_functor(&format!("{hint}_{}", a.ob_name(x)), s.component(x)))
            .collect();
        let name = self.claim(Kind::Cocone, name, hint);
        self.cocones.insert(
            name.clone(),
            CoconeEntry {
                value: s.clone(),
                diagram,
                vertex,
                components,
                expr: None,
            },
        );
        self.order.push((Kind::Cocone, name.clone()));
        name
    }

    /// The same entities with every builder replaced by explicit tables.
    /// Helper entities get fresh names that avoid every name in `self`.
    pub fn expanded(&self) -> Workspace {
        let mut out = Workspace::new();
        out.reserved = self.order.iter().map(|(_, n)| n.clone()).collect();
        let hint = |n: &str| format!("{n}_part");
        for (kind, n) in &self.order {
            let name = Some(n.as_str());
            out.reserved.remove(n);
            match kind {
                Kind::Category => {
                    out.put_category(name, n, &self.categories[n].value);
                }
                Kind::Functor => {
                    out.put_functor(name, &hint(n), &self.functors[n].value);
                }
                Kind::NatTrans => {
                    out.put_nat(name, &hint(n), &self.nattrans[n].value);
                }
                Kind::Diagram => {
                    out.put_diagram(name, &hint(n), &self.diagrams[n].value);
                }
                Kind::DiagMor => {
                    out.put_diagmor(name, &hint(n), &self.diagmors[n].value);
                }
                Kind::Cleavage => {
                    out.put_cleavage(name, &hint(n), &self.cleavages[n].value);
                }
                Kind::Opfib => {
                    out.put_opfib(name, &hint(n), &self.opfibs[n].value);
                }
                Kind::Cocone => {
                    out.put_cocone(name, &hint(n), &self.cocones[n].value);
                }
            }
        }
        out.reserved.clear();
        out
    }

    /// Declared name of the last entity of `kind`.
    pub fn last(&self, kind: Kind) -> Option<&str> {
        self.order
            .iter()
            .rev()
            .find(|(k, _)| *k == kind)
            .map(|(_, n)| n.as_str())
    }
}
