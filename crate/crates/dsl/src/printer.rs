//! Canonical text output. Builder entities print as their expression,
//! explicit ones from their validated tables.

use std::fmt::Write;

use grothkit_core::fincat::FinCat;

use crate::ast::{Expr, Kind};
use crate::lexer::quote;
use crate::workspace::{default_id, Workspace};

pub fn print_expr(e: &Expr) -> String {
    match e {
        Expr::Name(l) => quote(&l.name),
        Expr::Call { head, args } => {
            let args: Vec<String> = args.iter().map(print_expr).collect();
            format!("{}({})", quote(&head.name), args.join(", "))
        }
    }
}

/// Appends `key:` followed by one indented line per entry, if any.
fn clause(out: &mut String, key: &str, lines: &[String]) {
    if lines.is_empty() {
        return;
    }
    let _ = writeln!(out, "  {key}:");
    for l in lines {
        let _ = writeln!(out, "    {l}");
    }
}

fn lines(out: &mut String, lines: &[String]) {
    for l in lines {
        let _ = writeln!(out, "  {l}");
    }
}

fn category_body(out: &mut String, c: &FinCat) {
    let q = quote;
    if c.ob_count() > 0 {
        let obs: Vec<String> = c.objects().map(|x| q(c.ob_name(x))).collect();
        let _ = writeln!(out, "  objects: {}", obs.join(" "));
    }
    let arrows: Vec<String> = c
        .morphisms()
        .filter(|&f| !c.is_identity(f))
        .map(|f| {
            format!(
                "{}: {} -> {}",
                q(c.mor_name(f)),
                q(c.ob_name(c.src(f))),
                q(c.ob_name(c.tgt(f)))
            )
        })
        .collect();
    clause(out, "arrows", &arrows);
    let ids: Vec<String> = c
        .objects()
        .filter(|&x| c.mor_name(c.id(x)) != default_id(c.ob_name(x)))
        .map(|x| format!("{} = {}", q(c.ob_name(x)), q(c.mor_name(c.id(x)))))
        .collect();
    clause(out, "ids", &ids);
    let mut compose = Vec::new();
    for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
        for &g in c.out_of(c.tgt(f)).iter().filter(|&&g| !c.is_identity(g)) {
            let h = c.comp(g, f);
            compose.push(format!(
                "{}.{} = {}",
                q(c.mor_name(g)),
                q(c.mor_name(f)),
                q(c.mor_name(h))
            ));
        }
    }
    clause(out, "compose", &compose);
}

/// The whole workspace in declaration order; empty for an empty workspace.
pub fn print_workspace(ws: &Workspace) -> String {
    let mut out = String::new();
    for (i, (kind, name)) in ws.order().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let n = quote(name);
        let kw = kind.keyword();
        let expr = match kind {
            Kind::Category => &ws.categories[name].expr,
            Kind::Functor => &ws.functors[name].expr,
            Kind::NatTrans => &ws.nattrans[name].expr,
            Kind::Diagram => &ws.diagrams[name].expr,
            Kind::DiagMor => &ws.diagmors[name].expr,
            Kind::Cleavage => &ws.cleavages[name].expr,
            Kind::Opfib => &ws.opfibs[name].expr,
            Kind::Cocone => &ws.cocones[name].expr,
        };
        if let Some(e) = expr {
            let _ = writeln!(out, "{kw} {n} = {}", print_expr(e));
            continue;
        }
        match kind {
            Kind::Category => {
                let _ = writeln!(out, "category {n} {{");
                category_body(&mut out, &ws.categories[name].value);
            }
            Kind::Functor => {
                let e = &ws.functors[name];
                let (f, c) = (&e.value, e.value.dom());
                let d = f.cod();
                let _ = writeln!(
                    out,
                    "functor {n} : {} -> {} {{",
                    quote(&e.dom),
                    quote(&e.cod)
                );
                let ob: Vec<String> = c
                    .objects()
                    .map(|x| format!("{} |-> {}", quote(c.ob_name(x)), quote(d.ob_name(f.ob(x)))))
                    .collect();
                clause(&mut out, "ob", &ob);
                let arr: Vec<String> = c
                    .morphisms()
                    .filter(|&m| !c.is_identity(m))
                    .map(|m| {
                        format!(
                            "{} |-> {}",
                            quote(c.mor_name(m)),
                            quote(d.mor_name(f.mor(m)))
                        )
                    })
                    .collect();
                clause(&mut out, "arr", &arr);
            }
            Kind::NatTrans => {
                let e = &ws.nattrans[name];
                let (c, d) = (e.value.dom().dom(), e.value.dom().cod());
                let _ = writeln!(
                    out,
                    "nattrans {n} : {} => {} {{",
                    quote(&e.dom),
                    quote(&e.cod)
                );
                let at: Vec<String> = c
                    .objects()
                    .map(|x| {
                        format!(
                            "at {} = {}",
                            quote(c.ob_name(x)),
                            quote(d.mor_name(e.value.at(x)))
                        )
                    })
                    .collect();
                lines(&mut out, &at);
            }
            Kind::Diagram => {
                let e = &ws.diagrams[name];
                let a = e.value.base();
                let _ = writeln!(out, "diagram {n} on {} {{", quote(&e.base));
                let mut at: Vec<String> = a
                    .objects()
                    .map(|x| {
                        format!(
                            "at {} = {}",
                            quote(a.ob_name(x)),
                            quote(&e.at_ob[x.index()])
                        )
                    })
                    .collect();
                at.extend(a.morphisms().filter_map(|h| {
                    e.at_mor[h.index()]
                        .as_ref()
                        .map(|t| format!("at {} = {}", quote(a.mor_name(h)), quote(t)))
                }));
                lines(&mut out, &at);
            }
            Kind::DiagMor => {
                let e = &ws.diagmors[name];
                let a = e.value.source().base();
                let _ = writeln!(
                    out,
                    "diagmor {n} : {} => {} {{",
                    quote(&e.dom),
                    quote(&e.cod)
                );
                let at: Vec<String> = a
                    .objects()
                    .map(|x| {
                        format!(
                            "component {} = {}",
                            quote(a.ob_name(x)),
                            quote(&e.components[x.index()])
                        )
                    })
                    .collect();
                lines(&mut out, &at);
            }
            Kind::Cleavage => {
                let e = &ws.cleavages[name];
                let p = e.value.functor();
                let (t, b) = (p.dom(), p.cod());
                let _ = writeln!(out, "cleavage {n} for {} {{", quote(&e.functor));
                let lifts: Vec<String> = e
                    .value
                    .cleavage()
                    .entries()
                    .into_iter()
                    .filter(|&(x, f, l)| !(b.is_identity(f) && l == t.id(x)))
                    .map(|(x, f, l)| {
                        format!(
                            "lift ({}, {}) |-> {}",
                            quote(t.ob_name(x)),
                            quote(b.mor_name(f)),
                            quote(t.mor_name(l))
                        )
                    })
                    .collect();
                lines(&mut out, &lifts);
            }
            Kind::Opfib => {
                let e = &ws.opfibs[name];
                let a = e.value.base();
                let _ = writeln!(out, "opfib {n} {{");
                let _ = writeln!(out, "  over: {}", quote(&e.over));
                let _ = writeln!(out, "  total: {}", quote(&e.total));
                let comps: Vec<String> = a
                    .objects()
                    .map(|x| {
                        let (p, cl) = &e.components[x.index()];
                        format!(
                            "component {} = ({}, {})",
                            quote(a.ob_name(x)),
                            quote(p),
                            quote(cl)
                        )
                    })
                    .collect();
                lines(&mut out, &comps);
            }
            Kind::Cocone => {
                let e = &ws.cocones[name];
                let s = &e.value;
                let (d, u) = (s.diagram(), s.vertex());
                let a = d.base();
                let _ = writeln!(out, "cocone {n} for {} {{", quote(&e.diagram));
                let _ = writeln!(out, "  vertex: {}", quote(&e.vertex));
                let mut body: Vec<String> = a
                    .objects()
                    .map(|x| {
                        format!(
                            "component {} = {}",
                            quote(a.ob_name(x)),
                            quote(&e.components[x.index()])
                        )
                    })
                    .collect();
                for f in a.morphisms().filter(|&f| !a.is_identity(f)) {
                    let fc = d.at(a.src(f));
                    for x in fc.objects() {
                        body.push(format!(
                            "cell ({}, {}) |-> {}",
                            quote(a.mor_name(f)),
                            quote(fc.ob_name(x)),
                            quote(u.mor_name(s.cell(f).at(x)))
                        ));
                    }
                }
                lines(&mut out, &body);
            }
        }
        out.push_str("}\n");
    }
    out
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Objects as nodes and non-identity morphisms as labelled edges.
pub fn dot(name: &str, c: &FinCat) -> String {
    let mut out = format!("digraph {} {{\n", dot_id(name));
    for x in c.objects() {
        let _ = writeln!(out, "  {};", dot_id(c.ob_name(x)));
    }
    for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            dot_id(c.ob_name(c.src(f))),
            dot_id(c.ob_name(c.tgt(f))),
            dot_id(c.mor_name(f))
        );
    }
    out.push_str("}\n");
    out
}
