//! One handler per subcommand. Each resolves its inputs from the workspace,
//! calls into the core crate and records the outcome in a [`Report`].

use grothkit_core::budget::{Budget, Search};
use grothkit_core::groth::{base_change, cocone_factorize, factorize, groth, GrothTotal};
use grothkit_core::indexed::{
    discrete_check_diagram, discrete_check_opfib, dualize_diagram, dualize_opfib, indexed_fibres,
    indexed_groth, pseudonat_check, pullback_diagram_opfib, roundtrip_diagram, roundtrip_opfib,
    IndexedError,
};
use grothkit_core::iso::{iso_search, IsoWitness};
use grothkit_core::opfib::{
    check_cleavage_preserving, check_discrete_opfib, fibres, is_cartesian, is_opfibration,
    pullback_opfib, OpfibError,
};
use grothkit_core::report::{Method, RoundtripReport};
use grothkit_core::{stock, CatDiagram, FinCat};
use grothkit_dsl::{print_workspace, samples, Kind, Workspace};
use serde_json::{json, Value};

use crate::report::{iso_json, Outcome, Report};
use crate::{Command, Fail, Global, Indexed};

pub struct Ctx {
    pub ws: Workspace,
    pub inputs: Vec<String>,
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail::Usage(msg.into())
}

/// The entity named by `flag`, or the last one of `kind` when absent.
fn pick(ws: &Workspace, kind: Kind, flag: Option<&str>) -> Result<String, Fail> {
    match flag {
        Some(n) if ws.contains(kind, n) => Ok(n.to_owned()),
        Some(n) => Err(usage(format!("no {} named `{n}`", kind.keyword()))),
        None => ws
            .last(kind)
            .map(str::to_owned)
            .ok_or_else(|| usage(format!("the input declares no {}", kind.keyword()))),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

/// Records a search result for an isomorphism claim.
fn record_search(r: &mut Report, s: Search<IsoWitness>, what: &str) {
    match s {
        Search::Found(w) => {
            match w.verify() {
                Ok(()) => r.note(format!("{what}: witness found and verified")),
                Err(e) => r.refute(json!({ "what": what, "error": e.to_string() })),
            };
            r.witness(iso_json(&w, Some(Method::Search)));
        }
        Search::ProvedNone => {
            r.refute(
                json!({ "what": what, "reason": "search space exhausted without an isomorphism" }),
            );
        }
        Search::Exceeded => {
            r.note(format!("{what}: budget exhausted"))
                .set(Outcome::BudgetExceeded);
        }
    }
}

fn record_roundtrip(r: &mut Report, rt: RoundtripReport) {
    r.note(rt.detail.clone());
    if let Some(w) = &rt.witness {
        r.witness(iso_json(w, rt.method));
    }
    r.set(rt.verdict);
    if r.verdict == Outcome::Refuted {
        r.counterexamples.push(json!({ "detail": rt.detail }));
    }
}

fn indexed_fail(r: &mut Report, e: IndexedError) -> Result<(), Fail> {
    match e {
        IndexedError::BaseMismatch => Err(usage(e.to_string())),
        IndexedError::Criterion(rep) => {
            r.refute(to_json(&rep));
            Ok(())
        }
        IndexedError::Opfib(err) => {
            r.refute(opfib_error_json(&err));
            Ok(())
        }
    }
}

fn opfib_error_json(e: &OpfibError) -> Value {
    match e {
        OpfibError::NotSplit(rep) => {
            json!({ "error": "not split", "report": to_json(rep.as_ref()) })
        }
        other => json!({ "error": other.to_string() }),
    }
}

fn sizes(c: &FinCat) -> Value {
    json!({ "objects": c.ob_count(), "morphisms": c.mor_count() })
}

/// The diagram on the base of `z` whose total category that base is.
fn infer_over(ws: &Workspace, z: &CatDiagram, flag: Option<&str>) -> Result<String, Fail> {
    if flag.is_some() {
        return pick(ws, Kind::Diagram, flag);
    }
    ws.diagrams
        .iter()
        .find(|(_, e)| groth(&e.value).total().same_tables(z.base()))
        .map(|(n, _)| n.clone())
        .ok_or_else(|| {
            usage(
                "no diagram has the base of the chosen diagram as its total category; pass --over",
            )
        })
}

pub fn run(cmd: &Command, ctx: &Ctx, budget: &mut Budget) -> Result<Report, Fail> {
    let ws = &ctx.ws;
    let mut r = Report::new(&cmd.label(), &ctx.inputs, budget);
    match cmd {
        Command::Validate => validate(ws, &mut r),
        Command::Build => {
            let ex = ws.expanded();
            r.note(format!("{} declarations after expansion", ex.order().len()))
                .document(&ex);
        }
        Command::Iso { left, right } => {
            let names: Vec<&String> = ws.categories.keys().collect();
            let l = match left {
                Some(_) => pick(ws, Kind::Category, left.as_deref())?,
                None => names
                    .first()
                    .map(|s| s.to_string())
                    .ok_or_else(|| usage("no categories"))?,
            };
            let rt = match right {
                Some(_) => pick(ws, Kind::Category, right.as_deref())?,
                None => names
                    .get(1)
                    .map(|s| s.to_string())
                    .ok_or_else(|| usage("need two categories or --right"))?,
            };
            let (c, d) = (&ws.categories[&l].value, &ws.categories[&rt].value);
            r.graph(&l, c).graph(&rt, d);
            record_search(&mut r, iso_search(c, d, budget), &format!("{l} ~ {rt}"));
        }
        Command::Groth { diagram } => {
            let n = pick(ws, Kind::Diagram, diagram.as_deref())?;
            let gt = groth(&ws.diagrams[&n].value);
            groth_output(&mut r, &gt);
        }
        Command::Ungroth { cleavage } => {
            let n = pick(ws, Kind::Cleavage, cleavage.as_deref())?;
            let q = &ws.cleavages[&n].value;
            match fibres(q) {
                Ok(sys) => {
                    let base = q.base();
                    for a in base.objects() {
                        let fib = sys.diagram.at(a);
                        r.witness(json!({ "fibre": base.ob_name(a), "size": sizes(fib) }));
                        r.graph(&format!("fibre_{}", base.ob_name(a)), fib);
                    }
                    let mut out = Workspace::new();
                    out.add_diagram("fibres", &sys.diagram);
                    r.document(&out);
                }
                Err(e) => {
                    r.refute(opfib_error_json(&e));
                }
            }
        }
        Command::Factorize { diagram, morphism } => {
            let n = pick(ws, Kind::Diagram, diagram.as_deref())?;
            let gt = groth(&ws.diagrams[&n].value);
            let tot = gt.total();
            let ms: Vec<_> = match morphism {
                Some(m) => {
                    vec![tot.find_mor(m).ok_or_else(|| {
                        usage(format!("the total category has no morphism `{m}`"))
                    })?]
                }
                None => tot.morphisms().filter(|&m| !tot.is_identity(m)).collect(),
            };
            let (p, base) = (gt.projection(), gt.base());
            for m in ms {
                let fz = factorize(&gt, m);
                let entry = json!({
                    "morphism": tot.mor_name(m),
                    "cartesian": tot.mor_name(fz.cartesian),
                    "vertical": tot.mor_name(fz.vertical),
                });
                let ok = tot.comp(fz.vertical, fz.cartesian) == m
                    && is_cartesian(p, fz.cartesian)
                    && base.is_identity(p.mor(fz.vertical));
                if ok {
                    r.witness(entry);
                } else {
                    r.refute(entry);
                }
            }
        }
        Command::CoconeFactorize { cocone } => {
            let n = pick(ws, Kind::Cocone, cocone.as_deref())?;
            let sigma = &ws.cocones[&n].value;
            let gt = groth(sigma.diagram());
            match cocone_factorize(&gt, sigma) {
                Ok(f) => {
                    let raw = f.to_raw();
                    r.witness(json!({ "objects": raw.ob_map, "morphisms": raw.mor_map }));
                    let mut out = Workspace::new();
                    out.add_category("total", gt.total());
                    out.add_functor("factor", &f);
                    r.document(&out);
                }
                Err(e) => {
                    r.refute(to_json(&e));
                }
            }
        }
        Command::BaseChange { functor, diagram } => {
            let hn = pick(ws, Kind::Functor, functor.as_deref())?;
            let dn = pick(ws, Kind::Diagram, diagram.as_deref())?;
            let (h, d) = (&ws.functors[&hn].value, &ws.diagrams[&dn].value);
            if !h.cod().same_tables(d.base()) {
                return Err(usage(format!("`{hn}` does not land on the base of `{dn}`")));
            }
            match base_change(h, d) {
                Ok(bc) => {
                    if let Err(e) = bc.witness.verify() {
                        r.refute(json!({ "error": e.to_string() }));
                    }
                    r.witness(iso_json(&bc.witness, Some(Method::Canonical)));
                    r.witness(json!({ "cleavage_preserving": bc.cleavage_preserving }));
                    if !bc.cleavage_preserving {
                        r.refute(
                            json!({ "error": "the comparison does not preserve chosen lifts" }),
                        );
                    }
                    r.note(format!(
                        "total of the reindexed diagram: {}",
                        sizes(bc.reindexed.total())
                    ));
                }
                Err(e) => {
                    r.refute(json!({ "error": e }));
                }
            }
        }
        Command::CheckOpfib { cleavage, opfib } => {
            if opfib.is_some() || (cleavage.is_none() && ws.last(Kind::Cleavage).is_none()) {
                let n = pick(ws, Kind::Opfib, opfib.as_deref())?;
                let rep = ws.opfibs[&n].value.check();
                r.witness(json!({ "opfib": n, "failures": rep.failures.len() }));
                for f in &rep.failures {
                    r.refute(to_json(f));
                }
            } else {
                let n = pick(ws, Kind::Cleavage, cleavage.as_deref())?;
                let q = &ws.cleavages[&n].value;
                let status = q.status();
                r.note(format!("{n}: {status}"));
                r.note(format!(
                    "every morphism has a cartesian lift: {}",
                    is_opfibration(q.functor())
                ));
                r.witness(json!({ "cleavage": n, "report": to_json(status) }));
                for c in status.counterexamples() {
                    r.refute(to_json(c));
                }
            }
        }
        Command::CheckDiscrete {
            functor,
            cleavage,
            opfib,
        } => {
            let p = if let Some(f) = functor {
                Some(
                    ws.functors[&pick(ws, Kind::Functor, Some(f))?]
                        .value
                        .clone(),
                )
            } else if let Some(c) = cleavage {
                Some(
                    ws.cleavages[&pick(ws, Kind::Cleavage, Some(c))?]
                        .value
                        .functor()
                        .clone(),
                )
            } else if opfib.is_some() || ws.last(Kind::Opfib).is_some() {
                None
            } else {
                Some(ws.functors[&pick(ws, Kind::Functor, None)?].value.clone())
            };
            match p {
                Some(p) => match check_discrete_opfib(&p) {
                    None => {
                        r.note("every lifting problem has exactly one solution");
                    }
                    Some(c) => {
                        r.refute(to_json(&c));
                    }
                },
                None => {
                    let n = pick(ws, Kind::Opfib, opfib.as_deref())?;
                    let rep = ws.opfibs[&n].value.check_discrete();
                    for f in &rep.failures {
                        r.refute(to_json(f));
                    }
                }
            }
        }
        Command::CheckCleavage {
            top,
            bottom,
            from,
            to,
        } => {
            let h = &ws.functors[&pick(ws, Kind::Functor, Some(top))?].value;
            let k = &ws.functors[&pick(ws, Kind::Functor, Some(bottom))?].value;
            let q1 = &ws.cleavages[&pick(ws, Kind::Cleavage, Some(from))?].value;
            let q2 = &ws.cleavages[&pick(ws, Kind::Cleavage, Some(to))?].value;
            match check_cleavage_preserving(h, k, q1, q2) {
                None => {
                    r.note("the square commutes and chosen lifts go to chosen lifts");
                }
                Some(f) => {
                    r.refute(to_json(&f));
                }
            }
        }
        Command::Pullback {
            functor,
            cleavage,
            diagmor,
            opfib,
        } => {
            let classical = functor.is_some()
                || cleavage.is_some()
                || (diagmor.is_none() && opfib.is_none() && ws.last(Kind::Cleavage).is_some());
            if classical {
                let h = &ws.functors[&pick(ws, Kind::Functor, functor.as_deref())?].value;
                let q = &ws.cleavages[&pick(ws, Kind::Cleavage, cleavage.as_deref())?].value;
                if !h.cod().same_tables(q.base()) {
                    return Err(usage(
                        "the functor does not land on the base of the cleavage",
                    ));
                }
                match pullback_opfib(h, q) {
                    Ok(pb) => {
                        let status = pb.opfib.status();
                        for c in status.counterexamples() {
                            r.refute(to_json(c));
                        }
                        r.witness(json!({ "total": sizes(pb.opfib.total()) }));
                        r.graph("pullback", pb.opfib.total());
                        let mut out = Workspace::new();
                        out.add_cleavage("pulled", &pb.opfib);
                        r.document(&out);
                    }
                    Err(e) => {
                        r.refute(opfib_error_json(&e));
                    }
                }
            } else {
                let alpha = &ws.diagmors[&pick(ws, Kind::DiagMor, diagmor.as_deref())?].value;
                let phi = &ws.opfibs[&pick(ws, Kind::Opfib, opfib.as_deref())?].value;
                match pullback_diagram_opfib(alpha, phi) {
                    Ok(pb) => {
                        let rep = pb.opfib.check();
                        for f in &rep.failures {
                            r.refute(to_json(f));
                        }
                        let mut out = Workspace::new();
                        out.add_opfib("pulled", &pb.opfib);
                        r.document(&out);
                    }
                    Err(e) => {
                        r.refute(opfib_error_json(&e));
                    }
                }
            }
        }
        Command::Indexed(sub) => indexed(sub, ws, &mut r, budget)?,
        Command::Examples { .. } => unreachable!("handled before inputs are read"),
    }
    r.spend(budget);
    Ok(r)
}

fn validate(ws: &Workspace, r: &mut Report) {
    let count = |k: Kind| ws.order().iter().filter(|(kind, _)| *kind == k).count();
    let kinds = [
        Kind::Category,
        Kind::Functor,
        Kind::NatTrans,
        Kind::Diagram,
        Kind::DiagMor,
        Kind::Cleavage,
        Kind::Opfib,
        Kind::Cocone,
    ];
    let summary: Vec<String> = kinds
        .iter()
        .filter(|&&k| count(k) > 0)
        .map(|&k| format!("{} {}", count(k), k.keyword()))
        .collect();
    r.note(if summary.is_empty() {
        "empty input".to_owned()
    } else {
        summary.join(", ")
    });
    for (n, e) in &ws.categories {
        r.graph(n, &e.value);
    }
    for (n, e) in &ws.cleavages {
        for c in e.value.status().counterexamples() {
            r.refute(json!({ "cleavage": n, "counterexample": to_json(c) }));
        }
    }
    for (n, e) in &ws.opfibs {
        for f in e.value.check().failures {
            r.refute(json!({ "opfib": n, "failure": to_json(&f) }));
        }
    }
}

fn groth_output(r: &mut Report, gt: &GrothTotal) {
    let (tot, base) = (gt.total(), gt.base());
    r.witness(json!({ "total": sizes(tot), "base": sizes(base) }));
    for c in gt.opfib().status().counterexamples() {
        r.refute(to_json(c));
    }
    if let Some(f) = grothkit_core::groth::check_interchange(gt) {
        r.refute(to_json(&f));
    }
    r.graph("total", tot);
    let mut out = Workspace::new();
    out.add_category("total", tot);
    out.add_category("base", base);
    out.add_functor("projection", gt.projection());
    out.add_cleavage("cleavage", gt.opfib());
    r.document(&out);
}

fn indexed(sub: &Indexed, ws: &Workspace, r: &mut Report, budget: &mut Budget) -> Result<(), Fail> {
    match sub {
        Indexed::Groth { diagram, over } => {
            let zn = pick(ws, Kind::Diagram, diagram.as_deref())?;
            let z = &ws.diagrams[&zn].value;
            let f = &ws.diagrams[&infer_over(ws, z, over.as_deref())?].value;
            match indexed_groth(z, f) {
                Ok(ig) => {
                    for fl in &ig.opfib.check().failures {
                        r.refute(to_json(fl));
                    }
                    let base = ig.opfib.base();
                    for a in base.objects() {
                        r.witness(json!({ "object": base.ob_name(a), "total": sizes(ig.opfib.total().at(a)) }));
                    }
                    let mut out = Workspace::new();
                    out.add_opfib("phi", &ig.opfib);
                    r.document(&out);
                }
                Err(e) => indexed_fail(r, e)?,
            }
        }
        Indexed::Fibres { opfib } => {
            let phi = &ws.opfibs[&pick(ws, Kind::Opfib, opfib.as_deref())?].value;
            match indexed_fibres(phi) {
                Ok(res) => {
                    r.witness(json!({ "base": sizes(res.z.base()) }));
                    r.graph("base", res.z.base());
                    let mut out = Workspace::new();
                    out.add_diagram("z", &res.z);
                    r.document(&out);
                }
                Err(e) => indexed_fail(r, e)?,
            }
        }
        Indexed::Roundtrip {
            opfib,
            diagram,
            over,
        } => {
            if opfib.is_some() || (diagram.is_none() && ws.last(Kind::Opfib).is_some()) {
                let phi = &ws.opfibs[&pick(ws, Kind::Opfib, opfib.as_deref())?].value;
                record_roundtrip(r, roundtrip_opfib(phi, budget));
            } else {
                let z = &ws.diagrams[&pick(ws, Kind::Diagram, diagram.as_deref())?].value;
                let f = &ws.diagrams[&infer_over(ws, z, over.as_deref())?].value;
                record_roundtrip(r, roundtrip_diagram(z, f, budget));
            }
        }
        Indexed::Discrete {
            opfib,
            diagram,
            over,
        } => {
            let res = if opfib.is_some() || (diagram.is_none() && ws.last(Kind::Opfib).is_some()) {
                discrete_check_opfib(&ws.opfibs[&pick(ws, Kind::Opfib, opfib.as_deref())?].value)
            } else {
                let z = &ws.diagrams[&pick(ws, Kind::Diagram, diagram.as_deref())?].value;
                let f = &ws.diagrams[&infer_over(ws, z, over.as_deref())?].value;
                discrete_check_diagram(z, f)
            };
            match res {
                Ok(rep) => {
                    r.note(format!(
                        "discrete: {}, set-valued: {}",
                        rep.discrete, rep.set_valued
                    ));
                    if rep.agrees() {
                        r.witness(to_json(&rep));
                    } else {
                        r.refute(to_json(&rep));
                    }
                }
                Err(e) => indexed_fail(r, e)?,
            }
        }
        Indexed::Pseudonat { diagmor, opfib } => {
            let alpha = &ws.diagmors[&pick(ws, Kind::DiagMor, diagmor.as_deref())?].value;
            let phi = &ws.opfibs[&pick(ws, Kind::Opfib, opfib.as_deref())?].value;
            match pseudonat_check(alpha, phi, budget) {
                Ok(rep) => record_roundtrip(
                    r,
                    RoundtripReport {
                        verdict: rep.verdict,
                        method: rep.method,
                        witness: rep.witness,
                        detail: rep.detail,
                    },
                ),
                Err(e) => indexed_fail(r, e)?,
            }
        }
        Indexed::Dualize { opfib, diagram } => {
            if diagram.is_some() || (opfib.is_none() && ws.last(Kind::Opfib).is_none()) {
                let d = &ws.diagrams[&pick(ws, Kind::Diagram, diagram.as_deref())?].value;
                let dual = dualize_diagram(d);
                let back = dualize_diagram(&dual);
                r.witness(json!({ "involution": back == *d }));
                if back != *d {
                    r.refute(json!({ "error": "dualizing twice changed the diagram" }));
                }
                let mut out = Workspace::new();
                out.add_diagram("dual", &dual);
                r.document(&out);
            } else {
                let phi = &ws.opfibs[&pick(ws, Kind::Opfib, opfib.as_deref())?].value;
                let dual = dualize_opfib(phi);
                match dual.check() {
                    Ok(reports) => {
                        for (a, rep) in phi.base().objects().zip(&reports) {
                            let name = phi.base().ob_name(a);
                            r.witness(json!({ "object": name, "split_fibration": rep.pass() }));
                            for c in rep.counterexamples() {
                                r.refute(json!({ "object": name, "counterexample": to_json(c) }));
                            }
                        }
                    }
                    Err(e) => {
                        r.refute(opfib_error_json(&e));
                    }
                }
                match dual.dualize() {
                    Ok(back) if back == *phi => {
                        r.witness(json!({ "involution": true }));
                    }
                    Ok(_) => {
                        r.refute(json!({ "error": "dualizing twice changed the opfibration" }));
                    }
                    Err(e) => {
                        r.refute(opfib_error_json(&e));
                    }
                }
                let mut out = Workspace::new();
                out.add_diagram("dual_over", &dual.over);
                out.add_diagram("dual_total", &dual.total);
                for (a, p) in phi.base().objects().zip(&dual.components) {
                    out.add_functor(&format!("dual_{}", phi.base().ob_name(a)), p);
                }
                r.document(&out);
            }
        }
    }
    Ok(())
}

/// Every shipped example as `(name, document)`: the sample files, the stock
/// diagrams, then `random` sampled diagrams.
fn example_documents(random: usize, seed: u64) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = samples::SAMPLES
        .iter()
        .map(|(n, text)| (n.trim_end_matches(".cat").to_owned(), text.to_string()))
        .collect();
    for (n, d) in stock::examples() {
        let mut ws = Workspace::new();
        ws.add_diagram(n, &d);
        out.push((format!("stock_{n}"), print_workspace(&ws)));
    }
    let bases = stock::indexed_bases();
    let mut rng = stock::seeded(seed);
    for i in 0..random {
        let base = bases[i % bases.len()].0;
        let d = stock::random_diagram(&mut rng, base);
        let mut ws = Workspace::new();
        ws.add_diagram(&format!("random_{i}"), &d);
        out.push((format!("random_{i}"), print_workspace(&ws)));
    }
    out
}

pub fn examples(g: &Global, name: Option<&str>, random: usize, budget: &Budget) -> Report {
    let mut r = Report::new("examples", &[], budget);
    let docs = example_documents(random, g.seed);
    match name {
        Some(n) => match docs.iter().find(|(m, _)| m == n) {
            Some((_, text)) => {
                r.document = Some(text.clone());
            }
            None => {
                r.set(Outcome::Error)
                    .note(format!("no example named `{n}`"));
                r.counterexamples
                    .push(json!({ "error": format!("no example named `{n}`") }));
            }
        },
        None => {
            let dir = g.output.as_ref();
            if let Some(dir) = dir {
                if let Err(e) = std::fs::create_dir_all(dir) {
                    r.set(Outcome::Error)
                        .note(format!("cannot create `{}`: {e}", dir.display()));
                    return r;
                }
            }
            for (n, text) in &docs {
                if let Some(dir) = dir {
                    let path = dir.join(format!("{n}.cat"));
                    if let Err(e) = std::fs::write(&path, text) {
                        r.set(Outcome::Error)
                            .note(format!("cannot write `{}`: {e}", path.display()));
                        return r;
                    }
                }
                r.note(n.clone());
            }
            r.witness(json!({ "examples": docs.iter().map(|(n, _)| n).collect::<Vec<_>>() }));
        }
    }
    r
}
