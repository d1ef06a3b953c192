//! Shipped example instances, the verification corpora and a seeded random
//! generator of small diagrams.

use std::ops::ControlFlow;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::fincat::build::{self, CayleyTable};
use crate::fincat::{CatDiagram, DiagramMor, FinCat, FunctorData, MorId, ObjId};
use crate::indexed::{indexed_groth, projection_opfib, DiagramOpfib};
use crate::iso::{functor_enumerate, iso_enumerate, IsoConstraints};

pub fn arc(c: FinCat) -> Arc<FinCat> {
    Arc::new(c)
}

pub fn z2() -> Arc<FinCat> {
    arc(build::delooping(&CayleyTable::cyclic(2)).expect("cyclic group"))
}

pub fn z3() -> Arc<FinCat> {
    arc(build::delooping(&CayleyTable::cyclic(3)).expect("cyclic group"))
}

/// The five bases of the indexed corpus, by name.
pub fn indexed_bases() -> Vec<(&'static str, Arc<FinCat>)> {
    vec![
        ("terminal", arc(build::terminal())),
        ("walking_arrow", arc(build::walking_arrow())),
        ("walking_iso", arc(build::walking_iso())),
        ("chain3", arc(build::chain(3))),
        ("z2", z2()),
    ]
}

fn mor(c: &FinCat, name: &str) -> MorId {
    c.find_mor(name)
        .unwrap_or_else(|| panic!("no morphism `{name}`"))
}

fn ob(c: &FinCat, name: &str) -> ObjId {
    c.find_ob(name)
        .unwrap_or_else(|| panic!("no object `{name}`"))
}

/// A functor given by object and non-identity morphism names.
pub fn functor_by_names(
    dom: &Arc<FinCat>,
    cod: &Arc<FinCat>,
    obs: &[(&str, &str)],
    mors: &[(&str, &str)],
) -> FunctorData {
    let mut ob_map = vec![ObjId::new(0); dom.ob_count()];
    for (x, y) in obs {
        ob_map[ob(dom, x).index()] = ob(cod, y);
    }
    let mut mor_map: Vec<MorId> = dom
        .morphisms()
        .map(|f| cod.id(ob_map[dom.src(f).index()]))
        .collect();
    for (f, g) in mors {
        mor_map[mor(dom, f).index()] = mor(cod, g);
    }
    FunctorData::new(dom.clone(), cod.clone(), ob_map, mor_map).expect("stock functor")
}

/// `Δ1` on `a`.
pub fn delta_one(a: &Arc<FinCat>) -> CatDiagram {
    CatDiagram::constant(a, &arc(build::terminal()))
}

/// `ΔB` on `a`.
pub fn delta(a: &Arc<FinCat>, b: &Arc<FinCat>) -> CatDiagram {
    CatDiagram::constant(a, b)
}

/// A diagram on the walking arrow is a single functor `F̃: F(a) → F(b)`.
pub fn arrow_diagram(ft: &FunctorData) -> CatDiagram {
    let base = arc(build::walking_arrow());
    CatDiagram::from_fn(base, vec![ft.dom().clone(), ft.cod().clone()], |_| {
        ft.clone()
    })
    .unwrap_or_else(|r| panic!("arrow diagram: {r}"))
}

/// The worked example over the walking arrow: `F̃: 2 → 3`, `a ↦ 0`, `b ↦ 2`.
pub fn arrow_example() -> CatDiagram {
    let c = arc(build::walking_arrow());
    let d = arc(build::chain(3));
    arrow_diagram(&functor_by_names(
        &c,
        &d,
        &[("a", "0"), ("b", "2")],
        &[("f", "0<=2")],
    ))
}

/// A diagram on the walking iso: the swap of `discrete(2)`.
pub fn walking_iso_example() -> CatDiagram {
    let base = arc(build::walking_iso());
    let c = arc(build::discrete(2));
    let swap = functor_by_names(&c, &c, &[("0", "1"), ("1", "0")], &[]);
    CatDiagram::from_fn(base, vec![c.clone(), c], |_| swap.clone()).expect("swap is an involution")
}

/// `Z/2` acting on `Z/3` by inversion.
pub fn semidirect_example() -> CatDiagram {
    let base = z2();
    let fibre = z3();
    let inv = functor_by_names(&fibre, &fibre, &[("*", "*")], &[("1", "2"), ("2", "1")]);
    CatDiagram::from_fn(base, vec![fibre], |_| inv.clone()).expect("inversion is an involution")
}

/// A diagram on a discrete base: no transitions.
pub fn discrete_base_example() -> CatDiagram {
    let base = arc(build::discrete(2));
    let (x, y) = (arc(build::walking_arrow()), arc(build::discrete(2)));
    CatDiagram::from_fn(base, vec![x, y], |_| unreachable!("discrete base")).expect("discrete base")
}

/// `∫` over the terminal base: the single fibre.
pub fn terminal_example(c: &Arc<FinCat>) -> CatDiagram {
    CatDiagram::constant(&arc(build::terminal()), c)
}

/// Every shipped example, by name.
pub fn examples() -> Vec<(&'static str, CatDiagram)> {
    let sq = arc(build::commutative_square());
    vec![
        ("delta_one", delta_one(&sq)),
        (
            "delta_b",
            delta(&arc(build::walking_arrow()), &arc(build::walking_iso())),
        ),
        (
            "terminal_base",
            terminal_example(&arc(build::walking_arrow())),
        ),
        ("discrete_base", discrete_base_example()),
        ("arrow", arrow_example()),
        ("walking_iso", walking_iso_example()),
        ("semidirect", semidirect_example()),
        (
            "representable",
            crate::indexed::representable_presheaf(&sq, ob(&sq, "11")),
        ),
    ]
}

/// Small fibre categories.
fn fibre_pool() -> Vec<Arc<FinCat>> {
    vec![
        arc(build::terminal()),
        arc(build::discrete(2)),
        arc(build::walking_arrow()),
        arc(build::walking_iso()),
        arc(build::chain(3)),
        z2(),
        arc(build::discrete(3)),
    ]
}

fn all_functors(c: &Arc<FinCat>, d: &Arc<FinCat>) -> Vec<FunctorData> {
    let mut out = Vec::new();
    let _ = functor_enumerate(
        c,
        d,
        &IsoConstraints::default(),
        &mut Budget::default(),
        |f| {
            out.push(f.clone());
            ControlFlow::Continue(())
        },
    );
    out
}

fn all_isos(c: &Arc<FinCat>, d: &Arc<FinCat>) -> Vec<FunctorData> {
    let mut out = Vec::new();
    let _ = iso_enumerate(
        c,
        d,
        &IsoConstraints::default(),
        &mut Budget::default(),
        |f| {
            out.push(f.clone());
            ControlFlow::Continue(())
        },
    );
    out
}

/// A random diagram on one of the indexed bases with fibres from a small
/// pool. Transitions are uniform among functors (isos and involutions where
/// the base forces them).
pub fn random_diagram(rng: &mut impl Rng, base_name: &str) -> CatDiagram {
    let bases = indexed_bases();
    let base = bases
        .iter()
        .find(|(n, _)| *n == base_name)
        .expect("known base")
        .1
        .clone();
    let pool = fibre_pool();
    let pick = |rng: &mut dyn rand::RngCore| pool.choose(rng).expect("pool").clone();
    match base_name {
        "terminal" => CatDiagram::constant(&base, &pick(rng)),
        "walking_arrow" => {
            let (c, d) = (pick(rng), pick(rng));
            let fs = all_functors(&c, &d);
            arrow_diagram(fs.choose(rng).expect("some functor"))
        }
        "walking_iso" => {
            let c = pick(rng);
            let isos = all_isos(&c, &c);
            let t = isos.choose(rng).expect("identity").clone();
            let inv = t.inverse().expect("iso");
            let f = mor(&base, "f");
            CatDiagram::from_fn(base.clone(), vec![c.clone(), c], |h| {
                if h == f {
                    t.clone()
                } else {
                    inv.clone()
                }
            })
            .expect("iso diagram")
        }
        "chain3" => {
            let cs: Vec<Arc<FinCat>> = (0..3).map(|_| pick(rng)).collect();
            let g01 = all_functors(&cs[0], &cs[1])
                .choose(rng)
                .expect("functor")
                .clone();
            let g12 = all_functors(&cs[1], &cs[2])
                .choose(rng)
                .expect("functor")
                .clone();
            let g02 = FunctorData::compose(&g12, &g01);
            CatDiagram::from_fn(base.clone(), cs, |h| match base.mor_name(h) {
                "0<=1" => g01.clone(),
                "1<=2" => g12.clone(),
                _ => g02.clone(),
            })
            .expect("chain diagram")
        }
        _ => {
            let c = pick(rng);
            let inv: Vec<FunctorData> = all_isos(&c, &c)
                .into_iter()
                .filter(|t| FunctorData::compose(t, t).is_identity())
                .collect();
            let t = inv.choose(rng).expect("identity").clone();
            CatDiagram::from_fn(base.clone(), vec![c], |_| t.clone()).expect("involution")
        }
    }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random diagram on `∫F`: `D∘π`, sometimes times `Hom(e₀, -)`, for a
/// random `D` on the base of `F` and a random object `e₀` of `∫F`.
pub fn random_diagram_on_groth(rng: &mut impl Rng, f: &CatDiagram, base_name: &str) -> CatDiagram {
    let gf = crate::groth::groth(f);
    let d = retag(&random_diagram(rng, base_name), f.base());
    let along = d.precompose(gf.projection());
    if rng.gen_bool(0.5) {
        return along;
    }
    let e0 = ObjId::new(rng.gen_range(0..gf.total().ob_count()));
    CatDiagram::product(&along, &CatDiagram::corepresentable(gf.total(), e0))
}

/// The same diagram moved onto an equal-table copy `onto` of its base.
pub fn retag(d: &CatDiagram, onto: &Arc<FinCat>) -> CatDiagram {
    assert!(onto.same_tables(d.base()), "bases differ");
    let h = FunctorData::new(
        onto.clone(),
        d.base().clone(),
        onto.objects().collect(),
        onto.morphisms().collect(),
    )
    .expect("identity on tables");
    d.precompose(&h)
}

/// At least ten small diagrams (bases ≤ 4 objects, fibres ≤ 4 objects).
pub fn diagram_corpus() -> Vec<(String, CatDiagram)> {
    let mut out: Vec<(String, CatDiagram)> = examples()
        .into_iter()
        .map(|(n, d)| (n.to_owned(), d))
        .collect();
    let sq = arc(build::commutative_square());
    out.push((
        "delta_chain_on_square".into(),
        delta(&sq, &arc(build::chain(2))),
    ));
    out.push((
        "corep_square_00".into(),
        CatDiagram::corepresentable(&sq, ob(&sq, "00")),
    ));
    let mut rng = seeded(7);
    for (name, _) in indexed_bases() {
        out.push((format!("random_{name}"), random_diagram(&mut rng, name)));
    }
    out
}

/// At least eight opfibrations over the indexed bases, each with its base
/// name.
pub fn opfib_corpus() -> Vec<(String, &'static str, DiagramOpfib)> {
    let mut rng = seeded(11);
    let mut out = Vec::new();
    for (name, _) in indexed_bases() {
        let f = random_diagram(&mut rng, name);
        out.push((format!("identity_{name}"), name, DiagramOpfib::identity(&f)));
        let h = random_diagram(&mut rng, name);
        let h = retag(&h, f.base());
        out.push((format!("projection_{name}"), name, projection_opfib(&f, &h)));
        let z = random_diagram_on_groth(&mut rng, &f, name);
        let phi = indexed_groth(&z, &f).expect("indexed construction").opfib;
        out.push((format!("constructed_{name}"), name, phi));
    }
    out
}

/// Pairs `(F, Z)` with `Z` on `∫F`, over the indexed bases.
pub fn groth_diagram_corpus() -> Vec<(String, CatDiagram, CatDiagram)> {
    let mut rng = seeded(13);
    let mut out = Vec::new();
    for (name, _) in indexed_bases() {
        for k in 0..2 {
            let f = random_diagram(&mut rng, name);
            let z = random_diagram_on_groth(&mut rng, &f, name);
            out.push((format!("{name}_{k}"), f, z));
        }
    }
    out
}

/// Diagram morphisms `α: F′ ⇒ F` paired with opfibrations over `F`.
pub fn pseudonat_corpus() -> Vec<(String, DiagramMor, DiagramOpfib)> {
    let mut out = Vec::new();
    for (name, _, phi) in opfib_corpus() {
        let f = phi.over().clone();
        out.push((
            format!("{name}_identity"),
            DiagramMor::identity(&f),
            phi.clone(),
        ));
        let a = represent_constant(&f);
        if let Some(alpha) = a {
            out.push((format!("{name}_constant"), alpha, phi));
        }
    }
    out
}

/// `Δ1 ⇒ F` from the first compatible family of points, if any.
fn represent_constant(f: &CatDiagram) -> Option<DiagramMor> {
    let base = f.base();
    let one = arc(build::terminal());
    let mut choice = vec![ObjId::new(0); base.ob_count()];
    fn go(
        i: usize,
        choice: &mut Vec<ObjId>,
        f: &CatDiagram,
        one: &Arc<FinCat>,
    ) -> Option<DiagramMor> {
        let base = f.base();
        if i == base.ob_count() {
            let comps = base
                .objects()
                .map(|a| FunctorData::constant(one, f.at(a), choice[a.index()]))
                .collect();
            return DiagramMor::new(CatDiagram::constant(base, one), f.clone(), comps).ok();
        }
        for x in f.at(ObjId::new(i)).objects() {
            choice[i] = x;
            if let Some(m) = go(i + 1, choice, f, one) {
                return Some(m);
            }
        }
        None
    }
    go(0, &mut choice, f, &one)
}
