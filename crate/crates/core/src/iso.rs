//! Backtracking search for strict isomorphisms of categories, natural
//! isomorphisms and isomorphisms of diagrams.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use crate::budget::{Budget, Exceeded, Search};
use crate::fincat::{
    same_cat, CatDiagram, DiagramMor, FinCat, FunctorData, MorId, NatTransData, ObjId,
};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct MorSig {
    identity: bool,
    endo: bool,
    iso: bool,
    factorizations: u32,
    /// `(first repeated power, cycle length)` for endomorphisms.
    orbit: (u32, u32),
    commuting: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct ObSig {
    endos: Vec<MorSig>,
    outgoing: Vec<MorSig>,
    incoming: Vec<MorSig>,
}

fn mor_sigs(c: &FinCat) -> Vec<MorSig> {
    let mut fact = vec![0u32; c.mor_count()];
    for f in c.morphisms() {
        for &g in c.out_of(c.tgt(f)) {
            fact[c.comp(g, f).index()] += 1;
        }
    }
    c.morphisms()
        .map(|f| {
            let endo = c.src(f) == c.tgt(f);
            let (orbit, commuting) = if endo {
                let mut seen: HashMap<MorId, u32> = HashMap::new();
                let mut p = f;
                let mut k = 1u32;
                let orbit = loop {
                    if let Some(&j) = seen.get(&p) {
                        break (j, k - j);
                    }
                    seen.insert(p, k);
                    p = c.comp(f, p);
                    k += 1;
                };
                let x = c.src(f);
                let commuting = c
                    .hom(x, x)
                    .iter()
                    .filter(|&&e| c.comp(e, f) == c.comp(f, e))
                    .count() as u32;
                (orbit, commuting)
            } else {
                ((0, 0), 0)
            };
            MorSig {
                identity: c.is_identity(f),
                endo,
                iso: c.inverse(f).is_some(),
                factorizations: fact[f.index()],
                orbit,
                commuting,
            }
        })
        .collect()
}

fn ob_sigs(c: &FinCat, ms: &[MorSig]) -> Vec<ObSig> {
    let sorted = |mors: &[MorId]| {
        let mut v: Vec<MorSig> = mors.iter().map(|f| ms[f.index()].clone()).collect();
        v.sort();
        v
    };
    c.objects()
        .map(|x| ObSig {
            endos: sorted(c.hom(x, x)),
            outgoing: sorted(c.out_of(x)),
            incoming: sorted(c.into_obj(x)),
        })
        .collect()
}

/// Extra conditions on candidate images.
#[derive(Default)]
pub struct IsoConstraints<'a> {
    pub ob: Option<&'a dyn Fn(ObjId, ObjId) -> bool>,
    pub mor: Option<&'a dyn Fn(MorId, MorId) -> bool>,
}

struct Engine<'a, 'b> {
    c: &'a Arc<FinCat>,
    d: &'a Arc<FinCat>,
    bijective: bool,
    cs: Vec<MorSig>,
    ds: Vec<MorSig>,
    ob_cands: Vec<Vec<ObjId>>,
    ob_order: Vec<ObjId>,
    mor_order: Vec<MorId>,
    ob_map: Vec<u32>,
    ob_inv: Vec<u32>,
    mor_map: Vec<u32>,
    mor_inv: Vec<u32>,
    trail: Vec<MorId>,
    cons: &'a IsoConstraints<'b>,
    budget: &'a mut Budget,
}

impl<'a, 'b> Engine<'a, 'b> {
    /// Returns `None` when an invariant precheck already refutes a bijection.
    fn new(
        c: &'a Arc<FinCat>,
        d: &'a Arc<FinCat>,
        bijective: bool,
        cons: &'a IsoConstraints<'b>,
        budget: &'a mut Budget,
    ) -> Option<Self> {
        let (cs, ds) = if bijective {
            if c.ob_count() != d.ob_count() || c.mor_count() != d.mor_count() {
                return None;
            }
            let (cs, ds) = (mor_sigs(c), mor_sigs(d));
            let (mut a, mut b) = (cs.clone(), ds.clone());
            a.sort();
            b.sort();
            if a != b {
                return None;
            }
            (cs, ds)
        } else {
            (Vec::new(), Vec::new())
        };
        let ob_cands: Vec<Vec<ObjId>> = if bijective {
            let (co, d_o) = (ob_sigs(c, &cs), ob_sigs(d, &ds));
            let (mut a, mut b) = (co.clone(), d_o.clone());
            a.sort();
            b.sort();
            if a != b {
                return None;
            }
            c.objects()
                .map(|x| {
                    d.objects()
                        .filter(|&y| co[x.index()] == d_o[y.index()])
                        .filter(|&y| cons.ob.is_none_or(|ok| ok(x, y)))
                        .collect()
                })
                .collect()
        } else {
            c.objects()
                .map(|x| {
                    d.objects()
                        .filter(|&y| cons.ob.is_none_or(|ok| ok(x, y)))
                        .collect()
                })
                .collect()
        };
        if ob_cands.iter().any(Vec::is_empty) {
            return None;
        }

        let n = c.ob_count();
        let mut placed = vec![false; n];
        let mut ob_order = Vec::with_capacity(n);
        for _ in 0..n {
            let link = |x: ObjId| {
                ob_order
                    .iter()
                    .filter(|&&o: &&ObjId| !c.hom(x, o).is_empty() || !c.hom(o, x).is_empty())
                    .count()
            };
            let next = c
                .objects()
                .filter(|x| !placed[x.index()])
                .max_by_key(|&x| {
                    (
                        link(x),
                        usize::MAX - ob_cands[x.index()].len(),
                        usize::MAX - x.index(),
                    )
                })
                .expect("unplaced object");
            placed[next.index()] = true;
            ob_order.push(next);
        }

        let mut fact = vec![0usize; c.mor_count()];
        for f in c.morphisms() {
            for &g in c.out_of(c.tgt(f)) {
                fact[c.comp(g, f).index()] += 1;
            }
        }
        let mut mor_order: Vec<MorId> = c.morphisms().filter(|&f| !c.is_identity(f)).collect();
        mor_order.sort_by_key(|f| (fact[f.index()], f.index()));

        Some(Engine {
            c,
            d,
            bijective,
            cs,
            ds,
            ob_cands,
            ob_order,
            mor_order,
            ob_map: vec![NONE; n],
            ob_inv: vec![NONE; d.ob_count()],
            mor_map: vec![NONE; c.mor_count()],
            mor_inv: vec![NONE; d.mor_count()],
            trail: Vec::new(),
            cons,
            budget,
        })
    }

    fn hom_sizes_agree(&self, x: ObjId, y: ObjId) -> bool {
        let (c, d) = (self.c, self.d);
        self.ob_order.iter().all(|&o| {
            let m = self.ob_map[o.index()];
            m == NONE || {
                let p = ObjId(m);
                c.hom(x, o).len() == d.hom(y, p).len() && c.hom(o, x).len() == d.hom(p, y).len()
            }
        })
    }

    fn objects(
        &mut self,
        depth: usize,
        cb: &mut dyn FnMut(&FunctorData) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, Exceeded> {
        if depth == self.ob_order.len() {
            let mark = self.trail.len();
            let ids: Vec<(MorId, MorId)> = self
                .c
                .objects()
                .map(|x| (self.c.id(x), self.d.id(ObjId(self.ob_map[x.index()]))))
                .collect();
            let mut ok = true;
            for (f, g) in ids {
                if !self.assign(f, g) {
                    ok = false;
                    break;
                }
            }
            let flow = if ok {
                self.morphisms(0, cb)?
            } else {
                ControlFlow::Continue(())
            };
            self.undo(mark);
            return Ok(flow);
        }
        let x = self.ob_order[depth];
        for i in 0..self.ob_cands[x.index()].len() {
            let y = self.ob_cands[x.index()][i];
            if self.bijective && self.ob_inv[y.index()] != NONE {
                continue;
            }
            self.budget.tick()?;
            if self.bijective && !self.hom_sizes_agree(x, y) {
                continue;
            }
            self.ob_map[x.index()] = y.0;
            self.ob_inv[y.index()] = x.0;
            let flow = self.objects(depth + 1, cb);
            self.ob_map[x.index()] = NONE;
            self.ob_inv[y.index()] = NONE;
            if flow?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn morphisms(
        &mut self,
        mut idx: usize,
        cb: &mut dyn FnMut(&FunctorData) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, Exceeded> {
        while idx < self.mor_order.len() && self.mor_map[self.mor_order[idx].index()] != NONE {
            idx += 1;
        }
        if idx == self.mor_order.len() {
            let f = FunctorData::new(
                self.c.clone(),
                self.d.clone(),
                self.ob_map.iter().map(|&y| ObjId(y)).collect(),
                self.mor_map.iter().map(|&g| MorId(g)).collect(),
            )
            .expect("propagation preserves every composite");
            return Ok(cb(&f));
        }
        let f = self.mor_order[idx];
        let s = ObjId(self.ob_map[self.c.src(f).index()]);
        let t = ObjId(self.ob_map[self.c.tgt(f).index()]);
        let d = self.d.clone();
        for &g in d.hom(s, t) {
            if self.bijective && self.mor_inv[g.index()] != NONE {
                continue;
            }
            self.budget.tick()?;
            let mark = self.trail.len();
            let flow = if self.assign(f, g) {
                self.morphisms(idx + 1, cb)
            } else {
                Ok(ControlFlow::Continue(()))
            };
            self.undo(mark);
            if flow?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    /// Assigns `f ↦ g` and every composite it forces.
    fn assign(&mut self, f: MorId, g: MorId) -> bool {
        let mut queue = vec![(f, g)];
        while let Some((f, g)) = queue.pop() {
            let cur = self.mor_map[f.index()];
            if cur == g.0 {
                continue;
            }
            if cur != NONE {
                return false;
            }
            if self.bijective
                && (self.mor_inv[g.index()] != NONE || self.cs[f.index()] != self.ds[g.index()])
            {
                return false;
            }
            if let Some(ok) = self.cons.mor {
                if !ok(f, g) {
                    return false;
                }
            }
            self.mor_map[f.index()] = g.0;
            if self.bijective {
                self.mor_inv[g.index()] = f.0;
            }
            self.trail.push(f);
            let (c, d) = (self.c, self.d);
            for &a in c.out_of(c.tgt(f)) {
                let ma = self.mor_map[a.index()];
                if ma != NONE {
                    queue.push((c.comp(a, f), d.comp(MorId(ma), g)));
                }
            }
            for &b in c.into_obj(c.src(f)) {
                let mb = self.mor_map[b.index()];
                if mb != NONE {
                    queue.push((c.comp(f, b), d.comp(g, MorId(mb))));
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let f = self.trail.pop().expect("trail entry");
            let g = self.mor_map[f.index()];
            self.mor_map[f.index()] = NONE;
            if self.bijective {
                self.mor_inv[g as usize] = NONE;
            }
        }
    }
}

/// Calls `cb` on every strict isomorphism `c → d` satisfying `cons`, until
/// it breaks. `Ok(Continue)` means the space was exhausted.
pub fn iso_enumerate(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    cons: &IsoConstraints<'_>,
    budget: &mut Budget,
    mut cb: impl FnMut(&FunctorData) -> ControlFlow<()>,
) -> Result<ControlFlow<()>, Exceeded> {
    match Engine::new(c, d, true, cons, budget) {
        None => Ok(ControlFlow::Continue(())),
        Some(mut e) => e.objects(0, &mut cb),
    }
}

/// Calls `cb` on every functor `c → d` satisfying `cons`.
pub fn functor_enumerate(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    cons: &IsoConstraints<'_>,
    budget: &mut Budget,
    mut cb: impl FnMut(&FunctorData) -> ControlFlow<()>,
) -> Result<ControlFlow<()>, Exceeded> {
    if c.ob_count() == 0 {
        let f =
            FunctorData::new(c.clone(), d.clone(), Vec::new(), Vec::new()).expect("empty functor");
        return Ok(cb(&f));
    }
    match Engine::new(c, d, false, cons, budget) {
        None => Ok(ControlFlow::Continue(())),
        Some(mut e) => e.objects(0, &mut cb),
    }
}

fn first_iso(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    cons: &IsoConstraints<'_>,
    budget: &mut Budget,
) -> Search<FunctorData> {
    if c.ob_count() == 0 && d.ob_count() == 0 {
        return Search::Found(
            FunctorData::new(c.clone(), d.clone(), vec![], vec![]).expect("empty"),
        );
    }
    let mut out = None;
    match iso_enumerate(c, d, cons, budget, |f| {
        out = Some(f.clone());
        ControlFlow::Break(())
    }) {
        Err(_) => Search::Exceeded,
        Ok(_) => match out {
            Some(f) => Search::Found(f),
            None => Search::ProvedNone,
        },
    }
}

/// A strict isomorphism `c ≅ d`, if one exists within budget.
pub fn iso_search(c: &Arc<FinCat>, d: &Arc<FinCat>, budget: &mut Budget) -> Search<IsoWitness> {
    first_iso(c, d, &IsoConstraints::default(), budget).map(|forward| {
        let backward = forward.inverse().expect("bijective functor");
        IsoWitness::Category { forward, backward }
    })
}

/// An isomorphism `E ≅ E'` commuting with `p: E → C` and `q: E' → C`.
pub fn over_base_iso_search(
    p: &FunctorData,
    q: &FunctorData,
    budget: &mut Budget,
) -> Search<IsoWitness> {
    assert!(same_cat(p.cod(), q.cod()), "projections to different bases");
    let ob = |x: ObjId, y: ObjId| q.ob(y) == p.ob(x);
    let mor = |f: MorId, g: MorId| q.mor(g) == p.mor(f);
    let cons = IsoConstraints {
        ob: Some(&ob),
        mor: Some(&mor),
    };
    first_iso(p.dom(), q.dom(), &cons, budget).map(|forward| {
        let backward = forward.inverse().expect("bijective functor");
        IsoWitness::OverBase {
            forward,
            backward,
            left: p.clone(),
            right: q.clone(),
        }
    })
}

/// An invertible natural transformation `F ⇒ G`.
pub fn nat_iso_search(f: &FunctorData, g: &FunctorData, budget: &mut Budget) -> Search<IsoWitness> {
    assert!(
        same_cat(f.dom(), g.dom()) && same_cat(f.cod(), g.cod()),
        "natural isomorphism between non-parallel functors"
    );
    let c = f.dom().clone();
    let d = f.cod().clone();
    let cands: Vec<Vec<MorId>> = c
        .objects()
        .map(|x| {
            d.hom(f.ob(x), g.ob(x))
                .iter()
                .copied()
                .filter(|&m| d.inverse(m).is_some())
                .collect()
        })
        .collect();
    if cands.iter().any(Vec::is_empty) {
        return Search::ProvedNone;
    }
    let order: Vec<ObjId> = c.objects().collect();
    let mut comps = vec![None; c.ob_count()];
    fn go(
        depth: usize,
        order: &[ObjId],
        cands: &[Vec<MorId>],
        comps: &mut Vec<Option<MorId>>,
        f: &FunctorData,
        g: &FunctorData,
        budget: &mut Budget,
    ) -> Result<bool, Exceeded> {
        if depth == order.len() {
            return Ok(true);
        }
        let (c, d) = (f.dom(), f.cod());
        let x = order[depth];
        for &k in &cands[x.index()] {
            budget.tick()?;
            comps[x.index()] = Some(k);
            let natural = |m: MorId| {
                let (s, t) = (c.src(m), c.tgt(m));
                match (comps[s.index()], comps[t.index()]) {
                    (Some(ks), Some(kt)) => d.comp(g.mor(m), ks) == d.comp(kt, f.mor(m)),
                    _ => true,
                }
            };
            if c.out_of(x).iter().all(|&m| natural(m))
                && c.into_obj(x).iter().all(|&m| natural(m))
                && go(depth + 1, order, cands, comps, f, g, budget)?
            {
                return Ok(true);
            }
            comps[x.index()] = None;
        }
        Ok(false)
    }
    match go(0, &order, &cands, &mut comps, f, g, budget) {
        Err(_) => Search::Exceeded,
        Ok(false) => Search::ProvedNone,
        Ok(true) => {
            let components = comps.into_iter().map(Option::unwrap).collect();
            let forward = NatTransData::new(f.clone(), g.clone(), components)
                .expect("search checks every naturality square");
            let backward = forward.inverse().expect("invertible components");
            Search::Found(IsoWitness::Natural { forward, backward })
        }
    }
}

/// A strict isomorphism of diagrams `F ≅ G` over one base: invertible
/// components commuting exactly with every transition functor.
pub fn diagram_iso_search(
    f: &CatDiagram,
    g: &CatDiagram,
    budget: &mut Budget,
) -> Search<IsoWitness> {
    diagram_iso_search_over(f, g, None, budget)
}

/// Projections `left[A]: F(A) → B_A` and `right[A]: G(A) → B_A` that each
/// component `k_A` must respect: `right[A]∘k_A = left[A]`.
pub type OverProjections<'a> = (&'a [FunctorData], &'a [FunctorData]);

/// [`diagram_iso_search`] restricted to components commuting with `over`.
pub fn diagram_iso_search_over(
    f: &CatDiagram,
    g: &CatDiagram,
    over: Option<OverProjections<'_>>,
    budget: &mut Budget,
) -> Search<IsoWitness> {
    assert!(
        same_cat(f.base(), g.base()),
        "diagrams over different bases"
    );
    let base = f.base().clone();
    let order: Vec<ObjId> = {
        let mut order: Vec<ObjId> = Vec::new();
        let mut placed = vec![false; base.ob_count()];
        for _ in 0..base.ob_count() {
            let next = base
                .objects()
                .filter(|x| !placed[x.index()])
                .max_by_key(|&x| {
                    let links = order
                        .iter()
                        .filter(|&&o| !base.hom(x, o).is_empty() || !base.hom(o, x).is_empty())
                        .count();
                    (links, usize::MAX - x.index())
                })
                .expect("unplaced object");
            placed[next.index()] = true;
            order.push(next);
        }
        order
    };
    let mut comps: Vec<Option<FunctorData>> = vec![None; base.ob_count()];

    fn go(
        depth: usize,
        order: &[ObjId],
        comps: &mut Vec<Option<FunctorData>>,
        f: &CatDiagram,
        g: &CatDiagram,
        over: Option<OverProjections<'_>>,
        budget: &mut Budget,
    ) -> Result<bool, Exceeded> {
        if depth == order.len() {
            return Ok(true);
        }
        let base = f.base().clone();
        let a = order[depth];
        let (fa, ga) = (f.at(a), g.at(a));

        // images forced by incoming squares h: B → A with B assigned
        let mut forced_ob: Vec<Option<ObjId>> = vec![None; fa.ob_count()];
        let mut forced_mor: Vec<Option<MorId>> = vec![None; fa.mor_count()];
        for &h in base.into_obj(a) {
            let b = base.src(h);
            let Some(gb) = comps[b.index()].as_ref().filter(|_| b != a) else {
                continue;
            };
            let (fh, gh) = (f.at_mor(h), g.at_mor(h));
            for x in f.at(b).objects() {
                let want = gh.ob(gb.ob(x));
                let slot = &mut forced_ob[fh.ob(x).index()];
                if slot.is_some_and(|y| y != want) {
                    return Ok(false);
                }
                *slot = Some(want);
            }
            for m in f.at(b).morphisms() {
                let want = gh.mor(gb.mor(m));
                let slot = &mut forced_mor[fh.mor(m).index()];
                if slot.is_some_and(|y| y != want) {
                    return Ok(false);
                }
                *slot = Some(want);
            }
        }
        let outgoing: Vec<(MorId, &FunctorData)> = base
            .out_of(a)
            .iter()
            .filter_map(|&h| {
                let b = base.tgt(h);
                (b != a)
                    .then_some(())
                    .and(comps[b.index()].as_ref())
                    .map(|gb| (h, gb))
            })
            .collect();
        let ob_ok = |x: ObjId, y: ObjId| {
            over.is_none_or(|(l, r)| r[a.index()].ob(y) == l[a.index()].ob(x))
                && forced_ob[x.index()].is_none_or(|w| w == y)
                && outgoing
                    .iter()
                    .all(|(h, gb)| g.at_mor(*h).ob(y) == gb.ob(f.at_mor(*h).ob(x)))
        };
        let mor_ok = |m: MorId, n: MorId| {
            over.is_none_or(|(l, r)| r[a.index()].mor(n) == l[a.index()].mor(m))
                && forced_mor[m.index()].is_none_or(|w| w == n)
                && outgoing
                    .iter()
                    .all(|(h, gb)| g.at_mor(*h).mor(n) == gb.mor(f.at_mor(*h).mor(m)))
        };
        let cons = IsoConstraints {
            ob: Some(&ob_ok),
            mor: Some(&mor_ok),
        };
        let mut candidates = Vec::new();
        if fa.ob_count() == 0 && ga.ob_count() == 0 {
            candidates
                .push(FunctorData::new(fa.clone(), ga.clone(), vec![], vec![]).expect("empty"));
        } else {
            let _ = iso_enumerate(fa, ga, &cons, budget, |t| {
                candidates.push(t.clone());
                ControlFlow::Continue(())
            })?;
        }
        for t in candidates {
            budget.tick()?;
            comps[a.index()] = Some(t);
            let square = |h: MorId, comps: &Vec<Option<FunctorData>>| {
                let (s, r) = (base.src(h), base.tgt(h));
                match (&comps[s.index()], &comps[r.index()]) {
                    (Some(cs), Some(cr)) => {
                        FunctorData::compose(g.at_mor(h), cs)
                            == FunctorData::compose(cr, f.at_mor(h))
                    }
                    _ => true,
                }
            };
            let ok = base.out_of(a).iter().all(|&h| square(h, comps))
                && base.into_obj(a).iter().all(|&h| square(h, comps));
            if ok && go(depth + 1, order, comps, f, g, over, budget)? {
                return Ok(true);
            }
            comps[a.index()] = None;
        }
        Ok(false)
    }

    match go(0, &order, &mut comps, f, g, over, budget) {
        Err(_) => Search::Exceeded,
        Ok(false) => Search::ProvedNone,
        Ok(true) => {
            let components: Vec<FunctorData> = comps.into_iter().map(Option::unwrap).collect();
            let inverses = components
                .iter()
                .map(|t| t.inverse().expect("iso component"))
                .collect();
            let forward = DiagramMor::new(f.clone(), g.clone(), components)
                .expect("search checks every square");
            let backward = DiagramMor::new(g.clone(), f.clone(), inverses)
                .expect("inverse of a diagram isomorphism");
            Search::Found(IsoWitness::Diagram { forward, backward })
        }
    }
}

/// A checkable isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoWitness {
    Category {
        forward: FunctorData,
        backward: FunctorData,
    },
    Natural {
        forward: NatTransData,
        backward: NatTransData,
    },
    /// `right ∘ forward = left` and `left ∘ backward = right`.
    OverBase {
        forward: FunctorData,
        backward: FunctorData,
        left: FunctorData,
        right: FunctorData,
    },
    Diagram {
        forward: DiagramMor,
        backward: DiagramMor,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("witness rejected: {0}")]
pub struct WitnessError(pub String);

/// One name-level table of a witness, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessTable {
    pub label: String,
    pub pairs: Vec<(String, String)>,
}

fn functor_tables(prefix: &str, f: &FunctorData) -> Vec<WitnessTable> {
    let raw = f.to_raw();
    vec![
        WitnessTable {
            label: format!("{prefix}objects"),
            pairs: raw.ob_map,
        },
        WitnessTable {
            label: format!("{prefix}morphisms"),
            pairs: raw.mor_map,
        },
    ]
}

fn two_sided(forward: &FunctorData, backward: &FunctorData) -> Result<(), WitnessError> {
    if !same_cat(forward.cod(), backward.dom()) || !same_cat(forward.dom(), backward.cod()) {
        return Err(WitnessError("forward and backward are not opposed".into()));
    }
    if !FunctorData::compose(backward, forward).is_identity() {
        return Err(WitnessError(
            "backward . forward is not the identity".into(),
        ));
    }
    if !FunctorData::compose(forward, backward).is_identity() {
        return Err(WitnessError(
            "forward . backward is not the identity".into(),
        ));
    }
    Ok(())
}

impl IsoWitness {
    pub fn flavor(&self) -> &'static str {
        match self {
            IsoWitness::Category { .. } => "category-iso",
            IsoWitness::Natural { .. } => "natural-iso",
            IsoWitness::OverBase { .. } => "over-base-iso",
            IsoWitness::Diagram { .. } => "diagram-iso",
        }
    }

    /// Re-checks that both composites are identities, and the projection
    /// triangles for the over-base flavor.
    pub fn verify(&self) -> Result<(), WitnessError> {
        match self {
            IsoWitness::Category { forward, backward } => two_sided(forward, backward),
            IsoWitness::OverBase {
                forward,
                backward,
                left,
                right,
            } => {
                two_sided(forward, backward)?;
                if FunctorData::compose(right, forward) != *left {
                    return Err(WitnessError(
                        "forward does not commute with the projections".into(),
                    ));
                }
                if FunctorData::compose(left, backward) != *right {
                    return Err(WitnessError(
                        "backward does not commute with the projections".into(),
                    ));
                }
                Ok(())
            }
            IsoWitness::Natural { forward, backward } => {
                if forward.dom() != backward.cod() || forward.cod() != backward.dom() {
                    return Err(WitnessError("transformations are not opposed".into()));
                }
                if NatTransData::vertical(backward, forward)
                    != NatTransData::identity(forward.dom())
                    || NatTransData::vertical(forward, backward)
                        != NatTransData::identity(forward.cod())
                {
                    return Err(WitnessError("components are not mutually inverse".into()));
                }
                Ok(())
            }
            IsoWitness::Diagram { forward, backward } => {
                if forward.source() != backward.target() || forward.target() != backward.source() {
                    return Err(WitnessError("diagram morphisms are not opposed".into()));
                }
                for (a, b) in forward.components().iter().zip(backward.components()) {
                    two_sided(a, b)?;
                }
                Ok(())
            }
        }
    }

    pub fn tables(&self) -> Vec<WitnessTable> {
        match self {
            IsoWitness::Category { forward, .. } | IsoWitness::OverBase { forward, .. } => {
                functor_tables("", forward)
            }
            IsoWitness::Natural { forward, .. } => {
                let (c, d) = (forward.dom().dom(), forward.dom().cod());
                vec![WitnessTable {
                    label: "components".into(),
                    pairs: c
                        .objects()
                        .map(|x| {
                            (
                                c.ob_name(x).to_owned(),
                                d.mor_name(forward.at(x)).to_owned(),
                            )
                        })
                        .collect(),
                }]
            }
            IsoWitness::Diagram { forward, .. } => {
                let base = forward.source().base();
                base.objects()
                    .flat_map(|a| functor_tables(&format!("{} ", base.ob_name(a)), forward.at(a)))
                    .collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::build::{self, CayleyTable};

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn self_iso_is_found_and_verified() {
        let c = arc(build::commutative_square());
        let w = iso_search(&c, &c, &mut Budget::default()).found().unwrap();
        w.verify().unwrap();
    }

    #[test]
    fn arrow_is_not_discrete_two() {
        let a = arc(build::walking_arrow());
        let d = arc(build::discrete(2));
        let mut b = Budget::default();
        assert_eq!(iso_search(&a, &d, &mut b), Search::ProvedNone);
        assert_eq!(b.used, 0);
    }

    #[test]
    fn relabelled_category_is_found() {
        let c = build::product(&build::walking_arrow(), &build::chain(3));
        let k = c.canonical();
        let w = iso_search(&arc(c), &arc(k), &mut Budget::default())
            .found()
            .unwrap();
        w.verify().unwrap();
    }

    #[test]
    fn tiny_budget_is_reported_as_exceeded() {
        let c = arc(build::delooping(&CayleyTable::cyclic(5)).unwrap());
        assert_eq!(iso_search(&c, &c, &mut Budget::new(1)), Search::Exceeded);
    }

    #[test]
    fn constant_functors_in_a_groupoid() {
        let iso = arc(build::walking_iso());
        let t = arc(build::terminal());
        let fa = FunctorData::constant(&t, &iso, ObjId::new(0));
        let fb = FunctorData::constant(&t, &iso, ObjId::new(1));
        let w = nat_iso_search(&fa, &fb, &mut Budget::default())
            .found()
            .unwrap();
        w.verify().unwrap();

        let arrow = arc(build::walking_arrow());
        let ga = FunctorData::constant(&t, &arrow, ObjId::new(0));
        let gb = FunctorData::constant(&t, &arrow, ObjId::new(1));
        assert_eq!(
            nat_iso_search(&gb, &ga, &mut Budget::default()),
            Search::ProvedNone
        );
    }

    #[test]
    fn functor_count_from_arrow_to_chain() {
        // monotone pairs (i <= j) in a 3-chain
        let a = arc(build::walking_arrow());
        let c = arc(build::chain(3));
        let mut n = 0;
        let flow = functor_enumerate(
            &a,
            &c,
            &IsoConstraints::default(),
            &mut Budget::default(),
            |_| {
                n += 1;
                ControlFlow::Continue(())
            },
        );
        assert_eq!(flow, Ok(ControlFlow::Continue(())));
        assert_eq!(n, 6);
    }
}
