//! Split and discrete opfibrations: cartesian lifts, cleavage laws, fibres
//! and pullbacks.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::fincat::{
    same_cat, CatDiagram, DiagramReport, FinCat, FunctorData, MorId, NatTransData, ObjId,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OpfibError {
    #[error("`{morphism}` does not start at the image of `{object}`")]
    NotRooted { object: String, morphism: String },
    #[error("cleavage has no lift for (`{object}`, `{morphism}`)")]
    MissingLift { object: String, morphism: String },
    #[error("lift `{lift}` for (`{object}`, `{morphism}`) does not start at `{object}` over `{morphism}`")]
    MisplacedLift {
        object: String,
        morphism: String,
        lift: String,
    },
    #[error("`{0}` is not a declared name")]
    Dangling(String),
    #[error("the opfibration is not split: {0}")]
    NotSplit(Box<SplitReport>),
    #[error("mismatched boundaries: {0}")]
    Mismatch(String),
    #[error("fibre diagram is not strict: {0}")]
    Diagram(DiagramReport),
}

/// A choice of lift for every object `E` of the total category and every
/// base morphism out of `p(E)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cleavage {
    lifts: HashMap<(ObjId, MorId), MorId>,
}

impl Cleavage {
    pub fn from_map(lifts: HashMap<(ObjId, MorId), MorId>) -> Cleavage {
        Cleavage { lifts }
    }

    /// Fills every `(E, f)` with `src f = p(E)` from `choose`.
    pub fn from_fn(p: &FunctorData, mut choose: impl FnMut(ObjId, MorId) -> MorId) -> Cleavage {
        let (e, c) = (p.dom(), p.cod());
        let mut lifts = HashMap::new();
        for x in e.objects() {
            for &f in c.out_of(p.ob(x)) {
                lifts.insert((x, f), choose(x, f));
            }
        }
        Cleavage { lifts }
    }

    /// Name-level `(E, f, e)` entries.
    pub fn from_raw(
        p: &FunctorData,
        raw: &[(String, String, String)],
    ) -> Result<Cleavage, OpfibError> {
        let (e, c) = (p.dom(), p.cod());
        let mut lifts = HashMap::new();
        for (x, f, l) in raw {
            let x = e
                .find_ob(x)
                .ok_or_else(|| OpfibError::Dangling(x.clone()))?;
            let f = c
                .find_mor(f)
                .ok_or_else(|| OpfibError::Dangling(f.clone()))?;
            let l = e
                .find_mor(l)
                .ok_or_else(|| OpfibError::Dangling(l.clone()))?;
            lifts.insert((x, f), l);
        }
        Ok(Cleavage { lifts })
    }

    pub fn get(&self, x: ObjId, f: MorId) -> Option<MorId> {
        self.lifts.get(&(x, f)).copied()
    }

    pub fn set(&mut self, x: ObjId, f: MorId, lift: MorId) {
        self.lifts.insert((x, f), lift);
    }

    pub fn len(&self) -> usize {
        self.lifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lifts.is_empty()
    }

    /// Entries sorted by `(E, f)`.
    pub fn entries(&self) -> Vec<(ObjId, MorId, MorId)> {
        let mut v: Vec<_> = self.lifts.iter().map(|(&(x, f), &l)| (x, f, l)).collect();
        v.sort();
        v
    }

    pub fn to_raw(&self, p: &FunctorData) -> Vec<(String, String, String)> {
        let (e, c) = (p.dom(), p.cod());
        self.entries()
            .into_iter()
            .map(|(x, f, l)| {
                (
                    e.ob_name(x).to_owned(),
                    c.mor_name(f).to_owned(),
                    e.mor_name(l).to_owned(),
                )
            })
            .collect()
    }
}

/// A functor `p: E → C` with a total cleavage.
#[derive(Debug)]
pub struct CleavedOpfib {
    p: FunctorData,
    cleavage: Cleavage,
    status: OnceLock<SplitReport>,
}

impl Clone for CleavedOpfib {
    fn clone(&self) -> Self {
        CleavedOpfib {
            p: self.p.clone(),
            cleavage: self.cleavage.clone(),
            status: self.status.clone(),
        }
    }
}

impl PartialEq for CleavedOpfib {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.cleavage == other.cleavage
    }
}

impl Eq for CleavedOpfib {}

impl CleavedOpfib {
    /// Checks that the cleavage is total and each lift starts at `E` and
    /// lies over `f`. Cartesianity and the split laws are checked by
    /// [`check_split_opfib`].
    pub fn new(p: FunctorData, cleavage: Cleavage) -> Result<CleavedOpfib, OpfibError> {
        let (e, c) = (p.dom().clone(), p.cod().clone());
        for x in e.objects() {
            for &f in c.out_of(p.ob(x)) {
                let Some(l) = cleavage.get(x, f) else {
                    return Err(OpfibError::MissingLift {
                        object: e.ob_name(x).to_owned(),
                        morphism: c.mor_name(f).to_owned(),
                    });
                };
                if l.index() >= e.mor_count() || e.src(l) != x || p.mor(l) != f {
                    return Err(OpfibError::MisplacedLift {
                        object: e.ob_name(x).to_owned(),
                        morphism: c.mor_name(f).to_owned(),
                        lift: if l.index() < e.mor_count() {
                            e.mor_name(l).to_owned()
                        } else {
                            format!("#{}", l.index())
                        },
                    });
                }
            }
        }
        if cleavage.len() != e.objects().map(|x| c.out_of(p.ob(x)).len()).sum::<usize>() {
            return Err(OpfibError::Mismatch(
                "cleavage has entries for non-rooted pairs".into(),
            ));
        }
        Ok(CleavedOpfib {
            p,
            cleavage,
            status: OnceLock::new(),
        })
    }

    /// The identity functor with identity lifts.
    pub fn identity(c: &Arc<FinCat>) -> CleavedOpfib {
        let p = FunctorData::identity(c);
        let cleavage = Cleavage::from_fn(&p, |_, f| f);
        CleavedOpfib {
            p,
            cleavage,
            status: OnceLock::new(),
        }
    }

    pub(crate) fn assemble(p: FunctorData, cleavage: Cleavage) -> CleavedOpfib {
        CleavedOpfib {
            p,
            cleavage,
            status: OnceLock::new(),
        }
    }

    pub fn functor(&self) -> &FunctorData {
        &self.p
    }

    pub fn total(&self) -> &Arc<FinCat> {
        self.p.dom()
    }

    pub fn base(&self) -> &Arc<FinCat> {
        self.p.cod()
    }

    pub fn cleavage(&self) -> &Cleavage {
        &self.cleavage
    }

    pub fn lift(&self, x: ObjId, f: MorId) -> MorId {
        self.cleavage.get(x, f).expect("total cleavage")
    }

    /// `f_*E`.
    pub fn push(&self, x: ObjId, f: MorId) -> ObjId {
        self.total().tgt(self.lift(x, f))
    }

    /// The split report, computed once.
    pub fn status(&self) -> &SplitReport {
        self.status.get_or_init(|| check_split_opfib(self))
    }

    pub fn is_split(&self) -> bool {
        self.status().pass()
    }

    /// A copy with one lift replaced, bypassing validation of that entry.
    pub fn with_lift(&self, x: ObjId, f: MorId, lift: MorId) -> CleavedOpfib {
        let mut cleavage = self.cleavage.clone();
        cleavage.set(x, f, lift);
        CleavedOpfib {
            p: self.p.clone(),
            cleavage,
            status: OnceLock::new(),
        }
    }
}

/// Failure of the universal property of a candidate lift `e: E → E'` over
/// `f`: for `other: E → E''` and `w` with `w∘f = p(other)`, the number of
/// `v: E' → E''` with `p(v) = w` and `v∘e = other` is not one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartesianFailure {
    pub lift: String,
    pub other: String,
    pub w: String,
    pub solutions: usize,
}

fn cartesian_failure(p: &FunctorData, e: MorId) -> Option<(MorId, MorId, usize)> {
    let (tot, c) = (p.dom(), p.cod());
    let x = tot.src(e);
    let x1 = tot.tgt(e);
    let f = p.mor(e);
    for &other in tot.out_of(x) {
        let x2 = tot.tgt(other);
        let po = p.mor(other);
        for &w in c.hom(c.tgt(f), p.ob(x2)) {
            if c.comp(w, f) != po {
                continue;
            }
            let solutions = tot
                .hom(x1, x2)
                .iter()
                .filter(|&&v| p.mor(v) == w && tot.comp(v, e) == other)
                .count();
            if solutions != 1 {
                return Some((other, w, solutions));
            }
        }
    }
    None
}

/// True iff `e` satisfies the full universal property of a cartesian lift.
pub fn is_cartesian(p: &FunctorData, e: MorId) -> bool {
    cartesian_failure(p, e).is_none()
}

/// Every cartesian morphism out of `x` lying over `f`.
pub fn find_cartesian_lifts(p: &FunctorData, x: ObjId, f: MorId) -> Result<Vec<MorId>, OpfibError> {
    let (tot, c) = (p.dom(), p.cod());
    if c.src(f) != p.ob(x) {
        return Err(OpfibError::NotRooted {
            object: tot.ob_name(x).to_owned(),
            morphism: c.mor_name(f).to_owned(),
        });
    }
    Ok(tot
        .out_of(x)
        .iter()
        .copied()
        .filter(|&e| p.mor(e) == f && is_cartesian(p, e))
        .collect())
}

/// Every pair `(E, f)` has at least one cartesian lift.
pub fn is_opfibration(p: &FunctorData) -> bool {
    let c = p.cod();
    p.dom().objects().all(|x| {
        c.out_of(p.ob(x))
            .iter()
            .all(|&f| !find_cartesian_lifts(p, x, f).expect("rooted").is_empty())
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum SplitCounterexample {
    NotCartesian {
        object: String,
        morphism: String,
        failure: CartesianFailure,
    },
    Identity {
        object: String,
        lift: String,
    },
    Composition {
        object: String,
        f: String,
        g: String,
        lift: String,
        composite: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub cartesian: Option<SplitCounterexample>,
    pub identity: Option<SplitCounterexample>,
    pub composition: Option<SplitCounterexample>,
}

impl SplitReport {
    pub fn pass(&self) -> bool {
        self.cartesian.is_none() && self.identity.is_none() && self.composition.is_none()
    }

    pub fn counterexamples(&self) -> Vec<&SplitCounterexample> {
        [&self.cartesian, &self.identity, &self.composition]
            .into_iter()
            .flatten()
            .collect()
    }
}

impl std::fmt::Display for SplitReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = |o: &Option<SplitCounterexample>| if o.is_none() { "ok" } else { "FAIL" };
        write!(
            f,
            "cartesian lifts {}, identity law {}, composition law {}",
            verdict(&self.cartesian),
            verdict(&self.identity),
            verdict(&self.composition)
        )
    }
}

/// Checks that every lift is cartesian and that the cleavage is functorial.
/// Each verdict carries the first counterexample in index order.
pub fn check_split_opfib(q: &CleavedOpfib) -> SplitReport {
    let p = &q.p;
    let (tot, c) = (p.dom(), p.cod());
    let mut cartesian = None;
    let mut identity = None;
    let mut composition = None;
    for x in tot.objects() {
        let px = p.ob(x);
        for &f in c.out_of(px) {
            let e = q.lift(x, f);
            if cartesian.is_none() {
                if let Some((other, w, solutions)) = cartesian_failure(p, e) {
                    cartesian = Some(SplitCounterexample::NotCartesian {
                        object: tot.ob_name(x).to_owned(),
                        morphism: c.mor_name(f).to_owned(),
                        failure: CartesianFailure {
                            lift: tot.mor_name(e).to_owned(),
                            other: tot.mor_name(other).to_owned(),
                            w: c.mor_name(w).to_owned(),
                            solutions,
                        },
                    });
                }
            }
            if composition.is_none() {
                let y = tot.tgt(e);
                for &g in c.out_of(c.tgt(f)) {
                    let whole = q.lift(x, c.comp(g, f));
                    let pasted = tot.comp(q.lift(y, g), e);
                    if whole != pasted {
                        composition = Some(SplitCounterexample::Composition {
                            object: tot.ob_name(x).to_owned(),
                            f: c.mor_name(f).to_owned(),
                            g: c.mor_name(g).to_owned(),
                            lift: tot.mor_name(whole).to_owned(),
                            composite: tot.mor_name(pasted).to_owned(),
                        });
                        break;
                    }
                }
            }
        }
        if identity.is_none() {
            let l = q.lift(x, c.id(px));
            if l != tot.id(x) {
                identity = Some(SplitCounterexample::Identity {
                    object: tot.ob_name(x).to_owned(),
                    lift: tot.mor_name(l).to_owned(),
                });
            }
        }
    }
    SplitReport {
        cartesian,
        identity,
        composition,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscreteCounterexample {
    pub object: String,
    pub morphism: String,
    pub lifts: usize,
}

/// `None` iff every `(E, f)` has exactly one morphism out of `E` over `f`.
pub fn check_discrete_opfib(p: &FunctorData) -> Option<DiscreteCounterexample> {
    let (tot, c) = (p.dom(), p.cod());
    for x in tot.objects() {
        for &f in c.out_of(p.ob(x)) {
            let lifts = tot.out_of(x).iter().filter(|&&e| p.mor(e) == f).count();
            if lifts != 1 {
                return Some(DiscreteCounterexample {
                    object: tot.ob_name(x).to_owned(),
                    morphism: c.mor_name(f).to_owned(),
                    lifts,
                });
            }
        }
    }
    None
}

/// The unique cleavage of a discrete opfibration.
pub fn discrete_cleavage(p: &FunctorData) -> Option<Cleavage> {
    if check_discrete_opfib(p).is_some() {
        return None;
    }
    let tot = p.dom();
    Some(Cleavage::from_fn(p, |x, f| {
        *tot.out_of(x)
            .iter()
            .find(|&&e| p.mor(e) == f)
            .expect("unique lift")
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum CleavagePreservingFailure {
    /// `q2∘H ≠ K∘q1`.
    Square { what: String },
    Lift {
        object: String,
        morphism: String,
        image: String,
        expected: String,
    },
}

/// `None` iff the square commutes and `H` carries chosen lifts to chosen lifts.
pub fn check_cleavage_preserving(
    h: &FunctorData,
    k: &FunctorData,
    q1: &CleavedOpfib,
    q2: &CleavedOpfib,
) -> Option<CleavagePreservingFailure> {
    if !same_cat(h.dom(), q1.total())
        || !same_cat(h.cod(), q2.total())
        || !same_cat(k.dom(), q1.base())
        || !same_cat(k.cod(), q2.base())
    {
        return Some(CleavagePreservingFailure::Square {
            what: "boundaries do not match".into(),
        });
    }
    let left = FunctorData::compose(&q2.p, h);
    let right = FunctorData::compose(k, &q1.p);
    let e1 = q1.total();
    if let Some(x) = e1.objects().find(|&x| left.ob(x) != right.ob(x)) {
        return Some(CleavagePreservingFailure::Square {
            what: format!("object `{}`", e1.ob_name(x)),
        });
    }
    if let Some(m) = e1.morphisms().find(|&m| left.mor(m) != right.mor(m)) {
        return Some(CleavagePreservingFailure::Square {
            what: format!("morphism `{}`", e1.mor_name(m)),
        });
    }
    let (c1, e2) = (q1.base(), q2.total());
    for x in e1.objects() {
        for &f in c1.out_of(q1.p.ob(x)) {
            let image = h.mor(q1.lift(x, f));
            let expected = q2.lift(h.ob(x), k.mor(f));
            if image != expected {
                return Some(CleavagePreservingFailure::Lift {
                    object: e1.ob_name(x).to_owned(),
                    morphism: c1.mor_name(f).to_owned(),
                    image: e2.mor_name(image).to_owned(),
                    expected: e2.mor_name(expected).to_owned(),
                });
            }
        }
    }
    None
}

/// Fibres of a split opfibration collected into a diagram on the base,
/// with the inclusion of each fibre into the total category.
#[derive(Clone, Debug)]
pub struct FibreSystem {
    pub diagram: CatDiagram,
    pub embeddings: Vec<FunctorData>,
    /// For each total object, its position inside its fibre.
    pub ob_pos: Vec<ObjId>,
    /// For each vertical total morphism, its position inside its fibre.
    pub mor_pos: Vec<Option<MorId>>,
}

/// The unique `v: tgt(e) → tgt(other)` with `p(v) = w` and `v∘e = other`,
/// for a cartesian `e`.
pub(crate) fn solve_cartesian(p: &FunctorData, e: MorId, other: MorId, w: MorId) -> MorId {
    let tot = p.dom();
    let sols: Vec<MorId> = tot
        .hom(tot.tgt(e), tot.tgt(other))
        .iter()
        .copied()
        .filter(|&v| p.mor(v) == w && tot.comp(v, e) == other)
        .collect();
    assert_eq!(sols.len(), 1, "cartesian factorization must be unique");
    sols[0]
}

/// The fibre diagram of a split opfibration: `X ↦ p⁻¹(X)`, `f ↦ f_*`.
pub fn fibres(q: &CleavedOpfib) -> Result<FibreSystem, OpfibError> {
    if !q.is_split() {
        return Err(OpfibError::NotSplit(Box::new(q.status().clone())));
    }
    let p = &q.p;
    let (tot, c) = (p.dom().clone(), p.cod().clone());
    let mut ob_pos = vec![ObjId::new(0); tot.ob_count()];
    let mut mor_pos = vec![None; tot.mor_count()];
    let mut fibre_obs: Vec<Vec<ObjId>> = vec![Vec::new(); c.ob_count()];
    let mut fibre_mors: Vec<Vec<MorId>> = vec![Vec::new(); c.ob_count()];
    for x in tot.objects() {
        let b = p.ob(x);
        ob_pos[x.index()] = ObjId::new(fibre_obs[b.index()].len());
        fibre_obs[b.index()].push(x);
    }
    for m in tot.morphisms() {
        let b = p.ob(tot.src(m));
        if p.mor(m) == c.id(b) {
            mor_pos[m.index()] = Some(MorId::new(fibre_mors[b.index()].len()));
            fibre_mors[b.index()].push(m);
        }
    }
    let at_ob: Vec<Arc<FinCat>> = c
        .objects()
        .map(|b| {
            Arc::new(
                tot.restrict(&fibre_obs[b.index()], &fibre_mors[b.index()])
                    .expect("fibres are subcategories"),
            )
        })
        .collect();
    let embeddings: Vec<FunctorData> = c
        .objects()
        .map(|b| {
            FunctorData::assemble(
                at_ob[b.index()].clone(),
                tot.clone(),
                fibre_obs[b.index()].clone(),
                fibre_mors[b.index()].clone(),
            )
        })
        .collect();
    let at_mor: Vec<FunctorData> = c
        .morphisms()
        .map(|f| {
            let (s, t) = (c.src(f), c.tgt(f));
            let id_t = c.id(t);
            let ob_map = fibre_obs[s.index()]
                .iter()
                .map(|&x| ob_pos[q.push(x, f).index()])
                .collect();
            let mor_map = fibre_mors[s.index()]
                .iter()
                .map(|&v| {
                    let (x1, x2) = (tot.src(v), tot.tgt(v));
                    let other = tot.comp(q.lift(x2, f), v);
                    let u = solve_cartesian(p, q.lift(x1, f), other, id_t);
                    mor_pos[u.index()].expect("solution lies over an identity")
                })
                .collect();
            FunctorData::assemble(
                at_ob[s.index()].clone(),
                at_ob[t.index()].clone(),
                ob_map,
                mor_map,
            )
        })
        .collect();
    let diagram = CatDiagram::new(c.clone(), at_ob, at_mor).map_err(OpfibError::Diagram)?;
    Ok(FibreSystem {
        diagram,
        embeddings,
        ob_pos,
        mor_pos,
    })
}

/// The strict pullback of `p: E → C` along `h: D → C`.
#[derive(Clone, Debug)]
pub struct PullbackCat {
    pub total: Arc<FinCat>,
    /// `P → D`
    pub first: FunctorData,
    /// `P → E`
    pub second: FunctorData,
    index_ob: HashMap<(ObjId, ObjId), ObjId>,
    index_mor: HashMap<(MorId, MorId), MorId>,
}

impl PullbackCat {
    pub fn ob_of(&self, d: ObjId, e: ObjId) -> Option<ObjId> {
        self.index_ob.get(&(d, e)).copied()
    }

    pub fn mor_of(&self, g: MorId, e: MorId) -> Option<MorId> {
        self.index_mor.get(&(g, e)).copied()
    }
}

/// Objects `(d,e)` with `h(d) = p(e)`, in lexicographic index order;
/// morphisms `(g,u)` likewise, identities `id_(d,e)`.
pub fn pullback_cat(h: &FunctorData, p: &FunctorData) -> Result<PullbackCat, OpfibError> {
    if !same_cat(h.cod(), p.cod()) {
        return Err(OpfibError::Mismatch(
            "the functors have different codomains".into(),
        ));
    }
    let (d, e) = (h.dom().clone(), p.dom().clone());
    let mut objects = Vec::new();
    let mut ob_pairs = Vec::new();
    let mut index_ob = HashMap::new();
    for x in d.objects() {
        for y in e.objects() {
            if h.ob(x) == p.ob(y) {
                index_ob.insert((x, y), ObjId::new(ob_pairs.len()));
                ob_pairs.push((x, y));
                objects.push(format!("({},{})", d.ob_name(x), e.ob_name(y)));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_pairs = Vec::new();
    let mut index_mor = HashMap::new();
    for g in d.morphisms() {
        for u in e.morphisms() {
            if h.mor(g) == p.mor(u) {
                let s = index_ob[&(d.src(g), e.src(u))];
                let t = index_ob[&(d.tgt(g), e.tgt(u))];
                let name = if d.is_identity(g) && e.is_identity(u) {
                    format!("id_{}", objects[s.index()])
                } else {
                    format!("({},{})", d.mor_name(g), e.mor_name(u))
                };
                index_mor.insert((g, u), MorId::new(mor_pairs.len()));
                mor_pairs.push((g, u));
                morphisms.push((name, s, t));
            }
        }
    }
    let identity = ob_pairs
        .iter()
        .map(|&(x, y)| index_mor[&(d.id(x), e.id(y))])
        .collect();
    let pb = FinCat::from_fn(objects, morphisms, identity, |a, b| {
        let (g1, u1) = mor_pairs[a.index()];
        let (g0, u0) = mor_pairs[b.index()];
        index_mor.get(&(d.comp(g1, g0), e.comp(u1, u0))).copied()
    })
    .map_err(|r| OpfibError::Mismatch(format!("pullback tables: {r}")))?;
    let total = Arc::new(pb);
    let first = FunctorData::assemble(
        total.clone(),
        d.clone(),
        ob_pairs.iter().map(|p| p.0).collect(),
        mor_pairs.iter().map(|p| p.0).collect(),
    );
    let second = FunctorData::assemble(
        total.clone(),
        e.clone(),
        ob_pairs.iter().map(|p| p.1).collect(),
        mor_pairs.iter().map(|p| p.1).collect(),
    );
    Ok(PullbackCat {
        total,
        first,
        second,
        index_ob,
        index_mor,
    })
}

/// `h*q` with the transported cleavage `lift((d,e), g) = (g, lift(e, h g))`.
#[derive(Clone, Debug)]
pub struct PulledBack {
    pub opfib: CleavedOpfib,
    pub square: PullbackCat,
}

pub fn pullback_opfib(h: &FunctorData, q: &CleavedOpfib) -> Result<PulledBack, OpfibError> {
    if !q.is_split() {
        return Err(OpfibError::NotSplit(Box::new(q.status().clone())));
    }
    let square = pullback_cat(h, &q.p)?;
    let d = h.dom();
    let e = q.total();
    let mut lifts = HashMap::new();
    let first = &square.first;
    for x in square.total.objects() {
        let (dx, ex) = (first.ob(x), square.second.ob(x));
        for &g in d.out_of(dx) {
            let u = q.lift(ex, h.mor(g));
            debug_assert_eq!(e.src(u), ex);
            lifts.insert(
                (x, g),
                square.mor_of(g, u).expect("lift lies in the pullback"),
            );
        }
    }
    let opfib = CleavedOpfib::assemble(first.clone(), Cleavage::from_map(lifts));
    Ok(PulledBack { opfib, square })
}

/// The reindexing functor `δ*: α*q → β*q` induced by a natural
/// transformation `δ: α ⇒ β` of functors into the base of `q`:
/// `(d,e) ↦ (d, (δ_d)_* e)`, morphisms solved through the chosen lifts.
pub fn reindex_along(
    delta: &NatTransData,
    q: &CleavedOpfib,
    from: &PulledBack,
    to: &PulledBack,
) -> FunctorData {
    let (alpha, beta) = (delta.dom(), delta.cod());
    debug_assert!(same_cat(alpha.cod(), q.base()));
    let (src, dst) = (&from.square, &to.square);
    let d = alpha.dom();
    let tot = src.total.clone();
    let ob_map = tot
        .objects()
        .map(|x| {
            let (dx, ex) = (src.first.ob(x), src.second.ob(x));
            dst.ob_of(dx, q.push(ex, delta.at(dx)))
                .expect("pushed object lies in the pullback")
        })
        .collect();
    let mor_map = tot
        .morphisms()
        .map(|m| {
            let (g, u) = (src.first.mor(m), src.second.mor(m));
            let (s, t) = (d.src(g), d.tgt(g));
            let e_s = q.total().src(u);
            let e_t = q.total().tgt(u);
            let lift_s = q.lift(e_s, delta.at(s));
            let other = q.total().comp(q.lift(e_t, delta.at(t)), u);
            let v = solve_cartesian(q.functor(), lift_s, other, beta.mor(g));
            dst.mor_of(g, v)
                .expect("solved morphism lies in the pullback")
        })
        .collect();
    FunctorData::assemble(tot, dst.total.clone(), ob_map, mor_map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::build;

    fn arc(c: FinCat) -> Arc<FinCat> {
        Arc::new(c)
    }

    #[test]
    fn identity_is_split_and_discrete() {
        let c = arc(build::commutative_square());
        let q = CleavedOpfib::identity(&c);
        assert!(q.status().pass());
        assert!(check_discrete_opfib(q.functor()).is_none());
        let fib = fibres(&q).unwrap();
        for x in c.objects() {
            assert_eq!(fib.diagram.at(x).ob_count(), 1);
            assert_eq!(fib.diagram.at(x).mor_count(), 1);
        }
    }

    #[test]
    fn point_into_arrow_has_no_lift() {
        let t = arc(build::terminal());
        let a = arc(build::walking_arrow());
        let p = FunctorData::constant(&t, &a, ObjId::new(0));
        let f = a.find_mor("f").unwrap();
        assert!(find_cartesian_lifts(&p, ObjId::new(0), f)
            .unwrap()
            .is_empty());
        assert!(matches!(
            find_cartesian_lifts(&p, ObjId::new(0), a.find_mor("id_b").unwrap()),
            Err(OpfibError::NotRooted { .. })
        ));
    }

    #[test]
    fn product_projection_is_not_discrete() {
        let a = arc(build::walking_arrow());
        let prod = arc(build::product(&a, &a));
        let p = build::first_projection(&prod, &a, &a);
        let cx = check_discrete_opfib(&p).unwrap();
        assert_eq!(
            (cx.object.as_str(), cx.morphism.as_str(), cx.lifts),
            ("(a,a)", "id_a", 2)
        );
    }

    #[test]
    fn first_projection_fibres_are_the_second_factor() {
        let a = arc(build::walking_arrow());
        let b = arc(build::walking_iso());
        let prod = arc(build::product(&a, &b));
        let p = build::first_projection(&prod, &a, &b);
        let md = b.mor_count();
        let nd = b.ob_count();
        // lift((x,y), f) = (f, id_y)
        let cleavage = Cleavage::from_fn(&p, |x, f| {
            let y = ObjId::new(x.index() % nd);
            MorId::new(f.index() * md + b.id(y).index())
        });
        let q = CleavedOpfib::new(p, cleavage).unwrap();
        assert!(q.is_split(), "{}", q.status());
        let fib = fibres(&q).unwrap();
        for x in a.objects() {
            let w = crate::iso::iso_search(fib.diagram.at(x), &b, &mut Default::default());
            assert!(w.is_found());
        }
    }
}
