//! Stock categories and category constructions.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::category::FinCat;
use super::functor::FunctorData;
use super::ids::{MorId, ObjId};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("`{0}` is not an object of the category")]
    UnknownObject(String),
    #[error("`{0}` is not an element")]
    UnknownElement(String),
    #[error("element `{0}` listed twice")]
    DuplicateElement(String),
}

fn ob_names(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Builds a category whose composites are computed from `compose`, which is
/// trusted; used for constructions whose laws hold by construction.
fn assemble_with(
    objects: Vec<String>,
    morphisms: Vec<(String, ObjId, ObjId)>,
    identity: Vec<MorId>,
    mut compose: impl FnMut(MorId, MorId) -> MorId,
) -> FinCat {
    let m = morphisms.len();
    let mut comp = vec![NONE; m * m];
    for g in 0..m {
        for f in 0..m {
            if morphisms[f].2 == morphisms[g].1 {
                comp[g * m + f] = compose(MorId::new(g), MorId::new(f)).0;
            }
        }
    }
    FinCat::assemble(objects, morphisms, identity, comp)
}

/// The discrete category on `0, 1, ..., n-1`.
pub fn discrete(n: usize) -> FinCat {
    discrete_named((0..n).map(|i| i.to_string()).collect())
}

/// The discrete category on the given objects, identities `id_<x>`.
pub fn discrete_named(objects: Vec<String>) -> FinCat {
    let morphisms = objects
        .iter()
        .enumerate()
        .map(|(i, x)| (format!("id_{x}"), ObjId::new(i), ObjId::new(i)))
        .collect();
    let identity = (0..objects.len()).map(MorId::new).collect();
    assemble_with(objects, morphisms, identity, |_, f| f)
}

pub fn terminal() -> FinCat {
    discrete_named(ob_names(&["*"]))
}

/// `a --f--> b`.
pub fn walking_arrow() -> FinCat {
    let (a, b) = (ObjId::new(0), ObjId::new(1));
    assemble_with(
        ob_names(&["a", "b"]),
        vec![
            ("id_a".into(), a, a),
            ("id_b".into(), b, b),
            ("f".into(), a, b),
        ],
        vec![MorId::new(0), MorId::new(1)],
        |g, f| if g.index() <= 1 { f } else { g },
    )
}

/// `f: a ⇄ b :f_inv`, mutually inverse.
pub fn walking_iso() -> FinCat {
    let (a, b) = (ObjId::new(0), ObjId::new(1));
    // 0 id_a, 1 id_b, 2 f, 3 f_inv
    assemble_with(
        ob_names(&["a", "b"]),
        vec![
            ("id_a".into(), a, a),
            ("id_b".into(), b, b),
            ("f".into(), a, b),
            ("f_inv".into(), b, a),
        ],
        vec![MorId::new(0), MorId::new(1)],
        |g, f| match (g.index(), f.index()) {
            (0 | 1, _) => f,
            (_, 0 | 1) => g,
            (2, 3) => MorId::new(1),
            (3, 2) => MorId::new(0),
            _ => unreachable!(),
        },
    )
}

/// The preorder generated by `order`, closed reflexively and transitively.
/// Morphisms are `x<=y`; identities are `id_<x>`.
pub fn poset(elements: &[String], order: &[(String, String)]) -> Result<FinCat, BuildError> {
    let mut index = HashMap::new();
    for (i, e) in elements.iter().enumerate() {
        if index.insert(e.as_str(), i).is_some() {
            return Err(BuildError::DuplicateElement(e.clone()));
        }
    }
    let n = elements.len();
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for (a, b) in order {
        let i = *index
            .get(a.as_str())
            .ok_or_else(|| BuildError::UnknownElement(a.clone()))?;
        let j = *index
            .get(b.as_str())
            .ok_or_else(|| BuildError::UnknownElement(b.clone()))?;
        le[i][j] = true;
    }
    // transitive closure, Warshall style
    #[allow(clippy::needless_range_loop)]
    for k in 0..n {
        for i in 0..n {
            if le[i][k] {
                for j in 0..n {
                    if le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
    }
    Ok(thin(elements.to_vec(), &le))
}

fn thin(objects: Vec<String>, le: &[Vec<bool>]) -> FinCat {
    let n = objects.len();
    let mut morphisms = Vec::new();
    let mut at = vec![vec![None; n]; n];
    for i in 0..n {
        at[i][i] = Some(MorId::new(morphisms.len()));
        morphisms.push((format!("id_{}", objects[i]), ObjId::new(i), ObjId::new(i)));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && le[i][j] {
                at[i][j] = Some(MorId::new(morphisms.len()));
                morphisms.push((
                    format!("{}<={}", objects[i], objects[j]),
                    ObjId::new(i),
                    ObjId::new(j),
                ));
            }
        }
    }
    let ends: Vec<(usize, usize)> = morphisms
        .iter()
        .map(|(_, s, t)| (s.index(), t.index()))
        .collect();
    let identity = (0..n).map(MorId::new).collect();
    assemble_with(objects, morphisms, identity, |g, f| {
        at[ends[f.index()].0][ends[g.index()].1].expect("transitively closed")
    })
}

/// The total order `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> FinCat {
    let objects: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
    thin(objects, &le)
}

/// The poset `{0,1}²` with the product order, objects `00 01 10 11`.
pub fn commutative_square() -> FinCat {
    let objects = ob_names(&["00", "01", "10", "11"]);
    let le: Vec<Vec<bool>> = (0..4)
        .map(|i| (0..4).map(|j| (i & j) == i).collect())
        .collect();
    thin(objects, &le)
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    pub elements: Vec<String>,
    pub unit: usize,
    /// `mul[a][b] = a·b`
    pub mul: Vec<Vec<usize>>,
}

impl CayleyTable {
    /// Checks closure, associativity, the unit and inverses.
    pub fn validate(&self) -> Result<(), BuildError> {
        let n = self.elements.len();
        let name = |i: usize| &self.elements[i];
        let mut seen = BTreeSet::new();
        for e in &self.elements {
            if !seen.insert(e) {
                return Err(BuildError::DuplicateElement(e.clone()));
            }
        }
        if n == 0 || self.unit >= n {
            return Err(BuildError::NotAGroup("no unit element".into()));
        }
        if self.mul.len() != n
            || self
                .mul
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&c| c >= n))
        {
            return Err(BuildError::NotAGroup("the table is not total".into()));
        }
        for a in 0..n {
            if self.mul[self.unit][a] != a || self.mul[a][self.unit] != a {
                return Err(BuildError::NotAGroup(format!(
                    "{} is not a unit for {}",
                    name(self.unit),
                    name(a)
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]] {
                        return Err(BuildError::NotAGroup(format!(
                            "({}{}){} != {}({}{})",
                            name(a),
                            name(b),
                            name(c),
                            name(a),
                            name(b),
                            name(c)
                        )));
                    }
                }
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| self.mul[a][b] == self.unit) {
                return Err(BuildError::NotAGroup(format!("{} has no inverse", name(a))));
            }
        }
        Ok(())
    }

    /// `Z/n` on elements `0..n-1`.
    pub fn cyclic(n: usize) -> CayleyTable {
        CayleyTable {
            elements: (0..n).map(|i| i.to_string()).collect(),
            unit: 0,
            mul: (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// The one-object category `*` whose morphisms are the group elements; the
/// unit is the identity.
pub fn delooping(table: &CayleyTable) -> Result<FinCat, BuildError> {
    table.validate()?;
    let star = ObjId::new(0);
    let morphisms = table
        .elements
        .iter()
        .map(|e| (e.clone(), star, star))
        .collect();
    Ok(assemble_with(
        ob_names(&["*"]),
        morphisms,
        vec![MorId::new(table.unit)],
        |g, f| MorId::new(table.mul[g.index()][f.index()]),
    ))
}

/// `C × D`: objects `(c,d)` and morphisms `(f,g)` in lexicographic index
/// order, identities `id_(c,d)`.
pub fn product(c: &FinCat, d: &FinCat) -> FinCat {
    let (nd, md) = (d.ob_count(), d.mor_count());
    let objects = c
        .objects()
        .flat_map(|x| d.objects().map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", c.ob_name(x), d.ob_name(y)))
        .collect::<Vec<_>>();
    let pair_ob = |x: ObjId, y: ObjId| ObjId::new(x.index() * nd + y.index());
    let morphisms = c
        .morphisms()
        .flat_map(|f| d.morphisms().map(move |g| (f, g)))
        .map(|(f, g)| {
            let (s, t) = (pair_ob(c.src(f), d.src(g)), pair_ob(c.tgt(f), d.tgt(g)));
            let name = if c.is_identity(f) && d.is_identity(g) {
                format!("id_{}", objects[s.index()])
            } else {
                format!("({},{})", c.mor_name(f), d.mor_name(g))
            };
            (name, s, t)
        })
        .collect();
    let identity = c
        .objects()
        .flat_map(|x| d.objects().map(move |y| (x, y)))
        .map(|(x, y)| MorId::new(c.id(x).index() * md + d.id(y).index()))
        .collect();
    assemble_with(objects, morphisms, identity, |g, f| {
        let (g1, g2) = (MorId::new(g.index() / md), MorId::new(g.index() % md));
        let (f1, f2) = (MorId::new(f.index() / md), MorId::new(f.index() % md));
        MorId::new(c.comp(g1, f1).index() * md + d.comp(g2, f2).index())
    })
}

/// `F × G` between products built by [`product`]; `dom = F.dom × G.dom` and
/// `cod = F.cod × G.cod`.
pub fn product_functor(
    dom: &Arc<FinCat>,
    cod: &Arc<FinCat>,
    f: &FunctorData,
    g: &FunctorData,
) -> FunctorData {
    let (n_in, m_in) = (g.dom().ob_count(), g.dom().mor_count());
    let (n_out, m_out) = (g.cod().ob_count(), g.cod().mor_count());
    let ob_map = dom
        .objects()
        .map(|p| {
            let (x, y) = (ObjId::new(p.index() / n_in), ObjId::new(p.index() % n_in));
            ObjId::new(f.ob(x).index() * n_out + g.ob(y).index())
        })
        .collect();
    let mor_map = dom
        .morphisms()
        .map(|p| {
            let (a, b) = (MorId::new(p.index() / m_in), MorId::new(p.index() % m_in));
            MorId::new(f.mor(a).index() * m_out + g.mor(b).index())
        })
        .collect();
    FunctorData::assemble(dom.clone(), cod.clone(), ob_map, mor_map)
}

/// First projection `C × D → C`.
pub fn first_projection(prod: &Arc<FinCat>, c: &Arc<FinCat>, d: &FinCat) -> FunctorData {
    let (nd, md) = (d.ob_count(), d.mor_count());
    FunctorData::assemble(
        prod.clone(),
        c.clone(),
        prod.objects().map(|p| ObjId::new(p.index() / nd)).collect(),
        prod.morphisms()
            .map(|p| MorId::new(p.index() / md))
            .collect(),
    )
}

/// Second projection `C × D → D`.
pub fn second_projection(prod: &Arc<FinCat>, d: &Arc<FinCat>) -> FunctorData {
    let (nd, md) = (d.ob_count(), d.mor_count());
    FunctorData::assemble(
        prod.clone(),
        d.clone(),
        prod.objects().map(|p| ObjId::new(p.index() % nd)).collect(),
        prod.morphisms()
            .map(|p| MorId::new(p.index() % md))
            .collect(),
    )
}

pub fn opposite(c: &FinCat) -> FinCat {
    c.opposite()
}

/// `C/c`: objects are morphisms `u: x → c` named as in `C`; a morphism
/// `u → v` is `w` with `v∘w = u`, named `w:u->v`, or `id_<u>`.
pub fn slice(c: &FinCat, at: &str) -> Result<FinCat, BuildError> {
    let top = c
        .find_ob(at)
        .ok_or_else(|| BuildError::UnknownObject(at.into()))?;
    let obs: Vec<MorId> = c.into_obj(top).to_vec();
    Ok(comma_like(c, &obs, |u, v| {
        c.hom(c.src(u), c.src(v))
            .iter()
            .copied()
            .filter(|&w| c.comp(v, w) == u)
            .collect()
    }))
}

/// `c/C`: objects are morphisms `u: c → x`; a morphism `u → v` is `w` with
/// `w∘u = v`.
pub fn coslice(c: &FinCat, at: &str) -> Result<FinCat, BuildError> {
    let bottom = c
        .find_ob(at)
        .ok_or_else(|| BuildError::UnknownObject(at.into()))?;
    let obs: Vec<MorId> = c.out_of(bottom).to_vec();
    Ok(comma_like(c, &obs, |u, v| {
        c.hom(c.tgt(u), c.tgt(v))
            .iter()
            .copied()
            .filter(|&w| c.comp(w, u) == v)
            .collect()
    }))
}

fn comma_like(c: &FinCat, obs: &[MorId], arrows: impl Fn(MorId, MorId) -> Vec<MorId>) -> FinCat {
    let objects: Vec<String> = obs.iter().map(|&u| c.mor_name(u).to_owned()).collect();
    let mut morphisms = Vec::new();
    let mut under = Vec::new();
    let mut lookup: HashMap<(usize, usize, MorId), MorId> = HashMap::new();
    let mut identity = vec![MorId::new(0); obs.len()];
    for (i, &u) in obs.iter().enumerate() {
        for (j, &v) in obs.iter().enumerate() {
            for w in arrows(u, v) {
                let id = MorId::new(morphisms.len());
                let name = if i == j && c.is_identity(w) {
                    identity[i] = id;
                    format!("id_{}", objects[i])
                } else {
                    format!("{}:{}->{}", c.mor_name(w), objects[i], objects[j])
                };
                morphisms.push((name, ObjId::new(i), ObjId::new(j)));
                under.push(w);
                lookup.insert((i, j, w), id);
            }
        }
    }
    let ends: Vec<(usize, usize)> = morphisms
        .iter()
        .map(|(_, s, t)| (s.index(), t.index()))
        .collect();
    assemble_with(objects, morphisms, identity, |g, f| {
        let w = c.comp(under[g.index()], under[f.index()]);
        lookup[&(ends[f.index()].0, ends[g.index()].1, w)]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn revalidate(c: &FinCat) -> FinCat {
        FinCat::from_raw(&c.to_raw()).expect("builder output satisfies the laws")
    }

    #[test]
    fn stock_categories_satisfy_the_laws() {
        for c in [
            discrete(0),
            discrete(3),
            terminal(),
            walking_arrow(),
            walking_iso(),
            chain(4),
            commutative_square(),
            delooping(&CayleyTable::cyclic(3)).unwrap(),
        ] {
            assert_eq!(revalidate(&c), c);
        }
    }

    #[test]
    fn product_of_arrows_has_four_objects_and_nine_morphisms() {
        let a = walking_arrow();
        let p = product(&a, &a);
        assert_eq!((p.ob_count(), p.mor_count()), (4, 9));
        assert_eq!(revalidate(&p), p);
        assert!(p.find_mor("(f,f)").is_some());
        assert!(p.find_mor("id_(a,b)").is_some());
    }

    #[test]
    fn poset_is_transitively_closed() {
        let els: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let p = poset(&els, &[("x".into(), "y".into()), ("y".into(), "z".into())]).unwrap();
        assert!(p.find_mor("x<=z").is_some());
        assert_eq!(p.mor_count(), 6);
        assert!(matches!(
            poset(&els, &[("x".into(), "w".into())]),
            Err(BuildError::UnknownElement(_))
        ));
    }

    #[test]
    fn non_group_table_is_rejected() {
        let mut t = CayleyTable::cyclic(3);
        t.mul[1][1] = 1;
        assert!(matches!(delooping(&t), Err(BuildError::NotAGroup(_))));
    }

    #[test]
    fn slice_over_the_top_of_the_square() {
        let sq = commutative_square();
        let s = slice(&sq, "11").unwrap();
        assert_eq!(s.ob_count(), 4);
        assert_eq!(revalidate(&s), s);
        assert!(matches!(
            slice(&sq, "nope"),
            Err(BuildError::UnknownObject(_))
        ));
        let cs = coslice(&sq, "00").unwrap();
        assert_eq!(cs.ob_count(), 4);
        assert_eq!(revalidate(&cs), cs);
    }
}
