use std::sync::Arc;

use grothkit_core::budget::Budget;
use grothkit_core::fincat::build::{self, CayleyTable};
use grothkit_core::fincat::{DiagramMor, Modification, NatTransData};
use grothkit_core::groth::groth;
use grothkit_core::indexed::*;
use grothkit_core::iso::iso_search;
use grothkit_core::opfib::fibres;
use grothkit_core::stock::{self, arc};
use grothkit_core::{CatDiagram, FinCat, FunctorData, ObjId};

fn bases() -> Vec<Arc<FinCat>> {
    vec![
        arc(build::terminal()),
        arc(build::walking_arrow()),
        arc(build::walking_iso()),
        arc(build::chain(3)),
        arc(build::commutative_square()),
    ]
}

#[test]
fn constant_terminal_total_is_the_base() {
    for a in bases() {
        let gt = groth(&stock::delta_one(&a));
        assert!(iso_search(gt.total(), &a, &mut Budget::default()).is_found());
    }
}

#[test]
fn constant_total_is_the_product() {
    let bs = [
        arc(build::discrete(2)),
        arc(build::walking_arrow()),
        stock::z2(),
    ];
    for a in bases() {
        for b in &bs {
            let gt = groth(&stock::delta(&a, b));
            let prod = arc(build::product(&a, b));
            assert!(iso_search(gt.total(), &prod, &mut Budget::default()).is_found());
        }
    }
}

/// `Z/3 ⋊ Z/2` with `(a1,b1)(a2,b2) = (a1 + (-1)^b1 a2, b1 + b2)`.
fn semidirect_oracle() -> CayleyTable {
    let elems: Vec<(usize, usize)> = (0..2).flat_map(|b| (0..3).map(move |a| (a, b))).collect();
    let idx = |p: (usize, usize)| elems.iter().position(|&q| q == p).unwrap();
    let mul = elems
        .iter()
        .map(|&(a1, b1)| {
            elems
                .iter()
                .map(|&(a2, b2)| {
                    let twisted = if b1 == 0 { a2 } else { (3 - a2) % 3 };
                    idx(((a1 + twisted) % 3, (b1 + b2) % 2))
                })
                .collect()
        })
        .collect();
    CayleyTable {
        elements: elems.iter().map(|(a, b)| format!("{a}{b}")).collect(),
        unit: 0,
        mul,
    }
}

#[test]
fn semidirect_total_is_the_symmetric_group() {
    let table = semidirect_oracle();
    let commutes = (0..6).all(|i| (0..6).all(|j| table.mul[i][j] == table.mul[j][i]));
    assert!(!commutes);
    let s3 = arc(build::delooping(&table).unwrap());
    let gt = groth(&stock::semidirect_example());
    assert_eq!(gt.total().ob_count(), 1);
    assert_eq!(gt.total().mor_count(), 6);
    assert!(iso_search(gt.total(), &s3, &mut Budget::default()).is_found());
    let z6 = arc(build::delooping(&CayleyTable::cyclic(6)).unwrap());
    assert!(!iso_search(gt.total(), &z6, &mut Budget::default()).is_found());
}

#[test]
fn arrow_example_counts() {
    let f = stock::arrow_example();
    let gt = groth(&f);
    let base = f.base();
    let (a, b) = (base.find_ob("a").unwrap(), base.find_ob("b").unwrap());
    let (c, d) = (f.at(a), f.at(b));
    assert_eq!(gt.total().ob_count(), c.ob_count() + d.ob_count());
    let ft = f.at_mor(base.find_mor("f").unwrap());
    let cross: usize = c
        .objects()
        .map(|x| d.objects().map(|y| d.hom(ft.ob(x), y).len()).sum::<usize>())
        .sum();
    assert_eq!(
        gt.total().mor_count(),
        c.mor_count() + d.mor_count() + cross
    );
    // a ↦ 0 and b ↦ 2 in the 3-chain: 3 + 1 arrows out of the images
    assert_eq!(cross, 4);
}

#[test]
fn walking_iso_set_valued_gives_an_equivalence_relation() {
    let gt = groth(&stock::walking_iso_example());
    let t = gt.total();
    assert_eq!(t.ob_count(), 4);
    for x in t.objects() {
        let related: usize = t.objects().filter(|&y| !t.hom(x, y).is_empty()).count();
        assert_eq!(related, 2, "{}", t.ob_name(x));
    }
    assert!(t.morphisms().all(|m| t.inverse(m).is_some()));
}

#[test]
fn elements_of_a_representable_are_the_opposite_slice() {
    let sq = build::commutative_square();
    for a in sq.objects() {
        let gt = groth_op(&representable_presheaf(&sq, a));
        let expected = arc(build::opposite(&build::slice(&sq, sq.ob_name(a)).unwrap()));
        assert!(
            iso_search(gt.total(), &expected, &mut Budget::default()).is_found(),
            "{}",
            sq.ob_name(a)
        );
    }
}

#[test]
fn terminal_base_collapses_to_the_classical_case() {
    for (_, _, phi) in stock::opfib_corpus()
        .into_iter()
        .filter(|(_, b, _)| *b == "terminal")
    {
        let star = ObjId::new(0);
        let indexed = indexed_fibres(&phi).unwrap().z;
        let classical = fibres(phi.at(star)).unwrap().diagram;
        let gt = groth(phi.over());
        assert_eq!(indexed.base().ob_count(), classical.base().ob_count());
        for x in classical.base().objects() {
            assert!(indexed.at(gt.ob_of(star, x)).same_tables(classical.at(x)));
        }
    }
}

fn two_cell_instance() -> (DiagramOpfib, Modification, Arc<FinCat>) {
    let a = arc(build::walking_arrow());
    let chain = arc(build::chain(3));
    let f = CatDiagram::constant(&a, &chain);
    let h = CatDiagram::constant(&a, &arc(build::walking_iso()));
    let phi = projection_opfib(&f, &h);
    let one = arc(build::terminal());
    let f1 = CatDiagram::constant(&a, &one);
    let point = |n: &str| {
        let x = chain.find_ob(n).unwrap();
        DiagramMor::new(
            f1.clone(),
            f.clone(),
            vec![FunctorData::constant(&one, &chain, x); 2],
        )
        .unwrap()
    };
    let (alpha, beta) = (point("0"), point("1"));
    let step = chain.find_mor("0<=1").unwrap();
    let cell = |al: &DiagramMor, be: &DiagramMor, k: usize| {
        NatTransData::new(
            al.at(ObjId::new(k)).clone(),
            be.at(ObjId::new(k)).clone(),
            vec![step],
        )
        .unwrap()
    };
    let delta = Modification::new(
        alpha.clone(),
        beta.clone(),
        vec![cell(&alpha, &beta, 0), cell(&alpha, &beta, 1)],
    )
    .unwrap();
    (phi, delta, chain)
}

#[test]
fn two_cell_action_matches_product_lifts() {
    let (phi, delta, chain) = two_cell_instance();
    let (from, to, m) = two_cell_action(&delta, &phi).unwrap();
    let w = build::walking_iso();
    for a in phi.base().objects() {
        let (src, dst) = (
            &from.squares[a.index()].square,
            &to.squares[a.index()].square,
        );
        let k = m.xi.at(a);
        let g = phi.total().at(a);
        for p in src.total.objects() {
            // lifts of a product projection move the first factor only
            let e = src.second.ob(p);
            let y = ObjId::new(e.index() % w.ob_count());
            let d = delta.at(a).at(src.first.ob(p));
            let pushed = ObjId::new(chain.tgt(d).index() * w.ob_count() + y.index());
            assert_eq!(dst.second.ob(k.ob(p)), pushed, "{}", g.ob_name(e));
            assert_eq!(dst.first.ob(k.ob(p)), src.first.ob(p));
        }
    }
}

#[test]
fn two_cell_action_respects_identities_and_composites() {
    let (phi, delta, chain) = two_cell_instance();
    let (_, _, id) = two_cell_action(&Modification::identity(delta.dom()), &phi).unwrap();
    assert!(id.xi.components().iter().all(|k| k.is_identity()));
    // second step 1 → 2, composite 0 → 2
    let a = phi.base().clone();
    let one = arc(build::terminal());
    let f1 = CatDiagram::constant(&a, &one);
    let gamma = DiagramMor::new(
        f1,
        phi.over().clone(),
        vec![FunctorData::constant(&one, &chain, chain.find_ob("2").unwrap()); 2],
    )
    .unwrap();
    let step = chain.find_mor("1<=2").unwrap();
    let beta = delta.cod().clone();
    let cells = (0..2)
        .map(|k| {
            NatTransData::new(
                beta.at(ObjId::new(k)).clone(),
                gamma.at(ObjId::new(k)).clone(),
                vec![step],
            )
            .unwrap()
        })
        .collect();
    let second = Modification::new(beta, gamma, cells).unwrap();
    let (_, _, m1) = two_cell_action(&delta, &phi).unwrap();
    let (_, _, m2) = two_cell_action(&second, &phi).unwrap();
    let (_, _, m12) = two_cell_action(&Modification::vertical(&second, &delta), &phi).unwrap();
    for x in a.objects() {
        let lhs = m12.xi.at(x);
        let rhs = FunctorData::compose(m2.xi.at(x), m1.xi.at(x));
        assert_eq!(lhs.ob_map(), rhs.ob_map());
        assert_eq!(lhs.mor_map(), rhs.mor_map());
    }
}

#[test]
fn indexed_groth_is_functorial_on_identities() {
    for (name, f, z) in stock::groth_diagram_corpus() {
        let built = indexed_groth(&z, &f).unwrap();
        let m = indexed_groth_map(&DiagramMor::identity(&built.z), &built, &built).unwrap();
        assert!(m.xi.components().iter().all(|k| k.is_identity()), "{name}");
        let fib = indexed_fibres(&built.opfib).unwrap();
        let back = indexed_fibres_map(&m, &fib, &fib).unwrap();
        assert!(back.components().iter().all(|k| k.is_identity()), "{name}");
    }
}

#[test]
fn non_cleavage_preserving_component_is_named() {
    let a = arc(build::terminal());
    let f = CatDiagram::constant(&a, &arc(build::walking_arrow()));
    let h = CatDiagram::constant(&a, &arc(build::chain(2)));
    let phi = projection_opfib(&f, &h);
    let g = phi.total().at(ObjId::new(0)).clone();
    // (a,y) ↦ (a,y), (b,y) ↦ (b,1): monotone on the product poset
    let ob_map: Vec<ObjId> = [0, 1, 3, 3].into_iter().map(ObjId::new).collect();
    let mor_map = g
        .morphisms()
        .map(|m| g.hom(ob_map[g.src(m).index()], ob_map[g.tgt(m).index()])[0])
        .collect();
    let k = FunctorData::new(g.clone(), g.clone(), ob_map, mor_map).unwrap();
    let xi = DiagramMor::new(phi.total().clone(), phi.total().clone(), vec![k]).unwrap();
    match check_diagram_opfib_mor(&xi, &phi, &phi) {
        Some(OpfibMorFailure::Cleavage { object, .. }) => assert_eq!(object, "*"),
        other => panic!("expected a cleavage failure, got {other:?}"),
    }
    let id = DiagramMor::identity(phi.total());
    assert!(check_diagram_opfib_mor(&id, &phi, &phi).is_none());
}
