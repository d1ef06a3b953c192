use std::sync::Arc;

use grothkit_core::budget::Budget;
use grothkit_core::fincat::build;
use grothkit_core::groth::groth;
use grothkit_core::indexed::*;
use grothkit_core::stock;
use grothkit_core::CatDiagram;

#[test]
fn corpus_opfibrations_round_trip() {
    for (name, _, phi) in stock::opfib_corpus() {
        assert!(phi.check().pass(), "{name}: {}", phi.check());
        let r = roundtrip_opfib(&phi, &mut Budget::default());
        assert_eq!(r.verdict, Verdict::Pass, "{name}: {}", r.detail);
        assert_eq!(r.method, Some(Method::Canonical), "{name}");
    }
}

#[test]
fn corpus_diagrams_round_trip() {
    for (name, f, z) in stock::groth_diagram_corpus() {
        let r = roundtrip_diagram(&z, &f, &mut Budget::default());
        assert_eq!(r.verdict, Verdict::Pass, "{name}: {}", r.detail);
        assert_eq!(r.method, Some(Method::Canonical), "{name}");
    }
}

#[test]
fn pseudonaturality_holds_on_corpus() {
    let corpus = stock::pseudonat_corpus();
    assert!(corpus.len() >= 5);
    for (name, alpha, phi) in corpus {
        let r = pseudonat_check(&alpha, &phi, &mut Budget::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{name}: {}", r.detail);
    }
}

#[test]
fn identity_fibres_are_terminal() {
    let f = stock::arrow_example();
    let z = indexed_fibres(&DiagramOpfib::identity(&f)).unwrap().z;
    for e in z.base().objects() {
        assert_eq!(z.at(e).ob_count(), 1);
        assert_eq!(z.at(e).mor_count(), 1);
    }
}

#[test]
fn object_count_of_constructed_components() {
    for (name, f, z) in stock::groth_diagram_corpus() {
        let built = indexed_groth(&z, &f).unwrap();
        let gf = groth(&f);
        for a in f.base().objects() {
            let expected: usize = f
                .at(a)
                .objects()
                .map(|x| z.at(gf.ob_of(a, x)).ob_count())
                .sum();
            assert_eq!(built.opfib.total().at(a).ob_count(), expected, "{name}");
        }
    }
}

#[test]
fn mutated_cleavage_is_rejected() {
    let a = Arc::new(build::walking_arrow());
    let f = CatDiagram::constant(&a, &Arc::new(build::walking_arrow()));
    let h = CatDiagram::constant(&a, &Arc::new(build::walking_iso()));
    let phi = projection_opfib(&f, &h);
    let q = phi.at(a.find_ob("a").unwrap());
    let (x, g, lift) = q
        .cleavage()
        .entries()
        .into_iter()
        .find(|&(x, g, _)| !q.base().is_identity(g) && q.total().out_of(x).len() > 1)
        .expect("a non-identity lift");
    let other = q
        .total()
        .out_of(x)
        .iter()
        .copied()
        .find(|&m| m != lift && q.functor().mor(m) == g)
        .expect("a second morphism over g");
    let broken = phi.with_lift(a.find_ob("a").unwrap(), x, g, other);
    assert!(!broken.check().pass());
}

#[test]
fn dualize_twice_is_identity() {
    for (name, _, phi) in stock::opfib_corpus() {
        let d = dualize_opfib(&phi);
        assert!(d.check().unwrap().iter().all(|r| r.pass()), "{name}");
        assert_eq!(d.dualize().unwrap(), phi, "{name}");
        assert_eq!(dualize_diagram(&dualize_diagram(phi.over())), *phi.over());
    }
}

#[test]
fn projection_is_not_discrete_but_constructed_set_valued_is() {
    let a = Arc::new(build::walking_arrow());
    let f = CatDiagram::constant(&a, &Arc::new(build::discrete(2)));
    let h = CatDiagram::constant(&a, &Arc::new(build::walking_arrow()));
    let r = discrete_check_opfib(&projection_opfib(&f, &h)).unwrap();
    assert!(!r.discrete && !r.set_valued && r.agrees());
    let gf = groth(&f);
    let z = CatDiagram::corepresentable(
        gf.total(),
        gf.ob_of(
            a.find_ob("a").unwrap(),
            build::discrete(2).find_ob("0").unwrap(),
        ),
    );
    let r = discrete_check_diagram(&z, &f).unwrap();
    assert!(r.discrete && r.set_valued);
}
