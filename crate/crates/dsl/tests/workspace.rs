use grothkit_core::budget::Budget;
use grothkit_core::fincat::CategoryViolation;
use grothkit_core::groth::groth;
use grothkit_core::iso::iso_search;
use grothkit_core::stock;
use grothkit_dsl::samples::{sample, SAMPLES};
use grothkit_dsl::{print_workspace, Class, Law, Workspace};

fn parse(name: &str) -> Workspace {
    Workspace::parse(name, sample(name).unwrap()).unwrap_or_else(|d| panic!("{d}"))
}

fn assert_stable(ws: &Workspace, what: &str) {
    let once = print_workspace(ws);
    let again = Workspace::parse(what, &once).unwrap_or_else(|d| panic!("{what}: {d}\n{once}"));
    assert_eq!(print_workspace(&again), once, "{what}");
}

#[test]
fn every_valid_sample_round_trips() {
    for (name, text) in SAMPLES {
        match Workspace::parse(name, text) {
            Ok(ws) => {
                assert_stable(&ws, name);
                assert_stable(&ws.expanded(), name);
            }
            Err(d) => assert_eq!(*name, "broken_assoc.cat", "{d}"),
        }
    }
}

#[test]
fn expanded_workspace_has_the_same_tables() {
    let ws = parse("delta_b.cat");
    let ex = ws.expanded();
    assert!(ex.categories.values().all(|c| c.expr.is_none()));
    let (a, b) = (&ws.diagrams["delta_b"].value, &ex.diagrams["delta_b"].value);
    assert_eq!(a, b);
}

#[test]
fn walking_arrow_sample() {
    let ws = parse("walking_arrow.cat");
    assert_eq!(ws.categories.len(), 1);
    assert_eq!(ws.categories["arrow"].value.mor_count(), 3);
}

#[test]
fn undeclared_morphism_in_compose_is_a_reference_error() {
    let src =
        "category C {\n  objects: a b\n  arrows:\n    f: a -> b\n  compose:\n    g.f = f\n}\n";
    let d = Workspace::parse("c.cat", src).unwrap_err();
    assert_eq!(d.class, Class::Reference);
    assert_eq!((d.pos.line, d.pos.col), (6, 5));
    assert!(d.to_string().starts_with("c.cat:6:5: reference error"));
}

#[test]
fn unknown_entity_is_a_reference_error() {
    let d = Workspace::parse("t", "diagram D = constant(A, B)").unwrap_err();
    assert_eq!(d.class, Class::Reference);
}

#[test]
fn broken_associativity_is_semantic_with_witness() {
    let d = Workspace::parse("b", sample("broken_assoc.cat").unwrap()).unwrap_err();
    assert_eq!(d.class, Class::Semantic);
    let Some(Law::Category { report }) = d.law.as_deref() else {
        panic!("{d:?}")
    };
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, CategoryViolation::Associativity { .. })));
}

#[test]
fn missing_composite_is_semantic() {
    let src = "category C { objects: a b c; arrows: f: a -> b; g: b -> c; h: a -> c }";
    let d = Workspace::parse("t", src).unwrap_err();
    assert_eq!(d.class, Class::Semantic);
    let Some(Law::Category { report }) = d.law.as_deref() else {
        panic!()
    };
    assert!(matches!(
        report.violations[0],
        CategoryViolation::MissingComposite { .. }
    ));
}

#[test]
fn semidirect_sample_matches_builder_tables() {
    let ws = parse("semidirect.cat");
    let built = stock::semidirect_example();
    let parsed = &ws.diagrams["action"].value;
    assert_eq!(**parsed.base(), *stock::z2());
    assert_eq!(
        **parsed.at(parsed.base().objects().next().unwrap()),
        *stock::z3()
    );
    assert_eq!(*parsed, built);
}

#[test]
fn broken_cleavage_parses_but_is_not_split() {
    let ws = parse("broken_cleavage.cat");
    assert!(ws.cleavages["good"].value.is_split());
    assert!(!ws.cleavages["bad"].value.is_split());
}

#[test]
fn empty_workspace_prints_empty_document() {
    let ws = Workspace::parse("e", "# nothing here\n\n").unwrap();
    assert!(ws.is_empty());
    assert_eq!(print_workspace(&ws), "");
}

#[test]
fn groth_output_reparses_and_is_byte_stable() {
    for (name, d) in stock::examples() {
        let gt = groth(&d);
        let mut ws = Workspace::new();
        let n = ws.add_category("total", gt.total());
        let q = ws.add_cleavage("projection", gt.opfib());
        let printed = print_workspace(&ws);
        let again =
            Workspace::parse(name, &printed).unwrap_or_else(|e| panic!("{name}: {e}\n{printed}"));
        assert_eq!(print_workspace(&again), printed, "{name}");
        assert!(again.categories[&n].value.same_tables(gt.total()), "{name}");
        assert!(again.cleavages[&q].value.is_split(), "{name}");
    }
}

#[test]
fn delta_one_total_is_the_base() {
    let ws = parse("delta_one.cat");
    let d = &ws.diagrams["delta_one"].value;
    let w = iso_search(groth(d).total(), d.base(), &mut Budget::new(100_000));
    assert!(w.is_found());
}

mod props {
    use super::*;
    use grothkit_core::fincat::{build, RawCategory};
    use grothkit_core::FinCat;
    use proptest::prelude::*;
    use std::sync::Arc;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn random_diagrams_print_stably(seed in any::<u64>(), base in 0usize..5) {
            let names = ["terminal", "walking_arrow", "walking_iso", "chain3", "z2"];
            let d = stock::random_diagram(&mut stock::seeded(seed), names[base]);
            let mut ws = Workspace::new();
            let n = ws.add_diagram("D", &d);
            let printed = print_workspace(&ws);
            let again = Workspace::parse("p", &printed).unwrap();
            prop_assert_eq!(print_workspace(&again), printed);
            prop_assert_eq!(&again.diagrams[&n].value, &d);
        }

        /// Arbitrary object names survive quoting.
        #[test]
        fn odd_names_survive_quoting(names in prop::collection::hash_set("[ -~]{1,6}", 1..4)) {
            let names: Vec<String> = names.into_iter().collect();
            let c = Arc::new(build::discrete_named(names.clone()));
            let mut ws = Workspace::new();
            let n = ws.add_category("C", &c);
            let printed = print_workspace(&ws);
            let again = Workspace::parse("q", &printed).unwrap();
            prop_assert_eq!(&*again.categories[&n].value, &*c);
            let raw: RawCategory = again.categories[&n].value.to_raw();
            prop_assert!(FinCat::from_raw(&raw).is_ok());
        }
    }
}
