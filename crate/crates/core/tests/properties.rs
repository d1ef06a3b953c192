use grothkit_core::budget::Budget;
use grothkit_core::groth::{
    base_change, factorize, groth, roundtrip_classical_diagram, roundtrip_classical_opfib,
};
use grothkit_core::indexed::*;
use grothkit_core::iso::iso_search;
use grothkit_core::stock::{self, arc};
use grothkit_core::CatDiagram;
use proptest::prelude::*;

const BASES: [&str; 5] = ["terminal", "walking_arrow", "walking_iso", "chain3", "z2"];

fn diagram(seed: u64, base: usize) -> CatDiagram {
    stock::random_diagram(&mut stock::seeded(seed), BASES[base])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn total_counts_match_enumeration(seed in any::<u64>(), base in 0..5usize) {
        let f = diagram(seed, base);
        let gt = groth(&f);
        let a = f.base();
        let obs: usize = a.objects().map(|c| f.at(c).ob_count()).sum();
        let mors: usize = a
            .morphisms()
            .map(|h| {
                let (fc, fd, fh) = (f.at(a.src(h)), f.at(a.tgt(h)), f.at_mor(h));
                fc.objects()
                    .map(|x| fd.objects().map(|y| fd.hom(fh.ob(x), y).len()).sum::<usize>())
                    .sum::<usize>()
            })
            .sum();
        prop_assert_eq!(gt.total().ob_count(), obs);
        prop_assert_eq!(gt.total().mor_count(), mors);
    }

    #[test]
    fn classical_round_trips(seed in any::<u64>(), base in 0..5usize) {
        let f = diagram(seed, base);
        let r = roundtrip_classical_diagram(&f, &mut Budget::default());
        prop_assert_eq!(r.verdict, Verdict::Pass, "{}", r.detail);
        prop_assert_eq!(r.method, Some(Method::Canonical));
        let r = roundtrip_classical_opfib(groth(&f).opfib(), &mut Budget::default());
        prop_assert_eq!(r.verdict, Verdict::Pass, "{}", r.detail);
    }

    #[test]
    fn factorization_is_cartesian_then_vertical(seed in any::<u64>(), base in 0..5usize) {
        let gt = groth(&diagram(seed, base));
        let (t, p) = (gt.total(), gt.projection());
        for m in t.morphisms() {
            let fz = factorize(&gt, m);
            prop_assert_eq!(t.comp(fz.vertical, fz.cartesian), m);
            prop_assert!(gt.base().is_identity(p.mor(fz.vertical)));
            prop_assert_eq!(gt.opfib().lift(t.src(m), p.mor(m)), fz.cartesian);
        }
    }

    #[test]
    fn indexed_round_trips(seed in any::<u64>(), base in 0..5usize) {
        let mut rng = stock::seeded(seed);
        let f = stock::random_diagram(&mut rng, BASES[base]);
        let z = stock::random_diagram_on_groth(&mut rng, &f, BASES[base]);
        let built = indexed_groth(&z, &f).unwrap();
        prop_assert!(built.opfib.check().pass());
        let r = roundtrip_diagram(&z, &f, &mut Budget::default());
        prop_assert_eq!(r.verdict, Verdict::Pass, "{}", r.detail);
        let r = roundtrip_opfib(&built.opfib, &mut Budget::default());
        prop_assert_eq!(r.verdict, Verdict::Pass, "{}", r.detail);
    }

    #[test]
    fn discrete_iff_set_valued(seed in any::<u64>(), base in 0..5usize) {
        let mut rng = stock::seeded(seed);
        let f = stock::random_diagram(&mut rng, BASES[base]);
        let z = stock::random_diagram_on_groth(&mut rng, &f, BASES[base]);
        let r = discrete_check_diagram(&z, &f).unwrap();
        prop_assert!(r.agrees(), "{:?}", r);
        let phi = indexed_groth(&z, &f).unwrap().opfib;
        let r = discrete_check_opfib(&phi).unwrap();
        prop_assert!(r.agrees(), "{:?}", r);
    }

    #[test]
    fn dualizing_twice_restores_tables(seed in any::<u64>(), base in 0..5usize) {
        let f = diagram(seed, base);
        prop_assert_eq!(dualize_diagram(&dualize_diagram(&f)), f.clone());
        let phi = DiagramOpfib::identity(&f);
        prop_assert_eq!(dualize_opfib(&phi).dualize().unwrap(), phi);
    }

    #[test]
    fn canonical_relabel_is_isomorphic(seed in any::<u64>(), base in 0..5usize) {
        let gt = groth(&diagram(seed, base));
        let c = arc(gt.total().canonical());
        prop_assert!(iso_search(gt.total(), &c, &mut Budget::default()).is_found());
    }

    #[test]
    fn base_change_along_the_identity(seed in any::<u64>(), base in 0..5usize) {
        let f = diagram(seed, base);
        let id = grothkit_core::FunctorData::identity(f.base());
        let bc = base_change(&id, &f).unwrap();
        prop_assert!(bc.cleavage_preserving);
        prop_assert!(bc.witness.verify().is_ok());
    }
}
