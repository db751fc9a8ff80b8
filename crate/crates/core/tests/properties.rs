use proptest::prelude::*;

use tabrw_core::congruence::{Monoid, RelationSet};
use tabrw_core::crystal::{e, eps, f, phi, reduce_naive, reduce_signs, Family, Kind, Level, Vertex};
use tabrw_core::diagrams::{classify, embed, is_quasi_ribbon, is_young, rb_measure, reading_sw, tl_measure, GluingMap};
use tabrw_core::jdt::{fs_rules, rect};
use tabrw_core::rbt::{rba, rbt_rules};
use tabrw_core::rewriting::{measure_decreasing, normal_form, Strategy as Order};
use tabrw_core::words::{fac, mirror, weight};
use tabrw_core::{Alphabet, Flag, Sds, Word};

fn gluing_map() -> impl Strategy<Value = GluingMap> {
    prop_oneof![Just(GluingMap::Skew), Just(GluingMap::Young), Just(GluingMap::QuasiRibbon)]
}

fn word(n: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n, 0..=max_len).prop_map(|v| Word::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fac_concatenates_back(w in word(5, 12)) {
        let joined = fac(&w).iter().fold(Word::empty(), |acc, f| acc.concat(f));
        prop_assert_eq!(joined, w.clone());
        prop_assert!(fac(&w).iter().all(|f| f.letters().windows(2).all(|p| p[0] > p[1])));
        prop_assert_eq!(mirror(&mirror(&w)), w);
    }

    #[test]
    fn embeddings_read_back(w in word(5, 12)) {
        for g in [GluingMap::Skew, GluingMap::Young, GluingMap::QuasiRibbon] {
            prop_assert_eq!(reading_sw(&embed(&w, g)), w.clone());
        }
        let s = embed(&w, GluingMap::Skew);
        prop_assert!(w.is_empty() || classify(&s).contains(&Flag::DiagonalSkew));
    }

    #[test]
    fn constructors_land_in_carrier(w in word(4, 10)) {
        let a = Alphabet::new(4).unwrap();
        for s in Sds::ALL {
            let d = s.constructor(&w);
            prop_assert!(s.in_carrier(&d));
            prop_assert_eq!(weight(&reading_sw(&d), a).unwrap(), weight(&w, a).unwrap());
        }
    }

    #[test]
    fn products_are_associative(u in word(4, 5), v in word(4, 5), x in word(4, 5)) {
        for s in Sds::ALL {
            let (a, b, c) = (s.constructor(&u), s.constructor(&v), s.constructor(&x));
            let l = s.product(&s.product(&a, &b).unwrap(), &c).unwrap();
            let r = s.product(&a, &s.product(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn fs_normal_forms(w in word(4, 9), seed in any::<u64>()) {
        let sys = fs_rules();
        let d = embed(&w, GluingMap::Skew);
        let (nf, t) = normal_form(&sys, &d, Order::Random(seed)).unwrap();
        prop_assert!(w.is_empty() || is_young(&nf));
        prop_assert_eq!(&nf, &Sds::YRow.constructor(&w));
        prop_assert!(measure_decreasing(&sys, &t));
        prop_assert_eq!(nf.content(), d.content());
        prop_assert_eq!(rect(&d).unwrap(), nf);
    }

    #[test]
    fn rbt_normal_forms(w in word(4, 9), seed in any::<u64>()) {
        let sys = rbt_rules();
        let t = Sds::YRow.constructor(&w);
        let (nf, tr) = normal_form(&sys, &t, Order::Random(seed)).unwrap();
        prop_assert!(w.is_empty() || is_quasi_ribbon(&nf));
        prop_assert_eq!(&nf, &Sds::QRow.constructor(&w));
        prop_assert!(measure_decreasing(&sys, &tr));
        prop_assert_eq!(rba(&t).unwrap(), nf);
    }

    #[test]
    fn steps_stay_in_class(w in word(3, 7), seed in any::<u64>()) {
        let p = RelationSet::new(Monoid::Plactic, 3).unwrap();
        let h = RelationSet::new(Monoid::Hypoplactic, 3).unwrap();
        let (_, t) = normal_form(&fs_rules(), &embed(&w, GluingMap::Skew), Order::Random(seed)).unwrap();
        for d in t.diagrams() {
            prop_assert!(p.congruent(&w, &reading_sw(d)).unwrap());
        }
        let (_, t) = normal_form(&rbt_rules(), &Sds::YRow.constructor(&w), Order::Random(seed)).unwrap();
        for d in t.diagrams() {
            prop_assert!(h.congruent(&w, &reading_sw(d)).unwrap());
        }
    }

    #[test]
    fn sign_reduction_matches_naive(s in "[+-]{0,16}") {
        prop_assert_eq!(reduce_signs(&s), reduce_naive(&s));
    }

    #[test]
    fn crystal_bookkeeping(w in word(4, 9), i in 1u32..4, quasi in any::<bool>()) {
        let kind = if quasi { Kind::Quasi } else { Kind::Kashiwara };
        let fam = Family::new(kind, Level::Word);
        let a = Alphabet::new(4).unwrap();
        let v = Vertex::Word(w.clone());
        let (ep, ph) = (eps(fam, 4, i, &v).unwrap(), phi(fam, 4, i, &v).unwrap());
        if let Some(y) = f(fam, 4, i, &v).unwrap() {
            prop_assert_eq!(e(fam, 4, i, &y).unwrap(), Some(v.clone()));
            prop_assert_eq!(eps(fam, 4, i, &y).unwrap(), ep + 1);
            prop_assert_eq!(phi(fam, 4, i, &y).unwrap(), ph - 1);
            let (wv, wy) = (weight(&w, a).unwrap().0, weight(&y.reading(), a).unwrap().0);
            let k = i as usize - 1;
            prop_assert_eq!((wy[k] + 1, wy[k + 1]), (wv[k], wv[k + 1] + 1));
        }
        if let Some(y) = e(fam, 4, i, &v).unwrap() {
            prop_assert_eq!(f(fam, 4, i, &y).unwrap(), Some(v.clone()));
        }
    }

    #[test]
    fn measure_orders_are_total(ws in prop::collection::vec((word(3, 6), gluing_map()), 3)) {
        let ds: Vec<_> = ws.iter().map(|(w, g)| embed(w, *g)).collect();
        let tl: Vec<_> = ds.iter().map(tl_measure).collect();
        let rb: Vec<_> = ds.iter().map(rb_measure).collect();
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            prop_assert_eq!(tl[a].cmp(&tl[b]), tl[b].cmp(&tl[a]).reverse());
            prop_assert_eq!(rb[a].cmp(&rb[b]), rb[b].cmp(&rb[a]).reverse());
            prop_assert_eq!(tl[a] == tl[b], tl[a].cmp(&tl[b]).is_eq());
        }
        if tl[0] <= tl[1] && tl[1] <= tl[2] {
            prop_assert!(tl[0] <= tl[2]);
        }
        if rb[0] <= rb[1] && rb[1] <= rb[2] {
            prop_assert!(rb[0] <= rb[2]);
        }
    }

    #[test]
    fn congruence_is_symmetric(u in word(3, 5), v in word(3, 5), hypo in any::<bool>()) {
        let rel = RelationSet::new(if hypo { Monoid::Hypoplactic } else { Monoid::Plactic }, 3).unwrap();
        prop_assert_eq!(rel.congruent(&u, &v).unwrap(), rel.congruent(&v, &u).unwrap());
        prop_assert!(rel.congruent(&u, &u).unwrap());
    }
}
