use std::collections::{HashMap, HashSet};

use tabrw_core::corpus::{quasi_ribbons, skew_tableaux, young_tableaux};
use tabrw_core::crystal::{component, e, f, is_highest_weight, Family, Kind, Level, Vertex, DEFAULT_MAX_VERTICES};
use tabrw_core::diagrams::{reading_sw, shape};
use tabrw_core::{Alphabet, Diagram};

const KW: Family = Family::new(Kind::Kashiwara, Level::Word);
const QW: Family = Family::new(Kind::Quasi, Level::Word);
const KC: Family = Family::new(Kind::Kashiwara, Level::Columns);
const KR: Family = Family::new(Kind::Kashiwara, Level::Restricted);
const QR: Family = Family::new(Kind::Quasi, Level::Restricted);

#[test]
fn column_and_word_operators_agree() {
    for d in skew_tableaux(3, 5) {
        let v = Vertex::Diagram(d.clone());
        let r = Vertex::Word(reading_sw(&d));
        for i in 1..3 {
            let col = e(KC, 3, i, &v).unwrap().map(|x| x.reading());
            assert_eq!(col, e(KW, 3, i, &r).unwrap().map(|x| x.reading()), "{d} e_{i}");
            let col = f(KC, 3, i, &v).unwrap().map(|x| x.reading());
            assert_eq!(col, f(KW, 3, i, &r).unwrap().map(|x| x.reading()), "{d} f_{i}");
        }
    }
}

#[test]
fn quasi_restricts_kashiwara() {
    for w in Alphabet::new(3).unwrap().words_up_to(6) {
        let v = Vertex::Word(w.clone());
        for i in 1..3 {
            if let Some(x) = e(QW, 3, i, &v).unwrap() {
                assert_eq!(e(KW, 3, i, &v).unwrap(), Some(x), "{w}");
            }
            if let Some(x) = f(QW, 3, i, &v).unwrap() {
                assert_eq!(f(KW, 3, i, &v).unwrap(), Some(x), "{w}");
            }
        }
    }
}

fn single_highest_weight_per_shape(fam: Family, corpus: Vec<Diagram>) {
    let mut by_shape: HashMap<Vec<usize>, Vec<Diagram>> = HashMap::new();
    for d in corpus.into_iter().filter(|d| !d.is_empty()) {
        by_shape.entry(shape(&d).unwrap()).or_default().push(d);
    }
    for (sh, ds) in by_shape {
        let hw: Vec<&Diagram> = ds.iter().filter(|d| is_highest_weight(fam, 3, &Vertex::Diagram((*d).clone())).unwrap()).collect();
        assert_eq!(hw.len(), 1, "shape {sh:?}: {hw:?}");
        let g = component(fam, 3, &Vertex::Diagram(hw[0].clone()), DEFAULT_MAX_VERTICES).unwrap();
        let all: HashSet<Vertex> = ds.into_iter().map(Vertex::Diagram).collect();
        assert_eq!(g.vertices.into_iter().collect::<HashSet<_>>(), all, "shape {sh:?}");
    }
}

#[test]
fn young_shapes_are_single_components() {
    single_highest_weight_per_shape(KR, young_tableaux(3, 6));
}

#[test]
fn ribbon_shapes_are_single_components() {
    single_highest_weight_per_shape(QR, quasi_ribbons(3, 6));
}
