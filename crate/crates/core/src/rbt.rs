//! Right-bottom rectification: the RBT rules, `rba` and north-west rectification.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::congruence::Monoid;
use crate::diagrams::{embed, from_grid, is_quasi_ribbon, is_young, reading_sw, to_grid, Column, Diagram, GluingMap, GridView, Placed};
use crate::error::{Error, Result};
use crate::jdt::Pair;
use crate::rewriting::{normal_form, MatchFn, MeasureTag, RewriteSystem, Rule, Strategy};
use crate::structures::{Report, Sds};
use crate::words::{Letter, Word};

pub const RBT_RULES: [&str; 4] = ["alpha", "delta_alpha", "gamma", "delta"];

fn placed(top: i64, entries: Vec<Letter>) -> Placed {
    Placed::new(top, Column::from_vec(entries))
}

/// Splits off the lower part of `c_i` under the first box of `c_j` that fits above it.
fn alpha_at(x: &[Letter], ti: i64, y: &[Letter], tj: i64) -> Option<Vec<Placed>> {
    let yat = |row: i64| {
        let v = row - tj;
        (0..y.len() as i64).contains(&v).then_some(v as usize)
    };
    let (p, m) = (0..x.len()).find_map(|p| {
        let m = yat(ti + p as i64 - 1)?;
        (y[m] < x[p]).then_some((p, m))
    })?;
    let mut mid = y[..=m].to_vec();
    mid.extend_from_slice(&x[p..]);
    Some(vec![
        placed(ti, x[..p].to_vec()),
        placed(tj, mid),
        placed(tj + m as i64 + 1, y[m + 1..].to_vec()),
    ])
}

fn alpha(ci: &Placed, cj: &Placed) -> Option<Vec<Placed>> {
    let p = Pair::new(ci, cj);
    if p.f {
        alpha_at(p.x, p.ti, p.y, p.tj)
    } else {
        None
    }
}

/// Moves `c_j` to its highest admissible gluing (down to just above `c_i` when it is detached above),
/// then applies `alpha` when possible.
fn delta_alpha(ci: &Placed, cj: &Placed) -> Option<Vec<Placed>> {
    let p = Pair::new(ci, cj);
    if p.f {
        return None;
    }
    let target = if p.r >= 1 {
        p.g0()
    } else if p.y[p.b as usize - 1] < p.x[0] {
        0
    } else {
        return None;
    };
    let tj = p.tj_at(target);
    alpha_at(p.x, p.ti, p.y, tj).or_else(|| (target != p.r).then(|| vec![ci.clone(), placed(tj, p.y.to_vec())]))
}

/// Displacement of `c_j` under `delta_alpha`.
fn delta_alpha_carry(ci: &Placed, cj: &Placed) -> i64 {
    let p = Pair::new(ci, cj);
    let target = if p.r >= 1 { p.g0() } else { 0 };
    p.tj_at(target) - p.tj
}

/// Moves `c_j` down as far as the pair stays row connected and increasing.
fn gamma(ci: &Placed, cj: &Placed) -> Option<Vec<Placed>> {
    let p = Pair::new(ci, cj);
    let entry = p.f || (p.r < 1 && p.x[0] <= p.y[p.b as usize - 1]);
    let g = p.g?;
    (entry && g > p.r).then(|| vec![ci.clone(), placed(p.tj_at(g), p.y.to_vec())])
}

/// Moves a disconnected `c_j` up to the ribbon join.
fn delta(ci: &Placed, cj: &Placed) -> Option<Vec<Placed>> {
    let p = Pair::new(ci, cj);
    (p.r >= p.a + p.b && p.x[p.a as usize - 1] <= p.y[0])
        .then(|| vec![ci.clone(), placed(p.tj_at(p.a + p.b - 1), p.y.to_vec())])
}

pub fn rbt_rules() -> RewriteSystem {
    let fns: [MatchFn; 4] = [alpha, delta_alpha, gamma, delta];
    RewriteSystem {
        name: "rbt",
        rules: RBT_RULES
            .iter()
            .zip(fns)
            .map(|(&name, apply)| match name {
                "delta_alpha" => Rule::new(name, apply).carrying(delta_alpha_carry),
                _ => Rule::new(name, apply),
            })
            .collect(),
        congruence: Monoid::Hypoplactic,
        measure: MeasureTag::Rb,
    }
}

/// Accepts Young tableaux and Young-glued embeddings of words.
pub fn rba_accepts(t: &Diagram) -> bool {
    is_young(t) || *t == embed(&reading_sw(t), GluingMap::Young)
}

/// Right-bottom rectification by leftmost normalization.
pub fn rba(t: &Diagram) -> Result<Diagram> {
    if !rba_accepts(t) {
        return Err(Error::Precondition(format!("{t} is neither Young nor a Young-glued embedding")));
    }
    Ok(normal_form(&rbt_rules(), t, Strategy::Leftmost)?.0)
}

/// Slides all columns to the top, then every row to the left.
pub fn nw_rectify(q: &Diagram) -> Result<Diagram> {
    if !is_quasi_ribbon(q) {
        return Err(Error::Precondition(format!("{q} is not a quasi-ribbon tableau")));
    }
    let mut rows: BTreeMap<i64, Vec<Letter>> = BTreeMap::new();
    for col in q.columns() {
        for (k, &x) in col.entries().iter().enumerate() {
            rows.entry(k as i64 + 1).or_default().push(x);
        }
    }
    let cells = rows
        .into_iter()
        .flat_map(|(r, xs)| xs.into_iter().enumerate().map(move |(j, x)| ((r, j + 1), x)))
        .collect();
    let t = from_grid(&GridView { cells })?;
    debug_assert!(is_young(&t), "{q} -> {t}");
    Ok(t)
}

/// `rba(t ▷ x) = rba(t) ▷ x` over `t = C_Yrow(u)`.
pub fn rba_morphism_check(corpus: &[Word], n: u32) -> Report {
    corpus
        .par_iter()
        .map(|u| {
            let t = Sds::YRow.constructor(u);
            let rt = rba(&t);
            let mut rep = Report::default();
            for x in 1..=n {
                rep.checked += 1;
                let lhs = rba(&Sds::YRow.insert_unchecked(&t, x));
                let rhs = rt.as_ref().map(|q| Sds::QRow.insert_unchecked(q, x));
                match (&lhs, &rhs) {
                    (Ok(l), Ok(r)) if l == r => {}
                    _ => rep.violations.push(format!("{u} x={x}: {lhs:?} vs {rhs:?}")),
                }
            }
            rep
        })
        .reduce(Report::default, Report::merge)
}

/// Row reading of a quasi-ribbon grid, top row first.
pub fn ribbon_rows(q: &Diagram) -> Vec<Vec<Letter>> {
    let mut rows: BTreeMap<i64, Vec<Letter>> = BTreeMap::new();
    for (&(r, _), &x) in &to_grid(q).cells {
        rows.entry(r).or_default().push(x);
    }
    rows.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::render_ascii;
    use crate::rewriting::{find_redexes, replay, step, Redex};

    fn d(cols: &[&[Letter]], gl: &[i64]) -> Diagram {
        Diagram::from_entries(cols.iter().map(|c| c.to_vec()).collect(), gl.to_vec()).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn example() -> Diagram {
        d(&[&[1, 2, 3, 5], &[2, 3, 4], &[3, 4], &[4]], &[3, 2, 1])
    }

    fn example_result() -> Diagram {
        d(&[&[1, 2], &[2, 3], &[3], &[3, 4], &[4], &[4, 5]], &[3, 2, 2, 2, 2])
    }

    #[test]
    fn rba_example() {
        let q = rba(&example()).unwrap();
        assert_eq!(q, example_result());
        assert_eq!(reading_sw(&q), w("2132343454"));
    }

    #[test]
    fn example_trace() {
        let sys = rbt_rules();
        let seq: Vec<Redex> = [("alpha", 0), ("gamma", 0), ("gamma", 1), ("gamma", 2), ("alpha", 1), ("alpha", 2), ("alpha", 3), ("alpha", 0)]
            .iter()
            .map(|&(r, i)| Redex::new(r, i))
            .collect();
        let t = replay(&sys, &example(), &seq).unwrap();
        assert_eq!(t.result(), &example_result());
        assert_eq!(t.steps[0].diagram, d(&[&[1, 2, 3], &[2, 3, 4, 5], &[3, 4], &[4]], &[4, 2, 1]));
        assert_eq!(t.steps[4].diagram, d(&[&[1, 2, 3], &[2, 3], &[3, 4, 5], &[4], &[4]], &[3, 4, 2, 1]));
    }

    #[test]
    fn delta_smallest() {
        let sys = rbt_rules();
        let src = d(&[&[1], &[2]], &[3]);
        assert_eq!(step(&sys, &src, &Redex::new("delta", 0)).unwrap(), d(&[&[1], &[2]], &[1]));
    }

    #[test]
    fn quasi_ribbons_are_normal() {
        let sys = rbt_rules();
        for q in crate::corpus::quasi_ribbons(3, 5) {
            assert!(find_redexes(&sys, &q).is_empty(), "{q}");
        }
    }

    #[test]
    fn nw_examples() {
        let row = d(&[&[1], &[2]], &[1]);
        assert_eq!(nw_rectify(&row).unwrap(), row);
        let q = Sds::QRow.constructor(&w("1165687689"));
        assert_eq!(nw_rectify(&q).unwrap(), Sds::YRow.constructor(&w("1165687689")));
        assert!(nw_rectify(&d(&[&[1, 2], &[1]], &[1])).is_err());
        assert!(!render_ascii(&q).is_empty());
    }

    #[test]
    fn rba_rejects() {
        assert!(rba(&d(&[&[2], &[1]], &[3])).is_err());
    }
}
