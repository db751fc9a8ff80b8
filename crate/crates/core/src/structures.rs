//! String data structures: diagonal skew, Young and quasi-ribbon tableaux with their insertions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::diagrams::{
    classify, from_grid, is_diagonal_skew, is_quasi_ribbon, is_young, reading_sw, to_grid, Column, Diagram, Flag,
    GridView,
};
use crate::congruence::RelationSet;
use crate::error::{Error, Result};
use crate::words::{mirror, weight, Alphabet, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

/// The six shipped structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sds {
    DskRow,
    DskCol,
    YRow,
    YCol,
    QRow,
    QLeft,
}

impl Sds {
    pub const ALL: [Sds; 6] = [Sds::DskRow, Sds::DskCol, Sds::YRow, Sds::YCol, Sds::QRow, Sds::QLeft];

    pub fn side(self) -> Side {
        match self {
            Sds::DskRow | Sds::YRow | Sds::QRow => Side::Right,
            Sds::DskCol | Sds::YCol | Sds::QLeft => Side::Left,
        }
    }

    /// The structure on the same carrier with the opposite side.
    pub fn partner(self) -> Sds {
        match self {
            Sds::DskRow => Sds::DskCol,
            Sds::DskCol => Sds::DskRow,
            Sds::YRow => Sds::YCol,
            Sds::YCol => Sds::YRow,
            Sds::QRow => Sds::QLeft,
            Sds::QLeft => Sds::QRow,
        }
    }

    pub fn in_carrier(self, d: &Diagram) -> bool {
        match self {
            Sds::DskRow | Sds::DskCol => is_diagonal_skew(d),
            Sds::YRow | Sds::YCol => is_young(d),
            Sds::QRow | Sds::QLeft => is_quasi_ribbon(d),
        }
    }

    fn carrier_flag(self) -> Flag {
        match self {
            Sds::DskRow | Sds::DskCol => Flag::DiagonalSkew,
            Sds::YRow | Sds::YCol => Flag::Young,
            Sds::QRow | Sds::QLeft => Flag::QuasiRibbon,
        }
    }

    /// `d ▷ x` for right structures, `x ◁ d` for left ones.
    pub fn insert(self, d: &Diagram, x: Letter) -> Result<Diagram> {
        if x == 0 {
            return Err(Error::LetterOutOfRange { letter: x, n: 0 });
        }
        if !self.in_carrier(d) {
            return Err(Error::Precondition(format!("{d} is not in the carrier of {self}")));
        }
        Ok(self.insert_unchecked(d, x))
    }

    pub(crate) fn insert_unchecked(self, d: &Diagram, x: Letter) -> Diagram {
        let out = match self {
            Sds::DskRow => dsk_top_concat(d, x),
            Sds::DskCol => dsk_bottom_concat(x, d),
            Sds::YRow => young_from_rows(&schensted_right(young_rows(d), x)),
            Sds::YCol => young_from_columns(schensted_left(young_columns(d), x)),
            Sds::QRow => ribbon_from_rows(&ribbon_right(ribbon_rows(d), x)),
            Sds::QLeft => ribbon_from_rows(&ribbon_left(ribbon_rows(d), x)),
        };
        debug_assert!(classify(&out).contains(&self.carrier_flag()), "{self}: {d} with {x} gave {out}");
        out
    }

    /// The constructor: insertion folded over `u` from the structure's side.
    pub fn constructor(self, u: &Word) -> Diagram {
        let fold = |letters: &mut dyn Iterator<Item = Letter>| {
            letters.fold(Diagram::empty(), |d, x| self.insert_unchecked(&d, x))
        };
        match self.side() {
            Side::Right => fold(&mut u.letters().iter().copied()),
            Side::Left => fold(&mut mirror(u).letters().iter().copied()),
        }
    }

    /// Structure monoid product.
    pub fn product(self, d: &Diagram, d2: &Diagram) -> Result<Diagram> {
        for e in [d, d2] {
            if !self.in_carrier(e) {
                return Err(Error::Precondition(format!("{e} is not in the carrier of {self}")));
            }
        }
        Ok(match self.side() {
            Side::Right => reading_sw(d2).letters().iter().fold(d.clone(), |acc, &x| self.insert_unchecked(&acc, x)),
            Side::Left => reading_sw(d).letters().iter().rev().fold(d2.clone(), |acc, &x| self.insert_unchecked(&acc, x)),
        })
    }
}

impl fmt::Display for Sds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Sds::DskRow => "dskrow",
            Sds::DskCol => "dskcol",
            Sds::YRow => "yrow",
            Sds::YCol => "ycol",
            Sds::QRow => "qrow",
            Sds::QLeft => "qleft",
        };
        f.write_str(s)
    }
}

impl FromStr for Sds {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Sds::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown structure {s:?}")))
    }
}

fn single(x: Letter) -> Diagram {
    Diagram::column(Column::from_vec(vec![x]))
}

/// Top concatenation on the last column.
fn dsk_top_concat(d: &Diagram, x: Letter) -> Diagram {
    let Some(last) = d.columns().last() else {
        return single(x);
    };
    let mut cols = d.columns().to_vec();
    let mut gl = d.gluing().to_vec();
    if x >= last.top() {
        cols.push(Column::from_vec(vec![x]));
        gl.push(1);
    } else {
        let mut e = vec![x];
        e.extend_from_slice(last.entries());
        *cols.last_mut().unwrap() = Column::from_vec(e);
    }
    Diagram::new(cols, gl).expect("gluing length")
}

/// Bottom concatenation on the first column.
fn dsk_bottom_concat(x: Letter, d: &Diagram) -> Diagram {
    let Some(first) = d.columns().first() else {
        return single(x);
    };
    let mut cols = d.columns().to_vec();
    let mut gl = d.gluing().to_vec();
    if x > first.bottom() {
        let mut e = first.entries().to_vec();
        e.push(x);
        cols[0] = Column::from_vec(e);
    } else {
        cols.insert(0, Column::from_vec(vec![x]));
        gl.insert(0, 1);
    }
    Diagram::new(cols, gl).expect("gluing length")
}

pub(crate) fn young_rows(d: &Diagram) -> Vec<Vec<Letter>> {
    let height = d.columns().first().map_or(0, Column::len);
    (0..height)
        .map(|i| d.columns().iter().filter(|c| c.len() > i).map(|c| c.entries()[i]).collect())
        .collect()
}

pub(crate) fn young_columns(d: &Diagram) -> Vec<Vec<Letter>> {
    d.columns().iter().map(|c| c.entries().to_vec()).collect()
}

pub(crate) fn young_from_rows(rows: &[Vec<Letter>]) -> Diagram {
    let width = rows.first().map_or(0, Vec::len);
    let cols = (0..width)
        .map(|j| rows.iter().filter(|r| r.len() > j).map(|r| r[j]).collect())
        .collect();
    young_from_columns(cols)
}

pub(crate) fn young_from_columns(cols: Vec<Vec<Letter>>) -> Diagram {
    let cols: Vec<Column> = cols.into_iter().map(Column::from_vec).collect();
    let gluing = cols.iter().skip(1).map(|c| c.len() as i64).collect();
    Diagram::new(cols, gluing).expect("gluing length")
}

/// Right Schensted insertion by row bumping.
fn schensted_right(mut rows: Vec<Vec<Letter>>, mut x: Letter) -> Vec<Vec<Letter>> {
    for row in rows.iter_mut() {
        let j = row.partition_point(|&y| y <= x);
        if j == row.len() {
            row.push(x);
            return rows;
        }
        std::mem::swap(&mut row[j], &mut x);
    }
    rows.push(vec![x]);
    rows
}

/// Left Schensted insertion by column bumping.
fn schensted_left(mut cols: Vec<Vec<Letter>>, mut x: Letter) -> Vec<Vec<Letter>> {
    for col in cols.iter_mut() {
        let j = col.partition_point(|&y| y < x);
        if j == col.len() {
            col.push(x);
            return cols;
        }
        std::mem::swap(&mut col[j], &mut x);
    }
    cols.push(vec![x]);
    cols
}

/// Grid rows of a quasi-ribbon tableau, top to bottom.
pub(crate) fn ribbon_rows(d: &Diagram) -> Vec<Vec<Letter>> {
    let mut rows: BTreeMap<i64, Vec<Letter>> = BTreeMap::new();
    for (&(r, _), &x) in &to_grid(d).cells {
        rows.entry(r).or_default().push(x);
    }
    rows.into_values().collect()
}

/// Stacks rows so that each row starts below the previous row's last box.
pub(crate) fn ribbon_from_rows(rows: &[Vec<Letter>]) -> Diagram {
    let mut cells = BTreeMap::new();
    let mut start = 1usize;
    for (i, row) in rows.iter().filter(|r| !r.is_empty()).enumerate() {
        for (j, &x) in row.iter().enumerate() {
            cells.insert((i as i64 + 1, start + j), x);
        }
        start += row.len() - 1;
    }
    from_grid(&GridView { cells }).expect("ribbon rows form a grid")
}

/// Right quasi-ribbon insertion.
fn ribbon_right(q: Vec<Vec<Letter>>, x: Letter) -> Vec<Vec<Letter>> {
    if q.is_empty() || x < q[0][0] {
        let mut out = vec![vec![x]];
        out.extend(q);
        return out;
    }
    for i in (0..q.len()).rev() {
        for j in (0..q[i].len()).rev() {
            if x >= q[i][j] {
                let mut r = q[i][..=j].to_vec();
                r.push(x);
                let rest = q[i][j + 1..].to_vec();
                let mut out: Vec<Vec<Letter>> = q[..i].to_vec();
                out.push(r);
                out.push(rest);
                out.extend(q[i + 1..].iter().cloned());
                out.retain(|r| !r.is_empty());
                return out;
            }
        }
    }
    unreachable!("x >= q[0][0] is always found")
}

/// Left quasi-ribbon insertion.
fn ribbon_left(q: Vec<Vec<Letter>>, x: Letter) -> Vec<Vec<Letter>> {
    let last = q.last().and_then(|r| r.last()).copied();
    if last.is_none_or(|l| x > l) {
        let mut out = q;
        out.push(vec![x]);
        return out;
    }
    for i in 0..q.len() {
        for j in 0..q[i].len() {
            if x <= q[i][j] {
                let head = q[i][..j].to_vec();
                let mut r = vec![x];
                r.extend_from_slice(&q[i][j..]);
                let mut out: Vec<Vec<Letter>> = q[..i].to_vec();
                out.push(head);
                out.push(r);
                out.extend(q[i + 1..].iter().cloned());
                out.retain(|r| !r.is_empty());
                return out;
            }
        }
    }
    unreachable!("x <= last entry is always found")
}

/// Outcome of a law-checking suite.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct Report {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(mut self, other: Report) -> Report {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self
    }
}

/// Checks the three structure axioms, carrier closure and weight preservation.
pub fn check_axioms(s: Sds, n: u32, max_len: usize) -> Result<Report> {
    let a = Alphabet::new(n)?;
    let mut rep = Report::default();
    for x in a.letters() {
        rep.checked += 1;
        let d = s.insert_unchecked(&Diagram::empty(), x);
        if reading_sw(&d).letters() != [x] {
            rep.violations.push(format!("R(I(empty,{x})) = {}", reading_sw(&d)));
        }
    }
    if !reading_sw(&Diagram::empty()).is_empty() {
        rep.violations.push("R(empty) is not the empty word".into());
    }
    let words: Vec<Word> = a.words_up_to(max_len).collect();
    let per_word: Vec<(Word, Diagram, Vec<String>)> = words
        .into_par_iter()
        .map(|u| {
            let d = s.constructor(&u);
            let mut v = Vec::new();
            if !s.in_carrier(&d) {
                v.push(format!("C({u}) = {d} leaves the carrier"));
            }
            let r = reading_sw(&d);
            if weight(&r, a).ok() != weight(&u, a).ok() {
                v.push(format!("C({u}) changes the weight"));
            }
            if s.constructor(&r) != d {
                v.push(format!("C(R(C({u}))) != C({u})"));
            }
            (u, d, v)
        })
        .collect();
    let mut by_reading: HashMap<Word, Diagram> = HashMap::new();
    for (_, d, v) in per_word {
        rep.checked += 1;
        rep.violations.extend(v);
        let r = reading_sw(&d);
        if let Some(prev) = by_reading.insert(r.clone(), d.clone()) {
            if prev != d {
                rep.violations.push(format!("{prev} and {d} share reading {r}"));
            }
        }
    }
    Ok(rep)
}

/// Checks `y ◁ (d ▷ x) = (y ◁ d) ▷ x` over `d = C(u)`, `|u| <= max_len`.
pub fn check_commutation(right: Sds, left: Sds, n: u32, max_len: usize) -> Result<Report> {
    if right.side() != Side::Right || left.side() != Side::Left {
        return Err(Error::Precondition("expected a right and a left structure".into()));
    }
    let a = Alphabet::new(n)?;
    let words: Vec<Word> = a.words_up_to(max_len).collect();
    Ok(words
        .into_par_iter()
        .map(|u| {
            let d = right.constructor(&u);
            let mut rep = Report::default();
            for x in a.letters() {
                let dx = right.insert_unchecked(&d, x);
                for y in a.letters() {
                    rep.checked += 1;
                    let lhs = left.insert_unchecked(&dx, y);
                    let rhs = right.insert_unchecked(&left.insert_unchecked(&d, y), x);
                    if lhs != rhs {
                        rep.violations.push(format!("d={d} x={x} y={y}: {lhs} vs {rhs}"));
                    }
                }
            }
            rep
        })
        .reduce(Report::default, Report::merge))
}

/// Builds the placed form of a Young tableau given by its rows.
/// `u ≡ v ⇔ C(u) = C(v)` for every pair of words of equal length up to `max_len`.
pub fn check_cross_section(s: Sds, rel: &RelationSet, max_len: usize) -> Result<Report> {
    let mut rep = Report::default();
    for len in 0..=max_len {
        let ids = rel.class_ids(len)?;
        let tabs: Vec<(&Word, usize, Diagram)> = ids.iter().map(|(u, &k)| (u, k, s.constructor(u))).collect();
        let part = tabs
            .par_iter()
            .map(|(u, ku, tu)| {
                let mut r = Report::default();
                for (v, kv, tv) in &tabs {
                    r.checked += 1;
                    if (ku == kv) != (tu == tv) {
                        r.violations.push(format!("{u} vs {v}: congruent {}, {s} images equal {}", ku == kv, tu == tv));
                    }
                }
                r
            })
            .reduce(Report::default, Report::merge);
        rep = rep.merge(part);
    }
    Ok(rep)
}

pub fn young_from_row_lists(rows: &[Vec<Letter>]) -> Result<Diagram> {
    let d = young_from_rows(rows);
    if !is_young(&d) {
        return Err(Error::Precondition("rows do not form a Young tableau".into()));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn d(cols: &[&[Letter]], gl: &[i64]) -> Diagram {
        Diagram::from_entries(cols.iter().map(|c| c.to_vec()).collect(), gl.to_vec()).unwrap()
    }

    #[test]
    fn single_box() {
        assert_eq!(Sds::YRow.insert(&Diagram::empty(), 3).unwrap(), d(&[&[3]], &[]));
    }

    #[test]
    fn young_constructor_on_intro_word() {
        let y = d(&[&[1, 2, 3], &[1, 3], &[1], &[2]], &[2, 1, 1]);
        assert_eq!(Sds::YRow.constructor(&w("3121312")), y);
        assert_eq!(Sds::YCol.constructor(&w("3121312")), y);
    }

    #[test]
    fn ribbon_constructor_on_rbt_example() {
        let q = d(&[&[1, 2], &[2, 3], &[3], &[3, 4], &[4], &[4, 5]], &[3, 2, 2, 2, 2]);
        assert_eq!(Sds::QRow.constructor(&w("5321432434")), q);
        assert_eq!(reading_sw(&q), w("2132343454"));
    }

    #[test]
    fn constructors() {
        assert!(Sds::YRow.constructor(&Word::empty()).is_empty());
        let u = w("3121312");
        assert_eq!(Sds::DskRow.constructor(&u), crate::diagrams::embed(&u, crate::diagrams::GluingMap::Skew));
        assert_eq!(Sds::DskCol.constructor(&u), crate::diagrams::embed(&u, crate::diagrams::GluingMap::Skew));
        let t = d(&[&[1, 3], &[2]], &[1]);
        assert_eq!(Sds::YRow.constructor(&w("312")), t);
        assert_eq!(Sds::YRow.constructor(&w("132")), t);
    }

    #[test]
    fn products() {
        let c3 = d(&[&[3]], &[]);
        let c1 = d(&[&[1]], &[]);
        assert_eq!(Sds::YRow.product(&c3, &c1).unwrap(), d(&[&[1, 3]], &[]));
        assert_eq!(Sds::YRow.product(&c3, &Diagram::empty()).unwrap(), c3);
        assert!(Sds::YRow.product(&d(&[&[1], &[2]], &[0]), &c1).is_err());
    }

    #[test]
    fn insert_checks_carrier() {
        let not_young = d(&[&[2], &[1]], &[1]);
        assert!(Sds::YRow.insert(&not_young, 1).is_err());
        assert!(Sds::QRow.insert(&not_young, 1).is_err());
    }

    #[test]
    fn ribbon_insert_small() {
        assert_eq!(Sds::QRow.constructor(&w("211")), d(&[&[1], &[1, 2]], &[2]));
        assert_eq!(Sds::QRow.constructor(&w("231")), d(&[&[1, 2], &[3]], &[2]));
    }

    #[test]
    fn axioms_small() {
        for s in Sds::ALL {
            let rep = check_axioms(s, 3, 4).unwrap();
            assert!(rep.ok(), "{s}: {:?}", &rep.violations[..rep.violations.len().min(3)]);
        }
    }

    #[test]
    fn commutation_small() {
        for s in [Sds::DskRow, Sds::YRow, Sds::QRow] {
            let rep = check_commutation(s, s.partner(), 3, 4).unwrap();
            assert!(rep.ok(), "{s}: {:?}", &rep.violations[..rep.violations.len().min(3)]);
        }
    }
}
