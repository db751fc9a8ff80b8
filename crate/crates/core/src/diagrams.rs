//! Columns, strings of columns, readings, shape predicates and termination measures.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{fac, Alphabet, Letter, Word};

/// A column: entries strictly increasing from top to bottom, never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Column(Vec<Letter>);

impl Column {
    pub fn new(entries: Vec<Letter>) -> Result<Self> {
        let ok = !entries.is_empty()
            && entries[0] >= 1
            && entries.windows(2).all(|p| p[0] < p[1]);
        if ok {
            Ok(Self(entries))
        } else {
            Err(Error::NotAColumn(entries))
        }
    }

    pub(crate) fn from_vec(entries: Vec<Letter>) -> Self {
        debug_assert!(entries.windows(2).all(|p| p[0] < p[1]), "{entries:?}");
        Self(entries)
    }

    pub fn entries(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn top(&self) -> Letter {
        self.0[0]
    }

    pub fn bottom(&self) -> Letter {
        *self.0.last().unwrap()
    }

    pub fn contains(&self, x: Letter) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// Bottom-to-top reading.
    pub fn reading(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0.iter().rev().copied()
    }
}

/// The three gluing maps used by the shipped structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GluingMap {
    /// Diagonal skew: `s(c, c') = 1`.
    Skew,
    /// Young: `Y(c, c') = |c'|`.
    Young,
    /// Quasi-ribbon: `q(c, c') = |c| + |c'| - 1`.
    QuasiRibbon,
}

impl GluingMap {
    pub fn position(self, c: &Column, c2: &Column) -> i64 {
        match self {
            GluingMap::Skew => 1,
            GluingMap::Young => c2.len() as i64,
            GluingMap::QuasiRibbon => (c.len() + c2.len()) as i64 - 1,
        }
    }
}

/// A column together with the absolute row of its top box.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Placed {
    pub top: i64,
    pub col: Column,
}

impl Placed {
    pub fn new(top: i64, col: Column) -> Self {
        Self { top, col }
    }

    pub fn len(&self) -> usize {
        self.col.len()
    }

    pub fn is_empty(&self) -> bool {
        self.col.is_empty()
    }

    pub fn bottom_row(&self) -> i64 {
        self.top + self.col.len() as i64 - 1
    }

    pub fn at_row(&self, row: i64) -> Option<Letter> {
        let k = row - self.top;
        (0..self.col.len() as i64).contains(&k).then(|| self.col.0[k as usize])
    }

    pub fn entries(&self) -> &[Letter] {
        &self.col.0
    }
}

/// Gluing position of `right` against `left`.
pub fn gluing_between(left: &Placed, right: &Placed) -> i64 {
    right.top - left.top + right.len() as i64
}

/// Whether `x|_r y` is row connected and row increasing.
pub(crate) fn feasible(x: &[Letter], y: &[Letter], r: i64) -> bool {
    let (a, b) = (x.len() as i64, y.len() as i64);
    if r < 1 || r > a + b - 1 {
        return false;
    }
    row_increasing_at(x, y, r)
}

/// Whether every shared row of `x|_r y` is weakly increasing.
pub(crate) fn row_increasing_at(x: &[Letter], y: &[Letter], r: i64) -> bool {
    let (a, b) = (x.len() as i64, y.len() as i64);
    let off = r - b;
    (0..b).all(|v| {
        let u = off + v;
        !(0..a).contains(&u) || x[u as usize] <= y[v as usize]
    })
}

/// Largest gluing at which `x|_r y` is row connected and row increasing.
pub(crate) fn max_feasible(x: &[Letter], y: &[Letter]) -> Option<i64> {
    let top = (x.len() + y.len()) as i64 - 1;
    (1..=top).rev().find(|&r| feasible(x, y, r))
}

/// A string of columns: columns plus the gluing sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Diagram {
    columns: Vec<Column>,
    gluing: Vec<i64>,
}

impl Diagram {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(columns: Vec<Column>, gluing: Vec<i64>) -> Result<Self> {
        let expected = columns.len().saturating_sub(1);
        if gluing.len() != expected {
            return Err(Error::GluingLength { got: gluing.len(), expected });
        }
        Ok(Self { columns, gluing })
    }

    /// Builds a diagram from raw column entries, validating each column.
    pub fn from_entries(columns: Vec<Vec<Letter>>, gluing: Vec<i64>) -> Result<Self> {
        let cols = columns.into_iter().map(Column::new).collect::<Result<Vec<_>>>()?;
        Self::new(cols, gluing)
    }

    pub fn column(col: Column) -> Self {
        Self { columns: vec![col], gluing: vec![] }
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn gluing(&self) -> &[i64] {
        &self.gluing
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Number of columns.
    pub fn width(&self) -> usize {
        self.columns.len()
    }

    pub fn boxes(&self) -> usize {
        self.columns.iter().map(Column::len).sum()
    }

    pub fn max_letter(&self) -> Letter {
        self.columns.iter().map(Column::bottom).max().unwrap_or(0)
    }

    /// Absolute top rows, with the first column's top at row 1.
    pub fn tops(&self) -> Vec<i64> {
        let mut tops = Vec::with_capacity(self.columns.len());
        if !self.columns.is_empty() {
            tops.push(1);
            for (k, p) in self.gluing.iter().enumerate() {
                let next = tops[k] + p - self.columns[k + 1].len() as i64;
                tops.push(next);
            }
        }
        tops
    }

    pub fn placed(&self) -> Vec<Placed> {
        self.tops()
            .into_iter()
            .zip(&self.columns)
            .map(|(t, c)| Placed::new(t, c.clone()))
            .collect()
    }

    /// Rebuilds a diagram from placed columns; empty columns are dropped.
    pub fn from_placed(placed: Vec<Placed>) -> Self {
        let placed: Vec<Placed> = placed.into_iter().filter(|p| !p.is_empty()).collect();
        let gluing = placed.windows(2).map(|w| gluing_between(&w[0], &w[1])).collect();
        Self { columns: placed.into_iter().map(|p| p.col).collect(), gluing }
    }

    pub fn weight_in(&self, a: Alphabet) -> Result<crate::words::Weight> {
        crate::words::weight(&reading_sw(self), a)
    }

    pub fn check_alphabet(&self, a: Alphabet) -> Result<()> {
        self.columns
            .iter()
            .flat_map(|c| c.entries())
            .try_for_each(|&x| a.check(x).map(|_| ()))
    }

    /// Entry multiset as a sorted list.
    pub fn content(&self) -> Vec<Letter> {
        let mut v: Vec<Letter> = self.columns.iter().flat_map(|c| c.entries().iter().copied()).collect();
        v.sort_unstable();
        v
    }
}

impl fmt::Display for Diagram {
    /// `<[1,3][1,2];1>` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for c in &self.columns {
            let inner: Vec<String> = c.entries().iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", inner.join(","))?;
        }
        let g: Vec<String> = self.gluing.iter().map(|x| x.to_string()).collect();
        write!(f, ";{}>", g.join(","))
    }
}

/// South-west reading: columns left to right, each bottom to top.
pub fn reading_sw(w: &Diagram) -> Word {
    Word::from_vec(w.columns.iter().flat_map(|c| c.reading()).collect())
}

/// The embedding `[u]_g`: one column per maximal decreasing factor.
pub fn embed(u: &Word, g: GluingMap) -> Diagram {
    let columns: Vec<Column> = fac(u)
        .into_iter()
        .map(|f| Column::from_vec(f.letters().iter().rev().copied().collect()))
        .collect();
    let gluing = columns.windows(2).map(|p| g.position(&p[0], &p[1])).collect();
    Diagram { columns, gluing }
}

/// Concatenation `w1 |_g w2`.
pub fn concat_g(w1: &Diagram, w2: &Diagram, g: GluingMap) -> Diagram {
    match (w1.columns.last(), w2.columns.first()) {
        (Some(l), Some(r)) => {
            let mut columns = w1.columns.clone();
            columns.extend(w2.columns.iter().cloned());
            let mut gluing = w1.gluing.clone();
            gluing.push(g.position(l, r));
            gluing.extend(&w2.gluing);
            Diagram { columns, gluing }
        }
        (None, _) => w2.clone(),
        (_, None) => w1.clone(),
    }
}

/// Shape and classification flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    RowConnected,
    RowIncreasing,
    Skew,
    DiagonalSkew,
    Young,
    QuasiRibbon,
    LeftJustified,
    RightJustified,
    TopJustified,
    BottomJustified,
    Decreasing,
    Increasing,
}

pub type Flags = BTreeSet<Flag>;

pub fn classify(w: &Diagram) -> Flags {
    let len = |k: usize| w.columns[k].len() as i64;
    let pairs: Vec<(usize, i64)> = w.gluing.iter().copied().enumerate().collect();
    let all = |f: &dyn Fn(usize, i64) -> bool| pairs.iter().all(|&(k, p)| f(k, p));

    let rc = all(&|k, p| p >= 1 && p < len(k) + len(k + 1));
    let ri = all(&|k, p| row_increasing_at(w.columns[k].entries(), w.columns[k + 1].entries(), p));
    let scolc = rc && ri;

    let mut flags = Flags::new();
    let mut set = |flag, cond: bool| {
        if cond {
            flags.insert(flag);
        }
    };
    set(Flag::RowConnected, rc);
    set(Flag::RowIncreasing, ri);
    let skew = scolc && all(&|k, p| p <= len(k + 1));
    set(Flag::Skew, skew);
    set(Flag::DiagonalSkew, skew && all(&|_, p| p == 1));
    set(Flag::Young, scolc && all(&|k, p| p == len(k + 1) && len(k + 1) <= len(k)));
    set(Flag::QuasiRibbon, scolc && all(&|k, p| p == len(k) + len(k + 1) - 1));
    set(
        Flag::LeftJustified,
        rc && all(&|k, p| len(k) >= len(k + 1) && len(k + 1) <= p && p <= len(k)),
    );
    set(
        Flag::RightJustified,
        rc && all(&|k, p| len(k + 1) >= len(k) && len(k) <= p && p <= len(k + 1)),
    );
    set(Flag::TopJustified, rc && all(&|k, p| p == len(k + 1)));
    set(Flag::BottomJustified, rc && all(&|k, p| p == len(k)));
    set(Flag::Decreasing, w.gluing.windows(2).all(|g| g[0] >= g[1]));
    set(Flag::Increasing, w.gluing.windows(2).all(|g| g[0] <= g[1]));
    flags
}

pub fn is_scolc(w: &Diagram) -> bool {
    let f = classify(w);
    f.contains(&Flag::RowConnected) && f.contains(&Flag::RowIncreasing)
}

pub fn is_young(w: &Diagram) -> bool {
    classify(w).contains(&Flag::Young)
}

pub fn is_quasi_ribbon(w: &Diagram) -> bool {
    classify(w).contains(&Flag::QuasiRibbon)
}

pub fn is_skew(w: &Diagram) -> bool {
    classify(w).contains(&Flag::Skew)
}

pub fn is_diagonal_skew(w: &Diagram) -> bool {
    classify(w).contains(&Flag::DiagonalSkew)
}

/// Row lengths of the occupied grid rows, top to bottom.
pub fn shape(w: &Diagram) -> Result<Vec<usize>> {
    if !classify(w).contains(&Flag::RowConnected) {
        return Err(Error::Precondition("shape needs a row connected diagram".into()));
    }
    let mut rows: BTreeMap<i64, usize> = BTreeMap::new();
    for p in w.placed() {
        for r in p.top..=p.bottom_row() {
            *rows.entry(r).or_default() += 1;
        }
    }
    Ok(rows.into_values().collect())
}

/// Termination measure for top-left sliding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TlMeasure {
    pub columns: usize,
    pub lengths: Vec<usize>,
    pub top_deviation: Vec<i64>,
}

impl Ord for TlMeasure {
    fn cmp(&self, other: &Self) -> Ordering {
        self.columns
            .cmp(&other.columns)
            .then_with(|| self.lengths.iter().rev().cmp(other.lengths.iter().rev()))
            .then_with(|| self.top_deviation.cmp(&other.top_deviation))
    }
}

impl PartialOrd for TlMeasure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Termination measure for right-bottom sliding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RbMeasure {
    pub reading: Vec<Letter>,
    pub columns: usize,
    pub deviation: Vec<i64>,
}

impl Ord for RbMeasure {
    fn cmp(&self, other: &Self) -> Ordering {
        self.reading
            .cmp(&other.reading)
            .then_with(|| self.columns.cmp(&other.columns))
            .then_with(|| self.deviation.cmp(&other.deviation))
    }
}

impl PartialOrd for RbMeasure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn tl_measure(w: &Diagram) -> TlMeasure {
    let tops = w.tops();
    let top = tops.iter().copied().min().unwrap_or(0);
    TlMeasure {
        columns: w.width(),
        lengths: w.columns.iter().map(Column::len).collect(),
        top_deviation: tops.iter().map(|t| t - top).collect(),
    }
}

pub fn rb_measure(w: &Diagram) -> RbMeasure {
    RbMeasure {
        reading: reading_sw(w).into_letters(),
        columns: w.width(),
        deviation: w
            .gluing
            .iter()
            .enumerate()
            .map(|(k, p)| (w.columns[k].len() + w.columns[k + 1].len()) as i64 - p)
            .collect(),
    }
}

/// Grid view: `(row, column)` cells with rows counted from the first column's top.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GridView {
    pub cells: BTreeMap<(i64, usize), Letter>,
}

impl GridView {
    pub fn rows(&self) -> Option<(i64, i64)> {
        let min = self.cells.keys().map(|k| k.0).min()?;
        let max = self.cells.keys().map(|k| k.0).max()?;
        Some((min, max))
    }
}

pub fn to_grid(w: &Diagram) -> GridView {
    let mut cells = BTreeMap::new();
    for (j, p) in w.placed().iter().enumerate() {
        for (k, &x) in p.entries().iter().enumerate() {
            cells.insert((p.top + k as i64, j + 1), x);
        }
    }
    GridView { cells }
}

pub fn from_grid(g: &GridView) -> Result<Diagram> {
    let mut by_col: BTreeMap<usize, Vec<(i64, Letter)>> = BTreeMap::new();
    for (&(r, c), &x) in &g.cells {
        by_col.entry(c).or_default().push((r, x));
    }
    let mut placed = Vec::new();
    for (expect, (c, cells)) in (1..).zip(by_col) {
        if c != expect {
            return Err(Error::Precondition(format!("grid column {expect} is empty")));
        }
        if cells.windows(2).any(|p| p[1].0 != p[0].0 + 1) {
            return Err(Error::Precondition(format!("grid column {c} has a gap")));
        }
        let col = Column::new(cells.iter().map(|e| e.1).collect())?;
        placed.push(Placed::new(cells[0].0, col));
    }
    Ok(Diagram::from_placed(placed))
}

/// One character cell per box, blanks for gaps, trailing blanks trimmed.
pub fn render_ascii(w: &Diagram) -> String {
    let g = to_grid(w);
    let Some((lo, hi)) = g.rows() else {
        return String::new();
    };
    let width = w.max_letter().to_string().len();
    let sep = if width > 1 { " " } else { "" };
    (lo..=hi)
        .map(|r| {
            let line: Vec<String> = (1..=w.width())
                .map(|c| match g.cells.get(&(r, c)) {
                    Some(x) => format!("{x:>width$}"),
                    None => " ".repeat(width),
                })
                .collect();
            line.join(sep).trim_end().to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Wire format of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub n: u32,
    pub columns: Vec<Vec<Letter>>,
    pub gluing: Vec<i64>,
}

impl DiagramJson {
    pub fn from_diagram(w: &Diagram, n: u32) -> Self {
        Self {
            n,
            columns: w.columns.iter().map(|c| c.entries().to_vec()).collect(),
            gluing: w.gluing.clone(),
        }
    }

    pub fn into_diagram(self) -> Result<(Diagram, Alphabet)> {
        let a = Alphabet::new(self.n)?;
        let d = Diagram::from_entries(self.columns, self.gluing)?;
        d.check_alphabet(a)?;
        Ok((d, a))
    }
}

pub fn to_json(w: &Diagram, n: u32) -> String {
    serde_json::to_string(&DiagramJson::from_diagram(w, n)).expect("diagram serializes")
}

pub fn from_json(s: &str) -> Result<(Diagram, Alphabet)> {
    let j: DiagramJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    j.into_diagram()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(cols: &[&[Letter]], gl: &[i64]) -> Diagram {
        Diagram::from_entries(cols.iter().map(|c| c.to_vec()).collect(), gl.to_vec()).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn intro_skew() -> Diagram {
        d(&[&[1, 3], &[1, 2], &[1, 3], &[2]], &[1, 1, 1])
    }

    fn intro_young() -> Diagram {
        d(&[&[1, 2, 3], &[1, 3], &[1], &[2]], &[2, 1, 1])
    }

    fn intro_ribbon() -> Diagram {
        d(&[&[1], &[1], &[5, 6], &[6], &[6, 7, 8], &[8], &[9]], &[1, 2, 2, 3, 3, 1])
    }

    #[test]
    fn readings() {
        assert_eq!(reading_sw(&intro_skew()), w("3121312"));
        assert_eq!(reading_sw(&intro_young()), w("3213112"));
        assert_eq!(reading_sw(&d(&[&[1, 2, 4]], &[])), w("421"));
        assert_eq!(reading_sw(&intro_ribbon()), w("1165687689"));
    }

    #[test]
    fn embeddings() {
        assert_eq!(embed(&w("3121312"), GluingMap::Skew), intro_skew());
        assert_eq!(
            embed(&w("5321432434"), GluingMap::Young),
            d(&[&[1, 2, 3, 5], &[2, 3, 4], &[3, 4], &[4]], &[3, 2, 1])
        );
        assert!(embed(&Word::empty(), GluingMap::Young).is_empty());
    }

    #[test]
    fn concatenation() {
        let a = d(&[&[1, 2]], &[]);
        let b = d(&[&[1]], &[]);
        assert_eq!(concat_g(&a, &Diagram::empty(), GluingMap::Young), a);
        assert_eq!(concat_g(&Diagram::empty(), &a, GluingMap::Young), a);
        assert_eq!(concat_g(&a, &b, GluingMap::Young), d(&[&[1, 2], &[1]], &[1]));
    }

    #[test]
    fn classification() {
        let y = classify(&intro_young());
        for f in [Flag::Young, Flag::RowConnected, Flag::RowIncreasing, Flag::TopJustified, Flag::LeftJustified] {
            assert!(y.contains(&f), "{f:?}");
        }
        assert!(classify(&intro_ribbon()).contains(&Flag::QuasiRibbon));
        let s = classify(&intro_skew());
        assert!(s.contains(&Flag::DiagonalSkew) && s.contains(&Flag::Skew));
        assert!(!s.contains(&Flag::Young));
    }

    #[test]
    fn shapes() {
        assert_eq!(shape(&intro_young()).unwrap(), vec![4, 2, 1]);
        assert_eq!(shape(&d(&[&[1, 2, 3]], &[])).unwrap(), vec![1, 1, 1]);
        assert_eq!(shape(&intro_ribbon()).unwrap(), vec![3, 3, 1, 3]);
        assert!(shape(&d(&[&[1], &[2]], &[0])).is_err());
    }

    #[test]
    fn grid_and_render() {
        let g = to_grid(&d(&[&[1, 2], &[1]], &[1]));
        let expect: BTreeMap<(i64, usize), Letter> = [((1, 1), 1), ((2, 1), 2), ((1, 2), 1)].into();
        assert_eq!(g.cells, expect);
        assert_eq!(render_ascii(&intro_young()), "1112\n23\n3");
        assert_eq!(render_ascii(&intro_skew()), "  12\n 13\n12\n3");
    }

    #[test]
    fn json_round_trip() {
        let s = to_json(&intro_young(), 3);
        assert_eq!(s, r#"{"n":3,"columns":[[1,2,3],[1,3],[1],[2]],"gluing":[2,1,1]}"#);
        assert_eq!(from_json(&s).unwrap().0, intro_young());
        assert_eq!(to_json(&Diagram::empty(), 4), r#"{"n":4,"columns":[],"gluing":[]}"#);
        assert!(from_json(r#"{"n":2,"columns":[[1,3]],"gluing":[]}"#).is_err());
        assert!(from_json(r#"{"n":3,"columns":[[2,1]],"gluing":[]}"#).is_err());
        assert!(from_json(r#"{"n":3,"columns":[[1],[2]],"gluing":[]}"#).is_err());
    }

    #[test]
    fn tl_compares_lengths_reverse_lex() {
        let a = tl_measure(&d(&[&[1, 2], &[1]], &[1]));
        let b = tl_measure(&d(&[&[1], &[1, 2]], &[1]));
        assert_eq!(a.cmp(&a), Ordering::Equal);
        assert_eq!(a.cmp(&b), Ordering::Less);
    }

    #[test]
    fn pair_feasibility() {
        assert!(feasible(&[1, 3], &[1, 2], 1));
        assert!(!feasible(&[1, 3], &[1, 2], 2));
        assert_eq!(max_feasible(&[1, 3], &[1, 2]), Some(1));
        assert_eq!(max_feasible(&[2], &[1]), None);
    }
}
