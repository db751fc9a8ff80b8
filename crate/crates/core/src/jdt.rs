//! Jeu de taquin: the FS rules, rectification, the classical sliding oracle and the column involution.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::congruence::Monoid;
use crate::diagrams::{
    feasible, from_grid, gluing_between, is_skew, max_feasible, to_grid, Column, Diagram, GluingMap,
    GridView, Placed,
};
use crate::error::{Error, Result};
use crate::rewriting::{normal_form, MatchFn, MeasureTag, RewriteSystem, Rule, Strategy};
use crate::structures::{Report, Sds};
use crate::words::{Alphabet, Letter, Word};

/// Names of the six rules, in rule-list order.
pub const FS_RULES: [&str; 6] = ["alpha", "delta_alpha", "beta", "delta_beta", "gamma", "delta"];

/// Window geometry shared by the rules.
pub(crate) struct Pair<'a> {
    pub x: &'a [Letter],
    pub y: &'a [Letter],
    pub ti: i64,
    pub tj: i64,
    pub a: i64,
    pub b: i64,
    pub r: i64,
    pub f: bool,
    pub g: Option<i64>,
}

impl<'a> Pair<'a> {
    pub fn new(ci: &'a Placed, cj: &'a Placed) -> Self {
        let (x, y) = (ci.entries(), cj.entries());
        let r = gluing_between(ci, cj);
        Pair {
            x,
            y,
            ti: ci.top,
            tj: cj.top,
            a: x.len() as i64,
            b: y.len() as i64,
            r,
            f: feasible(x, y, r),
            g: max_feasible(x, y),
        }
    }

    pub fn g0(&self) -> i64 {
        self.g.unwrap_or(0)
    }

    /// Top row of `c_j` when glued at `r`.
    pub fn tj_at(&self, r: i64) -> i64 {
        self.ti + r - self.b
    }
}

fn placed(top: i64, entries: Vec<Letter>) -> Placed {
    Placed::new(top, Column::from_vec(entries))
}

fn alpha_at(x: &[Letter], ti: i64, y: &[Letter], tj: i64) -> Vec<Placed> {
    let a = x.len() as i64;
    let split = (ti + a - tj) as usize;
    let mut ci = x.to_vec();
    ci.extend_from_slice(&y[split..]);
    vec![placed(ti, ci), placed(tj, y[..split].to_vec())]
}

/// Moves the part of `c_j` hanging below `c_i` into `c_i`.
fn alpha(ci: &Placed, cj: &Placed) -> Option<Vec<Placed>> {
    let p = Pair::new(ci, cj);
    (p.tj <= p.ti && p.r > p.a && p.f).then(|| alpha_at(p.x, p.ti, p.y, p.tj))
}

fn delta_alpha(ci: &Placed, cj: &Placed) -> Option<Vec<Placed>> {
    let p = Pair::new(ci, cj);
    let g = p.g?;
    (!p.f && p.a < g && g <= p.b && g < p.r).then(|| alpha_at(p.x, p.ti, p.y, p.tj_at(g)))
}

/// Forward slide of the empty cell above `c_i` through the pair.
fn beta_at(x: &[Letter], ti: i64, y: &[Letter], tj: i64) -> Option<Vec<Placed>> {
    let yat = |row: i64| {
        let v = row - tj;
        (0..y.len() as i64).contains(&v).then(|| (v as usize, y[v as usize]))
    };
    let (l, m) = (1..=x.len()).find_map(|l| {
        let (m, ym) = yat(ti + l as i64 - 2)?;
        (x[l - 1] > ym).then_some((l, m))
    })?;
    let mut ci = x[..l - 1].to_vec();
    ci.push(y[m]);
    ci.extend_from_slice(&x[l - 1..]);
    let mut cj = y[..m].to_vec();
    cj.extend_from_slice(&y[m + 1..]);
    Some(vec![placed(ti - 1, ci), placed(tj, cj)])
}

fn beta(ci: &Placed, cj: &Placed) -> Option<Vec<Placed>> {
    let p = Pair::new(ci, cj);
    if (p.f || p.r == 0) && p.r < p.b && p.r <= p.a && p.g0() == p.r {
        beta_at(p.x, p.ti, p.y, p.tj)
    } else {
        None
    }
}

fn delta_beta(ci: &Placed, cj: &Placed) -> Option<Vec<Placed>> {
    let p = Pair::new(ci, cj);
    let g = p.g0();
    if !p.f && g < p.r && g < p.b && g <= p.a {
        beta_at(p.x, p.ti, p.y, p.tj_at(g))
    } else {
        None
    }
}

/// Moves `c_i` up as far as the pair stays row connected and increasing, at most to top alignment.
fn gamma(ci: &Placed, cj: &Placed) -> Option<Vec<Placed>> {
    let p = Pair::new(ci, cj);
    let entry = p.f || (p.r <= 0 && p.x[0] <= p.y[p.b as usize - 1]);
    if !(p.r < p.b && entry) {
        return None;
    }
    let s = p.g0().min(p.b);
    (s > p.r).then(|| vec![placed(p.ti - (s - p.r), p.x.to_vec()), cj.clone()])
}

/// Moves a hanging `c_j` up to top alignment.
fn delta(ci: &Placed, cj: &Placed) -> Option<Vec<Placed>> {
    let p = Pair::new(ci, cj);
    (p.r > p.b && (p.f || feasible(p.x, p.y, p.b))).then(|| vec![ci.clone(), placed(p.ti, p.y.to_vec())])
}

pub fn fs_rules() -> RewriteSystem {
    let fns: [MatchFn; 6] = [alpha, delta_alpha, beta, delta_beta, gamma, delta];
    RewriteSystem {
        name: "fs",
        rules: FS_RULES.iter().zip(fns).map(|(&name, apply)| Rule::new(name, apply)).collect(),
        congruence: Monoid::Plactic,
        measure: MeasureTag::Tl,
    }
}

/// Rectification of a skew diagram by leftmost normalization.
pub fn rect(w: &Diagram) -> Result<Diagram> {
    if !is_skew(w) {
        return Err(Error::Precondition(format!("{w} is not a skew tableau")));
    }
    Ok(normal_form(&fs_rules(), w, Strategy::Leftmost)?.0)
}

/// Rows of a skew grid: `(first column, entries)` for each row, top to bottom.
fn skew_rows(w: &Diagram) -> Result<Vec<(usize, Vec<Letter>)>> {
    if !is_skew(w) {
        return Err(Error::Precondition(format!("{w} is not a skew tableau")));
    }
    let mut rows: BTreeMap<i64, Vec<(usize, Letter)>> = BTreeMap::new();
    for (&(r, c), &x) in &to_grid(w).cells {
        rows.entry(r).or_default().push((c, x));
    }
    Ok(rows.into_values().map(|cells| (cells[0].0, cells.into_iter().map(|e| e.1).collect())).collect())
}

/// Skew tableau on the classical grid: `inner[i]` empty cells then `rows[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewGrid {
    pub inner: Vec<usize>,
    pub rows: Vec<Vec<Letter>>,
}

impl SkewGrid {
    /// Places `w` with its leftmost column at grid column 0 and top row at grid row 0.
    pub fn from_diagram(w: &Diagram) -> Result<Self> {
        let rows = skew_rows(w)?;
        let grid = SkewGrid { inner: rows.iter().map(|r| r.0 - 1).collect(), rows: rows.into_iter().map(|r| r.1).collect() };
        if !grid.is_valid() {
            return Err(Error::Precondition(format!("{w} does not sit on a skew shape")));
        }
        Ok(grid)
    }

    fn outer(&self, i: usize) -> usize {
        self.inner[i] + self.rows[i].len()
    }

    fn is_valid(&self) -> bool {
        (1..self.rows.len()).all(|i| self.inner[i] <= self.inner[i - 1] && self.outer(i) <= self.outer(i - 1))
    }

    /// Inner corners as `(row, column)`.
    pub fn inner_corners(&self) -> Vec<(usize, usize)> {
        (0..self.rows.len())
            .filter(|&i| self.inner[i] > 0)
            .filter(|&i| i + 1 == self.rows.len() || self.inner[i + 1] < self.inner[i])
            .map(|i| (i, self.inner[i] - 1))
            .collect()
    }

    /// Forward slide of the empty cell at inner corner `(i, j)`.
    pub fn slide(&self, (mut i, mut j): (usize, usize)) -> SkewGrid {
        let mut cells: HashMap<(usize, usize), Letter> = HashMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (k, &x) in row.iter().enumerate() {
                cells.insert((r, self.inner[r] + k), x);
            }
        }
        loop {
            let right = cells.get(&(i, j + 1)).copied();
            let below = cells.get(&(i + 1, j)).copied();
            let from = match (right, below) {
                (Some(r), Some(b)) => {
                    if r < b {
                        (i, j + 1)
                    } else {
                        (i + 1, j)
                    }
                }
                (Some(_), None) => (i, j + 1),
                (None, Some(_)) => (i + 1, j),
                (None, None) => break,
            };
            let x = cells.remove(&from).unwrap();
            cells.insert((i, j), x);
            (i, j) = from;
        }
        let mut rows: BTreeMap<usize, Vec<(usize, Letter)>> = BTreeMap::new();
        for ((r, c), x) in cells {
            rows.entry(r).or_default().push((c, x));
        }
        let mut out = SkewGrid { inner: Vec::new(), rows: Vec::new() };
        for (_, mut cells) in rows {
            cells.sort_unstable();
            out.inner.push(cells[0].0);
            out.rows.push(cells.into_iter().map(|e| e.1).collect());
        }
        out
    }

    pub fn is_straight(&self) -> bool {
        self.inner.iter().all(|&k| k == 0)
    }

    pub fn to_diagram(&self) -> Diagram {
        let mut cells = BTreeMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (k, &x) in row.iter().enumerate() {
                cells.insert((r as i64 + 1, self.inner[r] + k + 1), x);
            }
        }
        let min_col = cells.keys().map(|k| k.1).min().unwrap_or(1);
        let cells = cells.into_iter().map(|((r, c), x)| ((r, c + 1 - min_col), x)).collect();
        from_grid(&GridView { cells }).expect("skew grid is a string of columns")
    }
}

/// Classical rectification choosing inner corners by `choose` (index into the current corner list).
pub fn classical_rect_with(w: &Diagram, mut choose: impl FnMut(&[(usize, usize)]) -> usize) -> Result<Diagram> {
    let mut g = SkewGrid::from_diagram(w)?;
    loop {
        let corners = g.inner_corners();
        if corners.is_empty() {
            return Ok(g.to_diagram());
        }
        let k = choose(&corners);
        g = g.slide(corners[k.min(corners.len() - 1)]);
    }
}

/// Classical rectification, topmost inner corner first.
pub fn classical_rect(w: &Diagram) -> Result<Diagram> {
    classical_rect_with(w, |_| 0)
}

/// Every rectification reachable over all inner-corner orders.
pub fn classical_rect_all(w: &Diagram) -> Result<HashSet<Diagram>> {
    fn go(g: SkewGrid, memo: &mut HashMap<SkewGrid, HashSet<SkewGrid>>) -> HashSet<SkewGrid> {
        if let Some(r) = memo.get(&g) {
            return r.clone();
        }
        let corners = g.inner_corners();
        let out = if corners.is_empty() {
            HashSet::from([g.clone()])
        } else {
            corners.into_iter().flat_map(|c| go(g.slide(c), memo)).collect()
        };
        memo.insert(g, out.clone());
        out
    }
    let g = SkewGrid::from_diagram(w)?;
    Ok(go(g, &mut HashMap::new()).iter().map(SkewGrid::to_diagram).collect())
}

fn check_strategy(corpus: &[Word], strategy: Strategy, sds: Sds) -> Report {
    let sys = fs_rules();
    corpus
        .par_iter()
        .map(|w| {
            let d = crate::diagrams::embed(w, GluingMap::Skew);
            let mut rep = Report { checked: 1, violations: vec![] };
            match normal_form(&sys, &d, strategy) {
                Ok((nf, _)) if nf == sds.constructor(w) => {}
                Ok((nf, _)) => rep.violations.push(format!("{w}: {nf} != {}", sds.constructor(w))),
                Err(e) => rep.violations.push(format!("{w}: {e}")),
            }
            rep
        })
        .reduce(Report::default, Report::merge)
}

/// Leftmost normalization of `[w]_s` against right Schensted insertion.
pub fn leftmost_is_schensted(corpus: &[Word]) -> Report {
    check_strategy(corpus, Strategy::Leftmost, Sds::YRow)
}

/// Rightmost normalization of `[w]_s` against left Schensted insertion.
pub fn rightmost_is_left_schensted(corpus: &[Word]) -> Report {
    check_strategy(corpus, Strategy::Rightmost, Sds::YCol)
}

/// Complement of `c` in `[n]` mapped by `x -> n + 1 - x`.
pub fn column_involution(c: &[Letter], n: u32) -> Result<Vec<Letter>> {
    let a = Alphabet::new(n)?;
    for &x in c {
        a.check(x)?;
    }
    Ok(a.letters().filter(|x| !c.contains(x)).collect())
}

/// Reverses the columns, applies the column involution and glues with the Young map.
pub fn diagram_involution(w: &Diagram, n: u32) -> Result<Diagram> {
    diagram_involution_padded(w, n, w.width())
}

/// As [`diagram_involution`], with `w` padded by empty columns on the right up to `width`.
pub fn diagram_involution_padded(w: &Diagram, n: u32, width: usize) -> Result<Diagram> {
    let mut padded: Vec<&[Letter]> = w.columns().iter().map(Column::entries).collect();
    padded.resize(width.max(padded.len()), &[]);
    let mut cols = Vec::new();
    for c in padded.into_iter().rev() {
        let e = column_involution(c, n)?;
        if !e.is_empty() {
            cols.push(Column::from_vec(e));
        }
    }
    let mut out = Diagram::empty();
    for c in cols {
        out = crate::diagrams::concat_g(&out, &Diagram::column(c), GluingMap::Young);
    }
    Ok(out)
}

/// Right Schensted product of two columns as a diagram.
pub fn column_product(c1: &[Letter], c2: &[Letter]) -> Diagram {
    let d = |c: &[Letter]| if c.is_empty() { Diagram::empty() } else { Diagram::column(Column::from_vec(c.to_vec())) };
    Sds::YRow.product(&d(c1), &d(c2)).expect("columns are Young")
}

/// `(c1 * c2)^* = c2^* * c1^*` for all column pairs over `[n]`, products read as two columns.
pub fn check_involution_law(n: u32) -> Result<Report> {
    let a = Alphabet::new(n)?;
    let cols: Vec<Vec<Letter>> = (0u32..1 << n)
        .map(|m| a.letters().filter(|&x| m & (1 << (x - 1)) != 0).collect())
        .collect();
    let mut rep = Report::default();
    for c1 in &cols {
        for c2 in &cols {
            rep.checked += 1;
            let lhs = diagram_involution_padded(&column_product(c1, c2), n, 2)?;
            let rhs = column_product(&column_involution(c2, n)?, &column_involution(c1, n)?);
            if lhs != rhs {
                rep.violations.push(format!("{c1:?} {c2:?}: {lhs} vs {rhs}"));
            }
        }
    }
    Ok(rep)
}

/// `rect(d ▷ x) = rect(d) ▷ x` over `d = C_dSK(u)`.
pub fn rect_morphism_check(corpus: &[Word], n: u32) -> Report {
    corpus
        .par_iter()
        .map(|u| {
            let d = Sds::DskRow.constructor(u);
            let rd = rect(&d);
            let mut rep = Report::default();
            for x in 1..=n {
                rep.checked += 1;
                let lhs = rect(&Sds::DskRow.insert_unchecked(&d, x));
                let rhs = rd.as_ref().map(|t| Sds::YRow.insert_unchecked(t, x));
                match (&lhs, &rhs) {
                    (Ok(l), Ok(r)) if l == r => {}
                    _ => rep.violations.push(format!("{u} x={x}: {lhs:?} vs {rhs:?}")),
                }
            }
            rep
        })
        .reduce(Report::default, Report::merge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{embed, is_young, reading_sw};
    use crate::rewriting::{find_redexes, replay, step, Redex};

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

    #[test]
    fn rect_intro_example() {
        let s = embed(&w("3121312"), GluingMap::Skew);
        assert_eq!(s, intro_skew());
        let t = rect(&s).unwrap();
        assert_eq!(t, intro_young());
        assert_eq!(reading_sw(&t), w("3213112"));
        assert_eq!(classical_rect(&s).unwrap(), t);
    }

    #[test]
    fn alpha_instance() {
        let sys = fs_rules();
        let src = d(&[&[1, 2], &[1, 2, 3]], &[3]);
        assert_eq!(step(&sys, &src, &Redex::new("alpha", 0)).unwrap(), d(&[&[1, 2, 3], &[1, 2]], &[2]));
    }

    #[test]
    fn intro_trace() {
        let sys = fs_rules();
        let s = intro_skew();
        assert!(find_redexes(&sys, &s).contains(&Redex::new("gamma", 1)));
        let seq = [Redex::new("gamma", 1), Redex::new("gamma", 0), Redex::new("beta", 0), Redex::new("alpha", 1)];
        let t = replay(&sys, &s, &seq).unwrap();
        let expect = [
            d(&[&[1, 3], &[1, 2], &[1, 3], &[2]], &[0, 2, 1]),
            d(&[&[1, 3], &[1, 2], &[1, 3], &[2]], &[1, 2, 1]),
            d(&[&[1, 2, 3], &[1], &[1, 3], &[2]], &[1, 2, 1]),
            intro_young(),
        ];
        for (s, e) in t.steps.iter().zip(&expect) {
            assert_eq!(&s.diagram, e);
        }
    }

    #[test]
    fn young_is_normal() {
        let sys = fs_rules();
        for u in Alphabet::new(3).unwrap().words_up_to(5) {
            let t = Sds::YRow.constructor(&u);
            assert!(find_redexes(&sys, &t).is_empty(), "{t}");
        }
    }

    #[test]
    fn classical_all_orders() {
        let s = intro_skew();
        assert_eq!(classical_rect_all(&s).unwrap(), HashSet::from([intro_young()]));
        assert_eq!(classical_rect(&intro_young()).unwrap(), intro_young());
    }

    #[test]
    fn rect_rejects_non_skew() {
        assert!(rect(&d(&[&[2], &[1]], &[1])).is_err());
    }

    #[test]
    fn schensted_small() {
        let corpus: Vec<Word> = Alphabet::new(3).unwrap().words_up_to(5).collect();
        let rep = leftmost_is_schensted(&corpus);
        assert!(rep.ok(), "{:?}", &rep.violations[..rep.violations.len().min(5)]);
        let rep = rightmost_is_left_schensted(&corpus);
        assert!(rep.ok(), "{:?}", &rep.violations[..rep.violations.len().min(5)]);
    }

    #[test]
    fn flipped_complement_breaks_law() {
        let flip = |c: &[Letter]| -> Vec<Letter> {
            let mut v: Vec<Letter> = column_involution(c, 4).unwrap().into_iter().map(|x| 5 - x).collect();
            v.sort_unstable();
            v
        };
        let t = column_product(&[1], &[2]);
        let lhs: Vec<Vec<Letter>> = t.columns().iter().rev().map(|c| flip(c.entries())).collect();
        let lhs = Diagram::from_entries(lhs, vec![3]).unwrap();
        assert!(!is_young(&lhs));
        assert_ne!(lhs, column_product(&flip(&[2]), &flip(&[1])));
    }

    #[test]
    fn involution_examples() {
        assert_eq!(column_involution(&[1, 2], 3).unwrap(), vec![3]);
        assert!(column_involution(&[1, 2, 3, 4], 4).unwrap().is_empty());
        for m in 0u32..16 {
            let c: Vec<Letter> = (1..=4).filter(|x| m & (1 << (x - 1)) != 0).collect();
            assert_eq!(column_involution(&column_involution(&c, 4).unwrap(), 4).unwrap(), c);
        }
        let rep = check_involution_law(4).unwrap();
        assert!(rep.ok(), "{:?}", &rep.violations[..rep.violations.len().min(5)]);
        assert!(is_young(&diagram_involution(&intro_young(), 3).unwrap()));
    }
}
