//! Exhaustive generators of skew, Young and quasi-ribbon tableaux.

use std::collections::BTreeMap;

use crate::diagrams::{from_grid, is_skew, Diagram, GridView};
use crate::words::Letter;

/// Skew shape as `(inner, outer)` per row, top to bottom.
pub type SkewShape = Vec<(usize, usize)>;

/// Skew shapes with `1..=max_boxes` boxes, nonempty rows and last row flush left.
pub fn skew_shapes(max_boxes: usize) -> Vec<SkewShape> {
    fn go(rows: &mut SkewShape, left: usize, out: &mut Vec<SkewShape>) {
        if let Some(&(mu, _)) = rows.last() {
            if mu == 0 {
                out.push(rows.clone());
            }
        }
        let (mu_max, lam_max) = rows.last().copied().unwrap_or((left, 2 * left));
        for mu in 0..=mu_max {
            for lam in mu + 1..=lam_max.min(mu + left) {
                rows.push((mu, lam));
                go(rows, left - (lam - mu), out);
                rows.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), max_boxes, &mut out);
    out
}

/// Fillings of `shape` over `[n]` with weakly increasing rows and strictly increasing columns.
pub fn fillings(shape: &[(usize, usize)], n: u32) -> Vec<BTreeMap<(usize, usize), Letter>> {
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(i, &(mu, lam))| (mu..lam).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let mut cur = BTreeMap::new();
    fn go(
        k: usize,
        cells: &[(usize, usize)],
        n: u32,
        cur: &mut BTreeMap<(usize, usize), Letter>,
        out: &mut Vec<BTreeMap<(usize, usize), Letter>>,
    ) {
        let Some(&(i, j)) = cells.get(k) else {
            out.push(cur.clone());
            return;
        };
        let lo_row = j.checked_sub(1).and_then(|jj| cur.get(&(i, jj))).copied().unwrap_or(1);
        let lo_col = i.checked_sub(1).and_then(|ii| cur.get(&(ii, j))).map_or(1, |&x| x + 1);
        for x in lo_row.max(lo_col)..=n {
            cur.insert((i, j), x);
            go(k + 1, cells, n, cur, out);
            cur.remove(&(i, j));
        }
    }
    go(0, &cells, n, &mut cur, &mut out);
    out
}

fn to_diagram(cells: &BTreeMap<(usize, usize), Letter>) -> Option<Diagram> {
    let min_col = cells.keys().map(|k| k.1).min()?;
    let g = GridView { cells: cells.iter().map(|(&(i, j), &x)| ((i as i64 + 1, j - min_col + 1), x)).collect() };
    from_grid(&g).ok()
}

/// All skew tableaux (row connected) with `1..=max_boxes` boxes over `[n]`.
pub fn skew_tableaux(n: u32, max_boxes: usize) -> Vec<Diagram> {
    skew_shapes(max_boxes)
        .iter()
        .flat_map(|s| fillings(s, n))
        .filter_map(|c| to_diagram(&c))
        .filter(is_skew)
        .collect()
}

/// All Young tableaux with `0..=max_boxes` boxes over `[n]`.
pub fn young_tableaux(n: u32, max_boxes: usize) -> Vec<Diagram> {
    let mut out = vec![Diagram::empty()];
    out.extend(
        skew_shapes(max_boxes)
            .iter()
            .filter(|s| s.iter().all(|r| r.0 == 0))
            .flat_map(|s| fillings(s, n))
            .filter_map(|c| to_diagram(&c)),
    );
    out
}

/// All quasi-ribbon tableaux with `0..=max_boxes` boxes over `[n]`.
pub fn quasi_ribbons(n: u32, max_boxes: usize) -> Vec<Diagram> {
    let mut out = vec![Diagram::empty()];
    for m in 1..=max_boxes {
        for comp in compositions(m) {
            let mut shape = Vec::new();
            let mut start = 0;
            for &len in &comp {
                shape.push((start, start + len));
                start += len - 1;
            }
            out.extend(fillings(&shape, n).iter().filter_map(to_diagram));
        }
    }
    out
}

fn compositions(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    (1..=m)
        .flat_map(|first| {
            compositions(m - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{is_quasi_ribbon, is_young};

    #[test]
    fn young_counts() {
        // semistandard tableaux over [2] with at most 2 boxes: empty, 2 singles, 3 rows, 1 column
        assert_eq!(young_tableaux(2, 2).len(), 7);
        assert!(young_tableaux(3, 5).iter().all(is_young));
    }

    #[test]
    fn ribbon_counts() {
        // quasi-ribbon tableaux are in bijection with words modulo the hypoplactic congruence;
        // over [2] with 2 boxes: 11, 12, 22, and the column [1,2]
        assert_eq!(quasi_ribbons(2, 2).iter().filter(|d| d.boxes() == 2).count(), 4);
        assert!(quasi_ribbons(3, 5).iter().all(is_quasi_ribbon));
    }

    #[test]
    fn skew_contains_young() {
        let s = skew_tableaux(2, 3);
        assert!(young_tableaux(2, 3).iter().skip(1).all(|t| s.contains(t)));
        assert!(s.iter().all(is_skew));
    }
}
