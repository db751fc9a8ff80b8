//! Kashiwara and quasi-Kashiwara operators on words and strings of columns.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::diagrams::{is_scolc, reading_sw, render_ascii, Column, Diagram, DiagramJson};
use crate::error::{Error, Result};
use crate::structures::{Report, Sds};
use crate::words::{weight, Alphabet, Letter, Weight, Word};

pub const DEFAULT_MAX_VERTICES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Kashiwara,
    Quasi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Word,
    Columns,
    Restricted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Family {
    pub kind: Kind,
    pub level: Level,
}

impl Family {
    pub const fn new(kind: Kind, level: Level) -> Self {
        Self { kind, level }
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k" | "K" | "kashiwara" => Ok(Kind::Kashiwara),
            "qk" | "qK" | "quasi" => Ok(Kind::Quasi),
            _ => Err(Error::Parse(format!("unknown crystal kind {s:?}"))),
        }
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "word" => Ok(Level::Word),
            "columns" => Ok(Level::Columns),
            "restricted" => Ok(Level::Restricted),
            _ => Err(Error::Parse(format!("unknown crystal level {s:?}"))),
        }
    }
}

/// An element acted on by crystal operators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Vertex {
    Word(Word),
    Diagram(Diagram),
}

impl Vertex {
    pub fn reading(&self) -> Word {
        match self {
            Vertex::Word(w) => w.clone(),
            Vertex::Diagram(d) => reading_sw(d),
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Word(w) => write!(f, "{w}"),
            Vertex::Diagram(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sign {
    Plus,
    Minus,
}

/// Positions of the unmatched signs after deleting every `-+`.
fn reduce(signs: &[(usize, Sign)]) -> (Vec<usize>, Vec<usize>) {
    let mut minus: Vec<usize> = Vec::new();
    let mut plus: Vec<usize> = Vec::new();
    for &(k, s) in signs {
        match s {
            Sign::Minus => minus.push(k),
            Sign::Plus => {
                if minus.pop().is_none() {
                    plus.push(k);
                }
            }
        }
    }
    (plus, minus)
}

/// Reference reduction by repeated deletion of adjacent `-+`.
pub fn reduce_naive(signs: &str) -> String {
    let mut s = signs.to_string();
    while let Some(k) = s.find("-+") {
        s.replace_range(k..k + 2, "");
    }
    s
}

/// Stack-based reduction on a `+`/`-` string.
pub fn reduce_signs(signs: &str) -> String {
    let v: Vec<(usize, Sign)> = signs
        .chars()
        .enumerate()
        .map(|(k, c)| (k, if c == '+' { Sign::Plus } else { Sign::Minus }))
        .collect();
    let (p, m) = reduce(&v);
    "+".repeat(p.len()) + &"-".repeat(m.len())
}

fn check_index(i: u32, n: u32) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::OperatorIndex { i, max: n.saturating_sub(1) });
    }
    Ok(())
}

fn word_signs(w: &Word, i: Letter) -> Vec<(usize, Sign)> {
    w.letters()
        .iter()
        .enumerate()
        .filter_map(|(k, &x)| match x {
            _ if x == i => Some((k, Sign::Plus)),
            _ if x == i + 1 => Some((k, Sign::Minus)),
            _ => None,
        })
        .collect()
}

fn column_signs(d: &Diagram, i: Letter) -> Vec<(usize, Sign)> {
    d.columns()
        .iter()
        .enumerate()
        .filter_map(|(k, c)| match (c.contains(i), c.contains(i + 1)) {
            (true, false) => Some((k, Sign::Plus)),
            (false, true) => Some((k, Sign::Minus)),
            _ => None,
        })
        .collect()
}

/// Whether some `i` lies to the right of some `i + 1`.
fn quasi_blocked(items: &[(bool, bool)]) -> bool {
    let mut seen_upper = false;
    for &(has_i, has_next) in items {
        if has_i && (has_next || seen_upper) {
            return true;
        }
        seen_upper |= has_next;
    }
    false
}

fn replace_letter(w: &Word, k: usize, x: Letter) -> Word {
    let mut v = w.letters().to_vec();
    v[k] = x;
    Word::from_vec(v)
}

fn replace_in_column(d: &Diagram, k: usize, from: Letter, to: Letter) -> Diagram {
    let mut cols = d.columns().to_vec();
    let mut e: Vec<Letter> = cols[k].entries().iter().map(|&x| if x == from { to } else { x }).collect();
    e.sort_unstable();
    cols[k] = Column::from_vec(e);
    Diagram::new(cols, d.gluing().to_vec()).expect("gluing unchanged")
}

/// Position acted on: `raise` selects `e_i`, otherwise `f_i`.
fn target(fam: Family, x: &Vertex, i: Letter, raise: bool) -> Option<usize> {
    let items: Vec<(bool, bool)> = match x {
        Vertex::Word(w) => w.letters().iter().map(|&c| (c == i, c == i + 1)).collect(),
        Vertex::Diagram(d) => d.columns().iter().map(|c| (c.contains(i), c.contains(i + 1))).collect(),
    };
    match fam.kind {
        Kind::Kashiwara => {
            let signs = match x {
                Vertex::Word(w) => word_signs(w, i),
                Vertex::Diagram(d) => column_signs(d, i),
            };
            let (plus, minus) = reduce(&signs);
            if raise {
                minus.first().copied()
            } else {
                plus.last().copied()
            }
        }
        Kind::Quasi => {
            if quasi_blocked(&items) {
                return None;
            }
            if raise {
                items.iter().position(|e| e.1)
            } else {
                items.iter().rposition(|e| e.0)
            }
        }
    }
}

fn check_vertex(fam: Family, x: &Vertex) -> Result<()> {
    match (fam.level, x) {
        (Level::Word, Vertex::Word(_)) | (Level::Columns | Level::Restricted, Vertex::Diagram(_)) => Ok(()),
        _ => Err(Error::Precondition(format!("{x} does not match the {:?} level", fam.level))),
    }
}

fn apply(fam: Family, n: u32, i: u32, x: &Vertex, raise: bool) -> Result<Option<Vertex>> {
    check_index(i, n)?;
    check_vertex(fam, x)?;
    let Some(k) = target(fam, x, i, raise) else {
        return Ok(None);
    };
    let (from, to) = if raise { (i + 1, i) } else { (i, i + 1) };
    let out = match x {
        Vertex::Word(w) => Vertex::Word(replace_letter(w, k, to)),
        Vertex::Diagram(d) => {
            let d2 = replace_in_column(d, k, from, to);
            if fam.level == Level::Restricted && !is_scolc(&d2) {
                return Ok(None);
            }
            Vertex::Diagram(d2)
        }
    };
    Ok(Some(out))
}

pub fn e(fam: Family, n: u32, i: u32, x: &Vertex) -> Result<Option<Vertex>> {
    apply(fam, n, i, x, true)
}

pub fn f(fam: Family, n: u32, i: u32, x: &Vertex) -> Result<Option<Vertex>> {
    apply(fam, n, i, x, false)
}

fn iterate(fam: Family, n: u32, i: u32, x: &Vertex, raise: bool) -> Result<usize> {
    let mut k = 0;
    let mut cur = x.clone();
    while let Some(next) = apply(fam, n, i, &cur, raise)? {
        cur = next;
        k += 1;
    }
    Ok(k)
}

/// Largest `k` with `e_i^k(x)` defined.
pub fn eps(fam: Family, n: u32, i: u32, x: &Vertex) -> Result<usize> {
    iterate(fam, n, i, x, true)
}

/// Largest `k` with `f_i^k(x)` defined.
pub fn phi(fam: Family, n: u32, i: u32, x: &Vertex) -> Result<usize> {
    iterate(fam, n, i, x, false)
}

pub fn is_highest_weight(fam: Family, n: u32, x: &Vertex) -> Result<bool> {
    for i in 1..n {
        if e(fam, n, i, x)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrystalGraph {
    pub vertices: Vec<Vertex>,
    /// `(source, i, target)` with `f_i(source) = target`.
    pub edges: Vec<(usize, u32, usize)>,
    pub root: usize,
}

/// Connected component of `x`, breadth first, index ascending, `f` before `e`.
pub fn component(fam: Family, n: u32, x: &Vertex, max_vertices: usize) -> Result<CrystalGraph> {
    let mut index: HashMap<Vertex, usize> = HashMap::from([(x.clone(), 0)]);
    let mut vertices = vec![x.clone()];
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let mut visit = |v: Vertex, vertices: &mut Vec<Vertex>, queue: &mut VecDeque<usize>| -> Result<usize> {
        if let Some(&k) = index.get(&v) {
            return Ok(k);
        }
        if vertices.len() == max_vertices {
            return Err(Error::Resource { cap: max_vertices });
        }
        let k = vertices.len();
        index.insert(v.clone(), k);
        vertices.push(v);
        queue.push_back(k);
        Ok(k)
    };
    while let Some(k) = queue.pop_front() {
        for i in 1..n {
            let v = vertices[k].clone();
            if let Some(t) = f(fam, n, i, &v)? {
                let kt = visit(t, &mut vertices, &mut queue)?;
                edges.push((k, i, kt));
            }
            if let Some(s) = e(fam, n, i, &v)? {
                let ks = visit(s, &mut vertices, &mut queue)?;
                edges.push((ks, i, k));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(CrystalGraph { vertices, edges, root: 0 })
}

/// Extends `x -> y` edge by edge; returns the witness map when it is a weight-preserving bijection.
pub fn components_isomorphic(fam: Family, n: u32, x: &Vertex, y: &Vertex, max_vertices: usize) -> Result<Option<Vec<(Vertex, Vertex)>>> {
    let a = Alphabet::new(n)?;
    let wt = |v: &Vertex| weight(&v.reading(), a);
    let mut psi: HashMap<Vertex, Vertex> = HashMap::from([(x.clone(), y.clone())]);
    let mut inverse: HashMap<Vertex, Vertex> = HashMap::from([(y.clone(), x.clone())]);
    let mut order = vec![(x.clone(), y.clone())];
    let mut queue = VecDeque::from([(x.clone(), y.clone())]);
    while let Some((u, v)) = queue.pop_front() {
        if wt(&u)? != wt(&v)? {
            return Ok(None);
        }
        for i in 1..n {
            for raise in [false, true] {
                match (apply(fam, n, i, &u, raise)?, apply(fam, n, i, &v, raise)?) {
                    (None, None) => {}
                    (Some(u2), Some(v2)) => match (psi.get(&u2), inverse.get(&v2)) {
                        (None, None) => {
                            if psi.len() == max_vertices {
                                return Err(Error::Resource { cap: max_vertices });
                            }
                            psi.insert(u2.clone(), v2.clone());
                            inverse.insert(v2.clone(), u2.clone());
                            order.push((u2.clone(), v2.clone()));
                            queue.push_back((u2, v2));
                        }
                        (Some(m), Some(mi)) if *m == v2 && *mi == u2 => {}
                        _ => return Ok(None),
                    },
                    _ => return Ok(None),
                }
            }
        }
    }
    Ok(Some(order))
}

/// `e_i(R(C(u))) = R(C(e_i(u)))` and the `f` version over all words up to `max_len`.
pub fn crystal_commutes_with_sds(kind: Kind, s: Sds, n: u32, max_len: usize) -> Result<Report> {
    let a = Alphabet::new(n)?;
    let fam = Family::new(kind, Level::Word);
    let words: Vec<Word> = a.words_up_to(max_len).collect();
    Ok(words
        .into_par_iter()
        .map(|u| {
            let mut rep = Report::default();
            let r = Vertex::Word(reading_sw(&s.constructor(&u)));
            let uv = Vertex::Word(u.clone());
            for i in 1..n {
                for raise in [true, false] {
                    rep.checked += 1;
                    let lhs = apply(fam, n, i, &r, raise).expect("valid index");
                    let rhs = apply(fam, n, i, &uv, raise)
                        .expect("valid index")
                        .map(|w| Vertex::Word(reading_sw(&s.constructor(&w.reading()))));
                    if lhs != rhs {
                        let op = if raise { "e" } else { "f" };
                        rep.violations.push(format!("{op}_{i} on {u}: {lhs:?} vs {rhs:?}"));
                    }
                }
            }
            rep
        })
        .reduce(Report::default, Report::merge))
}

/// DOT export: vertices labelled by reading, ASCII diagram as tooltip.
pub fn to_dot(g: &CrystalGraph) -> String {
    let mut out = String::from("digraph crystal {\n");
    for (k, v) in g.vertices.iter().enumerate() {
        let tip = match v {
            Vertex::Diagram(d) => format!(", tooltip=\"{}\"", render_ascii(d).replace('\n', "\\n")),
            Vertex::Word(_) => String::new(),
        };
        out += &format!("  v{k} [label=\"{}\"{tip}];\n", v.reading());
    }
    for &(s, i, t) in &g.edges {
        out += &format!("  v{s} -> v{t} [label=\"{i}\"];\n");
    }
    out + "}\n"
}

#[derive(Serialize)]
struct GraphJson {
    root: usize,
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize)]
struct VertexJson {
    reading: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagram: Option<DiagramJson>,
}

#[derive(Serialize)]
struct EdgeJson {
    from: usize,
    to: usize,
    i: u32,
}

pub fn to_json(g: &CrystalGraph, n: u32) -> String {
    let j = GraphJson {
        root: g.root,
        vertices: g
            .vertices
            .iter()
            .map(|v| VertexJson {
                reading: v.reading().to_string(),
                diagram: match v {
                    Vertex::Diagram(d) => Some(DiagramJson::from_diagram(d, n)),
                    Vertex::Word(_) => None,
                },
            })
            .collect(),
        edges: g.edges.iter().map(|&(from, i, to)| EdgeJson { from, to, i }).collect(),
    };
    serde_json::to_string_pretty(&j).expect("graph serializes")
}

/// Vertices reached from the root by following `f_{labels[0]}`, `f_{labels[1]}`, ...
pub fn chain_along(g: &CrystalGraph, labels: &[u32]) -> Vec<Vertex> {
    let mut cur = g.root;
    let mut out = Vec::new();
    for &i in labels {
        match g.edges.iter().find(|e| e.0 == cur && e.1 == i) {
            Some(&(_, _, t)) => {
                cur = t;
                out.push(g.vertices[t].clone());
            }
            None => break,
        }
    }
    out
}

/// Weight of a vertex's reading.
pub fn vertex_weight(v: &Vertex, n: u32) -> Result<Weight> {
    weight(&v.reading(), Alphabet::new(n)?)
}
