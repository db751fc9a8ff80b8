//! Rewriting engine for strings of columns with two-column rule windows.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::congruence::{Monoid, RelationSet};
use crate::diagrams::{gluing_between, rb_measure, reading_sw, tl_measure, Diagram, DiagramJson, Placed, RbMeasure, TlMeasure};
use crate::error::{Error, Result};

/// Rewrites a placed window `(c_i, c_j)`. Output columns keep the absolute rows of the input;
/// empty columns are allowed and dropped by the engine.
pub type MatchFn = fn(&Placed, &Placed) -> Option<Vec<Placed>>;

/// Rows by which the columns right of the window move along with the rewrite.
pub type CarryFn = fn(&Placed, &Placed) -> i64;

#[derive(Clone, Copy)]
pub struct Rule {
    pub name: &'static str,
    pub apply: MatchFn,
    /// `None` keeps the right context in place.
    pub carry: Option<CarryFn>,
}

impl Rule {
    pub fn new(name: &'static str, apply: MatchFn) -> Self {
        Self { name, apply, carry: None }
    }

    pub fn carrying(self, carry: CarryFn) -> Self {
        Self { carry: Some(carry), ..self }
    }
}

impl fmt::Debug for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureTag {
    Tl,
    Rb,
}

#[derive(Debug, Clone)]
pub struct RewriteSystem {
    pub name: &'static str,
    pub rules: Vec<Rule>,
    pub congruence: Monoid,
    pub measure: MeasureTag,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Measure {
    Tl(TlMeasure),
    Rb(RbMeasure),
}

impl RewriteSystem {
    pub fn rule(&self, name: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.name == name)
    }

    pub fn measure_of(&self, w: &Diagram) -> Measure {
        match self.measure {
            MeasureTag::Tl => Measure::Tl(tl_measure(w)),
            MeasureTag::Rb => Measure::Rb(rb_measure(w)),
        }
    }
}

/// A rule applied to the window starting at column `index` (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Redex {
    pub rule: String,
    pub index: usize,
}

impl Redex {
    pub fn new(rule: &str, index: usize) -> Self {
        Self { rule: rule.to_string(), index }
    }
}

impl fmt::Display for Redex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.rule, self.index)
    }
}

/// Replacement for a window with the new boundary gluing positions; `None` means no neighbour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRewrite {
    pub replacement: Diagram,
    pub p_t: Option<i64>,
    pub q_t: Option<i64>,
}

struct Applied {
    out: Vec<Placed>,
    carry: i64,
}

fn apply_at(rule: &Rule, placed: &[Placed], k: usize) -> Option<Applied> {
    let (ci, cj) = (&placed[k], &placed[k + 1]);
    let out: Vec<Placed> = (rule.apply)(ci, cj)?.into_iter().filter(|p| !p.is_empty()).collect();
    debug_assert!((1..=3).contains(&out.len()), "{} produced {} columns", rule.name, out.len());
    let carry = rule.carry.map_or(0, |c| c(ci, cj));
    Some(Applied { out, carry })
}

fn shifted(placed: &[Placed], carry: i64) -> impl Iterator<Item = Placed> + '_ {
    placed.iter().map(move |p| Placed::new(p.top + carry, p.col.clone()))
}

fn splice(placed: &[Placed], k: usize, a: Applied) -> Diagram {
    let mut all = placed[..k].to_vec();
    all.extend(a.out);
    all.extend(shifted(&placed[k + 2..], a.carry));
    Diagram::from_placed(all)
}

fn redexes_at<'a>(sys: &'a RewriteSystem, placed: &'a [Placed], k: usize) -> impl Iterator<Item = Redex> + 'a {
    let (ci, cj) = (&placed[k], &placed[k + 1]);
    sys.rules
        .iter()
        .filter(move |r| (r.apply)(ci, cj).is_some())
        .map(move |r| Redex::new(r.name, k))
}

/// All applicable redexes, by window start and then rule order.
pub fn find_redexes(sys: &RewriteSystem, w: &Diagram) -> Vec<Redex> {
    let placed = w.placed();
    (0..placed.len().saturating_sub(1)).flat_map(|k| redexes_at(sys, &placed, k).collect::<Vec<_>>()).collect()
}

fn leftmost_redex(sys: &RewriteSystem, placed: &[Placed]) -> Option<Redex> {
    (0..placed.len().saturating_sub(1)).find_map(|k| redexes_at(sys, placed, k).next())
}

fn rightmost_redex(sys: &RewriteSystem, placed: &[Placed]) -> Option<Redex> {
    (0..placed.len().saturating_sub(1)).rev().find_map(|k| redexes_at(sys, placed, k).next())
}

pub fn local_rewrite(sys: &RewriteSystem, w: &Diagram, r: &Redex) -> Result<LocalRewrite> {
    let placed = w.placed();
    let not_applicable = || Error::NotApplicable { rule: r.rule.clone(), index: r.index };
    if r.index + 1 >= placed.len() {
        return Err(not_applicable());
    }
    let rule = sys.rule(&r.rule).ok_or_else(not_applicable)?;
    let a = apply_at(rule, &placed, r.index).ok_or_else(not_applicable)?;
    let p_t = r.index.checked_sub(1).map(|k| gluing_between(&placed[k], &a.out[0]));
    let next = shifted(placed.get(r.index + 2..r.index + 3).unwrap_or(&[]), a.carry).next();
    let q_t = next.map(|c| gluing_between(a.out.last().unwrap(), &c));
    Ok(LocalRewrite { replacement: Diagram::from_placed(a.out), p_t, q_t })
}

/// One rewriting step.
pub fn step(sys: &RewriteSystem, w: &Diagram, r: &Redex) -> Result<Diagram> {
    let placed = w.placed();
    let not_applicable = || Error::NotApplicable { rule: r.rule.clone(), index: r.index };
    if r.index + 1 >= placed.len() {
        return Err(not_applicable());
    }
    let rule = sys.rule(&r.rule).ok_or_else(not_applicable)?;
    let a = apply_at(rule, &placed, r.index).ok_or_else(not_applicable)?;
    Ok(splice(&placed, r.index, a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    Random(u64),
}

impl FromStr for Strategy {
    type Err = Error;

    /// `leftmost`, `rightmost`, `random` (seed 0) or `random:<seed>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "leftmost" => Ok(Strategy::Leftmost),
            "rightmost" => Ok(Strategy::Rightmost),
            "random" => Ok(Strategy::Random(0)),
            _ => s
                .strip_prefix("random:")
                .and_then(|x| x.parse().ok())
                .map(Strategy::Random)
                .ok_or_else(|| Error::Parse(format!("unknown strategy {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub redex: Redex,
    pub diagram: Diagram,
    pub measure: Measure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub initial: Diagram,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn result(&self) -> &Diagram {
        self.steps.last().map_or(&self.initial, |s| &s.diagram)
    }

    pub fn diagrams(&self) -> impl Iterator<Item = &Diagram> {
        std::iter::once(&self.initial).chain(self.steps.iter().map(|s| &s.diagram))
    }

    pub fn rule_names(&self) -> Vec<&str> {
        self.steps.iter().map(|s| s.redex.rule.as_str()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStepJson {
    pub rule: String,
    pub index: usize,
    pub diagram: DiagramJson,
}

/// Trace as a list of `{rule, index, diagram}`; the initial diagram has rule `""`.
pub fn trace_to_json(t: &Trace, n: u32) -> String {
    let mut v = vec![TraceStepJson { rule: String::new(), index: 0, diagram: DiagramJson::from_diagram(&t.initial, n) }];
    v.extend(t.steps.iter().map(|s| TraceStepJson {
        rule: s.redex.rule.clone(),
        index: s.redex.index,
        diagram: DiagramJson::from_diagram(&s.diagram, n),
    }));
    serde_json::to_string_pretty(&v).expect("trace serializes")
}

pub fn trace_from_json(sys: &RewriteSystem, s: &str) -> Result<Trace> {
    let v: Vec<TraceStepJson> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let mut it = v.into_iter();
    let first = it.next().ok_or_else(|| Error::Parse("empty trace".into()))?;
    let (initial, _) = first.diagram.into_diagram()?;
    let mut steps = Vec::new();
    for s in it {
        let (diagram, _) = s.diagram.into_diagram()?;
        let measure = sys.measure_of(&diagram);
        steps.push(TraceStep { redex: Redex { rule: s.rule, index: s.index }, diagram, measure });
    }
    Ok(Trace { initial, steps })
}

/// Whether every recorded step is reproduced by applying its redex.
pub fn verify_trace(sys: &RewriteSystem, t: &Trace) -> bool {
    let mut cur = t.initial.clone();
    for s in &t.steps {
        match step(sys, &cur, &s.redex) {
            Ok(next) if next == s.diagram => cur = next,
            _ => return false,
        }
    }
    true
}

pub fn step_budget(w: &Diagram) -> usize {
    4 * w.boxes() * w.boxes()
}

/// Normalizes `w` under `strategy`, returning the normal form and its trace.
pub fn normal_form(sys: &RewriteSystem, w: &Diagram, strategy: Strategy) -> Result<(Diagram, Trace)> {
    let budget = step_budget(w);
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut cur = w.clone();
    let mut steps = Vec::new();
    loop {
        let placed = cur.placed();
        let redex = match (&mut rng, strategy) {
            (_, Strategy::Leftmost) => leftmost_redex(sys, &placed),
            (_, Strategy::Rightmost) => rightmost_redex(sys, &placed),
            (Some(rng), _) => {
                let all = find_redexes(sys, &cur);
                (!all.is_empty()).then(|| all[rng.gen_range(0..all.len())].clone())
            }
            (None, Strategy::Random(_)) => unreachable!(),
        };
        let Some(redex) = redex else { break };
        if steps.len() == budget {
            return Err(Error::Termination { budget });
        }
        let rule = sys.rule(&redex.rule).expect("redex names a rule");
        let a = apply_at(rule, &placed, redex.index).expect("redex applies");
        cur = splice(&placed, redex.index, a);
        steps.push(TraceStep { redex, measure: sys.measure_of(&cur), diagram: cur.clone() });
    }
    Ok((cur.clone(), Trace { initial: w.clone(), steps }))
}

/// Applies an explicit redex sequence.
pub fn replay(sys: &RewriteSystem, w: &Diagram, redexes: &[Redex]) -> Result<Trace> {
    let mut cur = w.clone();
    let mut steps = Vec::new();
    for r in redexes {
        cur = step(sys, &cur, r)?;
        steps.push(TraceStep { redex: r.clone(), diagram: cur.clone(), measure: sys.measure_of(&cur) });
    }
    Ok(Trace { initial: w.clone(), steps })
}

pub fn is_normal(sys: &RewriteSystem, w: &Diagram) -> bool {
    leftmost_redex(sys, &w.placed()).is_none()
}

/// A one-step branching whose two sides normalize differently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub source: Diagram,
    pub left: (Redex, Diagram),
    pub right: (Redex, Diagram),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JoinReport {
    pub branchings: usize,
    pub witnesses: Vec<Witness>,
    pub errors: Vec<String>,
}

impl JoinReport {
    pub fn ok(&self) -> bool {
        self.witnesses.is_empty() && self.errors.is_empty()
    }

    fn merge(mut self, o: JoinReport) -> JoinReport {
        self.branchings += o.branchings;
        self.witnesses.extend(o.witnesses);
        self.errors.extend(o.errors);
        self
    }
}

fn join_one(sys: &RewriteSystem, w: &Diagram) -> JoinReport {
    let mut rep = JoinReport::default();
    let mut reducts = Vec::new();
    for r in find_redexes(sys, w) {
        let res = step(sys, w, &r).and_then(|d| normal_form(sys, &d, Strategy::Leftmost));
        match res {
            Ok((nf, _)) => reducts.push((r, nf)),
            Err(e) => rep.errors.push(format!("{w} via {r}: {e}")),
        }
    }
    for i in 0..reducts.len() {
        for j in i + 1..reducts.len() {
            rep.branchings += 1;
            if reducts[i].1 != reducts[j].1 {
                rep.witnesses.push(Witness { source: w.clone(), left: reducts[i].clone(), right: reducts[j].clone() });
            }
        }
    }
    rep
}

/// Checks that every one-step branching of every instance is joinable.
pub fn check_joinability(sys: &RewriteSystem, instances: &[Diagram]) -> JoinReport {
    instances.par_iter().map(|w| join_one(sys, w)).reduce(JoinReport::default, JoinReport::merge)
}

/// Audit of a single step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepAudit {
    pub content_preserved: bool,
    /// `None` when the reading was too long for the oracle.
    pub congruent: Option<bool>,
    pub measure_decreases: bool,
}

impl StepAudit {
    pub fn ok(&self) -> bool {
        self.content_preserved && self.congruent != Some(false) && self.measure_decreases
    }
}

/// Readings longer than this skip the congruence oracle.
pub const AUDIT_ORACLE_MAX_BOXES: usize = 8;

pub fn audit_step(sys: &RewriteSystem, rel: &RelationSet, before: &Diagram, after: &Diagram) -> StepAudit {
    let (u, v) = (reading_sw(before), reading_sw(after));
    let congruent = (u.len() <= AUDIT_ORACLE_MAX_BOXES).then(|| rel.congruent(&u, &v).unwrap_or(false));
    StepAudit {
        content_preserved: before.content() == after.content(),
        congruent,
        measure_decreases: sys.measure_of(after) < sys.measure_of(before),
    }
}

/// Whether the recorded measures strictly decrease along the trace.
pub fn measure_decreasing(sys: &RewriteSystem, t: &Trace) -> bool {
    let mut prev = sys.measure_of(&t.initial);
    for s in &t.steps {
        if s.measure >= prev {
            return false;
        }
        prev = s.measure.clone();
    }
    true
}
