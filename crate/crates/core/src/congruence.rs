//! Brute-force plactic and hypoplactic congruence oracles.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

pub const DEFAULT_CAP: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Monoid {
    Plactic,
    Hypoplactic,
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Monoid::Plactic => "plactic",
            Monoid::Hypoplactic => "hypoplactic",
        })
    }
}

impl FromStr for Monoid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plactic" => Ok(Monoid::Plactic),
            "hypoplactic" => Ok(Monoid::Hypoplactic),
            _ => Err(Error::Parse(format!("unknown monoid {s:?}"))),
        }
    }
}

/// All defining relation instances over `[n]`, usable in both directions.
#[derive(Debug, Clone)]
pub struct RelationSet {
    monoid: Monoid,
    alphabet: Alphabet,
    moves: HashMap<Vec<Letter>, Vec<Vec<Letter>>>,
    widths: Vec<usize>,
}

impl RelationSet {
    pub fn new(monoid: Monoid, n: u32) -> Result<Self> {
        let alphabet = Alphabet::new(n)?;
        let mut pairs: Vec<(Vec<Letter>, Vec<Letter>)> = Vec::new();
        let l: Vec<Letter> = alphabet.letters().collect();
        for &x in &l {
            for &y in &l {
                for &z in &l {
                    if x <= y && y < z {
                        pairs.push((vec![z, x, y], vec![x, z, y]));
                    }
                    if x < y && y <= z {
                        pairs.push((vec![y, z, x], vec![y, x, z]));
                    }
                    if monoid == Monoid::Hypoplactic {
                        for &t in &l {
                            if x <= y && y < z && z <= t {
                                pairs.push((vec![z, x, t, y], vec![x, z, y, t]));
                            }
                            if x < y && y <= z && z < t {
                                pairs.push((vec![t, y, z, x], vec![y, t, x, z]));
                            }
                        }
                    }
                }
            }
        }
        let mut moves: HashMap<Vec<Letter>, Vec<Vec<Letter>>> = HashMap::new();
        for (u, v) in pairs {
            moves.entry(u.clone()).or_default().push(v.clone());
            moves.entry(v).or_default().push(u);
        }
        let widths = match monoid {
            Monoid::Plactic => vec![3],
            Monoid::Hypoplactic => vec![3, 4],
        };
        Ok(Self { monoid, alphabet, moves, widths })
    }

    pub fn monoid(&self) -> Monoid {
        self.monoid
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// Number of oriented relation instances.
    pub fn instances(&self) -> usize {
        self.moves.values().map(Vec::len).sum()
    }

    /// Words reachable from `w` by one relation application.
    pub fn neighbours(&self, w: &[Letter]) -> Vec<Vec<Letter>> {
        let mut out = Vec::new();
        for &k in &self.widths {
            if w.len() < k {
                continue;
            }
            for i in 0..=w.len() - k {
                if let Some(rhs) = self.moves.get(&w[i..i + k]) {
                    for r in rhs {
                        let mut v = w.to_vec();
                        v[i..i + k].copy_from_slice(r);
                        out.push(v);
                    }
                }
            }
        }
        out
    }

    /// The congruence class of `w`.
    pub fn class_of(&self, w: &Word, cap: usize) -> Result<HashSet<Vec<Letter>>> {
        w.check(self.alphabet)?;
        let start = w.letters().to_vec();
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for v in self.neighbours(&u) {
                if seen.insert(v.clone()) {
                    if seen.len() > cap {
                        return Err(Error::Resource { cap });
                    }
                    queue.push_back(v);
                }
            }
        }
        Ok(seen)
    }

    pub fn congruent(&self, u: &Word, v: &Word) -> Result<bool> {
        v.check(self.alphabet)?;
        if u.len() != v.len() {
            u.check(self.alphabet)?;
            return Ok(false);
        }
        if u == v {
            u.check(self.alphabet)?;
            return Ok(true);
        }
        let target = v.letters();
        u.check(self.alphabet)?;
        let start = u.letters().to_vec();
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(w) = queue.pop_front() {
            for x in self.neighbours(&w) {
                if x == target {
                    return Ok(true);
                }
                if seen.insert(x.clone()) {
                    if seen.len() > DEFAULT_CAP {
                        return Err(Error::Resource { cap: DEFAULT_CAP });
                    }
                    queue.push_back(x);
                }
            }
        }
        Ok(false)
    }

    /// Partition of all words of length `len`, classes in order of their least member.
    pub fn classes(&self, len: usize) -> Result<Vec<Vec<Word>>> {
        let total = (self.alphabet.rank() as usize).checked_pow(len as u32).unwrap_or(usize::MAX);
        if total > DEFAULT_CAP {
            return Err(Error::Resource { cap: DEFAULT_CAP });
        }
        let mut assigned: HashSet<Vec<Letter>> = HashSet::new();
        let mut out = Vec::new();
        for w in self.alphabet.words(len) {
            if assigned.contains(w.letters()) {
                continue;
            }
            let class = self.class_of(&w, DEFAULT_CAP)?;
            let mut members: Vec<Word> = class.iter().cloned().map(Word::from_vec).collect();
            members.sort();
            assigned.extend(class);
            out.push(members);
        }
        Ok(out)
    }

    /// Class index of every word of length `len`.
    pub fn class_ids(&self, len: usize) -> Result<HashMap<Word, usize>> {
        Ok(self
            .classes(len)?
            .into_iter()
            .enumerate()
            .flat_map(|(i, c)| c.into_iter().map(move |w| (w, i)))
            .collect())
    }
}

/// One-shot query.
pub fn congruent(monoid: Monoid, n: u32, u: &Word, v: &Word) -> Result<bool> {
    RelationSet::new(monoid, n)?.congruent(u, v)
}

pub fn classes(monoid: Monoid, n: u32, len: usize) -> Result<Vec<Vec<Word>>> {
    RelationSet::new(monoid, n)?.classes(len)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn knuth_examples() {
        assert!(congruent(Monoid::Plactic, 3, &w("312"), &w("132")).unwrap());
        assert!(!congruent(Monoid::Plactic, 3, &w("12"), &w("21")).unwrap());
        assert!(!congruent(Monoid::Plactic, 3, &w("12"), &w("123")).unwrap());
        assert!(congruent(Monoid::Plactic, 3, &w("3121312"), &w("3213112")).unwrap());
    }

    #[test]
    fn hypoplactic_examples() {
        assert!(congruent(Monoid::Hypoplactic, 2, &w("2121"), &w("1212")).unwrap());
        assert!(!congruent(Monoid::Plactic, 2, &w("2121"), &w("1212")).unwrap());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(congruent(Monoid::Plactic, 2, &w("13"), &w("31")).is_err());
    }

    #[test]
    fn small_classes() {
        let c = classes(Monoid::Plactic, 2, 2).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|x| x.len() == 1));
        assert_eq!(classes(Monoid::Hypoplactic, 3, 0).unwrap(), vec![vec![Word::empty()]]);
    }

    #[test]
    fn resource_cap() {
        let rel = RelationSet::new(Monoid::Plactic, 2).unwrap();
        assert!(matches!(rel.class_of(&w("2121"), 1), Err(Error::Resource { cap: 1 })));
    }

    #[test]
    fn plactic_refines_hypoplactic() {
        let p = RelationSet::new(Monoid::Plactic, 3).unwrap();
        let h = RelationSet::new(Monoid::Hypoplactic, 3).unwrap();
        for len in 0..=5 {
            let hid = h.class_ids(len).unwrap();
            for class in p.classes(len).unwrap() {
                let first = hid[&class[0]];
                assert!(class.iter().all(|u| hid[u] == first));
            }
        }
    }
}
