use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeration::DigitWord;
use crate::rhythm::Rhythm;
use crate::treegen::{RhythmicTree, TreeMode};

/// A deterministic automaton over integer digits in which every state is
/// accepting. Missing transitions reject.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    names: Vec<String>,
    initial: usize,
    transitions: BTreeMap<(usize, i64), usize>,
}

/// JSON shape of a [`Dfa`]: `{states, initial, transitions: [[from, digit, to]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaExport {
    pub states: Vec<String>,
    pub initial: String,
    pub transitions: Vec<(String, i64, String)>,
}

impl Dfa {
    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn state_name(&self, state: usize) -> &str {
        &self.names[state]
    }

    pub fn state_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `(from, digit, to)` in state then digit order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, i64, usize)> + '_ {
        self.transitions.iter().map(|(&(from, a), &to)| (from, a, to))
    }

    /// Outgoing transitions of `state` as `(digit, target)`.
    pub fn outgoing(&self, state: usize) -> Vec<(i64, usize)> {
        self.transitions
            .range((state, i64::MIN)..=(state, i64::MAX))
            .map(|(&(_, a), &to)| (a, to))
            .collect()
    }

    pub fn step(&self, state: usize, digit: i64) -> Option<usize> {
        self.transitions.get(&(state, digit)).copied()
    }

    pub fn run(&self, w: &DigitWord) -> Option<usize> {
        w.digits()
            .iter()
            .try_fold(self.initial, |state, &a| self.step(state, a))
    }

    /// Every state accepts, so a word is accepted iff the run completes.
    pub fn accepts(&self, w: &DigitWord) -> bool {
        self.run(w).is_some()
    }

    /// A word `u` reaching some state and a non-empty word `v` looping on
    /// it, so that every `u·v^i` is accepted.
    pub fn find_cycle(&self) -> Option<(DigitWord, DigitWord)> {
        let access = self.shortest_paths_from(self.initial);
        let mut reachable: Vec<usize> = (0..self.state_count())
            .filter(|s| access[*s].is_some())
            .collect();
        reachable.sort_by_key(|s| access[*s].as_ref().map(DigitWord::len));
        for state in reachable {
            let mut best: Option<DigitWord> = None;
            for (a, next) in self.outgoing(state) {
                if let Some(back) = &self.shortest_paths_from(next)[state] {
                    let mut v = DigitWord::new(vec![a]);
                    v.extend_from(back);
                    if best.as_ref().is_none_or(|b| v.len() < b.len()) {
                        best = Some(v);
                    }
                }
            }
            if let Some(v) = best {
                return Some((access[state].clone().expect("reachable"), v));
            }
        }
        None
    }

    fn shortest_paths_from(&self, start: usize) -> Vec<Option<DigitWord>> {
        let mut paths = vec![None; self.state_count()];
        paths[start] = Some(DigitWord::empty());
        let mut queue = VecDeque::from([start]);
        while let Some(state) = queue.pop_front() {
            for (a, next) in self.outgoing(state) {
                if paths[next].is_none() {
                    let mut w = paths[state].clone().expect("visited");
                    w.push(a);
                    paths[next] = Some(w);
                    queue.push_back(next);
                }
            }
        }
        paths
    }

    pub fn export(&self) -> DfaExport {
        DfaExport {
            states: self.names.clone(),
            initial: self.names[self.initial].clone(),
            transitions: self
                .transitions()
                .map(|(from, a, to)| (self.names[from].clone(), a, self.names[to].clone()))
                .collect(),
        }
    }

    /// Graphviz rendering; all states are drawn as accepting.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n    rankdir=LR;\n    node [shape=doublecircle];\n");
        out.push_str("    start [shape=point];\n");
        for name in &self.names {
            let _ = writeln!(out, "    \"{name}\";");
        }
        let _ = writeln!(out, "    start -> \"{}\";", self.names[self.initial]);
        for (from, a, to) in self.transitions() {
            let _ = writeln!(
                out,
                "    \"{}\" -> \"{}\" [label=\"{a}\"];",
                self.names[from], self.names[to]
            );
        }
        out.push_str("}\n");
        out
    }
}

/// The automaton of `K_r` (naive labelling) when `q` divides `p`.
///
/// Positive nodes congruent modulo `q` have the same future, so there is one
/// state `c{j}` per residue class; in tree mode an extra initial state
/// `init` stands for the root without its loop. In i-tree mode the root is
/// equivalent to `c0`, which becomes initial.
pub fn build_dfa(r: &Rhythm, mode: TreeMode) -> Result<Dfa> {
    let (p, q) = (r.p(), r.q());
    if p % q != 0 {
        return Err(Error::NonIntegralGrowth { p, q });
    }
    let tree = RhythmicTree::new(r.clone(), mode)?;
    let offset = usize::from(mode == TreeMode::Tree);
    let mut names: Vec<String> = Vec::with_capacity(q as usize + offset);
    if mode == TreeMode::Tree {
        names.push("init".to_string());
    }
    names.extend((0..q).map(|c| format!("c{c}")));
    let class_state = |m: u64| (m % q) as usize + offset;

    let mut transitions = BTreeMap::new();
    let mut add = |from: usize, n: u64| {
        for m in tree.children(n) {
            let previous = transitions.insert((from, (m % p) as i64), class_state(m));
            assert!(previous.is_none(), "children of one node have distinct residues mod p");
        }
    };
    // n = c + q is a positive representative of residue class c.
    for c in 0..q {
        add(class_state(c), c + q);
    }
    if mode == TreeMode::Tree {
        add(0, 0);
    }
    Ok(Dfa {
        names,
        initial: 0,
        transitions,
    })
}
