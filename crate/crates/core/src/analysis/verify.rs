//! Drivers that check the library against independent computations over a
//! bounded range. Each returns a [`CheckReport`] rather than panicking, so
//! the same code backs the `selftest` command and the acceptance suite.

use std::fmt;

use crate::analysis::{build_dfa, convert, Dfa};
use crate::error::Result;
use crate::langops::LabelledTree;
use crate::numeration::{evaluate, represent, DigitWord, RationalBase};
use crate::rhythm::Rhythm;
use crate::treegen::{RhythmicTree, TreeMode};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl CheckReport {
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }

    /// Adds the counts of `other` into `self`.
    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} checked, {} failed", self.checked, self.failures)?;
        if let Some(first) = &self.first_failure {
            write!(f, " (first: {first})")?;
        }
        Ok(())
    }
}

/// The Christoffel rhythm of `p/q` labelled by multiples of `q` produces, at
/// node `n`, the representation of `n` computed by Euclidean division, for
/// every `n < count`.
pub fn verify_christoffel_generation(p: u64, q: u64, count: u64) -> Result<CheckReport> {
    let base = RationalBase::coprime(p, q)?;
    let tree = LabelledTree::rational_base(p, q, TreeMode::Tree)?;
    let mut report = CheckReport::default();
    for n in 0..count {
        let from_tree = tree.repr_word(n);
        let from_division = represent(&base, n);
        report.record(from_tree == from_division, || {
            format!("node {n}: tree gives {from_tree}, division gives {from_division}")
        });
    }
    Ok(report)
}

/// Branch words of the special labelling evaluate to their node in base
/// `p'/q'`, for every node `n < count`.
pub fn verify_value_preservation(r: &Rhythm, count: u64) -> Result<CheckReport> {
    let tree = LabelledTree::special(r.clone(), TreeMode::Tree)?;
    let base = r.growth();
    let mut report = CheckReport::default();
    for n in 0..count {
        let w = tree.repr_word(n);
        let value = evaluate(&base, &w);
        report.record(value.to_u64() == Some(n), || {
            format!("node {n}: word {w} evaluates to {value}")
        });
    }
    Ok(report)
}

/// Every arc `n --a--> m` of the special labelling with `m < limit`
/// satisfies `a = q'm − p'n`.
pub fn verify_arc_identity(r: &Rhythm, limit: u64) -> Result<CheckReport> {
    let tree = LabelledTree::special(r.clone(), TreeMode::ITree)?;
    let base = r.growth();
    let (p, q) = (i128::from(base.p_reduced()), i128::from(base.q_reduced()));
    let mut report = CheckReport::default();
    for (n, a, m) in tree.arcs().take_while(|&(_, _, m)| m < limit) {
        let expected = q * i128::from(m) - p * i128::from(n);
        report.record(i128::from(a) == expected, || {
            format!("arc {n} -> {m} carries {a}, expected {expected}")
        });
    }
    Ok(report)
}

/// Shifting an arc by `(q, p)` gives an arc, in both directions, and
/// `C(n + q) = C(n) + p`, for every `n < count`.
pub fn verify_shift_invariance(r: &Rhythm, count: u64) -> Result<CheckReport> {
    let tree = RhythmicTree::new(r.clone(), TreeMode::ITree)?;
    let (p, q) = (r.p(), r.q());
    let mut report = CheckReport::default();
    for n in 0..count {
        let here = tree.children(n);
        let there = tree.children(n + q);
        report.record(there.start == here.start + p && there.end == here.end + p, || {
            format!("children of {n} are {here:?} but children of {} are {there:?}", n + q)
        });
        for m in here {
            let shifted_parent = tree.parent(m + p);
            report.record(shifted_parent == Some(n + q), || {
                format!("arc {n} -> {m} shifts to father {shifted_parent:?} of {}", m + p)
            });
        }
    }
    Ok(report)
}

/// The automaton of `K_r` and the tree itself agree on every word over
/// `0..p` of length at most `max_len`.
pub fn verify_dfa_equivalence(r: &Rhythm, mode: TreeMode, max_len: usize) -> Result<CheckReport> {
    let dfa = build_dfa(r, mode)?;
    let tree = LabelledTree::naive(r.clone(), mode)?;
    let mut report = CheckReport::default();
    let mut word = Vec::with_capacity(max_len);
    explore(&dfa, &tree, r.p() as i64, max_len, Some(dfa.initial()), Some(0), &mut word, &mut report);
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn explore(
    dfa: &Dfa,
    tree: &LabelledTree,
    p: i64,
    max_len: usize,
    state: Option<usize>,
    node: Option<u64>,
    word: &mut Vec<i64>,
    report: &mut CheckReport,
) {
    report.record(state.is_some() == node.is_some(), || {
        format!(
            "word {}: automaton {}, tree {}",
            DigitWord::from(word.as_slice()),
            if state.is_some() { "accepts" } else { "rejects" },
            if node.is_some() { "contains it" } else { "does not" },
        )
    });
    if word.len() == max_len {
        return;
    }
    for a in 0..p {
        let next_state = state.and_then(|s| dfa.step(s, a));
        let next_node = node.and_then(|n| tree.step(n, a));
        word.push(a);
        explore(dfa, tree, p, max_len, next_state, next_node, word, report);
        word.pop();
    }
}

/// Converting the branch word of node `n` in the special labelling gives
/// the canonical representation of `n` in base `p'/q'`, with the same value
/// and no leading zero, for every `n < count`.
pub fn verify_conversion(r: &Rhythm, count: u64) -> Result<CheckReport> {
    let tree = LabelledTree::special(r.clone(), TreeMode::Tree)?;
    let base = r.growth();
    let mut report = CheckReport::default();
    for n in 0..count {
        let w = tree.repr_word(n);
        let converted = convert(r, &w)?;
        let expected = represent(&base, n);
        let ok = converted == expected
            && evaluate(&base, &converted) == evaluate(&base, &w)
            && converted.digits().first() != Some(&0);
        report.record(ok, || format!("node {n}: {w} converts to {converted}, expected {expected}"));
    }
    Ok(report)
}

/// The first `count` branch words in breadth-first order are strictly
/// increasing in radix order.
pub fn verify_radix_order(tree: &LabelledTree, count: usize) -> CheckReport {
    let mut report = CheckReport::default();
    let mut previous: Option<DigitWord> = None;
    for entry in tree.branches().take(count) {
        if let Some(prev) = &previous {
            report.record(prev.radix_cmp(&entry.word).is_lt(), || {
                format!("node {}: {} does not follow {prev}", entry.node, entry.word)
            });
        }
        previous = Some(entry.word);
    }
    report
}
