use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::langops::LabelledTree;
use crate::numeration::DigitWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipOutcome {
    /// `u·v^i` is in the language and `u·v^(i+1)` is not.
    MaxIteration(u32),
    /// `u·v^bound` is still in the language.
    BoundExceeded(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipReport {
    pub u: DigitWord,
    pub v: DigitWord,
    pub outcome: FlipOutcome,
}

/// How many times `v` can be appended to `u` while staying in the branch
/// language, looking no further than `bound` iterations.
///
/// Branch languages are prefix-closed, so being a prefix of a member is the
/// same as being a member. This gives bounded evidence only: no finite bound
/// shows that the iteration stops for every `u, v`.
pub fn flip_check(t: &LabelledTree, u: &DigitWord, v: &DigitWord, bound: u32) -> Result<FlipReport> {
    if v.is_empty() {
        return Err(Error::EmptyIteration);
    }
    let mut node = t
        .navigate(u)
        .ok_or_else(|| Error::NotAMember(u.to_string()))?;
    let mut outcome = FlipOutcome::BoundExceeded(bound);
    for i in 0..bound {
        match v.digits().iter().try_fold(node.clone(), |n, &a| t.step_big(&n, a)) {
            Some(next) => node = next,
            None => {
                outcome = FlipOutcome::MaxIteration(i);
                break;
            }
        }
    }
    Ok(FlipReport {
        u: u.clone(),
        v: v.clone(),
        outcome,
    })
}

/// `count` pairs `(u, v)` with `|u| <= max_u`, `1 <= |v| <= max_v` and
/// `u·v` in the language, drawn by random walks from the root.
pub fn sample_flip_pairs(
    t: &LabelledTree,
    count: usize,
    max_u: usize,
    max_v: usize,
    seed: u64,
) -> Vec<(DigitWord, DigitWord)> {
    assert!(max_v >= 1, "v must be allowed at least one digit");
    let mut rng = StdRng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(count);
    while pairs.len() < count {
        let u_len = rng.gen_range(0..=max_u);
        let v_len = rng.gen_range(1..=max_v);
        let mut node = 0u64;
        let mut digits = Vec::with_capacity(u_len + v_len);
        for _ in 0..u_len + v_len {
            let children = t.tree().children(node);
            if children.is_empty() {
                break;
            }
            node = rng.gen_range(children);
            digits.push(t.label(node));
        }
        // a walk that hit a leaf is redrawn
        if digits.len() == u_len + v_len {
            let v = DigitWord::new(digits.split_off(u_len));
            pairs.push((DigitWord::new(digits), v));
        }
    }
    pairs
}
