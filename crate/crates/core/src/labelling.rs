//! Periodic arc labellings of rhythmic trees.
//!
//! A labelling is a `p`-tuple `γ`; the arc entering node `m` carries the
//! digit `γ_{m mod p}`. It is valid when every node's children carry
//! strictly increasing digits, which makes breadth-first order coincide with
//! radix order on the branch words. Because `C(n + q) = C(n) + p`, checking
//! the first `q` sibling blocks is enough.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::numeration::DigitWord;
use crate::rhythm::Rhythm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabellingKind {
    /// `(0, 1, ..., p-1)`.
    Naive,
    /// Built from the rhythm so that branch words evaluate to their node.
    Special,
    /// Multiples of `q` modulo `p`.
    Group,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labelling {
    gamma: Vec<i64>,
    kind: LabellingKind,
}

impl Labelling {
    pub fn naive(p: u64) -> Labelling {
        Labelling {
            gamma: (0..p as i64).collect(),
            kind: LabellingKind::Naive,
        }
    }

    /// The special labelling of `r`.
    ///
    /// Starting from `γ_0 = 0`, each step adds `q'`, and subtracts `p'` once
    /// for every `k` in `1..q` whose partial sum `r_0 + ... + r_{k-1}` equals
    /// the current index. Equivalently `γ_m = q'·m − p'·father(m)` on the
    /// first period, which is what makes branch words evaluate to their node
    /// in base `p'/q'` even when `r` has zero components.
    pub fn special(r: &Rhythm) -> Labelling {
        let base = r.growth();
        let (p_red, q_red) = (base.p_reduced() as i64, base.q_reduced() as i64);
        let sums = r.partial_sums();
        let breakpoints = &sums[1..r.q() as usize];
        let mut gamma = Vec::with_capacity(r.p() as usize);
        let mut current = 0i64;
        gamma.push(current);
        for i in 1..r.p() {
            let hits = breakpoints.iter().filter(|&&s| s == i).count() as i64;
            current += q_red - hits * p_red;
            gamma.push(current);
        }
        Labelling {
            gamma,
            kind: LabellingKind::Special,
        }
    }

    /// `(0, q mod p, 2q mod p, ..., (p-1)q mod p)`; requires coprime `p, q`.
    pub fn group(p: u64, q: u64) -> Result<Labelling> {
        if p < 2 || q == 0 || p.gcd(&q) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        Ok(Labelling {
            gamma: (0..p).map(|i| ((i * q) % p) as i64).collect(),
            kind: LabellingKind::Group,
        })
    }

    /// An arbitrary labelling, accepted only if it is valid for `r`.
    pub fn custom(r: &Rhythm, gamma: Vec<i64>) -> Result<Labelling> {
        let labelling = Labelling {
            gamma,
            kind: LabellingKind::Custom,
        };
        check_labelling(r, &labelling)?;
        Ok(labelling)
    }

    pub fn gamma(&self) -> &[i64] {
        &self.gamma
    }

    pub fn kind(&self) -> LabellingKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    /// Digit carried by the arc entering node `m`.
    pub fn label(&self, m: u64) -> i64 {
        self.gamma[(m % self.gamma.len() as u64) as usize]
    }

    /// True when the entries are pairwise distinct.
    pub fn is_injective(&self) -> bool {
        let mut sorted = self.gamma.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }
}

impl fmt::Display for Labelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gamma.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Parses comma-separated signed integers into a custom labelling. The
/// result still has to be checked against a rhythm with
/// [`is_valid_labelling`] or built through [`Labelling::custom`].
impl FromStr for Labelling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let gamma = s
            .split(',')
            .map(|part| {
                part.trim().parse::<i64>().map_err(|_| Error::Parse {
                    what: "labelling",
                    input: s.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Labelling {
            gamma,
            kind: LabellingKind::Custom,
        })
    }
}

fn check_length(r: &Rhythm, gamma: &[i64]) -> Result<()> {
    if gamma.len() as u64 != r.p() {
        return Err(Error::LabellingLength {
            expected: r.p() as usize,
            actual: gamma.len(),
        });
    }
    Ok(())
}

/// First node among `0..q` whose children are not labelled increasingly.
fn first_violation(r: &Rhythm, gamma: &[i64]) -> Option<u64> {
    let sums = r.partial_sums();
    sums.windows(2)
        .position(|block| {
            gamma[block[0] as usize..block[1] as usize]
                .windows(2)
                .any(|w| w[0] >= w[1])
        })
        .map(|node| node as u64)
}

/// Like [`is_valid_labelling`], but reports the first offending node.
pub fn check_labelling(r: &Rhythm, g: &Labelling) -> Result<()> {
    check_length(r, &g.gamma)?;
    match first_violation(r, &g.gamma) {
        Some(node) => Err(Error::InvalidLabelling { node }),
        None => Ok(()),
    }
}

/// Whether `g` labels the tree of `r` consistently with its sibling order.
pub fn is_valid_labelling(r: &Rhythm, g: &Labelling) -> Result<bool> {
    check_length(r, &g.gamma)?;
    Ok(first_violation(r, &g.gamma).is_none())
}

/// Letter-to-letter image of `w` under `a ↦ γ_a`. Digits of `w` must lie in
/// `0..p`.
pub fn relabel(w: &DigitWord, to: &Labelling) -> Result<DigitWord> {
    let p = to.len() as u64;
    w.digits()
        .iter()
        .map(|&a| {
            if (0..p as i64).contains(&a) {
                Ok(to.gamma[a as usize])
            } else {
                Err(Error::DigitOutOfRange { digit: a, p })
            }
        })
        .collect()
}
