//! Rhythms: the period of a periodic tree signature.
//!
//! A rhythm of directing parameter `(q, p)` is a `q`-tuple of non-negative
//! integers summing to `p > q`. Its lattice path `y^{r_0} x y^{r_1} x ...`
//! runs from `(0, 0)` to `(q, p)`; the rhythm is valid when that path stays
//! strictly above the diagonal.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numeration::RationalBase;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rhythm {
    components: Vec<u64>,
    p: u64,
}

impl Rhythm {
    /// Builds a rhythm; requires at least one component and a sum strictly
    /// greater than the number of components. Validity is checked
    /// separately.
    pub fn new(components: Vec<u64>) -> Result<Self> {
        let p: u64 = components.iter().sum();
        if components.is_empty() || p <= components.len() as u64 {
            return Err(Error::InvalidDirectingParameter(components));
        }
        Ok(Rhythm { components, p })
    }

    pub fn components(&self) -> &[u64] {
        &self.components
    }

    /// `r_{j mod q}`.
    pub fn component(&self, j: u64) -> u64 {
        self.components[(j % self.q()) as usize]
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.components.len() as u64
    }

    /// The growth ratio `p/q`, unreduced.
    pub fn growth(&self) -> RationalBase {
        RationalBase::new(self.p, self.q()).expect("p > q >= 1 holds by construction")
    }

    /// `Ok(())` when every partial sum `r_0 + ... + r_j` exceeds `j + 1`;
    /// otherwise the smallest violating `j`.
    pub fn check_validity(&self) -> Result<()> {
        let mut sum = 0;
        for (j, &r) in self.components.iter().enumerate() {
            sum += r;
            if sum <= j as u64 + 1 {
                return Err(Error::InvalidRhythm { index: j });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check_validity().is_ok()
    }

    /// The `q + 1` partial sums `Σ_{i<k} r_i`, `k = 0..=q`.
    pub fn partial_sums(&self) -> Vec<u64> {
        std::iter::once(0)
            .chain(self.components.iter().scan(0, |acc, &r| {
                *acc += r;
                Some(*acc)
            }))
            .collect()
    }

    pub fn path_word(&self) -> PathWord {
        let mut steps = Vec::with_capacity((self.p + self.q()) as usize);
        for &r in &self.components {
            steps.extend(std::iter::repeat_n(Step::Y, r as usize));
            steps.push(Step::X);
        }
        PathWord(steps)
    }

    /// `e_k = q·(Σ_{i<k} r_i) − k·p` for `k = 0..q`.
    pub fn e_sequence(&self) -> ESequence {
        let (p, q) = (self.p as i64, self.q() as i64);
        let sums = self.partial_sums();
        ESequence(
            (0..self.components.len())
                .map(|k| q * sums[k] as i64 - k as i64 * p)
                .collect(),
        )
    }
}

impl fmt::Display for Rhythm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|r| r.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Rhythm {
    type Err = Error;

    /// Comma-separated non-negative integers, e.g. `2,2,1`.
    fn from_str(s: &str) -> Result<Self> {
        let components = s
            .split(',')
            .map(|part| {
                part.trim().parse::<u64>().map_err(|_| Error::Parse {
                    what: "rhythm",
                    input: s.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Rhythm::new(components)
    }
}

/// The Christoffel rhythm of slope `p/q`: its partial sums are `⌈k·p/q⌉`.
pub fn christoffel_rhythm(p: u64, q: u64) -> Result<Rhythm> {
    RationalBase::coprime(p, q)?;
    let ceil = |k: u64| (k * p).div_ceil(q);
    Rhythm::new((0..q).map(|k| ceil(k + 1) - ceil(k)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    /// Unit horizontal segment.
    X,
    /// Unit vertical segment.
    Y,
}

/// A lattice path over `{x, y}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathWord(Vec<Step>);

impl PathWord {
    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Lattice points visited, starting at the origin.
    pub fn points(&self) -> Vec<(u64, u64)> {
        let mut at = (0, 0);
        let mut out = vec![at];
        for step in &self.0 {
            match step {
                Step::X => at.0 += 1,
                Step::Y => at.1 += 1,
            }
            out.push(at);
        }
        out
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.0 {
            f.write_str(match step {
                Step::X => "x",
                Step::Y => "y",
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ESequence(Vec<i64>);

impl ESequence {
    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, j: usize) -> i64 {
        self.0[j]
    }
}

impl fmt::Display for ESequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}
