//! The infinite tree generated by a valid rhythm.
//!
//! Nodes are the natural numbers in breadth-first order. Node `n` has
//! `r_{n mod q}` children, created consecutively, so the least child of `n`
//! has the closed form
//!
//! ```text
//! C(n) = (n div q)·p + (r_0 + ... + r_{n mod q - 1})
//! ```
//!
//! In i-tree mode the root is its own first child (`0 → 0`); in tree mode
//! that loop is dropped and the root has `r_0 - 1` children.

use std::ops::Range;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::Result;
use crate::rhythm::Rhythm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TreeMode {
    /// Ordinary tree: the root has no incoming arc.
    #[default]
    Tree,
    /// The root carries a loop onto itself.
    ITree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhythmicTree {
    rhythm: Rhythm,
    mode: TreeMode,
    partial_sums: Vec<u64>,
}

impl RhythmicTree {
    /// Fails when the rhythm is not valid: the generated tree would be finite.
    pub fn new(rhythm: Rhythm, mode: TreeMode) -> Result<Self> {
        rhythm.check_validity()?;
        let partial_sums = rhythm.partial_sums();
        Ok(RhythmicTree {
            rhythm,
            mode,
            partial_sums,
        })
    }

    pub fn rhythm(&self) -> &Rhythm {
        &self.rhythm
    }

    pub fn mode(&self) -> TreeMode {
        self.mode
    }

    pub fn with_mode(&self, mode: TreeMode) -> RhythmicTree {
        RhythmicTree {
            mode,
            ..self.clone()
        }
    }

    /// Least child of `n` in the i-tree.
    pub fn children_start(&self, n: u64) -> u64 {
        let q = self.rhythm.q();
        (n / q) * self.rhythm.p() + self.partial_sums[(n % q) as usize]
    }

    /// [`RhythmicTree::children_start`] for nodes beyond `u64`.
    pub fn children_start_big(&self, n: &BigUint) -> BigUint {
        let q = self.rhythm.q();
        let class = (n % q).to_usize().expect("residue is below q");
        (n / q) * self.rhythm.p() + self.partial_sums[class]
    }

    /// Partial sums `r_0 + ... + r_{k-1}`, `k = 0..=q`.
    pub fn partial_sums(&self) -> &[u64] {
        &self.partial_sums
    }

    /// The children of `n`, a consecutive interval.
    pub fn children(&self, n: u64) -> Range<u64> {
        let start = self.children_start(n);
        let end = start + self.rhythm.component(n);
        if n == 0 && self.mode == TreeMode::Tree {
            1..end
        } else {
            start..end
        }
    }

    pub fn degree(&self, n: u64) -> u64 {
        let range = self.children(n);
        range.end - range.start
    }

    /// The father of `m`; `None` for the root of a tree. In an i-tree the
    /// root is its own father.
    pub fn parent(&self, m: u64) -> Option<u64> {
        if m == 0 {
            return match self.mode {
                TreeMode::Tree => None,
                TreeMode::ITree => Some(0),
            };
        }
        let (p, q) = (self.rhythm.p(), self.rhythm.q());
        let offset = m % p;
        // Largest j with S_j <= offset. S_q = p > offset, so j < q and the
        // child interval of j is non-empty.
        let j = self.partial_sums.partition_point(|&s| s <= offset) as u64 - 1;
        Some((m / p) * q + j)
    }

    /// Every arc in creation order, without end.
    pub fn bfs_arcs(&self) -> BfsArcs<'_> {
        let first_child = match self.mode {
            TreeMode::Tree => 1,
            TreeMode::ITree => 0,
        };
        BfsArcs {
            tree: self,
            parent: 0,
            child: first_child,
        }
    }
}

/// Unbounded iterator over `(parent, child)` arcs, in breadth-first order.
#[derive(Debug, Clone)]
pub struct BfsArcs<'a> {
    tree: &'a RhythmicTree,
    parent: u64,
    child: u64,
}

impl Iterator for BfsArcs<'_> {
    type Item = (u64, u64);

    fn next(&mut self) -> Option<(u64, u64)> {
        while self.tree.children(self.parent).end <= self.child {
            self.parent += 1;
        }
        let arc = (self.parent, self.child);
        self.child += 1;
        Some(arc)
    }
}
