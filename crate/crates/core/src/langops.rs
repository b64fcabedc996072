//! Branch languages of labelled rhythmic trees.
//!
//! The branch language of a labelled tree is the set of words labelling the
//! paths from the root. It is prefix-closed, and a valid labelling makes the
//! breadth-first order of the nodes the radix order of their words.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::labelling::{check_labelling, Labelling};
use crate::numeration::{evaluate, DigitWord, ExactRational, RationalBase};
use crate::rhythm::{christoffel_rhythm, Rhythm};
use crate::treegen::{RhythmicTree, TreeMode};

/// How a digit is resolved to a child during navigation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum StepRule {
    /// Special labelling: the child is `(p'n + a) / q'`.
    Arithmetic { p: i128, q: i128 },
    /// Naive labelling: the child is congruent to `a` modulo `p`.
    Residue,
    /// Anything else: binary search in the increasing sibling block.
    Search,
}

#[derive(Debug, Clone)]
pub struct LabelledTree {
    tree: RhythmicTree,
    labelling: Labelling,
    rule: StepRule,
}

impl LabelledTree {
    pub fn new(tree: RhythmicTree, labelling: Labelling) -> Result<Self> {
        let rhythm = tree.rhythm();
        check_labelling(rhythm, &labelling)?;
        let rule = if labelling.gamma() == Labelling::special(rhythm).gamma() {
            let base = rhythm.growth();
            StepRule::Arithmetic {
                p: base.p_reduced().into(),
                q: base.q_reduced().into(),
            }
        } else if labelling.gamma() == Labelling::naive(rhythm.p()).gamma() {
            StepRule::Residue
        } else {
            StepRule::Search
        };
        Ok(LabelledTree {
            tree,
            labelling,
            rule,
        })
    }

    /// The tree of `r` with the naive labelling; its language is `K_r`.
    pub fn naive(r: Rhythm, mode: TreeMode) -> Result<Self> {
        let labelling = Labelling::naive(r.p());
        Self::new(RhythmicTree::new(r, mode)?, labelling)
    }

    /// The tree of `r` with its special labelling; its language is `L_r`.
    pub fn special(r: Rhythm, mode: TreeMode) -> Result<Self> {
        let labelling = Labelling::special(&r);
        Self::new(RhythmicTree::new(r, mode)?, labelling)
    }

    /// The Christoffel rhythm of `p/q` with the group labelling, which
    /// generates the representations in base `p/q`.
    pub fn rational_base(p: u64, q: u64, mode: TreeMode) -> Result<Self> {
        let r = christoffel_rhythm(p, q)?;
        let labelling = Labelling::group(p, q)?;
        Self::new(RhythmicTree::new(r, mode)?, labelling)
    }

    pub fn tree(&self) -> &RhythmicTree {
        &self.tree
    }

    pub fn labelling(&self) -> &Labelling {
        &self.labelling
    }

    pub fn rhythm(&self) -> &Rhythm {
        self.tree.rhythm()
    }

    /// The growth ratio `p/q` of the rhythm; evaluation uses `p'/q'`.
    pub fn base(&self) -> RationalBase {
        self.rhythm().growth()
    }

    /// Digit on the arc entering `m`.
    pub fn label(&self, m: u64) -> i64 {
        self.labelling.label(m)
    }

    /// Position of the child reached by `a` among the children of any
    /// node `n ≡ j (mod q)`, the root loop included.
    ///
    /// The arc entering child `C(n) + i` carries `γ_{S_j + i}`, so the
    /// answer depends on `j` only.
    fn child_offset(&self, j: u64, a: i64) -> Option<u64> {
        let sums = self.tree.partial_sums();
        let (lo, hi) = (sums[j as usize], sums[j as usize + 1]);
        let offset = match self.rule {
            StepRule::Arithmetic { p, q } => {
                // q'(C(n) + i) - p'n = a reduces to q'i = a + p'j - q'S_j
                let scaled = i128::from(a) + p * i128::from(j) - q * i128::from(lo);
                if scaled < 0 || scaled % q != 0 {
                    return None;
                }
                u64::try_from(scaled / q).ok()?
            }
            StepRule::Residue => u64::try_from(a).ok()?.checked_sub(lo)?,
            StepRule::Search => {
                let gamma = self.labelling.gamma();
                gamma[lo as usize..hi as usize].partition_point(|&g| g < a) as u64
            }
        };
        (offset < hi - lo && self.labelling.gamma()[(lo + offset) as usize] == a).then_some(offset)
    }

    fn is_root_loop(&self, n_is_zero: bool, offset: u64) -> bool {
        n_is_zero && offset == 0 && self.tree.mode() == TreeMode::Tree
    }

    /// The child of `n` reached by digit `a`, if any.
    ///
    /// Panics if the child's index does not fit in `u64`; see
    /// [`LabelledTree::step_big`].
    pub fn step(&self, n: u64, a: i64) -> Option<u64> {
        let offset = self.child_offset(n % self.rhythm().q(), a)?;
        if self.is_root_loop(n == 0, offset) {
            return None;
        }
        let child = self
            .tree
            .children_start(n)
            .checked_add(offset)
            .expect("node index overflows u64");
        Some(child)
    }

    /// [`LabelledTree::step`] on arbitrary-precision nodes.
    pub fn step_big(&self, n: &BigUint, a: i64) -> Option<BigUint> {
        let class = (n % self.rhythm().q()).to_u64().expect("residue is below q");
        let offset = self.child_offset(class, a)?;
        if self.is_root_loop(n.is_zero(), offset) {
            return None;
        }
        Some(self.tree.children_start_big(n) + offset)
    }

    /// The node reached by reading `w` from the root. Node indices grow
    /// exponentially with the length of `w`, hence the big integer.
    pub fn navigate(&self, w: &DigitWord) -> Option<BigUint> {
        w.digits()
            .iter()
            .try_fold(BigUint::zero(), |node, &a| self.step_big(&node, a))
    }

    /// Membership in the branch language.
    pub fn contains(&self, w: &DigitWord) -> bool {
        self.navigate(w).is_some()
    }

    /// The word labelling the path from the root to `n`.
    pub fn repr_word(&self, n: u64) -> DigitWord {
        let mut digits = Vec::new();
        let mut node = n;
        while node != 0 {
            digits.push(self.label(node));
            node = self.tree.parent(node).expect("non-root nodes have a father");
        }
        digits.reverse();
        DigitWord::new(digits)
    }

    /// Digits on the arcs leaving `n`, in sibling order.
    pub fn branching_digits(&self, n: u64) -> Vec<i64> {
        self.tree.children(n).map(|m| self.label(m)).collect()
    }

    /// Labelled arcs `(n, a, m)` in breadth-first order, without end.
    pub fn arcs(&self) -> impl Iterator<Item = (u64, i64, u64)> + '_ {
        self.tree.bfs_arcs().map(|(n, m)| (n, self.label(m), m))
    }

    /// Every node with its word and value, in breadth-first order, without
    /// end.
    pub fn branches(&self) -> Branches<'_> {
        Branches {
            tree: self,
            next: 0,
            pending: VecDeque::new(),
            reduced: self.base().reduced(),
        }
    }

    /// The first `count` nodes with their words and values.
    pub fn enumerate(&self, count: usize) -> Vec<BranchEntry> {
        self.branches().take(count).collect()
    }
}

/// A node of a labelled tree together with its branch word and its value in
/// base `p'/q'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchEntry {
    pub node: u64,
    pub word: DigitWord,
    pub value: ExactRational,
}

/// Breadth-first stream of [`BranchEntry`].
///
/// Keeps the words of nodes whose children have not all been produced yet.
#[derive(Debug, Clone)]
pub struct Branches<'a> {
    tree: &'a LabelledTree,
    next: u64,
    pending: VecDeque<(u64, DigitWord)>,
    reduced: RationalBase,
}

impl Iterator for Branches<'_> {
    type Item = BranchEntry;

    fn next(&mut self) -> Option<BranchEntry> {
        let node = self.next;
        self.next += 1;
        let word = if node == 0 {
            DigitWord::empty()
        } else {
            let father = self.tree.tree.parent(node).expect("non-root nodes have a father");
            while self.pending.front().is_some_and(|(n, _)| *n < father) {
                self.pending.pop_front();
            }
            let (_, prefix) = self
                .pending
                .front()
                .expect("father is produced before its children");
            let mut word = prefix.clone();
            word.push(self.tree.label(node));
            word
        };
        self.pending.push_back((node, word.clone()));
        let value = evaluate(&self.reduced, &word);
        Some(BranchEntry { node, word, value })
    }
}
