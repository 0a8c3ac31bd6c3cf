//! Elementary moves of both presentations.
//!
//! `C` words: square cancellation `ss → 1`, commutation of adjacent
//! disjoint pairs, and the braid exchange `sts ↔ tst` for pairs sharing an
//! index. `G` words: square cancellation, commutation, and triangle reversal,
//! which replaces three consecutive letters forming the three edges of a
//! triangle `{i,j},{i,k},{j,k}` (in any order) by the same letters reversed.
//! Only cancellation (and its inverse, insertion) changes the length.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::words::{Family, Pair, StrandCount, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Cancel,
    Insert,
    Commute,
    /// `sts → tst` on `C` words.
    Braid,
    /// `xyz → zyx` on `G` words.
    Triangle,
}

/// One applicable move. Positions are 1-based; `Insert` places the square
/// `pair pair` so that its first letter lands at `pos`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Cancel { pos: usize },
    Insert { pos: usize, pair: Pair },
    Commute { pos: usize },
    Braid { pos: usize },
    Triangle { pos: usize },
}

impl Move {
    pub fn kind(self) -> MoveKind {
        match self {
            Move::Cancel { .. } => MoveKind::Cancel,
            Move::Insert { .. } => MoveKind::Insert,
            Move::Commute { .. } => MoveKind::Commute,
            Move::Braid { .. } => MoveKind::Braid,
            Move::Triangle { .. } => MoveKind::Triangle,
        }
    }

    pub fn pos(self) -> usize {
        match self {
            Move::Cancel { pos }
            | Move::Insert { pos, .. }
            | Move::Commute { pos }
            | Move::Braid { pos }
            | Move::Triangle { pos } => pos,
        }
    }
}

/// The relator move system of one family over a fixed strand count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MoveSystem {
    pub family: Family,
    pub n: StrandCount,
}

/// True iff the three pairs are distinct and cover exactly three indices.
pub fn is_triangle(x: Pair, y: Pair, z: Pair) -> bool {
    x.shares_index(y) && y.shares_index(z) && x.shares_index(z) && {
        let mut idx = [x.lo(), x.hi(), y.lo(), y.hi(), z.lo(), z.hi()];
        idx.sort_unstable();
        idx[0] == idx[1] && idx[2] == idx[3] && idx[4] == idx[5] && idx[1] != idx[2] && idx[3] != idx[4]
    }
}

fn is_braid_triple(x: Pair, y: Pair, z: Pair) -> bool {
    x == z && x.shares_index(y)
}

impl MoveSystem {
    pub fn new(family: Family, n: StrandCount) -> MoveSystem {
        MoveSystem { family, n }
    }

    pub fn for_word(w: &Word) -> MoveSystem {
        MoveSystem { family: w.family(), n: w.n() }
    }

    /// Applicable moves on a letter sequence, ordered by position and then
    /// by kind. Insertions are never listed.
    pub fn moves(&self, letters: &[Pair], length_preserving_only: bool) -> Vec<Move> {
        let mut out = Vec::new();
        for i in 0..letters.len() {
            let pos = i + 1;
            if let Some(&y) = letters.get(i + 1) {
                let x = letters[i];
                if x == y && !length_preserving_only {
                    out.push(Move::Cancel { pos });
                }
                if x.is_disjoint(y) {
                    out.push(Move::Commute { pos });
                }
            }
            if let [x, y, z] = letters[i..letters.len().min(i + 3)] {
                match self.family {
                    Family::C if is_braid_triple(x, y, z) => out.push(Move::Braid { pos }),
                    Family::G if is_triangle(x, y, z) => out.push(Move::Triangle { pos }),
                    _ => {}
                }
            }
        }
        out
    }

    /// Applies a move to a bare letter sequence.
    pub fn apply(&self, letters: &[Pair], mv: Move) -> Result<Vec<Pair>> {
        let pos = mv.pos();
        let bad = |why: &str| Err(Error::NotApplicable(format!("{mv:?}: {why}")));
        let i = match pos.checked_sub(1) {
            Some(i) => i,
            None => return bad("positions are 1-based"),
        };
        let mut out = letters.to_vec();
        match mv {
            Move::Cancel { .. } => {
                if i + 1 >= letters.len() || letters[i] != letters[i + 1] {
                    return bad("letters are not an equal adjacent pair");
                }
                out.drain(i..=i + 1);
            }
            Move::Insert { pair, .. } => {
                if i > letters.len() || pair.hi() > self.n.get() {
                    return bad("insertion point or pair out of range");
                }
                out.splice(i..i, [pair, pair]);
            }
            Move::Commute { .. } => {
                if i + 1 >= letters.len() || !letters[i].is_disjoint(letters[i + 1]) {
                    return bad("letters are not disjoint");
                }
                out.swap(i, i + 1);
            }
            Move::Braid { .. } => {
                if self.family != Family::C || i + 2 >= letters.len() {
                    return bad("braid exchange needs three C letters");
                }
                let (x, y, z) = (letters[i], letters[i + 1], letters[i + 2]);
                if !is_braid_triple(x, y, z) {
                    return bad("not of the form sts with s, t sharing an index");
                }
                out[i..i + 3].copy_from_slice(&[y, x, y]);
            }
            Move::Triangle { .. } => {
                if self.family != Family::G || i + 2 >= letters.len() {
                    return bad("triangle reversal needs three G letters");
                }
                if !is_triangle(letters[i], letters[i + 1], letters[i + 2]) {
                    return bad("letters are not the three edges of a triangle");
                }
                out[i..i + 3].reverse();
            }
        }
        Ok(out)
    }

    pub fn apply_to_word(&self, w: &Word, mv: Move) -> Result<Word> {
        self.check(w)?;
        Ok(Word::from_trusted(w.family(), w.n(), self.apply(w.letters(), mv)?))
    }

    /// Calls `f` on every one-move neighbour, in [`MoveSystem::moves`] order.
    pub(crate) fn for_each_neighbor(
        &self,
        letters: &[Pair],
        length_preserving_only: bool,
        mut f: impl FnMut(Vec<Pair>),
    ) {
        for mv in self.moves(letters, length_preserving_only) {
            f(self.apply(letters, mv).expect("listed moves apply"));
        }
    }

    fn check(&self, w: &Word) -> Result<()> {
        if w.family() != self.family {
            return Err(Error::FamilyMismatch { left: self.family, right: w.family() });
        }
        if w.n() != self.n {
            return Err(Error::SizeMismatch { left: self.n.get(), right: w.n().get() });
        }
        Ok(())
    }
}

/// All words reachable from `w` by one move (no insertions).
pub fn neighbors(w: &Word, length_preserving_only: bool) -> BTreeSet<Word> {
    let system = MoveSystem::for_word(w);
    let mut out = BTreeSet::new();
    system.for_each_neighbor(w.letters(), length_preserving_only, |letters| {
        out.insert(Word::from_trusted(w.family(), w.n(), letters));
    });
    out
}
