//! Permutations of `{1..n}`, strand tracing, and the index action on words.
//!
//! Composition convention: [`compose`]`(f, g)` is `f ∘ g` (apply `g`
//! first). [`trace`] reads letters left to right, so `trace(w)(x)` is the
//! final position of strand `x`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::{Pair, StrandCount, Word};

/// A bijection of `{1..n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: StrandCount) -> Permutation {
        Permutation { images: (0..n.get() as u8).collect() }
    }

    pub fn transposition(n: StrandCount, pair: Pair) -> Permutation {
        let mut p = Permutation::identity(n);
        p.swap_positions(pair);
        p
    }

    /// Builds a permutation from 1-based images `[p(1), ..., p(n)]`.
    pub fn from_one_line(images: &[usize]) -> Result<Permutation> {
        let n = images.len();
        StrandCount::new(n)?;
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 1..={n}")));
            }
        }
        Ok(Permutation { images: images.iter().map(|&x| (x - 1) as u8).collect() })
    }

    /// Builds a permutation from disjoint cycles over 1-based points.
    pub fn from_cycles(n: StrandCount, cycles: &[Vec<usize>]) -> Result<Permutation> {
        let mut images: Vec<usize> = (1..=n.get()).collect();
        let mut used = vec![false; n.get()];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n.get() || std::mem::replace(&mut used[x - 1], true) {
                    return Err(Error::InvalidPermutation(format!("bad or repeated point {x} in cycles")));
                }
                images[x - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_one_line(&images)
    }

    /// Parses `[2,1,3]` (one-line) or `(1 2)(3)` (cycles; needs `n`).
    pub fn parse(text: &str, n: StrandCount) -> Result<Permutation> {
        let text = text.trim();
        let bad = || Error::InvalidPermutation(format!("cannot parse `{text}`"));
        if let Some(inner) = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let images = inner
                .split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            let p = Permutation::from_one_line(&images)?;
            if p.degree() != n.get() {
                return Err(Error::SizeMismatch { left: p.degree(), right: n.get() });
            }
            return Ok(p);
        }
        if text.is_empty() || text == "()" {
            return Ok(Permutation::identity(n));
        }
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = inner.find(')').ok_or_else(bad)?;
            let cycle = inner[..close]
                .split_whitespace()
                .map(|s| s.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
            rest = inner[close + 1..].trim_start();
        }
        Permutation::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn strand_count(&self) -> StrandCount {
        StrandCount::new(self.degree()).expect("permutations are built over a valid strand count")
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Exchanges the entries at positions `lo` and `hi` of the one-line
    /// array, i.e. replaces `self` by `self ∘ (lo hi)`.
    pub fn swap_positions(&mut self, pair: Pair) {
        self.images.swap(pair.lo() - 1, pair.hi() - 1);
    }

    /// Applies the permutation to both indices of a pair.
    pub fn map_pair(&self, pair: Pair) -> Pair {
        Pair::new(self.apply(pair.lo()), self.apply(pair.hi()))
    }

    /// Disjoint cycles of length at least 2, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation, `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, x) in self.one_line().iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// One-line notation only; cycle input needs [`Permutation::parse`].
    fn from_str(s: &str) -> Result<Permutation> {
        let s = s.trim();
        let count = s.trim_start_matches('[').trim_end_matches(']').split(',').count();
        Permutation::parse(s, StrandCount::new(count)?)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.one_line())
    }
}

/// `f ∘ g`: apply `g` first, then `f`.
pub fn compose(f: &Permutation, g: &Permutation) -> Result<Permutation> {
    if f.degree() != g.degree() {
        return Err(Error::SizeMismatch { left: f.degree(), right: g.degree() });
    }
    Ok(Permutation { images: g.images.iter().map(|&x| f.images[x as usize]).collect() })
}

pub fn inverse(p: &Permutation) -> Permutation {
    let mut images = vec![0u8; p.degree()];
    for (i, &x) in p.images.iter().enumerate() {
        images[x as usize] = i as u8;
    }
    Permutation { images }
}

/// Strand trace of a word of either family: the images of `x` under the
/// letters' transpositions applied left to right. Realizes both `l` and `m`.
pub fn trace(w: &Word) -> Permutation {
    // Track which strand sits at each position; the answer is the inverse
    // of that arrangement.
    let mut at_position = Permutation::identity(w.n());
    for &pair in w.letters() {
        at_position.swap_positions(pair);
    }
    inverse(&at_position)
}

/// Relabels every index of `w` through `p`.
pub fn act_on_word(p: &Permutation, w: &Word) -> Result<Word> {
    if p.degree() != w.n().get() {
        return Err(Error::SizeMismatch { left: p.degree(), right: w.n().get() });
    }
    let letters = w.letters().iter().map(|&pair| p.map_pair(pair)).collect();
    Ok(Word::from_trusted(w.family(), w.n(), letters))
}
