//! Brute-force ground truth for short words.
//!
//! Two words are oracle-equal when one is reachable from the other by
//! relator moves (cancellation, square insertion, commutation, and the
//! family's braid or triangle move) without ever exceeding `max_len`
//! letters. This is sound for any `max_len` and complete once `max_len` is
//! large enough; callers raise it until answers stabilize.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::coxeter::element_key;
use crate::error::{Error, Result};
use crate::geomrep::ReflectionRep;
use crate::moves::{Move, MoveSystem};
use crate::words::{Family, Pair, StrandCount, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExplorationStatus {
    Complete,
    BudgetExceeded,
}

/// The bounded-length equivalence class of a seed word.
#[derive(Debug, Clone)]
pub struct ClassExploration {
    pub seed: Word,
    pub max_len: usize,
    pub status: ExplorationStatus,
    visited: HashSet<Vec<Pair>>,
}

impl ClassExploration {
    pub fn contains(&self, w: &Word) -> bool {
        w.family() == self.seed.family() && w.n() == self.seed.n() && self.visited.contains(w.letters())
    }

    pub fn len(&self) -> usize {
        self.visited.len()
    }

    pub fn is_empty(&self) -> bool {
        self.visited.is_empty()
    }

    /// Visited words, sorted.
    pub fn words(&self) -> Vec<Word> {
        let mut out: Vec<Word> = self
            .visited
            .iter()
            .map(|l| Word::from_trusted(self.seed.family(), self.seed.n(), l.clone()))
            .collect();
        out.sort();
        out
    }
}

fn for_each_oracle_neighbor(system: &MoveSystem, letters: &[Pair], max_len: usize, mut f: impl FnMut(Vec<Pair>)) {
    system.for_each_neighbor(letters, false, &mut f);
    if letters.len() + 2 <= max_len {
        for pos in 1..=letters.len() + 1 {
            for pair in system.n.pairs() {
                f(system.apply(letters, Move::Insert { pos, pair }).expect("insertion in range"));
            }
        }
    }
}

/// Breadth-first closure of `seed` under all moves within `max_len`,
/// stopping early once `stop` accepts a visited word.
fn explore_until(
    seed: &Word,
    max_len: usize,
    budget: usize,
    mut stop: impl FnMut(&[Pair]) -> bool,
) -> (HashSet<Vec<Pair>>, ExplorationStatus, bool) {
    let system = MoveSystem::for_word(seed);
    let mut visited = HashSet::new();
    let mut queue = VecDeque::new();
    visited.insert(seed.letters().to_vec());
    queue.push_back(seed.letters().to_vec());
    if stop(seed.letters()) {
        return (visited, ExplorationStatus::Complete, true);
    }
    while let Some(letters) = queue.pop_front() {
        let mut over = false;
        let mut hit = false;
        for_each_oracle_neighbor(&system, &letters, max_len, |next| {
            if over || hit || visited.contains(&next) {
                return;
            }
            hit = stop(&next);
            visited.insert(next.clone());
            queue.push_back(next);
            over = visited.len() > budget;
        });
        if hit {
            return (visited, ExplorationStatus::Complete, true);
        }
        if over {
            return (visited, ExplorationStatus::BudgetExceeded, false);
        }
    }
    (visited, ExplorationStatus::Complete, false)
}

/// Explores the class of `seed`. Running out of budget is reported in the
/// status, not as an error.
pub fn explore(seed: &Word, max_len: usize, budget: usize) -> ClassExploration {
    let max_len = max_len.max(seed.len());
    let (visited, status, _) = explore_until(seed, max_len, budget, |_| false);
    ClassExploration { seed: seed.clone(), max_len, status, visited }
}

/// Brute-force equality of two short words.
pub fn oracle_equal(u: &Word, v: &Word, max_len: usize, budget: usize) -> Result<bool> {
    u.check_compatible(v)?;
    let max_len = max_len.max(u.len()).max(v.len());
    let (_, status, found) = explore_until(u, max_len, budget, |l| l == v.letters());
    match (found, status) {
        (true, _) => Ok(true),
        (false, ExplorationStatus::Complete) => Ok(false),
        (false, ExplorationStatus::BudgetExceeded) => Err(Error::BudgetExceeded { budget, best: None }),
    }
}

/// Labels each input word with the index of its oracle class. Equal labels
/// mean oracle-equal; classes are explored once each.
pub fn partition(words: &[Word], max_len: usize, budget: usize) -> Result<Vec<usize>> {
    let Some(first) = words.first() else {
        return Ok(Vec::new());
    };
    let index: HashMap<&[Pair], usize> = words.iter().enumerate().map(|(k, w)| (w.letters(), k)).collect();
    let mut labels = vec![usize::MAX; words.len()];
    let mut next_label = 0;
    for (k, w) in words.iter().enumerate() {
        first.check_compatible(w)?;
        if labels[k] != usize::MAX {
            continue;
        }
        let class = explore(w, max_len, budget);
        if class.status == ExplorationStatus::BudgetExceeded {
            return Err(Error::BudgetExceeded { budget, best: None });
        }
        for letters in &class.visited {
            if let Some(&j) = index.get(letters.as_slice()) {
                labels[j] = next_label;
            }
        }
        next_label += 1;
    }
    Ok(labels)
}

/// How [`ball`] decides whether two words are the same element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallBackend {
    /// Matrices for `C` words, trace plus rewritten matrix for `G` words.
    Exact,
    /// Class exploration with `max_len = radius + slack`.
    Oracle { slack: usize },
}

/// Sphere sizes: the number of distinct elements of reduced length
/// `0, 1, ..., radius`.
pub fn ball(n: StrandCount, family: Family, radius: usize, backend: BallBackend, budget: usize) -> Result<Vec<u64>> {
    let gens: Vec<Pair> = n.pairs().collect();
    let mut counts = vec![1u64];
    let mut frontier: Vec<Vec<Pair>> = vec![Vec::new()];
    match backend {
        BallBackend::Exact => {
            let rep = ReflectionRep::new(n);
            let mut seen = HashSet::new();
            seen.insert(element_key(&rep, &Word::empty(family, n))?);
            for _ in 1..=radius {
                let mut next = Vec::new();
                for word in &frontier {
                    for &g in &gens {
                        let mut cand = word.clone();
                        cand.push(g);
                        let key = element_key(&rep, &Word::from_trusted(family, n, cand.clone()))?;
                        if seen.insert(key) {
                            next.push(cand);
                        }
                    }
                    if seen.len() > budget {
                        return Err(Error::BudgetExceeded { budget, best: None });
                    }
                }
                counts.push(next.len() as u64);
                frontier = next;
            }
        }
        BallBackend::Oracle { slack } => {
            let mut reps: HashSet<Vec<Pair>> = HashSet::new();
            reps.insert(Vec::new());
            for r in 1..=radius {
                let mut next = Vec::new();
                for word in &frontier {
                    for &g in &gens {
                        let mut cand = word.clone();
                        cand.push(g);
                        let seed = Word::from_trusted(family, n, cand.clone());
                        let (_, status, known) =
                            explore_until(&seed, r + slack, budget, |l| reps.contains(l));
                        if status == ExplorationStatus::BudgetExceeded {
                            return Err(Error::BudgetExceeded { budget, best: None });
                        }
                        if !known {
                            reps.insert(cand.clone());
                            next.push(cand);
                        }
                    }
                }
                counts.push(next.len() as u64);
                frontier = next;
            }
        }
    }
    Ok(counts)
}
