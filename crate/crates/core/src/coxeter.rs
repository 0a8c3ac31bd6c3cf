//! Reduction, reduced-word orbits, canonical forms, and equality.
//!
//! Reduction explores the orbit of a word under length-preserving moves
//! breadth first and cancels a square as soon as any orbit member exposes
//! one, then restarts from the shorter word. By the exchange property of
//! Coxeter groups (and its transport to `G` words through the rewriting
//! map), a word whose orbit exposes no square is reduced, and any two
//! reduced words for the same element lie in one orbit.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::geomrep::{ReflectionMatrix, ReflectionRep};
use crate::moves::MoveSystem;
use crate::rewrite::co_word;
use crate::symmetric::{trace, Permutation};
use crate::words::{Family, Pair, Word};

/// Default node limit for orbit searches.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub word: Word,
    /// Cancellations plus the length-preserving moves leading to each one.
    pub moves_applied: usize,
    pub cancellations: usize,
    pub nodes_visited: usize,
}

fn first_square(letters: &[Pair]) -> Option<usize> {
    letters.windows(2).position(|p| p[0] == p[1])
}

fn budget_error(budget: usize, best: &[Pair], w: &Word) -> Error {
    Error::BudgetExceeded {
        budget,
        best: Some(Box::new(Word::from_trusted(w.family(), w.n(), best.to_vec()))),
    }
}

/// Reduces `w` by length-non-increasing moves.
pub fn reduce(w: &Word, budget: usize) -> Result<Reduction> {
    let system = MoveSystem::for_word(w);
    let mut current = w.letters().to_vec();
    let mut nodes = 0usize;
    let mut moves_applied = 0;
    let mut cancellations = 0;
    'restart: loop {
        let mut seen: HashSet<Vec<Pair>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(current.clone());
        queue.push_back((current.clone(), 0usize));
        while let Some((letters, depth)) = queue.pop_front() {
            if let Some(i) = first_square(&letters) {
                let mut shorter = letters;
                shorter.drain(i..=i + 1);
                current = shorter;
                moves_applied += depth + 1;
                cancellations += 1;
                continue 'restart;
            }
            let mut over = false;
            system.for_each_neighbor(&letters, true, |next| {
                if !over && seen.insert(next.clone()) {
                    nodes += 1;
                    over = nodes > budget;
                    queue.push_back((next, depth + 1));
                }
            });
            if over {
                return Err(budget_error(budget, &current, w));
            }
        }
        return Ok(Reduction {
            word: Word::from_trusted(w.family(), w.n(), current),
            moves_applied,
            cancellations,
            nodes_visited: nodes,
        });
    }
}

/// Every word reachable from a reduced `w` by length-preserving moves.
pub fn reduced_word_orbit(w: &Word, budget: usize) -> Result<BTreeSet<Word>> {
    if reduce(w, budget)?.word.len() != w.len() {
        return Err(Error::NotReduced);
    }
    orbit(w, budget)
}

/// Length-preserving orbit without the reducedness check.
pub(crate) fn orbit(w: &Word, budget: usize) -> Result<BTreeSet<Word>> {
    let system = MoveSystem::for_word(w);
    let mut seen: HashSet<Vec<Pair>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(w.letters().to_vec());
    queue.push_back(w.letters().to_vec());
    while let Some(letters) = queue.pop_front() {
        let mut over = false;
        system.for_each_neighbor(&letters, true, |next| {
            if !over && seen.insert(next.clone()) {
                over = seen.len() > budget;
                queue.push_back(next);
            }
        });
        if over {
            return Err(budget_error(budget, w.letters(), w));
        }
    }
    Ok(seen.into_iter().map(|l| Word::from_trusted(w.family(), w.n(), l)).collect())
}

/// An element of `C(n,2)`: its least reduced expression and its matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterElement {
    pub canonical: Word,
    pub matrix: ReflectionMatrix,
}

/// Canonical form of a `C` word: the lexicographically least reduced
/// expression under the generator order.
pub fn canonical_form(w: &Word, budget: usize) -> Result<CoxeterElement> {
    w.expect_family(Family::C)?;
    let reduced = reduce(w, budget)?.word;
    let canonical = orbit(&reduced, budget)?
        .into_iter()
        .next()
        .expect("an orbit contains its seed");
    let matrix = ReflectionRep::new(w.n()).rho(&canonical)?;
    Ok(CoxeterElement { canonical, matrix })
}

/// Exact fingerprint of the element a word represents.
///
/// `C` words map to their matrix. `G` words map to their trace and the
/// matrix of their rewritten image, i.e. the embedding into `C(n,2) ⋊ S_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementKey {
    pub trace: Option<Permutation>,
    pub matrix: ReflectionMatrix,
}

pub fn element_key(rep: &ReflectionRep, w: &Word) -> Result<ElementKey> {
    if w.n() != rep.n() {
        return Err(Error::SizeMismatch { left: rep.n().get(), right: w.n().get() });
    }
    Ok(match w.family() {
        Family::C => ElementKey { trace: None, matrix: rep.rho_letters(w.letters()) },
        Family::G => ElementKey { trace: Some(trace(w)), matrix: rep.rho_letters(co_word(w)?.letters()) },
    })
}

/// Decides whether two words of one family represent the same element.
pub fn equal_elements(u: &Word, v: &Word) -> Result<bool> {
    u.check_compatible(v)?;
    let rep = ReflectionRep::new(u.n());
    Ok(element_key(&rep, u)? == element_key(&rep, v)?)
}

/// [`equal_elements`] plus an independent verdict from reduced-word orbits;
/// disagreement between the two is reported as an error.
pub fn equal_elements_checked(u: &Word, v: &Word, budget: usize) -> Result<bool> {
    let by_matrix = equal_elements(u, v)?;
    let ru = reduce(u, budget)?.word;
    let rv = reduce(v, budget)?.word;
    let by_orbit = ru.len() == rv.len() && orbit(&ru, budget)?.contains(&rv);
    if by_matrix != by_orbit {
        return Err(Error::BackendDisagreement { left: u.to_string(), right: v.to_string() });
    }
    Ok(by_matrix)
}
