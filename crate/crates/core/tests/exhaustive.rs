//! Exhaustive checks over every short word for small strand counts.

use std::collections::{HashMap, HashSet};

use freebraid::coxeter::element_key;
use freebraid::oracle::{ball, partition, BallBackend};
use freebraid::{
    co_inverse, co_rewrite, equal_elements, reduce, reduced_word_orbit, Family, Pair, ReflectionRep, StrandCount, Word,
    DEFAULT_BUDGET,
};

fn n(k: usize) -> StrandCount {
    StrandCount::new(k).unwrap()
}

/// All words of length at most `max_len`, shortest first.
fn all_words(family: Family, n: StrandCount, max_len: usize) -> Vec<Word> {
    let gens: Vec<Pair> = n.pairs().collect();
    let mut out = vec![Word::empty(family, n)];
    let mut layer = vec![Vec::<Pair>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &g in &gens {
                let mut x = w.clone();
                x.push(g);
                next.push(x);
            }
        }
        out.extend(next.iter().map(|l| Word::new(family, n, l.clone()).unwrap()));
        layer = next;
    }
    out
}

#[test]
fn rewriting_is_a_bijection_on_each_length() {
    for (k, max_len) in [(3, 6), (4, 4)] {
        let words = all_words(Family::G, n(k), max_len);
        let mut images = HashSet::new();
        for w in &words {
            let t = co_rewrite(w).unwrap().target;
            assert_eq!(t.len(), w.len());
            assert_eq!(&co_inverse(&t).unwrap(), w);
            assert!(images.insert(t), "collision for {w}");
        }
        assert_eq!(images.len(), words.len());
    }
}

#[test]
fn matrix_equality_matches_oracle_classes() {
    for family in [Family::G, Family::C] {
        let words = all_words(family, n(3), 5);
        let labels = partition(&words, 5, DEFAULT_BUDGET).unwrap();
        let rep = ReflectionRep::new(n(3));
        let mut by_key: HashMap<_, usize> = HashMap::new();
        let mut by_label: HashMap<usize, _> = HashMap::new();
        for (w, &label) in words.iter().zip(&labels) {
            let key = element_key(&rep, w).unwrap();
            assert_eq!(*by_key.entry(key.clone()).or_insert(label), label, "{w}");
            assert_eq!(*by_label.entry(label).or_insert(key.clone()), key, "{w}");
        }
    }
}

#[test]
fn equal_reduced_words_share_one_orbit() {
    for family in [Family::G, Family::C] {
        let rep = ReflectionRep::new(n(4));
        let mut groups: HashMap<_, Vec<Word>> = HashMap::new();
        for w in all_words(family, n(4), 3) {
            if reduce(&w, DEFAULT_BUDGET).unwrap().word.len() == w.len() {
                groups.entry(element_key(&rep, &w).unwrap()).or_default().push(w);
            }
        }
        for words in groups.values() {
            let orbit = reduced_word_orbit(&words[0], DEFAULT_BUDGET).unwrap();
            assert!(words.iter().all(|w| orbit.contains(w)), "{words:?}");
        }
    }
}

#[test]
fn reduction_preserves_elements_and_is_minimal() {
    let words = all_words(Family::G, n(3), 6);
    let mut shortest: HashMap<_, usize> = HashMap::new();
    let rep = ReflectionRep::new(n(3));
    for w in &words {
        let key = element_key(&rep, w).unwrap();
        shortest.entry(key).or_insert(w.len());
    }
    for w in &words {
        let r = reduce(w, DEFAULT_BUDGET).unwrap().word;
        assert!(equal_elements(w, &r).unwrap());
        assert_eq!(r.len(), shortest[&element_key(&rep, w).unwrap()], "{w} reduced to {r}");
    }
}

#[test]
fn ball_backends_agree() {
    for family in [Family::G, Family::C] {
        let exact = ball(n(3), family, 5, BallBackend::Exact, DEFAULT_BUDGET).unwrap();
        let oracle = ball(n(3), family, 5, BallBackend::Oracle { slack: 2 }, DEFAULT_BUDGET).unwrap();
        assert_eq!(exact, oracle, "{family}");
    }
    let g4 = ball(n(4), Family::G, 3, BallBackend::Exact, DEFAULT_BUDGET).unwrap();
    let c4 = ball(n(4), Family::C, 3, BallBackend::Exact, DEFAULT_BUDGET).unwrap();
    assert_eq!(g4[..2], [1, 6]);
    assert_eq!(c4[..2], [1, 6]);
}
