//! The rewriting map from free braid words to Coxeter words.
//!
//! For a `G` word `w = a_{i_1 j_1} ... a_{i_k j_k}` let `σ_p` be the inverse
//! of the strand trace of the first `p` letters. Letter `p` of the image is
//! `b_{σ_{p-1}(i_p) σ_{p-1}(j_p)}`. Because the trace reads letters left to
//! right, `σ_p = σ_{p-1} ∘ (i_p j_p)`: the update exchanges the entries at
//! positions `i_p` and `j_p` of the one-line array. Exchanging the *values*
//! `i_p` and `j_p` instead would give `σ_2 = (123)` on `a12 a13`, not `(132)`.
//!
//! The semidirect products `C(n,2) ⋊ S_n` and `G_n^2 ⋊ S_n` use
//! `(u, σ)(v, τ) = (u · σ(v), σ ∘ τ)` where `σ(v)` relabels indices, and
//! `embed(w) = (co(w), σ_k)` is a homomorphism for that law.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symmetric::{act_on_word, compose, inverse, trace, Permutation};
use crate::words::{Family, Pair, StrandCount, Word};

/// A `G` word, its Coxeter image, and the chain `σ_0 .. σ_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteTrace {
    pub source: Word,
    pub target: Word,
    pub sigmas: Vec<Permutation>,
}

impl RewriteTrace {
    /// `σ_k`, the inverse trace of the whole source word.
    pub fn final_sigma(&self) -> &Permutation {
        self.sigmas.last().expect("the chain always holds σ_0")
    }
}

#[cfg(not(feature = "mutate-sigma-update"))]
fn advance(sigma: &mut Permutation, pair: Pair) {
    sigma.swap_positions(pair);
}

// Deliberately wrong update, kept only as a negative control for the
// invariant suite.
#[cfg(feature = "mutate-sigma-update")]
fn advance(sigma: &mut Permutation, pair: Pair) {
    let n = sigma.strand_count();
    let swapped = crate::symmetric::compose(&Permutation::transposition(n, pair), sigma).expect("same degree");
    *sigma = swapped;
}

/// Rewrites a `G` word into its `C` image, keeping every `σ_p`.
pub fn co_rewrite(w: &Word) -> Result<RewriteTrace> {
    w.expect_family(Family::G)?;
    let mut sigma = Permutation::identity(w.n());
    let mut sigmas = Vec::with_capacity(w.len() + 1);
    let mut target = Vec::with_capacity(w.len());
    sigmas.push(sigma.clone());
    for &pair in w.letters() {
        target.push(sigma.map_pair(pair));
        advance(&mut sigma, pair);
        sigmas.push(sigma.clone());
    }
    Ok(RewriteTrace {
        source: w.clone(),
        target: Word::from_trusted(Family::C, w.n(), target),
        sigmas,
    })
}

/// Just the image word, without materializing the chain.
pub fn co_word(w: &Word) -> Result<Word> {
    w.expect_family(Family::G)?;
    let mut sigma = Permutation::identity(w.n());
    let target = w
        .letters()
        .iter()
        .map(|&pair| {
            let image = sigma.map_pair(pair);
            advance(&mut sigma, pair);
            image
        })
        .collect();
    Ok(Word::from_trusted(Family::C, w.n(), target))
}

/// The letterwise inverse of [`co_rewrite`].
pub fn co_inverse(v: &Word) -> Result<Word> {
    v.expect_family(Family::C)?;
    let mut sigma = Permutation::identity(v.n());
    let mut sigma_inv = Permutation::identity(v.n());
    let mut source = Vec::with_capacity(v.len());
    for &pair in v.letters() {
        let letter = sigma_inv.map_pair(pair);
        source.push(letter);
        advance(&mut sigma, letter);
        sigma_inv = inverse(&sigma);
    }
    Ok(Word::from_trusted(Family::G, v.n(), source))
}

/// True iff the strand trace of `w` is the identity.
pub fn is_pure(w: &Word) -> bool {
    trace(w).is_identity()
}

/// An element of a semidirect product of a word group with `S_n`.
///
/// Equality of the word part is a group question; see
/// [`crate::presentation::semidirect_equivalent`]. The derived `PartialEq`
/// compares letter sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SemidirectElement {
    pub part: Word,
    pub perm: Permutation,
}

impl SemidirectElement {
    pub fn new(part: Word, perm: Permutation) -> Result<SemidirectElement> {
        if part.n().get() != perm.degree() {
            return Err(Error::SizeMismatch { left: part.n().get(), right: perm.degree() });
        }
        Ok(SemidirectElement { part, perm })
    }

    pub fn identity(family: Family, n: StrandCount) -> SemidirectElement {
        SemidirectElement { part: Word::empty(family, n), perm: Permutation::identity(n) }
    }

    /// `(w, 1)`.
    pub fn from_word(part: Word) -> SemidirectElement {
        let perm = Permutation::identity(part.n());
        SemidirectElement { part, perm }
    }

    /// `(1, σ)`.
    pub fn from_perm(family: Family, perm: Permutation) -> SemidirectElement {
        SemidirectElement { part: Word::empty(family, perm.strand_count()), perm }
    }

    pub fn family(&self) -> Family {
        self.part.family()
    }
}

/// `(u, σ)(v, τ) = (u · σ(v), σ ∘ τ)`.
pub fn semidirect_mul(x: &SemidirectElement, y: &SemidirectElement) -> Result<SemidirectElement> {
    x.part.check_compatible(&y.part)?;
    let twisted = act_on_word(&x.perm, &y.part)?;
    Ok(SemidirectElement { part: x.part.concat(&twisted)?, perm: compose(&x.perm, &y.perm)? })
}

/// `(u, σ)^{-1} = (σ^{-1}(reverse u), σ^{-1})`.
pub fn semidirect_inv(x: &SemidirectElement) -> SemidirectElement {
    let perm = inverse(&x.perm);
    let part = act_on_word(&perm, &x.part.reversed()).expect("degrees agree by construction");
    SemidirectElement { part, perm }
}

/// `w ↦ (co(w), trace(w)^{-1})` into `C(n,2) ⋊ S_n`.
pub fn embed(w: &Word) -> Result<SemidirectElement> {
    let t = co_rewrite(w)?;
    let perm = t.final_sigma().clone();
    Ok(SemidirectElement { part: t.target, perm })
}

#[cfg(all(test, not(feature = "mutate-sigma-update")))]
mod tests {
    use super::*;
    use crate::words::parse_word;
    use proptest::prelude::*;

    fn n(k: usize) -> StrandCount {
        StrandCount::new(k).unwrap()
    }

    fn w(text: &str, k: usize) -> Word {
        parse_word(text, n(k)).unwrap()
    }

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_one_line(images).unwrap()
    }

    #[test]
    fn example_prefix() {
        let t = co_rewrite(&w("a12 a13 a23", 3)).unwrap();
        assert_eq!(t.target, w("b12 b23 b12", 3));
        assert_eq!(t.sigmas[1].cycle_string(), "(1 2)");
        assert_eq!(t.sigmas[2].cycle_string(), "(1 3 2)");
        assert_eq!(t.sigmas[3].one_line(), vec![3, 2, 1]);
    }

    #[test]
    fn full_example_follows_the_definition() {
        let t = co_rewrite(&w("a12 a13 a23 a13 a23", 3)).unwrap();
        assert_eq!(t.target, w("b12 b23 b12 b13 b23", 3));
        let cycles: Vec<_> = t.sigmas.iter().map(|s| s.cycle_string()).collect();
        assert_eq!(cycles, ["()", "(1 2)", "(1 3 2)", "(1 3)", "()", "(2 3)"]);
    }

    #[test]
    fn swapping_values_contradicts_the_example() {
        // σ ↦ (i j) ∘ σ instead of σ ∘ (i j)
        let t12 = Permutation::transposition(n(3), Pair::new(1, 2));
        let t13 = Permutation::transposition(n(3), Pair::new(1, 3));
        let by_value = compose(&t13, &t12).unwrap();
        assert_eq!(by_value.cycle_string(), "(1 2 3)");
    }

    #[test]
    fn trivial_rewrites() {
        let t = co_rewrite(&Word::empty(Family::G, n(3))).unwrap();
        assert!(t.target.is_empty());
        assert_eq!(t.sigmas, vec![Permutation::identity(n(3))]);
        let t = co_rewrite(&w("a12 a12", 3)).unwrap();
        assert_eq!(t.target, w("b12 b12", 3));
        assert!(t.sigmas[2].is_identity());
        assert!(co_rewrite(&w("b12", 3)).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(co_inverse(&w("b12 b23 b12 b13 b23", 3)).unwrap(), w("a12 a13 a23 a13 a23", 3));
        assert_eq!(co_inverse(&w("b12", 3)).unwrap(), w("a12", 3));
        assert!(co_inverse(&Word::empty(Family::C, n(3))).unwrap().is_empty());
        assert!(co_inverse(&w("a12", 3)).is_err());
    }

    #[test]
    fn purity() {
        assert!(is_pure(&w("a12 a12", 3)));
        assert!(!is_pure(&w("a12", 3)));
        assert!(!is_pure(&w("a12 a13 a23 a13 a23", 3)));
    }

    #[test]
    fn embed_examples() {
        let e = embed(&Word::empty(Family::G, n(3))).unwrap();
        assert_eq!(e, SemidirectElement::identity(Family::C, n(3)));
        let e12 = embed(&w("a12", 3)).unwrap();
        assert_eq!(e12.part, w("b12", 3));
        assert_eq!(e12.perm.one_line(), vec![2, 1, 3]);
        let e13 = embed(&w("a13", 3)).unwrap();
        let product = semidirect_mul(&e12, &e13).unwrap();
        assert_eq!(product.part, w("b12 b23", 3));
        assert_eq!(product.perm.one_line(), vec![3, 1, 2]);
        assert_eq!(product, embed(&w("a12 a13", 3)).unwrap());
    }

    #[test]
    fn semidirect_products() {
        let id = SemidirectElement::identity(Family::C, n(3));
        let x = SemidirectElement::new(w("b12", 3), perm(&[2, 1, 3])).unwrap();
        assert_eq!(semidirect_mul(&id, &x).unwrap(), x);
        let xx = semidirect_mul(&x, &x).unwrap();
        assert_eq!(xx.part, w("b12 b12", 3));
        assert!(xx.perm.is_identity());
        assert_eq!(semidirect_inv(&x), x);

        // (b13,(13))·(b12,(12)) = (b13 · (13)(b12), (13)∘(12)) = (b13 b23, [2,3,1])
        let y = SemidirectElement::new(w("b13", 3), perm(&[3, 2, 1])).unwrap();
        let yx = semidirect_mul(&y, &x).unwrap();
        assert_eq!(yx.part, w("b13 b23", 3));
        assert_eq!(yx.perm.one_line(), vec![2, 3, 1]);

        assert!(matches!(
            semidirect_mul(&x, &SemidirectElement::identity(Family::G, n(3))),
            Err(Error::FamilyMismatch { .. })
        ));
        assert!(matches!(
            semidirect_mul(&x, &SemidirectElement::identity(Family::C, n(4))),
            Err(Error::SizeMismatch { .. })
        ));
    }

    fn arb_word(max_n: usize, max_len: usize) -> impl Strategy<Value = Word> {
        (2..=max_n).prop_flat_map(move |k| {
            prop::collection::vec((1..=k, 1..=k), 0..max_len).prop_map(move |raw| {
                let letters = raw.into_iter().filter_map(|(i, j)| Pair::checked(i, j)).collect();
                Word::new(Family::G, n(k), letters).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn trace_invariants(w in arb_word(7, 25)) {
            let t = co_rewrite(&w).unwrap();
            prop_assert_eq!(t.target.len(), w.len());
            prop_assert!(t.sigmas[0].is_identity());
            for p in 1..=w.len() {
                let pair = w.letters()[p - 1];
                prop_assert_eq!(&t.sigmas[p], &inverse(&trace(&w.prefix(p))));
                prop_assert_eq!(t.target.letters()[p - 1], t.sigmas[p - 1].map_pair(pair));
                let mut expected = t.sigmas[p - 1].clone();
                expected.swap_positions(pair);
                prop_assert_eq!(&t.sigmas[p], &expected);
            }
            prop_assert_eq!(co_word(&w).unwrap(), t.target.clone());
        }

        #[test]
        fn round_trips(w in arb_word(7, 25)) {
            let v = co_word(&w).unwrap();
            prop_assert_eq!(co_inverse(&v).unwrap(), w.clone());
            let as_c = w.with_family(Family::C);
            prop_assert_eq!(co_word(&co_inverse(&as_c).unwrap()).unwrap(), as_c);
        }

        #[test]
        fn permutation_law(w in arb_word(7, 25)) {
            prop_assert_eq!(trace(&w), inverse(&trace(&co_word(&w).unwrap())));
        }

        #[test]
        fn embed_is_letterwise_homomorphism(u in arb_word(5, 12), v in arb_word(5, 12)) {
            prop_assume!(u.n() == v.n());
            let lhs = embed(&u.concat(&v).unwrap()).unwrap();
            let rhs = semidirect_mul(&embed(&u).unwrap(), &embed(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn semidirect_inverse_cancels_letterwise_pairs(u in arb_word(5, 10)) {
            let x = embed(&u).unwrap();
            let prod = semidirect_mul(&x, &semidirect_inv(&x)).unwrap();
            prop_assert!(prod.perm.is_identity());
            // u · reverse(u): a palindrome that collapses by free cancellation
            let letters = prod.part.letters();
            let k = letters.len();
            prop_assert!((0..k).all(|i| letters[i] == letters[k - 1 - i]));
        }
    }
}
