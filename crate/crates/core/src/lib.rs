//! Word problem for the free braid groups `G_n^2`.
//!
//! A word in the involutive generators `a_ij` is rewritten letter by letter
//! into a word in the Coxeter group `C(n,2)` while tracking a permutation of
//! the strands. Equal braid words go to equal Coxeter words, and together
//! with the strand permutation this embeds `G_n^2` into `C(n,2) ⋊ S_n`, so
//! the exact reflection representation of `C(n,2)` decides equality.
//!
//! ```
//! use freebraid::{parse_word, co_rewrite, equal_elements, StrandCount};
//!
//! let n = StrandCount::new(3).unwrap();
//! let w = parse_word("a12 a13 a23", n).unwrap();
//! assert_eq!(co_rewrite(&w).unwrap().target.to_string(), "b12 b23 b12");
//! let v = parse_word("a23 a13 a12", n).unwrap();
//! assert!(equal_elements(&w, &v).unwrap());
//! ```

pub mod coxeter;
pub mod error;
pub mod geomrep;
pub mod moves;
pub mod oracle;
pub mod presentation;
pub mod rewrite;
pub mod suite;
pub mod symmetric;
pub mod words;

pub use coxeter::{canonical_form, equal_elements, reduce, reduced_word_orbit, CoxeterElement, DEFAULT_BUDGET};
pub use error::{Error, Result};
pub use geomrep::{ReflectionMatrix, ReflectionRep};
pub use moves::{neighbors, Move, MoveKind, MoveSystem};
pub use oracle::{ball, oracle_equal, BallBackend};
pub use presentation::{verify_presentation_map, Direction, PresentationOptions};
pub use rewrite::{co_inverse, co_rewrite, embed, is_pure, semidirect_inv, semidirect_mul, RewriteTrace, SemidirectElement};
pub use symmetric::{act_on_word, compose, inverse, trace, Permutation};
pub use words::{parse_word, parse_word_as, print_word, Family, Pair, StrandCount, Word, WordFormat};
