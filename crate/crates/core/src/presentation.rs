//! Equality in the semidirect products and the check that the generator
//! assignment `(b_ij, 1) ↦ (a_ij, (ij))`, `(1, σ) ↦ (1, σ)` respects every
//! defining relator, in both directions.
//!
//! `C(n,2) ⋊ S_n` is presented by the `b` generators, the adjacent
//! transpositions `s_k = (k k+1)`, the Coxeter relations of both factors, and
//! the action relators `s_k x s_k = s_k(x)`. `G_n^2 ⋊ S_n` is presented the
//! same way with the free braid relations in place of the Coxeter ones.

use std::fmt;

use serde::Serialize;

use crate::coxeter::equal_elements;
use crate::error::Result;
use crate::geomrep::ReflectionRep;
use crate::moves::is_triangle;
use crate::oracle::oracle_equal;
use crate::rewrite::{semidirect_mul, SemidirectElement};
use crate::symmetric::Permutation;
use crate::words::{Family, Pair, StrandCount, Word};

/// Group equality of semidirect elements: equal permutations and equal
/// word parts in the word family's group.
pub fn semidirect_equivalent(x: &SemidirectElement, y: &SemidirectElement) -> Result<bool> {
    x.part.check_compatible(&y.part)?;
    Ok(x.perm == y.perm && equal_elements(&x.part, &y.part)?)
}

pub fn is_identity_element(x: &SemidirectElement) -> Result<bool> {
    if !x.perm.is_identity() {
        return Ok(false);
    }
    Ok(match x.part.family() {
        Family::C => ReflectionRep::new(x.part.n()).rho(&x.part)?.is_identity(),
        Family::G => equal_elements(&x.part, &Word::empty(Family::G, x.part.n()))?,
    })
}

/// Abstract generator of a semidirect product presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdGenerator {
    /// A word-group generator `x_ij` paired with the identity permutation.
    Letter(Pair),
    /// The adjacent transposition `(k k+1)` paired with the empty word.
    Adjacent(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    pub name: String,
    pub letters: Vec<SdGenerator>,
}

fn adjacent_perm(n: StrandCount, k: usize) -> Permutation {
    Permutation::transposition(n, Pair::new(k, k + 1))
}

/// Defining relators of `family ⋊ S_n`.
pub fn semidirect_relators(n: StrandCount, family: Family) -> Vec<Relator> {
    use SdGenerator::{Adjacent, Letter};
    let x = family.prefix();
    let pairs: Vec<Pair> = n.pairs().collect();
    let name = |p: Pair| format!("{x}{}{}", p.lo(), p.hi());
    let mut out = Vec::new();
    for &p in &pairs {
        out.push(Relator { name: format!("{}^2", name(p)), letters: vec![Letter(p); 2] });
    }
    for (a, &s) in pairs.iter().enumerate() {
        for &t in &pairs[a + 1..] {
            if s.is_disjoint(t) {
                out.push(Relator {
                    name: format!("[{}, {}]", name(s), name(t)),
                    letters: vec![Letter(s), Letter(t), Letter(s), Letter(t)],
                });
            } else if family == Family::C {
                out.push(Relator {
                    name: format!("({} {})^3", name(s), name(t)),
                    letters: [Letter(s), Letter(t)].repeat(3),
                });
            }
        }
    }
    if family == Family::G {
        for (a, &s) in pairs.iter().enumerate() {
            for (b, &t) in pairs.iter().enumerate().skip(a + 1) {
                for &u in &pairs[b + 1..] {
                    if is_triangle(s, t, u) {
                        out.push(Relator {
                            name: format!("({} {} {})^2", name(s), name(t), name(u)),
                            letters: [Letter(s), Letter(t), Letter(u)].repeat(2),
                        });
                    }
                }
            }
        }
    }
    let m = n.get() - 1;
    for k in 1..=m {
        out.push(Relator { name: format!("s{k}^2"), letters: vec![Adjacent(k); 2] });
        for l in k + 1..=m {
            let power = if l == k + 1 { 3 } else { 2 };
            out.push(Relator {
                name: format!("(s{k} s{l})^{power}"),
                letters: [Adjacent(k), Adjacent(l)].repeat(power),
            });
        }
    }
    for k in 1..=m {
        let s = adjacent_perm(n, k);
        for &p in &pairs {
            let q = s.map_pair(p);
            out.push(Relator {
                name: format!("s{k} {} s{k} {}", name(p), name(q)),
                letters: vec![Adjacent(k), Letter(p), Adjacent(k), Letter(q)],
            });
        }
    }
    out
}

/// Which presentation is mapped into which product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// `C(n,2) ⋊ S_n → G_n^2 ⋊ S_n`, `(b_ij,1) ↦ (a_ij,(ij))`.
    CoxeterToBraid,
    /// `G_n^2 ⋊ S_n → C(n,2) ⋊ S_n`, `(a_ij,1) ↦ embed(a_ij) = (b_ij,(ij))`.
    BraidToCoxeter,
}

impl Direction {
    fn source(self) -> Family {
        match self {
            Direction::CoxeterToBraid => Family::C,
            Direction::BraidToCoxeter => Family::G,
        }
    }

    fn target(self) -> Family {
        self.source().other()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::CoxeterToBraid => f.write_str("C(n,2)xS_n -> G_n^2xS_n"),
            Direction::BraidToCoxeter => f.write_str("G_n^2xS_n -> C(n,2)xS_n"),
        }
    }
}

/// Image of one abstract generator.
pub fn generator_image(direction: Direction, n: StrandCount, g: SdGenerator) -> SemidirectElement {
    let target = direction.target();
    match g {
        SdGenerator::Letter(p) => SemidirectElement {
            part: Word::from_trusted(target, n, vec![p]),
            perm: Permutation::transposition(n, p),
        },
        SdGenerator::Adjacent(k) => SemidirectElement::from_perm(target, adjacent_perm(n, k)),
    }
}

pub fn evaluate(direction: Direction, n: StrandCount, letters: &[SdGenerator]) -> Result<SemidirectElement> {
    letters.iter().try_fold(SemidirectElement::identity(direction.target(), n), |acc, &g| {
        semidirect_mul(&acc, &generator_image(direction, n, g))
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RelatorCheck {
    pub relator: String,
    pub image: SemidirectElement,
    /// Verdict of the matrix and permutation backends.
    pub exact: bool,
    /// Verdict of the brute-force oracle, when it was consulted.
    pub oracle: Option<bool>,
}

impl RelatorCheck {
    pub fn passed(&self) -> bool {
        self.exact && self.oracle != Some(false)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationReport {
    pub n: usize,
    pub direction: Direction,
    pub checks: Vec<RelatorCheck>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(RelatorCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelatorCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PresentationOptions {
    /// Consult the oracle with this many letters of headroom; `None` skips it.
    pub oracle_slack: Option<usize>,
    pub budget: usize,
}

impl Default for PresentationOptions {
    fn default() -> Self {
        PresentationOptions { oracle_slack: Some(0), budget: crate::coxeter::DEFAULT_BUDGET }
    }
}

fn check(direction: Direction, n: StrandCount, name: String, image: SemidirectElement, opts: &PresentationOptions) -> Result<RelatorCheck> {
    let exact = is_identity_element(&image)?;
    let oracle = match opts.oracle_slack {
        Some(slack) if image.perm.is_identity() => {
            let empty = Word::empty(direction.target(), n);
            Some(oracle_equal(&image.part, &empty, image.part.len() + slack, opts.budget)?)
        }
        Some(_) => Some(false),
        None => None,
    };
    Ok(RelatorCheck { relator: name, image, exact, oracle })
}

/// Maps every defining relator of the source product to the target product
/// and checks that each image is the identity. Also checks that composing
/// the two directions fixes every generator.
pub fn verify_presentation_map(n: StrandCount, direction: Direction, opts: &PresentationOptions) -> Result<PresentationReport> {
    let mut checks = Vec::new();
    for relator in semidirect_relators(n, direction.source()) {
        let image = evaluate(direction, n, &relator.letters)?;
        checks.push(check(direction, n, relator.name, image, opts)?);
    }
    // there and back: x ↦ (y, t) ↦ (x, t)(1, t) = (x, 1)
    let back = match direction {
        Direction::CoxeterToBraid => Direction::BraidToCoxeter,
        Direction::BraidToCoxeter => Direction::CoxeterToBraid,
    };
    for p in n.pairs() {
        let there = generator_image(direction, n, SdGenerator::Letter(p));
        let returned = semidirect_mul(
            &generator_image(back, n, SdGenerator::Letter(p)),
            &SemidirectElement::from_perm(direction.source(), there.perm.clone()),
        )?;
        let expected = SemidirectElement::from_word(Word::from_trusted(direction.source(), n, vec![p]));
        // (x,1) is an involution, so (x,1) · returned must be the identity
        let probe = semidirect_mul(&expected, &returned)?;
        let name = format!("round trip {}{}{}", direction.source().prefix(), p.lo(), p.hi());
        let mut c = check(back, n, name, probe, opts)?;
        c.exact &= returned == expected;
        checks.push(c);
    }
    Ok(PresentationReport { n: n.get(), direction, checks })
}

pub fn verify_presentation_maps(n: StrandCount, opts: &PresentationOptions) -> Result<Vec<PresentationReport>> {
    Ok(vec![
        verify_presentation_map(n, Direction::CoxeterToBraid, opts)?,
        verify_presentation_map(n, Direction::BraidToCoxeter, opts)?,
    ])
}
