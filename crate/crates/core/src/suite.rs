//! Randomized invariant suite behind `selftest`, plus the word samplers it
//! and the integration tests share.
//!
//! Every invariant draws from its own ChaCha stream seeded by the suite seed
//! and the invariant's index, so results are reproducible per invariant.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coxeter::{element_key, equal_elements, reduce, DEFAULT_BUDGET};
use crate::geomrep::ReflectionRep;
use crate::moves::{is_triangle, Move, MoveKind, MoveSystem};
use crate::oracle::oracle_equal;
use crate::presentation::is_identity_element;
use crate::rewrite::{co_inverse, co_word, embed, is_pure, semidirect_inv, semidirect_mul};
use crate::symmetric::{act_on_word, compose, inverse, trace, Permutation};
use crate::words::{parse_word_as, print_word, Family, Pair, StrandCount, Word, WordFormat};

/// Uniform random word of exactly `len` letters.
pub fn random_word(rng: &mut impl Rng, family: Family, n: StrandCount, len: usize) -> Word {
    let pairs: Vec<Pair> = n.pairs().collect();
    let letters = (0..len).map(|_| *pairs.choose(rng).expect("n >= 2")).collect();
    Word::from_trusted(family, n, letters)
}

pub fn random_perm(rng: &mut impl Rng, n: StrandCount) -> Permutation {
    let mut images: Vec<usize> = (1..=n.get()).collect();
    images.shuffle(rng);
    Permutation::from_one_line(&images).expect("shuffled identity is a bijection")
}

fn random_pair(rng: &mut impl Rng, n: StrandCount) -> Pair {
    let i = rng.gen_range(1..=n.get());
    let mut j = rng.gen_range(1..n.get());
    if j >= i {
        j += 1;
    }
    Pair::new(i, j)
}

/// Three distinct indices, in random order.
fn random_triple(rng: &mut impl Rng, n: StrandCount) -> [usize; 3] {
    let mut idx: Vec<usize> = (1..=n.get()).collect();
    idx.shuffle(rng);
    [idx[0], idx[1], idx[2]]
}

/// Applies `steps` random relator moves (including square insertions) and
/// returns a word for the same element.
pub fn scramble(rng: &mut impl Rng, w: &Word, steps: usize) -> Word {
    let system = MoveSystem::for_word(w);
    let mut letters = w.letters().to_vec();
    for _ in 0..steps {
        let mut moves = system.moves(&letters, false);
        if moves.is_empty() || rng.gen_bool(0.3) {
            moves.push(Move::Insert { pos: rng.gen_range(1..=letters.len() + 1), pair: random_pair(rng, w.n()) });
        }
        let mv = *moves.choose(rng).expect("nonempty");
        letters = system.apply(&letters, mv).expect("listed moves apply");
    }
    Word::from_trusted(w.family(), w.n(), letters)
}

/// A `G` word and the result of one relator application inside it.
#[derive(Debug, Clone)]
pub struct RelatorInstance {
    pub before: Word,
    pub after: Word,
    pub kind: MoveKind,
    /// 1-based position where the relator pattern starts in `before`.
    pub pos: usize,
    /// Pattern length in `before` (`2` or `3`, or `0` for an insertion).
    pub width: usize,
}

/// Plants a square, commutation or triangle relator pattern into a random
/// `G` word and applies it. `n >= 3`; commutations need `n >= 4` and fall
/// back to a triangle reversal otherwise.
pub fn plant_relator(rng: &mut impl Rng, n: StrandCount, max_len: usize) -> RelatorInstance {
    let (a, b) = (rng.gen_range(0..=max_len / 2), rng.gen_range(0..=max_len / 2));
    let prefix = random_word(rng, Family::G, n, a);
    let suffix = random_word(rng, Family::G, n, b);
    let pos = prefix.len() + 1;
    let choice = rng.gen_range(0..4);
    let (pattern, replacement, kind) = match choice {
        0 | 1 => {
            let p = random_pair(rng, n);
            // cancellation or insertion of a square
            let (a, b) = if choice == 0 { (vec![p, p], vec![]) } else { (vec![], vec![p, p]) };
            (a, b, if choice == 0 { MoveKind::Cancel } else { MoveKind::Insert })
        }
        _ if choice == 2 && n.get() >= 4 => {
            let mut idx: Vec<usize> = (1..=n.get()).collect();
            idx.shuffle(rng);
            let (s, t) = (Pair::new(idx[0], idx[1]), Pair::new(idx[2], idx[3]));
            (vec![s, t], vec![t, s], MoveKind::Commute)
        }
        _ => {
            let [i, j, k] = random_triple(rng, n);
            let mut tri = vec![Pair::new(i, j), Pair::new(i, k), Pair::new(j, k)];
            tri.shuffle(rng);
            let mut rev = tri.clone();
            rev.reverse();
            (tri, rev, MoveKind::Triangle)
        }
    };
    let build = |mid: &[Pair]| {
        let mut letters = prefix.letters().to_vec();
        letters.extend_from_slice(mid);
        letters.extend_from_slice(suffix.letters());
        Word::from_trusted(Family::G, n, letters)
    };
    RelatorInstance { width: pattern.len(), before: build(&pattern), after: build(&replacement), kind, pos }
}

/// Checks the images of a planted relator under the rewriting map: equal
/// elements, and the letterwise shape predicted for each relation.
pub fn check_relator_image(inst: &RelatorInstance, rep: &ReflectionRep) -> Result<(), String> {
    let img = co_word(&inst.before).map_err(|e| e.to_string())?;
    let img2 = co_word(&inst.after).map_err(|e| e.to_string())?;
    if rep.rho_letters(img.letters()) != rep.rho_letters(img2.letters()) {
        return Err(format!("images differ: {img} vs {img2}"));
    }
    let i = inst.pos - 1;
    let (l, l2) = (img.letters(), img2.letters());
    let shape_ok = match inst.kind {
        MoveKind::Cancel => l[i] == l[i + 1] && l2[..i] == l[..i] && l2[i..] == l[i + 2..],
        MoveKind::Insert => l2[i] == l2[i + 1] && l[..i] == l2[..i] && l[i..] == l2[i + 2..],
        MoveKind::Commute => {
            l[i].is_disjoint(l[i + 1]) && l2[i] == l[i + 1] && l2[i + 1] == l[i] && l[..i] == l2[..i] && l[i + 2..] == l2[i + 2..]
        }
        MoveKind::Triangle => {
            let (s, t) = (l[i], l[i + 1]);
            l[i + 2] == s
                && s.shares_index(t)
                && l2[i..i + 3] == [t, s, t]
                && l[..i] == l2[..i]
                && l[i + 3..] == l2[i + 3..]
        }
        MoveKind::Braid => false,
    };
    if !shape_ok {
        return Err(format!("{:?} at {}: images {img} / {img2} lack the expected shape", inst.kind, inst.pos));
    }
    Ok(())
}

/// A pure word `v · reverse(v)`, scrambled by relator moves.
pub fn random_pure_word(rng: &mut impl Rng, n: StrandCount, half_len: usize) -> Word {
    let v = random_word(rng, Family::G, n, half_len);
    let w = v.concat(&v.reversed()).expect("same family");
    let steps = rng.gen_range(0..6);
    scramble(rng, &w, steps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// `n <= 4`, words up to 12 letters.
    Quick,
    /// `n <= 6`, words up to 40 letters.
    Full,
}

impl Profile {
    fn max_n(self) -> usize {
        match self {
            Profile::Quick => 4,
            Profile::Full => 6,
        }
    }

    fn max_len(self) -> usize {
        match self {
            Profile::Quick => 12,
            Profile::Full => 40,
        }
    }
}

struct Ctx<'a> {
    rng: &'a mut ChaCha8Rng,
    profile: Profile,
}

impl Ctx<'_> {
    fn n(&mut self, min: usize) -> StrandCount {
        StrandCount::new(self.rng.gen_range(min..=self.profile.max_n())).expect("profile sizes are valid")
    }

    fn len(&mut self) -> usize {
        self.rng.gen_range(0..=self.profile.max_len())
    }

    fn word(&mut self, family: Family, n: StrandCount) -> Word {
        let len = self.len();
        random_word(self.rng, family, n, len)
    }

    fn family(&mut self) -> Family {
        if self.rng.gen_bool(0.5) {
            Family::G
        } else {
            Family::C
        }
    }
}

type Check = fn(&mut Ctx) -> Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: crate::error::Error) -> String {
    e.to_string()
}

const INVARIANTS: &[(&str, Check)] = &[
    ("words.round_trip", |c| {
        let f = c.family();
        let n = StrandCount::new(c.rng.gen_range(2..=12)).expect("valid");
        let w = c.word(f, n);
        for format in [WordFormat::Compact, WordFormat::General] {
            if let Ok(text) = print_word(&w, format) {
                let back = parse_word_as(&text, n, f).map_err(err)?;
                ensure(back == w, || format!("{text} parsed back as {back}"))?;
            }
        }
        Ok(())
    }),
    ("symmetric.trace_homomorphism", |c| {
        let n = c.n(2);
        let f = c.family();
        let (u, v) = (c.word(f, n), c.word(f, n));
        let lhs = trace(&u.concat(&v).map_err(err)?);
        let rhs = compose(&trace(&v), &trace(&u)).map_err(err)?;
        ensure(lhs == rhs, || format!("u={u} v={v}"))
    }),
    ("symmetric.action_composition", |c| {
        let n = c.n(2);
        let (f, g) = (random_perm(c.rng, n), random_perm(c.rng, n));
        let w = c.word(Family::G, n);
        let lhs = act_on_word(&compose(&f, &g).map_err(err)?, &w).map_err(err)?;
        let rhs = act_on_word(&f, &act_on_word(&g, &w).map_err(err)?).map_err(err)?;
        ensure(lhs == rhs, || format!("f={f} g={g} w={w}"))
    }),
    ("symmetric.inverse_involution", |c| {
        let n = c.n(2);
        let p = random_perm(c.rng, n);
        ensure(inverse(&inverse(&p)) == p && compose(&p, &inverse(&p)).map_err(err)?.is_identity(), || {
            format!("p={p}")
        })
    }),
    ("symmetric.action_preserves_relators", |c| {
        let n = c.n(3);
        let p = random_perm(c.rng, n);
        let [i, j, k] = random_triple(c.rng, n);
        let tri = [Pair::new(i, j), Pair::new(i, k), Pair::new(j, k)].map(|x| p.map_pair(x));
        ensure(is_triangle(tri[0], tri[1], tri[2]), || format!("triangle {i}{j}{k} under {p}"))?;
        ensure(Pair::new(i, j).shares_index(Pair::new(i, k)) == tri[0].shares_index(tri[1]), || format!("{p}"))?;
        if n.get() >= 4 {
            let l = (1..=n.get()).find(|x| ![i, j, k].contains(x)).expect("n >= 4");
            ensure(p.map_pair(Pair::new(i, j)).is_disjoint(p.map_pair(Pair::new(k, l))), || format!("{p}"))?;
        }
        Ok(())
    }),
    ("rewrite.length_preservation", |c| {
        let n = c.n(2);
        let w = c.word(Family::G, n);
        ensure(co_word(&w).map_err(err)?.len() == w.len(), || format!("w={w}"))
    }),
    ("rewrite.round_trip", |c| {
        let n = c.n(2);
        let w = c.word(Family::G, n);
        let v = co_word(&w).map_err(err)?;
        ensure(co_inverse(&v).map_err(err)? == w, || format!("w={w}"))?;
        let v = c.word(Family::C, n);
        ensure(co_word(&co_inverse(&v).map_err(err)?).map_err(err)? == v, || format!("v={v}"))
    }),
    ("rewrite.permutation_law", |c| {
        let n = c.n(2);
        let w = c.word(Family::G, n);
        let v = co_word(&w).map_err(err)?;
        ensure(trace(&w) == inverse(&trace(&v)), || format!("w={w}"))
    }),
    ("rewrite.relator_soundness", |c| {
        let n = c.n(3);
        let max_len = c.profile.max_len();
        let inst = plant_relator(c.rng, n, max_len);
        check_relator_image(&inst, &ReflectionRep::new(n))
    }),
    ("rewrite.pure_homomorphism", |c| {
        let n = c.n(2);
        let half = c.rng.gen_range(0..=c.profile.max_len() / 2);
        let w1 = random_pure_word(c.rng, n, half);
        let w2 = c.word(Family::G, n);
        let lhs = co_word(&w1.concat(&w2).map_err(err)?).map_err(err)?;
        let rhs = co_word(&w1).map_err(err)?.concat(&co_word(&w2).map_err(err)?).map_err(err)?;
        ensure(is_pure(&w1) && lhs == rhs, || format!("w1={w1} w2={w2}"))
    }),
    ("rewrite.pure_image_in_kernel", |c| {
        let n = c.n(2);
        let half = c.rng.gen_range(0..=c.profile.max_len() / 2);
        let w = random_pure_word(c.rng, n, half);
        ensure(trace(&co_word(&w).map_err(err)?).is_identity(), || format!("w={w}"))
    }),
    ("rewrite.embed_homomorphism", |c| {
        let n = c.n(2);
        let (u, v) = (c.word(Family::G, n), c.word(Family::G, n));
        let lhs = embed(&u.concat(&v).map_err(err)?).map_err(err)?;
        let rhs = semidirect_mul(&embed(&u).map_err(err)?, &embed(&v).map_err(err)?).map_err(err)?;
        ensure(lhs == rhs, || format!("u={u} v={v}"))
    }),
    ("rewrite.semidirect_inverse", |c| {
        let n = c.n(2);
        let f = c.family();
        let x = crate::rewrite::SemidirectElement { part: c.word(f, n), perm: random_perm(c.rng, n) };
        let id = semidirect_mul(&x, &semidirect_inv(&x)).map_err(err)?;
        ensure(is_identity_element(&id).map_err(err)?, || format!("x=({}, {})", x.part, x.perm))
    }),
    ("coxeter.move_soundness", |c| {
        let n = c.n(2);
        let f = c.family();
        let w = c.word(f, n);
        let rep = ReflectionRep::new(n);
        let key = element_key(&rep, &w).map_err(err)?;
        for next in crate::moves::neighbors(&w, false) {
            ensure(element_key(&rep, &next).map_err(err)? == key, || format!("{w} -> {next}"))?;
        }
        Ok(())
    }),
    ("coxeter.reduce_idempotent", |c| {
        let n = StrandCount::new(c.rng.gen_range(3..=5)).expect("valid");
        let f = c.family();
        let len = c.rng.gen_range(0..=10);
        let w = random_word(c.rng, f, n, len);
        let r = reduce(&w, DEFAULT_BUDGET).map_err(err)?.word;
        let rr = reduce(&r, DEFAULT_BUDGET).map_err(err)?.word;
        ensure(r == rr, || format!("w={w}: {r} then {rr}"))
    }),
    ("coxeter.element_preservation", |c| {
        let n = StrandCount::new(c.rng.gen_range(3..=5)).expect("valid");
        let f = c.family();
        let len = c.rng.gen_range(0..=10);
        let w = random_word(c.rng, f, n, len);
        let r = reduce(&w, DEFAULT_BUDGET).map_err(err)?.word;
        ensure(equal_elements(&w, &r).map_err(err)?, || format!("w={w} reduced to {r}"))
    }),
    ("coxeter.length_correspondence", |c| {
        let n = StrandCount::new(c.rng.gen_range(3..=5)).expect("valid");
        let len = c.rng.gen_range(0..=10);
        let w = random_word(c.rng, Family::G, n, len);
        let a = reduce(&w, DEFAULT_BUDGET).map_err(err)?.word.len();
        let b = reduce(&co_word(&w).map_err(err)?, DEFAULT_BUDGET).map_err(err)?.word.len();
        ensure(a == b, || format!("w={w}: {a} vs {b}"))
    }),
    ("geomrep.relation_compliance", |c| {
        let n = c.n(2);
        let rep = ReflectionRep::new(n);
        let (s, t) = (random_pair(c.rng, n), random_pair(c.rng, n));
        let order = if s == t { 1 } else if s.shares_index(t) { 3 } else { 2 };
        let word: Vec<Pair> = [s, t].repeat(order);
        let proper: Vec<Pair> = [s, t].repeat(order - 1);
        ensure(rep.rho_letters(&word).is_identity() && (order == 1 || !rep.rho_letters(&proper).is_identity()), || {
            format!("s={s:?} t={t:?}")
        })
    }),
    ("geomrep.equality_backend", |c| {
        let n = c.n(2);
        let rep = ReflectionRep::new(n);
        let u = c.word(Family::C, n);
        let v = if c.rng.gen_bool(0.5) { scramble(c.rng, &u, 5) } else { c.word(Family::C, n) };
        let direct = rep.rho(&u).map_err(err)? == rep.rho(&v).map_err(err)?;
        let via_identity = rep.rho(&u.concat(&v.reversed()).map_err(err)?).map_err(err)?.is_identity();
        ensure(direct == via_identity, || format!("u={u} v={v}"))
    }),
    ("oracle.concordance", |c| {
        let n = StrandCount::new(3).expect("valid");
        let f = c.family();
        let len = c.rng.gen_range(0..=4);
        let u = random_word(c.rng, f, n, len);
        let v = if c.rng.gen_bool(0.5) { scramble(c.rng, &u, 3) } else { random_word(c.rng, f, n, len) };
        if v.len() > 6 {
            return Ok(());
        }
        let max_len = u.len().max(v.len()) + 2;
        let o = oracle_equal(&u, &v, max_len, DEFAULT_BUDGET).map_err(err)?;
        let o_rev = oracle_equal(&v, &u, max_len, DEFAULT_BUDGET).map_err(err)?;
        let e = equal_elements(&u, &v).map_err(err)?;
        ensure(o == e && o == o_rev, || format!("u={u} v={v}: oracle {o}/{o_rev}, exact {e}"))
    }),
];

#[derive(Debug, Clone, Serialize)]
pub struct InvariantResult {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl InvariantResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub trials: usize,
    pub seed: u64,
    pub profile: Profile,
    pub results: Vec<InvariantResult>,
    pub warnings: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(InvariantResult::passed)
    }
}

pub fn invariant_names() -> Vec<&'static str> {
    INVARIANTS.iter().map(|(name, _)| *name).collect()
}

/// Runs every invariant `trials` times.
pub fn run_suite(trials: usize, seed: u64, profile: Profile) -> SuiteReport {
    let mut warnings = Vec::new();
    if trials == 0 {
        warnings.push("0 trials: every invariant passes vacuously".to_string());
    }
    let results = INVARIANTS
        .iter()
        .enumerate()
        .map(|(k, (name, check))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(k as u64));
            let mut failures = 0;
            let mut counterexample = None;
            for _ in 0..trials {
                let mut ctx = Ctx { rng: &mut rng, profile };
                if let Err(msg) = check(&mut ctx) {
                    failures += 1;
                    counterexample.get_or_insert(msg);
                }
            }
            InvariantResult { name, trials, failures, counterexample }
        })
        .collect();
    SuiteReport { trials, seed, profile, results, warnings }
}
