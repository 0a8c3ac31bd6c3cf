//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p freebraid-cli --test acceptance -- --nocapture --test-threads 1`
//! to see them in order.

use std::collections::HashMap;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use freebraid::coxeter::element_key;
use freebraid::oracle::{ball, oracle_equal, partition, BallBackend};
use freebraid::presentation::verify_presentation_maps;
use freebraid::suite::{check_relator_image, plant_relator, random_pure_word, random_word};
use freebraid::{
    co_inverse, co_rewrite, embed, inverse, is_pure, parse_word, reduce, reduced_word_orbit, semidirect_mul, trace,
    Family, Pair, Permutation, PresentationOptions, ReflectionRep, StrandCount, Word, DEFAULT_BUDGET,
};

const SEED: u64 = 20_240_917;
const RANDOM_TRIALS: usize = 10_000;
const PURE_TRIALS: usize = 1_000;
const CONCORDANCE_PAIRS: usize = 1_000;
/// Median wall time allowed for rewriting the three-letter example.
const REWRITE_LATENCY: Duration = Duration::from_millis(1);
/// Sphere sizes of the `C(3,2)` Cayley graph, radii 0 through 10.
const C3_SPHERES: [u64; 11] = [1, 3, 6, 9, 12, 15, 18, 21, 24, 27, 30];

fn n(k: usize) -> StrandCount {
    StrandCount::new(k).unwrap()
}

fn report(name: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(detail) => println!("PASS {name}: {detail}"),
        Err(detail) => {
            println!("FAIL {name}: {detail}");
            panic!("{name} failed: {detail}");
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_words(family: Family, n: StrandCount, max_len: usize) -> Vec<Word> {
    let gens: Vec<Pair> = n.pairs().collect();
    let mut out = vec![Word::empty(family, n)];
    let mut layer = vec![Vec::<Pair>::new()];
    for _ in 0..max_len {
        let next: Vec<Vec<Pair>> = layer
            .iter()
            .flat_map(|w| gens.iter().map(move |&g| [w.as_slice(), &[g]].concat()))
            .collect();
        out.extend(next.iter().map(|l| Word::new(family, n, l.clone()).unwrap()));
        layer = next;
    }
    out
}

fn random_g_word(rng: &mut ChaCha8Rng, max_n: usize, max_len: usize) -> Word {
    let k = rng.gen_range(2..=max_n);
    let len = rng.gen_range(0..=max_len);
    random_word(rng, Family::G, n(k), len)
}

/// Rewrites by following every strand from the start for each letter, with
/// no state carried between letters.
fn simulate_rewrite(w: &Word) -> Word {
    let k = w.n().get();
    let letters = w.letters();
    let mut out = Vec::with_capacity(letters.len());
    for (p, letter) in letters.iter().enumerate() {
        let landing = |start: usize| {
            letters[..p].iter().fold(start, |x, t| {
                if x == t.lo() {
                    t.hi()
                } else if x == t.hi() {
                    t.lo()
                } else {
                    x
                }
            })
        };
        let origin = |pos: usize| (1..=k).find(|&y| landing(y) == pos).unwrap();
        let (x, y) = (origin(letter.lo()), origin(letter.hi()));
        out.push(Pair::new(x.min(y), x.max(y)));
    }
    Word::new(Family::C, w.n(), out).unwrap()
}

fn strand_origins(w: &Word, upto: usize) -> Permutation {
    let k = w.n().get();
    let mut pos: Vec<usize> = (1..=k).collect();
    for t in &w.letters()[..upto] {
        pos.swap(t.lo() - 1, t.hi() - 1);
    }
    Permutation::from_one_line(&pos).unwrap()
}

#[test]
fn c01_cli_rewrites_the_three_letter_example() {
    report("c01 cli rewrite prefix", (|| {
        let out = Command::new(env!("CARGO_BIN_EXE_freebraid"))
            .args(["rewrite", "-n", "3", "a12 a13 a23", "--json"])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || format!("exit status {}", out.status))?;
        let record: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        let payload = &record["payload"];
        ensure(payload["target"] == "b12 b23 b12", || format!("target {}", payload["target"]))?;
        let expected = serde_json::json!([[1, 2, 3], [2, 1, 3], [3, 1, 2], [3, 2, 1]]);
        ensure(payload["sigmas"] == expected, || format!("sigmas {}", payload["sigmas"]))?;

        let w = parse_word("a12 a13 a23", n(3)).unwrap();
        let mut times: Vec<Duration> = (0..101)
            .map(|_| {
                let start = Instant::now();
                std::hint::black_box(co_rewrite(std::hint::black_box(&w)).unwrap());
                start.elapsed()
            })
            .collect();
        times.sort();
        let median = times[times.len() / 2];
        ensure(median < REWRITE_LATENCY, || format!("median {median:?}"))?;
        Ok(format!("target b12 b23 b12, median core latency {median:?}"))
    })());
}

#[test]
fn c02_rewrite_matches_full_example_and_simulator() {
    report("c02 rewrite vs simulator", (|| {
        let w = parse_word("a12 a13 a23 a13 a23", n(3)).unwrap();
        let t = co_rewrite(&w).unwrap();
        ensure(t.target.to_string() == "b12 b23 b12 b13 b23", || format!("five-letter image {}", t.target))?;
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..RANDOM_TRIALS {
            let w = random_g_word(&mut rng, 6, 40);
            let got = co_rewrite(&w).unwrap().target;
            let want = simulate_rewrite(&w);
            ensure(got == want, || format!("{w}: engine {got}, simulator {want}"))?;
        }
        Ok(format!("{RANDOM_TRIALS} random words agree"))
    })());
}

#[test]
fn c03_relators_map_to_equal_elements() {
    report("c03 relator soundness", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
        let reps: HashMap<usize, ReflectionRep> = (3..=5).map(|k| (k, ReflectionRep::new(n(k)))).collect();
        for _ in 0..RANDOM_TRIALS {
            let k = rng.gen_range(3..=5);
            let inst = plant_relator(&mut rng, n(k), 30);
            check_relator_image(&inst, &reps[&k]).map_err(|e| format!("{}: {e}", inst.before))?;
        }
        Ok(format!("{RANDOM_TRIALS} planted relators"))
    })());
}

#[test]
fn c04_permutation_law() {
    report("c04 permutation law", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
        for _ in 0..RANDOM_TRIALS {
            let w = random_g_word(&mut rng, 6, 40);
            let t = co_rewrite(&w).unwrap();
            for p in 0..=w.len() {
                let sigma = strand_origins(&w, p);
                ensure(t.sigmas[p] == sigma, || format!("{w}: sigma_{p} {} vs {sigma}", t.sigmas[p]))?;
                if p > 0 {
                    let (s, l) = (&t.sigmas[p - 1], w.letters()[p - 1]);
                    let (x, y) = (s.apply(l.lo()), s.apply(l.hi()));
                    let letter = Pair::new(x.min(y), x.max(y));
                    ensure(t.target.letters()[p - 1] == letter, || format!("{w}: letter {p}"))?;
                }
            }
            ensure(*t.final_sigma() == inverse(&trace(&w)), || format!("{w}: final sigma"))?;
        }
        Ok(format!("{RANDOM_TRIALS} words, every prefix"))
    })());
}

#[test]
fn c05_round_trip() {
    report("c05 round trip", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
        for _ in 0..RANDOM_TRIALS {
            let w = random_g_word(&mut rng, 6, 40);
            let back = co_inverse(&co_rewrite(&w).unwrap().target).unwrap();
            ensure(back == w, || format!("{w} came back as {back}"))?;
            let v = random_word(&mut rng, Family::C, w.n(), w.len());
            let again = co_rewrite(&co_inverse(&v).unwrap()).unwrap().target;
            ensure(again == v, || format!("{v} came back as {again}"))?;
        }
        Ok(format!("{RANDOM_TRIALS} words each direction"))
    })());
}

#[test]
fn c06_pure_words_rewrite_homomorphically() {
    report("c06 pure homomorphism", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
        for _ in 0..PURE_TRIALS {
            let k = rng.gen_range(3..=6);
            let half = rng.gen_range(0..=10);
            let w1 = random_pure_word(&mut rng, n(k), half);
            ensure(is_pure(&w1), || format!("{w1} is not pure"))?;
            let len = rng.gen_range(0..=20);
            let w2 = random_word(&mut rng, Family::G, n(k), len);
            let whole = co_rewrite(&w1.concat(&w2).unwrap()).unwrap().target;
            let parts = co_rewrite(&w1).unwrap().target.concat(&co_rewrite(&w2).unwrap().target).unwrap();
            ensure(whole == parts, || format!("{w1} | {w2}: {whole} vs {parts}"))?;
        }
        Ok(format!("{PURE_TRIALS} pure prefixes"))
    })());
}

#[test]
fn c07_presentation_maps_and_embedding() {
    report("c07 presentation maps", (|| {
        let opts = PresentationOptions::default();
        let mut checked = 0;
        for k in 2..=4 {
            for rep in verify_presentation_maps(n(k), &opts).map_err(|e| e.to_string())? {
                checked += rep.checks.len();
                if let Some(f) = rep.failures().next() {
                    return Err(format!("n={k} {}: {} fails", rep.direction, f.relator));
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
        for _ in 0..RANDOM_TRIALS {
            let k = rng.gen_range(2..=6);
            let (a, b) = (rng.gen_range(0..=20), rng.gen_range(0..=20));
            let u = random_word(&mut rng, Family::G, n(k), a);
            let v = random_word(&mut rng, Family::G, n(k), b);
            let whole = embed(&u.concat(&v).unwrap()).unwrap();
            let product = semidirect_mul(&embed(&u).unwrap(), &embed(&v).unwrap()).unwrap();
            ensure(whole == product, || format!("embed({u} | {v}) is not a product"))?;
        }
        Ok(format!("{checked} relator checks, {RANDOM_TRIALS} embedding pairs"))
    })());
}

/// Oracle labels that no longer change when the length cap grows.
fn stable_partition(words: &[Word], caps: &[usize]) -> Result<Vec<usize>, String> {
    let mut previous: Option<Vec<usize>> = None;
    for &cap in caps {
        let labels = partition(words, cap, 50_000_000).map_err(|e| e.to_string())?;
        if let Some(p) = &previous {
            ensure(p == &labels, || format!("oracle classes change at max_len {cap}"))?;
        }
        previous = Some(labels);
    }
    Ok(previous.unwrap())
}

#[test]
fn c08_matrix_equality_matches_the_oracle() {
    report("c08 oracle concordance", (|| {
        let words = all_words(Family::G, n(3), 6);
        let labels = stable_partition(&words, &[6, 8])?;
        let rep = ReflectionRep::new(n(3));
        let keys: Vec<_> = words.iter().map(|w| element_key(&rep, w).unwrap()).collect();
        let mut key_to_label = HashMap::new();
        let mut label_to_key = HashMap::new();
        for ((w, key), &label) in words.iter().zip(&keys).zip(&labels) {
            ensure(*key_to_label.entry(key).or_insert(label) == label, || format!("{w}: equal matrices, oracle splits"))?;
            ensure(*label_to_key.entry(label).or_insert(key) == key, || format!("{w}: oracle joins, matrices differ"))?;
        }
        let pairs = words.len() * (words.len() - 1) / 2;

        let words4 = all_words(Family::G, n(4), 4);
        let labels4 = stable_partition(&words4, &[4, 6])?;
        let rep4 = ReflectionRep::new(n(4));
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
        let mut equal_pairs = 0;
        for _ in 0..CONCORDANCE_PAIRS {
            let (i, j) = (rng.gen_range(0..words4.len()), rng.gen_range(0..words4.len()));
            let (u, v) = (&words4[i], &words4[j]);
            let by_matrix = element_key(&rep4, u).unwrap() == element_key(&rep4, v).unwrap();
            ensure(by_matrix == (labels4[i] == labels4[j]), || format!("n=4 {u} vs {v}"))?;
            if by_matrix {
                equal_pairs += 1;
                let direct = oracle_equal(u, v, 4, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                ensure(direct, || format!("n=4 {u} vs {v}: direct oracle disagrees"))?;
            }
        }
        Ok(format!(
            "n=3: {pairs} pairs over {} classes; n=4: {CONCORDANCE_PAIRS} pairs ({equal_pairs} equal)",
            label_to_key.len()
        ))
    })());
}

#[test]
fn c09_equal_reduced_words_are_move_connected() {
    report("c09 reduced orbit completeness", (|| {
        let words = all_words(Family::G, n(3), 6);
        let labels = stable_partition(&words, &[6, 8])?;
        let mut groups: HashMap<usize, Vec<&Word>> = HashMap::new();
        for (w, &label) in words.iter().zip(&labels) {
            if reduce(w, DEFAULT_BUDGET).unwrap().word.len() == w.len() {
                groups.entry(label).or_default().push(w);
            }
        }
        let mut reduced = 0;
        for group in groups.values() {
            reduced += group.len();
            let orbit = reduced_word_orbit(group[0], DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            for w in group {
                ensure(orbit.contains(*w), || format!("{w} not connected to {}", group[0]))?;
            }
        }
        Ok(format!("{reduced} reduced words in {} elements", groups.len()))
    })());
}

#[test]
fn c10_reflection_representation_is_faithful_on_short_words() {
    report("c10 faithfulness", (|| {
        let rep = ReflectionRep::new(n(3));
        let mut checked = 0usize;
        for w in all_words(Family::C, n(3), 10) {
            let identity = rep.rho(&w).unwrap().is_identity();
            let trivial = reduce(&w, DEFAULT_BUDGET).unwrap().word.is_empty();
            ensure(identity == trivial, || format!("{w}: identity matrix {identity}, reduces to empty {trivial}"))?;
            checked += 1;
        }
        for k in 2..=6 {
            let rep = ReflectionRep::new(n(k));
            let gens: Vec<Pair> = n(k).pairs().collect();
            for &s in &gens {
                for &t in &gens {
                    let order = if s == t {
                        1
                    } else if s.shares_index(t) {
                        3
                    } else {
                        2
                    };
                    let st = [s, t];
                    for m in 1..=order {
                        let power: Vec<Pair> = st.iter().copied().cycle().take(2 * m).collect();
                        let id = rep.rho_letters(&power).is_identity();
                        ensure(id == (m == order), || format!("n={k} ({s:?} {t:?})^{m}"))?;
                    }
                }
            }
        }
        Ok(format!("{checked} words of length <= 10, relation orders for n <= 6"))
    })());
}

#[test]
fn c11_coxeter_ball_growth() {
    report("c11 ball growth", (|| {
        let spheres = ball(n(3), Family::C, 10, BallBackend::Exact, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(spheres.iter().all(|&c| c > 0), || format!("empty sphere in {spheres:?}"))?;
        ensure(spheres == C3_SPHERES, || format!("spheres {spheres:?}"))?;
        let oracle = ball(n(3), Family::C, 6, BallBackend::Oracle { slack: 2 }, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(oracle[..] == spheres[..=6], || format!("oracle spheres {oracle:?}"))?;
        let cumulative: Vec<u64> = spheres.iter().scan(0, |acc, &c| Some(*acc + c).inspect(|&s| *acc = s)).collect();
        ensure(cumulative.windows(2).all(|p| p[0] < p[1]), || "ball sizes not increasing".into())?;
        Ok(format!("spheres {spheres:?}, ball sizes {cumulative:?}"))
    })());
}
