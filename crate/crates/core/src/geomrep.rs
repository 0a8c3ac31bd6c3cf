//! Exact integer reflection representation of the Coxeter group `C(n,2)`.
//!
//! The basis is `{α_t}` indexed by pairs in generator order. Generator `s`
//! sends `α_s ↦ -α_s`, `α_t ↦ α_t + α_s` when `t` shares an index with `s`,
//! and fixes every other `α_t`. Since all edge labels are 2 or 3 the entries
//! stay integral, and the representation is faithful, so matrix equality
//! decides the word problem.
//!
//! Matrices act on row vectors from the right: row `t` of a generator matrix
//! is the image of `α_t`, the first letter of a word acts first, and
//! `rho(uv) = rho(u) * rho(v)`.
//!
//! Entries are `i64` with checked arithmetic and switch to `BigInt` on
//! overflow. A matrix is stored small exactly when every entry fits, so the
//! derived equality and hashing are value-based.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::Result;
use crate::words::{Family, Pair, StrandCount, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Entries {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

/// A square integer matrix in the reflection representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReflectionMatrix {
    dim: usize,
    entries: Entries,
}

impl ReflectionMatrix {
    pub fn identity(dim: usize) -> ReflectionMatrix {
        let mut e = vec![0i64; dim * dim];
        for i in 0..dim {
            e[i * dim + i] = 1;
        }
        ReflectionMatrix { dim, entries: Entries::Small(e) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> BigInt {
        match &self.entries {
            Entries::Small(e) => BigInt::from(e[row * self.dim + col]),
            Entries::Big(e) => e[row * self.dim + col].clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match &self.entries {
            Entries::Small(e) => e
                .iter()
                .enumerate()
                .all(|(k, &x)| x == i64::from(k / self.dim == k % self.dim)),
            // Big matrices have an entry outside i64, so they are never the identity.
            Entries::Big(_) => false,
        }
    }

    /// True when the entries had to be promoted to arbitrary precision.
    pub fn is_big(&self) -> bool {
        matches!(self.entries, Entries::Big(_))
    }

    /// Row-major grid of decimal entries.
    pub fn rows(&self) -> Vec<Vec<String>> {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.entry(r, c).to_string()).collect())
            .collect()
    }

    /// FNV-1a over the row-major decimal entries; stable across runs.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for r in 0..self.dim {
            for c in 0..self.dim {
                for b in self.entry(r, c).to_string().bytes().chain(std::iter::once(b';')) {
                    h ^= b as u64;
                    h = h.wrapping_mul(0x0000_0100_0000_01b3);
                }
            }
        }
        h
    }

    /// Plain matrix product `self * other`, used by tests and diagnostics.
    pub fn mul(&self, other: &ReflectionMatrix) -> ReflectionMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let mut out = vec![BigInt::zero(); d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.entry(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..d {
                    out[r * d + c] += &a * other.entry(k, c);
                }
            }
        }
        ReflectionMatrix::from_big(d, out)
    }

    fn from_big(dim: usize, entries: Vec<BigInt>) -> ReflectionMatrix {
        match entries.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>() {
            Some(small) => ReflectionMatrix { dim, entries: Entries::Small(small) },
            None => ReflectionMatrix { dim, entries: Entries::Big(entries) },
        }
    }

    fn promote(&mut self) {
        if let Entries::Small(e) = &self.entries {
            self.entries = Entries::Big(e.iter().map(|&x| BigInt::from(x)).collect());
        }
    }

    fn demote_if_possible(&mut self) {
        if let Entries::Big(e) = &self.entries {
            if let Some(small) = e.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>() {
                self.entries = Entries::Small(small);
            }
        }
    }

    /// In-place right multiplication by the generator whose column is `col`
    /// and whose neighbours are `adjacent`: only column `col` changes.
    fn right_mul_generator(&mut self, col: usize, adjacent: &[usize]) {
        let d = self.dim;
        if let Entries::Small(e) = &mut self.entries {
            let mut overflow = false;
            let mut updated = Vec::with_capacity(d);
            for r in 0..d {
                let row = &e[r * d..(r + 1) * d];
                let v = row[col]
                    .checked_neg()
                    .and_then(|init| adjacent.iter().try_fold(init, |acc, &t| acc.checked_add(row[t])));
                match v {
                    Some(v) => updated.push(v),
                    None => {
                        overflow = true;
                        break;
                    }
                }
            }
            if !overflow {
                for (r, v) in updated.into_iter().enumerate() {
                    e[r * d + col] = v;
                }
                return;
            }
            self.promote();
        }
        if let Entries::Big(e) = &mut self.entries {
            for r in 0..d {
                let row = &e[r * d..(r + 1) * d];
                let mut v = -row[col].clone();
                for &t in adjacent {
                    v += &row[t];
                }
                e[r * d + col] = v;
            }
        }
    }
}

impl fmt::Display for ReflectionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// The reflection representation for a fixed strand count. Holds the
/// adjacency of the Coxeter graph so repeated products do not rebuild it.
#[derive(Debug, Clone)]
pub struct ReflectionRep {
    n: StrandCount,
    adjacency: Vec<Vec<usize>>,
}

impl ReflectionRep {
    pub fn new(n: StrandCount) -> ReflectionRep {
        let pairs: Vec<Pair> = n.pairs().collect();
        let adjacency = pairs
            .iter()
            .map(|&s| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(_, &t)| s.shares_index(t))
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        ReflectionRep { n, adjacency }
    }

    pub fn n(&self) -> StrandCount {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.adjacency.len()
    }

    pub fn generator_matrix(&self, s: Pair) -> ReflectionMatrix {
        let mut m = ReflectionMatrix::identity(self.dim());
        m.right_mul_generator(s.index_in(self.n), &self.adjacency[s.index_in(self.n)]);
        m
    }

    /// Product of the generator matrices of a `C` word.
    pub fn rho(&self, w: &Word) -> Result<ReflectionMatrix> {
        w.expect_family(Family::C)?;
        self.check_n(w)?;
        Ok(self.rho_letters(w.letters()))
    }

    /// Same product, read off a bare letter sequence.
    pub fn rho_letters(&self, letters: &[Pair]) -> ReflectionMatrix {
        self.extend(ReflectionMatrix::identity(self.dim()), letters)
    }

    /// `m * rho(letters)`.
    pub fn extend(&self, mut m: ReflectionMatrix, letters: &[Pair]) -> ReflectionMatrix {
        for &s in letters {
            let col = s.index_in(self.n);
            m.right_mul_generator(col, &self.adjacency[col]);
        }
        m.demote_if_possible();
        m
    }

    pub fn is_identity(&self, w: &Word) -> Result<bool> {
        Ok(self.rho(w)?.is_identity())
    }

    fn check_n(&self, w: &Word) -> Result<()> {
        if w.n() != self.n {
            return Err(crate::error::Error::SizeMismatch { left: self.n.get(), right: w.n().get() });
        }
        Ok(())
    }
}

pub fn generator_matrix(s: Pair, n: StrandCount) -> ReflectionMatrix {
    ReflectionRep::new(n).generator_matrix(s)
}

pub fn rho(w: &Word) -> Result<ReflectionMatrix> {
    ReflectionRep::new(w.n()).rho(w)
}

pub fn is_identity(w: &Word) -> Result<bool> {
    Ok(rho(w)?.is_identity())
}

/// Forces the arbitrary-precision path; used to cross-check the fast path.
#[doc(hidden)]
pub fn rho_big_only(rep: &ReflectionRep, w: &Word) -> ReflectionMatrix {
    let mut m = ReflectionMatrix::identity(rep.dim());
    m.promote();
    for &s in w.letters() {
        let col = s.index_in(rep.n);
        m.right_mul_generator(col, &rep.adjacency[col]);
    }
    m.demote_if_possible();
    m
}
