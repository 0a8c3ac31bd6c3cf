//! Generators, words, and the text format shared by both word families.
//!
//! A word is a finite sequence of generators from one family: the `a`
//! letters of the free braid group or the `b` letters of the Coxeter group.
//! Each generator is indexed by an unordered pair of distinct strand indices,
//! stored canonically with `lo < hi`. Positions are 1-based throughout.
//!
//! Text grammar:
//!
//! ```text
//! word   := [token {WS token}]
//! token  := family pair
//! family := "a" | "b"
//! pair   := digit digit | "(" nat "," nat ")"
//! digit  := "1".."9"
//! ```

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported strand count. Indices are stored in a byte.
pub const MAX_STRANDS: usize = u8::MAX as usize;

/// Number of strands `n`; every index lies in `1..=n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrandCount(usize);

impl StrandCount {
    pub fn new(n: usize) -> Result<Self> {
        if (2..=MAX_STRANDS).contains(&n) {
            Ok(StrandCount(n))
        } else {
            Err(Error::InvalidStrandCount { got: n, max: MAX_STRANDS })
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Number of unordered pairs, i.e. generators per family.
    pub fn pair_count(self) -> usize {
        self.0 * (self.0 - 1) / 2
    }

    /// All pairs in generator order.
    pub fn pairs(self) -> impl Iterator<Item = Pair> {
        let n = self.0 as u8;
        (1..=n).flat_map(move |lo| ((lo + 1)..=n).map(move |hi| Pair { lo, hi }))
    }
}

impl fmt::Display for StrandCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which presentation a letter belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Free braid group generators, printed `a`.
    G,
    /// Coxeter group generators, printed `b`.
    C,
}

impl Family {
    pub fn prefix(self) -> char {
        match self {
            Family::G => 'a',
            Family::C => 'b',
        }
    }

    pub fn other(self) -> Family {
        match self {
            Family::G => Family::C,
            Family::C => Family::G,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::G => f.write_str("G"),
            Family::C => f.write_str("C"),
        }
    }
}

/// An unordered pair of distinct indices with `lo < hi`.
///
/// The derived ordering is the generator order used for tie-breaking:
/// lexicographic on `(lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    lo: u8,
    hi: u8,
}

impl Pair {
    /// Builds the canonical pair `{i, j}`. Panics if `i == j` or either
    /// index is 0 or exceeds [`MAX_STRANDS`]; use [`Pair::checked`] for input.
    pub fn new(i: usize, j: usize) -> Pair {
        Pair::checked(i, j).expect("invalid index pair")
    }

    pub fn checked(i: usize, j: usize) -> Option<Pair> {
        if i == j || i == 0 || j == 0 || i > MAX_STRANDS || j > MAX_STRANDS {
            return None;
        }
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        Some(Pair { lo: lo as u8, hi: hi as u8 })
    }

    pub fn lo(self) -> usize {
        self.lo as usize
    }

    pub fn hi(self) -> usize {
        self.hi as usize
    }

    pub fn contains(self, x: usize) -> bool {
        self.lo() == x || self.hi() == x
    }

    /// True iff the two pairs are different and have exactly one index in common.
    pub fn shares_index(self, other: Pair) -> bool {
        self != other
            && (self.lo == other.lo || self.lo == other.hi || self.hi == other.lo || self.hi == other.hi)
    }

    pub fn is_disjoint(self, other: Pair) -> bool {
        self.lo != other.lo && self.lo != other.hi && self.hi != other.lo && self.hi != other.hi
    }

    /// Position of this pair in generator order among all pairs of `1..=n`.
    pub fn index_in(self, n: StrandCount) -> usize {
        let (lo, hi, n) = (self.lo(), self.hi(), n.get());
        // pairs with a smaller first index: sum_{a < lo} (n - a)
        (lo - 1) * n - (lo - 1) * lo / 2 + (hi - lo - 1)
    }
}

/// A single letter tagged with its family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub family: Family,
    pub pair: Pair,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pair.hi() <= 9 {
            write!(f, "{}{}{}", self.family.prefix(), self.pair.lo, self.pair.hi)
        } else {
            write!(f, "{}({},{})", self.family.prefix(), self.pair.lo, self.pair.hi)
        }
    }
}

/// A finite sequence of same-family generators over a fixed strand count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    family: Family,
    n: StrandCount,
    letters: Vec<Pair>,
}

impl Word {
    pub fn new(family: Family, n: StrandCount, letters: Vec<Pair>) -> Result<Word> {
        if let Some(bad) = letters.iter().find(|p| p.hi() > n.get()) {
            return Err(Error::IndexOutOfRange { index: bad.hi() as u64, n: n.get(), column: 0 });
        }
        Ok(Word { family, n, letters })
    }

    /// Caller guarantees every index is at most `n`.
    pub(crate) fn from_trusted(family: Family, n: StrandCount, letters: Vec<Pair>) -> Word {
        debug_assert!(letters.iter().all(|p| p.hi() <= n.get()));
        Word { family, n, letters }
    }

    /// Convenience constructor from index tuples; fails on degenerate or
    /// out-of-range pairs.
    pub fn from_pairs(family: Family, n: StrandCount, pairs: &[(usize, usize)]) -> Result<Word> {
        let letters = pairs
            .iter()
            .map(|&(i, j)| {
                if i == j {
                    return Err(Error::DegeneratePair { index: i, column: 0 });
                }
                Pair::checked(i, j).ok_or(Error::IndexOutOfRange { index: i.max(j) as u64, n: n.get(), column: 0 })
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(family, n, letters)
    }

    pub fn empty(family: Family, n: StrandCount) -> Word {
        Word { family, n, letters: Vec::new() }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> StrandCount {
        self.n
    }

    pub fn letters(&self) -> &[Pair] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Pair> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at 1-based position `p`.
    pub fn generator(&self, p: usize) -> Option<Generator> {
        p.checked_sub(1)
            .and_then(|i| self.letters.get(i))
            .map(|&pair| Generator { family: self.family, pair })
    }

    /// The product of the first `p` letters.
    pub fn prefix(&self, p: usize) -> Word {
        Word::from_trusted(self.family, self.n, self.letters[..p.min(self.len())].to_vec())
    }

    /// Same letters, relabelled as the other family.
    pub fn with_family(&self, family: Family) -> Word {
        Word { family, ..self.clone() }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.check_compatible(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word::from_trusted(self.family, self.n, letters))
    }

    /// Letters in reverse order. Since every generator is an involution this
    /// represents the inverse element.
    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word::from_trusted(self.family, self.n, letters)
    }

    pub fn push(&mut self, pair: Pair) -> Result<()> {
        if pair.hi() > self.n.get() {
            return Err(Error::IndexOutOfRange { index: pair.hi() as u64, n: self.n.get(), column: 0 });
        }
        self.letters.push(pair);
        Ok(())
    }

    pub(crate) fn check_compatible(&self, other: &Word) -> Result<()> {
        if self.family != other.family {
            return Err(Error::FamilyMismatch { left: self.family, right: other.family });
        }
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n.get(), right: other.n.get() });
        }
        Ok(())
    }

    pub(crate) fn expect_family(&self, family: Family) -> Result<()> {
        if self.family == family {
            Ok(())
        } else {
            Err(Error::WrongFamily { expected: family, got: self.family })
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let format = if self.letters.iter().all(|p| p.hi() <= 9) {
            WordFormat::Compact
        } else {
            WordFormat::General
        };
        for (k, &pair) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write_letter(f, self.family, pair, format)?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Output style for [`print_word`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordFormat {
    /// `a12`; only for indices up to 9.
    Compact,
    /// `a(1,12)`.
    General,
}

fn write_letter(out: &mut impl fmt::Write, family: Family, pair: Pair, format: WordFormat) -> fmt::Result {
    match format {
        WordFormat::Compact => write!(out, "{}{}{}", family.prefix(), pair.lo, pair.hi),
        WordFormat::General => write!(out, "{}({},{})", family.prefix(), pair.lo, pair.hi),
    }
}

pub fn print_word(w: &Word, format: WordFormat) -> Result<String> {
    if format == WordFormat::Compact {
        if let Some(p) = w.letters.iter().find(|p| p.hi() > 9) {
            return Err(Error::CompactOverflow { index: p.hi() });
        }
    }
    let mut out = String::new();
    for (k, &pair) in w.letters.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        write_letter(&mut out, w.family, pair, format).expect("writing to a String cannot fail");
    }
    Ok(out)
}

/// Parses a word; the empty string yields an empty `G` word.
pub fn parse_word(text: &str, n: StrandCount) -> Result<Word> {
    parse_word_as(text, n, Family::G)
}

/// Parses a word, using `empty_family` only when the text has no letters.
pub fn parse_word_as(text: &str, n: StrandCount, empty_family: Family) -> Result<Word> {
    let mut family = None;
    let mut letters = Vec::new();
    for (start, token) in tokens(text) {
        let column = start + 1;
        let (fam, pair) = parse_token(token, column, n)?;
        match family {
            None => family = Some(fam),
            Some(f) if f != fam => return Err(Error::MixedFamily { column }),
            Some(_) => {}
        }
        letters.push(pair);
    }
    Ok(Word::from_trusted(family.unwrap_or(empty_family), n, letters))
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = text;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let skipped = rest.len() - rest.trim_start().len();
        offset += skipped;
        rest = &rest[skipped..];
        if rest.is_empty() {
            return None;
        }
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let token = (offset, &rest[..end]);
        offset += end;
        rest = &rest[end..];
        Some(token)
    })
}

fn syntax(column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { column, message: message.into() }
}

fn parse_token(token: &str, column: usize, n: StrandCount) -> Result<(Family, Pair)> {
    let mut chars = token.chars();
    let family = match chars.next() {
        Some('a') => Family::G,
        Some('b') => Family::C,
        _ => return Err(syntax(column, format!("expected `a` or `b`, found `{token}`"))),
    };
    let body = chars.as_str();
    let (i, j) = if let Some(inner) = body.strip_prefix('(') {
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| syntax(column, format!("unterminated pair in `{token}`")))?;
        let (x, y) = inner
            .split_once(',')
            .ok_or_else(|| syntax(column, format!("expected `(i,j)` in `{token}`")))?;
        (parse_nat(x, column, token)?, parse_nat(y, column, token)?)
    } else {
        let bytes = body.as_bytes();
        if bytes.len() != 2 || !bytes.iter().all(|b| (b'1'..=b'9').contains(b)) {
            return Err(syntax(column, format!("expected two digits 1-9 in `{token}`")));
        }
        ((bytes[0] - b'0') as u64, (bytes[1] - b'0') as u64)
    };
    for index in [i, j] {
        if index < 1 || index > n.get() as u64 {
            return Err(Error::IndexOutOfRange { index, n: n.get(), column });
        }
    }
    if i == j {
        return Err(Error::DegeneratePair { index: i as usize, column });
    }
    Ok((family, Pair::new(i as usize, j as usize)))
}

fn parse_nat(text: &str, column: usize, token: &str) -> Result<u64> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(column, format!("expected a natural number in `{token}`")));
    }
    // Saturate: anything this large is out of range anyway.
    Ok(text.parse::<u64>().unwrap_or(u64::MAX))
}

/// Deletes the equal letters at 1-based positions `p` and `p + 1`.
pub fn free_cancel_once(w: &Word, p: usize) -> Result<Word> {
    if p == 0 || p >= w.len() {
        return Err(Error::NotApplicable(format!("position {p} out of range for length {}", w.len())));
    }
    if w.letters[p - 1] != w.letters[p] {
        return Err(Error::NotApplicable(format!("letters at {p} and {} differ", p + 1)));
    }
    let mut letters = w.letters.clone();
    letters.drain(p - 1..=p);
    Ok(Word::from_trusted(w.family, w.n, letters))
}
