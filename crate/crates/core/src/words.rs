//! Freely reduced words over a ranked alphabet `g1, ..., gn` and their inverses.
//!
//! Every constructor reduces eagerly, so two words represent the same free
//! group element exactly when they compare equal.
//!
//! Text form: whitespace-separated tokens `g<i>` with an optional trailing `'`
//! for the inverse letter. The empty string is the identity.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A generator or its inverse. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(index: usize, inverse: bool) -> Self {
        Letter { index, inverse }
    }

    pub const fn pos(index: usize) -> Self {
        Letter { index, inverse: false }
    }

    pub const fn neg(index: usize) -> Self {
        Letter { index, inverse: true }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter { index: self.index, inverse: !self.inverse }
    }

    /// Signed integer encoding, `i` for `gi` and `-i` for `gi'`.
    pub fn to_signed(self) -> i64 {
        self.index as i64 * self.sign()
    }

    pub fn from_signed(value: i64) -> Option<Self> {
        if value == 0 {
            return None;
        }
        Some(Letter { index: value.unsigned_abs() as usize, inverse: value < 0 })
    }
}

/// A freely reduced word in the free group of rank `rank`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

/// Appends `letter` to a reduced buffer, cancelling against the last letter.
fn push_reduced(buf: &mut Vec<Letter>, letter: Letter) {
    if buf.last() == Some(&letter.inv()) {
        buf.pop();
    } else {
        buf.push(letter);
    }
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word { rank, letters: Vec::new() }
    }

    pub fn generator(rank: usize, index: usize) -> Result<Self> {
        Self::from_letters(rank, [Letter::pos(index)])
    }

    /// Builds a word from arbitrary letters, checking bounds and reducing.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(rank: usize, letters: I) -> Result<Self> {
        let mut buf = Vec::new();
        for l in letters {
            if l.index == 0 || l.index > rank {
                return Err(Error::IndexOutOfRange { index: l.index, rank });
            }
            push_reduced(&mut buf, l);
        }
        Ok(Word { rank, letters: buf })
    }

    /// Convenience constructor from signed indices: `[1, 2, -1]` is `g1 g2 g1'`.
    pub fn from_signed(rank: usize, letters: &[i64]) -> Result<Self> {
        let mut out = Vec::with_capacity(letters.len());
        for &v in letters {
            out.push(Letter::from_signed(v).ok_or(Error::IndexOutOfRange { index: 0, rank })?);
        }
        Self::from_letters(rank, out)
    }

    pub(crate) fn from_reduced_unchecked(rank: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != w[1].inv()));
        Word { rank, letters }
    }

    /// Parses the `g<i>` grammar.
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let tokens = parse_tokens(text, 'g')?;
        let mut buf = Vec::with_capacity(tokens.len());
        for (pos, letter) in tokens {
            if letter.index == 0 || letter.index > rank {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("generator index {} out of range for rank {}", letter.index, rank),
                });
            }
            push_reduced(&mut buf, letter);
        }
        Ok(Word { rank, letters: buf })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_rank(&self, other: &Word) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    /// Reduced product `self * other`.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.check_rank(other)?;
        Ok(self.concat_unchecked(other))
    }

    pub(crate) fn concat_unchecked(&self, other: &Word) -> Word {
        let mut buf = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut buf, l);
        }
        Word { rank: self.rank, letters: buf }
    }

    pub fn invert(&self) -> Word {
        Word { rank: self.rank, letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..n.unsigned_abs() {
            out = out.concat_unchecked(&base);
        }
        out
    }

    /// `u * self * u^-1`.
    pub fn conjugate_by(&self, u: &Word) -> Result<Word> {
        u.concat(self)?.concat(&u.invert())
    }

    /// Signed letter count per generator (the image in `Z^rank`).
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = alloc::vec![0i64; self.rank];
        for l in &self.letters {
            sums[l.index - 1] += l.sign();
        }
        sums
    }

    /// Reinterprets the word in a larger (or equal) rank alphabet.
    pub fn with_rank(&self, rank: usize) -> Result<Word> {
        Word::from_letters(rank, self.letters.iter().copied())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.index)?;
        if self.inverse {
            f.write_str("'")?;
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Tokenizes `<prefix><decimal>['] ...`, returning byte offsets and letters.
/// Index bounds are left to the caller.
pub(crate) fn parse_tokens(text: &str, prefix: char) -> Result<Vec<(usize, Letter)>> {
    let mut out = Vec::new();
    let mut rest = text;
    let mut offset = 0;
    loop {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        rest = trimmed;
        if rest.is_empty() {
            break;
        }
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let token = &rest[..end];
        out.push((offset, parse_token(token, prefix, offset)?));
        offset += end;
        rest = &rest[end..];
    }
    Ok(out)
}

fn parse_token(token: &str, prefix: char, pos: usize) -> Result<Letter> {
    let err = |msg: String| Error::Syntax { pos, msg };
    let body = token
        .strip_prefix(prefix)
        .ok_or_else(|| err(format!("expected `{prefix}<index>`, found `{token}`")))?;
    let (digits, inverse) = match body.strip_suffix('\'') {
        Some(d) => (d, true),
        None => (body, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(format!("malformed token `{token}`")));
    }
    let index: usize = digits.parse().map_err(|_| err(format!("index too large in `{token}`")))?;
    Ok(Letter { index, inverse })
}

/// Formats a sequence of letters with a custom generator prefix.
pub(crate) fn format_letters(letters: &[Letter], prefix: char) -> String {
    let mut s = String::new();
    for (i, l) in letters.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push(prefix);
        s.push_str(&format!("{}", l.index));
        if l.inverse {
            s.push('\'');
        }
    }
    s
}
