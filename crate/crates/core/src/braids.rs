//! Braid words, the Artin action on the free group, and the word problem by
//! handle reduction.
//!
//! Text form: whitespace-separated tokens `s<i>` with an optional trailing `'`,
//! `1 <= i < strands`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::autos::{artin_generator, FreeEndo};
use crate::words::{format_letters, parse_tokens, Letter};
use crate::{Error, Result};

/// Default cap on handle-reduction rewrite steps.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// A word in the standard generators of the braid group on `strands` strands.
/// Letters reuse [`Letter`] with `index` in `1..strands`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::InvalidArgument(alloc::format!("braid group needs at least 2 strands, got {strands}")));
        }
        if let Some(l) = letters.iter().find(|l| l.index == 0 || l.index >= strands) {
            return Err(Error::IndexOutOfRange { index: l.index, rank: strands - 1 });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    /// Convenience constructor from signed indices: `[1, -2]` is `s1 s2'`.
    pub fn from_signed(strands: usize, letters: &[i64]) -> Result<Self> {
        let letters = letters
            .iter()
            .map(|&v| Letter::from_signed(v).ok_or(Error::IndexOutOfRange { index: 0, rank: strands - 1 }))
            .collect::<Result<_>>()?;
        Self::new(strands, letters)
    }

    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        let tokens = parse_tokens(text, 's')?;
        let mut letters = Vec::with_capacity(tokens.len());
        for (pos, l) in tokens {
            if l.index == 0 || l.index >= strands {
                return Err(Error::Syntax {
                    pos,
                    msg: alloc::format!("generator s{} out of range for {} strands", l.index, strands),
                });
            }
            letters.push(l);
        }
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
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

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::RankMismatch { left: self.strands, right: other.strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// The automorphism of the free group of rank `strands` induced by this
    /// braid; letters compose left to right.
    pub fn artin_action(&self) -> FreeEndo {
        let mut e = FreeEndo::identity(self.strands);
        for l in &self.letters {
            let g = artin_generator(self.strands, l.index, l.inverse).expect("validated index");
            e = e.compose(&g).expect("same rank");
        }
        e
    }

    /// Handle reduction with the default step budget.
    pub fn handle_reduce(&self) -> Result<BraidWord> {
        self.handle_reduce_with_budget(DEFAULT_BUDGET)
    }

    /// Repeatedly reduces the handle with the leftmost right end until the word
    /// is handle-free. The result is empty iff the braid is trivial.
    pub fn handle_reduce_with_budget(&self, budget: usize) -> Result<BraidWord> {
        let mut word = self.letters.clone();
        let mut steps = 0;
        let mut last: Vec<Option<usize>> = alloc::vec![None; self.strands + 1];
        while let Some((p, q)) = find_handle(&word, &mut last) {
            if steps == budget {
                return Err(Error::ResourceLimit { steps });
            }
            steps += 1;
            word = reduce_handle(&word, p, q);
        }
        Ok(BraidWord { strands: self.strands, letters: word })
    }
}

/// Leftmost-ending handle `(start, end)`, inclusive bounds.
fn find_handle(word: &[Letter], last: &mut [Option<usize>]) -> Option<(usize, usize)> {
    last.iter_mut().for_each(|x| *x = None);
    for (j, l) in word.iter().enumerate() {
        let i = l.index;
        if let Some(p) = last[i] {
            let blocked = last[i - 1].is_some_and(|b| b > p);
            if !blocked && word[p].inverse != l.inverse {
                return Some((p, j));
            }
        }
        last[i] = Some(j);
    }
    None
}

/// `s_i^e w s_i^-e -> w'` where each `s_{i+1}^d` in `w` becomes
/// `s_{i+1}^-e s_i^d s_{i+1}^e`.
fn reduce_handle(word: &[Letter], p: usize, q: usize) -> Vec<Letter> {
    let i = word[p].index;
    let e_inv = word[p].inverse;
    let mut out = Vec::with_capacity(word.len() + 2 * (q - p));
    out.extend_from_slice(&word[..p]);
    for &l in &word[p + 1..q] {
        if l.index == i + 1 {
            out.push(Letter::new(i + 1, !e_inv));
            out.push(Letter::new(i, l.inverse));
            out.push(Letter::new(i + 1, e_inv));
        } else {
            out.push(l);
        }
    }
    out.extend_from_slice(&word[q + 1..]);
    out
}

/// Equality in the braid group by handle reduction of `b1 b2^-1`.
pub fn braid_equal(b1: &BraidWord, b2: &BraidWord) -> Result<bool> {
    braid_equal_with_budget(b1, b2, DEFAULT_BUDGET)
}

pub fn braid_equal_with_budget(b1: &BraidWord, b2: &BraidWord, budget: usize) -> Result<bool> {
    Ok(b1.concat(&b2.inverse())?.handle_reduce_with_budget(budget)?.is_empty())
}

/// Equality in the braid group by comparing Artin actions.
pub fn artin_equal(b1: &BraidWord, b2: &BraidWord) -> Result<bool> {
    if b1.strands != b2.strands {
        return Err(Error::RankMismatch { left: b1.strands, right: b2.strands });
    }
    Ok(b1.artin_action() == b2.artin_action())
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = format_letters(&self.letters, 's');
        f.write_str(&s)
    }
}
