//! Twist words over bracelet symbols `A_i`, `B_i`, `C_i` (`i` mod `k`),
//! relation sets, single rewrite steps, and a derivation checker.
//!
//! Text form: tokens like `A3`, `B0'`, `C2`, whitespace-separated; indices
//! are reduced mod `k`.
//!
//! Step kinds:
//!
//! - `cancel @p`: delete `x x'` or `x' x` at `p`.
//! - `insert @p x`: insert `x x'` before position `p`.
//! - `commute @p [letters|block-left|block-right]`: swap two commuting
//!   letters, or swap a letter with a conjugated block `y' x y` declared to
//!   commute with it (`block-left`: block then letter at `p`; `block-right`:
//!   letter then block).
//! - `braid @p o`: one of the six rearrangements of `x y x = y x y`, see
//!   [`BRAID_ORIENTATIONS`].
//! - `rotate @p k=<k> [by=<s>]`: replace the bracelet product
//!   `X_j X_{j+1} ... X_{j+k-2}` by `X_{j+s} ... X_{j+s+k-2}`.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::braids::{braid_equal, braid_equal_with_budget, BraidWord};
use crate::words::Letter;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistSymbol {
    pub family: Family,
    pub index: usize,
}

impl TwistSymbol {
    /// Symbol with `index` reduced mod `k`.
    pub fn new(family: Family, index: i64, k: usize) -> Self {
        TwistSymbol { family, index: index.rem_euclid(k as i64) as usize }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistLetter {
    pub symbol: TwistSymbol,
    pub inverse: bool,
}

impl TwistLetter {
    pub fn pos(symbol: TwistSymbol) -> Self {
        TwistLetter { symbol, inverse: false }
    }

    pub fn neg(symbol: TwistSymbol) -> Self {
        TwistLetter { symbol, inverse: true }
    }

    pub fn inv(self) -> Self {
        TwistLetter { symbol: self.symbol, inverse: !self.inverse }
    }
}

/// A word in twist symbols. No reduction is applied.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistWord {
    pub letters: Vec<TwistLetter>,
}

impl TwistWord {
    pub fn new(letters: Vec<TwistLetter>) -> Self {
        TwistWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &TwistWord) -> TwistWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        TwistWord { letters }
    }

    pub fn inverse(&self) -> TwistWord {
        TwistWord { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// Positive product `X_start X_{start+1} ... X_{start+len-1}`.
    pub fn run(family: Family, start: i64, len: usize, k: usize) -> TwistWord {
        TwistWord { letters: (0..len).map(|t| TwistLetter::pos(TwistSymbol::new(family, start + t as i64, k))).collect() }
    }

    pub fn parse(text: &str, k: usize) -> Result<TwistWord> {
        if k == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in text.split_whitespace() {
            let pos = text[offset..].find(token).map_or(offset, |p| p + offset);
            offset = pos + token.len();
            letters.push(parse_twist_token(token, k).map_err(|msg| Error::Syntax { pos, msg })?);
        }
        Ok(TwistWord { letters })
    }
}

pub(crate) fn parse_twist_token(token: &str, k: usize) -> core::result::Result<TwistLetter, String> {
    let mut chars = token.chars();
    let family = match chars.next() {
        Some('A') => Family::A,
        Some('B') => Family::B,
        Some('C') => Family::C,
        _ => return Err(alloc::format!("expected A, B or C at the start of `{token}`")),
    };
    let body = chars.as_str();
    let (digits, inverse) = match body.strip_suffix('\'') {
        Some(d) => (d, true),
        None => (body, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(alloc::format!("malformed twist token `{token}`"));
    }
    let index: u64 = digits.parse().map_err(|_| alloc::format!("index too large in `{token}`"))?;
    Ok(TwistLetter { symbol: TwistSymbol { family, index: (index % k as u64) as usize }, inverse })
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
        })
    }
}

impl fmt::Display for TwistSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.index)
    }
}

impl fmt::Display for TwistLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.symbol, if self.inverse { "'" } else { "" })
    }
}

impl fmt::Display for TwistWord {
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

/// `conj' inner^{+-1} conj` commutes with `other^{+-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConjugateCommute {
    pub conj: TwistSymbol,
    pub inner: TwistSymbol,
    pub other: TwistSymbol,
}

fn pair(x: TwistSymbol, y: TwistSymbol) -> (TwistSymbol, TwistSymbol) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Commuting and braiding pairs of symbols, bracelet families that admit
/// rotation, and conjugated commutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    k: usize,
    commuting: BTreeSet<(TwistSymbol, TwistSymbol)>,
    braiding: BTreeSet<(TwistSymbol, TwistSymbol)>,
    bracelets: BTreeSet<Family>,
    conjugate_commutes: BTreeSet<ConjugateCommute>,
}

impl RelationSet {
    pub fn new(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidArgument(alloc::format!("bracelets need k >= 3, got {k}")));
        }
        Ok(RelationSet {
            k,
            commuting: BTreeSet::new(),
            braiding: BTreeSet::new(),
            bracelets: BTreeSet::new(),
            conjugate_commutes: BTreeSet::new(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sym(&self, family: Family, index: i64) -> TwistSymbol {
        TwistSymbol::new(family, index, self.k)
    }

    fn check_pair(&self, x: TwistSymbol, y: TwistSymbol) -> Result<()> {
        if x == y {
            return Err(Error::InvalidArgument(alloc::format!("relation on a single symbol {x}")));
        }
        if x.index >= self.k || y.index >= self.k {
            return Err(Error::InvalidArgument("symbol index not reduced".into()));
        }
        Ok(())
    }

    pub fn add_commuting(&mut self, x: TwistSymbol, y: TwistSymbol) -> Result<()> {
        self.check_pair(x, y)?;
        if self.braiding.contains(&pair(x, y)) {
            return Err(Error::InvalidArgument(alloc::format!("{x} and {y} already braid")));
        }
        self.commuting.insert(pair(x, y));
        Ok(())
    }

    pub fn add_braiding(&mut self, x: TwistSymbol, y: TwistSymbol) -> Result<()> {
        self.check_pair(x, y)?;
        if self.commuting.contains(&pair(x, y)) {
            return Err(Error::InvalidArgument(alloc::format!("{x} and {y} already commute")));
        }
        self.braiding.insert(pair(x, y));
        Ok(())
    }

    pub fn add_bracelet(&mut self, family: Family) {
        self.bracelets.insert(family);
    }

    pub fn add_conjugate_commute(&mut self, c: ConjugateCommute) -> Result<()> {
        if c.conj == c.inner || c.conj == c.other || c.inner == c.other {
            return Err(Error::InvalidArgument("conjugated commutation needs three distinct symbols".into()));
        }
        self.conjugate_commutes.insert(c);
        Ok(())
    }

    pub fn commutes(&self, x: TwistSymbol, y: TwistSymbol) -> bool {
        self.commuting.contains(&pair(x, y))
    }

    pub fn braids(&self, x: TwistSymbol, y: TwistSymbol) -> bool {
        self.braiding.contains(&pair(x, y))
    }

    pub fn is_bracelet(&self, family: Family) -> bool {
        self.bracelets.contains(&family)
    }

    pub fn commuting_pairs(&self) -> impl Iterator<Item = &(TwistSymbol, TwistSymbol)> {
        self.commuting.iter()
    }

    pub fn braiding_pairs(&self) -> impl Iterator<Item = &(TwistSymbol, TwistSymbol)> {
        self.braiding.iter()
    }

    pub fn bracelet_families(&self) -> impl Iterator<Item = &Family> {
        self.bracelets.iter()
    }

    pub fn conjugate_commutes(&self) -> impl Iterator<Item = &ConjugateCommute> {
        self.conjugate_commutes.iter()
    }

    /// Every symbol mentioned by some relation.
    pub fn symbols(&self) -> BTreeSet<TwistSymbol> {
        let mut s = BTreeSet::new();
        for &(x, y) in self.commuting.iter().chain(&self.braiding) {
            s.insert(x);
            s.insert(y);
        }
        for c in &self.conjugate_commutes {
            s.extend([c.conj, c.inner, c.other]);
        }
        for &f in &self.bracelets {
            s.extend((0..self.k).map(|i| TwistSymbol { family: f, index: i }));
        }
        s
    }
}

/// One bracelet `C_0, ..., C_{k-1}`: neighbours braid, all other pairs commute.
pub fn bracelet_relation_set(k: usize) -> Result<RelationSet> {
    let mut r = RelationSet::new(k)?;
    for i in 0..k {
        for j in i + 1..k {
            let (x, y) = (r.sym(Family::C, i as i64), r.sym(Family::C, j as i64));
            if j == i + 1 || (i == 0 && j == k - 1) {
                r.add_braiding(x, y)?;
            } else {
                r.add_commuting(x, y)?;
            }
        }
    }
    r.add_bracelet(Family::C);
    Ok(r)
}

/// Two bracelets with mesh intersection: `A_i` braids `B_j` iff `i = j` or
/// `i = j + 1`.
pub fn mesh_relation_set(k: usize) -> Result<RelationSet> {
    let mut r = RelationSet::new(k)?;
    let kk = k as i64;
    let mut syms = Vec::new();
    for f in [Family::A, Family::B] {
        for i in 0..kk {
            syms.push(r.sym(f, i));
        }
    }
    for (a, &x) in syms.iter().enumerate() {
        for &y in &syms[a + 1..] {
            let braid = if x.family == y.family {
                (x.index + 1) % k == y.index || (y.index + 1) % k == x.index
            } else {
                let (ai, bj) = if x.family == Family::A { (x.index, y.index) } else { (y.index, x.index) };
                ai == bj || ai == (bj + 1) % k
            };
            if braid {
                r.add_braiding(x, y)?;
            } else {
                r.add_commuting(x, y)?;
            }
        }
    }
    r.add_bracelet(Family::A);
    r.add_bracelet(Family::B);
    Ok(r)
}

/// Two `(k-1)`-chains `A_1..A_{k-1}`, `B_1..B_{k-1}` with `A_i` braiding `B_j`
/// iff `i = j` or `i = j + 1`, plus the conjugated commutations
/// `[B_{j+1}, B_j' A_{j+1} B_j] = 1`. The completion `A_0` enters with its
/// relations to `B_1..B_{k-1}` by the same rule.
pub fn chainbraid_relation_set(k: usize) -> Result<RelationSet> {
    let mut r = RelationSet::new(k)?;
    let kk = k as i64;
    for f in [Family::A, Family::B] {
        for i in 1..kk {
            for j in i + 1..kk {
                let (x, y) = (r.sym(f, i), r.sym(f, j));
                if j == i + 1 {
                    r.add_braiding(x, y)?;
                } else {
                    r.add_commuting(x, y)?;
                }
            }
        }
    }
    for i in 0..kk {
        for j in 1..kk {
            let (x, y) = (r.sym(Family::A, i), r.sym(Family::B, j));
            if i == j || i == j + 1 || (i == 0 && j == kk - 1) {
                r.add_braiding(x, y)?;
            } else {
                r.add_commuting(x, y)?;
            }
        }
    }
    for j in 1..kk - 1 {
        r.add_conjugate_commute(ConjugateCommute {
            conj: r.sym(Family::B, j),
            inner: r.sym(Family::A, j + 1),
            other: r.sym(Family::B, j + 1),
        })?;
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CommuteShape {
    Letters,
    BlockLeft,
    BlockRight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Cancel { pos: usize },
    Insert { pos: usize, letter: TwistLetter },
    Commute { pos: usize, shape: CommuteShape },
    Braid { pos: usize, orientation: u8 },
    Rotate { pos: usize, k: usize, by: usize },
}

/// Sign patterns (`true` = inverse) of `x y x` and the signs of the
/// replacement `y x y`, indexed by orientation `1..=6`:
///
/// 1. `x y x -> y x y`
/// 2. `x y x' -> y' x y`
/// 3. `x y' x' -> y' x' y`
/// 4. `x' y' x' -> y' x' y'`
/// 5. `x' y' x -> y x' y'`
/// 6. `x' y x -> y x y'`
pub const BRAID_ORIENTATIONS: [([bool; 3], [bool; 3]); 6] = [
    ([false, false, false], [false, false, false]),
    ([false, false, true], [true, false, false]),
    ([false, true, true], [true, true, false]),
    ([true, true, true], [true, true, true]),
    ([true, true, false], [false, true, true]),
    ([true, false, false], [false, false, true]),
];

/// Why a single step could not be applied.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum StepFailure {
    #[error("position {pos} out of range for a word of length {len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("relation missing: {0}")]
    RelationMissing(String),
    #[error("pattern mismatch at {pos}: {msg}")]
    PatternMismatch { pos: usize, msg: String },
}

fn need(w: &TwistWord, pos: usize, width: usize) -> core::result::Result<(), StepFailure> {
    if pos + width > w.len() {
        return Err(StepFailure::PositionOutOfRange { pos, len: w.len() });
    }
    Ok(())
}

fn mismatch(pos: usize, msg: String) -> StepFailure {
    StepFailure::PatternMismatch { pos, msg }
}

/// Checks `block` is `conj' inner^e conj` for a declared triple with `other`
/// equal to `letter`'s symbol.
fn block_commutes(rels: &RelationSet, block: &[TwistLetter], letter: TwistLetter) -> bool {
    let [c1, x, c2] = block else { return false };
    c1.symbol == c2.symbol
        && c1.inverse
        && !c2.inverse
        && rels.conjugate_commutes.contains(&ConjugateCommute {
            conj: c1.symbol,
            inner: x.symbol,
            other: letter.symbol,
        })
}

fn relation_name(rels: &RelationSet, x: TwistSymbol, y: TwistSymbol) -> String {
    if rels.braids(x, y) {
        alloc::format!("{x} and {y} braid, they do not commute")
    } else {
        alloc::format!("no commuting relation between {x} and {y}")
    }
}

/// Applies one step, returning the rewritten word.
pub fn apply_relation_step(
    w: &TwistWord,
    rels: &RelationSet,
    step: &Step,
) -> core::result::Result<TwistWord, StepFailure> {
    let mut out = w.letters.clone();
    match *step {
        Step::Cancel { pos } => {
            need(w, pos, 2)?;
            let (x, y) = (w.letters[pos], w.letters[pos + 1]);
            if y != x.inv() {
                return Err(mismatch(pos, alloc::format!("`{x} {y}` is not an inverse pair")));
            }
            out.drain(pos..pos + 2);
        }
        Step::Insert { pos, letter } => {
            if pos > w.len() {
                return Err(StepFailure::PositionOutOfRange { pos, len: w.len() });
            }
            if letter.symbol.index >= rels.k {
                return Err(mismatch(pos, alloc::format!("symbol {} not reduced mod {}", letter.symbol, rels.k)));
            }
            out.splice(pos..pos, [letter, letter.inv()]);
        }
        Step::Commute { pos, shape: CommuteShape::Letters } => {
            need(w, pos, 2)?;
            let (x, y) = (w.letters[pos], w.letters[pos + 1]);
            if x.symbol != y.symbol && !rels.commutes(x.symbol, y.symbol) {
                return Err(StepFailure::RelationMissing(relation_name(rels, x.symbol, y.symbol)));
            }
            out.swap(pos, pos + 1);
        }
        Step::Commute { pos, shape: CommuteShape::BlockRight } => {
            need(w, pos, 4)?;
            let letter = w.letters[pos];
            if !block_commutes(rels, &w.letters[pos + 1..pos + 4], letter) {
                return Err(StepFailure::RelationMissing(alloc::format!(
                    "no conjugated commutation between {letter} and the block at {}",
                    pos + 1
                )));
            }
            out[pos..pos + 3].copy_from_slice(&w.letters[pos + 1..pos + 4]);
            out[pos + 3] = letter;
        }
        Step::Commute { pos, shape: CommuteShape::BlockLeft } => {
            need(w, pos, 4)?;
            let letter = w.letters[pos + 3];
            if !block_commutes(rels, &w.letters[pos..pos + 3], letter) {
                return Err(StepFailure::RelationMissing(alloc::format!(
                    "no conjugated commutation between the block at {pos} and {letter}"
                )));
            }
            out[pos] = letter;
            out[pos + 1..pos + 4].copy_from_slice(&w.letters[pos..pos + 3]);
        }
        Step::Braid { pos, orientation } => {
            need(w, pos, 3)?;
            let Some(&(pattern, result)) = BRAID_ORIENTATIONS.get((orientation as usize).wrapping_sub(1)) else {
                return Err(mismatch(pos, alloc::format!("orientation {orientation} is not in 1..6")));
            };
            let [l0, l1, l2] = [w.letters[pos], w.letters[pos + 1], w.letters[pos + 2]];
            let (x, y) = (l0.symbol, l1.symbol);
            if l2.symbol != x || x == y {
                return Err(mismatch(pos, alloc::format!("`{l0} {l1} {l2}` is not of the form x y x")));
            }
            if [l0.inverse, l1.inverse, l2.inverse] != pattern {
                return Err(mismatch(pos, alloc::format!("signs of `{l0} {l1} {l2}` do not match orientation {orientation}")));
            }
            if !rels.braids(x, y) {
                return Err(StepFailure::RelationMissing(alloc::format!("{x} and {y} do not braid")));
            }
            out[pos] = TwistLetter { symbol: y, inverse: result[0] };
            out[pos + 1] = TwistLetter { symbol: x, inverse: result[1] };
            out[pos + 2] = TwistLetter { symbol: y, inverse: result[2] };
        }
        Step::Rotate { pos, k, by } => {
            if k != rels.k {
                return Err(mismatch(pos, alloc::format!("rotation size {k} but relations are mod {}", rels.k)));
            }
            if by == 0 || by >= k {
                return Err(mismatch(pos, alloc::format!("rotation amount {by} not in 1..{k}")));
            }
            need(w, pos, k - 1)?;
            let first = w.letters[pos].symbol;
            if !rels.is_bracelet(first.family) {
                return Err(StepFailure::RelationMissing(alloc::format!("family {} is not a bracelet", first.family)));
            }
            for t in 0..k - 1 {
                let l = w.letters[pos + t];
                if l.inverse || l.symbol.family != first.family || l.symbol.index != (first.index + t) % k {
                    return Err(mismatch(pos, alloc::format!("letter {l} breaks the bracelet product")));
                }
                out[pos + t] = TwistLetter::pos(TwistSymbol { family: first.family, index: (first.index + by + t) % k });
            }
        }
    }
    Ok(TwistWord { letters: out })
}

/// The step undoing `step`, which was applied to `before`.
pub fn inverse_step(before: &TwistWord, step: &Step) -> Step {
    match *step {
        Step::Cancel { pos } => Step::Insert { pos, letter: before.letters[pos] },
        Step::Insert { pos, .. } => Step::Cancel { pos },
        Step::Commute { pos, shape } => Step::Commute {
            pos,
            shape: match shape {
                CommuteShape::Letters => CommuteShape::Letters,
                CommuteShape::BlockLeft => CommuteShape::BlockRight,
                CommuteShape::BlockRight => CommuteShape::BlockLeft,
            },
        },
        Step::Braid { pos, orientation } => Step::Braid {
            pos,
            orientation: match orientation {
                2 => 6,
                6 => 2,
                3 => 5,
                5 => 3,
                o => o,
            },
        },
        Step::Rotate { pos, k, by } => Step::Rotate { pos, k, by: k - by },
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Step::Cancel { pos } => write!(f, "cancel @{pos}"),
            Step::Insert { pos, letter } => write!(f, "insert @{pos} {letter}"),
            Step::Commute { pos, shape: CommuteShape::Letters } => write!(f, "commute @{pos}"),
            Step::Commute { pos, shape: CommuteShape::BlockLeft } => write!(f, "commute @{pos} block-left"),
            Step::Commute { pos, shape: CommuteShape::BlockRight } => write!(f, "commute @{pos} block-right"),
            Step::Braid { pos, orientation } => write!(f, "braid @{pos} {orientation}"),
            Step::Rotate { pos, k, by: 1 } => write!(f, "rotate @{pos} k={k}"),
            Step::Rotate { pos, k, by } => write!(f, "rotate @{pos} k={k} by={by}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub start: TwistWord,
    pub steps: Vec<Step>,
    pub end: TwistWord,
}

/// Replays `d` from its start word. Returns the number of steps on success;
/// failures carry the index of the offending step (`steps.len()` when only
/// the end word differs).
pub fn check_derivation(d: &Derivation, rels: &RelationSet) -> Result<usize> {
    let mut w = d.start.clone();
    for (i, s) in d.steps.iter().enumerate() {
        w = apply_relation_step(&w, rels, s).map_err(|e| Error::Step { step: i, reason: e.to_string() })?;
    }
    if w != d.end {
        return Err(Error::Step { step: d.steps.len(), reason: alloc::format!("reached `{w}`, expected `{}`", d.end) });
    }
    Ok(d.steps.len())
}

/// Appends steps while tracking the running word; used by the built-in
/// derivation generators.
struct Builder<'a> {
    rels: &'a RelationSet,
    word: TwistWord,
    steps: Vec<Step>,
}

impl<'a> Builder<'a> {
    fn new(rels: &'a RelationSet, start: TwistWord) -> Self {
        Builder { rels, word: start, steps: Vec::new() }
    }

    fn step(&mut self, s: Step) {
        self.word = apply_relation_step(&self.word, self.rels, &s)
            .unwrap_or_else(|e| panic!("generated step `{s}` on `{}` failed: {e}", self.word));
        self.steps.push(s);
    }

    fn commute(&mut self, pos: usize) {
        self.step(Step::Commute { pos, shape: CommuteShape::Letters });
    }

    /// Moves the letter at `pos` right across `count` letters.
    fn move_right(&mut self, pos: usize, count: usize) {
        for t in 0..count {
            self.commute(pos + t);
        }
    }

    /// Moves the letter at `pos` left across `count` letters.
    fn move_left(&mut self, pos: usize, count: usize) {
        for t in 1..=count {
            self.commute(pos - t);
        }
    }

    fn rotate(&mut self, pos: usize, by: usize) {
        let k = self.rels.k;
        if !by.is_multiple_of(k) {
            self.step(Step::Rotate { pos, k, by: by % k });
        }
    }

    fn finish(self, start: TwistWord) -> Derivation {
        Derivation { start, steps: self.steps, end: self.word }
    }
}

/// `C_1 ... C_{k-1} C_{k-2}' ... C_1'`, the twist about the curve completing
/// the chain `C_1, ..., C_{k-1}` to a bracelet.
pub fn bracelet_completion_word(k: usize) -> Result<TwistWord> {
    if k < 3 {
        return Err(Error::InvalidArgument(alloc::format!("bracelets need k >= 3, got {k}")));
    }
    let c = |i: usize| TwistSymbol::new(Family::C, i as i64, k);
    let mut letters: Vec<TwistLetter> = (1..k).map(|i| TwistLetter::pos(c(i))).collect();
    letters.extend((1..k - 1).rev().map(|i| TwistLetter::neg(c(i))));
    Ok(TwistWord { letters })
}

/// Image in `B_k` of a bracelet symbol: `C_i -> s_i` for `1 <= i < k`, and
/// `C_0` to the image of the completion word. Other families are rejected.
pub fn bracelet_braid_image(symbol: TwistSymbol, k: usize) -> Result<BraidWord> {
    match (symbol.family, symbol.index) {
        (Family::C, 0) => {
            let mut letters: Vec<Letter> = (1..k).map(Letter::pos).collect();
            letters.extend((1..k - 1).rev().map(Letter::neg));
            BraidWord::new(k, letters)
        }
        (Family::C, i) => BraidWord::new(k, alloc::vec![Letter::pos(i)]),
        _ => Err(Error::InvalidArgument(alloc::format!("{symbol} is not a bracelet symbol"))),
    }
}

/// Substitutes braid words for twist symbols.
pub fn to_braid<F>(w: &TwistWord, strands: usize, image: F) -> Result<BraidWord>
where
    F: Fn(TwistSymbol) -> Result<BraidWord>,
{
    let mut out = BraidWord::identity(strands)?;
    for l in &w.letters {
        let b = image(l.symbol)?;
        out = out.concat(&if l.inverse { b.inverse() } else { b })?;
    }
    Ok(out)
}

/// One line of a bracelet verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraceletCheck {
    pub name: String,
    pub passed: bool,
}

/// Checks, in `B_k` by handle reduction, that the completed bracelet
/// satisfies the neighbour relations (braid for cyclic neighbours, commute
/// otherwise) and that all `k` rotated products `C_i ... C_{i+k-2}` agree.
pub fn verify_bracelet_relations(k: usize) -> Result<Vec<BraceletCheck>> {
    verify_bracelet_relations_with_budget(k, crate::braids::DEFAULT_BUDGET)
}

pub fn verify_bracelet_relations_with_budget(k: usize, budget: usize) -> Result<Vec<BraceletCheck>> {
    let rels = bracelet_relation_set(k)?;
    let img = |w: &TwistWord| to_braid(w, k, |s| bracelet_braid_image(s, k));
    let letter = |i: usize| TwistWord::run(Family::C, i as i64, 1, k);
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let (x, y) = (letter(i), letter(j));
            let (name, lhs, rhs) = if rels.braids(x.letters[0].symbol, y.letters[0].symbol) {
                (alloc::format!("braid C{i} C{j}"), x.concat(&y).concat(&x), y.concat(&x).concat(&y))
            } else {
                (alloc::format!("commute C{i} C{j}"), x.concat(&y), y.concat(&x))
            };
            let passed = braid_equal_with_budget(&img(&lhs)?, &img(&rhs)?, budget)?;
            out.push(BraceletCheck { name, passed });
        }
    }
    for i in 0..k {
        let lhs = TwistWord::run(Family::C, i as i64, k - 1, k);
        let rhs = TwistWord::run(Family::C, i as i64 + 1, k - 1, k);
        let passed = braid_equal_with_budget(&img(&lhs)?, &img(&rhs)?, budget)?;
        out.push(BraceletCheck { name: alloc::format!("rotation C{i}.. = C{}..", (i + 1) % k), passed });
    }
    Ok(out)
}

/// Smallest and largest `k` for the built-in derivations.
pub const BUILTIN_K_RANGE: (usize, usize) = (3, 8);

fn check_builtin_k(k: usize) -> Result<()> {
    if k < BUILTIN_K_RANGE.0 || k > BUILTIN_K_RANGE.1 {
        return Err(Error::InvalidArgument(alloc::format!(
            "built-in derivations support k in {}..={}, got {k}",
            BUILTIN_K_RANGE.0,
            BUILTIN_K_RANGE.1
        )));
    }
    Ok(())
}

/// Derivation of `T_A T_B T_A = T_B T_A T_B` over [`mesh_relation_set`],
/// where `T_X = X_0 X_1 ... X_{k-2}`.
pub fn builtin_mesh_braid_derivation(k: usize) -> Result<Derivation> {
    check_builtin_k(k)?;
    let rels = mesh_relation_set(k)?;
    let n = k - 1;
    let ta = TwistWord::run(Family::A, 0, n, k);
    let tb = TwistWord::run(Family::B, 0, n, k);
    let start = ta.concat(&tb).concat(&ta);
    let mut b = Builder::new(&rels, start.clone());
    for i in 0..n {
        // word: B_0 .. B_{i-1} T_A T_B A_i .. A_{k-2}
        let o = i;
        b.rotate(o, i + 1);
        b.rotate(o + n, i);
        b.move_left(o + n, n - 1);
        b.move_left(o + 2 * n, n - 1);
        b.rotate(o + 2, k - 1);
        b.step(Step::Braid { pos: o, orientation: 1 });
        b.move_right(o + 2, n - 1);
        b.rotate(o + 1, k - (i + 1));
        b.rotate(o + 1 + n, k - i);
    }
    let d = b.finish(start);
    debug_assert_eq!(d.end, tb.concat(&ta).concat(&tb));
    Ok(d)
}

/// A named built-in derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedDerivation {
    pub name: String,
    pub derivation: Derivation,
}

fn b_run(rels: &RelationSet, from: i64, to: i64) -> TwistWord {
    let letters = if from <= to {
        (from..=to).map(|j| TwistLetter::pos(rels.sym(Family::B, j))).collect()
    } else {
        Vec::new()
    };
    TwistWord { letters }
}

/// `[Delta B_{k-1} Delta', A_i] = 1` for `2 <= i <= k-1`, with
/// `Delta = B_1 ... B_{k-2}`.
fn commutator_chain(rels: &RelationSet, i: i64) -> Derivation {
    let k = rels.k() as i64;
    let m = (k - 2) as usize;
    let delta = b_run(rels, 1, k - 2);
    let bk = TwistWord::run(Family::B, k - 1, 1, rels.k());
    let ai = TwistWord::run(Family::A, i, 1, rels.k());
    let b0 = delta.concat(&bk).concat(&delta.inverse());
    let start = b0.concat(&ai).concat(&b0.inverse()).concat(&ai.inverse());
    let mut b = Builder::new(rels, start.clone());

    // Delta' A_i Delta -> B_{k-2}' .. B_{i-1}' A_i B_{i-1} .. B_{k-2}
    let mut c = 2 * m + 1;
    for _ in 1..=i - 2 {
        b.commute(c - 1);
        b.step(Step::Cancel { pos: c });
        c -= 1;
    }
    // the block X = B_{i-1}' A_i B_{i-1} starts at xs
    let mut xs = c - 1;
    let absorb = |b: &mut Builder, xs: &mut usize, block: bool| {
        if block {
            b.step(Step::Commute { pos: *xs - 1, shape: CommuteShape::BlockRight });
        } else {
            b.move_right(*xs - 1, 3);
        }
        b.step(Step::Cancel { pos: *xs + 2 });
        *xs -= 1;
    };
    for j in i..=k - 1 {
        absorb(&mut b, &mut xs, j == i);
    }
    // Delta X Delta' A_i'
    let mut center_len = 3;
    for j in (1..=k - 2).rev() {
        if j == i - 1 {
            b.step(Step::Cancel { pos: xs - 1 });
            b.step(Step::Cancel { pos: xs });
            xs -= 1;
            center_len = 1;
        } else if center_len == 3 {
            absorb(&mut b, &mut xs, j == i);
        } else {
            b.commute(xs - 1);
            b.step(Step::Cancel { pos: xs });
            xs -= 1;
        }
    }
    b.step(Step::Cancel { pos: xs });
    b.finish(start)
}

/// `x W y W' x = W y W' x W y W'` given that `x` commutes with every letter
/// of `W` and braids `y`.
fn conjugated_braid_chain(rels: &RelationSet, x: TwistLetter, w: &TwistWord, y: TwistLetter) -> Derivation {
    let l = w.len();
    let xw = TwistWord::new(alloc::vec![x]);
    let yw = TwistWord::new(alloc::vec![y]);
    let start = xw.concat(w).concat(&yw).concat(&w.inverse()).concat(&xw);
    let mut b = Builder::new(rels, start.clone());
    b.move_right(0, l);
    b.move_left(2 * l + 2, l);
    b.step(Step::Braid { pos: l, orientation: 1 });
    for t in 0..l {
        b.step(Step::Insert { pos: l + 1 + t, letter: w.letters[l - 1 - t].inv() });
    }
    b.move_left(3 * l + 1, l);
    b.finish(start)
}

/// Derivations over [`chainbraid_relation_set`]: the commutators
/// `[B_0, A_i] = 1` for `2 <= i <= k-1`, the braid relation between `A_1`
/// and `B_0`, and the braid relation between `A_0` and `B_0`, with
/// `B_0 = Delta B_{k-1} Delta' = Nabla' B_1 Nabla`.
pub fn builtin_chainbraid_derivations(k: usize) -> Result<Vec<NamedDerivation>> {
    check_builtin_k(k)?;
    let rels = chainbraid_relation_set(k)?;
    let kk = k as i64;
    let mut out = Vec::new();
    for i in 2..kk {
        out.push(NamedDerivation { name: alloc::format!("commute B0 A{i}"), derivation: commutator_chain(&rels, i) });
    }
    let nabla_inv = b_run(&rels, 2, kk - 1).inverse();
    out.push(NamedDerivation {
        name: "braid A1 B0".into(),
        derivation: conjugated_braid_chain(
            &rels,
            TwistLetter::pos(rels.sym(Family::A, 1)),
            &nabla_inv,
            TwistLetter::pos(rels.sym(Family::B, 1)),
        ),
    });
    out.push(NamedDerivation {
        name: "braid A0 B0".into(),
        derivation: conjugated_braid_chain(
            &rels,
            TwistLetter::pos(rels.sym(Family::A, 0)),
            &b_run(&rels, 1, kk - 2),
            TwistLetter::pos(rels.sym(Family::B, kk - 1)),
        ),
    });
    Ok(out)
}

/// Image in `B_3` of a mesh symbol for `k = 3`: `A_i -> c_i`, `B_j -> c_{j+2}`
/// where `c_1 = s1`, `c_2 = s2`, `c_0 = s1 s2 s1'`.
pub fn mesh3_braid_image(symbol: TwistSymbol) -> Result<BraidWord> {
    let i = match symbol.family {
        Family::A => symbol.index,
        Family::B => (symbol.index + 2) % 3,
        Family::C => return Err(Error::InvalidArgument(alloc::format!("{symbol} is not a mesh symbol"))),
    };
    bracelet_braid_image(TwistSymbol { family: Family::C, index: i }, 3)
}

/// True when `start` and `end` of `d` map to equal braids.
pub fn endpoints_agree<F>(d: &Derivation, strands: usize, image: F) -> Result<bool>
where
    F: Fn(TwistSymbol) -> Result<BraidWord>,
{
    braid_equal(&to_braid(&d.start, strands, &image)?, &to_braid(&d.end, strands, &image)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tw(text: &str, k: usize) -> TwistWord {
        TwistWord::parse(text, k).unwrap()
    }

    #[test]
    fn parse_and_format() {
        let w = tw("A3 B0' C2", 4);
        assert_eq!(alloc::format!("{w}"), "A3 B0' C2");
        assert_eq!(tw("A4", 4), tw("A0", 4));
        assert!(TwistWord::parse("D1", 4).is_err());
        assert!(TwistWord::parse("A", 4).is_err());
        match TwistWord::parse("A1 Bx", 4) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn completion_words() {
        assert_eq!(bracelet_completion_word(3).unwrap(), tw("C1 C2 C1'", 3));
        assert_eq!(bracelet_completion_word(4).unwrap(), tw("C1 C2 C3 C2' C1'", 4));
        assert!(bracelet_completion_word(2).is_err());
    }

    #[test]
    fn mesh_relation_counts() {
        let r = mesh_relation_set(3).unwrap();
        assert_eq!(r.braiding_pairs().count(), 12);
        assert_eq!(r.commuting_pairs().count(), 15 - 12);
        let r = mesh_relation_set(4).unwrap();
        assert!(r.commutes(r.sym(Family::A, 1), r.sym(Family::B, 3)));
        assert!(r.braids(r.sym(Family::A, 4), r.sym(Family::B, 3)));
        assert!(mesh_relation_set(2).is_err());
        for k in 3..=8 {
            let r = mesh_relation_set(k).unwrap();
            let total = 2 * k * (2 * k - 1) / 2;
            assert_eq!(r.braiding_pairs().count(), 4 * k);
            assert_eq!(r.braiding_pairs().count() + r.commuting_pairs().count(), total);
        }
    }

    #[test]
    fn relation_sets_reject_conflicts() {
        let mut r = RelationSet::new(4).unwrap();
        let (x, y) = (r.sym(Family::A, 1), r.sym(Family::B, 1));
        r.add_braiding(x, y).unwrap();
        assert!(r.add_commuting(x, y).is_err());
        assert!(r.add_braiding(x, x).is_err());
    }

    #[test]
    fn step_examples() {
        let rels = mesh_relation_set(4).unwrap();
        let w = tw("A1 B3", 4);
        let s = Step::Commute { pos: 0, shape: CommuteShape::Letters };
        assert_eq!(apply_relation_step(&w, &rels, &s).unwrap(), tw("B3 A1", 4));
        let w = tw("A1 B1 A1", 4);
        let s = Step::Braid { pos: 0, orientation: 1 };
        assert_eq!(apply_relation_step(&w, &rels, &s).unwrap(), tw("B1 A1 B1", 4));
        let w = tw("A1 B1", 4);
        let s = Step::Commute { pos: 0, shape: CommuteShape::Letters };
        assert!(matches!(apply_relation_step(&w, &rels, &s), Err(StepFailure::RelationMissing(_))));
        let s = Step::Commute { pos: 1, shape: CommuteShape::Letters };
        assert!(matches!(apply_relation_step(&w, &rels, &s), Err(StepFailure::PositionOutOfRange { .. })));
        let w = tw("A1 B1' A1'", 4);
        let s = Step::Braid { pos: 0, orientation: 3 };
        assert_eq!(apply_relation_step(&w, &rels, &s).unwrap(), tw("B1' A1' B1", 4));
        let s = Step::Braid { pos: 0, orientation: 2 };
        assert!(matches!(apply_relation_step(&w, &rels, &s), Err(StepFailure::PatternMismatch { .. })));
        let w = tw("A0 A1 A2 B0", 4);
        let s = Step::Rotate { pos: 0, k: 4, by: 1 };
        assert_eq!(apply_relation_step(&w, &rels, &s).unwrap(), tw("A1 A2 A3 B0", 4));
        let s = Step::Rotate { pos: 1, k: 4, by: 1 };
        assert!(apply_relation_step(&w, &rels, &s).is_err());
        let s = Step::Cancel { pos: 0 };
        assert!(apply_relation_step(&w, &rels, &s).is_err());
        let s = Step::Insert { pos: 4, letter: TwistLetter::neg(rels.sym(Family::B, 2)) };
        assert_eq!(apply_relation_step(&w, &rels, &s).unwrap(), tw("A0 A1 A2 B0 B2' B2", 4));
    }

    #[test]
    fn block_commute_steps() {
        let rels = chainbraid_relation_set(4).unwrap();
        let w = tw("B2 B1' A2 B1", 4);
        let s = Step::Commute { pos: 0, shape: CommuteShape::BlockRight };
        let v = apply_relation_step(&w, &rels, &s).unwrap();
        assert_eq!(v, tw("B1' A2 B1 B2", 4));
        let back = inverse_step(&w, &s);
        assert_eq!(apply_relation_step(&v, &rels, &back).unwrap(), w);
        let bad = tw("B3 B1' A2 B1", 4);
        assert!(apply_relation_step(&bad, &rels, &s).is_err());
    }

    #[test]
    fn derivation_checker() {
        let rels = mesh_relation_set(3).unwrap();
        let d = builtin_mesh_braid_derivation(3).unwrap();
        assert_eq!(check_derivation(&d, &rels).unwrap(), d.steps.len());
        let empty = Derivation { start: tw("A1 B2", 3), steps: Vec::new(), end: tw("A1 B2", 3) };
        assert_eq!(check_derivation(&empty, &rels).unwrap(), 0);
        let bad = Derivation {
            start: tw("A1 B1", 3),
            steps: alloc::vec![Step::Commute { pos: 0, shape: CommuteShape::Letters }],
            end: tw("B1 A1", 3),
        };
        assert!(matches!(check_derivation(&bad, &rels), Err(Error::Step { step: 0, .. })));
        assert!(builtin_mesh_braid_derivation(9).is_err());
        assert!(builtin_mesh_braid_derivation(2).is_err());
    }

    #[test]
    fn builtin_derivations_are_accepted() {
        for k in 3..=8 {
            let rels = mesh_relation_set(k).unwrap();
            let d = builtin_mesh_braid_derivation(k).unwrap();
            check_derivation(&d, &rels).unwrap();
            let ta = TwistWord::run(Family::A, 0, k - 1, k);
            let tb = TwistWord::run(Family::B, 0, k - 1, k);
            assert_eq!(d.start, ta.concat(&tb).concat(&ta));
            assert_eq!(d.end, tb.concat(&ta).concat(&tb));

            let rels = chainbraid_relation_set(k).unwrap();
            let ds = builtin_chainbraid_derivations(k).unwrap();
            assert_eq!(ds.len(), k);
            for nd in &ds {
                check_derivation(&nd.derivation, &rels).unwrap_or_else(|e| panic!("k={k} {}: {e}", nd.name));
            }
            assert!(ds[0].derivation.end.is_empty());
        }
    }

    #[test]
    fn tampered_derivations_are_rejected() {
        for k in 3..=5 {
            let rels = chainbraid_relation_set(k).unwrap();
            for nd in builtin_chainbraid_derivations(k).unwrap() {
                for drop in 0..nd.derivation.steps.len() {
                    let mut d = nd.derivation.clone();
                    d.steps.remove(drop);
                    assert!(check_derivation(&d, &rels).is_err(), "k={k} {} without step {drop}", nd.name);
                }
            }
        }
    }

    #[test]
    fn mesh3_oracle() {
        let d = builtin_mesh_braid_derivation(3).unwrap();
        assert!(endpoints_agree(&d, 3, mesh3_braid_image).unwrap());
    }

    #[test]
    fn bracelet_small() {
        let r = verify_bracelet_relations(3).unwrap();
        assert_eq!(r.len(), 6);
        assert!(r.iter().all(|c| c.passed));
    }

    fn arb_mesh_word(k: usize) -> impl Strategy<Value = TwistWord> {
        prop::collection::vec((0..2usize, 0..k, any::<bool>()), 0..12).prop_map(move |v| TwistWord {
            letters: v
                .into_iter()
                .map(|(f, i, inv)| TwistLetter {
                    symbol: TwistSymbol { family: if f == 0 { Family::A } else { Family::B }, index: i },
                    inverse: inv,
                })
                .collect(),
        })
    }

    fn arb_step(k: usize) -> impl Strategy<Value = Step> {
        prop_oneof![
            (0..14usize).prop_map(|pos| Step::Cancel { pos }),
            (0..14usize, 0..k, any::<bool>()).prop_map(move |(pos, i, inv)| Step::Insert {
                pos,
                letter: TwistLetter { symbol: TwistSymbol { family: Family::A, index: i }, inverse: inv }
            }),
            (0..14usize).prop_map(|pos| Step::Commute { pos, shape: CommuteShape::Letters }),
            (0..14usize, 1..=6u8).prop_map(|(pos, orientation)| Step::Braid { pos, orientation }),
            (0..14usize, 1..k).prop_map(move |(pos, by)| Step::Rotate { pos, k, by }),
        ]
    }

    proptest! {
        #[test]
        fn steps_are_invertible(w in arb_mesh_word(4), s in arb_step(4)) {
            let rels = mesh_relation_set(4).unwrap();
            if let Ok(v) = apply_relation_step(&w, &rels, &s) {
                let back = inverse_step(&w, &s);
                prop_assert_eq!(apply_relation_step(&v, &rels, &back).unwrap(), w);
            }
        }

        #[test]
        fn twist_roundtrip(w in arb_mesh_word(5)) {
            let text = alloc::format!("{w}");
            prop_assert_eq!(TwistWord::parse(&text, 5).unwrap(), w);
        }
    }
}
