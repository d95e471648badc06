//! Regular covers of punctured disks given by a finite deck group and a
//! labeling of the free generators, the path groupoid of the cover, and the
//! lift of liftable automorphisms.
//!
//! Objects of the cover groupoid are deck elements. A path `(d, w)` starts at
//! `d` and ends at `d * q(w)`.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::autos::{boundary_word, FreeEndo, MarkedAutomorphism};
use crate::words::{Letter, Word};
use crate::{Error, Result};

/// A finite group stored as a Cayley table with identity `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeckGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    cyclic: Option<usize>,
}

impl DeckGroup {
    /// `Z/k` with elements `0..k` and addition mod `k`.
    pub fn cyclic(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidDeckGroup("cyclic group of order 0".into()));
        }
        let mul = (0..k * k).map(|x| (x / k + x % k) % k).collect();
        let inv = (0..k).map(|a| (k - a) % k).collect();
        Ok(DeckGroup { order: k, mul, inv, cyclic: Some(k) })
    }

    /// Validates a Cayley table: `rows[a][b] = a * b`, identity `0`.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidDeckGroup("empty table".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidDeckGroup("table is not square".into()));
        }
        if rows.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidDeckGroup("entry out of range".into()));
        }
        let mul: Vec<usize> = rows.iter().flatten().copied().collect();
        let at = |a: usize, b: usize| mul[a * n + b];
        for a in 0..n {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::InvalidDeckGroup("element 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::InvalidDeckGroup(alloc::format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let mut inv = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| at(a, b) == 0 && at(b, a) == 0) {
                Some(b) => inv.push(b),
                None => return Err(Error::InvalidDeckGroup(alloc::format!("element {a} has no inverse"))),
            }
        }
        Ok(DeckGroup { order: n, mul, inv, cyclic: None })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `Some(k)` when built by [`DeckGroup::cyclic`].
    pub fn cyclic_order(&self) -> Option<usize> {
        self.cyclic
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self.cyclic {
            Some(k) => (a + b) % k,
            None => self.mul[a * self.order + b],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn contains(&self, a: usize) -> bool {
        a < self.order
    }

    /// True iff `gens` generate the whole group.
    pub fn generated_by(&self, gens: &[usize]) -> bool {
        let mut seen = alloc::vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut count = 1;
        while let Some(d) = queue.pop_front() {
            for &g in gens {
                let e = self.mul(d, g);
                if !seen[e] {
                    seen[e] = true;
                    count += 1;
                    queue.push_back(e);
                }
            }
        }
        count == self.order
    }
}

/// A regular cover of a surface whose fundamental group is free of rank
/// `base_rank`, determined by `q(g_i) = labels[i-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoverSpec {
    base_rank: usize,
    deck: DeckGroup,
    labels: Vec<usize>,
    base_boundaries: usize,
}

/// Genus, boundary count, branch point count and sheet count of a branched cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoverSignature {
    pub g: usize,
    pub m: usize,
    pub n: usize,
    pub k: usize,
}

impl CoverSpec {
    pub fn new(base_rank: usize, deck: DeckGroup, labels: Vec<usize>, base_boundaries: usize) -> Result<Self> {
        if labels.len() != base_rank {
            return Err(Error::ShapeMismatch(alloc::format!("{} labels for rank {}", labels.len(), base_rank)));
        }
        if let Some(&bad) = labels.iter().find(|&&l| !deck.contains(l)) {
            return Err(Error::InvalidDeckGroup(alloc::format!("label {bad} is not a deck element")));
        }
        if base_boundaries == 0 {
            return Err(Error::InvalidArgument("base needs at least one boundary component".into()));
        }
        if !deck.generated_by(&labels) {
            return Err(Error::DisconnectedCover);
        }
        Ok(CoverSpec { base_rank, deck, labels, base_boundaries })
    }

    /// The `k`-sheeted cyclic cover with every label equal to `1`.
    pub fn burau(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("need at least one puncture".into()));
        }
        if k < 2 {
            return Err(Error::InvalidArgument(alloc::format!("cover must have at least 2 sheets, got {k}")));
        }
        Self::new(n, DeckGroup::cyclic(k)?, alloc::vec![1; n], 1)
    }

    pub fn base_rank(&self) -> usize {
        self.base_rank
    }

    pub fn deck(&self) -> &DeckGroup {
        &self.deck
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn base_boundaries(&self) -> usize {
        self.base_boundaries
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        if rank != self.base_rank {
            return Err(Error::RankMismatch { left: self.base_rank, right: rank });
        }
        Ok(())
    }

    fn check_one_boundary(&self) -> Result<()> {
        if self.base_boundaries != 1 {
            return Err(Error::WrongBoundaryCount { expected: 1, found: self.base_boundaries });
        }
        Ok(())
    }

    fn letter_label(&self, l: Letter) -> usize {
        let q = self.labels[l.index - 1];
        if l.inverse {
            self.deck.inv(q)
        } else {
            q
        }
    }

    /// Multiplicative extension of the labeling to words.
    pub fn q_eval(&self, w: &Word) -> Result<usize> {
        self.check_rank(w.rank())?;
        Ok(self.q_eval_unchecked(w))
    }

    pub(crate) fn q_eval_unchecked(&self, w: &Word) -> usize {
        w.letters().iter().fold(0, |d, &l| self.deck.mul(d, self.letter_label(l)))
    }

    /// Labeling `q o p`, the same cover seen through a change of basis `p`.
    pub fn pull_back(&self, p: &FreeEndo) -> Result<CoverSpec> {
        self.check_rank(p.rank())?;
        let labels = p.images().iter().map(|w| self.q_eval_unchecked(w)).collect();
        CoverSpec::new(self.base_rank, self.deck.clone(), labels, self.base_boundaries)
    }

    /// Signature of the branched cover obtained by filling every puncture
    /// preimage, computed from the Euler characteristic.
    pub fn signature(&self) -> Result<CoverSignature> {
        self.check_one_boundary()?;
        let k = self.deck.order() as i64;
        let n = self.base_rank as i64;
        let filled: i64 = self.labels.iter().map(|&q| k / self.deck.element_order(q) as i64).sum();
        let chi = k * (1 - n) + filled;
        let m = self.cover_boundary_count()? as i64;
        let two_g = 2 - m - chi;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(Error::InvalidArgument(alloc::format!("inconsistent Euler characteristic {chi}")));
        }
        Ok(CoverSignature { g: (two_g / 2) as usize, m: m as usize, n: self.base_rank, k: self.deck.order() })
    }

    /// Number of boundary components upstairs: `|D| / ord(q(g1 ... gn))`.
    pub fn cover_boundary_count(&self) -> Result<usize> {
        self.check_one_boundary()?;
        let d = self.q_eval_unchecked(&boundary_word(self.base_rank));
        Ok(self.deck.order() / self.deck.element_order(d))
    }

    /// The lift at `d` of the smallest power of the boundary word that closes up.
    pub fn boundary_loop(&self, d: usize) -> Result<CoverPath> {
        self.check_one_boundary()?;
        let delta = boundary_word(self.base_rank);
        let o = self.deck.element_order(self.q_eval_unchecked(&delta));
        self.path(d, delta.pow(o as i64))
    }

    pub fn path(&self, start: usize, word: Word) -> Result<CoverPath> {
        self.check_rank(word.rank())?;
        if !self.deck.contains(start) {
            return Err(Error::InvalidArgument(alloc::format!("deck element {start} out of range")));
        }
        Ok(CoverPath { start, word })
    }

    pub fn target(&self, p: &CoverPath) -> usize {
        self.deck.mul(p.start, self.q_eval_unchecked(&p.word))
    }

    pub fn path_compose(&self, p1: &CoverPath, p2: &CoverPath) -> Result<CoverPath> {
        let t = self.target(p1);
        if t != p2.start {
            return Err(Error::NotComposable { target: t, start: p2.start });
        }
        Ok(CoverPath { start: p1.start, word: p1.word.concat(&p2.word)? })
    }

    pub fn path_invert(&self, p: &CoverPath) -> CoverPath {
        CoverPath { start: self.target(p), word: p.word.invert() }
    }

    pub fn deck_act(&self, e: usize, p: &CoverPath) -> CoverPath {
        CoverPath { start: self.deck.mul(e, p.start), word: p.word.clone() }
    }

    /// Lifts of `g1` and `g2` from a common basepoint end at the same point.
    pub fn same_coset_class(&self, g1: &Word, g2: &Word) -> Result<bool> {
        Ok(self.q_eval(g1)? == self.q_eval(g2)?)
    }

    /// First generator (1-based) whose label changes under `f`.
    pub fn first_unliftable(&self, f: &FreeEndo) -> Result<Option<usize>> {
        self.check_rank(f.rank())?;
        Ok((1..=self.base_rank).find(|&i| self.q_eval_unchecked(&f.images()[i - 1]) != self.labels[i - 1]))
    }

    /// `q o f = q`, for a base with one boundary component.
    pub fn liftable_one_boundary(&self, f: &FreeEndo) -> Result<bool> {
        self.check_one_boundary()?;
        Ok(self.first_unliftable(f)?.is_none())
    }

    /// `q o psi = q` and every star image lies in the kernel of `q`.
    pub fn liftable_marked(&self, f: &MarkedAutomorphism) -> Result<bool> {
        if f.stars.len() + 1 != self.base_boundaries {
            return Err(Error::ShapeMismatch(alloc::format!(
                "{} star images for {} base boundary components",
                f.stars.len(),
                self.base_boundaries
            )));
        }
        if self.first_unliftable(&f.psi)?.is_some() {
            return Ok(false);
        }
        Ok(f.stars.iter().all(|a| self.q_eval_unchecked(a) == 0))
    }

    /// The lift `(d, w) -> (d, f(w))` of a liftable `f`.
    pub fn lift_automorphism(&self, f: &FreeEndo) -> Result<CoverAutomorphism> {
        if let Some(generator) = self.first_unliftable(f)? {
            return Err(Error::NotLiftable { generator });
        }
        Ok(CoverAutomorphism { spec: self.clone(), endo: f.clone() })
    }

    /// `(d, g_i)`.
    pub fn lifted_generator(&self, d: usize, i: usize) -> Result<CoverPath> {
        let w = Word::generator(self.base_rank, i)?;
        self.path(d, w)
    }

    /// Factors `p` letter by letter into lifted generators and their inverses.
    pub fn express_in_lifted_generators(&self, p: &CoverPath) -> Vec<LiftedLetter> {
        let mut d = p.start;
        let mut out = Vec::with_capacity(p.word.len());
        for &l in p.word.letters() {
            if l.inverse {
                d = self.deck.mul(d, self.letter_label(l));
                out.push(LiftedLetter { deck: d, generator: l.index, inverse: true });
            } else {
                out.push(LiftedLetter { deck: d, generator: l.index, inverse: false });
                d = self.deck.mul(d, self.letter_label(l));
            }
        }
        out
    }

    /// Inverse of [`CoverSpec::express_in_lifted_generators`].
    pub fn recompose(&self, start: usize, factors: &[LiftedLetter]) -> Result<CoverPath> {
        let mut acc = self.path(start, Word::identity(self.base_rank))?;
        for f in factors {
            let g = self.lifted_generator(f.deck, f.generator)?;
            let g = if f.inverse { self.path_invert(&g) } else { g };
            acc = self.path_compose(&acc, &g)?;
        }
        Ok(acc)
    }
}

/// A path in the cover groupoid: lift starting at deck element `start` of the
/// base word `word`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoverPath {
    pub start: usize,
    pub word: Word,
}

/// The lifted generator `(deck, g_generator)` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LiftedLetter {
    pub deck: usize,
    pub generator: usize,
    pub inverse: bool,
}

/// `m = gcd(n, k)` and `g = 1 - (k + n + m - nk)/2`.
pub fn burau_signature(n: usize, k: usize) -> Result<CoverSignature> {
    if n == 0 || k < 2 {
        return Err(Error::InvalidArgument(alloc::format!("need n >= 1 and k >= 2, got n={n} k={k}")));
    }
    let m = gcd(n, k);
    let (ni, ki, mi) = (n as i64, k as i64, m as i64);
    let s = ki + ni + mi - ni * ki;
    if s % 2 != 0 || 2 - s < 0 {
        return Err(Error::InvalidArgument(alloc::format!("genus formula is not integral for n={n} k={k}")));
    }
    Ok(CoverSignature { g: ((2 - s) / 2) as usize, m, n, k })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A lifted automorphism of the cover groupoid. It fixes every object and
/// commutes with the deck action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverAutomorphism {
    spec: CoverSpec,
    endo: FreeEndo,
}

impl CoverAutomorphism {
    pub fn endo(&self) -> &FreeEndo {
        &self.endo
    }

    pub fn spec(&self) -> &CoverSpec {
        &self.spec
    }

    pub fn apply(&self, p: &CoverPath) -> Result<CoverPath> {
        Ok(CoverPath { start: p.start, word: self.endo.apply(&p.word)? })
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &CoverAutomorphism) -> Result<CoverAutomorphism> {
        if self.spec != other.spec {
            return Err(Error::ShapeMismatch("lifts of different covers".into()));
        }
        Ok(CoverAutomorphism { spec: self.spec.clone(), endo: self.endo.compose(&other.endo)? })
    }

    pub fn pow(&self, p: u32) -> CoverAutomorphism {
        CoverAutomorphism { spec: self.spec.clone(), endo: self.endo.pow(p) }
    }

    /// Compares the images of every lifted generator `(d, g_i)`.
    pub fn agrees_on_lifted_generators(&self, other: &CoverAutomorphism) -> Result<bool> {
        for d in 0..self.spec.deck.order() {
            for i in 1..=self.spec.base_rank {
                let g = self.spec.lifted_generator(d, i)?;
                if self.apply(&g)? != other.apply(&g)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::artin_generator;
    use proptest::prelude::*;

    fn w(rank: usize, letters: &[i64]) -> Word {
        Word::from_signed(rank, letters).unwrap()
    }

    fn b23() -> CoverSpec {
        CoverSpec::burau(2, 3).unwrap()
    }

    #[test]
    fn deck_groups() {
        let z3 = DeckGroup::cyclic(3).unwrap();
        assert_eq!(z3.mul(2, 2), 1);
        assert_eq!(z3.inv(1), 2);
        assert_eq!(z3.element_order(1), 3);
        let v4 = DeckGroup::from_table(&[
            alloc::vec![0, 1, 2, 3],
            alloc::vec![1, 0, 3, 2],
            alloc::vec![2, 3, 0, 1],
            alloc::vec![3, 2, 1, 0],
        ])
        .unwrap();
        assert_eq!(v4.element_order(3), 2);
        assert!(!v4.generated_by(&[1]));
        assert!(v4.generated_by(&[1, 2]));
        assert!(DeckGroup::from_table(&[alloc::vec![0, 1], alloc::vec![1, 1]]).is_err());
        assert!(DeckGroup::from_table(&[alloc::vec![1, 0], alloc::vec![0, 1]]).is_err());
    }

    #[test]
    fn burau_specs() {
        assert_eq!(b23().labels(), [1, 1]);
        assert_eq!(CoverSpec::burau(4, 2).unwrap().labels(), [1, 1, 1, 1]);
        assert!(CoverSpec::burau(2, 1).is_err());
        let z4 = DeckGroup::cyclic(4).unwrap();
        assert_eq!(CoverSpec::new(2, z4, alloc::vec![2, 2], 1), Err(Error::DisconnectedCover));
    }

    #[test]
    fn signatures() {
        let s = burau_signature(2, 3).unwrap();
        assert_eq!((s.g, s.m), (1, 1));
        let s = burau_signature(2, 4).unwrap();
        assert_eq!((s.g, s.m), (1, 2));
        let s = burau_signature(3, 3).unwrap();
        assert_eq!((s.g, s.m), (1, 3));
        for n in 1..=6 {
            for k in 2..=6 {
                assert_eq!(CoverSpec::burau(n, k).unwrap().signature().unwrap(), burau_signature(n, k).unwrap());
            }
        }
    }

    #[test]
    fn q_eval_examples() {
        let s = b23();
        assert_eq!(s.q_eval(&w(2, &[1, 2])).unwrap(), 2);
        assert_eq!(s.q_eval(&Word::identity(2)).unwrap(), 0);
        assert_eq!(s.q_eval(&w(2, &[1, 2, -1])).unwrap(), 1);
        assert!(s.q_eval(&w(3, &[1])).is_err());
    }

    #[test]
    fn path_examples() {
        let s = b23();
        let p1 = s.path(0, w(2, &[1])).unwrap();
        let p2 = s.path(1, w(2, &[2])).unwrap();
        let c = s.path_compose(&p1, &p2).unwrap();
        assert_eq!(c, s.path(0, w(2, &[1, 2])).unwrap());
        assert_eq!(s.target(&c), 2);
        let bad = s.path(0, w(2, &[2])).unwrap();
        assert_eq!(s.path_compose(&p1, &bad), Err(Error::NotComposable { target: 1, start: 0 }));
        let id = s.path(2, Word::identity(2)).unwrap();
        assert_eq!(s.path_compose(&id, &s.path(2, w(2, &[1])).unwrap()).unwrap(), s.path(2, w(2, &[1])).unwrap());

        assert_eq!(s.path_invert(&p1), s.path(1, w(2, &[-1])).unwrap());
        assert_eq!(s.path_invert(&id), id);
        assert_eq!(s.path_invert(&s.path_invert(&c)), c);

        assert_eq!(s.deck_act(1, &p1), s.path(1, w(2, &[1])).unwrap());
        assert_eq!(s.deck_act(0, &p1), p1);
        let dc = s.deck_act(2, &c);
        assert_eq!(dc, s.path_compose(&s.deck_act(2, &p1), &s.deck_act(2, &p2)).unwrap());
    }

    #[test]
    fn coset_examples() {
        let s = b23();
        assert!(s.same_coset_class(&w(2, &[1]), &w(2, &[2])).unwrap());
        assert!(!s.same_coset_class(&w(2, &[1]), &w(2, &[1, 2])).unwrap());
        assert!(s.same_coset_class(&w(2, &[1, -2, 2]), &w(2, &[1])).unwrap());
    }

    #[test]
    fn liftability() {
        for n in 2..=5 {
            for k in 2..=6 {
                let s = CoverSpec::burau(n, k).unwrap();
                for i in 1..n {
                    assert!(s.liftable_one_boundary(&artin_generator(n, i, false).unwrap()).unwrap());
                    assert!(s.liftable_one_boundary(&artin_generator(n, i, true).unwrap()).unwrap());
                }
            }
        }
        let s = CoverSpec::new(2, DeckGroup::cyclic(2).unwrap(), alloc::vec![1, 0], 1).unwrap();
        let sigma = artin_generator(2, 1, false).unwrap();
        assert!(!s.liftable_one_boundary(&sigma).unwrap());
        assert_eq!(s.lift_automorphism(&sigma).unwrap_err(), Error::NotLiftable { generator: 1 });
        assert!(s.liftable_one_boundary(&FreeEndo::identity(2)).unwrap());
    }

    #[test]
    fn annulus_marked_liftability() {
        let s = CoverSpec::new(1, DeckGroup::cyclic(2).unwrap(), alloc::vec![1], 2).unwrap();
        let t = MarkedAutomorphism::new(FreeEndo::identity(1), alloc::vec![w(1, &[1])]).unwrap();
        assert!(!s.liftable_marked(&t).unwrap());
        assert!(s.liftable_marked(&t.compose(&t).unwrap()).unwrap());
        assert!(s.liftable_marked(&MarkedAutomorphism::identity(1, 1)).unwrap());
        assert!(s.liftable_marked(&MarkedAutomorphism::identity(1, 2)).is_err());
        assert!(s.liftable_one_boundary(&FreeEndo::identity(1)).is_err());
    }

    #[test]
    fn lifted_generators_and_factorization() {
        let s = b23();
        assert_eq!(s.lifted_generator(0, 1).unwrap(), s.path(0, w(2, &[1])).unwrap());
        assert_eq!(s.target(&s.lifted_generator(2, 2).unwrap()), 0);
        assert!(s.lifted_generator(0, 5).is_err());

        let f = s.express_in_lifted_generators(&s.path(0, w(2, &[1, 2])).unwrap());
        assert_eq!(
            f,
            [
                LiftedLetter { deck: 0, generator: 1, inverse: false },
                LiftedLetter { deck: 1, generator: 2, inverse: false }
            ]
        );
        assert!(s.express_in_lifted_generators(&s.path(1, Word::identity(2)).unwrap()).is_empty());
        let f = s.express_in_lifted_generators(&s.path(0, w(2, &[-1])).unwrap());
        assert_eq!(f, [LiftedLetter { deck: 2, generator: 1, inverse: true }]);
    }

    #[test]
    fn boundary_counts() {
        assert_eq!(b23().cover_boundary_count().unwrap(), 1);
        assert_eq!(CoverSpec::burau(2, 4).unwrap().cover_boundary_count().unwrap(), 2);
        assert_eq!(CoverSpec::burau(4, 2).unwrap().cover_boundary_count().unwrap(), 2);
        let l = CoverSpec::burau(2, 4).unwrap().boundary_loop(1).unwrap();
        assert_eq!(l.word, w(2, &[1, 2, 1, 2]));
    }

    #[test]
    fn lift_examples() {
        let s = b23();
        let id = s.lift_automorphism(&FreeEndo::identity(2)).unwrap();
        let p = s.path(1, w(2, &[1, 2, -1, 1])).unwrap();
        assert_eq!(id.apply(&p).unwrap(), p);
        let n = s.lift_automorphism(&artin_generator(2, 1, false).unwrap()).unwrap();
        for d in 0..3 {
            let b = s.path(d, w(2, &[1, 2])).unwrap();
            assert_eq!(n.apply(&b).unwrap(), b);
        }
    }

    fn arb_word(rank: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((1..=rank as i64, any::<bool>()), 0..16).prop_map(move |v| {
            let s: Vec<i64> = v.into_iter().map(|(i, neg)| if neg { -i } else { i }).collect();
            Word::from_signed(rank, &s).unwrap()
        })
    }

    fn arb_braid_endo(n: usize) -> impl Strategy<Value = FreeEndo> {
        prop::collection::vec((1..n, any::<bool>()), 0..6).prop_map(move |gens| {
            gens.into_iter().fold(FreeEndo::identity(n), |acc, (i, inv)| {
                acc.compose(&artin_generator(n, i, inv).unwrap()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn target_bookkeeping(u in arb_word(3), v in arb_word(3), d in 0usize..4, e in 0usize..4) {
            let s = CoverSpec::burau(3, 4).unwrap();
            let p = s.path(d, u).unwrap();
            let q = s.path(e, v).unwrap();
            match s.path_compose(&p, &q) {
                Ok(c) => {
                    prop_assert_eq!(s.target(&p), e);
                    prop_assert_eq!(c.start, d);
                    prop_assert_eq!(s.target(&c), s.target(&q));
                }
                Err(_) => prop_assert_ne!(s.target(&p), e),
            }
        }

        #[test]
        fn factorization_roundtrip(u in arb_word(3), d in 0usize..5) {
            let s = CoverSpec::burau(3, 5).unwrap();
            let p = s.path(d, u).unwrap();
            let f = s.express_in_lifted_generators(&p);
            prop_assert_eq!(s.recompose(d, &f).unwrap(), p);
        }

        #[test]
        fn lift_naturality_and_equivariance(f in arb_braid_endo(3), u in arb_word(3), d in 0usize..4, e in 0usize..4) {
            let s = CoverSpec::burau(3, 4).unwrap();
            let l = s.lift_automorphism(&f).unwrap();
            let p = s.path(d, u.clone()).unwrap();
            let lp = l.apply(&p).unwrap();
            prop_assert_eq!(&lp.word, &f.apply(&u).unwrap());
            prop_assert_eq!(s.target(&lp), s.target(&p));
            prop_assert_eq!(l.apply(&s.deck_act(e, &p)).unwrap(), s.deck_act(e, &lp));
        }

        #[test]
        fn lift_is_homomorphism(f in arb_braid_endo(3), g in arb_braid_endo(3), u in arb_word(3), d in 0usize..3) {
            let s = CoverSpec::burau(3, 3).unwrap();
            let lf = s.lift_automorphism(&f).unwrap();
            let lg = s.lift_automorphism(&g).unwrap();
            let lfg = s.lift_automorphism(&f.compose(&g).unwrap()).unwrap();
            let p = s.path(d, u).unwrap();
            prop_assert_eq!(lfg.apply(&p).unwrap(), lf.apply(&lg.apply(&p).unwrap()).unwrap());
            prop_assert_eq!(lf.compose(&lg).unwrap(), lfg);
        }

        #[test]
        fn q_eval_multiplicative(u in arb_word(2), v in arb_word(2)) {
            let z6 = DeckGroup::cyclic(6).unwrap();
            let s = CoverSpec::new(2, z6, alloc::vec![2, 3], 1).unwrap();
            let lhs = s.q_eval(&u.concat(&v).unwrap()).unwrap();
            let rhs = s.deck().mul(s.q_eval(&u).unwrap(), s.q_eval(&v).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
