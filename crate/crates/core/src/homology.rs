//! Schreier bases of `ker q`, induced actions on the first homology of the
//! punctured cover and of the cover with punctures filled, and the Lefschetz
//! fixed-point count.
//!
//! The transversal is built breadth-first from the identity, trying the
//! positive generators `g1, ..., gn` in order at each element. Basis symbols
//! are ordered by (deck element, generator).

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::autos::FreeEndo;
use crate::cover::CoverSpec;
use crate::matrix::IntegerMatrix;
use crate::words::{Letter, Word};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct SchreierBasis {
    spec: CoverSpec,
    transversal: Vec<Word>,
    basis: Vec<Word>,
    /// `symbol[d][i-1]` is the basis index of `T(d) g_i T(d q_i)'`, unless
    /// that edge belongs to the spanning tree.
    symbol: Vec<Vec<Option<usize>>>,
}

impl SchreierBasis {
    pub fn new(spec: &CoverSpec) -> Result<Self> {
        let deck = spec.deck();
        let n = spec.base_rank();
        let order = deck.order();
        let mut transversal: Vec<Option<Word>> = alloc::vec![None; order];
        let mut tree = alloc::vec![alloc::vec![false; n]; order];
        transversal[0] = Some(Word::identity(n));
        let mut queue = VecDeque::from([0usize]);
        while let Some(d) = queue.pop_front() {
            let td = transversal[d].clone().expect("visited");
            for i in 1..=n {
                let e = deck.mul(d, spec.labels()[i - 1]);
                if transversal[e].is_none() {
                    transversal[e] = Some(td.concat_unchecked(&Word::generator(n, i)?));
                    tree[d][i - 1] = true;
                    queue.push_back(e);
                }
            }
        }
        let transversal: Vec<Word> =
            transversal.into_iter().map(|t| t.ok_or(Error::DisconnectedCover)).collect::<Result<_>>()?;

        let mut basis = Vec::new();
        let mut symbol = alloc::vec![alloc::vec![None; n]; order];
        for d in 0..order {
            for i in 1..=n {
                if tree[d][i - 1] {
                    continue;
                }
                let e = deck.mul(d, spec.labels()[i - 1]);
                let w = transversal[d].concat_unchecked(&Word::generator(n, i)?).concat_unchecked(&transversal[e].invert());
                symbol[d][i - 1] = Some(basis.len());
                basis.push(w);
            }
        }
        Ok(SchreierBasis { spec: spec.clone(), transversal, basis, symbol })
    }

    pub fn spec(&self) -> &CoverSpec {
        &self.spec
    }

    /// Coset representative `T(d)`.
    pub fn transversal(&self, d: usize) -> &Word {
        &self.transversal[d]
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    /// Rank of `ker q`.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reidemeister-Schreier rewriting of a word in `ker q` over basis symbols.
    pub fn rewrite(&self, w: &Word) -> Result<Word> {
        let q = self.spec.q_eval(w)?;
        if q != 0 {
            return Err(Error::NotInKernel);
        }
        let deck = self.spec.deck();
        let mut d = 0;
        let mut out = Vec::new();
        for &l in w.letters() {
            let label = self.spec.labels()[l.index - 1];
            if l.inverse {
                d = deck.mul(d, deck.inv(label));
                if let Some(s) = self.symbol[d][l.index - 1] {
                    out.push(Letter::neg(s + 1));
                }
            } else {
                if let Some(s) = self.symbol[d][l.index - 1] {
                    out.push(Letter::pos(s + 1));
                }
                d = deck.mul(d, label);
            }
        }
        Word::from_letters(self.rank(), out)
    }

    /// Substitutes basis words for basis symbols.
    pub fn expand(&self, w: &Word) -> Result<Word> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: w.rank() });
        }
        let mut out = Word::identity(self.spec.base_rank());
        for l in w.letters() {
            let b = &self.basis[l.index - 1];
            out = if l.inverse { out.concat_unchecked(&b.invert()) } else { out.concat_unchecked(b) };
        }
        Ok(out)
    }

    /// Action of a liftable `f` on the vertex group at the basepoint, as an
    /// endomorphism over basis symbols.
    pub fn restrict_to_kernel(&self, f: &FreeEndo) -> Result<FreeEndo> {
        if let Some(generator) = self.spec.first_unliftable(f)? {
            return Err(Error::NotLiftable { generator });
        }
        let images = self.basis.iter().map(|b| self.rewrite(&f.apply(b)?)).collect::<Result<_>>()?;
        FreeEndo::new(self.rank(), images)
    }

    /// Action of the deck element `e`, transported back to the basepoint along
    /// the lift of `T(e)`: conjugation by `T(e)`.
    pub fn deck_action(&self, e: usize) -> Result<FreeEndo> {
        if !self.spec.deck().contains(e) {
            return Err(Error::InvalidArgument(alloc::format!("deck element {e} out of range")));
        }
        let t = &self.transversal[e];
        let images = self.basis.iter().map(|b| self.rewrite(&b.conjugate_by(t)?)).collect::<Result<_>>()?;
        FreeEndo::new(self.rank(), images)
    }

    /// Homology classes of the loops around puncture preimages: for each
    /// generator `g_i` with `o = ord(q(g_i))` and each orbit of right
    /// multiplication by `q(g_i)`, the class of `T(d) g_i^o T(d)'`.
    pub fn peripheral_classes(&self) -> Result<Vec<Vec<i64>>> {
        let deck = self.spec.deck();
        let n = self.spec.base_rank();
        let mut out = Vec::new();
        for i in 1..=n {
            let qi = self.spec.labels()[i - 1];
            let o = deck.element_order(qi);
            let mut seen = alloc::vec![false; deck.order()];
            for d in 0..deck.order() {
                if seen[d] {
                    continue;
                }
                let mut x = d;
                for _ in 0..o {
                    seen[x] = true;
                    x = deck.mul(x, qi);
                }
                let loop_word = Word::generator(n, i)?.pow(o as i64).conjugate_by(&self.transversal[d])?;
                out.push(self.rewrite(&loop_word)?.exponent_sums());
            }
        }
        Ok(out)
    }

    /// Matrix of an endomorphism over basis symbols on `H_1` of the punctured cover.
    pub fn h1_unbranched_matrix(&self, g: &FreeEndo) -> Result<IntegerMatrix> {
        if g.rank() != self.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: g.rank() });
        }
        Ok(g.abelianization_matrix())
    }

    /// Induced matrix on `H_1` of the filled cover: the quotient of the
    /// abelianized kernel by the span of the peripheral classes.
    pub fn h1_branched_matrix(&self, g: &FreeEndo) -> Result<IntegerMatrix> {
        let m = self.h1_unbranched_matrix(g)?;
        let r = self.rank();
        let a = IntegerMatrix::from_columns(r, &self.peripheral_classes()?)?;
        let split = a.split_column_span()?;
        let conj = split.r.mul(&m)?.mul(&split.r_inv)?;
        let p = split.rank;
        if !conj.submatrix(p, r, 0, p).is_zero() {
            return Err(Error::PeripheralNotInvariant);
        }
        Ok(conj.submatrix(p, r, p, r))
    }

    pub fn deck_matrix(&self, e: usize, branched: bool) -> Result<IntegerMatrix> {
        let g = self.deck_action(e)?;
        if branched {
            self.h1_branched_matrix(&g)
        } else {
            self.h1_unbranched_matrix(&g)
        }
    }
}

/// `1 - trace`, the fixed-point count of a finite-order map of a compact
/// surface with boundary.
pub fn lefschetz_fixed_points(mat: &IntegerMatrix) -> Result<i64> {
    1i64.checked_sub(mat.trace()?).ok_or(Error::Overflow)
}
