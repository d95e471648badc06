//! Free-group endomorphisms given by generator images, Artin generators, and
//! marked automorphisms of the groupoid with one free vertex group and
//! `m - 1` star elements.
//!
//! `compose(e1, e2)` is `e1` after `e2`: its images are `apply(e1, images of e2)`.

use alloc::vec::Vec;

use crate::matrix::IntegerMatrix;
use crate::words::{Letter, Word};
use crate::{Error, Result};

/// An endomorphism of the free group of rank `rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeEndo {
    rank: usize,
    images: Vec<Word>,
}

impl FreeEndo {
    pub fn new(rank: usize, images: Vec<Word>) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::ShapeMismatch(alloc::format!(
                "{} images for rank {}",
                images.len(),
                rank
            )));
        }
        if let Some(w) = images.iter().find(|w| w.rank() != rank) {
            return Err(Error::RankMismatch { left: rank, right: w.rank() });
        }
        Ok(FreeEndo { rank, images })
    }

    pub fn identity(rank: usize) -> Self {
        let images = (1..=rank).map(|i| Word::from_reduced_unchecked(rank, alloc::vec![Letter::pos(i)])).collect();
        FreeEndo { rank, images }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of the generator `g<i>` (1-based).
    pub fn image(&self, i: usize) -> Result<&Word> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank });
        }
        Ok(&self.images[i - 1])
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, w)| w.letters() == [Letter::pos(i + 1)])
    }

    /// Homomorphic substitution.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch { left: self.rank, right: w.rank() });
        }
        Ok(self.apply_unchecked(w))
    }

    pub(crate) fn apply_unchecked(&self, w: &Word) -> Word {
        let mut out = Word::identity(self.rank);
        for l in w.letters() {
            let img = &self.images[l.index - 1];
            out = if l.inverse { out.concat_unchecked(&img.invert()) } else { out.concat_unchecked(img) };
        }
        out
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &FreeEndo) -> Result<FreeEndo> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        let images = other.images.iter().map(|w| self.apply_unchecked(w)).collect();
        Ok(FreeEndo { rank: self.rank, images })
    }

    /// `self^p` for `p >= 0`.
    pub fn pow(&self, p: u32) -> FreeEndo {
        let mut out = FreeEndo::identity(self.rank);
        for _ in 0..p {
            out = self.compose(&out).expect("same rank");
        }
        out
    }

    /// Column `j` holds the exponent sums of the image of `g<j+1>`.
    pub fn abelianization_matrix(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(self.rank, self.rank);
        for (j, img) in self.images.iter().enumerate() {
            for (i, s) in img.exponent_sums().into_iter().enumerate() {
                m.set(i, j, s);
            }
        }
        m
    }
}

/// Artin generator `sigma_i^{sign}` acting on the free group of rank `n`:
/// `g_i -> g_i g_{i+1} g_i'`, `g_{i+1} -> g_i`.
pub fn artin_generator(n: usize, i: usize, inverse: bool) -> Result<FreeEndo> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, rank: n.saturating_sub(1) });
    }
    let mut e = FreeEndo::identity(n);
    let (a, b) = (Letter::pos(i), Letter::pos(i + 1));
    if inverse {
        e.images[i - 1] = Word::from_reduced_unchecked(n, alloc::vec![b]);
        e.images[i] = Word::from_reduced_unchecked(n, alloc::vec![b.inv(), a, b]);
    } else {
        e.images[i - 1] = Word::from_reduced_unchecked(n, alloc::vec![a, b, a.inv()]);
        e.images[i] = Word::from_reduced_unchecked(n, alloc::vec![a]);
    }
    Ok(e)
}

/// Boundary word `g1 g2 ... gn`.
pub fn boundary_word(n: usize) -> Word {
    Word::from_reduced_unchecked(n, (1..=n).map(Letter::pos).collect())
}

/// Automorphism of the groupoid with objects `0..=m-1`, given by its action
/// `psi` on the vertex group at object 0 and the images `a_1..a_{m-1}` of the
/// star elements. Object 0 carries `a_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedAutomorphism {
    pub psi: FreeEndo,
    pub stars: Vec<Word>,
}

/// A groupoid element `(source, word, target)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedElement {
    pub source: usize,
    pub word: Word,
    pub target: usize,
}

impl MarkedElement {
    pub fn new(source: usize, word: Word, target: usize) -> Self {
        MarkedElement { source, word, target }
    }

    pub fn compose(&self, other: &MarkedElement) -> Result<MarkedElement> {
        if self.target != other.source {
            return Err(Error::NotComposable { target: self.target, start: other.source });
        }
        Ok(MarkedElement { source: self.source, word: self.word.concat(&other.word)?, target: other.target })
    }
}

impl MarkedAutomorphism {
    pub fn new(psi: FreeEndo, stars: Vec<Word>) -> Result<Self> {
        if let Some(w) = stars.iter().find(|w| w.rank() != psi.rank()) {
            return Err(Error::RankMismatch { left: psi.rank(), right: w.rank() });
        }
        Ok(MarkedAutomorphism { psi, stars })
    }

    pub fn identity(rank: usize, star_count: usize) -> Self {
        MarkedAutomorphism { psi: FreeEndo::identity(rank), stars: alloc::vec![Word::identity(rank); star_count] }
    }

    pub fn rank(&self) -> usize {
        self.psi.rank()
    }

    /// Number of objects, `star count + 1`.
    pub fn objects(&self) -> usize {
        self.stars.len() + 1
    }

    fn star(&self, i: usize) -> Result<Word> {
        match i {
            0 => Ok(Word::identity(self.rank())),
            _ => self.stars.get(i - 1).cloned().ok_or_else(|| {
                Error::InvalidArgument(alloc::format!("object index {} (have {} objects)", i, self.objects()))
            }),
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &MarkedAutomorphism) -> Result<MarkedAutomorphism> {
        if self.rank() != other.rank() || self.stars.len() != other.stars.len() {
            return Err(Error::ShapeMismatch(alloc::format!(
                "rank {} with {} stars vs rank {} with {} stars",
                self.rank(),
                self.stars.len(),
                other.rank(),
                other.stars.len()
            )));
        }
        let psi = self.psi.compose(&other.psi)?;
        let stars =
            other.stars.iter().zip(&self.stars).map(|(b, a)| self.psi.apply_unchecked(b).concat_unchecked(a)).collect();
        Ok(MarkedAutomorphism { psi, stars })
    }

    /// `(i, g, j) -> (i, a_i' psi(g) a_j, j)`.
    pub fn apply(&self, e: &MarkedElement) -> Result<MarkedElement> {
        let ai = self.star(e.source)?;
        let aj = self.star(e.target)?;
        let mid = self.psi.apply(&e.word)?;
        Ok(MarkedElement { source: e.source, word: ai.invert().concat_unchecked(&mid).concat_unchecked(&aj), target: e.target })
    }
}
