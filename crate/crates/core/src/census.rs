//! Census of connected cyclic covers of the `n`-punctured disk.
//!
//! A class is a label vector `q in (Z/k)^n` whose entries generate `Z/k`.
//! The Artin generator `s_i` acts by `q -> q o s_i`, which swaps labels `i`
//! and `i+1`; `s_i'` acts the same way. The LMod index of a class is the
//! size of its orbit.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::cover::{CoverSpec, DeckGroup};
use crate::{Error, Result};

/// Largest `k^n` accepted by the enumeration.
pub const MAX_CLASSES: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoverClass {
    pub k: usize,
    pub labels: Vec<usize>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl CoverClass {
    pub fn new(k: usize, labels: Vec<usize>) -> Result<Self> {
        if k < 2 || labels.is_empty() {
            return Err(Error::InvalidArgument("need n >= 1 and k >= 2".into()));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= k) {
            return Err(Error::InvalidArgument(alloc::format!("label {bad} not reduced mod {k}")));
        }
        let c = CoverClass { k, labels };
        if !c.is_connected() {
            return Err(Error::DisconnectedCover);
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    fn is_connected(&self) -> bool {
        self.labels.iter().fold(self.k, |g, &l| gcd(g, l)) == 1
    }

    /// Constant vector with a unit entry, i.e. the Burau kernel.
    pub fn is_burau(&self) -> bool {
        let first = self.labels[0];
        gcd(first, self.k) == 1 && self.labels.iter().all(|&l| l == first)
    }

    /// The class under `s_i` (1-based), equally `s_i'`.
    pub fn act(&self, i: usize) -> CoverClass {
        let mut labels = self.labels.clone();
        labels.swap(i - 1, i);
        CoverClass { k: self.k, labels }
    }

    /// The cover over the disk with one boundary component.
    pub fn spec(&self) -> Result<CoverSpec> {
        CoverSpec::new(self.n(), DeckGroup::cyclic(self.k)?, self.labels.clone(), 1)
    }
}

fn check_size(n: usize, k: usize) -> Result<()> {
    if n == 0 || k < 2 {
        return Err(Error::InvalidArgument("need n >= 1 and k >= 2".into()));
    }
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total.saturating_mul(k as u64);
        if total > MAX_CLASSES {
            return Err(Error::InvalidArgument(alloc::format!(
                "{k}^{n} label vectors exceed the limit of {MAX_CLASSES}"
            )));
        }
    }
    Ok(())
}

/// All classes for `(n, k)` in lexicographic order.
pub fn enumerate_cover_classes(n: usize, k: usize) -> Result<Vec<CoverClass>> {
    check_size(n, k)?;
    let mut out = Vec::new();
    let mut labels = alloc::vec![0usize; n];
    loop {
        let c = CoverClass { k, labels: labels.clone() };
        if c.is_connected() {
            out.push(c);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            labels[pos] += 1;
            if labels[pos] < k {
                break;
            }
            labels[pos] = 0;
        }
    }
}

/// Orbit of `c` under the Artin generators, by breadth-first search.
pub fn braid_orbit(c: &CoverClass) -> BTreeSet<CoverClass> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(c.clone());
    queue.push_back(c.clone());
    while let Some(x) = queue.pop_front() {
        for i in 1..x.n() {
            let y = x.act(i);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn lmod_index(c: &CoverClass) -> usize {
    braid_orbit(c).len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub members: Vec<CoverClass>,
    pub burau: bool,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Orbit decomposition of all classes for `(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub n: usize,
    pub k: usize,
    pub class_count: usize,
    /// Ordered by smallest member; members sorted.
    pub orbits: Vec<Orbit>,
    /// LMod index -> number of classes with that index.
    pub index_histogram: BTreeMap<usize, usize>,
}

pub fn census(n: usize, k: usize) -> Result<OrbitReport> {
    let classes = enumerate_cover_classes(n, k)?;
    let mut assigned: BTreeSet<CoverClass> = BTreeSet::new();
    let mut orbits = Vec::new();
    let mut index_histogram = BTreeMap::new();
    for c in &classes {
        if assigned.contains(c) {
            continue;
        }
        let orbit = braid_orbit(c);
        let members: Vec<CoverClass> = orbit.into_iter().collect();
        let burau = members.iter().any(CoverClass::is_burau);
        *index_histogram.entry(members.len()).or_insert(0) += members.len();
        assigned.extend(members.iter().cloned());
        orbits.push(Orbit { members, burau });
    }
    Ok(OrbitReport { n, k, class_count: classes.len(), orbits, index_histogram })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedClassReport {
    pub fixed: Vec<CoverClass>,
    /// Whether every fixed class is constant with a unit entry.
    pub fixed_are_burau: bool,
    /// Whether every Burau class is fixed.
    pub burau_are_fixed: bool,
    pub index_histogram: BTreeMap<usize, usize>,
}

pub fn classify_fixed_classes(n: usize, k: usize) -> Result<FixedClassReport> {
    let report = census(n, k)?;
    let fixed: Vec<CoverClass> =
        report.orbits.iter().filter(|o| o.size() == 1).map(|o| o.members[0].clone()).collect();
    let fixed_are_burau = fixed.iter().all(CoverClass::is_burau);
    let burau_are_fixed = report
        .orbits
        .iter()
        .flat_map(|o| o.members.iter().map(move |m| (o.size(), m)))
        .all(|(size, m)| !m.is_burau() || size == 1);
    Ok(FixedClassReport { fixed, fixed_are_burau, burau_are_fixed, index_histogram: report.index_histogram })
}
