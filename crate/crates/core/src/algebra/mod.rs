//! Exterior algebra on a finite list of odd-degree generators.

mod derivation;
mod form;

use std::cmp::Ordering;
use std::fmt;

pub use derivation::{Derivation, Parity};
pub use form::Form;

/// Bigrading type of a generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenType {
    /// type (1,0)
    Holomorphic,
    /// type (0,1)
    Antiholomorphic,
    /// explicitly real, no bidegree
    Real,
}

impl GenType {
    pub fn bidegree(self) -> Option<(u32, u32)> {
        match self {
            GenType::Holomorphic => Some((1, 0)),
            GenType::Antiholomorphic => Some((0, 1)),
            GenType::Real => None,
        }
    }

    pub fn conjugate(self) -> GenType {
        match self {
            GenType::Holomorphic => GenType::Antiholomorphic,
            GenType::Antiholomorphic => GenType::Holomorphic,
            GenType::Real => GenType::Real,
        }
    }

    pub fn dsl_name(self) -> &'static str {
        match self {
            GenType::Holomorphic => "(1,0)",
            GenType::Antiholomorphic => "(0,1)",
            GenType::Real => "real",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    /// Always odd.
    pub degree: u32,
    pub kind: Option<GenType>,
    /// Index of the conjugate partner; `None` means "undeclared".
    pub conj: Option<usize>,
}

/// The ordered generator list every [`Form`] is expressed over.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    generators: Vec<Generator>,
}

pub const MAX_GENERATORS: usize = 64;

impl Algebra {
    /// Callers guarantee odd degrees and at most [`MAX_GENERATORS`] entries.
    pub fn new(generators: Vec<Generator>) -> Self {
        assert!(generators.len() <= MAX_GENERATORS, "too many generators");
        debug_assert!(generators.iter().all(|g| g.degree % 2 == 1));
        Algebra { generators }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn top(&self) -> Monomial {
        Monomial::from_bits(if self.len() == 64 { u64::MAX } else { (1u64 << self.len()) - 1 })
    }

    /// True when every generator carries a (1,0) or (0,1) type.
    pub fn is_bigraded(&self) -> bool {
        !self.is_empty()
            && self
                .generators
                .iter()
                .all(|g| g.kind.and_then(GenType::bidegree).is_some())
    }

    /// Number of (1,0) generators.
    pub fn complex_dimension(&self) -> usize {
        self.generators
            .iter()
            .filter(|g| g.kind == Some(GenType::Holomorphic))
            .count()
    }

    /// Conjugate partner of a generator: declared partner, or the generator itself
    /// when it is real or untyped.
    pub fn conjugate_of(&self, index: usize) -> Option<usize> {
        let g = &self.generators[index];
        match (g.conj, g.kind) {
            (Some(j), _) => Some(j),
            (None, None) | (None, Some(GenType::Real)) => Some(index),
            (None, Some(_)) => None,
        }
    }

    /// All monomials of total degree `k`, in canonical order.
    pub fn monomials_of_degree(&self, k: u32) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self.all_monomials().filter(|m| m.degree(self) == k).collect();
        out.sort();
        out
    }

    /// All monomials of bidegree `(p, q)`, in canonical order.
    pub fn monomials_of_bidegree(&self, p: u32, q: u32) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self
            .all_monomials()
            .filter(|m| m.bidegree(self) == Some((p, q)))
            .collect();
        out.sort();
        out
    }

    pub fn top_degree(&self) -> u32 {
        self.generators.iter().map(|g| g.degree).sum()
    }

    fn all_monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        let n = self.len();
        assert!(n < 32, "enumerating monomials of a large algebra");
        (0u64..(1u64 << n)).map(Monomial::from_bits)
    }
}

/// A product of distinct generators in increasing index order, stored as a bitmask.
///
/// Ordered by word length, then lexicographically on the index sequence.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const UNIT: Monomial = Monomial(0);

    pub fn from_bits(bits: u64) -> Self {
        Monomial(bits)
    }

    pub fn generator(index: usize) -> Self {
        Monomial(1u64 << index)
    }

    /// Canonical monomial of an index list plus the sign of the sorting permutation;
    /// `None` when an index repeats.
    pub fn from_indices(indices: &[usize]) -> Option<(i32, Monomial)> {
        let mut acc = (1, Monomial::UNIT);
        for &i in indices {
            let (s, m) = acc.1.wedge(Monomial::generator(i))?;
            acc = (acc.0 * s, m);
        }
        Some(acc)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_unit(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn degree(self, alg: &Algebra) -> u32 {
        self.indices().map(|i| alg.generators[i].degree).sum()
    }

    pub fn bidegree(self, alg: &Algebra) -> Option<(u32, u32)> {
        self.indices().try_fold((0, 0), |(p, q), i| {
            let (a, b) = alg.generators[i].kind?.bidegree()?;
            Some((p + a, q + b))
        })
    }

    /// `self ∧ other` as (sign, monomial), or `None` if they share a generator.
    /// The sign is the parity of the merge, all generators being odd.
    pub fn wedge(self, other: Monomial) -> Option<(i32, Monomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        for j in other.indices() {
            inversions += (self.0 >> j >> 1).count_ones();
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Monomial(self.0 | other.0)))
    }

    /// Removes `other` and returns the complement.
    pub fn without(self, other: Monomial) -> Monomial {
        Monomial(self.0 & !other.0)
    }

    pub fn display<'a>(self, alg: &'a Algebra) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, alg }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let diff = self.0 ^ other.0;
        let j = diff.trailing_zeros();
        // Whoever holds index j has j as its next entry; the other continues higher.
        if self.0 >> j & 1 == 1 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{:?}", self.indices().collect::<Vec<_>>())
    }
}

pub struct MonomialDisplay<'a> {
    mono: Monomial,
    alg: &'a Algebra,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_unit() {
            return write!(f, "1");
        }
        for (k, i) in self.mono.indices().enumerate() {
            if k > 0 {
                write!(f, "^")?;
            }
            write!(f, "{}", self.alg.generators[i].name)?;
        }
        Ok(())
    }
}
