//! Taxa universes and faces.
//!
//! A [`TaxaSet`] fixes an ordering of taxon labels; a [`Face`] is a non-empty
//! subset of that ordering stored as a `u128` bitmask, so subset tests and
//! unions are single word operations.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest universe a [`Face`] bitmask can address.
pub const MAX_TAXA: usize = 128;

#[derive(Debug)]
struct TaxaInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// An ordered list of distinct taxon labels. Cheap to clone.
#[derive(Debug, Clone)]
pub struct TaxaSet(Arc<TaxaInner>);

impl TaxaSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidTaxa("no labels".into()));
        }
        if labels.len() > MAX_TAXA {
            return Err(Error::TooManyTaxa(labels.len()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::InvalidTaxa(format!("label {i} is empty")));
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidTaxa(format!("duplicate label {l:?}")));
            }
        }
        Ok(TaxaSet(Arc::new(TaxaInner { labels, index })))
    }

    /// Labels `t0, t1, ...`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("t{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    /// The face containing every taxon.
    pub fn full(&self) -> Face {
        Face(mask_below(self.len()))
    }

    pub fn contains_face(&self, face: Face) -> bool {
        face.0 & !mask_below(self.len()) == 0
    }

    pub fn face<S: AsRef<str>>(&self, labels: &[S]) -> Result<Face> {
        let mut bits = 0u128;
        for l in labels {
            let i = self
                .index_of(l.as_ref())
                .ok_or_else(|| Error::UnknownTaxon(l.as_ref().to_string()))?;
            bits |= 1 << i;
        }
        Face::from_bits(bits).ok_or(Error::EmptyFace)
    }

    pub fn face_labels(&self, face: Face) -> Vec<&str> {
        face.iter().map(|i| self.label(i)).collect()
    }

    /// Human-readable `{a,b,c}` rendering.
    pub fn display(&self, face: Face) -> String {
        format!("{{{}}}", self.face_labels(face).join(","))
    }

    /// Permutation `p` with `other.label(p[i]) == self.label(i)`, if both hold the same labels.
    pub fn permutation_to(&self, other: &TaxaSet) -> Result<Vec<usize>> {
        if self.len() != other.len() {
            return Err(Error::UniverseMismatch);
        }
        self.labels()
            .iter()
            .map(|l| other.index_of(l).ok_or(Error::UniverseMismatch))
            .collect()
    }
}

impl PartialEq for TaxaSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }
}

impl Eq for TaxaSet {}

pub(crate) fn mask_below(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// A non-empty set of taxon indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(u128);

impl Face {
    pub fn from_bits(bits: u128) -> Option<Face> {
        (bits != 0).then_some(Face(bits))
    }

    pub fn singleton(i: usize) -> Face {
        Face(1 << i)
    }

    pub fn pair(i: usize, j: usize) -> Face {
        Face((1 << i) | (1 << j))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Option<Face> {
        Self::from_bits(indices.into_iter().fold(0, |acc, i| acc | (1u128 << i)))
    }

    #[inline]
    pub fn bits(self) -> u128 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Always false; present for clippy's `len_without_is_empty`.
    pub fn is_empty(self) -> bool {
        false
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset(self, other: Face) -> bool {
        self.0 != other.0 && self.is_subset(other)
    }

    #[inline]
    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Option<Face> {
        Face::from_bits(self.0 & other.0)
    }

    pub fn with(self, i: usize) -> Face {
        Face(self.0 | 1 << i)
    }

    pub fn iter(self) -> FaceIter {
        FaceIter(self.0)
    }

    /// Lowest member index.
    pub fn first(self) -> usize {
        self.0.trailing_zeros() as usize
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct FaceIter(u128);

impl Iterator for FaceIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for FaceIter {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_and_empty_labels() {
        assert!(TaxaSet::new(["x", "y", "x"]).is_err());
        assert!(TaxaSet::new(["x", ""]).is_err());
        assert!(TaxaSet::new(Vec::<String>::new()).is_err());
        assert!(TaxaSet::numbered(129).is_err());
        assert_eq!(TaxaSet::numbered(128).unwrap().full().len(), 128);
    }

    #[test]
    fn face_ops() {
        let x = TaxaSet::new(["x", "y", "z"]).unwrap();
        let xy = x.face(&["x", "y"]).unwrap();
        let yz = x.face(&["y", "z"]).unwrap();
        assert_eq!(xy.intersection(yz), Some(Face::singleton(1)));
        assert!(xy.is_subset(x.full()));
        assert!(!xy.is_subset(yz));
        assert_eq!(x.display(xy.union(yz)), "{x,y,z}");
        assert!(x.face::<&str>(&[]).is_err());
        assert!(x.face(&["w"]).is_err());
        assert_eq!(xy.iter().collect::<Vec<_>>(), vec![0, 1]);
    }
}
