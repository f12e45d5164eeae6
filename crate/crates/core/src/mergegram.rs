//! Mergegrams: lifespans of maximal faces.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::combinatorics::FaceSet;
use crate::error::{Error, Result};
use crate::filtration::Filtration;
use crate::gram::{Gram, GramKind};
use crate::network::Ultranetwork;
use crate::taxa::{Face, TaxaSet};

/// A half-open lifespan `[birth, death)`; `death` may be `+∞`.
#[derive(Debug, Clone, Copy)]
pub struct Interval {
    pub birth: f64,
    pub death: f64,
}

impl Interval {
    pub fn new(birth: f64, death: f64) -> Interval {
        debug_assert!(birth < death, "degenerate interval [{birth}, {death})");
        Interval { birth, death }
    }

    pub fn is_infinite(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    pub fn contains(&self, t: f64) -> bool {
        self.birth <= t && t < self.death
    }
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Interval {}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.birth.total_cmp(&other.birth).then(self.death.total_cmp(&other.death))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "[{}, inf)", self.birth)
        } else {
            write!(f, "[{}, {})", self.birth, self.death)
        }
    }
}

/// Multiset of intervals, stored sorted with multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Mergegram {
    points: Vec<(Interval, usize)>,
}

impl Mergegram {
    pub fn from_intervals<I: IntoIterator<Item = Interval>>(iter: I) -> Mergegram {
        let mut all: Vec<Interval> = iter.into_iter().collect();
        all.sort();
        let mut points: Vec<(Interval, usize)> = Vec::new();
        for i in all {
            match points.last_mut() {
                Some((last, m)) if *last == i => *m += 1,
                _ => points.push((i, 1)),
            }
        }
        Mergegram { points }
    }

    /// Distinct intervals with their multiplicities, in canonical order.
    pub fn points(&self) -> &[(Interval, usize)] {
        &self.points
    }

    /// Every interval, repeated by multiplicity.
    pub fn intervals(&self) -> impl Iterator<Item = Interval> + '_ {
        self.points.iter().flat_map(|&(i, m)| std::iter::repeat_n(i, m))
    }

    /// Total number of intervals counted with multiplicity.
    pub fn len(&self) -> usize {
        self.points.iter().map(|p| p.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// One interval per face that is ever maximal.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledMergegram {
    taxa: TaxaSet,
    entries: BTreeMap<Face, Interval>,
}

impl LabeledMergegram {
    pub fn new(taxa: TaxaSet, entries: BTreeMap<Face, Interval>) -> Result<Self> {
        for (f, i) in &entries {
            if !taxa.contains_face(*f) {
                return Err(Error::InvalidGram(format!("label {f:?} outside the universe")));
            }
            if !(i.birth < i.death) || !i.birth.is_finite() {
                return Err(Error::InvalidGram(format!("bad interval {i} for {}", taxa.display(*f))));
            }
        }
        Ok(LabeledMergegram { taxa, entries })
    }

    pub fn taxa(&self) -> &TaxaSet {
        &self.taxa
    }

    pub fn entries(&self) -> &BTreeMap<Face, Interval> {
        &self.entries
    }

    pub fn get(&self, face: Face) -> Option<Interval> {
        self.entries.get(&face).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in canonical order: by interval, then by label.
    pub fn sorted_entries(&self) -> Vec<(Face, Interval)> {
        let mut v: Vec<(Face, Interval)> = self.entries.iter().map(|(f, i)| (*f, *i)).collect();
        v.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.iter().cmp(b.0.iter())));
        v
    }

    pub fn mergegram(&self) -> Mergegram {
        Mergegram::from_intervals(self.entries.values().copied())
    }

    /// Faces alive at `t`.
    pub fn alive_at(&self, t: f64) -> Vec<Face> {
        self.entries.iter().filter(|(_, i)| i.contains(t)).map(|(f, _)| *f).collect()
    }

    /// Rebuilds the gram: the level at `t` is the set of faces whose interval contains `t`.
    pub fn to_gram(&self) -> Result<Gram> {
        let mut ts: Vec<f64> = self
            .entries
            .values()
            .flat_map(|i| [i.birth, i.death])
            .filter(|t| t.is_finite())
            .collect();
        ts.sort_by(f64::total_cmp);
        ts.dedup();
        let mut levels = Vec::new();
        for t in ts {
            let faces = FaceSet::new(self.alive_at(t))?;
            if levels.last().map_or(faces.is_empty(), |l: &crate::gram::Level| l.faces == faces) {
                continue;
            }
            levels.push(crate::gram::Level { critical: t, faces });
        }
        let g = Gram::new(self.taxa.clone(), levels, GramKind::Facegram)?;
        let kind = g.classify();
        g.with_kind(kind)
    }
}

/// Sweeps the levels, opening an interval when a face appears and closing it
/// when the face disappears. The top face never closes.
pub fn labeled_mergegram(g: &Gram) -> LabeledMergegram {
    let mut open: HashMap<Face, f64> = HashMap::new();
    let mut entries = BTreeMap::new();
    let mut prev: &[Face] = &[];
    for l in g.levels() {
        let cur = l.faces.faces();
        let now: HashSet<Face> = cur.iter().copied().collect();
        for f in prev.iter().filter(|f| !now.contains(f)) {
            let birth = open.remove(f).expect("closing face was open");
            entries.insert(*f, Interval::new(birth, l.critical));
        }
        for f in cur {
            if !open.contains_key(f) {
                assert!(!entries.contains_key(f), "face {f:?} reappears");
                open.insert(*f, l.critical);
            }
        }
        prev = cur;
    }
    for (f, birth) in open {
        entries.insert(f, Interval::new(birth, f64::INFINITY));
    }
    LabeledMergegram { taxa: g.taxa().clone(), entries }
}

pub fn mergegram(g: &Gram) -> Mergegram {
    labeled_mergegram(g).mergegram()
}

/// Closed formula `I_σ = [F(σ), min_{τ ⊋ σ, τ ∈ S} F(τ))` over a face collection
/// `S` containing every face that is ever maximal (the filtration's own
/// support when `None`).
pub fn labeled_mergegram_of_filtration(f: &Filtration, support: Option<&[Face]>) -> LabeledMergegram {
    let own;
    let faces: &[Face] = match support {
        Some(s) => s,
        None => {
            own = f.support();
            &own
        }
    };
    let faces: Vec<Face> = {
        let mut v = faces.to_vec();
        v.sort();
        v.dedup();
        v
    };
    let values: Vec<f64> = faces.iter().map(|s| f.value(*s)).collect();
    let mut entries = BTreeMap::new();
    for (k, s) in faces.iter().enumerate() {
        let death = faces
            .iter()
            .zip(&values)
            .filter(|(t, _)| s.is_proper_subset(**t))
            .map(|(_, v)| *v)
            .fold(f64::INFINITY, f64::min);
        if values[k] < death {
            entries.insert(*s, Interval::new(values[k], death));
        }
    }
    LabeledMergegram { taxa: f.universe().clone(), entries }
}

pub fn mergegram_of_filtration(f: &Filtration, support: Option<&[Face]>) -> Mergegram {
    labeled_mergegram_of_filtration(f, support).mergegram()
}

fn common_universe<'a, I: Iterator<Item = &'a TaxaSet>>(mut it: I) -> Result<TaxaSet> {
    let first = it.next().ok_or(Error::EmptyInput("tree join"))?.clone();
    if it.any(|t| *t != first) {
        return Err(Error::UniverseMismatch);
    }
    Ok(first)
}

/// Labeled mergegram of the facegram join of the given treegrams, computed
/// directly from the ultranetworks. For a candidate face σ (a block of some
/// tree), σ is maximal in the join exactly on `[a, b)` with
/// `a = min_i diam_i(σ)` and `b = min_i min_{y ∉ σ} max_{x ∈ σ} U_i(x, y)`.
pub fn join_mergegram_of_treegrams(ultras: &[Ultranetwork]) -> Result<LabeledMergegram> {
    let taxa = common_universe(ultras.iter().map(|u| u.taxa()))?;
    let n = taxa.len();
    let full = taxa.full();
    let mut candidates: Vec<Face> = ultras
        .par_iter()
        .flat_map_iter(|u| crate::gram::treegram_from_ultranetwork(u).appearing_faces())
        .collect();
    candidates.sort();
    candidates.dedup();
    let entries: BTreeMap<Face, Interval> = candidates
        .into_par_iter()
        .filter_map(|s| {
            let a = ultras.iter().map(|u| u.vr_value(s)).fold(f64::INFINITY, f64::min);
            let b = if s == full {
                f64::INFINITY
            } else {
                let mut b = f64::INFINITY;
                for u in ultras {
                    for y in (0..n).filter(|&y| !s.contains(y)) {
                        let reach = s.iter().map(|x| u.get(x, y)).fold(f64::NEG_INFINITY, f64::max);
                        b = b.min(reach);
                    }
                }
                b
            };
            (a < b).then(|| (s, Interval::new(a, b)))
        })
        .collect();
    Ok(LabeledMergegram { taxa, entries })
}

/// The same join mergegram computed from the trees' labeled mergegrams alone:
/// `a` is the earliest birth of an entry containing σ, `b` the earliest birth of
/// an entry strictly containing σ.
pub fn join_mergegram_from_tree_mergegrams(parts: &[LabeledMergegram]) -> Result<LabeledMergegram> {
    let taxa = common_universe(parts.iter().map(|p| p.taxa()))?;
    let mut candidates: Vec<Face> = parts.iter().flat_map(|p| p.entries.keys().copied()).collect();
    candidates.sort();
    candidates.dedup();
    let entries = candidates
        .into_par_iter()
        .filter_map(|s| {
            let mut a = f64::INFINITY;
            let mut b = f64::INFINITY;
            for p in parts {
                for (t, i) in &p.entries {
                    if s.is_subset(*t) {
                        a = a.min(i.birth);
                        if s != *t {
                            b = b.min(i.birth);
                        }
                    }
                }
            }
            (a < b).then(|| (s, Interval::new(a, b)))
        })
        .collect();
    Ok(LabeledMergegram { taxa, entries })
}
