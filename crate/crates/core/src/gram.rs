//! Lattice diagrams: facegrams, cliquegrams and treegrams.
//!
//! A [`Gram`] is a piecewise-constant, refinement-monotone map from time to
//! face-sets that is empty below its first critical value and equals `{X}`
//! from its last critical value on. Only change points are stored.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::combinatorics::{CliqueSet, FaceSet, Graph, EMPTY_FACESET};
use crate::error::{Error, Result};
use crate::network::{PhyloNetwork, Ultranetwork};
use crate::taxa::{Face, TaxaSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GramKind {
    Facegram,
    Cliquegram,
    Treegram,
}

impl GramKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GramKind::Facegram => "facegram",
            GramKind::Cliquegram => "cliquegram",
            GramKind::Treegram => "treegram",
        }
    }
}

impl fmt::Display for GramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for GramKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "facegram" => Ok(GramKind::Facegram),
            "cliquegram" => Ok(GramKind::Cliquegram),
            "treegram" => Ok(GramKind::Treegram),
            other => Err(Error::InvalidGram(format!("unknown gram kind {other:?}"))),
        }
    }
}

/// The face-set in force from `critical` up to the next critical value.
#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub critical: f64,
    pub faces: FaceSet,
}

#[derive(Debug, Clone)]
pub struct Gram {
    taxa: TaxaSet,
    levels: Vec<Level>,
    kind: GramKind,
}

/// Grams compare by their levels; the kind flag is a checked annotation.
impl PartialEq for Gram {
    fn eq(&self, other: &Self) -> bool {
        self.taxa == other.taxa && self.levels == other.levels
    }
}

impl Gram {
    /// Validates the gram axioms and the constraints implied by `kind`.
    pub fn new(taxa: TaxaSet, levels: Vec<Level>, kind: GramKind) -> Result<Gram> {
        let bad = |m: String| Err(Error::InvalidGram(m));
        let Some(last) = levels.last() else {
            return bad("no levels".into());
        };
        for (i, l) in levels.iter().enumerate() {
            if !l.critical.is_finite() {
                return bad(format!("critical value {} is not finite", l.critical));
            }
            if l.faces.faces().iter().any(|f| !taxa.contains_face(*f)) {
                return bad(format!("level {} uses taxa outside the universe", l.critical));
            }
            if i == 0 {
                if l.faces.is_empty() {
                    return bad("first level is empty".into());
                }
                continue;
            }
            let prev = &levels[i - 1];
            if prev.critical >= l.critical {
                return bad(format!(
                    "critical values not increasing: {} then {}",
                    prev.critical, l.critical
                ));
            }
            if prev.faces == l.faces {
                return bad(format!("level {} repeats the previous level", l.critical));
            }
            if !prev.faces.leq(&l.faces) {
                return bad(format!(
                    "level {} does not refine into level {}",
                    prev.critical, l.critical
                ));
            }
        }
        if last.faces.faces() != [taxa.full()] {
            return bad("last level is not {X}".into());
        }
        let g = Gram { taxa, levels, kind };
        match kind {
            GramKind::Cliquegram if !g.is_cliquegram() => {
                bad("a level violates the clique-set condition".into())
            }
            GramKind::Treegram if !g.is_treegram() => {
                bad("a level is not a subpartition".into())
            }
            _ => Ok(g),
        }
    }

    /// Builds from computed levels, dropping leading empty levels and
    /// repeated ones.
    pub(crate) fn from_raw(taxa: TaxaSet, raw: Vec<(f64, FaceSet)>, kind: GramKind) -> Gram {
        let mut levels: Vec<Level> = Vec::with_capacity(raw.len());
        for (critical, faces) in raw {
            let same = match levels.last() {
                Some(l) => l.faces == faces,
                None => faces.is_empty(),
            };
            if !same {
                levels.push(Level { critical, faces });
            }
        }
        let g = Gram { taxa, levels, kind };
        debug_assert!(
            Gram::new(g.taxa.clone(), g.levels.clone(), kind).is_ok(),
            "computed gram violates its axioms"
        );
        g
    }

    pub fn taxa(&self) -> &TaxaSet {
        &self.taxa
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn kind(&self) -> GramKind {
        self.kind
    }

    /// Re-labels the kind after checking the corresponding constraint.
    pub fn with_kind(&self, kind: GramKind) -> Result<Gram> {
        Gram::new(self.taxa.clone(), self.levels.clone(), kind)
    }

    /// The most specific kind the levels satisfy.
    pub fn classify(&self) -> GramKind {
        if self.is_treegram() {
            GramKind::Treegram
        } else if self.is_cliquegram() {
            GramKind::Cliquegram
        } else {
            GramKind::Facegram
        }
    }

    pub fn criticals(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.critical).collect()
    }

    /// The face-set in force at time `t` (empty below the first critical value).
    pub fn at(&self, t: f64) -> &FaceSet {
        let k = self.levels.partition_point(|l| l.critical <= t);
        if k == 0 {
            &EMPTY_FACESET
        } else {
            &self.levels[k - 1].faces
        }
    }

    pub fn is_treegram(&self) -> bool {
        self.levels.iter().all(|l| l.faces.is_subpartition())
    }

    pub fn is_cliquegram(&self) -> bool {
        self.levels.iter().all(|l| l.faces.is_cliqueset())
    }

    /// Every face that is maximal at some time, each once, in order of appearance.
    pub fn appearing_faces(&self) -> Vec<Face> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for l in &self.levels {
            for f in l.faces.faces() {
                if seen.insert(*f) {
                    out.push(*f);
                }
            }
        }
        out
    }

    /// Filtration value of `face`: the first time it is covered by a face.
    pub fn value(&self, face: Face) -> f64 {
        // coverage is monotone in time, so the first covering level is found by bisection
        let k = self.levels.partition_point(|l| !l.faces.covers(face));
        self.levels[k].critical
    }

    /// Pointwise refinement order.
    pub fn leq(&self, other: &Gram) -> Result<bool> {
        if self.taxa != other.taxa {
            return Err(Error::UniverseMismatch);
        }
        // both maps are constant between consecutive critical values
        Ok(self
            .levels
            .iter()
            .map(|l| l.critical)
            .chain(other.levels.iter().map(|l| l.critical))
            .all(|t| self.at(t).leq(other.at(t))))
    }

    /// The same gram over a reordering of its taxa.
    pub fn reindexed(&self, taxa: &TaxaSet) -> Result<Gram> {
        let perm = self.taxa.permutation_to(taxa)?;
        let levels = self
            .levels
            .iter()
            .map(|l| {
                let faces = l.faces.faces().iter().map(|f| {
                    Face::from_indices(f.iter().map(|i| perm[i])).expect("non-empty face")
                });
                Level { critical: l.critical, faces: FaceSet::maximal(faces) }
            })
            .collect();
        Ok(Gram { taxa: taxa.clone(), levels, kind: self.kind })
    }

    /// The same gram with every critical value moved by `delta`.
    pub fn shifted(&self, delta: f64) -> Gram {
        let mut g = self.clone();
        for l in &mut g.levels {
            l.critical += delta;
        }
        g
    }
}

/// Cliquegram of a network: at every distinct entry `ε`, the maximal cliques of
/// the graph with vertices `{x : N(x,x) ≤ ε}` and edges `{x≠x' : N(x,x') ≤ ε}`.
pub fn cliquegram_from_network(net: &PhyloNetwork) -> Gram {
    let n = net.len();
    let raw: Vec<(f64, FaceSet)> = net
        .distinct_values()
        .into_par_iter()
        .map(|eps| {
            let mut g = Graph::empty();
            for i in 0..n {
                if net.get(i, i) <= eps {
                    g.add_vertex(i);
                }
                for j in i + 1..n {
                    if net.get(i, j) <= eps {
                        g.add_edge(i, j);
                    }
                }
            }
            (eps, CliqueSet::from_graph(&g).into_faceset())
        })
        .collect();
    Gram::from_raw(net.taxa().clone(), raw, GramKind::Cliquegram)
}

/// Inverse of [`cliquegram_from_network`]: `N(x,x')` is the first time `x` and
/// `x'` share a face. On a general facegram this yields its 1-skeleton network.
pub fn network_from_cliquegram(g: &Gram) -> PhyloNetwork {
    let n = g.taxa().len();
    let mut vals = vec![f64::NAN; n * n];
    let mut remaining = n * (n + 1) / 2;
    'levels: for l in g.levels() {
        for f in l.faces.faces() {
            for i in f.iter() {
                for j in f.iter().filter(|&j| j >= i) {
                    if vals[i * n + j].is_nan() {
                        vals[i * n + j] = l.critical;
                        vals[j * n + i] = l.critical;
                        remaining -= 1;
                        if remaining == 0 {
                            break 'levels;
                        }
                    }
                }
            }
        }
    }
    PhyloNetwork::from_fn(g.taxa().clone(), |i, j| vals[i * n + j])
        .expect("a gram topping out at {X} defines a phylogenetic network")
}

/// Treegram of an ultranetwork. Threshold graphs of an ultranetwork are
/// disjoint unions of cliques, so each level is read off as the connected
/// components of the present taxa.
pub fn treegram_from_ultranetwork(u: &Ultranetwork) -> Gram {
    let n = u.len();
    let mut entries: Vec<(f64, usize, usize)> = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            entries.push((u.get(i, j), i, j));
        }
    }
    entries.sort_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut present = 0u128;
    let mut raw = Vec::new();
    let mut k = 0;
    while k < entries.len() {
        let eps = entries[k].0;
        while k < entries.len() && entries[k].0 == eps {
            let (_, i, j) = entries[k];
            if i == j {
                present |= 1 << i;
            } else {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
            k += 1;
        }
        let mut blocks: Vec<u128> = vec![0; n];
        for v in (0..n).filter(|v| present >> v & 1 == 1) {
            let r = find(&mut parent, v);
            blocks[r] |= 1 << v;
        }
        let faces = FaceSet::maximal(blocks.into_iter().filter_map(Face::from_bits));
        raw.push((eps, faces));
    }
    Gram::from_raw(u.taxa().clone(), raw, GramKind::Treegram)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JoinMode {
    Cliquegram,
    Facegram,
}

impl std::str::FromStr for JoinMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cliquegram" => Ok(JoinMode::Cliquegram),
            "facegram" => Ok(JoinMode::Facegram),
            other => Err(Error::InvalidGram(format!("unknown join mode {other:?}"))),
        }
    }
}

impl fmt::Display for JoinMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            JoinMode::Cliquegram => "cliquegram",
            JoinMode::Facegram => "facegram",
        })
    }
}

/// Least upper bound of grams, computed pointwise over the union of their
/// critical values in the face-set or clique-set lattice.
pub fn join_grams(parts: &[Gram], mode: JoinMode) -> Result<Gram> {
    let first = parts.first().ok_or(Error::EmptyInput("gram join"))?;
    if parts.iter().any(|p| p.taxa != first.taxa) {
        return Err(Error::UniverseMismatch);
    }
    if mode == JoinMode::Cliquegram {
        if let Some(p) = parts.iter().position(|p| !p.is_cliquegram()) {
            return Err(Error::InvalidGram(format!(
                "part {p} is not a cliquegram; join it in facegram mode or squash it first"
            )));
        }
    }
    let mut ts: Vec<f64> = parts.iter().flat_map(|p| p.levels.iter().map(|l| l.critical)).collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let level_at = |t: f64| -> FaceSet {
        match mode {
            JoinMode::Facegram => {
                FaceSet::maximal(parts.iter().flat_map(|p| p.at(t).faces().iter().copied()))
            }
            JoinMode::Cliquegram => {
                let mut g = Graph::empty();
                for p in parts {
                    g.union_with(&p.at(t).skeleton());
                }
                CliqueSet::from_graph(&g).into_faceset()
            }
        }
    };
    let raw: Vec<(f64, FaceSet)> = ts.into_par_iter().map(|t| (t, level_at(t))).collect();
    let kind = match mode {
        JoinMode::Facegram => GramKind::Facegram,
        JoinMode::Cliquegram => GramKind::Cliquegram,
    };
    Ok(Gram::from_raw(first.taxa.clone(), raw, kind))
}

/// Lattice morphism from facegrams onto cliquegrams: each level is replaced by
/// the maximal cliques of the 1-skeleton of the complex it generates.
pub fn squash_to_cliquegram(g: &Gram) -> Gram {
    let raw = g
        .levels
        .par_iter()
        .map(|l| (l.critical, CliqueSet::from_graph(&l.faces.skeleton()).into_faceset()))
        .collect();
    Gram::from_raw(g.taxa.clone(), raw, GramKind::Cliquegram)
}

pub fn is_treegram(g: &Gram) -> bool {
    g.is_treegram()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn taxa3() -> TaxaSet {
        TaxaSet::new(["x", "y", "z"]).unwrap()
    }

    fn fs(sets: &[&[usize]]) -> FaceSet {
        FaceSet::new(sets.iter().map(|s| Face::from_indices(s.iter().copied()).unwrap())).unwrap()
    }

    fn lv(t: f64, sets: &[&[usize]]) -> Level {
        Level { critical: t, faces: fs(sets) }
    }

    fn line_single_linkage(points: [f64; 4], merges: [[f64; 4]; 4]) -> Ultranetwork {
        let taxa = TaxaSet::new(points.iter().map(|p| p.to_string())).unwrap();
        Ultranetwork::new(PhyloNetwork::from_fn(taxa, |i, j| merges[i][j]).unwrap()).unwrap()
    }

    #[test]
    fn validation_rejects_bad_grams() {
        let t = taxa3();
        let top = || lv(2.0, &[&[0, 1, 2]]);
        assert!(Gram::new(t.clone(), vec![], GramKind::Facegram).is_err());
        assert!(Gram::new(t.clone(), vec![lv(0.0, &[&[0, 1]])], GramKind::Facegram).is_err());
        assert!(Gram::new(t.clone(), vec![lv(3.0, &[&[0]]), top()], GramKind::Facegram).is_err());
        assert!(Gram::new(t.clone(), vec![top(), top()], GramKind::Facegram).is_err());
        // not monotone: {x,y} then {y,z},{x}
        let g = vec![lv(0.0, &[&[0, 1]]), lv(1.0, &[&[1, 2], &[0]]), top()];
        assert!(Gram::new(t.clone(), g, GramKind::Facegram).is_err());
        // triangle of pairs is a facegram but neither cliquegram nor treegram
        let tri = vec![lv(1.0, &[&[0, 1], &[1, 2], &[0, 2]]), top()];
        assert!(Gram::new(t.clone(), tri.clone(), GramKind::Facegram).is_ok());
        assert!(Gram::new(t.clone(), tri.clone(), GramKind::Cliquegram).is_err());
        assert!(Gram::new(t.clone(), tri, GramKind::Treegram).is_err());
        let g = Gram::new(t, vec![lv(0.0, &[&[0], &[1]]), top()], GramKind::Treegram).unwrap();
        assert!(g.at(-1.0).is_empty());
        assert_eq!(g.at(0.5), &fs(&[&[0], &[1]]));
        assert_eq!(g.at(100.0), &fs(&[&[0, 1, 2]]));
        assert_eq!(g.value(Face::singleton(2)), 2.0);
    }

    #[test]
    fn cliquegram_of_line_ultrametric() {
        let u = line_single_linkage(
            [0., 1., 3., 7.],
            [[0., 1., 2., 4.], [1., 0., 2., 4.], [2., 2., 0., 4.], [4., 4., 4., 0.]],
        );
        let g = cliquegram_from_network(&u);
        let expect = vec![
            lv(0.0, &[&[0], &[1], &[2], &[3]]),
            lv(1.0, &[&[0, 1], &[2], &[3]]),
            lv(2.0, &[&[0, 1, 2], &[3]]),
            lv(4.0, &[&[0, 1, 2, 3]]),
        ];
        assert_eq!(g.levels(), &expect[..]);
        assert_eq!(g.classify(), GramKind::Treegram);
        assert_eq!(treegram_from_ultranetwork(&u), g);
        assert_eq!(network_from_cliquegram(&g), *u.network());
    }

    #[test]
    fn one_point_network() {
        let t = TaxaSet::new(["x"]).unwrap();
        let n = PhyloNetwork::new(t, vec![vec![2.5]]).unwrap();
        let g = cliquegram_from_network(&n);
        assert_eq!(g.levels(), &[lv(2.5, &[&[0]])]);
        assert_eq!(network_from_cliquegram(&g), n);
    }

    fn u12() -> (Ultranetwork, Ultranetwork) {
        let mk = |pair: (usize, usize)| {
            Ultranetwork::new(
                PhyloNetwork::from_fn(taxa3(), |i, j| {
                    if i == j {
                        0.0
                    } else if (i, j) == pair {
                        1.0
                    } else {
                        3.0
                    }
                })
                .unwrap(),
            )
            .unwrap()
        };
        (mk((0, 1)), mk((1, 2)))
    }

    #[test]
    fn join_of_two_trees() {
        let (a, b) = u12();
        let net = crate::network::network_join(&[a.network().clone(), b.network().clone()]).unwrap();
        let expect = vec![
            lv(0.0, &[&[0], &[1], &[2]]),
            lv(1.0, &[&[0, 1], &[1, 2]]),
            lv(3.0, &[&[0, 1, 2]]),
        ];
        assert_eq!(cliquegram_from_network(&net).levels(), &expect[..]);
        let parts = [treegram_from_ultranetwork(&a), treegram_from_ultranetwork(&b)];
        assert_eq!(join_grams(&parts, JoinMode::Cliquegram).unwrap().levels(), &expect[..]);
        assert_eq!(join_grams(&parts, JoinMode::Facegram).unwrap().levels(), &expect[..]);
    }

    #[test]
    fn three_pair_merges_diverge() {
        let pairs = [(0, 1), (1, 2), (0, 2)];
        let parts: Vec<Gram> = pairs
            .iter()
            .map(|&(a, b)| {
                let c = 3 - a - b;
                Gram::new(
                    taxa3(),
                    vec![
                        lv(0.0, &[&[0], &[1], &[2]]),
                        lv(1.0, &[&[a, b], &[c]]),
                        lv(2.0, &[&[0, 1, 2]]),
                    ],
                    GramKind::Treegram,
                )
                .unwrap()
            })
            .collect();
        let face = join_grams(&parts, JoinMode::Facegram).unwrap();
        assert_eq!(
            face.levels(),
            &[
                lv(0.0, &[&[0], &[1], &[2]]),
                lv(1.0, &[&[0, 1], &[1, 2], &[0, 2]]),
                lv(2.0, &[&[0, 1, 2]])
            ]
        );
        assert!(!is_treegram(&face));
        let clique = join_grams(&parts, JoinMode::Cliquegram).unwrap();
        assert_eq!(clique.levels(), &[lv(0.0, &[&[0], &[1], &[2]]), lv(1.0, &[&[0, 1, 2]])]);
        assert_eq!(squash_to_cliquegram(&face), clique);
        assert_eq!(squash_to_cliquegram(&clique), clique);
        assert!(join_grams(&[face.clone()], JoinMode::Cliquegram).is_err());
        assert_eq!(join_grams(&[face.clone()], JoinMode::Facegram).unwrap(), face);
        assert_eq!(join_grams(&[face.clone(), face.clone()], JoinMode::Facegram).unwrap(), face);
        assert!(face.leq(&clique).unwrap());
        assert!(!clique.leq(&face).unwrap());
    }

    #[test]
    fn single_linkage_0157_treegram() {
        let u = line_single_linkage(
            [0., 1., 5., 7.],
            [[0., 1., 4., 4.], [1., 0., 4., 4.], [4., 4., 0., 2.], [4., 4., 2., 0.]],
        );
        let g = treegram_from_ultranetwork(&u);
        assert_eq!(
            g.levels(),
            &[
                lv(0.0, &[&[0], &[1], &[2], &[3]]),
                lv(1.0, &[&[0, 1], &[2], &[3]]),
                lv(2.0, &[&[0, 1], &[2, 3]]),
                lv(4.0, &[&[0, 1, 2, 3]]),
            ]
        );
        assert!(is_treegram(&g));
    }

    #[test]
    fn single_level_gram() {
        let g = Gram::new(taxa3(), vec![lv(5.0, &[&[0, 1, 2]])], GramKind::Treegram).unwrap();
        assert!(is_treegram(&g));
        assert_eq!(g.shifted(1.0).criticals(), vec![6.0]);
    }

    #[test]
    fn reindexing_permutes_faces() {
        let g = Gram::new(taxa3(), vec![lv(0.0, &[&[0, 1], &[2]]), lv(1.0, &[&[0, 1, 2]])], GramKind::Treegram).unwrap();
        let zyx = TaxaSet::new(["z", "y", "x"]).unwrap();
        let r = g.reindexed(&zyx).unwrap();
        assert_eq!(*r.at(0.0), fs(&[&[1, 2], &[0]]));
        assert_eq!(r.reindexed(&taxa3()).unwrap(), g);
        assert!(g.reindexed(&TaxaSet::new(["x", "y", "w"]).unwrap()).is_err());
    }
}
