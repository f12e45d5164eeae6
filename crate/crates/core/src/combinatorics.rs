//! Face-sets, clique-sets, graphs and simplicial complexes over a taxa universe,
//! together with the static lattice operations on them.
//!
//! Face-sets are antichains of faces ordered by refinement: `a ≤ b` when every
//! face of `a` lies inside some face of `b`. Clique-sets are the face-sets that
//! arise as maximal cliques of a graph; their join is *not* the face-set join
//! but the maximal cliques of the union graph.

use std::collections::BTreeSet;

use crate::clique::maximal_cliques;
use crate::error::{Error, Result};
use crate::taxa::Face;

fn canonical_key(f: &Face) -> (std::cmp::Reverse<usize>, u128) {
    (std::cmp::Reverse(f.len()), f.bits())
}

/// Reduces a family of faces to its maximal elements, in canonical order
/// (decreasing cardinality, then increasing bitmask).
pub fn maximal_faces<I: IntoIterator<Item = Face>>(faces: I) -> Vec<Face> {
    let mut all: Vec<Face> = faces.into_iter().collect();
    all.sort_unstable_by_key(canonical_key);
    all.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(all.len());
    for f in all {
        // only faces of larger cardinality can strictly contain f
        if !kept.iter().any(|k| f.is_subset(*k)) {
            kept.push(f);
        }
    }
    kept
}

/// An antichain of faces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FaceSet {
    faces: Vec<Face>,
}

pub(crate) static EMPTY_FACESET: FaceSet = FaceSet { faces: Vec::new() };

impl FaceSet {
    /// Validates that `faces` form an antichain.
    pub fn new<I: IntoIterator<Item = Face>>(faces: I) -> Result<FaceSet> {
        let mut faces: Vec<Face> = faces.into_iter().collect();
        faces.sort_unstable_by_key(canonical_key);
        for (i, a) in faces.iter().enumerate() {
            for b in &faces[i + 1..] {
                if b.is_subset(*a) {
                    return Err(Error::InvalidFaceSet(format!(
                        "{b:?} is contained in {a:?}"
                    )));
                }
            }
        }
        Ok(FaceSet { faces })
    }

    /// The maximal elements of an arbitrary family.
    pub fn maximal<I: IntoIterator<Item = Face>>(faces: I) -> FaceSet {
        FaceSet { faces: maximal_faces(faces) }
    }

    pub fn empty() -> FaceSet {
        FaceSet::default()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, face: Face) -> bool {
        self.faces.contains(&face)
    }

    /// Union of all faces, if any.
    pub fn support(&self) -> Option<Face> {
        self.faces.iter().copied().reduce(Face::union)
    }

    /// True iff `face` lies inside some face of the set.
    pub fn covers(&self, face: Face) -> bool {
        self.faces.iter().any(|f| face.is_subset(*f))
    }

    /// Refinement order.
    pub fn leq(&self, other: &FaceSet) -> bool {
        self.faces.iter().all(|f| other.covers(*f))
    }

    pub fn join(&self, other: &FaceSet) -> FaceSet {
        FaceSet::maximal(self.faces.iter().chain(other.faces.iter()).copied())
    }

    /// Maximal non-empty pairwise intersections.
    pub fn meet(&self, other: &FaceSet) -> FaceSet {
        FaceSet::maximal(
            self.faces
                .iter()
                .flat_map(|a| other.faces.iter().filter_map(move |b| a.intersection(*b))),
        )
    }

    /// True iff the faces are pairwise disjoint.
    pub fn is_subpartition(&self) -> bool {
        let mut seen = 0u128;
        for f in &self.faces {
            if seen & f.bits() != 0 {
                return false;
            }
            seen |= f.bits();
        }
        true
    }

    /// The 1-skeleton of the complex generated by the faces.
    pub fn skeleton(&self) -> Graph {
        let mut g = Graph::empty();
        for f in &self.faces {
            g.add_clique(*f);
        }
        g
    }

    /// Pairwise-cover closure: true iff every vertex set whose pairs are all
    /// covered is itself covered, i.e. the set equals the maximal cliques of
    /// its own 1-skeleton.
    pub fn is_cliqueset(&self) -> bool {
        CliqueSet::from_graph(&self.skeleton()).0 == *self
    }
}

/// Join of a non-empty list of face-sets: the maximal elements of the union.
pub fn faceset_join(parts: &[FaceSet]) -> Result<FaceSet> {
    if parts.is_empty() {
        return Err(Error::EmptyInput("face-set join"));
    }
    Ok(FaceSet::maximal(parts.iter().flat_map(|p| p.faces.iter().copied())))
}

pub fn faceset_meet(a: &FaceSet, b: &FaceSet) -> FaceSet {
    a.meet(b)
}

pub fn faceset_leq(a: &FaceSet, b: &FaceSet) -> bool {
    a.leq(b)
}

/// A face-set closed under the pairwise-cover condition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CliqueSet(FaceSet);

impl CliqueSet {
    pub fn new(faces: FaceSet) -> Result<CliqueSet> {
        if faces.is_cliqueset() {
            Ok(CliqueSet(faces))
        } else {
            Err(Error::InvalidFaceSet(
                "pairwise-covered vertex set is not covered by a single clique".into(),
            ))
        }
    }

    /// Maximal cliques of `g`.
    pub fn from_graph(g: &Graph) -> CliqueSet {
        let cliques = maximal_cliques(g.vertices, &g.padded_adjacency());
        CliqueSet(FaceSet::maximal(cliques.into_iter().filter_map(Face::from_bits)))
    }

    pub fn to_graph(&self) -> Graph {
        self.0.skeleton()
    }

    pub fn as_faceset(&self) -> &FaceSet {
        &self.0
    }

    pub fn into_faceset(self) -> FaceSet {
        self.0
    }
}

/// Join in the clique-set lattice: maximal cliques of the union graph.
pub fn cliqueset_join(parts: &[CliqueSet]) -> Result<CliqueSet> {
    if parts.is_empty() {
        return Err(Error::EmptyInput("clique-set join"));
    }
    let mut g = Graph::empty();
    for p in parts {
        g.union_with(&p.to_graph());
    }
    Ok(CliqueSet::from_graph(&g))
}

pub fn validate_cliqueset(f: &FaceSet) -> bool {
    f.is_cliqueset()
}

/// A simple undirected graph on a subset of the taxa.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: u128,
    // adjacency padded to the highest vertex; trailing zero rows are trimmed
    adj: Vec<u128>,
}

impl Graph {
    pub fn empty() -> Graph {
        Graph { vertices: 0, adj: Vec::new() }
    }

    /// Builds a graph; every edge endpoint must be a listed vertex.
    pub fn new(vertices: &[usize], edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty();
        for &v in vertices {
            g.add_vertex(v);
        }
        for &(a, b) in edges {
            if g.vertices >> a & 1 == 0 || g.vertices >> b & 1 == 0 {
                return Err(Error::InvalidFaceSet(format!(
                    "edge ({a}, {b}) has an endpoint outside the vertex set"
                )));
            }
            g.add_edge(a, b);
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: usize) {
        self.vertices |= 1 << v;
    }

    /// Adds an edge (and both endpoints). Self loops are ignored.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.add_vertex(a);
        self.add_vertex(b);
        if a == b {
            return;
        }
        let need = a.max(b) + 1;
        if self.adj.len() < need {
            self.adj.resize(need, 0);
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    /// Makes `face` a clique.
    pub fn add_clique(&mut self, face: Face) {
        self.vertices |= face.bits();
        if face.len() < 2 {
            return;
        }
        let top = 127 - face.bits().leading_zeros() as usize;
        if self.adj.len() <= top {
            self.adj.resize(top + 1, 0);
        }
        for v in face.iter() {
            self.adj[v] |= face.bits() & !(1 << v);
        }
    }

    pub fn union_with(&mut self, other: &Graph) {
        self.vertices |= other.vertices;
        if self.adj.len() < other.adj.len() {
            self.adj.resize(other.adj.len(), 0);
        }
        for (a, b) in self.adj.iter_mut().zip(&other.adj) {
            *a |= *b;
        }
    }

    pub fn vertex_mask(&self) -> u128 {
        self.vertices
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        Face::from_bits(self.vertices).into_iter().flat_map(Face::iter)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj.get(a).is_some_and(|row| row >> b & 1 == 1)
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, row) in self.adj.iter().enumerate() {
            let mut rest = row & !mask_upto(a);
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                out.push((a, b));
            }
        }
        out
    }

    /// Adjacency rows covering every vertex index.
    pub(crate) fn padded_adjacency(&self) -> Vec<u128> {
        let top = 128 - self.vertices.leading_zeros() as usize;
        let mut adj = self.adj.clone();
        if adj.len() < top {
            adj.resize(top, 0);
        }
        adj
    }
}

fn mask_upto(a: usize) -> u128 {
    // bits 0..=a
    if a >= 127 {
        u128::MAX
    } else {
        (1u128 << (a + 1)) - 1
    }
}

pub fn graph_from_cliqueset(c: &CliqueSet) -> Graph {
    c.to_graph()
}

pub fn cliqueset_from_graph(g: &Graph) -> CliqueSet {
    CliqueSet::from_graph(g)
}

/// Largest face a complex may be expanded from.
pub const MAX_COMPLEX_FACE: usize = 24;

/// The downward closure of a face-set.
pub fn faceset_to_complex(f: &FaceSet) -> Result<BTreeSet<Face>> {
    let mut out = BTreeSet::new();
    for face in f.faces() {
        if face.len() > MAX_COMPLEX_FACE {
            return Err(Error::TooLarge(format!(
                "face of size {} has too many subfaces to enumerate",
                face.len()
            )));
        }
        // walk all non-empty submasks of face
        let full = face.bits();
        let mut sub = full;
        while sub != 0 {
            out.insert(Face::from_bits(sub).expect("non-zero"));
            sub = (sub - 1) & full;
        }
    }
    Ok(out)
}

/// Maximal faces of a complex (or of any family).
pub fn complex_to_faceset<'a, I: IntoIterator<Item = &'a Face>>(complex: I) -> FaceSet {
    FaceSet::maximal(complex.into_iter().copied())
}
