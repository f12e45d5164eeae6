//! Face-Reeb graphs.
//!
//! Level `i` contributes an edge for every face of `C(a_i)` and a vertex for
//! every comparability component of `C(a_{i-1}) ∪ C(a_i)`. Edge `e ∈ E_i` runs
//! from its component in `V_i` up to its component in `V_{i+1}`; the single edge
//! of the last level is half-infinite.

use std::collections::BTreeMap;

use crate::gram::Gram;
use crate::mergegram::{Interval, Mergegram};
use crate::taxa::{Face, TaxaSet};

#[derive(Debug, Clone, PartialEq)]
pub struct ReebGraph {
    taxa: TaxaSet,
    criticals: Vec<f64>,
    edges: Vec<Vec<Face>>,
    vertex_counts: Vec<usize>,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
}

fn components(faces: &[Face]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..faces.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            if faces[i].is_subset(faces[j]) || faces[j].is_subset(faces[i]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    // renumber roots densely in order of first appearance
    let mut ids = BTreeMap::new();
    (0..faces.len())
        .map(|i| {
            let r = find(&mut parent, i);
            let next = ids.len();
            *ids.entry(r).or_insert(next)
        })
        .collect()
}

impl ReebGraph {
    pub fn from_gram(g: &Gram) -> ReebGraph {
        let levels = g.levels();
        let m = levels.len();
        let edges: Vec<Vec<Face>> = levels.iter().map(|l| l.faces.faces().to_vec()).collect();
        let mut vertex_counts = Vec::with_capacity(m);
        let mut down = Vec::with_capacity(m);
        let mut up: Vec<Vec<usize>> = Vec::with_capacity(m);
        for i in 0..m {
            let prev: &[Face] = if i == 0 { &[] } else { &edges[i - 1] };
            let mut pool: Vec<Face> = prev.to_vec();
            for f in &edges[i] {
                if !pool.contains(f) {
                    pool.push(*f);
                }
            }
            let comp = components(&pool);
            let lookup = |f: &Face| comp[pool.iter().position(|p| p == f).expect("face in pool")];
            vertex_counts.push(comp.iter().max().map_or(0, |c| c + 1));
            if i > 0 {
                up.push(prev.iter().map(lookup).collect());
            }
            down.push(edges[i].iter().map(lookup).collect());
        }
        ReebGraph { taxa: g.taxa().clone(), criticals: g.criticals(), edges, vertex_counts, down, up }
    }

    pub fn taxa(&self) -> &TaxaSet {
        &self.taxa
    }

    pub fn criticals(&self) -> &[f64] {
        &self.criticals
    }

    /// Edges `E_i` of level `i`, labelled by faces.
    pub fn edges(&self, i: usize) -> &[Face] {
        &self.edges[i]
    }

    /// Number of vertices `|V_i|` at height `a_i`.
    pub fn vertex_count(&self, i: usize) -> usize {
        self.vertex_counts[i]
    }

    /// Lower endpoint of edge `e ∈ E_i` as an index into `V_i`.
    pub fn down(&self, i: usize, e: usize) -> usize {
        self.down[i][e]
    }

    /// Upper endpoint of edge `e ∈ E_i` as an index into `V_{i+1}`, or `None`
    /// for the half-infinite top edge.
    pub fn up(&self, i: usize, e: usize) -> Option<usize> {
        self.up.get(i).map(|u| u[e])
    }

    pub fn level_count(&self) -> usize {
        self.criticals.len()
    }

    pub fn total_vertices(&self) -> usize {
        self.vertex_counts.iter().sum()
    }

    pub fn finite_edge_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    /// First Betti number of the graph (finite edges only; the top edge is a leaf).
    pub fn loop_count(&self) -> usize {
        let offsets: Vec<usize> = self
            .vertex_counts
            .iter()
            .scan(0, |acc, &c| {
                let o = *acc;
                *acc += c;
                Some(o)
            })
            .collect();
        let total = self.total_vertices();
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut loops = 0;
        for (i, ups) in self.up.iter().enumerate() {
            for (e, &u) in ups.iter().enumerate() {
                let a = find(&mut parent, offsets[i] + self.down[i][e]);
                let b = find(&mut parent, offsets[i + 1] + u);
                if a == b {
                    loops += 1;
                } else {
                    parent[a] = b;
                }
            }
        }
        loops
    }

    pub fn is_merge_tree(&self) -> bool {
        self.loop_count() == 0
    }

    /// Consecutive edges with the same label joined into one lifespan.
    pub fn face_intervals(&self) -> Vec<(Face, Interval)> {
        let mut open: BTreeMap<Face, f64> = BTreeMap::new();
        let mut out = Vec::new();
        for (i, es) in self.edges.iter().enumerate() {
            let t = self.criticals[i];
            let closing: Vec<Face> = open.keys().filter(|f| !es.contains(f)).copied().collect();
            for f in closing {
                let b = open.remove(&f).expect("open face");
                out.push((f, Interval::new(b, t)));
            }
            for f in es {
                open.entry(*f).or_insert(t);
            }
        }
        out.extend(open.into_iter().map(|(f, b)| (f, Interval::new(b, f64::INFINITY))));
        out
    }

    pub fn mergegram(&self) -> Mergegram {
        Mergegram::from_intervals(self.face_intervals().into_iter().map(|p| p.1))
    }
}

pub fn face_reeb_graph(g: &Gram) -> ReebGraph {
    ReebGraph::from_gram(g)
}
