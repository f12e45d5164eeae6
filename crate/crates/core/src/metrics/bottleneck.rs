//! Bottleneck distance between interval multisets.
//!
//! Finite points are matched with Hopcroft–Karp on the usual augmented
//! bipartite graph (each side gets a diagonal copy of the other), searching
//! the finite set of candidate values. Points with infinite death can only be
//! matched to each other, at the cost of their birth difference.

use std::collections::VecDeque;

use crate::mergegram::{Interval, Mergegram};

/// An optimal matching; unmatched points are paired with the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    pub pairs: Vec<(Interval, Interval)>,
    pub unmatched_a: Vec<Interval>,
    pub unmatched_b: Vec<Interval>,
}

fn sup_dist(a: &Interval, b: &Interval) -> f64 {
    (a.birth - b.birth).abs().max((a.death - b.death).abs())
}

struct HopcroftKarp<'a> {
    adj: &'a [Vec<usize>],
    match_l: Vec<usize>,
    match_r: Vec<usize>,
    dist: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl<'a> HopcroftKarp<'a> {
    fn run(adj: &'a [Vec<usize>], right: usize) -> (usize, Vec<usize>) {
        let mut hk = HopcroftKarp {
            adj,
            match_l: vec![NIL; adj.len()],
            match_r: vec![NIL; right],
            dist: vec![0; adj.len()],
        };
        let mut size = 0;
        while hk.bfs() {
            for u in 0..adj.len() {
                if hk.match_l[u] == NIL && hk.dfs(u) {
                    size += 1;
                }
            }
        }
        (size, hk.match_l)
    }

    fn bfs(&mut self) -> bool {
        let mut q = VecDeque::new();
        for u in 0..self.adj.len() {
            if self.match_l[u] == NIL {
                self.dist[u] = 0;
                q.push_back(u);
            } else {
                self.dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = q.pop_front() {
            for &v in &self.adj[u] {
                let w = self.match_r[v];
                if w == NIL {
                    found = true;
                } else if self.dist[w] == usize::MAX {
                    self.dist[w] = self.dist[u] + 1;
                    q.push_back(w);
                }
            }
        }
        found
    }

    fn dfs(&mut self, u: usize) -> bool {
        for k in 0..self.adj[u].len() {
            let v = self.adj[u][k];
            let w = self.match_r[v];
            if w == NIL || (self.dist[w] == self.dist[u] + 1 && self.dfs(w)) {
                self.match_l[u] = v;
                self.match_r[v] = u;
                return true;
            }
        }
        self.dist[u] = usize::MAX;
        false
    }
}

/// Left: `a` then diagonal copies of `b`. Right: `b` then diagonal copies of `a`.
fn perfect_matching(a: &[Interval], b: &[Interval], eps: f64) -> Option<Vec<usize>> {
    let (p, q) = (a.len(), b.len());
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); p + q];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if sup_dist(x, y) <= eps {
                adj[i].push(j);
            }
        }
        if x.persistence() <= 2.0 * eps {
            adj[i].push(q + i);
        }
    }
    for (j, y) in b.iter().enumerate() {
        if y.persistence() <= 2.0 * eps {
            adj[p + j].push(j);
        }
        adj[p + j].extend(q..q + p);
    }
    let (size, m) = HopcroftKarp::run(&adj, p + q);
    (size == p + q).then_some(m)
}

fn split(m: &Mergegram) -> (Vec<Interval>, Vec<f64>) {
    let mut finite = Vec::new();
    let mut inf = Vec::new();
    for i in m.intervals() {
        if i.is_infinite() {
            inf.push(i.birth);
        } else {
            finite.push(i);
        }
    }
    inf.sort_by(f64::total_cmp);
    (finite, inf)
}

fn finite_part(a: &[Interval], b: &[Interval]) -> (f64, Vec<usize>) {
    let mut cands: Vec<f64> = vec![0.0];
    cands.extend(a.iter().chain(b).map(|i| i.persistence() / 2.0));
    for x in a {
        cands.extend(b.iter().map(|y| sup_dist(x, y)));
    }
    cands.sort_by(f64::total_cmp);
    cands.dedup();
    // the largest half-persistence always admits the all-diagonal matching
    let (mut lo, mut hi) = (0, cands.len() - 1);
    let mut best = perfect_matching(a, b, cands[hi]).expect("deleting every point is feasible");
    while lo < hi {
        let mid = (lo + hi) / 2;
        match perfect_matching(a, b, cands[mid]) {
            Some(m) => {
                hi = mid;
                best = m;
            }
            None => lo = mid + 1,
        }
    }
    (cands[hi], best)
}

/// Bottleneck distance; `+∞` when the numbers of infinite intervals differ.
pub fn bottleneck_distance(a: &Mergegram, b: &Mergegram) -> f64 {
    bottleneck_matching(a, b).0
}

pub fn bottleneck_matching(a: &Mergegram, b: &Mergegram) -> (f64, Option<Matching>) {
    let (fa, ia) = split(a);
    let (fb, ib) = split(b);
    if ia.len() != ib.len() {
        return (f64::INFINITY, None);
    }
    let inf_cost = ia.iter().zip(&ib).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let (eps, m) = finite_part(&fa, &fb);
    let mut matching = Matching {
        pairs: ia
            .iter()
            .zip(&ib)
            .map(|(&x, &y)| (Interval::new(x, f64::INFINITY), Interval::new(y, f64::INFINITY)))
            .collect(),
        unmatched_a: Vec::new(),
        unmatched_b: Vec::new(),
    };
    let q = fb.len();
    for (i, &r) in m.iter().take(fa.len()).enumerate() {
        if r < q {
            matching.pairs.push((fa[i], fb[r]));
        } else {
            matching.unmatched_a.push(fa[i]);
        }
    }
    for (j, &r) in m.iter().skip(fa.len()).enumerate() {
        if r == j {
            matching.unmatched_b.push(fb[j]);
        }
    }
    (inf_cost.max(eps), Some(matching))
}
