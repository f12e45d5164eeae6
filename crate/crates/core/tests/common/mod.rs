//! Random instance generators and brute-force oracles shared by the
//! integration tests. Oracles enumerate subsets directly and never call the
//! library routine they are checking.

#![allow(dead_code)]

use std::collections::BTreeMap;

use phylolattice::filtration::Filtration;
use phylolattice::{Face, FaceSet, Gram, GramKind, Interval, Level, Mergegram, PhyloNetwork, TaxaSet, Ultranetwork};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn taxa(n: usize) -> TaxaSet {
    TaxaSet::numbered(n).unwrap()
}

/// Integer-valued network with many ties and random observation times.
pub fn random_network<R: Rng>(rng: &mut R, n: usize) -> PhyloNetwork {
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(1..=6) as f64;
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    for i in 0..n {
        let cap = (0..n).filter(|&j| j != i).map(|j| m[i][j]).fold(6.0, f64::min);
        m[i][i] = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0..=cap as i64) as f64 };
    }
    PhyloNetwork::new(taxa(n), m).unwrap()
}

/// Zero-diagonal metric-like network (uniform integer entries).
pub fn random_dissimilarity<R: Rng>(rng: &mut R, n: usize) -> PhyloNetwork {
    let vals: Vec<f64> = (0..n * n).map(|_| rng.gen_range(1..=9) as f64).collect();
    PhyloNetwork::from_fn(taxa(n), |i, j| if i == j { 0.0 } else { vals[i * n + j] }).unwrap()
}

/// Single-linkage ultrametric of a random integer matrix, with optional late
/// observation times on the diagonal.
pub fn random_ultranetwork<R: Rng>(rng: &mut R, n: usize, late_leaves: bool) -> Ultranetwork {
    let d = random_dissimilarity(rng, n);
    // single linkage by Floyd–Warshall on the minimax path length
    let mut u: Vec<Vec<f64>> = d.rows();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = u[i][k].max(u[k][j]);
                if via < u[i][j] {
                    u[i][j] = via;
                }
            }
        }
    }
    for i in 0..n {
        u[i][i] = 0.0;
    }
    if late_leaves {
        for i in 0..n {
            let cap = (0..n).filter(|&j| j != i).map(|j| u[i][j]).fold(9.0, f64::min);
            if rng.gen_bool(0.5) {
                u[i][i] = rng.gen_range(0..=cap as i64) as f64;
            }
        }
    }
    Ultranetwork::new(PhyloNetwork::new(taxa(n), u).unwrap()).unwrap()
}

/// Random facegram: random faces appear at random integer times and the
/// level at `t` is the set of maximal faces born by `t`; `X` is born last.
pub fn random_facegram<R: Rng>(rng: &mut R, n: usize) -> Gram {
    let full = (1u128 << n) - 1;
    let k = rng.gen_range(1..=2 * n + 2);
    let mut born: Vec<(f64, Face)> = (0..k)
        .map(|_| {
            let bits = loop {
                let b = rng.gen_range(1..=full);
                // favour small faces so levels have structure
                let b = if rng.gen_bool(0.6) { b & rng.gen_range(1..=full) } else { b };
                if b != 0 {
                    break b;
                }
            };
            (rng.gen_range(0..=5) as f64, Face::from_bits(bits).unwrap())
        })
        .collect();
    let top = born.iter().map(|p| p.0).fold(0.0, f64::max) + rng.gen_range(0..=2) as f64;
    born.push((top, Face::from_bits(full).unwrap()));
    levels_from_births(&taxa(n), &born, GramKind::Facegram)
}

pub fn levels_from_births(t: &TaxaSet, born: &[(f64, Face)], kind: GramKind) -> Gram {
    let mut times: Vec<f64> = born.iter().map(|p| p.0).collect();
    times.sort_by(f64::total_cmp);
    times.dedup();
    let mut levels: Vec<Level> = Vec::new();
    for t in times {
        let faces = FaceSet::maximal(born.iter().filter(|p| p.0 <= t).map(|p| p.1));
        if levels.last().map_or(false, |l| l.faces == faces) {
            continue;
        }
        levels.push(Level { critical: t, faces });
    }
    Gram::new(t.clone(), levels, kind).unwrap()
}

pub fn random_filtration<R: Rng>(rng: &mut R, n: usize) -> Filtration {
    if rng.gen_bool(0.5) {
        Filtration::Vr(random_network(rng, n))
    } else {
        Filtration::Facegram(random_facegram(rng, n))
    }
}

/// Random surjection of `z` points onto `0..x`.
pub fn random_surjection_map<R: Rng>(rng: &mut R, z: usize, x: usize) -> Vec<usize> {
    let mut map: Vec<usize> = (0..x).collect();
    map.extend((x..z).map(|_| rng.gen_range(0..x)));
    map.shuffle(rng);
    map
}

pub fn all_faces(n: usize) -> impl Iterator<Item = Face> {
    (1u128..1 << n).map(|b| Face::from_bits(b).unwrap())
}

/// Maximal cliques by testing every vertex subset.
pub fn cliques_by_subsets(n: usize, edge: impl Fn(usize, usize) -> bool, present: impl Fn(usize) -> bool) -> Vec<u128> {
    let verts: Vec<usize> = (0..n).filter(|&v| present(v)).collect();
    let m = verts.len();
    let mut cliques = Vec::new();
    for s in 1u32..(1 << m) {
        let members: Vec<usize> = (0..m).filter(|i| s >> i & 1 == 1).map(|i| verts[i]).collect();
        if members.iter().all(|&a| members.iter().all(|&b| a == b || edge(a, b))) {
            cliques.push(members.iter().fold(0u128, |acc, &v| acc | 1 << v));
        }
    }
    let mut maximal: Vec<u128> = cliques
        .iter()
        .copied()
        .filter(|&c| !cliques.iter().any(|&d| d != c && c & d == c))
        .collect();
    maximal.sort();
    maximal
}

/// Facegram levels by evaluating `f` on every face: at each distinct value
/// `t`, the maximal faces of `{σ : f(σ) ≤ t}`.
pub fn facegram_by_subsets(n: usize, f: impl Fn(Face) -> f64) -> Vec<(f64, Vec<u128>)> {
    let vals: Vec<(Face, f64)> = all_faces(n).map(|s| (s, f(s))).collect();
    let mut ts: Vec<f64> = vals.iter().map(|p| p.1).collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let mut out: Vec<(f64, Vec<u128>)> = Vec::new();
    for t in ts {
        let present: Vec<u128> = vals.iter().filter(|p| p.1 <= t).map(|p| p.0.bits()).collect();
        let mut maximal: Vec<u128> = present
            .iter()
            .copied()
            .filter(|&c| !present.iter().any(|&d| d != c && c & d == c))
            .collect();
        maximal.sort();
        if out.last().map_or(false, |l| l.1 == maximal) {
            continue;
        }
        out.push((t, maximal));
    }
    out
}

pub fn gram_as_bits(g: &Gram) -> Vec<(f64, Vec<u128>)> {
    g.levels()
        .iter()
        .map(|l| {
            let mut v: Vec<u128> = l.faces.faces().iter().map(|f| f.bits()).collect();
            v.sort();
            (l.critical, v)
        })
        .collect()
}

/// `I_σ = [f(σ), min_{τ ⊋ σ} f(τ))` over every face, kept when non-empty.
pub fn labeled_mergegram_by_subsets(n: usize, f: impl Fn(Face) -> f64) -> BTreeMap<Face, Interval> {
    let vals: Vec<(Face, f64)> = all_faces(n).map(|s| (s, f(s))).collect();
    let mut out = BTreeMap::new();
    for &(s, b) in &vals {
        let d = vals
            .iter()
            .filter(|(t, _)| s.is_proper_subset(*t))
            .map(|p| p.1)
            .fold(f64::INFINITY, f64::min);
        if b < d {
            out.insert(s, Interval::new(b, d));
        }
    }
    out
}

/// Bottleneck distance by trying every partial matching.
pub fn bottleneck_by_matchings(a: &Mergegram, b: &Mergegram) -> f64 {
    let a: Vec<Interval> = a.intervals().collect();
    let b: Vec<Interval> = b.intervals().collect();
    fn cost(x: &Interval, y: &Interval) -> f64 {
        match (x.is_infinite(), y.is_infinite()) {
            (true, true) => (x.birth - y.birth).abs(),
            (false, false) => (x.birth - y.birth).abs().max((x.death - y.death).abs()),
            _ => f64::INFINITY,
        }
    }
    fn go(i: usize, a: &[Interval], b: &[Interval], used: &mut Vec<bool>) -> f64 {
        if i == a.len() {
            return b
                .iter()
                .zip(used.iter())
                .filter(|(_, u)| !**u)
                .map(|(y, _)| y.persistence() / 2.0)
                .fold(0.0, f64::max);
        }
        let mut best = (a[i].persistence() / 2.0).max(go(i + 1, a, b, used));
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                best = best.min(cost(&a[i], &b[j]).max(go(i + 1, a, b, used)));
                used[j] = false;
            }
        }
        best
    }
    go(0, &a, &b, &mut vec![false; b.len()])
}

pub fn random_small_mergegram<R: Rng>(rng: &mut R, max_points: usize) -> Mergegram {
    let k = rng.gen_range(0..=max_points);
    Mergegram::from_intervals((0..k).map(|_| {
        let b = rng.gen_range(0..=6) as f64 * 0.5;
        if rng.gen_bool(0.15) {
            Interval::new(b, f64::INFINITY)
        } else {
            Interval::new(b, b + rng.gen_range(1..=6) as f64 * 0.5)
        }
    }))
}
