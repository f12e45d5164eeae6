//! Agglomerative clustering into dendrograms.

use std::fmt;

use crate::error::{Error, Result};
use crate::io::newick::quote_label;
use crate::network::{PhyloNetwork, Ultranetwork};
use crate::taxa::TaxaSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Linkage {
    Upgma,
    Single,
}

impl std::str::FromStr for Linkage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upgma" => Ok(Linkage::Upgma),
            "single" | "single-linkage" => Ok(Linkage::Single),
            other => Err(Error::InvalidTaxa(format!("unknown linkage {other:?}"))),
        }
    }
}

impl fmt::Display for Linkage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Linkage::Upgma => "upgma",
            Linkage::Single => "single-linkage",
        })
    }
}

/// Clusters `0..n` are the leaves; merge `k` creates cluster `n + k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    taxa: TaxaSet,
    merges: Vec<Merge>,
}

impl Dendrogram {
    pub fn taxa(&self) -> &TaxaSet {
        &self.taxa
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    fn members(&self) -> Vec<Vec<usize>> {
        let n = self.taxa.len();
        let mut m: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        for mg in &self.merges {
            let mut v = m[mg.left].clone();
            v.extend_from_slice(&m[mg.right]);
            m.push(v);
        }
        m
    }

    /// Cophenetic ultrametric with zero diagonal.
    pub fn to_ultranetwork(&self) -> Ultranetwork {
        let n = self.taxa.len();
        let members = self.members();
        let mut vals = vec![0.0; n * n];
        for mg in &self.merges {
            for &x in &members[mg.left] {
                for &y in &members[mg.right] {
                    vals[x * n + y] = mg.height;
                    vals[y * n + x] = mg.height;
                }
            }
        }
        let net = PhyloNetwork::from_fn(self.taxa.clone(), |i, j| vals[i * n + j])
            .expect("cophenetic matrices are networks");
        Ultranetwork::new(net).expect("monotone merge heights give an ultrametric")
    }

    pub fn to_newick(&self) -> String {
        let n = self.taxa.len();
        let height = |c: usize| if c < n { 0.0 } else { self.merges[c - n].height };
        fn write(d: &Dendrogram, c: usize, parent_h: f64, height: &dyn Fn(usize) -> f64, out: &mut String) {
            let n = d.taxa.len();
            if c < n {
                out.push_str(&quote_label(d.taxa.label(c)));
            } else {
                let m = d.merges[c - n];
                out.push('(');
                write(d, m.left, m.height, height, out);
                out.push(',');
                write(d, m.right, m.height, height, out);
                out.push(')');
            }
            if parent_h.is_finite() {
                out.push_str(&format!(":{}", parent_h - height(c)));
            }
        }
        let mut out = String::new();
        let root = if n == 1 { 0 } else { n + self.merges.len() - 1 };
        write(self, root, f64::NAN, &height, &mut out);
        out.push(';');
        out
    }
}

/// Agglomerates the clusters of `d` by repeatedly merging the closest pair.
/// Ties go to the pair that comes first in index order. Merge heights are
/// kept non-decreasing so that rounding cannot produce inversions.
pub fn agglomerate(d: &PhyloNetwork, linkage: Linkage) -> Dendrogram {
    let n = d.len();
    // active cluster ids and their sizes; dist indexed by slot
    let mut ids: Vec<usize> = (0..n).collect();
    let mut sizes: Vec<f64> = vec![1.0; n];
    let mut dist: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| d.get(i, j)).collect()).collect();
    let mut merges = Vec::with_capacity(n.saturating_sub(1));
    let mut floor = f64::NEG_INFINITY;
    while ids.len() > 1 {
        let k = ids.len();
        let (mut bi, mut bj, mut best) = (0, 1, f64::INFINITY);
        for i in 0..k {
            for j in i + 1..k {
                if dist[i][j] < best {
                    (bi, bj, best) = (i, j, dist[i][j]);
                }
            }
        }
        let height = best.max(floor);
        floor = height;
        merges.push(Merge { left: ids[bi], right: ids[bj], height });
        let (si, sj) = (sizes[bi], sizes[bj]);
        for m in 0..k {
            if m == bi || m == bj {
                continue;
            }
            let v = match linkage {
                Linkage::Upgma => (si * dist[bi][m] + sj * dist[bj][m]) / (si + sj),
                Linkage::Single => dist[bi][m].min(dist[bj][m]),
            };
            dist[bi][m] = v;
            dist[m][bi] = v;
        }
        ids[bi] = n + merges.len() - 1;
        sizes[bi] = si + sj;
        ids.remove(bj);
        sizes.remove(bj);
        dist.remove(bj);
        for row in &mut dist {
            row.remove(bj);
        }
    }
    Dendrogram { taxa: d.taxa().clone(), merges }
}

/// Cophenetic ultrametric of single-linkage clustering.
pub fn single_linkage(d: &PhyloNetwork) -> Ultranetwork {
    agglomerate(d, Linkage::Single).to_ultranetwork()
}

pub fn upgma(d: &PhyloNetwork) -> Ultranetwork {
    agglomerate(d, Linkage::Upgma).to_ultranetwork()
}
