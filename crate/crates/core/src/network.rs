//! Phylogenetic networks: symmetric matrices whose off-diagonal coalescence
//! times dominate the diagonal observation times.

use crate::error::{Error, NetworkViolation, Result};
use crate::taxa::{Face, TaxaSet};

#[derive(Debug, Clone, PartialEq)]
pub struct PhyloNetwork {
    taxa: TaxaSet,
    values: Vec<f64>,
}

impl PhyloNetwork {
    /// Validates a labelled square matrix, reporting every violated cell.
    pub fn new(taxa: TaxaSet, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = taxa.len();
        if rows.len() != n {
            return Err(Error::NotSquare { rows: rows.len(), row: 0, len: n });
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare { rows: n, row: i, len: r.len() });
            }
        }
        let values: Vec<f64> = rows.into_iter().flatten().collect();
        let mut bad = Vec::new();
        let at = |i: usize, j: usize| values[i * n + j];
        let name = |i: usize| taxa.label(i).to_string();
        for i in 0..n {
            for j in 0..n {
                let v = at(i, j);
                if !v.is_finite() {
                    bad.push(NetworkViolation::NonFinite { row: name(i), col: name(j), value: v });
                }
            }
        }
        if bad.is_empty() {
            for i in 0..n {
                for j in i + 1..n {
                    let (v, w) = (at(i, j), at(j, i));
                    if v != w {
                        bad.push(NetworkViolation::Asymmetric {
                            row: name(i),
                            col: name(j),
                            value: v,
                            mirrored: w,
                        });
                    }
                    let d = at(i, i).max(at(j, j));
                    if d > v {
                        bad.push(NetworkViolation::Diagonal {
                            row: name(i),
                            col: name(j),
                            value: v,
                            diagonal: d,
                        });
                    }
                }
            }
        }
        if !bad.is_empty() {
            return Err(Error::InvalidNetwork(bad));
        }
        Ok(PhyloNetwork { taxa, values })
    }

    /// Builds a network from the upper triangle `f(i, j)` for `i <= j`.
    pub fn from_fn(taxa: TaxaSet, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let n = taxa.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i <= j { f(i, j) } else { f(j, i) }).collect())
            .collect();
        Self::new(taxa, rows)
    }

    pub fn taxa(&self) -> &TaxaSet {
        &self.taxa
    }

    pub fn len(&self) -> usize {
        self.taxa.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.taxa.len() + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.values.chunks(self.len()).map(<[f64]>::to_vec).collect()
    }

    /// Distinct entries in increasing order.
    pub fn distinct_values(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    /// Strong triangle inequality on every triple.
    pub fn is_ultranetwork(&self) -> bool {
        self.ultra_violation().is_none()
    }

    fn ultra_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for z in x..n {
                let xz = self.get(x, z);
                for y in 0..n {
                    if xz > self.get(x, y).max(self.get(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Diameter of `face`: the largest entry among its pairs (diagonal included).
    pub fn vr_value(&self, face: Face) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for i in face.iter() {
            for j in face.iter().filter(|&j| j >= i) {
                best = best.max(self.get(i, j));
            }
        }
        best
    }

    /// Snaps every run of sorted entries whose consecutive gaps are at most
    /// `tol` to the run's smallest value. The map is monotone, so network and
    /// ultranetwork conditions survive it.
    pub fn coalesced(&self, tol: f64) -> PhyloNetwork {
        if tol <= 0.0 {
            return self.clone();
        }
        let distinct = self.distinct_values();
        let mut snap = Vec::with_capacity(distinct.len());
        let mut base = distinct[0];
        let mut prev = distinct[0];
        for &v in &distinct {
            if v - prev > tol {
                base = v;
            }
            snap.push((v, base));
            prev = v;
        }
        let lookup = |v: f64| {
            let k = snap.partition_point(|p| p.0 < v);
            snap[k].1
        };
        PhyloNetwork { taxa: self.taxa.clone(), values: self.values.iter().map(|&v| lookup(v)).collect() }
    }

    /// Same matrix indexed by another ordering of the same labels.
    pub fn reindexed(&self, taxa: &TaxaSet) -> Result<Self> {
        let perm = taxa.permutation_to(&self.taxa)?;
        PhyloNetwork::from_fn(taxa.clone(), |i, j| self.get(perm[i], perm[j]))
    }

    /// Entrywise order: `self ≥ other` in the network lattice means every entry
    /// of `self` is at most the corresponding entry of `other`.
    pub fn entrywise_le(&self, other: &PhyloNetwork) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }
}

/// Join of networks: the entrywise minimum ("minimizer matrix").
pub fn network_join(nets: &[PhyloNetwork]) -> Result<PhyloNetwork> {
    let first = nets.first().ok_or(Error::EmptyInput("network join"))?;
    if nets.iter().any(|n| n.taxa != first.taxa) {
        return Err(Error::UniverseMismatch);
    }
    let values = (0..first.values.len())
        .map(|k| nets.iter().map(|n| n.values[k]).fold(f64::INFINITY, f64::min))
        .collect();
    // the entrywise minimum of networks is again a network
    Ok(PhyloNetwork { taxa: first.taxa.clone(), values })
}

/// A network satisfying `N(x,z) <= max(N(x,y), N(y,z))`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ultranetwork(PhyloNetwork);

impl Ultranetwork {
    pub fn new(net: PhyloNetwork) -> Result<Self> {
        match net.ultra_violation() {
            None => Ok(Ultranetwork(net)),
            Some((x, y, z)) => Err(Error::NotUltranetwork {
                x: net.taxa.label(x).into(),
                y: net.taxa.label(y).into(),
                z: net.taxa.label(z).into(),
            }),
        }
    }

    pub fn network(&self) -> &PhyloNetwork {
        &self.0
    }

    pub fn into_network(self) -> PhyloNetwork {
        self.0
    }

    pub fn taxa(&self) -> &TaxaSet {
        self.0.taxa()
    }

    pub fn reindexed(&self, taxa: &TaxaSet) -> Result<Self> {
        Ok(Ultranetwork(self.0.reindexed(taxa)?))
    }
}

impl std::ops::Deref for Ultranetwork {
    type Target = PhyloNetwork;

    fn deref(&self) -> &PhyloNetwork {
        &self.0
    }
}

impl TryFrom<PhyloNetwork> for Ultranetwork {
    type Error = Error;

    fn try_from(net: PhyloNetwork) -> Result<Self> {
        Ultranetwork::new(net)
    }
}
