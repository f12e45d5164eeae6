//! Zero-dimensional persistence of an ultrametric by the Elder rule.

use crate::error::{Error, Result};
use crate::mergegram::{Interval, Mergegram};
use crate::network::Ultranetwork;

/// Multiset of `(birth, death)` points, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PersistenceDiagram {
    points: Vec<Interval>,
}

impl PersistenceDiagram {
    pub fn new(mut points: Vec<Interval>) -> Self {
        points.sort();
        PersistenceDiagram { points }
    }

    pub fn points(&self) -> &[Interval] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The same points viewed as a mergegram, for bottleneck comparisons.
    pub fn to_mergegram(&self) -> Mergegram {
        Mergegram::from_intervals(self.points.iter().copied())
    }
}

/// Every taxon is born at 0; when two blocks merge the younger dies, and at
/// equal age the block holding the lexicographically smallest label survives.
pub fn ph0_elder(u: &Ultranetwork) -> Result<PersistenceDiagram> {
    let n = u.len();
    if let Some(i) = (0..n).find(|&i| u.get(i, i) != 0.0) {
        return Err(Error::NonzeroDiagonal(u.taxa().label(i).into()));
    }
    let mut pairs: Vec<(f64, usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| (u.get(i, j), i, j)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let labels = u.taxa().labels();
    let mut points = Vec::with_capacity(n);
    for (t, i, j) in pairs {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a == b {
            continue;
        }
        // each root is the block's elder, i.e. its smallest label
        let (keep, die) = if labels[a] <= labels[b] { (a, b) } else { (b, a) };
        parent[die] = keep;
        // merges at time 0 leave no off-diagonal point
        if t > 0.0 {
            points.push(Interval::new(0.0, t));
        }
    }
    points.push(Interval::new(0.0, f64::INFINITY));
    Ok(PersistenceDiagram::new(points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::PhyloNetwork;
    use crate::taxa::TaxaSet;

    fn sl(labels: [&str; 4], m: [[f64; 4]; 4]) -> Ultranetwork {
        let t = TaxaSet::new(labels).unwrap();
        Ultranetwork::new(PhyloNetwork::from_fn(t, |i, j| m[i][j]).unwrap()).unwrap()
    }

    #[test]
    fn line_diagrams_agree() {
        let x = sl(["0", "1", "3", "7"], [[0., 1., 2., 4.], [1., 0., 2., 4.], [2., 2., 0., 4.], [4., 4., 4., 0.]]);
        let y = sl(["0", "1", "5", "7"], [[0., 1., 4., 4.], [1., 0., 4., 4.], [4., 4., 0., 2.], [4., 4., 2., 0.]]);
        let expect = PersistenceDiagram::new(vec![
            Interval::new(0., 1.),
            Interval::new(0., 2.),
            Interval::new(0., 4.),
            Interval::new(0., f64::INFINITY),
        ]);
        assert_eq!(ph0_elder(&x).unwrap(), expect);
        assert_eq!(ph0_elder(&y).unwrap(), expect);
    }

    #[test]
    fn one_point_and_bad_diagonal() {
        let t = TaxaSet::new(["a"]).unwrap();
        let u = Ultranetwork::new(PhyloNetwork::new(t.clone(), vec![vec![0.0]]).unwrap()).unwrap();
        assert_eq!(ph0_elder(&u).unwrap().points(), &[Interval::new(0., f64::INFINITY)]);
        let u = Ultranetwork::new(PhyloNetwork::new(t, vec![vec![1.0]]).unwrap()).unwrap();
        assert!(ph0_elder(&u).is_err());
    }
}
