//! Exhaustive distances over correspondences, for tiny inputs only.

use crate::clique::maximal_cliques;
use crate::error::{Error, Result};
use crate::filtration::Filtration;
use crate::network::PhyloNetwork;
use crate::taxa::Face;

/// Largest `|X|·|Y|` accepted by the brute-force distances.
pub const BRUTE_FORCE_LIMIT: usize = 20;

fn guard(m: usize, n: usize) -> Result<()> {
    if m * n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(format!(
            "{m}x{n} correspondence space exceeds {BRUTE_FORCE_LIMIT} pairs"
        )));
    }
    Ok(())
}

/// `min_R max_{(x,y),(x',y') ∈ R} |N_X(x,x') − N_Y(y,y')|` over correspondences `R`.
///
/// A correspondence has distortion at most ε exactly when it is a clique in the
/// graph on `X×Y` joining compatible pairs, so each candidate ε is tested by
/// looking for a maximal clique with full projections.
pub fn gromov_hausdorff_bruteforce(a: &PhyloNetwork, b: &PhyloNetwork) -> Result<f64> {
    let (m, n) = (a.len(), b.len());
    guard(m, n)?;
    let cost = |(x, y): (usize, usize), (x2, y2): (usize, usize)| (a.get(x, x2) - b.get(y, y2)).abs();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let mut cands: Vec<f64> = Vec::new();
    for &p in &pairs {
        for &q in &pairs {
            cands.push(cost(p, q));
        }
    }
    cands.sort_by(f64::total_cmp);
    cands.dedup();
    let feasible = |eps: f64| {
        let mut verts = 0u128;
        let mut adj = vec![0u128; pairs.len()];
        for (i, &p) in pairs.iter().enumerate() {
            if cost(p, p) > eps {
                continue;
            }
            verts |= 1 << i;
            for (j, &q) in pairs.iter().enumerate().skip(i + 1) {
                if cost(p, q) <= eps {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        maximal_cliques(verts, &adj).into_iter().any(|c| {
            let (mut px, mut py) = (0u128, 0u128);
            for i in Face::from_bits(c).into_iter().flat_map(Face::iter) {
                px |= 1 << pairs[i].0;
                py |= 1 << pairs[i].1;
            }
            px.count_ones() as usize == m && py.count_ones() as usize == n
        })
    };
    let (mut lo, mut hi) = (0, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(cands[hi])
}

/// `min_R d_I(π_X^* F, π_Y^* G)` over correspondences `R ⊆ X×Y`.
///
/// Enlarging `R` only adds faces to the sup, so the minimum is attained on a
/// minimal correspondence: every pair has an endpoint used by no other pair.
/// Those have at most `|X|+|Y|−1` pairs, and each is scored exhaustively.
pub fn tripod_distance_bruteforce(f: &Filtration, g: &Filtration) -> Result<f64> {
    let (m, n) = (f.universe().len(), g.universe().len());
    guard(m, n)?;
    let k = m * n;
    let xs: Vec<u32> = (0..m).map(|x| ((1u32 << n) - 1) << (x * n)).collect();
    let ys: Vec<u32> = (0..n).map(|y| (0..m).fold(0u32, |acc, x| acc | 1 << (x * n + y))).collect();
    let mut best = f64::INFINITY;
    for r in 1u32..(1u32 << k) {
        if xs.iter().any(|row| r & row == 0) || ys.iter().any(|col| r & col == 0) {
            continue;
        }
        let minimal = (0..k).filter(|i| r >> i & 1 == 1).all(|i| {
            let (x, y) = (i / n, i % n);
            (r & xs[x]).count_ones() == 1 || (r & ys[y]).count_ones() == 1
        });
        if !minimal {
            continue;
        }
        let members: Vec<(usize, usize)> =
            (0..k).filter(|i| r >> i & 1 == 1).map(|i| (i / n, i % n)).collect();
        let mut worst: f64 = 0.0;
        for kappa in 1u32..(1u32 << members.len()) {
            let (mut fx, mut fy) = (0u128, 0u128);
            for (i, &(x, y)) in members.iter().enumerate() {
                if kappa >> i & 1 == 1 {
                    fx |= 1 << x;
                    fy |= 1 << y;
                }
            }
            let fx = Face::from_bits(fx).expect("non-empty");
            let fy = Face::from_bits(fy).expect("non-empty");
            worst = worst.max((f.value(fx) - g.value(fy)).abs());
            if worst >= best {
                break;
            }
        }
        best = best.min(worst);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taxa::TaxaSet;

    fn line(points: &[f64]) -> PhyloNetwork {
        let taxa = TaxaSet::numbered(points.len()).unwrap();
        PhyloNetwork::from_fn(taxa, |i, j| (points[i] - points[j]).abs()).unwrap()
    }

    #[test]
    fn two_point_spaces() {
        let a = line(&[0., 1.]);
        let b = line(&[0., 2.]);
        assert_eq!(gromov_hausdorff_bruteforce(&a, &a).unwrap(), 0.0);
        assert_eq!(gromov_hausdorff_bruteforce(&a, &b).unwrap(), 1.0);
        let (fa, fb) = (Filtration::Vr(a), Filtration::Vr(b));
        assert_eq!(tripod_distance_bruteforce(&fa, &fb).unwrap(), 1.0);
        assert_eq!(tripod_distance_bruteforce(&fa, &fa).unwrap(), 0.0);
    }

    #[test]
    fn different_sizes_and_guard() {
        let a = line(&[0.]);
        let b = line(&[0., 3.]);
        // the single point must correspond to both, distortion 3
        assert_eq!(gromov_hausdorff_bruteforce(&a, &b).unwrap(), 3.0);
        assert_eq!(
            tripod_distance_bruteforce(&Filtration::Vr(a), &Filtration::Vr(b.clone())).unwrap(),
            3.0
        );
        let big = line(&[0., 1., 2., 3., 4.]);
        assert!(gromov_hausdorff_bruteforce(&big, &big).is_err());
    }

    #[test]
    fn relabelled_copy() {
        let a = line(&[0., 1., 3.]);
        let b = line(&[3., 0., 1.]);
        assert_eq!(gromov_hausdorff_bruteforce(&a, &b).unwrap(), 0.0);
        assert_eq!(tripod_distance_bruteforce(&Filtration::Vr(a), &Filtration::Vr(b)).unwrap(), 0.0);
    }
}
