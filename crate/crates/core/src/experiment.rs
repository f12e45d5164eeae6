//! Seeded random tree families and the join progression experiment.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cluster::{agglomerate, Linkage};
use crate::error::{Error, Result};
use crate::gram::{join_grams, treegram_from_ultranetwork, Gram, JoinMode};
use crate::mergegram::{mergegram, Mergegram};
use crate::metrics::bottleneck_distance;
use crate::network::{PhyloNetwork, Ultranetwork};
use crate::taxa::TaxaSet;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub taxa: usize,
    pub trees: usize,
    pub seed: u64,
    pub linkage: Linkage,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.taxa == 0 || self.trees == 0 {
            return Err(Error::EmptyInput("experiment configuration"));
        }
        if self.taxa > crate::MAX_TAXA {
            return Err(Error::TooManyTaxa(self.taxa));
        }
        Ok(())
    }
}

/// Symmetric matrix with zero diagonal and i.i.d. uniform(0,1) off-diagonal entries.
pub fn random_dissimilarity<R: Rng>(rng: &mut R, taxa: &TaxaSet) -> PhyloNetwork {
    let n = taxa.len();
    let mut vals = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v: f64 = rng.gen();
            vals[i * n + j] = v;
            vals[j * n + i] = v;
        }
    }
    PhyloNetwork::from_fn(taxa.clone(), |i, j| vals[i * n + j]).expect("zero diagonal, positive entries")
}

/// `cfg.trees` cophenetic ultrametrics over taxa `t0..`, one clustering of a
/// fresh random matrix each. Deterministic in `cfg.seed`.
pub fn gen_random_treegrams(cfg: &ExperimentConfig) -> Result<Vec<Ultranetwork>> {
    cfg.validate()?;
    let taxa = TaxaSet::numbered(cfg.taxa)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Ok((0..cfg.trees)
        .map(|_| agglomerate(&random_dissimilarity(&mut rng, &taxa), cfg.linkage).to_ultranetwork())
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProgressionRow {
    pub k: usize,
    pub distance: f64,
}

#[derive(Debug, Clone)]
pub struct Progression {
    pub mode: JoinMode,
    pub rows: Vec<ProgressionRow>,
    /// Whether every partial join lies below the next one.
    pub monotone: bool,
    pub full_join: Gram,
    pub full_mergegram: Mergegram,
}

/// Bottleneck distance between the mergegram of the join of the first `k`
/// trees and that of the join of all trees, for every `k`.
pub fn bottleneck_progression(trees: &[Ultranetwork], mode: JoinMode) -> Result<Progression> {
    let first = trees.first().ok_or(Error::EmptyInput("progression"))?;
    if trees.iter().any(|t| t.taxa() != first.taxa()) {
        return Err(Error::UniverseMismatch);
    }
    let mut partial: Vec<Gram> = Vec::with_capacity(trees.len());
    for t in trees {
        let g = treegram_from_ultranetwork(t);
        let next = match partial.last() {
            None => join_grams(&[g], mode)?,
            Some(prev) => join_grams(&[prev.clone(), g], mode)?,
        };
        log::debug!("partial join {}: {} levels", partial.len() + 1, next.levels().len());
        partial.push(next);
    }
    let monotone = partial
        .windows(2)
        .map(|w| w[0].leq(&w[1]))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    let full_join = partial.last().expect("at least one tree").clone();
    let full_mergegram = mergegram(&full_join);
    let rows = partial
        .iter()
        .enumerate()
        .map(|(i, g)| ProgressionRow { k: i + 1, distance: bottleneck_distance(&mergegram(g), &full_mergegram) })
        .collect();
    Ok(Progression { mode, rows, monotone, full_join, full_mergegram })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::matrix::write_matrix_csv;

    fn cfg(seed: u64, linkage: Linkage) -> ExperimentConfig {
        ExperimentConfig { taxa: 6, trees: 4, seed, linkage }
    }

    #[test]
    fn generation_is_seeded() {
        let a = gen_random_treegrams(&cfg(7, Linkage::Upgma)).unwrap();
        let b = gen_random_treegrams(&cfg(7, Linkage::Upgma)).unwrap();
        let c = gen_random_treegrams(&cfg(8, Linkage::Upgma)).unwrap();
        let csv = |v: &[Ultranetwork]| v.iter().map(|u| write_matrix_csv(u)).collect::<String>();
        assert_eq!(csv(&a), csv(&b));
        assert_ne!(csv(&a), csv(&c));
        let single = gen_random_treegrams(&cfg(7, Linkage::Single)).unwrap();
        assert!(single.iter().all(|u| u.is_ultranetwork()));
        let one = ExperimentConfig { taxa: 1, trees: 1, seed: 0, linkage: Linkage::Upgma };
        assert_eq!(gen_random_treegrams(&one).unwrap()[0].rows(), vec![vec![0.0]]);
        assert!(gen_random_treegrams(&ExperimentConfig { taxa: 0, ..one }).is_err());
    }

    #[test]
    fn progression_ends_at_zero() {
        let trees = gen_random_treegrams(&cfg(3, Linkage::Upgma)).unwrap();
        for mode in [JoinMode::Cliquegram, JoinMode::Facegram] {
            let p = bottleneck_progression(&trees, mode).unwrap();
            assert_eq!(p.rows.len(), 4);
            assert_eq!(p.rows.last().unwrap().distance, 0.0);
            assert!(p.monotone);
        }
        let p = bottleneck_progression(&trees[..1], JoinMode::Facegram).unwrap();
        assert_eq!(p.rows, vec![ProgressionRow { k: 1, distance: 0.0 }]);
    }
}
