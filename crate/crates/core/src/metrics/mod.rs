//! Distances between grams, filtrations and their invariants.

mod bottleneck;
mod brute;

pub use bottleneck::{bottleneck_distance, bottleneck_matching, Matching};
pub use brute::{gromov_hausdorff_bruteforce, tripod_distance_bruteforce, BRUTE_FORCE_LIMIT};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::filtration::{filtration_interleaving, Filtration};
use crate::gram::Gram;
use crate::mergegram::{LabeledMergegram, Mergegram};

/// Largest per-face bottleneck distance; a face carried by one side only is
/// matched to the diagonal.
pub fn linf_labeled_distance(a: &LabeledMergegram, b: &LabeledMergegram) -> Result<f64> {
    if a.taxa() != b.taxa() {
        return Err(Error::UniverseMismatch);
    }
    let faces: BTreeSet<_> = a.entries().keys().chain(b.entries().keys()).copied().collect();
    let diagram = |m: &LabeledMergegram, f| Mergegram::from_intervals(m.get(f));
    Ok(faces
        .into_iter()
        .map(|f| bottleneck_distance(&diagram(a, f), &diagram(b, f)))
        .fold(0.0, f64::max))
}

/// Interleaving distance of grams, via their filtrations.
pub fn facegram_interleaving(a: &Gram, b: &Gram) -> Result<f64> {
    filtration_interleaving(&Filtration::Facegram(a.clone()), &Filtration::Facegram(b.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::FaceSet;
    use crate::gram::{GramKind, Level};
    use crate::mergegram::labeled_mergegram;
    use crate::taxa::{Face, TaxaSet};

    fn lv(t: f64, sets: &[&[usize]]) -> Level {
        Level {
            critical: t,
            faces: FaceSet::new(sets.iter().map(|s| Face::from_indices(s.iter().copied()).unwrap()))
                .unwrap(),
        }
    }

    fn pair() -> (Gram, Gram) {
        let t = TaxaSet::new(["w", "x", "y", "z"]).unwrap();
        let mk = |third: &[usize], kind| {
            Gram::new(
                t.clone(),
                vec![
                    lv(0., &[&[0], &[1], &[2], &[3]]),
                    lv(1., &[&[0, 1], &[2], &[3]]),
                    lv(2., &[&[0, 1], third]),
                    lv(3., &[&[0, 1, 2, 3]]),
                ],
                kind,
            )
            .unwrap()
        };
        (mk(&[1, 2, 3], GramKind::Facegram), mk(&[2, 3], GramKind::Treegram))
    }

    #[test]
    fn labeled_distance_of_line_pair() {
        let (a, c) = pair();
        let (la, lc) = (labeled_mergegram(&a), labeled_mergegram(&c));
        assert_eq!(linf_labeled_distance(&la, &lc).unwrap(), 0.5);
        assert_eq!(linf_labeled_distance(&la, &la).unwrap(), 0.0);
        assert_eq!(bottleneck_distance(&la.mergegram(), &lc.mergegram()), 0.0);
        let shifted = labeled_mergegram(&a.shifted(0.125));
        assert_eq!(linf_labeled_distance(&la, &shifted).unwrap(), 0.125);
        assert!(facegram_interleaving(&a, &c).unwrap() >= 0.5);
        assert_eq!(facegram_interleaving(&a, &a.shifted(0.125)).unwrap(), 0.125);
    }
}
