mod common;

use common::*;
use phylolattice::filtration::{filtration_interleaving, pullback_filtration, Filtration, Surjection};
use phylolattice::gram::{join_grams, treegram_from_ultranetwork};
use phylolattice::mergegram::{
    join_mergegram_from_tree_mergegrams, join_mergegram_of_treegrams, labeled_mergegram,
    labeled_mergegram_of_filtration, mergegram, mergegram_of_filtration,
};
use phylolattice::network::network_join;
use phylolattice::reeb::face_reeb_graph;
use phylolattice::{Face, Gram, JoinMode, LabeledMergegram, PhyloNetwork, TaxaSet};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn permuted(net: &PhyloNetwork, perm: &[usize]) -> PhyloNetwork {
    PhyloNetwork::from_fn(net.taxa().clone(), |i, j| net.get(perm[i], perm[j])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn network_join_is_greatest_lower_bound(seed in any::<u64>(), n in 1usize..=6) {
        let mut r = rng(seed);
        let a = random_network(&mut r, n);
        let b = random_network(&mut r, n);
        let j = network_join(&[a.clone(), b.clone()]).unwrap();
        prop_assert!(j.entrywise_le(&a) && j.entrywise_le(&b));
        let lower = random_network(&mut r, n);
        if lower.entrywise_le(&a) && lower.entrywise_le(&b) {
            prop_assert!(lower.entrywise_le(&j));
        }
    }

    #[test]
    fn rips_values_are_monotone(seed in any::<u64>(), n in 1usize..=8) {
        let net = random_network(&mut rng(seed), n);
        for s in all_faces(n) {
            for i in 0..n {
                prop_assert!(net.vr_value(s) <= net.vr_value(s.with(i)));
            }
            if s.len() == 1 {
                prop_assert_eq!(net.vr_value(s), net.get(s.first(), s.first()));
            }
        }
    }

    #[test]
    fn ultranetwork_extension_bound(seed in any::<u64>(), n in 1usize..=8) {
        let u = random_ultranetwork(&mut rng(seed), n, true);
        for s in all_faces(n) {
            for y in (0..n).filter(|&y| !s.contains(y)) {
                let reach = s.iter().map(|x| u.get(x, y)).fold(f64::NEG_INFINITY, f64::max);
                prop_assert!(u.vr_value(s) <= reach);
            }
        }
    }

    #[test]
    fn interleaving_reduction_matches_exhaustive(seed in any::<u64>(), n in 1usize..=8) {
        let mut r = rng(seed);
        let f = Filtration::Facegram(random_facegram(&mut r, n));
        let g = random_filtration(&mut r, n);
        let exhaustive = all_faces(n).map(|s| (f.value(s) - g.value(s)).abs()).fold(0.0, f64::max);
        prop_assert_eq!(filtration_interleaving(&f, &g).unwrap(), exhaustive);
        let a = Filtration::Vr(random_network(&mut r, n));
        let b = Filtration::Vr(random_network(&mut r, n));
        let exhaustive = all_faces(n).map(|s| (a.value(s) - b.value(s)).abs()).fold(0.0, f64::max);
        prop_assert_eq!(filtration_interleaving(&a, &b).unwrap(), exhaustive);
    }

    #[test]
    fn pullback_along_bijection_is_isometric(seed in any::<u64>(), n in 1usize..=7) {
        let mut r = rng(seed);
        let f = random_filtration(&mut r, n);
        let g = random_filtration(&mut r, n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut r);
        let z = TaxaSet::new((0..n).map(|i| format!("z{i}"))).unwrap();
        let phi = Surjection::new(z, taxa(n), perm).unwrap();
        let pf = pullback_filtration(&f, &phi).unwrap();
        let pg = pullback_filtration(&g, &phi).unwrap();
        prop_assert_eq!(
            filtration_interleaving(&pf, &pg).unwrap(),
            filtration_interleaving(&f, &g).unwrap()
        );
        for s in all_faces(n) {
            for i in 0..n {
                prop_assert!(pf.value(s) <= pf.value(s.with(i)));
            }
        }
    }

    #[test]
    fn labeled_mergegram_matches_formula_oracle(seed in any::<u64>(), n in 1usize..=8) {
        let f = random_filtration(&mut rng(seed), n);
        let lm = labeled_mergegram(&f.facegram());
        prop_assert_eq!(lm.entries(), &labeled_mergegram_by_subsets(n, |s| f.value(s)));
        prop_assert_eq!(&labeled_mergegram_of_filtration(&f, None), &lm);
        let everything: Vec<Face> = all_faces(n).collect();
        prop_assert_eq!(mergegram_of_filtration(&f, Some(&everything)), lm.mergegram());
    }

    #[test]
    fn labeled_mergegram_is_complete(seed in any::<u64>(), n in 1usize..=8) {
        let g = random_facegram(&mut rng(seed), n);
        let back = labeled_mergegram(&g).to_gram().unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.kind(), g.classify());
    }

    #[test]
    fn mergegram_is_invariant_under_relabelling(seed in any::<u64>(), n in 1usize..=8) {
        let mut r = rng(seed);
        let net = random_network(&mut r, n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut r);
        let a = mergegram(&Filtration::Vr(net.clone()).facegram());
        let b = mergegram(&Filtration::Vr(permuted(&net, &perm)).facegram());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn mergegram_is_invariant_under_pullback(seed in any::<u64>(), x in 1usize..=6, extra in 0usize..=4) {
        let mut r = rng(seed);
        let f = random_filtration(&mut r, x);
        let zn = x + extra;
        let z = TaxaSet::new((0..zn).map(|i| format!("z{i}"))).unwrap();
        let phi = Surjection::new(z, taxa(x), random_surjection_map(&mut r, zn, x)).unwrap();
        let p = pullback_filtration(&f, &phi).unwrap();
        let (lf, lp) = (labeled_mergegram(&f.facegram()), labeled_mergegram(&p.facegram()));
        prop_assert_eq!(lf.mergegram(), lp.mergegram());
        // maximal faces correspond one to one at every time
        for t in f.facegram().criticals() {
            prop_assert_eq!(lf.alive_at(t).len(), lp.alive_at(t).len());
        }
        if zn <= 10 {
            prop_assert_eq!(lp.entries(), &labeled_mergegram_by_subsets(zn, |s| p.value(s)));
        }
    }

    #[test]
    fn tree_join_algorithms_agree(seed in any::<u64>(), n in 1usize..=8, l in 1usize..=5) {
        let mut r = rng(seed);
        let late = r.gen_bool(0.5);
        let trees: Vec<_> = (0..l).map(|_| random_ultranetwork(&mut r, n, late)).collect();
        let grams: Vec<Gram> = trees.iter().map(treegram_from_ultranetwork).collect();
        let slow = labeled_mergegram(&join_grams(&grams, JoinMode::Facegram).unwrap());
        let fast = join_mergegram_of_treegrams(&trees).unwrap();
        let parts: Vec<LabeledMergegram> = grams.iter().map(labeled_mergegram).collect();
        let from_parts = join_mergegram_from_tree_mergegrams(&parts).unwrap();
        prop_assert_eq!(&fast, &slow);
        prop_assert_eq!(&from_parts, &slow);
    }

    #[test]
    fn reeb_edges_reproduce_mergegram(seed in any::<u64>(), n in 1usize..=8) {
        let g = random_facegram(&mut rng(seed), n);
        let reeb = face_reeb_graph(&g);
        prop_assert_eq!(reeb.mergegram(), mergegram(&g));
        if g.is_treegram() {
            prop_assert!(reeb.is_merge_tree());
        }
        prop_assert_eq!(reeb.edges(reeb.level_count() - 1).len(), 1);
    }
}
