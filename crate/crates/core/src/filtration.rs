//! Filtrations over a taxa set, surjections between taxa sets, and pullbacks.

use crate::error::{Error, Result};
use crate::gram::{cliquegram_from_network, Gram, GramKind, Level};
use crate::network::PhyloNetwork;
use crate::combinatorics::FaceSet;
use crate::taxa::{Face, TaxaSet};

/// A total function `Z -> X` hitting every element of `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct Surjection {
    source: TaxaSet,
    target: TaxaSet,
    map: Vec<usize>,
}

impl Surjection {
    /// `map[z]` is the index in `target` of the image of source taxon `z`.
    pub fn new(source: TaxaSet, target: TaxaSet, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::NotSurjective(format!(
                "map has {} entries for {} source taxa",
                map.len(),
                source.len()
            )));
        }
        let mut hit = 0u128;
        for (z, &x) in map.iter().enumerate() {
            if x >= target.len() {
                return Err(Error::NotSurjective(format!(
                    "{} maps to index {x} outside the target",
                    source.label(z)
                )));
            }
            hit |= 1 << x;
        }
        if hit != target.full().bits() {
            let missed = (0..target.len()).find(|x| hit >> x & 1 == 0).unwrap_or(0);
            return Err(Error::NotSurjective(format!("{} has no preimage", target.label(missed))));
        }
        Ok(Surjection { source, target, map })
    }

    pub fn source(&self) -> &TaxaSet {
        &self.source
    }

    pub fn target(&self) -> &TaxaSet {
        &self.target
    }

    pub fn apply(&self, z: usize) -> usize {
        self.map[z]
    }

    pub fn image(&self, face: Face) -> Face {
        Face::from_indices(face.iter().map(|z| self.map[z])).expect("image of a face is non-empty")
    }

    pub fn preimage(&self, face: Face) -> Face {
        Face::from_indices((0..self.map.len()).filter(|&z| face.contains(self.map[z])))
            .expect("surjective maps have non-empty preimages")
    }
}

/// An order-preserving assignment of values to the non-empty faces of a universe.
#[derive(Debug, Clone)]
pub enum Filtration {
    /// Vietoris–Rips: a face's value is its diameter in the network.
    Vr(PhyloNetwork),
    /// A face's value is the first level at which it is covered.
    Facegram(Gram),
    Pullback { base: Box<Filtration>, map: Surjection },
}

impl Filtration {
    pub fn universe(&self) -> &TaxaSet {
        match self {
            Filtration::Vr(n) => n.taxa(),
            Filtration::Facegram(g) => g.taxa(),
            Filtration::Pullback { map, .. } => map.source(),
        }
    }

    pub fn value(&self, face: Face) -> f64 {
        match self {
            Filtration::Vr(n) => n.vr_value(face),
            Filtration::Facegram(g) => g.value(face),
            Filtration::Pullback { base, map } => base.value(map.image(face)),
        }
    }

    /// The facegram of maximal faces of the sublevel complexes.
    pub fn facegram(&self) -> Gram {
        match self {
            // Rips complexes are flag complexes, so their maximal faces are the
            // maximal cliques of the threshold graph
            Filtration::Vr(n) => relabel_kind(cliquegram_from_network(n), GramKind::Facegram),
            Filtration::Facegram(g) => g.clone(),
            // maximal faces of the pulled back complex are preimages of maximal faces
            Filtration::Pullback { base, map } => {
                let g = base.facegram();
                let raw = g
                    .levels()
                    .iter()
                    .map(|l| (l.critical, FaceSet::maximal(l.faces.faces().iter().map(|f| map.preimage(*f)))))
                    .collect();
                Gram::from_raw(map.source().clone(), raw, GramKind::Facegram)
            }
        }
    }

    /// Faces that are maximal at some time.
    pub fn support(&self) -> Vec<Face> {
        self.facegram().appearing_faces()
    }
}

fn relabel_kind(g: Gram, kind: GramKind) -> Gram {
    let taxa = g.taxa().clone();
    let raw = g.levels().iter().map(|l: &Level| (l.critical, l.faces.clone())).collect();
    Gram::from_raw(taxa, raw, kind)
}

pub fn facegram_from_filtration(f: &Filtration) -> Gram {
    f.facegram()
}

pub fn filtration_from_facegram(g: &Gram) -> Filtration {
    Filtration::Facegram(g.clone())
}

pub fn pullback_filtration(f: &Filtration, map: &Surjection) -> Result<Filtration> {
    if map.target() != f.universe() {
        return Err(Error::NotSurjective("map target differs from the filtration universe".into()));
    }
    Ok(Filtration::Pullback { base: Box::new(f.clone()), map: map.clone() })
}

/// `max |F(σ) − G(σ)|` over all non-empty faces.
pub fn filtration_interleaving(f: &Filtration, g: &Filtration) -> Result<f64> {
    if f.universe() != g.universe() {
        return Err(Error::UniverseMismatch);
    }
    if let (Filtration::Vr(a), Filtration::Vr(b)) = (f, g) {
        // diameters are maxima of pair values, so the sup is attained on a pair
        let n = a.len();
        let mut best: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                best = best.max((a.get(i, j) - b.get(i, j)).abs());
            }
        }
        return Ok(best);
    }
    // Reduction to the appearing faces: take σ with F(σ) > G(σ). At time G(σ)
    // the facegram of G covers σ by a maximal face τ, so G(τ) = G(σ), and
    // F(τ) ≥ F(σ) by monotonicity. Hence F(τ) − G(τ) ≥ F(σ) − G(σ), and the sup
    // over all faces is attained on s(F) ∪ s(G).
    let mut best: f64 = 0.0;
    for face in f.support().into_iter().chain(g.support()) {
        best = best.max((f.value(face) - g.value(face)).abs());
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(points: &[f64]) -> PhyloNetwork {
        let taxa = TaxaSet::numbered(points.len()).unwrap();
        PhyloNetwork::from_fn(taxa, |i, j| (points[i] - points[j]).abs()).unwrap()
    }

    fn all_faces(n: usize) -> impl Iterator<Item = Face> {
        (1u128..1 << n).map(|b| Face::from_bits(b).unwrap())
    }

    #[test]
    fn surjection_checks() {
        let z = TaxaSet::new(["a", "b", "c"]).unwrap();
        let x = TaxaSet::new(["x", "y"]).unwrap();
        assert!(Surjection::new(z.clone(), x.clone(), vec![0, 0, 0]).is_err());
        assert!(Surjection::new(z.clone(), x.clone(), vec![0, 1]).is_err());
        assert!(Surjection::new(z.clone(), x.clone(), vec![0, 2, 1]).is_err());
        let s = Surjection::new(z, x, vec![0, 0, 1]).unwrap();
        assert_eq!(s.preimage(Face::singleton(0)), Face::pair(0, 1));
        assert_eq!(s.image(Face::pair(0, 1)), Face::singleton(0));
    }

    #[test]
    fn pullback_values() {
        let x = TaxaSet::new(["x", "y"]).unwrap();
        let n = PhyloNetwork::new(x.clone(), vec![vec![0.0, 2.0], vec![2.0, 1.0]]).unwrap();
        let f = Filtration::Vr(n);
        let z = TaxaSet::new(["a", "b", "c"]).unwrap();
        let s = Surjection::new(z, x.clone(), vec![0, 0, 1]).unwrap();
        let p = pullback_filtration(&f, &s).unwrap();
        assert_eq!(p.value(Face::pair(0, 1)), f.value(Face::singleton(0)));
        assert_eq!(p.value(Face::pair(1, 2)), 2.0);
        for face in all_faces(3) {
            assert_eq!(p.facegram().value(face), p.value(face));
        }
        let one = TaxaSet::new(["x"]).unwrap();
        let c = Filtration::Vr(PhyloNetwork::new(one.clone(), vec![vec![0.0]]).unwrap());
        let to_one = Surjection::new(TaxaSet::new(["a", "b"]).unwrap(), one, vec![0, 0]).unwrap();
        let p = pullback_filtration(&c, &to_one).unwrap();
        assert!(all_faces(2).all(|f| p.value(f) == 0.0));
        assert!(pullback_filtration(&f, &to_one).is_err());
    }

    #[test]
    fn interleaving_of_line_rips() {
        let a = Filtration::Vr(line(&[0., 1., 3., 7.]));
        let b = Filtration::Vr(line(&[0., 1., 5., 7.]));
        assert_eq!(filtration_interleaving(&a, &b).unwrap(), 2.0);
        let ga = Filtration::Facegram(a.facegram());
        let gb = Filtration::Facegram(b.facegram());
        assert_eq!(filtration_interleaving(&ga, &gb).unwrap(), 2.0);
        assert_eq!(filtration_interleaving(&ga, &ga).unwrap(), 0.0);
        let shifted = Filtration::Facegram(a.facegram().shifted(0.25));
        assert_eq!(filtration_interleaving(&ga, &shifted).unwrap(), 0.25);
    }

    #[test]
    fn constant_filtration_is_one_level() {
        let n = PhyloNetwork::from_fn(TaxaSet::numbered(3).unwrap(), |_, _| 4.0).unwrap();
        let g = Filtration::Vr(n).facegram();
        assert_eq!(g.levels().len(), 1);
        assert_eq!(g.levels()[0].critical, 4.0);
    }
}
