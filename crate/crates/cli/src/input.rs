//! Reading input files into the library types each subcommand needs.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use phylolattice::filtration::Filtration;
use phylolattice::gram::{cliquegram_from_network, treegram_from_ultranetwork};
use phylolattice::io::newick::ultranetwork_from_newick;
use phylolattice::io::{read_document, Document};
use phylolattice::mergegram::labeled_mergegram;
use phylolattice::{Gram, LabeledMergegram, Mergegram, PhyloNetwork, TaxaSet, Ultranetwork};

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub merge_tol: Option<f64>,
    pub ultrametrize: bool,
}

pub struct Input {
    pub path: PathBuf,
    pub doc: Document,
}

impl Input {
    pub fn name(&self) -> String {
        self.path.display().to_string()
    }
}

pub fn read(path: &Path) -> Result<Input> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc = read_document(&text).with_context(|| format!("{}", path.display()))?;
    log::debug!("{}: {}", path.display(), doc.kind());
    Ok(Input { path: path.to_path_buf(), doc })
}

impl Options {
    fn network(&self, net: &PhyloNetwork) -> PhyloNetwork {
        match self.merge_tol {
            Some(tol) if tol > 0.0 => net.coalesced(tol),
            _ => net.clone(),
        }
    }

    fn ultranetwork(&self, u: Ultranetwork) -> Result<Ultranetwork> {
        match self.merge_tol {
            Some(tol) if tol > 0.0 => Ok(Ultranetwork::new(u.coalesced(tol))?),
            _ => Ok(u),
        }
    }

    /// Every tree (or ultrametric matrix) in `input`.
    pub fn ultranetworks(&self, input: &Input) -> Result<Vec<Ultranetwork>> {
        match &input.doc {
            Document::Trees(trees) => trees
                .iter()
                .enumerate()
                .map(|(k, t)| {
                    let u = ultranetwork_from_newick(t, self.ultrametrize)
                        .with_context(|| format!("{}: tree {}", input.name(), k + 1))?;
                    self.ultranetwork(u)
                })
                .collect(),
            Document::Matrix(net) => {
                let u = Ultranetwork::new(self.network(net)).with_context(|| input.name())?;
                Ok(vec![u])
            }
            other => bail!("{}: expected trees or a matrix, found a {}", input.name(), other.kind()),
        }
    }

    /// Grams in `input`: one per tree, the cliquegram of a matrix, or the gram itself.
    pub fn grams(&self, input: &Input) -> Result<Vec<Gram>> {
        match &input.doc {
            Document::Gram(g) => Ok(vec![g.clone()]),
            Document::Matrix(net) => Ok(vec![cliquegram_from_network(&self.network(net))]),
            Document::Trees(_) => Ok(self.ultranetworks(input)?.iter().map(treegram_from_ultranetwork).collect()),
            Document::LabeledMergegram(m) => Ok(vec![m.to_gram().with_context(|| input.name())?]),
            Document::Mergegram(_) => bail!("{}: an unlabeled mergegram does not determine a gram", input.name()),
        }
    }

    pub fn gram(&self, input: &Input) -> Result<Gram> {
        let mut grams = self.grams(input)?;
        if grams.len() != 1 {
            bail!("{}: holds {} trees, expected one", input.name(), grams.len());
        }
        Ok(grams.pop().expect("one gram"))
    }

    pub fn labeled(&self, input: &Input) -> Result<LabeledMergegram> {
        match &input.doc {
            Document::LabeledMergegram(m) => Ok(m.clone()),
            _ => Ok(labeled_mergegram(&self.gram(input)?)),
        }
    }

    pub fn mergegram(&self, input: &Input) -> Result<Mergegram> {
        match &input.doc {
            Document::Mergegram(m) => Ok(m.clone()),
            _ => Ok(self.labeled(input)?.mergegram()),
        }
    }

    /// Rips filtration of a matrix, otherwise the facegram filtration, over `taxa` when given.
    pub fn filtration(&self, input: &Input, taxa: Option<&TaxaSet>) -> Result<Filtration> {
        let f = match &input.doc {
            Document::Matrix(net) => {
                let net = self.network(net);
                match taxa {
                    Some(t) => Filtration::Vr(net.reindexed(t).context(mismatch(input))?),
                    None => Filtration::Vr(net),
                }
            }
            _ => {
                let g = self.gram(input)?;
                match taxa {
                    Some(t) => Filtration::Facegram(g.reindexed(t).context(mismatch(input))?),
                    None => Filtration::Facegram(g),
                }
            }
        };
        Ok(f)
    }
}

fn mismatch(input: &Input) -> String {
    format!("{}: taxa differ from the first input", input.name())
}

/// Puts all items over the taxa order of the first one.
pub fn align_ultranetworks(items: Vec<(String, Ultranetwork)>) -> Result<Vec<Ultranetwork>> {
    let Some(taxa) = items.first().map(|(_, u)| u.taxa().clone()) else {
        bail!("no trees given");
    };
    items
        .into_iter()
        .map(|(name, u)| u.reindexed(&taxa).with_context(|| format!("{name}: leaf set differs from the first tree")))
        .collect()
}

pub fn align_grams(items: Vec<(String, Gram)>) -> Result<Vec<Gram>> {
    let Some(taxa) = items.first().map(|(_, g)| g.taxa().clone()) else {
        bail!("no inputs given");
    };
    items
        .into_iter()
        .map(|(name, g)| g.reindexed(&taxa).with_context(|| format!("{name}: taxa differ from the first input")))
        .collect()
}

pub fn load_ultranetworks(paths: &[PathBuf], opts: &Options) -> Result<Vec<Ultranetwork>> {
    let mut items = Vec::new();
    for p in paths {
        let input = read(p)?;
        for (k, u) in opts.ultranetworks(&input)?.into_iter().enumerate() {
            items.push((format!("{} tree {}", input.name(), k + 1), u));
        }
    }
    align_ultranetworks(items)
}

pub fn load_grams(paths: &[PathBuf], opts: &Options) -> Result<Vec<Gram>> {
    let mut items = Vec::new();
    for p in paths {
        let input = read(p)?;
        for (k, g) in opts.grams(&input)?.into_iter().enumerate() {
            items.push((format!("{} item {}", input.name(), k + 1), g));
        }
    }
    align_grams(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(labels: [&str; 3], m: [[f64; 3]; 3]) -> Ultranetwork {
        let t = TaxaSet::new(labels).unwrap();
        Ultranetwork::new(PhyloNetwork::from_fn(t, |i, j| m[i][j]).unwrap()).unwrap()
    }

    #[test]
    fn alignment_follows_the_first_item() {
        let m = [[0., 1., 2.], [1., 0., 2.], [2., 2., 0.]];
        let a = tree(["x", "y", "z"], m);
        let b = tree(["z", "y", "x"], m);
        let out = align_ultranetworks(vec![("a".into(), a.clone()), ("b".into(), b)]).unwrap();
        assert_eq!(out[1].taxa(), a.taxa());
        assert_eq!(out[1].get(1, 2), 1.0);
        let c = tree(["x", "y", "w"], m);
        let e = align_ultranetworks(vec![("a".into(), a), ("c".into(), c)]).unwrap_err();
        assert!(format!("{e:#}").starts_with("c: leaf set differs"));
        assert!(align_grams(Vec::new()).is_err());
    }
}
