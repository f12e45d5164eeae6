//! Python bindings: networks, grams, mergegrams and the distances between them.

use phylolattice::cluster::{single_linkage, Linkage};
use phylolattice::elder::ph0_elder;
use phylolattice::experiment::{bottleneck_progression as progression, gen_random_treegrams, ExperimentConfig};
use phylolattice::filtration::Filtration;
use phylolattice::gram::{cliquegram_from_network, join_grams, squash_to_cliquegram, treegram_from_ultranetwork};
use phylolattice::io::json::{gram_from_json, gram_to_json, mergegram_from_json, mergegram_to_json};
use phylolattice::io::matrix::{parse_matrix_csv, write_matrix_csv};
use phylolattice::io::newick::{parse_newick, ultranetwork_from_newick};
use phylolattice::mergegram::{join_mergegram_of_treegrams, labeled_mergegram};
use phylolattice::metrics::{bottleneck_distance as bottleneck, facegram_interleaving, linf_labeled_distance};
use phylolattice::{JoinMode, TaxaSet, Ultranetwork};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn join_mode(mode: &str) -> PyResult<JoinMode> {
    mode.parse().map_err(err)
}

/// Square matrix of observation times over named taxa.
#[pyclass(name = "PhyloNetwork", module = "phylolattice", from_py_object)]
#[derive(Clone)]
struct PyNetwork(phylolattice::PhyloNetwork);

#[pymethods]
impl PyNetwork {
    #[new]
    fn new(labels: Vec<String>, matrix: Vec<Vec<f64>>) -> PyResult<Self> {
        let taxa = TaxaSet::new(labels).map_err(err)?;
        Ok(PyNetwork(phylolattice::PhyloNetwork::new(taxa, matrix).map_err(err)?))
    }

    #[staticmethod]
    fn from_csv(text: &str) -> PyResult<Self> {
        parse_matrix_csv(text).map(PyNetwork).map_err(err)
    }

    fn to_csv(&self) -> String {
        write_matrix_csv(&self.0)
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.taxa().labels().to_vec()
    }

    fn matrix(&self) -> Vec<Vec<f64>> {
        self.0.rows()
    }

    fn is_ultranetwork(&self) -> bool {
        self.0.is_ultranetwork()
    }

    fn cliquegram(&self) -> PyGram {
        PyGram(cliquegram_from_network(&self.0))
    }

    /// Mergegram of the Rips filtration.
    fn mergegram(&self) -> PyMergegram {
        PyMergegram(labeled_mergegram(&cliquegram_from_network(&self.0)).mergegram())
    }

    /// Elder-rule diagram; non-ultrametric input is clustered by single linkage first.
    fn ph0(&self) -> PyResult<PyMergegram> {
        let u = match Ultranetwork::new(self.0.clone()) {
            Ok(u) => u,
            Err(_) => single_linkage(&self.0),
        };
        Ok(PyMergegram(ph0_elder(&u).map_err(err)?.to_mergegram()))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("PhyloNetwork({} taxa)", self.0.len())
    }
}

/// A cliquegram, facegram or treegram.
#[pyclass(name = "Gram", module = "phylolattice", skip_from_py_object)]
#[derive(Clone)]
struct PyGram(phylolattice::Gram);

#[pymethods]
impl PyGram {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        gram_from_json(text).map(PyGram).map_err(err)
    }

    fn to_json(&self) -> String {
        gram_to_json(&self.0)
    }

    #[getter]
    fn kind(&self) -> String {
        self.0.kind().to_string()
    }

    #[getter]
    fn taxa(&self) -> Vec<String> {
        self.0.taxa().labels().to_vec()
    }

    /// `(critical value, faces)` for every level.
    fn levels(&self) -> Vec<(f64, Vec<Vec<String>>)> {
        self.0.levels().iter().map(|l| (l.critical, self.faces(&l.faces))).collect()
    }

    fn at(&self, t: f64) -> Vec<Vec<String>> {
        self.faces(self.0.at(t))
    }

    fn is_treegram(&self) -> bool {
        self.0.is_treegram()
    }

    fn is_cliquegram(&self) -> bool {
        self.0.is_cliquegram()
    }

    fn leq(&self, other: &PyGram) -> PyResult<bool> {
        self.0.leq(&other.aligned_to(&self.0)?).map_err(err)
    }

    fn squash(&self) -> PyGram {
        PyGram(squash_to_cliquegram(&self.0))
    }

    fn mergegram(&self) -> PyMergegram {
        PyMergegram(labeled_mergegram(&self.0).mergegram())
    }

    /// `(face, birth, death)` for every interval.
    fn labeled_mergegram(&self) -> Vec<(Vec<String>, f64, f64)> {
        let taxa = self.0.taxa();
        labeled_mergegram(&self.0)
            .sorted_entries()
            .into_iter()
            .map(|(f, i)| (taxa.face_labels(f).into_iter().map(String::from).collect(), i.birth, i.death))
            .collect()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Gram({}, {} taxa, {} levels)", self.0.kind(), self.0.taxa().len(), self.0.levels().len())
    }
}

impl PyGram {
    /// This gram over the taxa order of `like`.
    fn aligned_to(&self, like: &phylolattice::Gram) -> PyResult<phylolattice::Gram> {
        self.0.reindexed(like.taxa()).map_err(err)
    }

    fn faces(&self, fs: &phylolattice::FaceSet) -> Vec<Vec<String>> {
        let taxa = self.0.taxa();
        fs.faces().iter().map(|f| taxa.face_labels(*f).into_iter().map(String::from).collect()).collect()
    }
}

/// Multiset of half-open intervals `[birth, death)`.
#[pyclass(name = "Mergegram", module = "phylolattice", skip_from_py_object)]
#[derive(Clone)]
struct PyMergegram(phylolattice::Mergegram);

#[pymethods]
impl PyMergegram {
    #[new]
    fn new(intervals: Vec<(f64, f64)>) -> PyResult<Self> {
        if let Some((b, d)) = intervals.iter().find(|(b, d)| !(b.is_finite() && b < d)) {
            return Err(PyValueError::new_err(format!("degenerate interval [{b}, {d})")));
        }
        Ok(PyMergegram(phylolattice::Mergegram::from_intervals(
            intervals.into_iter().map(|(b, d)| phylolattice::Interval::new(b, d)),
        )))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        mergegram_from_json(text).map(PyMergegram).map_err(err)
    }

    fn to_json(&self) -> String {
        mergegram_to_json(&self.0)
    }

    /// Sorted intervals, repeated by multiplicity.
    fn intervals(&self) -> Vec<(f64, f64)> {
        self.0.intervals().map(|i| (i.birth, i.death)).collect()
    }

    fn bottleneck(&self, other: &PyMergegram) -> f64 {
        bottleneck(&self.0, &other.0)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Mergegram({} intervals)", self.0.len())
    }
}

fn ultranetworks(nets: &[PyNetwork]) -> PyResult<Vec<Ultranetwork>> {
    let Some(first) = nets.first() else {
        return Err(PyValueError::new_err("no trees given"));
    };
    let taxa = first.0.taxa().clone();
    nets.iter()
        .map(|n| Ultranetwork::new(n.0.reindexed(&taxa).map_err(err)?).map_err(err))
        .collect()
}

/// Ultrametric networks of every tree in a Newick string.
#[pyfunction]
#[pyo3(signature = (text, ultrametrize = false))]
fn trees_from_newick(text: &str, ultrametrize: bool) -> PyResult<Vec<PyNetwork>> {
    parse_newick(text)
        .map_err(err)?
        .iter()
        .map(|t| Ok(PyNetwork(ultranetwork_from_newick(t, ultrametrize).map_err(err)?.into_network())))
        .collect()
}

#[pyfunction]
fn treegram(tree: &PyNetwork) -> PyResult<PyGram> {
    let u = Ultranetwork::new(tree.0.clone()).map_err(err)?;
    Ok(PyGram(treegram_from_ultranetwork(&u)))
}

#[pyfunction]
#[pyo3(signature = (grams, mode = "facegram"))]
fn join(grams: Vec<PyRef<'_, PyGram>>, mode: &str) -> PyResult<PyGram> {
    let Some(first) = grams.first() else {
        return Err(PyValueError::new_err("no grams given"));
    };
    let taxa = first.0.taxa().clone();
    let parts = grams.iter().map(|g| g.0.reindexed(&taxa).map_err(err)).collect::<PyResult<Vec<_>>>()?;
    join_grams(&parts, join_mode(mode)?).map(PyGram).map_err(err)
}

/// Mergegram of the facegram join of trees, computed from the tree matrices.
#[pyfunction]
fn tree_join_mergegram(trees: Vec<PyNetwork>) -> PyResult<PyMergegram> {
    let us = ultranetworks(&trees)?;
    Ok(PyMergegram(join_mergegram_of_treegrams(&us).map_err(err)?.mergegram()))
}

#[pyfunction]
fn bottleneck_distance(a: &PyMergegram, b: &PyMergegram) -> f64 {
    bottleneck(&a.0, &b.0)
}

#[pyfunction]
fn interleaving_distance(a: &PyGram, b: &PyGram) -> PyResult<f64> {
    facegram_interleaving(&a.0, &b.aligned_to(&a.0)?).map_err(err)
}

#[pyfunction]
fn labeled_distance(a: &PyGram, b: &PyGram) -> PyResult<f64> {
    linf_labeled_distance(&labeled_mergegram(&a.0), &labeled_mergegram(&b.aligned_to(&a.0)?)).map_err(err)
}

#[pyfunction]
fn rips_interleaving(a: &PyNetwork, b: &PyNetwork) -> PyResult<f64> {
    let b = b.0.reindexed(a.0.taxa()).map_err(err)?;
    phylolattice::filtration::filtration_interleaving(&Filtration::Vr(a.0.clone()), &Filtration::Vr(b)).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (taxa, trees, seed = 0, method = "upgma"))]
fn random_trees(taxa: usize, trees: usize, seed: u64, method: &str) -> PyResult<Vec<PyNetwork>> {
    let linkage: Linkage = method.parse().map_err(err)?;
    let cfg = ExperimentConfig { taxa, trees, seed, linkage };
    cfg.validate().map_err(err)?;
    Ok(gen_random_treegrams(&cfg).map_err(err)?.into_iter().map(|u| PyNetwork(u.into_network())).collect())
}

/// Distances from the mergegram of each partial join to that of the full join.
#[pyfunction]
#[pyo3(signature = (trees, mode = "facegram"))]
fn bottleneck_progression(trees: Vec<PyNetwork>, mode: &str) -> PyResult<Vec<f64>> {
    let us = ultranetworks(&trees)?;
    let p = progression(&us, join_mode(mode)?).map_err(err)?;
    Ok(p.rows.into_iter().map(|r| r.distance).collect())
}

#[pymodule]
#[pyo3(name = "phylolattice")]
fn phylolattice_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNetwork>()?;
    m.add_class::<PyGram>()?;
    m.add_class::<PyMergegram>()?;
    m.add_function(wrap_pyfunction!(trees_from_newick, m)?)?;
    m.add_function(wrap_pyfunction!(treegram, m)?)?;
    m.add_function(wrap_pyfunction!(join, m)?)?;
    m.add_function(wrap_pyfunction!(tree_join_mergegram, m)?)?;
    m.add_function(wrap_pyfunction!(bottleneck_distance, m)?)?;
    m.add_function(wrap_pyfunction!(interleaving_distance, m)?)?;
    m.add_function(wrap_pyfunction!(labeled_distance, m)?)?;
    m.add_function(wrap_pyfunction!(rips_interleaving, m)?)?;
    m.add_function(wrap_pyfunction!(random_trees, m)?)?;
    m.add_function(wrap_pyfunction!(bottleneck_progression, m)?)?;
    Ok(())
}
