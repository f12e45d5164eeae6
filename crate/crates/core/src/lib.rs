//! Lattice models of phylogenetic networks and filtrations.
//!
//! Networks and filtrations over a finite taxa set are represented by grams:
//! piecewise-constant, refinement-monotone maps from time to face-sets. Joins
//! of treegrams reconstruct the smallest network containing a family of trees,
//! and mergegrams summarise grams by the lifespans of their maximal faces.

pub mod clique;
pub mod cluster;
pub mod combinatorics;
pub mod elder;
pub mod error;
pub mod experiment;
pub mod filtration;
pub mod gram;
pub mod io;
pub mod mergegram;
pub mod metrics;
pub mod network;
pub mod reeb;
pub mod taxa;

pub use combinatorics::{CliqueSet, FaceSet, Graph};
pub use error::{Error, NetworkViolation, Result};
pub use filtration::{Filtration, Surjection};
pub use gram::{Gram, GramKind, JoinMode, Level};
pub use mergegram::{Interval, LabeledMergegram, Mergegram};
pub use network::{PhyloNetwork, Ultranetwork};
pub use reeb::ReebGraph;
pub use taxa::{Face, TaxaSet, MAX_TAXA};
