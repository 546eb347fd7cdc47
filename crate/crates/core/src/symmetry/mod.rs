//! Group action on decompositions, invariance checks, graphs and fingerprints.

mod canonical;
mod config;
mod fingerprint;
mod graphs;
mod group;
mod iso;

pub use canonical::{
    canonical_triple, decompositions_equal, is_decomposition_symmetry, orbit_partition,
    rank_triple_partition, CanonicalTriple,
};
pub use config::{apply_to_point, default_framing, extract_configuration, normalize_framing, Configuration};
pub use fingerprint::{fingerprint, Fingerprint};
pub use graphs::{
    incidence_graph, incidence_graph_with, pairing_graph, rank_one_factors, IncidenceGraph,
    PairingEdge, PairingGraph, ProjPoint, WeightMode,
};
pub use group::{
    a0, cyclic_generator, generate_group, named_element, parse_word, GroupElement, QMat,
    NAMED_ELEMENTS,
};
pub use iso::{graphs_isomorphic, Bijection, MAX_ISO_VERTICES};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("matrix {0} of the group element is singular")]
    Singular(char),
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("unknown group element {0:?}")]
    UnknownElement(String),
    #[error("generator {generator} does not preserve the decomposition: image of term {term} is not a term")]
    NotASymmetry { generator: usize, term: usize },
    #[error("group closure exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("graph has more than {0} vertices on one side")]
    GraphTooLarge(usize),
    #[error("points are not in general position")]
    DegeneratePosition,
}

/// A claimed symmetry generator recorded with a decomposition: either a
/// named element/word or an explicit element.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorSpec {
    Named(String),
    Element(GroupElement),
}

impl GeneratorSpec {
    pub fn resolve(&self, n: usize) -> Result<GroupElement, SymmetryError> {
        match self {
            GeneratorSpec::Named(w) => parse_word(w, n),
            GeneratorSpec::Element(e) => Ok(e.clone()),
        }
    }
}
