//! Isotypic decompositions and invariant dimensions for Z₃, Z_{n+1} and
//! Z_{n+1}×Z₃ acting on A⊗A⊗A, A = U*⊗V.

mod components;
mod dims;
mod gaussian;
mod projector;

pub use components::{m3_component_norms, ComponentLabel, ComponentNorms};
pub use dims::{
    binomial, isotypic_index, z3_invariant_dim, znp1_by_enumeration, znp1_invariant_dim,
    znp1_summand_table, znp1_z3_by_type, znp1_z3_invariant_dim, znp1_z3_summands, Summand,
    SummandKind,
};
pub use gaussian::GaussQ;
pub use projector::{
    conjugation_group, cyclic_average, group_average, projector_rank, tensor_action,
    z3_group, znp1_group, znp1_z3_group, InvariantError, ProjectorRank,
};
