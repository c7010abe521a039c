//! Norms and distances on hom-sets, the connected components of spaces of
//! *-homomorphisms, and the continuity estimates behind the enrichment.

mod components;
mod continuity;
mod norms;

pub use components::{
    bratteli_tuples, commutant_dimension, component_atlas, component_of, separation_witness,
    unitary_intertwiner, BratteliTuple, ComponentInfo, SeparationWitness,
};
pub use continuity::{continuity_report, ContinuityReport};
pub use norms::{
    convex_path, distance, element_norm, opnorm_lower_bound, transfer_matrix, transfer_norm,
    Element,
};
