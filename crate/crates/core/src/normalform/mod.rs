//! Canonical forms: isometry factorisations, Bratteli forms of
//! *-homomorphisms and Stinespring normal forms of channels.

mod bratteli;
mod equivalence;
mod isometry;
mod stinespring;

pub use bratteli::{bratteli_form, BratteliForm};
pub use equivalence::{equivalence_witness, EquivalenceWitness};
pub use isometry::{factor_isometry, isometry_witness, IsometryFactorization};
pub use stinespring::{
    channel_equal, eval_family, eval_normal_form, normal_form_from_kraus, stinespring,
    stinespring_family, NormalForm,
};
