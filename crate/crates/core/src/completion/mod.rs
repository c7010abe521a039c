//! Universal lifts of functors along the completion embeddings
//! `Unitary → Isometry`, `Isometry → Cstar` and `Isometry → CPTP`, against
//! pluggable target categories.

mod builtin;
mod lift;
mod target;
mod targets;

pub use builtin::BuiltinTarget;
pub use lift::{
    lift_channel, lift_isometry, lift_normal_form, lift_normal_forms, lift_starhom, psi_iterated,
};
pub use target::{
    check_functor_laws, check_target_laws, ColaxFunctor, CoproductTarget, LawReport,
    TargetCategory, UnitaryFunctor,
};
pub use targets::{
    ConjugationFunctor, CptpCategory, EmbedFunctor, InclusionFunctor, IsometryCategory,
    TerminalCategory, TerminalFunctor,
};
