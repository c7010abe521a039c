//! Objects and morphisms of the concrete categories: finite-dimensional
//! C*-algebras with completely positive maps, and the pure (isometry)
//! fragment embedded into them.

mod channel;
mod kraus;
mod object;
mod ops;
pub mod pure;
mod structural;

pub(crate) use channel::choi_to_transfer;
pub use channel::{Channel, ChoiMap, Flags, Picture};
pub use kraus::{
    channel_from_kraus, choi_of_kraus, embed, kraus_from_choi, kraus_of_block, map_from_kraus,
    KrausFamily,
};
pub use object::{CStarObject, PureObject};
pub use ops::{
    compose, compose_maps, compose_seq, copair, copair_all, copair_via_terminal, dualize,
    dualize_map, from_stochastic, oplus, oplus_all, oplus_maps, otimes, otimes_maps, to_stochastic,
};
pub use structural::{channel as structural, identity, Structural};

/// Classifies a raw block family.
pub fn classify(map: &ChoiMap) -> Flags {
    map.classify()
}
