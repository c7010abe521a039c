//! Bipermutative-category calculus for finite-dimensional quantum theory.
//!
//! Circuits are built from isometries with `⊕`, `⊗` and composition;
//! channels between finite-dimensional C*-algebras are block Choi matrices.
//! On top of that sit Stinespring and Bratteli normal forms, the universal
//! lifts of functors along the completion embeddings, and the topology of the
//! resulting hom-sets.

pub mod algebra;
pub mod circuits;
pub mod completion;
pub mod error;
pub mod linalg;
pub mod normalform;
pub mod random;
pub mod tol;
pub mod topology;

pub use error::{Error, Result};
pub use linalg::{Matrix, C64};
