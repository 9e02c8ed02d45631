//! Exact chain-level algorithms for homologically locally connected spaces,
//! modeled on finite simplicial complexes.
//!
//! The crate turns the existence statements about homological `UV^n(G)` maps
//! into procedures on finite data:
//!
//! * [`coefficients`]: exact arithmetic over `Z`, `Z/m` and `Q`, Smith and
//!   Howell normal forms, linear solving and kernels.
//! * [`complexes`]: simplicial complexes, simplicial maps, covers, stars,
//!   nerves and filtration towers.
//! * [`chains`]: chains, boundaries, augmentation, carriers, chain morphisms
//!   and chain homotopies together with the closeness predicates.
//! * [`homology`]: reduced homology, induced maps, triviality of induced
//!   homomorphisms and cycle filling.
//! * [`uvn`]: decision procedures for `UV^n(G)` pairs and maps, `lc^n_G`, and
//!   the approximate `lc^n_G` property.
//! * [`constructors`]: realization extension, approximate lifting, relative
//!   homotopy construction, Dugundji-type extension and nerve factorization.
//! * [`verify`]: certificate checks that re-derive every claim from scratch.
//!
//! Everything is `no_std` + `alloc`; file formats and the command line live in
//! the companion `chaincert` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod chains;
pub mod coefficients;
pub mod complexes;
pub mod constructors;
mod error;
pub mod homology;
pub mod uvn;
pub mod verify;

pub use chains::{Chain, ChainHomotopy, ChainMorphism};
pub use coefficients::{Ring, RingMatrix, Scalar};
pub use complexes::{Cover, FiltrationTower, Simplex, SimplicialComplex, SimplicialMap};
pub use error::Error;
pub use homology::HomologyGroup;

pub type Result<T, E = Error> = core::result::Result<T, E>;
