//! conekit: exact-arithmetic computations on Lorentzian lattices.
//!
//! The crate builds up in layers:
//! - [`mat`]: dense rational/integer linear algebra (kernels, Smith form, signatures)
//! - [`lattice`]: integral lattices of signature (1, n-1) with a pinned positive cone
//! - [`hyperbolic`]: the projectivized positive cone as a hyperbolic space,
//!   with all metric predicates in cross-multiplied rational form
//! - [`isometry`]: form-preserving integer/rational matrices, parabolic
//!   transformations, and certified orbit balls
//! - [`cone`]: rational polyhedral cones (double description), Dirichlet
//!   fundamental domains, and tiling verification
//! - [`surface`]: divisor-level computations (Riemann-Roch counts, Zariski
//!   decomposition, negative class enumeration, Mordell-Weil data, cone
//!   polyhedrality classification)
//! - [`fixtures`]: packaged example lattices, groups, and surfaces
//! - [`jsonio`]: canonical JSON encoding of all of the above
//!
//! No floating point is used anywhere in the library.

#![forbid(unsafe_code)]

pub mod cone;
pub mod error;
pub mod fixtures;
pub mod hyperbolic;
pub mod isometry;
pub mod jsonio;
pub mod lattice;
pub mod mat;
pub mod sampling;
pub mod surface;

pub use error::{Error, Result};
pub use lattice::LorentzLattice;
