//! Exact computational deformation theory for finite-dimensional models.
//!
//! Everything here is computed over the Gaussian rationals `Q(i)`: no floats,
//! no tolerances, every identity asserted entry-exactly. The crate provides
//!
//! - [`exactlin`]: the scalar field and the exact linear-algebra kernel
//!   (solving, kernels, adjoints, positive-definiteness),
//! - [`dgla`]: finite-dimensional differential graded Lie algebras with a
//!   validator for the structure axioms,
//! - [`hodge`]: metrics, adjoints, Laplacians, harmonic projectors and Green
//!   operators, with the full operator calculus (`v = Hv + \u{25a1}Gv`),
//! - [`group`]: finite matrix-group and integer-weight torus actions, metric
//!   averaging, equivariance checks, and Lie-algebra actions with their
//!   complexification,
//! - [`kuranishi`]: the order-by-order inversion of `F(phi) = phi - 1/2 G d*[phi,phi]`
//!   producing the deformation series and its obstruction polynomials,
//! - [`cstruct`]: complex structures on real vector spaces, Beltrami maps, and
//!   the C-linearity criterion relating them.

pub mod cstruct;
pub mod dgla;
pub mod exactlin;
pub mod group;
pub mod hodge;
pub mod kuranishi;
pub mod report;
pub mod rng;

#[cfg(test)]
pub(crate) mod testmodels;

pub use exactlin::{Matrix, Scalar};
pub use report::{Check, ValidationReport};
