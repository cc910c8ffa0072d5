//! Exact combinatorics for Fuss-Catalan families.
//!
//! The crate is organised around four pieces:
//!
//! * [`exact`]: big-integer binomials, k-Catalan and forest numbers, and both
//!   sides of the binary/ternary summation identities.
//! * [`trees`]: complete binary trees, colored complete ternary trees, plane
//!   forests, their canonical text format and exhaustive generators.
//! * [`bijection`]: the map from colored ternary trees onto complete binary
//!   trees (R-path expansion plus ternary splitting) and its inverse
//!   (L-path absorption plus R-path contraction).
//! * [`series`]: truncated formal power series with exact integer
//!   coefficients, used to cross-check the closed forms.
//!
//! [`verify`] bundles the sweeps that tie these together.

pub mod bijection;
pub mod exact;
pub mod series;
pub mod trees;
pub mod verify;

pub use bijection::{phi, phi_forest, phi_inverse, phi_inverse_forest, BijectionError};

pub use exact::{
    binomial, colored_ternary_count, forest_catalan, identity_side, k_catalan, Count, IdentityId,
    Side,
};
pub use series::TruncatedSeries;

pub use trees::{BinaryTree, ColoredTernaryTree, Family, Forest, SizeCap};
