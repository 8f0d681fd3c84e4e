//! Exact counting of subtrees and BC-subtrees of bounded maximum degree in
//! trees, via leaf-contraction of bivariate generating functions.

pub mod bc_enum;
pub mod bipoly;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod oracle;
pub mod subtree_enum;
pub mod tree;
pub mod weighted;

pub use bc_enum::ParityDegreeVector;
pub use bipoly::{BiPoly, Monomial};
pub use error::{Error, Result};
pub use oracle::{Family, Oracle};
pub use subtree_enum::{Anchors, DegreeVector};
pub use tree::Tree;
pub use weighted::{Contraction, Order, VertexWeight, WeightedTree};
