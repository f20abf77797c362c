//! c₂ invariants of decompleted circulant graphs.
//!
//! Routes: direct point counting of the Kirchhoff polynomial, products of
//! Dodgson polynomials, the complementary-monomial count at p = 2,
//! denominator reduction, and transfer recurrences along circulant families.

pub mod algebra;
pub mod c2;
pub mod graph;
pub mod graph_polys;
pub mod recurrences;

pub use algebra::{AlgebraError, MultilinearPoly, Poly, Prime};
pub use graph::{EdgeMask, Graph, GraphError, SetPartition};
