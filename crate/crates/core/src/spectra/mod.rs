//! Weight matrices, characteristic polynomials and the matrix form of the
//! covering relation.

mod block;
mod det;
mod matrix;
mod poly;

pub use block::{block_triangularize, BlockTriangular};
pub use det::{berkowitz, charpoly, charpoly_of, determinant};
pub use matrix::{cover_products, matrix_cover_check, weight_matrix, Rows, WeightMatrix};
pub use poly::{poly_divides, IntPolynomial, Ring};
