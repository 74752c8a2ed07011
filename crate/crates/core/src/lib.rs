//! Exact combinatorics and geometry of positroid cells, the hypersimplex
//! `Δ_{k+1,n}` and the `m = 2` amplituhedron `A_{n,k,2}(Z)`.
//!
//! All arithmetic is exact: scalars are [`Rational`]s and every geometric
//! statement is decided by signs of determinants.

pub mod error;
pub mod amplituhedron;
pub mod cluster;
pub mod exact;
pub mod hypersimplex;
pub mod plabic;
pub mod permutations;
pub mod subset;
pub mod tilings;

pub use error::{Error, Result};
pub use exact::{CyclicInterval, ExactMatrix, Rational, Sign};
pub use permutations::{AffinePermutation, DecoratedPermutation, WPermutation};
pub use plabic::{BicoloredSubdivision, BicoloredTriangulation, Color, PlabicGraph, PlabicTiling};
pub use subset::Subset;
pub use amplituhedron::{ChamberCertificate, TwistorTable, YPoint, ZMatrix};
pub use cluster::{Quiver, Seed};
pub use hypersimplex::{PositroidPolytope, WSimplex};
pub use tilings::{ChamberIndex, ChamberSet, CompatGraph, Tiling, TilingReport, Verdict, VerifyMode};
