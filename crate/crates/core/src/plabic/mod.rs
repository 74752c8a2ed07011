//! Plabic graphs, bicoloured subdivisions and plabic tilings.

mod graph;
mod subdivision;
mod tiling;

pub use graph::{matroid_rank, Color, Face, FaceStep, Move, PlabicGraph, VertexKind};
pub use subdivision::{
    dual_graph, enumerate_subdivisions, is_boundary_edge, polygon_edges, polygon_triangulations, ArcStats,
    BicoloredSubdivision, BicoloredTriangulation,
};
pub use tiling::{Node, PlabicTiling};
