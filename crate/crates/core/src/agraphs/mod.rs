//! A-graphs over the pattern graph of groups (one vertex `F(x1, x2)`, one edge
//! pair with group `F(y1, y2)`), their folds, and the descent to good A-graphs.

mod algebra;
mod classify;
mod goodify;
mod graph;
mod moves;
mod sample;

pub use algebra::{Engine, IaSite, IiaSite, Violation};
pub use classify::{ComplexityGood, Piece, PieceKind};
pub use goodify::{Factor, GoodCertificate, Goodified, MeridianSpec, PeripheralEntry, TraceEntry};
pub use sample::Pick;
pub use graph::{AEdge, AGraph, EGroup, EdgeClass, Half, VGroup, VertexClass};
