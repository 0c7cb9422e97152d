//! Euclidean stretch of Delaunay graphs and checkers for the properties the
//! stretch bound is built from: the diamond property, direct paths through
//! the Voronoi diagram, the arc inequality, and the visible-pair property.

mod arc;
mod diamond;
mod direct;
mod faces;
mod stretch;
mod visible;

pub use arc::{arc_inequality_check, sample_arc_triple, ArcCheck, ArcTriple};
pub use diamond::{diamond_check, DiamondEdge, DiamondReport};
pub use direct::{direct_path, one_sided_check, DirectPath};
pub use faces::{faces, is_triangulation, FaceSet};
pub use stretch::{euclidean_stretch, single_source, stretch_from_rows, StretchReport};
pub use visible::{segment_in_face, visible_pair_check, VisiblePairReport, VisibleViolation};

/// Euclidean length of a segment between two sites.
pub(crate) fn edge_len(a: [f64; 2], b: [f64; 2]) -> f64 {
    libm::hypot(a[0] - b[0], a[1] - b[1])
}
