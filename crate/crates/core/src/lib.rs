//! Vertex connectivity and super connectedness of direct products of
//! graphs with cycles.
//!
//! The crate builds graph families and their direct products, the cyclic
//! layered graph assembled from copies of a bipartite graph, computes
//! `κ`, `κ'` and the super-`κ` property exactly, and checks the
//! connectivity formulas and super-connectedness conditions for products
//! with cycles instance by instance.

pub mod connectivity;
pub mod constructors;
pub mod error;
pub mod expr;
pub mod graph;
pub mod harness;
pub mod io;
pub mod iso;

pub use connectivity::{
    all_minimum_vertex_cuts, connectivity_report, edge_connectivity, is_max_kappa, is_super_kappa,
    minimum_vertex_cut, vertex_connectivity, ConnectivityReport, CutMethod, CutOptions, SuperKappa,
    SuperStatus, VertexCut,
};
pub use error::{Error, Result};
pub use expr::ProductSpec;
pub use graph::{Bipartition, Graph};
