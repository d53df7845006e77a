//! Roman k-domination workbench: graphs, weight functions, exact solvers,
//! closed forms on complete bipartite graphs and constructive transforms.

pub mod generators;
pub mod graph;
pub mod io;
pub mod kmn;
pub mod solvers;
pub mod suite;
pub mod sweep;
pub mod transforms;
pub mod weights;

pub use graph::{BipartitionLabels, Graph, GraphError, Vertex};
pub use solvers::{Budget, Method, SolveError, SolveResult};
pub use weights::{Validity, Variant, Violation, WeightError, WeightFunction};
