//! Combinatorics of local slices in transjective components of cluster-tilted algebras.
//!
//! Pipeline: [`quiver_io`] parses an acyclic quiver, [`cluster`] builds a cluster-tilting
//! set and the transjective component of `B = End(T)` inside [`zq`], [`component`] holds
//! that window (or one loaded from a fixture), [`slices`] enumerates and reflects local
//! slices, and [`classify`] decides which modules lie on no local slice.

pub mod classify;
pub mod cluster;
pub mod component;
pub mod hereditary;
mod linalg;
pub mod quiver_io;
pub mod slices;
pub mod zq;

pub use classify::{off_slice_modules, upper_bound, ClassificationReport};
pub use cluster::{ClusterCategory, ClusterError, Summand, TiltingSet};
pub use component::{load_component, ARComponent, VertexId, VertexSet};
pub use quiver_io::{parse_quiver, NodeId, Quiver};
pub use slices::{Completion, Slice};
pub use zq::{tau_k, Window, Zq, ZqVertex};
