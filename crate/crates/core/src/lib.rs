//! Planar Manhattan networks for convex point sets.

pub mod baseline;
pub mod builder;
pub mod cli;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod histogram;
pub mod network;
pub mod ocp;
pub mod verify;

pub use baseline::build_baseline;
pub use builder::{build_network, project_point};
pub use error::{Error, Result};
pub use geometry::{canonicalize, l1_distance, ConvexInput, Point, PointClass};
pub use network::{Network, Vertex};
