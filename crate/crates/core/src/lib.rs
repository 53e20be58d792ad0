pub mod closed_forms;
pub mod crossing;
pub mod drawing;
pub mod embedder;
pub mod error;
pub mod exact_geom;
pub mod graph_model;
pub mod hill;
pub mod optimizer;
pub mod planter;
pub mod rng;

pub use drawing::{CoordinateKind, Coords, Drawing};
pub use error::{Error, Result};
pub use exact_geom::{IntPoint, Point, RatPoint};
pub use graph_model::GraphSpec;
pub use hill::HillModel;
