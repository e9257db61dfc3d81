pub mod error;
pub mod graph;
pub mod heuristics;
pub mod master;
pub mod matching;
pub mod separation;
pub mod verify;
pub mod vertex_set;
mod walk;

pub use error::{Error, Result};
pub use graph::Graph;
pub use heuristics::{CliqueCover, CoverMethod, InitialCutSet};
pub use master::{MasterModel, Mode, SolveConfig, SolveReport, SolveStatus};
pub use separation::{CutBuffer, FeasibilityCut};
pub use verify::{Attack, DefenderSet};
pub use vertex_set::VertexSet;
