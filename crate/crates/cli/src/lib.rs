//! Executable surface over the orientation structures: trace parsing and
//! rendering, workload generation, checked replay with statistics, and the
//! verification driver. The `arbor` binary is a thin argument layer over
//! these modules.

pub mod gen;
pub mod replay;
pub mod stats;
pub mod trace;
pub mod verify;

pub use gen::{generate, GenError, Workload};
pub use replay::{replay, Algo, CheckMode, ReplayConfig, ReplayError, ReplayOutcome};
pub use stats::{OpRow, StatsReport};
pub use trace::{Trace, TraceError, TraceOp};
pub use verify::{verify, VerifyConfig, VerifyReport};
