//! Derived structures riding on the orientation's event stream. Each one
//! subscribes to a graph at attach time and reacts to `Added`, `Removed`,
//! and `Flipped`; because a flip arrives as one event instead of a
//! remove/add pair, per-direction state moves in O(1) per flip, and the
//! low out-degree bounds every per-update fan-out by the maintained degree.

mod adjacency;
mod matching;
mod matvec;

pub use adjacency::AdjacencyIndex;
pub use matching::Matching;
pub use matvec::MatVec;
