//! Ambient spaces, open sets and piecewise-linear paths, all with exact
//! coordinates.

mod ambient;
mod interval;
mod openset;
mod path;

pub use ambient::{Ambient, AmbientKind, Axis, Point};
pub use interval::{Interval, IntervalUnion};
pub use openset::{AxisBox, OpenSet};
pub use path::{check_reparameterization, PlPath, Segment};

pub(crate) use openset::{point_shift, segment_shifts};
