use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dfun::TestFunction;
use crate::exactnum::Scalar;
use crate::plgeom::PlPath;

/// Outcome of a check. Searches over enumerated generators that are not known
/// to be exhaustive end in [`Verdict::NoViolationFound`], never in `Holds`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails { witness: Box<Witness> },
    NoViolationFound { budget: usize },
}

impl Verdict {
    pub fn fails(witness: Witness) -> Verdict {
        Verdict::Fails {
            witness: Box::new(witness),
        }
    }

    /// Certified true.
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    /// Certified false.
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }

    /// Not refuted: either certified or budget-qualified.
    pub fn passes(&self) -> bool {
        !self.is_fail()
    }

    pub fn is_certified(&self) -> bool {
        !matches!(self, Verdict::NoViolationFound { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fails { witness } => Some(witness),
            _ => None,
        }
    }

    /// Combines the verdicts of independent obligations: the first failure
    /// wins, and any budget-qualified part makes the whole budget-qualified.
    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::Holds;
        for v in verdicts {
            match v {
                Verdict::Fails { .. } => return v,
                Verdict::NoViolationFound { .. } => out = v,
                Verdict::Holds => {}
            }
        }
        out
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => f.write_str("true"),
            Verdict::Fails { witness } => write!(f, "false, witness {witness}"),
            Verdict::NoViolationFound { budget } => {
                write!(f, "no violation found (budget {budget})")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// First parameter varies, second fixed.
    S,
    /// Second parameter varies, first fixed.
    T,
}

/// Evidence for a negative verdict. Every variant can be re-checked from the
/// data it carries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `g(t1) > g(t2)` with `t1 < t2` in one component of the domain of `g`.
    Decrease {
        t1: Scalar,
        t2: Scalar,
        v1: Scalar,
        v2: Scalar,
    },
    /// A test function that decreases along the path between `t1 < t2`.
    Generator {
        function: TestFunction,
        t1: Scalar,
        t2: Scalar,
        v1: Scalar,
        v2: Scalar,
    },
    /// The defining predicate rejects the path.
    Predicate { predicate: String, reason: String },
    /// The path leaves the open subset the space is restricted to, at `t`.
    LeavesRegion { t: Scalar },
    /// A test function decreasing along one parameter direction of a
    /// bi-parameter map, inside grid cell `cell = (i, j)`, on the line where
    /// the other parameter equals `fixed`.
    BiParam {
        function: TestFunction,
        direction: Direction,
        cell: (usize, usize),
        fixed: Scalar,
        t1: Scalar,
        t2: Scalar,
        v1: Scalar,
        v2: Scalar,
    },
    /// A path whose image under a map fails in the target.
    Image {
        source_index: usize,
        image: PlPath,
        inner: Box<Witness>,
    },
    /// A path built from corpus paths `parts` by a closure operation.
    Derived {
        operation: String,
        parts: Vec<usize>,
        path: PlPath,
        inner: Box<Witness>,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Decrease { t1, t2, v1, v2 } => {
                write!(f, "decrease t1={t1}, t2={t2} ({v1} > {v2})")
            }
            Witness::Generator {
                function, t1, t2, ..
            } => write!(f, "generator {}, t1={t1}, t2={t2}", function.label),
            Witness::Predicate { predicate, reason } => write!(f, "{predicate}: {reason}"),
            Witness::LeavesRegion { t } => write!(f, "leaves the region at t={t}"),
            Witness::BiParam {
                function,
                direction,
                cell,
                fixed,
                t1,
                t2,
                ..
            } => write!(
                f,
                "generator {} decreases in direction {direction:?} on cell {cell:?} at {fixed}, between {t1} and {t2}",
                function.label
            ),
            Witness::Image {
                source_index,
                inner,
                ..
            } => write!(f, "image of corpus path #{source_index}: {inner}"),
            Witness::Derived {
                operation,
                parts,
                inner,
                ..
            } => write!(f, "{operation} of corpus paths {parts:?}: {inner}"),
        }
    }
}
