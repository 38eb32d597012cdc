use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::Scalar;

/// One coordinate direction: the real line or the circle `R/Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    Line,
    Circle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmbientKind {
    Euclidean,
    Torus,
    /// Products of lines and circles, e.g. the cylinder over the circle.
    Mixed,
}

/// The underlying space: a product of lines and circles. `euclidean(n)` and
/// `torus(n)` are the uniform cases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ambient {
    axes: Vec<Axis>,
}

impl Ambient {
    pub fn euclidean(dim: usize) -> Self {
        assert!(dim >= 1, "ambient dimension must be positive");
        Ambient {
            axes: vec![Axis::Line; dim],
        }
    }

    pub fn torus(dim: usize) -> Self {
        assert!(dim >= 1, "ambient dimension must be positive");
        Ambient {
            axes: vec![Axis::Circle; dim],
        }
    }

    pub fn from_axes(axes: Vec<Axis>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::Unsupported("zero-dimensional ambient".into()));
        }
        Ok(Ambient { axes })
    }

    pub fn product(&self, other: &Ambient) -> Ambient {
        let mut axes = self.axes.clone();
        axes.extend_from_slice(&other.axes);
        Ambient { axes }
    }

    /// The factor spanned by `axes[range]`.
    pub fn factor(&self, range: std::ops::Range<usize>) -> Ambient {
        Ambient {
            axes: self.axes[range].to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn is_periodic(&self, axis: usize) -> bool {
        self.axes[axis] == Axis::Circle
    }

    pub fn has_periodic(&self) -> bool {
        self.axes.contains(&Axis::Circle)
    }

    pub fn kind(&self) -> AmbientKind {
        if self.axes.iter().all(|a| *a == Axis::Line) {
            AmbientKind::Euclidean
        } else if self.axes.iter().all(|a| *a == Axis::Circle) {
            AmbientKind::Torus
        } else {
            AmbientKind::Mixed
        }
    }

    /// Canonical representative of a lift: periodic coordinates reduced into `[0,1)`.
    pub fn canonical(&self, lift: &[Scalar]) -> Vec<Scalar> {
        lift.iter()
            .zip(&self.axes)
            .map(|(x, a)| match a {
                Axis::Line => x.clone(),
                Axis::Circle => x.fract(),
            })
            .collect()
    }

    /// Whether two lifts project to the same point.
    pub fn same_point(&self, a: &[Scalar], b: &[Scalar]) -> bool {
        a.len() == b.len()
            && a.iter().zip(b).zip(&self.axes).all(|((x, y), axis)| match axis {
                Axis::Line => x == y,
                Axis::Circle => (x - y).is_rational() && (x - y).fract().is_zero(),
            })
    }

    pub(crate) fn check_same(&self, other: &Ambient) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AmbientMismatch {
                expected: self.to_string(),
                found: other.to_string(),
            })
        }
    }

    pub(crate) fn check_coords(&self, coords: &[Scalar]) -> Result<()> {
        if coords.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::InvalidPath(format!(
                "point has {} coordinates, ambient {} needs {}",
                coords.len(),
                self,
                self.dim()
            )))
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut runs: Vec<(Axis, usize)> = Vec::new();
        for a in &self.axes {
            match runs.last_mut() {
                Some((b, n)) if b == a => *n += 1,
                _ => runs.push((*a, 1)),
            }
        }
        for (i, (a, n)) in runs.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            match a {
                Axis::Line => write!(f, "euclidean({n})")?,
                Axis::Circle => write!(f, "torus({n})")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Ambient {
    type Err = Error;

    /// `euclidean(n)`, `torus(n)`, or factors joined by ` x `.
    fn from_str(s: &str) -> Result<Ambient> {
        let bad = || Error::parse(1, 1, format!("bad ambient `{}`", s.trim()));
        let mut axes = Vec::new();
        for factor in s.split(" x ") {
            let factor = factor.trim();
            let (name, rest) = factor.split_once('(').ok_or_else(bad)?;
            let n: usize = rest
                .strip_suffix(')')
                .ok_or_else(bad)?
                .trim()
                .parse()
                .map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            let axis = match name.trim() {
                "euclidean" => Axis::Line,
                "torus" => Axis::Circle,
                _ => return Err(bad()),
            };
            axes.extend(std::iter::repeat_n(axis, n));
        }
        Ambient::from_axes(axes)
    }
}

impl Serialize for Ambient {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ambient {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A point of the ambient, stored by its canonical coordinates.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Point {
    pub ambient: Ambient,
    pub coords: Vec<Scalar>,
}

impl Point {
    pub fn new(ambient: &Ambient, lift: &[Scalar]) -> Result<Point> {
        ambient.check_coords(lift)?;
        Ok(Point {
            ambient: ambient.clone(),
            coords: ambient.canonical(lift),
        })
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}
