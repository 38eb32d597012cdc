use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactnum::Scalar;

/// An interval of the real line with independently open or closed ends.
///
/// Preimages are relatively open in `[0,1]`, so after normalization a closed
/// end can only sit at `0` or `1`; intermediate results use both kinds.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Scalar,
    pub hi: Scalar,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn new(lo: Scalar, hi: Scalar, lo_closed: bool, hi_closed: bool) -> Self {
        Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        }
    }

    pub fn open(lo: Scalar, hi: Scalar) -> Self {
        Interval::new(lo, hi, false, false)
    }

    pub fn closed(lo: Scalar, hi: Scalar) -> Self {
        Interval::new(lo, hi, true, true)
    }

    pub fn unit() -> Self {
        Interval::closed(Scalar::zero(), Scalar::one())
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => !(self.lo_closed && self.hi_closed),
            std::cmp::Ordering::Greater => true,
        }
    }

    /// Nonempty with positive length.
    pub fn has_length(&self) -> bool {
        self.lo < self.hi
    }

    pub fn length(&self) -> Scalar {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Scalar {
        self.lo.midpoint(&self.hi)
    }

    pub fn contains(&self, t: &Scalar) -> bool {
        let above = if self.lo_closed { *t >= self.lo } else { *t > self.lo };
        let below = if self.hi_closed { *t <= self.hi } else { *t < self.hi };
        above && below
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            std::cmp::Ordering::Less => (other.lo.clone(), other.lo_closed),
            std::cmp::Ordering::Greater => (self.lo.clone(), self.lo_closed),
            std::cmp::Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            std::cmp::Ordering::Less => (self.hi.clone(), self.hi_closed),
            std::cmp::Ordering::Greater => (other.hi.clone(), other.hi_closed),
            std::cmp::Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        let out = Interval::new(lo, hi, lo_closed, hi_closed);
        (!out.is_empty()).then_some(out)
    }

    /// Image under `t -> offset + scale * t` with `scale > 0`.
    pub fn affine_image(&self, offset: &Scalar, scale: &Scalar) -> Interval {
        Interval::new(
            offset + scale * &self.lo,
            offset + scale * &self.hi,
            self.lo_closed,
            self.hi_closed,
        )
    }

    /// Two interior points `lo < t1 < t2 < hi`, at a quarter and three
    /// quarters of the way.
    pub fn interior_pair(&self) -> (Scalar, Scalar) {
        let q = self.length() * Scalar::ratio(1, 4);
        (&self.lo + &q, &self.hi - &q)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite union of intervals, stored as its sorted, pairwise disjoint
/// connected components.
#[derive(Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalUnion {
    parts: Vec<Interval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion::default()
    }

    /// Normalizes an arbitrary collection: drops empty pieces, merges
    /// overlapping or abutting ones.
    pub fn from_intervals(mut pieces: Vec<Interval>) -> Self {
        pieces.retain(|p| !p.is_empty());
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut parts: Vec<Interval> = Vec::with_capacity(pieces.len());
        for p in pieces {
            if let Some(last) = parts.last_mut() {
                let joins = p.lo < last.hi || (p.lo == last.hi && (last.hi_closed || p.lo_closed));
                if joins {
                    match p.hi.cmp(&last.hi) {
                        std::cmp::Ordering::Greater => {
                            last.hi = p.hi;
                            last.hi_closed = p.hi_closed;
                        }
                        std::cmp::Ordering::Equal => last.hi_closed |= p.hi_closed,
                        std::cmp::Ordering::Less => {}
                    }
                    continue;
                }
            }
            parts.push(p);
        }
        IntervalUnion { parts }
    }

    pub fn components(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, t: &Scalar) -> bool {
        self.component_of(t).is_some()
    }

    pub fn component_of(&self, t: &Scalar) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(t))
    }

    /// True when the union is all of `[0,1]`.
    pub fn is_unit(&self) -> bool {
        self.parts.len() == 1 && self.parts[0] == Interval::unit()
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("{}");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
