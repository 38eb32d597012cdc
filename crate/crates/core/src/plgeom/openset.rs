use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::ambient::Ambient;
use super::interval::Interval;
use crate::error::{Error, Result};
use crate::exactnum::Scalar;

/// An axis-aligned box `prod (lo_i, hi_i)`. Whether the faces belong to it
/// depends on use: open sets use open boxes, function cells closed ones.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisBox {
    pub lo: Vec<Scalar>,
    pub hi: Vec<Scalar>,
}

impl AxisBox {
    pub fn new(lo: Vec<Scalar>, hi: Vec<Scalar>) -> Result<AxisBox> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::InvalidBox("corner dimensions differ".into()));
        }
        if let Some(i) = (0..lo.len()).find(|&i| lo[i] >= hi[i]) {
            return Err(Error::InvalidBox(format!(
                "side {i} is empty: {}..{}",
                lo[i], hi[i]
            )));
        }
        Ok(AxisBox { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains_open(&self, x: &[Scalar]) -> bool {
        x.iter()
            .enumerate()
            .all(|(i, v)| self.lo[i] < *v && *v < self.hi[i])
    }

    pub fn contains_closed(&self, x: &[Scalar]) -> bool {
        x.iter()
            .enumerate()
            .all(|(i, v)| self.lo[i] <= *v && *v <= self.hi[i])
    }

    /// Intersection of the closures, possibly lower-dimensional.
    pub fn closed_intersection(&self, other: &AxisBox) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
        let lo: Vec<Scalar> = (0..self.dim())
            .map(|i| self.lo[i].clone().max(other.lo[i].clone()))
            .collect();
        let hi: Vec<Scalar> = (0..self.dim())
            .map(|i| self.hi[i].clone().min(other.hi[i].clone()))
            .collect();
        (0..self.dim()).all(|i| lo[i] <= hi[i]).then_some((lo, hi))
    }

    /// Intersection of the open boxes, if nonempty.
    pub fn open_intersection(&self, other: &AxisBox) -> Option<AxisBox> {
        let (lo, hi) = self.closed_intersection(other)?;
        AxisBox::new(lo, hi).ok()
    }

    pub fn translated(&self, shift: &[Scalar]) -> AxisBox {
        AxisBox {
            lo: self.lo.iter().zip(shift).map(|(a, k)| a + k).collect(),
            hi: self.hi.iter().zip(shift).map(|(a, k)| a + k).collect(),
        }
    }

    pub fn center(&self) -> Vec<Scalar> {
        self.lo.iter().zip(&self.hi).map(|(a, b)| a.midpoint(b)).collect()
    }

    /// Parameters `s` in `[0,1]` with `a + s*(b - a)` in the box, as a single
    /// interval; ends are open where the segment crosses an open face.
    pub fn segment_params(&self, a: &[Scalar], b: &[Scalar], closed: bool) -> Option<Interval> {
        let mut acc = Interval::unit();
        for i in 0..self.dim() {
            let d = &b[i] - &a[i];
            let (lo, hi) = (&self.lo[i], &self.hi[i]);
            let piece = if d.is_zero() {
                let inside = if closed {
                    *lo <= a[i] && a[i] <= *hi
                } else {
                    *lo < a[i] && a[i] < *hi
                };
                if inside {
                    continue;
                }
                return None;
            } else {
                let s_lo = (lo - &a[i]) / &d;
                let s_hi = (hi - &a[i]) / &d;
                let (s0, s1) = if d.is_positive() { (s_lo, s_hi) } else { (s_hi, s_lo) };
                Interval::new(s0, s1, closed, closed)
            };
            acc = acc.intersect(&piece)?;
        }
        Some(acc)
    }
}

impl fmt::Display for AxisBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for i in 0..self.dim() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}..{}", self.lo[i], self.hi[i])?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for AxisBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer shift vectors `k` (zero on line axes) for which the segment
/// `a -> b` in the cover can meet `bx - k`, i.e. `lift + k` can land in `bx`.
pub(crate) fn segment_shifts(
    ambient: &Ambient,
    bx: &AxisBox,
    a: &[Scalar],
    b: &[Scalar],
) -> Vec<Vec<Scalar>> {
    let mut shifts: Vec<Vec<Scalar>> = vec![Vec::new()];
    for i in 0..ambient.dim() {
        let options: Vec<Scalar> = if ambient.is_periodic(i) {
            let m = a[i].clone().min(b[i].clone());
            let big = a[i].clone().max(b[i].clone());
            let first: BigInt = (&bx.lo[i] - &big).floor();
            let last: BigInt = (&bx.hi[i] - &m).ceil();
            num_iter(first, last).map(Scalar::from_bigint).collect()
        } else {
            vec![Scalar::zero()]
        };
        shifts = shifts
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |k| {
                    let mut v = prefix.clone();
                    v.push(k.clone());
                    v
                })
            })
            .collect();
    }
    shifts
}

fn num_iter(first: BigInt, last: BigInt) -> impl Iterator<Item = BigInt> {
    let mut cur = first;
    std::iter::from_fn(move || {
        if cur > last {
            None
        } else {
            let out = cur.clone();
            cur += 1;
            Some(out)
        }
    })
}

/// The shift `k` with `x + k` inside the open box, if any. On line axes the
/// shift is zero; on circle axes it is unique because sides are shorter than 1.
pub(crate) fn point_shift(ambient: &Ambient, bx: &AxisBox, x: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut shift = Vec::with_capacity(x.len());
    for i in 0..ambient.dim() {
        let k = if ambient.is_periodic(i) {
            Scalar::from_bigint((&bx.lo[i] - &x[i]).floor() + 1)
        } else {
            Scalar::zero()
        };
        let v = &x[i] + &k;
        if !(bx.lo[i] < v && v < bx.hi[i]) {
            return None;
        }
        shift.push(k);
    }
    Some(shift)
}

/// An open subset given as a finite union of open boxes. On circle axes the
/// boxes are chart boxes in lift coordinates with sides shorter than 1.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OpenSet {
    pub ambient: Ambient,
    pub boxes: Vec<AxisBox>,
}

impl OpenSet {
    pub fn new(ambient: Ambient, boxes: Vec<AxisBox>) -> Result<OpenSet> {
        for bx in &boxes {
            if bx.dim() != ambient.dim() {
                return Err(Error::InvalidBox(format!(
                    "box {bx} has dimension {}, ambient {ambient} needs {}",
                    bx.dim(),
                    ambient.dim()
                )));
            }
            for i in 0..bx.dim() {
                if ambient.is_periodic(i) && &bx.hi[i] - &bx.lo[i] >= Scalar::one() {
                    return Err(Error::InvalidBox(format!(
                        "box {bx} has side {i} of length >= 1 on a circle axis"
                    )));
                }
            }
        }
        Ok(OpenSet { ambient, boxes })
    }

    pub fn single(ambient: Ambient, bx: AxisBox) -> Result<OpenSet> {
        OpenSet::new(ambient, vec![bx])
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.boxes
            .iter()
            .any(|bx| point_shift(&self.ambient, bx, x).is_some())
    }

    /// Intersection with another open set over the same ambient, as a union
    /// of pairwise box intersections (including circle translates).
    pub fn intersect(&self, other: &OpenSet) -> OpenSet {
        let mut boxes = Vec::new();
        for a in &self.boxes {
            for b in &other.boxes {
                for k in segment_shifts(&self.ambient, b, &a.lo, &a.hi) {
                    // `b - k` expressed in `a`'s chart.
                    let neg: Vec<Scalar> = k.iter().map(|x| -x).collect();
                    if let Some(c) = a.open_intersection(&b.translated(&neg)) {
                        if !boxes.contains(&c) {
                            boxes.push(c);
                        }
                    }
                }
            }
        }
        OpenSet {
            ambient: self.ambient.clone(),
            boxes,
        }
    }
}

impl fmt::Display for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.boxes.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn segment_clipping() {
        let bx = AxisBox::new(vec![q(0, 1), q(-1, 1)], vec![q(2, 1), q(1, 1)]).unwrap();
        let s = bx
            .segment_params(&[q(-1, 1), q(0, 1)], &[q(1, 1), q(0, 1)], false)
            .unwrap();
        assert_eq!(s, Interval::new(q(1, 2), q(1, 1), false, true));
        // Running along a face of an open box never enters it.
        assert!(bx
            .segment_params(&[q(0, 1), q(1, 1)], &[q(1, 1), q(1, 1)], false)
            .is_none());
        assert!(bx
            .segment_params(&[q(0, 1), q(1, 1)], &[q(1, 1), q(1, 1)], true)
            .is_some());
    }

    #[test]
    fn circle_membership_uses_translates() {
        let circle = Ambient::torus(1);
        let arc = OpenSet::single(circle.clone(), AxisBox::new(vec![q(3, 4)], vec![q(5, 4)]).unwrap())
            .unwrap();
        assert!(arc.contains(&[q(0, 1)]));
        assert!(arc.contains(&[q(-7, 8)]));
        assert!(!arc.contains(&[q(1, 2)]));
        assert!(OpenSet::single(circle, AxisBox::new(vec![q(0, 1)], vec![q(1, 1)]).unwrap()).is_err());
    }

    #[test]
    fn open_set_intersection_on_circle() {
        let circle = Ambient::torus(1);
        let a = OpenSet::single(circle.clone(), AxisBox::new(vec![q(-1, 4)], vec![q(1, 4)]).unwrap())
            .unwrap();
        let b = OpenSet::single(circle, AxisBox::new(vec![q(5, 8)], vec![q(9, 8)]).unwrap()).unwrap();
        let c = a.intersect(&b);
        assert_eq!(c.boxes, vec![AxisBox::new(vec![q(-1, 4)], vec![q(1, 8)]).unwrap()]);
    }
}
