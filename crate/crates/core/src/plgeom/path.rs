use std::fmt;

use serde::{Deserialize, Serialize};

use super::ambient::{Ambient, Point};
use super::interval::{Interval, IntervalUnion};
use super::openset::{segment_shifts, AxisBox, OpenSet};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;

/// A piecewise-linear path `[0,1] -> X`.
///
/// The path is stored in the universal cover: `lifts[j]` is the position at
/// parameter `breaks[j]`, and consecutive lifts are joined by straight
/// segments. On circle axes the lift carries the winding exactly.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlPath {
    ambient: Ambient,
    breaks: Vec<Scalar>,
    lifts: Vec<Vec<Scalar>>,
}

/// One linear piece of a path: parameters `t0 < t1`, lift endpoints `a`, `b`.
#[derive(Clone, Copy, Debug)]
pub struct Segment<'a> {
    pub index: usize,
    pub t0: &'a Scalar,
    pub t1: &'a Scalar,
    pub a: &'a [Scalar],
    pub b: &'a [Scalar],
}

impl Segment<'_> {
    pub fn is_constant(&self) -> bool {
        self.a == self.b
    }

    pub fn delta(&self) -> Vec<Scalar> {
        self.b.iter().zip(self.a).map(|(x, y)| x - y).collect()
    }

    /// Converts a segment-local parameter `s` in `[0,1]` to the path parameter.
    pub fn to_path_param(&self, s: &Scalar) -> Scalar {
        self.t0 + &(s * &(self.t1 - self.t0))
    }

    pub fn lift_at_local(&self, s: &Scalar) -> Vec<Scalar> {
        self.a
            .iter()
            .zip(self.b)
            .map(|(x, y)| x + &(s * &(y - x)))
            .collect()
    }
}

impl PlPath {
    pub fn new(ambient: Ambient, breaks: Vec<Scalar>, lifts: Vec<Vec<Scalar>>) -> Result<PlPath> {
        if breaks.len() < 2 || breaks.len() != lifts.len() {
            return Err(Error::InvalidPath(format!(
                "need at least two breakpoints with one lift each (got {} breaks, {} lifts)",
                breaks.len(),
                lifts.len()
            )));
        }
        if !breaks[0].is_zero() || breaks[breaks.len() - 1] != Scalar::one() {
            return Err(Error::InvalidPath("breakpoints must start at 0 and end at 1".into()));
        }
        if let Some(w) = breaks.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPath(format!(
                "breakpoints not strictly increasing at {} -> {}",
                breaks[w],
                breaks[w + 1]
            )));
        }
        for lift in &lifts {
            ambient.check_coords(lift)?;
        }
        Ok(PlPath {
            ambient,
            breaks,
            lifts,
        })
    }

    pub fn constant(ambient: &Ambient, at: Vec<Scalar>) -> Result<PlPath> {
        PlPath::new(
            ambient.clone(),
            vec![Scalar::zero(), Scalar::one()],
            vec![at.clone(), at],
        )
    }

    pub fn segment(ambient: &Ambient, from: Vec<Scalar>, to: Vec<Scalar>) -> Result<PlPath> {
        PlPath::new(
            ambient.clone(),
            vec![Scalar::zero(), Scalar::one()],
            vec![from, to],
        )
    }

    /// Visits `vertices` at uniformly spaced parameters.
    pub fn polyline(ambient: &Ambient, vertices: Vec<Vec<Scalar>>) -> Result<PlPath> {
        let n = vertices.len();
        if n < 2 {
            return Err(Error::InvalidPath("a polyline needs two vertices".into()));
        }
        let breaks = (0..n)
            .map(|i| Scalar::ratio(i as i64, (n - 1) as i64))
            .collect();
        PlPath::new(ambient.clone(), breaks, vertices)
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn breaks(&self) -> &[Scalar] {
        &self.breaks
    }

    pub fn lifts(&self) -> &[Vec<Scalar>] {
        &self.lifts
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment<'_>> {
        (0..self.breaks.len() - 1).map(move |j| Segment {
            index: j,
            t0: &self.breaks[j],
            t1: &self.breaks[j + 1],
            a: &self.lifts[j],
            b: &self.lifts[j + 1],
        })
    }

    pub fn start_lift(&self) -> &[Scalar] {
        &self.lifts[0]
    }

    pub fn end_lift(&self) -> &[Scalar] {
        &self.lifts[self.lifts.len() - 1]
    }

    pub fn start(&self) -> Point {
        Point::new(&self.ambient, self.start_lift()).expect("validated at construction")
    }

    pub fn end(&self) -> Point {
        Point::new(&self.ambient, self.end_lift()).expect("validated at construction")
    }

    /// All lifts equal. A full loop around a circle is not constant.
    pub fn is_constant(&self) -> bool {
        self.lifts.iter().all(|l| *l == self.lifts[0])
    }

    /// Position in the cover at parameter `t`.
    pub fn lift_at(&self, t: &Scalar) -> Result<Vec<Scalar>> {
        if *t < Scalar::zero() || *t > Scalar::one() {
            return Err(Error::ParameterOutOfRange(t.to_string()));
        }
        let j = match self.breaks.binary_search(t) {
            Ok(j) => return Ok(self.lifts[j].clone()),
            Err(j) => j - 1,
        };
        let seg = self.segments().nth(j).expect("t inside [0,1]");
        let s = (t - seg.t0) / (seg.t1 - seg.t0);
        Ok(seg.lift_at_local(&s))
    }

    pub fn evaluate(&self, t: &Scalar) -> Result<Point> {
        Point::new(&self.ambient, &self.lift_at(t)?)
    }

    /// `p(2t)` on `[0,1/2]`, then `q(2t-1)`. On circle axes `q`'s lift is
    /// translated so the two lifts join.
    pub fn concat(&self, q: &PlPath) -> Result<PlPath> {
        self.ambient.check_same(&q.ambient)?;
        if !self.ambient.same_point(self.end_lift(), q.start_lift()) {
            return Err(Error::EndpointMismatch {
                end: self.end().to_string(),
                start: q.start().to_string(),
            });
        }
        let shift: Vec<Scalar> = self
            .end_lift()
            .iter()
            .zip(q.start_lift())
            .map(|(a, b)| a - b)
            .collect();
        let half = Scalar::ratio(1, 2);
        let mut breaks: Vec<Scalar> = self.breaks.iter().map(|t| t * &half).collect();
        let mut lifts = self.lifts.clone();
        for (t, l) in q.breaks.iter().zip(&q.lifts).skip(1) {
            breaks.push(&half + &(t * &half));
            lifts.push(l.iter().zip(&shift).map(|(x, k)| x + k).collect());
        }
        PlPath::new(self.ambient.clone(), breaks, lifts)
    }

    /// The composite `p o r` for a non-decreasing PL map `r: [0,1] -> [0,1]`,
    /// given as a path in `euclidean(1)`. `r` need not be surjective.
    pub fn reparameterize(&self, r: &PlPath) -> Result<PlPath> {
        check_reparameterization(r)?;
        let mut breaks: Vec<Scalar> = Vec::new();
        let mut lifts: Vec<Vec<Scalar>> = Vec::new();
        let mut push = |u: Scalar, l: Vec<Scalar>| {
            if breaks.last() != Some(&u) {
                breaks.push(u);
                lifts.push(l);
            }
        };
        for seg in r.segments() {
            let (a, b) = (&seg.a[0], &seg.b[0]);
            push(seg.t0.clone(), self.lift_at(a)?);
            if a < b {
                for t in self.breaks.iter().filter(|t| a < *t && *t < b) {
                    let u = seg.t0 + &((t - a) / (b - a) * (seg.t1 - seg.t0));
                    push(u, self.lifts[self.breaks.binary_search(t).unwrap()].clone());
                }
            }
            push(seg.t1.clone(), self.lift_at(b)?);
        }
        PlPath::new(self.ambient.clone(), breaks, lifts)
    }

    /// The restriction to `[a,b]`, rescaled affinely onto `[0,1]`.
    pub fn restrict(&self, a: &Scalar, b: &Scalar) -> Result<PlPath> {
        if a >= b {
            return Err(Error::EmptyInterval {
                lo: a.to_string(),
                hi: b.to_string(),
            });
        }
        let r = PlPath::segment(&Ambient::euclidean(1), vec![a.clone()], vec![b.clone()])?;
        self.reparameterize(&r)
    }

    /// `t -> p(1 - t)`.
    pub fn reversed(&self) -> PlPath {
        let breaks = self.breaks.iter().rev().map(|t| Scalar::one() - t).collect();
        let lifts = self.lifts.iter().rev().cloned().collect();
        PlPath {
            ambient: self.ambient.clone(),
            breaks,
            lifts,
        }
    }

    /// Same projected path, lift translated by `shift` (integers on circle axes).
    pub fn shift_lift(&self, shift: &[Scalar]) -> PlPath {
        PlPath {
            ambient: self.ambient.clone(),
            breaks: self.breaks.clone(),
            lifts: self
                .lifts
                .iter()
                .map(|l| l.iter().zip(shift).map(|(x, k)| x + k).collect())
                .collect(),
        }
    }

    /// Coordinates `range` only, as a path in the corresponding factor.
    pub fn project(&self, range: std::ops::Range<usize>) -> PlPath {
        PlPath {
            ambient: self.ambient.factor(range.clone()),
            breaks: self.breaks.clone(),
            lifts: self.lifts.iter().map(|l| l[range.clone()].to_vec()).collect(),
        }
    }

    /// The path `t -> (p(t), q(t))` in the product ambient.
    pub fn pair(&self, q: &PlPath) -> PlPath {
        let mut breaks: Vec<Scalar> = self.breaks.iter().chain(&q.breaks).cloned().collect();
        breaks.sort();
        breaks.dedup();
        let lifts = breaks
            .iter()
            .map(|t| {
                let mut l = self.lift_at(t).expect("t in [0,1]");
                l.extend(q.lift_at(t).expect("t in [0,1]"));
                l
            })
            .collect();
        PlPath {
            ambient: self.ambient.product(&q.ambient),
            breaks,
            lifts,
        }
    }

    /// Lift coordinate ranges as a closed box (possibly degenerate).
    pub fn lift_bounds(&self) -> (Vec<Scalar>, Vec<Scalar>) {
        let dim = self.ambient.dim();
        let lo = (0..dim)
            .map(|i| self.lifts.iter().map(|l| l[i].clone()).min().unwrap())
            .collect();
        let hi = (0..dim)
            .map(|i| self.lifts.iter().map(|l| l[i].clone()).max().unwrap())
            .collect();
        (lo, hi)
    }

    /// `{t : p(t) in U}` as a finite union of intervals, exact. Touching a
    /// face of `U` does not count: `U` is open.
    pub fn preimage(&self, set: &OpenSet) -> IntervalUnion {
        let mut pieces = Vec::new();
        for seg in self.segments() {
            for bx in &set.boxes {
                pieces.extend(self.segment_box_pieces(&seg, bx, false));
            }
        }
        IntervalUnion::from_intervals(pieces)
    }

    /// Path-parameter intervals where `seg` lies in some translate of `bx`,
    /// together with the shift that brings it there.
    pub(crate) fn segment_box_pieces_shifted(
        &self,
        seg: &Segment<'_>,
        bx: &AxisBox,
        closed: bool,
    ) -> Vec<(Interval, Vec<Scalar>)> {
        let span = seg.t1 - seg.t0;
        segment_shifts(&self.ambient, bx, seg.a, seg.b)
            .into_iter()
            .filter_map(|k| {
                let a: Vec<Scalar> = seg.a.iter().zip(&k).map(|(x, s)| x + s).collect();
                let b: Vec<Scalar> = seg.b.iter().zip(&k).map(|(x, s)| x + s).collect();
                bx.segment_params(&a, &b, closed)
                    .map(|s| (s.affine_image(seg.t0, &span), k))
            })
            .collect()
    }

    fn segment_box_pieces(&self, seg: &Segment<'_>, bx: &AxisBox, closed: bool) -> Vec<Interval> {
        self.segment_box_pieces_shifted(seg, bx, closed)
            .into_iter()
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether the whole image lies in `set`.
    pub fn stays_in(&self, set: &OpenSet) -> bool {
        self.preimage(set).is_unit()
    }
}

/// Checks that `r` is a non-decreasing PL self-map of `[0,1]`.
pub fn check_reparameterization(r: &PlPath) -> Result<()> {
    if r.ambient() != &Ambient::euclidean(1) {
        return Err(Error::NotMonotone {
            segment: 0,
            reason: format!("reparameterization must live in euclidean(1), not {}", r.ambient()),
        });
    }
    for seg in r.segments() {
        let (a, b) = (&seg.a[0], &seg.b[0]);
        if a > b {
            return Err(Error::NotMonotone {
                segment: seg.index,
                reason: format!("decreases from {a} to {b}"),
            });
        }
        for v in [a, b] {
            if *v < Scalar::zero() || *v > Scalar::one() {
                return Err(Error::NotMonotone {
                    segment: seg.index,
                    reason: format!("value {v} outside [0,1]"),
                });
            }
        }
    }
    Ok(())
}

impl fmt::Display for PlPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, (t, l)) in self.breaks.iter().zip(&self.lifts).enumerate() {
            if j > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{t}: (")?;
            for (i, c) in l.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PlPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlPath[{}]({self})", self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn pt(xs: &[(i64, i64)]) -> Vec<Scalar> {
        xs.iter().map(|&(n, d)| q(n, d)).collect()
    }

    fn plane() -> Ambient {
        Ambient::euclidean(2)
    }

    #[test]
    fn concat_examples() {
        let x = pt(&[(1, 3), (2, 1)]);
        let c = PlPath::constant(&plane(), x.clone()).unwrap();
        let cc = c.concat(&c).unwrap();
        assert!(cc.is_constant());
        assert_eq!(cc.evaluate(&q(2, 3)).unwrap().coords, x);

        let h = PlPath::segment(&plane(), pt(&[(0, 1), (0, 1)]), pt(&[(1, 1), (0, 1)])).unwrap();
        let v = PlPath::segment(&plane(), pt(&[(1, 1), (0, 1)]), pt(&[(1, 1), (1, 1)])).unwrap();
        let l = h.concat(&v).unwrap();
        assert_eq!(l.breaks(), &[q(0, 1), q(1, 2), q(1, 1)]);
        assert_eq!(l.lift_at(&q(1, 2)).unwrap(), pt(&[(1, 1), (0, 1)]));
        assert_eq!(l.evaluate(&q(3, 4)).unwrap(), v.evaluate(&q(1, 2)).unwrap());

        let err = v.concat(&h).unwrap_err();
        assert!(matches!(err, Error::EndpointMismatch { .. }));
    }

    #[test]
    fn torus_concat_joins_lifts() {
        let circle = Ambient::torus(1);
        let a = PlPath::segment(&circle, pt(&[(0, 1)]), pt(&[(1, 1)])).unwrap();
        let two = a.concat(&a).unwrap();
        assert_eq!(two.end_lift(), &pt(&[(2, 1)])[..]);
    }

    #[test]
    fn reparameterize_examples() {
        let p = PlPath::polyline(&plane(), vec![pt(&[(0, 1), (0, 1)]), pt(&[(1, 1), (0, 1)]), pt(&[(1, 1), (1, 1)])])
            .unwrap();
        let id = PlPath::segment(&Ambient::euclidean(1), pt(&[(0, 1)]), pt(&[(1, 1)])).unwrap();
        assert_eq!(p.reparameterize(&id).unwrap(), p);

        let zero = PlPath::constant(&Ambient::euclidean(1), pt(&[(0, 1)])).unwrap();
        let c = p.reparameterize(&zero).unwrap();
        assert!(c.is_constant());
        assert_eq!(c.start(), p.start());

        // Two-piece stand-in for t^2: (0,0) (1/2,1/4) (1,1).
        let sq = PlPath::new(
            Ambient::euclidean(1),
            vec![q(0, 1), q(1, 2), q(1, 1)],
            vec![pt(&[(0, 1)]), pt(&[(1, 4)]), pt(&[(1, 1)])],
        )
        .unwrap();
        let pr = p.reparameterize(&sq).unwrap();
        for t in [q(0, 1), q(1, 3), q(1, 2), q(5, 7), q(1, 1)] {
            let r_t = sq.lift_at(&t).unwrap()[0].clone();
            assert_eq!(pr.lift_at(&t).unwrap(), p.lift_at(&r_t).unwrap());
        }

        let down = PlPath::segment(&Ambient::euclidean(1), pt(&[(1, 1)]), pt(&[(0, 1)])).unwrap();
        assert!(matches!(p.reparameterize(&down), Err(Error::NotMonotone { segment: 0, .. })));
    }

    #[test]
    fn evaluate_wraps_on_torus() {
        let t2 = Ambient::torus(2);
        let p = PlPath::segment(&t2, pt(&[(0, 1), (0, 1)]), pt(&[(2, 1), (0, 1)])).unwrap();
        assert_eq!(p.evaluate(&q(1, 2)).unwrap().coords, pt(&[(0, 1), (0, 1)]));
        assert!(p.evaluate(&q(3, 2)).is_err());
    }

    #[test]
    fn restrict_examples() {
        let p = PlPath::segment(&plane(), pt(&[(0, 1), (0, 1)]), pt(&[(4, 1), (8, 1)])).unwrap();
        assert_eq!(p.restrict(&q(0, 1), &q(1, 1)).unwrap(), p);
        let mid = p.restrict(&q(1, 4), &q(3, 4)).unwrap();
        assert_eq!(mid.lifts(), &[pt(&[(1, 1), (2, 1)]), pt(&[(3, 1), (6, 1)])]);
        assert!(p.restrict(&q(1, 2), &q(1, 2)).is_err());
    }

    #[test]
    fn preimage_examples() {
        let bx = AxisBox::new(pt(&[(0, 1), (-1, 1)]), pt(&[(2, 1), (1, 1)])).unwrap();
        let u = OpenSet::single(plane(), bx).unwrap();
        let c_in = PlPath::constant(&plane(), pt(&[(1, 1), (0, 1)])).unwrap();
        assert!(c_in.preimage(&u).is_unit());
        let c_out = PlPath::constant(&plane(), pt(&[(3, 1), (0, 1)])).unwrap();
        assert!(c_out.preimage(&u).is_empty());

        let seg = PlPath::segment(&plane(), pt(&[(-1, 1), (0, 1)]), pt(&[(1, 1), (0, 1)])).unwrap();
        let pre = seg.preimage(&u);
        assert_eq!(pre.components(), &[Interval::new(q(1, 2), q(1, 1), false, true)]);

        // In at x=1/2..3/2 on each pass of a zig-zag between x=-1 and x=3.
        let zig = PlPath::polyline(
            &plane(),
            vec![pt(&[(-1, 1), (0, 1)]), pt(&[(3, 1), (0, 1)]), pt(&[(-1, 1), (0, 1)])],
        )
        .unwrap();
        let pre = zig.preimage(&u);
        assert_eq!(
            pre.components(),
            &[Interval::open(q(1, 8), q(3, 8)), Interval::open(q(5, 8), q(7, 8))]
        );
    }
}
