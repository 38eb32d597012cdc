use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::plgeom::{Ambient, PlPath};

/// A decision procedure for membership of PL paths in `dX`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum PathPredicate {
    /// Every path.
    Any,
    /// Constant paths only.
    Constant,
    /// Every coordinate of the lift is non-decreasing.
    Nondecreasing,
    /// Only coordinate `axis` moves. With `monotone` it must not decrease;
    /// with `rational_level` the fixed coordinates of a non-constant path
    /// must be rational.
    Along {
        axis: usize,
        monotone: bool,
        rational_level: bool,
    },
    /// Every segment moves along a single axis (non-decreasingly when
    /// `monotone`).
    PiecewiseAxis { monotone: bool },
    /// Planar paths whose moving segments are non-vertical with rational
    /// slope.
    RationalSlope,
    /// Constant, or never passing through 0 (on the line).
    AvoidZero,
    /// Staying in the closed non-negative or the closed non-positive
    /// half-line.
    HalfLine,
    /// Constant, or running from `C_a` towards `C_b` inside one chord of the
    /// twisted cubic `C_t = (t, t^2, t^3)`.
    Harp { chords: Vec<(Scalar, Scalar)> },
    /// Membership of the reversed path.
    Reversed { inner: Box<PathPredicate> },
    /// The first `split` coordinates satisfy `left`, the rest `right`.
    Product {
        split: usize,
        left: Box<PathPredicate>,
        right: Box<PathPredicate>,
    },
    /// Finite concatenations (up to reparameterization) of paths each
    /// accepted by one of the legs. Splits are searched at breakpoints.
    Glue { legs: Vec<PathPredicate> },
}

impl PathPredicate {
    /// `Ok(())` when the path is accepted, otherwise the reason.
    pub fn check(&self, p: &PlPath) -> std::result::Result<(), String> {
        match self {
            PathPredicate::Any => Ok(()),
            PathPredicate::Constant => {
                if p.is_constant() {
                    Ok(())
                } else {
                    Err("path is not constant".into())
                }
            }
            PathPredicate::Nondecreasing => {
                for seg in p.segments() {
                    if let Some(i) = (0..seg.a.len()).find(|&i| seg.b[i] < seg.a[i]) {
                        return Err(format!(
                            "coordinate {i} decreases on [{}, {}]",
                            seg.t0, seg.t1
                        ));
                    }
                }
                Ok(())
            }
            PathPredicate::Along {
                axis,
                monotone,
                rational_level,
            } => check_along(p, *axis, *monotone, *rational_level),
            PathPredicate::PiecewiseAxis { monotone } => {
                for seg in p.segments() {
                    let moving: Vec<usize> = (0..seg.a.len()).filter(|&i| seg.a[i] != seg.b[i]).collect();
                    if moving.len() > 1 {
                        return Err(format!(
                            "segment on [{}, {}] is not parallel to an axis",
                            seg.t0, seg.t1
                        ));
                    }
                    if *monotone {
                        if let Some(&i) = moving.first() {
                            if seg.b[i] < seg.a[i] {
                                return Err(format!(
                                    "coordinate {i} decreases on [{}, {}]",
                                    seg.t0, seg.t1
                                ));
                            }
                        }
                    }
                }
                Ok(())
            }
            PathPredicate::RationalSlope => {
                if p.ambient().dim() != 2 {
                    return Err("rational slopes need a planar ambient".into());
                }
                for seg in p.segments() {
                    if seg.is_constant() {
                        continue;
                    }
                    let dx = &seg.b[0] - &seg.a[0];
                    let dy = &seg.b[1] - &seg.a[1];
                    if dx.is_zero() {
                        return Err(format!("segment on [{}, {}] is vertical", seg.t0, seg.t1));
                    }
                    let slope = dy / dx;
                    if !slope.is_rational() {
                        return Err(format!(
                            "segment on [{}, {}] has irrational slope {slope}",
                            seg.t0, seg.t1
                        ));
                    }
                }
                Ok(())
            }
            PathPredicate::AvoidZero => {
                if p.is_constant() {
                    return Ok(());
                }
                let (lo, hi) = p.lift_bounds();
                if lo[0].is_positive() || hi[0].is_negative() {
                    Ok(())
                } else {
                    Err(format!("non-constant path meets 0 (image [{}, {}])", lo[0], hi[0]))
                }
            }
            PathPredicate::HalfLine => {
                let (lo, hi) = p.lift_bounds();
                if !lo[0].is_negative() || !hi[0].is_positive() {
                    Ok(())
                } else {
                    Err(format!("image [{}, {}] meets both open half-lines", lo[0], hi[0]))
                }
            }
            PathPredicate::Harp { chords } => check_harp(p, chords),
            PathPredicate::Reversed { inner } => inner
                .check(&p.reversed())
                .map_err(|r| format!("reversed path: {r}")),
            PathPredicate::Product { split, left, right } => {
                let dim = p.ambient().dim();
                left.check(&p.project(0..*split))
                    .map_err(|r| format!("first factor: {r}"))?;
                right
                    .check(&p.project(*split..dim))
                    .map_err(|r| format!("second factor: {r}"))
            }
            PathPredicate::Glue { legs } => check_glue(p, legs),
        }
    }

    pub fn accepts(&self, p: &PlPath) -> bool {
        self.check(p).is_ok()
    }

    /// Ambient compatibility, where the predicate constrains it.
    pub fn validate_for(&self, ambient: &Ambient) -> Result<()> {
        let need = |dim: usize, what: &str| {
            if ambient.dim() == dim {
                Ok(())
            } else {
                Err(Error::Unsupported(format!("{what} needs dimension {dim}, not {ambient}")))
            }
        };
        match self {
            PathPredicate::Along { axis, .. } if *axis >= ambient.dim() => Err(Error::Unsupported(
                format!("axis {axis} out of range for {ambient}"),
            )),
            PathPredicate::RationalSlope => need(2, "rational_slope"),
            PathPredicate::AvoidZero => need(1, "avoid_zero"),
            PathPredicate::HalfLine => need(1, "half_line"),
            PathPredicate::Harp { .. } => need(3, "harp"),
            PathPredicate::Reversed { inner } => inner.validate_for(ambient),
            PathPredicate::Product { split, left, right } => {
                if *split == 0 || *split >= ambient.dim() {
                    return Err(Error::Unsupported(format!("split {split} out of range for {ambient}")));
                }
                left.validate_for(&ambient.factor(0..*split))?;
                right.validate_for(&ambient.factor(*split..ambient.dim()))
            }
            PathPredicate::Glue { legs } => legs.iter().try_for_each(|l| l.validate_for(ambient)),
            _ => Ok(()),
        }
    }

    pub fn reversed(self) -> PathPredicate {
        match self {
            PathPredicate::Reversed { inner } => *inner,
            PathPredicate::Any => PathPredicate::Any,
            PathPredicate::Constant => PathPredicate::Constant,
            other => PathPredicate::Reversed {
                inner: Box::new(other),
            },
        }
    }
}

fn check_along(
    p: &PlPath,
    axis: usize,
    monotone: bool,
    rational_level: bool,
) -> std::result::Result<(), String> {
    let start = p.start_lift();
    for (t, lift) in p.breaks().iter().zip(p.lifts()) {
        for i in (0..lift.len()).filter(|&i| i != axis) {
            if lift[i] != start[i] {
                return Err(format!("coordinate {i} moves (at t={t})"));
            }
        }
    }
    if rational_level && !p.is_constant() {
        let canonical = p.ambient().canonical(start);
        if let Some(i) = (0..canonical.len()).find(|&i| i != axis && !canonical[i].is_rational()) {
            return Err(format!("level {} of coordinate {i} is not rational", canonical[i]));
        }
    }
    if monotone {
        for seg in p.segments() {
            if seg.b[axis] < seg.a[axis] {
                return Err(format!(
                    "coordinate {axis} decreases on [{}, {}]",
                    seg.t0, seg.t1
                ));
            }
        }
    }
    Ok(())
}

/// `C_t = (t, t^2, t^3)`.
pub fn cubic_point(t: &Scalar) -> Vec<Scalar> {
    let t2 = t * t;
    let t3 = &t2 * t;
    vec![t.clone(), t2, t3]
}

fn check_harp(p: &PlPath, chords: &[(Scalar, Scalar)]) -> std::result::Result<(), String> {
    if p.ambient().dim() != 3 {
        return Err("the harp lives in euclidean(3)".into());
    }
    if p.is_constant() {
        return Ok(());
    }
    for (a, b) in chords {
        if chord_positions(p, a, b).is_some_and(|ls| ls.windows(2).all(|w| w[0] <= w[1])) {
            return Ok(());
        }
    }
    Err("non-constant path is not a directed path inside one chord".into())
}

/// Chord parameters `lambda` in `[0,1]` of the path vertices, when every
/// vertex lies on the segment `[C_a, C_b]`.
fn chord_positions(p: &PlPath, a: &Scalar, b: &Scalar) -> Option<Vec<Scalar>> {
    let ca = cubic_point(a);
    let cb = cubic_point(b);
    let d: Vec<Scalar> = cb.iter().zip(&ca).map(|(x, y)| x - y).collect();
    let mut out = Vec::new();
    for lift in p.lifts() {
        let lambda = (&lift[0] - &ca[0]) / &d[0];
        if lambda.is_negative() || lambda > Scalar::one() {
            return None;
        }
        if (1..3).any(|i| lift[i] != &ca[i] + &(&lambda * &d[i])) {
            return None;
        }
        out.push(lambda);
    }
    Some(out)
}

fn check_glue(p: &PlPath, legs: &[PathPredicate]) -> std::result::Result<(), String> {
    let breaks = p.breaks();
    let k = breaks.len();
    let mut reach = vec![false; k];
    reach[0] = true;
    for i in 0..k - 1 {
        if !reach[i] {
            continue;
        }
        for j in i + 1..k {
            if reach[j] {
                continue;
            }
            let Ok(piece) = p.restrict(&breaks[i], &breaks[j]) else {
                continue;
            };
            if legs.iter().any(|l| l.accepts(&piece)) {
                reach[j] = true;
            }
        }
    }
    if reach[k - 1] {
        Ok(())
    } else {
        let stuck = (0..k).rev().find(|&i| reach[i]).unwrap_or(0);
        Err(format!(
            "no leg accepts any piece starting at t={}",
            breaks[stuck]
        ))
    }
}

impl fmt::Display for PathPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathPredicate::Any => f.write_str("any"),
            PathPredicate::Constant => f.write_str("constant"),
            PathPredicate::Nondecreasing => f.write_str("nondecreasing"),
            PathPredicate::Along {
                axis,
                monotone,
                rational_level,
            } => write!(f, "along({axis}, {monotone}, {rational_level})"),
            PathPredicate::PiecewiseAxis { monotone } => write!(f, "piecewise_axis({monotone})"),
            PathPredicate::RationalSlope => f.write_str("rational_slope"),
            PathPredicate::AvoidZero => f.write_str("avoid_zero"),
            PathPredicate::HalfLine => f.write_str("half_line"),
            PathPredicate::Harp { chords } => {
                f.write_str("harp(")?;
                for (i, (a, b)) in chords.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "chord({a}, {b})")?;
                }
                f.write_str(")")
            }
            PathPredicate::Reversed { inner } => write!(f, "rev({inner})"),
            PathPredicate::Product { split, left, right } => {
                write!(f, "product({split}, {left}, {right})")
            }
            PathPredicate::Glue { legs } => {
                f.write_str("glue(")?;
                for (i, l) in legs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{l}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn poly(amb: &Ambient, pts: &[(i64, i64)]) -> PlPath {
        PlPath::polyline(amb, pts.iter().map(|&(x, y)| vec![q(x, 1), q(y, 1)]).collect()).unwrap()
    }

    #[test]
    fn horizontal_with_rational_level() {
        let plane = Ambient::euclidean(2);
        let pred = PathPredicate::Along {
            axis: 0,
            monotone: false,
            rational_level: true,
        };
        let h = PlPath::segment(&plane, vec![q(0, 1), q(1, 3)], vec![q(1, 1), q(1, 3)]).unwrap();
        assert!(pred.accepts(&h));
        let s2 = PlPath::segment(&plane, vec![q(0, 1), Scalar::sqrt2()], vec![q(1, 1), Scalar::sqrt2()]).unwrap();
        assert!(pred.check(&s2).unwrap_err().contains("not rational"));
        let r2 = vec![Scalar::sqrt2(), Scalar::sqrt2()];
        assert!(pred.accepts(&PlPath::constant(&plane, r2).unwrap()));
        assert!(!pred.accepts(&poly(&plane, &[(0, 0), (0, 1)])));
    }

    #[test]
    fn piecewise_axis_and_glue_agree_on_staircases() {
        let plane = Ambient::euclidean(2);
        let stair = poly(&plane, &[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let diag = poly(&plane, &[(0, 0), (1, 1)]);
        let pw = PathPredicate::PiecewiseAxis { monotone: false };
        let glue = PathPredicate::Glue {
            legs: vec![
                PathPredicate::Constant,
                PathPredicate::Along { axis: 0, monotone: false, rational_level: false },
                PathPredicate::Along { axis: 1, monotone: false, rational_level: false },
            ],
        };
        for (p, expected) in [(&stair, true), (&diag, false)] {
            assert_eq!(pw.accepts(p), expected);
            assert_eq!(glue.accepts(p), expected);
        }
        assert!(!PathPredicate::PiecewiseAxis { monotone: true }.accepts(&stair));
    }

    #[test]
    fn rational_slopes() {
        let plane = Ambient::euclidean(2);
        let pred = PathPredicate::RationalSlope;
        assert!(pred.accepts(&poly(&plane, &[(0, 0), (2, 1), (3, -4)])));
        assert!(!pred.accepts(&poly(&plane, &[(0, 0), (0, 1)])));
        let irr = PlPath::segment(&plane, vec![q(0, 1), q(0, 1)], vec![q(1, 1), Scalar::sqrt2()]).unwrap();
        assert!(!pred.accepts(&irr));
    }

    #[test]
    fn line_predicates() {
        let line = Ambient::euclidean(1);
        let seg = |a: i64, b: i64| PlPath::segment(&line, vec![q(a, 1)], vec![q(b, 1)]).unwrap();
        let neg = seg(-1, 0);
        let pos = seg(0, 1);
        let both = neg.concat(&pos).unwrap();
        assert!(PathPredicate::HalfLine.accepts(&neg));
        assert!(PathPredicate::HalfLine.accepts(&pos));
        assert!(!PathPredicate::HalfLine.accepts(&both));
        assert!(!PathPredicate::AvoidZero.accepts(&neg));
        assert!(PathPredicate::AvoidZero.accepts(&seg(1, 2)));
        assert!(PathPredicate::AvoidZero.accepts(&PlPath::constant(&line, vec![q(0, 1)]).unwrap()));
    }

    #[test]
    fn reversal_and_products() {
        let line = Ambient::euclidean(1);
        let up = PlPath::segment(&line, vec![q(0, 1)], vec![q(1, 1)]).unwrap();
        let rev = PathPredicate::Nondecreasing.reversed();
        assert!(!rev.accepts(&up));
        assert!(rev.accepts(&up.reversed()));
        assert_eq!(rev.reversed(), PathPredicate::Nondecreasing);

        let square = PathPredicate::Product {
            split: 1,
            left: Box::new(PathPredicate::Nondecreasing),
            right: Box::new(PathPredicate::Nondecreasing),
        };
        let plane = Ambient::euclidean(2);
        assert!(square.accepts(&poly(&plane, &[(0, 0), (1, 0), (1, 1)])));
        assert!(square.check(&poly(&plane, &[(0, 1), (1, 0)])).unwrap_err().starts_with("second"));
    }

    #[test]
    fn harp_chords() {
        let space = Ambient::euclidean(3);
        let (a, b) = (q(0, 1), Scalar::sqrt2());
        let pred = PathPredicate::Harp { chords: vec![(a.clone(), b.clone())] };
        let ca = cubic_point(&a);
        let cb = cubic_point(&b);
        let forward = PlPath::segment(&space, ca.clone(), cb.clone()).unwrap();
        assert!(pred.accepts(&forward));
        assert!(!pred.accepts(&forward.reversed()));
        let along_curve = PlPath::segment(&space, cubic_point(&q(0, 1)), cubic_point(&q(1, 1))).unwrap();
        assert!(!pred.accepts(&along_curve));
    }
}
