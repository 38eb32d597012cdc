use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::plgeom::{Ambient, AxisBox, PlPath};

/// `x -> matrix . x + offset` on a closed box, or everywhere when `region`
/// is absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapCell {
    pub region: Option<AxisBox>,
    /// One row per target coordinate.
    pub matrix: Vec<Vec<Scalar>>,
    pub offset: Vec<Scalar>,
}

impl MapCell {
    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, b)| row.iter().zip(x).map(|(a, v)| a * v).sum::<Scalar>() + b)
            .collect()
    }
}

/// A continuous piecewise-affine map between ambients, acting on lifts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlMap {
    pub source: Ambient,
    pub target: Ambient,
    pub cells: Vec<MapCell>,
}

impl PlMap {
    pub fn new(source: Ambient, target: Ambient, cells: Vec<MapCell>) -> Result<PlMap> {
        if cells.is_empty() {
            return Err(Error::InvalidMap("no cells".into()));
        }
        for c in &cells {
            if c.matrix.len() != target.dim()
                || c.offset.len() != target.dim()
                || c.matrix.iter().any(|r| r.len() != source.dim())
            {
                return Err(Error::InvalidMap(format!(
                    "cell shape does not match {source} -> {target}"
                )));
            }
            if let Some(r) = &c.region {
                if r.dim() != source.dim() {
                    return Err(Error::InvalidMap("cell box has the wrong dimension".into()));
                }
            }
        }
        if cells.iter().any(|c| c.region.is_none()) && cells.len() > 1 {
            return Err(Error::InvalidMap("a global cell must be the only cell".into()));
        }
        if source.has_periodic() {
            if cells.len() > 1 || cells[0].region.is_some() {
                return Err(Error::InvalidMap("maps out of a torus must be a single global cell".into()));
            }
            for (j, row) in cells[0].matrix.iter().enumerate() {
                for (i, a) in row.iter().enumerate() {
                    if !source.is_periodic(i) || a.is_zero() {
                        continue;
                    }
                    if !target.is_periodic(j) || !a.is_rational() || !a.rat().is_integer() {
                        return Err(Error::InvalidMap(format!(
                            "entry ({j}, {i}) does not descend to the quotient"
                        )));
                    }
                }
            }
        }
        for (i, a) in cells.iter().enumerate() {
            for b in &cells[i + 1..] {
                let (Some(ra), Some(rb)) = (&a.region, &b.region) else {
                    continue;
                };
                if let Some((lo, hi)) = ra.closed_intersection(rb) {
                    let corners = face_corners(&lo, &hi);
                    if corners.iter().any(|x| a.apply(x) != b.apply(x)) {
                        return Err(Error::InvalidMap(format!(
                            "cells {ra} and {rb} disagree on their common face"
                        )));
                    }
                }
            }
        }
        Ok(PlMap {
            source,
            target,
            cells,
        })
    }

    pub fn affine(source: Ambient, target: Ambient, matrix: Vec<Vec<Scalar>>, offset: Vec<Scalar>) -> Result<PlMap> {
        PlMap::new(
            source,
            target,
            vec![MapCell {
                region: None,
                matrix,
                offset,
            }],
        )
    }

    pub fn identity(ambient: &Ambient) -> PlMap {
        let n = ambient.dim();
        let matrix = (0..n)
            .map(|j| (0..n).map(|i| Scalar::int((i == j) as i64)).collect())
            .collect();
        PlMap {
            source: ambient.clone(),
            target: ambient.clone(),
            cells: vec![MapCell {
                region: None,
                matrix,
                offset: vec![Scalar::zero(); n],
            }],
        }
    }

    /// The coordinate projection onto `range`.
    pub fn projection(ambient: &Ambient, range: std::ops::Range<usize>) -> PlMap {
        let n = ambient.dim();
        let matrix = range
            .clone()
            .map(|j| (0..n).map(|i| Scalar::int((i == j) as i64)).collect())
            .collect();
        PlMap {
            source: ambient.clone(),
            target: ambient.factor(range.clone()),
            cells: vec![MapCell {
                region: None,
                matrix,
                offset: vec![Scalar::zero(); range.len()],
            }],
        }
    }

    pub fn apply_point(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        self.cells
            .iter()
            .find(|c| c.region.as_ref().is_none_or(|r| r.contains_closed(x)))
            .map(|c| c.apply(x))
    }

    /// The image path `F o p`, exact: segments are cut where they cross a
    /// cell face.
    pub fn apply_path(&self, p: &PlPath) -> Result<PlPath> {
        self.source.check_same(p.ambient())?;
        if self.cells.len() == 1 && self.cells[0].region.is_none() {
            let lifts = p.lifts().iter().map(|l| self.cells[0].apply(l)).collect();
            return PlPath::new(self.target.clone(), p.breaks().to_vec(), lifts);
        }
        let mut breaks = vec![Scalar::zero()];
        let mut lifts = Vec::new();
        for seg in p.segments() {
            let mut cuts = vec![Scalar::zero(), Scalar::one()];
            for c in &self.cells {
                if let Some(s) = c.region.as_ref().and_then(|r| r.segment_params(seg.a, seg.b, true)) {
                    for v in [s.lo, s.hi] {
                        if v.is_positive() && v < Scalar::one() {
                            cuts.push(v);
                        }
                    }
                }
            }
            cuts.sort();
            cuts.dedup();
            for w in cuts.windows(2) {
                let mid = seg.lift_at_local(&w[0].midpoint(&w[1]));
                let cell = self
                    .cells
                    .iter()
                    .find(|c| c.region.as_ref().is_none_or(|r| r.contains_closed(&mid)))
                    .ok_or_else(|| {
                        Error::InvalidMap(format!("path leaves the map's domain near t={}", seg.to_path_param(&w[0])))
                    })?;
                if lifts.is_empty() {
                    lifts.push(cell.apply(&seg.lift_at_local(&w[0])));
                }
                lifts.push(cell.apply(&seg.lift_at_local(&w[1])));
                breaks.push(seg.to_path_param(&w[1]));
            }
        }
        PlPath::new(self.target.clone(), breaks, lifts)
    }
}

fn face_corners(lo: &[Scalar], hi: &[Scalar]) -> Vec<Vec<Scalar>> {
    let mut out = vec![Vec::new()];
    for i in 0..lo.len() {
        out = out
            .into_iter()
            .flat_map(|p| {
                let mut opts = vec![lo[i].clone()];
                if hi[i] != lo[i] {
                    opts.push(hi[i].clone());
                }
                opts.into_iter().map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn folding_map_splits_segments() {
        // |x| on the line, as two cells.
        let line = Ambient::euclidean(1);
        let fold = PlMap::new(
            line.clone(),
            line.clone(),
            vec![
                MapCell {
                    region: Some(AxisBox::new(vec![q(-10, 1)], vec![q(0, 1)]).unwrap()),
                    matrix: vec![vec![q(-1, 1)]],
                    offset: vec![q(0, 1)],
                },
                MapCell {
                    region: Some(AxisBox::new(vec![q(0, 1)], vec![q(10, 1)]).unwrap()),
                    matrix: vec![vec![q(1, 1)]],
                    offset: vec![q(0, 1)],
                },
            ],
        )
        .unwrap();
        let p = PlPath::segment(&line, vec![q(-1, 1)], vec![q(3, 1)]).unwrap();
        let img = fold.apply_path(&p).unwrap();
        assert_eq!(img.breaks(), &[q(0, 1), q(1, 4), q(1, 1)]);
        assert_eq!(img.lifts(), &[vec![q(1, 1)], vec![q(0, 1)], vec![q(3, 1)]]);
    }

    #[test]
    fn discontinuous_cells_are_rejected() {
        let line = Ambient::euclidean(1);
        let bad = PlMap::new(
            line.clone(),
            line,
            vec![
                MapCell {
                    region: Some(AxisBox::new(vec![q(-1, 1)], vec![q(0, 1)]).unwrap()),
                    matrix: vec![vec![q(1, 1)]],
                    offset: vec![q(0, 1)],
                },
                MapCell {
                    region: Some(AxisBox::new(vec![q(0, 1)], vec![q(1, 1)]).unwrap()),
                    matrix: vec![vec![q(1, 1)]],
                    offset: vec![q(1, 1)],
                },
            ],
        );
        assert!(matches!(bad, Err(Error::InvalidMap(_))));
    }

    #[test]
    fn torus_maps_must_descend() {
        let t = Ambient::torus(1);
        assert!(PlMap::affine(t.clone(), t.clone(), vec![vec![q(1, 2)]], vec![q(0, 1)]).is_err());
        assert!(PlMap::affine(t.clone(), t, vec![vec![q(-1, 1)]], vec![q(1, 3)]).is_ok());
    }
}
