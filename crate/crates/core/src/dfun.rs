//! Test functions: piecewise-affine maps from open sets to `[0,1]`, the
//! computable stand-ins for local directed functions, and the local
//! monotonicity test of their composites with paths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::plgeom::{Ambient, AxisBox, Interval, IntervalUnion, OpenSet, PlPath};
use crate::verdict::{Verdict, Witness};

/// `coeffs . x + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineForm {
    pub coeffs: Vec<Scalar>,
    pub constant: Scalar,
}

impl AffineForm {
    pub fn new(coeffs: Vec<Scalar>, constant: Scalar) -> Self {
        AffineForm { coeffs, constant }
    }

    pub fn constant(dim: usize, value: Scalar) -> Self {
        AffineForm::new(vec![Scalar::zero(); dim], value)
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        self.coeffs.iter().zip(x).map(|(c, v)| c * v).sum::<Scalar>() + &self.constant
    }

    /// `1 - self`.
    pub fn complement(&self) -> AffineForm {
        AffineForm {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            constant: Scalar::one() - &self.constant,
        }
    }

    fn linear_part(&self, d: &[Scalar]) -> Scalar {
        self.coeffs.iter().zip(d).map(|(c, v)| c * v).sum()
    }
}

/// A closed box carrying one affine form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub region: AxisBox,
    pub form: AffineForm,
}

/// A continuous map from `domain` to `[0,1]` (after clamping when `clamp` is
/// set), affine on each cell. On circle axes domain boxes and cells share
/// the same chart coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub label: String,
    pub domain: OpenSet,
    pub cells: Vec<Cell>,
    pub clamp: bool,
    /// Restriction of a function defined on the whole ambient.
    #[serde(default)]
    pub global: bool,
}

impl TestFunction {
    /// Validates that the cells cover the domain and agree on shared faces.
    pub fn new(
        label: impl Into<String>,
        domain: OpenSet,
        cells: Vec<Cell>,
        clamp: bool,
    ) -> Result<TestFunction> {
        let f = TestFunction {
            label: label.into(),
            domain,
            cells,
            clamp,
            global: false,
        };
        f.validate()?;
        Ok(f)
    }

    /// One affine form on the whole domain.
    pub fn affine(
        label: impl Into<String>,
        domain: OpenSet,
        form: AffineForm,
        clamp: bool,
    ) -> TestFunction {
        let cells = domain
            .boxes
            .iter()
            .map(|b| Cell {
                region: b.clone(),
                form: form.clone(),
            })
            .collect();
        TestFunction {
            label: label.into(),
            domain,
            cells,
            clamp,
            global: false,
        }
    }

    pub fn with_global(mut self, global: bool) -> TestFunction {
        self.global = global;
        self
    }

    pub fn ambient(&self) -> &Ambient {
        &self.domain.ambient
    }

    fn validate(&self) -> Result<()> {
        let dim = self.ambient().dim();
        if self.domain.boxes.is_empty() {
            return Err(Error::InvalidFunction("empty domain".into()));
        }
        for c in &self.cells {
            if c.region.dim() != dim || c.form.coeffs.len() != dim {
                return Err(Error::InvalidFunction(format!(
                    "cell {} has the wrong dimension",
                    c.region
                )));
            }
        }
        for (i, a) in self.cells.iter().enumerate() {
            for b in &self.cells[i + 1..] {
                if let Some((lo, hi)) = a.region.closed_intersection(&b.region) {
                    if !forms_agree_on(&a.form, &b.form, &lo, &hi) {
                        return Err(Error::InvalidFunction(format!(
                            "cells {} and {} disagree on their common face",
                            a.region, b.region
                        )));
                    }
                }
            }
        }
        self.check_coverage()
    }

    /// Exact coverage test on the grid spanned by all box and cell faces.
    fn check_coverage(&self) -> Result<()> {
        let dim = self.ambient().dim();
        for bx in &self.domain.boxes {
            let mut cuts: Vec<Vec<Scalar>> = (0..dim)
                .map(|i| vec![bx.lo[i].clone(), bx.hi[i].clone()])
                .collect();
            for c in &self.cells {
                for (i, cut) in cuts.iter_mut().enumerate() {
                    for v in [&c.region.lo[i], &c.region.hi[i]] {
                        if bx.lo[i] < *v && *v < bx.hi[i] {
                            cut.push(v.clone());
                        }
                    }
                }
            }
            for cut in &mut cuts {
                cut.sort();
                cut.dedup();
            }
            let mut index = vec![0usize; dim];
            'cells: loop {
                let center: Vec<Scalar> = (0..dim)
                    .map(|i| cuts[i][index[i]].midpoint(&cuts[i][index[i] + 1]))
                    .collect();
                if !self.cells.iter().any(|c| c.region.contains_closed(&center)) {
                    return Err(Error::InvalidFunction(format!(
                        "cells do not cover the domain near {center:?}"
                    )));
                }
                let mut axis = 0;
                loop {
                    if axis == dim {
                        break 'cells;
                    }
                    index[axis] += 1;
                    if index[axis] + 1 < cuts[axis].len() {
                        break;
                    }
                    index[axis] = 0;
                    axis += 1;
                }
            }
        }
        Ok(())
    }

    /// Value at a point given by any lift; `None` outside the domain.
    pub fn eval(&self, x: &[Scalar]) -> Option<Scalar> {
        let ambient = self.ambient();
        for bx in &self.domain.boxes {
            let Some(shift) = crate::plgeom::point_shift(ambient, bx, x) else {
                continue;
            };
            let y: Vec<Scalar> = x.iter().zip(&shift).map(|(a, k)| a + k).collect();
            if let Some(cell) = self.cells.iter().find(|c| c.region.contains_closed(&y)) {
                return Some(self.finish(cell.form.eval(&y)));
            }
        }
        None
    }

    fn finish(&self, v: Scalar) -> Scalar {
        if self.clamp {
            v.max(Scalar::zero()).min(Scalar::one())
        } else {
            v
        }
    }

    /// `1 - f` on the same domain.
    pub fn reversed(&self) -> TestFunction {
        TestFunction {
            label: format!("1-{}", self.label),
            domain: self.domain.clone(),
            cells: self
                .cells
                .iter()
                .map(|c| Cell {
                    region: c.region.clone(),
                    form: c.form.complement(),
                })
                .collect(),
            clamp: self.clamp,
            global: self.global,
        }
    }

    /// The restriction to `domain ∩ region`, or `None` when that is empty.
    pub fn restricted(&self, region: &OpenSet) -> Option<TestFunction> {
        let domain = self.domain.intersect(region);
        if domain.boxes.is_empty() {
            return None;
        }
        Some(TestFunction {
            label: format!("{}|Y", self.label),
            domain,
            cells: self.cells.clone(),
            clamp: self.clamp,
            global: false,
        })
    }
}

fn forms_agree_on(a: &AffineForm, b: &AffineForm, lo: &[Scalar], hi: &[Scalar]) -> bool {
    (0..lo.len()).all(|i| lo[i] == hi[i] || a.coeffs[i] == b.coeffs[i]) && a.eval(lo) == b.eval(lo)
}

/// One affine piece `slope * t + intercept` of a composite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub span: Interval,
    pub slope: Scalar,
    pub intercept: Scalar,
}

impl Piece {
    pub fn value(&self, t: &Scalar) -> Scalar {
        &self.slope * t + &self.intercept
    }
}

/// A function on an open subset of `[0,1]`, affine on each piece and
/// continuous on each connected component of its domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseScalarFn {
    pub domain: IntervalUnion,
    pub pieces: Vec<Piece>,
}

impl PiecewiseScalarFn {
    pub fn value(&self, t: &Scalar) -> Option<Scalar> {
        if !self.domain.contains(t) {
            return None;
        }
        self.pieces
            .iter()
            .find(|p| p.span.contains(t))
            .map(|p| p.value(t))
    }
}

/// The composite `f o p` on `p^-1(domain f)`, subdivided at every crossing
/// of a cell face and of the clamp levels.
pub fn compose(f: &TestFunction, p: &PlPath) -> Result<PiecewiseScalarFn> {
    f.ambient().check_same(p.ambient())?;
    let domain = p.preimage(&f.domain);
    let mut pieces = Vec::new();
    for seg in p.segments() {
        let dt = seg.t1 - seg.t0;
        let d = seg.delta();
        for bx in &f.domain.boxes {
            for (inside, shift) in p.segment_box_pieces_shifted(&seg, bx, false) {
                let a: Vec<Scalar> = seg.a.iter().zip(&shift).map(|(x, k)| x + k).collect();
                let b: Vec<Scalar> = seg.b.iter().zip(&shift).map(|(x, k)| x + k).collect();
                for cell in &f.cells {
                    let Some(s_span) = cell.region.segment_params(&a, &b, true) else {
                        continue;
                    };
                    let Some(span) = s_span.affine_image(seg.t0, &dt).intersect(&inside) else {
                        continue;
                    };
                    if !span.has_length() {
                        continue;
                    }
                    let slope = cell.form.linear_part(&d) / &dt;
                    let intercept = cell.form.eval(&a) - &slope * seg.t0;
                    push_clamped(&mut pieces, span, slope, intercept, f.clamp);
                }
            }
        }
    }
    Ok(PiecewiseScalarFn { domain, pieces })
}

fn push_clamped(out: &mut Vec<Piece>, span: Interval, slope: Scalar, intercept: Scalar, clamp: bool) {
    if !clamp {
        out.push(Piece {
            span,
            slope,
            intercept,
        });
        return;
    }
    let mut cuts = vec![span.lo.clone(), span.hi.clone()];
    if !slope.is_zero() {
        for level in [Scalar::zero(), Scalar::one()] {
            let t = (&level - &intercept) / &slope;
            if span.lo < t && t < span.hi {
                cuts.push(t);
            }
        }
    }
    cuts.sort();
    for w in cuts.windows(2) {
        let sub = Interval::closed(w[0].clone(), w[1].clone());
        let mid = &slope * &sub.midpoint() + &intercept;
        let (s, c) = if mid < Scalar::zero() {
            (Scalar::zero(), Scalar::zero())
        } else if mid > Scalar::one() {
            (Scalar::zero(), Scalar::one())
        } else {
            (slope.clone(), intercept.clone())
        };
        out.push(Piece {
            span: sub,
            slope: s,
            intercept: c,
        });
    }
}

/// Non-decreasing on every connected component of the domain. No order is
/// required between different components.
pub fn is_locally_nondecreasing(g: &PiecewiseScalarFn) -> Verdict {
    for p in &g.pieces {
        if p.span.has_length() && p.slope.is_negative() {
            let (t1, t2) = p.span.interior_pair();
            return Verdict::fails(Witness::Decrease {
                v1: p.value(&t1),
                v2: p.value(&t2),
                t1,
                t2,
            });
        }
    }
    Verdict::Holds
}

/// Whether `f o p` is locally non-decreasing; a failure names `f`.
pub fn is_monotone_along(f: &TestFunction, p: &PlPath) -> Result<Verdict> {
    let g = compose(f, p)?;
    Ok(match is_locally_nondecreasing(&g) {
        Verdict::Fails { witness } => match *witness {
            Witness::Decrease { t1, t2, v1, v2 } => Verdict::fails(Witness::Generator {
                function: f.clone(),
                t1,
                t2,
                v1,
                v2,
            }),
            other => Verdict::fails(other),
        },
        v => v,
    })
}

/// `1 - f`.
pub fn reverse_function(f: &TestFunction) -> TestFunction {
    f.reversed()
}

/// Re-checks a generator witness against the path by direct evaluation.
pub fn witness_is_genuine(
    f: &TestFunction,
    p: &PlPath,
    t1: &Scalar,
    t2: &Scalar,
) -> bool {
    if t1 >= t2 {
        return false;
    }
    let pre = p.preimage(&f.domain);
    let (Some(c1), Some(c2)) = (pre.component_of(t1), pre.component_of(t2)) else {
        return false;
    };
    let value = |t: &Scalar| p.lift_at(t).ok().and_then(|x| f.eval(&x));
    match (value(t1), value(t2)) {
        (Some(v1), Some(v2)) => c1 == c2 && v1 > v2,
        _ => false,
    }
}
