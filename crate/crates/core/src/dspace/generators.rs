use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dfun::{is_monotone_along, AffineForm, Cell, TestFunction};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::plgeom::{Ambient, Axis, AxisBox, OpenSet, PlPath};
use crate::verdict::Verdict;

/// Default number of enumerated test functions per check.
pub const DEFAULT_BUDGET: usize = 4096;

/// A parametric family of test functions. Concrete members are produced
/// around a finite set of points (usually the vertices of a path).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "schema", rename_all = "snake_case")]
pub enum Schema {
    /// On euclidean ambients the thresholds `clamp(a . x - c)`; with a
    /// circle axis the chart functions `clamp(a . (x - z) + 1/2)` on boxes of
    /// half-width 1/4 around `z`.
    Affine { coeffs: Vec<Scalar> },
    /// The constant 1/2 on (a cover of) the whole ambient.
    Const,
    /// `1 - f` for every member `f` of the inner schema.
    Reversed { inner: Box<Schema> },
}

impl Schema {
    pub fn affine(coeffs: &[i64]) -> Schema {
        Schema::Affine {
            coeffs: coeffs.iter().map(|&c| Scalar::int(c)).collect(),
        }
    }

    pub fn reversed(self) -> Schema {
        match self {
            Schema::Reversed { inner } => *inner,
            Schema::Const => Schema::Const,
            other => Schema::Reversed {
                inner: Box::new(other),
            },
        }
    }

    /// The pullback along a projection that drops `before` leading and
    /// `after` trailing coordinates.
    pub fn padded(&self, before: usize, after: usize) -> Schema {
        match self {
            Schema::Affine { coeffs } => {
                let mut c = vec![Scalar::zero(); before];
                c.extend(coeffs.iter().cloned());
                c.extend(std::iter::repeat_n(Scalar::zero(), after));
                Schema::Affine { coeffs: c }
            }
            Schema::Const => Schema::Const,
            Schema::Reversed { inner } => Schema::Reversed {
                inner: Box::new(inner.padded(before, after)),
            },
        }
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        match self {
            Schema::Affine { coeffs } if coeffs.len() != dim => Err(Error::InvalidFunction(format!(
                "schema {self} has {} coefficients, ambient has dimension {dim}",
                coeffs.len()
            ))),
            Schema::Reversed { inner } => inner.check_dim(dim),
            _ => Ok(()),
        }
    }

    fn members(&self, ambient: &Ambient, points: &[Vec<Scalar>]) -> Vec<TestFunction> {
        match self {
            Schema::Affine { coeffs } => {
                if coeffs.iter().all(Scalar::is_zero) {
                    Vec::new()
                } else if ambient.has_periodic() {
                    charts(ambient, coeffs, points)
                } else {
                    thresholds(ambient, coeffs, points)
                }
            }
            Schema::Const => vec![constant_half(ambient, points)],
            Schema::Reversed { inner } => inner
                .members(ambient, points)
                .iter()
                .map(TestFunction::reversed)
                .collect(),
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schema::Affine { coeffs } => write!(f, "affine({})", join(coeffs)),
            Schema::Const => f.write_str("const"),
            Schema::Reversed { inner } => write!(f, "rev({inner})"),
        }
    }
}

fn join(xs: &[Scalar]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Bounding box of the points, padded by 1 on every axis.
fn padded_bounds(points: &[Vec<Scalar>], dim: usize) -> (Vec<Scalar>, Vec<Scalar>) {
    let mut lo: Vec<Scalar> = vec![Scalar::zero(); dim];
    let mut hi: Vec<Scalar> = vec![Scalar::zero(); dim];
    for i in 0..dim {
        let mut vals = points.iter().map(|p| &p[i]);
        if let Some(first) = vals.next() {
            let (mut a, mut b) = (first.clone(), first.clone());
            for v in vals {
                a = a.min(v.clone());
                b = b.max(v.clone());
            }
            lo[i] = a;
            hi[i] = b;
        }
        lo[i] = &lo[i] - &Scalar::one();
        hi[i] = &hi[i] + &Scalar::one();
    }
    (lo, hi)
}

fn dot(a: &[Scalar], x: &[Scalar]) -> Scalar {
    a.iter().zip(x).map(|(c, v)| c * v).sum()
}

fn thresholds(ambient: &Ambient, coeffs: &[Scalar], points: &[Vec<Scalar>]) -> Vec<TestFunction> {
    let (lo, hi) = padded_bounds(points, ambient.dim());
    let domain = OpenSet {
        ambient: ambient.clone(),
        boxes: vec![AxisBox { lo, hi }],
    };
    let mut levels: Vec<Scalar> = points.iter().map(|p| dot(coeffs, p)).collect();
    levels.sort();
    levels.dedup();
    let mids: Vec<Scalar> = levels.windows(2).map(|w| w[0].midpoint(&w[1])).collect();
    levels.extend(mids);
    levels.sort();
    levels
        .into_iter()
        .map(|c| {
            let label = format!("threshold({}) c={c}", join(coeffs));
            TestFunction::affine(label, domain.clone(), AffineForm::new(coeffs.to_vec(), -c), true)
                .with_global(true)
        })
        .collect()
}

fn charts(ambient: &Ambient, coeffs: &[Scalar], points: &[Vec<Scalar>]) -> Vec<TestFunction> {
    let (lo, hi) = padded_bounds(points, ambient.dim());
    let quarter = Scalar::ratio(1, 4);
    let half = Scalar::ratio(1, 2);
    let mut centers: Vec<Vec<Scalar>> = Vec::new();
    let mids = points.windows(2).map(|w| {
        w[0].iter().zip(&w[1]).map(|(a, b)| a.midpoint(b)).collect::<Vec<_>>()
    });
    for c in points.iter().cloned().chain(mids) {
        let z = ambient.canonical(&c);
        if !centers.contains(&z) {
            centers.push(z);
        }
    }
    centers
        .into_iter()
        .map(|z| {
            let mut blo = lo.clone();
            let mut bhi = hi.clone();
            for i in 0..ambient.dim() {
                if ambient.is_periodic(i) {
                    blo[i] = &z[i] - &quarter;
                    bhi[i] = &z[i] + &quarter;
                }
            }
            let domain = OpenSet {
                ambient: ambient.clone(),
                boxes: vec![AxisBox { lo: blo, hi: bhi }],
            };
            let label = format!("chart({}) at ({})", join(coeffs), join(&z));
            let form = AffineForm::new(coeffs.to_vec(), &half - &dot(coeffs, &z));
            TestFunction::affine(label, domain, form, true)
        })
        .collect()
}

fn constant_half(ambient: &Ambient, points: &[Vec<Scalar>]) -> TestFunction {
    let (lo, hi) = padded_bounds(points, ambient.dim());
    let mut boxes = vec![AxisBox {
        lo: Vec::new(),
        hi: Vec::new(),
    }];
    for (i, axis) in ambient.axes().iter().enumerate() {
        let sides: Vec<(Scalar, Scalar)> = match axis {
            Axis::Line => vec![(lo[i].clone(), hi[i].clone())],
            Axis::Circle => vec![
                (Scalar::ratio(-1, 4), Scalar::ratio(1, 2)),
                (Scalar::ratio(1, 4), Scalar::one()),
            ],
        };
        boxes = boxes
            .into_iter()
            .flat_map(|b| {
                sides.iter().map(move |(l, h)| {
                    let mut nb = b.clone();
                    nb.lo.push(l.clone());
                    nb.hi.push(h.clone());
                    nb
                })
            })
            .collect();
    }
    let cells = boxes
        .iter()
        .map(|b| Cell {
            region: b.clone(),
            form: AffineForm::constant(ambient.dim(), Scalar::ratio(1, 2)),
        })
        .collect();
    TestFunction {
        label: "const 1/2".into(),
        domain: OpenSet {
            ambient: ambient.clone(),
            boxes,
        },
        cells,
        clamp: true,
        global: true,
    }
}

/// Which generators a weak-directedness test may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// All local sections.
    Local,
    /// Only restrictions of functions defined on the whole ambient.
    GlobalOnly,
}

/// A declared generating family for the sheaf of directed functions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorFamily {
    pub schemas: Vec<Schema>,
    /// The members decide weak directedness exactly.
    pub complete: bool,
    /// The global members decide global-only weak directedness exactly.
    #[serde(default)]
    pub global_complete: bool,
}

/// Concrete members produced for one check.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub functions: Vec<TestFunction>,
    pub truncated: bool,
}

impl GeneratorFamily {
    pub fn new(schemas: Vec<Schema>, complete: bool) -> Self {
        GeneratorFamily {
            schemas,
            complete,
            global_complete: false,
        }
    }

    pub fn validate_for(&self, ambient: &Ambient) -> Result<()> {
        self.schemas.iter().try_for_each(|s| s.check_dim(ambient.dim()))
    }

    /// Members relevant to the given points, deterministic in their order,
    /// cut off after `budget` functions.
    pub fn enumerate(
        &self,
        ambient: &Ambient,
        points: &[Vec<Scalar>],
        budget: usize,
        scope: Scope,
    ) -> Enumeration {
        let mut functions = Vec::new();
        let mut truncated = false;
        for schema in &self.schemas {
            for f in schema.members(ambient, points) {
                if scope == Scope::GlobalOnly && !f.global {
                    continue;
                }
                if functions.len() == budget {
                    truncated = true;
                    break;
                }
                functions.push(f);
            }
        }
        Enumeration {
            functions,
            truncated,
        }
    }

    pub fn enumerate_for_path(&self, p: &PlPath, budget: usize, scope: Scope) -> Enumeration {
        self.enumerate(p.ambient(), p.lifts(), budget, scope)
    }

    fn exact_in(&self, scope: Scope) -> bool {
        match scope {
            Scope::Local => self.complete,
            Scope::GlobalOnly => self.global_complete,
        }
    }

    /// Tests every enumerated member (restricted to `region` when given)
    /// along `p`.
    pub fn check_path(
        &self,
        p: &PlPath,
        region: Option<&OpenSet>,
        budget: usize,
        scope: Scope,
    ) -> Result<Verdict> {
        self.validate_for(p.ambient())?;
        let en = self.enumerate_for_path(p, budget, scope);
        for f in &en.functions {
            let f = match region {
                Some(y) => match f.restricted(y) {
                    Some(g) => g,
                    None => continue,
                },
                None => f.clone(),
            };
            let v = is_monotone_along(&f, p)?;
            if v.is_fail() {
                return Ok(v);
            }
        }
        Ok(if self.exact_in(scope) && !en.truncated {
            Verdict::Holds
        } else {
            Verdict::NoViolationFound { budget }
        })
    }

    /// `{1 - f}`.
    pub fn reversed(&self) -> GeneratorFamily {
        GeneratorFamily {
            schemas: self.schemas.iter().cloned().map(Schema::reversed).collect(),
            ..self.clone()
        }
    }

    /// Pullback along a product projection.
    pub fn padded(&self, before: usize, after: usize) -> GeneratorFamily {
        GeneratorFamily {
            schemas: self.schemas.iter().map(|s| s.padded(before, after)).collect(),
            ..self.clone()
        }
    }
}

impl fmt::Display for GeneratorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.schemas.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Witness;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn thresholds_sit_at_vertex_levels_and_midpoints() {
        let plane = Ambient::euclidean(2);
        let p = PlPath::polyline(&plane, vec![vec![q(0, 1), q(0, 1)], vec![q(0, 1), q(1, 1)], vec![q(2, 1), q(1, 1)]])
            .unwrap();
        let fam = GeneratorFamily::new(vec![Schema::affine(&[0, 1])], true);
        let en = fam.enumerate_for_path(&p, DEFAULT_BUDGET, Scope::Local);
        let labels: Vec<String> = en.functions.iter().map(|f| f.label.clone()).collect();
        assert_eq!(
            labels,
            ["threshold(0, 1) c=0", "threshold(0, 1) c=1/2", "threshold(0, 1) c=1"]
        );
        assert!(en.functions.iter().all(|f| f.global));
    }

    #[test]
    fn budget_truncates() {
        let plane = Ambient::euclidean(2);
        let p = PlPath::segment(&plane, vec![q(0, 1), q(0, 1)], vec![q(1, 1), q(1, 1)]).unwrap();
        let fam = GeneratorFamily::new(vec![Schema::affine(&[1, 0]), Schema::affine(&[0, 1])], true);
        let en = fam.enumerate_for_path(&p, 2, Scope::Local);
        assert!(en.truncated);
        assert_eq!(fam.check_path(&p, None, 2, Scope::Local).unwrap(), Verdict::NoViolationFound { budget: 2 });
        assert!(fam.check_path(&p, None, DEFAULT_BUDGET, Scope::Local).unwrap().holds());
    }

    #[test]
    fn circle_charts_and_global_scope() {
        let circle = Ambient::torus(1);
        let fam = GeneratorFamily {
            schemas: vec![Schema::affine(&[1]), Schema::Const],
            complete: true,
            global_complete: true,
        };
        let forward = PlPath::segment(&circle, vec![q(0, 1)], vec![q(1, 1)]).unwrap();
        let backward = forward.reversed();
        assert!(fam.check_path(&forward, None, DEFAULT_BUDGET, Scope::Local).unwrap().holds());
        let v = fam.check_path(&backward, None, DEFAULT_BUDGET, Scope::Local).unwrap();
        assert!(matches!(v.witness(), Some(Witness::Generator { function, .. }) if function.label.starts_with("chart")));
        assert!(fam.check_path(&backward, None, DEFAULT_BUDGET, Scope::GlobalOnly).unwrap().holds());
    }

    #[test]
    fn constant_on_torus_covers_everything() {
        let torus = Ambient::torus(2);
        let f = constant_half(&torus, &[vec![q(0, 1), q(0, 1)]]);
        assert_eq!(f.domain.boxes.len(), 4);
        for x in [[q(0, 1), q(0, 1)], [q(3, 8), q(7, 8)], [q(-5, 2), q(1, 4)]] {
            assert_eq!(f.eval(&x), Some(q(1, 2)));
        }
    }

    #[test]
    fn padding_and_reversal() {
        let s = Schema::affine(&[1]).reversed();
        assert_eq!(s.to_string(), "rev(affine(1))");
        assert_eq!(s.padded(1, 1).to_string(), "rev(affine(0, 1, 0))");
        assert_eq!(s.reversed(), Schema::affine(&[1]));
    }
}
