//! Constructions on presented spaces: products, gluing along a common
//! ambient, cylinders, reversors, and directedness of bi-parameter maps.

use serde::{Deserialize, Serialize};

use crate::dfun::{witness_is_genuine, TestFunction};
use crate::dspace::{
    path_is_directed, DSpace, GeneratorFamily, PathPredicate, Presentation, Schema, Scope,
};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::plgeom::{Ambient, PlPath};
use crate::verdict::{Direction, Verdict, Witness};

/// The directed interval: the line with non-decreasing paths.
pub fn directed_interval() -> DSpace {
    DSpace::predicate_presented("interval", Ambient::euclidean(1), PathPredicate::Nondecreasing)
        .and_then(|x| x.with_generators(GeneratorFamily::new(vec![Schema::affine(&[1])], true)))
        .and_then(|x| x.with_oracle(PathPredicate::Nondecreasing))
        .expect("static presentation")
        .declared_saturated(true)
}

/// A one-point space, modelled by the line with constant paths only.
pub fn point() -> DSpace {
    DSpace::predicate_presented("point", Ambient::euclidean(1), PathPredicate::Constant)
        .and_then(|x| {
            x.with_generators(GeneratorFamily::new(
                vec![Schema::affine(&[1]), Schema::affine(&[1]).reversed()],
                true,
            ))
        })
        .and_then(|x| x.with_oracle(PathPredicate::Constant))
        .expect("static presentation")
        .declared_saturated(true)
}

/// `X x Y`: a path is directed iff both projections are. Generators are the
/// pullbacks of the factors' generators along the projections.
pub fn product(x: &DSpace, y: &DSpace) -> Result<DSpace> {
    if x.region.is_some() || y.region.is_some() {
        return Err(Error::Unsupported("products of restricted spaces".into()));
    }
    let ambient = x.ambient.product(&y.ambient);
    let (nx, ny) = (x.ambient.dim(), y.ambient.dim());
    let pair = |a: &Option<PathPredicate>, b: &Option<PathPredicate>| match (a, b) {
        (Some(a), Some(b)) => Some(PathPredicate::Product {
            split: nx,
            left: Box::new(a.clone()),
            right: Box::new(b.clone()),
        }),
        _ => None,
    };
    let both_predicates = x.presentation == Presentation::Predicate && y.presentation == Presentation::Predicate;
    let predicate = if both_predicates { pair(&x.predicate, &y.predicate) } else { None };
    let generators = match (&x.generators, &y.generators) {
        (Some(a), Some(b)) => {
            let mut schemas = a.padded(0, ny).schemas;
            schemas.extend(b.padded(nx, 0).schemas);
            Some(GeneratorFamily::new(
                schemas,
                a.complete && b.complete && x.saturated && y.saturated,
            ))
        }
        _ => None,
    };
    let presentation = match (&predicate, &generators) {
        (Some(_), _) => Presentation::Predicate,
        (None, Some(_)) => Presentation::Sheaf,
        (None, None) => {
            return Err(Error::Unsupported(format!(
                "product of {} and {} has neither a predicate nor generators",
                x.name, y.name
            )))
        }
    };
    let space = DSpace {
        name: format!("{} x {}", x.name, y.name),
        ambient,
        presentation,
        predicate,
        generators,
        oracle: pair(&x.oracle, &y.oracle),
        region: None,
        saturated: x.saturated && y.saturated,
    };
    space.validate()?;
    Ok(space)
}

/// `X x I` with the directed interval.
pub fn cylinder(x: &DSpace) -> Result<DSpace> {
    let mut c = product(x, &directed_interval())?;
    c.name = format!("cyl({})", x.name);
    Ok(c)
}

/// `RX`: reversed paths, generators `1 - f`.
pub fn reversor(x: &DSpace) -> Result<DSpace> {
    let name = match x.name.strip_prefix("R(").and_then(|n| n.strip_suffix(')')) {
        Some(inner) => inner.to_string(),
        None => format!("R({})", x.name),
    };
    let space = DSpace {
        name,
        predicate: x.predicate.clone().map(PathPredicate::reversed),
        generators: x.generators.as_ref().map(GeneratorFamily::reversed),
        oracle: x.oracle.clone().map(PathPredicate::reversed),
        ..x.clone()
    };
    space.validate()?;
    Ok(space)
}

/// The colimit of spaces sharing one ambient: finite concatenations of
/// paths directed in some leg. Its directed functions are those directed on
/// every leg; a generating family for them must be supplied.
pub fn glue(name: &str, legs: &[DSpace], generators: Option<GeneratorFamily>) -> Result<DSpace> {
    let first = legs
        .first()
        .ok_or_else(|| Error::Unsupported("gluing needs at least one leg".into()))?;
    let mut preds = Vec::with_capacity(legs.len());
    for leg in legs {
        first.ambient.check_same(&leg.ambient)?;
        if leg.presentation != Presentation::Predicate {
            return Err(Error::MissingPredicate(leg.name.clone()));
        }
        preds.push(
            leg.predicate
                .clone()
                .ok_or_else(|| Error::MissingPredicate(leg.name.clone()))?,
        );
    }
    let mut space = DSpace::predicate_presented(name, first.ambient.clone(), PathPredicate::Glue { legs: preds })?;
    if let Some(g) = generators {
        space = space.with_generators(g)?;
    }
    Ok(space)
}

/// The plane glued from its horizontal and vertical structures along the
/// constant one. Its directed functions are the locally constant ones.
pub fn glue_p1() -> DSpace {
    let plane = Ambient::euclidean(2);
    let leg = |name: &str, p: PathPredicate| DSpace::predicate_presented(name, plane.clone(), p).expect("leg");
    let legs = [
        leg("P0", PathPredicate::Constant),
        leg(
            "P'",
            PathPredicate::Along {
                axis: 0,
                monotone: false,
                rational_level: false,
            },
        ),
        leg(
            "P''",
            PathPredicate::Along {
                axis: 1,
                monotone: false,
                rational_level: false,
            },
        ),
    ];
    glue("P1", &legs, Some(GeneratorFamily::new(vec![Schema::Const], true)))
        .and_then(|x| x.with_oracle(PathPredicate::Any))
        .expect("static presentation")
}

/// A map `[0,1]^2 -> X`, affine on the two triangles of every grid cell
/// (split along the diagonal from `(s_i, t_j)` to `(s_i+1, t_j+1)`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiParamMap {
    pub ambient: Ambient,
    pub s: Vec<Scalar>,
    pub t: Vec<Scalar>,
    /// `values[j][i]` is the lift at `(s_i, t_j)`.
    pub values: Vec<Vec<Vec<Scalar>>>,
}

fn check_breaks(b: &[Scalar], what: &str) -> Result<()> {
    if b.len() < 2 || !b[0].is_zero() || b[b.len() - 1] != Scalar::one() || b.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidMap(format!(
            "{what} breakpoints must increase strictly from 0 to 1"
        )));
    }
    Ok(())
}

impl BiParamMap {
    pub fn new(ambient: Ambient, s: Vec<Scalar>, t: Vec<Scalar>, values: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        check_breaks(&s, "s")?;
        check_breaks(&t, "t")?;
        if values.len() != t.len() || values.iter().any(|row| row.len() != s.len()) {
            return Err(Error::InvalidMap(format!(
                "need {} rows of {} values",
                t.len(),
                s.len()
            )));
        }
        for row in &values {
            for v in row {
                ambient.check_coords(v)?;
            }
        }
        Ok(BiParamMap { ambient, s, t, values })
    }

    /// The constant map.
    pub fn constant(ambient: Ambient, at: Vec<Scalar>) -> Result<Self> {
        let (z, o) = (Scalar::zero(), Scalar::one());
        BiParamMap::new(ambient, vec![z.clone(), o.clone()], vec![z, o], vec![vec![at.clone(), at.clone()], vec![at.clone(), at]])
    }

    fn locate(breaks: &[Scalar], x: &Scalar) -> usize {
        (0..breaks.len() - 1)
            .find(|&i| *x <= breaks[i + 1])
            .unwrap_or(breaks.len() - 2)
    }

    /// Value at `(s, t)`.
    pub fn eval(&self, s: &Scalar, t: &Scalar) -> Vec<Scalar> {
        let i = Self::locate(&self.s, s);
        let j = Self::locate(&self.t, t);
        let (hs, ht, h0) = self.triangle_affine(i, j, self.is_lower(i, j, s, t));
        (0..self.ambient.dim())
            .map(|m| &h0[m] + &(&(s * &hs[m]) + &(t * &ht[m])))
            .collect()
    }

    fn is_lower(&self, i: usize, j: usize, s: &Scalar, t: &Scalar) -> bool {
        let u = (s - &self.s[i]) / (&self.s[i + 1] - &self.s[i]);
        let v = (t - &self.t[j]) / (&self.t[j + 1] - &self.t[j]);
        v <= u
    }

    /// `h(s,t) = h0 + s hs + t ht` on one triangle of cell `(i, j)`.
    fn triangle_affine(&self, i: usize, j: usize, lower: bool) -> (Vec<Scalar>, Vec<Scalar>, Vec<Scalar>) {
        let ds = &self.s[i + 1] - &self.s[i];
        let dt = &self.t[j + 1] - &self.t[j];
        let p00 = &self.values[j][i];
        let p10 = &self.values[j][i + 1];
        let p01 = &self.values[j + 1][i];
        let p11 = &self.values[j + 1][i + 1];
        let n = self.ambient.dim();
        let (hs, ht): (Vec<Scalar>, Vec<Scalar>) = if lower {
            (
                (0..n).map(|m| (&p10[m] - &p00[m]) / &ds).collect(),
                (0..n).map(|m| (&p11[m] - &p10[m]) / &dt).collect(),
            )
        } else {
            (
                (0..n).map(|m| (&p11[m] - &p01[m]) / &ds).collect(),
                (0..n).map(|m| (&p01[m] - &p00[m]) / &dt).collect(),
            )
        };
        let h0 = (0..n)
            .map(|m| &p00[m] - &(&(&self.s[i] * &hs[m]) + &(&self.t[j] * &ht[m])))
            .collect();
        (hs, ht, h0)
    }

    fn triangle_vertices(&self, i: usize, j: usize, lower: bool) -> [(Scalar, Scalar); 3] {
        let (s0, s1, t0, t1) = (&self.s[i], &self.s[i + 1], &self.t[j], &self.t[j + 1]);
        if lower {
            [(s0.clone(), t0.clone()), (s1.clone(), t0.clone()), (s1.clone(), t1.clone())]
        } else {
            [(s0.clone(), t0.clone()), (s1.clone(), t1.clone()), (s0.clone(), t1.clone())]
        }
    }

    /// The path `s -> h(s, t)`.
    pub fn slice_s(&self, t: &Scalar) -> Result<PlPath> {
        let j = Self::locate(&self.t, t);
        let frac = (t - &self.t[j]) / (&self.t[j + 1] - &self.t[j]);
        let mut params = self.s.clone();
        for i in 0..self.s.len() - 1 {
            params.push(&self.s[i] + &(&frac * &(&self.s[i + 1] - &self.s[i])));
        }
        params.sort();
        params.dedup();
        let lifts = params.iter().map(|s| self.eval(s, t)).collect();
        PlPath::new(self.ambient.clone(), params, lifts)
    }

    /// The path `t -> h(s, t)`.
    pub fn slice_t(&self, s: &Scalar) -> Result<PlPath> {
        let i = Self::locate(&self.s, s);
        let frac = (s - &self.s[i]) / (&self.s[i + 1] - &self.s[i]);
        let mut params = self.t.clone();
        for j in 0..self.t.len() - 1 {
            params.push(&self.t[j] + &(&frac * &(&self.t[j + 1] - &self.t[j])));
        }
        params.sort();
        params.dedup();
        let lifts = params.iter().map(|t| self.eval(s, t)).collect();
        PlPath::new(self.ambient.clone(), params, lifts)
    }

    fn lattice(&self) -> Vec<Vec<Scalar>> {
        self.values.iter().flatten().cloned().collect()
    }
}

type Pt = (Scalar, Scalar);

/// Keeps the part of a convex polygon where `a s + b t + c >= 0`.
fn clip(poly: Vec<Pt>, a: &Scalar, b: &Scalar, c: &Scalar) -> Vec<Pt> {
    let g = |p: &Pt| &(&(a * &p.0) + &(b * &p.1)) + c;
    let mut out = Vec::new();
    for k in 0..poly.len() {
        let p = &poly[k];
        let q = &poly[(k + 1) % poly.len()];
        let (gp, gq) = (g(p), g(q));
        if !gp.is_negative() {
            out.push(p.clone());
        }
        if (gp.is_negative() && gq.is_positive()) || (gp.is_positive() && gq.is_negative()) {
            let lambda = &gp / &(&gp - &gq);
            out.push((
                &p.0 + &(&lambda * &(&q.0 - &p.0)),
                &p.1 + &(&lambda * &(&q.1 - &p.1)),
            ));
        }
    }
    out
}

fn twice_area(poly: &[Pt]) -> Scalar {
    let mut acc = Scalar::zero();
    for k in 0..poly.len() {
        let p = &poly[k];
        let q = &poly[(k + 1) % poly.len()];
        acc += &(&p.0 * &q.1 - &q.0 * &p.1);
    }
    acc.abs()
}

/// Where the line `coord(dir) = fixed` crosses the convex polygon, as the
/// range of the other coordinate.
fn chord(poly: &[Pt], direction: Direction, fixed: &Scalar) -> (Scalar, Scalar) {
    // (varying coordinate, fixed coordinate)
    let along = |p: &Pt| match direction {
        Direction::S => (p.0.clone(), p.1.clone()),
        Direction::T => (p.1.clone(), p.0.clone()),
    };
    let mut hits: Vec<Scalar> = Vec::new();
    for k in 0..poly.len() {
        let (pa, pc) = along(&poly[k]);
        let (qa, qc) = along(&poly[(k + 1) % poly.len()]);
        let (dp, dq) = (&pc - fixed, &qc - fixed);
        if pc == qc {
            if dp.is_zero() {
                hits.push(pa);
                hits.push(qa);
            }
            continue;
        }
        if !(dp.is_positive() && dq.is_positive()) && !(dp.is_negative() && dq.is_negative()) {
            let lambda = &dp / &(&dp - &dq);
            hits.push(&pa + &(&lambda * &(&qa - &pa)));
        }
    }
    let lo = hits.iter().min().cloned().unwrap_or_default();
    let hi = hits.iter().max().cloned().unwrap_or_default();
    (lo, hi)
}

/// Whether `f o h` is locally non-decreasing in each parameter separately,
/// decided per grid triangle: the partial derivatives are constant there,
/// so a violation is a triangle with a negative partial derivative whose
/// part inside the domain (and strictly between the clamp levels) has
/// positive area.
pub fn biparam_is_directed(h: &BiParamMap, x: &DSpace, budget: usize) -> Result<Verdict> {
    x.ambient.check_same(&h.ambient)?;
    if x.region.is_some() {
        return Err(Error::Unsupported("bi-parameter maps into restricted spaces".into()));
    }
    let family = x.family()?;
    let en = family.enumerate(&h.ambient, &h.lattice(), budget, Scope::Local);
    for f in &en.functions {
        if let Some(w) = biparam_violation(h, f) {
            return Ok(Verdict::fails(w));
        }
    }
    Ok(if family.complete && !en.truncated {
        Verdict::Holds
    } else {
        Verdict::NoViolationFound { budget }
    })
}

fn biparam_violation(h: &BiParamMap, f: &TestFunction) -> Option<Witness> {
    let n = h.ambient.dim();
    for j in 0..h.t.len() - 1 {
        for i in 0..h.s.len() - 1 {
            for lower in [true, false] {
                let (hs, ht, h0) = h.triangle_affine(i, j, lower);
                let verts = h.triangle_vertices(i, j, lower);
                let lifts: Vec<Vec<Scalar>> = verts.iter().map(|(s, t)| h.eval(s, t)).collect();
                let lo: Vec<Scalar> = (0..n).map(|m| lifts.iter().map(|l| l[m].clone()).min().unwrap()).collect();
                let hi: Vec<Scalar> = (0..n).map(|m| lifts.iter().map(|l| l[m].clone()).max().unwrap()).collect();
                for bx in &f.domain.boxes {
                    for k in crate::plgeom::segment_shifts(&h.ambient, bx, &lo, &hi) {
                        for cell in &f.cells {
                            for direction in [Direction::S, Direction::T] {
                                let dvec = if direction == Direction::S { &hs } else { &ht };
                                let slope: Scalar = cell.form.coeffs.iter().zip(dvec).map(|(a, d)| a * d).sum();
                                if !slope.is_negative() {
                                    continue;
                                }
                                let mut poly: Vec<Pt> = verts.to_vec();
                                // Coordinate m of h + k, as a s + b t + c.
                                let coord = |m: usize| (hs[m].clone(), ht[m].clone(), &h0[m] + &k[m]);
                                for m in 0..n {
                                    let (a, b, c) = coord(m);
                                    for (bound, upper) in [(&bx.lo[m], false), (&bx.hi[m], true), (&cell.region.lo[m], false), (&cell.region.hi[m], true)] {
                                        poly = if upper {
                                            clip(poly, &-&a, &-&b, &(bound - &c))
                                        } else {
                                            clip(poly, &a, &b, &(&c - bound))
                                        };
                                    }
                                }
                                if f.clamp {
                                    let mut a = Scalar::zero();
                                    let mut b = Scalar::zero();
                                    let mut c = cell.form.constant.clone();
                                    for m in 0..n {
                                        let (am, bm, cm) = coord(m);
                                        let w = &cell.form.coeffs[m];
                                        a += &(w * &am);
                                        b += &(w * &bm);
                                        c += &(w * &cm);
                                    }
                                    poly = clip(poly, &a, &b, &c);
                                    poly = clip(poly, &-&a, &-&b, &(Scalar::one() - &c));
                                }
                                if poly.len() < 3 || twice_area(&poly).is_zero() {
                                    continue;
                                }
                                let count = Scalar::int(poly.len() as i64);
                                let cs = poly.iter().map(|p| p.0.clone()).sum::<Scalar>() / &count;
                                let ct = poly.iter().map(|p| p.1.clone()).sum::<Scalar>() / &count;
                                let fixed = if direction == Direction::S { ct } else { cs };
                                let (a, b) = chord(&poly, direction, &fixed);
                                let quarter = (&b - &a) * Scalar::ratio(1, 4);
                                let (t1, t2) = (&a + &quarter, &b - &quarter);
                                let at = |u: &Scalar| match direction {
                                    Direction::S => h.eval(u, &fixed),
                                    Direction::T => h.eval(&fixed, u),
                                };
                                let v1 = f.eval(&at(&t1))?;
                                let v2 = f.eval(&at(&t2))?;
                                return Some(Witness::BiParam {
                                    function: f.clone(),
                                    direction,
                                    cell: (i, j),
                                    fixed,
                                    t1,
                                    t2,
                                    v1,
                                    v2,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// The slice route: every grid slice `h(., t_j)` and `h(s_i, .)` is
/// directed in `X`.
pub fn biparam_slices_directed(h: &BiParamMap, x: &DSpace, budget: usize) -> Result<Verdict> {
    let mut verdicts = Vec::new();
    for t in &h.t {
        verdicts.push(path_is_directed(x, &h.slice_s(t)?, budget)?);
    }
    for s in &h.s {
        verdicts.push(path_is_directed(x, &h.slice_t(s)?, budget)?);
    }
    Ok(Verdict::all(verdicts))
}

/// Re-checks a bi-parameter witness on the corresponding slice.
pub fn revalidate_biparam(h: &BiParamMap, w: &Witness) -> bool {
    let Witness::BiParam {
        function,
        direction,
        fixed,
        t1,
        t2,
        ..
    } = w
    else {
        return false;
    };
    let slice = match direction {
        Direction::S => h.slice_s(fixed),
        Direction::T => h.slice_t(fixed),
    };
    slice.is_ok_and(|p| witness_is_genuine(function, &p, t1, t2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dspace::DEFAULT_BUDGET;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn square() -> DSpace {
        product(&directed_interval(), &directed_interval()).unwrap()
    }

    fn grid(values: [[(i64, i64); 2]; 2]) -> BiParamMap {
        let plane = Ambient::euclidean(2);
        let v = |(a, b): (i64, i64)| vec![q(a, 1), q(b, 1)];
        BiParamMap::new(
            plane,
            vec![q(0, 1), q(1, 1)],
            vec![q(0, 1), q(1, 1)],
            vec![vec![v(values[0][0]), v(values[0][1])], vec![v(values[1][0]), v(values[1][1])]],
        )
        .unwrap()
    }

    #[test]
    fn product_of_intervals() {
        let sq = square();
        assert_eq!(sq.ambient, Ambient::euclidean(2));
        assert!(sq.generators.as_ref().unwrap().complete);
        let plane = Ambient::euclidean(2);
        let stair = PlPath::polyline(&plane, vec![vec![q(0, 1), q(0, 1)], vec![q(1, 1), q(0, 1)], vec![q(1, 1), q(1, 1)]]).unwrap();
        assert!(path_is_directed(&sq, &stair, DEFAULT_BUDGET).unwrap().holds());
        let down = PlPath::segment(&plane, vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]).unwrap();
        assert!(path_is_directed(&sq, &down, DEFAULT_BUDGET).unwrap().is_fail());
    }

    #[test]
    fn reversor_is_an_involution() {
        let x = directed_interval();
        let rr = reversor(&reversor(&x).unwrap()).unwrap();
        assert_eq!(rr, x);
    }

    #[test]
    fn biparam_identity_and_flip() {
        let sq = square();
        let id = grid([[(0, 0), (1, 0)], [(0, 1), (1, 1)]]);
        assert!(biparam_is_directed(&id, &sq, DEFAULT_BUDGET).unwrap().holds());
        let flip = grid([[(0, 1), (1, 1)], [(0, 0), (1, 0)]]);
        let v = biparam_is_directed(&flip, &sq, DEFAULT_BUDGET).unwrap();
        let Some(w @ Witness::BiParam { direction, function, .. }) = v.witness() else {
            panic!("expected a bi-parameter witness, got {v:?}");
        };
        assert_eq!(*direction, Direction::T);
        assert!(function.label.starts_with("threshold(0, 1)"));
        assert!(revalidate_biparam(&flip, w));
        let c = BiParamMap::constant(Ambient::euclidean(2), vec![q(1, 2), q(1, 3)]).unwrap();
        assert!(biparam_is_directed(&c, &sq, DEFAULT_BUDGET).unwrap().holds());
    }

    #[test]
    fn triangulated_slices() {
        let h = grid([[(0, 0), (2, 0)], [(0, 2), (0, 0)]]);
        let s = h.slice_s(&q(1, 2)).unwrap();
        assert_eq!(s.breaks(), &[q(0, 1), q(1, 2), q(1, 1)]);
        // The diagonal carries the average of its endpoints.
        assert_eq!(h.eval(&q(1, 2), &q(1, 2)), vec![q(0, 1), q(0, 1)]);
        assert_eq!(h.eval(&q(1, 2), &q(1, 4)), vec![q(1, 2), q(0, 1)]);
        assert_eq!(s.lift_at(&q(1, 4)).unwrap(), vec![q(0, 1), q(1, 2)]);
    }

    #[test]
    fn polygon_clipping() {
        let tri = vec![(q(0, 1), q(0, 1)), (q(1, 1), q(0, 1)), (q(0, 1), q(1, 1))];
        assert_eq!(twice_area(&tri), q(1, 1));
        // s >= 1/2 leaves the corner triangle of area 1/8.
        let cut = clip(tri, &q(1, 1), &q(0, 1), &q(-1, 2));
        assert_eq!(twice_area(&cut), q(1, 4));
    }
}
