//! Presented directed spaces: membership of paths in `dX`, the d-space
//! axioms as executable checks, and morphism certification.

mod dmap;
mod generators;
mod predicate;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use dmap::{MapCell, PlMap};
pub use generators::{Enumeration, GeneratorFamily, Schema, Scope, DEFAULT_BUDGET};
pub use predicate::{cubic_point, PathPredicate};

use crate::dfun::witness_is_genuine;
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::plgeom::{check_reparameterization, Ambient, OpenSet, PlPath};
use crate::report::{Report, Status};
use crate::verdict::{Verdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Presentation {
    /// Membership decided by the path predicate.
    Predicate,
    /// Membership decided by the generating family of directed functions.
    Sheaf,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Presentation::Predicate => "predicate",
            Presentation::Sheaf => "sheaf",
        })
    }
}

/// A directed space given by a predicate on PL paths and/or a generating
/// family for its directed functions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DSpace {
    pub name: String,
    pub ambient: Ambient,
    pub presentation: Presentation,
    pub predicate: Option<PathPredicate>,
    pub generators: Option<GeneratorFamily>,
    /// Known characterization of the weakly directed paths.
    pub oracle: Option<PathPredicate>,
    /// The open subspace this space is restricted to, if any.
    pub region: Option<OpenSet>,
    /// Known (or, for sheaf presentations, built-in) saturation.
    pub saturated: bool,
}

impl DSpace {
    pub fn predicate_presented(
        name: impl Into<String>,
        ambient: Ambient,
        predicate: PathPredicate,
    ) -> Result<DSpace> {
        predicate.validate_for(&ambient)?;
        Ok(DSpace {
            name: name.into(),
            ambient,
            presentation: Presentation::Predicate,
            predicate: Some(predicate),
            generators: None,
            oracle: None,
            region: None,
            saturated: false,
        })
    }

    pub fn sheaf_presented(
        name: impl Into<String>,
        ambient: Ambient,
        generators: GeneratorFamily,
    ) -> Result<DSpace> {
        generators.validate_for(&ambient)?;
        Ok(DSpace {
            name: name.into(),
            ambient,
            presentation: Presentation::Sheaf,
            predicate: None,
            generators: Some(generators),
            oracle: None,
            region: None,
            saturated: true,
        })
    }

    pub fn with_generators(mut self, generators: GeneratorFamily) -> Result<DSpace> {
        generators.validate_for(&self.ambient)?;
        self.generators = Some(generators);
        Ok(self)
    }

    pub fn with_oracle(mut self, oracle: PathPredicate) -> Result<DSpace> {
        oracle.validate_for(&self.ambient)?;
        self.oracle = Some(oracle);
        Ok(self)
    }

    pub fn declared_saturated(mut self, saturated: bool) -> DSpace {
        self.saturated = saturated;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> DSpace {
        self.name = name.into();
        self
    }

    /// Checks the presentation invariants.
    pub fn validate(&self) -> Result<()> {
        match self.presentation {
            Presentation::Predicate if self.predicate.is_none() => {
                return Err(Error::MissingPredicate(self.name.clone()))
            }
            Presentation::Sheaf if self.generators.is_none() => {
                return Err(Error::MissingGenerators(self.name.clone()))
            }
            _ => {}
        }
        if let Some(p) = &self.predicate {
            p.validate_for(&self.ambient)?;
        }
        if let Some(p) = &self.oracle {
            p.validate_for(&self.ambient)?;
        }
        if let Some(g) = &self.generators {
            g.validate_for(&self.ambient)?;
        }
        if let Some(r) = &self.region {
            self.ambient.check_same(&r.ambient)?;
        }
        Ok(())
    }

    pub fn family(&self) -> Result<&GeneratorFamily> {
        self.generators
            .as_ref()
            .ok_or_else(|| Error::MissingGenerators(self.name.clone()))
    }

    /// The open subspace `X|Y`: paths staying in `Y`, with generators
    /// restricted to subsets of `Y`.
    pub fn restrict(&self, y: &OpenSet) -> Result<DSpace> {
        self.ambient.check_same(&y.ambient)?;
        let region = match &self.region {
            Some(r) => r.intersect(y),
            None => y.clone(),
        };
        Ok(DSpace {
            name: format!("{}|{}", self.name, y),
            region: Some(region),
            ..self.clone()
        })
    }
}

/// A morphism candidate between presented spaces.
#[derive(Clone, Debug)]
pub struct DMap {
    pub source: DSpace,
    pub target: DSpace,
    pub map: PlMap,
}

impl DMap {
    pub fn new(source: DSpace, target: DSpace, map: PlMap) -> Result<DMap> {
        source.ambient.check_same(&map.source)?;
        target.ambient.check_same(&map.target)?;
        Ok(DMap {
            source,
            target,
            map,
        })
    }
}

fn region_verdict(x: &DSpace, p: &PlPath) -> Option<Verdict> {
    let region = x.region.as_ref()?;
    let pre = p.preimage(region);
    if pre.is_unit() {
        return None;
    }
    let t = match pre.components().first() {
        None => Scalar::zero(),
        Some(c) if !(c.lo.is_zero() && c.lo_closed) => Scalar::zero(),
        Some(c) => c.hi.clone(),
    };
    Some(Verdict::fails(Witness::LeavesRegion { t }))
}

/// Membership in `dX`. Predicate presentations are decided exactly; sheaf
/// presentations test the enumerated generators.
pub fn path_is_directed(x: &DSpace, p: &PlPath, budget: usize) -> Result<Verdict> {
    x.ambient.check_same(p.ambient())?;
    if let Some(v) = region_verdict(x, p) {
        return Ok(v);
    }
    match (x.presentation, &x.predicate) {
        (Presentation::Predicate, Some(pred)) => Ok(match pred.check(p) {
            Ok(()) => Verdict::Holds,
            Err(reason) => Verdict::fails(Witness::Predicate {
                predicate: pred.to_string(),
                reason,
            }),
        }),
        (Presentation::Predicate, None) => Err(Error::MissingPredicate(x.name.clone())),
        (Presentation::Sheaf, _) => generator_verdict(x, p, budget, Scope::Local),
    }
}

/// Whether every enumerated generator of `X` is locally non-decreasing
/// along `p`.
pub fn generator_verdict(x: &DSpace, p: &PlPath, budget: usize, scope: Scope) -> Result<Verdict> {
    x.ambient.check_same(p.ambient())?;
    if let Some(v) = region_verdict(x, p) {
        return Ok(v);
    }
    x.family()?.check_path(p, x.region.as_ref(), budget, scope)
}

/// Reparameterizations used when none are given: identity, constants, a
/// convex and a concave approximation, and one that pauses.
pub fn default_reparams() -> Vec<PlPath> {
    let line = Ambient::euclidean(1);
    let q = Scalar::ratio;
    let r = |pts: &[(i64, i64, i64, i64)]| {
        PlPath::new(
            line.clone(),
            pts.iter().map(|&(a, b, _, _)| q(a, b)).collect(),
            pts.iter().map(|&(_, _, c, d)| vec![q(c, d)]).collect(),
        )
        .expect("valid reparameterization")
    };
    vec![
        r(&[(0, 1, 0, 1), (1, 1, 1, 1)]),
        r(&[(0, 1, 0, 1), (1, 1, 0, 1)]),
        r(&[(0, 1, 1, 1), (1, 1, 1, 1)]),
        r(&[(0, 1, 1, 2), (1, 1, 1, 2)]),
        r(&[(0, 1, 0, 1), (1, 2, 1, 4), (1, 1, 1, 1)]),
        r(&[(0, 1, 0, 1), (1, 4, 1, 2), (1, 1, 1, 1)]),
        r(&[(0, 1, 0, 1), (1, 3, 1, 2), (2, 3, 1, 2), (1, 1, 1, 1)]),
        r(&[(0, 1, 1, 4), (1, 1, 3, 4)]),
    ]
}

struct Tally {
    checked: usize,
    budget: usize,
    failures: Vec<(String, Witness)>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            budget: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, what: String, premise_certified: bool, v: Verdict) {
        self.checked += 1;
        match v {
            Verdict::Holds => {}
            Verdict::NoViolationFound { .. } => self.budget += 1,
            Verdict::Fails { witness } => {
                if premise_certified {
                    self.failures.push((what, *witness));
                } else {
                    self.budget += 1;
                }
            }
        }
    }

    fn into_report(self, report: &mut Report, check: &str) {
        if let Some((what, w)) = self.failures.first() {
            report.fail(
                check,
                format!("{} of {} failed; first: {what}", self.failures.len(), self.checked),
                Some(w.clone()),
            );
        } else if self.budget > 0 {
            report.push(
                check,
                Status::Budget,
                format!("{} checked, {} budget-qualified", self.checked, self.budget),
                None,
            );
        } else {
            report.pass(check, format!("{} checked", self.checked));
        }
    }
}

/// The three d-space axioms on a finite corpus: constants, concatenation of
/// composable directed pairs, and closure under the given
/// reparameterizations.
pub fn check_axioms(x: &DSpace, corpus: &[PlPath], reparams: &[PlPath], budget: usize) -> Result<Report> {
    for r in reparams {
        check_reparameterization(r)?;
    }
    let mut report = Report::new(format!("axioms for {}", x.name));
    let verdicts: Vec<Verdict> = corpus
        .iter()
        .map(|p| path_is_directed(x, p, budget))
        .collect::<Result<_>>()?;

    let mut constants = Tally::new();
    let mut seen: Vec<Vec<Scalar>> = Vec::new();
    for p in corpus {
        for end in [p.start_lift(), p.end_lift()] {
            let key = x.ambient.canonical(end);
            if seen.contains(&key) {
                continue;
            }
            seen.push(key);
            let c = PlPath::constant(&x.ambient, end.to_vec())?;
            let v = path_is_directed(x, &c, budget)?;
            constants.record(format!("constant at {}", c.start()), true, v);
        }
    }
    constants.into_report(&mut report, "constant paths");

    let mut concat = Tally::new();
    for (i, p) in corpus.iter().enumerate() {
        if !verdicts[i].passes() {
            continue;
        }
        for (j, q) in corpus.iter().enumerate() {
            if !verdicts[j].passes() || !x.ambient.same_point(p.end_lift(), q.start_lift()) {
                continue;
            }
            let pq = p.concat(q)?;
            let v = path_is_directed(x, &pq, budget)?;
            let certified = verdicts[i].holds() && verdicts[j].holds();
            let v = wrap_derived(v, "concat", vec![i, j], &pq);
            concat.record(format!("corpus paths #{i} then #{j}"), certified, v);
        }
    }
    concat.into_report(&mut report, "concatenation");

    let mut reparam = Tally::new();
    for (i, p) in corpus.iter().enumerate() {
        if !verdicts[i].passes() {
            continue;
        }
        for (k, r) in reparams.iter().enumerate() {
            let pr = p.reparameterize(r)?;
            let v = path_is_directed(x, &pr, budget)?;
            let v = wrap_derived(v, &format!("reparameterization {k}"), vec![i], &pr);
            reparam.record(format!("corpus path #{i}, reparameterization {k}"), verdicts[i].holds(), v);
        }
    }
    reparam.into_report(&mut report, "reparameterization");
    Ok(report)
}

fn wrap_derived(v: Verdict, operation: &str, parts: Vec<usize>, path: &PlPath) -> Verdict {
    match v {
        Verdict::Fails { witness } => Verdict::fails(Witness::Derived {
            operation: operation.into(),
            parts,
            path: path.clone(),
            inner: witness,
        }),
        v => v,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MorphismMode {
    /// Images of directed paths must be directed in the target.
    Path,
    /// Target generators pulled back along the map must be monotone along
    /// directed source paths.
    Function,
}

/// Whether `F` maps the directed corpus paths of its source to directed
/// paths of its target, in the chosen mode.
pub fn check_morphism(f: &DMap, corpus: &[PlPath], mode: MorphismMode, budget: usize) -> Result<Verdict> {
    let mut out = Verdict::Holds;
    for (i, p) in corpus.iter().enumerate() {
        f.source.ambient.check_same(p.ambient())?;
        let premise = path_is_directed(&f.source, p, budget)?;
        if !premise.passes() {
            continue;
        }
        let image = f.map.apply_path(p)?;
        let v = match mode {
            MorphismMode::Path => path_is_directed(&f.target, &image, budget)?,
            MorphismMode::Function => generator_verdict(&f.target, &image, budget, Scope::Local)?,
        };
        match v {
            Verdict::Fails { witness } if premise.holds() => {
                return Ok(Verdict::fails(Witness::Image {
                    source_index: i,
                    image,
                    inner: witness,
                }))
            }
            Verdict::Holds => {}
            _ => out = Verdict::NoViolationFound { budget },
        }
    }
    Ok(out)
}

/// Re-checks a witness produced by a membership test of `p` in `X`.
pub fn revalidate(x: &DSpace, p: &PlPath, w: &Witness, budget: usize) -> bool {
    match w {
        Witness::Generator { function, t1, t2, .. } => {
            let Some(family) = &x.generators else {
                return false;
            };
            let members = family.enumerate_for_path(p, budget, Scope::Local).functions;
            let member = members.iter().any(|g| match &x.region {
                Some(y) => g.restricted(y).as_ref() == Some(function),
                None => g == function,
            });
            member && witness_is_genuine(function, p, t1, t2)
        }
        Witness::Predicate { .. } => x.predicate.as_ref().is_some_and(|pr| !pr.accepts(p)),
        Witness::LeavesRegion { t } => match (&x.region, p.lift_at(t)) {
            (Some(y), Ok(pt)) => !y.contains(&pt),
            _ => false,
        },
        Witness::Derived { path, inner, .. } => revalidate(x, path, inner, budget),
        _ => false,
    }
}

/// Re-checks a morphism witness: the image is recomputed and its failure
/// re-validated in the target.
pub fn revalidate_morphism(f: &DMap, corpus: &[PlPath], w: &Witness, budget: usize) -> bool {
    let Witness::Image {
        source_index,
        image,
        inner,
    } = w
    else {
        return false;
    };
    let Some(p) = corpus.get(*source_index) else {
        return false;
    };
    let directed = path_is_directed(&f.source, p, budget).is_ok_and(|v| v.holds());
    directed && f.map.apply_path(p).as_ref() == Ok(image) && revalidate(&f.target, image, inner, budget)
}
