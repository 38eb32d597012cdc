//! Named example spaces with curated path corpora and expected verdicts.

mod fixtures;
mod harp;

use serde::{Deserialize, Serialize};

use crate::constructs::cylinder;
use crate::dspace::{
    check_axioms, default_reparams, path_is_directed, DMap, DSpace, PlMap, Presentation,
};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::plgeom::{Ambient, OpenSet, PlPath};
use crate::report::{Report, Status};
use crate::saturate::{check_global_only_pitfall, check_locality, check_saturated, is_weakly_directed};
use crate::verdict::Verdict;

pub use harp::{almost_directed_line, harp_chords, harp_demo, harp_space};

/// Where an expected verdict comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// Read off the defining predicate and the stated characterization of
    /// the weakly directed paths.
    Characterization,
    /// Follows from how the space is built (products, gluing).
    Construction,
    /// Only sampled; the weak verdict is not certified.
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusPath {
    pub label: String,
    pub path: PlPath,
    pub directed: bool,
    pub weakly: bool,
    pub basis: Basis,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub space: DSpace,
    pub corpus: Vec<CorpusPath>,
    pub notes: String,
    /// Open subsets used for the locality checks.
    pub subsets: Vec<OpenSet>,
}

impl Fixture {
    pub fn paths(&self) -> Vec<PlPath> {
        self.corpus.iter().map(|c| c.path.clone()).collect()
    }
}

/// Loadable fixtures, in registry order.
pub const NAMES: &[&str] = &[
    "interval", "circle", "ex1", "ex2", "ex3", "ex4", "ex5", "ex6", "ex8", "ex10", "ex11", "P1", "line_L",
    "harp", "square",
];

/// Registered names without a PL model.
pub const DOCUMENTATION_ONLY: &[(&str, &str)] = &[
    ("ex7", "paths that are locally piecewise horizontal or vertical on some dense open set"),
    ("ex9", "piecewise circular paths"),
];

/// Fixtures whose saturation has a stated path characterization.
pub const ORACLE_FIXTURES: &[&str] = &["ex1", "ex2", "ex3", "ex4", "ex5", "ex6", "ex8", "ex10", "ex11"];

pub fn load(name: &str) -> Result<Fixture> {
    if let Some((_, what)) = DOCUMENTATION_ONLY.iter().find(|(n, _)| *n == name) {
        return Err(Error::DocumentationOnly(format!(
            "{name}: documentation-only (non-PL predicate: {what})"
        )));
    }
    fixtures::build(name).ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

pub fn load_all() -> Vec<Fixture> {
    NAMES.iter().map(|n| load(n).expect("registered fixture")).collect()
}

/// A registered map between fixtures.
#[derive(Clone, Debug)]
pub struct CatalogMorphism {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: DMap,
}

fn morphism(name: &str, source: &str, target: &str, map: impl FnOnce(&Ambient, &Ambient) -> Result<PlMap>) -> CatalogMorphism {
    let (s, t) = (load(source).expect("fixture").space, load(target).expect("fixture").space);
    let map = map(&s.ambient, &t.ambient).expect("static map");
    CatalogMorphism {
        name: name.into(),
        source: source.into(),
        target: target.into(),
        map: DMap::new(s, t, map).expect("static morphism"),
    }
}

pub fn morphisms() -> Vec<CatalogMorphism> {
    let id = |s: &Ambient, _: &Ambient| Ok(PlMap::identity(s));
    let z = Scalar::zero;
    let o = Scalar::one;
    vec![
        morphism("ex3 -> ex1", "ex3", "ex1", id),
        morphism("ex1 -> ex5", "ex1", "ex5", id),
        morphism("ex10 -> ex5", "ex10", "ex5", id),
        morphism("ex10 -> square", "ex10", "square", id),
        morphism("ex4 -> ex2", "ex4", "ex2", id),
        morphism("square -> interval", "square", "interval", |s, _| Ok(PlMap::projection(s, 0..1))),
        morphism("interval -> circle", "interval", "circle", |s, t| {
            PlMap::affine(s.clone(), t.clone(), vec![vec![o()]], vec![z()])
        }),
        morphism("interval -> ex10", "interval", "ex10", |s, t| {
            PlMap::affine(s.clone(), t.clone(), vec![vec![o()], vec![z()]], vec![z(), Scalar::ratio(1, 2)])
        }),
    ]
}

/// Runs every check that applies to the fixture.
pub fn verify(name: &str, budget: usize) -> Result<Report> {
    verify_fixture(&load(name)?, budget)
}

pub fn verify_fixture(fx: &Fixture, budget: usize) -> Result<Report> {
    let x = &fx.space;
    let paths = fx.paths();
    let mut report = Report::new(format!("verify {}", fx.name));
    report.extend("axioms: ", check_axioms(x, &paths, &default_reparams(), budget)?);
    for c in &fx.corpus {
        report.expect(format!("directed: {}", c.label), &path_is_directed(x, &c.path, budget)?, c.directed);
        report.expect(format!("weakly directed: {}", c.label), &is_weakly_directed(x, &c.path, budget)?, c.weakly);
    }
    if let Some(oracle) = &x.oracle {
        for c in &fx.corpus {
            let weak = is_weakly_directed(x, &c.path, budget)?;
            report.expect(format!("saturation oracle: {}", c.label), &weak, oracle.accepts(&c.path));
        }
    }
    let saturated = check_saturated(x, &paths, budget)?;
    if x.saturated {
        report.extend("saturated: ", saturated);
    } else {
        match saturated.failures().next() {
            Some(line) => report.push(
                "not saturated",
                Status::Pass,
                format!("{} is weakly directed but not directed", line.check),
                line.witness.clone(),
            ),
            None => report.push(
                "not saturated",
                Status::Budget,
                "no corpus path separates directed from weakly directed",
                None,
            ),
        }
    }
    for y in &fx.subsets {
        report.extend("locality: ", check_locality(x, y, &paths, budget)?);
    }
    if x.ambient == Ambient::torus(1) && x.presentation == Presentation::Predicate {
        report.extend("", check_global_only_pitfall(x, &paths, budget)?);
    }
    if x.saturated && x.presentation == Presentation::Predicate && x.generators.as_ref().is_some_and(|g| g.complete) {
        let cyl = cylinder(x)?;
        let mut lifted = Vec::new();
        for p in &paths {
            lifted.push(lift_to_cylinder(p, true)?);
            lifted.push(lift_to_cylinder(p, false)?);
        }
        let r = check_saturated(&cyl, &lifted, budget)?;
        let detail = format!("{} lines, {} failing", r.lines.len(), r.failures().count());
        report.push(
            "cylinder saturated",
            if r.ok() { Status::Pass } else { Status::Fail },
            detail,
            r.failures().next().and_then(|l| l.witness.clone()),
        );
    }
    Ok(report)
}

/// `t -> (p(t), t)`, or `t -> (p(t), 1 - t)` when not `forward`.
pub fn lift_to_cylinder(p: &PlPath, forward: bool) -> Result<PlPath> {
    let line = Ambient::euclidean(1);
    let clock = |t: &Scalar| if forward { t.clone() } else { Scalar::one() - t };
    let time = PlPath::new(line, p.breaks().to_vec(), p.breaks().iter().map(|t| vec![clock(t)]).collect())?;
    Ok(p.pair(&time))
}

/// Membership of `p` in the fixture space, by predicate and by generators.
pub fn memberships(fx: &Fixture, p: &PlPath, budget: usize) -> Result<(Verdict, Verdict)> {
    Ok((path_is_directed(&fx.space, p, budget)?, is_weakly_directed(&fx.space, p, budget)?))
}
