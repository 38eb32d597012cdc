//! Weak directedness, the saturation of a presented space, and the
//! saturation-process properties (unit, locality) as corpus checks.

use serde::{Deserialize, Serialize};

use crate::dspace::{
    generator_verdict, path_is_directed, DSpace, GeneratorFamily, Presentation, Schema, Scope,
};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::plgeom::{Ambient, OpenSet, PlPath};
use crate::report::{Report, Status};
use crate::verdict::{Verdict, Witness};

/// Whether every enumerated local directed function of `X` is locally
/// non-decreasing along `p`.
pub fn is_weakly_directed(x: &DSpace, p: &PlPath, budget: usize) -> Result<Verdict> {
    generator_verdict(x, p, budget, Scope::Local)
}

/// The sheaf-presented space with the same generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaturationResult {
    pub space: DSpace,
    pub source: String,
    pub family: GeneratorFamily,
}

pub fn saturation(x: &DSpace) -> Result<SaturationResult> {
    let family = x.family()?.clone();
    let name = if x.presentation == Presentation::Sheaf {
        x.name.clone()
    } else {
        format!("sat({})", x.name)
    };
    let space = DSpace {
        name,
        presentation: Presentation::Sheaf,
        predicate: None,
        generators: Some(family.clone()),
        saturated: true,
        ..x.clone()
    };
    Ok(SaturationResult {
        space,
        source: x.name.clone(),
        family,
    })
}

/// Compares directedness with weak directedness on every corpus path. Each
/// disagreement is a failing line carrying the directedness witness.
pub fn check_saturated(x: &DSpace, corpus: &[PlPath], budget: usize) -> Result<Report> {
    if x.predicate.is_none() {
        return Err(Error::MissingPredicate(x.name.clone()));
    }
    x.family()?;
    let mut report = Report::new(format!("saturation of {}", x.name));
    for (i, p) in corpus.iter().enumerate() {
        let directed = path_is_directed(x, p, budget)?;
        let weak = is_weakly_directed(x, p, budget)?;
        let check = format!("path #{i}");
        match (&directed, &weak) {
            (Verdict::Holds, Verdict::Holds) => report.pass(check, "directed and weakly directed"),
            (Verdict::Fails { .. }, Verdict::Fails { .. }) => {
                report.pass(check, "neither directed nor weakly directed")
            }
            (Verdict::Fails { witness }, Verdict::NoViolationFound { .. }) => report.push(
                check,
                Status::Budget,
                "not directed, no violation found for weak directedness",
                Some((**witness).clone()),
            ),
            (Verdict::Fails { witness }, Verdict::Holds) => report.fail(
                check,
                "weakly directed but not directed",
                Some((**witness).clone()),
            ),
            (Verdict::Holds, Verdict::Fails { witness }) => report.fail(
                check,
                "directed but not weakly directed",
                Some((**witness).clone()),
            ),
            _ => report.push(check, Status::Budget, format!("directed: {directed}; weak: {weak}"), None),
        }
    }
    Ok(report)
}

/// Locality: corpus paths with image in `Y` that are weakly directed in `X`
/// must be weakly directed in `X|Y`.
pub fn check_locality(x: &DSpace, y: &OpenSet, corpus: &[PlPath], budget: usize) -> Result<Report> {
    let xy = x.restrict(y)?;
    let mut report = Report::new(format!("locality of {} on {}", x.name, y));
    let mut inside = 0;
    for (i, p) in corpus.iter().enumerate() {
        if !p.stays_in(y) {
            continue;
        }
        inside += 1;
        let in_x = is_weakly_directed(x, p, budget)?;
        let in_y = is_weakly_directed(&xy, p, budget)?;
        let check = format!("path #{i}");
        match (&in_x, &in_y) {
            (Verdict::Holds, Verdict::Holds) => report.pass(check, "weakly directed in X and in X|Y"),
            (Verdict::Fails { .. }, _) => report.pass(check, format!("not weakly directed in X; in X|Y: {in_y}")),
            (Verdict::Holds, Verdict::Fails { witness }) => report.fail(
                check,
                "weakly directed in X but not in X|Y",
                Some((**witness).clone()),
            ),
            _ => report.push(check, Status::Budget, format!("in X: {in_x}; in X|Y: {in_y}"), None),
        }
    }
    if inside == 0 {
        report.push("coverage", Status::Budget, "no corpus path lies in the subset", None);
    }
    Ok(report)
}

/// Contrasts weak directedness against all local sections with the test
/// against global functions only, on the forward and reversed loops and on
/// the corpus.
pub fn check_global_only_pitfall(circle: &DSpace, corpus: &[PlPath], budget: usize) -> Result<Report> {
    if circle.ambient != Ambient::torus(1) {
        return Err(Error::Unsupported(format!(
            "the pitfall check needs the circle, not {}",
            circle.ambient
        )));
    }
    let forward = PlPath::segment(&circle.ambient, vec![Scalar::zero()], vec![Scalar::one()])?;
    let reversed = forward.reversed();
    let mut report = Report::new(format!("global-only pitfall on {}", circle.name));
    for (name, p, local_expected) in [("forward loop", &forward, true), ("reversed loop", &reversed, false)] {
        let local = generator_verdict(circle, p, budget, Scope::Local)?;
        report.expect(format!("{name}, local sections"), &local, local_expected);
        if let Some(Witness::Generator { function, .. }) = local.witness() {
            if function.global {
                report.fail(
                    format!("{name}, witness scope"),
                    format!("witness {} is global", function.label),
                    None,
                );
            } else {
                report.pass(format!("{name}, witness scope"), format!("chart witness {}", function.label));
            }
        }
        let global = generator_verdict(circle, p, budget, Scope::GlobalOnly)?;
        report.expect(format!("{name}, global functions only"), &global, true);
    }
    let mut gained = 0;
    for p in corpus {
        let local = generator_verdict(circle, p, budget, Scope::Local)?;
        let global = generator_verdict(circle, p, budget, Scope::GlobalOnly)?;
        if local.is_fail() && global.passes() {
            gained += 1;
        }
    }
    report.pass(
        "corpus",
        format!("{gained} of {} corpus paths accepted only in global-only mode", corpus.len()),
    );
    Ok(report)
}

/// A generating family guessed from a bare predicate: clamp-affine schemas
/// with coefficients in {-1, 0, 1} that are monotone along every sample path
/// the predicate accepts. Never marked complete.
pub fn synthesize_generators(x: &DSpace, samples: &[PlPath], budget: usize) -> Result<GeneratorFamily> {
    let pred = x
        .predicate
        .as_ref()
        .ok_or_else(|| Error::MissingPredicate(x.name.clone()))?;
    let dim = x.ambient.dim();
    if dim > 4 {
        return Err(Error::Unsupported(format!("synthesis in dimension {dim}")));
    }
    let mut candidates = vec![Schema::Const];
    let mut coeffs = vec![vec![]];
    for _ in 0..dim {
        coeffs = coeffs
            .into_iter()
            .flat_map(|c: Vec<i64>| {
                [-1, 0, 1].into_iter().map(move |v| {
                    let mut d = c.clone();
                    d.push(v);
                    d
                })
            })
            .collect();
    }
    candidates.extend(
        coeffs
            .iter()
            .filter(|c| c.iter().any(|&v| v != 0))
            .map(|c| Schema::affine(c)),
    );
    let directed: Vec<&PlPath> = samples.iter().filter(|p| pred.accepts(p)).collect();
    let mut kept = Vec::new();
    for schema in candidates {
        let single = GeneratorFamily::new(vec![schema.clone()], false);
        let mut ok = true;
        for p in &directed {
            if single.check_path(p, x.region.as_ref(), budget, Scope::Local)?.is_fail() {
                ok = false;
                break;
            }
        }
        if ok {
            kept.push(schema);
        }
    }
    Ok(GeneratorFamily::new(kept, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dspace::{PathPredicate, DEFAULT_BUDGET};

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn ex1() -> DSpace {
        DSpace::predicate_presented(
            "ex1",
            Ambient::euclidean(2),
            PathPredicate::Along { axis: 0, monotone: false, rational_level: true },
        )
        .unwrap()
        .with_generators(GeneratorFamily::new(
            vec![Schema::affine(&[0, 1]), Schema::affine(&[0, 1]).reversed()],
            true,
        ))
        .unwrap()
    }

    #[test]
    fn weak_directedness_in_the_first_example() {
        let x = ex1();
        let plane = Ambient::euclidean(2);
        let s2 = PlPath::segment(&plane, vec![q(0, 1), Scalar::sqrt2()], vec![q(1, 1), Scalar::sqrt2()]).unwrap();
        assert!(path_is_directed(&x, &s2, DEFAULT_BUDGET).unwrap().is_fail());
        assert!(is_weakly_directed(&x, &s2, DEFAULT_BUDGET).unwrap().holds());
        let vertical = PlPath::segment(&plane, vec![q(0, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]).unwrap();
        let v = is_weakly_directed(&x, &vertical, DEFAULT_BUDGET).unwrap();
        assert!(matches!(v.witness(), Some(Witness::Generator { function, .. }) if function.label.contains("threshold")));
    }

    #[test]
    fn saturation_is_sheaf_presented_and_idempotent() {
        let x = ex1();
        let s = saturation(&x).unwrap();
        assert_eq!(s.space.presentation, Presentation::Sheaf);
        assert_eq!(s.source, "ex1");
        let ss = saturation(&s.space).unwrap();
        assert_eq!(ss.space, s.space);
    }

    #[test]
    fn not_saturated_report_has_witness() {
        let x = ex1();
        let plane = Ambient::euclidean(2);
        let s2 = PlPath::segment(&plane, vec![q(0, 1), Scalar::sqrt2()], vec![q(1, 1), Scalar::sqrt2()]).unwrap();
        let r = check_saturated(&x, &[s2], DEFAULT_BUDGET).unwrap();
        let fails: Vec<_> = r.failures().collect();
        assert_eq!(fails.len(), 1);
        assert!(matches!(fails[0].witness, Some(Witness::Predicate { .. })));
    }

    #[test]
    fn synthesis_recovers_monotone_coordinates() {
        let line = Ambient::euclidean(1);
        let x = DSpace::predicate_presented("interval", line.clone(), PathPredicate::Nondecreasing).unwrap();
        let samples: Vec<PlPath> = [(0, 1), (1, 3), (-2, 5)]
            .iter()
            .map(|&(a, b)| PlPath::segment(&line, vec![q(a, 1)], vec![q(b, 1)]).unwrap())
            .collect();
        let fam = synthesize_generators(&x, &samples, DEFAULT_BUDGET).unwrap();
        assert_eq!(fam.schemas, vec![Schema::Const, Schema::affine(&[1])]);
        assert!(!fam.complete);
    }
}
