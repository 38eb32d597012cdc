use std::fmt::Display;
use std::fs;
use std::path::Path;
use std::thread;

use dirsat::catalog::{self, Fixture};
use dirsat::constructs::{self, biparam_is_directed, biparam_slices_directed, revalidate_biparam, BiParamMap};
use dirsat::dspace::{self, default_reparams, path_is_directed, revalidate, revalidate_morphism, DMap, DSpace, MorphismMode, PlMap};
use dirsat::plgeom::PlPath;
use dirsat::report::{Report, Status};
use dirsat::saturate::{is_weakly_directed, saturation};
use dirsat::{text, Error, Verdict, Witness};

use crate::output::Outcome;
use crate::{Expect, Settings};

type CmdResult = Result<u8, String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn parsed<T>(path: &Path, parse: impl FnOnce(&str) -> dirsat::Result<T>) -> Result<T, String> {
    parse(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_space(path: &Path) -> Result<DSpace, String> {
    parsed(path, text::parse_space)
}

fn load_paths(path: &Path) -> Result<Vec<(String, PlPath)>, String> {
    parsed(path, text::parse_paths)
}

fn write(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))
}

fn lib<T>(r: dirsat::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// The expectation among `yes`/`no` requested on the command line.
fn expectation(settings: &Settings, yes: Expect, no: Expect) -> Result<Option<bool>, String> {
    match (settings.expect.contains(&yes), settings.expect.contains(&no)) {
        (true, true) => Err(format!("conflicting expectations {yes:?} and {no:?}")),
        (true, false) => Ok(Some(true)),
        (false, true) => Ok(Some(false)),
        (false, false) => Ok(None),
    }
}

fn only_expect(settings: &Settings, allowed: &[Expect], command: &str) -> Result<(), String> {
    match settings.expect.iter().find(|e| !allowed.contains(e)) {
        Some(e) => Err(format!("--expect {e:?} does not apply to {command}")),
        None => Ok(()),
    }
}

fn record(report: &mut Report, check: impl Into<String>, v: &Verdict, expected: Option<bool>) {
    match expected {
        Some(e) => report.expect(check, v, e),
        None => {
            let status = if v.is_certified() { Status::Pass } else { Status::Budget };
            report.push(check, status, v.to_string(), v.witness().cloned());
        }
    }
}

fn finish(settings: &Settings, outcome: Outcome) -> CmdResult {
    Ok(outcome.emit(settings.json, settings.allow_budget))
}

/// Directed and weakly directed lines for each path, with re-validated
/// witnesses.
fn path_lines(settings: &Settings, x: &DSpace, paths: &[(String, PlPath)], outcome: &mut Outcome) -> Result<(), String> {
    let directed = expectation(settings, Expect::Directed, Expect::NotDirected)?;
    let weakly = expectation(settings, Expect::Weakly, Expect::NotWeakly)?;
    for (label, p) in paths {
        let d = lib(path_is_directed(x, p, settings.budget))?;
        let w = lib(is_weakly_directed(x, p, settings.budget))?;
        for (check, v, e) in [("directed", d, directed), ("weakly-directed", w, weakly)] {
            record(&mut outcome.report, format!("{label}: {check}"), &v, e);
            let witness = outcome.report.lines.last().and_then(|l| l.witness.as_ref());
            outcome.revalidated.push(witness.map(|w| revalidate(x, p, w, settings.budget)));
        }
    }
    Ok(())
}

pub fn check_path(settings: &Settings, space: &Path, paths: &Path, only: Option<&str>) -> CmdResult {
    only_expect(settings, &[Expect::Directed, Expect::NotDirected, Expect::Weakly, Expect::NotWeakly], "check-path")?;
    let x = load_space(space)?;
    let mut ps = load_paths(paths)?;
    if let Some(label) = only {
        ps.retain(|(l, _)| l == label);
        if ps.is_empty() {
            return Err(format!("{}: no path labelled `{label}`", paths.display()));
        }
    }
    let mut outcome = Outcome::new("check-path", Report::new(format!("paths in {}", x.name)));
    path_lines(settings, &x, &ps, &mut outcome)?;
    finish(settings, outcome)
}

pub fn check_morphism(
    settings: &Settings,
    source: &Path,
    target: &Path,
    map: &Path,
    paths: &Path,
    mode: MorphismMode,
) -> CmdResult {
    only_expect(settings, &[Expect::Holds, Expect::Fails], "check-morphism")?;
    let expected = expectation(settings, Expect::Holds, Expect::Fails)?;
    let f: PlMap = parsed(map, text::parse_map)?;
    let f = lib(DMap::new(load_space(source)?, load_space(target)?, f))?;
    let corpus: Vec<PlPath> = load_paths(paths)?.into_iter().map(|(_, p)| p).collect();
    let v = lib(dspace::check_morphism(&f, &corpus, mode, settings.budget))?;
    let title = format!("{} -> {} ({mode:?} mode, {} paths)", f.source.name, f.target.name, corpus.len());
    let mut outcome = Outcome::new("check-morphism", Report::new(title));
    record(&mut outcome.report, "morphism", &v, expected);
    outcome.revalidated = vec![v.witness().map(|w| revalidate_morphism(&f, &corpus, w, settings.budget))];
    finish(settings, outcome)
}

pub fn saturate(settings: &Settings, space: &Path, out: &Path) -> CmdResult {
    only_expect(settings, &[], "saturate")?;
    let x = load_space(space)?;
    let s = lib(saturation(&x))?;
    write(out, &text::write_space(&s.space))?;
    let mut report = Report::new(format!("saturation of {}", x.name));
    report.pass("saturation", format!("wrote {} to {}", s.space.name, out.display()));
    let complete = s.family.complete;
    report.pass(
        "generators",
        format!("{} schemas, {}", s.family.schemas.len(), if complete { "complete" } else { "not marked complete" }),
    );
    finish(settings, Outcome::new("saturate", report))
}

pub fn axioms(settings: &Settings, space: &Path, paths: &Path, reparams: Option<&Path>) -> CmdResult {
    only_expect(settings, &[], "axioms")?;
    let x = load_space(space)?;
    let corpus: Vec<PlPath> = load_paths(paths)?.into_iter().map(|(_, p)| p).collect();
    let reparams = match reparams {
        Some(r) => load_paths(r)?.into_iter().map(|(_, p)| p).collect(),
        None => default_reparams(),
    };
    let report = lib(dspace::check_axioms(&x, &corpus, &reparams, settings.budget))?;
    let mut outcome = Outcome::new("axioms", report);
    outcome.revalidated = outcome
        .report
        .lines
        .iter()
        .map(|l| match &l.witness {
            Some(w @ Witness::Derived { path, .. }) => Some(revalidate(&x, path, w, settings.budget)),
            _ => None,
        })
        .collect();
    finish(settings, outcome)
}

fn built(
    settings: &Settings,
    command: &'static str,
    space: DSpace,
    out: &Path,
    check: Option<&Path>,
) -> CmdResult {
    only_expect(settings, &[Expect::Directed, Expect::NotDirected, Expect::Weakly, Expect::NotWeakly], command)?;
    write(out, &text::write_space(&space))?;
    let mut outcome = Outcome::new(command, Report::new(space.name.clone()));
    outcome.report.pass("written", format!("{} on {} to {}", space.name, space.ambient, out.display()));
    outcome.revalidated.push(None);
    if let Some(paths) = check {
        path_lines(settings, &space, &load_paths(paths)?, &mut outcome)?;
    }
    finish(settings, outcome)
}

pub fn product(settings: &Settings, left: &Path, right: &Path, out: &Path, check: Option<&Path>) -> CmdResult {
    let space = lib(constructs::product(&load_space(left)?, &load_space(right)?))?;
    built(settings, "product", space, out, check)
}

pub fn reversor(settings: &Settings, space: &Path, out: &Path, check: Option<&Path>) -> CmdResult {
    let space = lib(constructs::reversor(&load_space(space)?))?;
    built(settings, "reversor", space, out, check)
}

pub fn biparam(settings: &Settings, space: &Path, grid: &Path) -> CmdResult {
    only_expect(settings, &[Expect::Holds, Expect::Fails], "biparam")?;
    let expected = expectation(settings, Expect::Holds, Expect::Fails)?;
    let x = load_space(space)?;
    let h: BiParamMap = parsed(grid, text::parse_grid)?;
    let direct = lib(biparam_is_directed(&h, &x, settings.budget))?;
    let slices = lib(biparam_slices_directed(&h, &x, settings.budget))?;
    let title = format!("{}x{} grid into {}", h.s.len() - 1, h.t.len() - 1, x.name);
    let mut outcome = Outcome::new("biparam", Report::new(title));
    record(&mut outcome.report, "direct", &direct, expected);
    record(&mut outcome.report, "slices", &slices, expected);
    let agree = (direct.holds(), direct.is_fail()) == (slices.holds(), slices.is_fail());
    if agree {
        outcome.report.pass("routes agree", "direct and slice verdicts coincide");
    } else {
        outcome.report.fail("routes agree", format!("direct {direct}; slices {slices}"), None);
    }
    let slice_paths: Vec<PlPath> = h
        .t
        .iter()
        .map(|t| h.slice_s(t))
        .chain(h.s.iter().map(|s| h.slice_t(s)))
        .collect::<dirsat::Result<_>>()
        .map_err(|e| e.to_string())?;
    outcome.revalidated = vec![
        direct.witness().map(|w| revalidate_biparam(&h, w)),
        slices
            .witness()
            .map(|w| slice_paths.iter().any(|p| revalidate(&x, p, w, settings.budget))),
        None,
    ];
    finish(settings, outcome)
}

fn describe(fx: &Fixture) -> String {
    let directed = fx.corpus.iter().filter(|c| c.directed).count();
    let weakly = fx.corpus.iter().filter(|c| c.weakly).count();
    format!(
        "{} on {}, {}-presented, {} paths ({directed} directed, {weakly} weakly directed), subsets: {}",
        fx.name,
        fx.space.ambient,
        fx.space.presentation,
        fx.corpus.len(),
        fx.subsets.len()
    )
}

fn load_fixture(name: &str) -> Result<Fixture, String> {
    catalog::load(name).map_err(|e| match e {
        Error::DocumentationOnly(m) => m,
        e => e.to_string(),
    })
}

fn export(fx: &Fixture, dir: &Path) -> Result<(), String> {
    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    write(&dir.join(format!("{}.space", fx.name)), &text::write_space(&fx.space))?;
    let paths = text::write_paths(fx.corpus.iter().map(|c| (c.label.as_str(), &c.path)));
    write(&dir.join(format!("{}.paths", fx.name)), &paths)?;
    let mut expected = String::from("# label\tdirected\tweakly\tbasis\n");
    for c in &fx.corpus {
        expected += &format!("{}\t{}\t{}\t{}\n", c.label, c.directed, c.weakly, basis(c.basis));
    }
    write(&dir.join(format!("{}.expected", fx.name)), &expected)?;
    for (i, y) in fx.subsets.iter().enumerate() {
        write(&dir.join(format!("{}.subset{i}.open", fx.name)), &text::write_open_set(y))?;
    }
    Ok(())
}

fn basis(b: catalog::Basis) -> impl Display {
    match b {
        catalog::Basis::Characterization => "characterization",
        catalog::Basis::Construction => "construction",
        catalog::Basis::Sampled => "sampled",
    }
}

pub fn catalog(settings: &Settings, name: Option<&str>, verify: bool, export_dir: Option<&Path>) -> CmdResult {
    only_expect(settings, &[], "catalog")?;
    let names: Vec<&str> = match name {
        Some(n) => vec![n],
        None => catalog::NAMES.to_vec(),
    };
    let doc_only = name.and_then(|n| catalog::DOCUMENTATION_ONLY.iter().find(|(d, _)| *d == n));
    if let (Some(_), false, None) = (doc_only, verify, export_dir) {
        let mut report = Report::new("catalog");
        let message = load_fixture(names[0]).err().unwrap_or_default();
        let detail = message.strip_prefix(&format!("{}: ", names[0])).unwrap_or(&message);
        report.pass(names[0], detail);
        return finish(settings, Outcome::new("catalog", report));
    }
    let fixtures: Vec<Fixture> = names.iter().map(|n| load_fixture(n)).collect::<Result<_, _>>()?;
    let mut report = Report::new("catalog");
    if let Some(dir) = export_dir {
        for fx in &fixtures {
            export(fx, dir)?;
            report.pass(format!("export {}", fx.name), format!("wrote {}", dir.join(&fx.name).display()));
        }
        if name.is_none() {
            for m in catalog::morphisms() {
                let file = dir.join(format!("{}-to-{}.map", m.source, m.target));
                write(&file, &text::write_map(&m.map.map))?;
                report.pass(format!("export {}", m.name), format!("wrote {}", file.display()));
            }
        }
    }
    if verify {
        let budget = settings.budget;
        let reports: Vec<dirsat::Result<Report>> = thread::scope(|s| {
            let handles: Vec<_> = fixtures
                .iter()
                .map(|fx| s.spawn(move || catalog::verify_fixture(fx, budget)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("verification thread")).collect()
        });
        for (fx, r) in fixtures.iter().zip(reports) {
            report.extend(&format!("{}: ", fx.name), lib(r)?);
        }
    } else if export_dir.is_none() {
        for fx in &fixtures {
            report.pass(fx.name.clone(), describe(fx));
        }
        if name.is_none() {
            for (n, what) in catalog::DOCUMENTATION_ONLY {
                report.pass(*n, format!("documentation-only (non-PL predicate: {what})"));
            }
        }
    }
    let mut outcome = Outcome::new("catalog", report);
    outcome.budget_is_informational = true;
    finish(settings, outcome)
}
