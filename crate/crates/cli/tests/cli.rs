use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::OnceLock;

use dirsat::dspace::{path_is_directed, revalidate};
use dirsat::saturate::{is_weakly_directed, saturation};
use dirsat::{catalog, text, Witness};
use serde_json::Value;
use tempfile::TempDir;

fn dirsat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirsat"))
        .args(args)
        .env_remove("DIRSAT_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// The catalog exported once through the binary itself.
fn exported() -> &'static Path {
    static DIR: OnceLock<TempDir> = OnceLock::new();
    DIR.get_or_init(|| {
        let dir = tempfile::tempdir().unwrap();
        let o = dirsat(&["catalog", "--export", dir.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        dir
    })
    .path()
}

fn file(name: &str) -> String {
    exported().join(name).to_str().unwrap().to_string()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn verifying_the_catalog_succeeds() {
    let o = dirsat(&["catalog", "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("\nFAIL"));
    let o = dirsat(&["catalog", "circle", "--verify"]);
    assert!(stdout(&o).contains("reversed loop, global functions only: true"));
}

#[test]
fn documentation_only_entries_are_reported() {
    let o = dirsat(&["catalog", "ex7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("documentation-only (non-PL predicate"));
    let o = dirsat(&["catalog", "ex9", "--verify"]);
    assert_eq!(o.status.code(), Some(2));
    let o = dirsat(&["catalog", "ex12"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown fixture"));
}

#[test]
fn reversed_circle_loop_has_a_chart_witness() {
    let args = ["check-path", &file("circle.space"), &file("circle.paths"), "--path", "reversed loop"];
    let o = dirsat(&args);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.contains("weakly-directed")).unwrap();
    assert!(line.contains("weakly-directed: false, witness generator chart(1) at (0)"), "{line}");
    assert_eq!(dirsat(&[&args[..], &["--expect", "weakly"]].concat()).status.code(), Some(1));
    assert_eq!(dirsat(&[&args[..], &["--expect", "not-weakly"]].concat()).status.code(), Some(0));
}

#[test]
fn expectations_on_known_paths() {
    let o = dirsat(&[
        "check-path",
        &file("interval.space"),
        &file("interval.paths"),
        "--path",
        "constant",
        "--expect",
        "directed",
        "--expect",
        "weakly",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let row = ["check-path", &file("ex1.space"), &file("ex1.paths"), "--path", "row at r2"];
    let o = dirsat(&[&row[..], &["--expect", "not-directed", "--expect", "weakly"]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = dirsat(&[&row[..], &["--expect", "directed"]].concat());
    assert_eq!(o.status.code(), Some(1));
    let o = dirsat(&[&row[..], &["--expect", "directed", "--expect", "not-directed"]].concat());
    assert_eq!(o.status.code(), Some(2));
    let o = dirsat(&[&row[..], &["--expect", "holds"]].concat());
    assert_eq!(o.status.code(), Some(2));
}

/// Every exported corpus, checked through the binary in JSON mode, matches
/// the exported expectations, and every witness re-validates in the library.
#[test]
fn json_reports_match_expectations_and_witnesses_revalidate() {
    for name in catalog::NAMES {
        let o = dirsat(&["check-path", &file(&format!("{name}.space")), &file(&format!("{name}.paths")), "--json"]);
        let report = json(&o);
        let x = text::parse_space(&std::fs::read_to_string(file(&format!("{name}.space"))).unwrap()).unwrap();
        let paths = text::parse_paths(&std::fs::read_to_string(file(&format!("{name}.paths"))).unwrap()).unwrap();
        let expected = std::fs::read_to_string(file(&format!("{name}.expected"))).unwrap();
        let expected: Vec<Vec<&str>> = expected.lines().skip(1).map(|l| l.split('\t').collect()).collect();
        let lines = report["lines"].as_array().unwrap();
        assert_eq!(lines.len(), 2 * paths.len());
        for (k, (label, p)) in paths.iter().enumerate() {
            assert_eq!(expected[k][0], label);
            for (offset, column) in [(0, 1), (1, 2)] {
                let line = &lines[2 * k + offset];
                let detail = line["detail"].as_str().unwrap();
                let want = expected[k][column] == "true";
                match line["status"].as_str().unwrap() {
                    "pass" => assert_eq!(detail == "true", want, "{name}: {label}: {detail}"),
                    "budget" => assert!(want && expected[k][3] == "sampled", "{name}: {label}"),
                    s => panic!("{name}: {label}: {s}"),
                }
                if let Some(w) = line.get("witness") {
                    let w: Witness = serde_json::from_value(w.clone()).unwrap();
                    assert!(revalidate(&x, p, &w, dirsat::dspace::DEFAULT_BUDGET), "{name}: {label}");
                    assert_eq!(line["revalidated"], Value::Bool(true));
                }
            }
        }
    }
}

#[test]
fn saturate_round_trips() {
    let out = tempfile::tempdir().unwrap();
    for name in ["interval", "ex5", "P1"] {
        let target = out.path().join(format!("{name}.sat.space"));
        let o = dirsat(&["saturate", &file(&format!("{name}.space")), target.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let reloaded = text::parse_space(&std::fs::read_to_string(&target).unwrap()).unwrap();
        let fx = catalog::load(name).unwrap();
        let sat = saturation(&fx.space).unwrap().space;
        assert_eq!(reloaded, sat);
        for c in &fx.corpus {
            let a = path_is_directed(&reloaded, &c.path, 64).unwrap();
            let b = is_weakly_directed(&fx.space, &c.path, 64).unwrap();
            assert_eq!(a, b, "{name}: {}", c.label);
        }
    }
}

#[test]
fn configuration_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bare = dir.path().join("bare.space");
    std::fs::write(&bare, "name = bare\nambient = euclidean(1)\npresentation = predicate\npredicate = nondecreasing\n").unwrap();
    let o = dirsat(&["saturate", bare.to_str().unwrap(), dir.path().join("o").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no generator family"));

    let bad = dir.path().join("bad.paths");
    std::fs::write(&bad, "ambient = euclidean(1)\npath p\n  0 : 0\n  1 : 1/0\n").unwrap();
    let o = dirsat(&["check-path", &file("interval.space"), bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4, column 7"), "{}", stderr(&o));

    let o = dirsat(&["check-path", &file("circle.space"), &file("interval.paths")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_qualified_verdicts_need_allow_budget() {
    let args = ["check-path", &file("harp.space"), &file("harp.paths"), "--path", "chord 0"];
    let o = dirsat(&args);
    assert!(stdout(&o).contains("BUDGET"), "{}", stdout(&o));
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(dirsat(&[&args[..], &["--allow-budget"]].concat()).status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_dirsat"))
        .args(args)
        .env("DIRSAT_BUDGET", "7")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("budget 7"), "{}", stdout(&o));
    let o = dirsat(&[&args[..], &["--budget", "9"]].concat());
    assert!(stdout(&o).contains("budget 9"));
}

fn grid(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn biparam_routes_agree() {
    let dir = tempfile::tempdir().unwrap();
    let flip = grid(
        dir.path(),
        "flip.grid",
        "ambient = euclidean(2)\ns = 0, 1\nt = 0, 1\nrow 0 : 0, 1; 1, 1\nrow 1 : 0, 0; 1, 0\n",
    );
    let id = grid(
        dir.path(),
        "id.grid",
        "ambient = euclidean(2)\ns = 0, 1\nt = 0, 1\nrow 0 : 0, 0; 1, 0\nrow 1 : 0, 1; 1, 1\n",
    );
    let square = file("square.space");
    let run = |g: &Path, e: &str| dirsat(&["biparam", &square, g.to_str().unwrap(), "--expect", e]).status.code();
    assert_eq!(run(&flip, "fails"), Some(0));
    assert_eq!(run(&flip, "holds"), Some(1));
    assert_eq!(run(&id, "holds"), Some(0));
    let report = json(&dirsat(&["biparam", &square, flip.to_str().unwrap(), "--json"]));
    assert_eq!(report["lines"][0]["witness"]["kind"], "bi_param");
    assert_eq!(report["lines"][0]["revalidated"], Value::Bool(true));
    assert_eq!(report["lines"][2]["status"], "pass");
}

#[test]
fn catalog_morphisms_check_through_the_binary() {
    for m in catalog::morphisms() {
        let map = file(&format!("{}-to-{}.map", m.source, m.target));
        for mode in ["path", "function"] {
            let o = dirsat(&[
                "check-morphism",
                &file(&format!("{}.space", m.source)),
                &file(&format!("{}.space", m.target)),
                &map,
                &file(&format!("{}.paths", m.source)),
                "--mode",
                mode,
                "--expect",
                "holds",
                "--allow-budget",
            ]);
            assert_eq!(o.status.code(), Some(0), "{} {mode}: {}{}", m.name, stdout(&o), stderr(&o));
        }
    }
    // x -> -x reverses the interval.
    let dir = tempfile::tempdir().unwrap();
    let flip = dir.path().join("flip.map");
    std::fs::write(&flip, "source = euclidean(1)\ntarget = euclidean(1)\ncell * : -1 | 0\n").unwrap();
    let o = dirsat(&[
        "check-morphism",
        &file("interval.space"),
        &file("interval.space"),
        flip.to_str().unwrap(),
        &file("interval.paths"),
        "--json",
    ]);
    let report = json(&o);
    assert_eq!(report["lines"][0]["witness"]["kind"], "image");
    assert_eq!(report["lines"][0]["revalidated"], Value::Bool(true));
}

#[test]
fn product_and_reversor_write_loadable_spaces() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sq.space");
    let o = dirsat(&["product", &file("interval.space"), &file("interval.space"), out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = dirsat(&["check-path", out.to_str().unwrap(), &file("square.paths")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let rev = dir.path().join("r.space");
    let o = dirsat(&[
        "reversor",
        &file("circle.space"),
        rev.to_str().unwrap(),
        "--check",
        &file("circle.paths"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("reversed loop: directed: true"));
    assert!(out.contains("loop: weakly-directed: false, witness generator 1-chart"));
    let back = dir.path().join("rr.space");
    dirsat(&["reversor", rev.to_str().unwrap(), back.to_str().unwrap()]);
    let rr = text::parse_space(&std::fs::read_to_string(back).unwrap()).unwrap();
    assert_eq!(rr.name, "circle");
}
