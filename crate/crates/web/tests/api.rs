use dirsat_web::{catalog_names, check_polyline, circle_modes, harp_demo};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn names_list_every_fixture() {
    let v = parse(catalog_names());
    assert_eq!(v.as_array().unwrap().len(), dirsat::catalog::NAMES.len());
    assert_eq!(v[0]["name"], "interval");
}

#[test]
fn polyline_checks() {
    let v = parse(check_polyline("ex1", "0, r2; 1, r2"));
    assert_eq!(v["directed"]["holds"], false);
    assert_eq!(v["weakly"]["holds"], true);
    let v = parse(check_polyline("interval", "1/2"));
    assert_eq!(v["directed"]["holds"], true);
    assert!(parse(check_polyline("ex7", "0,0")).get("error").is_some());
    assert!(parse(check_polyline("ex1", "0, x")).get("error").is_some());
}

#[test]
fn circle_modes_differ_on_the_reversed_loop() {
    let v = parse(circle_modes("-1"));
    assert_eq!(v["local"]["holds"], false);
    assert_eq!(v["local"]["witness"]["function"]["global"], false);
    assert_eq!(v["global_only"]["holds"], true);
    let v = parse(circle_modes("1"));
    assert_eq!(v["local"]["holds"], true);
}

#[test]
fn harp_report_has_no_failures() {
    let v = parse(harp_demo(8));
    let lines = v["lines"].as_array().unwrap();
    assert!(lines.iter().all(|l| l["status"] != "fail"));
}
