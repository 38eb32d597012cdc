use dirsat::catalog;
use dirsat::dspace::{path_is_directed, DEFAULT_BUDGET};
use dirsat::saturate::is_weakly_directed;
use dirsat::{Verdict, Witness};

#[test]
fn fixtures_survive_json() {
    for fx in catalog::load_all() {
        let text = serde_json::to_string(&fx).unwrap();
        let back: catalog::Fixture = serde_json::from_str(&text).unwrap();
        assert_eq!(back, fx);
    }
}

#[test]
fn verdicts_and_witnesses_survive_json() {
    let mut witnesses = 0;
    for fx in catalog::load_all() {
        for c in &fx.corpus {
            for v in [
                path_is_directed(&fx.space, &c.path, DEFAULT_BUDGET).unwrap(),
                is_weakly_directed(&fx.space, &c.path, DEFAULT_BUDGET).unwrap(),
            ] {
                let back: Verdict = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
                assert_eq!(back, v);
                if let Some(w) = v.witness() {
                    let back: Witness = serde_json::from_value(serde_json::to_value(w).unwrap()).unwrap();
                    assert_eq!(&back, w);
                    witnesses += 1;
                }
            }
        }
    }
    assert!(witnesses > 100, "{witnesses}");
}

#[test]
fn scalars_serialize_as_literals() {
    let s: dirsat::Scalar = "1/2 + 3 r2".parse().unwrap();
    let text = serde_json::to_string(&s).unwrap();
    assert_eq!(serde_json::from_str::<dirsat::Scalar>(&text).unwrap(), s);
    assert!(text.contains("r2"), "{text}");
}
