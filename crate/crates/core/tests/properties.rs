mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{fixed, oracle_cmp, random_grid, random_polyline};
use dirsat::catalog;
use dirsat::constructs::{biparam_is_directed, biparam_slices_directed, product, directed_interval, revalidate_biparam};
use dirsat::dfun::{compose, is_monotone_along, witness_is_genuine, AffineForm, TestFunction};
use dirsat::dspace::{path_is_directed, PathPredicate, DEFAULT_BUDGET};
use dirsat::plgeom::{Ambient, AxisBox, OpenSet, PlPath};
use dirsat::saturate::is_weakly_directed;
use dirsat::{Scalar, Verdict};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-30i64..30, 1i64..9, -30i64..30, 1i64..9)
        .prop_map(|(a, b, c, d)| Scalar::ratio(a, b) + Scalar::ratio(c, d) * Scalar::sqrt2())
}

fn grid() -> impl Strategy<Value = Scalar> {
    (-4i64..=8).prop_map(|n| Scalar::ratio(n, 4))
}

fn plane_path() -> impl Strategy<Value = PlPath> {
    prop::collection::vec((grid(), grid()), 2..6).prop_map(|pts| {
        PlPath::polyline(&Ambient::euclidean(2), pts.into_iter().map(|(x, y)| vec![x, y]).collect()).unwrap()
    })
}

fn line_path() -> impl Strategy<Value = PlPath> {
    prop::collection::vec(grid(), 2..6)
        .prop_map(|pts| PlPath::polyline(&Ambient::euclidean(1), pts.into_iter().map(|x| vec![x]).collect()).unwrap())
}

fn torus_path() -> impl Strategy<Value = PlPath> {
    prop::collection::vec((grid(), grid()), 2..5).prop_map(|pts| {
        PlPath::polyline(&Ambient::torus(2), pts.into_iter().map(|(x, y)| vec![x, y]).collect()).unwrap()
    })
}

/// Break points, their midpoints and a few fixed fractions.
fn sample_params(p: &PlPath) -> Vec<Scalar> {
    let mut ts: Vec<Scalar> = p.breaks().to_vec();
    for w in p.breaks().windows(2) {
        ts.push(w[0].midpoint(&w[1]));
    }
    for k in 1..32 {
        ts.push(Scalar::ratio(k, 32));
    }
    ts.sort();
    ts.dedup();
    ts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn compare_matches_fixed_point(a in scalar(), b in scalar()) {
        if let Some(o) = oracle_cmp(&fixed(&a), &fixed(&b)) {
            prop_assert_eq!(a.cmp(&b), o);
        }
    }

    #[test]
    fn literals_round_trip(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn preimage_matches_pointwise_membership(p in plane_path(), lo in (grid(), grid()), w in (1i64..8, 1i64..8)) {
        let hi = vec![&lo.0 + &Scalar::ratio(w.0, 4), &lo.1 + &Scalar::ratio(w.1, 4)];
        let bx = AxisBox::new(vec![lo.0.clone(), lo.1.clone()], hi).unwrap();
        let set = OpenSet::single(Ambient::euclidean(2), bx.clone()).unwrap();
        let pre = p.preimage(&set);
        for t in sample_params(&p) {
            prop_assert_eq!(pre.contains(&t), bx.contains_open(&p.lift_at(&t).unwrap()), "t = {}", t);
        }
    }

    #[test]
    fn concatenation_is_associative_up_to_reparameterization(a in plane_path(), b in plane_path(), c in plane_path()) {
        let shift = |q: &PlPath, to: &[Scalar]| {
            let d: Vec<Scalar> = to.iter().zip(q.start_lift()).map(|(x, y)| x - y).collect();
            q.shift_lift(&d)
        };
        let b = shift(&b, a.end_lift());
        let c = shift(&c, b.end_lift());
        let left = a.concat(&b).unwrap().concat(&c).unwrap();
        let right = a.concat(&b.concat(&c).unwrap()).unwrap();
        prop_assert_eq!(left.lifts(), right.lifts());
        prop_assert_eq!(left.start_lift(), right.start_lift());
    }

    #[test]
    fn torus_verdicts_ignore_the_lift(p in torus_path(), k in (-2i64..3, -2i64..3)) {
        let q = p.shift_lift(&[Scalar::int(k.0), Scalar::int(k.1)]);
        for name in ["ex2", "ex4", "ex6", "ex11"] {
            let x = catalog::load(name).unwrap().space;
            let d = (path_is_directed(&x, &p, DEFAULT_BUDGET).unwrap(), path_is_directed(&x, &q, DEFAULT_BUDGET).unwrap());
            prop_assert_eq!(d.0.holds(), d.1.holds(), "{} directed", name);
            let w = (is_weakly_directed(&x, &p, DEFAULT_BUDGET).unwrap(), is_weakly_directed(&x, &q, DEFAULT_BUDGET).unwrap());
            prop_assert_eq!(w.0.holds(), w.1.holds(), "{} weakly directed", name);
        }
    }

    #[test]
    fn composition_is_exact(p in plane_path(), a in (-2i64..3, -2i64..3), c in grid(), clamp in any::<bool>()) {
        let dom = OpenSet::single(Ambient::euclidean(2), AxisBox::new(vec![Scalar::int(-1); 2], vec![Scalar::int(2); 2]).unwrap()).unwrap();
        let form = AffineForm::new(vec![Scalar::int(a.0), Scalar::int(a.1)], -c);
        let f = TestFunction::affine("f", dom, form, clamp);
        let g = compose(&f, &p).unwrap();
        for t in sample_params(&p) {
            let direct = f.eval(&p.lift_at(&t).unwrap());
            prop_assert_eq!(g.value(&t), direct, "t = {}", t);
        }
    }

    /// Sampled decreases force a failure; every failure carries a genuine
    /// witness.
    #[test]
    fn monotonicity_against_sampling(p in plane_path(), a in (-2i64..3, -2i64..3), c in grid()) {
        let dom = OpenSet::single(Ambient::euclidean(2), AxisBox::new(vec![Scalar::int(-3); 2], vec![Scalar::int(4); 2]).unwrap()).unwrap();
        let form = AffineForm::new(vec![Scalar::int(a.0), Scalar::int(a.1)], -c);
        let f = TestFunction::affine("f", dom, form, true);
        let verdict = is_monotone_along(&f, &p).unwrap();
        let ts = sample_params(&p);
        let vals: Vec<Scalar> = ts.iter().map(|t| f.eval(&p.lift_at(t).unwrap()).unwrap()).collect();
        let sampled_decrease = vals.windows(2).any(|w| w[1] < w[0]);
        match &verdict {
            Verdict::Holds => prop_assert!(!sampled_decrease),
            Verdict::Fails { witness } => match witness.as_ref() {
                dirsat::Witness::Generator { t1, t2, .. } => prop_assert!(witness_is_genuine(&f, &p, t1, t2)),
                other => prop_assert!(false, "unexpected witness {:?}", other),
            },
            Verdict::NoViolationFound { .. } => prop_assert!(false, "single functions are decided"),
        }
        if sampled_decrease {
            prop_assert!(verdict.is_fail());
        }
    }

    #[test]
    fn interval_predicate_agrees_with_generators(p in line_path()) {
        let x = directed_interval();
        let by_predicate = PathPredicate::Nondecreasing.accepts(&p);
        let by_generators = is_weakly_directed(&x, &p, DEFAULT_BUDGET).unwrap();
        prop_assert!(by_generators.is_certified());
        prop_assert_eq!(by_predicate, by_generators.holds());
    }

    #[test]
    fn square_predicate_agrees_with_generators(p in plane_path()) {
        let sq = product(&directed_interval(), &directed_interval()).unwrap();
        let d = path_is_directed(&sq, &p, DEFAULT_BUDGET).unwrap();
        let w = is_weakly_directed(&sq, &p, DEFAULT_BUDGET).unwrap();
        prop_assert!(w.is_certified());
        prop_assert_eq!(d.holds(), w.holds());
    }

    #[test]
    fn directed_implies_weakly_directed(p in plane_path()) {
        for name in ["ex1", "ex3", "ex5", "ex8", "ex10", "P1", "square"] {
            let x = catalog::load(name).unwrap().space;
            if path_is_directed(&x, &p, DEFAULT_BUDGET).unwrap().holds() {
                prop_assert!(is_weakly_directed(&x, &p, DEFAULT_BUDGET).unwrap().passes(), "{}", name);
            }
        }
    }

    #[test]
    fn saturation_oracles_on_random_paths(p in plane_path()) {
        for name in ["ex1", "ex3", "ex5", "ex8", "ex10"] {
            let x = catalog::load(name).unwrap().space;
            let oracle = x.oracle.clone().unwrap();
            let w = is_weakly_directed(&x, &p, DEFAULT_BUDGET).unwrap();
            prop_assert!(w.is_certified(), "{}", name);
            prop_assert_eq!(w.holds(), oracle.accepts(&p), "{}", name);
        }
    }
}

#[test]
fn biparam_matches_slices_on_random_grids() {
    let mut rng = StdRng::seed_from_u64(7);
    let sq = product(&directed_interval(), &directed_interval()).unwrap();
    let mut held = 0;
    for _ in 0..60 {
        let h = random_grid(&mut rng);
        let direct = biparam_is_directed(&h, &sq, DEFAULT_BUDGET).unwrap();
        let slices = biparam_slices_directed(&h, &sq, DEFAULT_BUDGET).unwrap();
        assert!(direct.is_certified() && slices.is_certified());
        assert_eq!(direct.holds(), slices.holds(), "{h:?}");
        held += direct.holds() as usize;
        if let Some(w) = direct.witness() {
            assert!(revalidate_biparam(&h, w));
        }
    }
    assert!(held > 5 && held < 55, "{held} of 60 grids directed");
}

#[test]
fn random_plane_paths_exercise_both_outcomes() {
    let mut rng = StdRng::seed_from_u64(11);
    let x = catalog::load("ex10").unwrap().space;
    let (mut yes, mut no) = (0, 0);
    for _ in 0..50 {
        let p = random_polyline(&mut rng, &Ambient::euclidean(2), 4);
        if is_weakly_directed(&x, &p, DEFAULT_BUDGET).unwrap().holds() {
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes > 0 && no > 0, "{yes} accepted, {no} rejected");
}
