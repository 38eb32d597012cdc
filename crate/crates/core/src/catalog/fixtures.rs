use crate::constructs::{directed_interval, glue_p1, product};
use crate::dspace::{DSpace, GeneratorFamily, PathPredicate, Schema};
use crate::exactnum::Scalar;
use crate::plgeom::{Ambient, AxisBox, OpenSet, PlPath};

use super::harp::{harp_space, FIXTURE_CHORDS};
use super::{Basis, CorpusPath, Fixture};

/// Parses `"x,y; x,y; ..."` in the literal grammar into a polyline.
pub(crate) fn polyline(ambient: &Ambient, text: &str) -> PlPath {
    let points: Vec<Vec<Scalar>> = text
        .split(';')
        .map(|pt| pt.split(',').map(|c| c.trim().parse().expect("corpus literal")).collect())
        .collect();
    PlPath::polyline(ambient, points).expect("corpus path")
}

/// Corpus rows: label, vertices, directed, weakly directed.
type Row<'a> = (&'a str, &'a str, bool, bool);

fn corpus(ambient: &Ambient, basis: Basis, rows: &[Row]) -> Vec<CorpusPath> {
    rows.iter()
        .map(|&(label, text, directed, weakly)| CorpusPath {
            label: label.into(),
            path: polyline(ambient, text),
            directed,
            weakly,
            basis,
        })
        .collect()
}

fn cube(ambient: &Ambient, lo: &str, hi: &str) -> OpenSet {
    let n = ambient.dim();
    let v = |s: &str| vec![s.parse::<Scalar>().expect("literal"); n];
    OpenSet::single(ambient.clone(), AxisBox::new(v(lo), v(hi)).expect("box")).expect("open set")
}

fn space(name: &str, ambient: Ambient, predicate: PathPredicate, schemas: Vec<Schema>, complete: bool, oracle: Option<PathPredicate>) -> DSpace {
    let x = DSpace::predicate_presented(name, ambient, predicate)
        .and_then(|x| x.with_generators(GeneratorFamily::new(schemas, complete)))
        .expect("static presentation");
    match oracle {
        Some(o) => x.with_oracle(o).expect("oracle"),
        None => x,
    }
}

fn along(monotone: bool, rational_level: bool) -> PathPredicate {
    PathPredicate::Along {
        axis: 0,
        monotone,
        rational_level,
    }
}

fn fixture(name: &str, space: DSpace, corpus: Vec<CorpusPath>, notes: &str, subsets: Vec<OpenSet>) -> Fixture {
    Fixture {
        name: name.into(),
        space,
        corpus,
        notes: notes.into(),
        subsets,
    }
}

const INTERVAL: &[Row] = &[
    ("rise", "0; 1", true, true),
    ("constant", "1/2; 1/2", true, true),
    ("pause", "0; 1/2; 1/2; 1", true, true),
    ("fall", "1; 0", false, false),
    ("tent", "0; 1; 0", false, false),
    ("dip", "0; -1/2; 1", false, false),
    ("irrational end", "0; r2", true, true),
    ("long", "-3; -1; 2; 5", true, true),
    ("negative", "-2; -1", true, true),
    ("late fall", "0; 1; 1; 1/2", false, false),
    ("irrational fall", "r2; 1", false, false),
    ("thirds", "0; 1/3; 2/3; 1", true, true),
];

const CIRCLE: &[Row] = &[
    ("loop", "0; 1", true, true),
    ("reversed loop", "1; 0", false, false),
    ("half turn", "0; 1/2", true, true),
    ("double loop", "0; 2", true, true),
    ("constant", "1/3; 1/3", true, true),
    ("back and forth", "0; 1/2; 1/4", false, false),
    ("small fall", "1/4; 1/8", false, false),
    ("across the seam", "3/4; 5/4", true, true),
    ("back across the seam", "5/4; 3/4", false, false),
    ("irrational turn", "0; r2", true, true),
    ("pause", "0; 1/2; 1/2; 1", true, true),
    ("negative lift", "-1/2; 0", true, true),
];

const EX1: &[Row] = &[
    ("row at 0", "0,0; 1,0", true, true),
    ("backwards row at 1/2", "1,1/2; -1,1/2", true, true),
    ("row at r2", "0,r2; 1,r2", false, true),
    ("zigzag row at 1+r2", "0,1+r2; 2,1+r2; 1,1+r2", false, true),
    ("row at r2/2", "-1,1/2 r2; 0,1/2 r2", false, true),
    ("vertical", "0,0; 0,1", false, false),
    ("diagonal", "0,0; 1,1", false, false),
    ("staircase", "0,0; 1,0; 1,1", false, false),
    ("constant", "1/3,1/3; 1/3,1/3", true, true),
    ("constant at irrational height", "r2,r2; r2,r2", true, true),
    ("irrational abscissae at 2", "r2,2; 0,2", true, true),
    ("row then drop", "0,0; 1,0; 1,-1/2", false, false),
    ("pausing row at 1", "0,1; 1/2,1; 1/2,1; 1,1", true, true),
];

const EX2: &[Row] = &[
    ("loop row at 0", "0,0; 1,0", true, true),
    ("backwards row at 1/2", "1,1/2; 0,1/2", true, true),
    ("row at lift 3/2", "0,3/2; 1/2,3/2", true, true),
    ("row at r2", "0,r2; 1,r2", false, true),
    ("seam row at r2/2", "3/4,1/2 r2; 5/4,1/2 r2", false, true),
    ("vertical loop", "0,0; 0,1", false, false),
    ("diagonal loop", "0,0; 1,1", false, false),
    ("staircase", "0,0; 1/2,0; 1/2,1/2", false, false),
    ("constant", "1/3,1/3; 1/3,1/3", true, true),
    ("constant at irrational height", "1/2 r2,1/2 r2; 1/2 r2,1/2 r2", true, true),
    ("double loop row", "0,1/3; 2,1/3", true, true),
    ("short vertical", "1/4,1/4; 1/4,1/8", false, false),
];

const EX3: &[Row] = &[
    ("rising row at 0", "0,0; 1,0", true, true),
    ("backwards row", "1,1/2; -1,1/2", false, false),
    ("rising row at r2", "0,r2; 1,r2", false, true),
    ("long rising row at 1+r2", "-1,1+r2; 2,1+r2", false, true),
    ("backwards row at r2", "1,r2; 0,r2", false, false),
    ("vertical", "0,0; 0,1", false, false),
    ("diagonal", "0,0; 1,1", false, false),
    ("constant", "1/3,1/3; 1/3,1/3", true, true),
    ("constant at irrational height", "r2,r2; r2,r2", true, true),
    ("pausing row at 1", "0,1; 1/2,1; 1/2,1; 1,1", true, true),
    ("row then back", "0,0; 1,0; 1/2,0", false, false),
    ("irrational abscissae at 2", "0,2; r2,2", true, true),
    ("pausing row at r2/2", "0,1/2 r2; 1/2,1/2 r2; 1/2,1/2 r2; 1,1/2 r2", false, true),
];

const EX4: &[Row] = &[
    ("loop row at 0", "0,0; 1,0", true, true),
    ("backwards row", "1,1/2; 0,1/2", false, false),
    ("loop row at r2", "0,r2; 1,r2", false, true),
    ("seam row at r2/2", "3/4,1/2 r2; 5/4,1/2 r2", false, true),
    ("backwards row at r2", "1/2,r2; 1/4,r2", false, false),
    ("vertical loop", "0,0; 0,1", false, false),
    ("diagonal loop", "0,0; 1,1", false, false),
    ("constant", "1/3,1/3; 1/3,1/3", true, true),
    ("constant at irrational height", "r2,r2; r2,r2", true, true),
    ("double loop at lift 3/2", "0,3/2; 2,3/2", true, true),
    ("row then back", "0,0; 1/2,0; 1/4,0", false, false),
    ("seam row at 1/3", "3/4,1/3; 5/4,1/3", true, true),
];

const EX5: &[Row] = &[
    ("row", "0,0; 1,0", true, true),
    ("vertical", "0,0; 0,1", true, true),
    ("staircase back", "1,1; 0,1; 0,0", true, true),
    ("diagonal", "0,0; 1,1", false, true),
    ("slope 1/2", "0,0; 2,1", false, true),
    ("irrational slope", "0,0; r2,1", false, true),
    ("constant", "1/3,1/3; 1/3,1/3", true, true),
    ("long staircase", "0,0; 1,0; 1,1; 2,1", true, true),
    ("zigzag", "0,0; 1,1; 2,0", false, true),
    ("staircase then diagonal", "0,0; 1,0; 2,1", false, true),
    ("row at r2", "0,r2; 1,r2", true, true),
    ("vertical back and forth", "0,0; 0,1; 0,-1", true, true),
];

const EX6: &[Row] = &[
    ("row loop", "0,0; 1,0", true, true),
    ("vertical loop", "0,0; 0,1", true, true),
    ("staircase loop", "0,0; 1,0; 1,1", true, true),
    ("diagonal loop", "0,0; 1,1", false, true),
    ("slope 1/2", "0,0; 2,1", false, true),
    ("irrational slope", "0,0; r2,1", false, true),
    ("constant", "1/3,1/3; 1/3,1/3", true, true),
    ("staircase across the seam", "3/4,3/4; 5/4,3/4; 5/4,5/4", true, true),
    ("zigzag", "0,0; 1/2,1/2; 1,0", false, true),
    ("vertical down", "1/2,1/2; 1/2,-1/2", true, true),
    ("row then diagonal", "0,0; 1/2,0; 1,1/2", false, true),
    ("constant at r2", "r2,r2; r2,r2", true, true),
];

const EX8: &[Row] = &[
    ("slope 1/2", "0,0; 2,1", true, true),
    ("row", "0,0; 1,0", true, true),
    ("diagonal", "0,0; 1,1", true, true),
    ("vertical", "0,0; 0,1", false, true),
    ("slope r2", "0,0; 1,r2", false, true),
    ("rational zigzag", "0,0; 1,2; 3,1", true, true),
    ("irrational start", "r2,0; 1+r2,1", true, true),
    ("constant", "1/3,1/3; 1/3,1/3", true, true),
    ("diagonal then vertical", "0,0; 1,1; 1,2", false, true),
    ("row then slope r2", "0,0; 1,0; 2,r2", false, true),
    ("slope -3/2", "0,0; 2,-3", true, true),
    ("backwards diagonal", "2,1; 0,0", true, true),
];

const EX10: &[Row] = &[
    ("rising row", "0,0; 1,0", true, true),
    ("rising vertical", "0,0; 0,1", true, true),
    ("staircase", "0,0; 1,0; 1,1", true, true),
    ("diagonal", "0,0; 1,1", false, true),
    ("slope 1/2", "0,0; 2,1", false, true),
    ("irrational slope", "0,0; r2,1", false, true),
    ("backwards row", "1,0; 0,0", false, false),
    ("falling vertical", "0,1; 0,0", false, false),
    ("antidiagonal", "0,1; 1,0", false, false),
    ("constant", "1/3,1/3; 1/3,1/3", true, true),
    ("staircase with a step back", "0,0; 1,0; 1,1; 1/2,1", false, false),
    ("diagonal then row", "0,0; 1,1; 2,1", false, true),
];

const EX11: &[Row] = &[
    ("row loop", "0,0; 1,0", true, true),
    ("vertical loop", "0,0; 0,1", true, true),
    ("staircase loop", "0,0; 1,0; 1,1", true, true),
    ("diagonal loop", "0,0; 1,1", false, true),
    ("slope 1/2", "0,0; 2,1", false, true),
    ("irrational slope", "0,0; r2,1", false, true),
    ("backwards row", "1,0; 0,0", false, false),
    ("short fall", "0,1/2; 0,1/4", false, false),
    ("antidiagonal", "0,1; 1,0", false, false),
    ("constant", "1/3,1/3; 1/3,1/3", true, true),
    ("staircase across the seam", "3/4,3/4; 5/4,3/4; 5/4,5/4", true, true),
    ("back across the seam", "5/4,0; 3/4,0", false, false),
];

const P1: &[Row] = &[
    ("diagonal", "0,0; 1,1", false, true),
    ("row", "0,0; 1,0", true, true),
    ("vertical", "0,0; 0,1", true, true),
    ("staircase", "0,0; 1,0; 1,1", true, true),
    ("staircase back", "1,1; 1,0; 0,0", true, true),
    ("slope 1/2", "0,0; 2,1", false, true),
    ("irrational slope", "0,0; r2,1", false, true),
    ("constant", "1/3,1/3; 1/3,1/3", true, true),
    ("zigzag", "0,0; 1,1; 2,0", false, true),
    ("staircase then diagonal", "0,0; 1,0; 2,1", false, true),
    ("long staircase", "0,0; 1,0; 1,1; 2,1", true, true),
    ("row at r2", "0,r2; 1,r2", true, true),
];

const LINE_L: &[Row] = &[
    ("positive rise", "1; 2", true, true),
    ("negative fall", "-1; -2", true, true),
    ("crossing", "-1; 1", false, true),
    ("leaving 0", "0; 1", false, true),
    ("constant at 0", "0; 0", true, true),
    ("positive back and forth", "1; 3; 1/2", true, true),
    ("irrational crossing", "-r2; 1", false, true),
    ("reaching 0", "-1; 0", false, true),
    ("constant at 5", "5; 5", true, true),
    ("negative tent", "-3; -1; -2", true, true),
    ("irrational positive", "r2; 2", true, true),
    ("crossing twice", "1; -1; 1", false, true),
];

const SQUARE: &[Row] = &[
    ("diagonal", "0,0; 1,1", true, true),
    ("staircase", "0,0; 1,0; 1,1", true, true),
    ("antidiagonal", "0,1; 1,0", false, false),
    ("falling diagonal", "1,1; 0,0", false, false),
    ("constant", "1/3,1/3; 1/3,1/3", true, true),
    ("irrational slope", "0,0; r2,1", true, true),
    ("rise then drop", "0,0; 1,1; 2,1/2", false, false),
    ("pause", "0,0; 1/2,1/2; 1/2,1/2; 1,1", true, true),
    ("backwards row", "1,0; 0,0", false, false),
    ("long", "0,0; 1,2; 3,3", true, true),
    ("right and down", "0,0; 1,-1", false, false),
    ("vertical", "0,0; 0,1", true, true),
];

pub(super) fn build(name: &str) -> Option<Fixture> {
    let line = Ambient::euclidean(1);
    let plane = Ambient::euclidean(2);
    let circle = Ambient::torus(1);
    let torus = Ambient::torus(2);
    let c = Basis::Characterization;
    let horizontal = Some(along(false, false));
    let rising_horizontal = Some(along(true, false));
    let y = || Schema::affine(&[0, 1]);
    let x = || Schema::affine(&[1, 0]);
    let ex1_gens = || vec![y(), y().reversed()];
    let ex3_gens = || vec![x(), y(), y().reversed()];
    let fx = match name {
        "interval" => fixture(
            "interval",
            directed_interval(),
            corpus(&line, c, INTERVAL),
            "the directed interval, modelled on the whole line",
            vec![cube(&line, "-1/2", "3/2"), cube(&line, "-4", "0")],
        ),
        "circle" => {
            let x = space(
                "circle",
                circle.clone(),
                PathPredicate::Nondecreasing,
                vec![Schema::affine(&[1]), Schema::Const],
                true,
                Some(PathPredicate::Nondecreasing),
            );
            let mut x = x.declared_saturated(true);
            if let Some(g) = x.generators.as_mut() {
                g.global_complete = true;
            }
            fixture(
                "circle",
                x,
                corpus(&circle, c, CIRCLE),
                "the directed circle: paths with non-decreasing lifts, tested against local charts",
                vec![cube(&circle, "-1/4", "1/2"), cube(&circle, "1/8", "7/8")],
            )
        }
        "ex1" => fixture(
            "ex1",
            space("ex1", plane.clone(), along(false, true), ex1_gens(), true, horizontal),
            corpus(&plane, c, EX1),
            "horizontal paths at rational height; weakly directed paths are the horizontal ones",
            vec![cube(&plane, "-1/2", "3/2")],
        ),
        "ex2" => fixture(
            "ex2",
            space("ex2", torus.clone(), along(false, true), ex1_gens(), true, horizontal),
            corpus(&torus, c, EX2),
            "horizontal paths at rational height on the torus",
            vec![cube(&torus, "-1/8", "3/4")],
        ),
        "ex3" => fixture(
            "ex3",
            space("ex3", plane.clone(), along(true, true), ex3_gens(), true, rising_horizontal),
            corpus(&plane, c, EX3),
            "non-decreasing horizontal paths at rational height",
            vec![cube(&plane, "-1/2", "3/2")],
        ),
        "ex4" => fixture(
            "ex4",
            space("ex4", torus.clone(), along(true, true), ex3_gens(), true, rising_horizontal),
            corpus(&torus, c, EX4),
            "locally non-decreasing horizontal paths at rational height on the torus",
            vec![cube(&torus, "-1/8", "3/4")],
        ),
        "ex5" => fixture(
            "ex5",
            space("ex5", plane.clone(), PathPredicate::PiecewiseAxis { monotone: false }, vec![Schema::Const], true, Some(PathPredicate::Any)),
            corpus(&plane, c, EX5),
            "piecewise horizontal or vertical paths; every path is weakly directed",
            vec![cube(&plane, "-1/2", "3/2")],
        ),
        "ex6" => fixture(
            "ex6",
            space("ex6", torus.clone(), PathPredicate::PiecewiseAxis { monotone: false }, vec![Schema::Const], true, Some(PathPredicate::Any)),
            corpus(&torus, c, EX6),
            "piecewise horizontal or vertical paths on the torus",
            vec![cube(&torus, "-1/8", "3/4")],
        ),
        "ex8" => fixture(
            "ex8",
            space("ex8", plane.clone(), PathPredicate::RationalSlope, vec![Schema::Const], true, Some(PathPredicate::Any)),
            corpus(&plane, c, EX8),
            "piecewise rectilinear paths with rational slope",
            vec![cube(&plane, "-1/2", "5/2")],
        ),
        "ex10" => fixture(
            "ex10",
            space("ex10", plane.clone(), PathPredicate::PiecewiseAxis { monotone: true }, vec![x(), y()], true, Some(PathPredicate::Nondecreasing)),
            corpus(&plane, c, EX10),
            "piecewise horizontal or vertical non-decreasing paths",
            vec![cube(&plane, "-1/2", "3/2")],
        ),
        "ex11" => fixture(
            "ex11",
            space("ex11", torus.clone(), PathPredicate::PiecewiseAxis { monotone: true }, vec![x(), y()], true, Some(PathPredicate::Nondecreasing)),
            corpus(&torus, c, EX11),
            "piecewise horizontal or vertical locally non-decreasing paths on the torus",
            vec![cube(&torus, "-1/8", "3/4")],
        ),
        "P1" => fixture(
            "P1",
            glue_p1(),
            corpus(&plane, Basis::Construction, P1),
            "the plane glued from horizontal and vertical paths; not saturated",
            vec![cube(&plane, "-1/2", "3/2")],
        ),
        "line_L" => fixture(
            "line_L",
            space("line_L", line.clone(), PathPredicate::AvoidZero, vec![Schema::Const], true, Some(PathPredicate::Any)),
            corpus(&line, c, LINE_L),
            "the line whose directed paths are constant or avoid 0",
            vec![cube(&line, "1/2", "4"), cube(&line, "-4", "-1/2")],
        ),
        "harp" => {
            let (x, corpus) = harp_space(FIXTURE_CHORDS);
            fixture(
                "harp",
                x,
                corpus,
                "chords of the twisted cubic from rational to irrational parameters (sampled)",
                vec![],
            )
        }
        "square" => fixture(
            "square",
            product(&directed_interval(), &directed_interval()).expect("product").renamed("square"),
            corpus(&plane, Basis::Construction, SQUARE),
            "the product of two directed intervals",
            vec![cube(&plane, "-1/2", "3/2")],
        ),
        _ => return None,
    };
    Some(fx)
}
