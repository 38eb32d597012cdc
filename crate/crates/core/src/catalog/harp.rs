use crate::dspace::{generator_verdict, path_is_directed, DSpace, GeneratorFamily, PathPredicate, Schema, Scope};
use crate::error::Result;
use crate::exactnum::Scalar;
use crate::plgeom::{Ambient, PlPath};
use crate::report::Report;
use crate::saturate::synthesize_generators;

use super::{Basis, CorpusPath};

/// Chord count of the `harp` fixture.
pub(crate) const FIXTURE_CHORDS: usize = 6;

/// `n` chord parameter pairs `(a, b)`: `a` rational, `b = a + r2 / (4 (1 + i mod 3))`.
pub fn harp_chords(n: usize) -> Vec<(Scalar, Scalar)> {
    (0..n)
        .map(|i| {
            let a = Scalar::ratio(-1, 2) + Scalar::ratio(2 * i as i64, n as i64);
            let b = &a + &(Scalar::sqrt2() / Scalar::int(4 * (1 + (i % 3) as i64)));
            (a, b)
        })
        .collect()
}

fn cubic(t: &Scalar) -> Vec<Scalar> {
    crate::dspace::cubic_point(t)
}

fn on_chord(a: &Scalar, b: &Scalar, lambda: &Scalar) -> Vec<Scalar> {
    let (ca, cb) = (cubic(a), cubic(b));
    ca.iter().zip(&cb).map(|(x, y)| x + &(lambda * &(y - x))).collect()
}

fn chord_path(chords: &[(Scalar, Scalar)], i: usize, lambdas: &[(i64, i64)]) -> PlPath {
    let (a, b) = &chords[i % chords.len()];
    let pts = lambdas.iter().map(|&(n, d)| on_chord(a, b, &Scalar::ratio(n, d))).collect();
    PlPath::polyline(&Ambient::euclidean(3), pts).expect("chord path")
}

/// Label, chord index, chord parameters as fractions, directed, weakly directed.
type ChordRow = (&'static str, usize, &'static [(i64, i64)], bool, bool);

/// The sampled harp with `n` chords and a corpus of chord paths. The only
/// generators are thresholds of the first coordinate, which increases along
/// every chord; the family is not complete.
pub fn harp_space(n: usize) -> (DSpace, Vec<CorpusPath>) {
    let chords = harp_chords(n.max(1));
    let x = DSpace::predicate_presented(
        "harp",
        Ambient::euclidean(3),
        PathPredicate::Harp { chords: chords.clone() },
    )
    .and_then(|x| x.with_generators(GeneratorFamily::new(vec![Schema::affine(&[1, 0, 0])], false)))
    .expect("static presentation");
    let rows: [ChordRow; 12] = [
        ("chord 0", 0, &[(0, 1), (1, 1)], true, true),
        ("middle of chord 0", 0, &[(1, 4), (3, 4)], true, true),
        ("chord 0 backwards", 0, &[(1, 1), (0, 1)], false, false),
        ("chord 1 with a pause", 1, &[(0, 1), (1, 2), (1, 2), (1, 1)], true, true),
        ("chord 2", 2, &[(0, 1), (1, 1)], true, true),
        ("half of chord 3 backwards", 3, &[(1, 2), (0, 1)], false, false),
        ("constant at the start of chord 0", 0, &[(0, 1), (0, 1)], true, true),
        ("constant inside chord 4", 4, &[(1, 3), (1, 3)], true, true),
        ("chord 4 there and back", 4, &[(0, 1), (1, 1), (1, 2)], false, false),
        ("first half of chord 4", 4, &[(0, 1), (1, 2)], true, true),
        ("chord 5", 5, &[(0, 1), (1, 1)], true, true),
        ("chord 5 backwards", 5, &[(1, 1), (0, 1)], false, false),
    ];
    let corpus = rows
        .iter()
        .map(|&(label, i, lambdas, directed, weakly)| CorpusPath {
            label: label.into(),
            path: chord_path(&chords, i, lambdas),
            directed,
            weakly,
            basis: Basis::Sampled,
        })
        .collect();
    (x, corpus)
}

fn det3(u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Scalar {
    &(&u[0] * &(&(&v[1] * &w[2]) - &(&v[2] * &w[1]))) - &(&u[1] * &(&(&v[0] * &w[2]) - &(&v[2] * &w[0])))
        + &u[2] * &(&(&v[0] * &w[1]) - &(&v[1] * &w[0]))
}

/// Determinant of `C_q - C_p, C_r - C_p, C_s - C_p`; zero iff the four
/// points are coplanar.
pub(crate) fn coplanarity(p: &Scalar, q: &Scalar, r: &Scalar, s: &Scalar) -> Scalar {
    let cp = cubic(p);
    let diff = |t: &Scalar| -> Vec<Scalar> { cubic(t).iter().zip(&cp).map(|(x, y)| x - y).collect() };
    det3(&diff(q), &diff(r), &diff(s))
}

/// A sampled demonstration on `n` chords: the chords are pairwise skew, a
/// PL path along the cubic is not directed, and neither the declared
/// generators nor candidates synthesized from chord paths reject it.
pub fn harp_demo(n: usize, budget: usize) -> Result<Report> {
    let n = n.max(1);
    let chords = harp_chords(n);
    let mut report = Report::new(format!("harp with {n} sampled chords (a demonstration, not a certification)"));
    let mut pairs = 0;
    let mut coplanar = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs += 1;
            let (a, b) = &chords[i];
            let (c, d) = &chords[j];
            if coplanarity(a, b, c, d).is_zero() {
                coplanar.push((i, j));
            }
        }
    }
    if coplanar.is_empty() {
        report.pass("chords pairwise skew", format!("{pairs} pairs, every coplanarity determinant is nonzero"));
    } else {
        report.fail("chords pairwise skew", format!("coplanar chord pairs {coplanar:?}"), None);
    }
    let (x, corpus) = harp_space(n);
    let along_c = PlPath::polyline(
        &Ambient::euclidean(3),
        [(0, 1), (1, 2), (1, 1)].iter().map(|&(p, q)| cubic(&Scalar::ratio(p, q))).collect(),
    )?;
    report.expect("path along the cubic, directed", &path_is_directed(&x, &along_c, budget)?, false);
    report.expect(
        "path along the cubic, declared generators",
        &generator_verdict(&x, &along_c, budget, Scope::Local)?,
        true,
    );
    let mut samples: Vec<PlPath> = (0..n).map(|i| chord_path(&chords, i, &[(0, 1), (1, 1)])).collect();
    samples.extend(corpus.iter().map(|c| c.path.clone()));
    let candidates = synthesize_generators(&x, &samples, budget)?;
    report.pass("synthesized candidates", format!("{} survive samples from every chord: {candidates}", candidates.schemas.len()));
    report.expect(
        "path along the cubic, synthesized candidates",
        &candidates.check_path(&along_c, None, budget, Scope::Local)?,
        true,
    );
    Ok(report)
}

/// Whether `p` stays in one closed half-line of the line.
pub fn almost_directed_line(p: &PlPath) -> Result<bool> {
    Ambient::euclidean(1).check_same(p.ambient())?;
    Ok(PathPredicate::HalfLine.accepts(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dspace::DEFAULT_BUDGET;
    use crate::report::Status;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn coplanarity_is_a_vandermonde_product() {
        let ts = [q(0, 1), Scalar::sqrt2(), q(1, 1), q(1, 1) + Scalar::sqrt2()];
        let mut prod = Scalar::one();
        for i in 0..4 {
            for j in i + 1..4 {
                prod = prod * (&ts[j] - &ts[i]);
            }
        }
        assert!(!prod.is_zero());
        assert_eq!(coplanarity(&ts[0], &ts[1], &ts[2], &ts[3]), prod);
    }

    #[test]
    fn half_lines() {
        let line = Ambient::euclidean(1);
        let seg = |a: i64, b: i64| PlPath::segment(&line, vec![q(a, 1)], vec![q(b, 1)]).unwrap();
        assert!(almost_directed_line(&PlPath::constant(&line, vec![q(0, 1)]).unwrap()).unwrap());
        assert!(almost_directed_line(&seg(-1, 0)).unwrap());
        assert!(almost_directed_line(&seg(0, 1)).unwrap());
        assert!(!almost_directed_line(&seg(-1, 0).concat(&seg(0, 1)).unwrap()).unwrap());
        assert!(!almost_directed_line(&seg(-1, 1)).unwrap());
    }

    #[test]
    fn demo_on_twenty_chords() {
        let r = harp_demo(20, DEFAULT_BUDGET).unwrap();
        assert!(r.ok(), "{r}");
        assert!(r.lines.iter().any(|l| l.status == Status::Budget));
    }
}
