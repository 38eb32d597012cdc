#![allow(dead_code)]

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::rngs::StdRng;
use rand::Rng;

use dirsat::constructs::BiParamMap;
use dirsat::plgeom::{Ambient, PlPath};
use dirsat::Scalar;

/// Fixed-point precision of the numeric oracle, in bits.
pub const BITS: u32 = 192;

fn scale() -> BigInt {
    BigInt::from(1) << BITS
}

/// `floor(x * 2^BITS)` up to an error of two units, computed from an
/// integer square root of 2 rather than from the exact comparison.
pub fn fixed(x: &Scalar) -> BigInt {
    let (r, s) = (x.rat(), x.irr());
    let rat = (r.numer() * scale()).div_floor_big(r.denom());
    let root2 = (BigInt::from(2) << (2 * BITS)).sqrt();
    let irr = (s.numer() * root2).div_floor_big(s.denom());
    rat + irr
}

trait DivFloor {
    fn div_floor_big(&self, d: &BigInt) -> BigInt;
}

impl DivFloor for BigInt {
    fn div_floor_big(&self, d: &BigInt) -> BigInt {
        num_integer::Integer::div_floor(self, d)
    }
}

/// The sign of `a - b` in fixed point, when the gap exceeds `2^-30`.
pub fn oracle_cmp(a: &BigInt, b: &BigInt) -> Option<Ordering> {
    let gap = a - b;
    if gap.abs() > (BigInt::from(1) << (BITS - 30)) {
        Some(gap.sign().cmp(&num_bigint::Sign::NoSign))
    } else {
        None
    }
}

pub fn fixed_mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> BITS
}

pub fn fixed_div(a: &BigInt, b: &BigInt) -> BigInt {
    (a << BITS) / b
}

pub fn random_scalar(rng: &mut StdRng) -> Scalar {
    let r = Scalar::ratio(rng.gen_range(-40..=40), rng.gen_range(1..=12));
    if rng.gen_bool(0.3) {
        return r;
    }
    r + Scalar::ratio(rng.gen_range(-40..=40), rng.gen_range(1..=12)) * Scalar::sqrt2()
}

/// A random scalar from a small grid, so that ties are common.
pub fn grid_scalar(rng: &mut StdRng) -> Scalar {
    Scalar::ratio(rng.gen_range(-4..=8), 4)
}

pub fn random_polyline(rng: &mut StdRng, ambient: &Ambient, max_vertices: usize) -> PlPath {
    let n = rng.gen_range(2..=max_vertices);
    let pts = (0..n)
        .map(|_| (0..ambient.dim()).map(|_| grid_scalar(rng)).collect())
        .collect();
    PlPath::polyline(ambient, pts).expect("polyline")
}

/// A grid map into the plane built from sums of non-decreasing profiles,
/// so half of them are directed; the other half get one dented value.
pub fn random_grid(rng: &mut StdRng) -> BiParamMap {
    let ns = rng.gen_range(2..=4);
    let nt = rng.gen_range(2..=4);
    let breaks = |n: usize| -> Vec<Scalar> { (0..n).map(|i| Scalar::ratio(i as i64, (n - 1) as i64)).collect() };
    let profile = |n: usize, rng: &mut StdRng| -> Vec<Scalar> {
        let mut acc = Scalar::zero();
        (0..n)
            .map(|_| {
                acc = &acc + &Scalar::ratio(rng.gen_range(0..=2), 2);
                if rng.gen_bool(0.2) {
                    acc = &acc + &(Scalar::sqrt2() * Scalar::ratio(1, 4));
                }
                acc.clone()
            })
            .collect()
    };
    let (xs, xt, ys, yt) = (profile(ns, rng), profile(nt, rng), profile(ns, rng), profile(nt, rng));
    let mut values: Vec<Vec<Vec<Scalar>>> = (0..nt)
        .map(|j| (0..ns).map(|i| vec![&xs[i] + &xt[j], &ys[i] + &yt[j]]).collect())
        .collect();
    if rng.gen_bool(0.5) {
        let (i, j, k) = (rng.gen_range(0..ns), rng.gen_range(0..nt), rng.gen_range(0..2));
        values[j][i][k] = &values[j][i][k] - &Scalar::ratio(rng.gen_range(1..=3), 2);
    }
    BiParamMap::new(Ambient::euclidean(2), breaks(ns), breaks(nt), values).expect("grid")
}
