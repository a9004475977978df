//! Independent oracles: direct summation over the cube, pointwise moments and
//! brute-force pivot counting. None of them touch the fast transform.
#![allow(dead_code)]

use boolcube::{BooleanFunction, Point, RealFunction, Sign, Spectrum};
use rand::Rng;

/// `x_i` read off the point index.
pub fn coord(x: usize, i: usize) -> f64 {
    if x >> (i - 1) & 1 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// `prod_{i in S} x_i`.
pub fn chi(s: usize, x: usize) -> f64 {
    if (s & x).count_ones() % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// `f^(S) = 2^-n sum_x f(x) chi_S(x)` for every `S`.
pub fn direct_transform(n: u32, values: &[f64]) -> Vec<f64> {
    let len = 1usize << n;
    (0..len)
        .map(|s| values.iter().enumerate().map(|(x, v)| v * chi(s, x)).sum::<f64>() / len as f64)
        .collect()
}

/// `f(x) = sum_S f^(S) chi_S(x)` for every `x`.
pub fn direct_inverse(n: u32, coeffs: &[f64]) -> Vec<f64> {
    let len = 1usize << n;
    (0..len).map(|x| coeffs.iter().enumerate().map(|(s, c)| c * chi(s, x)).sum()).collect()
}

pub fn boolean_values(f: &BooleanFunction) -> Vec<f64> {
    (0..f.len()).map(|x| f64::from(f.evaluate(Point(x)).unwrap())).collect()
}

/// `E[|f|^p]^{1/p}` summed pointwise.
pub fn norm(values: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        return values.iter().fold(0.0, |m, v| m.max(v.abs()));
    }
    (values.iter().map(|v| v.abs().powf(p)).sum::<f64>() / values.len() as f64).powf(1.0 / p)
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// `Pr_x[f(x) != f(x^(i))]` by flipping every point.
pub fn brute_influence(f: &BooleanFunction, i: usize) -> f64 {
    let n = f.arity();
    let pivots = (0..f.len())
        .filter(|&x| {
            let y = Point(x).flip(i, n).unwrap();
            f.evaluate(Point(x)).unwrap() != f.evaluate(y).unwrap()
        })
        .count();
    pivots as f64 / f.len() as f64
}

pub fn brute_total_influence(f: &BooleanFunction) -> f64 {
    (1..=f.arity() as usize).map(|i| brute_influence(f, i)).sum()
}

/// `f(x) <= f(y)` whenever `y` is `x` with some `-1` turned into `+1`.
pub fn brute_is_monotone(f: &BooleanFunction) -> bool {
    let n = f.arity() as usize;
    (0..f.len()).all(|x| {
        (1..=n).all(|i| {
            let bit = 1 << (i - 1);
            x & bit == 0 || f.evaluate(Point(x)).unwrap() <= f.evaluate(Point(x & !bit)).unwrap()
        })
    })
}

pub fn random_real<R: Rng>(rng: &mut R, n: u32) -> RealFunction {
    RealFunction::new(n, (0..1usize << n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
}

/// Random coefficients on levels `<= d`, with at least one level-`d` coefficient
/// bounded away from 0 so the degree is exactly `d`.
pub fn random_polynomial<R: Rng>(rng: &mut R, n: u32, d: u32) -> (Spectrum, RealFunction) {
    assert!(d <= n);
    let len = 1usize << n;
    let mut coeffs: Vec<f64> = (0..len)
        .map(|s| if s.count_ones() <= d { rng.gen_range(-1.0..1.0) } else { 0.0 })
        .collect();
    let top: Vec<usize> = (0..len).filter(|s| s.count_ones() == d).collect();
    let s = top[rng.gen_range(0..top.len())];
    coeffs[s] = if rng.gen::<bool>() { 1.0 } else { -1.0 } * rng.gen_range(0.5..1.0);
    let values = direct_inverse_fast(n, &coeffs);
    (Spectrum::new(n, coeffs).unwrap(), RealFunction::new(n, values).unwrap())
}

/// Evaluates a sparse-by-level polynomial at every point, skipping zero
/// coefficients (still a direct sum, no butterfly).
fn direct_inverse_fast(n: u32, coeffs: &[f64]) -> Vec<f64> {
    let support: Vec<(usize, f64)> =
        coeffs.iter().enumerate().filter(|(_, c)| **c != 0.0).map(|(s, c)| (s, *c)).collect();
    (0..1usize << n).map(|x| support.iter().map(|(s, c)| c * chi(*s, x)).sum()).collect()
}

/// Monotone function whose `-1` set is the up-closure (in the bit order) of
/// a few random seed points: `f(x) = -1` iff `x` contains some seed bitwise.
pub fn random_monotone<R: Rng>(rng: &mut R, n: u32) -> BooleanFunction {
    let seeds: Vec<usize> = (0..rng.gen_range(1..=4))
        .map(|_| (0..n).filter(|_| rng.gen_bool(0.5)).fold(0usize, |m, j| m | 1 << j))
        .collect();
    BooleanFunction::tabulate(n, |p| Sign::from_bit(seeds.iter().any(|&s| s & !p.0 == 0))).unwrap()
}

/// `|a - b| <= rel * max(1, |b|)`.
pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1.0)
}
