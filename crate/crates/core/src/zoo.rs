//! Canonical Boolean functions and their closed-form spectra.

use serde::{Deserialize, Serialize};

use crate::cube::{check_arity, check_coord, BooleanFunction, Point, RealFunction, Sign, Subset};
use crate::error::{Error, Result};
use crate::fourier::Spectrum;

/// `d_i(x) = x_i`.
pub fn dictator(n: u32, i: usize) -> Result<BooleanFunction> {
    check_coord(i, n)?;
    BooleanFunction::tabulate(n, |p| Sign::from_bit(p.coord(i) == -1))
}

/// `chi_S(x) = prod_{i in S} x_i`.
pub fn parity(n: u32, s: Subset) -> Result<BooleanFunction> {
    if s.0 >> n != 0 {
        return Err(Error::InvalidArgument(format!("subset {s} is not inside [{n}]")));
    }
    BooleanFunction::tabulate(n, |p| Sign::from_bit(s.character(p) == -1))
}

/// The 0/1 indicator of the single point `a`.
pub fn indicator(n: u32, a: Point) -> Result<RealFunction> {
    if a.0 >> n != 0 {
        return Err(Error::PointOutOfRange { index: a.0, n });
    }
    RealFunction::tabulate(n, |p| if p == a { 1.0 } else { 0.0 })
}

/// `1_{a}^(S) = 2^-n chi_S(a)`.
pub fn indicator_spectrum(n: u32, a: Point) -> Result<Spectrum> {
    if a.0 >> n != 0 {
        return Err(Error::PointOutOfRange { index: a.0, n });
    }
    let scale = (-(n as f64)).exp2();
    Spectrum::tabulate(n, |s| scale * f64::from(s.character(a)))
}

/// `Maj_n(x) = sgn(x_1 + ... + x_n)` for odd `n`.
pub fn majority(n: u32) -> Result<BooleanFunction> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenMajority(n));
    }
    // -1 wins when more than half of the coordinates are -1
    BooleanFunction::tabulate(n, |p| Sign::from_bit(p.0.count_ones() > n / 2))
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * u128::from(n - j) / u128::from(j + 1);
    }
    acc
}

/// Closed form: 0 on even levels and, for `|S| = 2k + 1`,
/// `(-1)^k C((n-1)/2, k) / C(n-1, 2k) * 2^{1-n} * C(n-1, (n-1)/2)`.
pub fn majority_spectrum(n: u32) -> Result<Spectrum> {
    if n.is_multiple_of(2) {
        return Err(Error::EvenMajority(n));
    }
    check_arity(n)?;
    let m = u64::from(n - 1) / 2;
    let central = binomial(u64::from(n - 1), m) as f64 * (1.0 - n as f64).exp2();
    let by_level: Vec<f64> = (0..=n as u64)
        .map(|level| {
            if level % 2 == 0 {
                return 0.0;
            }
            let k = (level - 1) / 2;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(m, k) as f64 / binomial(u64::from(n - 1), 2 * k) as f64 * central
        })
        .collect();
    Spectrum::tabulate(n, |s| by_level[s.len()])
}

/// `+1` unless every coordinate is `-1`.
pub fn or_fn(n: u32) -> Result<BooleanFunction> {
    let all = (1usize << n) - 1;
    BooleanFunction::tabulate(n, |p| Sign::from_bit(p.0 == all))
}

/// `-1` unless every coordinate is `+1`.
pub fn and_fn(n: u32) -> Result<BooleanFunction> {
    BooleanFunction::tabulate(n, |p| Sign::from_bit(p.0 != 0))
}

/// `1 - 2^{1-n}` at `∅`, `(-1)^{|S|+1} 2^{1-n}` elsewhere.
pub fn or_spectrum(n: u32) -> Result<Spectrum> {
    let h = (1.0 - n as f64).exp2();
    Spectrum::tabulate(n, |s| match s.len() {
        0 => 1.0 - h,
        k if k % 2 == 1 => h,
        _ => -h,
    })
}

/// `-1 + 2^{1-n}` at `∅`, `2^{1-n}` elsewhere.
pub fn and_spectrum(n: u32) -> Result<Spectrum> {
    let h = (1.0 - n as f64).exp2();
    Spectrum::tabulate(n, |s| if s.is_empty() { h - 1.0 } else { h })
}

/// `f(x) = g(x_{coords[0]}, ..., x_{coords[k-1]})`.
pub fn junta(n: u32, coords: &[usize], g: &BooleanFunction) -> Result<BooleanFunction> {
    if coords.len() != g.arity() as usize {
        return Err(Error::InvalidArgument(format!(
            "{} coordinates given for a {}-ary inner function",
            coords.len(),
            g.arity()
        )));
    }
    let mut seen = 0usize;
    for &c in coords {
        check_coord(c, n)?;
        if seen >> (c - 1) & 1 == 1 {
            return Err(Error::InvalidArgument(format!("coordinate {c} repeated")));
        }
        seen |= 1 << (c - 1);
    }
    BooleanFunction::tabulate(n, |p| {
        let inner = coords
            .iter()
            .enumerate()
            .fold(0usize, |acc, (k, &c)| acc | ((p.0 >> (c - 1) & 1) << k));
        Sign::from_bit(g.bit(inner))
    })
}

/// Ordered disjoint nonempty blocks covering `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    n: u32,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: u32, blocks: Vec<Vec<usize>>) -> Result<Partition> {
        let mut seen = vec![false; n as usize];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &i in b {
                if i == 0 || i > n as usize {
                    return Err(Error::InvalidPartition(format!("coordinate {i} outside [{n}]")));
                }
                if std::mem::replace(&mut seen[i - 1], true) {
                    return Err(Error::InvalidPartition(format!("coordinate {i} in two blocks")));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("coordinate {} not covered", i + 1)));
        }
        Ok(Partition { n, blocks })
    }

    /// `count` consecutive blocks of `width` coordinates.
    pub fn uniform(width: usize, count: usize) -> Result<Partition> {
        if width == 0 || count == 0 {
            return Err(Error::InvalidPartition("width and count must be positive".into()));
        }
        let n = u32::try_from(width * count)
            .map_err(|_| Error::InvalidPartition("too many coordinates".into()))?;
        let blocks = (0..count).map(|b| (b * width + 1..=(b + 1) * width).collect()).collect();
        Partition::new(n, blocks)
    }

    pub fn arity(&self) -> u32 {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

/// `OR_s(AND(x^(1)), ..., AND(x^(s)))`: `+1` iff some block is unanimously `+1`.
pub fn tribes(partition: &Partition) -> Result<BooleanFunction> {
    let masks: Vec<usize> =
        partition.blocks.iter().map(|b| b.iter().fold(0, |m, &i| m | 1 << (i - 1))).collect();
    BooleanFunction::tabulate(partition.n, |p| Sign::from_bit(masks.iter().all(|m| p.0 & m != 0)))
}

/// Uniform tribes parameters: `count` blocks of `width` coordinates, with
/// `count` the largest integer such that `1 - (1 - 2^-width)^count <= 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TribesParams {
    pub width: usize,
    pub count: usize,
    pub n: usize,
}

impl TribesParams {
    /// `Pr[Tribes = -1] = (1 - 2^-width)^count`.
    pub fn prob_minus(&self) -> f64 {
        (1.0 - (-(self.width as f64)).exp2()).powi(self.count as i32)
    }

    /// `E[Tribes] = 1 - 2 (1 - 2^-width)^count`.
    pub fn expectation(&self) -> f64 {
        1.0 - 2.0 * self.prob_minus()
    }

    /// Each coordinate is pivotal iff the other blocks all fail and the rest of
    /// its own block is `+1`: `(1 - 2^-w)^{s-1} 2^{1-w}`.
    pub fn coordinate_influence(&self) -> f64 {
        let fail = 1.0 - (-(self.width as f64)).exp2();
        fail.powi(self.count as i32 - 1) * (1.0 - self.width as f64).exp2()
    }

    pub fn partition(&self) -> Result<Partition> {
        Partition::uniform(self.width, self.count)
    }
}

pub fn bl_params(width: usize) -> Result<TribesParams> {
    if width == 0 || width > 52 {
        return Err(Error::InvalidArgument(format!("tribe width {width} outside 1..=52")));
    }
    let fail = 1.0 - (-(width as f64)).exp2();
    let mut count = 0usize;
    let mut p = 1.0f64;
    // p = fail^count; advance while fail^(count+1) >= 1/2
    while p * fail >= 0.5 {
        p *= fail;
        count += 1;
    }
    if count == 0 {
        return Err(Error::InvalidArgument(format!("no tribe count fits width {width}")));
    }
    Ok(TribesParams { width, count, n: width * count })
}
