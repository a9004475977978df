//! Points, subsets and truth tables on the Hamming cube `{-1, 1}^n`.
//!
//! Coordinate `x_j` (1-based) is stored in bit `j - 1` of a point index with
//! the encoding `b_j = (1 - x_j) / 2`, so a set bit means `x_j = -1` and index
//! 0 is the all-ones point. A subset `S` of `[n]` uses the same bit layout,
//! which makes `chi_S(x) = (-1)^popcount(S & x)`.

use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use crate::error::{Error, Result};

/// Default arity cap. Dense real tables at this size take about 128 MiB.
pub const DEFAULT_MAX_ARITY: u32 = 24;
/// Ceiling for [`set_max_arity`].
pub const HARD_MAX_ARITY: u32 = 30;

static MAX_ARITY: AtomicU32 = AtomicU32::new(DEFAULT_MAX_ARITY);

/// Current process-wide arity cap.
pub fn max_arity() -> u32 {
    MAX_ARITY.load(Ordering::Relaxed)
}

/// Overrides the arity cap (the CLI wires `HYPERCUBE_MAX_N` to this).
pub fn set_max_arity(n: u32) -> Result<()> {
    if n > HARD_MAX_ARITY {
        return Err(Error::ArityTooLarge { n, cap: HARD_MAX_ARITY });
    }
    MAX_ARITY.store(n, Ordering::Relaxed);
    Ok(())
}

pub(crate) fn check_arity(n: u32) -> Result<()> {
    let cap = max_arity();
    if n > cap {
        Err(Error::ArityTooLarge { n, cap })
    } else {
        Ok(())
    }
}

pub(crate) fn check_coord(i: usize, n: u32) -> Result<()> {
    if i == 0 || i > n as usize {
        Err(Error::CoordinateOutOfRange { coord: i, n })
    } else {
        Ok(())
    }
}

/// A value in `{-1, +1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::InvalidArgument(format!("{v} is not a sign (expected +1 or -1)"))),
        }
    }

    /// Stored bit: set for `-1`.
    #[inline]
    pub fn bit(self) -> bool {
        self == Sign::Minus
    }

    #[inline]
    pub fn from_bit(bit: bool) -> Sign {
        if bit {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn negate(self) -> Sign {
        Sign::from_bit(!self.bit())
    }
}

/// A point of `{-1, 1}^n` as a bit index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub usize);

impl Point {
    /// Encodes a `±1` vector; `signs[0]` is `x_1`.
    pub fn from_signs(signs: &[i8]) -> Result<Point> {
        let mut index = 0usize;
        for (j, &s) in signs.iter().enumerate() {
            match s {
                1 => {}
                -1 => index |= 1 << j,
                _ => return Err(Error::InvalidArgument(format!("coordinate {} is {s}", j + 1))),
            }
        }
        Ok(Point(index))
    }

    pub fn signs(self, n: u32) -> Vec<i8> {
        (1..=n as usize).map(|i| self.coord(i)).collect()
    }

    /// `x_i` at this point (1-based).
    #[inline]
    pub fn coord(self, i: usize) -> i8 {
        if self.0 >> (i - 1) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    /// `x^{(i)}`: the point with coordinate `i` negated.
    pub fn flip(self, i: usize, n: u32) -> Result<Point> {
        check_coord(i, n)?;
        if self.0 >> n != 0 {
            return Err(Error::PointOutOfRange { index: self.0, n });
        }
        Ok(Point(self.0 ^ (1 << (i - 1))))
    }

    /// The antipodal point `-x`.
    pub fn negate(self, n: u32) -> Point {
        Point(self.0 ^ ((1usize << n) - 1))
    }
}

/// A subset of `[n]` as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub usize);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_coords(coords: &[usize], n: u32) -> Result<Subset> {
        let mut mask = 0usize;
        for &i in coords {
            check_coord(i, n)?;
            mask |= 1 << (i - 1);
        }
        Ok(Subset(mask))
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << (i - 1))
    }

    pub fn full(n: u32) -> Subset {
        Subset((1usize << n) - 1)
    }

    /// Members in increasing order, 1-based.
    pub fn coords(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut m = self.0;
        while m != 0 {
            out.push(m.trailing_zeros() as usize + 1);
            m &= m - 1;
        }
        out
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    /// `chi_S(x)`.
    #[inline]
    pub fn character(self, x: Point) -> i8 {
        if (self.0 & x.0).count_ones() & 1 == 1 {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.coords().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

// Bit positions `p` within a 64-bit word whose bit `j` is clear, for `j < 6`.
const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// A Boolean function `{-1, 1}^n -> {-1, 1}` stored as a packed truth table.
///
/// Bit `i` of the table holds `c_i = (1 - f(point i)) / 2`. Arity 0 is allowed
/// and denotes a constant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: u32,
    words: Vec<u64>,
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction(n={}, {})", self.n, self.to_bit_string())
    }
}

fn word_count(n: u32) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

impl BooleanFunction {
    /// Builds a table by evaluating `f` at every point.
    pub fn tabulate(n: u32, mut f: impl FnMut(Point) -> Sign) -> Result<Self> {
        check_arity(n)?;
        let mut words = vec![0u64; word_count(n)];
        for i in 0..1usize << n {
            if f(Point(i)).bit() {
                words[i >> 6] |= 1 << (i & 63);
            }
        }
        Ok(BooleanFunction { n, words })
    }

    pub fn constant(n: u32, value: Sign) -> Result<Self> {
        Self::tabulate(n, |_| value)
    }

    /// Small tables from an integer whose bit `i` is `c_i` (`n <= 6`).
    pub fn from_table_index(n: u32, index: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::InvalidArgument(format!(
                "table index form only supports arity <= 6, got {n}"
            )));
        }
        let size = 1u32 << n;
        if size < 64 && index >> size != 0 {
            return Err(Error::InvalidArgument(format!(
                "table index {index} has bits beyond 2^{n}"
            )));
        }
        Ok(BooleanFunction { n, words: vec![index] })
    }

    /// Packed table, 64 points per word; bits beyond `2^n` are cleared.
    pub fn from_words(n: u32, mut words: Vec<u64>) -> Result<Self> {
        check_arity(n)?;
        let expected = word_count(n);
        if words.len() != expected {
            return Err(Error::TableLength { got: words.len(), expected });
        }
        if n < 6 {
            words[0] &= (1u64 << (1u32 << n)) - 1;
        }
        Ok(BooleanFunction { n, words })
    }

    /// Inverse of [`from_table_index`](Self::from_table_index).
    pub fn table_index(&self) -> Option<u64> {
        (self.n <= 6).then(|| self.words[0])
    }

    /// Parses a string of `2^n` characters in `{0,1}`, position `i` giving `c_i`.
    pub fn from_bit_string(n: u32, bits: &str) -> Result<Self> {
        check_arity(n)?;
        let expected = 1usize << n;
        if bits.len() != expected {
            return Err(Error::TableLength { got: bits.len(), expected });
        }
        let mut words = vec![0u64; word_count(n)];
        for (i, ch) in bits.bytes().enumerate() {
            match ch {
                b'0' => {}
                b'1' => words[i >> 6] |= 1 << (i & 63),
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "character {:?} at position {i} is not 0 or 1",
                        ch as char
                    )))
                }
            }
        }
        Ok(BooleanFunction { n, words })
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len()).map(|i| if self.bit(i) { '1' } else { '0' }).collect()
    }

    /// Interprets a real table whose entries are exactly `±1`.
    pub fn from_real(f: &RealFunction) -> Result<Self> {
        let mut err = None;
        let g = Self::tabulate(f.arity(), |p| {
            let v = f.values()[p.0];
            if v == 1.0 {
                Sign::Plus
            } else if v == -1.0 {
                Sign::Minus
            } else {
                err.get_or_insert(Error::InvalidArgument(format!(
                    "value {v} at index {} is not ±1",
                    p.0
                )));
                Sign::Plus
            }
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(g),
        }
    }

    #[inline]
    pub fn arity(&self) -> u32 {
        self.n
    }

    /// Number of points, `2^n`.
    #[inline]
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Stored bit `c_i` (set for `-1`). Panics when out of range.
    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.len(), "point index {i} out of range for arity {}", self.n);
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    /// `f(x)` as `±1`; panics when out of range.
    #[inline]
    pub fn value(&self, i: usize) -> i8 {
        if self.bit(i) {
            -1
        } else {
            1
        }
    }

    pub fn evaluate(&self, p: Point) -> Result<i8> {
        if p.0 >= self.len() {
            return Err(Error::PointOutOfRange { index: p.0, n: self.n });
        }
        Ok(self.value(p.0))
    }

    pub fn values(&self) -> impl Iterator<Item = i8> + '_ {
        (0..self.len()).map(|i| self.value(i))
    }

    pub fn to_real(&self) -> RealFunction {
        RealFunction { n: self.n, values: self.values().map(f64::from).collect() }
    }

    /// Number of points where `f = -1`.
    pub fn count_minus(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// `-f`.
    pub fn negate(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        if self.n < 6 {
            words[0] &= (1u64 << self.len()) - 1;
        }
        BooleanFunction { n: self.n, words }
    }

    /// `x -> f(-x)`.
    pub fn reflect(&self) -> Self {
        let n = self.n;
        Self::tabulate(n, |p| Sign::from_bit(self.bit(p.negate(n).0))).expect("same arity")
    }

    pub fn is_constant(&self) -> bool {
        let c = self.count_minus();
        c == 0 || c == self.len() as u64
    }

    /// `f^{(i -> b)}`: fixes coordinate `i` to `b`; remaining coordinates keep
    /// their order. Restricting a 1-ary function yields a 0-ary constant.
    pub fn restrict(&self, i: usize, b: Sign) -> Result<Self> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("cannot restrict a 0-ary function".into()));
        }
        check_coord(i, self.n)?;
        let j = i - 1;
        let low = (1usize << j) - 1;
        let fixed = usize::from(b.bit()) << j;
        Self::tabulate(self.n - 1, |y| {
            let x = (y.0 & low) | fixed | ((y.0 & !low) << 1);
            Sign::from_bit(self.bit(x))
        })
    }

    /// Calls `visit(lo, hi, base)` for every aligned pair of bit blocks along
    /// coordinate `j + 1`: bit `p` of `lo` is `c` at point `base + p` (where
    /// `x_{j+1} = +1`) and bit `p` of `hi` is `c` at the partner with
    /// `x_{j+1} = -1`. Only bits of `lo` at valid partner positions are set.
    pub(crate) fn for_each_edge_block(&self, j: u32, mut visit: impl FnMut(u64, u64, usize)) {
        debug_assert!(j < self.n);
        if j < 6 {
            let step = 1u32 << j;
            let mask = LOW_HALF[j as usize];
            for (k, &w) in self.words.iter().enumerate() {
                visit(w & mask, (w >> step) & mask, k << 6);
            }
        } else {
            let stride = 1usize << (j - 6);
            for k in 0..self.words.len() {
                if k & stride == 0 {
                    visit(self.words[k], self.words[k | stride], k << 6);
                }
            }
        }
    }

    /// First `(point, coord)` where raising `x_coord` from `-1` to `+1` lowers
    /// the value; `point` has `x_coord = -1`.
    pub fn monotone_violation(&self) -> Option<(Point, usize)> {
        for j in 0..self.n {
            let mut found = None;
            self.for_each_edge_block(j, |lo, hi, base| {
                // f(x^+) = -1 while f(x^-) = +1
                let bad = lo & !hi;
                if found.is_none() && bad != 0 {
                    let p = base + bad.trailing_zeros() as usize;
                    found = Some(p | 1 << j);
                }
            });
            if let Some(p) = found {
                return Some((Point(p), j as usize + 1));
            }
        }
        None
    }

    pub fn is_monotone(&self) -> bool {
        self.monotone_violation().is_none()
    }

    /// Number of edges along coordinate `i` whose endpoints disagree.
    pub fn pivot_edges(&self, i: usize) -> Result<u64> {
        check_coord(i, self.n)?;
        let mut count = 0u64;
        self.for_each_edge_block(i as u32 - 1, |lo, hi, _| {
            count += u64::from((lo ^ hi).count_ones());
        });
        Ok(count)
    }
}

/// A real-valued function on `{-1, 1}^n` as a dense table.
#[derive(Clone, Debug, PartialEq)]
pub struct RealFunction {
    n: u32,
    values: Vec<f64>,
}

impl RealFunction {
    pub fn new(n: u32, values: Vec<f64>) -> Result<Self> {
        check_arity(n)?;
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(Error::TableLength { got: values.len(), expected });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(RealFunction { n, values })
    }

    pub(crate) fn from_vec_unchecked(n: u32, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), 1 << n);
        RealFunction { n, values }
    }

    pub fn tabulate(n: u32, mut f: impl FnMut(Point) -> f64) -> Result<Self> {
        check_arity(n)?;
        Self::new(n, (0..1usize << n).map(|i| f(Point(i))).collect())
    }

    pub fn constant(n: u32, c: f64) -> Result<Self> {
        Self::tabulate(n, |_| c)
    }

    #[inline]
    pub fn arity(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn get(&self, p: Point) -> Result<f64> {
        self.values
            .get(p.0)
            .copied()
            .ok_or(Error::PointOutOfRange { index: p.0, n: self.n })
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: f64, other: &RealFunction, b: f64) -> Result<RealFunction> {
        if self.n != other.n {
            return Err(Error::ArityMismatch { left: self.n, right: other.n });
        }
        RealFunction::new(
            self.n,
            self.values.iter().zip(&other.values).map(|(x, y)| a * x + b * y).collect(),
        )
    }

    /// `true` when every entry is `±1`.
    pub fn is_boolean(&self) -> bool {
        self.values.iter().all(|&v| v == 1.0 || v == -1.0)
    }
}

impl From<&BooleanFunction> for RealFunction {
    fn from(f: &BooleanFunction) -> Self {
        f.to_real()
    }
}
