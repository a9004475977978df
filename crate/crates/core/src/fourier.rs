//! Walsh–Hadamard transform between value tables and Fourier spectra.
//!
//! The forward transform carries the `2^-n` factor:
//! `f^(S) = 2^-n * sum_x f(x) chi_S(x)`. For Boolean inputs every partial sum
//! of the butterfly is an integer, so spectra come out as exact dyadic
//! rationals and can be compared with `==`.

use crate::cube::{BooleanFunction, RealFunction, Subset};
use crate::error::{Error, Result};
use crate::report::{Report, Tolerance};

/// Coefficients below this magnitude do not count toward the degree. Nonzero
/// Boolean coefficients are at least `2^-n >= 2^-30`, far above it.
pub const DEGREE_THRESHOLD: f64 = 1e-12;

/// Fourier coefficients indexed by subset mask.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    n: u32,
    coeffs: Vec<f64>,
}

/// Unnormalized in-place butterfly: `out[m] = sum_i in[i] (-1)^popcount(m & i)`.
pub fn fwht(values: &mut [f64]) {
    let len = values.len();
    assert!(len.is_power_of_two(), "length {len} is not a power of two");
    let mut h = 1;
    while h < len {
        for block in values.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h <<= 1;
    }
}

pub fn transform(f: &RealFunction) -> Spectrum {
    let n = f.arity();
    let mut coeffs = f.values().to_vec();
    fwht(&mut coeffs);
    let scale = (-(n as f64)).exp2();
    coeffs.iter_mut().for_each(|c| *c *= scale);
    Spectrum { n, coeffs }
}

pub fn transform_boolean(f: &BooleanFunction) -> Spectrum {
    transform(&f.to_real())
}

pub fn inverse_transform(s: &Spectrum) -> RealFunction {
    let mut values = s.coeffs.clone();
    fwht(&mut values);
    RealFunction::from_vec_unchecked(s.n, values)
}

impl BooleanFunction {
    pub fn spectrum(&self) -> Spectrum {
        transform_boolean(self)
    }
}

impl RealFunction {
    pub fn spectrum(&self) -> Spectrum {
        transform(self)
    }
}

fn check_same(a: u32, b: u32) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ArityMismatch { left: a, right: b })
    }
}

impl Spectrum {
    pub fn new(n: u32, coeffs: Vec<f64>) -> Result<Self> {
        crate::cube::check_arity(n)?;
        let expected = 1usize << n;
        if coeffs.len() != expected {
            return Err(Error::TableLength { got: coeffs.len(), expected });
        }
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Spectrum { n, coeffs })
    }

    pub(crate) fn from_vec_unchecked(n: u32, coeffs: Vec<f64>) -> Self {
        Spectrum { n, coeffs }
    }

    /// Builds a spectrum from `coeff(S)` for every subset.
    pub fn tabulate(n: u32, mut coeff: impl FnMut(Subset) -> f64) -> Result<Self> {
        crate::cube::check_arity(n)?;
        Self::new(n, (0..1usize << n).map(|m| coeff(Subset(m))).collect())
    }

    #[inline]
    pub fn arity(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    #[inline]
    pub fn get(&self, s: Subset) -> f64 {
        self.coeffs[s.0]
    }

    /// `(subset, coefficient)` pairs in mask order.
    pub fn iter(&self) -> impl Iterator<Item = (Subset, f64)> + '_ {
        self.coeffs.iter().enumerate().map(|(m, &c)| (Subset(m), c))
    }

    /// `E[f] = f^(∅)`.
    pub fn mean(&self) -> f64 {
        self.coeffs[0]
    }

    /// `sum_S f^(S)^2 = E[f^2]`.
    pub fn squared_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// `sum_{S != ∅} f^(S)^2`.
    pub fn variance(&self) -> f64 {
        self.coeffs[1..].iter().map(|c| c * c).sum()
    }

    pub fn degree(&self) -> u32 {
        self.degree_with(DEGREE_THRESHOLD)
    }

    pub fn degree_with(&self, threshold: f64) -> u32 {
        self.iter()
            .filter(|(_, c)| c.abs() > threshold)
            .map(|(s, _)| s.len() as u32)
            .max()
            .unwrap_or(0)
    }

    /// `f^{<=d}`: zeroes every coefficient above level `d`.
    pub fn truncate(&self, d: u32) -> Result<Spectrum> {
        if d > self.n {
            return Err(Error::LevelOutOfRange { level: d, n: self.n });
        }
        let coeffs = self
            .iter()
            .map(|(s, c)| if s.len() as u32 > d { 0.0 } else { c })
            .collect();
        Ok(Spectrum { n: self.n, coeffs })
    }

    /// `W^k(f) = sum_{|S| = k} f^(S)^2`.
    pub fn level_weight(&self, k: u32) -> Result<f64> {
        if k > self.n {
            return Err(Error::LevelOutOfRange { level: k, n: self.n });
        }
        Ok(self.iter().filter(|(s, _)| s.len() as u32 == k).map(|(_, c)| c * c).sum())
    }

    /// `[W^0, ..., W^n]`.
    pub fn level_weights(&self) -> Vec<f64> {
        let mut w = vec![0.0; self.n as usize + 1];
        for (s, c) in self.iter() {
            w[s.len()] += c * c;
        }
        w
    }

    pub fn scale(&self, a: f64) -> Spectrum {
        Spectrum { n: self.n, coeffs: self.coeffs.iter().map(|c| a * c).collect() }
    }
}

/// `sum_S f^(S) g^(S) = E[f g]`.
pub fn plancherel(f: &Spectrum, g: &Spectrum) -> Result<f64> {
    check_same(f.n, g.n)?;
    Ok(f.coeffs.iter().zip(&g.coeffs).map(|(a, b)| a * b).sum())
}

/// `sum_{S != ∅} f^(S) g^(S)`.
pub fn covariance(f: &Spectrum, g: &Spectrum) -> Result<f64> {
    check_same(f.n, g.n)?;
    Ok(f.coeffs[1..].iter().zip(&g.coeffs[1..]).map(|(a, b)| a * b).sum())
}

/// Compares `sum_S f^(S)^2` with the pointwise `E[f^2]`.
pub fn parseval_check(f: &RealFunction, tol: Tolerance) -> Report {
    let s = transform(f);
    let spectral = s.squared_norm();
    let pointwise = f.values().iter().map(|v| v * v).sum::<f64>() / f.values().len() as f64;
    let mut r = Report::new("parseval", tol);
    r.input("n", f.arity());
    r.quantity("sum_sq_coeffs", spectral).quantity("mean_sq", pointwise);
    r.assert_eq("parseval", spectral, pointwise);
    r.witness_real(f);
    r
}
