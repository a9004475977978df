//! Fourier entropy, min-entropy, level entropy and the bounds relating them
//! to total influence. All logarithms here are base 2.

use serde::{Deserialize, Serialize};

use crate::cube::{BooleanFunction, RealFunction, Subset};
use crate::error::{Error, Result};
use crate::fourier::Spectrum;
use crate::influence::total_influence;
use crate::report::{Report, Tolerance};

/// Allowed deviation of `sum_S f^(S)^2` from 1.
pub const UNIT_NORM_TOL: f64 = 1e-9;

/// `p log2(1/p)` with `0 log 0 = 0`.
#[inline]
pub fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

fn check_unit(s: &Spectrum) -> Result<()> {
    let sq = s.squared_norm();
    if (sq - 1.0).abs() > UNIT_NORM_TOL {
        Err(Error::NotUnitNorm(sq))
    } else {
        Ok(())
    }
}

/// `H(f) = sum_S f^(S)^2 log2(1 / f^(S)^2)`.
pub fn fourier_entropy(s: &Spectrum) -> Result<f64> {
    check_unit(s)?;
    Ok(s.coeffs().iter().map(|c| plogp(c * c)).sum())
}

/// `H_inf(f) = min_S log2(1 / f^(S)^2)`.
pub fn min_entropy(s: &Spectrum) -> Result<f64> {
    check_unit(s)?;
    let max = s.coeffs().iter().fold(0.0f64, |m, c| m.max(c * c));
    Ok(-max.log2())
}

/// `sum_k W^k log2(1 / W^k)`.
pub fn level_entropy(s: &Spectrum) -> f64 {
    s.level_weights().into_iter().map(plogp).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    #[serde(rename = "H")]
    pub entropy: f64,
    #[serde(rename = "H_inf")]
    pub min_entropy: f64,
    #[serde(rename = "I")]
    pub total_influence: f64,
    pub efi_ratio: f64,
    pub mefi_ratio: f64,
    pub level_entropy: f64,
}

impl EntropyReport {
    /// Ratios are defined as 0 when `I = 0` (constant functions).
    pub fn from_spectrum(s: &Spectrum) -> Result<EntropyReport> {
        let entropy = fourier_entropy(s)?;
        let min_entropy = min_entropy(s)?;
        let infl = total_influence(s);
        let ratio = |h: f64| if infl > 0.0 { h / infl } else { 0.0 };
        Ok(EntropyReport {
            entropy,
            min_entropy,
            total_influence: infl,
            efi_ratio: ratio(entropy),
            mefi_ratio: ratio(min_entropy),
            level_entropy: level_entropy(s),
        })
    }
}

pub fn efi_ratios(f: &BooleanFunction) -> EntropyReport {
    EntropyReport::from_spectrum(&f.spectrum()).expect("Boolean spectra have unit norm")
}

/// `sum_k W^k log2(1/W^k) <= 3 I(f)`.
pub fn owz_level_bound_check(f: &BooleanFunction, tol: Tolerance) -> Report {
    let s = f.spectrum();
    let lhs = level_entropy(&s);
    let infl = total_influence(&s);
    let mut r = Report::new("owz-level-bound", tol);
    r.input("n", f.arity());
    r.log_base("2");
    r.quantity("level_entropy", lhs).quantity("total_influence", infl);
    r.assert_le("level_entropy<=3I", lhs, 3.0 * infl);
    r.witness_boolean(f);
    r
}

/// `I(f) >= 2 p log2(1/p)` with `p = Pr[f = 1]`.
pub fn edge_isoperimetric_check(f: &BooleanFunction, tol: Tolerance) -> Report {
    let p = 1.0 - f.count_minus() as f64 / f.len() as f64;
    let infl = total_influence(&f.spectrum());
    let bound = 2.0 * plogp(p);
    let mut r = Report::new("edge-isoperimetric", tol);
    r.input("n", f.arity());
    r.log_base("2");
    r.quantity("p", p).quantity("total_influence", infl);
    r.assert_ge("I>=2p*log2(1/p)", infl, bound);
    r.witness_boolean(f);
    r
}

/// `H_inf <= H <= n` and `I <= n`, with both ratios recorded.
pub fn entropy_range_check(f: &BooleanFunction, tol: Tolerance) -> Report {
    let e = efi_ratios(f);
    let n = f64::from(f.arity());
    let mut r = Report::new("entropy", tol);
    r.input("n", f.arity());
    r.log_base("2");
    r.quantity("H", e.entropy)
        .quantity("H_inf", e.min_entropy)
        .quantity("I", e.total_influence)
        .quantity("efi_ratio", e.efi_ratio)
        .quantity("mefi_ratio", e.mefi_ratio)
        .quantity("level_entropy", e.level_entropy);
    r.assert_le("H<=n", e.entropy, n);
    r.assert_le("I<=n", e.total_influence, n);
    r.assert_le("H_inf<=H", e.min_entropy, e.entropy);
    r.witness_boolean(f);
    r
}

/// The prefix-free code on subsets of `[n]`: each member `i` (ascending) is
/// written as `i - 1` in `L = max(1, ceil(log2 n))` binary digits, and the
/// terminator `!` is appended. Alphabet `{0, 1, !}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShannonCode {
    n: u32,
    digits: u32,
}

impl ShannonCode {
    pub const ALPHABET: [char; 3] = ['0', '1', '!'];

    pub fn new(n: u32) -> ShannonCode {
        let ceil_log = if n <= 1 { 0 } else { u32::BITS - (n - 1).leading_zeros() };
        ShannonCode { n, digits: ceil_log.max(1) }
    }

    /// `L = max(1, ceil(log2 n))`.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn codeword(&self, s: Subset) -> String {
        let mut out = String::with_capacity(self.codeword_len(s));
        for i in s.coords() {
            debug_assert!(i <= self.n as usize);
            for b in (0..self.digits).rev() {
                out.push(if (i - 1) >> b & 1 == 1 { '1' } else { '0' });
            }
        }
        out.push('!');
        out
    }

    /// `L |S| + 1`.
    pub fn codeword_len(&self, s: Subset) -> usize {
        self.digits as usize * s.len() + 1
    }

    /// `E|C(S)|` under `S ~ f^(S)^2`.
    pub fn expected_len(&self, s: &Spectrum) -> f64 {
        s.iter().map(|(m, c)| c * c * self.codeword_len(m) as f64).sum()
    }
}

/// `H(f) <= log2(3) (L I(f) + 1)` for `‖f‖_2 = 1`, where `L = max(1, ceil(log2 n))`.
pub fn shannon_code_bound_check(f: &RealFunction, tol: Tolerance) -> Result<Report> {
    let mut r = shannon_code_bound_spectrum(&f.spectrum(), tol)?;
    r.witness_real(f);
    Ok(r)
}

pub fn shannon_code_bound_spectrum(s: &Spectrum, tol: Tolerance) -> Result<Report> {
    let h = fourier_entropy(s)?;
    let infl = total_influence(s);
    let code = ShannonCode::new(s.arity());
    let expected_len = code.expected_len(s);
    let log3 = 3f64.log2();
    let mut r = Report::new("shannon-code-bound", tol);
    r.input("n", s.arity());
    r.log_base("2");
    r.quantity("H", h)
        .quantity("total_influence", infl)
        .quantity("code_digits", f64::from(code.digits()))
        .quantity("expected_code_len", expected_len);
    r.assert_le("H<=log2(3)*E|C|", h, log3 * expected_len);
    r.assert_le("H<=log2(3)*(L*I+1)", h, log3 * (f64::from(code.digits()) * infl + 1.0));
    Ok(r)
}

fn log2_binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    (0..k).map(|j| ((n - j) as f64 / (j + 1) as f64).log2()).sum()
}

/// The chain behind `H(f) <= c log(n) I(f)` for Boolean `f`:
/// `H <= sum_k W^k log2(C(n,k)/W^k)`, `sum_k W^k log2 C(n,k) <= 2 log2(n) I`
/// for `n >= 3`, and hence `H <= (3 + 2 log2 n) I`.
pub fn log_n_bound_check(f: &BooleanFunction, tol: Tolerance) -> Report {
    let s = f.spectrum();
    let n = f.arity();
    let h = fourier_entropy(&s).expect("Boolean spectra have unit norm");
    let infl = total_influence(&s);
    let weights = s.level_weights();
    let lvl = level_entropy(&s);
    let binom_term: f64 =
        weights.iter().enumerate().map(|(k, w)| w * log2_binomial(n, k as u32)).sum();
    let mut r = Report::new("log-n-bound", tol);
    r.input("n", n);
    r.log_base("2");
    r.quantity("H", h)
        .quantity("level_entropy", lvl)
        .quantity("binomial_term", binom_term)
        .quantity("total_influence", infl);
    r.assert_le("H<=level_entropy+binomial_term", h, lvl + binom_term);
    r.assert_le("level_entropy<=H", lvl, h);
    if n >= 3 {
        let log_n = f64::from(n).log2();
        r.assert_le("binomial_term<=2log2(n)I", binom_term, 2.0 * log_n * infl);
        r.assert_le("H<=(3+2log2(n))I", h, (3.0 + 2.0 * log_n) * infl);
    }
    r.witness_boolean(f);
    r
}
