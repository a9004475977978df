//! Discrete derivatives and influences.
//!
//! Pivot counting is exact and only defined for Boolean functions. The
//! spectral formulas `I_i = sum_{S ∋ i} f^(S)^2` and `I = sum_S |S| f^(S)^2`
//! extend influence to real-valued functions.

use serde::{Deserialize, Serialize};

use crate::cube::{check_coord, BooleanFunction, RealFunction, Subset};
use crate::error::{Error, Result};
use crate::fourier::Spectrum;
use crate::report::{Report, Tolerance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InfluenceMethod {
    PivotCount,
    Spectral,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfluenceProfile {
    /// `I_1, ..., I_n`.
    pub per_coordinate: Vec<f64>,
    pub total: f64,
    pub method: InfluenceMethod,
}

impl InfluenceProfile {
    /// `(i, I_i)` with the largest influence; ties go to the lowest `i`.
    pub fn max(&self) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (k, &v) in self.per_coordinate.iter().enumerate() {
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((k + 1, v));
            }
        }
        best
    }
}

/// `D_i f(x) = (f(x^{i->1}) - f(x^{i->-1})) / 2`.
pub fn derivative(f: &RealFunction, i: usize) -> Result<RealFunction> {
    let n = f.arity();
    check_coord(i, n)?;
    let bit = 1usize << (i - 1);
    let v = f.values();
    let out = (0..v.len()).map(|x| (v[x & !bit] - v[x | bit]) / 2.0).collect();
    Ok(RealFunction::from_vec_unchecked(n, out))
}

/// Spectrum of `D_i f`: `f^(S ∪ {i})` at every `S` not containing `i`, else 0.
pub fn derivative_spectrum(s: &Spectrum, i: usize) -> Result<Spectrum> {
    check_coord(i, s.arity())?;
    let bit = 1usize << (i - 1);
    let coeffs = (0..s.coeffs().len())
        .map(|m| if m & bit == 0 { s.coeffs()[m | bit] } else { 0.0 })
        .collect();
    Ok(Spectrum::from_vec_unchecked(s.arity(), coeffs))
}

/// `Pr[f(x) != f(x^{(i)})]` by counting pivotal edges.
pub fn influence_pivot(f: &BooleanFunction, i: usize) -> Result<f64> {
    let edges = f.pivot_edges(i)?;
    // each pivotal edge contributes two pivotal points out of 2^n
    Ok(edges as f64 * (1.0 - f.arity() as f64).exp2())
}

pub fn pivot_profile(f: &BooleanFunction) -> InfluenceProfile {
    let per: Vec<f64> = (1..=f.arity() as usize)
        .map(|i| influence_pivot(f, i).expect("coordinate in range"))
        .collect();
    let total = per.iter().sum();
    InfluenceProfile { per_coordinate: per, total, method: InfluenceMethod::PivotCount }
}

pub fn influence_spectral(s: &Spectrum, i: usize) -> Result<f64> {
    check_coord(i, s.arity())?;
    Ok(s.iter().filter(|(m, _)| m.contains(i)).map(|(_, c)| c * c).sum())
}

/// `I(f) = sum_S |S| f^(S)^2`.
pub fn total_influence(s: &Spectrum) -> f64 {
    s.iter().map(|(m, c)| m.len() as f64 * c * c).sum()
}

pub fn spectral_profile(s: &Spectrum) -> InfluenceProfile {
    let mut per = vec![0.0; s.arity() as usize];
    for (m, c) in s.iter() {
        let w = c * c;
        for i in m.coords() {
            per[i - 1] += w;
        }
    }
    InfluenceProfile { per_coordinate: per, total: total_influence(s), method: InfluenceMethod::Spectral }
}

/// For monotone `f`: `I_i(f) = f^({i})` for every `i` and `I(f) = sum_i f^({i})`.
pub fn monotone_influence_check(f: &BooleanFunction, tol: Tolerance) -> Result<Report> {
    if let Some((p, coord)) = f.monotone_violation() {
        return Err(Error::NotMonotone { point: p.0, coord });
    }
    let s = f.spectrum();
    let prof = pivot_profile(f);
    let mut r = Report::new("monotone-influence", tol);
    r.input("n", f.arity());
    let mut max_dev = 0.0f64;
    let mut linear_sum = 0.0;
    for (k, &infl) in prof.per_coordinate.iter().enumerate() {
        let a = s.get(Subset::singleton(k + 1));
        linear_sum += a;
        max_dev = max_dev.max((infl - a).abs());
        r.assert_eq(&format!("I_{}", k + 1), infl, a);
    }
    r.quantity("max_deviation", max_dev);
    r.quantity("total_influence", prof.total);
    r.assert_eq("total", prof.total, linear_sum);
    r.witness_boolean(f);
    Ok(r)
}

/// `Var(f) <= I(f)`, with equality exactly when the spectrum lives on levels 0 and 1.
pub fn poincare_check(f: &RealFunction, tol: Tolerance) -> Report {
    let s = f.spectrum();
    let var = s.variance();
    let infl = total_influence(&s);
    let high: f64 = s.iter().filter(|(m, _)| m.len() >= 2).map(|(_, c)| c * c).sum();
    let mut r = Report::new("poincare", tol);
    r.input("n", f.arity());
    r.quantity("variance", var)
        .quantity("total_influence", infl)
        .quantity("slack", infl - var)
        .quantity("mass_above_level_1", high)
        .quantity("tight", if tol.slack(var) >= (infl - var).abs() { 1.0 } else { 0.0 });
    r.assert_le("variance<=influence", var, infl);
    r.witness_real(f);
    r
}
