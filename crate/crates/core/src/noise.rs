//! The noise operator `T_rho`, `L^p` norms, and numeric verifiers for the
//! Bonami lemma, the 1-norm trick, hypercontractivity and the truncation lemma.
//!
//! Every verifier evaluates both sides; nothing is assumed to hold.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cube::{check_arity, RealFunction};
use crate::error::{Error, Result};
use crate::fourier::{fwht, inverse_transform, transform, Spectrum};
use crate::report::{Report, Tolerance};

/// A norm exponent `p >= 1`, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn finite(p: f64) -> Result<Exponent> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        Ok(if p.is_infinite() { Exponent::Infinity } else { Exponent::Finite(p) })
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Exponent> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Exponent::Infinity),
            _ => {
                let v = if let Some((a, b)) = s.split_once('/') {
                    let a: f64 = a.trim().parse().map_err(|_| bad_exp(s))?;
                    let b: f64 = b.trim().parse().map_err(|_| bad_exp(s))?;
                    a / b
                } else {
                    s.parse().map_err(|_| bad_exp(s))?
                };
                Exponent::finite(v)
            }
        }
    }
}

fn bad_exp(s: &str) -> Error {
    Error::InvalidArgument(format!("cannot parse exponent {s:?}"))
}

fn moment(values: &[f64], p: f64) -> f64 {
    let sum: f64 = if p == 1.0 {
        values.iter().map(|v| v.abs()).sum()
    } else if p == 2.0 {
        values.iter().map(|v| v * v).sum()
    } else if p == 4.0 {
        values.iter().map(|v| (v * v) * (v * v)).sum()
    } else if p.fract() == 0.0 && p <= 64.0 {
        let k = p as i32;
        values.iter().map(|v| v.abs().powi(k)).sum()
    } else {
        values.iter().map(|v| v.abs().powf(p)).sum()
    };
    sum / values.len() as f64
}

fn norm_of(values: &[f64], p: Exponent) -> f64 {
    match p {
        Exponent::Infinity => values.iter().fold(0.0f64, |m, v| m.max(v.abs())),
        Exponent::Finite(p) => {
            let m = moment(values, p);
            if p == 1.0 {
                m
            } else if p == 2.0 {
                m.sqrt()
            } else {
                m.powf(1.0 / p)
            }
        }
    }
}

/// `‖f‖_p = E[|f|^p]^{1/p}` under the uniform measure; `p = ∞` is the max norm.
pub fn lp_norm(f: &RealFunction, p: Exponent) -> Result<f64> {
    if let Exponent::Finite(v) = p {
        if v.is_nan() || v < 1.0 {
            return Err(Error::InvalidExponent(v));
        }
    }
    Ok(norm_of(f.values(), p))
}

/// Multiplies `f^(S)` by `rho^|S|`.
pub fn apply_noise(s: &Spectrum, rho: f64) -> Spectrum {
    let powers: Vec<f64> = (0..=s.arity() as i32).map(|k| rho.powi(k)).collect();
    let coeffs = s.iter().map(|(m, c)| powers[m.len()] * c).collect();
    Spectrum::from_vec_unchecked(s.arity(), coeffs)
}

/// `T_rho f` as a value table.
pub fn noise_operator(f: &RealFunction, rho: f64) -> RealFunction {
    inverse_transform(&apply_noise(&transform(f), rho))
}

/// `R(x) = prod_i (1 + rho x_i)`, whose Fourier coefficients are `rho^|S|`.
pub fn riesz_product(rho: f64, n: u32) -> Result<RealFunction> {
    check_arity(n)?;
    RealFunction::tabulate(n, |p| {
        (1..=n as usize).map(|i| 1.0 + rho * f64::from(p.coord(i))).product()
    })
}

/// Parameters of one hypercontractivity cell.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseParams {
    pub rho: f64,
    pub p: Exponent,
    pub q: Exponent,
}

impl NoiseParams {
    pub fn new(rho: f64, p: Exponent, q: Exponent) -> Result<NoiseParams> {
        if q.as_f64() < p.as_f64() {
            return Err(Error::ExponentOrder { p: p.as_f64(), q: q.as_f64() });
        }
        Ok(NoiseParams { rho, p, q })
    }

    /// `‖T_{1/√3} f‖_4 <= ‖f‖_2`.
    pub fn four_two() -> NoiseParams {
        NoiseParams { rho: 1.0 / 3f64.sqrt(), p: Exponent::Finite(2.0), q: Exponent::Finite(4.0) }
    }

    /// `‖T_{1/√3} f‖_2 <= ‖f‖_{4/3}`.
    pub fn two_four_thirds() -> NoiseParams {
        NoiseParams {
            rho: 1.0 / 3f64.sqrt(),
            p: Exponent::Finite(4.0 / 3.0),
            q: Exponent::Finite(2.0),
        }
    }

    /// `(p - 1) / (q - 1)`; when `q = p` this is taken as 1 (the contraction
    /// case) and as 0 when `q = ∞ > p`.
    pub fn rho_sq_limit(&self) -> f64 {
        let (p, q) = (self.p.as_f64(), self.q.as_f64());
        if p == q {
            1.0
        } else if q.is_infinite() {
            0.0
        } else {
            (p - 1.0) / (q - 1.0)
        }
    }

    /// `rho^2 <= (p - 1) / (q - 1)`, up to a few ulps so that boundary presets
    /// such as `rho = 1/√3, (p, q) = (2, 4)` qualify. With `q = ∞ > p` only
    /// `rho = 0` qualifies.
    pub fn admissible(&self) -> bool {
        let limit = self.rho_sq_limit();
        self.rho * self.rho <= limit + 4.0 * f64::EPSILON * limit
    }
}

/// `E[f^4] <= 9^d E[f^2]^2` with `d = deg f`. For `n = 1` also checks the
/// moment identities `E[f^4] = a0^4 + a1^4 + 6 a0^2 a1^2`, `E[f^2] = a0^2 + a1^2`.
pub fn bonami_check(f: &RealFunction, tol: Tolerance) -> Report {
    let s = transform(f);
    let d = s.degree();
    let m2 = moment(f.values(), 2.0);
    let m4 = moment(f.values(), 4.0);
    let rhs = 9f64.powi(d as i32) * m2 * m2;
    let mut r = Report::new("bonami", tol);
    r.input("n", f.arity());
    r.quantity("degree", f64::from(d)).quantity("E[f^2]", m2).quantity("E[f^4]", m4);
    r.assert_le("E[f^4]<=9^d*E[f^2]^2", m4, rhs);
    if f.arity() == 1 {
        let (a0, a1) = (s.coeffs()[0], s.coeffs()[1]);
        let (a0s, a1s) = (a0 * a0, a1 * a1);
        r.assert_eq("E[f^4]=a0^4+a1^4+6a0^2a1^2", m4, a0s * a0s + a1s * a1s + 6.0 * a0s * a1s);
        r.assert_eq("E[f^2]=a0^2+a1^2", m2, a0s + a1s);
    }
    r.witness_real(f);
    r
}

/// `‖f‖_2 <= 3^d ‖f‖_1`.
pub fn one_norm_trick_check(f: &RealFunction, tol: Tolerance) -> Report {
    let d = transform(f).degree();
    let n2 = norm_of(f.values(), Exponent::Finite(2.0));
    let n1 = norm_of(f.values(), Exponent::Finite(1.0));
    let mut r = Report::new("norm1", tol);
    r.input("n", f.arity());
    r.quantity("degree", f64::from(d)).quantity("norm_2", n2).quantity("norm_1", n1);
    r.assert_le("norm_2<=3^d*norm_1", n2, 3f64.powi(d as i32) * n1);
    r.witness_real(f);
    r
}

/// `‖T_rho f‖_q <= ‖f‖_p`, asserted only when the cell is admissible.
pub fn hypercontractivity_check(
    f: &RealFunction,
    params: NoiseParams,
    tol: Tolerance,
) -> Result<Report> {
    let params = NoiseParams::new(params.rho, params.p, params.q)?;
    let noisy = noise_operator(f, params.rho);
    let lhs = norm_of(noisy.values(), params.q);
    let rhs = norm_of(f.values(), params.p);
    let mut r = Report::new("hyper", tol);
    r.input("n", f.arity())
        .input("rho", params.rho)
        .input("p", params.p.to_string())
        .input("q", params.q.to_string());
    r.quantity("norm_q(T_rho f)", lhs)
        .quantity("norm_p(f)", rhs)
        .quantity("rho^2", params.rho * params.rho)
        .quantity("(p-1)/(q-1)", params.rho_sq_limit())
        .quantity("admissible", if params.admissible() { 1.0 } else { 0.0 })
        .quantity("slack", rhs - lhs);
    if params.admissible() {
        r.assert_le("norm_q(T_rho f)<=norm_p(f)", lhs, rhs);
    }
    r.witness_real(f);
    Ok(r)
}

/// A fixed sweep of admissible `(p, q, rho)` cells.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperGrid {
    cells: Vec<NoiseParams>,
}

impl HyperGrid {
    pub fn new(cells: Vec<NoiseParams>) -> Result<HyperGrid> {
        for c in &cells {
            NoiseParams::new(c.rho, c.p, c.q)?;
        }
        Ok(HyperGrid { cells })
    }

    /// All admissible cells over fixed exponent and `rho` lists, including
    /// the (4,2) and (2,4/3) presets.
    pub fn standard() -> HyperGrid {
        let ps = [1.0, 1.25, 4.0 / 3.0, 1.5, 2.0, 3.0, 4.0];
        let qs = [4.0 / 3.0, 1.5, 2.0, 3.0, 4.0, 8.0];
        let rhos = [0.0, 0.2, -0.35, 0.5, 1.0 / 3f64.sqrt(), -0.7, 0.9, 1.0];
        let mut cells = Vec::new();
        for &p in &ps {
            let qlist = qs.iter().copied().filter(|&q| q >= p).chain(
                // contraction cells with q = p for p outside the q list
                (!qs.contains(&p)).then_some(p),
            );
            for q in qlist.chain(std::iter::once(f64::INFINITY)) {
                for &rho in &rhos {
                    let q = if q.is_infinite() { Exponent::Infinity } else { Exponent::Finite(q) };
                    let c = NoiseParams { rho, p: Exponent::Finite(p), q };
                    if c.admissible() {
                        cells.push(c);
                    }
                }
            }
        }
        HyperGrid { cells }
    }

    pub fn cells(&self) -> &[NoiseParams] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Runs every admissible cell of `grid` on `f`. `T_rho f` is computed once per
/// distinct `rho` and each norm once per exponent.
pub fn hypercontractivity_grid_check(f: &RealFunction, grid: &HyperGrid, tol: Tolerance) -> Report {
    let spectrum = transform(f);
    let mut noisy: Vec<(f64, Vec<f64>)> = Vec::new();
    let mut f_norms: Vec<(Exponent, f64)> = Vec::new();
    let mut r = Report::new("hyper-grid", tol);
    r.input("n", f.arity()).input("cells", grid.len());
    let mut min_slack = f64::INFINITY;
    let mut asserted = 0usize;
    for c in grid.cells() {
        if !c.admissible() {
            continue;
        }
        let k = match noisy.iter().position(|(rho, _)| *rho == c.rho) {
            Some(k) => k,
            None => {
                let mut v = apply_noise(&spectrum, c.rho).coeffs().to_vec();
                fwht(&mut v);
                noisy.push((c.rho, v));
                noisy.len() - 1
            }
        };
        let lhs = norm_of(&noisy[k].1, c.q);
        let rhs = match f_norms.iter().find(|(p, _)| *p == c.p) {
            Some(&(_, v)) => v,
            None => {
                let v = norm_of(f.values(), c.p);
                f_norms.push((c.p, v));
                v
            }
        };
        min_slack = min_slack.min(rhs - lhs);
        asserted += 1;
        r.assert_le(&format!("p={},q={},rho={:.6}", c.p, c.q, c.rho), lhs, rhs);
    }
    r.quantity("asserted_cells", asserted as f64);
    r.quantity("min_slack", if asserted > 0 { min_slack } else { 0.0 });
    r.witness_real(f);
    r
}

/// `‖f^{<=d}‖_2^2 <= √3^d ‖f‖_2 ‖f‖_{4/3}`.
pub fn truncation_lemma_check(f: &RealFunction, d: u32, tol: Tolerance) -> Result<Report> {
    let trunc = transform(f).truncate(d)?;
    let lhs = trunc.squared_norm();
    let n2 = norm_of(f.values(), Exponent::Finite(2.0));
    let n43 = norm_of(f.values(), Exponent::Finite(4.0 / 3.0));
    let rhs = 3f64.sqrt().powi(d as i32) * n2 * n43;
    let mut r = Report::new("trunc", tol);
    r.input("n", f.arity()).input("d", d);
    r.quantity("norm_2(f<=d)^2", lhs).quantity("norm_2", n2).quantity("norm_4/3", n43);
    r.assert_le("norm_2(f<=d)^2<=sqrt3^d*norm_2*norm_4/3", lhs, rhs);
    r.witness_real(f);
    Ok(r)
}
