//! Voting-rule results: affine Boolean functions, the FKN closeness-to-dictator
//! bound, the KKL influence bounds and the greedy Ben-Or–Linial coalition.
//!
//! Constants in this module use natural logarithms and exponentials.

use serde::{Deserialize, Serialize};

use crate::cube::{BooleanFunction, Sign, Subset};
use crate::error::{Error, Result};
use crate::influence::{pivot_profile, total_influence};
use crate::report::{Report, Tolerance};

/// Constant of the FKN bound, `2 + 3^6`.
pub const FKN_CONSTANT: f64 = 731.0;

/// `c_1 = (2e)^-4` in `max_i I_i >= c_1 exp(-c_2 I / Var)`.
pub fn kkl_c1() -> f64 {
    (2.0 * std::f64::consts::E).powi(-4)
}

/// `c_2` in the same bound.
pub const KKL_C2: f64 = 12.0;

/// Estimated constant in `max_i I_i >= c (ln n / n) Var`. Only reported.
pub const KKL_C: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "coord")]
pub enum Affine {
    Constant,
    Dictator(usize),
    AntiDictator(usize),
    NotAffine,
}

/// A Boolean function with no Fourier mass above level 1 is a constant or `±x_i`.
pub fn affine_classify(f: &BooleanFunction) -> Affine {
    let s = f.spectrum();
    if s.iter().any(|(m, c)| m.len() >= 2 && c != 0.0) {
        return Affine::NotAffine;
    }
    match (1..=f.arity() as usize).find(|&i| s.get(Subset::singleton(i)) != 0.0) {
        None => Affine::Constant,
        Some(i) if s.get(Subset::singleton(i)) > 0.0 => Affine::Dictator(i),
        Some(i) => Affine::AntiDictator(i),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FknResult {
    /// `W^1(f)`.
    pub w1: f64,
    /// Coordinate with the largest `|f^({i})|` (lowest on ties).
    pub best_i: usize,
    /// `a_i = f^({best_i})`.
    pub coefficient: f64,
    /// `‖f - a_i x_i‖_2^2`, computed pointwise.
    pub distance: f64,
    /// `731 (1 - W^1)`.
    pub bound: f64,
    /// `sum_i a_i^4`, compared against `1 - 731 δ`.
    pub sum_fourth: f64,
    /// `distance / (1 - W^1)` when `W^1 < 1`.
    pub observed_constant: Option<f64>,
}

pub fn fkn(f: &BooleanFunction) -> Result<FknResult> {
    let n = f.arity() as usize;
    if n == 0 {
        return Err(Error::InvalidArgument("FKN needs at least one coordinate".into()));
    }
    let s = f.spectrum();
    let linear: Vec<f64> = (1..=n).map(|i| s.get(Subset::singleton(i))).collect();
    let w1: f64 = linear.iter().map(|a| a * a).sum();
    let mut best_i = 1;
    for (k, a) in linear.iter().enumerate() {
        if a.abs() > linear[best_i - 1].abs() {
            best_i = k + 1;
        }
    }
    let a = linear[best_i - 1];
    let distance = (0..f.len())
        .map(|x| {
            let r = f64::from(f.value(x)) - a * f64::from(crate::cube::Point(x).coord(best_i));
            r * r
        })
        .sum::<f64>()
        / f.len() as f64;
    let delta = 1.0 - w1;
    Ok(FknResult {
        w1,
        best_i,
        coefficient: a,
        distance,
        bound: FKN_CONSTANT * delta,
        sum_fourth: linear.iter().map(|a| a * a * a * a).sum(),
        observed_constant: (delta > 0.0).then(|| distance / delta),
    })
}

/// `‖f - a_i x_i‖_2^2 <= 731 (1 - W^1(f))` and `sum_i a_i^4 >= 1 - 731 (1 - W^1)`.
pub fn fkn_check(f: &BooleanFunction, tol: Tolerance) -> Result<(FknResult, Report)> {
    let res = fkn(f)?;
    let mut r = Report::new("fkn", tol);
    r.input("n", f.arity());
    r.quantity("W1", res.w1)
        .quantity("best_i", res.best_i as f64)
        .quantity("a_i", res.coefficient)
        .quantity("distance", res.distance);
    if let Some(c) = res.observed_constant {
        r.quantity("observed_constant", c);
    }
    r.assert_le("distance<=731(1-W1)", res.distance, res.bound);
    r.assert_ge("sum_a_i^4>=1-731(1-W1)", res.sum_fourth, 1.0 - res.bound);
    r.assert_le("distance<=1", res.distance, 1.0);
    r.witness_boolean(f);
    Ok((res, r))
}

/// `max_i I_i(f) >= (2e)^-4 exp(-12 I(f) / Var(f))`.
pub fn kkl_intermediate_check(f: &BooleanFunction, tol: Tolerance) -> Result<Report> {
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let s = f.spectrum();
    let var = s.variance();
    let prof = pivot_profile(f);
    let (i, max) = prof.max().expect("non-constant functions have coordinates");
    let rhs = kkl_c1() * (-KKL_C2 * prof.total / var).exp();
    let mut r = Report::new("kkl", tol);
    r.input("n", f.arity());
    r.log_base("e");
    r.quantity("max_influence", max)
        .quantity("argmax", i as f64)
        .quantity("total_influence", prof.total)
        .quantity("variance", var);
    r.assert_ge("max_I_i>=c1*exp(-c2*I/Var)", max, rhs);
    r.witness_boolean(f);
    Ok(r)
}

/// Empirical KKL constant `max_i I_i · n / (ln n · Var f)`.
pub fn kkl_ratio(f: &BooleanFunction) -> Result<f64> {
    let n = f.arity();
    if n < 2 {
        return Err(Error::InvalidArgument(format!("KKL ratio needs n >= 2, got {n}")));
    }
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let var = f.spectrum().variance();
    let (_, max) = pivot_profile(f).max().expect("n >= 2");
    Ok(max * f64::from(n) / (f64::from(n).ln() * var))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoalitionStep {
    /// Coordinate fixed at this step, in the original numbering.
    pub coordinate: usize,
    /// `max_i I_i(f_k)` before fixing.
    pub max_influence: f64,
    /// `E[f_k]` before fixing, in terms of the input function.
    pub expectation_before: f64,
    /// `E[f_{k+1}]`.
    pub expectation_after: f64,
    /// `E[f_{k+1}] - E[f_k]` equals the max influence exactly.
    pub bribe_exact: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoalitionTrace {
    pub direction: i8,
    pub target: f64,
    pub initial_expectation: f64,
    pub steps: Vec<CoalitionStep>,
    /// Fixed coordinates in the order chosen.
    pub coalition: Vec<usize>,
    pub final_expectation: f64,
}

impl CoalitionTrace {
    /// `ceil(1.98 n / (c c_0 ln n))` with `c = 0.05` and `c_0` the smallest
    /// variance met before the target was reached. Reported, never asserted.
    pub fn size_bound(&self, n: u32, min_variance: f64) -> Option<f64> {
        (n >= 2 && min_variance > 0.0)
            .then(|| (1.98 * f64::from(n) / (KKL_C * min_variance * f64::from(n).ln())).ceil())
    }

    pub fn to_report(&self, n: u32, tol: Tolerance) -> Report {
        let mut r = Report::new("coalition", tol);
        r.input("n", n).input("target", self.target).input("direction", self.direction);
        r.quantity("initial_expectation", self.initial_expectation)
            .quantity("final_expectation", self.final_expectation)
            .quantity("coalition_size", self.coalition.len() as f64);
        let min_var = self
            .steps
            .iter()
            .map(|s| 1.0 - s.expectation_before * s.expectation_before)
            .fold(f64::INFINITY, f64::min);
        if let Some(b) = self.size_bound(n, min_var) {
            r.quantity("size_bound_formula", b);
        }
        let d = f64::from(self.direction);
        for (k, s) in self.steps.iter().enumerate() {
            r.assert_with(
                &format!("step{}:bribe(x_{})", k + 1, s.coordinate),
                d * (s.expectation_after - s.expectation_before),
                crate::report::Relation::Eq,
                s.max_influence,
                Tolerance::EXACT,
            );
        }
        r.assert_ge("target_reached", d * self.final_expectation, self.target);
        r.assert_le("coalition_size<=n", self.coalition.len() as f64, f64::from(n));
        r
    }
}

/// Greedy coalition: repeatedly fix the most influential remaining voter (lowest
/// index on ties) to `direction` until `direction · E[f] >= target`.
pub fn greedy_coalition(f: &BooleanFunction, target: f64, direction: Sign) -> Result<CoalitionTrace> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::InvalidArgument(format!("target {target} outside (0, 1)")));
    }
    if let Some((p, coord)) = f.monotone_violation() {
        return Err(Error::NotMonotone { point: p.0, coord });
    }
    // direction -1 runs the +1 path on x -> -f(-x), which is monotone too
    let mut cur = match direction {
        Sign::Plus => f.clone(),
        Sign::Minus => f.reflect().negate(),
    };
    let d = f64::from(direction.value());
    // adding 0.0 turns -0.0 into 0.0
    let signed = |v: f64| d * v + 0.0;
    let mut expectation = cur.spectrum().mean();
    if expectation < -target {
        return Err(Error::Precondition(format!(
            "E[f] = {} is on the wrong side of {}",
            signed(expectation),
            -d * target
        )));
    }
    let initial = expectation;
    let mut remaining: Vec<usize> = (1..=f.arity() as usize).collect();
    let mut steps = Vec::new();
    while expectation < target {
        // cur is monotone and not constantly -1, so with no coordinates left
        // it is +1 and the loop has already ended
        let (i, max) = pivot_profile(&cur).max().expect("coordinates remain below target");
        let next = cur.restrict(i, Sign::Plus)?;
        debug_assert!(next.is_monotone());
        let after = next.spectrum().mean();
        steps.push(CoalitionStep {
            coordinate: remaining[i - 1],
            max_influence: max,
            expectation_before: signed(expectation),
            expectation_after: signed(after),
            bribe_exact: after - expectation == max,
        });
        remaining.remove(i - 1);
        expectation = after;
        cur = next;
    }
    Ok(CoalitionTrace {
        direction: direction.value(),
        target,
        initial_expectation: signed(initial),
        coalition: steps.iter().map(|s| s.coordinate).collect(),
        steps,
        final_expectation: signed(expectation),
    })
}

/// Total influence of `f` straight from its spectrum, for reports.
pub fn spectral_total_influence(f: &BooleanFunction) -> f64 {
    total_influence(&f.spectrum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn affine() {
        assert_eq!(affine_classify(&zoo::dictator(3, 2).unwrap()), Affine::Dictator(2));
        assert_eq!(affine_classify(&zoo::dictator(2, 1).unwrap().negate()), Affine::AntiDictator(1));
        assert_eq!(affine_classify(&zoo::or_fn(2).unwrap()), Affine::NotAffine);
        let c = BooleanFunction::constant(3, Sign::Minus).unwrap();
        assert_eq!(affine_classify(&c), Affine::Constant);
    }

    #[test]
    fn fkn_examples() {
        let (res, r) = fkn_check(&zoo::dictator(4, 1).unwrap(), Tolerance::default()).unwrap();
        assert_eq!((res.w1, res.distance, res.bound), (1.0, 0.0, 0.0));
        assert!(res.observed_constant.is_none());
        assert!(r.passed());
        let (res, r) = fkn_check(&zoo::majority(3).unwrap(), Tolerance::default()).unwrap();
        assert_eq!(res.w1, 0.75);
        assert_eq!(res.distance, 0.75);
        assert_eq!(res.bound, 731.0 / 4.0);
        assert_eq!(res.best_i, 1);
        assert!(r.passed());
    }

    #[test]
    fn kkl_examples() {
        let r = kkl_intermediate_check(&zoo::majority(3).unwrap(), Tolerance::default()).unwrap();
        assert_eq!(r.assertions[0].lhs, 0.5);
        let expect = kkl_c1() * (-18f64).exp();
        assert!((r.assertions[0].rhs - expect).abs() < 1e-24);
        assert!((expect - 1.7e-11).abs() < 1e-12);
        assert!(r.passed());
        let c = BooleanFunction::constant(2, Sign::Plus).unwrap();
        assert_eq!(kkl_intermediate_check(&c, Tolerance::default()), Err(Error::ConstantFunction));
        let ratio = kkl_ratio(&zoo::majority(3).unwrap()).unwrap();
        assert!((ratio - 1.5 / 3f64.ln()).abs() < 1e-12);
        assert!((ratio - 1.365).abs() < 1e-3);
        let ratio = kkl_ratio(&zoo::dictator(2, 1).unwrap()).unwrap();
        assert!((ratio - 2.885).abs() < 1e-3);
        assert!(kkl_ratio(&zoo::dictator(1, 1).unwrap()).is_err());
    }

    #[test]
    fn coalition_or2() {
        let t = greedy_coalition(&zoo::or_fn(2).unwrap(), 0.99, Sign::Plus).unwrap();
        assert_eq!(t.coalition, vec![1]);
        assert_eq!(t.final_expectation, 1.0);
        assert_eq!(t.steps[0].expectation_before, 0.5);
        assert!(t.steps[0].bribe_exact);
    }

    #[test]
    fn coalition_and() {
        for n in 1..=6 {
            let t = greedy_coalition(&zoo::and_fn(n).unwrap(), 0.99, Sign::Plus).unwrap();
            assert_eq!(t.coalition.len(), n as usize);
            for (k, s) in t.steps.iter().enumerate() {
                // E[AND_m] = -1 + 2^{1-m} with m = n - k
                let m = f64::from(n) - k as f64;
                assert_eq!(s.expectation_before, -1.0 + (1.0 - m).exp2());
            }
        }
    }

    #[test]
    fn coalition_minus_direction() {
        let t = greedy_coalition(&zoo::and_fn(2).unwrap(), 0.99, Sign::Minus).unwrap();
        assert_eq!(t.coalition, vec![1]);
        assert_eq!(t.final_expectation, -1.0);
        let r = t.to_report(2, Tolerance::default());
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn coalition_errors() {
        let xor = zoo::parity(2, Subset(0b11)).unwrap();
        assert!(matches!(greedy_coalition(&xor, 0.99, Sign::Plus), Err(Error::NotMonotone { .. })));
        let c = BooleanFunction::constant(2, Sign::Minus).unwrap();
        assert!(matches!(greedy_coalition(&c, 0.99, Sign::Plus), Err(Error::Precondition(_))));
        assert!(greedy_coalition(&c, 1.5, Sign::Plus).is_err());
        let plus = BooleanFunction::constant(2, Sign::Plus).unwrap();
        assert!(greedy_coalition(&plus, 0.99, Sign::Plus).unwrap().coalition.is_empty());
    }
}
