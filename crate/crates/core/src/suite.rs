//! Named verifiers and an exhaustive driver over all Boolean functions of a
//! given arity.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cube::{BooleanFunction, RealFunction};
use crate::entropy;
use crate::error::{Error, Result};
use crate::format::write_bfn;
use crate::fourier::{parseval_check, transform};
use crate::influence::{monotone_influence_check, poincare_check};
use crate::noise::{self, HyperGrid, NoiseParams};
use crate::report::{Relation, Report, Tolerance};
use crate::social;

/// Largest arity accepted by [`exhaustive_verify`].
pub const EXHAUSTIVE_MAX: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Parseval,
    Poincare,
    Bonami,
    Norm1,
    Hyper,
    Trunc,
    Monotone,
    Entropy,
    Owz,
    EdgeIso,
    Shannon,
    LogN,
    Fkn,
    Kkl,
}

impl Check {
    pub const ALL: [Check; 14] = [
        Check::Parseval,
        Check::Poincare,
        Check::Bonami,
        Check::Norm1,
        Check::Hyper,
        Check::Trunc,
        Check::Monotone,
        Check::Entropy,
        Check::Owz,
        Check::EdgeIso,
        Check::Shannon,
        Check::LogN,
        Check::Fkn,
        Check::Kkl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Parseval => "parseval",
            Check::Poincare => "poincare",
            Check::Bonami => "bonami",
            Check::Norm1 => "norm1",
            Check::Hyper => "hyper",
            Check::Trunc => "trunc",
            Check::Monotone => "monotone",
            Check::Entropy => "entropy",
            Check::Owz => "owz",
            Check::EdgeIso => "edge-iso",
            Check::Shannon => "shannon",
            Check::LogN => "log-n",
            Check::Fkn => "fkn",
            Check::Kkl => "kkl",
        }
    }

    /// Whether the check needs a `±1`-valued function.
    pub fn boolean_only(self) -> bool {
        matches!(
            self,
            Check::Monotone
                | Check::Entropy
                | Check::Owz
                | Check::EdgeIso
                | Check::LogN
                | Check::Fkn
                | Check::Kkl
        )
    }
}

/// Parameters shared by the checks.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct VerifyOptions {
    /// A single hypercontractivity cell. `None` runs the (4,2) and (2,4/3)
    /// presets and the standard grid.
    pub hyper: Option<NoiseParams>,
    /// Truncation degree. `None` runs every `d` in `0..=n`.
    pub trunc_degree: Option<u32>,
}

fn hyper_all(f: &RealFunction, opts: &VerifyOptions, tol: Tolerance) -> Result<Report> {
    if let Some(p) = opts.hyper {
        return noise::hypercontractivity_check(f, p, tol);
    }
    let mut r = Report::new("hyper", tol);
    r.input("n", f.arity());
    r.absorb("(4,2):", noise::hypercontractivity_check(f, NoiseParams::four_two(), tol)?);
    r.absorb("(2,4/3):", noise::hypercontractivity_check(f, NoiseParams::two_four_thirds(), tol)?);
    r.absorb("grid:", noise::hypercontractivity_grid_check(f, &HyperGrid::standard(), tol));
    r.witness_real(f);
    Ok(r)
}

fn trunc_all(f: &RealFunction, opts: &VerifyOptions, tol: Tolerance) -> Result<Report> {
    if let Some(d) = opts.trunc_degree {
        return noise::truncation_lemma_check(f, d, tol);
    }
    let mut r = Report::new("trunc", tol);
    r.input("n", f.arity());
    for d in 0..=f.arity() {
        r.absorb(&format!("d={d}:"), noise::truncation_lemma_check(f, d, tol)?);
    }
    r.witness_real(f);
    Ok(r)
}

/// Runs a check on a real-valued table. Boolean-only checks require `f` to be `±1`-valued.
pub fn check_real(f: &RealFunction, check: Check, opts: &VerifyOptions, tol: Tolerance) -> Result<Report> {
    if check.boolean_only() {
        return check_boolean(&BooleanFunction::from_real(f)?, check, opts, tol);
    }
    Ok(match check {
        Check::Parseval => parseval_check(f, tol),
        Check::Poincare => poincare_check(f, tol),
        Check::Bonami => noise::bonami_check(f, tol),
        Check::Norm1 => noise::one_norm_trick_check(f, tol),
        Check::Hyper => hyper_all(f, opts, tol)?,
        Check::Trunc => trunc_all(f, opts, tol)?,
        Check::Shannon => {
            let s = transform(f);
            let mut r = entropy::shannon_code_bound_spectrum(&s, tol)?;
            r.witness_real(f);
            r
        }
        _ => unreachable!("boolean-only checks handled above"),
    })
}

/// Runs a check on a Boolean function. Fails with an error when the check
/// does not apply (monotone identity on a non-monotone input, KKL on a constant,
/// FKN at arity 0).
pub fn check_boolean(
    f: &BooleanFunction,
    check: Check,
    opts: &VerifyOptions,
    tol: Tolerance,
) -> Result<Report> {
    let mut r = match check {
        Check::Monotone => monotone_influence_check(f, tol)?,
        Check::Entropy => entropy::entropy_range_check(f, tol),
        Check::Owz => entropy::owz_level_bound_check(f, tol),
        Check::EdgeIso => entropy::edge_isoperimetric_check(f, tol),
        Check::LogN => entropy::log_n_bound_check(f, tol),
        Check::Fkn => social::fkn_check(f, tol)?.1,
        Check::Kkl => social::kkl_intermediate_check(f, tol)?,
        _ => check_real(&f.to_real(), check, opts, tol)?,
    };
    // real-valued checks attach real witnesses; prefer the table form
    for a in r.assertions.iter_mut().filter(|a| !a.pass) {
        a.witness = Some(write_bfn(f));
    }
    Ok(r)
}

/// Runs `check` when it applies to `f`; `Ok(None)` when it does not.
fn check_if_applicable(
    f: &BooleanFunction,
    check: Check,
    opts: &VerifyOptions,
    tol: Tolerance,
) -> Result<Option<Report>> {
    let applies = match check {
        Check::Monotone => f.is_monotone(),
        Check::Kkl => !f.is_constant(),
        Check::Fkn => f.arity() >= 1,
        _ => true,
    };
    if applies {
        check_boolean(f, check, opts, tol).map(Some)
    } else {
        Ok(None)
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct Tally {
    functions: u64,
    assertions: u64,
    violations: u64,
    first_violation: Option<u64>,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            functions: self.functions + o.functions,
            assertions: self.assertions + o.assertions,
            violations: self.violations + o.violations,
            first_violation: match (self.first_violation, o.first_violation) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
        }
    }
}

const CHUNK: u64 = 1024;

/// Runs every check in `checks` on all `2^(2^n)` Boolean functions of arity `n`.
/// One assertion per check states that no violation occurred; a failure carries
/// the lowest-index violating table as witness. Counts do not depend on `threads`.
pub fn exhaustive_verify(
    n: u32,
    checks: &[Check],
    opts: &VerifyOptions,
    tol: Tolerance,
    threads: usize,
) -> Result<Report> {
    if n > EXHAUSTIVE_MAX {
        return Err(Error::InvalidArgument(format!(
            "exhaustive verification limited to n <= {EXHAUSTIVE_MAX}, got {n}"
        )));
    }
    if checks.is_empty() {
        return Err(Error::InvalidArgument("no checks selected".into()));
    }
    let total = 1u64 << (1u32 << n);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let k = checks.len();
    let run_chunk = |start: u64| -> Result<Vec<Tally>> {
        let mut t = vec![Tally::default(); k];
        for index in start..(start + CHUNK).min(total) {
            let f = BooleanFunction::from_table_index(n, index)?;
            for (c, &check) in checks.iter().enumerate() {
                if let Some(r) = check_if_applicable(&f, check, opts, tol)? {
                    let failed = r.failures().count() as u64;
                    t[c] = t[c].merge(Tally {
                        functions: 1,
                        assertions: r.assertions.len() as u64,
                        violations: failed,
                        first_violation: (failed > 0).then_some(index),
                    });
                }
            }
        }
        Ok(t)
    };
    let starts: Vec<u64> = (0..total.div_ceil(CHUNK)).map(|c| c * CHUNK).collect();
    let tallies = pool.install(|| {
        starts.par_iter().map(|&s| run_chunk(s)).try_reduce(
            || vec![Tally::default(); k],
            |a, b| Ok(a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect()),
        )
    })?;
    let mut r = Report::new("verify-all", tol);
    r.input("n", n)
        .input("checks", checks.iter().map(|c| c.name()).collect::<Vec<_>>())
        .input("functions", total);
    for (check, t) in checks.iter().zip(&tallies) {
        let name = check.name();
        r.quantity(&format!("{name}.functions"), t.functions as f64)
            .quantity(&format!("{name}.assertions"), t.assertions as f64)
            .quantity(&format!("{name}.violations"), t.violations as f64);
        r.assert_with(
            &format!("{name}:violations==0"),
            t.violations as f64,
            Relation::Eq,
            0.0,
            Tolerance::EXACT,
        );
        if let Some(index) = t.first_violation {
            let w = write_bfn(&BooleanFunction::from_table_index(n, index)?);
            r.assertions.last_mut().expect("just pushed").witness = Some(w);
        }
    }
    Ok(r)
}
