//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use boolcube::entropy::efi_ratios;
use boolcube::fourier::{transform, transform_boolean};
use boolcube::influence::{monotone_influence_check, pivot_profile, spectral_profile};
use boolcube::social::{fkn_check, greedy_coalition, kkl_intermediate_check};
use boolcube::suite::{check_real, exhaustive_verify, Check, VerifyOptions};
use boolcube::survey::{efi_survey, SurveyConfig, SurveyMode};
use boolcube::noise::HyperGrid;
use boolcube::{cli, zoo, BooleanFunction, Error, Report, Sign, Subset, Tolerance};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: Tolerance = Tolerance(1e-9);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(r: &Report) -> Result<(), String> {
    ensure(r.passed(), || r.to_text())
}

/// Zoo members of arity `1..=max_n`, with a label.
fn zoo_upto(max_n: u32) -> Vec<(String, BooleanFunction)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for i in 1..=n as usize {
            out.push((format!("dictator({n},{i})"), zoo::dictator(n, i).unwrap()));
        }
        out.push((format!("parity({n},full)"), zoo::parity(n, Subset::full(n)).unwrap()));
        out.push((format!("parity({n},odd)"), zoo::parity(n, Subset(0x5555 & Subset::full(n).0)).unwrap()));
        out.push((format!("or({n})"), zoo::or_fn(n).unwrap()));
        out.push((format!("and({n})"), zoo::and_fn(n).unwrap()));
        if n % 2 == 1 {
            out.push((format!("maj({n})"), zoo::majority(n).unwrap()));
        }
        out.push((format!("const({n})"), BooleanFunction::constant(n, Sign::Plus).unwrap()));
        for w in 1..=n as usize {
            let c = n as usize / w;
            if c * w == n as usize && c >= 2 && w >= 2 {
                out.push((format!("tribes({w},{c})"), zoo::tribes(&zoo::Partition::uniform(w, c).unwrap()).unwrap()));
            }
        }
    }
    out
}

fn transform_correctness() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for n in 0..=10u32 {
        for _ in 0..1000 {
            let f = random_real(&mut rng, n);
            let fast = transform(&f);
            let direct = direct_transform(n, f.values());
            for (a, b) in fast.coeffs().iter().zip(&direct) {
                let err = (a - b).abs() / b.abs().max(1.0);
                worst = worst.max(err);
                ensure(err <= 1e-12, || format!("n={n}: fast {a} vs direct {b}"))?;
            }
        }
    }
    let mut boolean = 0;
    for n in 0..=3u32 {
        for index in 0..1u64 << (1u32 << n) {
            let f = BooleanFunction::from_table_index(n, index).unwrap();
            let direct = direct_transform(n, &boolean_values(&f));
            ensure(transform_boolean(&f).coeffs() == direct.as_slice(), || format!("table {}", f.to_bit_string()))?;
            boolean += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("11000 real (max rel err {worst:.1e}), {boolean} Boolean exact, {elapsed:.2?}"))
}

fn closed_forms() -> Outcome {
    for n in 0..=15u32 {
        let or = transform_boolean(&zoo::or_fn(n).unwrap());
        ensure(zoo::or_spectrum(n).unwrap() == or, || format!("OR_{n}"))?;
        let and = transform_boolean(&zoo::and_fn(n).unwrap());
        ensure(zoo::and_spectrum(n).unwrap() == and, || format!("AND_{n}"))?;
    }
    for n in [3u32, 5, 7, 9, 11] {
        let fast = transform_boolean(&zoo::majority(n).unwrap());
        let formula = zoo::majority_spectrum(n).unwrap();
        for (a, b) in formula.coeffs().iter().zip(fast.coeffs()) {
            ensure((a - b).abs() <= 1e-12, || format!("Maj_{n}: {a} vs {b}"))?;
        }
    }
    // (1/2)(1 + x1 + x2 - x1 x2)
    let or2 = BooleanFunction::from_bit_string(2, "0001").unwrap();
    let expect = [0.5f64, 0.5, 0.5, -0.5];
    let got = transform_boolean(&or2);
    ensure(got.coeffs().iter().zip(&expect).all(|(a, b)| a.to_bits() == b.to_bits()), || format!("{got:?}"))?;
    ensure(zoo::or_fn(2).unwrap() == or2, || "OR_2 table".into())?;
    Ok("OR/AND n<=15 exact, Maj 3..11, OR_2 example bitwise".into())
}

fn influence_identities(f: &BooleanFunction, monotone: &mut u64) -> Result<(), String> {
    let pivot = pivot_profile(f);
    let s = transform_boolean(f);
    let spectral = spectral_profile(&s);
    ensure(pivot.per_coordinate == spectral.per_coordinate, || f.to_bit_string())?;
    ensure(pivot.total == spectral.total, || format!("total {}", f.to_bit_string()))?;
    if f.is_monotone() {
        *monotone += 1;
        for i in 1..=f.arity() as usize {
            ensure(pivot.per_coordinate[i - 1] == s.get(Subset::singleton(i)), || format!("I_{i}"))?;
        }
        passed(&monotone_influence_check(f, Tolerance::EXACT).map_err(|e| e.to_string())?)?;
    }
    Ok(())
}

fn influence_duality() -> Outcome {
    let start = Instant::now();
    let mut monotone = 0;
    for index in 0..1u64 << 16 {
        influence_identities(&BooleanFunction::from_table_index(4, index).unwrap(), &mut monotone)?;
    }
    ensure(monotone == 168, || format!("{monotone} monotone functions at n=4"))?;
    let zoo = zoo_upto(15);
    for (label, f) in &zoo {
        influence_identities(f, &mut monotone).map_err(|e| format!("{label}: {e}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "65536 tables + {} zoo functions, {} monotone identities, {elapsed:.2?}",
        zoo.len(),
        monotone
    ))
}

fn violations(r: &Report) -> f64 {
    r.quantities.iter().filter(|(k, _)| k.ends_with(".violations")).map(|(_, v)| v).sum()
}

fn inequality_suite() -> Outcome {
    let checks = [Check::Poincare, Check::Bonami, Check::Norm1, Check::Trunc, Check::Hyper];
    let opts = VerifyOptions::default();
    let cells = HyperGrid::standard().len();
    ensure(cells >= 50, || format!("grid has {cells} cells"))?;
    let mut assertions = 0.0;
    for n in 0..=4 {
        let r = exhaustive_verify(n, &checks, &opts, TOL, 0).map_err(|e| e.to_string())?;
        passed(&r)?;
        assertions += r.quantities.iter().filter(|(k, _)| k.ends_with(".assertions")).map(|(_, v)| v).sum::<f64>();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut random = 0u64;
    for k in 0..10_000u32 {
        let d = k % 7;
        let n = rng.gen_range(d.max(1)..=10);
        let (_, f) = random_polynomial(&mut rng, n, d);
        for check in checks {
            let r = check_real(&f, check, &opts, TOL).map_err(|e| e.to_string())?;
            passed(&r).map_err(|e| format!("n={n} d={d}: {e}"))?;
            random += r.assertions.len() as u64;
        }
    }
    Ok(format!(
        "exhaustive n<=4 ({assertions} assertions), 10000 random polynomials ({random} assertions), {cells}-cell grid"
    ))
}

fn entropy_suite() -> Outcome {
    let checks = [Check::Owz, Check::EdgeIso, Check::Shannon, Check::Entropy];
    for n in 0..=4 {
        let r = exhaustive_verify(n, &checks, &VerifyOptions::default(), TOL, 0).map_err(|e| e.to_string())?;
        passed(&r)?;
        ensure(violations(&r) == 0.0, || r.to_text())?;
    }
    let board = efi_survey(&SurveyConfig::new(4, SurveyMode::Exhaustive)).map_err(|e| e.to_string())?;
    let mefi = board.mefi[0].ratio;
    let efi = board.efi[0].ratio;
    // n = 2 maximum of H/I by direct summation and pivot counting
    let mut oracle = 0.0f64;
    for index in 0..16u64 {
        let f = BooleanFunction::from_table_index(2, index).unwrap();
        let i = brute_total_influence(&f);
        if i > 0.0 {
            let c = direct_transform(2, &boolean_values(&f));
            let h: f64 = c.iter().map(|a| a * a).filter(|&p| p > 0.0).map(|p| -p * p.log2()).sum();
            oracle = oracle.max(h / i);
        }
    }
    ensure(oracle == 2.0, || format!("oracle maximum {oracle}"))?;
    let n2 = efi_survey(&SurveyConfig::new(2, SurveyMode::Exhaustive)).map_err(|e| e.to_string())?;
    ensure(n2.efi[0].ratio == 2.0, || format!("survey maximum {}", n2.efi[0].ratio))?;
    ensure(efi_ratios(&zoo::or_fn(2).unwrap()).efi_ratio == 2.0, || "OR_2 ratio".into())?;
    Ok(format!("exhaustive n<=4 zero violations; n=4 max H/I {efi:.4}, max H_inf/I {mefi:.4}; n=2 max H/I = 2"))
}

fn fkn_kkl() -> Outcome {
    for n in 0..=4 {
        let r = exhaustive_verify(n, &[Check::Fkn, Check::Kkl], &VerifyOptions::default(), TOL, 0)
            .map_err(|e| e.to_string())?;
        passed(&r)?;
    }
    let zoo = zoo_upto(15);
    let mut checked = 0;
    for (label, f) in &zoo {
        passed(&fkn_check(f, TOL).map_err(|e| e.to_string())?.1).map_err(|e| format!("{label}: {e}"))?;
        if !f.is_constant() {
            passed(&kkl_intermediate_check(f, TOL).map_err(|e| e.to_string())?).map_err(|e| format!("{label}: {e}"))?;
        }
        checked += 1;
    }
    Ok(format!("exhaustive n<=4 and {checked} zoo functions, zero violations"))
}

fn coalition_ok(f: &BooleanFunction, direction: Sign) -> Result<Option<(Vec<usize>, f64)>, String> {
    match greedy_coalition(f, 0.99, direction) {
        Ok(t) => {
            ensure(t.steps.iter().all(|s| s.bribe_exact), || format!("inexact step in {t:?}"))?;
            passed(&t.to_report(f.arity(), Tolerance::EXACT))?;
            Ok(Some((t.coalition, t.final_expectation)))
        }
        Err(Error::Precondition(_)) => Ok(None),
        Err(e) => Err(e.to_string()),
    }
}

fn coalitions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut random, mut skipped) = (0, 0);
    while random < 100 {
        let n = rng.gen_range(1..=12);
        let f = random_monotone(&mut rng, n);
        match coalition_ok(&f, Sign::Plus)? {
            Some(_) => random += 1,
            None => skipped += 1,
        }
    }
    let mut zoo_traces = 0;
    for (label, f) in zoo_upto(15).iter().filter(|(_, f)| f.is_monotone()) {
        for dir in [Sign::Plus, Sign::Minus] {
            if coalition_ok(f, dir).map_err(|e| format!("{label}: {e}"))?.is_some() {
                zoo_traces += 1;
            }
        }
    }
    let or2 = coalition_ok(&zoo::or_fn(2).unwrap(), Sign::Plus)?;
    ensure(or2 == Some((vec![1], 1.0)), || format!("OR_2: {or2:?}"))?;
    let t22 = coalition_ok(&zoo::tribes(&zoo::Partition::uniform(2, 2).unwrap()).unwrap(), Sign::Plus)?;
    ensure(t22.as_ref().map(|t| t.0.len()) == Some(2), || format!("Tribes(2,2): {t22:?}"))?;
    let mut and_max = 0;
    for n in 1..=15u32 {
        match coalition_ok(&zoo::and_fn(n).unwrap(), Sign::Plus)? {
            Some((c, _)) => {
                ensure(c.len() == n as usize, || format!("AND_{n}: {c:?}"))?;
                and_max = n;
            }
            None => ensure(n >= 8, || format!("AND_{n} rejected"))?,
        }
    }
    Ok(format!(
        "100 random monotone ({skipped} below the start condition), {zoo_traces} zoo traces, AND_n size n for n<={and_max}"
    ))
}

fn tribes_parameters() -> Outcome {
    for w in 2..=5usize {
        let p = zoo::bl_params(w).map_err(|e| e.to_string())?;
        let fail = 1.0 - 0.5f64.powi(w as i32);
        ensure(fail.powi(p.count as i32) >= 0.5, || format!("w={w}: lower"))?;
        ensure(fail.powi(p.count as i32 + 1) < 0.5, || format!("w={w}: upper"))?;
    }
    let params = zoo::bl_params(3).unwrap();
    let f = zoo::tribes(&params.partition().unwrap()).unwrap();
    let n = f.arity();
    ensure(n == 15, || format!("n={n}"))?;
    let scale = f64::from(n).ln() / f64::from(n);
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for i in 1..=n as usize {
        let inf = brute_influence(&f, i);
        lo = lo.min(inf / scale);
        hi = hi.max(inf / scale);
    }
    ensure(lo >= 0.25 && hi <= 4.0, || format!("I_i n/ln n in [{lo}, {hi}]"))?;
    Ok(format!("w=2..5 inequalities hold; Tribes(3,5) I_i n/ln n in [{lo:.4}, {hi:.4}]"))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["boolcube"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    ensure(code == 0, || format!("{args:?} exited {code}: {}", String::from_utf8_lossy(&err)))?;
    Ok(out)
}

fn determinism() -> Outcome {
    let commands: [&[&str]; 5] = [
        &["survey", "--n", "7", "--mode", "random", "--count", "2000", "--seed", "99", "--json"],
        &["survey", "--n", "4", "--mode", "exhaustive", "--json"],
        &["survey", "--n", "9", "--mode", "family", "--json"],
        &["verify", "all", "--all-n", "3", "--json"],
        &["verify", "kkl", "--all-n", "4", "--json"],
    ];
    let mut runs = 0;
    for cmd in commands {
        let base = run_cli(&[cmd, &["--threads", "1"]].concat())?;
        for threads in ["2", "4"] {
            let other = run_cli(&[cmd, &["--threads", threads]].concat())?;
            ensure(base == other, || format!("{cmd:?} differs at --threads {threads}"))?;
            runs += 1;
        }
        ensure(base == run_cli(&[cmd, &["--threads", "1"]].concat())?, || format!("{cmd:?} repeat"))?;
    }
    let other_seed = run_cli(&["survey", "--n", "7", "--mode", "random", "--count", "2000", "--seed", "100", "--json"])?;
    let same_seed = run_cli(&["survey", "--n", "7", "--mode", "random", "--count", "2000", "--seed", "99", "--json"])?;
    ensure(other_seed != same_seed, || "seed has no effect".into())?;
    Ok(format!("{} commands byte-identical across {runs} thread-count variations and repeats", commands.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("transform correctness", transform_correctness),
        ("closed-form spectra", closed_forms),
        ("influence duality", influence_duality),
        ("inequality suite", inequality_suite),
        ("entropy suite", entropy_suite),
        ("FKN and KKL", fkn_kkl),
        ("greedy coalitions", coalitions),
        ("tribes parameters", tribes_parameters),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} [{secs:.1}s] {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} [{secs:.1}s] {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
