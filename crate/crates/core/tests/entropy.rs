mod common;

use boolcube::entropy::*;
use boolcube::influence::total_influence;
use boolcube::{zoo, BooleanFunction, RealFunction, Spectrum, Subset, Tolerance};
use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Entropy of the squared coefficients, from the direct transform.
fn oracle_entropy(f: &BooleanFunction) -> (f64, f64) {
    let c = direct_transform(f.arity(), &boolean_values(f));
    let h = c.iter().map(|a| a * a).filter(|&p| p > 0.0).map(|p| -p * p.log2()).sum();
    let max = c.iter().fold(0.0f64, |m, a| m.max(a * a));
    (h, -max.log2())
}

#[test]
fn entropies_match_oracle() {
    for n in 0..=3u32 {
        for index in 0..1u64 << (1u32 << n) {
            let f = BooleanFunction::from_table_index(n, index).unwrap();
            let (h, hinf) = oracle_entropy(&f);
            let e = efi_ratios(&f);
            assert!((e.entropy - h).abs() < 1e-12);
            assert!((e.min_entropy - hinf).abs() < 1e-12);
            assert_eq!(e.total_influence, brute_total_influence(&f));
        }
    }
}

#[test]
fn n2_maximum_ratio_is_two() {
    let mut best = 0.0f64;
    let mut argmax = Vec::new();
    for index in 0..16u64 {
        let f = BooleanFunction::from_table_index(2, index).unwrap();
        let i = brute_total_influence(&f);
        if i == 0.0 {
            continue;
        }
        let ratio = oracle_entropy(&f).0 / i;
        if ratio > best {
            best = ratio;
            argmax.clear();
        }
        if ratio == best {
            argmax.push(f.to_bit_string());
        }
    }
    assert_eq!(best, 2.0);
    // the eight functions with a single minority point
    assert_eq!(argmax.len(), 8);
    assert!(argmax.contains(&"0001".to_string()));
}

#[test]
fn shannon_code_is_prefix_free() {
    for n in 1..=6u32 {
        let code = ShannonCode::new(n);
        let words: Vec<String> = (0..1usize << n).map(|s| code.codeword(Subset(s))).collect();
        for (a, wa) in words.iter().enumerate() {
            assert_eq!(wa.len(), code.codeword_len(Subset(a)));
            assert!(wa.chars().all(|c| ShannonCode::ALPHABET.contains(&c)));
            for (b, wb) in words.iter().enumerate() {
                if a != b {
                    assert!(!wb.starts_with(wa.as_str()), "{wa} prefixes {wb}");
                }
            }
        }
        // Kraft over a ternary alphabet
        let kraft: f64 = words.iter().map(|w| 3f64.powi(-(w.len() as i32))).sum();
        assert!(kraft <= 1.0);
    }
    assert_eq!(ShannonCode::new(4).codeword(Subset(0b1010)), "0111!");
    assert_eq!(ShannonCode::new(1).digits(), 1);
    assert_eq!(ShannonCode::new(5).digits(), 3);
}

#[test]
fn shannon_bound_on_random_unit_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=8u32 {
        let f = random_real(&mut rng, n);
        let norm2 = norm(f.values(), 2.0);
        let unit = RealFunction::new(n, f.values().iter().map(|v| v / norm2).collect()).unwrap();
        let r = shannon_code_bound_check(&unit, Tolerance::default()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert!(shannon_code_bound_check(&f, Tolerance::default()).is_err());
    }
}

#[test]
fn spread_function_entropy_grows_with_log_n() {
    // unit-norm real function with f^(S)^2 = 1/n on the n singletons
    for n in [2u32, 4, 8] {
        let a = 1.0 / f64::from(n).sqrt();
        let s = Spectrum::tabulate(n, |m| if m.len() == 1 { a } else { 0.0 }).unwrap();
        let h = fourier_entropy(&s).unwrap();
        assert!((h - f64::from(n).log2()).abs() < 1e-12);
        assert!((total_influence(&s) - 1.0).abs() < 1e-12);
        assert!(shannon_code_bound_spectrum(&s, Tolerance::default()).unwrap().passed());
    }
}

#[test]
fn bounds_on_zoo() {
    let fs = [
        zoo::majority(7).unwrap(),
        zoo::or_fn(6).unwrap(),
        zoo::and_fn(5).unwrap(),
        zoo::tribes(&zoo::Partition::uniform(2, 3).unwrap()).unwrap(),
        zoo::parity(5, Subset(0b10110)).unwrap(),
    ];
    for f in &fs {
        let tol = Tolerance::default();
        assert!(owz_level_bound_check(f, tol).passed());
        assert!(edge_isoperimetric_check(f, tol).passed());
        assert!(entropy_range_check(f, tol).passed());
        assert!(log_n_bound_check(f, tol).passed());
        assert!(shannon_code_bound_check(&f.to_real(), tol).unwrap().passed());
    }
}

#[test]
fn edge_isoperimetric_is_tight_on_subcubes() {
    // the indicator of a subcube of codimension k has p = 2^-k and I = k 2^{1-k}
    for k in 1..=4u32 {
        let f = zoo::and_fn(k).unwrap();
        let r = edge_isoperimetric_check(&f, Tolerance::default());
        assert_eq!(r.quantities["p"], 0.5f64.powi(k as i32));
        assert_eq!(r.assertions[0].lhs, r.assertions[0].rhs);
    }
}
