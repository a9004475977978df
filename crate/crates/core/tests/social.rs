mod common;

use boolcube::social::*;
use boolcube::{zoo, BooleanFunction, Error, Sign, Subset, Tolerance};
use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn affine_functions_are_dictators() {
    // every Boolean function of arity <= 3 with no mass above level 1
    for n in 0..=3u32 {
        for index in 0..1u64 << (1u32 << n) {
            let f = BooleanFunction::from_table_index(n, index).unwrap();
            let expect = if f.is_constant() {
                Affine::Constant
            } else if let Some(i) = (1..=n as usize).find(|&i| f == zoo::dictator(n, i).unwrap()) {
                Affine::Dictator(i)
            } else if let Some(i) = (1..=n as usize).find(|&i| f == zoo::dictator(n, i).unwrap().negate()) {
                Affine::AntiDictator(i)
            } else {
                Affine::NotAffine
            };
            assert_eq!(affine_classify(&f), expect, "{f:?}");
        }
    }
}

#[test]
fn fkn_distance_matches_pointwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 1..=8u32 {
        let f = random_monotone(&mut rng, n);
        let res = fkn(&f).unwrap();
        let c = direct_transform(n, &boolean_values(&f));
        let w1: f64 = (1..=n as usize).map(|i| c[1 << (i - 1)].powi(2)).sum();
        assert!((res.w1 - w1).abs() < 1e-12);
        let a = c[1 << (res.best_i - 1)];
        assert!((res.distance - (1.0 - a * a)).abs() < 1e-12);
        assert!(fkn_check(&f, Tolerance::default()).unwrap().1.passed());
    }
}

#[test]
fn fkn_near_dictator() {
    // x_1 with one point flipped: W^1 close to 1 and the closest dictator is x_1
    let n = 6;
    let d = zoo::dictator(n, 1).unwrap();
    let bits: String = d
        .to_bit_string()
        .chars()
        .enumerate()
        .map(|(k, c)| if k == 5 { if c == '0' { '1' } else { '0' } } else { c })
        .collect();
    let f = BooleanFunction::from_bit_string(n, &bits).unwrap();
    let (res, r) = fkn_check(&f, Tolerance::default()).unwrap();
    assert_eq!(res.best_i, 1);
    assert!(res.w1 > 0.8);
    assert!(res.distance <= res.bound);
    assert!(r.passed());
}

#[test]
fn kkl_on_tribes_and_parities() {
    let t = zoo::tribes(&zoo::bl_params(2).unwrap().partition().unwrap()).unwrap();
    assert!(kkl_intermediate_check(&t, Tolerance::default()).unwrap().passed());
    assert!(kkl_ratio(&t).unwrap() > 0.0);
    let chi = zoo::parity(5, Subset::full(5)).unwrap();
    let r = kkl_intermediate_check(&chi, Tolerance::default()).unwrap();
    assert!(r.passed());
    assert_eq!(r.assertions[0].lhs, 1.0);
}

#[test]
fn coalition_on_random_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut accepted = 0;
    while accepted < 30 {
        let n = rand::Rng::gen_range(&mut rng, 1..=9);
        let f = random_monotone(&mut rng, n);
        let trace = match greedy_coalition(&f, 0.99, Sign::Plus) {
            Ok(t) => t,
            Err(Error::Precondition(_)) => continue,
            Err(e) => panic!("{e}"),
        };
        accepted += 1;
        assert!(trace.steps.iter().all(|s| s.bribe_exact));
        assert!(trace.to_report(n, Tolerance::default()).passed());
        // the coalition forces +1: fixing its members to +1 leaves E >= 0.99
        let mut g = f.clone();
        let mut remaining: Vec<usize> = (1..=n as usize).collect();
        for &c in &trace.coalition {
            let k = remaining.iter().position(|&r| r == c).unwrap();
            g = g.restrict(k + 1, Sign::Plus).unwrap();
            remaining.remove(k);
        }
        assert_eq!(mean(&boolean_values(&g)), trace.final_expectation);
        assert!(trace.final_expectation >= 0.99);
    }
}

#[test]
fn coalition_examples() {
    let t = greedy_coalition(&zoo::tribes(&zoo::Partition::uniform(2, 2).unwrap()).unwrap(), 0.99, Sign::Plus)
        .unwrap();
    assert_eq!(t.coalition, vec![1, 2]);
    for n in 1..=7 {
        let t = greedy_coalition(&zoo::and_fn(n).unwrap(), 0.99, Sign::Plus).unwrap();
        assert_eq!(t.coalition, (1..=n as usize).collect::<Vec<_>>());
    }
    // E[AND_8] = -1 + 2^-7 < -0.99
    assert!(matches!(greedy_coalition(&zoo::and_fn(8).unwrap(), 0.99, Sign::Plus), Err(Error::Precondition(_))));
    // towards -1, OR_n behaves like AND_n towards +1
    let t = greedy_coalition(&zoo::or_fn(4).unwrap(), 0.99, Sign::Minus).unwrap();
    assert_eq!(t.coalition.len(), 4);
    assert_eq!(t.final_expectation, -1.0);
}
