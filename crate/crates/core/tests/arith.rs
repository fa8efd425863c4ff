use std::collections::HashSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use subbound_core::arith::cp::{c2, c_cached};
use subbound_core::arith::goodness::DEFAULT_GOOD_TOL;
use subbound_core::arith::primes::primes_in;
use subbound_core::arith::*;

fn naive_prime(n: u128) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn fi(s: &str) -> FactoredInteger {
    s.parse().unwrap()
}

// Subspaces of F_q^n found by closing every subspace under adding one more
// vector, starting from {0}. Vectors are encoded base q; masks over q^n.
fn subspaces_by_closure(q: u32, n: u32) -> Vec<Vec<usize>> {
    let size = q.pow(n) as usize;
    let digits = |x: usize| -> Vec<u32> { (0..n).map(|i| (x as u32 / q.pow(i)) % q).collect() };
    let enc = |d: &[u32]| -> usize { d.iter().enumerate().map(|(i, &v)| (v * q.pow(i as u32)) as usize).sum() };
    let add = |x: usize, y: usize| -> usize {
        let (a, b) = (digits(x), digits(y));
        enc(&a.iter().zip(&b).map(|(u, v)| (u + v) % q).collect::<Vec<_>>())
    };
    let scale = |x: usize, k: u32| -> usize { enc(&digits(x).iter().map(|v| v * k % q).collect::<Vec<_>>()) };
    let span = |base: &[usize], v: usize| -> Vec<usize> {
        let mut out: HashSet<usize> = base.iter().copied().collect();
        for k in 1..q {
            for &b in base {
                out.insert(add(b, scale(v, k)));
            }
        }
        let mut o: Vec<usize> = out.into_iter().collect();
        o.sort_unstable();
        o
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut todo = vec![vec![0usize]];
    seen.insert(vec![0]);
    while let Some(s) = todo.pop() {
        for v in 0..size {
            if s.binary_search(&v).is_err() {
                let t = span(&s, v);
                if seen.insert(t.clone()) {
                    todo.push(t);
                }
            }
        }
    }
    seen.into_iter().collect()
}

#[test]
fn factorize_examples() {
    assert_eq!(factorize(60).unwrap().factors(), &[(2, 2), (3, 1), (5, 1)]);
    assert_eq!(factorize(9828).unwrap().factors(), &[(2, 2), (3, 3), (7, 1), (13, 1)]);
    assert_eq!(factorize(2).unwrap().factors(), &[(2, 1)]);
    assert!(matches!(factorize(1), Err(ArithError::InputOutOfRange(_))));
    assert!(matches!(factorize((1u128 << 96) + 1), Err(ArithError::InputOutOfRange(_))));
}

#[test]
fn primality_matches_trial_division() {
    for n in 0..20_000u128 {
        assert_eq!(is_prime(n), naive_prime(n), "{n}");
    }
    let sieve: Vec<u128> = primes_in(1_000_000, 1_010_000).into_iter().map(u128::from).collect();
    let naive: Vec<u128> = (1_000_000..1_010_000).filter(|&n| naive_prime(n)).collect();
    assert_eq!(sieve, naive);
}

proptest! {
    #[test]
    fn factorize_reconstructs(n in 2u128..(1u128 << 62)) {
        let f = factorize(n).unwrap();
        let mut prod = 1u128;
        let mut last = 0;
        for &(p, a) in f.factors() {
            prop_assert!(p > last);
            prop_assert!(a >= 1);
            if p < 1 << 40 {
                prop_assert!(naive_prime(p));
            }
            last = p;
            prod *= p.pow(a);
        }
        prop_assert_eq!(prod, n);
        prop_assert_eq!(f.value(), n);
    }

    #[test]
    fn factorize_semiprimes(i in 0usize..400, j in 0usize..400) {
        let ps = primes_in(1 << 30, (1 << 30) + 10_000);
        let (p, q) = (ps[i] as u128, ps[j] as u128);
        let f = factorize(p * q).unwrap();
        let expect: Vec<(u128, u32)> = if p == q { vec![(p, 2)] } else { vec![(p.min(q), 1), (p.max(q), 1)] };
        prop_assert_eq!(f.factors(), expect.as_slice());
    }

    #[test]
    fn factored_display_round_trip(n in 2u128..1_000_000_000) {
        let f = factorize(n).unwrap();
        prop_assert_eq!(f.to_string().parse::<FactoredInteger>().unwrap(), f.clone());
        prop_assert_eq!(n.to_string().parse::<FactoredInteger>().unwrap(), f);
    }

    #[test]
    fn f_is_deterministic_and_majorises_ft(
        a1 in 2u32..10, a2 in 1u32..8, a3 in 1u32..6, k in 0usize..17
    ) {
        let primes = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73];
        let r = FactoredInteger::from_pairs(&[(2, a1), (primes[k % 3], a2), (primes[3 + k], a3)]).unwrap();
        let (f1, f2) = (f_of(&r).unwrap(), f_of(&r).unwrap());
        prop_assert_eq!(f1.to_bits(), f2.to_bits());
        let (t1, t2) = (ft_of(&r).unwrap(), ft_of(&r).unwrap());
        prop_assert_eq!(t1.to_bits(), t2.to_bits());
        prop_assert!(t1 <= f1 + 1e-9);
        let v = classify_good(&r, DEFAULT_GOOD_TOL).unwrap();
        if v.kind == Goodness::TGood {
            prop_assert!(f1 > DEFAULT_GOOD_TOL);
        }
    }
}

#[test]
fn gaussian_binomial_oracle() {
    assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), BigUint::from(35u32));
    assert_eq!(gaussian_binomial(5, 2, 2).unwrap(), BigUint::from(155u32));
    for n in 0..8 {
        for p in [2u128, 3, 5] {
            assert_eq!(gaussian_binomial(n, 0, p).unwrap(), BigUint::from(1u32));
        }
    }
    assert_eq!(gaussian_binomial(3, 4, 2), Err(ArithError::KOutOfRange { n: 3, k: 4 }));
    for (q, nmax) in [(2u32, 5u32), (3, 3), (5, 2)] {
        for n in 0..=nmax {
            let subs = subspaces_by_closure(q, n);
            for k in 0..=n {
                let count = subs.iter().filter(|s| s.len() == q.pow(k) as usize).count();
                assert_eq!(gaussian_binomial(n, k, q as u128).unwrap(), BigUint::from(count), "[{n},{k}]_{q}");
            }
            assert_eq!(subspace_count(q as u128, n), BigUint::from(subs.len()));
        }
    }
}

#[test]
fn gaussian_binomial_symmetry() {
    for p in [2u128, 3, 5] {
        for n in 0..=12 {
            for k in 0..=n {
                assert_eq!(gaussian_binomial(n, k, p).unwrap(), gaussian_binomial(n, n - k, p).unwrap());
            }
        }
    }
}

#[test]
fn subspace_count_examples() {
    assert_eq!(subspace_count(2, 4), BigUint::from(67u32));
    assert_eq!(subspace_count(2, 5), BigUint::from(374u32));
    assert_eq!(subspace_count(7, 0), BigUint::from(1u32));
    let g2: Vec<u64> = vec![1, 2, 5, 16, 67, 374, 2825, 29212, 417199, 8283458];
    for (n, &g) in g2.iter().enumerate() {
        assert_eq!(subspace_count(2, n as u32), BigUint::from(g));
    }
}

#[test]
fn s_matches_subspace_count_for_small_a() {
    for p in primes_in(2, 101) {
        for a in 1..=5 {
            let s = s_of(p as u128, a).unwrap();
            assert_eq!(s.exact.unwrap(), subspace_count(p as u128, a), "S({p},{a})");
        }
    }
}

#[test]
fn s_below_smooth_majorant() {
    for p in primes_in(2, 101) {
        let p = p as u128;
        for a in 1..=12 {
            let s = s_of(p, a).unwrap().log;
            let lhs = s.log_value;
            let rhs = s_tilde_log(p, a);
            assert!(lhs <= rhs + s.tolerance, "S({p},{a}) = e^{lhs} > e^{rhs}");
        }
    }
}

#[test]
fn s_examples() {
    assert_eq!(s_of(2, 2).unwrap().exact, Some(BigUint::from(5u32)));
    assert_eq!(s_of(3, 3).unwrap().exact, Some(BigUint::from(28u32)));
    let s26 = s_of(2, 6).unwrap();
    assert!(s26.exact.is_none());
    assert!((s26.log.exp() - 512.0 * 7.371_97).abs() < 0.01 * 512.0);
    assert_eq!(s_of(4, 1).unwrap_err(), ArithError::NotPrime(4));
}

#[test]
fn c_values() {
    // Product and sum in a different order and with ln_1p, as a cross-check.
    let mut ln_prod = 0.0f64;
    for i in 1..200 {
        ln_prod -= (-(2f64.powi(-i))).ln_1p();
    }
    let theta: f64 = (1..12).map(|k| 2f64.powi(-(k * k))).sum::<f64>();
    let oracle = ln_prod.exp() * (1.0 + 2.0 * theta);
    let c = c_of_p(2, DEFAULT_REL_TOL).unwrap();
    assert!((c - oracle).abs() < 1e-12, "{c} vs {oracle}");
    let exact = 7.371_968_801_461_317;
    assert!((c - exact).abs() < 1e-13);
    let e = c_enclosure(2, DEFAULT_REL_TOL).unwrap();
    assert!(e.lower() - 1e-14 <= exact && exact <= e.upper() + 1e-14);
    assert!((c - 7.37197).abs() < 1e-5);
    assert!(c_of_p(3, 1e-12).unwrap() < 4.0);
    assert!(c_of_p(5, 1e-12).unwrap() > 7.0 / 4.0);
    assert_eq!(c_of_p(9, 1e-12), Err(ArithError::NotPrime(9)));
    assert!(matches!(c_of_p(2, 0.0), Err(ArithError::InvalidTolerance(_))));
    assert!(matches!(c_of_p(2, 1e-9), Err(ArithError::InvalidTolerance(_))));
    let e = c_enclosure(2, 1e-12).unwrap();
    assert!(e.lower() <= oracle && oracle <= e.upper());
}

#[test]
fn c_decreasing_and_above_lemma_bound() {
    let ps = primes_in(2, 100);
    assert_eq!(ps.len(), 25);
    let cs: Vec<f64> = ps.iter().map(|&p| c_cached(p as u128).unwrap().value).collect();
    for w in cs.windows(2) {
        assert!(w[0] > w[1]);
    }
    for (&p, &c) in ps.iter().zip(&cs) {
        let p = p as f64;
        assert!(c > (p + 2.0) / (p - 1.0), "c({p}) = {c}");
    }
}

#[test]
fn main_rhs_examples() {
    let c = c2().value;
    let at = |s: &str| main_rhs_log(&fi(s)).log_value;
    let oracle60 = c * 60f64.powf(60f64.log2() / 4.0);
    assert!((at("60").exp() - oracle60).abs() < 1e-9 * oracle60);
    // 30-digit mpmath value of c(2)·60^{log₂(60)/4}
    assert!((at("60").exp() - 3_114.725_032_358_96).abs() < 1e-8);
    assert!((at("2") - (c * 2f64.powf(0.25)).ln()).abs() < 1e-14);
    assert!((at("16") - (16.0 * c).ln()).abs() < 1e-14);
}

#[test]
fn f_against_direct_formula() {
    // Straight transcription with S as exact integers; c(2) from a 30-digit
    // mpmath evaluation.
    let c2v = 7.371_968_801_461_317_f64;
    for s in ["2^4.3^3.13", "2^2.3.5.7", "2^6.3^2.7", "2^3.3^4.5^2.11^5", "2^9.3.5^6"] {
        let r = fi(s);
        let ln_r = r.ln();
        let ell = r.len() as f64;
        let mut v = c2v.ln() / ln_r - (ell - 1.0) + (ell - 2.0) * 2f64.ln() / ln_r;
        for &(p, a) in r.factors() {
            let s_val = match s_of(p, a).unwrap().exact {
                Some(x) => x.to_string().parse::<f64>().unwrap(),
                None => c_cached(p).unwrap().value * (p as f64).powf(a as f64 * a as f64 / 4.0),
            };
            v += a as f64 * (p as f64).log2() / 4.0 - s_val.ln() / ln_r;
        }
        assert!((f_of(&r).unwrap() - v).abs() < 1e-8, "{s}: {} vs {v}", f_of(&r).unwrap());
    }
}

#[test]
fn f_needs_two_primes() {
    assert_eq!(f_of(&fi("2^5")), Err(ArithError::TooFewPrimes(1)));
    assert_eq!(ft_of(&fi("7")), Err(ArithError::TooFewPrimes(1)));
}

#[test]
fn classify_examples() {
    let seed = fi("2^2.3.5.7.11.13.17.19.23.29.31.37.41");
    assert_eq!(classify_good(&seed, DEFAULT_GOOD_TOL).unwrap().kind, Goodness::TGood);
    let v = classify_good(&fi("2^4.3^3.13"), DEFAULT_GOOD_TOL).unwrap();
    assert!(v.is_good() && v.f_value > 0.46);
    assert_eq!(classify_good(&fi("420"), DEFAULT_GOOD_TOL).unwrap().kind, Goodness::NotGood);
    let ft = ft_of(&fi("60")).unwrap();
    assert!(ft <= f_of(&fi("60")).unwrap());
}

#[test]
fn bound_value_flags_ties() {
    let a = BoundValue::new(1.0, 1e-10);
    let b = BoundValue::new(1.0 + 5e-11, 1e-10);
    assert!(a.compare(&b).is_err());
    let c = BoundValue::new(2.0, 1e-10);
    assert_eq!(a.compare(&c), Ok(std::cmp::Ordering::Less));
}

#[test]
fn printed_spot_values_are_strict_lower_bounds() {
    let spots = subbound_core::data::spot_values();
    assert_eq!(spots.len(), 19);
    for s in spots {
        let r = fi(&s.r);
        let v = match s.kind {
            subbound_core::data::SpotKind::F => f_of(&r).unwrap(),
            subbound_core::data::SpotKind::Ft => ft_of(&r).unwrap(),
        };
        assert!(v > s.lower, "{} gives {v}, printed > {}", s.r, s.lower);
    }
}
