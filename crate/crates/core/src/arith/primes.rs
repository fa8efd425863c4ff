//! Primality and factorisation of integers up to the scan ceiling.

use super::factored::FactoredInteger;
use super::ArithError;

/// Largest integer accepted by [`factorize`].
pub const SCAN_CEILING: u128 = 1 << 96;

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

// Deterministic below 3.317e24 (first 13 primes as witnesses).
const WITNESS_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a * b) % m;
    }
    let (mut a, mut b, mut acc) = (a % m, b % m, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    let (s, over) = a.overflowing_add(b);
    if over || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

fn strong_probable_prime(n: u128, a: u128) -> bool {
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Miller–Rabin primality test.
///
/// Deterministic below 3.3·10²⁴, which covers every integer the screening
/// pipeline touches. Above that all 25 primes below 100 are used as witnesses.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p as u128 {
            return true;
        }
        if n.is_multiple_of(p as u128) {
            return false;
        }
    }
    let witnesses: &[u64] = if n < WITNESS_LIMIT {
        &SMALL_PRIMES[..13]
    } else {
        &SMALL_PRIMES
    };
    witnesses
        .iter()
        .all(|&a| strong_probable_prime(n, a as u128))
}

/// Primes `p` with `lo <= p < hi`, by a segmented sieve (memory is
/// proportional to `hi - lo` plus `sqrt(hi)`).
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    let lo = lo.max(2);
    if hi <= lo {
        return Vec::new();
    }
    let root = ((hi as f64).sqrt() as u64 + 2).min(hi);
    let mut small = vec![true; root as usize + 1];
    let mut base = Vec::new();
    for i in 2..=root as usize {
        if small[i] {
            base.push(i as u64);
            let mut j = i * i;
            while j <= root as usize {
                small[j] = false;
                j += i;
            }
        }
    }
    let mut seg = vec![true; (hi - lo) as usize];
    for &p in &base {
        let mut m = (p * p).max(lo.div_ceil(p) * p);
        while m < hi {
            seg[(m - lo) as usize] = false;
            m += p;
        }
    }
    seg.iter()
        .enumerate()
        .filter(|&(_, &keep)| keep)
        .map(|(k, _)| lo + k as u64)
        .collect()
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Brent's variant of Pollard rho; n must be odd and composite.
fn rho(n: u128) -> u128 {
    let mut c = 1u128;
    loop {
        let f = |x: u128| add_mod(mul_mod(x, x, n), c, n);
        let (mut x, mut y, mut g) = (2u128, 2u128, 1u128);
        let mut q = 1u128;
        let mut ys = 2u128;
        let mut r = 1u64;
        const M: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..M.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += M;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = rho(n);
    split(d, out);
    split(n / d, out);
}

/// Canonical factorisation of `2 <= n <= 2^96`.
pub fn factorize(n: u128) -> Result<FactoredInteger, ArithError> {
    if !(2..=SCAN_CEILING).contains(&n) {
        return Err(ArithError::InputOutOfRange(n.to_string()));
    }
    let mut m = n;
    let mut found: Vec<u128> = Vec::new();
    let mut p = 2u128;
    while p < 1 << 12 && p * p <= m {
        while m.is_multiple_of(p) {
            found.push(p);
            m /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    split(m, &mut found);
    found.sort_unstable();
    let mut factors: Vec<(u128, u32)> = Vec::new();
    for q in found {
        match factors.last_mut() {
            Some((p, e)) if *p == q => *e += 1,
            _ => factors.push((q, 1)),
        }
    }
    FactoredInteger::new(factors)
}
