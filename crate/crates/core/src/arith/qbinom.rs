//! Gaussian binomial coefficients and subspace counts.

use num_bigint::BigUint;
use num_traits::One;

use super::ArithError;

/// `[n, k]_q = ∏_{i=0}^{k-1} (q^{n-i} − 1)/(q^{i+1} − 1)`, exactly.
pub fn gaussian_binomial(n: u32, k: u32, q: u128) -> Result<BigUint, ArithError> {
    if k > n {
        return Err(ArithError::KOutOfRange { n, k });
    }
    let q = BigUint::from(q);
    let one = BigUint::one();
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow(n - i) - &one;
        den *= q.pow(i + 1) - &one;
    }
    Ok(num / den)
}

/// Number of subspaces of `F_p^a`, i.e. subgroups of `C_p^a`.
pub fn subspace_count(p: u128, a: u32) -> BigUint {
    // Galois numbers: G(n+1) = 2·G(n) + (p^n − 1)·G(n−1).
    let p = BigUint::from(p);
    let (mut prev, mut cur) = (BigUint::one(), BigUint::from(2u32));
    if a == 0 {
        return prev;
    }
    let mut pn = p.clone();
    for _ in 1..a {
        let next = &cur * 2u32 + (&pn - 1u32) * &prev;
        prev = cur;
        cur = next;
        pn *= &p;
    }
    cur
}
