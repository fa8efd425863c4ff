//! Recursive bound for solvable groups via Hall subgroups:
//! `B(p^a) = S(p,a)` and, with `q = p_ℓ^{a_ℓ}` and `m = r/q`,
//! `B(r) = (1 + (B(m) − 1)·q)·(1 + (S(p_ℓ,a_ℓ) − 1)·m)`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith::bound::BoundValue;
use crate::arith::spa::{s_exact, s_log, s_log_tolerance};
use crate::arith::FactoredInteger;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolvableBound {
    pub log: BoundValue,
    /// Present when every exponent is at most 5.
    #[serde(serialize_with = "ser_opt_big")]
    pub exact: Option<BigUint>,
}

fn ser_opt_big<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(n) => s.serialize_some(&n.to_string()),
        None => s.serialize_none(),
    }
}

/// Natural log of a positive big integer.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("64 bits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

// ln(1 + (e^x − 1)·k) for x >= 0, k >= 1.
fn ln_affine(x: f64, ln_k: f64) -> f64 {
    let k = ln_k.exp();
    if x + ln_k < 700.0 {
        (1.0 + x.exp_m1() * k).ln()
    } else {
        x + ln_k + ((1.0 - k) / (x + ln_k).exp()).ln_1p()
    }
}

pub fn solvable_recursive_bound(r: &FactoredInteger) -> SolvableBound {
    let f = r.factors();
    let exact = if f.iter().all(|&(_, a)| a <= 5) {
        let mut b = s_exact(f[0].0, f[0].1).expect("a <= 5");
        let mut m = BigUint::from(f[0].0).pow(f[0].1);
        for &(p, a) in &f[1..] {
            let q = BigUint::from(p).pow(a);
            let s = s_exact(p, a).expect("a <= 5");
            b = (BigUint::one() + (b - 1u32) * &q) * (BigUint::one() + (s - 1u32) * &m);
            m *= q;
        }
        Some(b)
    } else {
        None
    };
    let log = match &exact {
        Some(b) => BoundValue::new(ln_biguint(b), 8.0 * f64::EPSILON * ln_biguint(b).max(1.0)),
        None => {
            let (p0, a0) = f[0];
            let mut lb = s_log(p0, a0);
            let mut tol = s_log_tolerance(p0, a0);
            let mut ln_m = a0 as f64 * (p0 as f64).ln();
            for &(p, a) in &f[1..] {
                let ln_q = a as f64 * (p as f64).ln();
                let ls = s_log(p, a);
                lb = ln_affine(lb, ln_q) + ln_affine(ls, ln_m);
                tol += s_log_tolerance(p, a) + 16.0 * f64::EPSILON * lb.abs().max(1.0);
                ln_m += ln_q;
            }
            BoundValue::new(lb, tol)
        }
    };
    SolvableBound { log, exact }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> SolvableBound {
        solvable_recursive_bound(&s.parse().unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(b("4").exact, Some(BigUint::from(5u32)));
        assert_eq!(b("12").exact, Some(BigUint::from(65u32)));
        assert_eq!(b("60").exact, Some(BigUint::from(4173u32)));
    }

    #[test]
    fn log_path_agrees_with_exact() {
        // Compare the float recursion against exact values where both exist.
        for s in ["60", "2^5.3^5.5^2.7", "2^3.3.5.7.11.13"] {
            let x: FactoredInteger = s.parse().unwrap();
            let exact = b(s).exact.unwrap();
            let f = x.factors();
            let mut lb = s_log(f[0].0, f[0].1);
            let mut ln_m = f[0].1 as f64 * (f[0].0 as f64).ln();
            for &(p, a) in &f[1..] {
                let ln_q = a as f64 * (p as f64).ln();
                lb = ln_affine(lb, ln_q) + ln_affine(s_log(p, a), ln_m);
                ln_m += ln_q;
            }
            assert!((lb - ln_biguint(&exact)).abs() < 1e-10, "{s}");
        }
    }

    #[test]
    fn large_exponent_uses_logs() {
        let v = b("2^8.3");
        assert!(v.exact.is_none());
        assert!(v.log.log_value.is_finite());
    }
}
