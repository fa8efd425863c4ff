//! Sums `Σ k·m^{log₂(m)/4}` against `r^{log₂(r)/4}`: bounds on subgroup
//! counts obtained by summing over classes of maximal subgroups.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::solvable::ln_biguint;
use super::LabError;
use crate::arith::bound::log_sum_exp;

/// `count · base^{log₂(base)/4}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedTerm {
    #[serde(serialize_with = "ser_rat")]
    pub count: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub base: BigRational,
    pub note: String,
}

fn ser_rat<S: serde::Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn rat(n: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ln_rat(x: &BigRational) -> f64 {
    let n = x.numer().magnitude();
    let d = x.denom().magnitude();
    ln_biguint(n) - ln_biguint(d)
}

impl WeightedTerm {
    pub fn new(count: BigRational, base: BigRational, note: &str) -> Self {
        Self {
            count,
            base,
            note: note.to_string(),
        }
    }

    fn validate(&self) -> Result<(), LabError> {
        if !self.count.is_positive() {
            return Err(LabError::InvalidTerm(format!("count {} <= 0", self.count)));
        }
        if self.base < BigRational::from_integer(1.into()) {
            return Err(LabError::InvalidTerm(format!("base {} < 1", self.base)));
        }
        Ok(())
    }

    fn ln_value(&self) -> f64 {
        let lb = ln_rat(&self.base);
        ln_rat(&self.count) + lb * lb / (4.0 * std::f64::consts::LN_2)
    }
}

const TOL: f64 = 1e-12;

/// `ln r^{log₂(r)/4} − ln Σ terms`.
pub fn weighted_margin(terms: &[WeightedTerm], r: u128) -> Result<f64, LabError> {
    if terms.is_empty() {
        return Err(LabError::EmptyTerms);
    }
    if r < 2 {
        return Err(LabError::PreconditionViolated(format!("r = {r} < 2")));
    }
    for t in terms {
        t.validate()?;
    }
    let lhs = log_sum_exp(&terms.iter().map(WeightedTerm::ln_value).collect::<Vec<_>>());
    let lr = (r as f64).ln();
    Ok(lr * lr / (4.0 * std::f64::consts::LN_2) - lhs)
}

/// Whether `c(2)·Σ k·m^{log₂(m)/4} <= c(2)·r^{log₂(r)/4}`, equality
/// accepted within `1e-12` on the log scale.
pub fn weighted_power_bound(terms: &[WeightedTerm], r: u128) -> Result<bool, LabError> {
    weighted_margin(terms, r).map(|m| m >= -TOL)
}

/// Quotients `R/C` handled by the three-prime case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Section5Case {
    /// `Alt(5)` or `Sym(5)`: classes of 5'-subgroups with 10 and 5 conjugates.
    Alt5,
    /// `PSL₂(7)`: four classes of maximal 7'-subgroups.
    Psl2_7,
    /// `PGL₂(7)`: three classes of maximal 7'-subgroups.
    Pgl2_7,
}

/// Term lists for the three-prime cases, as functions of `r`.
pub fn section5_terms(case: Section5Case, r: u128) -> Vec<WeightedTerm> {
    let r = rat(r);
    let frac = |k: u128| &r / rat(k);
    let mul = |k: u128| &r * rat(k);
    match case {
        Section5Case::Alt5 => vec![
            WeightedTerm::new(rat(10), frac(10), "5'-subgroups in the 10 conjugates of K1"),
            WeightedTerm::new(rat(5), frac(5), "5'-subgroups in the 5 conjugates of K2"),
            WeightedTerm::new(mul(2), frac(10), "order divisible by 5, 5'-part in K1"),
            WeightedTerm::new(frac(5), frac(5), "order divisible by 5, 5'-part in K2"),
        ],
        Section5Case::Psl2_7 => vec![
            WeightedTerm::new(mul(2), frac(7), "K1, index 7"),
            WeightedTerm::new(mul(2), frac(7), "K2, index 7"),
            WeightedTerm::new(mul(4), frac(14), "K3, index 14"),
            WeightedTerm::new(mul(4), frac(14), "K4, index 14"),
        ],
        Section5Case::Pgl2_7 => vec![
            WeightedTerm::new(mul(8), frac(28), "K1, index 28"),
            WeightedTerm::new(mul(6), frac(21), "K2, index 21"),
            WeightedTerm::new(mul(4), frac(14), "K3, index 14"),
        ],
    }
}

/// Almost simple quotients `R/C` with socle `PSL₂(11)` or `PSL₂(13)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SectionGroup {
    Psl2_11,
    Pgl2_11,
    Psl2_13,
    Pgl2_13,
}

impl SectionGroup {
    pub const ALL: [SectionGroup; 4] = [
        SectionGroup::Psl2_11,
        SectionGroup::Pgl2_11,
        SectionGroup::Psl2_13,
        SectionGroup::Pgl2_13,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SectionGroup::Psl2_11 => "PSL2(11)",
            SectionGroup::Pgl2_11 => "PGL2(11)",
            SectionGroup::Psl2_13 => "PSL2(13)",
            SectionGroup::Pgl2_13 => "PGL2(13)",
        }
    }

    /// `(p, |R/C|, orders of the classes of maximal p'-subgroups)`.
    pub fn data(&self) -> (u128, u128, &'static [u128]) {
        match self {
            SectionGroup::Psl2_11 => (11, 660, &[60, 60, 12]),
            SectionGroup::Pgl2_11 => (11, 1320, &[24, 20, 24]),
            SectionGroup::Psl2_13 => (13, 1092, &[14, 12, 12]),
            SectionGroup::Pgl2_13 => (13, 2184, &[28, 24, 24]),
        }
    }
}

/// Terms `2r²/(p·|H_i|)` at base `|H_i| = |C|·m_i` with `|C| = r/|R/C|`.
pub fn psl2_section_terms(group: SectionGroup, r: u128) -> Result<Vec<WeightedTerm>, LabError> {
    let (p, order, ms) = group.data();
    if !r.is_multiple_of(order) {
        return Err(LabError::PreconditionViolated(format!(
            "{} does not divide {r}",
            order
        )));
    }
    let c = r / order;
    let rr = rat(r);
    Ok(ms
        .iter()
        .map(|&m| {
            let h = rat(c * m);
            let count = rat(2) * &rr * &rr / (rat(p) * &h);
            WeightedTerm::new(count, h, &format!("{}: maximal {p}'-subgroup of order {m}", group.name()))
        })
        .collect())
}
