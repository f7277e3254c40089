//! Index-theoretic identities and counting constraints on fixed point data,
//! valid in any even dimension.
//!
//! The signature identity says that
//! `sum_p eps(p) * prod_i (1 + t^w) / (1 - t^w)` is a constant. It is checked
//! exactly by clearing denominators: with `D = prod_p prod_i (1 - t^w)` and
//! `N = sum_p eps(p) * prod_i (1 + t^w) * prod_{q != p} prod_i (1 - t^w)`, the
//! sum is the constant `s` iff `N = s * D`. Since `D(0) = 1`, the only
//! candidate is `s = N(0) = sum_p eps(p)`.

mod poly;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

pub use poly::IntegerPolynomial;

use crate::data::{FixedPointData, FixedPointDatum, Sign};
use crate::error::{Error, Result};

/// `sum_p eps(p)`.
pub fn signature(data: &FixedPointData) -> i64 {
    data.iter().map(|p| p.sign().value()).sum()
}

/// `N` and `D` of the cleared signature identity.
pub fn cleared_series(data: &FixedPointData) -> (IntegerPolynomial, IntegerPolynomial) {
    let factor = |p: &FixedPointDatum, sign: i64| {
        p.weights()
            .iter()
            .fold(IntegerPolynomial::one(), |acc, &w| {
                &acc * &IntegerPolynomial::binomial(w, sign)
            })
    };
    let denominators: Vec<_> = data.iter().map(|p| factor(p, -1)).collect();
    let k = denominators.len();

    // prefix[i] = D_0 ... D_{i-1}, suffix[i] = D_i ... D_{k-1}
    let mut prefix = Vec::with_capacity(k + 1);
    prefix.push(IntegerPolynomial::one());
    for d in &denominators {
        let next = prefix.last().unwrap() * d;
        prefix.push(next);
    }
    let mut suffix = vec![IntegerPolynomial::one(); k + 1];
    for i in (0..k).rev() {
        suffix[i] = &denominators[i] * &suffix[i + 1];
    }

    let mut numerator = IntegerPolynomial::zero();
    for (i, p) in data.iter().enumerate() {
        let others = &prefix[i] * &suffix[i + 1];
        let term = &factor(p, 1) * &others;
        numerator = match p.sign() {
            Sign::Plus => &numerator + &term,
            Sign::Minus => &numerator - &term,
        };
    }
    (numerator, prefix.pop().unwrap())
}

/// Failure of the signature identity: `N - s * D` is non-zero, first at
/// `degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesViolation {
    pub constant_term: i64,
    pub degree: usize,
    pub residual: BigInt,
}

impl std::fmt::Display for SeriesViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "N - {}*D has coefficient {} at degree {}",
            self.constant_term, self.residual, self.degree
        )
    }
}

/// Returns the constant value of the signature series, or where the cleared
/// identity first fails.
pub fn signature_series_check(data: &FixedPointData) -> Result<i64, SeriesViolation> {
    let (n, d) = cleared_series(data);
    let s = signature(data);
    let residual = &n - &d.scale(&BigInt::from(s));
    match residual.lowest_degree() {
        None => Ok(s),
        Some(degree) => Err(SeriesViolation {
            constant_term: s,
            degree,
            residual: residual.coeff(degree),
        }),
    }
}

/// Same verdict as [`signature_series_check`], reached by long division of
/// `N` by `D` instead of subtracting `s * D`.
pub fn signature_series_check_by_division(data: &FixedPointData) -> Result<i64, SeriesViolation> {
    let (n, d) = cleared_series(data);
    let (q, r) = n.div_rem(&d).expect("D has leading coefficient +-1");
    let constant = match q.degree() {
        None => Some(BigInt::zero()),
        Some(0) => Some(q.coeff(0)),
        Some(_) => None,
    };
    match (constant, r.lowest_degree()) {
        (Some(c), None) => Ok(c.to_i64().expect("constant bounded by point count")),
        _ => {
            let s = signature(data);
            let residual = &n - &d.scale(&BigInt::from(s));
            let degree = residual.lowest_degree().unwrap_or(0);
            Err(SeriesViolation {
                constant_term: s,
                degree,
                residual: residual.coeff(degree),
            })
        }
    }
}

/// `sum_p eps(p) * N_p(w)` for the smallest weight `w`; zero for realizable
/// data.
pub fn smallest_weight_balance(data: &FixedPointData) -> Result<i64> {
    let w = data.min_weight().ok_or(Error::EmptyData)?;
    Ok(data
        .iter()
        .map(|p| p.sign().value() * p.multiplicity(w) as i64)
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub table: BTreeMap<u64, u64>,
    pub pass: bool,
}

impl ParityReport {
    pub fn first_odd(&self) -> Option<(u64, u64)> {
        self.table
            .iter()
            .find(|(_, &c)| c % 2 == 1)
            .map(|(&w, &c)| (w, c))
    }
}

/// Total multiplicity of each weight value over all points; every count must
/// be even.
pub fn weight_parity_check(data: &FixedPointData) -> ParityReport {
    let mut table = BTreeMap::new();
    for p in data {
        for &w in p.weights() {
            *table.entry(w).or_insert(0u64) += 1;
        }
    }
    let pass = table.values().all(|c| c % 2 == 0);
    ParityReport { table, pass }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

pub mod check_names {
    pub const SIGNATURE_IDENTITY: &str = "signature_identity";
    pub const SMALLEST_WEIGHT_BALANCE: &str = "smallest_weight_balance";
    pub const WEIGHT_PARITY: &str = "weight_parity";
    pub const SIGNATURE_RANGE: &str = "signature_range";
    pub const ODD_COUNT_DIMENSION: &str = "odd_count_dimension";
    pub const TWO_POINTS: &str = "two_points";
    pub const UNIFORM_WEIGHTS: &str = "uniform_weights";
    pub const SEMI_FREE: &str = "semi_free";
    pub const EULER_CHARACTERISTIC: &str = "euler_characteristic";
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub points: usize,
    pub arity: usize,
    pub signature: i64,
    pub series_constant: Option<i64>,
    pub smallest_weight_balance: i64,
    pub euler_characteristic: usize,
    pub parity_table: BTreeMap<u64, u64>,
    pub checks: Vec<Check>,
}

impl InvariantReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs the whole battery. Checks whose hypothesis does not hold pass
/// vacuously, with a detail saying so.
pub fn structural_checks(data: &FixedPointData) -> InvariantReport {
    use check_names::*;

    let k = data.len();
    let n = data.arity();
    let sig = signature(data);
    let mut checks = Vec::new();

    let series = signature_series_check(data);
    checks.push(match &series {
        Ok(c) => Check::new(SIGNATURE_IDENTITY, true, format!("constant {c}")),
        Err(v) => Check::new(SIGNATURE_IDENTITY, false, v.to_string()),
    });

    let balance = smallest_weight_balance(data).unwrap_or(0);
    checks.push(Check::new(
        SMALLEST_WEIGHT_BALANCE,
        balance == 0,
        match data.min_weight() {
            Some(w) => format!("weight {w}: balance {balance}"),
            None => "no fixed points".to_string(),
        },
    ));

    let parity = weight_parity_check(data);
    checks.push(Check::new(
        WEIGHT_PARITY,
        parity.pass,
        match parity.first_odd() {
            Some((w, c)) => format!("weight {w} occurs {c} times"),
            None => "every weight occurs an even number of times".to_string(),
        },
    ));

    // Only established in dimension 4.
    checks.push(if n == 2 && k > 0 {
        let bound = k as i64 - 2;
        Check::new(
            SIGNATURE_RANGE,
            sig.abs() <= bound,
            format!("|{sig}| <= {bound}"),
        )
    } else {
        Check::new(
            SIGNATURE_RANGE,
            true,
            "vacuous: only checked in dimension 4",
        )
    });

    checks.push(if k % 2 == 1 {
        Check::new(
            ODD_COUNT_DIMENSION,
            n.is_multiple_of(2),
            format!("{k} points in dimension {}", 2 * n),
        )
    } else {
        Check::new(ODD_COUNT_DIMENSION, true, "vacuous: even point count")
    });

    checks.push(if k == 2 {
        let (p, q) = (&data.points()[0], &data.points()[1]);
        let ok = p.weights() == q.weights() && p.sign() != q.sign();
        Check::new(TWO_POINTS, ok, format!("{p} and {q}"))
    } else {
        Check::new(TWO_POINTS, true, "vacuous: not two points")
    });

    let uniform = k > 0
        && data
            .iter()
            .all(|p| p.weights() == data.points()[0].weights());
    checks.push(if uniform {
        Check::new(UNIFORM_WEIGHTS, sig == 0, format!("signature {sig}"))
    } else {
        Check::new(
            UNIFORM_WEIGHTS,
            true,
            "vacuous: weights differ between points",
        )
    });

    let semi_free = k > 0 && data.iter().all(|p| p.weights().iter().all(|&w| w == 1));
    checks.push(if semi_free {
        let plus = data.count_sign(Sign::Plus);
        let minus = data.count_sign(Sign::Minus);
        Check::new(
            SEMI_FREE,
            plus == minus,
            format!("{plus} positive, {minus} negative"),
        )
    } else {
        Check::new(SEMI_FREE, true, "vacuous: some weight exceeds 1")
    });

    checks.push(Check::new(EULER_CHARACTERISTIC, true, format!("chi = {k}")));

    InvariantReport {
        points: k,
        arity: n,
        signature: sig,
        series_constant: series.ok(),
        smallest_weight_balance: balance,
        euler_characteristic: k,
        parity_table: parity.table,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Sign::{Minus as M, Plus as P};

    fn d(pairs: &[(Sign, u64, u64)]) -> FixedPointData {
        FixedPointData::from_pairs(pairs)
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&d(&[(P, 1, 2), (M, 1, 2)])), 0);
        assert_eq!(signature(&d(&[(M, 1, 1), (P, 1, 2), (P, 1, 2)])), 1);
        assert_eq!(signature(&FixedPointData::empty()), 0);
    }

    #[test]
    fn series_examples() {
        assert_eq!(signature_series_check(&d(&[(P, 1, 1), (M, 1, 1)])), Ok(0));
        assert_eq!(
            signature_series_check(&d(&[(M, 1, 1), (P, 1, 2), (P, 1, 2)])),
            Ok(1)
        );
        assert_eq!(signature_series_check(&FixedPointData::empty()), Ok(0));
        let bad = signature_series_check(&d(&[(P, 1, 2), (M, 1, 3)])).unwrap_err();
        assert_eq!(bad.constant_term, 0);
        assert!(bad.degree >= 1);
    }

    #[test]
    fn series_first_mismatch_degree() {
        // {+,1,2} u {-,1,3}: N = (1+t)(1+t^2)(1-t)(1-t^3) - (1+t)(1+t^3)(1-t)(1-t^2)
        // = (1-t^2)[(1+t^2)(1-t^3) - (1+t^3)(1-t^2)] = (1-t^2)(2t^2 - 2t^3)
        let (n, d) = cleared_series(&d(&[(P, 1, 2), (M, 1, 3)]));
        assert_eq!(n, IntegerPolynomial::from_i64s(&[0, 0, 2, -2, -2, 2]));
        assert_eq!(d.degree(), Some(7));
        let v = signature_series_check(&FixedPointData::from_pairs(&[(P, 1, 2), (M, 1, 3)]))
            .unwrap_err();
        assert_eq!(v.degree, 2);
        assert_eq!(v.residual, BigInt::from(2));
    }

    #[test]
    fn division_route_agrees() {
        for data in [
            d(&[(P, 1, 1), (M, 1, 1)]),
            d(&[(M, 1, 1), (P, 1, 2), (P, 1, 2)]),
            d(&[(P, 1, 2), (M, 1, 3)]),
            d(&[(P, 1, 2), (P, 1, 2)]),
            FixedPointData::empty(),
        ] {
            assert_eq!(
                signature_series_check(&data).is_ok(),
                signature_series_check_by_division(&data).is_ok(),
                "{data}"
            );
            if let Ok(c) = signature_series_check(&data) {
                assert_eq!(signature_series_check_by_division(&data), Ok(c));
            }
        }
    }

    #[test]
    fn balance_examples() {
        assert_eq!(
            smallest_weight_balance(&d(&[(M, 1, 1), (P, 1, 2), (P, 1, 2)])),
            Ok(0)
        );
        assert_eq!(smallest_weight_balance(&d(&[(P, 1, 2), (P, 1, 2)])), Ok(2));
        assert_eq!(
            smallest_weight_balance(&FixedPointData::empty()),
            Err(Error::EmptyData)
        );
    }

    #[test]
    fn parity_examples() {
        let r = weight_parity_check(&d(&[(P, 1, 2), (M, 1, 2)]));
        assert!(r.pass);
        assert_eq!(r.table, BTreeMap::from([(1, 2), (2, 2)]));
        let r = weight_parity_check(&d(&[(M, 1, 1), (P, 1, 2)]));
        assert!(!r.pass);
        assert_eq!(r.table, BTreeMap::from([(1, 3), (2, 1)]));
    }

    #[test]
    fn structural_examples() {
        let r = structural_checks(&d(&[(P, 1, 2), (M, 1, 2)]));
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.euler_characteristic, 2);

        let r = structural_checks(&d(&[(P, 1, 1), (P, 1, 1), (M, 1, 1)]));
        assert!(!r.check(check_names::SEMI_FREE).unwrap().passed);

        let six = FixedPointData::new(
            [(P, [1, 1, 2]), (P, [1, 2, 2]), (M, [1, 1, 1])]
                .map(|(s, w)| FixedPointDatum::new(s, w).unwrap()),
        )
        .unwrap();
        let r = structural_checks(&six);
        assert!(!r.check(check_names::ODD_COUNT_DIMENSION).unwrap().passed);

        let r = structural_checks(&d(&[(P, 1, 2), (P, 1, 2)]));
        assert!(!r.check(check_names::TWO_POINTS).unwrap().passed);
        assert!(!r.check(check_names::UNIFORM_WEIGHTS).unwrap().passed);
        assert!(!r.check(check_names::SIGNATURE_RANGE).unwrap().passed);
        assert_eq!(r.series_constant, None);
    }

    #[test]
    fn empty_report() {
        let r = structural_checks(&FixedPointData::empty());
        assert!(r.all_pass());
        assert_eq!(r.series_constant, Some(0));
        assert_eq!(r.euler_characteristic, 0);
    }
}
