//! Orbit-generated abc triples and the empirical radical/imprimitive-mass
//! inequality checkers.
//!
//! Nothing here asserts the abc inequality itself: the scan reports observed
//! qualities so experiments can chart how far orbit triples sit from the
//! conjectured line, and the fitted intercept stays a report artifact.

use crate::dynamics::{iterate, UnicriticalMap};
use crate::error::{Error, Result};
use crate::heights::{check_gt, check_le, radical, tuple_height, weil_height, CheckOutcome};
use crate::numfield::FieldElement;
use crate::primdiv::{imprimitive_mass, positive_support, FactorBudget, FactorStatus};

/// An exact a + b = s triple with its projective height, radical, and quality.
#[derive(Debug, Clone)]
pub struct AbcTriple {
    pub a: FieldElement,
    pub b: FieldElement,
    pub s: FieldElement,
    pub h_proj: f64,
    pub rad: f64,
    /// h / rad; infinite when the radical vanishes.
    pub quality: f64,
}

impl AbcTriple {
    pub fn quality_is_finite(&self) -> bool {
        self.quality.is_finite()
    }
}

/// The level-n orbit triple ((x - gamma)^d, c, f^n(alpha)) with
/// x = f^{n-1}(alpha); the sum identity a + b = s is exact by construction.
pub fn orbit_abc_triple(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    n: usize,
    budget: &FactorBudget,
) -> Result<AbcTriple> {
    if n == 0 {
        return Err(Error::Precondition("orbit triples need n >= 1".into()));
    }
    let field = &f.field;
    let orbit = iterate(f, alpha, n);
    let s = orbit
        .value(n)
        .ok_or(Error::OperandOverflow { level: orbit.len() })?
        .clone();
    let x = orbit.value(n - 1).unwrap();
    let a = field.pow(&field.sub(x, &f.gamma), f.degree);
    let b = f.c.clone();
    if a.is_zero() {
        return Err(Error::DegenerateTriple { level: n, part: "(x-gamma)^d" });
    }
    if b.is_zero() {
        return Err(Error::DegenerateTriple { level: n, part: "c" });
    }
    if s.is_zero() {
        return Err(Error::DegenerateTriple { level: n, part: "f^n(alpha)" });
    }
    debug_assert_eq!(field.add(&a, &b), s);
    let zs = [a.clone(), b.clone(), s.clone()];
    let h_proj = tuple_height(field, &zs, budget)?.value;
    let rad = radical(field, &zs, budget)?;
    let quality = if rad == 0.0 { f64::INFINITY } else { h_proj / rad };
    Ok(AbcTriple { a, b, s, h_proj, rad, quality })
}

/// sum_{v_p(f^n(alpha)) > 0} N_p > (d - 1 - epsilon) h(f^{n-1}(alpha)).
pub fn check_rad_lower_bound(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    n: usize,
    epsilon: f64,
    budget: &FactorBudget,
    slack: f64,
) -> Result<CheckOutcome> {
    if n == 0 {
        return Err(Error::Precondition("radical bound needs n >= 1".into()));
    }
    let field = &f.field;
    let orbit = iterate(f, alpha, n);
    let value = orbit
        .value(n)
        .ok_or(Error::OperandOverflow { level: orbit.len() })?;
    if value.is_zero() {
        return Err(Error::ZeroIterate { level: n });
    }
    let support = positive_support(field, value, budget)?;
    if support.status == FactorStatus::Partial {
        return Err(Error::BudgetExceeded {
            digits: support
                .unfactored_norm
                .map(|c| crate::util::decimal_digits(&num_bigint::BigInt::from(c)))
                .unwrap_or(0),
        });
    }
    let lhs: f64 = support.primes.iter().map(|(p, _)| p.weight()).sum();
    let h_prev = weil_height(field, orbit.value(n - 1).unwrap()).value;
    let rhs = (f.degree as f64 - 1.0 - epsilon) * h_prev;
    Ok(check_gt(lhs, rhs, slack))
}

/// Mass of recurring primes vs delta * h(f^n(alpha)).
pub fn check_imprimitive_bound(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    n: usize,
    delta: f64,
    budget: &FactorBudget,
    slack: f64,
) -> Result<CheckOutcome> {
    let orbit = iterate(f, alpha, n);
    let value = orbit
        .value(n)
        .ok_or(Error::OperandOverflow { level: orbit.len() })?;
    if value.is_zero() {
        return Err(Error::ZeroIterate { level: n });
    }
    let mass = imprimitive_mass(&orbit, n, budget)?;
    let h_n = weil_height(&f.field, value).value;
    Ok(check_le(mass, delta * h_n, slack))
}

/// One scan row: a level that produced a triple, or the reason it was skipped.
#[derive(Debug, Clone)]
pub enum ScanLevel {
    Triple(usize, AbcTriple),
    Skipped(usize, Error),
}

/// Quality scan over a level range; triples sorted by quality descending,
/// degenerate or over-budget levels recorded in-band.
#[derive(Debug, Clone)]
pub struct QualityScan {
    pub triples: Vec<(usize, AbcTriple)>,
    pub skipped: Vec<(usize, Error)>,
}

pub fn quality_scan(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    n_range: std::ops::RangeInclusive<usize>,
    budget: &FactorBudget,
) -> QualityScan {
    let mut triples = Vec::new();
    let mut skipped = Vec::new();
    for n in n_range {
        match orbit_abc_triple(f, alpha, n, budget) {
            Ok(t) => triples.push((n, t)),
            Err(e) => skipped.push((n, e)),
        }
    }
    triples.sort_by(|x, y| {
        y.1.quality
            .partial_cmp(&x.1.quality)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(x.0.cmp(&y.0))
    });
    QualityScan { triples, skipped }
}

/// The smallest level from which `check` held at every computed level onward
/// (reported as an observation, never as anyone's threshold constant).
pub fn holds_from(outcomes: &[(usize, bool)]) -> Option<usize> {
    let mut from = None;
    for &(n, ok) in outcomes {
        if ok {
            if from.is_none() {
                from = Some(n);
            }
        } else {
            from = None;
        }
    }
    from
}
