//! Weil heights of elements and tuples, radicals, canonical heights with
//! certified tails, and evaluators for the height inequalities used by the
//! experiment suite.
//!
//! The production `weil_height` computes the denominator-ideal norm with one
//! O_K gcd and never factors anything, so it stays cheap on orbit values with
//! tens of thousands of digits. The sum-over-primes and sum-over-places forms
//! are implemented separately (`weil_height_valuations`,
//! `weil_height_places`) and cross-checked in tests; they need element
//! factorization and therefore a budget.
//!
//! A note on the tuple height: the finite part here is -sum_p min_i{v_p(z_i)}
//! N_p, the standard projective normalization. With that sign the tuple
//! height of (alpha, 1) equals the scalar height of alpha and the value is
//! invariant under common scaling, both of which are load-bearing downstream.

use serde::{Deserialize, Serialize};

use crate::dynamics::{iterate, OrbitTable, UnicriticalMap};
use crate::error::{Error, Result};
use crate::numfield::factor::{denominator_ideal_norm, factor_element};
use crate::numfield::{FieldElement, NumberField, ValuationTable};
use crate::primdiv::FactorBudget;
use crate::util::{ln_biguint, ln_ratio_abs, DEFAULT_SLACK};

/// A nonnegative height in natural-log units with a certified error bound
/// (zero for directly computed heights).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeightValue {
    pub value: f64,
    pub error_bound: f64,
}

impl HeightValue {
    fn exact(value: f64) -> Self {
        HeightValue { value: value.max(0.0), error_bound: 0.0 }
    }
}

/// Tolerances for the inequality checkers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheckConfig {
    pub epsilon: f64,
    pub delta: f64,
    pub tau: f64,
    pub slack: f64,
}

impl Default for BoundCheckConfig {
    fn default() -> Self {
        BoundCheckConfig { epsilon: 0.5, delta: 0.25, tau: 0.0, slack: DEFAULT_SLACK }
    }
}

/// Truth of one inequality together with its margin (always LHS - RHS), so
/// experiments can chart tightness, not just truth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub holds: bool,
    pub margin: f64,
}

pub(crate) fn check_le(lhs: f64, rhs: f64, slack: f64) -> CheckOutcome {
    CheckOutcome { holds: lhs <= rhs + slack, margin: lhs - rhs }
}

pub(crate) fn check_gt(lhs: f64, rhs: f64, slack: f64) -> CheckOutcome {
    CheckOutcome { holds: lhs > rhs - slack, margin: lhs - rhs }
}

/// h(x): denominator-ideal mass plus archimedean part. h(0) = 0. Exact to a
/// few ulps, no factorization.
pub fn weil_height(field: &NumberField, x: &FieldElement) -> HeightValue {
    if x.is_zero() {
        return HeightValue::exact(0.0);
    }
    let deg = field.degree() as f64;
    let den_norm = denominator_ideal_norm(field, x);
    let finite = ln_biguint(&den_norm) / deg;
    let arch = field
        .archimedean_logs(x)
        .expect("nonzero element")
        .iter()
        .map(|l| l.max(0.0))
        .sum::<f64>()
        / deg;
    HeightValue::exact(finite + arch)
}

/// The sum-over-primes form: -sum_p min{v_p(x), 0} N_p plus the embedding sum.
pub fn weil_height_valuations(
    field: &NumberField,
    x: &FieldElement,
    budget: &FactorBudget,
) -> Result<f64> {
    if x.is_zero() {
        return Ok(0.0);
    }
    let table = factor_element(field, x, budget)?;
    let finite: f64 = table
        .entries()
        .map(|(p, e)| if e < 0 { -(e as f64) * p.weight() } else { 0.0 })
        .sum();
    let deg = field.degree() as f64;
    let arch: f64 = field.archimedean_logs(x)?.iter().map(|l| l.max(0.0)).sum();
    Ok(finite + arch / deg)
}

/// The sum-over-places form: (1/[K:Q]) sum_v [K_v:Q_v] log max{1, |x|_v},
/// with one entry per place of K and explicit local degrees.
pub fn weil_height_places(
    field: &NumberField,
    x: &FieldElement,
    budget: &FactorBudget,
) -> Result<f64> {
    if x.is_zero() {
        return Ok(0.0);
    }
    let deg = field.degree() as f64;
    let table = factor_element(field, x, budget)?;
    let mut sum = 0.0;
    for (p, e) in table.entries() {
        // |x|_v = p^{-v/e}; [K_v:Q_p] = e*f
        let rational_p = ln_biguint(p.rational_prime());
        let residue = ln_biguint(p.residue_size());
        let f_deg = residue / rational_p; // residue degree as a real, 1 or 2
        let ram = if field.is_rational() {
            1.0
        } else {
            match crate::numfield::factor::splitting_type(field, p.rational_prime()) {
                crate::numfield::factor::Splitting::Ramified => 2.0,
                _ => 1.0,
            }
        };
        let local_degree = ram * f_deg;
        let log_abs = -(e as f64) / ram * rational_p; // log |x|_v
        sum += local_degree * log_abs.max(0.0);
    }
    // archimedean places: one real place for Q, one complex place otherwise
    match field.degree() {
        1 => {
            sum += ln_ratio_abs(x.as_rational().expect("rational field")).max(0.0);
        }
        _ => {
            let n = field.norm(x);
            let abs_sigma = ln_ratio_abs(&n) / 2.0;
            sum += 2.0 * abs_sigma.max(0.0);
        }
    }
    Ok(sum / deg)
}

fn nonzero_tables(
    field: &NumberField,
    zs: &[FieldElement],
    budget: &FactorBudget,
) -> Result<Vec<(usize, ValuationTable)>> {
    zs.iter()
        .enumerate()
        .filter(|(_, z)| !z.is_zero())
        .map(|(i, z)| factor_element(field, z, budget).map(|t| (i, t)))
        .collect()
}

/// Projective tuple height of (z_1, ..., z_n), n >= 2; invariant under common
/// scaling and equal to the scalar height on (alpha, 1).
pub fn tuple_height(
    field: &NumberField,
    zs: &[FieldElement],
    budget: &FactorBudget,
) -> Result<HeightValue> {
    if zs.iter().all(|z| z.is_zero()) {
        return Err(Error::AllZero);
    }
    let tables = nonzero_tables(field, zs, budget)?;
    let mut primes: Vec<_> = tables
        .iter()
        .flat_map(|(_, t)| t.entries().map(|(p, _)| p.clone()))
        .collect();
    primes.sort();
    primes.dedup();
    let finite: f64 = primes
        .iter()
        .map(|p| {
            let min_v = tables.iter().map(|(_, t)| t.get(p)).min().unwrap();
            -(min_v as f64) * p.weight()
        })
        .sum();
    let deg = field.degree() as f64;
    let mut arch = 0.0;
    for j in 0..field.degree() as usize {
        let max_log = tables
            .iter()
            .map(|(i, _)| field.archimedean_logs(&zs[*i]).expect("nonzero")[j])
            .fold(f64::NEG_INFINITY, f64::max);
        arch += max_log;
    }
    Ok(HeightValue::exact(finite + arch / deg))
}

/// rad(z_1, ..., z_n) = sum of N_p over primes where some pair of coordinate
/// valuations differ. All coordinates must be nonzero.
pub fn radical(field: &NumberField, zs: &[FieldElement], budget: &FactorBudget) -> Result<f64> {
    if zs.iter().any(|z| z.is_zero()) {
        return Err(Error::ZeroElement);
    }
    let tables = nonzero_tables(field, zs, budget)?;
    let mut primes: Vec<_> = tables
        .iter()
        .flat_map(|(_, t)| t.entries().map(|(p, _)| p.clone()))
        .collect();
    primes.sort();
    primes.dedup();
    let mut sum = 0.0;
    for p in primes {
        let vals: Vec<i64> = tables.iter().map(|(_, t)| t.get(&p)).collect();
        if vals.iter().any(|v| *v != vals[0]) {
            sum += p.weight();
        }
    }
    Ok(sum)
}

/// Canonical-height estimate h(f~^n(alpha - gamma)) / d^n with the certified
/// tail (h(c - gamma) + log 2) / ((d - 1) d^n); estimate +- tail brackets the
/// true canonical height of alpha under f.
pub fn canonical_height(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    n_iter: usize,
) -> Result<HeightValue> {
    if n_iter == 0 {
        return Err(Error::Precondition("canonical height needs n_iter >= 1".into()));
    }
    let tilde = f.monic_conjugate();
    let beta = f.field.sub(alpha, &f.gamma);
    let orbit = iterate(&tilde, &beta, n_iter);
    let top = orbit
        .value(n_iter)
        .ok_or(Error::OperandOverflow { level: orbit.len() })?;
    let d = f.degree as f64;
    let dn = d.powi(n_iter as i32);
    let h_top = weil_height(&f.field, top).value;
    let h_shift = weil_height(&f.field, &tilde.c).value;
    let tail = (h_shift + std::f64::consts::LN_2) / ((d - 1.0) * dn);
    Ok(HeightValue { value: h_top / dn, error_bound: tail })
}

/// h(sum alpha_i) <= log n + sum h(alpha_i).
pub fn check_triangle(field: &NumberField, alphas: &[FieldElement], slack: f64) -> CheckOutcome {
    let mut total = FieldElement::zero();
    let mut rhs = 0.0;
    for a in alphas {
        total = field.add(&total, a);
        rhs += weil_height(field, a).value;
    }
    if !alphas.is_empty() {
        rhs += (alphas.len() as f64).ln();
    }
    let lhs = weil_height(field, &total).value;
    check_le(lhs, rhs, slack)
}

/// Both orbit-growth bounds at level n, with margins.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitBounds {
    pub height: f64,
    pub lower: CheckOutcome,
    pub upper: CheckOutcome,
}

/// Evaluate the level-n lower and upper orbit bounds
///   h(f^n(a)) >  d^n (h(a-g) - 2/(d-1) max{1, h(c-g)}) - [h(g) + log 2]
///   h(f^n(a)) <  d^n/(d-1) (log 2 + h(c-g)) + d^n h(a-g) + [h(g) + log 2]
/// where the bracketed shift terms drop when gamma = 0 (the critically
/// centered statements are sharper by exactly those terms).
pub fn check_orbit_bounds(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    n: usize,
    slack: f64,
) -> Result<OrbitBounds> {
    if n == 0 {
        return Err(Error::Precondition("orbit bounds need n >= 1".into()));
    }
    let k = &f.field;
    let orbit = iterate(f, alpha, n);
    let value = orbit.value(n).ok_or(Error::OperandOverflow { level: orbit.len() })?;
    let h_n = weil_height(k, value).value;
    let d = f.degree as f64;
    let dn = d.powi(n as i32);
    let h_rel = weil_height(k, &k.sub(alpha, &f.gamma)).value;
    let h_shift = weil_height(k, &f.shift()).value;
    let shift_term = if f.gamma.is_zero() {
        0.0
    } else {
        weil_height(k, &f.gamma).value + std::f64::consts::LN_2
    };
    let lower = dn * (h_rel - 2.0 / (d - 1.0) * h_shift.max(1.0)) - shift_term;
    let upper = dn / (d - 1.0) * (std::f64::consts::LN_2 + h_shift) + dn * h_rel + shift_term;
    Ok(OrbitBounds {
        height: h_n,
        lower: check_gt(h_n, lower, slack),
        upper: check_le(h_n, upper, slack),
    })
}

/// Max coefficient height of a polynomial (the coefficient-vector height used
/// for growth comparisons).
pub fn poly_height(field: &NumberField, p: &crate::poly::KPoly) -> f64 {
    p.coeffs()
        .iter()
        .map(|c| weil_height(field, c).value)
        .fold(0.0, f64::max)
}

/// h(f^n(alpha)) > C_1 h(f^i) + C_2, with f^i expanded symbolically.
pub fn check_height_growth(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    n: usize,
    i: u32,
    c1: f64,
    c2: f64,
    slack: f64,
) -> Result<CheckOutcome> {
    if n == 0 || i == 0 {
        return Err(Error::Precondition("height growth needs n, i >= 1".into()));
    }
    let poly = f.iterate_poly(i)?;
    let h_fi = poly_height(&f.field, &poly);
    let orbit = iterate(f, alpha, n);
    let value = orbit.value(n).ok_or(Error::OperandOverflow { level: orbit.len() })?;
    let lhs = weil_height(&f.field, value).value;
    Ok(check_gt(lhs, c1 * h_fi + c2, slack))
}

/// (1-e) h(f^n(a)) <= 2 h(f^{n-1}(a)) <= (1+e) h(f^n(a)), quadratic maps only.
pub fn check_height_squeeze(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    n: usize,
    epsilon: f64,
    slack: f64,
) -> Result<(CheckOutcome, CheckOutcome)> {
    if f.degree != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: f.degree });
    }
    if n < 2 {
        return Err(Error::Precondition("height squeeze needs n >= 2".into()));
    }
    let orbit = iterate(f, alpha, n);
    let value_n = orbit.value(n).ok_or(Error::OperandOverflow { level: orbit.len() })?;
    let h_n = weil_height(&f.field, value_n).value;
    let h_prev = weil_height(&f.field, orbit.value(n - 1).unwrap()).value;
    let lower = check_le((1.0 - epsilon) * h_n, 2.0 * h_prev, slack);
    let upper = check_le(2.0 * h_prev, (1.0 + epsilon) * h_n, slack);
    Ok((lower, upper))
}

/// Observed ratio h(f^n(alpha)) / (d^n max{1, h(c - gamma)}): the empirical
/// stand-in for the existential orbit-growth constant, reported rather than
/// asserted.
pub fn empirical_kappa_ratio(f: &UnicriticalMap, alpha: &FieldElement, n: usize) -> Result<f64> {
    let orbit = iterate(f, alpha, n);
    let value = orbit.value(n).ok_or(Error::OperandOverflow { level: orbit.len() })?;
    let h_n = weil_height(&f.field, value).value;
    let h_shift = weil_height(&f.field, &f.shift()).value;
    let d = f.degree as f64;
    Ok(h_n / (d.powi(n as i32) * h_shift.max(1.0)))
}

/// Positive-support mass sum_{v_p(x) > 0} v_p(x) N_p (the left side of the
/// divisor-to-height inequality).
pub fn positive_valuation_mass(
    field: &NumberField,
    x: &FieldElement,
    budget: &FactorBudget,
) -> Result<f64> {
    let table = factor_element(field, x, budget)?;
    Ok(table
        .entries()
        .map(|(p, e)| if e > 0 { e as f64 * p.weight() } else { 0.0 })
        .sum())
}

/// Convenience: height of an orbit value with the overflow error mapped.
pub fn orbit_height(orbit: &OrbitTable, n: usize) -> Result<f64> {
    let v = orbit.value(n).ok_or(Error::OperandOverflow { level: orbit.len() })?;
    Ok(weil_height(&orbit.map.field, v).value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::UnicriticalMap;

    fn q() -> NumberField {
        NumberField::rational()
    }

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    const TOL: f64 = 1e-10;

    #[test]
    fn scalar_height_examples() {
        assert!((weil_height(&q(), &FieldElement::from_ratio(3, 2)).value - (3f64).ln()).abs() < TOL);
        assert_eq!(weil_height(&q(), &FieldElement::zero()).value, 0.0);
        let k = NumberField::gaussian();
        let x = k.parse_element("1+i").unwrap();
        assert!((weil_height(&k, &x).value - (2f64).ln() / 2.0).abs() < TOL);
        // h(x) = h(1/x)
        let y = FieldElement::from_ratio(-22, 7);
        let inv = q().inv(&y).unwrap();
        assert!((weil_height(&q(), &y).value - weil_height(&q(), &inv).value).abs() < TOL);
    }

    #[test]
    fn three_height_routes_agree() {
        let b = FactorBudget::default();
        let cases_q = ["3/2", "-26/5", "677", "-1/1024", "41/16"];
        for s in cases_q {
            let x = q().parse_element(s).unwrap();
            let fast = weil_height(&q(), &x).value;
            let v21 = weil_height_valuations(&q(), &x, &b).unwrap();
            let v22 = weil_height_places(&q(), &x, &b).unwrap();
            assert!((fast - v21).abs() < TOL, "{s}: fast {fast} vs valuations {v21}");
            assert!((fast - v22).abs() < TOL, "{s}: fast {fast} vs places {v22}");
        }
        let k = NumberField::gaussian();
        for s in ["1+i", "3/2 - 5*w", "-7 + 2/3*w", "26"] {
            let x = k.parse_element(s).unwrap();
            let fast = weil_height(&k, &x).value;
            let v21 = weil_height_valuations(&k, &x, &b).unwrap();
            let v22 = weil_height_places(&k, &x, &b).unwrap();
            assert!((fast - v21).abs() < TOL, "{s}");
            assert!((fast - v22).abs() < TOL, "{s}");
        }
    }

    #[test]
    fn tuple_height_examples() {
        let b = FactorBudget::default();
        let alpha = FieldElement::from_ratio(7, 3);
        let t = tuple_height(&q(), &[alpha.clone(), fe(1)], &b).unwrap();
        assert!((t.value - weil_height(&q(), &alpha).value).abs() < TOL);
        let t = tuple_height(&q(), &[fe(2), fe(4)], &b).unwrap();
        assert!((t.value - (2f64).ln()).abs() < TOL);
        let t = tuple_height(&q(), &[fe(1), fe(1), fe(1)], &b).unwrap();
        assert!(t.value.abs() < TOL);
        assert_eq!(tuple_height(&q(), &[FieldElement::zero()], &b), Err(Error::AllZero));
        // scaling invariance with a rational scalar
        let lambda = FieldElement::from_ratio(-5, 9);
        let zs = [fe(25), fe(1), fe(26)];
        let scaled: Vec<FieldElement> = zs.iter().map(|z| q().mul(z, &lambda)).collect();
        let t1 = tuple_height(&q(), &zs, &b).unwrap();
        let t2 = tuple_height(&q(), &scaled, &b).unwrap();
        assert!((t1.value - t2.value).abs() < TOL);
    }

    #[test]
    fn radical_examples() {
        let b = FactorBudget::default();
        let r = radical(&q(), &[fe(1), fe(8), fe(9)], &b).unwrap();
        assert!((r - (6f64).ln()).abs() < TOL);
        let r = radical(&q(), &[fe(4), fe(4), fe(4)], &b).unwrap();
        assert_eq!(r, 0.0);
        let r = radical(&q(), &[fe(1), fe(2), fe(3)], &b).unwrap();
        assert!((r - (6f64).ln()).abs() < TOL);
        assert_eq!(radical(&q(), &[fe(0), fe(1)], &b), Err(Error::ZeroElement));
    }

    #[test]
    fn canonical_height_examples() {
        // f = x^2, alpha = 2: canonical height is exactly log 2
        let f = UnicriticalMap::monic_rational(2, 0);
        let est = canonical_height(&f, &fe(2), 10).unwrap();
        assert!((est.value - (2f64).ln()).abs() < (2f64).ln() / 1024.0);
        assert!((est.error_bound - (2f64).ln() / 1024.0).abs() < 1e-12);

        // successive estimates differ by less than the certified tails
        let f = UnicriticalMap::monic_rational(2, 1);
        let e12 = canonical_height(&f, &fe(0), 12).unwrap();
        let e13 = canonical_height(&f, &fe(0), 13).unwrap();
        assert!((e12.value - e13.value).abs() <= e12.error_bound + e13.error_bound);

        // preperiodic points have canonical height 0
        let f = UnicriticalMap::monic_rational(2, -1);
        let est = canonical_height(&f, &fe(0), 12).unwrap();
        assert!(est.value <= est.error_bound);
    }

    #[test]
    fn canonical_height_functoriality() {
        let f = UnicriticalMap::monic_rational(2, 3);
        let alpha = fe(2);
        let f_alpha = f.apply(&alpha);
        let n = 9;
        let e1 = canonical_height(&f, &f_alpha, n).unwrap();
        let e2 = canonical_height(&f, &alpha, n).unwrap();
        let d = f.degree as f64;
        assert!((e1.value - d * e2.value).abs() <= e1.error_bound + d * e2.error_bound);
    }

    #[test]
    fn triangle_examples() {
        let out = check_triangle(&q(), &[fe(1), fe(1)], DEFAULT_SLACK);
        assert!(out.holds);
        assert!(out.margin.abs() < TOL, "equality case, margin {}", out.margin);
        let halves = [FieldElement::from_ratio(3, 2), FieldElement::from_ratio(-3, 2)];
        assert!(check_triangle(&q(), &halves, DEFAULT_SLACK).holds);
        assert!(check_triangle(&q(), &[], DEFAULT_SLACK).holds);
    }

    #[test]
    fn orbit_bounds_example() {
        // x^2 + 1 at level 5: h(677) = 6.517..., upper bound 32 log 2 = 22.18
        let f = UnicriticalMap::monic_rational(2, 1);
        let out = check_orbit_bounds(&f, &fe(0), 5, DEFAULT_SLACK).unwrap();
        assert!(out.lower.holds && out.upper.holds);
        assert!((out.height - (677f64).ln()).abs() < TOL);
        assert!((out.upper.margin + (32.0 * (2f64).ln() - (677f64).ln())).abs() < 1e-9);

        // shifted family member, exact small orbit
        let field = q();
        let f2 = UnicriticalMap::new(field, 2, fe(-4), fe(-2)).unwrap();
        let out = check_orbit_bounds(&f2, &fe(-4), 3, DEFAULT_SLACK).unwrap();
        assert!(out.lower.holds && out.upper.holds);

        // vacuous lower bound at a fixed point (h(alpha - gamma) small)
        let f3 = UnicriticalMap::monic_rational(2, -2);
        let out = check_orbit_bounds(&f3, &fe(2), 4, DEFAULT_SLACK).unwrap();
        assert!(out.lower.holds);
    }

    #[test]
    fn height_growth_examples() {
        let f = UnicriticalMap::monic_rational(2, 1);
        // h(f^6(0)) = log 458330 > 1 * h(f) + 0 = 0
        let out = check_height_growth(&f, &fe(0), 6, 1, 1.0, 0.0, DEFAULT_SLACK).unwrap();
        assert!(out.holds);
        assert!((out.margin - (458330f64).ln()).abs() < 1e-9);

        // f^2 for x^2 + 3 is x^4 + 6x^2 + 12: h(f^2) = log 12
        let f3 = UnicriticalMap::monic_rational(2, 3);
        let p2 = f3.iterate_poly(2).unwrap();
        assert_eq!(p2.coeffs(), &[fe(12), fe(0), fe(6), fe(0), fe(1)]);
        assert!((poly_height(&q(), &p2) - (12f64).ln()).abs() < TOL);
        let out = check_height_growth(&f3, &fe(0), 5, 2, 2.0, 1.0, DEFAULT_SLACK).unwrap();
        assert!(out.holds);

        // an orbit hitting zero fails for C1 = 0, C2 = 1
        let field = q();
        let taunec = crate::dynamics::taunec_family(field, 2, &fe(2), 3).unwrap();
        let gamma = taunec.gamma.clone();
        let out = check_height_growth(&taunec, &gamma, 3, 1, 0.0, 1.0, DEFAULT_SLACK).unwrap();
        assert!(!out.holds);
    }

    #[test]
    fn height_squeeze_examples() {
        let f = UnicriticalMap::monic_rational(2, 1);
        // 2 h(677) vs h(458330)
        let (lo, hi) = check_height_squeeze(&f, &fe(0), 6, 0.1, DEFAULT_SLACK).unwrap();
        assert!(lo.holds && hi.holds);
        let (lo, hi) = check_height_squeeze(&f, &fe(0), 2, 1.9, DEFAULT_SLACK).unwrap();
        assert!(lo.holds && hi.holds);
        let f2 = UnicriticalMap::monic_rational(2, 2);
        let (lo, hi) = check_height_squeeze(&f2, &fe(0), 8, 0.05, DEFAULT_SLACK).unwrap();
        assert!(lo.holds && hi.holds);
        let cubic = UnicriticalMap::monic_rational(3, 1);
        assert!(matches!(
            check_height_squeeze(&cubic, &fe(0), 3, 0.1, DEFAULT_SLACK),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn divisor_mass_bounded_by_height() {
        let b = FactorBudget::default();
        for s in ["26", "-3/2", "677/26", "458330"] {
            let x = q().parse_element(s).unwrap();
            let mass = positive_valuation_mass(&q(), &x, &b).unwrap();
            assert!(mass <= weil_height(&q(), &x).value + TOL, "{s}");
        }
    }

    #[test]
    fn kappa_ratio_reported() {
        let f = UnicriticalMap::monic_rational(2, 1);
        let r = empirical_kappa_ratio(&f, &fe(0), 8).unwrap();
        assert!(r > 0.0 && r.is_finite());
    }
}
