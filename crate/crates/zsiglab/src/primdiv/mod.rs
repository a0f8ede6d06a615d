//! Primitive prime divisors without factorization: gcd-sieve primitive parts,
//! Zsigmondy sets, multiplicity-one witnesses, and the multiplicity-based
//! support classification.
//!
//! Zsigmondy membership at a level needs only a unit test of the sieved
//! primitive part, so it is exact even when the factorization budget is
//! starved. Witness searches and classifications factor under the budget and
//! degrade in-band to Partial instead of failing.

pub mod factorint;

pub use factorint::{factor_integer, FactorBudget, IntFactorization, Primality};

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::dynamics::{OrbitTable, UnicriticalMap};
use crate::error::{Error, Result};
use crate::numfield::factor::{
    canonical_associate, gcd_elements, numerator_content, primes_above, splitting_type, valuation,
    Splitting,
};
use crate::numfield::{FieldElement, NumberField, PrimeOfK};
use crate::util::decimal_digits;

/// Whether a factorization-backed result is complete.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FactorStatus {
    Exact,
    Partial,
}

/// Per-run memo table for integer factorizations, safe for concurrent
/// insert-or-read from a worker pool.
#[derive(Default)]
pub struct FactorCache {
    map: Mutex<HashMap<BigUint, ((u64, u64), IntFactorization)>>,
}

impl FactorCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn factor(&self, n: &BigInt, budget: &FactorBudget) -> Result<IntFactorization> {
        let key = n.magnitude().clone();
        let sig = (budget.trial_bound, budget.rho_iterations);
        if let Some((cached_sig, f)) = self.map.lock().unwrap().get(&key) {
            if f.is_exact() || *cached_sig == sig {
                let mut f = f.clone();
                f.negative = n.is_negative();
                return Ok(f);
            }
        }
        let f = factor_integer(n, budget)?;
        let mut stored = f.clone();
        stored.negative = false;
        self.map.lock().unwrap().insert(key, (sig, stored));
        Ok(f)
    }
}

/// Positive support of an element with multiplicities; `unfactored_norm`
/// carries the opaque composite-or-unknown part when the budget ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportReport {
    pub primes: Vec<(PrimeOfK, u32)>,
    pub status: FactorStatus,
    pub unfactored_norm: Option<BigUint>,
}

fn support_of_integral(
    field: &NumberField,
    y: &FieldElement,
    budget: &FactorBudget,
    cache: &FactorCache,
) -> Result<SupportReport> {
    debug_assert!(field.is_integral(y) && !y.is_zero());
    let mut primes: Vec<(PrimeOfK, u32)> = Vec::new();
    let leftover;
    if field.is_rational() {
        let n = y.rational_part().to_integer();
        let f = cache.factor(&n, budget)?;
        for (p, e) in &f.factors {
            primes.push((PrimeOfK::rational_big(p.clone()), *e));
        }
        leftover = f.cofactor;
    } else {
        let norm = field.norm(y).to_integer();
        let f = cache.factor(&norm, budget)?;
        for (p, e_norm) in &f.factors {
            match splitting_type(field, p) {
                Splitting::Inert => {
                    debug_assert!(e_norm % 2 == 0);
                    let prime = primes_above(field, p).pop().unwrap();
                    primes.push((prime, e_norm / 2));
                }
                Splitting::Ramified => {
                    let prime = primes_above(field, p).pop().unwrap();
                    primes.push((prime, *e_norm));
                }
                Splitting::Split => {
                    let pair = primes_above(field, p);
                    let v1 = valuation(field, y, &pair[0])? as u32;
                    let v2 = e_norm - v1;
                    for (prime, v) in pair.into_iter().zip([v1, v2]) {
                        if v > 0 {
                            primes.push((prime, v));
                        }
                    }
                }
            }
        }
        leftover = f.cofactor;
    }
    primes.sort_by(|a, b| a.0.cmp(&b.0));
    let status = if leftover.is_none() { FactorStatus::Exact } else { FactorStatus::Partial };
    Ok(SupportReport { primes, status, unfactored_norm: leftover })
}

/// Primes with v_p(x) > 0 and their multiplicities, factoring only the
/// numerator content of x.
pub fn positive_support(
    field: &NumberField,
    x: &FieldElement,
    budget: &FactorBudget,
) -> Result<SupportReport> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let content = numerator_content(field, x);
    if field.is_unit(&content) {
        return Ok(SupportReport { primes: vec![], status: FactorStatus::Exact, unfactored_norm: None });
    }
    support_of_integral(field, &content, budget, &FactorCache::new())
}

fn orbit_value(orbit: &OrbitTable, n: usize) -> Result<&FieldElement> {
    orbit
        .value(n)
        .ok_or(Error::OperandOverflow { level: orbit.len() })
}

/// The primitive part of f^n(alpha): the numerator content of f^n(alpha) with
/// every prime already seen positively at an earlier nonzero level divided
/// out completely. Pure gcd arithmetic, no factorization.
///
/// Levels with f^m(alpha) = 0 are skipped, and the start value alpha itself
/// (m = 0) never disqualifies a prime; only 1 <= m < n counts.
pub fn primitive_part(orbit: &OrbitTable, n: usize) -> Result<FieldElement> {
    if n < 2 {
        return Err(Error::Precondition("primitive parts are defined for n >= 2".into()));
    }
    let value = orbit_value(orbit, n)?;
    if value.is_zero() {
        return Err(Error::ZeroIterate { level: n });
    }
    let field = &orbit.map.field;
    let mut content = numerator_content(field, value);
    for m in 1..n {
        if field.is_unit(&content) {
            break;
        }
        let earlier = orbit_value(orbit, m)?;
        if earlier.is_zero() {
            continue;
        }
        let em_content = numerator_content(field, earlier);
        if field.is_unit(&em_content) {
            continue;
        }
        loop {
            let g = gcd_elements(field, &content, &em_content);
            if field.is_unit(&g) {
                break;
            }
            content = field.div(&content, &g).expect("gcd divides");
        }
    }
    Ok(canonical_associate(field, &content))
}

/// Factorization of the primitive part at level n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveFactors {
    /// (prime, multiplicity), multiplicity being v_p(f^n(alpha)) itself.
    pub primes: Vec<(PrimeOfK, u32)>,
    pub status: FactorStatus,
    pub unfactored_norm: Option<BigUint>,
}

/// Primitive prime divisors of f^n(alpha) with multiplicities, under budget.
/// Every reported prime is re-verified by direct valuation: multiplicity in
/// f^n(alpha) itself, and v_p <= 0 at every earlier nonzero iterate.
pub fn primitive_prime_divisors(
    orbit: &OrbitTable,
    n: usize,
    budget: &FactorBudget,
) -> Result<PrimitiveFactors> {
    primitive_prime_divisors_cached(orbit, n, budget, &FactorCache::new())
}

pub fn primitive_prime_divisors_cached(
    orbit: &OrbitTable,
    n: usize,
    budget: &FactorBudget,
    cache: &FactorCache,
) -> Result<PrimitiveFactors> {
    let part = primitive_part(orbit, n)?;
    let field = &orbit.map.field;
    if field.is_unit(&part) {
        return Ok(PrimitiveFactors { primes: vec![], status: FactorStatus::Exact, unfactored_norm: None });
    }
    let support = support_of_integral(field, &part, budget, cache)?;
    let value = orbit_value(orbit, n)?;
    for (p, e) in &support.primes {
        let v = valuation(field, value, p)?;
        assert_eq!(v, *e as i64, "multiplicity must equal the valuation in f^n(alpha)");
        for m in 1..n {
            let earlier = orbit_value(orbit, m)?;
            if earlier.is_zero() {
                continue;
            }
            assert!(
                valuation(field, earlier, p)? <= 0,
                "reported primitive prime divides an earlier iterate"
            );
        }
    }
    Ok(PrimitiveFactors {
        primes: support.primes,
        status: support.status,
        unfactored_norm: support.unfactored_norm,
    })
}

/// One Zsigmondy-report row.
#[derive(Debug, Clone)]
pub struct ZsigmondyLevel {
    pub n: usize,
    pub value: FieldElement,
    /// f^n(alpha) = 0 counts as a Zsigmondy member by definition.
    pub zero_iterate: bool,
    /// Exact membership verdict (needs no factorization).
    pub in_zsigmondy: bool,
    pub primitive_content: Option<FieldElement>,
    pub primitive_factors: Option<PrimitiveFactors>,
    /// A verified multiplicity-one primitive prime, smallest first.
    pub mult_one_witness: Option<PrimeOfK>,
    /// True when the witness verdict (present or absent) is certified.
    pub witness_certain: bool,
    pub status: FactorStatus,
}

/// Per-level verdicts for n in [2, n_max].
#[derive(Debug, Clone)]
pub struct ZsigmondyReport {
    pub map: UnicriticalMap,
    pub start: FieldElement,
    pub n_max: usize,
    pub levels: Vec<ZsigmondyLevel>,
    /// Levels from here on were not computed (digit cap).
    pub truncated_at: Option<usize>,
}

impl ZsigmondyReport {
    /// The Zsigmondy members among the computed levels.
    pub fn members(&self) -> Vec<usize> {
        self.levels.iter().filter(|l| l.in_zsigmondy).map(|l| l.n).collect()
    }

    pub fn level(&self, n: usize) -> Option<&ZsigmondyLevel> {
        self.levels.iter().find(|l| l.n == n)
    }
}

fn build_level(
    orbit: &OrbitTable,
    n: usize,
    budget: &FactorBudget,
    cache: &FactorCache,
    search_witnesses: bool,
) -> Result<ZsigmondyLevel> {
    let field = &orbit.map.field;
    let value = orbit_value(orbit, n)?.clone();
    if value.is_zero() {
        return Ok(ZsigmondyLevel {
            n,
            value,
            zero_iterate: true,
            in_zsigmondy: true,
            primitive_content: None,
            primitive_factors: None,
            mult_one_witness: None,
            witness_certain: true,
            status: FactorStatus::Exact,
        });
    }
    let part = primitive_part(orbit, n)?;
    let in_zsigmondy = field.is_unit(&part);
    if !search_witnesses {
        return Ok(ZsigmondyLevel {
            n,
            value,
            zero_iterate: false,
            in_zsigmondy,
            primitive_content: Some(part),
            primitive_factors: None,
            mult_one_witness: None,
            witness_certain: in_zsigmondy,
            status: FactorStatus::Exact,
        });
    }
    if in_zsigmondy {
        return Ok(ZsigmondyLevel {
            n,
            value,
            zero_iterate: false,
            in_zsigmondy: true,
            primitive_content: Some(part),
            primitive_factors: Some(PrimitiveFactors {
                primes: vec![],
                status: FactorStatus::Exact,
                unfactored_norm: None,
            }),
            mult_one_witness: None,
            witness_certain: true,
            status: FactorStatus::Exact,
        });
    }
    let factors = primitive_prime_divisors_cached(orbit, n, budget, cache)?;
    // smallest surviving prime first: small primes certify fastest
    let witness = factors.primes.iter().find(|(_, e)| *e == 1).map(|(p, _)| p.clone());
    let witness_certain = witness.is_some() || factors.status == FactorStatus::Exact;
    let status = factors.status;
    Ok(ZsigmondyLevel {
        n,
        value,
        zero_iterate: false,
        in_zsigmondy: false,
        primitive_content: Some(part),
        primitive_factors: Some(factors),
        mult_one_witness: witness,
        witness_certain,
        status,
    })
}

fn zsigmondy_report(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    n_max: usize,
    budget: &FactorBudget,
    cache: &FactorCache,
    search_witnesses: bool,
) -> Result<ZsigmondyReport> {
    if n_max < 2 {
        return Err(Error::Precondition("Zsigmondy reports need n_max >= 2".into()));
    }
    let orbit = crate::dynamics::iterate(f, alpha, n_max);
    let last = (orbit.len() - 1).min(n_max);
    let mut levels = Vec::new();
    for n in 2..=last {
        levels.push(build_level(&orbit, n, budget, cache, search_witnesses)?);
    }
    Ok(ZsigmondyReport {
        map: f.clone(),
        start: alpha.clone(),
        n_max,
        levels,
        truncated_at: orbit.overflow_at,
    })
}

/// Full Zsigmondy report with witness searches, for n in [2, n_max].
pub fn zsigmondy_set(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    n_max: usize,
    budget: &FactorBudget,
) -> Result<ZsigmondyReport> {
    zsigmondy_report(f, alpha, n_max, budget, &FactorCache::new(), true)
}

/// Same, sharing a per-run factor cache.
pub fn zsigmondy_set_cached(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    n_max: usize,
    budget: &FactorBudget,
    cache: &FactorCache,
) -> Result<ZsigmondyReport> {
    zsigmondy_report(f, alpha, n_max, budget, cache, true)
}

/// Membership-only report: never factors anything, so it scales to orbits
/// whose values have hundreds of digits.
pub fn zsigmondy_membership(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    n_max: usize,
) -> Result<ZsigmondyReport> {
    zsigmondy_report(f, alpha, n_max, &FactorBudget::crippled(), &FactorCache::new(), false)
}

/// The multiplicity partition of the positive support of f^n(alpha).
#[derive(Debug, Clone)]
pub struct SupportClassification {
    pub y1: Vec<(PrimeOfK, u32)>,
    pub y2: Vec<(PrimeOfK, u32)>,
    pub y3plus: Vec<(PrimeOfK, u32)>,
    pub mass1: f64,
    pub mass2: f64,
    pub mass3plus: f64,
}

impl SupportClassification {
    /// sum over the whole positive support of v_p N_p (multiplicity-weighted).
    pub fn weighted_mass(&self) -> f64 {
        let w = |v: &Vec<(PrimeOfK, u32)>| -> f64 {
            v.iter().map(|(p, e)| *e as f64 * p.weight()).sum()
        };
        w(&self.y1) + w(&self.y2) + w(&self.y3plus)
    }
}

/// Partition the primes dividing f^n(alpha) by multiplicity (1, 2, >= 3) with
/// their N_p masses. Requires an exact factorization.
pub fn classify_support(
    orbit: &OrbitTable,
    n: usize,
    budget: &FactorBudget,
) -> Result<SupportClassification> {
    let field = &orbit.map.field;
    let value = orbit_value(orbit, n)?;
    if value.is_zero() {
        return Err(Error::ZeroIterate { level: n });
    }
    let content = numerator_content(field, value);
    let support = if field.is_unit(&content) {
        SupportReport { primes: vec![], status: FactorStatus::Exact, unfactored_norm: None }
    } else {
        support_of_integral(field, &content, budget, &FactorCache::new())?
    };
    if support.status == FactorStatus::Partial {
        let digits = support
            .unfactored_norm
            .as_ref()
            .map(|c| decimal_digits(&BigInt::from(c.clone())))
            .unwrap_or(0);
        return Err(Error::BudgetExceeded { digits });
    }
    let mut out = SupportClassification {
        y1: vec![],
        y2: vec![],
        y3plus: vec![],
        mass1: 0.0,
        mass2: 0.0,
        mass3plus: 0.0,
    };
    for (p, e) in support.primes {
        let w = p.weight();
        match e {
            1 => {
                out.mass1 += w;
                out.y1.push((p, e));
            }
            2 => {
                out.mass2 += w;
                out.y2.push((p, e));
            }
            _ => {
                out.mass3plus += w;
                out.y3plus.push((p, e));
            }
        }
    }
    Ok(out)
}

/// Sum of N_p over primes dividing f^n(alpha) positively that also divide
/// some earlier nonzero iterate positively. Only the non-primitive part of
/// the content is factored.
pub fn imprimitive_mass(orbit: &OrbitTable, n: usize, budget: &FactorBudget) -> Result<f64> {
    let field = &orbit.map.field;
    let value = orbit_value(orbit, n)?;
    if value.is_zero() {
        return Err(Error::ZeroIterate { level: n });
    }
    let content = numerator_content(field, value);
    let part = primitive_part(orbit, n)?;
    let nonprim = field.div(&content, &part).expect("primitive part divides the content");
    debug_assert!(field.is_integral(&nonprim));
    if field.is_unit(&nonprim) {
        return Ok(0.0);
    }
    let support = support_of_integral(field, &nonprim, budget, &FactorCache::new())?;
    if support.status == FactorStatus::Partial {
        let digits = support
            .unfactored_norm
            .as_ref()
            .map(|c| decimal_digits(&BigInt::from(c.clone())))
            .unwrap_or(0);
        return Err(Error::BudgetExceeded { digits });
    }
    Ok(support.primes.iter().map(|(p, _)| p.weight()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{conjugate_by_shift, iterate};

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn q() -> NumberField {
        NumberField::rational()
    }

    fn content_int(x: &FieldElement) -> BigInt {
        x.rational_part().to_integer()
    }

    #[test]
    fn positive_support_examples() {
        let b = FactorBudget::default();
        let s = positive_support(&q(), &FieldElement::from_ratio(26, 5), &b).unwrap();
        let got: Vec<(String, u32)> =
            s.primes.iter().map(|(p, e)| (p.generator().to_string(), *e)).collect();
        assert_eq!(got, vec![("2".into(), 1), ("13".into(), 1)]);
        assert_eq!(s.status, FactorStatus::Exact);

        let s = positive_support(&q(), &FieldElement::from_ratio(1, 7), &b).unwrap();
        assert!(s.primes.is_empty());

        let k = NumberField::gaussian();
        let s = positive_support(&k, &fe(5), &b).unwrap();
        assert_eq!(s.primes.len(), 2);
        for (p, e) in &s.primes {
            assert_eq!(*e, 1);
            assert_eq!(p.rational_prime(), &BigUint::from(5u32));
        }
        assert!(positive_support(&q(), &FieldElement::zero(), &b).is_err());
    }

    #[test]
    fn primitive_part_examples() {
        let f = UnicriticalMap::monic_rational(2, 1);
        let orbit = iterate(&f, &fe(0), 8);
        // level 4: 26 sieved against {1, 2, 5} leaves 13
        assert_eq!(content_int(&primitive_part(&orbit, 4).unwrap()), BigInt::from(13));
        // level 2: 2 survives whole
        assert_eq!(content_int(&primitive_part(&orbit, 2).unwrap()), BigInt::from(2));

        // conjugate by t = f^4(0) = 26: orbit -26, -25, -24, -21, 0, 651, ...
        let g = conjugate_by_shift(&f, &fe(26));
        let orbit_g = iterate(&g, &fe(-26), 8);
        assert_eq!(orbit_g.values[4], fe(0));
        assert_eq!(orbit_g.values[5], fe(651));
        // 651 = 3*7*31; 3 | 24, 7 | 21, zero level skipped: primitive part 31
        assert_eq!(content_int(&primitive_part(&orbit_g, 5).unwrap()), BigInt::from(31));
        // the zero iterate itself is a member, not a sieve input
        assert!(matches!(primitive_part(&orbit_g, 4), Err(Error::ZeroIterate { level: 4 })));
    }

    #[test]
    fn primitive_divisor_examples() {
        let b = FactorBudget::default();
        let f = UnicriticalMap::monic_rational(2, 1);
        let orbit = iterate(&f, &fe(0), 6);
        let got = primitive_prime_divisors(&orbit, 4, &b).unwrap();
        assert_eq!(got.primes.len(), 1);
        assert_eq!(got.primes[0].0.generator().to_string(), "13");
        assert_eq!(got.primes[0].1, 1);

        let got = primitive_prime_divisors(&orbit, 3, &b).unwrap();
        assert_eq!(got.primes[0].0.generator().to_string(), "5");

        // (x+4)^2 - 2 with critical start: f^2(gamma) = 2, but v_2(f^1(gamma)) = 1
        let field = q();
        let f2 = UnicriticalMap::new(field, 2, fe(-4), fe(-2)).unwrap();
        let orbit2 = iterate(&f2, &fe(-4), 4);
        let got = primitive_prime_divisors(&orbit2, 2, &b).unwrap();
        assert!(got.primes.is_empty());
        assert_eq!(got.status, FactorStatus::Exact);
    }

    #[test]
    fn zsigmondy_empty_with_witnesses() {
        let b = FactorBudget::default();
        let f = UnicriticalMap::monic_rational(2, 1);
        let report = zsigmondy_set(&f, &fe(0), 8, &b).unwrap();
        assert!(report.members().is_empty());
        let expected: [(usize, u64); 4] = [(2, 2), (3, 5), (4, 13), (5, 677)];
        for (n, w) in expected {
            let level = report.level(n).unwrap();
            let witness = level.mult_one_witness.as_ref().unwrap();
            assert_eq!(witness.generator().to_string(), w.to_string(), "level {n}");
            assert!(level.witness_certain);
        }
        // level 6: 458330 = 2 * 5 * 45833, primitive part 45833
        let l6 = report.level(6).unwrap();
        assert_eq!(l6.mult_one_witness.as_ref().unwrap().generator().to_string(), "45833");
        for l in &report.levels {
            assert!(l.mult_one_witness.is_some() && l.witness_certain);
        }
    }

    #[test]
    fn conjugation_puts_level_in_zsigmondy_set() {
        let b = FactorBudget::default();
        let f = UnicriticalMap::monic_rational(2, 1);
        let g = conjugate_by_shift(&f, &fe(26));
        let report = zsigmondy_set(&g, &fe(-26), 8, &b).unwrap();
        assert_eq!(report.members(), vec![4]);
        assert!(report.level(4).unwrap().zero_iterate);
        // the only difference from the unshifted orbit is the zero level
        let base = zsigmondy_set(&f, &fe(0), 8, &b).unwrap();
        assert!(base.members().is_empty());
    }

    #[test]
    fn membership_is_budget_free() {
        let f = UnicriticalMap::monic_rational(2, 1);
        let crippled = FactorBudget::crippled();
        let full = FactorBudget::default();
        let with_crippled = zsigmondy_set(&f, &fe(0), 8, &crippled).unwrap();
        let with_full = zsigmondy_set(&f, &fe(0), 8, &full).unwrap();
        assert_eq!(with_crippled.members(), with_full.members());
        // level 7 = 41 * 1277 * 4012193: trial division still finds the
        // witness 41, but the cofactor stays opaque
        let l7 = with_crippled.level(7).unwrap();
        assert_eq!(l7.status, FactorStatus::Partial);
        assert_eq!(l7.mult_one_witness.as_ref().unwrap().generator().to_string(), "41");
        assert!(l7.witness_certain);
        // level 8's primitive part (7121 * 621113 * 383732149849) resists the
        // crippled budget entirely: Partial, witness unknown, never guessed
        let l8 = with_crippled.level(8).unwrap();
        assert_eq!(l8.status, FactorStatus::Partial);
        assert!(l8.mult_one_witness.is_none() && !l8.witness_certain);
        let l8_full = with_full.level(8).unwrap();
        assert_eq!(l8_full.mult_one_witness.as_ref().unwrap().generator().to_string(), "7121");
        assert!(l8_full.witness_certain && l8_full.status == FactorStatus::Exact);
        let fast = zsigmondy_membership(&f, &fe(0), 8).unwrap();
        assert_eq!(fast.members(), with_full.members());
    }

    #[test]
    fn classify_examples() {
        let b = FactorBudget::default();
        // f = x^2 + 3: f^3(0) = 147 = 3 * 7^2
        let f = UnicriticalMap::monic_rational(2, 3);
        let orbit = iterate(&f, &fe(0), 4);
        let c = classify_support(&orbit, 3, &b).unwrap();
        assert_eq!(c.y1.len(), 1);
        assert_eq!(c.y1[0].0.generator().to_string(), "3");
        assert_eq!(c.y2.len(), 1);
        assert_eq!(c.y2[0].0.generator().to_string(), "7");
        assert!(c.y3plus.is_empty());
        assert!((c.mass1 - (3f64).ln()).abs() < 1e-12);
        assert!((c.mass2 - (7f64).ln()).abs() < 1e-12);

        let f1 = UnicriticalMap::monic_rational(2, 1);
        let orbit1 = iterate(&f1, &fe(0), 4);
        let c = classify_support(&orbit1, 2, &b).unwrap();
        assert_eq!(c.y1.len(), 1);
        let c = classify_support(&orbit1, 4, &b).unwrap();
        assert_eq!(c.y1.len(), 2);
        assert!(c.y2.is_empty() && c.y3plus.is_empty());
    }

    #[test]
    fn imprimitive_mass_examples() {
        let b = FactorBudget::default();
        let f = UnicriticalMap::monic_rational(2, 1);
        let orbit = iterate(&f, &fe(0), 6);
        let m4 = imprimitive_mass(&orbit, 4, &b).unwrap();
        assert!((m4 - (2f64).ln()).abs() < 1e-12);
        assert_eq!(imprimitive_mass(&orbit, 3, &b).unwrap(), 0.0);
        assert_eq!(imprimitive_mass(&orbit, 2, &b).unwrap(), 0.0);
    }

    #[test]
    fn gaussian_orbit_support() {
        // over Q(i) the sieve runs on O_K contents
        let k = NumberField::gaussian();
        let c = k.parse_element("1+i").unwrap();
        let f = UnicriticalMap::new(k, 2, FieldElement::zero(), c).unwrap();
        let orbit = iterate(&f, &FieldElement::zero(), 4);
        let b = FactorBudget::default();
        for n in 2..=4 {
            if orbit.values[n].is_zero() {
                continue;
            }
            let part = primitive_part(&orbit, n).unwrap();
            assert!(k.is_integral(&part));
            let factors = primitive_prime_divisors(&orbit, n, &b).unwrap();
            for (p, e) in &factors.primes {
                assert_eq!(valuation(&k, &orbit.values[n], p).unwrap(), *e as i64);
            }
        }
    }

    #[test]
    fn cache_is_shared_and_consistent() {
        let cache = FactorCache::new();
        let b = FactorBudget::default();
        let f = UnicriticalMap::monic_rational(2, 1);
        let r1 = zsigmondy_set_cached(&f, &fe(0), 6, &b, &cache).unwrap();
        let r2 = zsigmondy_set_cached(&f, &fe(0), 6, &b, &cache).unwrap();
        assert_eq!(r1.members(), r2.members());
        assert_eq!(
            r1.level(6).unwrap().mult_one_witness,
            r2.level(6).unwrap().mult_one_witness
        );
    }
}
