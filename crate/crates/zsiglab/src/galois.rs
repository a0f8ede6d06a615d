//! Splitting-tower audits for iterated unicritical polynomials: stability
//! tests, the discriminant recursion, a sufficient maximality criterion with
//! verified witnesses, the exact level-2 oracle over Q, and full verification
//! of the conjugated non-maximality family.
//!
//! Maximal verdicts always carry a verified witness prime; NotMaximal is only
//! ever produced by exact oracles (the level-2 square test or the family
//! identity), never by the absence of a sufficient witness.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dynamics::{example_family, iterate, UnicriticalMap};
use crate::error::{Error, Result};
use crate::numfield::factor::factor_element;
use crate::numfield::{FieldElement, NumberField, PrimeOfK};
use crate::poly::discriminant;
use crate::primdiv::{primitive_prime_divisors, FactorBudget, FactorStatus};
use crate::util::rational_sqrt;

// ---- exact arithmetic in a quadratic extension Q(sqrt(D)) ---------------------

/// a + b sqrt(D) for a squarefree rational integer D (positive or negative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExtElement {
    pub d: BigInt,
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadExtElement {
    pub fn new(d: BigInt, a: BigRational, b: BigRational) -> Self {
        QuadExtElement { d, a, b }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        let d = BigRational::from(self.d.clone());
        QuadExtElement {
            d: self.d.clone(),
            a: &self.a * &other.a + &self.b * &other.b * &d,
            b: &self.a * &other.b + &self.b * &other.a,
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn is_rational(&self, q: &BigRational) -> bool {
        self.b.is_zero() && &self.a == q
    }
}

/// Squarefree core of a nonzero rational: sign times the product of primes of
/// odd valuation.
pub fn squarefree_core(q: &BigRational, budget: &FactorBudget) -> Result<BigInt> {
    if q.is_zero() {
        return Err(Error::ZeroElement);
    }
    let field = NumberField::rational();
    let table = factor_element(&field, &FieldElement::from_rational(q.clone()), budget)?;
    let mut core = BigInt::one();
    for (p, e) in table.entries() {
        if e % 2 != 0 {
            core *= p.generator().rational_part().to_integer();
        }
    }
    if q.is_negative() {
        core = -core;
    }
    Ok(core)
}

/// Is z a square in Q(sqrt(D))? For rational z this is exact: z is a square
/// there iff z or z/D is a square in Q.
pub fn is_square_in_quadratic(d: &BigRational, z: &BigRational) -> bool {
    sqrt_in_quadratic(d, z).is_some()
}

/// An explicit square root of z in Q(sqrt(D)), when one exists.
pub fn sqrt_in_quadratic(d: &BigRational, z: &BigRational) -> Option<QuadExtElement> {
    let d_int = d.to_integer();
    debug_assert!(d.is_integer());
    if z.is_zero() {
        return Some(QuadExtElement::new(d_int, BigRational::zero(), BigRational::zero()));
    }
    if let Some(r) = rational_sqrt(z) {
        return Some(QuadExtElement::new(d_int, r, BigRational::zero()));
    }
    let quot = z / d;
    if let Some(t) = rational_sqrt(&quot) {
        let w = QuadExtElement::new(d_int, BigRational::zero(), t);
        debug_assert!(w.square().is_rational(z));
        return Some(w);
    }
    None
}

// ---- discriminants -------------------------------------------------------------

/// Disc(f^i), computed directly as a resultant, and cross-checked against the
/// recursion Disc(f^i) = +-d^{d^i} (Disc(f^{i-1}))^d (f^i(gamma))^{d-1}
/// (the exponent d on the previous discriminant is forced by direct
/// computation, e.g. disc(x^4+2x^2+2) = 512 = 2^4 * (-4)^2 * 2).
pub fn disc_iterate(f: &UnicriticalMap, i: u32) -> Result<FieldElement> {
    if i == 0 {
        return Ok(FieldElement::one());
    }
    let k = &f.field;
    let poly = f.iterate_poly(i)?;
    let direct = discriminant(k, &poly)?;
    // recursion cross-check
    let prev = if i == 1 {
        FieldElement::one()
    } else {
        discriminant(k, &f.iterate_poly(i - 1)?)?
    };
    let orbit = iterate(f, &f.gamma.clone(), i as usize);
    let fi_gamma = orbit
        .value(i as usize)
        .ok_or(Error::OperandOverflow { level: orbit.len() })?;
    let d_power = {
        let d_big = FieldElement::from_int(f.degree as i64);
        let exp = (f.degree as u64).pow(i);
        if exp > u32::MAX as u64 {
            return Err(Error::ExpansionCap { degree: f.degree, iterate: i });
        }
        k.pow(&d_big, exp as u32)
    };
    let recursed = k.mul(
        &k.mul(&d_power, &k.pow(&prev, f.degree)),
        &k.pow(fi_gamma, f.degree - 1),
    );
    assert!(
        direct == recursed || direct == k.neg(&recursed),
        "discriminant recursion must match the resultant up to sign"
    );
    Ok(direct)
}

// ---- stability -----------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityOutcome {
    /// Irreducible and no critical-orbit square found through n_max. The
    /// hypothesis quantifies over all n, so this is a checked-up-to report,
    /// not a certificate for stability outright.
    StableUpTo(usize),
    /// disc(f) is a square in K: f factors over K.
    Reducible,
    /// f^n(gamma) is a square in K at this level.
    SquareAt(usize),
}

/// Quadratic stability test: f irreducible over K and f^n(gamma) not a square
/// in K for 2 <= n <= n_max. Exact, factorization-free.
pub fn stability_test(f: &UnicriticalMap, n_max: usize) -> Result<StabilityOutcome> {
    if f.degree != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: f.degree });
    }
    let k = &f.field;
    // disc(f) = -4 f(gamma) = -4c
    let disc = k.mul(&FieldElement::from_int(-4), &f.c);
    if k.is_square(&disc) {
        return Ok(StabilityOutcome::Reducible);
    }
    let orbit = iterate(f, &f.gamma.clone(), n_max);
    for n in 2..=n_max {
        let value = orbit
            .value(n)
            .ok_or(Error::OperandOverflow { level: orbit.len() })?;
        if k.is_square(value) {
            return Ok(StabilityOutcome::SquareAt(n));
        }
    }
    Ok(StabilityOutcome::StableUpTo(n_max))
}

// ---- maximality ----------------------------------------------------------------

/// Does K contain a primitive d-th root of unity? (Among the whitelist
/// fields, only Q(i) has mu_4 and only Q(sqrt(-3)) has mu_3 and mu_6.)
pub fn has_primitive_dth_root(field: &NumberField, d: u32) -> bool {
    match d {
        1 | 2 => true,
        3 | 6 => field.quadratic_d() == Some(3),
        4 => field.quadratic_d() == Some(1),
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SufficientVerdict {
    /// The witness prime: multiplicity-one primitive at level n, coprime to
    /// d, with c and gamma integral at it. Such a prime is unramified in
    /// K_{n-1} by the discriminant recursion, so multiplicity one certifies
    /// the level is not a p-th power there.
    Maximal(PrimeOfK),
    Inconclusive { budget_exhausted: bool, reason: String },
}

/// The sufficient maximality criterion at level n of the critical orbit.
/// Callers are expected to have checked stability up to n. Never returns a
/// NotMaximal verdict: absence of a witness proves nothing.
pub fn maximality_sufficient(
    f: &UnicriticalMap,
    n: usize,
    budget: &FactorBudget,
) -> Result<SufficientVerdict> {
    if n < 2 {
        return Err(Error::Precondition("maximality tests start at n = 2".into()));
    }
    if !has_primitive_dth_root(&f.field, f.degree) {
        return Ok(SufficientVerdict::Inconclusive {
            budget_exhausted: false,
            reason: format!("K lacks a primitive {}th root of unity", f.degree),
        });
    }
    let k = &f.field;
    let gamma = f.gamma.clone();
    let orbit = iterate(f, &gamma, n);
    match orbit.value(n) {
        None => return Err(Error::OperandOverflow { level: orbit.len() }),
        Some(v) if v.is_zero() => {
            return Ok(SufficientVerdict::Inconclusive {
                budget_exhausted: false,
                reason: "f^n(gamma) = 0".into(),
            })
        }
        _ => {}
    }
    let factors = primitive_prime_divisors(&orbit, n, budget)?;
    let d_elem = FieldElement::from_int(f.degree as i64);
    for (p, mult) in &factors.primes {
        if *mult != 1 {
            continue;
        }
        let coprime_to_d = crate::numfield::valuation(k, &d_elem, p)? == 0;
        let c_integral = f.c.is_zero() || crate::numfield::valuation(k, &f.c, p)? >= 0;
        let gamma_integral = gamma.is_zero() || crate::numfield::valuation(k, &gamma, p)? >= 0;
        if coprime_to_d && c_integral && gamma_integral {
            return Ok(SufficientVerdict::Maximal(p.clone()));
        }
    }
    Ok(SufficientVerdict::Inconclusive {
        budget_exhausted: factors.status == FactorStatus::Partial,
        reason: "no multiplicity-one primitive prime met the integrality conditions".into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Level2Verdict {
    Maximal,
    /// Carries the exactly verified square root of f^2(gamma) in K_1.
    NotMaximal(QuadExtElement),
}

/// The exact level-2 test for quadratic maps over Q: K_1 = Q(sqrt(disc f)),
/// and K_2/K_1 is maximal iff f^2(gamma) is not a square in K_1.
pub fn maximality_level2_oracle(
    f: &UnicriticalMap,
    budget: &FactorBudget,
) -> Result<Level2Verdict> {
    if f.degree != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: f.degree });
    }
    if !f.field.is_rational() {
        return Err(Error::Precondition("the level-2 oracle is stated over Q".into()));
    }
    let k = &f.field;
    let disc = k.mul(&FieldElement::from_int(-4), &f.c);
    let disc_q = disc.rational_part().clone();
    if rational_sqrt(&disc_q).is_some() {
        return Err(Error::ReducibleBase);
    }
    let core = squarefree_core(&disc_q, budget)?;
    let orbit = iterate(f, &f.gamma.clone(), 2);
    let z = orbit.values[2].rational_part().clone();
    match sqrt_in_quadratic(&BigRational::from(core), &z) {
        Some(w) => Ok(Level2Verdict::NotMaximal(w)),
        None => Ok(Level2Verdict::Maximal),
    }
}

// ---- tower report ---------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum LevelVerdict {
    Maximal { witness: PrimeOfK },
    MaximalByOracle,
    NotMaximal { square_root: QuadExtElement },
    Inconclusive { budget_exhausted: bool, reason: String },
}

#[derive(Debug, Clone)]
pub struct TowerLevel {
    pub n: usize,
    pub verdict: LevelVerdict,
    pub disc_value: Option<FieldElement>,
}

#[derive(Debug, Clone)]
pub struct TowerReport {
    pub map: UnicriticalMap,
    pub stability: StabilityOutcome,
    pub critical_orbit_verdict: crate::dynamics::OrbitVerdict,
    pub root_of_unity_ok: bool,
    pub levels: Vec<TowerLevel>,
}

/// Audit the tower of a quadratic map over Q up to n_max: stability first,
/// then per-level maximality from the sufficient criterion, with the exact
/// oracle resolving level 2 either way.
pub fn tower_report(f: &UnicriticalMap, n_max: usize, budget: &FactorBudget) -> Result<TowerReport> {
    if f.degree != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: f.degree });
    }
    let stability = stability_test(f, n_max.max(2))?;
    if stability == StabilityOutcome::Reducible {
        return Err(Error::ReducibleBase);
    }
    let critical_orbit_verdict = crate::dynamics::detect_periodicity(
        f,
        &f.gamma.clone(),
        crate::dynamics::DEFAULT_PERIODICITY_STEPS,
    );
    let mut levels = Vec::new();
    for n in 2..=n_max {
        let disc_value = if f.iterate_poly(n as u32).is_ok() {
            Some(disc_iterate(f, n as u32)?)
        } else {
            None
        };
        let verdict = match maximality_sufficient(f, n, budget)? {
            SufficientVerdict::Maximal(p) => LevelVerdict::Maximal { witness: p },
            SufficientVerdict::Inconclusive { budget_exhausted, reason } => {
                if n == 2 && f.field.is_rational() {
                    match maximality_level2_oracle(f, budget)? {
                        Level2Verdict::Maximal => LevelVerdict::MaximalByOracle,
                        Level2Verdict::NotMaximal(w) => LevelVerdict::NotMaximal { square_root: w },
                    }
                } else {
                    LevelVerdict::Inconclusive { budget_exhausted, reason }
                }
            }
        };
        levels.push(TowerLevel { n, verdict, disc_value });
    }
    Ok(TowerReport {
        map: f.clone(),
        stability,
        critical_orbit_verdict,
        root_of_unity_ok: has_primitive_dth_root(&f.field, f.degree),
        levels,
    })
}

// ---- the conjugated family -------------------------------------------------------

/// Exact per-member verification record for the non-maximality family.
#[derive(Debug, Clone)]
pub struct FamilyCheck {
    pub i: usize,
    pub map: UnicriticalMap,
    /// f_i(gamma) = -f_i^i(gamma).
    pub conjugate_identity: bool,
    /// v_2(f_i^n(gamma)) = 1 for n <= 12.
    pub two_adic_ok: bool,
    /// (f^i(0) - 2)/2 = 2 mod 8 for the base map f = x^2 + 2.
    pub congruence_ok: bool,
    /// -f_i(gamma) = Disc(f_i)/4, and it is a square in K_1.
    pub disc_identity_ok: bool,
    pub square_in_k1: Option<QuadExtElement>,
    /// Stability check through level 12.
    pub stable_up_to_12: bool,
    /// Level-2 oracle cross-check (i = 2 only).
    pub oracle_not_maximal: Option<bool>,
}

impl FamilyCheck {
    pub fn all_identities_hold(&self) -> bool {
        self.conjugate_identity
            && self.two_adic_ok
            && self.congruence_ok
            && self.disc_identity_ok
            && self.square_in_k1.is_some()
            && self.stable_up_to_12
    }
}

/// Verify the family identities for i = 2..i_max.
pub fn verify_example_family(i_max: usize, budget: &FactorBudget) -> Result<Vec<FamilyCheck>> {
    if i_max < 2 {
        return Err(Error::Precondition("the family starts at i = 2".into()));
    }
    let field = NumberField::rational();
    let base = UnicriticalMap::monic_rational(2, 2);
    let two = BigInt::from(2);
    let eight = BigInt::from(8);
    let mut out = Vec::new();
    for i in 2..=i_max {
        let fi = example_family(i)?;
        let steps = 12.max(i);
        let orbit = iterate(&fi, &fi.gamma.clone(), steps);
        if orbit.overflow_at.is_some() {
            return Err(Error::OperandOverflow { level: orbit.len() });
        }
        let conjugate_identity = orbit.values[1] == field.neg(&orbit.values[i]);
        let two_adic_ok = (1..=12).all(|n| {
            let v = orbit.values[n].rational_part();
            let int = v.to_integer();
            &int % &two == BigInt::zero() && (&int / &two) % &two != BigInt::zero()
        });
        let base_orbit = iterate(&base, &FieldElement::zero(), i);
        let fi0 = base_orbit.values[i].rational_part().to_integer();
        let congruence_ok = ((&fi0 - &two) / &two - &two) % &eight == BigInt::zero();
        let disc = disc_iterate(&fi, 1)?;
        let minus_f_gamma = field.neg(&orbit.values[1]);
        let quarter_disc = field
            .div(&disc, &FieldElement::from_int(4))
            .expect("4 is nonzero");
        let disc_identity_ok = minus_f_gamma == quarter_disc;
        let core = squarefree_core(&disc.rational_part().clone(), budget)?;
        let square_in_k1 =
            sqrt_in_quadratic(&BigRational::from(core), minus_f_gamma.rational_part());
        if let Some(w) = &square_in_k1 {
            assert!(w.square().is_rational(minus_f_gamma.rational_part()));
        }
        let stable_up_to_12 = stability_test(&fi, 12)? == StabilityOutcome::StableUpTo(12);
        let oracle_not_maximal = if i == 2 {
            Some(matches!(
                maximality_level2_oracle(&fi, budget)?,
                Level2Verdict::NotMaximal(_)
            ))
        } else {
            None
        };
        out.push(FamilyCheck {
            i,
            map: fi,
            conjugate_identity,
            two_adic_ok,
            congruence_ok,
            disc_identity_ok,
            square_in_k1,
            stable_up_to_12,
            oracle_not_maximal,
        });
    }
    Ok(out)
}
