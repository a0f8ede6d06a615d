//! S-unit decompositions f^n(alpha) = u * d * y^l and the degree-d^3 witness
//! curves whose rational points encode low orbit levels.
//!
//! Class number one collapses the general construction: the S-exponent bound
//! v_p(d) < h_K forces v_p(d) = 0 on S, so all S-prime content is pushed into
//! the unit factor u. S itself is the minimal admissible set here, namely the
//! archimedean places plus the denominator primes of alpha, gamma, and c.

use num_bigint::BigUint;

use crate::dynamics::{iterate, UnicriticalMap};
use crate::error::{Error, Result};
use crate::heights::{check_gt, check_le, weil_height, CheckOutcome};
use crate::numfield::factor::factor_element;
use crate::numfield::{FieldElement, NumberField, PrimeOfK};
use crate::poly::{discriminant, KPoly};
use crate::primdiv::{classify_support, FactorBudget};

/// f^n(alpha) = u * d_part * y^l with u an S-unit, d_part in O_K with
/// exponents in [0, l-1] off S and 0 on S, and y in O_{K,S}.
#[derive(Debug, Clone)]
pub struct SUnitDecomposition {
    pub u: FieldElement,
    pub d_part: FieldElement,
    pub y: FieldElement,
    pub l: u32,
    /// Finite part of S (archimedean places implicit).
    pub s_primes: Vec<PrimeOfK>,
    pub value: FieldElement,
}

impl SUnitDecomposition {
    /// u * d_part * y^l, exactly.
    pub fn reconstruct(&self, field: &NumberField) -> FieldElement {
        field.mul(&field.mul(&self.u, &self.d_part), &field.pow(&self.y, self.l))
    }
}

fn denominator_primes(
    field: &NumberField,
    xs: &[&FieldElement],
    budget: &FactorBudget,
) -> Result<Vec<PrimeOfK>> {
    let mut out = Vec::new();
    for x in xs {
        if x.is_zero() {
            continue;
        }
        let table = factor_element(field, x, budget)?;
        for (p, e) in table.entries() {
            if e < 0 {
                out.push(p.clone());
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The minimal finite S for (f, alpha): denominator primes of alpha, gamma, c.
pub fn minimal_s(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    budget: &FactorBudget,
) -> Result<Vec<PrimeOfK>> {
    denominator_primes(&f.field, &[alpha, &f.gamma, &f.c], budget)
}

/// Decompose f^n(alpha) = u * d_part * y^l.
pub fn decompose(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    n: usize,
    l: u32,
    budget: &FactorBudget,
) -> Result<SUnitDecomposition> {
    if l < 2 {
        return Err(Error::Precondition("decomposition exponent l must be >= 2".into()));
    }
    let field = &f.field;
    let orbit = iterate(f, alpha, n);
    let value = orbit
        .value(n)
        .ok_or(Error::OperandOverflow { level: orbit.len() })?
        .clone();
    if value.is_zero() {
        return Err(Error::ZeroIterate { level: n });
    }
    let s_primes = minimal_s(f, alpha, budget)?;
    let table = factor_element(field, &value, budget)?;
    let mut d_part = FieldElement::one();
    let mut y = FieldElement::one();
    for (p, e) in table.entries() {
        if s_primes.contains(p) {
            continue; // S-prime powers stay in u
        }
        debug_assert!(e >= 0, "off-S valuations of an S-integer are nonnegative");
        let e = e as u32;
        let (q, r) = (e / l, e % l);
        if r > 0 {
            d_part = field.mul(&d_part, &field.pow(p.generator(), r));
        }
        if q > 0 {
            y = field.mul(&y, &field.pow(p.generator(), q));
        }
    }
    let u = field
        .div(&value, &field.mul(&d_part, &field.pow(&y, l)))
        .expect("d y^l is nonzero");
    let dec = SUnitDecomposition { u, d_part, y, l, s_primes, value };
    debug_assert_eq!(dec.reconstruct(field), dec.value);
    Ok(dec)
}

/// h(u_n) <= C (l-1)^2 (h(alpha) + h(gamma) + h(c)), for a fitted C.
pub fn check_unit_height_bound(
    dec: &SUnitDecomposition,
    f: &UnicriticalMap,
    alpha: &FieldElement,
    c_fit: f64,
    slack: f64,
) -> CheckOutcome {
    let field = &f.field;
    let h_u = weil_height(field, &dec.u).value;
    let base = weil_height(field, alpha).value
        + weil_height(field, &f.gamma).value
        + weil_height(field, &f.c).value;
    let rhs = c_fit * ((dec.l - 1) as f64).powi(2) * base;
    check_le(h_u, rhs, slack)
}

/// Y^2 = F(X) with F = u_n d_n f^3(X), carrying the K-rational point
/// (f^{n-3}(alpha), u_n d_n y_n).
#[derive(Debug, Clone)]
pub struct WitnessCurve {
    pub poly: KPoly,
    pub point: (FieldElement, FieldElement),
    pub disc: FieldElement,
}

impl WitnessCurve {
    pub fn on_curve(&self, field: &NumberField) -> bool {
        let (x, y) = &self.point;
        field.mul(y, y) == self.poly.eval(field, x)
    }
}

/// Build the witness curve at level n (quadratic maps, n >= 3).
pub fn heightunif_witness(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    n: usize,
    budget: &FactorBudget,
) -> Result<WitnessCurve> {
    if f.degree != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: f.degree });
    }
    if n < 3 {
        return Err(Error::Precondition("witness curves need n >= 3".into()));
    }
    let field = &f.field;
    let dec = decompose(f, alpha, n, 2, budget)?;
    let ud = field.mul(&dec.u, &dec.d_part);
    let f3 = f.iterate_poly(3)?;
    let poly = f3.scale(field, &ud);
    let orbit = iterate(f, alpha, n - 3);
    let x = orbit
        .value(n - 3)
        .ok_or(Error::OperandOverflow { level: orbit.len() })?
        .clone();
    let y = field.mul(&ud, &dec.y);
    let disc = discriminant(field, &poly)?;
    if disc.is_zero() {
        return Err(Error::DegenerateDiscriminant);
    }
    let curve = WitnessCurve { poly, point: (x, y), disc };
    debug_assert!(curve.on_curve(field));
    Ok(curve)
}

/// Y_1 mass of f^n(alpha) vs epsilon * h(f^n(alpha)).
pub fn check_y1_mass(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    n: usize,
    epsilon: f64,
    budget: &FactorBudget,
    slack: f64,
) -> Result<CheckOutcome> {
    if f.degree != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: f.degree });
    }
    let orbit = iterate(f, alpha, n);
    let value = orbit
        .value(n)
        .ok_or(Error::OperandOverflow { level: orbit.len() })?;
    if value.is_zero() {
        return Err(Error::ZeroIterate { level: n });
    }
    let classification = classify_support(&orbit, n, budget)?;
    let h_n = weil_height(&f.field, value).value;
    Ok(check_gt(classification.mass1, epsilon * h_n, slack))
}

/// Norm of the unfactored part tracked by callers that want digits on errors.
pub fn opaque_digits(norm: &Option<BigUint>) -> usize {
    norm.as_ref()
        .map(|c| crate::util::decimal_digits(&num_bigint::BigInt::from(c.clone())))
        .unwrap_or(0)
}
