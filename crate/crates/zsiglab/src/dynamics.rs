//! Unicritical maps f(x) = (x - gamma)^d + c, exact orbit iteration,
//! conjugation by shifts, periodicity detection with escape certificates,
//! and the two constructive families used across the experiment suite.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::heights::weil_height;
use crate::numfield::{FieldElement, NumberField};
use crate::poly::KPoly;
use crate::util::{log_plus, DEFAULT_DIGIT_CAP};

/// Steps tried by default before giving up on periodicity detection.
pub const DEFAULT_PERIODICITY_STEPS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnicriticalMap {
    pub field: NumberField,
    pub degree: u32,
    pub gamma: FieldElement,
    pub c: FieldElement,
}

impl UnicriticalMap {
    pub fn new(field: NumberField, degree: u32, gamma: FieldElement, c: FieldElement) -> Result<Self> {
        if degree < 2 {
            return Err(Error::Precondition("map degree must be at least 2".into()));
        }
        if field.is_rational() && (!gamma.omega_part().is_zero() || !c.omega_part().is_zero()) {
            return Err(Error::Parse("omega coordinates over Q".into()));
        }
        Ok(UnicriticalMap { field, degree, gamma, c })
    }

    /// x^d + c over Q, the classic normal form.
    pub fn monic_rational(degree: u32, c: i64) -> Self {
        UnicriticalMap::new(
            NumberField::rational(),
            degree,
            FieldElement::zero(),
            FieldElement::from_int(c),
        )
        .expect("degree checked by caller")
    }

    /// c - gamma, the conjugacy-normalized coefficient.
    pub fn shift(&self) -> FieldElement {
        self.field.sub(&self.c, &self.gamma)
    }

    /// Is c - gamma integral?
    pub fn integral_shift(&self) -> bool {
        self.field.is_integral(&self.shift())
    }

    /// Membership in P_d: c - gamma integral and c nonzero.
    pub fn in_pd(&self) -> bool {
        self.integral_shift() && !self.c.is_zero()
    }

    /// f(x) = (x - gamma)^d + c.
    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        let t = self.field.sub(x, &self.gamma);
        self.field.add(&self.field.pow(&t, self.degree), &self.c)
    }

    /// The conjugate f~ = x^d + (c - gamma) with critical point at the origin;
    /// satisfies f^n(alpha) = f~^n(alpha - gamma) + gamma.
    pub fn monic_conjugate(&self) -> UnicriticalMap {
        UnicriticalMap {
            field: self.field,
            degree: self.degree,
            gamma: FieldElement::zero(),
            c: self.shift(),
        }
    }

    pub fn poly(&self) -> KPoly {
        let x_minus_gamma = KPoly::new(vec![self.field.neg(&self.gamma), FieldElement::one()]);
        x_minus_gamma
            .pow(&self.field, self.degree)
            .add(&self.field, &KPoly::constant(self.c.clone()))
    }

    /// Symbolic expansion of f^i; the coefficient count is d^i + 1, so the
    /// cap keeps i <= 4 for d = 2 and i <= 3 for d = 3.
    pub fn iterate_poly(&self, i: u32) -> Result<KPoly> {
        let coeff_count = (self.degree as u64).checked_pow(i).map(|n| n + 1);
        let allowed = match self.degree {
            2 => i <= 4,
            3 => i <= 3,
            _ => coeff_count.map_or(false, |n| n <= 100),
        };
        if !allowed {
            return Err(Error::ExpansionCap { degree: self.degree, iterate: i });
        }
        let f = self.poly();
        let mut acc = KPoly::identity();
        for _ in 0..i {
            acc = f.compose(&self.field, &acc);
        }
        Ok(acc)
    }

    /// Parse the map text form "d;gamma;c".
    pub fn parse(field: NumberField, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(';').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("map spec {s:?}, expected \"d;gamma;c\"")));
        }
        let degree: u32 = parts[0]
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree {:?}", parts[0])))?;
        let gamma = field.parse_element(parts[1])?;
        let c = field.parse_element(parts[2])?;
        UnicriticalMap::new(field, degree, gamma, c)
    }
}

impl fmt::Display for UnicriticalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{}", self.degree, self.gamma, self.c)
    }
}

/// Exact forward orbit f^0(alpha) .. f^n(alpha), possibly truncated by the
/// digit cap (doubling-per-step growth must fail predictably, not hang).
#[derive(Debug, Clone)]
pub struct OrbitTable {
    pub map: UnicriticalMap,
    pub start: FieldElement,
    pub values: Vec<FieldElement>,
    pub overflow_at: Option<usize>,
}

impl OrbitTable {
    /// f^n(alpha), if stored.
    pub fn value(&self, n: usize) -> Option<&FieldElement> {
        self.values.get(n)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Iterate up to n_max steps under the default digit cap.
pub fn iterate(f: &UnicriticalMap, alpha: &FieldElement, n_max: usize) -> OrbitTable {
    iterate_with_cap(f, alpha, n_max, DEFAULT_DIGIT_CAP)
}

pub fn iterate_with_cap(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    n_max: usize,
    digit_cap: usize,
) -> OrbitTable {
    let bit_cap = (digit_cap as f64 / std::f64::consts::LOG10_2) as u64;
    let mut values = vec![alpha.clone()];
    let mut overflow_at = None;
    for i in 0..n_max {
        let next = f.apply(&values[i]);
        if next.coord_bits() > bit_cap {
            overflow_at = Some(i + 1);
            break;
        }
        values.push(next);
    }
    OrbitTable { map: f.clone(), start: alpha.clone(), values, overflow_at }
}

/// nu(f) = h(gamma) / max{1, h(c - gamma)}, with log^+ nu alongside.
pub fn nu(f: &UnicriticalMap) -> (f64, f64) {
    let h_gamma = weil_height(&f.field, &f.gamma).value;
    let h_shift = weil_height(&f.field, &f.shift()).value;
    let nu = h_gamma / h_shift.max(1.0);
    (nu, log_plus(nu))
}

/// g(x) = f(x + t) - t, the conjugate by the translation M(x) = x - t:
/// gamma and c both drop by t, and g^n(alpha - t) = f^n(alpha) - t exactly.
pub fn conjugate_by_shift(f: &UnicriticalMap, t: &FieldElement) -> UnicriticalMap {
    UnicriticalMap {
        field: f.field,
        degree: f.degree,
        gamma: f.field.sub(&f.gamma, t),
        c: f.field.sub(&f.c, t),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitVerdict {
    /// Exact value repetition: f^(preperiod + period)(alpha) = f^preperiod(alpha).
    Preperiodic { preperiod: usize, period: usize },
    /// Certified infinite orbit; escape_level is the first k at which the
    /// height criterion fired.
    Wandering { escape_level: usize },
    /// Neither a repeat nor an escape certificate within the step budget.
    Unknown { steps_tried: usize },
}

impl OrbitVerdict {
    pub fn is_wandering(&self) -> bool {
        matches!(self, OrbitVerdict::Wandering { .. })
    }
}

impl fmt::Display for OrbitVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitVerdict::Preperiodic { preperiod, period } => {
                write!(f, "preperiodic({preperiod},{period})")
            }
            OrbitVerdict::Wandering { escape_level } => write!(f, "wandering(escape={escape_level})"),
            OrbitVerdict::Unknown { steps_tried } => write!(f, "unknown({steps_tried})"),
        }
    }
}

/// Decide the orbit type of alpha under f.
///
/// A repeat is detected exactly. Wandering is certified as soon as some
/// iterate beta = f^k(alpha) satisfies
///   h(beta - gamma) > 2/(d-1) max{1, h(c-gamma)} + h(gamma) + log 2 + 1:
/// the orbit lower bound then forces h(f^n(beta)) to grow without bound, so no
/// repeat is possible. The +1 absorbs the shift terms and float slack; the
/// certificate must be unconditionally sound. Unknown is a first-class
/// verdict and is never coerced.
pub fn detect_periodicity(
    f: &UnicriticalMap,
    alpha: &FieldElement,
    max_steps: usize,
) -> OrbitVerdict {
    let k = &f.field;
    let d = f.degree as f64;
    let h_shift = weil_height(k, &f.shift()).value;
    let h_gamma = weil_height(k, &f.gamma).value;
    let threshold = 2.0 / (d - 1.0) * h_shift.max(1.0) + h_gamma + std::f64::consts::LN_2 + 1.0;

    let mut seen: HashMap<FieldElement, usize> = HashMap::new();
    let mut current = alpha.clone();
    let bit_cap = (DEFAULT_DIGIT_CAP as f64 / std::f64::consts::LOG10_2) as u64;
    for step in 0..=max_steps {
        if let Some(&first) = seen.get(&current) {
            return OrbitVerdict::Preperiodic { preperiod: first, period: step - first };
        }
        let h_rel = weil_height(k, &k.sub(&current, &f.gamma)).value;
        if h_rel > threshold {
            return OrbitVerdict::Wandering { escape_level: step };
        }
        seen.insert(current.clone(), step);
        let next = f.apply(&current);
        if next.coord_bits() > bit_cap {
            return OrbitVerdict::Unknown { steps_tried: step };
        }
        current = next;
    }
    OrbitVerdict::Unknown { steps_tried: max_steps }
}

/// The lower-bound witness family: given a non-PCF base map f~ = x^d + base,
/// set gamma = -f~^N(0) and c = base + gamma. The returned map satisfies
/// f^N(gamma) = 0 exactly, so N lies in the Zsigmondy set of its critical
/// orbit.
pub fn taunec_family(
    field: NumberField,
    degree: u32,
    base: &FieldElement,
    n: usize,
) -> Result<UnicriticalMap> {
    if !field.is_integral(base) {
        return Err(Error::Precondition("family base must be integral".into()));
    }
    let tilde = UnicriticalMap::new(field, degree, FieldElement::zero(), base.clone())?;
    let verdict = detect_periodicity(&tilde, &FieldElement::zero(), DEFAULT_PERIODICITY_STEPS);
    if !verdict.is_wandering() {
        return Err(Error::PCFBase);
    }
    let orbit = iterate(&tilde, &FieldElement::zero(), n);
    let value = orbit.value(n).ok_or(Error::OperandOverflow { level: orbit.len() })?;
    let gamma = field.neg(value);
    let c = field.add(base, &gamma);
    UnicriticalMap::new(field, degree, gamma, c)
}

/// The non-maximality witness family over Q: conjugates of f = x^2 + 2 by
/// t_i = 2 + (f^i(0) - 2)/2, so that f_i(gamma) = -f_i^i(gamma).
pub fn example_family(i: usize) -> Result<UnicriticalMap> {
    if i < 2 {
        return Err(Error::Precondition("family index starts at 2".into()));
    }
    let f = UnicriticalMap::monic_rational(2, 2);
    let orbit = iterate(&f, &FieldElement::zero(), i);
    let fi0 = orbit.value(i).ok_or(Error::OperandOverflow { level: orbit.len() })?;
    let field = f.field;
    let half = FieldElement::from_ratio(1, 2);
    let t = field.add(
        &FieldElement::from_int(2),
        &field.mul(&field.sub(fi0, &FieldElement::from_int(2)), &half),
    );
    Ok(conjugate_by_shift(&f, &t))
}
