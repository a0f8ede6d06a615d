//! Exact arithmetic over K = Q or Q(sqrt(-D)) for the nine class-number-one
//! imaginary quadratic fields, D in {1, 2, 3, 7, 11, 19, 43, 67, 163}.
//!
//! Elements are stored as a + b*omega on the integral basis {1, omega}, where
//! omega = sqrt(-D) when -D is not 1 mod 4 and omega = (1 + sqrt(-D))/2
//! otherwise. Every field in the whitelist has class number one, so element
//! factorization into prime elements of O_K is well defined up to units; the
//! constructor rejects anything else.

pub mod factor;

pub use factor::{
    canonical_associate, factor_element, gcd_elements, numerator_content, primes_above, valuation,
    PrimeOfK, Splitting, ValuationTable,
};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::util::{ln_ratio_abs, rational_sqrt};

/// Discriminant parameters D with h(Q(sqrt(-D))) = 1.
pub const CLASS_NUMBER_ONE_D: [u32; 9] = [1, 2, 3, 7, 11, 19, 43, 67, 163];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rational,
    /// Q(sqrt(-D)) for a whitelisted D.
    ImagQuadratic(u32),
}

/// A base field: Q or one of the nine class-number-one imaginary quadratic fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NumberField {
    kind: FieldKind,
}

/// An exact element a + b*omega of K. `b` is identically zero over Q.
///
/// Rationals are kept in lowest terms with positive denominator by
/// `BigRational`'s own normalization, so structural equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub(crate) a: BigRational,
    pub(crate) b: BigRational,
}

impl NumberField {
    pub fn rational() -> Self {
        NumberField { kind: FieldKind::Rational }
    }

    /// Construct Q(sqrt(-D)). Fails loudly outside the class-number-one whitelist:
    /// unique factorization of elements is load-bearing everywhere downstream.
    pub fn imag_quadratic(d: u32) -> Result<Self> {
        if CLASS_NUMBER_ONE_D.contains(&d) {
            Ok(NumberField { kind: FieldKind::ImagQuadratic(d) })
        } else {
            Err(Error::UnsupportedField {
                reason: format!("Q(sqrt(-{d})) does not have class number one"),
            })
        }
    }

    /// Gaussian rationals Q(i).
    pub fn gaussian() -> Self {
        NumberField::imag_quadratic(1).expect("whitelisted")
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// [K : Q].
    pub fn degree(&self) -> u32 {
        match self.kind {
            FieldKind::Rational => 1,
            FieldKind::ImagQuadratic(_) => 2,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.kind == FieldKind::Rational
    }

    pub fn quadratic_d(&self) -> Option<u32> {
        match self.kind {
            FieldKind::Rational => None,
            FieldKind::ImagQuadratic(d) => Some(d),
        }
    }

    /// True when omega = (1 + sqrt(-D))/2, i.e. -D = 1 mod 4.
    pub fn half_basis(&self) -> bool {
        match self.kind {
            FieldKind::Rational => false,
            FieldKind::ImagQuadratic(d) => d % 4 == 3,
        }
    }

    /// omega^2 = m0 + m1*omega with integer m0, m1.
    pub(crate) fn omega_square(&self) -> (BigInt, BigInt) {
        match self.kind {
            FieldKind::Rational => (BigInt::zero(), BigInt::zero()),
            FieldKind::ImagQuadratic(d) => {
                if self.half_basis() {
                    (-BigInt::from((d + 1) / 4), BigInt::one())
                } else {
                    (-BigInt::from(d), BigInt::zero())
                }
            }
        }
    }

    /// Field discriminant: 1 for Q, -D or -4D for the quadratic fields.
    pub fn discriminant(&self) -> BigInt {
        match self.kind {
            FieldKind::Rational => BigInt::one(),
            FieldKind::ImagQuadratic(d) => {
                if self.half_basis() {
                    -BigInt::from(d)
                } else {
                    BigInt::from(-4) * BigInt::from(d)
                }
            }
        }
    }

    /// The unit group of O_K (finite: roots of unity only).
    pub fn units(&self) -> Vec<FieldElement> {
        let one = FieldElement::one();
        let minus_one = self.neg(&one);
        match self.kind {
            FieldKind::Rational => vec![one, minus_one],
            FieldKind::ImagQuadratic(1) => {
                let i = FieldElement::omega();
                let minus_i = self.neg(&i);
                vec![one, i, minus_one, minus_i]
            }
            FieldKind::ImagQuadratic(3) => {
                // omega is a primitive sixth root of unity here
                let w = FieldElement::omega();
                let mut units = vec![one];
                let mut u = w;
                for _ in 0..5 {
                    units.push(u.clone());
                    u = self.mul(&u, &FieldElement::omega());
                }
                units
            }
            FieldKind::ImagQuadratic(_) => vec![one, minus_one],
        }
    }

    // ---- arithmetic -------------------------------------------------------

    fn check(&self, x: &FieldElement) {
        if self.is_rational() {
            debug_assert!(x.b.is_zero(), "rational field element with omega part");
        }
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        self.check(x);
        self.check(y);
        FieldElement { a: &x.a + &y.a, b: &x.b + &y.b }
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        FieldElement { a: &x.a - &y.a, b: &x.b - &y.b }
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        FieldElement { a: -&x.a, b: -&x.b }
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        self.check(x);
        self.check(y);
        if self.is_rational() {
            return FieldElement { a: &x.a * &y.a, b: BigRational::zero() };
        }
        let (m0, m1) = self.omega_square();
        let m0 = BigRational::from(m0);
        let m1 = BigRational::from(m1);
        let cross = &x.b * &y.b;
        FieldElement {
            a: &x.a * &y.a + &cross * &m0,
            b: &x.a * &y.b + &x.b * &y.a + cross * m1,
        }
    }

    /// Complex conjugate (the nontrivial automorphism; identity on Q).
    pub fn conj(&self, x: &FieldElement) -> FieldElement {
        if self.half_basis() {
            // conj(omega) = 1 - omega
            FieldElement { a: &x.a + &x.b, b: -&x.b }
        } else {
            FieldElement { a: x.a.clone(), b: -&x.b }
        }
    }

    /// Field norm N_{K/Q}(x) as a rational (x itself over Q).
    pub fn norm(&self, x: &FieldElement) -> BigRational {
        if self.is_rational() {
            return x.a.clone();
        }
        let c = self.conj(x);
        let n = self.mul(x, &c);
        debug_assert!(n.b.is_zero());
        n.a
    }

    /// Trace x + conj(x).
    pub fn trace(&self, x: &FieldElement) -> BigRational {
        if self.is_rational() {
            return &x.a + &x.a;
        }
        let t = self.add(x, &self.conj(x));
        debug_assert!(t.b.is_zero());
        t.a
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        if self.is_rational() {
            return Ok(FieldElement { a: x.a.recip(), b: BigRational::zero() });
        }
        let n = self.norm(x);
        let c = self.conj(x);
        Ok(FieldElement { a: &c.a / &n, b: &c.b / &n })
    }

    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &FieldElement, e: u32) -> FieldElement {
        let mut acc = FieldElement::one();
        let mut base = x.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Membership in O_K: integer coordinates on the integral basis.
    pub fn is_integral(&self, x: &FieldElement) -> bool {
        x.a.is_integer() && x.b.is_integer()
    }

    /// Is x a unit of O_K?
    pub fn is_unit(&self, x: &FieldElement) -> bool {
        self.is_integral(x) && self.norm(x).abs().is_one()
    }

    /// Coordinates of x as A + B*sqrt(-D) (A = a + b/2, B = b/2 on the half basis).
    pub fn sqrt_d_coords(&self, x: &FieldElement) -> (BigRational, BigRational) {
        if self.half_basis() {
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            (&x.a + &x.b * &half, &x.b * half)
        } else {
            (x.a.clone(), x.b.clone())
        }
    }

    /// Exact square test: does some w in K satisfy w^2 = x?
    pub fn is_square(&self, x: &FieldElement) -> bool {
        self.square_root(x).is_some()
    }

    /// Exact square root in K, if one exists.
    pub fn square_root(&self, x: &FieldElement) -> Option<FieldElement> {
        if x.is_zero() {
            return Some(FieldElement::zero());
        }
        if self.is_rational() {
            return rational_sqrt(&x.a).map(FieldElement::from_rational);
        }
        let d = BigRational::from(BigInt::from(self.quadratic_d().unwrap()));
        let (aa, bb) = self.sqrt_d_coords(x);
        let from_sqrt_coords = |p: BigRational, q: BigRational| -> FieldElement {
            // p + q*sqrt(-D) back to the integral basis
            if self.half_basis() {
                let two_q = &q + &q;
                FieldElement { a: p - &q, b: two_q }
            } else {
                FieldElement { a: p, b: q }
            }
        };
        if bb.is_zero() {
            // x rational: square iff x or x/(-D) is a rational square
            if let Some(r) = rational_sqrt(&aa) {
                return Some(from_sqrt_coords(r, BigRational::zero()));
            }
            let quot = -&aa / &d;
            if let Some(r) = rational_sqrt(&quot) {
                return Some(from_sqrt_coords(BigRational::zero(), r));
            }
            return None;
        }
        // w = p + q*sqrt(-D): p^2 - D q^2 ... with -D: p^2 - d q^2 where q^2 term
        // is negative: solve p^2 = (aa + s)/2, s = sqrt(N(x)), q = bb/(2p).
        let norm = &aa * &aa + &d * &bb * &bb;
        let s = rational_sqrt(&norm)?;
        for sign in [1i32, -1] {
            let cand = (&aa + BigRational::from(BigInt::from(sign)) * &s)
                / BigRational::from(BigInt::from(2));
            if let Some(p) = rational_sqrt(&cand) {
                if !p.is_zero() {
                    let q = &bb / (&p + &p);
                    let w = from_sqrt_coords(p, q);
                    if self.mul(&w, &w) == *x {
                        return Some(w);
                    }
                }
            }
        }
        None
    }

    // ---- embeddings -------------------------------------------------------

    /// One entry ln|sigma(x)| per complex embedding sigma: K -> C.
    /// Conjugate embeddings are listed separately (two equal entries for
    /// imaginary quadratic K).
    pub fn archimedean_logs(&self, x: &FieldElement) -> Result<Vec<f64>> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        match self.kind {
            FieldKind::Rational => Ok(vec![ln_ratio_abs(&x.a)]),
            FieldKind::ImagQuadratic(_) => {
                // |sigma(x)|^2 = N(x) > 0 at both embeddings
                let n = self.norm(x);
                let half_log = ln_ratio_abs(&n) / 2.0;
                Ok(vec![half_log, half_log])
            }
        }
    }

    // ---- text form --------------------------------------------------------

    /// Parse the lossless element text form: "a/b" over Q, "a/b + c/d*w" over
    /// quadratic fields ("i" accepted as a synonym for w over Q(i)).
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        parse_element_str(self, s)
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::ImagQuadratic(1) => write!(f, "Qi"),
            FieldKind::ImagQuadratic(d) => write!(f, "Q(-{d})"),
        }
    }
}

impl std::str::FromStr for NumberField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" {
            return Ok(NumberField::rational());
        }
        if t == "Qi" {
            return Ok(NumberField::gaussian());
        }
        if let Some(rest) = t.strip_prefix("Q(").and_then(|r| r.strip_suffix(')')) {
            let d: i64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad field spec {s:?}")))?;
            if d >= 0 {
                return Err(Error::UnsupportedField {
                    reason: "only imaginary quadratic fields are supported".into(),
                });
            }
            return NumberField::imag_quadratic((-d) as u32);
        }
        Err(Error::Parse(format!("bad field spec {s:?}, expected Q, Qi, or Q(-D)")))
    }
}

impl FieldElement {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        FieldElement { a, b }
    }

    pub fn zero() -> Self {
        FieldElement { a: BigRational::zero(), b: BigRational::zero() }
    }

    pub fn one() -> Self {
        FieldElement { a: BigRational::one(), b: BigRational::zero() }
    }

    /// The ring generator omega itself.
    pub fn omega() -> Self {
        FieldElement { a: BigRational::zero(), b: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        FieldElement { a: BigRational::from(BigInt::from(n)), b: BigRational::zero() }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        FieldElement { a: BigRational::from(n), b: BigRational::zero() }
    }

    pub fn from_rational(q: BigRational) -> Self {
        FieldElement { a: q, b: BigRational::zero() }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        FieldElement {
            a: BigRational::new(BigInt::from(num), BigInt::from(den)),
            b: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn omega_part(&self) -> &BigRational {
        &self.b
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Largest bit size among coordinate numerators and denominators.
    pub fn coord_bits(&self) -> u64 {
        [self.a.numer(), self.a.denom(), self.b.numer(), self.b.denom()]
            .iter()
            .map(|n| n.bits())
            .max()
            .unwrap()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let b_abs = self.b.abs();
        let sign = if self.b.is_negative() { '-' } else { '+' };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{}*w", b_abs)
            } else {
                write!(f, "{}*w", b_abs)
            }
        } else {
            write!(f, "{} {} {}*w", self.a, sign, b_abs)
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || Error::Parse(format!("bad rational {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.parse().map_err(|_| err())?;
        let d: BigInt = den.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| err())?;
        Ok(BigRational::from(n))
    }
}

fn parse_element_str(field: &NumberField, input: &str) -> Result<FieldElement> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    // split into at most two signed terms at top level
    let bytes = compact.as_bytes();
    let mut split_at = None;
    for (i, &ch) in bytes.iter().enumerate().skip(1) {
        if (ch == b'+' || ch == b'-') && bytes[i - 1] != b'+' && bytes[i - 1] != b'-' && bytes[i - 1] != b'/' && bytes[i - 1] != b'*' {
            split_at = Some(i);
            break;
        }
    }
    let (first, second) = match split_at {
        Some(i) => (&compact[..i], Some(&compact[i..])),
        None => (&compact[..], None),
    };

    let omega_name_ok = |t: &str| t == "w" || (t == "i" && field.kind() == FieldKind::ImagQuadratic(1));

    // a term is either rational, or [rational *] omega
    let parse_term = |term: &str| -> Result<(BigRational, bool)> {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        let signed = |q: BigRational| if sign < 0 { -q } else { q };
        if omega_name_ok(body) {
            return Ok((signed(BigRational::one()), true));
        }
        if let Some(coeff) = body.strip_suffix("*w").or_else(|| {
            if field.kind() == FieldKind::ImagQuadratic(1) {
                body.strip_suffix("*i")
            } else {
                None
            }
        }) {
            return Ok((signed(parse_rational(coeff)?), true));
        }
        Ok((signed(parse_rational(body)?), false))
    };

    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    let mut seen_omega = false;
    let mut seen_rat = false;
    for term in std::iter::once(first).chain(second) {
        let (q, is_omega) = parse_term(term)?;
        if is_omega {
            if seen_omega {
                return Err(Error::Parse(format!("two omega terms in {input:?}")));
            }
            seen_omega = true;
            b = q;
        } else {
            if seen_rat {
                return Err(Error::Parse(format!("two rational terms in {input:?}")));
            }
            seen_rat = true;
            a = q;
        }
    }
    if !b.is_zero() && field.is_rational() {
        return Err(Error::Parse("omega term not allowed over Q".into()));
    }
    Ok(FieldElement { a, b })
}
