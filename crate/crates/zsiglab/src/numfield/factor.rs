//! Primes of O_K, valuations, and element factorization.
//!
//! Class number one means every ideal is principal, so a prime of K is stored
//! as a canonical generator. Generators for primes above a rational p are
//! found by Lagrange-Gauss reduction of the ideal lattice (p, omega - r),
//! where r is a root of omega's minimal polynomial mod p: in an imaginary
//! quadratic PID the shortest nonzero vector of an ideal of norm p has norm
//! exactly p, hence generates. The same reduction computes gcds of O_K
//! elements from a Hermite basis of the ideal (x, y), which works uniformly in
//! all nine fields whether or not a Euclidean division exists.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::primdiv::factorint::{factor_integer, FactorBudget};
use crate::util::{decimal_digits, div_round, ln_biguint};

use super::{FieldElement, NumberField};

/// A finite prime of O_K: canonical generator, the rational prime below it,
/// and the residue field size #k_p.
#[derive(Debug, Clone)]
pub struct PrimeOfK {
    field: NumberField,
    generator: FieldElement,
    rational_prime: BigUint,
    residue_size: BigUint,
}

impl PrimeOfK {
    pub fn field(&self) -> NumberField {
        self.field
    }

    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    pub fn rational_prime(&self) -> &BigUint {
        &self.rational_prime
    }

    pub fn residue_size(&self) -> &BigUint {
        &self.residue_size
    }

    /// N_p = log(#k_p) / [K:Q].
    pub fn weight(&self) -> f64 {
        ln_biguint(&self.residue_size) / self.field.degree() as f64
    }

    /// The prime of Q below a rational prime p (or the prime (p) itself over Q).
    pub fn rational(p: u64) -> Self {
        PrimeOfK::rational_big(BigUint::from(p))
    }

    pub fn rational_big(p: BigUint) -> Self {
        PrimeOfK {
            field: NumberField::rational(),
            generator: FieldElement::from_bigint(BigInt::from(p.clone())),
            rational_prime: p.clone(),
            residue_size: p,
        }
    }
}

// Two primes are equal iff their generators are associates; canonical form
// makes that plain coordinate equality.
impl PartialEq for PrimeOfK {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.generator == other.generator
    }
}

impl Eq for PrimeOfK {}

impl std::hash::Hash for PrimeOfK {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.generator.hash(state);
    }
}

impl Ord for PrimeOfK {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.rational_prime, &self.residue_size, &self.generator.a, &self.generator.b).cmp(&(
            &other.rational_prime,
            &other.residue_size,
            &other.generator.a,
            &other.generator.b,
        ))
    }
}

impl PartialOrd for PrimeOfK {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PrimeOfK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator)
    }
}

/// Finite-support factorization of a field element: unit * prod(pi^e).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationTable {
    entries: BTreeMap<PrimeOfK, i64>,
    unit: FieldElement,
}

impl ValuationTable {
    pub fn entries(&self) -> impl Iterator<Item = (&PrimeOfK, i64)> {
        self.entries.iter().map(|(p, &e)| (p, e))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn unit(&self) -> &FieldElement {
        &self.unit
    }

    pub fn get(&self, p: &PrimeOfK) -> i64 {
        self.entries.get(p).copied().unwrap_or(0)
    }

    /// unit * prod(pi^e), exactly.
    pub fn reconstruct(&self, field: &NumberField) -> FieldElement {
        let mut acc = self.unit.clone();
        for (p, &e) in &self.entries {
            let pw = field.pow(p.generator(), e.unsigned_abs() as u32);
            if e >= 0 {
                acc = field.mul(&acc, &pw);
            } else {
                acc = field.div(&acc, &pw).expect("prime generator is nonzero");
            }
        }
        acc
    }
}

// ---- canonical associates ----------------------------------------------------

fn sign_rank(q: &BigRational) -> u8 {
    if q.is_positive() {
        0
    } else if q.is_zero() {
        1
    } else {
        2
    }
}

/// The canonical associate of a nonzero element: unit multiple minimizing
/// (|a|, |b|, sign a, sign b) lexicographically, nonnegative coordinates
/// preferred. Deterministic table keys and report output depend on this.
pub fn canonical_associate(field: &NumberField, x: &FieldElement) -> FieldElement {
    assert!(!x.is_zero());
    field
        .units()
        .iter()
        .map(|u| field.mul(x, u))
        .min_by(|p, q| {
            (p.a.abs(), p.b.abs(), sign_rank(&p.a), sign_rank(&p.b)).cmp(&(
                q.a.abs(),
                q.b.abs(),
                sign_rank(&q.a),
                sign_rank(&q.b),
            ))
        })
        .expect("unit group is nonempty")
}

// ---- lattice machinery -------------------------------------------------------

/// Norm form on integer coordinates: N(a + b*omega).
fn norm_form(field: &NumberField, a: &BigInt, b: &BigInt) -> BigInt {
    match field.quadratic_d() {
        None => a * a,
        Some(d) => {
            if field.half_basis() {
                let q0 = BigInt::from((d + 1) / 4);
                a * a + a * b + b * b * q0
            } else {
                a * a + b * b * BigInt::from(d)
            }
        }
    }
}

type Vec2 = (BigInt, BigInt);

fn vec_sub(u: &Vec2, m: &BigInt, v: &Vec2) -> Vec2 {
    (&u.0 - m * &v.0, &u.1 - m * &v.1)
}

/// Lagrange-Gauss reduction: shortest nonzero vector of the rank-2 lattice
/// spanned by u, v under the (positive definite) norm form.
fn lagrange_shortest(field: &NumberField, mut u: Vec2, mut v: Vec2) -> Vec2 {
    loop {
        let qu = norm_form(field, &u.0, &u.1);
        let qv = norm_form(field, &v.0, &v.1);
        if qu < qv {
            std::mem::swap(&mut u, &mut v);
        }
        let qv = norm_form(field, &v.0, &v.1);
        // 2*B(u, v) = Q(u + v) - Q(u) - Q(v)
        let sum = (&u.0 + &v.0, &u.1 + &v.1);
        let b2 = norm_form(field, &sum.0, &sum.1)
            - norm_form(field, &u.0, &u.1)
            - &qv;
        let m = div_round(&b2, &(&qv + &qv));
        if m.is_zero() {
            return v;
        }
        let u_new = vec_sub(&u, &m, &v);
        if norm_form(field, &u_new.0, &u_new.1) >= qv {
            return v;
        }
        u = u_new;
    }
}

/// A 2-row Hermite-style basis of the Z-module spanned by the given rows.
fn module_basis(rows: Vec<Vec2>) -> (Vec2, Vec2) {
    let mut pivot: Option<Vec2> = None;
    let mut a_rows: Vec<BigInt> = Vec::new();
    for row in rows {
        if row.0.is_zero() && row.1.is_zero() {
            continue;
        }
        if row.1.is_zero() {
            a_rows.push(row.0);
            continue;
        }
        match pivot.take() {
            None => pivot = Some(row),
            Some(p) => {
                let e = p.1.extended_gcd(&row.1);
                let new_pivot = (&e.x * &p.0 + &e.y * &row.0, e.gcd.clone());
                let ca = &row.1 / &e.gcd;
                let cb = &p.1 / &e.gcd;
                let cleared = (ca * &p.0 - cb * &row.0, BigInt::zero());
                if !cleared.0.is_zero() {
                    a_rows.push(cleared.0);
                }
                pivot = Some(new_pivot);
            }
        }
    }
    let a = a_rows
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(&v));
    let pivot = pivot.expect("module has full rank");
    assert!(!a.is_zero(), "module has full rank");
    ((a, BigInt::zero()), pivot)
}

fn integer_coords(x: &FieldElement) -> Vec2 {
    debug_assert!(x.a.is_integer() && x.b.is_integer());
    (x.a.to_integer(), x.b.to_integer())
}

fn element_from_coords(c: &Vec2) -> FieldElement {
    FieldElement::new(BigRational::from(c.0.clone()), BigRational::from(c.1.clone()))
}

/// gcd of two O_K elements (not both zero), as a canonical generator of the
/// ideal (x, y). Needs no factorization.
pub fn gcd_elements(field: &NumberField, x: &FieldElement, y: &FieldElement) -> FieldElement {
    assert!(field.is_integral(x) && field.is_integral(y), "gcd is for integral elements");
    if x.is_zero() && y.is_zero() {
        panic!("gcd(0, 0) is undefined");
    }
    if x.is_zero() {
        return canonical_associate(field, y);
    }
    if y.is_zero() {
        return canonical_associate(field, x);
    }
    if field.is_rational() {
        let g = x.a.to_integer().gcd(&y.a.to_integer());
        return FieldElement::from_bigint(g);
    }
    let omega = FieldElement::omega();
    let rows = vec![
        integer_coords(x),
        integer_coords(&field.mul(x, &omega)),
        integer_coords(y),
        integer_coords(&field.mul(y, &omega)),
    ];
    let (b1, b2) = module_basis(rows);
    let shortest = lagrange_shortest(field, b1, b2);
    let g = element_from_coords(&shortest);
    debug_assert!(field.is_integral(&field.div(x, &g).unwrap()));
    debug_assert!(field.is_integral(&field.div(y, &g).unwrap()));
    canonical_associate(field, &g)
}

// ---- roots of the minimal polynomial mod p ------------------------------------

fn legendre(a: &BigUint, p: &BigUint) -> i8 {
    let a = a % p;
    if a.is_zero() {
        return 0;
    }
    let e = (p - BigUint::one()) >> 1;
    let r = a.modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Tonelli-Shanks square root mod an odd prime.
fn sqrt_mod(a: &BigUint, p: &BigUint) -> Option<BigUint> {
    let a = a % p;
    if a.is_zero() {
        return Some(BigUint::zero());
    }
    if legendre(&a, p) != 1 {
        return None;
    }
    let one = BigUint::one();
    let three = BigUint::from(3u32);
    if (p % BigUint::from(4u32)) == three {
        let e = (p + &one) >> 2;
        return Some(a.modpow(&e, p));
    }
    // p = 1 mod 4: full Tonelli-Shanks
    let mut q = p - &one;
    let mut s = 0u64;
    while (&q % 2u32).is_zero() {
        q >>= 1;
        s += 1;
    }
    let mut z = BigUint::from(2u32);
    while legendre(&z, p) != -1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + &one) >> 1), p);
    loop {
        if t.is_one() {
            return Some(r);
        }
        let mut i = 0u64;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % p;
            i += 1;
            if i == m {
                return None;
            }
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = (&b * &b) % p;
        }
        m = i;
        c = (&b * &b) % p;
        t = (&t * &c) % p;
        r = (&r * &b) % p;
    }
}

/// Behavior of a rational prime in O_K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Splitting {
    Inert,
    Ramified,
    Split,
}

enum MinpolyRoots {
    None,
    Double(BigUint),
    Pair(BigUint, BigUint),
}

fn minpoly_roots_mod_p(field: &NumberField, p: &BigUint) -> MinpolyRoots {
    let d = field.quadratic_d().expect("quadratic field");
    let two = BigUint::from(2u32);
    if field.half_basis() {
        // t^2 - t + (d+1)/4, discriminant -d
        let q0 = BigUint::from((d + 1) / 4);
        if *p == two {
            return if (&q0 % &two).is_zero() {
                MinpolyRoots::Pair(BigUint::zero(), BigUint::one())
            } else {
                MinpolyRoots::None
            };
        }
        let md = (p - (BigUint::from(d) % p)) % p;
        let inv2 = two.modpow(&(p - BigUint::from(2u32)), p);
        if md.is_zero() {
            return MinpolyRoots::Double(inv2);
        }
        match sqrt_mod(&md, p) {
            None => MinpolyRoots::None,
            Some(s) => {
                let r1 = ((BigUint::one() + &s) * &inv2) % p;
                let r2 = ((BigUint::one() + p - &s) * &inv2) % p;
                MinpolyRoots::Pair(r1, r2)
            }
        }
    } else {
        // t^2 + d
        if *p == two {
            // disc is -4d: 2 always ramifies, double root d mod 2
            let r = BigUint::from(d % 2);
            return MinpolyRoots::Double(r);
        }
        let md = (p - (BigUint::from(d) % p)) % p;
        if md.is_zero() {
            return MinpolyRoots::Double(BigUint::zero());
        }
        match sqrt_mod(&md, p) {
            None => MinpolyRoots::None,
            Some(s) => {
                let s2 = (p - &s) % p;
                MinpolyRoots::Pair(s, s2)
            }
        }
    }
}

/// Splitting type of a rational prime p in O_K.
pub fn splitting_type(field: &NumberField, p: &BigUint) -> Splitting {
    if field.is_rational() {
        return Splitting::Split; // degree one: the notion is trivial
    }
    match minpoly_roots_mod_p(field, p) {
        MinpolyRoots::None => Splitting::Inert,
        MinpolyRoots::Double(_) => Splitting::Ramified,
        MinpolyRoots::Pair(..) => Splitting::Split,
    }
}

fn prime_from_root(field: &NumberField, p: &BigUint, root: &BigUint) -> PrimeOfK {
    // ideal (p, omega - r) has Z-basis {(p, 0), (-r, 1)}
    let pb = BigInt::from(p.clone());
    let r = BigInt::from(root.clone());
    let shortest = lagrange_shortest(field, (pb.clone(), BigInt::zero()), (-r, BigInt::one()));
    let gen = canonical_associate(field, &element_from_coords(&shortest));
    debug_assert_eq!(field.norm(&gen).to_integer().magnitude(), p);
    PrimeOfK {
        field: *field,
        generator: gen,
        rational_prime: p.clone(),
        residue_size: p.clone(),
    }
}

/// The primes of O_K above a rational prime p, deterministically ordered.
pub fn primes_above(field: &NumberField, p: &BigUint) -> Vec<PrimeOfK> {
    if field.is_rational() {
        return vec![PrimeOfK {
            field: *field,
            generator: FieldElement::from_bigint(BigInt::from(p.clone())),
            rational_prime: p.clone(),
            residue_size: p.clone(),
        }];
    }
    match minpoly_roots_mod_p(field, p) {
        MinpolyRoots::None => vec![PrimeOfK {
            field: *field,
            generator: FieldElement::from_bigint(BigInt::from(p.clone())),
            rational_prime: p.clone(),
            residue_size: p * p,
        }],
        MinpolyRoots::Double(r) => vec![prime_from_root(field, p, &r)],
        MinpolyRoots::Pair(r1, r2) => {
            let mut v = vec![prime_from_root(field, p, &r1), prime_from_root(field, p, &r2)];
            v.sort();
            v
        }
    }
}

/// N_p for a prime of K.
pub fn prime_weight(_field: &NumberField, p: &PrimeOfK) -> f64 {
    p.weight()
}

// ---- valuations ----------------------------------------------------------------

fn count_divisions(n: &BigUint, p: &BigUint) -> i64 {
    let mut n = n.clone();
    let mut v = 0i64;
    while !n.is_zero() {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            break;
        }
        v += 1;
        n = q;
    }
    v
}

fn rational_valuation(q: &BigRational, p: &BigUint) -> i64 {
    count_divisions(q.numer().magnitude(), p) - count_divisions(q.denom().magnitude(), p)
}

/// Write x = y / m with y in O_K and m a positive integer (the lcm of the
/// coordinate denominators).
pub fn integral_quotient(field: &NumberField, x: &FieldElement) -> (FieldElement, BigInt) {
    let m = x.a.denom().lcm(x.b.denom());
    let mr = BigRational::from(m.clone());
    let y = FieldElement::new(&x.a * &mr, &x.b * &mr);
    debug_assert!(field.is_integral(&y));
    let _ = field;
    (y, m)
}

fn split_prime_valuation_integral(
    field: &NumberField,
    y: &FieldElement,
    p: &PrimeOfK,
    max: i64,
) -> i64 {
    // count exact divisions of y in O_K by the generator
    let mut v = 0i64;
    let mut cur = y.clone();
    while v < max {
        let q = field.div(&cur, p.generator()).expect("prime generator nonzero");
        if !field.is_integral(&q) {
            break;
        }
        v += 1;
        cur = q;
    }
    v
}

/// v_p(x) for nonzero x.
pub fn valuation(field: &NumberField, x: &FieldElement, p: &PrimeOfK) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    if field.is_rational() {
        return Ok(rational_valuation(&x.a, &p.rational_prime));
    }
    let norm = field.norm(x);
    let vnorm = rational_valuation(&norm, &p.rational_prime);
    match splitting_type(field, &p.rational_prime) {
        Splitting::Inert => {
            debug_assert!(vnorm % 2 == 0);
            Ok(vnorm / 2)
        }
        Splitting::Ramified => Ok(vnorm),
        Splitting::Split => {
            let (y, m) = integral_quotient(field, x);
            let vm = count_divisions(m.magnitude(), &p.rational_prime);
            let bound = vnorm + 2 * vm + 1;
            let vy = split_prime_valuation_integral(field, &y, p, bound);
            Ok(vy - vm)
        }
    }
}

/// Factor a nonzero element of K into unit * prod(pi^e).
///
/// For quadratic fields this factors the integer norm of the numerator part
/// and the denominator, then splits each rational prime by its behavior in
/// O_K. Balanced split primes hiding in the denominator are caught because the
/// denominator's own support is always examined.
pub fn factor_element(
    field: &NumberField,
    x: &FieldElement,
    budget: &FactorBudget,
) -> Result<ValuationTable> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut entries: BTreeMap<PrimeOfK, i64> = BTreeMap::new();

    if field.is_rational() {
        let num = BigInt::from(x.a.numer().clone());
        let den = BigInt::from(x.a.denom().clone());
        for (n, sign) in [(num, 1i64), (den, -1i64)] {
            if n.magnitude().is_one() {
                continue;
            }
            let f = factor_integer(&n, budget)?;
            if let Some(c) = f.cofactor {
                return Err(Error::BudgetExceeded { digits: decimal_digits(&BigInt::from(c)) });
            }
            for (p, e) in f.factors {
                let prime = PrimeOfK {
                    field: *field,
                    generator: FieldElement::from_bigint(BigInt::from(p.clone())),
                    rational_prime: p.clone(),
                    residue_size: p,
                };
                *entries.entry(prime).or_insert(0) += sign * e as i64;
            }
        }
        entries.retain(|_, e| *e != 0);
        let unit = if x.a.is_negative() { FieldElement::from_int(-1) } else { FieldElement::one() };
        let table = ValuationTable { entries, unit };
        debug_assert_eq!(
            table.reconstruct(field),
            *x,
            "factor/rebuild round-trip must be exact"
        );
        return Ok(table);
    }

    let (y, m) = integral_quotient(field, x);
    let norm_y = field.norm(&y).to_integer();
    let fn_y = factor_integer(&norm_y, budget)?;
    if let Some(c) = &fn_y.cofactor {
        return Err(Error::BudgetExceeded { digits: decimal_digits(&BigInt::from(c.clone())) });
    }
    let fm = factor_integer(&m, budget)?;
    if let Some(c) = &fm.cofactor {
        return Err(Error::BudgetExceeded { digits: decimal_digits(&BigInt::from(c.clone())) });
    }
    let mut candidates: BTreeMap<BigUint, (i64, i64)> = BTreeMap::new(); // p -> (v_p(N(y)), v_p(m))
    for (p, e) in &fn_y.factors {
        candidates.entry(p.clone()).or_insert((0, 0)).0 = *e as i64;
    }
    for (p, e) in &fm.factors {
        candidates.entry(p.clone()).or_insert((0, 0)).1 = *e as i64;
    }

    for (p, (vnorm_y, vm)) in candidates {
        match splitting_type(field, &p) {
            Splitting::Inert => {
                debug_assert!(vnorm_y % 2 == 0, "inert prime valuation of a norm is even");
                let v = vnorm_y / 2 - vm;
                if v != 0 {
                    let prime = primes_above(field, &p).pop().unwrap();
                    entries.insert(prime, v);
                }
            }
            Splitting::Ramified => {
                let v = vnorm_y - 2 * vm;
                if v != 0 {
                    let prime = primes_above(field, &p).pop().unwrap();
                    entries.insert(prime, v);
                }
            }
            Splitting::Split => {
                let pair = primes_above(field, &p);
                let bound = vnorm_y + 1;
                let v1_y = split_prime_valuation_integral(field, &y, &pair[0], bound);
                let v2_y = vnorm_y - v1_y;
                for (prime, vy) in pair.into_iter().zip([v1_y, v2_y]) {
                    let v = vy - vm;
                    if v != 0 {
                        entries.insert(prime, v);
                    }
                }
            }
        }
    }

    let mut rebuilt = FieldElement::one();
    for (p, &e) in &entries {
        let pw = field.pow(p.generator(), e.unsigned_abs() as u32);
        if e >= 0 {
            rebuilt = field.mul(&rebuilt, &pw);
        } else {
            rebuilt = field.div(&rebuilt, &pw).unwrap();
        }
    }
    let unit = field.div(x, &rebuilt).expect("prime part is nonzero");
    assert!(field.is_unit(&unit), "residual part of a factorization must be a unit");
    Ok(ValuationTable { entries, unit })
}

/// The integral "numerator content" of x: an O_K element whose valuations are
/// max(v_pi(x), 0), canonical up to the unit recorded alongside. Computed from
/// one O_K gcd, no factorization.
pub fn numerator_content(field: &NumberField, x: &FieldElement) -> FieldElement {
    assert!(!x.is_zero());
    if field.is_rational() {
        return FieldElement::from_bigint(BigInt::from(x.a.numer().magnitude().clone()));
    }
    let (y, m) = integral_quotient(field, x);
    let g = gcd_elements(field, &y, &FieldElement::from_bigint(m));
    let content = field.div(&y, &g).expect("gcd divides");
    canonical_associate(field, &content)
}

/// Norm of the denominator ideal of x (product over v_pi(x) < 0 of #k_pi^{-v}).
pub fn denominator_ideal_norm(field: &NumberField, x: &FieldElement) -> BigUint {
    assert!(!x.is_zero());
    if field.is_rational() {
        return x.a.denom().magnitude().clone();
    }
    let (y, m) = integral_quotient(field, x);
    let g = gcd_elements(field, &y, &FieldElement::from_bigint(m.clone()));
    // denominator ideal is (m / g)
    let den = field.div(&FieldElement::from_bigint(m), &g).expect("gcd divides");
    field.norm(&den).to_integer().magnitude().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::FieldKind;

    fn q() -> NumberField {
        NumberField::rational()
    }

    fn qi() -> NumberField {
        NumberField::gaussian()
    }

    fn fe(k: &NumberField, s: &str) -> FieldElement {
        k.parse_element(s).unwrap()
    }

    #[test]
    fn factor_rational_examples() {
        let b = FactorBudget::default();
        let t = factor_element(&q(), &FieldElement::from_int(26), &b).unwrap();
        let entries: Vec<(String, i64)> =
            t.entries().map(|(p, e)| (p.generator().to_string(), e)).collect();
        assert_eq!(entries, vec![("2".into(), 1), ("13".into(), 1)]);
        assert_eq!(t.unit(), &FieldElement::one());

        let t = factor_element(&q(), &FieldElement::from_ratio(-3, 2), &b).unwrap();
        let entries: Vec<(String, i64)> =
            t.entries().map(|(p, e)| (p.generator().to_string(), e)).collect();
        assert_eq!(entries, vec![("2".into(), -1), ("3".into(), 1)]);
        assert_eq!(t.unit(), &FieldElement::from_int(-1));
        assert_eq!(t.reconstruct(&q()), FieldElement::from_ratio(-3, 2));
    }

    #[test]
    fn factor_gaussian_five() {
        let k = qi();
        let t = factor_element(&k, &FieldElement::from_int(5), &FactorBudget::default()).unwrap();
        assert_eq!(t.len(), 2);
        for (p, e) in t.entries() {
            assert_eq!(e, 1);
            assert_eq!(p.rational_prime(), &BigUint::from(5u32));
            assert_eq!(p.residue_size(), &BigUint::from(5u32));
            // generator is an associate of 2 +- i
            let quot = k.div(p.generator(), &fe(&k, "2+i")).unwrap();
            let quot2 = k.div(p.generator(), &fe(&k, "2-i")).unwrap();
            assert!(k.is_unit(&quot) || k.is_unit(&quot2));
        }
        assert_eq!(t.reconstruct(&k), FieldElement::from_int(5));
    }

    #[test]
    fn valuation_examples() {
        let b = PrimeOfK::rational(2);
        assert_eq!(valuation(&q(), &FieldElement::from_int(26), &b).unwrap(), 1);
        let p5 = PrimeOfK::rational(5);
        assert_eq!(valuation(&q(), &FieldElement::from_ratio(1, 25), &p5).unwrap(), -2);

        let k = qi();
        // (1+i)(2-i) = 3+i
        let pi = primes_above(&k, &BigUint::from(2u32)).pop().unwrap();
        let x = fe(&k, "3+i");
        assert_eq!(valuation(&k, &x, &pi).unwrap(), 1);
        assert_eq!(
            k.mul(&fe(&k, "1+i"), &fe(&k, "2-i")),
            x
        );
        assert_eq!(
            valuation(&q(), &FieldElement::zero(), &p5),
            Err(Error::ZeroElement)
        );
    }

    #[test]
    fn valuation_is_additive() {
        let k = qi();
        let b = FactorBudget::default();
        let x = fe(&k, "3/2 + 5*w");
        let y = fe(&k, "-7 + 2/3*w");
        let xy = k.mul(&x, &y);
        let tx = factor_element(&k, &x, &b).unwrap();
        let ty = factor_element(&k, &y, &b).unwrap();
        let txy = factor_element(&k, &xy, &b).unwrap();
        let mut primes: Vec<PrimeOfK> = tx.entries().chain(ty.entries()).map(|(p, _)| p.clone()).collect();
        primes.sort();
        primes.dedup();
        for p in primes {
            assert_eq!(txy.get(&p), tx.get(&p) + ty.get(&p), "at prime {p}");
        }
    }

    #[test]
    fn balanced_split_prime_is_not_missed() {
        // (2+i)/(2-i) has norm 1 but valuations +1/-1 at the primes above 5
        let k = qi();
        let x = k.div(&fe(&k, "2+i"), &fe(&k, "2-i")).unwrap();
        let t = factor_element(&k, &x, &FactorBudget::default()).unwrap();
        assert_eq!(t.len(), 2);
        let exps: Vec<i64> = t.entries().map(|(_, e)| e).collect();
        assert!(exps.contains(&1) && exps.contains(&-1));
        assert_eq!(t.reconstruct(&k), x);
    }

    #[test]
    fn splitting_types() {
        let k7 = NumberField::imag_quadratic(7).unwrap();
        assert_eq!(splitting_type(&k7, &BigUint::from(2u32)), Splitting::Split);
        assert_eq!(splitting_type(&k7, &BigUint::from(7u32)), Splitting::Ramified);
        assert_eq!(splitting_type(&k7, &BigUint::from(3u32)), Splitting::Inert);
        let k3 = NumberField::imag_quadratic(3).unwrap();
        assert_eq!(splitting_type(&k3, &BigUint::from(2u32)), Splitting::Inert);
        assert_eq!(splitting_type(&k3, &BigUint::from(3u32)), Splitting::Ramified);
        assert_eq!(splitting_type(&k3, &BigUint::from(7u32)), Splitting::Split);
        let k = qi();
        assert_eq!(splitting_type(&k, &BigUint::from(2u32)), Splitting::Ramified);
        assert_eq!(splitting_type(&k, &BigUint::from(5u32)), Splitting::Split);
        assert_eq!(splitting_type(&k, &BigUint::from(3u32)), Splitting::Inert);
    }

    #[test]
    fn prime_weights() {
        let p2 = PrimeOfK::rational(2);
        assert!((p2.weight() - (2f64).ln()).abs() < 1e-12);
        let k = qi();
        let ram = primes_above(&k, &BigUint::from(2u32)).pop().unwrap();
        assert!((ram.weight() - (2f64).ln() / 2.0).abs() < 1e-12);
        let inert = primes_above(&k, &BigUint::from(3u32)).pop().unwrap();
        assert!((inert.weight() - (3f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn associate_invariance() {
        let k = qi();
        let b = FactorBudget::default();
        let x = fe(&k, "3 + 7*w");
        let i = FieldElement::omega();
        let tx = factor_element(&k, &x, &b).unwrap();
        let tux = factor_element(&k, &k.mul(&x, &i), &b).unwrap();
        let ex: Vec<(PrimeOfK, i64)> = tx.entries().map(|(p, e)| (p.clone(), e)).collect();
        let eux: Vec<(PrimeOfK, i64)> = tux.entries().map(|(p, e)| (p.clone(), e)).collect();
        assert_eq!(ex, eux);
        assert_ne!(tx.unit(), tux.unit());
    }

    #[test]
    fn gcd_in_all_fields() {
        for d in crate::numfield::CLASS_NUMBER_ONE_D {
            let k = NumberField::imag_quadratic(d).unwrap();
            // gcd(p*x, p*y) should have norm divisible by p for a split/ramified p
            let x = fe(&k, "1 + 2*w");
            let y = fe(&k, "3 - 1*w");
            let g = gcd_elements(&k, &x, &y);
            assert!(k.is_integral(&g));
            assert!(k.is_integral(&k.div(&x, &g).unwrap()));
            assert!(k.is_integral(&k.div(&y, &g).unwrap()));
            let scaled_g = gcd_elements(&k, &k.mul(&x, &FieldElement::from_int(6)), &k.mul(&y, &FieldElement::from_int(6)));
            let quot = k.div(&scaled_g, &g).unwrap();
            assert_eq!(k.norm(&quot).to_integer().magnitude(), &BigUint::from(36u32));
        }
    }

    #[test]
    fn gaussian_gcd_example() {
        let k = qi();
        let g = gcd_elements(&k, &fe(&k, "1+i"), &FieldElement::from_int(2));
        // 2 = -i (1+i)^2, so gcd is an associate of 1+i
        assert_eq!(k.norm(&g).to_integer(), BigInt::from(2));
    }

    #[test]
    fn numerator_content_examples() {
        let k = qi();
        // (1+i)/2 has positive valuation nowhere at 1+i: v = 1 - 2 = -1
        let x = k.div(&fe(&k, "1+i"), &FieldElement::from_int(2)).unwrap();
        let c = numerator_content(&k, &x);
        assert!(k.is_unit(&c), "content of (1+i)/2 is trivial, got {c}");
        assert_eq!(denominator_ideal_norm(&k, &x), BigUint::from(2u32));
        // over Q
        let c = numerator_content(&q(), &FieldElement::from_ratio(-26, 5));
        assert_eq!(c, FieldElement::from_int(26));
        assert_eq!(denominator_ideal_norm(&q(), &FieldElement::from_ratio(-26, 5)), BigUint::from(5u32));
    }

    #[test]
    fn primes_above_all_whitelist_fields() {
        for d in crate::numfield::CLASS_NUMBER_ONE_D {
            let k = NumberField::imag_quadratic(d).unwrap();
            for p in [2u64, 3, 5, 7, 11, 13, 163] {
                let pb = BigUint::from(p);
                for prime in primes_above(&k, &pb) {
                    let n = k.norm(prime.generator()).to_integer().magnitude().clone();
                    match splitting_type(&k, &pb) {
                        Splitting::Inert => assert_eq!(n, &pb * &pb),
                        _ => assert_eq!(n, pb.clone()),
                    }
                }
            }
            assert_eq!(k.kind(), FieldKind::ImagQuadratic(d));
        }
    }

    #[test]
    fn tonelli_shanks() {
        let p = BigUint::from(1000000007u64); // 3 mod 4
        let a = BigUint::from(123456u64);
        if let Some(r) = sqrt_mod(&a, &p) {
            assert_eq!((&r * &r) % &p, a % &p);
        }
        let p = BigUint::from(1000000009u64); // 1 mod 4
        let a = BigUint::from(4u32);
        let r = sqrt_mod(&a, &p).unwrap();
        assert_eq!((&r * &r) % &p, a);
        // nonresidue
        assert_eq!(legendre(&BigUint::from(3u32), &BigUint::from(7u32)), -1);
        assert!(sqrt_mod(&BigUint::from(3u32), &BigUint::from(7u32)).is_none());
    }
}
