//! Dense univariate polynomials over K with exact coefficient arithmetic,
//! plus resultants and discriminants via a Euclidean remainder sequence.

use crate::error::{Error, Result};
use crate::numfield::{FieldElement, NumberField};

/// Polynomial with ascending coefficients and no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPoly {
    coeffs: Vec<FieldElement>,
}

impl KPoly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        KPoly { coeffs }
    }

    pub fn zero() -> Self {
        KPoly { coeffs: vec![] }
    }

    pub fn constant(c: FieldElement) -> Self {
        KPoly::new(vec![c])
    }

    pub fn identity() -> Self {
        KPoly::new(vec![FieldElement::zero(), FieldElement::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn add(&self, k: &NumberField, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = FieldElement::zero();
        let coeffs = (0..n)
            .map(|i| {
                k.add(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        KPoly::new(coeffs)
    }

    pub fn neg(&self, k: &NumberField) -> Self {
        KPoly::new(self.coeffs.iter().map(|c| k.neg(c)).collect())
    }

    pub fn sub(&self, k: &NumberField, other: &Self) -> Self {
        self.add(k, &other.neg(k))
    }

    pub fn scale(&self, k: &NumberField, s: &FieldElement) -> Self {
        KPoly::new(self.coeffs.iter().map(|c| k.mul(c, s)).collect())
    }

    pub fn mul(&self, k: &NumberField, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return KPoly::zero();
        }
        let mut out = vec![FieldElement::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(&out[i + j], &k.mul(a, b));
            }
        }
        KPoly::new(out)
    }

    pub fn pow(&self, k: &NumberField, e: u32) -> Self {
        let mut acc = KPoly::constant(FieldElement::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(k, &base);
            }
            base = base.mul(k, &base);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, k: &NumberField, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero();
        for c in self.coeffs.iter().rev() {
            acc = k.add(&k.mul(&acc, x), c);
        }
        acc
    }

    /// self(other(x)).
    pub fn compose(&self, k: &NumberField, other: &Self) -> Self {
        let mut acc = KPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(k, other).add(k, &KPoly::constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self, k: &NumberField) -> Self {
        if self.coeffs.len() <= 1 {
            return KPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(c, &FieldElement::from_int(i as i64)))
            .collect();
        KPoly::new(coeffs)
    }

    /// Remainder of self divided by other (other nonzero).
    fn rem(&self, k: &NumberField, other: &Self) -> Self {
        let d_other = other.degree().expect("division by zero polynomial");
        let lc_inv = k.inv(other.leading().unwrap()).expect("leading coeff nonzero");
        let mut r = self.clone();
        while let Some(d_r) = r.degree() {
            if d_r < d_other {
                break;
            }
            let shift = d_r - d_other;
            let factor = k.mul(r.leading().unwrap(), &lc_inv);
            let mut sub = vec![FieldElement::zero(); shift];
            sub.extend(other.coeffs.iter().map(|c| k.mul(c, &factor)));
            r = r.sub(k, &KPoly::new(sub));
            if r.degree() == Some(d_r) {
                // numerical impossibility over an exact field
                unreachable!("remainder degree did not drop");
            }
        }
        r
    }
}

/// Resultant of two polynomials over K, by the Euclidean remainder sequence.
pub fn resultant(k: &NumberField, a: &KPoly, b: &KPoly) -> FieldElement {
    if a.is_zero() || b.is_zero() {
        return FieldElement::zero();
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = FieldElement::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        if db == 0 {
            // res(a, b0) = b0^da
            return k.mul(&acc, &k.pow(b.leading().unwrap(), da as u32));
        }
        if da < db {
            // res(a,b) = (-1)^{da db} res(b,a)
            if da * db % 2 == 1 {
                acc = k.neg(&acc);
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let r = a.rem(k, &b);
        if r.is_zero() {
            return FieldElement::zero();
        }
        let dr = r.degree().unwrap();
        // res(a,b) = (-1)^{da db} lc(b)^{da - dr} res(b, r)
        if da * db % 2 == 1 {
            acc = k.neg(&acc);
        }
        acc = k.mul(&acc, &k.pow(b.leading().unwrap(), (da - dr) as u32));
        a = b;
        b = r;
    }
}

/// Discriminant: (-1)^{n(n-1)/2} res(f, f') / lc(f).
pub fn discriminant(k: &NumberField, f: &KPoly) -> Result<FieldElement> {
    let n = f.degree().ok_or(Error::ZeroElement)?;
    if n == 0 {
        return Err(Error::Precondition("discriminant needs degree >= 1".into()));
    }
    if n == 1 {
        return Ok(FieldElement::one());
    }
    let r = resultant(k, f, &f.derivative(k));
    let signed = if (n * (n - 1) / 2) % 2 == 1 { k.neg(&r) } else { r };
    k.div(&signed, f.leading().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> NumberField {
        NumberField::rational()
    }

    fn poly(coeffs: &[i64]) -> KPoly {
        KPoly::new(coeffs.iter().map(|&c| FieldElement::from_int(c)).collect())
    }

    #[test]
    fn known_discriminants() {
        let k = q();
        // disc(x^2 + 1) = -4
        assert_eq!(discriminant(&k, &poly(&[1, 0, 1])).unwrap(), FieldElement::from_int(-4));
        // disc(x^3 + ax + b) = -4a^3 - 27b^2
        assert_eq!(discriminant(&k, &poly(&[0, -1, 0, 1])).unwrap(), FieldElement::from_int(4));
        assert_eq!(discriminant(&k, &poly(&[2, 3, 0, 1])).unwrap(), FieldElement::from_int(-4 * 27 - 27 * 4));
        // disc(x^4 + 2x^2 + 2) = 512
        assert_eq!(discriminant(&k, &poly(&[2, 0, 2, 0, 1])).unwrap(), FieldElement::from_int(512));
        // repeated root: disc((x-1)^2) = 0
        assert_eq!(discriminant(&k, &poly(&[1, -2, 1])).unwrap(), FieldElement::zero());
    }

    #[test]
    fn resultant_of_coprime_linears() {
        let k = q();
        // res(x - a, x - b) = b - a ... res = product of (a_i - b_j) with signs
        let r = resultant(&k, &poly(&[-2, 1]), &poly(&[-3, 1]));
        // res(f,g) = lc(g)^deg f * prod f(roots of g)?? use: res = prod over roots x_i of f of g(x_i)
        // f = x-2, root 2, g(2) = -1
        assert_eq!(r, FieldElement::from_int(-1));
    }

    #[test]
    fn compose_and_eval() {
        let k = q();
        let f = poly(&[1, 0, 1]); // x^2 + 1
        let ff = f.compose(&k, &f);
        assert_eq!(ff, poly(&[2, 0, 2, 0, 1]));
        assert_eq!(ff.eval(&k, &FieldElement::from_int(1)), FieldElement::from_int(5));
        assert_eq!(f.derivative(&k), poly(&[0, 2]));
    }

    #[test]
    fn scalar_resultant_convention() {
        let k = q();
        // res(constant, poly of positive degree) = c^deg
        let r = resultant(&k, &poly(&[3]), &poly(&[1, 0, 1]));
        assert_eq!(r, FieldElement::from_int(9));
        let r = resultant(&k, &poly(&[1, 0, 1]), &poly(&[3]));
        assert_eq!(r, FieldElement::from_int(9));
    }
}
