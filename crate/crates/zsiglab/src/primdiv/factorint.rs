//! Budgeted integer factorization: staged trial division, strong-pseudoprime
//! testing, and Pollard rho with Brent cycle detection.
//!
//! Primality is decided by strong-pseudoprime tests with the first thirteen
//! primes as witnesses, which is deterministic for operands below
//! 3.317e24. Above that bound, 64 rounds with witnesses drawn from a generator
//! seeded by the operand are used, and any factor certified only that way is
//! flagged as a probable prime. Factor-finding work is budgeted: trial
//! division is capped by `trial_bound` and the rho stages share one iteration
//! pool, so a call either completes or returns the certified part plus an
//! opaque composite-or-unknown cofactor.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Effort caps for integer factorization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorBudget {
    /// Trial-divide by primes up to this bound.
    pub trial_bound: u64,
    /// Total Pollard-rho iterations shared by one factorization call.
    pub rho_iterations: u64,
    /// Accept strong-pseudoprime certificates above the deterministic range.
    pub allow_probable_prime: bool,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget { trial_bound: 1_000_000, rho_iterations: 10_000_000, allow_probable_prime: true }
    }
}

impl FactorBudget {
    /// A deliberately starved budget, used to exercise degraded paths.
    pub fn crippled() -> Self {
        FactorBudget { trial_bound: 100, rho_iterations: 0, allow_probable_prime: true }
    }
}

/// Outcome of factoring a nonzero integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFactorization {
    pub negative: bool,
    /// Certified prime factors with multiplicities, ascending.
    pub factors: Vec<(BigUint, u32)>,
    /// Unfactored composite-or-unknown part (> 1), if the budget ran out.
    pub cofactor: Option<BigUint>,
    /// True when some listed prime was certified only by randomized rounds.
    pub probable_prime: bool,
}

impl IntFactorization {
    pub fn is_exact(&self) -> bool {
        self.cofactor.is_none()
    }

    /// Multiply everything back together (sign included).
    pub fn reconstruct(&self) -> BigInt {
        let mut acc = BigUint::one();
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        if let Some(c) = &self.cofactor {
            acc *= c;
        }
        let v = BigInt::from(acc);
        if self.negative {
            -v
        } else {
            v
        }
    }

    /// Distinct certified primes.
    pub fn distinct_primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }
}

const SIEVE_LIMIT: u64 = 1 << 20;

static SMALL_PRIMES: Lazy<Vec<u64>> = Lazy::new(|| {
    let limit = SIEVE_LIMIT as usize;
    let mut is_composite = vec![false; limit + 1];
    let mut primes = Vec::with_capacity(82_100);
    for n in 2..=limit {
        if !is_composite[n] {
            primes.push(n as u64);
            let mut m = n * n;
            while m <= limit {
                is_composite[m] = true;
                m += n;
            }
        }
    }
    primes
});

/// Deterministic witness bound for the first-13-primes strong test.
static DETERMINISTIC_MR_BOUND: Lazy<BigUint> =
    Lazy::new(|| BigUint::parse_bytes(b"3317044064679887385961981", 10).unwrap());

const MR_WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
const RANDOM_MR_ROUNDS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primality {
    /// Proven prime (deterministic witness set applies).
    Prime,
    /// Passed randomized rounds only.
    ProbablePrime,
    Composite,
}

fn strong_probable_prime(n: &BigUint, witness: &BigUint) -> bool {
    // n odd, > 2
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let w = witness % n;
    if w.is_zero() {
        return true;
    }
    let mut x = w.modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

/// Strong-pseudoprime classification of an arbitrary-precision operand.
pub fn primality(n: &BigUint) -> Primality {
    if n < &BigUint::from(2u32) {
        return Primality::Composite;
    }
    for p in MR_WITNESSES {
        let p = BigUint::from(p);
        if *n == p {
            return Primality::Prime;
        }
        if (n % &p).is_zero() {
            return Primality::Composite;
        }
    }
    for w in MR_WITNESSES {
        if !strong_probable_prime(n, &BigUint::from(w)) {
            return Primality::Composite;
        }
    }
    if n < &DETERMINISTIC_MR_BOUND {
        return Primality::Prime;
    }
    // seeded by the operand: identical runs give identical reports
    let seed = n.iter_u64_digits().next().unwrap_or(0) ^ n.bits();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = n - BigUint::from(4u32);
    let words = (n.bits() as usize + 63) / 64;
    for _ in 0..RANDOM_MR_ROUNDS {
        let digits: Vec<u64> = (0..words).map(|_| rng.gen()).collect();
        let w = BigUint::new(digits.iter().flat_map(|d| [*d as u32, (*d >> 32) as u32]).collect());
        let w = (w % &span) + BigUint::from(2u32);
        if !strong_probable_prime(n, &w) {
            return Primality::Composite;
        }
    }
    Primality::ProbablePrime
}

// ---- u64 fast path ---------------------------------------------------------

fn mulmod_u64(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn powmod_u64(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1u64;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, a, n);
        }
        a = mulmod_u64(a, a, n);
        e >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in MR_WITNESSES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'next: for w in MR_WITNESSES {
        let mut x = powmod_u64(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'next;
            }
        }
        return false;
    }
    true
}

/// Brent-cycle rho on a u64 composite. Returns a nontrivial factor, or None
/// if the iteration pool runs dry or this constant fails.
fn rho_brent_u64(n: u64, c: u64, pool: &mut u64) -> Option<u64> {
    let step = |y: u64| -> u64 {
        let s = mulmod_u64(y, y, n);
        let t = s + c;
        if t >= n || t < s {
            t.wrapping_sub(n)
        } else {
            t
        }
    };
    let m = 128u64;
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut x = 0u64;
    let mut ys = 0u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        if *pool < r {
            *pool = 0;
            return None;
        }
        *pool -= r;
        let mut k = 0u64;
        while k < r && g == 1 {
            ys = y;
            let lim = m.min(r - k);
            if *pool < lim {
                *pool = 0;
                return None;
            }
            *pool -= lim;
            for _ in 0..lim {
                y = step(y);
                q = mulmod_u64(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += m;
        }
        r *= 2;
    }
    if g == n {
        loop {
            if *pool == 0 {
                return None;
            }
            *pool -= 1;
            ys = step(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    if g == n {
        None
    } else {
        Some(g)
    }
}

fn factor_u64_into(
    mut n: u64,
    budget: &FactorBudget,
    pool: &mut u64,
    out: &mut BTreeMap<BigUint, u32>,
    pending: &mut Vec<BigUint>,
) {
    let mut stack = vec![];
    if n > 1 {
        stack.push(n);
    }
    while let Some(v) = stack.pop() {
        n = v;
        if n == 1 {
            continue;
        }
        if is_prime_u64(n) {
            *out.entry(BigUint::from(n)).or_insert(0) += 1;
            continue;
        }
        let r = (n as f64).sqrt() as u64;
        for cand in [r.saturating_sub(1), r, r + 1] {
            if cand > 1 && cand * cand == n {
                stack.push(cand);
                stack.push(cand);
                n = 1;
                break;
            }
        }
        if n == 1 {
            continue;
        }
        let mut split = None;
        for c in [1u64, 3, 5, 7, 11, 13] {
            if *pool == 0 {
                break;
            }
            if let Some(g) = rho_brent_u64(n, c, pool) {
                split = Some(g);
                break;
            }
        }
        match split {
            Some(g) => {
                stack.push(g);
                stack.push(n / g);
            }
            None => {
                // last resort inside the trial budget
                if let Some(p) = extended_trial_u64(n, budget.trial_bound) {
                    stack.push(p);
                    stack.push(n / p);
                } else {
                    pending.push(BigUint::from(n));
                }
            }
        }
    }
}

fn extended_trial_u64(n: u64, bound: u64) -> Option<u64> {
    for &p in SMALL_PRIMES.iter() {
        if p > bound || p * p > n {
            return None;
        }
        if n % p == 0 {
            return Some(p);
        }
    }
    // continue on a 6k+-1 wheel past the sieve
    let mut p = SIEVE_LIMIT - (SIEVE_LIMIT % 6) + 1;
    while p <= bound && p.saturating_mul(p) <= n {
        if n % p == 0 {
            return Some(p);
        }
        if n % (p + 4) == 0 && p + 4 <= bound {
            return Some(p + 4);
        }
        p += 6;
    }
    None
}

// ---- arbitrary precision path -----------------------------------------------

fn rho_brent_big(n: &BigUint, c: u64, pool: &mut u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let step = |y: &BigUint| -> BigUint { ((y * y) + &c) % n };
    let m = 128u64;
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = BigUint::zero();
    let mut ys = BigUint::zero();
    let one = BigUint::one();
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        if *pool < r {
            *pool = 0;
            return None;
        }
        *pool -= r;
        let mut k = 0u64;
        while k < r && g == one {
            ys = y.clone();
            let lim = m.min(r - k);
            if *pool < lim {
                *pool = 0;
                return None;
            }
            *pool -= lim;
            for _ in 0..lim {
                y = step(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            if *pool == 0 {
                return None;
            }
            *pool -= 1;
            ys = step(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g > one {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn extended_trial_big(n: &BigUint, bound: u64) -> Option<BigUint> {
    for &p in SMALL_PRIMES.iter() {
        if p > bound {
            return None;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > *n {
            return None;
        }
        if (n % &pb).is_zero() {
            return Some(pb);
        }
    }
    let mut p = SIEVE_LIMIT - (SIEVE_LIMIT % 6) + 1;
    while p <= bound {
        let pb = BigUint::from(p);
        if &pb * &pb > *n {
            return None;
        }
        if (n % &pb).is_zero() {
            return Some(pb);
        }
        let p4 = BigUint::from(p + 4);
        if p + 4 <= bound && (n % &p4).is_zero() {
            return Some(p4);
        }
        p += 6;
    }
    None
}

/// Factor a nonzero integer under the given budget.
pub fn factor_integer(n: &BigInt, budget: &FactorBudget) -> Result<IntFactorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let negative = n.is_negative();
    let mut m = n.magnitude().clone();
    let mut out: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut pending: Vec<BigUint> = Vec::new();
    let mut probable = false;

    // phase 1: cheap trial division
    let phase1 = budget.trial_bound.min(1000);
    for &p in SMALL_PRIMES.iter() {
        if p > phase1 {
            break;
        }
        let pb = BigUint::from(p);
        while (&m % &pb).is_zero() {
            m /= &pb;
            *out.entry(pb.clone()).or_insert(0) += 1;
        }
        if m.is_one() {
            break;
        }
    }

    let mut pool = budget.rho_iterations;
    let mut stack = vec![];
    if !m.is_one() {
        stack.push(m);
    }
    while let Some(v) = stack.pop() {
        if v.is_one() {
            continue;
        }
        if let Some(small) = v.to_u64() {
            factor_u64_into(small, budget, &mut pool, &mut out, &mut pending);
            continue;
        }
        match primality(&v) {
            Primality::Prime => {
                *out.entry(v).or_insert(0) += 1;
                continue;
            }
            Primality::ProbablePrime => {
                if budget.allow_probable_prime {
                    probable = true;
                    *out.entry(v).or_insert(0) += 1;
                } else {
                    pending.push(v);
                }
                continue;
            }
            Primality::Composite => {}
        }
        if let Some(r) = crate::util::exact_sqrt(&v) {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let mut split = None;
        for c in [1u64, 3, 5, 7, 11, 13] {
            if pool == 0 {
                break;
            }
            if let Some(g) = rho_brent_big(&v, c, &mut pool) {
                split = Some(g);
                break;
            }
        }
        match split {
            Some(g) => {
                let other = &v / &g;
                stack.push(g);
                stack.push(other);
            }
            None => {
                if let Some(p) = extended_trial_big(&v, budget.trial_bound) {
                    let other = &v / &p;
                    stack.push(p);
                    stack.push(other);
                } else {
                    pending.push(v);
                }
            }
        }
    }

    let cofactor = if pending.is_empty() {
        None
    } else {
        Some(pending.into_iter().product())
    };
    let factorization = IntFactorization {
        negative,
        factors: out.into_iter().collect(),
        cofactor,
        probable_prime: probable,
    };
    debug_assert_eq!(&factorization.reconstruct(), n);
    Ok(factorization)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigInt {
        s.parse().unwrap()
    }

    #[test]
    fn factor_small() {
        let f = factor_integer(&big("458330"), &FactorBudget::default()).unwrap();
        assert!(f.is_exact());
        assert_eq!(
            f.factors,
            vec![
                (BigUint::from(2u32), 1),
                (BigUint::from(5u32), 1),
                (BigUint::from(45833u32), 1)
            ]
        );
    }

    #[test]
    fn factor_one_and_sign() {
        let f = factor_integer(&big("1"), &FactorBudget::default()).unwrap();
        assert!(f.factors.is_empty() && f.is_exact() && !f.negative);
        let f = factor_integer(&big("-12"), &FactorBudget::default()).unwrap();
        assert!(f.negative);
        assert_eq!(f.factors, vec![(BigUint::from(2u32), 2), (BigUint::from(3u32), 1)]);
        assert!(factor_integer(&BigInt::zero(), &FactorBudget::default()).is_err());
    }

    #[test]
    fn starved_budget_on_fermat_number_degrades_in_band() {
        // 2^128 + 1 = 59649589127497217 * 5704689200685129054721. Finding the
        // 17-digit factor by rho needs on the order of sqrt(p) ~ 2e8
        // iterations, so a starved pool must return the whole operand as an
        // opaque cofactor rather than stall.
        let n = big("340282366920938463463374607431768211457");
        let tiny = FactorBudget { trial_bound: 100, rho_iterations: 2_000, allow_probable_prime: true };
        let f = factor_integer(&n, &tiny).unwrap();
        assert!(!f.is_exact());
        assert!(f.factors.is_empty());
        assert_eq!(f.reconstruct(), n);
    }

    #[test]
    #[ignore = "needs ~2e8 rho iterations; run manually"]
    fn rho_cracks_fermat_number_factor() {
        let n = big("340282366920938463463374607431768211457");
        let patient = FactorBudget { trial_bound: 100, rho_iterations: 2_000_000_000, allow_probable_prime: true };
        let f = factor_integer(&n, &patient).unwrap();
        assert!(f
            .factors
            .iter()
            .any(|(p, _)| p == &BigUint::parse_bytes(b"59649589127497217", 10).unwrap()));
        // the cofactor sits inside the deterministic strong-pseudoprime range,
        // so the result is exact
        assert!(f.is_exact());
        assert_eq!(f.reconstruct(), n);
    }

    #[test]
    fn budget_exhaustion_leaves_cofactor() {
        // semiprime of two 10-digit primes with a starved rho pool
        let n = big("1000000007") * big("1000000009");
        let starved = FactorBudget { trial_bound: 100, rho_iterations: 10, allow_probable_prime: true };
        let f = factor_integer(&n, &starved).unwrap();
        assert!(!f.is_exact());
        assert_eq!(f.cofactor, Some(n.magnitude().clone()));
        assert!(f.factors.is_empty());
        assert_eq!(f.reconstruct(), n);
        // the same operand falls to rho under the default budget
        let full = factor_integer(&n, &FactorBudget::default()).unwrap();
        assert!(full.is_exact());
        assert_eq!(full.factors.len(), 2);
    }

    #[test]
    fn prime_powers() {
        let n = big("1000000007") * big("1000000007");
        let f = factor_integer(&n, &FactorBudget::default()).unwrap();
        assert_eq!(f.factors, vec![(BigUint::from(1000000007u64), 2)]);
        let f = factor_integer(&big("1024"), &FactorBudget::default()).unwrap();
        assert_eq!(f.factors, vec![(BigUint::from(2u32), 10)]);
    }

    #[test]
    fn primality_classification() {
        assert_eq!(primality(&BigUint::from(2u32)), Primality::Prime);
        assert_eq!(primality(&BigUint::from(45833u32)), Primality::Prime);
        assert_eq!(primality(&BigUint::from(45831u32)), Primality::Composite);
        // Mersenne prime below the deterministic bound (3.317e24 ~ 2^81.5)
        let m61 = BigUint::parse_bytes(b"2305843009213693951", 10).unwrap(); // 2^61-1
        assert_eq!(primality(&m61), Primality::Prime);
        // primes above the bound are certified only probabilistically
        let m89 = (BigUint::one() << 89) - BigUint::one();
        assert_eq!(primality(&m89), Primality::ProbablePrime);
        let p = (BigUint::one() << 127) - BigUint::one(); // 2^127 - 1, prime
        assert_eq!(primality(&p), Primality::ProbablePrime);
        let c = (BigUint::one() << 89) + BigUint::one(); // composite
        assert_eq!(primality(&c), Primality::Composite);
    }

    #[test]
    fn u64_primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(45833));
        assert!(!is_prime_u64(45831));
        assert!(is_prime_u64(18446744073709551557)); // largest u64 prime
        assert!(!is_prime_u64(18446744073709551555));
    }
}
