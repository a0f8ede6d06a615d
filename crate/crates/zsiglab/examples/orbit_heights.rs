//! Exact orbits, Weil heights, the orbit growth bounds, and canonical
//! heights with certified tails.
//!
//! Run with: cargo run --example orbit_heights

use zsiglab::dynamics::{detect_periodicity, iterate, nu};
use zsiglab::heights::{canonical_height, check_orbit_bounds, empirical_kappa_ratio, weil_height};
use zsiglab::util::DEFAULT_SLACK;
use zsiglab::{FieldElement, UnicriticalMap};

fn main() {
    let f = UnicriticalMap::monic_rational(2, 1);
    let alpha = FieldElement::zero();

    println!("orbit of {alpha} under x^2 + 1:");
    let orbit = iterate(&f, &alpha, 8);
    for (n, v) in orbit.values.iter().enumerate() {
        let h = weil_height(&f.field, v).value;
        println!("  f^{n}(0) = {v:>24}   h = {h:.6}");
    }

    let verdict = detect_periodicity(&f, &alpha, 64);
    println!("\norbit verdict: {verdict}");
    let (nu_val, log_plus) = nu(&f);
    println!("nu(f) = {nu_val:.6}, log+ nu = {log_plus:.6}");

    // both growth bounds at level 5: h(677) against the shifted lemmas
    let bounds = check_orbit_bounds(&f, &alpha, 5, DEFAULT_SLACK).unwrap();
    println!("\nlevel-5 orbit bounds:");
    println!("  h(f^5(0)) = {:.6}", bounds.height);
    println!("  lower holds: {} (margin {:+.4})", bounds.lower.holds, bounds.lower.margin);
    println!("  upper holds: {} (margin {:+.4})", bounds.upper.holds, bounds.upper.margin);

    // canonical height estimate, bracketed by the certified tail
    let est = canonical_height(&f, &alpha, 12).unwrap();
    println!("\ncanonical height of 0 under x^2 + 1:");
    println!("  estimate    = {:.12}", est.value);
    println!("  certified +- {:.3e}", est.error_bound);

    // the closed-form sanity case: x^2 at alpha = 2 has canonical height log 2
    let square = UnicriticalMap::monic_rational(2, 0);
    let est = canonical_height(&square, &FieldElement::from_int(2), 10).unwrap();
    println!("\nx^2 at alpha = 2:");
    println!("  estimate = {:.12} (log 2 = {:.12})", est.value, (2f64).ln());

    // observed growth ratio h(f^n)/d^n max(1, h(c - gamma))
    let ratio = empirical_kappa_ratio(&f, &alpha, 8).unwrap();
    println!("\nobserved growth ratio at n = 8: {ratio:.6}");
}
