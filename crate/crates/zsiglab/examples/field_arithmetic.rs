//! Exact arithmetic and prime factorization in Q and the nine
//! class-number-one imaginary quadratic fields.
//!
//! Run with: cargo run --example field_arithmetic

use zsiglab::heights::weil_height;
use zsiglab::numfield::{factor_element, CLASS_NUMBER_ONE_D};
use zsiglab::{FactorBudget, FieldElement, NumberField};

fn main() {
    let budget = FactorBudget::default();

    println!("supported fields:");
    print!("  Q");
    for d in CLASS_NUMBER_ONE_D {
        print!("  Q(-{d})");
    }
    println!("\n");

    // factor a few rationals
    let q = NumberField::rational();
    for spec in ["26", "-3/2", "458330"] {
        let x = q.parse_element(spec).unwrap();
        let table = factor_element(&q, &x, &budget).unwrap();
        let parts: Vec<String> = table.entries().map(|(p, e)| format!("{p}^{e}")).collect();
        println!("{spec:>8} = {} * {}", table.unit(), parts.join(" * "));
    }

    // split, ramified, and inert primes in the Gaussian field
    let k = NumberField::gaussian();
    println!("\nGaussian factorizations:");
    for spec in ["5", "2", "3+i", "26"] {
        let x = k.parse_element(spec).unwrap();
        let table = factor_element(&k, &x, &budget).unwrap();
        let parts: Vec<String> = table.entries().map(|(p, e)| format!("{p}^{e}")).collect();
        println!("  {spec:>5} = ({}) * {}", table.unit(), parts.join(" * "));
    }

    // the product formula: finite and archimedean contributions cancel
    let x = k.parse_element("3/2 - 5*w").unwrap();
    let table = factor_element(&k, &x, &budget).unwrap();
    let finite: f64 = table.entries().map(|(p, e)| e as f64 * p.weight()).sum();
    let arch: f64 = k.archimedean_logs(&x).unwrap().iter().sum::<f64>() / k.degree() as f64;
    println!("\nproduct formula for {x}:");
    println!("  sum v_p N_p       = {finite:+.12}");
    println!("  (1/deg) sum log|s| = {arch:+.12}");
    println!("  residual           = {:+.3e}", finite + arch);
    println!("  height             = {:.12}", weil_height(&k, &x).value);
}
