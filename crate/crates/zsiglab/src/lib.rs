//! zsiglab: an exact-arithmetic laboratory for the dynamics of unicritical
//! polynomials f(x) = (x - gamma)^d + c over Q and the nine class-number-one
//! imaginary quadratic fields.
//!
//! The crate computes Weil and canonical heights, exact forward orbits,
//! primitive prime divisors and Zsigmondy sets (with a factorization-free
//! gcd sieve), abc-triple radicals and qualities, S-unit decompositions with
//! witness curves, and splitting-tower stability/maximality audits — all with
//! budgeted factorization so nothing silently runs unbounded.
//!
//! Start with the runnable programs under `examples/`; the `zsiglab` binary
//! wraps the same machinery in batch subcommands producing CSV/JSON reports.

pub mod error;
pub mod galois;
pub mod quadratic;
pub mod util;

pub mod abc;
pub mod dynamics;
pub mod heights;
pub mod numfield;
pub mod poly;
pub mod report;
pub mod sample;
pub mod primdiv;

pub use dynamics::{OrbitTable, OrbitVerdict, UnicriticalMap};
pub use error::{Error, Result};
pub use heights::{BoundCheckConfig, HeightValue};
pub use numfield::{FieldElement, NumberField, PrimeOfK, ValuationTable};
pub use primdiv::FactorBudget;
