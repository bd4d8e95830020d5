//! Binary64 scalars with a ring-level tolerance policy.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

static ABS_TOL: AtomicU64 = AtomicU64::new(0);
static REL_TOL: AtomicU64 = AtomicU64::new(0);

const DEFAULT_ABS: f64 = 1e-12;
const DEFAULT_REL: f64 = 1e-9;

fn load(cell: &AtomicU64, default: f64) -> f64 {
    let bits = cell.load(Ordering::Relaxed);
    if bits == 0 {
        default
    } else {
        f64::from_bits(bits)
    }
}

/// Absolute tolerance used by zero tests; defaults to 1e-12.
pub fn abs_tolerance() -> f64 {
    load(&ABS_TOL, DEFAULT_ABS)
}

/// Relative tolerance used by scaled comparisons; defaults to 1e-9.
pub fn rel_tolerance() -> f64 {
    load(&REL_TOL, DEFAULT_REL)
}

/// Override the tolerances process-wide (the CLI wires `CLIFFORDLAB_TOL`
/// and `--tol` through here).
pub fn set_tolerances(abs: f64, rel: f64) {
    ABS_TOL.store(abs.to_bits(), Ordering::Relaxed);
    REL_TOL.store(rel.to_bits(), Ordering::Relaxed);
}

/// `|v| <= abs + rel * scale` with the configured tolerances.
pub fn within_tol(v: f64, scale: f64) -> bool {
    v.abs() <= abs_tolerance() + rel_tolerance() * scale.abs()
}

/// A binary64 scalar; zero tests use the global absolute tolerance.
#[derive(Clone, Copy, PartialEq, PartialOrd, Debug, Default)]
pub struct F64(pub f64);

impl F64 {
    pub fn new(v: f64) -> F64 {
        F64(v)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_zero_tol(self) -> bool {
        self.0.abs() <= abs_tolerance()
    }

    pub fn parse_str(s: &str) -> Result<F64> {
        s.trim()
            .parse::<f64>()
            .map(F64)
            .map_err(|_| Error::Parse(format!("bad float `{s}`")))
    }
}

impl fmt::Display for F64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // `{}` on f64 is the shortest representation that round-trips
        write!(f, "{}", self.0)
    }
}
