//! Coefficient rings shared by all algebra code: exact rationals, symbolic
//! rational functions with constrained symbols, and binary64 floats.

pub mod float;
pub mod parse;
pub mod poly;
pub mod polyrat;
pub mod rational;
pub mod symbol;

use std::fmt;

pub use float::{abs_tolerance, rel_tolerance, set_tolerances, within_tol, F64};
pub use parse::{parse_polyrat, parse_polyrat_free};
pub use poly::{Monomial, Poly};
pub use polyrat::{constraint_poly, PolyRat};
pub use rational::Rat;
pub use symbol::{Symbol, SymbolTable, TableBuilder};

use crate::error::{Error, Result};

/// The operations every coefficient backend provides. All three backends are
/// commutative rings with division wherever an inverse exists; values are
/// immutable and safe to share across threads.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn neg(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    /// Preference weight for elimination pivots; zero for zero values.
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }

    /// Square root within the ring, when one exists.
    fn sqrt(&self) -> Option<Self> {
        let _ = self;
        None
    }

    fn to_f64(&self) -> Option<f64>;

    fn parse(s: &str) -> Result<Self>;
}

impl Ring for Rat {
    fn zero() -> Self {
        Rat::from_i64(0)
    }
    fn one() -> Self {
        Rat::from_i64(1)
    }
    fn from_i64(n: i64) -> Self {
        Rat::from_i64(n)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rat::from_ratio(num, den)
    }
    fn is_zero(&self) -> bool {
        self.is_zero_exact()
    }
    fn neg(&self) -> Self {
        self.neg_rat()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add_rat(rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_rat(rhs)
    }
    fn inv(&self) -> Option<Self> {
        Rat::from_i64(1).div_rat(self)
    }
    fn sqrt(&self) -> Option<Self> {
        self.sqrt_exact()
    }
    fn to_f64(&self) -> Option<f64> {
        Rat::to_f64(self)
    }
    fn parse(s: &str) -> Result<Self> {
        Rat::parse_str(s)
    }
}

impl Ring for F64 {
    fn zero() -> Self {
        F64(0.0)
    }
    fn one() -> Self {
        F64(1.0)
    }
    fn from_i64(n: i64) -> Self {
        F64(n as f64)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        F64(num as f64 / den as f64)
    }
    fn is_zero(&self) -> bool {
        self.is_zero_tol()
    }
    fn neg(&self) -> Self {
        F64(-self.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        F64(self.0 + rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        F64(self.0 * rhs.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero_tol() {
            None
        } else {
            Some(F64(1.0 / self.0))
        }
    }
    fn pivot_weight(&self) -> f64 {
        self.0.abs()
    }
    fn sqrt(&self) -> Option<Self> {
        if self.0 < 0.0 {
            None
        } else {
            Some(F64(self.0.sqrt()))
        }
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.0)
    }
    fn parse(s: &str) -> Result<Self> {
        F64::parse_str(s)
    }
}

impl Ring for PolyRat {
    fn zero() -> Self {
        PolyRat::int(0)
    }
    fn one() -> Self {
        PolyRat::int(1)
    }
    fn from_i64(n: i64) -> Self {
        PolyRat::int(n)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        PolyRat::ratio(num, den)
    }
    fn is_zero(&self) -> bool {
        self.is_zero_exact()
    }
    fn neg(&self) -> Self {
        PolyRat::neg(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        PolyRat::add(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        PolyRat::mul(self, rhs)
    }
    fn inv(&self) -> Option<Self> {
        PolyRat::inv(self)
    }
    fn pivot_weight(&self) -> f64 {
        if self.is_zero_exact() {
            0.0
        } else {
            1.0 / (1.0 + self.complexity() as f64)
        }
    }
    fn sqrt(&self) -> Option<Self> {
        PolyRat::sqrt(self)
    }
    fn to_f64(&self) -> Option<f64> {
        PolyRat::to_f64(self)
    }
    fn parse(s: &str) -> Result<Self> {
        parse_polyrat_free(s)
    }
}

/// The four arithmetic operations, for checked entry points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic with the spec's error contract; the unchecked trait
/// methods panic on ring misuse instead.
pub fn arith<R: Ring>(a: &R, b: &R, op: ArithOp) -> Result<R> {
    match op {
        ArithOp::Add => Ok(a.add(b)),
        ArithOp::Sub => Ok(a.sub(b)),
        ArithOp::Mul => Ok(a.mul(b)),
        ArithOp::Div => a.div(b).ok_or(Error::DivisionByZero),
    }
}
