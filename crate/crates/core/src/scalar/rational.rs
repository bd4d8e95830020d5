//! Exact rational scalars backed by arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An arbitrary-precision rational in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn from_i64(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Rat> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero_exact(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn add_rat(&self, o: &Rat) -> Rat {
        Rat(&self.0 + &o.0)
    }

    pub fn sub_rat(&self, o: &Rat) -> Rat {
        Rat(&self.0 - &o.0)
    }

    pub fn neg_rat(&self) -> Rat {
        Rat(-self.0.clone())
    }

    pub fn mul_rat(&self, o: &Rat) -> Rat {
        Rat(&self.0 * &o.0)
    }

    pub fn div_rat(&self, o: &Rat) -> Option<Rat> {
        if o.0.is_zero() {
            return None;
        }
        Some(Rat(&self.0 / &o.0))
    }

    pub fn abs_rat(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// Positive gcd such that both operands divided by it are coprime
    /// integers scaled consistently; used for polynomial content.
    pub fn gcd_rat(&self, o: &Rat) -> Rat {
        if self.is_zero_exact() {
            return o.abs_rat();
        }
        if o.is_zero_exact() {
            return self.abs_rat();
        }
        let num = self.0.numer().gcd(o.0.numer());
        let den = self.0.denom().lcm(o.0.denom());
        Rat(BigRational::new(num, den))
    }

    /// Exact square root when both numerator and denominator are perfect
    /// squares of a non-negative value.
    pub fn sqrt_exact(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let n = self.0.numer().sqrt();
        let d = self.0.denom().sqrt();
        if &(&n * &n) == self.0.numer() && &(&d * &d) == self.0.denom() {
            Some(Rat(BigRational::new(n, d)))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.0.to_f64()
    }

    /// Exact conversion from a finite binary64 value.
    pub fn from_f64_exact(v: f64) -> Option<Rat> {
        BigRational::from_float(v).map(Rat)
    }

    pub fn parse_str(s: &str) -> Result<Rat> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n: BigInt = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer `{num}`")))?;
            let d: BigInt = den
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer `{den}`")))?;
            return Rat::from_big(n, d);
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            // decimal literal: keep it exact
            let digits = frac_part.trim();
            if digits.chars().all(|c| c.is_ascii_digit()) && !digits.is_empty() {
                let mut combined = String::from(int_part.trim());
                combined.push_str(digits);
                let n: BigInt = combined
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad decimal `{s}`")))?;
                let d = BigInt::from(10u32).pow(digits.len() as u32);
                return Rat::from_big(n, d);
            }
            return Err(Error::Parse(format!("bad decimal `{s}`")));
        }
        let n: BigInt = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
        Ok(Rat(BigRational::from_integer(n)))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}
