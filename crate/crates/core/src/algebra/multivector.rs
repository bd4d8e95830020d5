//! Sparse multivectors: the universal element of Cl(B) and of the exterior
//! algebra, stored in the Grassmann basis.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::blade::Blade;
use crate::error::{Error, Result};
use crate::scalar::Ring;

/// A sparse mapping blade -> coefficient over a fixed dimension. Zero
/// coefficients are never stored, so printed forms are always collected.
#[derive(Clone, PartialEq, Debug)]
pub struct Multivector<R: Ring> {
    dim: u8,
    terms: BTreeMap<Blade, R>,
}

impl<R: Ring> Multivector<R> {
    pub fn zero(dim: u8) -> Multivector<R> {
        assert!(dim <= 16, "dimension capped at 16");
        Multivector {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: u8, c: R) -> Multivector<R> {
        let mut m = Multivector::zero(dim);
        m.add_term(Blade::ID, c);
        m
    }

    pub fn one(dim: u8) -> Multivector<R> {
        Multivector::scalar(dim, R::one())
    }

    pub fn blade(dim: u8, b: Blade, c: R) -> Multivector<R> {
        assert!(u32::from(dim) >= 16 - b.0.leading_zeros() || b.0 == 0, "blade outside dimension");
        let mut m = Multivector::zero(dim);
        m.add_term(b, c);
        m
    }

    pub fn basis_vector(dim: u8, i: u8) -> Multivector<R> {
        assert!(i >= 1 && i <= dim, "index outside dimension");
        Multivector::blade(dim, Blade::vector(i), R::one())
    }

    /// Grade-1 element from coordinates.
    pub fn vector(dim: u8, coords: &[R]) -> Multivector<R> {
        assert!(coords.len() == dim as usize, "coordinate count mismatch");
        let mut m = Multivector::zero(dim);
        for (i, c) in coords.iter().enumerate() {
            m.add_term(Blade::vector(i as u8 + 1), c.clone());
        }
        m
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &R)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = Blade> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff(&self, b: Blade) -> R {
        self.terms.get(&b).cloned().unwrap_or_else(R::zero)
    }

    pub fn add_term(&mut self, b: Blade, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&b);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    fn check_dim(&self, o: &Multivector<R>) {
        assert_eq!(self.dim, o.dim, "multivector dimension mismatch");
    }

    pub fn add(&self, o: &Multivector<R>) -> Multivector<R> {
        self.check_dim(o);
        let mut out = self.clone();
        for (b, c) in &o.terms {
            out.add_term(*b, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Multivector<R>) -> Multivector<R> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Multivector<R> {
        Multivector {
            dim: self.dim,
            terms: self.terms.iter().map(|(b, c)| (*b, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Multivector<R> {
        if c.is_zero() {
            return Multivector::zero(self.dim);
        }
        let mut out = Multivector::zero(self.dim);
        for (b, v) in &self.terms {
            out.add_term(*b, v.mul(c));
        }
        out
    }

    /// Divide every coefficient; `None` when the scalar has no inverse.
    pub fn scale_div(&self, c: &R) -> Option<Multivector<R>> {
        c.inv().map(|i| self.scale(&i))
    }

    pub fn map_coeffs<T: Ring>(&self, f: impl Fn(&R) -> T) -> Multivector<T> {
        let mut out = Multivector::zero(self.dim);
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }

    /// Projection onto grade `k`.
    pub fn grade_part(&self, k: u32) -> Result<Multivector<R>> {
        if k > u32::from(self.dim) {
            return Err(Error::InvalidGrade(k as usize, self.dim as usize));
        }
        let mut out = Multivector::zero(self.dim);
        for (b, c) in &self.terms {
            if b.grade() == k {
                out.add_term(*b, c.clone());
            }
        }
        Ok(out)
    }

    /// Coefficient of `Id`.
    pub fn scalar_part(&self) -> R {
        self.coeff(Blade::ID)
    }

    pub fn max_grade(&self) -> u32 {
        self.terms.keys().map(|b| b.grade()).max().unwrap_or(0)
    }

    pub fn is_grade(&self, k: u32) -> bool {
        self.terms.keys().all(|b| b.grade() == k)
    }

    /// Does any blade involve index `i`?
    pub fn involves_index(&self, i: u8) -> bool {
        self.terms.keys().any(|b| b.contains(i))
    }

    /// Dense coefficient vector over the given blade list (missing blades
    /// contribute zero; blades outside the list must not occur).
    pub fn coeff_vec(&self, blades: &[Blade]) -> Result<Vec<R>> {
        let mut out = vec![R::zero(); blades.len()];
        for (b, c) in &self.terms {
            match blades.iter().position(|x| x == b) {
                Some(i) => out[i] = c.clone(),
                None => return Err(Error::NotInSpan),
            }
        }
        Ok(out)
    }

    /// Dense coefficient vector over the full basis, indexed by mask.
    pub fn dense(&self) -> Vec<R> {
        let mut out = vec![R::zero(); 1 << self.dim];
        for (b, c) in &self.terms {
            out[b.0 as usize] = c.clone();
        }
        out
    }

    pub fn from_dense(dim: u8, coeffs: &[R]) -> Multivector<R> {
        assert_eq!(coeffs.len(), 1 << dim);
        let mut out = Multivector::zero(dim);
        for (mask, c) in coeffs.iter().enumerate() {
            out.add_term(Blade(mask as u16), c.clone());
        }
        out
    }

    /// Largest |coefficient| for float-backed residual reporting.
    pub fn max_abs(&self) -> f64 {
        self.terms
            .values()
            .filter_map(|c| c.to_f64())
            .map(f64::abs)
            .fold(0.0, f64::max)
    }
}

impl<R: Ring> fmt::Display for Multivector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, c) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            let cs = c.to_string();
            if b.is_scalar() {
                write!(f, "{cs}*Id")?;
            } else if cs == "1" {
                write!(f, "{b}")?;
            } else if cs.contains(['+', '-', ' ']) && !cs.starts_with('(') {
                write!(f, "({cs})*{b}")?;
            } else {
                write!(f, "{cs}*{b}")?;
            }
        }
        Ok(())
    }
}
