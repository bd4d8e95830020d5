//! Multivariate rational functions over the rationals, with optional
//! constrained symbols (`s^2 = P`).
//!
//! Canonical form: constrained symbols appear with exponent at most one and
//! never in the denominator (they are rationalized away by conjugation), the
//! denominator's leading coefficient is one, and cheap common factors
//! (rational content, monomial content, univariate gcd in a shared single
//! symbol, exact divisibility) are cancelled. Fractions that survive those
//! passes may stay unreduced; equality is decided by cross-multiplication.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::poly::Poly;
use crate::scalar::rational::Rat;
use crate::scalar::symbol::{Symbol, SymbolTable};

#[derive(Clone, Debug)]
pub struct PolyRat {
    table: Arc<SymbolTable>,
    num: Poly,
    den: Poly,
}

impl PolyRat {
    /// Build `num/den` in the given table, canonicalizing. Fails when the
    /// denominator reduces to zero or is a zero divisor.
    pub fn new(table: Arc<SymbolTable>, num: Poly, den: Poly) -> Result<PolyRat> {
        let mut out = PolyRat { table, num, den };
        out.canonicalize()?;
        Ok(out)
    }

    pub fn from_poly(table: Arc<SymbolTable>, num: Poly) -> PolyRat {
        let mut out = PolyRat {
            table,
            num,
            den: Poly::one(),
        };
        out.canonicalize().expect("unit denominator");
        out
    }

    pub fn constant(c: Rat) -> PolyRat {
        PolyRat {
            table: SymbolTable::empty(),
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn var(table: &Arc<SymbolTable>, s: Symbol) -> PolyRat {
        assert!(table.contains(s), "symbol `{s}` not declared in this table");
        PolyRat::from_poly(table.clone(), Poly::var(s))
    }

    pub fn int(n: i64) -> PolyRat {
        PolyRat::constant(Rat::from_i64(n))
    }

    pub fn ratio(num: i64, den: i64) -> PolyRat {
        PolyRat::constant(Rat::from_ratio(num, den))
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero_exact(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        let d = self.den.as_constant()?;
        let n = self.num.as_constant()?;
        n.div_rat(&d)
    }

    pub fn complexity(&self) -> usize {
        self.num.num_terms() + self.den.num_terms()
    }

    fn unify(a: &PolyRat, b: &PolyRat) -> Arc<SymbolTable> {
        SymbolTable::merge(&a.table, &b.table)
            .expect("incompatible symbol tables in scalar arithmetic")
    }

    /// Re-establish the canonical form.
    fn canonicalize(&mut self) -> Result<()> {
        self.num = self.num.reduce_constraints(&self.table);
        self.den = self.den.reduce_constraints(&self.table);
        if self.den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.num.is_zero() {
            self.den = Poly::one();
            return Ok(());
        }
        self.rationalize_denominator()?;
        // cheap cancellations
        let g = self.num.gcd_simple(&self.den);
        let g_is_one = g.as_constant().is_some_and(|c| c.is_one());
        if !g_is_one {
            if let (Some(n), Some(d)) = (self.num.div_exact(&g), self.den.div_exact(&g)) {
                self.num = n;
                self.den = d;
            }
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            self.num = q;
            self.den = Poly::one();
        }
        // make the denominator's leading coefficient one
        let lead = self
            .den
            .leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| Rat::from_i64(1));
        if !lead.is_one() {
            let inv = Rat::from_i64(1).div_rat(&lead).unwrap();
            self.num = self.num.mul_rat(&inv);
            self.den = self.den.mul_rat(&inv);
        }
        Ok(())
    }

    /// Multiply through by conjugates until the denominator is free of
    /// constrained symbols. Fails if the denominator turns out to be a zero
    /// divisor of the quotient ring.
    fn rationalize_denominator(&mut self) -> Result<()> {
        loop {
            let target = self
                .table
                .symbols()
                .iter()
                .rev()
                .copied()
                .find(|&s| self.table.is_constrained(s) && self.den.contains_symbol(s));
            let Some(s) = target else {
                return Ok(());
            };
            let b = self.den.coeff_of_power(s, 1);
            let a = self.den.coeff_of_power(s, 0);
            // den = a + b*s  ->  multiply by (a - b*s)
            let conj = a.sub(&b.mul(&Poly::var(s)));
            let p = self.table.constraint(s).expect("constrained").clone();
            let new_den = a
                .mul(&a)
                .sub(&b.mul(&b).mul(&p))
                .reduce_constraints(&self.table);
            if new_den.is_zero() {
                return Err(Error::DivisionByZero);
            }
            self.num = self.num.mul(&conj).reduce_constraints(&self.table);
            self.den = new_den;
        }
    }

    pub fn add(&self, o: &PolyRat) -> PolyRat {
        let table = Self::unify(self, o);
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        let den = self.den.mul(&o.den);
        PolyRat::new(table, num, den).expect("nonzero denominators are closed under product")
    }

    pub fn sub(&self, o: &PolyRat) -> PolyRat {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> PolyRat {
        PolyRat {
            table: self.table.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &PolyRat) -> PolyRat {
        let table = Self::unify(self, o);
        PolyRat::new(table, self.num.mul(&o.num), self.den.mul(&o.den))
            .expect("nonzero denominators are closed under product")
    }

    pub fn inv(&self) -> Option<PolyRat> {
        if self.num.is_zero() {
            return None;
        }
        PolyRat::new(self.table.clone(), self.den.clone(), self.num.clone()).ok()
    }

    pub fn div(&self, o: &PolyRat) -> Option<PolyRat> {
        let table = Self::unify(self, o);
        if o.num.is_zero() {
            return None;
        }
        PolyRat::new(table, self.num.mul(&o.den), self.den.mul(&o.num)).ok()
    }

    pub fn eq_cross(&self, o: &PolyRat) -> bool {
        if self.num == o.num && self.den == o.den {
            return true;
        }
        let table = match SymbolTable::merge(&self.table, &o.table) {
            Ok(t) => t,
            Err(_) => return false,
        };
        self.num
            .mul(&o.den)
            .sub(&o.num.mul(&self.den))
            .reduce_constraints(&table)
            .is_zero()
    }

    /// Substitute scalars for symbols, re-checking declared constraints.
    ///
    /// A binding for a constrained symbol must satisfy its defining relation
    /// after the other bindings are applied. Constraints of surviving symbols
    /// are rewritten through the bindings, which must keep them polynomial.
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, PolyRat>) -> Result<PolyRat> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        // new table: unbound symbols, constraints rewritten through bindings
        let mut target_table = SymbolTable::empty();
        for v in bindings.values() {
            target_table = SymbolTable::merge(&target_table, &v.table)?;
        }
        let mut builder = SymbolTable::extend(&target_table);
        for &s in self.table.symbols() {
            if bindings.contains_key(&s) {
                continue;
            }
            match self.table.constraint(s) {
                None => {
                    builder.free(s.name());
                }
                Some(p) => {
                    let rewritten = subst_poly(p, bindings, &target_table)?;
                    if !rewritten.den.is_constant() {
                        return Err(Error::InconsistentBinding(s.name().to_owned()));
                    }
                    let d = rewritten.den.as_constant().unwrap();
                    let scaled = rewritten
                        .num
                        .mul_rat(&Rat::from_i64(1).div_rat(&d).unwrap());
                    if scaled.contains_symbol(s) {
                        return Err(Error::InconsistentBinding(s.name().to_owned()));
                    }
                    builder.constrained(s.name(), scaled)?;
                }
            }
        }
        let new_table = builder.freeze();
        // verify bindings of constrained symbols against their relations
        for (&s, v) in bindings {
            if let Some(p) = self.table.constraint(s) {
                let pv = subst_poly(p, bindings, &new_table)?;
                let lhs = v.mul(v);
                if !lhs.eq_cross(&pv) {
                    return Err(Error::InconsistentBinding(s.name().to_owned()));
                }
            }
        }
        let num = subst_poly(&self.num, bindings, &new_table)?;
        let den = subst_poly(&self.den, bindings, &new_table)?;
        num.div(&den).ok_or(Error::DivisionByZero)
    }

    /// Apply `reduce` once more; by construction this is the identity on an
    /// already-canonical value, which the tests assert.
    pub fn reduce(&self) -> PolyRat {
        PolyRat::new(self.table.clone(), self.num.clone(), self.den.clone())
            .expect("canonical value stays canonical")
    }

    /// Square root within the ring: exact perfect squares, or a declared
    /// symbol whose defining relation matches.
    pub fn sqrt(&self) -> Option<PolyRat> {
        if let (Some(n), Some(d)) = (self.num.sqrt_exact(), self.den.sqrt_exact()) {
            return PolyRat::new(self.table.clone(), n, d).ok();
        }
        for (s, p) in self.table.constraints() {
            let cand = PolyRat::from_poly(self.table.clone(), p.clone());
            if cand.eq_cross(self) {
                return Some(PolyRat::var(&self.table, s));
            }
        }
        None
    }

    pub fn to_f64(&self) -> Option<f64> {
        let c = self.as_constant()?;
        c.to_f64()
    }

    /// Evaluate numerically with float values for the symbols.
    pub fn eval_f64(&self, values: &BTreeMap<Symbol, f64>) -> Option<f64> {
        let n = eval_poly(&self.num, values)?;
        let d = eval_poly(&self.den, values)?;
        if d == 0.0 {
            return None;
        }
        Some(n / d)
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.num.degree_in(s).max(self.den.degree_in(s))
    }

    pub fn contains_symbol(&self, s: Symbol) -> bool {
        self.num.contains_symbol(s) || self.den.contains_symbol(s)
    }
}

fn subst_poly(
    p: &Poly,
    bindings: &BTreeMap<Symbol, PolyRat>,
    table: &Arc<SymbolTable>,
) -> Result<PolyRat> {
    let mut out = PolyRat::constant(Rat::from_i64(0));
    for (m, c) in p.terms() {
        let mut term = PolyRat::constant(c.clone());
        for &(s, e) in m.powers() {
            let factor = match bindings.get(&s) {
                Some(v) => v.clone(),
                None => {
                    if !table.contains(s) {
                        return Err(Error::UnknownSymbol(s.name().to_owned()));
                    }
                    PolyRat::var(table, s)
                }
            };
            for _ in 0..e {
                term = term.mul(&factor);
            }
        }
        out = out.add(&term);
    }
    Ok(out)
}

fn eval_poly(p: &Poly, values: &BTreeMap<Symbol, f64>) -> Option<f64> {
    let mut acc = 0.0;
    for (m, c) in p.terms() {
        let mut t = c.to_f64()?;
        for &(s, e) in m.powers() {
            let v = values.get(&s)?;
            t *= v.powi(e as i32);
        }
        acc += t;
    }
    Some(acc)
}

impl PartialEq for PolyRat {
    fn eq(&self, other: &Self) -> bool {
        self.eq_cross(other)
    }
}

impl fmt::Display for PolyRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.as_constant().is_some_and(|c| c.is_one()) {
            return write!(f, "{}", self.num);
        }
        let num_simple = self.num.num_terms() <= 1;
        let den_simple = self.den.num_terms() <= 1 && self.den.total_degree() <= 1;
        match (num_simple, den_simple) {
            (true, true) => write!(f, "{}/{}", self.num, self.den),
            (true, false) => write!(f, "{}/({})", self.num, self.den),
            (false, true) => write!(f, "({})/{}", self.num, self.den),
            (false, false) => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

/// Convenience for building a constraint polynomial out of scalars: the
/// numerator of `v`, which must have a constant denominator.
pub fn constraint_poly(v: &PolyRat) -> Result<Poly> {
    let d = v
        .den()
        .as_constant()
        .ok_or_else(|| Error::Parse("constraint must be polynomial".into()))?;
    Ok(v.num().mul_rat(&Rat::from_i64(1).div_rat(&d).unwrap()))
}
