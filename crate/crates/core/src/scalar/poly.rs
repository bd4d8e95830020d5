//! Multivariate polynomials with arbitrary-precision rational coefficients.
//!
//! Canonical form: monomials sorted by graded lexicographic order (by total
//! degree, then by name within a degree), no zero coefficients stored, and —
//! once a symbol table is applied — constrained symbols reduced to exponent
//! at most one.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::rational::Rat;
use crate::scalar::symbol::{Symbol, SymbolTable};

/// A power product, sorted by symbol with strictly positive exponents.
#[derive(Clone, PartialEq, Eq, Debug, Hash, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol) -> Monomial {
        Monomial(vec![(s, 1)])
    }

    pub fn from_powers(mut powers: Vec<(Symbol, u32)>) -> Monomial {
        powers.retain(|&(_, e)| e > 0);
        powers.sort_by(|a, b| a.0.cmp(&b.0));
        Monomial(powers)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, s: Symbol) -> u32 {
        self.0
            .iter()
            .find(|&&(t, _)| t == s)
            .map_or(0, |&(_, e)| e)
    }

    pub fn powers(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Divide by `other` if every exponent allows it.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(s, e) in &self.0 {
            let mut rem = e;
            while j < other.0.len() && other.0[j].0 < s {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == s {
                if other.0[j].1 > e {
                    return None;
                }
                rem = e - other.0[j].1;
                j += 1;
            }
            if rem > 0 {
                out.push((s, rem));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for &(s, e) in &self.0 {
            let eo = other.exponent(s);
            let m = e.min(eo);
            if m > 0 {
                out.push((s, m));
            }
        }
        Monomial(out)
    }

    /// Exponent-wise k-th root if every exponent is divisible by k.
    pub fn nth_root(&self, k: u32) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for &(s, e) in &self.0 {
            if e % k != 0 {
                return None;
            }
            out.push((s, e / k));
        }
        Some(Monomial(out))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // graded lex, higher degree first so iteration starts at the leader
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| {
                for (a, b) in self.0.iter().zip(other.0.iter()) {
                    match a.0.cmp(&b.0) {
                        std::cmp::Ordering::Equal => {}
                        ord => return ord,
                    }
                    // same symbol: larger exponent sorts first within the grade
                    match b.1.cmp(&a.1) {
                        std::cmp::Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                self.0.len().cmp(&other.0.len())
            })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(s, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A multivariate polynomial over the rationals.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: Rat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero_exact() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::from_i64(1))
    }

    pub fn var(s: Symbol) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(s), Rat::from_i64(1));
        Poly { terms }
    }

    pub fn monomial(m: Monomial, c: Rat) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero_exact() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::from_i64(0));
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term in graded lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        for m in self.terms.keys() {
            for &(s, _) in m.powers() {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        out.sort();
        out
    }

    pub fn contains_symbol(&self, s: Symbol) -> bool {
        self.terms.keys().any(|m| m.exponent(s) > 0)
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    fn insert(&mut self, m: Monomial, c: Rat) {
        if c.is_zero_exact() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = existing.add_rat(&c);
                if sum.is_zero_exact() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg_rat()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert(ma.mul(mb), ca.mul_rat(cb));
            }
        }
        out
    }

    pub fn mul_rat(&self, c: &Rat) -> Poly {
        if c.is_zero_exact() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.mul_rat(c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// View as univariate in `s`: coefficient of `s^k` as a polynomial in the
    /// remaining symbols.
    pub fn coeff_of_power(&self, s: Symbol, k: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if m.exponent(s) == k {
                let rest = Monomial::from_powers(
                    m.powers()
                        .iter()
                        .filter(|&&(t, _)| t != s)
                        .cloned()
                        .collect(),
                );
                out.insert(rest, c.clone());
            }
        }
        out
    }

    /// Rewrite every `s^k` with `k >= 2` using `s^2 = P` for each constrained
    /// symbol of the table. Terminates because constraints reference only
    /// earlier symbols.
    pub fn reduce_constraints(&self, table: &SymbolTable) -> Poly {
        let mut cur = self.clone();
        loop {
            let target = cur.terms.keys().find_map(|m| {
                m.powers()
                    .iter()
                    .find(|&&(s, e)| e >= 2 && table.is_constrained(s))
                    .map(|&(s, _)| s)
            });
            let Some(s) = target else {
                return cur;
            };
            let p = table.constraint(s).expect("constrained").clone();
            let mut next = Poly::zero();
            for (m, c) in &cur.terms {
                let e = m.exponent(s);
                if e < 2 {
                    next.insert(m.clone(), c.clone());
                    continue;
                }
                let rest = Monomial::from_powers(
                    m.powers()
                        .iter()
                        .filter(|&&(t, _)| t != s)
                        .cloned()
                        .collect(),
                );
                let mut repl = p.pow(e / 2).mul_monomial(&rest);
                if e % 2 == 1 {
                    repl = repl.mul(&Poly::var(s));
                }
                for (m2, c2) in repl.terms {
                    next.insert(m2, c2.mul_rat(c));
                }
            }
            cur = next;
        }
    }

    /// Substitute polynomials for symbols; unmentioned symbols are kept.
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for &(s, e) in m.powers() {
                let factor = match bindings.get(&s) {
                    Some(p) => p.pow(e),
                    None => Poly::monomial(Monomial::from_powers(vec![(s, e)]), Rat::from_i64(1)),
                };
                term = term.mul(&factor);
            }
            out = out.add(&term);
        }
        out
    }

    /// Rational content: gcd of the numerators over lcm of the denominators.
    pub fn content(&self) -> Rat {
        let mut it = self.terms.values();
        let Some(first) = it.next() else {
            return Rat::from_i64(0);
        };
        let mut acc = first.clone();
        for c in it {
            acc = acc.gcd_rat(c);
        }
        acc
    }

    /// Common monomial factor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        let mut acc = first.clone();
        for m in it {
            acc = acc.gcd(m);
            if acc.is_one() {
                break;
            }
        }
        acc
    }

    /// Exact multivariate division; `None` when the remainder is non-zero.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        let (dm, dc) = divisor.leading().unwrap();
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        while !rem.is_zero() {
            let (lm, lc) = rem.leading().unwrap();
            let qm = lm.div(&dm)?;
            let qc = lc.div_rat(&dc)?;
            let t = Poly::monomial(qm, qc);
            quo = quo.add(&t);
            rem = rem.sub(&t.mul(divisor));
        }
        Some(quo)
    }

    /// The single symbol this polynomial depends on, if exactly one.
    pub fn univariate_symbol(&self) -> Option<Symbol> {
        let syms = self.symbols();
        if syms.len() == 1 {
            Some(syms[0])
        } else {
            None
        }
    }

    /// Dense coefficient list (ascending powers) when univariate in `s`.
    pub fn univariate_coeffs(&self, s: Symbol) -> Option<Vec<Rat>> {
        let mut out = vec![Rat::from_i64(0); self.degree_in(s) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            let rest: u32 = m
                .powers()
                .iter()
                .filter(|&&(t, _)| t != s)
                .map(|&(_, e)| e)
                .sum();
            if rest > 0 {
                return None;
            }
            out[e as usize] = c.clone();
        }
        Some(out)
    }

    pub fn from_univariate(s: Symbol, coeffs: &[Rat]) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            out.insert(Monomial::from_powers(vec![(s, e as u32)]), c.clone());
        }
        out
    }

    /// Polynomial gcd, restricted to what the simplifier needs: rational
    /// content, common monomial factors, and the full Euclidean gcd when both
    /// operands are univariate in the same symbol.
    pub fn gcd_simple(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mono = self.monomial_content().gcd(&other.monomial_content());
        let mut acc = Poly::monomial(mono.clone(), Rat::from_i64(1));
        let a = self.div_exact(&acc).unwrap();
        let b = other.div_exact(&acc).unwrap();
        if let (Some(sa), Some(sb)) = (a.univariate_symbol(), b.univariate_symbol()) {
            if sa == sb {
                let g = univariate_gcd(&a, &b, sa);
                acc = acc.mul(&g);
            }
        } else if a.is_constant() || b.is_constant() {
            // constant gcd only
        } else if a == b {
            acc = acc.mul(&a);
        }
        acc
    }

    /// Exact square root of a perfect-square polynomial.
    pub fn sqrt_exact(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = self.as_constant() {
            return c.sqrt_exact().map(Poly::constant);
        }
        // pull out the monomial content first
        let mono = self.monomial_content();
        if !mono.is_one() {
            let root = mono.nth_root(2)?;
            let rest = self.div_exact(&Poly::monomial(mono, Rat::from_i64(1)))?;
            return Some(rest.sqrt_exact()?.mul_monomial(&root));
        }
        // long-division square root in the first symbol present
        let s = *self.symbols().first()?;
        let deg = self.degree_in(s);
        if deg % 2 != 0 {
            return None;
        }
        let half = deg / 2;
        let lead = self.coeff_of_power(s, deg);
        let lead_root = lead.sqrt_exact()?;
        let mut root = lead_root.mul(&Poly::var(s).pow(half));
        let two = Poly::constant(Rat::from_i64(2));
        for k in (0..half).rev() {
            // choose coefficient of s^k in the root so that the s^(half+k)
            // coefficient of root^2 matches
            let cur = self.sub(&root.mul(&root));
            if cur.is_zero() {
                break;
            }
            let target = cur.coeff_of_power(s, half + k);
            let denom = two.mul(&lead_root);
            let coeff = target.div_exact(&denom)?;
            root = root.add(&coeff.mul(&Poly::var(s).pow(k)));
        }
        if root.mul(&root) == *self {
            Some(root)
        } else {
            None
        }
    }
}

/// Euclidean gcd for polynomials univariate in `s`, made monic.
fn univariate_gcd(a: &Poly, b: &Poly, s: Symbol) -> Poly {
    let mut ca = a.univariate_coeffs(s).expect("univariate");
    let mut cb = b.univariate_coeffs(s).expect("univariate");
    trim(&mut ca);
    trim(&mut cb);
    while !cb.is_empty() {
        let r = poly_rem(&ca, &cb);
        ca = cb;
        cb = r;
    }
    if ca.is_empty() {
        return Poly::zero();
    }
    let lead = ca.last().unwrap().clone();
    for c in &mut ca {
        *c = c.div_rat(&lead).unwrap();
    }
    Poly::from_univariate(s, &ca)
}

fn trim(v: &mut Vec<Rat>) {
    while v.last().is_some_and(|c| c.is_zero_exact()) {
        v.pop();
    }
}

fn poly_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = &b[db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let factor = rem[dr].div_rat(lead).unwrap();
        for i in 0..=db {
            let t = factor.mul_rat(&b[i]);
            rem[dr - db + i] = rem[dr - db + i].sub_rat(&t);
        }
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    rem
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let mag = if neg { c.neg_rat() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == Rat::from_i64(1) {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
