//! Interned symbol names and frozen symbol tables.
//!
//! A `Symbol` is a process-wide interned name. Constraint information (the
//! defining relation `s^2 = P`) is *not* global: it lives in a
//! [`SymbolTable`] carried by every symbolic scalar, so two computations may
//! use the same name with different defining relations without interfering.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::scalar::poly::Poly;

static INTERNER: Lazy<RwLock<Interner>> = Lazy::new(|| RwLock::new(Interner::default()));

#[derive(Default)]
struct Interner {
    names: Vec<&'static str>,
    ids: HashMap<&'static str, u32>,
}

/// An interned symbol name. Ordering is by name, not by interning order, so
/// canonical forms do not depend on which computation ran first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symbol(u32);

impl Symbol {
    pub fn new(name: &str) -> Symbol {
        if let Some(&id) = INTERNER.read().unwrap().ids.get(name) {
            return Symbol(id);
        }
        let mut int = INTERNER.write().unwrap();
        if let Some(&id) = int.ids.get(name) {
            return Symbol(id);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        let id = int.names.len() as u32;
        int.names.push(leaked);
        int.ids.insert(leaked, id);
        Symbol(id)
    }

    pub fn name(&self) -> &'static str {
        INTERNER.read().unwrap().names[self.0 as usize]
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self.0 == other.0 {
            return std::cmp::Ordering::Equal;
        }
        self.name().cmp(other.name())
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A frozen, ordered list of symbols with optional quadratic defining
/// relations `s^2 = P`. Constraint polynomials may only mention symbols
/// declared strictly earlier, which guarantees that repeated constraint
/// rewriting terminates.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    order: Vec<Symbol>,
    constraints: BTreeMap<Symbol, Poly>,
}

static EMPTY: Lazy<Arc<SymbolTable>> = Lazy::new(|| Arc::new(SymbolTable::default()));

impl SymbolTable {
    pub fn empty() -> Arc<SymbolTable> {
        EMPTY.clone()
    }

    pub fn builder() -> TableBuilder {
        TableBuilder {
            table: SymbolTable::default(),
        }
    }

    /// Start a builder whose declarations extend an existing table.
    pub fn extend(base: &Arc<SymbolTable>) -> TableBuilder {
        TableBuilder {
            table: SymbolTable {
                order: base.order.clone(),
                constraints: base.constraints.clone(),
            },
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.order
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.order.contains(&s)
    }

    pub fn index_of(&self, s: Symbol) -> Option<usize> {
        self.order.iter().position(|&t| t == s)
    }

    pub fn constraint(&self, s: Symbol) -> Option<&Poly> {
        self.constraints.get(&s)
    }

    pub fn constraints(&self) -> impl Iterator<Item = (Symbol, &Poly)> {
        self.constraints.iter().map(|(s, p)| (*s, p))
    }

    pub fn is_constrained(&self, s: Symbol) -> bool {
        self.constraints.contains_key(&s)
    }

    /// Merge two tables. Succeeds when the union is consistent: shared
    /// symbols must carry identical constraints and every constraint must
    /// still only reference earlier symbols in the merged order.
    pub fn merge(a: &Arc<SymbolTable>, b: &Arc<SymbolTable>) -> Result<Arc<SymbolTable>> {
        if Arc::ptr_eq(a, b) || a.order.is_empty() {
            return Ok(b.clone());
        }
        if b.order.is_empty() || **a == **b {
            return Ok(a.clone());
        }
        if is_prefix(a, b) {
            return Ok(b.clone());
        }
        if is_prefix(b, a) {
            return Ok(a.clone());
        }
        let mut order = a.order.clone();
        for &s in &b.order {
            if !order.contains(&s) {
                order.push(s);
            }
        }
        let mut constraints = a.constraints.clone();
        for (s, p) in &b.constraints {
            match constraints.get(s) {
                Some(existing) if existing != p => {
                    return Err(Error::MixedRings(format!(
                        "conflicting constraints for `{s}`"
                    )))
                }
                Some(_) => {}
                None => {
                    constraints.insert(*s, p.clone());
                }
            }
        }
        let merged = SymbolTable { order, constraints };
        for (s, p) in &merged.constraints {
            let si = merged.index_of(*s).unwrap();
            for t in p.symbols() {
                match merged.index_of(t) {
                    Some(ti) if ti < si => {}
                    _ => {
                        return Err(Error::MixedRings(format!(
                            "constraint for `{s}` references `{t}` out of order"
                        )))
                    }
                }
            }
        }
        Ok(Arc::new(merged))
    }
}

fn is_prefix(shorter: &SymbolTable, longer: &SymbolTable) -> bool {
    shorter.order.len() <= longer.order.len()
        && longer.order[..shorter.order.len()] == shorter.order[..]
        && shorter
            .constraints
            .iter()
            .all(|(s, p)| longer.constraints.get(s) == Some(p))
}

pub struct TableBuilder {
    table: SymbolTable,
}

impl TableBuilder {
    /// Declare a free symbol; returns it unchanged if already present.
    pub fn free(&mut self, name: &str) -> Symbol {
        let s = Symbol::new(name);
        if !self.table.contains(s) {
            self.table.order.push(s);
        }
        s
    }

    /// Declare a symbol with the defining relation `s^2 = p`. The polynomial
    /// may only mention symbols already declared.
    pub fn constrained(&mut self, name: &str, p: Poly) -> Result<Symbol> {
        let s = Symbol::new(name);
        if self.table.contains(s) {
            return match self.table.constraint(s) {
                Some(existing) if *existing == p => Ok(s),
                _ => Err(Error::MixedRings(format!("`{name}` already declared"))),
            };
        }
        for t in p.symbols() {
            if !self.table.contains(t) {
                return Err(Error::UnknownSymbol(t.name().to_owned()));
            }
        }
        self.table.order.push(s);
        self.table.constraints.insert(s, p);
        Ok(s)
    }

    pub fn freeze(self) -> Arc<SymbolTable> {
        Arc::new(self.table)
    }
}
