//! Parameter solving inside multivector equations, linear-independence
//! filtering, and minimal polynomials.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{cmul, BilinearForm, Multivector};
use crate::error::{Error, Result};
use crate::linalg::{row_reduce, Mat, RankTracker};
use crate::scalar::{constraint_poly, Poly, PolyRat, Rat, Ring, Symbol, SymbolTable};

/// The solutions of a multivector equation `expr = 0` in the given
/// parameters. Each branch maps every parameter to a scalar expression;
/// free parameters map to themselves.
#[derive(Clone, Debug)]
pub struct SolutionSet {
    pub branches: Vec<BTreeMap<Symbol, PolyRat>>,
}

impl SolutionSet {
    pub fn empty() -> SolutionSet {
        SolutionSet {
            branches: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    /// Number of parameters a branch leaves free (mapped to themselves).
    pub fn free_params(branch: &BTreeMap<Symbol, PolyRat>) -> Vec<Symbol> {
        branch
            .iter()
            .filter(|(s, v)| {
                v.num() == &Poly::var(**s) && v.den().as_constant().is_some_and(|c| c.is_one())
            })
            .map(|(s, _)| *s)
            .collect()
    }
}

/// Substitute a branch into a multivector.
pub fn substitute_mv(
    u: &Multivector<PolyRat>,
    bindings: &BTreeMap<Symbol, PolyRat>,
) -> Result<Multivector<PolyRat>> {
    let mut out = Multivector::zero(u.dim());
    for (b, c) in u.terms() {
        out.add_term(*b, c.substitute(bindings)?);
    }
    Ok(out)
}

/// Split a scalar into its affine parts with respect to the parameters:
/// `c = c0 + sum_i c_i K_i`. Errors when any coefficient has total degree
/// two or more in the parameters, or a parameter occurs in a denominator.
fn split_affine(c: &PolyRat, params: &[Symbol]) -> Result<(PolyRat, Vec<PolyRat>)> {
    for &p in params {
        if c.den().contains_symbol(p) {
            return Err(Error::NonlinearInParams(p.name().to_owned()));
        }
    }
    let table = c.table().clone();
    let mut constant = Poly::zero();
    let mut linear = vec![Poly::zero(); params.len()];
    for (m, coeff) in c.num().terms() {
        let mut hits = Vec::new();
        for &(s, e) in m.powers() {
            if let Some(idx) = params.iter().position(|&p| p == s) {
                if e >= 2 {
                    return Err(Error::NonlinearInParams(s.name().to_owned()));
                }
                hits.push(idx);
            }
        }
        match hits.len() {
            0 => constant = constant.add(&Poly::monomial(m.clone(), coeff.clone())),
            1 => {
                let idx = hits[0];
                let rest = crate::scalar::Monomial::from_powers(
                    m.powers()
                        .iter()
                        .filter(|&&(s, _)| s != params[idx])
                        .cloned()
                        .collect(),
                );
                linear[idx] = linear[idx].add(&Poly::monomial(rest, coeff.clone()));
            }
            _ => return Err(Error::NonlinearInParams(m.to_string())),
        }
    }
    let den = c.den().clone();
    let c0 = PolyRat::new(table.clone(), constant, den.clone())?;
    let cs = linear
        .into_iter()
        .map(|p| PolyRat::new(table.clone(), p, den.clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok((c0, cs))
}

/// Solve `expr = 0` for parameters appearing affinely in its coefficients.
///
/// Collects the coefficient of each blade, Gauss-eliminates over the
/// fraction field in the remaining symbols, and returns the affine solution
/// space as a single substitution branch (pivot parameters expressed in the
/// free ones, free parameters mapped to themselves), or no branch at all
/// when the system is inconsistent.
pub fn clisolve_linear(
    expr: &Multivector<PolyRat>,
    params: &[Symbol],
) -> Result<SolutionSet> {
    let mut rows: Vec<Vec<PolyRat>> = Vec::new();
    for (_, c) in expr.terms() {
        let (c0, cs) = split_affine(c, params)?;
        let mut row = cs;
        row.push(c0.neg()); // A x = -c0
        rows.push(row);
    }
    if rows.is_empty() {
        // identically zero: everything is free
        let branch = params
            .iter()
            .map(|&p| (p, var_of(expr, p)))
            .collect::<BTreeMap<_, _>>();
        return Ok(SolutionSet {
            branches: vec![branch],
        });
    }
    let ncols = params.len() + 1;
    let mat = Mat::from_fn(rows.len(), ncols, |i, j| rows[i][j].clone());
    let ech = row_reduce(mat, params.len())?;
    // inconsistent row?
    for i in 0..ech.mat.rows() {
        if (0..params.len()).all(|j| ech.mat[(i, j)].is_zero())
            && !ech.mat[(i, params.len())].is_zero()
        {
            return Ok(SolutionSet::empty());
        }
    }
    let mut branch: BTreeMap<Symbol, PolyRat> = BTreeMap::new();
    for (&p, j) in params.iter().zip(0..) {
        if let Some(row) = ech.pivots.iter().position(|&c| c == j) {
            // pivot: value = rhs - sum over free columns
            let mut val = ech.mat[(row, params.len())].clone();
            for (k, &param) in params.iter().enumerate() {
                if k == j || ech.pivots.contains(&k) {
                    continue;
                }
                let coeff = ech.mat[(row, k)].clone();
                if !coeff.is_zero() {
                    val = val.sub(&coeff.mul(&var_of(expr, param)));
                }
            }
            branch.insert(p, val);
        } else {
            branch.insert(p, var_of(expr, p));
        }
    }
    // every returned substitution must send the source expression to zero
    let check = substitute_mv(expr, &branch)?;
    assert!(
        check.is_zero(),
        "solver postcondition violated: residual {check}"
    );
    Ok(SolutionSet {
        branches: vec![branch],
    })
}

fn var_of(expr: &Multivector<PolyRat>, s: Symbol) -> PolyRat {
    // pick any coefficient's table to anchor the symbol
    for (_, c) in expr.terms() {
        if c.table().contains(s) {
            return PolyRat::var(c.table(), s);
        }
    }
    // fall back to a fresh table containing only the symbol
    let mut b = SymbolTable::builder();
    b.free(s.name());
    let t = b.freeze();
    PolyRat::var(&t, s)
}

/// Equations as scalars for the branching quadratic solver.
#[derive(Clone)]
struct QuadState {
    equations: Vec<PolyRat>,
    bindings: BTreeMap<Symbol, PolyRat>,
    params: Vec<Symbol>,
}

/// Solve `expr = 0` where each blade coefficient has total degree at most
/// two in at most three parameters. Works by linear elimination where a
/// parameter occurs affinely, by branching on factored or quadratic
/// univariate equations otherwise; introduces a constrained symbol when a
/// square root of a non-square is required.
pub fn clisolve_quadratic(
    expr: &Multivector<PolyRat>,
    params: &[Symbol],
) -> Result<SolutionSet> {
    if params.len() > 3 {
        return Err(Error::UnsupportedSystem);
    }
    for (_, c) in expr.terms() {
        for &p in params {
            if c.den().contains_symbol(p) {
                return Err(Error::UnsupportedSystem);
            }
            if c.num().degree_in(p) > 2 {
                return Err(Error::UnsupportedSystem);
            }
        }
    }
    let equations: Vec<PolyRat> = expr.terms().map(|(_, c)| c.clone()).collect();
    let state = QuadState {
        equations,
        bindings: params.iter().map(|&p| (p, var_of(expr, p))).collect(),
        params: params.to_vec(),
    };
    let mut branches = Vec::new();
    solve_quad_rec(state, 0, &mut branches)?;
    // verify and deduplicate
    let mut verified: Vec<BTreeMap<Symbol, PolyRat>> = Vec::new();
    for b in branches {
        let check = substitute_mv(expr, &b)?;
        if !check.is_zero() {
            continue;
        }
        if !verified.iter().any(|v| v == &b) {
            verified.push(b);
        }
    }
    Ok(SolutionSet {
        branches: verified,
    })
}

fn solve_quad_rec(
    state: QuadState,
    depth: usize,
    out: &mut Vec<BTreeMap<Symbol, PolyRat>>,
) -> Result<()> {
    if depth > 12 {
        return Err(Error::UnsupportedSystem);
    }
    // drop satisfied equations; bail out on unsatisfiable constant ones
    let mut eqs = Vec::new();
    for e in &state.equations {
        if e.is_zero_exact() {
            continue;
        }
        if state.params.iter().all(|&p| !e.contains_symbol(p)) {
            return Ok(()); // nonzero constant: dead branch
        }
        eqs.push(e.clone());
    }
    if eqs.is_empty() {
        out.push(state.bindings);
        return Ok(());
    }
    // prefer an equation involving exactly one parameter
    let single = eqs.iter().position(|e| {
        state
            .params
            .iter()
            .filter(|&&p| e.contains_symbol(p))
            .count()
            == 1
    });
    if let Some(i) = single {
        let eq = eqs[i].clone();
        let p = *state
            .params
            .iter()
            .find(|&&p| eq.contains_symbol(p))
            .unwrap();
        let roots = univariate_roots(&eq, p)?;
        for root in roots {
            apply_and_recurse(&state, &eqs, p, root, depth, out)?;
        }
        return Ok(());
    }
    // otherwise find an equation affine in some parameter and branch on its
    // leading coefficient being invertible or zero
    for (idx, eq) in eqs.iter().enumerate() {
        for &p in &state.params {
            if eq.num().degree_in(p) != 1 || eq.den().contains_symbol(p) {
                continue;
            }
            let c1 = PolyRat::new(
                eq.table().clone(),
                eq.num().coeff_of_power(p, 1),
                eq.den().clone(),
            )?;
            let c0 = PolyRat::new(
                eq.table().clone(),
                eq.num().coeff_of_power(p, 0),
                eq.den().clone(),
            )?;
            // generic branch: p = -c0/c1
            if let Some(v) = c0.neg().div(&c1) {
                apply_and_recurse(&state, &eqs, p, v, depth, out)?;
            }
            // degenerate branch: c1 = 0 and hence c0 = 0; the original
            // equation is implied and dropped
            let mut degen = state.clone();
            degen.equations = eqs
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != idx)
                .map(|(_, e)| e.clone())
                .collect();
            degen.equations.push(c1);
            degen.equations.push(c0);
            solve_quad_rec(degen, depth + 1, out)?;
            return Ok(());
        }
    }
    Err(Error::UnsupportedSystem)
}

fn apply_and_recurse(
    state: &QuadState,
    eqs: &[PolyRat],
    p: Symbol,
    value: PolyRat,
    depth: usize,
    out: &mut Vec<BTreeMap<Symbol, PolyRat>>,
) -> Result<()> {
    let mut sub = BTreeMap::new();
    sub.insert(p, value.clone());
    let mut next = QuadState {
        equations: Vec::with_capacity(eqs.len()),
        bindings: BTreeMap::new(),
        params: state.params.iter().copied().filter(|&s| s != p).collect(),
    };
    for e in eqs {
        next.equations.push(e.substitute(&sub)?);
    }
    for (s, v) in &state.bindings {
        if *s == p {
            next.bindings.insert(*s, value.clone());
        } else {
            next.bindings.insert(*s, v.substitute(&sub)?);
        }
    }
    solve_quad_rec(next, depth + 1, out)
}

/// Roots of an equation involving a single parameter, degree at most two.
fn univariate_roots(eq: &PolyRat, p: Symbol) -> Result<Vec<PolyRat>> {
    let table = eq.table().clone();
    let num = eq.num();
    match num.degree_in(p) {
        0 => Ok(Vec::new()),
        1 => {
            let c1 = PolyRat::from_poly(table.clone(), num.coeff_of_power(p, 1));
            let c0 = PolyRat::from_poly(table, num.coeff_of_power(p, 0));
            Ok(c0
                .neg()
                .div(&c1)
                .map(|v| vec![v])
                .unwrap_or_default())
        }
        2 => {
            let a = PolyRat::from_poly(table.clone(), num.coeff_of_power(p, 2));
            let b = PolyRat::from_poly(table.clone(), num.coeff_of_power(p, 1));
            let c = PolyRat::from_poly(table.clone(), num.coeff_of_power(p, 0));
            let two_a = a.mul(&PolyRat::int(2));
            let disc = b.mul(&b).sub(&a.mul(&c).mul(&PolyRat::int(4)));
            if disc.is_zero_exact() {
                return Ok(b
                    .neg()
                    .div(&two_a)
                    .map(|v| vec![v])
                    .unwrap_or_default());
            }
            let root = match disc.sqrt() {
                Some(r) => r,
                None => mint_sqrt(&disc)?,
            };
            let mut roots = Vec::new();
            if let Some(r1) = b.neg().add(&root).div(&two_a) {
                roots.push(r1);
            }
            if let Some(r2) = b.neg().sub(&root).div(&two_a) {
                roots.push(r2);
            }
            Ok(roots)
        }
        _ => Err(Error::UnsupportedSystem),
    }
}

/// Extend the table with a fresh constrained symbol `s` with `s^2 = disc`.
fn mint_sqrt(disc: &PolyRat) -> Result<PolyRat> {
    let p = constraint_poly(disc).map_err(|_| Error::UnsupportedSystem)?;
    let mut n = disc.table().symbols().len();
    let name = loop {
        let candidate = format!("_rt{n}");
        if !disc.table().contains(Symbol::new(&candidate)) {
            break candidate;
        }
        n += 1;
    };
    let mut builder = SymbolTable::extend(disc.table());
    let s = builder.constrained(&name, p)?;
    let table = builder.freeze();
    Ok(PolyRat::var(&table, s))
}

/// Greedy left-to-right rank filter: keep an element iff it increases the
/// rank of the coefficient matrix. The returned sublist spans the input.
pub fn findbasis<R: Ring>(list: &[Multivector<R>]) -> Vec<Multivector<R>> {
    let Some(first) = list.first() else {
        return Vec::new();
    };
    let dim = first.dim();
    let mut tracker = RankTracker::new(1 << dim);
    let mut out = Vec::new();
    for mv in list {
        assert_eq!(mv.dim(), dim, "multivector dimension mismatch");
        if tracker.insert(mv.dense()) {
            out.push(mv.clone());
        }
    }
    out
}

/// Minimal polynomial of `u` in Cl(B): the least `d` such that
/// `Id, u, ..., u^d` are linearly dependent. Returns the monic coefficients
/// `c_0 .. c_d` (ascending, `c_d = 1`) with `p(u) = 0`.
pub fn climinpoly<R: Ring>(
    u: &Multivector<R>,
    form: &BilinearForm<R>,
) -> Result<Vec<R>> {
    let dim = u.dim();
    assert_eq!(dim, form.dim(), "form dimension mismatch");
    let width = 1usize << dim;
    let mut powers: Vec<Multivector<R>> = vec![Multivector::one(dim)];
    let mut tracker = RankTracker::new(width);
    loop {
        let latest = powers.last().unwrap().clone();
        if !tracker.insert(latest.dense()) {
            // u^d depends on lower powers: solve for the combination
            let d = powers.len() - 1;
            let gens: Vec<Vec<R>> = powers[..d].iter().map(|p| p.dense()).collect();
            let target = powers[d].dense();
            let combo = RankTracker::coordinates_in(&gens, &target)?
                .expect("dependence detected but no solution found");
            let mut coeffs: Vec<R> = combo.into_iter().map(|c| c.neg()).collect();
            coeffs.push(R::one());
            return Ok(coeffs);
        }
        let next = cmul(powers.last().unwrap(), u, form);
        powers.push(next);
        if powers.len() > width + 1 {
            return Err(Error::UnsupportedSystem);
        }
    }
}

/// Evaluate a monic polynomial (ascending coefficients) at `u`.
pub fn eval_poly_at<R: Ring>(
    coeffs: &[R],
    u: &Multivector<R>,
    form: &BilinearForm<R>,
) -> Multivector<R> {
    let mut acc = Multivector::zero(u.dim());
    let mut power = Multivector::one(u.dim());
    for c in coeffs {
        acc = acc.add(&power.scale(c));
        power = cmul(&power, u, form);
    }
    acc
}

/// Convenience: solution branches of `u = 0` for `params`, as multivectors.
pub fn branch_substitutions(
    sol: &SolutionSet,
    x: &Multivector<PolyRat>,
) -> Result<Vec<Multivector<PolyRat>>> {
    sol.branches.iter().map(|b| substitute_mv(x, b)).collect()
}

/// A symbol table holding the first `n` entries of `K1..Kn`-style parameter
/// families, extending `base`.
pub fn param_symbols(
    base: &Arc<SymbolTable>,
    prefix: &str,
    n: usize,
) -> (Arc<SymbolTable>, Vec<Symbol>) {
    let mut builder = SymbolTable::extend(base);
    let syms: Vec<Symbol> = (1..=n)
        .map(|i| builder.free(&format!("{prefix}{i}")))
        .collect();
    (builder.freeze(), syms)
}

/// Fraction-field rational constant helper for tests and callers.
pub fn rat_const(n: i64, d: i64) -> Rat {
    Rat::from_ratio(n, d)
}
