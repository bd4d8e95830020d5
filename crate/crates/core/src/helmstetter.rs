//! The bivector F deforming Cl(g) into Cl(B), and the identity expressing
//! the Cl(B) product through Cl(g) operations:
//!
//! `u o_B v = ((u |_g e^F) o_g (v |_g e^F)) |_g e^(-F)`
//!
//! with `|_g` the right contraction in Cl(g) and `e^F` the exterior
//! exponential.

use rand::Rng;

use crate::algebra::{
    cmul, cmulg, contract, wexp, BilinearForm, Blade, FormPart, Multivector, Side,
};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::Ring;

/// Construct the grade-2 element
/// `F = -sum_{K,L} (-1)^{|pi(K,L)|} A_K (e_L o_g j^{-1})`,
/// summing over two-element K with ordered complement L, where |pi(K,L)| is
/// the parity of the permutation sorting `[k1,k2,l1,...,ls]`.
pub fn make_f<R: Ring>(form: &BilinearForm<R>) -> Result<Multivector<R>> {
    let n = form.dim();
    let jinv = form.pseudoscalar_inverse()?;
    let mut f = Multivector::zero(n);
    for k1 in 1..=n {
        for k2 in k1 + 1..=n {
            let a_k = form.pairing(FormPart::A, k1, k2);
            if a_k.is_zero() {
                continue;
            }
            let l: Vec<u8> = (1..=n).filter(|&i| i != k1 && i != k2).collect();
            let mut perm: Vec<u8> = vec![k1, k2];
            perm.extend_from_slice(&l);
            let mut inversions = 0usize;
            for x in 0..perm.len() {
                for y in x + 1..perm.len() {
                    if perm[x] > perm[y] {
                        inversions += 1;
                    }
                }
            }
            let e_l = Multivector::blade(n, Blade::from_indices(&l), R::one());
            let term = cmulg(&e_l, &jinv, form).scale(&a_k);
            // the global sign folds in the -1 relating F to the raw sum
            if inversions % 2 == 0 {
                f = f.sub(&term);
            } else {
                f = f.add(&term);
            }
        }
    }
    debug_assert!(f.is_zero() || f.is_grade(2));
    Ok(f)
}

/// The residual `cmul(u,v) - RCg(cmulg(RCg(u,F1), RCg(v,F1)), F2)`; zero on
/// every valid form.
pub fn check_identity<R: Ring>(
    u: &Multivector<R>,
    v: &Multivector<R>,
    form: &BilinearForm<R>,
) -> Result<Multivector<R>> {
    let f = make_f(form)?;
    let n_exp = u32::from(form.dim()) / 2;
    let f1 = wexp(&f, n_exp);
    let f2 = wexp(&f.neg(), n_exp);
    let rcg = |x: &Multivector<R>, y: &Multivector<R>| {
        contract(x, y, form, FormPart::G, Side::Right)
    };
    let lhs = cmul(u, v, form);
    let rhs = rcg(&cmulg(&rcg(u, &f1), &rcg(v, &f1), form), &f2);
    Ok(lhs.sub(&rhs))
}

/// Outcome of one deformation check.
#[derive(Debug)]
pub struct HelmstetterCheck<R: Ring> {
    pub dim: u8,
    pub f: Multivector<R>,
    pub f1: Multivector<R>,
    pub f2: Multivector<R>,
    pub residual: Multivector<R>,
}

pub fn run_check<R: Ring>(
    u: &Multivector<R>,
    v: &Multivector<R>,
    form: &BilinearForm<R>,
) -> Result<HelmstetterCheck<R>> {
    let f = make_f(form)?;
    let n_exp = u32::from(form.dim()) / 2;
    Ok(HelmstetterCheck {
        dim: form.dim(),
        f1: wexp(&f, n_exp),
        f2: wexp(&f.neg(), n_exp),
        f,
        residual: check_identity(u, v, form)?,
    })
}

/// A random bilinear form with small rational entries and nondegenerate
/// symmetric part.
pub fn random_form<R: Ring>(n: u8, rng: &mut impl Rng) -> BilinearForm<R> {
    loop {
        let m = Mat::from_fn(n as usize, n as usize, |_, _| {
            R::from_i64(rng.gen_range(-9..=9))
        });
        let form = BilinearForm::new(m).expect("square");
        if !form.is_degenerate() {
            return form;
        }
    }
}

/// A random multivector with small integer coefficients.
pub fn random_multivector<R: Ring>(n: u8, rng: &mut impl Rng) -> Multivector<R> {
    let mut out = Multivector::zero(n);
    for mask in 0..(1u32 << n) {
        let c: i64 = rng.gen_range(-9..=9);
        out.add_term(Blade(mask as u16), R::from_i64(c));
    }
    out
}

/// The worked numeric example: `B = [[4,8,3],[0,9,5],[-2,1,7]]` with
/// `u = 2 + e1 - e23 + e123` and `v = 3 - e3 + e12 + e23`.
pub fn paper_example<R: Ring>() -> (BilinearForm<R>, Multivector<R>, Multivector<R>) {
    let entries: [[i64; 3]; 3] = [[4, 8, 3], [0, 9, 5], [-2, 1, 7]];
    let m = Mat::from_fn(3, 3, |i, j| R::from_i64(entries[i][j]));
    let form = BilinearForm::new(m).expect("square");
    let mut u = Multivector::scalar(3, R::from_i64(2));
    u.add_term(Blade::from_indices(&[1]), R::one());
    u.add_term(Blade::from_indices(&[2, 3]), R::from_i64(-1));
    u.add_term(Blade::from_indices(&[1, 2, 3]), R::one());
    let mut v = Multivector::scalar(3, R::from_i64(3));
    v.add_term(Blade::from_indices(&[3]), R::from_i64(-1));
    v.add_term(Blade::from_indices(&[1, 2]), R::one());
    v.add_term(Blade::from_indices(&[2, 3]), R::one());
    (form, u, v)
}

/// Expected product of the worked example.
pub fn paper_example_product<R: Ring>() -> Multivector<R> {
    let mut p = Multivector::scalar(3, R::from_i64(79));
    p.add_term(Blade::from_indices(&[1]), R::from_i64(-81));
    p.add_term(Blade::from_indices(&[2]), R::from_i64(81));
    p.add_term(Blade::from_indices(&[3]), R::from_i64(-48));
    p.add_term(Blade::from_indices(&[1, 2]), R::from_i64(-6));
    p.add_term(Blade::from_indices(&[1, 3]), R::from_i64(13));
    p.add_term(Blade::from_indices(&[1, 2, 3]), R::from_i64(-8));
    p
}

/// Fully symbolic check at the given dimension: symbolic B (as g+A entries)
/// and symbolic u, v coefficients. Returns the residual, which must vanish
/// identically in the rational-function ring.
pub fn symbolic_check(n: u8) -> Result<Multivector<crate::scalar::PolyRat>> {
    use crate::scalar::{PolyRat, SymbolTable};
    if n > 4 {
        return Err(Error::DimMismatch(
            "symbolic verification capped at dimension 4".into(),
        ));
    }
    let mut builder = SymbolTable::builder();
    let mut g_syms = vec![vec![None; n as usize]; n as usize];
    let mut a_syms = vec![vec![None; n as usize]; n as usize];
    for i in 0..n as usize {
        for j in i..n as usize {
            g_syms[i][j] = Some(builder.free(&format!("g{}{}", i + 1, j + 1)));
            if j > i {
                a_syms[i][j] = Some(builder.free(&format!("A{}{}", i + 1, j + 1)));
            }
        }
    }
    let u_syms: Vec<_> = (0..(1u32 << n))
        .map(|k| builder.free(&format!("uu{k}")))
        .collect();
    let v_syms: Vec<_> = (0..(1u32 << n))
        .map(|k| builder.free(&format!("vv{k}")))
        .collect();
    let table = builder.freeze();
    let b = Mat::from_fn(n as usize, n as usize, |i, j| {
        let (gi, gj) = if i <= j { (i, j) } else { (j, i) };
        let g = PolyRat::var(&table, g_syms[gi][gj].unwrap());
        if i == j {
            return g;
        }
        let a = PolyRat::var(&table, a_syms[gi][gj].unwrap());
        if i < j {
            g.add(&a)
        } else {
            g.sub(&a)
        }
    });
    let form = BilinearForm::new(b)?;
    let mut u = Multivector::zero(n);
    let mut v = Multivector::zero(n);
    for mask in 0..(1u32 << n) {
        u.add_term(Blade(mask as u16), PolyRat::var(&table, u_syms[mask as usize]));
        v.add_term(Blade(mask as u16), PolyRat::var(&table, v_syms[mask as usize]));
    }
    check_identity(&u, &v, &form)
}
