//! Bilinear forms with cached symmetric/antisymmetric split and per-form
//! blade-product caches.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use once_cell::sync::OnceCell;

use crate::algebra::blade::Blade;
use crate::algebra::multivector::Multivector;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::Ring;

/// Which matrix a contraction pairs vectors with.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FormPart {
    B,
    G,
    A,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// An n-by-n bilinear form `B = g + A` with `g` symmetric and `A`
/// antisymmetric. Also carries lazily computed `det(g)` and blade-product
/// caches for the Clifford products in Cl(B) and Cl(g).
pub struct BilinearForm<R: Ring> {
    dim: u8,
    b: Mat<R>,
    g: Mat<R>,
    a: Mat<R>,
    det_g: OnceCell<R>,
    cache_b: RwLock<HashMap<(u16, u16), Arc<Multivector<R>>>>,
    cache_g: RwLock<HashMap<(u16, u16), Arc<Multivector<R>>>>,
}

impl<R: Ring> BilinearForm<R> {
    pub fn new(b: Mat<R>) -> Result<BilinearForm<R>> {
        if !b.is_square() {
            return Err(Error::NonSquare);
        }
        assert!(b.rows() <= 16, "dimension capped at 16");
        let dim = b.rows() as u8;
        let half = R::from_ratio(1, 2);
        let bt = b.transpose();
        let g = b.add(&bt).scale(&half);
        let a = b.sub(&bt).scale(&half);
        Ok(BilinearForm {
            dim,
            b,
            g,
            a,
            det_g: OnceCell::new(),
            cache_b: RwLock::new(HashMap::new()),
            cache_g: RwLock::new(HashMap::new()),
        })
    }

    /// Diagonal form from the listed entries.
    pub fn diagonal(entries: &[R]) -> BilinearForm<R> {
        let n = entries.len();
        let m = Mat::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                R::zero()
            }
        });
        BilinearForm::new(m).expect("square by construction")
    }

    /// `diag(+1 x p, -1 x q, 0 x d)`.
    pub fn from_signature(p: u32, q: u32, d: u32) -> BilinearForm<R> {
        let mut entries = Vec::new();
        entries.extend(std::iter::repeat_with(|| R::one()).take(p as usize));
        entries.extend(std::iter::repeat_with(|| R::from_i64(-1)).take(q as usize));
        entries.extend(std::iter::repeat_with(R::zero).take(d as usize));
        BilinearForm::diagonal(&entries)
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn matrix(&self) -> &Mat<R> {
        &self.b
    }

    pub fn symmetric_part(&self) -> &Mat<R> {
        &self.g
    }

    pub fn antisymmetric_part(&self) -> &Mat<R> {
        &self.a
    }

    pub fn part(&self, which: FormPart) -> &Mat<R> {
        match which {
            FormPart::B => &self.b,
            FormPart::G => &self.g,
            FormPart::A => &self.a,
        }
    }

    /// Pairing of basis vectors, 1-based.
    pub fn pairing(&self, which: FormPart, i: u8, j: u8) -> R {
        self.part(which)[(i as usize - 1, j as usize - 1)].clone()
    }

    pub fn det_g(&self) -> R {
        self.det_g
            .get_or_init(|| self.g.det().expect("square"))
            .clone()
    }

    pub fn is_degenerate(&self) -> bool {
        self.det_g().is_zero()
    }

    /// The unit pseudoscalar `e_1 ^ ... ^ e_n`.
    pub fn pseudoscalar(&self) -> Multivector<R> {
        Multivector::blade(self.dim, Blade((1u32 << self.dim) as u16 - 1), R::one())
    }

    /// Its inverse in Cl(g): `rev(j) / det(g)`.
    pub fn pseudoscalar_inverse(&self) -> Result<Multivector<R>> {
        let det = self.det_g();
        let inv = det.inv().ok_or(Error::DegenerateMetric)?;
        let n = u32::from(self.dim);
        let sign = if (n * (n - 1) / 2) % 2 == 0 {
            inv
        } else {
            inv.neg()
        };
        Ok(self.pseudoscalar().scale(&sign))
    }

    pub(crate) fn cached_product(
        &self,
        which: FormPart,
        a: Blade,
        b: Blade,
    ) -> Option<Arc<Multivector<R>>> {
        let cache = match which {
            FormPart::B => &self.cache_b,
            FormPart::G => &self.cache_g,
            FormPart::A => return None,
        };
        cache.read().unwrap().get(&(a.0, b.0)).cloned()
    }

    pub(crate) fn store_product(
        &self,
        which: FormPart,
        a: Blade,
        b: Blade,
        value: Arc<Multivector<R>>,
    ) {
        let cache = match which {
            FormPart::B => &self.cache_b,
            FormPart::G => &self.cache_g,
            FormPart::A => return,
        };
        cache.write().unwrap().insert((a.0, b.0), value);
    }
}

impl<R: Ring> std::fmt::Debug for BilinearForm<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BilinearForm")
            .field("dim", &self.dim)
            .field("b", &self.b)
            .finish()
    }
}

/// Split a square matrix into symmetric and antisymmetric parts.
pub fn split_form<R: Ring>(b: &Mat<R>) -> Result<(Mat<R>, Mat<R>)> {
    if !b.is_square() {
        return Err(Error::NonSquare);
    }
    let half = R::from_ratio(1, 2);
    let bt = b.transpose();
    Ok((b.add(&bt).scale(&half), b.sub(&bt).scale(&half)))
}
