//! Numeric evaluation of the symmetric-function kernels: elementary and
//! complete symmetric functions, Jacobi–Trudi Schur determinants, the pair
//! polynomials `Q̃_{i,j}`, Pfaffians, `Q̃_λ`, `P̃_λ`, and the action of signed
//! permutations on argument tuples.
//!
//! All kernels take the evaluation point as a slice of complex numbers. Parts
//! are passed as `&[u32]`; trailing zeros are ignored.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::partition::enumerate_strict;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Relative tolerance for the skew-symmetry guard in [`pfaffian`].
pub const SKEW_TOLERANCE: f64 = 1e-12;

/// `[E_0, E_1, …, E_m]` for `m = x.len()`, by multiplying out `∏(1 + x_k t)`.
pub fn elementary_all(x: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![ZERO; x.len() + 1];
    e[0] = ONE;
    for (k, &xk) in x.iter().enumerate() {
        for i in (1..=k + 1).rev() {
            let prev = e[i - 1];
            e[i] += xk * prev;
        }
    }
    e
}

/// `E_i(x)`; zero outside `0..=x.len()`.
pub fn elementary(i: i64, x: &[Complex64]) -> Complex64 {
    if i < 0 || i as usize > x.len() {
        return ZERO;
    }
    elementary_all(x)[i as usize]
}

/// `[H_0, …, H_top]` from `Σ_k (-1)^k E_k H_{i-k} = 0`.
pub fn complete_all(top: usize, x: &[Complex64]) -> Vec<Complex64> {
    let e = elementary_all(x);
    complete_from_elementary(top, &e)
}

fn complete_from_elementary(top: usize, e: &[Complex64]) -> Vec<Complex64> {
    let m = e.len() - 1;
    let mut h = vec![ZERO; top + 1];
    h[0] = ONE;
    for i in 1..=top {
        let mut acc = ZERO;
        for k in 1..=i.min(m) {
            let term = e[k] * h[i - k];
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        h[i] = acc;
    }
    h
}

/// `H_i(x)`; zero for negative `i`.
pub fn complete(i: i64, x: &[Complex64]) -> Complex64 {
    if i < 0 {
        return ZERO;
    }
    complete_all(i as usize, x)[i as usize]
}

fn trimmed(parts: &[u32]) -> Result<&[u32]> {
    if !parts.windows(2).all(|w| w[0] >= w[1]) {
        return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
    }
    let len = parts.iter().take_while(|&&p| p > 0).count();
    Ok(&parts[..len])
}

/// Jacobi–Trudi: `S_λ(x) = det[H_{λ_i + j - i}(x)]`, on the `l × l` block.
pub fn schur(lambda: &[u32], x: &[Complex64]) -> Result<Complex64> {
    let lambda = trimmed(lambda)?;
    let l = lambda.len();
    if l == 0 {
        return Ok(ONE);
    }
    let h = complete_all(lambda[0] as usize + l, x);
    let m = DMatrix::from_fn(l, l, |i, j| {
        let idx = lambda[i] as i64 + j as i64 - i as i64;
        if idx < 0 {
            ZERO
        } else {
            h[idx as usize]
        }
    });
    Ok(m.determinant())
}

/// Precomputed elementary values at one point; evaluates `Q̃_{i,j}` and `Q̃_λ`
/// without recomputing the generating polynomial.
#[derive(Clone, Debug)]
pub(crate) struct Evaluator {
    e: Vec<Complex64>,
}

impl Evaluator {
    pub(crate) fn new(x: &[Complex64]) -> Self {
        Self { e: elementary_all(x) }
    }

    pub(crate) fn e(&self, i: i64) -> Complex64 {
        if i < 0 || i as usize >= self.e.len() {
            ZERO
        } else {
            self.e[i as usize]
        }
    }

    /// `Q̃_{i,j}` for `i ≥ j ≥ 0`.
    pub(crate) fn pair(&self, i: u32, j: u32) -> Complex64 {
        let (i, j) = (i as i64, j as i64);
        let mut acc = self.e(i) * self.e(j);
        for k in 1..=j {
            let term = 2.0 * self.e(i + k) * self.e(j - k);
            if k % 2 == 1 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        acc
    }

    /// `Q̃_λ` for weakly decreasing nonzero parts.
    pub(crate) fn qtilde(&self, parts: &[u32]) -> Complex64 {
        match parts.len() {
            0 => ONE,
            1 => self.e(parts[0] as i64),
            _ => {
                let r = parts.len() + parts.len() % 2;
                let part = |i: usize| parts.get(i).copied().unwrap_or(0);
                let entry = |i: usize, j: usize| self.pair(part(i), part(j));
                let idx: Vec<usize> = (0..r).collect();
                pfaffian_expand(&entry, &idx)
            }
        }
    }

    pub(crate) fn ptilde(&self, parts: &[u32]) -> Complex64 {
        self.qtilde(parts) / f64::powi(2.0, parts.len() as i32)
    }
}

/// First-row expansion over the index set `idx`; `entry(i, j)` is only
/// queried for `i < j` positions in `idx` order.
fn pfaffian_expand<F>(entry: &F, idx: &[usize]) -> Complex64
where
    F: Fn(usize, usize) -> Complex64,
{
    if idx.is_empty() {
        return ONE;
    }
    let first = idx[0];
    let mut total = ZERO;
    for pos in 1..idx.len() {
        let j = idx[pos];
        let a = entry(first, j);
        if a == ZERO {
            continue;
        }
        let rest: Vec<usize> =
            idx.iter().enumerate().filter(|&(k, _)| k != 0 && k != pos).map(|(_, &v)| v).collect();
        let sub = pfaffian_expand(entry, &rest);
        if pos % 2 == 1 {
            total += a * sub;
        } else {
            total -= a * sub;
        }
    }
    total
}

/// `Q̃_{i,j}(x) = Q̃_i Q̃_j + 2 Σ_{k=1}^{j} (-1)^k Q̃_{i+k} Q̃_{j-k}`.
pub fn qtilde_pair(i: u32, j: u32, x: &[Complex64]) -> Result<Complex64> {
    if i < j {
        return Err(Error::InvalidPartition(format!("pair ({i},{j}) needs i >= j")));
    }
    Ok(Evaluator::new(x).pair(i, j))
}

/// Pfaffian of an even-order skew-symmetric matrix, normalized so that
/// `Pf([[0, a], [-a, 0]]) = a`; the empty matrix has Pfaffian 1.
pub fn pfaffian(a: &DMatrix<Complex64>) -> Result<Complex64> {
    let (rows, cols) = a.shape();
    if rows != cols {
        return Err(Error::NotSkew(format!("{rows}x{cols} is not square")));
    }
    if rows % 2 == 1 {
        return Err(Error::NotSkew(format!("order {rows} is odd")));
    }
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let limit = SKEW_TOLERANCE * scale;
    for i in 0..rows {
        for j in i..rows {
            let asym = (a[(i, j)] + a[(j, i)]).norm();
            if asym > limit {
                return Err(Error::NotSkew(format!("|A[{i},{j}] + A[{j},{i}]| = {asym:e}")));
            }
        }
    }
    let idx: Vec<usize> = (0..rows).collect();
    Ok(pfaffian_expand(&|i, j| a[(i, j)], &idx))
}

/// `Q̃_λ(x)`: the Pfaffian of `[Q̃_{λ_i,λ_j}(x)]` over `λ` padded to even length.
pub fn qtilde(lambda: &[u32], x: &[Complex64]) -> Result<Complex64> {
    let lambda = trimmed(lambda)?;
    Ok(Evaluator::new(x).qtilde(lambda))
}

/// `P̃_λ(x) = 2^{-l(λ)} Q̃_λ(x)`.
pub fn ptilde(lambda: &[u32], x: &[Complex64]) -> Result<Complex64> {
    let lambda = trimmed(lambda)?;
    Ok(Evaluator::new(x).ptilde(lambda))
}

/// An element of the hyperoctahedral group `W_m`: a permutation of
/// `{1, …, m}` where each image may carry a bar (a sign flip).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    images: Vec<usize>,
    barred: Vec<bool>,
}

impl SignedPermutation {
    /// `images` are 1-based.
    pub fn new(images: Vec<usize>, barred: Vec<bool>) -> Result<Self> {
        if images.len() != barred.len() {
            return Err(Error::InvalidPermutation("images and bars differ in length".into()));
        }
        let m = images.len();
        let mut seen = vec![false; m];
        for &w in &images {
            if w == 0 || w > m || seen[w - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a permutation")));
            }
            seen[w - 1] = true;
        }
        Ok(Self { images, barred })
    }

    /// Signed one-line notation: `-k` stands for `k̄`, e.g. `[-1, 2, 3]` is `s₀`.
    pub fn from_signed(entries: &[i64]) -> Result<Self> {
        let images = entries.iter().map(|&w| w.unsigned_abs() as usize).collect();
        let barred = entries.iter().map(|&w| w < 0).collect();
        Self::new(images, barred)
    }

    pub fn identity(m: usize) -> Self {
        Self { images: (1..=m).collect(), barred: vec![false; m] }
    }

    /// `s₀ = (1̄, 2, …, m)`.
    pub fn s0(m: usize) -> Self {
        let mut w = Self::identity(m);
        if m > 0 {
            w.barred[0] = true;
        }
        w
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// True for elements of `S_m ⊂ W_m`.
    pub fn is_bar_free(&self) -> bool {
        !self.barred.iter().any(|&b| b)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn barred(&self) -> &[bool] {
        &self.barred
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, (&w, &b)) in self.images.iter().zip(&self.barred).enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            if b {
                f.write_str("-")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}

/// `X^w`: `y_k = x_{w_k}`, negated when `w_k` is barred.
pub fn signed_action(w: &SignedPermutation, x: &[Complex64]) -> Result<Vec<Complex64>> {
    if w.len() != x.len() {
        return Err(Error::ArityMismatch { expected: w.len(), got: x.len() });
    }
    Ok(w.images
        .iter()
        .zip(&w.barred)
        .map(|(&k, &b)| if b { -x[k - 1] } else { x[k - 1] })
        .collect())
}

/// `Σ_{λ ∈ D(n)} P̃_λ(X^w) P̃_λ̂(X)` for `n = x.len()`. Equals `S_{ρ_n}(X)` for
/// bar-free `w` and vanishes otherwise.
pub fn key_identity_sum(w: &SignedPermutation, x: &[Complex64]) -> Result<Complex64> {
    let n = x.len();
    let y = signed_action(w, x)?;
    let classes = enumerate_strict(n)?;
    let (ex, ey) = (Evaluator::new(x), Evaluator::new(&y));
    let full = (1u32 << n) - 1;
    Ok(classes
        .iter()
        .map(|lambda| {
            let hat = crate::partition::StrictPartition::from_mask(full ^ lambda.to_mask());
            ey.ptilde(lambda.parts()) * ex.ptilde(hat.parts())
        })
        .sum())
}
