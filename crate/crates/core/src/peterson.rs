//! The finite point sets of the `q = 1` Peterson varieties of `OG(n)` and `LG(n)`.
//!
//! A point is `t·ζ^I` where `ζ = e^{πi/m}`, `I` is an exclusive `m`-tuple of
//! (possibly half-integer) exponents and `t` is the scale that makes the
//! quantum parameter evaluate to 1. Exponents are stored doubled so that all
//! set-level classification (exclusivity, parity, closedness, signed
//! permutations between tuples) is integer arithmetic modulo `4m`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symfun::{elementary_all, SignedPermutation};

/// Largest tuple order [`enumerate_exclusive`] accepts.
pub const MAX_TUPLE_ORDER: usize = 16;

/// Which Grassmannian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Odd orthogonal Grassmannian `OG(n)`, classes `τ_λ`.
    Og,
    /// Lagrangian Grassmannian `LG(n)`, classes `σ_λ`.
    Lg,
}

impl Kind {
    /// Number of roots in each point tuple: `n` for `OG(n)`, `n + 1` for `LG(n)`.
    pub fn tuple_order(self, n: usize) -> usize {
        match self {
            Kind::Og => n,
            Kind::Lg => n + 1,
        }
    }

    /// `ε = 4^{1/2n}` or `δ = (1/2)^{1/(n+1)}`.
    pub fn scale(self, n: usize) -> f64 {
        match self {
            Kind::Og => 4f64.powf(1.0 / (2 * n) as f64),
            Kind::Lg => 0.5f64.powf(1.0 / (n + 1) as f64),
        }
    }

    /// Fano index: `2n` for `OG(n)`, `n + 1` for `LG(n)`.
    pub fn fano_index(self, n: usize) -> usize {
        match self {
            Kind::Og => 2 * n,
            Kind::Lg => n + 1,
        }
    }

    /// Cohomological degree of `q` (in units of `H^2`); equal to the Fano index.
    pub fn q_degree(self, n: usize) -> u32 {
        self.fano_index(n) as u32
    }

    /// `τ` for `OG`, `σ` for `LG`.
    pub fn class_symbol(self) -> &'static str {
        match self {
            Kind::Og => "τ",
            Kind::Lg => "σ",
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Og => "og",
            Kind::Lg => "lg",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "og" => Ok(Kind::Og),
            "lg" => Ok(Kind::Lg),
            _ => Err(Error::RingMismatch(format!("unknown kind {s:?} (expected og or lg)"))),
        }
    }
}

/// `e` when `E_m(ζ^I) = 1`, `o` when `E_m(ζ^I) = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    #[serde(rename = "e")]
    Even,
    #[serde(rename = "o")]
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "e",
            Parity::Odd => "o",
        })
    }
}

/// An exclusive tuple of distinct `2m`-th roots of `(-1)^{m+1}` containing no
/// antipodal pair, stored as doubled exponents in the window
/// `[-(m-1), 3m-1]`, sorted increasingly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExclusiveTuple {
    order: usize,
    doubled: Vec<i64>,
    parity: Parity,
    closed: bool,
}

impl ExclusiveTuple {
    /// Canonicalizes `doubled` into the window and validates exclusivity.
    pub fn new(order: usize, doubled: &[i64]) -> Result<Self> {
        if order == 0 || order > MAX_TUPLE_ORDER {
            return Err(Error::OutOfRange { n: order, min: 1, max: MAX_TUPLE_ORDER });
        }
        if doubled.len() != order {
            return Err(Error::ArityMismatch { expected: order, got: doubled.len() });
        }
        let m = order as i64;
        let period = 4 * m;
        let lo = -(m - 1);
        if let Some(a) = doubled.iter().find(|&&a| (a - (m + 1)).rem_euclid(2) != 0) {
            return Err(Error::InvalidTuple(format!(
                "doubled exponent {a} is not a root of (-1)^{}",
                m + 1
            )));
        }
        let mut canon: Vec<i64> = doubled.iter().map(|&a| lo + (a - lo).rem_euclid(period)).collect();
        canon.sort_unstable();
        if canon.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidTuple(format!("{doubled:?} repeats a root")));
        }
        for (k, &a) in canon.iter().enumerate() {
            if canon[k + 1..].iter().any(|&b| (b - a).rem_euclid(period) == 2 * m) {
                return Err(Error::InvalidTuple(format!("{doubled:?} contains an antipodal pair")));
            }
        }
        Ok(Self::classify(order, canon))
    }

    fn classify(order: usize, doubled: Vec<i64>) -> Self {
        let m = order as i64;
        let sum: i64 = doubled.iter().sum();
        // E_m(ζ^I) = exp(πi·sum/(2m)); exclusivity forces sum ≡ 0 or 2m (mod 4m).
        let parity = if sum.rem_euclid(4 * m) == 0 { Parity::Even } else { Parity::Odd };
        let lo = -(m - 1);
        let mut slots: Vec<i64> = doubled.iter().map(|&a| (a - lo).rem_euclid(4 * m) / 2).collect();
        slots.sort_unstable();
        let mut gaps = slots.windows(2).filter(|w| w[1] - w[0] != 1).count();
        if slots[0] + 2 * m - slots[order - 1] != 1 {
            gaps += 1;
        }
        Self { order, doubled, parity, closed: gaps == 1 }
    }

    /// `I₀ = (-(m-1)/2, …, (m-1)/2)`.
    pub fn base(order: usize) -> Result<Self> {
        let m = order as i64;
        let doubled: Vec<i64> = (0..m).map(|k| -(m - 1) + 2 * k).collect();
        Self::new(order, &doubled)
    }

    #[cfg(test)]
    pub(crate) fn unchecked(order: usize, doubled: Vec<i64>) -> Self {
        Self { order, doubled, parity: Parity::Even, closed: false }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn doubled_indices(&self) -> &[i64] {
        &self.doubled
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// True when the roots form one cyclic run of consecutive `2m`-th roots,
    /// i.e. the tuple is a rotation of `I₀`.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// `ζ^I` with `ζ = e^{πi/m}`.
    pub fn roots(&self) -> Vec<Complex64> {
        let m = self.order as f64;
        self.doubled
            .iter()
            .map(|&a| Complex64::from_polar(1.0, PI * a as f64 / (2.0 * m)))
            .collect()
    }
}

/// All `2^m` exclusive `m`-tuples in lexicographic order of doubled indices.
pub fn enumerate_exclusive(order: usize) -> Result<Vec<ExclusiveTuple>> {
    if order == 0 || order > MAX_TUPLE_ORDER {
        return Err(Error::OutOfRange { n: order, min: 1, max: MAX_TUPLE_ORDER });
    }
    let m = order as i64;
    let mut out: Vec<ExclusiveTuple> = (0u32..1 << order)
        .map(|mask| {
            let mut doubled: Vec<i64> = (0..m)
                .map(|k| {
                    let a = -(m - 1) + 2 * k;
                    if mask >> k & 1 == 1 {
                        a + 2 * m
                    } else {
                        a
                    }
                })
                .collect();
            doubled.sort_unstable();
            ExclusiveTuple::classify(order, doubled)
        })
        .collect();
    out.sort_by(|a, b| a.doubled.cmp(&b.doubled));
    Ok(out)
}

/// Residuals of `E_i(ζ^{2I}) = 0` (`i < m`) and `E_m(ζ^I)² = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerResidual {
    pub squares: f64,
    pub top: f64,
}

impl PowerResidual {
    pub fn max(&self) -> f64 {
        self.squares.max(self.top)
    }
}

pub fn exclusive_power_check(tuple: &ExclusiveTuple) -> PowerResidual {
    let roots = tuple.roots();
    let squares: Vec<Complex64> = roots.iter().map(|z| z * z).collect();
    let e2 = elementary_all(&squares);
    let m = tuple.order;
    let squares_res = e2[1..m].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let top = elementary_all(&roots)[m];
    PowerResidual { squares: squares_res, top: (top * top - 1.0).norm() }
}

/// A point `t·ζ^I` of the `q = 1` Peterson variety of `OG(n)` or `LG(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PetersonPoint {
    kind: Kind,
    n: usize,
    tuple: ExclusiveTuple,
    scale: f64,
    coordinates: Vec<Complex64>,
    generators: Vec<Complex64>,
}

impl PetersonPoint {
    pub fn new(kind: Kind, n: usize, tuple: ExclusiveTuple) -> Result<Self> {
        Self::with_scale(kind, n, tuple, kind.scale(n))
    }

    /// A point on the same ray with an arbitrary scale `t`, off the `q = 1` locus
    /// unless `t` is the canonical scale.
    pub fn with_scale(kind: Kind, n: usize, tuple: ExclusiveTuple, scale: f64) -> Result<Self> {
        if tuple.order != kind.tuple_order(n) {
            return Err(Error::ArityMismatch { expected: kind.tuple_order(n), got: tuple.order });
        }
        if kind == Kind::Lg && tuple.parity != Parity::Even {
            return Err(Error::InvalidTuple("LG points need parity e".into()));
        }
        let coordinates: Vec<Complex64> = tuple.roots().into_iter().map(|z| z * scale).collect();
        let generators = elementary_all(&coordinates)[1..].to_vec();
        Ok(Self { kind, n, tuple, scale, coordinates, generators })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tuple(&self) -> &ExclusiveTuple {
        &self.tuple
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn coordinates(&self) -> &[Complex64] {
        &self.coordinates
    }

    /// `V_1, …, V_n` (OG) or `W_1, …, W_{n+1}` (LG): the elementary symmetric
    /// functions of the coordinates.
    pub fn generator_values(&self) -> &[Complex64] {
        &self.generators
    }

    fn generator(&self, r: i64) -> Complex64 {
        match r {
            0 => Complex64::new(1.0, 0.0),
            r if r < 0 || r as usize > self.generators.len() => Complex64::new(0.0, 0.0),
            r => self.generators[r as usize - 1],
        }
    }
}

/// The `2^n` points of `OG(n)` (scale `ε`, tuples in `I_n`) or `LG(n)`
/// (scale `δ`, tuples in `I_{n+1}^e`), in the order of [`enumerate_exclusive`].
pub fn points(kind: Kind, n: usize) -> Result<Vec<PetersonPoint>> {
    if n == 0 || kind.tuple_order(n) > MAX_TUPLE_ORDER {
        return Err(Error::OutOfRange { n, min: 1, max: MAX_TUPLE_ORDER - 1 });
    }
    enumerate_exclusive(kind.tuple_order(n))?
        .into_iter()
        .filter(|t| kind == Kind::Og || t.parity == Parity::Even)
        .map(|t| PetersonPoint::new(kind, n, t))
        .collect()
}

/// The quantum parameter at a point: `¼ V_n²` (OG) or `2 W_{n+1}` (LG).
pub fn evaluate_q(point: &PetersonPoint) -> Complex64 {
    match point.kind {
        Kind::Og => {
            let vn = point.generator(point.n as i64);
            0.25 * vn * vn
        }
        Kind::Lg => 2.0 * point.generator(point.n as i64 + 1),
    }
}

/// Largest `|V_{i,i}|` over `i = 1..n-1` (OG) or `|W_{i,i}|` over `i = 1..n` (LG).
pub fn relation_residuals(point: &PetersonPoint) -> f64 {
    let top = match point.kind {
        Kind::Og => point.n as i64 - 1,
        Kind::Lg => point.n as i64,
    };
    (1..=top)
        .map(|i| {
            let mut acc = point.generator(i) * point.generator(i);
            for k in 1..=i {
                let term = 2.0 * point.generator(i + k) * point.generator(i - k);
                if k % 2 == 1 {
                    acc -= term;
                } else {
                    acc += term;
                }
            }
            acc.norm()
        })
        .fold(0.0, f64::max)
}

/// The unipotent banded upper-triangular Toeplitz matrix `ṽ(V)` (order `2n`)
/// or `w̃(W)` (order `2n+1`).
pub fn toeplitz_matrix(point: &PetersonPoint) -> DMatrix<Complex64> {
    let size = match point.kind {
        Kind::Og => 2 * point.n,
        Kind::Lg => 2 * point.n + 1,
    };
    DMatrix::from_fn(size, size, |i, j| {
        if j < i {
            Complex64::new(0.0, 0.0)
        } else {
            point.generator((j - i) as i64)
        }
    })
}

/// A signed permutation `w` with `(ζ^I)^w = ζ^J`. When `I ≠ J` the result
/// always carries at least one bar.
pub fn signed_permutation_between(i: &ExclusiveTuple, j: &ExclusiveTuple) -> Result<SignedPermutation> {
    if i.order != j.order {
        return Err(Error::ArityMismatch { expected: i.order, got: j.order });
    }
    let m = i.order as i64;
    let period = 4 * m;
    let mut images = Vec::with_capacity(i.order);
    let mut barred = Vec::with_capacity(i.order);
    for &target in &j.doubled {
        let (pos, bar) = i
            .doubled
            .iter()
            .enumerate()
            .find_map(|(pos, &a)| match (target - a).rem_euclid(period) {
                0 => Some((pos, false)),
                d if d == 2 * m => Some((pos, true)),
                _ => None,
            })
            .ok_or_else(|| Error::InvalidTuple("tuples are not both exclusive".into()))?;
        images.push(pos + 1);
        barred.push(bar);
    }
    SignedPermutation::new(images, barred)
}
