//! The quantum cohomology rings `qH*(OG(n))` and `qH*(LG(n))` on the Schubert
//! basis.
//!
//! At `q = 1` both rings are semisimple, and evaluating a class at the `2^n`
//! Peterson points is an algebra isomorphism onto `C^{2^n}`. Writing
//! `M[I][λ]` for the value of the Schubert class `λ` at point `I`, the
//! orthogonality relations between complementary classes give the inverse
//! transform `N` in closed form. A product `λ·μ` is then `N (M[·][λ] ∘ M[·][μ])`;
//! the grading assigns each output class its unique power of `q`, and rounding
//! recovers the (nonnegative, integral) Gromov–Witten coefficients.
//!
//! The Kresch–Tamvakis presentations and quantum Giambelli formulas are not
//! used to compute anything here; [`verify_presentation`] checks them against
//! the interpolated ring.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{Basis, StrictPartition};
use crate::peterson::{points, Kind, PetersonPoint};
use crate::symfun::{schur, Evaluator};
use crate::UNSAFE_MAX_N;

/// Maximum distance to the nearest integer accepted when rounding a
/// structure constant.
pub const ROUNDING_TOLERANCE: f64 = 1e-6;

/// Bound on `‖N·M - 1‖_∞` accepted when building [`EvaluationTables`].
pub const IDENTITY_TOLERANCE: f64 = 1e-8;

/// Smallest `|S_ρ|` accepted at a Peterson point.
pub const SCHUR_FLOOR: f64 = 1e-12;

/// Memoized `(class index, q-degree, coefficient)` triples of one product.
type ProductCell = OnceLock<Result<Arc<[(u32, u32, i64)]>>>;

/// Values of every Schubert class at every `q = 1` Peterson point, and the
/// inverse transform.
#[derive(Debug)]
pub struct EvaluationTables {
    kind: Kind,
    n: usize,
    basis: Basis,
    points: Vec<PetersonPoint>,
    values: DMatrix<Complex64>,
    dual: DMatrix<Complex64>,
    schur_values: Vec<Complex64>,
    identity_residual: f64,
    products: Vec<ProductCell>,
}

fn check_range(n: usize) -> Result<()> {
    if n == 0 || n > UNSAFE_MAX_N {
        return Err(Error::OutOfRange { n, min: 1, max: UNSAFE_MAX_N });
    }
    Ok(())
}

impl EvaluationTables {
    /// Builds the tables without consulting the process-wide cache.
    pub fn build(kind: Kind, n: usize) -> Result<Self> {
        check_range(n)?;
        let basis = Basis::new(n)?;
        let points = points(kind, n)?;
        let dim = basis.len();
        let rho = StrictPartition::staircase(kind.tuple_order(n) as u32);

        let rows: Vec<(Vec<Complex64>, Complex64)> = points
            .par_iter()
            .map(|p| {
                let ev = Evaluator::new(p.coordinates());
                let row = basis
                    .classes()
                    .iter()
                    .map(|c| match kind {
                        Kind::Og => ev.ptilde(c.parts()),
                        Kind::Lg => ev.qtilde(c.parts()),
                    })
                    .collect();
                let s = schur(rho.parts(), p.coordinates())?;
                Ok((row, s))
            })
            .collect::<Result<_>>()?;

        let values = DMatrix::from_fn(dim, dim, |i, c| rows[i].0[c]);
        let schur_values: Vec<Complex64> = rows.iter().map(|r| r.1).collect();
        if let Some((i, s)) = schur_values.iter().enumerate().find(|(_, s)| s.norm() <= SCHUR_FLOOR) {
            return Err(Error::Consistency(format!(
                "S_rho vanishes at point {i} of {kind}({n}): |S| = {:e}",
                s.norm()
            )));
        }

        let t = kind.scale(n);
        let lg_factor = t.powi(n as i32 + 1) / f64::powi(2.0, n as i32);
        let dual = DMatrix::from_fn(dim, dim, |c, i| {
            let hat = basis.complement_index(c);
            let v = values[(i, hat)] / schur_values[i];
            match kind {
                Kind::Og => v,
                Kind::Lg => v * lg_factor,
            }
        });

        let product = &dual * &values;
        let identity_residual = (0..dim)
            .map(|r| {
                (0..dim)
                    .map(|c| {
                        let target = if r == c { 1.0 } else { 0.0 };
                        (product[(r, c)] - target).norm()
                    })
                    .sum::<f64>()
            })
            .fold(0.0, f64::max);
        if identity_residual.is_nan() || identity_residual > IDENTITY_TOLERANCE {
            return Err(Error::Consistency(format!(
                "dual transform of {kind}({n}) misses the identity by {identity_residual:e}"
            )));
        }

        let products = (0..dim * dim).map(|_| OnceLock::new()).collect();
        Ok(Self { kind, n, basis, points, values, dual, schur_values, identity_residual, products })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn points(&self) -> &[PetersonPoint] {
        &self.points
    }

    /// `M[I][λ]`: `P̃_λ(εζ^I)` for OG, `Q̃_λ(δζ^I)` for LG.
    pub fn values(&self) -> &DMatrix<Complex64> {
        &self.values
    }

    /// `N[λ][I]`, the inverse of [`values`](Self::values).
    pub fn dual(&self) -> &DMatrix<Complex64> {
        &self.dual
    }

    /// `S_{ρ_n}` (OG) or `S_{ρ_{n+1}}` (LG) at each point.
    pub fn schur_values(&self) -> &[Complex64] {
        &self.schur_values
    }

    /// `‖N·M - 1‖_∞` measured at construction.
    pub fn identity_residual(&self) -> f64 {
        self.identity_residual
    }

    /// Value of `Σ_λ (class λ)·(class λ̂)` at a point, predicted by the
    /// orthogonality relations: `S_{ρ_n}` for OG and `2^n S_{ρ_{n+1}} / δ^{n+1}` for LG.
    pub fn euler_target(&self, point: usize) -> Complex64 {
        match self.kind {
            Kind::Og => self.schur_values[point],
            Kind::Lg => {
                let t = self.kind.scale(self.n);
                self.schur_values[point] * f64::powi(2.0, self.n as i32) / t.powi(self.n as i32 + 1)
            }
        }
    }

    /// Largest deviation of `Σ_λ c·M[I][λ]·M[J][λ̂]` from `δ_{IJ}·target_I`
    /// over all point pairs, relative to the largest target. For OG `c = 1`
    /// and the target is `S_{ρ_n}`; for LG `c = δ^{n+1}` and the target is
    /// `2^n S_{ρ_{n+1}}`.
    pub fn orthogonality_residual(&self) -> f64 {
        let dim = self.dimension();
        let t = self.kind.scale(self.n);
        let (factor, target_scale) = match self.kind {
            Kind::Og => (1.0, 1.0),
            Kind::Lg => (t.powi(self.n as i32 + 1), f64::powi(2.0, self.n as i32)),
        };
        let hat = DMatrix::from_fn(dim, dim, |c, j| self.values[(j, self.basis.complement_index(c))]);
        let gram = &self.values * hat * Complex64::new(factor, 0.0);
        let scale = self
            .schur_values
            .iter()
            .map(|s| s.norm() * target_scale)
            .fold(0.0, f64::max);
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let target = if i == j { self.schur_values[i] * target_scale } else { Complex64::new(0.0, 0.0) };
                worst = worst.max((gram[(i, j)] - target).norm());
            }
        }
        worst / scale
    }

    /// Structure constants of `basis[a] · basis[b]` as `(class index, q-degree, coefficient)`.
    pub(crate) fn product_by_index(&self, a: usize, b: usize) -> Result<Arc<[(u32, u32, i64)]>> {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let cell = &self.products[lo * self.dimension() + hi];
        cell.get_or_init(|| self.interpolate_product(lo, hi)).clone()
    }

    fn interpolate_product(&self, a: usize, b: usize) -> Result<Arc<[(u32, u32, i64)]>> {
        let dim = self.dimension();
        let pointwise: Vec<Complex64> =
            (0..dim).map(|i| self.values[(i, a)] * self.values[(i, b)]).collect();
        let weight_a = self.basis.class(a).weight() as i64;
        let weight_b = self.basis.class(b).weight() as i64;
        let qdeg = self.kind.q_degree(self.n) as i64;
        let mut out = Vec::new();
        for nu in 0..dim {
            let raw: Complex64 = (0..dim).map(|i| self.dual[(nu, i)] * pointwise[i]).sum();
            let class = self.basis.class(nu);
            let gap = weight_a + weight_b - class.weight() as i64;
            if gap < 0 || gap % qdeg != 0 {
                if raw.norm() >= ROUNDING_TOLERANCE {
                    return Err(Error::Precision(format!(
                        "{kind}({n}): ({}).({}) has coefficient {raw} at ({class}) off the grading",
                        self.basis.class(a),
                        self.basis.class(b),
                        kind = self.kind,
                        n = self.n
                    )));
                }
                continue;
            }
            let rounded = raw.re.round();
            if (raw.re - rounded).abs() >= ROUNDING_TOLERANCE || raw.im.abs() >= ROUNDING_TOLERANCE {
                return Err(Error::Precision(format!(
                    "{kind}({n}): coefficient {raw} of ({class}) in ({}).({}) is not near an integer",
                    self.basis.class(a),
                    self.basis.class(b),
                    kind = self.kind,
                    n = self.n
                )));
            }
            if rounded < 0.0 {
                return Err(Error::Precision(format!(
                    "{kind}({n}): negative coefficient {rounded} of ({class}) in ({}).({})",
                    self.basis.class(a),
                    self.basis.class(b),
                    kind = self.kind,
                    n = self.n
                )));
            }
            if rounded != 0.0 {
                out.push((nu as u32, (gap / qdeg) as u32, rounded as i64));
            }
        }
        out.sort_by_key(|&(nu, d, _)| (d, nu));
        Ok(out.into())
    }
}

type CacheSlot = Arc<Mutex<Option<Arc<EvaluationTables>>>>;

fn cache() -> &'static Mutex<HashMap<(Kind, usize), CacheSlot>> {
    static CACHE: OnceLock<Mutex<HashMap<(Kind, usize), CacheSlot>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached [`EvaluationTables`] for `(kind, n)`. Each pair is built at most
/// once; concurrent callers for the same pair wait for the first build.
pub fn evaluation_tables(kind: Kind, n: usize) -> Result<Arc<EvaluationTables>> {
    check_range(n)?;
    let slot = {
        let mut map = cache().lock().unwrap_or_else(|e| e.into_inner());
        map.entry((kind, n)).or_default().clone()
    };
    let mut guard = slot.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(tables) = guard.as_ref() {
        return Ok(tables.clone());
    }
    let tables = Arc::new(EvaluationTables::build(kind, n)?);
    *guard = Some(tables.clone());
    Ok(tables)
}

/// One term `c · (class ν) · q^d` of a product.
/// JSON form: `{"partition": "2,1", "q": 0, "coeff": 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    #[serde(rename = "partition")]
    pub class: StrictPartition,
    #[serde(rename = "q")]
    pub q_degree: u32,
    pub coeff: i64,
}

/// The structure constants of `λ·μ`: terms sorted by `q`-degree, then by
/// basis order.
pub fn structure_constants(
    kind: Kind,
    n: usize,
    lambda: &StrictPartition,
    mu: &StrictPartition,
) -> Result<Vec<Term>> {
    let tables = evaluation_tables(kind, n)?;
    let a = tables.basis.index_of(lambda)?;
    let b = tables.basis.index_of(mu)?;
    Ok(tables
        .product_by_index(a, b)?
        .iter()
        .map(|&(nu, d, c)| Term { class: tables.basis.class(nu as usize).clone(), q_degree: d, coeff: c })
        .collect())
}

/// A basis monomial `(class) · q^d`. Orders by `q`-degree first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub q_degree: u32,
    pub class: StrictPartition,
}

/// An integer combination of monomials `(class) · q^d` in `qH*(OG(n))` or
/// `qH*(LG(n))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    kind: Kind,
    n: usize,
    terms: BTreeMap<Monomial, i64>,
}

impl RingElement {
    pub fn zero(kind: Kind, n: usize) -> Self {
        Self { kind, n, terms: BTreeMap::new() }
    }

    pub fn one(kind: Kind, n: usize) -> Self {
        Self::monomial(kind, n, StrictPartition::empty(), 0, 1)
    }

    fn monomial(kind: Kind, n: usize, class: StrictPartition, q_degree: u32, coeff: i64) -> Self {
        let mut e = Self::zero(kind, n);
        if coeff != 0 {
            e.terms.insert(Monomial { q_degree, class }, coeff);
        }
        e
    }

    /// The Schubert class of `λ`.
    pub fn basis(kind: Kind, n: usize, lambda: &StrictPartition) -> Result<Self> {
        Self::term(kind, n, lambda, 0, 1)
    }

    /// `coeff · (class λ) · q^d`.
    pub fn term(kind: Kind, n: usize, lambda: &StrictPartition, q_degree: u32, coeff: i64) -> Result<Self> {
        if !lambda.fits(n) {
            return Err(Error::InvalidPartition(format!("({lambda}) is not in D({n})")));
        }
        Ok(Self::monomial(kind, n, lambda.clone(), q_degree, coeff))
    }

    /// `q^d`.
    pub fn q_power(kind: Kind, n: usize, q_degree: u32) -> Self {
        Self::monomial(kind, n, StrictPartition::empty(), q_degree, 1)
    }

    /// The one-row class `(r)`, with `(0) = 1` and `(r) = 0` for `r < 0` or `r > n`.
    pub fn row(kind: Kind, n: usize, r: i64) -> Self {
        if r < 0 || r as usize > n {
            Self::zero(kind, n)
        } else {
            Self::one_row_unchecked(kind, n, r as u32)
        }
    }

    fn one_row_unchecked(kind: Kind, n: usize, r: u32) -> Self {
        Self::monomial(kind, n, StrictPartition::row(r), 0, 1)
    }

    pub fn from_terms<I>(kind: Kind, n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = Term>,
    {
        let mut e = Self::zero(kind, n);
        for t in terms {
            e = e.checked_add(&Self::term(kind, n, &t.class, t.q_degree, t.coeff)?)?;
        }
        Ok(e)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in `(q-degree, basis order)` order.
    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms
            .iter()
            .map(|(m, &c)| Term { class: m.class.clone(), q_degree: m.q_degree, coeff: c })
    }

    pub fn coefficient(&self, lambda: &StrictPartition, q_degree: u32) -> i64 {
        self.terms
            .get(&Monomial { q_degree, class: lambda.clone() })
            .copied()
            .unwrap_or(0)
    }

    /// Total degree `|λ| + deg(q)·d` shared by all terms, if there is one.
    /// The zero element has no degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let qdeg = self.kind.q_degree(self.n);
        let mut degrees = self.terms.keys().map(|m| m.class.weight() + qdeg * m.q_degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind || self.n != other.n {
            return Err(Error::RingMismatch(format!(
                "{}({}) vs {}({})",
                self.kind, self.n, other.kind, other.n
            )));
        }
        Ok(())
    }

    fn accumulate(&mut self, key: Monomial, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(key).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.accumulate(k.clone(), c);
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: i64) -> Self {
        let mut out = Self::zero(self.kind, self.n);
        if factor != 0 {
            out.terms = self.terms.iter().map(|(k, &c)| (k.clone(), c * factor)).collect();
        }
        out
    }

    /// Value at a Peterson point (where `q = 1`).
    pub fn evaluate(&self, tables: &EvaluationTables, point: usize) -> Result<Complex64> {
        if tables.kind != self.kind || tables.n != self.n {
            return Err(Error::RingMismatch("tables belong to another ring".into()));
        }
        self.terms
            .iter()
            .map(|(m, &c)| Ok(tables.values[(point, tables.basis.index_of(&m.class)?)] * c as f64))
            .sum()
    }
}

impl Add for &RingElement {
    type Output = RingElement;

    /// Panics when the operands live in different rings; see [`RingElement::checked_add`].
    fn add(self, rhs: &RingElement) -> RingElement {
        self.checked_add(rhs).expect("adding elements of different rings")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;

    fn sub(self, rhs: &RingElement) -> RingElement {
        self + &(-rhs)
    }
}

impl Neg for &RingElement {
    type Output = RingElement;

    fn neg(self) -> RingElement {
        self.scaled(-1)
    }
}

impl Mul<i64> for &RingElement {
    type Output = RingElement;

    fn mul(self, rhs: i64) -> RingElement {
        self.scaled(rhs)
    }
}

/// Renders as e.g. `σ(2,1) + q` or `2τ(2) - τ(1)q^2`; the unit class prints as `1`.
impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let symbol = self.kind.class_symbol();
        for (k, (m, &c)) in self.terms.iter().enumerate() {
            let magnitude = c.unsigned_abs();
            match (k, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let bare = m.class.is_empty() && m.q_degree == 0;
            if magnitude != 1 || bare {
                write!(f, "{magnitude}")?;
            }
            if !m.class.is_empty() {
                write!(f, "{symbol}({})", m.class)?;
            }
            match m.q_degree {
                0 => {}
                1 => f.write_str("q")?,
                d => write!(f, "q^{d}")?,
            }
        }
        Ok(())
    }
}

/// Quantum product, bilinear over the structure constants.
pub fn multiply(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    a.same_ring(b)?;
    let tables = evaluation_tables(a.kind, a.n)?;
    multiply_with(&tables, a, b)
}

pub(crate) fn multiply_with(tables: &EvaluationTables, a: &RingElement, b: &RingElement) -> Result<RingElement> {
    a.same_ring(b)?;
    let mut out = RingElement::zero(a.kind, a.n);
    for (ma, &ca) in &a.terms {
        let ia = tables.basis.index_of(&ma.class)?;
        for (mb, &cb) in &b.terms {
            let ib = tables.basis.index_of(&mb.class)?;
            for &(nu, d, c) in tables.product_by_index(ia, ib)?.iter() {
                let key = Monomial {
                    q_degree: ma.q_degree + mb.q_degree + d,
                    class: tables.basis.class(nu as usize).clone(),
                };
                out.accumulate(key, ca * cb * c);
            }
        }
    }
    Ok(out)
}

/// `e_q = Σ_{λ ∈ D(n)} (class λ)·(class λ̂)`.
pub fn quantum_euler(kind: Kind, n: usize) -> Result<RingElement> {
    let tables = evaluation_tables(kind, n)?;
    let mut total = RingElement::zero(kind, n);
    for i in 0..tables.dimension() {
        let hat = tables.basis.complement_index(i);
        for &(nu, d, c) in tables.product_by_index(i, hat)?.iter() {
            let key = Monomial { q_degree: d, class: tables.basis.class(nu as usize).clone() };
            total.accumulate(key, c);
        }
    }
    Ok(total)
}

/// `(e_q evaluated at point I, predicted value)` for each Peterson point.
pub fn euler_evaluations(kind: Kind, n: usize) -> Result<Vec<(Complex64, Complex64)>> {
    let tables = evaluation_tables(kind, n)?;
    let euler = quantum_euler(kind, n)?;
    (0..tables.dimension())
        .map(|i| Ok((euler.evaluate(&tables, i)?, tables.euler_target(i))))
        .collect()
}

/// One checked identity: `lhs - rhs` should be zero.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub name: String,
    pub discrepancy: RingElement,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.discrepancy.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct PresentationReport {
    pub kind: Kind,
    pub n: usize,
    pub checks: Vec<RelationCheck>,
}

impl PresentationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(RelationCheck::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.holds())
    }
}

struct Presentation<'a> {
    tables: &'a EvaluationTables,
    kind: Kind,
    n: usize,
}

impl Presentation<'_> {
    fn row(&self, r: i64) -> RingElement {
        RingElement::row(self.kind, self.n, r)
    }

    fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        multiply_with(self.tables, a, b)
    }

    fn q(&self) -> RingElement {
        RingElement::q_power(self.kind, self.n, 1)
    }

    /// `Σ_k 2(-1)^k x_{i+k} x_{j-k}` for `k` in `range`.
    fn alternating(&self, i: i64, j: i64, range: std::ops::RangeInclusive<i64>) -> Result<RingElement> {
        let mut acc = RingElement::zero(self.kind, self.n);
        for k in range {
            let sign = if k % 2 == 0 { 2 } else { -2 };
            acc = &acc + &(&self.mul(&self.row(i + k), &self.row(j - k))? * sign);
        }
        Ok(acc)
    }

    /// Two-row class `(i, j)` for `i > j ≥ 0`, as a basis element.
    fn two_row(&self, i: u32, j: u32) -> Result<RingElement> {
        let parts = if j == 0 { vec![i] } else { vec![i, j] };
        RingElement::basis(self.kind, self.n, &StrictPartition::new(parts)?)
    }

    fn relations(&self) -> Result<Vec<RelationCheck>> {
        let n = self.n as i64;
        let mut checks = Vec::new();
        match self.kind {
            Kind::Lg => {
                for i in 1..=n {
                    let lhs = &self.mul(&self.row(i), &self.row(i))? + &self.alternating(i, i, 1..=n - i)?;
                    let sign = if (n - i) % 2 == 0 { 1 } else { -1 };
                    let rhs = &self.mul(&self.row(2 * i - n - 1), &self.q())? * sign;
                    checks.push(RelationCheck { name: format!("sigma_{i}^2 relation"), discrepancy: &lhs - &rhs });
                }
            }
            Kind::Og => {
                for i in 1..n {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    let lhs = &(&self.mul(&self.row(i), &self.row(i))? + &self.alternating(i, i, 1..=i - 1)?)
                        + &(&self.row(2 * i) * sign);
                    checks.push(RelationCheck { name: format!("tau_{{{i},{i}}} = 0"), discrepancy: lhs });
                }
                let lhs = self.mul(&self.row(n), &self.row(n))?;
                checks.push(RelationCheck { name: format!("tau_{n}^2 = q"), discrepancy: &lhs - &self.q() });
            }
        }
        Ok(checks)
    }

    fn giambelli_two_row(&self) -> Result<Vec<RelationCheck>> {
        let n = self.n as i64;
        let mut checks = Vec::new();
        for i in 2..=n {
            for j in 1..i {
                let product = self.mul(&self.row(i), &self.row(j))?;
                let rhs = match self.kind {
                    Kind::Lg => {
                        let sign = if (n + 1 - i) % 2 == 0 { 1 } else { -1 };
                        let quantum = &self.mul(&self.row(i + j - n - 1), &self.q())? * sign;
                        &(&product + &self.alternating(i, j, 1..=n - i)?) + &quantum
                    }
                    Kind::Og => {
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        &(&product + &self.alternating(i, j, 1..=j - 1)?) + &(&self.row(i + j) * sign)
                    }
                };
                let lhs = self.two_row(i as u32, j as u32)?;
                checks.push(RelationCheck { name: format!("Giambelli ({i},{j})"), discrepancy: &lhs - &rhs });
            }
        }
        Ok(checks)
    }

    /// Pfaffian of the two-row classes `(λ_a, λ_b)` over positions `idx`,
    /// expanded along the first row with quantum products.
    fn ring_pfaffian(&self, parts: &[u32], idx: &[usize]) -> Result<RingElement> {
        if idx.is_empty() {
            return Ok(RingElement::one(self.kind, self.n));
        }
        let first = idx[0];
        let mut total = RingElement::zero(self.kind, self.n);
        for pos in 1..idx.len() {
            let entry = self.two_row(parts[first], parts[idx[pos]])?;
            let rest: Vec<usize> =
                idx.iter().enumerate().filter(|&(k, _)| k != 0 && k != pos).map(|(_, &v)| v).collect();
            let term = self.mul(&entry, &self.ring_pfaffian(parts, &rest)?)?;
            total = if pos % 2 == 1 { &total + &term } else { &total - &term };
        }
        Ok(total)
    }

    fn giambelli_pfaffian(&self) -> Result<Vec<RelationCheck>> {
        let mut checks = Vec::new();
        for lambda in self.tables.basis.classes().iter().filter(|l| l.len() >= 3) {
            let parts = crate::partition::pad_even(lambda);
            let idx: Vec<usize> = (0..parts.len()).collect();
            let pf = self.ring_pfaffian(&parts, &idx)?;
            let lhs = RingElement::basis(self.kind, self.n, lambda)?;
            checks.push(RelationCheck { name: format!("Pfaffian Giambelli ({lambda})"), discrepancy: &lhs - &pf });
        }
        Ok(checks)
    }
}

/// Checks the Kresch–Tamvakis presentation of the ring and its quantum
/// Giambelli formulas against the interpolated structure constants.
///
/// Conventions: one-row classes `(r)` vanish for `r < 0` and `r > n`, and
/// `(0) = 1`. Pfaffian Giambelli is checked for every class of length ≥ 3.
pub fn verify_presentation(kind: Kind, n: usize) -> Result<PresentationReport> {
    let tables = evaluation_tables(kind, n)?;
    let p = Presentation { tables: &tables, kind, n };
    let mut checks = p.relations()?;
    checks.extend(p.giambelli_two_row()?);
    checks.extend(p.giambelli_pfaffian()?);
    Ok(PresentationReport { kind, n, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> StrictPartition {
        s.parse().unwrap()
    }

    fn terms(kind: Kind, n: usize, a: &str, b: &str) -> Vec<(String, u32, i64)> {
        structure_constants(kind, n, &p(a), &p(b))
            .unwrap()
            .into_iter()
            .map(|t| (t.class.to_string(), t.q_degree, t.coeff))
            .collect()
    }

    #[test]
    fn small_products() {
        assert_eq!(terms(Kind::Og, 2, "1", "1"), vec![("2".into(), 0, 1)]);
        assert_eq!(terms(Kind::Lg, 2, "1", "1"), vec![("2".into(), 0, 2)]);
        assert_eq!(terms(Kind::Lg, 2, "2", "1"), vec![("2,1".into(), 0, 1), ("0".into(), 1, 1)]);
        for n in 2..=6 {
            let top = n.to_string();
            assert_eq!(terms(Kind::Og, n, &top, &top), vec![("0".into(), 1, 1)], "n={n}");
        }
    }

    #[test]
    fn og2_is_projective_space() {
        // OG(2) ≅ P³: τ₂·τ_{2,1} = qτ₁.
        let kind = Kind::Og;
        let a = RingElement::basis(kind, 2, &p("2")).unwrap();
        let b = RingElement::basis(kind, 2, &p("2,1")).unwrap();
        let want = RingElement::term(kind, 2, &p("1"), 1, 1).unwrap();
        assert_eq!(multiply(&a, &b).unwrap(), want);
    }

    #[test]
    fn unit_is_identity() {
        for kind in [Kind::Og, Kind::Lg] {
            let one = RingElement::one(kind, 3);
            let x = &RingElement::basis(kind, 3, &p("3,1")).unwrap()
                + &(&RingElement::term(kind, 3, &p("2"), 2, -3).unwrap() * 1);
            assert_eq!(multiply(&one, &x).unwrap(), x);
            assert_eq!(multiply(&x, &one).unwrap(), x);
        }
    }

    #[test]
    fn mismatched_rings_rejected() {
        let a = RingElement::one(Kind::Og, 2);
        let b = RingElement::one(Kind::Lg, 2);
        assert!(matches!(multiply(&a, &b), Err(Error::RingMismatch(_))));
        let c = RingElement::one(Kind::Og, 3);
        assert!(multiply(&a, &c).is_err());
        assert!(a.checked_add(&c).is_err());
        assert!(RingElement::basis(Kind::Og, 2, &p("3")).is_err());
    }

    #[test]
    fn lg2_associativity_instance() {
        let s1 = RingElement::basis(Kind::Lg, 2, &p("1")).unwrap();
        let s2 = RingElement::basis(Kind::Lg, 2, &p("2")).unwrap();
        let left = multiply(&multiply(&s1, &s1).unwrap(), &s2).unwrap();
        let right = multiply(&s1, &multiply(&s1, &s2).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn tables_small_cases() {
        let og2 = evaluation_tables(Kind::Og, 2).unwrap();
        assert!(og2.orthogonality_residual() <= 1e-10);
        let lg2 = evaluation_tables(Kind::Lg, 2).unwrap();
        assert!(lg2.identity_residual() <= 1e-10);
        assert!(lg2.orthogonality_residual() <= 1e-10);
        let og3 = evaluation_tables(Kind::Og, 3).unwrap();
        assert_eq!(og3.schur_values().len(), 8);
        assert!(og3.schur_values().iter().all(|s| s.norm() > 1e-6));
    }

    #[test]
    fn dual_is_matrix_inverse() {
        // Oracle: a generic LU inverse of M, independent of the closed form for N.
        for kind in [Kind::Og, Kind::Lg] {
            for n in 2..=4 {
                let t = evaluation_tables(kind, n).unwrap();
                let inv = t.values().clone().try_inverse().unwrap();
                let diff = (inv - t.dual()).iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert!(diff < 1e-9, "{kind}({n}) {diff:e}");
            }
        }
    }

    #[test]
    fn out_of_range() {
        assert!(evaluation_tables(Kind::Og, 0).is_err());
        assert!(evaluation_tables(Kind::Og, UNSAFE_MAX_N + 1).is_err());
    }

    #[test]
    fn display_format() {
        let e = RingElement::from_terms(
            Kind::Lg,
            2,
            [
                Term { class: p("2,1"), q_degree: 0, coeff: 1 },
                Term { class: p(""), q_degree: 1, coeff: 1 },
            ],
        )
        .unwrap();
        assert_eq!(e.to_string(), "σ(2,1) + q");
        let e = RingElement::from_terms(
            Kind::Og,
            3,
            [
                Term { class: p(""), q_degree: 0, coeff: -1 },
                Term { class: p("2"), q_degree: 0, coeff: 2 },
                Term { class: p("1"), q_degree: 2, coeff: -1 },
            ],
        )
        .unwrap();
        assert_eq!(e.to_string(), "-1 + 2τ(2) - τ(1)q^2");
        assert_eq!(RingElement::zero(Kind::Og, 2).to_string(), "0");
    }

    #[test]
    fn presentation_small() {
        for (kind, n) in [(Kind::Lg, 2), (Kind::Og, 3), (Kind::Lg, 4), (Kind::Og, 2)] {
            let r = verify_presentation(kind, n).unwrap();
            let bad: Vec<_> = r.failures().map(|c| format!("{}: {}", c.name, c.discrepancy)).collect();
            assert!(bad.is_empty(), "{kind}({n}): {bad:?}");
        }
        let r = verify_presentation(Kind::Lg, 4).unwrap();
        assert!(r.checks.iter().any(|c| c.name == "Pfaffian Giambelli (3,2,1)"));
    }

    #[test]
    fn homogeneity() {
        let kind = Kind::Lg;
        let a = RingElement::basis(kind, 3, &p("3,1")).unwrap();
        let b = RingElement::basis(kind, 3, &p("3,2")).unwrap();
        let prod = multiply(&a, &b).unwrap();
        assert_eq!(prod.homogeneous_degree(), Some(9));
        assert_eq!(RingElement::zero(kind, 3).homogeneous_degree(), None);
    }

    #[test]
    fn euler_class_matches_schur() {
        for kind in [Kind::Og, Kind::Lg] {
            for (value, target) in euler_evaluations(kind, 2).unwrap() {
                assert!(value.norm() > 1e-6);
                assert!((value - target).norm() <= 1e-7 * target.norm());
            }
            assert!(!quantum_euler(kind, 2).unwrap().is_zero());
        }
    }
}
