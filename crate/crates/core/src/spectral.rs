//! Quantum multiplication operators at `q = 1`, their simultaneous
//! eigenbases, the spectrum of `[c₁]`, and the Conjecture O check.
//!
//! Eigenvalues come from the point parametrization: the operator of class
//! `λ` acts on the vector `v_I[μ] = M[I][μ̂]` by the scalar `M[I][λ]`. A dense
//! eigensolve is kept only as a cross-check ([`c1_spectrum_dense`]).

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::StrictPartition;
use crate::peterson::{ExclusiveTuple, Kind};
use crate::ring::{evaluation_tables, EvaluationTables};

/// Default relative tolerance for clustering the `c₁` spectrum.
pub const DEFAULT_CLUSTER_TOLERANCE: f64 = 1e-8;

/// Largest `n` for which [`c1_spectrum_dense`] is attempted.
pub const DENSE_MAX_N: usize = 6;

/// The matrix of quantum multiplication by a Schubert class at `q = 1`,
/// `entry[ν][μ]` = coefficient of `ν` in `λ·μ` summed over all powers of `q`.
///
/// Entries are the Gromov–Witten integers themselves, so the matrix is stored exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    kind: Kind,
    n: usize,
    class: StrictPartition,
    entries: DMatrix<i64>,
}

impl OperatorMatrix {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> &StrictPartition {
        &self.class
    }

    pub fn entries(&self) -> &DMatrix<i64> {
        &self.entries
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        self.entries.map(|c| Complex64::new(c as f64, 0.0))
    }

    /// `‖A‖_∞`, the largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.entries
            .row_iter()
            .map(|r| r.iter().map(|c| c.unsigned_abs() as f64).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `‖A·v - value·v‖_∞`.
    pub fn eigen_residual(&self, pair: &EigenPair) -> f64 {
        let dim = self.entries.nrows();
        (0..dim)
            .map(|r| {
                let av: Complex64 = (0..dim)
                    .filter(|&c| self.entries[(r, c)] != 0)
                    .map(|c| pair.vector[c] * self.entries[(r, c)] as f64)
                    .sum();
                (av - pair.value * pair.vector[r]).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Builds the operator of multiplication by `λ`.
pub fn operator_matrix(kind: Kind, n: usize, lambda: &StrictPartition) -> Result<OperatorMatrix> {
    let tables = evaluation_tables(kind, n)?;
    let a = tables.basis().index_of(lambda)?;
    let dim = tables.dimension();
    let columns: Vec<Vec<(u32, u32, i64)>> = (0..dim)
        .into_par_iter()
        .map(|mu| tables.product_by_index(a, mu).map(|p| p.to_vec()))
        .collect::<Result<_>>()?;
    let mut entries = DMatrix::zeros(dim, dim);
    for (mu, col) in columns.iter().enumerate() {
        for &(nu, _, c) in col {
            entries[(nu as usize, mu)] += c;
        }
    }
    Ok(OperatorMatrix { kind, n, class: lambda.clone(), entries })
}

/// An eigenvector of every quantum multiplication operator, indexed by a Peterson point.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub tuple: ExclusiveTuple,
    pub value: Complex64,
    /// `vector[μ] = M[I][μ̂]` in basis order.
    pub vector: Vec<Complex64>,
}

impl EigenPair {
    pub fn norm_inf(&self) -> f64 {
        self.vector.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

fn eigenvector(tables: &EvaluationTables, point: usize) -> Vec<Complex64> {
    (0..tables.dimension())
        .map(|mu| tables.values()[(point, tables.basis().complement_index(mu))])
        .collect()
}

/// One eigenpair per Peterson point, in point order.
pub fn eigenpairs(kind: Kind, n: usize, lambda: &StrictPartition) -> Result<Vec<EigenPair>> {
    let tables = evaluation_tables(kind, n)?;
    let a = tables.basis().index_of(lambda)?;
    Ok((0..tables.dimension())
        .into_par_iter()
        .map(|i| EigenPair {
            tuple: tables.points()[i].tuple().clone(),
            value: tables.values()[(i, a)],
            vector: eigenvector(&tables, i),
        })
        .collect())
}

/// Eigenvalue of `[c₁]` at each Peterson point, in point order:
/// `n·ε·E₁(ζ^I)` for `OG(n)` and `(n+1)·δ·E₁(ζ^I)` for `LG(n)`.
pub fn c1_spectrum(kind: Kind, n: usize) -> Result<Vec<Complex64>> {
    let factor = match kind {
        Kind::Og => n as f64,
        Kind::Lg => (n + 1) as f64,
    } * kind.scale(n);
    Ok(crate::peterson::points(kind, n)?
        .iter()
        .map(|p| p.tuple().roots().iter().sum::<Complex64>() * factor)
        .collect())
}

/// `[c₁] = r·[class (1)]` with `r` the Fano index: `2n·τ₁` or `(n+1)·σ₁`.
pub fn c1_operator(kind: Kind, n: usize) -> Result<OperatorMatrix> {
    let mut op = operator_matrix(kind, n, &StrictPartition::row(1))?;
    op.entries *= kind.fano_index(n) as i64;
    Ok(op)
}

/// Eigenvalues of the `[c₁]` operator from a general dense eigensolve.
pub fn c1_spectrum_dense(kind: Kind, n: usize) -> Result<Vec<Complex64>> {
    if n > DENSE_MAX_N {
        return Err(Error::OutOfRange { n, min: 1, max: DENSE_MAX_N });
    }
    let op = c1_operator(kind, n)?;
    let real = op.entries.map(|c| c as f64);
    Ok(real.complex_eigenvalues().iter().copied().collect())
}

/// Largest distance in a greedy nearest-neighbour matching of two multisets
/// of equal size, or `None` when the sizes differ.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))?;
        used[j] = true;
        worst = worst.max(d);
    }
    Some(worst)
}

/// An eigenvalue with its multiplicity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

impl SpectrumEntry {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Conditions {
    /// `T₀` is itself an eigenvalue.
    pub c1: bool,
    /// Every eigenvalue of modulus `T₀` is `T₀·ξ` with `ξ^r = 1`.
    pub c2: bool,
    /// `T₀` is a simple eigenvalue.
    pub c3: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Two clusters sit closer than `10·tol` but farther than `tol`.
    Indeterminate,
}

/// Verdict of the three Conjecture O conditions for `[c₁]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureOReport {
    pub kind: Kind,
    pub n: usize,
    pub fano_index: usize,
    #[serde(rename = "T0")]
    pub t0: f64,
    pub tolerance: f64,
    /// Clusters ordered by decreasing modulus, then by argument in `[0, 2π)`.
    pub spectrum: Vec<SpectrumEntry>,
    pub conditions: Conditions,
    pub max_modulus_count: usize,
    /// Number of closed tuples: `2n` for OG, `n + 1` for LG.
    pub expected_max_modulus_count: usize,
    pub status: Status,
    pub diagnostics: Vec<String>,
}

impl ConjectureOReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn argument(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Clusters the `c₁` spectrum at relative tolerance `tol` and checks the
/// three conditions. Values coincide iff `|a - b| ≤ tol·max(1, T₀)`.
pub fn conjecture_o(kind: Kind, n: usize, tol: f64) -> Result<ConjectureOReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let values = c1_spectrum(kind, n)?;
    Ok(cluster_report(kind, n, tol, &values))
}

pub(crate) fn cluster_report(kind: Kind, n: usize, tol: f64, values: &[Complex64]) -> ConjectureOReport {
    let r = kind.fano_index(n);
    let t0 = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let threshold = tol * t0.max(1.0);
    let mut diagnostics = Vec::new();

    let mut parent: Vec<usize> = (0..values.len()).collect();
    let mut unstable = false;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let d = (values[i] - values[j]).norm();
            if d <= threshold {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            } else if d <= 10.0 * threshold {
                unstable = true;
                diagnostics.push(format!("values {i} and {j} are {d:e} apart, within 10·tol but outside tol"));
            }
        }
    }

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); values.len()];
    for i in 0..values.len() {
        let root = find(&mut parent, i);
        members[root].push(i);
    }
    let mut clusters: Vec<(Complex64, usize)> = members
        .into_iter()
        .filter(|m| !m.is_empty())
        .map(|m| (m.iter().map(|&i| values[i]).sum::<Complex64>() / m.len() as f64, m.len()))
        .collect();
    let modulus_key = |z: &Complex64| (z.norm() / threshold).round() as i64;
    clusters.sort_by(|a, b| {
        modulus_key(&b.0)
            .cmp(&modulus_key(&a.0))
            .then(argument(a.0).total_cmp(&argument(b.0)))
    });

    let is_max = |z: &Complex64| (z.norm() - t0).abs() <= threshold;
    let max_clusters: Vec<&(Complex64, usize)> = clusters.iter().filter(|c| is_max(&c.0)).collect();

    let top = max_clusters
        .iter()
        .find(|c| c.0.re > 0.0 && c.0.im.abs() <= tol * t0)
        .copied();
    let c1 = top.is_some();
    if !c1 {
        diagnostics.push(format!("no real positive eigenvalue of modulus T0 = {t0}"));
    }

    let mut c2 = true;
    for (z, _) in &max_clusters {
        let k = (argument(*z) * r as f64 / (2.0 * PI)).round();
        let root = Complex64::from_polar(t0, 2.0 * PI * k / r as f64);
        if (z - root).norm() > threshold {
            c2 = false;
            diagnostics.push(format!("max-modulus eigenvalue {z} is not T0 times an {r}-th root of unity"));
        }
    }

    let c3 = match top {
        Some(&(_, 1)) => true,
        Some(&(_, m)) => {
            diagnostics.push(format!("T0 has multiplicity {m}"));
            false
        }
        None => false,
    };

    let expected = match kind {
        Kind::Og => 2 * n,
        Kind::Lg => n + 1,
    };
    if max_clusters.len() != expected {
        diagnostics.push(format!(
            "{} max-modulus eigenvalues, closed-tuple count is {expected}",
            max_clusters.len()
        ));
    }

    let status = if unstable {
        Status::Indeterminate
    } else if c1 && c2 && c3 && max_clusters.len() == expected {
        Status::Pass
    } else {
        Status::Fail
    };

    ConjectureOReport {
        kind,
        n,
        fano_index: r,
        t0,
        tolerance: tol,
        spectrum: clusters
            .iter()
            .map(|&(z, m)| SpectrumEntry { re: z.re, im: z.im, multiplicity: m })
            .collect(),
        conditions: Conditions { c1, c2, c3 },
        max_modulus_count: max_clusters.len(),
        expected_max_modulus_count: expected,
        status,
        diagnostics,
    }
}

/// `n·4^{1/(2n)} / sin(π/(2n))`, the `c₁` eigenvalue of `OG(n)` at the base tuple.
pub fn og_top_eigenvalue(n: usize) -> f64 {
    n as f64 * Kind::Og.scale(n) / (PI / (2 * n) as f64).sin()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> StrictPartition {
        s.parse().unwrap()
    }

    #[test]
    fn unit_operator_is_identity() {
        for kind in [Kind::Og, Kind::Lg] {
            let op = operator_matrix(kind, 3, &StrictPartition::empty()).unwrap();
            assert_eq!(op.entries(), &DMatrix::identity(8, 8));
            assert!(eigenpairs(kind, 3, &StrictPartition::empty())
                .unwrap()
                .iter()
                .all(|e| (e.value - 1.0).norm() < 1e-12));
        }
    }

    #[test]
    fn og2_top_class_squares_to_identity() {
        let op = operator_matrix(Kind::Og, 2, &p("2")).unwrap();
        let sq = op.entries() * op.entries();
        assert_eq!(sq, DMatrix::identity(4, 4));
    }

    #[test]
    fn lg2_minimal_polynomial() {
        let op = operator_matrix(Kind::Lg, 2, &p("1")).unwrap();
        let a = op.to_complex();
        let mut prod = DMatrix::<Complex64>::identity(4, 4);
        for e in eigenpairs(Kind::Lg, 2, &p("1")).unwrap() {
            prod *= &a - DMatrix::<Complex64>::identity(4, 4) * e.value;
        }
        assert!(prod.iter().all(|z| z.norm() < 1e-9));
    }

    #[test]
    fn og2_spectrum() {
        let s = c1_spectrum(Kind::Og, 2).unwrap();
        let want = [4.0, -4.0].map(|x| Complex64::new(x, 0.0)).into_iter()
            .chain([4.0, -4.0].map(|y| Complex64::new(0.0, y)))
            .collect::<Vec<_>>();
        assert!(multiset_distance(&s, &want).unwrap() < 1e-9);
        let tau1: Vec<_> = eigenpairs(Kind::Og, 2, &p("1")).unwrap().iter().map(|e| e.value * 4.0).collect();
        assert!(multiset_distance(&tau1, &s).unwrap() < 1e-9);
    }

    #[test]
    fn lg2_spectrum() {
        let s = c1_spectrum(Kind::Lg, 2).unwrap();
        let t0 = 6.0 * 2f64.powf(-1.0 / 3.0);
        let mut want: Vec<_> = (0..3).map(|k| Complex64::from_polar(t0, 2.0 * PI * k as f64 / 3.0)).collect();
        want.push(Complex64::new(0.0, 0.0));
        assert!(multiset_distance(&s, &want).unwrap() < 1e-9);
    }

    #[test]
    fn dense_agrees_with_closed_form() {
        for kind in [Kind::Og, Kind::Lg] {
            for n in 2..=4 {
                let d = multiset_distance(&c1_spectrum(kind, n).unwrap(), &c1_spectrum_dense(kind, n).unwrap());
                assert!(d.unwrap() < 1e-6, "{kind}({n})");
            }
        }
        assert!(c1_spectrum_dense(Kind::Og, DENSE_MAX_N + 1).is_err());
    }

    #[test]
    fn small_reports() {
        let og = conjecture_o(Kind::Og, 2, DEFAULT_CLUSTER_TOLERANCE).unwrap();
        assert!(og.passed(), "{og:?}");
        assert!((og.t0 - 4.0).abs() < 1e-12);
        assert_eq!((og.fano_index, og.max_modulus_count), (4, 4));
        let lg = conjecture_o(Kind::Lg, 2, DEFAULT_CLUSTER_TOLERANCE).unwrap();
        assert!(lg.passed(), "{lg:?}");
        assert!((lg.t0 - 4.762203156).abs() < 1e-8);
        assert_eq!((lg.fano_index, lg.max_modulus_count), (3, 3));
        assert_eq!(lg.spectrum.iter().map(|s| s.multiplicity).sum::<usize>(), 4);
        assert!(conjecture_o(Kind::Og, 2, 0.0).is_err());
    }

    #[test]
    fn clustering_edge_cases() {
        let z = |re, im| Complex64::new(re, im);
        // Doubled top eigenvalue breaks simplicity.
        let r = cluster_report(Kind::Og, 2, 1e-8, &[z(4.0, 0.0), z(4.0, 0.0), z(0.0, 4.0), z(-4.0, 0.0)]);
        assert!(!r.conditions.c3);
        assert_eq!(r.status, Status::Fail);
        // A max-modulus value off the root-of-unity grid.
        let w = Complex64::from_polar(4.0, 0.3);
        let r = cluster_report(Kind::Og, 2, 1e-8, &[z(4.0, 0.0), w, z(0.0, 4.0), z(-4.0, 0.0)]);
        assert!(!r.conditions.c2);
        // Values 5·tol·T0 apart are neither equal nor clearly distinct.
        let r = cluster_report(Kind::Og, 2, 1e-8, &[z(4.0, 0.0), z(1.0, 0.0), z(1.0 + 2e-7, 0.0), z(-4.0, 0.0)]);
        assert_eq!(r.status, Status::Indeterminate);
    }

    #[test]
    fn top_eigenvalue_closed_form() {
        for n in 2..=8 {
            let s = c1_spectrum(Kind::Og, n).unwrap();
            let f0 = og_top_eigenvalue(n);
            let max = s.iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!((max - f0).abs() <= 1e-10 * f0, "n={n}");
        }
    }
}
