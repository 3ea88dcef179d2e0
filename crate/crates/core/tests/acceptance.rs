//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so the summary is always printed.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use qcoh::partition::{complement, enumerate_strict, Basis};
use qcoh::peterson::{evaluate_q, exclusive_power_check, points, relation_residuals, ExclusiveTuple, Kind};
use qcoh::ring::{evaluation_tables, multiply, quantum_euler, structure_constants, verify_presentation, RingElement};
use qcoh::spectral::{c1_spectrum, conjecture_o, eigenpairs, multiset_distance, operator_matrix, Status};
use qcoh::symfun::{elementary_all, key_identity_sum, ptilde, qtilde, schur, SignedPermutation};
use qcoh::StrictPartition;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KINDS: [Kind; 2] = [Kind::Og, Kind::Lg];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn p(s: &str) -> StrictPartition {
    s.parse().unwrap()
}

/// Σ_λ F_λ(x_I) F_λ̂(x_J) against δ_IJ·target, with F = P̃ (OG) or Q̃ (LG),
/// recomputed here through the matrix Pfaffian route.
fn orthogonality() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for kind in KINDS {
        for n in 2..=6 {
            let pts = points(kind, n).unwrap();
            let classes = enumerate_strict(n).unwrap();
            let eval = |parts: &[u32], x: &[Complex64]| match kind {
                Kind::Og => ptilde(parts, x).unwrap(),
                Kind::Lg => qtilde(parts, x).unwrap(),
            };
            let vals: Vec<Vec<Complex64>> = pts
                .iter()
                .map(|pt| classes.iter().map(|l| eval(l.parts(), pt.coordinates())).collect())
                .collect();
            let hat: Vec<usize> = classes
                .iter()
                .map(|l| {
                    let h = complement(l, n).unwrap();
                    classes.iter().position(|x| *x == h).unwrap()
                })
                .collect();
            let rho = StrictPartition::staircase(kind.tuple_order(n) as u32);
            let t = kind.scale(n);
            let (factor, mult) = match kind {
                Kind::Og => (1.0, 1.0),
                Kind::Lg => (t.powi(n as i32 + 1), f64::powi(2.0, n as i32)),
            };
            let targets: Vec<Complex64> =
                pts.iter().map(|pt| schur(rho.parts(), pt.coordinates()).unwrap() * mult).collect();
            let scale = targets.iter().map(|z| z.norm()).fold(0.0, f64::max);
            for i in 0..pts.len() {
                for j in 0..pts.len() {
                    let sum: Complex64 =
                        (0..classes.len()).map(|l| vals[i][l] * vals[j][hat[l]]).sum::<Complex64>() * factor;
                    let want = if i == j { targets[i] } else { c(0.0, 0.0) };
                    worst = worst.max((sum - want).norm() / scale);
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-8 && secs < 10.0,
        format!("max relative residual {worst:.2e} over og/lg n=2..6 in {secs:.2} s"),
    )
}

fn random_signed(rng: &mut ChaCha8Rng, n: usize, bar_free: bool) -> SignedPermutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    let mut barred: Vec<bool> = (0..n).map(|_| !bar_free && rng.gen_bool(0.5)).collect();
    if !bar_free && !barred.iter().any(|&b| b) {
        barred[rng.gen_range(0..n)] = true;
    }
    SignedPermutation::new(images, barred).unwrap()
}

fn hyperoctahedral() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    for n in 1..=5 {
        let classes = enumerate_strict(n).unwrap();
        for s in 0..100 {
            let x: Vec<Complex64> = (0..n).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let bar_free = s % 2 == 0;
            let w = random_signed(&mut rng, n, bar_free);
            let got = key_identity_sum(&w, &x).unwrap();
            let y: Vec<Complex64> = w
                .images()
                .iter()
                .zip(w.barred())
                .map(|(&k, &b)| if b { -x[k - 1] } else { x[k - 1] })
                .collect();
            let scale: f64 = classes
                .iter()
                .map(|l| {
                    let h = complement(l, n).unwrap();
                    (ptilde(l.parts(), &y).unwrap() * ptilde(h.parts(), &x).unwrap()).norm()
                })
                .sum::<f64>()
                .max(1.0);
            let want = if bar_free {
                schur(StrictPartition::staircase(n as u32).parts(), &x).unwrap()
            } else {
                c(0.0, 0.0)
            };
            worst = worst.max((got - want).norm() / scale);
            samples += 1;
        }
    }
    outcome(worst <= 1e-8, format!("{samples} samples over n=1..5, max scaled error {worst:.2e}"))
}

fn ring_recovery() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut max_distance: f64 = 0.0;
    let mut problems = Vec::new();
    let mut pairs = 0;
    for kind in KINDS {
        for n in 1..=5 {
            let tables = evaluation_tables(kind, n).unwrap();
            let basis = Basis::new(n).unwrap();
            let dim = basis.len();
            let (m, nn) = (tables.values(), tables.dual());
            for a in 0..dim {
                for b in 0..dim {
                    let (la, lb) = (basis.class(a), basis.class(b));
                    let ab = match structure_constants(kind, n, la, lb) {
                        Ok(t) => t,
                        Err(e) => {
                            problems.push(format!("{kind}({n}) {la}·{lb}: {e}"));
                            continue;
                        }
                    };
                    pairs += 1;
                    if ab.iter().any(|t| t.coeff < 0) {
                        problems.push(format!("{kind}({n}) {la}·{lb} has a negative coefficient"));
                    }
                    if structure_constants(kind, n, lb, la).unwrap() != ab {
                        problems.push(format!("{kind}({n}) {la}·{lb} not commutative"));
                    }
                    // pre-rounding distance, recomputed from the raw transform
                    for nu in 0..dim {
                        let raw: Complex64 = (0..dim).map(|i| nn[(nu, i)] * m[(i, a)] * m[(i, b)]).sum();
                        let exact: i64 =
                            ab.iter().filter(|t| t.class == *basis.class(nu)).map(|t| t.coeff).sum();
                        max_distance = max_distance.max((raw - exact as f64).norm());
                    }
                }
            }
            let basis_el = |i: usize| RingElement::basis(kind, n, basis.class(i)).unwrap();
            for _ in 0..200 {
                let (x, y, z) = (
                    basis_el(rng.gen_range(0..dim)),
                    basis_el(rng.gen_range(0..dim)),
                    basis_el(rng.gen_range(0..dim)),
                );
                let left = multiply(&multiply(&x, &y).unwrap(), &z).unwrap();
                let right = multiply(&x, &multiply(&y, &z).unwrap()).unwrap();
                if left != right {
                    problems.push(format!("{kind}({n}) ({x})({y})({z}) not associative"));
                }
            }
        }
    }
    outcome(
        problems.is_empty() && max_distance < 1e-6,
        format!(
            "{pairs} products, max pre-rounding distance {max_distance:.2e}, 2000 associativity triples{}",
            if problems.is_empty() { String::new() } else { format!("; {}", problems.join("; ")) }
        ),
    )
}

fn presentation() -> Outcome {
    let mut total = 0;
    let mut failures = Vec::new();
    for kind in KINDS {
        for n in 2..=5 {
            let r = verify_presentation(kind, n).unwrap();
            total += r.checks.len();
            failures.extend(r.failures().map(|c| format!("{kind}({n}) {}: {}", c.name, c.discrepancy)));
            let top_relation = match kind {
                Kind::Og => format!("tau_{n}^2 = q"),
                Kind::Lg => format!("sigma_{n}^2 relation"),
            };
            if !r.checks.iter().any(|c| c.name == top_relation) {
                failures.push(format!("{kind}({n}) lacks {top_relation}"));
            }
            if n >= 3 && !r.checks.iter().any(|c| c.name.starts_with("Pfaffian Giambelli")) {
                failures.push(format!("{kind}({n}) has no Pfaffian Giambelli instance"));
            }
        }
    }
    outcome(failures.is_empty(), format!("{total} identities checked{}", if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }))
}

/// Each product re-derived by substituting into the defining relations.
fn known_products() -> Outcome {
    let term = |kind, n, s: &str, d, k| RingElement::term(kind, n, &p(s), d, k).unwrap();
    let prod = |kind, n, a: &str, b: &str| {
        multiply(&RingElement::basis(kind, n, &p(a)).unwrap(), &RingElement::basis(kind, n, &p(b)).unwrap()).unwrap()
    };
    let cases = [
        ("τ₁² = τ₂", prod(Kind::Og, 2, "1", "1"), term(Kind::Og, 2, "2", 0, 1)),
        ("τ₂² = q", prod(Kind::Og, 2, "2", "2"), term(Kind::Og, 2, "", 1, 1)),
        ("σ₁² = 2σ₂", prod(Kind::Lg, 2, "1", "1"), term(Kind::Lg, 2, "2", 0, 2)),
        (
            "σ₂σ₁ = σ₂₁ + q",
            prod(Kind::Lg, 2, "2", "1"),
            &term(Kind::Lg, 2, "2,1", 0, 1) + &term(Kind::Lg, 2, "", 1, 1),
        ),
    ];
    let bad: Vec<String> = cases
        .iter()
        .filter(|(_, got, want)| got != want)
        .map(|(name, got, _)| format!("{name} gave {got}"))
        .collect();
    outcome(bad.is_empty(), if bad.is_empty() { "4 products exact".into() } else { bad.join("; ") })
}

fn spectra() -> Outcome {
    let og2 = c1_spectrum(Kind::Og, 2).unwrap();
    let og2_want = [c(4.0, 0.0), c(0.0, 4.0), c(-4.0, 0.0), c(0.0, -4.0)];
    let d_og = multiset_distance(&og2, &og2_want).unwrap();

    let lg2 = c1_spectrum(Kind::Lg, 2).unwrap();
    let t0 = 6.0 * 2f64.powf(-1.0 / 3.0);
    let mut lg2_want: Vec<Complex64> = (0..3).map(|k| Complex64::from_polar(t0, 2.0 * PI * k as f64 / 3.0)).collect();
    lg2_want.push(c(0.0, 0.0));
    let d_lg = multiset_distance(&lg2, &lg2_want).unwrap();

    let mut top_err: f64 = 0.0;
    for n in 2..=8 {
        let want = n as f64 * 4f64.powf(1.0 / (2 * n) as f64) / (PI / (2 * n) as f64).sin();
        let base = ExclusiveTuple::base(n).unwrap();
        let pts = points(Kind::Og, n).unwrap();
        let i0 = pts.iter().position(|pt| *pt.tuple() == base).unwrap();
        let f0 = c1_spectrum(Kind::Og, n).unwrap()[i0];
        top_err = top_err.max((f0 - want).norm() / want);
    }
    outcome(
        d_og <= 1e-9 && d_lg <= 1e-9 && top_err <= 1e-10,
        format!("og2 {d_og:.1e}, lg2 {d_lg:.1e}, f(I0) relative {top_err:.1e} for n=2..8"),
    )
}

fn eigenbasis() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut independence: f64 = 0.0;
    let mut problems = Vec::new();
    let mut pairs = 0;
    for kind in KINDS {
        for n in 1..=5 {
            let tables = evaluation_tables(kind, n).unwrap();
            let classes = enumerate_strict(n).unwrap();
            let reference = eigenpairs(kind, n, &StrictPartition::empty()).unwrap();
            for lambda in &classes {
                let op = operator_matrix(kind, n, lambda).unwrap();
                let a = op.norm_inf();
                let ps = eigenpairs(kind, n, lambda).unwrap();
                for (pair, r) in ps.iter().zip(&reference) {
                    if pair.vector != r.vector || pair.tuple != r.tuple {
                        problems.push(format!("{kind}({n}) ({lambda}) changes the eigenvector"));
                    }
                    if pair.norm_inf() == 0.0 {
                        problems.push(format!("{kind}({n}) zero eigenvector"));
                    }
                    worst = worst.max(op.eigen_residual(pair) / (a * pair.norm_inf()));
                    pairs += 1;
                }
            }
            // the vectors pair diagonally against the evaluation rows
            let m = tables.values();
            let dim = classes.len();
            let gram: Vec<Vec<Complex64>> = (0..dim)
                .map(|i| (0..dim).map(|j| (0..dim).map(|mu| reference[i].vector[mu] * m[(j, mu)]).sum()).collect())
                .collect();
            let diag_min = (0..dim).map(|i| gram[i][i].norm()).fold(f64::INFINITY, f64::min);
            let off = (0..dim)
                .flat_map(|i| (0..dim).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| gram[i][j].norm())
                .fold(0.0, f64::max);
            if diag_min <= 1e-6 {
                problems.push(format!("{kind}({n}) eigenvectors degenerate"));
            }
            independence = independence.max(off / diag_min);
        }
    }
    outcome(
        problems.is_empty() && worst <= 1e-8 && independence <= 1e-8,
        format!(
            "{pairs} eigenpairs, max scaled residual {worst:.2e}, off-diagonal pairing {independence:.2e}{}",
            if problems.is_empty() { String::new() } else { format!("; {}", problems.join("; ")) }
        ),
    )
}

fn conjecture() -> Outcome {
    let mut bad = Vec::new();
    for kind in KINDS {
        for n in 2..=8 {
            let r = conjecture_o(kind, n, 1e-8).unwrap();
            let census = match kind {
                Kind::Og => 2 * n,
                Kind::Lg => n + 1,
            };
            let top_simple = r
                .spectrum
                .iter()
                .find(|s| (s.re - r.t0).abs() <= 1e-8 * r.t0 && s.im.abs() <= 1e-8 * r.t0)
                .map(|s| s.multiplicity);
            let total: usize = r.spectrum.iter().map(|s| s.multiplicity).sum();
            if r.status != Status::Pass
                || r.max_modulus_count != census
                || top_simple != Some(1)
                || total != 1 << n
                || r.fano_index != kind.fano_index(n)
            {
                bad.push(format!("{kind}({n}): {:?} {:?}", r.status, r.conditions));
            }
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "og/lg n=2..8 all pass, census 2n / n+1".into() } else { bad.join("; ") })
}

fn semisimplicity() -> Outcome {
    let mut smallest = f64::INFINITY;
    for kind in KINDS {
        for n in 1..=6 {
            let tables = evaluation_tables(kind, n).unwrap();
            let e = quantum_euler(kind, n).unwrap();
            for i in 0..tables.dimension() {
                smallest = smallest.min(e.evaluate(&tables, i).unwrap().norm());
            }
        }
    }
    outcome(smallest > 1e-6, format!("min |e_q| over all points, n ≤ 6: {smallest:.3e}"))
}

fn peterson_suite() -> Outcome {
    let (mut q_err, mut rel_err, mut pow_err): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut bad = Vec::new();
    for kind in KINDS {
        for n in 2..=8 {
            let pts = points(kind, n).unwrap();
            if pts.len() != 1 << n {
                bad.push(format!("{kind}({n}) has {} points", pts.len()));
            }
            for pt in &pts {
                q_err = q_err.max((evaluate_q(pt) - 1.0).norm());
                rel_err = rel_err.max(relation_residuals(pt));
                // The squares of an exclusive tuple are the m distinct roots of
                // y^m = (-1)^{m+1}, so their elementary functions are 0, …, 0, 1.
                let m = pt.tuple().order();
                let squares: Vec<Complex64> = pt.tuple().roots().iter().map(|z| z * z).collect();
                let e = elementary_all(&squares);
                for (i, v) in e.iter().enumerate().take(m + 1).skip(1) {
                    let want = if i == m { 1.0 } else { 0.0 };
                    pow_err = pow_err.max((v - want).norm());
                }
                pow_err = pow_err.max(exclusive_power_check(pt.tuple()).max());
            }
        }
    }
    outcome(
        bad.is_empty() && q_err <= 1e-10 && rel_err <= 1e-9 && pow_err <= 1e-10,
        format!("q error {q_err:.1e}, relation residual {rel_err:.1e}, E_i(ζ^2I) error {pow_err:.1e}{}", if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("orthogonality", orthogonality),
        ("hyperoctahedral identity", hyperoctahedral),
        ("exact ring recovery", ring_recovery),
        ("presentation oracle", presentation),
        ("known small products", known_products),
        ("c1 spectra", spectra),
        ("simultaneous eigenbasis", eigenbasis),
        ("Conjecture O", conjecture),
        ("semisimplicity witness", semisimplicity),
        ("Peterson points", peterson_suite),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = std::panic::catch_unwind(f).unwrap_or_else(|_| outcome(false, "panicked"));
        println!(
            "criterion {:>2} {:<26} {}  {} ({:.2} s)",
            k + 1,
            name,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!o.passed);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
