//! The oracle suite behind `ellipvol validate`: exact identities on fixed
//! seeds, Monte Carlo checks against closed forms, and test calibration.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::near_identity_spectrum;
use crate::error::Result;
use crate::geometry::{
    body_log_volume, linear_image_log_volume, log_factorial, pinned_simplex_log_volume,
    upsilon_log_volume, BodyShape, ConvexBodyKind,
};
use crate::linalg::{
    jacobi_spectrum, log_det_gram, normalize_spectrum, perpendicular_log_det,
    projection_diagonals_nested, projection_matrix, DenseMatrix, Spectrum,
};
use crate::sampling::{
    elliptical_sample, gaussian_matrix, random_orthogonal, unit_sphere_vector, EllipticalModel,
    RadialLaw, RandomStream,
};
use crate::stats::{
    classify_regime, ks_one_sample_normal, ks_two_sample, quadratic_form_moment_check_with,
    quadratic_form_moment_with, standardize,
};
use crate::theory::{
    beta_moment, estimate_t_matrix_with, norming_constants, t_matrix_identity, variance_limit,
    TEstimateOptions, VarianceVariant,
};

/// `β(n, exponents)`; swappable so the suite can be run against a faulty
/// implementation.
pub type BetaFn = dyn Fn(usize, &[u32]) -> Result<f64> + Sync;

/// Seeds of the exact-identity suite.
pub const EXACT_SEEDS: std::ops::RangeInclusive<u64> = 1..=20;
/// Dimensions of the exact-identity suite (`p = n/2`).
pub const EXACT_GRID: [usize; 4] = [8, 16, 32, 64];
/// Dimensions of the sphere-moment suite.
pub const SPHERE_GRID: [usize; 4] = [2, 3, 10, 50];
pub const SPHERE_SAMPLES: usize = 100_000;
pub const QUF_DRAWS: usize = 100_000;

/// Slack on the projection entry bounds.
const BOUND_SLACK: f64 = 1e-10;

/// One named check with its measured deviation and tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub group: String,
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `measured ≤ tolerance`.
    pub fn at_most(group: &str, name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            group: group.into(),
            name: name.into(),
            measured,
            tolerance,
            passed: measured <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub elapsed_secs: f64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} [{}] {}: measured {:.3e}, tolerance {:.3e}",
                if c.passed { "PASS" } else { "FAIL" },
                c.group,
                c.name,
                c.measured,
                c.tolerance
            );
        }
        let failed = self.failures().len();
        let _ = writeln!(
            out,
            "{} checks, {} failed, {:.1}s",
            self.checks.len(),
            failed,
            self.elapsed_secs
        );
        out
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Spectrum with eigenvalues spread over `[0.5, 2]`, normalised.
fn spread_spectrum(n: usize, stream: &mut RandomStream) -> Spectrum {
    let values = (0..n).map(|_| 0.5 + 1.5 * stream.open_unit()).collect();
    normalize_spectrum(&Spectrum::new(values).expect("positive values"))
}

/// Worst deviations for one `(seed, n)` of the exact suite.
#[derive(Debug, Default, Clone, Copy)]
struct ExactDeviations {
    logdet: f64,
    trace: f64,
    bounds: f64,
    nested: f64,
    trace_square_identity: f64,
    trace_square_bound: f64,
    weighted_trace: f64,
    upsilon: f64,
    linear_image: f64,
    factorization: f64,
    rotation: f64,
    jacobi: f64,
}

impl ExactDeviations {
    fn max(self, o: Self) -> Self {
        Self {
            logdet: self.logdet.max(o.logdet),
            trace: self.trace.max(o.trace),
            bounds: self.bounds.max(o.bounds),
            nested: self.nested.max(o.nested),
            trace_square_identity: self.trace_square_identity.max(o.trace_square_identity),
            trace_square_bound: self.trace_square_bound.max(o.trace_square_bound),
            weighted_trace: self.weighted_trace.max(o.weighted_trace),
            upsilon: self.upsilon.max(o.upsilon),
            linear_image: self.linear_image.max(o.linear_image),
            factorization: self.factorization.max(o.factorization),
            rotation: self.rotation.max(o.rotation),
            jacobi: self.jacobi.max(o.jacobi),
        }
    }
}

/// `(tr(Q²), tr(A⁴P)/T̂², T̂)` for `Q = APA/T̂`, `T̂ = Σ λ_k p_kk`.
fn trace_square_pair(p_mat: &DenseMatrix, spectrum: &Spectrum) -> (f64, f64, f64) {
    let a = spectrum.sqrt_values();
    let lambda = spectrum.values();
    let apa = p_mat.scale_rows(&a).scale_columns(&a);
    let t = apa.trace();
    let tr_q2 = apa.frobenius_norm().powi(2) / (t * t);
    let tr_a4p: f64 = lambda
        .iter()
        .zip(p_mat.diag())
        .map(|(l, d)| l * l * d)
        .sum();
    (tr_q2, tr_a4p / (t * t), t)
}

fn exact_case(seed: u64, n: usize) -> Result<ExactDeviations> {
    let p = n / 2;
    let mut stream = RandomStream::new(seed, n as u64);
    let spectrum = spread_spectrum(n, &mut stream);
    let c = crate::theory::condition_bound(&spectrum);
    let mut d = ExactDeviations::default();

    let model = EllipticalModel::new(p, &spectrum, RadialLaw::LogNormal { mean: 0.0, sd: 1.0 })?;
    let sample = elliptical_sample(&model, &mut stream);
    let y = &sample.y;
    let chol = log_det_gram(y)?;
    let perp = perpendicular_log_det(y)?.log_det;
    d.logdet = rel(perp, chol);

    // Projections of the first i rows of a Gaussian (p−1)×n matrix.
    let g = gaussian_matrix(p - 1, n, &mut stream);
    let nested = projection_diagonals_nested(&g, &spectrum)?;
    for (idx, diag) in nested.iter().enumerate() {
        let i = idx + 1;
        d.trace = d.trace.max(rel(diag.iter().sum(), (n - i) as f64));
        let t_hat: f64 = diag.iter().zip(spectrum.values()).map(|(p, l)| p * l).sum();
        let lo = (n - i) as f64 / c;
        let hi = (n - i) as f64 * c;
        d.weighted_trace = d
            .weighted_trace
            .max((lo - t_hat).max(t_hat - hi).max(0.0) / lo);
    }
    let identity = Spectrum::identity(n);
    for i in [1, p / 2, p - 1].into_iter().filter(|&i| i >= 1) {
        let block = g.top_rows(i);
        let p_mat = projection_matrix(&block, &spectrum)?;
        d.trace = d.trace.max(rel(p_mat.trace(), (n - i) as f64));
        for r in 0..n {
            for s in 0..n {
                let v = p_mat.get(r, s);
                let excess = if r == s {
                    (-v).max(v - 1.0)
                } else {
                    v.abs() - 0.5
                };
                d.bounds = d.bounds.max(excess.max(0.0));
            }
            d.nested = d.nested.max((p_mat.get(r, r) - nested[i - 1][r]).abs());
        }
        let (tr_q2, bound, _) = trace_square_pair(&p_mat, &spectrum);
        d.trace_square_bound = d.trace_square_bound.max((tr_q2 - bound) / bound);
        let p_id = projection_matrix(&block, &identity)?;
        let (tr_q2, formula, _) = trace_square_pair(&p_id, &identity);
        d.trace_square_identity = d
            .trace_square_identity
            .max(((tr_q2 - formula) / formula).abs());
    }

    let delta = pinned_simplex_log_volume(y)?;
    d.upsilon = (upsilon_log_volume(ConvexBodyKind::simplex(p), y)? - delta).abs();

    let m = gaussian_matrix(p, p, &mut stream);
    let two_routes = pinned_simplex_log_volume(y)? + crate::geometry::log_abs_det(&m)?;
    let direct = pinned_simplex_log_volume(&m.matmul(y)?)?;
    d.linear_image = rel(two_routes, direct);
    linear_image_log_volume(&m, y)?;

    let x = sample.x()?;
    let factored = -log_factorial(p) + sample.sum_log_radii() + 0.5 * chol;
    d.factorization = rel(pinned_simplex_log_volume(&x)?, factored);

    let q = random_orthogonal(n, &mut stream);
    d.rotation = rel(pinned_simplex_log_volume(&y.matmul(&q)?)?, delta);

    if n <= 32 {
        let s = q.transpose().scale_columns(spectrum.values()).matmul(&q)?;
        let found = jacobi_spectrum(&s)?;
        d.jacobi = found
            .values()
            .iter()
            .zip(spectrum.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
    }
    Ok(d)
}

/// Exact identities on seeds 1..=20 for `n ∈ {8, 16, 32, 64}`, `p = n/2`.
pub fn exact_identity_checks() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in EXACT_GRID {
        let p = n / 2;
        let worst = EXACT_SEEDS
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&seed| exact_case(seed, n))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(ExactDeviations::default(), ExactDeviations::max);
        let tag = format!("(n={n}, p={p})");
        let g = "exact";
        checks.extend([
            Check::at_most(
                g,
                format!("log det perpendicular vs Cholesky {tag}"),
                worst.logdet,
                1e-8,
            ),
            Check::at_most(g, format!("tr P_i = n - i {tag}"), worst.trace, 1e-8),
            Check::at_most(
                g,
                format!("projection entry bounds {tag}"),
                worst.bounds,
                BOUND_SLACK,
            ),
            Check::at_most(
                g,
                format!("nested vs explicit projection diagonals {tag}"),
                worst.nested,
                1e-10,
            ),
            Check::at_most(
                g,
                format!("tr(Q^2) = tr(A^4 P)/T^2, identity spectrum {tag}"),
                worst.trace_square_identity,
                1e-8,
            ),
            Check::at_most(
                g,
                format!("tr(Q^2) <= tr(A^4 P)/T^2, spread spectrum {tag}"),
                worst.trace_square_bound,
                1e-10,
            ),
            Check::at_most(
                g,
                format!("C^-1 (n-i) <= T_i <= C (n-i) {tag}"),
                worst.weighted_trace,
                1e-12,
            ),
            Check::at_most(
                g,
                format!("simplex body volume = pinned simplex volume {tag}"),
                worst.upsilon,
                0.0,
            ),
            Check::at_most(
                g,
                format!("linear image volume, two routes {tag}"),
                worst.linear_image,
                1e-8,
            ),
            Check::at_most(
                g,
                format!("volume factorisation X vs (R, Y) {tag}"),
                worst.factorization,
                1e-8,
            ),
            Check::at_most(
                g,
                format!("rotation invariance of the volume {tag}"),
                worst.rotation,
                1e-8,
            ),
        ]);
        if n <= 32 {
            checks.push(Check::at_most(
                g,
                format!("Jacobi eigenvalues of Q diag(l) Q^T {tag}"),
                worst.jacobi,
                1e-8,
            ));
        }
    }
    let cross = body_log_volume(ConvexBodyKind {
        kind: BodyShape::CrossPolytope,
        p: 40,
    });
    let cube = body_log_volume(ConvexBodyKind {
        kind: BodyShape::SymmetricCube,
        p: 40,
    });
    checks.push(Check::at_most(
        "exact",
        "cube minus cross-polytope log-volume = log p! (p=40)",
        (cube - cross - log_factorial(40)).abs(),
        1e-10,
    ));
    Ok(checks)
}

/// Exact relations between sphere moments.
pub fn beta_identity_checks(beta: &BetaFn) -> Result<Vec<Check>> {
    let mut norm_dev: f64 = 0.0;
    let mut closed_dev: f64 = 0.0;
    let mut product_dev: f64 = 0.0;
    for n in 2..=200usize {
        let nf = n as f64;
        let b4 = beta(n, &[2])?;
        let b22 = beta(n, &[1, 1])?;
        norm_dev = norm_dev.max((nf * b4 + nf * (nf - 1.0) * b22 - 1.0).abs());
        closed_dev = closed_dev.max((b4 - 3.0 / (nf * (nf + 2.0))).abs() * nf * nf);
        for r in 1..=n.min(6) {
            let ones = vec![1u32; r];
            let prod: f64 = (0..r).map(|j| nf + 2.0 * j as f64).product();
            product_dev = product_dev.max((beta(n, &ones)? * prod - 1.0).abs());
        }
    }
    let g = "sphere";
    Ok(vec![
        Check::at_most(
            g,
            "n beta4 + n(n-1) beta22 = 1, n = 2..200",
            norm_dev,
            1e-12,
        ),
        Check::at_most(
            g,
            "beta4 = 3/(n(n+2)) (scaled by n^2), n = 2..200",
            closed_dev,
            1e-12,
        ),
        Check::at_most(g, "beta(1,..,1) n(n+2)...(n+2r-2) = 1", product_dev, 1e-12),
    ])
}

/// Patterns compared against Monte Carlo sphere moments.
pub const SPHERE_PATTERNS: [&[u32]; 5] = [&[1], &[2], &[1, 1], &[2, 1], &[3]];

/// Monte Carlo sphere moments against `beta`, in standard errors.
pub fn sphere_moment_checks(beta: &BetaFn, samples: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in SPHERE_GRID {
        let mut stream = RandomStream::new(0x005E_ED5F, n as u64);
        let mut sums = [(0.0f64, 0.0f64); 5];
        for _ in 0..samples {
            let u = unit_sphere_vector(n, &mut stream);
            for (slot, pat) in sums.iter_mut().zip(SPHERE_PATTERNS) {
                let v: f64 = pat
                    .iter()
                    .zip(&u)
                    .map(|(&m, x)| x.powi(2 * m as i32))
                    .product();
                slot.0 += v;
                slot.1 += v * v;
            }
        }
        let m = samples as f64;
        for ((s, s2), pat) in sums.into_iter().zip(SPHERE_PATTERNS) {
            if pat.len() > n {
                continue;
            }
            let mean = s / m;
            let se = ((s2 / m - mean * mean) / (m - 1.0)).max(0.0).sqrt();
            let exact = beta(n, pat)?;
            let z = if se > 0.0 {
                (mean - exact).abs() / se
            } else {
                (mean - exact).abs() * 1e12
            };
            checks.push(Check::at_most(
                "sphere",
                format!("E[U^{pat:?}] Monte Carlo (n={n}, {samples} samples), |z|"),
                z,
                5.0,
            ));
        }
    }
    Ok(checks)
}

/// Exact and Monte Carlo checks of the sphere quadratic-form product moment.
pub fn quadratic_form_checks(beta: &BetaFn, draws: usize) -> Result<Vec<Check>> {
    let g = "quadratic-form";
    let id = DenseMatrix::identity(4);
    let a = DenseMatrix::diagonal(&[1.0, 0.0, 0.0]);
    let b = DenseMatrix::diagonal(&[0.0, 1.0, 0.0]);
    let mut checks = vec![
        Check::at_most(
            g,
            "A = B = I gives 1 (n=4)",
            (quadratic_form_moment_with(&id, &id, beta)? - 1.0).abs(),
            1e-12,
        ),
        Check::at_most(
            g,
            "diag(1,0,0), diag(0,1,0) gives 1/15",
            (quadratic_form_moment_with(&a, &b, beta)? - 1.0 / 15.0).abs(),
            1e-12,
        ),
    ];
    let zs = quadratic_form_grid()
        .into_par_iter()
        .enumerate()
        .map(|(j, (a, b))| {
            let mut s = RandomStream::new(0x0F0F, 1000 + j as u64);
            quadratic_form_moment_check_with(&a, &b, draws, &mut s, beta)
                .map(|c| (a.rows(), c.z_score))
        })
        .collect::<Result<Vec<_>>>()?;
    for (j, (n, z)) in zs.into_iter().enumerate() {
        checks.push(Check::at_most(
            g,
            format!("pair {j} (n={n}, {draws} draws), |z|"),
            z.abs(),
            5.0,
        ));
    }
    Ok(checks)
}

/// Ten fixed pairs of random symmetric matrices, `n ∈ {2, 3, 5, 10}`.
pub fn quadratic_form_grid() -> Vec<(DenseMatrix, DenseMatrix)> {
    let sym = |n: usize, s: &mut RandomStream| {
        let g = gaussian_matrix(n, n, s);
        let mut m = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, 0.5 * (g.get(i, j) + g.get(j, i)));
            }
        }
        m
    };
    let mut s = RandomStream::new(0xABCD, 0);
    (0..10)
        .map(|j| {
            let n = [2, 3, 5, 10][j % 4];
            (sym(n, &mut s), sym(n, &mut s))
        })
        .collect()
}

/// t-matrix Monte Carlo against the identity closed form and the row-sum
/// constraint; norming constants against direct summation.
pub fn theory_checks() -> Result<Vec<Check>> {
    let g = "t-matrix";
    let (n, p) = (16, 8);
    let opts = TEstimateOptions {
        mc_draws: 500,
        renormalize: false,
    };
    let t = estimate_t_matrix_with(&Spectrum::identity(n), p, opts, &RandomStream::new(7, 0))?;
    let mut worst_z: f64 = 0.0;
    for i in 1..p {
        let target = (n - i) as f64 / n as f64;
        for (v, se) in t.row(i).iter().zip(&t.std_errors[i - 1]) {
            worst_z = worst_z.max((v - target).abs() / se);
        }
    }
    let near = near_identity_spectrum(n, 1.0)?;
    let tn = estimate_t_matrix_with(&near, p, opts, &RandomStream::new(8, 0))?;
    let row_z = (1..p)
        .map(|i| (tn.row_sum(i) - (n - i) as f64).abs() / tn.row_std_error(i))
        .fold(0.0, f64::max);
    let mut checks = vec![
        Check::at_most(
            g,
            format!("identity t-hat vs (n-i)/n (n={n}, p={p}, 500 draws), max |z|"),
            worst_z,
            5.0,
        ),
        Check::at_most(
            g,
            format!("near-identity row sums vs n-i (n={n}, p={p}), max |z|"),
            row_z,
            5.0,
        ),
    ];

    let g = "norming";
    for (n, p) in [(8usize, 4usize), (16, 8), (32, 16), (64, 32), (400, 200)] {
        let t = t_matrix_identity(n, p)?;
        let c = norming_constants(&Spectrum::identity(n), p, &t, VarianceVariant::Theorem)?;
        let nf = n as f64;
        let sigma2 = -2.0 * p as f64 / nf + 2.0 * (1..p).map(|i| 1.0 / (n - i) as f64).sum::<f64>();
        let mu = nf.ln() - p as f64 * nf.ln() - sigma2 / 2.0
            + (1..p).map(|i| ((n - i) as f64).ln()).sum::<f64>();
        checks.push(Check::at_most(
            g,
            format!("identity specialisation of (mu, sigma^2) (n={n}, p={p})"),
            rel(c.sigma2, sigma2).max(rel(c.mu, mu)),
            1e-12,
        ));
    }
    let c = norming_constants(
        &Spectrum::identity(400),
        200,
        &t_matrix_identity(400, 200)?,
        VarianceVariant::Theorem,
    )?;
    checks.push(Check::at_most(
        g,
        "sigma^2 (n=400, p=200) vs limit 2 ln 2 - 1",
        (c.sigma2 - variance_limit(0.5)?).abs(),
        0.02,
    ));
    let small = norming_constants(
        &Spectrum::identity(4),
        2,
        &t_matrix_identity(4, 2)?,
        VarianceVariant::Theorem,
    );
    checks.push(Check::at_most(
        g,
        "n=4, p=2 rejected with non-positive variance",
        if matches!(small, Err(crate::Error::NonPositiveVariance(_))) {
            0.0
        } else {
            1.0
        },
        0.0,
    ));
    Ok(checks)
}

/// KS calibration under the null, isotropy of the sphere sampler, and
/// algebraic properties of the statistics helpers.
pub fn statistical_checks() -> Result<Vec<Check>> {
    let g = "statistics";
    let runs = 200;
    let rejections = (0..runs as u64)
        .into_par_iter()
        .map(|r| {
            let mut s = RandomStream::new(0xCA11, r);
            let x: Vec<f64> = (0..1000).map(|_| s.standard_normal()).collect();
            ks_one_sample_normal(&x).map(|g| g.ks_p_value < 0.05)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|&r| r)
        .count();
    let frac = rejections as f64 / runs as f64;
    let mut checks = vec![Check::at_most(
        g,
        format!(
            "KS null: fraction p<0.05 over {runs} runs = {frac:.3}, distance outside [0.01, 0.12]"
        ),
        (0.01 - frac).max(frac - 0.12).max(0.0),
        0.0,
    )];

    // log det of rows A u_i versus rows A Q u_i for a fixed rotation Q.
    let (n, p, reps) = (8, 4, 2000);
    let mut s = RandomStream::new(0x0707, 0);
    let spectrum = spread_spectrum(n, &mut s);
    let q = random_orthogonal(n, &mut s);
    let a = spectrum.sqrt_values();
    let draw = |rotate: bool, r: u64| -> Result<f64> {
        let mut s = RandomStream::new(0x0707, 1 + 2 * r + rotate as u64);
        let u = gaussian_matrix(p, n, &mut s);
        let mut rows = DenseMatrix::zeros(p, n);
        for i in 0..p {
            let norm = u.row(i).iter().map(|x| x * x).sum::<f64>().sqrt();
            let dir: Vec<f64> = if rotate {
                (0..n)
                    .map(|k| (0..n).map(|j| q.get(k, j) * u.get(i, j)).sum::<f64>() / norm)
                    .collect()
            } else {
                u.row(i).iter().map(|x| x / norm).collect()
            };
            for k in 0..n {
                rows.set(i, k, a[k] * dir[k]);
            }
        }
        log_det_gram(&rows)
    };
    let plain = (0..reps)
        .map(|r| draw(false, r))
        .collect::<Result<Vec<_>>>()?;
    let rotated = (0..reps)
        .map(|r| draw(true, r))
        .collect::<Result<Vec<_>>>()?;
    let ks = ks_two_sample(&plain, &rotated)?;
    checks.push(Check::at_most(
        g,
        format!("rotation invariance of log det law (n={n}, p={p}, {reps} reps), KS p-value below 0.001"),
        (0.001 - ks.ks_p_value).max(0.0),
        0.0,
    ));

    let x = [0.3, -1.2, 4.5, 2.0];
    let back: Vec<f64> = standardize(&x, 1.7, 0.4)?
        .iter()
        .map(|z| z * 0.4 + 1.7)
        .collect();
    let roundtrip = x
        .iter()
        .zip(&back)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    checks.push(Check::at_most(
        g,
        "standardize then invert",
        roundtrip,
        1e-12,
    ));

    let law = |scale: f64| RadialLaw::LogCauchy {
        location: 0.0,
        scale,
    };
    let base = classify_regime(&law(0.01), 50, 0.6)?;
    let scaled = classify_regime(&law(0.03), 50, 0.6)?;
    checks.push(Check::at_most(
        g,
        "regime scale consistency: s_n scales with the radial scale",
        rel(scaled.s_n, 3.0 * base.s_n),
        1e-12,
    ));
    Ok(checks)
}

/// Runs the whole suite with the given `β`.
pub fn run_with_beta(beta: &BetaFn) -> Result<ValidationReport> {
    let start = Instant::now();
    let mut checks = exact_identity_checks()?;
    checks.extend(beta_identity_checks(beta)?);
    checks.extend(sphere_moment_checks(beta, SPHERE_SAMPLES)?);
    checks.extend(quadratic_form_checks(beta, QUF_DRAWS)?);
    checks.extend(theory_checks()?);
    checks.extend(statistical_checks()?);
    Ok(ValidationReport {
        checks,
        elapsed_secs: start.elapsed().as_secs_f64(),
    })
}

/// Runs the suite with the library's `β`.
pub fn validate() -> Result<ValidationReport> {
    run_with_beta(&beta_moment)
}
