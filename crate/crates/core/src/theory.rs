//! Deterministic quantities behind the log-determinant CLT.
//!
//! Sphere moments `β`, the matrix `t_{i,k} = E[p_{i,kk}]` (closed form for the
//! identity, Monte Carlo otherwise), the norming constants `(μ_n, σ_n²)`,
//! assumption diagnostics and the second moment of the centred martingale
//! increments `Z̃_{i+1} = n u_{i+1}ᵀ Q_i u_{i+1} − 1`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, projection_diagonals_nested, DenseMatrix, Spectrum};
use crate::sampling::{gaussian_matrix, unit_sphere_vector, RandomStream};

/// Largest total moment order accepted by [`beta_moment`].
pub const MAX_MOMENT_ORDER: u32 = 30;

/// Default Monte Carlo draws for [`estimate_t_matrix`].
pub const DEFAULT_MC_DRAWS: usize = 200;

/// Draws per accumulation chunk. Fixed so results do not depend on the
/// number of worker threads.
const DRAWS_PER_CHUNK: usize = 4;

/// `E[U_1^{2m_1} ⋯ U_r^{2m_r}]` for `U` uniform on `S^{n-1}`:
///
/// ```text
/// Π (2m_j − 1)!! / Π_{j=0}^{M−1} (n + 2j),   M = Σ m_j
/// ```
///
/// evaluated in log space.
pub fn beta_moment(n: usize, exponents: &[u32]) -> Result<f64> {
    if exponents.is_empty() || exponents.len() > n {
        return Err(Error::Domain(format!(
            "{} coordinates requested in dimension {n}",
            exponents.len()
        )));
    }
    if exponents.contains(&0) {
        return Err(Error::Domain("moment exponents must be positive".into()));
    }
    let total: u32 = exponents.iter().sum();
    if total > MAX_MOMENT_ORDER {
        return Err(Error::Overflow(total));
    }
    let log_num: f64 = exponents
        .iter()
        .map(|&m| (1..=m).map(|k| ((2 * k - 1) as f64).ln()).sum::<f64>())
        .sum();
    let log_den: f64 = (0..total).map(|j| (n as f64 + 2.0 * j as f64).ln()).sum();
    Ok((log_num - log_den).exp())
}

/// Monte Carlo (or exact) estimate of `t_{i,k}`, `1 ≤ i ≤ p−1`, `1 ≤ k ≤ n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TMatrix {
    pub n: usize,
    pub p: usize,
    /// Row `i − 1` holds `t_{i,1}, …, t_{i,n}`.
    pub values: Vec<Vec<f64>>,
    pub std_errors: Vec<Vec<f64>>,
    pub mc_draws: usize,
    pub row_renormalized: bool,
}

impl TMatrix {
    /// Row for `i` (1-based, `1 ≤ i ≤ p−1`).
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i - 1]
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.row(i).iter().sum()
    }

    /// Standard error of the row sum, combining entry errors as if
    /// independent.
    pub fn row_std_error(&self, i: usize) -> f64 {
        self.std_errors[i - 1]
            .iter()
            .map(|s| s * s)
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_std_error(&self) -> f64 {
        self.std_errors.iter().flatten().fold(0.0, |m, s| m.max(*s))
    }

    /// Largest `|Σ_k t_{i,k} − (n − i)|` over rows.
    pub fn max_row_residual(&self) -> f64 {
        (1..self.p)
            .map(|i| (self.row_sum(i) - (self.n - i) as f64).abs())
            .fold(0.0, f64::max)
    }

    /// Rescales each row to sum exactly to `n − i`, clamping entries to
    /// `[0, 1]`.
    pub fn renormalized(&self) -> TMatrix {
        let mut out = self.clone();
        for (idx, row) in out.values.iter_mut().enumerate() {
            let factor = (self.n - idx - 1) as f64 / row.iter().sum::<f64>();
            for v in row.iter_mut() {
                *v = (*v * factor).clamp(0.0, 1.0);
            }
        }
        out.row_renormalized = true;
        out
    }

    /// `T_i = Σ_k λ_k t_{i,k}` for `i = 1..p−1`.
    pub fn weighted_traces(&self, spectrum: &Spectrum) -> Vec<f64> {
        self.values
            .iter()
            .map(|row| dot(row, spectrum.values()))
            .collect()
    }
}

fn check_dims(n: usize, p: usize) -> Result<()> {
    if p < 2 || p > n {
        return Err(Error::Domain(format!("need 2 <= p <= n, got p={p}, n={n}")));
    }
    Ok(())
}

/// Exact `t_{i,k}(I_n) = (n − i)/n`.
pub fn t_matrix_identity(n: usize, p: usize) -> Result<TMatrix> {
    check_dims(n, p)?;
    let values = (1..p).map(|i| vec![(n - i) as f64 / n as f64; n]).collect();
    Ok(TMatrix {
        n,
        p,
        values,
        std_errors: vec![vec![0.0; n]; p - 1],
        mc_draws: 0,
        row_renormalized: false,
    })
}

/// Options for [`estimate_t_matrix_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TEstimateOptions {
    pub mc_draws: usize,
    /// Rescale each row to sum exactly to `n − i`.
    pub renormalize: bool,
}

impl Default for TEstimateOptions {
    fn default() -> Self {
        Self {
            mc_draws: DEFAULT_MC_DRAWS,
            renormalize: true,
        }
    }
}

/// Running mean / sum of squared deviations over draws, entrywise.
#[derive(Debug, Clone)]
struct Moments {
    count: usize,
    mean: Vec<f64>,
    m2: Vec<f64>,
}

impl Moments {
    fn new(len: usize) -> Self {
        Self {
            count: 0,
            mean: vec![0.0; len],
            m2: vec![0.0; len],
        }
    }

    fn push(&mut self, x: impl Iterator<Item = f64>) {
        self.count += 1;
        let c = self.count as f64;
        for ((m, s), v) in self.mean.iter_mut().zip(self.m2.iter_mut()).zip(x) {
            let d = v - *m;
            *m += d / c;
            *s += d * (v - *m);
        }
    }

    fn merge(mut self, other: &Moments) -> Moments {
        if other.count == 0 {
            return self;
        }
        if self.count == 0 {
            return other.clone();
        }
        let (na, nb) = (self.count as f64, other.count as f64);
        let total = na + nb;
        for k in 0..self.mean.len() {
            let d = other.mean[k] - self.mean[k];
            self.mean[k] += d * nb / total;
            self.m2[k] += other.m2[k] + d * d * na * nb / total;
        }
        self.count += other.count;
        self
    }
}

/// Monte Carlo `t_{i,k}` with the default options (200 draws, rows
/// renormalised).
pub fn estimate_t_matrix(
    spectrum: &Spectrum,
    p: usize,
    mc_draws: usize,
    stream: &RandomStream,
) -> Result<TMatrix> {
    estimate_t_matrix_with(
        spectrum,
        p,
        TEstimateOptions {
            mc_draws,
            ..TEstimateOptions::default()
        },
        stream,
    )
}

/// Monte Carlo `t_{i,k}`: each draw samples one Gaussian `(p−1)×n` matrix
/// `N` and takes the diagonals of `P_1, …, P_{p−1}` from its nested leading
/// blocks. Draw `j` uses `stream.split(j)`; chunks run on the current rayon
/// pool and are merged in index order.
pub fn estimate_t_matrix_with(
    spectrum: &Spectrum,
    p: usize,
    options: TEstimateOptions,
    stream: &RandomStream,
) -> Result<TMatrix> {
    let n = spectrum.len();
    check_dims(n, p)?;
    if !spectrum.is_normalized() {
        return Err(Error::Domain(
            "t-matrix estimation needs a normalised spectrum".into(),
        ));
    }
    if options.mc_draws < 2 {
        return Err(Error::Domain("need at least 2 Monte Carlo draws".into()));
    }
    let rows = p - 1;
    let draws = options.mc_draws;
    let chunks: Vec<(Moments, usize)> = (0..draws.div_ceil(DRAWS_PER_CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc = Moments::new(rows * n);
            let mut discarded = 0;
            for j in c * DRAWS_PER_CHUNK..((c + 1) * DRAWS_PER_CHUNK).min(draws) {
                let mut s = stream.split(j as u64);
                let g = gaussian_matrix(rows, n, &mut s);
                match projection_diagonals_nested(&g, spectrum) {
                    Ok(diag) => acc.push(diag.into_iter().flatten()),
                    Err(e @ Error::SingularInner { .. }) => {
                        log::warn!("t-matrix draw {j} discarded: {e}");
                        discarded += 1;
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok((acc, discarded))
        })
        .collect::<Result<_>>()?;
    let discarded: usize = chunks.iter().map(|c| c.1).sum();
    if discarded * 100 > draws {
        return Err(Error::DiscardRate { discarded, draws });
    }
    let acc = chunks
        .iter()
        .fold(Moments::new(rows * n), |a, (b, _)| a.merge(b));
    let m = acc.count as f64;
    let values: Vec<Vec<f64>> = acc.mean.chunks_exact(n).map(|r| r.to_vec()).collect();
    let std_errors = acc
        .m2
        .chunks_exact(n)
        .map(|r| r.iter().map(|s| (s / (m - 1.0) / m).sqrt()).collect())
        .collect();
    let t = TMatrix {
        n,
        p,
        values,
        std_errors,
        mc_draws: acc.count,
        row_renormalized: false,
    };
    Ok(if options.renormalize {
        t.renormalized()
    } else {
        t
    })
}

/// Which variance formula to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarianceVariant {
    /// Sum over `i = 1..p−1`, as in the limit theorem.
    #[default]
    Theorem,
    /// Also includes the `i = 0` term `2 Σλ² / (Σλ)²`.
    WithI0,
}

/// Centering and normalising sequences `(μ_n, σ_n²)`.
///
/// `log(p!)` is not part of `μ_n`; geometric volumes add it separately.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormingConstants {
    pub n: usize,
    pub p: usize,
    pub mu: f64,
    pub sigma2: f64,
    /// `log Σ_k λ_k t_{i,k}` for `i = 1..p−1`.
    pub per_i_log_terms: Vec<f64>,
    /// `Σ_k λ_k² t_{i,k} / (Σ_k λ_k t_{i,k})²` for `i = 1..p−1`.
    pub per_i_var_terms: Vec<f64>,
    /// `Σλ² / (Σλ)²` under [`VarianceVariant::WithI0`], otherwise 0.
    pub i0_var_term: f64,
    pub log_trace: f64,
    pub variant: VarianceVariant,
    pub gamma: f64,
}

impl NormingConstants {
    pub fn sigma(&self) -> f64 {
        self.sigma2.sqrt()
    }

    /// Recomputes `(μ_n, σ_n²)` from the stored per-`i` terms.
    pub fn reassemble(&self) -> (f64, f64) {
        let (n, p) = (self.n as f64, self.p as f64);
        let sigma2 =
            -2.0 * p / n + 2.0 * (self.per_i_var_terms.iter().sum::<f64>() + self.i0_var_term);
        let mu =
            self.log_trace - p * n.ln() - sigma2 / 2.0 + self.per_i_log_terms.iter().sum::<f64>();
        (mu, sigma2)
    }
}

/// Evaluates `μ_n` and `σ_n²` from a normalised spectrum and a t-matrix:
///
/// ```text
/// σ_n² = −2p/n + 2 Σ_{i=1}^{p−1} Σ_k λ_k² t_{i,k} / (Σ_k λ_k t_{i,k})²
/// μ_n  = log tr(AAᵀ) − p log n − σ_n²/2 + Σ_{i=1}^{p−1} log Σ_k λ_k t_{i,k}
/// ```
pub fn norming_constants(
    spectrum: &Spectrum,
    p: usize,
    t: &TMatrix,
    variant: VarianceVariant,
) -> Result<NormingConstants> {
    let n = spectrum.len();
    check_dims(n, p)?;
    if !spectrum.is_normalized() {
        return Err(Error::Domain(
            "norming constants need a normalised spectrum".into(),
        ));
    }
    if t.n != n || t.p != p || t.values.len() != p - 1 {
        return Err(Error::Dimension(format!(
            "t-matrix is for (n={}, p={}), expected (n={n}, p={p})",
            t.n, t.p
        )));
    }
    let lambda = spectrum.values();
    let lambda2: Vec<f64> = lambda.iter().map(|l| l * l).collect();
    let mut per_i_log_terms = Vec::with_capacity(p - 1);
    let mut per_i_var_terms = Vec::with_capacity(p - 1);
    for row in &t.values {
        let s1 = dot(lambda, row);
        let s2 = dot(&lambda2, row);
        per_i_log_terms.push(s1.ln());
        per_i_var_terms.push(s2 / (s1 * s1));
    }
    let trace = spectrum.sum();
    let i0_var_term = match variant {
        VarianceVariant::Theorem => 0.0,
        VarianceVariant::WithI0 => lambda2.iter().sum::<f64>() / (trace * trace),
    };
    let mut out = NormingConstants {
        n,
        p,
        mu: 0.0,
        sigma2: 0.0,
        per_i_log_terms,
        per_i_var_terms,
        i0_var_term,
        log_trace: trace.ln(),
        variant,
        gamma: p as f64 / n as f64,
    };
    let (mu, sigma2) = out.reassemble();
    if !(sigma2 > 0.0) {
        return Err(Error::NonPositiveVariance(sigma2));
    }
    out.mu = mu;
    out.sigma2 = sigma2;
    Ok(out)
}

/// Limit of `σ_n²` for the identity spectrum: `−2γ − 2 log(1 − γ)`.
pub fn variance_limit(gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::Domain(format!("gamma = {gamma} not in (0, 1)")));
    }
    Ok(-2.0 * gamma - 2.0 * (-gamma).ln_1p())
}

/// `Σ_k (λ_k − mean λ)²`; the flatness condition asks this to vanish.
pub fn b2_deficit(spectrum: &Spectrum) -> f64 {
    let mean = spectrum.sum() / spectrum.len() as f64;
    spectrum.values().iter().map(|l| (l - mean).powi(2)).sum()
}

/// Smallest `C` with `C⁻¹ ≤ λ_min ≤ λ_max ≤ C`.
pub fn condition_bound(spectrum: &Spectrum) -> f64 {
    spectrum.max().max(1.0 / spectrum.min())
}

/// `E[Z̃²]` with its three summands kept apart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZtildeMoment {
    pub value: f64,
    pub components: [f64; 3],
}

/// Second moment of `Z̃_{i+1}` from `E[tr Q_i²]` and `Var(tr Q_i)`:
///
/// ```text
/// (n²β₄ − 1)(E tr Q² − 1/(n−1)) + E tr Q² (n²β₄ − 1)/(n−1) + n² β₂,₂ Var(tr Q)
/// ```
pub fn ztilde_second_moment(n: usize, mean_tr_q2: f64, var_tr_q: f64) -> Result<ZtildeMoment> {
    if n < 2 {
        return Err(Error::Domain(format!("need n >= 2, got {n}")));
    }
    if !(mean_tr_q2.is_finite() && var_tr_q.is_finite() && var_tr_q >= 0.0) {
        return Err(Error::Domain(
            "trace statistics must be finite, variance >= 0".into(),
        ));
    }
    let nf = n as f64;
    let beta4 = beta_moment(n, &[2])?;
    let beta22 = beta_moment(n, &[1, 1])?;
    let k = nf * nf * beta4 - 1.0;
    let components = [
        k * (mean_tr_q2 - 1.0 / (nf - 1.0)),
        mean_tr_q2 * k / (nf - 1.0),
        nf * nf * beta22 * var_tr_q,
    ];
    Ok(ZtildeMoment {
        value: components.iter().sum(),
        components,
    })
}

/// Monte Carlo summary of `Z̃_{i+1}` and of the traces of `Q_i`.
///
/// `mean_tr_q2` averages the exact `tr(Q_i²) = tr(A²P_iA²P_i)/T_i²`. It
/// coincides with `tr(A⁴P_i)/T_i²` only when `A` is a multiple of the
/// identity; in general the latter is an upper bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZtildeSimulation {
    pub n: usize,
    pub i: usize,
    pub draws: usize,
    pub mean: f64,
    pub mean_se: f64,
    pub second_moment: f64,
    pub second_moment_se: f64,
    pub mean_tr_q: f64,
    pub mean_tr_q2: f64,
    pub var_tr_q: f64,
}

impl ZtildeSimulation {
    /// [`ztilde_second_moment`] evaluated at the simulated trace statistics.
    pub fn predicted_second_moment(&self) -> Result<ZtildeMoment> {
        ztilde_second_moment(self.n, self.mean_tr_q2, self.var_tr_q)
    }
}

/// Simulates `Z̃_{i+1} = n u_{i+1}ᵀ Q_i u_{i+1} − 1` with
/// `Q_i = A P_i A / T_i`. `t_i` is `T_i = Σ_k λ_k t_{i,k}` (`n − i` for the
/// identity, `n` for `i = 0`).
pub fn simulate_ztilde(
    spectrum: &Spectrum,
    i: usize,
    t_i: f64,
    draws: usize,
    stream: &RandomStream,
) -> Result<ZtildeSimulation> {
    let n = spectrum.len();
    if i >= n {
        return Err(Error::Domain(format!("need i < n, got i={i}, n={n}")));
    }
    if draws < 2 || !(t_i > 0.0) {
        return Err(Error::Domain("need >= 2 draws and T_i > 0".into()));
    }
    let a = spectrum.sqrt_values();
    let lambda = spectrum.values();
    let samples: Vec<[f64; 3]> = (0..draws)
        .into_par_iter()
        .map(|j| {
            let mut s = stream.split(j as u64);
            let basis = orthonormal_rows(&gaussian_matrix(i, n, &mut s).scale_columns(&a));
            let u = unit_sphere_vector(n, &mut s);
            let b: Vec<f64> = u.iter().zip(&a).map(|(x, y)| x * y).collect();
            let mut bpb = dot(&b, &b);
            let mut diag = vec![1.0; n];
            for q in basis.chunks_exact(n) {
                let c = dot(q, &b);
                bpb -= c * c;
                for (d, qk) in diag.iter_mut().zip(q) {
                    *d -= qk * qk;
                }
            }
            let tr_q = dot(lambda, &diag) / t_i;
            // With P = I − BᵀB and D = A²:
            // tr(DPDP) = Σλ² − 2 Σ_k λ_k² (BᵀB)_kk + ‖B D Bᵀ‖_F².
            let mut tr_dpdp: f64 = lambda
                .iter()
                .zip(&diag)
                .map(|(l, d)| l * l * (2.0 * d - 1.0))
                .sum();
            let rows: Vec<&[f64]> = basis.chunks_exact(n).collect();
            for br in &rows {
                let scaled: Vec<f64> = br.iter().zip(lambda).map(|(x, l)| x * l).collect();
                for bc in &rows {
                    let m = dot(&scaled, bc);
                    tr_dpdp += m * m;
                }
            }
            let tr_q2 = tr_dpdp / (t_i * t_i);
            [n as f64 * bpb / t_i - 1.0, tr_q, tr_q2]
        })
        .collect();
    let m = draws as f64;
    let mean_sd = |f: &dyn Fn(&[f64; 3]) -> f64| {
        let mean = samples.iter().map(f).sum::<f64>() / m;
        let var = samples.iter().map(|x| (f(x) - mean).powi(2)).sum::<f64>() / (m - 1.0);
        (mean, var)
    };
    let (mean, var_z) = mean_sd(&|x| x[0]);
    let (second_moment, var_z2) = mean_sd(&|x| x[0] * x[0]);
    let (mean_tr_q, var_tr_q) = mean_sd(&|x| x[1]);
    let (mean_tr_q2, _) = mean_sd(&|x| x[2]);
    Ok(ZtildeSimulation {
        n,
        i,
        draws,
        mean,
        mean_se: (var_z / m).sqrt(),
        second_moment,
        second_moment_se: (var_z2 / m).sqrt(),
        mean_tr_q,
        mean_tr_q2,
        var_tr_q,
    })
}

/// Orthonormal basis of the row space (Gram–Schmidt, two passes), rows
/// concatenated.
fn orthonormal_rows(m: &DenseMatrix) -> Vec<f64> {
    let n = m.cols();
    let mut basis: Vec<f64> = Vec::with_capacity(m.rows() * n);
    for r in 0..m.rows() {
        let mut v = m.row(r).to_vec();
        for _pass in 0..2 {
            for q in basis.chunks_exact(n) {
                let c = dot(q, &v);
                for (x, qk) in v.iter_mut().zip(q) {
                    *x -= c * qk;
                }
            }
        }
        let norm = dot(&v, &v).sqrt();
        basis.extend(v.iter().map(|x| x / norm));
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_closed_forms() {
        for n in [2usize, 3, 7, 100] {
            let nf = n as f64;
            assert!((beta_moment(n, &[1]).unwrap() - 1.0 / nf).abs() < 1e-15);
            assert!((beta_moment(n, &[2]).unwrap() - 3.0 / (nf * (nf + 2.0))).abs() < 1e-15);
        }
        assert!((beta_moment(2, &[1, 1]).unwrap() - 0.125).abs() < 1e-15);
        assert!((beta_moment(3, &[1, 1]).unwrap() - 1.0 / 15.0).abs() < 1e-15);
    }

    #[test]
    fn beta_guards() {
        assert!(matches!(
            beta_moment(3, &[16, 15]),
            Err(Error::Overflow(31))
        ));
        assert!(beta_moment(3, &[15, 15]).is_ok());
        assert!(matches!(beta_moment(1, &[1, 1]), Err(Error::Domain(_))));
        assert!(matches!(beta_moment(4, &[0]), Err(Error::Domain(_))));
    }

    #[test]
    fn identity_t_matrix() {
        let t = t_matrix_identity(10, 5).unwrap();
        assert_eq!(t.row(3)[4], 0.7);
        for i in 1..5 {
            assert!((t.row_sum(i) - (10 - i) as f64).abs() < 1e-12);
        }
        assert_eq!(t_matrix_identity(2, 2).unwrap().row(1), &[0.5, 0.5]);
        assert!(t_matrix_identity(3, 4).is_err());
    }

    #[test]
    fn small_identity_variances() {
        let s = Spectrum::identity(4);
        let t = t_matrix_identity(4, 2).unwrap();
        match norming_constants(&s, 2, &t, VarianceVariant::Theorem) {
            Err(Error::NonPositiveVariance(v)) => assert!((v + 1.0 / 3.0).abs() < 1e-15),
            other => panic!("expected NonPositiveVariance, got {other:?}"),
        }
        let c = norming_constants(&s, 2, &t, VarianceVariant::WithI0).unwrap();
        assert!((c.sigma2 - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn variance_limit_values() {
        assert!((variance_limit(0.5).unwrap() - (2.0 * 2f64.ln() - 1.0)).abs() < 1e-15);
        let g = 1.0 - (-1f64).exp();
        assert!((variance_limit(g).unwrap() - 2.0 * (-1f64).exp()).abs() < 1e-14);
        assert!(variance_limit(1e-6).unwrap() < 1e-11);
        assert!(variance_limit(0.0).is_err());
        assert!(variance_limit(1.0).is_err());
    }

    #[test]
    fn spectrum_diagnostics() {
        let id = Spectrum::identity(6);
        assert_eq!(b2_deficit(&id), 0.0);
        assert_eq!(condition_bound(&id), 1.0);
        let n = 10;
        let d = 1.0 / n as f64;
        let vals: Vec<f64> = (0..n)
            .map(|k| if k % 2 == 0 { 1.0 + d } else { 1.0 - d })
            .collect();
        assert!((b2_deficit(&Spectrum::new(vals).unwrap()) - d).abs() < 1e-15);
        let vals: Vec<f64> = (0..n).map(|k| if k < n / 2 { 0.5 } else { 1.5 }).collect();
        assert!((b2_deficit(&Spectrum::new(vals).unwrap()) - n as f64 / 4.0).abs() < 1e-14);
        assert_eq!(
            condition_bound(&Spectrum::new(vec![2.0, 1.0, 0.5]).unwrap()),
            2.0
        );
        assert_eq!(
            condition_bound(&Spectrum::new(vec![4.0, 1.0]).unwrap()),
            4.0
        );
    }

    #[test]
    fn ztilde_moment_plug_in() {
        let n = 100usize;
        let nf = n as f64;
        let k = nf * nf * 3.0 / (nf * (nf + 2.0)) - 1.0;
        let z = ztilde_second_moment(n, 1.0 / (nf - 1.0), 0.0).unwrap();
        assert!(z.components[0].abs() < 1e-16);
        assert!((z.value - k / ((nf - 1.0) * (nf - 1.0))).abs() < 1e-15);
        let z0 = ztilde_second_moment(n, 0.0, 0.0).unwrap();
        assert!((z0.value + k / (nf - 1.0)).abs() < 1e-15);
        assert!(ztilde_second_moment(n, 0.1, -1.0).is_err());
    }
}
