//! Seeded random generation: Gaussian fields, uniform directions, elliptical
//! samples, radial laws and symmetric α-stable reference draws.
//!
//! All randomness flows through [`RandomStream`], a ChaCha20 generator keyed
//! by a 64-bit master seed and a 64-bit stream index. The stream index maps
//! to ChaCha's native stream counter, so distinct indices give disjoint
//! keystreams and any `(seed, index)` pair can be recreated in O(1) on any
//! platform or thread.
//!
//! Normals come from `rand_distr::StandardNormal` (ziggurat).

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Exp1, StandardNormal};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::linalg::{dot, normalize_spectrum, DenseMatrix, Spectrum};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a 128-bit `(hi, lo)` pair into 64 well-mixed bits.
pub(crate) fn mix128(hi: u64, lo: u64) -> u64 {
    let mut s = hi;
    let a = splitmix64(&mut s);
    let mut t = lo ^ a.rotate_left(29);
    splitmix64(&mut t) ^ a
}

/// A reproducible, splittable random number stream.
#[derive(Debug, Clone)]
pub struct RandomStream {
    rng: ChaCha20Rng,
    master_seed: u64,
    stream_index: u64,
}

impl RandomStream {
    /// Key = four SplitMix64 outputs of `master_seed`; ChaCha stream id =
    /// `stream_index`. The map `(seed, index) → (key, stream)` is injective.
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        let mut state = master_seed;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        let mut rng = ChaCha20Rng::from_seed(key);
        rng.set_stream(stream_index);
        Self {
            rng,
            master_seed,
            stream_index,
        }
    }

    pub fn origin(&self) -> (u64, u64) {
        (self.master_seed, self.stream_index)
    }

    /// 64-bit identifier of this stream's origin, used for reporting.
    pub fn fingerprint(&self) -> u64 {
        mix128(self.master_seed, self.stream_index)
    }

    /// An independent child stream. Children depend only on this stream's
    /// origin and `index`, never on how much of it has been consumed.
    pub fn split(&self, index: u64) -> Self {
        Self::new(self.fingerprint(), index)
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform on the open interval (0, 1).
    pub fn open_unit(&mut self) -> f64 {
        loop {
            let u: f64 = self.rng.random();
            if u > 0.0 {
                return u;
            }
        }
    }

    pub fn exp1(&mut self) -> f64 {
        self.rng.sample(Exp1)
    }
}

impl RngCore for RandomStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// Law of the radius `R`, described through `log R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RadialLaw {
    /// `R = 1`.
    #[serde(rename = "degenerate1")]
    Degenerate1,
    /// `log R ~ N(mean, sd²)`.
    LogNormal { mean: f64, sd: f64 },
    /// `log R ~ Cauchy(location, scale)`.
    LogCauchy { location: f64, scale: f64 },
    /// `log R = scale · κ_α · ε · W` with `ε` a random sign and
    /// `P(W > w) = w^{-α}` on `[1, ∞)`. `κ_α` makes `Σ log R / p^{1/α}`
    /// converge to a standard symmetric α-stable law.
    LogPareto { alpha: f64, scale: f64 },
}

impl RadialLaw {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            RadialLaw::Degenerate1 => true,
            RadialLaw::LogNormal { mean, sd } => mean.is_finite() && sd > 0.0 && sd.is_finite(),
            RadialLaw::LogCauchy { location, scale } => {
                location.is_finite() && scale > 0.0 && scale.is_finite()
            }
            RadialLaw::LogPareto { alpha, scale } => {
                alpha > 0.0 && alpha < 2.0 && scale > 0.0 && scale.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("invalid radial law {self:?}")))
        }
    }

    /// Stability index of the limit of `Σ log R`; `None` for `R = 1`.
    pub fn stability_index(&self) -> Option<f64> {
        match *self {
            RadialLaw::Degenerate1 => None,
            RadialLaw::LogNormal { .. } => Some(2.0),
            RadialLaw::LogCauchy { .. } => Some(1.0),
            RadialLaw::LogPareto { alpha, .. } => Some(alpha),
        }
    }
}

/// Normalising factor turning symmetric Pareto(α) sums into standard S_α.
pub(crate) fn pareto_stable_factor(alpha: f64) -> f64 {
    if (alpha - 1.0).abs() < 1e-12 {
        2.0 / PI
    } else {
        (gamma(1.0 - alpha) * (FRAC_PI_2 * alpha).cos()).powf(-1.0 / alpha)
    }
}

/// The data-generating process `x_i = R_i A u_i` with `A = diag(√λ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticalModel {
    pub n: usize,
    pub p: usize,
    pub spectrum: Spectrum,
    pub radial: RadialLaw,
}

impl EllipticalModel {
    /// Validates dimensions and normalises the spectrum.
    pub fn new(p: usize, spectrum: &Spectrum, radial: RadialLaw) -> Result<Self> {
        let n = spectrum.len();
        if p < 2 || p > n {
            return Err(Error::Domain(format!("need 2 <= p <= n, got p={p}, n={n}")));
        }
        radial.validate()?;
        Ok(Self {
            n,
            p,
            spectrum: normalize_spectrum(spectrum),
            radial,
        })
    }
}

/// One draw of the model: `Y` has rows `A u_i`, `X = diag(R) Y`.
#[derive(Debug, Clone)]
pub struct EllipticalSample {
    pub y: DenseMatrix,
    pub radii: Vec<f64>,
    pub log_radii: Vec<f64>,
}

impl EllipticalSample {
    /// `X = diag(R)·Y`. Fails when an extreme radius over- or underflows.
    pub fn x(&self) -> Result<DenseMatrix> {
        let x = self.y.scale_rows(&self.radii);
        DenseMatrix::new(x.rows(), x.cols(), x.into_vec())
    }

    pub fn sum_log_radii(&self) -> f64 {
        self.log_radii.iter().sum()
    }
}

/// `p×n` matrix of independent standard normals, filled row by row.
pub fn gaussian_matrix(p: usize, n: usize, stream: &mut RandomStream) -> DenseMatrix {
    let data = (0..p * n).map(|_| stream.standard_normal()).collect();
    DenseMatrix::new(p, n, data).expect("normals are finite")
}

/// Uniform direction on the sphere `S^{n-1}`: a normalised Gaussian vector.
pub fn unit_sphere_vector(n: usize, stream: &mut RandomStream) -> Vec<f64> {
    assert!(n >= 1);
    loop {
        let g: Vec<f64> = (0..n).map(|_| stream.standard_normal()).collect();
        let norm = dot(&g, &g).sqrt();
        if norm > 0.0 {
            return g.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// `p` i.i.d. draws of `log R`.
pub fn sample_log_radii(law: &RadialLaw, p: usize, stream: &mut RandomStream) -> Vec<f64> {
    match *law {
        RadialLaw::Degenerate1 => vec![0.0; p],
        RadialLaw::LogNormal { mean, sd } => (0..p)
            .map(|_| mean + sd * stream.standard_normal())
            .collect(),
        RadialLaw::LogCauchy { location, scale } => (0..p)
            .map(|_| location + scale * (PI * (stream.open_unit() - 0.5)).tan())
            .collect(),
        RadialLaw::LogPareto { alpha, scale } => {
            let kappa = scale * pareto_stable_factor(alpha);
            (0..p)
                .map(|_| {
                    let sign = if stream.next_u32() & 1 == 0 {
                        1.0
                    } else {
                        -1.0
                    };
                    let w = stream.open_unit().powf(-1.0 / alpha);
                    kappa * sign * w
                })
                .collect()
        }
    }
}

/// `p` i.i.d. radii `R = exp(log R)`.
pub fn sample_radii(law: &RadialLaw, p: usize, stream: &mut RandomStream) -> Vec<f64> {
    sample_log_radii(law, p, stream)
        .into_iter()
        .map(f64::exp)
        .collect()
}

/// Draws `(Y, R)` for the model. Directions are sampled before radii.
pub fn elliptical_sample(model: &EllipticalModel, stream: &mut RandomStream) -> EllipticalSample {
    let a = model.spectrum.sqrt_values();
    let mut data = Vec::with_capacity(model.p * model.n);
    for _ in 0..model.p {
        let u = unit_sphere_vector(model.n, stream);
        data.extend(u.iter().zip(&a).map(|(x, s)| x * s));
    }
    let y = DenseMatrix::new(model.p, model.n, data).expect("finite directions");
    let log_radii = sample_log_radii(&model.radial, model.p, stream);
    let radii = log_radii.iter().map(|l| l.exp()).collect();
    EllipticalSample {
        y,
        radii,
        log_radii,
    }
}

/// One standard symmetric α-stable variate (characteristic function
/// `exp(−|t|^α)`) by the Chambers–Mallows–Stuck transform. For `α = 2` the
/// `N(0, 2)` output is rescaled to `N(0, 1)`.
fn stable_variate(alpha: f64, stream: &mut RandomStream) -> f64 {
    let v = PI * (stream.open_unit() - 0.5);
    if (alpha - 1.0).abs() < 1e-12 {
        return v.tan();
    }
    let w = stream.exp1();
    let x = (alpha * v).sin() / v.cos().powf(1.0 / alpha)
        * ((v * (1.0 - alpha)).cos() / w).powf((1.0 - alpha) / alpha);
    if alpha == 2.0 {
        x / std::f64::consts::SQRT_2
    } else {
        x
    }
}

/// `size` i.i.d. standard symmetric α-stable draws, `α ∈ (0, 2]`.
///
/// `α = 1` is the standard Cauchy law and `α = 2` the standard normal.
pub fn stable_reference_sample(
    alpha: f64,
    size: usize,
    stream: &mut RandomStream,
) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::Domain(format!(
            "stability index {alpha} not in (0, 2]"
        )));
    }
    Ok((0..size).map(|_| stable_variate(alpha, stream)).collect())
}

/// Haar-distributed orthogonal `n×n` matrix (Gram–Schmidt on Gaussian rows).
pub fn random_orthogonal(n: usize, stream: &mut RandomStream) -> DenseMatrix {
    loop {
        let g = gaussian_matrix(n, n, stream);
        let mut q: Vec<f64> = Vec::with_capacity(n * n);
        let mut ok = true;
        for i in 0..n {
            let mut v = g.row(i).to_vec();
            for _pass in 0..2 {
                for b in q.chunks_exact(n) {
                    let c = dot(b, &v);
                    for (x, bk) in v.iter_mut().zip(b) {
                        *x -= c * bk;
                    }
                }
            }
            let norm = dot(&v, &v).sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            q.extend(v.iter().map(|x| x / norm));
        }
        if ok {
            return DenseMatrix::new(n, n, q).expect("finite");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let mut a = RandomStream::new(7, 3);
        let mut b = RandomStream::new(7, 3);
        let xa: Vec<u64> = (0..64).map(|_| a.next_u64()).collect();
        let xb: Vec<u64> = (0..64).map(|_| b.next_u64()).collect();
        assert_eq!(xa, xb);
        let mut c = RandomStream::new(7, 4);
        let xc: Vec<u64> = (0..64).map(|_| c.next_u64()).collect();
        assert_ne!(xa, xc);
        let mut d = RandomStream::new(8, 3);
        let xd: Vec<u64> = (0..64).map(|_| d.next_u64()).collect();
        assert_ne!(xa, xd);
    }

    #[test]
    fn split_ignores_consumption() {
        let mut a = RandomStream::new(1, 2);
        let child_before = a.split(5).next_u64();
        a.next_u64();
        assert_eq!(a.split(5).next_u64(), child_before);
        assert_ne!(a.split(6).next_u64(), child_before);
    }

    #[test]
    fn scalar_gaussian_is_deterministic() {
        let x = gaussian_matrix(1, 1, &mut RandomStream::new(42, 0));
        let y = gaussian_matrix(1, 1, &mut RandomStream::new(42, 0));
        assert_eq!(x.get(0, 0).to_bits(), y.get(0, 0).to_bits());
    }

    #[test]
    fn one_dimensional_sphere_is_a_sign() {
        let mut s = RandomStream::new(3, 0);
        for _ in 0..100 {
            let u = unit_sphere_vector(1, &mut s);
            assert!(u[0] == 1.0 || u[0] == -1.0);
        }
    }

    #[test]
    fn sphere_vectors_have_unit_norm() {
        let mut s = RandomStream::new(3, 1);
        for n in [2, 5, 50] {
            let u = unit_sphere_vector(n, &mut s);
            assert!((dot(&u, &u).sqrt() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_radii_are_ones() {
        let r = sample_radii(&RadialLaw::Degenerate1, 5, &mut RandomStream::new(0, 0));
        assert_eq!(r, vec![1.0; 5]);
    }

    #[test]
    fn radial_law_validation() {
        assert!(RadialLaw::LogNormal { mean: 0.0, sd: 0.0 }
            .validate()
            .is_err());
        assert!(RadialLaw::LogCauchy {
            location: 0.0,
            scale: -1.0
        }
        .validate()
        .is_err());
        assert!(RadialLaw::LogPareto {
            alpha: 2.0,
            scale: 1.0
        }
        .validate()
        .is_err());
        assert!(RadialLaw::LogPareto {
            alpha: 1.5,
            scale: 1.0
        }
        .validate()
        .is_ok());
    }

    #[test]
    fn pareto_factor_is_continuous_at_one() {
        let left = pareto_stable_factor(1.0 - 1e-7);
        let right = pareto_stable_factor(1.0 + 1e-7);
        let mid = pareto_stable_factor(1.0);
        assert!((left - mid).abs() < 1e-5 && (right - mid).abs() < 1e-5);
    }

    #[test]
    fn elliptical_rows_and_radii() {
        let spectrum = Spectrum::identity(6);
        let model = EllipticalModel::new(3, &spectrum, RadialLaw::Degenerate1).unwrap();
        let s = elliptical_sample(&model, &mut RandomStream::new(9, 0));
        assert_eq!(s.x().unwrap(), s.y);
        for i in 0..3 {
            assert!((dot(s.y.row(i), s.y.row(i)).sqrt() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn anisotropic_rows_are_bounded() {
        let spectrum = Spectrum::new(vec![4.0, 1.0, 1.0, 1.0, 0.5]).unwrap();
        let model = EllipticalModel::new(4, &spectrum, RadialLaw::LogNormal { mean: 0.0, sd: 1.0 })
            .unwrap();
        let lmax = model.spectrum.max();
        let mut stream = RandomStream::new(2, 0);
        for _ in 0..50 {
            let s = elliptical_sample(&model, &mut stream);
            let x = s.x().unwrap();
            for i in 0..4 {
                assert!(dot(s.y.row(i), s.y.row(i)).sqrt() <= lmax.sqrt() + 1e-12);
                for k in 0..5 {
                    assert_eq!(x.get(i, k), s.radii[i] * s.y.get(i, k));
                }
            }
        }
    }

    #[test]
    fn model_rejects_bad_dimensions() {
        let s = Spectrum::identity(3);
        assert!(EllipticalModel::new(1, &s, RadialLaw::Degenerate1).is_err());
        assert!(EllipticalModel::new(4, &s, RadialLaw::Degenerate1).is_err());
    }

    #[test]
    fn stable_rejects_bad_alpha() {
        let mut s = RandomStream::new(0, 0);
        assert!(stable_reference_sample(0.0, 3, &mut s).is_err());
        assert!(stable_reference_sample(2.5, 3, &mut s).is_err());
    }

    #[test]
    fn orthogonal_matrix_is_orthogonal() {
        let q = random_orthogonal(7, &mut RandomStream::new(5, 0));
        let qqt = q.matmul(&q.transpose()).unwrap();
        assert!(qqt.max_abs_diff(&DenseMatrix::identity(7)) < 1e-12);
    }
}
