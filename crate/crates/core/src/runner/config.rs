//! Experiment configuration, read from JSON with unknown keys rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::ConvexBodyKind;
use crate::linalg::{normalize_spectrum, Spectrum};
use crate::sampling::RadialLaw;
use crate::theory::{VarianceVariant, DEFAULT_MC_DRAWS};

/// How the eigenvalues of `AAᵀ` are chosen.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpectrumSpec {
    #[default]
    Identity,
    /// Arbitrary positive values, rescaled to sum to `n`.
    Explicit { values: Vec<f64> },
    /// `λ_k = 1 + δ_k` with `δ` alternating in sign, `Σδ = 0` and
    /// `Σδ² = c/n`.
    NearIdentity { c: f64 },
}

impl SpectrumSpec {
    /// Builds the normalised spectrum for dimension `n`.
    pub fn build(&self, n: usize) -> Result<Spectrum> {
        match self {
            SpectrumSpec::Identity => Ok(Spectrum::identity(n)),
            SpectrumSpec::Explicit { values } => {
                if values.len() != n {
                    return Err(Error::Config(format!(
                        "explicit spectrum has {} values, expected n = {n}",
                        values.len()
                    )));
                }
                Ok(normalize_spectrum(&Spectrum::new(values.clone())?))
            }
            SpectrumSpec::NearIdentity { c } => near_identity_spectrum(n, *c),
        }
    }
}

/// Spectrum `1 ± d` on the first `2⌊n/2⌋` coordinates (1 on a leftover odd
/// one) with `d` chosen so that `Σ(λ − 1)² = c/n`.
pub fn near_identity_spectrum(n: usize, c: f64) -> Result<Spectrum> {
    if !(c >= 0.0 && c.is_finite()) {
        return Err(Error::Config(format!(
            "near_identity needs c >= 0, got {c}"
        )));
    }
    let paired = 2 * (n / 2);
    if paired == 0 {
        return Ok(Spectrum::identity(n));
    }
    let d = (c / n as f64 / paired as f64).sqrt();
    if d >= 1.0 {
        return Err(Error::Config(format!(
            "near_identity c = {c} too large for n = {n}"
        )));
    }
    let values = (0..n)
        .map(|k| match k {
            k if k >= paired => 1.0,
            k if k % 2 == 0 => 1.0 + d,
            _ => 1.0 - d,
        })
        .collect();
    Ok(normalize_spectrum(&Spectrum::new(values)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum AutoKeyword {
    Auto,
}

/// Worker count: a positive number or `"auto"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Threads {
    Count(usize),
    #[default]
    #[serde(with = "auto_keyword")]
    Auto,
}

mod auto_keyword {
    use super::AutoKeyword;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        AutoKeyword::Auto.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        AutoKeyword::deserialize(d).map(|_| ())
    }
}

impl Threads {
    /// Value for `rayon::ThreadPoolBuilder::num_threads` (0 = default).
    pub fn pool_size(self) -> usize {
        match self {
            Threads::Count(k) => k,
            Threads::Auto => 0,
        }
    }
}

fn default_radial() -> RadialLaw {
    RadialLaw::Degenerate1
}

fn default_mc_draws() -> usize {
    DEFAULT_MC_DRAWS
}

/// A full experiment description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: usize,
    /// Number of sample points. Give exactly one of `p` and `gamma`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    /// Aspect ratio; `p = round(gamma · n)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default)]
    pub spectrum_spec: SpectrumSpec,
    #[serde(default = "default_radial")]
    pub radial_spec: RadialLaw,
    pub replicates: usize,
    #[serde(default = "default_mc_draws")]
    pub mc_draws: usize,
    #[serde(default)]
    pub variance_variant: VarianceVariant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub body: Option<ConvexBodyKind>,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub threads: Threads,
}

impl ExperimentConfig {
    /// Identity spectrum, constant radii, `p` given directly.
    pub fn new(n: usize, p: usize, replicates: usize, master_seed: u64) -> Self {
        Self {
            n,
            p: Some(p),
            gamma: None,
            spectrum_spec: SpectrumSpec::Identity,
            radial_spec: RadialLaw::Degenerate1,
            replicates,
            mc_draws: DEFAULT_MC_DRAWS,
            variance_variant: VarianceVariant::Theorem,
            body: None,
            master_seed,
            threads: Threads::Auto,
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.resolved_p()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }

    /// Checks all fields and returns the number of sample points.
    pub fn resolved_p(&self) -> Result<usize> {
        let n = self.n;
        let p = match (self.p, self.gamma) {
            (Some(p), None) => p,
            (None, Some(g)) if g > 0.0 && g < 1.0 => (g * n as f64).round() as usize,
            (None, Some(g)) => return Err(Error::Config(format!("gamma = {g} not in (0, 1)"))),
            _ => return Err(Error::Config("give exactly one of p and gamma".into())),
        };
        if p < 2 || p > n {
            return Err(Error::Config(format!(
                "need 2 <= p <= n, got p = {p}, n = {n}"
            )));
        }
        if self.replicates == 0 {
            return Err(Error::Config("replicates must be >= 1".into()));
        }
        if self.mc_draws < 2 {
            return Err(Error::Config("mc_draws must be >= 2".into()));
        }
        if let Some(body) = self.body {
            if body.p != p {
                return Err(Error::Config(format!(
                    "body dimension {} differs from p = {p}",
                    body.p
                )));
            }
        }
        self.radial_spec
            .validate()
            .map_err(|e| Error::Config(e.to_string()))?;
        Ok(p)
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        self.spectrum_spec.build(self.n).map_err(|e| match e {
            Error::Config(_) => e,
            other => Error::Config(other.to_string()),
        })
    }
}
