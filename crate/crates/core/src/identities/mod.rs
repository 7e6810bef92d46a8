//! Closed-form right-hand sides and a uniform verification engine comparing
//! them with the enumeration side.

mod builders;
mod checks;
mod family;
mod scheme;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::KernelError;
use crate::permstats::{PermError, MAX_ENUMERATION};
use crate::qseries::SeriesError;

pub use builders::{
    denominators_cancel, euler_numbers, exp_linear, f_classical, f_q, g_factor, gamma_extract, gamma_rebuild,
    GFactor, EULER_MAX,
};
pub use checks::{ji_rhs, main2_series};
pub use family::{lhs_family, Family};
pub use scheme::{SubstitutionScheme, TruncationPolicy, DEFAULT_SAMPLES, DEFAULT_SEED, GRID_MAX_N};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IdentityError {
    #[error("unknown identity `{0}`")]
    UnknownId(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("degenerate scheme: {0}")]
    DegenerateScheme(String),
    #[error("invalid configuration: {0}")]
    Policy(String),
    #[error("no gamma expansion: {0}")]
    NotGammaExpandable(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

impl IdentityError {
    /// Whether the error comes from a size guard or an invalid policy rather than bad input.
    pub fn is_configuration(&self) -> bool {
        matches!(
            self,
            IdentityError::Policy(_) | IdentityError::Perm(PermError::OutOfGuard { .. })
        )
    }
}

/// The identities the engine can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    EulerianEgf,
    Stanley,
    Carlitz,
    Carlitz2,
    PanZeng,
    Ji,
    GesselProduct,
    GesselMultiplicative,
    LnFormula,
    RnFormula,
    Convolution,
    Main,
    Main2,
    GammaAb,
    GammaAa,
    PkLr,
    PkLr2,
    Secant,
}

impl IdentityId {
    pub const ALL: [IdentityId; 18] = [
        IdentityId::EulerianEgf,
        IdentityId::Stanley,
        IdentityId::Carlitz,
        IdentityId::Carlitz2,
        IdentityId::PanZeng,
        IdentityId::Ji,
        IdentityId::GesselProduct,
        IdentityId::GesselMultiplicative,
        IdentityId::LnFormula,
        IdentityId::RnFormula,
        IdentityId::Convolution,
        IdentityId::Main,
        IdentityId::Main2,
        IdentityId::GammaAb,
        IdentityId::GammaAa,
        IdentityId::PkLr,
        IdentityId::PkLr2,
        IdentityId::Secant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::EulerianEgf => "eulerian-egf",
            IdentityId::Stanley => "stanley",
            IdentityId::Carlitz => "carlitz",
            IdentityId::Carlitz2 => "carlitz2",
            IdentityId::PanZeng => "pan-zeng",
            IdentityId::Ji => "ji",
            IdentityId::GesselProduct => "gessel-product",
            IdentityId::GesselMultiplicative => "gessel-multiplicative",
            IdentityId::LnFormula => "ln-formula",
            IdentityId::RnFormula => "rn-formula",
            IdentityId::Convolution => "convolution",
            IdentityId::Main => "main",
            IdentityId::Main2 => "main2",
            IdentityId::GammaAb => "gamma-ab",
            IdentityId::GammaAa => "gamma-aa",
            IdentityId::PkLr => "pk-lr",
            IdentityId::PkLr2 => "pk-lr2",
            IdentityId::Secant => "secant",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = IdentityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| IdentityError::UnknownId(s.to_string()))
    }
}

/// Result of one `(identity, n)` verification. Field order is the JSON order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub n: usize,
    pub pass: bool,
    /// t-degree (or layer index) of the first nonzero residual.
    pub residual_degree: Option<usize>,
    pub elapsed_ms: Option<u64>,
    pub seed: u64,
    /// Rendering of the first nonzero residual.
    #[serde(skip)]
    pub residual: Option<String>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
        let mut line = format!(
            "{} {} n={} seed={} [{}]",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.n,
            self.seed,
            params.join(" ")
        );
        if let Some(ms) = self.elapsed_ms {
            line.push_str(&format!(" {}ms", ms));
        }
        if let (Some(d), Some(r)) = (self.residual_degree, &self.residual) {
            line.push_str(&format!("\n  first residual at degree {}: {}", d, r));
        }
        line
    }
}

/// Checks `id` for every permutation size up to `n` under `policy`.
pub fn verify_identity(
    id: IdentityId,
    n: usize,
    policy: &TruncationPolicy,
) -> Result<VerificationReport, IdentityError> {
    policy.validate()?;
    if n == 0 || n > MAX_ENUMERATION {
        return Err(IdentityError::Perm(PermError::OutOfGuard { n, max: MAX_ENUMERATION }));
    }
    let start = Instant::now();
    let outcome = match id {
        IdentityId::EulerianEgf => checks::eulerian_egf(n, policy),
        IdentityId::Stanley => checks::stanley(n, policy),
        IdentityId::Carlitz => checks::carlitz(n, policy),
        IdentityId::Carlitz2 => checks::carlitz2(n, policy),
        IdentityId::PanZeng => checks::pan_zeng(n, policy),
        IdentityId::Ji => checks::ji(n, policy),
        IdentityId::GesselProduct => checks::gessel_product(policy),
        IdentityId::GesselMultiplicative => checks::gessel_multiplicative(n),
        IdentityId::LnFormula => checks::ln_formula(n, policy),
        IdentityId::RnFormula => checks::rn_formula(n),
        IdentityId::Convolution => checks::convolution(n),
        IdentityId::Main => checks::main_theorem(n, policy),
        IdentityId::Main2 => checks::main2(n, policy),
        IdentityId::GammaAb => checks::gamma_ab(n),
        IdentityId::GammaAa => checks::gamma_aa(n),
        IdentityId::PkLr => checks::pk_lr(n),
        IdentityId::PkLr2 => checks::pk_lr2(n),
        IdentityId::Secant => checks::secant(n),
    }?;
    let elapsed = start.elapsed().as_millis() as u64;
    Ok(VerificationReport {
        id: id.name().to_string(),
        params: outcome.params.into_iter().collect(),
        n,
        pass: outcome.failure.is_none(),
        residual_degree: outcome.failure.as_ref().map(|f| f.degree),
        elapsed_ms: Some(elapsed),
        seed: policy.seed,
        residual: outcome.failure.map(|f| f.detail),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(id: IdentityId, n: usize) -> VerificationReport {
        let policy = TruncationPolicy { samples: 4, ..TruncationPolicy::for_n_max(n) };
        verify_identity(id, n, &policy).unwrap()
    }

    #[test]
    fn ids_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert!(matches!("no-such".parse::<IdentityId>(), Err(IdentityError::UnknownId(_))));
    }

    #[test]
    fn every_identity_passes_at_small_n() {
        for id in IdentityId::ALL {
            for n in 1..=4 {
                let r = run(id, n);
                assert!(r.pass, "{}", r.to_text());
            }
        }
    }

    #[test]
    fn report_json_has_canonical_fields() {
        let r = run(IdentityId::PkLr, 3);
        let json = r.to_json();
        assert!(json.starts_with("{\"id\":\"pk-lr\",\"params\":{"), "{}", json);
        let keys = ["\"n\":3", "\"pass\":true", "\"residual_degree\":null", "\"seed\":20240501"];
        for k in keys {
            assert!(json.contains(k), "{}", json);
        }
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn guards() {
        let policy = TruncationPolicy::for_n_max(3);
        let err = verify_identity(IdentityId::PkLr, 11, &policy).unwrap_err();
        assert!(err.is_configuration());
        let bad = TruncationPolicy { q_window: 0, ..policy };
        assert!(verify_identity(IdentityId::PkLr, 3, &bad).unwrap_err().is_configuration());
    }

    #[test]
    fn grid_mode_runs_for_small_n() {
        let policy = TruncationPolicy { exhaustive_grid: true, ..TruncationPolicy::for_n_max(2) };
        for id in [IdentityId::EulerianEgf, IdentityId::Carlitz2, IdentityId::PanZeng, IdentityId::LnFormula] {
            let r = verify_identity(id, 2, &policy).unwrap();
            assert!(r.pass, "{}", r.to_text());
            assert_eq!(r.params["mode"], "grid");
        }
        assert!(verify_identity(IdentityId::Carlitz, 5, &TruncationPolicy { exhaustive_grid: true, ..TruncationPolicy::for_n_max(5) }).is_err());
    }
}
