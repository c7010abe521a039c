//! Numerical tolerances shared by every module.
//!
//! Dimensions stay below ~64, so double precision leaves roughly three orders
//! of magnitude of headroom above these thresholds.

/// Absolute Frobenius tolerance for structural predicates (unitary,
/// isometry, Hermitian, trace preservation, unitality).
pub const STRUCTURAL: f64 = 1e-9;

/// An eigenvalue counts as non-negative when it is at least
/// `-PSD_RELATIVE * λ_max`.
pub const PSD_RELATIVE: f64 = 1e-8;

/// Absolute floor added to the PSD threshold so that blocks which are zero up
/// to rounding are not rejected.
pub const PSD_ABSOLUTE: f64 = 1e-12;

/// Eigenvalues below `RANK_RELATIVE * λ_max` are treated as zero when
/// computing ranks and ranges.
pub const RANK_RELATIVE: f64 = 1e-7;

/// Integer-valued invariants (multiplicities) must land this close to an
/// integer before rounding.
pub const INTEGRALITY: f64 = 1e-6;

/// Environment variable that overrides [`STRUCTURAL`] in the CLI.
pub const ENV_VAR: &str = "QBIPERM_TOL";

/// Resolves the effective structural tolerance: explicit flag, then the
/// environment, then the default.
pub fn resolve(flag: Option<f64>) -> f64 {
    if let Some(t) = flag {
        return t;
    }
    std::env::var(ENV_VAR)
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(STRUCTURAL)
}

/// Rounds `x` to the nearest non-negative integer if it lies within
/// [`INTEGRALITY`] of one.
pub fn round_count(x: f64) -> Option<usize> {
    let r = x.round();
    if r < 0.0 || (x - r).abs() > INTEGRALITY {
        None
    } else {
        Some(r as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_wins_over_default() {
        assert_eq!(resolve(Some(1e-3)), 1e-3);
    }

    #[test]
    fn round_count_rejects_fractions() {
        assert_eq!(round_count(2.0000000001), Some(2));
        assert_eq!(round_count(1.5), None);
        assert_eq!(round_count(-1.0), None);
    }
}
