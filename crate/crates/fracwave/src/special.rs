//! Thin wrappers around the special functions the crate leans on.
//!
//! Everything here is a positive-argument gamma evaluation; `statrs`
//! provides the underlying Lanczos approximations.

use statrs::function::gamma::{gamma as statrs_gamma, ln_gamma};

/// Euler gamma function Γ(x).
#[inline]
pub fn gamma(x: f64) -> f64 {
    statrs_gamma(x)
}

/// Ratio Γ(a)/Γ(b) for positive `a`, `b`, evaluated through log-gamma so
/// large arguments (weight exponents β in the tens) do not overflow.
#[inline]
pub fn gamma_ratio(a: f64, b: f64) -> f64 {
    debug_assert!(a > 0.0 && b > 0.0);
    (ln_gamma(a) - ln_gamma(b)).exp()
}

/// Surface measure |S^{n-1}| of the unit sphere in `n` dimensions.
///
/// The `n = 1` value 2.0 is the counting measure of {±1}.
pub fn sphere_surface(n: usize) -> f64 {
    let nf = n as f64;
    2.0 * std::f64::consts::PI.powf(nf / 2.0) / gamma(nf / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_reference_values() {
        // Independent high-precision references (mpmath, 50 digits).
        assert_relative_eq!(gamma(0.5), 1.7724538509055160273, max_relative = 1e-13);
        assert_relative_eq!(gamma(5.0), 24.0, max_relative = 1e-13);
        assert_relative_eq!(gamma(3.5), 3.3233509704478425512, max_relative = 1e-13);
        assert_relative_eq!(gamma(1.5), 0.88622692545275801365, max_relative = 1e-13);
    }

    #[test]
    fn gamma_ratio_matches_direct_quotient() {
        assert_relative_eq!(
            gamma_ratio(5.0, 3.5),
            7.2216266694112804729,
            max_relative = 1e-12
        );
        // Large arguments where the direct quotient would overflow f64.
        let r = gamma_ratio(180.0, 178.5);
        assert!(r.is_finite() && r > 0.0);
    }

    #[test]
    fn sphere_surfaces() {
        assert_relative_eq!(sphere_surface(1), 2.0, max_relative = 1e-14);
        assert_relative_eq!(
            sphere_surface(2),
            2.0 * std::f64::consts::PI,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            sphere_surface(3),
            4.0 * std::f64::consts::PI,
            max_relative = 1e-14
        );
    }
}
