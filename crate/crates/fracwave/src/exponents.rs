//! Critical exponent and blow-up regime classification.
//!
//! The model parameters are the tuple (n, σ, γ, μ, p): spatial dimension,
//! structural damping order σ ∈ (0,2), memory kernel exponent γ ∈ (0,1),
//! damping strength μ > 0 and nonlinearity power p > 1. The critical
//! exponent is
//!
//! ```text
//! p_c = 1 + (2 + (1-γ)(2-σ̃)) / [n - 2 + γ(2-σ̃)]₊ ,   σ̃ = min(σ, 1),
//! ```
//!
//! interpreted as +∞ when the positive part in the denominator vanishes.
//! The classifier sorts a parameter tuple into one of three blow-up
//! bullets (or reports that the theory does not cover it):
//!
//! 1. every p > 1 blows up when `n <= ⌊2 - γ(2-σ̃)⌋`;
//! 2. p ∈ (1, p_c] blows up when `⌊2-γ(2-σ̃)⌋ < n <= 2`, or `n > 2` with
//!    γ >= (n-2)/n;
//! 3. p ∈ (1, 1/γ) blows up when `n >= 3` and γ < (n-2)/n.

use num::{BigInt, BigRational, FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Guard band for floating-point comparisons against the critical
/// exponent; boundary inclusion (p = p_c blows up) makes ties meaningful.
pub const P_CRITICAL_GUARD: f64 = 1e-12;

/// Validated model parameters plus the derived quantities the estimates
/// are phrased in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    n: u32,
    sigma: f64,
    gamma: f64,
    mu: f64,
    p: f64,
}

impl ModelParams {
    pub fn new(n: u32, sigma: f64, gamma: f64, mu: f64, p: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("dimension n must be >= 1"));
        }
        if !(sigma > 0.0 && sigma < 2.0) {
            return Err(Error::domain(format!(
                "sigma must lie in (0,2), got {sigma}"
            )));
        }
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(Error::domain(format!(
                "gamma must lie in (0,1), got {gamma}"
            )));
        }
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::domain(format!("mu must be positive, got {mu}")));
        }
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::domain(format!("p must exceed 1, got {p}")));
        }
        Ok(ModelParams {
            n,
            sigma,
            gamma,
            mu,
            p,
        })
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// α = 1 - γ, the fractional order the memory term integrates at.
    pub fn alpha(&self) -> f64 {
        1.0 - self.gamma
    }

    /// Hölder conjugate p' = p/(p-1).
    pub fn p_prime(&self) -> f64 {
        self.p / (self.p - 1.0)
    }

    /// σ̃ = min(σ, 1).
    pub fn sigma_tilde(&self) -> f64 {
        self.sigma.min(1.0)
    }
}

/// The critical exponent, possibly +∞.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PCritical {
    Finite(f64),
    Infinite,
}

impl PCritical {
    pub fn as_f64(&self) -> f64 {
        match self {
            PCritical::Finite(v) => *v,
            PCritical::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PCritical::Infinite)
    }
}

/// Which theorem bullet fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegimeTag {
    /// Bullet 1: every p > 1 blows up.
    BlowupAllP,
    /// Bullet 2: blow-up for p ∈ (1, p_c], including the endpoint.
    BlowupUpToCritical,
    /// Bullet 3: blow-up for p ∈ (1, 1/γ).
    BlowupBelowGammaInverse,
    /// The parameters fall outside the three bullets.
    NotCovered,
}

/// Classification outcome for one parameter tuple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeVerdict {
    pub tag: RegimeTag,
    pub p_c: PCritical,
    /// 1, 2 or 3 when a bullet fired, None otherwise.
    pub bullet: Option<u8>,
}

fn check_gamma_sigma(gamma: f64, sigma: f64) -> Result<()> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::domain(format!(
            "gamma must lie in (0,1), got {gamma}"
        )));
    }
    if !(sigma > 0.0 && sigma < 2.0) {
        return Err(Error::domain(format!(
            "sigma must lie in (0,2), got {sigma}"
        )));
    }
    Ok(())
}

/// Critical exponent `p_c(n, γ, σ)`; +∞ when the positive part vanishes.
pub fn p_critical(n: u32, gamma: f64, sigma: f64) -> Result<PCritical> {
    if n < 1 {
        return Err(Error::domain("dimension n must be >= 1"));
    }
    check_gamma_sigma(gamma, sigma)?;
    let st = sigma.min(1.0);
    let denom = (n as f64 - 2.0 + gamma * (2.0 - st)).max(0.0);
    if denom == 0.0 {
        return Ok(PCritical::Infinite);
    }
    Ok(PCritical::Finite(
        1.0 + (2.0 + (1.0 - gamma) * (2.0 - st)) / denom,
    ))
}

/// Exact-rational critical exponent for rational (γ, σ); `None` encodes +∞.
pub fn p_critical_rational(
    n: u32,
    gamma: &BigRational,
    sigma: &BigRational,
) -> Result<Option<BigRational>> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    if !(gamma > &zero && gamma < &one) {
        return Err(Error::domain("gamma must lie in (0,1)"));
    }
    if !(sigma > &zero && sigma < &two) {
        return Err(Error::domain("sigma must lie in (0,2)"));
    }
    let st = if sigma < &one { sigma.clone() } else { one.clone() };
    let nr = BigRational::from_integer(BigInt::from(n));
    let denom = &nr - &two + gamma * (&two - &st);
    if !denom.is_positive() {
        return Ok(None);
    }
    let numer = &two + (&one - gamma) * (&two - &st);
    Ok(Some(&one + numer / denom))
}

/// σ = 1 closed form `p_γ(n) = 1 + (3-γ)/(n-2+γ)` in exact arithmetic;
/// `None` encodes +∞.
pub fn p_gamma_rational(n: u32, gamma: &BigRational) -> Result<Option<BigRational>> {
    let zero = BigRational::zero();
    let one = BigRational::one();
    if !(gamma > &zero && gamma < &one) {
        return Err(Error::domain("gamma must lie in (0,1)"));
    }
    let three = BigRational::from_integer(BigInt::from(3));
    let two = BigRational::from_integer(BigInt::from(2));
    let nr = BigRational::from_integer(BigInt::from(n));
    let denom = &nr - &two + gamma;
    if !denom.is_positive() {
        return Ok(None);
    }
    Ok(Some(&one + (&three - gamma) / denom))
}

/// Which bullets' parameter conditions (ignoring p) hold for (n, γ, σ).
/// The three regions partition the parameter space; the classifier flags
/// any overlap as an internal error instead of silently picking one.
fn bullet_regions(n: u32, gamma: f64, sigma: f64) -> [bool; 3] {
    let st = sigma.min(1.0);
    let cut = (2.0 - gamma * (2.0 - st)).floor();
    let nf = n as f64;
    let b1 = nf <= cut;
    let b2 = (cut < nf && nf <= 2.0) || (n > 2 && gamma >= (nf - 2.0) / nf);
    let b3 = n >= 3 && gamma < (nf - 2.0) / nf;
    [b1, b2, b3]
}

/// Classify a parameter tuple against the three blow-up bullets.
pub fn classify(params: &ModelParams) -> Result<RegimeVerdict> {
    let n = params.dim();
    let gamma = params.gamma();
    let p = params.p();
    let p_c = p_critical(n, gamma, params.sigma())?;
    let regions = bullet_regions(n, gamma, params.sigma());
    let hits = regions.iter().filter(|&&b| b).count();
    if hits > 1 {
        return Err(Error::Internal(format!(
            "bullets overlap for n={n}, gamma={gamma}, sigma={}",
            params.sigma()
        )));
    }
    let verdict = if regions[0] {
        RegimeVerdict {
            tag: RegimeTag::BlowupAllP,
            p_c,
            bullet: Some(1),
        }
    } else if regions[1] {
        // Closed upper endpoint: p = p_c still blows up. Floating inputs
        // get a small guard band around the boundary.
        let inside = match p_c {
            PCritical::Infinite => true,
            PCritical::Finite(pc) => p <= pc + P_CRITICAL_GUARD * pc.max(1.0),
        };
        if inside {
            RegimeVerdict {
                tag: RegimeTag::BlowupUpToCritical,
                p_c,
                bullet: Some(2),
            }
        } else {
            RegimeVerdict {
                tag: RegimeTag::NotCovered,
                p_c,
                bullet: None,
            }
        }
    } else if regions[2] {
        if p < 1.0 / gamma {
            RegimeVerdict {
                tag: RegimeTag::BlowupBelowGammaInverse,
                p_c,
                bullet: Some(3),
            }
        } else {
            RegimeVerdict {
                tag: RegimeTag::NotCovered,
                p_c,
                bullet: None,
            }
        }
    } else {
        RegimeVerdict {
            tag: RegimeTag::NotCovered,
            p_c,
            bullet: None,
        }
    };
    Ok(verdict)
}

/// Rational-boundary variant: decides `p` against `p_c` in exact
/// arithmetic when all inputs are rational.
pub fn classify_rational(
    n: u32,
    gamma: &BigRational,
    sigma: &BigRational,
    p: &BigRational,
) -> Result<RegimeTag> {
    let gf = rational_to_f64(gamma);
    let sf = rational_to_f64(sigma);
    if !(p > &BigRational::one()) {
        return Err(Error::domain("p must exceed 1"));
    }
    let regions = bullet_regions(n, gf, sf);
    if regions[0] {
        return Ok(RegimeTag::BlowupAllP);
    }
    if regions[1] {
        let pc = p_critical_rational(n, gamma, sigma)?;
        let inside = match pc {
            None => true,
            Some(pc) => p <= &pc,
        };
        return Ok(if inside {
            RegimeTag::BlowupUpToCritical
        } else {
            RegimeTag::NotCovered
        });
    }
    if regions[2] {
        let inv = BigRational::one() / gamma;
        return Ok(if p < &inv {
            RegimeTag::BlowupBelowGammaInverse
        } else {
            RegimeTag::NotCovered
        });
    }
    Ok(RegimeTag::NotCovered)
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Convenience: BigRational from a (numerator, denominator) pair.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(
        BigInt::from_i64(numer).unwrap(),
        BigInt::from_i64(denom).unwrap(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn p_critical_known_values() {
        // σ = 1 collapses to p_γ(n) = 1 + (3-γ)/(n-2+γ).
        let v = p_critical(3, 0.5, 1.0).unwrap();
        assert_relative_eq!(v.as_f64(), 8.0 / 3.0, max_relative = 1e-15);
        // Positive part annihilates the denominator: n=1, γ=0.5, σ=0.5.
        assert!(p_critical(1, 0.5, 0.5).unwrap().is_infinite());
        // Out-of-range parameters.
        assert!(p_critical(3, 1.2, 1.0).is_err());
        assert!(p_critical(3, 0.5, 2.0).is_err());
    }

    #[test]
    fn p_critical_rational_matches_p_gamma_at_sigma_one() {
        for n in 1..=10u32 {
            for num in 1..=9i64 {
                let g = ratio(num, 10);
                let s = ratio(1, 1);
                let lhs = p_critical_rational(n, &g, &s).unwrap();
                let rhs = p_gamma_rational(n, &g).unwrap();
                assert_eq!(lhs, rhs, "mismatch at n={n}, γ={num}/10");
            }
        }
    }

    #[test]
    fn sigma_insensitive_above_one() {
        for &s in &[1.0, 1.3, 1.7, 1.95] {
            let a = p_critical(4, 0.6, s).unwrap().as_f64();
            let b = p_critical(4, 0.6, 1.0).unwrap().as_f64();
            assert_relative_eq!(a, b, max_relative = 1e-15);
        }
    }

    #[test]
    fn classify_theorem_bullets() {
        // Bullet 1: n=1, σ=1, γ=0.5 covers any p.
        let v = classify(&ModelParams::new(1, 1.0, 0.5, 1.0, 100.0).unwrap()).unwrap();
        assert_eq!(v.tag, RegimeTag::BlowupAllP);
        assert_eq!(v.bullet, Some(1));

        // Bullet 3: n=5, γ=0.1 < 3/5, p=9.9 < 10.
        let v = classify(&ModelParams::new(5, 1.0, 0.1, 1.0, 9.9).unwrap()).unwrap();
        assert_eq!(v.tag, RegimeTag::BlowupBelowGammaInverse);
        assert_eq!(v.bullet, Some(3));
        // ... but p = 10.5 > 1/γ is out.
        let v = classify(&ModelParams::new(5, 1.0, 0.1, 1.0, 10.5).unwrap()).unwrap();
        assert_eq!(v.tag, RegimeTag::NotCovered);

        // (n=3, γ=1/2, σ=1): p_c = 8/3, p=3 exceeds it.
        let v = classify(&ModelParams::new(3, 1.0, 0.5, 1.0, 3.0).unwrap()).unwrap();
        assert_eq!(v.tag, RegimeTag::NotCovered);
        assert_relative_eq!(v.p_c.as_f64(), 8.0 / 3.0, max_relative = 1e-15);

        // Same parameters at exactly p = p_c: endpoint included.
        let v = classify(&ModelParams::new(3, 1.0, 0.5, 1.0, 8.0 / 3.0).unwrap()).unwrap();
        assert_eq!(v.tag, RegimeTag::BlowupUpToCritical);
        assert_eq!(v.bullet, Some(2));
    }

    #[test]
    fn classify_rational_boundary_inclusion() {
        // p exactly at the rational critical exponent is included; any
        // rational step above is not.
        let g = ratio(1, 2);
        let s = ratio(1, 1);
        let pc = p_critical_rational(3, &g, &s).unwrap().unwrap();
        assert_eq!(pc, ratio(8, 3));
        assert_eq!(
            classify_rational(3, &g, &s, &pc).unwrap(),
            RegimeTag::BlowupUpToCritical
        );
        let above = &pc + ratio(1, 1_000_000_000);
        assert_eq!(
            classify_rational(3, &g, &s, &above).unwrap(),
            RegimeTag::NotCovered
        );
    }

    proptest! {
        #[test]
        fn classify_is_total_and_single_bullet(
            n in 1u32..8,
            sigma in 0.05f64..1.95,
            gamma in 0.02f64..0.98,
            p in 1.01f64..12.0,
        ) {
            let params = ModelParams::new(n, sigma, gamma, 1.0, p).unwrap();
            let v = classify(&params).unwrap();
            // Exactly one verdict; bullet agrees with the tag.
            match v.tag {
                RegimeTag::BlowupAllP => prop_assert_eq!(v.bullet, Some(1)),
                RegimeTag::BlowupUpToCritical => prop_assert_eq!(v.bullet, Some(2)),
                RegimeTag::BlowupBelowGammaInverse => prop_assert_eq!(v.bullet, Some(3)),
                RegimeTag::NotCovered => prop_assert_eq!(v.bullet, None),
            }
            // p_c = +∞ iff the positive part vanishes.
            let st = sigma.min(1.0);
            let denom = n as f64 - 2.0 + gamma*(2.0 - st);
            prop_assert_eq!(v.p_c.is_infinite(), denom <= 0.0);
        }

        #[test]
        fn p_critical_monotone_in_n_and_gamma(
            sigma in 0.05f64..1.95,
            gamma in 0.05f64..0.95,
            n in 1u32..7,
        ) {
            // Nonincreasing in n for fixed (γ, σ).
            let a = p_critical(n, gamma, sigma).unwrap().as_f64();
            let b = p_critical(n + 1, gamma, sigma).unwrap().as_f64();
            prop_assert!(b <= a + 1e-12);
            // Nonincreasing in γ when the denominator stays positive.
            let g2 = (gamma + 0.02).min(0.989);
            let st = sigma.min(1.0);
            if n as f64 - 2.0 + gamma * (2.0 - st) > 0.0 {
                let c = p_critical(n, g2, sigma).unwrap().as_f64();
                prop_assert!(c <= a + 1e-12);
            }
        }
    }
}
