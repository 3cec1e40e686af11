//! Distortion-to-threshold mapping for the lossy link.
//!
//! A binary Bernoulli source must be reproduced within distortion `D`; by
//! source-channel separation the channel has to carry `R_c * R_s(D)` bits,
//! which pins the minimum SNR through the Gaussian-codebook capacity
//! `C(gamma) = (1/2) log2(1 + gamma)` and in turn the compound-gain
//! threshold `H_0`. Everything here works in linear units; dB conversion
//! belongs to the CLI boundary.

use crate::error::{Result, SimError};

/// Binary Bernoulli source with bias `p` in [0, 1/2].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceModel {
    p_src: f64,
}

impl SourceModel {
    pub fn new(p_src: f64) -> Result<SourceModel> {
        if !(0.0..=0.5).contains(&p_src) {
            return Err(SimError::parameter(format!(
                "source bias {p_src} outside [0, 0.5]"
            )));
        }
        Ok(SourceModel { p_src })
    }

    pub fn bias(&self) -> f64 {
        self.p_src
    }
}

/// Transmit-side and threshold parameters of one link, all linear units.
///
/// `gamma0` is the explicit SNR threshold; when absent it is derived from
/// the distortion requirement via [`snr_threshold_from_distortion`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    /// Transmit power, watts.
    pub p_s: f64,
    /// Noise power at the destination, watts.
    pub n0: f64,
    /// Path loss, linear factor.
    pub pl: f64,
    /// End-to-end channel coding rate.
    pub r_c: f64,
    /// Source bias.
    pub p_src: f64,
    /// Distortion requirement `D` in [0, 1].
    pub distortion: f64,
    /// Explicit SNR threshold (linear), overriding the derived one.
    pub gamma0: Option<f64>,
}

impl LinkBudget {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        p_s: f64,
        n0: f64,
        pl: f64,
        r_c: f64,
        p_src: f64,
        distortion: f64,
        gamma0: Option<f64>,
    ) -> Result<LinkBudget> {
        if !(p_s > 0.0) || !(n0 > 0.0) || !(pl > 0.0) {
            return Err(SimError::parameter(
                "powers and path loss must be strictly positive",
            ));
        }
        if !(r_c > 0.0) {
            return Err(SimError::parameter("coding rate must be positive"));
        }
        SourceModel::new(p_src)?;
        if !(0.0..=1.0).contains(&distortion) {
            return Err(SimError::parameter(format!(
                "distortion {distortion} outside [0, 1]"
            )));
        }
        if let Some(g) = gamma0 {
            if !(g >= 0.0) {
                return Err(SimError::parameter("gamma0 must be >= 0"));
            }
        }
        Ok(LinkBudget {
            p_s,
            n0,
            pl,
            r_c,
            p_src,
            distortion,
            gamma0,
        })
    }

    /// The SNR threshold in effect: the explicit one if set, otherwise the
    /// value derived from the distortion requirement.
    pub fn effective_gamma0(&self) -> Result<f64> {
        match self.gamma0 {
            Some(g) => Ok(g),
            None => {
                let src = SourceModel::new(self.p_src)?;
                snr_threshold_from_distortion(&src, self.distortion, self.r_c)
            }
        }
    }
}

/// Binary entropy in bits, with the `0 log 0 = 0` convention.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(SimError::parameter(format!(
            "entropy argument {x} outside [0, 1]"
        )));
    }
    let term = |p: f64| if p == 0.0 { 0.0 } else { -p * p.log2() };
    Ok(term(x) + term(1.0 - x))
}

/// Rate-distortion function of the Bernoulli source:
/// `H_b(p) - H_b(d)` for `d < p`, zero once `d >= p`.
pub fn rate_distortion(src: &SourceModel, d: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&d) {
        return Err(SimError::parameter(format!(
            "distortion {d} outside [0, 1]"
        )));
    }
    if d >= src.p_src {
        return Ok(0.0);
    }
    Ok(binary_entropy(src.p_src)? - binary_entropy(d)?)
}

/// Invert `C(gamma0) = R_c R_s(D)` for the Gaussian-codebook capacity
/// `C(gamma) = (1/2) log2(1 + gamma)`: `gamma0 = 2^{2 R_c R_s(D)} - 1`.
pub fn snr_threshold_from_distortion(src: &SourceModel, d: f64, r_c: f64) -> Result<f64> {
    if !(r_c > 0.0) {
        return Err(SimError::parameter("coding rate must be positive"));
    }
    let rate = rate_distortion(src, d)?;
    Ok((2.0f64).powf(2.0 * r_c * rate) - 1.0)
}

/// Compound-gain threshold `H_0 = sqrt(gamma0 N_0 PL / P_S)`; outage is the
/// event `|H| < H_0`.
pub fn gain_threshold(budget: &LinkBudget) -> Result<f64> {
    if !(budget.p_s > 0.0) {
        return Err(SimError::parameter("transmit power must be positive"));
    }
    let gamma0 = budget.effective_gamma0()?;
    Ok((gamma0 * budget.n0 * budget.pl / budget.p_s).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn entropy_known_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        let v = binary_entropy(0.1).unwrap();
        assert!((v - 0.4689955935892812).abs() < 1e-5, "{v}");
        assert!(binary_entropy(-0.01).is_err());
        assert!(binary_entropy(1.01).is_err());
    }

    #[test]
    fn rate_distortion_known_values() {
        let src = SourceModel::new(0.5).unwrap();
        assert_eq!(rate_distortion(&src, 0.0).unwrap(), 1.0);
        assert_eq!(rate_distortion(&src, 0.5).unwrap(), 0.0);
        let v = rate_distortion(&src, 0.1).unwrap();
        assert!((v - 0.5310044064107188).abs() < 1e-5, "{v}");
        assert!(rate_distortion(&src, 1.5).is_err());
    }

    #[test]
    fn rate_distortion_monotone_and_continuous_at_p() {
        let src = SourceModel::new(0.35).unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..=100 {
            let d = i as f64 / 100.0;
            let r = rate_distortion(&src, d).unwrap();
            assert!(r <= prev + 1e-12, "not non-increasing at {d}");
            prev = r;
        }
        let below = rate_distortion(&src, 0.35 - 1e-9).unwrap();
        assert!(below < 1e-7, "discontinuous at d = p: {below}");
    }

    #[test]
    fn snr_threshold_known_values() {
        let src = SourceModel::new(0.5).unwrap();
        let g = snr_threshold_from_distortion(&src, 0.0, 1.0).unwrap();
        assert!((g - 3.0).abs() < 1e-10, "{g}");
        assert_eq!(snr_threshold_from_distortion(&src, 0.5, 2.0).unwrap(), 0.0);
        assert_eq!(snr_threshold_from_distortion(&src, 0.9, 1.0).unwrap(), 0.0);
        let g = snr_threshold_from_distortion(&src, 0.1, 1.0).unwrap();
        assert!((g - 1.0878366085263038).abs() < 1e-3, "{g}");
    }

    #[test]
    fn capacity_round_trip() {
        let src = SourceModel::new(0.5).unwrap();
        for &(d, r_c) in &[(0.0, 1.0), (0.1, 0.5), (0.25, 2.0), (0.4, 1.0)] {
            let g = snr_threshold_from_distortion(&src, d, r_c).unwrap();
            let c = 0.5 * (1.0 + g).log2();
            let want = r_c * rate_distortion(&src, d).unwrap();
            assert!((c - want).abs() < 1e-10, "C({g}) = {c} vs {want}");
        }
    }

    #[test]
    fn gain_threshold_table1_point() {
        // gamma0 = 10 (10 dB), N0 = 1e-7 W, PL = 1e4, P_S = 1e-3 W -> sqrt(10)
        let b = LinkBudget::new(1e-3, 1e-7, 1e4, 1.0, 0.5, 0.0, Some(10.0)).unwrap();
        let h0 = gain_threshold(&b).unwrap();
        assert!((h0 - 10.0f64.sqrt()).abs() < 1e-10, "{h0}");

        let b0 = LinkBudget::new(1e-3, 1e-7, 1e4, 1.0, 0.5, 0.0, Some(0.0)).unwrap();
        assert_eq!(gain_threshold(&b0).unwrap(), 0.0);

        // quadrupling P_S halves H0
        let b4 = LinkBudget::new(4e-3, 1e-7, 1e4, 1.0, 0.5, 0.0, Some(10.0)).unwrap();
        let h4 = gain_threshold(&b4).unwrap();
        assert!((h4 - 0.5 * h0).abs() < 1e-12);
    }

    #[test]
    fn gain_threshold_uses_derived_gamma0_when_unset() {
        let b = LinkBudget::new(1e-3, 1e-7, 1e4, 1.0, 0.5, 0.0, None).unwrap();
        let h0 = gain_threshold(&b).unwrap();
        // derived gamma0 = 3
        assert!((h0 - (3.0f64 * 1e-7 * 1e4 / 1e-3).sqrt()).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn snr_threshold_monotonicity(
            d1 in 0.0f64..0.5, d2 in 0.0f64..0.5, rc in 0.1f64..4.0,
        ) {
            let src = SourceModel::new(0.5).unwrap();
            let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
            let g_lo = snr_threshold_from_distortion(&src, lo, rc).unwrap();
            let g_hi = snr_threshold_from_distortion(&src, hi, rc).unwrap();
            prop_assert!(g_hi <= g_lo + 1e-12);
            // non-decreasing in the coding rate
            let g2 = snr_threshold_from_distortion(&src, lo, rc * 1.5).unwrap();
            prop_assert!(g2 >= g_lo - 1e-12);
        }

        #[test]
        fn gain_threshold_scaling_directions(
            ps in 1e-4f64..1.0, g in 0.01f64..100.0,
        ) {
            let b = LinkBudget::new(ps, 1e-7, 1e4, 1.0, 0.5, 0.0, Some(g)).unwrap();
            let h = gain_threshold(&b).unwrap();
            let b_ps = LinkBudget::new(ps * 2.0, 1e-7, 1e4, 1.0, 0.5, 0.0, Some(g)).unwrap();
            prop_assert!(gain_threshold(&b_ps).unwrap() < h);
            let b_g = LinkBudget::new(ps, 1e-7, 1e4, 1.0, 0.5, 0.0, Some(g * 2.0)).unwrap();
            prop_assert!(gain_threshold(&b_g).unwrap() > h);
            let b_n = LinkBudget::new(ps, 2e-7, 1e4, 1.0, 0.5, 0.0, Some(g)).unwrap();
            prop_assert!(gain_threshold(&b_n).unwrap() > h);
            let b_pl = LinkBudget::new(ps, 1e-7, 2e4, 1.0, 0.5, 0.0, Some(g)).unwrap();
            prop_assert!(gain_threshold(&b_pl).unwrap() > h);
        }
    }
}
