//! Correlated Rayleigh channel model for a reflecting-surface link.
//!
//! Each hop's coefficients share a single common Gaussian component: element
//! i of a hop is built from its own pair of Gaussians plus the hop-wide pair,
//! blended by the element's correlation factor. The resulting envelopes are
//! Rayleigh with `E|G_i|^2 = sigma_i^2`, the complex correlation between
//! elements i and k is `lambda_i * lambda_k`, and the joint envelope density
//! is an exponential mixture of per-element Rician densities in a scalar
//! mixing variable.

use num_complex::Complex64;

use crate::error::{Result, SimError};
use crate::lossy::LinkBudget;
use crate::quad::{integrate_adaptive, GL16};
use crate::rng::SimRng;
use crate::special::{i0_taylor, rician_pdf};

pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Per-element correlation factors and scale parameters for one hop.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationProfile {
    lambdas: Vec<f64>,
    sigmas: Vec<f64>,
}

impl CorrelationProfile {
    /// Validates `lambda_i` in (-1, 1), `sigma_i > 0`, equal non-zero lengths.
    pub fn new(lambdas: Vec<f64>, sigmas: Vec<f64>) -> Result<CorrelationProfile> {
        if lambdas.is_empty() || lambdas.len() != sigmas.len() {
            return Err(SimError::Dimension {
                expected: lambdas.len().max(1),
                got: sigmas.len(),
            });
        }
        for &l in &lambdas {
            if !(-1.0..1.0).contains(&l) || !l.is_finite() || l.abs() >= 1.0 {
                return Err(SimError::parameter(format!(
                    "correlation factor {l} outside (-1, 1)"
                )));
            }
        }
        for &s in &sigmas {
            if !(s > 0.0) || !s.is_finite() {
                return Err(SimError::parameter(format!("scale {s} must be positive")));
            }
        }
        Ok(CorrelationProfile { lambdas, sigmas })
    }

    /// Independent elements (all correlation factors zero).
    pub fn independent(sigmas: Vec<f64>) -> Result<CorrelationProfile> {
        let lambdas = vec![0.0; sigmas.len()];
        CorrelationProfile::new(lambdas, sigmas)
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn sigmas(&self) -> &[f64] {
        &self.sigmas
    }
}

/// One draw of the two hop coefficient vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub g: Vec<Complex64>,
    pub g_prime: Vec<Complex64>,
}

impl ChannelRealization {
    pub fn new(g: Vec<Complex64>, g_prime: Vec<Complex64>) -> Result<ChannelRealization> {
        if g.len() != g_prime.len() || g.is_empty() {
            return Err(SimError::Dimension {
                expected: g.len().max(1),
                got: g_prime.len(),
            });
        }
        for c in g.iter().chain(&g_prime) {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(SimError::parameter("non-finite channel coefficient"));
            }
        }
        Ok(ChannelRealization { g, g_prime })
    }

    pub fn len(&self) -> usize {
        self.g.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The reflecting surface's phase shifts, wrapped to [0, 2*pi).
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseConfig {
    thetas: Vec<f64>,
}

impl PhaseConfig {
    pub fn new(thetas: Vec<f64>) -> Result<PhaseConfig> {
        if thetas.is_empty() {
            return Err(SimError::parameter("phase vector must be non-empty"));
        }
        if thetas.iter().any(|t| !t.is_finite()) {
            return Err(SimError::parameter("non-finite phase shift"));
        }
        Ok(PhaseConfig {
            thetas: thetas.into_iter().map(|t| t.rem_euclid(TWO_PI)).collect(),
        })
    }

    pub fn zeros(m: usize) -> PhaseConfig {
        PhaseConfig {
            thetas: vec![0.0; m],
        }
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }
}

/// Draw one realization: for each hop, a common Gaussian pair plus a pair per
/// element, all zero-mean with variance 1/2 per real component. The two hops
/// consume disjoint draws from the stream (hop 1 first, then hop 2);
/// within a hop the common pair is drawn first, then element pairs in order.
pub fn draw_coefficients(
    profile1: &CorrelationProfile,
    profile2: &CorrelationProfile,
    rng: &mut SimRng,
) -> ChannelRealization {
    let mut out = ChannelRealization {
        g: vec![Complex64::default(); profile1.len()],
        g_prime: vec![Complex64::default(); profile2.len()],
    };
    draw_coefficients_into(profile1, profile2, rng, &mut out);
    out
}

/// Allocation-free variant used by the Monte-Carlo loops.
pub fn draw_coefficients_into(
    profile1: &CorrelationProfile,
    profile2: &CorrelationProfile,
    rng: &mut SimRng,
    out: &mut ChannelRealization,
) {
    draw_hop(profile1, rng, &mut out.g);
    draw_hop(profile2, rng, &mut out.g_prime);
}

fn draw_hop(profile: &CorrelationProfile, rng: &mut SimRng, out: &mut Vec<Complex64>) {
    const COMPONENT_STD: f64 = std::f64::consts::FRAC_1_SQRT_2; // N(0, 1/2)
    out.resize(profile.len(), Complex64::default());
    let x0 = COMPONENT_STD * rng.normal();
    let y0 = COMPONENT_STD * rng.normal();
    for (slot, (&l, &s)) in out
        .iter_mut()
        .zip(profile.lambdas.iter().zip(&profile.sigmas))
    {
        let xi = COMPONENT_STD * rng.normal();
        let yi = COMPONENT_STD * rng.normal();
        let mix = (1.0 - l * l).sqrt();
        *slot = Complex64::new(s * (mix * xi + l * x0), s * (mix * yi + l * y0));
    }
}

/// Which I0 evaluation the envelope density uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselMode {
    /// Series plus scaled asymptotic expansion (default).
    Full,
    /// Truncated power series with the given number of correction terms;
    /// cross-check mode only, accurate for small arguments.
    Taylor(usize),
}

/// Joint density of the envelope vector `|G| = r` for one hop.
///
/// Evaluated as a 1-D exponential mixture over `t` in `[0, T]` with `T = 40`
/// (the discarded tail mass is below `e^-40 ~ 4e-18`): conditioned on `t`,
/// element k's envelope is Rician with noncentrality `sigma_k |lambda_k|
/// sqrt(t)` and scale `Omega_k^2 = sigma_k^2 (1 - lambda_k^2) / 2`. The
/// mixing integral is refined by panel doubling (up to 64 Gauss-Legendre
/// panels) until its relative change is below 1e-8.
pub fn joint_envelope_pdf(profile: &CorrelationProfile, r: &[f64]) -> Result<f64> {
    joint_envelope_pdf_mode(profile, r, BesselMode::Full)
}

/// [`joint_envelope_pdf`] with an explicit I0 evaluation mode.
pub fn joint_envelope_pdf_mode(
    profile: &CorrelationProfile,
    r: &[f64],
    mode: BesselMode,
) -> Result<f64> {
    const T_MAX: f64 = 40.0;
    const MIX_TOL: f64 = 1e-8;
    const MAX_PANELS: usize = 64;

    if r.len() != profile.len() {
        return Err(SimError::Dimension {
            expected: profile.len(),
            got: r.len(),
        });
    }
    if r.iter().any(|&x| x < 0.0 || !x.is_finite()) {
        return Err(SimError::parameter("envelope values must be >= 0"));
    }
    if r.iter().any(|&x| x == 0.0) {
        return Ok(0.0); // envelope density vanishes on the axes
    }

    let omegas: Vec<f64> = profile
        .lambdas
        .iter()
        .zip(&profile.sigmas)
        .map(|(&l, &s)| s * ((1.0 - l * l) / 2.0).sqrt())
        .collect();

    let integrand = |t: f64| -> f64 {
        let mut p = (-t).exp();
        for ((&rk, &om), (&l, &s)) in r
            .iter()
            .zip(&omegas)
            .zip(profile.lambdas.iter().zip(&profile.sigmas))
        {
            let nu = s * l.abs() * t.sqrt();
            p *= match mode {
                BesselMode::Full => rician_pdf(rk, nu, om),
                BesselMode::Taylor(order) => {
                    let o2 = om * om;
                    (rk / o2)
                        * (-(rk * rk + nu * nu) / (2.0 * o2)).exp()
                        * i0_taylor(rk * nu / o2, order)
                }
            };
        }
        p
    };

    let refined = integrate_adaptive(integrand, 0.0, T_MAX, MIX_TOL, MAX_PANELS, &GL16)?;
    Ok(refined.value.max(0.0))
}

/// Compound end-to-end coefficient `H = sum_i G_i e^{j theta_i} G'_i`.
pub fn compound_gain(ch: &ChannelRealization, phases: &PhaseConfig) -> Result<Complex64> {
    if phases.len() != ch.len() {
        return Err(SimError::Dimension {
            expected: ch.len(),
            got: phases.len(),
        });
    }
    let mut h = Complex64::default();
    for ((&g, &gp), &th) in ch.g.iter().zip(&ch.g_prime).zip(phases.thetas()) {
        h += g * Complex64::from_polar(1.0, th) * gp;
    }
    Ok(h)
}

/// Received power `P_S |H|^2 / PL`.
pub fn received_power(
    ch: &ChannelRealization,
    phases: &PhaseConfig,
    budget: &LinkBudget,
) -> Result<f64> {
    let h = compound_gain(ch, phases)?;
    Ok(budget.p_s * h.norm_sqr() / budget.pl)
}

/// Phase shifts that co-phase every reflected component, and the resulting
/// gain `sum_i |G_i||G'_i|` (the supremum of `|H|` over all phase choices).
pub fn optimal_phases(ch: &ChannelRealization) -> (PhaseConfig, f64) {
    let mut thetas = Vec::with_capacity(ch.len());
    let mut gain = 0.0;
    for (&g, &gp) in ch.g.iter().zip(&ch.g_prime) {
        thetas.push((-(g.arg() + gp.arg())).rem_euclid(TWO_PI));
        gain += g.norm() * gp.norm();
    }
    (PhaseConfig { thetas }, gain)
}

/// `sum_i |G_i||G'_i|` without materializing the phase vector.
pub fn aligned_gain(ch: &ChannelRealization) -> f64 {
    ch.g
        .iter()
        .zip(&ch.g_prime)
        .map(|(g, gp)| g.norm() * gp.norm())
        .sum()
}
