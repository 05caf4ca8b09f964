//! Finite-blocklength achievability for the binary-input AWGN channel.
//!
//! Capacity and dispersion are the mean and variance of the information
//! density `i(x; y)` of equiprobable BPSK over AWGN with noise variance
//! `1/rho`. Both expectations are taken with Gauss–Hermite quadrature; the
//! density is evaluated in nats so that the dispersion comes out in nats²
//! and the `log2(e)` factor of the normal approximation converts the
//! backoff to bits.

use std::f64::consts::{FRAC_1_SQRT_2, LN_2, LOG2_E, PI, SQRT_2};
use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::hermite::GaussHermite;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Signal-to-noise ratio `rho = 1/sigma²`, stored in decibels.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Snr {
    value_db: f64,
}

impl Snr {
    /// `+inf` dB is accepted and stands for a noiseless channel.
    pub fn from_db(value_db: f64) -> Result<Self> {
        if value_db.is_nan() || value_db == f64::NEG_INFINITY {
            return Err(Error::Domain(format!("SNR of {value_db} dB")));
        }
        Ok(Self { value_db })
    }

    pub fn from_linear(rho: f64) -> Result<Self> {
        if !(rho > 0.0) {
            return Err(Error::Domain(format!(
                "linear SNR must be positive, got {rho}"
            )));
        }
        Ok(Self {
            value_db: 10.0 * rho.log10(),
        })
    }

    pub fn db(self) -> f64 {
        self.value_db
    }

    pub fn linear(self) -> f64 {
        10f64.powf(self.value_db / 10.0)
    }

    /// Per-dimension noise variance `sigma² = 1/rho`.
    pub fn noise_variance(self) -> f64 {
        1.0 / self.linear()
    }
}

/// Information rate `k/n` in bits per channel use, `0 < rate <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct CodeRate(f64);

impl CodeRate {
    pub fn new(rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(Error::Domain(format!(
                "code rate must lie in (0, 1], got {rate}"
            )));
        }
        Ok(Self(rate))
    }

    pub fn from_dimensions(k: u64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("blocklength must be positive".into()));
        }
        Self::new(k as f64 / n as f64)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Target codeword error probability, `0 < epsilon < 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct ReliabilityTarget(f64);

impl ReliabilityTarget {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::Domain(format!(
                "error probability must lie in (0, 1), got {epsilon}"
            )));
        }
        Ok(Self(epsilon))
    }

    pub fn epsilon(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalApproxConfig {
    pub quadrature_nodes: usize,
    /// The `O(1/n)` remainder of the expansion is always dropped.
    pub drop_o1n_term: bool,
}

impl Default for NormalApproxConfig {
    fn default() -> Self {
        Self {
            quadrature_nodes: 128,
            drop_o1n_term: true,
        }
    }
}

/// Gaussian tail probability `Q(x) = P(Z > x)`.
pub fn q_func(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("q_func of non-finite {x}")));
    }
    Ok(0.5 * libm::erfc(x * FRAC_1_SQRT_2))
}

fn gaussian_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Inverse of [`q_func`] on `(0, 1)`.
///
/// Upper-half probabilities are mapped through `Q^{-1}(p) = -Q^{-1}(1 - p)`
/// so the root search always runs in the right tail, where `Q` has full
/// relative precision.
pub fn q_inv(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "q_inv argument must lie in (0, 1), got {p}"
        )));
    }
    if p > 0.5 {
        return Ok(-q_inv_right_tail(1.0 - p));
    }
    Ok(q_inv_right_tail(p))
}

fn q_inv_right_tail(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p <= 0.5);
    if p == 0.5 {
        return 0.0;
    }
    let q = |x: f64| 0.5 * libm::erfc(x * FRAC_1_SQRT_2);
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while q(hi) > p {
        lo = hi;
        hi *= 2.0;
    }
    let ln_p = p.ln();
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let qx = q(x);
        if qx > p {
            lo = x;
        } else {
            hi = x;
        }
        // Newton on ln Q(x) - ln p.
        let mut next = if qx > 0.0 {
            x + (qx.ln() - ln_p) * qx / gaussian_pdf(x)
        } else {
            f64::NAN
        };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        if step <= 1e-15 * x.abs().max(1.0) || hi - lo <= 1e-15 * x.abs().max(1.0) {
            break;
        }
    }
    x
}

/// Capacity and dispersion evaluator for the BI-AWGN channel.
#[derive(Debug, Clone)]
pub struct BiAwgn {
    rule: GaussHermite,
}

impl Default for BiAwgn {
    fn default() -> Self {
        Self::new(NormalApproxConfig::default()).expect("default config is valid")
    }
}

impl BiAwgn {
    pub fn new(config: NormalApproxConfig) -> Result<Self> {
        if config.quadrature_nodes < 32 {
            return Err(Error::Domain(format!(
                "at least 32 quadrature nodes are required, got {}",
                config.quadrature_nodes
            )));
        }
        let nodes = NonZeroUsize::new(config.quadrature_nodes).expect("checked above");
        Ok(Self {
            rule: GaussHermite::new(nodes),
        })
    }

    /// Shared evaluator with the default configuration.
    pub fn shared() -> &'static BiAwgn {
        static SHARED: OnceLock<BiAwgn> = OnceLock::new();
        SHARED.get_or_init(BiAwgn::default)
    }

    /// `E[f(Z)]` for standard normal `Z`.
    fn expect_normal(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.rule.integrate(|x| f(SQRT_2 * x)) / PI.sqrt()
    }

    /// Returns `(capacity in bits, dispersion in nats²)`.
    pub fn capacity_and_dispersion(&self, rho: Snr) -> (f64, f64) {
        let rho = rho.linear();
        if rho.is_infinite() {
            return (1.0, 0.0);
        }
        let sigma = rho.sqrt().recip();
        let density = |z: f64| information_density_nats(rho, 1.0 + sigma * z);
        let mean = self.expect_normal(density);
        let var = self.expect_normal(|z| {
            let d = density(z) - mean;
            d * d
        });
        ((mean * LOG2_E).clamp(0.0, 1.0), var.max(0.0))
    }

    pub fn capacity(&self, rho: Snr) -> f64 {
        self.capacity_and_dispersion(rho).0
    }

    pub fn dispersion(&self, rho: Snr) -> f64 {
        self.capacity_and_dispersion(rho).1
    }

    /// `max(0, C - sqrt(V/n) Q^{-1}(eps) log2 e)` in bits per channel use.
    pub fn normal_approx_rate(&self, n: u64, eps: ReliabilityTarget, rho: Snr) -> f64 {
        let q = q_inv(eps.epsilon()).expect("ReliabilityTarget lies in (0, 1)");
        self.rate_with_backoff(n, q, rho)
    }

    fn rate_with_backoff(&self, n: u64, q_inv_eps: f64, rho: Snr) -> f64 {
        let (c, v) = self.capacity_and_dispersion(rho);
        (c - (v / n as f64).sqrt() * q_inv_eps * LOG2_E).max(0.0)
    }

    /// Smallest SNR at which the normal approximation supports `rate`.
    pub fn required_snr(&self, n: u64, eps: ReliabilityTarget, rate: CodeRate) -> Result<Snr> {
        let target = rate.value();
        if target >= 1.0 {
            return Err(Error::Infeasible(
                "a rate of 1 is unreachable at finite SNR".into(),
            ));
        }
        if n == 0 {
            return Err(Error::Domain("blocklength must be positive".into()));
        }
        let q = q_inv(eps.epsilon())?;
        let rate_at = |db: f64| self.rate_with_backoff(n, q, Snr { value_db: db });

        let mut lo = -50.0;
        while rate_at(lo) >= target {
            lo -= 50.0;
            if lo < -400.0 {
                return Ok(Snr { value_db: lo });
            }
        }
        let mut hi = 20.0;
        while rate_at(hi) < target {
            lo = hi;
            hi += 20.0;
            if hi > 200.0 {
                return Err(Error::Infeasible(format!(
                    "rate {target} not reachable for n = {n} below 200 dB"
                )));
            }
        }
        while hi - lo > 1e-10 {
            let mid = 0.5 * (lo + hi);
            if rate_at(mid) >= target {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(Snr { value_db: hi })
    }

    /// Excess SNR in dB of `operating` over the normal-approximation requirement.
    pub fn power_penalty(
        &self,
        operating: Snr,
        n: u64,
        eps: ReliabilityTarget,
        rate: CodeRate,
    ) -> Result<f64> {
        let required = self.required_snr(n, eps, rate)?.db();
        let delta = operating.db() - required;
        if delta < -1e-9 {
            return Err(Error::NegativePenalty {
                operating_db: operating.db(),
                required_db: required,
            });
        }
        Ok(delta.max(0.0))
    }
}

/// Information density in nats of `x = +1` given output `y` at linear SNR `rho`.
pub(crate) fn information_density_nats(rho: f64, y: f64) -> f64 {
    // i = ln 2 - ln(1 + exp(t)), t = -2 rho y
    let t = -2.0 * rho * y;
    if t < 30.0 {
        -(libm::expm1(t) * 0.5).ln_1p()
    } else {
        LN_2 - t - (-t).exp().ln_1p()
    }
}

pub fn biawgn_capacity(rho: Snr) -> f64 {
    BiAwgn::shared().capacity(rho)
}

pub fn biawgn_dispersion(rho: Snr) -> f64 {
    BiAwgn::shared().dispersion(rho)
}

pub fn normal_approx_rate(n: u64, eps: ReliabilityTarget, rho: Snr) -> f64 {
    BiAwgn::shared().normal_approx_rate(n, eps, rho)
}

pub fn required_snr(n: u64, eps: ReliabilityTarget, rate: CodeRate) -> Result<Snr> {
    BiAwgn::shared().required_snr(n, eps, rate)
}

pub fn power_penalty(
    operating: Snr,
    n: u64,
    eps: ReliabilityTarget,
    rate: CodeRate,
) -> Result<f64> {
    BiAwgn::shared().power_penalty(operating, n, eps, rate)
}
