//! Empirical law linking decoder complexity to power penalty:
//! `log2 c = 1 / (a Δρ^γ + b)` with `Δρ` in dB.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TradeoffParams {
    pub n_anchor: u64,
    pub a: f64,
    pub b: f64,
    pub gamma_fit: f64,
}

/// Fitted constants for eBCH(64, 36) with OSD.
pub const N64: TradeoffParams = TradeoffParams {
    n_anchor: 64,
    a: 0.05,
    b: 0.03,
    gamma_fit: 0.4,
};

/// Fitted constants for eBCH(128, 64) with OSD.
pub const N128: TradeoffParams = TradeoffParams {
    n_anchor: 128,
    a: 0.03,
    b: 0.03,
    gamma_fit: 0.6,
};

impl TradeoffParams {
    pub fn new(n_anchor: u64, a: f64, b: f64, gamma_fit: f64) -> Result<Self> {
        let p = Self {
            n_anchor,
            a,
            b,
            gamma_fit,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !(ok(self.a) && ok(self.b) && ok(self.gamma_fit)) {
            return Err(Error::Domain(format!(
                "trade-off constants must be positive, got a = {}, b = {}, gamma = {}",
                self.a, self.b, self.gamma_fit
            )));
        }
        Ok(())
    }

    /// Complexity reached at zero penalty, `2^{1/b}`.
    pub fn complexity_ceiling(&self) -> f64 {
        (1.0 / self.b).exp2()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let p: Self = serde_json::from_str(&text)?;
        p.validate()?;
        Ok(p)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PenaltyPoint {
    pub delta_rho_db: f64,
    pub c: f64,
}

pub fn penalty_to_complexity(delta_rho_db: f64, p: &TradeoffParams) -> Result<f64> {
    if delta_rho_db.is_nan() || delta_rho_db < 0.0 {
        return Err(Error::Domain(format!(
            "penalty must be >= 0 dB, got {delta_rho_db}"
        )));
    }
    let denom = p.a * delta_rho_db.powf(p.gamma_fit) + p.b;
    Ok((1.0 / denom).exp2())
}

/// Inverse of [`penalty_to_complexity`].
///
/// Complexities at or above `2^{1/b}` need no penalty and map to 0;
/// complexities at or below 1 cannot reach the target at any finite
/// penalty and map to `+inf`.
pub fn complexity_to_penalty(c: f64, p: &TradeoffParams) -> Result<f64> {
    if c.is_nan() {
        return Err(Error::Domain("complexity is NaN".into()));
    }
    if c <= 1.0 {
        return Ok(f64::INFINITY);
    }
    let inv = 1.0 / c.log2();
    if inv <= p.b {
        return Ok(0.0);
    }
    Ok(((inv - p.b) / p.a).powf(1.0 / p.gamma_fit))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub params: TradeoffParams,
    /// RMS of `1/log2 c - a Δρ^γ - b` over the input points.
    pub rms_residual: f64,
}

/// Least-squares fit of `1/log2 c ≈ a Δρ^γ + b`.
///
/// For a fixed exponent the problem is linear in `(a, b)`; the exponent is
/// found by a coarse scan followed by golden-section refinement.
pub fn fit_params(points: &[PenaltyPoint], n_anchor: u64) -> Result<FitReport> {
    if points.len() < 3 {
        return Err(Error::Fit(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    if points
        .iter()
        .any(|pt| !(pt.delta_rho_db > 0.0) || !(pt.c > 1.0))
    {
        return Err(Error::Fit("every point needs Δρ > 0 and c > 1".into()));
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(|l, r| {
        l.delta_rho_db
            .total_cmp(&r.delta_rho_db)
            .then(l.c.total_cmp(&r.c))
    });
    let first = sorted[0].delta_rho_db;
    if sorted.iter().all(|pt| pt.delta_rho_db == first) {
        return Err(Error::Fit("all points share the same Δρ".into()));
    }
    let xs: Vec<f64> = sorted.iter().map(|pt| pt.delta_rho_db).collect();
    let ys: Vec<f64> = sorted.iter().map(|pt| 1.0 / pt.c.log2()).collect();

    let solve = |g: f64| -> (f64, f64, f64) {
        let us: Vec<f64> = xs.iter().map(|x| x.powf(g)).collect();
        let m = us.len() as f64;
        let mu = us.iter().sum::<f64>() / m;
        let my = ys.iter().sum::<f64>() / m;
        let (mut suu, mut suy) = (0.0, 0.0);
        for (u, y) in us.iter().zip(&ys) {
            suu += (u - mu) * (u - mu);
            suy += (u - mu) * (y - my);
        }
        let a = if suu > 0.0 { suy / suu } else { 0.0 };
        let b = my - a * mu;
        let sse = us
            .iter()
            .zip(&ys)
            .map(|(u, y)| (y - a * u - b).powi(2))
            .sum::<f64>();
        (a, b, sse)
    };

    let (lo_g, hi_g) = (1e-3, 5.0);
    let grid = 500;
    let mut best = (lo_g, f64::INFINITY);
    for i in 0..=grid {
        let g = lo_g + (hi_g - lo_g) * i as f64 / grid as f64;
        let sse = solve(g).2;
        if sse < best.1 {
            best = (g, sse);
        }
    }
    let step = (hi_g - lo_g) / grid as f64;
    let (mut lo, mut hi) = ((best.0 - step).max(lo_g), (best.0 + step).min(hi_g));
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (solve(x1).2, solve(x2).2);
    for _ in 0..200 {
        if hi - lo < 1e-14 {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = solve(x1).2;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = solve(x2).2;
        }
    }
    let g = 0.5 * (lo + hi);
    let (a, b, sse) = solve(g);
    let params = TradeoffParams::new(n_anchor, a, b, g)
        .map_err(|e| Error::Fit(format!("fitted constants out of range: {e}")))?;
    Ok(FitReport {
        params,
        rms_residual: (sse / xs.len() as f64).sqrt(),
    })
}

/// Constants for an arbitrary blocklength: the anchors at `n = 64` and
/// `n = 128`, linear interpolation in `log2 n` between them, and clamping
/// outside.
pub fn params_for_blocklength(n: u64) -> TradeoffParams {
    let t = ((n.max(1) as f64).log2() - 6.0).clamp(0.0, 1.0);
    let lerp = |lo: f64, hi: f64| lo + (hi - lo) * t;
    TradeoffParams {
        n_anchor: n,
        a: lerp(N64.a, N128.a),
        b: lerp(N64.b, N128.b),
        gamma_fit: lerp(N64.gamma_fit, N128.gamma_fit),
    }
}
