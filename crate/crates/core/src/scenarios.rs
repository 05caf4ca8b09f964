//! Parameter sweeps that fold decoding time into the latency budget:
//! the rate reachable under a deadline, the largest payload under a
//! deadline and power cap, and the blocklength minimizing total latency for
//! a fixed payload.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fblmath::{BiAwgn, CodeRate, ReliabilityTarget, Snr};
use crate::oscomplexity::{total_latency, LatencyBudget};
use crate::tradeoff::{
    complexity_to_penalty, params_for_blocklength, penalty_to_complexity, TradeoffParams,
};

/// Where the trade-off constants for blocklength `n` come from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamSource {
    ByBlocklength,
    Fixed(TradeoffParams),
}

impl ParamSource {
    pub fn for_n(&self, n: u64) -> TradeoffParams {
        match self {
            ParamSource::ByBlocklength => params_for_blocklength(n),
            ParamSource::Fixed(p) => *p,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub budget: LatencyBudget,
    pub eps: ReliabilityTarget,
    /// Transmit power cap `P_m` in dB; `+inf` means unlimited.
    pub power_cap_db: Option<f64>,
    pub n_min: u64,
    pub n_max: u64,
    pub k_fixed: Option<u64>,
    pub rate_step: f64,
    pub params: ParamSource,
}

impl ScenarioConfig {
    pub fn new(budget: LatencyBudget, eps: ReliabilityTarget) -> Self {
        let n_max = max_blocklength(&budget).unwrap_or(1000).max(1);
        Self {
            budget,
            eps,
            power_cap_db: None,
            n_min: 1,
            n_max,
            k_fixed: None,
            rate_step: 0.05,
            params: ParamSource::ByBlocklength,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(Error::Precondition(format!(
                "empty blocklength range {}..={}",
                self.n_min, self.n_max
            )));
        }
        if let Some(p) = self.power_cap_db {
            if p.is_nan() || p == f64::NEG_INFINITY {
                return Err(Error::Domain(format!("power cap {p} dB")));
            }
        }
        Ok(())
    }

    fn power_cap(&self) -> Result<f64> {
        self.power_cap_db
            .ok_or_else(|| Error::Precondition("this scenario needs a power cap".into()))
    }
}

/// Largest `n` with `n T_s <= d_m`.
pub fn max_blocklength(budget: &LatencyBudget) -> Option<u64> {
    let ratio = budget.deadline / budget.symbol_time;
    ratio
        .is_finite()
        .then(|| (ratio * (1.0 + 1e-12)).floor() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    MaxRate,
    MaxK,
    MinLatency,
}

/// One sweep point. Fields that do not apply to a scenario, or that could
/// not be computed because the point is infeasible, are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioRow {
    pub n: u64,
    pub k: Option<u64>,
    pub rate: Option<f64>,
    /// Normal-approximation SNR for this `(n, rate)`.
    pub na_snr_db: Option<f64>,
    /// SNR after adding the complexity penalty.
    pub snr_db: Option<f64>,
    pub delta_rho_db: Option<f64>,
    /// Allowed (max-rate, max-k) or required (min-latency) operations per bit.
    pub complexity: Option<f64>,
    pub total_latency_s: Option<f64>,
    pub feasible: bool,
}

impl ScenarioRow {
    fn blank(n: u64) -> Self {
        Self {
            n,
            k: None,
            rate: None,
            na_snr_db: None,
            snr_db: None,
            delta_rho_db: None,
            complexity: None,
            total_latency_s: None,
            feasible: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub kind: ScenarioKind,
    pub rows: Vec<ScenarioRow>,
    /// Index into `rows`; always a feasible row.
    pub optimum: Option<usize>,
}

impl ScenarioResult {
    pub fn optimum_row(&self) -> Option<&ScenarioRow> {
        self.optimum.map(|i| &self.rows[i])
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(CSV_HEADER)?;
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.rows {
            w.write_record([
                r.n.to_string(),
                r.k.map(|k| k.to_string()).unwrap_or_default(),
                opt(r.rate),
                opt(r.na_snr_db),
                opt(r.snr_db),
                opt(r.delta_rho_db),
                opt(r.complexity),
                opt(r.total_latency_s),
                (r.feasible as u8).to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn summary(&self, config: &ScenarioConfig) -> ScenarioSummary {
        ScenarioSummary {
            scenario: self.kind,
            config: *config,
            optimum: self.optimum_row().copied(),
            feasible_points: self.rows.iter().filter(|r| r.feasible).count(),
        }
    }
}

pub const CSV_HEADER: [&str; 9] = [
    "n",
    "k",
    "rate",
    "na_snr_db",
    "snr_db",
    "delta_rho_db",
    "complexity",
    "total_latency_s",
    "feasible",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSummary {
    pub scenario: ScenarioKind,
    pub config: ScenarioConfig,
    pub optimum: Option<ScenarioRow>,
    pub feasible_points: usize,
}

fn allowed_complexity(budget: &LatencyBudget, n: u64, k: u64) -> f64 {
    let slack = budget.decoding_slack(n);
    if budget.binop_time == 0.0 {
        return if slack >= 0.0 { f64::INFINITY } else { 0.0 };
    }
    slack / (k as f64 * budget.binop_time)
}

/// Achievability curve at blocklength `n` with the decoder limited by the
/// deadline: each normal-approximation point is shifted right by the
/// penalty the remaining decoding time imposes.
///
/// The optimum is the highest feasible rate (and, with a power cap, the
/// highest whose shifted SNR fits under it).
pub fn max_rate_curve(n: u64, cfg: &ScenarioConfig) -> Result<ScenarioResult> {
    cfg.validate()?;
    if cfg.budget.decoding_slack(n) <= 0.0 {
        return Err(Error::Precondition(format!(
            "n = {n} symbols do not fit in the deadline"
        )));
    }
    if !(cfg.rate_step > 0.0 && cfg.rate_step < 1.0) {
        return Err(Error::Precondition(format!(
            "rate step {} outside (0, 1)",
            cfg.rate_step
        )));
    }
    let awgn = BiAwgn::shared();
    let params = cfg.params.for_n(n);
    let steps = ((1.0 - 1e-9) / cfg.rate_step).floor() as u64;
    let rows: Vec<ScenarioRow> = (1..=steps)
        .into_par_iter()
        .map(|i| -> Result<ScenarioRow> {
            let rate = i as f64 * cfg.rate_step;
            let k = ((rate * n as f64) - 1e-9).ceil().max(1.0) as u64;
            let mut row = ScenarioRow {
                k: Some(k),
                rate: Some(rate),
                ..ScenarioRow::blank(n)
            };
            let na = awgn.required_snr(n, cfg.eps, CodeRate::new(rate)?)?.db();
            row.na_snr_db = Some(na);
            let c_allowed = allowed_complexity(&cfg.budget, n, k);
            row.complexity = Some(c_allowed);
            if c_allowed <= 1.0 {
                return Ok(row);
            }
            let delta = complexity_to_penalty(c_allowed, &params)?;
            let snr = na + delta;
            row.delta_rho_db = Some(delta);
            row.snr_db = Some(snr);
            row.total_latency_s = Some(total_latency(n, k, c_allowed.min(f64::MAX), &cfg.budget));
            row.feasible = cfg.power_cap_db.is_none_or(|cap| snr <= cap);
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let optimum = rows.iter().rposition(|r| r.feasible);
    Ok(ScenarioResult {
        kind: ScenarioKind::MaxRate,
        rows,
        optimum,
    })
}

/// Whether `k` information bits in `n` symbols meet deadline, power cap
/// and reliability together.
pub fn payload_fits(
    n: u64,
    k: u64,
    cap_db: f64,
    cfg: &ScenarioConfig,
) -> Result<Option<ScenarioRow>> {
    if k == 0 || k >= n {
        return Ok(None);
    }
    let c_allowed = allowed_complexity(&cfg.budget, n, k);
    if c_allowed <= 1.0 {
        return Ok(None);
    }
    let delta = complexity_to_penalty(c_allowed, &cfg.params.for_n(n))?;
    if !delta.is_finite() {
        return Ok(None);
    }
    let rate = k as f64 / n as f64;
    let na = BiAwgn::shared()
        .required_snr(n, cfg.eps, CodeRate::new(rate)?)?
        .db();
    if na + delta > cap_db {
        return Ok(None);
    }
    Ok(Some(ScenarioRow {
        n,
        k: Some(k),
        rate: Some(rate),
        na_snr_db: Some(na),
        snr_db: Some(na + delta),
        delta_rho_db: Some(delta),
        complexity: Some(c_allowed),
        total_latency_s: Some(total_latency(n, k, c_allowed.min(f64::MAX), &cfg.budget)),
        feasible: true,
    }))
}

fn max_k_at(n: u64, cap_db: f64, cfg: &ScenarioConfig) -> Result<ScenarioRow> {
    let awgn = BiAwgn::shared();
    if cfg.budget.binop_time == 0.0 {
        // Unlimited computation: the whole deadline goes to transmission.
        let r = awgn.normal_approx_rate(n, cfg.eps, Snr::from_db(cap_db)?);
        let k = (n as f64 * r).floor() as u64;
        let mut row = ScenarioRow {
            k: Some(k),
            rate: Some(r),
            ..ScenarioRow::blank(n)
        };
        if k >= 1 && cfg.budget.decoding_slack(n) >= 0.0 {
            row.snr_db = Some(cap_db);
            row.na_snr_db = Some(cap_db);
            row.delta_rho_db = Some(0.0);
            row.total_latency_s = Some(n as f64 * cfg.budget.symbol_time);
            row.feasible = true;
        }
        return Ok(row);
    }
    // Feasibility is monotone in k: a larger payload raises the rate and
    // shrinks the per-bit decoding allowance.
    let Some(mut best) = payload_fits(n, 1, cap_db, cfg)? else {
        return Ok(ScenarioRow {
            k: Some(0),
            ..ScenarioRow::blank(n)
        });
    };
    let (mut lo, mut hi) = (1, n - 1);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match payload_fits(n, mid, cap_db, cfg)? {
            Some(row) => {
                lo = mid;
                best = row;
            }
            None => hi = mid - 1,
        }
    }
    Ok(best)
}

/// Largest payload per blocklength under deadline, power cap and
/// reliability target; the optimum maximizes `k` over `n`.
pub fn maximize_k(cfg: &ScenarioConfig) -> Result<ScenarioResult> {
    cfg.validate()?;
    let cap = cfg.power_cap()?;
    let rows: Vec<ScenarioRow> = (cfg.n_min.max(2)..=cfg.n_max)
        .into_par_iter()
        .map(|n| max_k_at(n, cap, cfg))
        .collect::<Result<_>>()?;
    let optimum = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.feasible)
        .fold(None::<(usize, u64)>, |acc, (i, r)| {
            let k = r.k.unwrap_or(0);
            match acc {
                Some((_, best)) if best >= k => acc,
                _ => Some((i, k)),
            }
        })
        .map(|(i, _)| i);
    Ok(ScenarioResult {
        kind: ScenarioKind::MaxK,
        rows,
        optimum,
    })
}

fn latency_at(n: u64, k: u64, cap_db: f64, cfg: &ScenarioConfig) -> Result<ScenarioRow> {
    let rate = k as f64 / n as f64;
    let mut row = ScenarioRow {
        k: Some(k),
        rate: Some(rate),
        ..ScenarioRow::blank(n)
    };
    let delta = if cap_db == f64::INFINITY {
        f64::INFINITY
    } else {
        if k >= n {
            return Ok(row);
        }
        let na = BiAwgn::shared()
            .required_snr(n, cfg.eps, CodeRate::new(rate)?)?
            .db();
        row.na_snr_db = Some(na);
        cap_db - na
    };
    if delta <= 0.0 {
        return Ok(row);
    }
    let c = penalty_to_complexity(delta, &cfg.params.for_n(n))?.max(1.0);
    row.delta_rho_db = Some(delta);
    row.snr_db = Some(cap_db);
    row.complexity = Some(c);
    row.total_latency_s = Some(total_latency(n, k, c, &cfg.budget));
    row.feasible = true;
    Ok(row)
}

/// Total latency per blocklength for a fixed payload; the optimum
/// minimizes it.
pub fn minimize_latency(cfg: &ScenarioConfig) -> Result<ScenarioResult> {
    cfg.validate()?;
    let cap = cfg.power_cap()?;
    let k = cfg
        .k_fixed
        .ok_or_else(|| Error::Precondition("minimize_latency needs a fixed k".into()))?;
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let rows: Vec<ScenarioRow> = (cfg.n_min.max(k)..=cfg.n_max)
        .into_par_iter()
        .map(|n| latency_at(n, k, cap, cfg))
        .collect::<Result<_>>()?;
    let optimum = rows
        .iter()
        .enumerate()
        .filter(|(_, r)| r.feasible)
        .min_by(|a, b| {
            let la = a.1.total_latency_s.unwrap_or(f64::INFINITY);
            let lb = b.1.total_latency_s.unwrap_or(f64::INFINITY);
            la.total_cmp(&lb).then(a.0.cmp(&b.0))
        })
        .map(|(i, _)| i);
    Ok(ScenarioResult {
        kind: ScenarioKind::MinLatency,
        rows,
        optimum,
    })
}
