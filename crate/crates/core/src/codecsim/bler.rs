//! Monte Carlo block-error-rate estimation and required-SNR search.
//!
//! Trials are grouped into fixed-size batches. Batch `j` draws from the
//! ChaCha stream `j` of the master seed, so its outcomes do not depend on
//! which worker runs it. Batches are evaluated a round at a time in
//! parallel and folded in batch order, stopping at the exact trial where
//! the error or trial budget is met. The estimate is therefore identical
//! for any worker count. Every SNR point of a sweep reuses the same
//! streams, so neighbouring points share messages and noise shapes.

use std::io::Write;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fblmath::{self, CodeRate, ReliabilityTarget, Snr};
use crate::oscomplexity::{pattern_count, OsOrder};

use super::channel::ReceivedWord;
use super::code::CodeSpec;
use super::gf2;
use super::osd::OsdDecoder;

pub const DEFAULT_SEED: u64 = 0x05D0_1A7E;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlerConfig {
    pub min_errors: u64,
    pub max_trials: u64,
    pub seed: u64,
    pub batch_size: u64,
}

impl Default for BlerConfig {
    fn default() -> Self {
        Self {
            min_errors: 100,
            max_trials: 1_000_000,
            seed: DEFAULT_SEED,
            batch_size: 512,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlerEstimate {
    pub errors: u64,
    pub trials: u64,
    pub bler: f64,
    /// Normal-approximation 95 % half-width; rule-of-three `3/trials` when
    /// no error was seen.
    pub ci95_halfwidth: f64,
    pub seed: u64,
    /// Set when no error occurred, so `bler = 0` only bounds the true rate.
    pub upper_bound: bool,
    /// `|E_s|` for the order used.
    pub patterns_per_decode: u64,
    /// Decodes whose evaluated pattern count differed from `|E_s|`.
    pub pattern_count_mismatches: u64,
}

#[derive(Default)]
struct BatchOutcome {
    errors: Vec<bool>,
    mismatches: Vec<bool>,
}

fn run_batch(
    code: &CodeSpec,
    s: OsOrder,
    rho: Snr,
    seed: u64,
    batch: u64,
    size: u64,
    expected: u64,
) -> BatchOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    let mut decoder = OsdDecoder::new();
    let mut noise = vec![0.0; code.n()];
    let mut out = BatchOutcome::default();
    let msg_mask = gf2::mask(code.k());
    for _ in 0..size {
        let msg = rng.random::<u128>() & msg_mask;
        for z in noise.iter_mut() {
            *z = rng.sample(StandardNormal);
        }
        let cw = code.encode_word(msg);
        let rx = ReceivedWord::from_noise(cw, &noise, rho);
        let dec = decoder.decode(code, &rx, s);
        out.errors.push(dec.codeword != cw);
        out.mismatches.push(dec.patterns != expected);
    }
    out
}

pub fn estimate_bler(
    code: &CodeSpec,
    s: OsOrder,
    rho: Snr,
    cfg: &BlerConfig,
) -> Result<BlerEstimate> {
    s.checked_for(code.k() as u32)?;
    if cfg.max_trials == 0 || cfg.batch_size == 0 {
        return Err(Error::Precondition(
            "max_trials and batch_size must be positive".into(),
        ));
    }
    let expected = pattern_count(code.k() as u32, s.get())
        .to_u64()
        .ok_or_else(|| Error::Precondition("pattern count exceeds 64 bits".into()))?;
    let round = rayon::current_num_threads().max(1) as u64;
    let (mut errors, mut trials, mut mismatches) = (0u64, 0u64, 0u64);
    let mut next_batch = 0u64;
    'rounds: loop {
        let batches: Vec<BatchOutcome> = (next_batch..next_batch + round)
            .into_par_iter()
            .map(|b| run_batch(code, s, rho, cfg.seed, b, cfg.batch_size, expected))
            .collect();
        next_batch += round;
        for batch in &batches {
            for (&err, &mis) in batch.errors.iter().zip(&batch.mismatches) {
                trials += 1;
                errors += err as u64;
                mismatches += mis as u64;
                if errors >= cfg.min_errors || trials >= cfg.max_trials {
                    break 'rounds;
                }
            }
        }
    }
    let bler = errors as f64 / trials as f64;
    let upper_bound = errors == 0;
    let ci95_halfwidth = if upper_bound {
        3.0 / trials as f64
    } else {
        1.96 * (bler * (1.0 - bler) / trials as f64).sqrt()
    };
    Ok(BlerEstimate {
        errors,
        trials,
        bler,
        ci95_halfwidth,
        seed: cfg.seed,
        upper_bound,
        patterns_per_decode: expected,
        pattern_count_mismatches: mismatches,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// First SNR of the sweep; `None` starts one dB below the
    /// normal-approximation requirement, snapped down to the grid.
    pub start_db: Option<f64>,
    /// Width of the sweep above the start.
    pub span_db: f64,
    pub grid_db: f64,
    /// A point is accepted when `bler <= eps` and `bler + ci95 <= ci_factor * eps`.
    pub ci_factor: f64,
    pub bler: BlerConfig,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            start_db: None,
            span_db: 15.0,
            grid_db: 0.25,
            ci_factor: 1.5,
            bler: BlerConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub snr_db: f64,
    pub estimate: BlerEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RequiredSnrReport {
    pub order: OsOrder,
    pub epsilon: f64,
    pub sweep: Vec<SweepPoint>,
    /// First accepted grid point; `None` when the sweep ran out.
    pub required_snr_db: Option<f64>,
    /// Crossing of `eps` by linear interpolation of `log10 bler` between the
    /// accepted point and its predecessor.
    pub interpolated_snr_db: Option<f64>,
}

impl RequiredSnrReport {
    pub fn reached(&self) -> bool {
        self.required_snr_db.is_some()
    }
}

/// Sweeps SNR upward on a grid until the estimated BLER meets `eps`.
pub fn required_snr_sim(
    code: &CodeSpec,
    s: OsOrder,
    eps: ReliabilityTarget,
    cfg: &SweepConfig,
) -> Result<RequiredSnrReport> {
    if !(cfg.grid_db > 0.0) || !(cfg.span_db >= 0.0) {
        return Err(Error::Precondition("grid step must be positive".into()));
    }
    let start = match cfg.start_db {
        Some(v) => v,
        None => {
            let na = fblmath::required_snr(code.n() as u64, eps, CodeRate::new(code.rate())?)?;
            ((na.db() - 1.0) / cfg.grid_db).floor() * cfg.grid_db
        }
    };
    let steps = (cfg.span_db / cfg.grid_db).round() as u64;
    let target = eps.epsilon();
    let mut sweep = Vec::new();
    let mut required = None;
    let mut interpolated = None;
    for i in 0..=steps {
        let snr_db = start + i as f64 * cfg.grid_db;
        let estimate = estimate_bler(code, s, Snr::from_db(snr_db)?, &cfg.bler)?;
        sweep.push(SweepPoint { snr_db, estimate });
        if estimate.bler <= target
            && estimate.bler + estimate.ci95_halfwidth <= cfg.ci_factor * target
        {
            required = Some(snr_db);
            interpolated = interpolate_crossing(&sweep, target);
            break;
        }
    }
    Ok(RequiredSnrReport {
        order: s,
        epsilon: target,
        sweep,
        required_snr_db: required,
        interpolated_snr_db: interpolated,
    })
}

fn interpolate_crossing(sweep: &[SweepPoint], target: f64) -> Option<f64> {
    let [.., prev, last] = sweep else {
        return sweep.last().map(|p| p.snr_db);
    };
    if last.estimate.errors == 0 || prev.estimate.bler <= target {
        return Some(last.snr_db);
    }
    let (y0, y1) = (prev.estimate.bler.log10(), last.estimate.bler.log10());
    if y0 == y1 {
        return Some(last.snr_db);
    }
    let t = (target.log10() - y0) / (y1 - y0);
    Some(prev.snr_db + t * (last.snr_db - prev.snr_db))
}

pub const SWEEP_CSV_HEADER: [&str; 6] = ["snr_db", "s", "trials", "errors", "bler", "ci95"];

/// Writes one row per sweep point. `required` adds a trailing
/// `required_snr_db` column (empty when the target was not reached).
pub fn write_sweep_csv<W: Write>(
    out: W,
    points: &[(f64, OsOrder, BlerEstimate)],
    required: Option<Option<f64>>,
) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let mut header: Vec<&str> = SWEEP_CSV_HEADER.to_vec();
    if required.is_some() {
        header.push("required_snr_db");
    }
    w.write_record(&header)?;
    for (snr_db, s, est) in points {
        let mut rec = vec![
            snr_db.to_string(),
            s.get().to_string(),
            est.trials.to_string(),
            est.errors.to_string(),
            est.bler.to_string(),
            est.ci95_halfwidth.to_string(),
        ];
        if let Some(req) = required {
            rec.push(req.map(|v| v.to_string()).unwrap_or_default());
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
