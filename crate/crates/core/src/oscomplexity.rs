//! Complexity and latency accounting for ordered-statistics decoding.
//!
//! The per-information-bit operation count of an order-`s` decoder is
//! `k²/8 + (n/2) Σ_{i<=s} C(k, i)`: Gauss–Jordan reduction of the permuted
//! generator plus one re-encode/compare per tested error pattern. The
//! binomial sum is bounded by `2^{k h(s/k)}` whenever `s <= k/2`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hamming-weight cap on the error patterns an OSD tries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OsOrder(pub u32);

impl OsOrder {
    pub fn get(self) -> u32 {
        self.0
    }

    pub fn checked_for(self, k: u32) -> Result<Self> {
        if self.0 > k {
            return Err(Error::Precondition(format!(
                "order {} exceeds k = {k}",
                self.0
            )));
        }
        Ok(self)
    }
}

/// Deadline `d_m`, symbol time `T_s` and binary-operation time `T_b`, all in seconds.
///
/// `binop_time = 0` models a receiver with unlimited computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatencyBudget {
    pub deadline: f64,
    pub symbol_time: f64,
    pub binop_time: f64,
}

impl LatencyBudget {
    pub fn new(deadline: f64, symbol_time: f64, binop_time: f64) -> Result<Self> {
        if !(deadline > 0.0 && symbol_time > 0.0 && binop_time >= 0.0)
            || !(deadline.is_finite() || deadline == f64::INFINITY)
            || !binop_time.is_finite()
        {
            return Err(Error::Domain(format!(
                "invalid latency budget d_m = {deadline}, T_s = {symbol_time}, T_b = {binop_time}"
            )));
        }
        Ok(Self {
            deadline,
            symbol_time,
            binop_time,
        })
    }

    /// Time left for decoding once `n` symbols are on the air.
    pub fn decoding_slack(&self, n: u64) -> f64 {
        self.deadline - n as f64 * self.symbol_time
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DominantTerm {
    GaussJordan,
    PatternSearch,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexityReport {
    pub c_exact: f64,
    /// `None` when `s > k/2`, where the entropy bound is not established.
    pub c_bound: Option<f64>,
    pub dominant_term: DominantTerm,
}

fn check_code(n: u32, k: u32, s: OsOrder) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::Precondition(format!(
            "need 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    s.checked_for(k)?;
    Ok(())
}

/// Exact `|E_s| = Σ_{i=0}^{s} C(k, i)`.
pub fn pattern_count(k: u32, s: u32) -> BigUint {
    let mut term = BigUint::one();
    let mut sum = BigUint::one();
    for i in 1..=s.min(k) {
        term = term * BigUint::from(k - i + 1) / BigUint::from(i);
        sum += &term;
    }
    sum
}

fn big_to_f64(v: &BigUint) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

/// `min(ceil(d_min/4 - 1), k)`, floored at zero.
pub fn recommended_order(d_min: u32, k: u32) -> OsOrder {
    let ceil_quarter = d_min.div_ceil(4);
    OsOrder(ceil_quarter.saturating_sub(1).min(k))
}

pub fn binary_entropy(q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::Domain(format!(
            "binary entropy needs q in [0, 1], got {q}"
        )));
    }
    if q == 0.0 || q == 1.0 {
        return Ok(0.0);
    }
    Ok(-q * q.log2() - (1.0 - q) * (1.0 - q).log2())
}

/// `(4q(1-q))^{3/4}`.
pub fn entropy_approx(q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::Domain(format!(
            "entropy approximation needs q in [0, 1], got {q}"
        )));
    }
    Ok((4.0 * q * (1.0 - q)).powf(0.75))
}

pub fn complexity_exact(n: u32, k: u32, s: OsOrder) -> Result<f64> {
    check_code(n, k, s)?;
    let patterns = big_to_f64(&pattern_count(k, s.0));
    Ok(gauss_jordan_term(k) + 0.5 * n as f64 * patterns)
}

fn gauss_jordan_term(k: u32) -> f64 {
    let k = k as f64;
    k * k / 8.0
}

pub fn complexity_bound(n: u32, k: u32, s: OsOrder) -> Result<f64> {
    check_code(n, k, s)?;
    if 2 * s.0 > k {
        return Err(Error::Domain(format!(
            "entropy bound needs s <= k/2, got s = {}, k = {k}",
            s.0
        )));
    }
    let h = binary_entropy(s.0 as f64 / k as f64)?;
    Ok(gauss_jordan_term(k) + 0.5 * n as f64 * (k as f64 * h).exp2())
}

pub fn complexity_report(n: u32, k: u32, s: OsOrder) -> Result<ComplexityReport> {
    check_code(n, k, s)?;
    let search = 0.5 * n as f64 * big_to_f64(&pattern_count(k, s.0));
    let gj = gauss_jordan_term(k);
    let c_bound = if 2 * s.0 <= k {
        Some(complexity_bound(n, k, s)?)
    } else {
        None
    };
    Ok(ComplexityReport {
        c_exact: gj + search,
        c_bound,
        dominant_term: if gj >= search {
            DominantTerm::GaussJordan
        } else {
            DominantTerm::PatternSearch
        },
    })
}

/// Whether `Σ_{i<=s} C(k,i) <= 2^{k h(s/k)}`.
///
/// The comparison is done in the log domain so that large `k` cannot
/// overflow the floating-point side.
pub fn binomial_sum_bound_check(k: u32, s: u32) -> Result<bool> {
    if k == 0 || 2 * s > k {
        return Err(Error::Domain(format!(
            "need k >= 1 and s <= k/2, got k = {k}, s = {s}"
        )));
    }
    let sum = pattern_count(k, s);
    let exponent = k as f64 * binary_entropy(s as f64 / k as f64)?;
    let log2_sum = log2_big(&sum);
    Ok(log2_sum <= exponent + 1e-12 * exponent.max(1.0))
}

fn log2_big(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return big_to_f64(v).log2();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().expect("64-bit mantissa");
    top.log2() + shift as f64
}

/// `n T_s + k c T_b`.
pub fn total_latency(n: u64, k: u64, c: f64, budget: &LatencyBudget) -> f64 {
    let decoding = if budget.binop_time == 0.0 {
        0.0
    } else {
        k as f64 * c * budget.binop_time
    };
    n as f64 * budget.symbol_time + decoding
}

/// `(8 d_m - 8 n T_s - k³ T_b) / (4 n k T_b)`; `+inf` when `T_b = 0`.
pub fn latency_gamma(n: u32, k: u32, budget: &LatencyBudget) -> Result<f64> {
    if budget.decoding_slack(n as u64) <= 0.0 {
        return Err(Error::Infeasible(format!(
            "transmission of {n} symbols alone exceeds the deadline"
        )));
    }
    if budget.binop_time == 0.0 {
        return Ok(f64::INFINITY);
    }
    let (n, k) = (n as f64, k as f64);
    let num = 8.0 * budget.deadline - 8.0 * n * budget.symbol_time - k.powi(3) * budget.binop_time;
    let gamma = num / (4.0 * n * k * budget.binop_time);
    if gamma <= 0.0 {
        return Err(Error::Infeasible(format!(
            "gamma = {gamma}: Gauss-Jordan time alone exceeds the deadline"
        )));
    }
    Ok(gamma)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxOrder {
    pub gamma: f64,
    /// Closed-form estimate via the entropy approximation; `None` when
    /// `(log2 gamma / k)^{4/3} > 1`.
    pub s_approx: Option<f64>,
    /// Largest order whose exact complexity meets the deadline.
    pub s_star: OsOrder,
}

pub fn approx_max_order(k: u32, gamma: f64) -> Option<f64> {
    let ratio = gamma.log2() / k as f64;
    if ratio <= 0.0 {
        return Some(0.0);
    }
    let p = ratio.powf(4.0 / 3.0);
    if !(p <= 1.0) {
        return None;
    }
    Some(0.5 * k as f64 * (1.0 - (1.0 - p).sqrt()))
}

/// Largest integer order meeting `d_m` under the exact operation count.
///
/// The search is seeded at `floor(s_approx)` and walks down until the
/// deadline holds, then up while the next order still fits.
pub fn max_order(n: u32, k: u32, budget: &LatencyBudget) -> Result<MaxOrder> {
    check_code(n, k, OsOrder(0))?;
    let gamma = latency_gamma(n, k, budget)?;
    let s_approx = approx_max_order(k, gamma);
    let fits = |s: u32| -> bool {
        let c = complexity_exact(n, k, OsOrder(s)).expect("s <= k");
        total_latency(n as u64, k as u64, c, budget) <= budget.deadline
    };
    if !fits(0) {
        return Err(Error::Infeasible(format!(
            "order 0 already misses the deadline for n = {n}, k = {k}"
        )));
    }
    let mut s = s_approx.map_or(0, |a| (a.floor() as u32).min(k));
    while s > 0 && !fits(s) {
        s -= 1;
    }
    if budget.binop_time == 0.0 {
        s = k;
    }
    while s < k && fits(s + 1) {
        s += 1;
    }
    Ok(MaxOrder {
        gamma,
        s_approx,
        s_star: OsOrder(s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom_f64(k: u32, i: u32) -> f64 {
        (0..i).fold(1.0, |acc, j| acc * (k - j) as f64 / (j + 1) as f64)
    }

    #[test]
    fn recommended_order_examples() {
        assert_eq!(recommended_order(22, 64), OsOrder(5));
        assert_eq!(recommended_order(4, 16), OsOrder(0));
        assert_eq!(recommended_order(200, 10), OsOrder(10));
        assert_eq!(recommended_order(1, 5), OsOrder(0));
        assert_eq!(recommended_order(12, 36), OsOrder(2));
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.3).unwrap() - 0.881_290_899_230_308).abs() < 1e-12);
        assert!((binary_entropy(0.2).unwrap() - binary_entropy(0.8).unwrap()).abs() < 1e-15);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());

        assert_eq!(entropy_approx(0.5).unwrap(), 1.0);
        assert_eq!(entropy_approx(0.0).unwrap(), 0.0);
        assert!((entropy_approx(0.3).unwrap() - 0.877_423).abs() < 1e-5);
        let worst = (0..=10_000)
            .map(|i| i as f64 / 10_000.0)
            .map(|q| (entropy_approx(q).unwrap() - binary_entropy(q).unwrap()).abs())
            .fold(0.0, f64::max);
        assert!(worst < 0.015, "max deviation {worst}");
    }

    #[test]
    fn complexity_exact_examples() {
        assert_eq!(complexity_exact(128, 64, OsOrder(0)).unwrap(), 576.0);
        assert_eq!(complexity_exact(128, 64, OsOrder(1)).unwrap(), 4672.0);
        assert_eq!(complexity_exact(128, 64, OsOrder(2)).unwrap(), 133_696.0);
        assert_eq!(complexity_exact(20, 10, OsOrder(3)).unwrap(), 1772.5);
        assert!(complexity_exact(10, 11, OsOrder(0)).is_err());
        assert!(complexity_exact(10, 5, OsOrder(6)).is_err());
        // Full sum at k = 128 is 2^128, which does not fit in a u128.
        let full = complexity_exact(128, 128, OsOrder(128)).unwrap();
        assert_eq!(full, 2048.0 + 64.0 * 2f64.powi(128));
    }

    #[test]
    fn pattern_count_matches_float_binomials() {
        for k in [1, 7, 36, 64] {
            for s in 0..=k.min(8) {
                let expect: f64 = (0..=s).map(|i| binom_f64(k, i)).sum();
                assert_eq!(pattern_count(k, s).to_f64().unwrap(), expect.round());
            }
        }
    }

    #[test]
    fn complexity_bound_examples() {
        let b = complexity_bound(20, 10, OsOrder(3)).unwrap();
        assert!((b - 4_509.780_292).abs() < 1e-3, "{b}");
        let b = complexity_bound(128, 64, OsOrder(2)).unwrap();
        assert!((b - 469_707.209).abs() < 1e-2, "{b}");
        assert!(b >= 133_696.0);
        assert_eq!(
            complexity_bound(77, 30, OsOrder(0)).unwrap(),
            complexity_exact(77, 30, OsOrder(0)).unwrap()
        );
        assert!(matches!(
            complexity_bound(20, 10, OsOrder(6)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn binomial_bound_examples() {
        assert!(binomial_sum_bound_check(10, 3).unwrap());
        assert!(binomial_sum_bound_check(1, 0).unwrap());
        assert!(binomial_sum_bound_check(2000, 1000).unwrap());
        assert!(binomial_sum_bound_check(10, 6).is_err());
    }

    #[test]
    fn dominant_term_on_reference_codes() {
        for (n, k) in [(64, 36), (128, 64)] {
            let r0 = complexity_report(n, k, OsOrder(0)).unwrap();
            assert_eq!(r0.dominant_term, DominantTerm::GaussJordan);
            for s in 1..=5 {
                let r = complexity_report(n, k, OsOrder(s)).unwrap();
                assert_eq!(r.dominant_term, DominantTerm::PatternSearch);
                assert!(r.c_exact <= r.c_bound.unwrap());
            }
        }
        assert_eq!(complexity_report(16, 16, OsOrder(9)).unwrap().c_bound, None);
    }

    /// The relative gap of the entropy bound is not monotone over the whole
    /// range: it grows until roughly s = k/5 and shrinks from there to k/2.
    #[test]
    fn tightness_improves_past_the_peak() {
        for k in [16u32, 32, 64] {
            for n in [k, 2 * k, 4 * k] {
                let gaps: Vec<f64> = (1..=k / 2)
                    .map(|s| {
                        let exact = complexity_exact(n, k, OsOrder(s)).unwrap();
                        let bound = complexity_bound(n, k, OsOrder(s)).unwrap();
                        (bound - exact) / exact
                    })
                    .collect();
                let peak = gaps
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.total_cmp(b.1))
                    .unwrap()
                    .0;
                assert!(
                    gaps[..=peak].windows(2).all(|w| w[1] >= w[0]),
                    "k={k} n={n}"
                );
                assert!(
                    gaps[peak..].windows(2).all(|w| w[1] <= w[0] + 1e-12),
                    "k={k} n={n}"
                );
                assert!(gaps[gaps.len() - 1] < gaps[0]);
            }
        }
    }

    fn us_budget(dm: f64) -> LatencyBudget {
        LatencyBudget::new(dm, 1e-6, 1e-9).unwrap()
    }

    #[test]
    fn total_latency_examples() {
        let b = us_budget(1e-3);
        let t = total_latency(128, 64, 4672.0, &b);
        assert!((t - (128e-6 + 64.0 * 4672.0 * 1e-9)).abs() < 1e-15);
        assert!((t - 4.27e-4).abs() < 1e-6);
        assert_eq!(total_latency(128, 64, 0.0, &b), 128e-6);
        let free = LatencyBudget::new(1e-3, 1e-6, 0.0).unwrap();
        assert_eq!(total_latency(128, 64, 1e30, &free), 128e-6);
    }

    #[test]
    fn gamma_examples() {
        let g = latency_gamma(128, 64, &us_budget(1e-3)).unwrap();
        assert!((g - 204.8906).abs() < 1e-3, "{g}");
        let edge = 128e-6 + 64f64.powi(3) * 1e-9 / 8.0;
        let g = latency_gamma(128, 64, &us_budget(edge)).unwrap_err();
        assert!(matches!(g, Error::Infeasible(_)));
        assert!(latency_gamma(128, 64, &us_budget(100e-6)).is_err());
    }

    #[test]
    fn gamma_condition_matches_bound_latency() {
        // 2^{k h(s/k)} <= gamma  <=>  latency with the bounded complexity <= d_m
        let mut state = 0x2545_f491_4f6c_dd1d_u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut checked = 0;
        for _ in 0..5000 {
            let k = 2 + (next() % 80) as u32;
            let n = k + (next() % 120) as u32;
            let s = (next() % (k as u64 / 2 + 1)) as u32;
            let dm = (n as f64) * 1e-6 * (1.0 + (next() % 1000) as f64 / 50.0);
            let b = us_budget(dm);
            let Ok(gamma) = latency_gamma(n, k, &b) else {
                continue;
            };
            let lhs = (k as f64 * binary_entropy(s as f64 / k as f64).unwrap()).exp2();
            let t = total_latency(
                n as u64,
                k as u64,
                complexity_bound(n, k, OsOrder(s)).unwrap(),
                &b,
            );
            let margin = (lhs - gamma).abs() / gamma;
            if margin > 1e-9 {
                assert_eq!(lhs <= gamma, t <= dm, "n={n} k={k} s={s}");
                checked += 1;
            }
        }
        assert!(checked > 1000);
    }

    #[test]
    fn max_order_example() {
        let b = us_budget(1e-3);
        let m = max_order(128, 64, &b).unwrap();
        assert!(
            (m.s_approx.unwrap() - 0.9612).abs() < 1e-3,
            "{:?}",
            m.s_approx
        );
        // exhaustive oracle
        let oracle = (0..=64)
            .filter(|&s| {
                let c = 64f64.powi(2) / 8.0 + 64.0 * (0..=s).map(|i| binom_f64(64, i)).sum::<f64>();
                128e-6 + 64.0 * c * 1e-9 <= 1e-3
            })
            .max()
            .unwrap();
        assert_eq!(oracle, 1);
        assert_eq!(m.s_star, OsOrder(oracle));
        let t2 = total_latency(128, 64, complexity_exact(128, 64, OsOrder(2)).unwrap(), &b);
        assert!((t2 - 8.685e-3).abs() < 1e-5);
    }

    #[test]
    fn max_order_unconstrained() {
        let m = max_order(16, 8, &us_budget(1.0)).unwrap();
        assert_eq!(m.s_star, OsOrder(8));
        let free = LatencyBudget::new(1e-3, 1e-6, 0.0).unwrap();
        let m = max_order(128, 64, &free).unwrap();
        assert_eq!(m.s_star, OsOrder(64));
        assert_eq!(m.s_approx, None);
    }
}
