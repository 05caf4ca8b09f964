//! Order-`s` ordered-statistics decoding.
//!
//! Positions are ranked by `|llr|`, the generator is reduced to a
//! systematic form on the `k` most reliable independent positions, and
//! every flip pattern of weight `<= s` on those positions is re-encoded and
//! scored. The score is `Σ |llr_i|` over positions where the candidate
//! disagrees with the hard decisions; it differs from the squared
//! Euclidean distance to `y` by a positive scale and an offset that does
//! not depend on the candidate, so both rank candidates identically.

use crate::oscomplexity::OsOrder;

use super::channel::ReceivedWord;
use super::code::CodeSpec;
use super::gf2::{self, Row};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OsdOutput {
    pub message: Row,
    pub codeword: Row,
    pub score: f64,
    /// Number of error patterns re-encoded and scored.
    pub patterns: u64,
    /// Row additions spent in Gauss–Jordan reduction.
    pub row_ops: u64,
}

/// Decoder with reusable scratch space.
#[derive(Debug, Default, Clone)]
pub struct OsdDecoder {
    order: Vec<usize>,
    rows: Vec<Row>,
    reliability: Vec<f64>,
    combo: Vec<usize>,
}

impl OsdDecoder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Decodes `rx`. Ties between equal scores keep the first candidate in
    /// enumeration order: weight ascending, lexicographic within a weight.
    ///
    /// # Panics
    ///
    /// If `s > k` or `rx` does not have `n` samples.
    pub fn decode(&mut self, code: &CodeSpec, rx: &ReceivedWord, s: OsOrder) -> OsdOutput {
        let (n, k) = (code.n(), code.k());
        let s = s.get() as usize;
        assert!(s <= k, "order {s} exceeds k = {k}");
        assert_eq!(rx.len(), n, "received word length");

        self.reliability.clear();
        self.reliability.extend(rx.llr.iter().map(|l| l.abs()));
        self.order.clear();
        self.order.extend(0..n);
        let rel = &self.reliability;
        self.order
            .sort_by(|&a, &b| rel[b].total_cmp(&rel[a]).then(a.cmp(&b)));

        self.rows.clear();
        self.rows.extend_from_slice(code.generator());
        let (pivots, row_ops) = gf2::reduce_in_order(&mut self.rows, self.order.iter().copied());
        debug_assert_eq!(pivots.len(), k);

        let hard = rx.hard_decision();
        let base = pivots
            .iter()
            .zip(&self.rows)
            .filter(|(&col, _)| gf2::bit(hard, col))
            .fold(0, |acc, (_, &row)| acc ^ row);

        let mut best = base;
        let mut best_score = score(base ^ hard, rel, f64::INFINITY);
        let mut patterns = 1u64;

        for weight in 1..=s {
            self.combo.clear();
            self.combo.extend(0..weight);
            loop {
                let cand = self.combo.iter().fold(base, |acc, &j| acc ^ self.rows[j]);
                patterns += 1;
                let sc = score(cand ^ hard, rel, best_score);
                if sc < best_score {
                    best_score = sc;
                    best = cand;
                }
                if !next_combination(&mut self.combo, k) {
                    break;
                }
            }
        }

        OsdOutput {
            message: code.message_of(best),
            codeword: best,
            score: best_score,
            patterns,
            row_ops,
        }
    }
}

/// Sum of reliabilities over the set bits of `disagree`, abandoned once it
/// reaches `limit`.
#[inline]
fn score(mut disagree: Row, reliability: &[f64], limit: f64) -> f64 {
    let mut acc = 0.0;
    while disagree != 0 {
        let i = disagree.trailing_zeros() as usize;
        acc += reliability[i];
        if acc >= limit {
            return acc;
        }
        disagree &= disagree - 1;
    }
    acc
}

/// Advances `combo` (strictly increasing indices below `k`) to the next
/// combination in lexicographic order.
fn next_combination(combo: &mut [usize], k: usize) -> bool {
    let w = combo.len();
    let Some(i) = (0..w).rev().find(|&i| combo[i] < k - w + i) else {
        return false;
    };
    combo[i] += 1;
    for j in i + 1..w {
        combo[j] = combo[j - 1] + 1;
    }
    true
}

pub fn osd_decode(code: &CodeSpec, rx: &ReceivedWord, s: OsOrder) -> OsdOutput {
    OsdDecoder::new().decode(code, rx, s)
}
