use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::gf2::{self, Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Ebch,
    Raw,
}

/// A binary `(n, k, d_min)` linear block code with `n <= 128`.
#[derive(Debug, Clone)]
pub struct CodeSpec {
    n: usize,
    k: usize,
    d_min: u32,
    generator: Vec<Row>,
    construction: Construction,
    parity_check: Vec<Row>,
    /// An information set and the row transform that maps codeword bits on
    /// it back to the message.
    info_set: Vec<usize>,
    unencode: Vec<Row>,
}

impl CodeSpec {
    pub fn new(
        n: usize,
        generator: Vec<Row>,
        d_min: u32,
        construction: Construction,
    ) -> Result<Self> {
        let k = generator.len();
        if n == 0 || n > gf2::MAX_LEN {
            return Err(Error::Construction(format!(
                "blocklength {n} outside 1..=128"
            )));
        }
        if k == 0 || k > n {
            return Err(Error::Construction(format!(
                "need 1 <= k <= n, got k = {k}"
            )));
        }
        if generator.iter().any(|&r| r & !gf2::mask(n) != 0) {
            return Err(Error::Construction(
                "generator has bits beyond column n".into(),
            ));
        }
        // Reduce [G | I_k] to learn which message combination lands on each pivot.
        let mut rows = generator.clone();
        let mut transform: Vec<Row> = (0..k).map(|i| 1 << i).collect();
        let mut info_set = Vec::with_capacity(k);
        for col in 0..n {
            let r = info_set.len();
            if r == k {
                break;
            }
            let Some(found) = (r..k).find(|&i| gf2::bit(rows[i], col)) else {
                continue;
            };
            rows.swap(r, found);
            transform.swap(r, found);
            for i in 0..k {
                if i != r && gf2::bit(rows[i], col) {
                    rows[i] ^= rows[r];
                    transform[i] ^= transform[r];
                }
            }
            info_set.push(col);
        }
        if info_set.len() != k {
            return Err(Error::Construction(format!(
                "generator rank {} is below k = {k}",
                info_set.len()
            )));
        }
        let parity_check = gf2::parity_check(&generator, n);
        Ok(Self {
            n,
            k,
            d_min,
            generator,
            construction,
            parity_check,
            info_set,
            unencode: transform,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d_min(&self) -> u32 {
        self.d_min
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn generator(&self) -> &[Row] {
        &self.generator
    }

    pub fn parity_check(&self) -> &[Row] {
        &self.parity_check
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    /// `msg × G` over GF(2); bit `i` of `msg` selects row `i`.
    pub fn encode_word(&self, msg: Row) -> Row {
        let mut cw = 0;
        let mut m = msg & gf2::mask(self.k);
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            cw ^= self.generator[i];
            m &= m - 1;
        }
        cw
    }

    pub fn encode(&self, msg: &[u8]) -> Result<Vec<u8>> {
        if msg.len() != self.k {
            return Err(Error::LengthMismatch {
                expected: self.k,
                got: msg.len(),
            });
        }
        Ok(unpack(self.encode_word(pack(msg)), self.n))
    }

    pub fn is_codeword(&self, word: Row) -> bool {
        self.parity_check
            .iter()
            .all(|&h| (h & word).count_ones().is_multiple_of(2))
    }

    /// Message that encodes to `codeword`.
    pub fn message_of(&self, codeword: Row) -> Row {
        self.info_set
            .iter()
            .zip(&self.unencode)
            .filter(|(&col, _)| gf2::bit(codeword, col))
            .fold(0, |acc, (_, &t)| acc ^ t)
    }

    /// Minimum weight over all `2^k - 1` nonzero codewords.
    pub fn min_distance_exhaustive(&self) -> Result<u32> {
        if self.k > 24 {
            return Err(Error::Precondition(format!(
                "exhaustive enumeration needs k <= 24, got {}",
                self.k
            )));
        }
        Ok(self
            .weight_distribution()?
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &count)| count > 0)
            .map_or(0, |(w, _)| w as u32))
    }

    /// Number of codewords of each weight `0..=n`, by Gray-code enumeration.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        if self.k > 24 {
            return Err(Error::Precondition(format!(
                "exhaustive enumeration needs k <= 24, got {}",
                self.k
            )));
        }
        let mut dist = vec![0u64; self.n + 1];
        let mut cw: Row = 0;
        dist[0] = 1;
        for i in 1u64..(1 << self.k) {
            cw ^= self.generator[i.trailing_zeros() as usize];
            dist[cw.count_ones() as usize] += 1;
        }
        Ok(dist)
    }
}

pub fn pack(bits: &[u8]) -> Row {
    bits.iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | (((b & 1) as Row) << i))
}

pub fn unpack(word: Row, len: usize) -> Vec<u8> {
    (0..len).map(|i| gf2::bit(word, i) as u8).collect()
}
