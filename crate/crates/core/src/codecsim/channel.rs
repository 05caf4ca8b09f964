use rand::Rng;
use rand_distr::StandardNormal;

use crate::fblmath::Snr;

use super::code::CodeSpec;
use super::gf2::{self, Row};

/// Channel output for one codeword.
#[derive(Debug, Clone, PartialEq)]
pub struct ReceivedWord {
    pub y: Vec<f64>,
    /// `2 y / sigma²`; positive values favour bit 0.
    pub llr: Vec<f64>,
}

impl ReceivedWord {
    /// Builds the received word from a codeword and standard-normal draws,
    /// `y = (1 - 2b) + sigma z`.
    pub fn from_noise(codeword: Row, noise: &[f64], rho: Snr) -> Self {
        let var = rho.noise_variance();
        let sigma = var.sqrt();
        let y: Vec<f64> = noise
            .iter()
            .enumerate()
            .map(|(i, z)| symbol(codeword, i) + if sigma == 0.0 { 0.0 } else { sigma * z })
            .collect();
        let llr = y.iter().map(|v| 2.0 * v / var).collect();
        Self { y, llr }
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    /// Hard decisions, bit `i` set where `llr[i] < 0`.
    pub fn hard_decision(&self) -> Row {
        self.llr
            .iter()
            .enumerate()
            .filter(|(_, &l)| l < 0.0)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }

    /// Squared Euclidean distance between `y` and the BPSK image of `codeword`.
    pub fn sq_distance(&self, codeword: Row) -> f64 {
        self.y
            .iter()
            .enumerate()
            .map(|(i, v)| (v - symbol(codeword, i)).powi(2))
            .sum()
    }
}

#[inline]
fn symbol(codeword: Row, i: usize) -> f64 {
    if gf2::bit(codeword, i) {
        -1.0
    } else {
        1.0
    }
}

/// BPSK over AWGN with `sigma² = 1/rho`.
pub fn transmit<R: Rng + ?Sized>(
    code: &CodeSpec,
    codeword: Row,
    rho: Snr,
    rng: &mut R,
) -> ReceivedWord {
    let noise: Vec<f64> = (0..code.n()).map(|_| rng.sample(StandardNormal)).collect();
    ReceivedWord::from_noise(codeword, &noise, rho)
}
