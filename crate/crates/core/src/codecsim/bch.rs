//! Narrow-sense primitive binary BCH codes over GF(2^m), extended by one
//! overall parity bit.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::code::{CodeSpec, Construction};
use super::gf2::{self, Row};

/// Primitive polynomials, indexed by `m`, with the `x^m` term included.
fn primitive_poly(m: u32) -> Option<u32> {
    match m {
        2 => Some(0b111),
        3 => Some(0b1011),
        4 => Some(0b1_0011),
        5 => Some(0b10_0101),
        6 => Some(0b100_0011),
        7 => Some(0b1000_1001),
        _ => None,
    }
}

/// Exp/log tables for GF(2^m).
struct Field {
    order: usize,
    exp: Vec<u8>,
    log: Vec<usize>,
}

impl Field {
    fn new(m: u32) -> Option<Self> {
        let poly = primitive_poly(m)?;
        let order = (1usize << m) - 1;
        let mut exp = vec![0u8; order];
        let mut log = vec![0usize; order + 1];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x as u8;
            log[x as usize] = i;
            x <<= 1;
            if x & (1 << m) != 0 {
                x ^= poly;
            }
        }
        Some(Self { order, exp, log })
    }

    fn mul(&self, a: u8, b: u8) -> u8 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) % self.order]
    }

    fn alpha_pow(&self, i: usize) -> u8 {
        self.exp[i % self.order]
    }

    fn coset(&self, i: usize) -> BTreeSet<usize> {
        let mut set = BTreeSet::new();
        let mut j = i % self.order;
        while set.insert(j) {
            j = (2 * j) % self.order;
        }
        set
    }

    /// `Π_{j in coset} (x - α^j)`; the coefficients land in GF(2).
    fn minimal_poly(&self, coset: &BTreeSet<usize>) -> Row {
        let mut coeffs: Vec<u8> = vec![1];
        for &j in coset {
            let root = self.alpha_pow(j);
            let mut next = vec![0u8; coeffs.len() + 1];
            for (d, &c) in coeffs.iter().enumerate() {
                next[d + 1] ^= c;
                next[d] ^= self.mul(c, root);
            }
            coeffs = next;
        }
        coeffs.iter().enumerate().fold(0, |acc, (d, &c)| {
            debug_assert!(c <= 1, "minimal polynomial must be binary");
            acc | ((c as Row) << d)
        })
    }
}

fn poly_mul(a: Row, b: Row) -> Row {
    let mut out = 0;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            out ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    out
}

fn degree(p: Row) -> usize {
    127 - p.leading_zeros() as usize
}

/// Generator polynomial of the length-`2^m - 1` code of dimension `k`, and
/// its BCH design distance (one more than the run of consecutive roots).
fn bch_generator(m: u32, k: usize) -> Result<(Row, usize)> {
    let field = Field::new(m).ok_or_else(|| {
        Error::Construction(format!("GF(2^{m}) is not supported (m must be 2..=7)"))
    })?;
    let len = field.order;
    let target_deg = len
        .checked_sub(k)
        .ok_or_else(|| Error::Construction(format!("k = {k} exceeds {len}")))?;
    let mut roots = BTreeSet::new();
    let mut g: Row = 1;
    let mut t = 0;
    loop {
        if degree(g) == target_deg {
            break;
        }
        if degree(g) > target_deg || t >= len {
            return Err(Error::Construction(format!(
                "no narrow-sense BCH code of length {len} has dimension {k}"
            )));
        }
        t += 1;
        for i in [2 * t - 1, 2 * t] {
            if i % len == 0 || roots.contains(&(i % len)) {
                continue;
            }
            let coset = field.coset(i);
            g = poly_mul(g, field.minimal_poly(&coset));
            roots.extend(coset);
        }
    }
    let design = (1..len).find(|i| !roots.contains(i)).unwrap_or(len);
    Ok((g, design))
}

/// Extended BCH code of length `n = 2^m` and dimension `k`.
///
/// The generator is returned in systematic form `[I_k | P]`, so the message
/// occupies the first `k` positions and the overall parity bit is the last.
pub fn build_ebch(n: usize, k: usize) -> Result<CodeSpec> {
    if !n.is_power_of_two() || !(4..=gf2::MAX_LEN).contains(&n) {
        return Err(Error::Construction(format!(
            "eBCH length must be a power of two in 4..=128, got {n}"
        )));
    }
    if k == 0 || k >= n {
        return Err(Error::Construction(format!("need 1 <= k < n, got k = {k}")));
    }
    let m = n.trailing_zeros();
    let (g, design) = bch_generator(m, k)?;
    let parity_pos = n - 1;
    let mut rows: Vec<Row> = (0..k)
        .map(|i| {
            let r = g << i;
            r | (((r.count_ones() & 1) as Row) << parity_pos)
        })
        .collect();
    gf2::reduce_in_order(&mut rows, 0..n);
    CodeSpec::new(n, rows, (design + 1) as u32, Construction::Ebch)
}
