//! Configuration types shared by the exact engine, the orderings module and the sampler.
//!
//! Vertex and edge states are packed into a `u64` bitmask with index 0 in the
//! least significant bit. Ordering of `BitConfig` values is the enumeration
//! order (bitmask as an integer), which is also the row order of exported tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `{0,1}^n` for `n <= 64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BitConfig {
    mask: u64,
    len: u8,
}

/// Open/closed states of vertices (ψ).
pub type VertexConfig = BitConfig;
/// Open/closed states of edges (ω).
pub type EdgeConfig = BitConfig;

impl BitConfig {
    pub const MAX_LEN: usize = 64;

    pub fn new(mask: u64, len: usize) -> Self {
        assert!(len <= Self::MAX_LEN, "bit configuration longer than 64");
        assert!(
            len == 64 || mask >> len == 0,
            "mask {mask:#x} has bits beyond length {len}"
        );
        BitConfig {
            mask,
            len: len as u8,
        }
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(0, len)
    }

    pub fn ones(len: usize) -> Self {
        Self::new(full_mask(len), len)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mask = bits
            .iter()
            .enumerate()
            .fold(0u64, |m, (i, &b)| if b { m | (1 << i) } else { m });
        Self::new(mask, bits.len())
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        self.mask >> i & 1 == 1
    }

    /// Copy with coordinate `i` set to `value`.
    #[inline]
    pub fn with(&self, i: usize, value: bool) -> Self {
        debug_assert!(i < self.len());
        let mask = if value {
            self.mask | (1 << i)
        } else {
            self.mask & !(1 << i)
        };
        BitConfig { mask, len: self.len }
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Coordinatewise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.len == other.len && self.mask & !other.mask == 0
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// Bitstring with index 0 first, e.g. `"101"`.
    pub fn label(&self) -> String {
        (0..self.len())
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn parse(label: &str) -> Result<Self> {
        if label.len() > Self::MAX_LEN {
            return Err(Error::invalid(format!("bitstring too long: {label}")));
        }
        let bits = label
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::invalid(format!("bad bitstring {label:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_bools(&bits))
    }

    /// All `2^len` configurations in enumeration order.
    pub fn all(len: usize) -> impl Iterator<Item = BitConfig> {
        assert!(len < 64, "cannot enumerate 2^64 configurations");
        (0..1u64 << len).map(move |m| BitConfig::new(m, len))
    }
}

#[inline]
pub(crate) fn full_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// Iterates all submasks of `mask` in increasing integer order.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    // Enumerates by counting in the compressed index space of the set bits.
    let bits: Vec<u32> = (0..64).filter(|&i| mask >> i & 1 == 1).collect();
    let n = bits.len();
    assert!(n < 64);
    (0..1u64 << n).map(move |c| {
        bits.iter()
            .enumerate()
            .fold(0u64, |acc, (j, &b)| acc | ((c >> j & 1) << b))
    })
}

/// A compatible vertex/edge pair θ = (ψ, ω).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ThetaConfig {
    pub psi: VertexConfig,
    pub omega: EdgeConfig,
}

/// A BCP spin assignment σ ∈ {0,1,…,q}^V. Spin 0 is the diluted state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpinConfig(pub Vec<u8>);

impl SpinConfig {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn spins(&self) -> &[u8] {
        &self.0
    }

    /// ψ_x = 1 − δ(σ_x, 0).
    pub fn open_vertices(&self) -> VertexConfig {
        BitConfig::from_bools(&self.0.iter().map(|&s| s != 0).collect::<Vec<_>>())
    }

    pub fn label(&self) -> String {
        if self.0.iter().all(|&s| s < 10) {
            self.0.iter().map(|s| char::from(b'0' + s)).collect()
        } else {
            self.0
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// All `(q+1)^n` spin vectors, first coordinate varying slowest.
    pub fn all(n: usize, q: u8) -> impl Iterator<Item = SpinConfig> {
        let base = q as u64 + 1;
        let count = base.checked_pow(n as u32).expect("spin space too large");
        (0..count).map(move |mut c| {
            let mut s = vec![0u8; n];
            for slot in s.iter_mut().rev() {
                *slot = (c % base) as u8;
                c /= base;
            }
            SpinConfig(s)
        })
    }
}

/// A point of the coupling space (σ, ψ, ω).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoupledConfig {
    pub sigma: SpinConfig,
    pub theta: ThetaConfig,
}

/// Column names and string labels used when a table row is written out.
pub trait Labeled {
    fn columns() -> Vec<&'static str>;
    fn labels(&self) -> Vec<String>;
}

impl Labeled for BitConfig {
    fn columns() -> Vec<&'static str> {
        vec!["config"]
    }
    fn labels(&self) -> Vec<String> {
        vec![self.label()]
    }
}

impl Labeled for ThetaConfig {
    fn columns() -> Vec<&'static str> {
        vec!["psi", "omega"]
    }
    fn labels(&self) -> Vec<String> {
        vec![self.psi.label(), self.omega.label()]
    }
}

impl Labeled for SpinConfig {
    fn columns() -> Vec<&'static str> {
        vec!["sigma"]
    }
    fn labels(&self) -> Vec<String> {
        vec![self.label()]
    }
}

impl Labeled for CoupledConfig {
    fn columns() -> Vec<&'static str> {
        vec!["sigma", "psi", "omega"]
    }
    fn labels(&self) -> Vec<String> {
        vec![
            self.sigma.label(),
            self.theta.psi.label(),
            self.theta.omega.label(),
        ]
    }
}
