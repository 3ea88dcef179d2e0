//! Strict partitions with parts in `{1, …, n}`: the index set `D(n)` of the
//! Schubert bases of `OG(n)` and `LG(n)`.
//!
//! Every matrix in the crate indexes `D(n)` in the order produced by
//! [`enumerate_strict`]: by weight, and within one weight by descending
//! lexicographic order of the parts. That order is also the [`Ord`] on
//! [`StrictPartition`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank [`enumerate_strict`] will materialize.
pub const MAX_ENUMERATION_N: usize = 24;

/// A strictly decreasing tuple of positive parts. The empty partition is allowed.
/// Serializes as its display string, e.g. `"3,1"`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct StrictPartition {
    parts: Vec<u32>,
}

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if !parts.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not strictly decreasing")));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// The one-row partition `(i)`; `i = 0` gives the empty partition.
    pub fn row(i: u32) -> Self {
        if i == 0 {
            Self::empty()
        } else {
            Self { parts: vec![i] }
        }
    }

    /// `ρ_n = (n, n-1, …, 1)`.
    pub fn staircase(n: u32) -> Self {
        Self { parts: (1..=n).rev().collect() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// True when every part is at most `n`, i.e. `self ∈ D(n)`.
    pub fn fits(&self, n: usize) -> bool {
        self.parts.first().is_none_or(|&p| p as usize <= n)
    }

    pub(crate) fn to_mask(&self) -> u32 {
        self.parts.iter().fold(0, |m, &p| m | 1 << (p - 1))
    }

    pub(crate) fn from_mask(mask: u32) -> Self {
        let parts = (0..32u32).rev().filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        Self { parts }
    }
}

impl Ord for StrictPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for StrictPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Comma-separated parts; the empty partition renders as `0`.
impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for p in &self.parts {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// Accepts `"3,1"`, `"3, 1"`, and `""` or `"0"` for the empty partition.
impl FromStr for StrictPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("cannot parse {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl TryFrom<String> for StrictPartition {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<StrictPartition> for String {
    fn from(p: StrictPartition) -> String {
        p.to_string()
    }
}

fn check_rank(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(Error::OutOfRange { n, min: 1, max: MAX_ENUMERATION_N });
    }
    Ok(())
}

/// All `2^n` strict partitions with parts at most `n`, in canonical basis order.
pub fn enumerate_strict(n: usize) -> Result<Vec<StrictPartition>> {
    check_rank(n)?;
    let mut all: Vec<_> = (0u32..1 << n).map(StrictPartition::from_mask).collect();
    all.sort();
    Ok(all)
}

/// `λ̂`: the partition whose parts are `{1, …, n}` minus the parts of `λ`.
pub fn complement(lambda: &StrictPartition, n: usize) -> Result<StrictPartition> {
    check_rank(n)?;
    if !lambda.fits(n) {
        return Err(Error::InvalidPartition(format!("({lambda}) is not in D({n})")));
    }
    let full = (1u32 << n) - 1;
    Ok(StrictPartition::from_mask(full ^ lambda.to_mask()))
}

/// Parts padded with zeros to the even length `2⌊(l+1)/2⌋`.
pub fn pad_even(lambda: &StrictPartition) -> Vec<u32> {
    let mut padded = lambda.parts.clone();
    if padded.len() % 2 == 1 {
        padded.push(0);
    }
    padded
}

/// `D(n)` in canonical order together with the lookup tables every dense
/// matrix over the Schubert basis needs.
#[derive(Clone, Debug)]
pub struct Basis {
    n: usize,
    classes: Vec<StrictPartition>,
    position: Vec<usize>,
    complement: Vec<usize>,
}

impl Basis {
    pub fn new(n: usize) -> Result<Self> {
        let classes = enumerate_strict(n)?;
        let mut position = vec![0; classes.len()];
        for (i, c) in classes.iter().enumerate() {
            position[c.to_mask() as usize] = i;
        }
        let full = (1u32 << n) - 1;
        let complement = classes
            .iter()
            .map(|c| position[(full ^ c.to_mask()) as usize])
            .collect();
        Ok(Self { n, classes, position, complement })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[StrictPartition] {
        &self.classes
    }

    pub fn class(&self, index: usize) -> &StrictPartition {
        &self.classes[index]
    }

    pub fn index_of(&self, lambda: &StrictPartition) -> Result<usize> {
        if !lambda.fits(self.n) {
            return Err(Error::InvalidPartition(format!("({lambda}) is not in D({})", self.n)));
        }
        Ok(self.position[lambda.to_mask() as usize])
    }

    /// Index of `λ̂` given the index of `λ`.
    pub fn complement_index(&self, index: usize) -> usize {
        self.complement[index]
    }
}
