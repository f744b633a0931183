use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A finite set of positive integers closed under taking divisors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncationSet {
    elems: Vec<u64>,
}

fn divisors(n: u64) -> impl Iterator<Item = u64> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

impl TruncationSet {
    pub fn new<I: IntoIterator<Item = u64>>(elems: I) -> Result<Self> {
        let set: BTreeSet<u64> = elems.into_iter().collect();
        if set.contains(&0) {
            return Err(Error::InvalidTruncation(
                "0 is not a positive integer".into(),
            ));
        }
        for &n in &set {
            if let Some(d) = divisors(n).find(|d| !set.contains(d)) {
                return Err(Error::InvalidTruncation(format!(
                    "{d} divides {n} but is missing from {{{}}}",
                    set.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
                )));
            }
        }
        Ok(TruncationSet {
            elems: set.into_iter().collect(),
        })
    }

    /// Smallest divisor-closed set containing `elems`.
    pub fn closure<I: IntoIterator<Item = u64>>(elems: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for n in elems {
            if n == 0 {
                return Err(Error::InvalidTruncation(
                    "0 is not a positive integer".into(),
                ));
            }
            set.extend(divisors(n));
        }
        Ok(TruncationSet {
            elems: set.into_iter().collect(),
        })
    }

    pub fn divisors_of(n: u64) -> Self {
        TruncationSet {
            elems: divisors(n).collect(),
        }
    }

    /// `{1, p, ..., p^(len-1)}`.
    pub fn p_typical(p: u64, len: u32) -> Self {
        TruncationSet {
            elems: (0..len).map(|i| p.pow(i)).collect(),
        }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.elems.binary_search(&n).is_ok()
    }

    pub fn index_of(&self, n: u64) -> Option<usize> {
        self.elems.binary_search(&n).ok()
    }

    /// `S/n = {m : nm ∈ S}`.
    pub fn quotient(&self, n: u64) -> Self {
        TruncationSet {
            elems: self
                .elems
                .iter()
                .filter(|&&m| m % n == 0)
                .map(|m| m / n)
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &TruncationSet) -> bool {
        self.elems.iter().all(|&n| other.contains(n))
    }

    /// Elements of `self` dividing `n`, in increasing order.
    pub fn divisors_in(&self, n: u64) -> impl Iterator<Item = u64> + '_ {
        self.elems
            .iter()
            .copied()
            .filter(move |d| n.is_multiple_of(*d))
    }
}

impl fmt::Display for TruncationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.elems.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}
