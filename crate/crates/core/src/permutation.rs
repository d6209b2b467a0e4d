//! Permutations of `{0, .., n-1}` stored in one-line notation.
//!
//! Internally indices are 0-based; [`Display`](std::fmt::Display) and the
//! serialized form use 1-based one-line notation, matching every external
//! format of the crate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signs::Sign;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Builds a permutation from 0-based images, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Precondition(format!(
                    "{images:?} is not a bijection on {n} elements"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation from 1-based images.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Precondition(
                "one-based permutation contains 0".into(),
            ));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// The permutation of `n` points that cycles `cycle[0] -> cycle[1] -> ..`
    /// and fixes everything else. Indices are 0-based.
    pub fn from_cycle(n: usize, cycle: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for (k, &i) in cycle.iter().enumerate() {
            if i >= n || seen[i] {
                return Err(Error::Precondition(format!(
                    "cycle {cycle:?} is not a list of distinct indices below {n}"
                )));
            }
            seen[i] = true;
            images[i] = cycle[(k + 1) % cycle.len()];
        }
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// `true` when the permutation is a product of an even number of
    /// transpositions. Computed from the cycle count: parity of `n - cycles`.
    pub fn is_even(&self) -> bool {
        let n = self.0.len();
        let mut visited = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if visited[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = self.0[i];
            }
        }
        (n - cycles).is_multiple_of(2)
    }

    pub fn sign(&self) -> Sign {
        if self.is_even() {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Sign of a permutation given by 0-based images; rejects non-bijections.
pub fn perm_sign(images: &[usize]) -> Result<Sign> {
    Permutation::from_images(images.to_vec()).map(|p| p.sign())
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_based(&v).map_err(serde::de::Error::custom)
    }
}
