use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// An exponent vector in Z^d; also used as a lattice site.
///
/// Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(SmallVec<[i64; 4]>);

impl Exponent {
    pub fn zero(d: usize) -> Self {
        Exponent(SmallVec::from_elem(0, d))
    }

    /// The standard basis vector e_{axis} (0-based axis).
    pub fn unit(d: usize, axis: usize) -> Self {
        let mut e = Self::zero(d);
        e.0[axis] = 1;
        e
    }

    pub fn new(coords: &[i64]) -> Self {
        Exponent(SmallVec::from_slice(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Final (time) coordinate.
    pub fn last(&self) -> i64 {
        *self.0.last().expect("exponent of dimension 0")
    }

    pub fn with_last(&self, t: i64) -> Self {
        let mut e = self.clone();
        *e.0.last_mut().expect("exponent of dimension 0") = t;
        e
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.dim(), other.dim());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.dim(), other.dim());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Exponent {
        Exponent(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Exponent {
        Exponent(self.0.iter().map(|a| a * k).collect())
    }

    pub fn checked_scale(&self, k: i64) -> Option<Exponent> {
        self.0
            .iter()
            .map(|a| a.checked_mul(k))
            .collect::<Option<SmallVec<_>>>()
            .map(Exponent)
    }

    /// Negates the coordinates whose bit is set in `mask` (bit i = axis i).
    pub fn reflect(&self, mask: u32) -> Exponent {
        Exponent(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &a)| if mask >> i & 1 == 1 { -a } else { a })
                .collect(),
        )
    }
}

impl Index<usize> for Exponent {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl From<Vec<i64>> for Exponent {
    fn from(v: Vec<i64>) -> Self {
        Exponent(SmallVec::from_vec(v))
    }
}

impl<const N: usize> From<[i64; N]> for Exponent {
    fn from(v: [i64; N]) -> Self {
        Exponent::new(&v)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
