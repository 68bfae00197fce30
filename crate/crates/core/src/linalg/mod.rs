//! Row reduction over F_p.
//!
//! Two interchangeable kernels sit behind [`RowReducer`]: a bit-packed one
//! for p = 2 and a dense one for any p. Both return the reduced row-echelon
//! form, which is unique, so callers never observe which one ran.

mod dense;
mod gf2;

pub use dense::DenseFp;
pub use gf2::Gf2Packed;

use crate::field::Prime;

/// Reduced row-echelon basis of a subspace of F_p^ncols.
///
/// Pivot columns increase; each basis row has a 1 at its pivot and every
/// other row has 0 there. Coordinates of a member vector in this basis are
/// its entries at the pivot columns.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Echelon {
    p: Prime,
    ncols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

pub trait RowReducer: Send + Sync {
    fn name(&self) -> &'static str;

    fn supports(&self, p: Prime) -> bool;

    /// Reduced row-echelon form of the span of `rows`.
    fn echelon(&self, p: Prime, ncols: usize, rows: &[Vec<u32>]) -> Echelon;
}

static REDUCERS: [&dyn RowReducer; 2] = [&Gf2Packed, &DenseFp];

/// All registered kernels.
pub fn reducers() -> &'static [&'static dyn RowReducer] {
    &REDUCERS
}

pub fn reducer_by_name(name: &str) -> Option<&'static dyn RowReducer> {
    REDUCERS.iter().copied().find(|r| r.name() == name)
}

/// The first registered kernel that handles `p`.
pub fn default_reducer(p: Prime) -> &'static dyn RowReducer {
    REDUCERS
        .iter()
        .copied()
        .find(|r| r.supports(p))
        .expect("the dense kernel supports every prime")
}

/// Row-reduces with the default kernel for `p`.
pub fn echelon(p: Prime, ncols: usize, rows: &[Vec<u32>]) -> Echelon {
    default_reducer(p).echelon(p, ncols, rows)
}

impl Echelon {
    pub(crate) fn from_parts(p: Prime, ncols: usize, rows: Vec<Vec<u32>>, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(rows.len(), pivots.len());
        Echelon {
            p,
            ncols,
            rows,
            pivots,
        }
    }

    pub fn zero(p: Prime, ncols: usize) -> Self {
        Self::from_parts(p, ncols, Vec::new(), Vec::new())
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts the basis components; zero iff `v` is in the span.
    pub fn residual(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        let p = self.p;
        let mut r = v.to_vec();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = r[piv];
            if c == 0 {
                continue;
            }
            for (x, &b) in r.iter_mut().zip(row) {
                if b != 0 {
                    *x = p.sub(*x, p.mul(c, b));
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.residual(v).iter().all(|&x| x == 0)
    }

    /// Coordinates in the echelon basis, if `v` is in the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&c| v[c]).collect())
    }

    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        assert_eq!(coords.len(), self.rank());
        let p = self.p;
        let mut out = vec![0u32; self.ncols];
        for (row, &a) in self.rows.iter().zip(coords) {
            if a == 0 {
                continue;
            }
            for (x, &b) in out.iter_mut().zip(row) {
                *x = p.add(*x, p.mul(a, b));
            }
        }
        out
    }

    /// Number of elements, `p^rank`, when it fits in a u128.
    pub fn cardinality(&self) -> Option<u128> {
        (self.p.get() as u128).checked_pow(self.rank() as u32)
    }

    /// Base-p digits of `index`, least significant first, as coordinates.
    pub fn index_coords(&self, mut index: u64) -> Vec<u32> {
        let p = self.p.get() as u64;
        (0..self.rank())
            .map(|_| {
                let d = (index % p) as u32;
                index /= p;
                d
            })
            .collect()
    }

    pub fn coords_index(&self, coords: &[u32]) -> u64 {
        let p = self.p.get() as u64;
        coords.iter().rev().fold(0u64, |acc, &c| acc * p + c as u64)
    }

    /// The `index`-th element in the canonical enumeration order.
    pub fn element(&self, index: u64) -> Vec<u32> {
        self.combine(&self.index_coords(index))
    }

    /// Image under the coordinate projection onto `cols` (in that order).
    pub fn project(&self, cols: &[usize]) -> Echelon {
        let rows: Vec<Vec<u32>> = self
            .rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect();
        echelon(self.p, cols.len(), &rows)
    }

    /// Basis of `{x : row . x = 0 for every row}`.
    pub fn null_space(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; self.ncols];
                v[free] = 1;
                for (row, &piv) in self.rows.iter().zip(&self.pivots) {
                    v[piv] = p.neg(row[free]);
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn small_example() {
        let p = prime(3);
        let e = echelon(p, 3, &[vec![0, 2, 1], vec![1, 1, 1], vec![1, 2, 0]]);
        // third row = second + (0,1,2) where (0,1,2) = 2 * first
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots(), &[0, 1]);
        assert_eq!(e.rows(), &[vec![1, 0, 2], vec![0, 1, 2]]);
        assert!(e.contains(&[1, 2, 0]));
        assert!(!e.contains(&[0, 0, 1]));
        assert_eq!(e.coordinates(&[2, 1, 0]), Some(vec![2, 1]));
        assert_eq!(e.coordinates(&[2, 1, 1]), None);
        assert_eq!(e.null_space(), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn registry_lookup() {
        assert_eq!(default_reducer(prime(2)).name(), "gf2-packed");
        assert_eq!(default_reducer(prime(7)).name(), "dense");
        assert!(reducer_by_name("dense").is_some());
        assert!(reducer_by_name("nope").is_none());
    }

    fn matrix(p: u32) -> impl Strategy<Value = (usize, Vec<Vec<u32>>)> {
        (1usize..80).prop_flat_map(move |n| {
            (
                Just(n),
                prop::collection::vec(prop::collection::vec(0..p, n), 0..12),
            )
        })
    }

    proptest! {
        #[test]
        fn kernels_agree_over_f2((n, rows) in matrix(2)) {
            let p = prime(2);
            let a = Gf2Packed.echelon(p, n, &rows);
            let b = DenseFp.echelon(p, n, &rows);
            prop_assert_eq!(&a, &b);
            for r in &rows {
                prop_assert!(a.contains(r));
            }
            for v in a.null_space() {
                for r in &rows {
                    let dot = r.iter().zip(&v).map(|(x, y)| x * y).sum::<u32>() % 2;
                    prop_assert_eq!(dot, 0);
                }
            }
        }

        #[test]
        fn dense_kernel_spans_input((n, rows) in matrix(5)) {
            let p = prime(5);
            let e = DenseFp.echelon(p, n, &rows);
            prop_assert!(e.rank() <= rows.len().min(n));
            for r in &rows {
                prop_assert!(e.contains(r));
            }
            for i in 0..e.cardinality().unwrap().min(50) as u64 {
                let v = e.element(i);
                prop_assert_eq!(e.coords_index(&e.coordinates(&v).unwrap()), i);
            }
            prop_assert_eq!(e.null_space().len(), n - e.rank());
        }
    }
}
