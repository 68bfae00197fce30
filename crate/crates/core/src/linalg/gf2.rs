use crate::field::Prime;

use super::{Echelon, RowReducer};

/// Rows packed 64 columns to a machine word; p = 2 only.
#[derive(Clone, Copy, Debug, Default)]
pub struct Gf2Packed;

impl RowReducer for Gf2Packed {
    fn name(&self) -> &'static str {
        "gf2-packed"
    }

    fn supports(&self, p: Prime) -> bool {
        p.get() == 2
    }

    fn echelon(&self, p: Prime, ncols: usize, rows: &[Vec<u32>]) -> Echelon {
        assert!(self.supports(p), "gf2-packed kernel used with p = {p}");
        let words = ncols.div_ceil(64);
        let mut m: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "row length mismatch");
                let mut packed = vec![0u64; words];
                for (c, &x) in r.iter().enumerate() {
                    if x & 1 == 1 {
                        packed[c / 64] |= 1 << (c % 64);
                    }
                }
                packed
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..ncols {
            if rank == m.len() {
                break;
            }
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(found) = (rank..m.len()).find(|&i| m[i][w] & bit != 0) else {
                continue;
            };
            m.swap(rank, found);
            let pivot_row = m[rank].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != rank && row[w] & bit != 0 {
                    for (x, y) in row[w..].iter_mut().zip(&pivot_row[w..]) {
                        *x ^= y;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        m.truncate(rank);
        let unpacked = m
            .into_iter()
            .map(|packed| {
                (0..ncols)
                    .map(|c| (packed[c / 64] >> (c % 64) & 1) as u32)
                    .collect()
            })
            .collect();
        Echelon::from_parts(p, ncols, unpacked, pivots)
    }
}
