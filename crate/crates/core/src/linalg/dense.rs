use crate::field::Prime;

use super::{Echelon, RowReducer};

/// One residue per entry; works for every supported prime.
#[derive(Clone, Copy, Debug, Default)]
pub struct DenseFp;

impl RowReducer for DenseFp {
    fn name(&self) -> &'static str {
        "dense"
    }

    fn supports(&self, _p: Prime) -> bool {
        true
    }

    fn echelon(&self, p: Prime, ncols: usize, rows: &[Vec<u32>]) -> Echelon {
        let mut m: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "row length mismatch");
                r.iter().map(|&x| x % p.get()).collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..ncols {
            if rank == m.len() {
                break;
            }
            let Some(found) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
                continue;
            };
            m.swap(rank, found);
            let inv = p.inv(m[rank][col]);
            if inv != 1 {
                for x in m[rank][col..].iter_mut() {
                    *x = p.mul(*x, inv);
                }
            }
            let (head, tail) = m.split_at_mut(rank);
            let (pivot_row, rest) = tail.split_first_mut().expect("pivot row");
            for row in head.iter_mut().chain(rest.iter_mut()) {
                let c = row[col];
                if c == 0 {
                    continue;
                }
                let neg = p.neg(c);
                for (x, &b) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    if b != 0 {
                        *x = p.add(*x, p.mul(neg, b));
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        m.truncate(rank);
        Echelon::from_parts(p, ncols, m, pivots)
    }
}
