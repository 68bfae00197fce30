use std::collections::{BTreeMap, BTreeSet};

use crate::error::{budget, Result};
use crate::field::Prime;
use crate::laurent::{CaShift, Exponent, LaurentPoly};
use crate::linalg::{echelon, Echelon};

use super::{Budgets, Window};

/// Every window cell as a linear form in the values of the highest layer
/// the window touches.
///
/// With `t1` the top time of the window, cell `(s, t)` equals
/// `Σ_u c_{Φ^(t1-t)}(s - u) y_u` where `y` is the layer at time `t1`. Any
/// assignment of `y` on the region extends to a point of the shift (evolve
/// downwards; upwards, convolution by Φ is onto because multiplication by Φ
/// is injective on polynomials), so the image of this map is exactly the
/// window language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopSliceSystem {
    p: Prime,
    top: i64,
    region: Vec<Exponent>,
    rows: Vec<Vec<(usize, u32)>>,
}

impl TopSliceSystem {
    pub fn top(&self) -> i64 {
        self.top
    }

    /// Sites of the top layer the window depends on, as full lattice cells
    /// (final coordinate `top`), lexicographically sorted.
    pub fn region(&self) -> &[Exponent] {
        &self.region
    }

    /// Sparse row of window cell `i`: (region index, coefficient).
    pub fn row(&self, i: usize) -> &[(usize, u32)] {
        &self.rows[i]
    }

    pub fn dense_row(&self, i: usize) -> Vec<u32> {
        let mut out = vec![0; self.region.len()];
        for &(j, c) in &self.rows[i] {
            out[j] = c;
        }
        out
    }

    /// Window values produced by the top-layer assignment `y`.
    pub fn apply(&self, y: &[u32]) -> Vec<u32> {
        assert_eq!(y.len(), self.region.len(), "assignment length mismatch");
        let p = self.p;
        self.rows
            .iter()
            .map(|row| row.iter().fold(0, |acc, &(j, c)| p.add(acc, p.mul(c, y[j]))))
            .collect()
    }

    /// Echelon basis of the image, columns in window order.
    pub fn image(&self) -> Echelon {
        let n = self.rows.len();
        let mut columns = vec![vec![0u32; n]; self.region.len()];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, c) in row {
                columns[j][i] = c;
            }
        }
        echelon(self.p, n, &columns)
    }
}

/// Powers `Φ^k` for the requested depths.
pub(crate) fn phi_powers(phi: &LaurentPoly, depths: &BTreeSet<u64>) -> BTreeMap<u64, LaurentPoly> {
    let mut out = BTreeMap::new();
    let mut cur = LaurentPoly::one(phi.prime(), phi.dim());
    let mut at = 0;
    for &k in depths {
        cur = &cur * &phi.pow(k - at);
        at = k;
        out.insert(k, cur.clone());
    }
    out
}

pub fn top_slice_system(ca: &CaShift, window: &Window, budgets: &Budgets) -> Result<TopSliceSystem> {
    window.check_dim(ca.dim())?;
    let p = ca.prime();
    let Some(top) = window.cells().iter().map(Exponent::last).max() else {
        return Ok(TopSliceSystem {
            p,
            top: 0,
            region: Vec::new(),
            rows: Vec::new(),
        });
    };
    let depths: BTreeSet<u64> = window.cells().iter().map(|c| (top - c.last()) as u64).collect();
    let powers = phi_powers(ca.phi(), &depths);
    let mut region = BTreeSet::new();
    let mut raw_rows = Vec::with_capacity(window.len());
    for c in window.cells() {
        let power = &powers[&((top - c.last()) as u64)];
        let row: Vec<(Exponent, u32)> = power
            .terms()
            .map(|(m, coeff)| (c.sub(m).with_last(top), coeff))
            .collect();
        region.extend(row.iter().map(|(u, _)| u.clone()));
        raw_rows.push(row);
    }
    budget(
        "top-slice region",
        region.len() as u128,
        budgets.max_region as u128,
    )?;
    let region: Vec<Exponent> = region.into_iter().collect();
    let rows = raw_rows
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|(u, c)| (region.binary_search(&u).expect("site in region"), c))
                .collect()
        })
        .collect();
    Ok(TopSliceSystem { p, top, region, rows })
}
