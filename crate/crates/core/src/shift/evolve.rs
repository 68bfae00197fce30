use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{budget, Error, Result};
use crate::field::Prime;
use crate::laurent::{CaShift, Exponent};

use super::Configuration;

/// One downward time step on a finitely supported layer: the layer at time
/// `t` (final coordinate `t`) maps to `Φ ⋆ layer` at time `t - 1`, with
/// `(Φ ⋆ y)(s) = Σ_m c_Φ(m) y(s - m)`. Works in any dimension.
pub fn step_layer(ca: &CaShift, layer: &BTreeMap<Exponent, u32>) -> BTreeMap<Exponent, u32> {
    let p = ca.prime();
    let mut out: BTreeMap<Exponent, u32> = BTreeMap::new();
    for (u, &v) in layer {
        if v == 0 {
            continue;
        }
        for (m, c) in ca.phi().terms() {
            let target = u.add(m).with_last(u.last() - 1);
            let slot = out.entry(target).or_insert(0);
            *slot = p.add(*slot, p.mul(c, v));
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Space-time diagram of a one-dimensional automaton; row 0 is the top
/// layer and row `k` is `k` steps later (time `top_time - k`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceTimeGrid {
    pub p: Prime,
    pub x_min: i64,
    pub top_time: i64,
    pub rows: Vec<Vec<u32>>,
}

impl SpaceTimeGrid {
    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    /// Value at spatial site `x` in row `k` (zero outside the grid).
    pub fn at(&self, k: usize, x: i64) -> u32 {
        let i = x - self.x_min;
        if i < 0 {
            return 0;
        }
        self.rows
            .get(k)
            .and_then(|r| r.get(i as usize))
            .copied()
            .unwrap_or(0)
    }
}

/// Evolves a row of a two-dimensional shift for `steps` steps. Sites
/// outside the given row are zero, so every reported cell is determined; the
/// grid spans the region the support can reach.
pub fn evolve(ca: &CaShift, top: &Configuration, steps: i64) -> Result<SpaceTimeGrid> {
    if ca.dim() != 2 {
        return Err(Error::Dimension(ca.dim()));
    }
    if steps < 0 {
        return Err(Error::Invalid(format!("negative step count {steps}")));
    }
    let cells = top.window().cells();
    let Some(first) = cells.first() else {
        return Err(Error::Invalid("empty top row".into()));
    };
    let top_time = first.last();
    if cells.iter().any(|c| c.dim() != 2 || c.last() != top_time) {
        return Err(Error::Invalid(
            "top configuration must lie in a single row".into(),
        ));
    }
    let p = ca.prime();
    let spatial: Vec<(i64, u32)> = ca.phi().terms().map(|(m, c)| (m[0], c)).collect();
    let m_lo = spatial.iter().map(|s| s.0).min().expect("phi nonzero");
    let m_hi = spatial.iter().map(|s| s.0).max().expect("phi nonzero");
    let a = cells.iter().map(|c| c[0]).min().expect("nonempty");
    let b = cells.iter().map(|c| c[0]).max().expect("nonempty");
    let x_min = a + (steps * m_lo).min(0);
    let x_max = b + (steps * m_hi).max(0);
    let width = (x_max - x_min + 1) as u128;
    budget("grid cells", width * (steps as u128 + 1), 1 << 26)?;
    let width = width as usize;
    let mut row = vec![0u32; width];
    for (cell, v) in top.iter() {
        row[(cell[0] - x_min) as usize] = v;
    }
    let mut rows = Vec::with_capacity(steps as usize + 1);
    rows.push(row);
    for _ in 0..steps {
        let prev = rows.last().expect("at least one row");
        let mut next = vec![0u32; width];
        for (i, &v) in prev.iter().enumerate() {
            if v == 0 {
                continue;
            }
            for &(m, c) in &spatial {
                let j = i as i64 + m;
                if (0..width as i64).contains(&j) {
                    let slot = &mut next[j as usize];
                    *slot = p.add(*slot, p.mul(c, v));
                }
            }
        }
        rows.push(next);
    }
    Ok(SpaceTimeGrid {
        p,
        x_min,
        top_time,
        rows,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RenderFormat {
    Text,
    Pgm,
}

fn glyph(v: u32) -> char {
    match v {
        0 => '.',
        1..=35 => char::from_digit(v, 36).expect("digit below 36"),
        _ => '#',
    }
}

/// Text: one line per row, `.` for zero and a base-36 digit otherwise.
/// PGM: binary P5 with residue `v` drawn at gray `255 - 255 v / (p - 1)`.
pub fn render(grid: &SpaceTimeGrid, format: RenderFormat) -> Vec<u8> {
    match format {
        RenderFormat::Text => grid
            .rows
            .iter()
            .map(|r| r.iter().map(|&v| glyph(v)).collect::<String>())
            .collect::<Vec<_>>()
            .join("\n")
            .into_bytes(),
        RenderFormat::Pgm => {
            let top = (grid.p.get() - 1) as u64;
            let mut out = format!("P5 {} {} 255\n", grid.width(), grid.height()).into_bytes();
            for r in &grid.rows {
                out.extend(r.iter().map(|&v| (255 - 255 * v as u64 / top) as u8));
            }
            out
        }
    }
}
