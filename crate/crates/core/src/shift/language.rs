use crate::error::{budget, Error, Result};
use crate::laurent::{CaShift, Exponent};
use crate::linalg::echelon;

use super::{top_slice_system, Budgets, LanguageSubspace, Window};

/// A way of computing the window language `L_W` of a shift.
pub trait LanguageMethod: Send + Sync {
    fn name(&self) -> &'static str;

    fn language(&self, ca: &CaShift, window: &Window, budgets: &Budgets) -> Result<LanguageSubspace>;
}

/// Image of the top-slice system; exact for every cellular automaton shift.
#[derive(Clone, Copy, Debug, Default)]
pub struct TopSliceCone;

impl LanguageMethod for TopSliceCone {
    fn name(&self) -> &'static str {
        "cone"
    }

    fn language(&self, ca: &CaShift, window: &Window, budgets: &Budgets) -> Result<LanguageSubspace> {
        budget("window cells", window.len() as u128, budgets.max_cells as u128)?;
        let sys = top_slice_system(ca, window, budgets)?;
        Ok(LanguageSubspace::new(window.clone(), sys.image()))
    }
}

/// Projects the solutions of every constraint that fits inside a box around
/// the window, growing the box until two consecutive projections agree.
///
/// Only uses the annihilator, not the layer structure, so it serves as an
/// independent cross-check. The stopping rule is a heuristic.
#[derive(Clone, Copy, Debug)]
pub struct DecreasingProjection {
    pub max_radius: usize,
}

impl Default for DecreasingProjection {
    fn default() -> Self {
        DecreasingProjection { max_radius: 32 }
    }
}

fn box_cells(lo: &[i64], hi: &[i64]) -> Vec<Exponent> {
    let mut out = vec![Vec::with_capacity(lo.len())];
    for (&a, &b) in lo.iter().zip(hi) {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (a..=b).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Exponent::from).collect()
}

impl DecreasingProjection {
    fn project_at(
        &self,
        ca: &CaShift,
        window: &Window,
        lo: &[i64],
        hi: &[i64],
        budgets: &Budgets,
    ) -> Result<LanguageSubspace> {
        let p = ca.prime();
        let size: u128 = lo.iter().zip(hi).map(|(a, b)| (b - a + 1) as u128).product();
        budget("projection box", size, budgets.max_region.min(1 << 14) as u128)?;
        let cells = box_cells(lo, hi);
        let index = |c: &Exponent| cells.binary_search(c).ok();
        let annihilator = ca.annihilator();
        // constraint at k fits when k - S(P) lies in the box
        let support: Vec<(&Exponent, u32)> = annihilator.terms().collect();
        let mut k_lo = lo.to_vec();
        let mut k_hi = hi.to_vec();
        for (n, _) in &support {
            for i in 0..lo.len() {
                k_lo[i] = k_lo[i].max(lo[i] + n[i]);
                k_hi[i] = k_hi[i].min(hi[i] + n[i]);
            }
        }
        let constraints: Vec<Vec<u32>> = if k_lo.iter().zip(&k_hi).all(|(a, b)| a <= b) {
            box_cells(&k_lo, &k_hi)
                .into_iter()
                .map(|k| {
                    let mut row = vec![0u32; cells.len()];
                    for (n, c) in &support {
                        row[index(&k.sub(n)).expect("constraint fits")] = *c;
                    }
                    row
                })
                .collect()
        } else {
            Vec::new()
        };
        let kernel = echelon(p, cells.len(), &constraints).null_space();
        let cols: Vec<usize> = window
            .cells()
            .iter()
            .map(|c| index(c).expect("window inside box"))
            .collect();
        let projected: Vec<Vec<u32>> = kernel
            .iter()
            .map(|v| cols.iter().map(|&j| v[j]).collect())
            .collect();
        Ok(LanguageSubspace::new(
            window.clone(),
            echelon(p, window.len(), &projected),
        ))
    }
}

impl LanguageMethod for DecreasingProjection {
    fn name(&self) -> &'static str {
        "projection"
    }

    fn language(&self, ca: &CaShift, window: &Window, budgets: &Budgets) -> Result<LanguageSubspace> {
        budget("window cells", window.len() as u128, budgets.max_cells as u128)?;
        window.check_dim(ca.dim())?;
        if window.is_empty() {
            return Ok(LanguageSubspace::new(window.clone(), echelon(ca.prime(), 0, &[])));
        }
        let d = ca.dim();
        let reach = ca
            .annihilator()
            .terms()
            .flat_map(|(e, _)| e.coords().iter().map(|c| c.abs()).collect::<Vec<_>>())
            .max()
            .unwrap_or(1)
            .max(1);
        let lo: Vec<i64> = (0..d)
            .map(|i| window.cells().iter().map(|c| c[i]).min().unwrap())
            .collect();
        let hi: Vec<i64> = (0..d)
            .map(|i| window.cells().iter().map(|c| c[i]).max().unwrap())
            .collect();
        let mut previous: Option<LanguageSubspace> = None;
        for r in 0..=self.max_radius {
            let grow = r as i64 * reach;
            let l: Vec<i64> = lo.iter().map(|x| x - grow).collect();
            let h: Vec<i64> = hi.iter().map(|x| x + grow).collect();
            let current = self.project_at(ca, window, &l, &h, budgets)?;
            if previous.as_ref() == Some(&current) {
                return Ok(current);
            }
            previous = Some(current);
        }
        Err(Error::Invalid(format!(
            "projection did not stabilize within radius {}",
            self.max_radius
        )))
    }
}

static CONE: TopSliceCone = TopSliceCone;
static PROJECTION: DecreasingProjection = DecreasingProjection { max_radius: 32 };
static METHODS: [&dyn LanguageMethod; 2] = [&CONE, &PROJECTION];

/// Registered language methods; the first is the default.
pub fn language_methods() -> &'static [&'static dyn LanguageMethod] {
    &METHODS
}

pub fn language_method(name: &str) -> Option<&'static dyn LanguageMethod> {
    METHODS.iter().copied().find(|m| m.name() == name)
}

/// `L_W` by the default (cone) method.
pub fn language(ca: &CaShift, window: &Window, budgets: &Budgets) -> Result<LanguageSubspace> {
    CONE.language(ca, window, budgets)
}
