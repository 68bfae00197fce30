use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::laurent::{CaShift, Exponent};

use super::{language, Budgets, Configuration, MeasureValue, Window};

/// The cylinder `{x : x_(offset + c) = v_c for c in cells}`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CylinderEvent {
    pub pattern: Configuration,
    pub offset: Exponent,
}

impl CylinderEvent {
    pub fn new(pattern: Configuration, offset: Exponent) -> Self {
        CylinderEvent { pattern, offset }
    }

    /// Single cell at the origin holding `value`.
    pub fn single_cell(d: usize, value: u32, p: crate::field::Prime) -> Result<Self> {
        let cell = Exponent::zero(d);
        Ok(CylinderEvent {
            pattern: Configuration::new(Window::new([cell]), vec![value], p)?,
            offset: Exponent::zero(d),
        })
    }

    pub fn translated(&self, by: &Exponent) -> Self {
        CylinderEvent {
            pattern: self.pattern.clone(),
            offset: self.offset.add(by),
        }
    }
}

/// Haar measure of the intersection of the given cylinders.
///
/// Haar measure restricted to a window is uniform on the window language
/// `V`, so a prescription on every cell of `V`'s window has measure
/// `p^-rank(V)` if it occurs and zero otherwise. Contradictory overlaps are
/// zero.
pub fn cylinder_measure(ca: &CaShift, events: &[CylinderEvent], budgets: &Budgets) -> Result<MeasureValue> {
    let p = ca.prime();
    let mut prescribed: BTreeMap<Exponent, u32> = BTreeMap::new();
    for ev in events {
        for (cell, v) in ev.pattern.iter() {
            if cell.dim() != ca.dim() || ev.offset.dim() != ca.dim() {
                return Err(Error::Mismatch(format!("cell {cell} is not in Z^{}", ca.dim())));
            }
            let at = cell.add(&ev.offset);
            match prescribed.get(&at) {
                Some(&old) if old != v => return Ok(MeasureValue::Zero),
                _ => {
                    prescribed.insert(at, v);
                }
            }
        }
    }
    if prescribed.is_empty() {
        return Ok(MeasureValue::ONE);
    }
    let (cells, values): (Vec<_>, Vec<_>) = prescribed.into_iter().unzip();
    let window = Window::new(cells);
    let config = Configuration::new(window, values, p)?;
    let lang = language(ca, config.window(), budgets)?;
    if lang.contains(config.values()) {
        Ok(MeasureValue::PPower(lang.rank() as u32))
    } else {
        Ok(MeasureValue::Zero)
    }
}
