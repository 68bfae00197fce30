//! Finite-window analysis of a shift `(X_d - Φ)^⊥`.
//!
//! Conventions: a point is a coefficient table `x: Z^d -> F_p`, and a
//! polynomial `P` acts by `(P·x)_k = Σ_m c_P(m) x_{k-m}`. For `P = X_d - Φ`
//! this gives the downward update `x_(s,t) = Σ_m c_Φ(m) x_(s-m,t+1)`: each
//! layer is determined by the layer above it.

mod evolve;
mod language;
mod measure;
mod sample;
mod topslice;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::laurent::{Exponent, Shape};
use crate::linalg::Echelon;

pub use evolve::{evolve, render, step_layer, RenderFormat, SpaceTimeGrid};
pub use language::{
    language, language_method, language_methods, DecreasingProjection, LanguageMethod, TopSliceCone,
};
pub use measure::{cylinder_measure, CylinderEvent};
pub use sample::sample_point;
pub use topslice::{top_slice_system, TopSliceSystem};

/// Size limits for exact computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Largest window handled by `language` and `cylinder_measure`.
    pub max_cells: usize,
    /// Largest top-slice region (or inflated box for the projection method).
    pub max_region: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_cells: 24,
            max_region: 1 << 20,
        }
    }
}

/// A finite set of lattice cells in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct Window {
    cells: Vec<Exponent>,
}

impl Window {
    pub fn new<I: IntoIterator<Item = Exponent>>(cells: I) -> Self {
        let mut cells: Vec<Exponent> = cells.into_iter().collect();
        cells.sort();
        cells.dedup();
        Window { cells }
    }

    pub fn cells(&self) -> &[Exponent] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn index_of(&self, cell: &Exponent) -> Option<usize> {
        self.cells.binary_search(cell).ok()
    }

    pub fn contains(&self, cell: &Exponent) -> bool {
        self.index_of(cell).is_some()
    }

    pub fn translate(&self, by: &Exponent) -> Window {
        Window {
            cells: self.cells.iter().map(|c| c.add(by)).collect(),
        }
    }

    pub fn shape(&self) -> Shape {
        Shape::from_points(self.cells.iter().cloned())
    }

    pub(crate) fn check_dim(&self, d: usize) -> Result<()> {
        match self.cells.iter().find(|c| c.dim() != d) {
            Some(c) => Err(Error::Mismatch(format!("cell {c} is not in Z^{d}"))),
            None => Ok(()),
        }
    }
}

impl From<&Shape> for Window {
    fn from(s: &Shape) -> Self {
        Window::new(s.points().cloned())
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.shape())
    }
}

/// Values on the cells of a window.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Configuration {
    window: Window,
    values: Vec<u32>,
}

impl Configuration {
    pub fn new(window: Window, values: Vec<u32>, p: Prime) -> Result<Self> {
        if window.len() != values.len() {
            return Err(Error::Invalid(format!(
                "{} values for a window of {} cells",
                values.len(),
                window.len()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v >= p.get()) {
            return Err(Error::Invalid(format!("value {v} is not a residue mod {p}")));
        }
        Ok(Configuration { window, values })
    }

    /// Builds from (cell, value) pairs in any order.
    pub fn from_pairs<I>(pairs: I, p: Prime) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, u32)>,
    {
        let mut pairs: Vec<(Exponent, u32)> = pairs.into_iter().collect();
        pairs.sort();
        let n = pairs.len();
        pairs.dedup_by(|a, b| a.0 == b.0);
        if pairs.len() != n {
            return Err(Error::Invalid("repeated cell in configuration".into()));
        }
        let (cells, values): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        Configuration::new(Window { cells }, values, p)
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn get(&self, cell: &Exponent) -> Option<u32> {
        self.window.index_of(cell).map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exponent, u32)> + '_ {
        self.window.cells.iter().zip(self.values.iter().copied())
    }
}

/// The group `L_W` of configurations on `W` that occur in the shift.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LanguageSubspace {
    window: Window,
    basis: Echelon,
}

impl LanguageSubspace {
    pub(crate) fn new(window: Window, basis: Echelon) -> Self {
        debug_assert_eq!(window.len(), basis.ncols());
        LanguageSubspace { window, basis }
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn basis(&self) -> &Echelon {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn prime(&self) -> Prime {
        self.basis.prime()
    }

    /// `p^rank`, when it fits in a u128.
    pub fn cardinality(&self) -> Option<u128> {
        self.basis.cardinality()
    }

    pub fn contains(&self, values: &[u32]) -> bool {
        self.basis.contains(values)
    }

    /// Enumeration index of a member (base-p digits are its values at the
    /// pivot cells).
    pub fn index_of(&self, values: &[u32]) -> Option<u64> {
        self.basis
            .coordinates(values)
            .map(|c| self.basis.coords_index(&c))
    }

    pub fn element(&self, index: u64) -> Vec<u32> {
        self.basis.element(index)
    }

    /// Cells of the pivot columns, in basis order.
    pub fn pivot_cells(&self) -> Vec<Exponent> {
        self.basis
            .pivots()
            .iter()
            .map(|&i| self.window.cells[i].clone())
            .collect()
    }

    /// Restriction to a subwindow.
    pub fn project(&self, sub: &Window) -> Result<LanguageSubspace> {
        let cols = sub
            .cells()
            .iter()
            .map(|c| {
                self.window
                    .index_of(c)
                    .ok_or_else(|| Error::WindowTooSmall(format!("cell {c} outside window")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LanguageSubspace::new(sub.clone(), self.basis.project(&cols)))
    }
}

/// Exact Haar measure of a cylinder event: zero, or `p^-k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "MeasureRepr", try_from = "MeasureRepr")]
pub enum MeasureValue {
    Zero,
    PPower(u32),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum MeasureRepr {
    Zero { zero: bool },
    Power { p_exp: u32 },
}

impl From<MeasureValue> for MeasureRepr {
    fn from(m: MeasureValue) -> Self {
        match m {
            MeasureValue::Zero => MeasureRepr::Zero { zero: true },
            MeasureValue::PPower(k) => MeasureRepr::Power { p_exp: k },
        }
    }
}

impl TryFrom<MeasureRepr> for MeasureValue {
    type Error = String;

    fn try_from(r: MeasureRepr) -> std::result::Result<Self, String> {
        match r {
            MeasureRepr::Zero { zero: true } => Ok(MeasureValue::Zero),
            MeasureRepr::Zero { zero: false } => Err("\"zero\" must be true".into()),
            MeasureRepr::Power { p_exp } => Ok(MeasureValue::PPower(p_exp)),
        }
    }
}

impl MeasureValue {
    pub const ONE: MeasureValue = MeasureValue::PPower(0);

    pub fn is_zero(self) -> bool {
        self == MeasureValue::Zero
    }

    /// Product of measures: exponents add, zero absorbs.
    pub fn times(self, other: MeasureValue) -> MeasureValue {
        match (self, other) {
            (MeasureValue::PPower(a), MeasureValue::PPower(b)) => MeasureValue::PPower(a + b),
            _ => MeasureValue::Zero,
        }
    }

    /// Human-readable value such as `1/8`.
    pub fn display(self, p: Prime) -> String {
        match self {
            MeasureValue::Zero => "0".into(),
            MeasureValue::PPower(0) => "1".into(),
            MeasureValue::PPower(k) => match (p.get() as u128).checked_pow(k) {
                Some(n) => format!("1/{n}"),
                None => format!("{p}^-{k}"),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_json_encoding() {
        assert_eq!(
            serde_json::to_string(&MeasureValue::Zero).unwrap(),
            r#"{"zero":true}"#
        );
        assert_eq!(
            serde_json::to_string(&MeasureValue::PPower(3)).unwrap(),
            r#"{"p_exp":3}"#
        );
        let back: MeasureValue = serde_json::from_str(r#"{"p_exp":5}"#).unwrap();
        assert_eq!(back, MeasureValue::PPower(5));
        assert!(serde_json::from_str::<MeasureValue>(r#"{"zero":false}"#).is_err());
        assert_eq!(MeasureValue::PPower(3).display(Prime::new(2).unwrap()), "1/8");
        assert_eq!(
            MeasureValue::PPower(0).times(MeasureValue::PPower(2)),
            MeasureValue::PPower(2)
        );
        assert!(MeasureValue::Zero.times(MeasureValue::ONE).is_zero());
    }

    #[test]
    fn configuration_validation() {
        let p = Prime::new(3).unwrap();
        let w = Window::new([Exponent::from([1, 0]), Exponent::from([0, 0])]);
        assert_eq!(w.cells()[0], Exponent::from([0, 0]));
        assert!(Configuration::new(w.clone(), vec![1], p).is_err());
        assert!(Configuration::new(w.clone(), vec![1, 3], p).is_err());
        let c =
            Configuration::from_pairs([(Exponent::from([1, 0]), 2), (Exponent::from([0, 0]), 1)], p).unwrap();
        assert_eq!(c.values(), &[1, 2]);
        assert_eq!(c.get(&Exponent::from([1, 0])), Some(2));
        assert!(
            Configuration::from_pairs([(Exponent::from([1, 0]), 2), (Exponent::from([1, 0]), 1)], p).is_err()
        );
    }
}
