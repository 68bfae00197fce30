//! Joint cylinder measures along dilations of a primitive set.
//!
//! Event `A_i` attached to offset `n_i` is moved to `T_{-m n_i} A_i`, i.e.
//! its cells are placed at `S_i - m·n_i`. The scan compares the exact joint
//! measure with the product of the individual measures. Equality over a
//! finite range is only evidence of mixing; a zero joint measure with
//! positive product is a proof of non-mixing for that dilation.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{CaShift, Exponent, LaurentPoly, Shape};
use crate::shift::{cylinder_measure, Budgets, CylinderEvent, MeasureValue};

/// Finite set of offsets containing the origin; order is significant
/// because events are paired with offsets by position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PrimitiveSet(Vec<Exponent>);

impl PrimitiveSet {
    pub fn new(points: Vec<Exponent>) -> Result<Self> {
        let Some(d) = points.first().map(Exponent::dim) else {
            return Err(Error::Invalid("empty offset set".into()));
        };
        if points.iter().any(|n| n.dim() != d) {
            return Err(Error::Mismatch("offsets of different dimensions".into()));
        }
        if !points.iter().any(Exponent::is_zero) {
            return Err(Error::Invalid("offset set must contain the origin".into()));
        }
        let mut sorted = points.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != points.len() {
            return Err(Error::Invalid("repeated offset".into()));
        }
        Ok(PrimitiveSet(points))
    }

    /// Translates the shape so its lexicographically least point is the
    /// origin; the origin comes first, the rest in lexicographic order.
    pub fn from_shape(shape: &Shape) -> Result<(Self, Exponent)> {
        let (prim, shift) = shape.primitive_translate()?;
        Ok((PrimitiveSet(prim.points().cloned().collect()), shift))
    }

    pub fn points(&self) -> &[Exponent] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.0[0].dim()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DilationEntry {
    pub m: i64,
    pub joint: MeasureValue,
    pub product: MeasureValue,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DilationReport {
    pub offsets: PrimitiveSet,
    pub individual: Vec<MeasureValue>,
    pub product: MeasureValue,
    pub entries: Vec<DilationEntry>,
}

impl DilationReport {
    pub fn entry(&self, m: i64) -> Option<&DilationEntry> {
        self.entries.iter().find(|e| e.m == m)
    }
}

/// `{2, ..., 16}` together with the powers `p, p^2, ...` up to `mmax`.
pub fn default_dilations(p: crate::Prime, mmax: i64) -> Vec<i64> {
    let mut out: Vec<i64> = (2..=16).collect();
    let mut q = p.get() as i64;
    while q <= mmax {
        out.push(q);
        match q.checked_mul(p.get() as i64) {
            Some(next) => q = next,
            None => break,
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Exact joint and product measures of `T_{-m n_i} A_i` for each dilation.
/// Dilations are processed in parallel; entries keep the input order.
pub fn mixing_scan(
    ca: &CaShift,
    events: &[CylinderEvent],
    offsets: &PrimitiveSet,
    dilations: &[i64],
    budgets: &Budgets,
) -> Result<DilationReport> {
    if events.len() != offsets.len() {
        return Err(Error::Invalid(format!(
            "{} events for {} offsets",
            events.len(),
            offsets.len()
        )));
    }
    if offsets.dim() != ca.dim() {
        return Err(Error::Mismatch(format!("offsets are not in Z^{}", ca.dim())));
    }
    let individual = events
        .iter()
        .map(|e| cylinder_measure(ca, std::slice::from_ref(e), budgets))
        .collect::<Result<Vec<_>>>()?;
    let product = individual.iter().fold(MeasureValue::ONE, |acc, &m| acc.times(m));
    let entries = dilations
        .par_iter()
        .map(|&m| {
            let moved = events
                .iter()
                .zip(offsets.points())
                .map(|(e, n)| {
                    let by = n.checked_scale(-m).ok_or(Error::Overflow)?;
                    Ok(e.translated(&by))
                })
                .collect::<Result<Vec<_>>>()?;
            let joint = cylinder_measure(ca, &moved, budgets)?;
            Ok(DilationEntry {
                m,
                joint,
                product,
                equal: joint == product,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DilationReport {
        offsets: offsets.clone(),
        individual,
        product,
        entries,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateVerdict {
    NonMixingWitnessed,
    NotWitnessed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub q: LaurentPoly,
    /// Translation taking `S(Q)` to the primitive offsets.
    pub translation: Exponent,
    pub scan: DilationReport,
    pub verdict: CertificateVerdict,
}

/// For `Q = R·P`, checks that `{x_0 = 1}` and `{x_0 = 0}` at the remaining
/// points of the primitive `S(Q)` have empty intersection at every
/// dilation `p^j`, `0 <= j <= jmax`.
pub fn nonmixing_certificate(
    ca: &CaShift,
    r: &LaurentPoly,
    jmax: u32,
    budgets: &Budgets,
) -> Result<CertificateReport> {
    if r.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let q = r.checked_mul(ca.annihilator())?;
    let (offsets, translation) = PrimitiveSet::from_shape(&q.shape()?)?;
    let p = ca.prime();
    let events = offsets
        .points()
        .iter()
        .map(|n| CylinderEvent::single_cell(ca.dim(), u32::from(n.is_zero()), p))
        .collect::<Result<Vec<_>>>()?;
    let dilations = (0..=jmax)
        .map(|j| (p.get() as i64).checked_pow(j).ok_or(Error::Overflow))
        .collect::<Result<Vec<_>>>()?;
    let scan = mixing_scan(ca, &events, &offsets, &dilations, budgets)?;
    let witnessed = scan.entries.iter().all(|e| e.joint.is_zero()) && !scan.product.is_zero();
    Ok(CertificateReport {
        q,
        translation,
        scan,
        verdict: if witnessed {
            CertificateVerdict::NonMixingWitnessed
        } else {
            CertificateVerdict::NotWitnessed
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HorizontalReport {
    pub scan: DilationReport,
    /// Least `m0` with joint = product for every tested `m >= m0`.
    pub m0: Option<i64>,
}

/// Scans `m = 1..=mmax` (which includes every power of `p` up to `mmax`)
/// for offsets inside one time layer.
pub fn horizontal_mixing_check(
    ca: &CaShift,
    offsets: &PrimitiveSet,
    events: &[CylinderEvent],
    mmax: i64,
    budgets: &Budgets,
) -> Result<HorizontalReport> {
    if let Some(n) = offsets.points().iter().find(|n| n.last() != 0) {
        return Err(Error::Invalid(format!("offset {n} has nonzero final coordinate")));
    }
    if mmax < 1 {
        return Err(Error::Invalid(format!("mmax must be positive, got {mmax}")));
    }
    let dilations: Vec<i64> = (1..=mmax).collect();
    let scan = mixing_scan(ca, events, offsets, &dilations, budgets)?;
    let m0 = match scan.entries.iter().rposition(|e| !e.equal) {
        None => Some(1),
        Some(i) if i + 1 < scan.entries.len() => Some(scan.entries[i + 1].m),
        Some(_) => None,
    };
    Ok(HorizontalReport { scan, m0 })
}
