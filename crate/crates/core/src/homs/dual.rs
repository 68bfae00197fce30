//! Homomorphisms as multiplications `x ↦ R·x` in the dual module
//! `F_p[X^±1] / <P>`, and the unit group describing automorphisms.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{budget, Error, Result};
use crate::laurent::{
    divide_exact, ideal_member, reduce_class, substitute_time, univariate_factor, CaShift, Exponent,
    Factorization, LaurentPoly, Shape,
};
use crate::linalg::echelon;

/// Largest support bound accepted by `dual_hom_search`.
pub const MAX_BOUND: usize = 16;

/// Whether multiplication by `r` maps `P^⊥` into `Q^⊥`, i.e. `Q·r ∈ <P>`.
pub fn poly_map_check(ca_p: &CaShift, ca_q: &CaShift, r: &LaurentPoly) -> Result<bool> {
    ideal_member(&ca_q.annihilator().checked_mul(r)?, ca_p)
}

/// A class modulo `<P>`, written `N / Φ^j` with `N` free of `X_d` and `j`
/// minimal; the representative is `N·X_d^-j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualHom {
    pub representative: LaurentPoly,
    pub numerator: LaurentPoly,
    pub phi_power: u32,
}

impl DualHom {
    pub fn of(r: &LaurentPoly, ca_p: &CaShift) -> Result<Self> {
        let red = reduce_class(r, ca_p)?;
        Ok(DualHom {
            representative: red.representative(),
            numerator: red.numerator,
            phi_power: red.phi_power,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

/// Every class `R mod <P>` with `supp R ⊆ bound` and `Q·R ∈ <P>`.
///
/// After multiplying by a fixed power of `X_d`, membership is the vanishing
/// of a linear map in the coefficients of `R`; its kernel is listed (at
/// most `limit` elements) and reduced to canonical classes.
pub fn dual_hom_search(ca_p: &CaShift, ca_q: &CaShift, bound: &Shape, limit: u128) -> Result<Vec<DualHom>> {
    ca_p.phi().same_ring(ca_q.phi())?;
    budget("support bound", bound.len() as u128, MAX_BOUND as u128)?;
    let p = ca_p.prime();
    let d = ca_p.dim();
    let points: Vec<Exponent> = bound.points().cloned().collect();
    if points.iter().any(|e| e.dim() != d) {
        return Err(Error::Mismatch(format!("support bound is not in Z^{d}")));
    }
    let q = ca_q.annihilator();
    let low = q.min_exponent().expect("annihilator is nonzero").last()
        + points.iter().map(Exponent::last).min().unwrap_or(0);
    let clear = Exponent::zero(d).with_last((-low).max(0));
    let images = points
        .iter()
        .map(|e| {
            let term = q.shift(&e.add(&clear));
            let red = substitute_time(&term, ca_p)?;
            debug_assert_eq!(red.phi_power, 0);
            Ok(red.numerator)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut monomials: Vec<&Exponent> = images.iter().flat_map(|n| n.terms().map(|(e, _)| e)).collect();
    monomials.sort();
    monomials.dedup();
    let rows: Vec<Vec<u32>> = monomials
        .iter()
        .map(|m| images.iter().map(|n| n.coeff(m)).collect())
        .collect();
    let kernel = echelon(p, points.len(), &echelon(p, points.len(), &rows).null_space());
    let count = kernel.cardinality().unwrap_or(u128::MAX);
    budget("dual homomorphism candidates", count, limit)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in 0..count as u64 {
        let coeffs = kernel.element(i);
        let r = LaurentPoly::from_terms(p, d, points.iter().cloned().zip(coeffs.iter().map(|&c| c as i64)));
        let class = DualHom::of(&r, ca_p)?;
        if seen.insert(class.representative.clone()) {
            out.push(class);
        }
    }
    Ok(out)
}

/// Whether `r·r_inv ≡ 1 (mod <P>)`.
pub fn verify_unit_pair(ca_p: &CaShift, r: &LaurentPoly, r_inv: &LaurentPoly) -> Result<bool> {
    let one = LaurentPoly::one(ca_p.prime(), ca_p.dim());
    ideal_member(&r.checked_mul(r_inv)?.checked_sub(&one)?, ca_p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitGenerator {
    pub unit: LaurentPoly,
    pub inverse: LaurentPoly,
    pub verified: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorSource {
    Computed,
    AssertedByUser,
}

/// `X_d ≡ Φ = unit · X^monomial · Π f_i^k_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TimeGenerator {
    pub unit: u32,
    pub monomial: Exponent,
    pub exponents: Vec<u32>,
}

/// Units of `F_p[X^±1] / <P>`: constants times a free abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutDescription {
    pub torsion_order: u32,
    pub torsion_generator: u32,
    /// `X_1, ..., X_{d-1}` followed by the distinct irreducible factors of Φ.
    pub free_generators: Vec<UnitGenerator>,
    pub rank: usize,
    /// `X_d` expressed through the generators (exponent per factor).
    pub time: TimeGenerator,
    pub phi_irreducible: bool,
    pub factors: FactorSource,
}

/// Describes the automorphism group via the unit group of the dual.
/// Univariate Φ is factored here; otherwise a factorization must be given,
/// and only its product is checked.
pub fn aut_group(ca_p: &CaShift, hint: Option<&Factorization>) -> Result<AutDescription> {
    let p = ca_p.prime();
    let d = ca_p.dim();
    let phi = ca_p.phi();
    let (fac, source) = match hint {
        Some(h) => {
            if h.factors.iter().any(|(f, _)| f.dim() != d || f.prime() != p) {
                return Err(Error::Mismatch("factor hint is in a different ring".into()));
            }
            if &h.product(p) != phi {
                return Err(Error::Invalid("factor hint does not multiply to phi".into()));
            }
            let computed = phi.variables().len() <= 1;
            (
                h.clone(),
                if computed {
                    FactorSource::Computed
                } else {
                    FactorSource::AssertedByUser
                },
            )
        }
        None if phi.variables().len() <= 1 => (univariate_factor(phi)?, FactorSource::Computed),
        None => return Err(Error::NotUnivariate),
    };
    let x_d_inv = LaurentPoly::monomial(p, Exponent::zero(d).with_last(-1), 1);
    let mut free = Vec::new();
    for axis in 0..d - 1 {
        let x = LaurentPoly::var(p, d, axis);
        let inv = LaurentPoly::monomial(p, Exponent::unit(d, axis).neg(), 1);
        free.push((x, inv));
    }
    let mut seen = Vec::new();
    let mut exponents = Vec::new();
    for (f, k) in &fac.factors {
        if f.is_monomial() {
            return Err(Error::Invalid(format!("factor {f} is a monomial")));
        }
        if let Some(i) = seen.iter().position(|g| g == f) {
            exponents[i] += k;
            continue;
        }
        let cofactor =
            divide_exact(phi, f).ok_or_else(|| Error::Invalid(format!("{f} does not divide phi")))?;
        free.push((f.clone(), &cofactor * &x_d_inv));
        seen.push(f.clone());
        exponents.push(*k);
    }
    let free_generators = free
        .into_iter()
        .map(|(unit, inverse)| {
            let verified = verify_unit_pair(ca_p, &unit, &inverse)?;
            Ok(UnitGenerator {
                unit,
                inverse,
                verified,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AutDescription {
        torsion_order: p.get() - 1,
        torsion_generator: p.primitive_root(),
        rank: free_generators.len(),
        free_generators,
        time: TimeGenerator {
            unit: fac.unit,
            monomial: fac.monomial.clone(),
            exponents,
        },
        phi_irreducible: fac.is_irreducible(),
        factors: source,
    })
}
