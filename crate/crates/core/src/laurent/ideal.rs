//! Arithmetic modulo the principal ideal `<X_d - Φ>`.
//!
//! The quotient `F_p[X^±1] / <X_d - Φ>` is the localization of the ring in
//! the first `d-1` variables at Φ, so every class can be written as
//! `N / Φ^j` with `N` free of `X_d`.

use std::collections::BTreeMap;

use crate::error::Result;

use super::{CaShift, Exponent, LaurentPoly};

/// `q ≡ numerator / Φ^phi_power (mod <X_d - Φ>)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TimeReduction {
    pub numerator: LaurentPoly,
    pub phi_power: u32,
}

/// Clears negative powers of `X_d` and substitutes `X_d <- Φ`.
pub fn substitute_time(q: &LaurentPoly, ca: &CaShift) -> Result<TimeReduction> {
    q.same_ring(ca.phi())?;
    let slices = q.time_slices();
    let (Some((&t_min, _)), Some((&t_max, _))) = (slices.first_key_value(), slices.last_key_value()) else {
        return Ok(TimeReduction {
            numerator: q.clone(),
            phi_power: 0,
        });
    };
    let j = (-t_min).max(0);
    let mut acc = LaurentPoly::zero(q.prime(), q.dim());
    // Horner in Φ over t = t_max, ..., -j.
    for t in (-j..=t_max).rev() {
        if !acc.is_zero() {
            acc = &acc * ca.phi();
        }
        if let Some(slice) = slices.get(&t) {
            acc = &acc + slice;
        }
    }
    Ok(TimeReduction {
        numerator: acc,
        phi_power: j as u32,
    })
}

/// Whether `q` lies in `<X_d - Φ>`.
pub fn ideal_member(q: &LaurentPoly, ca: &CaShift) -> Result<bool> {
    Ok(substitute_time(q, ca)?.numerator.is_zero())
}

/// Canonical form of the class of `q`: `N / Φ^j` with `j` minimal.
pub fn reduce_class(q: &LaurentPoly, ca: &CaShift) -> Result<TimeReduction> {
    let mut red = substitute_time(q, ca)?;
    if red.numerator.is_zero() {
        red.phi_power = 0;
        return Ok(red);
    }
    while red.phi_power > 0 {
        match divide_exact(&red.numerator, ca.phi()) {
            Some(q) => {
                red.numerator = q;
                red.phi_power -= 1;
            }
            None => break,
        }
    }
    Ok(red)
}

impl TimeReduction {
    /// A polynomial in the class: `N * X_d^-j`.
    pub fn representative(&self) -> LaurentPoly {
        let d = self.numerator.dim();
        self.numerator
            .shift(&Exponent::zero(d).with_last(-(self.phi_power as i64)))
    }
}

/// Exact division in the Laurent polynomial ring, `None` when `b` does not
/// divide `a`.
pub fn divide_exact(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    assert!(!b.is_zero(), "division by zero polynomial");
    if a.is_zero() {
        return Some(a.clone());
    }
    let p = a.prime();
    let (a_min, b_min) = (a.min_exponent()?, b.min_exponent()?);
    let mut rem: BTreeMap<Exponent, u32> = a.terms().map(|(e, c)| (e.sub(&a_min), c)).collect();
    let divisor: Vec<(Exponent, u32)> = b.terms().map(|(e, c)| (e.sub(&b_min), c)).collect();
    let (lead_e, lead_c) = divisor.last().cloned()?;
    let lead_inv = p.inv(lead_c);
    let mut quotient = LaurentPoly::zero(p, a.dim());
    while let Some((e, &c)) = rem.last_key_value() {
        let qe = e.sub(&lead_e);
        if qe.coords().iter().any(|&x| x < 0) {
            return None;
        }
        let qc = p.mul(c, lead_inv);
        for (de, dc) in &divisor {
            let key = de.add(&qe);
            let v = p.sub(rem.get(&key).copied().unwrap_or(0), p.mul(qc, *dc));
            if v == 0 {
                rem.remove(&key);
            } else {
                rem.insert(key, v);
            }
        }
        quotient.add_term(qe, qc);
    }
    Some(quotient.shift(&a_min.sub(&b_min)))
}
