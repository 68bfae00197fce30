use std::fmt;

use crate::error::{Error, Result};

use super::{Exponent, LaurentPoly, Shape};

/// A linear cellular automaton shift: the annihilator is `X_d - Φ` with Φ
/// free of the time variable `X_d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CaShift {
    phi: LaurentPoly,
    annihilator: LaurentPoly,
}

impl CaShift {
    pub fn new(phi: LaurentPoly) -> Result<Self> {
        let d = phi.dim();
        if d < 2 {
            return Err(Error::Dimension(d));
        }
        if let Some((e, _)) = phi.terms().find(|(e, _)| e.last() != 0) {
            return Err(Error::NotCaForm(format!(
                "update polynomial has term {e} involving x{d}"
            )));
        }
        if phi.len() < 2 {
            return Err(Error::TooFewTerms(phi.len()));
        }
        let annihilator = &LaurentPoly::var(phi.prime(), d, d - 1) - &phi;
        Ok(CaShift { phi, annihilator })
    }

    pub fn prime(&self) -> crate::field::Prime {
        self.phi.prime()
    }

    pub fn dim(&self) -> usize {
        self.phi.dim()
    }

    /// The update polynomial Φ.
    pub fn phi(&self) -> &LaurentPoly {
        &self.phi
    }

    /// `P = X_d - Φ`.
    pub fn annihilator(&self) -> &LaurentPoly {
        &self.annihilator
    }

    pub fn shape(&self) -> Shape {
        self.annihilator.shape().expect("annihilator is nonzero")
    }
}

/// Coordinate change found by [`ca_normalize`]: with `R` the axis
/// reflection given by `mask`, `unit * X^shift * R(input) = X_d - Φ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CaTransform {
    pub mask: u32,
    pub unit: u32,
    pub shift: Exponent,
}

impl CaTransform {
    pub fn inverted_axes(&self) -> Vec<usize> {
        (0..self.shift.dim())
            .filter(|i| self.mask >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }

    /// Undoes the transform, mapping the annihilator back to the input.
    pub fn recover(&self, annihilator: &LaurentPoly) -> LaurentPoly {
        let p = annihilator.prime();
        annihilator
            .scale(p.inv(self.unit))
            .shift(&self.shift.neg())
            .reflect(self.mask)
    }
}

impl fmt::Display for CaTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let axes = self.inverted_axes();
        let mut parts = Vec::new();
        match axes.len() {
            0 => {}
            1 => parts.push(format!("invert axis {}", axes[0])),
            _ => parts.push(format!(
                "invert axes {}",
                axes.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
            )),
        }
        if self.unit != 1 {
            parts.push(format!("scale by {}", self.unit));
        }
        if !self.shift.is_zero() {
            parts.push(format!("multiply by X^{}", self.shift));
        }
        if parts.is_empty() {
            write!(f, "identity")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

/// Searches axis reflections and monomial unit multiples for a
/// representation of `a` as `X_d - Φ`.
///
/// Reflections are tried in increasing mask order, so the identity wins
/// when it works.
pub fn ca_normalize(a: &LaurentPoly) -> Result<(CaShift, CaTransform)> {
    let d = a.dim();
    if d < 2 {
        return Err(Error::Dimension(d));
    }
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = a.prime();
    let mut short = None;
    for mask in 0..(1u32 << d) {
        let b = a.reflect(mask);
        let slices = b.time_slices();
        if slices.len() != 2 {
            continue;
        }
        let mut it = slices.iter();
        let (&t_low, low) = it.next().expect("two slices");
        let (&t_high, high) = it.next().expect("two slices");
        if t_high != t_low + 1 || !high.is_monomial() {
            continue;
        }
        let (top, c) = high.terms().next().expect("monomial");
        let top = top.with_last(t_high);
        let unit = p.inv(c);
        let shift = Exponent::unit(d, d - 1).sub(&top);
        // Φ = -(unit * X^shift * low * X_d^t_low)
        let phi = -low
            .shift(&Exponent::zero(d).with_last(t_low))
            .shift(&shift)
            .scale(unit);
        if phi.len() < 2 {
            short.get_or_insert(phi.len());
            continue;
        }
        let ca = CaShift::new(phi)?;
        return Ok((ca, CaTransform { mask, unit, shift }));
    }
    match short {
        Some(n) => Err(Error::TooFewTerms(n)),
        None => Err(Error::NotCaForm(format!(
            "no reflection of {a} has a single leading monomial in x{d} over one lower layer"
        ))),
    }
}

/// Constants `c` with `c * P(1, ..., 1) = 0`, i.e. the constant points of
/// the shift.
pub fn constant_points(ca: &CaShift) -> Vec<u32> {
    let p = ca.prime();
    if ca.annihilator().eval_at_ones() == 0 {
        (0..p.get()).collect()
    } else {
        vec![0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Prime;
    use crate::laurent::parse_poly;

    fn poly(s: &str, p: u64, d: usize) -> LaurentPoly {
        parse_poly(s, Prime::new(p).unwrap(), d).unwrap()
    }

    #[test]
    fn ledrappier_needs_time_reflection() {
        let a = poly("1+x1^-1+x2^-1", 2, 2);
        let (ca, t) = ca_normalize(&a).unwrap();
        assert_eq!(ca.phi(), &poly("1+x1^-1", 2, 2));
        assert_eq!(t.to_string(), "invert axis 2");
        assert_eq!(t.recover(ca.annihilator()), a);
    }

    #[test]
    fn already_in_form() {
        let a = poly("x2-1-x1", 2, 2);
        let (ca, t) = ca_normalize(&a).unwrap();
        assert_eq!(ca.phi(), &poly("1+x1", 2, 2));
        assert_eq!(t.to_string(), "identity");
    }

    #[test]
    fn unit_and_monomial_are_recorded() {
        let a = poly("3*x1*x2^2 + x1^2*x2 + x2", 5, 2);
        let (ca, t) = ca_normalize(&a).unwrap();
        assert_eq!(t.unit, 2);
        assert_eq!(t.recover(ca.annihilator()), a);
        assert!(ca.phi().terms().all(|(e, _)| e.last() == 0));
    }

    #[test]
    fn rejects_non_ca_polynomials() {
        assert!(matches!(
            ca_normalize(&poly("1+x1+x1^2", 2, 2)),
            Err(Error::NotCaForm(_))
        ));
        assert!(matches!(
            ca_normalize(&poly("x2+x1", 2, 2)),
            Err(Error::TooFewTerms(1))
        ));
        assert!(matches!(
            ca_normalize(&poly("x2^2+x2+1", 2, 2)),
            Err(Error::NotCaForm(_))
        ));
        assert_eq!(
            ca_normalize(&LaurentPoly::zero(Prime::new(2).unwrap(), 2)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn constant_points_examples() {
        let c = |s| CaShift::new(poly(s, 2, 2)).unwrap();
        assert_eq!(constant_points(&c("1+x1")), vec![0]);
        assert_eq!(constant_points(&c("1+x1+x1^2")), vec![0, 1]);
        assert_eq!(constant_points(&c("1+x1^-1")), vec![0]);
        let five = CaShift::new(poly("1+x1", 5, 2)).unwrap();
        assert_eq!(constant_points(&five), vec![0]);
        // Φ(1) = 6 = 1 (mod 5), so P(1) = 0
        let hit = CaShift::new(poly("3+3*x1", 5, 2)).unwrap();
        assert_eq!(constant_points(&hit), vec![0, 1, 2, 3, 4]);
    }
}
