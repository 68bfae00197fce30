use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::Prime;

use super::{Exponent, Shape};

pub const MAX_DIM: usize = 4;

/// A Laurent polynomial over F_p in `d` variables.
///
/// Terms live in a `BTreeMap` keyed by exponent; zero coefficients are never
/// stored, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    p: Prime,
    d: usize,
    terms: BTreeMap<Exponent, u32>,
}

/// Serialized in the polynomial grammar, e.g. `"1+x1^-1"`.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub(crate) fn check_dim(d: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&d) {
        Ok(())
    } else {
        Err(Error::Dimension(d))
    }
}

impl LaurentPoly {
    pub fn zero(p: Prime, d: usize) -> Self {
        LaurentPoly {
            p,
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: Prime, d: usize, c: i64) -> Self {
        Self::monomial(p, Exponent::zero(d), c)
    }

    pub fn one(p: Prime, d: usize) -> Self {
        Self::constant(p, d, 1)
    }

    pub fn monomial(p: Prime, e: Exponent, c: i64) -> Self {
        let d = e.dim();
        let mut out = Self::zero(p, d);
        out.add_term(e, p.reduce_signed(c));
        out
    }

    /// `X_{axis+1}` (0-based axis).
    pub fn var(p: Prime, d: usize, axis: usize) -> Self {
        Self::monomial(p, Exponent::unit(d, axis), 1)
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, summing
    /// repeated exponents.
    pub fn from_terms<I>(p: Prime, d: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, i64)>,
    {
        let mut out = Self::zero(p, d);
        for (e, c) in terms {
            assert_eq!(e.dim(), d, "exponent {e} has the wrong dimension");
            out.add_term(e, p.reduce_signed(c));
        }
        out
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.p;
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = p.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exponent) -> u32 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, u32)> + '_ {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn shape(&self) -> Result<Shape> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Shape::from_points(self.terms.keys().cloned()))
    }

    pub fn same_ring(&self, other: &LaurentPoly) -> Result<()> {
        if self.p != other.p {
            return Err(Error::Mismatch(format!(
                "characteristic {} vs {}",
                self.p, other.p
            )));
        }
        if self.d != other.d {
            return Err(Error::Mismatch(format!("dimension {} vs {}", self.d, other.d)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.checked_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> LaurentPoly {
        let p = self.p;
        LaurentPoly {
            p,
            d: self.d,
            terms: self.terms.iter().map(|(e, &c)| (e.clone(), p.neg(c))).collect(),
        }
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.same_ring(other)?;
        let p = self.p;
        let modulus = p.get() as u64;
        // Accumulate unreduced products; each is < 2^32, so reduce before
        // the running sum could overflow u64.
        let mut acc: HashMap<Exponent, u64> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let slot = acc.entry(ea.add(eb)).or_insert(0);
                *slot += ca as u64 * cb as u64;
                if *slot >= 1 << 62 {
                    *slot %= modulus;
                }
            }
        }
        let terms = acc
            .into_iter()
            .filter_map(|(e, c)| {
                let c = (c % modulus) as u32;
                (c != 0).then_some((e, c))
            })
            .collect();
        Ok(LaurentPoly { p, d: self.d, terms })
    }

    pub fn scale(&self, c: u32) -> LaurentPoly {
        let p = self.p;
        let c = c % p.get();
        if c == 0 {
            return Self::zero(p, self.d);
        }
        LaurentPoly {
            p,
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(e, &a)| (e.clone(), p.mul(a, c)))
                .collect(),
        }
    }

    /// Multiplication by the monomial `X^shift`.
    pub fn shift(&self, shift: &Exponent) -> LaurentPoly {
        LaurentPoly {
            p: self.p,
            d: self.d,
            terms: self.terms.iter().map(|(e, &c)| (e.add(shift), c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> LaurentPoly {
        let mut base = self.clone();
        let mut acc = Self::one(self.p, self.d);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^(p^e)`, computed by scaling exponents (coefficients in F_p are
    /// fixed by Frobenius).
    pub fn frobenius_power(&self, e: u32) -> Result<LaurentPoly> {
        let factor = (self.p.get() as i64).checked_pow(e).ok_or(Error::Overflow)?;
        let terms = self
            .terms
            .iter()
            .map(|(x, &c)| x.checked_scale(factor).map(|x| (x, c)).ok_or(Error::Overflow))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(LaurentPoly {
            p: self.p,
            d: self.d,
            terms,
        })
    }

    /// Substitutes `X_i -> X_i^{-1}` for every axis whose bit is set in `mask`.
    pub fn reflect(&self, mask: u32) -> LaurentPoly {
        LaurentPoly {
            p: self.p,
            d: self.d,
            terms: self.terms.iter().map(|(e, &c)| (e.reflect(mask), c)).collect(),
        }
    }

    /// Sum of all coefficients, i.e. the value at (1, ..., 1).
    pub fn eval_at_ones(&self) -> u32 {
        self.terms.values().fold(0, |acc, &c| self.p.add(acc, c))
    }

    /// Componentwise minimum of the support.
    pub fn min_exponent(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| {
            acc.coords()
                .iter()
                .zip(e.coords())
                .map(|(a, b)| *a.min(b))
                .collect::<Vec<_>>()
                .into()
        }))
    }

    /// Splits by the final coordinate: `self = sum_t slice_t * X_d^t`, each
    /// slice having final exponent 0.
    pub fn time_slices(&self) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e, &c) in &self.terms {
            out.entry(e.last())
                .or_insert_with(|| Self::zero(self.p, self.d))
                .terms
                .insert(e.with_last(0), c);
        }
        out
    }

    /// Variables (0-based) occurring with a nonzero exponent.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.d)
            .filter(|&i| self.terms.keys().any(|e| e[i] != 0))
            .collect()
    }

    /// Leading term in lexicographic order (largest exponent).
    pub fn leading(&self) -> Option<(&Exponent, u32)> {
        self.terms.iter().next_back().map(|(e, &c)| (e, c))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;

            /// Panics when the operands live in different rings; use the
            /// `checked_*` form to get an error instead.
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("operands in different rings")
            }
        }

        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;

            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}
