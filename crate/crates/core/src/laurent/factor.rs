//! Complete factorization of univariate polynomials over F_p:
//! square-free decomposition, distinct-degree splitting, then
//! equal-degree splitting (Cantor-Zassenhaus, with the trace map in
//! characteristic 2).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Prime;

use super::{Exponent, LaurentPoly};

/// `input = unit * X^monomial * prod(factor^multiplicity)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    pub unit: u32,
    pub monomial: Exponent,
    /// Monic irreducible factors with nonzero constant term, sorted by
    /// degree then coefficients.
    pub factors: Vec<(LaurentPoly, u32)>,
}

impl Factorization {
    pub fn product(&self, p: Prime) -> LaurentPoly {
        let mut acc = LaurentPoly::monomial(p, self.monomial.clone(), self.unit as i64);
        for (f, k) in &self.factors {
            acc = &acc * &f.pow(*k as u64);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Dense univariate polynomial, coefficients low to high, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub(crate) struct Dense(pub(crate) Vec<u32>);

impl Dense {
    fn trim(mut v: Vec<u32>) -> Dense {
        while v.last() == Some(&0) {
            v.pop();
        }
        Dense(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn one() -> Dense {
        Dense(vec![1])
    }

    fn x() -> Dense {
        Dense(vec![0, 1])
    }

    fn lead(&self) -> u32 {
        *self.0.last().expect("nonzero polynomial")
    }

    fn monic(&self, p: Prime) -> Dense {
        if self.is_zero() {
            return self.clone();
        }
        let inv = p.inv(self.lead());
        Dense(self.0.iter().map(|&c| p.mul(c, inv)).collect())
    }

    fn sub(&self, other: &Dense, p: Prime) -> Dense {
        let n = self.0.len().max(other.0.len());
        Dense::trim(
            (0..n)
                .map(|i| {
                    p.sub(
                        self.0.get(i).copied().unwrap_or(0),
                        other.0.get(i).copied().unwrap_or(0),
                    )
                })
                .collect(),
        )
    }

    fn add(&self, other: &Dense, p: Prime) -> Dense {
        let n = self.0.len().max(other.0.len());
        Dense::trim(
            (0..n)
                .map(|i| {
                    p.add(
                        self.0.get(i).copied().unwrap_or(0),
                        other.0.get(i).copied().unwrap_or(0),
                    )
                })
                .collect(),
        )
    }

    fn mul(&self, other: &Dense, p: Prime) -> Dense {
        if self.is_zero() || other.is_zero() {
            return Dense(Vec::new());
        }
        let m = p.get() as u64;
        let mut out = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % m;
            }
        }
        Dense::trim(out.into_iter().map(|c| c as u32).collect())
    }

    fn divrem(&self, other: &Dense, p: Prime) -> (Dense, Dense) {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.0.len() < other.0.len() {
            return (Dense(Vec::new()), self.clone());
        }
        let mut rem = self.0.clone();
        let inv = p.inv(other.lead());
        let shift_max = self.0.len() - other.0.len();
        let mut quot = vec![0u32; shift_max + 1];
        for s in (0..=shift_max).rev() {
            let c = p.mul(rem[s + other.0.len() - 1], inv);
            if c == 0 {
                continue;
            }
            quot[s] = c;
            for (j, &b) in other.0.iter().enumerate() {
                rem[s + j] = p.sub(rem[s + j], p.mul(c, b));
            }
        }
        (Dense::trim(quot), Dense::trim(rem))
    }

    fn rem(&self, other: &Dense, p: Prime) -> Dense {
        self.divrem(other, p).1
    }

    fn gcd(&self, other: &Dense, p: Prime) -> Dense {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p)
    }

    fn derivative(&self, p: Prime) -> Dense {
        Dense::trim(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| p.mul(c, p.reduce(i as u64)))
                .collect(),
        )
    }

    fn powmod(&self, mut e: u64, modulus: &Dense, p: Prime) -> Dense {
        let mut base = self.rem(modulus, p);
        let mut acc = Dense::one().rem(modulus, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, p).rem(modulus, p);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, p).rem(modulus, p);
            }
        }
        acc
    }

    /// p-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self, p: Prime) -> Dense {
        let step = p.get() as usize;
        Dense::trim(self.0.iter().step_by(step).copied().collect())
    }
}

/// Square-free decomposition of a monic polynomial: pairs (g, k) with g
/// square-free and `f = prod g^k`.
fn square_free(f: &Dense, p: Prime) -> Vec<(Dense, u32)> {
    let mut out = Vec::new();
    let mut w_mult = 1u32;
    let mut f = f.clone();
    loop {
        if f.degree() == 0 {
            break;
        }
        let df = f.derivative(p);
        if df.is_zero() {
            f = f.pth_root(p);
            w_mult *= p.get();
            continue;
        }
        let mut c = f.gcd(&df, p);
        let mut w = f.divrem(&c, p).0;
        let mut i = 1u32;
        while w.degree() > 0 {
            let y = w.gcd(&c, p);
            let z = w.divrem(&y, p).0;
            if z.degree() > 0 {
                out.push((z.monic(p), i * w_mult));
            }
            i += 1;
            w = y;
            c = c.divrem(&w, p).0;
        }
        if c.degree() == 0 {
            break;
        }
        f = c.pth_root(p);
        w_mult *= p.get();
    }
    out
}

/// Distinct-degree factorization of a square-free monic polynomial.
fn distinct_degree(f: &Dense, p: Prime) -> Vec<(Dense, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = Dense::x();
    let mut deg = 1;
    while rest.degree() >= 2 * deg {
        h = h.powmod(p.get() as u64, &rest, p);
        let g = rest.gcd(&h.sub(&Dense::x(), p), p);
        if g.degree() > 0 {
            rest = rest.divrem(&g, p).0;
            h = h.rem(&rest, p);
            out.push((g, deg));
        }
        deg += 1;
    }
    if rest.degree() > 0 {
        let k = rest.degree();
        out.push((rest, k));
    }
    out
}

/// Splits a product of distinct irreducibles of degree `deg`.
fn equal_degree(f: &Dense, deg: usize, p: Prime, rng: &mut ChaCha8Rng) -> Vec<Dense> {
    if f.degree() == deg {
        return vec![f.monic(p)];
    }
    loop {
        let a = Dense::trim((0..f.degree()).map(|_| rng.gen_range(0..p.get())).collect());
        if a.degree() == 0 {
            continue;
        }
        let candidate = if p.get() == 2 {
            // trace map a + a^2 + ... + a^(2^(deg-1))
            let mut t = a.rem(f, p);
            let mut acc = t.clone();
            for _ in 1..deg {
                t = t.mul(&t, p).rem(f, p);
                acc = acc.add(&t, p);
            }
            acc
        } else {
            // a^((p^deg - 1) / 2) = (a^(1 + p + ... + p^(deg-1)))^((p-1)/2)
            let mut frob = a.rem(f, p);
            let mut norm = frob.clone();
            for _ in 1..deg {
                frob = frob.powmod(p.get() as u64, f, p);
                norm = norm.mul(&frob, p).rem(f, p);
            }
            norm.powmod((p.get() as u64 - 1) / 2, f, p).sub(&Dense::one(), p)
        };
        let g = f.gcd(&candidate, p);
        if g.degree() > 0 && g.degree() < f.degree() {
            let h = f.divrem(&g, p).0;
            let mut out = equal_degree(&g, deg, p, rng);
            out.extend(equal_degree(&h.monic(p), deg, p, rng));
            return out;
        }
    }
}

fn seed_for(f: &Dense) -> u64 {
    // FNV-1a over the coefficients
    f.0.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &c| {
        (h ^ c as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Factors a nonzero polynomial into sorted monic (factor, multiplicity) pairs.
pub(crate) fn factor_dense(f: &Dense, p: Prime) -> Vec<(Dense, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(f));
    let mut out = Vec::new();
    for (g, k) in square_free(&f.monic(p), p) {
        for (part, deg) in distinct_degree(&g, p) {
            for h in equal_degree(&part, deg, p, &mut rng) {
                out.push((h, k));
            }
        }
    }
    out.sort_by(|a, b| (a.0.degree(), &a.0 .0).cmp(&(b.0.degree(), &b.0 .0)));
    out
}

/// Irreducible factorization of a nonzero univariate Laurent polynomial.
pub fn univariate_factor(a: &LaurentPoly) -> Result<Factorization> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let vars = a.variables();
    if vars.len() > 1 {
        return Err(Error::NotUnivariate);
    }
    let p = a.prime();
    let d = a.dim();
    let axis = vars.first().copied().unwrap_or(0);
    let low = a.min_exponent().expect("nonzero");
    let mut coeffs = Vec::new();
    for (e, c) in a.terms() {
        let k = (e[axis] - low[axis]) as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, 0);
        }
        coeffs[k] = c;
    }
    let dense = Dense::trim(coeffs);
    let unit = dense.lead();
    let factors = factor_dense(&dense, p)
        .into_iter()
        .map(|(f, k)| {
            let poly = LaurentPoly::from_terms(
                p,
                d,
                f.0.iter()
                    .enumerate()
                    .map(|(i, &c)| (Exponent::unit(d, axis).scale(i as i64), c as i64)),
            );
            (poly, k)
        })
        .collect();
    Ok(Factorization {
        unit,
        monomial: low,
        factors,
    })
}
