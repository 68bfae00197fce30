use super::{Exponent, LaurentPoly};

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// If the support of `a` lies on one line, returns the primitive direction
/// `m` (first nonzero coordinate positive) and the step `g` such that `a` is
/// a monomial times a polynomial in `X^(g m)`.
///
/// A single monomial (or zero) has no difference set and yields `None`.
pub fn collinear_support(a: &LaurentPoly) -> Option<(Exponent, i64)> {
    let mut points = a.terms().map(|(e, _)| e);
    let base = points.next()?;
    let diffs: Vec<Exponent> = points.map(|e| e.sub(base)).collect();
    let first = diffs.first()?;
    let g = first.coords().iter().fold(0, |acc, &c| gcd(acc, c));
    let mut dir = first.scale(1);
    let sign = if first.coords().iter().find(|&&c| c != 0).copied().unwrap_or(1) < 0 {
        -1
    } else {
        1
    };
    dir = Exponent::from(dir.coords().iter().map(|c| sign * c / g).collect::<Vec<_>>());
    let axis = dir.coords().iter().position(|&c| c != 0)?;
    let mut step = 0;
    for v in &diffs {
        let lambda = v[axis] / dir[axis];
        if dir.scale(lambda) != *v {
            return None;
        }
        step = gcd(step, lambda);
    }
    Some((dir, step))
}
