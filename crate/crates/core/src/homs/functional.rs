//! The functional equation `γ(Σ c_Φ(n) C(n)) = Σ c_Ψ(n) γ(C(n))` for
//! families `C: S(Φ) ∪ S(Ψ) -> L_S`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::laurent::{CaShift, Exponent};
use crate::shift::Configuration;

use super::LocalRule;

/// An assignment of language elements to exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ConfigFamily(pub Vec<(Exponent, Configuration)>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionalEqReport {
    pub holds: bool,
    pub exhaustive: bool,
    pub checked: u64,
    pub witness: Option<ConfigFamily>,
}

/// Checks every family when there are at most `trials` of them, otherwise
/// `trials` families drawn from a generator seeded with `seed`.
pub fn functional_eq_check(
    rule: &LocalRule,
    ca_p: &CaShift,
    ca_q: &CaShift,
    trials: u64,
    seed: u64,
) -> Result<FunctionalEqReport> {
    ca_p.phi().same_ring(ca_q.phi())?;
    let p = ca_p.prime();
    let support: BTreeSet<&Exponent> = ca_p
        .phi()
        .terms()
        .chain(ca_q.phi().terms())
        .map(|(e, _)| e)
        .collect();
    let support: Vec<&Exponent> = support.into_iter().collect();
    let c_phi: Vec<u32> = support.iter().map(|e| ca_p.phi().coeff(e)).collect();
    let c_psi: Vec<u32> = support.iter().map(|e| ca_q.phi().coeff(e)).collect();
    let basis = rule.language().basis();
    let size = rule.table().len() as u64;
    let total = (size as u128)
        .checked_pow(support.len() as u32)
        .unwrap_or(u128::MAX);
    let exhaustive = total <= trials as u128;
    let count = if exhaustive { total as u64 } else { trials };
    let coords: Vec<Vec<u32>> = (0..size).map(|i| basis.index_coords(i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut family = vec![0u64; support.len()];
    for step in 0..count {
        if exhaustive {
            let mut k = step;
            for f in family.iter_mut() {
                *f = k % size;
                k /= size;
            }
        } else {
            family.iter_mut().for_each(|f| *f = rng.gen_range(0..size));
        }
        let mut sum = vec![0u32; basis.rank()];
        let mut rhs = 0;
        for ((&i, &a), &b) in family.iter().zip(&c_phi).zip(&c_psi) {
            for (s, &x) in sum.iter_mut().zip(&coords[i as usize]) {
                *s = p.add(*s, p.mul(a, x));
            }
            rhs = p.add(rhs, p.mul(b, rule.table()[i as usize]));
        }
        let lhs = rule.table()[basis.coords_index(&sum) as usize];
        if lhs != rhs {
            let witness = support
                .iter()
                .zip(&family)
                .map(|(&e, &i)| {
                    let values = rule.language().element(i);
                    Ok((e.clone(), Configuration::new(rule.window().clone(), values, p)?))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(FunctionalEqReport {
                holds: false,
                exhaustive,
                checked: step + 1,
                witness: Some(ConfigFamily(witness)),
            });
        }
    }
    Ok(FunctionalEqReport {
        holds: true,
        exhaustive,
        checked: count,
        witness: None,
    })
}
