//! Exhaustive search for equivariant local rules.
//!
//! For `W = ∪_{n ∈ S(Q)} (S - n)` the rule maps `P^⊥` into `Q^⊥` iff
//! `Σ_n c_Q(n) γ(w|_{S-n}) = 0` for every `w ∈ L_W`. Only the distinct
//! tuples `(w|_{S-n})_n` matter; they form the image of a linear map on
//! `L_W` and are enumerated from its echelon basis.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{budget, Error, Result};
use crate::laurent::{CaShift, Exponent, LaurentPoly, Shape};
use crate::linalg::echelon;
use crate::shift::{language, Budgets, LanguageSubspace, Window};

use super::{additivity_check, LocalRule};

/// Distinct constraint tuples enumerated by the equivariance test.
pub const MAX_CONSTRAINTS: u128 = 1 << 20;

/// The linear conditions on a rule table: for every tuple `t`,
/// `Σ_j coeffs[j] · γ[t[j]] = 0`.
#[derive(Clone, Debug)]
pub struct Constraints {
    pub table_len: usize,
    pub coeffs: Vec<u32>,
    pub tuples: Vec<Vec<usize>>,
}

impl Constraints {
    fn build(lang_s: &LanguageSubspace, ca_p: &CaShift, ca_q: &CaShift, budgets: &Budgets) -> Result<Self> {
        ca_p.phi().same_ring(ca_q.phi())?;
        let p = ca_p.prime();
        let cells = lang_s.window().cells();
        let offsets: Vec<(Exponent, u32)> = ca_q.annihilator().terms().map(|(n, c)| (n.clone(), c)).collect();
        let w = Window::new(
            offsets
                .iter()
                .flat_map(|(n, _)| cells.iter().map(move |s| s.sub(n))),
        );
        let lang_w = language(ca_p, &w, budgets)?;
        let basis_s = lang_s.basis();
        let r = basis_s.rank();
        let cols: Vec<Vec<usize>> = offsets
            .iter()
            .map(|(n, _)| {
                cells
                    .iter()
                    .map(|s| w.index_of(&s.sub(n)).expect("cell in W"))
                    .collect()
            })
            .collect();
        let images: Vec<Vec<u32>> = lang_w
            .basis()
            .rows()
            .iter()
            .map(|row| {
                let mut v = Vec::with_capacity(r * cols.len());
                for c in &cols {
                    let restricted: Vec<u32> = c.iter().map(|&i| row[i]).collect();
                    let coords = basis_s.coordinates(&restricted).ok_or_else(|| {
                        Error::Mismatch("rule language is not the language of the source shift".into())
                    })?;
                    v.extend(coords);
                }
                Ok(v)
            })
            .collect::<Result<_>>()?;
        let image = echelon(p, r * cols.len(), &images);
        let count = image.cardinality().unwrap_or(u128::MAX);
        budget("equivariance constraints", count, MAX_CONSTRAINTS)?;
        let tuples = (0..count as u64)
            .map(|i| {
                image
                    .element(i)
                    .chunks(r.max(1))
                    .take(cols.len())
                    .map(|ch| {
                        if r == 0 {
                            0
                        } else {
                            basis_s.coords_index(ch) as usize
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Constraints {
            table_len: lang_s.cardinality().unwrap_or(u128::MAX) as usize,
            coeffs: offsets.into_iter().map(|(_, c)| c).collect(),
            tuples,
        })
    }

    fn satisfied(&self, p: crate::Prime, table: &[u32]) -> bool {
        self.tuples.iter().all(|t| {
            t.iter()
                .zip(&self.coeffs)
                .fold(0, |acc, (&i, &c)| p.add(acc, p.mul(c, table[i])))
                == 0
        })
    }
}

fn check_language(rule: &LocalRule, ca_p: &CaShift, budgets: &Budgets) -> Result<()> {
    let expected = language(ca_p, rule.window(), budgets)?;
    if expected.basis() != rule.language().basis() {
        return Err(Error::Mismatch(
            "rule language is not the language of the source shift".into(),
        ));
    }
    Ok(())
}

/// Whether the sliding block code of `rule` maps `P^⊥` into `Q^⊥`.
pub fn equivariance_check(
    rule: &LocalRule,
    ca_p: &CaShift,
    ca_q: &CaShift,
    budgets: &Budgets,
) -> Result<bool> {
    check_language(rule, ca_p, budgets)?;
    let cons = Constraints::build(rule.language(), ca_p, ca_q, budgets)?;
    Ok(cons.satisfied(ca_p.prime(), rule.table()))
}

/// Produces every table with `γ(0) = 0` that satisfies the constraints,
/// in increasing order of the table read as a base-p number (entry `i`
/// is digit `i - 1`).
pub trait RuleEnumerator: Send + Sync {
    fn name(&self) -> &'static str;

    fn rules(&self, p: crate::Prime, cons: &Constraints, limit: u128) -> Result<Vec<Vec<u32>>>;
}

/// Tries all `p^(|L_S| - 1)` tables.
#[derive(Clone, Copy, Debug, Default)]
pub struct Exhaustive;

fn candidate_count(p: crate::Prime, table_len: usize) -> u128 {
    (p.get() as u128)
        .checked_pow(table_len.saturating_sub(1) as u32)
        .unwrap_or(u128::MAX)
}

impl RuleEnumerator for Exhaustive {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn rules(&self, p: crate::Prime, cons: &Constraints, limit: u128) -> Result<Vec<Vec<u32>>> {
        let count = candidate_count(p, cons.table_len);
        budget("candidate rules", count, limit)?;
        let base = p.get() as u64;
        Ok((0..count as u64)
            .into_par_iter()
            .filter_map(|mut idx| {
                let mut table = vec![0u32; cons.table_len];
                for slot in table.iter_mut().skip(1) {
                    *slot = (idx % base) as u32;
                    idx /= base;
                }
                cons.satisfied(p, &table).then_some(table)
            })
            .collect())
    }
}

/// Solves the constraints as a linear system and lists its solution space.
#[derive(Clone, Copy, Debug, Default)]
pub struct KernelEnumerator;

impl RuleEnumerator for KernelEnumerator {
    fn name(&self) -> &'static str {
        "kernel"
    }

    fn rules(&self, p: crate::Prime, cons: &Constraints, limit: u128) -> Result<Vec<Vec<u32>>> {
        let n = cons.table_len;
        let mut rows = Vec::with_capacity(cons.tuples.len() + 1);
        let mut origin = vec![0u32; n];
        origin[0] = 1;
        rows.push(origin);
        for t in &cons.tuples {
            let mut row = vec![0u32; n];
            for (&i, &c) in t.iter().zip(&cons.coeffs) {
                row[i] = p.add(row[i], c);
            }
            rows.push(row);
        }
        let kernel = echelon(p, n, &echelon(p, n, &rows).null_space());
        let count = kernel.cardinality().unwrap_or(u128::MAX);
        budget("equivariant rules", count, limit)?;
        let mut out: Vec<Vec<u32>> = (0..count as u64)
            .into_par_iter()
            .map(|i| kernel.element(i))
            .collect();
        out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        Ok(out)
    }
}

static EXHAUSTIVE: Exhaustive = Exhaustive;
static KERNEL: KernelEnumerator = KernelEnumerator;
static ENUMERATORS: [&dyn RuleEnumerator; 2] = [&EXHAUSTIVE, &KERNEL];

pub fn rule_enumerators() -> &'static [&'static dyn RuleEnumerator] {
    &ENUMERATORS
}

pub fn rule_enumerator(name: &str) -> Option<&'static dyn RuleEnumerator> {
    ENUMERATORS.iter().copied().find(|e| e.name() == name)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Cap on candidate tables (or on listed rules for `kernel`).
    pub budget: u128,
    pub enumerator: &'static str,
    pub budgets: Budgets,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 1 << 16,
            enumerator: "exhaustive",
            budgets: Budgets::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoundRule {
    pub rule: LocalRule,
    pub additive: bool,
    pub dual: Option<LaurentPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomSearchResult {
    pub shape: Shape,
    pub language_rank: usize,
    pub candidates: u128,
    pub constraints: usize,
    pub enumerator: &'static str,
    pub rules: Vec<FoundRule>,
    /// `S(P) ⊄ S(Q)`, in which case only the zero rule may occur.
    pub zero_only_expected: bool,
    /// False if that expectation is contradicted by the rules found.
    pub consistent: bool,
}

impl HomSearchResult {
    pub fn all_additive(&self) -> bool {
        self.rules.iter().all(|r| r.additive)
    }
}

/// Every equivariant rule on `shape` with `γ(0) = 0`, annotated with
/// additivity and, for additive rules, the dual polynomial.
pub fn hom_search(
    ca_p: &CaShift,
    ca_q: &CaShift,
    shape: &Shape,
    opts: &SearchOptions,
) -> Result<HomSearchResult> {
    let enumerator = rule_enumerator(opts.enumerator)
        .ok_or_else(|| Error::Invalid(format!("unknown rule enumerator {:?}", opts.enumerator)))?;
    let window = Window::from(shape);
    window.check_dim(ca_p.dim())?;
    let lang = language(ca_p, &window, &opts.budgets)?;
    let p = ca_p.prime();
    let cons = Constraints::build(&lang, ca_p, ca_q, &opts.budgets)?;
    let candidates = candidate_count(p, cons.table_len);
    budget("candidate rules", candidates, opts.budget)?;
    let rules = enumerator
        .rules(p, &cons, opts.budget)?
        .into_iter()
        .map(|table| {
            let rule = LocalRule::new(lang.clone(), table)?;
            let additive = additivity_check(&rule)?;
            let dual = additive.then(|| rule.dual_candidate());
            Ok(FoundRule { rule, additive, dual })
        })
        .collect::<Result<Vec<_>>>()?;
    let zero_only_expected = !ca_p.shape().is_subset(&ca_q.shape());
    let consistent = !zero_only_expected || rules.iter().all(|r| r.rule.is_zero());
    Ok(HomSearchResult {
        shape: shape.clone(),
        language_rank: lang.rank(),
        candidates,
        constraints: cons.tuples.len(),
        enumerator: enumerator.name(),
        rules,
        zero_only_expected,
        consistent,
    })
}
