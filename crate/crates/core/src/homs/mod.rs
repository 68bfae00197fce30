//! Sliding block codes between shifts and their algebraic duals.
//!
//! A local rule `γ: L_S -> F_p` induces `(φx)_k = γ(x|_{k+S})`, reading
//! `x|_{k+S}` as the configuration `s ↦ x_{k+s}` on `S`. An additive rule
//! `γ(C) = Σ a_s C(s)` is multiplication by `R = Σ a_s X^{-s}`.

mod dual;
mod functional;
mod search;

use serde::Serialize;

use crate::error::{budget, Error, Result};
use crate::laurent::{Exponent, LaurentPoly, Shape};
use crate::shift::{Configuration, LanguageSubspace, Window};

pub use dual::{
    aut_group, dual_hom_search, poly_map_check, verify_unit_pair, AutDescription, DualHom, FactorSource,
    TimeGenerator, UnitGenerator, MAX_BOUND,
};
pub use functional::{functional_eq_check, ConfigFamily, FunctionalEqReport};
pub use search::{
    equivariance_check, hom_search, rule_enumerator, rule_enumerators, Constraints, Exhaustive, FoundRule,
    HomSearchResult, KernelEnumerator, RuleEnumerator, SearchOptions,
};

/// Pairs examined by `additivity_check`.
pub const MAX_ADDITIVITY_PAIRS: u128 = 1 << 26;

/// A table `γ` on the language `L_S`, indexed by the enumeration order of
/// the echelon basis, with `γ(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalRule {
    #[serde(rename = "shape", serialize_with = "ser_window")]
    language: LanguageSubspace,
    table: Vec<u32>,
}

fn ser_window<S: serde::Serializer>(l: &LanguageSubspace, s: S) -> std::result::Result<S::Ok, S::Error> {
    l.window().serialize(s)
}

fn language_size(lang: &LanguageSubspace) -> Result<usize> {
    lang.cardinality()
        .filter(|&n| n <= 1 << 24)
        .map(|n| n as usize)
        .ok_or(Error::Budget {
            what: "local rule table",
            needed: lang.cardinality().unwrap_or(u128::MAX),
            limit: 1 << 24,
        })
}

impl LocalRule {
    pub fn new(language: LanguageSubspace, table: Vec<u32>) -> Result<Self> {
        let n = language_size(&language)?;
        if table.len() != n {
            return Err(Error::Invalid(format!(
                "table has {} entries, language has {n}",
                table.len()
            )));
        }
        if table[0] != 0 {
            return Err(Error::Invalid("local rule must send 0 to 0".into()));
        }
        let p = language.prime().get();
        if let Some(v) = table.iter().find(|&&v| v >= p) {
            return Err(Error::Invalid(format!("value {v} is not a residue mod {p}")));
        }
        Ok(LocalRule { language, table })
    }

    pub fn zero(language: LanguageSubspace) -> Result<Self> {
        let n = language_size(&language)?;
        Ok(LocalRule {
            language,
            table: vec![0; n],
        })
    }

    /// Tabulates `f` on the language; `f` sees the values in window order.
    pub fn from_fn<F: Fn(&[u32]) -> u32>(language: LanguageSubspace, f: F) -> Result<Self> {
        let n = language_size(&language)?;
        let p = language.prime();
        let table = (0..n as u64)
            .map(|i| p.reduce(f(&language.element(i)) as u64))
            .collect();
        LocalRule::new(language, table)
    }

    /// `γ(C) = Σ a_s C(s)` for the given `(s, a_s)`.
    pub fn linear(language: LanguageSubspace, coeffs: &[(Exponent, u32)]) -> Result<Self> {
        let idx = coeffs
            .iter()
            .map(|(s, a)| {
                language
                    .window()
                    .index_of(s)
                    .map(|i| (i, *a))
                    .ok_or_else(|| Error::WindowTooSmall(format!("cell {s} not in rule shape")))
            })
            .collect::<Result<Vec<_>>>()?;
        let p = language.prime();
        LocalRule::from_fn(language, |c| {
            idx.iter()
                .fold(0, |acc, &(i, a)| p.add(acc, p.mul(p.reduce(a as u64), c[i])))
        })
    }

    pub fn language(&self) -> &LanguageSubspace {
        &self.language
    }

    pub fn window(&self) -> &Window {
        self.language.window()
    }

    pub fn shape(&self) -> Shape {
        self.window().shape()
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&v| v == 0)
    }

    /// `γ(C)` for `C` given in window order; `None` if `C` is not in `L_S`.
    pub fn eval(&self, values: &[u32]) -> Option<u32> {
        self.language.index_of(values).map(|i| self.table[i as usize])
    }

    /// The polynomial `Σ γ(b_i) X^{-s_i}` over pivot cells `s_i`; it agrees
    /// with the rule on `L_S` exactly when the rule is additive.
    pub fn dual_candidate(&self) -> LaurentPoly {
        let basis = self.language.basis();
        let p = self.language.prime();
        let d = self.window().cells().first().map_or(1, Exponent::dim);
        let mut unit = vec![0u32; basis.rank()];
        let terms = self.language.pivot_cells().into_iter().enumerate().map(|(i, s)| {
            unit.iter_mut().for_each(|u| *u = 0);
            unit[i] = 1;
            (s.neg(), self.table[basis.coords_index(&unit) as usize] as i64)
        });
        LaurentPoly::from_terms(p, d, terms.collect::<Vec<_>>())
    }
}

/// Applies the rule at every `k` with `k + S ⊆ W`.
pub fn apply_local_rule(rule: &LocalRule, x: &Configuration) -> Result<Configuration> {
    let cells = rule.window().cells();
    let Some(anchor) = cells.first() else {
        return Err(Error::Invalid("empty rule shape".into()));
    };
    let mut out = Vec::new();
    for w in x.window().cells() {
        let k = w.sub(anchor);
        let values: Option<Vec<u32>> = cells.iter().map(|s| x.get(&k.add(s))).collect();
        let Some(values) = values else { continue };
        let v = rule.eval(&values).ok_or_else(|| {
            Error::NotInLanguage(format!("restriction at {k} is not in the rule's language"))
        })?;
        out.push((k, v));
    }
    if out.is_empty() {
        return Err(Error::WindowTooSmall(
            "no translate of the rule shape fits in the window".into(),
        ));
    }
    Configuration::from_pairs(out, rule.language.prime())
}

/// Exhaustive check of `γ(C + D) = γ(C) + γ(D)` over all pairs.
pub fn additivity_check(rule: &LocalRule) -> Result<bool> {
    let n = rule.table.len() as u64;
    budget(
        "additivity pairs",
        (n as u128) * (n as u128),
        MAX_ADDITIVITY_PAIRS,
    )?;
    let basis = rule.language.basis();
    let p = rule.language.prime();
    let coords: Vec<Vec<u32>> = (0..n).map(|i| basis.index_coords(i)).collect();
    for i in 0..n as usize {
        for j in i..n as usize {
            let sum: Vec<u32> = coords[i]
                .iter()
                .zip(&coords[j])
                .map(|(&a, &b)| p.add(a, b))
                .collect();
            let k = basis.coords_index(&sum) as usize;
            if rule.table[k] != p.add(rule.table[i], rule.table[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
