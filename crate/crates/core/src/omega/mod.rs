//! Truncated MacMahon partition analysis.
//!
//! An expression is `numerator / prod (1 - m_i)` over retained variables plus
//! eliminated variables (`λ`, `μ`). Expansion enumerates the multiplicity
//! tuple of the geometric series, one numerator term at a time, and keeps a
//! product term only when every eliminated exponent satisfies its mode:
//! `>= 0` for `Ω≥`, `== 0` for `Ω_{μ=0}`. Eliminated variables are then set
//! to 1.
//!
//! Truncation is by weighted degree in the retained variables. Every factor
//! must have strictly positive weight, so the tuples with weighted degree at
//! most `N` form a finite set and the result is exact through degree `N`.

mod closed;
mod crude;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::polynomial::{weighted_degree, Coeff, Exponents, PolyError, SparsePoly, VarTable};

pub use closed::{closed_form, ClosedFormId, CLOSED_FORMS_JSON};
pub use crude::{
    build_crude_f, build_crude_h, crude_weights_f, crude_weights_h, Affine, ConstraintSystem,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmegaError {
    #[error("factor {index} ({monomial}) has weight {weight}; truncated expansion needs positive weight")]
    NonPositiveWeight {
        index: usize,
        monomial: String,
        weight: i64,
    },
    #[error("weight vector has {found} entries, expected {expected}")]
    WeightArity { expected: usize, found: usize },
    #[error("negative weight or bound")]
    NegativeWeight,
    #[error("eliminated variable `{0}` is also retained")]
    Overlap(String),
    #[error("unknown closed form `{0}`")]
    UnknownId(String),
    #[error("unknown region `{0}`")]
    UnknownRegion(String),
    #[error("malformed closed-form registry: {0}")]
    Registry(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ElimMode {
    /// Keep terms whose exponent is nonnegative.
    NonNeg,
    /// Keep terms whose exponent is zero.
    Zero,
}

impl ElimMode {
    fn accepts(self, e: i32) -> bool {
        match self {
            ElimMode::NonNeg => e >= 0,
            ElimMode::Zero => e == 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EliminationSpec {
    pub vars: Vec<(String, ElimMode)>,
}

impl EliminationSpec {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, ElimMode)>) -> Self {
        EliminationSpec {
            vars: vars.into_iter().map(|(n, m)| (n.into(), m)).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    weights: Vec<i64>,
    bound: i64,
}

impl WeightVector {
    pub fn new(weights: Vec<i64>, bound: i64) -> Result<Self, OmegaError> {
        if bound < 0 || weights.iter().any(|w| *w < 0) {
            return Err(OmegaError::NegativeWeight);
        }
        Ok(WeightVector { weights, bound })
    }

    /// Weight 1 on every variable.
    pub fn uniform(vars: &VarTable, bound: i64) -> Self {
        WeightVector {
            weights: vec![1; vars.len()],
            bound,
        }
    }

    /// Named weights, `default` for everything else.
    pub fn by_name(
        vars: &VarTable,
        named: &[(&str, i64)],
        default: i64,
        bound: i64,
    ) -> Result<Self, OmegaError> {
        let mut w = vec![default; vars.len()];
        for (n, x) in named {
            w[vars.require(n)?] = *x;
        }
        Self::new(w, bound)
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn with_bound(&self, bound: i64) -> Self {
        WeightVector {
            weights: self.weights.clone(),
            bound,
        }
    }
}

/// `numerator / prod (1 - factor)`, with the listed variables eliminated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredOmegaExpr {
    retained: VarTable,
    elim: EliminationSpec,
    all: VarTable,
    numerator: SparsePoly,
    factors: Vec<Exponents>,
}

impl FactoredOmegaExpr {
    /// `numerator` and each factor are over `retained ++ eliminated`.
    pub fn new(
        retained: VarTable,
        elim: EliminationSpec,
        numerator: SparsePoly,
        factors: Vec<Exponents>,
    ) -> Result<Self, OmegaError> {
        for (n, _) in &elim.vars {
            if retained.index_of(n).is_some() {
                return Err(OmegaError::Overlap(n.clone()));
            }
        }
        let all = Self::joint_table(&retained, &elim)?;
        let numerator = numerator.with_vars(&all)?;
        for f in &factors {
            if f.len() != all.len() {
                return Err(PolyError::Arity {
                    expected: all.len(),
                    found: f.len(),
                }
                .into());
            }
        }
        Ok(FactoredOmegaExpr {
            retained,
            elim,
            all,
            numerator,
            factors,
        })
    }

    pub fn joint_table(
        retained: &VarTable,
        elim: &EliminationSpec,
    ) -> Result<VarTable, OmegaError> {
        Ok(VarTable::new(
            retained
                .names()
                .iter()
                .cloned()
                .chain(elim.vars.iter().map(|(n, _)| n.clone())),
        )?)
    }

    pub fn retained(&self) -> &VarTable {
        &self.retained
    }

    pub fn all_vars(&self) -> &VarTable {
        &self.all
    }

    pub fn elimination(&self) -> &EliminationSpec {
        &self.elim
    }

    pub fn numerator(&self) -> &SparsePoly {
        &self.numerator
    }

    pub fn factors(&self) -> &[Exponents] {
        &self.factors
    }

    /// Renders a factor monomial such as `x1*t^2*λ1`.
    pub fn factor_string(&self, i: usize) -> String {
        SparsePoly::monomial(&self.all, self.factors[i].clone(), 1)
            .map(|m| m.to_string())
            .unwrap_or_default()
    }

    /// Expands through weighted degree `w.bound()` in the retained variables.
    pub fn expand_truncated(&self, w: &WeightVector) -> Result<SparsePoly, OmegaError> {
        let r = self.retained.len();
        if w.weights.len() != r {
            return Err(OmegaError::WeightArity {
                expected: r,
                found: w.weights.len(),
            });
        }
        let fw: Vec<i64> = self
            .factors
            .iter()
            .map(|f| weighted_degree(&f[..r], &w.weights))
            .collect();
        if let Some(i) = fw.iter().position(|x| *x <= 0) {
            return Err(OmegaError::NonPositiveWeight {
                index: i,
                monomial: self.factor_string(i),
                weight: fw[i],
            });
        }
        let modes: Vec<ElimMode> = self.elim.vars.iter().map(|(_, m)| *m).collect();
        let search = Search {
            factors: &self.factors,
            fw: &fw,
            r,
            modes: &modes,
        };

        // One task per (numerator term, multiplicity of the first factor).
        let mut tasks = Vec::new();
        for (e, c) in self.numerator.terms() {
            let budget = w.bound - weighted_degree(&e[..r], &w.weights);
            if budget < 0 {
                continue;
            }
            match fw.first() {
                None => tasks.push((e.clone(), c, budget, None)),
                Some(w0) => {
                    for n in 0..=budget / w0 {
                        tasks.push((e.clone(), c, budget, Some(n)));
                    }
                }
            }
        }
        let parts: Vec<Result<BTreeMap<Exponents, Coeff>, OmegaError>> = tasks
            .into_par_iter()
            .map(|(mut e, c, budget, first)| {
                let mut acc = BTreeMap::new();
                match first {
                    None => search.dfs(0, &mut e, budget, c, &mut acc)?,
                    Some(n) => {
                        for (x, y) in e.iter_mut().zip(&self.factors[0]) {
                            *x += y * n as i32;
                        }
                        search.dfs(1, &mut e, budget - n * fw[0], c, &mut acc)?;
                    }
                }
                Ok(acc)
            })
            .collect();
        let mut terms = Vec::new();
        for p in parts {
            terms.extend(p?);
        }
        let out = SparsePoly::from_terms(&self.retained, terms)?;
        Ok(out)
    }
}

struct Search<'a> {
    factors: &'a [Exponents],
    fw: &'a [i64],
    r: usize,
    modes: &'a [ElimMode],
}

impl Search<'_> {
    /// Whether factors `i..` can still bring every eliminated exponent into
    /// its accepted range within `budget`.
    fn feasible(&self, i: usize, exps: &[i32], budget: i64) -> bool {
        for (j, mode) in self.modes.iter().enumerate() {
            let col = self.r + j;
            let cur = exps[col] as i64;
            let (mut up, mut down) = (0i64, 0i64);
            for (f, w) in self.factors[i..].iter().zip(&self.fw[i..]) {
                let e = f[col] as i64;
                let n = budget / w;
                if e > 0 {
                    up += n * e;
                } else {
                    down -= n * e;
                }
            }
            if cur + up < 0 {
                return false;
            }
            if *mode == ElimMode::Zero && cur - down > 0 {
                return false;
            }
        }
        true
    }

    fn dfs(
        &self,
        i: usize,
        exps: &mut Exponents,
        budget: i64,
        coeff: Coeff,
        acc: &mut BTreeMap<Exponents, Coeff>,
    ) -> Result<(), OmegaError> {
        if i == self.factors.len() {
            let ok = self
                .modes
                .iter()
                .enumerate()
                .all(|(j, m)| m.accepts(exps[self.r + j]));
            if ok {
                let slot = acc.entry(exps[..self.r].to_vec()).or_insert(0);
                *slot = slot.checked_add(coeff).ok_or(PolyError::Overflow)?;
            }
            return Ok(());
        }
        if !self.feasible(i, exps, budget) {
            return Ok(());
        }
        let f = &self.factors[i];
        let w = self.fw[i];
        let max_n = budget / w;
        let mut n = 0;
        loop {
            self.dfs(i + 1, exps, budget - n * w, coeff, acc)?;
            if n == max_n {
                break;
            }
            n += 1;
            for (x, y) in exps.iter_mut().zip(f) {
                *x += y;
            }
        }
        for (x, y) in exps.iter_mut().zip(f) {
            *x -= y * n as i32;
        }
        Ok(())
    }
}

/// First exponent tuple (canonical order) where two truncated series differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub exps: Exponents,
    pub monomial: String,
    pub left: Coeff,
    pub right: Coeff,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} vs {}", self.monomial, self.left, self.right)
    }
}

/// Compares `p` and `r` on all terms of weighted degree at most `w.bound()`.
/// Returns `None` when they agree, otherwise the first differing term.
pub fn series_equal(
    p: &SparsePoly,
    r: &SparsePoly,
    w: &WeightVector,
) -> Result<Option<Witness>, OmegaError> {
    if p.vars() != r.vars() {
        return Err(PolyError::VarMismatch {
            left: p.vars().names().to_vec(),
            right: r.vars().names().to_vec(),
        }
        .into());
    }
    if w.weights.len() != p.vars().len() {
        return Err(OmegaError::WeightArity {
            expected: p.vars().len(),
            found: w.weights.len(),
        });
    }
    let lp = p.truncate(&w.weights, w.bound)?;
    let lr = r.truncate(&w.weights, w.bound)?;
    let mut keys: Vec<&Exponents> = lp.terms().chain(lr.terms()).map(|(e, _)| e).collect();
    keys.sort();
    keys.dedup();
    for e in keys {
        let (a, b) = (lp.coeff_of(e), lr.coeff_of(e));
        if a != b {
            let monomial = SparsePoly::monomial(p.vars(), e.clone(), 1)?.to_string();
            return Ok(Some(Witness {
                exps: e.clone(),
                monomial,
                left: a,
                right: b,
            }));
        }
    }
    Ok(None)
}
