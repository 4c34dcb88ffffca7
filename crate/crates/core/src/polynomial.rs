//! Sparse multivariate Laurent polynomials over named variables with exact
//! `i64` coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent tuple, so iteration order is
//! the canonical lexicographic order (in `VarTable` order) used by every
//! serializer in this crate. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Coeff = i64;
pub type Exponents = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable tables differ: {left:?} vs {right:?}")]
    VarMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("exponent tuple has length {found}, expected {expected}")]
    Arity { expected: usize, found: usize },
    #[error("coefficient overflow")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Ordered list of distinct variable names. The order fixes the layout of
/// every exponent tuple built against the table.
#[derive(Debug, Clone)]
pub struct VarTable(Arc<[String]>);

impl VarTable {
    pub fn new<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(VarTable(names.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// Table with the named variables removed (order of the rest preserved).
    pub fn without(&self, drop: &[usize]) -> VarTable {
        VarTable(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| !drop.contains(i))
                .map(|(_, n)| n.clone())
                .collect::<Vec<_>>()
                .into(),
        )
    }
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarTable {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    vars: VarTable,
    terms: BTreeMap<Exponents, Coeff>,
}

fn checked_add_into(
    terms: &mut BTreeMap<Exponents, Coeff>,
    exps: Exponents,
    c: Coeff,
) -> Result<(), PolyError> {
    if c == 0 {
        return Ok(());
    }
    let slot = terms.entry(exps).or_insert(0);
    *slot = slot.checked_add(c).ok_or(PolyError::Overflow)?;
    Ok(())
}

impl SparsePoly {
    pub fn zero(vars: &VarTable) -> Self {
        SparsePoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarTable, c: Coeff) -> Self {
        let mut p = Self::zero(vars);
        if c != 0 {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &VarTable) -> Self {
        Self::constant(vars, 1)
    }

    pub fn monomial(vars: &VarTable, exps: Exponents, c: Coeff) -> Result<Self, PolyError> {
        Self::from_terms(vars, [(exps, c)])
    }

    /// The single variable `name` to the first power.
    pub fn var(vars: &VarTable, name: &str) -> Result<Self, PolyError> {
        let i = vars.require(name)?;
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        Self::monomial(vars, exps, 1)
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, summing
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I>(vars: &VarTable, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Exponents, Coeff)>,
    {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(PolyError::Arity {
                    expected: vars.len(),
                    found: e.len(),
                });
            }
            checked_add_into(&mut map, e, c)?;
        }
        map.retain(|_, c| *c != 0);
        Ok(SparsePoly {
            vars: vars.clone(),
            terms: map,
        })
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    /// Terms in canonical (lexicographic exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, Coeff)> + '_ {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as `is_zero`: a polynomial with no terms.
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff_of(&self, exps: &[i32]) -> Coeff {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    fn same_vars(&self, other: &SparsePoly) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VarMismatch {
                left: self.vars.names().to_vec(),
                right: other.vars.names().to_vec(),
            })
        }
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.same_vars(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            checked_add_into(&mut terms, e.clone(), *c)?;
        }
        terms.retain(|_, c| *c != 0);
        Ok(SparsePoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> Result<SparsePoly, PolyError> {
        self.scale(-1)
    }

    pub fn sub(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.add(&other.neg()?)
    }

    pub fn scale(&self, k: Coeff) -> Result<SparsePoly, PolyError> {
        let mut terms = BTreeMap::new();
        if k != 0 {
            for (e, c) in &self.terms {
                terms.insert(e.clone(), c.checked_mul(k).ok_or(PolyError::Overflow)?);
            }
        }
        Ok(SparsePoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn mul(&self, other: &SparsePoly) -> Result<SparsePoly, PolyError> {
        self.same_vars(other)?;
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = c1.checked_mul(*c2).ok_or(PolyError::Overflow)?;
                checked_add_into(&mut terms, e, c)?;
            }
        }
        terms.retain(|_, c| *c != 0);
        Ok(SparsePoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Exchanges the exponents of `u` and `v` in every term.
    pub fn swap_vars(&self, u: &str, v: &str) -> Result<SparsePoly, PolyError> {
        let i = self.vars.require(u)?;
        let j = self.vars.require(v)?;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.swap(i, j);
                (e, *c)
            })
            .collect();
        Ok(SparsePoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn is_symmetric(&self, u: &str, v: &str) -> Result<bool, PolyError> {
        Ok(self.swap_vars(u, v)? == *self)
    }

    /// Coefficient of the partial monomial `assignment`: the polynomial in the
    /// remaining variables that multiplies it.
    pub fn coeff(&self, assignment: &[(&str, i32)]) -> Result<SparsePoly, PolyError> {
        let idx: Vec<(usize, i32)> = assignment
            .iter()
            .map(|(n, e)| self.vars.require(n).map(|i| (i, *e)))
            .collect::<Result<_, _>>()?;
        let drop: Vec<usize> = idx.iter().map(|(i, _)| *i).collect();
        let vars = self.vars.without(&drop);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if idx.iter().all(|(i, x)| e[*i] == *x) {
                let rest: Exponents = e
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !drop.contains(i))
                    .map(|(_, x)| *x)
                    .collect();
                checked_add_into(&mut terms, rest, *c)?;
            }
        }
        terms.retain(|_, c| *c != 0);
        Ok(SparsePoly { vars, terms })
    }

    /// Substitutes 1 for each listed variable; the result lives over the
    /// remaining variables.
    pub fn eval_ones(&self, names: &[&str]) -> Result<SparsePoly, PolyError> {
        let drop: Vec<usize> = names
            .iter()
            .map(|n| self.vars.require(n))
            .collect::<Result<_, _>>()?;
        let vars = self.vars.without(&drop);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let rest: Exponents = e
                .iter()
                .enumerate()
                .filter(|(i, _)| !drop.contains(i))
                .map(|(_, x)| *x)
                .collect();
            checked_add_into(&mut terms, rest, *c)?;
        }
        terms.retain(|_, c| *c != 0);
        Ok(SparsePoly { vars, terms })
    }

    /// Sum of all coefficients (every variable set to 1).
    pub fn eval_all_ones(&self) -> Result<Coeff, PolyError> {
        self.terms
            .values()
            .try_fold(0i64, |acc, c| acc.checked_add(*c))
            .ok_or(PolyError::Overflow)
    }

    /// Re-expresses the polynomial over another table, matching variables by
    /// name. Variables absent from `target` must not occur in any term.
    pub fn with_vars(&self, target: &VarTable) -> Result<SparsePoly, PolyError> {
        if *target == self.vars {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut out = vec![0; target.len()];
            for (i, x) in e.iter().enumerate() {
                match map[i] {
                    Some(j) => out[j] = *x,
                    None if *x == 0 => {}
                    None => return Err(PolyError::UnknownVariable(self.vars.names()[i].clone())),
                }
            }
            checked_add_into(&mut terms, out, *c)?;
        }
        terms.retain(|_, c| *c != 0);
        Ok(SparsePoly {
            vars: target.clone(),
            terms,
        })
    }

    /// Smallest exponent appearing anywhere, or 0 for the zero polynomial.
    pub fn min_exponent(&self) -> i32 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .min()
            .unwrap_or(0)
            .min(0)
    }

    pub fn is_polynomial(&self) -> bool {
        self.min_exponent() >= 0
    }

    /// Keeps only the terms whose weighted degree is at most `bound`.
    pub fn truncate(&self, weights: &[i64], bound: i64) -> Result<SparsePoly, PolyError> {
        if weights.len() != self.vars.len() {
            return Err(PolyError::Arity {
                expected: self.vars.len(),
                found: weights.len(),
            });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| weighted_degree(e, weights) <= bound)
            .map(|(e, c)| (e.clone(), *c))
            .collect();
        Ok(SparsePoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Checks the "no stored zero" representation invariant.
    pub fn check_invariants(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| *c != 0 && e.len() == self.vars.len())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization is infallible")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("polynomial serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<SparsePoly, PolyError> {
        serde_json::from_str(s).map_err(|e| PolyError::Parse(e.to_string()))
    }

    /// LaTeX rendering in canonical term order, e.g. `t^{3} + q t + q^{2} t`.
    pub fn to_latex(&self) -> String {
        self.render(
            |name, exp| {
                let base = latex_name(name);
                if exp == 1 {
                    base
                } else {
                    format!("{base}^{{{exp}}}")
                }
            },
            " ",
        )
    }

    fn render(&self, factor: impl Fn(&str, i32) -> String, join: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(i, x)| factor(&self.vars.names()[i], *x))
                .collect();
            let mag = c.unsigned_abs();
            if k == 0 {
                if *c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if *c < 0 { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if mag != 1 {
                    out.push_str(&mag.to_string());
                    out.push_str(join);
                }
                out.push_str(&mono.join(join));
            }
        }
        out
    }
}

pub fn weighted_degree(exps: &[i32], weights: &[i64]) -> i64 {
    exps.iter().zip(weights).map(|(e, w)| *e as i64 * w).sum()
}

fn latex_name(name: &str) -> String {
    let split = name
        .find(|c: char| c.is_ascii_digit())
        .unwrap_or(name.len());
    let (stem, idx) = name.split_at(split);
    let stem = match stem {
        "λ" | "lambda" => "\\lambda",
        "μ" | "mu" => "\\mu",
        s => s,
    };
    if idx.is_empty() {
        stem.to_string()
    } else {
        format!("{stem}_{{{idx}}}")
    }
}

/// Plain text rendering: `t^3 + q*t + q^2*t`.
impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.render(
            |name, exp| {
                if exp == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{exp}")
                }
            },
            "*",
        );
        f.write_str(&s)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exps: Exponents,
    coeff: Coeff,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl Serialize for SparsePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            vars: self.vars.names().to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exps: e.clone(),
                    coeff: *c,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparsePoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let vars = VarTable::new(raw.vars).map_err(serde::de::Error::custom)?;
        SparsePoly::from_terms(&vars, raw.terms.into_iter().map(|t| (t.exps, t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}

/// Parses a monomial-sum such as `x1*y2^2*q - 3*t^-1 + 1` over `vars`.
/// Factors are separated by `*` or whitespace; exponents may be negative.
pub fn parse_poly(vars: &VarTable, src: &str) -> Result<SparsePoly, PolyError> {
    let mut terms = Vec::new();
    let mut chunk = String::new();
    let mut sign = 1i64;
    let mut prev_caret = false;
    let mut flush = |chunk: &mut String, sign: i64| -> Result<(), PolyError> {
        if !chunk.trim().is_empty() {
            terms.push(parse_monomial(vars, chunk, sign)?);
        }
        chunk.clear();
        Ok(())
    };
    for ch in src.chars() {
        match ch {
            '+' | '-' if !prev_caret => {
                if !chunk.trim().is_empty() {
                    flush(&mut chunk, sign)?;
                    sign = 1;
                }
                if ch == '-' {
                    sign = -sign;
                }
            }
            _ => chunk.push(ch),
        }
        if !ch.is_whitespace() {
            prev_caret = ch == '^';
        }
    }
    flush(&mut chunk, sign)?;
    SparsePoly::from_terms(vars, terms)
}

fn parse_monomial(vars: &VarTable, src: &str, sign: i64) -> Result<(Exponents, Coeff), PolyError> {
    let mut exps = vec![0; vars.len()];
    let mut coeff = sign;
    for tok in src
        .split(|c: char| c == '*' || c.is_whitespace())
        .filter(|t| !t.is_empty())
    {
        if let Ok(n) = tok.parse::<i64>() {
            coeff = coeff.checked_mul(n).ok_or(PolyError::Overflow)?;
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (
                n,
                e.parse::<i32>()
                    .map_err(|_| PolyError::Parse(format!("bad exponent in `{tok}`")))?,
            ),
            None => (tok, 1),
        };
        exps[vars.require(name)?] += exp;
    }
    Ok((exps, coeff))
}
