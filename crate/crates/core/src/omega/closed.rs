//! Registry of the closed-form generating functions, read from
//! `data/closed_forms.json`. Each entry is a numerator polynomial over a
//! product of `1 / (1 - m)` factors, written as strings so the file can be
//! checked against the printed formulas by eye.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Deserialize;

use super::{EliminationSpec, FactoredOmegaExpr, OmegaError};
use crate::polynomial::{parse_poly, VarTable};

pub const CLOSED_FORMS_JSON: &str = include_str!("../../data/closed_forms.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedFormId {
    F11,
    F12,
    F21,
    F22,
    Eq1,
    H11,
    H12,
    H21,
    H22,
    H23,
    H31,
    H32,
    H33,
    Eq2,
}

impl ClosedFormId {
    pub const ALL: [ClosedFormId; 14] = [
        ClosedFormId::F11,
        ClosedFormId::F12,
        ClosedFormId::F21,
        ClosedFormId::F22,
        ClosedFormId::Eq1,
        ClosedFormId::H11,
        ClosedFormId::H12,
        ClosedFormId::H21,
        ClosedFormId::H22,
        ClosedFormId::H23,
        ClosedFormId::H31,
        ClosedFormId::H32,
        ClosedFormId::H33,
        ClosedFormId::Eq2,
    ];

    pub const F: [ClosedFormId; 4] = [
        ClosedFormId::F11,
        ClosedFormId::F12,
        ClosedFormId::F21,
        ClosedFormId::F22,
    ];

    /// In the same order as `Bounce4Case::ALL`.
    pub const H: [ClosedFormId; 8] = [
        ClosedFormId::H11,
        ClosedFormId::H12,
        ClosedFormId::H21,
        ClosedFormId::H22,
        ClosedFormId::H23,
        ClosedFormId::H31,
        ClosedFormId::H32,
        ClosedFormId::H33,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ClosedFormId::F11 => "F11",
            ClosedFormId::F12 => "F12",
            ClosedFormId::F21 => "F21",
            ClosedFormId::F22 => "F22",
            ClosedFormId::Eq1 => "EQ1",
            ClosedFormId::H11 => "H11",
            ClosedFormId::H12 => "H12",
            ClosedFormId::H21 => "H21",
            ClosedFormId::H22 => "H22",
            ClosedFormId::H23 => "H23",
            ClosedFormId::H31 => "H31",
            ClosedFormId::H32 => "H32",
            ClosedFormId::H33 => "H33",
            ClosedFormId::Eq2 => "EQ2",
        }
    }

    /// Region id of the matching crude form (`F11` -> `P1C1`).
    pub fn region(&self) -> Option<String> {
        let n = self.name();
        n.strip_prefix(['F', 'H'])
            .filter(|d| d.len() == 2)
            .map(|d| format!("P{}C{}", &d[..1], &d[1..]))
    }
}

impl fmt::Display for ClosedFormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClosedFormId {
    type Err = OmegaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClosedFormId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| OmegaError::UnknownId(s.to_string()))
    }
}

#[derive(Deserialize)]
struct Entry {
    vars: Vec<String>,
    numerator: String,
    factors: Vec<String>,
}

fn registry() -> Result<BTreeMap<String, Entry>, OmegaError> {
    serde_json::from_str(CLOSED_FORMS_JSON).map_err(|e| OmegaError::Registry(e.to_string()))
}

/// The registered closed form, with no eliminated variables.
pub fn closed_form(id: ClosedFormId) -> Result<FactoredOmegaExpr, OmegaError> {
    let mut reg = registry()?;
    let entry = reg
        .remove(id.name())
        .ok_or_else(|| OmegaError::UnknownId(id.name().to_string()))?;
    let vars = VarTable::new(entry.vars)?;
    let numerator = parse_poly(&vars, &entry.numerator)?;
    let mut factors = Vec::new();
    for f in &entry.factors {
        let m = parse_poly(&vars, f)?;
        if m.len() != 1 {
            return Err(OmegaError::Registry(format!(
                "{id}: factor `{f}` is not a monomial"
            )));
        }
        let (e, c) = m.terms().next().unwrap();
        if c != 1 {
            return Err(OmegaError::Registry(format!(
                "{id}: factor `{f}` has coefficient {c}"
            )));
        }
        factors.push(e.clone());
    }
    FactoredOmegaExpr::new(vars, EliminationSpec::default(), numerator, factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalan::{
        catalan_poly3, catalan_poly_k4, gf3_sum, gf3_vars, gf4_sum, qt_vars, refined_poly3,
    };
    use crate::dyck::KVec3;
    use crate::omega::{series_equal, WeightVector};
    use crate::polynomial::SparsePoly;

    fn x_weights(vars: &VarTable, bound: i64) -> WeightVector {
        let w = vars
            .names()
            .iter()
            .map(|n| i64::from(n.starts_with('x')))
            .collect();
        WeightVector::new(w, bound).unwrap()
    }

    #[test]
    fn every_id_loads() {
        for id in ClosedFormId::ALL {
            let e = closed_form(id).unwrap();
            assert!(e.elimination().is_empty());
            assert_eq!(id.to_string().parse::<ClosedFormId>().unwrap(), id);
        }
        assert!(matches!(
            "F13".parse::<ClosedFormId>(),
            Err(OmegaError::UnknownId(_))
        ));
        assert_eq!(ClosedFormId::H23.region().as_deref(), Some("P2C3"));
        assert_eq!(ClosedFormId::Eq1.region(), None);
    }

    #[test]
    fn eq1_constant_term_and_small_coefficients() {
        let e = closed_form(ClosedFormId::Eq1).unwrap();
        let s = e.expand_truncated(&x_weights(e.retained(), 5)).unwrap();
        assert_eq!(s.coeff_of(&[0, 0, 0, 0, 0]), 1);
        let c = s.coeff(&[("x1", 1), ("x2", 1), ("x3", 1)]).unwrap();
        assert_eq!(c, catalan_poly3(KVec3::new(1, 1, 1)));
        for m in 0..=5 {
            let c = s.coeff(&[("x1", 0), ("x2", 0), ("x3", m)]).unwrap();
            assert_eq!(c, SparsePoly::one(&qt_vars()));
        }
    }

    #[test]
    fn eq2_first_coefficient() {
        let e = closed_form(ClosedFormId::Eq2).unwrap();
        let s = e.expand_truncated(&x_weights(e.retained(), 2)).unwrap();
        let c1 = s.coeff(&[("x", 1)]).unwrap();
        assert_eq!(c1.len(), 14);
        assert_eq!(c1, catalan_poly_k4(1));
        assert!(c1.is_symmetric("q", "t").unwrap());
    }

    #[test]
    fn f11_coefficient_matches_region_filter() {
        let e = closed_form(ClosedFormId::F11).unwrap();
        let s = e.expand_truncated(&x_weights(e.retained(), 3)).unwrap();
        let c = s.coeff(&[("x1", 2), ("x2", 1), ("x3", 0)]).unwrap();
        let r = refined_poly3(KVec3::new(2, 1, 0), Some(crate::catalan::Region3::P1C1));
        assert_eq!(c, r.with_vars(c.vars()).unwrap());
    }

    #[test]
    fn f_sum_at_unit_y_is_eq1() {
        let vars = gf3_vars(true);
        let w = x_weights(&vars, 6);
        let mut sum = SparsePoly::zero(&vars);
        for id in ClosedFormId::F {
            sum = sum
                .add(&closed_form(id).unwrap().expand_truncated(&w).unwrap())
                .unwrap();
        }
        let collapsed = sum.eval_ones(&["y2", "y3"]).unwrap();
        let eq1 = closed_form(ClosedFormId::Eq1).unwrap();
        let direct = eq1.expand_truncated(&x_weights(eq1.retained(), 6)).unwrap();
        assert_eq!(collapsed, direct);
        assert_eq!(
            series_equal(
                &direct,
                &gf3_sum(6, None, false),
                &x_weights(eq1.retained(), 6)
            )
            .unwrap(),
            None
        );
    }

    #[test]
    fn eq2_matches_small_sums() {
        let e = closed_form(ClosedFormId::Eq2).unwrap();
        let w = x_weights(e.retained(), 4);
        let s = e.expand_truncated(&w).unwrap();
        assert_eq!(s, gf4_sum(4, None, false));
    }
}
