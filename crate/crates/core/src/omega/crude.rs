//! Crude generating functions compiled from linear constraint systems.
//!
//! A `ConstraintSystem` sums a monomial, whose exponents are affine in some
//! nonnegative summation variables, over the lattice points satisfying a list
//! of affine inequalities `L >= 0`. Each inequality becomes a `λ` variable
//! under `Ω≥`. A ceiling `p = ceil(A / z)` becomes an extra summation variable
//! `p` together with a `μ` variable under `Ω_{μ=0}` carrying `μ^(A - z p)` and
//! the numerator `1 + μ + ... + μ^(z-1)`, since `0 <= z p - A <= z - 1`
//! singles out the ceiling. Every summation variable then contributes one
//! factor `1 / (1 - m)`.

use std::collections::BTreeMap;

use super::{ElimMode, EliminationSpec, FactoredOmegaExpr, OmegaError, WeightVector};
use crate::catalan::{gf3_vars, gf4_vars, Region3, Region4};
use crate::polynomial::{PolyError, SparsePoly, VarTable};

/// `constant + sum coeffs[name] * name` over summation variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub constant: i64,
    pub coeffs: BTreeMap<String, i64>,
}

impl Affine {
    /// Parses forms like `2*k1 - r2 + p - 1` (also `2k1`).
    pub fn parse(src: &str) -> Result<Affine, OmegaError> {
        let mut out = Affine {
            constant: 0,
            coeffs: BTreeMap::new(),
        };
        let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let mut sign = 1i64;
        let mut tok = String::new();
        let mut push = |tok: &str, sign: i64| -> Result<(), OmegaError> {
            if tok.is_empty() {
                return Ok(());
            }
            let tok = tok.trim_start_matches('*');
            let digits: String = tok.chars().take_while(|c| c.is_ascii_digit()).collect();
            let name = tok[digits.len()..].trim_start_matches('*');
            let k: i64 = if digits.is_empty() {
                1
            } else {
                digits
                    .parse()
                    .map_err(|_| PolyError::Parse(format!("bad coefficient in `{tok}`")))?
            };
            if name.is_empty() {
                out.constant += sign * k;
            } else {
                *out.coeffs.entry(name.to_string()).or_insert(0) += sign * k;
            }
            Ok(())
        };
        for ch in cleaned.chars() {
            if ch == '+' || ch == '-' {
                push(&tok, sign)?;
                tok.clear();
                sign = if ch == '-' { -1 } else { 1 };
            } else {
                tok.push(ch);
            }
        }
        push(&tok, sign)?;
        out.coeffs.retain(|_, v| *v != 0);
        Ok(out)
    }

    pub fn coeff(&self, var: &str) -> i64 {
        self.coeffs.get(var).copied().unwrap_or(0)
    }

    /// Evaluates at an assignment of the summation variables.
    pub fn eval(&self, values: &BTreeMap<String, i64>) -> i64 {
        self.constant
            + self
                .coeffs
                .iter()
                .map(|(n, k)| k * values.get(n).copied().unwrap_or(0))
                .sum::<i64>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ceiling {
    /// Summation variable standing for the ceiling.
    pub var: String,
    pub numerator: Affine,
    pub divisor: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub sum_vars: Vec<String>,
    pub retained: VarTable,
    /// One affine exponent per retained variable.
    pub exponents: Vec<Affine>,
    /// Each form must be `>= 0`.
    pub constraints: Vec<Affine>,
    pub ceilings: Vec<Ceiling>,
}

impl ConstraintSystem {
    pub fn new(
        sum_vars: &[&str],
        retained: VarTable,
        exponents: &[&str],
        constraints: &[&str],
        ceilings: &[(&str, &str, i64)],
    ) -> Result<Self, OmegaError> {
        let parse_all = |xs: &[&str]| {
            xs.iter()
                .map(|s| Affine::parse(s))
                .collect::<Result<Vec<_>, _>>()
        };
        let sys = ConstraintSystem {
            sum_vars: sum_vars.iter().map(|s| s.to_string()).collect(),
            exponents: parse_all(exponents)?,
            constraints: parse_all(constraints)?,
            ceilings: ceilings
                .iter()
                .map(|(v, a, z)| {
                    Ok(Ceiling {
                        var: v.to_string(),
                        numerator: Affine::parse(a)?,
                        divisor: *z,
                    })
                })
                .collect::<Result<_, OmegaError>>()?,
            retained,
        };
        if sys.exponents.len() != sys.retained.len() {
            return Err(PolyError::Arity {
                expected: sys.retained.len(),
                found: sys.exponents.len(),
            }
            .into());
        }
        let forms = sys
            .exponents
            .iter()
            .chain(&sys.constraints)
            .chain(sys.ceilings.iter().map(|c| &c.numerator));
        for f in forms {
            for n in f.coeffs.keys() {
                if !sys.sum_vars.contains(n) {
                    return Err(PolyError::UnknownVariable(n.clone()).into());
                }
            }
        }
        for c in &sys.ceilings {
            if !sys.sum_vars.contains(&c.var) || c.divisor < 1 {
                return Err(PolyError::Parse(format!("bad ceiling on `{}`", c.var)).into());
            }
        }
        Ok(sys)
    }

    fn elim_names(&self) -> Vec<(String, ElimMode)> {
        let mut out: Vec<(String, ElimMode)> = (1..=self.constraints.len())
            .map(|i| (format!("λ{i}"), ElimMode::NonNeg))
            .collect();
        let single = self.ceilings.len() == 1;
        for i in 1..=self.ceilings.len() {
            let name = if single {
                "μ".to_string()
            } else {
                format!("μ{i}")
            };
            out.push((name, ElimMode::Zero));
        }
        out
    }

    /// The `Ω` expression whose expansion is the constrained sum.
    pub fn compile(&self) -> Result<FactoredOmegaExpr, OmegaError> {
        let elim = EliminationSpec::new(self.elim_names());
        let all = FactoredOmegaExpr::joint_table(&self.retained, &elim)?;
        let nc = self.constraints.len();
        let column = |v: &str| -> Vec<i32> {
            let mut e: Vec<i32> = self.exponents.iter().map(|f| f.coeff(v) as i32).collect();
            e.extend(self.constraints.iter().map(|f| f.coeff(v) as i32));
            for c in &self.ceilings {
                let own = if c.var == v { c.divisor } else { 0 };
                e.push((c.numerator.coeff(v) - own) as i32);
            }
            e
        };
        let factors = self.sum_vars.iter().map(|v| column(v)).collect();

        let mut base: Vec<i32> = self.exponents.iter().map(|f| f.constant as i32).collect();
        base.extend(self.constraints.iter().map(|f| f.constant as i32));
        base.extend(self.ceilings.iter().map(|c| c.numerator.constant as i32));
        let mut numerator = SparsePoly::monomial(&all, base, 1)?;
        for (i, c) in self.ceilings.iter().enumerate() {
            let col = self.retained.len() + nc + i;
            let window = SparsePoly::from_terms(
                &all,
                (0..c.divisor).map(|j| {
                    let mut e = vec![0; all.len()];
                    e[col] = j as i32;
                    (e, 1)
                }),
            )?;
            numerator = numerator.mul(&window)?;
        }
        FactoredOmegaExpr::new(self.retained.clone(), elim, numerator, factors)
    }

    /// Brute-force sum over a box `0 <= v <= cap` of the summation variables,
    /// with ceilings evaluated directly. Terms beyond the box are not seen,
    /// so callers compare only below a degree the box covers.
    pub fn enumerate(&self, cap: i64) -> Result<SparsePoly, OmegaError> {
        let free: Vec<&String> = self
            .sum_vars
            .iter()
            .filter(|v| !self.ceilings.iter().any(|c| &c.var == *v))
            .collect();
        let mut terms = Vec::new();
        let mut vals: BTreeMap<String, i64> = free.iter().map(|v| ((*v).clone(), 0)).collect();
        loop {
            let mut ok = true;
            for c in &self.ceilings {
                let a = c.numerator.eval(&vals);
                let p = -(-a).div_euclid(c.divisor);
                if p < 0 {
                    ok = false;
                }
                vals.insert(c.var.clone(), p);
            }
            if ok && self.constraints.iter().all(|f| f.eval(&vals) >= 0) {
                let e = self
                    .exponents
                    .iter()
                    .map(|f| f.eval(&vals) as i32)
                    .collect();
                terms.push((e, 1));
            }
            // odometer over the free variables
            let mut i = 0;
            loop {
                if i == free.len() {
                    return Ok(SparsePoly::from_terms(&self.retained, terms)?);
                }
                let slot = vals.get_mut(free[i]).unwrap();
                if *slot < cap {
                    *slot += 1;
                    break;
                }
                *slot = 0;
                i += 1;
            }
        }
    }
}

fn region3_system(region: Region3) -> Result<ConstraintSystem, OmegaError> {
    // Part 1 is r2 > k2, part 2 is r2 <= k2. Case 2 of either part uses
    // bounce 2 k1 - 2 r2 + ceil((r2 + k2 - r3) / 2).
    let base = ["k1 - r2", "r2 + k2 - r3"];
    let (extra, bounce, ceil): ([&str; 2], &str, bool) = match region {
        Region3::P1C1 => (["r2 - k2 - 1", "r2 - r3 - k2"], "2k1 - r2 - r3", false),
        Region3::P1C2 => (["r2 - k2 - 1", "k2 - r2 + r3 - 1"], "2k1 - 2r2 + p", true),
        Region3::P2C1 => (["k2 - r2", "k2 - r2 - r3"], "2k1 - 2r2 + k2 - r3", false),
        Region3::P2C2 => (["k2 - r2", "r2 + r3 - k2 - 1"], "2k1 - 2r2 + p", true),
    };
    let mut sum_vars = vec!["k1", "k2", "k3", "r2", "r3"];
    let mut ceilings = vec![];
    if ceil {
        sum_vars.push("p");
        ceilings.push(("p", "r2 + k2 - r3", 2));
    }
    let constraints: Vec<&str> = base.iter().chain(&extra).copied().collect();
    ConstraintSystem::new(
        &sum_vars,
        gf3_vars(true),
        &["k1", "k2", "k3", "r2", "r3", "r2 + r3", bounce],
        &constraints,
        &ceilings,
    )
}

fn region4_system(region: Region4) -> Result<ConstraintSystem, OmegaError> {
    use crate::dyck::Bounce4Case::*;
    // Part 1 sums over b directly; parts 2 and 3 write b = 2s and b = 2s + 1.
    let (y3, area, base, part): (&str, &str, [&str; 3], &str) = match region {
        P1C1 | P1C2 => (
            "b",
            "6k - 3a - 2b - c",
            ["k - a", "2k - a - b", "3k - a - b - c"],
            "2a + b - 2k",
        ),
        P2C1 | P2C2 | P2C3 => (
            "2s",
            "6k - 3a - 4s - c",
            ["k - a", "2k - a - 2s", "3k - a - 2s - c"],
            "2k - 2a - 2s - 1",
        ),
        P3C1 | P3C2 | P3C3 => (
            "2s + 1",
            "6k - 3a - 4s - c - 2",
            ["k - a", "2k - a - 2s - 1", "3k - a - 2s - 1 - c"],
            "2k - 2a - 2s - 2",
        ),
    };
    let (cases, bounce, ceiling): (&[&str], &str, Option<(&str, i64)>) = match region {
        P1C1 => (&["2a + 2b + c - 4k"], "6a + 3b + c - 4k", None),
        P1C2 => (
            &["4k - 2a - 2b - c - 1"],
            "5a + 2b + p - 2k",
            Some(("c", 2)),
        ),
        P2C1 => (&["a + 3s + c - 3k"], "4a + 4s + c - 2k", None),
        P2C2 => (
            &["3a + 3s + c - 3k", "3k - a - 3s - c - 1"],
            "2a + s + k + p",
            Some(("3a + 3s + c - 3k", 2)),
        ),
        P2C3 => (&["3k - 3a - 3s - c - 1"], "3a + 2s + p", Some(("c", 3))),
        P3C1 => (&["a + 3s + c - 3k + 2"], "4a + 4s + c - 2k + 3", None),
        P3C2 => (
            &["3a + 3s + c - 3k + 2", "3k - a - 3s - c - 3"],
            "2a + s + k + 1 + p",
            Some(("3a + 3s + c - 3k + 2", 2)),
        ),
        P3C3 => (
            &["3k - 3a - 3s - c - 3"],
            "3a + 2s + 2 + p",
            Some(("c - 1", 3)),
        ),
    };
    let mut sum_vars = vec!["k", "a", if y3 == "b" { "b" } else { "s" }, "c"];
    let mut ceilings = vec![];
    if let Some((num, z)) = ceiling {
        sum_vars.push("p");
        ceilings.push(("p", num, z));
    }
    let constraints: Vec<&str> = base
        .iter()
        .copied()
        .chain([part])
        .chain(cases.iter().copied())
        .collect();
    ConstraintSystem::new(
        &sum_vars,
        gf4_vars(true),
        &["k", "a", y3, "c", area, bounce],
        &constraints,
        &ceilings,
    )
}

/// Crude generating function of one length-3 region, over
/// `x1 x2 x3 y2 y3 q t`.
pub fn build_crude_f(region: &str) -> Result<FactoredOmegaExpr, OmegaError> {
    let r: Region3 = region
        .parse()
        .map_err(|_| OmegaError::UnknownRegion(region.to_string()))?;
    region3_system(r)?.compile()
}

/// Crude generating function of one `k^4` region, over `x y2 y3 y4 q t`.
pub fn build_crude_h(region: &str) -> Result<FactoredOmegaExpr, OmegaError> {
    let r: Region4 = region
        .parse()
        .map_err(|_| OmegaError::UnknownRegion(region.to_string()))?;
    region4_system(r)?.compile()
}

#[cfg(test)]
fn system_f(region: Region3) -> ConstraintSystem {
    region3_system(region).expect("built-in system is well formed")
}

#[cfg(test)]
fn system_h(region: Region4) -> ConstraintSystem {
    region4_system(region).expect("built-in system is well formed")
}

/// Weights making every crude length-3 factor positive:
/// `x = 3, y = 2, q = t = 1`. The `r2` factor of the ceiling regions is
/// `y2 q t^-2`, which has weight 0 under unit weights.
pub fn crude_weights_f(bound: i64) -> WeightVector {
    WeightVector::new(vec![3, 3, 3, 2, 2, 1, 1], bound).unwrap()
}

/// Weights making every crude `k^4` factor positive: `x = 5, y = 1, q = 0,
/// t = 1`. The `k` factor carries `t^-4` at worst.
pub fn crude_weights_h(bound: i64) -> WeightVector {
    WeightVector::new(vec![5, 1, 1, 1, 0, 1], bound).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalan::{gf3_sum, gf4_sum};
    use crate::omega::series_equal;

    #[test]
    fn affine_parsing() {
        let a = Affine::parse("2k1 - r2 + 3*r3 - 1").unwrap();
        assert_eq!(a.constant, -1);
        assert_eq!((a.coeff("k1"), a.coeff("r2"), a.coeff("r3")), (2, -1, 3));
        let b = Affine::parse("-a + a + 4").unwrap();
        assert!(b.coeffs.is_empty());
        assert_eq!(b.constant, 4);
    }

    #[test]
    fn unknown_summation_variable_rejected() {
        let vars = VarTable::new(["x"]).unwrap();
        let r = ConstraintSystem::new(&["n"], vars, &["m"], &[], &[]);
        assert!(r.is_err());
    }

    #[test]
    fn unknown_region_rejected() {
        assert_eq!(
            build_crude_f("P3C1").unwrap_err(),
            OmegaError::UnknownRegion("P3C1".into())
        );
        assert!(build_crude_h("P1C3").is_err());
    }

    #[test]
    fn compiled_shape() {
        let e = build_crude_f("P1C1").unwrap();
        assert_eq!(e.factors().len(), 5);
        assert_eq!(e.elimination().vars.len(), 4);
        // The constant -1 of r2 - k2 - 1 >= 0 lands in the numerator as λ3^-1.
        let (num, c) = e.numerator().terms().next().unwrap();
        assert_eq!(c, 1);
        assert_eq!(num.iter().filter(|x| **x != 0).count(), 1);
        assert_eq!(e.factor_string(3), "y2*q*t^-1*λ1^-1*λ2*λ3*λ4");
        let e = build_crude_h("P2C3").unwrap();
        assert_eq!(e.numerator().len(), 3);
        assert_eq!(
            e.elimination().vars.last().unwrap(),
            &("μ".to_string(), ElimMode::Zero)
        );
    }

    #[test]
    fn systems_match_box_enumeration() {
        // Within the box, the direct enumeration of each system agrees with the
        // path-level sum: checks the constraint transcription itself.
        let w = crude_weights_f(9);
        for r in Region3::ALL {
            let sys = system_f(r);
            let direct = sys.enumerate(9).unwrap();
            let paths = gf3_sum(3, Some(r), true);
            assert_eq!(series_equal(&direct, &paths, &w).unwrap(), None, "{r}");
        }
        let w = crude_weights_h(10);
        for r in Region4::ALL {
            let sys = system_h(r);
            let direct = sys.enumerate(6).unwrap();
            let paths = gf4_sum(2, Some(r), true);
            assert_eq!(series_equal(&direct, &paths, &w).unwrap(), None, "{r}");
        }
    }

    #[test]
    fn crude_f_expansion_matches_paths() {
        let w = crude_weights_f(21);
        for r in Region3::ALL {
            let got = build_crude_f(r.name())
                .unwrap()
                .expand_truncated(&w)
                .unwrap();
            let paths = gf3_sum(7, Some(r), true);
            assert_eq!(series_equal(&got, &paths, &w).unwrap(), None, "{r}");
            assert!(got.is_polynomial());
        }
    }

    #[test]
    fn crude_h_expansion_matches_paths() {
        let w = crude_weights_h(25);
        for r in Region4::ALL {
            let got = build_crude_h(r.name())
                .unwrap()
                .expand_truncated(&w)
                .unwrap();
            let paths = gf4_sum(5, Some(r), true);
            assert_eq!(series_equal(&got, &paths, &w).unwrap(), None, "{r}");
        }
    }
}
