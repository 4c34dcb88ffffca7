//! Exhaustive checks over finite ranges, shared by the `qtcat verify`
//! command and the integration tests. Each check returns an `Outcome`
//! holding the number of instances examined and, on failure, the first
//! counterexample in input order.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::catalan::{
    catalan_poly3, catalan_poly_k4, catalan_poly_lambda3, gf3_sum, gf3_vars, gf4_sum, gf4_vars,
    Region3, Region4,
};
use crate::dyck::{
    bounce3, bounce3_bd, bounce4_predicates, ceil_div, enumerate_paths3, enumerate_paths4,
    to_param3, KVec3,
};
use crate::involution::{lemma4_check, parity_y, verify_grid};
use crate::omega::{
    build_crude_f, build_crude_h, closed_form, crude_weights_f, crude_weights_h, series_equal,
    ClosedFormId, ElimMode, EliminationSpec, FactoredOmegaExpr, OmegaError, WeightVector, Witness,
};
use crate::polynomial::{PolyError, SparsePoly, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Omega(#[from] OmegaError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub suite: String,
    pub check: String,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub check: String,
    pub checked: u64,
    pub counterexample: Option<Counterexample>,
}

impl Outcome {
    pub fn pass(check: impl Into<String>, checked: u64) -> Self {
        Outcome {
            check: check.into(),
            checked,
            counterexample: None,
        }
    }

    pub fn fail(suite: &str, check: impl Into<String>, checked: u64, detail: Value) -> Self {
        let check = check.into();
        Outcome {
            counterexample: Some(Counterexample {
                suite: suite.to_string(),
                check: check.clone(),
                detail,
            }),
            check,
            checked,
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok" } else { "FAILED" };
        write!(f, "{}: {} ({} checked)", self.check, status, self.checked)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Symmetry3,
    Symmetry4,
    Involution,
    Gf,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Symmetry3 => "symmetry3",
            Suite::Symmetry4 => "symmetry4",
            Suite::Involution => "involution",
            Suite::Gf => "gf",
        }
    }

    pub fn default_max(&self) -> u32 {
        match self {
            Suite::Symmetry3 => 8,
            Suite::Symmetry4 => 12,
            Suite::Involution => 30,
            Suite::Gf => 6,
        }
    }
}

fn poly_json(p: &SparsePoly) -> Value {
    serde_json::to_value(p).expect("polynomials serialize")
}

fn witness_json(w: &Witness) -> Value {
    serde_json::to_value(w).expect("witnesses serialize")
}

/// `C_k(q,t) = C_k(t,q)` for all `0 <= k_i <= max`.
pub fn symmetry3(max: u32) -> Outcome {
    let ks: Vec<KVec3> = (0..=max)
        .flat_map(|a| (0..=max).flat_map(move |b| (0..=max).map(move |c| KVec3::new(a, b, c))))
        .collect();
    let bad = ks
        .par_iter()
        .map(|&k| (k, catalan_poly3(k)))
        .find_first(|(_, p)| !p.is_symmetric("q", "t").expect("q and t present"));
    let n = ks.len() as u64;
    match bad {
        None => Outcome::pass("symmetry3", n),
        Some((k, p)) => Outcome::fail(
            "symmetry3",
            "symmetry3",
            n,
            json!({ "k": k, "poly": poly_json(&p) }),
        ),
    }
}

/// Symmetry of `C_lambda` for every partition with parts at most `max`.
pub fn symmetry_lambda(max: u32) -> Outcome {
    let parts: Vec<[u32; 3]> = (0..=max)
        .flat_map(|a| (0..=a).flat_map(move |b| (0..=b).map(move |c| [a, b, c])))
        .collect();
    let bad = parts.par_iter().find_map_first(|&l| {
        let p = catalan_poly_lambda3(l).expect("weakly decreasing by construction");
        (!p.is_symmetric("q", "t").expect("q and t present")).then_some((l, p))
    });
    let n = parts.len() as u64;
    match bad {
        None => Outcome::pass("symmetry_lambda", n),
        Some((l, p)) => Outcome::fail(
            "symmetry3",
            "symmetry_lambda",
            n,
            json!({ "lambda": l, "poly": poly_json(&p) }),
        ),
    }
}

/// Symmetry of `C_{k^4}` for `k <= max`, and `C_{k^4}(1,1)` equal to the
/// number of enumerated paths.
pub fn symmetry4(max: u32) -> Outcome {
    let bad = (0..=max).into_par_iter().find_map_first(|k| {
        let p = catalan_poly_k4(k);
        let count = enumerate_paths4(k).len() as i64;
        let at_one = p.eval_all_ones().expect("no overflow at desk scale");
        let sym = p.is_symmetric("q", "t").expect("q and t present");
        let ok = sym && at_one == count && (k != 1 || at_one == 14);
        (!ok).then(|| json!({ "k": k, "symmetric": sym, "value_at_one": at_one, "paths": count, "poly": poly_json(&p) }))
    });
    let n = u64::from(max) + 1;
    match bad {
        None => Outcome::pass("symmetry4", n),
        Some(d) => Outcome::fail("symmetry4", "symmetry4", n, d),
    }
}

/// Runs the involution checks on every `(a, c)` with `a, c <= max`.
pub fn involution(max: u32) -> Outcome {
    let reports = verify_grid(max);
    let checked = reports.iter().map(|r| r.checked).sum();
    match reports.into_iter().find(|r| !r.passed()) {
        None => Outcome::pass("involution", checked),
        Some(r) => Outcome::fail(
            "involution",
            "involution",
            checked,
            serde_json::to_value(&r).expect("reports serialize"),
        ),
    }
}

/// Weight 1 on the `x` variables, 0 elsewhere.
pub fn x_weights(vars: &VarTable, bound: i64) -> WeightVector {
    let w = vars
        .names()
        .iter()
        .map(|n| i64::from(n.starts_with('x')))
        .collect();
    WeightVector::new(w, bound).expect("nonnegative weights")
}

fn compare(
    suite: &str,
    check: String,
    left: &SparsePoly,
    right: &SparsePoly,
    w: &WeightVector,
) -> Result<Outcome, VerifyError> {
    let n = left.truncate(w.weights(), w.bound())?.len() as u64;
    Ok(match series_equal(left, right, w)? {
        None => Outcome::pass(check, n),
        Some(wit) => Outcome::fail(suite, check, n, witness_json(&wit)),
    })
}

fn expand_closed(id: ClosedFormId, bound: u32) -> Result<SparsePoly, VerifyError> {
    let e = closed_form(id)?;
    Ok(e.expand_truncated(&x_weights(e.retained(), i64::from(bound)))?)
}

/// The closed form of the full length-3 series against `sum x^k C_k` for
/// `k1 + k2 + k3 <= n`.
pub fn eq1(n: u32) -> Result<Outcome, VerifyError> {
    let vars = gf3_vars(false);
    let closed = expand_closed(ClosedFormId::Eq1, n)?;
    compare(
        "gf",
        "EQ1".into(),
        &closed,
        &gf3_sum(n, None, false),
        &x_weights(&vars, n.into()),
    )
}

/// Each refined length-3 closed form against its region-filtered sum.
pub fn f_forms(n: u32) -> Result<Vec<Outcome>, VerifyError> {
    let vars = gf3_vars(true);
    let w = x_weights(&vars, n.into());
    ClosedFormId::F
        .iter()
        .zip(Region3::ALL)
        .map(|(&id, r)| {
            let closed = expand_closed(id, n)?;
            compare(
                "gf",
                format!("{id} closed"),
                &closed,
                &gf3_sum(n, Some(r), true),
                &w,
            )
        })
        .collect()
}

/// Each crude length-3 form against its closed form and the enumeration,
/// on all coefficients of `x`-degree at most `n`.
///
/// Under `crude_weights_f` a path with `|k| = m` has weight at most `11 m`
/// (`r2 + r3`, area and bounce are each at most `2 m`), so expanding to
/// `11 n` and then cutting at `x`-degree `n` loses nothing.
pub fn crude_f(n: u32) -> Result<Vec<Outcome>, VerifyError> {
    let vars = gf3_vars(true);
    let xw = x_weights(&vars, n.into());
    let cw = crude_weights_f(11 * i64::from(n));
    ClosedFormId::F
        .iter()
        .zip(Region3::ALL)
        .map(|(&id, r)| {
            let crude = build_crude_f(r.name())?.expand_truncated(&cw)?;
            let crude = crude.truncate(xw.weights(), xw.bound())?;
            let closed = expand_closed(id, n)?;
            Ok([
                compare(
                    "gf",
                    format!("{} crude = closed", r.name()),
                    &crude,
                    &closed,
                    &xw,
                )?,
                compare(
                    "gf",
                    format!("{} crude = paths", r.name()),
                    &crude,
                    &gf3_sum(n, Some(r), true),
                    &xw,
                )?,
            ])
        })
        .collect::<Result<Vec<_>, VerifyError>>()
        .map(|v| v.into_iter().flatten().collect())
}

/// The closed form of `sum x^k C_{k^4}` for `k <= n`.
pub fn eq2(n: u32) -> Result<Outcome, VerifyError> {
    let vars = gf4_vars(false);
    let closed = expand_closed(ClosedFormId::Eq2, n)?;
    compare(
        "gf",
        "EQ2".into(),
        &closed,
        &gf4_sum(n, None, false),
        &x_weights(&vars, n.into()),
    )
}

/// Each refined `k^4` closed form against its region-filtered sum.
pub fn h_forms(n: u32) -> Result<Vec<Outcome>, VerifyError> {
    let vars = gf4_vars(true);
    let w = x_weights(&vars, n.into());
    ClosedFormId::H
        .iter()
        .zip(Region4::ALL)
        .map(|(&id, r)| {
            let closed = expand_closed(id, n)?;
            compare(
                "gf",
                format!("{id} closed"),
                &closed,
                &gf4_sum(n, Some(r), true),
                &w,
            )
        })
        .collect()
}

/// Each crude `k^4` form against its closed form and the enumeration.
///
/// Under `crude_weights_h` a path of `k^4` has weight at most `14 k`
/// (`a + b + c <= 3k`, bounce at most `6k`).
pub fn crude_h(n: u32) -> Result<Vec<Outcome>, VerifyError> {
    let vars = gf4_vars(true);
    let xw = x_weights(&vars, n.into());
    let cw = crude_weights_h(14 * i64::from(n));
    ClosedFormId::H
        .iter()
        .zip(Region4::ALL)
        .map(|(&id, r)| {
            let crude = build_crude_h(r.name())?.expand_truncated(&cw)?;
            let crude = crude.truncate(xw.weights(), xw.bound())?;
            let closed = expand_closed(id, n)?;
            Ok([
                compare(
                    "gf",
                    format!("{} crude = closed", r.name()),
                    &crude,
                    &closed,
                    &xw,
                )?,
                compare(
                    "gf",
                    format!("{} crude = paths", r.name()),
                    &crude,
                    &gf4_sum(n, Some(r), true),
                    &xw,
                )?,
            ])
        })
        .collect::<Result<Vec<_>, VerifyError>>()
        .map(|v| v.into_iter().flatten().collect())
}

/// The whole generating-function chain at one truncation.
pub fn gf(n: u32) -> Result<Vec<Outcome>, VerifyError> {
    let mut out = vec![eq1(n)?];
    out.extend(f_forms(n)?);
    out.extend(crude_f(n)?);
    out.push(eq2(n)?);
    out.extend(h_forms(n)?);
    out.extend(crude_h(n)?);
    Ok(out)
}

/// `p = ceil(A / z)` satisfies `0 <= p z - A <= z - 1`, and the engine's
/// `Ω_{μ=0}` encoding of the ceiling picks out exactly that `p` (when it is
/// nonnegative).
pub fn ceiling_sandwich(max_abs: i64, max_z: i64) -> Result<Outcome, VerifyError> {
    let mut checked = 0;
    for z in 1..=max_z {
        for a in -max_abs..=max_abs {
            checked += 1;
            let p = ceil_div(a, z).expect("z >= 1");
            if !(0..z).contains(&(p * z - a)) {
                return Ok(Outcome::fail(
                    "ceiling",
                    "sandwich",
                    checked,
                    json!({ "A": a, "z": z, "p": p }),
                ));
            }
        }
    }
    // Engine encoding on a smaller window: x^p μ^(A - z p) (1 + ... + μ^(z-1)).
    let x = VarTable::new(["x"])?;
    let spec = EliminationSpec::new([("μ", ElimMode::Zero)]);
    let all = FactoredOmegaExpr::joint_table(&x, &spec)?;
    for z in 1..=max_z {
        for a in -3 * z..=3 * z {
            checked += 1;
            let num = SparsePoly::from_terms(&all, (0..z).map(|j| (vec![0, (a + j) as i32], 1)))?;
            let e =
                FactoredOmegaExpr::new(x.clone(), spec.clone(), num, vec![vec![1, -(z as i32)]])?;
            let got = e.expand_truncated(&WeightVector::new(vec![1], 4)?)?;
            let p = ceil_div(a, z).expect("z >= 1");
            let want = if p >= 0 {
                SparsePoly::monomial(&x, vec![p as i32], 1)?
            } else {
                SparsePoly::zero(&x)
            };
            if got != want {
                return Ok(Outcome::fail(
                    "ceiling",
                    "encoding",
                    checked,
                    json!({ "A": a, "z": z, "got": poly_json(&got), "want": poly_json(&want) }),
                ));
            }
        }
    }
    Ok(Outcome::pass("ceiling", checked))
}

/// The parity identity behind the odd-`b` substitution, for `c, d <= max`.
pub fn parity_identity(max: i64) -> Outcome {
    let mut checked = 0;
    for c in 0..=max {
        for d in 0..=max {
            checked += 1;
            if !lemma4_check(c, d) {
                return Outcome::fail(
                    "parity",
                    "parity",
                    checked,
                    json!({ "c": c, "d": d, "Y": parity_y(c, d) }),
                );
            }
        }
    }
    Outcome::pass("parity", checked)
}

/// Red-rank and `(b, d)` bounce formulas agree for all `k_i <= max`.
pub fn coherence3(max: u32) -> Outcome {
    let ks: Vec<KVec3> = (0..=max)
        .flat_map(|a| (0..=max).flat_map(move |b| (0..=max).map(move |c| KVec3::new(a, b, c))))
        .collect();
    let per_k: Vec<(u64, Option<Value>)> = ks
        .par_iter()
        .map(|&k| {
            let paths = enumerate_paths3(k);
            let bad = paths
                .iter()
                .find(|p| bounce3(p) != bounce3_bd(&to_param3(p)));
            let detail = bad.map(|p| {
                json!({ "path": p, "bounce": bounce3(p), "bounce_bd": bounce3_bd(&to_param3(p)) })
            });
            (paths.len() as u64, detail)
        })
        .collect();
    let checked = per_k.iter().map(|x| x.0).sum();
    match per_k.into_iter().find_map(|x| x.1) {
        None => Outcome::pass("coherence3", checked),
        Some(d) => Outcome::fail("coherence", "coherence3", checked, d),
    }
}

/// Exactly one `bounce4` case predicate holds on every path of `k^4`,
/// `k <= max`.
pub fn coherence4(max: u32) -> Outcome {
    let mut checked = 0;
    for k in 0..=max {
        for p in enumerate_paths4(k) {
            checked += 1;
            let hits = bounce4_predicates(&p);
            if hits.iter().filter(|h| **h).count() != 1 {
                return Outcome::fail(
                    "coherence",
                    "coherence4",
                    checked,
                    json!({ "path": p, "predicates": hits }),
                );
            }
        }
    }
    Outcome::pass("coherence4", checked)
}

/// Runs one named suite. `max` bounds the range scan; for `gf` it is the
/// truncation order.
pub fn run_suite(
    suite: Suite,
    max: u32,
    progress: impl Fn(&Outcome),
) -> Result<Vec<Outcome>, VerifyError> {
    let mut out = Vec::new();
    let mut push = |o: Outcome| {
        progress(&o);
        out.push(o);
    };
    match suite {
        Suite::Symmetry3 => {
            push(symmetry3(max));
            push(symmetry_lambda(max));
        }
        Suite::Symmetry4 => push(symmetry4(max)),
        Suite::Involution => push(involution(max)),
        Suite::Gf => {
            push(eq1(max)?);
            f_forms(max)?.into_iter().for_each(&mut push);
            crude_f(max)?.into_iter().for_each(&mut push);
            push(eq2(max)?);
            h_forms(max)?.into_iter().for_each(&mut push);
            crude_h(max)?.into_iter().for_each(&mut push);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranges_pass() {
        assert!(symmetry3(3).passed());
        assert!(symmetry_lambda(3).passed());
        assert!(symmetry4(3).passed());
        assert!(involution(6).passed());
        assert!(ceiling_sandwich(30, 4).unwrap().passed());
        assert!(parity_identity(20).passed());
        assert!(coherence3(4).passed());
        assert!(coherence4(4).passed());
    }

    #[test]
    fn gf_chain_at_order_three() {
        let out = gf(3).unwrap();
        assert_eq!(out.len(), 1 + 4 + 8 + 1 + 8 + 16);
        for o in &out {
            assert!(o.passed(), "{o}");
            assert!(o.checked > 0, "{o}");
        }
    }

    #[test]
    fn mismatch_is_reported_with_witness() {
        let vars = gf3_vars(false);
        let w = x_weights(&vars, 2);
        let a = gf3_sum(2, None, false);
        let b = gf3_sum(1, None, false);
        let o = compare("gf", "demo".into(), &a, &b, &w).unwrap();
        let ce = o.counterexample.unwrap();
        assert_eq!(ce.check, "demo");
        assert!(ce.detail.get("monomial").is_some());
    }
}
