//! Area/bounce-exchanging involutions on length-3 paths in run-length form
//! `(b, d)` for `k = (a, c, e)`.
//!
//! `phi` handles `a <= c` (labels `L11..L22`), `psi` handles `a > c`
//! (labels `G11..G32`). Both are involutions that swap area and bounce, and
//! they permute their case blocks in a fixed pattern; `verify_involution`
//! checks all of that exhaustively for one `(a, c)`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dyck::{bounce3_bd_raw, ceil2, floor2, param3_valid, ParamPath3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvolutionError {
    #[error("(b,d)=({b},{d}) is not a path for (a,c)=({a},{c})")]
    InvalidPath { a: i64, c: i64, b: i64, d: i64 },
    #[error("phi needs a <= c, got (a,c)=({a},{c})")]
    PhiDomain { a: i64, c: i64 },
    #[error("psi needs a > c, got (a,c)=({a},{c})")]
    PsiDomain { a: i64, c: i64 },
    #[error("odd numerator {0} before halving")]
    Parity(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseLabel {
    L11,
    L12,
    L21,
    L22,
    G11,
    G12,
    G21,
    G22,
    G31,
    G32,
}

impl CaseLabel {
    /// The block a path of this label is sent to.
    pub fn partner(self) -> CaseLabel {
        use CaseLabel::*;
        match self {
            L11 => L11,
            L22 => L22,
            L12 => L21,
            L21 => L12,
            G11 => G11,
            G32 => G32,
            G12 => G21,
            G21 => G12,
            G22 => G31,
            G31 => G22,
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `1` if `a - b + c - d` is odd.
pub fn parity_x(a: i64, c: i64, b: i64, d: i64) -> i64 {
    (a - b + c - d).rem_euclid(2)
}

/// `1` if `c + ceil(d/2)` is odd.
pub fn parity_y(c: i64, d: i64) -> i64 {
    (c + ceil2(d)).rem_euclid(2)
}

/// With `Y = parity_y(c, d)` and `d' = 2 floor(d/2) + Y`, checks that
/// `parity_y(c, d')` equals the parity of `d`.
pub fn lemma4_check(c: i64, d: i64) -> bool {
    let y = parity_y(c, d);
    let d2 = 2 * floor2(d) + y;
    parity_y(c, d2) == d.rem_euclid(2)
}

fn half(n: i64) -> Result<i64, InvolutionError> {
    if n.rem_euclid(2) != 0 {
        return Err(InvolutionError::Parity(n));
    }
    Ok(n / 2)
}

fn check_path(a: i64, c: i64, b: i64, d: i64) -> Result<(), InvolutionError> {
    if param3_valid(a, c, b, d) {
        Ok(())
    } else {
        Err(InvolutionError::InvalidPath { a, c, b, d })
    }
}

pub fn classify_phi(a: i64, c: i64, b: i64, d: i64) -> Result<CaseLabel, InvolutionError> {
    if a > c {
        return Err(InvolutionError::PhiDomain { a, c });
    }
    check_path(a, c, b, d)?;
    Ok(if 2 * (a - b) <= d {
        if 3 * b + d - a <= c {
            CaseLabel::L11
        } else {
            CaseLabel::L12
        }
    } else if 2 * b + ceil2(d) <= c {
        CaseLabel::L21
    } else {
        CaseLabel::L22
    })
}

pub fn phi(a: i64, c: i64, b: i64, d: i64) -> Result<(i64, i64), InvolutionError> {
    let image = match classify_phi(a, c, b, d)? {
        CaseLabel::L11 => (b, 3 * a - 5 * b + c - d),
        CaseLabel::L12 => {
            let x = parity_x(a, c, b, d);
            (half(a - b + c - d - x)?, 2 * a - 2 * b + x)
        }
        CaseLabel::L21 => (a - floor2(d), 2 * d - 2 * b + c - 3 * ceil2(d)),
        CaseLabel::L22 => {
            let y = parity_y(c, d);
            (a - b - d + half(c + ceil2(d) - y)?, 2 * floor2(d) + y)
        }
        _ => unreachable!("classify_phi only returns L labels"),
    };
    Ok(image)
}

/// Classification for `a > c`. The single-path blocks `G12` and `G21` are
/// tested before the regions `G1` and `G2` that contain them.
pub fn classify_psi(a: i64, c: i64, b: i64, d: i64) -> Result<CaseLabel, InvolutionError> {
    if a <= c {
        return Err(InvolutionError::PsiDomain { a, c });
    }
    check_path(a, c, b, d)?;
    let r2 = a - b;
    Ok(if b == 0 && d == 2 * c {
        CaseLabel::G12
    } else if r2 == c && d == 2 * r2 {
        CaseLabel::G21
    } else if r2 > c && 2 * c <= d {
        CaseLabel::G11
    } else if r2 <= c && 2 * r2 <= d {
        CaseLabel::G22
    } else if 2 * b + ceil2(d) <= c {
        CaseLabel::G31
    } else {
        CaseLabel::G32
    })
}

pub fn psi(a: i64, c: i64, b: i64, d: i64) -> Result<(i64, i64), InvolutionError> {
    let image = match classify_psi(a, c, b, d)? {
        CaseLabel::G11 => (a - b + c - d, d),
        CaseLabel::G12 => (a - c, d),
        CaseLabel::G21 => (0, d),
        CaseLabel::G22 => {
            let x = parity_x(a, c, b, d);
            (half(a - b + c - d - x)?, 2 * a - 2 * b + x)
        }
        CaseLabel::G31 => (a - floor2(d), 2 * d - 2 * b + c - 3 * ceil2(d)),
        // Same row as L22. The minus sign in front of the halved term does not
        // give an involution (see tests).
        CaseLabel::G32 => {
            let y = parity_y(c, d);
            (a - b - d + half(c + ceil2(d) - y)?, 2 * floor2(d) + y)
        }
        _ => unreachable!("classify_psi only returns G labels"),
    };
    Ok(image)
}

pub fn classify(a: i64, c: i64, b: i64, d: i64) -> Result<CaseLabel, InvolutionError> {
    if a <= c {
        classify_phi(a, c, b, d)
    } else {
        classify_psi(a, c, b, d)
    }
}

fn map_raw(a: i64, c: i64, b: i64, d: i64) -> Result<(i64, i64), InvolutionError> {
    if a <= c {
        phi(a, c, b, d)
    } else {
        psi(a, c, b, d)
    }
}

/// `phi` when `a <= c`, `psi` otherwise; `e` is carried through.
pub fn apply_involution(p: &ParamPath3) -> Result<ParamPath3, InvolutionError> {
    let (a, c) = (p.a as i64, p.c as i64);
    let (b2, d2) = map_raw(a, c, p.b as i64, p.d as i64)?;
    check_path(a, c, b2, d2)?;
    Ok(ParamPath3 {
        b: b2 as u32,
        d: d2 as u32,
        ..*p
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    InvalidImage,
    NotInvolution,
    StatMismatch,
    WrongCaseExchange,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub b: i64,
    pub d: i64,
    pub reason: FailureReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionReport {
    pub a: u32,
    pub c: u32,
    pub checked: u64,
    pub failures: Vec<Failure>,
    pub case_counts: BTreeMap<CaseLabel, u64>,
}

impl InvolutionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for InvolutionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(a,c)=({},{}): {} paths, {} failures",
            self.a,
            self.c,
            self.checked,
            self.failures.len()
        )?;
        for x in &self.failures {
            write!(f, "\n  (b,d)=({},{}): {:?}", x.b, x.d, x.reason)?;
        }
        Ok(())
    }
}

fn area_raw(a: i64, c: i64, b: i64, d: i64) -> i64 {
    2 * a - 2 * b + c - d
}

/// Checks every path of `(a, c)`: the image is a path, the map squares to
/// the identity, area and bounce are exchanged, and the image lands in the
/// partner block.
pub fn verify_involution(a: u32, c: u32) -> InvolutionReport {
    let (ai, ci) = (a as i64, c as i64);
    let mut failures = Vec::new();
    let mut case_counts = BTreeMap::new();
    let mut checked = 0;
    for b in 0..=ai {
        for d in 0..=ai - b + ci {
            checked += 1;
            let label = classify(ai, ci, b, d).expect("enumerated paths are valid");
            *case_counts.entry(label).or_insert(0) += 1;
            let fail = |reason| Failure { b, d, reason };
            let (b2, d2) = match map_raw(ai, ci, b, d) {
                Ok(img) if param3_valid(ai, ci, img.0, img.1) => img,
                _ => {
                    failures.push(fail(FailureReason::InvalidImage));
                    continue;
                }
            };
            if map_raw(ai, ci, b2, d2).ok() != Some((b, d)) {
                failures.push(fail(FailureReason::NotInvolution));
            }
            let stats = (area_raw(ai, ci, b, d), bounce3_bd_raw(ai, ci, b, d));
            let image_stats = (area_raw(ai, ci, b2, d2), bounce3_bd_raw(ai, ci, b2, d2));
            if image_stats != (stats.1, stats.0) {
                failures.push(fail(FailureReason::StatMismatch));
            }
            if classify(ai, ci, b2, d2).ok() != Some(label.partner()) {
                failures.push(fail(FailureReason::WrongCaseExchange));
            }
        }
    }
    InvolutionReport {
        a,
        c,
        checked,
        failures,
        case_counts,
    }
}

/// Reports for all `0 <= a, c <= max`, ordered by `(a, c)`.
pub fn verify_grid(max: u32) -> Vec<InvolutionReport> {
    let pairs: Vec<(u32, u32)> = (0..=max)
        .flat_map(|a| (0..=max).map(move |c| (a, c)))
        .collect();
    pairs
        .into_par_iter()
        .map(|(a, c)| verify_involution(a, c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::{area3_bd, bounce3_bd};
    use CaseLabel::*;

    #[test]
    fn parity_examples() {
        assert_eq!(parity_x(1, 1, 1, 1), 0);
        assert_eq!(parity_y(1, 2), 0);
        assert_eq!(parity_y(1, 1), 0);
        assert_eq!(parity_y(2, 1), 1);
    }

    #[test]
    fn parity_identity_examples() {
        assert!(lemma4_check(1, 2));
        assert!(lemma4_check(0, 0));
        assert!(lemma4_check(2, 3));
    }

    #[test]
    fn classify_phi_examples() {
        assert_eq!(classify_phi(1, 1, 0, 0), Ok(L21));
        assert_eq!(classify_phi(1, 1, 1, 1), Ok(L12));
        assert_eq!(classify_phi(1, 3, 0, 2), Ok(L11));
        assert!(matches!(
            classify_phi(2, 1, 0, 0),
            Err(InvolutionError::PhiDomain { .. })
        ));
        assert!(matches!(
            classify_phi(1, 1, 2, 0),
            Err(InvolutionError::InvalidPath { .. })
        ));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(1, 1, 0, 0), Ok((1, 1)));
        assert_eq!(phi(1, 1, 1, 1), Ok((0, 0)));
        assert_eq!(phi(1, 3, 0, 2), Ok((0, 4)));
    }

    #[test]
    fn classify_psi_examples() {
        assert_eq!(classify_psi(2, 1, 0, 2), Ok(G12));
        assert_eq!(classify_psi(2, 1, 1, 2), Ok(G21));
        assert_eq!(classify_psi(2, 1, 0, 0), Ok(G31));
        assert!(classify_psi(1, 1, 0, 0).is_err());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(2, 1, 0, 2), Ok((1, 2)));
        assert_eq!(psi(2, 1, 1, 2), Ok((0, 2)));
        assert_eq!(psi(3, 1, 0, 2), Ok((2, 2)));
    }

    #[test]
    fn apply_involution_examples() {
        let p = ParamPath3::new(1, 1, 7, 0, 0).unwrap();
        let q = apply_involution(&p).unwrap();
        assert_eq!((q.b, q.d, q.e), (1, 1, 7));
        assert_eq!(apply_involution(&q).unwrap(), p);
        assert_eq!((area3_bd(&p), bounce3_bd(&p)), (3, 0));
        assert_eq!((area3_bd(&q), bounce3_bd(&q)), (0, 3));

        let p = ParamPath3::new(2, 1, 0, 0, 2).unwrap();
        let q = apply_involution(&p).unwrap();
        assert_eq!((q.b, q.d), (1, 2));
        assert_eq!(apply_involution(&q).unwrap(), p);
    }

    #[test]
    fn verify_examples() {
        let r = verify_involution(1, 1);
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, 5);
        for c in 0..6 {
            let r = verify_involution(0, c);
            assert!(r.passed(), "{r}");
            assert_eq!(r.checked, c as u64 + 1);
        }
        let r = verify_involution(5, 3);
        assert!(r.passed(), "{r}");
        for l in [G11, G12, G21, G22, G31, G32] {
            assert!(
                r.case_counts.get(&l).copied().unwrap_or(0) > 0,
                "{l} missing"
            );
        }
    }

    #[test]
    fn g12_and_g21_are_singletons() {
        for a in 1..=15 {
            for c in 0..a {
                let r = verify_involution(a, c);
                assert_eq!(r.case_counts.get(&G12), Some(&1));
                assert_eq!(r.case_counts.get(&G21), Some(&1));
            }
        }
    }

    #[test]
    fn halving_steps_are_exact() {
        for a in 0..=20i64 {
            for c in 0..=20i64 {
                for b in 0..=a {
                    for d in 0..=a - b + c {
                        let l = classify(a, c, b, d).unwrap();
                        if matches!(l, L12 | G22) {
                            assert_eq!((a - b + c - d - parity_x(a, c, b, d)) % 2, 0);
                        }
                        if matches!(l, L22 | G32) {
                            assert_eq!((c + ceil2(d) - parity_y(c, d)) % 2, 0);
                        }
                    }
                }
            }
        }
    }

    /// The G32 row with a minus sign before the halved term.
    fn psi_g32_minus(a: i64, c: i64, b: i64, d: i64) -> (i64, i64) {
        let y = parity_y(c, d);
        (a - b - d - (c + ceil2(d) - y) / 2, 2 * floor2(d) + y)
    }

    #[test]
    fn minus_sign_in_g32_breaks_the_exchange() {
        // a=5, c=3, (b,d)=(2,0) is in G32 with area 9 and bounce 4.
        assert_eq!(classify_psi(5, 3, 2, 0), Ok(G32));
        assert_eq!(psi(5, 3, 2, 0), Ok((4, 1)));
        let (b2, d2) = psi_g32_minus(5, 3, 2, 0);
        assert_eq!((b2, d2), (2, 1));
        assert_ne!(area_raw(5, 3, b2, d2), bounce3_bd_raw(5, 3, 2, 0));
    }

    #[test]
    fn grid_is_ordered() {
        let g = verify_grid(4);
        assert_eq!(g.len(), 25);
        assert!(g.iter().all(|r| r.passed()));
        assert_eq!((g[7].a, g[7].c), (1, 2));
    }

    #[test]
    fn report_serializes() {
        let r = verify_involution(1, 1);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains(r#""case_counts":{"L11":"#) || s.contains(r#""case_counts":{"L12":"#));
        let back: InvolutionReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
