//! Path models for length-3 vectors `(k1, k2, k3)` and for `(k, k, k, k)`,
//! their enumeration, and the piecewise-linear area/bounce statistics.
//!
//! A length-3 path is stored by its red ranks `(r2, r3)` (`r1 = 0`); the
//! equivalent run-length form `(b, d)` is `ParamPath3`. A `k^4` path is stored
//! by its run lengths `(a, b, c)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyckError {
    #[error("divisor must be positive, got {0}")]
    NonPositiveDivisor(i64),
    #[error("invalid path: {0}")]
    InvalidPath(String),
}

/// Ceiling of `a / z` for any integer `a` and positive `z`.
pub fn ceil_div(a: i64, z: i64) -> Result<i64, DyckError> {
    if z <= 0 {
        return Err(DyckError::NonPositiveDivisor(z));
    }
    Ok(-(-a).div_euclid(z))
}

/// Floor of `a / z` for any integer `a` and positive `z`.
pub fn floor_div(a: i64, z: i64) -> Result<i64, DyckError> {
    if z <= 0 {
        return Err(DyckError::NonPositiveDivisor(z));
    }
    Ok(a.div_euclid(z))
}

// Internal shorthands for the statistics, where the divisor is a literal.
pub(crate) fn ceil2(a: i64) -> i64 {
    -(-a).div_euclid(2)
}

pub(crate) fn floor2(a: i64) -> i64 {
    a.div_euclid(2)
}

fn ceil3(a: i64) -> i64 {
    -(-a).div_euclid(3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KVec3 {
    pub k1: u32,
    pub k2: u32,
    pub k3: u32,
}

impl KVec3 {
    pub const fn new(k1: u32, k2: u32, k3: u32) -> Self {
        KVec3 { k1, k2, k3 }
    }

    /// Number of paths, `(k1+1)(k2+1) + k1(k1+1)/2`.
    pub fn path_count(&self) -> u64 {
        let (k1, k2) = (self.k1 as u64, self.k2 as u64);
        (k1 + 1) * (k2 + 1) + k1 * (k1 + 1) / 2
    }
}

/// A path for `k`, by red ranks. Invariant: `r2 <= k1`, `r3 <= r2 + k2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path3 {
    pub k: KVec3,
    pub r2: u32,
    pub r3: u32,
}

impl Path3 {
    pub fn new(k: KVec3, r2: u32, r3: u32) -> Result<Self, DyckError> {
        if r2 > k.k1 || r3 > r2 + k.k2 {
            return Err(DyckError::InvalidPath(format!(
                "red ranks ({r2},{r3}) out of range for k={:?}",
                (k.k1, k.k2, k.k3)
            )));
        }
        Ok(Path3 { k, r2, r3 })
    }
}

/// A path for `(a, c, e)` by blue-run lengths: `r2 = a - b`, `r3 = a - b + c - d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParamPath3 {
    pub a: u32,
    pub c: u32,
    pub e: u32,
    pub b: u32,
    pub d: u32,
}

impl ParamPath3 {
    pub fn new(a: u32, c: u32, e: u32, b: u32, d: u32) -> Result<Self, DyckError> {
        if !param3_valid(a as i64, c as i64, b as i64, d as i64) {
            return Err(DyckError::InvalidPath(format!(
                "(b,d)=({b},{d}) out of range for (a,c)=({a},{c})"
            )));
        }
        Ok(ParamPath3 { a, c, e, b, d })
    }

    pub fn kvec(&self) -> KVec3 {
        KVec3::new(self.a, self.c, self.e)
    }
}

/// Validity of a `(b, d)` pair for `(a, c)`, on signed inputs.
pub fn param3_valid(a: i64, c: i64, b: i64, d: i64) -> bool {
    b >= 0 && d >= 0 && a - b >= 0 && a - b + c - d >= 0
}

/// A `k^4` path. Invariant: `a <= k`, `b <= 2k - a`, `c <= 3k - a - b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path4 {
    pub k: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Path4 {
    pub fn new(k: u32, a: u32, b: u32, c: u32) -> Result<Self, DyckError> {
        if a > k || b > 2 * k - a || c > 3 * k - a - b {
            return Err(DyckError::InvalidPath(format!(
                "(a,b,c)=({a},{b},{c}) out of range for k={k}"
            )));
        }
        Ok(Path4 { k, a, b, c })
    }

    pub fn red_ranks(&self) -> (u32, u32, u32) {
        let (k, a, b, c) = (self.k, self.a, self.b, self.c);
        (k - a, 2 * k - a - b, 3 * k - a - b - c)
    }
}

/// All paths of `k`, ordered lexicographically by `(r2, r3)`.
pub fn enumerate_paths3(k: KVec3) -> Vec<Path3> {
    let mut out = Vec::with_capacity(k.path_count() as usize);
    for r2 in 0..=k.k1 {
        for r3 in 0..=r2 + k.k2 {
            out.push(Path3 { k, r2, r3 });
        }
    }
    out
}

pub fn area3(p: &Path3) -> u32 {
    p.r2 + p.r3
}

pub fn bounce3(p: &Path3) -> u32 {
    let (k1, k2) = (p.k.k1 as i64, p.k.k2 as i64);
    let (r2, r3) = (p.r2 as i64, p.r3 as i64);
    let m = r2.min(k2);
    let s = r2 + k2 - r3;
    let v = if s >= 2 * m {
        2 * (k1 - r2) + s - m
    } else {
        2 * (k1 - r2) + ceil2(s)
    };
    v as u32
}

pub fn area3_bd(p: &ParamPath3) -> u32 {
    2 * p.a - 2 * p.b + p.c - p.d
}

/// Bounce in run-length coordinates.
pub fn bounce3_bd(p: &ParamPath3) -> u32 {
    bounce3_bd_raw(p.a as i64, p.c as i64, p.b as i64, p.d as i64) as u32
}

pub(crate) fn bounce3_bd_raw(a: i64, c: i64, b: i64, d: i64) -> i64 {
    let m = (a - b).min(c);
    if d >= 2 * m {
        2 * b + d - m
    } else {
        2 * b + ceil2(d)
    }
}

pub fn to_param3(p: &Path3) -> ParamPath3 {
    ParamPath3 {
        a: p.k.k1,
        c: p.k.k2,
        e: p.k.k3,
        b: p.k.k1 - p.r2,
        d: p.r2 + p.k.k2 - p.r3,
    }
}

pub fn to_redrank3(p: &ParamPath3) -> Path3 {
    Path3 {
        k: p.kvec(),
        r2: p.a - p.b,
        r3: p.a - p.b + p.c - p.d,
    }
}

/// All `k^4` paths, ordered lexicographically by `(a, b, c)`.
pub fn enumerate_paths4(k: u32) -> Vec<Path4> {
    let mut out = Vec::new();
    for a in 0..=k {
        for b in 0..=2 * k - a {
            for c in 0..=3 * k - a - b {
                out.push(Path4 { k, a, b, c });
            }
        }
    }
    out
}

pub fn area4(p: &Path4) -> u32 {
    6 * p.k - 3 * p.a - 2 * p.b - p.c
}

/// The eight linear pieces of the `k^4` bounce formula. Names follow the
/// generating-function split: part 1 is `b >= 2k - 2a`, parts 2 and 3 are
/// `b < 2k - 2a` with `b` even and odd respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Bounce4Case {
    P1C1,
    P1C2,
    P2C1,
    P2C2,
    P2C3,
    P3C1,
    P3C2,
    P3C3,
}

impl Bounce4Case {
    pub const ALL: [Bounce4Case; 8] = [
        Bounce4Case::P1C1,
        Bounce4Case::P1C2,
        Bounce4Case::P2C1,
        Bounce4Case::P2C2,
        Bounce4Case::P2C3,
        Bounce4Case::P3C1,
        Bounce4Case::P3C2,
        Bounce4Case::P3C3,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Bounce4Case::P1C1 => "P1C1",
            Bounce4Case::P1C2 => "P1C2",
            Bounce4Case::P2C1 => "P2C1",
            Bounce4Case::P2C2 => "P2C2",
            Bounce4Case::P2C3 => "P2C3",
            Bounce4Case::P3C1 => "P3C1",
            Bounce4Case::P3C2 => "P3C2",
            Bounce4Case::P3C3 => "P3C3",
        }
    }
}

/// Evaluates every case predicate independently; on valid paths exactly one
/// entry is true (see tests). Halves are cleared by doubling, so the part-2
/// case-3 bound `c < 3k - 3a - 3b/2` is `2c < 6k - 6a - 3b`.
pub fn bounce4_predicates(p: &Path4) -> [bool; 8] {
    let (k, a, b, c) = (p.k as i64, p.a as i64, p.b as i64, p.c as i64);
    let part1 = b >= 2 * k - 2 * a;
    let even = b % 2 == 0;
    let part2 = !part1 && even;
    let part3 = !part1 && !even;
    // Odd b uses b + 1 in place of b, shifted by one.
    let hi_odd = 6 * k - 2 * a - 3 * (b + 1) + 2;
    let lo_odd = 6 * k - 6 * a - 3 * (b + 1) + 2;
    [
        part1 && c >= 4 * k - 2 * a - 2 * b,
        part1 && c < 4 * k - 2 * a - 2 * b,
        part2 && 2 * c >= 6 * k - 2 * a - 3 * b,
        part2 && 6 * k - 6 * a - 3 * b <= 2 * c && 2 * c < 6 * k - 2 * a - 3 * b,
        part2 && 2 * c < 6 * k - 6 * a - 3 * b,
        part3 && 2 * c >= hi_odd,
        part3 && lo_odd <= 2 * c && 2 * c < hi_odd,
        part3 && 2 * c < lo_odd,
    ]
}

pub fn bounce4_case(p: &Path4) -> Bounce4Case {
    let preds = bounce4_predicates(p);
    let i = preds
        .iter()
        .position(|x| *x)
        .expect("bounce case predicates are total on valid paths");
    Bounce4Case::ALL[i]
}

pub fn bounce4(p: &Path4) -> u32 {
    let (k, a, b, c) = (p.k as i64, p.a as i64, p.b as i64, p.c as i64);
    let v = match bounce4_case(p) {
        Bounce4Case::P1C1 => 6 * a + 3 * b + c - 4 * k,
        Bounce4Case::P1C2 => 5 * a + 2 * b + ceil2(c) - 2 * k,
        Bounce4Case::P2C1 => 4 * a + 2 * b + c - 2 * k,
        Bounce4Case::P2C2 => {
            let s = b / 2;
            2 * a + s + k + ceil2(3 * a + 3 * s + c - 3 * k)
        }
        Bounce4Case::P2C3 => 3 * a + b + ceil3(c),
        Bounce4Case::P3C1 => 4 * a + 2 * b + c - 2 * k + 1,
        Bounce4Case::P3C2 => {
            let h = (b + 1) / 2;
            2 * a + h + k + ceil2(3 * a + 3 * h + c - 3 * k - 1)
        }
        Bounce4Case::P3C3 => 3 * a + b + 1 + ceil3(c - 1),
    };
    debug_assert!(v >= 0, "negative bounce at {p:?}");
    v as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path3(k: (u32, u32, u32), r: (u32, u32)) -> Path3 {
        Path3::new(KVec3::new(k.0, k.1, k.2), r.0, r.1).unwrap()
    }

    #[test]
    fn enumerate3_examples() {
        let p = enumerate_paths3(KVec3::new(0, 0, 0));
        assert_eq!(p.len(), 1);
        assert_eq!((p[0].r2, p[0].r3), (0, 0));
        assert_eq!(enumerate_paths3(KVec3::new(1, 1, 1)).len(), 5);
        assert_eq!(enumerate_paths3(KVec3::new(2, 1, 3)).len(), 9);
    }

    #[test]
    fn enumerate3_count_matches_closed_form() {
        for k1 in 0..=20 {
            for k2 in 0..=20 {
                let k = KVec3::new(k1, k2, 0);
                assert_eq!(enumerate_paths3(k).len() as u64, k.path_count());
            }
        }
    }

    #[test]
    fn enumerate3_is_lexicographic() {
        let ps = enumerate_paths3(KVec3::new(3, 2, 1));
        assert!(ps
            .windows(2)
            .all(|w| (w[0].r2, w[0].r3) < (w[1].r2, w[1].r3)));
    }

    #[test]
    fn area3_examples() {
        assert_eq!(area3(&path3((0, 0, 0), (0, 0))), 0);
        assert_eq!(area3(&path3((1, 1, 1), (1, 2))), 3);
        assert_eq!(area3(&path3((2, 1, 3), (2, 3))), 5);
    }

    #[test]
    fn bounce3_examples() {
        assert_eq!(bounce3(&path3((1, 1, 1), (0, 0))), 3);
        assert_eq!(bounce3(&path3((1, 1, 1), (1, 1))), 1);
        assert_eq!(bounce3(&path3((1, 1, 1), (1, 2))), 0);
    }

    #[test]
    fn bounce3_bd_examples() {
        let pp = |a, c, b, d| ParamPath3::new(a, c, 0, b, d).unwrap();
        assert_eq!(bounce3_bd(&pp(1, 1, 0, 0)), 0);
        assert_eq!(bounce3_bd(&pp(1, 1, 1, 1)), 3);
        assert_eq!(bounce3_bd(&pp(2, 1, 0, 2)), 1);
    }

    #[test]
    fn conversions() {
        let p = path3((1, 1, 1), (1, 2));
        let pp = to_param3(&p);
        assert_eq!((pp.b, pp.d), (0, 0));
        assert_eq!(to_redrank3(&pp), p);
        for p in enumerate_paths3(KVec3::new(3, 2, 1)) {
            assert_eq!(to_redrank3(&to_param3(&p)), p);
        }
        let back = to_redrank3(&ParamPath3::new(1, 1, 0, 0, 0).unwrap());
        assert_eq!((back.r2, back.r3), (1, 2));
    }

    #[test]
    fn invalid_paths_rejected() {
        assert!(Path3::new(KVec3::new(1, 1, 1), 2, 0).is_err());
        assert!(Path3::new(KVec3::new(1, 1, 1), 1, 3).is_err());
        assert!(ParamPath3::new(1, 1, 0, 2, 0).is_err());
        assert!(ParamPath3::new(1, 1, 0, 0, 3).is_err());
        assert!(Path4::new(1, 2, 0, 0).is_err());
        assert!(Path4::new(1, 0, 3, 0).is_err());
        assert!(Path4::new(1, 1, 1, 2).is_err());
    }

    #[test]
    fn bounce3_agrees_with_bd_form() {
        for k1 in 0..=12 {
            for k2 in 0..=12 {
                for p in enumerate_paths3(KVec3::new(k1, k2, 0)) {
                    assert_eq!(bounce3(&p), bounce3_bd(&to_param3(&p)), "{p:?}");
                }
            }
        }
    }

    #[test]
    fn bounce3_extremes() {
        for k1 in 0..=8 {
            for k2 in 0..=8 {
                let k = KVec3::new(k1, k2, 0);
                let top = path3((k1, k2, 0), (k1, k1 + k2));
                assert_eq!(bounce3(&top), 0);
                assert_eq!(area3(&top), 2 * k1 + k2);
                assert!(enumerate_paths3(k).iter().all(|p| area3(p) <= 2 * k1 + k2));
            }
        }
    }

    #[test]
    fn statistics_ignore_k3() {
        for p in enumerate_paths3(KVec3::new(4, 3, 0)) {
            let q = Path3::new(KVec3::new(4, 3, 9), p.r2, p.r3).unwrap();
            assert_eq!((area3(&p), bounce3(&p)), (area3(&q), bounce3(&q)));
        }
    }

    #[test]
    fn enumerate4_examples() {
        assert_eq!(
            enumerate_paths4(0),
            vec![Path4 {
                k: 0,
                a: 0,
                b: 0,
                c: 0
            }]
        );
        assert_eq!(enumerate_paths4(1).len(), 14);
        let ps = enumerate_paths4(2);
        assert!(ps
            .windows(2)
            .all(|w| (w[0].a, w[0].b, w[0].c) < (w[1].a, w[1].b, w[1].c)));
    }

    #[test]
    fn area4_and_bounce4_examples() {
        let p = |a, b, c| Path4::new(1, a, b, c).unwrap();
        assert_eq!(area4(&p(1, 1, 1)), 0);
        assert_eq!(area4(&p(0, 0, 0)), 6);
        assert_eq!(area4(&p(0, 1, 0)), 4);
        assert_eq!(bounce4(&p(1, 1, 1)), 6);
        assert_eq!(bounce4(&p(0, 0, 0)), 0);
        assert_eq!(bounce4(&p(0, 1, 0)), 2);
        assert_eq!(bounce4_case(&p(1, 1, 1)), Bounce4Case::P1C1);
        assert_eq!(bounce4_case(&p(0, 0, 0)), Bounce4Case::P2C3);
        assert_eq!(bounce4_case(&p(0, 1, 0)), Bounce4Case::P3C3);
    }

    #[test]
    fn bounce4_cases_partition_the_grid() {
        for k in 0..=12 {
            for p in enumerate_paths4(k) {
                let hits = bounce4_predicates(&p).iter().filter(|x| **x).count();
                assert_eq!(hits, 1, "{p:?}");
                let (r2, r3, r4) = p.red_ranks();
                assert_eq!(area4(&p), r2 + r3 + r4);
            }
        }
    }

    #[test]
    fn ceil_div_examples() {
        assert_eq!(ceil_div(3, 2), Ok(2));
        assert_eq!(ceil_div(-1, 3), Ok(0));
        assert_eq!(ceil_div(7, 3), Ok(3));
        assert_eq!(ceil_div(1, 0), Err(DyckError::NonPositiveDivisor(0)));
        assert_eq!(floor_div(-1, 3), Ok(-1));
        assert!(floor_div(1, -2).is_err());
    }

    proptest! {
        #[test]
        fn ceil_div_sandwich(a in -1000i64..=1000, z in 1i64..=10) {
            let p = ceil_div(a, z).unwrap();
            prop_assert!(0 <= p * z - a && p * z - a < z);
        }

        #[test]
        fn statistics_are_nonnegative(k1 in 0u32..15, k2 in 0u32..15) {
            for p in enumerate_paths3(KVec3::new(k1, k2, 0)) {
                let b = bounce3_bd_raw(k1 as i64, k2 as i64, (k1 - p.r2) as i64, (p.r2 + k2 - p.r3) as i64);
                prop_assert!(b >= 0);
                prop_assert!(bounce3(&p) <= 2 * k1 + k2);
            }
        }
    }
}
