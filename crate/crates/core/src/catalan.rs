//! q,t-Catalan polynomials assembled from path statistics, plus the
//! y-refined versions and their multi-k generating-function sums.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dyck::{
    area3, area4, bounce3, bounce4, bounce4_case, enumerate_paths3, enumerate_paths4, Bounce4Case,
    KVec3, Path3,
};
use crate::polynomial::{SparsePoly, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalanError {
    #[error("{0:?} is not weakly decreasing")]
    NotPartition([u32; 3]),
    #[error("unknown region `{0}`")]
    UnknownRegion(String),
}

pub fn qt_vars() -> VarTable {
    VarTable::new(["q", "t"]).unwrap()
}

pub fn refined3_vars() -> VarTable {
    VarTable::new(["q", "t", "y2", "y3"]).unwrap()
}

pub fn refined4_vars() -> VarTable {
    VarTable::new(["q", "t", "y2", "y3", "y4"]).unwrap()
}

/// Variables of the length-3 generating function, `x1 x2 x3 y2 y3 q t`.
pub fn gf3_vars(refined: bool) -> VarTable {
    if refined {
        VarTable::new(["x1", "x2", "x3", "y2", "y3", "q", "t"]).unwrap()
    } else {
        VarTable::new(["x1", "x2", "x3", "q", "t"]).unwrap()
    }
}

/// Variables of the `k^4` generating function, `x y2 y3 y4 q t`.
pub fn gf4_vars(refined: bool) -> VarTable {
    if refined {
        VarTable::new(["x", "y2", "y3", "y4", "q", "t"]).unwrap()
    } else {
        VarTable::new(["x", "q", "t"]).unwrap()
    }
}

fn collect(vars: &VarTable, terms: Vec<(Vec<i32>, i64)>) -> SparsePoly {
    SparsePoly::from_terms(vars, terms).expect("path counts fit in i64")
}

pub fn catalan_poly3(k: KVec3) -> SparsePoly {
    let terms = enumerate_paths3(k)
        .iter()
        .map(|p| (vec![area3(p) as i32, bounce3(p) as i32], 1))
        .collect();
    collect(&qt_vars(), terms)
}

/// Distinct rearrangements of a triple, in lexicographic order.
pub fn rearrangements(parts: [u32; 3]) -> Vec<KVec3> {
    let [x, y, z] = parts;
    let mut out: Vec<KVec3> = [
        [x, y, z],
        [x, z, y],
        [y, x, z],
        [y, z, x],
        [z, x, y],
        [z, y, x],
    ]
    .into_iter()
    .map(|[a, b, c]| KVec3::new(a, b, c))
    .collect();
    out.sort();
    out.dedup();
    out
}

/// Sum of `catalan_poly3` over the distinct orderings of `lambda`.
pub fn catalan_poly_lambda3(lambda: [u32; 3]) -> Result<SparsePoly, CatalanError> {
    if lambda[0] < lambda[1] || lambda[1] < lambda[2] {
        return Err(CatalanError::NotPartition(lambda));
    }
    let mut acc = SparsePoly::zero(&qt_vars());
    for k in rearrangements(lambda) {
        acc = acc.add(&catalan_poly3(k)).expect("same table");
    }
    Ok(acc)
}

pub fn catalan_poly_k4(k: u32) -> SparsePoly {
    let terms = enumerate_paths4(k)
        .iter()
        .map(|p| (vec![area4(p) as i32, bounce4(p) as i32], 1))
        .collect();
    collect(&qt_vars(), terms)
}

/// The four linear regions of the length-3 bounce formula. Part 1 is
/// `r2 > k2`, part 2 is `r2 <= k2`; case 1 is the branch without a ceiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region3 {
    P1C1,
    P1C2,
    P2C1,
    P2C2,
}

impl Region3 {
    pub const ALL: [Region3; 4] = [Region3::P1C1, Region3::P1C2, Region3::P2C1, Region3::P2C2];

    pub fn contains(&self, p: &Path3) -> bool {
        let (k2, r2, r3) = (p.k.k2 as i64, p.r2 as i64, p.r3 as i64);
        let part1 = r2 > k2;
        match self {
            Region3::P1C1 => part1 && r2 - r3 - k2 >= 0,
            Region3::P1C2 => part1 && k2 - r2 + r3 > 0,
            Region3::P2C1 => !part1 && k2 - r2 - r3 >= 0,
            Region3::P2C2 => !part1 && r2 + r3 - k2 > 0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Region3::P1C1 => "P1C1",
            Region3::P1C2 => "P1C2",
            Region3::P2C1 => "P2C1",
            Region3::P2C2 => "P2C2",
        }
    }
}

impl fmt::Display for Region3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Region3 {
    type Err = CatalanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Region3::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| CatalanError::UnknownRegion(s.to_string()))
    }
}

/// Regions of the `k^4` generating function coincide with the bounce cases.
pub type Region4 = Bounce4Case;

impl fmt::Display for Bounce4Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Bounce4Case {
    type Err = CatalanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Bounce4Case::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| CatalanError::UnknownRegion(s.to_string()))
    }
}

fn refined3_terms(k: KVec3, region: Option<Region3>) -> impl Iterator<Item = (Path3, [i32; 4])> {
    enumerate_paths3(k)
        .into_iter()
        .filter(move |p| region.is_none_or(|r| r.contains(p)))
        .map(|p| {
            let e = [
                area3(&p) as i32,
                bounce3(&p) as i32,
                p.r2 as i32,
                p.r3 as i32,
            ];
            (p, e)
        })
}

/// `sum q^area t^bounce y2^r2 y3^r3` over the paths of `k`, optionally
/// restricted to one region.
pub fn refined_poly3(k: KVec3, region: Option<Region3>) -> SparsePoly {
    let terms = refined3_terms(k, region)
        .map(|(_, e)| (e.to_vec(), 1))
        .collect();
    collect(&refined3_vars(), terms)
}

/// `sum q^area t^bounce y2^a y3^b y4^c` over the `k^4` paths.
pub fn refined_poly4(k: u32, region: Option<Region4>) -> SparsePoly {
    let terms = enumerate_paths4(k)
        .into_iter()
        .filter(|p| region.is_none_or(|r| bounce4_case(p) == r))
        .map(|p| {
            (
                vec![
                    area4(&p) as i32,
                    bounce4(&p) as i32,
                    p.a as i32,
                    p.b as i32,
                    p.c as i32,
                ],
                1,
            )
        })
        .collect();
    collect(&refined4_vars(), terms)
}

/// `sum_{k1+k2+k3 <= max_total} x^k (refined) C_k`, over `gf3_vars(refined)`.
pub fn gf3_sum(max_total: u32, region: Option<Region3>, refined: bool) -> SparsePoly {
    let mut terms = Vec::new();
    for k1 in 0..=max_total {
        for k2 in 0..=max_total - k1 {
            for k3 in 0..=max_total - k1 - k2 {
                let k = KVec3::new(k1, k2, k3);
                let x = [k1 as i32, k2 as i32, k3 as i32];
                for (_, [area, bounce, r2, r3]) in refined3_terms(k, region) {
                    let mut e = x.to_vec();
                    if refined {
                        e.extend([r2, r3]);
                    }
                    e.extend([area, bounce]);
                    terms.push((e, 1));
                }
            }
        }
    }
    collect(&gf3_vars(refined), terms)
}

/// `sum_{k <= max_k} x^k (refined) C_{k^4}`, over `gf4_vars(refined)`.
pub fn gf4_sum(max_k: u32, region: Option<Region4>, refined: bool) -> SparsePoly {
    let mut terms = Vec::new();
    for k in 0..=max_k {
        for p in enumerate_paths4(k) {
            if region.is_some_and(|r| bounce4_case(&p) != r) {
                continue;
            }
            let mut e = vec![k as i32];
            if refined {
                e.extend([p.a as i32, p.b as i32, p.c as i32]);
            }
            e.extend([area4(&p) as i32, bounce4(&p) as i32]);
            terms.push((e, 1));
        }
    }
    collect(&gf4_vars(refined), terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::parse_poly;

    fn qt(s: &str) -> SparsePoly {
        parse_poly(&qt_vars(), s).unwrap()
    }

    #[test]
    fn poly3_examples() {
        assert_eq!(catalan_poly3(KVec3::new(0, 0, 0)), qt("1"));
        let c = catalan_poly3(KVec3::new(1, 1, 1));
        assert_eq!(c, qt("q^3 + q^2*t + q*t^2 + q*t + t^3"));
        assert_eq!(c.eval_all_ones().unwrap(), 5);
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(
            catalan_poly_lambda3([1, 1, 1]).unwrap(),
            catalan_poly3(KVec3::new(1, 1, 1))
        );
        assert_eq!(rearrangements([2, 1, 1]).len(), 3);
        assert_eq!(rearrangements([3, 2, 1]).len(), 6);
        for l in [[2, 1, 1], [3, 2, 1]] {
            let c = catalan_poly_lambda3(l).unwrap();
            assert!(c.is_symmetric("q", "t").unwrap());
            let count: u64 = rearrangements(l).iter().map(|k| k.path_count()).sum();
            assert_eq!(c.eval_all_ones().unwrap() as u64, count);
        }
        assert_eq!(
            catalan_poly_lambda3([1, 2, 3]),
            Err(CatalanError::NotPartition([1, 2, 3]))
        );
    }

    #[test]
    fn k4_examples() {
        assert_eq!(catalan_poly_k4(0), qt("1"));
        let c = catalan_poly_k4(1);
        assert_eq!(c.eval_all_ones().unwrap(), 14);
        assert!(c.is_symmetric("q", "t").unwrap());
        assert_eq!(c.coeff_of(&[6, 0]), 1);
        assert_eq!(c.coeff_of(&[0, 6]), 1);
    }

    #[test]
    fn refined_collapses_to_plain() {
        assert_eq!(
            refined_poly3(KVec3::new(0, 0, 0), None),
            parse_poly(&refined3_vars(), "1").unwrap()
        );
        for k in [KVec3::new(2, 1, 0), KVec3::new(3, 4, 1)] {
            let r = refined_poly3(k, None).eval_ones(&["y2", "y3"]).unwrap();
            assert_eq!(r, catalan_poly3(k));
        }
        assert_eq!(
            refined_poly4(0, None),
            parse_poly(&refined4_vars(), "1").unwrap()
        );
        for k in 0..=3 {
            let r = refined_poly4(k, None)
                .eval_ones(&["y2", "y3", "y4"])
                .unwrap();
            assert_eq!(r, catalan_poly_k4(k));
        }
    }

    #[test]
    fn region3_filter_example() {
        // k = (2,1,0), part 1 case 1: r2 = 2 > k2 and r2 - r3 - k2 >= 0, so r3 in {0, 1}.
        // (2,0): area 2, bounce 2*2 - 2 - 0 = 2; (2,1): area 3, bounce 1.
        let r = refined_poly3(KVec3::new(2, 1, 0), Some(Region3::P1C1));
        let expect = parse_poly(&refined3_vars(), "q^2*t^2*y2^2 + q^3*t*y2^2*y3").unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn regions_partition_refined_polys() {
        for k1 in 0..=8 {
            for k2 in 0..=8 {
                let k = KVec3::new(k1, k2, 1);
                let mut acc = SparsePoly::zero(&refined3_vars());
                for r in Region3::ALL {
                    acc = acc.add(&refined_poly3(k, Some(r))).unwrap();
                }
                assert_eq!(acc, refined_poly3(k, None));
            }
        }
        for k in 0..=6 {
            let mut acc = SparsePoly::zero(&refined4_vars());
            for r in Bounce4Case::ALL {
                acc = acc.add(&refined_poly4(k, Some(r))).unwrap();
            }
            assert_eq!(acc, refined_poly4(k, None));
        }
    }

    #[test]
    fn region_names_parse() {
        assert_eq!("p2c1".parse::<Region3>(), Ok(Region3::P2C1));
        assert_eq!("P3C3".parse::<Region4>(), Ok(Bounce4Case::P3C3));
        assert_eq!(
            "P3C1".parse::<Region3>(),
            Err(CatalanError::UnknownRegion("P3C1".into()))
        );
    }

    #[test]
    fn degree_bound() {
        for k1 in 0..=6 {
            for k2 in 0..=6 {
                let c = catalan_poly3(KVec3::new(k1, k2, 2));
                let top = (2 * k1 + k2) as i32;
                assert!(c.terms().all(|(e, _)| e[0] <= top && e[1] <= top));
            }
        }
    }

    #[test]
    fn gf_sums_carry_k_in_x() {
        let g = gf3_sum(3, None, false);
        let c = g.coeff(&[("x1", 1), ("x2", 1), ("x3", 1)]).unwrap();
        assert_eq!(c, catalan_poly3(KVec3::new(1, 1, 1)));
        for m in 0..=3 {
            let c = g.coeff(&[("x1", 0), ("x2", 0), ("x3", m)]).unwrap();
            assert_eq!(c, qt("1"));
        }
        let h = gf4_sum(2, None, false);
        assert_eq!(h.coeff(&[("x", 2)]).unwrap(), catalan_poly_k4(2));
    }
}
