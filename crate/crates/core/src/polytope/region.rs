//! The auxiliary region `R` in the chart `x_0 = 1`, coordinates
//! `(x_1, x_2, x_n)`, with the plain Euclidean structure of `Q^3`:
//!
//! ```text
//! x_1 + 2 x_2 >= -1,  x_1 <= x_2 <= x_n <= 0,  x_1 + (n-2) x_2 + x_n >= -3
//! ```
//!
//! and the convex function `f = x_1^2 + (n-2) x_2^2 + x_n^2`.

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::solve;

fn q(a: i64) -> BigRational {
    BigRational::from_integer(a.into())
}

/// The five facets as `(a, b)` meaning `a . x >= b`.
pub fn facets(n: usize) -> [([BigRational; 3], BigRational); 5] {
    let m = n as i64;
    [
        ([q(1), q(2), q(0)], q(-1)),
        ([q(-1), q(1), q(0)], q(0)),
        ([q(0), q(-1), q(1)], q(0)),
        ([q(0), q(0), q(-1)], q(0)),
        ([q(1), q(m - 2), q(1)], q(-3)),
    ]
}

fn ser_point<S: Serializer>(p: &[BigRational; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(ToString::to_string))
}

fn ser_opt<S: Serializer>(f: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match f {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionPoint {
    /// Indices of the three facets meeting at the point.
    pub facets: [usize; 3],
    #[serde(serialize_with = "ser_point")]
    pub point: [BigRational; 3],
    pub is_vertex: bool,
    /// `f` at the point, reported only for vertices.
    #[serde(serialize_with = "ser_opt")]
    pub f: Option<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionReport {
    pub n: usize,
    pub points: Vec<RegionPoint>,
    #[serde(serialize_with = "ser_opt")]
    pub max_f: Option<BigRational>,
    /// `f <= 1` at every vertex.
    pub bounded_by_one: bool,
    /// `f < 1` at every vertex with `x_n < 0`.
    pub strict_off_face: bool,
}

impl RegionReport {
    pub fn ok(&self) -> bool {
        self.bounded_by_one && self.strict_off_face
    }

    pub fn point(&self, facets: [usize; 3]) -> Option<&RegionPoint> {
        self.points.iter().find(|p| p.facets == facets)
    }
}

pub fn f_value(n: usize, p: &[BigRational; 3]) -> BigRational {
    &p[0] * &p[0] + q(n as i64 - 2) * &p[1] * &p[1] + &p[2] * &p[2]
}

/// Intersects every triple of facet planes and classifies the points.
pub fn verify_region_r(n: usize) -> Result<RegionReport> {
    if n < 10 {
        return Err(Error::InvalidN {
            n,
            reason: "region R is used for n >= 10",
        });
    }
    let fs = facets(n);
    let mut points = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                let a: Vec<Vec<BigRational>> =
                    [i, j, k].iter().map(|&t| fs[t].0.to_vec()).collect();
                let b: Vec<BigRational> = [i, j, k].iter().map(|&t| fs[t].1.clone()).collect();
                let Some(x) = solve(&a, &b) else { continue };
                let point = [x[0].clone(), x[1].clone(), x[2].clone()];
                let is_vertex = fs.iter().all(|(a, b)| {
                    let lhs: BigRational = a.iter().zip(&point).map(|(c, v)| c * v).sum();
                    lhs >= *b
                });
                let f = is_vertex.then(|| f_value(n, &point));
                points.push(RegionPoint {
                    facets: [i, j, k],
                    point,
                    is_vertex,
                    f,
                });
            }
        }
    }
    let one = BigRational::one();
    let vertices = || points.iter().filter(|p| p.is_vertex);
    let max_f = vertices().filter_map(|p| p.f.clone()).max();
    let bounded_by_one = vertices().all(|p| p.f.as_ref().is_some_and(|f| *f <= one));
    let strict_off_face = vertices()
        .filter(|p| p.point[2].is_negative())
        .all(|p| p.f.as_ref().is_some_and(|f| *f < one));
    Ok(RegionReport {
        n,
        points,
        max_f,
        bounded_by_one,
        strict_off_face,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn n10_corner() {
        let rep = verify_region_r(10).unwrap();
        assert_eq!(rep.points.len(), 10);
        // facets 0, 1, 3: x_1 + 2x_2 = -1, x_1 = x_2, x_n = 0
        let p = rep.point([0, 1, 3]).unwrap();
        assert_eq!(p.point, [r(-1, 3), r(-1, 3), r(0, 1)]);
        assert!(p.is_vertex);
        assert_eq!(p.f, Some(r(1, 1)));
        assert!(rep.ok());
        assert_eq!(rep.max_f, Some(r(1, 1)));
    }

    #[test]
    fn far_corner_is_never_a_vertex() {
        for n in 10..=20 {
            let rep = verify_region_r(n).unwrap();
            let p = rep.point([2, 3, 4]).unwrap();
            assert_eq!(p.point, [r(-3, 1), r(0, 1), r(0, 1)]);
            assert!(!p.is_vertex);
            assert!(rep.ok(), "n = {n}");
        }
    }

    #[test]
    fn n12_diagonal_vertex() {
        let rep = verify_region_r(12).unwrap();
        let p = rep.point([1, 2, 4]).unwrap();
        assert_eq!(p.point, [r(-1, 4), r(-1, 4), r(-1, 4)]);
        assert_eq!(p.f, Some(r(3, 4)));
    }
}
