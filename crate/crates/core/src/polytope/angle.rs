//! Exact dihedral angles between halfspaces.
//!
//! For integer normals `u, v` with negative squares, `cos^2 = (u.v)^2 / (u^2 v^2)`
//! is rational. A rational multiple of pi with rational `cos^2` has
//! `cos^2` in `{0, 1/4, 1/2, 3/4, 1}` (Niven), so the classification below
//! needs no floating point.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::{sign_of, ConePolytope, Halfspace};
use crate::error::{Error, Result};
use crate::lattice::pairing_unchecked;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleTag {
    /// `pi / m`; `m = 2` for orthogonal pairs.
    PiOver(u32),
    /// Parallel hyperplanes meeting at infinity.
    ZeroAngle,
    /// Ultraparallel hyperplanes.
    Divergent,
    NonSubmultiple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AngleClass {
    pub tag: AngleTag,
    #[serde(serialize_with = "ser_ratio")]
    pub cos2: BigRational,
    pub sign: i8,
}

impl AngleClass {
    /// Obtuse pairs (`u.v < 0` and not divergent).
    pub fn is_obtuse(&self) -> bool {
        self.sign < 0 && self.cos2 <= BigRational::one()
    }

    pub fn is_coxeter(&self) -> bool {
        !matches!(self.tag, AngleTag::NonSubmultiple)
    }
}

fn ser_ratio<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

pub fn classify_angle(u: &Halfspace, v: &Halfspace) -> Result<AngleClass> {
    let (u, v) = (u.normal(), v.normal());
    if u.n() != v.n() {
        return Err(Error::DimensionMismatch {
            expected: u.n(),
            found: v.n(),
        });
    }
    let (uu, vv) = (u.square(), v.square());
    for sq in [&uu, &vv] {
        if !sq.is_negative() {
            return Err(Error::NonNegativeNormal(sq.clone()));
        }
    }
    let p = pairing_unchecked(u, v);
    let cos2 = BigRational::new(&p * &p, uu * vv);
    let sign = sign_of(&p);
    let one = BigRational::one();
    let tag = if cos2 > one {
        AngleTag::Divergent
    } else if p.is_zero() {
        AngleTag::PiOver(2)
    } else if p.is_negative() {
        AngleTag::NonSubmultiple
    } else if cos2 == one {
        AngleTag::ZeroAngle
    } else if cos2 == ratio(1, 4) {
        AngleTag::PiOver(3)
    } else if cos2 == ratio(1, 2) {
        AngleTag::PiOver(4)
    } else if cos2 == ratio(3, 4) {
        AngleTag::PiOver(6)
    } else {
        AngleTag::NonSubmultiple
    };
    Ok(AngleClass { tag, cos2, sign })
}

/// Cartan entry `a_ij = -sign * 2 * sqrt(cos2)`, kept in exact form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanEntry {
    pub sign: i8,
    #[serde(serialize_with = "ser_ratio")]
    pub cos2: BigRational,
}

impl CartanEntry {
    pub fn diagonal() -> Self {
        Self {
            sign: -1,
            cos2: BigRational::one(),
        }
    }

    /// Entry with the given sign of `a_ij` and value `a_ij^2`.
    pub fn from_value_squared(sign_of_value: i8, value_sq: BigRational) -> Self {
        // value = -sign * 2 sqrt(cos2)  =>  cos2 = value^2 / 4
        Self {
            sign: -sign_of_value,
            cos2: value_sq / BigRational::from_integer(4.into()),
        }
    }

    /// `a_ij^2 = 4 cos2`.
    pub fn value_squared(&self) -> BigRational {
        &self.cos2 * BigRational::from_integer(4.into())
    }
}

fn split_square(x: &BigInt) -> (BigInt, BigInt) {
    // x = outer^2 * inner with inner squarefree; fine for the small values here
    let mut outer = BigInt::one();
    let mut inner = x.clone();
    let mut f = BigInt::from(2);
    while &f * &f <= inner {
        let ff = &f * &f;
        while (&inner % &ff).is_zero() {
            inner /= &ff;
            outer *= &f;
        }
        f += 1;
    }
    (outer, inner)
}

impl fmt::Display for CartanEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 0 || self.cos2.is_zero() {
            return f.write_str("0");
        }
        let neg = self.sign > 0;
        let sq = self.value_squared();
        let (num, den) = (sq.numer().clone(), sq.denom().clone());
        let (a1, a2) = split_square(&num);
        let (b1, b2) = split_square(&den);
        let sign = if neg { "-" } else { "" };
        let body = match (a2.is_one(), b2.is_one()) {
            (true, true) => {
                if b1.is_one() {
                    format!("{a1}")
                } else {
                    format!("{a1}/{b1}")
                }
            }
            (false, true) => {
                let coef = if a1.is_one() {
                    String::new()
                } else {
                    format!("{a1}*")
                };
                if b1.is_one() {
                    format!("{coef}sqrt({a2})")
                } else {
                    format!("{coef}sqrt({a2})/{b1}")
                }
            }
            (true, false) => {
                let den = if b1.is_one() {
                    format!("sqrt({b2})")
                } else {
                    format!("({b1}*sqrt({b2}))")
                };
                format!("{a1}/{den}")
            }
            (false, false) => format!("2*sqrt({})", self.cos2),
        };
        write!(f, "{sign}{body}")
    }
}

pub fn cartan_matrix(p: &ConePolytope) -> Result<Vec<Vec<CartanEntry>>> {
    let hs = p.halfspaces();
    let mut m = Vec::with_capacity(hs.len());
    for (i, u) in hs.iter().enumerate() {
        let mut row = Vec::with_capacity(hs.len());
        for (j, v) in hs.iter().enumerate() {
            if i == j {
                row.push(CartanEntry::diagonal());
            } else {
                let a = classify_angle(u, v)?;
                row.push(CartanEntry {
                    sign: a.sign,
                    cos2: a.cos2,
                });
            }
        }
        m.push(row);
    }
    Ok(m)
}

/// One row per line, entries separated by two spaces.
pub fn render_cartan(m: &[Vec<CartanEntry>]) -> String {
    let cells: Vec<Vec<String>> = m
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OffendingPair {
    pub i: usize,
    pub j: usize,
    pub angle: AngleClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoxeterCheck {
    pub coxeter: bool,
    pub offending: Vec<OffendingPair>,
}

pub fn is_coxeter(p: &ConePolytope) -> Result<CoxeterCheck> {
    let hs = p.halfspaces();
    let mut offending = Vec::new();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            let angle = classify_angle(&hs[i], &hs[j])?;
            if !angle.is_coxeter() {
                offending.push(OffendingPair { i, j, angle });
            }
        }
    }
    Ok(CoxeterCheck {
        coxeter: offending.is_empty(),
        offending,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{anticanonical_class, PicClass};
    use crate::polytope::{build_p, build_p_minus, build_p_tilde};

    fn hs(xs: &[i64]) -> Halfspace {
        Halfspace::new(PicClass::from_i64(xs).unwrap()).unwrap()
    }

    fn padded(n: usize, entries: &[(usize, i64)]) -> Halfspace {
        let mut v = vec![0i64; n + 1];
        for &(i, x) in entries {
            v[i] = x;
        }
        hs(&v)
    }

    #[test]
    fn classification_examples() {
        let a = classify_angle(
            &padded(9, &[(1, 1), (2, -1)]),
            &padded(9, &[(2, 1), (3, -1)]),
        )
        .unwrap();
        assert_eq!(a.tag, AngleTag::PiOver(3));
        assert_eq!(a.cos2, ratio(1, 4));

        let a = classify_angle(&padded(9, &[(8, 1), (9, -1)]), &padded(9, &[(9, 1)])).unwrap();
        assert_eq!(a.tag, AngleTag::PiOver(4));
        assert_eq!(a.cos2, ratio(1, 2));

        let mk = Halfspace::new(anticanonical_class(12).unwrap()).unwrap();
        let a = classify_angle(&padded(12, &[(12, 1)]), &mk).unwrap();
        assert_eq!(a.tag, AngleTag::NonSubmultiple);
        assert_eq!(a.cos2, ratio(1, 3));
    }

    #[test]
    fn classification_is_symmetric_and_rejects_timelike() {
        let u = padded(5, &[(0, 1), (1, -1), (2, -1), (3, -1)]);
        let v = padded(5, &[(3, 1), (4, -1)]);
        assert_eq!(
            classify_angle(&u, &v).unwrap(),
            classify_angle(&v, &u).unwrap()
        );
        assert!(Halfspace::new(PicClass::basis(5, 0).unwrap()).is_err());
    }

    #[test]
    fn divergent_and_zero_angle() {
        let u = padded(3, &[(1, 1)]);
        let v = padded(3, &[(0, 1), (1, 2)]);
        // v^2 = 1 - 4 = -3, u.v = -2, cos2 = 4/3
        let a = classify_angle(&u, &v).unwrap();
        assert_eq!(a.tag, AngleTag::Divergent);

        let mk = Halfspace::new(anticanonical_class(10).unwrap()).unwrap();
        let a = classify_angle(&padded(10, &[(10, 1)]), &mk).unwrap();
        assert_eq!(a.tag, AngleTag::ZeroAngle);
    }

    #[test]
    fn rendering_tokens() {
        let e = |sign, a, b| CartanEntry {
            sign,
            cos2: ratio(a, b),
        };
        assert_eq!(CartanEntry::diagonal().to_string(), "2");
        assert_eq!(e(0, 0, 1).to_string(), "0");
        assert_eq!(e(1, 1, 4).to_string(), "-1");
        assert_eq!(e(1, 1, 2).to_string(), "-sqrt(2)");
        assert_eq!(e(1, 1, 3).to_string(), "-2/sqrt(3)");
        assert_eq!(e(1, 1, 1).to_string(), "-2");
        assert_eq!(e(1, 3, 4).to_string(), "-sqrt(3)");
        assert_eq!(e(1, 1, 9).to_string(), "-2/3");
        assert_eq!(e(-1, 1, 4).to_string(), "1");
    }

    #[test]
    fn coxeter_examples() {
        assert!(is_coxeter(&build_p_tilde(10).unwrap()).unwrap().coxeter);
        assert!(is_coxeter(&build_p(9).unwrap()).unwrap().coxeter);
        let c = is_coxeter(&build_p_minus(12).unwrap()).unwrap();
        assert!(!c.coxeter);
        assert_eq!(c.offending.len(), 1);
        assert_eq!((c.offending[0].i, c.offending[0].j), (12, 13));
    }

    #[test]
    fn cartan_of_p_minus_tail() {
        for n in 10..=14 {
            let m = cartan_matrix(&build_p_minus(n).unwrap()).unwrap();
            let e = &m[n][n + 1];
            assert_eq!(e.sign, 1);
            assert_eq!(e.cos2, ratio(1, n as i64 - 9));
        }
    }
}
