//! Nef-cone membership on the K-nonpositive side.
//!
//! For an integer class `v` with `v.K <= 0`, `v` is nef exactly when the
//! Cremona reduction lands in the fundamental cone. The curve check is an
//! independent, degree-bounded necessary condition.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::curves::multiplicity_types;
use crate::error::{Error, Result};
use crate::lattice::{pairing_unchecked, PicClass};
use crate::weyl::{reduce, ReductionStatus, WeylWord};

pub use crate::polytope::fundamental_cone;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Nef,
    NotNef,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Unconditional on the K-nonpositive side.
    ReductionExact,
    /// "No violation among (-1)-classes of degree <= D": necessary only.
    CurveCheckUpToDegree(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NefWitness {
    /// `apply_word(word, v) == reduced`, and `reduced` lies in the fundamental cone.
    Reduction { word: WeylWord, reduced: PicClass },
    /// A curve class with `v . curve < 0`.
    Curve(PicClass),
    /// `v . v < 0`.
    NegativeSquare(#[serde(with = "crate::lattice::json_int")] BigInt),
    /// Curve check found nothing up to the degree bound.
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NefVerdict {
    pub verdict: Verdict,
    pub method: Method,
    pub witness: NefWitness,
}

impl NefVerdict {
    pub fn is_nef(&self) -> bool {
        self.verdict == Verdict::Nef
    }
}

pub fn is_nef_k_nonpositive(v: &PicClass) -> Result<NefVerdict> {
    let r = reduce(v)?;
    match r.status {
        ReductionStatus::InFundamentalCone => {
            debug_assert!(fundamental_cone(v.n())?.contains(&r.reduced)?);
            Ok(NefVerdict {
                verdict: Verdict::Nef,
                method: Method::ReductionExact,
                witness: NefWitness::Reduction {
                    word: r.witness,
                    reduced: r.reduced,
                },
            })
        }
        ReductionStatus::NotNef(viol) => Ok(NefVerdict {
            verdict: Verdict::NotNef,
            method: Method::ReductionExact,
            witness: NefWitness::Curve(viol.curve),
        }),
    }
}

/// Checks `v . c >= 0` for every (-1)-class `c` of degree `<= max_degree`,
/// then `v . v >= 0`.
///
/// Works per multiplicity type: the smallest `v . c` over all placements of
/// a type pairs the largest multiplicities with the smallest `x_l`.
pub fn curve_check(v: &PicClass, max_degree: u64) -> Result<NefVerdict> {
    let n = v.n();
    if n < 3 {
        return Err(Error::InvalidN {
            n,
            reason: "(-1)-classes are enumerated for n >= 3",
        });
    }
    let method = Method::CurveCheckUpToDegree(max_degree);
    let not_nef = |witness| NefVerdict {
        verdict: Verdict::NotNef,
        method,
        witness,
    };

    // degree 0: v . e_i = -x_i
    if let Some(i) = (1..=n).find(|&i| v.get(i).is_positive()) {
        return Ok(not_nef(NefWitness::Curve(PicClass::basis(n, i)?)));
    }

    // indices ordered by ascending x, ties by index
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by(|&a, &b| v.get(a).cmp(v.get(b)).then(a.cmp(&b)));
    for d in 1..=max_degree {
        for t in multiplicity_types(n, d) {
            let mut value = BigInt::from(d) * v.degree();
            for (&m, &i) in t.mults.iter().zip(&order) {
                value += BigInt::from(m) * v.get(i);
            }
            if value.is_negative() {
                let mut c = PicClass::zero(n);
                let x = c.coords_mut();
                x[0] = BigInt::from(d);
                for (&m, &i) in t.mults.iter().zip(&order) {
                    x[i] = -BigInt::from(m);
                }
                debug_assert_eq!(pairing_unchecked(v, &c), value);
                return Ok(not_nef(NefWitness::Curve(c)));
            }
        }
    }
    let sq = v.square();
    if sq.is_negative() {
        return Ok(not_nef(NefWitness::NegativeSquare(sq)));
    }
    Ok(NefVerdict {
        verdict: Verdict::Nef,
        method,
        witness: NefWitness::None,
    })
}
