//! Polyhedral cones `{x : u_i . x >= 0}` in `R^{1,n}` and the hyperbolic
//! polytopes they cut out of the hyperboloid.

mod angle;
mod diagram;
mod families;
mod rays;
mod region;

pub use angle::{
    cartan_matrix, classify_angle, is_coxeter, render_cartan, AngleClass, AngleTag, CartanEntry,
    CoxeterCheck, OffendingPair,
};
pub use diagram::{coxeter_diagram, CoxeterDiagram, DiagramEdge, EdgeKind};
pub use families::{verify_vertex_formulas, vertex_families, VertexFormulaReport};
pub use rays::{boundary_rays, extremal_rays, finite_volume, redundant_halfspaces, Ray};
pub use region::{verify_region_r, RegionPoint, RegionReport};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{anticanonical_class, pairing_unchecked, PicClass, RationalRay};

/// The halfspace `{x : normal . x >= 0}`; the normal has negative square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Halfspace {
    normal: PicClass,
}

impl Halfspace {
    pub fn new(normal: PicClass) -> Result<Self> {
        let sq = normal.square();
        if !sq.is_negative() {
            return Err(Error::NonNegativeNormal(sq));
        }
        Ok(Self { normal })
    }

    pub fn normal(&self) -> &PicClass {
        &self.normal
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConePolytope {
    n: usize,
    halfspaces: Vec<Halfspace>,
    /// Constraints whose normals may have nonnegative square. They take part
    /// in membership and ray enumeration but not in angle computations.
    extra_constraints: Vec<PicClass>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub inside: bool,
    /// Index (into `all_normals`) and normal of the first violated constraint.
    pub violated: Option<(usize, PicClass)>,
}

impl ConePolytope {
    pub fn new(n: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        Self::with_extra(n, halfspaces, Vec::new())
    }

    pub fn with_extra(
        n: usize,
        halfspaces: Vec<Halfspace>,
        extra_constraints: Vec<PicClass>,
    ) -> Result<Self> {
        for u in halfspaces
            .iter()
            .map(Halfspace::normal)
            .chain(extra_constraints.iter())
        {
            if u.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: u.n(),
                });
            }
        }
        Ok(Self {
            n,
            halfspaces,
            extra_constraints,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn extra_constraints(&self) -> &[PicClass] {
        &self.extra_constraints
    }

    /// Halfspace normals followed by the extra constraints.
    pub fn all_normals(&self) -> Vec<&PicClass> {
        self.halfspaces
            .iter()
            .map(Halfspace::normal)
            .chain(self.extra_constraints.iter())
            .collect()
    }

    /// Drops constraint `index` (numbered as in `all_normals`).
    pub fn without(&self, index: usize) -> Self {
        let mut out = self.clone();
        if index < out.halfspaces.len() {
            out.halfspaces.remove(index);
        } else {
            out.extra_constraints.remove(index - self.halfspaces.len());
        }
        out
    }

    /// Applies a lattice map to every normal.
    pub fn map_normals(&self, f: impl Fn(&PicClass) -> PicClass) -> Result<Self> {
        Self::with_extra(
            self.n,
            self.halfspaces
                .iter()
                .map(|h| Halfspace::new(f(h.normal())))
                .collect::<Result<_>>()?,
            self.extra_constraints.iter().map(f).collect(),
        )
    }

    pub fn membership(&self, v: &PicClass) -> Result<Membership> {
        if v.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.n(),
            });
        }
        let violated = self
            .all_normals()
            .into_iter()
            .enumerate()
            .find(|(_, u)| pairing_unchecked(u, v).is_negative())
            .map(|(i, u)| (i, u.clone()));
        Ok(Membership {
            inside: violated.is_none(),
            violated,
        })
    }

    pub fn contains(&self, v: &PicClass) -> Result<bool> {
        self.membership(v).map(|m| m.inside)
    }

    /// Membership of a rational ray; positive rescaling does not change signs.
    pub fn membership_ray(&self, r: &RationalRay) -> Result<Membership> {
        self.membership(&r.to_integral())
    }

    /// Whether `v` satisfies every constraint strictly.
    pub fn contains_strictly(&self, v: &PicClass) -> Result<bool> {
        self.membership(v)?;
        Ok(self
            .all_normals()
            .into_iter()
            .all(|u| pairing_unchecked(u, v).is_positive()))
    }

    /// `G_ij = u_i . u_j` over the halfspace normals.
    pub fn gram_matrix(&self) -> Vec<Vec<BigInt>> {
        let us: Vec<&PicClass> = self.halfspaces.iter().map(Halfspace::normal).collect();
        us.iter()
            .map(|u| us.iter().map(|v| pairing_unchecked(u, v)).collect())
            .collect()
    }
}

fn class_from(n: usize, entries: &[(usize, i64)]) -> PicClass {
    let mut v = PicClass::zero(n);
    for &(i, x) in entries {
        v.coords_mut()[i] = BigInt::from(x);
    }
    v
}

fn check_n(n: usize, min: usize, reason: &'static str) -> Result<()> {
    if n < min {
        Err(Error::InvalidN { n, reason })
    } else {
        Ok(())
    }
}

/// `x_0 >= -x_1 - x_2 - x_3` and `x_1 <= x_2 <= ... <= x_n`: normals
/// `e_0 - e_1 - e_2 - e_3` and `e_i - e_{i+1}`.
pub fn build_p_tilde(n: usize) -> Result<ConePolytope> {
    check_n(n, 3, "the cubic facet needs three points")?;
    let mut hs = vec![Halfspace::new(class_from(
        n,
        &[(0, 1), (1, -1), (2, -1), (3, -1)],
    ))?];
    for i in 1..n {
        hs.push(Halfspace::new(class_from(n, &[(i, 1), (i + 1, -1)]))?);
    }
    ConePolytope::new(n, hs)
}

/// Adds `x_n <= 0` to the previous cone (normal `e_n`).
pub fn build_p(n: usize) -> Result<ConePolytope> {
    let mut p = build_p_tilde(n)?;
    p.halfspaces.push(Halfspace::new(PicClass::basis(n, n)?)?);
    Ok(p)
}

/// Adds `3 x_0 >= -(x_1 + ... + x_n)` (normal `-K`). Needs `n >= 10`, where
/// `-K` has negative square.
pub fn build_p_minus(n: usize) -> Result<ConePolytope> {
    check_n(n, 10, "-K is a valid halfspace normal only for n >= 10")?;
    let mut p = build_p(n)?;
    p.halfspaces.push(Halfspace::new(anticanonical_class(n)?)?);
    Ok(p)
}

/// The fundamental cone of the K-nonpositive part of the nef cone.
pub fn fundamental_cone(n: usize) -> Result<ConePolytope> {
    check_n(n, 3, "the Cremona action needs n >= 3")?;
    if n <= 9 {
        build_p(n)
    } else {
        build_p_minus(n)
    }
}

/// Named constructions, as used on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolytopeName {
    PTilde,
    P,
    PMinus,
    Fundamental,
}

impl PolytopeName {
    pub fn build(self, n: usize) -> Result<ConePolytope> {
        match self {
            PolytopeName::PTilde => build_p_tilde(n),
            PolytopeName::P => build_p(n),
            PolytopeName::PMinus => build_p_minus(n),
            PolytopeName::Fundamental => fundamental_cone(n),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PolytopeName::PTilde => "p_tilde",
            PolytopeName::P => "p",
            PolytopeName::PMinus => "p_minus",
            PolytopeName::Fundamental => "fundamental",
        }
    }
}

impl fmt::Display for PolytopeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PolytopeName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p_tilde" => Ok(PolytopeName::PTilde),
            "p" => Ok(PolytopeName::P),
            "p_minus" => Ok(PolytopeName::PMinus),
            "fundamental" => Ok(PolytopeName::Fundamental),
            other => Err(Error::Parse(format!(
                "unknown polytope {other:?} (expected p_tilde, p, p_minus or fundamental)"
            ))),
        }
    }
}

pub(crate) fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
