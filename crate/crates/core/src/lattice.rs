//! Exact arithmetic in the Picard lattice `Z^{1,n}` of the plane blown up at
//! `n` points.
//!
//! Classes are written in the basis `e_0, e_1, ..., e_n` where `e_0` is the
//! pullback of a line and `e_i` are the exceptional curves. The intersection
//! form is `diag(1, -1, ..., -1)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An integer class `x_0 e_0 + x_1 e_1 + ... + x_n e_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PicClass {
    coords: Vec<BigInt>,
}

impl PicClass {
    /// Builds a class from its `n + 1` coordinates. Requires `n >= 1`.
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidN {
                n: coords.len().saturating_sub(1),
                reason: "a class needs at least e_0 and e_1",
            });
        }
        Ok(Self { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "n must be positive");
        Self {
            coords: vec![BigInt::zero(); n + 1],
        }
    }

    /// Basis vector `e_i`, `0 <= i <= n`.
    pub fn basis(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let mut v = Self::zero(n);
        v.coords[i] = BigInt::one();
        Ok(v)
    }

    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [BigInt] {
        &mut self.coords
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.coords[i]
    }

    /// `degree(v) = v . e_0 = x_0`.
    pub fn degree(&self) -> &BigInt {
        &self.coords[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn square(&self) -> BigInt {
        pairing_unchecked(self, self)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_n(self, other)?;
        Ok(Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        same_n(self, other)?;
        Ok(Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PicClass{}", self)
    }
}

impl fmt::Display for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

fn same_n(u: &PicClass, v: &PicClass) -> Result<()> {
    if u.n() != v.n() {
        return Err(Error::DimensionMismatch {
            expected: u.n(),
            found: v.n(),
        });
    }
    Ok(())
}

pub(crate) fn pairing_unchecked(u: &PicClass, v: &PicClass) -> BigInt {
    let mut acc = &u.coords[0] * &v.coords[0];
    for (a, b) in u.coords[1..].iter().zip(&v.coords[1..]) {
        acc -= a * b;
    }
    acc
}

/// Intersection pairing `u_0 v_0 - sum_i u_i v_i`.
pub fn pairing(u: &PicClass, v: &PicClass) -> Result<BigInt> {
    same_n(u, v)?;
    Ok(pairing_unchecked(u, v))
}

/// The canonical class `K = -3 e_0 + e_1 + ... + e_n`.
pub fn canonical_class(n: usize) -> Result<PicClass> {
    if n < 3 {
        return Err(Error::InvalidN {
            n,
            reason: "the Cremona setting needs n >= 3",
        });
    }
    let mut coords = vec![BigInt::one(); n + 1];
    coords[0] = BigInt::from(-3);
    Ok(PicClass { coords })
}

/// The anticanonical class `-K = 3 e_0 - e_1 - ... - e_n`.
pub fn anticanonical_class(n: usize) -> Result<PicClass> {
    canonical_class(n).map(|k| k.neg())
}

/// Where a vector sits relative to the light cone `{v : v.v >= 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeTag {
    Interior,
    Boundary,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LightConePosition {
    pub tag: ConeTag,
    /// `x_0 > 0`.
    pub forward: bool,
}

pub fn light_cone_position(v: &PicClass) -> Result<LightConePosition> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let sq = v.square();
    let tag = if sq.is_positive() {
        ConeTag::Interior
    } else if sq.is_zero() {
        ConeTag::Boundary
    } else {
        ConeTag::Outside
    };
    Ok(LightConePosition {
        tag,
        forward: v.degree().is_positive(),
    })
}

/// A projective point with rational coordinates, defined up to positive scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalRay {
    coords: Vec<BigRational>,
}

impl RationalRay {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidN {
                n: coords.len().saturating_sub(1),
                reason: "a ray needs at least two coordinates",
            });
        }
        if coords.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { coords })
    }

    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Clears denominators and divides by the content, keeping orientation.
    pub fn to_integral(&self) -> PicClass {
        let lcm = self
            .coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .coords
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        divide_content(ints)
    }
}

impl From<&PicClass> for RationalRay {
    fn from(v: &PicClass) -> Self {
        Self {
            coords: v
                .coords
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }
}

fn divide_content(coords: Vec<BigInt>) -> PicClass {
    let g = coords.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return PicClass { coords };
    }
    PicClass {
        coords: coords.into_iter().map(|c| c / &g).collect(),
    }
}

/// Divides by the gcd of the coordinates without changing the sign.
pub fn primitive_oriented(v: &PicClass) -> Result<PicClass> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(divide_content(v.coords.clone()))
}

/// Primitive representative of the line through `v`: gcd 1, and the first
/// nonzero coordinate positive (which means `x_0 > 0` whenever `x_0 != 0`).
pub fn primitive(v: &PicClass) -> Result<PicClass> {
    let mut p = primitive_oriented(v)?;
    let lead_negative = p
        .coords
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c.is_negative());
    if lead_negative {
        p = p.neg();
    }
    Ok(p)
}

pub fn primitive_ray(r: &RationalRay) -> PicClass {
    // RationalRay is nonzero by construction
    primitive(&r.to_integral()).expect("nonzero ray")
}

const JSON_SAFE: i64 = (1 << 53) - 1;

/// Serde adapter: integers within 53 bits as JSON numbers, larger ones as
/// decimal strings. Deserialization accepts both.
pub mod json_int {
    use super::*;
    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(i64),
        Str(String),
    }

    fn to_repr(x: &BigInt) -> Repr {
        match i64::try_from(x) {
            Ok(v) if (-JSON_SAFE..=JSON_SAFE).contains(&v) => Repr::Num(v),
            _ => Repr::Str(x.to_string()),
        }
    }

    fn from_repr<E: serde::de::Error>(r: Repr) -> std::result::Result<BigInt, E> {
        match r {
            Repr::Num(v) => Ok(BigInt::from(v)),
            Repr::Str(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|e| E::custom(format!("bad integer {s:?}: {e}"))),
        }
    }

    pub fn to_value(x: &BigInt) -> serde_json::Value {
        match to_repr(x) {
            Repr::Num(v) => serde_json::Value::from(v),
            Repr::Str(s) => serde_json::Value::from(s),
        }
    }

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        to_repr(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        from_repr(Repr::deserialize(d)?)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(
            xs: &[BigInt],
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            s.collect_seq(xs.iter().map(to_repr))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<BigInt>, D::Error> {
            Vec::<Repr>::deserialize(d)?
                .into_iter()
                .map(from_repr::<D::Error>)
                .collect()
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PicClassJson {
    n: usize,
    #[serde(with = "json_int::vec")]
    coords: Vec<BigInt>,
}

impl Serialize for PicClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PicClassJson {
            n: self.n(),
            coords: self.coords.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PicClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PicClassJson::deserialize(d)?;
        if raw.coords.len() != raw.n + 1 {
            return Err(D::Error::custom(format!(
                "coords has length {}, expected n + 1 = {}",
                raw.coords.len(),
                raw.n + 1
            )));
        }
        PicClass::new(raw.coords).map_err(D::Error::custom)
    }
}

/// Parses `"3,-1,-1,0"` into a class. Whitespace is ignored.
pub fn parse_vector(s: &str) -> Result<PicClass> {
    let coords = s
        .split(',')
        .map(|t| {
            let t: String = t.chars().filter(|c| !c.is_whitespace()).collect();
            t.parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    PicClass::new(coords)
}
