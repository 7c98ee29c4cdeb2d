//! The Cremona action on the Picard lattice.
//!
//! `W_n` is generated by the quadratic transformations `phi_ijk`, which act
//! as reflections in the classes `e_0 - e_i - e_j - e_k`, together with the
//! transpositions of the exceptional classes. Words are applied left to right.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{canonical_class, pairing_unchecked, PicClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGenerator", into = "RawGenerator")]
pub enum Generator {
    /// Quadratic transformation centred at points `i < j < k`.
    Phi(usize, usize, usize),
    /// Transposition of `e_i` and `e_{i+1}`.
    Sigma(usize),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawGenerator {
    Phi([usize; 3]),
    Sigma(usize),
}

impl TryFrom<RawGenerator> for Generator {
    type Error = Error;

    fn try_from(raw: RawGenerator) -> Result<Self> {
        match raw {
            RawGenerator::Phi([i, j, k]) => Generator::phi(i, j, k),
            RawGenerator::Sigma(i) => Ok(Generator::Sigma(i)),
        }
    }
}

impl From<Generator> for RawGenerator {
    fn from(g: Generator) -> Self {
        match g {
            Generator::Phi(i, j, k) => RawGenerator::Phi([i, j, k]),
            Generator::Sigma(i) => RawGenerator::Sigma(i),
        }
    }
}

impl Generator {
    /// `phi_ijk` with the indices put in increasing order.
    pub fn phi(i: usize, j: usize, k: usize) -> Result<Self> {
        let mut idx = [i, j, k];
        idx.sort_unstable();
        if idx[0] == idx[1] || idx[1] == idx[2] {
            return Err(Error::RepeatedIndex(i, j, k));
        }
        if idx[0] == 0 {
            return Err(Error::IndexOutOfRange { index: 0, n: 0 });
        }
        Ok(Generator::Phi(idx[0], idx[1], idx[2]))
    }

    pub fn check(&self, n: usize) -> Result<()> {
        match *self {
            Generator::Phi(i, j, k) => {
                if !(1 <= i && i < j && j < k) {
                    return Err(Error::RepeatedIndex(i, j, k));
                }
                if k > n {
                    return Err(Error::IndexOutOfRange { index: k, n });
                }
            }
            Generator::Sigma(i) => {
                if i == 0 || i >= n {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
            }
        }
        Ok(())
    }

    /// Every generator of `W_n`: all `phi_ijk`, then `sigma_1 .. sigma_{n-1}`.
    pub fn all(n: usize) -> Vec<Generator> {
        let mut gens = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    gens.push(Generator::Phi(i, j, k));
                }
            }
        }
        gens.extend((1..n).map(Generator::Sigma));
        gens
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Phi(i, j, k) => write!(f, "phi({i},{j},{k})"),
            Generator::Sigma(i) => write!(f, "sigma({i})"),
        }
    }
}

/// A sequence of generators applied left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeylWord(pub Vec<Generator>);

impl WeylWord {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, g: Generator) {
        self.0.push(g);
    }

    pub fn extend(&mut self, other: &WeylWord) {
        self.0.extend_from_slice(&other.0);
    }

    /// The inverse element. Generators are involutions, so this is the reversal.
    pub fn inverse(&self) -> WeylWord {
        WeylWord(self.0.iter().rev().copied().collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.0.iter()
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("]")
    }
}

impl FromIterator<Generator> for WeylWord {
    fn from_iter<I: IntoIterator<Item = Generator>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

fn apply_in_place(g: Generator, x: &mut [BigInt]) {
    match g {
        Generator::Phi(i, j, k) => {
            let s = &x[0] + &x[i] + &x[j] + &x[k];
            // reflection in e_0 - e_i - e_j - e_k, which has square -2
            x[0] += &s;
            x[i] -= &s;
            x[j] -= &s;
            x[k] -= &s;
        }
        Generator::Sigma(i) => x.swap(i, i + 1),
    }
}

pub fn apply_generator(g: Generator, v: &PicClass) -> Result<PicClass> {
    g.check(v.n())?;
    let mut out = v.clone();
    apply_in_place(g, out.coords_mut());
    Ok(out)
}

pub fn apply_word(w: &WeylWord, v: &PicClass) -> Result<PicClass> {
    for g in w.iter() {
        g.check(v.n())?;
    }
    let mut out = v.clone();
    for &g in w.iter() {
        apply_in_place(g, out.coords_mut());
    }
    Ok(out)
}

/// Normal of the mirror fixed by `g`.
pub fn fixed_hyperplane_normal(g: Generator, n: usize) -> Result<PicClass> {
    g.check(n)?;
    let mut v = PicClass::zero(n);
    let x = v.coords_mut();
    match g {
        Generator::Phi(i, j, k) => {
            x[0] = 1.into();
            for l in [i, j, k] {
                x[l] = (-1).into();
            }
        }
        Generator::Sigma(i) => {
            x[i] = 1.into();
            x[i + 1] = (-1).into();
        }
    }
    Ok(v)
}

/// Stable bubble sort of `x_1..x_n` into ascending order. The returned word
/// has one `sigma` per inversion.
pub fn sort_coordinates(v: &PicClass) -> (PicClass, WeylWord) {
    let mut out = v.clone();
    let mut word = WeylWord::new();
    sort_in_place(out.coords_mut(), &mut word);
    (out, word)
}

fn sort_in_place(x: &mut [BigInt], word: &mut WeylWord) {
    let n = x.len() - 1;
    for pass in 0..n.saturating_sub(1) {
        let mut swapped = false;
        for i in 1..n - pass {
            if x[i] > x[i + 1] {
                x.swap(i, i + 1);
                word.push(Generator::Sigma(i));
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
}

/// Whether `v` satisfies `x_0 + x_1 + x_2 + x_3 >= 0` and
/// `x_1 <= ... <= x_n <= 0`. On the K-nonpositive side this is the full
/// fundamental cone for every `n >= 3`.
pub fn in_weyl_chamber(v: &PicClass) -> bool {
    let x = v.coords();
    let n = v.n();
    if n < 3 {
        return false;
    }
    let sorted = x[1..].windows(2).all(|w| w[0] <= w[1]);
    sorted && !x[n].is_positive() && !(&x[0] + &x[1] + &x[2] + &x[3]).is_negative()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionStatus {
    InFundamentalCone,
    NotNef(Violation),
}

/// A curve class that pairs negatively with the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// The curve class, pulled back to the coordinates of the input.
    pub curve: PicClass,
    /// The same curve as seen from the reduced class (`e_n` or `e_0 - e_1 - e_2`).
    pub reduced_curve: PicClass,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pub reduced: PicClass,
    pub witness: WeylWord,
    pub status: ReductionStatus,
    /// Number of `phi_123` applications.
    pub iterations: usize,
}

impl ReductionResult {
    pub fn is_in_cone(&self) -> bool {
        matches!(self.status, ReductionStatus::InFundamentalCone)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match &self.status {
            ReductionStatus::NotNef(v) => Some(v),
            ReductionStatus::InFundamentalCone => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (status, violated) = match &self.status {
            ReductionStatus::InFundamentalCone => ("in_cone", serde_json::Value::Null),
            ReductionStatus::NotNef(v) => (
                "not_nef",
                serde_json::to_value(&v.curve).expect("class serializes"),
            ),
        };
        serde_json::json!({
            "status": status,
            "reduced": self.reduced,
            "witness": self.witness,
            "violated": violated,
            "iterations": self.iterations,
        })
    }
}

/// Moves `v` into the fundamental cone by sorting and applying `phi_123`
/// while `x_0 + x_1 + x_2 + x_3 < 0`.
///
/// Only classes with `v.K <= 0` are accepted. Each `phi_123` step lowers
/// `x_0` strictly, and the loop stops with `NotNef` as soon as a sorted class
/// has `x_n > 0` (curve `e_n`) or needs another step with `x_0 <= 0`
/// (curve `e_0 - e_1 - e_2`), so at most `max(x_0, 0)` steps are taken.
pub fn reduce(v: &PicClass) -> Result<ReductionResult> {
    let n = v.n();
    let k = canonical_class(n)?;
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let vk = pairing_unchecked(v, &k);
    if vk.is_positive() {
        return Err(Error::KPositive(vk));
    }

    let mut cur = v.clone();
    let mut witness = WeylWord::new();
    let mut iterations = 0usize;
    let phi = Generator::Phi(1, 2, 3);
    loop {
        sort_in_place(cur.coords_mut(), &mut witness);
        let x = cur.coords();
        let local = if x[n].is_positive() {
            Some(PicClass::basis(n, n)?)
        } else if !(&x[0] + &x[1] + &x[2] + &x[3]).is_negative() {
            return Ok(ReductionResult {
                reduced: cur,
                witness,
                status: ReductionStatus::InFundamentalCone,
                iterations,
            });
        } else if !x[0].is_positive() {
            // unreachable while v.K <= 0 holds: x_i <= 0 then forces x_0 > 0
            Some(line_through_first_two(n))
        } else {
            None
        };
        if let Some(reduced_curve) = local {
            let curve = apply_word(&witness.inverse(), &reduced_curve)?;
            return Ok(ReductionResult {
                reduced: cur,
                witness,
                status: ReductionStatus::NotNef(Violation {
                    curve,
                    reduced_curve,
                }),
                iterations,
            });
        }
        apply_in_place(phi, cur.coords_mut());
        witness.push(phi);
        iterations += 1;
    }
}

fn line_through_first_two(n: usize) -> PicClass {
    let mut c = PicClass::zero(n);
    let x = c.coords_mut();
    x[0] = 1.into();
    x[1] = (-1).into();
    x[2] = (-1).into();
    c
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrbitLimit {
    pub max_degree: Option<BigInt>,
    pub max_count: Option<usize>,
}

impl OrbitLimit {
    /// Cap applied when only a degree bound is given; the degree bound alone
    /// need not make the search finite.
    pub const DEFAULT_MAX_COUNT: usize = 100_000;

    pub fn degree(d: i64) -> Self {
        Self {
            max_degree: Some(d.into()),
            max_count: None,
        }
    }

    pub fn count(c: usize) -> Self {
        Self {
            max_degree: None,
            max_count: Some(c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitResult {
    pub elements: Vec<PicClass>,
    pub truncated: bool,
}

/// Breadth-first closure of `v` under all generators, pruned by degree and
/// cut off by count. The output is sorted lexicographically and does not
/// depend on how the frontier is scheduled.
pub fn orbit(v: &PicClass, limit: &OrbitLimit) -> Result<OrbitResult> {
    let n = v.n();
    if n < 3 {
        return Err(Error::InvalidN {
            n,
            reason: "the Cremona action needs n >= 3",
        });
    }
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let max_count = limit.max_count.unwrap_or(OrbitLimit::DEFAULT_MAX_COUNT);
    let within = |u: &PicClass| limit.max_degree.as_ref().is_none_or(|d| u.degree() <= d);
    if !within(v) || max_count == 0 {
        return Ok(OrbitResult {
            elements: Vec::new(),
            truncated: max_count == 0,
        });
    }

    let gens = Generator::all(n);
    let mut seen: BTreeSet<PicClass> = BTreeSet::new();
    seen.insert(v.clone());
    let mut frontier = vec![v.clone()];
    let mut truncated = false;
    while !frontier.is_empty() {
        let mut next: Vec<PicClass> = frontier
            .par_iter()
            .flat_map_iter(|u| {
                gens.iter().map(move |&g| {
                    let mut w = u.clone();
                    apply_in_place(g, w.coords_mut());
                    w
                })
            })
            .filter(|w| within(w) && !seen.contains(w))
            .collect();
        next.sort();
        next.dedup();
        let room = max_count - seen.len();
        if next.len() > room {
            next.truncate(room);
            truncated = true;
        }
        seen.extend(next.iter().cloned());
        if truncated {
            break;
        }
        frontier = next;
    }
    Ok(OrbitResult {
        elements: seen.into_iter().collect(),
        truncated,
    })
}
