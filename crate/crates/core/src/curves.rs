//! (-1)-classes: lattice classes `c = (d, -m_1, ..., -m_n)` with
//! `c.c = -1` and `c.K = -1`, i.e. `sum m = 3d - 1` and `sum m^2 = d^2 + 1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{canonical_class, pairing_unchecked, PicClass};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MinusOneClass(PicClass);

impl MinusOneClass {
    pub fn new(cls: PicClass) -> Result<Self> {
        if is_minus_one_class(&cls) {
            Ok(Self(cls))
        } else {
            Err(Error::NotMinusOneClass(cls.to_string()))
        }
    }

    pub fn class(&self) -> &PicClass {
        &self.0
    }

    pub fn into_class(self) -> PicClass {
        self.0
    }

    pub fn degree(&self) -> &BigInt {
        self.0.degree()
    }

    /// `m_l = -x_l`.
    pub fn multiplicities(&self) -> Vec<BigInt> {
        self.0.coords()[1..].iter().map(|x| -x).collect()
    }
}

pub fn is_minus_one_class(v: &PicClass) -> bool {
    let n = v.n();
    if n < 3 {
        return false;
    }
    let k = canonical_class(n).expect("n >= 3");
    let minus_one = -BigInt::one();
    if v.square() != minus_one || pairing_unchecked(v, &k) != minus_one {
        return false;
    }
    let d = v.degree();
    let x = &v.coords()[1..];
    if d.is_negative() {
        false
    } else if d.is_zero() {
        x.iter().filter(|c| c.is_one()).count() == 1
            && x.iter().filter(|c| !c.is_zero()).count() == 1
    } else {
        let neg_d = -d;
        x.iter().all(|c| !c.is_positive() && *c >= neg_d)
    }
}

/// Non-increasing multiplicity vector of a (-1)-class of degree `d >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiplicityType {
    pub degree: u64,
    /// `m_1 >= m_2 >= ... >= m_n >= 0`.
    pub mults: Vec<u64>,
}

impl MultiplicityType {
    pub fn class(&self) -> PicClass {
        let mut coords = Vec::with_capacity(self.mults.len() + 1);
        coords.push(BigInt::from(self.degree));
        coords.extend(self.mults.iter().map(|&m| -BigInt::from(m)));
        PicClass::new(coords).expect("n >= 1")
    }
}

/// All sorted multiplicity types of positive degree `d` for `n` points.
pub fn multiplicity_types(n: usize, d: u64) -> Vec<MultiplicityType> {
    if d == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let sum = 3 * d - 1;
    let sq = d * d + 1;
    let mut cur = Vec::with_capacity(n);
    search(n, d, sum, sq, &mut cur, &mut out);
    out.into_iter()
        .map(|mults| MultiplicityType { degree: d, mults })
        .collect()
}

fn search(n: usize, cap: u64, sum: u64, sq: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    let left = (n - cur.len()) as u64;
    if left == 0 {
        if sum == 0 && sq == 0 {
            out.push(cur.clone());
        }
        return;
    }
    // m^2 >= m, m <= cap, and Cauchy-Schwarz on the remaining slots
    if sq < sum || sum > left * cap || sq > cap * sum || sum * sum > left * sq {
        return;
    }
    for m in (0..=cap.min(sum)).rev() {
        if m * m > sq {
            continue;
        }
        cur.push(m);
        search(n, m, sum - m, sq - m * m, cur, out);
        cur.pop();
    }
}

/// Every (-1)-class of degree `0..=max_degree`, sorted lexicographically.
pub fn enumerate_minus_one(n: usize, max_degree: u64) -> Result<Vec<MinusOneClass>> {
    if n < 3 {
        return Err(Error::InvalidN {
            n,
            reason: "(-1)-classes are enumerated for n >= 3",
        });
    }
    let mut out: Vec<MinusOneClass> = (1..=n)
        .map(|i| MinusOneClass(PicClass::basis(n, i).expect("in range")))
        .collect();
    for d in 1..=max_degree {
        for t in multiplicity_types(n, d) {
            let mut perm = t.mults.clone();
            perm.reverse();
            loop {
                let mut coords = Vec::with_capacity(n + 1);
                coords.push(BigInt::from(d));
                coords.extend(perm.iter().map(|&m| -BigInt::from(m)));
                out.push(MinusOneClass(PicClass::new(coords).expect("n >= 3")));
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn next_permutation(xs: &mut [u64]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = xs
        .iter()
        .rposition(|&x| x > xs[i])
        .expect("pivot has a successor");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Number of multiplicity types that appear in degrees
/// `max_degree + 1 ..= max_degree + extra`. Zero is the saturation signal:
/// no new classes showed up in `extra` further degrees. It is a heuristic
/// stopping rule, not a proof of completeness.
pub fn types_beyond(n: usize, max_degree: u64, extra: u64) -> usize {
    (max_degree + 1..=max_degree + extra)
        .map(|d| multiplicity_types(n, d).len())
        .sum()
}

/// A (-1)-class inequality `v.c >= 0` written as `d - 1` cubic inequalities
/// `e_0 - e_i - e_j - e_k` plus one conic inequality `e_0 - e_a - e_b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub cubics: Vec<PicClass>,
    pub conic: PicClass,
}

impl Decomposition {
    pub fn sum(&self) -> PicClass {
        self.cubics.iter().fold(self.conic.clone(), |acc, c| {
            acc.checked_add(c).expect("same n")
        })
    }
}

/// Greedy split: while `d > 1` take the three largest multiplicities
/// (smallest index first on ties), peel off that cubic and lower `d` by one.
pub fn decompose_inequality(c: &MinusOneClass) -> Result<Decomposition> {
    let cls = c.class();
    let n = cls.n();
    let mut d = cls
        .degree()
        .to_u64()
        .ok_or_else(|| Error::OutOfRange(format!("degree {} too large", cls.degree())))?;
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    let mut m: Vec<u64> = cls.coords()[1..]
        .iter()
        .map(|x| (-x).to_u64().expect("0 <= m <= d"))
        .collect();
    let line = |idx: &[usize]| {
        let mut v = PicClass::zero(n);
        let x = v.coords_mut();
        x[0] = BigInt::one();
        for &i in idx {
            x[i + 1] = -BigInt::one();
        }
        v
    };

    let mut cubics = Vec::with_capacity(d as usize - 1);
    let mut order: Vec<usize> = (0..n).collect();
    while d > 1 {
        order.sort_by(|&a, &b| m[b].cmp(&m[a]).then(a.cmp(&b)));
        let top = [order[0], order[1], order[2]];
        for &i in &top {
            m[i] -= 1;
        }
        cubics.push(line(&top));
        d -= 1;
        debug_assert!(m.iter().all(|&x| x <= d));
    }
    let rest: Vec<usize> = (0..n).filter(|&i| m[i] > 0).collect();
    debug_assert!(rest.len() == 2 && rest.iter().all(|&i| m[i] == 1));
    Ok(Decomposition {
        cubics,
        conic: line(&rest),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc(xs: &[i64]) -> PicClass {
        PicClass::from_i64(xs).unwrap()
    }

    fn padded(n: usize, head: &[i64]) -> PicClass {
        let mut v = vec![0i64; n + 1];
        v[..head.len()].copy_from_slice(head);
        pc(&v)
    }

    /// Naive search over every vector with `-d <= x_l <= 0`.
    fn brute_force(n: usize, max_degree: i64) -> Vec<PicClass> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let lo = if d == 0 { -1 } else { -d };
            let hi = if d == 0 { 1 } else { 0 };
            let mut x = vec![lo; n];
            loop {
                let mut coords = vec![d];
                coords.extend_from_slice(&x);
                let v = pc(&coords);
                let sum: i64 = x.iter().sum();
                let sq: i64 = x.iter().map(|a| a * a).sum();
                if d * d - sq == -1 && -3 * d - sum == -1 {
                    out.push(v);
                }
                let mut i = 0;
                while i < n && x[i] == hi {
                    x[i] = lo;
                    i += 1;
                }
                if i == n {
                    break;
                }
                x[i] += 1;
            }
        }
        out.sort();
        out
    }

    #[test]
    fn predicate_examples() {
        assert!(is_minus_one_class(&PicClass::basis(9, 1).unwrap()));
        assert!(!is_minus_one_class(&PicClass::basis(9, 0).unwrap()));
        assert!(is_minus_one_class(&padded(6, &[2, -1, -1, -1, -1, -1])));
        assert!(!is_minus_one_class(&PicClass::basis(9, 1).unwrap().neg()));
        assert!(!is_minus_one_class(&padded(3, &[1, -2, 0])));
    }

    #[test]
    fn small_enumerations() {
        let c = enumerate_minus_one(3, 1).unwrap();
        let got: Vec<_> = c.into_iter().map(MinusOneClass::into_class).collect();
        assert_eq!(
            got,
            vec![
                pc(&[0, 0, 0, 1]),
                pc(&[0, 0, 1, 0]),
                pc(&[0, 1, 0, 0]),
                pc(&[1, -1, -1, 0]),
                pc(&[1, -1, 0, -1]),
                pc(&[1, 0, -1, -1]),
            ]
        );
        assert_eq!(enumerate_minus_one(9, 0).unwrap().len(), 9);
        assert!(enumerate_minus_one(2, 3).is_err());
    }

    #[test]
    fn matches_brute_force_oracle() {
        for (n, d) in [(3, 3), (4, 3), (5, 3), (6, 3), (7, 3), (9, 3), (10, 2)] {
            let got: Vec<_> = enumerate_minus_one(n, d as u64)
                .unwrap()
                .into_iter()
                .map(MinusOneClass::into_class)
                .collect();
            assert_eq!(got, brute_force(n, d), "n = {n}, d <= {d}");
        }
    }

    #[test]
    fn del_pezzo_counts_saturate() {
        // frozen from the brute-force oracle in tests/curves_oracle.rs
        for (n, count) in [(3, 6), (4, 10), (5, 16), (6, 27), (7, 56), (8, 240)] {
            assert_eq!(enumerate_minus_one(n, 6).unwrap().len(), count, "n = {n}");
            assert_eq!(types_beyond(n, 6, 6), 0, "n = {n}");
        }
        assert!(types_beyond(9, 6, 2) > 0);
    }

    #[test]
    fn decomposition_examples() {
        let c = MinusOneClass::new(padded(9, &[1, -1, -1])).unwrap();
        let dec = decompose_inequality(&c).unwrap();
        assert!(dec.cubics.is_empty());
        assert_eq!(dec.conic, padded(9, &[1, -1, -1]));

        let c = MinusOneClass::new(padded(9, &[2, -1, -1, -1, -1, -1])).unwrap();
        let dec = decompose_inequality(&c).unwrap();
        assert_eq!(dec.cubics, vec![padded(9, &[1, -1, -1, -1])]);
        assert_eq!(dec.conic, padded(9, &[1, 0, 0, 0, -1, -1]));

        let c = MinusOneClass::new(pc(&[5, -3, -2, -2, -2, -1, -1, -1, -1, -1])).unwrap();
        let dec = decompose_inequality(&c).unwrap();
        assert_eq!(dec.cubics.len(), 4);
        assert_eq!(dec.sum(), *c.class());

        let e1 = MinusOneClass::new(PicClass::basis(9, 1).unwrap()).unwrap();
        assert_eq!(decompose_inequality(&e1), Err(Error::DegreeZero));
    }

    #[test]
    fn permutations_are_exhaustive() {
        let mut xs = vec![0, 1, 1, 2];
        let mut count = 1;
        while next_permutation(&mut xs) {
            count += 1;
        }
        assert_eq!(count, 12);
    }
}
