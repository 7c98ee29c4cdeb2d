use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::ConePolytope;
use crate::error::{Error, Result};
use crate::lattice::{
    light_cone_position, pairing_unchecked, primitive_oriented, ConeTag, LightConePosition,
    PicClass, RationalRay,
};
use crate::linalg::{kernel, rank};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ray {
    /// Primitive integer generator, oriented into the cone.
    pub generator: PicClass,
    pub position: LightConePosition,
    /// Constraints (numbered as in `ConePolytope::all_normals`) vanishing on the ray.
    pub active_set: Vec<usize>,
}

/// Row `r` with `r . x = u . x` under the Minkowski form.
fn minkowski_row(u: &PicClass) -> Vec<BigInt> {
    let mut row = u.coords().to_vec();
    for x in row.iter_mut().skip(1) {
        *x = -&*x;
    }
    row
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + m - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Extremal rays of a pointed cone, by solving every `n`-subset of the
/// constraints for a one-dimensional kernel and keeping the feasible ones.
/// Sorted by generator.
pub fn extremal_rays(p: &ConePolytope) -> Result<Vec<Ray>> {
    let dim = p.n() + 1;
    let normals = p.all_normals();
    let rows: Vec<Vec<BigInt>> = normals.iter().map(|u| minkowski_row(u)).collect();
    let r = rank(&rows);
    if r < dim {
        return Err(Error::NotPointed { rank: r, dim });
    }

    let mut gens: Vec<PicClass> = combinations(rows.len(), dim - 1)
        .into_par_iter()
        .filter_map(|subset| {
            let sub: Vec<Vec<BigInt>> = subset.iter().map(|&i| rows[i].clone()).collect();
            let ker = kernel(&sub, dim);
            if ker.len() != 1 {
                return None;
            }
            let ray = RationalRay::new(ker.into_iter().next()?).ok()?;
            let v = ray.to_integral();
            let signs: Vec<BigInt> = normals.iter().map(|u| pairing_unchecked(u, &v)).collect();
            if signs.iter().all(|s| !s.is_negative()) {
                Some(v)
            } else if signs.iter().all(|s| !s.is_positive()) {
                Some(v.neg())
            } else {
                None
            }
        })
        .map(|v| primitive_oriented(&v).expect("kernel vectors are nonzero"))
        .collect();
    gens.sort();
    gens.dedup();

    Ok(gens
        .into_iter()
        .map(|g| {
            let active_set = normals
                .iter()
                .enumerate()
                .filter(|(_, u)| pairing_unchecked(u, &g).is_zero())
                .map(|(i, _)| i)
                .collect();
            Ray {
                position: light_cone_position(&g).expect("nonzero"),
                generator: g,
                active_set,
            }
        })
        .collect())
}

/// Extremal rays on the light cone (ideal vertices).
pub fn boundary_rays(p: &ConePolytope) -> Result<Vec<Ray>> {
    Ok(extremal_rays(p)?
        .into_iter()
        .filter(|r| r.position.tag == ConeTag::Boundary)
        .collect())
}

/// Whether the cone lies in the closed forward light cone, i.e. every
/// extremal ray has `r.r >= 0` and `x_0 > 0`.
pub fn finite_volume(p: &ConePolytope) -> Result<bool> {
    Ok(extremal_rays(p)?
        .iter()
        .all(|r| r.position.tag != ConeTag::Outside && r.position.forward))
}

/// Constraints implied by the others.
pub fn redundant_halfspaces(p: &ConePolytope) -> Result<Vec<usize>> {
    let normals: Vec<PicClass> = p.all_normals().into_iter().cloned().collect();
    let mut out = Vec::new();
    for (i, u) in normals.iter().enumerate() {
        let rest = p.without(i);
        match extremal_rays(&rest) {
            Ok(rays) => {
                if rays
                    .iter()
                    .all(|r| !pairing_unchecked(u, &r.generator).is_negative())
                {
                    out.push(i);
                }
            }
            Err(Error::NotPointed { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
