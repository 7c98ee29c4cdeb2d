//! The closed-form vertex list of the cone over `P^-_n`, `n >= 10`.

use serde::Serialize;

use super::{build_p_minus, extremal_rays};
use crate::error::{Error, Result};
use crate::lattice::{primitive, PicClass};

fn point(n: usize, x0: i64, blocks: &[(usize, i64)]) -> PicClass {
    let mut v = vec![0i64; n + 1];
    v[0] = x0;
    let mut at = 1;
    for &(len, val) in blocks {
        for x in &mut v[at..at + len] {
            *x = val;
        }
        at += len;
    }
    primitive(&PicClass::from_i64(&v).expect("n >= 1")).expect("nonzero")
}

/// Every member of the eight parametrised families, tagged with its family.
pub fn vertex_families(n: usize) -> Result<Vec<(&'static str, PicClass)>> {
    if n < 10 {
        return Err(Error::InvalidN {
            n,
            reason: "vertex formulas need n >= 10",
        });
    }
    let ni = n as i64;
    let mut out = vec![
        ("line", point(n, 1, &[])),
        ("line through one point", point(n, 1, &[(1, -1)])),
        ("conic", point(n, 2, &[(2, -1)])),
    ];
    for k in 3..=9 {
        out.push(("cubic (3; 1^k)", point(n, 3, &[(k, -1)])));
    }
    for m in 10..=n {
        out.push(("(m; 3^m)", point(n, m as i64, &[(m, -3)])));
    }
    for b in 9..ni {
        out.push((
            "(b-2; b-6, 2^b)",
            point(n, b - 2, &[(1, -(b - 6)), (b as usize, -2)]),
        ));
    }
    for b in 8..=ni - 2 {
        out.push((
            "(2b-2; b-3, b-3, 4^b)",
            point(n, 2 * b - 2, &[(2, -(b - 3)), (b as usize, -4)]),
        ));
    }
    for a in 3..=8i64 {
        for b in (10 - a).max(1)..=ni - a {
            out.push((
                "(3b; b^a, (9-a)^b)",
                point(n, 3 * b, &[(a as usize, -b), (b as usize, -(9 - a))]),
            ));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexFormulaReport {
    pub n: usize,
    pub expected_count: usize,
    pub family_rays: Vec<PicClass>,
    pub computed_rays: Vec<PicClass>,
    pub missing_from_computed: Vec<PicClass>,
    pub missing_from_families: Vec<PicClass>,
    pub sets_equal: bool,
    pub count_ok: bool,
}

impl VertexFormulaReport {
    pub fn ok(&self) -> bool {
        self.sets_equal && self.count_ok
    }
}

/// Compares the family list with the rays found by facet enumeration and
/// with the count `9n - 71`.
pub fn verify_vertex_formulas(n: usize) -> Result<VertexFormulaReport> {
    let mut family_rays: Vec<PicClass> = vertex_families(n)?.into_iter().map(|(_, v)| v).collect();
    family_rays.sort();
    family_rays.dedup();
    let computed_rays: Vec<PicClass> = extremal_rays(&build_p_minus(n)?)?
        .into_iter()
        .map(|r| r.generator)
        .collect();
    let missing_from_computed: Vec<PicClass> = family_rays
        .iter()
        .filter(|v| computed_rays.binary_search(v).is_err())
        .cloned()
        .collect();
    let missing_from_families: Vec<PicClass> = computed_rays
        .iter()
        .filter(|v| family_rays.binary_search(v).is_err())
        .cloned()
        .collect();
    let expected_count = 9 * n - 71;
    Ok(VertexFormulaReport {
        n,
        expected_count,
        sets_equal: missing_from_computed.is_empty() && missing_from_families.is_empty(),
        count_ok: computed_rays.len() == expected_count && family_rays.len() == expected_count,
        family_rays,
        computed_rays,
        missing_from_computed,
        missing_from_families,
    })
}
