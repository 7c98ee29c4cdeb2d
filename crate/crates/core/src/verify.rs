//! Registry of named checks over the library, with injectable fixtures.
//! Checks run in parallel; the report keeps registry order.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::curves::{decompose_inequality, enumerate_minus_one, is_minus_one_class, types_beyond};
use crate::error::{Error, Result};
use crate::lattice::{canonical_class, pairing, ConeTag, PicClass};
use crate::nef::{curve_check, is_nef_k_nonpositive, NefWitness};
use crate::polytope::{
    boundary_rays, build_p, build_p_minus, build_p_tilde, cartan_matrix, classify_angle,
    coxeter_diagram, extremal_rays, finite_volume, is_coxeter, verify_region_r,
    verify_vertex_formulas, AngleTag, CoxeterDiagram, EdgeKind,
};
use crate::weyl::{apply_generator, apply_word, reduce, Generator, WeylWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Reduced sample sizes; skips the drawn-diagram comparisons.
    Quick,
    /// Every check at full size.
    Paper,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Suite::Quick),
            "paper" => Ok(Suite::Paper),
            other => Err(Error::Parse(format!("unknown suite {other:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Quick => "quick",
            Suite::Paper => "paper",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub computed: String,
    /// The statement being checked.
    pub anchor: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub suite: Suite,
    pub seed: u64,
    /// Replaces the default range of the sweeps over `n`.
    pub n_range: Option<RangeInclusive<usize>>,
}

impl VerifyOptions {
    pub fn new(suite: Suite) -> Self {
        VerifyOptions {
            suite,
            seed: 0,
            n_range: None,
        }
    }
}

/// One row of the region table: facet triple, point, vertex flag, f.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionRow {
    pub facets: [usize; 3],
    pub point: [BigRational; 3],
    pub is_vertex: bool,
    pub f: Option<BigRational>,
}

/// Expected values the checks compare against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixtures {
    /// Rendered entries of the Cartan matrix of `P_9`.
    pub cartan_p9: Vec<Vec<String>>,
    /// Extremal rays of `P_9`, sorted.
    pub rays_p9: Vec<Vec<i64>>,
    /// Ideal vertices of `P_9`, sorted.
    pub boundary_p9: Vec<Vec<i64>>,
    /// `(n, number of (-1)-classes)` for del Pezzo `n`.
    pub curve_counts: Vec<(usize, usize)>,
    /// The `n` in `10..=20` with `P^-_n` Coxeter.
    pub coxeter_p_minus: Vec<usize>,
    pub diagram_p9: CoxeterDiagram,
    /// Drawn diagrams of `P^-_n` for `n = 10, 11, 13`.
    pub diagrams_p_minus: Vec<(usize, CoxeterDiagram)>,
    /// Angle between the last two facets of `P^-_n`.
    pub last_angles: Vec<(usize, AngleTag)>,
    pub region_r: Vec<(usize, Vec<RegionRow>)>,
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn padded(n: usize, x0: i64, blocks: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![x0];
    for &(len, val) in blocks {
        v.extend(std::iter::repeat_n(val, len));
    }
    v.resize(n + 1, 0);
    v
}

fn chain_with_branch(path: usize, branch: usize, tail: EdgeKind) -> Vec<(usize, usize, EdgeKind)> {
    let mut e: Vec<_> = (0..path - 1)
        .map(|i| (i, i + 1, EdgeKind::Multi(1)))
        .collect();
    e.push((2, branch, EdgeKind::Multi(1)));
    e.push((path - 1, path, tail));
    e
}

pub fn region_rows(n: usize) -> Vec<RegionRow> {
    let ni = n as i64;
    let z = q(0, 1);
    let t = q(-1, 3);
    let row = |facets, point, is_vertex, f| RegionRow {
        facets,
        point,
        is_vertex,
        f,
    };
    vec![
        row(
            [1, 2, 3],
            [z.clone(), z.clone(), z.clone()],
            true,
            Some(q(0, 1)),
        ),
        row(
            [0, 2, 3],
            [q(-1, 1), z.clone(), z.clone()],
            true,
            Some(q(1, 1)),
        ),
        row([2, 3, 4], [q(-3, 1), z.clone(), z.clone()], false, None),
        row(
            [0, 1, 3],
            [t.clone(), t.clone(), z.clone()],
            n == 10,
            (n == 10).then(|| q(1, 1)),
        ),
        row(
            [1, 3, 4],
            [q(-3, ni - 1), q(-3, ni - 1), z.clone()],
            true,
            Some(q(9, ni - 1)),
        ),
        row([0, 1, 2], [t.clone(), t.clone(), t.clone()], false, None),
        row(
            [1, 2, 4],
            [q(-3, ni), q(-3, ni), q(-3, ni)],
            true,
            Some(q(9, ni)),
        ),
        row(
            [0, 1, 4],
            [t.clone(), t.clone(), q(ni - 10, 3)],
            n == 10,
            (n == 10).then(|| q(1, 1)),
        ),
        row(
            [0, 2, 4],
            [q(-(ni - 7), ni - 3), q(-2, ni - 3), q(-2, ni - 3)],
            true,
            Some(q((ni - 7) * (ni - 7) + 4 * (ni - 1), (ni - 3) * (ni - 3))),
        ),
        row(
            [0, 3, 4],
            [q(-(ni - 8), ni - 4), q(-2, ni - 4), z.clone()],
            true,
            Some(q((ni - 8) * (ni - 8) + 4 * (ni - 2), (ni - 4) * (ni - 4))),
        ),
    ]
}

impl Default for Fixtures {
    fn default() -> Self {
        let tok = |row: [&str; 10]| row.iter().map(|s| s.to_string()).collect();
        let cartan_p9 = vec![
            tok(["2", "0", "0", "-1", "0", "0", "0", "0", "0", "0"]),
            tok(["0", "2", "-1", "0", "0", "0", "0", "0", "0", "0"]),
            tok(["0", "-1", "2", "-1", "0", "0", "0", "0", "0", "0"]),
            tok(["-1", "0", "-1", "2", "-1", "0", "0", "0", "0", "0"]),
            tok(["0", "0", "0", "-1", "2", "-1", "0", "0", "0", "0"]),
            tok(["0", "0", "0", "0", "-1", "2", "-1", "0", "0", "0"]),
            tok(["0", "0", "0", "0", "0", "-1", "2", "-1", "0", "0"]),
            tok(["0", "0", "0", "0", "0", "0", "-1", "2", "-1", "0"]),
            tok(["0", "0", "0", "0", "0", "0", "0", "-1", "2", "-sqrt(2)"]),
            tok(["0", "0", "0", "0", "0", "0", "0", "0", "-sqrt(2)", "2"]),
        ];
        let mut rays_p9 = vec![
            padded(9, 1, &[]),
            padded(9, 1, &[(1, -1)]),
            padded(9, 2, &[(2, -1)]),
        ];
        rays_p9.extend((3..=9).map(|k| padded(9, 3, &[(k, -1)])));
        rays_p9.sort();
        let mut boundary_p9 = vec![padded(9, 1, &[(1, -1)]), padded(9, 3, &[(9, -1)])];
        boundary_p9.sort();

        let mut p9 = chain_with_branch(8, 9, EdgeKind::Multi(2));
        p9.sort();
        let drawn = |path: usize, tail| {
            CoxeterDiagram::from_edges(path + 2, &chain_with_branch(path, path + 1, tail))
        };
        Fixtures {
            cartan_p9,
            rays_p9,
            boundary_p9,
            curve_counts: vec![(3, 6), (4, 10), (5, 16), (6, 27), (7, 56), (8, 240)],
            coxeter_p_minus: vec![10, 11, 13],
            diagram_p9: CoxeterDiagram::from_edges(10, &p9),
            diagrams_p_minus: vec![
                (10, drawn(9, EdgeKind::Dashed)),
                (11, drawn(10, EdgeKind::Multi(3))),
                (13, drawn(12, EdgeKind::Multi(2))),
            ],
            last_angles: vec![
                (10, AngleTag::ZeroAngle),
                (11, AngleTag::PiOver(4)),
                (13, AngleTag::PiOver(3)),
            ],
            region_r: vec![(10, region_rows(10)), (12, region_rows(12))],
        }
    }
}

/// Outcome of one check body: expected, computed, pass.
struct Outcome {
    expected: String,
    computed: String,
    pass: bool,
}

impl Outcome {
    fn compare<T: fmt::Debug + PartialEq>(expected: T, computed: T) -> Self {
        Outcome {
            pass: expected == computed,
            expected: format!("{expected:?}"),
            computed: format!("{computed:?}"),
        }
    }

    fn flag(expected: &str, pass: bool, computed: String) -> Self {
        Outcome {
            expected: expected.to_string(),
            computed,
            pass,
        }
    }
}

type Body<'a> = Box<dyn Fn() -> Result<Outcome> + Send + Sync + 'a>;

struct Entry<'a> {
    name: String,
    anchor: &'static str,
    body: Body<'a>,
}

fn entry<'a>(
    name: impl Into<String>,
    anchor: &'static str,
    body: impl Fn() -> Result<Outcome> + Send + Sync + 'a,
) -> Entry<'a> {
    Entry {
        name: name.into(),
        anchor,
        body: Box::new(body),
    }
}

fn coords(v: &PicClass) -> Vec<i64> {
    v.coords()
        .iter()
        .map(|x| i64::try_from(x).expect("small coordinates"))
        .collect()
}

fn random_class(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> PicClass {
    let v: Vec<i64> = (0..=n).map(|_| rng.gen_range(lo..=hi)).collect();
    PicClass::from_i64(&v).expect("n >= 1")
}

fn random_generator(rng: &mut ChaCha8Rng, n: usize) -> Generator {
    if rng.gen_bool(0.5) {
        return Generator::Sigma(rng.gen_range(1..n));
    }
    loop {
        let (i, j, k) = (
            rng.gen_range(1..=n),
            rng.gen_range(1..=n),
            rng.gen_range(1..=n),
        );
        if let Ok(g) = Generator::phi(i, j, k) {
            return g;
        }
    }
}

fn k_nonpositive(v: &PicClass) -> bool {
    let k = canonical_class(v.n()).expect("n >= 3");
    !v.is_zero() && !pairing_i(v, &k).is_positive()
}

fn pairing_i(u: &PicClass, v: &PicClass) -> BigInt {
    pairing(u, v).expect("same n")
}

struct Sizes {
    tilde_range: RangeInclusive<usize>,
    coxeter_range: RangeInclusive<usize>,
    vertex_range: RangeInclusive<usize>,
    decompose_max_n: usize,
    decompose_max_d: u64,
    group_samples: usize,
    round_trips: usize,
    cross_samples: usize,
}

fn sizes(opts: &VerifyOptions) -> Sizes {
    let mut s = match opts.suite {
        Suite::Quick => Sizes {
            tilde_range: 9..=13,
            coxeter_range: 10..=20,
            vertex_range: 10..=12,
            decompose_max_n: 9,
            decompose_max_d: 6,
            group_samples: 1000,
            round_trips: 100,
            cross_samples: 100,
        },
        Suite::Paper => Sizes {
            tilde_range: 9..=13,
            coxeter_range: 10..=20,
            vertex_range: 10..=14,
            decompose_max_n: 10,
            decompose_max_d: 8,
            group_samples: 10_000,
            round_trips: 1000,
            cross_samples: 1000,
        },
    };
    if let Some(r) = &opts.n_range {
        s.tilde_range = r.clone();
        s.coxeter_range = r.clone();
        s.vertex_range = r.clone();
    }
    s
}

/// Runs a suite against the built-in fixtures.
pub fn run(opts: &VerifyOptions) -> Result<VerificationReport> {
    run_with(opts, &Fixtures::default())
}

/// Runs a suite against `fx`.
pub fn run_with(opts: &VerifyOptions, fx: &Fixtures) -> Result<VerificationReport> {
    if let Some(r) = &opts.n_range {
        if r.is_empty() || *r.start() < 3 {
            return Err(Error::OutOfRange(format!(
                "n-range {}..{} must be nonempty with n >= 3",
                r.start(),
                r.end()
            )));
        }
    }
    let sz = sizes(opts);
    let seed = opts.seed;
    let mut reg: Vec<Entry> = Vec::new();

    reg.push(entry(
        "cartan_p9",
        "Cartan matrix of P_9 has entries 2, 0, -1, -sqrt(2)",
        || {
            let m = cartan_matrix(&build_p(9)?)?;
            let rendered: Vec<Vec<String>> = m
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect();
            Ok(Outcome::compare(fx.cartan_p9.clone(), rendered))
        },
    ));

    let tilde: Vec<usize> = sz.tilde_range.clone().filter(|&n| n >= 9).collect();
    reg.push(entry(
        "cartan_p_tilde",
        "Cartan matrix of P~_n has entries 2, 0, -1 only and P~_n is Coxeter",
        move || {
            let mut bad = Vec::new();
            for &n in &tilde {
                let p = build_p_tilde(n)?;
                let tokens_ok = cartan_matrix(&p)?
                    .iter()
                    .flatten()
                    .all(|e| ["2", "0", "-1"].contains(&e.to_string().as_str()));
                if !tokens_ok || !is_coxeter(&p)?.coxeter {
                    bad.push(n);
                }
            }
            Ok(Outcome::flag(
                &format!("all of {tilde:?}"),
                bad.is_empty(),
                format!("failing n: {bad:?}"),
            ))
        },
    ));

    reg.push(entry(
        "rays_p9",
        "the cone over P_9 has exactly 10 extremal rays",
        || {
            let got: Vec<Vec<i64>> = extremal_rays(&build_p(9)?)?
                .iter()
                .map(|r| coords(&r.generator))
                .collect();
            Ok(Outcome::compare(fx.rays_p9.clone(), got))
        },
    ));

    reg.push(entry(
        "boundary_p9",
        "P_9 has precisely 2 ideal vertices",
        || {
            let got: Vec<Vec<i64>> = boundary_rays(&build_p(9)?)?
                .iter()
                .map(|r| coords(&r.generator))
                .collect();
            Ok(Outcome::compare(fx.boundary_p9.clone(), got))
        },
    ));

    for n in sz.vertex_range.clone().filter(|&n| n >= 10) {
        reg.push(entry(
            format!("vertex_formulas_n{n}"),
            "P^-_n has 9n-71 vertices given by the eight families",
            move || {
                let r = verify_vertex_formulas(n)?;
                Ok(Outcome::flag(
                    &format!("{} rays equal to the family list", r.expected_count),
                    r.ok(),
                    format!(
                        "{} rays; missing from rays {:?}; missing from families {:?}",
                        r.computed_rays.len(),
                        r.missing_from_computed
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>(),
                        r.missing_from_families
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                    ),
                ))
            },
        ));
        reg.push(entry(
            format!("finite_volume_p_minus_n{n}"),
            "P^-_n has finite volume with the same 2 ideal vertices as P_9",
            move || {
                let p = build_p_minus(n)?;
                let b = boundary_rays(&p)?.len();
                let fin = finite_volume(&p)?;
                Ok(Outcome::compare((true, 2), (fin, b)))
            },
        ));
    }

    reg.push(entry(
        "infinite_volume_p10",
        "P_10 has infinite volume",
        || {
            let p = build_p(10)?;
            let outside: Vec<String> = extremal_rays(&p)?
                .iter()
                .filter(|r| r.position.tag == ConeTag::Outside)
                .map(|r| r.generator.to_string())
                .collect();
            let fin = finite_volume(&p)?;
            Ok(Outcome::flag(
                "finite_volume = false, a ray outside the light cone",
                !fin && !outside.is_empty(),
                format!("finite_volume = {fin}, outside rays {outside:?}"),
            ))
        },
    ));

    let cox_range: Vec<usize> = sz.coxeter_range.clone().filter(|&n| n >= 10).collect();
    reg.push(entry(
        "coxeter_p_minus",
        "P^-_n is a Coxeter polytope iff n = 10, 11, 13",
        move || {
            let mut coxeter = Vec::new();
            let mut wrong_cos2 = Vec::new();
            for &n in &cox_range {
                let c = is_coxeter(&build_p_minus(n)?)?;
                if c.coxeter {
                    coxeter.push(n);
                } else {
                    let ok = c.offending.len() == 1
                        && (c.offending[0].i, c.offending[0].j) == (n, n + 1)
                        && c.offending[0].angle.cos2 == q(1, n as i64 - 9);
                    if !ok {
                        wrong_cos2.push(n);
                    }
                }
            }
            let expected: Vec<usize> = fx
                .coxeter_p_minus
                .iter()
                .copied()
                .filter(|n| cox_range.contains(n))
                .collect();
            Ok(Outcome::flag(
                &format!("Coxeter for {expected:?}; otherwise cos2 = 1/(n-9) at (v_n, v_n+1)"),
                coxeter == expected && wrong_cos2.is_empty(),
                format!("Coxeter for {coxeter:?}; unexpected offending pairs for {wrong_cos2:?}"),
            ))
        },
    ));

    reg.push(entry("diagram_p9", "Coxeter diagram of P_9", || {
        let d = coxeter_diagram(&build_p(9)?)?;
        Ok(Outcome::flag(
            &fx.diagram_p9.to_ascii(),
            d.is_isomorphic_to(&fx.diagram_p9),
            d.to_ascii(),
        ))
    }));

    reg.push(entry(
        "angles_p_minus",
        "last angle of P^-_n is 0, pi/4, pi/3 for n = 10, 11, 13",
        || {
            let mut got = Vec::new();
            for &(n, _) in &fx.last_angles {
                let p = build_p_minus(n)?;
                let hs = p.halfspaces();
                got.push((n, classify_angle(&hs[n], &hs[n + 1])?.tag));
            }
            Ok(Outcome::compare(fx.last_angles.clone(), got))
        },
    ));

    if opts.suite == Suite::Paper {
        for (n, drawn) in &fx.diagrams_p_minus {
            let n = *n;
            reg.push(entry(
                format!("diagram_p_minus_n{n}"),
                "Coxeter diagrams of P^-_n as drawn for n = 10, 11, 13",
                move || {
                    let d = coxeter_diagram(&build_p_minus(n)?)?;
                    Ok(Outcome::flag(
                        &drawn.to_ascii(),
                        d.is_isomorphic_to(drawn),
                        d.to_ascii(),
                    ))
                },
            ));
        }
    }

    for (n, rows) in &fx.region_r {
        let n = *n;
        reg.push(entry(
            format!("region_r_n{n}"),
            "vertex table of the region R, f <= 1 with equality only at x_n = 0",
            move || {
                let rep = verify_region_r(n)?;
                let got: Vec<RegionRow> = rows
                    .iter()
                    .map(|r| {
                        let p = rep.point(r.facets);
                        RegionRow {
                            facets: r.facets,
                            point: p.map(|p| p.point.clone()).unwrap_or_else(|| {
                                [q(0, 1), q(0, 1), q(0, 1)]
                            }),
                            is_vertex: p.is_some_and(|p| p.is_vertex),
                            f: p.and_then(|p| p.f.clone()),
                        }
                    })
                    .collect();
                let mismatched: Vec<[usize; 3]> = rows
                    .iter()
                    .zip(&got)
                    .filter(|(a, b)| a != b)
                    .map(|(a, _)| a.facets)
                    .collect();
                Ok(Outcome::flag(
                    "all rows equal, f bounded by 1, f = 1 only on x_n = 0",
                    mismatched.is_empty() && rep.points.len() == rows.len() && rep.ok(),
                    format!(
                        "mismatched rows {mismatched:?}; max f = {}; bounded = {}; strict off face = {}",
                        rep.max_f.as_ref().map_or("none".into(), ToString::to_string),
                        rep.bounded_by_one,
                        rep.strict_off_face
                    ),
                ))
            },
        ));
    }

    reg.push(entry(
        "curve_counts",
        "numbers of (-1)-curves on del Pezzo surfaces, all of degree <= 6",
        || {
            let mut got = Vec::new();
            let mut bad = Vec::new();
            for &(n, _) in &fx.curve_counts {
                let cs = enumerate_minus_one(n, 6)?;
                let k = canonical_class(n)?;
                if types_beyond(n, 6, 6) != 0
                    || cs.iter().any(|c| {
                        c.class().square() != BigInt::from(-1)
                            || pairing_i(c.class(), &k) != BigInt::from(-1)
                    })
                {
                    bad.push(n);
                }
                got.push((n, cs.len()));
            }
            let mut out = Outcome::compare(fx.curve_counts.clone(), got);
            out.pass &= bad.is_empty();
            Ok(out)
        },
    ));

    let (dn, dd) = (sz.decompose_max_n, sz.decompose_max_d);
    reg.push(entry(
        "decomposition",
        "a (-1)-class of degree d is the sum of d-1 cubic inequalities and 1 conic",
        move || {
            let per_n: Vec<Result<(usize, Vec<String>)>> = (3..=dn)
                .into_par_iter()
                .map(|n| {
                    let mut total = 0;
                    let mut bad = Vec::new();
                    for c in enumerate_minus_one(n, dd)? {
                        if c.degree().is_zero() {
                            continue;
                        }
                        total += 1;
                        let dec = decompose_inequality(&c)?;
                        if BigInt::from(dec.cubics.len() + 1) != *c.degree()
                            || dec.sum() != *c.class()
                        {
                            bad.push(c.class().to_string());
                        }
                    }
                    Ok((total, bad))
                })
                .collect();
            let mut total = 0;
            let mut bad = Vec::new();
            for r in per_n {
                let (t, b) = r?;
                total += t;
                bad.extend(b);
            }
            Ok(Outcome::flag(
                &format!("every class with n <= {dn}, 1 <= d <= {dd} splits"),
                bad.is_empty(),
                format!("{total} classes, failures {bad:?}"),
            ))
        },
    ));

    let group_samples = sz.group_samples;
    reg.push(entry(
        "group_action",
        "generators are involutive isometries fixing K; phi134 phi234 phi134 = sigma_1",
        move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x11);
            let sigma = WeylWord(vec![
                Generator::Phi(1, 3, 4),
                Generator::Phi(2, 3, 4),
                Generator::Phi(1, 3, 4),
            ]);
            let ns = [9usize, 10, 13];
            let mut failures = Vec::new();
            for t in 0..group_samples {
                let n = ns[t % 3];
                let k = canonical_class(n)?;
                let u = random_class(&mut rng, n, -50, 50);
                let v = random_class(&mut rng, n, -50, 50);
                let g = random_generator(&mut rng, n);
                let gu = apply_generator(g, &u)?;
                let ok = pairing_i(&gu, &apply_generator(g, &v)?) == pairing_i(&u, &v)
                    && apply_generator(g, &gu)? == u
                    && apply_generator(g, &k)? == k
                    && apply_word(&sigma, &u)? == apply_generator(Generator::Sigma(1), &u)?;
                if !ok {
                    failures.push(format!("{g} on {u}"));
                }
            }
            Ok(Outcome::flag(
                &format!("{group_samples} samples hold"),
                failures.is_empty(),
                format!("failures {failures:?}"),
            ))
        },
    ));

    let round_trips = sz.round_trips;
    reg.push(entry(
        "round_trip",
        "reduction returns the unique fundamental-cone representative",
        move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x12);
            let mut failures = Vec::new();
            for (i, n) in [9usize, 12].into_iter().enumerate() {
                let cone = crate::nef::fundamental_cone(n)?;
                let rays: Vec<PicClass> = extremal_rays(&cone)?
                    .into_iter()
                    .map(|r| r.generator)
                    .collect();
                let count = round_trips / 2 + (i * (round_trips % 2));
                for _ in 0..count {
                    let mut v = PicClass::zero(n);
                    for r in &rays {
                        v = v.checked_add(&r.scale(&BigInt::from(rng.gen_range(1..=4))))?;
                    }
                    let len = rng.gen_range(0..=30);
                    let w: WeylWord = (0..len).map(|_| random_generator(&mut rng, n)).collect();
                    let u = apply_word(&w, &v)?;
                    let r = reduce(&u)?;
                    if !(r.is_in_cone() && r.reduced == v && apply_word(&r.witness, &u)? == v) {
                        failures.push(format!("{u}"));
                    }
                }
            }
            let mut found = 0;
            let mut draws = 0;
            while found < round_trips && draws < 100 * round_trips {
                draws += 1;
                let n = if draws % 2 == 0 { 9 } else { 12 };
                let v = random_class(&mut rng, n, -10, 10);
                if !k_nonpositive(&v) {
                    continue;
                }
                let r = reduce(&v)?;
                let Some(viol) = r.violation() else { continue };
                found += 1;
                if !(pairing_i(&v, &viol.curve).is_negative() && is_minus_one_class(&viol.curve)) {
                    failures.push(format!("witness {} for {v}", viol.curve));
                }
            }
            Ok(Outcome::flag(
                &format!(
                    "{round_trips} interior points recovered, {round_trips} not-nef witnesses fail"
                ),
                failures.is_empty() && found == round_trips,
                format!("{found} witnesses checked; failures {failures:?}"),
            ))
        },
    ));

    let cross = sz.cross_samples;
    reg.push(entry(
        "cross_method",
        "reduction and the curve check up to degree 8 agree",
        move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x13);
            let ns = [9usize, 10, 12];
            let mut samples = Vec::new();
            for (lo0, lo) in [(-10, -10), (0, -10)] {
                let hi = if lo0 == 0 { 0 } else { 10 };
                let mut done = 0;
                while done < cross {
                    let n = ns[done % 3];
                    let mut v = random_class(&mut rng, n, lo, hi);
                    v.coords_mut()[0] = BigInt::from(rng.gen_range(lo0..=10));
                    if k_nonpositive(&v) {
                        samples.push(v);
                        done += 1;
                    }
                }
            }
            let results: Vec<Result<(bool, Option<String>)>> = samples
                .par_iter()
                .map(|v| {
                    let a = is_nef_k_nonpositive(v)?;
                    let b = curve_check(v, 8)?;
                    let witness_ok = match &a.witness {
                        NefWitness::Curve(c) => pairing_i(v, c).is_negative(),
                        _ => true,
                    };
                    let bad = (a.is_nef() != b.is_nef() || !witness_ok).then(|| v.to_string());
                    Ok((a.is_nef(), bad))
                })
                .collect();
            let mut nef = 0;
            let mut bad = Vec::new();
            for r in results {
                let (is_nef, b) = r?;
                nef += usize::from(is_nef);
                bad.extend(b);
            }
            Ok(Outcome::flag(
                &format!("{} classes agree", samples.len()),
                bad.is_empty(),
                format!(
                    "{nef} nef, {} not nef; disagreements {bad:?}",
                    samples.len() - nef
                ),
            ))
        },
    ));

    let checks: Vec<Check> = reg
        .par_iter()
        .map(|e| match (e.body)() {
            Ok(o) => Check {
                name: e.name.clone(),
                status: if o.pass { Status::Pass } else { Status::Fail },
                expected: o.expected,
                computed: o.computed,
                anchor: e.anchor.to_string(),
            },
            Err(err) => Check {
                name: e.name.clone(),
                status: Status::Fail,
                expected: "no error".into(),
                computed: format!("error: {err}"),
                anchor: e.anchor.to_string(),
            },
        })
        .collect();
    Ok(VerificationReport {
        suite: opts.suite,
        seed,
        checks,
    })
}
