//! Named identities checked over parameter grids.
//!
//! Exact identities compare [`IndexCombination`]s with rational coefficients.
//! Numeric identities build the left side minus the right side as one
//! combination, evaluate every distinct ζ in it at `cfg.tol`, and compare the
//! residual against `cfg.tol × (distinct ζ count) × 4`.
//!
//! Grid points are processed in parallel; the report lists them in grid
//! order regardless of scheduling.

mod registry;
mod report;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::Instant;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::index::{admissible_indices, hast, sha, star_single, Index, IndexCombination};
use crate::mzv::{EvalConfig, Evaluator};
use crate::ohno::{self, ProofQuantityParams};

pub use registry::{find_identity, list_identities, DefaultValues, IdentityKind, IdentitySpec, Param};
pub use report::{report_to_file, PointResult, ReportError, ReportFormat, VerificationReport};

/// Safety factor in the numeric pass threshold.
pub const THRESHOLD_FACTOR: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("unknown identity {0:?}; run `list` for the registry")]
    UnknownIdentity(String),
    #[error("identity {identity} has no parameter {param}")]
    UnusedParameter { identity: String, param: &'static str },
    #[error("the grid for {0} has no points")]
    EmptyGrid(String),
}

/// Values per parameter; parameters left out take the identity's defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Grid {
    values: BTreeMap<Param, Vec<u32>>,
}

impl Grid {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, param: Param, values: impl IntoIterator<Item = u32>) -> Self {
        self.set(param, values);
        self
    }

    pub fn set(&mut self, param: Param, values: impl IntoIterator<Item = u32>) {
        let mut v: Vec<u32> = values.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        self.values.insert(param, v);
    }

    pub fn get(&self, param: Param) -> Option<&[u32]> {
        self.values.get(&param).map(Vec::as_slice)
    }
}

fn describe_values(values: &[u32]) -> String {
    match values {
        [] => "none".into(),
        [one] => one.to_string(),
        [first, .., last] if (*last - *first) as usize + 1 == values.len() => format!("{first}..{last}"),
        _ => values.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
    }
}

/// One grid point with the optional sub-identity being checked.
#[derive(Debug, Clone, Default, PartialEq)]
struct Point {
    s: Option<u32>,
    t: Option<u32>,
    l: Option<u32>,
    m: Option<u32>,
    p: Option<u32>,
    q: Option<u32>,
    k: Option<Index>,
    part: Option<&'static str>,
}

impl Point {
    fn params(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (name, v) in [
            ("s", self.s),
            ("t", self.t),
            ("l", self.l),
            ("m", self.m),
            ("p", self.p),
            ("q", self.q),
        ] {
            if let Some(v) = v {
                out.push((name.to_string(), v.to_string()));
            }
        }
        if let Some(k) = &self.k {
            let entries = k.entries().iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            out.push(("k".into(), entries));
        }
        if let Some(part) = self.part {
            out.push(("part".into(), part.into()));
        }
        out
    }

    fn set(&mut self, param: Param, v: u32) {
        match param {
            Param::S => self.s = Some(v),
            Param::T => self.t = Some(v),
            Param::L => self.l = Some(v),
            Param::M => self.m = Some(v),
            Param::P => self.p = Some(v),
            Param::Q => self.q = Some(v),
            Param::Weight => unreachable!("weights expand into indices"),
        }
    }

    // Accessors for parameters every point of a given identity carries.
    fn s(&self) -> u32 {
        self.s.expect("s in grid")
    }
    fn t(&self) -> u32 {
        self.t.expect("t in grid")
    }
    fn l(&self) -> u32 {
        self.l.expect("l in grid")
    }
    fn m(&self) -> u32 {
        self.m.expect("m in grid")
    }
    fn pq(&self) -> ProofQuantityParams {
        ProofQuantityParams {
            s: self.s(),
            l: self.l(),
            m: self.m(),
            p: self.p.expect("p in grid"),
            q: self.q.expect("q in grid"),
        }
    }
}

fn parts_for(name: &str, point: &Point) -> Vec<Option<&'static str>> {
    match name {
        "lemma_fmpre2" => vec![Some("K"), Some("K_dual")],
        "sha_expansion_oooo" => vec![Some("sha"), Some("hast"), Some("regrouped")],
        "hast_symmetry" => vec![Some("s_side"), Some("t_side")],
        "add2" if point.p.is_some() && point.p == point.q => {
            vec![Some("ij"), Some("g1"), Some("g2"), Some("g3")]
        }
        "add2" => vec![Some("ij")],
        "abc_decomposition" => {
            let mut parts = vec![
                Some("abc_numeric"),
                Some("c_closed_form"),
                Some("a_shifted_sums"),
                Some("b_shifted_sums"),
                Some("b_positions"),
            ];
            if point.l.is_some_and(|l| l >= 1) {
                parts.extend([
                    Some("a_g_sum"),
                    Some("a_composition_form"),
                    Some("bc_i_sum"),
                    Some("bc_composition_form"),
                ]);
            }
            parts
        }
        _ => vec![None],
    }
}

fn expand_points(spec: &IdentitySpec, grid: &Grid) -> Result<(Vec<Point>, String), VerifyError> {
    for param in grid.values.keys() {
        if !spec.params.iter().any(|(p, _)| p == param) {
            return Err(VerifyError::UnusedParameter {
                identity: spec.name.into(),
                param: param.name(),
            });
        }
    }
    let mut points = vec![Point::default()];
    let mut description = Vec::new();
    for &(param, default) in spec.params {
        let given = grid.get(param);
        let values: Option<Vec<u32>> = match (given, default) {
            (Some(v), _) => Some(v.to_vec()),
            (None, DefaultValues::Span(a, b)) => Some((a..=b).collect()),
            (None, DefaultValues::Positions) => None,
        };
        description.push(format!(
            "{}={}",
            param.name(),
            values.as_deref().map_or_else(|| "1..l+1".to_string(), describe_values)
        ));
        let mut next = Vec::new();
        for point in &points {
            let vals = match &values {
                Some(v) => v.clone(),
                None => (1..=point.l.unwrap_or(0) + 1).collect(),
            };
            if param == Param::Weight {
                for w in vals {
                    for k in admissible_indices(w) {
                        next.push(Point {
                            k: Some(k),
                            ..point.clone()
                        });
                    }
                }
            } else {
                for v in vals {
                    let mut p = point.clone();
                    p.set(param, v);
                    next.push(p);
                }
            }
        }
        points = next;
    }
    let points: Vec<Point> = points
        .into_iter()
        .flat_map(|p| {
            parts_for(spec.name, &p)
                .into_iter()
                .map(move |part| Point { part, ..p.clone() })
        })
        .collect();
    if points.is_empty() {
        return Err(VerifyError::EmptyGrid(spec.name.into()));
    }
    Ok((points, description.join(";")))
}

/// Reason a point lies outside the identity's hypotheses.
fn refusal(name: &str, p: &Point) -> Option<String> {
    let need = |label: &str, v: Option<u32>, min: u32| -> Option<String> {
        match v {
            Some(v) if v < min => Some(format!("{label} = {v} but the identity needs {label} ≥ {min}")),
            _ => None,
        }
    };
    let checks: Vec<Option<String>> = match name {
        "stuffle_single" => vec![need("s", p.s, 2)],
        "hmos" | "main" => vec![need("s", p.s, 2), need("t", p.t, 2)],
        "lemma_fmpre1" => vec![need("s", p.s, 2), need("t", p.t, 1)],
        "lemma_fmpre2" => vec![need("s", p.s, 1), need("t", p.t, 1), need("m", p.m, 1)],
        "lemma_fm" => vec![need("s", p.s, 3), need("t", p.t, 1), need("m", p.m, 1)],
        "lemma_oooo" => vec![need("s", p.s, 3), need("t", p.t, 3)],
        "lemma_dddd" => vec![need("s", p.s, 3), need("t", p.t, 3), need("m", p.m, 1)],
        "sha_expansion_oooo" => vec![need("s", p.s, 2), need("t", p.t, 2), need("l", p.l, 1)],
        "hast_symmetry" => vec![need("s", p.s, 2), need("t", p.t, 2)],
        "add1" | "add2" => {
            let mut v = vec![need("s", p.s, 2), need("l", p.l, 1)];
            let top = p.l.unwrap_or(0) + 1;
            for (label, x) in [("p", p.p), ("q", p.q)] {
                if let Some(x) = x {
                    if x < 1 || x > top {
                        v.push(Some(format!("{label} = {x} outside 1..={top}")));
                    }
                }
            }
            v
        }
        "abc_decomposition" => vec![need("s", p.s, 2)],
        _ => vec![],
    };
    checks.into_iter().flatten().next()
}

enum Outcome {
    Numeric {
        residual: f64,
        distinct: usize,
        components: Vec<f64>,
    },
    Exact {
        equal: bool,
    },
}

struct Numeric<'a> {
    ev: &'a Evaluator,
    cfg: &'a EvalConfig,
}

impl Numeric<'_> {
    /// `Σ c ζ(k)` with every ζ at `cfg.tol`, and the indices evaluated.
    fn value(&self, c: &IndexCombination) -> Result<(f64, BTreeSet<Index>), String> {
        let terms: Vec<(&Index, f64)> = c
            .iter()
            .map(|(k, coef)| (k, coef.to_f64().unwrap_or(f64::NAN)))
            .collect();
        let values = terms
            .par_iter()
            .map(|(k, _)| self.ev.zeta(k, self.cfg))
            .collect::<Result<Vec<f64>, _>>()
            .map_err(|e| e.to_string())?;
        let mut sum = Compensated::default();
        for ((_, coef), v) in terms.iter().zip(values) {
            sum.add(coef * v);
        }
        Ok((sum.value(), c.indices().cloned().collect()))
    }

    fn residual(&self, c: &IndexCombination) -> Result<Outcome, String> {
        let (residual, used) = self.value(c)?;
        Ok(Outcome::Numeric {
            residual,
            distinct: used.len(),
            components: Vec::new(),
        })
    }
}

#[derive(Default)]
struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        self.comp += if self.sum.abs() >= x.abs() {
            (self.sum - t) + x
        } else {
            (x - t) + self.sum
        };
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

fn exact(lhs: IndexCombination, rhs: IndexCombination) -> Outcome {
    Outcome::Exact { equal: lhs == rhs }
}

fn single(k: u32) -> IndexCombination {
    IndexCombination::from_index(Index::repeat(k, 1))
}

fn twos(l: u32) -> IndexCombination {
    IndexCombination::from_index(Index::repeat(2, l as usize))
}

fn evaluate(name: &str, p: &Point, num: &Numeric<'_>) -> Result<Outcome, String> {
    let err = |e: ohno::EngineError| e.to_string();
    let alg = |e: crate::index::AlgebraError| e.to_string();
    match name {
        "duality" => {
            let k = p.k.clone().expect("k in grid");
            let dual = k.dual().map_err(alg)?;
            num.residual(&(IndexCombination::from_index(k) - IndexCombination::from_index(dual)))
        }
        "ohno" => {
            let k = p.k.clone().expect("k in grid");
            let dual = IndexCombination::from_index(k.dual().map_err(alg)?);
            let lhs = ohno::ohno_m_symbolic(&IndexCombination::from_index(k), p.m()).map_err(alg)?;
            let rhs = ohno::ohno_m_symbolic(&dual, p.m()).map_err(alg)?;
            num.residual(&(lhs - rhs))
        }
        "stuffle_single" => {
            let k = p.k.clone().expect("k in grid");
            let star = star_single(p.s(), &IndexCombination::from_index(k.clone())).map_err(alg)?;
            let (zs, _) = num.value(&single(p.s()))?;
            let (zk, _) = num.value(&IndexCombination::from_index(k.clone()))?;
            let (rhs, mut used) = num.value(&star)?;
            used.insert(Index::repeat(p.s(), 1));
            used.insert(k);
            Ok(Outcome::Numeric {
                residual: zs * zk - rhs,
                distinct: used.len(),
                components: vec![zs * zk, rhs],
            })
        }
        "hoffman" => num.residual(&ohno::hoffman_combination(p.k.as_ref().expect("k in grid")).map_err(err)?),
        "hmos" => num.residual(&ohno::d_combination(p.s(), p.t(), 0, p.m()).map_err(err)?),
        "main" => num.residual(&ohno::d_combination(p.s(), p.t(), p.l(), p.m()).map_err(err)?),
        "lemma_fmpre1" => num.residual(&ohno::fmpre1_difference(p.s(), p.t(), p.l(), p.m()).map_err(err)?),
        "lemma_fmpre2" => {
            let dual = p.part == Some("K_dual");
            num.residual(&ohno::fmpre2_difference(p.s(), p.t(), p.l(), p.m(), dual).map_err(err)?)
        }
        "lemma_fm" => num.residual(&ohno::fm_difference(p.s(), p.t(), p.l(), p.m()).map_err(err)?),
        "lemma_oooo" => num.residual(&ohno::oooo_difference(p.s(), p.t(), p.l(), p.m()).map_err(err)?),
        "lemma_dddd" => {
            let (s, t, l, m) = (p.s(), p.t(), p.l(), p.m());
            let mut used = BTreeSet::new();
            let mut components = Vec::new();
            for (a, b, order) in [(s, t, m - 1), (s - 1, t, m), (s, t - 1, m)] {
                let (v, u) = num.value(&ohno::d_combination(a, b, l, order).map_err(err)?)?;
                used.extend(u);
                components.push(v);
            }
            Ok(Outcome::Numeric {
                residual: components[0] - components[1] - components[2],
                distinct: used.len(),
                components,
            })
        }
        "sha_expansion_oooo" => {
            let (s, t, l) = (p.s(), p.t(), p.l());
            let sha_side = sha(&single(s), &sha(&single(t), &twos(l)).dual_linear().map_err(alg)?);
            let hast_side = hast(s - 1, &ohno::k_plus_one(t, l).dual_linear().map_err(alg)?).map_err(alg)?;
            Ok(match p.part {
                Some("sha") => exact(sha_side, ohno::sha_dual_expansion(s, t, l).map_err(err)?),
                Some("hast") => exact(hast_side, ohno::hast_dual_expansion(s, t, l).map_err(err)?),
                _ => exact(sha_side - hast_side, ohno::oooo_regrouped(s, t, l).map_err(err)?),
            })
        }
        "hast_symmetry" => {
            let (s, t, l) = (p.s(), p.t(), p.l());
            let (a, b) = if p.part == Some("t_side") { (t, s) } else { (s, t) };
            let lhs = hast(a - 1, &ohno::k_plus_one(b, l)).map_err(alg)?;
            Ok(exact(lhs, ohno::hast_symmetric_form(s, t, l)))
        }
        "add1" => {
            let x = p.pq();
            Ok(exact(ohno::g_pq(&x).map_err(err)?, ohno::h_pq(&x).map_err(err)?))
        }
        "add2" => {
            let x = p.pq();
            let (lhs, rhs) = match p.part {
                Some("g1") => (ohno::g1_lhs(&x), ohno::g1_rhs(&x)),
                Some("g2") => (ohno::g2_lhs(&x), ohno::g2_rhs(&x)),
                Some("g3") => (ohno::g3_lhs(&x), ohno::g3_rhs(&x)),
                _ => (ohno::i_pq(&x), ohno::j_pq(&x)),
            };
            Ok(exact(lhs.map_err(err)?, rhs.map_err(err)?))
        }
        "abc_decomposition" => abc_part(p, num),
        other => Err(format!("no evaluator registered for {other}")),
    }
}

fn abc_part(p: &Point, num: &Numeric<'_>) -> Result<Outcome, String> {
    let err = |e: ohno::EngineError| e.to_string();
    let alg = |e: crate::index::AlgebraError| e.to_string();
    let (s, l, m) = (p.s(), p.l(), p.m());
    let expand = |t: ohno::OhnoTerms| t.expand().map_err(alg);
    match p.part.expect("abc parts") {
        "abc_numeric" => {
            let mut c = ohno::f_combination(s, &Index::repeat(3, 1), l, m).map_err(err)?;
            c -= ohno::f_combination(2, &Index::repeat(s + 1, 1), l, m).map_err(err)?;
            c -= ohno::a_definition(s, l, m).map_err(err)?;
            c -= ohno::quantity_b(s, l, m).map_err(err)?;
            c -= expand(ohno::quantity_c(s, l, m).map_err(err)?)?;
            num.residual(&c)
        }
        "c_closed_form" => {
            let closed = expand(ohno::quantity_c(s, l, m).map_err(err)?)?;
            num.residual(&(ohno::c_definition(s, l, m).map_err(err)? - closed))
        }
        "a_shifted_sums" => Ok(exact(
            expand(ohno::quantity_a(s, l, m).map_err(err)?)?,
            ohno::a_definition(s, l, m).map_err(err)?,
        )),
        "b_shifted_sums" => Ok(exact(
            expand(ohno::b_grouped(s, l, m).map_err(err)?)?,
            ohno::quantity_b(s, l, m).map_err(err)?,
        )),
        "b_positions" => Ok(exact(
            expand(ohno::b_by_positions(s, l, m).map_err(err)?)?,
            ohno::quantity_b(s, l, m).map_err(err)?,
        )),
        "a_g_sum" => Ok(exact(
            -ohno::sum_over_pq(s, l, m, ohno::g_pq).map_err(err)?,
            expand(ohno::quantity_a(s, l, m).map_err(err)?)?,
        )),
        "a_composition_form" => Ok(exact(
            -ohno::sum_over_pq(s, l, m, ohno::h_pq).map_err(err)?,
            ohno::a_composition_form(s, l, m).map_err(err)?,
        )),
        "bc_i_sum" => Ok(exact(
            ohno::sum_over_pq(s, l, m, ohno::i_pq).map_err(err)?,
            expand(ohno::bc_grouped(s, l, m).map_err(err)?)?,
        )),
        "bc_composition_form" => Ok(exact(
            ohno::sum_over_pq(s, l, m, ohno::j_pq).map_err(err)?,
            ohno::bc_composition_form(s, l, m).map_err(err)?,
        )),
        other => Err(format!("unknown part {other}")),
    }
}

fn run_point(spec: &IdentitySpec, point: &Point, num: &Numeric<'_>) -> PointResult {
    let start = Instant::now();
    let mut result = PointResult {
        params: point.params(),
        ..PointResult::default()
    };
    if let Some(reason) = refusal(spec.name, point) {
        result.refused = Some(reason);
    } else {
        match evaluate(spec.name, point, num) {
            Ok(Outcome::Numeric {
                residual,
                distinct,
                components,
            }) => {
                let threshold = num.cfg.tol * distinct.max(1) as f64 * THRESHOLD_FACTOR;
                result.residual = Some(residual);
                result.threshold = Some(threshold);
                result.evals = distinct;
                result.components = components;
                result.pass = residual.abs() <= threshold;
            }
            Ok(Outcome::Exact { equal }) => {
                result.equal = Some(equal);
                result.pass = equal;
            }
            Err(e) => result.error = Some(e),
        }
    }
    result.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    result
}

/// Runs one identity over a grid.
pub fn verify(name: &str, grid: &Grid, ev: &Evaluator, cfg: &EvalConfig) -> Result<VerificationReport, VerifyError> {
    let spec = find_identity(name).ok_or_else(|| VerifyError::UnknownIdentity(name.into()))?;
    let (points, grid_text) = expand_points(spec, grid)?;
    let start = Instant::now();
    let num = Numeric { ev, cfg };
    let results: Vec<PointResult> = points.par_iter().map(|p| run_point(spec, p, &num)).collect();
    let max_residual = results
        .iter()
        .filter_map(|r| r.residual)
        .map(f64::abs)
        .fold(0.0, f64::max);
    Ok(VerificationReport {
        identity: spec.name.into(),
        kind: spec.kind,
        grid: grid_text,
        tol: match spec.kind {
            IdentityKind::Exact => 0.0,
            IdentityKind::Numeric => cfg.tol,
        },
        pass: results.iter().all(|r| r.pass),
        max_residual,
        evals: results.iter().map(|r| r.evals).sum(),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        points: results,
    })
}

/// One line per registered identity: name, kind, statement.
pub fn registry_listing() -> String {
    let mut out = String::new();
    for spec in list_identities() {
        writeln!(out, "{:<20} {:<15} {}", spec.name, spec.kind.as_str(), spec.statement).expect("string write");
    }
    out
}
