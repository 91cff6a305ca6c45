//! JSON and CSV reports for the command-line front end.
//!
//! Rationals are rendered as `"p/q"` strings (integers as `"p"`) unless a
//! float precision is requested; complex numbers are `[re, im]` pairs.
//! Every report is a pure function of its inputs, so a fixed seed gives
//! byte-identical output.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::counting::{verify_total, CountError};
use crate::cs::{apply_hamiltonian, hc_series, CsError, MultiplicitySet};
use crate::elliptic::{gauge_exponents, gauge_factor, selftest, EllipticError, LemniscaticLattice};
use crate::exact::{fmt_q, q, q_to_f64, qint, Q, QI};
use crate::gaudin::{affine_fit, GaudinError, SitePositions, SiteSystem};
use crate::lie::{builtin_algebra, AlgebraName, LieError};
use crate::matrix::Matrix;
use crate::trees::{channel_count, enumerate_channels, ChannelTree, TreeError};
use crate::vertex::{
    build_h, build_rep, char_poly, spectrum, spectrum_is_real, star_condition, VertexError, VertexParams,
};
use crate::wpoly::WPolynomial;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReportError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("{stage}: {message}")]
    Math { stage: String, message: String, detail: Option<Value> },
}

impl ReportError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ReportError::Validation(_) => 2,
            ReportError::Math { .. } => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ReportError::Validation(m) => json!({"error": {"kind": "validation", "message": m}}),
            ReportError::Math { stage, message, detail } => {
                let mut err = json!({"kind": "math", "stage": stage, "message": message});
                if let Some(d) = detail {
                    err["detail"] = d.clone();
                }
                json!({ "error": err })
            }
        }
    }

    fn math(stage: &str, message: impl ToString) -> Self {
        ReportError::Math { stage: stage.into(), message: message.to_string(), detail: None }
    }
}

impl From<TreeError> for ReportError {
    fn from(e: TreeError) -> Self {
        ReportError::Validation(e.to_string())
    }
}

impl From<LieError> for ReportError {
    fn from(e: LieError) -> Self {
        ReportError::Validation(e.to_string())
    }
}

fn count_error(e: CountError) -> ReportError {
    match e {
        CountError::Tree(t) => t.into(),
        CountError::EvenDimension(_) | CountError::BadDimension(_) | CountError::TooFewPoints(_) => {
            ReportError::Validation(e.to_string())
        }
        other => ReportError::math("counting", other),
    }
}

fn gaudin_error(e: GaudinError) -> ReportError {
    match e {
        GaudinError::Lie(l) => l.into(),
        GaudinError::Tree(t) => t.into(),
        GaudinError::TooLarge(_) | GaudinError::SiteCount { .. } => ReportError::Validation(e.to_string()),
        other => ReportError::math("gaudin", other),
    }
}

fn vertex_error(e: VertexError) -> ReportError {
    match e {
        VertexError::BadNu { .. } | VertexError::LengthOverflow { .. } => ReportError::Validation(e.to_string()),
        other => ReportError::math("vertex", other),
    }
}

fn elliptic_error(e: EllipticError) -> ReportError {
    match e {
        EllipticError::Vertex(v) => vertex_error(v),
        other => ReportError::math("elliptic", other),
    }
}

/// Number rendering policy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Render {
    /// Render rationals as decimals with this many significant digits.
    pub float_digits: Option<usize>,
}

const DEFAULT_FLOAT_DIGITS: usize = 12;

fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x).parse().unwrap_or(x)
}

impl Render {
    pub fn q(&self, v: &Q) -> Value {
        match self.float_digits {
            Some(k) => json!(round_sig(q_to_f64(v), k)),
            None => json!(fmt_q(v)),
        }
    }

    pub fn qi(&self, v: &QI) -> Value {
        match self.float_digits {
            Some(_) => self.complex(v.to_complex()),
            None => json!(v.to_string()),
        }
    }

    pub fn float(&self, x: f64) -> Value {
        json!(round_sig(x, self.float_digits.unwrap_or(DEFAULT_FLOAT_DIGITS)))
    }

    pub fn complex(&self, z: Complex64) -> Value {
        json!([self.float(z.re), self.float(z.im)])
    }

    fn poly(&self, p: &WPolynomial) -> Value {
        Value::Array(p.terms().map(|(e, c)| json!([e, self.q(c)])).collect())
    }
}

/// All channels on `n` fields, by Newick text.
pub fn channels_report(n: usize) -> Result<Value, ReportError> {
    let trees = enumerate_channels(n)?;
    Ok(json!({
        "N": n,
        "count": channel_count(n),
        "channels": trees.iter().map(ChannelTree::to_newick).collect::<Vec<_>>(),
    }))
}

pub fn count_report(tree: &ChannelTree, d: usize) -> Result<Value, ReportError> {
    let report = verify_total(tree, d).map_err(count_error)?;
    Ok(serde_json::to_value(report).expect("count report serializes"))
}

/// CSV with one row per channel and dimension.
pub fn count_sweep_csv(n_range: (usize, usize), dims: &[usize]) -> Result<String, ReportError> {
    let (lo, hi) = n_range;
    if lo < 4 || lo > hi {
        return Err(ReportError::Validation(format!("sweep range {lo}..{hi} must satisfy 4 <= Nmin <= Nmax")));
    }
    let mut jobs = Vec::new();
    for n in lo..=hi {
        for (id, tree) in enumerate_channels(n)?.into_iter().enumerate() {
            for &d in dims {
                jobs.push((n, id, d, tree.clone()));
            }
        }
    }
    let rows = jobs
        .par_iter()
        .map(|(n, id, d, tree)| {
            let r = verify_total(tree, *d).map_err(count_error)?;
            Ok(format!("{n},{id},{d},{},{},{},{}", r.n_cr, r.sum_cas, r.sum_vert, r.identity_holds))
        })
        .collect::<Result<Vec<String>, ReportError>>()?;
    let mut out = String::from("N,channel_id,d,n_cr,sum_cas,sum_vert,identity\n");
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    Ok(out)
}

/// Inputs of a Gaudin verification run.
#[derive(Clone, Debug)]
pub struct GaudinOptions {
    pub algebra: AlgebraName,
    /// One label per site, or a single label used for every site.
    pub sites: Vec<String>,
    pub tree: Option<ChannelTree>,
    /// ϖ-exponent window whose nonzero orders are listed per vertex.
    pub orders: (i32, i32),
    /// Spectral parameters for the commutator checks.
    pub sample_w: Vec<Q>,
}

impl Default for GaudinOptions {
    fn default() -> Self {
        Self {
            algebra: AlgebraName::Sl2,
            sites: vec!["1/2".into(); 3],
            tree: None,
            orders: (0, 2),
            sample_w: vec![q(5, 2), q(7, 2)],
        }
    }
}

fn eval_poly(p: &WPolynomial, x: &Q) -> Q {
    p.terms().fold(Q::zero(), |acc, (e, c)| acc + c * pow_i(x, e))
}

fn pow_i(x: &Q, e: i32) -> Q {
    let mut out = Q::one();
    for _ in 0..e.unsigned_abs() {
        out *= x;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

/// Site positions `f_i(ϖ₀)` at the first `ϖ₀ ∈ {1/3, 1/5, …}` making them
/// pairwise distinct.
fn regular_positions(tree: &ChannelTree) -> Result<Vec<Q>, ReportError> {
    for den in (3..40).step_by(2) {
        let x = Q::new(1.into(), den.into());
        let pos = (1..=tree.n() as u32)
            .map(|i| Ok(eval_poly(&tree.f_poly(i)?, &x)))
            .collect::<Result<Vec<Q>, TreeError>>()?;
        let mut sorted = pos.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() == pos.len() {
            return Ok(pos);
        }
    }
    Err(ReportError::math("gaudin", "no regular evaluation point for the site polynomials"))
}

fn commutator_entry(label: String, a: &Matrix<Q>, b: &Matrix<Q>) -> (String, bool) {
    (label, a.commutes_with(b))
}

fn checks_json(checks: &[(String, bool)]) -> Value {
    Value::Array(checks.iter().map(|(p, ok)| json!({"pair": p, "residual_is_zero": ok})).collect())
}

/// Exact commutator checks for `H₂` at fixed positions and, given a
/// channel, for its limit family and edge Casimirs.
pub fn gaudin_verify(opts: &GaudinOptions, render: Render) -> Result<Value, ReportError> {
    let algebra = builtin_algebra(opts.algebra);
    let n_sites = opts.tree.as_ref().map_or(opts.sites.len(), ChannelTree::n);
    let labels: Vec<&str> = match opts.sites.len() {
        1 => vec![opts.sites[0].as_str(); n_sites],
        k if k == n_sites => opts.sites.iter().map(String::as_str).collect(),
        k => return Err(ReportError::Validation(format!("{k} site labels given for {n_sites} sites"))),
    };
    if n_sites == 0 {
        return Err(ReportError::Validation("no sites given".into()));
    }
    let positions = match &opts.tree {
        Some(t) => regular_positions(t)?,
        None => (0..n_sites as i64).map(qint).collect(),
    };
    let fixed = SiteSystem::from_labels(algebra, &labels, SitePositions::Fixed(positions.clone()))
        .map_err(gaudin_error)?;
    let sample_w: Vec<Q> = opts.sample_w.iter().filter(|w| !positions.contains(w)).cloned().collect();
    if sample_w.len() < 2 {
        return Err(ReportError::Validation("need two spectral parameters away from the sites".into()));
    }

    let hams = sample_w
        .par_iter()
        .map(|w| fixed.quadratic_hamiltonian(w).map_err(gaudin_error))
        .collect::<Result<Vec<_>, _>>()?;
    let mut jobs: Vec<(String, usize, Matrix<Q>)> = Vec::new();
    for a in 0..fixed.algebra().dim() {
        let name = &fixed.algebra().generator_names[a];
        for (k, w) in sample_w.iter().enumerate() {
            jobs.push((format!("diag({name}),H2({})", fmt_q(w)), k, fixed.diagonal_generator(a)));
        }
    }
    for a in 0..sample_w.len() {
        for b in a + 1..sample_w.len() {
            let label = format!("H2({}),H2({})", fmt_q(&sample_w[a]), fmt_q(&sample_w[b]));
            jobs.push((label, b, hams[a].clone()));
        }
    }
    let mut checks: Vec<(String, bool)> =
        jobs.par_iter().map(|(label, k, m)| commutator_entry(label.clone(), m, &hams[*k])).collect();

    let mut report = Map::new();
    report.insert("algebra".into(), json!(opts.algebra.to_string()));
    report.insert("sites".into(), json!(labels));
    report.insert("positions".into(), Value::Array(positions.iter().map(|p| render.q(p)).collect()));
    report.insert("sample_w".into(), Value::Array(sample_w.iter().map(|w| render.q(w)).collect()));

    let mut limit_orders = Vec::new();
    let mut casimir_matches = Vec::new();
    if let Some(tree) = &opts.tree {
        let channel = fixed.with_positions(SitePositions::Channel(tree.clone())).map_err(gaudin_error)?;
        let (lo, hi) = opts.orders;
        let mut ops: Vec<(String, Matrix<Q>)> = Vec::new();
        for v in tree.vertices() {
            let label = tree.vertex_label(v);
            let poles = channel.limit_poles(v).map_err(gaudin_error)?;
            let ws: Vec<&Q> = sample_w.iter().filter(|w| !poles.iter().any(|p| p.as_ref() == Some(*w))).collect();
            let Some(w0) = ws.first() else {
                return Err(ReportError::math("gaudin", format!("every sample w is a limit pole at {label}")));
            };
            let series = channel.hamiltonian_series(v, w0, hi.max(0) + 1).map_err(gaudin_error)?;
            let leading = series.order();
            let nonzero: Vec<i32> = series.terms().map(|(e, _)| e).filter(|e| (lo..=hi).contains(e)).collect();
            limit_orders.push(json!({"vertex": label, "w": render.q(w0), "leading_order": leading, "nonzero_orders": nonzero}));
            for w in ws {
                ops.push((format!("H[{label}]({})", fmt_q(w)), channel.ope_limit(v, w).map_err(gaudin_error)?));
            }
        }
        for e in tree.internal_edges() {
            let label = tree.vertex_label(e);
            let cas = channel.edge_casimir(e).map_err(gaudin_error)?;
            let leaves = tree.leaves_below(e)?;
            let fit = affine_fit(&cas, &channel.partial_casimir(&leaves));
            casimir_matches.push(json!({
                "edge": label,
                "leaves": leaves,
                "scalar": render.q(&fit.scale),
                "shift": render.q(&fit.shift),
                "exact": fit.exact,
            }));
            ops.push((format!("C[{label}]"), cas));
        }
        let pairs: Vec<(usize, usize)> =
            (0..ops.len()).flat_map(|a| (a + 1..ops.len()).map(move |b| (a, b))).collect();
        let limit_checks: Vec<(String, bool)> = pairs
            .par_iter()
            .map(|&(a, b)| commutator_entry(format!("{},{}", ops[a].0, ops[b].0), &ops[a].1, &ops[b].1))
            .collect();
        checks.extend(limit_checks);
        report.insert("tree".into(), json!(tree.to_newick()));
    }
    let all_exact = checks.iter().all(|(_, ok)| *ok)
        && casimir_matches.iter().all(|m| m["exact"] == json!(true))
        && limit_orders.iter().all(|o| o["leading_order"].as_i64().is_none_or(|x| x >= 0));
    report.insert("commutator_checks".into(), checks_json(&checks));
    report.insert("limit_orders".into(), Value::Array(limit_orders));
    report.insert("casimir_matches".into(), Value::Array(casimir_matches));
    report.insert("all_exact".into(), json!(all_exact));
    let report = Value::Object(report);
    if !all_exact {
        return Err(ReportError::Math {
            stage: "gaudin".into(),
            message: "an exact identity failed".into(),
            detail: Some(report),
        });
    }
    Ok(report)
}

/// Harish-Chandra series for CFT weights, with its residual re-checked.
pub fn block_series_report(
    weights: [Q; 4],
    d: i64,
    lambda: (Q, Q),
    order: usize,
    render: Render,
) -> Result<Value, ReportError> {
    let k = MultiplicitySet::from_cft(weights, d);
    let s = hc_series(lambda, &k, order).map_err(|e| match e {
        CsError::Resonance(k1, k2) => ReportError::Math {
            stage: "cs-blocks".into(),
            message: e.to_string(),
            detail: Some(json!({"resonant_kappa": [k1, k2]})),
        },
        other => ReportError::math("cs-blocks", other),
    })?;
    let residual = apply_hamiltonian(&s, &k, order)
        .map_err(|e| ReportError::math("cs-blocks", e))?
        .sub_scaled(&s.eigenvalue(), &s);
    if !residual.is_zero() {
        return Err(ReportError::math("cs-blocks", "eigen-residual is not exactly zero"));
    }
    let coeffs: Vec<Value> =
        s.iter().map(|((k1, k2), v)| json!({"kappa": [k1, k2], "value": render.q(v)})).collect();
    Ok(json!({
        "multiplicities": {"k_s": render.q(&k.k_s), "k_m": render.q(&k.k_m), "k_l": render.q(&k.k_l)},
        "couplings": {
            "middle": render.q(&k.middle_coupling()),
            "long": render.q(&k.long_coupling()),
            "short": render.q(&k.short_coupling()),
        },
        "lambda": [render.q(&s.lambda.0), render.q(&s.lambda.1)],
        "order": order,
        "eigenvalue": render.q(&s.eigenvalue()),
        "residual_zero": true,
        "coefficients": coeffs,
    }))
}

/// Algebra relations, `H`, its exact characteristic polynomial and spectrum.
pub fn vertex_report(p: &VertexParams, render: Render) -> Result<Value, ReportError> {
    let alg = p.algebra();
    let rep = build_rep(&alg).map_err(vertex_error)?;
    let relations = rep.check_relations().map_err(vertex_error)?;
    let h = build_h(&rep, &p.coupling()).map_err(vertex_error)?;
    let eig = spectrum(&h);
    let poly = char_poly(&h);
    let report = json!({
        "alpha": render.q(&p.alpha()),
        "nu": p.nu(),
        "gamma": p.gamma().iter().map(|g| render.qi(g)).collect::<Vec<_>>(),
        "nmax": rep.n_max,
        "relations_exact": relations.all(),
        "relations": {
            "[N,A+]=A+": relations.n_adag,
            "[N,A]=-A": relations.n_a,
            "A+A=R(N)": relations.adag_a,
            "AA+=R(N+1)": relations.a_adag,
        },
        "star_condition": star_condition(&alg),
        "char_poly": poly.iter().map(|c| render.qi(c)).collect::<Vec<_>>(),
        "char_poly_real": poly.iter().all(QI::is_real),
        "spectrum": eig.iter().map(|z| render.complex(*z)).collect::<Vec<_>>(),
        "spectrum_real": spectrum_is_real(&eig, 1e-10),
    });
    if !relations.all() {
        return Err(ReportError::Math {
            stage: "vertex".into(),
            message: "algebra relation violated".into(),
            detail: Some(report),
        });
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllipticEval {
    Wp,
    X,
    Theta,
}

pub fn elliptic_eval(
    kind: EllipticEval,
    z: Complex64,
    vertex: Option<&VertexParams>,
    render: Render,
) -> Result<Value, ReportError> {
    let l = LemniscaticLattice::new();
    let mut out = json!({"z": render.complex(z), "g2": render.float(l.g2), "e1": render.float(l.e1)});
    match kind {
        EllipticEval::Wp => {
            let (p, dp) = l.wp_pair(z).map_err(elliptic_error)?;
            out["wp"] = render.complex(p);
            out["wp_prime"] = render.complex(dp);
        }
        EllipticEval::X => out["X"] = render.complex(l.coordinate_map(z).map_err(elliptic_error)?),
        EllipticEval::Theta => {
            let p = vertex.ok_or_else(|| ReportError::Validation("theta needs --d, --weights and --spins".into()))?;
            let x = l.coordinate_map(z).map_err(elliptic_error)?;
            let (a, b) = gauge_exponents(p);
            out["X"] = render.complex(x);
            out["exponents"] = json!([render.qi(&a), render.qi(&b)]);
            out["theta"] = render.complex(gauge_factor(x, p).map_err(elliptic_error)?);
        }
    }
    Ok(out)
}

pub fn elliptic_selftest_report(render: Render) -> Result<Value, ReportError> {
    let items = selftest(&LemniscaticLattice::new()).map_err(elliptic_error)?;
    let all = items.iter().all(|i| i.pass);
    let list: Vec<Value> = items
        .iter()
        .map(|i| json!({"name": i.name, "deviation": render.float(i.deviation), "tolerance": i.tolerance, "pass": i.pass}))
        .collect();
    let report = json!({"checks": list, "all_pass": all});
    if !all {
        return Err(ReportError::Math { stage: "elliptic".into(), message: "self-test failed".into(), detail: Some(report) });
    }
    Ok(report)
}

/// Inputs of the tree → counting → Gaudin pipeline.
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub tree: ChannelTree,
    pub d: usize,
    pub algebra: AlgebraName,
    pub sites: Vec<String>,
    pub seed: u64,
    pub samples: usize,
    pub orders: (i32, i32),
}

/// `samples` distinct rationals in `(2, 20)` with small denominators.
pub fn sample_spectral_parameters(seed: u64, samples: usize) -> Vec<Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Q> = Vec::new();
    while out.len() < samples {
        let den: i64 = rng.gen_range(1..=7);
        let num: i64 = rng.gen_range(2 * den + 1..20 * den);
        let w = Q::new(num.into(), den.into());
        if !out.contains(&w) {
            out.push(w);
        }
    }
    out
}

fn stage(name: &str, inputs: Value, result: Result<Value, ReportError>) -> Result<Value, ReportError> {
    let result = result.map_err(|e| match e {
        ReportError::Validation(m) => ReportError::Validation(format!("{name}: {m}")),
        ReportError::Math { message, detail, .. } => ReportError::Math { stage: name.into(), message, detail },
    })?;
    Ok(json!({
        "stage": name,
        "provenance": {"module": name, "version": env!("CARGO_PKG_VERSION"), "inputs": inputs},
        "result": result,
    }))
}

/// Composite report; deterministic for a fixed configuration.
pub fn pipeline_report(cfg: &PipelineConfig, render: Render) -> Result<Value, ReportError> {
    let tree = &cfg.tree;
    let tree_json = {
        let mut polys = Vec::new();
        for i in 1..=tree.n() as u32 {
            polys.push(json!({"i": i, "f": render.poly(&tree.f_poly(i)?)}));
        }
        let mut verts = Vec::new();
        for v in tree.vertices() {
            verts.push(json!({
                "id": tree.vertex_label(v),
                "depth": tree.depth(crate::trees::NodeRef::Vertex(v))?,
                "g": render.poly(&tree.g_poly(v)?),
                "leaves_below": tree.leaves_below(v)?,
            }));
        }
        json!({"N": tree.n(), "newick": tree.to_newick(), "is_comb": tree.is_comb(), "vertices": verts, "leaves": polys})
    };
    let trees = stage("channel-trees", json!({"tree": tree.to_newick()}), Ok(tree_json))?;
    let counts = stage("counting", json!({"d": cfg.d}), count_report(tree, cfg.d))?;
    let sample_w = sample_spectral_parameters(cfg.seed, cfg.samples.max(2));
    let opts = GaudinOptions {
        algebra: cfg.algebra,
        sites: cfg.sites.clone(),
        tree: Some(tree.clone()),
        orders: cfg.orders,
        sample_w: sample_w.clone(),
    };
    let gaudin_inputs = json!({
        "algebra": cfg.algebra.to_string(),
        "sites": cfg.sites,
        "seed": cfg.seed,
        "sample_w": sample_w.iter().map(fmt_q).collect::<Vec<_>>(),
    });
    let gaudin = stage("gaudin-engine", gaudin_inputs, gaudin_verify(&opts, render))?;
    Ok(json!({"seed": cfg.seed, "stages": [trees, counts, gaudin]}))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn rendering() {
        let r = Render::default();
        assert_eq!(r.q(&q(-3, 6)), json!("-1/2"));
        assert_eq!(r.q(&qint(4)), json!("4"));
        let f = Render { float_digits: Some(3) };
        assert_eq!(f.q(&q(1, 3)), json!(0.333));
        assert_eq!(f.complex(Complex64::new(1.23456, -2.0)), json!([1.23, -2.0]));
    }

    #[test]
    fn error_codes() {
        assert_eq!(ReportError::Validation("x".into()).exit_code(), 2);
        let e = ReportError::math("cs-blocks", "resonance");
        assert_eq!(e.exit_code(), 3);
        assert_eq!(e.to_json()["error"]["stage"], json!("cs-blocks"));
    }

    #[test]
    fn default_gaudin_run_is_exact() {
        let r = gaudin_verify(&GaudinOptions::default(), Render::default()).unwrap();
        assert_eq!(r["all_exact"], json!(true));
        // 3 generators × 2 parameters + 1 pair
        assert_eq!(r["commutator_checks"].as_array().unwrap().len(), 7);
    }

    #[test]
    fn sampled_parameters_are_reproducible() {
        let a = sample_spectral_parameters(42, 4);
        assert_eq!(a, sample_spectral_parameters(42, 4));
        assert!(a.iter().all(|w| *w > qint(2) && *w < qint(20)));
        assert_ne!(a, sample_spectral_parameters(43, 4));
    }

    #[test]
    fn resonance_maps_to_math_error() {
        let one = qint(1);
        let err = block_series_report([one.clone(), one.clone(), one.clone(), one], 3, (qint(1), qint(1)), 3, Render::default())
            .unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
