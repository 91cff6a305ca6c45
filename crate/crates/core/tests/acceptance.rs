//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime
//! against the budget. Runs without the libtest harness so the lines are
//! always shown; the process exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use cpwlab::counting::verify_total;
use cpwlab::cs::{apply_hamiltonian, cone_points, hc_series, CsError, ExpSeries, MultiplicitySet};
use cpwlab::elliptic::LemniscaticLattice;
use cpwlab::exact::{q, qint, Q, QI};
use cpwlab::gaudin::{affine_fit, SitePositions, SiteSystem};
use cpwlab::lie::{builtin_algebra, AlgebraName};
use cpwlab::matrix::Matrix;
use cpwlab::report::{pipeline_report, PipelineConfig, Render};
use cpwlab::trees::{enumerate_channels, ChannelTree};
use cpwlab::vertex::{build_h, build_rep, char_poly, spectrum, spectrum_is_real, AlgebraParams, Coupling};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- counting

/// Independent count of conformal cross ratios.
fn cross_ratio_oracle(n: usize, d: usize) -> usize {
    if n <= d + 2 {
        n * (n - 3) / 2
    } else {
        n * d - (d + 1) * (d + 2) / 2
    }
}

fn counting_identity() -> Outcome {
    for n in 4..=8 {
        for tree in enumerate_channels(n).map_err(|e| e.to_string())? {
            for d in [3, 5, 7] {
                let r = verify_total(&tree, d).map_err(|e| e.to_string())?;
                ensure(r.n_cr == cross_ratio_oracle(n, d), || format!("n_cr mismatch for N={n} d={d}"))?;
                ensure(r.identity_holds && r.n_cr == r.sum_cas + r.sum_vert, || {
                    format!("{} d={d}: {} != {} + {}", r.newick, r.n_cr, r.sum_cas, r.sum_vert)
                })?;
            }
        }
    }
    let comb = verify_total(&ChannelTree::comb(6).map_err(|e| e.to_string())?, 5).map_err(|e| e.to_string())?;
    ensure((comb.n_cr, comb.sum_cas, comb.sum_vert) == (9, 7, 2), || format!("comb N=6 d=5: {comb:?}"))?;
    let per_edge: Vec<usize> = comb.edges.iter().map(|e| e.n_cas).collect();
    ensure(per_edge == [2, 3, 2], || format!("per-edge {per_edge:?}"))?;
    let per_vertex: Vec<usize> = comb.vertices.iter().map(|v| v.n_vert.get(&4).copied().unwrap_or(0)).collect();
    ensure(per_vertex == [0, 1, 1, 0], || format!("per-vertex p=4 {per_vertex:?}"))
}

// ------------------------------------------------------------ comb polynomials

fn comb_polynomials() -> Outcome {
    for n in 4..=8 {
        let tree = ChannelTree::comb(n).map_err(|e| e.to_string())?;
        for i in 1..=n as u32 {
            let f = tree.f_poly(i).map_err(|e| e.to_string())?;
            let terms: Vec<(i32, Q)> = f.terms().map(|(e, c)| (e, c.clone())).collect();
            let expected = vec![((n as i32) - 1 - i as i32, Q::one())];
            ensure(terms == expected, || format!("N={n} f_{i} = {terms:?}"))?;
        }
        for v in tree.vertices() {
            let g = tree.g_poly(v).map_err(|e| e.to_string())?;
            ensure(g.is_zero(), || format!("N={n} g at {} nonzero", tree.vertex_label(v)))?;
        }
    }
    Ok(())
}

// ------------------------------------------------------------ gaudin

fn gaudin_exactness() -> Outcome {
    let sl2 = builtin_algebra(AlgebraName::Sl2);
    let configs: [&[Q]; 3] =
        [&[qint(0), qint(1), q(-2, 3)], &[qint(0), qint(1), qint(3), q(-1, 2)], &[q(1, 5), q(7, 4), qint(-2), qint(4)]];
    let ws = [q(5, 2), q(-7, 3), q(11, 6)];
    for positions in configs {
        let labels = vec!["1/2"; positions.len()];
        let sys = SiteSystem::from_labels(sl2.clone(), &labels, SitePositions::Fixed(positions.to_vec()))
            .map_err(|e| e.to_string())?;
        let hams: Vec<Matrix<Q>> =
            ws.iter().map(|w| sys.quadratic_hamiltonian(w)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        for (a, h) in hams.iter().enumerate() {
            ensure(!h.is_zero(), || "trivial Hamiltonian".into())?;
            for other in &hams[a + 1..] {
                ensure(h.commutator(other).is_zero(), || format!("[H2, H2'] != 0 at {positions:?}"))?;
            }
            for gen in 0..sl2.dim() {
                let diag = sys.diagonal_generator(gen);
                ensure(diag.commutator(h).is_zero(), || format!("[diag_{gen}, H2] != 0 at {positions:?}"))?;
            }
        }
    }
    Ok(())
}

/// `κ^{ab} (Σ_{i∈S} T_a^{(i)})(Σ_{i∈S} T_b^{(i)})` from the site generators.
fn partial_sum_casimir(sys: &SiteSystem, leaves: &[u32]) -> Matrix<Q> {
    let kinv = &sys.algebra().kappa_inv;
    let dim = sys.dim();
    let sums: Vec<Matrix<Q>> = (0..sys.algebra().dim())
        .map(|a| leaves.iter().fold(Matrix::zeros(dim, dim), |acc, &l| acc.add(sys.site_generator(l as usize - 1, a))))
        .collect();
    let mut out = Matrix::zeros(dim, dim);
    for a in 0..sums.len() {
        for b in 0..sums.len() {
            let k = kinv.get(a, b);
            if !k.is_zero() {
                out = out.add(&sums[a].mul(&sums[b]).scale(k));
            }
        }
    }
    out
}

fn limit_family() -> Outcome {
    let sl2 = builtin_algebra(AlgebraName::Sl2);
    let candidates = [q(5, 2), q(-7, 3), q(11, 6), q(13, 5)];
    for n in [4, 5] {
        for tree in enumerate_channels(n).map_err(|e| e.to_string())? {
            let name = tree.to_newick();
            let labels = vec!["1/2"; n];
            let sys = SiteSystem::from_labels(sl2.clone(), &labels, SitePositions::Channel(tree.clone()))
                .map_err(|e| e.to_string())?;
            let mut family = Vec::new();
            for v in tree.vertices() {
                let poles = sys.limit_poles(v).map_err(|e| e.to_string())?;
                let regular = candidates.iter().filter(|w| !poles.iter().flatten().any(|p| p == *w));
                for w in regular.take(2) {
                    family.push(sys.ope_limit(v, w).map_err(|e| format!("{name}: {e}"))?);
                }
            }
            for edge in tree.internal_edges() {
                let cas = sys.edge_casimir(edge).map_err(|e| format!("{name}: {e}"))?;
                let leaves = tree.leaves_below(edge).map_err(|e| e.to_string())?;
                let fit = affine_fit(&cas, &partial_sum_casimir(&sys, &leaves));
                ensure(fit.exact, || format!("{name} edge {}: no exact affine fit", tree.vertex_label(edge)))?;
                family.push(cas);
            }
            for (a, x) in family.iter().enumerate() {
                for y in &family[a + 1..] {
                    ensure(x.commutator(y).is_zero(), || format!("{name}: family members do not commute"))?;
                }
            }
        }
    }
    Ok(())
}

// ------------------------------------------------------------ CS blocks

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    q(rng.gen_range(-30..=30), rng.gen_range(1..=12))
}

/// One-variable series `Σ_j γ_j e^{(λ−j)x}` solved directly from its
/// recursion with couplings `c_s`, `c_l`.
fn bc1_oracle(lambda: &Q, c_long: &Q, c_short: &Q, order: usize) -> Option<Vec<Q>> {
    let mut g = vec![Q::one()];
    for j in 1..=order {
        let jq = qint(j as i64);
        let den = &jq * &jq - qint(2) * lambda * &jq;
        if den.is_zero() {
            return None;
        }
        let mut num = Q::zero();
        for n in 1..=j {
            let w = qint(4 * n as i64);
            num += &w * c_short * &g[j - n];
            if 2 * n <= j {
                num += &w * c_long * &g[j - 2 * n];
            }
        }
        g.push(num / den);
    }
    Some(g)
}

fn cs_blocks() -> Outcome {
    let order = 6;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut draws = 0;
    while draws < 20 {
        let k = MultiplicitySet::new(random_q(&mut rng), random_q(&mut rng), random_q(&mut rng));
        let lambda = (random_q(&mut rng), random_q(&mut rng));
        let s = match hc_series(lambda, &k, order) {
            Ok(s) => s,
            Err(CsError::Resonance(..)) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let hs: ExpSeries = apply_hamiltonian(&s, &k, order).map_err(|e| e.to_string())?;
        ensure(hs.sub_scaled(&s.eigenvalue(), &s).is_zero(), || format!("nonzero residual for {k:?}"))?;
        draws += 1;
    }
    for k_m in [qint(0), qint(1)] {
        let mut factorized = 0;
        let mut attempts = 0;
        while factorized < 5 {
            attempts += 1;
            ensure(attempts <= 100, || format!("too many resonant draws for k_m = {k_m}"))?;
            let k = MultiplicitySet::new(random_q(&mut rng), k_m.clone(), random_q(&mut rng));
            let lambda = (random_q(&mut rng), random_q(&mut rng));
            let (cl, cs) = (k.long_coupling(), k.short_coupling());
            let (Ok(s), Some(f1), Some(f2)) = (
                hc_series(lambda.clone(), &k, order),
                bc1_oracle(&lambda.0, &cl, &cs, order),
                bc1_oracle(&lambda.1, &cl, &cs, order),
            ) else {
                continue;
            };
            for (k1, k2) in cone_points(order) {
                let expected = if k2 < 0 { Q::zero() } else { &f1[k1 as usize] * &f2[k2 as usize] };
                ensure(s.coeff((k1, k2)) == expected, || format!("factorization fails at ({k1}, {k2})"))?;
            }
            factorized += 1;
        }
    }
    Ok(())
}

// ------------------------------------------------------------ vertex algebra

/// `p(x − e)` for coefficients listed from the constant term up.
fn shift_poly(p: &[QI], e: &QI) -> Vec<QI> {
    let mut out = vec![QI::zero(); p.len()];
    for c in p.iter().rev() {
        let mut next = vec![QI::zero(); p.len()];
        for (k, v) in out.iter().enumerate() {
            if k + 1 < next.len() {
                next[k + 1] = next[k + 1].clone() + v.clone();
            }
            next[k] = next[k].clone() - e.clone() * v.clone();
        }
        next[0] = next[0].clone() + c.clone();
        out = next;
    }
    out
}

fn vertex_algebra() -> Outcome {
    let alphas = [q(1, 2), qint(1), q(3, 2), qint(2)];
    let grid = [qint(-1), qint(0), q(1, 2), qint(2)];
    for alpha in &alphas {
        for nu1 in 0..=6 {
            for nu2 in 0..=6 {
                let rep = build_rep(&AlgebraParams::new(alpha.clone(), nu1, nu2)).map_err(|e| e.to_string())?;
                let check = rep.check_relations().map_err(|e| e.to_string())?;
                ensure(check.all(), || format!("relations fail at alpha={alpha} nu=({nu1},{nu2}): {check:?}"))?;
                for g1 in &grid {
                    for g2 in &grid {
                        for g3 in &grid {
                            let c = Coupling::real(g1.clone(), g2.clone(), g3.clone(), qint(0));
                            let h = build_h(&rep, &c).map_err(|e| e.to_string())?;
                            let eig = spectrum(&h);
                            ensure(spectrum_is_real(&eig, 1e-10), || {
                                format!("complex spectrum at alpha={alpha} nu=({nu1},{nu2}) gamma=({g1},{g2},{g3})")
                            })?;
                        }
                    }
                }
            }
        }
    }
    let e = QI::new(q(7, 3), q(-1, 4));
    for alpha in &alphas {
        let rep = build_rep(&AlgebraParams::new(alpha.clone(), 4, 5)).map_err(|e| e.to_string())?;
        let base = build_h(&rep, &Coupling::real(q(1, 2), qint(2), qint(-1), qint(0))).map_err(|e| e.to_string())?;
        let mut c = Coupling::real(q(1, 2), qint(2), qint(-1), qint(0));
        c.energy = e.clone();
        let shifted = build_h(&rep, &c).map_err(|e| e.to_string())?;
        ensure(char_poly(&shifted) == shift_poly(&char_poly(&base), &e), || format!("E-shift fails at alpha={alpha}"))?;
    }
    Ok(())
}

// ------------------------------------------------------------ elliptic

/// `g₂ = 60 Σ' ω⁻⁴`, summing each lattice row in closed form.
fn g2_oracle() -> f64 {
    let row = |z: Complex64| {
        let w = PI * z;
        let csc2 = (w.sin() * w.sin()).inv();
        let cot = w.cos() / w.sin();
        PI.powi(4) / 3.0 * csc2 * (2.0 * cot * cot + csc2)
    };
    let mut sum = Complex64::new(2.0 * PI.powi(4) / 90.0, 0.0);
    for n in 1..=20 {
        sum += row(Complex64::new(0.0, n as f64)) + row(Complex64::new(0.0, -(n as f64)));
    }
    60.0 * sum.re
}

fn elliptic() -> Outcome {
    let l = LemniscaticLattice::new();
    let i = Complex64::new(0.0, 1.0);
    let g2 = g2_oracle();
    ensure(l.g3.abs() < 1e-10, || format!("|g3| = {}", l.g3.abs()))?;
    let center = Complex64::new(0.5, 0.5);
    let wp_center = l.wp(center).map_err(|e| e.to_string())?;
    ensure(wp_center.norm() < 1e-12, || format!("|wp((1+i)/2)| = {}", wp_center.norm()))?;
    let x = l.coordinate_map(center).map_err(|e| e.to_string())?;
    ensure((x - 1.0).norm() < 1e-10, || format!("X((1+i)/2) = {x}"))?;
    for j in 0..10 {
        for k in 0..10 {
            let z = Complex64::new(0.2 + 0.066 * j as f64, 0.21 + 0.065 * k as f64);
            let (p, dp) = l.wp_pair(z).map_err(|e| e.to_string())?;
            for shift in [Complex64::new(1.0, 0.0), i] {
                let d = (l.wp(z + shift).map_err(|e| e.to_string())? - p).norm();
                ensure(d < 1e-12 * (1.0 + p.norm()), || format!("periodicity off by {d} at {z}"))?;
            }
            let d = (l.wp(i * z).map_err(|e| e.to_string())? + p).norm();
            ensure(d < 1e-12 * (1.0 + p.norm()), || format!("i-symmetry off by {d} at {z}"))?;
            let residual = (dp * dp - (4.0 * p * p * p - g2 * p)).norm();
            ensure(residual < 1e-10, || format!("ODE residual {residual} at {z}"))?;
        }
    }
    Ok(())
}

// ------------------------------------------------------------ determinism

fn determinism() -> Outcome {
    let cfg = PipelineConfig {
        tree: ChannelTree::parse("((1,2),(3,4));5").map_err(|e| e.to_string())?,
        d: 5,
        algebra: AlgebraName::Sl2,
        sites: vec!["1/2".into()],
        seed: 2024,
        samples: 3,
        orders: (0, 2),
    };
    let run = || pipeline_report(&cfg, Render::default()).map(|v| serde_json::to_string_pretty(&v).unwrap());
    let a = run().map_err(|e| e.to_string())?;
    let b = run().map_err(|e| e.to_string())?;
    ensure(a == b, || "pipeline JSON differs between runs".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("counting identity", Duration::from_secs(60), counting_identity),
        ("comb polynomials", Duration::from_secs(60), comb_polynomials),
        ("gaudin exactness", Duration::from_secs(30), gaudin_exactness),
        ("limit family", Duration::from_secs(300), limit_family),
        ("cs blocks", Duration::from_secs(120), cs_blocks),
        ("vertex algebra", Duration::from_secs(120), vertex_algebra),
        ("elliptic", Duration::from_secs(30), elliptic),
        ("determinism", Duration::from_secs(60), determinism),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= budget, || format!("over budget: {elapsed:.2?} > {budget:?}"))
        });
        match outcome {
            Ok(()) => println!("PASS  {name:<20} {elapsed:>10.2?} (budget {budget:?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name:<20} {elapsed:>10.2?} (budget {budget:?}): {msg}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
