//! Property suites shared by the `properties` and `acceptance` targets.
//! Each suite returns `Err` with the first counterexample it finds.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, TestRunner};
use squeezelab::analysis::{inner_radius_rays, inner_radius_via_rays, outer_radius};
use squeezelab::domains::{catalog, cayley_to_ball, model_to_bounded, CATALOG_IDS};
use squeezelab::hermitian::complex_hessian;
use squeezelab::jexpr::JExpr;
use squeezelab::maps::{ScalingMap, ScalingStep};
use squeezelab::scalar::{rat, Exponent, GaussJ, GaussQ, Ring, Scalar};
use squeezelab::scaling::{build_pipeline, Pipeline};
use squeezelab::sequences::{catalog_sequence, default_js, tau_h_extendible};
use squeezelab::weights::check_homogeneous;

pub type Suite = (&'static str, fn() -> Result<(), String>);

pub const SUITES: [Suite; 11] = [
    ("real-valuedness", real_valuedness),
    ("hermiticity", hermiticity),
    ("homogeneity dilation", homogeneity_dilation),
    ("scaling map round trips", scaling_round_trip),
    ("catalog map round trips", catalog_round_trip),
    ("cayley boundary to sphere", cayley_boundary),
    ("exact pullback", pullback_exact),
    ("uniform hessian lower bound", uniform_lower_bound),
    ("unitary invariance of radii", unitary_invariance),
    ("inner radius soundness", inner_soundness),
    ("monotone refinement", monotone_refinement),
];

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

fn dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    norm(&a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>())
}

fn gauss_q() -> impl Strategy<Value = GaussQ> {
    (-30i64..30, 1i64..12, -30i64..30, 1i64..12).prop_map(|(a, b, p, q)| GaussQ::new(rat(a, b), rat(p, q)))
}

fn points(dim: usize, r: f64) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-r..r, -r..r).prop_map(|(a, b)| c(a, b)), dim)
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

fn report<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

/// Random unitary from the QR factor of a random complex matrix.
fn unitary(entries: &[Complex64], dim: usize) -> DMatrix<Complex64> {
    let m = DMatrix::from_iterator(dim, dim, entries.iter().cloned()) + DMatrix::identity(dim, dim) * c(0.5, 0.0);
    m.qr().q()
}

fn as_rows(m: &DMatrix<Complex64>) -> Vec<Vec<Complex64>> {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|k| m[(r, k)]).collect()).collect()
}

fn apply_u(u: &DMatrix<Complex64>, x: &[Complex64]) -> Vec<Complex64> {
    (0..u.nrows()).map(|r| (0..u.ncols()).map(|k| u[(r, k)] * x[k]).sum()).collect()
}

pub fn real_valuedness() -> Result<(), String> {
    report(runner(100).run(&(0usize..CATALOG_IDS.len(), prop::collection::vec(gauss_q(), 3)), |(idx, coords)| {
        let d = catalog(CATALOG_IDS[idx]).unwrap();
        let p: Vec<GaussQ> = coords.into_iter().cycle().take(d.n + 1).collect();
        prop_assert_eq!(d.value_exact(&p).unwrap().im, rat(0, 1));
        Ok(())
    }))
}

pub fn hermiticity() -> Result<(), String> {
    report(runner(100).run(&(0usize..CATALOG_IDS.len(), prop::collection::vec(gauss_q(), 3)), |(idx, coords)| {
        let d = catalog(CATALOG_IDS[idx]).unwrap();
        let p: Vec<GaussQ> = coords.into_iter().cycle().take(d.n + 1).collect();
        let h = complex_hessian(&d.defining, &p[..d.n], &p[d.n]);
        for k in 0..d.n {
            for l in 0..d.n {
                prop_assert_eq!(h.get(k, l), &h.get(l, k).conj());
            }
        }
        Ok(())
    }))
}

/// Homogeneous model parts, paired with their weights.
fn homogeneous_models() -> Vec<(squeezelab::wpoly::CompiledPoly, squeezelab::weights::MultiWeight)> {
    CATALOG_IDS
        .iter()
        .filter_map(|id| {
            let d = catalog(id).unwrap();
            let l = d.lambda.clone()?;
            let p = d.defining.pure_z_part();
            check_homogeneous(&p, &l, Exponent::from_integer(1)).ok()?.homogeneous.then(|| (p.specialize(0.0).compile(), l))
        })
        .collect()
}

pub fn homogeneity_dilation() -> Result<(), String> {
    let models = homogeneous_models();
    if models.len() < 5 {
        return Err(format!("only {} homogeneous models in the catalog", models.len()));
    }
    report(runner(100).run(&(0..models.len(), 0.01f64..10.0, points(2, 1.5)), |(idx, t, z)| {
        let (f, l) = &models[idx];
        let z = &z[..l.dim()];
        let w = c(0.0, 0.0);
        let expected = t * f.eval(z, w);
        prop_assert!((f.eval(&l.dilate(t, z), w) - expected).abs() <= 1e-10 * (1.0 + expected.abs()));
        Ok(())
    }))
}

pub fn cayley_boundary() -> Result<(), String> {
    report(runner(200).run(&(points(2, 3.0), -5.0f64..5.0), |(z, v)| {
        let psi = cayley_to_ball(2);
        let u = -z.iter().map(|x| x.norm_sqr()).sum::<f64>();
        let mut p = z.clone();
        p.push(c(u, v));
        prop_assert!((norm(&psi.apply(&p).unwrap()) - 1.0).abs() <= 1e-10);
        p[2] = c(u - 0.5, v);
        prop_assert!(norm(&psi.apply(&p).unwrap()) < 1.0);
        Ok(())
    }))
}

pub fn pipelines() -> Vec<(&'static str, Pipeline)> {
    vec![
        ("ex-4-1", Pipeline::HExtendible),
        ("prop-4-1", Pipeline::Prop41),
        ("ex-5-1", Pipeline::Example51),
        ("ex-5-1", Pipeline::Example51Literal),
        ("ex-5-2", Pipeline::HExtendible),
        ("ex-5-3", Pipeline::Example53),
        ("ex-5-3", Pipeline::HExtendible),
    ]
}

pub fn pullback_exact() -> Result<(), String> {
    let built: Vec<_> = pipelines()
        .into_iter()
        .map(|(id, p)| {
            let s = catalog_sequence(id).unwrap();
            let d = catalog(&s.domain_id).unwrap();
            let l = d.lambda.clone().unwrap();
            let sp = build_pipeline(p, &d, &s, &l).unwrap();
            (d, sp)
        })
        .collect();
    report(runner(100).run(&(0..built.len(), prop::collection::vec(gauss_q(), 3)), |(which, coords)| {
        let (d, sp) = &built[which];
        let n = d.n;
        // Pull rescaled points back through the inverse, which stays
        // polynomial for every pipeline.
        let y: Vec<GaussJ> = coords
            .iter()
            .cycle()
            .take(n + 1)
            .map(|g| GaussJ::new(JExpr::constant(g.re.clone()), JExpr::constant(g.im.clone())))
            .collect();
        let x = sp.map.invert(&y).unwrap();
        let lhs = sp.rescaled.eval(&y[..n], &y[n]);
        let rhs = d.defining.lift::<GaussJ>().eval(&x[..n], &x[n]).mul(&sp.eps.try_inv().unwrap());
        prop_assert_eq!(lhs, rhs);
        Ok(())
    }))
}

pub fn scaling_round_trip() -> Result<(), String> {
    let mut rng = runner(1);
    for (id, pipeline) in pipelines() {
        let s = catalog_sequence(id).unwrap();
        let d = catalog(&s.domain_id).unwrap();
        let l = d.lambda.clone().unwrap();
        let sp = build_pipeline(pipeline, &d, &s, &l).unwrap();
        for j in [4u64, 64, 1024] {
            let m = sp.map_at(j);
            let center = s.point(j as f64);
            let mut checked = 0;
            while checked < 200 {
                let off = points(d.n + 1, 0.5).new_tree(&mut rng).unwrap().current();
                let p: Vec<Complex64> = center.iter().zip(&off).map(|(a, b)| a + b).collect();
                if !d.contains(&p).unwrap().1 {
                    continue;
                }
                let err = dist(&m.invert(&m.apply(&p).unwrap()).unwrap(), &p);
                if err > 1e-10 {
                    return Err(format!("{id} {} j={j}: round trip error {err:e} at {p:?}", pipeline.name()));
                }
                checked += 1;
            }
        }
    }
    Ok(())
}

pub fn catalog_round_trip() -> Result<(), String> {
    let mut rng = runner(1);
    for id in ["siegel", "siegel:3", "e123", "e124", "e112", "kn", "a-model", "f-model", "h-model"] {
        let d = catalog(id).unwrap();
        let Ok((m, target)) = model_to_bounded(&d) else { continue };
        let mut checked = 0;
        while checked < 200 {
            let p = points(d.n + 1, 1.0).new_tree(&mut rng).unwrap().current();
            if !d.contains(&p).unwrap().1 {
                continue;
            }
            let y = m.apply(&p).unwrap();
            if !target.contains(&y).unwrap().1 {
                return Err(format!("{id}: image of interior point {p:?} left the bounded realization"));
            }
            let err = dist(&m.invert(&y).unwrap(), &p);
            if err > 1e-10 {
                return Err(format!("{id}: round trip error {err:e}"));
            }
            checked += 1;
        }
    }
    Ok(())
}

/// `ε_j⁻¹·diag(τ_j)·H_P(α_j)·diag(τ_j)` stays uniformly positive along the
/// uniformly tangential sequence; `floor` is the smallest eigenvalue seen.
pub fn uniform_floor() -> Vec<f64> {
    let s = catalog_sequence("ex-4-1").unwrap();
    let d = catalog(&s.domain_id).unwrap();
    let l = d.lambda.clone().unwrap();
    let p = d.defining.pure_z_part().specialize(0.0);
    default_js()
        .into_iter()
        .map(|j| {
            let (tw, eps) = tau_h_extendible(&s, &d, &l, j).unwrap();
            let alpha = &s.point(j as f64)[..d.n];
            let tau: Vec<Complex64> = tw.tau.iter().map(|t| c(*t, 0.0)).collect();
            complex_hessian(&p, alpha, &c(0.0, 0.0)).congruence_diag(&tau).min_eigenvalue() / eps
        })
        .collect()
}

pub fn uniform_lower_bound() -> Result<(), String> {
    let mins = uniform_floor();
    let floor = mins.iter().cloned().fold(f64::INFINITY, f64::min);
    if floor > 0.1 {
        Ok(())
    } else {
        Err(format!("normalized minimum eigenvalues {mins:?}"))
    }
}

pub fn unitary_invariance() -> Result<(), String> {
    let d123 = catalog("d123").unwrap();
    let samples = d123.boundary_samples(400).unwrap();
    report(runner(12).run(&points(9, 1.0), |entries| {
        // Ball and Siegel (through Ψ) have the unit sphere as image boundary.
        for (id, p) in [("ball:3", vec![c(0.0, 0.0); 3]), ("siegel:3", vec![c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])] {
            let d = catalog(id).unwrap();
            let f = if id.starts_with("ball") { ScalingMap::identity(2) } else { cayley_to_ball(2) };
            let u = unitary(&entries, 3);
            let rho = d.defining.specialize(0.0).compile();
            let base = inner_radius_via_rays(&d, &f, &p, 200, 1e-12).unwrap();
            let inside = |x: &[Complex64]| match f.invert(&apply_u(&u.adjoint(), x)) {
                Ok(y) => rho.eval(&y[..2], y[2]) < 0.0,
                Err(_) => false,
            };
            let turned = inner_radius_rays(inside, 3, 200, 1e-12, 4.0);
            prop_assert!((base.r_inner - turned.r_inner).abs() <= 1e-10, "{}", id);
        }
        let u = unitary(&entries, 3);
        let f = ScalingMap::<Complex64>::identity(2);
        let a = outer_radius(&samples, |b| f.apply(b), |_| false);
        let b = outer_radius(&samples, |b| Ok(apply_u(&u, &f.apply(b)?)), |_| false);
        prop_assert!((a.r_outer - b.r_outer).abs() <= 1e-10);
        // A unitary in z alone, as a step of the map.
        let zu = unitary(&entries[..4], 2);
        let g = ScalingMap::identity(2).then(ScalingStep::z_linear(as_rows(&zu), as_rows(&zu.adjoint()), true));
        let e = outer_radius(&samples, |b| g.apply(b), |_| false);
        prop_assert!((a.r_outer - e.r_outer).abs() <= 1e-10);
        Ok(())
    }))
}

pub fn inner_soundness() -> Result<(), String> {
    let cases: Vec<_> = ["ball:3", "d123", "d124", "d112"]
        .iter()
        .map(|id| {
            let d = catalog(id).unwrap();
            let f = ScalingMap::<Complex64>::identity(2);
            let r = inner_radius_via_rays(&d, &f, &[c(0.0, 0.0); 3], 400, 1e-8).unwrap();
            (d.defining.specialize(0.0).compile(), f, r.r_inner)
        })
        .collect();
    report(runner(50).run(&(0..cases.len(), points(3, 1.0)), |(idx, x)| {
        let (rho, f, r) = &cases[idx];
        let len = norm(&x);
        prop_assume!(len > 1e-9 && len < 1.0);
        let x: Vec<Complex64> = x.iter().map(|v| v * r * (1.0 - 1e-8)).collect();
        let y = f.invert(&x).unwrap();
        prop_assert!(rho.eval(&y[..2], y[2]) < 0.0);
        Ok(())
    }))
}

pub fn monotone_refinement() -> Result<(), String> {
    for id in ["d123", "d124"] {
        let d = catalog(id).unwrap();
        let rho = d.defining.specialize(0.0).compile();
        let inside = |x: &[Complex64]| rho.eval(&x[..2], x[2]) < 0.0;
        let inner: Vec<f64> = [100, 200, 400, 800].iter().map(|&n| inner_radius_rays(inside, 3, n, 1e-10, 4.0).r_inner).collect();
        let id_map = ScalingMap::<Complex64>::identity(2);
        let outer: Vec<f64> = [100, 200, 400, 800]
            .iter()
            .map(|&n| outer_radius(&d.boundary_samples(n).unwrap(), |b| id_map.apply(b), |_| false).r_outer)
            .collect();
        if !inner.windows(2).all(|w| w[1] <= w[0]) || !outer.windows(2).all(|w| w[1] >= w[0]) {
            return Err(format!("{id}: inner {inner:?}, outer {outer:?}"));
        }
    }
    Ok(())
}
