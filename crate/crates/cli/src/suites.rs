//! The verification suites behind `frac-gelfand verify`.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fgl_core::constants::{hardy_constant, lambda_ns, log_lambda_ns};
use fgl_core::energy::{
    energy, energy_constancy_scan, energy_derivative_surface, energy_scaling_identity,
};
use fgl_core::extension::{extend_singular, poisson_normalization, HalfSpaceField};
use fgl_core::fraclap::{
    fraclap_log_identity, fraclap_radial, hardy_constant_integral, hardy_quotient,
    volume_growth, CutoffFamily, RadialLogProfile,
};
use fgl_core::representation::{representation_check, riesz_potential_v};
use fgl_core::{Params, Result};

use crate::config::RunConfig;
use crate::report::VerificationReport;

pub fn run_suite(name: &str, p: Params, cfg: &RunConfig) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(name, p.n(), p.s(), cfg.seed);
    match name {
        "fraclap" => fraclap_suite(&mut report, p, cfg)?,
        "hardy" => hardy_suite(&mut report, p, cfg)?,
        "extension" => extension_suite(&mut report, p, cfg)?,
        "energy" => energy_suite(&mut report, p, cfg)?,
        "representation" => representation_suite(&mut report, p, cfg)?,
        "all" => {
            fraclap_suite(&mut report, p, cfg)?;
            hardy_suite(&mut report, p, cfg)?;
            extension_suite(&mut report, p, cfg)?;
            energy_suite(&mut report, p, cfg)?;
            representation_suite(&mut report, p, cfg)?;
        }
        other => {
            return Err(fgl_core::Error::Domain(format!("unknown suite {other}")));
        }
    }
    Ok(report)
}

fn fraclap_suite(report: &mut VerificationReport, p: Params, cfg: &RunConfig) -> Result<()> {
    let spec = &cfg.spec;
    let t = Instant::now();
    let a = fraclap_log_identity(p, spec)?;
    report.check_relative("fraclap_log_identity = lambda_ns", a, lambda_ns(p), 1e-6, t);

    let u = RadialLogProfile::singular(p);
    for r in [0.5, 1.0, 2.0] {
        let t = Instant::now();
        let got = fraclap_radial(&u, p, r, spec)?;
        let want = lambda_ns(p) * r.powf(-2.0 * p.s());
        report.check_relative(
            &format!("singular solution residual at r = {r}"),
            got,
            want,
            1e-6,
            t,
        );
    }

    let t = Instant::now();
    let zero = fraclap_radial(&RadialLogProfile::constant(5.0), p, 1.0, spec)?;
    report.check_absolute("constant profile maps to zero", zero, 0.0, 1e-9, t);

    for r in [1.0, 10.0] {
        let t = Instant::now();
        let v = volume_growth(p, r, spec)?;
        report.check_relative(
            &format!("volume growth at r = {r}"),
            v.by_quadrature,
            v.closed_form,
            1e-8,
            t,
        );
    }
    Ok(())
}

fn hardy_suite(report: &mut VerificationReport, p: Params, cfg: &RunConfig) -> Result<()> {
    let spec = &cfg.spec;
    let t = Instant::now();
    let two_route = hardy_constant_integral(p, spec)?;
    report.check_relative(
        "hardy_constant_integral = Lambda_ns",
        two_route,
        hardy_constant(p),
        1e-6,
        t,
    );

    let lam = hardy_constant(p);
    let mut quotients = Vec::new();
    for eps in [1e-2, 1e-3, 1e-4] {
        let t = Instant::now();
        let q = hardy_quotient(p, eps, spec)?;
        report.check_at_least(
            &format!("hardy quotient >= Lambda - 1e-8 at eps = {eps}"),
            q,
            lam - 1e-8,
            t,
        );
        quotients.push((eps, q));
    }
    let t = Instant::now();
    let decreasing = quotients.windows(2).all(|w| w[0].1 > w[1].1);
    report.check_absolute(
        "hardy quotient excess decreasing in eps",
        if decreasing { 1.0 } else { 0.0 },
        1.0,
        0.0,
        t,
    );
    // the O(1/log(1/eps)) law: excess × log-mass is a fixed constant
    let t = Instant::now();
    let l2 = CutoffFamily::new(1e-2)?.log_mass(spec)?;
    let l4 = CutoffFamily::new(1e-4)?.log_mass(spec)?;
    let c2 = (quotients[0].1 - lam) * l2;
    let c4 = (quotients[2].1 - lam) * l4;
    report.check_relative("hardy quotient rate constant (excess x log-mass)", c4, c2, 0.02, t);
    Ok(())
}

fn extension_suite(report: &mut VerificationReport, p: Params, cfg: &RunConfig) -> Result<()> {
    let spec = &cfg.spec;
    for t_height in [0.1, 1.0, 10.0] {
        let t = Instant::now();
        let v = poisson_normalization(p, t_height, spec)?;
        report.check_absolute(
            &format!("poisson normalization at t = {t_height}"),
            v,
            1.0,
            1e-8,
            t,
        );
    }

    // homogeneity at seeded random points
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..3 {
        let rho: f64 = rng.gen_range(0.2..2.0);
        let height: f64 = rng.gen_range(0.1..1.5);
        let t = Instant::now();
        let a = extend_singular(p, rho, height, spec)?;
        let b = extend_singular(p, 2.0 * rho, 2.0 * height, spec)?;
        report.check_absolute(
            &format!("extension homogeneity at random point {i}"),
            b,
            a - 2.0 * p.s() * 2.0f64.ln(),
            1e-6,
            t,
        );
    }

    // dual route: Poisson integral vs separated profile
    let field = HalfSpaceField::singular(p)?;
    for (rho, height) in [(0.8, 0.6), (1.5, 0.2)] {
        let t = Instant::now();
        let via_poisson = extend_singular(p, rho, height, spec)?;
        let via_profile = field.eval(rho, height);
        report.check_relative(
            &format!("profile route = Poisson route at ({rho}, {height})"),
            via_poisson,
            via_profile,
            5e-7,
            t,
        );
    }

    // trace convergence is monotone
    let t = Instant::now();
    let target = log_lambda_ns(p);
    let gaps: Vec<f64> = [0.1, 0.01, 0.001]
        .iter()
        .map(|&h| extend_singular(p, 1.0, h, spec).map(|v| (v - target).abs()))
        .collect::<Result<_>>()?;
    let monotone = gaps[0] > gaps[1] && gaps[1] > gaps[2];
    report.check_absolute(
        "trace gap decreasing for t = 1e-1, 1e-2, 1e-3",
        if monotone { 1.0 } else { 0.0 },
        1.0,
        0.0,
        t,
    );
    Ok(())
}

fn energy_suite(report: &mut VerificationReport, p: Params, cfg: &RunConfig) -> Result<()> {
    let spec = &cfg.spec;
    let field = HalfSpaceField::singular(p)?;

    let t = Instant::now();
    let e1 = energy(&field, p, 1.0, spec)?.total;
    let spread = energy_constancy_scan(p, &[0.5, 1.0, 2.0, 4.0], spec)?;
    report.check_absolute(
        "energy spread over lambda in {1/2,1,2,4}",
        spread,
        0.0,
        1e-4 * (1.0 + e1.abs()),
        t,
    );

    let t = Instant::now();
    let deriv = energy_derivative_surface(&field, p, 1.0, spec)?;
    report.check_absolute("surface derivative on singular field", deriv, 0.0, 1e-8, t);

    let t = Instant::now();
    let (lhs, rhs, _) = energy_scaling_identity(&field, p, 2.0, spec)?;
    report.check_relative("scaling identity E(u,0,2) = E(u^2,0,1)", lhs, rhs, 1e-5, t);

    let bumped = HalfSpaceField::singular_with_bump(p, 0.3, (0.2, 0.8), 1)?;
    let t = Instant::now();
    let (lhs, rhs, _) = energy_scaling_identity(&bumped, p, 3.0, spec)?;
    report.check_relative(
        "scaling identity on perturbed field at lambda = 3",
        lhs,
        rhs,
        1e-5,
        t,
    );
    Ok(())
}

fn representation_suite(report: &mut VerificationReport, p: Params, cfg: &RunConfig) -> Result<()> {
    let spec = &cfg.spec;
    let t = Instant::now();
    let rep = representation_check(p, &[0.5, 1.0, 2.0, 4.0], 1e-3, spec)?;
    report.check_absolute(
        "spread of u - v over radii {1/2,1,2,4}",
        rep.spread,
        0.0,
        1e-3,
        t,
    );

    let t = Instant::now();
    let gaps: Vec<f64> = [0.5, 1.0, 2.0, 4.0]
        .iter()
        .map(|&r| {
            riesz_potential_v(p, r, spec)
                .map(|v| log_lambda_ns(p) - 2.0 * p.s() * r.ln() - 1.5 * v)
        })
        .collect::<Result<_>>()?;
    let control = gaps.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - gaps.iter().cloned().fold(f64::INFINITY, f64::min);
    report.check_at_least("negative control spread (1.5x constant)", control, 0.05, t);
    Ok(())
}
