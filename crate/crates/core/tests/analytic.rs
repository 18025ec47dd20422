mod common;

use cellscale::analytic::*;
use cellscale::mc::{estimate_cp, SimParams, DEFAULT_WINDOW_K};
use cellscale::{DerivedConstants, Error, NetworkConfig, PathlossModel};
use common::{log_grid, single_peaked};

fn cfg(lambda: f64, alpha: f64, tau: f64) -> NetworkConfig {
    NetworkConfig::new(lambda, alpha, tau, 100.0).unwrap()
}

fn q() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn mc(c: &NetworkConfig, m: PathlossModel) -> cellscale::mc::SimEstimate {
    let p = SimParams::for_config(c, m, DEFAULT_WINDOW_K, 100_000, 7).unwrap();
    estimate_cp(c, m, &p).unwrap()
}

#[test]
fn upm_baseline_and_limits() {
    let k = DerivedConstants::new(4.0, 10.0).unwrap();
    let c = cfg(0.3, 4.0, 10.0);
    assert!((cp_upm(&c).unwrap().value - 1.0 / (1.0 + k.c1)).abs() < 1e-15);
    assert!((cp_upm(&c).unwrap().value - 0.2).abs() < 1e-4);
    assert!((cp_upm(&cfg(0.3, 4.0, 1e-12)).unwrap().value - 1.0).abs() < 1e-11);
    for l in [1e-6, 1e-2, 10.0] {
        assert_eq!(cp_upm(&cfg(l, 4.0, 10.0)).unwrap().value, cp_upm(&c).unwrap().value);
    }
}

#[test]
fn closed_form_small_density_limit() {
    let k = DerivedConstants::new(4.0, 10.0).unwrap();
    let limit = 1.0 / (1.0 + k.c1);
    let gap = |l: f64| (cp_g1_closed(&cfg(l, 4.0, 10.0), &q()).unwrap().raw - limit).abs();
    assert!(gap(1e-12) < 1e-5);
    // The second term vanishes like sqrt(lambda).
    let ratio = gap(1e-10) / gap(1e-12);
    assert!((ratio - 10.0).abs() < 0.1, "{ratio}");
    let mid = cp_g1_closed(&cfg(0.5, 4.0, 10.0), &q()).unwrap();
    assert!((0.0..=1.0).contains(&mid.value));
}

#[test]
fn closed_form_non_increasing() {
    let v: Vec<f64> = log_grid(1e-3, 10.0, 40)
        .iter()
        .map(|&l| cp_g1_closed(&cfg(l, 4.0, 10.0), &q()).unwrap().value)
        .collect();
    assert!(v.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn quadrature_limits() {
    let k = DerivedConstants::new(4.0, 10.0).unwrap();
    let small = cfg(1e-8, 4.0, 10.0);
    assert!((cp_g1_quadrature(&small, &q()).unwrap().value - 1.0 / (1.0 + k.c1)).abs() < 1e-4);
    for l in [1e-3, 1.0, 10.0] {
        let c = cfg(l, 4.0, 1e-12);
        assert!((cp_g1_quadrature(&c, &q()).unwrap().value - 1.0).abs() < 1e-9);
        assert!((cp_g2(&c, &q()).unwrap().value - 1.0).abs() < 1e-9);
    }
    let upm = cp_upm(&small).unwrap().value;
    assert!((cp_g2(&small, &q()).unwrap().value - upm).abs() < 2e-2);
    assert!((cp_g1_quadrature(&small, &q()).unwrap().value - upm).abs() < 2e-2);
}

#[test]
fn bound_limits() {
    let k = DerivedConstants::new(4.0, 10.0).unwrap();
    let c = cfg(1e-14, 4.0, 10.0);
    assert!((cp_g1_lower(&c).unwrap().value - 1.0 / (1.0 + k.c1)).abs() < 1e-6);
    assert!((cp_g1_upper(&c).unwrap().value - 1.0 / (1.0 + k.c_hat)).abs() < 1e-6);
    assert!((cp_g2_upper(&c).unwrap().value - 1.0 / (1.0 + k.c_hat / 16.0)).abs() < 1e-6);
    let t = cfg(0.1, 4.0, 1e-12);
    for v in [cp_g1_lower(&t), cp_g1_upper(&t), cp_g2_upper(&t)] {
        assert!((v.unwrap().value - 1.0).abs() < 1e-9);
    }
}

#[test]
fn quadrature_rules_agree() {
    // Laguerre needs an integrand analytic in u, which the restricted g2
    // bound provides.
    let lag = QuadratureSpec::laguerre(32, 1e-10).unwrap();
    for l in [0.3, 1.0, 3.0] {
        let c = cfg(l, 4.0, 0.1);
        let a = cp_g2_lower(&c, &q()).unwrap().raw;
        let b = cp_g2_lower(&c, &lag).unwrap().raw;
        assert!((a - b).abs() <= 1e-9 * a, "lambda={l}: {a} vs {b}");
    }
}

#[test]
fn g1_matches_simulation() {
    for l in [0.01, 0.1, 1.0] {
        let c = cfg(l, 4.0, 10.0);
        let want = cp_g1_quadrature(&c, &q()).unwrap().value;
        let est = mc(&c, PathlossModel::BoundedG1);
        assert!(est.agrees_with(want, 3.0), "lambda={l}: z={}", est.z_score(want));
    }
}

#[test]
fn g2_matches_simulation() {
    for l in [0.01, 0.1, 1.0] {
        let c = cfg(l, 4.0, 10.0);
        let want = cp_g2(&c, &q()).unwrap().value;
        let est = mc(&c, PathlossModel::BoundedG2);
        assert!(est.agrees_with(want, 3.0), "lambda={l}: z={}", est.z_score(want));
    }
}

#[test]
fn low_density_invariance_g1() {
    let v: Vec<f64> = log_grid(1e-6, 1e-4, 9)
        .iter()
        .map(|&l| cp_g1_quadrature(&cfg(l, 4.0, 10.0), &q()).unwrap().value)
        .collect();
    let ratio = v.iter().cloned().fold(0.0, f64::max) / v.iter().cloned().fold(1.0, f64::min);
    assert!(ratio < 1.01, "max/min = {ratio}");
}

#[test]
fn low_density_invariance_g2() {
    let v: Vec<f64> = log_grid(1e-6, 1e-4, 9)
        .iter()
        .map(|&l| cp_g2(&cfg(l, 4.0, 10.0), &q()).unwrap().value)
        .collect();
    let ratio = v.iter().cloned().fold(0.0, f64::max) / v.iter().cloned().fold(1.0, f64::min);
    assert!(ratio < 1.01, "max/min = {ratio}");
}

#[test]
fn g2_lower_bound_holds() {
    for alpha in [3.0, 4.0] {
        for tau in [1.0, 10.0] {
            for l in log_grid(1e-6, 10.0, 40) {
                let c = cfg(l, alpha, tau);
                let exact = cp_g2(&c, &q()).unwrap().raw;
                assert!(cp_g2_lower(&c, &q()).unwrap().raw <= exact + 1e-9);
            }
        }
    }
}

#[test]
fn terminal_inequalities_between_models() {
    // Observed, not proven: the g2 lower bound sits below the g1 one and the
    // g2 upper bound above the g1 one.
    for l in log_grid(1e-6, 10.0, 40) {
        let c = cfg(l, 4.0, 10.0);
        let (l1, l2) = (cp_g1_lower(&c).unwrap().raw, cp_g2_lower(&c, &q()).unwrap().raw);
        let (u1, u2) = (cp_g1_upper(&c).unwrap().raw, cp_g2_upper(&c).unwrap().raw);
        assert!(l2 <= l1, "lambda={l}: {l2} > {l1}");
        assert!(u2 >= u1, "lambda={l}: {u2} < {u1}");
    }
}

#[test]
fn ase_definition() {
    let c = cfg(2.0, 4.0, 1.0);
    let cp = CpValue::new(0.5, CpMethod::Quadrature);
    assert!((ase(&c, cp).value - 1.0).abs() < 1e-15);
    assert_eq!(ase(&c, CpValue::new(0.0, CpMethod::Quadrature)).value, 0.0);
}

#[test]
fn ase_bounds_order_and_limits() {
    let k = DerivedConstants::new(4.0, 10.0).unwrap();
    for l in log_grid(1e-4, 10.0, 40) {
        let c = cfg(l, 4.0, 10.0);
        assert!(ase_lower(&c).unwrap().value <= ase_upper(&c).unwrap().value);
    }
    let l = 1e-12;
    let c = cfg(l, 4.0, 10.0);
    let want = c.rate() / (1.0 + k.c_hat / 16.0);
    assert!((ase_upper(&c).unwrap().value / l / want - 1.0).abs() < 1e-9);
}

#[test]
fn ase_unimodal_and_decays() {
    for m in [PathlossModel::BoundedG1, PathlossModel::BoundedG2] {
        let v: Vec<f64> = log_grid(1e-4, 10.0, 40)
            .iter()
            .map(|&l| ase_exact(&cfg(l, 4.0, 10.0), m, &q()).unwrap().value)
            .collect();
        assert!(single_peaked(&v, 1e-12), "{m}");
        let star = optimal_density_numeric(&cfg(1.0, 4.0, 10.0), AseObjective::Exact(m), &DensitySearch::default(), &q()).unwrap();
        let at = |l: f64| ase_exact(&cfg(l, 4.0, 10.0), m, &q()).unwrap().value;
        assert!(at(1.5 * star) < at(star) && at(3.0 * star) < at(1.5 * star));
        assert!(at(10.0 * star) < 0.2 * at(star));
    }
}

#[test]
fn upper_bound_is_proportional_to_rate_function() {
    let k = DerivedConstants::new(4.0, 10.0).unwrap();
    let want = ase_upper_rate_ratio(&k);
    for l in log_grid(1e-6, 30.0, 50) {
        let c = cfg(l, 4.0, 10.0);
        let got = ase_upper(&c).unwrap().value / (l * (-k.kappa_upper * l).exp());
        assert!((got / want - 1.0).abs() < 1e-15);
    }
}

#[test]
fn optimal_density_examples() {
    let k = DerivedConstants::new(4.0, 10.0).unwrap();
    let closed = optimal_density_closed(4.0, 10.0).unwrap();
    assert!((closed - 16.0 / (std::f64::consts::PI * k.c_hat)).abs() < 1e-12 * closed);
    let t = cfg(1.0, 4.0, 1e-9);
    let r = optimal_density_numeric(&t, AseObjective::Exact(PathlossModel::BoundedG2), &DensitySearch::default(), &q());
    assert!(matches!(r, Err(Error::NoInteriorMaximum { .. })));
}

#[test]
fn scaling_report_on_tail() {
    let l0 = optimal_density_closed(3.0, 1.0).unwrap();
    let grid = log_grid(l0, 10.0 * l0, 25);
    let r = scaling_envelope_check(3.0, 1.0, &grid).unwrap();
    assert!(r.all_pass());
    assert_eq!(r.entries.len(), 25);
    assert!(r.entries.iter().all(|e| e.in_tail));
}

#[test]
fn power_does_not_enter() {
    for l in [1e-3, 0.2, 3.0] {
        let a = cfg(l, 4.0, 10.0);
        let b = a.with_p_bs(1e6);
        assert_eq!(cp_g1_quadrature(&a, &q()).unwrap(), cp_g1_quadrature(&b, &q()).unwrap());
        assert_eq!(cp_g2(&a, &q()).unwrap(), cp_g2(&b, &q()).unwrap());
        assert_eq!(ase_lower(&a).unwrap(), ase_lower(&b).unwrap());
        assert_eq!(ase_upper(&a).unwrap(), ase_upper(&b).unwrap());
    }
}
