use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wqed_core::fields::{nonmarkov_transmittance, reflectance, transmittance};
use wqed_core::oracle::{
    continuum_evolve, integrate_markov, memory_kernels, quad_e1, quad_kernel, ContinuumGrid,
    ContinuumSpec, Coupling, DefiningIntegral, OdeSpec, QuadSpec,
};
use wqed_core::specfun::exp_integral_e1;
use wqed_core::{rates_for, ComplexValue, Direction, E1Convention, ModelParams};

const V_G: f64 = 3.0e8;

fn params(ratio: f64, kd: f64, detune: f64, bw: f64) -> ModelParams {
    let w = 2.0 * PI * 5.0e9;
    ModelParams::with_phase(w, ratio * w, kd, V_G, w * (1.0 + detune), bw * w).unwrap()
}

#[test]
fn ode_starts_at_rest_and_converges_at_fourth_order() {
    let p = params(0.01, PI / 2.0, 0.004, 1e-3);
    let r = rates_for(&p);
    let t_end = 20.0 / p.gamma();
    let coarse = integrate_markov(&r, &p, &OdeSpec { dt: OdeSpec::max_step(&p), t_end }).unwrap();
    let fine = integrate_markov(&r, &p, &OdeSpec { dt: 0.5 * OdeSpec::max_step(&p), t_end }).unwrap();
    assert_eq!(coarse[0].beta1, ComplexValue::new(0.0, 0.0));
    assert_eq!(coarse[0].beta2, ComplexValue::new(0.0, 0.0));
    let mut worst = 0.0f64;
    for (k, c) in coarse.iter().enumerate() {
        let f = &fine[2 * k];
        assert!((f.t - c.t).abs() < 1e-9 * t_end);
        worst = worst.max((f.beta1 - c.beta1).norm()).max((f.beta2 - c.beta2).norm());
    }
    assert!(worst < 1e-8, "{worst:e}");
}

#[test]
fn memory_integrals_reduce_to_markov_terms() {
    let p = params(0.01, 5.0 * PI / 2.0, 0.0, 1e-3);
    for m in [100.0, 250.0, 600.0] {
        let t = m / p.omega_q();
        let k = memory_kernels(&p, t, 20.0 * p.omega_q()).unwrap();
        assert!(k.relative_deviation() < 0.02, "t={m}/Ω: {k:?}");
    }
}

#[test]
fn cutoff_doubling_leaves_kernels_unchanged() {
    let p = params(0.01, 1.1, 0.002, 1e-3);
    let base = QuadSpec::for_params(&p);
    let doubled = QuadSpec { omega_max: 2.0 * base.omega_max, ..base };
    let ids = [
        DefiningIntegral::Decay { direction: Direction::Backward, plus: false },
        DefiningIntegral::Drive(Direction::Forward),
        DefiningIntegral::Resonant(Direction::Backward),
    ];
    for id in ids {
        let x = 1.7 * p.distance();
        let t = 2.0 * p.transit_time() + 300.0 / p.omega_q();
        let a = quad_kernel(id, x, t, &p, &base).unwrap();
        let b = quad_kernel(id, x, t, &p, &doubled).unwrap();
        assert!((a.value - b.value).norm() < base.rel_tol * a.value.norm(), "{id:?}");
        let closed = id.closed_form(x, t, &p, E1Convention::Rotated).unwrap();
        assert!((closed - a.value).norm() < 1e-4 * a.value.norm(), "{id:?}");
    }
}

#[test]
fn quad_kernel_rejects_acausal_points() {
    let p = params(0.01, PI / 2.0, 0.0, 1e-3);
    let spec = QuadSpec::for_params(&p);
    let x = 3.0 * p.distance();
    let id = DefiningIntegral::Drive(Direction::Forward);
    assert!(quad_kernel(id, x, 0.5 * p.transit_time(), &p, &spec).is_err());
}

#[test]
fn e1_matches_ray_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..60 {
        let r = 10f64.powf(rng.gen_range(-2.0..1.7));
        let phase = rng.gen_range(-0.95 * PI..0.95 * PI);
        let z = ComplexValue::from_polar(r, phase);
        let a = exp_integral_e1(z).unwrap();
        let b = quad_e1(z).unwrap();
        assert!((a - b).norm() < 1e-10 * b.norm(), "z={z}: {a} vs {b}");
    }
}

fn packet_run(p: &ModelParams, span: (f64, f64), t0: f64, t_end: f64) -> wqed_core::oracle::ContinuumRun {
    let grid = ContinuumGrid::around(p, span.0, span.1, 4096);
    let spec = ContinuumSpec {
        dt: ContinuumSpec::default_step(&grid, p),
        t0,
        t_end,
        coupling: Coupling::Flat,
        record_every: 1000,
        grid,
    };
    continuum_evolve(p, &spec).unwrap()
}

#[test]
fn continuum_split_matches_markov_spectra_for_weak_coupling() {
    let p = params(0.01, PI / 2.0, 0.0, 1e-3);
    let w = p.omega_q();
    // A narrower band biases the exchange coupling at this small separation.
    let run = packet_run(&p, (0.02, 1.98), 6.0 / p.delta_bw(), 12_500.0 / w);
    let pop = *run.population.last().unwrap();
    assert!(pop < 1e-6, "qubits still excited: {pop:e}");
    let t_avg = run.packet_average(|om| transmittance(om, &p).unwrap());
    let r_avg = run.packet_average(|om| reflectance(om, &p).unwrap());
    assert!((run.final_forward() - t_avg).abs() < 0.05, "T {} vs {t_avg}", run.final_forward());
    assert!((run.final_backward() - r_avg).abs() < 0.05, "R {} vs {r_avg}", run.final_backward());
}

#[test]
fn continuum_departs_from_markov_for_strong_coupling() {
    let base = params(0.1, 5.0 * PI, 0.0, 1e-2);
    let w = base.omega_q();
    // Probe where the two closed-form spectra differ most.
    let (probe, _) = (0..801)
        .map(|k| w * (0.8 + 0.4 * k as f64 / 800.0))
        .map(|om| {
            let gap = (transmittance(om, &base).unwrap() - nonmarkov_transmittance(om, &base).unwrap()).abs();
            (om, gap)
        })
        .fold((w, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    let p = base.with_omega_s(probe).unwrap();
    let run = packet_run(&p, (0.02, 1.98), 6.0 / p.delta_bw(), 1400.0 / w);
    let markov = run.packet_average(|om| transmittance(om, &p).unwrap());
    let retarded = run.packet_average(|om| nonmarkov_transmittance(om, &p).unwrap());
    let pop = *run.population.last().unwrap();
    assert!(pop < 1e-3, "qubits still excited: {pop:e}");
    let got = run.final_forward();
    assert!((got - markov).abs() > 0.05, "T_cont {got} vs Markov {markov}");
    assert!((got - retarded).abs() < (got - markov).abs(), "T_cont {got}, retarded {retarded}, Markov {markov}");
}
