//! Closed forms against brute-force linear algebra on random inputs.

mod common;

use common::{random_params, random_unitary, random_xstate};
use gravcat::correlations::{
    concurrence_x, evaluate, fano_bloch, gqd, steered_state_a_to_b, steered_state_b_to_a,
    steering_a_to_b, steering_b_to_a, steering_coefficients,
};
use gravcat::linalg::Mat4;
use gravcat::model::{build_hamiltonian, eigensystem, gibbs_xstate, partition_function, ModelParams, XState};
use gravcat::oracles::{
    commutator, hermitian_eigensystem, partial_trace, pauli_expectation, steered_state, thermal_state,
    trace_norm, wootters_concurrence, DensityMatrix4, Subsystem,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn gibbs_matches_matrix_exponential() {
    let mut r = rng(1);
    for _ in 0..500 {
        let p = random_params(&mut r, 5.0);
        let t = rand::Rng::gen_range(&mut r, 0.01..=10.0);
        let closed = gibbs_xstate(&p, t).unwrap();
        let oracle = thermal_state(&build_hamiltonian(&p), 1.0 / t).unwrap();
        let err = closed.to_matrix().max_abs_diff(&oracle);
        assert!(err <= 1e-10, "ω={} γ={} T={t}: {err}", p.omega(), p.gamma());
        closed.validate().unwrap();
        assert_eq!(closed.r22(), closed.r33());
    }
}

#[test]
fn gibbs_commutes_with_hamiltonian() {
    let mut r = rng(2);
    for _ in 0..200 {
        let p = random_params(&mut r, 5.0);
        let t = rand::Rng::gen_range(&mut r, 0.01..=10.0);
        let rho = gibbs_xstate(&p, t).unwrap().to_matrix();
        let h = build_hamiltonian(&p);
        assert!(commutator(&h, &rho).max_abs() <= 1e-10);
    }
}

#[test]
fn closed_spectrum_matches_diagonalisation() {
    let mut r = rng(3);
    for _ in 0..200 {
        let p = random_params(&mut r, 5.0);
        let e = eigensystem(&p);
        let mut closed = e.energies;
        closed.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let oracle = hermitian_eigensystem(&build_hamiltonian(&p)).unwrap();
        for (a, b) in closed.iter().zip(oracle.eigenvalues) {
            assert!((a - b).abs() <= 1e-12);
        }
        assert!(e.energies.iter().sum::<f64>().abs() <= 1e-15);
        let z: f64 = oracle.eigenvalues.iter().map(|l| (-l / 0.7).exp()).sum();
        assert!((partition_function(&p, 0.7).unwrap() - z).abs() <= 1e-10 * z);
    }
}

#[test]
fn concurrence_matches_wootters() {
    let mut r = rng(4);
    for _ in 0..1000 {
        let x = random_xstate(&mut r);
        let oracle = wootters_concurrence(&DensityMatrix4::from_xstate(&x)).unwrap();
        let closed = concurrence_x(&x);
        assert!((closed - oracle).abs() <= 1e-9, "{x:?}: {closed} vs {oracle}");
        assert!((0.0..=1.0).contains(&closed));
    }
}

#[test]
fn wootters_is_local_unitary_invariant() {
    let mut r = rng(5);
    for _ in 0..200 {
        let x = random_xstate(&mut r);
        let u = random_unitary(&mut r).kron(&random_unitary(&mut r));
        let rotated = u * x.to_matrix() * u.adjoint();
        let rotated = DensityMatrix4::new((rotated + rotated.adjoint()).scale(0.5)).unwrap();
        let before = wootters_concurrence(&DensityMatrix4::from_xstate(&x)).unwrap();
        let after = wootters_concurrence(&rotated).unwrap();
        assert!((before - after).abs() <= 1e-9, "{before} vs {after}");
    }
}

#[test]
fn fano_bloch_matches_pauli_expectations() {
    let mut r = rng(6);
    for _ in 0..1000 {
        let x = random_xstate(&mut r);
        let m = x.to_matrix();
        let f = fano_bloch(&x);
        for (closed, (mu, nu)) in [(f.r11, (1, 1)), (f.r22, (2, 2)), (f.r33, (3, 3)), (f.r03, (0, 3)), (f.r30, (3, 0))] {
            let oracle = pauli_expectation(&m, mu, nu);
            assert!((closed - oracle).abs() <= 1e-12, "R{mu}{nu}: {closed} vs {oracle}");
            assert!(closed.abs() <= 1.0 + 1e-12);
        }
    }
}

#[test]
fn steered_states_match_affine_map() {
    let mut r = rng(7);
    for _ in 0..1000 {
        let x = random_xstate(&mut r);
        let dm = DensityMatrix4::from_xstate(&x);
        let ba = steered_state_b_to_a(&x);
        let ab = steered_state_a_to_b(&x);
        assert!(ba.to_matrix().max_abs_diff(&steered_state(&dm, Subsystem::B)) <= 1e-12);
        assert!(ab.to_matrix().max_abs_diff(&steered_state(&dm, Subsystem::A)) <= 1e-12);
        ba.validate().unwrap();
        ab.validate().unwrap();
        let reduced = partial_trace(&DensityMatrix4::from_xstate(&ba), Subsystem::B);
        let [a0, a1] = x.reduced_a();
        assert!((reduced.0[0][0].re - a0).abs() <= 1e-12 && (reduced.0[1][1].re - a1).abs() <= 1e-12);
        let reduced = partial_trace(&DensityMatrix4::from_xstate(&ab), Subsystem::A);
        let [b0, b1] = x.reduced_b();
        assert!((reduced.0[0][0].re - b0).abs() <= 1e-12 && (reduced.0[1][1].re - b1).abs() <= 1e-12);
    }
}

#[test]
fn coefficient_invariants() {
    let mut r = rng(8);
    let mix = (3.0 - 3f64.sqrt()) / 6.0;
    for _ in 0..1000 {
        let x = random_xstate(&mut r);
        let c = steering_coefficients(&x);
        assert!(c.f_a >= 0.0 && c.f_c >= 0.0);
        assert!((c.a + c.b - mix).abs() <= 1e-15);
    }
}

#[test]
fn partial_traces_are_states() {
    let mut r = rng(9);
    for _ in 0..500 {
        let x = random_xstate(&mut r);
        let dm = DensityMatrix4::from_xstate(&x);
        for side in [Subsystem::A, Subsystem::B] {
            let m = partial_trace(&dm, side);
            assert!((m.trace().re - 1.0).abs() <= 1e-12);
            assert!(m.0[0][0].re >= -1e-12 && m.0[1][1].re >= -1e-12);
            let det = m.0[0][0].re * m.0[1][1].re - m.0[0][1].norm_sqr();
            assert!(det >= -1e-12);
        }
        assert!((trace_norm(dm.matrix()).unwrap() - 1.0).abs() <= 1e-10);
    }
}

#[test]
fn model_hierarchy_holds_on_grid() {
    let mut steerable_unentangled = 0;
    let mut entangled_unsteerable = 0;
    let mut discordant_separable = 0;
    for wi in 0..=20 {
        for gi in 0..=20 {
            let (w, g) = (wi as f64 * 0.25, gi as f64 * 0.25);
            let Ok(p) = ModelParams::new(w, g) else { continue };
            for ti in 0..30 {
                let t = 0.01 * 1000f64.powf(ti as f64 / 29.0);
                let rep = evaluate(&p, t).unwrap();
                assert_eq!(rep.delta12, 0.0);
                assert_eq!(rep.s_ab, rep.s_ba);
                if rep.s_ab > 0.0 && rep.concurrence <= 0.0 {
                    steerable_unentangled += 1;
                }
                if rep.concurrence > 0.0 {
                    assert!(rep.gqd > 1e-12, "{rep:?}");
                    if rep.s_ab == 0.0 {
                        entangled_unsteerable += 1;
                    }
                } else if rep.gqd > 0.0 {
                    discordant_separable += 1;
                }
                assert!(rep.gqd >= 0.0 && rep.gqd <= 0.5 + 1e-12);
                assert!(rep.s_ab <= rep.concurrence + 1e-12, "{rep:?}");
            }
        }
    }
    assert_eq!(steerable_unentangled, 0);
    assert!(entangled_unsteerable > 0);
    assert!(discordant_separable > 0);
}

#[test]
fn gqd_on_pure_family() {
    for i in 0..=40 {
        let k = std::f64::consts::FRAC_PI_4 * i as f64 / 40.0;
        let (s, c) = k.sin_cos();
        let pure = XState::new(c * c, 0.0, 0.0, s * s, s * c, 0.0).unwrap();
        assert!((gqd(&pure) - (2.0 * k).sin() / 2.0).abs() <= 1e-12, "κ={k}");
    }
}

#[test]
fn gqd_on_werner_family() {
    // p |Φ+><Φ+| + (1−p) I/4 has trace-norm discord p/2
    for i in 0..=20 {
        let p = i as f64 / 20.0;
        let q = (1.0 - p) / 4.0;
        let w = XState::new(p / 2.0 + q, q, q, p / 2.0 + q, p / 2.0, 0.0).unwrap();
        assert!((gqd(&w) - p / 2.0).abs() <= 1e-14);
    }
}

#[test]
fn gqd_vanishes_on_classical_quantum_states() {
    let mut r = rng(10);
    for _ in 0..200 {
        let x = random_xstate(&mut r);
        let diag = XState::new(x.r11(), x.r22(), x.r33(), x.r44(), 0.0, 0.0).unwrap();
        assert_eq!(gqd(&diag), 0.0);
    }
}

#[test]
fn steering_formula_branches() {
    let mut r = rng(11);
    let scale = 8.0 / 3f64.sqrt();
    for _ in 0..1000 {
        let x = random_xstate(&mut r);
        let c = steering_coefficients(&x);
        let ab = (scale * (x.r14().powi(2) - c.f_a - c.f_b).max(x.r23().powi(2) - c.f_c - c.f_b)).max(0.0);
        let ba = (scale * (x.r14().powi(2) - c.f_a + c.f_b).max(x.r23().powi(2) - c.f_c + c.f_b)).max(0.0);
        assert_eq!(steering_a_to_b(&x), ab);
        assert_eq!(steering_b_to_a(&x), ba);
    }
}

proptest! {
    #[test]
    fn purity_falls_with_temperature(w in 0.0f64..5.0, g in 0.01f64..5.0, t0 in 0.01f64..1.0) {
        let p = ModelParams::new(w, g).unwrap();
        let mut prev = f64::INFINITY;
        for k in 0..20 {
            let t = t0 * 1.4f64.powi(k);
            let purity = gibbs_xstate(&p, t).unwrap().purity();
            prop_assert!(purity <= prev + 1e-12);
            prop_assert!(purity <= 1.0 + 1e-12);
            prev = purity;
        }
    }

    #[test]
    fn eigen_residuals_bounded(entries in prop::collection::vec(-10.0f64..10.0, 16)) {
        let mut m = Mat4::<f64>::zeros();
        let mut it = entries.into_iter();
        for i in 0..4 {
            m.0[i][i].re = it.next().unwrap();
            for j in i + 1..4 {
                let z = num_complex::Complex::new(it.next().unwrap(), it.next().unwrap());
                m.0[i][j] = z;
                m.0[j][i] = z.conj();
            }
        }
        let s = hermitian_eigensystem(&m).unwrap();
        prop_assert!(s.reconstruct().max_abs_diff(&m) <= 1e-10);
        prop_assert!(s.orthonormality_defect() <= 1e-10);
    }
}

#[test]
fn eigen_residuals_ten_thousand() {
    let mut r = rng(12);
    for _ in 0..10_000 {
        let mut m = Mat4::<f64>::zeros();
        for i in 0..4 {
            m.0[i][i].re = rand::Rng::gen_range(&mut r, -10.0..10.0);
            for j in i + 1..4 {
                let z = num_complex::Complex::new(
                    rand::Rng::gen_range(&mut r, -10.0..10.0),
                    rand::Rng::gen_range(&mut r, -10.0..10.0),
                );
                m.0[i][j] = z;
                m.0[j][i] = z.conj();
            }
        }
        let s = hermitian_eigensystem(&m).unwrap();
        assert!(s.reconstruct().max_abs_diff(&m) <= 1e-10);
        assert!(s.orthonormality_defect() <= 1e-10);
    }
}
