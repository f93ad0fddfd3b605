#![allow(dead_code)]

use gravcat::model::{ModelParams, XState};
use gravcat::linalg::{Mat2, Mat4};
use num_complex::Complex;
use rand::Rng;

/// X state with populations drawn flat on the simplex and real coherences
/// uniform inside their positivity intervals.
pub fn random_xstate<G: Rng>(rng: &mut G) -> XState<f64> {
    let e: Vec<f64> = (0..4).map(|_| -rng.gen::<f64>().max(1e-300).ln()).collect();
    let sum: f64 = e.iter().sum();
    let p: Vec<f64> = e.iter().map(|x| x / sum).collect();
    let b14 = (p[0] * p[3]).sqrt();
    let b23 = (p[1] * p[2]).sqrt();
    let r14 = rng.gen_range(-1.0..=1.0) * b14;
    let r23 = rng.gen_range(-1.0..=1.0) * b23;
    XState::new(p[0], p[1], p[2], p[3], r14, r23).expect("sampled state is valid")
}

pub fn random_params<G: Rng>(rng: &mut G, max: f64) -> ModelParams<f64> {
    loop {
        let w = rng.gen_range(0.0..=max);
        let g = rng.gen_range(0.0..=max);
        if let Ok(p) = ModelParams::new(w, g) {
            return p;
        }
    }
}

/// Random single-qubit unitary `e^{ic} [[α, β], [−β*, α*]]`.
pub fn random_unitary<G: Rng>(rng: &mut G) -> Mat2<f64> {
    let tau = std::f64::consts::TAU;
    let (a, b, c) = (rng.gen_range(0.0..tau), rng.gen_range(0.0..tau), rng.gen_range(0.0..tau));
    let theta = rng.gen::<f64>().sqrt().asin();
    let (s, co) = theta.sin_cos();
    let e = |phi: f64| Complex::from_polar(1.0, phi);
    let g = e(c);
    Mat2([
        [g * e(a) * co, g * e(b) * s],
        [-g * e(-b) * s, g * e(-a) * co],
    ])
}

pub fn max_entry_error(a: &XState<f64>, m: &Mat4<f64>) -> f64 {
    a.to_matrix().max_abs_diff(m)
}
