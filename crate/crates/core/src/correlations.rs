//! Closed-form correlation measures of a two-qubit X state: steerability in
//! both directions, steering asymmetry, concurrence and trace-norm geometric
//! discord.
//!
//! Every function accepts any valid [`XState`], not only thermal states of the
//! model, so the oracle suites can sample the whole X-state family.

use serde::Serialize;

use crate::error::Result;
use crate::model::{gibbs_xstate, ModelParams, XState};
use crate::scalar::Real;

/// Coefficients of the steering inequalities plus the mixing constants of the
/// `B → A` steered state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SteeringCoefficients<R> {
    pub f_a: R,
    pub f_b: R,
    pub f_c: R,
    /// `(3−√3)/6 · (r11 + r22)`
    pub a: R,
    /// `(3−√3)/6 · (r33 + r44)`
    pub b: R,
}

/// Non-vanishing Pauli-basis correlation components `R_{μν} = Tr[(σ_μ⊗σ_ν) ϱ]`
/// of an X state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FanoBloch<R> {
    pub r11: R,
    pub r22: R,
    pub r33: R,
    /// `⟨I ⊗ σz⟩`
    pub r03: R,
    /// `⟨σz ⊗ I⟩`
    pub r30: R,
}

/// All measures at one `(omega, gamma, temp)` point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CorrelationReport<R> {
    pub temp: R,
    pub gamma: R,
    pub omega: R,
    pub s_ab: R,
    pub s_ba: R,
    pub delta12: R,
    pub concurrence: R,
    pub gqd: R,
}

impl<R: Real> CorrelationReport<R> {
    /// Report for the state at `(omega, gamma, temp)`, measures computed from `rho`.
    pub fn from_state(omega: R, gamma: R, temp: R, rho: &XState<R>) -> Self {
        let s_ab = steering_a_to_b(rho);
        let s_ba = steering_b_to_a(rho);
        Self {
            temp,
            gamma,
            omega,
            s_ab,
            s_ba,
            delta12: (s_ab - s_ba).abs(),
            concurrence: concurrence_x(rho),
            gqd: gqd(rho),
        }
    }
}

/// `1/√3` weight of the original state in the steered states.
fn inv_sqrt3<R: Real>() -> R {
    R::sqrt3().recip()
}

/// `(1/√3) ϱ + (1 − 1/√3) (I/2 ⊗ ϱ_B)`.
pub fn steered_state_a_to_b<R: Real>(rho: &XState<R>) -> XState<R> {
    let k = inv_sqrt3::<R>();
    let mix = (R::one() - k) * R::lit(0.5);
    let [b0, b1] = rho.reduced_b();
    XState::from_entries_unchecked(
        k * rho.r11() + mix * b0,
        k * rho.r22() + mix * b1,
        k * rho.r33() + mix * b0,
        k * rho.r44() + mix * b1,
        k * rho.r14(),
        k * rho.r23(),
    )
}

/// `(1/√3) ϱ + (1 − 1/√3) (ϱ_A ⊗ I/2)`: populations shifted by `a` (first
/// qubit up) and `b` (first qubit down), coherences scaled by `1/√3`.
pub fn steered_state_b_to_a<R: Real>(rho: &XState<R>) -> XState<R> {
    let k = inv_sqrt3::<R>();
    let SteeringCoefficients { a, b, .. } = steering_coefficients(rho);
    XState::from_entries_unchecked(
        k * rho.r11() + a,
        k * rho.r22() + a,
        k * rho.r33() + b,
        k * rho.r44() + b,
        k * rho.r14(),
        k * rho.r23(),
    )
}

pub fn steering_coefficients<R: Real>(rho: &XState<R>) -> SteeringCoefficients<R> {
    let [r11, r22, r33, r44] = rho.populations();
    let half = R::lit(0.5);
    let quarter = R::lit(0.25);
    let two = R::lit(2.0);
    let s3 = R::sqrt3();
    let lo = (two - s3) * half;
    let hi = (two + s3) * half;
    let cross = quarter * (r11 + r44) * (r22 + r33);
    let mix = (R::lit(3.0) - s3) / R::lit(6.0);
    SteeringCoefficients {
        f_a: lo * r11 * r44 + hi * r22 * r33 + cross,
        f_b: quarter * (r11 - r44) * (r22 - r33),
        f_c: hi * r11 * r44 + lo * r22 * r33 + cross,
        a: mix * (r11 + r22),
        b: mix * (r33 + r44),
    }
}

fn steerability<R: Real>(rho: &XState<R>, f_b_sign: R) -> R {
    let c = steering_coefficients(rho);
    let fb = f_b_sign * c.f_b;
    let outer = rho.r14() * rho.r14() - c.f_a + fb;
    let inner = rho.r23() * rho.r23() - c.f_c + fb;
    let scale = R::lit(8.0) / R::sqrt3();
    (scale * outer.max(inner)).max(R::zero())
}

/// `S_{A→B} = max{0, 8/√3 · max[|r14|² − f_a − f_b, |r23|² − f_c − f_b]}`.
pub fn steering_a_to_b<R: Real>(rho: &XState<R>) -> R {
    steerability(rho, -R::one())
}

/// `S_{B→A} = max{0, 8/√3 · max[|r14|² − f_a + f_b, |r23|² − f_c + f_b]}`.
pub fn steering_b_to_a<R: Real>(rho: &XState<R>) -> R {
    steerability(rho, R::one())
}

/// `Δ12 = |S_{A→B} − S_{B→A}|`.
pub fn steering_asymmetry<R: Real>(rho: &XState<R>) -> R {
    (steering_a_to_b(rho) - steering_b_to_a(rho)).abs()
}

/// `C = 2 max{|r23| − √(r11 r44), |r14| − √(r22 r33), 0}`.
pub fn concurrence_x<R: Real>(rho: &XState<R>) -> R {
    let zero = R::zero();
    let outer = rho.r23().abs() - (rho.r11() * rho.r44()).max(zero).sqrt();
    let inner = rho.r14().abs() - (rho.r22() * rho.r33()).max(zero).sqrt();
    (R::lit(2.0) * outer.max(inner)).max(zero)
}

pub fn fano_bloch<R: Real>(rho: &XState<R>) -> FanoBloch<R> {
    let two = R::lit(2.0);
    let one = R::one();
    let [r11, r22, r33, _] = rho.populations();
    FanoBloch {
        r11: two * (rho.r23() + rho.r14()),
        r22: two * (rho.r23() - rho.r14()),
        r33: one - two * (r22 + r33),
        r03: two * (r11 + r33) - one,
        r30: two * (r11 + r22) - one,
    }
}

/// Trace-norm (Schatten 1-norm) geometric discord, measured on qubit A.
///
/// ```text
/// Q = ½ √[(R11² M − R22² m) / (M − m + R11² − R22²)]
/// M = max{R22² + R30², R33²},  m = min{R11², R33²}
/// ```
///
/// with `|R11| ≥ |R22|` (a local phase swaps the two, so they are ordered
/// first). The ratio is evaluated as `R11² − d (R11² − m) / (M − m + d)` with
/// `d = R11² − R22² = 16 |r14 r23|`, which is algebraically identical but
/// has no 0/0 on Bell-diagonal states with `|R11| = |R22| = |R33|`, where
/// `Q = |R11| / 2`.
pub fn gqd<R: Real>(rho: &XState<R>) -> R {
    let fb = fano_bloch(rho);
    let (r11_sq, r22_sq) = (fb.r11 * fb.r11, fb.r22 * fb.r22);
    let (x2, y2) = (r11_sq.max(r22_sq), r11_sq.min(r22_sq));
    let (z2, a2) = (fb.r33 * fb.r33, fb.r30 * fb.r30);
    let big = (y2 + a2).max(z2);
    let small = x2.min(z2);
    let d = R::lit(16.0) * (rho.r14() * rho.r23()).abs();
    let den = (big - small).max(R::zero()) + d;
    let ratio = if d.is_zero() || den < R::degenerate_tol() {
        x2
    } else {
        x2 - d * (x2 - small) / den
    };
    R::lit(0.5) * ratio.max(R::zero()).sqrt()
}

/// Builds the thermal state and evaluates every measure.
pub fn evaluate<R: Real>(p: &ModelParams<R>, temp: R) -> Result<CorrelationReport<R>> {
    let rho = gibbs_xstate(p, temp)?;
    Ok(CorrelationReport::from_state(p.omega(), p.gamma(), temp, &rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn bell() -> XState<f64> {
        XState::bell_phi_plus()
    }

    fn mixed() -> XState<f64> {
        XState::maximally_mixed()
    }

    fn asymmetric() -> XState<f64> {
        XState::new(0.6, 0.08, 0.02, 0.3, 0.42, 0.0).unwrap()
    }

    fn assert_state_eq(a: &XState<f64>, b: &XState<f64>, tol: f64) {
        let (x, y) = (a.populations(), b.populations());
        for i in 0..4 {
            assert!((x[i] - y[i]).abs() <= tol, "{a:?} vs {b:?}");
        }
        assert!((a.r14() - b.r14()).abs() <= tol, "{a:?} vs {b:?}");
        assert!((a.r23() - b.r23()).abs() <= tol, "{a:?} vs {b:?}");
    }

    #[test]
    fn steered_states_fix_maximally_mixed() {
        assert_state_eq(&steered_state_a_to_b(&mixed()), &mixed(), 1e-15);
        assert_state_eq(&steered_state_b_to_a(&mixed()), &mixed(), 1e-15);
    }

    #[test]
    fn steered_bell_state() {
        let k = 1.0 / 3f64.sqrt();
        let out = steered_state_a_to_b(&bell());
        assert_relative_eq!(out.r11(), k * 0.5 + (1.0 - k) * 0.25, epsilon = 1e-15);
        assert_relative_eq!(out.r44(), out.r11(), epsilon = 1e-15);
        assert_relative_eq!(out.r14(), 1.0 / (2.0 * 3f64.sqrt()), epsilon = 1e-15);
        assert_relative_eq!(out.r22(), (1.0 - k) / 4.0, epsilon = 1e-15);
        assert_relative_eq!(out.r33(), (1.0 - k) / 4.0, epsilon = 1e-15);

        let c = steering_coefficients(&bell());
        let expected = (3.0 - 3f64.sqrt()) / 12.0;
        assert_relative_eq!(c.a, expected, epsilon = 1e-15);
        assert_relative_eq!(c.b, expected, epsilon = 1e-15);
        let out = steered_state_b_to_a(&bell());
        assert_relative_eq!(out.r11(), 3f64.sqrt() / 3.0 * 0.5 + expected, epsilon = 1e-15);
        assert_relative_eq!(out.r22(), expected, epsilon = 1e-15);
        out.validate().unwrap();
    }

    #[test]
    fn product_states_with_a_maximally_mixed_factor_are_fixed() {
        let p = 0.3;
        // diag(p, 1−p) ⊗ I/2
        let s = XState::new(p / 2.0, p / 2.0, (1.0 - p) / 2.0, (1.0 - p) / 2.0, 0.0, 0.0).unwrap();
        assert_state_eq(&steered_state_b_to_a(&s), &s, 1e-15);
        // I/2 ⊗ diag(p, 1−p)
        let s = XState::new(p / 2.0, (1.0 - p) / 2.0, p / 2.0, (1.0 - p) / 2.0, 0.0, 0.0).unwrap();
        assert_state_eq(&steered_state_a_to_b(&s), &s, 1e-15);
    }

    #[test]
    fn coefficients_examples() {
        let c = steering_coefficients(&mixed());
        assert_relative_eq!(c.f_a, 3.0 / 16.0, epsilon = 1e-15);
        assert_relative_eq!(c.f_c, 3.0 / 16.0, epsilon = 1e-15);
        assert_eq!(c.f_b, 0.0);
        assert_relative_eq!(c.a + c.b, (3.0 - 3f64.sqrt()) / 6.0, epsilon = 1e-15);

        let c = steering_coefficients(&bell());
        assert_relative_eq!(c.f_a, (2.0 - 3f64.sqrt()) / 8.0, epsilon = 1e-15);
        assert_relative_eq!(c.f_c, (2.0 + 3f64.sqrt()) / 8.0, epsilon = 1e-15);
        assert_eq!(c.f_b, 0.0);

        let c = steering_coefficients(&asymmetric());
        assert_relative_eq!(c.f_b, 0.25 * 0.3 * 0.06, epsilon = 1e-15);
    }

    #[test]
    fn steering_examples() {
        assert_eq!(steering_a_to_b(&mixed()), 0.0);
        assert_eq!(steering_b_to_a(&mixed()), 0.0);
        assert_eq!(steering_asymmetry(&mixed()), 0.0);
        assert_relative_eq!(steering_a_to_b(&bell()), 1.0, epsilon = 1e-14);
        assert_relative_eq!(steering_b_to_a(&bell()), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn asymmetric_state_steers_one_way_harder() {
        let s = asymmetric();
        let c = steering_coefficients(&s);
        let scale = 8.0 / 3f64.sqrt();
        let r14 = 0.42f64 * 0.42;
        let ab_branch = (r14 - c.f_a - c.f_b).max(-c.f_c - c.f_b);
        let ba_branch = (r14 - c.f_a + c.f_b).max(-c.f_c + c.f_b);
        let ab = steering_a_to_b(&s);
        let ba = steering_b_to_a(&s);
        assert_relative_eq!(ab, (scale * ab_branch).max(0.0), epsilon = 1e-15);
        assert_relative_eq!(ba, (scale * ba_branch).max(0.0), epsilon = 1e-15);
        assert!(ba > ab);
        assert_relative_eq!(steering_asymmetry(&s), (ab - ba).abs(), epsilon = 1e-15);
        assert!(ab > 0.0);
        assert_relative_eq!(ba - ab, scale * 2.0 * c.f_b.abs(), epsilon = 1e-14);
    }

    #[test]
    fn weakly_coherent_asymmetric_state_does_not_steer() {
        // both branches negative: r14² = 0.04 < f_a ± f_b
        let s = XState::new(0.5, 0.3, 0.1, 0.1, 0.2, 0.1).unwrap();
        let c = steering_coefficients(&s);
        assert_relative_eq!(c.f_b, 0.25 * 0.4 * 0.2, epsilon = 1e-15);
        assert!(0.04 - c.f_a + c.f_b < 0.0 && 0.01 - c.f_c + c.f_b < 0.0);
        assert_eq!(steering_a_to_b(&s), 0.0);
        assert_eq!(steering_b_to_a(&s), 0.0);
        assert_eq!(steering_asymmetry(&s), 0.0);
    }

    #[test]
    fn concurrence_examples() {
        assert_relative_eq!(concurrence_x(&bell()), 1.0, epsilon = 1e-15);
        assert_eq!(concurrence_x(&mixed()), 0.0);
        let p = ModelParams::new(1.0, 1.0).unwrap();
        let g = crate::model::ground_state(&p).unwrap();
        assert_relative_eq!(concurrence_x(&g), std::f64::consts::FRAC_1_SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn fano_bloch_examples() {
        let f = fano_bloch(&mixed());
        for v in [f.r11, f.r22, f.r33, f.r03, f.r30] {
            assert_eq!(v, 0.0);
        }
        let f = fano_bloch(&bell());
        assert_eq!((f.r11, f.r22, f.r33, f.r03, f.r30), (1.0, -1.0, 1.0, 0.0, 0.0));
    }

    #[test]
    fn gqd_examples() {
        assert_eq!(gqd(&mixed()), 0.0);
        assert_relative_eq!(gqd(&bell()), 0.5, epsilon = 1e-15);
        let k = std::f64::consts::FRAC_PI_8;
        let (s, c) = k.sin_cos();
        let pure = XState::new(c * c, 0.0, 0.0, s * s, s * c, 0.0).unwrap();
        assert_relative_eq!(gqd(&pure), (2.0 * k).sin() / 2.0, epsilon = 1e-14);
        assert_relative_eq!(gqd(&pure), 0.35355, epsilon = 1e-5);
    }

    #[test]
    fn classical_states_have_no_discord() {
        let s = XState::new(0.4, 0.1, 0.2, 0.3, 0.0, 0.0).unwrap();
        assert_eq!(gqd(&s), 0.0);
        assert_eq!(concurrence_x(&s), 0.0);
    }

    #[test]
    fn evaluate_examples() {
        let p = ModelParams::new(1.0, 2.0).unwrap();
        let r = evaluate(&p, 0.1).unwrap();
        assert_eq!(r.s_ab, r.s_ba);
        assert_eq!(r.delta12, 0.0);
        assert!(r.s_ab > 0.0);

        let r = evaluate(&p, 0.5).unwrap();
        assert!(r.concurrence > 0.0);
        assert_eq!(r.s_ab, 0.0);

        let r = evaluate(&p, 2.0).unwrap();
        assert_eq!(r.concurrence, 0.0);
        assert!(r.gqd > 0.0);
        assert_eq!((r.omega, r.gamma, r.temp), (1.0, 2.0, 2.0));
    }

    #[test]
    fn plateau_value_at_low_temperature() {
        let r = evaluate(&ModelParams::new(1.4f64, 1.0).unwrap(), 0.01).unwrap();
        assert!((r.s_ab - 0.34).abs() < 0.01, "{}", r.s_ab);
    }
}
