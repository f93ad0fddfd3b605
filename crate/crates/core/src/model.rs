//! Two gravitationally coupled double-well qubits: Hamiltonian, exact
//! spectrum and the thermal (Gibbs) state in closed form.
//!
//! Units: `ħ = k_B = 1`, so temperature, `omega` and `gamma` share one
//! dimensionless energy scale.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Mat4;
use crate::scalar::Real;

/// Excitation energy `omega` and gravitational coupling `gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ModelParams<R> {
    omega: R,
    gamma: R,
}

impl<R: Real> ModelParams<R> {
    /// Both energies must be finite and non-negative, and not both zero.
    pub fn new(omega: R, gamma: R) -> Result<Self> {
        if !omega.is_finite() || omega < R::zero() {
            return Err(Error::param("omega", format!("must be finite and >= 0, got {omega}")));
        }
        if !gamma.is_finite() || gamma < R::zero() {
            return Err(Error::param("gamma", format!("must be finite and >= 0, got {gamma}")));
        }
        if omega.is_zero() && gamma.is_zero() {
            return Err(Error::param("gamma", "omega and gamma cannot both be zero"));
        }
        Ok(Self { omega, gamma })
    }

    pub fn omega(&self) -> R {
        self.omega
    }

    pub fn gamma(&self) -> R {
        self.gamma
    }

    /// `sqrt(omega² + gamma²)`, the magnitude of the even-parity energies.
    pub fn even_gap(&self) -> R {
        self.omega.hypot(self.gamma)
    }
}

/// Double-well geometry from which the coupling energy follows.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalGeometry<R> {
    /// Gravitational constant.
    pub g: R,
    /// Particle mass.
    pub m: R,
    /// Equilibrium separation between the wells.
    pub d1: R,
    /// Transverse spacing of the two minima.
    pub d: R,
}

impl<R: Real> PhysicalGeometry<R> {
    pub fn new(g: R, m: R, d1: R, d: R) -> Result<Self> {
        for (name, v) in [("G", g), ("m", m), ("d1", d1), ("d", d)] {
            if !v.is_finite() || v <= R::zero() {
                return Err(Error::param(name, format!("must be finite and > 0, got {v}")));
            }
        }
        Ok(Self { g, m, d1, d })
    }

    /// Diagonal separation `sqrt(d1² + d²)`.
    pub fn d2(&self) -> R {
        self.d1.hypot(self.d)
    }
}

/// Coupling energy `G m² / 2 · (1/d1 − 1/d2)`.
pub fn gamma_from_geometry<R: Real>(geo: &PhysicalGeometry<R>) -> Result<R> {
    let geo = PhysicalGeometry::new(geo.g, geo.m, geo.d1, geo.d)?;
    let half = R::lit(0.5);
    Ok(half * geo.g * geo.m * geo.m * (geo.d1.recip() - geo.d2().recip()))
}

/// Exact spectrum of the Hamiltonian.
///
/// `energies = [λ1, λ2, λ3, λ4] = [−γ, γ, −√(γ²+ω²), √(γ²+ω²)]`. The odd-parity
/// eigenvectors are the Bell states `(|01> ± |10>)/√2`; the even-parity pair is
/// parametrised by the mixing angles `kappa_plus` and `kappa_minus`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenSystem<R> {
    pub energies: [R; 4],
    /// `arctan(γ / (ω + √(ω²+γ²)))`, in `[0, π/4]`.
    pub kappa_plus: R,
    /// `arctan(γ / (ω − √(ω²+γ²)))`, in `[−π/2, 0)`. Taken as `−π/2` at `γ = 0`.
    pub kappa_minus: R,
}

impl<R: Real> EigenSystem<R> {
    /// Ground-state energy `λ3`.
    pub fn ground_energy(&self) -> R {
        self.energies[2]
    }
}

/// The Hamiltonian `ω/2 (σz⊗I + I⊗σz) − γ σx⊗σx` in the computational basis.
pub fn build_hamiltonian<R: Real>(p: &ModelParams<R>) -> Mat4<R> {
    let (w, g, o) = (p.omega, p.gamma, R::zero());
    Mat4::from_real([
        [w, o, o, -g],
        [o, o, -g, o],
        [o, -g, o, o],
        [-g, o, o, -w],
    ])
}

pub fn eigensystem<R: Real>(p: &ModelParams<R>) -> EigenSystem<R> {
    let (w, g) = (p.omega, p.gamma);
    let r = p.even_gap();
    // ω − r = −γ²/(ω + r) avoids cancellation; γ = 0 gives atan(+∞) = π/2.
    let kappa_minus = if g.is_zero() {
        -R::FRAC_PI_2()
    } else {
        -((w + r) / g).atan()
    };
    EigenSystem {
        energies: [-g, g, -r, r],
        kappa_plus: (g / (w + r)).atan(),
        kappa_minus,
    }
}

fn check_temperature<R: Real>(temp: R) -> Result<R> {
    if !(temp > R::zero()) || temp.is_infinite() {
        return Err(Error::param("temp", format!("must be finite and > 0, got {temp}")));
    }
    Ok(temp)
}

/// Boltzmann weights `exp(−β(λᵢ − λ3))` relative to the ground level, and their sum.
fn shifted_weights<R: Real>(p: &ModelParams<R>, beta: R) -> ([R; 4], R) {
    let r = p.even_gap();
    let g = p.gamma;
    let w = [
        (-beta * (r - g)).exp(),
        (-beta * (r + g)).exp(),
        R::one(),
        (-(beta + beta) * r).exp(),
    ];
    (w, w.iter().copied().sum())
}

/// `Z = Tr e^{−βH} = 2cosh(βγ) + 2cosh(β√(ω²+γ²))`.
///
/// Overflows to `+∞` for very low temperatures; see [`log_partition_function`].
pub fn partition_function<R: Real>(p: &ModelParams<R>, temp: R) -> Result<R> {
    Ok(log_partition_function(p, temp)?.exp())
}

/// `ln Z`, finite for any positive temperature.
pub fn log_partition_function<R: Real>(p: &ModelParams<R>, temp: R) -> Result<R> {
    let beta = check_temperature(temp)?.recip();
    let (_, sum) = shifted_weights(p, beta);
    Ok(beta * p.even_gap() + sum.ln())
}

/// Thermal state `e^{−βH}/Z` at temperature `temp`.
pub fn gibbs_xstate<R: Real>(p: &ModelParams<R>, temp: R) -> Result<XState<R>> {
    let beta = check_temperature(temp)?.recip();
    let eig = eigensystem(p);
    let ([w1, w2, w3, w4], z) = shifted_weights(p, beta);
    let (sp, cp) = eig.kappa_plus.sin_cos();
    let two = R::lit(2.0);
    // |ψ3> = sin κ+ |00> + cos κ+ |11> is the ground level of the matrix above,
    // |ψ4> = sin κ− |00> + cos κ− |11> the top level, with κ− = κ+ − π/2.
    let r11 = (sp * sp * w3 + cp * cp * w4) / z;
    let r44 = (cp * cp * w3 + sp * sp * w4) / z;
    let r14 = sp * cp * (w3 - w4) / z;
    let r22 = (w1 + w2) / (two * z);
    let r23 = (w1 - w2) / (two * z);
    Ok(XState::from_entries_unchecked(r11, r22, r22, r44, r14, r23))
}

/// Zero-temperature limit: the pure ground projector.
///
/// Requires `omega > 0`; at `omega = 0` the ground level is doubly degenerate.
pub fn ground_state<R: Real>(p: &ModelParams<R>) -> Result<XState<R>> {
    if !(p.omega > R::zero()) {
        return Err(Error::param(
            "omega",
            "ground level is degenerate at omega = 0; use gibbs_xstate at small temperature",
        ));
    }
    let (s, c) = eigensystem(p).kappa_plus.sin_cos();
    let o = R::zero();
    Ok(XState::from_entries_unchecked(s * s, o, o, c * c, s * c, o))
}

/// Two-qubit X state with real coherences.
///
/// ```text
/// ⎛ r11  0    0    r14 ⎞
/// ⎜ 0    r22  r23  0   ⎟
/// ⎜ 0    r23  r33  0   ⎟
/// ⎝ r14  0    0    r44 ⎠
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct XState<R> {
    r11: R,
    r22: R,
    r33: R,
    r44: R,
    r14: R,
    r23: R,
}

impl<R: Real> XState<R> {
    /// Validates trace, positivity and purity within [`Real::STATE_TOL`].
    pub fn new(r11: R, r22: R, r33: R, r44: R, r14: R, r23: R) -> Result<Self> {
        let s = Self::from_entries_unchecked(r11, r22, r33, r44, r14, r23);
        s.validate()?;
        Ok(s)
    }

    pub(crate) fn from_entries_unchecked(r11: R, r22: R, r33: R, r44: R, r14: R, r23: R) -> Self {
        Self {
            r11,
            r22,
            r33,
            r44,
            r14,
            r23,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let tol = R::state_tol();
        let entries = [self.r11, self.r22, self.r33, self.r44, self.r14, self.r23];
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidState(format!("non-finite entry in {self:?}")));
        }
        let trace = self.r11 + self.r22 + self.r33 + self.r44;
        if (trace - R::one()).abs() > tol {
            return Err(Error::InvalidState(format!("trace {trace} != 1")));
        }
        for (name, v) in [("r11", self.r11), ("r22", self.r22), ("r33", self.r33), ("r44", self.r44)] {
            if v < -tol {
                return Err(Error::InvalidState(format!("negative population {name} = {v}")));
            }
        }
        if self.r11 * self.r44 < self.r14 * self.r14 - tol {
            return Err(Error::InvalidState("r11·r44 < r14²".into()));
        }
        if self.r22 * self.r33 < self.r23 * self.r23 - tol {
            return Err(Error::InvalidState("r22·r33 < r23²".into()));
        }
        let purity = self.purity();
        if purity > R::one() + tol {
            return Err(Error::InvalidState(format!("purity {purity} > 1")));
        }
        Ok(())
    }

    pub fn maximally_mixed() -> Self {
        let q = R::lit(0.25);
        Self::from_entries_unchecked(q, q, q, q, R::zero(), R::zero())
    }

    /// `(|00> + |11>)/√2`.
    pub fn bell_phi_plus() -> Self {
        let h = R::lit(0.5);
        let o = R::zero();
        Self::from_entries_unchecked(h, o, o, h, h, o)
    }

    pub fn r11(&self) -> R {
        self.r11
    }
    pub fn r22(&self) -> R {
        self.r22
    }
    pub fn r33(&self) -> R {
        self.r33
    }
    pub fn r44(&self) -> R {
        self.r44
    }
    pub fn r14(&self) -> R {
        self.r14
    }
    pub fn r23(&self) -> R {
        self.r23
    }

    pub fn populations(&self) -> [R; 4] {
        [self.r11, self.r22, self.r33, self.r44]
    }

    /// `Tr ϱ²`.
    pub fn purity(&self) -> R {
        let two = R::lit(2.0);
        self.populations().iter().map(|&p| p * p).sum::<R>()
            + two * (self.r14 * self.r14 + self.r23 * self.r23)
    }

    /// Diagonal of `Tr_B ϱ`.
    pub fn reduced_a(&self) -> [R; 2] {
        [self.r11 + self.r22, self.r33 + self.r44]
    }

    /// Diagonal of `Tr_A ϱ`.
    pub fn reduced_b(&self) -> [R; 2] {
        [self.r11 + self.r33, self.r22 + self.r44]
    }

    /// Embeds the state as a full 4×4 matrix.
    pub fn to_matrix(&self) -> Mat4<R> {
        let o = R::zero();
        Mat4::from_real([
            [self.r11, o, o, self.r14],
            [o, self.r22, self.r23, o],
            [o, self.r23, self.r33, o],
            [self.r14, o, o, self.r44],
        ])
    }

    /// Reads the X entries of a matrix. Fails if any entry outside the X pattern
    /// or any imaginary part exceeds the state tolerance.
    pub fn from_matrix(m: &Mat4<R>) -> Result<Self> {
        let tol = R::state_tol();
        for i in 0..4 {
            for j in 0..4 {
                let on_x = i == j || i + j == 3;
                if (!on_x && m.0[i][j].norm() > tol) || m.0[i][j].im.abs() > tol {
                    return Err(Error::InvalidState(format!(
                        "entry ({i},{j}) = {} breaks the real X pattern",
                        m.0[i][j]
                    )));
                }
            }
        }
        Self::new(m.0[0][0].re, m.0[1][1].re, m.0[2][2].re, m.0[3][3].re, m.0[0][3].re, m.0[1][2].re)
    }
}
