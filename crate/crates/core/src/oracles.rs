//! Brute-force two-qubit linear algebra.
//!
//! Nothing here knows about X states or closed forms: these routines work on
//! general 4×4 complex matrices and exist to cross-check [`crate::model`] and
//! [`crate::correlations`].

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{pauli, Mat2, Mat4};
use crate::model::XState;
use crate::scalar::Real;

const MAX_SWEEPS: usize = 64;

/// Validated two-qubit density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix4<R>(Mat4<R>);

impl<R: Real> DensityMatrix4<R> {
    /// Checks Hermiticity, unit trace and positive semidefiniteness.
    pub fn new(m: Mat4<R>) -> Result<Self> {
        let tol = R::state_tol();
        let defect = m.hermiticity_defect();
        if defect > tol {
            return Err(Error::InvalidMatrix(format!("not Hermitian (defect {defect})")));
        }
        let tr = m.trace();
        if (tr.re - R::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidMatrix(format!("trace {tr} != 1")));
        }
        let spec = hermitian_eigensystem(&m)?;
        let floor = -tol * R::lit(100.0);
        if spec.eigenvalues[0] < floor {
            return Err(Error::InvalidMatrix(format!(
                "negative eigenvalue {}",
                spec.eigenvalues[0]
            )));
        }
        Ok(Self(m))
    }

    pub fn from_xstate(x: &XState<R>) -> Self {
        Self(x.to_matrix())
    }

    pub fn matrix(&self) -> &Mat4<R> {
        &self.0
    }

    pub fn into_matrix(self) -> Mat4<R> {
        self.0
    }
}

/// Ascending eigenvalues with orthonormal eigenvectors stored as columns.
#[derive(Clone, Copy, Debug)]
pub struct Spectrum4<R> {
    pub eigenvalues: [R; 4],
    pub eigenvectors: Mat4<R>,
}

impl<R: Real> Spectrum4<R> {
    /// `V diag(f(λ)) V†`.
    pub fn map(&self, f: impl Fn(R) -> R) -> Mat4<R> {
        let d = Mat4::diagonal(self.eigenvalues.map(f));
        self.eigenvectors * d * self.eigenvectors.adjoint()
    }

    pub fn reconstruct(&self) -> Mat4<R> {
        self.map(|x| x)
    }

    /// `max |V†V − I|`.
    pub fn orthonormality_defect(&self) -> R {
        (self.eigenvectors.adjoint() * self.eigenvectors).max_abs_diff(&Mat4::identity())
    }
}

/// Cyclic complex Jacobi diagonalisation of a Hermitian matrix.
///
/// Each pivot is first phase-rotated onto the positive real axis, then
/// annihilated by a real Givens rotation.
pub fn hermitian_eigensystem<R: Real>(m: &Mat4<R>) -> Result<Spectrum4<R>> {
    let scale = m.max_abs().max(R::one());
    let defect = m.hermiticity_defect();
    if defect > R::state_tol() * scale {
        return Err(Error::InvalidMatrix(format!("not Hermitian (defect {defect})")));
    }
    let n = 4;
    let mut a = *m;
    let mut v = Mat4::<R>::identity();
    let eps = R::epsilon();
    let norm = a.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        let off: R = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a.0[p][q].norm_sqr())
            .sum();
        if off.sqrt() <= eps * norm * R::lit(0.01) {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a.0[p][q];
                let mag = apq.norm();
                if mag.is_zero() {
                    continue;
                }
                let phase = apq / mag;
                let phase_c = phase.conj();
                for k in 0..n {
                    a.0[k][q] = a.0[k][q] * phase_c;
                    v.0[k][q] = v.0[k][q] * phase_c;
                }
                for k in 0..n {
                    a.0[q][k] = a.0[q][k] * phase;
                }

                let tau = (a.0[q][q].re - a.0[p][p].re) / (mag + mag);
                let t = if tau >= R::zero() {
                    (tau + (R::one() + tau * tau).sqrt()).recip()
                } else {
                    -(-tau + (R::one() + tau * tau).sqrt()).recip()
                };
                let c = (R::one() + t * t).sqrt().recip();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a.0[k][p], a.0[k][q]);
                    a.0[k][p] = akp * c - akq * s;
                    a.0[k][q] = akp * s + akq * c;
                    let (vkp, vkq) = (v.0[k][p], v.0[k][q]);
                    v.0[k][p] = vkp * c - vkq * s;
                    v.0[k][q] = vkp * s + vkq * c;
                }
                for k in 0..n {
                    let (apk, aqk) = (a.0[p][k], a.0[q][k]);
                    a.0[p][k] = apk * c - aqk * s;
                    a.0[q][k] = apk * s + aqk * c;
                }
                a.0[p][q] = Complex::zero();
                a.0[q][p] = Complex::zero();
                a.0[p][p].im = R::zero();
                a.0[q][q].im = R::zero();
            }
        }
    }

    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| a.0[i][i].re.partial_cmp(&a.0[j][j].re).expect("finite eigenvalues"));
    let mut eigenvectors = Mat4::zeros();
    for (dst, &src) in order.iter().enumerate() {
        for k in 0..n {
            eigenvectors.0[k][dst] = v.0[k][src];
        }
    }
    Ok(Spectrum4 {
        eigenvalues: order.map(|i| a.0[i][i].re),
        eigenvectors,
    })
}

/// `exp(scale · m)` for Hermitian `m`.
pub fn matrix_exponential<R: Real>(m: &Mat4<R>, scale: R) -> Result<Mat4<R>> {
    Ok(hermitian_eigensystem(m)?.map(|x| (scale * x).exp()))
}

/// `e^{−βH} / Tr e^{−βH}`, with the ground energy subtracted before
/// exponentiating.
pub fn thermal_state<R: Real>(h: &Mat4<R>, beta: R) -> Result<Mat4<R>> {
    let spec = hermitian_eigensystem(h)?;
    let ground = spec.eigenvalues[0];
    let unnormalised = spec.map(|x| (-beta * (x - ground)).exp());
    let z = unnormalised.trace().re;
    Ok(unnormalised.scale(z.recip()))
}

/// Sum of absolute eigenvalues.
pub fn trace_norm<R: Real>(m: &Mat4<R>) -> Result<R> {
    Ok(hermitian_eigensystem(m)?.eigenvalues.iter().map(|x| x.abs()).sum())
}

/// Which qubit to trace out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Reduced state after tracing out `traced`.
pub fn partial_trace<R: Real>(rho: &DensityMatrix4<R>, traced: Subsystem) -> Mat2<R> {
    let m = rho.matrix();
    let mut out = Mat2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            out.0[i][j] = (0..2)
                .map(|k| match traced {
                    Subsystem::A => m.0[2 * k + i][2 * k + j],
                    Subsystem::B => m.0[2 * i + k][2 * j + k],
                })
                .fold(Complex::zero(), |acc, z| acc + z);
        }
    }
    out
}

/// `Tr[(σ_μ ⊗ σ_ν) ϱ]`.
pub fn pauli_expectation<R: Real>(rho: &Mat4<R>, mu: usize, nu: usize) -> R {
    (pauli::<R>(mu).kron(&pauli(nu)) * *rho).trace().re
}

/// General Wootters concurrence.
///
/// The eigenvalues `ξ` of `ϱ (σy⊗σy) ϱ* (σy⊗σy)` are obtained as the spectrum
/// of the Hermitian matrix `√ϱ ϱ̃ √ϱ`, which shares them.
pub fn wootters_concurrence<R: Real>(rho: &DensityMatrix4<R>) -> Result<R> {
    let m = rho.matrix();
    let yy = pauli::<R>(2).kron(&pauli(2));
    let flipped = yy * m.conj() * yy;
    let root = hermitian_eigensystem(m)?.map(|x| x.max(R::zero()).sqrt());
    let product = root * flipped * root;
    let product = (product + product.adjoint()).scale(R::lit(0.5));
    let mut xi = hermitian_eigensystem(&product)?.eigenvalues;
    xi.reverse();
    let [l1, l2, l3, l4] = xi.map(|x| x.max(R::zero()).sqrt());
    Ok((l1 - l2 - l3 - l4).max(R::zero()))
}

/// Steered state built from its definition: `(1/√3) ϱ + (1 − 1/√3) σ`, where
/// `σ = ϱ_A ⊗ I/2` when `traced` is `B` and `I/2 ⊗ ϱ_B` when `traced` is `A`.
pub fn steered_state<R: Real>(rho: &DensityMatrix4<R>, traced: Subsystem) -> Mat4<R> {
    let k = R::lit(3.0).sqrt().recip();
    let reduced = partial_trace(rho, traced);
    let half_id = Mat2::identity().scale(R::lit(0.5));
    let local = match traced {
        Subsystem::B => reduced.kron(&half_id),
        Subsystem::A => half_id.kron(&reduced),
    };
    rho.matrix().scale(k) + local.scale(R::one() - k)
}

/// `[a, b] = ab − ba`.
pub fn commutator<R: Real>(a: &Mat4<R>, b: &Mat4<R>) -> Mat4<R> {
    *a * *b - *b * *a
}
