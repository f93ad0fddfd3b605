//! Fixed-size complex matrices for one and two qubits.
//!
//! Basis ordering for two qubits is `|00>, |01>, |10>, |11>` with the first
//! factor belonging to qubit A.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::Real;

macro_rules! square_matrix {
    ($name:ident, $n:expr) => {
        #[derive(Clone, Copy, Debug, PartialEq)]
        pub struct $name<R>(pub [[Complex<R>; $n]; $n]);

        impl<R: Real> $name<R> {
            pub const DIM: usize = $n;

            pub fn zeros() -> Self {
                Self([[Complex::zero(); $n]; $n])
            }

            pub fn identity() -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    m.0[i][i] = Complex::one();
                }
                m
            }

            pub fn from_real(rows: [[R; $n]; $n]) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] = Complex::new(rows[i][j], R::zero());
                    }
                }
                m
            }

            pub fn diagonal(d: [R; $n]) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    m.0[i][i] = Complex::new(d[i], R::zero());
                }
                m
            }

            /// Conjugate transpose.
            pub fn adjoint(&self) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    for j in 0..$n {
                        m.0[i][j] = self.0[j][i].conj();
                    }
                }
                m
            }

            /// Entrywise complex conjugate (no transpose).
            pub fn conj(&self) -> Self {
                let mut m = *self;
                for row in m.0.iter_mut() {
                    for z in row.iter_mut() {
                        *z = z.conj();
                    }
                }
                m
            }

            pub fn scale(&self, s: R) -> Self {
                let mut m = *self;
                for row in m.0.iter_mut() {
                    for z in row.iter_mut() {
                        *z = *z * s;
                    }
                }
                m
            }

            pub fn trace(&self) -> Complex<R> {
                (0..$n).map(|i| self.0[i][i]).fold(Complex::zero(), |a, b| a + b)
            }

            /// Largest entry modulus.
            pub fn max_abs(&self) -> R {
                self.0
                    .iter()
                    .flat_map(|row| row.iter())
                    .map(|z| z.norm())
                    .fold(R::zero(), R::max)
            }

            pub fn max_abs_diff(&self, other: &Self) -> R {
                (*self - *other).max_abs()
            }

            /// Largest deviation from `self == self†`.
            pub fn hermiticity_defect(&self) -> R {
                self.max_abs_diff(&self.adjoint())
            }

            pub fn frobenius_norm(&self) -> R {
                self.0
                    .iter()
                    .flat_map(|row| row.iter())
                    .map(|z| z.norm_sqr())
                    .sum::<R>()
                    .sqrt()
            }
        }

        impl<R: Real> Index<(usize, usize)> for $name<R> {
            type Output = Complex<R>;
            fn index(&self, (i, j): (usize, usize)) -> &Complex<R> {
                &self.0[i][j]
            }
        }

        impl<R: Real> IndexMut<(usize, usize)> for $name<R> {
            fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<R> {
                &mut self.0[i][j]
            }
        }

        impl<R: Real> Add for $name<R> {
            type Output = Self;
            fn add(mut self, rhs: Self) -> Self {
                for i in 0..$n {
                    for j in 0..$n {
                        self.0[i][j] = self.0[i][j] + rhs.0[i][j];
                    }
                }
                self
            }
        }

        impl<R: Real> Sub for $name<R> {
            type Output = Self;
            fn sub(mut self, rhs: Self) -> Self {
                for i in 0..$n {
                    for j in 0..$n {
                        self.0[i][j] = self.0[i][j] - rhs.0[i][j];
                    }
                }
                self
            }
        }

        impl<R: Real> Mul for $name<R> {
            type Output = Self;
            fn mul(self, rhs: Self) -> Self {
                let mut m = Self::zeros();
                for i in 0..$n {
                    for j in 0..$n {
                        let mut acc = Complex::zero();
                        for k in 0..$n {
                            acc = acc + self.0[i][k] * rhs.0[k][j];
                        }
                        m.0[i][j] = acc;
                    }
                }
                m
            }
        }
    };
}

square_matrix!(Mat2, 2);
square_matrix!(Mat4, 4);

impl<R: Real> Mat2<R> {
    /// Tensor product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Mat2<R>) -> Mat4<R> {
        let mut m = Mat4::zeros();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        m.0[2 * a + c][2 * b + d] = self.0[a][b] * rhs.0[c][d];
                    }
                }
            }
        }
        m
    }
}

/// Pauli matrix `σ_μ` with `σ_0 = I`.
pub fn pauli<R: Real>(mu: usize) -> Mat2<R> {
    let o = R::zero();
    let l = R::one();
    let c = |re: R, im: R| Complex::new(re, im);
    match mu {
        0 => Mat2::identity(),
        1 => Mat2([[c(o, o), c(l, o)], [c(l, o), c(o, o)]]),
        2 => Mat2([[c(o, o), c(o, -l)], [c(o, l), c(o, o)]]),
        3 => Mat2([[c(l, o), c(o, o)], [c(o, o), c(-l, o)]]),
        _ => panic!("Pauli index {mu} out of range 0..4"),
    }
}
