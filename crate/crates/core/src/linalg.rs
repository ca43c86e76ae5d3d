//! Fixed-size complex matrices and the matrix exponential used by the
//! exact Bloch-equation update.

use core::ops::{Add, Mul};

use crate::C64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Dense `N × N` complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix<const N: usize>(pub [[C64; N]; N]);

pub type Matrix3 = Matrix<3>;

impl<const N: usize> Matrix<N> {
    pub fn zeros() -> Self {
        Self([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn scale(mut self, k: C64) -> Self {
        for row in self.0.iter_mut() {
            for x in row.iter_mut() {
                *x *= k;
            }
        }
        self
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        (0..N)
            .map(|j| (0..N).map(|i| self.0[i][j].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, v: &[C64; N]) -> [C64; N] {
        let mut out = [ZERO; N];
        for (o, row) in out.iter_mut().zip(self.0.iter()) {
            *o = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// `exp(self)` by scaling and squaring with a truncated Taylor series.
    pub fn exp(&self) -> Self {
        let norm = self.norm1();
        let mut squarings = 0;
        let mut scaled = *self;
        if norm > 0.5 {
            squarings = libm::ceil(libm::log2(norm / 0.5)) as u32;
            scaled = scaled.scale(C64::new(libm::ldexp(1.0, -(squarings as i32)), 0.0));
        }
        // ||X|| <= 1/2: terms beyond k = 20 are below 1/2^21/21!
        let mut sum = Self::identity();
        let mut term = Self::identity();
        for k in 1..=20 {
            term = (term * scaled).scale(C64::new(1.0 / k as f64, 0.0));
            sum = sum + term;
        }
        for _ in 0..squarings {
            sum = sum * sum;
        }
        sum
    }
}

impl Matrix3 {
    /// Returns `(exp(A·t), ∫₀ᵗ exp(A·s) ds)` via the exponential of the
    /// block matrix `[[A·t, I·t], [0, 0]]`.
    pub fn exp_and_integral(&self, t: f64) -> (Matrix3, Matrix3) {
        let mut aug = Matrix::<6>::zeros();
        for i in 0..3 {
            for j in 0..3 {
                aug.0[i][j] = self.0[i][j] * t;
            }
            aug.0[i][i + 3] = C64::new(t, 0.0);
        }
        let e = aug.exp();
        let mut phi = Matrix3::zeros();
        let mut integral = Matrix3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                phi.0[i][j] = e.0[i][j];
                integral.0[i][j] = e.0[i][j + 3];
            }
        }
        (phi, integral)
    }
}

impl<const N: usize> Mul for Matrix<N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl<const N: usize> Add for Matrix<N> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}
