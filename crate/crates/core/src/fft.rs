//! Radix-2 complex FFT over power-of-two lengths, plus a separable
//! multi-dimensional driver for cubic grids.
//!
//! Sign convention: the forward transform computes `Σ_j x_j e^{−2πi jk/n}`;
//! the inverse uses `e^{+2πi jk/n}` and is *not* normalized.

use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;

/// Precomputed twiddles for one transform length.
#[derive(Debug, Clone)]
pub struct FftPlan {
    n: usize,
    twiddles: Vec<Complex64>,
    bitrev: Vec<usize>,
}

impl FftPlan {
    /// `n` must be a power of two.
    pub fn new(n: usize) -> Self {
        assert!(n.is_power_of_two(), "FFT length must be a power of two");
        let bits = n.trailing_zeros();
        let twiddles = (0..n / 2)
            .map(|k| {
                let angle = -2.0 * core::f64::consts::PI * k as f64 / n as f64;
                Complex64::new(angle.cos(), angle.sin())
            })
            .collect();
        let bitrev = (0..n)
            .map(|i| {
                if bits == 0 {
                    0
                } else {
                    i.reverse_bits() >> (usize::BITS - bits)
                }
            })
            .collect();
        FftPlan {
            n,
            twiddles,
            bitrev,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// In-place transform of `buf` (length `n`).
    pub fn run(&self, buf: &mut [Complex64], inverse: bool) {
        debug_assert_eq!(buf.len(), self.n);
        for i in 0..self.n {
            let j = self.bitrev[i];
            if i < j {
                buf.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= self.n {
            let stride = self.n / len;
            for start in (0..self.n).step_by(len) {
                for k in 0..len / 2 {
                    let mut w = self.twiddles[k * stride];
                    if inverse {
                        w = w.conj();
                    }
                    let a = buf[start + k];
                    let b = buf[start + k + len / 2] * w;
                    buf[start + k] = a + b;
                    buf[start + k + len / 2] = a - b;
                }
            }
            len <<= 1;
        }
    }

    /// Transform along every axis of a row-major `n^dims` array.
    pub fn run_nd(&self, data: &mut [Complex64], dims: usize, inverse: bool) {
        let n = self.n;
        debug_assert_eq!(data.len(), n.pow(dims as u32));
        let mut line = alloc::vec![Complex64::new(0.0, 0.0); n];
        for axis in 0..dims {
            // stride of `axis` in row-major order, axis 0 slowest
            let stride = n.pow((dims - 1 - axis) as u32);
            let outer = data.len() / (n * stride);
            for o in 0..outer {
                for s in 0..stride {
                    let base = o * n * stride + s;
                    for (k, slot) in line.iter_mut().enumerate() {
                        *slot = data[base + k * stride];
                    }
                    self.run(&mut line, inverse);
                    for (k, v) in line.iter().enumerate() {
                        data[base + k * stride] = *v;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(x: &[Complex64], inverse: bool) -> Vec<Complex64> {
        let n = x.len();
        let sign = if inverse { 1.0 } else { -1.0 };
        (0..n)
            .map(|k| {
                x.iter()
                    .enumerate()
                    .map(|(j, v)| {
                        let a = sign * 2.0 * core::f64::consts::PI * (j * k) as f64 / n as f64;
                        v * Complex64::new(a.cos(), a.sin())
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        for n in [1usize, 2, 4, 8, 16, 64] {
            let x: Vec<_> = (0..n)
                .map(|j| Complex64::new((j as f64 * 0.37).sin(), (j as f64 * 1.3).cos()))
                .collect();
            let plan = FftPlan::new(n);
            for inverse in [false, true] {
                let mut y = x.clone();
                plan.run(&mut y, inverse);
                let z = naive(&x, inverse);
                for (a, b) in y.iter().zip(&z) {
                    assert!((a - b).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn nd_round_trip() {
        let n = 4;
        let plan = FftPlan::new(n);
        let x: Vec<_> = (0..64)
            .map(|j| Complex64::new(j as f64, -(j as f64) * 0.5))
            .collect();
        let mut y = x.clone();
        plan.run_nd(&mut y, 3, false);
        plan.run_nd(&mut y, 3, true);
        for (a, b) in y.iter().zip(&x) {
            assert!((a / 64.0 - b).norm() < 1e-12);
        }
    }
}
