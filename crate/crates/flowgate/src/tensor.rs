//! Dense row-major f64 tensors and the raw matrix kernels everything
//! else is built on.
//!
//! There are no views or strides: every reshape copies. Compute is f64
//! throughout; only checkpoint serialization downcasts to f32.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Dense n-dimensional array. `grad`, when present, always has the same
/// length as `data`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    pub shape: Vec<usize>,
    pub data: Vec<f64>,
    pub grad: Option<Vec<f64>>,
    pub requires_grad: bool,
}

impl Tensor {
    pub fn from_vec(shape: Vec<usize>, data: Vec<f64>) -> Self {
        assert_eq!(
            shape.iter().product::<usize>(),
            data.len(),
            "shape {:?} does not match {} elements",
            shape,
            data.len()
        );
        Tensor { shape, data, grad: None, requires_grad: false }
    }

    pub fn zeros(shape: Vec<usize>) -> Self {
        let n = shape.iter().product();
        Tensor::from_vec(shape, vec![0.0; n])
    }

    pub fn full(shape: Vec<usize>, v: f64) -> Self {
        let n = shape.iter().product();
        Tensor::from_vec(shape, vec![v; n])
    }

    pub fn scalar(v: f64) -> Self {
        Tensor::from_vec(vec![1], vec![v])
    }

    /// Gaussian init with the given std.
    pub fn randn(shape: Vec<usize>, std: f64, rng: &mut ChaCha8Rng) -> Self {
        let n = shape.iter().product();
        let data = (0..n)
            .map(|_| std * rng.sample::<f64, _>(StandardNormal))
            .collect();
        Tensor::from_vec(shape, data)
    }

    pub fn with_grad(mut self) -> Self {
        self.requires_grad = true;
        self
    }

    pub fn numel(&self) -> usize {
        self.data.len()
    }

    /// Both dimensions of a rank-2 tensor.
    pub fn dims2(&self) -> (usize, usize) {
        assert_eq!(self.shape.len(), 2, "expected rank-2, got {:?}", self.shape);
        (self.shape[0], self.shape[1])
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn at2(&self, i: usize, j: usize) -> f64 {
        let (_, cols) = self.dims2();
        self.data[i * cols + j]
    }
}

/// Deterministic per-purpose RNG: one master seed, independent streams.
/// Stream ids are assigned by convention at call sites (init, batches,
/// eval, sampling) so parallel runs reproduce bit-identically.
pub fn rng_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform in [0,1).
pub fn uniform01(rng: &mut ChaCha8Rng) -> f64 {
    rng.random::<f64>()
}

// ── Raw matrix kernels ──────────────────────────────────────────────
// All kernels accumulate into `c` so backward passes can sum
// contributions; forward callers pass freshly zeroed buffers.

/// c[m×n] += a[m×k] · b[k×n]
pub fn mm_nn_acc(a: &[f64], b: &[f64], c: &mut [f64], m: usize, k: usize, n: usize) {
    debug_assert_eq!(a.len(), m * k);
    debug_assert_eq!(b.len(), k * n);
    debug_assert_eq!(c.len(), m * n);
    for i in 0..m {
        let arow = &a[i * k..(i + 1) * k];
        let crow = &mut c[i * n..(i + 1) * n];
        for (p, &aip) in arow.iter().enumerate() {
            if aip == 0.0 {
                continue;
            }
            let brow = &b[p * n..(p + 1) * n];
            for (cv, &bv) in crow.iter_mut().zip(brow) {
                *cv += aip * bv;
            }
        }
    }
}

/// c[m×k] += a[m×n] · b[k×n]ᵀ
pub fn mm_nt_acc(a: &[f64], b: &[f64], c: &mut [f64], m: usize, n: usize, k: usize) {
    debug_assert_eq!(a.len(), m * n);
    debug_assert_eq!(b.len(), k * n);
    debug_assert_eq!(c.len(), m * k);
    for i in 0..m {
        let arow = &a[i * n..(i + 1) * n];
        let crow = &mut c[i * k..(i + 1) * k];
        for (p, cv) in crow.iter_mut().enumerate() {
            let brow = &b[p * n..(p + 1) * n];
            let mut s = 0.0;
            for (&av, &bv) in arow.iter().zip(brow) {
                s += av * bv;
            }
            *cv += s;
        }
    }
}

/// c[k×n] += a[m×k]ᵀ · b[m×n]
pub fn mm_tn_acc(a: &[f64], b: &[f64], c: &mut [f64], m: usize, k: usize, n: usize) {
    debug_assert_eq!(a.len(), m * k);
    debug_assert_eq!(b.len(), m * n);
    debug_assert_eq!(c.len(), k * n);
    for i in 0..m {
        let arow = &a[i * k..(i + 1) * k];
        let brow = &b[i * n..(i + 1) * n];
        for (p, &aip) in arow.iter().enumerate() {
            if aip == 0.0 {
                continue;
            }
            let crow = &mut c[p * n..(p + 1) * n];
            for (cv, &bv) in crow.iter_mut().zip(brow) {
                *cv += aip * bv;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_mm(a: &[f64], b: &[f64], m: usize, k: usize, n: usize) -> Vec<f64> {
        let mut c = vec![0.0; m * n];
        for i in 0..m {
            for j in 0..n {
                for p in 0..k {
                    c[i * n + j] += a[i * k + p] * b[p * n + j];
                }
            }
        }
        c
    }

    #[test]
    fn kernels_agree_with_naive_triple_loop() {
        let mut rng = rng_stream(7, 0);
        let (m, k, n) = (5, 7, 3);
        let a = Tensor::randn(vec![m, k], 1.0, &mut rng);
        let b = Tensor::randn(vec![k, n], 1.0, &mut rng);
        let want = naive_mm(&a.data, &b.data, m, k, n);

        let mut c = vec![0.0; m * n];
        mm_nn_acc(&a.data, &b.data, &mut c, m, k, n);
        for (x, y) in c.iter().zip(&want) {
            assert!((x - y).abs() < 1e-12);
        }

        // a·bᵀ via mm_nt against naive on transposed b
        let mut bt = vec![0.0; n * k];
        for i in 0..k {
            for j in 0..n {
                bt[j * k + i] = b.data[i * n + j];
            }
        }
        let mut c2 = vec![0.0; m * n];
        mm_nt_acc(&a.data, &bt, &mut c2, m, k, n);
        for (x, y) in c2.iter().zip(&want) {
            assert!((x - y).abs() < 1e-12);
        }

        // aᵀ·(a·b) via mm_tn against naive
        let want3 = naive_mm(
            &{
                let mut at = vec![0.0; k * m];
                for i in 0..m {
                    for j in 0..k {
                        at[j * m + i] = a.data[i * k + j];
                    }
                }
                at
            },
            &want,
            k,
            m,
            n,
        );
        let mut c3 = vec![0.0; k * n];
        mm_tn_acc(&a.data, &want, &mut c3, m, k, n);
        for (x, y) in c3.iter().zip(&want3) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn rng_streams_are_independent_and_reproducible() {
        let a: Vec<f64> = {
            let mut r = rng_stream(1, 0);
            (0..4).map(|_| uniform01(&mut r)).collect()
        };
        let b: Vec<f64> = {
            let mut r = rng_stream(1, 0);
            (0..4).map(|_| uniform01(&mut r)).collect()
        };
        let c: Vec<f64> = {
            let mut r = rng_stream(1, 1);
            (0..4).map(|_| uniform01(&mut r)).collect()
        };
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    #[should_panic(expected = "does not match")]
    fn from_vec_rejects_bad_shape() {
        Tensor::from_vec(vec![2, 3], vec![0.0; 5]);
    }
}
