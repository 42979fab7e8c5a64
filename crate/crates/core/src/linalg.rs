//! Dense row-major matrix kernels.
//!
//! The parallel variants split work by output row, so every element is
//! accumulated in the same order as the sequential code and the two paths
//! produce bit-identical results. With the `parallel` feature disabled the
//! parallel entry points fall back to the sequential code.

/// Output rows below this op-count threshold are not worth farming out.
const PAR_MIN_OPS: usize = 16_384;

fn matmul_row(a_row: &[f64], b: &[f64], n: usize, out: &mut [f64]) {
    for (p, &av) in a_row.iter().enumerate() {
        let b_row = &b[p * n..(p + 1) * n];
        for (o, &bv) in out.iter_mut().zip(b_row) {
            *o += av * bv;
        }
    }
}

/// `a` is `m x k`, `b` is `k x n`; returns `m x n`, sequentially.
pub fn matmul_seq(a: &[f64], b: &[f64], m: usize, k: usize, n: usize) -> Vec<f64> {
    debug_assert_eq!(a.len(), m * k);
    debug_assert_eq!(b.len(), k * n);
    let mut out = vec![0.0; m * n];
    for (a_row, o_row) in a.chunks_exact(k).zip(out.chunks_exact_mut(n)) {
        matmul_row(a_row, b, n, o_row);
    }
    out
}

/// Row-parallel matrix multiply; bit-identical to [`matmul_seq`].
#[cfg(feature = "parallel")]
pub fn matmul_par(a: &[f64], b: &[f64], m: usize, k: usize, n: usize) -> Vec<f64> {
    use rayon::prelude::*;
    debug_assert_eq!(a.len(), m * k);
    debug_assert_eq!(b.len(), k * n);
    let mut out = vec![0.0; m * n];
    a.par_chunks_exact(k)
        .zip(out.par_chunks_exact_mut(n))
        .for_each(|(a_row, o_row)| matmul_row(a_row, b, n, o_row));
    out
}

#[cfg(not(feature = "parallel"))]
pub fn matmul_par(a: &[f64], b: &[f64], m: usize, k: usize, n: usize) -> Vec<f64> {
    matmul_seq(a, b, m, k, n)
}

/// Dispatches to the parallel kernel when the product is large enough.
pub fn matmul(a: &[f64], b: &[f64], m: usize, k: usize, n: usize) -> Vec<f64> {
    if cfg!(feature = "parallel") && m > 1 && m * k * n >= PAR_MIN_OPS {
        matmul_par(a, b, m, k, n)
    } else {
        matmul_seq(a, b, m, k, n)
    }
}

/// Transpose an `m x n` row-major matrix.
pub fn transpose(a: &[f64], m: usize, n: usize) -> Vec<f64> {
    let mut out = vec![0.0; m * n];
    for i in 0..m {
        for j in 0..n {
            out[j * m + i] = a[i * n + j];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matmul() {
        // [1 2; 3 4] x [5 6; 7 8] = [19 22; 43 50]
        let c = matmul_seq(&[1.0, 2.0, 3.0, 4.0], &[5.0, 6.0, 7.0, 8.0], 2, 2, 2);
        assert_eq!(c, vec![19.0, 22.0, 43.0, 50.0]);
    }

    #[test]
    fn par_matches_seq_bitwise() {
        let mut x = 1u64;
        let mut next = || {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1);
            (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let (m, k, n) = (37, 53, 29);
        let a: Vec<f64> = (0..m * k).map(|_| next()).collect();
        let b: Vec<f64> = (0..k * n).map(|_| next()).collect();
        let s = matmul_seq(&a, &b, m, k, n);
        let p = matmul_par(&a, &b, m, k, n);
        assert!(s.iter().zip(&p).all(|(x, y)| x.to_bits() == y.to_bits()));
    }

    #[test]
    fn transpose_round_trip() {
        let a: Vec<f64> = (0..12).map(|i| i as f64).collect();
        assert_eq!(transpose(&transpose(&a, 3, 4), 4, 3), a);
    }
}
