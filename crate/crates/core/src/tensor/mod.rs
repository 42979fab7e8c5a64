//! Dense-tensor numeric core with reverse-mode automatic differentiation.
//!
//! Tensors are flat `f64` buffers with a shape (rank 1 or 2 in practice).
//! Each training step builds a fresh [`Tape`] recording the forward ops;
//! [`Tape::backward`] walks the tape in reverse, accumulating gradients
//! additively across fan-out. Any NaN or Inf produced by a forward or
//! backward pass is a hard error.

mod checkpoint;
mod tape;

pub use checkpoint::{load_checkpoint, save_checkpoint, CheckpointError, CHECKPOINT_VERSION};
pub use tape::{Tape, Var};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TensorError {
    #[error("{op}: shape mismatch between {lhs:?} and {rhs:?}")]
    ShapeMismatch {
        op: &'static str,
        lhs: Vec<usize>,
        rhs: Vec<usize>,
    },
    #[error("tensor data length {got} does not match shape {shape:?} (expects {expected})")]
    DataLength {
        shape: Vec<usize>,
        expected: usize,
        got: usize,
    },
    #[error("{op} produced a non-finite value")]
    NonFinite { op: &'static str },
    #[error("backward requires a scalar loss, got shape {shape:?}")]
    NonScalarLoss { shape: Vec<usize> },
    #[error("sgd_step: parameter '{name}' has no gradient")]
    MissingGrad { name: String },
    #[error("dropout rate must lie in [0, 1), got {rate}")]
    InvalidDropoutRate { rate: f64 },
}

/// Dense n-dimensional array of 64-bit floats, optionally carrying a
/// gradient buffer of the same length.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<f64>,
    requires_grad: bool,
    grad: Option<Vec<f64>>,
}

impl Tensor {
    pub fn from_vec(data: Vec<f64>, shape: &[usize]) -> Result<Self, TensorError> {
        let expected: usize = shape.iter().product();
        if data.len() != expected {
            return Err(TensorError::DataLength {
                shape: shape.to_vec(),
                expected,
                got: data.len(),
            });
        }
        Ok(Tensor {
            shape: shape.to_vec(),
            data,
            requires_grad: false,
            grad: None,
        })
    }

    pub fn zeros(shape: &[usize]) -> Self {
        let n = shape.iter().product();
        Tensor {
            shape: shape.to_vec(),
            data: vec![0.0; n],
            requires_grad: false,
            grad: None,
        }
    }

    pub fn scalar(v: f64) -> Self {
        Tensor::from_vec(vec![v], &[1]).unwrap()
    }

    pub fn with_grad(mut self) -> Self {
        self.requires_grad = true;
        self
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn numel(&self) -> usize {
        self.data.len()
    }

    pub fn requires_grad(&self) -> bool {
        self.requires_grad
    }

    pub fn grad(&self) -> Option<&[f64]> {
        self.grad.as_deref()
    }

    /// Add `g` into this tensor's gradient buffer, allocating zeros first if
    /// no gradient is present yet.
    pub fn accumulate_grad(&mut self, g: &[f64]) {
        debug_assert_eq!(g.len(), self.data.len());
        let grad = self.grad.get_or_insert_with(|| vec![0.0; self.data.len()]);
        for (a, b) in grad.iter_mut().zip(g) {
            *a += b;
        }
    }

    pub fn clear_grad(&mut self) {
        self.grad = None;
    }

    /// Row count for a rank-1 or rank-2 tensor (rank-1 counts as one row).
    pub fn rows(&self) -> usize {
        if self.shape.len() >= 2 {
            self.shape[0]
        } else {
            1
        }
    }

    pub fn cols(&self) -> usize {
        *self.shape.last().unwrap_or(&0)
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let c = self.cols();
        &self.data[i * c..(i + 1) * c]
    }
}

/// One SGD update: `param -= lr * grad`, then clear gradients.
///
/// Every parameter must carry a gradient; a missing one means the caller
/// forgot to run backward or to copy gradients out of the tape.
pub fn sgd_step<'a, I>(params: I, lr: f64) -> Result<(), TensorError>
where
    I: IntoIterator<Item = (&'a str, &'a mut Tensor)>,
{
    for (name, p) in params {
        let grad = p.grad.take().ok_or_else(|| TensorError::MissingGrad {
            name: name.to_string(),
        })?;
        for (v, g) in p.data.iter_mut().zip(&grad) {
            *v -= lr * g;
        }
    }
    Ok(())
}

pub(crate) fn ensure_finite(data: &[f64], op: &'static str) -> Result<(), TensorError> {
    if data.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(TensorError::NonFinite { op })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_vec_checks_length() {
        assert!(Tensor::from_vec(vec![1.0, 2.0], &[3]).is_err());
        let t = Tensor::from_vec(vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0], &[2, 3]).unwrap();
        assert_eq!(t.rows(), 2);
        assert_eq!(t.cols(), 3);
    }

    #[test]
    fn sgd_applies_update_and_clears() {
        let mut p = Tensor::from_vec(vec![1.0], &[1]).unwrap().with_grad();
        p.accumulate_grad(&[0.5]);
        sgd_step([("p", &mut p)], 0.1).unwrap();
        assert_eq!(p.data()[0], 0.95);
        assert!(p.grad().is_none());
    }

    #[test]
    fn sgd_zero_lr_is_identity() {
        let mut p = Tensor::from_vec(vec![2.0, -3.0], &[2]).unwrap().with_grad();
        p.accumulate_grad(&[1.0, 4.0]);
        sgd_step([("p", &mut p)], 0.0).unwrap();
        assert_eq!(p.data(), &[2.0, -3.0]);
    }

    #[test]
    fn sgd_missing_grad_errors() {
        let mut p = Tensor::zeros(&[2]).with_grad();
        let err = sgd_step([("w", &mut p)], 0.1).unwrap_err();
        assert!(err.to_string().contains("w"));
    }

    #[test]
    fn two_sgd_steps_on_square() {
        // f(w) = w^2, grad = 2w; w0 = 1, lr = 0.1 -> 0.8 -> 0.64
        let mut w = Tensor::scalar(1.0).with_grad();
        for _ in 0..2 {
            let g = 2.0 * w.data()[0];
            w.accumulate_grad(&[g]);
            sgd_step([("w", &mut w)], 0.1).unwrap();
        }
        assert!((w.data()[0] - 0.64).abs() < 1e-12);
    }

    #[test]
    fn grad_accumulates_additively() {
        let mut p = Tensor::zeros(&[2]).with_grad();
        p.accumulate_grad(&[1.0, 2.0]);
        p.accumulate_grad(&[0.5, -1.0]);
        assert_eq!(p.grad().unwrap(), &[1.5, 1.0]);
    }
}
