//! Symmetric bilinear forms given by Gram matrices.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::linalg::{independent, Matrix, Vector};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A symmetric bilinear form, stored as its Gram matrix in the ambient
/// coordinates (or on an explicit basis, for restricted forms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymForm {
    gram: Matrix,
}

/// Inertia counts `(p, q, z)`: positive, negative and null directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
    pub z: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize, z: usize) -> Self {
        Signature { p, q, z }
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.z)
    }
}

impl SymForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(SymForm { gram })
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        SymForm { gram: Matrix::diagonal(entries) }
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, x: &Vector, y: &Vector) -> Scalar {
        x.dot(&self.gram.mul_vec(y))
    }

    /// Gram matrix of the form on the family `basis`.
    pub fn restrict(&self, basis: &[Vector]) -> SymForm {
        let k = basis.len();
        let mut g = Matrix::zeros(k, k);
        for i in 0..k {
            let gi = self.gram.mul_vec(&basis[i]);
            for j in i..k {
                let v = basis[j].dot(&gi);
                g[(j, i)] = v.clone();
                g[(i, j)] = v;
            }
        }
        SymForm { gram: g }
    }

    /// The covector `ḡ(v, ·)`.
    pub fn lower(&self, v: &Vector) -> Vector {
        self.gram.mul_vec(v)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim()
    }
}

/// Basis of the radical of `form` restricted to `span(restricted_to)`,
/// returned in ambient coordinates.
pub fn kernel(form: &SymForm, restricted_to: &[Vector]) -> Result<Vec<Vector>> {
    if !independent(restricted_to, form.dim()) {
        return Err(Error::DegenerateFrameInput);
    }
    let local = form.restrict(restricted_to);
    Ok(local
        .gram()
        .null_space()
        .into_iter()
        .map(|c| Vector::combination(c.entries(), restricted_to, form.dim()))
        .collect())
}

/// Inertia by symmetric congruence (Lagrange reduction). Exact, no square
/// roots or eigenvalues.
pub fn signature(form: &SymForm) -> Signature {
    let n = form.dim();
    let mut a = form.gram().clone();
    let (mut p, mut q) = (0, 0);
    let mut k = 0;
    while k < n {
        if let Some(i) = (k..n).find(|&i| !a[(i, i)].is_zero()) {
            sym_swap(&mut a, k, i);
        } else if let Some((i, j)) =
            (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[(i, j)].is_zero())
        {
            // Both diagonals vanish, so e_i + e_j has value 2 a_ij ≠ 0.
            for c in 0..n {
                let v = a[(j, c)].clone();
                a[(i, c)] += v;
            }
            for r in 0..n {
                let v = a[(r, j)].clone();
                a[(r, i)] += v;
            }
            sym_swap(&mut a, k, i);
        } else {
            break;
        }
        let d = a[(k, k)].clone();
        if d.is_positive() {
            p += 1;
        } else {
            q += 1;
        }
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &d;
            for c in 0..n {
                let v = &f * &a[(k, c)];
                a[(i, c)] -= v;
            }
            for r in 0..n {
                let v = &f * &a[(r, k)];
                a[(r, i)] -= v;
            }
        }
        k += 1;
    }
    Signature { p, q, z: n - p - q }
}

fn sym_swap(a: &mut Matrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    let n = a.rows();
    for c in 0..n {
        let t = a[(i, c)].clone();
        a[(i, c)] = a[(j, c)].clone();
        a[(j, c)] = t;
    }
    for r in 0..n {
        let t = a[(r, i)].clone();
        a[(r, i)] = a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

/// Metric trace `Σ G⁻¹[i][j] · values[i][j]` of a vector-valued bilinear
/// form tabulated on the basis whose Gram matrix is `form_on_basis`.
pub fn signed_trace(form_on_basis: &SymForm, values: &[Vec<Vector>]) -> Result<Vector> {
    let k = form_on_basis.dim();
    if values.len() != k || values.iter().any(|row| row.len() != k) || k == 0 {
        return Err(Error::DimensionMismatch("trace table does not match the basis".into()));
    }
    let inv = form_on_basis.gram().inverse().ok_or(Error::DegenerateTrace)?;
    let dim = values[0][0].len();
    let mut acc = Vector::zeros(dim);
    for i in 0..k {
        for j in 0..k {
            if !inv[(i, j)].is_zero() {
                acc = acc.axpy(&inv[(i, j)], &values[i][j]);
            }
        }
    }
    Ok(acc)
}

/// Scalar-valued variant of [`signed_trace`].
pub fn scalar_trace(form_on_basis: &SymForm, values: &Matrix) -> Result<Scalar> {
    let k = form_on_basis.dim();
    if values.rows() != k || values.cols() != k {
        return Err(Error::DimensionMismatch("trace table does not match the basis".into()));
    }
    let inv = form_on_basis.gram().inverse().ok_or(Error::DegenerateTrace)?;
    let mut acc = Scalar::zero();
    for i in 0..k {
        for j in 0..k {
            acc += &inv[(i, j)] * &values[(i, j)];
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::super::{int, q};
    use super::*;

    fn minkowski() -> SymForm {
        SymForm::diagonal(&[int(1), int(-1)])
    }

    #[test]
    fn kernel_of_nondegenerate_plane_is_empty() {
        let basis = vec![Vector::unit(2, 0), Vector::unit(2, 1)];
        assert!(kernel(&minkowski(), &basis).unwrap().is_empty());
    }

    #[test]
    fn kernel_of_null_line() {
        let v = Vector::from_ints(&[1, 1]);
        assert_eq!(kernel(&minkowski(), std::slice::from_ref(&v)).unwrap(), vec![v]);
    }

    #[test]
    fn kernel_rejects_dependent_input() {
        let v = Vector::from_ints(&[1, 1]);
        let err = kernel(&minkowski(), &[v.clone(), v.scale(&int(2))]).unwrap_err();
        assert_eq!(err.to_string(), "degenerate frame input");
    }

    #[test]
    fn signature_of_zero_and_hyperbolic() {
        let z = SymForm::new(Matrix::zeros(3, 3)).unwrap();
        assert_eq!(signature(&z), Signature::new(0, 0, 3));
        // Pure off-diagonal pairing needs the e_i + e_j pivot.
        let h = SymForm::new(Matrix::from_int_rows(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(signature(&h), Signature::new(1, 1, 0));
        let deg = SymForm::new(Matrix::from_int_rows(&[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!(signature(&deg), Signature::new(1, 0, 1));
    }

    #[test]
    fn identity_trace_scales_value() {
        let g = SymForm::diagonal(&[int(1), int(1), int(1)]);
        let v = Vector::from_ints(&[2, -1]);
        let table: Vec<Vec<Vector>> =
            (0..3).map(|i| (0..3).map(|j| if i == j { v.clone() } else { Vector::zeros(2) }).collect()).collect();
        assert_eq!(signed_trace(&g, &table).unwrap(), v.scale(&int(3)));
    }

    #[test]
    fn trace_over_degenerate_form_fails() {
        let g = SymForm::new(Matrix::from_int_rows(&[&[1, 1], &[1, 1]])).unwrap();
        let table = vec![vec![Vector::zeros(1); 2]; 2];
        assert_eq!(signed_trace(&g, &table).unwrap_err().to_string(), "trace over degenerate form");
    }

    #[test]
    fn not_symmetric_rejected() {
        assert!(SymForm::new(Matrix::from_int_rows(&[&[1, 2], &[0, 1]])).is_err());
        let g = SymForm::new(Matrix::from_rows(vec![vec![q(1, 2), int(3)], vec![int(3), int(0)]]));
        assert!(g.is_ok());
    }
}
