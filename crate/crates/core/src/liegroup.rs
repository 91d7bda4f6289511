//! Lie algebras of left-invariant vector fields, given by structure
//! constants on a fixed basis.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{fmt_scalar, in_span, independent, Scalar, Vector};
use crate::report::Report;

/// `c[i][j][k]` is the `e_k` coefficient of `[e_i, e_j]` (0-based storage).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    c: Vec<Scalar>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, c: vec![Scalar::zero(); dim * dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[self.idx(i, j, k)]
    }

    /// Sets a single constant without touching `c[j][i][k]`.
    pub fn set_raw(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        let at = self.idx(i, j, k);
        self.c[at] = value;
    }

    /// Sets `[e_i, e_j] = value` and `[e_j, e_i] = -value`.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: &Vector) {
        assert_eq!(value.len(), self.dim, "bracket value has wrong length");
        for k in 0..self.dim {
            self.set_raw(i, j, k, value[k].clone());
            self.set_raw(j, i, k, -value[k].clone());
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        Vector::new((0..self.dim).map(|k| self.constant(i, j, k).clone()).collect())
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "bracket of vectors of length {} and {} in a {}-dimensional algebra",
                x.len(),
                y.len(),
                self.dim
            )));
        }
        Ok(self.br(x, y))
    }

    /// Bilinear extension of the structure constants. Panics on length
    /// mismatch; use [`LieAlgebra::bracket`] for checked input.
    pub(crate) fn br(&self, x: &Vector, y: &Vector) -> Vector {
        let d = self.dim;
        let mut out = Vector::zeros(d);
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                let w = &x[i] * &y[j];
                for k in 0..d {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        out[k] += &w * c;
                    }
                }
            }
        }
        out
    }

    /// Exhaustive antisymmetry and Jacobi checks over basis triples.
    /// Witness indices are 1-based.
    pub fn validate(&self) -> Report {
        let d = self.dim;
        let mut report = Report::new("Lie algebra");
        report.scan(
            "antisymmetry",
            triples(d).map(|(i, j, k)| {
                let s = self.constant(i, j, k) + self.constant(j, i, k);
                (!s.is_zero()).then(|| {
                    format!(
                        "c[{}][{}][{}] + c[{}][{}][{}] = {}",
                        i + 1,
                        j + 1,
                        k + 1,
                        j + 1,
                        i + 1,
                        k + 1,
                        fmt_scalar(&s)
                    )
                })
            }),
        );
        // Sparse rows of [e_i, e_j] keep the triple scan cheap.
        let nz: Vec<Vec<(usize, &Scalar)>> = (0..d * d)
            .map(|ij| (0..d).map(|k| (k, &self.c[ij * d + k])).filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        let nested = |sum: &mut Vector, i: usize, j: usize, l: usize| {
            for &(m, a) in &nz[i * d + j] {
                for &(n, b) in &nz[m * d + l] {
                    sum[n] += a * b;
                }
            }
        };
        report.scan(
            "jacobi",
            triples(d).map(|(i, j, l)| {
                let mut sum = Vector::zeros(d);
                nested(&mut sum, i, j, l);
                nested(&mut sum, j, l, i);
                nested(&mut sum, l, i, j);
                (!sum.is_zero()).then(|| format!("({}, {}, {}) -> {}", i + 1, j + 1, l + 1, sum))
            }),
        );
        report
    }

    /// Whether `span(span)` is closed under the bracket.
    pub fn is_subalgebra(&self, span: &[Vector]) -> Result<bool> {
        if span.iter().any(|v| v.len() != self.dim) {
            return Err(Error::DimensionMismatch("span vector length".into()));
        }
        if !independent(span, self.dim) {
            return Err(Error::DegenerateFrameInput);
        }
        for (a, x) in span.iter().enumerate() {
            for y in &span[a + 1..] {
                if !in_span(span, &self.br(x, y)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn triples(d: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..d).flat_map(move |i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, one};

    /// Heisenberg algebra: [e1, e2] = e3.
    fn heisenberg() -> LieAlgebra {
        let mut a = LieAlgebra::abelian(3);
        a.set_bracket(0, 1, &Vector::unit(3, 2));
        a
    }

    #[test]
    fn abelian_passes() {
        let r = LieAlgebra::abelian(4).validate();
        assert!(r.all_passed());
    }

    #[test]
    fn broken_antisymmetry_reports_first_triple() {
        let mut a = LieAlgebra::abelian(3);
        a.set_raw(0, 1, 2, one());
        let r = a.validate();
        assert!(!r.passed("antisymmetry"));
        assert!(r.get("antisymmetry").unwrap().detail.as_deref().unwrap().starts_with("c[1][2][3]"));
    }

    #[test]
    fn jacobi_failure_detected() {
        // [e1,e2]=e2, [e2,e3]=e1, everything else zero: Jacobi fails on (1,2,3).
        let mut a = LieAlgebra::abelian(3);
        a.set_bracket(0, 1, &Vector::unit(3, 1));
        a.set_bracket(1, 2, &Vector::unit(3, 0));
        let r = a.validate();
        assert!(r.passed("antisymmetry"));
        assert!(!r.passed("jacobi"));
    }

    #[test]
    fn bracket_is_bilinear_and_checked() {
        let h = heisenberg();
        let x = Vector::from_ints(&[2, 1, 5]);
        let y = Vector::from_ints(&[1, 3, -1]);
        assert_eq!(h.bracket(&x, &y).unwrap(), Vector::unit(3, 2).scale(&int(5)));
        assert!(h.bracket(&x, &x).unwrap().is_zero());
        assert!(h.bracket(&x, &Vector::zeros(2)).is_err());
    }

    #[test]
    fn subalgebra_checks() {
        let h = heisenberg();
        let full: Vec<Vector> = (0..3).map(|i| Vector::unit(3, i)).collect();
        assert!(h.is_subalgebra(&full).unwrap());
        assert!(!h.is_subalgebra(&full[..2]).unwrap());
        assert!(h.is_subalgebra(&[full[0].clone(), full[2].clone()]).unwrap());
        assert!(h.is_subalgebra(&[full[0].clone()]).unwrap());
        assert!(h.is_subalgebra(&[full[0].clone(), full[0].clone()]).is_err());
    }
}
