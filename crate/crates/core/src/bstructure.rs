//! Left-invariant almost contact B-metric structures on a Lie algebra:
//! axiom checks, the associated metric, the Levi-Civita connection from the
//! Koszul formula, the fundamental tensor `F` and the `F₀` test.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{fmt_scalar, signature, Matrix, Scalar, Signature, SymForm, Vector};
use crate::liegroup::LieAlgebra;
use crate::report::Report;

/// `(φ̄, ξ̄, η̄, ḡ)` on the Lie algebra `alg`. `phi` acts on column
/// coordinates, so column `j` holds `φ̄e_j`; `eta` is a row of covector
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcbmStructure {
    pub alg: LieAlgebra,
    pub phi: Matrix,
    pub xi: Vector,
    pub eta: Vector,
    pub g: SymForm,
}

impl AcbmStructure {
    pub fn new(alg: LieAlgebra, phi: Matrix, xi: Vector, eta: Vector, g: SymForm) -> Result<Self> {
        let d = alg.dim();
        if phi.rows() != d || phi.cols() != d || xi.len() != d || eta.len() != d || g.dim() != d {
            return Err(Error::DimensionMismatch(format!("structure tensors do not match algebra dimension {d}")));
        }
        Ok(AcbmStructure { alg, phi, xi, eta, g })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// `n` with `dim = 2n + 1`.
    pub fn half_dim(&self) -> usize {
        (self.dim() - 1) / 2
    }

    pub fn apply_phi(&self, v: &Vector) -> Vector {
        self.phi.mul_vec(v)
    }

    pub fn eta_of(&self, v: &Vector) -> Scalar {
        self.eta.dot(v)
    }

    fn unit(&self, i: usize) -> Vector {
        Vector::unit(self.dim(), i)
    }
}

/// Checks every structure axiom and its standard consequences on basis
/// vectors. Witnesses use 1-based basis names.
pub fn check_structure(s: &AcbmStructure) -> Report {
    let d = s.dim();
    let mut r = Report::new("almost contact B-metric structure");
    r.assert_that("odd dimension", d % 2 == 1);
    r.push("η̄(ξ̄) = 1", s.eta_of(&s.xi).is_one(), Some(format!("η̄(ξ̄) = {}", fmt_scalar(&s.eta_of(&s.xi)))));
    r.scan(
        "φ̄²X = −X + η̄(X)ξ̄",
        (0..d).map(|i| {
            let x = s.unit(i);
            let lhs = s.apply_phi(&s.apply_phi(&x));
            let rhs = (-&x).axpy(&s.eta_of(&x), &s.xi);
            (lhs != rhs).then(|| format!("X = e{}", i + 1))
        }),
    );
    r.scan(
        "ḡ(φ̄X, φ̄Y) = −ḡ(X,Y) + η̄(X)η̄(Y)",
        pairs(d).map(|(i, j)| {
            let (x, y) = (s.unit(i), s.unit(j));
            let lhs = s.g.eval(&s.apply_phi(&x), &s.apply_phi(&y));
            let rhs = -s.g.eval(&x, &y) + s.eta_of(&x) * s.eta_of(&y);
            (lhs != rhs).then(|| format!("(X,Y) = (e{}, e{})", i + 1, j + 1))
        }),
    );
    r.scan(
        "η̄∘φ̄ = 0",
        (0..d).map(|i| {
            let v = s.eta_of(&s.apply_phi(&s.unit(i)));
            (!v.is_zero()).then(|| format!("X = e{}", i + 1))
        }),
    );
    r.assert_that("φ̄ξ̄ = 0", s.apply_phi(&s.xi).is_zero());
    r.scan(
        "η̄(X) = ḡ(X, ξ̄)",
        (0..d).map(|i| {
            let x = s.unit(i);
            (s.eta_of(&x) != s.g.eval(&x, &s.xi)).then(|| format!("X = e{}", i + 1))
        }),
    );
    r.assert_that("ḡ(ξ̄, ξ̄) = 1", s.g.eval(&s.xi, &s.xi).is_one());
    r.assert_that("rank φ̄ = 2n", s.phi.rank() + 1 == d);
    let sig = signature(&s.g);
    let n = s.half_dim();
    r.push("ḡ has signature (n+1, n)", sig == Signature::new(n + 1, n, 0), Some(format!("signature {sig}")));
    r
}

/// Gram matrix of `g̃(X,Y) = ḡ(X, φ̄Y) + η̄(X)η̄(Y)`.
pub fn associated_metric(s: &AcbmStructure) -> Result<SymForm> {
    let gram = s.g.gram().mul(&s.phi).add(&Matrix::outer(&s.eta, &s.eta));
    SymForm::new(gram)
}

/// Linear connection on left-invariant fields: `∇_{e_i} e_j = Σ_k Γ[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    dim: usize,
    gamma: Vec<Vector>,
}

impl Connection {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `∇_{e_i} e_j`.
    pub fn on_basis(&self, i: usize, j: usize) -> &Vector {
        &self.gamma[i * self.dim + j]
    }

    /// `∇_X Y` for left-invariant `X`, `Y` (constant coefficients).
    pub fn covariant(&self, x: &Vector, y: &Vector) -> Vector {
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
                out = out.axpy(&(&x[i] * &y[j]), self.on_basis(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().all(Vector::is_zero)
    }

    /// `∇_X Y − ∇_Y X = [X, Y]` on all basis pairs.
    pub fn torsion_report(&self, alg: &LieAlgebra) -> Report {
        let mut r = Report::new("torsion");
        r.scan(
            "torsion-free",
            pairs(self.dim).map(|(i, j)| {
                let t = self.on_basis(i, j) - self.on_basis(j, i);
                (t != alg.bracket_basis(i, j)).then(|| format!("(e{}, e{})", i + 1, j + 1))
            }),
        );
        r
    }

    /// `g(∇_X Y, Z) + g(Y, ∇_X Z) = 0` on all basis triples.
    pub fn metric_report(&self, metric: &SymForm, name: &str) -> Report {
        let d = self.dim;
        let mut r = Report::new("metricity");
        // Row i of the table below is the matrix G·Γᵢ with Γᵢ[j] = ∇_{eᵢ}eⱼ.
        let lowered: Vec<Vector> = self.gamma.iter().map(|v| metric.lower(v)).collect();
        r.scan(
            format!("parallel {name}"),
            triples(d).map(|(i, j, k)| {
                let v = &lowered[i * d + j][k] + &lowered[i * d + k][j];
                (!v.is_zero()).then(|| format!("(e{}, e{}, e{})", i + 1, j + 1, k + 1))
            }),
        );
        r
    }
}

/// Levi-Civita connection of a left-invariant metric via
/// `2g(∇_X Y, Z) = g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y)`.
pub fn koszul(alg: &LieAlgebra, metric: &SymForm) -> Result<Connection> {
    let d = alg.dim();
    if metric.dim() != d {
        return Err(Error::DimensionMismatch("metric and algebra dimensions differ".into()));
    }
    let inv = metric.gram().inverse().ok_or(Error::DegenerateMetric)?;
    let half = Scalar::new(1.into(), 2.into());
    let e = |i| Vector::unit(d, i);
    let mut gamma = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let xy = alg.bracket_basis(i, j);
            let lowered = Vector::new(
                (0..d)
                    .map(|k| {
                        let v = metric.eval(&xy, &e(k)) - metric.eval(&alg.bracket_basis(j, k), &e(i))
                            + metric.eval(&alg.bracket_basis(k, i), &e(j));
                        v * &half
                    })
                    .collect(),
            );
            gamma.push(inv.mul_vec(&lowered));
        }
    }
    Ok(Connection { dim: d, gamma })
}

pub fn levi_civita(s: &AcbmStructure) -> Result<Connection> {
    koszul(&s.alg, &s.g)
}

/// `F(X,Y,Z) = ḡ((∇̄_X φ̄)Y, Z) = ḡ(∇̄_X(φ̄Y) − φ̄(∇̄_X Y), Z)`.
pub fn f_tensor(s: &AcbmStructure, conn: &Connection, x: &Vector, y: &Vector, z: &Vector) -> Scalar {
    let dphi = &conn.covariant(x, &s.apply_phi(y)) - &s.apply_phi(&conn.covariant(x, y));
    s.g.eval(&dphi, z)
}

/// Outcome of the bracket test `[X,Y] = −φ̄[φ̄X,Y]`, valid for non-Abelian
/// structures (`[φ̄X, φ̄Y] = −[X,Y]`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BracketCriterion {
    Holds,
    Fails { x: usize, y: usize },
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct F0Verdict {
    pub f0: bool,
    /// 1-based basis triple and the nonzero value of `F` there.
    pub witness: Option<(usize, usize, usize, String)>,
    pub bracket_criterion: BracketCriterion,
    /// `None` when the bracket criterion does not apply.
    pub criteria_agree: Option<bool>,
}

pub fn is_non_abelian(s: &AcbmStructure) -> bool {
    let d = s.dim();
    pairs(d).all(|(i, j)| {
        let (x, y) = (s.unit(i), s.unit(j));
        s.alg.br(&s.apply_phi(&x), &s.apply_phi(&y)) == -s.alg.bracket_basis(i, j)
    })
}

/// `F₀` membership by an exhaustive `F ≡ 0` scan, cross-checked against the
/// bracket criterion when the structure is non-Abelian.
pub fn is_f0(s: &AcbmStructure) -> Result<F0Verdict> {
    let conn = levi_civita(s)?;
    Ok(f0_with(s, &conn))
}

pub fn f0_with(s: &AcbmStructure, conn: &Connection) -> F0Verdict {
    let d = s.dim();
    // F(eᵢ, eⱼ, ·) is the lowered vector ∇̄_{eᵢ}(φ̄eⱼ) − φ̄(∇̄_{eᵢ}eⱼ).
    let witness = pairs(d).find_map(|(i, j)| {
        let (x, y) = (s.unit(i), s.unit(j));
        let dphi = &conn.covariant(&x, &s.apply_phi(&y)) - &s.apply_phi(conn.on_basis(i, j));
        let lowered = s.g.lower(&dphi);
        (0..d).find(|&k| !lowered[k].is_zero()).map(|k| (i + 1, j + 1, k + 1, fmt_scalar(&lowered[k])))
    });
    let f0 = witness.is_none();
    // On an abelian algebra both the Abelian and the non-Abelian bracket
    // conditions hold, so the criterion carries no information there.
    let bracket_criterion = if !s.alg.is_abelian() && is_non_abelian(s) {
        pairs(d)
            .find(|&(i, j)| {
                let px = s.apply_phi(&s.unit(i));
                s.alg.bracket_basis(i, j) != -s.apply_phi(&s.alg.br(&px, &s.unit(j)))
            })
            .map_or(BracketCriterion::Holds, |(i, j)| BracketCriterion::Fails { x: i + 1, y: j + 1 })
    } else {
        BracketCriterion::NotApplicable
    };
    let criteria_agree = match bracket_criterion {
        BracketCriterion::Holds => Some(f0),
        BracketCriterion::Fails { .. } => Some(!f0),
        BracketCriterion::NotApplicable => None,
    };
    F0Verdict { f0, witness, bracket_criterion, criteria_agree }
}

/// The parallel tensors of an `F₀` manifold: `∇̄φ̄ = ∇̄ξ̄ = ∇̄η̄ = 0`,
/// `∇̄g̃ = 0`, and coincidence of the two Levi-Civita connections.
pub fn parallel_tensors_report(s: &AcbmStructure, conn: &Connection) -> Result<Report> {
    let d = s.dim();
    let mut r = Report::new("F₀ parallel tensors");
    r.scan(
        "∇̄φ̄ = 0",
        pairs(d).map(|(i, j)| {
            let (x, y) = (s.unit(i), s.unit(j));
            let lhs = conn.covariant(&x, &s.apply_phi(&y));
            (lhs != s.apply_phi(&conn.covariant(&x, &y))).then(|| format!("(e{}, e{})", i + 1, j + 1))
        }),
    );
    r.scan("∇̄ξ̄ = 0", (0..d).map(|i| (!conn.covariant(&s.unit(i), &s.xi).is_zero()).then(|| format!("X = e{}", i + 1))));
    r.scan(
        "∇̄η̄ = 0",
        pairs(d).map(|(i, j)| {
            let v = s.eta_of(&conn.covariant(&s.unit(i), &s.unit(j)));
            (!v.is_zero()).then(|| format!("(e{}, e{})", i + 1, j + 1))
        }),
    );
    let assoc = associated_metric(s)?;
    r.extend(conn.metric_report(&s.g, "ḡ"));
    r.extend(conn.metric_report(&assoc, "g̃"));
    let tilde = koszul(&s.alg, &assoc)?;
    r.assert_that("Levi-Civita connections of ḡ and g̃ coincide", &tilde == conn);
    Ok(r)
}

fn pairs(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..d).flat_map(move |i| (0..d).map(move |j| (i, j)))
}

fn triples(d: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..d).flat_map(move |i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    /// 3-dimensional structure with φ̄e1 = e2, φ̄e2 = −e1, ξ̄ = e3 and
    /// ḡ = diag(1, −1, 1).
    fn three_dim(alg: LieAlgebra) -> AcbmStructure {
        let phi = Matrix::from_int_rows(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]);
        let g = SymForm::diagonal(&[int(1), int(-1), int(1)]);
        AcbmStructure::new(alg, phi, Vector::unit(3, 2), Vector::unit(3, 2), g).unwrap()
    }

    #[test]
    fn abelian_three_dim_is_flat_f0() {
        let s = three_dim(LieAlgebra::abelian(3));
        assert!(check_structure(&s).all_passed());
        let conn = levi_civita(&s).unwrap();
        assert!(conn.is_zero());
        let v = is_f0(&s).unwrap();
        assert!(v.f0);
        assert_eq!(v.bracket_criterion, BracketCriterion::NotApplicable);
        assert_eq!(v.criteria_agree, None);
    }

    #[test]
    fn associated_metric_three_dim() {
        let s = three_dim(LieAlgebra::abelian(3));
        let gt = associated_metric(&s).unwrap();
        // g̃(e1, e2) = ḡ(e1, φ̄e2) = ḡ(e1, −e1) = −1
        assert_eq!(gt.eval(&Vector::unit(3, 0), &Vector::unit(3, 1)), int(-1));
        assert_eq!(gt.eval(&Vector::unit(3, 2), &Vector::unit(3, 2)), int(1));
        assert_eq!(signature(&gt), Signature::new(2, 1, 0));
    }

    #[test]
    fn heisenberg_connection_is_torsion_free_and_metric() {
        let mut alg = LieAlgebra::abelian(3);
        alg.set_bracket(0, 1, &Vector::unit(3, 2));
        let s = three_dim(alg);
        let conn = levi_civita(&s).unwrap();
        assert!(conn.torsion_report(&s.alg).all_passed());
        assert!(conn.metric_report(&s.g, "ḡ").all_passed());
        // ξ̄ = e3 is not parallel here, so the structure is not F₀.
        assert!(!is_f0(&s).unwrap().f0);
    }

    #[test]
    fn f_tensor_vanishes_for_zero_connection() {
        let s = three_dim(LieAlgebra::abelian(3));
        let conn = levi_civita(&s).unwrap();
        let x = Vector::from_ints(&[1, 2, 3]);
        assert!(f_tensor(&s, &conn, &x, &x, &x).is_zero());
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let phi = Matrix::identity(2);
        let g = SymForm::diagonal(&[int(1), int(1), int(1)]);
        let r = AcbmStructure::new(LieAlgebra::abelian(3), phi, Vector::unit(3, 2), Vector::unit(3, 2), g);
        assert!(r.is_err());
    }
}
