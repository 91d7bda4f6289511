//! `(M, g̃)` as a non-degenerate codimension-two submanifold of `(M̄, g̃)`.
//!
//! On an `F₀` structure `∇̄` is also the Levi-Civita connection of `g̃`, so
//!
//! ```text
//! ∇̄_X Y  = ∇̃_X Y + h₁(X,Y)N₁ + h₂(X,Y)N₂
//! ∇̄_X N₁ = −Ã_{N₁}X + α(X)N₂,   ∇̄_X N₂ = −Ã_{N₂}X + α(X)N₁
//! ```
//!
//! with `h₁ = g̃(∇̄_X Y, N₁)` and `h₂ = −g̃(∇̄_X Y, N₂)`. The connection
//! relation with the lightlike side is
//! `∇̃_X Y = ∇_X Y + (1/μ²)(½B(X,Y) + B(X, φ̄PY))ξ`, hence
//! `h̃ − h = −(1/μ²)(½B(X,Y) + B(X, φ̄PY))ξ`.

use num_traits::Zero;
use serde::Serialize;

use crate::bstructure::{associated_metric, f0_with, levi_civita, AcbmStructure, Connection};
use crate::error::{Error, Result};
use crate::exactmath::{fmt_scalar, q, signed_trace, Matrix, Scalar, Vector};
use crate::forms::{gauss_weingarten, lightlike_minimal, FormsReport, FrameCoords, LightlikeMinimality};
use crate::report::Report;
use crate::submanifold::{require_ascreen_rsthl, verify_normal_frame, SubmanifoldFrame};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssocReport {
    pub n1: Vector,
    pub n2: Vector,
    pub h1: Matrix,
    pub h2: Matrix,
    pub a_n1: Matrix,
    pub a_n2: Matrix,
    /// `α` read from `∇̄_X N₁`.
    pub alpha: Vector,
    /// `α` read from `∇̄_X N₂`.
    pub alpha_from_n2: Vector,
    /// `N₁`-component of `∇̄_X N₁` and `N₂`-component of `∇̄_X N₂`.
    pub n1_drift: Vector,
    pub n2_drift: Vector,
    /// `∇̃_{Tₐ}T_b` in tangent coordinates.
    pub tilde_nabla: Vec<Vec<Vector>>,
    /// `h̃ = h₁N₁ + h₂N₂` in ambient coordinates.
    pub tilde_h_table: Vec<Vec<Vector>>,
    /// Components of `h̃` along `[ξ, N, L]`.
    pub tilde_h_mixed: Vec<Vec<Vector>>,
    /// Whether `h̃` has no screen component in the lightlike frame.
    pub mixed_exact: bool,
    pub trace: Vector,
    pub minimal: bool,
}

pub fn assoc_gauss_weingarten(s: &AcbmStructure, conn: &Connection, frame: &SubmanifoldFrame) -> Result<AssocReport> {
    if !f0_with(s, conn).f0 {
        return Err(Error::AssociatedConnectionDiffers);
    }
    let nf = verify_normal_frame(s, frame)?;
    let (n1, n2) = (nf.n1, nf.n2);
    let gt = associated_metric(s)?;
    let t = frame.adapted_tangent();
    let m = t.len();
    let mut basis = t.clone();
    basis.push(n1.clone());
    basis.push(n2.clone());
    let normal = FrameCoords::new(basis)?;
    let lightlike = FrameCoords::new(frame.frame_basis())?;

    let mut h1 = Matrix::zeros(m, m);
    let mut h2 = Matrix::zeros(m, m);
    let mut tilde_nabla = vec![Vec::with_capacity(m); m];
    let mut tilde_h_table = vec![Vec::with_capacity(m); m];
    let mut tilde_h_mixed = vec![Vec::with_capacity(m); m];
    let mut mixed_exact = true;
    for a in 0..m {
        for c in 0..m {
            let amb = conn.covariant(&t[a], &t[c]);
            let x1 = gt.eval(&amb, &n1);
            let x2 = -gt.eval(&amb, &n2);
            let th = n1.scale(&x1).axpy(&x2, &n2);
            let tangent = normal.of(&(&amb - &th));
            tilde_nabla[a].push(Vector::new(tangent.entries()[..m].to_vec()));
            let mixed = lightlike.of(&th);
            mixed_exact &= mixed.entries()[1..m].iter().all(Zero::is_zero);
            tilde_h_mixed[a].push(Vector::new(vec![mixed[0].clone(), mixed[m].clone(), mixed[m + 1].clone()]));
            tilde_h_table[a].push(th);
            h1[(a, c)] = x1;
            h2[(a, c)] = x2;
        }
    }

    let mut a_n1 = Matrix::zeros(m, m);
    let mut a_n2 = Matrix::zeros(m, m);
    let mut alpha = Vector::zeros(m);
    let mut alpha_from_n2 = Vector::zeros(m);
    let mut n1_drift = Vector::zeros(m);
    let mut n2_drift = Vector::zeros(m);
    for a in 0..m {
        let y1 = normal.of(&conn.covariant(&t[a], &n1));
        let y2 = normal.of(&conn.covariant(&t[a], &n2));
        for r in 0..m {
            a_n1[(r, a)] = -y1[r].clone();
            a_n2[(r, a)] = -y2[r].clone();
        }
        n1_drift[a] = y1[m].clone();
        alpha[a] = y1[m + 1].clone();
        alpha_from_n2[a] = y2[m].clone();
        n2_drift[a] = y2[m + 1].clone();
    }

    let trace = signed_trace(&gt.restrict(&t), &tilde_h_table)?;
    let minimal = trace.is_zero();
    Ok(AssocReport {
        n1,
        n2,
        h1,
        h2,
        a_n1,
        a_n2,
        alpha,
        alpha_from_n2,
        n1_drift,
        n2_drift,
        tilde_nabla,
        tilde_h_table,
        tilde_h_mixed,
        mixed_exact,
        trace,
        minimal,
    })
}

fn pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |i| (0..m).map(move |j| (i, j)))
}

fn witness2(a: usize, b: usize) -> String {
    format!("(T{a}, T{b})")
}

/// `(1/μ²)(½B(X,Y) + B(X, φ̄PY))`: the `ξ`-coefficient of `∇̃_X Y − ∇_X Y`.
pub fn connection_offset(forms: &FormsReport, frame: &SubmanifoldFrame, s: &AcbmStructure) -> Result<Matrix> {
    let mu = frame.mu()?;
    let coords = FrameCoords::new(frame.frame_basis())?;
    let t = frame.adapted_tangent();
    let m = t.len();
    let inv_mu2 = (mu * mu).recip();
    let mut out = Matrix::zeros(m, m);
    for (a, c) in pairs(m) {
        out[(a, c)] = (&forms.b[(a, c)] * q(1, 2) + b_phi_p(forms, &coords, s, &t, a, c)) * &inv_mu2;
    }
    Ok(out)
}

/// `B(Tₐ, φ̄PT_c)`.
fn b_phi_p(forms: &FormsReport, coords: &FrameCoords, s: &AcbmStructure, t: &[Vector], a: usize, c: usize) -> Scalar {
    if c == 0 {
        return Scalar::zero();
    }
    let v = coords.of(&s.apply_phi(&t[c]));
    forms.b_with(a, &Vector::new(v.entries()[..t.len()].to_vec()))
}

/// Cross-relations between the lightlike data of `(M, g)` and the
/// non-degenerate data of `(M, g̃)`, plus the intrinsic checks on `(M, g̃)`.
pub fn verify_cross_relations(
    assoc: &AssocReport,
    forms: &FormsReport,
    frame: &SubmanifoldFrame,
    s: &AcbmStructure,
) -> Result<Report> {
    let mu = require_ascreen_rsthl(s, frame)?;
    let gt = associated_metric(s)?;
    let coords = FrameCoords::new(frame.frame_basis())?;
    let t = frame.adapted_tangent();
    let m = t.len();
    let dim = s.dim();
    let inv_mu = mu.recip();
    let tan = |v: &Vector| Vector::combination(v.entries(), &t, dim);
    let op = |mat: &Matrix, a: usize| tan(&mat.column(a));
    let offset = connection_offset(forms, frame, s)?;
    let a_star: Vec<Vector> = (0..m).map(|a| op(&forms.a_star_xi, a)).collect();
    let a_n1: Vec<Vector> = (0..m).map(|a| op(&assoc.a_n1, a)).collect();
    let a_n2: Vec<Vector> = (0..m).map(|a| op(&assoc.a_n2, a)).collect();
    let tilde: Vec<Vec<Vector>> = assoc.tilde_nabla.iter().map(|row| row.iter().map(tan).collect()).collect();
    let mut r = Report::new("relations between (M, g) and (M, g̃)");

    r.scan(
        "∇̃_XY = ∇_XY + (1/μ²)(½B(X,Y) + B(X, φ̄PY))ξ",
        pairs(m).map(|(a, c)| {
            let rhs = tan(&forms.induced_nabla[a][c]).axpy(&offset[(a, c)], &frame.rad);
            (tilde[a][c] != rhs).then(|| witness2(a, c))
        }),
    );
    r.scan(
        "h₁(X,Y) = (1/μ)B(X,Y)",
        pairs(m).map(|(a, c)| (assoc.h1[(a, c)] != &forms.b[(a, c)] * &inv_mu).then(|| witness2(a, c))),
    );
    r.scan(
        "h₂(X,Y) = −(1/μ)(B(X,Y) + B(X, φ̄PY))",
        pairs(m).map(|(a, c)| {
            let rhs = -(&forms.b[(a, c)] + b_phi_p(forms, &coords, s, &t, a, c)) * &inv_mu;
            (assoc.h2[(a, c)] != rhs).then(|| witness2(a, c))
        }),
    );
    r.scan(
        "Ã_{N₁}X = −(1/μ)φ̄(A*_ξX)",
        (0..m).map(|a| (a_n1[a] != s.apply_phi(&a_star[a]).scale(&-&inv_mu)).then(|| format!("X = T{a}"))),
    );
    r.scan(
        "Ã_{N₂}X = (1/μ)(A*_ξX − φ̄(A*_ξX))",
        (0..m).map(|a| {
            let rhs = (&a_star[a] - &s.apply_phi(&a_star[a])).scale(&inv_mu);
            (a_n2[a] != rhs).then(|| format!("X = T{a}"))
        }),
    );
    r.assert_that("α = 0", assoc.alpha.is_zero());
    r.assert_that("α agrees between ∇̄_XN₁ and ∇̄_XN₂", assoc.alpha == assoc.alpha_from_n2);
    r.assert_that("g̃(∇̄_XN₁, N₁) = g̃(∇̄_XN₂, N₂) = 0", assoc.n1_drift.is_zero() && assoc.n2_drift.is_zero());
    r.assert_that("h̃ takes values in span{ξ, N, L}", assoc.mixed_exact);
    r.scan(
        "h̃ − h = −(1/μ²)(½B(X,Y) + B(X, φ̄PY))ξ",
        pairs(m).map(|(a, c)| {
            let lhs = &assoc.tilde_h_table[a][c] - &forms.h_table[a][c];
            (lhs != frame.rad.scale(&-offset[(a, c)].clone())).then(|| witness2(a, c))
        }),
    );
    r.scan(
        "h₁, h₂ symmetric",
        pairs(m).map(|(a, c)| {
            (assoc.h1[(a, c)] != assoc.h1[(c, a)] || assoc.h2[(a, c)] != assoc.h2[(c, a)]).then(|| witness2(a, c))
        }),
    );
    r.scan(
        "h₁(X,Y) = g̃(Ã_{N₁}X, Y), h₂(X,Y) = −g̃(Ã_{N₂}X, Y)",
        pairs(m).map(|(a, c)| {
            let ok = assoc.h1[(a, c)] == gt.eval(&a_n1[a], &t[c]) && assoc.h2[(a, c)] == -gt.eval(&a_n2[a], &t[c]);
            (!ok).then(|| witness2(a, c))
        }),
    );
    r.scan(
        "Ã_{N₁}, Ã_{N₂} self-adjoint for g̃",
        pairs(m).map(|(a, c)| {
            let ok = [&a_n1, &a_n2].iter().all(|op| gt.eval(&op[a], &t[c]) == gt.eval(&t[a], &op[c]));
            (!ok).then(|| witness2(a, c))
        }),
    );
    r.scan(
        "∇̃ torsion-free",
        pairs(m).map(|(a, c)| {
            let v = &tilde[a][c] - &tilde[c][a];
            (v != s.alg.br(&t[a], &t[c])).then(|| witness2(a, c))
        }),
    );
    r.scan(
        "∇̃ metric for g̃",
        (0..m).flat_map(|a| pairs(m).map(move |(c, e)| (a, c, e))).map(|(a, c, e)| {
            let v = gt.eval(&tilde[a][c], &t[e]) + gt.eval(&t[c], &tilde[a][e]);
            (!v.is_zero()).then(|| format!("(T{a}, T{c}, T{e})"))
        }),
    );
    let phi_t: Vec<Vector> = (0..m)
        .map(|a| {
            if a == 0 {
                Vector::zeros(m)
            } else {
                Vector::new(coords.of(&s.apply_phi(&t[a])).entries()[..m].to_vec())
            }
        })
        .collect();
    let bilinear = |table: &[Vec<Vector>], u: &Vector, v: &Vector| {
        let mut acc = Vector::zeros(dim);
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                acc = acc.axpy(&(ui * vj), &table[i][j]);
            }
        }
        acc
    };
    r.scan(
        "h̃(φ̄X, φ̄Y) = −h̃(X, Y)",
        (1..m).flat_map(|a| (1..m).map(move |c| (a, c))).map(|(a, c)| {
            (bilinear(&assoc.tilde_h_table, &phi_t[a], &phi_t[c]) != -&assoc.tilde_h_table[a][c])
                .then(|| witness2(a, c))
        }),
    );
    r.assert_that("h̃(ξ, ξ) = 0", assoc.tilde_h_table[0][0].is_zero());
    Ok(r)
}

/// Outcome of running both minimality pipelines side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub lightlike: LightlikeMinimality,
    pub assoc_trace: Vector,
    pub assoc_minimal: bool,
    /// `s1 = 0 ∧ s2 = 0`.
    pub scalar_conditions: bool,
}

impl Equivalence {
    pub fn minimal(&self) -> bool {
        self.lightlike.minimal
    }
}

/// Lightlike minimality of `(M, g)`, minimality of `(M, g̃)` and the two
/// scalar conditions on `B` must all agree; disagreement is a hard error.
pub fn minimality_equivalence(s: &AcbmStructure, frame: &SubmanifoldFrame) -> Result<Equivalence> {
    let conn = levi_civita(s)?;
    let forms = gauss_weingarten(s, &conn, frame)?;
    if !forms.f0 {
        return Err(Error::RequiresF0);
    }
    let assoc = assoc_gauss_weingarten(s, &conn, frame)?;
    equivalence_from(s, frame, &forms, &assoc)
}

/// [`minimality_equivalence`] on already computed reports.
pub fn equivalence_from(
    s: &AcbmStructure,
    frame: &SubmanifoldFrame,
    forms: &FormsReport,
    assoc: &AssocReport,
) -> Result<Equivalence> {
    if !forms.f0 {
        return Err(Error::RequiresF0);
    }
    let lightlike = lightlike_minimal(forms, frame, s)?;
    let scalar_conditions =
        lightlike.scalar_conditions().ok_or_else(|| Error::NotAscreenRsthl("scalar conditions unavailable".into()))?;
    if lightlike.minimal != assoc.minimal || lightlike.minimal != scalar_conditions {
        return Err(Error::EquivalenceViolated(format!(
            "lightlike minimal = {}, associated minimal = {}, s1 = {}, s2 = {}",
            lightlike.minimal,
            assoc.minimal,
            lightlike.s1.as_ref().map_or("-".into(), fmt_scalar),
            lightlike.s2.as_ref().map_or("-".into(), fmt_scalar),
        )));
    }
    Ok(Equivalence { lightlike, assoc_trace: assoc.trace.clone(), assoc_minimal: assoc.minimal, scalar_conditions })
}
