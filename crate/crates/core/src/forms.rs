//! Gauss–Weingarten data of the lightlike submanifold `(M, g)`.
//!
//! Every ambient derivative `∇̄_X Y`, `∇̄_X N`, `∇̄_X L` with `X`, `Y` in the
//! adapted tangent basis `[ξ, s₁, …, s_k]` is solved against the frame
//! `[ξ, s₁, …, s_k, N, L]`:
//!
//! ```text
//! ∇̄_X Y = ∇_X Y + B(X,Y)N + D(X,Y)L
//! ∇̄_X N = −A_N X + τ(X)N + ρ(X)L
//! ∇̄_X L = −A_L X + φ(X)N
//! ∇_X PY = ∇*_X PY + C(X,PY)ξ,   ∇_X ξ = −A*_ξ X − τ(X)ξ
//! ```
//!
//! Operators are stored as `m × m` matrices on tangent coordinates (column
//! `a` is the image of the `a`-th basis vector); bilinear forms as tables.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::bstructure::{f0_with, AcbmStructure, Connection};
use crate::error::{Error, Result};
use crate::exactmath::{scalar_trace, serialize_opt_scalar, serialize_scalar, signed_trace, Matrix, Scalar, Vector};
use crate::report::Report;
use crate::submanifold::{require_ascreen_rsthl, SubmanifoldFrame};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormsReport {
    /// `B(Tₐ, T_b)` over the adapted tangent basis.
    pub b: Matrix,
    /// `C(Tₐ, s_b)`: rows over the tangent basis, columns over the screen.
    pub c: Matrix,
    pub d: Matrix,
    pub a_star_xi: Matrix,
    pub a_n: Matrix,
    pub a_l: Matrix,
    /// `τ` read from `∇̄_X N`.
    pub tau: Vector,
    /// `τ` read from the `ξ`-component of `∇_X ξ`.
    pub tau_from_xi: Vector,
    pub rho: Vector,
    pub phi_form: Vector,
    /// `L`-component of `∇̄_X L`; zero because `ḡ(L, L)` is constant.
    pub l_drift: Vector,
    /// `∇_{Tₐ}T_b` in tangent coordinates.
    pub induced_nabla: Vec<Vec<Vector>>,
    /// `∇*_{Tₐ}s_b` in screen coordinates.
    pub screen_nabla: Vec<Vec<Vector>>,
    /// `h(Tₐ, T_b) = B N + D L` in ambient coordinates.
    pub h_table: Vec<Vec<Vector>>,
    /// `∇̄_{Tₐ}T_b` in ambient coordinates.
    pub ambient_nabla: Vec<Vec<Vector>>,
    pub f0: bool,
    #[serde(serialize_with = "serialize_scalar")]
    pub epsilon: Scalar,
    pub minimal: bool,
}

/// Coordinates with respect to `[ξ, s₁, …, s_k, N, L]`.
pub(crate) struct FrameCoords {
    inv: Matrix,
    basis: Vec<Vector>,
}

impl FrameCoords {
    pub(crate) fn new(basis: Vec<Vector>) -> Result<Self> {
        let dim = basis.first().map_or(0, Vector::len);
        let inv = Matrix::from_columns(&basis, dim).inverse().ok_or(Error::FrameNotSpanning)?;
        Ok(FrameCoords { inv, basis })
    }

    pub(crate) fn of(&self, v: &Vector) -> Vector {
        self.inv.mul_vec(v)
    }

    /// `Σ cᵢ bᵢ` over the first `coords.len()` basis vectors.
    pub(crate) fn combine(&self, coords: &Vector) -> Vector {
        let dim = self.basis[0].len();
        Vector::combination(coords.entries(), &self.basis[..coords.len()], dim)
    }
}

fn head(v: &Vector, m: usize) -> Vector {
    Vector::new(v.entries()[..m].to_vec())
}

/// Decomposes the ambient connection along the frame. Works for any
/// ambient structure; `F₀` is only recorded.
pub fn gauss_weingarten(s: &AcbmStructure, conn: &Connection, frame: &SubmanifoldFrame) -> Result<FormsReport> {
    let coords = FrameCoords::new(frame.frame_basis())?;
    let t = frame.adapted_tangent();
    let m = t.len();
    let k = m - 1;
    let (n_vec, l_vec) = (&frame.n_vec, &frame.l_vec);

    let mut b = Matrix::zeros(m, m);
    let mut d = Matrix::zeros(m, m);
    let mut induced_nabla = vec![Vec::with_capacity(m); m];
    let mut h_table = vec![Vec::with_capacity(m); m];
    let mut ambient_nabla = vec![Vec::with_capacity(m); m];
    for a in 0..m {
        for c in 0..m {
            let amb = conn.covariant(&t[a], &t[c]);
            let x = coords.of(&amb);
            b[(a, c)] = x[m].clone();
            d[(a, c)] = x[m + 1].clone();
            h_table[a].push(n_vec.scale(&x[m]).axpy(&x[m + 1], l_vec));
            induced_nabla[a].push(head(&x, m));
            ambient_nabla[a].push(amb);
        }
    }

    let mut a_n = Matrix::zeros(m, m);
    let mut a_l = Matrix::zeros(m, m);
    let mut a_star_xi = Matrix::zeros(m, m);
    let mut tau = Vector::zeros(m);
    let mut tau_from_xi = Vector::zeros(m);
    let mut rho = Vector::zeros(m);
    let mut phi_form = Vector::zeros(m);
    let mut l_drift = Vector::zeros(m);
    for a in 0..m {
        let xn = coords.of(&conn.covariant(&t[a], n_vec));
        let xl = coords.of(&conn.covariant(&t[a], l_vec));
        for r in 0..m {
            a_n[(r, a)] = -xn[r].clone();
            a_l[(r, a)] = -xl[r].clone();
        }
        tau[a] = xn[m].clone();
        rho[a] = xn[m + 1].clone();
        phi_form[a] = xl[m].clone();
        l_drift[a] = xl[m + 1].clone();
        let nab_xi = &induced_nabla[a][0];
        tau_from_xi[a] = -nab_xi[0].clone();
        for r in 1..m {
            a_star_xi[(r, a)] = -nab_xi[r].clone();
        }
    }

    let mut c = Matrix::zeros(m, k);
    let mut screen_nabla = vec![Vec::with_capacity(k); m];
    for a in 0..m {
        for j in 0..k {
            let v = &induced_nabla[a][j + 1];
            c[(a, j)] = v[0].clone();
            screen_nabla[a].push(Vector::new(v.entries()[1..].to_vec()));
        }
    }

    let mut report = FormsReport {
        b,
        c,
        d,
        a_star_xi,
        a_n,
        a_l,
        tau,
        tau_from_xi,
        rho,
        phi_form,
        l_drift,
        induced_nabla,
        screen_nabla,
        h_table,
        ambient_nabla,
        f0: f0_with(s, conn).f0,
        epsilon: frame.epsilon.clone(),
        minimal: false,
    };
    report.minimal = lightlike_minimal(&report, frame, s)?.minimal;
    Ok(report)
}

impl FormsReport {
    pub fn tangent_dim(&self) -> usize {
        self.b.rows()
    }

    /// `B(Tₐ, v)` for `v` given in tangent coordinates.
    pub fn b_with(&self, a: usize, v: &Vector) -> Scalar {
        self.b.row(a).dot(v)
    }
}

/// Ambient image of operator column `a`.
fn op_vec(coords: &FrameCoords, op: &Matrix, a: usize) -> Vector {
    coords.combine(&op.column(a))
}

fn pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..m).flat_map(move |i| (0..m).map(move |j| (i, j)))
}

fn witness2(a: usize, b: usize) -> String {
    format!("(T{}, T{})", a, b)
}

/// Every metric-generic relation among `B, C, D`, the shape operators, the
/// 1-forms and the induced connections, checked on all basis tuples.
/// Tangent basis vectors are named `T0 = ξ, T1…Tk` (the screen).
pub fn verify_gauss_weingarten_relations(
    rep: &FormsReport,
    frame: &SubmanifoldFrame,
    s: &AcbmStructure,
) -> Result<Report> {
    let coords = FrameCoords::new(frame.frame_basis())?;
    let t = frame.adapted_tangent();
    let m = t.len();
    let g = &s.g;
    let n = &frame.n_vec;
    let eps = &rep.epsilon;
    let eta = |v: &Vector| g.eval(v, n);
    let a_star: Vec<Vector> = (0..m).map(|a| op_vec(&coords, &rep.a_star_xi, a)).collect();
    let a_n: Vec<Vector> = (0..m).map(|a| op_vec(&coords, &rep.a_n, a)).collect();
    let a_l: Vec<Vector> = (0..m).map(|a| op_vec(&coords, &rep.a_l, a)).collect();
    let nabla_tab: Vec<Vec<Vector>> =
        rep.induced_nabla.iter().map(|row| row.iter().map(|v| coords.combine(v)).collect()).collect();
    let nabla = |a: usize, c: usize| &nabla_tab[a][c];
    let mut r = Report::new("Gauss–Weingarten relations of (M, g)");

    r.scan("B symmetric", pairs(m).map(|(a, c)| (rep.b[(a, c)] != rep.b[(c, a)]).then(|| witness2(a, c))));
    r.scan("D symmetric", pairs(m).map(|(a, c)| (rep.d[(a, c)] != rep.d[(c, a)]).then(|| witness2(a, c))));
    r.scan("B(X, ξ) = 0", (0..m).map(|a| (!rep.b[(a, 0)].is_zero()).then(|| format!("X = T{a}"))));
    r.scan(
        "εD(X, ξ) = −φ(X)",
        (0..m).map(|a| (eps * &rep.d[(a, 0)] != -rep.phi_form[a].clone()).then(|| format!("X = T{a}"))),
    );
    r.scan(
        "reconstruction ∇_XY + B(X,Y)N + D(X,Y)L = ∇̄_XY",
        pairs(m).map(|(a, c)| {
            let v = nabla(a, c).axpy(&rep.b[(a, c)], n).axpy(&rep.d[(a, c)], &frame.l_vec);
            (v != rep.ambient_nabla[a][c]).then(|| witness2(a, c))
        }),
    );
    r.scan(
        "∇ torsion-free",
        pairs(m).map(|(a, c)| {
            let v = nabla(a, c) - nabla(c, a);
            (v != s.alg.br(&t[a], &t[c])).then(|| witness2(a, c))
        }),
    );
    r.scan(
        "B(X,Y) = g(A*_ξX, Y)",
        pairs(m).map(|(a, c)| (rep.b[(a, c)] != g.eval(&a_star[a], &t[c])).then(|| witness2(a, c))),
    );
    r.scan("ḡ(A*_ξX, N) = 0", (0..m).map(|a| (!g.eval(&a_star[a], n).is_zero()).then(|| format!("X = T{a}"))));
    r.assert_that("A*_ξξ = 0", a_star[0].is_zero());
    r.scan(
        "A*_ξ self-adjoint",
        pairs(m).map(|(a, c)| (g.eval(&a_star[a], &t[c]) != g.eval(&t[a], &a_star[c])).then(|| witness2(a, c))),
    );
    r.scan(
        "A*_ξ and A_N are S(TM)-valued",
        (0..m).map(|a| (!rep.a_star_xi[(0, a)].is_zero() || !rep.a_n[(0, a)].is_zero()).then(|| format!("X = T{a}"))),
    );
    r.scan(
        "C(X, PY) = g(A_NX, PY)",
        (0..m)
            .flat_map(|a| (1..m).map(move |c| (a, c)))
            .map(|(a, c)| (rep.c[(a, c - 1)] != g.eval(&a_n[a], &t[c])).then(|| witness2(a, c))),
    );
    r.scan("ḡ(A_NX, N) = 0", (0..m).map(|a| (!g.eval(&a_n[a], n).is_zero()).then(|| format!("X = T{a}"))));
    r.scan(
        "εD(X, PY) = g(A_LX, PY)",
        (0..m)
            .flat_map(|a| (1..m).map(move |c| (a, c)))
            .map(|(a, c)| (eps * &rep.d[(a, c)] != g.eval(&a_l[a], &t[c])).then(|| witness2(a, c))),
    );
    r.scan(
        "ḡ(A_LX, N) = ερ(X)",
        (0..m).map(|a| (g.eval(&a_l[a], n) != eps * &rep.rho[a]).then(|| format!("X = T{a}"))),
    );
    r.scan(
        "εD(X,Y) = g(A_LX, PY) − φ(X)η(Y)",
        pairs(m).map(|(a, c)| {
            let py = if c == 0 { Vector::zeros(s.dim()) } else { t[c].clone() };
            let rhs = g.eval(&a_l[a], &py) - &rep.phi_form[a] * eta(&t[c]);
            (eps * &rep.d[(a, c)] != rhs).then(|| witness2(a, c))
        }),
    );
    r.scan(
        "(∇_X g)(Y,Z) = B(X,Y)η(Z) + B(X,Z)η(Y)",
        (0..m).flat_map(|a| pairs(m).map(move |(c, e)| (a, c, e))).map(|(a, c, e)| {
            let lhs = -(g.eval(nabla(a, c), &t[e]) + g.eval(&t[c], nabla(a, e)));
            let rhs = &rep.b[(a, c)] * eta(&t[e]) + &rep.b[(a, e)] * eta(&t[c]);
            (lhs != rhs).then(|| format!("(T{a}, T{c}, T{e})"))
        }),
    );
    let screen_tab: Vec<Vec<Vector>> = rep
        .screen_nabla
        .iter()
        .map(|row| row.iter().map(|v| Vector::combination(v.entries(), &frame.screen, s.dim())).collect())
        .collect();
    let k = m - 1;
    r.scan(
        "∇* metric on S(TM)",
        (0..m).flat_map(|a| pairs(k).map(move |(i, j)| (a, i, j))).map(|(a, i, j)| {
            let v = g.eval(&screen_tab[a][i], &frame.screen[j]) + g.eval(&frame.screen[i], &screen_tab[a][j]);
            (!v.is_zero()).then(|| format!("(T{a}, s{}, s{})", i + 1, j + 1))
        }),
    );
    r.scan(
        "τ agrees between ∇̄_XN and ∇_Xξ",
        (0..m).map(|a| (rep.tau[a] != rep.tau_from_xi[a]).then(|| format!("X = T{a}"))),
    );
    r.scan("ḡ(∇̄_XL, L) = 0", (0..m).map(|a| (!rep.l_drift[a].is_zero()).then(|| format!("X = T{a}"))));
    Ok(r)
}

/// Tangent coordinates of `φ̄(PTₐ)`; zero for `a = 0`.
fn phi_p(coords: &FrameCoords, s: &AcbmStructure, t: &[Vector], a: usize) -> Vector {
    let m = t.len();
    if a == 0 {
        return Vector::zeros(m);
    }
    head(&coords.of(&s.apply_phi(&t[a])), m)
}

/// The `F₀` ascreen RSTHL specialisation: operator relations, vanishing
/// 1-forms, commutation with `φ̄` on the screen, anti-invariance of `B`
/// and `h`.
pub fn verify_f0_relations(rep: &FormsReport, frame: &SubmanifoldFrame, s: &AcbmStructure) -> Result<Report> {
    if !rep.f0 {
        return Err(Error::RequiresF0);
    }
    let mu = require_ascreen_rsthl(s, frame)?;
    let coords = FrameCoords::new(frame.frame_basis())?;
    let t = frame.adapted_tangent();
    let m = t.len();
    let mu2 = &mu * &mu;
    let neg_half_mu2 = -(&mu2 * Scalar::from_integer(2.into())).recip();
    let inv_mu = mu.recip();
    let a_star: Vec<Vector> = (0..m).map(|a| op_vec(&coords, &rep.a_star_xi, a)).collect();
    let a_n: Vec<Vector> = (0..m).map(|a| op_vec(&coords, &rep.a_n, a)).collect();
    let a_l: Vec<Vector> = (0..m).map(|a| op_vec(&coords, &rep.a_l, a)).collect();
    let phi_p: Vec<Vector> = (0..m).map(|a| phi_p(&coords, s, &t, a)).collect();
    let mut r = Report::new("F₀ ascreen RSTHL relations");

    r.scan(
        "A_NX = −(1/2μ²)A*_ξX",
        (0..m).map(|a| (a_n[a] != a_star[a].scale(&neg_half_mu2)).then(|| format!("X = T{a}"))),
    );
    r.scan(
        "A_LX = (1/μ)φ̄(A*_ξX)",
        (0..m).map(|a| (a_l[a] != s.apply_phi(&a_star[a]).scale(&inv_mu)).then(|| format!("X = T{a}"))),
    );
    r.scan(
        "D(X,Y) = (1/μ)B(X, φ̄PY)",
        pairs(m).map(|(a, c)| (rep.d[(a, c)] != rep.b_with(a, &phi_p[c]) * &inv_mu).then(|| witness2(a, c))),
    );
    r.scan(
        "C(X, PY) = −(1/2μ²)B(X, Y)",
        (0..m)
            .flat_map(|a| (1..m).map(move |c| (a, c)))
            .map(|(a, c)| (rep.c[(a, c - 1)] != &rep.b[(a, c)] * &neg_half_mu2).then(|| witness2(a, c))),
    );
    r.assert_that("τ = 0", rep.tau.is_zero());
    r.assert_that("ρ = 0", rep.rho.is_zero());
    r.assert_that("φ = 0", rep.phi_form.is_zero());
    for (name, op) in [("A*_ξ", &rep.a_star_xi), ("A_N", &rep.a_n), ("A_L", &rep.a_l)] {
        r.scan(
            format!("{name} commutes with φ̄ on S(TM)"),
            (1..m).map(|a| {
                let lhs = coords.combine(&op.mul_vec(&phi_p[a]));
                let rhs = s.apply_phi(&op_vec(&coords, op, a));
                (lhs != rhs).then(|| format!("X = T{a}"))
            }),
        );
    }
    let b_on = |u: &Vector, v: &Vector| rep.b.mul_vec(v).dot(u);
    let h_on = |u: &Vector, v: &Vector| {
        let mut acc = Vector::zeros(s.dim());
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if !ui.is_zero() && !vj.is_zero() {
                    acc = acc.axpy(&(ui * vj), &rep.h_table[i][j]);
                }
            }
        }
        acc
    };
    let screen_pairs = || (1..m).flat_map(move |a| (1..m).map(move |c| (a, c)));
    r.scan(
        "B(φ̄X, φ̄Y) = −B(X, Y)",
        screen_pairs().map(|(a, c)| (b_on(&phi_p[a], &phi_p[c]) != -rep.b[(a, c)].clone()).then(|| witness2(a, c))),
    );
    r.scan(
        "h(φ̄X, φ̄Y) = −h(X, Y)",
        screen_pairs().map(|(a, c)| (h_on(&phi_p[a], &phi_p[c]) != -&rep.h_table[a][c]).then(|| witness2(a, c))),
    );
    Ok(r)
}

/// Minimality certificate for `(M, g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LightlikeMinimality {
    pub minimal: bool,
    /// Screen part of `h` on the radical, `D(ξ, ξ)`.
    #[serde(serialize_with = "serialize_scalar")]
    pub d_xi_xi: Scalar,
    /// `trace_{g|S(TM)} h` in ambient coordinates.
    pub trace: Vector,
    /// `½ trace_{g|S(TM)} B`; only for `F₀` ascreen RSTHL frames.
    #[serde(serialize_with = "serialize_opt_scalar")]
    pub s1: Option<Scalar>,
    /// `½ trace_{g|S(TM)} B(·, φ̄·)`.
    #[serde(serialize_with = "serialize_opt_scalar")]
    pub s2: Option<Scalar>,
    /// `minimal == (s1 = 0 ∧ s2 = 0)`.
    pub agrees: Option<bool>,
}

impl LightlikeMinimality {
    pub fn scalar_conditions(&self) -> Option<bool> {
        Some(self.s1.as_ref()?.is_zero() && self.s2.as_ref()?.is_zero())
    }
}

/// Lightlike minimality: `D(ξ, ξ) = 0` and the inverse-Gram trace of `h`
/// over the screen vanishes. With an `F₀` ascreen RSTHL frame the two
/// scalar conditions on `B` are evaluated as well.
pub fn lightlike_minimal(
    rep: &FormsReport,
    frame: &SubmanifoldFrame,
    s: &AcbmStructure,
) -> Result<LightlikeMinimality> {
    let m = rep.tangent_dim();
    let screen_form = s.g.restrict(&frame.screen);
    let table: Vec<Vec<Vector>> = (1..m).map(|a| rep.h_table[a][1..].to_vec()).collect();
    let trace = signed_trace(&screen_form, &table)?;
    let d_xi_xi = rep.d[(0, 0)].clone();
    let minimal = d_xi_xi.is_zero() && trace.is_zero();

    let (s1, s2) = if rep.f0 && require_ascreen_rsthl(s, frame).is_ok() {
        let coords = FrameCoords::new(frame.frame_basis())?;
        let t = frame.adapted_tangent();
        let k = m - 1;
        let mut bs = Matrix::zeros(k, k);
        let mut bphi = Matrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                bs[(i, j)] = rep.b[(i + 1, j + 1)].clone();
                bphi[(i, j)] = rep.b_with(i + 1, &phi_p(&coords, s, &t, j + 1));
            }
        }
        let half = Scalar::new(One::one(), 2.into());
        (Some(scalar_trace(&screen_form, &bs)? * &half), Some(scalar_trace(&screen_form, &bphi)? * &half))
    } else {
        (None, None)
    };
    let mut out = LightlikeMinimality { minimal, d_xi_xi, trace, s1, s2, agrees: None };
    out.agrees = out.scalar_conditions().map(|c| c == minimal);
    Ok(out)
}
