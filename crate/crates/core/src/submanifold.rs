//! Half lightlike Lie-subgroup submanifolds: radical, screen, lightlike
//! transversal `N`, screen transversal `L`, and the relations that hold for
//! the ascreen radical screen transversal (RSTHL) case.
//!
//! All vectors are kept in ambient coordinates. The adapted tangent basis
//! used by the downstream modules is `[ξ, s₁, …, s_k]` where `sᵢ` span the
//! screen; the full frame appends `N` and `L`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bstructure::{associated_metric, AcbmStructure};
use crate::error::{Error, Result};
use crate::exactmath::{
    fmt_scalar, in_span, independent, kernel, q, rank_of, rational_sqrt, same_span, signature, Matrix, Scalar,
    Signature, Vector,
};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmanifoldFrame {
    pub tangent_basis: Vec<Vector>,
    /// `ξ`, spanning `Rad(TM)`.
    pub rad: Vector,
    /// Basis of `S(TM)`.
    pub screen: Vec<Vector>,
    /// Lightlike transversal `N`.
    pub n_vec: Vector,
    /// Unit screen transversal `L`.
    pub l_vec: Vector,
    /// `ε = ḡ(L, L)`.
    pub epsilon: Scalar,
    /// `μ` with `φ̄ξ = μL`; only defined when `φ̄(Rad) = S(TM⊥)`.
    pub mu: Option<Scalar>,
    /// Whether `S(TM)` came from the greedy rule rather than a hint.
    pub screen_auto: bool,
    /// Whether `ξ` was negated to enforce `η̄(ξ) > 0`.
    pub xi_flipped: bool,
}

impl SubmanifoldFrame {
    pub fn dim(&self) -> usize {
        self.rad.len()
    }

    pub fn mu(&self) -> Result<&Scalar> {
        self.mu.as_ref().ok_or_else(|| Error::NotAscreenRsthl("φ̄ξ does not span the screen transversal".into()))
    }

    /// `[ξ, s₁, …, s_k]`.
    pub fn adapted_tangent(&self) -> Vec<Vector> {
        std::iter::once(self.rad.clone()).chain(self.screen.iter().cloned()).collect()
    }

    /// `[ξ, s₁, …, s_k, N, L]`.
    pub fn frame_basis(&self) -> Vec<Vector> {
        let mut b = self.adapted_tangent();
        b.push(self.n_vec.clone());
        b.push(self.l_vec.clone());
        b
    }

    /// `ξ → cξ`, `N → N/c`, `μ → cμ`; `L` and the screen are unchanged.
    pub fn rescaled(&self, c: &Scalar) -> SubmanifoldFrame {
        assert!(!c.is_zero(), "rescaling by zero");
        SubmanifoldFrame {
            rad: self.rad.scale(c),
            n_vec: self.n_vec.scale(&c.recip()),
            mu: self.mu.as_ref().map(|m| m * c),
            ..self.clone()
        }
    }
}

/// Rank and basis of `Rad(TM)` for the subalgebra spanned by `tangent_basis`.
pub fn radical(s: &AcbmStructure, tangent_basis: &[Vector]) -> Result<(usize, Vec<Vector>)> {
    if !s.alg.is_subalgebra(tangent_basis)? {
        return Err(Error::NotSubalgebra);
    }
    let basis = kernel(&s.g, tangent_basis)?;
    Ok((basis.len(), basis))
}

/// Builds the full half lightlike frame. With no hint the screen is chosen
/// greedily from `tangent_basis`.
pub fn build_frame(
    s: &AcbmStructure,
    tangent_basis: &[Vector],
    screen_hint: Option<&[Vector]>,
) -> Result<SubmanifoldFrame> {
    let dim = s.dim();
    if tangent_basis.len() + 2 != dim {
        return Err(Error::NotHalfLightlike(format!(
            "codimension {} (half lightlike needs 2)",
            dim as isize - tangent_basis.len() as isize
        )));
    }
    let (rank, rad_basis) = radical(s, tangent_basis)?;
    if rank != 1 {
        return Err(Error::NotHalfLightlike(format!("radical rank {rank}")));
    }
    let mut xi = rad_basis.into_iter().next().expect("rank 1");
    let xi_flipped = s.eta_of(&xi).is_negative();
    if xi_flipped {
        xi = -xi;
    }

    let (screen, screen_auto) = match screen_hint {
        Some(hint) => (checked_screen(s, tangent_basis, &xi, hint)?, false),
        None => (greedy_screen(s, tangent_basis, &xi), true),
    };

    // TM⊥ is 2-dimensional and contains ξ.
    let lowered: Vec<Vec<Scalar>> = tangent_basis.iter().map(|t| s.g.lower(t).into_entries()).collect();
    let normal = Matrix::from_rows(lowered).null_space();
    debug_assert_eq!(normal.len(), 2);

    let phi_xi = s.apply_phi(&xi);
    let eta_xi = s.eta_of(&xi);
    let (l_vec, epsilon, mu) = if !eta_xi.is_zero() && in_span(&normal, &phi_xi) {
        // ḡ(φ̄ξ, φ̄ξ) = η̄(ξ)² because ξ is null, so the unit is rational.
        let l = phi_xi.scale(&eta_xi.recip());
        (l, Scalar::one(), Some(eta_xi))
    } else {
        let v = normal
            .iter()
            .find(|v| !in_span(std::slice::from_ref(&xi), v))
            .expect("TM⊥ has a direction off the radical")
            .clone();
        let c = s.g.eval(&v, &v);
        let root = rational_sqrt(&c.abs()).ok_or_else(|| Error::NonRationalUnit(fmt_scalar(&c)))?;
        let eps = if c.is_positive() { Scalar::one() } else { -Scalar::one() };
        (v.scale(&root.recip()), eps, None)
    };

    let n_vec = transversal(s, &xi, &screen, &l_vec)?;
    Ok(SubmanifoldFrame {
        tangent_basis: tangent_basis.to_vec(),
        rad: xi,
        screen,
        n_vec,
        l_vec,
        epsilon,
        mu,
        screen_auto,
        xi_flipped,
    })
}

fn checked_screen(s: &AcbmStructure, tangent: &[Vector], xi: &Vector, hint: &[Vector]) -> Result<Vec<Vector>> {
    let dim = s.dim();
    if hint.len() + 1 != tangent.len() {
        return Err(Error::InvalidScreen(format!("expected {} screen vectors, got {}", tangent.len() - 1, hint.len())));
    }
    if let Some(v) = hint.iter().find(|v| v.len() != dim || !in_span(tangent, v)) {
        return Err(Error::InvalidScreen(format!("{v} is not tangent")));
    }
    // A tangent complement of the radical is automatically non-degenerate,
    // so degeneracy here means the hint meets Rad(TM).
    if !s.g.restrict(hint).is_nondegenerate() {
        return Err(Error::DegenerateScreen);
    }
    let mut with_xi = hint.to_vec();
    with_xi.push(xi.clone());
    if !independent(&with_xi, dim) {
        return Err(Error::InvalidScreen("screen does not complement the radical".into()));
    }
    Ok(hint.to_vec())
}

/// Extends `ξ` by tangent vectors, preferring those that keep the partial
/// screen non-degenerate. Any complement of the radical is non-degenerate,
/// so the second pass only runs when no such ordering exists.
fn greedy_screen(s: &AcbmStructure, tangent: &[Vector], xi: &Vector) -> Vec<Vector> {
    let dim = s.dim();
    let target = tangent.len() - 1;
    let mut screen: Vec<Vector> = Vec::new();
    let extends = |screen: &[Vector], v: &Vector| {
        let mut fam = screen.to_vec();
        fam.push(xi.clone());
        fam.push(v.clone());
        independent(&fam, dim)
    };
    for v in tangent {
        if screen.len() == target {
            break;
        }
        if extends(&screen, v) {
            let mut cand = screen.clone();
            cand.push(v.clone());
            if s.g.restrict(&cand).is_nondegenerate() {
                screen = cand;
            }
        }
    }
    for v in tangent {
        if screen.len() == target {
            break;
        }
        if extends(&screen, v) {
            screen.push(v.clone());
        }
    }
    screen
}

/// Unique `N` with `ḡ(N,ξ) = 1` and `ḡ(N,N) = ḡ(N,L) = ḡ(N,S(TM)) = 0`.
fn transversal(s: &AcbmStructure, xi: &Vector, screen: &[Vector], l: &Vector) -> Result<Vector> {
    let dim = s.dim();
    let mut rows: Vec<Vec<Scalar>> = screen.iter().map(|x| s.g.lower(x).into_entries()).collect();
    rows.push(s.g.lower(l).into_entries());
    rows.push(s.g.lower(xi).into_entries());
    let mut rhs = Vector::zeros(rows.len());
    rhs[rows.len() - 1] = Scalar::one();
    let n0 = Matrix::from_rows(rows)
        .solve(&rhs)
        .ok_or_else(|| Error::NotHalfLightlike("no lightlike transversal exists".into()))?;
    // ξ is ḡ-orthogonal to screen, L and itself, so this keeps the linear
    // constraints and kills ḡ(N, N).
    let half_norm = s.g.eval(&n0, &n0) * q(1, 2);
    let n = n0.axpy(&-half_norm, xi);
    debug_assert_eq!(dim, n.len());
    Ok(n)
}

/// Checks every frame invariant after construction.
pub fn audit_frame(s: &AcbmStructure, f: &SubmanifoldFrame) -> Report {
    let g = &s.g;
    let mut r = Report::new("frame audit");
    r.scan("ξ ∈ Rad(TM)", f.tangent_basis.iter().map(|t| (!g.eval(&f.rad, t).is_zero()).then(|| format!("X = {t}"))));
    r.assert_that("ḡ(N, ξ) = 1", g.eval(&f.n_vec, &f.rad).is_one());
    r.assert_that("ḡ(N, N) = 0", g.eval(&f.n_vec, &f.n_vec).is_zero());
    r.assert_that("ḡ(N, L) = 0", g.eval(&f.n_vec, &f.l_vec).is_zero());
    r.scan("ḡ(N, S(TM)) = 0", f.screen.iter().map(|x| (!g.eval(&f.n_vec, x).is_zero()).then(|| format!("X = {x}"))));
    r.scan("L ⊥ TM", f.tangent_basis.iter().map(|t| (!g.eval(&f.l_vec, t).is_zero()).then(|| format!("X = {t}"))));
    r.assert_that("ḡ(L, L) = ε", g.eval(&f.l_vec, &f.l_vec) == f.epsilon);
    r.assert_that("ε = ±1", f.epsilon.abs().is_one());
    r.assert_that("S(TM) non-degenerate", g.restrict(&f.screen).is_nondegenerate());
    r.assert_that(
        "TM = Rad(TM) ⊕ S(TM)",
        same_span(&f.adapted_tangent(), &f.tangent_basis, f.dim()) && independent(&f.adapted_tangent(), f.dim()),
    );
    r.assert_that("frame spans the ambient space", independent(&f.frame_basis(), f.dim()));
    if let Some(mu) = &f.mu {
        r.assert_that("μ ≠ 0", !mu.is_zero());
        r.assert_that("φ̄ξ = μL", s.apply_phi(&f.rad) == f.l_vec.scale(mu));
        r.assert_that("ḡ(L, L) = 1", g.eval(&f.l_vec, &f.l_vec).is_one());
        r.assert_that("η̄(L) = 0", s.eta_of(&f.l_vec).is_zero());
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// `φ̄(Rad(TM)) = S(TM⊥)`.
    pub rsthl: bool,
    /// `ξ̄` tangent to `M`.
    pub tangential: bool,
    /// `ξ̄ ∈ Rad(TM) ⊕ ltr(TM)`.
    pub ascreen: bool,
    /// `φ̄` maps the radical and both transversals into `S(TM)`.
    pub generic_screen: bool,
    pub mu: Option<String>,
    pub eta_xi: String,
    /// `η̄(ξ) = +μ`.
    pub positive_convention: bool,
    /// An RSTHL submanifold never has `ξ̄` in `TM` or in `ltr(TM)`.
    pub reeb_placement_consistent: bool,
    pub screen_auto: bool,
}

pub fn classify(s: &AcbmStructure, f: &SubmanifoldFrame) -> Classification {
    let phi_xi = s.apply_phi(&f.rad);
    let rsthl = !phi_xi.is_zero() && in_span(std::slice::from_ref(&f.l_vec), &phi_xi);
    let tangential = in_span(&f.tangent_basis, &s.xi);
    let ascreen = in_span(&[f.rad.clone(), f.n_vec.clone()], &s.xi);
    let generic_screen = [&f.rad, &f.n_vec, &f.l_vec].iter().all(|v| in_span(&f.screen, &s.apply_phi(v)));
    let eta_xi = s.eta_of(&f.rad);
    let in_ltr = in_span(std::slice::from_ref(&f.n_vec), &s.xi);
    Classification {
        rsthl,
        tangential,
        ascreen,
        generic_screen,
        mu: f.mu.as_ref().map(fmt_scalar),
        eta_xi: fmt_scalar(&eta_xi),
        positive_convention: f.mu.as_ref() == Some(&eta_xi),
        reeb_placement_consistent: !rsthl || !(tangential || in_ltr),
        screen_auto: f.screen_auto,
    }
}

pub(crate) fn require_ascreen_rsthl(s: &AcbmStructure, f: &SubmanifoldFrame) -> Result<Scalar> {
    let c = classify(s, f);
    if c.generic_screen {
        return Err(Error::NotAscreenRsthl("generic screen distributions are out of scope".into()));
    }
    if !c.rsthl {
        return Err(Error::NotAscreenRsthl("φ̄(Rad(TM)) ≠ S(TM⊥)".into()));
    }
    if !c.ascreen {
        return Err(Error::NotAscreenRsthl("ξ̄ ∉ Rad(TM) ⊕ ltr(TM)".into()));
    }
    f.mu().cloned()
}

/// Frame relations of an ascreen RSTHL submanifold, each checked exactly.
pub fn verify_ascreen_relations(s: &AcbmStructure, f: &SubmanifoldFrame) -> Result<Report> {
    let mu = require_ascreen_rsthl(s, f)?;
    let dim = s.dim();
    let inv2mu = (&mu * Scalar::from_integer(2.into())).recip();
    let (xi, n, l) = (&f.rad, &f.n_vec, &f.l_vec);
    let eta_n = s.eta_of(n);
    let mut r = Report::new("ascreen RSTHL relations");
    r.assert_that("φ̄ξ = μL", s.apply_phi(xi) == l.scale(&mu));
    r.assert_that("η̄(L) = 0", s.eta_of(l).is_zero());
    r.assert_that("ḡ(L, L) = 1", s.g.eval(l, l).is_one());
    r.assert_that("η̄(ξ) = μ", s.eta_of(xi) == mu);
    r.assert_that("ξ̄ = η̄(N)ξ + μN", s.xi == xi.scale(&eta_n).axpy(&mu, n));
    r.push("η̄(N) = 1/(2μ)", eta_n == inv2mu, Some(format!("η̄(N) = {}", fmt_scalar(&eta_n))));
    r.assert_that("ξ̄ = (1/2μ)ξ + μN", s.xi == xi.scale(&inv2mu).axpy(&mu, n));
    r.assert_that("φ̄N = −(1/2μ)L", s.apply_phi(n) == l.scale(&-&inv2mu));
    r.assert_that("φ̄L = −(1/2μ)ξ + μN", s.apply_phi(l) == xi.scale(&-&inv2mu).axpy(&mu, n));
    r.assert_that("ḡ(φ̄ξ, φ̄ξ) = μ²", s.g.eval(&s.apply_phi(xi), &s.apply_phi(xi)) == &mu * &mu);
    r.assert_that("η̄(ξ)·η̄(N) = 1/2", s.eta_of(xi) * &eta_n == q(1, 2));
    let phi_n = s.apply_phi(n);
    r.assert_that("φ̄(ltr(TM)) = S(TM⊥)", !phi_n.is_zero() && in_span(std::slice::from_ref(l), &phi_n));
    let phi_screen: Vec<Vector> = f.screen.iter().map(|x| s.apply_phi(x)).collect();
    r.assert_that(
        "φ̄(S(TM)) = S(TM)",
        rank_of(&phi_screen, dim) == f.screen.len() && same_span(&phi_screen, &f.screen, dim),
    );
    let phi_l = s.apply_phi(l);
    let pair = [xi.clone(), n.clone()];
    r.assert_that(
        "φ̄(S(TM⊥)) ⊂ Rad(TM) ⊕ ltr(TM), equal to neither",
        in_span(&pair, &phi_l)
            && !in_span(std::slice::from_ref(xi), &phi_l)
            && !in_span(std::slice::from_ref(n), &phi_l),
    );
    Ok(r)
}

/// The `g̃`-orthonormal normal frame of `(M, g̃)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFrame {
    pub n1: Vector,
    pub n2: Vector,
    pub report: Report,
}

/// Builds `N₁ = ξ̄ − L`, `N₂ = 2ξ̄ − 2μN − L` and checks that `(M, g̃)` is a
/// non-degenerate codimension-two submanifold with that normal frame.
pub fn verify_normal_frame(s: &AcbmStructure, f: &SubmanifoldFrame) -> Result<NormalFrame> {
    let mu = require_ascreen_rsthl(s, f)?;
    let gt = associated_metric(s)?;
    let n = s.half_dim();
    let two = Scalar::from_integer(2.into());
    let n1 = &s.xi - &f.l_vec;
    let n2 = &(&s.xi.scale(&two) - &f.n_vec.scale(&(&two * &mu))) - &f.l_vec;
    let mut r = Report::new("normal frame of (M, g̃)");
    r.assert_that("g̃(N₁, N₁) = 1", gt.eval(&n1, &n1).is_one());
    r.assert_that("g̃(N₂, N₂) = −1", gt.eval(&n2, &n2) == -Scalar::one());
    r.assert_that("g̃(N₁, N₂) = 0", gt.eval(&n1, &n2).is_zero());
    r.scan(
        "g̃(X, N₁) = 0 on TM",
        f.tangent_basis.iter().map(|x| (!gt.eval(x, &n1).is_zero()).then(|| format!("X = {x}"))),
    );
    r.scan(
        "g̃(X, N₂) = 0 on TM",
        f.tangent_basis.iter().map(|x| (!gt.eval(x, &n2).is_zero()).then(|| format!("X = {x}"))),
    );
    r.assert_that("N₂ − N₁ = ξ̄ − 2μN", &n2 - &n1 == s.xi.axpy(&-(&two * &mu), &f.n_vec));
    r.scan(
        "g̃(X, ξ) = 0 on S(TM)",
        f.screen.iter().map(|x| (!gt.eval(x, &f.rad).is_zero()).then(|| format!("X = {x}"))),
    );
    let gxx = gt.eval(&f.rad, &f.rad);
    r.push("g̃(ξ, ξ) = μ²", gxx == &mu * &mu, Some(format!("g̃(ξ, ξ) = {}", fmt_scalar(&gxx))));
    let sig_tm = signature(&gt.restrict(&f.tangent_basis));
    r.push(
        "g̃ on TM non-degenerate of signature (n, n−1)",
        sig_tm == Signature::new(n, n - 1, 0),
        Some(format!("signature {sig_tm}")),
    );
    let sig_s = signature(&gt.restrict(&f.screen));
    r.push(
        "g̃ on S(TM) has signature (n−1, n−1)",
        sig_s == Signature::new(n - 1, n - 1, 0),
        Some(format!("signature {sig_s}")),
    );
    let mut all = f.tangent_basis.clone();
    all.push(n1.clone());
    all.push(n2.clone());
    r.assert_that("TM ⊕ span{N₁, N₂} is the ambient space", independent(&all, s.dim()));
    Ok(NormalFrame { n1, n2, report: r })
}
