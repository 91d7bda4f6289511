//! Ready-made structures: the 7-dimensional six-parameter Lie group family
//! and its generalisations used by tests, the fuzz campaign and the CLI.
//!
//! Basis ordering for dimension `2n + 1` is `e₁…e_n, φ̄e₁…φ̄e_n, ξ̄`, with
//! `ḡ = diag(1,…,1, −1,…,−1, 1)`. The algebra is `R² ⋉ W` where
//! `W = span{e₂…e_n, φ̄e₂…φ̄e_n}` is viewed as `C^{n−1}` (multiplication by
//! `i` is `φ̄`), `ad e₁|_W = A` for a complex matrix `A`, `ad φ̄e₁|_W = iA`,
//! and `ξ̄` is central. The submanifold is `W ⊕ span{−μφ̄e₁ + μξ̄}`.

use rand::Rng;

use crate::bstructure::AcbmStructure;
use crate::error::{Error, Result};
use crate::exactmath::{int, Matrix, Scalar, SymForm, Vector};
use crate::liegroup::LieAlgebra;

/// Structure, tangent basis of the subalgebra and the natural screen.
#[derive(Clone, Debug)]
pub struct Example {
    pub structure: AcbmStructure,
    pub tangent: Vec<Vector>,
    pub screen_hint: Vec<Vector>,
    pub basis_names: Vec<String>,
}

/// Complex entry `re + i·im`.
pub type Complex = (Scalar, Scalar);

pub fn basis_names(n: usize) -> Vec<String> {
    (1..=n)
        .map(|i| format!("e{i}"))
        .chain((1..=n).map(|i| format!("phi_e{i}")))
        .chain(std::iter::once("xi_bar".to_string()))
        .collect()
}

/// `(φ̄, ξ̄, η̄, ḡ)` in dimension `2n + 1` with `φ̄eᵢ = e_{i+n}`,
/// `φ̄e_{i+n} = −eᵢ`.
pub fn standard_tensors(n: usize) -> (Matrix, Vector, Vector, SymForm) {
    let d = 2 * n + 1;
    let mut phi = Matrix::zeros(d, d);
    for i in 0..n {
        phi[(i + n, i)] = int(1);
        phi[(i, i + n)] = int(-1);
    }
    let diag: Vec<Scalar> = (0..d).map(|i| if i >= n && i < 2 * n { int(-1) } else { int(1) }).collect();
    let xi = Vector::unit(d, 2 * n);
    (phi, xi.clone(), xi, SymForm::diagonal(&diag))
}

/// How `φ̄e₁` acts on `W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiAction {
    /// `ad φ̄e₁ = iA`: the `F₀` family.
    ComplexMultiple,
    /// `ad φ̄e₁ = 0`: still a Lie algebra, but not `F₀` unless `A = 0`.
    Zero,
}

/// Builds the family member for the complex `(n−1)×(n−1)` matrix `a`
/// (`a[row][col]`, acting on column coordinates) and `μ ≠ 0`.
pub fn complex_family(a: &[Vec<Complex>], mu: &Scalar, action: PhiAction) -> Result<Example> {
    let m = a.len();
    if m == 0 || a.iter().any(|row| row.len() != m) {
        return Err(Error::Instance("complex matrix must be square and non-empty".into()));
    }
    if num_traits::Zero::is_zero(mu) {
        return Err(Error::Instance("μ must be non-zero".into()));
    }
    let n = m + 1;
    let d = 2 * n + 1;
    let e = |i: usize| Vector::unit(d, i);
    // W coordinates: e_{b+2} has index b + 1, φ̄e_{b+2} has index n + b + 1.
    let re_idx = |b: usize| b + 1;
    let im_idx = |b: usize| n + b + 1;

    // A applied to e_{b} and to φ̄e_{b} = i e_{b}.
    let a_real = |b: usize| {
        let mut v = Vector::zeros(d);
        for (row, entries) in a.iter().enumerate() {
            let (re, im) = &entries[b];
            v[re_idx(row)] += re;
            v[im_idx(row)] += im;
        }
        v
    };
    let times_i = |v: &Vector| {
        let mut out = Vector::zeros(d);
        for b in 0..m {
            out[im_idx(b)] = v[re_idx(b)].clone();
            out[re_idx(b)] = -v[im_idx(b)].clone();
        }
        out
    };

    let mut alg = LieAlgebra::abelian(d);
    let phi_e1 = n;
    for b in 0..m {
        let ab = a_real(b);
        let a_ib = times_i(&ab);
        alg.set_bracket(0, re_idx(b), &ab);
        alg.set_bracket(0, im_idx(b), &a_ib);
        if action == PhiAction::ComplexMultiple {
            alg.set_bracket(phi_e1, re_idx(b), &a_ib);
            alg.set_bracket(phi_e1, im_idx(b), &times_i(&a_ib));
        }
    }

    let (phi, xi, eta, g) = standard_tensors(n);
    let structure = AcbmStructure::new(alg, phi, xi, eta, g)?;
    let screen: Vec<Vector> = (0..m).map(|b| e(re_idx(b))).chain((0..m).map(|b| e(im_idx(b)))).collect();
    let rad = e(phi_e1).scale(&-mu.clone()).axpy(mu, &e(2 * n));
    let mut tangent = screen.clone();
    tangent.push(rad);
    Ok(Example { structure, tangent, screen_hint: screen, basis_names: basis_names(n) })
}

/// The 7-dimensional six-parameter family: the complex `2×2` matrix
/// `[[λ₁ + iλ₃, λ₅ + iλ₆], [λ₂ + iλ₄, −λ₁ − iλ₃]]`.
pub fn six_parameter(lambda: &[Scalar; 6], mu: &Scalar) -> Result<Example> {
    complex_family(&six_parameter_matrix(lambda), mu, PhiAction::ComplexMultiple)
}

pub fn six_parameter_matrix(l: &[Scalar; 6]) -> Vec<Vec<Complex>> {
    vec![
        vec![(l[0].clone(), l[2].clone()), (l[4].clone(), l[5].clone())],
        vec![(l[1].clone(), l[3].clone()), (-l[0].clone(), -l[2].clone())],
    ]
}

/// Same family with `ad φ̄e₁` switched off, which breaks `F ≡ 0`.
pub fn six_parameter_non_f0(lambda: &[Scalar; 6], mu: &Scalar) -> Result<Example> {
    complex_family(&six_parameter_matrix(lambda), mu, PhiAction::Zero)
}

/// Six-parameter member with the trace of `A` shifted by `κ` (a real
/// offset on the `(2,2)` entry). Stays `F₀`; minimal only when `κ = 0`.
pub fn shifted_trace(lambda: &[Scalar; 6], mu: &Scalar, kappa: &Scalar) -> Result<Example> {
    let mut a = six_parameter_matrix(lambda);
    a[1][1].0 += kappa;
    complex_family(&a, mu, PhiAction::ComplexMultiple)
}

/// Uniform rational with numerator in `[-max_num, max_num]` and denominator
/// in `[1, max_den]`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, max_num: i64, max_den: i64) -> Scalar {
    let n = rng.gen_range(-max_num..=max_num);
    let d = rng.gen_range(1..=max_den);
    Scalar::new(n.into(), d.into())
}

pub fn random_nonzero_rational<R: Rng + ?Sized>(rng: &mut R, max_num: i64, max_den: i64) -> Scalar {
    loop {
        let x = random_rational(rng, max_num, max_den);
        if !num_traits::Zero::is_zero(&x) {
            return x;
        }
    }
}

pub fn random_lambdas<R: Rng + ?Sized>(rng: &mut R) -> [Scalar; 6] {
    std::array::from_fn(|_| random_rational(rng, 9, 5))
}
