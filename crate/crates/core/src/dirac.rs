//! Dirac spinors in the chiral representation.
//!
//! Gamma matrices satisfy `{γᵘ, γᵛ} = 2ηᵘᵛ` with `η = diag(1, 1, 1, −1)` and are
//! stored in `(x, y, z, t)` order. The spinor representation `D` intertwines
//! with the vector one: `D(Λ)⁻¹ γᵘ D(Λ) = Λᵘᵥ γᵛ`. Spin matrices are indexed
//! `(+½, −½)`.

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::lorentz::{FourVector, LorentzMatrix, Tolerances};
use crate::massive::{self, MassiveMomentum, WignerElement};

pub type Spinor = Vector4<Complex64>;
pub type SpinorMatrix = Matrix4<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Spin {
    #[serde(rename = "+1/2")]
    Up,
    #[serde(rename = "-1/2")]
    Down,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    pub fn value(self) -> f64 {
        match self {
            Spin::Up => 0.5,
            Spin::Down => -0.5,
        }
    }

    /// Row/column index in `(+½, −½)` ordering.
    pub fn index(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinorKind {
    Particle,
    Antiparticle,
}

fn pauli() -> [Matrix2<Complex64>; 3] {
    [
        Matrix2::new(ZERO, ONE, ONE, ZERO),
        Matrix2::new(ZERO, -I, I, ZERO),
        Matrix2::new(ONE, ZERO, ZERO, -ONE),
    ]
}

fn sigma_dot(v: [f64; 3]) -> Matrix2<Complex64> {
    let s = pauli();
    s[0] * Complex64::from(v[0]) + s[1] * Complex64::from(v[1]) + s[2] * Complex64::from(v[2])
}

fn blocks(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>, c: &Matrix2<Complex64>, d: &Matrix2<Complex64>) -> SpinorMatrix {
    let mut m = SpinorMatrix::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(c);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
    m
}

fn block_diag(a: &Matrix2<Complex64>, d: &Matrix2<Complex64>) -> SpinorMatrix {
    let z = Matrix2::zeros();
    blocks(a, &z, &z, d)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaSet {
    /// `γᵘ` indexed `x, y, z, t`.
    pub gamma: [SpinorMatrix; 4],
    pub gamma5: SpinorMatrix,
}

impl GammaSet {
    /// `p_μ γᵘ = pˣγˣ + pʸγʸ + pᶻγᶻ − pᵗγᵗ`.
    pub fn slash(&self, p: &FourVector) -> SpinorMatrix {
        let c = p.components();
        self.gamma[0] * Complex64::from(c[0]) + self.gamma[1] * Complex64::from(c[1])
            + self.gamma[2] * Complex64::from(c[2])
            - self.gamma[3] * Complex64::from(c[3])
    }
}

/// `γ⁰ = −i [[0, 1], [1, 0]]`, `γⁱ = −i [[0, σᵢ], [−σᵢ, 0]]`, `γ⁵ = −iγ⁰γ¹γ²γ³`.
pub fn gamma_chiral() -> GammaSet {
    let one = Matrix2::identity();
    let mi = -I;
    let s = pauli();
    let g = |m: &Matrix2<Complex64>| blocks(&Matrix2::zeros(), &(m * mi), &(-m * mi), &Matrix2::zeros());
    let gamma = [g(&s[0]), g(&s[1]), g(&s[2]), blocks(&Matrix2::zeros(), &(one * mi), &(one * mi), &Matrix2::zeros())];
    let gamma5 = gamma[3] * gamma[0] * gamma[1] * gamma[2] * mi;
    GammaSet { gamma, gamma5 }
}

/// `𝒥ᵘᵛ = −(i/4)[γᵘ, γᵛ]`, indexed `[μ][ν]` in `(x, y, z, t)` order.
pub fn lorentz_generators() -> [[SpinorMatrix; 4]; 4] {
    let g = gamma_chiral().gamma;
    std::array::from_fn(|mu| {
        std::array::from_fn(|nu| (g[mu] * g[nu] - g[nu] * g[mu]) * Complex64::new(0.0, -0.25))
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiracSpinor {
    pub components: Spinor,
    pub momentum: FourVector,
    pub mass: f64,
    pub sigma: Spin,
    pub kind: SpinorKind,
}

impl Serialize for DiracSpinor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.components.iter().map(|c| [c.re, c.im]).collect();
        let mut st = serializer.serialize_struct("DiracSpinor", 5)?;
        st.serialize_field("components", &pairs)?;
        st.serialize_field("momentum", &self.momentum)?;
        st.serialize_field("mass", &self.mass)?;
        st.serialize_field("sigma", &self.sigma)?;
        st.serialize_field("kind", &self.kind)?;
        st.end()
    }
}

impl DiracSpinor {
    /// `u†u`.
    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(|c| c.norm_sqr()).sum()
    }
}

fn rest_components(sigma: Spin, kind: SpinorKind) -> Spinor {
    let h = Complex64::from(std::f64::consts::FRAC_1_SQRT_2);
    match (kind, sigma) {
        (SpinorKind::Particle, Spin::Up) => Spinor::new(h, ZERO, h, ZERO),
        (SpinorKind::Particle, Spin::Down) => Spinor::new(ZERO, h, ZERO, h),
        (SpinorKind::Antiparticle, Spin::Up) => Spinor::new(ZERO, h, ZERO, -h),
        (SpinorKind::Antiparticle, Spin::Down) => Spinor::new(-h, ZERO, h, ZERO),
    }
}

/// Spinor at `p = m(0, 0, 0, 1)` with `m = 1`.
pub fn rest_spinor(sigma: Spin, kind: SpinorKind) -> DiracSpinor {
    DiracSpinor {
        components: rest_components(sigma, kind),
        momentum: FourVector::new(0.0, 0.0, 0.0, 1.0),
        mass: 1.0,
        sigma,
        kind,
    }
}

/// `cosh(ζ/2) − sinh(ζ/2) diag(σ·p̂, −σ·p̂)` from the components of a timelike `p`
/// with invariant mass `μ`, scaled by `scale`.
fn boost_from_momentum(p: &FourVector, mu: Dd, scale: Dd) -> SpinorMatrix {
    let c = p.dd();
    let pt_mu = c[3] + mu;
    let ch = ((pt_mu / (mu * 2.0)).sqrt() * scale).to_f64();
    let k = scale / (mu * pt_mu * 2.0).sqrt();
    let q = [(c[0] * k).to_f64(), (c[1] * k).to_f64(), (c[2] * k).to_f64()];
    let sq = sigma_dot(q);
    SpinorMatrix::identity() * Complex64::from(ch) - block_diag(&sq, &(-sq))
}

/// `D(L(p))` for the standard boost of a massive momentum.
pub fn spinor_boost(p: &MassiveMomentum) -> SpinorMatrix {
    boost_from_momentum(p.four_vector(), p.invariant_mass_dd(), Dd::ONE)
}

/// `D(R(n̂, θ)) = cos(θ/2) − i sin(θ/2) diag(σ·n̂, σ·n̂)`.
pub fn spinor_rotation(axis: [f64; 3], angle: f64) -> Result<SpinorMatrix> {
    let n = crate::lorentz::unit_dd(axis)?.map(Dd::to_f64);
    let (c, s) = ((0.5 * angle).cos(), (0.5 * angle).sin());
    let sn = sigma_dot(n) * Complex64::new(0.0, -s);
    Ok(SpinorMatrix::identity() * Complex64::from(c) + block_diag(&sn, &sn))
}

/// Spinor representation of a proper orthochronous `Λ`.
///
/// `Λ = B·R` with `B` the pure boost carrying `(0,0,0,1)` to `Λ`'s time column.
/// The rotation is lifted with its angle in `(−π, π]`, which fixes the sign of
/// the double cover.
pub fn spinor_representation(lambda: &LorentzMatrix) -> Result<SpinorMatrix> {
    lambda.check_proper(Tolerances::default().composed)?;
    let t = lambda.time_column();
    let mu = (-t.norm2_dd()).sqrt();
    let boost = massive::boost_from_momentum_dd(&t, mu);
    let rotation = &boost.inverse() * lambda;
    let (axis, angle) = massive::extract_rotation(&rotation)?;
    Ok(boost_from_momentum(&t, mu, Dd::ONE) * spinor_rotation(axis, angle)?)
}

fn spinor_at(p: &MassiveMomentum, sigma: Spin, kind: SpinorKind) -> DiracSpinor {
    let pv = p.four_vector();
    let mu = p.invariant_mass_dd();
    // √(m/pₜ) folded into the boost
    let scale = (mu / pv.dd()[3]).sqrt();
    let d = boost_from_momentum(pv, mu, scale);
    DiracSpinor {
        components: d * rest_components(sigma, kind),
        momentum: *pv,
        mass: p.mass(),
        sigma,
        kind,
    }
}

/// `u(p, σ) = √(m/pₜ) D(L(p)) u(0, σ)`, normalized so that `u†u = 1`.
pub fn u_spinor(p: &MassiveMomentum, sigma: Spin) -> DiracSpinor {
    spinor_at(p, sigma, SpinorKind::Particle)
}

/// `v(p, σ) = √(m/pₜ) D(L(p)) v(0, σ)`.
pub fn v_spinor(p: &MassiveMomentum, sigma: Spin) -> DiracSpinor {
    spinor_at(p, sigma, SpinorKind::Antiparticle)
}

/// `‖(i p_μγᵘ + m)u‖₂` for particles, `‖(−i p_μγᵘ + m)v‖₂` for antiparticles.
pub fn dirac_residual(spinor: &DiracSpinor) -> f64 {
    let sign = match spinor.kind {
        SpinorKind::Particle => 1.0,
        SpinorKind::Antiparticle => -1.0,
    };
    let op = gamma_chiral().slash(&spinor.momentum) * Complex64::new(0.0, sign)
        + SpinorMatrix::identity() * Complex64::from(spinor.mass);
    (op * spinor.components).norm()
}

/// A spin-½ little-group matrix in the `(+½, −½)` basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinHalfRotation {
    pub matrix: Matrix2<Complex64>,
    pub axis: [f64; 3],
    pub wigner_angle: f64,
}

impl SpinHalfRotation {
    /// `cos(θ/2) − i sin(θ/2) n̂·σ`.
    pub fn from_axis_angle(axis: [f64; 3], angle: f64) -> Result<SpinHalfRotation> {
        let n = crate::lorentz::unit_dd(axis)?.map(Dd::to_f64);
        let (c, s) = ((0.5 * angle).cos(), (0.5 * angle).sin());
        let matrix = Matrix2::identity() * Complex64::from(c) + sigma_dot(n) * Complex64::new(0.0, -s);
        Ok(SpinHalfRotation {
            matrix,
            axis: n,
            wigner_angle: angle,
        })
    }

    pub fn from_wigner(w: &WignerElement) -> SpinHalfRotation {
        SpinHalfRotation::from_axis_angle(w.axis, w.angle)
            .expect("Wigner axes are unit vectors")
    }

    /// `max |M†M − I|`.
    pub fn unitarity_residual(&self) -> f64 {
        max_abs(&(self.matrix.adjoint() * self.matrix - Matrix2::identity()))
    }

    pub fn determinant(&self) -> Complex64 {
        self.matrix.determinant()
    }
}

/// `[[cos(Ω/2), −sin(Ω/2)], [sin(Ω/2), cos(Ω/2)]]`, a rotation about `+y`.
pub fn wigner_spin_half(omega: f64) -> SpinHalfRotation {
    SpinHalfRotation::from_axis_angle([0.0, 1.0, 0.0], omega).expect("unit axis")
}

fn max_abs<const R: usize, const C: usize>(
    m: &nalgebra::SMatrix<Complex64, R, C>,
) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Both sides of the mode-function identity
/// `Σ_σ' u(Λp, σ') D_{σ'σ}(W) = √(pₜ/(Λp)ₜ) D(Λ) u(p, σ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeIdentity {
    pub wigner: WignerElement,
    pub spin_half: SpinHalfRotation,
    pub left: Spinor,
    pub right: Spinor,
    /// `u(Λp, σ')† · right` for `σ' = +½, −½`.
    pub coefficients: [Complex64; 2],
    /// `±1`: which lift of `W` the spinor representation of `Λ` produced.
    pub sign: f64,
    pub residual: f64,
}

impl ModeIdentity {
    /// Rotation angle about `+y` read back from the coefficients; meaningful
    /// when `W` is a rotation about `y`.
    pub fn recovered_angle(&self, sigma: Spin) -> f64 {
        let [a, b] = self.coefficients.map(|c| c.re * self.sign);
        match sigma {
            Spin::Up => 2.0 * b.atan2(a),
            Spin::Down => 2.0 * (-a).atan2(b),
        }
    }
}

pub fn mode_identity(lambda: &LorentzMatrix, p: &MassiveMomentum, sigma: Spin) -> Result<ModeIdentity> {
    let wigner = massive::wigner_rotation(lambda, p)?;
    let q = p.transformed(lambda)?;
    let spin_half = SpinHalfRotation::from_wigner(&wigner);
    let uq = Spin::BOTH.map(|s| u_spinor(&q, s).components);
    let col = sigma.index();
    let left = uq[0] * spin_half.matrix[(0, col)] + uq[1] * spin_half.matrix[(1, col)];
    let ratio = (p.four_vector().dd()[3] / q.four_vector().dd()[3]).sqrt().to_f64();
    let right = spinor_representation(lambda)? * u_spinor(p, sigma).components * Complex64::from(ratio);
    let coefficients = uq.map(|u| u.dotc(&right));
    let plus = max_abs(&(left - right));
    let minus = max_abs(&(left + right));
    let (residual, sign) = if plus <= minus { (plus, 1.0) } else { (minus, -1.0) };
    if !residual.is_finite() {
        return Err(Error::InvalidParameter("non-finite spinor residual".into()));
    }
    Ok(ModeIdentity {
        wigner,
        spin_half,
        left,
        right,
        coefficients,
        sign,
        residual,
    })
}

/// Max-abs component difference of the two sides of the mode identity,
/// minimized over the sign ambiguity of the spin-½ lift.
pub fn verify_mode_identity(lambda: &LorentzMatrix, p: &MassiveMomentum, sigma: Spin) -> Result<f64> {
    Ok(mode_identity(lambda, p, sigma)?.residual)
}

/// `max |D†D − I|`, zero exactly for unitary `D`.
pub fn unitarity_defect(d: &SpinorMatrix) -> f64 {
    max_abs(&(d.adjoint() * d - SpinorMatrix::identity()))
}
