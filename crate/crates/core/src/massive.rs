//! Wigner little-group rotations for massive particles.
//!
//! The standard momentum is `k = m(0, 0, 0, 1)` and the standard boost `L(p)`
//! is the pure boost along `p̂` carrying `k` to `p`. For any proper
//! orthochronous `Λ`, `W(Λ, p) = L⁻¹(Λp) Λ L(p)` fixes `k`, so it is a
//! rotation in the rest frame of the particle.

use serde::Serialize;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::lorentz::{self, FourVector, LorentzMatrix, Rapidity, Tolerances};

/// On-shell timelike momentum, in units where the mass is usually 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MassiveMomentum {
    p: FourVector,
    mass: f64,
}

impl MassiveMomentum {
    /// Validates `p·p = −m²` (relative to `max(m², p_t²)`) and `p_t > 0`.
    pub fn new(p: FourVector, mass: f64) -> Result<MassiveMomentum> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidMass(mass));
        }
        if !(p.t() > 0.0) {
            return Err(Error::NonPositiveEnergy(p.t()));
        }
        let norm2 = p.norm2();
        let expected = -mass * mass;
        let scale = (mass * mass).max(p.t() * p.t());
        if !((norm2 - expected).abs() <= Tolerances::default().composed * scale) {
            return Err(Error::OffShell { norm2, expected });
        }
        Ok(MassiveMomentum { p, mass })
    }

    pub fn at_rest(mass: f64) -> Result<MassiveMomentum> {
        MassiveMomentum::new(FourVector::new(0.0, 0.0, 0.0, mass), mass)
    }

    /// `m(sinh η n̂, cosh η)` for a unit direction `n̂`.
    pub fn from_rapidity(direction: [f64; 3], rapidity: f64, mass: f64) -> Result<MassiveMomentum> {
        let r = Rapidity::new(rapidity)?;
        let boost = lorentz::boost_along(direction, r)?;
        let rest = FourVector::new(0.0, 0.0, 0.0, mass);
        MassiveMomentum::new(&boost * &rest, mass)
    }

    /// `m(0, 0, sinh η, cosh η)`; negative `η` points along `−z`.
    pub fn along_z(rapidity: f64, mass: f64) -> Result<MassiveMomentum> {
        MassiveMomentum::from_rapidity([0.0, 0.0, 1.0], rapidity, mass)
    }

    pub fn four_vector(&self) -> &FourVector {
        &self.p
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn energy(&self) -> f64 {
        self.p.t()
    }

    /// `√(−p·p)` evaluated from the components; equals `mass` up to rounding.
    pub(crate) fn invariant_mass_dd(&self) -> Dd {
        (-self.p.norm2_dd()).sqrt()
    }

    /// Rapidity of the standard boost: `sinh ζ = |p|/m`.
    pub fn rapidity(&self) -> f64 {
        let mu = self.invariant_mass_dd();
        (self.p.spatial_norm_dd() / mu).to_f64().asinh()
    }

    /// Same energy, reversed spatial momentum.
    pub fn reversed(&self) -> MassiveMomentum {
        MassiveMomentum {
            p: self.p.spatial_reflection(),
            mass: self.mass,
        }
    }

    /// `Λp` with the same mass label.
    pub fn transformed(&self, lambda: &LorentzMatrix) -> Result<MassiveMomentum> {
        let q = lambda * &self.p;
        if !(q.t() > 0.0) {
            return Err(Error::NonPositiveEnergy(q.t()));
        }
        Ok(MassiveMomentum {
            p: q,
            mass: self.mass,
        })
    }
}

/// Pure boost taking `(0,0,0,μ)` to `p`, where `μ = √(−p·p)`.
///
/// Written with rational entries: `Lⁱⱼ = δᵢⱼ + pᵢpⱼ/(μ(pₜ + μ))`, `Lⁱₜ = Lᵗᵢ = pᵢ/μ`,
/// `Lᵗₜ = pₜ/μ`. Using the momentum's own invariant mass keeps `L` exactly Lorentz.
pub(crate) fn boost_from_momentum_dd(p: &FourVector, mu: Dd) -> LorentzMatrix {
    let c = p.dd();
    let denom = mu * (c[3] + mu);
    let mut m = [[Dd::ZERO; 4]; 4];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = c[i] * c[j] / denom;
        }
        m[i][i] += Dd::ONE;
        m[i][3] = c[i] / mu;
        m[3][i] = c[i] / mu;
    }
    m[3][3] = c[3] / mu;
    LorentzMatrix::from_dd(m)
}

/// Standard boost `L(p)`; identity at rest.
pub fn standard_boost(p: &MassiveMomentum) -> LorentzMatrix {
    boost_from_momentum_dd(&p.p, p.invariant_mass_dd())
}

/// `L⁻¹(p)`, the boost along `−p̂` with the same rapidity.
pub fn standard_boost_inverse(p: &MassiveMomentum) -> LorentzMatrix {
    boost_from_momentum_dd(&p.p.spatial_reflection(), p.invariant_mass_dd())
}

/// A little-group element of the massive standard momentum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WignerElement {
    pub matrix: LorentzMatrix,
    pub axis: [f64; 3],
    /// Radians in `(−π, π]`.
    pub angle: f64,
}

impl WignerElement {
    /// Largest deviation of the time row/column from `(0, 0, 0, 1)`.
    pub fn time_residual(&self) -> f64 {
        time_residual(&self.matrix)
    }

    /// Max-abs entry of `BᵀB − I` for the spatial block `B`, and `|det B − 1|`.
    pub fn orthogonality_residual(&self) -> f64 {
        orthogonality_residual(&self.matrix)
    }
}

fn time_residual(w: &LorentzMatrix) -> f64 {
    let mut worst = (w.dd(3, 3) - 1.0).to_f64().abs();
    for i in 0..3 {
        worst = worst.max(w.entry(i, 3).abs()).max(w.entry(3, i).abs());
    }
    worst
}

fn orthogonality_residual(w: &LorentzMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let mut dot: Dd = (0..3).map(|k| w.dd(k, i) * w.dd(k, j)).sum();
            if i == j {
                dot -= Dd::ONE;
            }
            worst = worst.max(dot.to_f64().abs());
        }
    }
    let b = w.spatial_block();
    let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    worst.max((det - 1.0).abs())
}

/// `W(Λ, p) = L⁻¹(Λp) Λ L(p)` together with its axis and angle.
pub fn wigner_rotation(lambda: &LorentzMatrix, p: &MassiveMomentum) -> Result<WignerElement> {
    lambda.check_proper(Tolerances::default().composed)?;
    let q = p.transformed(lambda)?;
    let w = &(&standard_boost_inverse(&q) * lambda) * &standard_boost(p);
    let (axis, angle) = extract_rotation(&w)?;
    Ok(WignerElement {
        matrix: w,
        axis,
        angle,
    })
}

/// Closed-form Wigner angle for `p = m(0,0,sinh η,cosh η)` under `B_x(ω)`:
/// `tan Ω = sinh η sinh ω / (cosh ω + cosh η)`, a rotation about `+y`.
pub fn wigner_angle_xz(eta: f64, omega: f64) -> f64 {
    (eta.sinh() * omega.sinh()).atan2(omega.cosh() + eta.cosh())
}

/// Polar angle of `Λp` relative to `p`: `tan θ = sinh ω / tanh η`.
///
/// At `η = 0` the boosted momentum lies along `±x` and `θ = ±π/2`; for negative
/// `η` (momentum along `−z`) the angle is measured from `−z` and changes sign.
pub fn deflection_angle_xz(eta: f64, omega: f64) -> f64 {
    let sign = if eta < 0.0 { -1.0 } else { 1.0 };
    (sign * omega.sinh()).atan2(eta.tanh().abs())
}

/// Off-axis component threshold below which an axis is snapped to `±x̂, ±ŷ, ±ẑ`.
const CANONICAL_AXIS_TOLERANCE: f64 = 1e-9;

/// Axis and angle of a massive little-group element.
///
/// The angle is `atan2(|a|, (tr B − 1)/2)` with `a` the axial vector of the
/// antisymmetric part. Past `π/2` the axis comes from the symmetric part,
/// which stays well conditioned up to `π`. Axes along a coordinate direction
/// are reported as the positive coordinate axis with a signed angle; the
/// identity reports `+ẑ` and angle 0.
pub fn extract_rotation(w: &LorentzMatrix) -> Result<([f64; 3], f64)> {
    let tol = Tolerances::default().composed;
    let residual = time_residual(w).max(orthogonality_residual(w));
    if !(residual <= tol) {
        return Err(Error::NotRotation { residual });
    }
    let b = w.spatial_block();
    let a = [
        0.5 * (b[2][1] - b[1][2]),
        0.5 * (b[0][2] - b[2][0]),
        0.5 * (b[1][0] - b[0][1]),
    ];
    let sin_angle = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
    let cos_angle = 0.5 * (b[0][0] + b[1][1] + b[2][2] - 1.0);
    let angle = sin_angle.atan2(cos_angle);
    if angle == 0.0 {
        return Ok(([0.0, 0.0, 1.0], 0.0));
    }
    let axis = if cos_angle >= 0.0 {
        a.map(|v| v / sin_angle)
    } else {
        // (B + Bᵀ)/2 − cos θ I = (1 − cos θ) n nᵀ
        let s = |i: usize, j: usize| {
            let v = 0.5 * (b[i][j] + b[j][i]);
            if i == j {
                v - cos_angle
            } else {
                v
            }
        };
        let col = (0..3)
            .max_by(|&i, &j| s(i, i).total_cmp(&s(j, j)))
            .unwrap_or(0);
        let v = [s(0, col), s(1, col), s(2, col)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let mut axis = v.map(|x| x / n);
        if axis[0] * a[0] + axis[1] * a[1] + axis[2] * a[2] < 0.0 {
            axis = axis.map(|x| -x);
        }
        axis
    };
    Ok(canonicalize(axis, angle))
}

fn canonicalize(axis: [f64; 3], angle: f64) -> ([f64; 3], f64) {
    for k in 0..3 {
        let off_axis = (0..3)
            .filter(|&i| i != k)
            .all(|i| axis[i].abs() <= CANONICAL_AXIS_TOLERANCE);
        if off_axis {
            let mut unit = [0.0; 3];
            unit[k] = 1.0;
            let signed = angle * axis[k].signum();
            let signed = if signed <= -std::f64::consts::PI {
                std::f64::consts::PI
            } else {
                signed
            };
            return (unit, signed);
        }
    }
    (axis, angle)
}

/// Rotation matrix for `(axis, angle)`, the inverse of [`extract_rotation`].
pub fn rotation_from_axis_angle(axis: [f64; 3], angle: f64) -> Result<LorentzMatrix> {
    lorentz::rotation_about(axis, angle)
}
