//! Photon polarization vectors and the massless little group.
//!
//! The standard momentum is `k = (0, 0, 1, 1)` and `L(p) = R(p̂)·B_z(|p⃗|)`.
//! Polarization vectors are kept in the helicity gauge (`ε⁰ = 0`, `p⃗·ε⃗ = 0`).
//! A bare `Λε` leaves that gauge; the gauge-restoring element
//! `𝒟 = Λ⁻¹ L(Λp) L⁻¹(p)` fixes `p` and undoes the shift, so `Λ𝒟` acts on
//! polarization vectors as the rotation `R(p̂_Λ) R⁻¹(p̂)`.

use num_complex::Complex64;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::lorentz::{self, FourVector, LorentzMatrix, Tolerances};
use crate::massive;

/// Null momentum with positive energy; the energy scale is arbitrary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MasslessMomentum {
    p: FourVector,
}

impl MasslessMomentum {
    /// Validates `p_t > 0` and `|p·p| ≤ 1e-10·p_t²`.
    pub fn new(p: FourVector) -> Result<MasslessMomentum> {
        if !(p.t() > 0.0) {
            return Err(Error::NonPositiveEnergy(p.t()));
        }
        let norm2 = p.norm2();
        if !(norm2.abs() <= Tolerances::default().composed * p.t() * p.t()) {
            return Err(Error::OffShell {
                norm2,
                expected: 0.0,
            });
        }
        Ok(MasslessMomentum { p })
    }

    /// The standard momentum `(0, 0, 1, 1)`.
    pub fn standard() -> MasslessMomentum {
        MasslessMomentum {
            p: FourVector::new(0.0, 0.0, 1.0, 1.0),
        }
    }

    /// `energy·(n̂, 1)` for a direction `n̂` (normalized here).
    pub fn along(direction: [f64; 3], energy: f64) -> Result<MasslessMomentum> {
        if !(energy > 0.0) {
            return Err(Error::NonPositiveEnergy(energy));
        }
        let n = lorentz::unit_dd(direction)?;
        let e = Dd::from(energy);
        Ok(MasslessMomentum {
            p: FourVector::from_dd([n[0] * e, n[1] * e, n[2] * e, e]),
        })
    }

    pub fn four_vector(&self) -> &FourVector {
        &self.p
    }

    pub fn energy(&self) -> f64 {
        self.p.t()
    }

    pub fn direction(&self) -> [f64; 3] {
        self.p.direction().expect("positive-energy null vectors have a direction")
    }

    pub fn reversed(&self) -> MasslessMomentum {
        MasslessMomentum {
            p: self.p.spatial_reflection(),
        }
    }

    pub fn transformed(&self, lambda: &LorentzMatrix) -> Result<MasslessMomentum> {
        let q = lambda * &self.p;
        if !(q.t() > 0.0) {
            return Err(Error::NonPositiveEnergy(q.t()));
        }
        Ok(MasslessMomentum { p: q })
    }

    /// `p/p_t`, the scale-free representative used in gauge checks.
    fn unit_energy(&self) -> [Dd; 4] {
        let c = self.p.dd();
        c.map(|v| v / c[3])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Helicity {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Helicity {
    pub const BOTH: [Helicity; 2] = [Helicity::Plus, Helicity::Minus];

    pub fn value(self) -> f64 {
        match self {
            Helicity::Plus => 1.0,
            Helicity::Minus => -1.0,
        }
    }

    /// Row/column index in `(+, −)` ordering.
    pub fn index(self) -> usize {
        match self {
            Helicity::Plus => 0,
            Helicity::Minus => 1,
        }
    }
}

/// Complex four-vector `re + i·im` attached to a null momentum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarizationVector {
    re: FourVector,
    im: FourVector,
    pub momentum: MasslessMomentum,
    pub helicity: Helicity,
}

impl Serialize for PolarizationVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.components().iter().map(|c| [c.re, c.im]).collect();
        let mut st = serializer.serialize_struct("PolarizationVector", 4)?;
        st.serialize_field("index_order", lorentz::INDEX_ORDER)?;
        st.serialize_field("components", &pairs)?;
        st.serialize_field("momentum", &self.momentum)?;
        st.serialize_field("helicity", &self.helicity)?;
        st.end()
    }
}

/// Largest violation among the helicity-gauge conditions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GaugeReport {
    /// `|ε⁰|`
    pub time_component: f64,
    /// `|p̂·ε⃗|` with `p` scaled to unit energy.
    pub transversality: f64,
    /// `|pᵘεᵤ|` with `p` scaled to unit energy.
    pub lorentz_condition: f64,
    /// `|ε†ε − 1|`
    pub norm_defect: f64,
}

impl GaugeReport {
    pub fn max(&self) -> f64 {
        self.time_component
            .max(self.transversality)
            .max(self.lorentz_condition)
            .max(self.norm_defect)
    }
}

fn cabs(re: Dd, im: Dd) -> f64 {
    (re.sqr() + im.sqr()).sqrt().to_f64()
}

impl PolarizationVector {
    fn new(re: FourVector, im: FourVector, momentum: MasslessMomentum, helicity: Helicity) -> Self {
        PolarizationVector {
            re,
            im,
            momentum,
            helicity,
        }
    }

    pub fn components(&self) -> [Complex64; 4] {
        std::array::from_fn(|i| Complex64::new(self.re.dd()[i].to_f64(), self.im.dd()[i].to_f64()))
    }

    pub fn real_part(&self) -> &FourVector {
        &self.re
    }

    pub fn imag_part(&self) -> &FourVector {
        &self.im
    }

    /// `ε†ε` summed over all four components.
    pub fn norm_sqr(&self) -> f64 {
        let (r, i) = (self.re.dd(), self.im.dd());
        (0..4).map(|k| r[k].sqr() + i[k].sqr()).sum::<Dd>().to_f64()
    }

    /// `ε†η` with `η` another vector: `Σ conj(εᵢ) ηᵢ` over all four components.
    pub fn inner(&self, other: &PolarizationVector) -> Complex64 {
        let (ar, ai, br, bi) = (self.re.dd(), self.im.dd(), other.re.dd(), other.im.dd());
        let re: Dd = (0..4).map(|k| ar[k] * br[k] + ai[k] * bi[k]).sum();
        let im: Dd = (0..4).map(|k| ar[k] * bi[k] - ai[k] * br[k]).sum();
        Complex64::new(re.to_f64(), im.to_f64())
    }

    pub fn gauge_report(&self) -> GaugeReport {
        let (r, i) = (self.re.dd(), self.im.dd());
        let p = self.momentum.unit_energy();
        let spatial = |v: &[Dd; 4]| v[0] * p[0] + v[1] * p[1] + v[2] * p[2];
        let (sr, si) = (spatial(r), spatial(i));
        let (lr, li) = (sr - r[3] * p[3], si - i[3] * p[3]);
        GaugeReport {
            time_component: cabs(r[3], i[3]),
            transversality: cabs(sr, si),
            lorentz_condition: cabs(lr, li),
            norm_defect: (self.norm_sqr() - 1.0).abs(),
        }
    }

    /// `(Λ re) + i(Λ im)`, relabelled with `Λp`.
    fn transformed_by(&self, lambda: &LorentzMatrix, momentum: MasslessMomentum) -> PolarizationVector {
        PolarizationVector::new(lambda * &self.re, lambda * &self.im, momentum, self.helicity)
    }

    fn scaled(&self, z: Complex64) -> (FourVector, FourVector) {
        let (r, i) = (self.re.dd(), self.im.dd());
        let (a, b) = (Dd::from(z.re), Dd::from(z.im));
        (
            FourVector::from_dd(std::array::from_fn(|k| r[k] * a - i[k] * b)),
            FourVector::from_dd(std::array::from_fn(|k| r[k] * b + i[k] * a)),
        )
    }
}

/// Helicity operator on four-vectors: the generator of rotations about `z`,
/// `(J₃)ˣ_y = −i`, `(J₃)ʸ_x = i`.
pub fn j3() -> [[Complex64; 4]; 4] {
    let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
    m[0][1] = Complex64::new(0.0, -1.0);
    m[1][0] = Complex64::new(0.0, 1.0);
    m
}

fn standard_polarization(helicity: Helicity) -> PolarizationVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    PolarizationVector::new(
        FourVector::new(h, 0.0, 0.0, 0.0),
        FourVector::new(0.0, helicity.value() * h, 0.0, 0.0),
        MasslessMomentum::standard(),
        helicity,
    )
}

/// `ε±(k) = (1, ±i, 0, 0)/√2`.
pub fn helicity_basis() -> (PolarizationVector, PolarizationVector) {
    (
        standard_polarization(Helicity::Plus),
        standard_polarization(Helicity::Minus),
    )
}

/// `B_z(u)`: `k ↦ (0, 0, u, u)`, with `zz = tt = (u²+1)/2u` and `zt = tz = (u²−1)/2u`.
pub fn scale_boost_z(u: f64) -> Result<LorentzMatrix> {
    if !(u.is_finite() && u > 0.0) {
        return Err(Error::InvalidParameter(format!("boost scale must be positive, got {u}")));
    }
    Ok(scale_boost_z_dd(Dd::from(u)))
}

fn scale_boost_z_dd(u: Dd) -> LorentzMatrix {
    let u2 = u.sqr();
    let (c, s) = ((u2 + 1.0) / (u * 2.0), (u2 - 1.0) / (u * 2.0));
    let mut m = [[Dd::ZERO; 4]; 4];
    m[0][0] = Dd::ONE;
    m[1][1] = Dd::ONE;
    m[2][2] = c;
    m[3][3] = c;
    m[2][3] = s;
    m[3][2] = s;
    LorentzMatrix::from_dd(m)
}

fn direction_rotation(p: &MasslessMomentum) -> LorentzMatrix {
    lorentz::rotation_to_dd(p.p.spatial_dd()).expect("positive-energy null vectors have a direction")
}

/// `L(p) = R(p̂)·B_z(|p⃗|)`.
pub fn standard_boost_massless(p: &MasslessMomentum) -> LorentzMatrix {
    &direction_rotation(p) * &scale_boost_z_dd(p.p.spatial_norm_dd())
}

fn standard_boost_massless_inverse(p: &MasslessMomentum) -> LorentzMatrix {
    &scale_boost_z_dd(Dd::ONE / p.p.spatial_norm_dd()) * &direction_rotation(p).inverse()
}

/// `ε±(p) = R(p̂) ε±(k)`; the `z`-boost in `L(p)` leaves `ε±(k)` unchanged.
pub fn polarization(p: &MasslessMomentum, helicity: Helicity) -> PolarizationVector {
    standard_polarization(helicity).transformed_by(&direction_rotation(p), *p)
}

/// `𝒟 = Λ⁻¹ L(Λp) L⁻¹(p)`, a little-group element of `p`.
pub fn little_group_d(lambda: &LorentzMatrix, p: &MasslessMomentum) -> Result<LorentzMatrix> {
    lambda.check_proper(Tolerances::default().composed)?;
    let q = p.transformed(lambda)?;
    Ok(&(&lambda.inverse() * &standard_boost_massless(&q)) * &standard_boost_massless_inverse(p))
}

/// `Λ𝒟ε±(p)`, which stays in the helicity gauge and equals `ε±(Λp)`.
pub fn gauge_fixed_transform(
    lambda: &LorentzMatrix,
    p: &MasslessMomentum,
    helicity: Helicity,
) -> Result<PolarizationVector> {
    let d = little_group_d(lambda, p)?;
    let q = p.transformed(lambda)?;
    Ok(polarization(p, helicity).transformed_by(&(lambda * &d), q))
}

/// `Λε±(p)` without gauge restoration.
pub fn naive_transform(
    lambda: &LorentzMatrix,
    p: &MasslessMomentum,
    helicity: Helicity,
) -> Result<PolarizationVector> {
    lambda.check_proper(Tolerances::default().composed)?;
    let q = p.transformed(lambda)?;
    Ok(polarization(p, helicity).transformed_by(lambda, q))
}

/// `R(p̂_Λ) R⁻¹(p̂)`, the rigid rotation of the polarization triad.
pub fn triad_rotation(lambda: &LorentzMatrix, p: &MasslessMomentum) -> Result<LorentzMatrix> {
    lambda.check_proper(Tolerances::default().composed)?;
    let q = p.transformed(lambda)?;
    Ok(&direction_rotation(&q) * &direction_rotation(p).inverse())
}

/// Real linear-polarization triad `(e_x, e_y, p̂)` at `p`, with
/// `e_x = (ε₊ + ε₋)/√2` and `e_y = −i(ε₊ − ε₋)/√2`.
pub fn polarization_triad(p: &MasslessMomentum) -> [[f64; 3]; 3] {
    let r = direction_rotation(p);
    std::array::from_fn(|col| std::array::from_fn(|row| r.entry(row, col)))
}

/// Translation-sector element of the massless little group,
/// rows `(1, 0, −α, α)`, `(0, 1, −β, β)`, `(α, β, 1−ζ, ζ)`, `(α, β, −ζ, 1+ζ)`
/// with `ζ = (α² + β²)/2`. `S(α, β)⁻¹ = S(−α, −β)`.
pub fn translation_matrix(alpha: f64, beta: f64) -> LorentzMatrix {
    translation_matrix_dd(Dd::from(alpha), Dd::from(beta))
}

fn translation_matrix_dd(a: Dd, b: Dd) -> LorentzMatrix {
    let z = (a.sqr() + b.sqr()) * 0.5;
    LorentzMatrix::from_dd([
        [Dd::ONE, Dd::ZERO, -a, a],
        [Dd::ZERO, Dd::ONE, -b, b],
        [a, b, Dd::ONE - z, z],
        [a, b, -z, Dd::ONE + z],
    ])
}

/// `W = S(α, β)·R_z(θ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Iso2Element {
    pub matrix: LorentzMatrix,
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
    #[serde(skip)]
    alpha_dd: Dd,
    #[serde(skip)]
    beta_dd: Dd,
    #[serde(skip)]
    cos_sin: (Dd, Dd),
}

impl Iso2Element {
    /// `S(α, β)·R_z(θ)` rebuilt from the extracted parameters.
    pub fn reconstruct(&self) -> LorentzMatrix {
        let (c, s) = self.cos_sin;
        let rz = lorentz::rotation_dd([Dd::ZERO, Dd::ZERO, Dd::ONE], c, s);
        &translation_matrix_dd(self.alpha_dd, self.beta_dd) * &rz
    }

    /// Max-abs entry of `W − S(α, β)·R_z(θ)`.
    pub fn reconstruction_residual(&self) -> f64 {
        self.reconstruct().max_abs_diff(&self.matrix)
    }
}

/// Factor `W = L⁻¹(Λp) Λ L(p)` into `S(α, β)·R_z(θ)`.
pub fn iso2_decompose(lambda: &LorentzMatrix, p: &MasslessMomentum) -> Result<Iso2Element> {
    lambda.check_proper(Tolerances::default().composed)?;
    let q = p.transformed(lambda)?;
    let w = &(&standard_boost_massless_inverse(&q) * lambda) * &standard_boost_massless(p);
    let k = FourVector::new(0.0, 0.0, 1.0, 1.0);
    let residual = (&w * &k).max_abs_diff(&k);
    if !(residual <= Tolerances::default().composed) {
        return Err(Error::NotLittleGroup { residual });
    }
    let (a, b) = (w.dd(0, 3), w.dd(1, 3));
    let r = &translation_matrix_dd(-a, -b) * &w;
    let (c, s) = (r.dd(0, 0), r.dd(1, 0));
    let n = (c.sqr() + s.sqr()).sqrt();
    let theta = s.to_f64().atan2(c.to_f64());
    Ok(Iso2Element {
        matrix: w,
        theta,
        alpha: a.to_f64(),
        beta: b.to_f64(),
        alpha_dd: a,
        beta_dd: b,
        cos_sin: (c / n, s / n),
    })
}

/// Least-squares fit of `Λε_σ(p) = e^{−iσθ} ε_σ(Λp) + λ·Λp`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HelicityPhaseFit {
    pub theta: f64,
    #[serde(serialize_with = "complex_pair")]
    pub phase: Complex64,
    #[serde(serialize_with = "complex_pair")]
    pub gauge: Complex64,
    pub residual: f64,
}

fn complex_pair<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// `θ` is the `R_z` angle of the ISO(2) factorization; an active rotation by `θ`
/// multiplies `ε±(k)` by `e^{∓iθ}`.
pub fn helicity_phase_fit(
    lambda: &LorentzMatrix,
    p: &MasslessMomentum,
    helicity: Helicity,
) -> Result<HelicityPhaseFit> {
    let iso = iso2_decompose(lambda, p)?;
    let a = naive_transform(lambda, p, helicity)?;
    let q = a.momentum;
    let phase = Complex64::from_polar(1.0, -helicity.value() * iso.theta);
    let (tr, ti) = polarization(&q, helicity).scaled(phase);
    let b = q.p.dd();
    let (ar, ai) = (a.re.dd(), a.im.dd());
    let dr: [Dd; 4] = std::array::from_fn(|k| ar[k] - tr.dd()[k]);
    let di: [Dd; 4] = std::array::from_fn(|k| ai[k] - ti.dd()[k]);
    let bb: Dd = b.iter().map(|v| v.sqr()).sum();
    let lr = (0..4).map(|k| b[k] * dr[k]).sum::<Dd>() / bb;
    let li = (0..4).map(|k| b[k] * di[k]).sum::<Dd>() / bb;
    let residual = (0..4)
        .map(|k| cabs(dr[k] - lr * b[k], di[k] - li * b[k]))
        .fold(0.0, f64::max);
    Ok(HelicityPhaseFit {
        theta: iso.theta,
        phase,
        gauge: Complex64::new(lr.to_f64(), li.to_f64()),
        residual,
    })
}

/// Residual of the helicity-phase fit.
pub fn verify_helicity_phase(
    lambda: &LorentzMatrix,
    p: &MasslessMomentum,
    helicity: Helicity,
) -> Result<f64> {
    Ok(helicity_phase_fit(lambda, p, helicity)?.residual)
}

/// Polar tilt of the triad for `Λ = B_x(ω)` acting on `k`: `tan θ = sinh ω`.
pub fn triad_tilt_xz(omega: f64) -> f64 {
    omega.sinh().atan()
}

/// Axis and signed angle of a triad rotation.
pub fn rotation_angle(r: &LorentzMatrix) -> Result<([f64; 3], f64)> {
    massive::extract_rotation(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::{boost_axis, compose, rotation_about, rotation_about_axis, Axis, Rapidity};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn rap(v: f64) -> Rapidity {
        Rapidity::new(v).unwrap()
    }

    fn cz(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: [Complex64; 4], b: [Complex64; 4]) -> f64 {
        (0..4).map(|k| (a[k] - b[k]).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn helicity_basis_is_j3_eigenbasis() {
        let (plus, minus) = helicity_basis();
        let j = j3();
        for (e, h) in [(plus, 1.0), (minus, -1.0)] {
            let v = e.components();
            let jv: [Complex64; 4] = std::array::from_fn(|r| (0..4).map(|c| j[r][c] * v[c]).sum());
            assert!(close(jv, v.map(|z| z * h)) < 1e-16);
            assert!(e.gauge_report().max() < 1e-15);
        }
        assert_eq!(plus.inner(&minus), cz(0.0, 0.0));
        let h = FRAC_1_SQRT_2;
        assert_eq!(plus.components(), [cz(h, 0.0), cz(0.0, h), cz(0.0, 0.0), cz(0.0, 0.0)]);
    }

    #[test]
    fn massless_standard_boost() {
        let k = MasslessMomentum::standard();
        assert!(standard_boost_massless(&k).max_abs_diff(&LorentzMatrix::identity()) < 1e-16);
        assert!(scale_boost_z(1.0).unwrap().max_abs_diff(&LorentzMatrix::identity()) == 0.0);
        let p = MasslessMomentum::new(FourVector::new(0.0, 0.0, 2.0, 2.0)).unwrap();
        let l = standard_boost_massless(&p);
        assert_eq!(l.entry(2, 2), 1.25);
        assert_eq!(l.entry(2, 3), 0.75);
        assert!((&l * k.four_vector()).max_abs_diff(p.four_vector()) < 1e-15);
        assert!(scale_boost_z(0.0).is_err());
    }

    #[test]
    fn momentum_validation() {
        assert!(matches!(
            MasslessMomentum::new(FourVector::new(0.0, 0.0, 1.0, 2.0)),
            Err(Error::OffShell { .. })
        ));
        assert!(matches!(
            MasslessMomentum::new(FourVector::new(0.0, 0.0, -1.0, -1.0)),
            Err(Error::NonPositiveEnergy(_))
        ));
        let p = MasslessMomentum::along([3.0, 0.0, 4.0], 2.0).unwrap();
        assert!(p.four_vector().max_abs_diff(&FourVector::new(1.2, 0.0, 1.6, 2.0)) < 1e-15);
    }

    #[test]
    fn polarization_along_tilted_direction() {
        let th = 0.7f64;
        let p = MasslessMomentum::along([th.sin(), 0.0, th.cos()], 1.0).unwrap();
        let e = polarization(&p, Helicity::Plus);
        let h = FRAC_1_SQRT_2;
        let expected = [cz(th.cos() * h, 0.0), cz(0.0, h), cz(-th.sin() * h, 0.0), cz(0.0, 0.0)];
        assert!(close(e.components(), expected) < 1e-15);
        let k = MasslessMomentum::standard();
        assert_eq!(polarization(&k, Helicity::Minus).components(), helicity_basis().1.components());
    }

    #[test]
    fn little_group_d_examples() {
        let k = MasslessMomentum::standard();
        let d = little_group_d(&LorentzMatrix::identity(), &k).unwrap();
        assert!(d.max_abs_diff(&LorentzMatrix::identity()) < 1e-16);

        let omega = 0.8f64;
        let d = little_group_d(&boost_axis(Axis::X, rap(omega)), &k).unwrap();
        let shift = -omega.tanh() * FRAC_1_SQRT_2;
        for h in Helicity::BOTH {
            let e = standard_polarization(h);
            let out = e.transformed_by(&d, k);
            let mut expected = e.components();
            expected[2] += shift;
            expected[3] += shift;
            assert!(close(out.components(), expected) < 1e-15, "{h:?}");
        }
    }

    #[test]
    fn gauge_fixed_transform_examples() {
        let p = MasslessMomentum::along([0.0, 0.0, 1.0], 1.7).unwrap();
        for h in Helicity::BOTH {
            let out = gauge_fixed_transform(&boost_axis(Axis::Z, rap(1.2)), &p, h).unwrap();
            assert!(close(out.components(), polarization(&p, h).components()) < 1e-15);
        }

        let omega = 1.0f64;
        let lam = boost_axis(Axis::X, rap(omega));
        let k = MasslessMomentum::standard();
        let out = gauge_fixed_transform(&lam, &k, Helicity::Plus).unwrap();
        let ry = rotation_about_axis(Axis::Y, triad_tilt_xz(omega));
        let expected = standard_polarization(Helicity::Plus).transformed_by(&ry, k);
        assert!(close(out.components(), expected.components()) < 1e-15);
        assert!(out.gauge_report().time_component < 1e-14);

        let naive = naive_transform(&lam, &k, Helicity::Plus).unwrap();
        assert!((naive.components()[3].re - omega.sinh() * FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn triad_tilt() {
        let k = MasslessMomentum::standard();
        assert!(triad_rotation(&LorentzMatrix::identity(), &k).unwrap().max_abs_diff(&LorentzMatrix::identity()) == 0.0);
        for omega in [0.25, 0.5, 1.0, 2.0] {
            let r = triad_rotation(&boost_axis(Axis::X, rap(omega)), &k).unwrap();
            let (axis, angle) = rotation_angle(&r).unwrap();
            assert_eq!(axis, [0.0, 1.0, 0.0]);
            assert!((angle - triad_tilt_xz(omega)).abs() < 1e-12);
            assert!((angle - massive::wigner_angle_xz(1.0, omega)).abs() > 0.1);
        }
        assert!((triad_tilt_xz(1.0) - 0.865_769_483_239_658_6).abs() < 1e-15);
    }

    #[test]
    fn iso2_examples() {
        let p = MasslessMomentum::along([0.0, 0.0, 1.0], 2.0).unwrap();
        let e = iso2_decompose(&rotation_about_axis(Axis::Z, 0.6), &p).unwrap();
        assert!((e.theta - 0.6).abs() < 1e-15);
        assert!(e.alpha.abs() < 1e-15 && e.beta.abs() < 1e-15);
        let e = iso2_decompose(&boost_axis(Axis::Z, rap(0.9)), &p).unwrap();
        assert!(e.theta.abs() < 1e-15 && e.alpha.abs() < 1e-15 && e.beta.abs() < 1e-15);

        let e = iso2_decompose(&boost_axis(Axis::X, rap(1.0)), &MasslessMomentum::standard()).unwrap();
        assert!(e.reconstruction_residual() < 1e-14);
        assert!(e.alpha.abs() > 0.1);

        let s = translation_matrix(0.3, -1.2);
        assert!(crate::lorentz::verify_lorentz(&s) < 1e-15);
        let k = FourVector::new(0.0, 0.0, 1.0, 1.0);
        assert_eq!(&s * &k, k);
        assert!((&s * &translation_matrix(-0.3, 1.2)).max_abs_diff(&LorentzMatrix::identity()) < 1e-15);
    }

    #[test]
    fn helicity_phase_examples() {
        let p = MasslessMomentum::along([0.0, 0.0, 1.0], 1.0).unwrap();
        let fit = helicity_phase_fit(&LorentzMatrix::identity(), &p, Helicity::Plus).unwrap();
        assert_eq!(fit.residual, 0.0);
        assert_eq!(fit.phase, cz(1.0, 0.0));

        let phi = 0.9;
        for h in Helicity::BOTH {
            let fit = helicity_phase_fit(&rotation_about_axis(Axis::Z, phi), &p, h).unwrap();
            assert!(fit.residual < 1e-12);
            assert!(fit.gauge.norm() < 1e-15);
            assert!((fit.phase - Complex64::from_polar(1.0, -h.value() * phi)).norm() < 1e-15);
        }

        let fit = helicity_phase_fit(&boost_axis(Axis::X, rap(1.0)), &MasslessMomentum::standard(), Helicity::Minus)
            .unwrap();
        assert!(fit.residual < 1e-10);
        assert!(fit.gauge.norm() > 0.1);
    }

    fn arb_lorentz() -> impl Strategy<Value = LorentzMatrix> {
        let dir = prop::array::uniform3(-1.0f64..1.0)
            .prop_filter("nonzero", |d| d.iter().map(|v| v * v).sum::<f64>() > 1e-4);
        let gen = prop_oneof![
            (dir.clone(), -5.0f64..5.0).prop_map(|(d, eta)| lorentz::boost_along(
                lorentz::unit_dd(d).unwrap().map(Dd::to_f64),
                rap(eta)
            )
            .unwrap()),
            (dir, -PI..PI).prop_map(|(d, a)| rotation_about(d, a).unwrap()),
        ];
        prop::collection::vec(gen, 1..=4)
            .prop_map(|g| g.iter().fold(LorentzMatrix::identity(), |acc, x| compose(&acc, x)))
    }

    fn arb_null() -> impl Strategy<Value = MasslessMomentum> {
        (
            prop::array::uniform3(-1.0f64..1.0)
                .prop_filter("nonzero", |d| d.iter().map(|v| v * v).sum::<f64>() > 1e-4),
            0.1f64..10.0,
        )
            .prop_map(|(d, e)| MasslessMomentum::along(d, e).unwrap())
    }

    proptest! {
        #[test]
        fn gauge_safety(lam in arb_lorentz(), p in arb_null(), plus in any::<bool>()) {
            let h = if plus { Helicity::Plus } else { Helicity::Minus };
            prop_assert!(polarization(&p, h).gauge_report().max() < 1e-12);
            let out = gauge_fixed_transform(&lam, &p, h).unwrap();
            prop_assert!(out.gauge_report().max() < 1e-12);
            let q = p.transformed(&lam).unwrap();
            let other = polarization(&q, if plus { Helicity::Minus } else { Helicity::Plus });
            prop_assert!(other.inner(&out).norm() < 1e-12);
            prop_assert!(close(out.components(), polarization(&q, h).components()) < 1e-12);
            let via_triad = polarization(&p, h).transformed_by(&triad_rotation(&lam, &p).unwrap(), q);
            prop_assert!(close(out.components(), via_triad.components()) < 1e-12);
        }

        #[test]
        fn d_fixes_p(lam in arb_lorentz(), p in arb_null()) {
            let d = little_group_d(&lam, &p).unwrap();
            let scale = p.energy();
            prop_assert!((&d * p.four_vector()).max_abs_diff(p.four_vector()) < 1e-12 * scale.max(1.0));
        }

        #[test]
        fn triad_is_rigidly_rotated(lam in arb_lorentz(), p in arb_null()) {
            let r = triad_rotation(&lam, &p).unwrap();
            let q = p.transformed(&lam).unwrap();
            let rp = (&r * &FourVector::from_spatial(p.direction(), 0.0)).spatial();
            let qd = q.direction();
            for i in 0..3 {
                prop_assert!((rp[i] - qd[i]).abs() < 1e-12);
            }
            let before = polarization_triad(&p);
            let after = polarization_triad(&q);
            for i in 0..3 {
                let moved = (&r * &FourVector::from_spatial(before[i], 0.0)).spatial();
                for j in 0..3 {
                    let dot: f64 = (0..3).map(|c| moved[c] * after[j][c]).sum();
                    let target = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((dot - target).abs() < 1e-10);
                }
            }
        }

        #[test]
        fn iso2_reconstructs(lam in arb_lorentz(), p in arb_null(), plus in any::<bool>()) {
            let e = iso2_decompose(&lam, &p).unwrap();
            let k = FourVector::new(0.0, 0.0, 1.0, 1.0);
            prop_assert!((&e.matrix * &k).max_abs_diff(&k) < 1e-10);
            prop_assert!(e.reconstruction_residual() < 1e-10);
            let h = if plus { Helicity::Plus } else { Helicity::Minus };
            prop_assert!(verify_helicity_phase(&lam, &p, h).unwrap() < 1e-10);
        }
    }
}
