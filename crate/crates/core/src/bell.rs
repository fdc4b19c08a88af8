//! Two-particle Bell states and their transport under Lorentz transformations.
//!
//! A state is a 2×2 amplitude matrix `c[σ_A][σ_B]` in the `(+, −)` basis of
//! each particle, labelled by the two momenta. A transformation acts locally:
//! `c' = U_A c U_Bᵀ`, with `U` the spin-½ Wigner matrix or the photon helicity
//! action at each particle's own momentum. Overall normalization and
//! translation phases multiply the whole state and are dropped.

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::dirac::SpinHalfRotation;
use crate::error::{Error, Result};
use crate::lorentz::{FourVector, LorentzMatrix, Tolerances};
use crate::massive::{self, MassiveMomentum};
use crate::photon::{self, MasslessMomentum};

pub type Amplitudes = Matrix2<Complex64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Species {
    SpinHalf,
    Photon,
}

/// How a photon's helicity amplitudes respond to a transformation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhotonConvention {
    /// Polarization vectors co-rotate with the triad; amplitudes are unchanged.
    #[default]
    GaugeFixed,
    /// Amplitudes pick up `e^{∓iθ}` from the ISO(2) rotation angle.
    HelicityPhase,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Subsystem {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BipartiteState {
    amplitudes: Amplitudes,
    momenta: [FourVector; 2],
    species: Species,
}

fn norm_sqr(c: &Amplitudes) -> f64 {
    c.iter().map(|z| z.norm_sqr()).sum()
}

fn check_normalized(c: &Amplitudes) -> Result<()> {
    let n = norm_sqr(c);
    if !((n - 1.0).abs() <= Tolerances::default().composed) {
        return Err(Error::Unnormalized(n));
    }
    Ok(())
}

fn validate_momentum(species: Species, p: &FourVector) -> Result<()> {
    match species {
        Species::SpinHalf => massive_momentum(p).map(|_| ()),
        Species::Photon => MasslessMomentum::new(*p).map(|_| ()),
    }
}

/// A timelike momentum with its own invariant mass as the mass label.
fn massive_momentum(p: &FourVector) -> Result<MassiveMomentum> {
    let m2 = -p.norm2();
    if !(m2 > 0.0) {
        return Err(Error::OffShell {
            norm2: p.norm2(),
            expected: -1.0,
        });
    }
    MassiveMomentum::new(*p, m2.sqrt())
}

impl BipartiteState {
    pub fn new(amplitudes: Amplitudes, momenta: [FourVector; 2], species: Species) -> Result<BipartiteState> {
        check_normalized(&amplitudes)?;
        for p in &momenta {
            validate_momentum(species, p)?;
        }
        Ok(BipartiteState {
            amplitudes,
            momenta,
            species,
        })
    }

    pub fn amplitudes(&self) -> &Amplitudes {
        &self.amplitudes
    }

    pub fn momenta(&self) -> &[FourVector; 2] {
        &self.momenta
    }

    pub fn species(&self) -> Species {
        self.species
    }

    /// `Σ|c|²`.
    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }
}

/// `(|++⟩ + |−−⟩)/√2` with momenta `p` and `(−p⃗, p_t)`.
pub fn bell_state(species: Species, p: FourVector) -> Result<BipartiteState> {
    if p.spatial_norm() == 0.0 {
        return Err(Error::NoSpatialMomentum);
    }
    let h = Complex64::from(std::f64::consts::FRAC_1_SQRT_2);
    let zero = Complex64::new(0.0, 0.0);
    BipartiteState::new(
        Amplitudes::new(h, zero, zero, h),
        [p, p.spatial_reflection()],
        species,
    )
}

/// What one particle experienced during a transport.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocalAction {
    #[serde(serialize_with = "complex_matrix")]
    pub unitary: Amplitudes,
    /// Axis of the massive Wigner rotation; `+z` for photons.
    pub axis: [f64; 3],
    /// Massive Wigner angle, or the ISO(2) rotation angle for photons.
    pub angle: f64,
    /// Rotation angle of the photon polarization triad.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triad_angle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triad_axis: Option<[f64; 3]>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transport {
    pub state: BipartiteState,
    pub local: [LocalAction; 2],
}

fn local_action(
    species: Species,
    convention: PhotonConvention,
    lambda: &LorentzMatrix,
    p: &FourVector,
) -> Result<LocalAction> {
    match species {
        Species::SpinHalf => {
            let w = massive::wigner_rotation(lambda, &massive_momentum(p)?)?;
            Ok(LocalAction {
                unitary: SpinHalfRotation::from_wigner(&w).matrix,
                axis: w.axis,
                angle: w.angle,
                triad_angle: None,
                triad_axis: None,
            })
        }
        Species::Photon => {
            let p = MasslessMomentum::new(*p)?;
            let iso = photon::iso2_decompose(lambda, &p)?;
            let (triad_axis, triad_angle) = photon::rotation_angle(&photon::triad_rotation(lambda, &p)?)?;
            let unitary = match convention {
                PhotonConvention::GaugeFixed => Amplitudes::identity(),
                PhotonConvention::HelicityPhase => Amplitudes::new(
                    Complex64::from_polar(1.0, -iso.theta),
                    Complex64::new(0.0, 0.0),
                    Complex64::new(0.0, 0.0),
                    Complex64::from_polar(1.0, iso.theta),
                ),
            };
            Ok(LocalAction {
                unitary,
                axis: [0.0, 0.0, 1.0],
                angle: iso.theta,
                triad_angle: Some(triad_angle),
                triad_axis: Some(triad_axis),
            })
        }
    }
}

/// Transport with per-particle details.
pub fn transport_detailed(
    state: &BipartiteState,
    lambda: &LorentzMatrix,
    convention: PhotonConvention,
) -> Result<Transport> {
    lambda.check_proper(Tolerances::default().composed)?;
    let [pa, pb] = state.momenta;
    let a = local_action(state.species, convention, lambda, &pa)?;
    let b = local_action(state.species, convention, lambda, &pb)?;
    let amplitudes = a.unitary * state.amplitudes * b.unitary.transpose();
    Ok(Transport {
        state: BipartiteState {
            amplitudes,
            momenta: [lambda * &pa, lambda * &pb],
            species: state.species,
        },
        local: [a, b],
    })
}

/// `c' = U_A c U_Bᵀ`, with photons in the gauge-fixed convention.
pub fn transport(state: &BipartiteState, lambda: &LorentzMatrix) -> Result<BipartiteState> {
    Ok(transport_detailed(state, lambda, PhotonConvention::GaugeFixed)?.state)
}

/// Hermitian, unit-trace, positive semidefinite 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReducedDensity {
    #[serde(serialize_with = "complex_matrix")]
    matrix: Amplitudes,
}

impl ReducedDensity {
    pub fn new(matrix: Amplitudes) -> Result<ReducedDensity> {
        let tol = Tolerances::default().composed;
        let hermitian = (matrix - matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if !(hermitian <= tol) {
            return Err(Error::InvalidDensity(format!("not Hermitian (defect {hermitian:e})")));
        }
        let trace = matrix.trace();
        if !((trace - Complex64::from(1.0)).norm() <= tol) {
            return Err(Error::InvalidDensity(format!("trace is {trace}")));
        }
        let rho = ReducedDensity { matrix };
        let [low, _] = rho.eigenvalues();
        if !(low >= -tol) {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {low:e}")));
        }
        Ok(rho)
    }

    pub fn matrix(&self) -> &Amplitudes {
        &self.matrix
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let (a, d) = (self.matrix[(0, 0)].re, self.matrix[(1, 1)].re);
        let b = 0.5 * (self.matrix[(0, 1)] + self.matrix[(1, 0)].conj());
        let mean = 0.5 * (a + d);
        let r = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        [mean - r, mean + r]
    }

    /// Max-abs entry of `ρ − I/2`.
    pub fn distance_to_maximally_mixed(&self) -> f64 {
        (self.matrix - Amplitudes::identity() * Complex64::from(0.5))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// `ρ_A = c c†`, `ρ_B = cᵀ c̄`.
pub fn reduced_density(state: &BipartiteState, subsystem: Subsystem) -> Result<ReducedDensity> {
    let c = &state.amplitudes;
    check_normalized(c)?;
    let m = match subsystem {
        Subsystem::A => c * c.adjoint(),
        Subsystem::B => c.transpose() * c.conjugate(),
    };
    ReducedDensity::new(m)
}

/// `2|c₀₀c₁₁ − c₀₁c₁₀|`.
pub fn concurrence(state: &BipartiteState) -> Result<f64> {
    let c = &state.amplitudes;
    check_normalized(c)?;
    Ok(2.0 * (c[(0, 0)] * c[(1, 1)] - c[(0, 1)] * c[(1, 0)]).norm())
}

/// Von Neumann entropy in bits. Eigenvalues within tolerance of zero count as zero.
pub fn entropy(rho: &ReducedDensity) -> Result<f64> {
    let tol = Tolerances::default().composed;
    let mut s = 0.0;
    for l in rho.eigenvalues() {
        if l < -tol {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {l:e}")));
        }
        if l > 0.0 {
            s -= l * l.log2();
        }
    }
    Ok(s)
}

fn complex_matrix<S: Serializer>(m: &Amplitudes, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: [[[f64; 2]; 2]; 2] =
        std::array::from_fn(|r| std::array::from_fn(|c| [m[(r, c)].re, m[(r, c)].im]));
    rows.serialize(s)
}

/// JSON dump of a state with its entanglement measures.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StateRecord {
    pub species: Species,
    pub momenta: [FourVector; 2],
    #[serde(serialize_with = "complex_matrix")]
    pub amplitudes: Amplitudes,
    pub concurrence: f64,
    #[serde(rename = "entropy_A")]
    pub entropy_a: f64,
}

impl StateRecord {
    pub fn new(state: &BipartiteState) -> Result<StateRecord> {
        Ok(StateRecord {
            species: state.species,
            momenta: state.momenta,
            amplitudes: state.amplitudes,
            concurrence: concurrence(state)?,
            entropy_a: entropy(&reduced_density(state, Subsystem::A)?)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::{boost_axis, rotation_about, Axis, Rapidity};
    use proptest::prelude::*;

    fn rap(v: f64) -> Rapidity {
        Rapidity::new(v).unwrap()
    }

    fn spin_p(eta: f64) -> FourVector {
        FourVector::new(0.0, 0.0, eta.sinh(), eta.cosh())
    }

    fn max_diff(a: &Amplitudes, b: &Amplitudes) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn cz(re: f64) -> Complex64 {
        Complex64::from(re)
    }

    #[test]
    fn bell_states() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for (species, p) in [
            (Species::SpinHalf, spin_p(1.0)),
            (Species::Photon, FourVector::new(0.0, 0.0, 1.0, 1.0)),
        ] {
            let s = bell_state(species, p).unwrap();
            assert_eq!(*s.amplitudes(), Amplitudes::new(cz(h), cz(0.0), cz(0.0), cz(h)));
            assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
            assert_eq!(s.momenta()[1], p.spatial_reflection());
            assert!((concurrence(&s).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!(bell_state(Species::SpinHalf, FourVector::new(0.0, 0.0, 1.0, 1.0)).is_err());
        assert!(bell_state(Species::Photon, spin_p(1.0)).is_err());
        assert!(matches!(
            bell_state(Species::SpinHalf, FourVector::new(0.0, 0.0, 0.0, 1.0)),
            Err(Error::NoSpatialMomentum)
        ));
    }

    #[test]
    fn collinear_boost_changes_nothing() {
        for (species, p) in [
            (Species::SpinHalf, spin_p(1.0)),
            (Species::Photon, FourVector::new(0.0, 0.0, 1.0, 1.0)),
        ] {
            let s = bell_state(species, p).unwrap();
            let t = transport(&s, &boost_axis(Axis::Z, rap(0.7))).unwrap();
            assert!(max_diff(t.amplitudes(), s.amplitudes()) < 1e-15);
        }
    }

    #[test]
    fn spin_half_xz_geometry() {
        let s = bell_state(Species::SpinHalf, spin_p(1.0)).unwrap();
        let t = transport_detailed(&s, &boost_axis(Axis::X, rap(1.0)), PhotonConvention::GaugeFixed).unwrap();
        let omega = massive::wigner_angle_xz(1.0, 1.0);
        assert!((t.local[0].angle - omega).abs() < 1e-12);
        assert!((t.local[1].angle + omega).abs() < 1e-12);
        let r = |a: f64| crate::dirac::wigner_spin_half(a).matrix;
        let expected = r(omega) * s.amplitudes() * r(-omega).transpose();
        assert!(max_diff(t.state.amplitudes(), &expected) < 1e-12);
        assert!((concurrence(&t.state).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn photon_conventions_agree_on_entanglement() {
        let s = bell_state(Species::Photon, FourVector::new(0.0, 0.0, 1.0, 1.0)).unwrap();
        let lam = &boost_axis(Axis::X, rap(1.0)) * &rotation_about([1.0, 1.0, 0.0], 0.4).unwrap();
        let fixed = transport_detailed(&s, &lam, PhotonConvention::GaugeFixed).unwrap();
        let phased = transport_detailed(&s, &lam, PhotonConvention::HelicityPhase).unwrap();
        assert_eq!(fixed.state.amplitudes(), s.amplitudes());
        assert!(max_diff(phased.state.amplitudes(), s.amplitudes()) > 1e-3);
        assert!((concurrence(&fixed.state).unwrap() - concurrence(&phased.state).unwrap()).abs() < 1e-15);
        for sub in [Subsystem::A, Subsystem::B] {
            let a = reduced_density(&fixed.state, sub).unwrap();
            let b = reduced_density(&phased.state, sub).unwrap();
            assert!(max_diff(a.matrix(), b.matrix()) < 1e-15);
        }
        let tilt = fixed.local[0].triad_angle.unwrap();
        assert!(tilt.abs() > 0.0);
    }

    #[test]
    fn reduced_density_examples() {
        let s = bell_state(Species::SpinHalf, spin_p(1.0)).unwrap();
        for sub in [Subsystem::A, Subsystem::B] {
            let rho = reduced_density(&s, sub).unwrap();
            assert!(rho.distance_to_maximally_mixed() < 1e-15);
            assert!((entropy(&rho).unwrap() - 1.0).abs() < 1e-15);
        }
        let product = BipartiteState::new(
            Amplitudes::new(cz(1.0), cz(0.0), cz(0.0), cz(0.0)),
            *s.momenta(),
            Species::SpinHalf,
        )
        .unwrap();
        let rho = reduced_density(&product, Subsystem::A).unwrap();
        assert_eq!(*rho.matrix(), Amplitudes::new(cz(1.0), cz(0.0), cz(0.0), cz(0.0)));
        assert_eq!(entropy(&rho).unwrap(), 0.0);
        assert_eq!(concurrence(&product).unwrap(), 0.0);
    }

    #[test]
    fn entropy_of_biased_mixture() {
        let rho = ReducedDensity::new(Amplitudes::new(cz(0.9), cz(0.0), cz(0.0), cz(0.1))).unwrap();
        // −0.9 log₂ 0.9 − 0.1 log₂ 0.1
        assert!((entropy(&rho).unwrap() - 0.468_995_593_589_281_2).abs() < 1e-15);
    }

    #[test]
    fn invalid_inputs() {
        let p = [spin_p(1.0), spin_p(-1.0)];
        assert!(matches!(
            BipartiteState::new(Amplitudes::identity(), p, Species::SpinHalf),
            Err(Error::Unnormalized(_))
        ));
        assert!(ReducedDensity::new(Amplitudes::new(cz(1.2), cz(0.0), cz(0.0), cz(-0.2))).is_err());
        assert!(ReducedDensity::new(Amplitudes::new(cz(0.5), cz(0.1), cz(0.0), cz(0.5))).is_err());
        assert!(ReducedDensity::new(Amplitudes::new(cz(0.5), cz(0.0), cz(0.0), cz(0.6))).is_err());
    }

    #[test]
    fn record_json_shape() {
        let s = bell_state(Species::Photon, FourVector::new(0.0, 0.0, 1.0, 1.0)).unwrap();
        let v = serde_json::to_value(StateRecord::new(&s).unwrap()).unwrap();
        assert_eq!(v["species"], "photon");
        assert_eq!(v["amplitudes"][1][1][0].as_f64().unwrap(), std::f64::consts::FRAC_1_SQRT_2);
        assert!((v["concurrence"].as_f64().unwrap() - 1.0).abs() < 1e-15);
        assert!((v["entropy_A"].as_f64().unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(v["momenta"][1]["components"][2], -1.0);
    }

    fn arb_state() -> impl Strategy<Value = Amplitudes> {
        prop::array::uniform8(-1.0f64..1.0)
            .prop_filter("nonzero", |v| v.iter().map(|x| x * x).sum::<f64>() > 1e-3)
            .prop_map(|v| {
                let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                let z = |i: usize| Complex64::new(v[2 * i] / n, v[2 * i + 1] / n);
                Amplitudes::new(z(0), z(1), z(2), z(3))
            })
    }

    proptest! {
        #[test]
        fn local_transport_preserves_entanglement(
            c in arb_state(),
            eta in 0.1f64..3.0,
            omega in -3.0f64..3.0,
            angle in -3.0f64..3.0,
            photon_species in any::<bool>(),
        ) {
            let (species, p) = if photon_species {
                (Species::Photon, FourVector::new(0.0, 0.0, eta.exp(), eta.exp()))
            } else {
                (Species::SpinHalf, spin_p(eta))
            };
            let s = BipartiteState::new(c, [p, p.spatial_reflection()], species).unwrap();
            let lam = &boost_axis(Axis::X, rap(omega)) * &rotation_about([0.3, 1.0, -0.2], angle).unwrap();
            for conv in [PhotonConvention::GaugeFixed, PhotonConvention::HelicityPhase] {
                let t = transport_detailed(&s, &lam, conv).unwrap().state;
                prop_assert!((t.norm_sqr() - 1.0).abs() < 1e-12);
                prop_assert!((concurrence(&t).unwrap() - concurrence(&s).unwrap()).abs() < 1e-12);
                let before = entropy(&reduced_density(&s, Subsystem::A).unwrap()).unwrap();
                let after = entropy(&reduced_density(&t, Subsystem::B).unwrap()).unwrap();
                prop_assert!((before - after).abs() < 1e-10);
            }
        }
    }
}
