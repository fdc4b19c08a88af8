//! Invariant suites run by `wignerkit verify`.
//!
//! Every check reduces to one number (usually a worst-case residual over
//! fixed grids and seeded random samples) compared against a named tolerance.
//! The report is a deterministic function of the seed and tolerances.

use std::fmt::Write as _;

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::bell::{self, Amplitudes, BipartiteState, PhotonConvention, Species, Subsystem};
use crate::dirac::{self, Spin};
use crate::error::Result;
use crate::lorentz::{self, Axis, FourVector, LorentzMatrix, Rapidity, Tolerances};
use crate::massive::{self, MassiveMomentum};
use crate::photon::{self, Helicity, MasslessMomentum};
use crate::sampling::{self, Sampler};

/// Random samples per randomized check.
pub const SAMPLES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ToleranceName {
    Exact,
    Composed,
    Unitary,
}

impl ToleranceName {
    pub fn as_str(self) -> &'static str {
        match self {
            ToleranceName::Exact => "exact",
            ToleranceName::Composed => "composed",
            ToleranceName::Unitary => "unitary",
        }
    }

    fn value(self, tol: &Tolerances) -> f64 {
        match self {
            ToleranceName::Exact => tol.exact,
            ToleranceName::Composed => tol.composed,
            ToleranceName::Unitary => tol.unitary,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Limit {
    /// Passes when the value is at most the named tolerance.
    AtMost(ToleranceName),
    /// Passes when the value strictly exceeds the threshold.
    Exceeds(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub limit: Limit,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Suite {
    pub name: &'static str,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub seed: u64,
    pub tolerances: Tolerances,
    pub suites: Vec<Suite>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.checks.iter().all(|c| c.passed))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let t = &self.tolerances;
        let _ = writeln!(out, "wignerkit verify");
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(
            out,
            "tolerances: exact={:e} composed={:e} unitary={:e}",
            t.exact, t.composed, t.unitary
        );
        let (mut total, mut ok) = (0, 0);
        for suite in &self.suites {
            let _ = writeln!(out, "[{}]", suite.name);
            for c in &suite.checks {
                total += 1;
                ok += c.passed as usize;
                let verdict = if c.passed { "PASS" } else { "FAIL" };
                let bound = match c.limit {
                    Limit::AtMost(name) => format!("<= {:e} ({})", c.threshold, name.as_str()),
                    Limit::Exceeds(_) => format!(">  {:e}", c.threshold),
                };
                let _ = writeln!(out, "  {verdict} {:<28} {:.3e} {bound}", c.name, c.value);
            }
        }
        let status = if ok == total { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "summary: {ok}/{total} checks passed");
        let _ = writeln!(out, "result: {status}");
        out
    }
}

struct SuiteBuilder<'a> {
    tol: &'a Tolerances,
    suite: Suite,
}

/// Max of the values, with any error or NaN counted as `+∞`.
fn worst<I: IntoIterator<Item = Result<f64>>>(values: I) -> f64 {
    values.into_iter().fold(0.0, |acc, v| match v {
        Ok(x) if !x.is_nan() => acc.max(x),
        _ => f64::INFINITY,
    })
}

/// Min of the values, with any error or NaN counted as `−∞`.
fn least<I: IntoIterator<Item = Result<f64>>>(values: I) -> f64 {
    values.into_iter().fold(f64::INFINITY, |acc, v| match v {
        Ok(x) if !x.is_nan() => acc.min(x),
        _ => f64::NEG_INFINITY,
    })
}

impl<'a> SuiteBuilder<'a> {
    fn new(name: &'static str, tol: &'a Tolerances) -> Self {
        SuiteBuilder {
            tol,
            suite: Suite {
                name,
                checks: Vec::new(),
            },
        }
    }

    fn at_most(&mut self, name: &'static str, tol: ToleranceName, value: f64) {
        let threshold = tol.value(self.tol);
        self.suite.checks.push(Check {
            name,
            value,
            limit: Limit::AtMost(tol),
            threshold,
            passed: value <= threshold,
        });
    }

    fn exceeds(&mut self, name: &'static str, threshold: f64, value: f64) {
        self.suite.checks.push(Check {
            name,
            value,
            limit: Limit::Exceeds(threshold),
            threshold,
            passed: value > threshold,
        });
    }

    fn finish(self) -> Suite {
        self.suite
    }
}

fn rap(v: f64) -> Rapidity {
    Rapidity::new(v).expect("grid rapidities are within the cap")
}

fn grid_pairs() -> impl Iterator<Item = (f64, f64)> {
    sampling::WIGNER_GRID
        .iter()
        .flat_map(|&e| sampling::WIGNER_GRID.iter().map(move |&w| (e, w)))
}

fn max_abs2(m: &Matrix2<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn lorentz_suite(tol: &Tolerances, rng: &mut Sampler) -> Suite {
    let mut s = SuiteBuilder::new("lorentz", tol);
    let generators: Vec<_> = (0..SAMPLES).map(|_| rng.generator(10.0)).collect();
    s.at_most(
        "generators_are_lorentz",
        ToleranceName::Exact,
        worst(generators.iter().map(|g| Ok(lorentz::verify_lorentz(g)))),
    );
    let norm = worst((0..SAMPLES).map(|_| {
        let count = rng.uniform(1.0, 6.0) as usize;
        let lam = (0..count).fold(LorentzMatrix::identity(), |acc, _| &acc * &rng.generator(5.0));
        let v = FourVector::new(
            rng.uniform(-10.0, 10.0),
            rng.uniform(-10.0, 10.0),
            rng.uniform(-10.0, 10.0),
            rng.uniform(-10.0, 10.0),
        );
        let w = lorentz::apply(&lam, &v);
        let scale = v.components().iter().map(|c| c * c).sum::<f64>().max(1.0);
        Ok((lorentz::metric_contract(&w, &w) - lorentz::metric_contract(&v, &v)).abs() / scale)
    }));
    s.at_most("norm_preservation", ToleranceName::Composed, norm);
    let collinear = worst((0..SAMPLES).map(|_| {
        let n = rng.unit_vector();
        let (a, b) = (rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0));
        let lhs = &lorentz::boost_along(n, rap(a))? * &lorentz::boost_along(n, rap(b))?;
        Ok(lhs.max_rel_diff(&lorentz::boost_along(n, rap(a + b))?))
    }));
    s.at_most("collinear_composition", ToleranceName::Exact, collinear);
    s.finish()
}

fn massive_suite(tol: &Tolerances, rng: &mut Sampler) -> Suite {
    let mut s = SuiteBuilder::new("massive", tol);
    let k = FourVector::new(0.0, 0.0, 0.0, 1.0);
    let samples: Vec<_> = (0..SAMPLES).map(|_| (rng.lorentz(), rng.massive_momentum())).collect();
    let elements: Vec<_> = samples.iter().map(|(l, p)| massive::wigner_rotation(l, p)).collect();
    s.at_most(
        "little_group",
        ToleranceName::Composed,
        worst(elements.iter().map(|w| Ok((&w.clone()?.matrix * &k).max_abs_diff(&k)))),
    );
    s.at_most(
        "rotation_block",
        ToleranceName::Composed,
        worst(elements.iter().map(|w| {
            let w = w.clone()?;
            Ok(w.orthogonality_residual().max(w.time_residual()))
        })),
    );
    s.at_most(
        "axis_angle_roundtrip",
        ToleranceName::Composed,
        worst(elements.iter().map(|w| {
            let w = w.clone()?;
            Ok(massive::rotation_from_axis_angle(w.axis, w.angle)?.max_abs_diff(&w.matrix))
        })),
    );
    s.at_most(
        "cocycle",
        ToleranceName::Composed,
        worst(samples.windows(2).map(|pair| {
            let ((l1, p), (l2, _)) = (&pair[0], &pair[1]);
            let lhs = massive::wigner_rotation(&(l2 * l1), p)?;
            let w1 = massive::wigner_rotation(l1, p)?;
            let w2 = massive::wigner_rotation(l2, &p.transformed(l1)?)?;
            Ok(lhs.matrix.max_abs_diff(&(&w2.matrix * &w1.matrix)))
        })),
    );
    s.at_most(
        "closed_form_angle",
        ToleranceName::Composed,
        worst(grid_pairs().map(|(eta, omega)| {
            let w = massive::wigner_rotation(
                &lorentz::boost_axis(Axis::X, rap(omega)),
                &MassiveMomentum::along_z(eta, 1.0)?,
            )?;
            let off_axis = w.axis[0].abs() + w.axis[2].abs() + (w.axis[1] - 1.0).abs();
            Ok((w.angle - massive::wigner_angle_xz(eta, omega)).abs() + off_axis)
        })),
    );
    s.exceeds(
        "deflection_exceeds_wigner",
        0.0,
        least(grid_pairs().map(|(eta, omega)| {
            Ok(massive::deflection_angle_xz(eta, omega) - massive::wigner_angle_xz(eta, omega))
        })),
    );
    s.at_most(
        "opposite_momentum_sign",
        ToleranceName::Composed,
        worst(grid_pairs().map(|(eta, omega)| {
            let lam = lorentz::boost_axis(Axis::X, rap(omega));
            let p = MassiveMomentum::along_z(eta, 1.0)?;
            let a = massive::wigner_rotation(&lam, &p)?;
            let b = massive::wigner_rotation(&lam, &p.reversed())?;
            let axes = (a.axis[1] - 1.0).abs() + (b.axis[1] - 1.0).abs();
            Ok((a.angle + b.angle).abs() + axes)
        })),
    );
    s.finish()
}

fn dirac_suite(tol: &Tolerances, rng: &mut Sampler) -> Suite {
    let mut s = SuiteBuilder::new("dirac", tol);
    let g = dirac::gamma_chiral();
    let mut clifford = 0.0f64;
    for mu in 0..4 {
        for nu in 0..4 {
            let anti = g.gamma[mu] * g.gamma[nu] + g.gamma[nu] * g.gamma[mu];
            let eta = if mu == nu { [1.0, 1.0, 1.0, -1.0][mu] } else { 0.0 };
            let defect = anti - dirac::SpinorMatrix::identity() * Complex64::from(2.0 * eta);
            clifford = clifford.max(defect.iter().map(|z| z.norm()).fold(0.0, f64::max));
        }
    }
    s.at_most("clifford_algebra", ToleranceName::Exact, clifford);

    let mut momenta: Vec<MassiveMomentum> = (0..SAMPLES).map(|_| rng.massive_momentum()).collect();
    for eta in sampling::WIGNER_GRID {
        momenta.push(MassiveMomentum::along_z(eta, 1.0).expect("grid"));
    }
    let spinors: Vec<_> = momenta
        .iter()
        .flat_map(|p| Spin::BOTH.map(|sigma| (dirac::u_spinor(p, sigma), dirac::v_spinor(p, sigma))))
        .collect();
    s.at_most(
        "dirac_equation",
        ToleranceName::Exact,
        worst(spinors.iter().map(|(u, v)| Ok(dirac::dirac_residual(u).max(dirac::dirac_residual(v))))),
    );
    s.at_most(
        "unit_norm",
        ToleranceName::Exact,
        worst(spinors.iter().map(|(u, _)| Ok((u.norm_sqr() - 1.0).abs()))),
    );

    let mut mode = 0.0f64;
    let mut recovered = 0.0f64;
    let mut unitary = 0.0f64;
    for (eta, omega) in grid_pairs() {
        let lam = lorentz::boost_axis(Axis::X, rap(omega));
        let p = MassiveMomentum::along_z(eta, 1.0).expect("grid");
        let expected = massive::wigner_angle_xz(eta, omega);
        for sigma in Spin::BOTH {
            match dirac::mode_identity(&lam, &p, sigma) {
                Ok(m) => {
                    mode = mode.max(m.residual);
                    recovered = recovered.max((m.recovered_angle(sigma) - expected).abs());
                    unitary = unitary.max(m.spin_half.unitarity_residual());
                }
                Err(_) => mode = f64::INFINITY,
            }
        }
    }
    s.at_most("mode_identity_grid", ToleranceName::Composed, mode);
    s.at_most("recovered_wigner_angle", ToleranceName::Composed, recovered);
    let random_mode = worst((0..SAMPLES).map(|_| {
        let (lam, p) = (rng.lorentz(), rng.massive_momentum());
        let m = dirac::mode_identity(&lam, &p, Spin::Up)?;
        unitary = unitary.max(m.spin_half.unitarity_residual());
        Ok(m.residual)
    }));
    s.at_most("mode_identity_random", ToleranceName::Composed, random_mode);
    s.at_most("spin_half_unitarity", ToleranceName::Unitary, unitary);

    let intertwining = worst(momenta.iter().take(SAMPLES).map(|p| {
        let l = massive::standard_boost(p);
        let r = lorentz::rotation_about(rng.unit_vector(), rng.uniform(-3.0, 3.0))?;
        let lam = &l * &r;
        let d = dirac::spinor_representation(&lam)?;
        let inv = d.try_inverse().unwrap_or_else(dirac::SpinorMatrix::zeros);
        let mut defect = 0.0f64;
        for mu in 0..4 {
            let lhs = inv * g.gamma[mu] * d;
            let rhs = (0..4).fold(dirac::SpinorMatrix::zeros(), |acc, nu| {
                acc + g.gamma[nu] * Complex64::from(lam.entry(mu, nu))
            });
            defect = defect.max((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max));
        }
        Ok(defect)
    }));
    s.at_most("intertwining", ToleranceName::Composed, intertwining);
    let boost = dirac::spinor_boost(&MassiveMomentum::along_z(1.0, 1.0).expect("valid"));
    s.exceeds("boost_non_unitarity", 0.1, dirac::unitarity_defect(&boost));
    s.finish()
}

fn photon_suite(tol: &Tolerances, rng: &mut Sampler) -> Suite {
    let mut s = SuiteBuilder::new("photon", tol);
    let samples: Vec<_> = (0..SAMPLES).map(|_| (rng.lorentz(), rng.null_momentum())).collect();
    let mut gauge = 0.0f64;
    let mut mixing = 0.0f64;
    for (lam, p) in &samples {
        for h in Helicity::BOTH {
            let r: Result<()> = (|| {
                gauge = gauge.max(photon::polarization(p, h).gauge_report().max());
                let out = photon::gauge_fixed_transform(lam, p, h)?;
                gauge = gauge.max(out.gauge_report().max());
                let other = if h == Helicity::Plus { Helicity::Minus } else { Helicity::Plus };
                mixing = mixing.max(photon::polarization(&out.momentum, other).inner(&out).norm());
                Ok(())
            })();
            if r.is_err() {
                gauge = f64::INFINITY;
            }
        }
    }
    s.at_most("gauge_safety", ToleranceName::Exact, gauge);
    s.at_most("helicity_preservation", ToleranceName::Exact, mixing);
    let k = MasslessMomentum::standard();
    s.exceeds(
        "naive_transport_leaves_gauge",
        tol.exact,
        least([0.5, 1.0, 2.0].iter().flat_map(|&omega| {
            let lam = lorentz::boost_axis(Axis::X, rap(omega));
            Helicity::BOTH.map(|h| Ok(photon::naive_transform(&lam, &k, h)?.gauge_report().time_component))
        })),
    );
    s.at_most(
        "d_fixes_momentum",
        ToleranceName::Exact,
        worst(samples.iter().map(|(lam, p)| {
            let d = photon::little_group_d(lam, p)?;
            Ok((&d * p.four_vector()).max_abs_diff(p.four_vector()) / p.energy())
        })),
    );
    s.at_most(
        "triad_tilt",
        ToleranceName::Exact,
        worst(sampling::TILT_OMEGAS.iter().map(|&omega| {
            let r = photon::triad_rotation(&lorentz::boost_axis(Axis::X, rap(omega)), &k)?;
            let (axis, angle) = photon::rotation_angle(&r)?;
            Ok((angle - photon::triad_tilt_xz(omega)).abs() + (axis[1] - 1.0).abs())
        })),
    );
    s.at_most(
        "triad_maps_direction",
        ToleranceName::Exact,
        worst(samples.iter().map(|(lam, p)| {
            let r = photon::triad_rotation(lam, p)?;
            let moved = (&r * &FourVector::from_spatial(p.direction(), 0.0)).spatial();
            let target = p.transformed(lam)?.direction();
            Ok((0..3).map(|i| (moved[i] - target[i]).abs()).fold(0.0, f64::max))
        })),
    );
    let iso: Vec<_> = samples.iter().map(|(lam, p)| photon::iso2_decompose(lam, p)).collect();
    let kv = FourVector::new(0.0, 0.0, 1.0, 1.0);
    s.at_most(
        "iso2_little_group",
        ToleranceName::Composed,
        worst(iso.iter().map(|e| Ok((&e.clone()?.matrix * &kv).max_abs_diff(&kv)))),
    );
    s.at_most(
        "iso2_reconstruction",
        ToleranceName::Composed,
        worst(iso.iter().map(|e| Ok(e.clone()?.reconstruction_residual()))),
    );
    s.at_most(
        "helicity_phase_fit",
        ToleranceName::Composed,
        worst(samples.iter().flat_map(|(lam, p)| {
            Helicity::BOTH.map(|h| photon::verify_helicity_phase(lam, p, h))
        })),
    );
    s.finish()
}

/// Transported amplitudes rebuilt from the spinor representation of `Λ`:
/// each particle's `√(p_t/(Λp)_t) D(Λ) u(p, σ)` is re-expanded in the
/// `u(Λp, σ')` basis. Agrees with [`bell::transport`] up to an overall sign.
pub fn spinor_expansion(state: &BipartiteState, lambda: &LorentzMatrix) -> Result<Amplitudes> {
    let d = dirac::spinor_representation(lambda)?;
    let local = |p: &FourVector| -> Result<Amplitudes> {
        let mass = (-p.norm2()).sqrt();
        let p = MassiveMomentum::new(*p, mass)?;
        let q = p.transformed(lambda)?;
        let ratio = (p.energy() / q.energy()).sqrt();
        let mut m = Amplitudes::zeros();
        for sigma in Spin::BOTH {
            let image = d * dirac::u_spinor(&p, sigma).components * Complex64::from(ratio);
            for prime in Spin::BOTH {
                m[(prime.index(), sigma.index())] = dirac::u_spinor(&q, prime).components.dotc(&image);
            }
        }
        Ok(m)
    };
    let [pa, pb] = state.momenta();
    Ok(local(pa)? * state.amplitudes() * local(pb)?.transpose())
}

fn bell_suite(tol: &Tolerances, rng: &mut Sampler) -> Suite {
    let mut s = SuiteBuilder::new("bell", tol);
    let eta = 1.0f64;
    let states = [
        bell::bell_state(Species::SpinHalf, FourVector::new(0.0, 0.0, eta.sinh(), eta.cosh())),
        bell::bell_state(Species::Photon, FourVector::new(0.0, 0.0, 1.0, 1.0)),
    ];
    let (mut conc, mut mixed, mut ent, mut conventions) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for state in &states {
        for entry in sampling::entanglement_grid() {
            let r: Result<()> = (|| {
                let state = state.clone()?;
                let fixed = bell::transport_detailed(&state, &entry.lambda, PhotonConvention::GaugeFixed)?;
                let phased = bell::transport_detailed(&state, &entry.lambda, PhotonConvention::HelicityPhase)?;
                let t = fixed.state;
                conc = conc.max((bell::concurrence(&t)? - 1.0).abs());
                conventions = conventions.max((bell::concurrence(&t)? - bell::concurrence(&phased.state)?).abs());
                for sub in [Subsystem::A, Subsystem::B] {
                    let rho = bell::reduced_density(&t, sub)?;
                    mixed = mixed.max(rho.distance_to_maximally_mixed());
                    ent = ent.max((bell::entropy(&rho)? - 1.0).abs());
                    let other = bell::reduced_density(&phased.state, sub)?;
                    conventions = conventions.max(max_abs2(&(rho.matrix() - other.matrix())));
                }
                Ok(())
            })();
            if r.is_err() {
                conc = f64::INFINITY;
            }
        }
    }
    s.at_most("concurrence_preserved", ToleranceName::Exact, conc);
    s.at_most("reduced_density_mixed", ToleranceName::Exact, mixed);
    s.at_most("entropy_one_bit", ToleranceName::Exact, ent);
    s.at_most("photon_conventions_agree", ToleranceName::Exact, conventions);
    s.at_most(
        "normalization_chain",
        ToleranceName::Exact,
        worst(states.iter().map(|state| {
            let mut t = state.clone()?;
            let mut worst = 0.0f64;
            for _ in 0..5 {
                t = bell::transport(&t, &rng.lorentz())?;
                worst = worst.max((t.norm_sqr() - 1.0).abs());
            }
            Ok(worst)
        })),
    );
    s.at_most(
        "spinor_expansion_oracle",
        ToleranceName::Composed,
        worst(grid_pairs().map(|(eta, omega)| {
            let state = bell::bell_state(Species::SpinHalf, FourVector::new(0.0, 0.0, eta.sinh(), eta.cosh()))?;
            let lam = lorentz::boost_axis(Axis::X, rap(omega));
            let t = bell::transport(&state, &lam)?;
            let e = spinor_expansion(&state, &lam)?;
            Ok(max_abs2(&(t.amplitudes() - e)).min(max_abs2(&(t.amplitudes() + e))))
        })),
    );
    s.finish()
}

/// Runs every suite with the given seed and tolerances.
pub fn run(seed: u64, tolerances: Tolerances) -> Report {
    let mut rng = Sampler::new(seed);
    let suites = vec![
        lorentz_suite(&tolerances, &mut rng),
        massive_suite(&tolerances, &mut rng),
        dirac_suite(&tolerances, &mut rng),
        photon_suite(&tolerances, &mut rng),
        bell_suite(&tolerances, &mut rng),
    ];
    Report {
        seed,
        tolerances,
        suites,
    }
}
