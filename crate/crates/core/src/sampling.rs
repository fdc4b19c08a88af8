//! Seeded random inputs and the fixed parameter grids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lorentz::{self, Axis, LorentzMatrix, Rapidity};
use crate::massive::MassiveMomentum;
use crate::photon::MasslessMomentum;

pub const DEFAULT_SEED: u64 = 1729;

/// Most generators multiplied into one random transformation.
pub const MAX_FACTORS: usize = 4;
/// Largest rapidity of a single random boost.
pub const MAX_RAPIDITY: f64 = 5.0;

/// Rapidities used for the closed-form Wigner-angle grid.
pub const WIGNER_GRID: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 5.0];

/// Boost angles for the photon tilt check.
pub const TILT_OMEGAS: [f64; 4] = [0.25, 0.5, 1.0, 2.0];

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform on the sphere, by rejection from the cube.
    pub fn unit_vector(&mut self) -> [f64; 3] {
        loop {
            let v: [f64; 3] = std::array::from_fn(|_| self.rng.random_range(-1.0..1.0));
            let n2: f64 = v.iter().map(|x| x * x).sum();
            if n2 > 1e-4 && n2 <= 1.0 {
                let n = n2.sqrt();
                return v.map(|x| x / n);
            }
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    /// A boost with `|η| ≤ max_rapidity` or a rotation, with equal odds.
    pub fn generator(&mut self, max_rapidity: f64) -> LorentzMatrix {
        let n = self.unit_vector();
        if self.rng.random_bool(0.5) {
            let eta = self.uniform(-max_rapidity, max_rapidity);
            lorentz::boost_along(n, Rapidity::new(eta).expect("within cap")).expect("unit axis")
        } else {
            let angle = self.uniform(-std::f64::consts::PI, std::f64::consts::PI);
            lorentz::rotation_about(n, angle).expect("unit axis")
        }
    }

    /// Product of 1 to [`MAX_FACTORS`] generators with rapidities up to [`MAX_RAPIDITY`].
    pub fn lorentz(&mut self) -> LorentzMatrix {
        let count = self.rng.random_range(1..=MAX_FACTORS);
        (0..count).fold(LorentzMatrix::identity(), |acc, _| &acc * &self.generator(MAX_RAPIDITY))
    }

    /// Unit-mass momentum with rapidity in `[0, 3)` along a random direction.
    pub fn massive_momentum(&mut self) -> MassiveMomentum {
        let n = self.unit_vector();
        let eta = self.uniform(0.0, 3.0);
        MassiveMomentum::from_rapidity(n, eta, 1.0).expect("valid rapidity")
    }

    /// Null momentum with energy in `[0.1, 10)` along a random direction.
    pub fn null_momentum(&mut self) -> MasslessMomentum {
        let n = self.unit_vector();
        let e = self.uniform(0.1, 10.0);
        MasslessMomentum::along(n, e).expect("positive energy")
    }
}

/// A named transformation in the entanglement grid.
#[derive(Clone, Debug)]
pub struct GridEntry {
    pub label: String,
    pub lambda: LorentzMatrix,
}

/// Boosts with rapidity 0.25, 1 and 3 along x, y and z, followed by each of
/// them composed with a fixed rotation.
pub fn entanglement_grid() -> Vec<GridEntry> {
    let axes = [(Axis::X, "x"), (Axis::Y, "y"), (Axis::Z, "z")];
    let rotation = lorentz::rotation_about([1.0, 1.0, 1.0], 0.7).expect("nonzero axis");
    let mut boosts = Vec::new();
    for (axis, name) in axes {
        for eta in [0.25, 1.0, 3.0] {
            let b = lorentz::boost_axis(axis, Rapidity::new(eta).expect("within cap"));
            boosts.push((format!("B_{name}({eta})"), b));
        }
    }
    let mut grid: Vec<GridEntry> = boosts
        .iter()
        .map(|(label, b)| GridEntry {
            label: label.clone(),
            lambda: *b,
        })
        .collect();
    grid.extend(boosts.iter().map(|(label, b)| GridEntry {
        label: format!("{label}·R(111,0.7)"),
        lambda: b * &rotation,
    }));
    grid
}
