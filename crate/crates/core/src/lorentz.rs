//! Minkowski-space primitives.
//!
//! Components are ordered `(x, y, z, t)` and the metric is `diag(1, 1, 1, −1)`,
//! so printed matrices line up entry-by-entry with the usual `(1, 2, 3, 0)`
//! textbook layout. Entries are stored in double-double precision; every
//! constructor renormalizes its parameters so that `ΛᵀηΛ = η` holds to that
//! precision, even for rapidities near the cap.

use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::error::{Error, Result};

pub const INDEX_ORDER: &str = "xyzt";

/// Largest admissible rapidity magnitude.
pub const RAPIDITY_CAP: f64 = 50.0;

/// Tolerance on `|n| − 1` for inputs documented as unit vectors.
pub const UNIT_TOLERANCE: f64 = 1e-10;

pub(crate) const METRIC: [f64; 4] = [1.0, 1.0, 1.0, -1.0];

/// Numerical thresholds shared by the verification routines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Identities that hold exactly in exact arithmetic.
    pub exact: f64,
    /// Identities checked through composed products.
    pub composed: f64,
    /// Unitarity of emitted spin-½ matrices.
    pub unitary: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            exact: 1e-12,
            composed: 1e-10,
            unitary: 1e-14,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Rapidity(f64);

impl Rapidity {
    pub const ZERO: Rapidity = Rapidity(0.0);

    pub fn new(value: f64) -> Result<Rapidity> {
        if value.is_finite() && value.abs() <= RAPIDITY_CAP {
            Ok(Rapidity(value))
        } else {
            Err(Error::RapidityOutOfRange(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Rapidity {
    type Error = Error;
    fn try_from(value: f64) -> Result<Self> {
        Rapidity::new(value)
    }
}

impl From<Rapidity> for f64 {
    fn from(r: Rapidity) -> f64 {
        r.0
    }
}

/// Coordinate axis selector for rotations and boosts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn unit(self) -> [f64; 3] {
        match self {
            Axis::X => [1.0, 0.0, 0.0],
            Axis::Y => [0.0, 1.0, 0.0],
            Axis::Z => [0.0, 0.0, 1.0],
        }
    }

    fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// A real four-vector `(x, y, z, t)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FourVectorRepr", into = "FourVectorRepr")]
pub struct FourVector {
    c: [Dd; 4],
}

impl FourVector {
    pub fn new(x: f64, y: f64, z: f64, t: f64) -> FourVector {
        FourVector {
            c: [x.into(), y.into(), z.into(), t.into()],
        }
    }

    pub fn from_spatial(spatial: [f64; 3], t: f64) -> FourVector {
        FourVector::new(spatial[0], spatial[1], spatial[2], t)
    }

    pub(crate) fn from_dd(c: [Dd; 4]) -> FourVector {
        FourVector { c }
    }

    pub(crate) fn dd(&self) -> &[Dd; 4] {
        &self.c
    }

    pub fn x(&self) -> f64 {
        self.c[0].to_f64()
    }

    pub fn y(&self) -> f64 {
        self.c[1].to_f64()
    }

    pub fn z(&self) -> f64 {
        self.c[2].to_f64()
    }

    pub fn t(&self) -> f64 {
        self.c[3].to_f64()
    }

    pub fn components(&self) -> [f64; 4] {
        self.c.map(Dd::to_f64)
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.x(), self.y(), self.z()]
    }

    pub(crate) fn spatial_dd(&self) -> [Dd; 3] {
        [self.c[0], self.c[1], self.c[2]]
    }

    pub(crate) fn norm2_dd(&self) -> Dd {
        contract_dd(&self.c, &self.c)
    }

    /// `x² + y² + z² − t²`.
    pub fn norm2(&self) -> f64 {
        self.norm2_dd().to_f64()
    }

    pub(crate) fn spatial_norm_dd(&self) -> Dd {
        (self.c[0].sqr() + self.c[1].sqr() + self.c[2].sqr()).sqrt()
    }

    pub fn spatial_norm(&self) -> f64 {
        self.spatial_norm_dd().to_f64()
    }

    /// Unit vector along the spatial part.
    pub fn direction(&self) -> Result<[f64; 3]> {
        let r = self.spatial_norm_dd();
        if r.hi() == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok([
            (self.c[0] / r).to_f64(),
            (self.c[1] / r).to_f64(),
            (self.c[2] / r).to_f64(),
        ])
    }

    /// `(−x, −y, −z, t)`.
    pub fn spatial_reflection(&self) -> FourVector {
        FourVector::from_dd([-self.c[0], -self.c[1], -self.c[2], self.c[3]])
    }

    pub fn scaled(&self, factor: f64) -> FourVector {
        FourVector::from_dd(self.c.map(|v| v * factor))
    }

    pub fn max_abs_diff(&self, other: &FourVector) -> f64 {
        (0..4)
            .map(|i| (self.c[i] - other.c[i]).to_f64().abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Serialize, Deserialize)]
struct FourVectorRepr {
    index_order: String,
    components: [f64; 4],
}

impl From<FourVector> for FourVectorRepr {
    fn from(v: FourVector) -> Self {
        FourVectorRepr {
            index_order: INDEX_ORDER.to_string(),
            components: v.components(),
        }
    }
}

impl TryFrom<FourVectorRepr> for FourVector {
    type Error = String;
    fn try_from(r: FourVectorRepr) -> std::result::Result<Self, String> {
        check_index_order(&r.index_order)?;
        let [x, y, z, t] = r.components;
        Ok(FourVector::new(x, y, z, t))
    }
}

fn check_index_order(order: &str) -> std::result::Result<(), String> {
    if order == INDEX_ORDER {
        Ok(())
    } else {
        Err(format!("unsupported index_order {order:?}, expected {INDEX_ORDER:?}"))
    }
}

fn contract_dd(a: &[Dd; 4], b: &[Dd; 4]) -> Dd {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3]
}

/// Minkowski inner product `a·b = aₓbₓ + a_y b_y + a_z b_z − a_t b_t`.
pub fn metric_contract(a: &FourVector, b: &FourVector) -> f64 {
    contract_dd(&a.c, &b.c).to_f64()
}

/// A real 4×4 matrix acting on `(x, y, z, t)` column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LorentzMatrixRepr", into = "LorentzMatrixRepr")]
pub struct LorentzMatrix {
    m: [[Dd; 4]; 4],
}

impl Default for LorentzMatrix {
    fn default() -> Self {
        LorentzMatrix::identity()
    }
}

impl LorentzMatrix {
    pub fn identity() -> LorentzMatrix {
        let mut m = [[Dd::ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Dd::ONE;
        }
        LorentzMatrix { m }
    }

    /// Builds a matrix from row-major entries without any validation.
    pub fn from_rows(rows: [[f64; 4]; 4]) -> LorentzMatrix {
        LorentzMatrix {
            m: rows.map(|r| r.map(Dd::from_f64)),
        }
    }

    pub(crate) fn from_dd(m: [[Dd; 4]; 4]) -> LorentzMatrix {
        LorentzMatrix { m }
    }

    pub(crate) fn dd(&self, row: usize, col: usize) -> Dd {
        self.m[row][col]
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.m[row][col].to_f64()
    }

    pub fn rows(&self) -> [[f64; 4]; 4] {
        self.m.map(|r| r.map(Dd::to_f64))
    }

    pub fn spatial_block(&self) -> [[f64; 3]; 3] {
        let mut b = [[0.0; 3]; 3];
        for (i, row) in b.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.entry(i, j);
            }
        }
        b
    }

    pub fn time_column(&self) -> FourVector {
        FourVector::from_dd([self.m[0][3], self.m[1][3], self.m[2][3], self.m[3][3]])
    }

    /// `η Λᵀ η`, which is the inverse whenever `Λ` is a Lorentz transformation.
    pub fn inverse(&self) -> LorentzMatrix {
        let mut inv = [[Dd::ZERO; 4]; 4];
        for (i, row) in inv.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.m[j][i] * (METRIC[i] * METRIC[j]);
            }
        }
        LorentzMatrix { m: inv }
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|v| v.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &LorentzMatrix) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).to_f64().abs());
            }
        }
        worst
    }

    /// Entrywise difference scaled by `max(1, |entry|)` of the reference.
    pub fn max_rel_diff(&self, reference: &LorentzMatrix) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let scale = reference.entry(i, j).abs().max(1.0);
                worst = worst.max((self.m[i][j] - reference.m[i][j]).to_f64().abs() / scale);
            }
        }
        worst
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.m;
        let top = |i: usize, j: usize| m[0][i] * m[1][j] - m[0][j] * m[1][i];
        let bot = |i: usize, j: usize| m[2][i] * m[3][j] - m[2][j] * m[3][i];
        (top(0, 1) * bot(2, 3) - top(0, 2) * bot(1, 3)
            + top(0, 3) * bot(1, 2)
            + top(1, 2) * bot(0, 3)
            - top(1, 3) * bot(0, 2)
            + top(2, 3) * bot(0, 1))
        .to_f64()
    }

    /// Metric residual divided by `max(1, max|Λᵢⱼ|²)`.
    pub fn relative_residual(&self) -> f64 {
        verify_lorentz(self) / self.max_abs_entry().powi(2).max(1.0)
    }

    /// Checks `ΛᵀηΛ = η` (relative to the entry scale), `det Λ = +1` and `Λᵗₜ ≥ 1`.
    pub fn check_proper(&self, tol: f64) -> Result<()> {
        let residual = self.relative_residual();
        let det = self.determinant();
        let time_time = self.entry(3, 3);
        if residual <= tol && det > 0.0 && time_time >= 1.0 - tol {
            Ok(())
        } else {
            Err(Error::NotProperLorentz {
                residual,
                det,
                time_time,
            })
        }
    }
}

impl Mul for &LorentzMatrix {
    type Output = LorentzMatrix;
    fn mul(self, rhs: &LorentzMatrix) -> LorentzMatrix {
        let mut out = [[Dd::ZERO; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..4).map(|k| self.m[i][k] * rhs.m[k][j]).sum();
            }
        }
        LorentzMatrix { m: out }
    }
}

impl Mul for LorentzMatrix {
    type Output = LorentzMatrix;
    fn mul(self, rhs: LorentzMatrix) -> LorentzMatrix {
        &self * &rhs
    }
}

impl Mul<&FourVector> for &LorentzMatrix {
    type Output = FourVector;
    fn mul(self, v: &FourVector) -> FourVector {
        let mut out = [Dd::ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|k| self.m[i][k] * v.c[k]).sum();
        }
        FourVector { c: out }
    }
}

#[derive(Serialize, Deserialize)]
struct LorentzMatrixRepr {
    index_order: String,
    rows: [[f64; 4]; 4],
}

impl From<LorentzMatrix> for LorentzMatrixRepr {
    fn from(m: LorentzMatrix) -> Self {
        LorentzMatrixRepr {
            index_order: INDEX_ORDER.to_string(),
            rows: m.rows(),
        }
    }
}

impl TryFrom<LorentzMatrixRepr> for LorentzMatrix {
    type Error = String;
    fn try_from(r: LorentzMatrixRepr) -> std::result::Result<Self, String> {
        check_index_order(&r.index_order)?;
        Ok(LorentzMatrix::from_rows(r.rows))
    }
}

/// Homogeneous transformation plus translation slot. Only `b = 0` is accepted:
/// translations contribute a global phase `e^{−ib·P}` to states and never
/// touch amplitudes or little-group elements.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Poincare {
    lorentz: LorentzMatrix,
    translation: FourVector,
}

impl Poincare {
    pub fn homogeneous(lorentz: LorentzMatrix) -> Poincare {
        Poincare {
            lorentz,
            translation: FourVector::default(),
        }
    }

    pub fn new(lorentz: LorentzMatrix, translation: FourVector) -> Result<Poincare> {
        if translation.components().iter().any(|&b| b != 0.0) {
            return Err(Error::UnsupportedTranslation);
        }
        Ok(Poincare::homogeneous(lorentz))
    }

    pub fn lorentz(&self) -> &LorentzMatrix {
        &self.lorentz
    }

    pub fn translation(&self) -> &FourVector {
        &self.translation
    }

    /// `x' = Λx + b`.
    pub fn apply(&self, x: &FourVector) -> FourVector {
        let v = &self.lorentz * x;
        FourVector::from_dd(std::array::from_fn(|i| v.c[i] + self.translation.c[i]))
    }
}

/// `(cosh η, sinh η)` in double-double, so `c² − s² = 1` holds to ~1e-30.
pub(crate) fn hyperbolic_pair(eta: f64) -> (Dd, Dd) {
    if eta == 0.0 {
        return (Dd::ONE, Dd::ZERO);
    }
    let e = Dd::exp(eta);
    let inv = Dd::ONE / e;
    ((e + inv) * 0.5, (e - inv) * 0.5)
}

/// Normalizes `(cos θ, sin θ)` so that `c² + s² = 1` in double-double.
pub(crate) fn circular_pair(angle: f64) -> (Dd, Dd) {
    if angle == 0.0 {
        return (Dd::ONE, Dd::ZERO);
    }
    let c = Dd::from(angle.cos());
    let s = Dd::from(angle.sin());
    let r = (c * c + s * s).sqrt();
    (c / r, s / r)
}

pub(crate) fn unit_dd(direction: [f64; 3]) -> Result<[Dd; 3]> {
    let d = direction.map(Dd::from);
    let norm = (d[0].sqr() + d[1].sqr() + d[2].sqr()).sqrt();
    if norm.hi() == 0.0 {
        return Err(Error::ZeroVector);
    }
    if !norm.is_finite() {
        return Err(Error::NonUnitDirection {
            norm: norm.to_f64(),
        });
    }
    Ok(d.map(|v| v / norm))
}

fn checked_unit_dd(direction: [f64; 3]) -> Result<[Dd; 3]> {
    let norm = direction.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    if !((norm - 1.0).abs() <= UNIT_TOLERANCE) {
        return Err(Error::NonUnitDirection { norm });
    }
    unit_dd(direction)
}

/// Pure boost with `Lⁱⱼ = δᵢⱼ + (c − 1)nᵢnⱼ`, `Lⁱₜ = Lᵗᵢ = s nᵢ`, `Lᵗₜ = c`.
pub(crate) fn boost_dd(n: [Dd; 3], c: Dd, s: Dd) -> LorentzMatrix {
    let mut m = [[Dd::ZERO; 4]; 4];
    let cm1 = c - 1.0;
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = cm1 * n[i] * n[j];
        }
        m[i][i] += Dd::ONE;
        m[i][3] = s * n[i];
        m[3][i] = s * n[i];
    }
    m[3][3] = c;
    LorentzMatrix { m }
}

/// Pure boost along a unit `direction` with the given rapidity.
pub fn boost_along(direction: [f64; 3], rapidity: Rapidity) -> Result<LorentzMatrix> {
    let n = checked_unit_dd(direction)?;
    let (c, s) = hyperbolic_pair(rapidity.value());
    Ok(boost_dd(n, c, s))
}

/// Pure boost along a coordinate axis.
pub fn boost_axis(axis: Axis, rapidity: Rapidity) -> LorentzMatrix {
    let mut n = [Dd::ZERO; 3];
    n[axis.index()] = Dd::ONE;
    let (c, s) = hyperbolic_pair(rapidity.value());
    boost_dd(n, c, s)
}

/// Rodrigues form `c I + s [n]ₓ + (1 − c) n nᵀ` in the spatial block.
pub(crate) fn rotation_dd(n: [Dd; 3], c: Dd, s: Dd) -> LorentzMatrix {
    let mut m = LorentzMatrix::identity().m;
    let omc = 1.0 - c;
    let cross = [
        [Dd::ZERO, -n[2], n[1]],
        [n[2], Dd::ZERO, -n[0]],
        [-n[1], n[0], Dd::ZERO],
    ];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = omc * n[i] * n[j] + s * cross[i][j];
        }
        m[i][i] += c;
    }
    LorentzMatrix { m }
}

/// Right-handed rotation by `angle` about a coordinate axis.
pub fn rotation_about_axis(axis: Axis, angle: f64) -> LorentzMatrix {
    let (c, s) = circular_pair(angle);
    let mut m = LorentzMatrix::identity().m;
    let (a, b) = match axis {
        Axis::X => (1, 2),
        Axis::Y => (2, 0),
        Axis::Z => (0, 1),
    };
    m[a][a] = c;
    m[b][b] = c;
    m[a][b] = -s;
    m[b][a] = s;
    LorentzMatrix { m }
}

/// Right-handed rotation by `angle` about an arbitrary nonzero axis (normalized internally).
pub fn rotation_about(axis: [f64; 3], angle: f64) -> Result<LorentzMatrix> {
    let n = unit_dd(axis)?;
    let (c, s) = circular_pair(angle);
    Ok(rotation_dd(n, c, s))
}

/// `R_z(φ) R_y(θ)` taking `ẑ` to `v/|v|`. Azimuth is 0 on the z axis.
pub(crate) fn rotation_to_dd(v: [Dd; 3]) -> Result<LorentzMatrix> {
    let rho = (v[0].sqr() + v[1].sqr()).sqrt();
    let r = (rho.sqr() + v[2].sqr()).sqrt();
    if r.hi() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let (ct, st) = (v[2] / r, rho / r);
    let (cp, sp) = if rho.hi() == 0.0 {
        (Dd::ONE, Dd::ZERO)
    } else {
        (v[0] / rho, v[1] / rho)
    };
    let mut m = LorentzMatrix::identity().m;
    m[0][0] = cp * ct;
    m[0][1] = -sp;
    m[0][2] = cp * st;
    m[1][0] = sp * ct;
    m[1][1] = cp;
    m[1][2] = sp * st;
    m[2][0] = -st;
    m[2][1] = Dd::ZERO;
    m[2][2] = ct;
    Ok(LorentzMatrix { m })
}

/// Rotation `R_z(φ) R_y(θ)` taking the z axis to the unit vector `p_hat`.
pub fn rotation_to(p_hat: [f64; 3]) -> Result<LorentzMatrix> {
    let n = checked_unit_dd(p_hat)?;
    rotation_to_dd(n)
}

/// Matrix product `a·b` (apply `b` first).
pub fn compose(a: &LorentzMatrix, b: &LorentzMatrix) -> LorentzMatrix {
    a * b
}

/// Max-abs entry of `ΛᵀηΛ − η`.
pub fn verify_lorentz(lambda: &LorentzMatrix) -> f64 {
    let m = &lambda.m;
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let mut acc: Dd = (0..4).map(|k| m[k][i] * m[k][j] * METRIC[k]).sum();
            if i == j {
                acc -= Dd::from(METRIC[i]);
            }
            worst = worst.max(acc.to_f64().abs());
        }
    }
    worst
}

pub fn apply(lambda: &LorentzMatrix, v: &FourVector) -> FourVector {
    lambda * v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn rap(v: f64) -> Rapidity {
        Rapidity::new(v).unwrap()
    }

    #[test]
    fn metric_contract_examples() {
        let t = FourVector::new(0.0, 0.0, 0.0, 1.0);
        assert_eq!(metric_contract(&t, &t), -1.0);
        let k = FourVector::new(0.0, 0.0, 1.0, 1.0);
        assert_eq!(metric_contract(&k, &k), 0.0);
        let p = FourVector::new(0.0, 0.0, 1f64.sinh(), 1f64.cosh());
        assert!((metric_contract(&p, &p) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn boost_along_z_matches_closed_form() {
        let eta = 0.7;
        let b = boost_along([0.0, 0.0, 1.0], rap(eta)).unwrap();
        let expected = [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, eta.cosh(), eta.sinh()],
            [0.0, 0.0, eta.sinh(), eta.cosh()],
        ];
        assert!(b.max_abs_diff(&LorentzMatrix::from_rows(expected)) < 1e-15);
    }

    #[test]
    fn boost_along_x_matches_closed_form() {
        let w = 1.3;
        let b = boost_along([1.0, 0.0, 0.0], rap(w)).unwrap();
        let expected = [
            [w.cosh(), 0.0, 0.0, w.sinh()],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [w.sinh(), 0.0, 0.0, w.cosh()],
        ];
        assert!(b.max_abs_diff(&LorentzMatrix::from_rows(expected)) < 1e-15);
        assert_eq!(b, boost_axis(Axis::X, rap(w)));
    }

    #[test]
    fn zero_rapidity_is_identity() {
        let b = boost_along([0.6, 0.0, 0.8], Rapidity::ZERO).unwrap();
        assert_eq!(b, LorentzMatrix::identity());
    }

    #[test]
    fn boost_rejects_bad_input() {
        assert!(matches!(
            boost_along([1.0, 1.0, 0.0], rap(1.0)),
            Err(Error::NonUnitDirection { .. })
        ));
        assert_eq!(boost_along([0.0; 3], rap(1.0)), Err(Error::ZeroVector));
        assert!(Rapidity::new(50.5).is_err());
        assert!(Rapidity::new(f64::NAN).is_err());
        assert!(Rapidity::new(-50.0).is_ok());
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(rotation_about_axis(Axis::Y, 0.0), LorentzMatrix::identity());
        let th = 0.4;
        let z = FourVector::new(0.0, 0.0, 1.0, 0.0);
        let v = apply(&rotation_about_axis(Axis::Y, th), &z);
        assert!(v.max_abs_diff(&FourVector::new(th.sin(), 0.0, th.cos(), 0.0)) < 1e-16);
        let x = FourVector::new(1.0, 0.0, 0.0, 0.0);
        let v = apply(&rotation_about_axis(Axis::Z, FRAC_PI_2), &x);
        assert!(v.max_abs_diff(&FourVector::new(0.0, 1.0, 0.0, 0.0)) < 1e-16);
    }

    #[test]
    fn rotation_y_matches_layout() {
        let th = 0.9f64;
        let expected = [
            [th.cos(), 0.0, th.sin(), 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [-th.sin(), 0.0, th.cos(), 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ];
        let r = rotation_about_axis(Axis::Y, th);
        assert!(r.max_abs_diff(&LorentzMatrix::from_rows(expected)) < 1e-16);
        let general = rotation_about([0.0, 2.0, 0.0], th).unwrap();
        assert!(general.max_abs_diff(&r) < 1e-16);
    }

    #[test]
    fn rotation_to_examples() {
        assert_eq!(rotation_to([0.0, 0.0, 1.0]).unwrap(), LorentzMatrix::identity());
        let r = rotation_to([1.0, 0.0, 0.0]).unwrap();
        assert!(r.max_abs_diff(&rotation_about_axis(Axis::Y, FRAC_PI_2)) < 1e-16);
        let r = rotation_to([0.0, 0.0, -1.0]).unwrap();
        assert!(r.max_abs_diff(&rotation_about_axis(Axis::Y, PI)) < 1e-15);
        let v = apply(&r, &FourVector::new(0.0, 0.0, 1.0, 0.0));
        assert!(v.max_abs_diff(&FourVector::new(0.0, 0.0, -1.0, 0.0)) < 1e-16);
        assert_eq!(rotation_to([0.0; 3]), Err(Error::ZeroVector));
    }

    #[test]
    fn compose_examples() {
        let lam = boost_along([0.6, 0.8, 0.0], rap(0.3)).unwrap();
        assert_eq!(compose(&lam, &LorentzMatrix::identity()), lam);
        let sum = compose(&boost_axis(Axis::Z, rap(0.4)), &boost_axis(Axis::Z, rap(1.1)));
        assert!(sum.max_rel_diff(&boost_axis(Axis::Z, rap(1.5))) < 1e-15);

        let (w, e) = (0.8, 1.7);
        let prod = compose(&boost_axis(Axis::X, rap(w)), &boost_axis(Axis::Z, rap(e)));
        let expected = [
            [w.cosh(), 0.0, w.sinh() * e.sinh(), w.sinh() * e.cosh()],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, e.cosh(), e.sinh()],
            [w.sinh(), 0.0, w.cosh() * e.sinh(), w.cosh() * e.cosh()],
        ];
        assert!(prod.max_rel_diff(&LorentzMatrix::from_rows(expected)) < 1e-15);
    }

    #[test]
    fn verify_lorentz_examples() {
        assert_eq!(verify_lorentz(&LorentzMatrix::identity()), 0.0);
        assert!(verify_lorentz(&boost_axis(Axis::X, rap(3.0))) < 1e-12);
        let mut rows = boost_axis(Axis::X, rap(0.5)).rows();
        rows[1][2] += 1e-3;
        assert!(verify_lorentz(&LorentzMatrix::from_rows(rows)) >= 1e-4);
    }

    #[test]
    fn apply_examples() {
        let eta = 1.2;
        let rest = FourVector::new(0.0, 0.0, 0.0, 2.0);
        let p = apply(&boost_axis(Axis::Z, rap(eta)), &rest);
        assert!(p.max_abs_diff(&FourVector::new(0.0, 0.0, 2.0 * eta.sinh(), 2.0 * eta.cosh())) < 1e-15);

        let w = 0.6;
        let q = apply(&boost_axis(Axis::X, rap(w)), &p.scaled(0.5));
        let expected = FourVector::new(w.sinh() * eta.cosh(), 0.0, eta.sinh(), w.cosh() * eta.cosh());
        assert!(q.max_abs_diff(&expected) < 1e-15);
        assert_eq!(apply(&LorentzMatrix::identity(), &q), q);
    }

    #[test]
    fn inverse_and_determinant() {
        let lam = compose(
            &boost_along([0.0, 0.6, 0.8], rap(2.0)).unwrap(),
            &rotation_about([1.0, 1.0, 1.0], 0.7).unwrap(),
        );
        assert!(compose(&lam, &lam.inverse()).max_abs_diff(&LorentzMatrix::identity()) < 1e-25);
        assert!((lam.determinant() - 1.0).abs() < 1e-14);
        assert!(lam.check_proper(1e-12).is_ok());
        let parity = LorentzMatrix::from_rows([
            [-1.0, 0.0, 0.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]);
        assert!(parity.check_proper(1e-12).is_err());
    }

    #[test]
    fn json_carries_index_order() {
        let lam = boost_axis(Axis::X, rap(0.5));
        let text = serde_json::to_string(&lam).unwrap();
        assert!(text.contains("\"index_order\":\"xyzt\""));
        let back: LorentzMatrix = serde_json::from_str(&text).unwrap();
        assert!(back.max_abs_diff(&lam) < 1e-16);
        let v = FourVector::new(1.0, 2.0, 3.0, 4.0);
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"{"index_order":"xyzt","components":[1.0,2.0,3.0,4.0]}"#);
        let bad = r#"{"index_order":"txyz","components":[1.0,2.0,3.0,4.0]}"#;
        assert!(serde_json::from_str::<FourVector>(bad).is_err());
    }

    #[test]
    fn poincare_rejects_translations() {
        let lam = boost_axis(Axis::X, rap(0.5));
        assert!(Poincare::new(lam, FourVector::new(0.0, 0.0, 1.0, 0.0)).is_err());
        let pc = Poincare::new(lam, FourVector::default()).unwrap();
        let v = FourVector::new(1.0, 0.0, 0.0, 1.0);
        assert_eq!(pc.apply(&v), apply(&lam, &v));
    }

    fn arb_generator() -> impl Strategy<Value = LorentzMatrix> {
        arb_generator_up_to(10.0)
    }

    fn arb_generator_up_to(max_rapidity: f64) -> impl Strategy<Value = LorentzMatrix> {
        let dir = prop::array::uniform3(-1.0f64..1.0).prop_filter("nonzero", |d| {
            d.iter().map(|v| v * v).sum::<f64>() > 1e-4
        });
        prop_oneof![
            (dir.clone(), -max_rapidity..max_rapidity).prop_map(|(d, eta)| {
                let n = d.iter().map(|v| v * v).sum::<f64>().sqrt();
                boost_along(d.map(|v| v / n), rap(eta)).unwrap()
            }),
            (dir, -PI..PI).prop_map(|(d, a)| rotation_about(d, a).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn generators_are_lorentz(g in arb_generator()) {
            prop_assert!(verify_lorentz(&g) < 1e-12);
            prop_assert!(g.check_proper(1e-12).is_ok());
        }

        #[test]
        fn products_preserve_norm(
            // five factors at |η| ≤ 5 already reach entries of size e²⁵
            gens in prop::collection::vec(arb_generator_up_to(5.0), 1..=5),
            v in prop::array::uniform4(-10.0f64..10.0),
        ) {
            let lam = gens.iter().fold(LorentzMatrix::identity(), |acc, g| compose(&acc, g));
            let v = FourVector::new(v[0], v[1], v[2], v[3]);
            let before = metric_contract(&v, &v);
            let after = metric_contract(&apply(&lam, &v), &apply(&lam, &v));
            let scale = v.components().iter().map(|c| c * c).sum::<f64>().max(1.0);
            prop_assert!((after - before).abs() < 1e-10 * scale);
        }

        #[test]
        fn rotation_block_is_orthogonal(axis in 0usize..3, angle in -10.0f64..10.0) {
            let axis = [Axis::X, Axis::Y, Axis::Z][axis];
            let r = rotation_about_axis(axis, angle);
            let b = r.spatial_block();
            for i in 0..3 {
                for j in 0..3 {
                    let dot: f64 = (0..3).map(|k| b[k][i] * b[k][j]).sum();
                    let target = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((dot - target).abs() < 1e-14);
                }
                prop_assert_eq!(r.entry(i, 3), 0.0);
                prop_assert_eq!(r.entry(3, i), 0.0);
            }
            prop_assert_eq!(r.entry(3, 3), 1.0);
        }

        #[test]
        fn collinear_boosts_add(
            d in prop::array::uniform3(-1.0f64..1.0).prop_filter("nonzero", |d| d.iter().map(|v| v * v).sum::<f64>() > 1e-4),
            e1 in -5.0f64..5.0,
            e2 in -5.0f64..5.0,
        ) {
            let n = d.iter().map(|v| v * v).sum::<f64>().sqrt();
            let dir = d.map(|v| v / n);
            let lhs = compose(&boost_along(dir, rap(e1)).unwrap(), &boost_along(dir, rap(e2)).unwrap());
            let rhs = boost_along(dir, rap(e1 + e2)).unwrap();
            prop_assert!(lhs.max_rel_diff(&rhs) < 1e-12);
        }
    }
}
