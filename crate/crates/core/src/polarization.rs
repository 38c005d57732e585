//! Minkowski four-vectors and the polarization tetrad.
//!
//! For each propagation direction `khat` the quantized potential carries four
//! real polarization vectors: a timelike scalar vector, two transverse
//! vectors, and a longitudinal vector along `khat`. They satisfy
//! orthonormality `eps_r . eps_s = -xi_r delta_rs` and completeness
//! `sum_r xi_r eps_r^mu eps_r^nu = -g^{mu nu}` with the (+,-,-,-) metric.

use thiserror::Error;

/// Unit-vector tolerance for direction inputs; consistent with constructing
/// the tetrad in double precision.
pub const UNIT_TOLERANCE: f64 = 1e-12;

/// Diagonal of the metric tensor, signature (+,-,-,-).
pub const METRIC_DIAGONAL: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Metric signs `xi_r`: -1 for the scalar polarization, +1 otherwise.
pub const XI: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

#[derive(Debug, Error, PartialEq)]
pub enum PolarizationError {
    #[error(
        "propagation direction must be a unit 3-vector (|k|={norm}, tolerance {UNIT_TOLERANCE})"
    )]
    InvalidDirection { norm: f64 },
    #[error("four-vector components must be finite")]
    NonFinite,
}

/// A real four-vector; index 0 is the time component.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Result<Self, PolarizationError> {
        let v = FourVector([t, x, y, z]);
        if v.0.iter().all(|c| c.is_finite()) {
            Ok(v)
        } else {
            Err(PolarizationError::NonFinite)
        }
    }

    /// Spatial four-vector `(0, v)`.
    pub fn spatial(v: [f64; 3]) -> Self {
        FourVector([0.0, v[0], v[1], v[2]])
    }

    pub fn time_component(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial_part(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    /// Index lowered with the metric: `v_mu = g_{mu mu} v^mu`.
    pub fn lowered(&self) -> [f64; 4] {
        [self.0[0], -self.0[1], -self.0[2], -self.0[3]]
    }
}

/// Minkowski inner product `u^0 v^0 - u.v` with signature (+,-,-,-).
pub fn minkowski_dot(u: &FourVector, v: &FourVector) -> f64 {
    u.0[0] * v.0[0] - u.0[1] * v.0[1] - u.0[2] * v.0[2] - u.0[3] * v.0[3]
}

/// The four polarization vectors for one propagation direction.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarizationBasis {
    pub eps: [FourVector; 4],
    pub xi: [f64; 4],
    pub khat: [f64; 3],
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

/// Build the tetrad for a unit direction `khat`.
///
/// The scalar vector is `(1,0,0,0)`, the longitudinal vector is `(0, khat)`.
/// The two transverse vectors are fixed by a deterministic tangent rule: take
/// the coordinate axis least aligned with `khat` (lowest index on ties),
/// orthogonalize it against `khat` for `eps_1`, and complete the right-handed
/// triad with `eps_2 = khat x eps_1`.
pub fn build_basis(khat: [f64; 3]) -> Result<PolarizationBasis, PolarizationError> {
    if !khat.iter().all(|c| c.is_finite()) {
        return Err(PolarizationError::NonFinite);
    }
    let norm = norm3(khat);
    if (norm - 1.0).abs() > UNIT_TOLERANCE {
        return Err(PolarizationError::InvalidDirection { norm });
    }

    let mut axis = 0;
    for i in 1..3 {
        if khat[i].abs() < khat[axis].abs() {
            axis = i;
        }
    }
    let mut e1 = [0.0; 3];
    e1[axis] = 1.0;
    let proj = dot3(e1, khat);
    for i in 0..3 {
        e1[i] -= proj * khat[i];
    }
    let n1 = norm3(e1);
    for c in &mut e1 {
        *c /= n1;
    }
    let e2 = cross3(khat, e1);

    Ok(PolarizationBasis {
        eps: [
            FourVector([1.0, 0.0, 0.0, 0.0]),
            FourVector::spatial(e1),
            FourVector::spatial(e2),
            FourVector::spatial(khat),
        ],
        xi: XI,
        khat,
    })
}

/// Max deviation from `eps_r . eps_s = -xi_r delta_rs` over all pairs.
pub fn check_orthonormality(basis: &PolarizationBasis) -> f64 {
    let mut max_dev: f64 = 0.0;
    for r in 0..4 {
        for s in 0..4 {
            let expected = if r == s { -basis.xi[r] } else { 0.0 };
            let dev = (minkowski_dot(&basis.eps[r], &basis.eps[s]) - expected).abs();
            max_dev = max_dev.max(dev);
        }
    }
    max_dev
}

/// Max deviation from `sum_r xi_r eps_r^mu eps_r^nu = -g^{mu nu}`.
#[allow(clippy::needless_range_loop)]
pub fn check_completeness(basis: &PolarizationBasis) -> f64 {
    let mut max_dev: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            let mut sum = 0.0;
            for r in 0..4 {
                sum += basis.xi[r] * basis.eps[r].0[mu] * basis.eps[r].0[nu];
            }
            let expected = if mu == nu { -METRIC_DIAGONAL[mu] } else { 0.0 };
            max_dev = max_dev.max((sum - expected).abs());
        }
    }
    max_dev
}
