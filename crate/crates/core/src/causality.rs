//! Light-cone support of the massless commutator kernel.
//!
//! The covariant field commutator factors through the scalar integral
//! `I(eps, r, ct) = int_0^inf e^{-eps k} sin(k r) sin(k ct) dk`, regulated by
//! exponential damping so the distributional statement becomes a family of
//! finite values with testable limits. The damped integral has the
//! elementary closed form
//!
//! ```text
//! I = (1/2) [ eps / (eps^2 + (r - ct)^2)  -  eps / (eps^2 + (r + ct)^2) ]
//! ```
//!
//! so off the cone `I -> 0` linearly in `eps` (vanishing commutator: the
//! microcausality statement, and on the timelike side the sharper
//! cone-support statement), while on the cone `I ~ 1/(2 eps)`. The full
//! kernel is `(-8 pi i / (c r)) I`; the real factor `I` is what this module
//! evaluates and cross-checks by quadrature.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CausalityError {
    #[error("separation requires r > 0 and epsilon > 0 (finite), got r = {r}, ct = {ct}, epsilon = {epsilon}")]
    InvalidSeparation { r: f64, ct: f64, epsilon: f64 },
    #[error("resolution too low: {0}")]
    Resolution(String),
    #[error("epsilon list must be strictly decreasing and positive")]
    BadEpsilonList,
}

/// One spacetime separation with its UV regulator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparationPoint {
    pub r: f64,
    pub ct: f64,
    pub epsilon: f64,
}

impl SeparationPoint {
    pub fn new(r: f64, ct: f64, epsilon: f64) -> Result<Self, CausalityError> {
        if r > 0.0 && epsilon > 0.0 && r.is_finite() && ct.is_finite() && epsilon.is_finite() {
            Ok(SeparationPoint { r, ct, epsilon })
        } else {
            Err(CausalityError::InvalidSeparation { r, ct, epsilon })
        }
    }
}

/// Closed form of the damped kernel integral. Exactly zero at `ct = 0` and
/// exactly odd under `ct -> -ct`.
pub fn regulated_kernel(p: &SeparationPoint) -> f64 {
    let minus = p.r - p.ct;
    let plus = p.r + p.ct;
    0.5 * (p.epsilon / (p.epsilon * p.epsilon + minus * minus)
        - p.epsilon / (p.epsilon * p.epsilon + plus * plus))
}

/// Leading off-cone falloff: `I(eps) ~ C eps` with
/// `C = (1/2) |1/(r-ct)^2 - 1/(r+ct)^2|`.
pub fn analytic_falloff_coefficient(r: f64, ct: f64) -> f64 {
    let minus = r - ct;
    let plus = r + ct;
    0.5 * (1.0 / (minus * minus) - 1.0 / (plus * plus)).abs()
}

/// Default integration cutoff: damping has decayed to `e^-20` there.
pub fn default_k_max(epsilon: f64) -> f64 {
    20.0 / epsilon
}

/// Minimum admissible node count: ten per period of the faster sine.
fn nyquist_points(p: &SeparationPoint, k_max: f64) -> usize {
    let freq = p.r.max(p.ct.abs()).max(1e-12);
    (10.0 * k_max * freq / (2.0 * std::f64::consts::PI)).ceil() as usize
}

/// Default node count: four times the guard, scaled up to resolve the sum
/// frequency `r + |ct|` (the product of sines beats at `r - ct` and
/// `r + ct`; the guard itself only watches the faster single sine).
pub fn default_n_points(p: &SeparationPoint, k_max: f64) -> usize {
    let sum_freq = (p.r + p.ct.abs()).max(1e-12);
    let sum_points = (10.0 * k_max * sum_freq / (2.0 * std::f64::consts::PI)).ceil() as usize;
    4 * sum_points.max(nyquist_points(p, k_max)).max(10)
}

// 10-node Gauss-Legendre abscissae/weights on [-1, 1].
#[allow(clippy::excessive_precision)]
const GL_NODES: [f64; 5] = [
    0.148_874_338_981_631_21,
    0.433_395_394_129_247_19,
    0.679_409_568_299_024_41,
    0.865_063_366_688_984_51,
    0.973_906_528_517_171_72,
];
#[allow(clippy::excessive_precision)]
const GL_WEIGHTS: [f64; 5] = [
    0.295_524_224_714_752_87,
    0.269_266_719_309_996_35,
    0.219_086_362_515_982_04,
    0.149_451_349_150_580_59,
    0.066_671_344_308_688_14,
];

/// Composite quadrature of the damped integrand over `[0, k_max]`:
/// panels of 10-node Gauss-Legendre, one panel per 10 requested points.
///
/// Guards: the cutoff must dominate the damping scale (`k_max >= 10/eps`)
/// and `n_points` must resolve the fastest oscillation (ten points per
/// period of `max(r, |ct|)`).
pub fn kernel_quadrature(
    p: &SeparationPoint,
    k_max: f64,
    n_points: usize,
) -> Result<f64, CausalityError> {
    if k_max * p.epsilon < 10.0 {
        return Err(CausalityError::Resolution(format!(
            "cutoff k_max = {k_max} leaves e^(-eps k_max) = {:.2e}; need k_max >= {}",
            (-p.epsilon * k_max).exp(),
            10.0 / p.epsilon
        )));
    }
    let needed = nyquist_points(p, k_max);
    if n_points < needed {
        return Err(CausalityError::Resolution(format!(
            "n_points = {n_points} under-resolves the oscillation; need at least {needed} \
             (ten per period of max(r, |ct|) = {})",
            p.r.max(p.ct.abs())
        )));
    }
    let panels = n_points.div_ceil(10).max(1);
    let h = k_max / panels as f64;
    let f = |k: f64| (-p.epsilon * k).exp() * (k * p.r).sin() * (k * p.ct).sin();
    let mut total = 0.0;
    for panel in 0..panels {
        let mid = (panel as f64 + 0.5) * h;
        let half = 0.5 * h;
        let mut acc = 0.0;
        for i in 0..5 {
            acc += GL_WEIGHTS[i] * (f(mid + half * GL_NODES[i]) + f(mid - half * GL_NODES[i]));
        }
        total += acc * half;
    }
    Ok(total)
}

/// Convenience wrapper with the default cutoff and node count.
pub fn kernel_quadrature_default(p: &SeparationPoint) -> Result<f64, CausalityError> {
    let k_max = default_k_max(p.epsilon);
    kernel_quadrature(p, k_max, default_n_points(p, k_max))
}

/// Causal classification of a separation relative to the scan's cone band.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Spacelike,
    Lightcone,
    Timelike,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Spacelike => "spacelike",
            Classification::Lightcone => "lightcone",
            Classification::Timelike => "timelike",
        }
    }
}

/// One row of a light-cone scan.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub r: f64,
    pub ct: f64,
    pub epsilon: f64,
    pub closed_form: f64,
    pub quadrature: f64,
    pub classification: Classification,
}

/// Evaluate the kernel over a separation grid for each regulator value.
///
/// Points within `10 * max(epsilon)` of the cone are classified as
/// `lightcone`; elsewhere `spacelike`/`timelike` by the sign of `r - ct`.
/// Off-cone values fall linearly with `epsilon` (their ratio to the
/// smallest regulator estimates the falloff coefficient), on-cone values
/// satisfy `2 eps I -> 1`.
pub fn lightcone_scan(
    r_grid: &[f64],
    ct_grid: &[f64],
    epsilons: &[f64],
) -> Result<Vec<ScanRow>, CausalityError> {
    if epsilons.is_empty()
        || epsilons.iter().any(|&e| e <= 0.0 || !e.is_finite())
        || epsilons.windows(2).any(|w| w[1] >= w[0])
    {
        return Err(CausalityError::BadEpsilonList);
    }
    let band = 10.0 * epsilons[0];
    let mut rows = Vec::with_capacity(r_grid.len() * ct_grid.len() * epsilons.len());
    for &r in r_grid {
        for &ct in ct_grid {
            let classification = if (r - ct).abs() <= band {
                Classification::Lightcone
            } else if r > ct {
                Classification::Spacelike
            } else {
                Classification::Timelike
            };
            for &epsilon in epsilons {
                let p = SeparationPoint::new(r, ct, epsilon)?;
                rows.push(ScanRow {
                    r,
                    ct,
                    epsilon,
                    closed_form: regulated_kernel(&p),
                    quadrature: kernel_quadrature_default(&p)?,
                    classification,
                });
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_reference_values() {
        // frozen from the antiderivative of the damped product of sines
        let i = regulated_kernel(&SeparationPoint::new(2.0, 1.0, 0.01).unwrap());
        assert!((i - 4.443_950_667_210_365e-3).abs() < 1e-15);
        let i = regulated_kernel(&SeparationPoint::new(1.0, 1.0, 0.01).unwrap());
        assert!((i - 49.998_750_031_249_22).abs() < 1e-10);
    }

    #[test]
    fn equal_time_value_is_exactly_zero() {
        for r in [0.1, 1.0, 7.5] {
            for eps in [1.0, 0.01] {
                let p = SeparationPoint::new(r, 0.0, eps).unwrap();
                assert_eq!(regulated_kernel(&p), 0.0);
            }
        }
    }

    #[test]
    fn kernel_is_odd_in_ct() {
        for (r, ct, eps) in [(2.0, 0.7, 0.05), (1.0, 3.0, 0.2)] {
            let plus = regulated_kernel(&SeparationPoint::new(r, ct, eps).unwrap());
            let minus = regulated_kernel(&SeparationPoint::new(r, -ct, eps).unwrap());
            assert_eq!(plus, -minus);
        }
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let p = SeparationPoint::new(2.0, 1.0, 0.01).unwrap();
        let q = kernel_quadrature_default(&p).unwrap();
        assert!((q - 4.443_950_667_210_365e-3).abs() <= 1e-8);

        let p = SeparationPoint::new(3.0, 0.5, 0.05).unwrap();
        let q = kernel_quadrature_default(&p).unwrap();
        let cf = regulated_kernel(&p);
        assert!((q - cf).abs() <= 1e-6 * cf.abs().max(1e-3));
    }

    #[test]
    fn quadrature_guards() {
        let p = SeparationPoint::new(2.0, 1.0, 0.01).unwrap();
        // premature cutoff
        assert!(matches!(
            kernel_quadrature(&p, 100.0, 100_000),
            Err(CausalityError::Resolution(_))
        ));
        // undersampled oscillation
        assert!(matches!(
            kernel_quadrature(&p, 2000.0, 100),
            Err(CausalityError::Resolution(_))
        ));
    }

    #[test]
    fn invalid_separations_rejected() {
        assert!(SeparationPoint::new(0.0, 1.0, 0.1).is_err());
        assert!(SeparationPoint::new(1.0, 1.0, 0.0).is_err());
        assert!(SeparationPoint::new(1.0, f64::NAN, 0.1).is_err());
        // ct = 0 is allowed
        assert!(SeparationPoint::new(1.0, 0.0, 0.1).is_ok());
    }

    #[test]
    fn off_cone_falloff_coefficient() {
        // spacelike: I(eps)/eps -> (1/2)[1/(r-ct)^2 - 1/(r+ct)^2]
        let c_analytic = analytic_falloff_coefficient(2.0, 1.0);
        assert!((c_analytic - (0.5 * (1.0 - 1.0 / 9.0))).abs() < 1e-15);
        let eps = 1e-4;
        let i = regulated_kernel(&SeparationPoint::new(2.0, 1.0, eps).unwrap());
        assert!((i / eps - c_analytic).abs() <= 1e-4 * c_analytic);
        // timelike separations also die with the regulator: cone support only
        let c_time = analytic_falloff_coefficient(0.5, 2.0);
        let i = regulated_kernel(&SeparationPoint::new(0.5, 2.0, eps).unwrap());
        assert!(i.abs() <= (c_time + 1.0) * eps);
    }

    #[test]
    fn on_cone_divergence_rate() {
        for eps in [0.01, 0.005, 0.001] {
            let i = regulated_kernel(&SeparationPoint::new(1.0, 1.0, eps).unwrap());
            assert!((2.0 * eps * i - 1.0).abs() <= 0.05, "eps = {eps}");
        }
    }

    #[test]
    fn scan_classifies_and_agrees() {
        let rows = lightcone_scan(&[0.5, 1.0, 2.0], &[0.5, 1.0], &[0.05, 0.02, 0.01]).unwrap();
        assert_eq!(rows.len(), 18);
        for row in &rows {
            assert!(
                (row.closed_form - row.quadrature).abs() <= 1e-6 * row.closed_form.abs().max(1e-3)
            );
            let expected = if (row.r - row.ct).abs() <= 0.5 {
                Classification::Lightcone
            } else if row.r > row.ct {
                Classification::Spacelike
            } else {
                Classification::Timelike
            };
            assert_eq!(row.classification, expected);
        }
    }

    #[test]
    fn scan_rejects_bad_epsilons() {
        assert!(matches!(
            lightcone_scan(&[1.0], &[0.5], &[0.01, 0.05]),
            Err(CausalityError::BadEpsilonList)
        ));
        assert!(matches!(
            lightcone_scan(&[1.0], &[0.5], &[]),
            Err(CausalityError::BadEpsilonList)
        ));
    }
}
