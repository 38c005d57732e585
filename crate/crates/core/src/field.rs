//! Mode-expanded field operators over a finite periodic box.
//!
//! Wavevectors are `k = 2 pi m / L` for integer vectors `m != 0`; the zero
//! mode is excluded because the expansion carries `1/sqrt(omega)`. The phase
//! convention is `exp(-i k x)` with `k x = omega t - k . x`.
//!
//! Frequencies enter symbolic expressions as exact dyadic rationals (the
//! exact value of the computed double), so mode-sum identities like the
//! vanishing vacuum energy hold exactly for the represented values.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::ordering::{normal_order_prescription, vev};
use crate::algebra::scheme::CommutatorScheme;
use crate::algebra::{build_hamiltonian_sym, AlgebraError, LadderSymbol, OperatorPoly};
use crate::fock::sparse::{vec_norm, CMatrix};
use crate::fock::{FockError, FockRep};
use crate::polarization::{build_basis, PolarizationBasis, METRIC_DIAGONAL, XI};
use crate::scalar::Scalar;

/// Tolerance for the c-number test of equal-time commutators on the
/// sub-truncation subspace.
pub const C_NUMBER_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, PartialEq)]
pub enum FieldError {
    #[error("box length must be positive and finite, got {0}")]
    InvalidBox(f64),
    #[error("mode set must contain at least one mode")]
    EmptyModeSet,
    #[error("the zero wavevector is excluded (omega = 0 makes the expansion singular)")]
    ZeroMode,
    #[error("duplicate mode {0:?}")]
    DuplicateMode([i32; 3]),
    #[error("physical constants must be positive, got hbar = {hbar}, c = {c}")]
    InvalidConstants { hbar: String, c: String },
    #[error("field point components must be finite")]
    NonFinitePoint,
    #[error("operation requires a symmetric mode set (m present iff -m present)")]
    SymmetryRequired,
    #[error("grid_n = {grid_n} aliases mode differences; need at least {required}")]
    Aliasing { grid_n: usize, required: usize },
    #[error("state polynomial annihilates the vacuum; no state to test")]
    NullState,
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `hbar` and `c` as exact positive rationals; natural units by default.
#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalConstants {
    hbar: BigRational,
    c: BigRational,
}

impl PhysicalConstants {
    pub fn new(hbar: BigRational, c: BigRational) -> Result<Self, FieldError> {
        if !hbar.is_positive() || !c.is_positive() {
            return Err(FieldError::InvalidConstants {
                hbar: hbar.to_string(),
                c: c.to_string(),
            });
        }
        Ok(PhysicalConstants { hbar, c })
    }

    pub fn natural() -> Self {
        PhysicalConstants {
            hbar: BigRational::from_integer(1.into()),
            c: BigRational::from_integer(1.into()),
        }
    }

    pub fn hbar(&self) -> &BigRational {
        &self.hbar
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn hbar_f64(&self) -> f64 {
        self.hbar.to_f64().expect("finite hbar")
    }

    pub fn c_f64(&self) -> f64 {
        self.c.to_f64().expect("finite c")
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants::natural()
    }
}

/// Periodic-box wavevector set.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeSet {
    box_length: f64,
    modes: Vec<[i32; 3]>,
}

impl ModeSet {
    pub fn new(box_length: f64, modes: Vec<[i32; 3]>) -> Result<Self, FieldError> {
        if !(box_length.is_finite() && box_length > 0.0) {
            return Err(FieldError::InvalidBox(box_length));
        }
        if modes.is_empty() {
            return Err(FieldError::EmptyModeSet);
        }
        let mut seen = std::collections::HashSet::new();
        for m in &modes {
            if *m == [0, 0, 0] {
                return Err(FieldError::ZeroMode);
            }
            if !seen.insert(*m) {
                return Err(FieldError::DuplicateMode(*m));
            }
        }
        Ok(ModeSet { box_length, modes })
    }

    /// Build a symmetric set from half of it: each `m` brings `-m` along.
    pub fn symmetric(box_length: f64, half: &[[i32; 3]]) -> Result<Self, FieldError> {
        let mut modes = Vec::with_capacity(half.len() * 2);
        for m in half {
            modes.push(*m);
            modes.push([-m[0], -m[1], -m[2]]);
        }
        ModeSet::new(box_length, modes)
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    /// Always false: construction requires at least one mode.
    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn modes(&self) -> &[[i32; 3]] {
        &self.modes
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    pub fn volume(&self) -> f64 {
        self.box_length.powi(3)
    }

    pub fn is_symmetric(&self) -> bool {
        self.modes
            .iter()
            .all(|m| self.modes.contains(&[-m[0], -m[1], -m[2]]))
    }

    pub fn k_vec(&self, i: usize) -> [f64; 3] {
        let f = 2.0 * std::f64::consts::PI / self.box_length;
        let m = self.modes[i];
        [f * m[0] as f64, f * m[1] as f64, f * m[2] as f64]
    }

    pub fn khat(&self, i: usize) -> [f64; 3] {
        let k = self.k_vec(i);
        let n = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        [k[0] / n, k[1] / n, k[2] / n]
    }

    pub fn omega(&self, i: usize, consts: &PhysicalConstants) -> f64 {
        let k = self.k_vec(i);
        consts.c_f64() * (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt()
    }

    /// Exact rational capture of the computed frequency.
    pub fn omega_exact(&self, i: usize, consts: &PhysicalConstants) -> BigRational {
        BigRational::from_float(self.omega(i, consts)).expect("finite omega")
    }

    /// Polarization tetrads for every mode.
    pub fn bases(&self) -> Vec<PolarizationBasis> {
        (0..self.len())
            .map(|i| build_basis(self.khat(i)).expect("unit direction"))
            .collect()
    }

    /// Largest absolute mode-vector component; sets the Nyquist guard.
    pub fn max_component(&self) -> usize {
        self.modes
            .iter()
            .flat_map(|m| m.iter().map(|c| c.unsigned_abs() as usize))
            .max()
            .unwrap_or(0)
    }
}

/// A spacetime sample point; `t` in natural units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldPoint {
    pub t: f64,
    pub x: [f64; 3],
}

impl FieldPoint {
    pub fn new(t: f64, x: [f64; 3]) -> Result<Self, FieldError> {
        if t.is_finite() && x.iter().all(|c| c.is_finite()) {
            Ok(FieldPoint { t, x })
        } else {
            Err(FieldError::NonFinitePoint)
        }
    }

    pub fn spatial(x: [f64; 3]) -> Self {
        FieldPoint { t: 0.0, x }
    }
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// The `a`-part coefficient of `A^mu` for one oscillator at one point:
/// `sqrt(hbar c^2 / (2 V omega)) eps^mu_r exp(-i(omega t - k.x))`.
/// The conjugate symbol's coefficient is its complex conjugate.
fn field_coefficient(
    mu: usize,
    point: &FieldPoint,
    ms: &ModeSet,
    bases: &[PolarizationBasis],
    mode: usize,
    pol: u8,
    consts: &PhysicalConstants,
) -> Complex64 {
    let omega = ms.omega(mode, consts);
    let c = consts.c_f64();
    let amp = (consts.hbar_f64() * c * c / (2.0 * ms.volume() * omega)).sqrt();
    let phase = -(omega * point.t - dot3(ms.k_vec(mode), point.x));
    let eps = bases[mode].eps[pol as usize].0[mu];
    amp * eps * Complex64::new(0.0, phase).exp()
}

/// Realize `A^mu(x)` on the representation.
pub fn field_operator(
    mu: usize,
    point: &FieldPoint,
    ms: &ModeSet,
    rep: &FockRep,
    consts: &PhysicalConstants,
) -> Result<CMatrix, FieldError> {
    assert!(mu <= 3, "Lorentz index must be 0..=3");
    let bases = ms.bases();
    let mut out = CMatrix::zeros(rep.dim());
    for mode in 0..ms.len() {
        for pol in 0u8..4 {
            let f = field_coefficient(mu, point, ms, &bases, mode, pol, consts);
            let a = rep.ladder_matrix(&LadderSymbol::a(pol, mode as u32))?;
            let ad = rep.ladder_matrix(&LadderSymbol::ad(pol, mode as u32))?;
            out = out.add(&a.scale(f)).add(&ad.scale(f.conj()));
        }
    }
    Ok(out)
}

/// Realize the momentum density `pi_mu(x) = -(1/c^2) d/dt A_mu(x)`,
/// differentiated analytically from the mode expansion.
pub fn momentum_density(
    mu: usize,
    point: &FieldPoint,
    ms: &ModeSet,
    rep: &FockRep,
    consts: &PhysicalConstants,
) -> Result<CMatrix, FieldError> {
    assert!(mu <= 3, "Lorentz index must be 0..=3");
    let bases = ms.bases();
    let c2 = consts.c_f64() * consts.c_f64();
    let mut out = CMatrix::zeros(rep.dim());
    for mode in 0..ms.len() {
        let omega = ms.omega(mode, consts);
        for pol in 0u8..4 {
            let f = field_coefficient(mu, point, ms, &bases, mode, pol, consts);
            // -(g_mumu/c^2) * (-i omega) f for the a-part; conjugate partner
            let g = Complex64::new(0.0, omega * METRIC_DIAGONAL[mu] / c2) * f;
            let a = rep.ladder_matrix(&LadderSymbol::a(pol, mode as u32))?;
            let ad = rep.ladder_matrix(&LadderSymbol::ad(pol, mode as u32))?;
            out = out.add(&a.scale(g)).add(&ad.scale(g.conj()));
        }
    }
    Ok(out)
}

/// Exact finite-volume stand-in for the Dirac delta:
/// `delta_V(dx) = (1/V) sum_k exp(i k . dx)`.
pub fn delta_v(ms: &ModeSet, dx: [f64; 3]) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..ms.len() {
        sum += Complex64::new(0.0, dot3(ms.k_vec(i), dx)).exp();
    }
    sum / ms.volume()
}

/// Analytic equal-time value of `[A^mu(x,t), pi_nu(x',t)]` for the finite
/// mode sum: `-(i hbar / 2V) sum_k sum_r c_r eps_r^mu eps_{r nu}
/// (e^{ik.dx} + e^{-ik.dx})`. Independent of the matrix machinery.
#[allow(clippy::needless_range_loop)]
pub fn predicted_commutator_constant(
    mu: usize,
    nu: usize,
    dx: [f64; 3],
    ms: &ModeSet,
    scheme: &CommutatorScheme,
    consts: &PhysicalConstants,
) -> Complex64 {
    let bases = ms.bases();
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..ms.len() {
        let phase = dot3(ms.k_vec(i), dx);
        let cos2 = 2.0 * phase.cos();
        for r in 0..4usize {
            let c_r = scheme.c(r as u8).to_f64().expect("finite constant");
            let eps = &bases[i].eps[r].0;
            sum += Complex64::new(c_r * eps[mu] * METRIC_DIAGONAL[nu] * eps[nu] * cos2, 0.0);
        }
    }
    Complex64::new(0.0, -consts.hbar_f64() / (2.0 * ms.volume())) * sum
}

/// Result of realizing an equal-time commutator.
#[derive(Clone, Debug)]
pub struct EqualTimeCommutator {
    pub matrix: CMatrix,
    /// Vacuum diagonal entry, the candidate c-number.
    pub c_number: Complex64,
    /// Whether the restriction to the sub-truncation subspace is within
    /// [`C_NUMBER_TOLERANCE`] of `c_number * I`.
    pub is_c_number: bool,
    pub max_deviation: f64,
}

/// `[A^mu(x,t), pi_nu(x',t)]` on the representation, with the c-number test
/// performed on the sub-truncation subspace.
#[allow(clippy::too_many_arguments)]
pub fn equal_time_commutator(
    mu: usize,
    nu: usize,
    x: [f64; 3],
    x_prime: [f64; 3],
    t: f64,
    ms: &ModeSet,
    rep: &FockRep,
    consts: &PhysicalConstants,
) -> Result<EqualTimeCommutator, FieldError> {
    if !ms.is_symmetric() {
        return Err(FieldError::SymmetryRequired);
    }
    let a = field_operator(mu, &FieldPoint::new(t, x)?, ms, rep, consts)?;
    let p = momentum_density(nu, &FieldPoint::new(t, x_prime)?, ms, rep, consts)?;
    let m = a.matmul(&p).sub(&p.matmul(&a));
    let sub = rep.sub_truncation_indices();
    let c_number = m.get(0, 0);
    let restricted = m.restrict(&sub);
    let expected = CMatrix::identity(sub.len()).scale(c_number);
    let max_deviation = restricted.max_abs_diff(&expected);
    Ok(EqualTimeCommutator {
        matrix: m,
        c_number,
        is_c_number: max_deviation <= C_NUMBER_TOLERANCE,
        max_deviation,
    })
}

/// The ladder-operator Hamiltonian over a mode set with exact frequencies.
pub fn hamiltonian_modes(
    ms: &ModeSet,
    consts: &PhysicalConstants,
) -> Result<OperatorPoly, FieldError> {
    let modes: Vec<(u32, BigRational)> = (0..ms.len())
        .map(|i| (i as u32, ms.omega_exact(i, consts)))
        .collect();
    Ok(build_hamiltonian_sym(&modes, consts.hbar())?)
}

/// Grid quadrature of the Hamiltonian density `pi_mu Adot^mu - L`.
///
/// The density is a quadratic form in ladder symbols whose coefficient
/// functions are products of mode functions; the spatial integral acts on
/// those c-number coefficients only, so it is evaluated pointwise on a
/// uniform periodic grid (trapezoid rule, spectrally exact for band-limited
/// integrands) and the operator blocks are assembled afterwards. `t` is
/// arbitrary; the result is time independent.
#[allow(clippy::needless_range_loop)]
pub fn hamiltonian_from_density(
    ms: &ModeSet,
    rep: &FockRep,
    consts: &PhysicalConstants,
    grid_n: usize,
    t: f64,
) -> Result<CMatrix, FieldError> {
    let required = 2 * ms.max_component() + 2;
    if grid_n < required {
        return Err(FieldError::Aliasing { grid_n, required });
    }
    let bases = ms.bases();
    let n_osc = 4 * ms.len();
    let osc = |mode: usize, pol: usize| mode * 4 + pol;

    // quadrature blocks: aa, a ad, ad a, ad ad coefficient matrices
    let zero = Complex64::new(0.0, 0.0);
    let mut block = [
        vec![zero; n_osc * n_osc],
        vec![zero; n_osc * n_osc],
        vec![zero; n_osc * n_osc],
        vec![zero; n_osc * n_osc],
    ];

    let c = consts.c_f64();
    let c2 = c * c;
    let weight = ms.volume() / (grid_n * grid_n * grid_n) as f64;
    let step = ms.box_length() / grid_n as f64;

    // derivative coefficients of the a-part of A^mu per oscillator:
    // du[o][0][mu] = time derivative, du[o][1..=3][mu] = spatial gradients
    let mut du = vec![[[zero; 4]; 4]; n_osc];

    for ix in 0..grid_n {
        for iy in 0..grid_n {
            for iz in 0..grid_n {
                let point = FieldPoint {
                    t,
                    x: [ix as f64 * step, iy as f64 * step, iz as f64 * step],
                };
                for mode in 0..ms.len() {
                    let omega = ms.omega(mode, consts);
                    let k = ms.k_vec(mode);
                    for pol in 0..4usize {
                        let o = osc(mode, pol);
                        for mu in 0..4usize {
                            let fmu =
                                field_coefficient(mu, &point, ms, &bases, mode, pol as u8, consts);
                            du[o][0][mu] = Complex64::new(0.0, -omega) * fmu;
                            for (i, ki) in k.iter().enumerate() {
                                du[o][1 + i][mu] = Complex64::new(0.0, *ki) * fmu;
                            }
                        }
                    }
                }
                // h(x) = sum_mu g_mumu [ -(1/2c^2)(Adot^mu)^2
                //                        - (1/2) sum_i (d_i A^mu)^2 ]
                for s in 0..n_osc {
                    for sp in 0..n_osc {
                        let mut aa = zero;
                        let mut aad = zero;
                        for mu in 0..4usize {
                            let g = METRIC_DIAGONAL[mu];
                            let mut paa = -du[s][0][mu] * du[sp][0][mu] / (2.0 * c2);
                            let mut pad = -du[s][0][mu] * du[sp][0][mu].conj() / (2.0 * c2);
                            for d in 1..4usize {
                                paa -= du[s][d][mu] * du[sp][d][mu] / 2.0;
                                pad -= du[s][d][mu] * du[sp][d][mu].conj() / 2.0;
                            }
                            aa += g * paa;
                            aad += g * pad;
                        }
                        // coefficient of ad_s a_sp pairs conj(u_s) with u_sp,
                        // the conjugate of the a_s ad_sp pairing; real weights
                        block[0][s * n_osc + sp] += weight * aa;
                        block[1][s * n_osc + sp] += weight * aad;
                        block[2][s * n_osc + sp] += weight * aad.conj();
                        block[3][s * n_osc + sp] += weight * aa.conj();
                    }
                }
            }
        }
    }

    // assemble the operator
    let mut mats_a = Vec::with_capacity(n_osc);
    let mut mats_ad = Vec::with_capacity(n_osc);
    for mode in 0..ms.len() {
        for pol in 0u8..4 {
            mats_a.push(rep.ladder_matrix(&LadderSymbol::a(pol, mode as u32))?);
            mats_ad.push(rep.ladder_matrix(&LadderSymbol::ad(pol, mode as u32))?);
        }
    }
    let mut out = CMatrix::zeros(rep.dim());
    for s in 0..n_osc {
        for sp in 0..n_osc {
            for (b, (left, right)) in [
                (&mats_a[s], &mats_a[sp]),
                (&mats_a[s], &mats_ad[sp]),
                (&mats_ad[s], &mats_a[sp]),
                (&mats_ad[s], &mats_ad[sp]),
            ]
            .into_iter()
            .enumerate()
            {
                let coeff = block[b][s * n_osc + sp];
                if coeff.norm() > 0.0 {
                    out = out.add(&left.matmul(right).scale(coeff));
                }
            }
        }
    }
    Ok(out)
}

/// The three symmetrized momentum components
/// `P^i = sum_k sum_r (hbar k^i / 2) xi_r (ad_r a_r + a_r ad_r)`,
/// with exact (dyadic) wavevector components. On symmetric mode sets the
/// zero-point parts cancel pairwise under `k -> -k`.
pub fn momentum_operator(
    ms: &ModeSet,
    consts: &PhysicalConstants,
) -> Result<[OperatorPoly; 3], FieldError> {
    let half = BigRational::new(1.into(), 2.into());
    let mut comps = [
        OperatorPoly::zero(),
        OperatorPoly::zero(),
        OperatorPoly::zero(),
    ];
    for mode in 0..ms.len() {
        let k = ms.k_vec(mode);
        for (i, comp) in comps.iter_mut().enumerate() {
            let k_exact = BigRational::from_float(k[i]).expect("finite wavevector");
            if k_exact.is_zero() {
                continue;
            }
            let base = consts.hbar() * &k_exact * &half;
            for pol in 0u8..4 {
                let xi = BigRational::from_integer((XI[pol as usize] as i64).into());
                let coeff = Scalar::real(&base * xi);
                let a = LadderSymbol::a(pol, mode as u32);
                let ad = LadderSymbol::ad(pol, mode as u32);
                comp.add_term(vec![ad, a], coeff.clone());
                comp.add_term(vec![a, ad], coeff);
            }
        }
    }
    Ok(comps)
}

/// Residual of the massless energy-momentum relation on one state:
/// `|| (c^2 sum_i P^i P^i - H^2) |state> ||` with `|state>` the normalized
/// result of applying the polynomial to the vacuum.
///
/// The sum is the squared 3-momentum magnitude (indices both up); the
/// literal signature-lowered form would flip its sign. Exact for states
/// built from a single mode's excitations; nonzero residuals elsewhere are
/// diagnostics, not failures.
pub fn check_energy_momentum_identity(
    state: &OperatorPoly,
    ms: &ModeSet,
    rep: &FockRep,
    consts: &PhysicalConstants,
) -> Result<f64, FieldError> {
    let mut psi = rep.apply(state, &rep.vacuum_vector())?;
    let norm = vec_norm(&psi);
    if norm == 0.0 {
        return Err(FieldError::NullState);
    }
    for z in &mut psi {
        *z /= norm;
    }
    let h = rep.realize(&hamiltonian_modes(ms, consts)?)?;
    let p_ops = momentum_operator(ms, consts)?;
    let c2 = consts.c_f64() * consts.c_f64();

    let h_psi = h.apply(&h.apply(&psi));
    let mut residual: Vec<Complex64> = h_psi.iter().map(|z| -z).collect();
    for p in &p_ops {
        let pm = rep.realize(p)?;
        let pp = pm.apply(&pm.apply(&psi));
        for (r, v) in residual.iter_mut().zip(pp.iter()) {
            *r += c2 * v;
        }
    }
    Ok(vec_norm(&residual))
}

/// Which vacuum energy to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VacuumEnergyVariant {
    /// Raw expectation of the symmetrized Hamiltonian.
    Raw,
    /// Expectation after the textbook normal-ordering prescription, which
    /// discards the zero point by fiat.
    NormalOrderedPrescription,
}

/// Exact vacuum expectation of the mode-sum Hamiltonian.
pub fn vacuum_energy(
    ms: &ModeSet,
    scheme: &CommutatorScheme,
    consts: &PhysicalConstants,
    variant: VacuumEnergyVariant,
) -> Result<BigRational, FieldError> {
    let h = hamiltonian_modes(ms, consts)?;
    let p = match variant {
        VacuumEnergyVariant::Raw => h,
        VacuumEnergyVariant::NormalOrderedPrescription => normal_order_prescription(&h),
    };
    let value = vev(&p, scheme);
    debug_assert!(value.im().is_zero());
    Ok(value.re().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::DEFAULT_DIMENSION_CAP;

    fn natural() -> PhysicalConstants {
        PhysicalConstants::natural()
    }

    fn single_mode_set() -> ModeSet {
        ModeSet::new(2.0 * std::f64::consts::PI, vec![[0, 0, 1]]).unwrap()
    }

    fn symmetric_set() -> ModeSet {
        ModeSet::symmetric(2.0 * std::f64::consts::PI, &[[0, 0, 1]]).unwrap()
    }

    fn rep_for(ms: &ModeSet, n_max: usize, scheme: &CommutatorScheme, cap: usize) -> FockRep {
        FockRep::for_modes(ms.len() as u32, n_max, scheme, cap).unwrap()
    }

    #[test]
    fn mode_set_validation() {
        assert!(matches!(
            ModeSet::new(0.0, vec![[0, 0, 1]]),
            Err(FieldError::InvalidBox(_))
        ));
        assert!(matches!(
            ModeSet::new(1.0, vec![[0, 0, 0]]),
            Err(FieldError::ZeroMode)
        ));
        assert!(matches!(
            ModeSet::new(1.0, vec![[0, 0, 1], [0, 0, 1]]),
            Err(FieldError::DuplicateMode(_))
        ));
        assert!(matches!(
            ModeSet::new(1.0, vec![]),
            Err(FieldError::EmptyModeSet)
        ));
        assert!(symmetric_set().is_symmetric());
        assert!(!single_mode_set().is_symmetric());
    }

    #[test]
    fn unit_box_frequency() {
        let ms = single_mode_set();
        // L = 2 pi, m = (0,0,1): |k| = 1, omega = 1
        assert!((ms.omega(0, &natural()) - 1.0).abs() < 1e-15);
        assert_eq!(
            ms.omega_exact(0, &natural()),
            BigRational::from_integer(1.into())
        );
    }

    #[test]
    fn field_operator_is_self_adjoint() {
        let ms = symmetric_set();
        let scheme = CommutatorScheme::modified_isotropic();
        let rep = rep_for(&ms, 1, &scheme, DEFAULT_DIMENSION_CAP);
        let point = FieldPoint::new(0.3, [0.2, -0.4, 1.1]).unwrap();
        for mu in 0..4 {
            let a = field_operator(mu, &point, &ms, &rep, &natural()).unwrap();
            assert!(rep.max_asymmetry(&a) <= 1e-12, "A^{mu} not self-adjoint");
            let p = momentum_density(mu, &point, &ms, &rep, &natural()).unwrap();
            assert!(rep.max_asymmetry(&p) <= 1e-12, "pi_{mu} not self-adjoint");
        }
    }

    #[test]
    fn field_operator_self_adjoint_under_indefinite_metric() {
        let ms = symmetric_set();
        let scheme = CommutatorScheme::standard();
        let rep = rep_for(&ms, 1, &scheme, DEFAULT_DIMENSION_CAP);
        let point = FieldPoint::spatial([0.5, 0.0, -0.2]);
        let a = field_operator(0, &point, &ms, &rep, &natural()).unwrap();
        assert!(rep.has_indefinite_metric());
        assert!(rep.max_asymmetry(&a) <= 1e-12);
    }

    #[test]
    fn single_mode_origin_field_matches_sum_of_ladders() {
        let ms = single_mode_set();
        let scheme = CommutatorScheme::modified_isotropic();
        let rep = rep_for(&ms, 2, &scheme, DEFAULT_DIMENSION_CAP);
        let point = FieldPoint::spatial([0.0, 0.0, 0.0]);
        let a0 = field_operator(0, &point, &ms, &rep, &natural()).unwrap();
        // amplitude sqrt(hbar c^2 / (2 V omega)); phases are 1 at the origin
        let amp = (1.0 / (2.0 * ms.volume())).sqrt();
        let expected = rep
            .ladder_matrix(&LadderSymbol::a(0, 0))
            .unwrap()
            .add(&rep.ladder_matrix(&LadderSymbol::ad(0, 0)).unwrap())
            .scale(Complex64::new(amp, 0.0));
        assert!(a0.max_abs_diff(&expected) <= 1e-14);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn momentum_density_matches_finite_difference() {
        let ms = symmetric_set();
        let scheme = CommutatorScheme::modified_isotropic();
        let rep = rep_for(&ms, 1, &scheme, DEFAULT_DIMENSION_CAP);
        let consts = natural();
        let x = [0.7, 0.1, -0.3];
        let dt = 1e-4;
        for mu in 0..4 {
            let pi = momentum_density(mu, &FieldPoint::spatial(x), &ms, &rep, &consts).unwrap();
            let plus =
                field_operator(mu, &FieldPoint::new(dt, x).unwrap(), &ms, &rep, &consts).unwrap();
            let minus =
                field_operator(mu, &FieldPoint::new(-dt, x).unwrap(), &ms, &rep, &consts).unwrap();
            // pi_mu = -(1/c^2) g_mumu dA^mu/dt
            let fd = plus
                .sub(&minus)
                .scale(Complex64::new(-METRIC_DIAGONAL[mu] / (2.0 * dt), 0.0));
            assert!(pi.max_abs_diff(&fd) <= 1e-6, "mu = {mu}");
        }
    }

    #[test]
    fn wave_equation_residual_small() {
        // five-point second differences in t and each spatial direction
        let ms = symmetric_set();
        let scheme = CommutatorScheme::modified_isotropic();
        let rep = rep_for(&ms, 1, &scheme, DEFAULT_DIMENSION_CAP);
        let consts = natural();
        let h = 1e-3;
        let base = [0.4, -0.2, 0.9];
        let t0 = 0.15;
        let mu = 3;

        let second_difference = |vals: [CMatrix; 5]| -> CMatrix {
            // -f(x-2h) + 16 f(x-h) - 30 f(x) + 16 f(x+h) - f(x+2h) over 12 h^2
            let mut acc = vals[0].scale(Complex64::new(-1.0, 0.0));
            acc = acc.add(&vals[1].scale(Complex64::new(16.0, 0.0)));
            acc = acc.add(&vals[2].scale(Complex64::new(-30.0, 0.0)));
            acc = acc.add(&vals[3].scale(Complex64::new(16.0, 0.0)));
            acc = acc.add(&vals[4].scale(Complex64::new(-1.0, 0.0)));
            acc.scale(Complex64::new(1.0 / (12.0 * h * h), 0.0))
        };

        let at = |t: f64, x: [f64; 3]| {
            field_operator(mu, &FieldPoint::new(t, x).unwrap(), &ms, &rep, &consts).unwrap()
        };

        let t_stencil = second_difference([
            at(t0 - 2.0 * h, base),
            at(t0 - h, base),
            at(t0, base),
            at(t0 + h, base),
            at(t0 + 2.0 * h, base),
        ]);
        let mut box_a = t_stencil; // (1/c^2) d^2/dt^2 with c = 1
        for axis in 0..3 {
            let shift = |s: f64| {
                let mut x = base;
                x[axis] += s;
                x
            };
            let dxx = second_difference([
                at(t0, shift(-2.0 * h)),
                at(t0, shift(-h)),
                at(t0, shift(0.0)),
                at(t0, shift(h)),
                at(t0, shift(2.0 * h)),
            ]);
            box_a = box_a.sub(&dxx);
        }
        let scale = at(t0, base).max_abs();
        assert!(
            box_a.max_abs() <= 1e-6 * scale.max(1.0),
            "d'Alembertian residual {}",
            box_a.max_abs()
        );
    }

    #[test]
    fn equal_time_commutator_requires_symmetry() {
        let ms = single_mode_set();
        let scheme = CommutatorScheme::modified_isotropic();
        let rep = rep_for(&ms, 1, &scheme, DEFAULT_DIMENSION_CAP);
        let err = equal_time_commutator(0, 0, [0.0; 3], [0.1; 3], 0.0, &ms, &rep, &natural());
        assert!(matches!(err, Err(FieldError::SymmetryRequired)));
    }

    #[test]
    fn equal_time_commutator_scalar_sector() {
        let ms = symmetric_set();
        let consts = natural();
        for scheme in [
            CommutatorScheme::modified_isotropic(),
            CommutatorScheme::standard(),
        ] {
            let rep = rep_for(&ms, 2, &scheme, 8192);
            let x = [0.3, 0.0, 1.2];
            let xp = [0.1, 0.0, 0.4];
            let result = equal_time_commutator(0, 0, x, xp, 0.2, &ms, &rep, &consts).unwrap();
            assert!(result.is_c_number, "deviation {}", result.max_deviation);
            let dx = [x[0] - xp[0], x[1] - xp[1], x[2] - xp[2]];
            let expected = Complex64::new(0.0, 1.0) * delta_v(&ms, dx);
            assert!((result.c_number - expected).norm() <= 1e-10);
            // cross-check against the independent mode-sum prediction
            let predicted = predicted_commutator_constant(0, 0, dx, &ms, &scheme, &consts);
            assert!((result.c_number - predicted).norm() <= 1e-12);
        }
    }

    #[test]
    fn equal_time_spatial_trace() {
        let ms = symmetric_set();
        let consts = natural();
        let x = [0.25, -0.5, 0.75];
        let xp = [0.0, 0.0, 0.0];
        let dx = x;
        let modified = CommutatorScheme::modified_isotropic();
        let standard = CommutatorScheme::standard();
        for (scheme, weight) in [(&modified, 1.0), (&standard, 3.0)] {
            let rep = rep_for(&ms, 2, scheme, 8192);
            let mut total = Complex64::new(0.0, 0.0);
            for i in 1..4 {
                let r = equal_time_commutator(i, i, x, xp, 0.0, &ms, &rep, &consts).unwrap();
                assert!(r.is_c_number);
                total += r.c_number;
            }
            let expected = Complex64::new(0.0, weight) * delta_v(&ms, dx);
            assert!(
                (total - expected).norm() <= 1e-10,
                "spatial trace under {:?}",
                scheme.kind()
            );
        }
    }

    #[test]
    fn equal_time_field_field_commutator_vanishes() {
        let ms = symmetric_set();
        let scheme = CommutatorScheme::modified_isotropic();
        let rep = rep_for(&ms, 1, &scheme, DEFAULT_DIMENSION_CAP);
        let consts = natural();
        let a1 =
            field_operator(1, &FieldPoint::spatial([0.3, 0.3, 0.3]), &ms, &rep, &consts).unwrap();
        let a2 = field_operator(
            2,
            &FieldPoint::spatial([-0.4, 0.0, 1.0]),
            &ms,
            &rep,
            &consts,
        )
        .unwrap();
        let comm = a1.matmul(&a2).sub(&a2.matmul(&a1));
        assert!(comm.max_abs() <= 1e-12);
    }

    #[test]
    fn hamiltonian_coefficients_on_unit_shell() {
        let ms = ModeSet::new(1.0, vec![[0, 0, 1]]).unwrap();
        let h = hamiltonian_modes(&ms, &natural()).unwrap();
        // hbar omega / 2 = pi / L with L = 1
        let pi_exact = BigRational::from_float(2.0 * std::f64::consts::PI).unwrap()
            / BigRational::from_integer(2.into());
        for (_, coeff) in h.terms() {
            assert_eq!(coeff.re().abs(), pi_exact);
        }
    }

    #[test]
    fn vacuum_energy_three_ways() {
        let ms = symmetric_set();
        let consts = natural();
        let standard_raw = vacuum_energy(
            &ms,
            &CommutatorScheme::standard(),
            &consts,
            VacuumEnergyVariant::Raw,
        )
        .unwrap();
        // two modes of omega = 1: sum 2 hbar omega = 4
        assert_eq!(standard_raw, BigRational::from_integer(4.into()));
        let standard_n = vacuum_energy(
            &ms,
            &CommutatorScheme::standard(),
            &consts,
            VacuumEnergyVariant::NormalOrderedPrescription,
        )
        .unwrap();
        assert!(standard_n.is_zero());
        let modified_raw = vacuum_energy(
            &ms,
            &CommutatorScheme::modified_isotropic(),
            &consts,
            VacuumEnergyVariant::Raw,
        )
        .unwrap();
        assert!(modified_raw.is_zero());
    }

    #[test]
    fn density_hamiltonian_matches_mode_hamiltonian() {
        let consts = natural();
        let scheme = CommutatorScheme::modified_isotropic();
        // single mode
        let ms = single_mode_set();
        let rep = rep_for(&ms, 2, &scheme, DEFAULT_DIMENSION_CAP);
        let dense = hamiltonian_from_density(&ms, &rep, &consts, 4, 0.0).unwrap();
        let modes = rep
            .realize(&hamiltonian_modes(&ms, &consts).unwrap())
            .unwrap();
        let scale = modes.max_abs();
        assert!(dense.max_abs_diff(&modes) <= 1e-10 * scale);
        // time independence of the quadrature
        let dense_t = hamiltonian_from_density(&ms, &rep, &consts, 4, 0.37).unwrap();
        assert!(dense_t.max_abs_diff(&modes) <= 1e-10 * scale);
    }

    #[test]
    fn density_hamiltonian_nyquist_guard() {
        let ms = single_mode_set();
        let scheme = CommutatorScheme::modified_isotropic();
        let rep = rep_for(&ms, 1, &scheme, DEFAULT_DIMENSION_CAP);
        let err = hamiltonian_from_density(&ms, &rep, &natural(), 2, 0.0);
        assert!(matches!(
            err,
            Err(FieldError::Aliasing {
                grid_n: 2,
                required: 4
            })
        ));
    }

    #[test]
    fn momentum_vanishes_on_vacuum_for_symmetric_sets() {
        let ms = symmetric_set();
        let consts = natural();
        let p_ops = momentum_operator(&ms, &consts).unwrap();
        for scheme in [
            CommutatorScheme::standard(),
            CommutatorScheme::modified_isotropic(),
        ] {
            for p in &p_ops {
                assert!(vev(p, &scheme).is_zero(), "exact zero-point cancellation");
            }
        }
    }

    #[test]
    fn single_photon_momentum_eigenvalue() {
        use crate::algebra::ordering::commutator;
        let ms = symmetric_set();
        let consts = natural();
        let p_ops = momentum_operator(&ms, &consts).unwrap();
        let ad1 = OperatorPoly::from_symbol(LadderSymbol::ad(1, 0));
        // [P^z, ad_1(k)] = hbar k^z (xi_1 c_1) ad_1(k)
        let k = ms.k_vec(0);
        for scheme in [
            CommutatorScheme::standard(),
            CommutatorScheme::modified_isotropic(),
        ] {
            let comm = commutator(&p_ops[2], &ad1, &scheme);
            let c1 = scheme.c(1).to_f64().unwrap();
            let expected = BigRational::from_float(k[2]).unwrap() * scheme.c(1).clone();
            assert_eq!(
                comm.coefficient(&[LadderSymbol::ad(1, 0)]),
                Scalar::real(expected),
                "scheme {:?}, c1 = {c1}",
                scheme.kind()
            );
            assert_eq!(comm.num_terms(), 1);
        }
    }

    #[test]
    fn energy_momentum_identity_single_mode() {
        let consts = natural();
        let ms = single_mode_set();
        for scheme in [
            CommutatorScheme::standard(),
            CommutatorScheme::modified_isotropic(),
        ] {
            let rep = rep_for(&ms, 2, &scheme, DEFAULT_DIMENSION_CAP);
            let photon = OperatorPoly::from_symbol(LadderSymbol::ad(1, 0));
            let residual = check_energy_momentum_identity(&photon, &ms, &rep, &consts).unwrap();
            assert!(residual <= 1e-12, "single photon residual {residual}");
            let vacuum = OperatorPoly::identity();
            let residual = check_energy_momentum_identity(&vacuum, &ms, &rep, &consts).unwrap();
            assert!(residual <= 1e-12, "vacuum residual {residual}");
        }
    }

    #[test]
    fn energy_momentum_identity_fails_off_single_mode() {
        let consts = natural();
        let ms = ModeSet::new(2.0 * std::f64::consts::PI, vec![[1, 0, 0], [0, 1, 0]]).unwrap();
        let scheme = CommutatorScheme::modified_isotropic();
        let rep = FockRep::for_modes(2, 2, &scheme, 8192).unwrap();
        let two_photon = OperatorPoly::monomial(
            vec![LadderSymbol::ad(1, 0), LadderSymbol::ad(1, 1)],
            Scalar::one(),
        );
        let residual = check_energy_momentum_identity(&two_photon, &ms, &rep, &consts).unwrap();
        assert!(residual > 0.1, "non-collinear residual should be visible");
    }

    #[test]
    fn null_state_is_an_error() {
        let ms = single_mode_set();
        let scheme = CommutatorScheme::modified_isotropic();
        let rep = rep_for(&ms, 2, &scheme, DEFAULT_DIMENSION_CAP);
        // ad_0 annihilates the vacuum in the modified scheme
        let null = OperatorPoly::from_symbol(LadderSymbol::ad(0, 0));
        assert!(matches!(
            check_energy_momentum_identity(&null, &ms, &rep, &natural()),
            Err(FieldError::NullState)
        ));
    }
}
