//! Numerical oracle: ladder symbols as matrices on a truncated Fock space.
//!
//! Each oscillator (one mode, one polarization) gets occupations `0..=n_max`.
//! The realization of a symbol pair depends on its commutator constant and
//! vacuum role:
//!
//! * positive constant, plain-operator role: the textbook pair, `a` lowers
//!   with weight `sqrt(c (m+1))` and `a^+` is its adjoint;
//! * negative constant, swapped role: `a` *raises* and `a^+` lowers, so the
//!   conjugate annihilates the vacuum, the inner product stays positive
//!   definite, and `[a, a^+] = c < 0`;
//! * negative constant, plain-operator role (the covariant textbook scalar
//!   sector): `a` lowers and `a^+` is the adjoint with respect to the
//!   indefinite weight `(-1)^occupation`, giving `[a, a^+] = c < 0` at the
//!   price of negative-norm states.
//!
//! Truncation only corrupts the top occupation level; the defect of the
//! realized commutators is computed exactly (products of the paired square
//! root entries are rational) and vanishes on the sub-truncation subspace.

pub mod sparse;

use std::collections::HashMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::scheme::{CommutatorScheme, VacuumRole};
use crate::algebra::{LadderSymbol, OperatorPoly};
use sparse::CMatrix;

/// Default ceiling on the total Fock dimension `(n_max+1)^oscillators`.
pub const DEFAULT_DIMENSION_CAP: usize = 4096;

#[derive(Debug, Error, PartialEq)]
pub enum FockError {
    #[error("oscillator (mode {mode}, pol {pol}) is not part of this representation")]
    UnknownOscillator { mode: u32, pol: u8 },
    #[error("Fock dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: u128, cap: usize },
    #[error("monomial degree {degree} exceeds 2*n_max = {limit}; vacuum element would touch the truncation boundary")]
    TruncationRisk { degree: usize, limit: usize },
    #[error("representation needs at least one oscillator")]
    NoOscillators,
}

/// How one oscillator's symbol pair is realized.
#[derive(Clone, Debug)]
struct OscRealization {
    c_abs: BigRational,
    /// Does the plain symbol raise the occupation?
    a_raises: bool,
    /// Sign applied to the conjugate symbol's matrix (-1 for the
    /// indefinite-metric constructions).
    dagger_sign: f64,
    indefinite: bool,
}

fn realization(c: &BigRational, role: VacuumRole) -> OscRealization {
    let indefinite = match role {
        VacuumRole::Operator => c.is_negative(),
        VacuumRole::Conjugate => c.is_positive(),
    };
    OscRealization {
        c_abs: c.abs(),
        a_raises: role == VacuumRole::Conjugate,
        dagger_sign: if indefinite { -1.0 } else { 1.0 },
        indefinite,
    }
}

/// Truncated multi-oscillator Fock representation.
#[derive(Clone, Debug)]
pub struct FockRep {
    oscillators: Vec<(u32, u8)>,
    index: HashMap<(u32, u8), usize>,
    realizations: Vec<OscRealization>,
    scheme: CommutatorScheme,
    n_max: usize,
    dim: usize,
    strides: Vec<usize>,
    metric: Vec<f64>,
}

impl FockRep {
    /// Build a representation for explicit oscillators under the default cap.
    pub fn new(
        oscillators: Vec<(u32, u8)>,
        n_max: usize,
        scheme: &CommutatorScheme,
    ) -> Result<Self, FockError> {
        Self::with_cap(oscillators, n_max, scheme, DEFAULT_DIMENSION_CAP)
    }

    pub fn with_cap(
        oscillators: Vec<(u32, u8)>,
        n_max: usize,
        scheme: &CommutatorScheme,
        cap: usize,
    ) -> Result<Self, FockError> {
        if oscillators.is_empty() {
            return Err(FockError::NoOscillators);
        }
        let base = (n_max + 1) as u128;
        let mut dim_wide: u128 = 1;
        for _ in &oscillators {
            dim_wide = dim_wide.saturating_mul(base);
            if dim_wide > cap as u128 {
                return Err(FockError::DimensionCap { dim: dim_wide, cap });
            }
        }
        let dim = dim_wide as usize;

        let mut index = HashMap::new();
        let mut strides = Vec::with_capacity(oscillators.len());
        let mut stride = 1;
        for (i, osc) in oscillators.iter().enumerate() {
            index.insert(*osc, i);
            strides.push(stride);
            stride *= n_max + 1;
        }
        let realizations: Vec<OscRealization> = oscillators
            .iter()
            .map(|&(_, pol)| realization(scheme.c(pol), scheme.vacuum_annihilator(pol)))
            .collect();

        let mut metric = vec![1.0; dim];
        for (o, r) in realizations.iter().enumerate() {
            if r.indefinite {
                for (s, w) in metric.iter_mut().enumerate() {
                    let occ = (s / strides[o]) % (n_max + 1);
                    if occ % 2 == 1 {
                        *w = -*w;
                    }
                }
            }
        }

        Ok(FockRep {
            oscillators,
            index,
            realizations,
            scheme: scheme.clone(),
            n_max,
            dim,
            strides,
            metric,
        })
    }

    /// All four polarizations for each of `num_modes` modes.
    pub fn for_modes(
        num_modes: u32,
        n_max: usize,
        scheme: &CommutatorScheme,
        cap: usize,
    ) -> Result<Self, FockError> {
        let mut osc = Vec::new();
        for mode in 0..num_modes {
            for pol in 0u8..4 {
                osc.push((mode, pol));
            }
        }
        Self::with_cap(osc, n_max, scheme, cap)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn scheme(&self) -> &CommutatorScheme {
        &self.scheme
    }

    pub fn oscillators(&self) -> &[(u32, u8)] {
        &self.oscillators
    }

    /// Diagonal inner-product weights (+1 everywhere unless an indefinite
    /// construction is present; the vacuum always has weight +1).
    pub fn metric(&self) -> &[f64] {
        &self.metric
    }

    pub fn has_indefinite_metric(&self) -> bool {
        self.realizations.iter().any(|r| r.indefinite)
    }

    /// Occupation numbers of a basis state.
    pub fn occupations(&self, state: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|&st| (state / st) % (self.n_max + 1))
            .collect()
    }

    pub fn vacuum_vector(&self) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); self.dim];
        v[0] = Complex64::new(1.0, 0.0);
        v
    }

    fn osc_of(&self, sym: &LadderSymbol) -> Result<usize, FockError> {
        self.index
            .get(&sym.oscillator())
            .copied()
            .ok_or(FockError::UnknownOscillator {
                mode: sym.mode,
                pol: sym.pol,
            })
    }

    /// Does this symbol raise the occupation in this realization?
    fn raises(&self, sym: &LadderSymbol, osc: usize) -> bool {
        self.realizations[osc].a_raises != sym.dagger
    }

    /// Sparse matrix of one ladder symbol.
    pub fn ladder_matrix(&self, sym: &LadderSymbol) -> Result<CMatrix, FockError> {
        let o = self.osc_of(sym)?;
        let r = &self.realizations[o];
        let c_abs = r.c_abs.to_f64().expect("finite commutator constant");
        let sign = if sym.dagger { r.dagger_sign } else { 1.0 };
        let stride = self.strides[o];
        let period = self.n_max + 1;
        let mut m = CMatrix::zeros(self.dim);
        if c_abs == 0.0 {
            return Ok(m);
        }
        for s in 0..self.dim {
            let occ = (s / stride) % period;
            if self.raises(sym, o) {
                if occ < self.n_max {
                    let w = (c_abs * (occ as f64 + 1.0)).sqrt();
                    m.insert(s + stride, s, Complex64::new(sign * w, 0.0));
                }
            } else if occ > 0 {
                let w = (c_abs * occ as f64).sqrt();
                m.insert(s - stride, s, Complex64::new(sign * w, 0.0));
            }
        }
        Ok(m)
    }

    /// Homomorphic image of a polynomial: words become matrix products,
    /// sums become sums, the identity word the identity matrix.
    pub fn realize(&self, p: &OperatorPoly) -> Result<CMatrix, FockError> {
        let mut cache: HashMap<LadderSymbol, CMatrix> = HashMap::new();
        let mut out = CMatrix::zeros(self.dim);
        for (word, coeff) in p.terms() {
            let mut acc: Option<CMatrix> = None;
            for sym in word {
                if !cache.contains_key(sym) {
                    cache.insert(*sym, self.ladder_matrix(sym)?);
                }
                let m = &cache[sym];
                acc = Some(match acc {
                    None => m.clone(),
                    Some(prev) => prev.matmul(m),
                });
            }
            let term = acc.unwrap_or_else(|| CMatrix::identity(self.dim));
            out = out.add(&term.scale(coeff.to_complex64()));
        }
        Ok(out)
    }

    /// Apply a polynomial to a state vector (words act right to left).
    pub fn apply(&self, p: &OperatorPoly, vec: &[Complex64]) -> Result<Vec<Complex64>, FockError> {
        let mut cache: HashMap<LadderSymbol, CMatrix> = HashMap::new();
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for (word, coeff) in p.terms() {
            let mut v = vec.to_vec();
            for sym in word.iter().rev() {
                if !cache.contains_key(sym) {
                    cache.insert(*sym, self.ladder_matrix(sym)?);
                }
                v = cache[sym].apply(&v);
            }
            let c = coeff.to_complex64();
            for (o, x) in out.iter_mut().zip(v.iter()) {
                *o += c * x;
            }
        }
        Ok(out)
    }

    /// Vacuum expectation value `<0| p |0>`.
    ///
    /// Guarded against truncation: a monomial of degree `d` can only connect
    /// the vacuum back to itself through intermediate occupations of at most
    /// `d/2`, so `d <= 2 n_max` keeps every contributing path inside the
    /// truncated space.
    pub fn vev_numeric(&self, p: &OperatorPoly) -> Result<Complex64, FockError> {
        let degree = p.degree();
        let limit = 2 * self.n_max;
        if degree > limit {
            return Err(FockError::TruncationRisk { degree, limit });
        }
        let v = self.apply(p, &self.vacuum_vector())?;
        Ok(v[0])
    }

    /// Basis states with every occupation at most `n_max - 1`; the realized
    /// commutators are exact there.
    pub fn sub_truncation_indices(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&s| self.occupations(s).iter().all(|&m| m < self.n_max))
            .collect()
    }

    /// Per-oscillator headroom needed so that `p` applied to a basis state
    /// never escapes the truncation: the maximum, over monomials, of the
    /// running raise count scanning each word right to left.
    pub fn column_headroom(&self, p: &OperatorPoly) -> Result<Vec<usize>, FockError> {
        let n = self.oscillators.len();
        let mut headroom = vec![0isize; n];
        for (word, _) in p.terms() {
            let mut delta = vec![0isize; n];
            for sym in word.iter().rev() {
                let o = self.osc_of(sym)?;
                delta[o] += if self.raises(sym, o) { 1 } else { -1 };
                if delta[o] > headroom[o] {
                    headroom[o] = delta[o];
                }
            }
        }
        Ok(headroom.into_iter().map(|h| h.max(0) as usize).collect())
    }

    /// Columns on which realizations of all `polys` are free of truncation
    /// artifacts: states leaving at least the needed headroom everywhere.
    pub fn safe_columns(&self, polys: &[&OperatorPoly]) -> Result<Vec<usize>, FockError> {
        let n = self.oscillators.len();
        let mut headroom = vec![0usize; n];
        for p in polys {
            for (o, h) in self.column_headroom(p)?.iter().enumerate() {
                headroom[o] = headroom[o].max(*h);
            }
        }
        Ok((0..self.dim)
            .filter(|&s| {
                self.occupations(s)
                    .iter()
                    .zip(&headroom)
                    .all(|(&m, &h)| m + h <= self.n_max)
            })
            .collect())
    }

    /// `eta M^dagger eta`: the adjoint with respect to the rep's metric.
    pub fn pseudo_adjoint(&self, m: &CMatrix) -> CMatrix {
        m.adjoint().diag_conjugate(&self.metric)
    }

    /// Largest deviation of `m` from self-adjointness under the rep's inner
    /// product.
    pub fn max_asymmetry(&self, m: &CMatrix) -> f64 {
        m.max_abs_diff(&self.pseudo_adjoint(m))
    }

    /// Exact truncation defect of the realized commutators `[a, a^+] - c`.
    ///
    /// Ladder entries are square roots, but the commutator only ever
    /// multiplies an entry by itself, so its diagonal is exactly rational:
    /// differences of `c |c|-scaled occupations`. The defect vanishes off
    /// the top occupation level and is `|c| (n_max + 1)` there.
    pub fn truncation_defect(&self) -> DefectReport {
        let mut sub = BigRational::zero();
        let mut full = BigRational::zero();
        for (o, r) in self.realizations.iter().enumerate() {
            let c = self.scheme.c(self.oscillators[o].1).clone();
            let s = BigRational::from_integer(if r.dagger_sign < 0.0 {
                (-1).into()
            } else {
                1.into()
            });
            for m in 0..=self.n_max {
                let q_m = &r.c_abs * BigRational::from_integer(m.into());
                let q_m1 = if m < self.n_max {
                    &r.c_abs * BigRational::from_integer((m + 1).into())
                } else {
                    BigRational::zero()
                };
                // diagonal of a a^+ - a^+ a at occupation m
                let comm = if r.a_raises {
                    &s * (&q_m - &q_m1)
                } else {
                    &s * (&q_m1 - &q_m)
                };
                let defect = (comm - &c).abs();
                if m < self.n_max && defect > sub {
                    sub = defect.clone();
                }
                if defect > full {
                    full = defect;
                }
            }
        }
        DefectReport {
            sub_truncation: sub,
            full_space: full,
        }
    }
}

/// Exact commutator truncation defects, restricted and unrestricted.
#[derive(Clone, Debug, PartialEq)]
pub struct DefectReport {
    pub sub_truncation: BigRational,
    pub full_space: BigRational,
}
