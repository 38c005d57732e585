//! Exact symbolic algebra of ladder operators.
//!
//! An [`OperatorPoly`] is a finite sum of words in ladder symbols with exact
//! complex-rational coefficients. Products are formal (no reordering);
//! commutation relations enter only through the rewriting operations in
//! [`ordering`], parameterized by a [`scheme::CommutatorScheme`].

pub mod ordering;
pub mod scheme;

use std::cmp::Ordering as CmpOrdering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum AlgebraError {
    #[error("mode {mode} has non-positive frequency {omega}")]
    InvalidMode { mode: u32, omega: String },
}

/// Metric sign of polarization `r`: -1 for the scalar label, +1 otherwise.
pub fn xi_sign(pol: u8) -> i64 {
    if pol == 0 {
        -1
    } else {
        1
    }
}

/// One ladder symbol `a_r(k)` or its conjugate `a_r^+(k)`.
///
/// `mode` indexes a wavevector in some mode set; `pol` is the polarization
/// label 0..=3. Whether the plain or the conjugate symbol annihilates the
/// vacuum is not a property of the symbol; it is decided by the commutation
/// scheme in force.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LadderSymbol {
    pub pol: u8,
    pub mode: u32,
    pub dagger: bool,
}

impl LadderSymbol {
    pub fn new(pol: u8, mode: u32, dagger: bool) -> Self {
        assert!(pol <= 3, "polarization index must be 0..=3, got {pol}");
        LadderSymbol { pol, mode, dagger }
    }

    /// The plain symbol `a[pol, mode]`.
    pub fn a(pol: u8, mode: u32) -> Self {
        Self::new(pol, mode, false)
    }

    /// The conjugate symbol `ad[pol, mode]`.
    pub fn ad(pol: u8, mode: u32) -> Self {
        Self::new(pol, mode, true)
    }

    pub fn conjugate(&self) -> Self {
        LadderSymbol {
            dagger: !self.dagger,
            ..*self
        }
    }

    /// Oscillator identity: symbols commute freely unless these match.
    pub fn oscillator(&self) -> (u32, u8) {
        (self.mode, self.pol)
    }
}

impl Ord for LadderSymbol {
    /// Fixed storage order: conjugated symbols first, then by mode, then by
    /// polarization. This is the term order used by the canonical text form.
    fn cmp(&self, other: &Self) -> CmpOrdering {
        (!self.dagger, self.mode, self.pol).cmp(&(!other.dagger, other.mode, other.pol))
    }
}

impl PartialOrd for LadderSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<CmpOrdering> {
        Some(self.cmp(other))
    }
}

/// A monomial word: an ordered product of ladder symbols. Empty = identity.
pub type Word = Vec<LadderSymbol>;

/// Polynomial in ladder symbols with exact coefficients.
///
/// Terms with coefficient exactly zero are never stored; the empty word is
/// the identity operator.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OperatorPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl OperatorPoly {
    pub fn zero() -> Self {
        OperatorPoly::default()
    }

    pub fn identity() -> Self {
        OperatorPoly::scalar(Scalar::one())
    }

    pub fn scalar(s: Scalar) -> Self {
        let mut p = OperatorPoly::zero();
        p.add_term(Vec::new(), s);
        p
    }

    pub fn from_symbol(sym: LadderSymbol) -> Self {
        let mut p = OperatorPoly::zero();
        p.add_term(vec![sym], Scalar::one());
        p
    }

    pub fn monomial(word: Word, coeff: Scalar) -> Self {
        let mut p = OperatorPoly::zero();
        p.add_term(word, coeff);
        p
    }

    /// Accumulate `coeff * word`, dropping the term if it cancels to zero.
    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Longest word length appearing in the polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &[LadderSymbol]) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of the identity word.
    pub fn identity_coefficient(&self) -> Scalar {
        self.coefficient(&[])
    }

    pub fn scale(&self, s: &Scalar) -> OperatorPoly {
        let mut out = OperatorPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * s);
        }
        out
    }

    /// Formal noncommutative product: words concatenate, no reordering.
    pub fn multiply(&self, rhs: &OperatorPoly) -> OperatorPoly {
        let mut out = OperatorPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let mut word = Vec::with_capacity(w1.len() + w2.len());
                word.extend_from_slice(w1);
                word.extend_from_slice(w2);
                out.add_term(word, c1 * c2);
            }
        }
        out
    }

    /// Formal adjoint: reverse each word, conjugate each symbol and
    /// coefficient.
    pub fn adjoint(&self) -> OperatorPoly {
        let mut out = OperatorPoly::zero();
        for (w, c) in &self.terms {
            let word: Word = w.iter().rev().map(|s| s.conjugate()).collect();
            out.add_term(word, c.conj());
        }
        out
    }

    /// Distinct oscillators touched by the polynomial.
    pub fn oscillators(&self) -> Vec<(u32, u8)> {
        let mut set: Vec<(u32, u8)> = self
            .terms
            .keys()
            .flat_map(|w| w.iter().map(|s| s.oscillator()))
            .collect();
        set.sort_unstable();
        set.dedup();
        set
    }
}

impl std::ops::Add<&OperatorPoly> for &OperatorPoly {
    type Output = OperatorPoly;
    fn add(self, rhs: &OperatorPoly) -> OperatorPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub<&OperatorPoly> for &OperatorPoly {
    type Output = OperatorPoly;
    fn sub(self, rhs: &OperatorPoly) -> OperatorPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &OperatorPoly {
    type Output = OperatorPoly;
    fn neg(self) -> OperatorPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl std::ops::Mul<&OperatorPoly> for &OperatorPoly {
    type Output = OperatorPoly;
    fn mul(self, rhs: &OperatorPoly) -> OperatorPoly {
        self.multiply(rhs)
    }
}

/// The symmetrized free-field Hamiltonian in ladder symbols:
/// `sum_r sum_k (hbar omega / 2) xi_r [ad_r a_r + a_r ad_r]`.
///
/// `modes` pairs each mode index with its (exact) angular frequency. The
/// expression is scheme-independent; commutation relations only enter when
/// it is normal ordered or realized.
pub fn build_hamiltonian_sym(
    modes: &[(u32, BigRational)],
    hbar: &BigRational,
) -> Result<OperatorPoly, AlgebraError> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut h = OperatorPoly::zero();
    for (mode, omega) in modes {
        if !omega.is_positive() {
            return Err(AlgebraError::InvalidMode {
                mode: *mode,
                omega: omega.to_string(),
            });
        }
        let base = hbar * omega * &half;
        for pol in 0u8..4 {
            let coeff = Scalar::real(&base * BigRational::from_integer(BigInt::from(xi_sign(pol))));
            let a = LadderSymbol::a(pol, *mode);
            let ad = LadderSymbol::ad(pol, *mode);
            h.add_term(vec![ad, a], coeff.clone());
            h.add_term(vec![a, ad], coeff);
        }
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn one_mode_unit_freq() -> Vec<(u32, BigRational)> {
        vec![(0, BigRational::one())]
    }

    #[test]
    fn identity_is_multiplicative_unit() {
        let p = OperatorPoly::from_symbol(LadderSymbol::a(1, 0));
        assert_eq!(OperatorPoly::identity().multiply(&p), p);
        assert_eq!(p.multiply(&OperatorPoly::identity()), p);
    }

    #[test]
    fn multiply_is_formal() {
        let a = LadderSymbol::a(1, 0);
        let ad = LadderSymbol::ad(1, 0);
        let p = OperatorPoly::from_symbol(a).multiply(&OperatorPoly::from_symbol(ad));
        // one word [a, ad], coefficient 1, no reordering
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coefficient(&[a, ad]), Scalar::one());
    }

    #[test]
    fn multiply_distributes() {
        let a1 = OperatorPoly::from_symbol(LadderSymbol::a(1, 0));
        let a2 = OperatorPoly::from_symbol(LadderSymbol::a(2, 0));
        let ad1 = OperatorPoly::from_symbol(LadderSymbol::ad(1, 0));
        let sum = &a1 + &a2;
        let prod = sum.multiply(&ad1);
        assert_eq!(prod, &a1.multiply(&ad1) + &a2.multiply(&ad1));
        assert_eq!(prod.num_terms(), 2);
    }

    #[test]
    fn cancelling_terms_are_dropped() {
        let a = OperatorPoly::from_symbol(LadderSymbol::a(0, 0));
        let diff = &a - &a;
        assert!(diff.is_zero());
        assert_eq!(diff.num_terms(), 0);
    }

    #[test]
    fn adjoint_reverses_and_conjugates() {
        let w = vec![LadderSymbol::a(1, 0), LadderSymbol::ad(2, 0)];
        let p = OperatorPoly::monomial(w, Scalar::i());
        let adj = p.adjoint();
        let expected = vec![LadderSymbol::a(2, 0), LadderSymbol::ad(1, 0)];
        assert_eq!(adj.coefficient(&expected), -Scalar::i());
        assert_eq!(p.adjoint().adjoint(), p);
    }

    #[test]
    fn hamiltonian_has_eight_terms_per_mode() {
        let h = build_hamiltonian_sym(&one_mode_unit_freq(), &BigRational::one()).unwrap();
        assert_eq!(h.num_terms(), 8);
        for (word, coeff) in h.terms() {
            assert_eq!(word.len(), 2);
            let expected = if word[0].pol == 0 {
                Scalar::from_ratio(-1, 2)
            } else {
                Scalar::from_ratio(1, 2)
            };
            assert_eq!(*coeff, expected);
        }
    }

    #[test]
    fn hamiltonian_rejects_nonpositive_frequency() {
        let err = build_hamiltonian_sym(&[(0, BigRational::zero())], &BigRational::one());
        assert!(matches!(
            err,
            Err(AlgebraError::InvalidMode { mode: 0, .. })
        ));
    }

    #[test]
    fn symbol_order_puts_conjugates_first() {
        let mut syms = vec![
            LadderSymbol::a(0, 0),
            LadderSymbol::ad(3, 0),
            LadderSymbol::ad(1, 0),
            LadderSymbol::a(1, 1),
        ];
        syms.sort();
        assert_eq!(
            syms,
            vec![
                LadderSymbol::ad(1, 0),
                LadderSymbol::ad(3, 0),
                LadderSymbol::a(0, 0),
                LadderSymbol::a(1, 1),
            ]
        );
    }
}
