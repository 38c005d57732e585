//! Commutation schemes: per-polarization commutator constants and vacuum
//! role assignments.
//!
//! A scheme fixes `[a_r(k), a_r^+(k')] = c_r delta_{kk'}` together with which
//! of the pair annihilates the vacuum. Two named schemes matter:
//!
//! * `standard` - the covariant textbook choice `c_r = xi_r` with the plain
//!   operator annihilating the vacuum for every polarization (the scalar
//!   sector then needs an indefinite inner product);
//! * `modified`    - `c_0 = -1` with the roles of the scalar pair swapped (the
//!   conjugate annihilates the vacuum), and positive transverse constants
//!   `n_1 + n_2 + n_3 = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

use super::{ordering, LadderSymbol, OperatorPoly};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum SchemeError {
    #[error("commutator weight n_{index} = {value} must be positive")]
    NonPositiveWeight { index: u8, value: String },
    #[error("transverse weights must sum to 1, got {sum}")]
    WeightSumNotOne { sum: String },
    #[error("operation requires a role-swapped scalar sector with negative c_0 (modified-type scheme), got {found}")]
    NotRoleSwapped { found: String },
}

/// Which member of the pair `(a, a^+)` annihilates the vacuum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VacuumRole {
    /// The plain operator `a` annihilates the vacuum (textbook case).
    Operator,
    /// The conjugate `a^+` annihilates the vacuum (role swap).
    Conjugate,
}

/// Tag naming how a scheme was constructed; schemes compare by content.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeKind {
    Standard,
    Modified,
    Custom,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorScheme {
    kind: SchemeKind,
    c: [BigRational; 4],
    vacuum_annihilator: [VacuumRole; 4],
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl CommutatorScheme {
    /// Covariant textbook scheme: `c_r = xi_r`, plain operators annihilate.
    pub fn standard() -> Self {
        CommutatorScheme {
            kind: SchemeKind::Standard,
            c: [big(-1), big(1), big(1), big(1)],
            vacuum_annihilator: [VacuumRole::Operator; 4],
        }
    }

    /// Modified scheme: `c_0 = -1` with the scalar roles swapped, transverse
    /// constants `(n_1, n_2, n_3)` all positive and summing to one.
    pub fn modified(n: [BigRational; 3]) -> Result<Self, SchemeError> {
        for (i, v) in n.iter().enumerate() {
            if !v.is_positive() {
                return Err(SchemeError::NonPositiveWeight {
                    index: i as u8 + 1,
                    value: v.to_string(),
                });
            }
        }
        let sum = &n[0] + &n[1] + &n[2];
        if !sum.is_one() {
            return Err(SchemeError::WeightSumNotOne {
                sum: sum.to_string(),
            });
        }
        let [n1, n2, n3] = n;
        Ok(CommutatorScheme {
            kind: SchemeKind::Modified,
            c: [big(-1), n1, n2, n3],
            vacuum_annihilator: [
                VacuumRole::Conjugate,
                VacuumRole::Operator,
                VacuumRole::Operator,
                VacuumRole::Operator,
            ],
        })
    }

    /// Modified scheme at the isotropic split `n_r = 1/3`.
    pub fn modified_isotropic() -> Self {
        let third = BigRational::new(BigInt::one(), BigInt::from(3));
        CommutatorScheme::modified([third.clone(), third.clone(), third]).expect("valid split")
    }

    /// Arbitrary constants and roles. No sum rule is imposed; checks against
    /// the modified-scheme constraints are a separate concern.
    pub fn custom(c: [BigRational; 4], vacuum_annihilator: [VacuumRole; 4]) -> Self {
        CommutatorScheme {
            kind: SchemeKind::Custom,
            c,
            vacuum_annihilator,
        }
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    /// The constant in `[a_r(k), a_r^+(k)] = c_r`.
    pub fn c(&self, pol: u8) -> &BigRational {
        &self.c[pol as usize]
    }

    pub fn vacuum_annihilator(&self, pol: u8) -> VacuumRole {
        self.vacuum_annihilator[pol as usize]
    }

    /// True if `sym` annihilates the vacuum under this scheme.
    pub fn is_annihilator(&self, sym: &LadderSymbol) -> bool {
        match self.vacuum_annihilator(sym.pol) {
            VacuumRole::Operator => !sym.dagger,
            VacuumRole::Conjugate => sym.dagger,
        }
    }

    /// True if `sym` creates excitations from the vacuum under this scheme.
    pub fn is_creator(&self, sym: &LadderSymbol) -> bool {
        !self.is_annihilator(sym)
    }

    /// The constant `q_r = [ann_r, cre_r]` for one oscillator, where `ann`
    /// annihilates the vacuum: `c_r` for the plain-operator role, `-c_r`
    /// for the swapped role. Positive `q_r` means a positive-norm sector.
    pub fn ann_cre_commutator(&self, pol: u8) -> BigRational {
        match self.vacuum_annihilator(pol) {
            VacuumRole::Operator => self.c[pol as usize].clone(),
            VacuumRole::Conjugate => -self.c[pol as usize].clone(),
        }
    }

    /// The spatial sum `c_1 + c_2 + c_3` constrained to `+1` by the modified
    /// equal-time commutator.
    pub fn spatial_sum(&self) -> BigRational {
        &self.c[1] + &self.c[2] + &self.c[3]
    }
}

/// The rescaling `a_r -> sqrt(c_r) b_r` (r = 1,2,3) plus the scalar-sector
/// relabeling `b_0 = a_0^+ / sqrt(|c_0|)`, after which every `b` pair
/// satisfies `[b, b^+] = +1` with `b` annihilating the vacuum.
///
/// Square roots are never materialized: the rescaling stores the squared
/// scale factors and exact results are obtained by dividing commutators by
/// them, or by rewriting monomials whose per-polarization symbol counts are
/// even.
#[derive(Clone, Debug, PartialEq)]
pub struct BRescaling {
    scheme: CommutatorScheme,
    scale_sq: [BigRational; 4],
}

/// Validate the scheme and build the rescaling map.
pub fn canonicalize_b(scheme: &CommutatorScheme) -> Result<BRescaling, SchemeError> {
    if scheme.vacuum_annihilator(0) != VacuumRole::Conjugate || !scheme.c(0).is_negative() {
        return Err(SchemeError::NotRoleSwapped {
            found: format!(
                "c_0 = {}, scalar annihilator = {:?}",
                scheme.c(0),
                scheme.vacuum_annihilator(0)
            ),
        });
    }
    for pol in 1u8..4 {
        if !scheme.c(pol).is_positive() {
            return Err(SchemeError::NonPositiveWeight {
                index: pol,
                value: scheme.c(pol).to_string(),
            });
        }
        if scheme.vacuum_annihilator(pol) != VacuumRole::Operator {
            return Err(SchemeError::NotRoleSwapped {
                found: format!("polarization {pol} has a swapped vacuum role"),
            });
        }
    }
    let scale_sq = [
        -scheme.c(0).clone(),
        scheme.c(1).clone(),
        scheme.c(2).clone(),
        scheme.c(3).clone(),
    ];
    Ok(BRescaling {
        scheme: scheme.clone(),
        scale_sq,
    })
}

#[derive(Debug, Error, PartialEq)]
pub enum RescaleError {
    #[error("monomial carries an odd power of sqrt(n_{pol}); not exactly representable")]
    OddSqrtPower { pol: u8 },
}

impl BRescaling {
    /// Squared scale factor relating `a` and `b` symbols of a polarization:
    /// `a_r = sqrt(scale_sq_r) * b_r` (with the r = 0 pair also relabeled).
    pub fn scale_sq(&self, pol: u8) -> &BigRational {
        &self.scale_sq[pol as usize]
    }

    /// The scheme the `b` symbols obey: unit commutators, textbook roles.
    pub fn canonical_scheme(&self) -> CommutatorScheme {
        CommutatorScheme::custom([big(1), big(1), big(1), big(1)], [VacuumRole::Operator; 4])
    }

    /// The `a`-algebra image of a `b` symbol, without its `1/sqrt` weight:
    /// for r = 1,2,3 the same symbol; for r = 0 the conjugate (role swap).
    pub fn b_symbol_image(&self, sym: LadderSymbol) -> LadderSymbol {
        if sym.pol == 0 {
            sym.conjugate()
        } else {
            sym
        }
    }

    /// Exact commutator `[b_r(k), b_s^+(k')]`.
    ///
    /// Computed in the `a` algebra and divided by the squared scale, which
    /// is exact: for `r = s` the commutator is a rational multiple of the
    /// identity, and for `r != s` it vanishes before any scaling applies.
    pub fn b_commutator(&self, r: u8, mode_r: u32, s: u8, mode_s: u32) -> OperatorPoly {
        let x = OperatorPoly::from_symbol(self.b_symbol_image(LadderSymbol::a(r, mode_r)));
        let y = OperatorPoly::from_symbol(self.b_symbol_image(LadderSymbol::ad(s, mode_s)));
        let comm = ordering::commutator(&x, &y, &self.scheme);
        if comm.is_zero() {
            return comm;
        }
        // nonzero only for the same oscillator; divide by scale_sq exactly
        debug_assert!(r == s && mode_r == mode_s);
        comm.scale(&Scalar::real(self.scale_sq(r).recip()))
    }

    /// Rewrite an `a`-polynomial in `b` symbols.
    ///
    /// Each monomial's coefficient picks up `prod_r sqrt(scale_sq_r)^k_r`
    /// where `k_r` counts that polarization's symbols; this is exact only
    /// when every `k_r` is even, otherwise an odd square-root power remains
    /// and the rewrite is rejected.
    pub fn rewrite_in_b(&self, p: &OperatorPoly) -> Result<OperatorPoly, RescaleError> {
        let mut out = OperatorPoly::zero();
        for (word, coeff) in p.terms() {
            let mut counts = [0u32; 4];
            for sym in word {
                counts[sym.pol as usize] += 1;
            }
            let mut factor = BigRational::one();
            for pol in 0u8..4 {
                let k = counts[pol as usize];
                if k % 2 != 0 {
                    return Err(RescaleError::OddSqrtPower { pol });
                }
                for _ in 0..k / 2 {
                    factor *= self.scale_sq(pol);
                }
            }
            let new_word: Vec<LadderSymbol> = word
                .iter()
                .map(|sym| if sym.pol == 0 { sym.conjugate() } else { *sym })
                .collect();
            out.add_term(new_word, coeff * &Scalar::real(factor));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_scheme_constants() {
        let s = CommutatorScheme::standard();
        assert_eq!(*s.c(0), big(-1));
        for pol in 1u8..4 {
            assert_eq!(*s.c(pol), big(1));
            assert!(s.is_annihilator(&LadderSymbol::a(pol, 0)));
        }
        assert!(s.is_annihilator(&LadderSymbol::a(0, 0)));
        assert_eq!(s.spatial_sum(), big(3));
    }

    #[test]
    fn modified_scheme_swaps_scalar_roles() {
        let s = CommutatorScheme::modified_isotropic();
        assert!(s.is_annihilator(&LadderSymbol::ad(0, 0)));
        assert!(s.is_creator(&LadderSymbol::a(0, 0)));
        assert_eq!(s.ann_cre_commutator(0), big(1));
        assert_eq!(s.spatial_sum(), big(1));
    }

    #[test]
    fn modified_scheme_validates_split() {
        let bad = CommutatorScheme::modified([big(1), big(0), big(0)]);
        assert!(matches!(
            bad,
            Err(SchemeError::NonPositiveWeight { index: 2, .. })
        ));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let bad_sum = CommutatorScheme::modified([half.clone(), half.clone(), half]);
        assert!(matches!(bad_sum, Err(SchemeError::WeightSumNotOne { .. })));
    }

    #[test]
    fn canonicalize_rejects_standard() {
        assert!(matches!(
            canonicalize_b(&CommutatorScheme::standard()),
            Err(SchemeError::NotRoleSwapped { .. })
        ));
    }

    #[test]
    fn b_pairs_are_canonical() {
        let resc = canonicalize_b(&CommutatorScheme::modified_isotropic()).unwrap();
        for r in 0u8..4 {
            for s in 0u8..4 {
                let comm = resc.b_commutator(r, 0, s, 0);
                if r == s {
                    assert_eq!(comm, OperatorPoly::identity(), "[b_{r}, b_{s}+]");
                } else {
                    assert!(comm.is_zero(), "[b_{r}, b_{s}+] should vanish");
                }
            }
        }
        // distinct modes commute
        assert!(resc.b_commutator(1, 0, 1, 1).is_zero());
    }

    #[test]
    fn rewrite_requires_even_powers() {
        let resc = canonicalize_b(&CommutatorScheme::modified_isotropic()).unwrap();
        let odd = OperatorPoly::from_symbol(LadderSymbol::a(1, 0));
        assert_eq!(
            resc.rewrite_in_b(&odd),
            Err(RescaleError::OddSqrtPower { pol: 1 })
        );

        // ad_1 a_1 = n_1 * bd_1 b_1
        let pair = OperatorPoly::monomial(
            vec![LadderSymbol::ad(1, 0), LadderSymbol::a(1, 0)],
            Scalar::one(),
        );
        let rewritten = resc.rewrite_in_b(&pair).unwrap();
        assert_eq!(
            rewritten.coefficient(&[LadderSymbol::ad(1, 0), LadderSymbol::a(1, 0)]),
            Scalar::from_ratio(1, 3)
        );

        // scalar pair relabels: a_0 ad_0 = |c_0| * bd_0 b_0 reads ad->a swap
        let scalar_pair = OperatorPoly::monomial(
            vec![LadderSymbol::a(0, 0), LadderSymbol::ad(0, 0)],
            Scalar::one(),
        );
        let rewritten = resc.rewrite_in_b(&scalar_pair).unwrap();
        assert_eq!(
            rewritten.coefficient(&[LadderSymbol::ad(0, 0), LadderSymbol::a(0, 0)]),
            Scalar::one()
        );
    }
}
