//! Equality-preserving normal ordering, the textbook normal-ordering
//! prescription, commutators, and vacuum expectation values.
//!
//! [`normal_order`] rewrites every monomial so that vacuum-annihilating
//! symbols stand to the right of their conjugates, accumulating the exact
//! commutator remainders dictated by the scheme. [`normal_order_prescription`]
//! is the non-equality-preserving `N[.]` that simply moves conjugated symbols
//! left and discards every remainder.

use num_traits::Zero;

use super::scheme::CommutatorScheme;
use super::{LadderSymbol, OperatorPoly, Word};
use crate::scalar::Scalar;

/// Canonical position key under a scheme: creators first, then oscillators
/// by (mode, polarization). Symbols of distinct oscillators commute exactly,
/// so sorting towards this key is free except for annihilator-creator pairs
/// of one oscillator.
fn canonical_key(sym: &LadderSymbol, scheme: &CommutatorScheme) -> (bool, u32, u8) {
    (scheme.is_annihilator(sym), sym.mode, sym.pol)
}

/// Do `x` and `y` commute exactly? True for distinct oscillators, equal
/// symbols, and conjugate pairs whose commutator constant is zero.
fn commutes(x: &LadderSymbol, y: &LadderSymbol, scheme: &CommutatorScheme) -> bool {
    x.oscillator() != y.oscillator() || x.dagger == y.dagger || scheme.c(x.pol).is_zero()
}

/// Equality-preserving rewrite to the canonical normal form.
///
/// The result is unique for a given scheme: every word is sorted towards the
/// canonical key, and each annihilator-creator transposition within one
/// oscillator leaves behind the scheme's commutator constant times the word
/// with the pair removed. Idempotent.
pub fn normal_order(p: &OperatorPoly, scheme: &CommutatorScheme) -> OperatorPoly {
    let mut out = OperatorPoly::zero();
    let mut queue: Vec<(Word, Scalar)> = p.terms().map(|(w, c)| (w.clone(), c.clone())).collect();

    'words: while let Some((mut word, coeff)) = queue.pop() {
        let mut i = 1;
        while i < word.len() {
            let mut j = i;
            while j > 0 && canonical_key(&word[j], scheme) < canonical_key(&word[j - 1], scheme) {
                if commutes(&word[j - 1], &word[j], scheme) {
                    word.swap(j - 1, j);
                    j -= 1;
                } else {
                    // word[j-1] annihilates, word[j] creates, same oscillator:
                    // ann * cre = cre * ann + q
                    let q = scheme.ann_cre_commutator(word[j].pol);
                    let mut contracted = word.clone();
                    contracted.drain(j - 1..=j);
                    queue.push((contracted, coeff.clone() * Scalar::real(q)));
                    word.swap(j - 1, j);
                    queue.push((word, coeff));
                    continue 'words;
                }
            }
            i += 1;
        }
        out.add_term(word, coeff);
    }
    out
}

/// The textbook prescription `N[.]`: move every conjugated symbol left of
/// every plain one, discard all commutator remainders. Not an equality;
/// vacuum role assignments are ignored.
pub fn normal_order_prescription(p: &OperatorPoly) -> OperatorPoly {
    let mut out = OperatorPoly::zero();
    for (word, coeff) in p.terms() {
        let mut sorted = word.clone();
        // stable by the fixed symbol order: conjugates first, then (mode, pol)
        sorted.sort();
        out.add_term(sorted, coeff.clone());
    }
    out
}

/// `[p, q] = normal_order(pq - qp)` under the scheme.
pub fn commutator(p: &OperatorPoly, q: &OperatorPoly, scheme: &CommutatorScheme) -> OperatorPoly {
    let pq = p.multiply(q);
    let qp = q.multiply(p);
    normal_order(&(&pq - &qp), scheme)
}

/// Vacuum expectation value: the identity-word coefficient of the normal
/// form. Every nonempty normal-ordered word either ends in a vacuum
/// annihilator or consists of creators only, and both have vanishing
/// vacuum matrix element.
pub fn vev(p: &OperatorPoly, scheme: &CommutatorScheme) -> Scalar {
    normal_order(p, scheme).identity_coefficient()
}
