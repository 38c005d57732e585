//! photonbox: a desk-scale workbench for quantizing the free electromagnetic
//! field in a periodic box under configurable ladder-operator commutation
//! schemes.
//!
//! The crate builds the mode-expanded potential, its momentum density, and
//! the field Hamiltonian both as exact symbolic polynomials in ladder symbols
//! and as matrices on truncated Fock spaces, and lets the commutation scheme
//! vary: the covariant textbook assignment, or a modified assignment with a
//! role-swapped scalar sector whose raw vacuum energy vanishes identically
//! without any normal-ordering subtraction. Equal-time and covariant
//! commutators, polarization-sum identities, and the light-cone support of
//! the massless commutator kernel are all checkable against independent
//! numeric oracles.

pub mod algebra;
pub mod causality;
pub mod expr;
pub mod field;
pub mod fock;
pub mod polarization;
pub mod scalar;

pub use algebra::ordering::{commutator, normal_order, normal_order_prescription, vev};
pub use algebra::scheme::{canonicalize_b, BRescaling, CommutatorScheme, SchemeKind, VacuumRole};
pub use algebra::{build_hamiltonian_sym, LadderSymbol, OperatorPoly};
pub use causality::{
    kernel_quadrature, lightcone_scan, regulated_kernel, Classification, ScanRow, SeparationPoint,
};
pub use expr::{format, parse, ParseError};
pub use field::{
    delta_v, equal_time_commutator, field_operator, hamiltonian_from_density, hamiltonian_modes,
    momentum_density, momentum_operator, vacuum_energy, FieldPoint, ModeSet, PhysicalConstants,
    VacuumEnergyVariant,
};
pub use fock::{FockRep, DEFAULT_DIMENSION_CAP};
pub use polarization::{
    build_basis, check_completeness, check_orthonormality, minkowski_dot, FourVector,
    PolarizationBasis,
};
pub use scalar::Scalar;
