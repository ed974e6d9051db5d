//! Exact arithmetic for finite metric groups and their Witt classes, with the
//! central-charge bookkeeping that connects them to affine Lie algebra data
//! and Frobenius-Perron dimensions of fusion rings.
//!
//! The library is organised around a chain of small, fully explicit objects:
//!
//! * [`abelian`] - finite abelian groups presented as direct sums of cyclic
//!   factors, their subgroups, quotients (via Smith normal form), and
//!   isomorphism enumeration.
//! * [`qform`] - quadratic forms `q: A -> Q/Z` on such groups (pre-metric
//!   groups), polarisation, orthogonal complements, isotropic subquotients,
//!   direct sums, Sylow decomposition, and brute-force isometry testing.
//! * [`witt`] - Witt classes of metric groups: reduction to anisotropic
//!   representatives, class arithmetic, orders, and spans of generating sets.
//! * [`charge`] - Gauss sums and the additive central charge in `Q/8Z`.
//! * [`affine`] - central charges of affine Lie algebras at positive integer
//!   levels, Virasoro minimal-model charges, and exact verification of
//!   conformal embedding and coset data.
//! * [`fusionring`] - fusion rings with non-negative integer structure
//!   constants and their Frobenius-Perron dimensions.
//!
//! All group and rational arithmetic is exact (arbitrary precision); the only
//! floating-point step is the evaluation of complex Gauss sums and
//! Frobenius-Perron eigenvalues, with tolerances pinned in [`tolerances`].
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature only adds `std::error::Error` impls for the error types.
//!
//! # Example
//!
//! Classify the metric group `(Z/2, q(1) = 1/4)` and compute its charge:
//!
//! ```
//! use wittforge_core::abelian::FiniteAbelianGroup;
//! use wittforge_core::qform::PreMetricGroup;
//! use wittforge_core::rational::QmodZ;
//! use wittforge_core::{charge, witt};
//!
//! let g = FiniteAbelianGroup::new(&[2]).unwrap();
//! let pm = PreMetricGroup::from_gram(g, &[QmodZ::new(1, 4).unwrap()], &[]).unwrap();
//! assert!(pm.is_nondegenerate() && pm.is_anisotropic());
//! assert_eq!(charge::additive_charge(&pm).unwrap().to_string(), "1");
//! let class = witt::WittClass::from_metric(&pm).unwrap();
//! assert_eq!(class.order().unwrap(), 8);
//! ```

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod abelian;
pub mod affine;
pub mod charge;
pub mod fusionring;
pub mod qform;
pub mod rational;
pub mod report;
pub mod tolerances;
pub mod witt;
