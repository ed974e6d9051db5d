//! Central charges of affine Lie algebras at positive integer levels,
//! together with the symbol conventions used by the verification data
//! (`su`/`so`/`sp` aliases, `u(1)`, Virasoro minimal-model charges, and
//! the two-component sector of `sl(2)` at odd level).
//!
//! All charges are exact rationals: `c(g, k) = k * dim g / (k + h)` where
//! `h` is the dual Coxeter number. Comparisons against data entries are
//! exact; nothing here touches floating point.

pub mod expr;
pub mod verify;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::charge::{CentralCharge, ChargeError};
use crate::rational::format_rational;
use expr::{ExprError, IntExpr};

/// Errors for symbol resolution and charge evaluation.
///
/// These are *hard* errors: a malformed rank, level, or expression. Corner
/// cases the conventions deliberately leave undefined (for example `so(2)`
/// with level semantics) are not errors; they surface as
/// [`Resolution::Unsupported`] so that verification can report them as
/// skipped rather than guessed.
#[derive(Clone, PartialEq, Debug)]
pub enum AffineError {
    InvalidRank { family: char, rank: i64 },
    InvalidLevel { level: i64 },
    /// `sp(n)` requires an even argument `n = 2m`.
    SpArgumentOdd { arg: i64 },
    /// The two-component sector of `sl(2)` exists for odd level `k >= 3`.
    PlusSectorLevel { level: i64 },
    /// Virasoro minimal-model index must satisfy `m >= 1`.
    VirasoroIndex { m: i64 },
    Expr(ExprError),
    Charge(ChargeError),
}

impl fmt::Display for AffineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AffineError::InvalidRank { family, rank } => {
                write!(f, "invalid rank {rank} for family {family}")
            }
            AffineError::InvalidLevel { level } => write!(f, "invalid level {level} (need >= 1)"),
            AffineError::SpArgumentOdd { arg } => {
                write!(f, "sp({arg}) needs an even argument")
            }
            AffineError::PlusSectorLevel { level } => {
                write!(f, "sl2 plus-sector needs odd level >= 3, got {level}")
            }
            AffineError::VirasoroIndex { m } => {
                write!(f, "Virasoro minimal-model index must be >= 1, got {m}")
            }
            AffineError::Expr(e) => write!(f, "expression error: {e}"),
            AffineError::Charge(e) => write!(f, "charge error: {e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AffineError {}

impl From<ExprError> for AffineError {
    fn from(e: ExprError) -> Self {
        AffineError::Expr(e)
    }
}

impl From<ChargeError> for AffineError {
    fn from(e: ChargeError) -> Self {
        AffineError::Charge(e)
    }
}

/// The nine series of finite-dimensional simple Lie algebras.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DynkinFamily {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl DynkinFamily {
    pub fn letter(self) -> char {
        match self {
            DynkinFamily::A => 'A',
            DynkinFamily::B => 'B',
            DynkinFamily::C => 'C',
            DynkinFamily::D => 'D',
            DynkinFamily::E => 'E',
            DynkinFamily::F => 'F',
            DynkinFamily::G => 'G',
        }
    }
}

/// A simple Lie algebra identified by family and rank.
///
/// Rank minima: `A >= 1`, `B >= 2`, `C >= 2`, `D >= 3`, `E in {6,7,8}`,
/// `F = 4`, `G = 2`. Lower ranks enter only through the `su`/`so`/`sp`
/// alias conventions, never as direct constructions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SimpleLieType {
    family: DynkinFamily,
    rank: u64,
}

impl SimpleLieType {
    pub fn new(family: DynkinFamily, rank: u64) -> Result<Self, AffineError> {
        let ok = match family {
            DynkinFamily::A => rank >= 1,
            DynkinFamily::B | DynkinFamily::C => rank >= 2,
            DynkinFamily::D => rank >= 3,
            DynkinFamily::E => matches!(rank, 6..=8),
            DynkinFamily::F => rank == 4,
            DynkinFamily::G => rank == 2,
        };
        if ok {
            Ok(SimpleLieType { family, rank })
        } else {
            Err(AffineError::InvalidRank {
                family: family.letter(),
                rank: rank as i64,
            })
        }
    }

    pub fn family(&self) -> DynkinFamily {
        self.family
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    /// Dimension of the algebra.
    pub fn dimension(&self) -> u64 {
        let r = self.rank;
        match self.family {
            DynkinFamily::A => r * (r + 2),
            DynkinFamily::B | DynkinFamily::C => r * (2 * r + 1),
            DynkinFamily::D => r * (2 * r - 1),
            DynkinFamily::E => match r {
                6 => 78,
                7 => 133,
                _ => 248,
            },
            DynkinFamily::F => 52,
            DynkinFamily::G => 14,
        }
    }

    /// Dual Coxeter number.
    pub fn dual_coxeter(&self) -> u64 {
        let r = self.rank;
        match self.family {
            DynkinFamily::A => r + 1,
            DynkinFamily::B => 2 * r - 1,
            DynkinFamily::C => r + 1,
            DynkinFamily::D => 2 * r - 2,
            DynkinFamily::E => match r {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            DynkinFamily::F => 9,
            DynkinFamily::G => 4,
        }
    }
}

impl fmt::Display for SimpleLieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// A simple affine Lie algebra at a positive integer level.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AffineAlgebra {
    ty: SimpleLieType,
    level: u64,
}

impl AffineAlgebra {
    pub fn new(ty: SimpleLieType, level: u64) -> Result<Self, AffineError> {
        if level == 0 {
            return Err(AffineError::InvalidLevel { level: 0 });
        }
        Ok(AffineAlgebra { ty, level })
    }

    pub fn lie_type(&self) -> SimpleLieType {
        self.ty
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Exact central charge `k * dim / (k + h)`.
    pub fn central_charge(&self) -> BigRational {
        let num = BigInt::from(self.level) * BigInt::from(self.ty.dimension());
        let den = BigInt::from(self.level) + BigInt::from(self.ty.dual_coxeter());
        BigRational::new(num, den)
    }

    /// Central charge reduced into the additive circle of period 8.
    pub fn charge_mod8(&self) -> CentralCharge {
        CentralCharge::new(self.central_charge())
    }
}

impl fmt::Display for AffineAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.ty, self.level)
    }
}

/// How a factor symbol is written in the data files.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlgebraSymbol {
    /// Direct Dynkin notation, e.g. `A(n)` or `B4`.
    Dynkin { family: DynkinFamily, rank: IntExpr },
    /// `su(n)`, meaning `A_{n-1}` at the same level.
    Su(IntExpr),
    /// `so(n)` with its low-rank conventions (see [`FactorSpec::resolve`]).
    So(IntExpr),
    /// `sp(n)` for even `n = 2m`, meaning `C_m` at the same level.
    Sp(IntExpr),
    /// The circle-line symbol `u1`, carrying central charge 1.
    U1,
}

/// One factor of a product: a symbol together with a level expression.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorSpec {
    pub symbol: AlgebraSymbol,
    pub level: IntExpr,
}

/// Result of resolving a factor under a parameter assignment.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Resolution {
    /// One or more honest affine algebras (e.g. `so(4)` splits in two).
    Factors(Vec<AffineAlgebra>),
    /// The `u1` symbol: central charge 1 by convention.
    CircleLine,
    /// A corner the conventions leave undefined; carries the reason.
    Unsupported(String),
}

impl Resolution {
    /// Exact central charge, or `None` for unsupported symbols.
    pub fn central_charge(&self) -> Option<BigRational> {
        match self {
            Resolution::Factors(fs) => Some(
                fs.iter()
                    .map(AffineAlgebra::central_charge)
                    .fold(BigRational::from(BigInt::from(0)), |a, b| a + b),
            ),
            Resolution::CircleLine => Some(BigRational::one()),
            Resolution::Unsupported(_) => None,
        }
    }
}

fn affine(family: DynkinFamily, rank: u64, level: i64) -> Result<AffineAlgebra, AffineError> {
    if level < 1 {
        return Err(AffineError::InvalidLevel { level });
    }
    AffineAlgebra::new(SimpleLieType::new(family, rank)?, level as u64)
}

fn one_factor(
    family: DynkinFamily,
    rank: u64,
    level: i64,
) -> Result<Resolution, AffineError> {
    Ok(Resolution::Factors(vec![affine(family, rank, level)?]))
}

/// Resolves direct Dynkin notation, including the identifications that
/// are forced by the symplectic alias (`C1 = sp(2) = A1` at the same
/// level). Ranks below a family's minimum that have no such forced
/// meaning (`B1`, `D1`, `D2`, rank 0) are reported as unsupported rather
/// than guessed, because the orthogonal conventions would introduce level
/// rescalings that direct Dynkin notation does not determine.
fn resolve_dynkin(family: DynkinFamily, rank: i64, level: i64) -> Result<Resolution, AffineError> {
    if rank < 0 {
        return Err(AffineError::InvalidRank {
            family: family.letter(),
            rank,
        });
    }
    let r = rank as u64;
    match (family, r) {
        (DynkinFamily::A, 0) => Ok(Resolution::Unsupported(String::from(
            "A0 denotes the trivial algebra",
        ))),
        (DynkinFamily::A, _) => one_factor(DynkinFamily::A, r, level),
        (DynkinFamily::B, 0) | (DynkinFamily::C, 0) | (DynkinFamily::D, 0) => Ok(
            Resolution::Unsupported(format!("{}0 is undefined", family.letter())),
        ),
        (DynkinFamily::B, 1) => Ok(Resolution::Unsupported(String::from(
            "B1 has no level convention in Dynkin notation (use so(3))",
        ))),
        (DynkinFamily::B, _) => one_factor(DynkinFamily::B, r, level),
        (DynkinFamily::C, 1) => one_factor(DynkinFamily::A, 1, level),
        (DynkinFamily::C, _) => one_factor(DynkinFamily::C, r, level),
        (DynkinFamily::D, 1) => Ok(Resolution::Unsupported(String::from(
            "D1 has no assigned charge convention",
        ))),
        (DynkinFamily::D, 2) => Ok(Resolution::Unsupported(String::from(
            "D2 has no level convention in Dynkin notation (use so(4))",
        ))),
        (DynkinFamily::D, _) => one_factor(DynkinFamily::D, r, level),
        (DynkinFamily::E, _) | (DynkinFamily::F, _) | (DynkinFamily::G, _) => {
            one_factor(family, r, level)
        }
    }
}

fn resolve_su(n: i64, level: i64) -> Result<Resolution, AffineError> {
    if n < 0 {
        return Err(AffineError::InvalidRank { family: 'A', rank: n });
    }
    match n {
        0 => Err(AffineError::InvalidRank { family: 'A', rank: -1 }),
        1 => Ok(Resolution::Unsupported(String::from(
            "su(1) is the trivial algebra",
        ))),
        _ => one_factor(DynkinFamily::A, (n - 1) as u64, level),
    }
}

fn resolve_so(n: i64, level: i64) -> Result<Resolution, AffineError> {
    if n < 0 {
        return Err(AffineError::InvalidRank { family: 'B', rank: n });
    }
    match n {
        0 => Err(AffineError::InvalidRank { family: 'D', rank: 0 }),
        1 | 2 => Ok(Resolution::Unsupported(format!(
            "so({n}) has no assigned charge convention"
        ))),
        // so(3) at level k is A1 at level 2k (the embedding index doubles
        // the level under the vector-representation normalisation).
        3 => {
            let doubled = level.checked_mul(2).ok_or(ExprError::Overflow)?;
            one_factor(DynkinFamily::A, 1, doubled)
        }
        // so(4) splits as A1 x A1, both at the same level.
        4 => Ok(Resolution::Factors(vec![
            affine(DynkinFamily::A, 1, level)?,
            affine(DynkinFamily::A, 1, level)?,
        ])),
        5 => one_factor(DynkinFamily::C, 2, level),
        6 => one_factor(DynkinFamily::A, 3, level),
        n if n % 2 == 1 => one_factor(DynkinFamily::B, ((n - 1) / 2) as u64, level),
        n => one_factor(DynkinFamily::D, (n / 2) as u64, level),
    }
}

fn resolve_sp(n: i64, level: i64) -> Result<Resolution, AffineError> {
    if n < 0 {
        return Err(AffineError::InvalidRank { family: 'C', rank: n });
    }
    if n % 2 != 0 {
        return Err(AffineError::SpArgumentOdd { arg: n });
    }
    match n / 2 {
        0 => Err(AffineError::InvalidRank { family: 'C', rank: 0 }),
        1 => one_factor(DynkinFamily::A, 1, level),
        m => one_factor(DynkinFamily::C, m as u64, level),
    }
}

impl FactorSpec {
    /// Resolves the symbol and level under a parameter assignment.
    ///
    /// A level below one is a corner of a parametrised family (the
    /// degenerate trivial category), not a malformed symbol, so it resolves
    /// to [`Resolution::Unsupported`] rather than an error.
    pub fn resolve(
        &self,
        env: &alloc::collections::BTreeMap<String, i64>,
    ) -> Result<Resolution, AffineError> {
        let level = self.level.eval(env)?;
        if level < 1 {
            return Ok(Resolution::Unsupported(format!(
                "level {level} is below one"
            )));
        }
        match &self.symbol {
            AlgebraSymbol::Dynkin { family, rank } => {
                resolve_dynkin(*family, rank.eval(env)?, level)
            }
            AlgebraSymbol::Su(n) => resolve_su(n.eval(env)?, level),
            AlgebraSymbol::So(n) => resolve_so(n.eval(env)?, level),
            AlgebraSymbol::Sp(n) => resolve_sp(n.eval(env)?, level),
            AlgebraSymbol::U1 => Ok(Resolution::CircleLine),
        }
    }
}

impl fmt::Display for AlgebraSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn expr_label(e: &IntExpr) -> String {
            match e {
                IntExpr::Const(v) => format!("{v}"),
                IntExpr::Var(name) => name.clone(),
                _ => String::from("<expr>"),
            }
        }
        match self {
            AlgebraSymbol::Dynkin { family, rank } => {
                write!(f, "{}({})", family.letter(), expr_label(rank))
            }
            AlgebraSymbol::Su(n) => write!(f, "su({})", expr_label(n)),
            AlgebraSymbol::So(n) => write!(f, "so({})", expr_label(n)),
            AlgebraSymbol::Sp(n) => write!(f, "sp({})", expr_label(n)),
            AlgebraSymbol::U1 => write!(f, "u1"),
        }
    }
}

/// Central charge `c_m = 1 - 6/((m+2)(m+3))` of the unitary Virasoro
/// minimal model, exact.
pub fn virasoro_charge(m: i64) -> Result<BigRational, AffineError> {
    if m < 1 {
        return Err(AffineError::VirasoroIndex { m });
    }
    let den = BigInt::from(m + 2) * BigInt::from(m + 3);
    Ok(BigRational::one() - BigRational::new(BigInt::from(6), den))
}

/// Charge of the integer-spin sector of `sl(2)` at odd level `k >= 3`:
/// `3k/(k+2) + (-1)^((k+1)/2)` in the circle of period 8.
pub fn plus_sector_charge(k: i64) -> Result<CentralCharge, AffineError> {
    if k < 3 || k % 2 == 0 {
        return Err(AffineError::PlusSectorLevel { level: k });
    }
    let base = BigRational::new(BigInt::from(3 * k), BigInt::from(k + 2));
    let sign = if ((k + 1) / 2) % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    };
    Ok(CentralCharge::new(base + sign))
}

/// Formats an exact central charge for display.
pub fn format_charge(c: &BigRational) -> String {
    format_rational(c)
}
