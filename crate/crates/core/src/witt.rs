//! Witt classes of metric groups.
//!
//! Two metric groups are Witt-equivalent when they become isometric after
//! adding split (hyperbolic-type) summands; every class contains an
//! anisotropic representative, unique up to isometry, which is what a
//! [`WittClass`] stores. Reduction repeatedly passes to `H^perp / H` for a
//! cyclic isotropic `H`, which strictly shrinks the group, so it terminates.

use alloc::vec::Vec;
use core::fmt;

use crate::charge::{additive_charge, CentralCharge, ChargeError};
use crate::qform::{PreMetricGroup, QformError, DEFAULT_ISOMETRY_CAP};
use crate::abelian::{FiniteAbelianGroup, Subgroup};

/// Bound on the class order search; every class order divides 8, so this is
/// a safety margin, not a tuning knob.
pub const ORDER_SEARCH_BOUND: u32 = 16;

/// Default cap on the number of classes a span enumeration may discover.
pub const DEFAULT_SPAN_CAP: usize = 256;

/// Which isotropic element the reduction quotients by next. The resulting
/// anisotropic representative is independent of the rule (up to isometry);
/// property tests exercise both.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum PivotRule {
    /// First isotropic element in enumeration order.
    #[default]
    LexFirst,
    /// Last isotropic element in enumeration order.
    LexLast,
}

/// Errors from Witt-class arithmetic.
#[derive(Clone, PartialEq, Debug)]
pub enum WittError {
    /// The input form is degenerate, so it has no Witt class.
    Degenerate,
    /// An underlying form-level operation failed (e.g. isometry cap).
    Qform(QformError),
    /// Charge evaluation failed, which certifies degeneracy of an internal
    /// representative and therefore a library bug upstream.
    Charge(ChargeError),
    /// The order search exceeded its bound.
    OrderUnbounded { bound: u32 },
    /// A span enumeration exceeded its class cap.
    SpanTooLarge { cap: usize },
}

impl fmt::Display for WittError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WittError::Degenerate => write!(f, "degenerate form has no Witt class"),
            WittError::Qform(e) => write!(f, "{e}"),
            WittError::Charge(e) => write!(f, "{e}"),
            WittError::OrderUnbounded { bound } => {
                write!(f, "no multiple up to {bound} vanished")
            }
            WittError::SpanTooLarge { cap } => {
                write!(f, "span enumeration exceeded {cap} classes")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for WittError {}

impl From<QformError> for WittError {
    fn from(e: QformError) -> Self {
        WittError::Qform(e)
    }
}

impl From<ChargeError> for WittError {
    fn from(e: ChargeError) -> Self {
        WittError::Charge(e)
    }
}

/// Reduces a metric group to an anisotropic representative of its Witt
/// class, quotienting by the first isotropic element each round.
pub fn reduce_anisotropic(pm: &PreMetricGroup) -> PreMetricGroup {
    reduce_anisotropic_with(pm, PivotRule::LexFirst)
}

/// [`reduce_anisotropic`] with an explicit pivot rule.
pub fn reduce_anisotropic_with(pm: &PreMetricGroup, rule: PivotRule) -> PreMetricGroup {
    let mut current = pm.clone();
    loop {
        let pivot = match rule {
            PivotRule::LexFirst => current.isotropic_elements().next(),
            PivotRule::LexLast => current.isotropic_elements().last(),
        };
        let Some(x) = pivot else {
            return current;
        };
        let h = Subgroup::from_generators(current.group(), &[x]);
        current = current
            .m_subquotient(&h)
            .expect("a cyclic group generated by an isotropic element is isotropic");
    }
}

/// A Witt class, stored as its anisotropic representative.
#[derive(Clone, Debug)]
pub struct WittClass {
    rep: PreMetricGroup,
}

impl WittClass {
    /// Class of a metric group; rejects degenerate forms.
    pub fn from_metric(pm: &PreMetricGroup) -> Result<WittClass, WittError> {
        if !pm.is_nondegenerate() {
            return Err(WittError::Degenerate);
        }
        Ok(WittClass {
            rep: reduce_anisotropic(pm),
        })
    }

    /// The zero class (trivial representative).
    pub fn zero() -> WittClass {
        let group = FiniteAbelianGroup::trivial();
        WittClass {
            rep: PreMetricGroup::from_parts_unchecked(group, alloc::vec![crate::rational::QmodZ::zero()]),
        }
    }

    /// The anisotropic representative.
    pub fn representative(&self) -> &PreMetricGroup {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.group().is_trivial()
    }

    /// Sum of classes: direct sum of representatives, re-reduced.
    pub fn add(&self, other: &WittClass) -> WittClass {
        WittClass {
            rep: reduce_anisotropic(&self.rep.direct_sum(&other.rep)),
        }
    }

    /// Inverse class: the reversed form is already anisotropic.
    pub fn neg(&self) -> WittClass {
        WittClass {
            rep: self.rep.reverse(),
        }
    }

    /// The additive charge of the class (a Witt invariant).
    pub fn charge(&self) -> Result<CentralCharge, WittError> {
        Ok(additive_charge(&self.rep)?)
    }

    /// Class equality via isometry of anisotropic representatives, behind
    /// cheap invariant fast paths (charge, group shape, value multiset).
    pub fn equals(&self, other: &WittClass) -> Result<bool, WittError> {
        self.equals_with_cap(other, DEFAULT_ISOMETRY_CAP)
    }

    pub fn equals_with_cap(&self, other: &WittClass, cap: u64) -> Result<bool, WittError> {
        if self.charge()? != other.charge()? {
            return Ok(false);
        }
        Ok(self.rep.isometric_with_cap(&other.rep, cap)?)
    }

    /// Additive order of the class; always a divisor of 8, searched up to
    /// [`ORDER_SEARCH_BOUND`] as a safety net.
    pub fn order(&self) -> Result<u32, WittError> {
        let mut acc = self.clone();
        for k in 1..=ORDER_SEARCH_BOUND {
            if acc.is_zero() {
                return Ok(k); // acc holds k * self at this point
            }
            acc = acc.add(self);
        }
        Err(WittError::OrderUnbounded {
            bound: ORDER_SEARCH_BOUND,
        })
    }

    /// Splits the class into its Sylow components `(p, class of the p-part)`.
    pub fn decompose(&self) -> Vec<(u64, WittClass)> {
        self.rep
            .primes()
            .into_iter()
            .map(|p| {
                // A restriction of an anisotropic form stays anisotropic.
                (p, WittClass { rep: self.rep.prime_part(p) })
            })
            .collect()
    }
}

/// Enumerates the subgroup of the Witt group generated by the given classes,
/// with default caps.
pub fn generated_subgroup(gens: &[WittClass]) -> Result<Vec<WittClass>, WittError> {
    generated_subgroup_with_caps(gens, DEFAULT_SPAN_CAP, DEFAULT_ISOMETRY_CAP)
}

/// Breadth-first closure of `{0}` under addition of the generators. The
/// result lists pairwise distinct classes, zero first, in discovery order.
pub fn generated_subgroup_with_caps(
    gens: &[WittClass],
    span_cap: usize,
    isometry_cap: u64,
) -> Result<Vec<WittClass>, WittError> {
    let mut classes: Vec<WittClass> = alloc::vec![WittClass::zero()];
    let mut frontier: Vec<usize> = alloc::vec![0];
    while let Some(i) = frontier.pop() {
        for g in gens {
            let sum = classes[i].add(g);
            let mut known = false;
            for c in &classes {
                if c.equals_with_cap(&sum, isometry_cap)? {
                    known = true;
                    break;
                }
            }
            if !known {
                classes.push(sum);
                if classes.len() > span_cap {
                    return Err(WittError::SpanTooLarge { cap: span_cap });
                }
                frontier.push(classes.len() - 1);
            }
        }
    }
    Ok(classes)
}
