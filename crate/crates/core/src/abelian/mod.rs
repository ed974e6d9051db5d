//! Finite abelian groups presented as `Z/n_1 + ... + Z/n_r`.
//!
//! Elements are coordinate vectors reduced modulo the cyclic orders. Subgroups
//! are stored with their full element closure (the library targets small
//! groups, enforced by callers via an order cap), while quotients go through
//! Smith normal form so the projection and a section come out as exact integer
//! matrices.

pub mod matrix;

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use matrix::{smith_normal_form, IntMatrix};

/// Errors from group construction and coordinate handling.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AbelianError {
    /// A cyclic factor was given order zero.
    ZeroModulus,
    /// A coordinate vector has the wrong number of entries.
    CoordinateLength { expected: usize, got: usize },
}

impl fmt::Display for AbelianError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbelianError::ZeroModulus => write!(f, "cyclic factor of order zero"),
            AbelianError::CoordinateLength { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AbelianError {}

/// An element, as coordinates `x_i` with `0 <= x_i < n_i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `Z/n_1 + ... + Z/n_r` with the cyclic orders as given (not normalised).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

impl FiniteAbelianGroup {
    /// Builds the group; every order must be positive (order 1 factors are
    /// legal and contribute a frozen coordinate).
    pub fn new(orders: &[u64]) -> Result<Self, AbelianError> {
        if orders.contains(&0) {
            return Err(AbelianError::ZeroModulus);
        }
        Ok(FiniteAbelianGroup {
            orders: orders.to_vec(),
        })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { orders: Vec::new() }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of cyclic coordinates.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Exact group order (product of the cyclic orders).
    pub fn order(&self) -> BigInt {
        self.orders
            .iter()
            .fold(BigInt::one(), |acc, &n| acc * BigInt::from(n))
    }

    /// Group order if it fits in `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.orders
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.iter().all(|&n| n == 1)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.orders.len()],
        }
    }

    /// Builds an element from signed coordinates, reducing modulo each order.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement, AbelianError> {
        if coords.len() != self.orders.len() {
            return Err(AbelianError::CoordinateLength {
                expected: self.orders.len(),
                got: coords.len(),
            });
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.orders)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
                .collect(),
        })
    }

    /// Builds an element from arbitrary-precision coordinates.
    pub fn element_from_bigints(&self, coords: &[BigInt]) -> Result<GroupElement, AbelianError> {
        if coords.len() != self.orders.len() {
            return Err(AbelianError::CoordinateLength {
                expected: self.orders.len(),
                got: coords.len(),
            });
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.orders)
                .map(|(c, &n)| {
                    c.mod_floor(&BigInt::from(n))
                        .to_u64()
                        .expect("residue below a u64 modulus")
                })
                .collect(),
        })
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .zip(&self.orders)
                .map(|((&x, &y), &n)| (x + y) % n.max(1))
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.orders)
                .map(|(&x, &n)| if x == 0 { 0 } else { n - x })
                .collect(),
        }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    /// `k * a` for any signed integer `k`.
    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.orders)
                .map(|(&x, &n)| {
                    let n128 = n as u128;
                    let xk = (x as u128 % n128) * (k.rem_euclid(n as i64) as u128) % n128;
                    xk as u64
                })
                .collect(),
        }
    }

    /// Additive order of an element.
    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.coords
            .iter()
            .zip(&self.orders)
            .map(|(&x, &n)| n / x.gcd(&n))
            .fold(1u64, |acc, o| acc.lcm(&o))
    }

    /// Standard generator `e_k`.
    pub fn generator(&self, k: usize) -> GroupElement {
        let mut coords = vec![0; self.orders.len()];
        coords[k] = if self.orders[k] == 1 { 0 } else { 1 };
        GroupElement { coords }
    }

    /// Iterates over all elements in mixed-radix order.
    pub fn elements(&self) -> ElementIter<'_> {
        ElementIter {
            group: self,
            next: Some(vec![0; self.orders.len()]),
        }
    }

    /// Mixed-radix index of an element, matching the order of [`elements`].
    ///
    /// The first coordinate varies slowest.
    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.coords
            .iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&x, &n)| acc * n as usize + x as usize)
    }

    /// Inverse of [`index_of`].
    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut coords = vec![0u64; self.orders.len()];
        for i in (0..self.orders.len()).rev() {
            let n = self.orders[i] as usize;
            coords[i] = (idx % n) as u64;
            idx /= n;
        }
        GroupElement { coords }
    }

    /// Concatenation `self + other` of coordinate blocks.
    pub fn direct_sum(&self, other: &FiniteAbelianGroup) -> FiniteAbelianGroup {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        FiniteAbelianGroup { orders }
    }

    /// Embeds an element of the left summand into the direct sum.
    pub fn pair(&self, left: &GroupElement, right: &GroupElement) -> GroupElement {
        let mut coords = left.coords.clone();
        coords.extend_from_slice(&right.coords);
        GroupElement { coords }
    }

    /// Invariant factors `d_1 | d_2 | ... | d_k` (all `> 1`) of the group.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let active: Vec<u64> = self.orders.iter().copied().filter(|&n| n > 1).collect();
        let r = active.len();
        let mut m = IntMatrix::zero(r, r);
        for (i, &n) in active.iter().enumerate() {
            m.set(i, i, BigInt::from(n));
        }
        smith_normal_form(&m)
            .diagonal()
            .iter()
            .filter(|d| **d > BigInt::one())
            .map(|d| d.to_u64().expect("factor divides a u64 order"))
            .collect()
    }

    /// Whether the two groups are abstractly isomorphic.
    pub fn is_isomorphic(&self, other: &FiniteAbelianGroup) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }

    /// Human-readable shape such as `Z/2 + Z/4`.
    pub fn shape_string(&self) -> String {
        use core::fmt::Write;
        let factors = self.invariant_factors();
        if factors.is_empty() {
            return String::from("0");
        }
        let mut s = String::new();
        for (i, d) in factors.iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let _ = write!(s, "Z/{d}");
        }
        s
    }
}

/// Mixed-radix odometer over all group elements.
pub struct ElementIter<'a> {
    group: &'a FiniteAbelianGroup,
    next: Option<Vec<u64>>,
}

impl Iterator for ElementIter<'_> {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        let coords = self.next.take()?;
        let mut succ = coords.clone();
        let mut carried = true;
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.group.orders[i] {
                carried = false;
                break;
            }
            succ[i] = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(GroupElement { coords })
    }
}

/// A subgroup stored with its full element closure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subgroup {
    generators: Vec<GroupElement>,
    elements: BTreeSet<GroupElement>,
}

impl Subgroup {
    /// Closes the generating set under addition.
    pub fn from_generators(group: &FiniteAbelianGroup, gens: &[GroupElement]) -> Subgroup {
        let mut elements = BTreeSet::new();
        elements.insert(group.zero());
        let mut frontier: Vec<GroupElement> = vec![group.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = group.add(&x, g);
                if elements.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Subgroup {
            generators: gens.to_vec(),
            elements,
        }
    }

    /// The subgroup of all elements satisfying a predicate, assuming the
    /// predicate cuts out a subgroup (the closure property is the caller's
    /// invariant; membership is taken literally).
    pub fn from_elements(elements: BTreeSet<GroupElement>) -> Subgroup {
        Subgroup {
            generators: elements.iter().cloned().collect(),
            elements,
        }
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.elements.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupElement> {
        self.elements.iter()
    }

    /// A small generating set: greedily keeps elements that enlarge the span.
    pub fn small_generating_set(&self, group: &FiniteAbelianGroup) -> Vec<GroupElement> {
        let mut gens: Vec<GroupElement> = Vec::new();
        let mut span = Subgroup::from_generators(group, &gens);
        // Largest order first tends to finish in very few passes.
        let mut by_order: Vec<&GroupElement> = self.elements.iter().collect();
        by_order.sort_by_key(|e| core::cmp::Reverse(group.element_order(e)));
        for e in by_order {
            if span.order() == self.order() {
                break;
            }
            if !span.contains(e) {
                gens.push(e.clone());
                span = Subgroup::from_generators(group, &gens);
            }
        }
        gens
    }
}

/// The quotient `A/H` together with exact projection and section maps.
pub struct QuotientMap {
    quotient: FiniteAbelianGroup,
    u: IntMatrix,
    u_inv: IntMatrix,
    /// Coordinates of the Smith form kept in the quotient (diagonal `> 1`).
    kept: Vec<usize>,
    diag: Vec<BigInt>,
}

impl QuotientMap {
    pub fn quotient_group(&self) -> &FiniteAbelianGroup {
        &self.quotient
    }

    /// Image of `x` under the canonical projection `A -> A/H`.
    pub fn project(&self, x: &GroupElement) -> GroupElement {
        let xv: Vec<BigInt> = x.coords().iter().map(|&c| BigInt::from(c)).collect();
        let y = self.u.mul_vec(&xv);
        let coords: Vec<BigInt> = self.kept.iter().map(|&i| y[i].clone()).collect();
        self.quotient
            .element_from_bigints(&coords)
            .expect("projection has quotient rank")
    }

    /// A preimage of a quotient element under the projection.
    pub fn lift(&self, ambient: &FiniteAbelianGroup, q: &GroupElement) -> GroupElement {
        let mut y = vec![BigInt::zero(); self.diag.len()];
        for (slot, &i) in self.kept.iter().enumerate() {
            y[i] = BigInt::from(q.coords()[slot]);
        }
        let x = self.u_inv.mul_vec(&y);
        ambient
            .element_from_bigints(&x)
            .expect("section has ambient rank")
    }
}

/// Quotient of `A` by the subgroup generated by `gens`, via the Smith normal
/// form of the relation matrix `[diag(n_i) | gens]`.
pub fn quotient(a: &FiniteAbelianGroup, gens: &[GroupElement]) -> QuotientMap {
    let r = a.rank();
    let s = gens.len();
    let mut m = IntMatrix::zero(r, r + s);
    for (i, &n) in a.orders().iter().enumerate() {
        m.set(i, i, BigInt::from(n));
    }
    for (j, g) in gens.iter().enumerate() {
        for (i, &c) in g.coords().iter().enumerate() {
            m.set(i, r + j, BigInt::from(c));
        }
    }
    let s_form = smith_normal_form(&m);
    let diag = s_form.diagonal();
    debug_assert_eq!(diag.len(), r, "relation matrix has full row count");
    debug_assert!(
        diag.iter().all(|d| !d.is_zero()),
        "relations include the cyclic orders, so the quotient is finite"
    );
    let mut kept = Vec::new();
    let mut orders = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if *d > BigInt::one() {
            kept.push(i);
            orders.push(d.to_u64().expect("quotient factor divides a u64 order"));
        }
    }
    QuotientMap {
        quotient: FiniteAbelianGroup::new(&orders).expect("positive factors"),
        u: s_form.u,
        u_inv: s_form.u_inv,
        kept,
        diag,
    }
}
