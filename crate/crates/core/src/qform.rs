//! Quadratic forms `q: A -> Q/Z` on finite abelian groups.
//!
//! A *pre-metric group* is a pair `(A, q)` where `q(-x) = q(x)` and the
//! polarisation `b(x, y) = q(x + y) - q(x) - q(y)` is bi-additive; it is a
//! *metric group* when `b` is non-degenerate. Forms are stored as full value
//! tables indexed by [`FiniteAbelianGroup::index_of`], so every operation is
//! exact.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::matrix::{smith_normal_form, IntMatrix, SmithForm};
use crate::abelian::{FiniteAbelianGroup, GroupElement, Subgroup};
use crate::rational::QmodZ;

/// Default cap on the group order accepted by the exhaustive isometry search.
pub const DEFAULT_ISOMETRY_CAP: u64 = 4096;

/// Errors from form construction and form-level operations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum QformError {
    /// The value table does not have one entry per group element.
    TableLength { expected: usize, got: usize },
    /// The group order does not fit in memory as a table.
    OrderOverflow,
    /// The diagonal of the presentation has the wrong length.
    GramDiagonalLength { expected: usize, got: usize },
    /// An off-diagonal entry addresses a non-existent or repeated pair.
    GramIndex { i: usize, j: usize },
    /// The presentation does not descend to the quotient by the cyclic
    /// orders (an order-congruence on entry `(i, j)` fails; `i == j` marks a
    /// diagonal entry).
    GramInconsistent { i: usize, j: usize },
    /// `q(0) != 0`.
    NonzeroAtZero,
    /// `q(-x) != q(x)` at the given element.
    NotSymmetric { x: GroupElement },
    /// The polarisation fails bi-additivity at a generator step.
    NotQuadratic { generator: usize, x: GroupElement, y: GroupElement },
    /// The subgroup handed to an isotropic-only operation carries a non-zero
    /// form value.
    NotIsotropic { x: GroupElement },
    /// The group order exceeds the cap for an exhaustive search.
    GroupTooLarge { order: u64, cap: u64 },
}

impl fmt::Display for QformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QformError::TableLength { expected, got } => {
                write!(f, "form table needs {expected} values, got {got}")
            }
            QformError::OrderOverflow => write!(f, "group order exceeds addressable table size"),
            QformError::GramDiagonalLength { expected, got } => {
                write!(f, "diagonal needs {expected} values, got {got}")
            }
            QformError::GramIndex { i, j } => {
                write!(f, "invalid off-diagonal index pair ({i}, {j})")
            }
            QformError::GramInconsistent { i, j } => {
                if i == j {
                    write!(
                        f,
                        "diagonal value at position {} is not well-defined modulo the cyclic order",
                        i + 1
                    )
                } else {
                    write!(
                        f,
                        "pairing at positions ({}, {}) is not well-defined modulo the cyclic orders",
                        i + 1,
                        j + 1
                    )
                }
            }
            QformError::NonzeroAtZero => write!(f, "q(0) must be 0"),
            QformError::NotSymmetric { x } => write!(f, "q(-x) differs from q(x) at x = {x}"),
            QformError::NotQuadratic { generator, x, y } => write!(
                f,
                "polarisation is not bi-additive: step by generator {generator} fails at x = {x}, y = {y}"
            ),
            QformError::NotIsotropic { x } => {
                write!(f, "subgroup is not isotropic: q({x}) is non-zero")
            }
            QformError::GroupTooLarge { order, cap } => {
                write!(f, "group order {order} exceeds the search cap {cap}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for QformError {}

/// A finite abelian group with a `Q/Z`-valued quadratic form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PreMetricGroup {
    group: FiniteAbelianGroup,
    table: Vec<QmodZ>,
}

impl PreMetricGroup {
    /// Builds a form from its full value table (indexed like
    /// [`FiniteAbelianGroup::elements`]) and validates the quadratic axioms:
    /// `q(0) = 0`, `q(-x) = q(x)`, and bi-additivity of the polarisation via
    /// generator steps. Validation costs `O(rank * |A|^2)` exact additions.
    pub fn from_table(group: FiniteAbelianGroup, table: Vec<QmodZ>) -> Result<Self, QformError> {
        let n = group
            .order_u64()
            .and_then(|n| usize::try_from(n).ok())
            .ok_or(QformError::OrderOverflow)?;
        if table.len() != n {
            return Err(QformError::TableLength { expected: n, got: table.len() });
        }
        let pm = PreMetricGroup { group, table };
        pm.validate()?;
        Ok(pm)
    }

    /// Builds the form `q(x) = sum_i d_i x_i^2 + sum_{i<j} p_ij x_i x_j` from
    /// diagonal values `d_i = q(e_i)` and off-diagonal pairings
    /// `p_ij = b(e_i, e_j)`. The presentation is checked to descend to the
    /// group (order congruences), which already guarantees a quadratic form,
    /// so no table-level revalidation is needed.
    pub fn from_gram(
        group: FiniteAbelianGroup,
        diag: &[QmodZ],
        off: &[(usize, usize, QmodZ)],
    ) -> Result<Self, QformError> {
        let r = group.rank();
        if diag.len() != r {
            return Err(QformError::GramDiagonalLength { expected: r, got: diag.len() });
        }
        let mut pairing = vec![QmodZ::zero(); r * r];
        let mut seen = BTreeSet::new();
        for (i, j, v) in off {
            let (i, j) = (*i, *j);
            if i >= r || j >= r || i == j || !seen.insert((i.min(j), i.max(j))) {
                return Err(QformError::GramIndex { i, j });
            }
            pairing[i * r + j] = v.clone();
            pairing[j * r + i] = v.clone();
        }
        // q(x + n_i e_i) = q(x) needs n_i^2 d_i = 0, 2 n_i d_i = 0 and
        // n_i p_ij = 0 for every j.
        for (i, &n) in group.orders().iter().enumerate() {
            let n_big = BigInt::from(n);
            if !diag[i].scale(&(&n_big * &n_big)).is_zero()
                || !diag[i].scale(&(&n_big * 2)).is_zero()
            {
                return Err(QformError::GramInconsistent { i, j: i });
            }
            for j in 0..r {
                if !pairing[i * r + j].scale(&n_big).is_zero() {
                    return Err(QformError::GramInconsistent { i, j });
                }
            }
        }
        group
            .order_u64()
            .and_then(|n| usize::try_from(n).ok())
            .ok_or(QformError::OrderOverflow)?;
        let table = group
            .elements()
            .map(|x| {
                let mut q = QmodZ::zero();
                for (i, &xi) in x.coords().iter().enumerate() {
                    let xi = BigInt::from(xi);
                    q = q.add(&diag[i].scale(&(&xi * &xi)));
                    for (j, &xj) in x.coords().iter().enumerate().skip(i + 1) {
                        q = q.add(&pairing[i * r + j].scale(&(&xi * xj)));
                    }
                }
                q
            })
            .collect();
        // The congruence checks above are complete: a polynomial in the
        // coordinates with consistent diagonal and pairing terms is
        // automatically a quadratic form, so no table re-validation runs.
        Ok(PreMetricGroup { group, table })
    }

    /// Internal constructor for forms whose axioms hold by construction
    /// (restrictions, direct sums, sign reversal, isotropic subquotients).
    pub(crate) fn from_parts_unchecked(group: FiniteAbelianGroup, table: Vec<QmodZ>) -> Self {
        PreMetricGroup { group, table }
    }

    fn validate(&self) -> Result<(), QformError> {
        if !self.q_at(0).is_zero() {
            return Err(QformError::NonzeroAtZero);
        }
        for x in self.group.elements() {
            if self.q(&x) != self.q(&self.group.neg(&x)) {
                return Err(QformError::NotSymmetric { x });
            }
        }
        for k in 0..self.group.rank() {
            if self.group.orders()[k] <= 1 {
                continue;
            }
            let e_k = self.group.generator(k);
            for x in self.group.elements() {
                let x_step = self.group.add(&x, &e_k);
                for y in self.group.elements() {
                    let lhs = self.bilinear(&x_step, &y);
                    let rhs = self.bilinear(&x, &y).add(&self.bilinear(&e_k, &y));
                    if lhs != rhs {
                        return Err(QformError::NotQuadratic { generator: k, x, y });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Value table in element-enumeration order.
    pub fn q_values(&self) -> &[QmodZ] {
        &self.table
    }

    pub fn q(&self, x: &GroupElement) -> QmodZ {
        self.table[self.group.index_of(x)].clone()
    }

    fn q_at(&self, idx: usize) -> &QmodZ {
        &self.table[idx]
    }

    /// Polarisation `b(x, y) = q(x + y) - q(x) - q(y)`.
    pub fn bilinear(&self, x: &GroupElement, y: &GroupElement) -> QmodZ {
        self.q(&self.group.add(x, y)).sub(&self.q(x)).sub(&self.q(y))
    }

    /// Whether the polarisation has trivial radical.
    pub fn is_nondegenerate(&self) -> bool {
        let gens: Vec<GroupElement> = (0..self.group.rank())
            .filter(|&k| self.group.orders()[k] > 1)
            .map(|k| self.group.generator(k))
            .collect();
        self.group
            .elements()
            .filter(|x| x != &self.group.zero())
            .all(|x| gens.iter().any(|e| !self.bilinear(&x, e).is_zero()))
    }

    /// Whether `q(x) != 0` for every non-zero `x`.
    pub fn is_anisotropic(&self) -> bool {
        self.isotropic_elements().next().is_none()
    }

    /// Non-zero elements with vanishing form value, in enumeration order.
    pub fn isotropic_elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let zero = self.group.zero();
        self.group
            .elements()
            .filter(move |x| *x != zero && self.q(x).is_zero())
    }

    /// Subgroup of elements orthogonal to all of `h` under the polarisation.
    pub fn orthogonal_complement(&self, h: &Subgroup) -> Subgroup {
        let gens = h.small_generating_set(&self.group);
        let elements: BTreeSet<GroupElement> = self
            .group
            .elements()
            .filter(|x| gens.iter().all(|g| self.bilinear(x, g).is_zero()))
            .collect();
        Subgroup::from_elements(elements)
    }

    /// Whether the form vanishes identically on the subgroup.
    pub fn is_isotropic_subgroup(&self, h: &Subgroup) -> bool {
        h.iter().all(|x| self.q(x).is_zero())
    }

    /// The induced form on `H^perp / H` for an isotropic subgroup `H`.
    ///
    /// The quotient is presented through Smith normal form of the relation
    /// lattice, the induced values are read off by solving each element of
    /// `H^perp` back through the presentation, and constancy of `q` on cosets
    /// is verified on the way (a failure would contradict isotropy and aborts
    /// loudly). Non-degeneracy is preserved and asserted.
    pub fn m_subquotient(&self, h: &Subgroup) -> Result<PreMetricGroup, QformError> {
        if let Some(x) = h.iter().find(|x| !self.q(x).is_zero()) {
            return Err(QformError::NotIsotropic { x: x.clone() });
        }
        let perp = self.orthogonal_complement(h);
        let k_gens = perp.small_generating_set(&self.group);
        let s = k_gens.len();
        let r = self.group.rank();

        // phi: Z^s -> A, z -> sum z_j k_j. Solving [K | diag(n)] recovers a
        // preimage under phi for any element of H^perp.
        let mut mat = IntMatrix::zero(r, s + r);
        for (j, g) in k_gens.iter().enumerate() {
            for (i, &c) in g.coords().iter().enumerate() {
                mat.set(i, j, BigInt::from(c));
            }
        }
        for (i, &n) in self.group.orders().iter().enumerate() {
            mat.set(i, s + i, BigInt::from(n));
        }
        let snf = smith_normal_form(&mat);
        let preimage = |x: &GroupElement, snf: &SmithForm| -> Vec<BigInt> {
            let b: Vec<BigInt> = x.coords().iter().map(|&c| BigInt::from(c)).collect();
            let mut sol = snf
                .solve(&b)
                .expect("element of the orthogonal complement lies in the span");
            sol.truncate(s);
            sol
        };

        // The quotient lattice L = phi^{-1}(H) is generated by ker(phi)
        // together with preimages of generators of H.
        let mut l_cols: Vec<Vec<BigInt>> = snf
            .kernel_basis()
            .into_iter()
            .map(|mut v| {
                v.truncate(s);
                v
            })
            .collect();
        for g in h.small_generating_set(&self.group) {
            l_cols.push(preimage(&g, &snf));
        }
        let mut l_mat = IntMatrix::zero(s, l_cols.len());
        for (j, col) in l_cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                l_mat.set(i, j, v.clone());
            }
        }
        let l_snf = smith_normal_form(&l_mat);
        let diag = l_snf.diagonal();
        debug_assert!(
            diag.iter().all(|d| !d.is_zero()) && diag.len() == s,
            "kernel of phi has full rank, so the quotient is finite"
        );
        let mut kept = Vec::new();
        let mut orders = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            if *d > BigInt::from(1) {
                kept.push(i);
                orders.push(u64::try_from(d.clone()).expect("quotient factor fits u64"));
            }
        }
        let q_group = FiniteAbelianGroup::new(&orders).expect("positive factors");
        let q_order = q_group
            .order_u64()
            .and_then(|n| usize::try_from(n).ok())
            .expect("quotient no larger than the source");

        let mut table: Vec<Option<QmodZ>> = vec![None; q_order];
        for x in perp.iter() {
            let z = preimage(x, &snf);
            let image = l_snf.u.mul_vec(&z);
            let coords: Vec<BigInt> = kept.iter().map(|&i| image[i].clone()).collect();
            let c = q_group
                .element_from_bigints(&coords)
                .expect("projection has quotient rank");
            let idx = q_group.index_of(&c);
            let value = self.q(x);
            match &table[idx] {
                None => table[idx] = Some(value),
                Some(v) => assert_eq!(
                    v, &value,
                    "form must be constant on cosets of an isotropic subgroup"
                ),
            }
        }
        let table: Vec<QmodZ> = table
            .into_iter()
            .map(|v| v.expect("projection of the complement covers the quotient"))
            .collect();
        assert_eq!(
            q_order * h.order(),
            perp.order(),
            "quotient order times subgroup order is the complement order"
        );
        let out = PreMetricGroup::from_parts_unchecked(q_group, table);
        assert!(
            !self.is_nondegenerate() || out.is_nondegenerate(),
            "isotropic subquotient preserves non-degeneracy"
        );
        Ok(out)
    }

    /// Orthogonal direct sum `(A + B, q_A + q_B)`.
    pub fn direct_sum(&self, other: &PreMetricGroup) -> PreMetricGroup {
        let group = self.group.direct_sum(&other.group);
        let nb = other.table.len();
        let mut table = Vec::with_capacity(self.table.len() * nb);
        for qa in &self.table {
            for qb in &other.table {
                table.push(qa.add(qb));
            }
        }
        debug_assert_eq!(table.len(), nb * self.table.len());
        // Index layout agrees: the left block's coordinates vary slowest.
        PreMetricGroup::from_parts_unchecked(group, table)
    }

    /// Same group with the negated form.
    pub fn reverse(&self) -> PreMetricGroup {
        let table = self.table.iter().map(QmodZ::neg).collect();
        PreMetricGroup::from_parts_unchecked(self.group.clone(), table)
    }

    /// Primes dividing the group order, ascending.
    pub fn primes(&self) -> Vec<u64> {
        let mut out = BTreeSet::new();
        for &n in self.group.orders() {
            let mut m = n;
            let mut d = 2;
            while d * d <= m {
                if m % d == 0 {
                    out.insert(d);
                    while m % d == 0 {
                        m /= d;
                    }
                }
                d += 1;
            }
            if m > 1 {
                out.insert(m);
            }
        }
        out.into_iter().collect()
    }

    /// The restriction of the form to the Sylow `p`-subgroup, presented on
    /// its own coordinates.
    pub fn prime_part(&self, p: u64) -> PreMetricGroup {
        let mut part_orders = Vec::new();
        let mut slots = Vec::new(); // (source coordinate, cofactor m_i)
        for (i, &n) in self.group.orders().iter().enumerate() {
            let mut pk = 1u64;
            let mut m = n;
            while m % p == 0 {
                pk *= p;
                m /= p;
            }
            if pk > 1 {
                part_orders.push(pk);
                slots.push((i, m));
            }
        }
        let part = FiniteAbelianGroup::new(&part_orders).expect("positive factors");
        let table = part
            .elements()
            .map(|x| {
                let mut coords = vec![0i64; self.group.rank()];
                for (slot, &(i, m)) in slots.iter().enumerate() {
                    coords[i] = (x.coords()[slot] as i64).wrapping_mul(m as i64);
                }
                let image = self
                    .group
                    .element(&coords)
                    .expect("embedding has source rank");
                self.q(&image)
            })
            .collect();
        PreMetricGroup::from_parts_unchecked(part, table)
    }

    /// Exhaustive isometry test with the default order cap.
    pub fn isometric(&self, other: &PreMetricGroup) -> Result<bool, QformError> {
        self.isometric_with_cap(other, DEFAULT_ISOMETRY_CAP)
    }

    /// Exhaustive isometry test: searches for a form-preserving isomorphism
    /// by assigning images to the cyclic generators, pruning on form values,
    /// pairings, and partial-span orders. Worst-case exponential in the rank;
    /// the cap bounds the group order up front.
    pub fn isometric_with_cap(
        &self,
        other: &PreMetricGroup,
        cap: u64,
    ) -> Result<bool, QformError> {
        for pm in [self, other] {
            let order = pm.group.order_u64().ok_or(QformError::OrderOverflow)?;
            if order > cap {
                return Err(QformError::GroupTooLarge { order, cap });
            }
        }
        if self.group.order() != other.group.order()
            || self.group.invariant_factors() != other.group.invariant_factors()
        {
            return Ok(false);
        }
        let mut mine: Vec<QmodZ> = self.table.clone();
        let mut theirs: Vec<QmodZ> = other.table.clone();
        mine.sort();
        theirs.sort();
        if mine != theirs {
            return Ok(false);
        }
        Ok(self.find_isometry(other).is_some())
    }

    fn find_isometry(&self, other: &PreMetricGroup) -> Option<Vec<GroupElement>> {
        let gens: Vec<usize> = (0..self.group.rank())
            .filter(|&k| self.group.orders()[k] > 1)
            .collect();
        let candidates: Vec<GroupElement> = other.group.elements().collect();
        let mut images: Vec<GroupElement> = Vec::new();
        let mut expected = 1u64;
        if self.search_images(other, &gens, &candidates, &mut images, &mut expected) {
            Some(images)
        } else {
            None
        }
    }

    fn search_images(
        &self,
        other: &PreMetricGroup,
        gens: &[usize],
        candidates: &[GroupElement],
        images: &mut Vec<GroupElement>,
        expected: &mut u64,
    ) -> bool {
        let depth = images.len();
        if depth == gens.len() {
            return true; // span checks below already forced bijectivity
        }
        let k = gens[depth];
        let n_k = self.group.orders()[k];
        let e_k = self.group.generator(k);
        let q_k = self.q(&e_k);
        for y in candidates {
            // A well-defined map needs ord(y) | n_k; form values must agree.
            if !n_k.is_multiple_of(other.group.element_order(y)) || other.q(y) != q_k {
                continue;
            }
            let pairings_match = gens[..depth].iter().zip(images.iter()).all(|(&j, img)| {
                other.bilinear(y, img) == self.bilinear(&e_k, &self.group.generator(j))
            });
            if !pairings_match {
                continue;
            }
            images.push(y.clone());
            let span = Subgroup::from_generators(&other.group, images);
            let new_expected = *expected * n_k;
            if span.order() as u64 == new_expected {
                let saved = *expected;
                *expected = new_expected;
                if self.search_images(other, gens, candidates, images, expected) {
                    return true;
                }
                *expected = saved;
            }
            images.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> QmodZ {
        QmodZ::new(n, d).unwrap()
    }

    /// `(Z/4, q(l) = l^2 / 8)` used across the tests.
    fn z4_eighth() -> PreMetricGroup {
        let g = FiniteAbelianGroup::new(&[4]).unwrap();
        PreMetricGroup::from_gram(g, &[q(1, 8)], &[]).unwrap()
    }

    #[test]
    fn gram_matches_table() {
        let g = FiniteAbelianGroup::new(&[4]).unwrap();
        let by_gram = PreMetricGroup::from_gram(g.clone(), &[q(3, 8)], &[]).unwrap();
        let by_table =
            PreMetricGroup::from_table(g, vec![QmodZ::zero(), q(3, 8), q(1, 2), q(3, 8)]).unwrap();
        assert_eq!(by_gram, by_table);
    }

    #[test]
    fn polarisation_and_complement() {
        let pm = z4_eighth();
        let g = pm.group().clone();
        let one = g.element(&[1]).unwrap();
        let two = g.element(&[2]).unwrap();
        assert_eq!(pm.bilinear(&two, &one), q(1, 2));
        assert!(pm.is_nondegenerate());
        assert!(pm.is_anisotropic());
        let h = Subgroup::from_generators(&g, core::slice::from_ref(&two));
        let perp = pm.orthogonal_complement(&h);
        assert_eq!(perp.order(), 2);
        assert!(perp.contains(&two));
        // q(2) = 1/2, so <2> is not isotropic.
        assert!(matches!(
            pm.m_subquotient(&h),
            Err(QformError::NotIsotropic { .. })
        ));
    }

    #[test]
    fn hyperbolic_plane_reduces_to_zero() {
        let g = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        let pm = PreMetricGroup::from_table(
            g.clone(),
            vec![QmodZ::zero(), QmodZ::zero(), QmodZ::zero(), q(1, 2)],
        )
        .unwrap();
        assert!(pm.is_nondegenerate());
        assert!(!pm.is_anisotropic());
        let h = Subgroup::from_generators(&g, &[g.element(&[1, 0]).unwrap()]);
        assert!(pm.is_isotropic_subgroup(&h));
        let reduced = pm.m_subquotient(&h).unwrap();
        assert!(reduced.group().is_trivial());
    }

    #[test]
    fn rank_two_reduction_collapses_doubled_class() {
        // (Z/5, l^2/5) + (Z/5, l^2/5) has the isotropic line through (1, 2).
        let g = FiniteAbelianGroup::new(&[5]).unwrap();
        let a = PreMetricGroup::from_gram(g, &[q(1, 5)], &[]).unwrap();
        let sum = a.direct_sum(&a);
        let iso = sum.group().element(&[1, 2]).unwrap();
        assert!(sum.q(&iso).is_zero());
        let h = Subgroup::from_generators(sum.group(), &[iso]);
        assert_eq!(h.order(), 5);
        let reduced = sum.m_subquotient(&h).unwrap();
        assert!(reduced.group().is_trivial());
    }

    #[test]
    fn rejects_non_quadratic_tables() {
        let g = FiniteAbelianGroup::new(&[2]).unwrap();
        let err = PreMetricGroup::from_table(g.clone(), vec![QmodZ::zero(), q(1, 3)]).unwrap_err();
        assert!(matches!(err, QformError::NotQuadratic { .. }));
        let err = PreMetricGroup::from_gram(g, &[q(1, 3)], &[]).unwrap_err();
        assert!(matches!(err, QformError::GramInconsistent { .. }));
        let g2 = FiniteAbelianGroup::new(&[2]).unwrap();
        let err = PreMetricGroup::from_table(g2, vec![q(1, 2), QmodZ::zero()]).unwrap_err();
        assert_eq!(err, QformError::NonzeroAtZero);
    }

    #[test]
    fn sylow_parts_recombine() {
        // (Z/6, q(l) = l^2/12) splits into 2-part (Z/2, 3/4) and 3-part (Z/3, 1/3).
        let g = FiniteAbelianGroup::new(&[6]).unwrap();
        let pm = PreMetricGroup::from_gram(g, &[q(1, 12)], &[]).unwrap();
        assert_eq!(pm.primes(), vec![2, 3]);
        let p2 = pm.prime_part(2);
        let p3 = pm.prime_part(3);
        assert_eq!(p2.group().orders(), &[2]);
        assert_eq!(p2.q(&p2.group().element(&[1]).unwrap()), q(3, 4));
        assert_eq!(p3.group().orders(), &[3]);
        assert_eq!(p3.q(&p3.group().element(&[1]).unwrap()), q(1, 3));
        let recombined = p2.direct_sum(&p3);
        assert!(pm.isometric(&recombined).unwrap());
    }

    #[test]
    fn isometry_distinguishes_forms() {
        let g = FiniteAbelianGroup::new(&[3]).unwrap();
        let a = PreMetricGroup::from_gram(g.clone(), &[q(1, 3)], &[]).unwrap();
        let b = PreMetricGroup::from_gram(g, &[q(2, 3)], &[]).unwrap();
        assert!(a.isometric(&a).unwrap());
        assert!(!a.isometric(&b).unwrap());
        assert!(a.isometric(&b.reverse()).unwrap());
        let big = FiniteAbelianGroup::new(&[8191]).unwrap();
        let big_pm = PreMetricGroup::from_gram(big, &[q(1, 8191)], &[]).unwrap();
        assert!(matches!(
            big_pm.isometric(&big_pm),
            Err(QformError::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn isometry_finds_nontrivial_relabelling() {
        // (Z/2 + Z/8) vs (Z/8 + Z/2) with matching values in swapped slots.
        let a_group = FiniteAbelianGroup::new(&[2, 8]).unwrap();
        let b_group = FiniteAbelianGroup::new(&[8, 2]).unwrap();
        let a = PreMetricGroup::from_gram(a_group, &[q(1, 4), q(1, 16)], &[]).unwrap();
        let b = PreMetricGroup::from_gram(b_group, &[q(1, 16), q(1, 4)], &[]).unwrap();
        assert!(a.isometric(&b).unwrap());
    }
}
