//! Based rings with non-negative integer structure constants:
//! Frobenius–Perron dimensions, the regular object, Deligne products at
//! the ring level, and the dimension ledger for connected algebras.
//!
//! Numerics are deliberate: per-object top eigenvalues come from power
//! iteration with a deterministic all-ones start; objects whose matrices
//! oscillate (periodic structure) fall back to the common eigenvector of
//! the regular-element matrix, and the final dimension vector is always
//! verified to be a common eigenvector of every fusion matrix within
//! [`crate::tolerances::FP_RESIDUAL_TOL`].

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::abelian::FiniteAbelianGroup;
use crate::tolerances::{FP_RESIDUAL_TOL, POWER_ITERATION_CAP, POWER_ITERATION_TOL};

/// Validation and computation errors for fusion rings.
#[derive(Clone, PartialEq, Debug)]
pub enum FusionError {
    EmptyBasis,
    WrongTableSize { expected: usize, got: usize },
    UnitAxiom { i: usize, j: usize, k: usize },
    /// Row `i` of the duality pairing is not a point mass.
    Duality { i: usize },
    DualNotInvolution { i: usize },
    Associativity { i: usize, j: usize, k: usize, l: usize },
    /// The regular-element matrix did not converge (should not happen for
    /// a valid ring).
    NoConvergence,
    /// The dimension vector fails the common-eigenvector check.
    InconsistentRing { object: usize, residual: f64 },
    /// Per-object eigenvalue disagrees with the common-eigenvector value.
    RouteMismatch { object: usize, direct: f64, common: f64 },
    /// Dimension-ledger precondition failure.
    LedgerPrecondition { reason: String },
}

impl fmt::Display for FusionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FusionError::EmptyBasis => write!(f, "fusion ring needs at least one basis element"),
            FusionError::WrongTableSize { expected, got } => {
                write!(f, "structure-constant table has {got} entries, expected {expected}")
            }
            FusionError::UnitAxiom { i, j, k } => {
                write!(f, "unit axiom fails at N[{i}][{j}]^{k}")
            }
            FusionError::Duality { i } => {
                write!(f, "duality pairing of basis element {i} is not a single unit")
            }
            FusionError::DualNotInvolution { i } => {
                write!(f, "duality is not an involution at basis element {i}")
            }
            FusionError::Associativity { i, j, k, l } => {
                write!(f, "associativity fails at ({i},{j},{k}) -> {l}")
            }
            FusionError::NoConvergence => write!(f, "eigenvector iteration did not converge"),
            FusionError::InconsistentRing { object, residual } => {
                write!(
                    f,
                    "dimension vector is not a common eigenvector: object {object} residual {residual:e}"
                )
            }
            FusionError::RouteMismatch { object, direct, common } => {
                write!(
                    f,
                    "object {object}: direct eigenvalue {direct} disagrees with common eigenvector value {common}"
                )
            }
            FusionError::LedgerPrecondition { reason } => {
                write!(f, "dimension ledger precondition: {reason}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FusionError {}

/// A based ring: non-negative integer structure constants over a finite
/// basis with unit at index 0 and an inferred duality involution.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FusionRing {
    labels: Vec<String>,
    dual: Vec<usize>,
    rank: usize,
    /// `n[(i * rank + j) * rank + k] = N_{ij}^k`.
    n: Vec<u64>,
}

/// Frobenius–Perron data: per-object dimensions and the total dimension
/// `total = sum dims[i]^2`.
#[derive(Clone, PartialEq, Debug)]
pub struct FPData {
    pub dims: Vec<f64>,
    pub total: f64,
}

/// Outcome of one power iteration run.
enum Iterated {
    Converged { value: f64, vector: Vec<f64> },
    /// A stable period-two cycle: the matrix has periodic structure and
    /// plain iteration cannot converge.
    Oscillating,
    GaveUp,
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Power iteration with all-ones start on a dense row-major matrix.
fn power_iterate(mat: &[f64], rank: usize) -> Iterated {
    let mut v = vec![1.0; rank];
    let mut prev: Option<Vec<f64>> = None;
    for _ in 0..POWER_ITERATION_CAP {
        let mut w = vec![0.0; rank];
        for (r, slot) in w.iter_mut().enumerate() {
            let row = &mat[r * rank..(r + 1) * rank];
            *slot = row.iter().zip(&v).map(|(m, x)| m * x).sum();
        }
        let norm = w.iter().fold(0.0_f64, |a, &x| a.max(x.abs()));
        if norm <= 0.0 {
            return Iterated::GaveUp;
        }
        for x in &mut w {
            *x /= norm;
        }
        if max_abs_diff(&w, &v) < POWER_ITERATION_TOL {
            return Iterated::Converged { value: norm, vector: w };
        }
        if let Some(p) = &prev {
            if max_abs_diff(&w, p) < POWER_ITERATION_TOL {
                return Iterated::Oscillating;
            }
        }
        prev = Some(core::mem::replace(&mut v, w));
    }
    Iterated::GaveUp
}

impl FusionRing {
    /// Validates and wraps a structure-constant table.
    ///
    /// The basis element at index 0 must be the unit; the duality is
    /// inferred from the pairing `N_{ij}^0` and must be an involution;
    /// associativity is checked in full.
    pub fn new(labels: Vec<String>, table: Vec<u64>) -> Result<Self, FusionError> {
        let rank = labels.len();
        if rank == 0 {
            return Err(FusionError::EmptyBasis);
        }
        let expected = rank * rank * rank;
        if table.len() != expected {
            return Err(FusionError::WrongTableSize {
                expected,
                got: table.len(),
            });
        }
        let at = |i: usize, j: usize, k: usize| table[(i * rank + j) * rank + k];

        // Unit axiom: multiplication by element 0 is the identity.
        for j in 0..rank {
            for k in 0..rank {
                let delta = u64::from(j == k);
                if at(0, j, k) != delta {
                    return Err(FusionError::UnitAxiom { i: 0, j, k });
                }
                if at(j, 0, k) != delta {
                    return Err(FusionError::UnitAxiom { i: j, j: 0, k });
                }
            }
        }

        // Duality: each row pairs to the unit against exactly one element.
        let mut dual = vec![0usize; rank];
        for (i, d) in dual.iter_mut().enumerate() {
            let mut hits = (0..rank).filter(|&j| at(i, j, 0) != 0);
            match (hits.next(), hits.next()) {
                (Some(j), None) if at(i, j, 0) == 1 => *d = j,
                _ => return Err(FusionError::Duality { i }),
            }
        }
        for i in 0..rank {
            if dual[dual[i]] != i {
                return Err(FusionError::DualNotInvolution { i });
            }
        }

        // Associativity, iterating only over nonzero products.
        let mut nonzero: Vec<Vec<(usize, u64)>> = vec![Vec::new(); rank * rank];
        for i in 0..rank {
            for j in 0..rank {
                let entry = &mut nonzero[i * rank + j];
                for m in 0..rank {
                    let v = at(i, j, m);
                    if v != 0 {
                        entry.push((m, v));
                    }
                }
            }
        }
        let mut lhs = vec![0u128; rank];
        let mut rhs = vec![0u128; rank];
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    lhs.iter_mut().for_each(|x| *x = 0);
                    rhs.iter_mut().for_each(|x| *x = 0);
                    for &(m, v) in &nonzero[i * rank + j] {
                        for (l, slot) in lhs.iter_mut().enumerate() {
                            *slot += u128::from(v) * u128::from(at(m, k, l));
                        }
                    }
                    for &(m, v) in &nonzero[j * rank + k] {
                        for (l, slot) in rhs.iter_mut().enumerate() {
                            *slot += u128::from(v) * u128::from(at(i, m, l));
                        }
                    }
                    if let Some(l) = (0..rank).find(|&l| lhs[l] != rhs[l]) {
                        return Err(FusionError::Associativity { i, j, k, l });
                    }
                }
            }
        }

        Ok(FusionRing {
            labels,
            dual,
            rank,
            n: table,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Index of the unit basis element (always 0).
    pub fn unit(&self) -> usize {
        0
    }

    /// The duality involution on basis indices.
    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    /// Structure constant `N_{ij}^k`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> u64 {
        self.n[(i * self.rank + j) * self.rank + k]
    }

    /// Left-multiplication matrix of basis element `i`, row-major, with
    /// `(row, col) = (k, j) -> N_{ij}^k`.
    fn matrix(&self, i: usize) -> Vec<f64> {
        let r = self.rank;
        let mut m = vec![0.0; r * r];
        for j in 0..r {
            for k in 0..r {
                m[k * r + j] = self.constant(i, j, k) as f64;
            }
        }
        m
    }

    /// Sum of all left-multiplication matrices; primitive for a valid
    /// ring (positive diagonal through the unit, connected through
    /// duality), so power iteration always converges on it.
    fn regular_matrix(&self) -> Vec<f64> {
        let r = self.rank;
        let mut m = vec![0.0; r * r];
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    m[k * r + j] += self.constant(i, j, k) as f64;
                }
            }
        }
        m
    }

    /// Frobenius–Perron dimensions of all basis elements.
    ///
    /// Each dimension is the largest eigenvalue of the left-multiplication
    /// matrix. Matrices with periodic structure take their value from the
    /// common eigenvector instead, and the full dimension vector is always
    /// verified to be a common eigenvector of every fusion matrix.
    pub fn fpdims(&self) -> Result<FPData, FusionError> {
        let r = self.rank;
        let common = match power_iterate(&self.regular_matrix(), r) {
            Iterated::Converged { vector, .. } => vector,
            _ => return Err(FusionError::NoConvergence),
        };
        let unit_coord = common[0];
        if unit_coord <= 0.0 {
            return Err(FusionError::NoConvergence);
        }
        let common: Vec<f64> = common.iter().map(|x| x / unit_coord).collect();

        // The eigen-equation at the unit coordinate identifies each
        // dimension with the dual coordinate of the common eigenvector.
        let dims: Vec<f64> = (0..r).map(|i| common[self.dual[i]]).collect();

        let scale = common.iter().fold(1.0_f64, |a, &x| a.max(x));
        for (i, &dim) in dims.iter().enumerate() {
            let mat = self.matrix(i);
            // Direct route: per-object top eigenvalue when iteration
            // converges; periodic objects fall back to the common value.
            if let Iterated::Converged { value, .. } = power_iterate(&mat, r) {
                if (value - dim).abs() > FP_RESIDUAL_TOL * dim.max(1.0) {
                    return Err(FusionError::RouteMismatch {
                        object: i,
                        direct: value,
                        common: dim,
                    });
                }
            }
            // Common-eigenvector verification for every object.
            let mut residual = 0.0_f64;
            for k in 0..r {
                let row: f64 = (0..r).map(|j| mat[k * r + j] * common[j]).sum();
                residual = residual.max((row - dim * common[k]).abs());
            }
            if residual > FP_RESIDUAL_TOL * dim.max(1.0) * scale {
                return Err(FusionError::InconsistentRing {
                    object: i,
                    residual,
                });
            }
        }
        if dims.iter().any(|&d| d < 1.0 - FP_RESIDUAL_TOL) {
            return Err(FusionError::InconsistentRing {
                object: dims
                    .iter()
                    .position(|&d| d < 1.0 - FP_RESIDUAL_TOL)
                    .unwrap_or(0),
                residual: f64::NAN,
            });
        }
        let total = dims.iter().map(|d| d * d).sum();
        Ok(FPData { dims, total })
    }

    /// Coefficient vector of the regular object `R = sum dims[i] X_i`,
    /// verified to satisfy `N_j R = dims[j] R` for every `j` and
    /// `FPdim(R) = total`.
    pub fn regular_object(&self) -> Result<Vec<f64>, FusionError> {
        let fp = self.fpdims()?;
        // `fpdims` has already verified the eigenvector property of the
        // underlying common vector; re-check directly against the
        // coefficient vector to keep this entry point self-contained.
        let r = self.rank;
        for j in 0..r {
            let mat = self.matrix(j);
            let mut residual = 0.0_f64;
            for k in 0..r {
                let row: f64 = (0..r).map(|c| mat[k * r + c] * fp.dims[c]).sum();
                residual = residual.max((row - fp.dims[j] * fp.dims[k]).abs());
            }
            if residual > FP_RESIDUAL_TOL * fp.total.max(1.0) {
                return Err(FusionError::InconsistentRing {
                    object: j,
                    residual,
                });
            }
        }
        let fpdim_r: f64 = fp.dims.iter().map(|d| d * d).sum();
        if (fpdim_r - fp.total).abs() > FP_RESIDUAL_TOL * fp.total.max(1.0) {
            return Err(FusionError::InconsistentRing {
                object: 0,
                residual: (fpdim_r - fp.total).abs(),
            });
        }
        Ok(fp.dims)
    }

    /// Ring-level Deligne product: basis pairs with factorized constants.
    pub fn product_ring(&self, other: &FusionRing) -> FusionRing {
        let (r1, r2) = (self.rank, other.rank);
        let rank = r1 * r2;
        let mut labels = Vec::with_capacity(rank);
        for a in &self.labels {
            for b in &other.labels {
                labels.push(format!("({a},{b})"));
            }
        }
        let mut table = vec![0u64; rank * rank * rank];
        let pair = |a: usize, b: usize| a * r2 + b;
        for i1 in 0..r1 {
            for i2 in 0..r2 {
                for j1 in 0..r1 {
                    for j2 in 0..r2 {
                        for k1 in 0..r1 {
                            let v1 = self.constant(i1, j1, k1);
                            if v1 == 0 {
                                continue;
                            }
                            for k2 in 0..r2 {
                                let v2 = other.constant(i2, j2, k2);
                                if v2 == 0 {
                                    continue;
                                }
                                let idx = (pair(i1, i2) * rank + pair(j1, j2)) * rank
                                    + pair(k1, k2);
                                table[idx] = v1 * v2;
                            }
                        }
                    }
                }
            }
        }
        FusionRing::new(labels, table).expect("product of valid rings is valid")
    }

    /// Truncated spin rules at a positive level: basis `0..=k`,
    /// `N_{ij}^l = 1` iff `|i-j| <= l <= min(i+j, 2k-i-j)` and
    /// `l = i+j mod 2`.
    pub fn verlinde_sl2(k: u64) -> FusionRing {
        let k = k as usize;
        let rank = k + 1;
        let labels = (0..=k).map(|i| i.to_string()).collect();
        let mut table = vec![0u64; rank * rank * rank];
        for i in 0..=k {
            for j in 0..=k {
                let lo = i.abs_diff(j);
                let hi = (i + j).min(2 * k - i - j);
                for l in (lo..=hi).step_by(2) {
                    // lo = |i-j| has the parity of i+j, so stepping by 2
                    // keeps l = i+j mod 2.
                    table[(i * rank + j) * rank + l] = 1;
                }
            }
        }
        FusionRing::new(labels, table).expect("spin rules satisfy the ring axioms")
    }

    /// Group ring of a finite abelian group: all dimensions 1.
    pub fn pointed_ring(group: &FiniteAbelianGroup) -> FusionRing {
        let order = group
            .order_u64()
            .expect("group order fits in a machine word") as usize;
        let elements: Vec<_> = group.elements().collect();
        let labels = elements.iter().map(|e| e.to_string()).collect();
        let mut table = vec![0u64; order * order * order];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let k = group.index_of(&group.add(a, b));
                table[(i * order + j) * order + k] = 1;
            }
        }
        FusionRing::new(labels, table).expect("group ring satisfies the ring axioms")
    }

    /// The Fibonacci ring: basis `1, tau` with `tau*tau = 1 + tau`.
    pub fn fib() -> FusionRing {
        let labels = vec!["1".to_string(), "tau".to_string()];
        let mut table = vec![0u64; 8];
        let mut set = |i: usize, j: usize, k: usize| table[(i * 2 + j) * 2 + k] = 1;
        set(0, 0, 0);
        set(0, 1, 1);
        set(1, 0, 1);
        set(1, 1, 0);
        set(1, 1, 1);
        FusionRing::new(labels, table).expect("Fibonacci ring is valid")
    }

    /// The Ising ring: basis `1, e, s` with `e*e = 1`, `e*s = s*e = s`,
    /// `s*s = 1 + e`.
    pub fn ising() -> FusionRing {
        let labels = vec!["1".to_string(), "e".to_string(), "s".to_string()];
        let mut table = vec![0u64; 27];
        let mut set = |i: usize, j: usize, k: usize| table[(i * 3 + j) * 3 + k] = 1;
        set(0, 0, 0);
        set(0, 1, 1);
        set(0, 2, 2);
        set(1, 0, 1);
        set(2, 0, 2);
        set(1, 1, 0);
        set(1, 2, 2);
        set(2, 1, 2);
        set(2, 2, 0);
        set(2, 2, 1);
        FusionRing::new(labels, table).expect("Ising ring is valid")
    }
}

/// Dimension ledger for a connected algebra of dimension `fpdim_a` inside
/// a ring of total dimension `fpdim_c`: returns
/// `(fpdim_c / fpdim_a, fpdim_c / fpdim_a^2, is_lagrangian)` where the
/// Lagrangian flag tests `fpdim_a^2 = fpdim_c` within tolerance.
pub fn etale_dimension_ledger(
    fpdim_c: f64,
    fpdim_a: f64,
) -> Result<(f64, f64, bool), FusionError> {
    if !fpdim_a.is_finite() || !fpdim_c.is_finite() {
        return Err(FusionError::LedgerPrecondition {
            reason: String::from("dimensions must be finite"),
        });
    }
    if fpdim_a < 1.0 - FP_RESIDUAL_TOL {
        return Err(FusionError::LedgerPrecondition {
            reason: format!("algebra dimension {fpdim_a} is below 1"),
        });
    }
    if fpdim_c < fpdim_a - FP_RESIDUAL_TOL {
        return Err(FusionError::LedgerPrecondition {
            reason: format!("total dimension {fpdim_c} is below algebra dimension {fpdim_a}"),
        });
    }
    let square = fpdim_a * fpdim_a;
    if square > fpdim_c * (1.0 + FP_RESIDUAL_TOL) {
        return Err(FusionError::LedgerPrecondition {
            reason: format!("algebra dimension squared {square} exceeds total {fpdim_c}"),
        });
    }
    let ca = fpdim_c / fpdim_a;
    let ca0 = fpdim_c / square;
    let lagrangian = (square - fpdim_c).abs() <= FP_RESIDUAL_TOL * fpdim_c.max(1.0);
    Ok((ca, ca0, lagrangian))
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN: f64 = 1.618033988749895;

    fn assert_close(a: f64, b: f64) {
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }

    #[test]
    fn fibonacci_dimensions() {
        let fib = FusionRing::fib();
        let fp = fib.fpdims().unwrap();
        assert_close(fp.dims[0], 1.0);
        assert_close(fp.dims[1], GOLDEN);
        assert_close(fp.total, 1.0 + GOLDEN * GOLDEN);
        let reg = fib.regular_object().unwrap();
        assert_close(reg[0], 1.0);
        assert_close(reg[1], GOLDEN);
    }

    #[test]
    fn ising_dimensions_via_fallback() {
        // The third basis element has a periodic matrix, so this exercises
        // the common-eigenvector fallback.
        let ising = FusionRing::ising();
        let fp = ising.fpdims().unwrap();
        assert_close(fp.dims[0], 1.0);
        assert_close(fp.dims[1], 1.0);
        assert_close(fp.dims[2], core::f64::consts::SQRT_2);
        assert_close(fp.total, 4.0);
    }

    #[test]
    fn group_rings_are_pointed() {
        for orders in [&[1u64][..], &[2], &[4], &[2, 3]] {
            let g = FiniteAbelianGroup::new(orders).unwrap();
            let ring = FusionRing::pointed_ring(&g);
            let fp = ring.fpdims().unwrap();
            let n = g.order_u64().unwrap() as f64;
            for d in &fp.dims {
                assert_close(*d, 1.0);
            }
            assert_close(fp.total, n);
        }
    }

    #[test]
    fn spin_rules_small_levels() {
        // Level 1 is the two-element group ring.
        let k1 = FusionRing::verlinde_sl2(1);
        assert_eq!(k1.rank(), 2);
        assert_eq!(k1.constant(1, 1, 0), 1);
        assert_eq!(k1.constant(1, 1, 1), 0);
        // Level 2 matches the Ising shape: 1*1 = 0 + 2.
        let k2 = FusionRing::verlinde_sl2(2);
        assert_eq!(k2.constant(1, 1, 0), 1);
        assert_eq!(k2.constant(1, 1, 2), 1);
        assert_eq!(k2.constant(1, 1, 1), 0);
        let fp = k2.fpdims().unwrap();
        assert_close(fp.total, 4.0);
        // Level 3: the even part {0, 2} closes into the Fibonacci shape.
        let k3 = FusionRing::verlinde_sl2(3);
        assert_eq!(k3.constant(2, 2, 0), 1);
        assert_eq!(k3.constant(2, 2, 2), 1);
        assert_eq!(k3.constant(2, 2, 1), 0);
        assert_eq!(k3.constant(2, 2, 3), 0);
    }

    #[test]
    fn spin_dimensions_match_sine_ratios() {
        for k in 1..=10u64 {
            let ring = FusionRing::verlinde_sl2(k);
            let fp = ring.fpdims().unwrap();
            let denom = libm::sin(core::f64::consts::PI / (k as f64 + 2.0));
            for (i, d) in fp.dims.iter().enumerate() {
                let expect =
                    libm::sin((i as f64 + 1.0) * core::f64::consts::PI / (k as f64 + 2.0)) / denom;
                assert!((d - expect).abs() < 1e-9, "k={k} i={i}: {d} vs {expect}");
            }
        }
    }

    #[test]
    fn dimension_is_ring_homomorphism() {
        for ring in [
            FusionRing::fib(),
            FusionRing::ising(),
            FusionRing::verlinde_sl2(5),
        ] {
            let fp = ring.fpdims().unwrap();
            let r = ring.rank();
            for i in 0..r {
                for j in 0..r {
                    let sum: f64 = (0..r)
                        .map(|l| ring.constant(i, j, l) as f64 * fp.dims[l])
                        .sum();
                    assert!(
                        (sum - fp.dims[i] * fp.dims[j]).abs() < 1e-9,
                        "homomorphism fails at ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn products_multiply_totals() {
        let fib = FusionRing::fib();
        let squared = fib.product_ring(&fib);
        let fp = squared.fpdims().unwrap();
        let single = fib.fpdims().unwrap();
        assert_close(fp.total, single.total * single.total);
        assert_close(fp.total, 13.090169943749475);

        // Product with the trivial ring is the ring itself.
        let trivial = FusionRing::pointed_ring(&FiniteAbelianGroup::new(&[1]).unwrap());
        let same = fib.product_ring(&trivial);
        assert_eq!(same.rank(), fib.rank());
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    assert_eq!(same.constant(i, j, k), fib.constant(i, j, k));
                }
            }
        }

        // Group rings multiply to the product group ring.
        let z2 = FusionRing::pointed_ring(&FiniteAbelianGroup::new(&[2]).unwrap());
        let z3 = FusionRing::pointed_ring(&FiniteAbelianGroup::new(&[3]).unwrap());
        let z6 = z2.product_ring(&z3);
        let fp6 = z6.fpdims().unwrap();
        assert_close(fp6.total, 6.0);
        for d in &fp6.dims {
            assert_close(*d, 1.0);
        }
    }

    #[test]
    fn validation_rejects_bad_tables() {
        // Broken unit row.
        let mut bad_unit = vec![0u64; 8];
        bad_unit[0] = 1; // N_{00}^0
        // leave N_{01}^1 = 0: unit axiom broken
        assert!(matches!(
            FusionRing::new(vec!["1".into(), "x".into()], bad_unit),
            Err(FusionError::UnitAxiom { .. })
        ));

        // Valid unit but x*x = 0: no dual.
        let mut no_dual = vec![0u64; 8];
        let set = |t: &mut Vec<u64>, i: usize, j: usize, k: usize, v: u64| {
            t[(i * 2 + j) * 2 + k] = v
        };
        set(&mut no_dual, 0, 0, 0, 1);
        set(&mut no_dual, 0, 1, 1, 1);
        set(&mut no_dual, 1, 0, 1, 1);
        assert!(matches!(
            FusionRing::new(vec!["1".into(), "x".into()], no_dual),
            Err(FusionError::Duality { i: 1 })
        ));

        // Unit and duality fine but associativity broken:
        // x*x = 1 + 2x fails (x*x)*x = x*(x*x) only if coefficients are
        // inconsistent; build a genuinely non-associative table.
        let mut non_assoc = vec![0u64; 8];
        set(&mut non_assoc, 0, 0, 0, 1);
        set(&mut non_assoc, 0, 1, 1, 1);
        set(&mut non_assoc, 1, 0, 1, 1);
        set(&mut non_assoc, 1, 1, 0, 1);
        set(&mut non_assoc, 1, 1, 1, 3);
        // (x*x)*x = x + 3(x*x) = 3 + 10x ; x*(x*x) same by symmetry here,
        // so instead break it with an asymmetric entry.
        let mut tbl = non_assoc.clone();
        set(&mut tbl, 1, 1, 1, 3);
        // Make N_{11}^1 = 3 but with N_{11}^0 = 1: check associativity:
        // lhs(1,1,1)->l: sum_m N_{11}^m N_{m1}^l = N_{11}^0 N_{01}^l + N_{11}^1 N_{11}^l
        //   l=0: 0 + 3*1 = 3 ; l=1: 1 + 3*3 = 10  -> same as rhs by symmetry.
        // An associative check needs a 3-element example to break.
        let mut bad3 = vec![0u64; 27];
        let set3 = |t: &mut Vec<u64>, i: usize, j: usize, k: usize| {
            t[(i * 3 + j) * 3 + k] = 1
        };
        set3(&mut bad3, 0, 0, 0);
        set3(&mut bad3, 0, 1, 1);
        set3(&mut bad3, 0, 2, 2);
        set3(&mut bad3, 1, 0, 1);
        set3(&mut bad3, 2, 0, 2);
        // x*x = 1, x*y = y*x = y, y*y = 1  (so y "acts" like another involution)
        set3(&mut bad3, 1, 1, 0);
        set3(&mut bad3, 1, 2, 2);
        set3(&mut bad3, 2, 1, 1); // <- broken: should be 2 to be associative
        set3(&mut bad3, 2, 2, 0);
        assert!(matches!(
            FusionRing::new(vec!["1".into(), "x".into(), "y".into()], bad3),
            Err(FusionError::Associativity { .. }) | Err(FusionError::Duality { .. })
        ));
        let _ = tbl;
    }

    #[test]
    fn ledger_arithmetic() {
        // Lagrangian shape (d^2, d).
        let (ca, ca0, lagrangian) = etale_dimension_ledger(4.0, 2.0).unwrap();
        assert_close(ca, 2.0);
        assert_close(ca0, 1.0);
        assert!(lagrangian);

        // Level-8 spin ring against two Fibonacci factors.
        let c = FusionRing::verlinde_sl2(8).fpdims().unwrap().total;
        let fib2 = {
            let fib = FusionRing::fib();
            fib.product_ring(&fib).fpdims().unwrap().total
        };
        let a = libm::sqrt(c / fib2);
        assert_close(a, 2.0);
        let (ca, ca0, lagrangian) = etale_dimension_ledger(c, a).unwrap();
        assert_close(ca, c / 2.0);
        assert_close(ca0, fib2);
        assert!(!lagrangian);

        // Precondition failures.
        assert!(etale_dimension_ledger(4.0, 0.5).is_err());
        assert!(etale_dimension_ledger(4.0, 3.0).is_err());
        assert!(etale_dimension_ledger(f64::NAN, 1.0).is_err());
    }
}
