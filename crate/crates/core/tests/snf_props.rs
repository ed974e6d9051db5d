//! Property tests for the integer-matrix Smith normal form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use wittforge_core::abelian::matrix::{smith_normal_form, IntMatrix};

fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(rows, cols)| {
        proptest::collection::vec(
            proptest::collection::vec(-30i64..=30, cols),
            rows,
        )
        .prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

/// A matrix together with a vector sized to its column count.
fn arb_matrix_and_vec() -> impl Strategy<Value = (IntMatrix, Vec<i64>)> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(rows, cols)| {
        (
            proptest::collection::vec(
                proptest::collection::vec(-30i64..=30, cols),
                rows,
            )
            .prop_map(|rows| IntMatrix::from_rows(&rows)),
            proptest::collection::vec(-9i64..=9, cols),
        )
    })
}

fn is_identity(m: &IntMatrix) -> bool {
    m.rows() == m.cols()
        && (0..m.rows()).all(|i| {
            (0..m.cols()).all(|j| {
                let want = if i == j { BigInt::one() } else { BigInt::zero() };
                *m.get(i, j) == want
            })
        })
}

proptest! {
    /// `u * m * v` is the diagonal matrix `d` with a divisibility chain, and
    /// the recorded transforms are two-sided integer inverses of each other.
    #[test]
    fn decomposition_holds(m in arb_matrix()) {
        let snf = smith_normal_form(&m);
        let product = snf.u.mul(&m).mul(&snf.v);
        prop_assert_eq!(product.rows(), snf.d.rows());
        prop_assert_eq!(product.cols(), snf.d.cols());
        for i in 0..product.rows() {
            for j in 0..product.cols() {
                prop_assert_eq!(product.get(i, j), snf.d.get(i, j));
                if i != j {
                    prop_assert!(snf.d.get(i, j).is_zero());
                }
            }
        }
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero(), "divisibility chain");
            } else {
                prop_assert!(w[1].is_zero(), "zeros come last");
            }
        }
        for x in &diag {
            prop_assert!(!x.is_negative());
        }
        prop_assert!(is_identity(&snf.u.mul(&snf.u_inv)));
        prop_assert!(is_identity(&snf.v.mul(&snf.v_inv)));
    }

    /// Every kernel-basis vector is annihilated by the matrix, and `solve`
    /// recovers a preimage for any vector already in the image.
    #[test]
    fn kernel_and_solve((m, x) in arb_matrix_and_vec()) {
        let snf = smith_normal_form(&m);
        for k in snf.kernel_basis() {
            let image = m.mul_vec(&k);
            prop_assert!(image.iter().all(BigInt::is_zero));
        }
        let x: Vec<BigInt> = x.into_iter().map(BigInt::from).collect();
        let b = m.mul_vec(&x);
        let solved = snf.solve(&b).expect("vectors in the image are solvable");
        prop_assert_eq!(m.mul_vec(&solved), b);
    }
}
