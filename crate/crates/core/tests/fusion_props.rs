//! Oracles and properties for Frobenius–Perron data.
//!
//! The per-object dimensions of the rank-`k+1` Verlinde-type rings have a
//! closed sine-ratio form; the library computes them by power iteration
//! instead, so the two must agree to tight tolerance. The remaining tests
//! exercise ring-level identities that the numerics must reproduce: the
//! dimension map is a homomorphism, duals share dimensions, products
//! multiply, and pointed rings are flat.

use std::f64::consts::PI;
use wittforge_core::abelian::FiniteAbelianGroup;
use wittforge_core::fusionring::{etale_dimension_ledger, FusionError, FusionRing};

const ORACLE_TOL: f64 = 1e-9;

fn assert_close(a: f64, b: f64, what: &str) {
    assert!(
        (a - b).abs() <= ORACLE_TOL * a.abs().max(b.abs()).max(1.0),
        "{what}: {a} vs {b}"
    );
}

/// Dimension map is a ring homomorphism: `d_i d_j = sum_k N_ij^k d_k`.
fn assert_homomorphism(ring: &FusionRing) {
    let data = ring.fpdims().expect("transitive ring");
    for i in 0..ring.rank() {
        for j in 0..ring.rank() {
            let product: f64 = (0..ring.rank())
                .map(|k| ring.constant(i, j, k) as f64 * data.dims[k])
                .sum();
            assert_close(data.dims[i] * data.dims[j], product, "homomorphism");
        }
    }
    let square_sum: f64 = data.dims.iter().map(|d| d * d).sum();
    assert_close(data.total, square_sum, "total dimension");
    for i in 0..ring.rank() {
        assert_close(data.dims[i], data.dims[ring.dual(i)], "dual dimension");
        assert!(data.dims[i] >= 1.0 - 1e-9, "dimensions at least one");
    }
}

#[test]
fn sine_ratio_oracle_for_verlinde_rings() {
    for k in 1..=30u64 {
        let ring = FusionRing::verlinde_sl2(k);
        let data = ring.fpdims().expect("Verlinde rings are transitive");
        let s = |x: f64| (PI * x / (k as f64 + 2.0)).sin();
        for (i, d) in data.dims.iter().enumerate() {
            assert_close(*d, s(i as f64 + 1.0) / s(1.0), "sine ratio");
        }
        let expected_total = (k as f64 + 2.0) / (2.0 * s(1.0) * s(1.0));
        assert_close(data.total, expected_total, "closed-form total");
    }
}

#[test]
fn dimension_map_is_a_homomorphism() {
    assert_homomorphism(&FusionRing::fib());
    assert_homomorphism(&FusionRing::ising());
    for k in 1..=12 {
        assert_homomorphism(&FusionRing::verlinde_sl2(k));
    }
    let group = FiniteAbelianGroup::new(&[2, 4]).unwrap();
    assert_homomorphism(&FusionRing::pointed_ring(&group));
    let product = FusionRing::fib().product_ring(&FusionRing::ising());
    assert_homomorphism(&product);
}

#[test]
fn golden_ratio_and_ising_dimensions() {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let fib = FusionRing::fib().fpdims().unwrap();
    assert_close(fib.dims[1], phi, "golden ratio");
    assert_close(fib.total, 1.0 + phi * phi, "Fibonacci total");

    let ising = FusionRing::ising().fpdims().unwrap();
    let sqrt2 = 2.0_f64.sqrt();
    // Label order: unit, the invertible object, the bipartite middle one.
    let mut dims = ising.dims.clone();
    dims.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_close(dims[0], 1.0, "Ising unit");
    assert_close(dims[1], 1.0, "Ising invertible object");
    assert_close(dims[2], sqrt2, "Ising middle object");
    assert_close(ising.total, 4.0, "Ising total");
}

#[test]
fn products_multiply_dimensions() {
    let fib = FusionRing::fib();
    let ising = FusionRing::ising();
    let product = fib.product_ring(&ising);
    let left = fib.fpdims().unwrap();
    let right = ising.fpdims().unwrap();
    let both = product.fpdims().unwrap();
    assert_close(both.total, left.total * right.total, "total multiplicativity");
    // Pair dimensions are products of coordinate dimensions.
    for i in 0..fib.rank() {
        for j in 0..ising.rank() {
            let idx = i * ising.rank() + j;
            assert_close(
                both.dims[idx],
                left.dims[i] * right.dims[j],
                "pairwise multiplicativity",
            );
        }
    }

    let square = fib.product_ring(&fib);
    let sq = square.fpdims().unwrap();
    assert_close(
        (sq.total / left.total).sqrt() * left.total.sqrt(),
        left.total,
        "square root of the squared total",
    );
}

#[test]
fn pointed_rings_are_flat() {
    for orders in [vec![2u64], vec![3, 3], vec![2, 4], vec![5]] {
        let group = FiniteAbelianGroup::new(&orders).unwrap();
        let ring = FusionRing::pointed_ring(&group);
        let data = ring.fpdims().unwrap();
        for d in &data.dims {
            assert_close(*d, 1.0, "invertible dimension");
        }
        assert_close(
            data.total,
            orders.iter().product::<u64>() as f64,
            "pointed total",
        );
    }
}

#[test]
fn regular_object_realises_the_total() {
    let ring = FusionRing::verlinde_sl2(4);
    let data = ring.fpdims().unwrap();
    let reg = ring.regular_object().unwrap();
    // The regular object's coordinates are the dimensions themselves.
    for (r, d) in reg.iter().zip(&data.dims) {
        assert_close(*r, *d, "regular coordinates");
    }
}

#[test]
fn dimension_ledger_accepts_and_rejects() {
    let (ratio, per_square, lagrangian) = etale_dimension_ledger(4.0, 2.0).unwrap();
    assert_close(ratio, 2.0, "ratio");
    assert_close(per_square, 1.0, "ratio per square");
    assert!(lagrangian);

    let fib_total = FusionRing::fib().fpdims().unwrap().total;
    let square_total = fib_total * fib_total;
    let (_, per_square, lagrangian) =
        etale_dimension_ledger(square_total, fib_total).unwrap();
    assert_close(per_square, 1.0, "square over diagonal");
    assert!(lagrangian);

    let (_, per_square, lagrangian) = etale_dimension_ledger(10.0, 2.0).unwrap();
    assert_close(per_square, 2.5, "non-Lagrangian ratio");
    assert!(!lagrangian);

    assert!(matches!(
        etale_dimension_ledger(4.0, 0.5),
        Err(FusionError::LedgerPrecondition { .. })
    ));
    assert!(matches!(
        etale_dimension_ledger(2.0, 4.0),
        Err(FusionError::LedgerPrecondition { .. })
    ));
}
