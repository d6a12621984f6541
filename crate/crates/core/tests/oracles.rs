//! Library results against direct re-derivations from the definitions.

use proptest::prelude::*;
use spinorlab::clifford::{conjugation_pi, tau_cb_bound};
use spinorlab::fock::creation;
use spinorlab::hypercube::rademacher_norm;
use spinorlab::schatten::{schatten_norm, spin_multiplier_norm};
use spinorlab::{ComplexMatrix, PExponent, C64};

/// `c_j e_A = (−1)^{|A ∩ {1..j−1}|} e_{A ∪ {j}}` for `j ∉ A`, bitmask order.
fn creation_oracle(n: usize, j: usize) -> ComplexMatrix {
    let dim = 1 << n;
    let mut m = ComplexMatrix::zeros(dim, dim);
    let bit = 1 << (j - 1);
    for a in 0..dim {
        if a & bit == 0 {
            let below = (a & (bit - 1)).count_ones();
            m[(a | bit, a)] = C64::new(if below.is_multiple_of(2) { 1.0 } else { -1.0 }, 0.0);
        }
    }
    m
}

/// Diagonal of `x ↦ s_j^* x s_j` on `ω_A`: for a generator `ω_j`, the sign
/// is `+1` exactly when `ω_j` commutes with `ω_A`; the top word commutes
/// with even words only.
fn pi_oracle(n: usize, j: usize, a: usize) -> i8 {
    let size = a.count_ones();
    match j {
        0 => 1,
        j if j <= 2 * n => {
            let inside = a & (1 << (j - 1)) != 0;
            if (size % 2 == 1) == inside {
                1
            } else {
                -1
            }
        }
        _ => {
            if size.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
    }
}

#[test]
fn creation_matches_sign_rule() {
    for n in 1..=5 {
        for j in 1..=n {
            assert!(creation(n, j).unwrap() == creation_oracle(n, j), "n={n} j={j}");
        }
    }
}

#[test]
fn conjugation_diagonals_match_commutation_rule() {
    for n in 1..=3 {
        for j in 0..=2 * n + 1 {
            let d = conjugation_pi(n, j).unwrap();
            for (a, &s) in d.iter().enumerate() {
                assert_eq!(s, pi_oracle(n, j, a), "n={n} j={j} A={a:b}");
            }
        }
    }
}

#[test]
fn tau_cb_from_oracle_diagonals() {
    for n in 1..=4 {
        let mut plus = 0i64;
        let mut minus = 0i64;
        for a in 0..1usize << (2 * n) {
            let head: i64 = (0..=2 * n).map(|j| i64::from(pi_oracle(n, j, a))).sum();
            let last = i64::from(pi_oracle(n, 2 * n + 1, a));
            plus = plus.max((head + last).abs());
            minus = minus.max((head - last).abs());
        }
        let b = tau_cb_bound(n).unwrap();
        assert_eq!((b.plus_norm, b.minus_norm), (plus, minus));
        assert_eq!((plus, minus), (2 * n as i64 + 2, 2 * n as i64));
    }
}

#[test]
fn schatten_norms_of_diagonal_and_rank_one() {
    // diag(3, 4): ‖·‖_1 = 7, ‖·‖_2 = 5, ‖·‖_∞ = 4.
    let d = ComplexMatrix::from_real_diag(&[3.0, 4.0]);
    let norm = |x: &ComplexMatrix, p: f64| schatten_norm(x, PExponent::new(p).unwrap(), 1.0).unwrap();
    assert!((norm(&d, 1.0) - 7.0).abs() <= 1e-12);
    assert!((norm(&d, 2.0) - 5.0).abs() <= 1e-12);
    assert!((norm(&d, f64::INFINITY) - 4.0).abs() <= 1e-12);
    // u v^* with |u| = 3, |v| = 2 has the single singular value 6 for every p.
    let r = ComplexMatrix::from_real_rows(&[[2.0, 0.0, 0.0], [2.0, 0.0, 0.0], [1.0, 0.0, 0.0]]).scale_real(2.0);
    for p in [1.0, 1.5, 3.0, f64::INFINITY] {
        assert!((norm(&r, p) - 6.0).abs() <= 1e-12, "p={p}");
    }
}

fn alpha(n: usize) -> impl Strategy<Value = Vec<C64>> {
    proptest::collection::vec((-3.0..3.0f64, -3.0..3.0f64), 2 * n + 2)
        .prop_map(|v| v.into_iter().map(|(a, b)| C64::new(a, b)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplier_norm_is_rademacher_norm(
        (n, a) in (1usize..=3).prop_flat_map(|n| (Just(n), alpha(n))),
        p in prop_oneof![Just(1.0), Just(1.5), Just(2.0), Just(3.0), Just(4.0), Just(f64::INFINITY)],
    ) {
        let p = PExponent::new(p).unwrap();
        let lhs = spin_multiplier_norm(n, &a, p).unwrap().value;
        let rhs = rademacher_norm(n, &a, p).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1e-300), "{lhs} vs {rhs}");
    }
}
