use birkhoff_core::facenum::{decompose, f_to_h, h_to_f, FVector, HVector};
use birkhoff_core::poset::Poset;
use birkhoff_core::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// A random poset: a random DAG on `n` labels (edges from lower to higher
/// label), closed transitively.
fn arb_poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (0..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            (Just(n), proptest::collection::vec(any::<bool>(), pairs))
        })
        .prop_map(|(n, edges)| {
            let mut covers = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if edges[k] {
                        covers.push((i, j));
                    }
                    k += 1;
                }
            }
            Poset::from_covers(n, &covers).unwrap()
        })
}

fn arb_perm_of(p: Poset) -> impl Strategy<Value = (Poset, Vec<usize>)> {
    let n = p.len();
    (Just(p), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

fn evaluate(coeffs_high_first: &[BigInt], x: &BigInt) -> BigInt {
    coeffs_high_first.iter().fold(BigInt::zero(), |acc, c| acc * x + c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_key_is_permutation_invariant((p, perm) in arb_poset(8).prop_flat_map(arb_perm_of)) {
        let q = p.relabel(&perm).unwrap();
        prop_assert_eq!(p.canonical_key().unwrap(), q.canonical_key().unwrap());
    }

    #[test]
    fn generated_posets_are_valid(p in arb_poset(10)) {
        prop_assert!(Poset::from_relation(p.len(), |x, y| p.lt(x, y)).is_ok());
    }

    #[test]
    fn f_h_round_trip(f in proptest::collection::vec(0u64..1_000_000, 0..=20)) {
        let fv = FVector::from_u64(&f);
        let h = f_to_h(&fv);
        prop_assert_eq!(&h.entries()[0], &BigInt::one());
        if !f.is_empty() {
            prop_assert_eq!(&h.entries()[1], &(BigInt::from(f[0]) - f.len()));
        }
        prop_assert_eq!(h_to_f(&h), fv);
    }

    #[test]
    fn h_f_round_trip(mut h in proptest::collection::vec(-1000i64..1000, 1..=21)) {
        h[0] = 1;
        let hv = HVector::from_i64(&h);
        prop_assert_eq!(f_to_h(&h_to_f(&hv)), hv);
    }

    #[test]
    fn defining_identity_holds_at_d_plus_one_points(f in proptest::collection::vec(0u64..10_000, 1..=12)) {
        let fv = FVector::from_u64(&f);
        let h = f_to_h(&fv);
        let d = f.len();
        // left: sum f_{i-1} x^{d-i}; coefficients from x^d down
        let left: Vec<BigInt> = std::iter::once(BigInt::one()).chain(f.iter().map(|&x| x.into())).collect();
        for x in 0..=d as i64 {
            let x = BigInt::from(x);
            let right = h.entries().iter().enumerate().fold(BigInt::zero(), |acc, (i, hi)| {
                acc + hi * num_traits::pow(&x + 1, d - i)
            });
            prop_assert_eq!(evaluate(&left, &x), right);
        }
    }

    #[test]
    fn decomposition_reconstructs_f(h in proptest::collection::vec(0i64..500, 1..=16)) {
        let hv = HVector::from_i64(&h);
        prop_assert_eq!(decompose(&hv).sum(), h_to_f(&hv).entries().to_vec());
    }
}
