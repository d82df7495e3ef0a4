//! Cross-checks of the rank computation against alternative routes, plus
//! the checker examples.

use num_bigint::BigInt;
use num_traits::One;
use schubert_core::{
    check_factorization, check_monotonicity, decomposition_witness, enumerate_weights, in_lambda,
    rank, rank_by_full_product, rank_with_limit, verify_theorem, CohomologyElement, DictionaryCase,
    GrassmannianContext, Partition, QuantumElement, RankQuery, SlnWeight, VerifyOptions,
};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn sym(w: &SlnWeight, level: u32) -> RankQuery {
    RankQuery::symmetric(w.clone(), level).unwrap()
}

#[test]
fn pairing_matches_full_product() {
    for n in 3..=6usize {
        for level in 1..=3 {
            for w in enumerate_weights(n, level) {
                let q = sym(&w, level);
                let a = rank(&q).unwrap();
                let b = rank_by_full_product(&q).unwrap();
                assert_eq!(a.rank, b.rank, "n={n} ℓ={level} {w}");
                assert_eq!(a.dictionary_case, b.dictionary_case);
                assert!(a.exact && b.exact);
            }
        }
    }
}

#[test]
fn mixed_weights_match_full_product() {
    let n = 4;
    let ws: Vec<_> = enumerate_weights(n, 2).collect();
    for a in &ws {
        for b in &ws {
            let q = RankQuery::new(n, 2, vec![a.clone(), b.clone(), a.clone(), b.clone()]).unwrap();
            assert_eq!(
                rank(&q).unwrap().rank,
                rank_by_full_product(&q).unwrap().rank,
                "{a} {b}"
            );
        }
    }
}

/// When s = 0 the classical product in Gr(n, n+k) and the q^0 part of the
/// quantum product in the same Grassmannian give the same coefficient.
#[test]
fn classical_and_quantum_agree_at_s_zero() {
    for n in 3..=6usize {
        for level in 1..=3 {
            for w in enumerate_weights(n, level) {
                let r = rank(&sym(&w, level)).unwrap();
                if r.dictionary_case != DictionaryCase::Classical || r.s != 0 {
                    continue;
                }
                let lam = w.to_partition();
                // n|λ| boxes spread over n rows
                let k = (lam.size() as usize).max(1);
                let ctx = GrassmannianContext::new(n, n + k).unwrap();
                let mut c = CohomologyElement::one(ctx);
                let mut q = QuantumElement::one(ctx);
                for _ in 0..n {
                    c = c
                        .giambelli_mul(&CohomologyElement::schubert(ctx, lam.clone()).unwrap())
                        .unwrap();
                    q = q
                        .qmul(&QuantumElement::schubert(ctx, lam.clone()).unwrap())
                        .unwrap();
                }
                assert_eq!(
                    c.coefficient_of(&ctx.point()),
                    q.qcoefficient_of(0, &ctx.point())
                );
                assert_eq!(
                    c.coefficient_of(&ctx.point()),
                    r.rank,
                    "n={n} ℓ={level} {w}"
                );
            }
        }
    }
}

/// For s < 0, padding with the class of the ((ℓ − k)^n) rectangle moves the
/// same count into Gr(n, n+ℓ).
#[test]
fn classical_case_through_level_grassmannian() {
    for n in 3..=5usize {
        for level in 1..=3u32 {
            for w in enumerate_weights(n, level) {
                let r = rank(&sym(&w, level)).unwrap();
                if r.dictionary_case != DictionaryCase::Classical {
                    continue;
                }
                let k = w.to_partition().size() as u32;
                let ctx = GrassmannianContext::new(n, n + level as usize).unwrap();
                let mut x =
                    CohomologyElement::schubert(ctx, Partition::rectangle(n, level - k)).unwrap();
                let lam = CohomologyElement::schubert(ctx, w.to_partition()).unwrap();
                for _ in 0..n {
                    x = x.giambelli_mul(&lam).unwrap();
                }
                assert_eq!(
                    x.coefficient_of(&ctx.point()),
                    r.rank,
                    "n={n} ℓ={level} {w}"
                );
            }
        }
    }
}

#[test]
fn early_exit_agrees_on_small_grid() {
    for n in 2..=6usize {
        for level in 1..=3 {
            let fast = verify_theorem(
                n,
                level,
                VerifyOptions {
                    early_exit: true,
                    parallel: false,
                },
            )
            .unwrap();
            let full = verify_theorem(
                n,
                level,
                VerifyOptions {
                    early_exit: false,
                    parallel: true,
                },
            )
            .unwrap();
            assert_eq!(fast.verdict, full.verdict);
            for (a, b) in fast.records.iter().zip(&full.records) {
                assert_eq!(a.weight, b.weight);
                assert_eq!(
                    a.rank_or_bound.is_one(),
                    b.rank_or_bound.is_one(),
                    "{}",
                    a.weight
                );
                assert!(b.exact);
                if a.exact {
                    assert_eq!(a.rank_or_bound, b.rank_or_bound);
                } else {
                    assert!(a.rank_or_bound > BigInt::one() && a.rank_or_bound <= b.rank_or_bound);
                }
            }
        }
    }
}

#[test]
fn limited_rank_is_a_lower_bound() {
    let q = RankQuery::symmetric(SlnWeight::fundamental(7, 3).unwrap(), 2).unwrap();
    let bounded = rank_with_limit(&q, Some(1)).unwrap();
    assert!(bounded.exceeds_one());
    assert!(bounded.rank <= BigInt::from(85));
    assert_eq!(rank(&q).unwrap().rank, BigInt::from(85));
}

#[test]
fn factorization_examples() {
    let c = check_factorization(&p("[2,1]"), 4, 2).unwrap();
    assert!(c.holds());
    assert_eq!(c.tail, p("[1]"));
    let c = check_factorization(&p("[3,3,3]"), 5, 3).unwrap();
    assert!(c.holds());
    assert!(c.rank_full.is_one());
    let c = check_factorization(&p("[2,2,1]"), 5, 2).unwrap();
    assert!(c.holds());
    assert_eq!(c.tail, p("[1]"));
    assert!(check_factorization(&p("[1,1]"), 5, 2).is_err());
}

#[test]
fn monotonicity_examples() {
    assert!(check_monotonicity(&p("[1,1]"), 4, 1, 1).unwrap());
    assert!(check_monotonicity(&p("[1,1,1]"), 7, 2, 1).unwrap());
    for w in enumerate_weights(5, 2) {
        if in_lambda(&w, 2).is_some() {
            assert!(check_monotonicity(&w.to_partition(), 5, 2, 1).unwrap());
        }
    }
    assert!(check_monotonicity(&p("[3]"), 4, 2, 1).is_err());
    assert!(check_monotonicity(&p("[1]"), 4, 2, 0).is_err());
}

#[test]
fn decomposition_examples() {
    assert!(decomposition_witness(5, 3, 1, 2).unwrap().holds());
    assert!(decomposition_witness(4, 2, 1, 1).unwrap().holds());
    let w = decomposition_witness(6, 3, 0, 2).unwrap();
    assert!(w.holds());
    assert!(decomposition_witness(4, 2, 3, 1).is_err());
    assert!(decomposition_witness(4, 2, 1, 4).is_err());
}

#[test]
fn large_n_members_have_rank_one() {
    let n = 50;
    for (i, m, level) in [
        (1, 0, 1),
        (17, 1, 2),
        (25, 0, 2),
        (48, 2, 2),
        (49, 0, 2),
        (3, 1, 3),
    ] {
        let mut coeffs = vec![0u32; n - 1];
        coeffs[i - 1] = level - m;
        if i < n - 1 {
            coeffs[i] = m;
        }
        let w = SlnWeight::new(n, &coeffs).unwrap();
        assert!(in_lambda(&w, level).is_some());
        let r = rank(&RankQuery::symmetric(w.clone(), level).unwrap()).unwrap();
        assert!(r.is_one(), "{w} at {level}: {}", r.rank);
    }
}
