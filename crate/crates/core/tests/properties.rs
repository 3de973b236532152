use proptest::prelude::*;

use hankel_core::json::{decomposition_from_json, decomposition_to_json, tensor_from_json, tensor_to_json};
use hankel_core::linalg::{kernel_basis, mat_rank};
use hankel_core::rank_relations::classify;
use hankel_core::tensor::{reconstruct, to_binary_form, HankelTensor};
use hankel_core::vandermonde::decompose;
use hankel_core::{Mat, Mode, Scalar};

fn hankel() -> impl Strategy<Value = HankelTensor> {
    (2usize..=4, 1usize..=4)
        .prop_flat_map(|(n, m)| (Just(n), Just(m), prop::collection::vec(-9i64..=9, (n - 1) * m + 1)))
        .prop_map(|(n, m, h)| HankelTensor::from_i64(n, m, &h).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn decomposition_reconstructs(t in hankel(), seed in 0u64..1000) {
        if let Ok(dec) = decompose(&t, seed) {
            let rec = reconstruct(&dec).unwrap();
            if dec.mode == Mode::Exact {
                prop_assert_eq!(&rec, &t);
            } else {
                for (x, y) in rec.h().iter().zip(t.h()) {
                    prop_assert!((x.to_complex() - y.to_complex()).norm() < 1e-6);
                }
            }
            let back = decomposition_from_json(&decomposition_to_json(&dec)).unwrap();
            prop_assert_eq!(back, dec);
        }
    }

    #[test]
    fn tensor_json_round_trip(t in hankel()) {
        prop_assert_eq!(tensor_from_json(&tensor_to_json(&t)).unwrap(), t);
    }

    #[test]
    fn rank_chain_holds(t in hankel()) {
        let rep = classify(&t).unwrap();
        prop_assert!(rep.chain_holds(), "{:?}", rep);
        prop_assert!(rep.brank_v <= rep.vrank);
    }

    #[test]
    fn binary_form_is_linear(a in hankel(), hb in prop::collection::vec(-9i64..=9, 17), p in -5i64..=5, q in 1i64..=5) {
        let b = HankelTensor::from_i64(a.n(), a.m(), &hb[..a.h().len()]).unwrap();
        let (alpha, beta) = (Scalar::ratio(p, q), Scalar::from_i64(Mode::Exact, q));
        let c = HankelTensor::linear_combination(&alpha, &a, &beta, &b).unwrap();
        let (fa, fb, fc) = (to_binary_form(&a), to_binary_form(&b), to_binary_form(&c));
        for j in 0..fc.coeffs().len() {
            let want = alpha.mul(&fa.coeffs()[j]).unwrap().add(&beta.mul(&fb.coeffs()[j]).unwrap()).unwrap();
            prop_assert_eq!(&fc.coeffs()[j], &want);
        }
    }

    #[test]
    fn rank_plus_nullity(rows in 1usize..=6, cols in 1usize..=6, vals in prop::collection::vec(-2i64..=2, 36)) {
        let a = Mat::from_fn(rows, cols, Mode::Exact, |i, j| Scalar::from_i64(Mode::Exact, vals[i * 6 + j])).unwrap();
        let k = kernel_basis(&a).unwrap();
        prop_assert_eq!(mat_rank(&a, 0.0).unwrap() + k.len(), cols);
        for v in &k {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }
}
