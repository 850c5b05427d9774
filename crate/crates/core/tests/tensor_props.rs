use homco::tensor::{compose_pair, lincomb, matmul, matrix_inverse, matrix_power, permute, precompose};
use homco::{Field, LegPermutation, PrimeField, Space, TensorMap};
use proptest::prelude::*;

const P: u64 = 7;

fn f7() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn tensor(dim: usize, arity: usize, raw: &[i64]) -> TensorMap<PrimeField> {
    let f = f7();
    let c = Space::new("C", dim).unwrap();
    let n = dim.pow(arity as u32 + 1);
    let coeffs = (0..n).map(|k| f.from_i64(raw[k % raw.len()])).collect();
    TensorMap::from_coeffs(&f, c.clone(), vec![c; arity], coeffs).unwrap()
}

fn perm3() -> impl Strategy<Value = LegPermutation> {
    Just(vec![0usize, 1, 2])
        .prop_shuffle()
        .prop_map(|v| LegPermutation::from_images(v).unwrap())
}

fn raw() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(0i64..P as i64, 1..40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permute_respects_composition(p in perm3(), q in perm3(), r in raw(), d in 1usize..4) {
        let t = tensor(d, 3, &r);
        let lhs = permute(&p.compose(&q), &t).unwrap();
        let rhs = permute(&p, &permute(&q, &t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(permute(&p.inverse(), &permute(&p, &t).unwrap()).unwrap(), t);
    }

    #[test]
    fn named_permutations(r in raw(), d in 1usize..4) {
        let t3 = tensor(d, 3, &r);
        let xi = LegPermutation::xi();
        let once = permute(&xi, &t3).unwrap();
        let thrice = permute(&xi, &permute(&xi, &once).unwrap()).unwrap();
        prop_assert_eq!(&thrice, &t3);
        prop_assert_eq!(permute(&LegPermutation::xi2(), &t3).unwrap(), permute(&xi, &once).unwrap());
        let t2 = tensor(d, 2, &r);
        let tau = LegPermutation::tau();
        prop_assert_eq!(permute(&tau, &permute(&tau, &t2).unwrap()).unwrap(), t2);
    }

    #[test]
    fn lincomb_is_linear(a in raw(), b in raw(), x in 0i64..7, y in 0i64..7, d in 1usize..4) {
        let f = f7();
        let (s, t) = (tensor(d, 2, &a), tensor(d, 2, &b));
        let (x, y) = (f.from_i64(x), f.from_i64(y));
        let l = lincomb(&[(x, &s), (y, &t)]).unwrap();
        prop_assert_eq!(&l, &s.scale(&x).add(&t.scale(&y)).unwrap());
        let tau = LegPermutation::tau();
        let pl = permute(&tau, &l).unwrap();
        let lp = lincomb(&[(x, &permute(&tau, &s).unwrap()), (y, &permute(&tau, &t).unwrap())]).unwrap();
        prop_assert_eq!(pl, lp);
        prop_assert!(s.sub(&s).unwrap().is_zero());
    }

    #[test]
    fn matrix_powers_add(r in raw(), m in 0u64..5, n in 0u64..5, d in 1usize..4) {
        let a = tensor(d, 1, &r);
        let lhs = matrix_power(&a, m + n).unwrap();
        let rhs = matmul(&matrix_power(&a, m).unwrap(), &matrix_power(&a, n).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(matrix_power(&a, 0).unwrap(), TensorMap::identity(&f7(), a.dom()));
    }

    #[test]
    fn matrix_rows_round_trip(r in raw(), d in 1usize..4) {
        let a = tensor(d, 1, &r);
        let back = TensorMap::from_matrix(&f7(), a.dom(), &a.matrix_rows()).unwrap();
        prop_assert_eq!(&back, &a);
        if let Ok(inv) = matrix_inverse(&a) {
            prop_assert_eq!(matmul(&a, &inv).unwrap(), TensorMap::identity(&f7(), a.dom()));
        }
    }

    #[test]
    fn precompose_with_identity_and_powers(r in raw(), s in raw(), d in 1usize..4) {
        let t = tensor(d, 2, &r);
        let a = tensor(d, 1, &s);
        let id = TensorMap::identity(&f7(), t.dom());
        prop_assert_eq!(&precompose(&t, &id).unwrap(), &t);
        let twice = precompose(&precompose(&t, &a).unwrap(), &a).unwrap();
        prop_assert_eq!(twice, precompose(&t, &matrix_power(&a, 2).unwrap()).unwrap());
        prop_assert_eq!(compose_pair(&id, &id, &t).unwrap(), t);
    }
}
