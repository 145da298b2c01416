use elliptic_genus::series::rational::{int, rat};
use elliptic_genus::series::{Laurent, Rational, Ring};
use proptest::prelude::*;

type S = Laurent<Rational>;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

/// Series truncated at `s^cap`, cap ≤ 6, starting at `low`.
fn series(low: i64) -> impl Strategy<Value = S> {
    (1i64..=6, prop::collection::vec(small_rat(), 6)).prop_map(move |(cap, c)| Laurent::new(low, c, Some(low + cap)))
}

/// Power series with a square leading coefficient, so `pow(−1/2)` is exact.
fn unit_series() -> impl Strategy<Value = S> {
    (prop::sample::select(vec![rat(1, 1), rat(4, 1), rat(1, 9), rat(9, 4)]), prop::collection::vec(small_rat(), 5), 2i64..=6)
        .prop_map(|(lead, rest, cap)| {
            let mut c = vec![lead];
            c.extend(rest);
            Laurent::new(0, c, Some(cap))
        })
}

fn same(a: &S, b: &S) -> bool {
    a.agrees_with(b) && b.agrees_with(a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_laws(a in series(0), b in series(0), c in series(-1)) {
        prop_assert!(same(&a.add(&b), &b.add(&a)));
        prop_assert!(same(&a.mul(&b), &b.mul(&a)));
        prop_assert!(same(&a.add(&b).add(&c), &a.add(&b.add(&c))));
        prop_assert!(same(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))));
        prop_assert!(same(&a.mul(&b.add(&c)), &a.mul(&b).add(&a.mul(&c))));
        prop_assert!(same(&a.sub(&a), &S::zero_to(a.order().unwrap())));
        prop_assert!(same(&a.mul(&S::one()), &a));
    }

    #[test]
    fn inverse_round_trip(u in unit_series()) {
        let inv = u.inv().unwrap();
        let n = u.order().unwrap();
        prop_assert!(same(&u.mul(&inv), &S::one().truncate(n)));
    }

    #[test]
    fn inverse_square_root_round_trip(u in unit_series()) {
        let r = u.pow_rational(-1, 2).unwrap();
        let n = u.order().unwrap();
        prop_assert!(same(&r.mul(&r).mul(&u), &S::one().truncate(n)));
    }

    #[test]
    fn reversion_round_trip(rest in prop::collection::vec(small_rat(), 5), cap in 2i64..=7) {
        let mut c = vec![int(1)];
        c.extend(rest);
        let g = Laurent::new(1, c, Some(cap));
        let h = g.reversion().unwrap();
        let id = Laurent::new(1, vec![int(1)], Some(cap));
        prop_assert!(g.compose(&h).unwrap().agrees_with(&id));
        prop_assert!(h.compose(&g).unwrap().agrees_with(&id));
    }

    #[test]
    fn reversion_of_odd_is_odd(a in small_rat(), b in small_rat(), cap in 2i64..=9) {
        let g = Laurent::new(1, vec![int(1), int(0), a, int(0), b], Some(cap));
        prop_assert!(g.is_odd());
        prop_assert!(g.reversion().unwrap().is_odd());
    }

    #[test]
    fn q_embedding_is_multiplicative(x in prop::collection::vec(small_rat(), 1..5), y in prop::collection::vec(small_rat(), 1..5), n in 1i64..=5) {
        let qx = S::from_q_coeffs(x.clone(), Some(n));
        let qy = S::from_q_coeffs(y.clone(), Some(n));
        // product computed on q-coefficients directly
        let mut prod = vec![int(0); n as usize];
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                if i + j < n as usize {
                    prod[i + j] += a * b;
                }
            }
        }
        prop_assert!(same(&qx.mul(&qy), &S::from_q_coeffs(prod, Some(n))));
    }
}
