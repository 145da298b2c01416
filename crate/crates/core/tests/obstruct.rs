use elliptic_genus::localize::builtin_action;
use elliptic_genus::manifold::builtin;
use elliptic_genus::obstruct::{
    code_audit, cross_check_prediction, determinant, fixed_codim, has_normal_shape, lattice_normal_form, m_o,
    m_o_min, rfpd_check, vanish_prediction, ObstructError, VanishSource,
};
use elliptic_genus::series::rational::{int, rat};
use elliptic_genus::series::Rational;
use elliptic_genus::verify::code_audit_naive;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mat(a: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    (0..a.len())
        .map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

fn rank_q(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let (n, c) = (m.len(), m[0].len());
    let mut r = 0;
    for col in 0..c {
        let Some(p) = (r..n).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..n {
            if i != r && !m[i][col].is_zero() {
                let f = &m[i][col] / &m[r][col];
                for j in 0..c {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Everything the normal form promises, checked from the outside.
fn assert_normal_form(a: &[Vec<i64>], p: i64) {
    let nf = lattice_normal_form(a, p).unwrap();
    let rows = a.len();
    let permuted: Vec<Vec<BigInt>> =
        a.iter().map(|r| nf.column_permutation.iter().map(|&c| BigInt::from(r[c])).collect()).collect();
    assert_eq!(mul(&nf.transform, &permuted), nf.matrix, "matrix = T A P for {a:?}");
    assert!(has_normal_shape(&nf.matrix, p), "{a:?} -> {:?}", nf.matrix);
    for i in 0..rows {
        for j in 0..rows {
            assert_eq!(nf.matrix[i][j].is_zero(), i != j || nf.matrix[i][i].is_zero());
        }
    }
    assert_eq!(nf.covering_degree, determinant(&nf.transform).abs());
    assert!(!(&nf.covering_degree % p).is_zero(), "degree {} for p={p}", nf.covering_degree);
    let mut stacked = permuted.clone();
    stacked.extend(nf.matrix.iter().cloned());
    assert_eq!(rank_q(&stacked), rows, "row space preserved");
    // the left block is invertible mod p
    let left: Vec<Vec<BigInt>> = nf.matrix.iter().map(|r| r[..rows].to_vec()).collect();
    assert!(!(determinant(&left) % p).is_zero());
}

#[test]
fn normal_form_examples() {
    let nf = lattice_normal_form(&[vec![1, 0, 1, 1], vec![0, 1, 1, 1]], 2).unwrap();
    assert_eq!(nf.matrix, mat(&[vec![1, 0, 1, 1], vec![0, 1, 1, 1]]));
    assert_eq!(nf.covering_degree, BigInt::one());
    assert_normal_form(&[vec![2, 1, 0, 1], vec![1, 1, 1, 0]], 2);
    assert!(matches!(
        lattice_normal_form(&[vec![1, 1, 0, 0], vec![1, 1, 2, 2]], 2),
        Err(ObstructError::Effectiveness { rank: 1, rows: 2, .. })
    ));
    assert!(matches!(lattice_normal_form(&[vec![1, 0]], 4), Err(ObstructError::NotPrime(4))));
}

/// Breadth-first search over short sequences of row operations (unimodular
/// moves and the restricted `b_i ← α b_i + β b_j`), looking for any
/// normal-shaped matrix.
fn brute_force_normal_form_exists(a: &[Vec<i64>], p: i64, depth: usize) -> bool {
    let cols = a[0].len();
    let rows = a.len();
    let mut frontier = vec![mat(a)];
    let mut seen = std::collections::HashSet::new();
    for _ in 0..=depth {
        let mut next = Vec::new();
        for m in frontier {
            if has_normal_shape(&m, p) {
                return true;
            }
            if !seen.insert(m.clone()) {
                continue;
            }
            for i in 0..rows {
                for j in 0..rows {
                    if i == j {
                        continue;
                    }
                    for alpha in [-3i64, -1, 1, 3] {
                        for beta in [-2i64, 2, -p, p] {
                            if alpha % p == 0 || beta % p != 0 {
                                continue;
                            }
                            let mut n = m.clone();
                            for c in 0..cols {
                                n[i][c] = &m[i][c] * alpha + &m[j][c] * beta;
                            }
                            next.push(n);
                        }
                    }
                }
            }
            // the unimodular change of basis: swaps and b_i ← b_i ± b_j
            for i in 0..rows {
                for j in 0..rows {
                    if i < j {
                        let mut n = m.clone();
                        n.swap(i, j);
                        next.push(n);
                    }
                    if i != j {
                        for k in [-1i64, 1] {
                            let mut n = m.clone();
                            for c in 0..cols {
                                n[i][c] = &m[i][c] + &m[j][c] * k;
                            }
                            next.push(n);
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    false
}

#[test]
fn normal_form_shape_is_reachable_by_brute_force() {
    // after the permutation the library found, a direct search also reaches the shape
    let a = vec![vec![2, 1, 0, 1], vec![1, 1, 1, 0]];
    let nf = lattice_normal_form(&a, 2).unwrap();
    let permuted: Vec<Vec<i64>> = a.iter().map(|r| nf.column_permutation.iter().map(|&c| r[c]).collect()).collect();
    assert!(brute_force_normal_form_exists(&permuted, 2, 3));
}

#[test]
fn normal_form_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut done = 0;
    for p in [2i64, 3, 5] {
        while done < 200 * (p as usize) {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(rows..=7);
            let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-6..=6)).collect()).collect();
            match lattice_normal_form(&a, p) {
                Ok(_) => {
                    assert_normal_form(&a, p);
                    done += 1;
                }
                Err(ObstructError::Effectiveness { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn spec_weight_examples() {
    assert_eq!(m_o(&[1, 1], 2).unwrap(), int(1));
    assert_eq!(m_o(&[1, 3, 4], 4).unwrap(), rat(1, 2));
    assert_eq!(m_o(&[], 5).unwrap(), int(0));
    assert_eq!(vanish_prediction(&VanishSource::Involution { codim: 8 }), 2);
    assert_eq!(vanish_prediction(&VanishSource::CyclicMo { m_o: rat(3, 2) }), 2);
    assert_eq!(vanish_prediction(&VanishSource::CyclicCodim { codim: 6, order: 3 }), 1);
}

#[test]
fn codim_bounded_by_m_o_on_random_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..2000 {
        let o = rng.gen_range(2..=9);
        let d = rng.gen_range(0..=10);
        let w: Vec<i64> = (0..d).map(|_| rng.gen_range(-40..=40)).collect();
        let c = fixed_codim(&w, o).unwrap();
        let direct = 2 * w.iter().filter(|&&x| x % o != 0).count() as u64;
        assert_eq!(c, direct);
        assert!(Rational::from_integer(BigInt::from(c)) <= int(2 * o) * m_o(&w, o).unwrap());
    }
}

#[test]
fn vanish_prediction_is_monotone() {
    let mut last = 0;
    for c in 0..60 {
        let v = vanish_prediction(&VanishSource::Involution { codim: c });
        assert!(v >= last);
        last = v;
    }
    let mut last = 0;
    for n in 0..40 {
        let v = vanish_prediction(&VanishSource::CyclicMo { m_o: rat(n, 4) });
        assert!(v >= last);
        last = v;
    }
    for o in 2..6u64 {
        let mut last = 0;
        for c in 0..60 {
            let v = vanish_prediction(&VanishSource::CyclicCodim { codim: c, order: o });
            assert!(v >= last);
            last = v;
        }
    }
}

#[test]
fn cross_check_on_quaternionic_plane() {
    let hp2 = builtin("HP2").unwrap();
    let a = builtin_action("HP2_diagonal(1,2,4)").unwrap();
    let comps: Vec<Vec<i64>> = a.components.iter().map(|c| c.weights()).collect();
    let honest = cross_check_prediction(&hp2, &comps, 2, 4).unwrap();
    assert!(honest.pass);
    assert!(honest.m_o <= int(1));
    assert_eq!(honest.first_nonzero, Some(1));
    let fake = cross_check_prediction(&hp2, &[vec![1, 1, 1, 1], vec![3, 3, 1, 1]], 2, 4).unwrap();
    assert_eq!(fake.m_o, int(2));
    assert!(!fake.pass);
    // Φ₀ of an odd-dimensional manifold is zero: nothing to contradict
    let cp3 = builtin("CP3").unwrap();
    let r = cross_check_prediction(&cp3, &[vec![1, 1, 1, 1, 1, 1]], 2, 3).unwrap();
    assert_eq!(r.first_nonzero, None);
    assert!(r.pass);
    assert_eq!(m_o_min(&comps, 2).unwrap(), Some(int(1)));
}

#[test]
fn code_audit_examples() {
    let a = code_audit(&[vec![1, 1, 0, 0], vec![0, 0, 1, 1]], 1).unwrap();
    assert_eq!(a.weight_distribution.into_iter().collect::<Vec<_>>(), vec![(0, 1), (2, 2), (4, 1)]);
    let z = code_audit(&[vec![0, 0, 0, 0], vec![1, 1, 0, 0]], 1).unwrap();
    assert_eq!(z.weight_distribution.get(&0), Some(&2));
    // two weight-2 rows with disjoint supports add to a weight-4 word,
    // which exceeds 2r = 2, so the low-weight words are not closed
    let d = code_audit(&[vec![1, 1, 0, 0, 0, 0], vec![0, 0, 1, 1, 0, 0]], 1).unwrap();
    assert_eq!(d.low_weight_closed, Some(false));
    assert!(d.rows_have_two_odd_entries);
    assert!(!d.weight_dichotomy);
    // a single such row does close up
    let one = code_audit(&[vec![1, 1, 0, 0, 0, 0]], 1).unwrap();
    assert_eq!(one.low_weight_closed, Some(true));
    assert!(matches!(code_audit(&vec![vec![0; 30]; 26], 13), Err(ObstructError::Cap(_))));
}

#[test]
fn code_audit_matches_naive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..300 {
        let r = rng.gen_range(1..=3);
        let rows = 2 * r;
        let cols = rng.gen_range(2 * r..=12);
        let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        assert_eq!(code_audit(&a, r).unwrap(), code_audit_naive(&a, r), "{a:?}");
    }
}

#[test]
fn code_audit_at_the_cap() {
    let rows: Vec<Vec<i64>> = (0..24).map(|i| (0..48).map(|j| i64::from(j == 2 * i || j == 2 * i + 1)).collect()).collect();
    let a = code_audit(&rows, 12).unwrap();
    assert_eq!(a.words, 1 << 24);
    assert_eq!(a.weight_distribution.values().sum::<u64>(), 1 << 24);
    assert!(a.rows_have_two_odd_entries);
}

#[test]
fn rfpd_examples() {
    assert!(rfpd_check(&[(8, vec![4, 0])]));
    assert!(!rfpd_check(&[(8, vec![4, 4])]));
    assert!(rfpd_check(&[(8, vec![4])]));
    assert!(!rfpd_check(&[(12, vec![2, 2]), (8, vec![6, 2])]));
}
