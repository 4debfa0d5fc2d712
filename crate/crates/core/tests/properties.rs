use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

use cyalg::groupact::{group_closure, integral_character};
use cyalg::homology::{betti_numbers, ce_chain_complex, cy_routes, is_cy_universal};
use cyalg::lie::{classify_cy3, cy3_from_sextuple, sextuple_extract, LieAlgebra, Sextuple};
use cyalg::linalg::Matrix;
use cyalg::ncpoly::{NCPolynomial, Word};
use cyalg::potential::{cyclic_derivative, cyclic_reduce, least_rotation};
use cyalg::problem::catalog_cases;
use cyalg::sampling::{random_cocycle, random_invertible, random_lie_algebra, random_polynomial, rng};
use cyalg::scalar::Scalar;
use cyalg::sridharan::{build_sridharan, is_cy_sridharan, xi_automorphism, SridharanAlgebra};

fn scalar() -> impl Strategy<Value = Scalar> {
    let conductor = prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]);
    (conductor, prop::collection::vec((-4i64..=4, 1i64..=3), 1..5)).prop_map(|(n, cs)| {
        let coeffs = cs
            .into_iter()
            .map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
            .collect();
        Scalar::from_power_coeffs(n, coeffs)
    })
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows).prop_map(|rows| {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Scalar::from_int).collect())
                .collect(),
        )
        .expect("rectangular")
    })
}

fn any_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| int_matrix(r, c))
}

fn sextuple() -> impl Strategy<Value = Sextuple> {
    prop::array::uniform6((-3i64..=3, 1i64..=2)).prop_map(|v| {
        let [a, b, c, u, w, x] = v.map(|(p, q)| Scalar::ratio(p, q));
        Sextuple::new(a, b, c, u, w, x)
    })
}

fn algebra(dim: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = LieAlgebra> {
    (dim, any::<u64>()).prop_map(|(d, seed)| random_lie_algebra(&mut rng(seed), d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn scalar_text_roundtrip(a in scalar()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Scalar>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), a);
    }

    #[test]
    fn rank_of_transpose(m in any_matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernel_is_kernel(m in any_matrix()) {
        let k = m.kernel();
        prop_assert_eq!(k.len() + m.rank(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in (1usize..=4).prop_flat_map(|n| (int_matrix(n, n), int_matrix(n, n)))) {
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), &a.determinant().unwrap() * &b.determinant().unwrap());
    }

    #[test]
    fn sextuple_roundtrip(s in sextuple()) {
        let l = cy3_from_sextuple(&s);
        prop_assert!(l.is_unimodular().holds);
        prop_assert_eq!(sextuple_extract(&l).unwrap(), s);
    }

    #[test]
    fn classification_survives_basis_change(s in sextuple(), seed in any::<u64>()) {
        let l = cy3_from_sextuple(&s);
        let p = random_invertible(&mut rng(seed), 3);
        let m = l.change_basis(&p).unwrap();
        prop_assert_eq!(classify_cy3(&l).unwrap(), classify_cy3(&m).unwrap());
    }

    #[test]
    fn differential_squares_to_zero(l in algebra(1..=4)) {
        prop_assert!(ce_chain_complex(&l).squares_to_zero());
    }

    #[test]
    fn euler_characteristic_vanishes(l in algebra(1..=4)) {
        let chi: i64 = betti_numbers(&l)
            .iter()
            .enumerate()
            .map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        prop_assert_eq!(chi, 0);
    }

    #[test]
    fn routes_agree_and_duality_holds(l in algebra(1..=4)) {
        let routes = cy_routes(&l);
        prop_assert!(routes.agree());
        let b = betti_numbers(&l);
        prop_assert_eq!(b[0], 1);
        if routes.trace_condition {
            let d = l.dim();
            prop_assert_eq!(b[d], 1);
            for n in 0..=d {
                prop_assert_eq!(b[n], b[d - n]);
            }
        } else {
            prop_assert_eq!(b[l.dim()], 0);
        }
    }

    #[test]
    fn derivative_is_linear(seed in any::<u64>(), a in -3i64..=3, b in -3i64..=3) {
        let mut r = rng(seed);
        let p = random_polynomial(&mut r, 3, 4, 4);
        let q = random_polynomial(&mut r, 3, 4, 4);
        let (sa, sb) = (Scalar::from_int(a), Scalar::from_int(b));
        let combo = &p.scale(&sa) + &q.scale(&sb);
        for i in 0..3 {
            let lhs = cyclic_derivative(&cyclic_reduce(&combo, 3), i);
            let rhs = &cyclic_derivative(&cyclic_reduce(&p, 3), i).scale(&sa)
                + &cyclic_derivative(&cyclic_reduce(&q, 3), i).scale(&sb);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn derivative_ignores_rotation(letters in prop::collection::vec(0usize..3, 1..7), shift in 0usize..7) {
        let k = shift % letters.len();
        let mut rotated = letters[k..].to_vec();
        rotated.extend_from_slice(&letters[..k]);
        prop_assert_eq!(least_rotation(&letters), least_rotation(&rotated));
        let p = cyclic_reduce(&NCPolynomial::word(&letters), 3);
        let q = cyclic_reduce(&NCPolynomial::word(&rotated), 3);
        for i in 0..3 {
            prop_assert_eq!(cyclic_derivative(&p, i), cyclic_derivative(&q, i));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    /// `U_f(g)` is CY exactly when `U(g)` is, whatever the cocycle.
    #[test]
    fn sridharan_cy_matches_universal(l in algebra(3..=3), seed in any::<u64>()) {
        let f = random_cocycle(&mut rng(seed), &l);
        let rep = is_cy_sridharan(&l, &f).unwrap();
        let base = is_cy_universal(&l);
        prop_assert_eq!(rep.verdict, base.verdict);
        prop_assert_eq!(rep.dimension, base.dimension);
        if rep.verdict {
            prop_assert!(classify_cy3(&l).is_ok());
        }
    }
}

fn random_sridharan(seed: u64, dim: usize) -> SridharanAlgebra {
    let mut r = rng(seed);
    let l = random_lie_algebra(&mut r, dim);
    let f = random_cocycle(&mut r, &l);
    build_sridharan(&l, &f).expect("sampled cocycle is valid")
}

/// Reduces by picking a random descent in a random unsorted word each step.
fn random_order_reduce<R: Rng>(a: &SridharanAlgebra, p: &NCPolynomial, r: &mut R) -> NCPolynomial {
    let mut cur = p.clone();
    loop {
        let unsorted: Vec<Word> = cur
            .terms()
            .filter(|(w, _)| !w.is_sorted())
            .map(|(w, _)| w.clone())
            .collect();
        if unsorted.is_empty() {
            return cur;
        }
        let w = &unsorted[r.gen_range(0..unsorted.len())];
        let descents: Vec<usize> = w
            .letters()
            .windows(2)
            .enumerate()
            .filter(|(_, x)| x[0] > x[1])
            .map(|(i, _)| i)
            .collect();
        let pos = descents[r.gen_range(0..descents.len())];
        let c = cur.coefficient(w);
        let image = a.rewrite_at(w, pos).expect("descent");
        let mut next = &cur - &NCPolynomial::monomial(w.clone(), c.clone());
        next = &next + &image.scale(&c);
        cur = next;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_order_is_irrelevant(seed in any::<u64>(), dim in 2usize..=4) {
        let a = random_sridharan(seed, dim);
        let mut r = rng(seed ^ 0xabcd);
        let p = random_polynomial(&mut r, dim, 4, 3);
        prop_assert_eq!(random_order_reduce(&a, &p, &mut r), a.normal_form(&p));
    }

    #[test]
    fn random_sridharan_is_associative(seed in any::<u64>(), dim in 2usize..=4) {
        let a = random_sridharan(seed, dim);
        let mut r = rng(seed ^ 0x1234);
        let p = random_polynomial(&mut r, dim, 2, 2);
        let q = random_polynomial(&mut r, dim, 2, 2);
        let s = random_polynomial(&mut r, dim, 2, 2);
        prop_assert_eq!(a.mul(&a.mul(&p, &q), &s), a.mul(&p, &a.mul(&q, &s)));
    }

    #[test]
    fn xi_inverse_undoes_xi(case in 0usize..7, h in prop::collection::vec(-3i64..=3, 3)) {
        let cases = catalog_cases();
        let a = &cases[case].algebra;
        // 1-cocycles vanish on the derived algebra
        let derived = a.lie().derived_basis();
        let mut h: Vec<Scalar> = h.into_iter().map(Scalar::from_int).collect();
        if !derived.is_empty() {
            let m = Matrix::from_rows(derived).unwrap();
            let ker = m.kernel();
            let mut v = vec![Scalar::zero(); 3];
            for (k, basis) in ker.iter().enumerate() {
                for (n, e) in basis.iter().enumerate() {
                    v[n] += &(e * &h[k % h.len()]);
                }
            }
            h = v;
        }
        let neg: Vec<Scalar> = h.iter().map(|c| -c).collect();
        let xi = xi_automorphism(a, &h).unwrap();
        let back = xi_automorphism(a, &neg).unwrap();
        for i in 0..3 {
            let x = NCPolynomial::generator(i);
            prop_assert_eq!(a.normal_form(&back.apply(&xi.apply(&x))), x);
        }
    }

    #[test]
    fn closure_is_a_group_with_multiplicative_character(picks in prop::collection::vec(0usize..5, 1..3)) {
        let gens_pool = [
            Matrix::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]]),
            Matrix::from_i64(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
            Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]),
            Matrix::from_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]),
            Matrix::diag(&[Scalar::zeta(3), Scalar::one(), Scalar::zeta(3).pow(2).unwrap()]),
        ];
        let gens: Vec<Matrix> = picks.iter().map(|&i| gens_pool[i].clone()).collect();
        let g = group_closure(&gens, 1000).unwrap();
        prop_assert!(g.is_closed());
        prop_assert!(g.elements()[0] == Matrix::identity(3));
        for m in &gens {
            prop_assert!(g.index_of(m).is_some());
        }
        let chi = integral_character(&LieAlgebra::abelian(3), &g).unwrap();
        prop_assert!(chi.is_multiplicative(&g));
    }
}
