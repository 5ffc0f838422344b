use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use spinhdet_core::polynomial::{pow_linear, var_names};
use spinhdet_core::roots::BasisChange;
use spinhdet_core::scalar::{int, rat};
use spinhdet_core::{IntPolynomial, LinearForm, Monomial, RatPolynomial, Rational, RANK};

const N: usize = 4;

fn small_poly(nvars: usize) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), -9i64..=9), 0..6).prop_map(
        move |terms| {
            IntPolynomial::from_terms(
                nvars,
                terms
                    .into_iter()
                    .map(|(e, c)| (Monomial::new(e), BigInt::from(c))),
            )
            .unwrap()
        },
    )
}

fn small_form() -> impl Strategy<Value = LinearForm> {
    prop::collection::vec(-2i64..=2, N)
        .prop_filter("nonzero", |c| c.iter().any(|x| *x != 0))
        .prop_map(|c| LinearForm::normalize(&c).unwrap().0)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(
        a in small_poly(N), b in small_poly(N), c in small_poly(N)
    ) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn multiplication_is_commutative_and_associative(
        a in small_poly(N), b in small_poly(N), c in small_poly(N)
    ) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in small_poly(N), b in small_poly(N), c in small_poly(N)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn identities_and_inverses(a in small_poly(N)) {
        let zero = IntPolynomial::zero(N);
        let one = IntPolynomial::constant(N, BigInt::one());
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert!((&a * &zero).is_zero());
    }

    #[test]
    fn no_stored_zero_coefficients(a in small_poly(N), b in small_poly(N)) {
        let p = &(&a * &b) - &(&b * &a);
        prop_assert!(p.is_empty());
        prop_assert!((&a * &b).terms().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        a in small_poly(N), b in small_poly(N),
        pt in prop::collection::vec(rational(), N)
    ) {
        let (ar, br) = (a.to_rational(), b.to_rational());
        let ea = ar.eval(&pt).unwrap();
        let eb = br.eval(&pt).unwrap();
        prop_assert_eq!((&ar + &br).eval(&pt).unwrap(), &ea + &eb);
        prop_assert_eq!((&ar * &br).eval(&pt).unwrap(), &ea * &eb);
    }

    #[test]
    fn pow_matches_repeated_multiplication(a in small_poly(3), k in 0u32..4) {
        let mut acc = IntPolynomial::constant(3, BigInt::one());
        for _ in 0..k {
            acc = &acc * &a;
        }
        prop_assert_eq!(a.pow(k), acc);
    }

    #[test]
    fn pow_linear_matches_pow(f in small_form(), d in 0u32..9) {
        prop_assert_eq!(pow_linear(&f, d), f.to_polynomial().pow(d));
    }

    #[test]
    fn pow_linear_is_homogeneous(f in small_form(), d in 1u32..12) {
        let p = pow_linear(&f, d);
        prop_assert!(p.is_homogeneous());
        prop_assert_eq!(p.degree(), Some(d));
    }

    #[test]
    fn json_round_trip(a in small_poly(N)) {
        let json = a.to_json(&var_names("y", N)).unwrap();
        let text = serde_json::to_string(&json).unwrap();
        let back: spinhdet_core::polynomial::PolynomialJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(IntPolynomial::from_json(&back).unwrap(), a);
    }

    #[test]
    fn json_terms_descend(a in small_poly(N)) {
        let json = a.to_json(&var_names("y", N)).unwrap();
        let monos: Vec<Monomial> = json.terms.iter().map(|t| Monomial::new(t.exp.clone())).collect();
        prop_assert!(monos.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn set_var_zero_agrees_with_eval(
        a in small_poly(N), idx in 0usize..N,
        pt in prop::collection::vec(rational(), N)
    ) {
        let mut zeroed = pt.clone();
        zeroed[idx] = Rational::zero();
        let lhs = a.set_var_zero(idx).unwrap().to_rational().eval(&pt).unwrap();
        prop_assert_eq!(lhs, a.to_rational().eval(&zeroed).unwrap());
    }

    #[test]
    fn permuting_variables_permutes_evaluation(a in small_poly(N), pt in prop::collection::vec(rational(), N)) {
        let perm = [2usize, 0, 3, 1];
        let p = a.permute_vars(&perm).unwrap().to_rational();
        let q = a.to_rational();
        let moved: Vec<Rational> = (0..N).map(|i| pt[perm[i]].clone()).collect();
        prop_assert_eq!(p.eval(&pt).unwrap(), q.eval(&moved).unwrap());
    }
}

fn sparse_poly_in_eight() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec((prop::collection::vec(0usize..RANK, 0..4), -9i64..=9), 0..4).prop_map(
        |terms| {
            IntPolynomial::from_terms(
                RANK,
                terms.into_iter().map(|(vars, c)| {
                    let mut e = [0u32; RANK];
                    for v in vars {
                        e[v] += 1;
                    }
                    (Monomial::new(e), BigInt::from(c))
                }),
            )
            .unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn basis_change_round_trip(a in sparse_poly_in_eight()) {
        let basis = BasisChange::printed().unwrap();
        let p = a.to_rational();
        let there = p.substitute_linear(&basis.y_from_x).unwrap();
        let back = there.substitute_linear(&basis.x_from_y).unwrap();
        prop_assert_eq!(back, p);
    }
}

fn x_var(i: usize) -> RatPolynomial {
    RatPolynomial::var(RANK, i)
}

#[test]
fn coordinate_function_at_last_unit_vector() {
    let basis = BasisChange::printed().unwrap();
    let x1 = x_var(0).substitute_linear(&basis.x_from_y).unwrap();
    let mut e8 = vec![int(0); RANK];
    e8[7] = int(1);
    assert_eq!(x1.eval(&e8).unwrap(), rat(1, 4));
}

#[test]
fn squared_norm_is_preserved_up_to_one_half() {
    let basis = BasisChange::printed().unwrap();
    let sum_sq = (0..RANK).fold(RatPolynomial::zero(RANK), |acc, i| &acc + &x_var(i).pow(2));
    let in_y = sum_sq.substitute_linear(&basis.x_from_y).unwrap();
    assert_eq!(in_y, sum_sq.scale(&rat(1, 2)));
}

#[test]
fn content_normalization_of_a_rational_square() {
    let basis = BasisChange::printed().unwrap();
    let f2 = (0..RANK).fold(RatPolynomial::zero(RANK), |acc, i| &acc + &x_var(i).pow(2));
    let (prim, content) = f2
        .substitute_linear(&basis.x_from_y)
        .unwrap()
        .content_normalize()
        .unwrap();
    assert_eq!(content, rat(1, 2));
    assert_eq!(prim.len(), RANK);
    assert!(prim.terms().all(|(_, c)| c.is_one()));
}

#[test]
fn substitution_rejects_wrong_dimension() {
    let m = spinhdet_core::RatMatrix::identity(3);
    assert!(x_var(0).substitute_linear(&m).is_err());
}
