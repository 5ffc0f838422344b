use std::collections::BTreeSet;

use num_traits::{One, Zero};
use proptest::prelude::*;
use spinhdet_core::cayley::{
    cube_terms, explicit_polynomial, hdet222_combinatorial, hdet222_explicit, sl2_invariance_check,
    CubeFigure, Tensor222,
};
use spinhdet_core::fock::{
    annihilate, car_check, cartan_basis, cartan_state, clifford_square_check, create, rank,
    spin_action, spin_action_with, spin_commutator, E7Variant, FockState, Parity, SpinGenerator,
    SpinNormalization, Sqrt2, StateJson,
};
use spinhdet_core::scalar::{int, rat};
use spinhdet_core::verify::{
    random_generator, random_point, random_rank_one, random_sl2, random_state, random_tensor, rng,
};
use spinhdet_core::{IntPolynomial, Integer, RatMatrix, RatPolynomial, Rational};

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

#[test]
fn car_holds_on_every_basis_state() {
    let r = car_check();
    assert!(r.passed(), "{:?}", r.failures);
    assert_eq!(r.checks, 256 * 64 * 3);
}

#[test]
fn jordan_wigner_signs() {
    let s = create(0, &FockState::basis(0b10)).unwrap();
    assert_eq!(s.amplitude(0b11), Sqrt2::root_two());
    let t = create(1, &FockState::basis(0b01)).unwrap();
    assert_eq!(t.amplitude(0b11), -Sqrt2::root_two());
    assert!(create(1, &FockState::basis(0b10)).unwrap().is_zero());
    assert!(annihilate(3, &FockState::vacuum()).unwrap().is_zero());
}

#[test]
fn identity_generator_on_the_vacuum() {
    let id = RatMatrix::identity(8);
    let zero = RatMatrix::zeros(8, 8);
    let g = SpinGenerator::new(id, zero.clone(), zero).unwrap();
    let vac = FockState::vacuum();
    let half = spin_action_with(&g, &vac, SpinNormalization::Half).unwrap();
    let hom = spin_action_with(&g, &vac, SpinNormalization::Homomorphic).unwrap();
    assert_eq!(half, vac.scale(&Sqrt2::rational(int(-8))));
    assert_eq!(hom, vac.scale(&Sqrt2::rational(int(-4))));
}

#[test]
fn cartan_basis_variants() {
    for (variant, masks) in [(E7Variant::Printed, 15), (E7Variant::Corrected, 16)] {
        let basis = cartan_basis(variant).unwrap();
        assert_eq!(rank(&basis), 8);
        assert!(basis.iter().all(|s| s.parity() == Some(Parity::Even)));
        let all: BTreeSet<u8> = basis.iter().flat_map(|s| s.masks()).collect();
        assert_eq!(all.len(), masks);
    }
}

#[test]
fn cartan_state_is_linear_in_y() {
    let y: Vec<Rational> = (1..=8).map(int).collect();
    let s = cartan_state(&y, E7Variant::Corrected).unwrap();
    let basis = cartan_basis(E7Variant::Corrected).unwrap();
    let by_hand = basis.iter().zip(&y).fold(FockState::zero(), |acc, (e, c)| {
        acc.add(&e.scale(&Sqrt2::rational(c.clone())))
    });
    assert_eq!(s, by_hand);
    assert!(cartan_state(&y[..7], E7Variant::Printed).is_err());
}

#[test]
fn ghz_and_w() {
    let ghz = Tensor222::new([1, 0, 0, 0, 0, 0, 0, 1].map(int));
    assert_eq!(hdet222_explicit(&ghz), int(1));
    let w = Tensor222::new([0, 1, 1, 0, 1, 0, 0, 0].map(int));
    assert!(hdet222_explicit(&w).is_zero());
}

#[test]
fn cube_generator_reproduces_the_printed_formula() {
    assert_eq!(
        hdet222_combinatorial::<Integer>(),
        explicit_polynomial::<Integer>()
    );
    let p: IntPolynomial = explicit_polynomial();
    assert_eq!(p.len(), 12);
    let terms = cube_terms();
    let count = |f: CubeFigure| terms.iter().filter(|t| t.figure == f).count();
    assert_eq!(count(CubeFigure::Diagonal), 4);
    assert_eq!(count(CubeFigure::Parallelogram), 6);
    assert_eq!(count(CubeFigure::Tetrahedron), 2);
}

#[test]
fn generic_over_machine_integers() {
    let a = Tensor222::new([1i64, 2, 3, 4, 5, 6, 7, 8]);
    let b = Tensor222::new([1, 2, 3, 4, 5, 6, 7, 8].map(int));
    assert_eq!(
        Rational::from_integer(hdet222_explicit(&a).into()),
        hdet222_explicit(&b)
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn anticommutators(i in 0usize..8, j in 0usize..8, mask in any::<u8>()) {
        let s = FockState::basis(mask);
        let pn = create(i, &annihilate(j, &s).unwrap()).unwrap();
        let np = annihilate(j, &create(i, &s).unwrap()).unwrap();
        let expected = if i == j { s.scale(&Sqrt2::rational(int(2))) } else { FockState::zero() };
        prop_assert_eq!(pn.add(&np), expected);
        let pp = create(i, &create(j, &s).unwrap()).unwrap()
            .add(&create(j, &create(i, &s).unwrap()).unwrap());
        prop_assert!(pp.is_zero());
    }

    #[test]
    fn spin_action_preserves_parity(seed in any::<u64>(), par in parity()) {
        let mut r = rng(seed);
        let g = random_generator(&mut r);
        let psi = random_state(&mut r, par, 5);
        let out = spin_action(&g, &psi).unwrap();
        prop_assert!(out.is_zero() || out.parity() == Some(par));
    }

    #[test]
    fn spin_action_is_linear(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_generator(&mut r);
        let a = random_state(&mut r, Parity::Even, 3);
        let b = random_state(&mut r, Parity::Even, 3);
        let lhs = spin_action(&g, &a.add(&b)).unwrap();
        let rhs = spin_action(&g, &a).unwrap().add(&spin_action(&g, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn clifford_square(seed in any::<u64>()) {
        let mut r = rng(seed);
        let v = random_point(&mut r, 8);
        let alpha = random_point(&mut r, 8);
        let states = [random_state(&mut r, Parity::Even, 3), random_state(&mut r, Parity::Odd, 3)];
        prop_assert!(clifford_square_check(&v, &alpha, &states).unwrap().passed());
    }

    #[test]
    fn state_json_round_trip(seed in any::<u64>(), par in parity()) {
        let s = random_state(&mut rng(seed), par, 6);
        let text = serde_json::to_string(&s.to_json()).unwrap();
        let back: StateJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(FockState::from_json(&back).unwrap(), s);
    }

    #[test]
    fn sl2_cubed_invariance(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_tensor(&mut r);
        let (g1, g2, g3) = (random_sl2(&mut r), random_sl2(&mut r), random_sl2(&mut r));
        prop_assert!(sl2_invariance_check(&a, &g1, &g2, &g3).unwrap().holds());
    }

    #[test]
    fn vanishes_on_rank_one(seed in any::<u64>()) {
        prop_assert!(hdet222_explicit(&random_rank_one(&mut rng(seed))).is_zero());
    }

    #[test]
    fn explicit_formula_matches_polynomial(seed in any::<u64>()) {
        let a = random_tensor(&mut rng(seed));
        let p: RatPolynomial = explicit_polynomial();
        prop_assert_eq!(p.eval(a.entries()).unwrap(), hdet222_explicit(&a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(5))]

    #[test]
    fn homomorphic_normalization_is_a_representation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_generator(&mut r);
        let t = random_generator(&mut r);
        let psi = random_state(&mut r, Parity::Even, 3);
        let lhs = spin_commutator(&s, &t, &psi, SpinNormalization::Homomorphic).unwrap();
        let rhs = spin_action(&s.bracket(&t).unwrap(), &psi).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn half_normalization_doubles_the_bracket(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_generator(&mut r);
        let t = random_generator(&mut r);
        let psi = random_state(&mut r, Parity::Odd, 3);
        let lhs = spin_commutator(&s, &t, &psi, SpinNormalization::Half).unwrap();
        let rhs = spin_action_with(&s.bracket(&t).unwrap(), &psi, SpinNormalization::Half).unwrap();
        prop_assert_eq!(lhs, rhs.scale(&Sqrt2::rational(int(2))));
    }
}

#[test]
fn sl2_check_rejects_non_unimodular() {
    let a = Tensor222::new([1, 0, 0, 0, 0, 0, 0, 1].map(int));
    let g = RatMatrix::from_rows(vec![vec![int(2), int(0)], vec![int(0), int(1)]]).unwrap();
    let id = RatMatrix::identity(2);
    assert!(sl2_invariance_check(&a, &g, &id, &id).is_err());
}

#[test]
fn sqrt2_field_inverse() {
    let x = Sqrt2::new(rat(3, 2), int(-1));
    assert!((x.clone() * x.inverse().unwrap()).is_one());
    assert!(Sqrt2::<Rational>::zero().inverse().is_err());
}
