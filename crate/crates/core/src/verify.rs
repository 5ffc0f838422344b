//! Aggregated self-checks and the seeded samplers they use.
//!
//! Output is a function of the options alone: random inputs come from a
//! seeded ChaCha generator and no timings are recorded.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cayley::{self, Tensor222};
use crate::fock::{self, E7Variant, FockState, Parity, SpinGenerator, SpinNormalization, Sqrt2};
use crate::hyperdet::{self, FactoredForm};
use crate::invariants::{self, FUNDAMENTAL_DEGREES};
use crate::matrix::Matrix;
use crate::roots::{self, HalfSpinScaling, RootKind};
use crate::{fixtures, geometry, RatMatrix, Rational, Result, RANK};

pub const DEFAULT_SEED: u64 = 0x5eed_e8e8;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with numerator in `-bound..=bound` and denominator in `1..=bound`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(-bound..=bound)),
        BigInt::from(rng.gen_range(1..=bound)),
    )
}

pub fn random_nonzero_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let r = random_rational(rng, bound);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn random_point<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_rational(rng, 9)).collect()
}

/// A random element of SL2(Q) as a product of two shears and a diagonal.
pub fn random_sl2<R: Rng>(rng: &mut R) -> RatMatrix {
    let one = Rational::one();
    let zero = Rational::zero();
    let a = random_rational(rng, 5);
    let b = random_rational(rng, 5);
    let c = random_nonzero_rational(rng, 5);
    let upper =
        Matrix::from_rows(vec![vec![one.clone(), a], vec![zero.clone(), one.clone()]]).unwrap();
    let lower =
        Matrix::from_rows(vec![vec![one.clone(), zero.clone()], vec![b, one.clone()]]).unwrap();
    let diag = Matrix::from_rows(vec![vec![c.clone(), zero.clone()], vec![zero, one / c]]).unwrap();
    &(&upper * &lower) * &diag
}

pub fn random_tensor<R: Rng>(rng: &mut R) -> Tensor222<Rational> {
    Tensor222::new(std::array::from_fn(|_| random_rational(rng, 7)))
}

pub fn random_rank_one<R: Rng>(rng: &mut R) -> Tensor222<Rational> {
    let mut v = || [random_rational(rng, 7), random_rational(rng, 7)];
    let (u, v_, w) = (v(), v(), v());
    Tensor222::rank_one(&u, &v_, &w)
}

fn random_antisymmetric<R: Rng>(rng: &mut R) -> RatMatrix {
    let mut m = Matrix::zeros(8, 8);
    for i in 0..8 {
        for j in i + 1..8 {
            let x = Rational::from_integer(rng.gen_range(-3..=3).into());
            m.set(j, i, -x.clone());
            m.set(i, j, x);
        }
    }
    m
}

pub fn random_generator<R: Rng>(rng: &mut R) -> SpinGenerator {
    let mut a = Matrix::zeros(8, 8);
    for i in 0..8 {
        for j in 0..8 {
            a.set(i, j, Rational::from_integer(rng.gen_range(-3..=3).into()));
        }
    }
    let b = random_antisymmetric(rng);
    let c = random_antisymmetric(rng);
    SpinGenerator::new(a, b, c).expect("antisymmetric by construction")
}

/// A state supported on `terms` random masks of the given parity.
pub fn random_state<R: Rng>(rng: &mut R, parity: Parity, terms: usize) -> FockState {
    let want = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let mut amps = Vec::new();
    while amps.len() < terms {
        let mask: u8 = rng.gen();
        if mask.count_ones() % 2 == want {
            amps.push((
                mask,
                Sqrt2::new(random_nonzero_rational(rng, 5), random_rational(rng, 5)),
            ));
        }
    }
    FockState::from_amplitudes(amps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    pub weighting: HalfSpinScaling,
    pub e7_variant: E7Variant,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            weighting: HalfSpinScaling::Roots,
            e7_variant: E7Variant::Printed,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: &str, r: Result<CheckResult>) -> CheckResult {
        r.unwrap_or_else(|e| CheckResult::new(name, false, format!("error: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub options: VerifyOptions,
    pub checks: Vec<CheckResult>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {:<22} {}\n", c.name, c.detail));
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!(
            "{} checks, {} failed\n",
            self.checks.len(),
            failed
        ));
        out
    }
}

pub fn verify_all(options: &VerifyOptions) -> Summary {
    let mut checks = vec![
        CheckResult::from_result("roots", check_roots()),
        CheckResult::from_result("factor-set", check_factor_set()),
    ];
    for d in FUNDAMENTAL_DEGREES {
        let name = format!("power-sum-{d}");
        checks.push(CheckResult::from_result(
            &name,
            check_power_sum(d, options.weighting),
        ));
    }
    checks.push(CheckResult::from_result(
        "power-sum-odd",
        check_odd_power_sums(),
    ));
    checks.push(CheckResult::from_result(
        "wedge4-restriction",
        check_restriction(),
    ));
    checks.push(CheckResult::from_result("four-qubit", check_four_qubit()));
    checks.push(CheckResult::from_result(
        "cayley",
        check_cayley(options.seed),
    ));
    checks.push(CheckResult::from_result("car", Ok(check_car())));
    checks.push(CheckResult::from_result("spin", check_spin(options.seed)));
    checks.push(CheckResult::from_result(
        "cartan-basis",
        check_cartan(options.e7_variant),
    ));
    checks.push(CheckResult::from_result(
        "hdet-eval",
        check_eval(options.seed),
    ));
    Summary {
        options: *options,
        checks,
    }
}

pub fn check_roots() -> Result<CheckResult> {
    let roots = roots::generate_e8_roots();
    let set: BTreeSet<_> = roots.iter().copied().collect();
    let integral = roots
        .iter()
        .filter(|r| r.kind() == Some(RootKind::Integral))
        .count();
    let half = roots
        .iter()
        .filter(|r| r.kind() == Some(RootKind::HalfIntegral))
        .count();
    let closed = roots.iter().all(|r| set.contains(&r.neg()));
    let two = Rational::from_integer(2.into());
    let lengths = roots.iter().all(|r| r.squared_length() == two);
    let ok = roots.len() == 240
        && set.len() == 240
        && integral == 112
        && half == 128
        && closed
        && lengths;
    Ok(CheckResult::new(
        "roots",
        ok,
        format!(
            "{} roots ({integral} integral, {half} half-integral), closed under negation: {closed}, all of squared length 2: {lengths}",
            roots.len()
        ),
    ))
}

pub fn check_factor_set() -> Result<CheckResult> {
    let mult = roots::form_multiplicities(&roots::roots_in_y()?);
    let derived: Vec<_> = mult.keys().cloned().collect();
    let printed = roots::verify_against_printed(&derived)?;
    let geometry = roots::compare_forms(&derived, &geometry::forms_from_geometry());
    let all_two = mult.values().all(|&m| m == 2);
    let ok = derived.len() == 120 && all_two && printed.passed() && geometry.passed();
    Ok(CheckResult::new(
        "factor-set",
        ok,
        format!(
            "{} distinct forms, multiplicity 2: {all_two}, differences vs printed: {}, vs cube: {}",
            derived.len(),
            printed.symmetric_difference(),
            geometry.symmetric_difference()
        ),
    ))
}

pub fn check_power_sum(d: u32, weighting: HalfSpinScaling) -> Result<CheckResult> {
    let r = invariants::verify_power_sum(d, weighting)?;
    let name = format!("power-sum-{d}");
    let scalar = r.scalar.clone().unwrap_or_else(|| "none".into());
    Ok(CheckResult::new(
        name,
        r.passed(),
        format!(
            "{} orbits computed, {} tabulated, {} matched, scalar {scalar}",
            r.computed_orbits, r.tabulated_orbits, r.matched
        ),
    ))
}

pub fn check_odd_power_sums() -> Result<CheckResult> {
    let mut nonzero = Vec::new();
    for d in (1..=31).step_by(2) {
        if !invariants::power_sum(d)?.is_zero() {
            nonzero.push(d);
        }
    }
    Ok(CheckResult::new(
        "power-sum-odd",
        nonzero.is_empty(),
        format!("odd degrees 1..31 with nonzero power sum: {nonzero:?}"),
    ))
}

pub fn check_restriction() -> Result<CheckResult> {
    let r = hyperdet::restrict_to_wedge4(&hyperdet::build_hdet()?)?;
    let (q, t) = r.compare_with_printed()?;
    let ok = r.q_degree == 63
        && r.t_degree == 28
        && r.q_multiplicity == 2
        && r.t_multiplicity == 4
        && r.total_degree() == 238
        && q.passed()
        && t.passed();
    Ok(CheckResult::new(
        "wedge4-restriction",
        ok,
        format!(
            "Q: {} forms ^{}, T: {} forms ^{}, degree {}, differences vs printed Q: {}, T: {}",
            r.q_degree,
            r.q_multiplicity,
            r.t_degree,
            r.t_multiplicity,
            r.total_degree(),
            q.symmetric_difference(),
            t.symmetric_difference()
        ),
    ))
}

pub fn check_four_qubit() -> Result<CheckResult> {
    let delta = hyperdet::restrict_to_4qubit()?;
    let mut p = vec![Rational::zero(); RANK];
    for (i, v) in [1, 2, 3, 4].into_iter().enumerate() {
        p[i] = Rational::from_integer(v.into());
    }
    let value = delta.eval(&p)?;
    let ok = delta.distinct_factors() == 12
        && delta.factors.values().all(|&m| m == 2)
        && delta.total_degree() == 24
        && value == Rational::from_integer(22_861_440_000i64.into());
    Ok(CheckResult::new(
        "four-qubit",
        ok,
        format!(
            "{} forms, degree {}, value at (1,2,3,4): {value}",
            delta.distinct_factors(),
            delta.total_degree()
        ),
    ))
}

pub fn check_cayley(seed: u64) -> Result<CheckResult> {
    let mut rng = rng(seed ^ 0xca1e);
    let same = cayley::hdet222_combinatorial::<BigInt>() == cayley::explicit_polynomial::<BigInt>();
    let one = Rational::one();
    let zero = Rational::zero();
    let ghz = Tensor222::new(std::array::from_fn(|n| {
        if n == 0 || n == 7 {
            one.clone()
        } else {
            zero.clone()
        }
    }));
    let w = Tensor222::new(std::array::from_fn(|n| {
        if [1, 2, 4].contains(&n) {
            one.clone()
        } else {
            zero.clone()
        }
    }));
    let ghz_ok = cayley::hdet222_explicit(&ghz) == one;
    let w_ok = cayley::hdet222_explicit(&w).is_zero();
    let rank_one_ok =
        (0..100).all(|_| cayley::hdet222_explicit(&random_rank_one(&mut rng)).is_zero());
    let mut sl2_ok = true;
    for _ in 0..20 {
        let a = random_tensor(&mut rng);
        let (g1, g2, g3) = (
            random_sl2(&mut rng),
            random_sl2(&mut rng),
            random_sl2(&mut rng),
        );
        sl2_ok &= cayley::sl2_invariance_check(&a, &g1, &g2, &g3)?.holds();
    }
    Ok(CheckResult::new(
        "cayley",
        same && ghz_ok && w_ok && rank_one_ok && sl2_ok,
        format!(
            "cube terms = explicit: {same}, GHZ: {ghz_ok}, W: {w_ok}, 100 rank-one: {rank_one_ok}, 20 SL2 triples: {sl2_ok}"
        ),
    ))
}

pub fn check_car() -> CheckResult {
    let r = fock::car_check();
    CheckResult::new(
        "car",
        r.passed(),
        format!(
            "{} relations on 256 masks, {} failed",
            r.checks,
            r.failures.len()
        ),
    )
}

pub fn check_spin(seed: u64) -> Result<CheckResult> {
    let mut rng = rng(seed ^ 0x5f1a);
    let mut parity_ok = 0;
    for n in 0..50 {
        let g = random_generator(&mut rng);
        let parity = if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        };
        let psi = random_state(&mut rng, parity, 6);
        let out = fock::spin_action(&g, &psi)?;
        if out.is_zero() || out.parity() == Some(parity) {
            parity_ok += 1;
        }
    }
    let mut rep_ok = 0;
    for _ in 0..5 {
        let s = random_generator(&mut rng);
        let t = random_generator(&mut rng);
        let psi = random_state(&mut rng, Parity::Even, 4);
        let lhs = fock::spin_commutator(&s, &t, &psi, SpinNormalization::Homomorphic)?;
        let rhs = fock::spin_action(&s.bracket(&t)?, &psi)?;
        if lhs == rhs {
            rep_ok += 1;
        }
    }
    Ok(CheckResult::new(
        "spin",
        parity_ok == 50 && rep_ok == 5,
        format!("parity preserved {parity_ok}/50, [O_s,O_t] = O_[s,t] on {rep_ok}/5 pairs"),
    ))
}

pub fn check_cartan(variant: E7Variant) -> Result<CheckResult> {
    let basis = fock::cartan_basis(variant)?;
    let rank = fock::rank(&basis);
    let even = basis.iter().all(|e| e.parity() == Some(Parity::Even));
    let masks: BTreeSet<u8> = basis.iter().flat_map(|s| s.masks()).collect();
    Ok(CheckResult::new(
        "cartan-basis",
        rank == 8 && even,
        format!(
            "variant {variant:?}: rank {rank}, all even: {even}, {} distinct masks",
            masks.len()
        ),
    ))
}

pub fn check_eval(seed: u64) -> Result<CheckResult> {
    let mut rng = rng(seed ^ 0xe7a1);
    let h = hyperdet::build_hdet()?;
    let (perm_ok, neg_ok) = eval_symmetries(&h, &mut rng, 20)?;
    let vanish_ok = vanishing_on_factors(&h, &mut rng)?;
    Ok(CheckResult::new(
        "hdet-eval",
        perm_ok && neg_ok && vanish_ok,
        format!(
            "|HDet| permutation invariant: {perm_ok}, even: {neg_ok}, vanishes on each factor: {vanish_ok}"
        ),
    ))
}

fn abs(r: Rational) -> Rational {
    if r < Rational::zero() {
        -r
    } else {
        r
    }
}

/// `trials` random permutations and points: `|h(y_sigma)| = |h(y)|` and
/// `h(-y) = h(y)`.
pub fn eval_symmetries<R: Rng>(
    h: &FactoredForm,
    rng: &mut R,
    trials: usize,
) -> Result<(bool, bool)> {
    use rand::seq::SliceRandom;
    let mut perm_ok = true;
    let mut neg_ok = true;
    for _ in 0..trials {
        let y: Vec<Rational> = random_point(rng, RANK)
            .into_iter()
            .map(|v| v + Rational::new(1.into(), 1000.into()))
            .collect();
        let mut perm: Vec<usize> = (0..RANK).collect();
        perm.shuffle(rng);
        let permuted: Vec<Rational> = perm.iter().map(|&i| y[i].clone()).collect();
        let v = h.eval(&y)?;
        perm_ok &= abs(h.eval(&permuted)?) == abs(v.clone());
        let neg: Vec<Rational> = y.iter().map(|c| -c.clone()).collect();
        neg_ok &= h.eval(&neg)? == v;
    }
    Ok((perm_ok, neg_ok))
}

/// For every factor, a point on its zero set (otherwise random) gives 0.
pub fn vanishing_on_factors<R: Rng>(h: &FactoredForm, rng: &mut R) -> Result<bool> {
    for f in h.factors.keys() {
        let mut y = random_point(rng, RANK);
        // solve f(y) = 0 for the first variable in the support
        let lead = f.support()[0];
        let c = Rational::from_integer(f.coeffs()[lead].into());
        y[lead] = Rational::zero();
        let rest = f.eval(&y)?;
        y[lead] = -rest / c;
        if !f.eval(&y)?.is_zero() || !h.eval(&y)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sanity check that the embedded fixtures are intact.
pub fn check_fixtures() -> Result<()> {
    fixtures::hdet_factors()?;
    fixtures::wedge4_q()?;
    fixtures::wedge4_t()?;
    fixtures::power_sum_entries()?;
    Ok(())
}
