//! The fermionic Fock space on eight modes.
//!
//! Modes `1, 2, 3, 4, 1̄, 2̄, 3̄, 4̄` sit at bits `0..8` of an occupation mask.
//! Creation and annihilation carry a factor `sqrt(2)` and the Jordan-Wigner
//! sign `(-1)^(occupied bits below the mode)`, so that `{p_i, n_j} = 2 delta_ij`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;
use crate::scalar::{format_rational, parse_rational, Ring};
use crate::{Error, RatMatrix, Rational, Result, Sqrt2Scalar};

/// Number of modes.
pub const MODES: usize = 8;

/// `a + b * sqrt(2)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Sqrt2<C> {
    pub a: C,
    pub b: C,
}

impl<C: Ring> Sqrt2<C> {
    pub fn new(a: C, b: C) -> Self {
        Sqrt2 { a, b }
    }

    pub fn rational(a: C) -> Self {
        Sqrt2 { a, b: C::zero() }
    }

    pub fn root_two() -> Self {
        Sqrt2 {
            a: C::zero(),
            b: C::one(),
        }
    }

    pub fn conjugate(&self) -> Self {
        Sqrt2 {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// `a^2 - 2 b^2`.
    pub fn norm(&self) -> C {
        self.a.clone() * self.a.clone() - C::from_i64(2) * self.b.clone() * self.b.clone()
    }
}

impl Sqrt2<Rational> {
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(Sqrt2 {
            a: self.a.clone() / n.clone(),
            b: -self.b.clone() / n,
        })
    }
}

impl<C: fmt::Debug> fmt::Debug for Sqrt2<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}+{:?}r2", self.a, self.b)
    }
}

impl fmt::Display for Sqrt2<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt2", self.b),
            (false, false) => write!(f, "{}+{}*sqrt2", self.a, self.b),
        }
    }
}

impl<C: Ring> Add for Sqrt2<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Sqrt2 {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
        }
    }
}

impl<C: Ring> Sub for Sqrt2<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Sqrt2 {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
        }
    }
}

impl<C: Ring> Neg for Sqrt2<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Sqrt2 {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl<C: Ring> Mul for Sqrt2<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let two = C::from_i64(2);
        Sqrt2 {
            a: self.a.clone() * rhs.a.clone() + two * self.b.clone() * rhs.b.clone(),
            b: self.a * rhs.b + self.b * rhs.a,
        }
    }
}

impl<C: Ring> Zero for Sqrt2<C> {
    fn zero() -> Self {
        Sqrt2 {
            a: C::zero(),
            b: C::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<C: Ring> One for Sqrt2<C> {
    fn one() -> Self {
        Sqrt2::rational(C::one())
    }
}

/// Labels `1 2 3 4 1̄ 2̄ 3̄ 4̄` of the modes by bit.
pub fn mode_label(bit: usize) -> String {
    if bit < 4 {
        format!("{}", bit + 1)
    } else {
        format!("{}\u{304}", bit - 3)
    }
}

fn check_mode(i: usize) -> Result<()> {
    if i >= MODES {
        return Err(Error::Domain(format!("mode {i} out of range 0..{MODES}")));
    }
    Ok(())
}

fn jw_sign(mask: u8, i: usize) -> bool {
    (mask & ((1u16 << i) - 1) as u8).count_ones() % 2 == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

/// A sparse state: occupation mask to amplitude, zeros never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FockState {
    amplitudes: BTreeMap<u8, Sqrt2Scalar>,
}

impl fmt::Debug for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.amplitudes
                    .iter()
                    .map(|(m, a)| (format!("{m:08b}"), a.to_string())),
            )
            .finish()
    }
}

impl FockState {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::basis(0)
    }

    pub fn basis(mask: u8) -> Self {
        let mut s = Self::zero();
        s.add_amplitude(mask, Sqrt2::one());
        s
    }

    pub fn from_amplitudes(amps: impl IntoIterator<Item = (u8, Sqrt2Scalar)>) -> Self {
        let mut s = Self::zero();
        for (m, a) in amps {
            s.add_amplitude(m, a);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitude(&self, mask: u8) -> Sqrt2Scalar {
        self.amplitudes
            .get(&mask)
            .cloned()
            .unwrap_or_else(Sqrt2::zero)
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = (u8, &Sqrt2Scalar)> {
        self.amplitudes.iter().map(|(m, a)| (*m, a))
    }

    pub fn masks(&self) -> Vec<u8> {
        self.amplitudes.keys().copied().collect()
    }

    fn add_amplitude(&mut self, mask: u8, amp: Sqrt2Scalar) {
        if amp.is_zero() {
            return;
        }
        let entry = self.amplitudes.entry(mask).or_insert_with(Sqrt2::zero);
        *entry = entry.clone() + amp;
        if entry.is_zero() {
            self.amplitudes.remove(&mask);
        }
    }

    pub fn add(&self, other: &FockState) -> FockState {
        let mut out = self.clone();
        for (m, a) in &other.amplitudes {
            out.add_amplitude(*m, a.clone());
        }
        out
    }

    pub fn sub(&self, other: &FockState) -> FockState {
        self.add(&other.scale(&-Sqrt2::one()))
    }

    pub fn scale(&self, s: &Sqrt2Scalar) -> FockState {
        FockState::from_amplitudes(
            self.amplitudes
                .iter()
                .map(|(m, a)| (*m, a.clone() * s.clone())),
        )
    }

    /// `None` if the state is zero or mixes parities.
    pub fn parity(&self) -> Option<Parity> {
        let mut parities = self.amplitudes.keys().map(|m| m.count_ones() % 2);
        let first = parities.next()?;
        parities.all(|p| p == first).then_some(if first == 0 {
            Parity::Even
        } else {
            Parity::Odd
        })
    }

    pub fn to_json(&self) -> StateJson {
        StateJson {
            amplitudes: self
                .amplitudes
                .iter()
                .map(|(m, a)| AmplitudeJson {
                    mask: *m,
                    a: format_rational(&a.a),
                    b: format_rational(&a.b),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &StateJson) -> Result<Self> {
        let mut s = FockState::zero();
        for amp in &json.amplitudes {
            let a = Sqrt2::new(parse_rational(&amp.a)?, parse_rational(&amp.b)?);
            s.add_amplitude(amp.mask, a);
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateJson {
    pub amplitudes: Vec<AmplitudeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmplitudeJson {
    pub mask: u8,
    pub a: String,
    pub b: String,
}

/// `p_i`: `sqrt(2) e_i ^ f`.
pub fn create(i: usize, s: &FockState) -> Result<FockState> {
    check_mode(i)?;
    let bit = 1u8 << i;
    let r2 = Sqrt2::root_two();
    Ok(FockState::from_amplitudes(
        s.amplitudes
            .iter()
            .filter(|(m, _)| *m & bit == 0)
            .map(|(m, a)| {
                let v = a.clone() * r2.clone();
                (m | bit, if jw_sign(*m, i) { -v } else { v })
            }),
    ))
}

/// `n_i`: `sqrt(2) e_i _| f`.
pub fn annihilate(i: usize, s: &FockState) -> Result<FockState> {
    check_mode(i)?;
    let bit = 1u8 << i;
    let r2 = Sqrt2::root_two();
    Ok(FockState::from_amplitudes(
        s.amplitudes
            .iter()
            .filter(|(m, _)| *m & bit != 0)
            .map(|(m, a)| {
                let v = a.clone() * r2.clone();
                (m & !bit, if jw_sign(*m, i) { -v } else { v })
            }),
    ))
}

/// `O_x = sum_I v_I p_I + alpha_I n_I` for `x = (v, alpha)`.
pub fn clifford_action(v: &[Rational], alpha: &[Rational], s: &FockState) -> Result<FockState> {
    for w in [v, alpha] {
        if w.len() != MODES {
            return Err(Error::Dimension {
                expected: MODES,
                found: w.len(),
            });
        }
    }
    let mut out = FockState::zero();
    for i in 0..MODES {
        if !v[i].is_zero() {
            out = out.add(&create(i, s)?.scale(&Sqrt2::rational(v[i].clone())));
        }
        if !alpha[i].is_zero() {
            out = out.add(&annihilate(i, s)?.scale(&Sqrt2::rational(alpha[i].clone())));
        }
    }
    Ok(out)
}

/// `Q(x, x)` for the split form pairing the two halves: `2 sum_I v_I alpha_I`.
pub fn quadratic_form(v: &[Rational], alpha: &[Rational]) -> Rational {
    let two = Rational::from_integer(2.into());
    v.iter()
        .zip(alpha)
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        * two
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordReport {
    pub q: Rational,
    pub states_checked: usize,
    pub failures: usize,
}

impl CliffordReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Checks `O_x(O_x(s)) = Q(x, x) s` on each state.
pub fn clifford_square_check(
    v: &[Rational],
    alpha: &[Rational],
    states: &[FockState],
) -> Result<CliffordReport> {
    let q = quadratic_form(v, alpha);
    let mut failures = 0;
    for s in states {
        let lhs = clifford_action(v, alpha, &clifford_action(v, alpha, s)?)?;
        if lhs != s.scale(&Sqrt2::rational(q.clone())) {
            failures += 1;
        }
    }
    Ok(CliffordReport {
        q,
        states_checked: states.len(),
        failures,
    })
}

/// Anticommutation relations on every basis mask for every mode pair.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CarReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CarReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn car_check() -> CarReport {
    let mut report = CarReport::default();
    let two = Sqrt2::rational(Rational::from_integer(2.into()));
    for mask in 0..=255u8 {
        let s = FockState::basis(mask);
        for i in 0..MODES {
            for j in 0..MODES {
                let pp = create(i, &create(j, &s).unwrap())
                    .unwrap()
                    .add(&create(j, &create(i, &s).unwrap()).unwrap());
                let nn = annihilate(i, &annihilate(j, &s).unwrap())
                    .unwrap()
                    .add(&annihilate(j, &annihilate(i, &s).unwrap()).unwrap());
                let pn = create(i, &annihilate(j, &s).unwrap())
                    .unwrap()
                    .add(&annihilate(j, &create(i, &s).unwrap()).unwrap());
                let expected_pn = if i == j {
                    s.scale(&two)
                } else {
                    FockState::zero()
                };
                for (name, got, want) in [
                    ("{p,p}", pp, FockState::zero()),
                    ("{n,n}", nn, FockState::zero()),
                    ("{p,n}", pn, expected_pn),
                ] {
                    report.checks += 1;
                    if got != want {
                        report
                            .failures
                            .push(format!("{name} i={i} j={j} mask={mask:08b}"));
                    }
                }
            }
        }
    }
    report
}

/// An element `[[A, B], [C, -A^T]]` of so(16) with `B`, `C` antisymmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinGenerator {
    pub a: RatMatrix,
    pub b: RatMatrix,
    pub c: RatMatrix,
}

impl SpinGenerator {
    pub fn new(a: RatMatrix, b: RatMatrix, c: RatMatrix) -> Result<Self> {
        for m in [&a, &b, &c] {
            if m.rows() != MODES || m.cols() != MODES {
                return Err(Error::Dimension {
                    expected: MODES,
                    found: m.rows(),
                });
            }
        }
        if !b.is_antisymmetric() || !c.is_antisymmetric() {
            return Err(Error::Precondition("B and C must be antisymmetric".into()));
        }
        Ok(SpinGenerator { a, b, c })
    }

    pub fn to_matrix(&self) -> RatMatrix {
        let minus_at = self.a.transpose().scale(&-Rational::one());
        Matrix::block(&self.a, &self.b, &self.c, &minus_at).expect("8x8 blocks")
    }

    pub fn from_matrix(s: &RatMatrix) -> Result<Self> {
        if s.rows() != 2 * MODES || s.cols() != 2 * MODES {
            return Err(Error::Dimension {
                expected: 2 * MODES,
                found: s.rows(),
            });
        }
        let a = s.sub_block(0, 0, MODES, MODES);
        let d = s.sub_block(MODES, MODES, MODES, MODES);
        if d != a.transpose().scale(&-Rational::one()) {
            return Err(Error::Precondition("lower-right block is not -A^T".into()));
        }
        Self::new(
            a,
            s.sub_block(0, MODES, MODES, MODES),
            s.sub_block(MODES, 0, MODES, MODES),
        )
    }

    /// `[self, other]` as matrices.
    pub fn bracket(&self, other: &SpinGenerator) -> Result<SpinGenerator> {
        Self::from_matrix(&self.to_matrix().commutator(&other.to_matrix())?)
    }
}

/// Overall factor in front of the quadratic expression of a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinNormalization {
    /// Factor 1/4. With `{p_i, n_j} = 2 delta_ij` this is the one that makes
    /// `s -> O_s` a Lie algebra homomorphism.
    #[default]
    Homomorphic,
    /// Factor 1/2, which satisfies `[O_s, O_t] = 2 O_[s,t]`.
    Half,
}

impl SpinNormalization {
    fn factor(self) -> Rational {
        match self {
            SpinNormalization::Homomorphic => Rational::new(1.into(), 4.into()),
            SpinNormalization::Half => Rational::new(1.into(), 2.into()),
        }
    }
}

/// `k * sum_ij A_ij [p_i, n_j] + B_ij p_i p_j + C_ij n_i n_j` applied to `psi`.
pub fn spin_action_with(
    s: &SpinGenerator,
    psi: &FockState,
    normalization: SpinNormalization,
) -> Result<FockState> {
    let mut out = FockState::zero();
    let n: Vec<FockState> = (0..MODES)
        .map(|j| annihilate(j, psi))
        .collect::<Result<_>>()?;
    let p: Vec<FockState> = (0..MODES).map(|j| create(j, psi)).collect::<Result<_>>()?;
    for i in 0..MODES {
        for j in 0..MODES {
            let a = s.a.get(i, j);
            if !a.is_zero() {
                let comm = create(i, &n[j])?.sub(&annihilate(j, &p[i])?);
                out = out.add(&comm.scale(&Sqrt2::rational(a.clone())));
            }
            let b = s.b.get(i, j);
            if !b.is_zero() {
                out = out.add(&create(i, &p[j])?.scale(&Sqrt2::rational(b.clone())));
            }
            let c = s.c.get(i, j);
            if !c.is_zero() {
                out = out.add(&annihilate(i, &n[j])?.scale(&Sqrt2::rational(c.clone())));
            }
        }
    }
    Ok(out.scale(&Sqrt2::rational(normalization.factor())))
}

pub fn spin_action(s: &SpinGenerator, psi: &FockState) -> Result<FockState> {
    spin_action_with(s, psi, SpinNormalization::default())
}

/// `O_s O_t psi - O_t O_s psi`.
pub fn spin_commutator(
    s: &SpinGenerator,
    t: &SpinGenerator,
    psi: &FockState,
    normalization: SpinNormalization,
) -> Result<FockState> {
    let st = spin_action_with(s, &spin_action_with(t, psi, normalization)?, normalization)?;
    let ts = spin_action_with(t, &spin_action_with(s, psi, normalization)?, normalization)?;
    Ok(st.sub(&ts))
}

/// Which reading of the seventh Cartan basis state to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum E7Variant {
    /// `(p1 p1̄ p2 p2̄ + p2 p2̄ p4 p4̄)|0>`.
    #[default]
    Printed,
    /// `(p1 p1̄ p2 p2̄ + p3 p3̄ p4 p4̄)|0>`.
    Corrected,
}

// Mode bits: 1..4 -> 0..3, 1̄..4̄ -> 4..7.
const B1: usize = 4;
const B2: usize = 5;
const B3: usize = 6;
const B4: usize = 7;

/// The two creation products of each basis state, leftmost operator first.
fn cartan_products(variant: E7Variant) -> [[Vec<usize>; 2]; 8] {
    let e7_second = match variant {
        E7Variant::Printed => vec![1, B2, 3, B4],
        E7Variant::Corrected => vec![2, B3, 3, B4],
    };
    [
        [vec![0, 1, 2, 3], vec![B1, B2, B3, B4]],
        [vec![0, 1, B3, B4], vec![B1, B2, 2, 3]],
        [vec![0, B2, 2, B4], vec![B1, 1, B3, 3]],
        [vec![0, B2, B3, 3], vec![B1, 1, 2, B4]],
        [vec![0, B1, 3, B4], vec![1, B2, 2, B3]],
        [vec![0, B1, 2, B3], vec![1, B2, 3, B4]],
        [vec![0, B1, 1, B2], e7_second],
        [vec![], vec![0, 1, 2, 3, B1, B2, B3, B4]],
    ]
}

/// `p_{m_1} ... p_{m_k} |0>`.
pub fn excite(modes: &[usize]) -> Result<FockState> {
    modes
        .iter()
        .rev()
        .try_fold(FockState::vacuum(), |s, &m| create(m, &s))
}

pub fn cartan_basis(variant: E7Variant) -> Result<Vec<FockState>> {
    cartan_products(variant)
        .iter()
        .map(|[a, b]| Ok(excite(a)?.add(&excite(b)?)))
        .collect()
}

/// `sum_i y_i |E_i>`.
pub fn cartan_state(y: &[Rational], variant: E7Variant) -> Result<FockState> {
    if y.len() != 8 {
        return Err(Error::Dimension {
            expected: 8,
            found: y.len(),
        });
    }
    let basis = cartan_basis(variant)?;
    Ok(basis.iter().zip(y).fold(FockState::zero(), |acc, (e, c)| {
        acc.add(&e.scale(&Sqrt2::rational(c.clone())))
    }))
}

/// Rank of a family of states over `Q(sqrt 2)`.
pub fn rank(states: &[FockState]) -> usize {
    let masks: Vec<u8> = {
        let mut all: Vec<u8> = states.iter().flat_map(|s| s.masks()).collect();
        all.sort_unstable();
        all.dedup();
        all
    };
    let mut rows: Vec<Vec<Sqrt2Scalar>> = states
        .iter()
        .map(|s| masks.iter().map(|m| s.amplitude(*m)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..masks.len() {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inverse().expect("nonzero pivot");
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone() * inv.clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *v = v.clone() - f.clone() * p.clone();
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn two() -> Sqrt2Scalar {
        Sqrt2::rational(int(2))
    }

    #[test]
    fn sqrt2_arithmetic() {
        let r = Sqrt2Scalar::root_two();
        assert_eq!(r.clone() * r.clone(), two());
        let x = Sqrt2::new(int(3), int(1));
        assert_eq!(x.clone() * x.inverse().unwrap(), Sqrt2::one());
        assert!(Sqrt2Scalar::zero().inverse().is_err());
        assert_eq!(x.norm(), int(7));
    }

    #[test]
    fn single_creation() {
        let s = create(0, &FockState::vacuum()).unwrap();
        assert_eq!(s, FockState::basis(1).scale(&Sqrt2::root_two()));
        assert!(create(0, &s).unwrap().is_zero());
        assert!(create(8, &s).is_err());
    }

    #[test]
    fn creations_anticommute() {
        let v = FockState::vacuum();
        let a = create(1, &create(0, &v).unwrap()).unwrap();
        let b = create(0, &create(1, &v).unwrap()).unwrap();
        assert_eq!(a, b.scale(&-Sqrt2::one()));
    }

    #[test]
    fn annihilation_on_vacuum() {
        for j in 0..MODES {
            assert!(annihilate(j, &FockState::vacuum()).unwrap().is_zero());
        }
        let s = annihilate(0, &create(0, &FockState::vacuum()).unwrap()).unwrap();
        assert_eq!(s, FockState::vacuum().scale(&two()));
    }

    #[test]
    fn car_holds_exhaustively() {
        let r = car_check();
        assert_eq!(r.checks, 256 * 64 * 3);
        assert!(r.passed(), "{:?}", &r.failures[..r.failures.len().min(5)]);
    }

    #[test]
    fn clifford_squares() {
        let states: Vec<FockState> = [0u8, 3, 0b1010_0101, 255]
            .iter()
            .map(|m| FockState::basis(*m))
            .collect();
        let e = |i: usize| {
            let mut v = vec![int(0); 8];
            v[i] = int(1);
            v
        };
        let zero = vec![int(0); 8];
        let r = clifford_square_check(&e(0), &zero, &states).unwrap();
        assert!(r.passed());
        assert_eq!(r.q, int(0));
        let r = clifford_square_check(&e(0), &e(0), &states).unwrap();
        assert!(r.passed());
        assert_eq!(r.q, int(2));
        let mut v = e(0);
        v[1] = int(1);
        let r = clifford_square_check(&v, &e(0), &states).unwrap();
        assert!(r.passed());
        assert_eq!(r.q, int(2));
    }

    #[test]
    fn identity_generator_on_vacuum() {
        let g = SpinGenerator::new(
            Matrix::identity(8),
            Matrix::zeros(8, 8),
            Matrix::zeros(8, 8),
        )
        .unwrap();
        let v = FockState::vacuum();
        let half = spin_action_with(&g, &v, SpinNormalization::Half).unwrap();
        assert_eq!(half, v.scale(&Sqrt2::rational(int(-8))));
        let quarter = spin_action(&g, &v).unwrap();
        assert_eq!(quarter, v.scale(&Sqrt2::rational(int(-4))));
    }

    #[test]
    fn generator_validation() {
        let mut b = Matrix::zeros(8, 8);
        b.set(0, 1, int(1));
        assert!(SpinGenerator::new(Matrix::zeros(8, 8), b.clone(), Matrix::zeros(8, 8)).is_err());
        b.set(1, 0, int(-1));
        let g = SpinGenerator::new(Matrix::zeros(8, 8), b, Matrix::zeros(8, 8)).unwrap();
        assert_eq!(SpinGenerator::from_matrix(&g.to_matrix()).unwrap(), g);
    }

    #[test]
    fn bracket_of_elementary_generators() {
        // B = E_01 - E_10, C = E_01 - E_10: the bracket lands in the A block.
        let mut b = Matrix::zeros(8, 8);
        b.set(0, 1, int(1));
        b.set(1, 0, int(-1));
        let s = SpinGenerator::new(Matrix::zeros(8, 8), b.clone(), Matrix::zeros(8, 8)).unwrap();
        let t = SpinGenerator::new(Matrix::zeros(8, 8), Matrix::zeros(8, 8), b).unwrap();
        let st = s.bracket(&t).unwrap();
        let psi = FockState::from_amplitudes([
            (0b0000_0001u8, Sqrt2::rational(int(1))),
            (0b0000_0010u8, Sqrt2::new(int(2), int(-1))),
            (0b0100_0100u8, Sqrt2::rational(int(3))),
        ]);
        let lhs = spin_commutator(&s, &t, &psi, SpinNormalization::Homomorphic).unwrap();
        assert_eq!(lhs, spin_action(&st, &psi).unwrap());
        let lhs = spin_commutator(&s, &t, &psi, SpinNormalization::Half).unwrap();
        let rhs = spin_action_with(&st, &psi, SpinNormalization::Half).unwrap();
        assert_ne!(lhs, rhs);
        assert_eq!(lhs, rhs.scale(&two()));
    }

    #[test]
    fn cartan_states() {
        let e8 = {
            let mut y = vec![int(0); 8];
            y[7] = int(1);
            cartan_state(&y, E7Variant::Printed).unwrap()
        };
        assert_eq!(e8.masks(), vec![0, 255]);
        assert_eq!(e8.amplitude(0), Sqrt2::one());
        for variant in [E7Variant::Printed, E7Variant::Corrected] {
            let basis = cartan_basis(variant).unwrap();
            for e in &basis {
                assert_eq!(e.masks().len(), 2);
                assert_eq!(e.parity(), Some(Parity::Even));
            }
            assert_eq!(rank(&basis), 8);
        }
        let distinct = |v| {
            let mut m: Vec<u8> = cartan_basis(v)
                .unwrap()
                .iter()
                .flat_map(|s| s.masks())
                .collect();
            m.sort_unstable();
            m.dedup();
            m.len()
        };
        assert_eq!(distinct(E7Variant::Printed), 15);
        assert_eq!(distinct(E7Variant::Corrected), 16);
    }

    #[test]
    fn e1_masks() {
        let e1 = &cartan_basis(E7Variant::Printed).unwrap()[0];
        assert_eq!(e1.masks(), vec![0x0f, 0xf0]);
    }

    #[test]
    fn mixed_parity_has_no_parity() {
        let s = FockState::basis(0).add(&FockState::basis(1));
        assert_eq!(s.parity(), None);
        assert_eq!(FockState::basis(3).parity(), Some(Parity::Even));
    }

    #[test]
    fn state_json_round_trip() {
        let s = FockState::from_amplitudes([(5u8, Sqrt2::new(int(1), int(-3)))]);
        let json = serde_json::to_string(&s.to_json()).unwrap();
        let back: StateJson = serde_json::from_str(&json).unwrap();
        assert_eq!(FockState::from_json(&back).unwrap(), s);
        assert!(json.contains("\"mask\":5"));
    }

    #[test]
    fn mode_labels() {
        assert_eq!(mode_label(0), "1");
        assert_eq!(mode_label(7), "4\u{304}");
    }
}
