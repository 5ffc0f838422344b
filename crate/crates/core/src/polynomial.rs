//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is graded
//! lexicographic: total degree first, then the exponent vectors compared
//! lexicographically (so `y1^2 > y1*y2 > y2^2`). Canonical output lists terms
//! from the greatest monomial down. Zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::linear_form::LinearForm;
use crate::matrix::Matrix;
use crate::scalar::{ring_pow, Ring};
use crate::{Error, IntPolynomial, RatPolynomial, Rational, Result};

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn new(exponents: impl IntoIterator<Item = u32>) -> Self {
        Monomial(exponents.into_iter().collect())
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    /// The monomial consisting of the single variable `index` (0-based).
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Exponents sorted in descending order: the label of the monomial's orbit
    /// under permutations of the variables.
    pub fn orbit_key(&self) -> Vec<u32> {
        let mut v = self.0.to_vec();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Relabels variables: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        let mut out = Self::one(self.nvars());
        for (i, &e) in self.0.iter().enumerate() {
            out.0[perm[i]] = e;
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The variable with 0-based index `index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, index), C::one());
        p
    }

    /// Builds a polynomial from terms, merging repeated monomials.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, C)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::Dimension {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_assign_checked(other)?;
        Ok(out)
    }

    /// In-place sum; the cheap path for long reductions.
    pub fn add_assign_checked(&mut self, other: &Self) -> Result<()> {
        self.check_dim(other)?;
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
        Ok(())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::constant(self.nvars, C::one());
        for _ in 0..exp {
            acc = acc.try_mul(self).expect("same ambient dimension");
        }
        acc
    }

    /// Exact evaluation at `point`.
    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: point.len(),
            });
        }
        Ok(self.terms.iter().fold(C::zero(), |acc, (m, c)| {
            let v = m
                .exponents()
                .iter()
                .zip(point)
                .filter(|(e, _)| **e > 0)
                .fold(c.clone(), |acc, (e, x)| acc * ring_pow(x, *e));
            acc + v
        }))
    }

    /// Drops every term in which variable `index` (0-based) occurs.
    pub fn set_var_zero(&self, index: usize) -> Result<Self> {
        if index >= self.nvars {
            return Err(Error::Domain(format!(
                "variable index {index} out of range for {} variables",
                self.nvars
            )));
        }
        Ok(Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponents()[index] == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    /// Composes with the linear change of variables `x = M * y`, i.e. every
    /// `x_i` is replaced by `sum_j M[i][j] * y_j`.
    pub fn substitute_linear(&self, m: &Matrix<C>) -> Result<Self> {
        if !m.is_square() || m.rows() != self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: m.rows(),
            });
        }
        let n = self.nvars;
        let images: Vec<Self> = (0..n)
            .map(|i| {
                Self::from_terms(
                    n,
                    (0..n).map(|j| (Monomial::var(n, j), m.get(i, j).clone())),
                )
                .expect("dimension checked")
            })
            .collect();
        // Powers of each image are shared between terms.
        let mut power_cache: Vec<Vec<Self>> = images
            .iter()
            .map(|p| vec![Self::constant(n, C::one()), p.clone()])
            .collect();
        let mut out = Self::zero(n);
        for (mono, c) in &self.terms {
            let mut acc = Self::constant(n, c.clone());
            for (i, &e) in mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut power_cache[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().try_mul(&images[i])?;
                    cache.push(next);
                }
                acc = acc.try_mul(&cache[e as usize])?;
            }
            out.add_assign_checked(&acc)?;
        }
        Ok(out)
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Relabels variables: variable `i` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.nvars)?;
        Ok(Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.permute(perm), c.clone()))
                .collect(),
        })
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: perm.len(),
        });
    }
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::Domain(format!("{perm:?} is not a permutation")));
        }
    }
    Ok(())
}

impl<C: Ring> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<C: Ring> Add for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn add(self, rhs: Self) -> Polynomial<C> {
        self.try_add(rhs).expect("ambient dimensions differ")
    }
}

impl<C: Ring> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.try_sub(rhs).expect("ambient dimensions differ")
    }
}

impl<C: Ring> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.try_mul(rhs).expect("ambient dimensions differ")
    }
}

/// `f^d` by direct multinomial expansion over the support of `f`.
pub fn pow_linear(f: &LinearForm, d: u32) -> IntPolynomial {
    let n = f.nvars();
    let support: Vec<(usize, BigInt)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| (i, BigInt::from(*c)))
        .collect();
    let mut factorial = vec![BigInt::one()];
    for k in 1..=d {
        let next = factorial.last().unwrap() * BigInt::from(k);
        factorial.push(next);
    }
    // powers[j][e] = c_j^e
    let powers: Vec<Vec<BigInt>> = support
        .iter()
        .map(|(_, c)| {
            let mut v = vec![BigInt::one()];
            for _ in 0..d {
                let next = v.last().unwrap() * c;
                v.push(next);
            }
            v
        })
        .collect();

    let mut terms = BTreeMap::new();
    let mut exps = vec![0u32; support.len()];
    let mut emit = |exps: &[u32]| {
        let mut coeff = factorial[d as usize].clone();
        let mut denom = BigInt::one();
        let mut mono = Monomial::one(n);
        for (j, &e) in exps.iter().enumerate() {
            denom *= &factorial[e as usize];
            coeff *= &powers[j][e as usize];
            mono.0[support[j].0] = e;
        }
        let coeff = coeff / denom;
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
    };
    compositions(d, &mut exps, 0, &mut emit);
    Polynomial { nvars: n, terms }
}

fn compositions(remaining: u32, exps: &mut [u32], pos: usize, emit: &mut impl FnMut(&[u32])) {
    if exps.is_empty() {
        if remaining == 0 {
            emit(exps);
        }
        return;
    }
    if pos == exps.len() - 1 {
        exps[pos] = remaining;
        emit(exps);
        return;
    }
    for e in 0..=remaining {
        exps[pos] = e;
        compositions(remaining - e, exps, pos + 1, emit);
    }
}

impl Polynomial<BigInt> {
    pub fn to_rational(&self) -> RatPolynomial {
        self.map_coeffs(|c| Rational::from_integer(c.clone()))
    }

    /// Splits off the signed content: returns `(p / c, c)` where `c` is the gcd
    /// of the coefficients, signed so that the leading term of `p / c` is positive.
    pub fn content_normalize(&self) -> Result<(IntPolynomial, Rational)> {
        let (_, lead) = self.leading_term().ok_or(Error::ZeroPolynomial)?;
        let mut g = self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c));
        if lead.is_negative() {
            g = -g;
        }
        let prim = Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c / &g))
                .collect(),
        };
        Ok((prim, Rational::from_integer(g)))
    }
}

impl Polynomial<Rational> {
    /// Converts to integer coefficients, failing on the first non-integral one.
    pub fn to_integer(&self) -> Result<IntPolynomial> {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if !c.is_integer() {
                return Err(Error::NonIntegral(c.to_string()));
            }
            out.terms.insert(m.clone(), c.to_integer());
        }
        Ok(out)
    }

    /// As [`IntPolynomial::content_normalize`], with the content now a rational.
    pub fn content_normalize(&self) -> Result<(IntPolynomial, Rational)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let cleared = self
            .scale(&Rational::from_integer(lcm.clone()))
            .to_integer()?;
        let (prim, c) = cleared.content_normalize()?;
        Ok((prim, c / Rational::from_integer(lcm)))
    }
}

/// Wire format shared by every CLI subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

/// `["y1", ..., "yn"]`.
pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl<C: Ring + fmt::Display> Polynomial<C> {
    pub fn to_json(&self, vars: &[String]) -> Result<PolynomialJson> {
        if vars.len() != self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: vars.len(),
            });
        }
        Ok(PolynomialJson {
            vars: vars.to_vec(),
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    exp: m.exponents().to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
        })
    }
}

impl<C: Ring + FromStr> Polynomial<C> {
    pub fn from_json(json: &PolynomialJson) -> Result<Self> {
        let n = json.vars.len();
        let terms = json
            .terms
            .iter()
            .map(|t| {
                let c = t
                    .coeff
                    .parse::<C>()
                    .map_err(|_| Error::Json(format!("bad coefficient {:?}", t.coeff)))?;
                Ok((Monomial::new(t.exp.iter().copied()), c))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(n, terms)
    }
}

/// Human-readable rendering, e.g. `2*y1^2 - y2 + 3`.
pub struct Pretty<'a, C> {
    pub poly: &'a Polynomial<C>,
    pub vars: &'a [String],
}

impl<C: Ring + fmt::Display> fmt::Display for Pretty<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| match e {
                    1 => self.vars[i].clone(),
                    _ => format!("{}^{e}", self.vars[i]),
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
