use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::polynomial::{Monomial, Polynomial};
use crate::{Error, IntPolynomial, Rational, Result};

/// A nonzero primitive integer linear form, sign-normalized so that the
/// coefficient of its lowest-index variable is positive.
///
/// Ordering is lexicographic on the coefficient vector, which gives sets of
/// forms a deterministic iteration order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<i64>,
}

impl LinearForm {
    /// Normalizes `coeffs`: divides by the gcd and fixes the sign. Returns the
    /// form together with the integer `k` such that `coeffs = k * form`.
    pub fn normalize(coeffs: &[i64]) -> Result<(LinearForm, i64)> {
        let lead = *coeffs.iter().find(|c| **c != 0).ok_or(Error::ZeroForm)?;
        let g = coeffs.iter().fold(0i64, |g, c| g.gcd(c));
        let k = if lead < 0 { -g } else { g };
        Ok((
            LinearForm {
                coeffs: coeffs.iter().map(|c| c / k).collect(),
            },
            k,
        ))
    }

    /// Builds a form that must already be normalized.
    pub fn new(coeffs: Vec<i64>) -> Result<LinearForm> {
        let (f, k) = Self::normalize(&coeffs)?;
        if k != 1 {
            return Err(Error::InvalidForm(format!(
                "{coeffs:?} is not primitive with positive leading coefficient"
            )));
        }
        Ok(f)
    }

    /// Decomposes a rational functional as `scale * form`.
    pub fn from_rational(coeffs: &[Rational]) -> Result<(LinearForm, Rational)> {
        let lcm = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints = coeffs
            .iter()
            .map(|c| {
                let v = (c * Rational::from_integer(lcm.clone())).to_integer();
                i64::try_from(v).map_err(|_| Error::Domain("coefficient overflows i64".into()))
            })
            .collect::<Result<Vec<i64>>>()?;
        let (form, k) = Self::normalize(&ints)?;
        Ok((form, Rational::new(BigInt::from(k), lcm)))
    }

    /// The single variable `index` (0-based) in `nvars` variables.
    pub fn unit(nvars: usize, index: usize) -> LinearForm {
        let mut coeffs = vec![0; nvars];
        coeffs[index] = 1;
        LinearForm { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    /// 0-based indices of the variables with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars() {
            return Err(Error::Dimension {
                expected: self.nvars(),
                found: point.len(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .zip(point)
            .filter(|(c, _)| **c != 0)
            .fold(Rational::zero(), |acc, (c, x)| {
                acc + x * Rational::from_integer(BigInt::from(*c))
            }))
    }

    /// Substitutes zero for variable `index`. Returns `None` if the form
    /// vanishes identically, else the renormalized form and the integer `k`
    /// with `self|_{y_index = 0} = k * form`.
    pub fn set_var_zero(&self, index: usize) -> Option<(LinearForm, i64)> {
        let mut c = self.coeffs.clone();
        c[index] = 0;
        Self::normalize(&c).ok()
    }

    /// Relabels variables: variable `i` becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> (LinearForm, i64) {
        let mut c = vec![0; self.nvars()];
        for (i, &v) in self.coeffs.iter().enumerate() {
            c[perm[i]] = v;
        }
        Self::normalize(&c).expect("permutation keeps the form nonzero")
    }

    pub fn to_polynomial(&self) -> IntPolynomial {
        let n = self.nvars();
        Polynomial::from_terms(
            n,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), BigInt::from(*c))),
        )
        .expect("dimensions agree")
    }
}

impl fmt::Display for LinearForm {
    /// `y5-y6-y7+y8`, `2y1+y3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "y{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearForm({self})")
    }
}

impl FromStr for LinearForm {
    type Err = Error;

    /// Parses forms over `y1..y8` such as `y5-y6-y7+y8`. The result is normalized.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidForm(s.to_string());
        let mut coeffs = vec![0i64; crate::RANK];
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = compact.as_str();
        if rest.is_empty() {
            return Err(bad());
        }
        while !rest.is_empty() {
            let (sign, tail) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let digits = tail.chars().take_while(char::is_ascii_digit).count();
            let mult: i64 = if digits == 0 {
                1
            } else {
                tail[..digits].parse().map_err(|_| bad())?
            };
            let tail = tail[digits..].strip_prefix('y').ok_or_else(bad)?;
            let idx_len = tail.chars().take_while(char::is_ascii_digit).count();
            let idx: usize = tail[..idx_len].parse().map_err(|_| bad())?;
            if idx == 0 || idx > coeffs.len() {
                return Err(bad());
            }
            coeffs[idx - 1] += sign * mult;
            rest = &tail[idx_len..];
        }
        Ok(Self::normalize(&coeffs)?.0)
    }
}
