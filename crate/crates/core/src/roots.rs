//! The E8 root system in x-coordinates and its image on the y-Cartan.
//!
//! The x-coordinates are the standard ones: roots `±x_i ± x_j` and
//! `(±x_1 ± ... ± x_8)/2` with an even number of minus signs. The y-coordinates
//! are related by the fixed matrix [`BasisChange::y_from_x`], whose inverse is
//! computed exactly rather than transcribed.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::linear_form::LinearForm;
use crate::matrix::Matrix;
use crate::scalar::{format_rational, rat};
use crate::{fixtures, Error, RatMatrix, Rational, Result, RANK};

/// Signs of the printed change of basis: `y_i = (1/2) * sum_j S[i][j] x_j`.
const Y_FROM_X_SIGNS: [[i8; RANK]; RANK] = [
    [1, 1, 1, 1, -1, -1, -1, -1],
    [1, 1, -1, -1, -1, -1, 1, 1],
    [1, -1, 1, -1, -1, 1, -1, 1],
    [1, -1, -1, 1, -1, 1, 1, -1],
    [1, -1, -1, 1, 1, -1, -1, 1],
    [1, -1, 1, -1, 1, -1, 1, -1],
    [1, 1, -1, -1, 1, 1, -1, -1],
    [1, 1, 1, 1, 1, 1, 1, 1],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootKind {
    /// `±x_i ± x_j`
    Integral,
    /// `(±x_1 ± ... ± x_8)/2`
    HalfIntegral,
}

/// An E8 root, stored as twice its x-coordinates so it stays integral.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector {
    doubled: [i8; RANK],
}

impl RootVector {
    /// Validates the shape of `2 * alpha`: either two entries `±2` and zeros,
    /// or eight entries `±1` with an even number of minus signs.
    pub fn from_doubled(doubled: [i8; RANK]) -> Result<Self> {
        let r = RootVector { doubled };
        r.kind()
            .map(|_| r)
            .ok_or_else(|| Error::Domain(format!("{doubled:?} is not twice an E8 root")))
    }

    pub fn doubled(&self) -> [i8; RANK] {
        self.doubled
    }

    pub fn coords(&self) -> Vec<Rational> {
        self.doubled.iter().map(|&d| rat(d as i64, 2)).collect()
    }

    pub fn kind(&self) -> Option<RootKind> {
        let d = &self.doubled;
        let twos = d.iter().filter(|v| v.abs() == 2).count();
        let zeros = d.iter().filter(|v| **v == 0).count();
        let ones = d.iter().filter(|v| v.abs() == 1).count();
        let minus = d.iter().filter(|v| **v < 0).count();
        if twos == 2 && zeros == RANK - 2 {
            Some(RootKind::Integral)
        } else if ones == RANK && minus % 2 == 0 {
            Some(RootKind::HalfIntegral)
        } else {
            None
        }
    }

    pub fn neg(&self) -> RootVector {
        RootVector {
            doubled: self.doubled.map(|v| -v),
        }
    }

    /// Four times the Euclidean inner product.
    pub fn inner4(&self, other: &RootVector) -> i64 {
        self.doubled
            .iter()
            .zip(&other.doubled)
            .map(|(a, b)| *a as i64 * *b as i64)
            .sum()
    }

    pub fn squared_length(&self) -> Rational {
        rat(self.inner4(self), 4)
    }

    /// Applies `x_i -> signs[i] * x_{perm[i]}`: coordinate `i` moves to
    /// `perm[i]` after multiplication by `signs[i]`.
    pub fn transform(&self, perm: &[usize; RANK], signs: &[i8; RANK]) -> RootVector {
        let mut out = [0i8; RANK];
        for i in 0..RANK {
            out[perm[i]] = self.doubled[i] * signs[i];
        }
        RootVector { doubled: out }
    }
}

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(format_rational).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The 240 roots: integral roots first (index pairs in lexicographic order,
/// signs `++, +-, -+, --`), then half-integral roots by ascending sign mask
/// (bit `k` set means a minus sign on `x_{k+1}`).
pub fn generate_e8_roots() -> Vec<RootVector> {
    let mut roots = Vec::with_capacity(240);
    for i in 0..RANK {
        for j in i + 1..RANK {
            for (a, b) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                let mut d = [0i8; RANK];
                d[i] = a;
                d[j] = b;
                roots.push(RootVector { doubled: d });
            }
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            let d = std::array::from_fn(|k| if mask >> k & 1 == 1 { -1 } else { 1 });
            roots.push(RootVector { doubled: d });
        }
    }
    roots
}

/// The change of basis between the x- and y-Cartan coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    /// `y = y_from_x * x`, entries `±1/2`.
    pub y_from_x: RatMatrix,
    /// `x = x_from_y * y`.
    pub x_from_y: RatMatrix,
}

impl BasisChange {
    pub fn printed() -> Result<Self> {
        let y_from_x = Matrix::from_rows(
            Y_FROM_X_SIGNS
                .iter()
                .map(|row| row.iter().map(|&s| rat(s as i64, 2)).collect())
                .collect(),
        )?;
        let x_from_y = y_from_x.inverse()?;
        if &y_from_x * &x_from_y != Matrix::identity(RANK) {
            return Err(Error::Construction(
                "basis change inverse is not exact".into(),
            ));
        }
        Ok(BasisChange { y_from_x, x_from_y })
    }

    /// The coefficients, in y, of the functional `x -> <alpha, x>`.
    pub fn functional_in_y(&self, x_coeffs: &[Rational]) -> Result<Vec<Rational>> {
        self.x_from_y.transpose().apply(x_coeffs)
    }
}

/// How the half-integral roots enter a y-space computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HalfSpinScaling {
    /// The roots themselves, all of squared length 2.
    #[default]
    Roots,
    /// Half-integral roots doubled, i.e. taken as `(±1, ..., ±1)`. This is the
    /// weighting under which the stored power-sum tables are reproduced.
    Doubled,
}

/// A root seen as a linear functional on the y-Cartan: `scale * form`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootImage {
    pub root: RootVector,
    pub form: LinearForm,
    pub scale: Rational,
}

/// Images of all 240 roots, in the order of [`generate_e8_roots`].
pub fn roots_in_y() -> Result<Vec<RootImage>> {
    roots_in_y_scaled(HalfSpinScaling::Roots)
}

pub fn roots_in_y_scaled(scaling: HalfSpinScaling) -> Result<Vec<RootImage>> {
    let basis = BasisChange::printed()?;
    images_of(&generate_e8_roots(), &basis, scaling)
}

pub(crate) fn images_of(
    roots: &[RootVector],
    basis: &BasisChange,
    scaling: HalfSpinScaling,
) -> Result<Vec<RootImage>> {
    roots
        .iter()
        .map(|r| {
            let mut coords = r.coords();
            if scaling == HalfSpinScaling::Doubled && r.kind() == Some(RootKind::HalfIntegral) {
                coords
                    .iter_mut()
                    .for_each(|c| *c *= Rational::from_integer(BigInt::from(2)));
            }
            let (form, scale) = LinearForm::from_rational(&basis.functional_in_y(&coords)?)?;
            Ok(RootImage {
                root: *r,
                form,
                scale,
            })
        })
        .collect()
}

/// Normalized forms with the number of roots mapping to each.
pub fn form_multiplicities(images: &[RootImage]) -> BTreeMap<LinearForm, u32> {
    let mut counts = BTreeMap::new();
    for im in images {
        *counts.entry(im.form.clone()).or_insert(0) += 1;
    }
    counts
}

/// Multiset difference between a reference list of forms and a candidate list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FactorSetReport {
    /// In the reference but not (or less often) in the candidate.
    pub missing: Vec<String>,
    /// In the candidate but not (or less often) in the reference.
    pub unexpected: Vec<String>,
}

impl FactorSetReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }

    pub fn symmetric_difference(&self) -> usize {
        self.missing.len() + self.unexpected.len()
    }
}

pub fn compare_forms(reference: &[LinearForm], candidate: &[LinearForm]) -> FactorSetReport {
    let mut balance: BTreeMap<&LinearForm, i64> = BTreeMap::new();
    for f in reference {
        *balance.entry(f).or_insert(0) += 1;
    }
    for f in candidate {
        *balance.entry(f).or_insert(0) -= 1;
    }
    let mut report = FactorSetReport::default();
    for (f, b) in balance {
        for _ in 0..b.max(0) {
            report.missing.push(f.to_string());
        }
        for _ in 0..(-b).max(0) {
            report.unexpected.push(f.to_string());
        }
    }
    report
}

/// Compares a set of forms (e.g. the distinct root images) against the printed
/// list of 120 hyperdeterminant factors.
pub fn verify_against_printed(forms: &[LinearForm]) -> Result<FactorSetReport> {
    Ok(compare_forms(&fixtures::hdet_factors()?, forms))
}

/// The exact scalar `c` with `prod_{alpha} alpha = c * prod_{forms} form^mult`.
pub fn root_product_scalar(images: &[RootImage]) -> Rational {
    images
        .iter()
        .fold(Rational::one(), |acc, im| acc * im.scale.clone())
}

/// True when every entry of `m` is `±1/2`.
pub fn all_half_entries(m: &RatMatrix) -> bool {
    let half = rat(1, 2);
    (0..m.rows())
        .all(|i| (0..m.cols()).all(|j| *m.get(i, j) == half || *m.get(i, j) == -half.clone()))
}
