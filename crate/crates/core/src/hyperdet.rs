//! The degree-240 hyperdeterminant on the Cartan, kept as a product of linear
//! forms, and its restrictions.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::geometry::{self, CubePlane};
use crate::linear_form::LinearForm;
use crate::roots::{compare_forms, form_multiplicities, roots_in_y, FactorSetReport};
use crate::scalar::{format_rational, parse_rational, ring_pow};
use crate::{fixtures, Error, Rational, Result, RANK};

/// `scalar * prod form^mult` over distinct normalized forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredForm {
    pub factors: BTreeMap<LinearForm, u32>,
    pub scalar: Rational,
}

impl FactoredForm {
    pub fn new(factors: BTreeMap<LinearForm, u32>, scalar: Rational) -> Result<Self> {
        if let Some((f, _)) = factors.iter().find(|(_, m)| **m == 0) {
            return Err(Error::InvalidForm(format!("{f} has multiplicity 0")));
        }
        Ok(FactoredForm { factors, scalar })
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.values().sum()
    }

    pub fn distinct_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn multiplicity(&self, form: &LinearForm) -> u32 {
        self.factors.get(form).copied().unwrap_or(0)
    }

    /// Every form repeated according to its multiplicity.
    pub fn expanded(&self) -> Vec<LinearForm> {
        self.factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.clone(), *m as usize))
            .collect()
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != RANK {
            return Err(Error::Dimension {
                expected: RANK,
                found: point.len(),
            });
        }
        let mut acc = self.scalar.clone();
        for (f, m) in &self.factors {
            let v = f.eval(point)?;
            if v.is_zero() {
                return Ok(Rational::zero());
            }
            acc *= ring_pow(&v, *m);
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> FactoredJson {
        FactoredJson {
            scalar: format_rational(&self.scalar),
            factors: self
                .factors
                .iter()
                .map(|(f, m)| FactorJson {
                    coeffs: f.coeffs().to_vec(),
                    mult: *m,
                })
                .collect(),
        }
    }

    pub fn from_json(json: &FactoredJson) -> Result<Self> {
        let mut factors = BTreeMap::new();
        for fj in &json.factors {
            if fj.coeffs.len() != RANK {
                return Err(Error::Dimension {
                    expected: RANK,
                    found: fj.coeffs.len(),
                });
            }
            let form = LinearForm::new(fj.coeffs.clone())?;
            if factors.insert(form.clone(), fj.mult).is_some() {
                return Err(Error::InvalidForm(format!("{form} listed twice")));
            }
        }
        Self::new(factors, parse_rational(&json.scalar)?)
    }
}

/// Wire format of a [`FactoredForm`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredJson {
    pub scalar: String,
    pub factors: Vec<FactorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub coeffs: Vec<i64>,
    pub mult: u32,
}

/// The hyperdeterminant on the Cartan: the product of the root functionals,
/// with global scalar 1. The factor set is checked against the one generated
/// by the vertices and planes of the cube.
pub fn build_hdet() -> Result<FactoredForm> {
    let factors = form_multiplicities(&roots_in_y()?);
    let from_geometry = geometry::distinct(&geometry::forms_from_geometry());
    let from_roots: BTreeSet<_> = factors.keys().cloned().collect();
    if from_roots != from_geometry {
        let report = compare_forms(
            &from_roots.into_iter().collect::<Vec<_>>(),
            &from_geometry.into_iter().collect::<Vec<_>>(),
        );
        return Err(Error::Construction(format!(
            "root and cube factor sets differ: missing {:?}, unexpected {:?}",
            report.missing, report.unexpected
        )));
    }
    FactoredForm::new(factors, Rational::one())
}

pub fn eval_hdet(h: &FactoredForm, point: &[Rational]) -> Result<Rational> {
    h.eval(point)
}

/// Result of dividing by `y8^2` and then setting `y8 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    #[serde(serialize_with = "forms_as_strings")]
    pub q_factors: Vec<LinearForm>,
    #[serde(serialize_with = "forms_as_strings")]
    pub t_factors: Vec<LinearForm>,
    pub q_degree: u32,
    pub t_degree: u32,
    pub q_multiplicity: u32,
    pub t_multiplicity: u32,
    #[serde(serialize_with = "rational_as_string")]
    pub residual_scalar: Rational,
}

fn forms_as_strings<S: serde::Serializer>(
    forms: &[LinearForm],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(forms.iter().map(ToString::to_string))
}

fn rational_as_string<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

impl RestrictionReport {
    /// `Q^q_multiplicity * T^t_multiplicity`.
    pub fn total_degree(&self) -> u32 {
        self.q_multiplicity * self.q_degree + self.t_multiplicity * self.t_degree
    }

    /// Multiset comparison of `Q` and `T` with the printed factor lists.
    pub fn compare_with_printed(&self) -> Result<(FactorSetReport, FactorSetReport)> {
        Ok((
            compare_forms(&fixtures::wedge4_q()?, &self.q_factors),
            compare_forms(&fixtures::wedge4_t()?, &self.t_factors),
        ))
    }
}

pub fn restrict_to_wedge4(h: &FactoredForm) -> Result<RestrictionReport> {
    let y8 = LinearForm::unit(RANK, RANK - 1);
    let mult8 = h.multiplicity(&y8);
    if mult8 != 2 {
        return Err(Error::Precondition(format!(
            "expected y8 with multiplicity 2, found {mult8}"
        )));
    }
    let mut merged: BTreeMap<LinearForm, u32> = BTreeMap::new();
    let mut scalar = h.scalar.clone();
    for (f, m) in h.factors.iter().filter(|(f, _)| **f != y8) {
        let (g, k) = f
            .set_var_zero(RANK - 1)
            .ok_or_else(|| Error::Degeneration(format!("{f} vanishes at y8 = 0")))?;
        scalar *= ring_pow(&Rational::from_integer(BigInt::from(k)), *m);
        *merged.entry(g).or_insert(0) += m;
    }

    let mut by_mult: BTreeMap<u32, Vec<LinearForm>> = BTreeMap::new();
    for (f, m) in merged {
        by_mult.entry(m).or_default().push(f);
    }
    if by_mult.len() != 2 {
        return Err(Error::Degeneration(format!(
            "expected two multiplicity classes after restriction, found {:?}",
            by_mult.keys().collect::<Vec<_>>()
        )));
    }
    let mut classes = by_mult.into_iter();
    let (q_mult, q) = classes.next().expect("two classes");
    let (t_mult, t) = classes.next().expect("two classes");
    Ok(RestrictionReport {
        q_degree: q.len() as u32,
        t_degree: t.len() as u32,
        q_factors: q,
        t_factors: t,
        q_multiplicity: q_mult,
        t_multiplicity: t_mult,
        residual_scalar: scalar,
    })
}

/// The discriminant in `y1..y4` built from the affine plane left after
/// removing the line `{5,6,7}` from the Fano plane centered at `y8`: each of
/// its six lines `{i,j}` contributes `(y_i - y_j)^2 (y_i + y_j)^2`.
pub fn restrict_to_4qubit() -> Result<FactoredForm> {
    let projection = geometry::project_from_center(8)?;
    let plane = geometry::remove_line_affine_plane(&projection, [5, 6, 7])?;
    let mut factors = BTreeMap::new();
    for [i, j] in plane.lines {
        for sign in [1, -1] {
            let mut c = vec![0i64; RANK];
            c[i as usize - 1] = 1;
            c[j as usize - 1] = sign;
            factors.insert(LinearForm::new(c)?, 2);
        }
    }
    FactoredForm::new(factors, Rational::one())
}

/// Compares the factor multiset of `h` with the vertex forms and the sign
/// patterns of `planes`, all squared.
pub fn vertices_planes_product_check(
    h: &FactoredForm,
    planes: &[CubePlane],
    leading_sign: i64,
) -> FactorSetReport {
    let mut from_geometry = Vec::new();
    for f in geometry::forms_from_planes(planes, leading_sign) {
        from_geometry.push(f.clone());
        from_geometry.push(f);
    }
    compare_forms(&h.expanded(), &from_geometry)
}
