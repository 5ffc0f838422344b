//! Cayley's hyperdeterminant of a 2x2x2 tensor.
//!
//! Entries are addressed by `(i, j, k)` in `{0,1}^3`, stored at index
//! `4i + 2j + k`; the same index labels the polynomial variables.

use std::fmt;

use serde::Serialize;

use crate::matrix::Matrix;
use crate::polynomial::{Monomial, Polynomial};
use crate::scalar::Ring;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor222<C> {
    entries: [C; 8],
}

impl<C: fmt::Debug> fmt::Debug for Tensor222<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.entries).finish()
    }
}

fn index(i: usize, j: usize, k: usize) -> usize {
    4 * i + 2 * j + k
}

impl<C: Ring> Tensor222<C> {
    /// Entries in `(i, j, k)` lexicographic order.
    pub fn new(entries: [C; 8]) -> Self {
        Tensor222 { entries }
    }

    pub fn from_slice(entries: &[C]) -> Result<Self> {
        let arr: [C; 8] = entries
            .to_vec()
            .try_into()
            .map_err(|v: Vec<C>| Error::Dimension {
                expected: 8,
                found: v.len(),
            })?;
        Ok(Self::new(arr))
    }

    pub fn zero() -> Self {
        Self::new(std::array::from_fn(|_| C::zero()))
    }

    /// The basis tensor `e_i (x) e_j (x) e_k`.
    pub fn basis(i: usize, j: usize, k: usize) -> Self {
        let mut t = Self::zero();
        t.entries[index(i, j, k)] = C::one();
        t
    }

    /// `u (x) v (x) w`.
    pub fn rank_one(u: &[C; 2], v: &[C; 2], w: &[C; 2]) -> Self {
        Self::new(std::array::from_fn(|n| {
            u[n >> 2 & 1].clone() * v[n >> 1 & 1].clone() * w[n & 1].clone()
        }))
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &C {
        &self.entries[index(i, j, k)]
    }

    pub fn entries(&self) -> &[C; 8] {
        &self.entries
    }

    /// `(g1 (x) g2 (x) g3) . A`.
    pub fn act(&self, g1: &Matrix<C>, g2: &Matrix<C>, g3: &Matrix<C>) -> Result<Self> {
        for g in [g1, g2, g3] {
            if g.rows() != 2 || g.cols() != 2 {
                return Err(Error::Dimension {
                    expected: 2,
                    found: g.rows().max(g.cols()),
                });
            }
        }
        let mut out = Self::zero();
        for n in 0..8 {
            let (i, j, k) = (n >> 2 & 1, n >> 1 & 1, n & 1);
            let mut acc = C::zero();
            for m in 0..8 {
                let (a, b, c) = (m >> 2 & 1, m >> 1 & 1, m & 1);
                acc = acc
                    + g1.get(i, a).clone()
                        * g2.get(j, b).clone()
                        * g3.get(k, c).clone()
                        * self.entries[m].clone();
            }
            out.entries[n] = acc;
        }
        Ok(out)
    }

    /// Swaps every index bit: `a_{ijk} -> a_{(1-i)(1-j)(1-k)}`.
    pub fn complement(&self) -> Self {
        Self::new(std::array::from_fn(|n| self.entries[7 - n].clone()))
    }
}

/// The twelve printed monomials with their coefficients, as index quadruples.
const PRINTED_TERMS: [(i64, [usize; 4]); 12] = [
    (1, [0b000, 0b000, 0b111, 0b111]),
    (1, [0b010, 0b010, 0b101, 0b101]),
    (1, [0b001, 0b001, 0b110, 0b110]),
    (1, [0b011, 0b011, 0b100, 0b100]),
    (4, [0b000, 0b011, 0b101, 0b110]),
    (4, [0b001, 0b010, 0b100, 0b111]),
    (-2, [0b000, 0b001, 0b110, 0b111]),
    (-2, [0b000, 0b010, 0b101, 0b111]),
    (-2, [0b000, 0b011, 0b100, 0b111]),
    (-2, [0b001, 0b010, 0b101, 0b110]),
    (-2, [0b001, 0b011, 0b100, 0b110]),
    (-2, [0b010, 0b011, 0b100, 0b101]),
];

/// Evaluates the explicit degree-4 formula.
pub fn hdet222_explicit<C: Ring>(a: &Tensor222<C>) -> C {
    let e = a.entries();
    let sq = |x: &C| x.clone() * x.clone();
    let p4 = |w: usize, x: usize, y: usize, z: usize| {
        e[w].clone() * e[x].clone() * e[y].clone() * e[z].clone()
    };
    sq(&e[0b000]) * sq(&e[0b111])
        + sq(&e[0b010]) * sq(&e[0b101])
        + sq(&e[0b001]) * sq(&e[0b110])
        + sq(&e[0b011]) * sq(&e[0b100])
        + C::from_i64(4) * (p4(0b000, 0b011, 0b101, 0b110) + p4(0b001, 0b010, 0b100, 0b111))
        - C::from_i64(2)
            * (p4(0b000, 0b001, 0b110, 0b111)
                + p4(0b000, 0b010, 0b101, 0b111)
                + p4(0b000, 0b011, 0b100, 0b111)
                + p4(0b001, 0b010, 0b101, 0b110)
                + p4(0b001, 0b011, 0b100, 0b110)
                + p4(0b010, 0b011, 0b100, 0b101))
}

fn monomial(indices: &[usize]) -> Monomial {
    let mut e = [0u32; 8];
    for &i in indices {
        e[i] += 1;
    }
    Monomial::new(e)
}

/// The explicit formula as a polynomial in the 8 entries.
pub fn explicit_polynomial<C: Ring>() -> Polynomial<C> {
    Polynomial::from_terms(
        8,
        PRINTED_TERMS
            .iter()
            .map(|(c, idx)| (monomial(idx), C::from_i64(*c))),
    )
    .expect("8 variables")
}

/// Which piece of the cube a monomial comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CubeFigure {
    Diagonal,
    Parallelogram,
    Tetrahedron,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeTerm {
    pub figure: CubeFigure,
    pub coeff: i64,
    /// Variable indices of the monomial, with repetition.
    pub indices: [usize; 4],
}

/// Diagonals `{v, !v}`, pairs of diagonals, and the two tetrahedra of the
/// unit cube.
pub fn cube_terms() -> Vec<CubeTerm> {
    let diagonals: Vec<[usize; 2]> = (0..8).filter(|v| v & 4 == 0).map(|v| [v, 7 - v]).collect();
    let mut terms: Vec<CubeTerm> = diagonals
        .iter()
        .map(|&[v, w]| CubeTerm {
            figure: CubeFigure::Diagonal,
            coeff: 1,
            indices: [v, v, w, w],
        })
        .collect();

    for (n, d1) in diagonals.iter().enumerate() {
        for d2 in &diagonals[n + 1..] {
            // Two diagonals span a parallelogram when some endpoints are
            // adjacent, i.e. differ in one bit.
            let adjacent = d1
                .iter()
                .any(|a| d2.iter().any(|b| (a ^ b).count_ones() == 1));
            if adjacent {
                let mut idx = [d1[0], d1[1], d2[0], d2[1]];
                idx.sort_unstable();
                terms.push(CubeTerm {
                    figure: CubeFigure::Parallelogram,
                    coeff: -2,
                    indices: idx,
                });
            }
        }
    }

    // Four vertices at pairwise Hamming distance 2.
    for mask in 0u32..256 {
        if mask.count_ones() != 4 {
            continue;
        }
        let verts: Vec<usize> = (0..8).filter(|v| mask >> v & 1 == 1).collect();
        let regular = verts
            .iter()
            .enumerate()
            .all(|(n, a)| verts[n + 1..].iter().all(|b| (a ^ b).count_ones() == 2));
        if regular {
            terms.push(CubeTerm {
                figure: CubeFigure::Tetrahedron,
                coeff: 4,
                indices: verts.try_into().expect("four vertices"),
            });
        }
    }
    terms
}

/// The hyperdeterminant assembled from [`cube_terms`].
pub fn hdet222_combinatorial<C: Ring>() -> Polynomial<C> {
    Polynomial::from_terms(
        8,
        cube_terms()
            .iter()
            .map(|t| (monomial(&t.indices), C::from_i64(t.coeff))),
    )
    .expect("8 variables")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport<C> {
    pub before: C,
    pub after: C,
}

impl<C: PartialEq> InvarianceReport<C> {
    pub fn holds(&self) -> bool {
        self.before == self.after
    }
}

fn det2<C: Ring>(g: &Matrix<C>) -> C {
    g.get(0, 0).clone() * g.get(1, 1).clone() - g.get(0, 1).clone() * g.get(1, 0).clone()
}

/// Compares the hyperdeterminant before and after acting by `g1 (x) g2 (x) g3`.
/// Each `g` must have determinant exactly 1.
pub fn sl2_invariance_check<C: Ring>(
    a: &Tensor222<C>,
    g1: &Matrix<C>,
    g2: &Matrix<C>,
    g3: &Matrix<C>,
) -> Result<InvarianceReport<C>> {
    for (n, g) in [g1, g2, g3].into_iter().enumerate() {
        if g.rows() != 2 || g.cols() != 2 || det2(g) != C::one() {
            return Err(Error::Precondition(format!(
                "factor {} is not a 2x2 matrix of determinant 1: {g:?}",
                n + 1
            )));
        }
    }
    Ok(InvarianceReport {
        before: hdet222_explicit(a),
        after: hdet222_explicit(&a.act(g1, g2, g3)?),
    })
}
