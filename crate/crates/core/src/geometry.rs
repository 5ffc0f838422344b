//! Points, lines and planes of the cube `GF(2)^3`, the Fano plane obtained by
//! projecting from one vertex, and the linear forms they index.
//!
//! Vertex labels are the y-variable indices `1..=8`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::linear_form::LinearForm;
use crate::{Error, Result, RANK};

/// Coordinates of the vertex labelled `i + 1`.
pub const VERTEX_COORDS: [[u8; 3]; RANK] = [
    [0, 0, 0],
    [0, 1, 0],
    [1, 0, 0],
    [1, 1, 0],
    [0, 0, 1],
    [0, 1, 1],
    [1, 0, 1],
    [1, 1, 1],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CubePoint {
    pub label: u8,
    pub coords: [u8; 3],
}

impl CubePoint {
    pub fn from_label(label: u8) -> Result<Self> {
        if !(1..=RANK as u8).contains(&label) {
            return Err(Error::Domain(format!("no cube vertex labelled {label}")));
        }
        Ok(CubePoint {
            label,
            coords: VERTEX_COORDS[label as usize - 1],
        })
    }

    pub fn from_coords(coords: [u8; 3]) -> Result<Self> {
        VERTEX_COORDS
            .iter()
            .position(|c| *c == coords)
            .map(|i| CubePoint {
                label: i as u8 + 1,
                coords,
            })
            .ok_or_else(|| Error::Domain(format!("{coords:?} is not a point of GF(2)^3")))
    }
}

pub fn cube_points() -> Vec<CubePoint> {
    (1..=RANK as u8)
        .map(|l| CubePoint::from_label(l).expect("label in range"))
        .collect()
}

/// Two distinct vertices; every such pair is an affine line over GF(2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CubeLine {
    pub points: [u8; 2],
}

pub fn enumerate_lines() -> Vec<CubeLine> {
    let mut lines = Vec::with_capacity(28);
    for a in 1..=RANK as u8 {
        for b in a + 1..=RANK as u8 {
            lines.push(CubeLine { points: [a, b] });
        }
    }
    lines
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneKind {
    /// Covector of weight 1.
    Face,
    /// Covector of weight 2: the planes through two opposite edges.
    Diagonal,
    /// Covector `(1,1,1)`.
    Tetrahedron,
}

/// The affine plane `covector . z = constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CubePlane {
    pub covector: [u8; 3],
    pub constant: u8,
    pub kind: PlaneKind,
    /// Labels of the four points, ascending.
    pub points: [u8; 4],
}

impl CubePlane {
    pub fn through_origin(&self) -> bool {
        self.constant == 0
    }

    pub fn contains(&self, label: u8) -> bool {
        self.points.contains(&label)
    }
}

/// The 14 planes, by covector (as a 3-bit number, `z1` most significant) and
/// then constant.
pub fn enumerate_planes() -> Vec<CubePlane> {
    let mut planes = Vec::with_capacity(14);
    for bits in 1u8..8 {
        let covector = [bits >> 2 & 1, bits >> 1 & 1, bits & 1];
        let kind = match bits.count_ones() {
            1 => PlaneKind::Face,
            2 => PlaneKind::Diagonal,
            _ => PlaneKind::Tetrahedron,
        };
        for constant in 0..2 {
            let pts: Vec<u8> = cube_points()
                .into_iter()
                .filter(|p| {
                    p.coords
                        .iter()
                        .zip(&covector)
                        .map(|(z, a)| z * a)
                        .sum::<u8>()
                        % 2
                        == constant
                })
                .map(|p| p.label)
                .collect();
            planes.push(CubePlane {
                covector,
                constant,
                kind,
                points: pts.try_into().expect("a plane has four points"),
            });
        }
    }
    planes
}

/// The 8 sign patterns `y_a ± y_b ± y_c ± y_d` of a plane `{a<b<c<d}`, with
/// the leading coefficient `leading_sign`. Forms come back normalized.
pub fn plane_forms(plane: &CubePlane, leading_sign: i64) -> Vec<LinearForm> {
    let mut forms = Vec::with_capacity(8);
    for signs in 0u8..8 {
        let mut coeffs = vec![0i64; RANK];
        coeffs[plane.points[0] as usize - 1] = leading_sign;
        for (k, &p) in plane.points[1..].iter().enumerate() {
            coeffs[p as usize - 1] = if signs >> (2 - k) & 1 == 1 { -1 } else { 1 };
        }
        forms.push(LinearForm::normalize(&coeffs).expect("nonzero").0);
    }
    forms
}

/// The eight vertex forms followed by the sign patterns of each plane.
pub fn forms_from_planes(planes: &[CubePlane], leading_sign: i64) -> Vec<LinearForm> {
    let mut forms: Vec<LinearForm> = (0..RANK).map(|i| LinearForm::unit(RANK, i)).collect();
    for plane in planes {
        forms.extend(plane_forms(plane, leading_sign));
    }
    forms
}

/// The 120 forms indexed by vertices and planes of the cube.
pub fn forms_from_geometry() -> Vec<LinearForm> {
    forms_from_planes(&enumerate_planes(), 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FanoLine {
    /// Ascending point labels.
    pub points: [u8; 3],
}

impl FanoLine {
    pub fn contains(&self, label: u8) -> bool {
        self.points.contains(&label)
    }

    /// The 4 forms `y_a ± y_b ± y_c`, normalized.
    pub fn forms(&self) -> Vec<LinearForm> {
        (0u8..4)
            .map(|signs| {
                let mut coeffs = vec![0i64; RANK];
                coeffs[self.points[0] as usize - 1] = 1;
                coeffs[self.points[1] as usize - 1] = if signs & 2 == 0 { 1 } else { -1 };
                coeffs[self.points[2] as usize - 1] = if signs & 1 == 0 { 1 } else { -1 };
                LinearForm::new(coeffs).expect("leading coefficient is 1")
            })
            .collect()
    }
}

/// The plane seen from one vertex: planes through the center become lines
/// of a Fano plane on the remaining seven points, the others become 4-point
/// affine sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Projection {
    pub center: u8,
    pub points: Vec<u8>,
    pub lines: Vec<FanoLine>,
    pub affine_planes: Vec<[u8; 4]>,
}

pub fn project_from_center(center: u8) -> Result<Projection> {
    CubePoint::from_label(center)?;
    let mut lines = Vec::new();
    let mut affine_planes = Vec::new();
    for plane in enumerate_planes() {
        if plane.contains(center) {
            let rest: Vec<u8> = plane
                .points
                .iter()
                .copied()
                .filter(|&p| p != center)
                .collect();
            lines.push(FanoLine {
                points: rest.try_into().expect("three remaining points"),
            });
        } else {
            affine_planes.push(plane.points);
        }
    }
    lines.sort();
    affine_planes.sort();
    Ok(Projection {
        center,
        points: (1..=RANK as u8).filter(|&p| p != center).collect(),
        lines,
        affine_planes,
    })
}

impl Projection {
    /// The unique line through two distinct points.
    pub fn line_through(&self, a: u8, b: u8) -> Option<FanoLine> {
        self.lines
            .iter()
            .copied()
            .find(|l| a != b && l.contains(a) && l.contains(b))
    }

    /// Checks the projective plane axioms: 7 points, 7 lines, 3 points per
    /// line, 3 lines per point, and exactly one line through any two points.
    pub fn check_fano_axioms(&self) -> Result<()> {
        let fail = |what: String| Err(Error::Construction(what));
        if self.points.len() != 7 || self.lines.len() != 7 {
            return fail(format!(
                "{} points and {} lines",
                self.points.len(),
                self.lines.len()
            ));
        }
        for &p in &self.points {
            let n = self.lines.iter().filter(|l| l.contains(p)).count();
            if n != 3 {
                return fail(format!("point {p} lies on {n} lines"));
            }
        }
        for (i, &a) in self.points.iter().enumerate() {
            for &b in &self.points[i + 1..] {
                let n = self
                    .lines
                    .iter()
                    .filter(|l| l.contains(a) && l.contains(b))
                    .count();
                if n != 1 {
                    return fail(format!("points {a} and {b} share {n} lines"));
                }
            }
        }
        Ok(())
    }
}

/// What is left of the Fano plane after removing one of its lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffinePlane {
    pub removed: FanoLine,
    pub points: Vec<u8>,
    /// All pairs of remaining points.
    pub lines: Vec<[u8; 2]>,
}

pub fn remove_line_affine_plane(projection: &Projection, line: [u8; 3]) -> Result<AffinePlane> {
    let mut sorted = line;
    sorted.sort_unstable();
    let removed = FanoLine { points: sorted };
    if !projection.lines.contains(&removed) {
        let actual = projection
            .line_through(sorted[0], sorted[1])
            .map(|l| format!("{:?}", l.points))
            .unwrap_or_else(|| "none".into());
        return Err(Error::Domain(format!(
            "{sorted:?} is not a line of the Fano plane; the line through {} and {} is {actual}",
            sorted[0], sorted[1]
        )));
    }
    let points: Vec<u8> = projection
        .points
        .iter()
        .copied()
        .filter(|p| !removed.contains(*p))
        .collect();
    let mut lines = Vec::new();
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            lines.push([a, b]);
        }
    }
    Ok(AffinePlane {
        removed,
        points,
        lines,
    })
}

/// Distinct forms in `forms`, for set comparisons.
pub fn distinct(forms: &[LinearForm]) -> BTreeSet<LinearForm> {
    forms.iter().cloned().collect()
}
