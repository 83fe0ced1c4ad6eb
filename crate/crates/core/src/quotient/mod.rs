//! Quotients of toric prevarieties by subtori, computed on fans.
//!
//! A [`SubtorusAction`] pairs an affine system of fans with a saturated
//! sublattice `L`, the lattice of one-parameter subgroups of the acting
//! torus `H`. Everything downstream works with the projection
//! `P: N -> N/L`, always written as an explicit integer matrix.
//!
//! [`compute_hhat`] enlarges `L` until no invariant map can tell apart the
//! points that two opposite projected faces force together, and until every
//! class of projected charts spans a strictly convex cone. The result is the
//! lattice of the largest subtorus under which every invariant regular map
//! remains invariant, at least when its codimension is at most two; beyond
//! that the result is reported as uncertified.

mod report;
mod separation;

use alloc::vec;
use alloc::vec::Vec;

use crate::cones::{relints_intersect, Cone};
use crate::error::QuotientError;
use crate::exactlin::{quotient_projection, saturate, IntMat, IntVec, Sublattice};
use crate::fans::{fan_as_system, AffineSystemOfFans, Fan, LabelledCone};

pub use report::{
    diagnose, glueing_deficiency, orbit_image, AvQuotient, DiagnosisReport, Flag, FlagPattern,
    GlueingWitness, OrbitImageReport, TargetFace,
};
pub use separation::{compute_separation, naive_tp_quotient, tv_quotient, SeparationResult, TpQuotient};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubtorusAction {
    space: AffineSystemOfFans,
    lattice: Sublattice,
    fan: Option<Fan>,
}

impl SubtorusAction {
    /// The action of the subtorus whose one-parameter subgroups span `lattice`.
    /// The lattice is saturated first.
    pub fn new(space: AffineSystemOfFans, lattice: &Sublattice) -> Result<SubtorusAction, QuotientError> {
        let n = space.ambient_rank();
        if lattice.ambient_rank() != n {
            return Err(QuotientError::Lin(crate::error::LinError::LengthMismatch {
                left: n,
                right: lattice.ambient_rank(),
            }));
        }
        let lattice = saturate(lattice);
        if lattice.rank() >= n && n > 0 {
            return Err(QuotientError::ActionTooLarge {
                rank: lattice.rank(),
                ambient: n,
            });
        }
        let fan = space.to_fan();
        Ok(SubtorusAction { space, lattice, fan })
    }

    pub fn on_fan(fan: &Fan, lattice: &Sublattice) -> Result<SubtorusAction, QuotientError> {
        SubtorusAction::new(fan_as_system(fan), lattice)
    }

    pub fn space(&self) -> &AffineSystemOfFans {
        &self.space
    }

    pub fn lattice(&self) -> &Sublattice {
        &self.lattice
    }

    /// The fan of the space when it is separated.
    pub fn fan(&self) -> Option<&Fan> {
        self.fan.as_ref()
    }

    pub fn ambient_rank(&self) -> usize {
        self.space.ambient_rank()
    }

    /// The same space acted on by another lattice.
    pub fn with_lattice(&self, lattice: &Sublattice) -> SubtorusAction {
        SubtorusAction {
            space: self.space.clone(),
            lattice: saturate(lattice),
            fan: self.fan.clone(),
        }
    }

    fn projection(&self, lattice: &Sublattice) -> IntMat {
        quotient_projection(self.ambient_rank(), lattice).expect("saturated")
    }
}

/// Which enlargement fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// Faces of two charts with meeting projected interiors contain points
    /// whose images span a line.
    OppositeFaces,
    /// The convex hull of a class of projected charts contains a line.
    LineInClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub rule: Rule,
    pub first: LabelledCone,
    /// The partner face for [`Rule::OppositeFaces`].
    pub second: Option<LabelledCone>,
    /// Lattice vectors added to the sublattice.
    pub added: Vec<IntVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HhatResult {
    pub lattice: Sublattice,
    pub trace: Vec<TraceEntry>,
    pub codim: usize,
    /// Whether the quotient dimension is at most two, where the enlargement
    /// is known to be exact.
    pub certified: bool,
}

/// Chart pairs `i < j` whose projected relative interiors meet.
pub fn non_separated_pairs(action: &SubtorusAction) -> Result<Vec<(usize, usize)>, QuotientError> {
    let p = action.projection(action.lattice());
    let images = chart_images(action.space(), &p)?;
    let mut out = Vec::new();
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if relints_intersect(&images[i], &images[j])? {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

pub fn compute_hhat(action: &SubtorusAction) -> Result<HhatResult, QuotientError> {
    let n = action.ambient_rank();
    let mut lattice = action.lattice().clone();
    let mut trace = Vec::new();
    while lattice.rank() < n {
        let p = action.projection(&lattice);
        let entry = match find_opposite_faces(action.space(), &p)? {
            Some(e) => e,
            None => match find_line_in_class(action.space(), &p)? {
                Some(e) => e,
                None => break,
            },
        };
        lattice = lattice.saturated_join(&entry.added)?;
        trace.push(entry);
    }
    let codim = n - lattice.rank();
    Ok(HhatResult {
        lattice,
        trace,
        codim,
        certified: codim <= 2,
    })
}

/// Connected components of the graph on charts whose projected relative
/// interiors meet, each sorted, ordered by smallest member.
pub fn equivalence_classes(action: &SubtorusAction, lattice: &Sublattice) -> Result<Vec<Vec<usize>>, QuotientError> {
    let p = action.projection(&saturate(lattice));
    classes_of(&chart_images(action.space(), &p)?)
}

pub(crate) fn chart_images(space: &AffineSystemOfFans, p: &IntMat) -> Result<Vec<Cone>, QuotientError> {
    space
        .charts()
        .iter()
        .map(|c| c.image(p).map_err(QuotientError::from))
        .collect()
}

pub(crate) fn classes_of(images: &[Cone]) -> Result<Vec<Vec<usize>>, QuotientError> {
    let m = images.len();
    let mut class = vec![usize::MAX; m];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..m {
        if class[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class[start] = id;
        let mut members = vec![start];
        let mut k = 0;
        while k < members.len() {
            let a = members[k];
            for b in 0..m {
                if class[b] == usize::MAX && relints_intersect(&images[a], &images[b])? {
                    class[b] = id;
                    members.push(b);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        classes.push(members);
    }
    Ok(classes)
}

/// A nonzero point of `σ°`, if `σ` is not the zero cone.
fn nonzero_relint_point(c: &Cone) -> Option<IntVec> {
    if c.is_zero() {
        return None;
    }
    let s = c.relint_sample();
    if s.is_zero() {
        return c.lineality().basis().first().cloned();
    }
    Some(s)
}

/// A primitive lattice point of `τ°` whose image lies on the open ray
/// through `w`, which must lie in `P(τ)°`.
fn lift_into_relint(tau: &Cone, p: &IntMat, w: &IntVec) -> IntVec {
    let fibre = tau
        .intersect(&Cone::ray(w).preimage(p).expect("ranks match"))
        .expect("ranks match");
    let v = fibre
        .relint_sample()
        .primitive()
        .expect("w is the image of a point of the face");
    debug_assert!(tau.relint_contains(&v));
    v
}

fn find_opposite_faces(space: &AffineSystemOfFans, p: &IntMat) -> Result<Option<TraceEntry>, QuotientError> {
    let images = chart_images(space, p)?;
    let faces: Vec<Vec<(Cone, Cone)>> = (0..space.chart_count())
        .map(|i| {
            space
                .chart_faces(i)
                .iter()
                .map(|f| (f.clone(), f.image(p).expect("ranks match")))
                .filter(|(_, img)| !img.is_zero())
                .collect()
        })
        .collect();
    for i in 0..images.len() {
        for j in i..images.len() {
            if i != j && !relints_intersect(&images[i], &images[j])? {
                continue;
            }
            for (ti, ai) in &faces[i] {
                for (tj, aj) in &faces[j] {
                    let b = aj.neg();
                    let w = match nonzero_relint_point(&ai.intersect(&b)?) {
                        Some(w) => w,
                        None => continue,
                    };
                    if !ai.relint_contains(&w) || !b.relint_contains(&w) {
                        continue;
                    }
                    let vi = lift_into_relint(ti, p, &w);
                    let vj = lift_into_relint(tj, p, &w.neg());
                    return Ok(Some(TraceEntry {
                        rule: Rule::OppositeFaces,
                        first: LabelledCone { chart: i, cone: ti.clone() },
                        second: Some(LabelledCone { chart: j, cone: tj.clone() }),
                        added: vec![vi, vj],
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// The first chart ray, in chart and ray order, whose image is a nonzero
/// vector in the lineality space of `hull`.
pub(crate) fn ray_into_lineality(
    space: &AffineSystemOfFans,
    charts: &[usize],
    p: &IntMat,
    hull: &Cone,
) -> Option<(usize, IntVec)> {
    for &i in charts {
        for g in space.charts()[i].rays() {
            let img = p.apply_unchecked(g);
            if !img.is_zero() && hull.lineality().span_contains(&img) {
                return Some((i, g.clone()));
            }
        }
    }
    None
}

fn find_line_in_class(space: &AffineSystemOfFans, p: &IntMat) -> Result<Option<TraceEntry>, QuotientError> {
    let images = chart_images(space, p)?;
    for class in classes_of(&images)? {
        let members: Vec<&Cone> = class.iter().map(|&i| &images[i]).collect();
        let hull = Cone::hull(p.rows(), &members)?;
        if hull.is_strictly_convex() {
            continue;
        }
        let (chart, g) = ray_into_lineality(space, &class, p, &hull)
            .expect("the lineality of a hull is spanned by generator images");
        return Ok(Some(TraceEntry {
            rule: Rule::LineInClass,
            first: LabelledCone { chart, cone: Cone::ray(&g) },
            second: None,
            added: vec![g],
        }));
    }
    Ok(None)
}
