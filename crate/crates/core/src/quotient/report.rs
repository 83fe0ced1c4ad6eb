//! Orbit images of fan maps and diagnosis of quotient obstructions.
//!
//! A source cone `σ` of chart `i` maps the orbit of `σ` onto the orbit of
//! the smallest target cone containing `P(σ)`. The target orbit of `ρ` is
//! therefore hit exactly when some source cone has this smallest cone equal
//! to `ρ`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{compute_hhat, tv_quotient, SeparationResult, SubtorusAction};
use crate::cones::Cone;
use crate::covering::is_weakly_proper;
use crate::error::QuotientError;
use crate::exactlin::IntVec;
use crate::fans::{validate_fan_map, FanMap, LabelledCone};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetFace {
    pub face: Cone,
    pub in_image: bool,
    /// Source cones whose orbits map onto the orbit of `face`.
    pub preimages: Vec<LabelledCone>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitImageReport {
    /// One entry per cone of the target fan, in canonical order.
    pub faces: Vec<TargetFace>,
    pub surjective: bool,
    /// Whether the set of hit cones is closed under passing to faces.
    pub image_open: bool,
    pub missing_faces: Vec<Cone>,
}

pub fn orbit_image(map: &FanMap) -> OrbitImageReport {
    let target = map.target();
    let mut faces: Vec<TargetFace> = target
        .cones()
        .iter()
        .map(|c| TargetFace {
            face: c.clone(),
            in_image: false,
            preimages: Vec::new(),
        })
        .collect();
    let source = map.source();
    for chart in 0..source.chart_count() {
        for sigma in source.chart_faces(chart) {
            let rho = map.target_of(chart, sigma);
            let k = target.index_of(&rho).expect("faces of target cones lie in the fan");
            faces[k].in_image = true;
            faces[k].preimages.push(LabelledCone {
                chart,
                cone: sigma.clone(),
            });
        }
    }
    let missing_faces: Vec<Cone> = faces
        .iter()
        .filter(|f| !f.in_image)
        .map(|f| f.face.clone())
        .collect();
    let image_open = faces.iter().filter(|f| f.in_image).all(|f| {
        f.face
            .face_cones()
            .expect("fan cones are strictly convex")
            .iter()
            .all(|g| !missing_faces.contains(g))
    });
    OrbitImageReport {
        surjective: missing_faces.is_empty(),
        image_open,
        missing_faces,
        faces,
    }
}

/// A quotient orbit reached from charts `i` and `j` but from no cone along
/// which the two charts are glued.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueingWitness {
    pub face: Cone,
    pub i: usize,
    pub j: usize,
    pub from_i: Vec<Cone>,
    pub from_j: Vec<Cone>,
}

pub fn glueing_deficiency(
    action: &SubtorusAction,
    separation: &SeparationResult,
) -> Result<Vec<GlueingWitness>, QuotientError> {
    let space = action.space();
    let map = validate_fan_map(&separation.projection, space, &separation.quotient_fan)?;
    let report = orbit_image(&map);
    let mut out = Vec::new();
    for target in &report.faces {
        for i in 0..space.chart_count() {
            for j in i + 1..space.chart_count() {
                let from = |chart: usize| -> Vec<Cone> {
                    target
                        .preimages
                        .iter()
                        .filter(|l| l.chart == chart)
                        .map(|l| l.cone.clone())
                        .collect()
                };
                let (from_i, from_j) = (from(i), from(j));
                if from_i.is_empty() || from_j.is_empty() {
                    continue;
                }
                let glued = space
                    .glueing(i, j)
                    .iter()
                    .any(|c| map.target_of(i, c) == target.face);
                if !glued {
                    out.push(GlueingWitness {
                        face: target.face.clone(),
                        i,
                        j,
                        from_i,
                        from_j,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AvQuotient {
    /// The quotient has dimension at most two, so the toric variety quotient
    /// is also the quotient among all varieties.
    ExistsEqualsTv,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    /// The projected support is smaller than the support of the quotient fan.
    NotWeaklyProper,
    /// The image of the quotient map is not open.
    ImageNotOpen,
    /// The quotient map identifies orbits of two charts that are not glued.
    GlueingDeficiency,
}

/// The combination of flags, named after the known situations it matches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FlagPattern {
    NoObstruction,
    /// Only glueing deficiencies: the variety quotient exists, but orbits it
    /// identifies stay apart in every prevariety quotient candidate.
    GlueingOnly,
    /// Not surjective with non-open image, and charts whose common orbits
    /// only become identified downstairs. Typical when a non-separated
    /// prevariety quotient exists but no variety quotient does.
    NonSurjectiveWithGlueing,
    /// Not surjective with non-open image, glueing intact. Typical when
    /// neither kind of quotient exists.
    NonSurjective,
    Other,
}

impl FlagPattern {
    fn of(flags: &BTreeSet<Flag>) -> FlagPattern {
        let has = |f| flags.contains(&f);
        let gap = has(Flag::NotWeaklyProper) && has(Flag::ImageNotOpen);
        match (flags.len(), gap, has(Flag::GlueingDeficiency)) {
            (0, _, _) => FlagPattern::NoObstruction,
            (1, _, true) => FlagPattern::GlueingOnly,
            (3, true, true) => FlagPattern::NonSurjectiveWithGlueing,
            (2, true, false) => FlagPattern::NonSurjective,
            _ => FlagPattern::Other,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagnosisReport {
    pub codim: usize,
    pub av_quotient: AvQuotient,
    pub flags: BTreeSet<Flag>,
    pub pattern: FlagPattern,
    /// A point of the quotient support outside the projected support.
    pub gap_point: Option<IntVec>,
    pub missing_faces: Vec<Cone>,
    pub glueing: Vec<GlueingWitness>,
    pub tv_quotient: SeparationResult,
}

/// Collects the combinatorial facts about the toric variety quotient of an
/// action on a fan. It never claims that a quotient does not exist.
pub fn diagnose(action: &SubtorusAction) -> Result<DiagnosisReport, QuotientError> {
    let codim = compute_hhat(action)?.codim;
    let tv = tv_quotient(action)?;
    let map = validate_fan_map(&tv.projection, action.space(), &tv.quotient_fan)?;
    let proper = is_weakly_proper(&map);
    let image = orbit_image(&map);
    let glueing = glueing_deficiency(action, &tv)?;

    let mut flags = BTreeSet::new();
    if !proper.covered {
        flags.insert(Flag::NotWeaklyProper);
    }
    if !image.image_open {
        flags.insert(Flag::ImageNotOpen);
    }
    if !glueing.is_empty() {
        flags.insert(Flag::GlueingDeficiency);
    }
    Ok(DiagnosisReport {
        codim,
        av_quotient: if codim <= 2 {
            AvQuotient::ExistsEqualsTv
        } else {
            AvQuotient::Unknown
        },
        pattern: FlagPattern::of(&flags),
        flags,
        gap_point: proper.gap_point,
        missing_faces: image.missing_faces,
        glueing,
        tv_quotient: tv,
    })
}
