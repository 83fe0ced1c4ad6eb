//! Exact decisions of the form `τ ⊆ σ₁ ∪ … ∪ σ_r` for polyhedral cones.
//!
//! The cone `τ` is cut by every hyperplane that bounds a piece inside the
//! linear span of `τ`: facet hyperplanes of the full-dimensional pieces and
//! one defining hyperplane of each lower-dimensional piece. The resulting
//! cells are full-dimensional in `span τ`, and the relative interior of each
//! cell lies either inside a full-dimensional piece or outside every piece.
//! Lower-dimensional pieces never meet a cell interior.
//!
//! Since the pieces are closed and the full-dimensional cells cover `τ`, it
//! suffices that every cell sample lies in some piece. When `τ` is not
//! covered, the gap point is taken from the relative interior of the
//! smallest uncovered face of `τ`.

use alloc::vec::Vec;

use num_traits::Signed;

use crate::cones::{Cone, FaceId};
use crate::error::CoverError;
use crate::exactlin::{project_away, quotient_projection, saturate, IntVec, Sublattice};
use crate::fans::FanMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverWitness {
    pub covered: bool,
    /// A lattice point of `τ` outside every piece, present iff not covered.
    pub gap_point: Option<IntVec>,
    /// Number of arrangement cells examined.
    pub cell_count: usize,
}

pub fn cone_covered_by(tau: &Cone, cover: &[Cone]) -> Result<CoverWitness, CoverError> {
    for c in cover {
        if c.ambient_rank() != tau.ambient_rank() {
            return Err(CoverError::DimensionMismatch {
                expected: tau.ambient_rank(),
                found: c.ambient_rank(),
            });
        }
    }
    let whole = decide(tau, cover);
    if whole.covered || !tau.is_strictly_convex() {
        return Ok(whole);
    }
    let mut cells = whole.cell_count;
    for face in tau.face_cones().expect("strictly convex") {
        if face == *tau {
            break;
        }
        let w = decide(&face, cover);
        cells += w.cell_count;
        if !w.covered {
            return Ok(CoverWitness {
                cell_count: cells,
                ..w
            });
        }
    }
    Ok(CoverWitness {
        cell_count: cells,
        ..whole
    })
}

fn decide(tau: &Cone, cover: &[Cone]) -> CoverWitness {
    let pieces: Vec<Cone> = cover
        .iter()
        .map(|c| c.intersect(tau).expect("ranks checked"))
        .collect();
    let dim = tau.dim();
    let full: Vec<&Cone> = pieces.iter().filter(|p| p.dim() == dim).collect();

    let eqs = tau.equations().basis();
    let mut planes: Vec<IntVec> = Vec::new();
    let mut push = |h: &IntVec| {
        if let Some(h) = project_away(h, eqs) {
            let h = h.sign_normalized();
            if !planes.contains(&h) {
                planes.push(h);
            }
        }
    };
    for p in &pieces {
        if p.dim() == dim {
            p.facets().iter().for_each(&mut push);
        } else if let Some(e) = p
            .equations()
            .basis()
            .iter()
            .find(|e| project_away(e, eqs).is_some())
        {
            push(e);
        }
    }
    planes.sort();

    let mut cells = alloc::vec![tau.clone()];
    for h in &planes {
        let mut next = Vec::with_capacity(cells.len());
        for c in cells {
            let (mut pos, mut neg) = (false, false);
            for g in c.generators() {
                let s = h.dot_unchecked(&g);
                pos |= s.is_positive();
                neg |= s.is_negative();
            }
            if pos && neg {
                let n = c.ambient_rank();
                let up = Cone::from_inequalities(n, core::slice::from_ref(h), &[]).expect("rank");
                let down = Cone::from_inequalities(n, &[h.neg()], &[]).expect("rank");
                next.push(c.intersect(&up).expect("rank"));
                next.push(c.intersect(&down).expect("rank"));
            } else {
                next.push(c);
            }
        }
        cells = next;
    }

    let cell_count = cells.len();
    for c in &cells {
        let sample = c.relint_sample();
        if !full.iter().any(|p| p.contains(&sample)) {
            return CoverWitness {
                covered: false,
                gap_point: Some(sample),
                cell_count,
            };
        }
    }
    CoverWitness {
        covered: true,
        gap_point: None,
        cell_count,
    }
}

/// Checks that the projection of `σ` modulo the span of its face `τ` is the
/// union of the projections of those pieces whose intersection with `τ`
/// meets `τ°`. The pieces must cover `σ`. This always holds; the function
/// exists to exercise the covering machinery on random input.
pub fn lemma_conecover_check(sigma: &Cone, face: &FaceId, pieces: &[Cone]) -> Result<bool, CoverError> {
    if face.rays.iter().any(|&r| r >= sigma.rays().len())
        || face.facets.iter().any(|&f| f >= sigma.facets().len())
    {
        return Err(CoverError::InvalidFace);
    }
    for (index, p) in pieces.iter().enumerate() {
        if p.ambient_rank() != sigma.ambient_rank() {
            return Err(CoverError::DimensionMismatch {
                expected: sigma.ambient_rank(),
                found: p.ambient_rank(),
            });
        }
        if !sigma.contains_cone(p) {
            return Err(CoverError::PieceOutside { index });
        }
    }
    if !cone_covered_by(sigma, pieces)?.covered {
        return Err(CoverError::NotACover);
    }
    let tau = sigma.face(face);
    let n = sigma.ambient_rank();
    let span = saturate(&Sublattice::span(n, &tau.generators())?);
    let proj = quotient_projection(n, &span)?;

    let relevant: Vec<Cone> = pieces
        .iter()
        .filter(|p| {
            let meet = p.intersect(&tau).expect("rank");
            tau.relint_contains(&meet.relint_sample())
        })
        .map(|p| p.image(&proj).expect("rank"))
        .collect();
    let target = sigma.image(&proj).expect("rank");
    Ok(cone_covered_by(&target, &relevant)?.covered)
}

/// Decides `P(|S|) = |Δ|` for a map of fans. The inclusion `⊆` holds for
/// every valid map, so only coverage of each maximal target cone is checked.
pub fn is_weakly_proper(map: &FanMap) -> CoverWitness {
    let images: Vec<Cone> = map
        .source()
        .charts()
        .iter()
        .map(|s| map.image_of(s))
        .collect();
    let mut cells = 0;
    for tau in map.target().maximal_cones() {
        let w = cone_covered_by(tau, &images).expect("ranks checked by the map");
        cells += w.cell_count;
        if !w.covered {
            return CoverWitness {
                cell_count: cells,
                ..w
            };
        }
    }
    CoverWitness {
        covered: true,
        gap_point: None,
        cell_count: cells,
    }
}

/// Whether `v` lies in one of `cones`.
pub fn union_contains(cones: &[Cone], v: &IntVec) -> bool {
    cones.iter().any(|c| c.contains(v))
}
