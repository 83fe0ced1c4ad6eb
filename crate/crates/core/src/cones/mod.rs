//! Rational polyhedral cones with both descriptions kept in canonical form.
//!
//! A [`Cone`] stores its extreme rays modulo the lineality space, a basis of
//! the lineality space, its facet normals modulo `σ^⊥`, and a basis of `σ^⊥`.
//! Rays are reduced to the Euclidean orthogonal complement of the lineality
//! space and facets to the linear span of the cone, then made primitive and
//! sorted lexicographically. With both sublattices in Hermite form, two cones
//! are equal as sets exactly when they are equal as values.

mod dd;

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::ConeError;
use crate::exactlin::{self, clear_denominators, project_away, IntMat, IntVec, Sublattice};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<IntVec>,
    lineality: Sublattice,
    facets: Vec<IntVec>,
    equations: Sublattice,
}

/// A face of a cone, named by the facet normals vanishing on it and the
/// extreme rays it contains (indices into the parent's lists). The face of
/// all rays is the cone itself.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceId {
    pub facets: Vec<usize>,
    pub rays: Vec<usize>,
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient_rank
            .cmp(&other.ambient_rank)
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| self.lineality.cmp(&other.lineality))
            .then_with(|| self.rays.cmp(&other.rays))
            .then_with(|| self.facets.cmp(&other.facets))
    }
}

impl Cone {
    /// The cone generated by `gens`. Zero vectors are ignored, so the empty
    /// list yields the zero cone.
    pub fn from_generators(ambient_rank: usize, gens: &[IntVec]) -> Result<Cone, ConeError> {
        check_lengths(ambient_rank, gens)?;
        let gens: Vec<IntVec> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        let (dual_lin, dual_rays) = dd::generators_of(ambient_rank, &gens);
        let equations = exactlin::saturate(&Sublattice::span(ambient_rank, &dual_lin)?);
        let facets = canonical_list(&dual_rays, equations.basis());

        // lineality = common kernel of all facets and equations
        let mut rows: Vec<IntVec> = facets.clone();
        rows.extend(equations.basis().iter().cloned());
        let lineality = exactlin::kernel_basis(&IntMat::from_rows(ambient_rank, &rows)?);

        let face_rank_target = lineality.rank() + 1;
        let mut raw_rays = Vec::new();
        for g in &gens {
            if lineality.span_contains(g) {
                continue;
            }
            let mut tight: Vec<IntVec> = facets
                .iter()
                .filter(|f| f.dot_unchecked(g).is_zero())
                .cloned()
                .collect();
            tight.extend(equations.basis().iter().cloned());
            let span_rank = ambient_rank - row_rank(ambient_rank, &tight);
            if span_rank == face_rank_target {
                raw_rays.push(g.clone());
            }
        }
        let rays = canonical_list(&raw_rays, lineality.basis());
        Ok(Cone {
            ambient_rank,
            rays,
            lineality,
            facets,
            equations,
        })
    }

    /// `{x : <a, x> >= 0 for a in inequalities, <e, x> = 0 for e in equations}`.
    pub fn from_inequalities(
        ambient_rank: usize,
        inequalities: &[IntVec],
        equations: &[IntVec],
    ) -> Result<Cone, ConeError> {
        check_lengths(ambient_rank, inequalities)?;
        check_lengths(ambient_rank, equations)?;
        let mut cons: Vec<IntVec> = inequalities.to_vec();
        for e in equations {
            cons.push(e.clone());
            cons.push(e.neg());
        }
        let (lin, rays) = dd::generators_of(ambient_rank, &cons);
        let mut gens = rays;
        for l in lin {
            gens.push(l.neg());
            gens.push(l);
        }
        Cone::from_generators(ambient_rank, &gens)
    }

    pub fn zero(ambient_rank: usize) -> Cone {
        Cone::from_generators(ambient_rank, &[]).expect("no generators")
    }

    pub fn whole_space(ambient_rank: usize) -> Cone {
        let mut gens = Vec::new();
        for k in 0..ambient_rank {
            let e = IntVec::unit(ambient_rank, k);
            gens.push(e.neg());
            gens.push(e);
        }
        Cone::from_generators(ambient_rank, &gens).expect("lengths match")
    }

    pub fn ray(v: &IntVec) -> Cone {
        Cone::from_generators(v.len(), core::slice::from_ref(v)).expect("lengths match")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn dim(&self) -> usize {
        self.ambient_rank - self.equations.rank()
    }

    /// Extreme rays modulo the lineality space.
    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &Sublattice {
        &self.lineality
    }

    pub fn facets(&self) -> &[IntVec] {
        &self.facets
    }

    /// Basis of `σ^⊥ ∩ M`.
    pub fn equations(&self) -> &Sublattice {
        &self.equations
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.lineality.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_linear_subspace(&self) -> bool {
        self.rays.is_empty()
    }

    /// A generating set: rays together with both signs of the lineality basis.
    pub fn generators(&self) -> Vec<IntVec> {
        let mut gens = self.rays.clone();
        for l in self.lineality.basis() {
            gens.push(l.clone());
            gens.push(l.neg());
        }
        gens
    }

    pub fn contains(&self, v: &IntVec) -> bool {
        v.len() == self.ambient_rank
            && self.equations.basis().iter().all(|e| e.dot_unchecked(v).is_zero())
            && self.facets.iter().all(|f| !f.dot_unchecked(v).is_negative())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.ambient_rank == self.ambient_rank
            && other.generators().iter().all(|g| self.contains(g))
    }

    /// Membership in the relative interior `σ°`.
    pub fn relint_contains(&self, v: &IntVec) -> bool {
        v.len() == self.ambient_rank
            && self.equations.basis().iter().all(|e| e.dot_unchecked(v).is_zero())
            && self.facets.iter().all(|f| f.dot_unchecked(v).is_positive())
    }

    pub fn relint_contains_rational(&self, v: &[BigRational]) -> bool {
        self.relint_contains(&clear_denominators(v))
    }

    /// The sum of the extreme rays, which lies in `σ°`.
    pub fn relint_sample(&self) -> IntVec {
        self.rays
            .iter()
            .fold(IntVec::zero(self.ambient_rank), |acc, r| acc.add(r))
    }

    /// The dual cone `σ^∨` in the dual lattice.
    pub fn dual(&self) -> Cone {
        Cone {
            ambient_rank: self.ambient_rank,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    /// `-σ`.
    pub fn neg(&self) -> Cone {
        let mut rays: Vec<IntVec> = self.rays.iter().map(IntVec::neg).collect();
        rays.sort();
        let mut facets: Vec<IntVec> = self.facets.iter().map(IntVec::neg).collect();
        facets.sort();
        Cone {
            ambient_rank: self.ambient_rank,
            rays,
            lineality: self.lineality.clone(),
            facets,
            equations: self.equations.clone(),
        }
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone, ConeError> {
        if other.ambient_rank != self.ambient_rank {
            return Err(ConeError::AmbientMismatch {
                expected: self.ambient_rank,
                found: other.ambient_rank,
            });
        }
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.basis().to_vec();
        eqs.extend(other.equations.basis().iter().cloned());
        Cone::from_inequalities(self.ambient_rank, &ineqs, &eqs)
    }

    /// The image `P_R(σ)` under an integer matrix.
    pub fn image(&self, p: &IntMat) -> Result<Cone, ConeError> {
        if p.cols() != self.ambient_rank {
            return Err(ConeError::AmbientMismatch {
                expected: p.cols(),
                found: self.ambient_rank,
            });
        }
        let gens: Vec<IntVec> = self.generators().iter().map(|g| p.apply_unchecked(g)).collect();
        Cone::from_generators(p.rows(), &gens)
    }

    /// The preimage `P_R^{-1}(σ)` under an integer matrix.
    pub fn preimage(&self, p: &IntMat) -> Result<Cone, ConeError> {
        if p.rows() != self.ambient_rank {
            return Err(ConeError::AmbientMismatch {
                expected: p.rows(),
                found: self.ambient_rank,
            });
        }
        let pt = p.transpose();
        let ineqs: Vec<IntVec> = self.facets.iter().map(|u| pt.apply_unchecked(u)).collect();
        let eqs: Vec<IntVec> = self
            .equations
            .basis()
            .iter()
            .map(|u| pt.apply_unchecked(u))
            .collect();
        Cone::from_inequalities(p.cols(), &ineqs, &eqs)
    }

    /// The smallest cone containing all of `cones`.
    pub fn hull(ambient_rank: usize, cones: &[&Cone]) -> Result<Cone, ConeError> {
        let mut gens = Vec::new();
        for c in cones {
            if c.ambient_rank != ambient_rank {
                return Err(ConeError::AmbientMismatch {
                    expected: ambient_rank,
                    found: c.ambient_rank,
                });
            }
            gens.extend(c.generators());
        }
        Cone::from_generators(ambient_rank, &gens)
    }

    /// The face on which exactly the given facet normals vanish.
    fn face_cut_by(&self, facets: Vec<usize>) -> FaceId {
        let rays = (0..self.rays.len())
            .filter(|&r| facets.iter().all(|&f| self.facets[f].dot_unchecked(&self.rays[r]).is_zero()))
            .collect();
        FaceId { facets, rays }
    }

    /// The face whose relative interior contains `v`; `v` must lie in `σ`.
    pub fn minimal_face_of_point(&self, v: &IntVec) -> Result<FaceId, ConeError> {
        if !self.contains(v) {
            return Err(ConeError::NotContained);
        }
        let tight = (0..self.facets.len())
            .filter(|&f| self.facets[f].dot_unchecked(v).is_zero())
            .collect();
        Ok(self.face_cut_by(tight))
    }

    /// The smallest face of `σ` containing `s`, i.e. the face whose relative
    /// interior meets `s°`.
    pub fn minimal_face_containing(&self, s: &Cone) -> Result<FaceId, ConeError> {
        if !self.contains_cone(s) {
            return Err(ConeError::NotContained);
        }
        self.minimal_face_of_point(&s.relint_sample())
    }

    /// The cone named by a face id.
    pub fn face(&self, face: &FaceId) -> Cone {
        let mut gens: Vec<IntVec> = face.rays.iter().map(|&r| self.rays[r].clone()).collect();
        for l in self.lineality.basis() {
            gens.push(l.clone());
            gens.push(l.neg());
        }
        Cone::from_generators(self.ambient_rank, &gens).expect("lengths match")
    }

    pub fn whole_face(&self) -> FaceId {
        self.face_cut_by(Vec::new()).with_vanishing(self)
    }

    /// All faces of a strictly convex cone, ordered by dimension and then by
    /// ray indices. The zero face comes first and the cone itself last.
    pub fn faces(&self) -> Result<Vec<FaceId>, ConeError> {
        if !self.is_strictly_convex() {
            return Err(ConeError::NotStrictlyConvex {
                lineality_rank: self.lineality.rank(),
            });
        }
        let all: Vec<usize> = (0..self.rays.len()).collect();
        let mut seen: Vec<Vec<usize>> = alloc::vec![all];
        let mut k = 0;
        while k < seen.len() {
            let current = seen[k].clone();
            for f in &self.facets {
                let cut: Vec<usize> = current
                    .iter()
                    .copied()
                    .filter(|&r| f.dot_unchecked(&self.rays[r]).is_zero())
                    .collect();
                if cut.len() < current.len() && !seen.contains(&cut) {
                    seen.push(cut);
                }
            }
            k += 1;
        }
        let mut faces: Vec<(usize, FaceId)> = seen
            .into_iter()
            .map(|rays| {
                let vecs: Vec<IntVec> = rays.iter().map(|&r| self.rays[r].clone()).collect();
                let dim = row_rank(self.ambient_rank, &vecs);
                let facets = (0..self.facets.len())
                    .filter(|&f| rays.iter().all(|&r| self.facets[f].dot_unchecked(&self.rays[r]).is_zero()))
                    .collect();
                (dim, FaceId { facets, rays })
            })
            .collect();
        faces.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.rays.cmp(&b.1.rays)));
        Ok(faces.into_iter().map(|(_, f)| f).collect())
    }

    /// All faces as cones, in the order of [`Cone::faces`].
    pub fn face_cones(&self) -> Result<Vec<Cone>, ConeError> {
        Ok(self.faces()?.iter().map(|f| self.face(f)).collect())
    }

    /// `self ≺ other`.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        match other.minimal_face_containing(self) {
            Ok(f) => other.face(&f) == *self,
            Err(_) => false,
        }
    }

    /// Evaluates whether `v` lies in `σ`, using rational coordinates.
    pub fn contains_rational(&self, v: &[BigRational]) -> bool {
        self.contains(&clear_denominators(v))
    }
}

impl FaceId {
    /// Recomputes the vanishing facet set from the ray set.
    fn with_vanishing(mut self, cone: &Cone) -> FaceId {
        self.facets = (0..cone.facets.len())
            .filter(|&f| self.rays.iter().all(|&r| cone.facets[f].dot_unchecked(&cone.rays[r]).is_zero()))
            .collect();
        self
    }
}

/// `σ° ∩ σ'° ≠ ∅`.
pub fn relints_intersect(a: &Cone, b: &Cone) -> Result<bool, ConeError> {
    let meet = a.intersect(b)?;
    let p = meet.relint_sample();
    Ok(a.relint_contains(&p) && b.relint_contains(&p))
}

fn check_lengths(ambient_rank: usize, vs: &[IntVec]) -> Result<(), ConeError> {
    match vs.iter().find(|g| g.len() != ambient_rank) {
        Some(g) => Err(ConeError::AmbientMismatch {
            expected: ambient_rank,
            found: g.len(),
        }),
        None => Ok(()),
    }
}

/// Reduce modulo the span of `away`, make primitive, drop zeros and sort.
fn canonical_list(vs: &[IntVec], away: &[IntVec]) -> Vec<IntVec> {
    let mut out: Vec<IntVec> = vs.iter().filter_map(|v| project_away(v, away)).collect();
    out.sort();
    out.dedup();
    out
}

pub(crate) fn row_rank(cols: usize, rows: &[IntVec]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    exactlin::hnf(&IntMat::from_rows(cols, rows).expect("lengths match")).rank
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("cone(")?;
        for (k, r) in self.rays.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")?;
        if !self.lineality.is_zero() {
            write!(f, "+lin{}", self.lineality)?;
        }
        Ok(())
    }
}

/// Sign of `<u, v>` as -1, 0 or 1.
pub fn pairing_sign(u: &IntVec, v: &IntVec) -> i8 {
    let s: BigInt = u.dot_unchecked(v);
    if s.is_positive() {
        1
    } else if s.is_zero() {
        0
    } else {
        -1
    }
}
