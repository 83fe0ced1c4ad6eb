//! Fans, affine systems of fans and maps between them.
//!
//! Fans are given by their maximal cones; all faces are derived on
//! construction. An affine system of fans has one cone per chart and, for
//! every pair of charts, a glueing fan of common faces. Pairs without
//! explicit glueing data are glued along the zero cone only.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::cones::Cone;
use crate::error::FanError;
use crate::exactlin::{IntMat, IntVec};

#[derive(Clone, Debug)]
pub struct Fan {
    ambient_rank: usize,
    maximal: Vec<Cone>,
    cones: Vec<Cone>,
}

/// Two fans are equal when they have the same cones; the order in which the
/// maximal cones were given does not matter.
impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.cones == other.cones
    }
}

impl Eq for Fan {}

/// Validates the fan condition and strict convexity. Cones that are faces of
/// other listed cones are dropped; the remaining cones keep their input order.
pub fn validate_fan(ambient_rank: usize, cones: &[Cone]) -> Result<Fan, FanError> {
    if cones.is_empty() {
        return Err(FanError::Empty);
    }
    for (index, c) in cones.iter().enumerate() {
        if c.ambient_rank() != ambient_rank {
            return Err(FanError::AmbientMismatch {
                expected: ambient_rank,
                found: c.ambient_rank(),
            });
        }
        if !c.is_strictly_convex() {
            return Err(FanError::NotStrictlyConvex {
                index,
                cone: c.clone(),
            });
        }
    }
    for a in 0..cones.len() {
        for b in a + 1..cones.len() {
            let meet = cones[a].intersect(&cones[b]).expect("ranks checked");
            if !meet.is_face_of(&cones[a]) || !meet.is_face_of(&cones[b]) {
                return Err(FanError::FanConditionViolation {
                    first: a,
                    second: b,
                    intersection: meet,
                });
            }
        }
    }

    let mut maximal: Vec<Cone> = Vec::new();
    for (a, c) in cones.iter().enumerate() {
        let dominated = cones.iter().enumerate().any(|(b, d)| {
            b != a && d.contains_cone(c) && (d != c || b < a)
        });
        if !dominated {
            maximal.push(c.clone());
        }
    }
    let mut all = Vec::new();
    for m in &maximal {
        all.extend(m.face_cones().expect("strictly convex"));
    }
    all.sort();
    all.dedup();
    Ok(Fan {
        ambient_rank,
        maximal,
        cones: all,
    })
}

impl Fan {
    /// The fan of faces of one strictly convex cone.
    pub fn of_cone(cone: &Cone) -> Result<Fan, FanError> {
        validate_fan(cone.ambient_rank(), core::slice::from_ref(cone))
    }

    /// The fan consisting of the zero cone.
    pub fn point(ambient_rank: usize) -> Fan {
        Fan::of_cone(&Cone::zero(ambient_rank)).expect("zero cone is strictly convex")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal
    }

    /// Every cone of the fan, in canonical order.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn has_cone(&self, cone: &Cone) -> bool {
        self.cones.binary_search(cone).is_ok()
    }

    pub fn index_of(&self, cone: &Cone) -> Option<usize> {
        self.cones.binary_search(cone).ok()
    }

    /// Membership in the support `|Δ|`.
    pub fn support_contains(&self, v: &IntVec) -> bool {
        self.maximal.iter().any(|c| c.contains(v))
    }

    /// The smallest cone of the fan containing `s`, if any.
    pub fn minimal_cone_containing(&self, s: &Cone) -> Option<Cone> {
        let host = self.maximal.iter().find(|c| c.contains_cone(s))?;
        let face = host.minimal_face_containing(s).expect("containment checked");
        Some(host.face(&face))
    }

    /// The fan viewed as an affine system with one chart per maximal cone.
    pub fn as_system(&self) -> AffineSystemOfFans {
        fan_as_system(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSystemOfFans {
    ambient_rank: usize,
    charts: Vec<Cone>,
    chart_faces: Vec<Vec<Cone>>,
    glue: BTreeMap<(usize, usize), Vec<Cone>>,
}

/// A cone `σ(i)` of the chart `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LabelledCone {
    pub chart: usize,
    pub cone: Cone,
}

/// Explicit glueing data for the pair of charts `(i, j)`, given by cones
/// generating the glueing fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub i: usize,
    pub j: usize,
    pub cones: Vec<Cone>,
}

pub fn validate_system(
    ambient_rank: usize,
    charts: &[Cone],
    intersections: &[Intersection],
) -> Result<AffineSystemOfFans, FanError> {
    if charts.is_empty() {
        return Err(FanError::Empty);
    }
    let mut chart_faces = Vec::with_capacity(charts.len());
    for (index, c) in charts.iter().enumerate() {
        if c.ambient_rank() != ambient_rank {
            return Err(FanError::AmbientMismatch {
                expected: ambient_rank,
                found: c.ambient_rank(),
            });
        }
        let faces = c.face_cones().map_err(|_| FanError::NotStrictlyConvex {
            index,
            cone: c.clone(),
        })?;
        let mut faces = faces;
        faces.sort();
        chart_faces.push(faces);
    }

    let mut given: BTreeMap<(usize, usize), Vec<Cone>> = BTreeMap::new();
    for entry in intersections {
        let (i, j) = (entry.i, entry.j);
        for index in [i, j] {
            if index >= charts.len() {
                return Err(FanError::UnknownChart {
                    index,
                    charts: charts.len(),
                });
            }
        }
        if i == j {
            return Err(FanError::SelfIntersection { index: i });
        }
        let mut closed = vec![Cone::zero(ambient_rank)];
        for c in &entry.cones {
            if c.ambient_rank() != ambient_rank {
                return Err(FanError::AmbientMismatch {
                    expected: ambient_rank,
                    found: c.ambient_rank(),
                });
            }
            if !chart_faces[i].contains(c) || !chart_faces[j].contains(c) {
                return Err(FanError::NotCommonFace { i, j, cone: c.clone() });
            }
            closed.extend(c.face_cones().expect("faces of a strictly convex chart"));
        }
        closed.sort();
        closed.dedup();
        let key = (i.min(j), i.max(j));
        if let Some(previous) = given.get(&key) {
            if *previous != closed {
                return Err(FanError::SymmetryViolation { i: key.0, j: key.1 });
            }
        }
        given.insert(key, closed);
    }
    for i in 0..charts.len() {
        for j in i + 1..charts.len() {
            given
                .entry((i, j))
                .or_insert_with(|| vec![Cone::zero(ambient_rank)]);
        }
    }

    let system = AffineSystemOfFans {
        ambient_rank,
        charts: charts.to_vec(),
        chart_faces,
        glue: given,
    };
    for i in 0..charts.len() {
        for j in 0..charts.len() {
            for k in 0..charts.len() {
                if i == j || j == k || i == k {
                    continue;
                }
                let ik = system.glueing(i, k);
                for c in system.glueing(i, j) {
                    if system.glueing(j, k).contains(c) && !ik.contains(c) {
                        return Err(FanError::TripleConditionViolation {
                            i,
                            j,
                            k,
                            cone: c.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(system)
}

/// The separated system of a fan: `Δ_ij` is the face fan of `σ(i) ∩ σ(j)`.
pub fn fan_as_system(fan: &Fan) -> AffineSystemOfFans {
    let charts = fan.maximal_cones();
    let mut intersections = Vec::new();
    for i in 0..charts.len() {
        for j in i + 1..charts.len() {
            let meet = charts[i].intersect(&charts[j]).expect("same ambient rank");
            intersections.push(Intersection {
                i,
                j,
                cones: vec![meet],
            });
        }
    }
    validate_system(fan.ambient_rank(), charts, &intersections)
        .expect("a valid fan gives a valid system")
}

impl AffineSystemOfFans {
    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn charts(&self) -> &[Cone] {
        &self.charts
    }

    pub fn chart_count(&self) -> usize {
        self.charts.len()
    }

    /// Faces of `σ(i)`, in canonical order.
    pub fn chart_faces(&self, i: usize) -> &[Cone] {
        &self.chart_faces[i]
    }

    /// `Δ_ij`, closed under faces. For `i = j` this is the face fan of `σ(i)`.
    pub fn glueing(&self, i: usize, j: usize) -> &[Cone] {
        if i == j {
            return &self.chart_faces[i];
        }
        &self.glue[&(i.min(j), i.max(j))]
    }

    /// Maximal cones of `Δ_ij` for `i < j`, as accepted by [`validate_system`].
    pub fn intersections(&self) -> Vec<Intersection> {
        let mut out = Vec::new();
        for (&(i, j), cones) in &self.glue {
            let maximal: Vec<Cone> = cones
                .iter()
                .filter(|c| !cones.iter().any(|d| d != *c && d.contains_cone(c)))
                .cloned()
                .collect();
            let maximal = if maximal.iter().all(Cone::is_zero) {
                Vec::new()
            } else {
                maximal
            };
            out.push(Intersection { i, j, cones: maximal });
        }
        out
    }

    /// All labelled cones `(σ, i)` with `σ ≺ σ(i)`.
    pub fn labelled_cones(&self) -> Vec<LabelledCone> {
        let mut out = Vec::new();
        for (chart, faces) in self.chart_faces.iter().enumerate() {
            for cone in faces {
                out.push(LabelledCone {
                    chart,
                    cone: cone.clone(),
                });
            }
        }
        out
    }

    /// Membership in the support `|S|`.
    pub fn support_contains(&self, v: &IntVec) -> bool {
        self.charts.iter().any(|c| c.contains(v))
    }

    /// Whether the glueing data is that of a fan: the charts form a fan and
    /// every `Δ_ij` is the face fan of `σ(i) ∩ σ(j)`.
    pub fn is_separated(&self) -> bool {
        match validate_fan(self.ambient_rank, &self.charts) {
            Ok(fan) => fan.maximal_cones().len() == self.charts.len() && fan_as_system(&fan) == *self,
            Err(_) => false,
        }
    }

    /// The fan of a separated system.
    pub fn to_fan(&self) -> Option<Fan> {
        if !self.is_separated() {
            return None;
        }
        validate_fan(self.ambient_rank, &self.charts).ok()
    }

    /// Equality after renumbering charts.
    pub fn isomorphic_up_to_relabeling(&self, other: &AffineSystemOfFans) -> bool {
        if self.ambient_rank != other.ambient_rank || self.charts.len() != other.charts.len() {
            return false;
        }
        let n = self.charts.len();
        let mut used = vec![false; n];
        let mut perm = Vec::with_capacity(n);
        self.relabel_search(other, &mut used, &mut perm)
    }

    fn relabel_search(&self, other: &AffineSystemOfFans, used: &mut [bool], perm: &mut Vec<usize>) -> bool {
        let k = perm.len();
        if k == self.charts.len() {
            return true;
        }
        for cand in 0..other.charts.len() {
            if used[cand] || other.charts[cand] != self.charts[k] {
                continue;
            }
            let glue_ok = perm
                .iter()
                .enumerate()
                .all(|(a, &pa)| self.glueing(a, k) == other.glueing(pa, cand));
            if !glue_ok {
                continue;
            }
            used[cand] = true;
            perm.push(cand);
            if self.relabel_search(other, used, perm) {
                return true;
            }
            perm.pop();
            used[cand] = false;
        }
        false
    }
}

/// A lattice map that sends every chart of the source into a cone of the
/// target fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanMap {
    matrix: IntMat,
    source: AffineSystemOfFans,
    target: Fan,
    assignment: Vec<Cone>,
}

pub fn validate_fan_map(
    matrix: &IntMat,
    source: &AffineSystemOfFans,
    target: &Fan,
) -> Result<FanMap, FanError> {
    if matrix.cols() != source.ambient_rank() {
        return Err(FanError::AmbientMismatch {
            expected: matrix.cols(),
            found: source.ambient_rank(),
        });
    }
    if matrix.rows() != target.ambient_rank() {
        return Err(FanError::AmbientMismatch {
            expected: matrix.rows(),
            found: target.ambient_rank(),
        });
    }
    let mut assignment = Vec::with_capacity(source.chart_count());
    for (chart, sigma) in source.charts().iter().enumerate() {
        let image = sigma.image(matrix).expect("ranks checked");
        match target.minimal_cone_containing(&image) {
            Some(tau) => assignment.push(tau),
            None => {
                return Err(FanError::NoTargetCone {
                    chart,
                    cone: sigma.clone(),
                })
            }
        }
    }
    Ok(FanMap {
        matrix: matrix.clone(),
        source: source.clone(),
        target: target.clone(),
        assignment,
    })
}

impl FanMap {
    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    pub fn source(&self) -> &AffineSystemOfFans {
        &self.source
    }

    pub fn target(&self) -> &Fan {
        &self.target
    }

    /// The smallest target cone containing the image of chart `i`.
    pub fn assigned(&self, chart: usize) -> &Cone {
        &self.assignment[chart]
    }

    /// The smallest target cone containing the image of a face of a chart.
    pub fn target_of(&self, chart: usize, face: &Cone) -> Cone {
        let image = face.image(&self.matrix).expect("ranks checked");
        let host = &self.assignment[chart];
        let f = host
            .minimal_face_containing(&image)
            .expect("faces map into the assigned cone");
        host.face(&f)
    }

    pub fn image_of(&self, cone: &Cone) -> Cone {
        cone.image(&self.matrix).expect("ranks checked")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> IntVec {
        IntVec::from_i64s(x)
    }

    fn cone(n: usize, gens: &[&[i64]]) -> Cone {
        let g: Vec<IntVec> = gens.iter().map(|x| v(x)).collect();
        Cone::from_generators(n, &g).unwrap()
    }

    fn glued_cones() -> Fan {
        let s1 = cone(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let s2 = cone(4, &[&[1, 0, 0, 0], &[2, -1, 0, 0], &[0, 0, 1, 0]]);
        validate_fan(4, &[s1, s2]).unwrap()
    }

    fn glued_target() -> Fan {
        let t1 = cone(3, &[&[1, -1, 0], &[1, 0, 1], &[1, 0, -1]]);
        let t2 = cone(3, &[&[1, 1, 0], &[1, 0, 1], &[1, 0, -1]]);
        validate_fan(3, &[t1, t2]).unwrap()
    }

    #[test]
    fn valid_fans() {
        let f = glued_cones();
        assert_eq!(f.maximal_cones().len(), 2);
        let sys = fan_as_system(&f);
        assert_eq!(
            sys.intersections()[0].cones,
            vec![cone(4, &[&[1, 0, 0, 0], &[0, 0, 1, 0]])]
        );
        assert!(validate_fan(2, &[cone(2, &[&[1, 0], &[0, 1]])]).is_ok());
    }

    #[test]
    fn overlapping_cones_are_rejected() {
        let a = cone(2, &[&[1, 0], &[0, 1]]);
        let b = cone(2, &[&[1, 1], &[-1, 0]]);
        match validate_fan(2, &[a, b]) {
            Err(FanError::FanConditionViolation { intersection, .. }) => {
                assert_eq!(intersection, cone(2, &[&[0, 1], &[1, 1]]));
            }
            other => panic!("{other:?}"),
        }
        let t1 = cone(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let t2 = cone(3, &[&[0, 0, 1], &[1, 1, 0]]);
        match validate_fan(3, &[t1, t2]) {
            Err(FanError::FanConditionViolation { intersection, .. }) => {
                assert_eq!(intersection, Cone::ray(&v(&[1, 1, 0])));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lines_are_rejected() {
        let line = cone(1, &[&[1], &[-1]]);
        assert!(matches!(
            validate_fan(1, &[line]),
            Err(FanError::NotStrictlyConvex { index: 0, .. })
        ));
    }

    #[test]
    fn faces_of_listed_cones_are_dropped() {
        let c = cone(2, &[&[1, 0], &[0, 1]]);
        let f = validate_fan(2, &[Cone::ray(&v(&[1, 0])), c.clone(), c.clone()]).unwrap();
        assert_eq!(f.maximal_cones(), &[c]);
        assert_eq!(f.cones().len(), 4);
    }

    #[test]
    fn supports() {
        let f = glued_cones();
        assert!(f.support_contains(&v(&[0, 0, 0, 1])));
        assert!(!f.support_contains(&v(&[-1, 0, 0, 0])));
        assert!(f.support_contains(&v(&[0, 0, 0, 0])));

        let s5 = validate_fan(
            4,
            &[cone(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]), cone(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]])],
        )
        .unwrap();
        assert!(s5.support_contains(&v(&[1, 1, 0, 0])));
        assert!(!s5.support_contains(&v(&[1, 0, 1, 0])));
    }

    #[test]
    fn systems() {
        let t1 = cone(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let t2 = cone(3, &[&[0, 0, 1], &[1, 1, 0]]);
        let sys = validate_system(3, &[t1.clone(), t2.clone()], &[]).unwrap();
        assert_eq!(sys.glueing(0, 1), &[Cone::zero(3)]);
        assert!(!sys.is_separated());

        let r = cone(1, &[&[1]]);
        let doubled = validate_system(1, &[r.clone(), r.clone()], &[]).unwrap();
        assert_eq!(doubled.glueing(1, 0), &[Cone::zero(1)]);
        assert!(!doubled.is_separated());

        let bad = Intersection {
            i: 0,
            j: 1,
            cones: vec![Cone::ray(&v(&[1, 0, 0]))],
        };
        assert!(matches!(
            validate_system(3, &[t1.clone(), t2.clone()], &[bad]),
            Err(FanError::NotCommonFace { i: 0, j: 1, .. })
        ));
    }

    #[test]
    fn asymmetric_glueing_is_rejected() {
        let r = cone(1, &[&[1]]);
        let a = Intersection { i: 0, j: 1, cones: vec![r.clone()] };
        let b = Intersection { i: 1, j: 0, cones: vec![] };
        assert_eq!(
            validate_system(1, &[r.clone(), r], &[a, b]),
            Err(FanError::SymmetryViolation { i: 0, j: 1 })
        );
    }

    #[test]
    fn triple_condition() {
        let r = cone(1, &[&[1]]);
        let glue = |i, j| Intersection { i, j, cones: vec![r.clone()] };
        let charts = [r.clone(), r.clone(), r.clone()];
        assert!(matches!(
            validate_system(1, &charts, &[glue(0, 1), glue(1, 2)]),
            Err(FanError::TripleConditionViolation { .. })
        ));
        assert!(validate_system(1, &charts, &[glue(0, 1), glue(1, 2), glue(0, 2)]).is_ok());
    }

    #[test]
    fn fan_maps() {
        let f = IntMat::from_i64_rows(&[&[1, 1, 1, 1], &[0, -1, 0, 0], &[0, 0, 1, -1]]);
        let target = glued_target();
        let map = validate_fan_map(&f, &fan_as_system(&glued_cones()), &target).unwrap();
        assert_eq!(map.assigned(0), &target.maximal_cones()[0]);
        assert_eq!(map.assigned(1), &target.maximal_cones()[1]);

        let id = IntMat::identity(3);
        let map = validate_fan_map(&id, &fan_as_system(&target), &target).unwrap();
        assert_eq!(map.assigned(1), &target.maximal_cones()[1]);

        let wrong = IntMat::from_i64_rows(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(matches!(
            validate_fan_map(&wrong, &fan_as_system(&target), &target),
            Err(FanError::NoTargetCone { chart: 0, .. })
        ));
    }

    #[test]
    fn relabeling() {
        let a = cone(1, &[&[1]]);
        let b = cone(1, &[&[-1]]);
        let x = validate_system(1, &[a.clone(), b.clone()], &[]).unwrap();
        let y = validate_system(1, &[b, a], &[]).unwrap();
        assert_ne!(x, y);
        assert!(x.isomorphic_up_to_relabeling(&y));
    }
}
