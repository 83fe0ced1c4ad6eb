//! Quotient fans: invariant separations, toric variety quotients and the
//! naive toric prevariety quotient.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::{chart_images, classes_of, compute_hhat, ray_into_lineality, Rule, SubtorusAction, TraceEntry};
use crate::cones::{relints_intersect, Cone};
use crate::covering::cone_covered_by;
use crate::error::{FanError, QuotientError};
use crate::exactlin::{quotient_projection, IntMat, Sublattice};
use crate::fans::{validate_fan, validate_system, AffineSystemOfFans, Fan, Intersection, LabelledCone};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationResult {
    /// The lattice whose quotient carries the fan.
    pub lattice: Sublattice,
    /// `P: N -> N/lattice`, with kernel exactly `lattice`.
    pub projection: IntMat,
    pub quotient_fan: Fan,
    /// Class index of every chart.
    pub class_of: Vec<usize>,
    /// The cone of every class.
    pub cone_of_class: Vec<Cone>,
    pub codim: usize,
    pub certified: bool,
    pub trace: Vec<TraceEntry>,
}

/// The invariant separation given by the classes of projected charts.
///
/// In quotient dimension three or more the construction is not backed by a
/// theorem; any failed check is then reported as unsupported, and a result
/// that passes every check is marked uncertified.
pub fn compute_separation(action: &SubtorusAction) -> Result<SeparationResult, QuotientError> {
    let h = compute_hhat(action)?;
    let n = action.ambient_rank();
    let p = quotient_projection(n, &h.lattice)?;
    match separate(action, &p) {
        Ok((quotient_fan, class_of, cone_of_class)) => Ok(SeparationResult {
            lattice: h.lattice,
            projection: p,
            quotient_fan,
            class_of,
            cone_of_class,
            codim: h.codim,
            certified: h.certified,
            trace: h.trace,
        }),
        Err(e) if h.codim >= 3 => Err(QuotientError::UnsupportedCodimension {
            codim: h.codim,
            reason: e.to_string(),
        }),
        Err(e) => Err(e),
    }
}

type Parts = (Fan, Vec<usize>, Vec<Cone>);

fn separate(action: &SubtorusAction, p: &IntMat) -> Result<Parts, QuotientError> {
    let k = p.rows();
    let space = action.space();
    let images = chart_images(space, p)?;
    let classes = classes_of(&images)?;
    let mut class_of = vec![0; images.len()];
    let mut cone_of_class = Vec::with_capacity(classes.len());
    for (id, class) in classes.iter().enumerate() {
        let members: Vec<Cone> = class.iter().map(|&i| images[i].clone()).collect();
        let refs: Vec<&Cone> = members.iter().collect();
        let hull = Cone::hull(k, &refs)?;
        if !hull.is_strictly_convex() {
            return Err(QuotientError::ClassUnionNotStrictlyConvex { class: id });
        }
        if !cone_covered_by(&hull, &members)?.covered {
            return Err(QuotientError::ClassUnionNotConvex { class: id });
        }
        for &i in class {
            class_of[i] = id;
        }
        cone_of_class.push(hull);
    }
    let fan = validate_fan(k, &cone_of_class).map_err(|e| match e {
        FanError::FanConditionViolation { first, second, .. } => {
            QuotientError::FanConditionViolation { first, second }
        }
        other => QuotientError::Fan(other),
    })?;
    check_chains(space, p, &fan)?;
    Ok((fan, class_of, cone_of_class))
}

/// For every cone `ρ` of the quotient fan, all projected faces whose relative
/// interior lies in `ρ°` must be connected through projected faces inside
/// `ρ` with pairwise meeting relative interiors.
fn check_chains(space: &AffineSystemOfFans, p: &IntMat, fan: &Fan) -> Result<(), QuotientError> {
    let mut projected: Vec<Cone> = Vec::new();
    for i in 0..space.chart_count() {
        for f in space.chart_faces(i) {
            projected.push(f.image(p)?);
        }
    }
    projected.sort();
    projected.dedup();

    for rho in fan.cones() {
        let nodes: Vec<&Cone> = projected.iter().filter(|c| rho.contains_cone(c)).collect();
        let ends: Vec<usize> = (0..nodes.len())
            .filter(|&a| rho.relint_contains(&nodes[a].relint_sample()))
            .collect();
        if ends.len() < 2 {
            continue;
        }
        let mut component = vec![usize::MAX; nodes.len()];
        let mut count = 0;
        for start in 0..nodes.len() {
            if component[start] != usize::MAX {
                continue;
            }
            component[start] = count;
            let mut stack = vec![start];
            while let Some(a) = stack.pop() {
                for b in 0..nodes.len() {
                    if component[b] == usize::MAX && relints_intersect(nodes[a], nodes[b])? {
                        component[b] = count;
                        stack.push(b);
                    }
                }
            }
            count += 1;
        }
        let mut hit: Vec<usize> = ends.iter().map(|&a| component[a]).collect();
        hit.sort_unstable();
        hit.dedup();
        if hit.len() > 1 {
            return Err(QuotientError::ChainConditionFailure {
                face: rho.clone(),
                components: hit.len(),
            });
        }
    }
    Ok(())
}

/// The quotient in the category of toric varieties, for an action on a fan.
///
/// Starting from the enlarged lattice, the projected charts are repaired
/// until they form a fan: whenever `C_a ∩ C_b` is not a face of `C_a`, the
/// smallest face of `C_a` containing it is added to `C_b`. A repaired cone
/// that contains a line enlarges the lattice and the computation restarts.
pub fn tv_quotient(action: &SubtorusAction) -> Result<SeparationResult, QuotientError> {
    if action.fan().is_none() {
        return Err(QuotientError::NotAFan);
    }
    let n = action.ambient_rank();
    let space = action.space();
    let all_charts: Vec<usize> = (0..space.chart_count()).collect();
    let mut lattice = action.lattice().clone();
    let mut trace = Vec::new();
    'restart: loop {
        let h = compute_hhat(&action.with_lattice(&lattice))?;
        trace.extend(h.trace);
        lattice = h.lattice;
        let p = quotient_projection(n, &lattice)?;
        let k = p.rows();
        let mut cones = chart_images(space, &p)?;
        loop {
            if let Some(c) = cones.iter().find(|c| !c.is_strictly_convex()) {
                let (chart, g) = ray_into_lineality(space, &all_charts, &p, c)
                    .expect("the lineality of a hull is spanned by generator images");
                lattice = lattice.saturated_join(core::slice::from_ref(&g))?;
                trace.push(TraceEntry {
                    rule: Rule::LineInClass,
                    first: LabelledCone { chart, cone: Cone::ray(&g) },
                    second: None,
                    added: vec![g],
                });
                continue 'restart;
            }
            if !repair_once(&mut cones, k)? {
                break;
            }
        }
        let fan = validate_fan(k, &cones)?;
        let cone_of_class = fan.maximal_cones().to_vec();
        let class_of = cones
            .iter()
            .map(|c| {
                cone_of_class
                    .iter()
                    .position(|m| m.contains_cone(c))
                    .expect("every cone lies in a maximal one")
            })
            .collect();
        let codim = n - lattice.rank();
        return Ok(SeparationResult {
            lattice,
            projection: p,
            quotient_fan: fan,
            class_of,
            cone_of_class,
            codim,
            certified: codim <= 2,
            trace,
        });
    }
}

fn repair_once(cones: &mut [Cone], k: usize) -> Result<bool, QuotientError> {
    for a in 0..cones.len() {
        for b in 0..cones.len() {
            if a == b {
                continue;
            }
            let meet = cones[a].intersect(&cones[b])?;
            let face = cones[a].face(&cones[a].minimal_face_containing(&meet)?);
            if !cones[b].contains_cone(&face) {
                cones[b] = Cone::hull(k, &[&cones[b], &face])?;
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TpQuotient {
    pub projection: IntMat,
    pub system: AffineSystemOfFans,
}

/// Projects every chart and every glueing cone along the acting lattice
/// itself, without enlargement, and keeps the charts apart.
pub fn naive_tp_quotient(action: &SubtorusAction) -> Result<TpQuotient, QuotientError> {
    let n = action.ambient_rank();
    let p = quotient_projection(n, action.lattice())?;
    let k = p.rows();
    let space = action.space();
    let charts = chart_images(space, &p)?;
    if let Some(i) = charts.iter().position(|c| !c.is_strictly_convex()) {
        return Err(QuotientError::Unsupported(format!(
            "chart {i} projects onto {}, which contains a line",
            charts[i]
        )));
    }
    let mut intersections = Vec::new();
    for entry in space.intersections() {
        let cones = entry
            .cones
            .iter()
            .map(|c| c.image(&p))
            .collect::<Result<Vec<_>, _>>()?;
        intersections.push(Intersection {
            i: entry.i,
            j: entry.j,
            cones,
        });
    }
    let system = validate_system(k, &charts, &intersections)
        .map_err(|e| QuotientError::Unsupported(format!("the projected system is invalid: {e}")))?;
    Ok(TpQuotient { projection: p, system })
}

#[cfg(test)]
mod tests {
    use super::super::tests::*;
    use super::*;
    use crate::exactlin::{unimodular_transition, IntVec};

    fn v(x: &[i64]) -> IntVec {
        IntVec::from_i64s(x)
    }

    fn cone(n: usize, gens: &[&[i64]]) -> Cone {
        let g: Vec<IntVec> = gens.iter().map(|x| v(x)).collect();
        Cone::from_generators(n, &g).unwrap()
    }

    fn half_line_fan() -> Fan {
        Fan::of_cone(&cone(1, &[&[1]])).unwrap()
    }

    #[test]
    fn separations_in_low_codimension() {
        let s = compute_separation(&hyperbolic()).unwrap();
        assert_eq!(s.projection, IntMat::from_i64_rows(&[&[1, 1]]));
        assert_eq!(s.quotient_fan, half_line_fan());
        assert!(s.certified);

        let s = compute_separation(&nobasechange()).unwrap();
        assert_eq!(s.projection, IntMat::from_i64_rows(&[&[0, 1, 0]]));
        assert_eq!(s.quotient_fan, half_line_fan());

        let s = compute_separation(&unglued_orbits()).unwrap();
        assert_eq!(s.projection, IntMat::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(
            s.quotient_fan,
            Fan::of_cone(&cone(2, &[&[1, 1], &[1, -1]])).unwrap()
        );
        assert_eq!(s.class_of, vec![0, 0]);
        assert_eq!(s.codim, 2);
    }

    #[test]
    fn separation_fails_in_codimension_three() {
        assert!(matches!(
            compute_separation(&two_planes()),
            Err(QuotientError::UnsupportedCodimension { codim: 3, .. })
        ));
        assert!(matches!(
            compute_separation(&glued_cones()),
            Err(QuotientError::UnsupportedCodimension { codim: 3, .. })
        ));
    }

    #[test]
    fn tv_quotient_of_the_product_example() {
        let s = tv_quotient(&two_planes()).unwrap();
        let f = IntMat::from_i64_rows(&[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 0]]);
        assert!(unimodular_transition(&s.projection, &f).is_some());
        assert_eq!(
            s.quotient_fan,
            Fan::of_cone(&cone(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap()
        );
        assert_eq!(s.class_of, vec![0, 0]);
        assert!(!s.certified);
    }

    #[test]
    fn tv_quotient_of_the_two_cone_example() {
        let s = tv_quotient(&glued_cones()).unwrap();
        let f = IntMat::from_i64_rows(&[&[1, 1, 1, 1], &[0, -1, 0, 0], &[0, 0, 1, -1]]);
        let u = unimodular_transition(&s.projection, &f).expect("same kernel");
        let t1 = cone(3, &[&[1, -1, 0], &[1, 0, 1], &[1, 0, -1]]);
        let t2 = cone(3, &[&[1, 1, 0], &[1, 0, 1], &[1, 0, -1]]);
        let mapped: Vec<Cone> = s
            .quotient_fan
            .maximal_cones()
            .iter()
            .map(|c| c.image(&u).unwrap())
            .collect();
        assert_eq!(mapped, vec![t1, t2]);
        assert_eq!(s.class_of, vec![0, 1]);
    }

    #[test]
    fn tv_quotient_agrees_with_separation_in_low_codimension() {
        for a in [hyperbolic(), nobasechange(), unglued_orbits()] {
            let tv = tv_quotient(&a).unwrap();
            let sep = compute_separation(&a).unwrap();
            assert_eq!(tv.projection, sep.projection);
            assert_eq!(tv.quotient_fan, sep.quotient_fan);
        }
    }

    #[test]
    fn tv_quotient_needs_a_fan() {
        let r = cone(1, &[&[1]]);
        let space = validate_system(1, &[r.clone(), r], &[]).unwrap();
        let a = SubtorusAction::new(space, &Sublattice::zero(1)).unwrap();
        assert_eq!(tv_quotient(&a), Err(QuotientError::NotAFan));
    }

    #[test]
    fn naive_prevariety_quotients() {
        let q = naive_tp_quotient(&hyperbolic()).unwrap();
        let r = cone(1, &[&[1]]);
        let doubled = validate_system(1, &[r.clone(), r], &[]).unwrap();
        assert_eq!(q.system, doubled);

        let q = naive_tp_quotient(&two_planes()).unwrap();
        assert_eq!(q.system.chart_count(), 2);
        assert_eq!(q.system.glueing(0, 1), &[Cone::zero(3)]);
        let f = IntMat::from_i64_rows(&[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1, 0]]);
        assert_eq!(q.projection, f);
        assert_eq!(q.system.charts()[0], cone(3, &[&[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(q.system.charts()[1], cone(3, &[&[0, 0, 1], &[1, 1, 0]]));

        // the projected glueing cone is not a face of the first projected chart
        assert!(matches!(
            naive_tp_quotient(&nobasechange()),
            Err(QuotientError::Unsupported(_))
        ));
    }

    #[test]
    fn identity_action_on_a_fan() {
        let fan = validate_fan(2, &[cone(2, &[&[1, 0], &[0, 1]]), cone(2, &[&[0, 1], &[-1, 0]])]).unwrap();
        let a = SubtorusAction::on_fan(&fan, &Sublattice::zero(2)).unwrap();
        let s = tv_quotient(&a).unwrap();
        assert_eq!(s.quotient_fan, fan);
        assert_eq!(compute_separation(&a).unwrap().quotient_fan, fan);
    }
}
