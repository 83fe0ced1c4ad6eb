//! Randomized checks shared by the property tests and the acceptance suite.
//!
//! Every check draws its instances from a deterministic generator so that a
//! failure reproduces exactly. Lattice ranks stay at most four and generator
//! entries within `-5..=5`.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use toriq_core::covering::{cone_covered_by, is_weakly_proper, lemma_conecover_check};
use toriq_core::fans::{
    fan_as_system, validate_fan, validate_fan_map, validate_system, AffineSystemOfFans, Fan,
};
use toriq_core::quotient::{compute_hhat, compute_separation, orbit_image, Rule, SubtorusAction};
use toriq_core::{relints_intersect, Cone, FanError, IntMat, IntVec, QuotientError, Sublattice};

pub const CASES: u32 = 500;

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        max_global_rejects: 100_000,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn vector(n: usize) -> impl Strategy<Value = IntVec> {
    prop::collection::vec(-5i64..=5, n).prop_map(|x| IntVec::from_i64s(&x))
}

fn small_vector(n: usize, bound: i64) -> impl Strategy<Value = IntVec> {
    prop::collection::vec(-bound..=bound, n).prop_map(|x| IntVec::from_i64s(&x))
}

fn generators(n: usize, max: usize) -> impl Strategy<Value = Vec<IntVec>> {
    prop::collection::vec(vector(n), 0..=max)
}

fn cone_in(n: usize, max: usize) -> impl Strategy<Value = Cone> {
    generators(n, max).prop_map(move |g| Cone::from_generators(n, &g).unwrap())
}

fn pointed_cone_in(n: usize, max: usize) -> impl Strategy<Value = Cone> {
    cone_in(n, max).prop_filter("strictly convex", Cone::is_strictly_convex)
}

fn full_pointed_cone_in(n: usize, max: usize) -> impl Strategy<Value = Cone> {
    prop::collection::vec(vector(n), n..=max)
        .prop_map(move |g| Cone::from_generators(n, &g).unwrap())
        .prop_filter("full-dimensional and strictly convex", move |c| {
            c.is_strictly_convex() && c.dim() == n
        })
}

fn pair(u: &IntVec, v: &IntVec) -> num_bigint::BigInt {
    u.dot(v).unwrap()
}

fn rank_of(n: usize, rows: &[IntVec]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    toriq_core::exactlin::hnf(&IntMat::from_rows(n, rows).unwrap()).rank
}

/// Lattice points of the box `[-r, r]^n`.
fn box_points(n: usize, r: i64) -> Vec<IntVec> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for x in -r..=r {
                let mut q: Vec<i64> = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        out = next;
    }
    out.iter().map(|p| IntVec::from_i64s(p)).collect()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

type Outcome = Result<(), String>;

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Outcome
where
    S::Value: core::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

/// `(σ^∨)^∨ = σ`, and the stored dual agrees with a fresh conversion.
pub fn dual_involution(cases: u32) -> Outcome {
    let strategy = (1usize..=4).prop_flat_map(|n| cone_in(n, 5));
    run(cases, strategy, |c| {
        let d = c.dual();
        check(d.dual() == c, || format!("dual is not an involution on {c}"))?;
        let fresh = Cone::from_generators(c.ambient_rank(), &d.generators()).unwrap();
        check(fresh == d, || format!("dual of {c} disagrees with recomputation"))?;
        for g in c.generators() {
            for f in c.facets() {
                check(pair(f, &g) >= 0.into(), || format!("generator {g} violates facet {f}"))?;
            }
        }
        let n = c.ambient_rank();
        for f in c.facets() {
            let mut tight: Vec<IntVec> = c
                .rays()
                .iter()
                .filter(|r| pair(f, r) == 0.into())
                .cloned()
                .collect();
            tight.extend(c.lineality().basis().iter().cloned());
            check(rank_of(n, &tight) == c.dim() - 1, || {
                format!("facet {f} of {c} is not tight on dim-1 generators")
            })?;
        }
        Ok(())
    })
}

fn fan_input() -> impl Strategy<Value = (usize, Vec<Cone>)> {
    (1usize..=4).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(pointed_cone_in(n, 3).prop_filter("nonzero", |c| !c.is_zero()), 1..=3),
        )
    })
}

/// Valid fans survive re-serialization, their face intersections are faces,
/// their systems validate, and rejected inputs carry a correct witness.
pub fn fan_round_trip(cases: u32) -> Outcome {
    let strategy = (fan_input(), prop::collection::vec(small_vector(4, 6), 20));
    run(cases, strategy, |((n, cones), points)| match validate_fan(n, &cones) {
        Ok(fan) => {
            let rebuilt: Vec<Cone> = fan
                .maximal_cones()
                .iter()
                .map(|c| Cone::from_generators(n, c.rays()).unwrap())
                .collect();
            check(validate_fan(n, &rebuilt).as_ref() == Ok(&fan), || "round trip changed the fan".into())?;
            for a in fan.cones() {
                for b in fan.cones() {
                    let m = a.intersect(b).unwrap();
                    check(fan.has_cone(&m), || format!("{a} and {b} meet in {m}, not in the fan"))?;
                }
            }
            let sys = fan_as_system(&fan);
            let again = validate_system(n, sys.charts(), &sys.intersections()).unwrap();
            check(again == sys, || "system round trip changed the data".into())?;
            check(sys.is_separated(), || "fan system is not separated".into())?;
            for p in &points {
                let p = IntVec::from_i64s(&p.to_i64s().unwrap()[..n]);
                let direct = cones.iter().any(|c| c.contains(&p));
                check(direct == fan.support_contains(&p), || format!("support disagrees at {p}"))?;
            }
            Ok(())
        }
        Err(FanError::FanConditionViolation { first, second, intersection }) => {
            let m = cones[first].intersect(&cones[second]).unwrap();
            check(m == intersection, || "witness is not the intersection".into())?;
            let fa = cones[first].face_cones().unwrap();
            let fb = cones[second].face_cones().unwrap();
            check(!fa.contains(&m) || !fb.contains(&m), || {
                format!("{m} is a face of both {} and {}", cones[first], cones[second])
            })
        }
        Err(e) => Err(TestCaseError::fail(format!("unexpected error {e}"))),
    })
}

fn split(c: &Cone, h: &IntVec) -> Vec<Cone> {
    let n = c.ambient_rank();
    [h.clone(), h.neg()]
        .iter()
        .map(|g| c.intersect(&Cone::from_inequalities(n, core::slice::from_ref(g), &[]).unwrap()).unwrap())
        .filter(|p| p.dim() == c.dim())
        .collect()
}

fn cover_input() -> impl Strategy<Value = (Cone, Vec<Cone>, Cone, IntVec, bool)> {
    (2usize..=3).prop_flat_map(|n| {
        (
            cone_in(n, 4),
            prop::collection::vec(cone_in(n, 3), 0..=3),
            cone_in(n, 3),
            vector(n),
            any::<bool>(),
        )
    })
}

/// A claimed cover has no sampled lattice point outside it, a gap point is a
/// genuine gap, and adding pieces never uncovers.
pub fn cover_vs_sampling(cases: u32) -> Outcome {
    run(cases, cover_input(), |(tau, mut cover, extra, h, split_tau)| {
        if split_tau {
            cover.extend(split(&tau, &h));
        }
        let n = tau.ambient_rank();
        let w = cone_covered_by(&tau, &cover).unwrap();
        if w.covered {
            for p in box_points(n, 4) {
                if tau.contains(&p) {
                    check(cover.iter().any(|c| c.contains(&p)), || {
                        format!("{p} in {tau} escapes the claimed cover")
                    })?;
                }
            }
            let mut more = cover.clone();
            more.push(extra);
            check(cone_covered_by(&tau, &more).unwrap().covered, || "adding a piece uncovered".into())?;
        } else {
            let g = w.gap_point.as_ref().unwrap();
            check(tau.contains(g), || format!("gap {g} outside {tau}"))?;
            check(!cover.iter().any(|c| c.contains(g)), || format!("gap {g} is covered"))?;
        }
        Ok(())
    })
}

fn lemma_input() -> impl Strategy<Value = (Cone, Vec<IntVec>, usize, bool)> {
    (2usize..=3).prop_flat_map(|n| {
        (
            full_pointed_cone_in(n, 4),
            prop::collection::vec(vector(n), 1..=2),
            0usize..64,
            any::<bool>(),
        )
    })
}

/// The projection of a cone modulo a face is covered by the projections of
/// the pieces meeting the relative interior of that face.
pub fn cone_cover_lemma(cases: u32) -> Outcome {
    run(cases, lemma_input(), |(sigma, planes, pick, keep_whole)| {
        let mut pieces = vec![sigma.clone()];
        for h in &planes {
            pieces = pieces.iter().flat_map(|p| split(p, h)).collect();
        }
        if keep_whole {
            pieces.push(sigma.clone());
        }
        let faces = sigma.faces().unwrap();
        let face = &faces[pick % faces.len()];
        match lemma_conecover_check(&sigma, face, &pieces) {
            Ok(true) => Ok(()),
            other => Err(TestCaseError::fail(format!(
                "lemma check on {sigma}, face {}, returned {other:?}",
                sigma.face(face)
            ))),
        }
    })
}

#[derive(Clone, Debug)]
pub struct ActionInput {
    pub n: usize,
    pub charts: Vec<Cone>,
    pub as_fan: bool,
    pub lattice: Vec<IntVec>,
}

impl ActionInput {
    /// The action on the fan of the charts if requested and valid, otherwise
    /// on the charts glued along the origin.
    pub fn build(&self) -> SubtorusAction {
        let l = Sublattice::span(self.n, &self.lattice).unwrap();
        if self.as_fan {
            if let Ok(fan) = validate_fan(self.n, &self.charts) {
                return SubtorusAction::on_fan(&fan, &l).unwrap();
            }
        }
        let space = validate_system(self.n, &self.charts, &[]).unwrap();
        SubtorusAction::new(space, &l).unwrap()
    }
}

fn action_input() -> impl Strategy<Value = ActionInput> {
    (2usize..=4).prop_flat_map(|n| {
        (
            prop::collection::vec(pointed_cone_in(n, 3), 1..=3),
            any::<bool>(),
            prop::collection::vec(vector(n), 0..=1),
        )
            .prop_filter("acting lattice smaller than N", move |(_, _, l)| {
                let s = Sublattice::span(n, l).unwrap();
                s.rank() < n
            })
            .prop_map(move |(charts, as_fan, lattice)| ActionInput { n, charts, as_fan, lattice })
    })
}

/// Rerunning the enlargement from its result adds nothing, the input lattice
/// is kept, and every added vector lies in the relative interior of a chart
/// face.
pub fn hhat_idempotent(cases: u32) -> Outcome {
    run(cases, action_input(), |input| {
        let a = input.build();
        let h = compute_hhat(&a).unwrap();
        for b in a.lattice().basis() {
            check(h.lattice.contains(b), || format!("lost {b}"))?;
        }
        let again = compute_hhat(&a.with_lattice(&h.lattice)).unwrap();
        check(again.lattice == h.lattice && again.trace.is_empty(), || "not idempotent".into())?;
        for e in &h.trace {
            let chart = &a.space().charts()[e.first.chart];
            check(e.first.cone.is_face_of(chart), || "trace face is not a chart face".into())?;
            check(e.first.cone.relint_contains(&e.added[0]), || "added vector not in the face interior".into())?;
            if e.rule == Rule::OppositeFaces {
                let s = e.second.as_ref().unwrap();
                check(s.cone.relint_contains(&e.added[1]), || "partner vector not in the face interior".into())?;
            }
        }
        Ok(())
    })
}

/// Checks (a) to (e) on every separation that is produced; in codimension at
/// most two a separation must be produced.
pub fn separation_soundness(cases: u32) -> Outcome {
    run(cases, action_input(), |input| {
        let a = input.build();
        let s = match compute_separation(&a) {
            Ok(s) => s,
            Err(QuotientError::UnsupportedCodimension { codim, .. }) if codim >= 3 => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        };
        let n = a.ambient_rank();
        let k = s.projection.rows();
        check(k == s.codim && n - s.lattice.rank() == k, || "codimension mismatch".into())?;
        for b in s.lattice.basis() {
            check(s.projection.apply(b).unwrap().is_zero(), || "projection does not kill the lattice".into())?;
        }
        // (a)
        check(
            validate_fan(k, s.quotient_fan.maximal_cones()).as_ref() == Ok(&s.quotient_fan),
            || "quotient fan does not validate".into(),
        )?;
        let images: Vec<Cone> = a.space().charts().iter().map(|c| c.image(&s.projection).unwrap()).collect();
        // (b)
        for (i, img) in images.iter().enumerate() {
            check(s.cone_of_class[s.class_of[i]].contains_cone(img), || format!("chart {i} escapes its class"))?;
        }
        for (id, tau) in s.cone_of_class.iter().enumerate() {
            let members: Vec<usize> = (0..images.len()).filter(|&i| s.class_of[i] == id).collect();
            // (c)
            let mut reached = vec![members[0]];
            let mut k2 = 0;
            while k2 < reached.len() {
                let x = reached[k2];
                for &y in &members {
                    if !reached.contains(&y) && relints_intersect(&images[x], &images[y]).unwrap() {
                        reached.push(y);
                    }
                }
                k2 += 1;
            }
            check(reached.len() == members.len(), || format!("class {id} is not connected"))?;
            // (e)
            let pieces: Vec<Cone> = members.iter().map(|&i| images[i].clone()).collect();
            check(pieces.iter().all(|p| tau.contains_cone(p)), || "union exceeds the class cone".into())?;
            check(cone_covered_by(tau, &pieces).unwrap().covered, || "class cone exceeds the union".into())?;
        }
        // (d)
        for i in 0..images.len() {
            for j in 0..images.len() {
                if s.class_of[i] != s.class_of[j] {
                    check(!relints_intersect(&images[i], &images[j]).unwrap(), || {
                        format!("charts {i} and {j} in different classes meet")
                    })?;
                }
            }
        }
        Ok(())
    })
}

fn map_input() -> impl Strategy<Value = (ActionInput, usize, Vec<IntVec>)> {
    (action_input(), 1usize..=3).prop_flat_map(|(input, k)| {
        let n = input.n;
        (Just(input), Just(k), prop::collection::vec(small_vector(n, 2), k))
    })
}

fn hull_target(space: &AffineSystemOfFans, p: &IntMat) -> Option<Fan> {
    let images: Vec<Cone> = space.charts().iter().map(|c| c.image(p).unwrap()).collect();
    let refs: Vec<&Cone> = images.iter().collect();
    let hull = Cone::hull(p.rows(), &refs).unwrap();
    Fan::of_cone(&hull).ok()
}

/// A weakly proper map of fans hits every target orbit.
pub fn weakly_proper_implies_surjective(cases: u32) -> Outcome {
    run(cases, map_input(), |(input, k, rows)| {
        let a = input.build();
        let p = IntMat::from_rows(input.n, &rows).unwrap();
        let mut maps = Vec::new();
        if let Some(t) = hull_target(a.space(), &p) {
            maps.push(validate_fan_map(&p, a.space(), &t).unwrap());
        }
        if let Ok(s) = compute_separation(&a) {
            maps.push(validate_fan_map(&s.projection, a.space(), &s.quotient_fan).unwrap());
        }
        let _ = k;
        for map in maps {
            if is_weakly_proper(&map).covered {
                let r = orbit_image(&map);
                check(r.surjective, || format!("weakly proper but misses {:?}", r.missing_faces))?;
            }
        }
        Ok(())
    })
}

/// Hermite forms are invariant under unimodular row operations, kernels have
/// complementary rank, saturation is idempotent and projections are onto.
pub fn exact_linear_algebra(cases: u32) -> Outcome {
    let strategy = (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        (
            prop::collection::vec(vector(c), r),
            prop::collection::vec((0..r, 0..r, -3i64..=3), 0..6),
        )
    });
    run(cases, strategy, |(rows, ops)| {
        let c = rows[0].len();
        let m = IntMat::from_rows(c, &rows).unwrap();
        let h = toriq_core::exactlin::hnf(&m);
        check(h.u.mul(&m).unwrap() == h.h && h.u.is_unimodular(), || "H != U M".into())?;
        let mut mixed = rows.clone();
        for (a, b, q) in ops {
            if a != b {
                mixed[a] = mixed[a].add(&mixed[b].scale(&q.into()));
            } else {
                mixed[a] = mixed[a].neg();
            }
        }
        let h2 = toriq_core::exactlin::hnf(&IntMat::from_rows(c, &mixed).unwrap());
        check(h2.h == h.h, || "Hermite form is not canonical".into())?;
        let k = toriq_core::exactlin::kernel_basis(&m);
        for v in k.basis() {
            check(m.apply(v).unwrap().is_zero(), || "kernel vector not killed".into())?;
        }
        check(k.rank() + h.rank == c, || "rank-nullity fails".into())?;
        let span = Sublattice::span(c, &rows).unwrap();
        let sat = toriq_core::exactlin::saturate(&span);
        check(toriq_core::exactlin::saturate(&sat) == sat && sat.rank() == span.rank(), || "saturation".into())?;
        for v in span.basis() {
            check(sat.contains(v), || "saturation lost a vector".into())?;
        }
        let p = toriq_core::exactlin::quotient_projection(c, &sat).unwrap();
        for v in sat.basis() {
            check(p.apply(v).unwrap().is_zero(), || "projection does not kill L".into())?;
        }
        check(toriq_core::exactlin::right_inverse(&p).is_some(), || "projection not onto".into())
    })
}

/// All checks of the randomized suite, by name.
pub fn all(cases: u32) -> Vec<(&'static str, Outcome)> {
    vec![
        ("dual involution", dual_involution(cases)),
        ("fan condition round trips", fan_round_trip(cases)),
        ("covering versus sampling", cover_vs_sampling(cases)),
        ("cone cover lemma", cone_cover_lemma(cases)),
        ("enlargement idempotent", hhat_idempotent(cases)),
        ("separation soundness", separation_soundness(cases)),
        ("weakly proper implies surjective", weakly_proper_implies_surjective(cases)),
    ]
}
