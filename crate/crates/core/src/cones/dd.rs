//! Double description method: from a list of homogeneous inequalities
//! `<a, x> >= 0` to the lineality space and extreme rays of the cone they cut
//! out.
//!
//! The iteration starts from the whole space and adds one constraint at a
//! time. While the current lineality space is not annihilated by the new
//! constraint, one lineality direction turns into a ray. Otherwise the rays
//! are split by sign and every adjacent pair of opposite sign is combined.
//! Adjacency uses the combinatorial test on zero sets, which is exact because
//! the ray list always holds exactly the extreme rays modulo lineality.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exactlin::IntVec;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn with_capacity(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    fn set(&mut self, k: usize) {
        let word = k / 64;
        if word >= self.0.len() {
            self.0.resize(word + 1, 0);
        }
        self.0[word] |= 1 << (k % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(
            self.0
                .iter()
                .zip(other.0.iter().chain(core::iter::repeat(&0)))
                .map(|(a, b)| a & b)
                .collect(),
        )
    }

    fn is_superset_of(&self, other: &Bits) -> bool {
        other
            .0
            .iter()
            .enumerate()
            .all(|(k, w)| w & !self.0.get(k).copied().unwrap_or(0) == 0)
    }
}

struct Ray {
    v: IntVec,
    zeros: Bits,
}

/// Lineality basis and extreme rays of `{x : <a, x> >= 0 for all a}`.
///
/// Rays are primitive, but not reduced modulo the lineality space.
pub(crate) fn generators_of(ambient_rank: usize, constraints: &[IntVec]) -> (Vec<IntVec>, Vec<IntVec>) {
    let m = constraints.len();
    let mut lin: Vec<IntVec> = (0..ambient_rank)
        .map(|k| IntVec::unit(ambient_rank, k))
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in constraints.iter().enumerate() {
        if let Some(pos) = lin.iter().position(|b| !a.dot_unchecked(b).is_zero()) {
            let mut b0 = lin.remove(pos);
            let mut s0 = a.dot_unchecked(&b0);
            if s0.is_negative() {
                b0 = b0.neg();
                s0 = -s0;
            }
            lin = lin
                .iter()
                .map(|b| {
                    let s = a.dot_unchecked(b);
                    reduce(b.combine(&s0, &b0, &-s))
                })
                .collect();
            for r in rays.iter_mut() {
                let s = a.dot_unchecked(&r.v);
                if !s.is_zero() {
                    r.v = reduce(r.v.combine(&s0, &b0, &-s));
                }
                r.zeros.set(k);
            }
            // b0 was a lineality direction, so it vanishes on every earlier constraint
            let mut zeros = Bits::with_capacity(m);
            for j in 0..k {
                zeros.set(j);
            }
            rays.push(Ray { v: b0, zeros });
            continue;
        }

        let signs: Vec<BigInt> = rays.iter().map(|r| a.dot_unchecked(&r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| signs[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| signs[i].is_negative()).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if signs[i].is_zero() {
                    r.zeros.set(k);
                }
            }
            continue;
        }

        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                let blocked = (0..rays.len())
                    .any(|r| r != p && r != q && rays[r].zeros.is_superset_of(&common));
                if blocked {
                    continue;
                }
                // s_p > 0 > s_q, so s_p * q - s_q * p is a positive combination
                let v = reduce(rays[q].v.combine(&signs[p], &rays[p].v, &-&signs[q]));
                let mut zeros = common;
                zeros.set(k);
                next.push(Ray { v, zeros });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if signs[i].is_zero() {
                r.zeros.set(k);
                kept.push(r);
            } else if signs[i].is_positive() {
                kept.push(r);
            }
        }
        kept.extend(next);
        rays = kept;
    }
    (lin, rays.into_iter().map(|r| r.v).collect())
}

fn reduce(v: IntVec) -> IntVec {
    v.primitive().expect("double description never produces zero vectors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn v(x: &[i64]) -> IntVec {
        IntVec::from_i64s(x)
    }

    fn sorted(mut x: Vec<IntVec>) -> Vec<IntVec> {
        x.sort();
        x
    }

    #[test]
    fn orthant() {
        let (lin, rays) = generators_of(2, &[v(&[1, 0]), v(&[0, 1])]);
        assert!(lin.is_empty());
        assert_eq!(sorted(rays), vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn halfplane_keeps_a_line() {
        let (lin, rays) = generators_of(2, &[v(&[0, 1])]);
        assert_eq!(lin.len(), 1);
        assert!(lin[0].dot_unchecked(&v(&[0, 1])).is_zero());
        assert_eq!(rays.len(), 1);
    }

    #[test]
    fn square_pyramid() {
        // dual of cone over a square: four facets meeting in four rays
        let cons = [v(&[1, 1, 0]), v(&[1, -1, 0]), v(&[1, 0, 1]), v(&[1, 0, -1])];
        let (lin, rays) = generators_of(3, &cons);
        assert!(lin.is_empty());
        assert_eq!(rays.len(), 4);
        for r in &rays {
            let tight = cons.iter().filter(|c| c.dot_unchecked(r).is_zero()).count();
            assert_eq!(tight, 2);
        }
    }

    #[test]
    fn no_constraints_is_whole_space() {
        let (lin, rays) = generators_of(3, &[]);
        assert_eq!(lin.len(), 3);
        assert!(rays.is_empty());
    }

    #[test]
    fn contradictory_constraints_give_the_origin() {
        let (lin, rays) = generators_of(1, &[v(&[1]), v(&[-1])]);
        assert!(lin.is_empty());
        assert!(rays.is_empty());
    }
}
