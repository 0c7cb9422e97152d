//! Which site owns the points just beside a given point.
//!
//! Near a point `x` where several sites are equally close, the distance to
//! site `s` in direction `n` grows at rate `max_{j active} -a_j . n`, taken
//! over the body edges active for `s` at `x`. The owner of a small region
//! beside `x` is the site with the smallest rate, ties going to the
//! lexicographically smallest site.

use core::cmp::Ordering;

use crate::arith::{Cert, Uncertain};
use crate::point::{Lift, Pt};
use crate::shape::ConvexBody;

/// At most two body edges are active for a site at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Active {
    idx: [usize; 2],
    n: u8,
}

impl Active {
    pub(crate) fn one(k: usize) -> Active {
        Active { idx: [k, k], n: 1 }
    }

    pub(crate) fn push(&mut self, k: usize) {
        debug_assert!(self.n < 2);
        self.idx[self.n as usize] = k;
        self.n += 1;
    }

    pub(crate) fn as_slice(&self) -> &[usize] {
        &self.idx[..self.n as usize]
    }

    /// Growth rate of the distance when moving in direction `n`.
    pub(crate) fn rate<S: Lift>(&self, body: &ConvexBody, n: &Pt<S>) -> S {
        let polar = body.polar();
        let mut best: Option<S> = None;
        for &j in self.as_slice() {
            let v = -S::lift(&polar[j]).dot(n);
            best = Some(match best {
                None => v,
                Some(b) => b.max_of(&v),
            });
        }
        best.expect("at least one active edge")
    }
}

/// Active edges of site `s` at `x` when edge `k` is known to be active.
pub(crate) fn active_with_hint<S: Lift>(body: &ConvexBody, s: &Pt<S>, x: &Pt<S>, k: usize) -> Cert<Active> {
    let polar = body.polar();
    let m = polar.len();
    let z = s.sub(x);
    let ak = S::lift(&polar[k]);
    let mut act = Active::one(k);
    for j in [(k + m - 1) % m, (k + 1) % m] {
        match S::lift(&polar[j]).sub(&ak).dot(&z).sign()? {
            Ordering::Less => {}
            Ordering::Equal => act.push(j),
            Ordering::Greater => return Err(Uncertain),
        }
    }
    Ok(act)
}

/// Distance from `x` to `s` and the active edges, with no prior knowledge.
pub(crate) fn active_general<S: Lift>(body: &ConvexBody, s: &Pt<S>, x: &Pt<S>) -> Cert<(S, Active)> {
    let polar = body.polar();
    let z = s.sub(x);
    let mut best = S::lift(&polar[0]).dot(&z);
    let mut act = Active::one(0);
    for (j, a) in polar.iter().enumerate().skip(1) {
        let v = S::lift(a).dot(&z);
        match v.cmp_to(&best)? {
            Ordering::Greater => {
                best = v;
                act = Active::one(j);
            }
            Ordering::Equal => act.push(j),
            Ordering::Less => {}
        }
    }
    Ok((best, act))
}

/// Owner of the region beside a point in direction `n`, among sites that are
/// all equally close at that point. Each candidate is `(site, rank, active)`.
pub(crate) fn pick_label<S: Lift>(body: &ConvexBody, n: &Pt<S>, cands: &[(usize, usize, Active)]) -> Cert<usize> {
    let mut best = 0;
    let mut best_rate = cands[0].2.rate(body, n);
    for (i, c) in cands.iter().enumerate().skip(1) {
        let r = c.2.rate(body, n);
        match r.cmp_to(&best_rate)? {
            Ordering::Less => {
                best = i;
                best_rate = r;
            }
            Ordering::Equal if c.1 < cands[best].1 => {
                best = i;
                best_rate = r;
            }
            _ => {}
        }
    }
    Ok(cands[best].0)
}
