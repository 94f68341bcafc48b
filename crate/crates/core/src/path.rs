//! Piecewise-linear paths `[0,1] -> R (x) P_cl` with rational breakpoints and
//! the root operators `e_j`, `f_j` for every node `j` in `0..=rank`.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rootsys::{RootSystem, WeightVec};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub direction: WeightVec,
    pub duration: Rational,
}

/// A path given by its velocity on consecutive time intervals.
///
/// Always normalized: no zero-duration segments and no two adjacent
/// segments with the same direction, so equality of values is equality of
/// maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PLPath {
    segments: Vec<Segment>,
}

impl PLPath {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        let Some(first) = segments.first() else {
            return Err(Error::MalformedPath("no segments".into()));
        };
        let rank = first.direction.rank();
        if segments.iter().any(|s| s.direction.rank() != rank) {
            return Err(Error::MalformedPath("mixed ranks".into()));
        }
        if segments.iter().any(|s| s.duration.is_negative()) {
            return Err(Error::MalformedPath("negative duration".into()));
        }
        let total: Rational = segments.iter().map(|s| &s.duration).sum();
        if total != Rational::one() {
            return Err(Error::MalformedPath(format!("durations sum to {total}")));
        }
        Ok(Self::normalized(segments))
    }

    /// The straight line `t -> t mu`.
    pub fn straight(mu: WeightVec) -> Self {
        PLPath {
            segments: vec![Segment {
                direction: mu,
                duration: Rational::one(),
            }],
        }
    }

    fn normalized(segments: Vec<Segment>) -> Self {
        let mut out: Vec<Segment> = Vec::with_capacity(segments.len());
        for s in segments.into_iter().filter(|s| !s.duration.is_zero()) {
            match out.last_mut() {
                Some(last) if last.direction == s.direction => last.duration += &s.duration,
                _ => out.push(s),
            }
        }
        PLPath { segments: out }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn rank(&self) -> usize {
        self.segments[0].direction.rank()
    }

    /// Times `0 = t_0 < ... < t_s = 1` at which the velocity may change.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut t = Rational::zero();
        let mut out = vec![t.clone()];
        for s in &self.segments {
            t += &s.duration;
            out.push(t.clone());
        }
        out
    }

    pub fn eval(&self, t: &Rational) -> WeightVec {
        let mut pos = WeightVec::zero(self.rank());
        let mut start = Rational::zero();
        for s in &self.segments {
            let end = &start + &s.duration;
            if *t <= end {
                return pos.add(&s.direction.scale(&(t - &start)));
            }
            pos = pos.add(&s.direction.scale(&s.duration));
            start = end;
        }
        pos
    }

    /// `wt(eta) = eta(1)`.
    pub fn wt(&self) -> WeightVec {
        self.segments
            .iter()
            .fold(WeightVec::zero(self.rank()), |acc, s| acc.add(&s.direction.scale(&s.duration)))
    }

    /// `N eta`.
    pub fn scale(&self, n: u32) -> PLPath {
        let k = Rational::from_integer(i64::from(n));
        PLPath::normalized(
            self.segments
                .iter()
                .map(|s| Segment {
                    direction: s.direction.scale(&k),
                    duration: s.duration.clone(),
                })
                .collect(),
        )
    }

    /// `eta_1 * ... * eta_n`: each path runs at `n` times its speed on its
    /// own interval of length `1/n`, so velocities are multiplied by `n`.
    pub fn concatenate(paths: &[PLPath]) -> Result<PLPath> {
        if paths.is_empty() {
            return Err(Error::EmptyConcat);
        }
        let n = Rational::from_integer(paths.len() as i64);
        let inv = n.recip();
        let segments = paths
            .iter()
            .flat_map(|p| p.segments.iter())
            .map(|s| Segment {
                direction: s.direction.scale(&n),
                duration: &s.duration * &inv,
            })
            .collect();
        Ok(PLPath::normalized(segments))
    }

    /// Split into segments whose boundaries include every time in `cuts`.
    fn split_at(&self, cuts: &[&Rational]) -> Vec<(Rational, Segment)> {
        let mut out = Vec::new();
        let mut start = Rational::zero();
        for s in &self.segments {
            let end = &start + &s.duration;
            let mut cur = start.clone();
            for c in cuts {
                if **c > cur && **c < end {
                    out.push((
                        cur.clone(),
                        Segment {
                            direction: s.direction.clone(),
                            duration: *c - &cur,
                        },
                    ));
                    cur = (*c).clone();
                }
            }
            out.push((
                cur.clone(),
                Segment {
                    direction: s.direction.clone(),
                    duration: &end - &cur,
                },
            ));
            start = end;
        }
        out
    }

    /// Reflect the velocity by `s_j` on `[t0, t1]`; later parts keep their
    /// velocity, which is the translation by a multiple of `alpha_j`.
    fn reflect_between(&self, rs: &RootSystem, j: usize, t0: &Rational, t1: &Rational) -> PLPath {
        let pieces = self.split_at(&[t0, t1]);
        PLPath::normalized(
            pieces
                .into_iter()
                .map(|(start, s)| {
                    if start >= *t0 && start < *t1 {
                        Segment {
                            direction: rs.node_reflect(&s.direction, j),
                            duration: s.duration,
                        }
                    } else {
                        s
                    }
                })
                .collect(),
        )
    }
}

impl fmt::Display for PLPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .segments
            .iter()
            .map(|s| format!("{}*{}", s.duration, s.direction))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// `H_j(t) = <eta(t), alpha_j^vee>` sampled at the breakpoints of the path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HFunction {
    pub breakpoints: Vec<Rational>,
    pub values: Vec<Rational>,
}

impl HFunction {
    pub fn slopes(&self) -> Vec<Rational> {
        (0..self.breakpoints.len() - 1)
            .map(|k| {
                &(&self.values[k + 1] - &self.values[k])
                    / &(&self.breakpoints[k + 1] - &self.breakpoints[k])
            })
            .collect()
    }

    /// `m_j`, the minimum over `[0,1]` (attained at a breakpoint).
    pub fn min(&self) -> Rational {
        self.values.iter().min().cloned().expect("nonempty")
    }

    pub fn end_value(&self) -> &Rational {
        self.values.last().expect("nonempty")
    }

    /// Values at local minima, including the endpoints when the function
    /// does not decrease into them from inside the interval.
    pub fn local_minima(&self) -> Vec<Rational> {
        let slopes = self.slopes();
        let last = slopes.len();
        (0..=last)
            .filter(|&k| {
                let left = (k > 0).then(|| &slopes[k - 1]);
                let right = (k < last).then(|| &slopes[k]);
                match (left, right) {
                    (None, Some(b)) => !b.is_negative(),
                    (Some(a), None) => !a.is_positive(),
                    (Some(a), Some(b)) => {
                        !a.is_positive() && !b.is_negative() && !(a.is_zero() && b.is_zero())
                    }
                    (None, None) => true,
                }
            })
            .map(|k| self.values[k].clone())
            .collect()
    }

    /// Linear interpolation on segment `k` for the time at which value `v`
    /// is reached.
    fn crossing(&self, k: usize, v: &Rational) -> Rational {
        let slope = &(&self.values[k + 1] - &self.values[k]) / &(&self.breakpoints[k + 1] - &self.breakpoints[k]);
        &self.breakpoints[k] + &(&(v - &self.values[k]) / &slope)
    }
}

fn check_node(rs: &RootSystem, j: usize) -> Result<()> {
    if j > rs.rank() {
        return Err(Error::IndexOutOfRange { index: j, rank: rs.rank() });
    }
    Ok(())
}

pub fn h_function(rs: &RootSystem, eta: &PLPath, j: usize) -> Result<HFunction> {
    check_node(rs, j)?;
    let coroot = rs.node_coroot(j);
    let mut value = Rational::zero();
    let mut values = vec![value.clone()];
    for s in eta.segments() {
        value += &(&s.direction.dot(&coroot) * &s.duration);
        values.push(value.clone());
    }
    Ok(HFunction {
        breakpoints: eta.breakpoints(),
        values,
    })
}

/// Membership in the domain of `e_j`, `f_j`: integral endpoint and integral
/// local minima of `H_j`.
pub fn is_j_integral(rs: &RootSystem, eta: &PLPath, j: usize) -> Result<bool> {
    let h = h_function(rs, eta, j)?;
    Ok(eta.wt().is_integral() && h.local_minima().iter().all(Rational::is_integer))
}

/// Membership in `P_cl,int`: integral for every node `0..=rank`.
pub fn is_integrally_minimal(rs: &RootSystem, eta: &PLPath) -> bool {
    (0..rs.node_count()).all(|j| is_j_integral(rs, eta, j).unwrap_or(false))
}

fn integral_h(rs: &RootSystem, eta: &PLPath, j: usize) -> Result<HFunction> {
    if !is_j_integral(rs, eta, j)? {
        return Err(Error::NotIntegral(j));
    }
    h_function(rs, eta, j)
}

pub fn root_f(rs: &RootSystem, eta: &PLPath, j: usize) -> Result<Option<PLPath>> {
    let h = integral_h(rs, eta, j)?;
    let m = h.min();
    if *h.end_value() == m {
        return Ok(None);
    }
    let i0 = h.values.iter().rposition(|v| *v == m).expect("minimum attained");
    let target = &m + &Rational::one();
    let k = (i0..h.values.len() - 1)
        .find(|&k| h.values[k + 1] >= target)
        .ok_or_else(|| Error::Internal("H_j never reaches m+1 after its last minimum".into()))?;
    let t1 = h.crossing(k, &target);
    Ok(Some(eta.reflect_between(rs, j, &h.breakpoints[i0], &t1)))
}

pub fn root_e(rs: &RootSystem, eta: &PLPath, j: usize) -> Result<Option<PLPath>> {
    let h = integral_h(rs, eta, j)?;
    let m = h.min();
    if m.is_zero() {
        return Ok(None);
    }
    let i1 = h.values.iter().position(|v| *v == m).expect("minimum attained");
    let target = &m + &Rational::one();
    let k = (0..i1)
        .rev()
        .find(|&k| h.values[k] >= target)
        .ok_or_else(|| Error::Internal("H_j never reaches m+1 before its first minimum".into()))?;
    let t0 = h.crossing(k, &target);
    Ok(Some(eta.reflect_between(rs, j, &t0, &h.breakpoints[i1])))
}

/// `epsilon_j = -m_j`.
pub fn epsilon(rs: &RootSystem, eta: &PLPath, j: usize) -> Result<i64> {
    let h = integral_h(rs, eta, j)?;
    Ok(-h.min().to_integer().expect("integral minimum"))
}

/// `phi_j = H_j(1) - m_j`.
pub fn phi(rs: &RootSystem, eta: &PLPath, j: usize) -> Result<i64> {
    let h = integral_h(rs, eta, j)?;
    Ok((h.end_value() - &h.min()).to_integer().expect("integral"))
}

pub fn e_max(rs: &RootSystem, eta: &PLPath, j: usize) -> Result<PLPath> {
    let mut cur = eta.clone();
    while let Some(next) = root_e(rs, &cur, j)? {
        cur = next;
    }
    Ok(cur)
}

pub fn f_max(rs: &RootSystem, eta: &PLPath, j: usize) -> Result<PLPath> {
    let mut cur = eta.clone();
    while let Some(next) = root_f(rs, &cur, j)? {
        cur = next;
    }
    Ok(cur)
}

/// Apply `op` `n` times, stopping at the null element.
pub fn iterate(
    rs: &RootSystem,
    eta: &PLPath,
    j: usize,
    n: u32,
    op: fn(&RootSystem, &PLPath, usize) -> Result<Option<PLPath>>,
) -> Result<Option<PLPath>> {
    let mut cur = eta.clone();
    for _ in 0..n {
        match op(rs, &cur, j)? {
            Some(next) => cur = next,
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}
