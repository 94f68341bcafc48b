//! Quantum LS paths of a fixed shape: membership, exhaustive enumeration and
//! the combinatorial description of the root operator `f_j`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path::{self, PLPath, Segment};
use crate::qbg::{DistMatrix, Qbg};
use crate::rational::Rational;
use crate::rootsys::{CartanType, RootSystem, WeightVec};
use crate::weyl::{ParabolicJ, WeylElem};

/// Which flavour of directed sigma-path certifies a turning point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Some directed sigma-path exists.
    Tilde,
    /// A directed sigma-path of minimal length in the whole graph exists.
    Hat,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tilde" => Ok(Variant::Tilde),
            "hat" => Ok(Variant::Hat),
            _ => Err(Error::Parse(format!("unknown variant {s:?}"))),
        }
    }
}

/// Everything determined by the shape weight `Lambda`.
#[derive(Debug, Clone)]
pub struct ShapeData {
    rs: Arc<RootSystem>,
    lambda: WeightVec,
    j: ParabolicJ,
    qbg: Qbg,
    denom_bound: i64,
    /// Distinct values `<Lambda, beta^vee>` over edge labels.
    label_values: BTreeSet<i64>,
    /// `x Lambda` for each vertex of the graph.
    orbit: Vec<WeightVec>,
    orbit_index: HashMap<WeightVec, usize>,
    /// Distances through edges usable at times with reduced denominator `q`.
    restricted: HashMap<i64, DistMatrix>,
}

impl ShapeData {
    pub fn new(rs: &Arc<RootSystem>, lambda: WeightVec) -> Result<Self> {
        let n = rs.rank();
        if lambda.rank() != n
            || !lambda.is_integral()
            || lambda.0.iter().any(Rational::is_negative)
        {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let j = ParabolicJ::new(n, (1..=n).filter(|&i| lambda.0[i - 1].is_zero()))?;
        let qbg = Qbg::build(rs, &j)?;
        let value_of = |k: usize| {
            lambda
                .dot(rs.coroot_by_index(k))
                .to_integer()
                .expect("integral pairing")
        };
        let label_values: BTreeSet<i64> = rs
            .positive_roots()
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.supported_in(&j))
            .map(|(k, _)| value_of(k))
            .collect();
        let denom_bound = label_values.iter().copied().max().unwrap_or(0);
        let orbit: Vec<WeightVec> = qbg.vertices().iter().map(|x| x.act_weight(&lambda)).collect();
        let orbit_index = orbit.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut restricted = HashMap::new();
        for q in 2..=denom_bound {
            if label_values.iter().any(|v| v % q == 0) {
                let m = qbg.distances_where(|e| value_of(e.label_index) % q == 0);
                restricted.insert(q, m);
            }
        }
        Ok(ShapeData {
            rs: Arc::clone(rs),
            lambda,
            j,
            qbg,
            denom_bound,
            label_values,
            orbit,
            orbit_index,
            restricted,
        })
    }

    pub fn from_type(cartan: CartanType, coords: &[i64]) -> Result<Self> {
        let rs = Arc::new(RootSystem::new(cartan)?);
        if coords.len() != rs.rank() {
            return Err(Error::NotDominant(format!("{coords:?} has the wrong length for {cartan}")));
        }
        Self::new(&rs, WeightVec::from_ints(coords))
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn lambda(&self) -> &WeightVec {
        &self.lambda
    }

    pub fn parabolic(&self) -> &ParabolicJ {
        &self.j
    }

    pub fn qbg(&self) -> &Qbg {
        &self.qbg
    }

    /// `D = max <Lambda, beta^vee>` over labels.
    pub fn denom_bound(&self) -> i64 {
        self.denom_bound
    }

    /// The same root system with `n Lambda`.
    pub fn scaled(&self, n: i64) -> Result<ShapeData> {
        let k = Rational::from_integer(n);
        ShapeData::new(&self.rs, self.lambda.scale(&k))
    }

    /// Candidate turning times: `p / v` in `(0,1)` for label values `v`.
    pub fn admissible_times(&self) -> Vec<Rational> {
        let set: BTreeSet<Rational> = self
            .label_values
            .iter()
            .flat_map(|&v| (1..v).map(move |p| Rational::new(p, v)))
            .collect();
        set.into_iter().collect()
    }

    fn vertex(&self, x: &WeylElem) -> Result<usize> {
        self.qbg.vertex_index(x).map_err(|_| Error::NotMinimalRep(x.to_string()))
    }

    /// Length of a shortest directed sigma-path from vertex `y` to vertex `x`.
    fn sigma_distance(&self, sigma: &Rational, x: usize, y: usize) -> Option<usize> {
        if x == y {
            return Some(0);
        }
        let q = sigma.denom_i64().expect("small denominator");
        self.restricted.get(&q).and_then(|m| m[x][y])
    }

    fn turning_ok(&self, variant: Variant, sigma: &Rational, x: usize, y: usize) -> bool {
        match (variant, self.sigma_distance(sigma, x, y)) {
            (_, None) => false,
            (Variant::Tilde, Some(_)) => true,
            (Variant::Hat, Some(l)) => Some(l) == self.qbg.dist_matrix()[x][y],
        }
    }

    pub fn eta_straight(&self, x: &WeylElem) -> Result<RationalPath> {
        self.vertex(x)?;
        Ok(RationalPath {
            cosets: vec![x.clone()],
            times: vec![Rational::zero(), Rational::one()],
        })
    }

    /// `eta_Lambda`, the straight line to `Lambda`.
    pub fn seed(&self) -> RationalPath {
        self.eta_straight(&self.qbg.vertices()[0]).expect("identity is a vertex")
    }

    fn indices(&self, eta: &RationalPath) -> Result<Vec<usize>> {
        eta.cosets.iter().map(|x| self.vertex(x)).collect()
    }

    pub fn is_member(&self, eta: &RationalPath, variant: Variant) -> Result<bool> {
        let idx = self.indices(eta)?;
        Ok((1..eta.len()).all(|k| self.turning_ok(variant, &eta.times[k], idx[k - 1], idx[k])))
    }

    pub fn to_pl_path(&self, eta: &RationalPath) -> Result<PLPath> {
        let idx = self.indices(eta)?;
        PLPath::new(
            idx.iter()
                .enumerate()
                .map(|(k, &i)| Segment {
                    direction: self.orbit[i].clone(),
                    duration: &eta.times[k + 1] - &eta.times[k],
                })
                .collect(),
        )
    }

    /// Read off cosets from the velocities of a path directed along `W_0 Lambda`.
    pub fn from_pl_path(&self, p: &PLPath) -> Result<RationalPath> {
        let cosets = p
            .segments()
            .iter()
            .map(|s| {
                self.orbit_index
                    .get(&s.direction)
                    .map(|&i| self.qbg.vertices()[i].clone())
                    .ok_or_else(|| Error::NotInOrbit(s.direction.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        RationalPath::new(cosets, p.breakpoints())
    }

    /// All members of the given variant, sorted.
    pub fn enumerate(&self, variant: Variant, cap: usize) -> Result<Vec<RationalPath>> {
        let times = self.admissible_times();
        let count = AtomicUsize::new(0);
        let n = self.qbg.vertices().len();
        let parts: Vec<Result<Vec<RationalPath>>> = (0..n)
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                let mut walk = Walk {
                    shape: self,
                    variant,
                    times: &times,
                    cap,
                    count: &count,
                    cosets: vec![first],
                    time_idx: vec![],
                };
                walk.extend(&mut out)?;
                Ok(out)
            })
            .collect();
        let mut all = Vec::new();
        for p in parts {
            all.extend(p?);
        }
        all.sort();
        Ok(all)
    }

    /// `f_j` via the explicit rewriting of cosets and turning times.
    pub fn combinatorial_f(&self, eta: &RationalPath, j: usize) -> Result<Option<RationalPath>> {
        let rs = &self.rs;
        if j > rs.rank() {
            return Err(Error::IndexOutOfRange { index: j, rank: rs.rank() });
        }
        if !self.is_member(eta, Variant::Tilde)? {
            return Err(Error::NotMember);
        }
        let idx = self.indices(eta)?;
        let s = eta.len();
        let coroot = rs.node_coroot(j);
        // slope of H_j on segment p (1-based) is <x_p Lambda, alpha_j^vee>
        let slope = |p: usize| self.orbit[idx[p - 1]].dot(&coroot);
        let mut h = vec![Rational::zero()];
        for p in 1..=s {
            let d = &eta.times[p] - &eta.times[p - 1];
            let next = &h[p - 1] + &(&slope(p) * &d);
            h.push(next);
        }
        let m = h.iter().min().cloned().expect("nonempty");
        if h[s] == m {
            return Ok(None);
        }
        let u = h.iter().rposition(|v| *v == m).expect("minimum attained");
        let target = &m + &Rational::one();
        // t1 lies in (sigma_v, sigma_{v+1}]
        let v = (u..s)
            .find(|&p| h[p + 1] >= target)
            .ok_or_else(|| Error::Internal("H_j never reaches m+1".into()))?;
        let t1 = &eta.times[v] + &(&(&target - &h[v]) / &slope(v + 1));
        for p in u + 1..=v + 1 {
            if !slope(p).is_positive() {
                return Err(Error::Internal(format!(
                    "H_{j} not increasing on segment {p} between t0 and t1"
                )));
            }
        }
        let s_j = if j == 0 {
            WeylElem::reflection(rs, rs.highest_root())?
        } else {
            WeylElem::simple_reflection(rs, j)?
        };
        let x = |p: usize| &eta.cosets[p - 1];
        let reflected = |p: usize| (&s_j * x(p)).min_coset_rep(&self.j);
        let merge = u >= 1 && *x(u) == reflected(u + 1);
        let interior = t1 < eta.times[v + 1];

        let mut cosets: Vec<WeylElem> = (1..=u).map(|p| x(p).clone()).collect();
        let first_reflected = if merge { u + 2 } else { u + 1 };
        cosets.extend((first_reflected..=v + 1).map(reflected));
        let rest_from = if interior { v + 1 } else { v + 2 };
        cosets.extend((rest_from..=s).map(|p| x(p).clone()));

        let mut times: Vec<Rational> = (0..=v)
            .filter(|&k| !(merge && k == u))
            .map(|k| eta.times[k].clone())
            .collect();
        if interior {
            times.push(t1);
        }
        times.extend(eta.times[v + 1..].iter().cloned());

        RationalPath::new(cosets, times)
            .map(Some)
            .map_err(|e| Error::Internal(format!("case rewriting produced an invalid path: {e}")))
    }

    /// `e_j` through the generic operator followed by re-segmentation.
    pub fn e_on_rational(&self, eta: &RationalPath, j: usize) -> Result<Option<RationalPath>> {
        if !self.is_member(eta, Variant::Tilde)? {
            return Err(Error::NotMember);
        }
        let p = self.to_pl_path(eta)?;
        match path::root_e(&self.rs, &p, j)? {
            Some(q) => self.from_pl_path(&q).map(Some),
            None => Ok(None),
        }
    }

    /// `f_j` through the generic operator followed by re-segmentation.
    pub fn f_on_rational(&self, eta: &RationalPath, j: usize) -> Result<Option<RationalPath>> {
        let p = self.to_pl_path(eta)?;
        match path::root_f(&self.rs, &p, j)? {
            Some(q) => self.from_pl_path(&q).map(Some),
            None => Ok(None),
        }
    }

    /// Like [`Self::e_on_rational`] without the membership precondition.
    pub fn e_generic(&self, eta: &RationalPath, j: usize) -> Result<Option<RationalPath>> {
        let p = self.to_pl_path(eta)?;
        match path::root_e(&self.rs, &p, j)? {
            Some(q) => self.from_pl_path(&q).map(Some),
            None => Ok(None),
        }
    }
}

/// Depth-first extension of a partial path `(x_1..x_k; 0, sigma_1..sigma_{k-1})`.
struct Walk<'a> {
    shape: &'a ShapeData,
    variant: Variant,
    times: &'a [Rational],
    cap: usize,
    count: &'a AtomicUsize,
    cosets: Vec<usize>,
    time_idx: Vec<usize>,
}

impl Walk<'_> {
    fn extend(&mut self, out: &mut Vec<RationalPath>) -> Result<()> {
        if self.count.fetch_add(1, Ordering::Relaxed) >= self.cap {
            return Err(Error::CapExceeded { cap: self.cap });
        }
        out.push(self.finish());
        let start = self.time_idx.last().map_or(0, |&i| i + 1);
        let x = *self.cosets.last().expect("nonempty");
        for ti in start..self.times.len() {
            let sigma = &self.times[ti];
            for y in 0..self.shape.qbg.vertices().len() {
                if y != x && self.shape.turning_ok(self.variant, sigma, x, y) {
                    self.cosets.push(y);
                    self.time_idx.push(ti);
                    self.extend(out)?;
                    self.cosets.pop();
                    self.time_idx.pop();
                }
            }
        }
        Ok(())
    }

    fn finish(&self) -> RationalPath {
        let verts = self.shape.qbg.vertices();
        let mut times = vec![Rational::zero()];
        times.extend(self.time_idx.iter().map(|&i| self.times[i].clone()));
        times.push(Rational::one());
        RationalPath {
            cosets: self.cosets.iter().map(|&i| verts[i].clone()).collect(),
            times,
        }
    }
}

/// `(x_1, ..., x_s; sigma_0, ..., sigma_s)`: the path with velocity
/// `x_k Lambda` on `[sigma_{k-1}, sigma_k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPath {
    cosets: Vec<WeylElem>,
    times: Vec<Rational>,
}

impl RationalPath {
    pub fn new(cosets: Vec<WeylElem>, times: Vec<Rational>) -> Result<Self> {
        if cosets.is_empty() {
            return Err(Error::MalformedPath("no cosets".into()));
        }
        if times.len() != cosets.len() + 1 {
            return Err(Error::MalformedPath(format!(
                "{} cosets need {} times, got {}",
                cosets.len(),
                cosets.len() + 1,
                times.len()
            )));
        }
        if !times[0].is_zero() || *times.last().unwrap() != Rational::one() {
            return Err(Error::MalformedPath("times must run from 0 to 1".into()));
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MalformedPath("times must increase strictly".into()));
        }
        if cosets.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedPath("adjacent cosets must differ".into()));
        }
        Ok(RationalPath { cosets, times })
    }

    pub fn cosets(&self) -> &[WeylElem] {
        &self.cosets
    }

    pub fn times(&self) -> &[Rational] {
        &self.times
    }

    /// Number of segments `s`.
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for RationalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.cosets.iter().map(WeylElem::to_string).collect();
        let t: Vec<String> = self.times.iter().map(Rational::to_string).collect();
        write!(f, "({};{})", c.join(","), t.join(","))
    }
}
