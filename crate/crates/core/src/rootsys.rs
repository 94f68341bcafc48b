//! Finite root systems: Cartan data, positive roots, coroots and the
//! weight/root coordinate systems.
//!
//! Simple roots are numbered as in Bourbaki (`1..=rank`). Weights are
//! stored in the fundamental-weight basis, so entry `i` of a weight is its
//! pairing with the simple coroot `alpha_i^vee`; roots are stored in the
//! simple-root basis. The affine node `0` is never a coordinate: its coroot
//! acts as `-theta^vee` and its simple root projects to `-theta`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::weyl::ParabolicJ;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A finite Cartan type such as `A2` or `C3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InvalidCartanType(format!("{family:?}{rank}")))
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Number of positive roots, from the classification.
    pub fn positive_root_count(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Dynkin edges `(i, j, a_ij, a_ji)` with 1-based indices, where
    /// `a_ij = <alpha_j, alpha_i^vee>`.
    fn dynkin_edges(self) -> Vec<(usize, usize, i64, i64)> {
        let n = self.rank;
        let chain = |upto: usize| (1..upto).map(|i| (i, i + 1, -1, -1)).collect::<Vec<_>>();
        match self.family {
            Family::A => chain(n),
            Family::B => {
                let mut e = chain(n - 1);
                e.push((n - 1, n, -1, -2));
                e
            }
            Family::C => {
                let mut e = chain(n - 1);
                e.push((n - 1, n, -2, -1));
                e
            }
            Family::D => {
                let mut e = chain(n - 1);
                e.push((n - 2, n, -1, -1));
                e
            }
            Family::E => {
                let mut e = vec![(1, 3, -1, -1), (2, 4, -1, -1)];
                e.extend((3..n).map(|i| (i, i + 1, -1, -1)));
                e
            }
            Family::F => vec![(1, 2, -1, -1), (2, 3, -1, -2), (3, 4, -1, -1)],
            Family::G => vec![(1, 2, -3, -1)],
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidCartanType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(family, rank).map_err(|_| bad())
    }
}

/// A vector in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVec(pub Vec<i64>);

impl RootVec {
    pub fn simple(rank: usize, j: usize) -> Self {
        let mut v = vec![0; rank];
        v[j - 1] = 1;
        RootVec(v)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    pub fn neg(&self) -> Self {
        RootVec(self.0.iter().map(|c| -c).collect())
    }

    /// Whether the support lies inside `j`.
    pub fn supported_in(&self, j: &ParabolicJ) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || j.contains(i + 1))
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A rational vector in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVec(pub Vec<Rational>);

impl WeightVec {
    pub fn zero(rank: usize) -> Self {
        WeightVec(vec![Rational::zero(); rank])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        WeightVec(coords.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    /// The fundamental weight `varpi_i` (1-based).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i - 1] = Rational::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn add(&self, other: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Rational) -> WeightVec {
        WeightVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> WeightVec {
        WeightVec(self.0.iter().map(|a| -a).collect())
    }

    /// Pairing with an integer functional given in the simple-coroot basis.
    pub fn dot(&self, functional: &[i64]) -> Rational {
        self.0
            .iter()
            .zip(functional)
            .filter(|(_, &c)| c != 0)
            .map(|(a, &c)| a * &Rational::from_integer(c))
            .sum()
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Rational::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Finite root system data for one Cartan type.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan: CartanType,
    /// `cartan_matrix[i][j] = <alpha_j, alpha_i^vee>`, 0-based.
    cartan_matrix: Vec<Vec<i64>>,
    /// `(alpha_i, alpha_i) / 2`, normalized so that short roots have 1.
    half_lengths: Vec<i64>,
    positive_roots: Vec<RootVec>,
    root_index: HashMap<RootVec, usize>,
    /// Coroot of each positive root in the simple-coroot basis.
    coroots: Vec<Vec<i64>>,
    root_weights: Vec<WeightVec>,
    highest: usize,
    inverse_cartan: Vec<Vec<Rational>>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.cartan == other.cartan
    }
}

impl Eq for RootSystem {}

impl RootSystem {
    pub fn new(cartan: CartanType) -> Result<Self> {
        let n = cartan.rank();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j, aij, aji) in cartan.dynkin_edges() {
            a[i - 1][j - 1] = aij;
            a[j - 1][i - 1] = aji;
        }

        let half_lengths = symmetrizer(&a);
        let positive_roots = enumerate_positive_roots(&a);
        if positive_roots.len() != cartan.positive_root_count() {
            return Err(Error::Internal(format!(
                "{cartan}: enumerated {} positive roots, expected {}",
                positive_roots.len(),
                cartan.positive_root_count()
            )));
        }
        let root_index = positive_roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();
        let coroots = positive_roots
            .iter()
            .map(|r| coroot_of(r, &a, &half_lengths))
            .collect::<Result<Vec<_>>>()?;
        let root_weights = positive_roots
            .iter()
            .map(|r| root_to_weight_with(&a, r))
            .collect();
        // Height-ordered enumeration puts the unique maximal root last.
        let highest = positive_roots.len() - 1;
        let inverse_cartan = invert(&a)?;

        let rs = RootSystem {
            cartan,
            cartan_matrix: a,
            half_lengths,
            positive_roots,
            root_index,
            coroots,
            root_weights,
            highest,
            inverse_cartan,
        };
        let theta = rs.highest_root();
        if rs.positive_roots.iter().any(|r| r.0.iter().zip(&theta.0).any(|(x, t)| x > t)) {
            return Err(Error::Internal(format!("{cartan}: highest root is not maximal")));
        }
        Ok(rs)
    }

    pub fn cartan(&self) -> CartanType {
        self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan_matrix
    }

    pub fn half_lengths(&self) -> &[i64] {
        &self.half_lengths
    }

    pub fn positive_roots(&self) -> &[RootVec] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &RootVec {
        &self.positive_roots[self.highest]
    }

    /// Index of a positive root in [`Self::positive_roots`].
    pub fn positive_root_index(&self, beta: &RootVec) -> Option<usize> {
        self.root_index.get(beta).copied()
    }

    /// Positive-root index and sign of a root, or `NotARoot`.
    fn root_data(&self, beta: &RootVec) -> Result<(usize, i64)> {
        if let Some(k) = self.positive_root_index(beta) {
            return Ok((k, 1));
        }
        if let Some(k) = self.positive_root_index(&beta.neg()) {
            return Ok((k, -1));
        }
        Err(Error::NotARoot(beta.to_string()))
    }

    pub fn is_root(&self, beta: &RootVec) -> bool {
        self.root_data(beta).is_ok()
    }

    /// The coroot `beta^vee` in the simple-coroot basis.
    pub fn coroot(&self, beta: &RootVec) -> Result<Vec<i64>> {
        let (k, sign) = self.root_data(beta)?;
        Ok(self.coroots[k].iter().map(|c| sign * c).collect())
    }

    /// The coroot of the `k`-th positive root.
    pub fn coroot_by_index(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    /// A root written in the fundamental-weight basis.
    pub fn root_to_weight(&self, beta: &RootVec) -> WeightVec {
        match self.positive_root_index(beta) {
            Some(k) => self.root_weights[k].clone(),
            None => root_to_weight_with(&self.cartan_matrix, beta),
        }
    }

    /// Coordinates of a weight in the simple-root basis (rational in general).
    pub fn weight_to_root_coords(&self, mu: &WeightVec) -> Vec<Rational> {
        self.inverse_cartan
            .iter()
            .map(|row| row.iter().zip(&mu.0).map(|(x, m)| x * m).sum())
            .collect()
    }

    /// Whether a weight lies in the root lattice `Q_0`.
    pub fn in_root_lattice(&self, mu: &WeightVec) -> bool {
        self.weight_to_root_coords(mu).iter().all(Rational::is_integer)
    }

    /// `<mu, beta^vee>`.
    pub fn pairing(&self, mu: &WeightVec, beta: &RootVec) -> Result<Rational> {
        Ok(mu.dot(&self.coroot(beta)?))
    }

    /// `r_beta(mu) = mu - <mu, beta^vee> beta`.
    pub fn reflect(&self, mu: &WeightVec, beta: &RootVec) -> Result<WeightVec> {
        let c = self.pairing(mu, beta)?;
        Ok(mu.sub(&self.root_to_weight(beta).scale(&c)))
    }

    /// Reflection of a root by another root.
    pub fn reflect_root(&self, gamma: &RootVec, beta: &RootVec) -> Result<RootVec> {
        let c = self.pairing(&self.root_to_weight(gamma), beta)?;
        let c = c
            .to_integer()
            .ok_or_else(|| Error::Internal("non-integral root pairing".into()))?;
        Ok(RootVec(
            gamma.0.iter().zip(&beta.0).map(|(g, b)| g - c * b).collect(),
        ))
    }

    /// Number of affine nodes `0..=rank`.
    pub fn node_count(&self) -> usize {
        self.rank() + 1
    }

    /// The coroot `alpha_j^vee` of node `j` as a functional on weight
    /// coordinates; node `0` gives `-theta^vee`.
    pub fn node_coroot(&self, j: usize) -> Vec<i64> {
        self.check_node(j);
        if j == 0 {
            self.coroots[self.highest].iter().map(|c| -c).collect()
        } else {
            let mut v = vec![0; self.rank()];
            v[j - 1] = 1;
            v
        }
    }

    /// The simple root `alpha_j` in weight coordinates; node `0` gives
    /// `-theta`.
    pub fn node_root_weight(&self, j: usize) -> WeightVec {
        self.check_node(j);
        if j == 0 {
            self.root_weights[self.highest].neg()
        } else {
            WeightVec(
                self.cartan_matrix
                    .iter()
                    .map(|row| Rational::from_integer(row[j - 1]))
                    .collect(),
            )
        }
    }

    /// `<mu, alpha_j^vee>` for any node `j` in `0..=rank`.
    pub fn node_pairing(&self, mu: &WeightVec, j: usize) -> Rational {
        mu.dot(&self.node_coroot(j))
    }

    /// The simple reflection `s_j` on weights, with `s_0 = r_theta`.
    pub fn node_reflect(&self, mu: &WeightVec, j: usize) -> WeightVec {
        let c = self.node_pairing(mu, j);
        mu.sub(&self.node_root_weight(j).scale(&c))
    }

    fn check_node(&self, j: usize) {
        assert!(j <= self.rank(), "node {j} out of range for {}", self.cartan);
    }

    /// `rho`, the sum of the fundamental weights.
    pub fn rho(&self) -> WeightVec {
        WeightVec::from_ints(&vec![1; self.rank()])
    }

    /// `rho_J`, half the sum of the positive roots of the parabolic subsystem.
    pub fn rho_j(&self, j: &ParabolicJ) -> WeightVec {
        let half = Rational::new(1, 2);
        self.positive_roots
            .iter()
            .zip(&self.root_weights)
            .filter(|(r, _)| r.supported_in(j))
            .fold(WeightVec::zero(self.rank()), |acc, (_, w)| acc.add(w))
            .scale(&half)
    }

    /// `<rho - rho_J, beta^vee>` for `beta` a positive root outside `Delta_J`.
    pub fn rho_pairing(&self, j: &ParabolicJ, beta: &RootVec) -> Result<Rational> {
        if self.positive_root_index(beta).is_none() {
            return Err(Error::NotAPositiveRoot(beta.to_string()));
        }
        if beta.supported_in(j) {
            return Err(Error::RootInParabolic(beta.to_string()));
        }
        let diff = self.rho().sub(&self.rho_j(j));
        self.pairing(&diff, beta)
    }
}

fn root_to_weight_with(a: &[Vec<i64>], beta: &RootVec) -> WeightVec {
    WeightVec(
        a.iter()
            .map(|row| Rational::from_integer(row.iter().zip(&beta.0).map(|(x, c)| x * c).sum()))
            .collect(),
    )
}

/// Half squared lengths `d_i` with `d_i a_ij = d_j a_ji`, scaled to
/// positive integers with minimum 1.
fn symmetrizer(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    d[0] = Some(Rational::one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if i != j && a[i][j] != 0 && d[j].is_none() {
                let di = d[i].clone().unwrap();
                d[j] = Some(&di * &Rational::new(a[i][j], a[j][i]));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<Rational> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let min = d.iter().min().unwrap().clone();
    d.iter()
        .map(|x| (x / &min).to_integer().expect("integral symmetrizer"))
        .collect()
}

/// Positive roots by breadth-first closure from the simple roots using
/// root strings, ordered by height and then lexicographically.
fn enumerate_positive_roots(a: &[Vec<i64>]) -> Vec<RootVec> {
    let n = a.len();
    let mut all: Vec<RootVec> = Vec::new();
    let mut known: HashMap<RootVec, ()> = HashMap::new();
    let mut level: Vec<RootVec> = (1..=n).map(|j| RootVec::simple(n, j)).collect();
    while !level.is_empty() {
        level.sort();
        for r in &level {
            known.insert(r.clone(), ());
        }
        all.extend(level.iter().cloned());
        let mut next: Vec<RootVec> = Vec::new();
        for beta in &level {
            for i in 0..n {
                // p = largest k with beta - k alpha_i a root
                let mut p = 0;
                loop {
                    let mut down = beta.clone();
                    down.0[i] -= p + 1;
                    if known.contains_key(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pair: i64 = (0..n).map(|k| a[i][k] * beta.0[k]).sum();
                let q = p - pair;
                if q > 0 {
                    let mut up = beta.clone();
                    up.0[i] += 1;
                    if !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        level = next;
    }
    all
}

fn coroot_of(beta: &RootVec, a: &[Vec<i64>], d: &[i64]) -> Result<Vec<i64>> {
    let n = a.len();
    // (beta, beta) / 2 with (alpha_i, alpha_j) = d_i a_ij
    let mut twice_half = 0i64;
    for i in 0..n {
        for j in 0..n {
            twice_half += beta.0[i] * beta.0[j] * d[i] * a[i][j];
        }
    }
    let half_len = twice_half / 2;
    (0..n)
        .map(|i| {
            let num = beta.0[i] * d[i];
            if num % half_len != 0 {
                Err(Error::Internal(format!("non-integral coroot for {beta}")))
            } else {
                Ok(num / half_len)
            }
        })
        .collect()
}

fn invert(a: &[Vec<i64>]) -> Result<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(x)).collect();
            r.extend((0..n).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &(p * &factor);
                }
            }
        }
    }
    Ok(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    /// Independent closure oracle: repeatedly reflect the simple roots by
    /// simple reflections until nothing new appears.
    fn closure_oracle(r: &RootSystem) -> Vec<RootVec> {
        let n = r.rank();
        let mut roots: Vec<RootVec> = (1..=n).map(|j| RootVec::simple(n, j)).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for beta in roots.clone() {
                for i in 0..n {
                    let pair: i64 = (0..n).map(|k| r.cartan_matrix()[i][k] * beta.0[k]).sum();
                    let mut img = beta.clone();
                    img.0[i] -= pair;
                    if !roots.contains(&img) {
                        roots.push(img);
                        changed = true;
                    }
                }
            }
        }
        let mut pos: Vec<RootVec> = roots.into_iter().filter(RootVec::is_positive).collect();
        pos.sort();
        pos
    }

    #[test]
    fn a2_roots() {
        let r = rs("A2");
        assert_eq!(
            r.positive_roots(),
            &[RootVec(vec![0, 1]), RootVec(vec![1, 0]), RootVec(vec![1, 1])][..]
        );
        assert_eq!(r.highest_root(), &RootVec(vec![1, 1]));
    }

    #[test]
    fn c2_and_g2_roots() {
        let c2 = rs("C2");
        assert_eq!(c2.positive_roots().len(), 4);
        assert_eq!(c2.highest_root(), &RootVec(vec![2, 1]));
        let g2 = rs("G2");
        assert_eq!(g2.positive_roots().len(), 6);
        assert_eq!(g2.highest_root(), &RootVec(vec![3, 2]));
    }

    #[test]
    fn roots_match_closure_oracle() {
        for t in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2", "F4", "E6"] {
            let r = rs(t);
            let mut got = r.positive_roots().to_vec();
            got.sort();
            assert_eq!(got, closure_oracle(&r), "{t}");
        }
    }

    #[test]
    fn counts_for_all_families() {
        for t in ["A4", "B4", "C4", "D5", "E7", "E8", "F4"] {
            let ct: CartanType = t.parse().unwrap();
            assert_eq!(rs(t).positive_roots().len(), ct.positive_root_count(), "{t}");
        }
    }

    #[test]
    fn invalid_types() {
        for t in ["E5", "E9", "F3", "G3", "D3", "B1", "A0", "X2", "A", ""] {
            assert!(t.parse::<CartanType>().is_err(), "{t}");
        }
    }

    #[test]
    fn pairing_examples() {
        let a2 = rs("A2");
        let w1 = WeightVec::fundamental(2, 1);
        assert_eq!(a2.pairing(&w1, &RootVec(vec![1, 0])).unwrap(), q(1, 1));
        assert_eq!(a2.pairing(&a2.rho(), a2.highest_root()).unwrap(), q(2, 1));
        let c2 = rs("C2");
        let w1 = WeightVec::fundamental(2, 1);
        assert_eq!(c2.pairing(&w1, c2.highest_root()).unwrap(), q(1, 1));
        // alpha_1 + alpha_2 is short in C2: its coroot is alpha_1^vee + 2 alpha_2^vee.
        assert_eq!(c2.coroot(&RootVec(vec![1, 1])).unwrap(), vec![1, 2]);
        assert!(a2.pairing(&w1, &RootVec(vec![2, 1])).is_err());
    }

    #[test]
    fn reflect_examples() {
        let a2 = rs("A2");
        let w1 = WeightVec::fundamental(2, 1);
        let a1 = RootVec(vec![1, 0]);
        assert_eq!(a2.reflect(&w1, &a1).unwrap(), WeightVec::from_ints(&[-1, 1]));
        let theta = a2.highest_root().clone();
        let expected = w1.sub(&a2.root_to_weight(&theta));
        assert_eq!(a2.reflect(&w1, &theta).unwrap(), expected);
    }

    #[test]
    fn reflect_is_involution_and_integral() {
        for t in ["A2", "C2", "G2", "B3"] {
            let r = rs(t);
            let n = r.rank();
            let weights: Vec<WeightVec> = (0..(3i64.pow(n as u32)))
                .map(|mut k| {
                    WeightVec::from_ints(
                        &(0..n)
                            .map(|_| {
                                let c = k % 3 - 1;
                                k /= 3;
                                c
                            })
                            .collect::<Vec<_>>(),
                    )
                })
                .collect();
            for mu in &weights {
                for beta in r.positive_roots() {
                    let once = r.reflect(mu, beta).unwrap();
                    assert!(once.is_integral());
                    assert_eq!(&r.reflect(&once, beta).unwrap(), mu);
                }
            }
        }
    }

    #[test]
    fn rho_pairing_examples() {
        let a2 = rs("A2");
        let theta = a2.highest_root().clone();
        assert_eq!(a2.rho_pairing(&ParabolicJ::empty(), &theta).unwrap(), q(2, 1));
        let j2 = ParabolicJ::new(2, [2]).unwrap();
        assert_eq!(a2.rho_pairing(&j2, &theta).unwrap(), q(3, 2));
        assert_eq!(a2.rho_pairing(&j2, &RootVec(vec![1, 0])).unwrap(), q(3, 2));
        assert!(matches!(
            a2.rho_pairing(&j2, &RootVec(vec![0, 1])),
            Err(Error::RootInParabolic(_))
        ));
    }

    #[test]
    fn structural_invariants() {
        for t in ["A3", "B3", "C3", "D4", "G2", "F4"] {
            let r = rs(t);
            let n = r.rank();
            // closure under addition
            for b in r.positive_roots() {
                for g in r.positive_roots() {
                    let s = RootVec(b.0.iter().zip(&g.0).map(|(x, y)| x + y).collect());
                    if r.is_root(&s) {
                        assert!(r.positive_root_index(&s).is_some());
                    }
                }
            }
            // theta dominant
            let theta_w = r.root_to_weight(r.highest_root());
            assert!(theta_w.0.iter().all(|c| !c.is_negative()), "{t}");
            // 2<rho - rho_J, beta^vee> integral for every J
            for mask in 0u32..(1 << n) {
                let j = ParabolicJ::new(n, (1..=n).filter(|i| mask & (1 << (i - 1)) != 0)).unwrap();
                for b in r.positive_roots().iter().filter(|b| !b.supported_in(&j)) {
                    let v = r.rho_pairing(&j, b).unwrap();
                    assert!((&v * &q(2, 1)).is_integer());
                    assert!(v.is_positive());
                }
            }
        }
    }

    #[test]
    fn weight_root_coordinates() {
        let a2 = rs("A2");
        let theta_w = a2.root_to_weight(a2.highest_root());
        assert_eq!(a2.weight_to_root_coords(&theta_w), vec![q(1, 1), q(1, 1)]);
        assert!(!a2.in_root_lattice(&WeightVec::fundamental(2, 1)));
        assert_eq!(
            a2.weight_to_root_coords(&WeightVec::fundamental(2, 1)),
            vec![q(2, 3), q(1, 3)]
        );
    }

    #[test]
    fn affine_node() {
        let a1 = rs("A1");
        let w = WeightVec::fundamental(1, 1);
        assert_eq!(a1.node_pairing(&w, 0), q(-1, 1));
        assert_eq!(a1.node_root_weight(0), WeightVec::from_ints(&[-2]));
        assert_eq!(a1.node_reflect(&w, 0), WeightVec::from_ints(&[-1]));
    }
}
