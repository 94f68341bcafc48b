//! The finite Weyl group `W_0`, parabolic subgroups and minimal coset
//! representatives.
//!
//! An element is identified by the images of the simple roots (its matrix
//! on the simple-root basis). Reduced words are recovered on demand by
//! stripping right descents.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Mul;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rootsys::{CartanType, RootSystem, RootVec, WeightVec};

/// A subset `J` of the finite Dynkin nodes `1..=rank`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParabolicJ {
    indices: BTreeSet<usize>,
}

impl ParabolicJ {
    pub fn new(rank: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > rank) {
            return Err(Error::IndexOutOfRange { index: bad, rank });
        }
        Ok(ParabolicJ { indices })
    }

    pub fn empty() -> Self {
        ParabolicJ::default()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.indices.contains(&j)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Display for ParabolicJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// An element of the finite Weyl group.
#[derive(Clone)]
pub struct WeylElem {
    rs: Arc<RootSystem>,
    /// Column-major: column `k` is the image of `alpha_{k+1}`.
    root_matrix: Vec<i64>,
    /// Row-major action on fundamental-weight coordinates.
    weight_matrix: Vec<i64>,
    length: usize,
}

impl WeylElem {
    fn from_matrices(rs: &Arc<RootSystem>, root_matrix: Vec<i64>, weight_matrix: Vec<i64>) -> Self {
        let mut w = WeylElem {
            rs: Arc::clone(rs),
            root_matrix,
            weight_matrix,
            length: 0,
        };
        w.length = rs
            .positive_roots()
            .iter()
            .filter(|b| w.act_root(b).is_negative())
            .count();
        w
    }

    pub fn identity(rs: &Arc<RootSystem>) -> Self {
        let n = rs.rank();
        let mut id = vec![0; n * n];
        for i in 0..n {
            id[i * n + i] = 1;
        }
        WeylElem {
            rs: Arc::clone(rs),
            root_matrix: id.clone(),
            weight_matrix: id,
            length: 0,
        }
    }

    /// The simple reflection `r_j`, `j` in `1..=rank`.
    pub fn simple_reflection(rs: &Arc<RootSystem>, j: usize) -> Result<Self> {
        let n = rs.rank();
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange { index: j, rank: n });
        }
        let a = rs.cartan_matrix();
        let jj = j - 1;
        let mut root = vec![0; n * n];
        let mut weight = vec![0; n * n];
        for k in 0..n {
            // r_j(alpha_k) = alpha_k - a_jk alpha_j
            root[k * n + k] += 1;
            root[k * n + jj] -= a[jj][k];
            // r_j(mu) = mu - mu_j alpha_j
            weight[k * n + k] += 1;
            weight[k * n + jj] -= a[k][jj];
        }
        Ok(WeylElem {
            rs: Arc::clone(rs),
            root_matrix: root,
            weight_matrix: weight,
            length: 1,
        })
    }

    /// The reflection `r_beta` for a positive root `beta`.
    pub fn reflection(rs: &Arc<RootSystem>, beta: &RootVec) -> Result<Self> {
        if rs.positive_root_index(beta).is_none() {
            return Err(Error::NotAPositiveRoot(beta.to_string()));
        }
        let n = rs.rank();
        let a = rs.cartan_matrix();
        let coroot = rs.coroot(beta)?;
        let beta_w: Vec<i64> = (0..n)
            .map(|i| (0..n).map(|k| a[i][k] * beta.0[k]).sum())
            .collect();
        let mut root = vec![0; n * n];
        let mut weight = vec![0; n * n];
        for k in 0..n {
            let c: i64 = (0..n).map(|i| coroot[i] * a[i][k]).sum();
            root[k * n + k] += 1;
            for i in 0..n {
                root[k * n + i] -= c * beta.0[i];
            }
        }
        for i in 0..n {
            weight[i * n + i] += 1;
            for k in 0..n {
                weight[i * n + k] -= beta_w[i] * coroot[k];
            }
        }
        Ok(Self::from_matrices(rs, root, weight))
    }

    /// Product of simple reflections `r_{w[0]} r_{w[1]} ...` (1-based).
    pub fn from_word(rs: &Arc<RootSystem>, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(rs);
        for &j in word {
            w = w.mul_unchecked(&Self::simple_reflection(rs, j)?);
        }
        Ok(w)
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn cartan(&self) -> CartanType {
        self.rs.cartan()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Images of the simple roots; this determines the element.
    pub fn canonical_form(&self) -> Vec<RootVec> {
        (1..=self.rank()).map(|j| self.simple_image(j)).collect()
    }

    pub fn simple_image(&self, j: usize) -> RootVec {
        let n = self.rank();
        RootVec(self.root_matrix[(j - 1) * n..j * n].to_vec())
    }

    fn mul_unchecked(&self, other: &WeylElem) -> WeylElem {
        let n = self.rank();
        let mut root = vec![0; n * n];
        let mut weight = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let mut r = 0;
                let mut w = 0;
                for m in 0..n {
                    // column-major root matrices, row-major weight matrices
                    r += self.root_matrix[m * n + i] * other.root_matrix[k * n + m];
                    w += self.weight_matrix[i * n + m] * other.weight_matrix[m * n + k];
                }
                root[k * n + i] = r;
                weight[i * n + k] = w;
            }
        }
        Self::from_matrices(&self.rs, root, weight)
    }

    /// `self * other` (apply `other` first).
    pub fn try_mul(&self, other: &WeylElem) -> Result<WeylElem> {
        if self.rs.cartan() != other.rs.cartan() {
            return Err(Error::MixedRootSystems);
        }
        Ok(self.mul_unchecked(other))
    }

    pub fn inverse(&self) -> WeylElem {
        let mut word = self.reduced_word();
        word.reverse();
        Self::from_word(&self.rs, &word).expect("valid word")
    }

    pub fn act_root(&self, beta: &RootVec) -> RootVec {
        let n = self.rank();
        let mut out = vec![0; n];
        for (k, &c) in beta.0.iter().enumerate() {
            if c != 0 {
                for (i, o) in out.iter_mut().enumerate() {
                    *o += c * self.root_matrix[k * n + i];
                }
            }
        }
        RootVec(out)
    }

    pub fn act_weight(&self, mu: &WeightVec) -> WeightVec {
        let n = self.rank();
        WeightVec(
            (0..n)
                .map(|i| {
                    (0..n)
                        .filter(|&k| self.weight_matrix[i * n + k] != 0 && !mu.0[k].is_zero())
                        .map(|k| &mu.0[k] * &Rational::from_integer(self.weight_matrix[i * n + k]))
                        .sum()
                })
                .collect(),
        )
    }

    /// `l(w r_j) < l(w)`.
    pub fn has_right_descent(&self, j: usize) -> bool {
        self.simple_image(j).is_negative()
    }

    /// `l(r_j w) < l(w)`.
    pub fn has_left_descent(&self, j: usize) -> bool {
        self.inverse().simple_image(j).is_negative()
    }

    /// Reduced word (1-based), obtained by stripping the smallest right
    /// descent repeatedly.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length);
        let mut w = self.clone();
        while !w.is_identity() {
            let j = (1..=self.rank())
                .find(|&j| w.has_right_descent(j))
                .expect("non-identity element has a descent");
            word.push(j);
            w = w.mul_unchecked(&Self::simple_reflection(&self.rs, j).unwrap());
        }
        word.reverse();
        word
    }

    /// The minimal-length element `floor(w)_J` of the coset `w W_J`.
    pub fn min_coset_rep(&self, j: &ParabolicJ) -> WeylElem {
        let mut w = self.clone();
        while let Some(i) = j.iter().find(|&i| w.has_right_descent(i)) {
            w = w.mul_unchecked(&Self::simple_reflection(&self.rs, i).unwrap());
        }
        w
    }

    pub fn is_min_coset_rep(&self, j: &ParabolicJ) -> bool {
        j.iter().all(|i| !self.has_right_descent(i))
    }
}

impl PartialEq for WeylElem {
    fn eq(&self, other: &Self) -> bool {
        self.rs.cartan() == other.rs.cartan() && self.root_matrix == other.root_matrix
    }
}

impl Eq for WeylElem {}

impl Hash for WeylElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rs.cartan().hash(state);
        self.root_matrix.hash(state);
    }
}

impl Ord for WeylElem {
    /// Length first, then the canonical form lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.length
            .cmp(&other.length)
            .then_with(|| self.canonical_form().cmp(&other.canonical_form()))
            .then_with(|| self.rs.cartan().cmp(&other.rs.cartan()))
    }
}

impl PartialOrd for WeylElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul<&WeylElem> for &WeylElem {
    type Output = WeylElem;

    /// Panics on elements from different root systems; see [`WeylElem::try_mul`].
    fn mul(self, rhs: &WeylElem) -> WeylElem {
        self.try_mul(rhs).expect("elements of the same Weyl group")
    }
}

impl fmt::Debug for WeylElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElem({})", self)
    }
}

impl fmt::Display for WeylElem {
    /// `e` for the identity, otherwise `s1s2...` from the reduced word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self.reduced_word();
        if word.is_empty() {
            return write!(f, "e");
        }
        for j in word {
            write!(f, "s{j}")?;
        }
        Ok(())
    }
}

/// All of `W_0`, sorted by length and then canonical form.
pub fn enumerate_group(rs: &Arc<RootSystem>) -> Vec<WeylElem> {
    enumerate_minimal_reps(rs, &ParabolicJ::empty())
}

/// `W_0^J`, sorted by length and then canonical form.
pub fn enumerate_minimal_reps(rs: &Arc<RootSystem>, j: &ParabolicJ) -> Vec<WeylElem> {
    let gens: Vec<WeylElem> = (1..=rs.rank())
        .map(|i| WeylElem::simple_reflection(rs, i).unwrap())
        .collect();
    let id = WeylElem::identity(rs);
    let mut seen: HashSet<WeylElem> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for s in &gens {
            // left multiplication permutes the cosets w W_J
            let next = s.mul_unchecked(&w).min_coset_rep(j);
            if seen.insert(next.clone()) {
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> Arc<RootSystem> {
        Arc::new(RootSystem::new(s.parse().unwrap()).unwrap())
    }

    fn word(rs: &Arc<RootSystem>, w: &[usize]) -> WeylElem {
        WeylElem::from_word(rs, w).unwrap()
    }

    #[test]
    fn simple_reflection_action() {
        let a2 = rs("A2");
        let s1 = WeylElem::simple_reflection(&a2, 1).unwrap();
        assert_eq!(s1.simple_image(1), RootVec(vec![-1, 0]));
        assert_eq!(s1.simple_image(2), RootVec(vec![1, 1]));
        assert_eq!(s1.length(), 1);
        assert!((&s1 * &s1).is_identity());
        assert!(WeylElem::simple_reflection(&a2, 3).is_err());
        assert!(WeylElem::simple_reflection(&a2, 0).is_err());
    }

    #[test]
    fn lengths_and_braids() {
        let a2 = rs("A2");
        let w0 = word(&a2, &[1, 2, 1]);
        assert_eq!(w0.length(), 3);
        assert_eq!(w0, word(&a2, &[2, 1, 2]));
        let c2 = rs("C2");
        let g = enumerate_group(&c2);
        assert_eq!(g.len(), 8);
        assert_eq!(g.iter().map(WeylElem::length).max(), Some(4));
        assert_eq!(word(&c2, &[1, 2, 1, 2]), word(&c2, &[2, 1, 2, 1]));
    }

    #[test]
    fn group_orders() {
        for (t, n) in [("A1", 2), ("A2", 6), ("A3", 24), ("B3", 48), ("G2", 12), ("D4", 192)] {
            assert_eq!(enumerate_group(&rs(t)).len(), n, "{t}");
        }
    }

    #[test]
    fn mixed_systems_rejected() {
        let a = WeylElem::simple_reflection(&rs("A2"), 1).unwrap();
        let b = WeylElem::simple_reflection(&rs("C2"), 1).unwrap();
        assert_eq!(a.try_mul(&b), Err(Error::MixedRootSystems));
    }

    /// Search oracle for `r_beta`: the unique element negating `beta` and
    /// fixing every weight orthogonal to `beta^vee`.
    fn reflection_oracle(rs: &Arc<RootSystem>, beta: &RootVec) -> WeylElem {
        let n = rs.rank();
        let coroot = rs.coroot(beta).unwrap();
        let found: Vec<WeylElem> = enumerate_group(rs)
            .into_iter()
            .filter(|w| w.act_root(beta) == beta.neg())
            .filter(|w| {
                (1..=n).all(|i| {
                    let mu = WeightVec::fundamental(n, i);
                    // project onto the hyperplane: mu - <mu,beta^vee>/2 beta
                    let c = &mu.dot(&coroot) * &Rational::new(1, 2);
                    let perp = mu.sub(&rs.root_to_weight(beta).scale(&c));
                    w.act_weight(&perp) == perp
                })
            })
            .collect();
        assert_eq!(found.len(), 1);
        found[0].clone()
    }

    #[test]
    fn reflections_match_search_oracle() {
        let a2 = rs("A2");
        assert_eq!(
            WeylElem::reflection(&a2, &RootVec(vec![1, 0])).unwrap(),
            word(&a2, &[1])
        );
        let theta = a2.highest_root().clone();
        assert_eq!(WeylElem::reflection(&a2, &theta).unwrap(), word(&a2, &[1, 2, 1]));
        let c2 = rs("C2");
        let r = WeylElem::reflection(&c2, c2.highest_root()).unwrap();
        assert_eq!(r.length(), 3);
        for t in ["A2", "C2", "G2", "B3"] {
            let r = rs(t);
            for beta in r.positive_roots() {
                let refl = WeylElem::reflection(&r, beta).unwrap();
                assert_eq!(refl, reflection_oracle(&r, beta), "{t} {beta}");
                for i in 1..=r.rank() {
                    let mu = WeightVec::fundamental(r.rank(), i);
                    assert_eq!(refl.act_weight(&mu), r.reflect(&mu, beta).unwrap());
                }
            }
        }
        assert!(WeylElem::reflection(&a2, &RootVec(vec![-1, 0])).is_err());
    }

    #[test]
    fn min_coset_rep_examples() {
        let a2 = rs("A2");
        let j2 = ParabolicJ::new(2, [2]).unwrap();
        assert!(word(&a2, &[2]).min_coset_rep(&j2).is_identity());
        assert_eq!(word(&a2, &[1, 2, 1]).min_coset_rep(&j2), word(&a2, &[2, 1]));
        for w in enumerate_group(&a2) {
            assert_eq!(w.min_coset_rep(&ParabolicJ::empty()), w);
        }
    }

    /// Exhaustive scan of `w W_J` for the shortest element.
    fn coset_scan(w: &WeylElem, j: &ParabolicJ) -> WeylElem {
        let rs = w.root_system();
        let wj: Vec<WeylElem> = enumerate_group(rs)
            .into_iter()
            .filter(|z| z.reduced_word().iter().all(|&i| j.contains(i)))
            .collect();
        wj.iter().map(|z| w * z).min_by_key(WeylElem::length).unwrap()
    }

    #[test]
    fn min_coset_rep_matches_scan() {
        for t in ["A2", "C2", "A3", "G2"] {
            let r = rs(t);
            let n = r.rank();
            for mask in 0u32..(1 << n) {
                let j = ParabolicJ::new(n, (1..=n).filter(|i| mask & (1 << (i - 1)) != 0)).unwrap();
                for w in enumerate_group(&r) {
                    let m = w.min_coset_rep(&j);
                    assert_eq!(m, coset_scan(&w, &j));
                    assert!(m.is_min_coset_rep(&j));
                    assert_eq!(m.min_coset_rep(&j), m);
                    // w = m z with lengths adding
                    let z = &m.inverse() * &w;
                    assert_eq!(w.length(), m.length() + z.length());
                    assert_eq!(m.length() == w.length(), w.is_min_coset_rep(&j));
                }
            }
        }
    }

    #[test]
    fn minimal_rep_enumeration() {
        let a2 = rs("A2");
        assert_eq!(enumerate_minimal_reps(&a2, &ParabolicJ::empty()).len(), 6);
        let j2 = ParabolicJ::new(2, [2]).unwrap();
        let reps = enumerate_minimal_reps(&a2, &j2);
        assert_eq!(reps, vec![word(&a2, &[]), word(&a2, &[1]), word(&a2, &[2, 1])]);
        let c2 = rs("C2");
        assert_eq!(enumerate_minimal_reps(&c2, &ParabolicJ::new(2, [2]).unwrap()).len(), 4);
        let b3 = rs("B3");
        assert_eq!(enumerate_minimal_reps(&b3, &ParabolicJ::new(3, [2, 3]).unwrap()).len(), 6);
    }

    #[test]
    fn group_axioms_and_pairing_compatibility() {
        let c2 = rs("C2");
        let g = enumerate_group(&c2);
        for a in &g {
            assert!((a * &a.inverse()).is_identity());
            assert_eq!(&WeylElem::from_word(&c2, &a.reduced_word()).unwrap(), a);
            assert_eq!(a.reduced_word().len(), a.length());
            for b in &g {
                let ab = a * b;
                for i in 1..=2 {
                    let mu = WeightVec::fundamental(2, i);
                    assert_eq!(ab.act_weight(&mu), a.act_weight(&b.act_weight(&mu)));
                    for beta in c2.positive_roots() {
                        let lhs = c2.pairing(&a.act_weight(&mu), &a.act_root(beta)).unwrap();
                        assert_eq!(lhs, c2.pairing(&mu, beta).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn left_multiplication_stays_minimal() {
        // r_j w stays in W^J whenever w^{-1} alpha_j lies outside Delta_J.
        for t in ["A2", "C2", "A3", "G2"] {
            let r = rs(t);
            let n = r.rank();
            for mask in 0u32..(1 << n) {
                let j = ParabolicJ::new(n, (1..=n).filter(|i| mask & (1 << (i - 1)) != 0)).unwrap();
                for w in enumerate_minimal_reps(&r, &j) {
                    for i in 1..=n {
                        let img = w.inverse().act_root(&RootVec::simple(n, i));
                        if !img.supported_in(&j) {
                            let rw = &WeylElem::simple_reflection(&r, i).unwrap() * &w;
                            assert!(rw.is_min_coset_rep(&j));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_map_injective_on_minimal_reps() {
        let c2 = rs("C2");
        let lambda = WeightVec::fundamental(2, 2);
        let j = ParabolicJ::new(2, [1]).unwrap();
        let reps = enumerate_minimal_reps(&c2, &j);
        let images: HashSet<WeightVec> = reps.iter().map(|w| w.act_weight(&lambda)).collect();
        assert_eq!(images.len(), reps.len());
    }
}
