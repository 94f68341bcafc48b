//! The parabolic quantum Bruhat graph on `W_0^J`.
//!
//! An edge labeled `beta` is stored from `w` to `floor(w r_beta)`. A directed
//! path "from y to x" follows stored arrows starting at `y`, and
//! `dist[x][y]` holds its shortest length.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rootsys::{RootSystem, RootVec, WeightVec};
use crate::weyl::{enumerate_minimal_reps, ParabolicJ, WeylElem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Bruhat,
    Quantum,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QbgEdge {
    /// Vertex index of `w`.
    pub source: usize,
    /// Vertex index of `floor(w r_beta)`.
    pub target: usize,
    pub label: RootVec,
    /// Index of `label` among the positive roots.
    pub label_index: usize,
    pub kind: EdgeKind,
}

/// Decide whether `floor(w r_beta) <-beta- w` is an edge, and of which kind.
pub fn classify_edge(
    rs: &Arc<RootSystem>,
    j: &ParabolicJ,
    w: &WeylElem,
    beta: &RootVec,
) -> Result<Option<EdgeKind>> {
    if !w.is_min_coset_rep(j) {
        return Err(Error::NotMinimalRep(w.to_string()));
    }
    let rho_pair = rs.rho_pairing(j, beta)?;
    let r = WeylElem::reflection(rs, beta)?;
    let wr = w.try_mul(&r)?;
    let target = wr.min_coset_rep(j);
    let lw = w.length() as i64;
    let lt = target.length() as i64;
    if lt == lw + 1 {
        if target != wr {
            return Err(Error::Internal(format!(
                "Bruhat edge {w} -> {target} but {wr} is not minimal"
            )));
        }
        return Ok(Some(EdgeKind::Bruhat));
    }
    let twice = &rho_pair * &Rational::from_integer(2);
    let twice = twice
        .to_integer()
        .ok_or_else(|| Error::Internal(format!("2<rho - rho_J, {beta}^vee> is not an integer")))?;
    if lt == lw - twice + 1 {
        let full = rs.pairing(&rs.rho(), beta)?;
        let full = (&full * &Rational::from_integer(2)).to_integer().unwrap_or(i64::MIN);
        if wr.length() as i64 != lw - full + 1 {
            return Err(Error::Internal(format!(
                "quantum edge {w} -> {target} fails the unreduced length condition"
            )));
        }
        return Ok(Some(EdgeKind::Quantum));
    }
    Ok(None)
}

/// Distance matrix convention: `dist[x][y]` is the shortest path from `y` to `x`.
pub type DistMatrix = Vec<Vec<Option<usize>>>;

#[derive(Debug, Clone)]
pub struct Qbg {
    rs: Arc<RootSystem>,
    j: ParabolicJ,
    vertices: Vec<WeylElem>,
    index: HashMap<WeylElem, usize>,
    edges: Vec<QbgEdge>,
    /// Outgoing edge ids per vertex.
    out: Vec<Vec<usize>>,
    dist: DistMatrix,
}

impl Qbg {
    pub fn build(rs: &Arc<RootSystem>, j: &ParabolicJ) -> Result<Self> {
        let vertices = enumerate_minimal_reps(rs, j);
        let index: HashMap<WeylElem, usize> =
            vertices.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut edges = Vec::new();
        let mut out = vec![Vec::new(); vertices.len()];
        for (s, w) in vertices.iter().enumerate() {
            for (k, beta) in rs.positive_roots().iter().enumerate() {
                if beta.supported_in(j) {
                    continue;
                }
                if let Some(kind) = classify_edge(rs, j, w, beta)? {
                    let target = w.try_mul(&WeylElem::reflection(rs, beta)?)?.min_coset_rep(j);
                    out[s].push(edges.len());
                    edges.push(QbgEdge {
                        source: s,
                        target: index[&target],
                        label: beta.clone(),
                        label_index: k,
                        kind,
                    });
                }
            }
        }
        let mut g = Qbg {
            rs: Arc::clone(rs),
            j: j.clone(),
            vertices,
            index,
            edges,
            out,
            dist: Vec::new(),
        };
        g.dist = g.distances_where(|_| true);
        Ok(g)
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn parabolic(&self) -> &ParabolicJ {
        &self.j
    }

    pub fn vertices(&self) -> &[WeylElem] {
        &self.vertices
    }

    pub fn edges(&self) -> &[QbgEdge] {
        &self.edges
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &QbgEdge> {
        self.out[v].iter().map(|&e| &self.edges[e])
    }

    pub fn dist_matrix(&self) -> &DistMatrix {
        &self.dist
    }

    pub fn vertex_index(&self, w: &WeylElem) -> Result<usize> {
        self.index
            .get(w)
            .copied()
            .ok_or_else(|| Error::VertexNotFound(w.to_string()))
    }

    /// `l(x <= y)`: shortest directed path from `y` to `x`.
    pub fn distance(&self, x: &WeylElem, y: &WeylElem) -> Result<Option<usize>> {
        Ok(self.dist[self.vertex_index(x)?][self.vertex_index(y)?])
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.dist.iter().all(|row| row.iter().all(Option::is_some))
    }

    pub fn count_kind(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    /// All-pairs shortest paths using only the edges accepted by `allowed`.
    pub fn distances_where(&self, allowed: impl Fn(&QbgEdge) -> bool) -> DistMatrix {
        let n = self.vertices.len();
        let mut dist = vec![vec![None; n]; n];
        for y in 0..n {
            let mut queue = VecDeque::from([y]);
            dist[y][y] = Some(0);
            while let Some(v) = queue.pop_front() {
                let d = dist[v][y].unwrap();
                for e in self.out_edges(v) {
                    if dist[e.target][y].is_none() && allowed(e) {
                        dist[e.target][y] = Some(d + 1);
                        queue.push_back(e.target);
                    }
                }
            }
        }
        dist
    }

    /// Shortest directed sigma-path from `y` to `x`: every label `beta` must
    /// satisfy `sigma <lambda, beta^vee> in Z`.
    pub fn sigma_reachable(
        &self,
        lambda: &WeightVec,
        sigma: &Rational,
        x: &WeylElem,
        y: &WeylElem,
    ) -> Result<Option<usize>> {
        if !sigma.is_positive() || *sigma >= Rational::one() {
            return Err(Error::SigmaOutOfRange(sigma.to_string()));
        }
        let xi = self.vertex_index(x)?;
        let yi = self.vertex_index(y)?;
        let ok: Vec<bool> = (0..self.rs.positive_roots().len())
            .map(|k| (sigma * &lambda.dot(self.rs.coroot_by_index(k))).is_integer())
            .collect();
        Ok(self.restricted_path(xi, yi, |e| ok[e.label_index]))
    }

    fn restricted_path(&self, x: usize, y: usize, allowed: impl Fn(&QbgEdge) -> bool) -> Option<usize> {
        let mut seen = vec![None; self.vertices.len()];
        seen[y] = Some(0);
        let mut queue = VecDeque::from([y]);
        while let Some(v) = queue.pop_front() {
            let d = seen[v].unwrap();
            if v == x {
                return Some(d);
            }
            for e in self.out_edges(v) {
                if seen[e.target].is_none() && allowed(e) {
                    seen[e.target] = Some(d + 1);
                    queue.push_back(e.target);
                }
            }
        }
        None
    }
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

    fn all_parabolics(n: usize) -> Vec<ParabolicJ> {
        (0u32..(1 << n))
            .map(|m| ParabolicJ::new(n, (1..=n).filter(|i| m & (1 << (i - 1)) != 0)).unwrap())
            .collect()
    }

    /// A weight whose stabilizer is exactly `W_J`.
    fn generic_weight(n: usize, j: &ParabolicJ) -> WeightVec {
        WeightVec::from_ints(&(1..=n).map(|i| i64::from(!j.contains(i))).collect::<Vec<_>>())
    }

    #[test]
    fn classify_examples() {
        let a2 = rs("A2");
        let empty = ParabolicJ::empty();
        let a1 = RootVec(vec![1, 0]);
        let theta = a2.highest_root().clone();
        let e = WeylElem::identity(&a2);
        let s1 = word(&a2, &[1]);
        assert_eq!(classify_edge(&a2, &empty, &e, &a1), Ok(Some(EdgeKind::Bruhat)));
        assert_eq!(classify_edge(&a2, &empty, &s1, &a1), Ok(Some(EdgeKind::Quantum)));
        assert_eq!(classify_edge(&a2, &empty, &e, &theta), Ok(None));
        let j2 = ParabolicJ::new(2, [2]).unwrap();
        assert!(matches!(
            classify_edge(&a2, &j2, &word(&a2, &[2]), &a1),
            Err(Error::NotMinimalRep(_))
        ));
        assert!(matches!(
            classify_edge(&a2, &j2, &e, &RootVec(vec![0, 1])),
            Err(Error::RootInParabolic(_))
        ));
    }

    #[test]
    fn a1_graph() {
        let a1 = rs("A1");
        let g = Qbg::build(&a1, &ParabolicJ::empty()).unwrap();
        assert_eq!(g.vertices().len(), 2);
        assert_eq!(g.edges().len(), 2);
        assert_eq!((g.edges()[0].source, g.edges()[0].target, g.edges()[0].kind), (0, 1, EdgeKind::Bruhat));
        assert_eq!((g.edges()[1].source, g.edges()[1].target, g.edges()[1].kind), (1, 0, EdgeKind::Quantum));
    }

    /// Classification straight from the length conditions over the whole
    /// group, without going through `classify_edge`.
    fn classification_oracle(rs: &Arc<RootSystem>, j: &ParabolicJ) -> (usize, usize) {
        let two_rho_minus = |beta: &RootVec| {
            let rho_j = rs.rho_j(j);
            let v = rs.rho().sub(&rho_j).dot(&rs.coroot(beta).unwrap());
            (&v * &Rational::from_integer(2)).to_integer().unwrap()
        };
        let mut counts = (0, 0);
        for w in enumerate_minimal_reps(rs, j) {
            for beta in rs.positive_roots().iter().filter(|b| !b.supported_in(j)) {
                let t = (&w * &WeylElem::reflection(rs, beta).unwrap()).min_coset_rep(j);
                let (lw, lt) = (w.length() as i64, t.length() as i64);
                if lt == lw + 1 {
                    counts.0 += 1;
                } else if lt == lw - two_rho_minus(beta) + 1 {
                    counts.1 += 1;
                }
            }
        }
        counts
    }

    #[test]
    fn a2_edge_counts() {
        let a2 = rs("A2");
        let g = Qbg::build(&a2, &ParabolicJ::empty()).unwrap();
        assert_eq!(g.count_kind(EdgeKind::Bruhat), 8);
        assert_eq!(g.count_kind(EdgeKind::Quantum), 7);
        assert_eq!(classification_oracle(&a2, &ParabolicJ::empty()), (8, 7));
        for t in ["A2", "C2", "G2", "A3"] {
            let r = rs(t);
            for j in all_parabolics(r.rank()) {
                let g = Qbg::build(&r, &j).unwrap();
                assert_eq!(
                    (g.count_kind(EdgeKind::Bruhat), g.count_kind(EdgeKind::Quantum)),
                    classification_oracle(&r, &j),
                    "{t} {j}"
                );
            }
        }
    }

    #[test]
    fn a2_parabolic_three_cycle() {
        let a2 = rs("A2");
        let g = Qbg::build(&a2, &ParabolicJ::new(2, [2]).unwrap()).unwrap();
        let v = g.vertices();
        assert_eq!(v, &[word(&a2, &[]), word(&a2, &[1]), word(&a2, &[2, 1])]);
        let got: Vec<_> = g
            .edges()
            .iter()
            .map(|e| (e.source, e.target, e.label.clone(), e.kind))
            .collect();
        assert_eq!(
            got,
            vec![
                (0, 1, RootVec(vec![1, 0]), EdgeKind::Bruhat),
                (1, 2, RootVec(vec![1, 1]), EdgeKind::Bruhat),
                (2, 0, RootVec(vec![1, 0]), EdgeKind::Quantum),
            ]
        );
    }

    #[test]
    fn distances() {
        let a2 = rs("A2");
        let g = Qbg::build(&a2, &ParabolicJ::empty()).unwrap();
        let e = WeylElem::identity(&a2);
        let w0 = word(&a2, &[1, 2, 1]);
        assert_eq!(g.distance(&e, &w0), Ok(Some(1)));
        // only Bruhat edges raise length, each by one
        assert_eq!(g.distance(&w0, &e), Ok(Some(3)));
        for x in g.vertices() {
            assert_eq!(g.distance(x, x), Ok(Some(0)));
        }
        let other = WeylElem::identity(&rs("C2"));
        assert!(matches!(g.distance(&other, &e), Err(Error::VertexNotFound(_))));
    }

    #[test]
    fn sigma_paths() {
        let a1 = rs("A1");
        let g = Qbg::build(&a1, &ParabolicJ::empty()).unwrap();
        let lam = WeightVec::from_ints(&[2]);
        let e = WeylElem::identity(&a1);
        let s1 = word(&a1, &[1]);
        assert_eq!(g.sigma_reachable(&lam, &Rational::new(1, 2), &e, &s1), Ok(Some(1)));
        assert_eq!(g.sigma_reachable(&lam, &Rational::new(1, 3), &e, &s1), Ok(None));
        assert_eq!(g.sigma_reachable(&lam, &Rational::new(1, 3), &s1, &s1), Ok(Some(0)));
        for bad in [Rational::zero(), Rational::one(), Rational::new(3, 2)] {
            assert!(matches!(
                g.sigma_reachable(&lam, &bad, &e, &s1),
                Err(Error::SigmaOutOfRange(_))
            ));
        }
    }

    #[test]
    fn sigma_length_dominates_distance() {
        for t in ["A2", "C2"] {
            let r = rs(t);
            let lam = WeightVec::from_ints(&[2, 1]);
            let g = Qbg::build(&r, &ParabolicJ::empty()).unwrap();
            for s in [Rational::new(1, 2), Rational::new(1, 3), Rational::new(2, 3)] {
                for x in g.vertices() {
                    for y in g.vertices() {
                        if let Some(l) = g.sigma_reachable(&lam, &s, x, y).unwrap() {
                            assert!(l >= g.distance(x, y).unwrap().unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn strongly_connected() {
        for t in ["A1", "A2", "C2", "G2", "A3", "B3"] {
            let r = rs(t);
            for j in all_parabolics(r.rank()) {
                assert!(Qbg::build(&r, &j).unwrap().is_strongly_connected(), "{t} {j}");
            }
        }
    }

    #[test]
    fn bruhat_targets_are_unreduced_products() {
        for t in ["A2", "C2", "G2", "A3"] {
            let r = rs(t);
            for j in all_parabolics(r.rank()) {
                let g = Qbg::build(&r, &j).unwrap();
                for e in g.edges() {
                    let w = &g.vertices()[e.source];
                    let wr = w * &WeylElem::reflection(&r, &e.label).unwrap();
                    match e.kind {
                        EdgeKind::Bruhat => assert_eq!(wr, g.vertices()[e.target]),
                        EdgeKind::Quantum => {
                            let two_rho = (&r.pairing(&r.rho(), &e.label).unwrap()
                                * &Rational::from_integer(2))
                                .to_integer()
                                .unwrap();
                            assert_eq!(wr.length() as i64, w.length() as i64 - two_rho + 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn theta_quantum_edges() {
        for t in ["A2", "C2"] {
            let r = rs(t);
            let theta = r.highest_root().clone();
            let r_theta = WeylElem::reflection(&r, &theta).unwrap();
            for j in all_parabolics(2) {
                let g = Qbg::build(&r, &j).unwrap();
                for (s, w) in g.vertices().iter().enumerate() {
                    let img = w.inverse().act_root(&theta);
                    if !img.is_negative() {
                        continue;
                    }
                    let target = g.vertex_index(&(&r_theta * w).min_coset_rep(&j)).unwrap();
                    let label = img.neg();
                    assert!(
                        g.out_edges(s).any(|e| e.target == target
                            && e.label == label
                            && e.kind == EdgeKind::Quantum),
                        "{t} {j} {w}"
                    );
                }
            }
        }
    }

    fn has_edge(g: &Qbg, from: &WeylElem, to: &WeylElem, label: &RootVec) -> bool {
        let (Ok(s), Ok(t)) = (g.vertex_index(from), g.vertex_index(to)) else {
            return false;
        };
        g.out_edges(s).any(|e| e.target == t && &e.label == label)
    }

    /// Diamond properties for the finite nodes.
    #[test]
    fn diamond_finite_nodes() {
        for t in ["A2", "C2", "G2"] {
            let r = rs(t);
            let n = r.rank();
            for jset in all_parabolics(n) {
                let lam = generic_weight(n, &jset);
                let g = Qbg::build(&r, &jset).unwrap();
                for e in g.edges() {
                    let w = &g.vertices()[e.source];
                    let up = &g.vertices()[e.target];
                    let wl = w.act_weight(&lam);
                    let ul = up.act_weight(&lam);
                    let wb = w.act_root(&e.label);
                    for j in 1..=n {
                        let aj = RootVec::simple(n, j);
                        let pw = r.pairing(&wl, &aj).unwrap();
                        let pu = r.pairing(&ul, &aj).unwrap();
                        let is_pm = wb == aj || wb == aj.neg();
                        let sj = WeylElem::simple_reflection(&r, j).unwrap();
                        let (sju, sjw) = (&sj * up, &sj * w);
                        if pw.is_positive() && !is_pm {
                            assert!(pu.is_positive());
                            assert!(sju.is_min_coset_rep(&jset) && sjw.is_min_coset_rep(&jset));
                            assert!(has_edge(&g, &sjw, &sju, &e.label));
                        }
                        if pu.is_negative() && !is_pm {
                            assert!(pw.is_negative());
                            assert!(sju.is_min_coset_rep(&jset) && sjw.is_min_coset_rep(&jset));
                            assert!(has_edge(&g, &sjw, &sju, &e.label));
                        }
                        if pu.is_negative() && !pw.is_negative() {
                            assert!(is_pm);
                        }
                        if !pu.is_positive() && pw.is_positive() {
                            assert!(is_pm);
                        }
                    }
                }
            }
        }
    }

    /// Diamond properties for the affine node, through `r_theta`.
    #[test]
    fn diamond_affine_node() {
        for t in ["A2", "C2", "G2"] {
            let r = rs(t);
            let n = r.rank();
            let theta = r.highest_root().clone();
            let r_theta = WeylElem::reflection(&r, &theta).unwrap();
            for jset in all_parabolics(n) {
                let lam = generic_weight(n, &jset);
                let g = Qbg::build(&r, &jset).unwrap();
                for e in g.edges() {
                    let w = &g.vertices()[e.source];
                    let up = &g.vertices()[e.target];
                    let p0w = r.node_pairing(&w.act_weight(&lam), 0);
                    let p0u = r.node_pairing(&up.act_weight(&lam), 0);
                    let wb = w.act_root(&e.label);
                    let is_pm = wb == theta || wb == theta.neg();
                    let tw = &r_theta * w;
                    let tw_min = tw.min_coset_rep(&jset);
                    let z = &tw_min.inverse() * &tw;
                    let zb = z.act_root(&e.label);
                    assert!(zb.is_positive() && !zb.supported_in(&jset));
                    let target = (&tw * &WeylElem::reflection(&r, &e.label).unwrap()).min_coset_rep(&jset);
                    if (p0w.is_positive() || p0u.is_negative()) && !is_pm {
                        assert_eq!(p0u.is_positive(), p0w.is_positive());
                        assert!(has_edge(&g, &tw_min, &target, &zb), "{t} {jset} {w}");
                    }
                    if p0u.is_negative() && !p0w.is_negative() {
                        assert!(is_pm);
                    }
                    if !p0u.is_positive() && p0w.is_positive() {
                        assert!(is_pm);
                    }
                }
            }
        }
    }
}
