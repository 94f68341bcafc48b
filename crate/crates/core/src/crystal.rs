//! Crystal graphs generated by the root operators, and the verification
//! suites comparing them with the enumerated quantum LS paths.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::path::{self, PLPath};
use crate::qls::{RationalPath, ShapeData, Variant};
use crate::rootsys::{RootSystem, WeightVec};

/// Nodes are sorted; arrows `(source, j, target)` are `f_j` arrows between
/// node indices, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrystalGraph {
    pub nodes: Vec<RationalPath>,
    pub arrows: Vec<(usize, usize, usize)>,
    pub seed: usize,
}

impl CrystalGraph {
    pub fn node_index(&self, eta: &RationalPath) -> Option<usize> {
        self.nodes.binary_search(eta).ok()
    }

    /// The `f_j` successor of a node, if any.
    pub fn f_target(&self, src: usize, j: usize) -> Option<usize> {
        self.arrows
            .iter()
            .find(|&&(s, jj, _)| s == src && jj == j)
            .map(|&(_, _, t)| t)
    }

    pub fn e_target(&self, tgt: usize, j: usize) -> Option<usize> {
        self.arrows
            .iter()
            .find(|&&(_, jj, t)| t == tgt && jj == j)
            .map(|&(s, _, _)| s)
    }
}

/// Breadth-first closure of `eta_Lambda` under every `e_j` and `f_j`, using
/// the generic path operators. With `guard`, fails as soon as a node
/// outside `guard` appears.
pub fn closure(
    shape: &ShapeData,
    cap: usize,
    guard: Option<&BTreeSet<RationalPath>>,
) -> Result<CrystalGraph> {
    let nodes_count = shape.root_system().node_count();
    let seed = shape.seed();
    let mut index: HashMap<RationalPath, usize> = HashMap::from([(seed.clone(), 0)]);
    let mut nodes = vec![seed];
    let mut arrows = BTreeSet::new();
    let mut queue = VecDeque::from([0usize]);
    let mut visit = |p: RationalPath, nodes: &mut Vec<RationalPath>, queue: &mut VecDeque<usize>| -> Result<usize> {
        if let Some(&i) = index.get(&p) {
            return Ok(i);
        }
        if let Some(g) = guard {
            if !g.contains(&p) {
                return Err(Error::Internal(format!("closure reached non-member {p}")));
            }
        }
        if nodes.len() >= cap {
            return Err(Error::CapExceeded { cap });
        }
        let i = nodes.len();
        index.insert(p.clone(), i);
        nodes.push(p);
        queue.push_back(i);
        Ok(i)
    };
    while let Some(x) = queue.pop_front() {
        for j in 0..nodes_count {
            let cur = nodes[x].clone();
            if let Some(y) = shape.f_on_rational(&cur, j)? {
                let yi = visit(y, &mut nodes, &mut queue)?;
                arrows.insert((x, j, yi));
            }
            if let Some(y) = shape.e_generic(&cur, j)? {
                let yi = visit(y, &mut nodes, &mut queue)?;
                arrows.insert((yi, j, x));
            }
        }
    }
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| nodes[a].cmp(&nodes[b]));
    let mut rank = vec![0; nodes.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let sorted: Vec<RationalPath> = order.iter().map(|&i| nodes[i].clone()).collect();
    let mut arrows: Vec<(usize, usize, usize)> = arrows
        .into_iter()
        .map(|(s, j, t)| (rank[s], j, rank[t]))
        .collect();
    arrows.sort();
    Ok(CrystalGraph {
        nodes: sorted,
        arrows,
        seed: rank[0],
    })
}

/// Multiset of weights `wt(eta)`.
pub fn character(shape: &ShapeData, g: &CrystalGraph) -> Result<BTreeMap<WeightVec, usize>> {
    let mut out = BTreeMap::new();
    for eta in &g.nodes {
        *out.entry(shape.to_pl_path(eta)?.wt()).or_insert(0) += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

/// Outcome of one verification suite on one shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub shape: String,
    pub sizes: BTreeMap<String, usize>,
    pub equal: bool,
    pub witnesses: Vec<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Witnesses beyond this many are summarized by a count.
const MAX_WITNESSES: usize = 20;

struct Collector {
    checks: Vec<Check>,
}

impl Collector {
    fn new() -> Self {
        Collector { checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, failures: Vec<String>) {
        let total = failures.len();
        let mut witnesses: Vec<String> = failures.into_iter().take(MAX_WITNESSES).collect();
        if total > MAX_WITNESSES {
            witnesses.push(format!("... {} more", total - MAX_WITNESSES));
        }
        self.checks.push(Check {
            name: name.into(),
            passed: witnesses.is_empty(),
            witnesses,
        });
    }

    fn check_result<T>(&mut self, name: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => {
                self.check(name, vec![]);
                Some(v)
            }
            Err(e) => {
                self.check(name, vec![e.to_string()]);
                None
            }
        }
    }

    fn into_report(self, suite: &str, shape: &ShapeData, sizes: BTreeMap<String, usize>, witnesses: Vec<String>) -> Report {
        let passed = self.checks.iter().all(|c| c.passed) && witnesses.is_empty();
        Report {
            suite: suite.into(),
            shape: shape_label(shape),
            sizes,
            equal: witnesses.is_empty(),
            witnesses,
            checks: self.checks,
            passed,
        }
    }
}

pub fn shape_label(shape: &ShapeData) -> String {
    format!("{} {}", shape.root_system().cartan(), shape.lambda())
}

fn set_difference(a: &BTreeSet<RationalPath>, b: &BTreeSet<RationalPath>, tag: &str) -> Vec<String> {
    a.difference(b).map(|p| format!("{tag}: {p}")).collect()
}

/// Compare both enumerated variants with the operator closure.
pub fn verify_main(shape: &ShapeData, cap: usize) -> Report {
    let mut c = Collector::new();
    let tilde = c.check_result("enumerate tilde", shape.enumerate(Variant::Tilde, cap));
    let hat = c.check_result("enumerate hat", shape.enumerate(Variant::Hat, cap));
    let graph = c.check_result("closure", closure(shape, cap, None));
    let mut sizes = BTreeMap::new();
    let mut witnesses = Vec::new();
    if let (Some(t), Some(h), Some(g)) = (tilde, hat, graph) {
        let t: BTreeSet<RationalPath> = t.into_iter().collect();
        let h: BTreeSet<RationalPath> = h.into_iter().collect();
        let cl: BTreeSet<RationalPath> = g.nodes.iter().cloned().collect();
        sizes.insert("tilde".into(), t.len());
        sizes.insert("hat".into(), h.len());
        sizes.insert("closure".into(), cl.len());
        witnesses.extend(set_difference(&t, &h, "tilde only (vs hat)"));
        witnesses.extend(set_difference(&h, &t, "hat only (vs tilde)"));
        witnesses.extend(set_difference(&t, &cl, "tilde only (vs closure)"));
        witnesses.extend(set_difference(&cl, &t, "closure only (vs tilde)"));
        let guarded = closure(shape, cap, Some(&t)).map(|_| ());
        c.check_result("closure stays inside tilde at every step", guarded);
    } else {
        witnesses.push("computation failed".into());
    }
    c.into_report("main", shape, sizes, witnesses)
}

/// The characterization conditions: stability under every `f_j` and
/// velocity along `W_0 Lambda` with integral local minima.
pub fn verify_charls(shape: &ShapeData, candidate: &[RationalPath]) -> Report {
    let mut c = Collector::new();
    let set: BTreeSet<RationalPath> = candidate.iter().cloned().collect();
    let rs = shape.root_system();
    let mut stable = Vec::new();
    let mut form = Vec::new();
    for eta in &set {
        match shape.to_pl_path(eta) {
            Ok(p) if path::is_integrally_minimal(rs, &p) => {}
            Ok(_) => form.push(format!("{eta}: not integrally minimal")),
            Err(e) => form.push(format!("{eta}: {e}")),
        }
        for j in 0..rs.node_count() {
            match shape.f_on_rational(eta, j) {
                Ok(None) => {}
                Ok(Some(f)) if set.contains(&f) => {}
                Ok(Some(f)) => stable.push(format!("f_{j} {eta} = {f}")),
                Err(e) => stable.push(format!("f_{j} {eta}: {e}")),
            }
        }
    }
    c.check("stable under f_j", stable);
    c.check("directed along the orbit", form);
    let sizes = BTreeMap::from([("candidate".to_string(), set.len())]);
    c.into_report("charls", shape, sizes, vec![])
}

fn scaling_failures(shape: &ShapeData, eta: &PLPath, j: usize, n: u32) -> Result<Vec<String>> {
    let rs = shape.root_system();
    let scaled = eta.scale(n);
    let k = i64::from(n);
    let mut out = Vec::new();
    if path::epsilon(rs, &scaled, j)? != k * path::epsilon(rs, eta, j)? {
        out.push(format!("epsilon_{j} of {n}*{eta}"));
    }
    if path::phi(rs, &scaled, j)? != k * path::phi(rs, eta, j)? {
        out.push(format!("phi_{j} of {n}*{eta}"));
    }
    let lhs = path::root_e(rs, eta, j)?.map(|p| p.scale(n));
    if lhs != path::iterate(rs, &scaled, j, n, path::root_e)? {
        out.push(format!("{n}(e_{j} eta) != e_{j}^{n}({n} eta) for {eta}"));
    }
    let lhs = path::root_f(rs, eta, j)?.map(|p| p.scale(n));
    if lhs != path::iterate(rs, &scaled, j, n, path::root_f)? {
        out.push(format!("{n}(f_{j} eta) != f_{j}^{n}({n} eta) for {eta}"));
    }
    if path::e_max(rs, &scaled, j)? != path::e_max(rs, eta, j)?.scale(n) {
        out.push(format!("e_{j}^max does not commute with scaling by {n} for {eta}"));
    }
    if path::f_max(rs, &scaled, j)? != path::f_max(rs, eta, j)?.scale(n) {
        out.push(format!("f_{j}^max does not commute with scaling by {n} for {eta}"));
    }
    Ok(out)
}

/// Scaling identities `N(e_j eta) = e_j^N(N eta)` and friends on every node.
pub fn verify_scaling(shape: &ShapeData, n: u32, cap: usize) -> Report {
    let mut c = Collector::new();
    let mut sizes = BTreeMap::new();
    if let Some(g) = c.check_result("closure", closure(shape, cap, None)) {
        sizes.insert("nodes".into(), g.nodes.len());
        let mut failures = Vec::new();
        for eta in &g.nodes {
            let p = match shape.to_pl_path(eta) {
                Ok(p) => p,
                Err(e) => {
                    failures.push(e.to_string());
                    continue;
                }
            };
            for j in 0..shape.root_system().node_count() {
                match scaling_failures(shape, &p, j, n) {
                    Ok(f) => failures.extend(f),
                    Err(e) => failures.push(format!("{eta}: {e}")),
                }
            }
        }
        c.check(format!("scaling by {n}"), failures);
    }
    c.into_report("scaling", shape, sizes, vec![])
}

/// `n`-fold concatenations of members of shape `Lambda` against the members
/// of shape `n Lambda`, as maps.
pub fn verify_concat(shape: &ShapeData, n: u32, cap: usize) -> Report {
    let mut c = Collector::new();
    let mut sizes = BTreeMap::new();
    let mut witnesses = Vec::new();
    let big = c.check_result("shape n*Lambda", shape.scaled(i64::from(n)));
    let small = c.check_result("enumerate Lambda", shape.enumerate(Variant::Tilde, cap));
    if let (Some(big), Some(small)) = (big, small) {
        let target = c.check_result("enumerate n*Lambda", big.enumerate(Variant::Tilde, cap));
        let small_paths: Result<Vec<PLPath>> = small.iter().map(|e| shape.to_pl_path(e)).collect();
        if let (Some(target), Some(small_paths)) = (target, c.check_result("paths of Lambda", small_paths)) {
            let mut cats = BTreeSet::new();
            let mut tuple = vec![0usize; n as usize];
            'outer: loop {
                let parts: Vec<PLPath> = tuple.iter().map(|&i| small_paths[i].clone()).collect();
                match PLPath::concatenate(&parts) {
                    Ok(p) => {
                        cats.insert(p);
                    }
                    Err(e) => witnesses.push(e.to_string()),
                }
                for slot in tuple.iter_mut().rev() {
                    *slot += 1;
                    if *slot < small_paths.len() {
                        continue 'outer;
                    }
                    *slot = 0;
                }
                break;
            }
            let target_paths: Result<BTreeSet<PLPath>> = target.iter().map(|e| big.to_pl_path(e)).collect();
            if let Some(target_paths) = c.check_result("paths of n*Lambda", target_paths) {
                sizes.insert("concatenations".into(), cats.len());
                sizes.insert("members".into(), target_paths.len());
                witnesses.extend(cats.difference(&target_paths).map(|p| format!("concatenation only: {p}")));
                witnesses.extend(target_paths.difference(&cats).map(|p| format!("member only: {p}")));
                let lhs = closure(&big, cap, None).map(|g| g.nodes.len());
                let rhs = closure(shape, cap, None).map(|g| g.nodes.len().pow(n));
                match (lhs, rhs) {
                    (Ok(a), Ok(b)) => c.check(
                        "closure size is multiplicative",
                        if a == b { vec![] } else { vec![format!("{a} != {b}")] },
                    ),
                    (Err(e), _) | (_, Err(e)) => c.check("closure size is multiplicative", vec![e.to_string()]),
                }
            }
        }
    }
    witnesses.truncate(MAX_WITNESSES);
    c.into_report("concat", shape, sizes, witnesses)
}

/// Structural properties of the closure graph and of the explicit `f_j`.
pub fn verify_properties(shape: &ShapeData, cap: usize) -> Report {
    let mut c = Collector::new();
    let mut sizes = BTreeMap::new();
    let rs = shape.root_system().clone();
    let nodes_count = rs.node_count();
    let graph = c.check_result("closure", closure(shape, cap, None));
    let tilde = c.check_result("enumerate tilde", shape.enumerate(Variant::Tilde, cap));
    let hat = c.check_result("enumerate hat", shape.enumerate(Variant::Hat, cap));
    let (Some(g), Some(tilde), Some(hat)) = (graph, tilde, hat) else {
        return c.into_report("properties", shape, sizes, vec![]);
    };
    sizes.insert("nodes".into(), g.nodes.len());
    sizes.insert("arrows".into(), g.arrows.len());

    // f-stability of the explicit rewriting, per variant
    for (name, members) in [("tilde", &tilde), ("hat", &hat)] {
        let mut failures = Vec::new();
        for eta in members {
            for j in 0..nodes_count {
                match shape.combinatorial_f(eta, j) {
                    Ok(Some(f)) if members.binary_search(&f).is_err() => {
                        failures.push(format!("f_{j} {eta} = {f}"));
                    }
                    Ok(_) => {}
                    Err(e) => failures.push(format!("f_{j} {eta}: {e}")),
                }
            }
        }
        c.check(format!("{name} members stable under explicit f_j"), failures);
    }

    // explicit f_j against the generic operator, and e_j undoing it
    let mut agree = Vec::new();
    let mut inverse = Vec::new();
    for eta in &tilde {
        for j in 0..nodes_count {
            let ours = shape.combinatorial_f(eta, j);
            let generic = shape
                .to_pl_path(eta)
                .and_then(|p| path::root_f(&rs, &p, j));
            match (ours, generic) {
                (Ok(a), Ok(b)) => {
                    let a_map = a.as_ref().map(|f| shape.to_pl_path(f)).transpose();
                    match a_map {
                        Ok(m) if m == b => {}
                        Ok(_) => agree.push(format!("f_{j} {eta}")),
                        Err(e) => agree.push(format!("f_{j} {eta}: {e}")),
                    }
                    if let Some(f) = a {
                        match shape.e_on_rational(&f, j) {
                            Ok(Some(back)) if &back == eta => {}
                            other => inverse.push(format!("e_{j} f_{j} {eta} = {other:?}")),
                        }
                    }
                }
                (Err(e), _) | (_, Err(e)) => agree.push(format!("f_{j} {eta}: {e}")),
            }
        }
    }
    c.check("explicit f_j equals generic f_j", agree);
    c.check("e_j inverts explicit f_j", inverse);

    // epsilon/phi formulas against iterated application and against chains
    let mut formulas = Vec::new();
    let mut chains = Vec::new();
    for (i, eta) in g.nodes.iter().enumerate() {
        let Ok(p) = shape.to_pl_path(eta) else {
            formulas.push(format!("{eta}: not a path of this shape"));
            continue;
        };
        for j in 0..nodes_count {
            let (Ok(eps), Ok(ph)) = (path::epsilon(&rs, &p, j), path::phi(&rs, &p, j)) else {
                formulas.push(format!("{eta}: outside the integrality class for {j}"));
                continue;
            };
            let count = |op: fn(&RootSystem, &PLPath, usize) -> Result<Option<PLPath>>| -> Result<i64> {
                let mut cur = p.clone();
                let mut k = 0;
                while let Some(next) = op(rs.as_ref(), &cur, j)? {
                    cur = next;
                    k += 1;
                }
                Ok(k)
            };
            if count(path::root_e).ok() != Some(eps) || count(path::root_f).ok() != Some(ph) {
                formulas.push(format!("{eta}: j={j} epsilon={eps} phi={ph}"));
            }
            let chain = |step: &dyn Fn(usize) -> Option<usize>| {
                let mut k = 0;
                let mut cur = i;
                while let Some(next) = step(cur) {
                    cur = next;
                    k += 1;
                }
                k
            };
            if chain(&|x| g.e_target(x, j)) != eps || chain(&|x| g.f_target(x, j)) != ph {
                chains.push(format!("{eta}: j={j}"));
            }
        }
    }
    c.check("epsilon = -m and phi = H(1) - m", formulas);
    c.check("epsilon and phi are chain lengths", chains);

    // arrow duality
    let mut duality = Vec::new();
    for &(s, j, t) in &g.arrows {
        match shape.e_generic(&g.nodes[t], j) {
            Ok(Some(back)) if back == g.nodes[s] => {}
            other => duality.push(format!("e_{j} {} = {other:?}", g.nodes[t])),
        }
    }
    c.check("f arrow iff e arrow backwards", duality);

    // connectivity and the extremal seed
    let mut reach_fail = Vec::new();
    for (i, eta) in g.nodes.iter().enumerate() {
        if !reaches_seed_by_e_max(shape, &g, i) {
            reach_fail.push(eta.to_string());
        }
    }
    c.check("e^max chains reach the seed", reach_fail);

    // integrality and lattice conditions
    let mut integral = Vec::new();
    let mut lattice = Vec::new();
    for eta in &tilde {
        let Ok(p) = shape.to_pl_path(eta) else { continue };
        if !path::is_integrally_minimal(&rs, &p) {
            integral.push(eta.to_string());
        }
        if !rs.in_root_lattice(&p.wt().sub(shape.lambda())) {
            lattice.push(format!("wt {eta}"));
        }
        for k in 1..eta.len() {
            let a = eta.cosets()[k - 1].act_weight(shape.lambda());
            let b = eta.cosets()[k].act_weight(shape.lambda());
            if !rs.in_root_lattice(&a.sub(&b).scale(&eta.times()[k])) {
                lattice.push(format!("turn {k} of {eta}"));
            }
        }
    }
    c.check("members are integrally minimal", integral);
    c.check("weights and turning steps lie in the root lattice", lattice);
    c.into_report("properties", shape, sizes, vec![])
}

/// Search over moves `eta -> e_j^max eta` for a route to the seed.
/// Named verification suites; `All` runs every other one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Main,
    Charls,
    Scaling,
    Concat,
    Properties,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "main" => Suite::Main,
            "charls" => Suite::Charls,
            "scaling" => Suite::Scaling,
            "concat" => Suite::Concat,
            "properties" => Suite::Properties,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}"))),
        })
    }
}

/// Run a suite; `n` is the factor for scaling and concatenation.
pub fn run_suite(shape: &ShapeData, suite: Suite, n: u32, cap: usize) -> Vec<Report> {
    match suite {
        Suite::Main => vec![verify_main(shape, cap)],
        Suite::Charls => vec![match shape.enumerate(Variant::Tilde, cap) {
            Ok(members) => verify_charls(shape, &members),
            Err(e) => {
                let mut c = Collector::new();
                c.check("enumerate tilde", vec![e.to_string()]);
                c.into_report("charls", shape, BTreeMap::new(), vec![])
            }
        }],
        Suite::Scaling => vec![verify_scaling(shape, n, cap)],
        Suite::Concat => vec![verify_concat(shape, n, cap)],
        Suite::Properties => vec![verify_properties(shape, cap)],
        Suite::All => [Suite::Main, Suite::Charls, Suite::Scaling, Suite::Concat, Suite::Properties]
            .into_iter()
            .flat_map(|s| run_suite(shape, s, n, cap))
            .collect(),
    }
}

fn reaches_seed_by_e_max(shape: &ShapeData, g: &CrystalGraph, start: usize) -> bool {
    let mut seen = vec![false; g.nodes.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(x) = queue.pop_front() {
        if x == g.seed {
            return true;
        }
        for j in 0..shape.root_system().node_count() {
            let mut cur = x;
            while let Some(next) = g.e_target(cur, j) {
                cur = next;
            }
            if !seen[cur] {
                seen[cur] = true;
                queue.push_back(cur);
            }
        }
    }
    false
}
