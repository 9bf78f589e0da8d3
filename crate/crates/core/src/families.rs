//! The two constructive tree families.
//!
//! **H** starts from a double star `DS_{l,n}` (`l, n ≥ 2`) and grows by
//!
//! * `O1`: attach a double star `DS_{r,s}` (`r ≥ 1`, `s ≥ 2`) by joining its
//!   center `u` (the one carrying `r` leaves) to a vertex of class LV;
//! * `O2`: attach a star `K_{1,t}` (`t ≥ 2`) by joining its center to a
//!   vertex of class SV.
//!
//! **F** starts from the path `P₄` and grows by
//!
//! * `O1`: attach a path `P₃` by joining one of its ends to a vertex of LV;
//! * `O2`: attach a healthy spider `S_{t,t}` by joining its center to a
//!   vertex of LV.
//!
//! LV (resp. SV) holds every vertex that was a leaf (resp. stem) at *some*
//! stage of the construction, so the classes can only be tracked by
//! replaying the construction from its base.
//!
//! Recognition works backwards: peel the gadget hanging at the far end of a
//! diametral path `x₀…x_d`, recurse on the rest, then replay forwards and
//! check that the peeled gadget's attachment vertex belongs to the class its
//! operation requires. The path maximizing `deg(x_{d-1})` is tried first; if
//! the remainder admits no construction, the search backtracks to the other
//! diametral paths.

use std::collections::HashSet;
use std::fmt;
use std::ops::Range;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Assignment, Error, Result, Tree, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    H,
    F,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::H => "H",
            Family::F => "F",
        })
    }
}

/// The first tree `T₁` of a construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Base {
    /// `DS_{l,n}`, laid out as in [`Tree::double_star`].
    DoubleStar { l: usize, n: usize },
    /// `P₄`, laid out as `0-1-2-3`.
    Path4,
}

impl Base {
    pub fn order(&self) -> usize {
        match *self {
            Base::DoubleStar { l, n } => 2 + l + n,
            Base::Path4 => 4,
        }
    }

    fn tree(&self) -> Tree {
        match *self {
            Base::DoubleStar { l, n } => Tree::double_star(l, n),
            Base::Path4 => Tree::path(4),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Op {
    O1,
    O2,
}

/// One operation of a construction. Vertex ids refer to the tree before the
/// step; the gadget's vertices receive the next free ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub op: Op,
    pub attach: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
}

impl Step {
    /// H-`O1`: double star `DS_{r,s}` joined at its `r`-side center.
    pub fn h_double_star(attach: usize, r: usize, s: usize) -> Step {
        Step {
            op: Op::O1,
            attach,
            r: Some(r),
            s: Some(s),
            t: None,
        }
    }

    /// H-`O2`: star `K_{1,t}` joined at its center.
    pub fn h_star(attach: usize, t: usize) -> Step {
        Step {
            op: Op::O2,
            attach,
            r: None,
            s: None,
            t: Some(t),
        }
    }

    /// F-`O1`: path `P₃` joined at one end.
    pub fn f_path(attach: usize) -> Step {
        Step {
            op: Op::O1,
            attach,
            r: None,
            s: None,
            t: None,
        }
    }

    /// F-`O2`: healthy spider `S_{t,t}` joined at its center.
    pub fn f_spider(attach: usize, t: usize) -> Step {
        Step {
            op: Op::O2,
            attach,
            r: None,
            s: None,
            t: Some(t),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gadget {
    DoubleStar { r: usize, s: usize },
    Star { t: usize },
    Path3,
    Spider { t: usize },
}

impl Gadget {
    fn of(family: Family, step: &Step, index: usize) -> Result<Gadget> {
        let bad = |reason: String| Err(Error::InvalidStep { step: index, reason });
        match (family, step.op, step.r, step.s, step.t) {
            (Family::H, Op::O1, Some(r), Some(s), None) => {
                if r < 1 || s < 2 {
                    return bad(format!("double star DS_{{{r},{s}}} needs r >= 1 and s >= 2"));
                }
                Ok(Gadget::DoubleStar { r, s })
            }
            (Family::H, Op::O2, None, None, Some(t)) => {
                if t < 2 {
                    return bad(format!("star K_{{1,{t}}} needs t >= 2"));
                }
                Ok(Gadget::Star { t })
            }
            (Family::F, Op::O1, None, None, None) => Ok(Gadget::Path3),
            (Family::F, Op::O2, None, None, Some(t)) => {
                if t < 1 {
                    return bad("a spider needs at least one leg".into());
                }
                Ok(Gadget::Spider { t })
            }
            (family, op, ..) => bad(format!(
                "wrong parameters for {family}-{op:?} (H-O1 takes r and s, H-O2 and F-O2 take t, F-O1 takes none)"
            )),
        }
    }

    fn order(&self) -> usize {
        match *self {
            Gadget::DoubleStar { r, s } => 2 + r + s,
            Gadget::Star { t } => 1 + t,
            Gadget::Path3 => 3,
            Gadget::Spider { t } => 1 + 2 * t,
        }
    }

    /// Edges of the gadget placed at ids `k..`, plus the joining edge to `x`.
    fn edges(&self, x: usize, k: usize) -> Vec<(usize, usize)> {
        let mut edges = vec![(x, k)];
        match *self {
            Gadget::DoubleStar { r, s } => {
                edges.push((k, k + 1));
                edges.extend((0..r).map(|i| (k, k + 2 + i)));
                edges.extend((0..s).map(|i| (k + 1, k + 2 + r + i)));
            }
            Gadget::Star { t } => edges.extend((1..=t).map(|i| (k, k + i))),
            Gadget::Path3 => edges.extend([(k, k + 1), (k + 1, k + 2)]),
            Gadget::Spider { t } => {
                for j in 0..t {
                    edges.push((k, k + 1 + 2 * j));
                    edges.push((k + 1 + 2 * j, k + 2 + 2 * j));
                }
            }
        }
        edges
    }
}

/// A base tree plus an ordered list of operations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub family: Family,
    pub base: Base,
    pub steps: Vec<Step>,
}

impl ConstructionTrace {
    pub fn new(family: Family, base: Base) -> Self {
        ConstructionTrace {
            family,
            base,
            steps: Vec::new(),
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("traces serialize")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::Parse(format!("trace: {e}")))
    }

    /// The order of the replayed tree, computed from the parameters alone.
    pub fn order(&self) -> Result<usize> {
        let mut n = self.base.order();
        for (i, step) in self.steps.iter().enumerate() {
            n += Gadget::of(self.family, step, i)?.order();
        }
        Ok(n)
    }
}

/// Cumulative vertex classes of a construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyState {
    pub family: Family,
    /// Vertices that were a leaf of some `T_j`, `j ≤ i`.
    pub lv: VertexSet,
    /// Vertices that were a stem of some `T_j`, `j ≤ i`; tracked for H only.
    pub sv: Option<VertexSet>,
}

/// Incremental forward replay of a construction.
#[derive(Clone, Debug)]
pub struct Replay {
    family: Family,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    state: FamilyState,
    steps: usize,
}

impl Replay {
    pub fn start(family: Family, base: Base) -> Result<Replay> {
        match (family, base) {
            (Family::H, Base::DoubleStar { l, n }) if l >= 2 && n >= 2 => {}
            (Family::F, Base::Path4) => {}
            (Family::H, b) => {
                return Err(Error::InvalidBase(format!(
                    "H starts from DS_{{l,n}} with l, n >= 2, got {b:?}"
                )))
            }
            (Family::F, b) => {
                return Err(Error::InvalidBase(format!("F starts from P4, got {b:?}")))
            }
        }
        let tree = base.tree();
        let n = tree.order();
        let mut replay = Replay {
            family,
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
            state: FamilyState {
                family,
                lv: VertexSet::new(n),
                sv: (family == Family::H).then(|| VertexSet::new(n)),
            },
            steps: 0,
        };
        for (u, v) in tree.edges() {
            replay.add_edge(u, v);
        }
        replay.refresh_classes();
        Ok(replay)
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        let need = u.max(v) + 1;
        if self.adj.len() < need {
            self.adj.resize(need, Vec::new());
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edges.push((u, v));
    }

    fn refresh_classes(&mut self) {
        let n = self.adj.len();
        for v in 0..n {
            if self.adj[v].len() == 1 {
                self.state.lv.insert(v);
                if let Some(sv) = self.state.sv.as_mut() {
                    sv.insert(self.adj[v][0]);
                }
            }
        }
        self.state.lv.grow(n);
        if let Some(sv) = self.state.sv.as_mut() {
            sv.grow(n);
        }
    }

    /// Applies one operation, returning the ids given to the gadget.
    pub fn apply(&mut self, step: &Step) -> Result<Range<usize>> {
        let index = self.steps;
        let gadget = Gadget::of(self.family, step, index)?;
        let x = step.attach;
        let n = self.order();
        if x >= n {
            return Err(Error::InvalidStep {
                step: index,
                reason: format!("attach vertex {x} does not exist (order {n})"),
            });
        }
        let (class, ok) = match (self.family, step.op) {
            (Family::H, Op::O2) => ("SV", self.state.sv.as_ref().unwrap().contains(x)),
            _ => ("LV", self.state.lv.contains(x)),
        };
        if !ok {
            return Err(Error::ClassViolation {
                step: index,
                vertex: x,
                class,
            });
        }
        for (u, v) in gadget.edges(x, n) {
            self.add_edge(u, v);
        }
        self.refresh_classes();
        self.steps += 1;
        Ok(n..n + gadget.order())
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn state(&self) -> &FamilyState {
        &self.state
    }

    pub fn tree(&self) -> Tree {
        Tree::from_edges(self.order(), self.edges.iter().copied()).expect("replays build trees")
    }
}

/// Replays a trace, returning `T_m` and its final classes.
pub fn replay(trace: &ConstructionTrace) -> Result<(Tree, FamilyState)> {
    let mut replay = Replay::start(trace.family, trace.base)?;
    for step in &trace.steps {
        replay.apply(step)?;
    }
    Ok((replay.tree(), replay.state.clone()))
}

/// Every intermediate tree `T₁, …, T_m` with its classes.
pub fn replay_prefixes(trace: &ConstructionTrace) -> Result<Vec<(Tree, FamilyState)>> {
    let mut replay = Replay::start(trace.family, trace.base)?;
    let mut out = vec![(replay.tree(), replay.state.clone())];
    for step in &trace.steps {
        replay.apply(step)?;
        out.push((replay.tree(), replay.state.clone()));
    }
    Ok(out)
}

/// The labelling `2` on LV and `0` elsewhere of a tree built in family F.
pub fn canonical_ridf_f(tree: &Tree, state: &FamilyState) -> Result<Assignment> {
    if state.family != Family::F {
        return Err(Error::StateMismatch("not an F construction".into()));
    }
    if state.lv.universe() != tree.order() || state.lv.is_empty() {
        return Err(Error::StateMismatch(format!(
            "LV spans {} vertices, tree has {}",
            state.lv.universe(),
            tree.order()
        )));
    }
    Assignment::from_classes(tree.order(), &VertexSet::new(tree.order()), &state.lv)
}

/// A successful recognition: a trace and the isomorphism it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recognized {
    pub trace: ConstructionTrace,
    /// `vertex_map[v]` is the replay id of input vertex `v`.
    pub vertex_map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HVerdict {
    Member(Recognized),
    /// `K_{1,t}` with `t ≥ 2`, which has `γ_r = γ_rI` without belonging to H.
    StarException { t: usize },
    NonMember,
}

impl HVerdict {
    pub fn is_equality_class(&self) -> bool {
        !matches!(self, HVerdict::NonMember)
    }
}

/// A partial recognition of the current (sub)tree.
struct Plan {
    replay: Replay,
    trace: ConstructionTrace,
    /// Local vertex id to replay id.
    to_replay: Vec<usize>,
}

impl Plan {
    fn base(family: Family, base: Base, layout: &[usize], n: usize) -> Plan {
        let mut to_replay = vec![usize::MAX; n];
        for (i, &v) in layout.iter().enumerate() {
            to_replay[v] = i;
        }
        Plan {
            replay: Replay::start(family, base).expect("validated base"),
            trace: ConstructionTrace::new(family, base),
            to_replay,
        }
    }
}

/// A gadget hanging off the far end of a diametral path.
struct Peel {
    /// Gadget vertices in layout order.
    layout: Vec<usize>,
    attach: usize,
    step: Step,
}

/// The last four vertices `x_{d-3}, x_{d-2}, x_{d-1}, x_d` of a diametral path.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Tail {
    c: usize,
    b: usize,
    a: usize,
    e: usize,
}

/// Distinct tails over all diametral paths of a tree with diameter at least
/// 4. The tail of the max-penultimate path comes first, then the rest by
/// decreasing `deg(x_{d-1})`.
fn diametral_tails(t: &Tree) -> Vec<Tail> {
    let dist = t.distance_matrix();
    let d = t.diameter();
    let step = |from: usize, x0: usize, k: usize| {
        *t.adj(from).iter().find(|&&w| dist[x0][w] == k).expect("path continues")
    };
    let mut tails = std::collections::BTreeSet::new();
    for (x0, row) in dist.iter().enumerate() {
        for e in (0..t.order()).filter(|&e| row[e] == d) {
            let a = step(e, x0, d - 1);
            let b = step(a, x0, d - 2);
            let c = step(b, x0, d - 3);
            tails.insert(Tail { c, b, a, e });
        }
    }
    let preferred = t.diametral_path_max_penultimate().expect("order at least 2");
    let first = Tail {
        c: preferred.from_end(3),
        b: preferred.from_end(2),
        a: preferred.from_end(1),
        e: preferred.from_end(0),
    };
    let mut rest: Vec<Tail> = tails.into_iter().filter(|&tail| tail != first).collect();
    rest.sort_by_key(|tail| std::cmp::Reverse(t.degree(tail.a)));
    std::iter::once(first).chain(rest).collect()
}

/// Neighbors of `v` other than `parent`.
fn below(t: &Tree, v: usize, parent: usize) -> Vec<usize> {
    t.adj(v).iter().copied().filter(|&w| w != parent).collect()
}

fn h_peels(t: &Tree, tail: Tail) -> Vec<Peel> {
    let Tail { c, b, a, .. } = tail;
    let a_leaves = below(t, a, b);
    if a_leaves.len() < 2 {
        return Vec::new();
    }
    let mut peels = Vec::new();
    // Reverse O1: T_b is a double star, b carrying r >= 1 leaves besides a.
    let b_others: Vec<usize> = below(t, b, c).into_iter().filter(|&w| w != a).collect();
    if !b_others.is_empty() && b_others.iter().all(|&w| t.is_leaf(w)) {
        peels.push(Peel {
            layout: [b, a].into_iter().chain(b_others.iter().copied()).chain(a_leaves.iter().copied()).collect(),
            attach: c,
            step: Step::h_double_star(0, b_others.len(), a_leaves.len()),
        });
    }
    // Reverse O2: T_a is a star K_{1,t}.
    peels.push(Peel {
        layout: std::iter::once(a).chain(a_leaves.iter().copied()).collect(),
        attach: b,
        step: Step::h_star(0, a_leaves.len()),
    });
    peels
}

fn f_peels(t: &Tree, tail: Tail) -> Vec<Peel> {
    let Tail { c, b, a, e } = tail;
    if t.degree(a) != 2 {
        return Vec::new();
    }
    if t.degree(b) == 2 {
        return vec![Peel {
            layout: vec![b, a, e],
            attach: c,
            step: Step::f_path(0),
        }];
    }
    // T_b must be a healthy spider centered at b.
    let legs = below(t, b, c);
    let mut layout = vec![b];
    for &m in &legs {
        match below(t, m, b)[..] {
            [w] if t.is_leaf(w) => layout.extend([m, w]),
            _ => return Vec::new(),
        }
    }
    vec![Peel {
        layout,
        attach: c,
        step: Step::f_spider(0, legs.len()),
    }]
}

/// Backtracking peel search; remembers the canonical codes of subtrees that
/// admit no construction.
struct Search {
    family: Family,
    dead: HashSet<String>,
}

impl Search {
    fn new(family: Family) -> Search {
        Search {
            family,
            dead: HashSet::new(),
        }
    }

    fn run(&mut self, t: &Tree) -> Option<Plan> {
        let code = t.canonical_code();
        if self.dead.contains(&code) {
            return None;
        }
        let plan = self.attempt(t);
        if plan.is_none() {
            self.dead.insert(code);
        }
        plan
    }

    fn attempt(&mut self, t: &Tree) -> Option<Plan> {
        if t.order() < 4 || t.is_star() {
            return None;
        }
        match t.diameter() {
            3 => self.base(t),
            _ => {
                for tail in diametral_tails(t) {
                    let peels = match self.family {
                        Family::H => h_peels(t, tail),
                        Family::F => f_peels(t, tail),
                    };
                    for peel in peels {
                        if let Some(plan) = self.extend(t, &peel) {
                            return Some(plan);
                        }
                    }
                }
                None
            }
        }
    }

    fn base(&self, t: &Tree) -> Option<Plan> {
        let path = t.diametral_path_max_penultimate().ok()?;
        match self.family {
            Family::F if t.order() == 4 => Some(Plan::base(Family::F, Base::Path4, &path.vertices, 4)),
            Family::F => None,
            Family::H => {
                let (a, b) = (path.x(1), path.x(2));
                let (a, b) = (a.min(b), a.max(b));
                let (la, lb) = (below(t, a, b), below(t, b, a));
                if la.len() < 2 || lb.len() < 2 {
                    return None;
                }
                let base = Base::DoubleStar {
                    l: la.len(),
                    n: lb.len(),
                };
                let layout: Vec<usize> = [a, b].into_iter().chain(la).chain(lb).collect();
                Some(Plan::base(Family::H, base, &layout, t.order()))
            }
        }
    }

    fn extend(&mut self, t: &Tree, peel: &Peel) -> Option<Plan> {
        let mut removed = vec![false; t.order()];
        for &v in &peel.layout {
            removed[v] = true;
        }
        let keep: Vec<usize> = (0..t.order()).filter(|&v| !removed[v]).collect();
        let (rest, to_parent) = t.induced(&keep).ok()?;
        let mut plan = self.run(&rest)?;
        let mut to_replay = vec![usize::MAX; t.order()];
        for (i, &v) in to_parent.iter().enumerate() {
            to_replay[v] = plan.to_replay[i];
        }
        let step = Step {
            attach: to_replay[peel.attach],
            ..peel.step
        };
        let ids = plan.replay.apply(&step).ok()?;
        for (&v, id) in peel.layout.iter().zip(ids) {
            to_replay[v] = id;
        }
        plan.trace.steps.push(step);
        plan.to_replay = to_replay;
        Some(plan)
    }
}

fn finish(plan: Plan) -> Recognized {
    Recognized {
        trace: plan.trace,
        vertex_map: plan.to_replay,
    }
}

/// Recognizes family H, reporting stars separately.
pub fn recognize_h(t: &Tree) -> HVerdict {
    if t.order() < 3 {
        return HVerdict::NonMember;
    }
    if t.is_star() {
        return HVerdict::StarException { t: t.order() - 1 };
    }
    match Search::new(Family::H).run(t) {
        Some(plan) => HVerdict::Member(finish(plan)),
        None => HVerdict::NonMember,
    }
}

/// Recognizes family F.
pub fn recognize_f(t: &Tree) -> Option<Recognized> {
    Search::new(Family::F).run(t).map(finish)
}

/// Random valid trace whose tree has at most `budget` vertices.
///
/// Operations are added until none fits in the remaining budget. Gadget
/// parameters are kept small (at most 3 or 4) so traces have several steps.
pub fn sample_trace(family: Family, budget: usize, seed: u64) -> Result<ConstructionTrace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (base, base_order) = match family {
        Family::H => {
            if budget < 6 {
                return Err(Error::BudgetTooSmall { budget, base: 6 });
            }
            let l = rng.gen_range(2..=(budget - 4).min(4));
            let n = rng.gen_range(2..=(budget - 2 - l).min(4));
            (Base::DoubleStar { l, n }, 2 + l + n)
        }
        Family::F => {
            if budget < 4 {
                return Err(Error::BudgetTooSmall { budget, base: 4 });
            }
            (Base::Path4, 4)
        }
    };
    let mut trace = ConstructionTrace::new(family, base);
    let mut replay = Replay::start(family, base)?;
    let mut order = base_order;
    loop {
        let room = budget - order;
        let mut ops = Vec::new();
        match family {
            Family::H => {
                if room >= 5 {
                    ops.push(Op::O1);
                }
                if room >= 3 {
                    ops.push(Op::O2);
                }
            }
            Family::F => {
                if room >= 3 {
                    ops.extend([Op::O1, Op::O2]);
                }
            }
        }
        let Some(&op) = ops.choose(&mut rng) else { break };
        let class = match (family, op) {
            (Family::H, Op::O2) => replay.state().sv.as_ref().unwrap(),
            _ => &replay.state().lv,
        };
        let candidates = class.to_vec();
        let attach = *candidates.choose(&mut rng).expect("classes are never empty");
        let step = match (family, op) {
            (Family::H, Op::O1) => {
                let r = rng.gen_range(1..=(room - 4).min(3));
                let s = rng.gen_range(2..=(room - 2 - r).min(3));
                Step::h_double_star(attach, r, s)
            }
            (Family::H, Op::O2) => Step::h_star(attach, rng.gen_range(2..=(room - 1).min(4))),
            (Family::F, Op::O1) => Step::f_path(attach),
            (Family::F, Op::O2) => Step::f_spider(attach, rng.gen_range(1..=((room - 1) / 2).min(3))),
        };
        let ids = replay.apply(&step)?;
        order += ids.len();
        trace.steps.push(step);
    }
    Ok(trace)
}
