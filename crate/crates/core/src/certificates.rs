//! Checkers for the set and labelling conditions used throughout the crate.
//!
//! Every checker works on arbitrary graphs and returns `Ok(())` or the first
//! violation in vertex-id order.

use std::fmt;

use serde::Serialize;

use crate::{Error, Graph, Result, VertexSet};

/// A labelling `f: V → {0, 1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Assignment {
    labels: Vec<u8>,
}

impl Assignment {
    pub fn new(labels: Vec<u8>) -> Result<Assignment> {
        if let Some((vertex, &label)) = labels.iter().enumerate().find(|(_, &l)| l > 2) {
            return Err(Error::InvalidLabel { vertex, label });
        }
        Ok(Assignment { labels })
    }

    /// Every vertex labelled `label`.
    pub fn constant(n: usize, label: u8) -> Result<Assignment> {
        Assignment::new(vec![label; n])
    }

    /// Labels `2` on `twos`, `1` on `ones`, `0` elsewhere.
    pub fn from_classes(n: usize, ones: &VertexSet, twos: &VertexSet) -> Result<Assignment> {
        let mut labels = vec![0; n];
        for (set, label) in [(ones, 1), (twos, 2)] {
            for v in set.iter() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, order: n });
                }
                labels[v] = label;
            }
        }
        Ok(Assignment { labels })
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> u8 {
        self.labels[v]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `ω(f) = |V₁| + 2|V₂|`.
    pub fn weight(&self) -> u32 {
        self.labels.iter().map(|&l| l as u32).sum()
    }

    /// `V_label`, the vertices carrying `label`.
    pub fn class(&self, label: u8) -> VertexSet {
        VertexSet::from_members(
            self.len(),
            (0..self.len()).filter(|&v| self.labels[v] == label),
        )
    }

    /// The ordered partition `(V₀, V₁, V₂)`.
    pub fn partition(&self) -> [VertexSet; 3] {
        [self.class(0), self.class(1), self.class(2)]
    }

    /// `V₁ ∪ V₂`.
    pub fn support(&self) -> VertexSet {
        VertexSet::from_members(self.len(), (0..self.len()).filter(|&v| self.labels[v] > 0))
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(")")
    }
}

/// Why a set or labelling fails its defining condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// A member id that is not a vertex of the graph.
    NotAVertex { vertex: usize },
    /// The labelling does not have one label per vertex.
    LengthMismatch { expected: usize, found: usize },
    /// A vertex outside the set with no neighbor in the set.
    Undominated { vertex: usize },
    /// A vertex outside the set with no neighbor outside the set.
    NoOutsideNeighbor { vertex: usize },
    /// A `0`-vertex whose neighbor labels sum to less than 2.
    ItalianDeficit { vertex: usize, sum: u32 },
    /// A `0`-vertex with no `0`-labelled neighbor.
    IsolatedZero { vertex: usize },
    /// Two members at distance at most 2.
    TooClose { first: usize, second: usize },
}

impl Violation {
    /// The (first) witnessing vertex, if the violation names one.
    pub fn vertex(&self) -> Option<usize> {
        match *self {
            Violation::NotAVertex { vertex }
            | Violation::Undominated { vertex }
            | Violation::NoOutsideNeighbor { vertex }
            | Violation::ItalianDeficit { vertex, .. }
            | Violation::IsolatedZero { vertex } => Some(vertex),
            Violation::TooClose { first, .. } => Some(first),
            Violation::LengthMismatch { .. } => None,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NotAVertex { vertex } => write!(f, "{vertex} is not a vertex"),
            Violation::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} labels, found {found}")
            }
            Violation::Undominated { vertex } => write!(f, "vertex {vertex} is not dominated"),
            Violation::NoOutsideNeighbor { vertex } => {
                write!(f, "vertex {vertex} has no neighbor outside the set")
            }
            Violation::ItalianDeficit { vertex, sum } => {
                write!(f, "0-vertex {vertex} has neighbor sum {sum} < 2")
            }
            Violation::IsolatedZero { vertex } => {
                write!(f, "0-vertex {vertex} has no 0-labelled neighbor")
            }
            Violation::TooClose { first, second } => {
                write!(f, "vertices {first} and {second} are within distance 2")
            }
        }
    }
}

pub type Check = std::result::Result<(), Violation>;

fn members_in_range(g: &Graph, s: &VertexSet) -> Check {
    match s.iter().find(|&v| v >= g.order()) {
        Some(vertex) => Err(Violation::NotAVertex { vertex }),
        None => Ok(()),
    }
}

/// Every vertex outside `s` has a neighbor in `s`.
pub fn is_dominating(g: &Graph, s: &VertexSet) -> Check {
    members_in_range(g, s)?;
    for v in (0..g.order()).filter(|&v| !s.contains(v)) {
        if !g.adj(v).iter().any(|&u| s.contains(u)) {
            return Err(Violation::Undominated { vertex: v });
        }
    }
    Ok(())
}

/// Restrained domination: every vertex outside `s` has a neighbor in `s`
/// and a neighbor outside `s`.
pub fn is_rds(g: &Graph, s: &VertexSet) -> Check {
    members_in_range(g, s)?;
    for v in (0..g.order()).filter(|&v| !s.contains(v)) {
        if !g.adj(v).iter().any(|&u| s.contains(u)) {
            return Err(Violation::Undominated { vertex: v });
        }
        if !g.adj(v).iter().any(|&u| !s.contains(u)) {
            return Err(Violation::NoOutsideNeighbor { vertex: v });
        }
    }
    Ok(())
}

/// Italian domination only: every `0`-vertex sees a neighbor sum of at least 2.
pub fn is_italian(g: &Graph, f: &Assignment) -> Check {
    check_labels(g, f, false)
}

/// Restrained Italian domination: Italian, and the `0`-vertices induce a
/// subgraph without isolated vertices.
pub fn is_ridf(g: &Graph, f: &Assignment) -> Check {
    check_labels(g, f, true)
}

fn check_labels(g: &Graph, f: &Assignment, restrained: bool) -> Check {
    if f.len() != g.order() {
        return Err(Violation::LengthMismatch {
            expected: g.order(),
            found: f.len(),
        });
    }
    for v in (0..g.order()).filter(|&v| f.label(v) == 0) {
        let sum: u32 = g.adj(v).iter().map(|&u| f.label(u) as u32).sum();
        if sum < 2 {
            return Err(Violation::ItalianDeficit { vertex: v, sum });
        }
        if restrained && !g.adj(v).iter().any(|&u| f.label(u) == 0) {
            return Err(Violation::IsolatedZero { vertex: v });
        }
    }
    Ok(())
}

/// Members pairwise at distance at least 3.
pub fn is_packing(g: &Graph, s: &VertexSet) -> Check {
    members_in_range(g, s)?;
    for u in s.iter() {
        let mut near: Vec<usize> = g
            .adj(u)
            .iter()
            .flat_map(|&w| std::iter::once(w).chain(g.adj(w).iter().copied()))
            .filter(|&w| w > u && s.contains(w))
            .collect();
        near.sort_unstable();
        if let Some(&second) = near.first() {
            return Err(Violation::TooClose { first: u, second });
        }
    }
    Ok(())
}
