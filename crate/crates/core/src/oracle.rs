//! Brute-force ground truth: `γ`, `γ_r`, `ρ` and `γ_rI` of small graphs with
//! the complete list of optimal witnesses.
//!
//! Vertex sets are scanned by cardinality (ascending for the minimization
//! problems, so the first feasible level is optimal and is then enumerated
//! completely). Labellings are scanned by weight with a depth-first search
//! that rejects a partial labelling as soon as some `0`-vertex has all of its
//! closed neighborhood labelled and still fails its condition.

use serde::Serialize;

use crate::{Assignment, Error, Graph, Result, VertexSet};

pub const DEFAULT_SET_CAP: usize = 20;
pub const DEFAULT_ASSIGNMENT_CAP: usize = 13;

/// Subset scans use one machine word per set.
const HARD_SET_CAP: usize = 63;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimalSetReport {
    /// Minimum (for `ρ`: maximum) cardinality.
    pub value: usize,
    /// Every optimal set, in increasing bitmask order.
    pub witnesses: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimalAssignmentReport {
    pub value: u32,
    /// Every minimum-weight RIDF, in lexicographic label order.
    pub witnesses: Vec<Assignment>,
}

/// Order caps for the exponential searches.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    pub set_cap: usize,
    pub assignment_cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            set_cap: DEFAULT_SET_CAP,
            assignment_cap: DEFAULT_ASSIGNMENT_CAP,
        }
    }
}

pub fn gamma_bruteforce(g: &Graph) -> Result<OptimalSetReport> {
    Oracle::default().gamma(g)
}

pub fn gamma_r_bruteforce(g: &Graph) -> Result<OptimalSetReport> {
    Oracle::default().gamma_r(g)
}

pub fn rho_bruteforce(g: &Graph) -> Result<OptimalSetReport> {
    Oracle::default().rho(g)
}

pub fn gamma_ri_bruteforce(g: &Graph) -> Result<OptimalAssignmentReport> {
    Oracle::default().gamma_ri(g)
}

struct Masks {
    n: usize,
    open: Vec<u64>,
    closed: Vec<u64>,
    /// Vertices at distance at most 2, including the vertex itself.
    ball2: Vec<u64>,
}

impl Masks {
    fn new(g: &Graph) -> Masks {
        let n = g.order();
        let open: Vec<u64> = (0..n)
            .map(|v| g.adj(v).iter().fold(0, |m, &u| m | 1 << u))
            .collect();
        let closed: Vec<u64> = (0..n).map(|v| open[v] | 1 << v).collect();
        let ball2 = (0..n)
            .map(|v| g.adj(v).iter().fold(closed[v], |m, &u| m | closed[u]))
            .collect();
        Masks { n, open, closed, ball2 }
    }

    fn all(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1 << self.n) - 1
        }
    }

    fn members(&self, s: u64) -> impl Iterator<Item = usize> {
        let mut rest = s;
        std::iter::from_fn(move || {
            (rest != 0).then(|| {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                v
            })
        })
    }

    fn dominating(&self, s: u64) -> bool {
        (0..self.n).all(|v| self.closed[v] & s != 0)
    }

    fn restrained(&self, s: u64) -> bool {
        let outside = self.all() & !s;
        self.members(outside)
            .all(|v| self.open[v] & s != 0 && self.open[v] & outside != 0)
    }

    fn packing(&self, s: u64) -> bool {
        self.members(s).all(|v| self.ball2[v] & s == 1 << v)
    }

    fn to_set(&self, s: u64) -> VertexSet {
        VertexSet::from_mask(self.n, s)
    }
}

/// All `k`-subsets of `0..n` as bitmasks, in increasing numeric order.
fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit: u128 = 1 << n;
    let mut next: Option<u64> = if k > n {
        None
    } else {
        Some(((1u128 << k) - 1) as u64)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur as u128 + c as u128;
            let following = ((((r as u64) ^ cur) >> 2) / c) as u128 | r;
            (following < limit).then_some(following as u64)
        };
        Some(cur)
    })
}

impl Oracle {
    fn check_set_cap(&self, g: &Graph, what: &'static str) -> Result<()> {
        let cap = self.set_cap.min(HARD_SET_CAP);
        if g.order() > cap {
            return Err(Error::CapExceeded {
                what,
                order: g.order(),
                cap,
            });
        }
        Ok(())
    }

    fn first_level(&self, masks: &Masks, feasible: impl Fn(u64) -> bool) -> OptimalSetReport {
        for k in 0..=masks.n {
            let hits: Vec<u64> = k_subsets(masks.n, k).filter(|&s| feasible(s)).collect();
            if !hits.is_empty() {
                return OptimalSetReport {
                    value: k,
                    witnesses: hits.into_iter().map(|s| masks.to_set(s)).collect(),
                };
            }
        }
        unreachable!("the full vertex set is always feasible")
    }

    /// Domination number `γ` with all minimum dominating sets.
    pub fn gamma(&self, g: &Graph) -> Result<OptimalSetReport> {
        self.check_set_cap(g, "gamma brute force")?;
        let masks = Masks::new(g);
        Ok(self.first_level(&masks, |s| masks.dominating(s)))
    }

    /// Restrained domination number `γ_r` with all minimum RDSs.
    pub fn gamma_r(&self, g: &Graph) -> Result<OptimalSetReport> {
        self.check_set_cap(g, "gamma_r brute force")?;
        let masks = Masks::new(g);
        Ok(self.first_level(&masks, |s| masks.restrained(s)))
    }

    /// Packing number `ρ` with all maximum packings.
    pub fn rho(&self, g: &Graph) -> Result<OptimalSetReport> {
        self.check_set_cap(g, "rho brute force")?;
        let masks = Masks::new(g);
        // Packings are closed under subsets, so levels stay feasible up to ρ.
        let mut best = OptimalSetReport {
            value: 0,
            witnesses: vec![VertexSet::new(masks.n)],
        };
        for k in 1..=masks.n {
            let hits: Vec<u64> = k_subsets(masks.n, k).filter(|&s| masks.packing(s)).collect();
            if hits.is_empty() {
                break;
            }
            best = OptimalSetReport {
                value: k,
                witnesses: hits.into_iter().map(|s| masks.to_set(s)).collect(),
            };
        }
        Ok(best)
    }

    /// Restrained Italian domination number `γ_rI` with all minimum-weight RIDFs.
    pub fn gamma_ri(&self, g: &Graph) -> Result<OptimalAssignmentReport> {
        if g.order() > self.assignment_cap {
            return Err(Error::CapExceeded {
                what: "gamma_rI brute force",
                order: g.order(),
                cap: self.assignment_cap,
            });
        }
        let mut search = RidfSearch::new(g);
        // Weight 0 is never feasible: an all-zero labelling has no neighbor sums.
        for budget in 1..=2 * g.order() as u32 {
            search.budget = budget;
            search.dfs(0, 0);
            if !search.found.is_empty() {
                return Ok(OptimalAssignmentReport {
                    value: budget,
                    witnesses: std::mem::take(&mut search.found),
                });
            }
        }
        unreachable!("the all-ones labelling is always a RIDF")
    }
}

struct RidfSearch<'g> {
    g: &'g Graph,
    /// `checks[i]`: vertices whose closed neighborhood is fully labelled once
    /// vertex `i` is.
    checks: Vec<Vec<usize>>,
    labels: Vec<u8>,
    budget: u32,
    found: Vec<Assignment>,
}

impl<'g> RidfSearch<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.order();
        let mut checks = vec![Vec::new(); n];
        for v in 0..n {
            let last = g.adj(v).iter().copied().fold(v, usize::max);
            checks[last].push(v);
        }
        RidfSearch {
            g,
            checks,
            labels: vec![0; n],
            budget: 0,
            found: Vec::new(),
        }
    }

    fn satisfied(&self, v: usize) -> bool {
        if self.labels[v] != 0 {
            return true;
        }
        let nbrs = self.g.adj(v);
        let sum: u32 = nbrs.iter().map(|&u| self.labels[u] as u32).sum();
        sum >= 2 && nbrs.iter().any(|&u| self.labels[u] == 0)
    }

    fn dfs(&mut self, i: usize, weight: u32) {
        if i == self.labels.len() {
            self.found
                .push(Assignment::new(self.labels.clone()).expect("labels are 0..=2"));
            return;
        }
        for label in 0..=2u8 {
            if weight + label as u32 > self.budget {
                break;
            }
            self.labels[i] = label;
            if self.checks[i].iter().all(|&v| self.satisfied(v)) {
                self.dfs(i + 1, weight + label as u32);
            }
        }
        self.labels[i] = 0;
    }
}

/// Serializable summary shared by the brute-force and tree-DP solvers.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub n: usize,
    pub invariant: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<&'static str>,
    pub value: u64,
    pub witness_count: usize,
    pub witnesses: Witnesses,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Witnesses {
    Sets(Vec<VertexSet>),
    Assignments(Vec<Assignment>),
}

impl InvariantReport {
    pub fn from_sets(n: usize, invariant: &'static str, report: OptimalSetReport) -> Self {
        InvariantReport {
            n,
            invariant,
            method: None,
            value: report.value as u64,
            witness_count: report.witnesses.len(),
            witnesses: Witnesses::Sets(report.witnesses),
        }
    }

    pub fn from_assignments(n: usize, report: OptimalAssignmentReport) -> Self {
        InvariantReport {
            n,
            invariant: "gamma_ri",
            method: None,
            value: report.value as u64,
            witness_count: report.witnesses.len(),
            witnesses: Witnesses::Assignments(report.witnesses),
        }
    }

    pub fn with_method(mut self, method: &'static str) -> Self {
        self.method = Some(method);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::{is_dominating, is_packing, is_rds, is_ridf};
    use crate::Tree;

    fn members(r: &OptimalSetReport) -> Vec<Vec<usize>> {
        r.witnesses.iter().map(VertexSet::to_vec).collect()
    }

    #[test]
    fn subsets_by_size() {
        assert_eq!(k_subsets(4, 2).collect::<Vec<_>>(), vec![3, 5, 6, 9, 10, 12]);
        assert_eq!(k_subsets(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(k_subsets(3, 3).collect::<Vec<_>>(), vec![7]);
        assert_eq!(k_subsets(3, 4).count(), 0);
        assert_eq!(k_subsets(20, 10).count(), 184_756);
    }

    #[test]
    fn domination_numbers() {
        let star = gamma_bruteforce(&Tree::star(3)).unwrap();
        assert_eq!(star.value, 1);
        assert_eq!(members(&star), vec![vec![0]]);
        assert_eq!(gamma_bruteforce(&Tree::path(4)).unwrap().value, 2);
        assert_eq!(gamma_bruteforce(&Tree::path(7)).unwrap().value, 3);
    }

    #[test]
    fn restrained_domination_numbers() {
        let p4 = gamma_r_bruteforce(&Tree::path(4)).unwrap();
        assert_eq!(p4.value, 2);
        assert_eq!(members(&p4), vec![vec![0, 3]]);
        let star = gamma_r_bruteforce(&Tree::star(3)).unwrap();
        assert_eq!(star.value, 4);
        assert_eq!(members(&star), vec![vec![0, 1, 2, 3]]);
        assert_eq!(gamma_r_bruteforce(&Tree::path(6)).unwrap().value, 4);
    }

    #[test]
    fn restrained_italian_numbers() {
        let p4 = gamma_ri_bruteforce(&Tree::path(4)).unwrap();
        assert_eq!(p4.value, 4);
        let labels: Vec<&[u8]> = p4.witnesses.iter().map(Assignment::labels).collect();
        assert_eq!(labels, vec![&[1, 1, 1, 1][..], &[2, 0, 0, 2][..]]);
        assert_eq!(gamma_ri_bruteforce(&Tree::double_star(2, 3)).unwrap().value, 5);
        assert_eq!(gamma_ri_bruteforce(&Tree::path(6)).unwrap().value, 6);
    }

    #[test]
    fn packing_numbers() {
        let p7 = rho_bruteforce(&Tree::path(7)).unwrap();
        assert_eq!(p7.value, 3);
        assert_eq!(members(&p7), vec![vec![0, 3, 6]]);
        assert_eq!(rho_bruteforce(&Tree::star(3)).unwrap().value, 1);
        assert_eq!(rho_bruteforce(&Tree::path(4)).unwrap().value, 2);
    }

    #[test]
    fn caps_are_enforced() {
        let big = Tree::path(21);
        assert!(matches!(gamma_r_bruteforce(&big), Err(Error::CapExceeded { cap: 20, .. })));
        assert!(matches!(
            gamma_ri_bruteforce(&Tree::path(14)),
            Err(Error::CapExceeded { cap: 13, .. })
        ));
        let wide = Oracle {
            set_cap: 100,
            assignment_cap: 14,
        };
        assert!(matches!(wide.rho(&Tree::path(64)), Err(Error::CapExceeded { cap: 63, .. })));
        assert!(wide.gamma_ri(&Tree::path(14)).is_ok());
    }

    #[test]
    fn disconnected_inputs() {
        // Two isolated vertices: both must be chosen / labelled 1.
        let g = Graph::new(2, []).unwrap();
        assert_eq!(gamma_r_bruteforce(&g).unwrap().value, 2);
        assert_eq!(gamma_bruteforce(&g).unwrap().value, 2);
        assert_eq!(gamma_ri_bruteforce(&g).unwrap().value, 2);
        assert_eq!(rho_bruteforce(&g).unwrap().value, 2);
    }

    #[test]
    fn witnesses_pass_certificates() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        for s in gamma_bruteforce(&g).unwrap().witnesses {
            assert_eq!(is_dominating(&g, &s), Ok(()));
        }
        for s in gamma_r_bruteforce(&g).unwrap().witnesses {
            assert_eq!(is_rds(&g, &s), Ok(()));
        }
        for s in rho_bruteforce(&g).unwrap().witnesses {
            assert_eq!(is_packing(&g, &s), Ok(()));
        }
        for f in gamma_ri_bruteforce(&g).unwrap().witnesses {
            assert_eq!(is_ridf(&g, &f), Ok(()));
        }
    }

    #[test]
    fn json_report_shape() {
        let p4 = Tree::path(4);
        let report = InvariantReport::from_sets(4, "gamma_r", gamma_r_bruteforce(&p4).unwrap());
        assert_eq!(
            serde_json::to_string(&report).unwrap(),
            r#"{"n":4,"invariant":"gamma_r","value":2,"witness_count":1,"witnesses":[[0,3]]}"#
        );
        let report = InvariantReport::from_assignments(4, gamma_ri_bruteforce(&p4).unwrap())
            .with_method("bruteforce");
        assert_eq!(
            serde_json::to_string(&report).unwrap(),
            r#"{"n":4,"invariant":"gamma_ri","method":"bruteforce","value":4,"witness_count":2,"witnesses":[[1,1,1,1],[2,0,0,2]]}"#
        );
    }
}
