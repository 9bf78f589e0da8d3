//! Linear-time tree dynamic programs for `γ_r` and `γ_rI`.
//!
//! Both solvers share one engine. The tree is rooted at vertex `0`; every
//! vertex keeps a small table indexed by a local state, built by folding its
//! children in one at a time. A child can only be folded in from a state
//! that is already complete *given the parent's choice*, which is where the
//! two problems differ:
//!
//! * RDS: an unselected vertex needs a selected neighbor and an unselected
//!   neighbor. The parent supplies exactly one of the two, so an unselected
//!   child still missing both requirements can never be closed.
//! * RIDF: a `0`-vertex needs neighbor labels summing to at least 2 and a
//!   `0`-labelled neighbor. A labelled parent adds its label to the sum, a
//!   `0` parent supplies the `0`-neighbor, never both.
//!
//! Back-pointers stored per fold step give one optimal witness. Ties are
//! broken towards the lowest state index (unselected / lower labels first).

use crate::{oracle::InvariantReport, Assignment, Tree, VertexSet};

trait Rules {
    const STATES: usize;
    /// Cost of a vertex with no children folded in yet, if it may start in `state`.
    fn init(state: usize) -> Option<u32>;
    /// Parent state after folding in a finished child, or `None` if the
    /// child cannot be closed under this parent.
    fn absorb(parent: usize, child: usize) -> Option<usize>;
    /// States in which the root is complete.
    fn accepts(state: usize) -> bool;
}

struct Solved {
    value: u32,
    states: Vec<usize>,
}

fn solve<R: Rules>(t: &Tree) -> Solved {
    let rooted = t.root_at(0).expect("vertex 0 exists");
    let n = t.order();
    let mut tables: Vec<Vec<Option<u32>>> = vec![Vec::new(); n];
    let mut back: Vec<Vec<Vec<(u8, u8)>>> = vec![Vec::new(); n];

    for &v in rooted.bfs_order().iter().rev() {
        let mut acc: Vec<Option<u32>> = (0..R::STATES).map(R::init).collect();
        for &c in rooted.children(v) {
            let child = &tables[c];
            let mut next = vec![None; R::STATES];
            let mut ptr = vec![(0u8, 0u8); R::STATES];
            for (s, a) in acc.iter().enumerate() {
                let Some(a) = a else { continue };
                for (cs, cv) in child.iter().enumerate() {
                    let Some(cv) = cv else { continue };
                    if let Some(ns) = R::absorb(s, cs) {
                        let cand = a + cv;
                        if next[ns].map_or(true, |best| cand < best) {
                            next[ns] = Some(cand);
                            ptr[ns] = (s as u8, cs as u8);
                        }
                    }
                }
            }
            acc = next;
            back[v].push(ptr);
        }
        tables[v] = acc;
    }

    let root = rooted.root();
    let (root_state, value) = tables[root]
        .iter()
        .enumerate()
        .filter(|&(s, _)| R::accepts(s))
        .filter_map(|(s, val)| val.map(|val| (s, val)))
        .min_by_key(|&(s, val)| (val, s))
        .expect("every tree has a feasible solution");

    let mut states = vec![usize::MAX; n];
    states[root] = root_state;
    for &v in rooted.bfs_order() {
        let mut s = states[v];
        for (j, &c) in rooted.children(v).iter().enumerate().rev() {
            let (ps, cs) = back[v][j][s];
            states[c] = cs as usize;
            s = ps as usize;
        }
    }
    Solved { value, states }
}

/// Local state of a vertex in the restrained-domination DP.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RdsState {
    /// Unselected; `dominated`: has a selected neighbor so far; `restrained`:
    /// has an unselected neighbor so far.
    Out { dominated: bool, restrained: bool },
    In,
}

impl RdsState {
    pub const ALL: [RdsState; 5] = [
        RdsState::Out { dominated: false, restrained: false },
        RdsState::Out { dominated: true, restrained: false },
        RdsState::Out { dominated: false, restrained: true },
        RdsState::Out { dominated: true, restrained: true },
        RdsState::In,
    ];

    fn index(self) -> usize {
        RdsState::ALL.iter().position(|&s| s == self).unwrap()
    }

    /// Folds a finished child into this (parent) state.
    pub fn absorb(self, child: RdsState) -> Option<RdsState> {
        match (self, child) {
            (RdsState::In, RdsState::In) => Some(RdsState::In),
            // The selected parent dominates the child; the child must already
            // have its unselected neighbor.
            (RdsState::In, RdsState::Out { restrained, .. }) => restrained.then_some(RdsState::In),
            (RdsState::Out { restrained, .. }, RdsState::In) => Some(RdsState::Out {
                dominated: true,
                restrained,
            }),
            // The unselected parent restrains the child; the child must already
            // be dominated.
            (RdsState::Out { dominated, .. }, RdsState::Out { dominated: child_dom, .. }) => {
                child_dom.then_some(RdsState::Out {
                    dominated,
                    restrained: true,
                })
            }
        }
    }

    /// Complete without help from a parent.
    pub fn is_closed(self) -> bool {
        matches!(
            self,
            RdsState::In | RdsState::Out { dominated: true, restrained: true }
        )
    }
}

struct RdsRules;

impl Rules for RdsRules {
    const STATES: usize = 5;

    fn init(state: usize) -> Option<u32> {
        match RdsState::ALL[state] {
            RdsState::In => Some(1),
            RdsState::Out { dominated: false, restrained: false } => Some(0),
            RdsState::Out { .. } => None,
        }
    }

    fn absorb(parent: usize, child: usize) -> Option<usize> {
        RdsState::ALL[parent]
            .absorb(RdsState::ALL[child])
            .map(RdsState::index)
    }

    fn accepts(state: usize) -> bool {
        RdsState::ALL[state].is_closed()
    }
}

/// Local state of a vertex in the restrained-Italian DP.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RidfState {
    /// Label 0; `sum`: neighbor label sum so far, capped at 2; `zero_neighbor`:
    /// has a `0`-labelled neighbor so far.
    Zero { sum: u8, zero_neighbor: bool },
    One,
    Two,
}

impl RidfState {
    pub const ALL: [RidfState; 8] = [
        RidfState::Zero { sum: 0, zero_neighbor: false },
        RidfState::Zero { sum: 0, zero_neighbor: true },
        RidfState::Zero { sum: 1, zero_neighbor: false },
        RidfState::Zero { sum: 1, zero_neighbor: true },
        RidfState::Zero { sum: 2, zero_neighbor: false },
        RidfState::Zero { sum: 2, zero_neighbor: true },
        RidfState::One,
        RidfState::Two,
    ];

    fn index(self) -> usize {
        RidfState::ALL.iter().position(|&s| s == self).unwrap()
    }

    pub fn label(self) -> u8 {
        match self {
            RidfState::Zero { .. } => 0,
            RidfState::One => 1,
            RidfState::Two => 2,
        }
    }

    pub fn absorb(self, child: RidfState) -> Option<RidfState> {
        match (self, child) {
            (RidfState::Zero { sum, .. }, RidfState::Zero { sum: child_sum, .. }) => {
                // Parent is the child's 0-neighbor but adds nothing to its sum.
                (child_sum >= 2).then_some(RidfState::Zero {
                    sum,
                    zero_neighbor: true,
                })
            }
            (RidfState::Zero { sum, zero_neighbor }, labelled) => Some(RidfState::Zero {
                sum: (sum + labelled.label()).min(2),
                zero_neighbor,
            }),
            // Labelled parent adds to the child's sum but cannot be its 0-neighbor.
            (parent, RidfState::Zero { sum, zero_neighbor }) => {
                (zero_neighbor && sum + parent.label() >= 2).then_some(parent)
            }
            (parent, _) => Some(parent),
        }
    }

    pub fn is_closed(self) -> bool {
        !matches!(self, RidfState::Zero { sum, zero_neighbor } if sum < 2 || !zero_neighbor)
    }
}

struct RidfRules;

impl Rules for RidfRules {
    const STATES: usize = 8;

    fn init(state: usize) -> Option<u32> {
        match RidfState::ALL[state] {
            RidfState::Zero { sum: 0, zero_neighbor: false } => Some(0),
            RidfState::Zero { .. } => None,
            s => Some(s.label() as u32),
        }
    }

    fn absorb(parent: usize, child: usize) -> Option<usize> {
        RidfState::ALL[parent]
            .absorb(RidfState::ALL[child])
            .map(RidfState::index)
    }

    fn accepts(state: usize) -> bool {
        RidfState::ALL[state].is_closed()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RdsSolution {
    pub value: usize,
    pub set: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RidfSolution {
    pub value: u32,
    pub assignment: Assignment,
}

/// `γ_r(T)` and one minimum restrained dominating set.
pub fn gamma_r_tree(t: &Tree) -> RdsSolution {
    let solved = solve::<RdsRules>(t);
    let set = VertexSet::from_members(
        t.order(),
        (0..t.order()).filter(|&v| RdsState::ALL[solved.states[v]] == RdsState::In),
    );
    RdsSolution {
        value: solved.value as usize,
        set,
    }
}

/// `γ_rI(T)` and one minimum-weight restrained Italian dominating function.
pub fn gamma_ri_tree(t: &Tree) -> RidfSolution {
    let solved = solve::<RidfRules>(t);
    let labels = solved
        .states
        .iter()
        .map(|&s| RidfState::ALL[s].label())
        .collect();
    RidfSolution {
        value: solved.value,
        assignment: Assignment::new(labels).expect("labels are 0..=2"),
    }
}

impl RdsSolution {
    pub fn report(self, n: usize) -> InvariantReport {
        InvariantReport::from_sets(
            n,
            "gamma_r",
            crate::oracle::OptimalSetReport {
                value: self.value,
                witnesses: vec![self.set],
            },
        )
        .with_method("treedp")
    }
}

impl RidfSolution {
    pub fn report(self, n: usize) -> InvariantReport {
        InvariantReport::from_assignments(
            n,
            crate::oracle::OptimalAssignmentReport {
                value: self.value,
                witnesses: vec![self.assignment],
            },
        )
        .with_method("treedp")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::{is_rds, is_ridf};

    #[test]
    fn rds_values() {
        assert_eq!(gamma_r_tree(&Tree::path(4)).value, 2);
        assert_eq!(gamma_r_tree(&Tree::path(7)).value, 3);
        let ds = gamma_r_tree(&Tree::double_star(2, 2));
        assert_eq!(ds.value, 4);
        assert_eq!(ds.set.to_vec(), vec![2, 3, 4, 5]);
    }

    #[test]
    fn ridf_values() {
        let p4 = gamma_ri_tree(&Tree::path(4));
        assert_eq!(p4.value, 4);
        assert_eq!(is_ridf(&Tree::path(4), &p4.assignment), Ok(()));
        assert_eq!(p4.assignment.weight(), 4);
        assert_eq!(gamma_ri_tree(&Tree::path(6)).value, 6);
        let star = gamma_ri_tree(&Tree::star(3));
        assert_eq!(star.value, 4);
        assert_eq!(star.assignment.labels(), &[1, 1, 1, 1]);
    }

    #[test]
    fn tiny_trees() {
        for n in 1..=2 {
            let t = Tree::path(n);
            let rds = gamma_r_tree(&t);
            assert_eq!(rds.value, n);
            assert_eq!(rds.set, VertexSet::full(n));
            let ridf = gamma_ri_tree(&t);
            assert_eq!(ridf.value as usize, n);
            assert_eq!(ridf.assignment, Assignment::constant(n, 1).unwrap());
        }
    }

    #[test]
    fn witnesses_are_certified() {
        for t in [
            Tree::path(9),
            Tree::star(6),
            Tree::healthy_spider(4),
            Tree::double_star(3, 1),
        ] {
            let rds = gamma_r_tree(&t);
            assert_eq!(is_rds(&t, &rds.set), Ok(()));
            assert_eq!(rds.set.len(), rds.value);
            let ridf = gamma_ri_tree(&t);
            assert_eq!(is_ridf(&t, &ridf.assignment), Ok(()));
            assert_eq!(ridf.assignment.weight(), ridf.value);
        }
    }

    #[test]
    fn rds_child_closing_rules() {
        use RdsState::*;
        let none = Out { dominated: false, restrained: false };
        let dom_only = Out { dominated: true, restrained: false };
        let res_only = Out { dominated: false, restrained: true };
        // A selected parent fixes domination only.
        assert_eq!(In.absorb(none), None);
        assert_eq!(In.absorb(dom_only), None);
        assert_eq!(In.absorb(res_only), Some(In));
        // An unselected parent fixes the restraint only.
        assert_eq!(none.absorb(none), None);
        assert_eq!(none.absorb(res_only), None);
        assert_eq!(none.absorb(dom_only), Some(res_only));
        assert_eq!(none.absorb(In), Some(dom_only));
        // a leaf can never stay unselected, whatever its parent does
        for parent in RdsState::ALL {
            assert_eq!(parent.absorb(none), None);
        }
    }

    #[test]
    fn ridf_child_closing_rules() {
        use RidfState::*;
        let bare = Zero { sum: 0, zero_neighbor: false };
        let deficit_one = Zero { sum: 1, zero_neighbor: true };
        let summed = Zero { sum: 2, zero_neighbor: false };
        // Deficit 2 and no 0-neighbor: no parent label closes both.
        for parent in RidfState::ALL {
            assert_eq!(parent.absorb(bare), None);
        }
        assert_eq!(One.absorb(deficit_one), Some(One));
        assert_eq!(Two.absorb(deficit_one), Some(Two));
        assert_eq!(bare.absorb(deficit_one), None);
        assert_eq!(bare.absorb(summed), Some(Zero { sum: 0, zero_neighbor: true }));
        assert_eq!(One.absorb(summed), None);
        assert_eq!(bare.absorb(Two), Some(summed));
        assert_eq!(Zero { sum: 1, zero_neighbor: false }.absorb(Two), Some(summed));
    }

    #[test]
    fn long_paths_are_linear() {
        // Deep trees must not recurse.
        let t = Tree::path(200_000);
        assert!(gamma_r_tree(&t).value > 0);
        assert!(gamma_ri_tree(&t).value > 0);
    }
}
