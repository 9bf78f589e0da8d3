//! Exact computation of the restrained domination number `γ_r` and the
//! restrained Italian domination number `γ_rI`, together with builders and
//! recognizers for the two constructive tree families on which these
//! parameters are extremal:
//!
//! * family **H**: trees with `γ_r = γ_rI` (apart from stars), grown from a
//!   double star by attaching double stars at leaf-class vertices and stars
//!   at stem-class vertices;
//! * family **F**: trees with `γ_rI = 2·γ_r`, grown from `P₄` by attaching
//!   paths `P₃` and healthy spiders at leaf-class vertices.
//!
//! The crate is layered bottom-up:
//!
//! | module           | role                                                      |
//! |------------------|-----------------------------------------------------------|
//! | [`graph`]        | graphs, trees, rooted views, diametral paths, canonical codes |
//! | [`io`]           | edge-list, graph6 and assignment text formats             |
//! | [`certificates`] | checkers for dominating sets, RDS, RIDF, packings         |
//! | [`oracle`]       | brute-force exact values with all optimal witnesses       |
//! | [`treedp`]       | linear-time tree DP for `γ_r` and `γ_rI`                  |
//! | [`families`]     | construction traces, replay, recognition, sampling        |
//! | [`enumerate`]    | all non-isomorphic free trees of a given order            |
//! | [`verify`]       | exhaustive and randomized checking harness                |
//!
//! ```
//! use rdlab::families::{recognize_f, recognize_h, HVerdict};
//! use rdlab::treedp::{gamma_r_tree, gamma_ri_tree};
//! use rdlab::Tree;
//!
//! let t = Tree::double_star(2, 3);
//! assert_eq!(gamma_r_tree(&t).value, 5);
//! assert_eq!(gamma_ri_tree(&t).value, 5);
//! assert!(matches!(recognize_h(&t), HVerdict::Member(_)));
//! assert!(recognize_f(&t).is_none());
//! ```

pub mod certificates;
pub mod enumerate;
mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod treedp;
pub mod verify;
mod vertex_set;

pub use certificates::{Assignment, Violation};
pub use error::{Error, Result};
pub use families::{ConstructionTrace, Family, FamilyState};

pub use graph::{DiametralPath, Graph, RootedTree, Tree};
pub use vertex_set::VertexSet;
