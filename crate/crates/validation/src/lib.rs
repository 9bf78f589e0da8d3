//! Holds the `acceptance` test target, which runs every sweep with the
//! default seed and prints one verdict line per criterion.
//!
//! ```text
//! cargo test -p rdlab-validation --test acceptance
//! ```
