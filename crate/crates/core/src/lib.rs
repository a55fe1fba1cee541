//! Parametrized cellular cohomology over finite-group base spaces.
//!
//! Everything is exact: integer matrices are `BigInt`, groups come out in
//! invariant-factor form, and every computation either returns a value or a
//! typed error.
//!
//! ## Examples
//!
//! ```text
//! examples/
//! ├── orbit_category.rs           # subgroups, cosets, orbit maps
//! ├── groupoid_words.rs           # word reduction and composition in a presented groupoid
//! ├── ro_classification.rs        # the group of virtual representations
//! ├── mackey_spans.rs             # span composition and evaluation
//! ├── disk_cohomology.rs          # a one-cell complex over Z and F2
//! ├── circle_extended_grading.rs  # one circle, four gradings
//! ├── projective_c4.rs            # a C4 complex with fiber data only
//! ├── sign_verifier.rs            # claimed underlying matrices vs computed ones
//! ├── local_coefficients.rs       # twisted cohomology against covering spaces
//! └── smith_normal_form.rs        # SNF and a small cochain complex
//! ```
//!
//! ```bash
//! cargo run -p parcohom --example disk_cohomology
//! ```
//!
//! ## Modules
//!
//! - [`abelian`]: integer matrices, Smith normal form, cochain complexes
//! - [`group`]: finite groups, subgroups, orbit maps
//! - [`groupoid`]: presented groupoids over the orbit category
//! - [`rep`]: virtual representations and their classification
//! - [`mackey`]: coefficient systems and span calculus
//! - [`cw`]: cell complexes, cochains, the sign verifier
//! - [`local`]: local coefficients on non-equivariant complexes
//! - [`doc`]: the `.doc` input format
//! - [`cli`]: the subcommands behind the `parcohom` binary

pub mod abelian;
pub mod group;
pub mod groupoid;
pub mod rep;
pub mod mackey;
pub mod cw;
pub mod local;
pub mod doc;
pub mod cli;
