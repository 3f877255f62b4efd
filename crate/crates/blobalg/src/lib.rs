//! Exact engine for the graded blob algebra `B_d^κ` restricted to one-column
//! bipartitions.
//!
//! The crate is layered bottom-up:
//!
//! * [`combinatorics`]: bipartitions, standard tableaux, residues, degrees,
//!   dominance, initial and Garnir tableaux, reduced words;
//! * [`geometry`]: the Â₁ alcove geometry, paths, reflections, linkage and the
//!   path predicates describing images of homomorphisms and simple modules;
//! * [`rewrite`]: the straightening engine computing the action of `e(i)`,
//!   `y_r` and `ψ_r` on every cell module;
//! * [`cellmod`]: homomorphisms between cell modules, Gram matrices, simple
//!   dimensions and decomposition numbers;
//! * [`bgg`]: BGG complexes, their homology, and the branching rule.
//!
//! ```
//! use blobalg::combinatorics::{AlgebraConfig, Bipartition, Tableau};
//! let cfg = AlgebraConfig::new(9, 4, (0, 2)).unwrap();
//! let t = Tableau::from_columns(&[4, 7], &[1, 2, 3, 5, 6, 8, 9]).unwrap();
//! assert_eq!(t.residue_sequence(&cfg), vec![2, 1, 0, 0, 3, 2, 3, 1, 0]);
//! assert_eq!(t.degree(&cfg), -1);
//! assert_eq!(t.shape(), Bipartition::new(2, 7));
//! ```

pub mod bgg;
pub mod cellmod;
pub mod combinatorics;
pub mod geometry;
pub mod rewrite;

pub use combinatorics::{AlgebraConfig, Bipartition, Node, Tableau};
pub use geometry::{GeometryContext, Length, Path, Side};
