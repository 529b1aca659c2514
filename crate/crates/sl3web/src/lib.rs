//! Uniformly random reduced sl3 webs.
//!
//! The crate samples 3×n standard Young tableaux exactly, turns them into
//! m-diagrams and reduced webs, and measures the sizes, types and depths of
//! interior faces. On the analytic side it evaluates the lattice Green's
//! function of the three-step walk in closed form and solves the Dirichlet
//! problems that give the limiting face statistics.

pub mod arrangement;
pub mod exactmath;
pub mod geometry;
pub mod dirichlet;
pub mod mdiagram;
pub mod montecarlo;
pub mod rng;
pub mod sampler;

pub use arrangement::{build_arrangement, to_web, Arrangement, FaceRecord, FaceType, Web};
pub use mdiagram::{build_mdiagram, validate, Arc, Color, MDiagram};
pub use sampler::{count_webs, path_to_tableau, sample_path, LatticePath, Step, Tableau3xN};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/mdiagrams.md")]
    mod mdiagrams {}
    #[doc = include_str!("../../../book/src/faces.md")]
    mod faces {}
    #[doc = include_str!("../../../book/src/green.md")]
    mod green {}
    #[doc = include_str!("../../../book/src/dirichlet.md")]
    mod dirichlet {}
    #[doc = include_str!("../../../book/src/census.md")]
    mod census {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
