//! Exact resistance distances and Kirchhoff indices for phenylene chains.
//!
//! Every number in this crate is an exact [`Rational`]. Resistances come
//! from two independent routes: local circuit rewrites
//! ([`reduction`]) and elimination on the conductance Laplacian
//! ([`laplacian`]). Each is used to check the other.
//!
//! ```
//! use phenylene::{build_chain, kirchhoff_index, ChainCode, Rational};
//!
//! let hexagon = build_chain(&"n=1".parse::<ChainCode>()?)?;
//! assert_eq!(kirchhoff_index(&hexagon.network)?, Rational::frac(35, 2));
//! # Ok::<(), phenylene::Error>(())
//! ```
//!
//! The guide in `book/` walks through the constructions and the extremal
//! checks; its code blocks run as doc-tests of this crate.

pub mod chain;
pub mod cli;
pub mod error;
pub mod extremal;
pub mod io;
pub mod laplacian;
pub mod lemmas;
pub mod network;
pub mod random;
pub mod rational;
pub mod reduction;
pub mod simplify;
pub mod st_isomer;

pub use chain::{
    build_chain, build_ladder, build_terminal_chain, build_terminal_chain_with, canonical_code, edge_key, is_all_kink,
    ChainCode, EdgeWeights, LabeledChain, SquareCorners, TerminalChain,
};
pub use error::{ArithError, Error, Result};
pub use laplacian::{
    effective_resistance, kirchhoff_index, resistance_matrix, resistance_sum, resistances_from, ResistanceMatrix,
};
pub use network::{Edge, ResistanceNetwork, VertexId};
pub use rational::Rational;
pub use reduction::{delta_y, parallel_reduce, series_reduce, star_mesh_eliminate, ReductionStep, ReductionTrace};
pub use simplify::{simplify_chain_circuit, Simplified, Source};
pub use st_isomer::{lemma4_delta, make_st_pair, verify_lemma4, Lemma4Report, StPair};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/chains.md")]
    mod chains {}
    #[doc = include_str!("../../../book/src/resistance.md")]
    mod resistance {}
    #[doc = include_str!("../../../book/src/reductions.md")]
    mod reductions {}
    #[doc = include_str!("../../../book/src/st_isomers.md")]
    mod st_isomers {}
    #[doc = include_str!("../../../book/src/extremal.md")]
    mod extremal {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
