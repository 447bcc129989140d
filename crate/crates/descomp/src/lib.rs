//! Exact description complexity, formula-size games, and entropy for finite
//! model classes under universal modal logics and tiny-scale FO.
//!
//! The crate is organized around the pipeline: formulas ([`syntax`]) are
//! evaluated over finite models ([`model`], [`semantics`]); class partitions
//! carry exact sizes and entropies ([`entropy`]); minimal defining formulas
//! come from a dynamic program over denotations ([`complexity`]) and are
//! bounded from below by formula-size games ([`game`]); counting for
//! higher-arity vocabularies lives in [`census`]; [`harness`] drives
//! reproducible experiments for the CLI.

pub mod census;
pub mod complexity;
pub mod entropy;
pub mod error;
pub mod game;
pub mod harness;
pub mod model;
pub mod semantics;
pub mod syntax;

pub use error::{Error, Result};
pub use model::{
    enumerate_kripke, KripkeModel, PointedModel, RelationalStructure, TypeCountVector, TypeSet,
};
pub use semantics::{eval_fo, eval_gmlu, Denotation, FoUniverse, GmluUniverse, MluUniverse};
pub use syntax::{dual_negate, parse, render, size, type_formula, Dialect, Formula, OneType, Vocabulary};
