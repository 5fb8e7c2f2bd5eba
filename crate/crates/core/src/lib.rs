//! Multi-criteria decisions over uncertain linguistic satisfactions.
//!
//! Each criterion's satisfaction is known only as a probability
//! distribution, a possibility distribution, an interval or a certain grade
//! on a scale of triangular fuzzy numbers. Every case is turned into a
//! cumulative set measure over the best-first prefixes of the scale.
//! Criteria are ordered by measure-based dominance, or by a Choquet
//! surrogate when dominance is incomplete. The ordered measures are then
//! OWA-aggregated with quantifier-generated weights, and alternatives are
//! compared the same way on their aggregates.
//!
//! ```
//! use owadom::owa::{quantifier_weights, Quantifier};
//!
//! let w = quantifier_weights(&Quantifier::Power(2.0), 3).unwrap();
//! assert_eq!(w.as_slice(), &[1.0 / 9.0, 3.0 / 9.0, 5.0 / 9.0]);
//! ```

pub mod diag;
pub mod dominance;
pub mod exec;
pub mod fmt;
pub mod fuzzy;
pub mod lattice;
pub mod measures;
pub mod owa;
pub mod pipeline;
pub mod problem_file;
pub mod report;

pub use diag::Diagnostic;
pub use dominance::{
    aggregate_measure, delta_weights, dominates, order_criteria, surrogate, CriterionOrdering,
    DominanceRelation, OrderingMethod, RankingMethod,
};
pub use exec::Exec;
pub use fuzzy::{rank_centroid, Centroid, Gfn, Tfn};
pub use lattice::{
    inclusion_index, lattice_max, lattice_min, rank_lattice_ini, LatticeOptions, SampledMembership,
    TNorm,
};
pub use measures::{CumulativeMeasure, LinguisticScale, UncertainSatisfaction};
pub use owa::{
    importance_weights, owa_aggregate, quantifier_weights, ImportanceVector, Quantifier,
    WeightVector,
};
pub use pipeline::{
    rank_alternatives, score_alternative, AlternativeScore, DecisionProblem, RankingReport,
};
pub use problem_file::{parse_problem, to_problem_text, Strictness};
