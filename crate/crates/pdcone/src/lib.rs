//! Ordered probability measures on the cone of positive-definite matrices.
//!
//! This crate implements the geometry of the open cone of real symmetric
//! positive-definite matrices under the Thompson metric, finitely supported
//! probability measures on it with exact rational weights, and the
//! structures that tie the two together:
//!
//! - **Thompson geometry** ([`cone`]): the part metric
//!   `d(x, y) = max{log M(x/y), log M(y/x)}`, the Loewner order, and the
//!   identity of closed metric balls with order intervals
//!   `[e^{-r}a, e^{r}a]`.
//! - **Measures and couplings** ([`measure`]): canonical discrete measures,
//!   exact rational weights, push-forwards, mixtures, replication to
//!   uniform tuples.
//! - **Stochastic order** ([`stochastic`]): a max-flow decision procedure
//!   returning either an order-compatible coupling or an explicit violating
//!   subset, an independent brute-force decider, and Hall-type matchings
//!   for uniform tuples.
//! - **Optimal transport** ([`transport`]): exact Wasserstein-1 distance by
//!   min-cost flow over rational marginals, plus a Hungarian solver for the
//!   uniform assignment case.
//! - **Order-preserving approximation** ([`approx`]): truncation into a
//!   growing interval schedule and dyadic weight rounding, combining into
//!   paired sequences `q_n ≤ p_n` that converge to `q ≤ p` from below and
//!   above.
//! - **Karcher means** ([`karcher`]): the weighted Karcher mean solved by
//!   damped fixed-point iteration, and the induced barycentric map, which
//!   is monotone for the stochastic order and contractive for the
//!   Wasserstein-1 distance.
//!
//! # Where to start
//!
//! The `examples/` directory is the primary interface — one runnable
//! program per capability:
//!
//! ```text
//! cargo run --example thompson_geometry      # metric, order, balls = intervals
//! cargo run --example measures_and_transport # measures, couplings, Wasserstein-1
//! cargo run --example stochastic_order       # flow decider, certificates, Hall
//! cargo run --example order_approximation    # truncation + dyadic pipeline
//! cargo run --example karcher_barycenter     # means, monotonicity, contraction
//! cargo run --example converge_experiment    # seeded end-to-end experiment
//! ```
//!
//! A thin `pdcone` binary exposes the same operations over JSON files for
//! scripting; see `pdcone --help`.

pub mod approx;
pub mod cone;
pub mod error;
pub mod experiment;
mod flow;
pub mod io;
mod jacobi;
pub mod karcher;
pub mod measure;
pub mod stochastic;
pub mod transport;

pub use approx::{
    dyadic_lower, dyadic_upper, interval_cover_reduce, order_approximate_pair, truncate_lower,
    truncate_upper, ApproxSchedule, ApproxStep, ApproxTrace, CoverDirection, DYADIC_DEPTH_CAP,
};
pub use cone::{
    congruence_pd, eig_sym, in_interval, loewner_leq, m_ratio, order_unit_norm, spectral_map,
    sym_exp, thompson_ball, thompson_dist, OrderInterval, PDMatrix, SpectralFn, SymMatrix,
    Tolerances, ASYMMETRY_LIMIT, MAX_DIM,
};
pub use error::{Error, Result};
pub use experiment::{
    converge_csv, gen_ordered_pair, gen_pd, run_converge_experiment, write_approx_pair,
    ExperimentConfig, EXPERIMENT_DIM_CAP, EXPERIMENT_SUPPORT_CAP,
};
pub use io::{
    read_json, write_json, ArcJson, CertificateJson, KarcherJson, MatrixJson, MeasureJson,
    StepJson, TransportPlanJson,
};
pub use karcher::{
    barycenter, check_contractive, check_monotone, geometric_mean_2, karcher_mean, KarcherResult,
    SolverConfig, STEP_FLOOR,
};
pub use measure::{
    dirac, mixture, product_coupling, push_forward, replicate_to_uniform, uniform_of_tuple,
    Coupling, DiscreteMeasure, Rational, UniformTuple, REPLICATION_CAP,
};
pub use stochastic::{
    hall_matching, stochastic_leq_bruteforce, stochastic_leq_flow, upper_closure,
    OrderCertificate, BRUTEFORCE_SUPPORT_CAP, HALL_CAP, ORDER_SUPPORT_CAP,
};
pub use transport::{
    assignment_uniform, plan_cost_bound, wasserstein1, TransportPlan, ASSIGNMENT_CAP,
    TRANSPORT_SUPPORT_CAP,
};
