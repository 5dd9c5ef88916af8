//! Channel simulation: the ground-truth side of every decoy experiment.
//!
//! Provides photon-number distributions for the probe sources, yield models
//! mapping photon numbers to click probabilities, exact gain computation
//! with certified truncation bounds, and bit-reproducible Monte Carlo click
//! sampling.

pub mod error;
pub mod experiment;
pub mod gain;
pub mod rng;
pub mod source;
pub mod yield_model;

pub use error::{ChannelError, Result};
pub use experiment::{allocate_budget, run_experiment, ProbeSources, Pulses};
pub use gain::{a_from_q, coincidence_gain_exact, gain_exact, joint_gain_exact};
pub use rng::{binomial_draw, sample_clicks, setting_stream, uniform_unit};
pub use source::SourceDistribution;
pub use yield_model::{yield_at, YieldModel};
