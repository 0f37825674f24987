//! Deterministic simulator of the BridgeWorld commons, populated by agents
//! whose courage, generosity and honesty are trained by eudaimonic reward.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix it to `f64`, which is what the command-line tool uses.

pub mod env;
pub mod error;
pub mod experiment;
pub mod io;
pub mod rng;
pub mod scalar;
pub mod virtue;

pub use env::{AgentId, AgentState, ConfigError, Island, World, WorldConfig};
pub use error::{Error, Result};
pub use experiment::{Condition, SummaryRow, TelemetryRow};
pub use rng::{RngError, RngStream};
pub use scalar::Scalar;
pub use virtue::{Branch, Character, EType, EventKind, LearnConfig, MoralEvent, ReinforcementRule, VirtueKind};

pub type World64 = World<f64>;
pub type World32 = World<f32>;
pub type WorldConfig64 = WorldConfig<f64>;
pub type WorldConfig32 = WorldConfig<f32>;
pub type Character64 = Character<f64>;
pub type Character32 = Character<f32>;
pub type AgentState64 = AgentState<f64>;
pub type AgentState32 = AgentState<f32>;
pub type TelemetryRow64 = TelemetryRow<f64>;
pub type TelemetryRow32 = TelemetryRow<f32>;
pub type SummaryRow64 = SummaryRow<f64>;
pub type SummaryRow32 = SummaryRow<f32>;
