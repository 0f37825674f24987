//! BridgeWorld: a home island, four food islands, and the daily cycle.

mod agent;
mod config;
mod world;

pub use agent::{AgentId, AgentState, DayScratch, DeathCause, Island};
pub use config::{ConfigError, WorldConfig};
pub use world::{beg_factor, beg_factor_selfish, CycleReport, EventTally, RescueOutcome, World};
