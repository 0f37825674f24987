use std::fmt;

use crate::scalar::Scalar;
use crate::virtue::{Character, EType, ExemplarSnapshot};

/// One of the four food islands; island `i` is reached over bridge `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Island(u8);

impl Island {
    pub const COUNT: usize = 4;
    pub const ALL: [Island; 4] = [Island(0), Island(1), Island(2), Island(3)];

    pub fn new(index: usize) -> Option<Self> {
        (index < Self::COUNT).then_some(Island(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Island {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "island {}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AgentId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeathCause {
    Starved,
    Drowned,
}

/// Per-cycle scratch, reset at the start of every cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DayScratch {
    /// Bridge crossed (and island visited) this cycle.
    pub crossed: Option<Island>,
    pub fallen: bool,
    pub died: Option<DeathCause>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgentState<T: Scalar = f64> {
    pub id: AgentId,
    pub character: Character<T>,
    pub etype: EType,
    /// Cumulative eudaimonic reward.
    pub e_value: T,
    pub reserve: T,
    /// Where the agent believes food currently grows.
    pub belief: Option<Island>,
    pub alive: bool,
    pub today: DayScratch,
}

impl<T: Scalar> AgentState<T> {
    pub fn newborn(id: AgentId, character: Character<T>, etype: EType, reserve: T) -> Self {
        Self {
            id,
            character,
            etype,
            e_value: T::zero(),
            reserve,
            belief: None,
            alive: true,
            today: DayScratch::default(),
        }
    }

    pub fn snapshot(&self) -> ExemplarSnapshot<T> {
        ExemplarSnapshot { etype: self.etype, e_value: self.e_value, character: self.character }
    }
}
