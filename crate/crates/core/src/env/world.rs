//! The BridgeWorld state machine.
//!
//! A cycle runs these phases in order: food relocation (every
//! `food_update_frequency`-th cycle), ask for the food location, cross
//! bridges, rescue the fallen, collect food and return, beg, eat, copy moral
//! exemplars, rebirth. Agents are visited in roster order inside each phase.
//!
//! Draw order per phase:
//!
//! * init: three `uniform(-1, 1)` per agent (courage, generosity, honesty) in
//!   roster order, then `choose(4)` for the food island.
//! * relocation: `choose(4)`.
//! * ask: per asker, `choose(others)` for the partner, then `choose(3)` if the
//!   partner lies.
//! * cross: per agent, `choose(4)` if it has no belief, then `bernoulli(FC)`.
//! * rescue: per fallen agent, `uniform(-1, 1)` for the stream level, a
//!   shuffle of the candidates (only when there are any), then one
//!   `uniform(-1, 1)` for the first attempt.
//! * beg: per beggar, `choose(others)`.
//! * exemplar: per alive agent, `choose(others)`.
//! * rebirth: per dead slot, `bernoulli(MC)`, then either three uniform draws
//!   or two parent choices (`choose(n)`, `choose(n - 1)`).

use crate::env::agent::{AgentId, AgentState, DayScratch, DeathCause, Island};
use crate::env::config::{ConfigError, WorldConfig};
use crate::rng::RngStream;
use crate::scalar::Scalar;
use crate::virtue::{
    adopt_exemplar, decide_excess, eudaimonic_delta, learn, Branch, Character, EType, EventKind, MoralEvent,
};

/// `(1 - R / MR) * ((generosity + 1) / 2)`.
pub fn beg_factor<T: Scalar>(reserve: T, max_reserve: T, generosity: T) -> T {
    (T::one() - reserve / max_reserve) * ((generosity + T::one()) / T::two())
}

/// Beg factor with the generosity term replaced by the selfishness term
/// `1 - (generosity + 1) / 2`.
pub fn beg_factor_selfish<T: Scalar>(reserve: T, max_reserve: T, generosity: T) -> T {
    (T::one() - reserve / max_reserve) * (T::one() - (generosity + T::one()) / T::two())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RescueOutcome {
    /// Nobody attempted; the fallen agent drowned.
    Unaided,
    Rescued {
        rescuer: AgentId,
    },
    BothDrowned {
        rescuer: AgentId,
    },
}

/// Counts of moral events, indexed by [`EventKind::index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EventTally(pub [u32; 6]);

impl EventTally {
    pub fn record(&mut self, kind: EventKind) {
        self.0[kind.index()] += 1;
    }

    pub fn get(&self, kind: EventKind) -> u32 {
        self.0[kind.index()]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleReport<T: Scalar = f64> {
    /// 1-based number of the cycle just completed.
    pub cycle: u64,
    pub starved: u32,
    pub drowned: u32,
    pub food_relocated: bool,
    pub events: EventTally,
    /// Population means after rebirth.
    pub mean: Character<T>,
}

#[derive(Debug, Clone)]
pub struct World<T: Scalar = f64> {
    pub config: WorldConfig<T>,
    pub agents: Vec<AgentState<T>>,
    pub food_island: Island,
    /// Completed cycles.
    pub cycle: u64,
    pub total_deaths: u64,
    pub deaths_starved: u64,
    pub deaths_drowned: u64,
    pub rng: RngStream,
    food_just_updated: bool,
    cycle_events: EventTally,
    cycle_starved: u32,
    cycle_drowned: u32,
}

impl<T: Scalar> World<T> {
    /// Fresh population with uniformly random virtues.
    pub fn new(config: WorldConfig<T>, seed: u64) -> Result<Self, ConfigError> {
        config.validate()?;
        let mut rng = RngStream::from_seed(seed);
        let agents = (0..config.population)
            .map(|i| {
                let character = random_character(&mut rng);
                AgentState::newborn(AgentId(i), character, config.etype, config.starting_reserve)
            })
            .collect();
        let food_island = Island::ALL[rng.index(Island::COUNT)];
        Ok(Self::assemble(config, agents, food_island, rng))
    }

    /// World with a hand-built roster; the config's `population` is replaced
    /// by the roster length.
    pub fn with_agents(
        mut config: WorldConfig<T>,
        agents: Vec<AgentState<T>>,
        food_island: Island,
        seed: u64,
    ) -> Result<Self, ConfigError> {
        config.population = agents.len();
        config.validate()?;
        Ok(Self::assemble(config, agents, food_island, RngStream::from_seed(seed)))
    }

    fn assemble(config: WorldConfig<T>, agents: Vec<AgentState<T>>, food_island: Island, rng: RngStream) -> Self {
        Self {
            config,
            agents,
            food_island,
            cycle: 0,
            total_deaths: 0,
            deaths_starved: 0,
            deaths_drowned: 0,
            rng,
            food_just_updated: false,
            cycle_events: EventTally::default(),
            cycle_starved: 0,
            cycle_drowned: 0,
        }
    }

    pub fn alive_count(&self) -> usize {
        self.agents.iter().filter(|a| a.alive).count()
    }

    pub fn mean_character(&self) -> Character<T> {
        let n = T::from_usize(self.agents.len()).expect("roster size fits in a float");
        let mean = |f: fn(&Character<T>) -> T| self.agents.iter().map(|a| f(&a.character)).sum::<T>() / n;
        Character { courage: mean(|c| c.courage), generosity: mean(|c| c.generosity), honesty: mean(|c| c.honesty) }
    }

    /// Runs one full cycle.
    pub fn run_cycle(&mut self) -> CycleReport<T> {
        self.begin_cycle();
        let number = self.cycle + 1;
        if number.is_multiple_of(u64::from(self.config.food_update_frequency)) {
            self.relocate_food();
        }
        self.phase_ask_location();
        self.phase_cross_bridges();
        self.phase_rescue();
        self.phase_collect_and_return();
        self.phase_beg();
        self.phase_eat();
        self.phase_exemplar();
        self.phase_rebirth();
        self.cycle = number;
        CycleReport {
            cycle: number,
            starved: self.cycle_starved,
            drowned: self.cycle_drowned,
            food_relocated: self.food_just_updated,
            events: self.cycle_events,
            mean: self.mean_character(),
        }
    }

    /// Clears the per-cycle scratch of every agent and the cycle tallies.
    pub fn begin_cycle(&mut self) {
        for agent in &mut self.agents {
            agent.today = DayScratch::default();
        }
        self.food_just_updated = false;
        self.cycle_events = EventTally::default();
        self.cycle_starved = 0;
        self.cycle_drowned = 0;
    }

    /// Moves the food and wipes every belief.
    pub fn relocate_food(&mut self) {
        self.food_island = Island::ALL[self.rng.index(Island::COUNT)];
        for agent in &mut self.agents {
            agent.belief = None;
        }
        self.food_just_updated = true;
    }

    pub fn phase_ask_location(&mut self) {
        if self.food_just_updated {
            return;
        }
        let ask_limit = T::half();
        for a in 0..self.agents.len() {
            let asker = &self.agents[a];
            if !asker.alive || asker.belief.is_some() || asker.character.generosity >= ask_limit {
                continue;
            }
            let Some(b) = self.pick_other_alive(a) else { continue };
            let honesty = self.agents[b].character.honesty;
            if honesty > T::zero() {
                if let Some(told) = self.agents[b].belief {
                    self.agents[a].belief = Some(told);
                    self.respond(b, MoralEvent::told_truth());
                }
            } else if honesty < T::zero() {
                let wrong = self.wrong_island();
                self.agents[a].belief = Some(wrong);
                self.respond(b, MoralEvent::lied());
            }
        }
    }

    pub fn phase_cross_bridges(&mut self) {
        let fall = self.config.falling_chance.as_f64();
        for i in 0..self.agents.len() {
            if !self.agents[i].alive {
                continue;
            }
            let target = match self.agents[i].belief {
                Some(island) => island,
                None => Island::ALL[self.rng.index(Island::COUNT)],
            };
            let fallen = self.rng.chance(fall);
            let today = &mut self.agents[i].today;
            today.crossed = Some(target);
            today.fallen = fallen;
        }
    }

    pub fn phase_rescue(&mut self) {
        for i in 0..self.agents.len() {
            if self.agents[i].alive && self.agents[i].today.fallen {
                let stream_level = T::lit(self.rng.signed_unit());
                self.resolve_fall(i, stream_level);
            }
        }
    }

    /// Calls for help for one fallen agent at a given stream level.
    pub fn resolve_fall(&mut self, fallen: usize, stream_level: T) -> RescueOutcome {
        let bridge = self.agents[fallen].today.crossed;
        let mut candidates: Vec<usize> = self
            .agents
            .iter()
            .enumerate()
            .filter(|&(j, b)| j != fallen && b.alive && !b.today.fallen && b.today.crossed == bridge)
            .map(|(j, _)| j)
            .collect();
        self.rng.shuffle_slice(&mut candidates);

        for b in candidates {
            let attempted = decide_excess(self.agents[b].character.courage, stream_level) == Branch::Excess;
            self.respond(b, MoralEvent::rescue(attempted, stream_level));
            if !attempted {
                continue;
            }
            let roll = T::lit(self.rng.signed_unit());
            let rescuer = self.agents[b].id;
            return if roll > stream_level {
                self.agents[fallen].today.fallen = false;
                RescueOutcome::Rescued { rescuer }
            } else {
                self.kill(fallen, DeathCause::Drowned);
                self.kill(b, DeathCause::Drowned);
                RescueOutcome::BothDrowned { rescuer }
            };
        }
        self.kill(fallen, DeathCause::Drowned);
        RescueOutcome::Unaided
    }

    pub fn phase_collect_and_return(&mut self) {
        let food = self.food_island;
        let (gain, cap) = (self.config.food_value, self.config.maximum_reserve);
        for agent in self.agents.iter_mut().filter(|a| a.alive) {
            match agent.today.crossed {
                Some(island) if island == food => {
                    agent.reserve = (agent.reserve + gain).min(cap);
                    agent.belief = Some(food);
                }
                Some(island) if agent.belief == Some(island) => agent.belief = None,
                _ => {}
            }
        }
    }

    pub fn beg_factor_of(&self, agent: &AgentState<T>) -> T {
        let g = agent.character.generosity;
        if self.config.bf_use_selfishness {
            beg_factor_selfish(agent.reserve, self.config.maximum_reserve, g)
        } else {
            beg_factor(agent.reserve, self.config.maximum_reserve, g)
        }
    }

    pub fn phase_beg(&mut self) {
        let (gift, cap) = (self.config.food_value, self.config.maximum_reserve);
        for a in 0..self.agents.len() {
            let beggar = &self.agents[a];
            if !beggar.alive || self.beg_factor_of(beggar) <= self.config.begging_threshold {
                continue;
            }
            let Some(b) = self.pick_other_alive(a) else { continue };
            let reserve = self.agents[b].reserve;
            let gave = decide_excess(self.agents[b].character.generosity, T::zero()) == Branch::Excess;
            if gave {
                self.agents[b].reserve = (reserve - gift).max(T::zero());
                self.agents[a].reserve = (self.agents[a].reserve + gift).min(cap);
            }
            self.respond(b, MoralEvent::sharing(gave, reserve, cap));
        }
    }

    pub fn phase_eat(&mut self) {
        for i in 0..self.agents.len() {
            if !self.agents[i].alive {
                continue;
            }
            if self.agents[i].reserve < T::one() {
                self.kill(i, DeathCause::Starved);
            } else {
                self.agents[i].reserve = self.agents[i].reserve - T::one();
            }
        }
    }

    /// Every alive agent compares itself with one random peer and copies the
    /// peer's character if it qualifies as an exemplar. All comparisons read
    /// the state from the start of the phase.
    pub fn phase_exemplar(&mut self) {
        if !self.config.exemplars_enabled {
            return;
        }
        let snapshots: Vec<_> = self.agents.iter().map(AgentState::snapshot).collect();
        for a in 0..self.agents.len() {
            if !self.agents[a].alive {
                continue;
            }
            let Some(b) = self.pick_other_alive(a) else { continue };
            if let Some(character) = adopt_exemplar(&snapshots[a], &snapshots[b]) {
                self.agents[a].character = character;
            }
        }
    }

    /// Refills every slot that died this cycle, by crossover of two surviving
    /// parents or, with the mutation chance, by fresh random virtues.
    pub fn phase_rebirth(&mut self) {
        let parents: Vec<usize> = (0..self.agents.len()).filter(|&i| self.agents[i].alive).collect();
        let dead: Vec<usize> = (0..self.agents.len()).filter(|&i| self.agents[i].today.died.is_some()).collect();
        let mutation = self.config.mutation_chance.as_f64();
        for slot in dead {
            let mutate = self.rng.chance(mutation);
            let character = if mutate || parents.len() < 2 {
                random_character(&mut self.rng)
            } else {
                let first = self.rng.index(parents.len());
                let mut second = self.rng.index(parents.len() - 1);
                if second >= first {
                    second += 1;
                }
                Character::crossover(&self.agents[parents[first]].character, &self.agents[parents[second]].character)
            };
            let died = self.agents[slot].today;
            let mut child =
                AgentState::newborn(AgentId(slot), character, self.config.etype, self.config.starting_reserve);
            child.today = died;
            self.agents[slot] = child;
        }
    }

    /// Checks the structural invariants that must hold between cycles.
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.agents.len() != self.config.population {
            return Err(format!("roster has {} slots, expected {}", self.agents.len(), self.config.population));
        }
        if self.total_deaths != self.deaths_starved + self.deaths_drowned {
            return Err("death tallies disagree".into());
        }
        for agent in &self.agents {
            if !agent.character.is_valid() {
                return Err(format!("agent {:?} has weights outside [-1, 1]", agent.id));
            }
            if agent.alive && !(T::zero() <= agent.reserve && agent.reserve <= self.config.maximum_reserve) {
                return Err(format!("agent {:?} reserve {} out of bounds", agent.id, agent.reserve));
            }
        }
        Ok(())
    }

    fn respond(&mut self, responder: usize, event: MoralEvent<T>) {
        self.cycle_events.record(event.kind);
        let agent = &mut self.agents[responder];
        if agent.etype == EType::None {
            return;
        }
        let delta =
            eudaimonic_delta(agent.etype, &event).expect("world events always carry the context their kind requires");
        agent.e_value = agent.e_value + delta;
        if self.config.learning_enabled {
            agent.character = learn(
                agent.character,
                event.kind.virtue(),
                event.kind.branch(),
                delta,
                &self.config.learn,
                event.magnitude,
            );
        }
    }

    fn kill(&mut self, i: usize, cause: DeathCause) {
        let agent = &mut self.agents[i];
        debug_assert!(agent.alive);
        agent.alive = false;
        agent.today.died = Some(cause);
        agent.today.fallen = false;
        self.total_deaths += 1;
        match cause {
            DeathCause::Starved => {
                self.deaths_starved += 1;
                self.cycle_starved += 1;
            }
            DeathCause::Drowned => {
                self.deaths_drowned += 1;
                self.cycle_drowned += 1;
            }
        }
    }

    /// Uniformly chosen alive agent other than `a`, consuming one draw when
    /// there is at least one candidate.
    fn pick_other_alive(&mut self, a: usize) -> Option<usize> {
        let others = self.agents.iter().enumerate().filter(|&(j, b)| j != a && b.alive).count();
        if others == 0 {
            return None;
        }
        let k = self.rng.index(others);
        self.agents.iter().enumerate().filter(|&(j, b)| j != a && b.alive).nth(k).map(|(j, _)| j)
    }

    fn wrong_island(&mut self) -> Island {
        let k = self.rng.index(Island::COUNT - 1);
        let food = self.food_island.index();
        Island::ALL[if k >= food { k + 1 } else { k }]
    }
}

fn random_character<T: Scalar>(rng: &mut RngStream) -> Character<T> {
    let courage = T::lit(rng.signed_unit());
    let generosity = T::lit(rng.signed_unit());
    let honesty = T::lit(rng.signed_unit());
    Character::new(courage, generosity, honesty)
}
