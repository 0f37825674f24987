//! Checks shared by the dedicated suites and the acceptance run. Each returns
//! a list of failure descriptions; empty means the check passed.
#![allow(dead_code)]

use bridgeworld::env::beg_factor;
use bridgeworld::experiment::Condition;
use bridgeworld::virtue::{
    adopt_exemplar, eudaimonic_delta, learn, Branch, Character, EType, EventContext, EventKind, LearnConfig,
    MoralEvent, ReinforcementRule, VirtueKind,
};
use bridgeworld::{AgentState, World, WorldConfig};

pub const TOL: f64 = 1e-12;

pub fn assert_clean(failures: Vec<String>) {
    assert!(failures.is_empty(), "{} failure(s):\n{}", failures.len(), failures.join("\n"));
}

pub fn taken_branch() -> LearnConfig {
    LearnConfig { rule: ReinforcementRule::TakenBranch, ..LearnConfig::default() }
}

/// (weight, branch, e_delta, expected weight)
type LearnCase = (f64, Branch, f64, f64);

pub const TAKEN_BRANCH_TABLE: [LearnCase; 11] = [
    (0.3, Branch::Excess, 1.0, 0.4),
    (0.95, Branch::Excess, 1.0, 1.0),
    (-0.3, Branch::Excess, 1.0, -0.2),
    (0.3, Branch::Excess, -1.0, 0.2),
    (-0.95, Branch::Excess, -1.0, -1.0),
    (0.3, Branch::Excess, 0.0, 0.3),
    (0.3, Branch::Deficiency, 1.0, 0.2),
    (-0.95, Branch::Deficiency, 1.0, -1.0),
    (-0.3, Branch::Deficiency, -1.0, -0.2),
    (0.95, Branch::Deficiency, -1.0, 1.0),
    (-0.3, Branch::Deficiency, 0.0, -0.3),
];

pub const WEIGHT_SIGN_TABLE: [LearnCase; 15] = [
    (0.3, Branch::Excess, 1.0, 0.4),
    (0.3, Branch::Deficiency, 1.0, 0.4),
    (0.95, Branch::Excess, 1.0, 1.0),
    (-0.3, Branch::Excess, 1.0, -0.4),
    (-0.3, Branch::Deficiency, 1.0, -0.4),
    (-0.95, Branch::Deficiency, 1.0, -1.0),
    (0.3, Branch::Excess, -1.0, 0.2),
    (0.05, Branch::Excess, -1.0, -0.05),
    (-0.3, Branch::Deficiency, -1.0, -0.2),
    (-0.95, Branch::Excess, -1.0, -0.85),
    (0.0, Branch::Excess, 1.0, 0.1),
    (0.0, Branch::Deficiency, 1.0, -0.1),
    (0.0, Branch::Excess, -1.0, -0.1),
    (0.0, Branch::Deficiency, -1.0, 0.1),
    (0.6, Branch::Excess, 0.0, 0.6),
];

fn learn_table(cfg: &LearnConfig, table: &[LearnCase]) -> Vec<String> {
    let mut failures = Vec::new();
    for virtue in VirtueKind::ALL {
        for &(w, branch, d, want) in table {
            let mut c = Character::new(0.0, 0.0, 0.0);
            c.set(virtue, w);
            let after = learn(c, virtue, branch, d, cfg, 1.0);
            let got = after.get(virtue);
            if (got - want).abs() >= TOL {
                failures.push(format!("{:?} {virtue:?} w={w} {branch:?} d={d}: got {got}, want {want}", cfg.rule));
            }
            for other in VirtueKind::ALL.into_iter().filter(|v| *v != virtue) {
                if after.get(other) != 0.0 {
                    failures.push(format!("{virtue:?} update touched {other:?}"));
                }
            }
        }
    }
    failures
}

pub fn learn_table_failures() -> Vec<String> {
    let mut failures = learn_table(&taken_branch(), &TAKEN_BRANCH_TABLE);
    failures.extend(learn_table(&LearnConfig::default(), &WEIGHT_SIGN_TABLE));
    failures
}

pub fn rescue_event(kind: EventKind, cheap: bool) -> MoralEvent {
    let context = match kind.virtue() {
        VirtueKind::Honesty => EventContext::Location,
        VirtueKind::Courage => EventContext::Rescue { stream_level: if cheap { -0.5 } else { 0.5 } },
        VirtueKind::Generosity => EventContext::Sharing { reserve: if cheap { 8.0 } else { 3.0 }, max_reserve: 10.0 },
    };
    MoralEvent { kind, magnitude: 1.0, context }
}

/// (kind, selfish, praise/blame, selfish-selfless when cheap, when costly)
pub const REWARD_TABLE: [(EventKind, f64, f64, f64, f64); 6] = [
    (EventKind::ToldTruth, 0.0, 1.0, 1.0, 1.0),
    (EventKind::Lied, 0.0, -1.0, -1.0, -1.0),
    (EventKind::AttemptedRescue, -1.0, 1.0, 1.0, -1.0),
    (EventKind::IgnoredRescueCall, 1.0, -1.0, -1.0, 1.0),
    (EventKind::GaveFood, -1.0, 1.0, 1.0, -1.0),
    (EventKind::IgnoredBeggar, 1.0, -1.0, -1.0, 1.0),
];

pub fn reward_table_failures() -> Vec<String> {
    let mut failures = Vec::new();
    for (kind, s, pb, ss_cheap, ss_costly) in REWARD_TABLE {
        for cheap in [true, false] {
            let e = rescue_event(kind, cheap);
            let ss = if cheap { ss_cheap } else { ss_costly };
            for (etype, want) in [(EType::Selfish, s), (EType::PraiseBlame, pb), (EType::SelfishSelfless, ss)] {
                let got = eudaimonic_delta(etype, &e);
                if got != Ok(want) {
                    failures.push(format!("{etype:?} {kind:?} cheap={cheap}: got {got:?}, want {want}"));
                }
            }
        }
        if eudaimonic_delta::<f64>(EType::None, &rescue_event(kind, true)).is_ok() {
            failures.push(format!("e-type None accepted {kind:?}"));
        }
    }
    failures
}

/// 10 reserves x 10 generosities x 10 maxima, against the formula rewritten
/// as a single quotient.
pub fn beg_factor_grid_failures() -> Vec<String> {
    let mut failures = Vec::new();
    let mut points = 0;
    for mi in 0..10 {
        let mr = 1.0 + mi as f64 * 2.5;
        for ri in 0..10 {
            let r = mr * ri as f64 / 9.0;
            for gi in 0..10 {
                let g = -1.0 + 2.0 * gi as f64 / 9.0;
                let reference = (mr - r) * (1.0 + g) / (2.0 * mr);
                let got = beg_factor(r, mr, g);
                if (got - reference).abs() > TOL || !(0.0..=1.0).contains(&got) {
                    failures.push(format!("R={r} MR={mr} g={g}: {got} vs {reference}"));
                }
                points += 1;
            }
        }
    }
    if points != 1000 {
        failures.push(format!("grid has {points} points"));
    }
    failures
}

type Phase = (&'static str, fn(&mut World));

/// Mirrors `World::run_cycle`, calling `check` after every phase.
pub fn step(w: &mut World, check: &mut impl FnMut(&World, &'static str)) {
    w.begin_cycle();
    let number = w.cycle + 1;
    if number.is_multiple_of(u64::from(w.config.food_update_frequency)) {
        w.relocate_food();
    }
    let phases: [Phase; 8] = [
        ("ask", World::phase_ask_location),
        ("cross", World::phase_cross_bridges),
        ("rescue", World::phase_rescue),
        ("collect", World::phase_collect_and_return),
        ("beg", World::phase_beg),
        ("eat", World::phase_eat),
        ("exemplar", World::phase_exemplar),
        ("rebirth", World::phase_rebirth),
    ];
    for (name, phase) in phases {
        phase(w);
        check(w, name);
    }
    w.cycle = number;
}

pub fn random_world(condition: Condition, population: usize, seed: u64) -> World {
    let cfg = WorldConfig { population, ..condition.configure(&WorldConfig::default()) };
    World::new(cfg, seed).unwrap()
}

/// Population conservation, reserve bounds after every phase, and death
/// accounting against the number of rebirths.
pub fn conservation_failures(condition: Condition, population: usize, seed: u64, cycles: u64) -> Vec<String> {
    let mut w = random_world(condition, population, seed);
    let mut failures = Vec::new();
    let mut rebirths = 0u64;
    for _ in 0..cycles {
        let cycle = w.cycle + 1;
        step(&mut w, &mut |w, phase| {
            let mr = w.config.maximum_reserve;
            if let Some(a) = w.agents.iter().find(|a| a.alive && !(0.0..=mr).contains(&a.reserve)) {
                failures.push(format!("cycle {cycle} after {phase}: agent {:?} reserve {}", a.id, a.reserve));
            }
            if w.total_deaths != w.deaths_starved + w.deaths_drowned {
                failures.push(format!("cycle {cycle} after {phase}: death tallies disagree"));
            }
            if w.agents.len() != population {
                failures.push(format!("cycle {cycle} after {phase}: roster size {}", w.agents.len()));
            }
        });
        rebirths += w.agents.iter().filter(|a| a.today.died.is_some()).count() as u64;
        if w.alive_count() != population {
            failures.push(format!("cycle {cycle}: {} alive after rebirth", w.alive_count()));
        }
        if let Err(e) = w.check_invariants() {
            failures.push(format!("cycle {cycle}: {e}"));
        }
        if !failures.is_empty() {
            return failures;
        }
    }
    if w.total_deaths != rebirths {
        failures.push(format!("{} deaths but {rebirths} rebirths", w.total_deaths));
    }
    failures
}

/// With nobody falling and everyone honest, no alive agent ever holds a
/// wrong belief.
pub fn belief_soundness_failures(population: usize, seed: u64, cycles: u64, exemplars: bool) -> Vec<String> {
    let condition = if exemplars { Condition::PraiseBlameExemplars } else { Condition::PraiseBlame };
    let mut w = random_world(condition, population, seed);
    w.config.falling_chance = 0.0;
    let mut failures = Vec::new();
    for _ in 0..cycles {
        let cycle = w.cycle + 1;
        // Newborns may draw fresh virtues, so re-impose honesty every cycle.
        for a in &mut w.agents {
            a.character.honesty = 1.0;
        }
        step(&mut w, &mut |w, phase| {
            if let Some(a) = w.agents.iter().find(|a| a.alive && a.belief.is_some_and(|b| b != w.food_island)) {
                failures.push(format!("cycle {cycle} after {phase}: agent {:?} believes {:?}", a.id, a.belief));
            }
        });
        if !failures.is_empty() {
            break;
        }
    }
    failures
}

/// In a world of liars every belief picked up while asking is a lie, so none
/// may name the food island.
pub fn lie_failures(population: usize, seed: u64, cycles: u64) -> Vec<String> {
    let mut w = random_world(Condition::NoLearning, population, seed);
    let mut failures = Vec::new();
    for _ in 0..cycles {
        let cycle = w.cycle + 1;
        // Newborns may draw fresh virtues, so re-impose dishonesty every cycle.
        for a in &mut w.agents {
            a.character.honesty = -1.0;
        }
        let before: Vec<_> = w.agents.iter().map(|a| a.belief).collect();
        step(&mut w, &mut |w, phase| {
            if phase != "ask" {
                return;
            }
            for (a, b) in w.agents.iter().zip(&before) {
                if b.is_none() && a.belief == Some(w.food_island) {
                    failures.push(format!("cycle {cycle}: agent {:?} was told the food island", a.id));
                }
            }
        });
    }
    failures
}

/// Every character change in the exemplar phase copies a peer with a higher
/// e-value, and copying again from the same peer is a no-op.
pub fn exemplar_failures(population: usize, seed: u64, cycles: u64) -> Vec<String> {
    let mut w = random_world(Condition::PraiseBlameExemplars, population, seed);
    let mut failures = Vec::new();
    for _ in 0..cycles {
        let cycle = w.cycle + 1;
        let mut pre: Vec<AgentState> = Vec::new();
        step(&mut w, &mut |w, phase| match phase {
            "eat" => pre = w.agents.clone(),
            "exemplar" => {
                for (i, (old, new)) in pre.iter().zip(&w.agents).enumerate() {
                    if old.character != new.character {
                        let copied = pre
                            .iter()
                            .enumerate()
                            .any(|(j, p)| j != i && p.alive && p.character == new.character && p.e_value > old.e_value);
                        if !copied {
                            failures.push(format!("cycle {cycle}: agent {i} changed without an exemplar"));
                        }
                    }
                    for p in pre.iter().filter(|p| p.alive) {
                        let once = adopt_exemplar(&old.snapshot(), &p.snapshot()).unwrap_or(old.character);
                        let again = AgentState { character: once, ..old.clone() };
                        if adopt_exemplar(&again.snapshot(), &p.snapshot()).unwrap_or(once) != once {
                            failures.push(format!("cycle {cycle}: adopting twice differs for agent {i}"));
                        }
                    }
                }
            }
            _ => {}
        });
        if !failures.is_empty() {
            break;
        }
    }
    failures
}

/// Under the selfish e-type, the begging phase never raises generosity.
pub fn selfish_generosity_failures(population: usize, seed: u64, cycles: u64) -> Vec<String> {
    let mut w = random_world(Condition::Selfish, population, seed);
    let mut failures = Vec::new();
    for _ in 0..cycles {
        let cycle = w.cycle + 1;
        let mut before = Vec::new();
        step(&mut w, &mut |w, phase| match phase {
            "collect" => before = w.agents.iter().map(|a| a.character.generosity).collect(),
            "beg" => {
                for (a, g) in w.agents.iter().zip(&before) {
                    if a.character.generosity > *g {
                        failures.push(format!("cycle {cycle}: agent {:?} generosity rose", a.id));
                    }
                }
            }
            _ => {}
        });
    }
    failures
}
