//! Dispositional virtues, the eudaimonic reward for each e-type, and the
//! per-response learning update.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VirtueKind {
    Courage,
    Generosity,
    Honesty,
}

impl VirtueKind {
    pub const ALL: [VirtueKind; 3] = [VirtueKind::Courage, VirtueKind::Generosity, VirtueKind::Honesty];
}

/// Which side of a virtue's threshold an agent acted on.
///
/// `Excess` is the acting branch (tell the truth, attempt a rescue, give
/// food); `Deficiency` is the withholding branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Excess,
    Deficiency,
}

impl Branch {
    fn sign<T: Scalar>(self) -> T {
        match self {
            Branch::Excess => T::one(),
            Branch::Deficiency => -T::one(),
        }
    }
}

/// Binary threshold decision. Equality falls on the deficiency side.
#[inline]
pub fn decide_excess<T: Scalar>(weight: T, threshold: T) -> Branch {
    if weight > threshold {
        Branch::Excess
    } else {
        Branch::Deficiency
    }
}

/// The three virtue weights of one agent, each kept in `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Character<T: Scalar = f64> {
    pub courage: T,
    pub generosity: T,
    pub honesty: T,
}

impl<T: Scalar> Character<T> {
    /// Builds a character, clamping every weight into `[-1, 1]`.
    pub fn new(courage: T, generosity: T, honesty: T) -> Self {
        Self { courage: clamp_weight(courage), generosity: clamp_weight(generosity), honesty: clamp_weight(honesty) }
    }

    pub fn get(&self, kind: VirtueKind) -> T {
        match kind {
            VirtueKind::Courage => self.courage,
            VirtueKind::Generosity => self.generosity,
            VirtueKind::Honesty => self.honesty,
        }
    }

    /// Sets one weight, clamped into `[-1, 1]`.
    pub fn set(&mut self, kind: VirtueKind, value: T) {
        let value = clamp_weight(value);
        match kind {
            VirtueKind::Courage => self.courage = value,
            VirtueKind::Generosity => self.generosity = value,
            VirtueKind::Honesty => self.honesty = value,
        }
    }

    pub fn is_valid(&self) -> bool {
        VirtueKind::ALL.iter().all(|&k| (-T::one()..=T::one()).contains(&self.get(k)))
    }

    /// Per-virtue arithmetic mean of two parents.
    pub fn crossover(a: &Self, b: &Self) -> Self {
        let mid = |x: T, y: T| (x + y) / T::two();
        Self::new(mid(a.courage, b.courage), mid(a.generosity, b.generosity), mid(a.honesty, b.honesty))
    }
}

#[inline]
fn clamp_weight<T: Scalar>(w: T) -> T {
    w.clamp_to(-T::one(), T::one())
}

/// An agent's conception of eudaimonia.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EType {
    /// No reward signal; used by the no-learning baseline.
    #[default]
    None,
    Selfish,
    PraiseBlame,
    SelfishSelfless,
}

impl EType {
    pub fn as_str(self) -> &'static str {
        match self {
            EType::None => "none",
            EType::Selfish => "selfish",
            EType::PraiseBlame => "praise_blame",
            EType::SelfishSelfless => "selfish_selfless",
        }
    }
}

impl fmt::Display for EType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(EType::None),
            "selfish" | "s" => Ok(EType::Selfish),
            "praise_blame" | "praiseblame" | "pb" | "p/b" => Ok(EType::PraiseBlame),
            "selfish_selfless" | "selfishselfless" | "ss" | "s/s" => Ok(EType::SelfishSelfless),
            other => Err(format!("unknown e-type `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    ToldTruth,
    Lied,
    AttemptedRescue,
    IgnoredRescueCall,
    GaveFood,
    IgnoredBeggar,
}

impl EventKind {
    pub const ALL: [EventKind; 6] = [
        EventKind::ToldTruth,
        EventKind::Lied,
        EventKind::AttemptedRescue,
        EventKind::IgnoredRescueCall,
        EventKind::GaveFood,
        EventKind::IgnoredBeggar,
    ];

    pub fn virtue(self) -> VirtueKind {
        match self {
            EventKind::ToldTruth | EventKind::Lied => VirtueKind::Honesty,
            EventKind::AttemptedRescue | EventKind::IgnoredRescueCall => VirtueKind::Courage,
            EventKind::GaveFood | EventKind::IgnoredBeggar => VirtueKind::Generosity,
        }
    }

    pub fn branch(self) -> Branch {
        match self {
            EventKind::ToldTruth | EventKind::AttemptedRescue | EventKind::GaveFood => Branch::Excess,
            EventKind::Lied | EventKind::IgnoredRescueCall | EventKind::IgnoredBeggar => Branch::Deficiency,
        }
    }

    /// The other response to the same request.
    pub fn opposite(self) -> EventKind {
        match self {
            EventKind::ToldTruth => EventKind::Lied,
            EventKind::Lied => EventKind::ToldTruth,
            EventKind::AttemptedRescue => EventKind::IgnoredRescueCall,
            EventKind::IgnoredRescueCall => EventKind::AttemptedRescue,
            EventKind::GaveFood => EventKind::IgnoredBeggar,
            EventKind::IgnoredBeggar => EventKind::GaveFood,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Situation in which a response was made.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EventContext<T: Scalar = f64> {
    Location,
    Rescue {
        stream_level: T,
    },
    /// `reserve` is the responder's reserve before any transfer.
    Sharing {
        reserve: T,
        max_reserve: T,
    },
}

/// One response by one agent to one request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoralEvent<T: Scalar = f64> {
    pub kind: EventKind,
    pub magnitude: T,
    pub context: EventContext<T>,
}

impl<T: Scalar> MoralEvent<T> {
    pub fn told_truth() -> Self {
        Self { kind: EventKind::ToldTruth, magnitude: T::one(), context: EventContext::Location }
    }

    pub fn lied() -> Self {
        Self { kind: EventKind::Lied, magnitude: T::one(), context: EventContext::Location }
    }

    pub fn rescue(attempted: bool, stream_level: T) -> Self {
        let kind = if attempted { EventKind::AttemptedRescue } else { EventKind::IgnoredRescueCall };
        Self { kind, magnitude: stream_level, context: EventContext::Rescue { stream_level } }
    }

    pub fn sharing(gave: bool, reserve: T, max_reserve: T) -> Self {
        let kind = if gave { EventKind::GaveFood } else { EventKind::IgnoredBeggar };
        Self { kind, magnitude: T::one(), context: EventContext::Sharing { reserve, max_reserve } }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum VirtueError {
    #[error("agents without an e-type do not evaluate events")]
    NoEType,
    #[error("{kind:?} event carries a mismatched context")]
    ContextMismatch { kind: EventKind },
}

/// Signed unit change in e-value that `etype` assigns to `event`.
pub fn eudaimonic_delta<T: Scalar>(etype: EType, event: &MoralEvent<T>) -> Result<T, VirtueError> {
    use EventKind::*;
    let one = T::one();
    let zero = T::zero();
    let delta = match etype {
        EType::None => return Err(VirtueError::NoEType),
        EType::Selfish => match event.kind {
            ToldTruth | Lied => zero,
            AttemptedRescue | GaveFood => -one,
            IgnoredRescueCall | IgnoredBeggar => one,
        },
        EType::PraiseBlame => match event.kind.branch() {
            Branch::Excess => one,
            Branch::Deficiency => -one,
        },
        EType::SelfishSelfless => {
            // Altruism is rewarded while it is cheap for the responder,
            // self-preservation once it becomes costly.
            let acting_pays = match (event.kind, event.context) {
                (ToldTruth | Lied, _) => true,
                (AttemptedRescue | IgnoredRescueCall, EventContext::Rescue { stream_level }) => stream_level <= zero,
                (GaveFood | IgnoredBeggar, EventContext::Sharing { reserve, max_reserve }) => {
                    reserve > max_reserve / T::two()
                }
                (kind, _) => return Err(VirtueError::ContextMismatch { kind }),
            };
            let acted = event.kind.branch() == Branch::Excess;
            if acted == acting_pays {
                one
            } else {
                -one
            }
        }
    };
    Ok(delta)
}

/// How the direction of a learning step is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ReinforcementRule {
    /// Reward pushes a positive weight up and a negative weight down, i.e.
    /// away from zero; punishment pulls it the other way. A weight of exactly
    /// zero has no sign and falls back to [`ReinforcementRule::TakenBranch`].
    #[default]
    WeightSign,
    /// Reward moves the weight toward the branch that was taken (up for
    /// excess, down for deficiency); punishment moves it away.
    TakenBranch,
}

impl ReinforcementRule {
    pub fn as_str(self) -> &'static str {
        match self {
            ReinforcementRule::WeightSign => "weight_sign",
            ReinforcementRule::TakenBranch => "taken_branch",
        }
    }
}

impl FromStr for ReinforcementRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "weight_sign" => Ok(ReinforcementRule::WeightSign),
            "taken_branch" => Ok(ReinforcementRule::TakenBranch),
            other => Err(format!("unknown reinforcement rule `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LearnConfig<T: Scalar = f64> {
    pub learning_rate: T,
    /// Multiplies the step by `|magnitude|` when set.
    pub scale_by_magnitude: bool,
    pub rule: ReinforcementRule,
}

impl<T: Scalar> Default for LearnConfig<T> {
    fn default() -> Self {
        Self { learning_rate: T::lit(0.1), scale_by_magnitude: false, rule: ReinforcementRule::default() }
    }
}

/// Moves the weight of `virtue` by one learning step after a response on
/// `branch` changed the e-value by `e_delta`. Positive reward reinforces,
/// negative punishes, zero leaves the character untouched. The result is
/// clamped to `[-1, 1]` and no other weight changes.
pub fn learn<T: Scalar>(
    character: Character<T>,
    virtue: VirtueKind,
    branch: Branch,
    e_delta: T,
    cfg: &LearnConfig<T>,
    magnitude: T,
) -> Character<T> {
    if e_delta == T::zero() {
        return character;
    }
    let step = if cfg.scale_by_magnitude { cfg.learning_rate * magnitude.abs() } else { cfg.learning_rate };
    let weight = character.get(virtue);
    let reinforce = match cfg.rule {
        ReinforcementRule::WeightSign if weight > T::zero() => T::one(),
        ReinforcementRule::WeightSign if weight < T::zero() => -T::one(),
        _ => branch.sign::<T>(),
    };
    let direction = if e_delta > T::zero() { reinforce } else { -reinforce };
    let mut next = character;
    next.set(virtue, weight + direction * step);
    next
}

/// What an agent exposes to a peer looking for a moral exemplar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExemplarSnapshot<T: Scalar = f64> {
    pub etype: EType,
    pub e_value: T,
    pub character: Character<T>,
}

/// Returns the exemplar's character when it shares the learner's e-type and
/// has strictly higher e-value; `None` means keep the current character.
pub fn adopt_exemplar<T: Scalar>(
    learner: &ExemplarSnapshot<T>,
    exemplar: &ExemplarSnapshot<T>,
) -> Option<Character<T>> {
    (learner.etype == exemplar.etype && exemplar.e_value > learner.e_value).then_some(exemplar.character)
}
