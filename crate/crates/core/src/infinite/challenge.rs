use serde::{Deserialize, Serialize};

use super::strategies::{InfiniteCat, InfiniteHerder};
use super::{Board, InfiniteError, InfiniteEvent, InfiniteFamily, Label};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    /// The cat answered each of the first `k - 1` cuts.
    SurvivedK,
    /// The cut with this 1-based number left the cat isolated.
    CapturedAt { cut: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChallengeResult {
    pub family: String,
    pub cat: String,
    pub herder: String,
    pub k: usize,
    pub cuts_survived: usize,
    pub outcome: Outcome,
    pub start: Label,
    pub trace: Vec<InfiniteEvent>,
    pub materialized: usize,
}

impl ChallengeResult {
    pub fn survived(&self) -> bool {
        self.outcome == Outcome::SurvivedK
    }

    /// One line per event.
    pub fn transcript(&self) -> String {
        let mut out = String::new();
        for e in &self.trace {
            let line = match e {
                InfiniteEvent::Place { vertex } => format!("cat starts at {vertex}"),
                InfiniteEvent::Cut { a, b } => format!("herder cuts {a}-{b}"),
                InfiniteEvent::Move { path } => {
                    let hops: Vec<String> = path.iter().map(|l| l.to_string()).collect();
                    format!("cat moves {}", hops.join(" "))
                }
            };
            out.push_str(&line);
            out.push('\n');
        }
        let verdict = match &self.outcome {
            Outcome::SurvivedK => format!("survived {} (answered {} cuts)", self.k, self.cuts_survived),
            Outcome::CapturedAt { cut } => format!("captured at cut {cut}"),
        };
        out.push_str(&verdict);
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum HorizonOutcome {
    Captured { score: usize },
    Horizon { cuts: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HorizonResult {
    pub family: String,
    pub outcome: HorizonOutcome,
    pub start: Label,
    pub trace: Vec<InfiniteEvent>,
}

struct Played {
    start: Label,
    answered: usize,
    captured_at: Option<usize>,
    board: Board,
}

fn play(
    family: InfiniteFamily,
    cat: &mut dyn InfiniteCat,
    herder: &mut dyn InfiniteHerder,
    max_cuts: usize,
    budget: usize,
) -> Result<Played, InfiniteError> {
    let mut board = Board::new(family, budget);
    let start = cat.place(&mut board)?;
    if !family.contains(&start) {
        return Err(InfiniteError::IllegalMove { strategy: cat.name(), reason: format!("{start} is not a vertex") });
    }
    board.record_place(start.clone());
    let mut pos = start.clone();
    let mut answered = 0;
    for j in 1..=max_cuts {
        let (a, b) = herder.choose_cut(&mut board, &pos)?;
        if let Some(reason) = board.check_cut(&a, &b)? {
            return Err(InfiniteError::IllegalCut { strategy: herder.name(), a, b, reason });
        }
        board.record_cut(a, b);
        if board.degree(&pos)? == 0 {
            return Ok(Played { start, answered, captured_at: Some(j), board });
        }
        let path = cat.respond(&mut board, &pos)?;
        if let Some(reason) = board.check_move(&pos, &path)? {
            return Err(InfiniteError::IllegalMove { strategy: cat.name(), reason });
        }
        pos = path.last().expect("non-trivial").clone();
        board.record_move(path);
        answered += 1;
    }
    Ok(Played { start, answered, captured_at: None, board })
}

/// Asks the cat to answer the first `k - 1` cuts.
pub fn run_challenge(
    family: InfiniteFamily,
    cat: &mut dyn InfiniteCat,
    herder: &mut dyn InfiniteHerder,
    k: usize,
    budget: usize,
) -> Result<ChallengeResult, InfiniteError> {
    if k == 0 {
        return Err(InfiniteError::BadK);
    }
    let played = play(family, cat, herder, k - 1, budget)?;
    let outcome = match played.captured_at {
        Some(cut) => Outcome::CapturedAt { cut },
        None => Outcome::SurvivedK,
    };
    Ok(ChallengeResult {
        family: family.to_string(),
        cat: cat.name(),
        herder: herder.name(),
        k,
        cuts_survived: played.answered,
        outcome,
        start: played.start,
        materialized: played.board.materialized(),
        trace: played.board.ledger().events.clone(),
    })
}

/// Plays until capture or until `horizon` cuts have been answered.
pub fn run_until_capture(
    family: InfiniteFamily,
    cat: &mut dyn InfiniteCat,
    herder: &mut dyn InfiniteHerder,
    horizon: usize,
    budget: usize,
) -> Result<HorizonResult, InfiniteError> {
    let played = play(family, cat, herder, horizon, budget)?;
    let outcome = match played.captured_at {
        Some(score) => HorizonOutcome::Captured { score },
        None => HorizonOutcome::Horizon { cuts: horizon },
    };
    Ok(HorizonResult { family: family.to_string(), outcome, start: played.start, trace: played.board.ledger().events.clone() })
}
