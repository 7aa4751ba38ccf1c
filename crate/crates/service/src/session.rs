//! One game between a human and the engine, with its move log.

use std::fmt;
use std::str::FromStr;

use catherd::registry::StrategyRegistry;
use catherd::solver::strategies::witness_path;
use catherd::solver::{CatStrategy, GameView, HerderStrategy, SolverConfig, TraceEvent};
use catherd::{EdgeMask, Graph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    /// A legal request at the wrong time, or an illegal move.
    #[error("{0}")]
    Rule(String),
    #[error("engine failed: {0}")]
    Engine(String),
}

fn rule(msg: impl Into<String>) -> GameError {
    GameError::Rule(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Cat,
    Herder,
    /// The engine plays both sides.
    Spectator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Turn {
    Place,
    Herder,
    Cat,
    Over,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineLevel {
    Optimal,
    Greedy,
    Random(u64),
}

impl FromStr for EngineLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "optimal" => Ok(EngineLevel::Optimal),
            "greedy" => Ok(EngineLevel::Greedy),
            "random" => Ok(EngineLevel::Random(0)),
            other => other
                .strip_prefix("random:")
                .and_then(|seed| seed.parse().ok())
                .map(EngineLevel::Random)
                .ok_or_else(|| format!("unknown engine level `{other}` (optimal, greedy, random[:seed])")),
        }
    }
}

impl fmt::Display for EngineLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineLevel::Optimal => f.write_str("optimal"),
            EngineLevel::Greedy => f.write_str("greedy"),
            EngineLevel::Random(seed) => write!(f, "random:{seed}"),
        }
    }
}

impl Serialize for EngineLevel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EngineLevel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LogEntry {
    Place { vertex: usize, engine: bool },
    Cut { edge: usize, endpoints: (usize, usize), engine: bool },
    Move { path: Vec<usize>, engine: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeState {
    pub index: usize,
    pub endpoints: (usize, usize),
    pub cut: bool,
}

/// Everything a client needs to draw the board.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameState {
    pub vertices: usize,
    pub edges: Vec<EdgeState>,
    pub cat: Option<usize>,
    pub turn: Turn,
    pub human_role: Role,
    pub engine_level: EngineLevel,
    pub score: u32,
    pub terminal: bool,
    /// The optimal engine was over budget and greedy played instead.
    pub engine_fallback: bool,
    pub log: Vec<LogEntry>,
}

pub struct Game {
    graph: Graph,
    mask: EdgeMask,
    cat: Option<usize>,
    turn: Turn,
    human: Role,
    level: EngineLevel,
    fallback: bool,
    log: Vec<LogEntry>,
    events: Vec<TraceEvent>,
    walk: Vec<usize>,
    score: u32,
    engine_cat: Box<dyn CatStrategy>,
    engine_herder: Box<dyn HerderStrategy>,
}

impl fmt::Debug for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Game").field("graph", &self.graph).field("turn", &self.turn).field("log", &self.log).finish()
    }
}

impl Game {
    fn blank(graph: Graph, human: Role, level: EngineLevel, cfg: &SolverConfig) -> Result<Game, GameError> {
        let fallback = level == EngineLevel::Optimal && graph.edge_count() > cfg.max_edges;
        let spec = match level {
            EngineLevel::Optimal if !fallback => "optimal".to_string(),
            EngineLevel::Optimal | EngineLevel::Greedy => "greedy".to_string(),
            EngineLevel::Random(seed) => format!("random:{seed}"),
        };
        let reg = StrategyRegistry::with_builtins();
        let engine_cat = reg.cat(&spec, cfg).map_err(|e| GameError::Engine(e.to_string()))?;
        let engine_herder = reg.herder(&spec, cfg).map_err(|e| GameError::Engine(e.to_string()))?;
        Ok(Game {
            mask: graph.full_mask(),
            graph,
            cat: None,
            turn: Turn::Place,
            human,
            level,
            fallback,
            log: Vec::new(),
            events: Vec::new(),
            walk: Vec::new(),
            score: 0,
            engine_cat,
            engine_herder,
        })
    }

    /// Sets up the board; the engine opens if it holds the first move.
    pub fn new(graph: Graph, human: Role, level: EngineLevel, cfg: &SolverConfig) -> Result<Game, GameError> {
        let mut game = Game::blank(graph, human, level, cfg)?;
        if human != Role::Cat {
            let v = game.engine_cat.place(&game.graph).map_err(GameError::Engine)?;
            game.apply_place(v, true)?;
        }
        game.run_engine()?;
        Ok(game)
    }

    /// Rebuilds a game by re-applying a move log, checking every entry.
    /// Engine moves are taken from the log, not recomputed.
    pub fn from_log(
        graph: Graph,
        human: Role,
        level: EngineLevel,
        log: &[LogEntry],
        cfg: &SolverConfig,
    ) -> Result<Game, GameError> {
        let mut game = Game::blank(graph, human, level, cfg)?;
        for entry in log {
            match entry {
                LogEntry::Place { vertex, engine } => game.apply_place(*vertex, *engine)?,
                LogEntry::Cut { edge, engine, .. } => game.apply_cut(*edge, *engine)?,
                LogEntry::Move { path, engine } => game.apply_move(path.clone(), *engine)?,
            }
        }
        Ok(game)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn mask(&self) -> &EdgeMask {
        &self.mask
    }

    pub fn cat(&self) -> Option<usize> {
        self.cat
    }

    pub fn turn(&self) -> Turn {
        self.turn
    }

    pub fn log(&self) -> &[LogEntry] {
        &self.log
    }

    pub fn state(&self) -> GameState {
        GameState {
            vertices: self.graph.n(),
            edges: self
                .graph
                .edges()
                .iter()
                .enumerate()
                .map(|(index, &endpoints)| EdgeState { index, endpoints, cut: !self.mask.contains(index) })
                .collect(),
            cat: self.cat,
            turn: self.turn,
            human_role: self.human,
            engine_level: self.level,
            score: self.score,
            terminal: self.turn == Turn::Over,
            engine_fallback: self.fallback,
            log: self.log.clone(),
        }
    }

    fn expect_turn(&self, want: Turn, what: &str) -> Result<(), GameError> {
        if self.turn == Turn::Over {
            return Err(rule("the game is over"));
        }
        if self.turn != want {
            return Err(rule(format!("not the time to {what}: waiting for {:?}", self.turn).to_lowercase()));
        }
        Ok(())
    }

    fn human_plays(&self, role: Role) -> Result<(), GameError> {
        if self.human != role {
            return Err(rule(format!("the engine plays the {}", if role == Role::Cat { "cat" } else { "herder" })));
        }
        Ok(())
    }

    pub fn place(&mut self, vertex: usize) -> Result<(), GameError> {
        self.human_plays(Role::Cat)?;
        self.apply_place(vertex, false)?;
        self.run_engine()
    }

    pub fn cut(&mut self, u: usize, v: usize) -> Result<(), GameError> {
        self.human_plays(Role::Herder)?;
        let e = self.graph.edge_index(u, v).ok_or_else(|| rule(format!("{u}-{v} is not an edge")))?;
        self.apply_cut(e, false)?;
        self.run_engine()
    }

    pub fn move_to(&mut self, vertex: usize) -> Result<(), GameError> {
        self.human_plays(Role::Cat)?;
        self.expect_turn(Turn::Cat, "move")?;
        let cat = self.cat.expect("placed");
        if vertex == cat {
            return Err(rule("cat must move to a different vertex in its component"));
        }
        if vertex >= self.graph.n() {
            return Err(rule(format!("vertex {vertex} does not exist")));
        }
        let path = witness_path(&self.graph, &self.mask, cat, vertex)
            .ok_or_else(|| rule(format!("vertex {vertex} is not in the cat's component")))?;
        self.apply_move(path, false)?;
        self.run_engine()
    }

    fn apply_place(&mut self, v: usize, engine: bool) -> Result<(), GameError> {
        self.expect_turn(Turn::Place, "place the cat")?;
        if v >= self.graph.n() {
            return Err(rule(format!("vertex {v} does not exist")));
        }
        self.cat = Some(v);
        self.walk.push(v);
        self.log.push(LogEntry::Place { vertex: v, engine });
        self.turn = if self.degree(v) == 0 { Turn::Over } else { Turn::Herder };
        Ok(())
    }

    fn apply_cut(&mut self, e: usize, engine: bool) -> Result<(), GameError> {
        self.expect_turn(Turn::Herder, "cut")?;
        if e >= self.graph.edge_count() {
            return Err(rule(format!("edge {e} does not exist")));
        }
        if !self.mask.contains(e) {
            let (a, b) = self.graph.edges()[e];
            return Err(rule(format!("edge {a}-{b} has already been cut")));
        }
        self.mask.remove(e);
        self.score += 1;
        let endpoints = self.graph.edges()[e];
        self.events.push(TraceEvent::Cut { edge: e, endpoints });
        self.log.push(LogEntry::Cut { edge: e, endpoints, engine });
        let cat = self.cat.expect("placed");
        self.turn = if self.degree(cat) == 0 { Turn::Over } else { Turn::Cat };
        Ok(())
    }

    fn apply_move(&mut self, path: Vec<usize>, engine: bool) -> Result<(), GameError> {
        self.expect_turn(Turn::Cat, "move")?;
        let cat = self.cat.expect("placed");
        if path.len() < 2 || path[0] != cat {
            return Err(rule("cat must move to a different vertex in its component"));
        }
        for w in path.windows(2) {
            match self.graph.edge_index(w[0], w[1]) {
                Some(e) if self.mask.contains(e) => {}
                _ => return Err(rule(format!("no surviving edge {}-{}", w[0], w[1]))),
            }
        }
        let to = *path.last().expect("non-trivial");
        self.walk.extend_from_slice(&path[1..]);
        self.events.push(TraceEvent::Move { path: path.clone() });
        self.log.push(LogEntry::Move { path, engine });
        self.cat = Some(to);
        self.turn = Turn::Herder;
        Ok(())
    }

    /// Plays engine moves until the human is to act or the game ends.
    fn run_engine(&mut self) -> Result<(), GameError> {
        loop {
            match self.turn {
                Turn::Herder if self.human != Role::Herder => {
                    let view = GameView {
                        graph: &self.graph,
                        mask: &self.mask,
                        cat: self.cat.expect("placed"),
                        events: &self.events,
                        walk: &self.walk,
                    };
                    let e = self.engine_herder.choose_cut(&view).map_err(GameError::Engine)?;
                    self.apply_cut(e, true)?;
                }
                Turn::Cat if self.human != Role::Cat => {
                    let view = GameView {
                        graph: &self.graph,
                        mask: &self.mask,
                        cat: self.cat.expect("placed"),
                        events: &self.events,
                        walk: &self.walk,
                    };
                    let path = self.engine_cat.respond(&view).map_err(GameError::Engine)?;
                    self.apply_move(path, true)?;
                }
                _ => return Ok(()),
            }
        }
    }

    fn degree(&self, v: usize) -> usize {
        self.graph.degree(&self.mask, v).expect("vertex in range")
    }
}

/// State reached by re-applying `log` to a fresh board.
pub fn replay(
    graph: &Graph,
    human: Role,
    level: EngineLevel,
    log: &[LogEntry],
    cfg: &SolverConfig,
) -> Result<GameState, GameError> {
    Ok(Game::from_log(graph.clone(), human, level, log, cfg)?.state())
}

#[cfg(test)]
mod tests {
    use super::*;
    use catherd::generators::path;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn levels_parse() {
        assert_eq!("random:9".parse::<EngineLevel>().unwrap(), EngineLevel::Random(9));
        assert_eq!("optimal".parse::<EngineLevel>().unwrap().to_string(), "optimal");
        assert!("psychic".parse::<EngineLevel>().is_err());
    }

    #[test]
    fn human_cat_flow() {
        let mut g = Game::new(path(4), Role::Cat, EngineLevel::Optimal, &cfg()).unwrap();
        assert_eq!(g.turn(), Turn::Place);
        g.place(1).unwrap();
        assert_eq!(g.turn(), Turn::Cat);
        assert!(matches!(g.place(2), Err(GameError::Rule(_))));
        let cat = g.cat().unwrap();
        assert_eq!(g.move_to(cat), Err(rule("cat must move to a different vertex in its component")));
    }

    #[test]
    fn spectator_plays_out() {
        let g = Game::new(path(8), Role::Spectator, EngineLevel::Optimal, &cfg()).unwrap();
        let s = g.state();
        assert!(s.terminal);
        assert_eq!(s.score, 3);
        assert_eq!(replay(&path(8), Role::Spectator, EngineLevel::Optimal, &s.log, &cfg()).unwrap(), s);
    }

    #[test]
    fn fallback_is_flagged() {
        let tight = SolverConfig { max_edges: 3, ..cfg() };
        let g = Game::new(path(8), Role::Herder, EngineLevel::Optimal, &tight).unwrap();
        assert!(g.state().engine_fallback);
    }
}
