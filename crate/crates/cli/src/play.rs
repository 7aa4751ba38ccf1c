//! Terminal game against the engine, on top of the service's session logic.

use std::io::{BufRead, Write};

use anyhow::Context;
use catherd::solver::{Solver, SolverConfig};
use catherd::Graph;
use catherd_service::{EngineLevel, Game, GameError, LogEntry, Role, Turn};

const HELP: &str = "commands: <v> place or move the cat | <u> <v> cut an edge | hint | board | quit";

fn board(game: &Game) -> String {
    let s = game.state();
    let live: Vec<String> = s.edges.iter().filter(|e| !e.cut).map(|e| format!("{}-{}", e.endpoints.0, e.endpoints.1)).collect();
    let cat = s.cat.map_or("-".to_string(), |c| c.to_string());
    format!("cat {cat} | score {} | edges {}", s.score, live.join(" "))
}

fn hint(game: &Game, cfg: &SolverConfig) -> String {
    let Some(cat) = game.cat() else {
        let Ok(mut solver) = Solver::new(game.graph(), cfg.clone()) else { return "graph too large for hints".into() };
        let (v, value) = solver.best_start();
        return format!("best start {v} (value {value})");
    };
    let Ok(mut solver) = Solver::new(game.graph(), cfg.clone()) else { return "graph too large for hints".into() };
    match game.turn() {
        Turn::Herder => match solver.analyze(game.mask(), cat) {
            Ok(a) => {
                let best: Vec<String> =
                    a.cuts.iter().filter(|c| c.optimal).map(|c| format!("{}-{}", c.endpoints.0, c.endpoints.1)).collect();
                format!("value {}; optimal cuts: {}", a.value, best.join(" "))
            }
            Err(e) => e.to_string(),
        },
        Turn::Cat => match solver.best_reply(game.mask(), cat) {
            Ok(Some((v, value))) => format!("move to {v} (value {value})"),
            Ok(None) => "no move".into(),
            Err(e) => e.to_string(),
        },
        _ => String::new(),
    }
}

fn engine_moves(log: &[LogEntry]) -> Vec<String> {
    log.iter()
        .rev()
        .take_while(|e| matches!(e, LogEntry::Place { engine: true, .. } | LogEntry::Cut { engine: true, .. } | LogEntry::Move { engine: true, .. }))
        .map(|e| match e {
            LogEntry::Place { vertex, .. } => format!("engine places the cat on {vertex}"),
            LogEntry::Cut { endpoints, .. } => format!("engine cuts {}-{}", endpoints.0, endpoints.1),
            LogEntry::Move { path, .. } => format!("engine moves the cat along {path:?}"),
        })
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect()
}

pub fn run(
    graph: Graph,
    role: Role,
    level: EngineLevel,
    hints: bool,
    cfg: &SolverConfig,
    input: impl BufRead,
    mut out: impl Write,
) -> anyhow::Result<()> {
    let mut game = Game::new(graph, role, level, cfg).map_err(|e| anyhow::anyhow!(e))?;
    writeln!(out, "{HELP}")?;
    if game.state().engine_fallback {
        writeln!(out, "graph exceeds the solver budget; the engine plays greedily")?;
    }
    let mut lines = input.lines();
    loop {
        for m in engine_moves(game.log()) {
            writeln!(out, "{m}")?;
        }
        writeln!(out, "{}", board(&game))?;
        if game.turn() == Turn::Over {
            writeln!(out, "captured after {} cuts", game.state().score)?;
            return Ok(());
        }
        if hints {
            writeln!(out, "hint: {}", hint(&game, cfg))?;
        }
        let prompt = match game.turn() {
            Turn::Place => "place the cat",
            Turn::Cat => "move the cat",
            _ => "cut an edge",
        };
        write!(out, "{prompt}> ")?;
        out.flush()?;
        let before = game.log().len();
        loop {
            let Some(line) = lines.next() else {
                writeln!(out)?;
                return Ok(());
            };
            let line = line.context("reading input")?;
            let words: Vec<&str> = line.split_whitespace().collect();
            let nums: Option<Vec<usize>> = words.iter().map(|w| w.parse().ok()).collect();
            let result = match (words.as_slice(), nums.as_deref()) {
                (["quit"] | ["q"], _) => return Ok(()),
                (["hint"], _) => {
                    writeln!(out, "{}", hint(&game, cfg))?;
                    continue;
                }
                (["board"], _) => {
                    writeln!(out, "{}", board(&game))?;
                    continue;
                }
                (_, Some([v])) if game.turn() == Turn::Place => game.place(*v),
                (_, Some([v])) => game.move_to(*v),
                (_, Some([u, v])) => game.cut(*u, *v),
                _ => Err(GameError::Rule(HELP.into())),
            };
            match result {
                Ok(()) => break,
                Err(e) => {
                    writeln!(out, "{e}")?;
                    write!(out, "{prompt}> ")?;
                    out.flush()?;
                }
            }
        }
        debug_assert!(game.log().len() > before);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use catherd::generators::path;

    #[test]
    fn herder_session_to_capture() {
        let input = b"hint\n9 9\n0 1\n1 2\n2 3\n" as &[u8];
        let mut out = Vec::new();
        run(path(4), Role::Herder, EngineLevel::Optimal, false, &SolverConfig::default(), input, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("engine places the cat on"), "{text}");
        assert!(text.contains("9-9 is not an edge"), "{text}");
        assert!(text.contains("captured after"), "{text}");
    }
}
