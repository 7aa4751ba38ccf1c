//! Name-keyed factories for every strategy, so front ends pick strategies
//! from strings such as `optimal`, `random:7` or `scripted:0-1,2-3`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::infinite::strategies::{
    CutLastEdge, CycleHubCat, MedianPathCat, RandomHerder as InfRandomHerder, RayCutBehind, RunnerCat,
    ScriptedHerder as InfScriptedHerder, SubtreeCat,
};
use crate::infinite::{InfiniteCat, InfiniteHerder, Label};
use crate::solver::strategies::{
    CycleSeveringHerder, GreedyCat, GreedyHerder, OptimalCat, OptimalHerder, RandomCat, RandomHerder, ScriptedHerder,
};
use crate::solver::{CatStrategy, HerderStrategy, SolverConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("unknown {kind} strategy `{name}`; known: {known}")]
    Unknown { kind: &'static str, name: String, known: String },
    #[error("bad argument for `{name}`: {reason}")]
    BadArgument { name: String, reason: String },
}

type Factory<T> = Box<dyn Fn(Option<&str>, &SolverConfig) -> Result<T, RegistryError> + Send + Sync>;

pub struct StrategyRegistry {
    herders: BTreeMap<&'static str, Factory<Box<dyn HerderStrategy>>>,
    cats: BTreeMap<&'static str, Factory<Box<dyn CatStrategy>>>,
    infinite_herders: BTreeMap<&'static str, Factory<Box<dyn InfiniteHerder>>>,
    infinite_cats: BTreeMap<&'static str, Factory<Box<dyn InfiniteCat>>>,
}

fn bad(name: &str, reason: impl Into<String>) -> RegistryError {
    RegistryError::BadArgument { name: name.to_string(), reason: reason.into() }
}

fn number<T: std::str::FromStr>(name: &str, arg: Option<&str>, default: Option<T>) -> Result<T, RegistryError> {
    match arg {
        Some(a) => a.trim().parse().map_err(|_| bad(name, format!("`{a}` is not a number"))),
        None => default.ok_or_else(|| bad(name, "missing argument")),
    }
}

fn no_arg(name: &str, arg: Option<&str>) -> Result<(), RegistryError> {
    match arg {
        Some(a) => Err(bad(name, format!("takes no argument, got `{a}`"))),
        None => Ok(()),
    }
}

/// `0-1,2-3` into vertex pairs.
fn vertex_pairs(name: &str, arg: &str) -> Result<Vec<(usize, usize)>, RegistryError> {
    arg.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (a, b) = pair.split_once('-').ok_or_else(|| bad(name, format!("`{pair}` is not u-v")))?;
            let a = a.trim().parse().map_err(|_| bad(name, format!("`{pair}` is not u-v")))?;
            let b = b.trim().parse().map_err(|_| bad(name, format!("`{pair}` is not u-v")))?;
            Ok((a, b))
        })
        .collect()
}

/// `0/1;(1,0)/(2,0)` into label pairs.
fn label_pairs(name: &str, arg: &str) -> Result<Vec<(Label, Label)>, RegistryError> {
    arg.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (a, b) = pair.split_once('/').ok_or_else(|| bad(name, format!("`{pair}` is not a/b")))?;
            Ok((a.parse().map_err(|e: String| bad(name, e))?, b.parse().map_err(|e: String| bad(name, e))?))
        })
        .collect()
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry {
            herders: BTreeMap::new(),
            cats: BTreeMap::new(),
            infinite_herders: BTreeMap::new(),
            infinite_cats: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register_herder("optimal", Box::new(|arg, cfg| {
            no_arg("optimal", arg)?;
            Ok(Box::new(OptimalHerder::new(cfg.clone())))
        }));
        r.register_herder("greedy", Box::new(|arg, _| {
            no_arg("greedy", arg)?;
            Ok(Box::new(GreedyHerder))
        }));
        r.register_herder("random", Box::new(|arg, _| Ok(Box::new(RandomHerder::new(number("random", arg, Some(0))?)))));
        r.register_herder("cycle_severing", Box::new(|arg, _| {
            no_arg("cycle_severing", arg)?;
            Ok(Box::new(CycleSeveringHerder::new()))
        }));
        r.register_herder("scripted", Box::new(|arg, cfg| {
            let script = vertex_pairs("scripted", arg.unwrap_or(""))?;
            Ok(Box::new(ScriptedHerder::new(script, Box::new(OptimalHerder::new(cfg.clone())))))
        }));

        r.register_cat("optimal", Box::new(|arg, cfg| {
            no_arg("optimal", arg)?;
            Ok(Box::new(OptimalCat::new(cfg.clone())))
        }));
        r.register_cat("greedy", Box::new(|arg, _| {
            no_arg("greedy", arg)?;
            Ok(Box::new(GreedyCat))
        }));
        r.register_cat("random", Box::new(|arg, _| Ok(Box::new(RandomCat::new(number("random", arg, Some(0))?)))));

        r.register_infinite_herder("cut_last_edge", Box::new(|arg, _| {
            no_arg("cut_last_edge", arg)?;
            Ok(Box::new(CutLastEdge))
        }));
        r.register_infinite_herder("ray_cut_behind", Box::new(|arg, _| {
            no_arg("ray_cut_behind", arg)?;
            Ok(Box::new(RayCutBehind))
        }));
        r.register_infinite_herder("random", Box::new(|arg, _| {
            let (seed, radius) = match arg.and_then(|a| a.split_once(',')) {
                Some((s, rad)) => (number("random", Some(s), None)?, number("random", Some(rad), None)?),
                None => (number("random", arg, Some(0))?, 6),
            };
            Ok(Box::new(InfRandomHerder::new(seed, radius)))
        }));
        r.register_infinite_herder("scripted", Box::new(|arg, _| {
            let script = label_pairs("scripted", arg.unwrap_or(""))?;
            Ok(Box::new(InfScriptedHerder::new(script, Box::new(CutLastEdge))))
        }));

        r.register_infinite_cat("subtree", Box::new(|arg, _| {
            no_arg("subtree", arg)?;
            Ok(Box::new(SubtreeCat::new()))
        }));
        r.register_infinite_cat("median_path", Box::new(|arg, _| Ok(Box::new(MedianPathCat::new(number("median_path", arg, Some(10))?)))));
        r.register_infinite_cat("cycle_hub", Box::new(|arg, _| Ok(Box::new(CycleHubCat::new(number("cycle_hub", arg, Some(12))?)))));
        r.register_infinite_cat("runner", Box::new(|arg, _| Ok(Box::new(RunnerCat::new(number("runner", arg, Some(8))?)))));
        r
    }

    pub fn register_herder(&mut self, name: &'static str, f: Factory<Box<dyn HerderStrategy>>) {
        self.herders.insert(name, f);
    }

    pub fn register_cat(&mut self, name: &'static str, f: Factory<Box<dyn CatStrategy>>) {
        self.cats.insert(name, f);
    }

    pub fn register_infinite_herder(&mut self, name: &'static str, f: Factory<Box<dyn InfiniteHerder>>) {
        self.infinite_herders.insert(name, f);
    }

    pub fn register_infinite_cat(&mut self, name: &'static str, f: Factory<Box<dyn InfiniteCat>>) {
        self.infinite_cats.insert(name, f);
    }

    fn build<T>(
        map: &BTreeMap<&'static str, Factory<T>>,
        kind: &'static str,
        spec: &str,
        cfg: &SolverConfig,
    ) -> Result<T, RegistryError> {
        let (name, arg) = match spec.trim().split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (spec.trim(), None),
        };
        let factory = map.get(name).ok_or_else(|| RegistryError::Unknown {
            kind,
            name: name.to_string(),
            known: map.keys().copied().collect::<Vec<_>>().join(", "),
        })?;
        factory(arg, cfg)
    }

    pub fn herder(&self, spec: &str, cfg: &SolverConfig) -> Result<Box<dyn HerderStrategy>, RegistryError> {
        Self::build(&self.herders, "herder", spec, cfg)
    }

    pub fn cat(&self, spec: &str, cfg: &SolverConfig) -> Result<Box<dyn CatStrategy>, RegistryError> {
        Self::build(&self.cats, "cat", spec, cfg)
    }

    pub fn infinite_herder(&self, spec: &str) -> Result<Box<dyn InfiniteHerder>, RegistryError> {
        Self::build(&self.infinite_herders, "infinite herder", spec, &SolverConfig::default())
    }

    pub fn infinite_cat(&self, spec: &str) -> Result<Box<dyn InfiniteCat>, RegistryError> {
        Self::build(&self.infinite_cats, "infinite cat", spec, &SolverConfig::default())
    }

    pub fn herder_names(&self) -> Vec<&'static str> {
        self.herders.keys().copied().collect()
    }

    pub fn cat_names(&self) -> Vec<&'static str> {
        self.cats.keys().copied().collect()
    }

    pub fn infinite_herder_names(&self) -> Vec<&'static str> {
        self.infinite_herders.keys().copied().collect()
    }

    pub fn infinite_cat_names(&self) -> Vec<&'static str> {
        self.infinite_cats.keys().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::path;
    use crate::solver::play;

    #[test]
    fn builds_by_name() {
        let r = StrategyRegistry::with_builtins();
        let cfg = SolverConfig::default();
        let mut h = r.herder("optimal", &cfg).unwrap();
        let mut c = r.cat("optimal", &cfg).unwrap();
        assert_eq!(play(&path(4), c.as_mut(), h.as_mut()).unwrap().score, 2);
        assert_eq!(r.herder("random:7", &cfg).unwrap().name(), "random:7");
        assert!(r.herder("scripted:0-1,2-3", &cfg).is_ok());
        assert!(r.infinite_cat("median_path:6").is_ok());
        assert!(r.infinite_herder("scripted:0/1;(1,0)/(2,0)").is_ok());
    }

    #[test]
    fn errors() {
        let r = StrategyRegistry::with_builtins();
        let cfg = SolverConfig::default();
        assert!(matches!(r.herder("psychic", &cfg), Err(RegistryError::Unknown { .. })));
        assert!(matches!(r.herder("random:x", &cfg), Err(RegistryError::BadArgument { .. })));
        assert!(matches!(r.herder("optimal:3", &cfg), Err(RegistryError::BadArgument { .. })));
        assert!(matches!(r.herder("scripted:0_1", &cfg), Err(RegistryError::BadArgument { .. })));
    }

    #[test]
    fn custom_registration() {
        let mut r = StrategyRegistry::empty();
        r.register_herder("greedy2", Box::new(|_, _| Ok(Box::new(GreedyHerder))));
        assert_eq!(r.herder_names(), ["greedy2"]);
    }
}
