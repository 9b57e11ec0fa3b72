//! Flat `key = value` configuration files.
//!
//! One assignment per line; `#` starts a comment; blank lines are ignored.
//! Keys are applied in order with [`ExperimentSpec::set`], so later lines
//! override earlier ones and CLI flags can be layered on top.

use serde::de::value::{Error as DeError, StrDeserializer};
use serde::de::{DeserializeOwned, IntoDeserializer};

use super::{AlgorithmConfig, ExperimentSpec};
use crate::error::{Error, Result};
use crate::rng::LevyParams;

/// Splits a config text into `(line, key, value)` triples.
pub fn parse_pairs(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Error::Parse {
                line,
                message: format!("expected `key = value`, got `{content}`"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || value.is_empty() {
            return Err(Error::Parse {
                line,
                message: "empty key or value".into(),
            });
        }
        out.push((line, key.to_string(), value.to_string()));
    }
    Ok(out)
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("`{key}`: cannot parse `{value}`")))
}

fn finite(key: &str, value: &str) -> Result<f64> {
    let v: f64 = num(key, value)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Config(format!(
            "`{key}` must be finite, got `{value}`"
        )))
    }
}

fn variant<T: DeserializeOwned>(key: &str, value: &str) -> Result<T> {
    let de: StrDeserializer<'_, DeError> = value.into_deserializer();
    T::deserialize(de).map_err(|_| Error::Config(format!("`{key}`: unknown option `{value}`")))
}

impl ExperimentSpec {
    /// Parses a config file on top of the defaults.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut spec = Self::default();
        spec.apply_config_str(text)?;
        Ok(spec)
    }

    /// Applies every assignment in `text` to `self`.
    pub fn apply_config_str(&mut self, text: &str) -> Result<()> {
        for (line, key, value) in parse_pairs(text)? {
            self.set(&key, &value).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
        }
        self.validate()
    }

    /// Sets one configuration key. Switching to a different `algorithm`
    /// resets the algorithm parameters to their defaults but keeps the stop
    /// criteria.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "problem" => self.problem = value.to_string(),
            "algorithm" | "algo" => {
                let fresh = AlgorithmConfig::named(value)?;
                if fresh.name() != self.algorithm.name() {
                    let stop = *self.stop();
                    self.algorithm = fresh;
                    *self.stop_mut() = stop;
                }
            }
            "dim" => {
                self.dim = match value {
                    "default" => None,
                    v => Some(num(key, v)?),
                }
            }
            "trials" => self.trials = num(key, value)?,
            "seed" => self.base_seed = num(key, value)?,
            "budget" | "max_evaluations" => self.stop_mut().max_evaluations = num(key, value)?,
            "tolerance" => self.stop_mut().success_tolerance = finite(key, value)?,
            "stall_window" => self.stop_mut().stall_window = num(key, value)?,
            "stall_tolerance" => self.stop_mut().stall_tolerance = finite(key, value)?,
            _ => return self.algorithm.set(key, value),
        }
        Ok(())
    }

    /// Effective configuration as a config file; parses back to `self`.
    pub fn to_config_string(&self) -> String {
        let stop = self.stop();
        let mut lines = vec![
            format!("problem = {}", self.problem),
            format!("algorithm = {}", self.algorithm.name()),
            format!(
                "dim = {}",
                self.dim.map_or("default".to_string(), |d| d.to_string())
            ),
            format!("trials = {}", self.trials),
            format!("seed = {}", self.base_seed),
            format!("budget = {}", stop.max_evaluations),
            format!("tolerance = {:?}", stop.success_tolerance),
            format!("stall_window = {}", stop.stall_window),
            format!("stall_tolerance = {:?}", stop.stall_tolerance),
        ];
        lines.extend(
            self.algorithm
                .pairs()
                .into_iter()
                .map(|(k, v)| format!("{k} = {v}")),
        );
        lines.join("\n") + "\n"
    }
}

fn kebab<T: serde::Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        other => panic!("unit enum expected, got {other:?}"),
    }
}

impl AlgorithmConfig {
    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let name = self.name();
        let unknown = || {
            Err(Error::Config(format!(
                "unknown key `{key}` for algorithm {name}"
            )))
        };
        match self {
            AlgorithmConfig::Cs(c) => match key {
                "n" => c.n = num(key, value)?,
                "pa" => c.pa = finite(key, value)?,
                "alpha0" => c.alpha0 = finite(key, value)?,
                "beta" => {
                    c.levy = LevyParams::new(finite(key, value)?)
                        .map_err(|e| Error::Config(e.to_string()))?
                }
                "eggs" => c.eggs = variant(key, value)?,
                "cuckoo_source" => c.cuckoo_source = variant(key, value)?,
                "levy_move" => c.levy_move = variant(key, value)?,
                "discovery" => c.discovery = variant(key, value)?,
                "abandonment" => c.abandonment = variant(key, value)?,
                "noise" => c.noise = variant(key, value)?,
                "max_generations" => {
                    c.max_generations = match value {
                        "none" => None,
                        v => Some(num(key, v)?),
                    }
                }
                _ => return unknown(),
            },
            AlgorithmConfig::Pso(c) => match key {
                "swarm" => c.swarm = num(key, value)?,
                "inertia_start" => c.inertia_start = finite(key, value)?,
                "inertia_end" => c.inertia_end = finite(key, value)?,
                "c1" => c.c1 = finite(key, value)?,
                "c2" => c.c2 = finite(key, value)?,
                "velocity_clamp" => c.velocity_clamp = finite(key, value)?,
                _ => return unknown(),
            },
            AlgorithmConfig::Ga(c) => match key {
                "population" => c.population = num(key, value)?,
                "tournament" => c.tournament = num(key, value)?,
                "blend_alpha" => c.blend_alpha = finite(key, value)?,
                "crossover_rate" => c.crossover_rate = finite(key, value)?,
                "mutation_rate" => {
                    c.mutation_rate = match value {
                        "auto" => None,
                        v => Some(finite(key, v)?),
                    }
                }
                "mutation_scale" => c.mutation_scale = finite(key, value)?,
                "elitism" => c.elitism = num(key, value)?,
                _ => return unknown(),
            },
        }
        Ok(())
    }

    fn pairs(&self) -> Vec<(&'static str, String)> {
        match self {
            AlgorithmConfig::Cs(c) => vec![
                ("n", c.n.to_string()),
                ("pa", format!("{:?}", c.pa)),
                ("alpha0", format!("{:?}", c.alpha0)),
                ("beta", format!("{:?}", c.levy.beta())),
                ("eggs", kebab(&c.eggs)),
                ("cuckoo_source", kebab(&c.cuckoo_source)),
                ("levy_move", kebab(&c.levy_move)),
                ("discovery", kebab(&c.discovery)),
                ("abandonment", kebab(&c.abandonment)),
                ("noise", kebab(&c.noise)),
                (
                    "max_generations",
                    c.max_generations.map_or("none".into(), |g| g.to_string()),
                ),
            ],
            AlgorithmConfig::Pso(c) => vec![
                ("swarm", c.swarm.to_string()),
                ("inertia_start", format!("{:?}", c.inertia_start)),
                ("inertia_end", format!("{:?}", c.inertia_end)),
                ("c1", format!("{:?}", c.c1)),
                ("c2", format!("{:?}", c.c2)),
                ("velocity_clamp", format!("{:?}", c.velocity_clamp)),
            ],
            AlgorithmConfig::Ga(c) => vec![
                ("population", c.population.to_string()),
                ("tournament", c.tournament.to_string()),
                ("blend_alpha", format!("{:?}", c.blend_alpha)),
                ("crossover_rate", format!("{:?}", c.crossover_rate)),
                (
                    "mutation_rate",
                    c.mutation_rate.map_or("auto".into(), |r| format!("{r:?}")),
                ),
                ("mutation_scale", format!("{:?}", c.mutation_scale)),
                ("elitism", c.elitism.to_string()),
            ],
        }
    }
}
