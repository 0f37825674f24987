//! Flat JSON configuration and `key=value` overrides.
//!
//! Precedence is defaults, then the file, then overrides; the merged result is
//! validated before it is returned. Keys are the [`WorldConfig`] field names;
//! the short parameter names (`SR`, `MR`, `FV`, `FUF`, `FC`, `MC`, `BT`, `LR`)
//! are accepted as aliases.

use std::fs;
use std::path::Path;

use serde_json::{Map, Value};

use crate::env::{ConfigError, WorldConfig};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Canonical key names, in output order.
pub const CONFIG_KEYS: [&str; 15] = [
    "starting_reserve",
    "maximum_reserve",
    "food_value",
    "food_update_frequency",
    "falling_chance",
    "mutation_chance",
    "begging_threshold",
    "learning_rate",
    "scale_by_magnitude",
    "reinforcement_rule",
    "population",
    "etype",
    "learning_enabled",
    "exemplars_enabled",
    "bf_use_selfishness",
];

/// Maps a key or alias to its canonical name.
pub fn canonical_key(key: &str) -> Option<&'static str> {
    let alias = match key {
        "SR" => "starting_reserve",
        "MR" => "maximum_reserve",
        "FV" => "food_value",
        "FUF" => "food_update_frequency",
        "FC" => "falling_chance",
        "MC" => "mutation_chance",
        "BT" => "begging_threshold",
        "LR" => "learning_rate",
        other => other,
    };
    CONFIG_KEYS.iter().copied().find(|k| *k == alias)
}

/// A raw value from either source.
#[derive(Debug, Clone, Copy)]
enum Raw<'a> {
    Json(&'a Value),
    Text(&'a str),
}

impl<'a> Raw<'a> {
    fn real(self, key: &str) -> Result<f64, ConfigError> {
        let parsed = match self {
            Raw::Json(v) => v.as_f64(),
            Raw::Text(s) => s.trim().parse::<f64>().ok(),
        };
        parsed.ok_or_else(|| ConfigError::new(key, "expected a number"))
    }

    fn count(self, key: &str) -> Result<u64, ConfigError> {
        let parsed = match self {
            Raw::Json(v) => v.as_u64(),
            Raw::Text(s) => s.trim().parse::<u64>().ok(),
        };
        parsed.ok_or_else(|| ConfigError::new(key, "expected a non-negative integer"))
    }

    fn flag(self, key: &str) -> Result<bool, ConfigError> {
        let parsed = match self {
            Raw::Json(v) => v.as_bool(),
            Raw::Text(s) => s.trim().parse::<bool>().ok(),
        };
        parsed.ok_or_else(|| ConfigError::new(key, "expected true or false"))
    }

    fn text(self, key: &str) -> Result<&'a str, ConfigError> {
        match self {
            Raw::Json(v) => v.as_str().ok_or_else(|| ConfigError::new(key, "expected a string")),
            Raw::Text(s) => Ok(s.trim()),
        }
    }
}

fn set_field<T: Scalar>(cfg: &mut WorldConfig<T>, key: &str, raw: Raw<'_>) -> Result<(), ConfigError> {
    let key = canonical_key(key).ok_or_else(|| ConfigError::new(key, "unknown key"))?;
    let real = |raw: Raw<'_>| raw.real(key).map(T::lit);
    match key {
        "starting_reserve" => cfg.starting_reserve = real(raw)?,
        "maximum_reserve" => cfg.maximum_reserve = real(raw)?,
        "food_value" => cfg.food_value = real(raw)?,
        "food_update_frequency" => {
            cfg.food_update_frequency =
                u32::try_from(raw.count(key)?).map_err(|_| ConfigError::new(key, "value too large"))?
        }
        "falling_chance" => cfg.falling_chance = real(raw)?,
        "mutation_chance" => cfg.mutation_chance = real(raw)?,
        "begging_threshold" => cfg.begging_threshold = real(raw)?,
        "learning_rate" => cfg.learn.learning_rate = real(raw)?,
        "scale_by_magnitude" => cfg.learn.scale_by_magnitude = raw.flag(key)?,
        "reinforcement_rule" => {
            cfg.learn.rule = raw.text(key)?.parse().map_err(|e: String| ConfigError::new(key, e))?
        }
        "population" => {
            cfg.population = usize::try_from(raw.count(key)?).map_err(|_| ConfigError::new(key, "value too large"))?
        }
        "etype" => cfg.etype = raw.text(key)?.parse().map_err(|e: String| ConfigError::new(key, e))?,
        "learning_enabled" => cfg.learning_enabled = raw.flag(key)?,
        "exemplars_enabled" => cfg.exemplars_enabled = raw.flag(key)?,
        "bf_use_selfishness" => cfg.bf_use_selfishness = raw.flag(key)?,
        _ => unreachable!("every canonical key is handled"),
    }
    Ok(())
}

/// Applies one `key=value` override.
pub fn apply_override<T: Scalar>(cfg: &mut WorldConfig<T>, key: &str, value: &str) -> Result<(), ConfigError> {
    set_field(cfg, key.trim(), Raw::Text(value))
}

/// Splits `key=value`.
pub fn split_override(pair: &str) -> Result<(&str, &str), ConfigError> {
    pair.split_once('=').ok_or_else(|| ConfigError::new(pair, "override must have the form key=value"))
}

/// Applies a flat JSON object on top of `cfg`. Does not validate.
pub fn merge_json<T: Scalar>(cfg: &mut WorldConfig<T>, text: &str) -> Result<(), String> {
    let value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let Value::Object(map) = value else {
        return Err("expected a JSON object".into());
    };
    for (key, value) in &map {
        set_field(cfg, key, Raw::Json(value)).map_err(|e| e.to_string())?;
    }
    Ok(())
}

/// Defaults, overlaid with the file at `path` (if any), then `overrides`.
pub fn parse_config<T: Scalar>(path: Option<&Path>, overrides: &[(String, String)]) -> Result<WorldConfig<T>> {
    let mut cfg = WorldConfig::default();
    if let Some(path) = path {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        merge_json(&mut cfg, &text).map_err(|reason| Error::MalformedConfig { path: path.to_path_buf(), reason })?;
    }
    for (key, value) in overrides {
        apply_override(&mut cfg, key, value)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Serializes every field under its canonical key.
pub fn config_to_json<T: Scalar>(cfg: &WorldConfig<T>) -> String {
    let real = |v: T| Value::from(v.as_f64());
    let mut map = Map::new();
    map.insert("starting_reserve".into(), real(cfg.starting_reserve));
    map.insert("maximum_reserve".into(), real(cfg.maximum_reserve));
    map.insert("food_value".into(), real(cfg.food_value));
    map.insert("food_update_frequency".into(), Value::from(cfg.food_update_frequency));
    map.insert("falling_chance".into(), real(cfg.falling_chance));
    map.insert("mutation_chance".into(), real(cfg.mutation_chance));
    map.insert("begging_threshold".into(), real(cfg.begging_threshold));
    map.insert("learning_rate".into(), real(cfg.learn.learning_rate));
    map.insert("scale_by_magnitude".into(), Value::from(cfg.learn.scale_by_magnitude));
    map.insert("reinforcement_rule".into(), Value::from(cfg.learn.rule.as_str()));
    map.insert("population".into(), Value::from(cfg.population as u64));
    map.insert("etype".into(), Value::from(cfg.etype.as_str()));
    map.insert("learning_enabled".into(), Value::from(cfg.learning_enabled));
    map.insert("exemplars_enabled".into(), Value::from(cfg.exemplars_enabled));
    map.insert("bf_use_selfishness".into(), Value::from(cfg.bf_use_selfishness));
    serde_json::to_string_pretty(&Value::Object(map)).expect("a JSON map always serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::virtue::{EType, ReinforcementRule};

    fn write_tmp(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        std::io::Write::write_all(&mut f, text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn empty_input_gives_defaults() {
        let cfg: WorldConfig = parse_config(None, &[]).unwrap();
        assert_eq!(cfg.food_value, 1.25);
        assert_eq!(cfg.food_update_frequency, 4);
        assert_eq!(cfg.falling_chance, 0.1);
        assert_eq!(cfg.mutation_chance, 0.05);
        assert_eq!(cfg.begging_threshold, 0.2);
        assert_eq!(cfg.learn.learning_rate, 0.1);
        assert_eq!(cfg.starting_reserve, 5.0);
        assert_eq!(cfg.maximum_reserve, 10.0);
    }

    #[test]
    fn out_of_range_override_is_rejected() {
        let err = parse_config::<f64>(None, &[("FC".into(), "1.5".into())]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("falling_chance"), "{msg}");
        assert!(msg.contains("probability out of range"), "{msg}");
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn flags_override_file() {
        let f = write_tmp(r#"{"LR": 0.2, "population": 12}"#);
        let cfg: WorldConfig = parse_config(Some(f.path()), &[("learning_rate".into(), "0.3".into())]).unwrap();
        assert_eq!(cfg.learn.learning_rate, 0.3);
        assert_eq!(cfg.population, 12);
    }

    #[test]
    fn unknown_and_malformed_keys() {
        let err = parse_config::<f64>(None, &[("speed".into(), "3".into())]).unwrap_err();
        assert!(err.to_string().contains("speed"));

        let f = write_tmp(r#"{"food_value": "lots"}"#);
        let err = parse_config::<f64>(Some(f.path()), &[]).unwrap_err();
        assert!(matches!(err, Error::MalformedConfig { .. }));
        assert!(err.to_string().contains("food_value"));

        let f = write_tmp("[1, 2]");
        assert!(matches!(parse_config::<f64>(Some(f.path()), &[]), Err(Error::MalformedConfig { .. })));

        let f = write_tmp("{not json");
        assert!(matches!(parse_config::<f64>(Some(f.path()), &[]), Err(Error::MalformedConfig { .. })));
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = parse_config::<f64>(Some(Path::new("/nonexistent/cfg.json")), &[]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn split_requires_equals() {
        assert_eq!(split_override("FC=0.2").unwrap(), ("FC", "0.2"));
        assert!(split_override("FC").is_err());
    }

    #[test]
    fn text_fields_parse() {
        let mut cfg = WorldConfig::<f64>::default();
        apply_override(&mut cfg, "etype", "pb").unwrap();
        apply_override(&mut cfg, "reinforcement_rule", "taken_branch").unwrap();
        apply_override(&mut cfg, "bf_use_selfishness", "true").unwrap();
        assert_eq!(cfg.etype, EType::PraiseBlame);
        assert_eq!(cfg.learn.rule, ReinforcementRule::TakenBranch);
        assert!(cfg.bf_use_selfishness);
        assert!(apply_override(&mut cfg, "learning_enabled", "yes").is_err());
        assert!(apply_override(&mut cfg, "population", "-3").is_err());
    }
}
