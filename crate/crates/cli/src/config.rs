//! Benchmark configuration loading with JSON-path error reporting.

use std::fmt;

use serde_json::Value;
use sphere_depth::bench::{AlgorithmEntry, ExperimentConfig};

/// Every problem found in a configuration, each tagged with its JSON path.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub problems: Vec<(String, String)>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "invalid benchmark configuration:")?;
        for (path, msg) in &self.problems {
            writeln!(f, "  {path}: {msg}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigError {}

fn path_or_root(path: String) -> String {
    if path.is_empty() || path == "." {
        "$".into()
    } else {
        path
    }
}

/// Keys of `algorithms[i]` that the parsed entry does not use. The flattened
/// parameters cannot reject them outright, so the input object is compared
/// with the serialized form of what was understood.
fn unused_algorithm_keys(raw: &Value, parsed: &ExperimentConfig) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let Some(entries) = raw.get("algorithms").and_then(Value::as_array) else {
        return out;
    };
    for (i, (input, entry)) in entries.iter().zip(&parsed.algorithms).enumerate() {
        let known = serde_json::to_value(AlgorithmEntry { label: Some(String::new()), ..entry.clone() })
            .unwrap_or(Value::Null);
        if let (Some(input), Some(known)) = (input.as_object(), known.as_object()) {
            for key in input.keys().filter(|k| !known.contains_key(*k)) {
                out.push((format!("algorithms[{i}].{key}"), "unknown field".into()));
            }
        }
    }
    out
}

/// Parses and validates a benchmark configuration.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let raw: Value = serde_json::from_str(text)
        .map_err(|e| ConfigError { problems: vec![("$".into(), e.to_string())] })?;
    let cfg: ExperimentConfig = serde_path_to_error::deserialize(&raw).map_err(|e| ConfigError {
        problems: vec![(path_or_root(e.path().to_string()), e.into_inner().to_string())],
    })?;
    let mut problems = unused_algorithm_keys(&raw, &cfg);
    problems.extend(cfg.violations());
    if problems.is_empty() {
        Ok(cfg)
    } else {
        Err(ConfigError { problems })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "distributions": [{"family": "normal"}],
        "notions": ["zonoid"],
        "dimensions": [3],
        "n": 50,
        "budgets": [100],
        "replications": 2,
        "seed": 1
    }"#;

    #[test]
    fn minimal_config_uses_all_algorithms() {
        let cfg = parse_config(MINIMAL).unwrap();
        assert_eq!(cfg.algorithms.len(), 8);
    }

    #[test]
    fn type_errors_carry_paths() {
        let bad = MINIMAL.replace(r#""dimensions": [3]"#, r#""dimensions": ["three"]"#);
        let err = parse_config(&bad).unwrap_err();
        assert_eq!(err.problems[0].0, "dimensions[0]");
        let bad = MINIMAL.replace(r#""seed": 1"#, r#""seed": 1, "colour": 2"#);
        assert!(parse_config(&bad).is_err());
    }

    #[test]
    fn unknown_algorithm_keys_are_listed() {
        let bad = MINIMAL.replace(
            r#""seed": 1"#,
            r#""seed": 1, "algorithms": [{"algorithm": "rs", "n_ref": 3}, {"algorithm": "rrs", "label": "R"}]"#,
        );
        let err = parse_config(&bad).unwrap_err();
        assert_eq!(err.problems, vec![("algorithms[0].n_ref".to_string(), "unknown field".to_string())]);
    }

    #[test]
    fn semantic_problems_are_all_listed() {
        let bad = MINIMAL
            .replace(r#""replications": 2"#, r#""replications": 0"#)
            .replace(r#""seed": 1"#, r#""seed": 1, "algorithms": [{"algorithm": "sa", "cooling": 1.5}]"#);
        let err = parse_config(&bad).unwrap_err();
        let paths: Vec<&str> = err.problems.iter().map(|p| p.0.as_str()).collect();
        assert_eq!(paths, vec!["replications", "algorithms[0].cooling"]);
        assert!(err.to_string().contains("algorithms[0].cooling"));
    }
}
