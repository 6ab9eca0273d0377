//! Caps configuration: a simple key=value file overriding the defaults.
//!
//! Recognized keys (all usize): equilateral_n, lacunary_subset_n,
//! lacunary_perm_n, binary_subset_n, binary_topology_n, ramsey_exact_n,
//! composition_max_points. Lines starting with '#' and blank lines are
//! ignored.

use std::path::Path;

use mdich_core::oracle::Caps;

use crate::error::CliError;

pub fn load_caps(path: Option<&Path>) -> Result<Caps, CliError> {
    let mut caps = Caps::default();
    let Some(path) = path else {
        return Ok(caps);
    };
    let text = std::fs::read_to_string(path)?;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!(
                "caps file line {}: expected key=value, got {raw:?}",
                lineno + 1
            )));
        };
        let value: usize = value.trim().parse().map_err(|e| {
            CliError::Usage(format!("caps file line {}: bad value: {e}", lineno + 1))
        })?;
        match key.trim() {
            "equilateral_n" => caps.equilateral_n = value,
            "lacunary_subset_n" => caps.lacunary_subset_n = value,
            "lacunary_perm_n" => caps.lacunary_perm_n = value,
            "binary_subset_n" => caps.binary_subset_n = value,
            "binary_topology_n" => caps.binary_topology_n = value,
            "ramsey_exact_n" => caps.ramsey_exact_n = value,
            "composition_max_points" => caps.composition_max_points = value,
            other => {
                return Err(CliError::Usage(format!(
                    "caps file line {}: unknown key {other:?}",
                    lineno + 1
                )))
            }
        }
    }
    Ok(caps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_overrides() {
        let dir = std::env::temp_dir().join("mdich-caps-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("caps.conf");
        std::fs::write(&path, "# comment\nequilateral_n = 12\nlacunary_perm_n=7\n").unwrap();
        let caps = load_caps(Some(&path)).unwrap();
        assert_eq!(caps.equilateral_n, 12);
        assert_eq!(caps.lacunary_perm_n, 7);
        assert_eq!(caps.binary_subset_n, Caps::default().binary_subset_n);
    }

    #[test]
    fn rejects_unknown_keys() {
        let dir = std::env::temp_dir().join("mdich-caps-test2");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("caps.conf");
        std::fs::write(&path, "bogus=1\n").unwrap();
        assert!(matches!(load_caps(Some(&path)), Err(CliError::Usage(_))));
    }
}
