//! Solver configuration from an optional TOML file plus flag overrides.
//!
//! The file holds any subset of the `SolverConfig` fields at top level;
//! missing fields keep their defaults, and command-line flags override the
//! file. This keeps one recorded seed and one bound set per run.

use std::path::Path;

use hadamard::solver::SolverConfig;

/// Flag-level overrides; `None` keeps the file/default value.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub d_max: Option<u64>,
    pub prog_max: Option<u64>,
    pub prog_depth: Option<u32>,
    pub k: Option<u64>,
    pub q_max: Option<u64>,
    pub period_max: Option<u64>,
    pub modulus_bound: Option<u64>,
    pub scan_bound: Option<u64>,
    pub y_retries: Option<u32>,
}

pub fn apply_overrides(cfg: &mut SolverConfig, ov: &Overrides) {
    macro_rules! take {
        ($($f:ident),*) => { $( if let Some(v) = ov.$f { cfg.$f = v; } )* };
    }
    take!(seed, d_max, prog_max, prog_depth, k, q_max, period_max, modulus_bound, scan_bound, y_retries);
}

pub fn load_config(file: Option<&Path>, ov: &Overrides) -> Result<SolverConfig, String> {
    let mut cfg = match file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
            toml::from_str::<SolverConfig>(&text)
                .map_err(|e| format!("bad config {}: {e}", path.display()))?
        }
        None => SolverConfig::default(),
    };
    apply_overrides(&mut cfg, ov);
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_files_keep_defaults_and_flags_win() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("hf.toml");
        std::fs::write(&path, "q_max = 50\nseed = 7\n").unwrap();
        let ov = Overrides { seed: Some(9), ..Default::default() };
        let cfg = load_config(Some(&path), &ov).unwrap();
        assert_eq!(cfg.q_max, 50);
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.d_max, SolverConfig::default().d_max);
    }

    #[test]
    fn schedules_load_from_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("hf.toml");
        std::fs::write(&path, "d_schedule = [1, 2, 4]\n").unwrap();
        let cfg = load_config(Some(&path), &Overrides::default()).unwrap();
        assert_eq!(cfg.d_schedule, vec![1, 2, 4]);
    }
}
