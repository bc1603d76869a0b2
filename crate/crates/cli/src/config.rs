//! Run configuration: command-line flags merged over an optional TOML file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use qgroth::{CartanDatum, QuiverDatum};

use crate::error::{usage, CliError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Keys accepted in a `--config` file. Every key mirrors a flag of the same
/// name; a flag given on the command line wins.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(rename = "type")]
    pub type_name: Option<String>,
    pub arrows: Option<String>,
    pub xi: Option<Vec<i64>>,
    pub format: Option<Format>,
    pub q: Option<u8>,
    pub mmax: Option<usize>,
    pub lo: Option<i64>,
    pub hi: Option<i64>,
    pub bound: Option<i64>,
    pub levels: Option<String>,
    pub cache_dir: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

/// Parsed and validated settings for one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(rename = "type")]
    pub type_name: Option<String>,
    /// 1-based arrows `a → b`.
    pub arrows: Option<Vec<(usize, usize)>>,
    pub xi: Option<Vec<i64>>,
    pub format: Format,
    pub q: Option<u8>,
    pub mmax: Option<usize>,
    pub lo: Option<i64>,
    pub hi: Option<i64>,
    pub bound: Option<i64>,
    pub levels: Option<(i64, i64)>,
    pub cache_dir: Option<PathBuf>,
}

/// Flag values as given on the command line, before merging.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub type_name: Option<String>,
    pub arrows: Option<String>,
    pub xi: Option<String>,
    pub format: Option<Format>,
    pub q: Option<u8>,
    pub mmax: Option<usize>,
    pub lo: Option<i64>,
    pub hi: Option<i64>,
    pub bound: Option<i64>,
    pub levels: Option<String>,
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn merge(flags: Flags, file: ConfigFile) -> Result<Self, CliError> {
        let xi = match flags.xi {
            Some(s) => Some(parse_list(&s)?),
            None => file.xi,
        };
        let config = RunConfig {
            type_name: flags.type_name.or(file.type_name),
            arrows: flags.arrows.or(file.arrows).map(|s| parse_arrows(&s)).transpose()?,
            xi,
            format: flags.format.or(file.format).unwrap_or_default(),
            q: flags.q.or(file.q),
            mmax: flags.mmax.or(file.mmax),
            lo: flags.lo.or(file.lo),
            hi: flags.hi.or(file.hi),
            bound: flags.bound.or(file.bound),
            levels: flags.levels.or(file.levels).map(|s| parse_levels(&s)).transpose()?,
            cache_dir: flags.cache_dir.or(file.cache_dir),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(q) = self.q {
            if !matches!(q, 2..=4) {
                return usage(format!("--q must be 2, 3 or 4, got {q}"));
            }
        }
        if let Some(b) = self.bound {
            if b < 0 {
                return usage("--bound must be nonnegative");
            }
        }
        if let Some((lo, hi)) = self.levels {
            if lo > hi {
                return usage(format!("empty level range {lo}..{hi}"));
            }
        }
        if let (Some(lo), Some(hi)) = (self.lo, self.hi) {
            if lo > hi {
                return usage(format!("empty window {lo}..{hi}"));
            }
        }
        if self.type_name.is_some() {
            self.quiver()?;
        }
        Ok(())
    }

    pub fn cartan(&self) -> Result<CartanDatum, CliError> {
        let name = self.type_name.as_deref().ok_or_else(|| CliError::Usage("--type is required".into()))?;
        Ok(name.parse()?)
    }

    /// The quiver from `--arrows` and/or `--xi`; without either, every arrow
    /// points from the smaller to the larger vertex index.
    pub fn quiver(&self) -> Result<QuiverDatum, CliError> {
        let cartan = self.cartan()?;
        let n = cartan.rank();
        let arrows = match &self.arrows {
            Some(a) => {
                if a.iter().any(|&(x, y)| x == 0 || y == 0 || x > n || y > n) {
                    return usage(format!("arrow endpoints must lie in 1..={n}"));
                }
                Some(a.iter().map(|&(x, y)| (x - 1, y - 1)).collect::<Vec<_>>())
            }
            None => None,
        };
        let quiver = match (arrows, &self.xi) {
            (Some(a), Some(xi)) => QuiverDatum::new(cartan, a, xi.clone())?,
            (Some(a), None) => QuiverDatum::from_arrows(cartan, a)?,
            (None, Some(xi)) => QuiverDatum::from_xi(cartan, xi.clone())?,
            (None, None) => QuiverDatum::all_orientations(&cartan)?.remove(0),
        };
        Ok(quiver)
    }

    pub fn require_q(&self) -> Result<u8, CliError> {
        self.q.ok_or_else(|| CliError::Usage("--q is required".into()))
    }
}

/// `2-1,2-3` into `[(2, 1), (2, 3)]`.
pub fn parse_arrows(s: &str) -> Result<Vec<(usize, usize)>, CliError> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (a, b) = p.trim().split_once('-').ok_or_else(|| CliError::Usage(format!("arrow {p:?} is not of the form a-b")))?;
            let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad vertex in arrow {p:?}")));
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

/// `1,1,0` into `[1, 1, 0]`.
pub fn parse_list(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad integer {x:?} in list {s:?}"))))
        .collect()
}

/// `0..3`, `0..=3` or a single level `2`.
pub fn parse_levels(s: &str) -> Result<(i64, i64), CliError> {
    let parse = |x: &str| x.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad level range {s:?}")));
    match s.split_once("..") {
        Some((a, b)) => Ok((parse(a)?, parse(b.trim_start_matches('='))?)),
        None => {
            let l = parse(s)?;
            Ok((l, l))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrow_syntax() {
        assert_eq!(parse_arrows("2-1,2-3").unwrap(), vec![(2, 1), (2, 3)]);
        assert!(parse_arrows("2>1").is_err());
        assert_eq!(parse_levels("0..3").unwrap(), (0, 3));
        assert_eq!(parse_levels("0..=3").unwrap(), (0, 3));
        assert_eq!(parse_list("4,4,5,4").unwrap(), vec![4, 4, 5, 4]);
    }

    #[test]
    fn flags_win_over_file() {
        let file = ConfigFile { type_name: Some("A3".into()), q: Some(3), bound: Some(2), ..Default::default() };
        let flags = Flags { q: Some(2), ..Default::default() };
        let c = RunConfig::merge(flags, file).unwrap();
        assert_eq!((c.q, c.bound, c.type_name.as_deref()), (Some(2), Some(2), Some("A3")));
    }

    #[test]
    fn orientation_is_checked() {
        let flags = Flags { type_name: Some("A3".into()), arrows: Some("2-1,2-3".into()), xi: Some("0,1,0".into()), ..Default::default() };
        let c = RunConfig::merge(flags, ConfigFile::default()).unwrap();
        assert_eq!(c.quiver().unwrap().arrows(), &[(1, 0), (1, 2)]);
        let bad = Flags { type_name: Some("A3".into()), arrows: Some("2-1,2-3".into()), xi: Some("1,0,1".into()), ..Default::default() };
        assert!(RunConfig::merge(bad, ConfigFile::default()).is_err());
        let off = Flags { type_name: Some("A3".into()), arrows: Some("1-4".into()), ..Default::default() };
        assert!(RunConfig::merge(off, ConfigFile::default()).is_err());
    }

    #[test]
    fn config_file_parses() {
        let file: ConfigFile = toml::from_str("type = \"D4\"\nxi = [4, 4, 5, 4]\nformat = \"json\"\n").unwrap();
        assert_eq!(file.xi, Some(vec![4, 4, 5, 4]));
        assert_eq!(file.format, Some(Format::Json));
        assert!(toml::from_str::<ConfigFile>("colour = 1").is_err());
    }
}
