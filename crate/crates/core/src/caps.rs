use std::str::FromStr;

use thiserror::Error;

/// Environment variable consulted for cap overrides, e.g.
/// `NONEVADE_CAPS="nonevasive=10,game=14"`.
pub const CAPS_ENV: &str = "NONEVADE_CAPS";

/// Size limits for the exponential checks. Exceeding one is reported as an
/// error, never skipped silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum vertex count for brute-force nonevasiveness.
    pub nonevasive: usize,
    /// Maximum face count for the collapse search.
    pub collapse: usize,
    /// Maximum ground-set size for exhaustive query games.
    pub game: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            nonevasive: 12,
            collapse: 1 << 14,
            game: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad cap specification {0:?}")]
pub struct CapsParseError(pub String);

impl Caps {
    /// Applies `key=value` overrides on top of `self`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self, CapsParseError> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let err = || CapsParseError(item.to_string());
            let (key, value) = item.split_once('=').ok_or_else(err)?;
            let value: usize = value.trim().parse().map_err(|_| err())?;
            if value == 0 {
                return Err(err());
            }
            match key.trim() {
                "nonevasive" => self.nonevasive = value,
                "collapse" => self.collapse = value,
                "game" => self.game = value,
                _ => return Err(err()),
            }
        }
        Ok(self)
    }

    /// Defaults overridden by [`CAPS_ENV`] when it is set.
    pub fn from_env() -> Result<Self, CapsParseError> {
        match std::env::var(CAPS_ENV) {
            Ok(spec) => Caps::default().with_overrides(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }
}

impl FromStr for Caps {
    type Err = CapsParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Caps::default().with_overrides(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let caps: Caps = "nonevasive=10, game=14".parse().unwrap();
        assert_eq!(caps.nonevasive, 10);
        assert_eq!(caps.game, 14);
        assert_eq!(caps.collapse, 1 << 14);
        assert!("game=0".parse::<Caps>().is_err());
        assert!("speed=3".parse::<Caps>().is_err());
        assert!("game".parse::<Caps>().is_err());
    }
}
