//! Enumeration caps.
//!
//! Every operation that enumerates elements, subgroups or vertex subsets is
//! bounded by one of these caps and reports [`Error::CapExceeded`] instead of
//! running unbounded.
//!
//! The `SYLOWLAB_CAP` environment variable overrides the defaults. A bare
//! integer sets the element cap; a comma-separated `key=value` list sets
//! individual caps, e.g. `elements=200000,lattice=2520`.
//!
//! [`Error::CapExceeded`]: crate::Error::CapExceeded

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "SYLOWLAB_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order whose elements may be listed.
    pub elements: u64,
    /// Largest group order for which the full subgroup lattice is built.
    pub lattice: u64,
    /// Largest number of π-elements for the biclique search.
    pub biclique: u64,
}

impl Caps {
    pub const DEFAULT: Caps = Caps {
        elements: 1_000_000,
        lattice: 2000,
        biclique: 64,
    };

    /// Defaults with the `SYLOWLAB_CAP` override applied (read once per
    /// process). A malformed variable is ignored.
    pub fn from_env() -> Caps {
        static CACHED: OnceLock<Caps> = OnceLock::new();
        *CACHED.get_or_init(|| match std::env::var(ENV_VAR) {
            Ok(text) => Caps::DEFAULT.with_overrides(&text).unwrap_or(Caps::DEFAULT),
            Err(_) => Caps::DEFAULT,
        })
    }

    /// Applies an override string in the `SYLOWLAB_CAP` format.
    pub fn with_overrides(mut self, text: &str) -> Result<Caps> {
        let text = text.trim();
        if let Ok(n) = text.parse::<u64>() {
            self.elements = n;
            return Ok(self);
        }
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::syntax(0, format!("expected key=value, got `{item}`")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::syntax(0, format!("bad cap value in `{item}`")))?;
            match key.trim() {
                "elements" => self.elements = value,
                "lattice" => self.lattice = value,
                "biclique" => self.biclique = value,
                other => return Err(Error::syntax(0, format!("unknown cap `{other}`"))),
            }
        }
        Ok(self)
    }

    pub fn with_elements(mut self, cap: u64) -> Caps {
        self.elements = cap;
        self
    }

    pub fn with_lattice(mut self, cap: u64) -> Caps {
        self.lattice = cap;
        self
    }

    pub fn with_biclique(mut self, cap: u64) -> Caps {
        self.biclique = cap;
        self
    }
}

impl Default for Caps {
    fn default() -> Self {
        Caps::from_env()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let c = Caps::DEFAULT.with_overrides("5000").unwrap();
        assert_eq!(c.elements, 5000);
        assert_eq!(c.lattice, 2000);
        let c = Caps::DEFAULT
            .with_overrides("lattice=2520, biclique=32")
            .unwrap();
        assert_eq!(c.lattice, 2520);
        assert_eq!(c.biclique, 32);
        assert_eq!(c.elements, 1_000_000);
        assert!(Caps::DEFAULT.with_overrides("widgets=3").is_err());
        assert!(Caps::DEFAULT.with_overrides("lattice").is_err());
    }
}
