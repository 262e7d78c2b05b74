//! The `parts / from / to` work-splitting convention shared by every
//! batch stage: record `i` of an input belongs to part `i % parts`, and a
//! run processes the parts in `from..to`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid shard {parts}/{from}..{to}: need 0 <= from < to <= parts")]
pub struct InvalidShard {
    pub parts: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shard {
    parts: usize,
    from: usize,
    to: usize,
}

impl Shard {
    pub fn new(parts: usize, from: usize, to: usize) -> Result<Self, InvalidShard> {
        if from < to && to <= parts {
            Ok(Shard { parts, from, to })
        } else {
            Err(InvalidShard { parts, from, to })
        }
    }

    /// The shard covering everything.
    pub fn whole() -> Self {
        Shard { parts: 1, from: 0, to: 1 }
    }

    pub fn parts(&self) -> usize {
        self.parts
    }

    pub fn from(&self) -> usize {
        self.from
    }

    pub fn to(&self) -> usize {
        self.to
    }

    pub fn contains(&self, index: usize) -> bool {
        let part = index % self.parts;
        self.from <= part && part < self.to
    }

    /// Indices in `0..len` owned by this shard, ascending.
    pub fn indices(&self, len: usize) -> impl Iterator<Item = usize> + '_ {
        (0..len).filter(move |&i| self.contains(i))
    }

    /// Suffix used for per-shard output files, e.g. `ext0_4`.
    pub fn suffix(&self) -> String {
        format!("{}_{}", self.from, self.to)
    }
}

impl Default for Shard {
    fn default() -> Self {
        Shard::whole()
    }
}

impl fmt::Display for Shard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}..{}", self.parts, self.from, self.to)
    }
}
