//! From presentations to explicit finite monoids.
//!
//! Two independent routes: shortlex Knuth–Bendix completion followed by a
//! breadth-first walk over normal forms, and a brute-force congruence
//! closure over all short words. Both number elements by the shortlex order
//! of their least representatives, so their tables can be compared
//! entry for entry.

pub mod closure;
pub mod rewriting;
pub mod table;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentations::Presentation;

pub use closure::brute_force_closure;
pub use rewriting::{knuth_bendix, Incomplete, RewriteSystem, Rule};
pub use table::{is_j_trivial, ElementId, MonoidTable, TableFile};

/// Bounds on completion, closure and search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_rules: usize,
    pub max_word_length: usize,
    pub max_elements: usize,
    pub max_steps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rules: 2000,
            max_word_length: 16,
            max_elements: 100_000,
            max_steps: 10_000_000,
        }
    }
}

impl Limits {
    pub fn validate(&self) -> Result<()> {
        if self.max_rules == 0 || self.max_word_length == 0 || self.max_elements == 0 || self.max_steps == 0 {
            return Err(Error::input("all limits must be positive"));
        }
        Ok(())
    }

    /// Applies `key=value` overrides separated by commas, e.g.
    /// `max_rules=500,max_word_length=12`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::input(format!("limit override {item:?} is not key=value")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("limit {key} needs a positive integer")))?;
            match key.trim() {
                "max_rules" => self.max_rules = value as usize,
                "max_word_length" => self.max_word_length = value as usize,
                "max_elements" => self.max_elements = value as usize,
                "max_steps" => self.max_steps = value,
                other => return Err(Error::input(format!("unknown limit {other:?}"))),
            }
        }
        self.validate()?;
        Ok(self)
    }
}

/// Which construction produced a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineKind {
    Completion,
    Closure,
}

/// Which construction(s) to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineChoice {
    /// Completion, falling back to closure when completion is incomplete.
    Auto,
    Completion,
    Closure,
    /// Run both and require identical tables.
    Both,
}

impl FromStr for EngineChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(EngineChoice::Auto),
            "kb" | "completion" => Ok(EngineChoice::Completion),
            "closure" => Ok(EngineChoice::Closure),
            "both" => Ok(EngineChoice::Both),
            other => Err(Error::input(format!("unknown engine {other:?}"))),
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineKind::Completion => "completion",
            EngineKind::Closure => "closure",
        })
    }
}

/// An enumerated monoid and how it was obtained.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub table: MonoidTable,
    pub engine: EngineKind,
    /// The confluent system, when completion succeeded.
    pub system: Option<RewriteSystem>,
}

/// Enumerates the monoid of `presentation`, completion first and the closure
/// oracle as fallback.
pub fn enumerate(presentation: &Presentation, limits: &Limits) -> Result<Enumeration> {
    enumerate_with(presentation, limits, EngineChoice::Auto)
}

pub fn enumerate_with(presentation: &Presentation, limits: &Limits, choice: EngineChoice) -> Result<Enumeration> {
    limits.validate()?;
    match choice {
        EngineChoice::Auto => match knuth_bendix(presentation, limits) {
            Ok(system) => from_system(system, limits),
            Err(_) => Ok(Enumeration {
                table: brute_force_closure(presentation, limits)?,
                engine: EngineKind::Closure,
                system: None,
            }),
        },
        EngineChoice::Completion => {
            let system = knuth_bendix(presentation, limits).map_err(|inc| {
                Error::resource(
                    inc.limit,
                    inc.bound,
                    format!("completion stopped with {} rules", inc.partial.rules().len()),
                )
            })?;
            from_system(system, limits)
        }
        EngineChoice::Closure => Ok(Enumeration {
            table: brute_force_closure(presentation, limits)?,
            engine: EngineKind::Closure,
            system: None,
        }),
        EngineChoice::Both => {
            let completed = enumerate_with(presentation, limits, EngineChoice::Completion)?;
            let closed = brute_force_closure(presentation, limits)?;
            if completed.table != closed {
                return Err(Error::EngineMismatch(format!(
                    "completion gives {} elements, closure gives {}",
                    completed.table.size(),
                    closed.size()
                )));
            }
            Ok(completed)
        }
    }
}

/// Breadth-first closure over normal forms of a confluent system.
fn from_system(system: RewriteSystem, limits: &Limits) -> Result<Enumeration> {
    let generators = system.source().generators();
    let (table, _) = MonoidTable::close(
        crate::wordcore::Word::empty(),
        generators,
        |w, a| {
            let mut next = w.clone();
            next.push(a);
            Ok(system.normal_form(&next))
        },
        limits.max_elements,
    )?;
    Ok(Enumeration {
        table,
        engine: EngineKind::Completion,
        system: Some(system),
    })
}
