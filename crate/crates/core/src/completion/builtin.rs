use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use super::lift::{lift_channel, lift_starhom};
use super::targets::{CptpCategory, EmbedFunctor, TerminalCategory, TerminalFunctor};
use crate::algebra::{Channel, Picture};
use crate::error::{Error, Result};

/// Targets selectable by name from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinTarget {
    /// Channels, with the embedding `E` and measurement `φ`.
    Cptp,
    /// Channels, with `E` followed by entrywise conjugation.
    CptpConjugate,
    /// The one-morphism category.
    TerminalCategory,
}

impl BuiltinTarget {
    pub const ALL: [BuiltinTarget; 3] = [
        BuiltinTarget::Cptp,
        BuiltinTarget::CptpConjugate,
        BuiltinTarget::TerminalCategory,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinTarget::Cptp => "cptp",
            BuiltinTarget::CptpConjugate => "cptp_conjugate",
            BuiltinTarget::TerminalCategory => "terminal_category",
        }
    }

    /// Lifts a Schrödinger channel (or a Heisenberg *-homomorphism) and
    /// encodes the image as JSON.
    pub fn lift_json(self, input: &Channel) -> Result<Value> {
        let lifted = match self {
            BuiltinTarget::Cptp => Some(self.lift_cptp(input, false)?),
            BuiltinTarget::CptpConjugate => Some(self.lift_cptp(input, true)?),
            BuiltinTarget::TerminalCategory => {
                match input.picture() {
                    Picture::Schrodinger => {
                        lift_channel(&TerminalCategory, &TerminalFunctor, input)?
                    }
                    Picture::Heisenberg => {
                        lift_starhom(&TerminalCategory, &TerminalFunctor, input)?
                    }
                }
                None
            }
        };
        Ok(match lifted {
            Some(ch) => serde_json::to_value(&ch).map_err(|e| Error::InvalidData(e.to_string()))?,
            None => json!({ "target": self.name(), "morphism": "unique" }),
        })
    }

    fn lift_cptp(self, input: &Channel, conjugate: bool) -> Result<Channel> {
        let functor = EmbedFunctor { conjugate };
        match input.picture() {
            Picture::Schrodinger => lift_channel(&CptpCategory, &functor, input),
            Picture::Heisenberg => lift_starhom(&CptpCategory, &functor, input),
        }
    }
}

impl fmt::Display for BuiltinTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BuiltinTarget::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::InvalidData(format!("unknown target `{s}`")))
    }
}
