//! Knot diagrams and the polynomial invariants computed from them.

pub mod alexander;
pub mod braid;
pub mod jones;
pub mod pd;

use std::fmt;

pub use alexander::alexander_fox;
pub use braid::BraidWord;
pub use jones::{jones, kauffman_bracket, DEFAULT_MAX_CROSSINGS};
pub use pd::PDCode;

use crate::error::{Error, Result};

/// A leaf diagram as supplied by the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagram {
    Pd(PDCode),
    Braid(BraidWord),
}

impl Diagram {
    /// Reads either `PD[...]` or `BR[...]`; braids must close to a knot.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim_start();
        if t.starts_with("PD") {
            Ok(Diagram::Pd(t.parse()?))
        } else if t.starts_with("BR") {
            let b: BraidWord = t.parse()?;
            b.require_knot()?;
            Ok(Diagram::Braid(b))
        } else {
            Err(Error::parse("diagram", format!("expected PD[...] or BR[...], got `{text}`")))
        }
    }

    pub fn to_pd(&self) -> Result<PDCode> {
        match self {
            Diagram::Pd(pd) => Ok(pd.clone()),
            Diagram::Braid(b) => b.to_pd(),
        }
    }

    pub fn braid(&self) -> Option<&BraidWord> {
        match self {
            Diagram::Braid(b) => Some(b),
            Diagram::Pd(_) => None,
        }
    }

    pub fn mirror(&self) -> Diagram {
        match self {
            Diagram::Pd(pd) => Diagram::Pd(pd.mirror()),
            Diagram::Braid(b) => Diagram::Braid(b.mirror()),
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagram::Pd(pd) => pd.fmt(f),
            Diagram::Braid(b) => b.fmt(f),
        }
    }
}
