//! JSON schema for sequence generators, used by the CLI config loader.
//!
//! Complex numbers are encoded as two-element arrays [re, im]:
//!
//! ```json
//! {"type": "geometric", "alpha0": [0.7071, 0.0], "ratio": [0.0, -1.0]}
//! {"type": "periodic", "cycle": [[0.3, 0.0], [0.6, 0.0]]}
//! {"type": "explicit", "values": [[0.1, 0.0], [0.2, 0.0]], "offset": 0}
//! ```

use crate::error::Result;
use crate::linalg::C64;
use crate::verblunsky::VerblunskySequence;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GeneratorSpec {
    Explicit { values: Vec<[f64; 2]>, offset: i64 },
    Periodic { cycle: Vec<[f64; 2]> },
    Geometric { alpha0: [f64; 2], ratio: [f64; 2] },
}

fn c(p: [f64; 2]) -> C64 {
    C64::new(p[0], p[1])
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<VerblunskySequence> {
        match self {
            GeneratorSpec::Explicit { values, offset } => {
                VerblunskySequence::explicit(values.iter().map(|&v| c(v)).collect(), *offset)
            }
            GeneratorSpec::Periodic { cycle } => {
                VerblunskySequence::periodic(cycle.iter().map(|&v| c(v)).collect())
            }
            GeneratorSpec::Geometric { alpha0, ratio } => {
                VerblunskySequence::geometric(c(*alpha0), c(*ratio))
            }
        }
    }
}
