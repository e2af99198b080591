//! State file: a JSON object with four `[re, im]` amplitude pairs in the
//! order `(+½,+½), (+½,−½), (−½,+½), (−½,−½)` and an optional label.
//!
//! ```json
//! { "label": "bell", "amplitudes": [[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]] }
//! ```

use serde::{Deserialize, Serialize};
use serde_json::Value;
use spin_entropy::{PureTwoQubitState, C64};

/// Files whose norm is further than this from 1 are rejected unless
/// renormalization is requested.
pub const FILE_NORM_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub amplitudes: [[f64; 2]; 4],
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub field: String,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "field `{}`: {}", self.field, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Loaded {
    pub state: PureTwoQubitState,
    /// Norm of the amplitudes as written in the file.
    pub file_norm: f64,
    /// Set when the norm was outside tolerance and the state was rescaled.
    pub renormalized: bool,
}

fn err(field: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError {
        field: field.into(),
        message: message.into(),
    }
}

impl StateFile {
    pub fn from_state(state: &PureTwoQubitState, label: Option<String>) -> Self {
        Self {
            label,
            amplitudes: state.amplitudes().map(|a| [a.re, a.im]),
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let root: Value = serde_json::from_str(text).map_err(|e| err("<document>", e.to_string()))?;
        let obj = root
            .as_object()
            .ok_or_else(|| err("<document>", "expected a JSON object"))?;

        let label = match obj.get("label") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(err("label", "expected a string")),
        };

        let list = obj
            .get("amplitudes")
            .ok_or_else(|| err("amplitudes", "missing"))?
            .as_array()
            .ok_or_else(|| err("amplitudes", "expected an array of 4 [re, im] pairs"))?;
        if list.len() != 4 {
            return Err(err(
                "amplitudes",
                format!("expected 4 pairs, found {}", list.len()),
            ));
        }
        let mut amplitudes = [[0.0; 2]; 4];
        for (k, item) in list.iter().enumerate() {
            let field = format!("amplitudes[{k}]");
            let pair = item
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| err(&field, "expected a [re, im] pair"))?;
            for (j, v) in pair.iter().enumerate() {
                let x = v
                    .as_f64()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| err(format!("{field}[{j}]"), "expected a finite number"))?;
                amplitudes[k][j] = x;
            }
        }
        Ok(Self { label, amplitudes })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|[re, im]| re * re + im * im)
            .sum::<f64>()
            .sqrt()
    }

    /// Converts to a state. A norm within [`FILE_NORM_TOL`] of 1 is silently
    /// rescaled; a larger deviation is an error unless `renormalize` is set.
    /// Returns the offending norm on failure.
    pub fn load(&self, renormalize: bool) -> Result<Loaded, f64> {
        let n = self.norm();
        let off = (n - 1.0).abs() > FILE_NORM_TOL;
        if (off && !renormalize) || n == 0.0 {
            return Err(n);
        }
        let amps = self.amplitudes.map(|[re, im]| C64::new(re, im));
        let state = PureTwoQubitState::new_renormalized(amps).map_err(|_| n)?;
        Ok(Loaded {
            state,
            file_norm: n,
            renormalized: off,
        })
    }
}
