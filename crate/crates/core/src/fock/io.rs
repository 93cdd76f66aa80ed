//! JSON state files.
//!
//! Pure state:
//! `{"cutoff_a": 1, "cutoff_b": 1, "amplitudes": [{"na": 1, "nb": 0, "re": 0.7, "im": 0.0}, ...]}`
//!
//! Mixture (read-only):
//! `{"mixture": [{"weight": 0.5, "state": { ...pure state... }}, ...]}`

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{mix, DensityMatrix, FockIndex, TwoModeState};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmplitudeEntry {
    pub na: usize,
    pub nb: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub cutoff_a: usize,
    pub cutoff_b: usize,
    pub amplitudes: Vec<AmplitudeEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureComponent {
    pub weight: f64,
    pub state: StateFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureFile {
    pub mixture: Vec<MixtureComponent>,
}

impl From<&TwoModeState> for StateFile {
    fn from(s: &TwoModeState) -> Self {
        // iter_nonzero walks the basis in (na, nb) order
        let amplitudes = s
            .iter_nonzero()
            .map(|(i, z)| AmplitudeEntry {
                na: i.na,
                nb: i.nb,
                re: z.re,
                im: z.im,
            })
            .collect();
        Self {
            cutoff_a: s.cutoff_a(),
            cutoff_b: s.cutoff_b(),
            amplitudes,
        }
    }
}

impl TryFrom<&StateFile> for TwoModeState {
    type Error = Error;

    fn try_from(f: &StateFile) -> Result<Self> {
        TwoModeState::make_pure_state(
            f.amplitudes
                .iter()
                .map(|e| (FockIndex::new(e.na, e.nb), Complex64::new(e.re, e.im))),
            f.cutoff_a,
            f.cutoff_b,
        )
    }
}

pub fn state_to_json(state: &TwoModeState) -> String {
    serde_json::to_string_pretty(&StateFile::from(state)).expect("state file serializes")
}

pub fn state_from_json(text: &str) -> Result<TwoModeState> {
    let f: StateFile = serde_json::from_str(text)?;
    TwoModeState::try_from(&f)
}

/// Contents of a state file: a pure state or a weighted list of them.
#[derive(Debug, Clone)]
pub enum StateInput {
    Pure(TwoModeState),
    Mixture {
        weights: Vec<f64>,
        states: Vec<TwoModeState>,
    },
}

impl StateInput {
    pub fn density(&self) -> Result<DensityMatrix> {
        match self {
            StateInput::Pure(s) => Ok(DensityMatrix::from_pure(s)),
            StateInput::Mixture { weights, states } => mix(states, weights),
        }
    }
}

pub fn read_state_input(text: &str) -> Result<StateInput> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("mixture").is_some() {
        let f: MixtureFile = serde_json::from_value(value)?;
        if f.mixture.is_empty() {
            return Err(Error::Format("empty mixture".into()));
        }
        let states = f
            .mixture
            .iter()
            .map(|c| TwoModeState::try_from(&c.state))
            .collect::<Result<Vec<_>>>()?;
        let weights: Vec<f64> = f.mixture.iter().map(|c| c.weight).collect();
        // validate now so a bad file fails at load time
        mix(&states, &weights)?;
        Ok(StateInput::Mixture { weights, states })
    } else {
        let f: StateFile = serde_json::from_value(value)?;
        Ok(StateInput::Pure(TwoModeState::try_from(&f)?))
    }
}

pub fn mixture_to_json(weights: &[f64], states: &[TwoModeState]) -> String {
    let f = MixtureFile {
        mixture: weights
            .iter()
            .zip(states)
            .map(|(&weight, s)| MixtureComponent {
                weight,
                state: StateFile::from(s),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&f).expect("mixture serializes")
}
