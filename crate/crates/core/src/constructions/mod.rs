//! Ideal families with closed-form depth predictions.

mod depthfn;
mod graph;
mod poset;
mod veronese;

use std::collections::BTreeMap;

use serde::Serialize;

pub use depthfn::{
    ideal_for_decreasing_f, ideal_for_increasing_f, nonmonotone_example, DepthFunctionSpec, Direction,
    NONMONOTONE_PROFILE,
};
pub use graph::{edge_ideal, is_chordal, parse_graph, write_graph, ChordalCheck, Graph};
pub use poset::{
    delta, hp_ideal, hp_power_order, parse_poset, posets_up_to_iso, predicted_depth_hp, write_poset, Delta,
    DeltaWitness, Poset, DEFAULT_DELTA_CAP, DEFAULT_POSET_IDEAL_CAP,
};
pub use veronese::{
    predicted_depth_veronese, predicted_squarefree_veronese_profile, squarefree_veronese, veronese_type,
    VeronesePrediction, VeroneseSpec,
};

/// Sidecar describing a constructed ideal and its predicted depth profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub family: String,
    pub parameters: BTreeMap<String, String>,
    /// Predicted `depth S/I^k` for `k = 1..`; empty when no closed form is known.
    pub predicted_profile: Vec<usize>,
    /// The formula the prediction comes from.
    pub formula: String,
    /// Set when the prediction lies outside the formula's stated range.
    pub caveat: Option<String>,
}

impl Prediction {
    pub fn new(family: &str, formula: &str) -> Self {
        Prediction {
            family: family.into(),
            parameters: BTreeMap::new(),
            predicted_profile: Vec::new(),
            formula: formula.into(),
            caveat: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.into(), value.to_string());
        self
    }

    pub fn profile(mut self, profile: Vec<usize>) -> Self {
        self.predicted_profile = profile;
        self
    }
}
