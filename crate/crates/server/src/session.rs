use clusterkit::{IceQuiver, Seed, Var};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::ApiError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HistoryEntry {
    pub var: Var,
    /// Digest of the seed reached, as an unordered structure.
    pub digest: String,
}

/// A root seed and the mutations applied to it so far.
#[derive(Debug, Clone)]
pub struct Session {
    root: Seed,
    /// `states[k]` is the seed after the first `k` mutations.
    states: Vec<Seed>,
    history: Vec<HistoryEntry>,
}

/// SHA-256 of the canonical form; ignores the names of exchangeable slots.
pub fn digest(seed: &Seed) -> String {
    let canonical = seed.canonical();
    let s = canonical.seed();
    let values: Vec<String> = s.exchangeable_values().iter().map(|p| p.to_fraction_string()).collect();
    let text = serde_json::json!({
        "values": values,
        "frozen": s.fx(),
        "matrix": s.matrix().entries(),
    })
    .to_string();
    hex::encode(Sha256::digest(text.as_bytes()))
}

impl Session {
    pub fn new(root: Seed) -> Result<Session, ApiError> {
        root.validate()?;
        Ok(Session {
            states: vec![root.clone()],
            root,
            history: Vec::new(),
        })
    }

    pub fn root(&self) -> &Seed {
        &self.root
    }

    pub fn current(&self) -> &Seed {
        self.states.last().expect("root state")
    }

    pub fn history(&self) -> &[HistoryEntry] {
        &self.history
    }

    pub fn sequence(&self) -> Vec<Var> {
        self.history.iter().map(|h| h.var.clone()).collect()
    }

    pub fn mutate(&mut self, var: &Var) -> Result<(), ApiError> {
        let next = self.current().mutate(var)?;
        self.history.push(HistoryEntry {
            var: var.clone(),
            digest: digest(&next),
        });
        self.states.push(next);
        Ok(())
    }

    pub fn undo(&mut self) -> Result<(), ApiError> {
        if self.history.pop().is_none() {
            return Err(ApiError::new(
                axum::http::StatusCode::UNPROCESSABLE_ENTITY,
                "empty_history",
                "no mutation to undo",
            ));
        }
        self.states.pop();
        Ok(())
    }

    pub fn view(&self, id: &str) -> SessionView {
        let seed = self.current().clone();
        let values = seed
            .slots()
            .map(|(v, p)| VariableValue {
                var: v.clone(),
                value: p.to_fraction_string(),
                exchangeable: seed.is_exchangeable(v),
            })
            .collect();
        SessionView {
            id: id.to_string(),
            quiver: IceQuiver::of_seed(&seed).expect("sessions hold validated seeds"),
            digest: digest(&seed),
            values,
            history: self.history.clone(),
            seed,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VariableValue {
    pub var: Var,
    pub value: String,
    pub exchangeable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SessionView {
    pub id: String,
    pub seed: Seed,
    pub quiver: IceQuiver,
    pub values: Vec<VariableValue>,
    pub history: Vec<HistoryEntry>,
    pub digest: String,
}
