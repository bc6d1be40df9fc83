use serde::{Deserialize, Serialize};

/// Operator classes exposed across the domain barrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeuristicKind {
    Mutation,
    RuinRecreate,
    LocalSearch,
    Crossover,
}

impl HeuristicKind {
    pub const ALL: [HeuristicKind; 4] = [
        HeuristicKind::Mutation,
        HeuristicKind::RuinRecreate,
        HeuristicKind::LocalSearch,
        HeuristicKind::Crossover,
    ];

    /// Number of source solutions an operator of this kind consumes.
    pub const fn arity(self) -> u8 {
        match self {
            HeuristicKind::Crossover => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeuristicDescriptor {
    pub id: usize,
    pub kind: HeuristicKind,
    pub name: &'static str,
}

impl HeuristicDescriptor {
    pub const fn new(id: usize, kind: HeuristicKind, name: &'static str) -> Self {
        Self { id, kind, name }
    }

    pub const fn arity(&self) -> u8 {
        self.kind.arity()
    }
}
