//! Serializable record of a factorization run.
//!
//! Field order is fixed by the struct definitions and all cut lists are
//! ascending, so serializing the same run always yields the same bytes.

use serde::{Deserialize, Serialize};

use crate::factorizer::FactorizationResult;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub word: String,
    pub rounds: Vec<TraceRound>,
    #[serde(rename = "final")]
    pub outcome: TraceFinal,
    pub counters: TraceCounters,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRound {
    pub round: usize,
    pub letter: String,
    pub neighborhood: TraceNeighborhood,
    #[serde(rename = "L")]
    pub left_cuts: Vec<usize>,
    #[serde(rename = "R")]
    pub right_cuts: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceNeighborhood {
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceFinal {
    pub primitive: bool,
    pub expanding: Vec<String>,
    pub images: Vec<TraceImage>,
    #[serde(rename = "L")]
    pub left_cuts: Vec<usize>,
    #[serde(rename = "R")]
    pub right_cuts: Vec<usize>,
    pub factor_cuts: Vec<usize>,
    pub factors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceImage {
    pub letter: String,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCounters {
    pub evaluations: usize,
    pub positions_scanned: usize,
    pub neighborhood_visits: usize,
    pub edges_added: usize,
    pub recompress_cells: usize,
}

impl TraceDocument {
    pub fn new(w: &Word, res: &FactorizationResult) -> Self {
        let rounds = res
            .rounds
            .iter()
            .enumerate()
            .map(|(i, r)| TraceRound {
                round: i + 1,
                letter: w.symbol(r.letter).to_owned(),
                neighborhood: TraceNeighborhood {
                    left: r.neighborhood.left_len,
                    right: r.neighborhood.right_len,
                },
                left_cuts: r.left_cuts.clone(),
                right_cuts: r.right_cuts.clone(),
            })
            .collect();
        let images = res
            .morphism
            .images()
            .map(|(a, img)| TraceImage {
                letter: w.symbol(a).to_owned(),
                image: w.render(img),
            })
            .collect();
        let factors = res
            .factor_cuts
            .windows(2)
            .map(|c| w.render(w.between(c[0], c[1])))
            .collect();
        TraceDocument {
            word: w.to_string(),
            rounds,
            outcome: TraceFinal {
                primitive: res.primitive,
                expanding: res
                    .expanding
                    .iter()
                    .map(|&a| w.symbol(a).to_owned())
                    .collect(),
                images,
                left_cuts: res.left_cuts.clone(),
                right_cuts: res.right_cuts.clone(),
                factor_cuts: res.factor_cuts.clone(),
                factors,
            },
            counters: TraceCounters {
                evaluations: res.counters.evaluations(),
                positions_scanned: res.counters.positions_scanned(),
                neighborhood_visits: res.counters.neighborhood_visits,
                edges_added: res.counters.edges_added,
                recompress_cells: res.counters.recompress_cells,
            },
        }
    }
}
