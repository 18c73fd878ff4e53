//! Randomized graph constructions: seeded G(n,p), the p-scramble, and
//! recipe pipelines composing them with lexicographic powers.
//!
//! Every edge decision is a pure function of (seed, step index, pair
//! index), so a recipe is replayable bit-for-bit on any platform and the
//! pair loop could be split across workers without changing the output.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{pair_index, sub_seed, uniform01};
use crate::view::{LexPowerView, DEFAULT_VERTEX_CAP};

/// Seed for a deterministic construction. Identical seed + identical
/// parameters gives a bit-identical graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

/// G(n, p): every unordered pair is an edge independently with
/// probability `p`, decided by the keyed counter generator.
pub fn gnp(n: usize, p: f64, seed: Seed) -> Graph {
    debug_assert!((0.0..=1.0).contains(&p));
    Graph::from_fn(n, |u, v| uniform01(seed.0, pair_index(u, v)) < p)
}

/// The p-scramble of `g`: every pair's adjacency flipped independently
/// with probability `p` (edges removed, non-edges added).
pub fn scramble(g: &Graph, p: f64, seed: Seed) -> Graph {
    debug_assert!((0.0..=1.0).contains(&p));
    let mut out = g.clone();
    let n = g.vertex_count();
    for v in 1..n {
        for u in 0..v {
            if uniform01(seed.0, pair_index(u, v)) < p {
                out.flip_edge(u, v);
            }
        }
    }
    out
}

/// The scramble probability 8 log2(n) / r used when derandomizing an
/// n-vertex graph toward clique/independent sets of size r. Requires
/// r >= 16 log2(n), which also keeps the value at most 1/2.
pub fn scramble_p(n: usize, r: f64) -> Result<f64> {
    let log_n = (n as f64).log2();
    if r < 16.0 * log_n {
        return Err(Error::HypothesisViolated(format!(
            "scramble probability needs r >= 16 log2(n): r = {r}, 16 log2({n}) = {}",
            16.0 * log_n
        )));
    }
    Ok(8.0 * log_n / r)
}

/// One step of a construction recipe.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    /// Seeded random graph; only valid as the first step.
    Gnp { n: usize, p: f64 },
    /// Flip every pair with probability p; needs an explicit graph.
    Scramble { p: f64 },
    /// Switch to (or deepen) an implicit lexicographic power.
    LexPower { ell: u32 },
    /// Keep the first `n` vertices in row-major order, materializing
    /// them if the pipeline is in view mode.
    TakeSubgraph { n: u64 },
}

/// An executable construction pipeline.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Recipe {
    pub steps: Vec<Step>,
    pub seed: Seed,
}

impl Recipe {
    pub fn from_json(text: &str) -> Result<Recipe> {
        serde_json::from_str(text).map_err(|e| Error::MalformedRecipe(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("recipe serializes")
    }
}

/// The result of a pipeline: an explicit graph, or an implicit power.
#[derive(Clone, Debug)]
pub enum Built {
    Graph(Graph),
    View(LexPowerView),
}

impl Built {
    pub fn logical_vertex_count(&self) -> Option<u128> {
        match self {
            Built::Graph(g) => Some(g.vertex_count() as u128),
            Built::View(v) => v.logical_vertex_count(),
        }
    }
}

/// Per-step provenance: which sub-seed drove it and what it produced.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepRecord {
    pub index: usize,
    pub step: Step,
    pub sub_seed: u64,
    pub state: String,
    pub logical_vertices: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<usize>,
}

/// The full provenance of an executed recipe: the recipe verbatim plus
/// one record per step.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Provenance {
    pub recipe: Recipe,
    pub steps: Vec<StepRecord>,
}

/// Execution limits for a pipeline.
#[derive(Clone, Copy, Debug)]
pub struct ExecOptions {
    /// Cap on any explicit materialization.
    pub vertex_cap: usize,
}

impl Default for ExecOptions {
    fn default() -> Self {
        ExecOptions {
            vertex_cap: DEFAULT_VERTEX_CAP,
        }
    }
}

/// Runs a recipe start to finish. Step `i` draws randomness from
/// `seed xor mix(i)`, so inserting or reordering stages never silently
/// reuses another stage's bits.
pub fn execute(recipe: &Recipe, opts: &ExecOptions) -> Result<(Built, Provenance)> {
    if recipe.steps.is_empty() {
        return Err(Error::MalformedRecipe("recipe has no steps".into()));
    }
    let mut state: Option<Built> = None;
    let mut records = Vec::with_capacity(recipe.steps.len());

    for (i, step) in recipe.steps.iter().enumerate() {
        let step_seed = sub_seed(recipe.seed.0, i as u64);
        let next = match (step, state.take()) {
            (Step::Gnp { n, p }, None) => {
                if !(0.0..=1.0).contains(p) {
                    return Err(Error::MalformedRecipe(format!(
                        "step {i}: gnp probability {p} outside [0, 1]"
                    )));
                }
                if *n > opts.vertex_cap {
                    return Err(Error::CapExceeded {
                        needed: *n as u128,
                        cap: opts.vertex_cap as u128,
                    });
                }
                Built::Graph(gnp(*n, *p, Seed(step_seed)))
            }
            (Step::Gnp { .. }, Some(_)) => {
                return Err(Error::MalformedRecipe(format!(
                    "step {i}: gnp is only valid as the first step"
                )));
            }
            (_, None) => {
                return Err(Error::MalformedRecipe(format!(
                    "step {i}: recipe must begin with gnp"
                )));
            }
            (Step::Scramble { p }, Some(Built::Graph(g))) => {
                if !(0.0..=1.0).contains(p) {
                    return Err(Error::MalformedRecipe(format!(
                        "step {i}: scramble probability {p} outside [0, 1]"
                    )));
                }
                Built::Graph(scramble(&g, *p, Seed(step_seed)))
            }
            (Step::Scramble { .. }, Some(Built::View(_))) => {
                return Err(Error::MalformedRecipe(format!(
                    "step {i}: scramble needs an explicit graph; \
                     take a subgraph of the power first"
                )));
            }
            (Step::LexPower { ell }, Some(Built::Graph(g))) => {
                Built::View(LexPowerView::new(g, *ell, opts.vertex_cap)?)
            }
            (Step::LexPower { ell }, Some(Built::View(v))) => {
                // (G^a)^b = G^(ab): flattening tuples preserves both the
                // row-major order and the first-difference rule.
                let exp = v.exponent().checked_mul(*ell).ok_or_else(|| {
                    Error::MalformedRecipe(format!("step {i}: exponent overflow"))
                })?;
                Built::View(LexPowerView::new(v.base().clone(), exp, opts.vertex_cap)?)
            }
            (Step::TakeSubgraph { n }, Some(Built::Graph(g))) => {
                if *n as usize > g.vertex_count() {
                    return Err(Error::MalformedRecipe(format!(
                        "step {i}: take_subgraph({n}) from {} vertices",
                        g.vertex_count()
                    )));
                }
                let keep: Vec<usize> = (0..*n as usize).collect();
                Built::Graph(g.induced(&keep)?.0)
            }
            (Step::TakeSubgraph { n }, Some(Built::View(v))) => {
                Built::Graph(v.materialize_prefix(*n as u128)?)
            }
        };
        records.push(StepRecord {
            index: i,
            step: step.clone(),
            sub_seed: step_seed,
            state: match &next {
                Built::Graph(_) => "explicit".into(),
                Built::View(_) => "view".into(),
            },
            logical_vertices: next.logical_vertex_count(),
            edges: match &next {
                Built::Graph(g) => Some(g.edge_count()),
                Built::View(_) => None,
            },
        });
        state = Some(next);
    }

    let built = state.expect("non-empty recipe leaves a state");
    let provenance = Provenance {
        recipe: recipe.clone(),
        steps: records,
    };
    Ok((built, provenance))
}
