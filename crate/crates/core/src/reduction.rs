//! Colour merging, irreducibility and the reduction to an irreducible colouring.
//!
//! [`reduce_to_irreducible`] scans colours in their natural order. For each
//! colour `α` still in use it walks the larger colours `β` still in use and
//! merges `β` into `α` whenever the merged colouring stays suitable. Merges are
//! evaluated against the current, partially merged colouring.

use serde::{Deserialize, Serialize};

use crate::colouring::{
    suitability_obstruction, used_colours, ColourId, Colouring, Mode, Obstruction,
};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Replace colour `from` by colour `into` (`into < from`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeStep {
    pub from: ColourId,
    pub into: ColourId,
}

impl MergeStep {
    pub fn new(from: ColourId, into: ColourId) -> Result<Self> {
        if into >= from {
            return Err(Error::Parse(format!(
                "merge step {from} -> {into} does not merge downward"
            )));
        }
        Ok(MergeStep { from, into })
    }

    pub fn apply<C: Colouring>(&self, c: &C) -> C {
        merge(c, self.into, self.from)
    }
}

/// Every element coloured `b` is recoloured `a`; `a == b` is the trivial reduction.
pub fn merge<C: Colouring>(c: &C, a: ColourId, b: ColourId) -> C {
    c.map_colours(|x| if x == b { a } else { x })
}

/// The merges performed by [`reduce_to_irreducible`] together with their
/// endpoints. Serialises as `{mode, initial, steps, final, irreducible}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionTrace<C> {
    pub mode: Mode,
    pub initial: C,
    pub steps: Vec<MergeStep>,
    #[serde(rename = "final")]
    pub final_colouring: C,
    pub irreducible: bool,
    /// Extra scan passes the fixpoint guard had to run. Expected to be zero.
    #[serde(skip)]
    pub guard_triggers: usize,
}

impl<C: Colouring> ReductionTrace<C> {
    /// Colourings after each prefix of the steps, starting with `initial`.
    pub fn replay(&self) -> Vec<C> {
        let mut states = vec![self.initial.clone()];
        for step in &self.steps {
            let next = step.apply(states.last().expect("non-empty"));
            states.push(next);
        }
        states
    }

    /// Replays the steps and checks that every intermediate colouring is
    /// suitable and that the replay ends at `final_colouring`.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        let states = self.replay();
        for (i, s) in states.iter().enumerate() {
            if let Some(o) = suitability_obstruction(g, s, self.mode)? {
                return Err(Error::VerificationFailed(format!(
                    "colouring after {i} steps is not suitable: {o:?}"
                )));
            }
        }
        if states.last() != Some(&self.final_colouring) {
            return Err(Error::VerificationFailed(
                "replaying the steps does not reach the final colouring".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of trying one merge during an irreducibility check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeCheck {
    pub into: ColourId,
    pub from: ColourId,
    /// Why the merged colouring fails the mode; `None` when it is still suitable.
    pub witness: Option<Obstruction>,
}

fn require_suitable<C: Colouring>(g: &Graph, c: &C, mode: Mode) -> Result<()> {
    if let Some(o) = suitability_obstruction(g, c, mode)? {
        return Err(Error::NotSuitableInput(format!("{mode}: {o:?}")));
    }
    Ok(())
}

/// Tries every merge of two distinct used colours `a < b` (merging `b` into
/// `a`; the reverse merge gives the same partition) and records the outcome.
pub fn merge_table<C: Colouring>(g: &Graph, c: &C, mode: Mode) -> Result<Vec<MergeCheck>> {
    require_suitable(g, c, mode)?;
    let used: Vec<ColourId> = used_colours(c).into_iter().collect();
    let mut table = Vec::new();
    for (i, &a) in used.iter().enumerate() {
        for &b in &used[i + 1..] {
            let witness = suitability_obstruction(g, &merge(c, a, b), mode)?;
            table.push(MergeCheck {
                into: a,
                from: b,
                witness,
            });
        }
    }
    Ok(table)
}

/// Whether no merge of two distinct used colours keeps `c` suitable.
pub fn is_irreducible<C: Colouring>(g: &Graph, c: &C, mode: Mode) -> Result<bool> {
    require_suitable(g, c, mode)?;
    let used: Vec<ColourId> = used_colours(c).into_iter().collect();
    for (i, &a) in used.iter().enumerate() {
        for &b in &used[i + 1..] {
            if suitability_obstruction(g, &merge(c, a, b), mode)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One ascending pass over `(α, β)`; returns the merges it made.
fn scan_pass<C: Colouring>(g: &Graph, current: &mut C, mode: Mode) -> Result<Vec<MergeStep>> {
    let mut steps = Vec::new();
    let mut alpha_pos = 0;
    loop {
        let used: Vec<ColourId> = used_colours(current).into_iter().collect();
        let Some(&alpha) = used.get(alpha_pos) else {
            break;
        };
        for &beta in &used[alpha_pos + 1..] {
            // beta is still in use: only merges into alpha happen in this inner loop
            let candidate = merge(current, alpha, beta);
            if suitability_obstruction(g, &candidate, mode)?.is_none() {
                *current = candidate;
                steps.push(MergeStep {
                    from: beta,
                    into: alpha,
                });
            }
        }
        alpha_pos += 1;
    }
    Ok(steps)
}

/// Reduces a suitable colouring to an irreducible one by merging colour
/// classes downward.
pub fn reduce_to_irreducible<C: Colouring>(
    g: &Graph,
    c: &C,
    mode: Mode,
) -> Result<ReductionTrace<C>> {
    require_suitable(g, c, mode)?;
    let mut current = c.clone();
    let mut steps = scan_pass(g, &mut current, mode)?;
    let mut guard_triggers = 0;
    while !is_irreducible(g, &current, mode)? {
        guard_triggers += 1;
        let more = scan_pass(g, &mut current, mode)?;
        if more.is_empty() {
            return Err(Error::VerificationFailed(
                "scan made no merge but the colouring is still reducible".into(),
            ));
        }
        steps.extend(more);
    }
    Ok(ReductionTrace {
        mode,
        initial: c.clone(),
        steps,
        final_colouring: current,
        irreducible: true,
        guard_triggers,
    })
}
