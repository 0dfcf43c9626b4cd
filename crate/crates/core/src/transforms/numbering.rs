//! Integer sheet numberings from difference constraints.
//!
//! Every double relation forces its two under sheets to carry the same
//! number; a layer-2 curve edge raises the number by one and a layer-1
//! curve edge lowers it by one. The system either has a solution — fixed
//! uniquely by giving 0 to the lexicographically least sheet of each
//! connected component of the constraint graph — or contains a closed walk
//! whose increments do not cancel, which is returned as a checkable
//! witness.

use std::collections::{BTreeMap, VecDeque};

use crate::presentation::Presentation;

use super::TransformError;

/// A solution of the difference-constraint system.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Numbering {
    /// Sheet id → assigned integer.
    pub values: BTreeMap<String, i64>,
}

impl Numbering {
    pub fn get(&self, sheet: &str) -> Option<i64> {
        self.values.get(sheet).copied()
    }
}

/// One edge traversal inside a witness walk: moving from `from` to `to`
/// adds `delta` to the running number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkStep {
    pub from: String,
    pub to: String,
    pub delta: i64,
}

/// A closed walk through the constraint graph whose increments sum to a
/// nonzero value — a proof that no numbering exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessWalk {
    pub steps: Vec<WalkStep>,
}

impl WitnessWalk {
    pub fn sum(&self) -> i64 {
        self.steps.iter().map(|s| s.delta).sum()
    }
}

/// Result of numbering an overlay: either a numbering or a witness that
/// none exists. Inconsistency is a result, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumberingOutcome {
    Consistent(Numbering),
    Inconsistent(WitnessWalk),
}

impl NumberingOutcome {
    pub fn is_consistent(&self) -> bool {
        matches!(self, NumberingOutcome::Consistent(_))
    }

    pub fn numbering(&self) -> Option<&Numbering> {
        match self {
            NumberingOutcome::Consistent(n) => Some(n),
            NumberingOutcome::Inconsistent(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&WitnessWalk> {
        match self {
            NumberingOutcome::Consistent(_) => None,
            NumberingOutcome::Inconsistent(w) => Some(w),
        }
    }
}

fn curve_delta(layer: u8) -> i64 {
    if layer == 2 {
        1
    } else {
        -1
    }
}

/// Solves the difference constraints of `overlay` by breadth-first
/// traversal with potentials. Per connected component the lexicographically
/// least sheet receives 0.
pub fn alexander_numbering(overlay: &Presentation) -> Result<NumberingOutcome, TransformError> {
    let violations = overlay.validate();
    if !violations.is_empty() {
        return Err(TransformError::InvalidPresentation(violations));
    }
    let n = overlay.sheets.len();
    let index = overlay.index_map();
    let mut adjacency: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for d in &overlay.doubles {
        let (i, k) = (index[d.under_from.as_str()], index[d.under_to.as_str()]);
        adjacency[i].push((k, 0));
        adjacency[k].push((i, 0));
    }
    for c in &overlay.curves {
        let (f, t) = (index[c.from.as_str()], index[c.to.as_str()]);
        let delta = curve_delta(c.layer);
        adjacency[f].push((t, delta));
        adjacency[t].push((f, -delta));
    }

    let mut values: Vec<Option<i64>> = vec![None; n];
    let mut parent: Vec<Option<(usize, i64)>> = vec![None; n];
    // Sheets visited in id order, so each component is entered through its
    // least id.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| overlay.sheets[a].cmp(&overlay.sheets[b]));
    for base in order {
        if values[base].is_some() {
            continue;
        }
        values[base] = Some(0);
        let mut queue = VecDeque::from([base]);
        while let Some(u) = queue.pop_front() {
            let at = values[u].expect("queued sheets are numbered");
            for &(v, delta) in &adjacency[u] {
                let expected = at + delta;
                match values[v] {
                    None => {
                        values[v] = Some(expected);
                        parent[v] = Some((u, delta));
                        queue.push_back(v);
                    }
                    Some(existing) if existing == expected => {}
                    Some(_) => {
                        return Ok(NumberingOutcome::Inconsistent(conflict_walk(
                            overlay, &parent, u, v, delta,
                        )));
                    }
                }
            }
        }
    }
    let values = overlay
        .sheets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), values[i].expect("all sheets visited")))
        .collect();
    Ok(NumberingOutcome::Consistent(Numbering { values }))
}

/// Builds the closed walk base→u→v→base out of the traversal tree when the
/// edge (u→v, delta) contradicts the numbers already assigned.
fn conflict_walk(
    overlay: &Presentation,
    parent: &[Option<(usize, i64)>],
    u: usize,
    v: usize,
    delta: i64,
) -> WitnessWalk {
    let name = |i: usize| overlay.sheets[i].clone();
    // Chain of tree steps child→parent, from x up to the component base.
    let to_base = |mut x: usize| {
        let mut steps = Vec::new();
        while let Some((p, d)) = parent[x] {
            steps.push(WalkStep {
                from: name(x),
                to: name(p),
                delta: -d,
            });
            x = p;
        }
        steps
    };
    let mut steps: Vec<WalkStep> = to_base(u)
        .into_iter()
        .rev()
        .map(|s| WalkStep {
            from: s.to,
            to: s.from,
            delta: -s.delta,
        })
        .collect();
    steps.push(WalkStep {
        from: name(u),
        to: name(v),
        delta,
    });
    steps.extend(to_base(v));
    WitnessWalk { steps }
}

/// Checks that a walk really refutes numberings of `overlay`: it must be
/// nonempty and closed, every step must traverse an actual constraint with
/// the constraint's increment, and the increments must not sum to zero.
pub fn verify_witness(overlay: &Presentation, walk: &WitnessWalk) -> bool {
    let steps = &walk.steps;
    if steps.is_empty() {
        return false;
    }
    let closed = steps.windows(2).all(|w| w[0].to == w[1].from)
        && steps.last().expect("nonempty").to == steps[0].from;
    if !closed {
        return false;
    }
    let licensed = |step: &WalkStep| {
        let double_ok = overlay.doubles.iter().any(|d| {
            step.delta == 0
                && ((step.from == d.under_from && step.to == d.under_to)
                    || (step.from == d.under_to && step.to == d.under_from))
        });
        let curve_ok = overlay.curves.iter().any(|c| {
            let delta = curve_delta(c.layer);
            (step.from == c.from && step.to == c.to && step.delta == delta)
                || (step.from == c.to && step.to == c.from && step.delta == -delta)
        });
        double_ok || curve_ok
    };
    steps.iter().all(licensed) && walk.sum() != 0
}

/// Confirms that `numbering` covers every sheet of `overlay` and satisfies
/// all of its difference constraints.
pub(crate) fn numbering_fits(overlay: &Presentation, numbering: &Numbering) -> Result<(), String> {
    for s in &overlay.sheets {
        if numbering.get(s).is_none() {
            return Err(format!("sheet `{s}` has no number"));
        }
    }
    for (idx, d) in overlay.doubles.iter().enumerate() {
        if numbering.get(&d.under_to) != numbering.get(&d.under_from) {
            return Err(format!(
                "double {idx} connects sheets with different numbers"
            ));
        }
    }
    for (idx, c) in overlay.curves.iter().enumerate() {
        let expected = numbering.get(&c.from).map(|v| v + curve_delta(c.layer));
        if numbering.get(&c.to) != expected {
            return Err(format!("curve {idx} breaks its increment rule"));
        }
    }
    Ok(())
}
