//! Transport of colorings between the two layer contractions of an
//! overlay, guided by a sheet numbering.
//!
//! Contracting layer 2 of an overlay leaves the layer-1 constraints in
//! place; contracting layer 1 leaves the layer-2 constraints. [`phi`]
//! carries a coloring of the first presentation to one of the second by
//! applying the kink map `n(y)` times, where `y` ranges over the overlay
//! sheets refining the target sheet; [`phi_inverse`] uses `-n(y)`. Every
//! representative `y` of a target sheet is evaluated and must agree, so a
//! successful call is itself a well-definedness check.

use std::collections::BTreeMap;

use crate::algebra::RackTable;
use crate::coloring::{check_coloring, Coloring};
use crate::presentation::{Layer, Presentation};

use super::numbering::{numbering_fits, Numbering};
use super::TransformError;

/// Carries a coloring of `contract(overlay, layer 2)` to one of
/// `contract(overlay, layer 1)` via `x -> kink^{n}(x)`.
pub fn phi(
    overlay: &Presentation,
    t: &RackTable,
    numbering: &Numbering,
    c1: &Coloring,
) -> Result<Coloring, TransformError> {
    transport(overlay, t, numbering, c1, false)
}

/// Inverse transport: from `contract(overlay, layer 1)` back to
/// `contract(overlay, layer 2)` via `x -> kink^{-n}(x)`.
pub fn phi_inverse(
    overlay: &Presentation,
    t: &RackTable,
    numbering: &Numbering,
    c2: &Coloring,
) -> Result<Coloring, TransformError> {
    transport(overlay, t, numbering, c2, true)
}

fn transport(
    overlay: &Presentation,
    t: &RackTable,
    numbering: &Numbering,
    input: &Coloring,
    invert: bool,
) -> Result<Coloring, TransformError> {
    let violations = overlay.validate();
    if !violations.is_empty() {
        return Err(TransformError::InvalidPresentation(violations));
    }
    let kink = t.kink_map()?;
    numbering_fits(overlay, numbering).map_err(TransformError::BadNumbering)?;

    let (source_layer, target_layer) = if invert {
        (Layer::One, Layer::Two)
    } else {
        (Layer::Two, Layer::One)
    };
    let (source_side, source_map) = overlay.contract(source_layer);
    let (target_side, target_map) = overlay.contract(target_layer);

    let broken = check_coloring(&source_side, t, input)?;
    if !broken.is_empty() {
        return Err(TransformError::InvalidColoring(format!(
            "{} constraint(s) fail on the source side",
            broken.len()
        )));
    }

    let sign = if invert { -1 } else { 1 };
    let mut out: BTreeMap<&str, Option<usize>> = target_side
        .sheets
        .iter()
        .map(|s| (s.as_str(), None))
        .collect();
    for y in &overlay.sheets {
        let target = target_map.get(y).expect("contraction maps every sheet");
        let source = source_map.get(y).expect("contraction maps every sheet");
        let base = input
            .get(source)
            .ok_or_else(|| TransformError::InvalidColoring(format!("no value for `{source}`")))?;
        let n = numbering
            .get(y)
            .expect("coverage checked by numbering_fits");
        let value = kink.power(base, sign * n);
        let slot = out
            .get_mut(target)
            .expect("targets are contraction representatives");
        match slot {
            None => *slot = Some(value),
            Some(prev) if *prev == value => {}
            Some(prev) => {
                return Err(TransformError::Internal(format!(
                    "representatives of `{target}` disagree: {prev} vs {value}"
                )))
            }
        }
    }
    let result = Coloring::from_pairs(out.into_iter().map(|(sheet, v)| {
        (
            sheet.to_string(),
            v.expect("each target sheet represents itself"),
        )
    }));
    let broken = check_coloring(&target_side, t, &result)?;
    if !broken.is_empty() {
        return Err(TransformError::Internal(format!(
            "transported coloring violates {} target constraint(s)",
            broken.len()
        )));
    }
    Ok(result)
}
