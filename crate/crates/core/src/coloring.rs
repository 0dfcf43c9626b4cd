//! Rack colorings of presentations: enumeration, counting, checking.
//!
//! A coloring assigns a rack element to every sheet so that
//!
//! * each double relation `(i, j, k)` satisfies `c(k) = c(i) * c(j)`,
//! * each curve edge `(i, j)` satisfies `c(j) = i(c(i))` for the kink map,
//! * each branch marker `s` satisfies `c(s) * c(s) = c(s)`.
//!
//! The solver backtracks over sheets in canonical (declaration) order with
//! ascending element values, so enumeration order is lexicographic in the
//! value tuple read along the canonical sheet order. Unit propagation uses
//! only consequences of the rack axioms: a double relation with the over
//! color and one under color known determines the other via the bijectivity
//! of right translations, and curve edges propagate through the kink map in
//! both directions.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AlgebraError, KinkMap, RackTable};
use crate::presentation::{Presentation, Violation};

/// A total assignment of rack elements to sheets.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Coloring(BTreeMap<String, usize>);

impl Coloring {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, usize)>) -> Self {
        Coloring(pairs.into_iter().collect())
    }

    pub fn get(&self, sheet: &str) -> Option<usize> {
        self.0.get(sheet).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn insert(&mut self, sheet: String, value: usize) {
        self.0.insert(sheet, value);
    }

    pub fn remove(&mut self, sheet: &str) -> Option<usize> {
        self.0.remove(sheet)
    }

    /// `sheet=value` pairs joined by spaces, following the given sheet
    /// order and skipping sheets the coloring does not assign.
    pub fn to_line(&self, sheet_order: &[String]) -> String {
        sheet_order
            .iter()
            .filter_map(|s| self.get(s).map(|v| format!("{s}={v}")))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Which constraint family a violation points into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    Double,
    Curve,
    Branch,
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstraintKind::Double => "double",
            ConstraintKind::Curve => "curve",
            ConstraintKind::Branch => "branch",
        })
    }
}

/// An unsatisfied constraint, addressed by kind and position within the
/// presentation's list of that kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstraintViolation {
    pub kind: ConstraintKind,
    pub index: usize,
}

impl fmt::Display for ConstraintViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid presentation: {0:?}")]
    InvalidPresentation(Vec<Violation>),
    #[error("coloring does not assign sheet `{sheet}`")]
    MissingSheet { sheet: String },
    #[error("sheet `{sheet}` is colored {value}, outside a rack of order {order}")]
    ValueOutOfRange {
        sheet: String,
        value: usize,
        order: usize,
    },
    #[error("assignment names unknown sheet `{sheet}`")]
    UnknownSheet { sheet: String },
}

/// Constraints with sheets resolved to canonical indices, plus the lookup
/// tables propagation needs.
#[derive(Clone)]
struct Solver<'t> {
    table: &'t RackTable,
    kink: Option<KinkMap>,
    inv_cols: Vec<Vec<usize>>,
    doubles: Vec<(usize, usize, usize)>,
    curves: Vec<(usize, usize)>,
    branches: Vec<usize>,
    values: Vec<Option<usize>>,
    trail: Vec<usize>,
}

impl<'t> Solver<'t> {
    fn new(p: &Presentation, table: &'t RackTable) -> Result<Self, ColoringError> {
        let violations = p.validate();
        if !violations.is_empty() {
            return Err(ColoringError::InvalidPresentation(violations));
        }
        table.require_rack()?;
        let index = p.index_map();
        let kink = if p.curves.is_empty() {
            None
        } else {
            Some(table.kink_map()?)
        };
        let inv_cols = (0..table.order())
            .map(|b| {
                table.inverse_column(b).ok_or_else(|| {
                    AlgebraError::InternalInvariant(format!("rack column {b} lost bijectivity"))
                        .into()
                })
            })
            .collect::<Result<Vec<_>, ColoringError>>()?;
        Ok(Solver {
            table,
            kink,
            inv_cols,
            doubles: p
                .doubles
                .iter()
                .map(|d| {
                    (
                        index[d.under_from.as_str()],
                        index[d.over.as_str()],
                        index[d.under_to.as_str()],
                    )
                })
                .collect(),
            curves: p
                .curves
                .iter()
                .map(|c| (index[c.from.as_str()], index[c.to.as_str()]))
                .collect(),
            branches: p.branches.iter().map(|b| index[b.as_str()]).collect(),
            values: vec![None; p.sheets.len()],
            trail: Vec::new(),
        })
    }

    fn set(&mut self, var: usize, val: usize) -> bool {
        match self.values[var] {
            Some(existing) => existing == val,
            None => {
                self.values[var] = Some(val);
                self.trail.push(var);
                true
            }
        }
    }

    /// Runs unit propagation to a fixpoint. Returns false on conflict; the
    /// trail still records everything set, so undo works either way.
    fn propagate(&mut self) -> bool {
        loop {
            let before = self.trail.len();
            for idx in 0..self.doubles.len() {
                let (i, j, k) = self.doubles[idx];
                let consistent = match (self.values[i], self.values[j], self.values[k]) {
                    (Some(a), Some(b), _) => self.set(k, self.table.op(a, b)),
                    (None, Some(b), Some(c)) => self.set(i, self.inv_cols[b][c]),
                    _ => true,
                };
                if !consistent {
                    return false;
                }
            }
            for idx in 0..self.curves.len() {
                let (i, j) = self.curves[idx];
                let kink = self.kink.as_ref().expect("curves imply a kink map");
                let consistent = match (self.values[i], self.values[j]) {
                    (Some(a), _) => {
                        let forced = kink.apply(a);
                        self.set(j, forced)
                    }
                    (None, Some(b)) => {
                        let forced = kink.apply_inverse(b);
                        self.set(i, forced)
                    }
                    (None, None) => true,
                };
                if !consistent {
                    return false;
                }
            }
            for &s in &self.branches {
                if let Some(a) = self.values[s] {
                    if self.table.op(a, a) != a {
                        return false;
                    }
                }
            }
            if self.trail.len() == before {
                return true;
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let var = self.trail.pop().expect("trail length checked");
            self.values[var] = None;
        }
    }

    /// Fixes externally supplied values (by index) and propagates once.
    /// Returns false if the fixed values are already contradictory.
    fn seed(&mut self, fixed: &[(usize, usize)]) -> bool {
        for &(var, val) in fixed {
            if !self.set(var, val) {
                return false;
            }
        }
        self.propagate()
    }

    /// Depth-first search branching on the earliest unassigned sheet with
    /// ascending values, which makes visitation order lexicographic.
    fn search(&mut self, emit: &mut dyn FnMut(&[Option<usize>])) {
        let Some(var) = self.values.iter().position(Option::is_none) else {
            emit(&self.values);
            return;
        };
        for val in 0..self.table.order() {
            let mark = self.trail.len();
            self.values[var] = Some(val);
            self.trail.push(var);
            if self.propagate() {
                self.search(emit);
            }
            self.undo_to(mark);
        }
    }

    fn count(&mut self) -> u64 {
        let Some(var) = self.values.iter().position(Option::is_none) else {
            return 1;
        };
        let mut total = 0;
        for val in 0..self.table.order() {
            let mark = self.trail.len();
            self.values[var] = Some(val);
            self.trail.push(var);
            if self.propagate() {
                total += self.count();
            }
            self.undo_to(mark);
        }
        total
    }
}

fn resolve_fixed(
    p: &Presentation,
    table: &RackTable,
    fixed: &BTreeMap<String, usize>,
) -> Result<Vec<(usize, usize)>, ColoringError> {
    fixed
        .iter()
        .map(|(sheet, &value)| {
            let var = p
                .sheet_index(sheet)
                .ok_or_else(|| ColoringError::UnknownSheet {
                    sheet: sheet.clone(),
                })?;
            if value >= table.order() {
                return Err(ColoringError::ValueOutOfRange {
                    sheet: sheet.clone(),
                    value,
                    order: table.order(),
                });
            }
            Ok((var, value))
        })
        .collect()
}

/// All colorings of `p` by `t`, in lexicographic order of the value tuple
/// along the canonical sheet order. The empty presentation has exactly one
/// coloring, the empty assignment.
pub fn enumerate_colorings(
    p: &Presentation,
    t: &RackTable,
) -> Result<Vec<Coloring>, ColoringError> {
    enumerate_colorings_with(p, t, &BTreeMap::new())
}

/// Like [`enumerate_colorings`], restricted to colorings that extend the
/// given partial assignment.
pub fn enumerate_colorings_with(
    p: &Presentation,
    t: &RackTable,
    fixed: &BTreeMap<String, usize>,
) -> Result<Vec<Coloring>, ColoringError> {
    let mut solver = Solver::new(p, t)?;
    let seeds = resolve_fixed(p, t, fixed)?;
    let mut out = Vec::new();
    if !solver.seed(&seeds) {
        return Ok(out);
    }
    solver.search(&mut |values| {
        out.push(Coloring(
            values
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    (
                        p.sheets[i].clone(),
                        v.expect("search emits total assignments"),
                    )
                })
                .collect(),
        ));
    });
    Ok(out)
}

/// `enumerate_colorings(p, t).len()`, computed without materializing the
/// colorings. The count splits over the first free sheet's values and may
/// run the branches on parallel workers; the total is worker-independent.
pub fn count_colorings(p: &Presentation, t: &RackTable) -> Result<u64, ColoringError> {
    count_colorings_with(p, t, &BTreeMap::new())
}

/// Like [`count_colorings`], restricted to extensions of `fixed`.
pub fn count_colorings_with(
    p: &Presentation,
    t: &RackTable,
    fixed: &BTreeMap<String, usize>,
) -> Result<u64, ColoringError> {
    let mut solver = Solver::new(p, t)?;
    let seeds = resolve_fixed(p, t, fixed)?;
    if !solver.seed(&seeds) {
        return Ok(0);
    }
    let Some(var) = solver.values.iter().position(Option::is_none) else {
        return Ok(1);
    };
    let total = (0..t.order())
        .into_par_iter()
        .map(|val| {
            let mut branch = solver.clone();
            let mark = branch.trail.len();
            branch.values[var] = Some(val);
            branch.trail.push(var);
            let n = if branch.propagate() {
                branch.count()
            } else {
                0
            };
            branch.undo_to(mark);
            n
        })
        .sum();
    Ok(total)
}

/// Evaluates every constraint of `p` against a total assignment and
/// returns the violated ones (empty means the coloring is valid).
pub fn check_coloring(
    p: &Presentation,
    t: &RackTable,
    c: &Coloring,
) -> Result<Vec<ConstraintViolation>, ColoringError> {
    let violations = p.validate();
    if !violations.is_empty() {
        return Err(ColoringError::InvalidPresentation(violations));
    }
    t.require_rack()?;
    for sheet in &p.sheets {
        match c.get(sheet) {
            None => {
                return Err(ColoringError::MissingSheet {
                    sheet: sheet.clone(),
                })
            }
            Some(v) if v >= t.order() => {
                return Err(ColoringError::ValueOutOfRange {
                    sheet: sheet.clone(),
                    value: v,
                    order: t.order(),
                })
            }
            Some(_) => {}
        }
    }
    let value = |sheet: &str| c.get(sheet).expect("totality checked above");
    let mut out = Vec::new();
    for (index, d) in p.doubles.iter().enumerate() {
        if t.op(value(&d.under_from), value(&d.over)) != value(&d.under_to) {
            out.push(ConstraintViolation {
                kind: ConstraintKind::Double,
                index,
            });
        }
    }
    if !p.curves.is_empty() {
        let kink = t.kink_map()?;
        for (index, cv) in p.curves.iter().enumerate() {
            if kink.apply(value(&cv.from)) != value(&cv.to) {
                out.push(ConstraintViolation {
                    kind: ConstraintKind::Curve,
                    index,
                });
            }
        }
    }
    for (index, b) in p.branches.iter().enumerate() {
        let v = value(b);
        if t.op(v, v) != v {
            out.push(ConstraintViolation {
                kind: ConstraintKind::Branch,
                index,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Family;
    use crate::presentation::builtin_presentation;

    fn cyclic(n: usize) -> RackTable {
        RackTable::builtin(Family::Cyclic, n).unwrap()
    }

    fn dihedral(n: usize) -> RackTable {
        RackTable::builtin(Family::Dihedral, n).unwrap()
    }

    fn builtin(name: &str) -> Presentation {
        builtin_presentation(name).unwrap()
    }

    /// Independent oracle: filter all order^|sheets| total assignments by
    /// definition, never consulting the solver.
    fn brute_force(p: &Presentation, t: &RackTable) -> Vec<Coloring> {
        let n = t.order();
        let sheets = &p.sheets;
        let kink = t.kink_map().ok();
        let mut out = Vec::new();
        let mut assignment = vec![0usize; sheets.len()];
        loop {
            let value = |id: &str| assignment[p.sheet_index(id).unwrap()];
            let doubles_ok = p
                .doubles
                .iter()
                .all(|d| t.op(value(&d.under_from), value(&d.over)) == value(&d.under_to));
            let curves_ok = p.curves.iter().all(|c| {
                kink.as_ref()
                    .map(|k| k.apply(value(&c.from)) == value(&c.to))
                    .unwrap_or(false)
            });
            let branches_ok = p.branches.iter().all(|b| {
                let v = value(b);
                t.op(v, v) == v
            });
            if doubles_ok && curves_ok && branches_ok {
                out.push(Coloring(
                    sheets
                        .iter()
                        .enumerate()
                        .map(|(i, s)| (s.clone(), assignment[i]))
                        .collect(),
                ));
            }
            // Odometer increment over the assignment vector.
            let mut pos = sheets.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                assignment[pos] += 1;
                if assignment[pos] < n {
                    break;
                }
                assignment[pos] = 0;
            }
        }
    }

    #[test]
    fn one_free_sheet_gives_one_coloring_per_element() {
        let colorings = enumerate_colorings(&builtin("satoh_d1"), &cyclic(3)).unwrap();
        assert_eq!(
            colorings,
            (0..3)
                .map(|v| Coloring::from_pairs([("s".to_string(), v)]))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn self_crossing_sheet_needs_idempotents() {
        // c(s)*c(s)=c(s) has no solution in a cyclic rack...
        assert_eq!(
            enumerate_colorings(&builtin("satoh_d2"), &cyclic(3)).unwrap(),
            vec![]
        );
        // ...and is vacuous in a quandle.
        assert_eq!(
            count_colorings(&builtin("satoh_d2"), &dihedral(3)).unwrap(),
            3
        );
        assert_eq!(
            count_colorings(&builtin("satoh_d1"), &dihedral(3)).unwrap(),
            3
        );
    }

    #[test]
    fn circle_diagram_counts_and_order() {
        let p = builtin("sphere_circle");
        let t = cyclic(3);
        let colorings = enumerate_colorings(&p, &t).unwrap();
        assert_eq!(colorings.len(), 9);
        for c in &colorings {
            assert_eq!(c.get("q").unwrap(), (c.get("p").unwrap() + 1) % 3);
        }
        // Lexicographic along canonical order (p, q, o).
        let tuples: Vec<Vec<usize>> = colorings
            .iter()
            .map(|c| p.sheets.iter().map(|s| c.get(s).unwrap()).collect())
            .collect();
        let mut sorted = tuples.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(tuples, sorted);
        assert_eq!(tuples[0], vec![0, 1, 0]);
        assert_eq!(tuples[8], vec![2, 0, 2]);
    }

    #[test]
    fn contradictory_relation_has_no_colorings() {
        let p = Presentation::parse("sheets u o\ndouble u o u\n").unwrap();
        assert_eq!(count_colorings(&p, &cyclic(3)).unwrap(), 0);
    }

    #[test]
    fn empty_presentation_has_exactly_the_empty_coloring() {
        let p = Presentation::default();
        let colorings = enumerate_colorings(&p, &cyclic(3)).unwrap();
        assert_eq!(colorings, vec![Coloring::default()]);
        assert_eq!(count_colorings(&p, &cyclic(3)).unwrap(), 1);
    }

    #[test]
    fn curve_edges_follow_the_kink_map() {
        let p = Presentation::parse("sheets x y\ncurve x y 1\n").unwrap();
        let colorings = enumerate_colorings(&p, &cyclic(3)).unwrap();
        let pairs: Vec<(usize, usize)> = colorings
            .iter()
            .map(|c| (c.get("x").unwrap(), c.get("y").unwrap()))
            .collect();
        assert_eq!(pairs, vec![(0, 2), (1, 0), (2, 1)]);
    }

    #[test]
    fn branch_markers_demand_idempotent_colors() {
        let p = Presentation::parse("sheets s\nbranch s\n").unwrap();
        assert_eq!(count_colorings(&p, &cyclic(3)).unwrap(), 0);
        assert_eq!(count_colorings(&p, &dihedral(3)).unwrap(), 3);
    }

    #[test]
    fn count_agrees_with_enumeration_length() {
        for name in crate::presentation::BUILTIN_PRESENTATIONS {
            let p = builtin(name);
            for t in [cyclic(2), cyclic(4), dihedral(3), dihedral(4)] {
                assert_eq!(
                    count_colorings(&p, &t).unwrap(),
                    enumerate_colorings(&p, &t).unwrap().len() as u64,
                    "{name} vs {:?}",
                    t.label()
                );
            }
        }
    }

    #[test]
    fn solver_matches_brute_force_on_small_cases() {
        let cases = [
            "sheets p q o\ndouble p o q\n",
            "sheets s\ndouble s s s\n",
            "sheets u o\ndouble u o u\n",
            "sheets a b c\ndouble a b c\ndouble c a b\n",
            "sheets x y z\ncurve x y 1\ndouble y z x\n",
            "sheets s t\nbranch s\ndouble s t t\n",
        ];
        for text in cases {
            let p = Presentation::parse(text).unwrap();
            for t in [
                cyclic(2),
                cyclic(3),
                dihedral(3),
                RackTable::builtin(Family::Trivial, 3).unwrap(),
            ] {
                assert_eq!(
                    enumerate_colorings(&p, &t).unwrap(),
                    brute_force(&p, &t),
                    "case {text:?} with {:?}",
                    t.label()
                );
            }
        }
    }

    #[test]
    fn fixed_assignments_restrict_the_enumeration() {
        let p = builtin("sphere_circle");
        let t = cyclic(3);
        let fixed: BTreeMap<String, usize> = [("p".to_string(), 1)].into_iter().collect();
        let restricted = enumerate_colorings_with(&p, &t, &fixed).unwrap();
        assert_eq!(restricted.len(), 3);
        assert!(restricted.iter().all(|c| c.get("p") == Some(1)));
        assert_eq!(count_colorings_with(&p, &t, &fixed).unwrap(), 3);

        let clash: BTreeMap<String, usize> = [("p".to_string(), 0), ("q".to_string(), 0)]
            .into_iter()
            .collect();
        assert_eq!(count_colorings_with(&p, &t, &clash).unwrap(), 0);

        let unknown: BTreeMap<String, usize> = [("zz".to_string(), 0)].into_iter().collect();
        assert!(matches!(
            count_colorings_with(&p, &t, &unknown),
            Err(ColoringError::UnknownSheet { .. })
        ));
        let too_big: BTreeMap<String, usize> = [("p".to_string(), 7)].into_iter().collect();
        assert!(matches!(
            count_colorings_with(&p, &t, &too_big),
            Err(ColoringError::ValueOutOfRange { .. })
        ));
    }

    #[test]
    fn check_reports_exactly_the_violated_constraints() {
        let p = builtin("sphere_circle");
        let t = cyclic(3);
        let good = Coloring::from_pairs([
            ("p".to_string(), 0),
            ("o".to_string(), 0),
            ("q".to_string(), 1),
        ]);
        assert_eq!(check_coloring(&p, &t, &good).unwrap(), vec![]);
        let bad = Coloring::from_pairs([
            ("p".to_string(), 0),
            ("o".to_string(), 0),
            ("q".to_string(), 0),
        ]);
        assert_eq!(
            check_coloring(&p, &t, &bad).unwrap(),
            vec![ConstraintViolation {
                kind: ConstraintKind::Double,
                index: 0
            }]
        );
        let partial = Coloring::from_pairs([("p".to_string(), 0)]);
        assert!(matches!(
            check_coloring(&p, &t, &partial),
            Err(ColoringError::MissingSheet { .. })
        ));
    }

    #[test]
    fn every_enumerated_coloring_checks_out() {
        let p = Presentation::parse("sheets a b c\ncurve a b 2\ndouble b c a\n").unwrap();
        for t in [cyclic(4), dihedral(5)] {
            for c in enumerate_colorings(&p, &t).unwrap() {
                assert_eq!(check_coloring(&p, &t, &c).unwrap(), vec![]);
            }
        }
    }

    #[test]
    fn under_sheets_stay_in_one_component() {
        // The dihedral rack of even order has two components (the parity
        // classes); every double relation must keep its under colors in one.
        let t = dihedral(4);
        let components = t.connected_components().unwrap();
        let component_of = |v: usize| components.iter().position(|c| c.contains(&v)).unwrap();
        assert_eq!(components.len(), 2);
        let p = builtin("sphere_circle");
        let colorings = enumerate_colorings(&p, &t).unwrap();
        assert_eq!(colorings.len() % t.order(), 0);
        for c in colorings {
            assert_eq!(
                component_of(c.get("p").unwrap()),
                component_of(c.get("q").unwrap())
            );
        }
    }

    #[test]
    fn counts_are_invariant_under_renaming() {
        let p = Presentation::parse("sheets a b c\ndouble a b c\ncurve b c 1\n").unwrap();
        let map: BTreeMap<String, String> = [("a", "zz"), ("b", "a"), ("c", "m0")]
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        let renamed = p.rename(&map).unwrap();
        for t in [cyclic(3), cyclic(5), dihedral(4)] {
            assert_eq!(
                count_colorings(&p, &t).unwrap(),
                count_colorings(&renamed, &t).unwrap()
            );
        }
    }

    #[test]
    fn non_racks_are_rejected() {
        let not_rack = RackTable::new(2, vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert!(matches!(
            count_colorings(&builtin("satoh_d1"), &not_rack),
            Err(ColoringError::Algebra(AlgebraError::NotARack { .. }))
        ));
        let c = Coloring::from_pairs([("s".to_string(), 0)]);
        assert!(check_coloring(&builtin("satoh_d1"), &not_rack, &c).is_err());
    }

    #[test]
    fn invalid_presentations_are_rejected() {
        let p = Presentation {
            sheets: vec!["a".to_string()],
            doubles: vec![crate::presentation::Double {
                under_from: "a".to_string(),
                over: "ghost".to_string(),
                under_to: "a".to_string(),
            }],
            ..Default::default()
        };
        assert!(matches!(
            enumerate_colorings(&p, &cyclic(3)),
            Err(ColoringError::InvalidPresentation(_))
        ));
    }

    mod random {
        use super::*;
        use proptest::prelude::*;

        fn arb_plain() -> impl Strategy<Value = Presentation> {
            (2usize..5).prop_flat_map(|n| {
                let sheets: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
                proptest::collection::vec((0..n, 0..n, 0..n), 0..4).prop_map(move |doubles| {
                    Presentation {
                        sheets: sheets.clone(),
                        doubles: doubles
                            .into_iter()
                            .map(|(i, j, k)| crate::presentation::Double {
                                under_from: format!("s{i}"),
                                over: format!("s{j}"),
                                under_to: format!("s{k}"),
                            })
                            .collect(),
                        ..Default::default()
                    }
                })
            })
        }

        proptest! {
            #[test]
            fn solver_agrees_with_the_full_scan(p in arb_plain(), which in 0usize..4) {
                let t = match which {
                    0 => RackTable::builtin(Family::Cyclic, 3).unwrap(),
                    1 => RackTable::builtin(Family::Dihedral, 3).unwrap(),
                    2 => RackTable::builtin(Family::Trivial, 2).unwrap(),
                    _ => RackTable::builtin(Family::Cyclic, 4).unwrap(),
                };
                let enumerated = enumerate_colorings(&p, &t).unwrap();
                prop_assert_eq!(&enumerated, &brute_force(&p, &t));
                prop_assert_eq!(count_colorings(&p, &t).unwrap(), enumerated.len() as u64);
            }
        }
    }

    #[test]
    fn to_line_follows_canonical_order() {
        let p = builtin("sphere_circle");
        let c = Coloring::from_pairs([
            ("q".to_string(), 1),
            ("p".to_string(), 0),
            ("o".to_string(), 0),
        ]);
        assert_eq!(c.to_line(&p.sheets), "p=0 q=1 o=0");
    }
}
