//! Local move schemas and coloring-invariance verification.
//!
//! A [`MoveSchema`] is a pair of presentations describing a patch of a
//! diagram before and after a local move, together with the ordered list
//! of boundary sheets shared by both sides. [`verify_move`] certifies
//! coloring invariance by comparing, for every boundary coloring, how many
//! extensions each side admits: equal fiber sizes everywhere exhibit a
//! bijection of coloring sets that fixes boundary restrictions.
//!
//! [`catalog`] ships the four branch-free move patches; each schema file
//! carries a comment deriving its sheets and relations from the local
//! geometry. [`satoh_discrimination`] runs the counting argument that
//! separates the two built-in torus diagrams under connected non-quandle
//! racks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, RackTable};
use crate::coloring::{count_colorings, enumerate_colorings, Coloring, ColoringError};
use crate::presentation::{builtin_presentation, Presentation, PresentationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid move schema: {0}")]
    InvalidSchema(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("discrimination does not apply: {0}")]
    DiscriminationInapplicable(String),
}

/// A local move: two presentations glued along a common ordered boundary.
/// Boundary sheets are identified pairwise by id; all other sheets are
/// interior to their side and must not be shared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSchema {
    pub name: String,
    pub boundary: Vec<String>,
    pub before: Presentation,
    pub after: Presentation,
}

impl MoveSchema {
    /// Parses the schema file format: `name <label>` and
    /// `boundary <id> ...` headers, then the before presentation, a `---`
    /// line, and the after presentation. `#` comments and blank lines are
    /// allowed throughout.
    pub fn parse(text: &str) -> Result<MoveSchema, MoveError> {
        let all: Vec<&str> = text.lines().collect();
        let mut name: Option<String> = None;
        let mut boundary: Option<Vec<String>> = None;
        let mut cursor = 0;
        while cursor < all.len() {
            let raw = all[cursor];
            let content = raw.find('#').map_or(raw, |p| &raw[..p]);
            let mut tokens = content.split_whitespace();
            match tokens.next() {
                None => cursor += 1,
                Some("name") => {
                    let rest: Vec<&str> = tokens.collect();
                    let [label]: [&str; 1] = rest.try_into().map_err(|_| MoveError::Parse {
                        line: cursor + 1,
                        msg: "name takes exactly one label".to_string(),
                    })?;
                    if name.replace(label.to_string()).is_some() {
                        return Err(MoveError::Parse {
                            line: cursor + 1,
                            msg: "duplicate name header".to_string(),
                        });
                    }
                    cursor += 1;
                }
                Some("boundary") => {
                    if boundary
                        .replace(tokens.map(str::to_string).collect())
                        .is_some()
                    {
                        return Err(MoveError::Parse {
                            line: cursor + 1,
                            msg: "duplicate boundary header".to_string(),
                        });
                    }
                    cursor += 1;
                }
                Some(_) => break,
            }
        }
        let name = name.ok_or_else(|| MoveError::Parse {
            line: cursor + 1,
            msg: "missing name header".to_string(),
        })?;
        let boundary = boundary.ok_or_else(|| MoveError::Parse {
            line: cursor + 1,
            msg: "missing boundary header".to_string(),
        })?;
        let sep = all[cursor..]
            .iter()
            .position(|l| l.trim() == "---")
            .map(|i| i + cursor)
            .ok_or_else(|| MoveError::Parse {
                line: all.len().max(1),
                msg: "missing --- separator between the two sides".to_string(),
            })?;
        let before = parse_side(&all[cursor..sep], cursor, "before")?;
        let after = parse_side(&all[sep + 1..], sep + 1, "after")?;
        let schema = MoveSchema {
            name,
            boundary,
            before,
            after,
        };
        schema.validate()?;
        Ok(schema)
    }

    /// Canonical text form; reparsing yields an equal schema.
    pub fn to_text(&self) -> String {
        format!(
            "name {}\nboundary {}\n{}---\n{}",
            self.name,
            self.boundary.join(" "),
            self.before.to_text(),
            self.after.to_text()
        )
    }

    /// Checks both sides, boundary membership on both sides, boundary
    /// uniqueness, and disjointness of the interiors.
    pub fn validate(&self) -> Result<(), MoveError> {
        let mut problems = Vec::new();
        for (side, p) in [("before", &self.before), ("after", &self.after)] {
            for v in p.validate() {
                problems.push(format!("{side} side: {v}"));
            }
        }
        let mut seen = BTreeSet::new();
        for id in &self.boundary {
            if !seen.insert(id) {
                problems.push(format!("boundary id `{id}` listed twice"));
            }
            for (side, p) in [("before", &self.before), ("after", &self.after)] {
                if p.sheet_index(id).is_none() {
                    problems.push(format!(
                        "boundary id `{id}` is not a sheet of the {side} side"
                    ));
                }
            }
        }
        let boundary: BTreeSet<&String> = self.boundary.iter().collect();
        let before_interior: BTreeSet<&String> = self
            .before
            .sheets
            .iter()
            .filter(|s| !boundary.contains(s))
            .collect();
        for s in &self.after.sheets {
            if !boundary.contains(s) && before_interior.contains(s) {
                problems.push(format!("interior sheet `{s}` appears on both sides"));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(MoveError::InvalidSchema(problems.join("; ")))
        }
    }
}

fn parse_side(lines: &[&str], offset: usize, side: &str) -> Result<Presentation, MoveError> {
    Presentation::parse(&lines.join("\n")).map_err(|e| match e {
        PresentationError::Parse { line, msg } => MoveError::Parse {
            line: line + offset,
            msg,
        },
        other => MoveError::InvalidSchema(format!("{side} side: {other}")),
    })
}

/// Result of checking one schema against one rack. `fibers` maps each
/// boundary value tuple (in boundary order) to the number of extensions on
/// the before and after side; tuples extendable by neither side are
/// omitted, since their counts agree trivially at zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveReport {
    pub name: String,
    pub boundary: Vec<String>,
    pub fibers: BTreeMap<Vec<usize>, (u64, u64)>,
    pub before_total: u64,
    pub after_total: u64,
    pub bijective: bool,
}

impl fmt::Display for MoveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} boundary class(es), totals {}/{}, {}",
            self.name,
            self.fibers.len(),
            self.before_total,
            self.after_total,
            if self.bijective {
                "bijective"
            } else {
                "NOT bijective"
            }
        )
    }
}

/// Compares extension counts of the two sides over every boundary
/// coloring. Both sides' coloring sets are enumerated outright and
/// projected to the boundary; since absent boundary tuples extend to
/// nothing on either side, equality of the recorded fibers is equality for
/// every assignment of rack elements to boundary sheets.
pub fn verify_move(m: &MoveSchema, t: &RackTable) -> Result<MoveReport, MoveError> {
    m.validate()?;
    let mut fibers: BTreeMap<Vec<usize>, (u64, u64)> = BTreeMap::new();
    let project = |c: &Coloring| -> Vec<usize> {
        m.boundary
            .iter()
            .map(|s| c.get(s).expect("colorings are total"))
            .collect()
    };
    let before = enumerate_colorings(&m.before, t)?;
    for c in &before {
        fibers.entry(project(c)).or_default().0 += 1;
    }
    let after = enumerate_colorings(&m.after, t)?;
    for c in &after {
        fibers.entry(project(c)).or_default().1 += 1;
    }
    let bijective = fibers.values().all(|&(b, a)| b == a);
    Ok(MoveReport {
        name: m.name.clone(),
        boundary: m.boundary.clone(),
        fibers,
        before_total: before.len() as u64,
        after_total: after.len() as u64,
        bijective,
    })
}

/// The four branch-free move patches, in the order D1, D2, T1, T2.
pub fn catalog() -> Vec<MoveSchema> {
    [
        include_str!("catalog/d1.schema"),
        include_str!("catalog/d2.schema"),
        include_str!("catalog/t1.schema"),
        include_str!("catalog/t2.schema"),
    ]
    .iter()
    .map(|text| MoveSchema::parse(text).expect("shipped schemas parse"))
    .collect()
}

/// How the two-torus-diagram counting argument came out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SatohVerdict {
    /// The coloring counts differ, so no sequence of branch-free moves
    /// relates the two diagrams.
    NotRegularEquivalent,
    /// The counts agree; this rack does not separate the diagrams.
    Indistinguishable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatohReport {
    /// Colorings of the crossing-free torus diagram (always the rack's
    /// order).
    pub d1_count: u64,
    /// Colorings of the self-crossing torus diagram (the rack's
    /// idempotent elements).
    pub d2_count: u64,
    pub verdict: SatohVerdict,
}

/// Counts colorings of the two built-in torus diagrams and reports whether
/// they differ. Requires a connected non-quandle rack: quandles color both
/// diagrams alike, and for disconnected racks the argument says nothing.
pub fn satoh_discrimination(t: &RackTable) -> Result<SatohReport, MoveError> {
    t.require_rack()?;
    if t.is_quandle() {
        return Err(MoveError::DiscriminationInapplicable(
            "the rack is a quandle, so both diagrams have identical coloring sets".to_string(),
        ));
    }
    let components = t.connected_components()?;
    if components.len() != 1 {
        return Err(MoveError::DiscriminationInapplicable(format!(
            "the rack has {} components; the argument needs a connected rack",
            components.len()
        )));
    }
    let d1 = builtin_presentation("satoh_d1").expect("built-in diagram exists");
    let d2 = builtin_presentation("satoh_d2").expect("built-in diagram exists");
    let d1_count = count_colorings(&d1, t)?;
    let d2_count = count_colorings(&d2, t)?;
    let verdict = if d1_count != d2_count {
        SatohVerdict::NotRegularEquivalent
    } else {
        SatohVerdict::Indistinguishable
    };
    Ok(SatohReport {
        d1_count,
        d2_count,
        verdict,
    })
}
