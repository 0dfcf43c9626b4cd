//! Finite racks and quandles as explicit operation tables.
//!
//! A *rack* is a set with a binary operation `*` such that every right
//! translation `x -> x * b` is a bijection (Q2) and the operation is right
//! self-distributive: `(a*b)*c = (a*c)*(b*c)` (Q3). A *quandle* additionally
//! satisfies idempotency `a*a = a` (Q1). Elements are represented as
//! `0..order`.

mod enumerate;
mod kink;

pub use enumerate::enumerate_racks;
pub use kink::{KinkMap, KinkReport};

use std::fmt;

use thiserror::Error;

/// Errors from constructing or operating on rack tables.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("table must have order at least 1")]
    EmptyTable,
    #[error("table shape mismatch: expected {expected} rows, got {got}")]
    WrongRowCount { expected: usize, got: usize },
    #[error("table shape mismatch: expected {expected} entries in row {row}, got {got}")]
    ShapeMismatch {
        expected: usize,
        row: usize,
        got: usize,
    },
    #[error("entry out of range at cell ({row},{col}): {value} not in 0..{order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("not a rack{}: {reason}", label_suffix(.label))]
    NotARack {
        label: Option<String>,
        reason: String,
    },
    #[error("unknown rack family `{0}` (expected cyclic, dihedral or trivial)")]
    UnknownFamily(String),
    #[error("invalid order {n} for {family} family: {reason}")]
    InvalidFamilyOrder {
        family: Family,
        n: usize,
        reason: String,
    },
    #[error("rack enumeration supports order 1..={max}, got {n}")]
    UnsupportedOrder { n: usize, max: usize },
    #[error("rack table parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

fn label_suffix(label: &Option<String>) -> String {
    match label {
        Some(l) => format!(" ({l})"),
        None => String::new(),
    }
}

/// Result of checking the three axioms on a table.
///
/// Each witness is the lexicographically smallest counterexample, or `None`
/// when the axiom holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    /// Smallest `a` with `a*a != a`.
    pub q1_witness: Option<usize>,
    /// Smallest `b` whose right translation column is not a bijection.
    pub q2_witness: Option<usize>,
    /// Smallest `(a,b,c)` with `(a*b)*c != (a*c)*(b*c)`.
    pub q3_witness: Option<(usize, usize, usize)>,
}

impl AxiomReport {
    pub fn q1(&self) -> bool {
        self.q1_witness.is_none()
    }
    pub fn q2(&self) -> bool {
        self.q2_witness.is_none()
    }
    pub fn q3(&self) -> bool {
        self.q3_witness.is_none()
    }
    pub fn is_rack(&self) -> bool {
        self.q2() && self.q3()
    }
    pub fn is_quandle(&self) -> bool {
        self.q1() && self.is_rack()
    }
}

/// Built-in rack families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `a*b = a+1 (mod n)`: a connected rack that is not a quandle for n >= 2.
    Cyclic,
    /// `a*b = 2b-a (mod n)`: the dihedral quandle.
    Dihedral,
    /// `a*b = a`: the trivial quandle.
    Trivial,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::Cyclic => "cyclic",
            Family::Dihedral => "dihedral",
            Family::Trivial => "trivial",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for Family {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cyclic" => Ok(Family::Cyclic),
            "dihedral" => Ok(Family::Dihedral),
            "trivial" => Ok(Family::Trivial),
            other => Err(AlgebraError::UnknownFamily(other.to_string())),
        }
    }
}

/// A finite binary operation table, candidate rack.
///
/// Stored row-major: `op(a, b)` is the entry in row `a`, column `b`,
/// read as `a * b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RackTable {
    order: usize,
    entries: Vec<usize>,
    label: Option<String>,
}

impl RackTable {
    /// Builds a table from explicit rows, checking shape and entry range.
    pub fn new(order: usize, rows: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        if order == 0 {
            return Err(AlgebraError::EmptyTable);
        }
        if rows.len() != order {
            return Err(AlgebraError::WrongRowCount {
                expected: order,
                got: rows.len(),
            });
        }
        let mut entries = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(AlgebraError::ShapeMismatch {
                    expected: order,
                    row: r,
                    got: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(AlgebraError::EntryOutOfRange {
                        row: r,
                        col: c,
                        value: v,
                        order,
                    });
                }
                entries.push(v);
            }
        }
        Ok(RackTable {
            order,
            entries,
            label: None,
        })
    }

    /// Attaches a human-readable label used in error messages and reports.
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// `a * b`. Panics if an argument is out of range.
    pub fn op(&self, a: usize, b: usize) -> usize {
        assert!(a < self.order && b < self.order, "element out of range");
        self.entries[a * self.order + b]
    }

    /// The table as rows (row `a` lists `a*0 .. a*(n-1)`).
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries
            .chunks(self.order)
            .map(|r| r.to_vec())
            .collect()
    }

    /// Flat row-major entries, used for lexicographic table comparisons.
    pub fn flat(&self) -> &[usize] {
        &self.entries
    }

    /// Checks Q1 (idempotency), Q2 (bijective right translations) and
    /// Q3 (right self-distributivity), reporting smallest counterexamples.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.order;
        let q1_witness = (0..n).find(|&a| self.op(a, a) != a);
        let mut q2_witness = None;
        'cols: for b in 0..n {
            let mut seen = vec![false; n];
            for a in 0..n {
                let v = self.op(a, b);
                if seen[v] {
                    q2_witness = Some(b);
                    break 'cols;
                }
                seen[v] = true;
            }
        }
        let mut q3_witness = None;
        'triples: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.op(self.op(a, b), c) != self.op(self.op(a, c), self.op(b, c)) {
                        q3_witness = Some((a, b, c));
                        break 'triples;
                    }
                }
            }
        }
        AxiomReport {
            q1_witness,
            q2_witness,
            q3_witness,
        }
    }

    pub fn is_rack(&self) -> bool {
        self.check_axioms().is_rack()
    }

    pub fn is_quandle(&self) -> bool {
        self.check_axioms().is_quandle()
    }

    /// Errors with `NotARack` unless Q2 and Q3 both hold.
    pub(crate) fn require_rack(&self) -> Result<(), AlgebraError> {
        let report = self.check_axioms();
        if let Some(b) = report.q2_witness {
            return Err(self.not_a_rack(format!("right translation by {b} is not a bijection")));
        }
        if let Some((a, b, c)) = report.q3_witness {
            return Err(self.not_a_rack(format!(
                "self-distributivity fails at ({a},{b},{c}): ({a}*{b})*{c} != ({a}*{c})*({b}*{c})"
            )));
        }
        Ok(())
    }

    pub(crate) fn not_a_rack(&self, reason: String) -> AlgebraError {
        AlgebraError::NotARack {
            label: self.label.clone(),
            reason,
        }
    }

    /// For column `b`, the inverse of the right translation: returns `inv`
    /// with `inv[y] = x` iff `x*b = y`, or `None` if the column is not a
    /// bijection.
    pub(crate) fn inverse_column(&self, b: usize) -> Option<Vec<usize>> {
        let n = self.order;
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            let v = self.op(a, b);
            if inv[v] != usize::MAX {
                return None;
            }
            inv[v] = a;
        }
        Some(inv)
    }

    /// Orbits of the group generated by all right translations and their
    /// inverses. Components are sorted by smallest member; each component
    /// lists its elements in ascending order. Requires a rack.
    pub fn connected_components(&self) -> Result<Vec<Vec<usize>>, AlgebraError> {
        self.require_rack()?;
        let n = self.order;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut cur = x;
            while parent[cur] != root {
                let next = parent[cur];
                parent[cur] = root;
                cur = next;
            }
            root
        }
        for a in 0..n {
            for b in 0..n {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, self.op(a, b)));
                if ra != rb {
                    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                    parent[hi] = lo;
                }
            }
        }
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut index_of_root = vec![usize::MAX; n];
        for x in 0..n {
            let r = find(&mut parent, x);
            if index_of_root[r] == usize::MAX {
                index_of_root[r] = components.len();
                components.push(Vec::new());
            }
            components[index_of_root[r]].push(x);
        }
        // Restriction of a rack to an orbit is again a rack: a*b stays in
        // the orbit of a for every b, translations restrict to bijections,
        // and Q3 is inherited. Verified defensively.
        for comp in &components {
            let reindex: std::collections::HashMap<usize, usize> =
                comp.iter().enumerate().map(|(i, &x)| (x, i)).collect();
            let rows: Vec<Vec<usize>> = comp
                .iter()
                .map(|&a| comp.iter().map(|&b| reindex[&self.op(a, b)]).collect())
                .collect();
            let sub = RackTable::new(comp.len(), rows)
                .map_err(|e| AlgebraError::InternalInvariant(format!("component subtable: {e}")))?;
            if !sub.is_rack() {
                return Err(AlgebraError::InternalInvariant(
                    "component restriction is not a rack".to_string(),
                ));
            }
        }
        Ok(components)
    }

    /// Builds one of the named families.
    pub fn builtin(family: Family, n: usize) -> Result<Self, AlgebraError> {
        let invalid = |reason: &str| AlgebraError::InvalidFamilyOrder {
            family,
            n,
            reason: reason.to_string(),
        };
        let rows: Vec<Vec<usize>> = match family {
            Family::Cyclic => {
                if n < 2 {
                    return Err(invalid("cyclic racks need order at least 2"));
                }
                (0..n)
                    .map(|a| (0..n).map(|_| (a + 1) % n).collect())
                    .collect()
            }
            Family::Dihedral => {
                if n < 1 {
                    return Err(invalid("dihedral quandles need order at least 1"));
                }
                (0..n)
                    .map(|a| (0..n).map(|b| (2 * b % n + n - a) % n).collect())
                    .collect()
            }
            Family::Trivial => {
                if n < 1 {
                    return Err(invalid("trivial quandles need order at least 1"));
                }
                (0..n).map(|a| vec![a; n]).collect()
            }
        };
        Ok(RackTable::new(n, rows)?.with_label(format!("{family}:{n}")))
    }

    /// Parses the plain-text table format: comments start with `#`, the
    /// first tokens are `order <n>`, followed by `n*n` whitespace-separated
    /// integers in row-major order.
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let mut tokens = Vec::new();
        for line in text.lines() {
            let line = match line.find('#') {
                Some(pos) => &line[..pos],
                None => line,
            };
            tokens.extend(line.split_whitespace());
        }
        let mut it = tokens.into_iter();
        match it.next() {
            Some("order") => {}
            Some(other) => {
                return Err(AlgebraError::Parse(format!(
                    "expected `order`, found `{other}`"
                )))
            }
            None => return Err(AlgebraError::Parse("empty table text".to_string())),
        }
        let n: usize = it
            .next()
            .ok_or_else(|| AlgebraError::Parse("missing order value".to_string()))?
            .parse()
            .map_err(|_| AlgebraError::Parse("order is not a non-negative integer".to_string()))?;
        if n == 0 {
            return Err(AlgebraError::EmptyTable);
        }
        let mut values = Vec::with_capacity(n * n);
        for tok in it {
            let v: usize = tok
                .parse()
                .map_err(|_| AlgebraError::Parse(format!("bad table entry `{tok}`")))?;
            values.push(v);
        }
        if values.len() != n * n {
            return Err(AlgebraError::Parse(format!(
                "expected {} entries for order {n}, found {}",
                n * n,
                values.len()
            )));
        }
        let rows = values.chunks(n).map(|r| r.to_vec()).collect();
        RackTable::new(n, rows)
    }

    /// Canonical text form: `order <n>` then one line per row. Reparsing
    /// gives back an equal table (labels are not serialized).
    pub fn to_text(&self) -> String {
        let mut out = format!("order {}\n", self.order);
        for row in self.entries.chunks(self.order) {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}
