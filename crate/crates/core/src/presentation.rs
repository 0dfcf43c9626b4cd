//! Combinatorial presentations of surface-knot diagrams.
//!
//! A presentation lists the *sheets* of a diagram in declaration order
//! (the canonical sheet order used everywhere else in the crate) together
//! with three kinds of constraints on colorings:
//!
//! * a *double relation* `(under_from, over, under_to)` forces
//!   `c(under_to) = c(under_from) * c(over)`;
//! * a *curve edge* `(from, to, layer)` forces `c(to) = i(c(from))` where
//!   `i` is the kink map of the coloring rack — the layer tag (1 or 2)
//!   records which overlay layer the curve belongs to and only matters for
//!   contraction and numbering;
//! * a *branch marker* on sheet `s` forces `c(s) * c(s) = c(s)`.
//!
//! A *plain* presentation has no curve edges. The optional `genus` field is
//! carried as metadata and never constrains colorings.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

/// `c(under_to) = c(under_from) * c(over)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Double {
    pub under_from: String,
    pub over: String,
    pub under_to: String,
}

/// `c(to) = i(c(from))`, tagged with the overlay layer the curve lives on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Curve {
    pub from: String,
    pub to: String,
    /// Valid presentations use 1 or 2; other values are flagged by
    /// [`Presentation::validate`].
    pub layer: u8,
}

/// One of the two overlay layers a curve edge can belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layer {
    One,
    Two,
}

impl Layer {
    pub fn number(self) -> u8 {
        match self {
            Layer::One => 1,
            Layer::Two => 2,
        }
    }

    pub fn from_number(n: u8) -> Option<Layer> {
        match n {
            1 => Some(Layer::One),
            2 => Some(Layer::Two),
            _ => None,
        }
    }

    pub fn other(self) -> Layer {
        match self {
            Layer::One => Layer::Two,
            Layer::Two => Layer::One,
        }
    }
}

/// A single validation failure, as data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateSheet { id: String },
    InvalidId { id: String },
    UndeclaredSheet { id: String, context: String },
    LayerOutOfRange { layer: u8, context: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateSheet { id } => write!(f, "sheet `{id}` declared more than once"),
            Violation::InvalidId { id } => {
                write!(f, "invalid sheet id `{id}` (ids match [A-Za-z0-9_]+)")
            }
            Violation::UndeclaredSheet { id, context } => {
                write!(f, "{context} names undeclared sheet `{id}`")
            }
            Violation::LayerOutOfRange { layer, context } => {
                write!(f, "{context} has layer {layer} (layers are 1 or 2)")
            }
        }
    }
}

/// Errors from parsing or transforming presentations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid presentation: {}", format_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("rename is not a bijection on sheet ids: {0}")]
    NonBijectiveRename(String),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// A surface-knot diagram presentation. See the module docs for the
/// constraint semantics. Fields are public data; parsing and the
/// constructors in this crate only produce values that pass
/// [`Presentation::validate`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Presentation {
    /// Sheets in declaration order; this order is canonical.
    pub sheets: Vec<String>,
    pub doubles: Vec<Double>,
    pub curves: Vec<Curve>,
    pub branches: Vec<String>,
    pub genus: Option<i64>,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl Presentation {
    /// Builds and validates a presentation from its parts.
    pub fn from_parts(
        sheets: Vec<String>,
        doubles: Vec<Double>,
        curves: Vec<Curve>,
        branches: Vec<String>,
        genus: Option<i64>,
    ) -> Result<Self, PresentationError> {
        let p = Presentation {
            sheets,
            doubles,
            curves,
            branches,
            genus,
        };
        let violations = p.validate();
        if violations.is_empty() {
            Ok(p)
        } else {
            Err(PresentationError::Invalid(violations))
        }
    }

    /// Checks id syntax, duplicate declarations, id closure of every
    /// relation, and layer range. Returns all violations in declaration
    /// order (sheets, then doubles, curves, branches).
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        let mut seen: HashMap<&str, ()> = HashMap::new();
        for id in &self.sheets {
            if !valid_id(id) {
                violations.push(Violation::InvalidId { id: id.clone() });
            }
            if seen.insert(id.as_str(), ()).is_some() {
                violations.push(Violation::DuplicateSheet { id: id.clone() });
            }
        }
        let declared = |id: &str| seen.contains_key(id);
        for (i, d) in self.doubles.iter().enumerate() {
            let context = format!("double {i}");
            for id in [&d.under_from, &d.over, &d.under_to] {
                if !declared(id) {
                    violations.push(Violation::UndeclaredSheet {
                        id: id.clone(),
                        context: context.clone(),
                    });
                }
            }
        }
        for (i, c) in self.curves.iter().enumerate() {
            let context = format!("curve {i}");
            for id in [&c.from, &c.to] {
                if !declared(id) {
                    violations.push(Violation::UndeclaredSheet {
                        id: id.clone(),
                        context: context.clone(),
                    });
                }
            }
            if Layer::from_number(c.layer).is_none() {
                violations.push(Violation::LayerOutOfRange {
                    layer: c.layer,
                    context,
                });
            }
        }
        for (i, b) in self.branches.iter().enumerate() {
            if !declared(b) {
                violations.push(Violation::UndeclaredSheet {
                    id: b.clone(),
                    context: format!("branch {i}"),
                });
            }
        }
        violations
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// No curve edges.
    pub fn is_plain(&self) -> bool {
        self.curves.is_empty()
    }

    /// Position of a sheet in canonical order.
    pub fn sheet_index(&self, id: &str) -> Option<usize> {
        self.sheets.iter().position(|s| s == id)
    }

    /// Map from sheet id to canonical position, built once.
    pub(crate) fn index_map(&self) -> HashMap<&str, usize> {
        self.sheets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect()
    }

    /// Parses the line-oriented text format. Directives: `sheets <id>...`
    /// (cumulative), `double <under_from> <over> <under_to>`,
    /// `curve <from> <to> <layer>`, `branch <id>`, `genus <int>`.
    /// `#` starts a comment. The empty text is the empty presentation.
    pub fn parse(text: &str) -> Result<Self, PresentationError> {
        let mut p = Presentation::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let mut tokens = content.split_whitespace();
            let Some(directive) = tokens.next() else {
                continue;
            };
            let rest: Vec<&str> = tokens.collect();
            let parse_err = |msg: String| PresentationError::Parse { line, msg };
            match directive {
                "sheets" => {
                    p.sheets.extend(rest.iter().map(|s| s.to_string()));
                }
                "double" => {
                    let [under_from, over, under_to]: [&str; 3] = rest
                        .try_into()
                        .map_err(|_| parse_err("double takes exactly 3 sheet ids".to_string()))?;
                    p.doubles.push(Double {
                        under_from: under_from.to_string(),
                        over: over.to_string(),
                        under_to: under_to.to_string(),
                    });
                }
                "curve" => {
                    let [from, to, layer]: [&str; 3] = rest.try_into().map_err(|_| {
                        parse_err("curve takes 2 sheet ids and a layer".to_string())
                    })?;
                    let layer: u8 = layer
                        .parse()
                        .map_err(|_| parse_err(format!("bad layer `{layer}`")))?;
                    p.curves.push(Curve {
                        from: from.to_string(),
                        to: to.to_string(),
                        layer,
                    });
                }
                "branch" => {
                    let [id]: [&str; 1] = rest
                        .try_into()
                        .map_err(|_| parse_err("branch takes exactly 1 sheet id".to_string()))?;
                    p.branches.push(id.to_string());
                }
                "genus" => {
                    let [g]: [&str; 1] = rest
                        .try_into()
                        .map_err(|_| parse_err("genus takes exactly 1 integer".to_string()))?;
                    let g: i64 = g
                        .parse()
                        .map_err(|_| parse_err(format!("bad genus `{g}`")))?;
                    p.genus = Some(g);
                }
                other => return Err(parse_err(format!("unknown directive `{other}`"))),
            }
        }
        let violations = p.validate();
        if violations.is_empty() {
            Ok(p)
        } else {
            Err(PresentationError::Invalid(violations))
        }
    }

    /// Canonical text form: one `sheets` line (omitted when there are no
    /// sheets), then doubles, curves and branches in input order, then
    /// `genus` if set. Reparsing yields an equal presentation.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.sheets.is_empty() {
            out.push_str("sheets ");
            out.push_str(&self.sheets.join(" "));
            out.push('\n');
        }
        for d in &self.doubles {
            out.push_str(&format!(
                "double {} {} {}\n",
                d.under_from, d.over, d.under_to
            ));
        }
        for c in &self.curves {
            out.push_str(&format!("curve {} {} {}\n", c.from, c.to, c.layer));
        }
        for b in &self.branches {
            out.push_str(&format!("branch {b}\n"));
        }
        if let Some(g) = self.genus {
            out.push_str(&format!("genus {g}\n"));
        }
        out
    }

    /// Applies a bijective relabeling of sheet ids. The map must cover
    /// every sheet, targets must be valid ids and pairwise distinct.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Result<Self, PresentationError> {
        for id in &self.sheets {
            if !map.contains_key(id) {
                return Err(PresentationError::NonBijectiveRename(format!(
                    "sheet `{id}` has no image"
                )));
            }
        }
        let mut targets: Vec<&str> = Vec::with_capacity(self.sheets.len());
        for id in &self.sheets {
            let target = &map[id];
            if !valid_id(target) {
                return Err(PresentationError::NonBijectiveRename(format!(
                    "image `{target}` is not a valid id"
                )));
            }
            if targets.contains(&target.as_str()) {
                return Err(PresentationError::NonBijectiveRename(format!(
                    "two sheets map to `{target}`"
                )));
            }
            targets.push(target);
        }
        let rename_one = |id: &String| map[id].clone();
        Ok(Presentation {
            sheets: self.sheets.iter().map(rename_one).collect(),
            doubles: self
                .doubles
                .iter()
                .map(|d| Double {
                    under_from: rename_one(&d.under_from),
                    over: rename_one(&d.over),
                    under_to: rename_one(&d.under_to),
                })
                .collect(),
            curves: self
                .curves
                .iter()
                .map(|c| Curve {
                    from: rename_one(&c.from),
                    to: rename_one(&c.to),
                    layer: c.layer,
                })
                .collect(),
            branches: self.branches.iter().map(rename_one).collect(),
            genus: self.genus,
        })
    }

    /// Merges sheets joined by curve edges of the given layer (the union
    /// of edge-connected classes), dropping those edges. Every merged
    /// class is named after its earliest-declared member. Doubles, curves
    /// of the other layer, and branch markers are rewritten through the
    /// merge; `genus` is preserved. Returns the contracted presentation
    /// and the total map from old sheets onto new ones.
    ///
    /// Contracting a layer with no curve edges returns an identical
    /// presentation and the identity map.
    pub fn contract(&self, layer: Layer) -> (Presentation, ParentMap) {
        let n = self.sheets.len();
        let index = self.index_map();
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
        for c in &self.curves {
            if c.layer == layer.number() {
                let (a, b) = (index[c.from.as_str()], index[c.to.as_str()]);
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    // Root at the earlier declaration.
                    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                    parent[hi] = lo;
                }
            }
        }
        let rep_name = |parent: &mut Vec<usize>, id: &str| -> String {
            let r = find(parent, index[id]);
            self.sheets[r].clone()
        };
        let mut parent_mut = parent;
        let sheets: Vec<String> = (0..n)
            .filter(|&i| find(&mut parent_mut, i) == i)
            .map(|i| self.sheets[i].clone())
            .collect();
        let doubles = self
            .doubles
            .iter()
            .map(|d| Double {
                under_from: rep_name(&mut parent_mut, &d.under_from),
                over: rep_name(&mut parent_mut, &d.over),
                under_to: rep_name(&mut parent_mut, &d.under_to),
            })
            .collect();
        let curves = self
            .curves
            .iter()
            .filter(|c| c.layer != layer.number())
            .map(|c| Curve {
                from: rep_name(&mut parent_mut, &c.from),
                to: rep_name(&mut parent_mut, &c.to),
                layer: c.layer,
            })
            .collect();
        let branches = self
            .branches
            .iter()
            .map(|b| rep_name(&mut parent_mut, b))
            .collect();
        let map: BTreeMap<String, String> = self
            .sheets
            .iter()
            .map(|s| (s.clone(), rep_name(&mut parent_mut, s)))
            .collect();
        let contracted = Presentation {
            sheets,
            doubles,
            curves,
            branches,
            genus: self.genus,
        };
        (contracted, ParentMap(map))
    }
}

/// Total map from the sheets of a refined presentation onto the sheets of
/// a contracted one.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParentMap(BTreeMap<String, String>);

impl ParentMap {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, String)>) -> Self {
        ParentMap(pairs.into_iter().collect())
    }

    pub fn get(&self, sheet: &str) -> Option<&str> {
        self.0.get(sheet).map(|s| s.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// `self` followed by `later`: sheets of `self`'s source mapped through
    /// both contractions.
    pub fn then(&self, later: &ParentMap) -> ParentMap {
        ParentMap(
            self.0
                .iter()
                .map(|(k, v)| (k.clone(), later.get(v).unwrap_or(v.as_str()).to_string()))
                .collect(),
        )
    }
}

/// Names of the built-in example presentations.
pub const BUILTIN_PRESENTATIONS: [&str; 3] = ["satoh_d1", "satoh_d2", "sphere_circle"];

/// Built-in example presentations:
///
/// * `satoh_d1` — a torus diagram with one sheet and no double curves;
///   every element of a rack gives a coloring.
/// * `satoh_d2` — a torus diagram whose single sheet passes over itself
///   along one double curve, forcing `c(s) = c(s) * c(s)`; it has no
///   colorings by any rack without idempotent elements.
/// * `sphere_circle` — a sphere diagram with one circle of double points:
///   under sheets `p`, `q` and over sheet `o` with `c(q) = c(p) * c(o)`.
pub fn builtin_presentation(name: &str) -> Option<Presentation> {
    let text = match name {
        "satoh_d1" => "sheets s\ngenus 1\n",
        "satoh_d2" => "sheets s\ndouble s s s\ngenus 1\n",
        "sphere_circle" => "sheets p q o\ndouble p o q\ngenus 0\n",
        _ => return None,
    };
    Some(Presentation::parse(text).expect("builtin presentations are valid"))
}
