//! Variable contexts: which coordinates a form may mention and which relations hold among them.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// Coordinates `(y_0, ..., y_r)` with `Σ y_i = 1` and `Σ dy_i = 0`; `y_0` is eliminated.
    Affine,
    /// No relation.
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableGroup {
    pub kind: GroupKind,
    pub names: Vec<String>,
}

/// Where a coordinate lives after canonicalization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coordinate {
    pub name: String,
    pub group: usize,
    /// Position in the reduced (non-eliminated) variable list, `None` if eliminated.
    pub reduced: Option<usize>,
}

/// An ordered list of variable groups. Polynomial variables and exterior generators share one
/// index set: the non-eliminated coordinates, in group order then coordinate order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableContext {
    groups: Vec<VariableGroup>,
    coordinates: Vec<Coordinate>,
    reduced: Vec<usize>,
}

/// Exterior words are stored as bitmasks.
pub const MAX_REDUCED_VARIABLES: usize = 64;

impl VariableContext {
    pub fn new(groups: Vec<VariableGroup>) -> Result<Arc<Self>> {
        let mut coordinates = Vec::new();
        let mut reduced = Vec::new();
        for (g, group) in groups.iter().enumerate() {
            if group.names.is_empty() {
                return Err(Error::InvalidContext(format!("group {g} is empty")));
            }
            for (i, name) in group.names.iter().enumerate() {
                if coordinates.iter().any(|c: &Coordinate| &c.name == name) {
                    return Err(Error::InvalidContext(format!("duplicate symbol {name}")));
                }
                let eliminated = group.kind == GroupKind::Affine && i == 0;
                let slot = (!eliminated).then(|| {
                    reduced.push(coordinates.len());
                    reduced.len() - 1
                });
                coordinates.push(Coordinate {
                    name: name.clone(),
                    group: g,
                    reduced: slot,
                });
            }
        }
        if reduced.len() > MAX_REDUCED_VARIABLES {
            return Err(Error::InvalidContext(format!(
                "{} free coordinates exceed the limit of {MAX_REDUCED_VARIABLES}",
                reduced.len()
            )));
        }
        Ok(Arc::new(Self {
            groups,
            coordinates,
            reduced,
        }))
    }

    fn affine(prefix: &str, first: Option<&str>, count: usize) -> VariableGroup {
        let names = first
            .map(str::to_string)
            .into_iter()
            .chain((0..count).map(|i| format!("{prefix}{i}")))
            .collect();
        VariableGroup {
            kind: GroupKind::Affine,
            names,
        }
    }

    /// `Ω_m`: one affine group `(x_0, ..., x_m)`.
    pub fn standard(m: usize) -> Arc<Self> {
        Self::new(vec![Self::affine("x", None, m + 1)]).expect("standard context")
    }

    /// `Ω̂_n`: one affine group `(s, t_0, ..., t_n)`.
    pub fn hat(n: usize) -> Arc<Self> {
        Self::new(vec![Self::affine("t", Some("s"), n + 1)]).expect("hat context")
    }

    /// `Ω̂_n ⊗ Ω_m`, hat generators first.
    pub fn mixed(n: usize, m: usize) -> Arc<Self> {
        Self::new(vec![
            Self::affine("t", Some("s"), n + 1),
            Self::affine("x", None, m + 1),
        ])
        .expect("mixed context")
    }

    /// `Ω_m[s] ⊗ Λ(ds)`: a free coordinate `s` followed by `(x_0, ..., x_m)`.
    pub fn interval(m: usize) -> Arc<Self> {
        Self::new(vec![
            VariableGroup {
                kind: GroupKind::Free,
                names: vec!["s".to_string()],
            },
            Self::affine("x", None, m + 1),
        ])
        .expect("interval context")
    }

    pub fn groups(&self) -> &[VariableGroup] {
        &self.groups
    }

    pub fn coordinates(&self) -> &[Coordinate] {
        &self.coordinates
    }

    pub fn num_coordinates(&self) -> usize {
        self.coordinates.len()
    }

    /// Number of non-eliminated coordinates.
    pub fn num_reduced(&self) -> usize {
        self.reduced.len()
    }

    /// Full coordinate index of a reduced variable.
    pub fn reduced_to_full(&self, r: usize) -> usize {
        self.reduced[r]
    }

    pub fn reduced_name(&self, r: usize) -> &str {
        &self.coordinates[self.reduced[r]].name
    }

    /// Full coordinate index of coordinate `i` in group `g`.
    pub fn coordinate_index(&self, g: usize, i: usize) -> usize {
        self.groups[..g]
            .iter()
            .map(|grp| grp.names.len())
            .sum::<usize>()
            + i
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.coordinates.iter().position(|c| c.name == name)
    }

    /// Full indices of the coordinates in group `g`.
    pub fn group_range(&self, g: usize) -> std::ops::Range<usize> {
        let start = self.coordinate_index(g, 0);
        start..start + self.groups[g].names.len()
    }

    /// `Some(m)` if this is `Std(m)`.
    pub fn standard_dimension(&self) -> Option<usize> {
        let m = self.coordinates.len().checked_sub(1)?;
        (*self == *Self::standard(m)).then_some(m)
    }

    /// `Some(m)` if this is `Interval(m)`.
    pub fn interval_dimension(&self) -> Option<usize> {
        let m = self.coordinates.len().checked_sub(2)?;
        (*self == *Self::interval(m)).then_some(m)
    }

    /// `Some(m)` if this is `Mixed(n, m)` for the given `n`.
    pub fn mixed_dimension(&self, n: usize) -> Option<usize> {
        let m = self.coordinates.len().checked_sub(n + 3)?;
        (*self == *Self::mixed(n, m)).then_some(m)
    }

    /// `Some(n)` if this is `Hat(n)`.
    pub fn hat_dimension(&self) -> Option<usize> {
        let n = self.coordinates.len().checked_sub(2)?;
        (*self == *Self::hat(n)).then_some(n)
    }
}

impl fmt::Display for VariableContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, group) in self.groups.iter().enumerate() {
            if g > 0 {
                write!(f, " ⊗ ")?;
            }
            let kind = match group.kind {
                GroupKind::Affine => "affine",
                GroupKind::Free => "free",
            };
            write!(f, "{kind}({})", group.names.join(","))?;
        }
        Ok(())
    }
}
