use serde::Serialize;

/// Coordinate system of an ambient space: one name per variable.
///
/// When `has_z` is set, variable 0 is the homogenizing coordinate `z`.
/// Term order and linear-form normalization rank the `x` variables first
/// (in index order) and `z` last, so `x2 - z` is a normalized form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Space {
    names: Vec<String>,
    has_z: bool,
}

impl Space {
    /// Variables `(z, x1, ..., x_ell)`.
    pub fn standard(ell: usize) -> Self {
        let mut names = vec!["z".to_string()];
        names.extend((1..=ell).map(|i| format!("x{i}")));
        Space { names, has_z: true }
    }

    /// Variables `(z, x0, x1, ..., x_ell)` used by N-Ish arrangements.
    pub fn nish(ell: usize) -> Self {
        let mut names = vec!["z".to_string()];
        names.extend((0..=ell).map(|i| format!("x{i}")));
        Space { names, has_z: true }
    }

    /// Variables `(x1, ..., x_ell)` with no `z`.
    pub fn plain(ell: usize) -> Self {
        Space {
            names: (1..=ell).map(|i| format!("x{i}")).collect(),
            has_z: false,
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn has_z(&self) -> bool {
        self.has_z
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Variable indices from highest to lowest precedence.
    pub fn precedence(&self) -> Vec<usize> {
        if self.has_z {
            (1..self.names.len()).chain(std::iter::once(0)).collect()
        } else {
            (0..self.names.len()).collect()
        }
    }

    /// The space obtained by eliminating `var`.
    pub fn without(&self, var: usize) -> Space {
        let mut names = self.names.clone();
        names.remove(var);
        Space {
            names,
            has_z: self.has_z && var != 0,
        }
    }

    /// Inserts a fresh named variable at position `at` (`at >= 1` when `z` is present).
    pub fn with_inserted(&self, at: usize, name: &str) -> Space {
        assert!(!self.has_z || at >= 1, "z must stay at index 0");
        let mut names = self.names.clone();
        names.insert(at, name.to_string());
        Space {
            names,
            has_z: self.has_z,
        }
    }
}
