use std::fmt;

/// A list of violated checks; empty means everything passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport<V> {
    pub violations: Vec<V>,
}

impl<V> Default for ValidationReport<V> {
    fn default() -> Self {
        ValidationReport { violations: Vec::new() }
    }
}

impl<V> ValidationReport<V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, v: V) {
        self.violations.push(v);
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, V> {
        self.violations.iter()
    }
}

impl<V: fmt::Display> fmt::Display for ValidationReport<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("ok");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
