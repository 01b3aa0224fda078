use serde::Serialize;

/// Enumeration bounds: `ρ` for twisted involutions, `ℓ` for free elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub max_rho: usize,
    pub max_len: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_rho: 4,
            max_len: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: String,
    pub witness: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub spec: String,
    pub bounds: Bounds,
    pub check: String,
    pub tuples_checked: u64,
    pub violations: Vec<Violation>,
    /// Observations that are not failures, as `label: count`.
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}
