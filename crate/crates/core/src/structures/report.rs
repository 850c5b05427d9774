use std::fmt::Write as _;

use crate::field::Field;
use crate::tensor::TensorMap;

/// Whether an axiom decides the verdict or is only reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Required,
    /// Comultiplicativity of a structure map; reported under its own flag.
    Multiplicativity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomEntry<F: Field> {
    pub id: String,
    pub role: Role,
    pub passed: bool,
    pub residual: TensorMap<F>,
    pub first_failing_basis_index: Option<usize>,
}

impl<F: Field> AxiomEntry<F> {
    pub fn new(id: &str, role: Role, residual: TensorMap<F>) -> Self {
        let first = residual.first_nonzero_input();
        AxiomEntry {
            id: id.to_string(),
            role,
            passed: first.is_none(),
            residual,
            first_failing_basis_index: first,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport<F: Field> {
    pub subject: String,
    pub entries: Vec<AxiomEntry<F>>,
    pub notes: Vec<String>,
}

impl<F: Field> CheckReport<F> {
    /// All required axioms hold.
    pub fn passes(&self) -> bool {
        self.entries.iter().filter(|e| e.role == Role::Required).all(|e| e.passed)
    }

    /// All multiplicativity entries hold (vacuously true if none were checked).
    pub fn multiplicative(&self) -> bool {
        self.entries
            .iter()
            .filter(|e| e.role == Role::Multiplicativity)
            .all(|e| e.passed)
    }

    pub fn passes_strict(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn entry(&self, id: &str) -> Option<&AxiomEntry<F>> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.entries.iter().filter(|e| !e.passed).map(|e| e.id.as_str()).collect()
    }

    /// Verdict-only view: `(id, passed)` per entry.
    pub fn verdicts(&self) -> Vec<(String, bool)> {
        self.entries.iter().map(|e| (e.id.clone(), e.passed)).collect()
    }

    /// Deterministic text rendering; basis indices are 1-based.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "check {}", self.subject);
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        for e in &self.entries {
            let tag = match e.role {
                Role::Required => "",
                Role::Multiplicativity => " [mult]",
            };
            if e.passed {
                let _ = writeln!(s, "{}{} PASS", e.id, tag);
            } else {
                let i = e.first_failing_basis_index.expect("failing entry has an index");
                let _ = writeln!(s, "{}{} FAIL at e{}", e.id, tag, i + 1);
                let _ = writeln!(s, "  residual {}", render_support(&e.residual));
            }
        }
        let _ = writeln!(
            s,
            "verdict: {}",
            if self.passes() { "PASS" } else { "FAIL" }
        );
        let _ = writeln!(
            s,
            "multiplicative: {}",
            if self.multiplicative() { "yes" } else { "no" }
        );
        s
    }
}

/// `e1 -> 2 (e1,e2) + ...; e2 -> ...` over nonzero rows only.
pub fn render_support<F: Field>(t: &TensorMap<F>) -> String {
    let mut rows: Vec<String> = Vec::new();
    let mut cur: Option<(usize, Vec<String>)> = None;
    for (i, js, c) in t.support() {
        let idx: Vec<String> = js.iter().map(|j| format!("e{}", j + 1)).collect();
        let term = format!("{} ({})", c, idx.join(","));
        match &mut cur {
            Some((ci, terms)) if *ci == i => terms.push(term),
            _ => {
                if let Some((ci, terms)) = cur.take() {
                    rows.push(format!("e{} -> {}", ci + 1, terms.join(" + ")));
                }
                cur = Some((i, vec![term]));
            }
        }
    }
    if let Some((ci, terms)) = cur {
        rows.push(format!("e{} -> {}", ci + 1, terms.join(" + ")));
    }
    if rows.is_empty() {
        "0".to_string()
    } else {
        rows.join("; ")
    }
}
