//! Named example algebras.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::rat;
use crate::free_lie::FreeNilpotentAlgebra;
use crate::lie_core::{simple_bracket, LieAlgebra};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Published value.
    Published,
    /// Follows from a closed form or a hand computation.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub quantity: &'static str,
    pub value: usize,
    pub provenance: Provenance,
}

/// A concrete catalog algebra together with whatever dimensions are known
/// in advance.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: Vec<usize>,
    pub expected: Vec<Expected>,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<LieAlgebra> {
        build(self.name, &self.params)
    }

    pub fn expected(&self, quantity: &str) -> Option<usize> {
        self.expected
            .iter()
            .find(|e| e.quantity == quantity)
            .map(|e| e.value)
    }

    pub fn label(&self) -> String {
        if self.params.is_empty() {
            self.name.to_string()
        } else {
            let p: Vec<String> = self.params.iter().map(ToString::to_string).collect();
            format!("{}({})", self.name, p.join(","))
        }
    }
}

/// Names accepted by [`build`] with their parameter arity.
pub const NAMES: &[(&str, usize)] = &[
    ("abelian", 1),
    ("heisenberg", 1),
    ("free_nilpotent", 2),
    ("paper_example_1", 0),
    ("sl2", 0),
    ("upper_triangular_nil", 1),
];

fn bad(name: &str, reason: impl Into<String>) -> Error {
    Error::BadParams {
        name: name.to_string(),
        reason: reason.into(),
    }
}

pub fn build(name: &str, params: &[usize]) -> Result<LieAlgebra> {
    let arity = NAMES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, a)| *a)
        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    if params.len() != arity {
        return Err(bad(
            name,
            format!("expected {arity} parameter(s), got {}", params.len()),
        ));
    }
    match name {
        "abelian" => {
            if params[0] == 0 {
                return Err(bad(name, "dimension must be positive"));
            }
            Ok(LieAlgebra::abelian(params[0]))
        }
        "heisenberg" => heisenberg(params[0]),
        "free_nilpotent" => {
            let f = FreeNilpotentAlgebra::build(params[0], params[1]).map_err(|e| match e {
                Error::BudgetExceeded { .. } => e,
                other => bad(name, other.to_string()),
            })?;
            Ok(f.into_algebra())
        }
        "paper_example_1" => paper_example_1(),
        "sl2" => sl2(),
        "upper_triangular_nil" => upper_triangular_nil(params[0]),
        _ => unreachable!("name checked against NAMES"),
    }
}

/// Heisenberg algebra of dimension `2k + 1`: `[x_i, y_i] = z`.
pub fn heisenberg(dim: usize) -> Result<LieAlgebra> {
    if dim < 3 || dim.is_multiple_of(2) {
        return Err(bad(
            "heisenberg",
            format!("dimension must be odd and at least 3, got {dim}"),
        ));
    }
    let k = (dim - 1) / 2;
    let mut labels: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
    labels.extend((1..=k).map(|i| format!("y{i}")));
    labels.push("z".into());
    let brackets = (0..k).map(|i| simple_bracket(i, k + i, 2 * k, 1)).collect();
    LieAlgebra::new(format!("heisenberg({dim})"), labels, brackets)
}

/// `a, b, c, z` with `[a,b] = [b,c] = [a,c] = z` central.
pub fn paper_example_1() -> Result<LieAlgebra> {
    LieAlgebra::new(
        "paper_example_1",
        ["a", "b", "c", "z"].map(String::from).to_vec(),
        vec![
            simple_bracket(0, 1, 3, 1),
            simple_bracket(0, 2, 3, 1),
            simple_bracket(1, 2, 3, 1),
        ],
    )
}

/// `sl2` in the basis `(e, h, f)`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> Result<LieAlgebra> {
    LieAlgebra::new(
        "sl2",
        ["e", "h", "f"].map(String::from).to_vec(),
        vec![
            simple_bracket(0, 1, 0, -2),
            simple_bracket(0, 2, 1, 1),
            simple_bracket(1, 2, 2, -2),
        ],
    )
}

/// Strictly upper triangular `n x n` matrices, basis `E_ij` (`i < j`) in
/// lexicographic order.
pub fn upper_triangular_nil(n: usize) -> Result<LieAlgebra> {
    if n < 2 {
        return Err(bad("upper_triangular_nil", format!("need n >= 2, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let idx = |p: (usize, usize)| pairs.iter().position(|&q| q == p).unwrap();
    let labels = pairs
        .iter()
        .map(|(i, j)| format!("E{}{}", i + 1, j + 1))
        .collect();
    let mut brackets = Vec::new();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate().skip(a + 1) {
            // [E_ij, E_kl] = delta_jk E_il - delta_li E_kj
            let mut terms = Vec::new();
            if j == k {
                terms.push((idx((i, l)), rat(1)));
            }
            if l == i {
                terms.push((idx((k, j)), rat(-1)));
            }
            if !terms.is_empty() {
                brackets.push(((a, b), terms));
            }
        }
    }
    LieAlgebra::new(format!("upper_triangular_nil({n})"), labels, brackets)
}

fn exp(quantity: &'static str, value: usize, provenance: Provenance) -> Expected {
    Expected {
        quantity,
        value,
        provenance,
    }
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The catalog instances exercised end to end, with their known dimensions.
pub fn standard_entries() -> Vec<CatalogEntry> {
    use Provenance::*;
    let mut out = Vec::new();
    for n in 1..=5 {
        let c2 = choose2(n);
        out.push(CatalogEntry {
            name: "abelian",
            params: vec![n],
            expected: vec![
                exp("dim_chi", 2 * n + c2, Published),
                exp("dim_w", c2, Published),
                exp("dim_r", 0, Published),
                exp("dim_h2", c2, Published),
            ],
        });
    }
    out.push(CatalogEntry {
        name: "heisenberg",
        params: vec![3],
        expected: vec![
            exp("dim_r", 0, Published),
            exp("dim_h2", 2, Derived),
            exp("dim_chi", 9, Derived),
        ],
    });
    out.push(CatalogEntry {
        name: "heisenberg",
        params: vec![5],
        expected: vec![],
    });
    out.push(CatalogEntry {
        name: "free_nilpotent",
        params: vec![2, 2],
        expected: vec![exp("dim_r", 0, Published), exp("dim_h2", 2, Derived)],
    });
    out.push(CatalogEntry {
        name: "free_nilpotent",
        params: vec![2, 3],
        expected: vec![exp("dim_r", 0, Published)],
    });
    out.push(CatalogEntry {
        name: "free_nilpotent",
        params: vec![3, 2],
        expected: vec![
            exp("dim_chi", 27, Published),
            exp("dim_r", 4, Published),
            exp("dim_h2", 8, Published),
            exp("dim_w", 12, Derived),
        ],
    });
    out.push(CatalogEntry {
        name: "paper_example_1",
        params: vec![],
        expected: vec![
            exp("dim_chi", 14, Published),
            exp("dim_r", 1, Published),
            exp("dim_h2", 4, Published),
            exp("dim_w", 5, Derived),
        ],
    });
    out.push(CatalogEntry {
        name: "sl2",
        params: vec![],
        expected: vec![
            exp("dim_chi", 9, Published),
            exp("dim_w", 0, Published),
            exp("dim_r", 0, Published),
            exp("dim_h2", 0, Derived),
        ],
    });
    out.push(CatalogEntry {
        name: "upper_triangular_nil",
        params: vec![3],
        expected: vec![exp("dim_r", 0, Published), exp("dim_h2", 2, Derived)],
    });
    out.push(CatalogEntry {
        name: "upper_triangular_nil",
        params: vec![4],
        expected: vec![],
    });
    out
}

/// JSON listing of the catalog: names with arity, and the standard instances.
pub fn listing() -> serde_json::Value {
    let names: Vec<serde_json::Value> = NAMES
        .iter()
        .map(|(n, a)| serde_json::json!({ "name": n, "param_arity": a }))
        .collect();
    serde_json::json!({ "names": names, "instances": standard_entries() })
}
