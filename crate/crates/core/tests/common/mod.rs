#![allow(dead_code)]

use chi_lie::catalog;
use chi_lie::chi_construct::{
    chi_from_presentation, chi_presentation, compute_chi_auto, ChiAlgebra,
};
use chi_lie::exact_linalg::{rat, Rational};
use chi_lie::free_lie::{BracketExpr, DEFAULT_BUDGET};
use chi_lie::homology::HomologyReport;
use chi_lie::verify::{run_checks, VerificationReport};
use chi_lie::LieAlgebra;
use num_traits::Zero;

pub fn chi_of(g: &LieAlgebra) -> ChiAlgebra {
    compute_chi_auto(g, None, DEFAULT_BUDGET).unwrap_or_else(|e| panic!("chi({}): {e}", g.name()))
}

pub fn verify(c: &ChiAlgebra) -> VerificationReport {
    let h = HomologyReport::compute(&c.base).unwrap();
    run_checks(c, &h).unwrap()
}

/// Changes one structure constant of χ so that `[d, ℓ] != 0` for the first
/// independent pair `d ∈ D`, `ℓ ∈ L`.
pub fn corrupt_chi_constant(c: &ChiAlgebra) -> ChiAlgebra {
    for d in c.d.basis_vectors() {
        for l in c.l.basis_vectors() {
            for i in 0..c.dim() {
                for j in 0..c.dim() {
                    let det: Rational = &d[i] * &l[j] - &d[j] * &l[i];
                    if i == j || det.is_zero() {
                        continue;
                    }
                    let old = c
                        .chi
                        .basis_bracket(i, j)
                        .into_iter()
                        .find(|(k, _)| *k == 0)
                        .map(|(_, v)| v)
                        .unwrap_or_else(Rational::zero);
                    let mut bad = c.clone();
                    bad.chi = c.chi.with_corrupted_constant(i, j, 0, old + rat(1));
                    return bad;
                }
            }
        }
    }
    panic!("no independent pair in D x L");
}

/// χ-presentation of `g` with the first polarization relator
/// `[x_i, x_j^ψ] + [x_j, x_i^ψ]` replaced by the difference.
pub fn chi_with_flipped_relator(g: &LieAlgebra, max_class: usize) -> ChiAlgebra {
    let n = g.dim();
    let mut p = chi_presentation(g).unwrap();
    let idx = n * (n - 1) + n;
    p.relators[idx] = BracketExpr::difference(
        BracketExpr::br(BracketExpr::gen(0), BracketExpr::gen(n + 1)),
        BracketExpr::br(BracketExpr::gen(1), BracketExpr::gen(n)),
    );
    chi_from_presentation(g, &p, max_class, DEFAULT_BUDGET).unwrap()
}

/// Adds one to the top-left entry of the matrix of ρ.
pub fn corrupt_rho_entry(c: &ChiAlgebra) -> ChiAlgebra {
    let mut bad = c.clone();
    let old = bad.rho.matrix.get(0, 0).clone();
    bad.rho.matrix.set(0, 0, old + rat(1));
    bad
}

pub fn nilpotent_entries() -> Vec<catalog::CatalogEntry> {
    catalog::standard_entries()
        .into_iter()
        .filter(|e| e.build().unwrap().nilpotency_class().is_some())
        .collect()
}
