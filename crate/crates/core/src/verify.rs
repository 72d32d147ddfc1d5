//! Structural checks C1-C12 on a computed χ(g).

use serde::Serialize;
use serde_json::{json, Value};

use crate::chi_construct::{image_rho_formula, r_seeds, ChiAlgebra};
use crate::error::{Error, Result};
use crate::exact_linalg::{
    add_vec, format_vector, is_zero_vec, sub_vec, unit_vec, Subspace, Vector,
};
use crate::homology::{h1, HomologyReport};
use crate::lie_core::{LieAlgebra, LieHom};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub desc: String,
    pub status: Status,
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub algebra: String,
    pub checks: Vec<Check>,
    pub all_passed: bool,
}

impl VerificationReport {
    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn status(&self, id: &str) -> Option<Status> {
        self.check(id).map(|c| c.status)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.id.as_str())
            .collect()
    }
}

fn pass(witness: Option<Value>) -> (Status, Option<Value>) {
    (Status::Pass, witness)
}

fn fail(witness: Value) -> (Status, Option<Value>) {
    (Status::Fail, Some(witness))
}

fn skip(reason: &str) -> (Status, Option<Value>) {
    (Status::Skip, Some(json!({ "reason": reason })))
}

fn fmt(v: &[crate::exact_linalg::Rational]) -> Value {
    json!(format_vector(v))
}

/// First pair of basis vectors of `a` and `b` with nonzero bracket.
fn nonzero_bracket(g: &LieAlgebra, a: &Subspace, b: &Subspace, same: bool) -> Option<Value> {
    let av = a.basis_vectors();
    let bv = b.basis_vectors();
    for (i, x) in av.iter().enumerate() {
        for (j, y) in bv.iter().enumerate() {
            if same && j <= i {
                continue;
            }
            let z = g.bracket_unchecked(x, y);
            if !is_zero_vec(&z) {
                return Some(
                    json!({ "pair": [i, j], "left": fmt(x), "right": fmt(y), "bracket": fmt(&z) }),
                );
            }
        }
    }
    None
}

/// A basis vector of one subspace missing from the other, if they differ.
fn subspace_difference(a: &Subspace, b: &Subspace) -> Option<Value> {
    if a.ambient_dim() != b.ambient_dim() {
        return Some(json!({ "ambient": [a.ambient_dim(), b.ambient_dim()] }));
    }
    for v in a.basis_vectors() {
        if !b.contains(&v) {
            return Some(json!({ "only_in_first": fmt(&v), "dims": [a.dim(), b.dim()] }));
        }
    }
    for v in b.basis_vectors() {
        if !a.contains(&v) {
            return Some(json!({ "only_in_second": fmt(&v), "dims": [a.dim(), b.dim()] }));
        }
    }
    None
}

/// Checks `map` against the bracket of `chi` rather than its stored domain.
fn hom_witness(chi: &LieAlgebra, map: &LieHom) -> Option<(usize, usize)> {
    let m = LieHom {
        domain: chi.clone(),
        codomain: map.codomain.clone(),
        matrix: map.matrix.clone(),
    };
    m.hom_witness()
}

fn c1(c: &ChiAlgebra) -> (Status, Option<Value>) {
    match nonzero_bracket(&c.chi, &c.w, &c.w, true) {
        Some(w) => fail(w),
        None => pass(Some(json!({ "dim_w": c.w.dim() }))),
    }
}

fn c2(c: &ChiAlgebra) -> (Status, Option<Value>) {
    match nonzero_bracket(&c.chi, &c.d, &c.l, false) {
        Some(w) => fail(w),
        None => pass(None),
    }
}

fn c3(c: &ChiAlgebra) -> (Status, Option<Value>) {
    let meet = match c.l.intersect(&c.d) {
        Ok(m) => m,
        Err(e) => return fail(json!({ "error": e.to_string() })),
    };
    let comparisons = [
        ("W = L ∩ D", &c.w, meet),
        ("W = ker rho", &c.w, c.rho.kernel()),
        ("L = ker alpha", &c.l, c.alpha.kernel()),
        ("D = ker beta", &c.d, c.beta.kernel()),
    ];
    for (what, map) in [("alpha", &c.alpha), ("beta", &c.beta)] {
        if let Some((i, j)) = hom_witness(&c.chi, map) {
            return fail(json!({ "not_a_homomorphism": what, "pair": [i, j] }));
        }
    }
    for (what, stored, computed) in comparisons {
        if let Some(w) = subspace_difference(stored, &computed) {
            return fail(json!({ "identity": what, "difference": w }));
        }
    }
    pass(None)
}

fn c4(c: &ChiAlgebra) -> (Status, Option<Value>) {
    let image = c.rho.image();
    let formula = image_rho_formula(&c.base);
    if let Some(w) = subspace_difference(&image, &formula) {
        return fail(w);
    }
    let expected = 2 * c.n() + c.base.derived().dim();
    if image.dim() != expected {
        return fail(json!({ "dim_image": image.dim(), "expected": expected }));
    }
    pass(Some(json!({ "dim_image": image.dim() })))
}

fn c5(c: &ChiAlgebra, h2: usize) -> (Status, Option<Value>) {
    let dims = json!({ "dim_w": c.w.dim(), "dim_r": c.r.dim(), "h2": h2 });
    if let Some(v) = c.r.basis_vectors().into_iter().find(|v| !c.w.contains(v)) {
        return fail(json!({ "r_not_in_w": fmt(&v), "dims": dims }));
    }
    // R is spanned by the triple brackets themselves
    let seeds = Subspace::span(c.dim(), &r_seeds(&c.chi, &c.gen_images, &c.l));
    if seeds != c.r {
        return fail(json!({ "seed_span": seeds.dim(), "ideal": c.r.dim(), "dims": dims }));
    }
    if c.w.dim() - c.r.dim() != h2 {
        return fail(dims);
    }
    pass(Some(dims))
}

fn c6(c: &ChiAlgebra, h2: usize) -> (Status, Option<Value>) {
    let bound = 2 * c.n() + c.base.derived().dim() + h2;
    let w = json!({ "dim_chi": c.dim(), "bound": bound, "dim_r": c.r.dim() });
    if c.dim() < bound || (c.dim() == bound) != c.r.is_zero() {
        return fail(w);
    }
    pass(Some(w))
}

fn c7(c: &ChiAlgebra) -> (Status, Option<Value>) {
    let seeds: Vec<Vector> = (0..c.n()).map(|i| sub_vec(c.x(i), c.x_psi(i))).collect();
    let closure = c.chi.subalgebra_closure(&seeds);
    match subspace_difference(&closure, &c.l) {
        Some(w) => fail(w),
        None => pass(None),
    }
}

fn c8(c: &ChiAlgebra) -> (Status, Option<Value>) {
    for i in 0..c.n() {
        for j in 0..c.n() {
            let a = c.chi.bracket_unchecked(c.x(i), c.x_psi(j));
            let b = c.chi.bracket_unchecked(c.x_psi(i), c.x(j));
            if a != b {
                return fail(json!({ "pair": [i, j], "left": fmt(&a), "right": fmt(&b) }));
            }
        }
    }
    pass(None)
}

fn c9(c: &ChiAlgebra) -> (Status, Option<Value>) {
    let n = c.n();
    let quotient = c.l.dim() - c.chi.bracket_span(&c.l, &c.l).dim();
    let bound = n + n * n.saturating_sub(1) / 2;
    let w = json!({ "dim_l_ab": quotient, "bound": bound });
    if quotient > bound {
        fail(w)
    } else {
        pass(Some(w))
    }
}

/// Pairs of candidates (basis vectors and sums of two) generating `g`.
pub fn find_two_generators(g: &LieAlgebra) -> Option<(Vector, Vector)> {
    let n = g.dim();
    if n == 0 || h1(g) > 2 {
        return None;
    }
    let mut cands: Vec<Vector> = (0..n).map(|i| unit_vec(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            cands.push(add_vec(&unit_vec(n, i), &unit_vec(n, j)));
        }
    }
    for (a, x) in cands.iter().enumerate() {
        for y in &cands[a..] {
            if g.subalgebra_closure(&[x.clone(), y.clone()]).dim() == n {
                return Some((x.clone(), y.clone()));
            }
        }
    }
    None
}

fn c10(c: &ChiAlgebra) -> (Status, Option<Value>) {
    match find_two_generators(&c.base) {
        None => skip("no two-element generating set among the candidates"),
        Some((x, y)) => {
            let w = json!({ "generators": [fmt(&x), fmt(&y)], "dim_r": c.r.dim() });
            if c.r.is_zero() {
                pass(Some(w))
            } else {
                fail(w)
            }
        }
    }
}

fn c11(c: &ChiAlgebra) -> (Status, Option<Value>) {
    if !c.base.is_perfect() {
        return skip("base algebra is not perfect");
    }
    let center = c.chi.center();
    if let Some(v) =
        c.w.basis_vectors()
            .into_iter()
            .find(|v| !center.contains(v))
    {
        return fail(json!({ "noncentral": fmt(&v) }));
    }
    if !c.r.is_zero() {
        return fail(json!({ "dim_r": c.r.dim() }));
    }
    pass(None)
}

fn c12(c: &ChiAlgebra) -> (Status, Option<Value>) {
    if let Some((i, j)) = hom_witness(&c.chi, &c.rho) {
        return fail(json!({ "not_a_homomorphism": "rho", "pair": [i, j] }));
    }
    let img = c.rho.image().dim();
    let w = json!({ "dim_chi": c.dim(), "dim_w": c.w.dim(), "dim_image": img });
    if c.dim() - c.w.dim() != img {
        fail(w)
    } else {
        pass(Some(w))
    }
}

pub fn run_checks(c: &ChiAlgebra, h: &HomologyReport) -> Result<VerificationReport> {
    let base_h1 = h1(&c.base);
    if base_h1 != h.h1 {
        return Err(Error::InputMismatch(format!(
            "homology report has h1 = {} but {} has h1 = {base_h1}",
            h.h1,
            c.base.name()
        )));
    }
    let h2 = h.h2_ce;
    let results = [
        ("C1", "W is an abelian ideal", c1(c)),
        ("C2", "[D, L] = 0", c2(c)),
        (
            "C3",
            "W = L ∩ D with L, D, W the kernels of the homomorphisms alpha, beta, rho",
            c3(c),
        ),
        ("C4", "Im rho = {(x, y, z) : x - y + z in g'}", c4(c)),
        ("C5", "R ⊆ W and dim W - dim R = dim H2(g)", c5(c, h2)),
        (
            "C6",
            "dim chi >= 2 dim g + dim g' + dim H2, with equality iff R = 0",
            c6(c, h2),
        ),
        ("C7", "L is generated by the x - x^psi", c7(c)),
        ("C8", "[x, y^psi] = [x^psi, y] for all generators", c8(c)),
        ("C9", "dim L/L' <= n + C(n, 2)", c9(c)),
        ("C10", "g generated by two elements implies R = 0", c10(c)),
        ("C11", "g perfect implies W central and R = 0", c11(c)),
        (
            "C12",
            "rho is a homomorphism and dim chi - dim W = dim Im rho",
            c12(c),
        ),
    ];
    let mut checks: Vec<Check> = results
        .into_iter()
        .map(|(id, desc, (status, witness))| Check {
            id: id.into(),
            desc: desc.into(),
            status,
            witness,
        })
        .collect();
    checks.sort_by_key(|c| c.id[1..].parse::<usize>().unwrap_or(usize::MAX));
    let all_passed = checks.iter().all(|c| c.status != Status::Fail);
    Ok(VerificationReport {
        algebra: c.base.name().to_string(),
        checks,
        all_passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::chi_construct::{
        compute_chi, compute_chi_abelian, compute_chi_superperfect, default_max_class,
    };

    fn report(g: &LieAlgebra) -> VerificationReport {
        let c = compute_chi(g, default_max_class(g).unwrap()).unwrap();
        run_checks(&c, &HomologyReport::compute(g).unwrap()).unwrap()
    }

    #[test]
    fn abelian_three() {
        let g = LieAlgebra::abelian(3);
        let r = report(&g);
        assert!(r.all_passed, "{:?}", r.failed());
        for id in ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C12"] {
            assert_eq!(r.status(id), Some(Status::Pass), "{id}");
        }
        assert_eq!(r.check("C5").unwrap().witness.as_ref().unwrap()["h2"], 3);
        let closed = compute_chi_abelian(&g).unwrap();
        assert!(
            run_checks(&closed, &HomologyReport::compute(&g).unwrap())
                .unwrap()
                .all_passed
        );
    }

    #[test]
    fn heisenberg_two_generated() {
        let r = report(&catalog::build("heisenberg", &[3]).unwrap());
        assert!(r.all_passed);
        assert_eq!(r.status("C10"), Some(Status::Pass));
        assert_eq!(r.status("C11"), Some(Status::Skip));
    }

    #[test]
    fn sl2_perfect_path() {
        let g = catalog::sl2().unwrap();
        let c = compute_chi_superperfect(&g).unwrap();
        let r = run_checks(&c, &HomologyReport::compute(&g).unwrap()).unwrap();
        assert!(r.all_passed, "{:?}", r.failed());
        assert_eq!(r.status("C11"), Some(Status::Pass));
        assert_eq!(r.status("C5"), Some(Status::Pass));
    }

    #[test]
    fn corrupted_chi_fails() {
        let g = catalog::build("heisenberg", &[3]).unwrap();
        let c = compute_chi(&g, default_max_class(&g).unwrap()).unwrap();
        let h = HomologyReport::compute(&g).unwrap();
        let mut bad = c.clone();
        // extra multiple of e_0 in [x_1, y^psi] breaks polarization
        let xi = c
            .x(0)
            .iter()
            .position(|v| !num_traits::Zero::is_zero(v))
            .unwrap();
        let yj = c
            .x_psi(1)
            .iter()
            .position(|v| !num_traits::Zero::is_zero(v))
            .unwrap();
        bad.chi = c
            .chi
            .with_corrupted_constant(xi, yj, 0, crate::exact_linalg::rat(7));
        let r = run_checks(&bad, &h).unwrap();
        assert!(!r.all_passed);
        assert!(r
            .checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .all(|c| c.witness.is_some()));
    }

    #[test]
    fn mismatch() {
        let c = compute_chi_abelian(&LieAlgebra::abelian(2)).unwrap();
        let h = HomologyReport::compute(&LieAlgebra::abelian(3)).unwrap();
        assert!(matches!(run_checks(&c, &h), Err(Error::InputMismatch(_))));
    }

    #[test]
    fn deterministic() {
        let g = catalog::paper_example_1().unwrap();
        assert_eq!(report(&g), report(&g));
    }
}
