//! Second homology `H_2(g; Q)`: Chevalley–Eilenberg complex, Hopf formula in a
//! truncated free algebra, and the non-abelian exterior square. Also builds
//! the stem extension `0 -> H_2 -> h -> g -> 0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::{
    is_zero_vec, zero_vec, EchelonBasis, Matrix, Rational, Subspace, Vector,
};
use crate::free_lie::{FreeNilpotentAlgebra, DEFAULT_BUDGET};
use crate::lie_core::{terms_to_vec, LieAlgebra, LieHom};
use crate::nilpotent_quotient::Presentation;
use num_traits::Zero;

/// Index of `e_i ^ e_j` (`i < j`) in the lexicographic basis of `Λ²` over `n`.
pub fn wedge2_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

pub fn wedge2_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

pub fn wedge3_triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// `u ^ v` in `Λ²`.
pub fn wedge(n: usize, u: &[Rational], v: &[Rational]) -> Vector {
    let mut out = zero_vec(n * n.saturating_sub(1) / 2);
    for a in (0..n).filter(|&a| !u[a].is_zero()) {
        for b in (0..n).filter(|&b| !v[b].is_zero()) {
            if a == b {
                continue;
            }
            let c = &u[a] * &v[b];
            if a < b {
                out[wedge2_index(n, a, b)] += c;
            } else {
                out[wedge2_index(n, b, a)] -= c;
            }
        }
    }
    out
}

pub fn h1(g: &LieAlgebra) -> usize {
    g.dim() - g.derived().dim()
}

/// `∂₂(e_i ^ e_j) = [e_i, e_j]`, an `n x C(n,2)` matrix.
pub fn boundary2(g: &LieAlgebra) -> Matrix {
    let n = g.dim();
    let cols: Vec<Vector> = wedge2_pairs(n)
        .into_iter()
        .map(|(i, j)| terms_to_vec(n, &g.basis_bracket(i, j)))
        .collect();
    Matrix::from_columns(n, &cols)
}

/// `∂₃(e_i ^ e_j ^ e_k) = [e_i,e_j] ^ e_k - [e_i,e_k] ^ e_j + [e_j,e_k] ^ e_i`.
pub fn boundary3(g: &LieAlgebra) -> Matrix {
    let n = g.dim();
    let b = |i: usize, j: usize| terms_to_vec(n, &g.basis_bracket(i, j));
    let cols: Vec<Vector> = wedge3_triples(n)
        .into_iter()
        .map(|(i, j, k)| {
            let mut col = wedge(n, &b(i, j), &g.basis_vector(k));
            for (x, y) in col.iter_mut().zip(wedge(n, &b(i, k), &g.basis_vector(j))) {
                *x -= y;
            }
            for (x, y) in col.iter_mut().zip(wedge(n, &b(j, k), &g.basis_vector(i))) {
                *x += y;
            }
            col
        })
        .collect();
    Matrix::from_columns(n * n.saturating_sub(1) / 2, &cols)
}

/// `H_2` from the Chevalley–Eilenberg complex.
#[derive(Clone, Debug)]
pub struct CeHomology {
    pub dim: usize,
    pub cycles: Subspace,
    pub boundaries: Subspace,
    /// Cycles whose classes form a basis of `H_2`.
    pub lift: Vec<Vector>,
}

pub fn h2_ce(g: &LieAlgebra) -> CeHomology {
    let cycles = boundary2(g).kernel();
    let boundaries = boundary3(g).image();
    let mut span = EchelonBasis::new(cycles.ambient_dim());
    for b in boundaries.basis_vectors() {
        span.insert(&b);
    }
    let lift: Vec<Vector> = cycles
        .basis_vectors()
        .into_iter()
        .filter(|z| span.insert(z).is_some())
        .collect();
    CeHomology {
        dim: cycles.dim() - boundaries.dim(),
        cycles,
        boundaries,
        lift,
    }
}

/// The data of the Hopf formula `H_2 = (F' ∩ r) / [F, r]` for the
/// structure-constant presentation of a nilpotent `g`, computed in the free
/// nilpotent algebra of class `class(g) + 1`.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub free: FreeNilpotentAlgebra,
    pub relations: Subspace,
    pub derived_meet_relations: Subspace,
    pub commutator: Subspace,
}

impl HopfData {
    pub fn dim(&self) -> usize {
        self.derived_meet_relations.dim() - self.commutator.dim()
    }
}

pub fn hopf_data(g: &LieAlgebra, budget: usize) -> Result<HopfData> {
    let class = g
        .nilpotency_class()
        .ok_or_else(|| Error::NotNilpotent(g.name().to_string()))?;
    let n = g.dim();
    let free = FreeNilpotentAlgebra::build_with_budget(n.max(1), class + 1, budget)?;
    let fa = free.algebra();
    let p = Presentation::of_algebra(g);
    let values: Vec<Vector> = p
        .relators
        .iter()
        .map(|r| free.eval(r))
        .collect::<Result<_>>()?;
    let gens: Vec<Vector> = (0..n).map(|i| free.generator(i)).collect();
    let relations = fa.closure_under(&values, &gens);
    // [F, r] is spanned by [x, ρ] for generators x because r is an ideal
    let mut comm = EchelonBasis::new(free.dim());
    for rho in relations.basis_vectors() {
        for x in &gens {
            comm.insert(&fa.bracket_unchecked(x, &rho));
        }
    }
    let commutator = comm.to_subspace();
    // The basis is sorted by degree and r is in reduced echelon form, so the
    // rows of r lying in F' are exactly those with a pivot of degree >= 2.
    let rows: Vec<Vector> = relations
        .basis_vectors()
        .into_iter()
        .zip(relations.pivots())
        .filter(|(_, &p)| free.degree_of(p) >= 2)
        .map(|(v, _)| v)
        .collect();
    let derived_meet_relations = Subspace::span(free.dim(), &rows);
    debug_assert!(derived_meet_relations.contains_subspace(&commutator));
    Ok(HopfData {
        free,
        relations,
        derived_meet_relations,
        commutator,
    })
}

pub fn h2_hopf(g: &LieAlgebra) -> Result<usize> {
    h2_hopf_with_budget(g, DEFAULT_BUDGET)
}

pub fn h2_hopf_with_budget(g: &LieAlgebra, budget: usize) -> Result<usize> {
    Ok(hopf_data(g, budget)?.dim())
}

/// Non-abelian exterior square `g ∧ g` as a quotient of `Λ²g`.
#[derive(Clone, Debug)]
pub struct ExteriorSquare {
    pub base: LieAlgebra,
    pub dim: usize,
    /// Class of `e_i ∧ e_j` for every pair `i < j`, in quotient coordinates.
    pub generators: Vec<Vector>,
    pub relations: Subspace,
    pub table: LieAlgebra,
    pub phi: LieHom,
}

pub fn exterior_square(g: &LieAlgebra) -> Result<ExteriorSquare> {
    let n = g.dim();
    let pairs = wedge2_pairs(n);
    let n2 = pairs.len();
    let e = |i: usize| g.basis_vector(i);
    let br = |i: usize, j: usize| terms_to_vec(n, &g.basis_bracket(i, j));

    let mut rel = EchelonBasis::new(n2);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // [x1,x2] ∧ y - [x1,y] ∧ x2 - x1 ∧ [x2,y]
                let mut r5 = wedge(n, &br(i, j), &e(k));
                for (a, b) in r5.iter_mut().zip(wedge(n, &br(i, k), &e(j))) {
                    *a -= b;
                }
                for (a, b) in r5.iter_mut().zip(wedge(n, &e(i), &br(j, k))) {
                    *a -= b;
                }
                rel.insert(&r5);
                // x ∧ [y1,y2] - [x,y1] ∧ y2 - y1 ∧ [x,y2]
                let mut r6 = wedge(n, &e(i), &br(j, k));
                for (a, b) in r6.iter_mut().zip(wedge(n, &br(i, j), &e(k))) {
                    *a -= b;
                }
                for (a, b) in r6.iter_mut().zip(wedge(n, &e(j), &br(i, k))) {
                    *a -= b;
                }
                rel.insert(&r6);
            }
        }
    }
    let relations = rel.to_subspace();

    // [x1 ∧ y1, x2 ∧ y2] = [x1,y1] ∧ [x2,y2] on Λ²
    let wedge_bracket = |u: &[Rational], v: &[Rational]| -> Vector {
        let bu = boundary_apply(g, &pairs, u);
        let bv = boundary_apply(g, &pairs, v);
        wedge(n, &bu, &bv)
    };
    for r in relations.basis_vectors() {
        for q in 0..n2 {
            let mut unit = zero_vec(n2);
            unit[q] = Rational::from_integer(1.into());
            if !relations.contains(&wedge_bracket(&r, &unit)) {
                return Err(Error::ConsistencyFailure(format!(
                    "exterior square bracket not well defined on {}",
                    g.name()
                )));
            }
        }
    }
    let keep = relations.complement_coords();
    let labels: Vec<String> = keep
        .iter()
        .map(|&p| format!("{}^{}", g.labels()[pairs[p].0], g.labels()[pairs[p].1]))
        .collect();
    let unit = |p: usize| {
        let mut v = zero_vec(n2);
        v[p] = Rational::from_integer(1.into());
        v
    };
    let table =
        LieAlgebra::from_dense_unchecked(format!("{} ^ {}", g.name(), g.name()), labels, |a, b| {
            relations.quotient_coords(&wedge_bracket(&unit(keep[a]), &unit(keep[b])))
        });
    let generators: Vec<Vector> = (0..n2)
        .map(|p| relations.quotient_coords(&unit(p)))
        .collect();
    let d2 = boundary2(g);
    for r in relations.basis_vectors() {
        if !is_zero_vec(&d2.mul_vec(&r)?) {
            return Err(Error::ConsistencyFailure(
                "commutator map does not vanish on relations".into(),
            ));
        }
    }
    let cols: Vec<Vector> = keep.iter().map(|&p| d2.column(p)).collect();
    let phi = LieHom {
        domain: table.clone(),
        codomain: g.clone(),
        matrix: Matrix::from_columns(n, &cols),
    };
    Ok(ExteriorSquare {
        base: g.clone(),
        dim: keep.len(),
        generators,
        relations,
        table,
        phi,
    })
}

fn boundary_apply(g: &LieAlgebra, pairs: &[(usize, usize)], u: &[Rational]) -> Vector {
    let n = g.dim();
    let mut out = zero_vec(n);
    for (p, &(i, j)) in pairs.iter().enumerate() {
        if u[p].is_zero() {
            continue;
        }
        for (k, c) in g.basis_bracket(i, j) {
            out[k] += &u[p] * c;
        }
    }
    out
}

pub fn schur_via_exterior(g: &LieAlgebra) -> Result<usize> {
    Ok(exterior_square(g)?.phi.kernel().dim())
}

/// `0 -> z -> h -> g -> 0` with `z ≅ H_2(g)` central and inside `h'`.
#[derive(Clone, Debug)]
pub struct StemExtension {
    pub h: LieAlgebra,
    pub z: Subspace,
    pub projection: LieHom,
}

pub fn stem_extension(g: &LieAlgebra) -> Result<StemExtension> {
    stem_extension_with_budget(g, DEFAULT_BUDGET)
}

pub fn stem_extension_with_budget(g: &LieAlgebra, budget: usize) -> Result<StemExtension> {
    let data = hopf_data(g, budget)?;
    let fa = data.free.algebra();
    let ambient = data.free.dim();
    let b = &data.commutator;
    // complement of (F' ∩ r)/B in r/B: greedily extend by basis rows of r
    let mut span = EchelonBasis::new(ambient);
    for v in b.basis_vectors() {
        span.insert(&v);
    }
    for v in data.derived_meet_relations.basis_vectors() {
        span.insert(&v);
    }
    let mut complement = b.basis_vectors();
    for v in data.relations.basis_vectors() {
        if span.insert(&v).is_some() {
            complement.push(v);
        }
    }
    let a = Subspace::span(ambient, &complement);
    // every subspace between [F, r] and r is an ideal
    let (h, proj) = fa.quotient_unchecked(&a);
    let h = h.with_name(format!("stem({})", g.name()));
    let z_vectors: Vec<Vector> = data
        .relations
        .basis_vectors()
        .iter()
        .map(|v| proj.apply(v))
        .collect::<Result<_>>()?;
    let z = Subspace::span(h.dim(), &z_vectors);

    let n = g.dim();
    let gen_images: Vec<Vector> = (0..n)
        .map(|i| proj.apply(&data.free.generator(i)))
        .collect::<Result<_>>()?;
    let targets: Vec<Vector> = (0..n).map(|i| g.basis_vector(i)).collect();
    let projection = LieHom::from_generator_images(&h, &gen_images, &targets, g)?;

    if projection.kernel() != z {
        return Err(Error::ConsistencyFailure(
            "stem extension kernel differs from Z".into(),
        ));
    }
    // h is generated by the images of the generators, so commuting with them suffices
    for zv in z.basis_vectors() {
        if gen_images
            .iter()
            .any(|x| !is_zero_vec(&h.bracket_unchecked(x, &zv)))
        {
            return Err(Error::ConsistencyFailure("Z is not central".into()));
        }
    }
    let derived_images: Vec<Vector> = (0..ambient)
        .filter(|&b| data.free.degree_of(b) >= 2)
        .map(|b| proj.apply(&fa.basis_vector(b)))
        .collect::<Result<_>>()?;
    if !Subspace::span(h.dim(), &derived_images).contains_subspace(&z) {
        return Err(Error::ConsistencyFailure("Z is not contained in h'".into()));
    }
    if h.dim() != n + data.dim() {
        return Err(Error::ConsistencyFailure(
            "stem extension has the wrong dimension".into(),
        ));
    }
    Ok(StemExtension { h, z, projection })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub h1: usize,
    pub h2_ce: usize,
    pub h2_hopf: Option<usize>,
    pub h2_exterior: Option<usize>,
    pub agree: bool,
}

impl HomologyReport {
    pub fn compute(g: &LieAlgebra) -> Result<Self> {
        Self::compute_with_budget(g, DEFAULT_BUDGET)
    }

    /// The Hopf route runs only for nilpotent algebras within budget.
    pub fn compute_with_budget(g: &LieAlgebra, budget: usize) -> Result<Self> {
        let h2_ce = h2_ce(g).dim;
        let h2_hopf = match h2_hopf_with_budget(g, budget) {
            Ok(d) => Some(d),
            Err(Error::NotNilpotent(_)) | Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        let h2_exterior = Some(schur_via_exterior(g)?);
        Ok(Self::from_parts(h1(g), h2_ce, h2_hopf, h2_exterior))
    }

    pub fn from_parts(
        h1: usize,
        h2_ce: usize,
        h2_hopf: Option<usize>,
        h2_exterior: Option<usize>,
    ) -> Self {
        let agree = [h2_hopf, h2_exterior].iter().flatten().all(|&d| d == h2_ce);
        HomologyReport {
            h1,
            h2_ce,
            h2_hopf,
            h2_exterior,
            agree,
        }
    }

    pub fn h2(&self) -> usize {
        self.h2_ce
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn h3() -> LieAlgebra {
        catalog::build("heisenberg", &[3]).unwrap()
    }

    #[test]
    fn wedge_indexing() {
        let n = 5;
        for (p, (i, j)) in wedge2_pairs(n).into_iter().enumerate() {
            assert_eq!(wedge2_index(n, i, j), p);
        }
    }

    #[test]
    fn h1_examples() {
        assert_eq!(h1(&LieAlgebra::abelian(4)), 4);
        assert_eq!(h1(&h3()), 2);
        assert_eq!(h1(&catalog::sl2().unwrap()), 0);
    }

    #[test]
    fn ce_examples() {
        for n in 1..=5 {
            assert_eq!(h2_ce(&LieAlgebra::abelian(n)).dim, n * (n - 1) / 2);
        }
        assert_eq!(h2_ce(&catalog::paper_example_1().unwrap()).dim, 4);
        assert_eq!(
            h2_ce(&catalog::build("free_nilpotent", &[3, 2]).unwrap()).dim,
            8
        );
        assert_eq!(h2_ce(&catalog::sl2().unwrap()).dim, 0);
    }

    #[test]
    fn chain_complex() {
        for g in [
            h3(),
            catalog::sl2().unwrap(),
            catalog::build("upper_triangular_nil", &[4]).unwrap(),
        ] {
            let prod = boundary2(&g).mul(&boundary3(&g)).unwrap();
            assert_eq!(prod, Matrix::zeros(g.dim(), prod.cols()), "{}", g.name());
        }
    }

    #[test]
    fn hopf_examples() {
        assert_eq!(h2_hopf(&LieAlgebra::abelian(2)).unwrap(), 1);
        assert_eq!(h2_hopf(&h3()).unwrap(), 2);
        assert_eq!(h2_hopf(&catalog::paper_example_1().unwrap()).unwrap(), 4);
        assert!(matches!(
            h2_hopf(&catalog::sl2().unwrap()),
            Err(Error::NotNilpotent(_))
        ));
    }

    #[test]
    fn exterior_examples() {
        let a = exterior_square(&LieAlgebra::abelian(3)).unwrap();
        assert_eq!(a.dim, 3);
        assert!(a.table.is_abelian());
        assert!(a.phi.kernel().is_full());

        let s = exterior_square(&catalog::sl2().unwrap()).unwrap();
        assert_eq!(s.dim, 3);
        assert!(s.phi.kernel().is_zero());
        assert!(s.phi.is_hom());

        let h = exterior_square(&h3()).unwrap();
        assert_eq!(h.phi.kernel().dim(), 2);
        assert!(h.table.validate().is_ok());

        assert_eq!(schur_via_exterior(&LieAlgebra::abelian(3)).unwrap(), 3);
        assert_eq!(
            schur_via_exterior(&catalog::build("free_nilpotent", &[3, 2]).unwrap()).unwrap(),
            8
        );
        assert_eq!(schur_via_exterior(&catalog::sl2().unwrap()).unwrap(), 0);
    }

    #[test]
    fn stem_examples() {
        let s = stem_extension(&LieAlgebra::abelian(2)).unwrap();
        assert_eq!(s.h.dim(), 3);
        assert_eq!(s.z.dim(), 1);
        assert_eq!(s.h.nilpotency_class(), Some(2));

        let p = stem_extension(&catalog::paper_example_1().unwrap()).unwrap();
        assert_eq!(p.h.dim(), 8);
        assert_eq!(p.z.dim(), 4);
        assert!(p.h.center().contains_subspace(&p.z));
        assert!(p.h.derived().contains_subspace(&p.z));
    }

    #[test]
    fn report() {
        let r = HomologyReport::compute(&catalog::sl2().unwrap()).unwrap();
        assert_eq!(
            r,
            HomologyReport {
                h1: 0,
                h2_ce: 0,
                h2_hopf: None,
                h2_exterior: Some(0),
                agree: true
            }
        );
        let bad = HomologyReport::from_parts(1, 2, Some(3), Some(2));
        assert!(!bad.agree);
    }
}
