//! The weak commutativity algebra `χ(g)`: the free product of `g` and a copy
//! `g^ψ` modulo `[x, x^ψ]` for all `x`, with the maps
//! `α: χ -> g`, `β: χ -> g ⊕ g`, `ρ: χ -> g ⊕ g ⊕ g` and the ideals
//! `L = ker α`, `D = ker β`, `W = ker ρ`, `R = [g, L, g^ψ]`.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact_linalg::{format_vector, rat, unit_vec, zero_vec, Matrix, Subspace, Vector};
use crate::free_lie::{BracketExpr, DEFAULT_BUDGET};
use crate::homology::h2_ce;
use crate::lie_core::{LieAlgebra, LieHom};
use crate::nilpotent_quotient::{bracket_relator, stable_quotient_with_budget, Presentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChiMethod {
    NilpotentQuotient,
    Superperfect,
    AbelianClosedForm,
}

#[derive(Clone, Debug)]
pub struct ChiAlgebra {
    pub base: LieAlgebra,
    pub chi: LieAlgebra,
    /// Images of `x_1..x_n` followed by `x_1^ψ..x_n^ψ`.
    pub gen_images: Vec<Vector>,
    pub alpha: LieHom,
    pub beta: LieHom,
    pub rho: LieHom,
    pub l: Subspace,
    pub d: Subspace,
    pub w: Subspace,
    pub r: Subspace,
    pub method: ChiMethod,
    pub class_used: Option<usize>,
    pub stabilized: bool,
    pub max_class: Option<usize>,
    /// Quotient dimensions by class; empty unless the quotient engine ran.
    pub history: Vec<usize>,
}

impl ChiAlgebra {
    pub fn n(&self) -> usize {
        self.base.dim()
    }

    pub fn x(&self, i: usize) -> &Vector {
        &self.gen_images[i]
    }

    pub fn x_psi(&self, i: usize) -> &Vector {
        &self.gen_images[self.n() + i]
    }

    pub fn dim(&self) -> usize {
        self.chi.dim()
    }

    /// `"dim chi / dim L / dim D / dim W / dim R"`
    pub fn summary(&self) -> String {
        format!(
            "{} / {} / {} / {} / {}",
            self.dim(),
            self.l.dim(),
            self.d.dim(),
            self.w.dim(),
            self.r.dim()
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let images: Vec<Vec<String>> = self.gen_images.iter().map(|v| format_vector(v)).collect();
        serde_json::json!({
            "base": self.base,
            "chi": self.chi,
            "gen_images": images,
            "alpha": self.alpha.matrix,
            "beta": self.beta.matrix,
            "rho": self.rho.matrix,
            "L": self.l,
            "D": self.d,
            "W": self.w,
            "R": self.r,
            "method": self.method,
            "class_used": self.class_used,
            "stabilized": self.stabilized,
            "max_class": self.max_class,
            "history": self.history,
        })
    }
}

impl Serialize for ChiAlgebra {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Generators `x_1..x_n, x_1^ψ..x_n^ψ`; relators are the structure constants
/// on both copies, `[x_i, x_i^ψ]`, and the polarized `[x_i, x_j^ψ] + [x_j, x_i^ψ]`.
pub fn chi_presentation(g: &LieAlgebra) -> Result<Presentation> {
    if let Err(v) = g.validate() {
        return Err(Error::InvalidAlgebra(format!(
            "Jacobi identity fails on basis triple {:?}",
            v.triple
        )));
    }
    let n = g.dim();
    let mut labels = g.labels().to_vec();
    labels.extend(g.labels().iter().map(|l| format!("{l}'")));
    let mut relators = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            relators.push(bracket_relator(i, j, &g.basis_bracket(i, j), |k| k));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            relators.push(bracket_relator(i, j, &g.basis_bracket(i, j), |k| n + k));
        }
    }
    for i in 0..n {
        relators.push(BracketExpr::br(
            BracketExpr::gen(i),
            BracketExpr::gen(n + i),
        ));
    }
    for i in 0..n {
        for j in i + 1..n {
            relators.push(BracketExpr::sum(vec![
                BracketExpr::br(BracketExpr::gen(i), BracketExpr::gen(n + j)),
                BracketExpr::br(BracketExpr::gen(j), BracketExpr::gen(n + i)),
            ]));
        }
    }
    Presentation::new(labels, relators)
}

/// `2 * class(g) + 2`, or `None` when `g` is not nilpotent.
pub fn default_max_class(g: &LieAlgebra) -> Option<usize> {
    g.nilpotency_class().map(|c| 2 * c.max(1) + 2)
}

pub fn compute_chi(g: &LieAlgebra, max_class: usize) -> Result<ChiAlgebra> {
    compute_chi_with_budget(g, max_class, DEFAULT_BUDGET)
}

/// χ(g) for nilpotent `g` through the nilpotent quotient of the presentation.
pub fn compute_chi_with_budget(
    g: &LieAlgebra,
    max_class: usize,
    budget: usize,
) -> Result<ChiAlgebra> {
    if g.nilpotency_class().is_none() {
        return Err(Error::NotNilpotent(g.name().to_string()));
    }
    let p = chi_presentation(g)?;
    let c = chi_from_presentation(g, &p, max_class, budget)?;
    if !c.stabilized {
        return Err(Error::NotStabilized {
            max_class,
            history: c.history,
        });
    }
    let h2 = h2_ce(g).dim;
    if c.w.dim() < c.r.dim() || c.w.dim() - c.r.dim() != h2 {
        return Err(Error::ConsistencyFailure(format!(
            "dim W - dim R = {} - {} but dim H2 = {h2} for {}",
            c.w.dim(),
            c.r.dim(),
            g.name()
        )));
    }
    Ok(c)
}

/// Runs the quotient engine on an arbitrary presentation over the generators
/// of χ(g) and assembles the maps and ideals. No stabilization or
/// dimension checks are made, so altered presentations can be inspected.
pub fn chi_from_presentation(
    g: &LieAlgebra,
    p: &Presentation,
    max_class: usize,
    budget: usize,
) -> Result<ChiAlgebra> {
    let n = g.dim();
    if p.gens != 2 * n {
        return Err(Error::DimensionMismatch {
            expected: 2 * n,
            found: p.gens,
        });
    }
    let q = stable_quotient_with_budget(p, max_class, budget)?;
    let chi = q.algebra.with_name(format!("chi({})", g.name()));
    let mut c = assemble(g, chi, q.generator_images, ChiMethod::NilpotentQuotient)?;
    c.class_used = Some(q.class_used);
    c.stabilized = q.stabilized;
    c.max_class = Some(max_class);
    c.history = q.history;
    Ok(c)
}

/// Builds α, β, ρ from the generator images and derives L, D, W, R.
pub fn assemble(
    g: &LieAlgebra,
    chi: LieAlgebra,
    gen_images: Vec<Vector>,
    method: ChiMethod,
) -> Result<ChiAlgebra> {
    let n = g.dim();
    if gen_images.len() != 2 * n {
        return Err(Error::DimensionMismatch {
            expected: 2 * n,
            found: gen_images.len(),
        });
    }
    let g2 = LieAlgebra::direct_sum(&[g.clone(), g.clone()]);
    let g3 = LieAlgebra::direct_sum(&[g.clone(), g.clone(), g.clone()]);
    let mut alpha_img = Vec::with_capacity(2 * n);
    let mut beta_img = Vec::with_capacity(2 * n);
    let mut rho_img = Vec::with_capacity(2 * n);
    for copy in 0..2 {
        for i in 0..n {
            alpha_img.push(unit_vec(n, i));
            beta_img.push(unit_vec(2 * n, copy * n + i));
            let mut v = zero_vec(3 * n);
            v[copy * n + i] += rat(1);
            v[(copy + 1) * n + i] += rat(1);
            rho_img.push(v);
        }
    }
    let alpha = LieHom::from_generator_images(&chi, &gen_images, &alpha_img, g)?;
    let beta = LieHom::from_generator_images(&chi, &gen_images, &beta_img, &g2)?;
    let rho = LieHom::from_generator_images(&chi, &gen_images, &rho_img, &g3)?;
    let l = alpha.kernel();
    let d = beta.kernel();
    let w = rho.kernel();
    let r = r_ideal(&chi, &gen_images, &l);
    Ok(ChiAlgebra {
        base: g.clone(),
        chi,
        gen_images,
        alpha,
        beta,
        rho,
        l,
        d,
        w,
        r,
        method,
        class_used: None,
        stabilized: true,
        max_class: None,
        history: Vec::new(),
    })
}

/// Seeds `[x_i, [ℓ, x_j^ψ]]` for a basis `ℓ` of `L`.
pub fn r_seeds(chi: &LieAlgebra, gen_images: &[Vector], l: &Subspace) -> Vec<Vector> {
    let n = gen_images.len() / 2;
    let mut seeds = Vec::new();
    for ell in l.basis_vectors() {
        for j in 0..n {
            let inner = chi.bracket_unchecked(&ell, &gen_images[n + j]);
            for x in &gen_images[..n] {
                seeds.push(chi.bracket_unchecked(x, &inner));
            }
        }
    }
    seeds
}

pub fn r_ideal(chi: &LieAlgebra, gen_images: &[Vector], l: &Subspace) -> Subspace {
    chi.ideal_closure(&r_seeds(chi, gen_images, l))
}

/// χ(abelian n): basis `x_i`, `x_i'`, `d_ij` (`i < j`) with
/// `[x_i, x_j'] = d_ij = -[x_j, x_i']` and all other brackets zero.
pub fn compute_chi_abelian(g: &LieAlgebra) -> Result<ChiAlgebra> {
    if !g.is_abelian() {
        return Err(Error::Unsupported(format!("{} is not abelian", g.name())));
    }
    let n = g.dim();
    let mut labels = g.labels().to_vec();
    labels.extend(g.labels().iter().map(|l| format!("{l}'")));
    let mut brackets = Vec::new();
    let mut k = 2 * n;
    for i in 0..n {
        for j in i + 1..n {
            labels.push(format!("[{},{}']", g.labels()[i], g.labels()[j]));
            brackets.push(((i, n + j), vec![(k, rat(1))]));
            brackets.push(((j, n + i), vec![(k, rat(-1))]));
            k += 1;
        }
    }
    let chi = LieAlgebra::new(format!("chi({})", g.name()), labels, brackets)?;
    let images = (0..2 * n).map(|i| unit_vec(chi.dim(), i)).collect();
    assemble(g, chi, images, ChiMethod::AbelianClosedForm)
}

/// χ(g) = g ⊕ g ⊕ g for perfect `g` with `H_2(g) = 0`.
pub fn compute_chi_superperfect(g: &LieAlgebra) -> Result<ChiAlgebra> {
    if !g.is_perfect() {
        return Err(Error::NotPerfect(g.name().to_string()));
    }
    let h2 = h2_ce(g).dim;
    if h2 != 0 {
        return Err(Error::NonvanishingH2 {
            name: g.name().to_string(),
            dim: h2,
        });
    }
    let n = g.dim();
    let chi = LieAlgebra::direct_sum(&[g.clone(), g.clone(), g.clone()])
        .with_name(format!("chi({})", g.name()));
    let mut images = Vec::with_capacity(2 * n);
    for copy in 0..2 {
        for i in 0..n {
            let mut v = zero_vec(3 * n);
            v[copy * n + i] += rat(1);
            v[(copy + 1) * n + i] += rat(1);
            images.push(v);
        }
    }
    assemble(g, chi, images, ChiMethod::Superperfect)
}

/// Abelian closed form, then the quotient engine for nilpotent input, then the
/// superperfect case. Anything else is unsupported.
pub fn compute_chi_auto(
    g: &LieAlgebra,
    max_class: Option<usize>,
    budget: usize,
) -> Result<ChiAlgebra> {
    if g.is_abelian() {
        return compute_chi_abelian(g);
    }
    if let Some(default) = default_max_class(g) {
        return compute_chi_with_budget(g, max_class.unwrap_or(default), budget);
    }
    if g.is_perfect() {
        return match compute_chi_superperfect(g) {
            Err(Error::NonvanishingH2 { name, dim }) => Err(Error::Unsupported(format!(
                "{name} is perfect with H2 of dimension {dim}; chi is not determined by the available data"
            ))),
            other => other,
        };
    }
    Err(Error::Unsupported(format!(
        "{} is neither nilpotent nor perfect",
        g.name()
    )))
}

pub fn image_rho_subspace(c: &ChiAlgebra) -> Subspace {
    c.rho.image()
}

/// `{(x, y, z) : x - y + z ∈ g'}` inside `g ⊕ g ⊕ g`.
pub fn image_rho_formula(g: &LieAlgebra) -> Subspace {
    let n = g.dim();
    let derived = g.derived();
    let cols: Vec<Vector> = (0..3 * n)
        .map(|k| {
            let q = derived.quotient_coords(&unit_vec(n, k % n));
            if k / n == 1 {
                q.into_iter().map(|x| -x).collect()
            } else {
                q
            }
        })
        .collect();
    Matrix::from_columns(n - derived.dim(), &cols).kernel()
}
