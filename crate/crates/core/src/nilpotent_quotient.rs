//! Nilpotent quotients of finitely presented Lie algebras.
//!
//! [`class_quotient`] works one class at a time. Given the class-`c` quotient
//! `Q = F/(I + F^{c+1})` with a weighted basis in which every element of weight
//! `w >= 2` is defined as `[b, a]` for some `b` of weight `w - 1` and `a` of
//! weight 1, it forms the extension `E = Q + T` where `T` is spanned by a
//! central tail for every non-defining basis pair of total weight `<= c + 1`
//! and for every generator that is not itself a basis element. Quotienting `T`
//! by the Jacobi defects makes `E` a Lie algebra; the subalgebra generated by
//! the lifted generators is `F/[F, K]` with `K = I + F^{c+1}`, and dividing out
//! the (central) relator values gives `F/(I + F^{c+2})`.
//!
//! [`class_quotient_via_free`] is the direct route: build the free nilpotent
//! algebra of class `c`, close the relator values to an ideal and divide. It is
//! exponentially larger in the number of generators and serves as an oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{axpy, is_zero_vec, unit_vec, EchelonBasis, Rational, Vector};
use crate::free_lie::{BracketExpr, FreeNilpotentAlgebra, DEFAULT_BUDGET};
use crate::lie_core::{terms_to_vec, LieAlgebra};
use num_traits::{One, Zero};

/// `<x_0, ..., x_{m-1} | relators>`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub gens: usize,
    pub gen_labels: Vec<String>,
    pub relators: Vec<BracketExpr>,
}

impl Presentation {
    pub fn new(gen_labels: Vec<String>, relators: Vec<BracketExpr>) -> Result<Self> {
        let p = Presentation {
            gens: gen_labels.len(),
            gen_labels,
            relators,
        };
        p.check()?;
        Ok(p)
    }

    pub fn free(gens: usize) -> Self {
        Presentation {
            gens,
            gen_labels: crate::free_lie::generator_names(gens),
            relators: Vec::new(),
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.gen_labels.len() != self.gens {
            return Err(Error::DimensionMismatch {
                expected: self.gens,
                found: self.gen_labels.len(),
            });
        }
        for r in &self.relators {
            if let Some(i) = r.max_gen() {
                if i >= self.gens {
                    return Err(Error::IndexOutOfRange {
                        index: i,
                        count: self.gens,
                    });
                }
            }
        }
        Ok(())
    }

    /// Generators are the basis of `g`, relators `[x_i, x_j] - sum c_ij^k x_k`.
    pub fn of_algebra(g: &LieAlgebra) -> Self {
        let n = g.dim();
        let mut relators = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                relators.push(bracket_relator(i, j, &g.basis_bracket(i, j), |k| k));
            }
        }
        Presentation {
            gens: n,
            gen_labels: g.labels().to_vec(),
            relators,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let p: Presentation = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        p.check()?;
        Ok(p)
    }
}

/// `[x_{map(i)}, x_{map(j)}] - sum_k c_k x_{map(k)}`
pub(crate) fn bracket_relator(
    i: usize,
    j: usize,
    terms: &[(usize, Rational)],
    map: impl Fn(usize) -> usize,
) -> BracketExpr {
    let mut parts = vec![BracketExpr::br(
        BracketExpr::gen(map(i)),
        BracketExpr::gen(map(j)),
    )];
    for (k, c) in terms {
        parts.push(BracketExpr::scale(-c.clone(), BracketExpr::gen(map(*k))));
    }
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        BracketExpr::sum(parts)
    }
}

/// Result of a nilpotent quotient computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientResult {
    pub algebra: LieAlgebra,
    pub class_used: usize,
    pub generator_images: Vec<Vector>,
    pub stabilized: bool,
    /// `history[c - 1]` is the dimension of the class-`c` quotient.
    pub history: Vec<usize>,
    /// Weight (lower central series degree) of every basis element.
    pub weights: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Definition {
    Generator(usize),
    // b = [b_i, b_a] with b_a of weight one
    Bracket(usize, usize),
}

/// Class-`c` quotient together with the bookkeeping the next step needs.
#[derive(Clone, Debug)]
struct Stage {
    algebra: LieAlgebra,
    weights: Vec<usize>,
    defs: Vec<Definition>,
    gen_images: Vec<Vector>,
    class: usize,
}

impl Stage {
    fn initial(p: &Presentation) -> Self {
        Stage {
            algebra: LieAlgebra::abelian(0),
            weights: Vec::new(),
            defs: Vec::new(),
            gen_images: vec![Vec::new(); p.gens],
            class: 0,
        }
    }

    fn dim(&self) -> usize {
        self.algebra.dim()
    }

    fn next(&self, p: &Presentation, budget: usize) -> Result<Stage> {
        let d = self.dim();
        let c = self.class;
        let w = &self.weights;

        let mut def_pairs = std::collections::HashSet::new();
        let mut defining_gen = vec![false; p.gens];
        for def in &self.defs {
            match *def {
                Definition::Generator(k) => defining_gen[k] = true,
                Definition::Bracket(i, a) => {
                    def_pairs.insert((i.min(a), i.max(a)));
                }
            }
        }

        // tail index of each pair (i < j), if it carries one
        let mut pair_tail = vec![None; d * d];
        let mut t = 0;
        for i in 0..d {
            for j in i + 1..d {
                if w[i] + w[j] <= c + 1 && !def_pairs.contains(&(i, j)) {
                    pair_tail[i * d + j] = Some(t);
                    t += 1;
                }
            }
        }
        let mut gen_tail = vec![None; p.gens];
        for (k, slot) in gen_tail.iter_mut().enumerate() {
            if !defining_gen[k] {
                *slot = Some(t);
                t += 1;
            }
        }
        if d + t > budget {
            return Err(Error::BudgetExceeded {
                needed: d + t,
                budget,
            });
        }
        let e_dim = d + t;
        let tail_of = |i: usize, j: usize| -> Option<(usize, bool)> {
            if i == j {
                return None;
            }
            if i < j {
                pair_tail[i * d + j].map(|x| (x, true))
            } else {
                pair_tail[j * d + i].map(|x| (x, false))
            }
        };

        // bracket in E; tails are central
        let bracket_e = |u: &[Rational], v: &[Rational]| -> Vector {
            let mut out = self.algebra.bracket_unchecked(&u[..d], &v[..d]);
            out.resize(e_dim, Rational::zero());
            for i in (0..d).filter(|&i| !u[i].is_zero()) {
                for j in (0..d).filter(|&j| !v[j].is_zero()) {
                    if let Some((x, pos)) = tail_of(i, j) {
                        let f = &u[i] * &v[j];
                        if pos {
                            out[d + x] += f;
                        } else {
                            out[d + x] -= f;
                        }
                    }
                }
            }
            out
        };
        let basis_e = |i: usize| unit_vec(e_dim, i);

        let mut relations = EchelonBasis::new(t);

        // Jacobi defects on triples of total weight <= c + 1
        for i in 0..d {
            for j in i + 1..d {
                if w[i] + w[j] > c {
                    continue;
                }
                for k in j + 1..d {
                    if w[i] + w[j] + w[k] > c + 1 {
                        continue;
                    }
                    let (bi, bj, bk) = (basis_e(i), basis_e(j), basis_e(k));
                    let mut jac = bracket_e(&bracket_e(&bi, &bj), &bk);
                    let r2 = bracket_e(&bracket_e(&bj, &bk), &bi);
                    let r3 = bracket_e(&bracket_e(&bk, &bi), &bj);
                    for (a, (x, y)) in jac.iter_mut().zip(r2.into_iter().zip(r3)) {
                        *a += x + y;
                    }
                    debug_assert!(is_zero_vec(&jac[..d]));
                    relations.insert(&jac[d..]);
                }
            }
        }

        // lifted generator images
        let lifted: Vec<Vector> = (0..p.gens)
            .map(|k| {
                let mut v = self.gen_images[k].clone();
                v.resize(e_dim, Rational::zero());
                if let Some(x) = gen_tail[k] {
                    v[d + x] += Rational::one();
                }
                v
            })
            .collect();

        for r in &p.relators {
            let val = r.eval_with(&lifted, e_dim, &bracket_e)?;
            if !is_zero_vec(&val[..d]) {
                return Err(Error::ConsistencyFailure(format!(
                    "relator does not vanish in the class-{c} quotient"
                )));
            }
            relations.insert(&val[d..]);
        }

        // candidates for the new weight-(c+1) elements
        let candidates: Vec<(Vector, Definition)> = if c == 0 {
            (0..p.gens)
                .map(|k| (lifted[k][d..].to_vec(), Definition::Generator(k)))
                .collect()
        } else {
            let mut out = Vec::new();
            for i in (0..d).filter(|&i| w[i] == c) {
                for a in (0..d).filter(|&a| w[a] == 1) {
                    let v = bracket_e(&basis_e(i), &basis_e(a));
                    out.push((v[d..].to_vec(), Definition::Bracket(i, a)));
                }
            }
            out
        };

        let nc = candidates.len();
        let mut span = relations.clone();
        let mut aug = EchelonBasis::new(t + nc);
        for row in relations.to_subspace().basis_vectors() {
            let mut x = row;
            x.resize(t + nc, Rational::zero());
            aug.insert(&x);
        }
        let mut new_defs = Vec::new();
        let mut chosen = Vec::new();
        for (idx, (v, def)) in candidates.iter().enumerate() {
            if span.insert(v).is_some() {
                let mut x = v.clone();
                x.resize(t + nc, Rational::zero());
                x[t + idx] = Rational::one();
                aug.insert(&x);
                new_defs.push(*def);
                chosen.push(idx);
            }
        }
        let r = chosen.len();
        let new_dim = d + r;

        // coordinates of a tail combination in terms of the new elements
        let express = |tail: &[Rational]| -> Result<Vector> {
            let mut x = tail.to_vec();
            x.resize(t + nc, Rational::zero());
            let red = aug.reduce(&x);
            if !is_zero_vec(&red[..t]) {
                return Err(Error::ConsistencyFailure(format!(
                    "tail outside the span of class-{} generators",
                    c + 1
                )));
            }
            Ok(chosen.iter().map(|&idx| -red[t + idx].clone()).collect())
        };

        let mut new_tail_part = vec![None; d * d];
        for i in 0..d {
            for j in i + 1..d {
                if let Some(x) = pair_tail[i * d + j] {
                    let coords = express(&unit_vec(t, x))?;
                    if !is_zero_vec(&coords) {
                        new_tail_part[i * d + j] = Some(coords);
                    }
                }
            }
        }
        let mut labels: Vec<String> = self.algebra.labels().to_vec();
        for def in &new_defs {
            labels.push(match *def {
                Definition::Generator(k) => p.gen_labels[k].clone(),
                Definition::Bracket(i, a) => format!("[{},{}]", labels[i], labels[a]),
            });
        }
        let algebra = LieAlgebra::from_dense_unchecked(format!("nq{}", c + 1), labels, |i, j| {
            let mut v = vec![Rational::zero(); new_dim];
            if j < d {
                let old = terms_to_vec(d, &self.algebra.basis_bracket(i, j));
                v[..d].clone_from_slice(&old);
                if let Some(coords) = &new_tail_part[i * d + j] {
                    for (s, x) in coords.iter().enumerate() {
                        v[d + s] += x;
                    }
                }
            }
            v
        });

        let mut gen_images = Vec::with_capacity(p.gens);
        for (img, tail) in self.gen_images.iter().zip(&gen_tail) {
            let mut v = img.clone();
            v.resize(new_dim, Rational::zero());
            if let Some(x) = *tail {
                let coords = express(&unit_vec(t, x))?;
                axpy(&mut v[d..], &Rational::one(), &coords);
            }
            gen_images.push(v);
        }
        // a generator chosen as a weight-one basis element maps to that element
        for (s, def) in new_defs.iter().enumerate() {
            if let Definition::Generator(k) = *def {
                gen_images[k] = unit_vec(new_dim, d + s);
            }
        }

        let mut weights = w.clone();
        weights.extend(std::iter::repeat_n(c + 1, r));
        let mut defs = self.defs.clone();
        defs.extend(new_defs);
        Ok(Stage {
            algebra,
            weights,
            defs,
            gen_images,
            class: c + 1,
        })
    }

    fn into_result(self, stabilized: bool, history: Vec<usize>) -> QuotientResult {
        QuotientResult {
            class_used: self.class,
            algebra: self.algebra,
            generator_images: self.gen_images,
            stabilized,
            history,
            weights: self.weights,
        }
    }
}

/// The largest class-`c` nilpotent quotient of the presented algebra.
pub fn class_quotient(p: &Presentation, c: usize) -> Result<QuotientResult> {
    class_quotient_with_budget(p, c, DEFAULT_BUDGET)
}

pub fn class_quotient_with_budget(
    p: &Presentation,
    c: usize,
    budget: usize,
) -> Result<QuotientResult> {
    p.check()?;
    let mut stage = Stage::initial(p);
    let mut history = Vec::new();
    for _ in 0..c {
        stage = stage.next(p, budget)?;
        history.push(stage.dim());
    }
    Ok(stage.into_result(false, history))
}

/// Computes class quotients until two consecutive ones have equal dimension
/// (the maximal nilpotent quotient) or `max_class` is reached.
pub fn stable_quotient(p: &Presentation, max_class: usize) -> Result<QuotientResult> {
    stable_quotient_with_budget(p, max_class, DEFAULT_BUDGET)
}

pub fn stable_quotient_with_budget(
    p: &Presentation,
    max_class: usize,
    budget: usize,
) -> Result<QuotientResult> {
    if max_class < 2 {
        return Err(Error::BadParams {
            name: "stable_quotient".into(),
            reason: format!("max_class must be at least 2, got {max_class}"),
        });
    }
    p.check()?;
    let mut stage = Stage::initial(p);
    let mut history = Vec::new();
    for _ in 0..max_class {
        let next = stage.next(p, budget)?;
        history.push(next.dim());
        if next.dim() == stage.dim() && stage.class > 0 {
            return Ok(stage.into_result(true, history));
        }
        stage = next;
    }
    Ok(stage.into_result(false, history))
}

/// Class-`c` quotient computed inside the free nilpotent algebra of class `c`.
pub fn class_quotient_via_free(
    p: &Presentation,
    c: usize,
    budget: usize,
) -> Result<QuotientResult> {
    p.check()?;
    let f = FreeNilpotentAlgebra::build_with_budget(p.gens, c, budget)?;
    let values: Vec<Vector> = p
        .relators
        .iter()
        .map(|r| f.eval(r))
        .collect::<Result<_>>()?;
    let gens: Vec<Vector> = (0..p.gens).map(|g| f.generator(g)).collect();
    let ideal = f.algebra().closure_under(&values, &gens);
    let (q, proj) = f.algebra().quotient(&ideal)?;
    let images: Vec<Vector> = gens.iter().map(|g| proj.apply(g)).collect::<Result<_>>()?;
    // degree of the free basis element behind each quotient coordinate
    let keep = ideal.complement_coords();
    let weights = keep.iter().map(|&k| f.degree_of(k)).collect();
    let dim = q.dim();
    Ok(QuotientResult {
        algebra: q,
        class_used: c,
        generator_images: images,
        stabilized: false,
        history: vec![dim],
        weights,
    })
}

/// Checks that every relator vanishes on the generator images.
pub fn relators_hold(p: &Presentation, q: &QuotientResult) -> Result<bool> {
    for r in &p.relators {
        if !is_zero_vec(&r.eval_in(&q.algebra, &q.generator_images)?) {
            return Ok(false);
        }
    }
    Ok(true)
}
