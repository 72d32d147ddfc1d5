//! Finite-dimensional Lie algebras given by structure constants.

use std::collections::{BTreeMap, VecDeque};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{
    axpy, format_vector, is_zero_vec, serde_rational, unit_vec, zero_vec, EchelonBasis, Matrix,
    Rational, Subspace, Vector,
};

/// Sparse linear combination `sum c_k e_k`, sorted by `k`.
pub type Terms = Vec<(usize, Rational)>;

/// A Lie algebra over `Q` with basis `e_0 .. e_{n-1}`.
///
/// Only brackets `[e_i, e_j]` with `i < j` are stored; antisymmetry is built
/// into [`LieAlgebra::bracket`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    labels: Vec<String>,
    // dense upper-triangular table, index i * dim + j for i < j
    table: Vec<Terms>,
}

/// First basis triple on which the Jacobi identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub defect: Vector,
}

impl LieAlgebra {
    /// Builds and validates an algebra from its nonzero brackets `[e_i, e_j]`, `i < j`.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        brackets: Vec<((usize, usize), Terms)>,
    ) -> Result<Self> {
        let g = Self::from_brackets_unchecked(name, labels, brackets)?;
        if let Err(v) = g.validate() {
            return Err(Error::InvalidAlgebra(format!(
                "{}: Jacobi fails on {:?} with defect {:?}",
                g.name,
                v.triple,
                format_vector(&v.defect)
            )));
        }
        Ok(g)
    }

    /// Builds an algebra from a bracket table, checking indices but not the
    /// Jacobi identity. Used for tables that are Lie by construction and for
    /// fault injection in tests.
    pub fn from_brackets_unchecked(
        name: impl Into<String>,
        labels: Vec<String>,
        brackets: Vec<((usize, usize), Terms)>,
    ) -> Result<Self> {
        let name = name.into();
        let n = labels.len();
        let mut table = vec![Terms::new(); n * n];
        for ((i, j), terms) in brackets {
            if i >= j || j >= n {
                return Err(Error::InvalidAlgebra(format!(
                    "{name}: bracket index pair ({i}, {j}) must satisfy i < j < {n}"
                )));
            }
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, c) in terms {
                if k >= n {
                    return Err(Error::InvalidAlgebra(format!(
                        "{name}: term index {k} out of range for dim {n}"
                    )));
                }
                *acc.entry(k).or_insert_with(Rational::zero) += c;
            }
            table[i * n + j] = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        Ok(LieAlgebra {
            name,
            labels,
            table,
        })
    }

    /// Builds an algebra from dense bracket vectors `[e_i, e_j]` for `i < j`.
    pub(crate) fn from_dense_unchecked(
        name: impl Into<String>,
        labels: Vec<String>,
        bracket: impl Fn(usize, usize) -> Vector,
    ) -> Self {
        let n = labels.len();
        let mut table = vec![Terms::new(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                table[i * n + j] = to_terms(&bracket(i, j));
            }
        }
        LieAlgebra {
            name: name.into(),
            labels,
            table,
        }
    }

    pub fn abelian(n: usize) -> Self {
        let labels = (1..=n).map(|i| format!("e{i}")).collect();
        LieAlgebra {
            name: format!("abelian({n})"),
            labels,
            table: vec![Terms::new(); n * n],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `[e_i, e_j]` as sparse terms with the sign applied.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Terms {
        let n = self.dim();
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.table[i * n + j].clone(),
            std::cmp::Ordering::Greater => self.table[j * n + i]
                .iter()
                .map(|(k, c)| (*k, -c))
                .collect(),
            std::cmp::Ordering::Equal => Terms::new(),
        }
    }

    fn stored(&self, i: usize, j: usize) -> &Terms {
        &self.table[i * self.dim() + j]
    }

    /// Nonzero stored brackets `(i, j, terms)` with `i < j`, in index order.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &Terms)> + '_ {
        let n = self.dim();
        (0..n).flat_map(move |i| {
            (i + 1..n).filter_map(move |j| {
                let t = self.stored(i, j);
                (!t.is_empty()).then_some((i, j, t))
            })
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vec(self.dim(), i)
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Result<Vector> {
        let n = self.dim();
        for w in [u, v] {
            if w.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: w.len(),
                });
            }
        }
        Ok(self.bracket_unchecked(u, v))
    }

    pub(crate) fn bracket_unchecked(&self, u: &[Rational], v: &[Rational]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        let su: Vec<usize> = (0..n).filter(|&i| !u[i].is_zero()).collect();
        let sv: Vec<usize> = (0..n).filter(|&j| !v[j].is_zero()).collect();
        for &i in &su {
            for &j in &sv {
                if i == j {
                    continue;
                }
                let (a, b, sign) = if i < j { (i, j, true) } else { (j, i, false) };
                let terms = self.stored(a, b);
                if terms.is_empty() {
                    continue;
                }
                let mut f = &u[i] * &v[j];
                if !sign {
                    f = -f;
                }
                for (k, c) in terms {
                    out[*k] += &f * c;
                }
            }
        }
        out
    }

    fn bracket_terms(&self, terms: &Terms, k: usize, out: &mut Vector) {
        for (l, c) in terms {
            for (m, d) in self.basis_bracket(*l, k) {
                out[m] += c * &d;
            }
        }
    }

    /// Checks the Jacobi identity on every basis triple `i < j < k`.
    pub fn validate(&self) -> Result<(), JacobiViolation> {
        let n = self.dim();
        let nz: Vec<bool> = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                if i < j {
                    !self.table[idx].is_empty()
                } else if i > j {
                    !self.table[j * n + i].is_empty()
                } else {
                    false
                }
            })
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !nz[i * n + j] && !nz[j * n + k] && !nz[i * n + k] {
                        continue;
                    }
                    let mut defect = zero_vec(n);
                    self.bracket_terms(&self.basis_bracket(i, j), k, &mut defect);
                    self.bracket_terms(&self.basis_bracket(j, k), i, &mut defect);
                    self.bracket_terms(&self.basis_bracket(k, i), j, &mut defect);
                    if !is_zero_vec(&defect) {
                        return Err(JacobiViolation {
                            triple: (i, j, k),
                            defect,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Smallest subalgebra containing `seed`.
    pub fn subalgebra_closure(&self, seed: &[Vector]) -> Subspace {
        let mut span = EchelonBasis::new(self.dim());
        let mut members: Vec<Vector> = Vec::new();
        let mut queue: VecDeque<Vector> = VecDeque::new();
        for s in seed {
            if span.insert(s).is_some() {
                queue.push_back(s.clone());
            }
        }
        while let Some(x) = queue.pop_front() {
            for y in members.iter().chain(std::iter::once(&x)) {
                let z = self.bracket_unchecked(&x, y);
                if span.insert(&z).is_some() {
                    queue.push_back(z);
                }
            }
            members.push(x);
        }
        span.to_subspace()
    }

    /// Smallest ideal containing `seed`.
    pub fn ideal_closure(&self, seed: &[Vector]) -> Subspace {
        let basis: Vec<Vector> = (0..self.dim()).map(|i| self.basis_vector(i)).collect();
        self.closure_under(seed, &basis)
    }

    /// Smallest subspace containing `seed` and closed under `ad(a)` for every
    /// `a` in `actors`.
    pub fn closure_under(&self, seed: &[Vector], actors: &[Vector]) -> Subspace {
        let mut span = EchelonBasis::new(self.dim());
        let mut queue: VecDeque<Vector> = VecDeque::new();
        for s in seed {
            if span.insert(s).is_some() {
                queue.push_back(s.clone());
            }
        }
        while let Some(x) = queue.pop_front() {
            for a in actors {
                let z = self.bracket_unchecked(a, &x);
                if span.insert(&z).is_some() {
                    queue.push_back(z);
                }
            }
        }
        span.to_subspace()
    }

    /// Span of all brackets of vectors from `a` with vectors from `b`.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut span = EchelonBasis::new(self.dim());
        let bv = b.basis_vectors();
        for x in a.basis_vectors() {
            for y in &bv {
                span.insert(&self.bracket_unchecked(&x, y));
            }
        }
        span.to_subspace()
    }

    /// The derived algebra `[g, g]`.
    pub fn derived(&self) -> Subspace {
        let vectors: Vec<Vector> = self
            .nonzero_brackets()
            .map(|(_, _, t)| terms_to_vec(self.dim(), t))
            .collect();
        Subspace::span(self.dim(), &vectors)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived().is_full()
    }

    /// Terms `g = g_1 ⊇ g_2 ⊇ ...` of the lower central series, stopping at the
    /// first repeated term.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim());
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.bracket_span(&full, last);
            if &next == last {
                break;
            }
            let done = next.is_zero();
            series.push(next);
            if done {
                break;
            }
        }
        series
    }

    /// Nilpotency class, or `None` when the lower central series stalls at a
    /// nonzero term. The zero algebra has class 0, abelian algebras class 1.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        let last = series.last().unwrap();
        if last.is_zero() {
            Some(series.len() - 1)
        } else {
            None
        }
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim();
        // x is central iff [x, e_k] = 0 for every k; stack the linear maps ad(e_k).
        let mut rows: Vec<Vector> = Vec::new();
        for k in 0..n {
            let cols: Vec<Vector> = (0..n)
                .map(|i| terms_to_vec(n, &self.basis_bracket(i, k)))
                .collect();
            let m = Matrix::from_columns(n, &cols);
            rows.extend(m.row_vectors());
        }
        Matrix::from_rows(n, &rows).kernel()
    }

    /// First pair `(x, e_k)` with `[x, e_k]` outside `s`, if any.
    pub fn ideal_witness(&self, s: &Subspace) -> Option<(Vector, usize)> {
        for x in s.basis_vectors() {
            for k in 0..self.dim() {
                let y = self.bracket_unchecked(&x, &self.basis_vector(k));
                if !s.contains(&y) {
                    return Some((x, k));
                }
            }
        }
        None
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        self.ideal_witness(s).is_none()
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let b = s.basis_vectors();
        b.iter().enumerate().all(|(i, x)| {
            b[i + 1..]
                .iter()
                .all(|y| s.contains(&self.bracket_unchecked(x, y)))
        })
    }

    /// Quotient by an ideal, with basis the non-pivot coordinates of `ideal`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LieAlgebra, LieHom)> {
        if ideal.ambient_dim() != self.dim() {
            return Err(Error::AmbientMismatch {
                left: self.dim(),
                right: ideal.ambient_dim(),
            });
        }
        if let Some((x, k)) = self.ideal_witness(ideal) {
            return Err(Error::NotAnIdeal(format!(
                "[{:?}, {}] leaves the subspace",
                format_vector(&x),
                self.labels[k]
            )));
        }
        Ok(self.quotient_unchecked(ideal))
    }

    /// [`LieAlgebra::quotient`] without the ideal check, for subspaces that
    /// are ideals by construction.
    pub(crate) fn quotient_unchecked(&self, ideal: &Subspace) -> (LieAlgebra, LieHom) {
        let keep = ideal.complement_coords();
        let labels: Vec<String> = keep.iter().map(|&c| self.labels[c].clone()).collect();
        let q = LieAlgebra::from_dense_unchecked(format!("{}/I", self.name), labels, |a, b| {
            let v = terms_to_vec(self.dim(), &self.basis_bracket(keep[a], keep[b]));
            ideal.quotient_coords(&v)
        });
        let cols: Vec<Vector> = (0..self.dim())
            .map(|i| ideal.quotient_coords(&self.basis_vector(i)))
            .collect();
        let matrix = Matrix::from_columns(keep.len(), &cols);
        let proj = LieHom {
            domain: self.clone(),
            codomain: q.clone(),
            matrix,
        };
        (q, proj)
    }

    /// Direct sum; basis labels get the 1-based component index appended.
    pub fn direct_sum(parts: &[LieAlgebra]) -> LieAlgebra {
        let mut labels = Vec::new();
        let mut offsets = Vec::new();
        for (p, g) in parts.iter().enumerate() {
            offsets.push(labels.len());
            labels.extend(g.labels.iter().map(|l| format!("{l}_{}", p + 1)));
        }
        let mut brackets = Vec::new();
        for (g, &off) in parts.iter().zip(&offsets) {
            for (i, j, t) in g.nonzero_brackets() {
                brackets.push((
                    (i + off, j + off),
                    t.iter().map(|(k, c)| (k + off, c.clone())).collect(),
                ));
            }
        }
        let name = parts
            .iter()
            .map(|g| g.name.as_str())
            .collect::<Vec<_>>()
            .join(" + ");
        LieAlgebra::from_brackets_unchecked(name, labels, brackets)
            .expect("direct sum indices are in range")
    }

    /// Replaces one stored structure constant; the result is not revalidated.
    pub fn with_corrupted_constant(&self, i: usize, j: usize, k: usize, c: Rational) -> LieAlgebra {
        let mut g = self.clone();
        let n = g.dim();
        let (a, b, c) = if i < j { (i, j, c) } else { (j, i, -c) };
        let slot = &mut g.table[a * n + b];
        slot.retain(|(m, _)| *m != k);
        if !c.is_zero() {
            slot.push((k, c));
            slot.sort_by_key(|(m, _)| *m);
        }
        g
    }
}

pub fn terms_to_vec(n: usize, terms: &Terms) -> Vector {
    let mut v = zero_vec(n);
    for (k, c) in terms {
        v[*k] += c;
    }
    v
}

pub fn to_terms(v: &[Rational]) -> Terms {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

/// A linear map between Lie algebras, given by its matrix in the standard bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieHom {
    pub domain: LieAlgebra,
    pub codomain: LieAlgebra,
    /// `codomain.dim() x domain.dim()`
    pub matrix: Matrix,
}

impl LieHom {
    pub fn apply(&self, v: &[Rational]) -> Result<Vector> {
        self.matrix.mul_vec(v)
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.kernel()
    }

    pub fn image(&self) -> Subspace {
        self.matrix.image()
    }

    /// First basis pair `(i, j)` on which the map fails to preserve brackets.
    pub fn hom_witness(&self) -> Option<(usize, usize)> {
        let n = self.domain.dim();
        let cols: Vec<Vector> = (0..n).map(|i| self.matrix.column(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self
                    .matrix
                    .mul_vec(&terms_to_vec(n, &self.domain.basis_bracket(i, j)))
                    .expect("matrix shape matches domain");
                let rhs = self.codomain.bracket_unchecked(&cols[i], &cols[j]);
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_hom(&self) -> bool {
        self.hom_witness().is_none()
    }

    /// Extends `gens[i] -> images[i]` to the unique homomorphism it determines.
    pub fn from_generator_images(
        domain: &LieAlgebra,
        gens: &[Vector],
        images: &[Vector],
        codomain: &LieAlgebra,
    ) -> Result<LieHom> {
        let (n, m) = (domain.dim(), codomain.dim());
        if gens.len() != images.len() {
            return Err(Error::DimensionMismatch {
                expected: gens.len(),
                found: images.len(),
            });
        }
        for g in gens {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.len(),
                });
            }
        }
        for h in images {
            if h.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: h.len(),
                });
            }
        }
        // Augmented rows [domain part | image part], eliminated on the domain part.
        let mut rows = EchelonBasis::new(n + m);
        let mut accepted: Vec<(Vector, Vector)> = Vec::new();
        let mut queue: VecDeque<(Vector, Vector)> =
            gens.iter().cloned().zip(images.iter().cloned()).collect();
        while let Some((d, img)) = queue.pop_front() {
            let mut aug = d.clone();
            aug.extend(img.iter().cloned());
            let reduced = rows.reduce(&aug);
            if is_zero_vec(&reduced[..n]) {
                if !is_zero_vec(&reduced[n..]) {
                    return Err(Error::NotWellDefined(format!(
                        "element {:?} is forced to 0 and to {:?}",
                        format_vector(&d),
                        format_vector(&img)
                    )));
                }
                continue;
            }
            rows.insert(&aug);
            for (gd, gi) in gens.iter().zip(images) {
                queue.push_back((
                    domain.bracket_unchecked(gd, &d),
                    codomain.bracket_unchecked(gi, &img),
                ));
            }
            accepted.push((d, img));
        }
        if rows.dim() < n {
            return Err(Error::NotGenerating {
                span: rows.dim(),
                dim: n,
            });
        }
        // Solve M d_a = img_a for the accepted (independent) pairs.
        let dmat = Matrix::from_columns(
            n,
            &accepted.iter().map(|(d, _)| d.clone()).collect::<Vec<_>>(),
        );
        let mut matrix = Matrix::zeros(m, n);
        for e in 0..n {
            // coefficients c with dmat * c = e_e
            let coeffs =
                solve_square(&dmat, &unit_vec(n, e)).expect("accepted vectors form a basis");
            let mut col = zero_vec(m);
            for (c, (_, img)) in coeffs.iter().zip(&accepted) {
                axpy(&mut col, c, img);
            }
            for (r, x) in col.into_iter().enumerate() {
                matrix.set(r, e, x);
            }
        }
        let hom = LieHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix,
        };
        if let Some((i, j)) = hom.hom_witness() {
            return Err(Error::NotWellDefined(format!(
                "bracket of basis elements {i} and {j} is not preserved"
            )));
        }
        Ok(hom)
    }
}

/// Solves `a x = b` for square invertible `a`.
fn solve_square(a: &Matrix, b: &[Rational]) -> Option<Vector> {
    let n = a.rows();
    let mut rows: Vec<Vector> = a.row_vectors();
    for (r, x) in rows.iter_mut().zip(b) {
        r.push(x.clone());
    }
    let (red, pivots) = Matrix::from_rows(n + 1, &rows).rref();
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some((0..n).map(|i| red.get(i, n).clone()).collect())
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    k: usize,
    #[serde(with = "serde_rational")]
    c: Rational,
}

#[derive(Serialize, Deserialize)]
struct BracketJson {
    i: usize,
    j: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct LieAlgebraJson {
    name: String,
    dim: usize,
    basis: Vec<String>,
    brackets: Vec<BracketJson>,
}

impl Serialize for LieAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let brackets = self
            .nonzero_brackets()
            .map(|(i, j, t)| BracketJson {
                i,
                j,
                terms: t
                    .iter()
                    .map(|(k, c)| TermJson {
                        k: *k,
                        c: c.clone(),
                    })
                    .collect(),
            })
            .collect();
        LieAlgebraJson {
            name: self.name.clone(),
            dim: self.dim(),
            basis: self.labels.clone(),
            brackets,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = LieAlgebraJson::deserialize(d)?;
        if raw.dim != raw.basis.len() {
            return Err(serde::de::Error::custom(format!(
                "dim {} does not match {} basis labels",
                raw.dim,
                raw.basis.len()
            )));
        }
        let brackets = raw
            .brackets
            .into_iter()
            .map(|b| {
                (
                    (b.i, b.j),
                    b.terms.into_iter().map(|t| (t.k, t.c)).collect(),
                )
            })
            .collect();
        LieAlgebra::new(raw.name, raw.basis, brackets).map_err(serde::de::Error::custom)
    }
}

impl LieAlgebra {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Parses the same schema but checks only indices, not the Jacobi identity.
    pub fn from_json_unvalidated(s: &str) -> Result<Self> {
        let raw: LieAlgebraJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.dim != raw.basis.len() {
            return Err(Error::DimensionMismatch {
                expected: raw.dim,
                found: raw.basis.len(),
            });
        }
        let brackets = raw
            .brackets
            .into_iter()
            .map(|b| {
                (
                    (b.i, b.j),
                    b.terms.into_iter().map(|t| (t.k, t.c)).collect(),
                )
            })
            .collect();
        LieAlgebra::from_brackets_unchecked(raw.name, raw.basis, brackets)
    }
}

/// `[e_i, e_j] = c e_k` shorthand for building tables by hand.
pub fn simple_bracket(i: usize, j: usize, k: usize, c: i64) -> ((usize, usize), Terms) {
    ((i, j), vec![(k, crate::exact_linalg::rat(c))])
}

pub fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}
