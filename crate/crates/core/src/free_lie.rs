//! Free nilpotent Lie algebras with the Lyndon basis.
//!
//! Basis elements are standard bracketings of Lyndon words. Brackets are
//! computed by expanding into the free associative algebra and reading off
//! Lyndon coordinates triangularly: the expansion of the standard bracketing
//! of `w` is `w` plus lexicographically larger words of the same length.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact_linalg::{format_rational, parse_rational, rat, zero_vec, Rational, Vector};
use crate::lie_core::{LieAlgebra, Terms};

/// Default cap on the number of basis elements of a truncated free algebra.
pub const DEFAULT_BUDGET: usize = 5000;

pub type Word = Vec<u16>;

/// Binary bracket tree over generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bracketing {
    Letter(u16),
    Bracket(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    pub fn render(&self, names: &[String]) -> String {
        match self {
            Bracketing::Letter(a) => names[*a as usize].clone(),
            Bracketing::Bracket(l, r) => format!("[{},{}]", l.render(names), r.render(names)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LyndonElement {
    pub word: Word,
    pub standard_bracketing: Bracketing,
}

impl LyndonElement {
    pub fn degree(&self) -> usize {
        self.word.len()
    }
}

pub fn is_lyndon(w: &[u16]) -> bool {
    !w.is_empty()
        && (1..w.len()).all(|k| {
            let rot: Vec<u16> = w[k..].iter().chain(&w[..k]).copied().collect();
            w < rot.as_slice()
        })
}

/// Standard factorization `w = u v` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u16]) -> Option<(&[u16], &[u16])> {
    (1..w.len())
        .find(|&k| is_lyndon(&w[k..]))
        .map(|k| (&w[..k], &w[k..]))
}

fn standard_bracketing(w: &[u16]) -> Bracketing {
    match standard_factorization(w) {
        None => Bracketing::Letter(w[0]),
        Some((u, v)) => Bracketing::Bracket(
            Box::new(standard_bracketing(u)),
            Box::new(standard_bracketing(v)),
        ),
    }
}

/// Lyndon words over `m` letters of length at most `max_len`, via Duval's
/// generation algorithm (lexicographic order).
fn lyndon_words(m: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if m == 0 || max_len == 0 {
        return out;
    }
    let last = (m - 1) as u16;
    let mut w: Word = vec![0];
    loop {
        out.push(w.clone());
        let base = w.clone();
        while w.len() < max_len {
            w.push(base[w.len() % base.len()]);
        }
        while w.last() == Some(&last) {
            w.pop();
        }
        match w.last_mut() {
            None => break,
            Some(x) => *x += 1,
        }
    }
    out
}

/// Lyndon basis of the free Lie algebra on `m` generators up to degree `c`,
/// ordered by degree, then lexicographically.
pub fn lyndon_basis(m: usize, c: usize) -> Vec<LyndonElement> {
    let mut words = lyndon_words(m, c);
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    words
        .into_iter()
        .map(|word| LyndonElement {
            standard_bracketing: standard_bracketing(&word),
            word,
        })
        .collect()
}

fn mobius(mut n: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Dimension of the degree-`d` component of the free Lie algebra on `m`
/// generators: `(1/d) sum_{e | d} mu(e) m^(d/e)`.
pub fn witt_dim(m: usize, d: usize) -> usize {
    assert!(m >= 1 && d >= 1);
    let mut total: i128 = 0;
    for e in 1..=d {
        if d.is_multiple_of(e) {
            total += mobius(e) as i128 * (m as i128).pow((d / e) as u32);
        }
    }
    (total / d as i128) as usize
}

// Homogeneous elements of the free associative algebra, keyed by (length, word)
type Poly = BTreeMap<(usize, Word), Rational>;

fn poly_bracket(a: &Poly, b: &Poly, max_len: usize) -> Poly {
    let mut out = Poly::new();
    for ((la, wa), ca) in a {
        for ((lb, wb), cb) in b {
            if la + lb > max_len {
                continue;
            }
            let c = ca * cb;
            let mut ab = wa.clone();
            ab.extend(wb);
            let mut ba = wb.clone();
            ba.extend(wa);
            *out.entry((la + lb, ab)).or_insert_with(Rational::zero) += &c;
            *out.entry((la + lb, ba)).or_insert_with(Rational::zero) -= &c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Free Lie algebra on `m` generators truncated above degree `c`.
#[derive(Clone, Debug)]
pub struct FreeNilpotentAlgebra {
    generators: usize,
    class: usize,
    basis: Vec<LyndonElement>,
    index: HashMap<Word, usize>,
    expansions: Vec<Poly>,
    table: LieAlgebra,
}

impl FreeNilpotentAlgebra {
    pub fn build(m: usize, c: usize) -> Result<Self> {
        Self::build_with_budget(m, c, DEFAULT_BUDGET)
    }

    pub fn build_with_budget(m: usize, c: usize, budget: usize) -> Result<Self> {
        if m == 0 || c == 0 {
            return Err(Error::BadParams {
                name: "free_nilpotent".into(),
                reason: format!("need m >= 1 and c >= 1, got ({m}, {c})"),
            });
        }
        let needed: usize = (1..=c).map(|d| witt_dim(m, d)).sum();
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let basis = lyndon_basis(m, c);
        let index: HashMap<Word, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, e)| (e.word.clone(), i))
            .collect();
        let mut expansions: Vec<Poly> = Vec::with_capacity(basis.len());
        for e in &basis {
            let p = match standard_factorization(&e.word) {
                None => Poly::from([((1, e.word.clone()), Rational::one())]),
                Some((u, v)) => poly_bracket(&expansions[index[u]], &expansions[index[v]], c),
            };
            expansions.push(p);
        }
        let names = generator_names(m);
        let labels: Vec<String> = basis
            .iter()
            .map(|e| e.standard_bracketing.render(&names))
            .collect();
        let mut f = FreeNilpotentAlgebra {
            generators: m,
            class: c,
            basis,
            index,
            expansions,
            table: LieAlgebra::abelian(0),
        };
        let n = f.basis.len();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if f.basis[i].degree() + f.basis[j].degree() > c {
                    continue;
                }
                let p = poly_bracket(&f.expansions[i], &f.expansions[j], c);
                let terms = f.lyndon_coords(p);
                if !terms.is_empty() {
                    brackets.push(((i, j), terms));
                }
            }
        }
        f.table = LieAlgebra::from_brackets_unchecked(
            format!("free_nilpotent({m},{c})"),
            labels,
            brackets,
        )?;
        Ok(f)
    }

    /// Rewrites a Lie polynomial in Lyndon coordinates.
    fn lyndon_coords(&self, mut p: Poly) -> Terms {
        let mut terms = Terms::new();
        while let Some(((_, w), c)) = p.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            let k = *self
                .index
                .get(&w)
                .unwrap_or_else(|| panic!("leading word {w:?} of a Lie polynomial must be Lyndon"));
            for (key, d) in &self.expansions[k] {
                let e = p.entry(key.clone()).or_insert_with(Rational::zero);
                *e -= &c * d;
                if e.is_zero() {
                    p.remove(key);
                }
            }
            terms.push((k, c));
        }
        terms.sort_by_key(|(k, _)| *k);
        terms
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LyndonElement] {
        &self.basis
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.table
    }

    pub fn into_algebra(self) -> LieAlgebra {
        self.table
    }

    pub fn index_of(&self, word: &[u16]) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// Degree-one basis vector of generator `g`.
    pub fn generator(&self, g: usize) -> Vector {
        self.table.basis_vector(g)
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.basis[i].degree()
    }

    /// Bracket in Lyndon coordinates, truncated above the class.
    pub fn normal_form(&self, a: &[Rational], b: &[Rational]) -> Result<Vector> {
        self.table.bracket(a, b)
    }

    pub fn eval(&self, e: &BracketExpr) -> Result<Vector> {
        let gens: Vec<Vector> = (0..self.generators).map(|g| self.generator(g)).collect();
        e.eval_in(&self.table, &gens)
    }
}

pub fn generator_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("x{i}")).collect()
}

/// Bracket polynomial in the generators of a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketExpr {
    Gen(usize),
    Scale(Rational, Box<BracketExpr>),
    Sum(Vec<BracketExpr>),
    Br(Box<BracketExpr>, Box<BracketExpr>),
}

impl BracketExpr {
    pub fn gen(i: usize) -> Self {
        BracketExpr::Gen(i)
    }

    pub fn br(a: BracketExpr, b: BracketExpr) -> Self {
        BracketExpr::Br(Box::new(a), Box::new(b))
    }

    pub fn scale(c: Rational, e: BracketExpr) -> Self {
        BracketExpr::Scale(c, Box::new(e))
    }

    pub fn negated(e: BracketExpr) -> Self {
        Self::scale(rat(-1), e)
    }

    pub fn sum(parts: Vec<BracketExpr>) -> Self {
        BracketExpr::Sum(parts)
    }

    pub fn difference(a: BracketExpr, b: BracketExpr) -> Self {
        Self::sum(vec![a, Self::negated(b)])
    }

    pub fn max_gen(&self) -> Option<usize> {
        match self {
            BracketExpr::Gen(i) => Some(*i),
            BracketExpr::Scale(_, e) => e.max_gen(),
            BracketExpr::Sum(es) => es.iter().filter_map(BracketExpr::max_gen).max(),
            BracketExpr::Br(a, b) => a.max_gen().max(b.max_gen()),
        }
    }

    /// Evaluates with generator `i` sent to `images[i]`.
    pub fn eval_in(&self, g: &LieAlgebra, images: &[Vector]) -> Result<Vector> {
        self.eval_with(images, g.dim(), &|a, b| g.bracket_unchecked(a, b))
    }

    pub(crate) fn eval_with(
        &self,
        images: &[Vector],
        dim: usize,
        bracket: &dyn Fn(&[Rational], &[Rational]) -> Vector,
    ) -> Result<Vector> {
        Ok(match self {
            BracketExpr::Gen(i) => images.get(*i).cloned().ok_or(Error::IndexOutOfRange {
                index: *i,
                count: images.len(),
            })?,
            BracketExpr::Scale(c, e) => e
                .eval_with(images, dim, bracket)?
                .into_iter()
                .map(|x| x * c)
                .collect(),
            BracketExpr::Sum(es) => {
                let mut acc = zero_vec(dim);
                for e in es {
                    for (a, x) in acc.iter_mut().zip(e.eval_with(images, dim, bracket)?) {
                        *a += x;
                    }
                }
                acc
            }
            BracketExpr::Br(a, b) => {
                let x = a.eval_with(images, dim, bracket)?;
                let y = b.eval_with(images, dim, bracket)?;
                bracket(&x, &y)
            }
        })
    }

    fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        match self {
            BracketExpr::Gen(i) => json!({ "gen": i }),
            BracketExpr::Scale(c, e) => json!({ "scale": format_rational(c), "of": e.to_json() }),
            BracketExpr::Sum(es) => {
                json!({ "sum": es.iter().map(BracketExpr::to_json).collect::<Vec<_>>() })
            }
            BracketExpr::Br(a, b) => json!({ "br": [a.to_json(), b.to_json()] }),
        }
    }

    fn from_json(v: &serde_json::Value) -> std::result::Result<Self, String> {
        let obj = v
            .as_object()
            .ok_or_else(|| format!("expected an object, got {v}"))?;
        if let Some(g) = obj.get("gen") {
            let i = g.as_u64().ok_or("gen must be a non-negative integer")?;
            return Ok(BracketExpr::Gen(i as usize));
        }
        if let Some(s) = obj.get("scale") {
            let c = parse_rational(s.as_str().ok_or("scale must be a string")?)
                .map_err(|e| e.to_string())?;
            let of = obj.get("of").ok_or("scale needs an \"of\" field")?;
            return Ok(Self::scale(c, Self::from_json(of)?));
        }
        if let Some(s) = obj.get("sum") {
            let parts = s.as_array().ok_or("sum must be an array")?;
            return parts
                .iter()
                .map(Self::from_json)
                .collect::<std::result::Result<_, _>>()
                .map(BracketExpr::Sum);
        }
        if let Some(b) = obj.get("br") {
            match b.as_array().map(Vec::as_slice) {
                Some([x, y]) => return Ok(Self::br(Self::from_json(x)?, Self::from_json(y)?)),
                _ => return Err("br must be a two-element array".into()),
            }
        }
        Err(format!("unrecognized bracket expression {v}"))
    }
}

impl Serialize for BracketExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BracketExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        BracketExpr::from_json(&v).map_err(serde::de::Error::custom)
    }
}
