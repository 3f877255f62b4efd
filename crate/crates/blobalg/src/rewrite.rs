//! The straightening engine: the action of `e(i)`, `y_r` and `ψ_r` on the
//! standard basis `{ψ_T}` of a cell module `Δ(λ)`.
//!
//! Every basis vector is `ψ_T = ψ_{a1} ⋯ ψ_{ak} z` where `a1 … ak` is the
//! canonical reduced word of `T` and `z = ψ_{T^λ}` is the cyclic generator.
//! A generator acts by prepending a letter and rewriting back to normal form:
//!
//! * a crossing that lengthens the word and keeps the tableau standard just
//!   produces the new basis vector;
//! * a crossing that shortens the word is a square `ψ_r²`, resolved by the
//!   quadratic relation into zero, the identity, or a difference of dots;
//! * a crossing that lengthens the word but leaves the standard locus is
//!   steered, by commutations and braid moves, into a word ending in a Garnir
//!   word, which kills `z`; each braid move contributes a correction word
//!   three letters shorter;
//! * a dot is pushed to the right through the word using the dot–crossing
//!   relations, emitting correction words one letter shorter, and dies on `z`.
//!
//! Every recursive call evaluates strictly shorter words, so the rewriting
//! terminates; re-entry into an unfinished computation is reported as an error
//! rather than looping.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use exactla::{q, BigRational, RationalMatrix};
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::{garnir_nodes, inversions, AlgebraConfig, Bipartition, CombError, Node, Tableau};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rewriting re-entered its own unfinished computation at {0}")]
    Cycle(String),
    #[error("no Garnir word is a right factor of the word {word:?}")]
    NoGarnirFactor { word: Vec<usize> },
    #[error("generator index {index} out of range for d = {d}")]
    IndexOutOfRange { index: usize, d: usize },
    #[error("tableau {0} does not belong to this cell module")]
    ForeignTableau(String),
    #[error("idempotent has length {got}, expected {d}")]
    BadIdempotent { got: usize, d: usize },
    #[error(transparent)]
    Comb(#[from] CombError),
}

/// A finite rational combination of standard basis vectors of one cell
/// module. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CellVector {
    terms: BTreeMap<Tableau, BigRational>,
}

impl CellVector {
    pub fn zero() -> Self {
        CellVector::default()
    }

    pub fn basis(t: Tableau) -> Self {
        let mut v = CellVector::zero();
        v.terms.insert(t, BigRational::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &Tableau) -> BigRational {
        self.terms.get(t).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Tableau, &BigRational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Tableau> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, t: Tableau, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(t).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&t);
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &CellVector, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        for (t, x) in &other.terms {
            self.add_term(*t, &(x * c));
        }
    }

    pub fn scaled(&self, c: &BigRational) -> CellVector {
        let mut out = CellVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &CellVector) -> CellVector {
        let mut out = self.clone();
        out.add_scaled(other, &-BigRational::one());
        out
    }

    pub fn add(&self, other: &CellVector) -> CellVector {
        let mut out = self.clone();
        out.add_scaled(other, &BigRational::one());
        out
    }

    /// Dense coordinates against an ordered basis; `None` if some term lies
    /// outside it.
    pub fn to_coords(&self, index: &HashMap<Tableau, usize>) -> Option<Vec<(usize, BigRational)>> {
        self.terms.iter().map(|(t, c)| index.get(t).map(|&i| (i, c.clone()))).collect()
    }
}

impl fmt::Debug for CellVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(t, c)| format!("{c}·ψ{t}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A generator of the algebra, acting on the left of a module vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Letter {
    Idem(Vec<u32>),
    Dot(usize),
    Crossing(usize),
}

/// Which generator a memoised action belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MemoKind {
    Dot,
    Crossing,
}

/// One memoised generator action `g_index ψ_T = value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemoEntry {
    pub kind: MemoKind,
    pub index: usize,
    pub tableau: Tableau,
    pub value: CellVector,
}

/// The permutation `s_{a1} ⋯ s_{ak}` as the sequence of its values.
pub fn permutation_of_word(word: &[usize], d: usize) -> Vec<usize> {
    let mut seq: Vec<usize> = (1..=d).collect();
    let mut pos: Vec<usize> = (0..=d).map(|v| v.saturating_sub(1)).collect();
    for &a in word.iter().rev() {
        let (i, j) = (pos[a], pos[a + 1]);
        seq.swap(i, j);
        pos.swap(a, a + 1);
    }
    seq
}

pub fn is_reduced(word: &[usize], d: usize) -> bool {
    inversions(&permutation_of_word(word, d)) == word.len()
}

/// The residue sequence `s_{a1} ⋯ s_{ak} · i`.
pub fn permute_residues(word: &[usize], i: &[u32]) -> Vec<u32> {
    let mut j = i.to_vec();
    for &a in word.iter().rev() {
        j.swap(a - 1, a);
    }
    j
}

/// Correction constant of the braid relation at `r` for residues `i`:
/// `ψ_r ψ_{r+1} ψ_r e(i) = (ψ_{r+1} ψ_r ψ_{r+1} + c) e(i)`.
pub fn braid_constant(i: &[u32], r: usize, e: i64) -> i64 {
    let e = e as u32;
    let (a, b, c) = (i[r - 1], i[r], i[r + 1]);
    if a != c {
        return 0;
    }
    if (a + 1) % e == b {
        1
    } else if (b + 1) % e == a {
        -1
    } else {
        0
    }
}

/// Which case of the quadratic relation applies to `ψ_r² e(i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quadratic {
    Zero,
    Identity,
    /// `(y_{r+1} - y_r) e(i)`
    UpperMinusLower,
    /// `(y_r - y_{r+1}) e(i)`
    LowerMinusUpper,
}

pub fn quadratic_case(i: &[u32], r: usize, e: i64) -> Quadratic {
    let e = e as u32;
    let (a, b) = (i[r - 1], i[r]);
    if a == b {
        Quadratic::Zero
    } else if a == (b + 1) % e {
        Quadratic::LowerMinusUpper
    } else if (a + 1) % e == b {
        Quadratic::UpperMinusLower
    } else {
        Quadratic::Identity
    }
}

/// Degree of `ψ_r e(i)`.
pub fn crossing_degree(i: &[u32], r: usize, e: i64) -> i64 {
    let e = e as u32;
    let (a, b) = (i[r - 1], i[r]);
    if a == b {
        -2
    } else if (a + 1) % e == b || (b + 1) % e == a {
        1
    } else {
        0
    }
}

/// The straightening engine for one cell module.
///
/// Results are memoised per `(generator, tableau)`; an engine is cheap to
/// create and is meant to be owned by a single worker.
pub struct Engine {
    cfg: AlgebraConfig,
    shape: Bipartition,
    basis: Vec<Tableau>,
    index: HashMap<Tableau, usize>,
    words: HashMap<Tableau, Vec<usize>>,
    init: Tableau,
    init_res: Vec<u32>,
    residue_classes: HashSet<Vec<u32>>,
    garnir_words: Vec<Vec<usize>>,
    cross_memo: HashMap<(usize, Tableau), CellVector>,
    dot_memo: HashMap<(usize, Tableau), CellVector>,
    active: HashSet<(bool, usize, Tableau)>,
}

impl Engine {
    pub fn new(cfg: AlgebraConfig, shape: Bipartition) -> Result<Self, RewriteError> {
        shape.check_size(&cfg)?;
        let basis = Tableau::enumerate(shape);
        let index = basis.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let words = basis.iter().map(|t| (*t, t.reduced_word().0)).collect();
        let init = Tableau::initial(shape);
        let init_res = init.residue_sequence(&cfg);
        let residue_classes = basis.iter().map(|t| t.residue_sequence(&cfg)).collect();
        let garnir_words = garnir_words(shape);
        Ok(Engine {
            cfg,
            shape,
            basis,
            index,
            words,
            init,
            init_res,
            residue_classes,
            garnir_words,
            cross_memo: HashMap::new(),
            dot_memo: HashMap::new(),
            active: HashSet::new(),
        })
    }

    /// Every memoised generator action, in a fixed order.
    pub fn memo_entries(&self) -> Vec<MemoEntry> {
        let mut out: Vec<MemoEntry> = self
            .dot_memo
            .iter()
            .map(|((s, t), v)| MemoEntry { kind: MemoKind::Dot, index: *s, tableau: *t, value: v.clone() })
            .chain(self.cross_memo.iter().map(|((r, t), v)| MemoEntry {
                kind: MemoKind::Crossing,
                index: *r,
                tableau: *t,
                value: v.clone(),
            }))
            .collect();
        out.sort_by_key(|a| (a.kind, a.index, a.tableau));
        out
    }

    /// Preloads memoised actions, e.g. from a persistent cache. Entries whose
    /// tableau or value leaves this module are ignored.
    pub fn seed_memo(&mut self, entries: impl IntoIterator<Item = MemoEntry>) -> usize {
        let mut n = 0;
        for m in entries {
            let fits = |t: &Tableau| self.index.contains_key(t);
            if !fits(&m.tableau) || !m.value.support().all(fits) {
                continue;
            }
            let memo = match m.kind {
                MemoKind::Dot => &mut self.dot_memo,
                MemoKind::Crossing => &mut self.cross_memo,
            };
            memo.insert((m.index, m.tableau), m.value);
            n += 1;
        }
        n
    }

    pub fn config(&self) -> &AlgebraConfig {
        &self.cfg
    }

    pub fn shape(&self) -> Bipartition {
        self.shape
    }

    pub fn d(&self) -> usize {
        self.cfg.d()
    }

    /// The standard basis in enumeration order.
    pub fn basis(&self) -> &[Tableau] {
        &self.basis
    }

    pub fn index(&self) -> &HashMap<Tableau, usize> {
        &self.index
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn initial(&self) -> Tableau {
        self.init
    }

    pub fn initial_residues(&self) -> &[u32] {
        &self.init_res
    }

    pub fn word(&self, t: &Tableau) -> Result<&[usize], RewriteError> {
        self.words.get(t).map(|w| w.as_slice()).ok_or_else(|| RewriteError::ForeignTableau(t.to_string()))
    }

    /// Words `g` with `ψ_g z = 0` used to kill non-standard words.
    pub fn garnir_words(&self) -> &[Vec<usize>] {
        &self.garnir_words
    }

    /// `e(i) v`.
    pub fn act_idem(&self, i: &[u32], v: &CellVector) -> Result<CellVector, RewriteError> {
        if i.len() != self.d() {
            return Err(RewriteError::BadIdempotent { got: i.len(), d: self.d() });
        }
        let mut out = CellVector::zero();
        for (t, c) in v.iter() {
            if t.residue_sequence(&self.cfg) == i {
                out.add_term(*t, c);
            }
        }
        Ok(out)
    }

    fn check_index(&self, r: usize, max: usize) -> Result<(), RewriteError> {
        if r == 0 || r > max {
            return Err(RewriteError::IndexOutOfRange { index: r, d: self.d() });
        }
        Ok(())
    }

    /// `y_s ψ_T`.
    pub fn act_dot(&mut self, s: usize, t: &Tableau) -> Result<CellVector, RewriteError> {
        self.check_index(s, self.d())?;
        if let Some(v) = self.dot_memo.get(&(s, *t)) {
            return Ok(v.clone());
        }
        let key = (false, s, *t);
        if !self.active.insert(key) {
            return Err(RewriteError::Cycle(format!("y_{s} on {t}")));
        }
        let result = self.compute_dot(s, t);
        self.active.remove(&key);
        let v = result?;
        self.dot_memo.insert((s, *t), v.clone());
        Ok(v)
    }

    fn compute_dot(&mut self, s: usize, t: &Tableau) -> Result<CellVector, RewriteError> {
        let word = self.word(t)?.to_vec();
        let k = word.len();
        // residues[idx] = residues of the vector to the right of letter idx - 1
        let mut residues = vec![self.init_res.clone(); k + 1];
        for idx in (0..k).rev() {
            let mut j = residues[idx + 1].clone();
            j.swap(word[idx] - 1, word[idx]);
            residues[idx] = j;
        }
        let mut out = CellVector::zero();
        let mut s = s;
        for idx in 0..k {
            let a = word[idx];
            let j = &residues[idx + 1];
            let same = j[a - 1] == j[a];
            let sign = if s == a + 1 {
                s = a;
                1
            } else if s == a {
                s = a + 1;
                -1
            } else {
                continue;
            };
            if same {
                let mut w = word[..idx].to_vec();
                w.extend_from_slice(&word[idx + 1..]);
                let v = self.eval(&w)?;
                out.add_scaled(&v, &q(sign));
            }
        }
        Ok(out)
    }

    /// `ψ_r ψ_T`.
    pub fn act_crossing(&mut self, r: usize, t: &Tableau) -> Result<CellVector, RewriteError> {
        self.check_index(r, self.d().saturating_sub(1))?;
        if let Some(v) = self.cross_memo.get(&(r, *t)) {
            return Ok(v.clone());
        }
        let key = (true, r, *t);
        if !self.active.insert(key) {
            return Err(RewriteError::Cycle(format!("psi_{r} on {t}")));
        }
        let result = self.compute_crossing(r, t);
        self.active.remove(&key);
        let v = result?;
        self.cross_memo.insert((r, *t), v.clone());
        Ok(v)
    }

    fn compute_crossing(&mut self, r: usize, t: &Tableau) -> Result<CellVector, RewriteError> {
        let seq = t.permutation();
        let pos = |v: usize| seq.iter().position(|&x| x == v).expect("permutation");
        let lengthens = pos(r) < pos(r + 1);
        if lengthens {
            if let Some(next) = t.swap(r) {
                return Ok(CellVector::basis(next));
            }
            self.straighten(r, t)
        } else {
            let prev = t.swap(r).expect("a left descent separates r and r+1");
            let i = prev.residue_sequence(&self.cfg);
            match quadratic_case(&i, r, self.cfg.e()) {
                Quadratic::Zero => Ok(CellVector::zero()),
                Quadratic::Identity => Ok(CellVector::basis(prev)),
                Quadratic::UpperMinusLower => {
                    let a = self.act_dot(r + 1, &prev)?;
                    let b = self.act_dot(r, &prev)?;
                    Ok(a.sub(&b))
                }
                Quadratic::LowerMinusUpper => {
                    let a = self.act_dot(r, &prev)?;
                    let b = self.act_dot(r + 1, &prev)?;
                    Ok(a.sub(&b))
                }
            }
        }
    }

    /// `ψ_r ψ_T` when `s_r T` is a reduced but non-standard product.
    fn straighten(&mut self, r: usize, t: &Tableau) -> Result<CellVector, RewriteError> {
        let mut j = t.residue_sequence(&self.cfg);
        j.swap(r - 1, r);
        // The result lies in e(j)Δ(λ), which is spanned by the basis vectors
        // with residue sequence j.
        if !self.residue_classes.contains(&j) {
            return Ok(CellVector::zero());
        }
        let mut word = vec![r];
        word.extend_from_slice(self.word(t)?);
        let d = self.d();
        let seq = permutation_of_word(&word, d);
        let g = self
            .garnir_words
            .iter()
            .find(|g| is_right_factor(&seq, g))
            .cloned()
            .ok_or_else(|| RewriteError::NoGarnirFactor { word: word.clone() })?;
        let mut corrections = Vec::new();
        let mut end = word.len();
        for &letter in g.iter().rev() {
            self.bring_right(&mut word, end, letter, &mut corrections)?;
            end -= 1;
        }
        debug_assert!(word.ends_with(&g));
        let mut out = CellVector::zero();
        for (c, w) in corrections {
            let v = self.eval(&w)?;
            out.add_scaled(&v, &q(c));
        }
        Ok(out)
    }

    /// Rewrites `word[..end]` into a word ending in `s`, given that `s` is a
    /// right descent of the element it represents. Braid moves record their
    /// correction words.
    fn bring_right(
        &self,
        word: &mut Vec<usize>,
        end: usize,
        s: usize,
        corrections: &mut Vec<(i64, Vec<usize>)>,
    ) -> Result<(), RewriteError> {
        if end == 0 {
            return Err(RewriteError::NoGarnirFactor { word: word.clone() });
        }
        let t = word[end - 1];
        if t == s {
            return Ok(());
        }
        if t.abs_diff(s) > 1 {
            self.bring_right(word, end - 1, s, corrections)?;
            word.swap(end - 2, end - 1);
            return Ok(());
        }
        self.bring_right(word, end - 1, s, corrections)?;
        if end < 3 {
            return Err(RewriteError::NoGarnirFactor { word: word.clone() });
        }
        self.bring_right(word, end - 2, t, corrections)?;
        let p = end - 3;
        let a = t.min(s);
        let residues = permute_residues(&word[end..], &self.init_res);
        let c = braid_constant(&residues, a, self.cfg.e());
        // [t, s, t] -> [s, t, s]; the correction sign depends on which side
        // of the braid relation we start from.
        let sign = if t == a { c } else { -c };
        if sign != 0 {
            let mut w = word[..p].to_vec();
            w.extend_from_slice(&word[end..]);
            corrections.push((sign, w));
        }
        word[p] = s;
        word[p + 1] = t;
        word[p + 2] = s;
        Ok(())
    }

    /// `ψ_{a1} ⋯ ψ_{ak} z` for an arbitrary word.
    pub fn eval(&mut self, word: &[usize]) -> Result<CellVector, RewriteError> {
        let mut v = CellVector::basis(self.init);
        for &r in word.iter().rev() {
            v = self.apply_crossing(r, &v)?;
            if v.is_zero() {
                break;
            }
        }
        Ok(v)
    }

    pub fn apply_crossing(&mut self, r: usize, v: &CellVector) -> Result<CellVector, RewriteError> {
        let mut out = CellVector::zero();
        for (t, c) in v.iter() {
            let w = self.act_crossing(r, t)?;
            out.add_scaled(&w, c);
        }
        Ok(out)
    }

    pub fn apply_dot(&mut self, s: usize, v: &CellVector) -> Result<CellVector, RewriteError> {
        let mut out = CellVector::zero();
        for (t, c) in v.iter() {
            let w = self.act_dot(s, t)?;
            out.add_scaled(&w, c);
        }
        Ok(out)
    }

    /// Applies a word of generators, rightmost letter first.
    pub fn act_word(&mut self, word: &[Letter], v: &CellVector) -> Result<CellVector, RewriteError> {
        let mut v = v.clone();
        for l in word.iter().rev() {
            v = match l {
                Letter::Idem(i) => self.act_idem(i, &v)?,
                Letter::Dot(s) => self.apply_dot(*s, &v)?,
                Letter::Crossing(r) => self.apply_crossing(*r, &v)?,
            };
        }
        Ok(v)
    }

    /// `⟨ψ_S, ψ_T⟩`: the coefficient of `z` in `ψ_S^* ψ_T`.
    pub fn gram_entry(&mut self, s: &Tableau, t: &Tableau) -> Result<BigRational, RewriteError> {
        let ws = self.word(s)?.to_vec();
        let mut v = CellVector::basis(*t);
        for &a in &ws {
            v = self.apply_crossing(a, &v)?;
        }
        Ok(v.coeff(&self.init))
    }

    pub fn gram_matrix(&mut self) -> Result<RationalMatrix, RewriteError> {
        let n = self.dim();
        let basis = self.basis.clone();
        let degs: Vec<i64> = basis.iter().map(|t| t.degree(&self.cfg)).collect();
        let res: Vec<Vec<u32>> = basis.iter().map(|t| t.residue_sequence(&self.cfg)).collect();
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                // The form is homogeneous of degree zero and respects residues.
                if degs[i] + degs[j] != 0 || res[i] != res[j] {
                    continue;
                }
                let x = self.gram_entry(&basis[i], &basis[j])?;
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    /// Matrix of `ψ_r` on the standard basis (columns are images).
    pub fn crossing_matrix(&mut self, r: usize) -> Result<RationalMatrix, RewriteError> {
        let basis = self.basis.clone();
        let mut cols = Vec::with_capacity(basis.len());
        for t in &basis {
            let v = self.act_crossing(r, t)?;
            cols.push(v.to_coords(&self.index).expect("images stay in the module"));
        }
        Ok(RationalMatrix::from_sparse_columns(basis.len(), &cols))
    }

    pub fn dot_matrix(&mut self, s: usize) -> Result<RationalMatrix, RewriteError> {
        let basis = self.basis.clone();
        let mut cols = Vec::with_capacity(basis.len());
        for t in &basis {
            let v = self.act_dot(s, t)?;
            cols.push(v.to_coords(&self.index).expect("images stay in the module"));
        }
        Ok(RationalMatrix::from_sparse_columns(basis.len(), &cols))
    }

    pub fn idem_matrix(&self, i: &[u32]) -> RationalMatrix {
        let n = self.dim();
        let mut m = RationalMatrix::zeros(n, n);
        for (k, t) in self.basis.iter().enumerate() {
            if t.residue_sequence(&self.cfg) == i {
                m.set(k, k, BigRational::one());
            }
        }
        m
    }

    /// Checks every defining relation of the algebra, and the Garnir
    /// relations on the cyclic generator, as operator identities on the whole
    /// module.
    pub fn relation_suite(&mut self) -> Result<RelationReport, RewriteError> {
        let mut report = RelationReport { shape: self.shape, checks: Vec::new() };
        let d = self.d();
        let e = self.cfg.e();
        let basis = self.basis.clone();
        let res: Vec<Vec<u32>> = basis.iter().map(|t| t.residue_sequence(&self.cfg)).collect();
        let (k1, k2) = self.cfg.kappa();
        let charges = [self.cfg.residue_of_content(k1), self.cfg.residue_of_content(k2)];

        let mut psi = Vec::new();
        for r in 1..d {
            psi.push(self.crossing_matrix(r)?);
        }
        let mut y = Vec::new();
        for s in 1..=d {
            y.push(self.dot_matrix(s)?);
        }
        let col = |m: &RationalMatrix, j: usize| -> Vec<BigRational> {
            let mut v = vec![BigRational::zero(); m.nrows()];
            v[j] = BigRational::one();
            m.apply(&v).expect("square")
        };
        let apply = |m: &RationalMatrix, v: &[BigRational]| m.apply(v).expect("square");
        let unit = |j: usize| {
            let mut v = vec![BigRational::zero(); basis.len()];
            v[j] = BigRational::one();
            v
        };
        let sub = |a: &[BigRational], b: &[BigRational]| -> Vec<BigRational> {
            a.iter().zip(b).map(|(x, y)| x - y).collect()
        };
        let residues_of = |v: &[BigRational]| -> HashSet<&Vec<u32>> {
            v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, _)| &res[k]).collect()
        };
        let is_zero = |v: &[BigRational]| v.iter().all(|x| x.is_zero());

        // The first-residue and blob relations: killed idempotents act as zero, i.e.
        // no basis vector carries such a residue sequence.
        for (k, i) in res.iter().enumerate() {
            report.record("idempotent vanishing (first residue)", charges.contains(&i[0]), &basis[k]);
            let blob = d < 2 || i[1] as i64 != (i[0] as i64 + 1).rem_euclid(e);
            report.record("idempotent vanishing (blob)", blob, &basis[k]);
        }
        for j in 0..basis.len() {
            let ej = unit(j);
            // y_1 kills idempotents starting at a charge
            report.record("y_1 e(i) = 0", is_zero(&apply(&y[0], &ej)), &basis[j]);
            // y_r e(i) = e(i) y_r
            for s in 1..=d {
                let v = apply(&y[s - 1], &ej);
                let ok = residues_of(&v).iter().all(|i| **i == res[j]);
                report.record("y_r e(i) = e(i) y_r", ok, &basis[j]);
            }
            // ψ_r e(i) = e(s_r i) ψ_r
            for r in 1..d {
                let v = apply(&psi[r - 1], &ej);
                let mut target = res[j].clone();
                target.swap(r - 1, r);
                let ok = residues_of(&v).iter().all(|i| **i == target);
                report.record("psi_r e(i) = e(s_r i) psi_r", ok, &basis[j]);
            }
            // y_r y_s = y_s y_r
            for r in 1..=d {
                for s in r + 1..=d {
                    let a = apply(&y[r - 1], &apply(&y[s - 1], &ej));
                    let b = apply(&y[s - 1], &apply(&y[r - 1], &ej));
                    report.record("y_r y_s = y_s y_r", a == b, &basis[j]);
                }
            }
            for r in 1..d {
                for s in 1..=d {
                    if s == r || s == r + 1 {
                        continue;
                    }
                    let a = apply(&psi[r - 1], &apply(&y[s - 1], &ej));
                    let b = apply(&y[s - 1], &apply(&psi[r - 1], &ej));
                    let name =
                        if s + 1 == r { "psi_r y_(r-1) = y_(r-1) psi_r" } else { "psi_r y_s = y_s psi_r, |r-s|>1" };
                    report.record(name, a == b, &basis[j]);
                }
                for s in r + 2..d {
                    let a = apply(&psi[r - 1], &apply(&psi[s - 1], &ej));
                    let b = apply(&psi[s - 1], &apply(&psi[r - 1], &ej));
                    report.record("psi_r psi_s = psi_s psi_r, |r-s|>1", a == b, &basis[j]);
                }
                let i = &res[j];
                let delta = if i[r - 1] == i[r] { BigRational::one() } else { BigRational::zero() };
                let with_delta = |v: Vec<BigRational>| -> Vec<BigRational> {
                    let mut v = v;
                    v[j] += &delta;
                    v
                };
                // dot passing a crossing from the right
                let lhs = apply(&psi[r - 1], &apply(&y[r], &ej));
                let rhs = with_delta(apply(&y[r - 1], &apply(&psi[r - 1], &ej)));
                report.record("psi_r y_(r+1) = y_r psi_r + delta", lhs == rhs, &basis[j]);
                // dot passing a crossing from the left
                let lhs = apply(&y[r], &apply(&psi[r - 1], &ej));
                let rhs = with_delta(apply(&psi[r - 1], &apply(&y[r - 1], &ej)));
                report.record("y_(r+1) psi_r = psi_r y_r + delta", lhs == rhs, &basis[j]);
                // quadratic relation
                let lhs = apply(&psi[r - 1], &apply(&psi[r - 1], &ej));
                let rhs = match quadratic_case(i, r, e) {
                    Quadratic::Zero => vec![BigRational::zero(); basis.len()],
                    Quadratic::Identity => ej.clone(),
                    Quadratic::UpperMinusLower => sub(&apply(&y[r], &ej), &apply(&y[r - 1], &ej)),
                    Quadratic::LowerMinusUpper => sub(&apply(&y[r - 1], &ej), &apply(&y[r], &ej)),
                };
                report.record("psi_r^2 quadratic relation", lhs == rhs, &basis[j]);
                // braid relation
                if r + 1 < d {
                    let (a, b) = (&psi[r - 1], &psi[r]);
                    let lhs = apply(a, &apply(b, &apply(a, &ej)));
                    let mut rhs = apply(b, &apply(a, &apply(b, &ej)));
                    rhs[j] += q(braid_constant(i, r, e));
                    report.record("braid relation", lhs == rhs, &basis[j]);
                }
            }
        }
        // Relations on the cyclic generator.
        let z = self.index[&self.init];
        let ez = unit(z);
        for s in 1..=d {
            report.record("y_s z = 0", is_zero(&apply(&y[s - 1], &ez)), &self.init);
        }
        for r in 1..d {
            let v = col(&psi[r - 1], z);
            let expected = match self.init.swap(r) {
                Some(t) => unit(self.index[&t]),
                None => vec![BigRational::zero(); basis.len()],
            };
            report.record("psi_r z: swap or vanish", v == expected, &self.init);
        }
        let m = self.shape.min_part();
        for t in 1..(2 * m).saturating_sub(1) {
            let a = apply(&psi[t], &col(&psi[t - 1], z));
            report.record("psi_(t+1) psi_t z = 0", is_zero(&a), &self.init);
            let b = apply(&psi[t - 1], &col(&psi[t], z));
            report.record("psi_t psi_(t+1) z = 0", is_zero(&b), &self.init);
        }
        Ok(report)
    }
}

/// Outcome of the relation suite on one cell module.
#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub shape: Bipartition,
    pub checks: Vec<RelationCheck>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub relation: &'static str,
    pub passed: usize,
    pub failed: usize,
    /// First basis vector on which the relation failed.
    pub witness: Option<String>,
}

impl RelationReport {
    fn record(&mut self, relation: &'static str, ok: bool, t: &Tableau) {
        let entry = match self.checks.iter_mut().find(|c| c.relation == relation) {
            Some(c) => c,
            None => {
                self.checks.push(RelationCheck { relation, passed: 0, failed: 0, witness: None });
                self.checks.last_mut().unwrap()
            }
        };
        if ok {
            entry.passed += 1;
        } else {
            entry.failed += 1;
            if entry.witness.is_none() {
                entry.witness = Some(t.to_string());
            }
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| c.failed > 0)
    }
}

/// Whether `g` is a length-additive right factor of the permutation `seq`.
fn is_right_factor(seq: &[usize], g: &[usize]) -> bool {
    let mut cur = seq.to_vec();
    for &u in g.iter().rev() {
        if cur[u - 1] < cur[u] {
            return false;
        }
        cur.swap(u - 1, u);
    }
    true
}

/// Words `g` with `ψ_g z = 0` by the Garnir relations, one family per
/// Garnir node `A` with `u = T^λ(A)` and `v` the entry below it: the single
/// crossing `[u]` when `v = u + 1`, and both words `[u, u+1]`, `[u+1, u]`
/// when `v = u + 2`.
pub fn garnir_words(shape: Bipartition) -> Vec<Vec<usize>> {
    let init = Tableau::initial(shape);
    let mut out = Vec::new();
    for node in garnir_nodes(shape) {
        let u = init.entry_at(node).expect("Garnir nodes lie in the shape");
        let v = init.entry_at(Node::new(node.row + 1, node.comp)).expect("Garnir nodes are not removable");
        if v == u + 1 {
            out.push(vec![u]);
        } else {
            out.push(vec![u, u + 1]);
            out.push(vec![u + 1, u]);
        }
    }
    out.sort();
    out
}
