//! One-column bipartitions, their standard tableaux, residues, degrees,
//! dominance orders, initial and Garnir tableaux, and reduced words.
//!
//! A standard tableau of a one-column bipartition is determined by which
//! entries sit in the first component, so [`Tableau`] stores exactly that as a
//! bitmask. Every such subset is standard, which makes enumeration trivial;
//! non-standard fillings only show up as [`Filling`]s (Garnir tableaux, words
//! that leave the standard locus).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest number of strands supported by the bitmask representation.
pub const MAX_D: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("cannot parse bipartition {0:?}: expected \"a,b\" with non-negative integers")]
    BadBipartition(String),
    #[error("shape {shape} has {got} nodes but the configuration has d = {d}")]
    SizeMismatch { shape: Bipartition, got: usize, d: usize },
    #[error("not a Garnir node: {0}")]
    NotGarnirNode(Node),
    #[error("node {0} is not in the diagram")]
    NodeOutOfRange(Node),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("skew shape {outer}/{inner} is not defined: the inner diagram is not contained in the outer one")]
    NotContained { outer: Bipartition, inner: Bipartition },
}

/// The data fixing the algebra: number of strands `d`, quantum characteristic
/// `e` and the bicharge `kappa = (k1, k2)` with `0 < k2 - k1 < e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraConfig {
    d: usize,
    e: i64,
    kappa: (i64, i64),
}

impl AlgebraConfig {
    pub fn new(d: usize, e: i64, kappa: (i64, i64)) -> Result<Self, CombError> {
        if d == 0 || d > MAX_D {
            return Err(CombError::InvalidConfig(format!("d must lie in 1..={MAX_D}, got {d}")));
        }
        if e < 2 {
            return Err(CombError::InvalidConfig(format!("e must be at least 2, got {e}")));
        }
        let (k1, k2) = kappa;
        if k1 >= k2 {
            return Err(CombError::InvalidConfig(format!("bicharge must satisfy k1 < k2, got ({k1},{k2})")));
        }
        if k2 - k1 >= e {
            return Err(CombError::InvalidConfig(format!(
                "bicharge ({k1},{k2}) is not admissible for e = {e}: need 0 < k2 - k1 < e"
            )));
        }
        Ok(AlgebraConfig { d, e, kappa })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn kappa(&self) -> (i64, i64) {
        self.kappa
    }

    /// `k2 - k1`, the offset of the origin from the wall through zero.
    pub fn rho(&self) -> i64 {
        self.kappa.1 - self.kappa.0
    }

    /// Same `e` and bicharge, different number of strands.
    pub fn with_d(&self, d: usize) -> Result<Self, CombError> {
        AlgebraConfig::new(d, self.e, self.kappa)
    }

    pub fn residue_of_content(&self, content: i64) -> u32 {
        content.rem_euclid(self.e) as u32
    }

    /// Representatives `(0, k)` for `k = 1..e-1`; every admissible bicharge
    /// with `k1 < k2` is a translate of one of these.
    pub fn standard_kappas(e: i64) -> Vec<(i64, i64)> {
        (1..e).map(|k| (0, k)).collect()
    }

    /// All one-column bipartitions of `d`, ordered by label `l1 - l2`.
    pub fn bipartitions(&self) -> Vec<Bipartition> {
        enumerate_bipartitions(self.d)
    }
}

/// A one-column bipartition `((1^l1), (1^l2))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bipartition {
    pub l1: usize,
    pub l2: usize,
}

impl Bipartition {
    pub fn new(l1: usize, l2: usize) -> Self {
        Bipartition { l1, l2 }
    }

    /// The bipartition of `d` with label `v = l1 - l2`, if one exists.
    pub fn from_label(d: usize, v: i64) -> Option<Self> {
        let d = d as i64;
        if v.abs() > d || (d - v) % 2 != 0 {
            return None;
        }
        Some(Bipartition::new(((d + v) / 2) as usize, ((d - v) / 2) as usize))
    }

    pub fn size(&self) -> usize {
        self.l1 + self.l2
    }

    /// The integer label `l1 - l2`.
    pub fn label(&self) -> i64 {
        self.l1 as i64 - self.l2 as i64
    }

    pub fn min_part(&self) -> usize {
        self.l1.min(self.l2)
    }

    pub fn part(&self, comp: u8) -> usize {
        if comp == 1 {
            self.l1
        } else {
            self.l2
        }
    }

    pub fn contains_node(&self, n: Node) -> bool {
        n.row >= 1 && n.row <= self.part(n.comp)
    }

    pub fn check_size(&self, cfg: &AlgebraConfig) -> Result<(), CombError> {
        if self.size() != cfg.d() {
            return Err(CombError::SizeMismatch { shape: *self, got: self.size(), d: cfg.d() });
        }
        Ok(())
    }

    /// Nodes that can be added keeping a one-column bipartition.
    pub fn addable(&self) -> [Node; 2] {
        [Node::new(self.l1 + 1, 1), Node::new(self.l2 + 1, 2)]
    }

    pub fn removable(&self) -> Vec<Node> {
        let mut v = Vec::with_capacity(2);
        if self.l1 > 0 {
            v.push(Node::new(self.l1, 1));
        }
        if self.l2 > 0 {
            v.push(Node::new(self.l2, 2));
        }
        v
    }

    pub fn remove(&self, n: Node) -> Option<Bipartition> {
        match n.comp {
            1 if self.l1 > 0 && n.row == self.l1 => Some(Bipartition::new(self.l1 - 1, self.l2)),
            2 if self.l2 > 0 && n.row == self.l2 => Some(Bipartition::new(self.l1, self.l2 - 1)),
            _ => None,
        }
    }

    /// Whether the diagram of `self` contains the diagram of `other`.
    pub fn contains(&self, other: &Bipartition) -> bool {
        other.l1 <= self.l1 && other.l2 <= self.l2
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.l1, self.l2)
    }
}

impl FromStr for Bipartition {
    type Err = CombError;
    fn from_str(s: &str) -> Result<Self, CombError> {
        let bad = || CombError::BadBipartition(s.to_string());
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let a = a.trim().parse::<usize>().map_err(|_| bad())?;
        let b = b.trim().parse::<usize>().map_err(|_| bad())?;
        Ok(Bipartition::new(a, b))
    }
}

/// All bipartitions of `d`, ordered by label ascending.
pub fn enumerate_bipartitions(d: usize) -> Vec<Bipartition> {
    (0..=d).map(|l1| Bipartition::new(l1, d - l1)).collect()
}

/// A node `(row, 1, comp)`; the column index is always 1 and is not stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Node {
    pub row: usize,
    pub comp: u8,
}

impl Node {
    pub fn new(row: usize, comp: u8) -> Self {
        debug_assert!(comp == 1 || comp == 2);
        Node { row, comp }
    }

    pub fn content(&self, cfg: &AlgebraConfig) -> i64 {
        let k = if self.comp == 1 { cfg.kappa().0 } else { cfg.kappa().1 };
        k + 1 - self.row as i64
    }

    pub fn residue(&self, cfg: &AlgebraConfig) -> u32 {
        cfg.residue_of_content(self.content(cfg))
    }

    /// Strict version of the node order: smaller content, or equal content
    /// and larger component index.
    pub fn lex_less(&self, other: &Node, cfg: &AlgebraConfig) -> bool {
        let (a, b) = (self.content(cfg), other.content(cfg));
        a < b || (a == b && self.comp > other.comp)
    }

    /// `self` is strictly less dominant than `other`: strictly smaller in the
    /// node order and of the same residue.
    pub fn dominated_by(&self, other: &Node, cfg: &AlgebraConfig) -> bool {
        self.lex_less(other, cfg) && self.residue(cfg) == other.residue(cfg)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},1,{})", self.row, self.comp)
    }
}

/// A standard tableau of a one-column bipartition. Bit `k - 1` of `mask` is
/// set iff the entry `k` lies in the first component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tableau {
    shape: Bipartition,
    mask: u64,
}

impl Ord for Tableau {
    /// Size, then shape, then step sequence lexicographically (a first-component
    /// step sorts before a second-component step).
    fn cmp(&self, other: &Self) -> Ordering {
        (self.size(), self.shape)
            .cmp(&(other.size(), other.shape))
            .then_with(|| other.mask.reverse_bits().cmp(&self.mask.reverse_bits()))
    }
}

impl PartialOrd for Tableau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Tableau {
    /// Builds a tableau from its path steps (1 = first component, 2 = second).
    pub fn from_steps(steps: &[u8]) -> Result<Self, CombError> {
        if steps.len() > MAX_D {
            return Err(CombError::InvalidTableau(format!("more than {MAX_D} entries")));
        }
        let mut mask = 0u64;
        let mut l1 = 0;
        for (k, &s) in steps.iter().enumerate() {
            match s {
                1 => {
                    mask |= 1 << k;
                    l1 += 1;
                }
                2 => {}
                _ => return Err(CombError::InvalidTableau(format!("step {s} is not 1 or 2"))),
            }
        }
        Ok(Tableau { shape: Bipartition::new(l1, steps.len() - l1), mask })
    }

    /// Builds a tableau from the entries of both columns, read top-down.
    pub fn from_columns(c1: &[usize], c2: &[usize]) -> Result<Self, CombError> {
        let d = c1.len() + c2.len();
        let mut seen = vec![false; d + 1];
        for col in [c1, c2] {
            if col.windows(2).any(|w| w[0] >= w[1]) {
                return Err(CombError::InvalidTableau("columns must increase downwards".into()));
            }
            for &x in col {
                if x == 0 || x > d || seen[x] {
                    return Err(CombError::InvalidTableau(format!("entries must be a permutation of 1..={d}")));
                }
                seen[x] = true;
            }
        }
        let steps: Vec<u8> = (1..=d).map(|k| if c1.contains(&k) { 1 } else { 2 }).collect();
        Tableau::from_steps(&steps)
    }

    pub(crate) fn from_mask(shape: Bipartition, mask: u64) -> Self {
        debug_assert_eq!(mask.count_ones() as usize, shape.l1);
        debug_assert!(shape.size() == 64 || mask >> shape.size() == 0);
        Tableau { shape, mask }
    }

    pub fn shape(&self) -> Bipartition {
        self.shape
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Component (1 or 2) holding the entry `k`.
    pub fn component_of(&self, k: usize) -> u8 {
        if self.mask >> (k - 1) & 1 == 1 {
            1
        } else {
            2
        }
    }

    pub fn steps(&self) -> Vec<u8> {
        (1..=self.size()).map(|k| self.component_of(k)).collect()
    }

    /// Entries of both columns, top-down.
    pub fn columns(&self) -> (Vec<usize>, Vec<usize>) {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for k in 1..=self.size() {
            if self.component_of(k) == 1 {
                a.push(k)
            } else {
                b.push(k)
            }
        }
        (a, b)
    }

    /// The node holding `k`.
    pub fn node_of(&self, k: usize) -> Node {
        let comp = self.component_of(k);
        let below = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let in1 = (self.mask & below).count_ones() as usize;
        let row = if comp == 1 { in1 } else { k - in1 };
        Node::new(row, comp)
    }

    /// The entry at a node of the shape.
    pub fn entry_at(&self, n: Node) -> Result<usize, CombError> {
        if !self.shape.contains_node(n) {
            return Err(CombError::NodeOutOfRange(n));
        }
        let (a, b) = self.columns();
        Ok(if n.comp == 1 { a[n.row - 1] } else { b[n.row - 1] })
    }

    /// `Shape(T restricted to {1..k})`.
    pub fn shape_at(&self, k: usize) -> Bipartition {
        let below = if k >= 64 { u64::MAX } else { (1u64 << k) - 1 };
        let l1 = (self.mask & below).count_ones() as usize;
        Bipartition::new(l1, k - l1)
    }

    /// The subtableau on `{1..k}`.
    pub fn restrict(&self, k: usize) -> Tableau {
        let below = if k >= 64 { u64::MAX } else { (1u64 << k) - 1 };
        Tableau::from_mask(self.shape_at(k), self.mask & below)
    }

    pub fn residue_sequence(&self, cfg: &AlgebraConfig) -> Vec<u32> {
        (1..=self.size()).map(|k| self.node_of(k).residue(cfg)).collect()
    }

    /// Degree from addable and removable nodes of the same residue lying
    /// below the node of each entry.
    pub fn degree(&self, cfg: &AlgebraConfig) -> i64 {
        let mut deg = 0i64;
        for k in 1..=self.size() {
            let node = self.node_of(k);
            let sh = self.shape_at(k);
            for a in sh.addable() {
                if a.dominated_by(&node, cfg) {
                    deg += 1;
                }
            }
            for r in sh.removable() {
                if r != node && r.dominated_by(&node, cfg) {
                    deg -= 1;
                }
            }
        }
        deg
    }

    /// The initial tableau: evens up to `2m` in the first component, odds
    /// below `2m` in the second, the rest down the longer column.
    pub fn initial(shape: Bipartition) -> Tableau {
        let m = shape.min_part();
        let d = shape.size();
        let mut mask = 0u64;
        for k in 1..=d {
            let first = if k <= 2 * m { k % 2 == 0 } else { shape.l1 > shape.l2 };
            if first {
                mask |= 1 << (k - 1);
            }
        }
        Tableau::from_mask(shape, mask)
    }

    /// `s_r T`, if it is standard (i.e. `r` and `r + 1` lie in different
    /// components).
    pub fn swap(&self, r: usize) -> Option<Tableau> {
        let (a, b) = (self.component_of(r), self.component_of(r + 1));
        if a == b {
            return None;
        }
        let mask = self.mask ^ (0b11 << (r - 1));
        Some(Tableau::from_mask(self.shape, mask))
    }

    /// The general filling underlying this tableau.
    pub fn to_filling(&self) -> Filling {
        let (c1, c2) = self.columns();
        Filling { shape: self.shape, col1: c1, col2: c2 }
    }

    /// The permutation `w_T` as a sequence: position `j` holds the entry of
    /// `T` at the node carrying `j + 1` in the initial tableau.
    pub fn permutation(&self) -> Vec<usize> {
        let init = Tableau::initial(self.shape);
        let (a, b) = self.columns();
        let (mut i1, mut i2) = (0, 0);
        (1..=self.size())
            .map(|j| {
                if init.component_of(j) == 1 {
                    i1 += 1;
                    a[i1 - 1]
                } else {
                    i2 += 1;
                    b[i2 - 1]
                }
            })
            .collect()
    }

    /// Coxeter length of `w_T`.
    pub fn coxeter_length(&self) -> usize {
        inversions(&self.permutation())
    }

    /// The canonical reduced word of `w_T`: letters `[a1, .., ak]` with
    /// `T = s_{a1} ... s_{ak} T^lambda`.
    ///
    /// Found by repeatedly undoing the leftmost adjacent value swap that
    /// shortens the permutation, so every intermediate tableau stays standard.
    pub fn reduced_word(&self) -> ReducedWord {
        let mut seq = self.permutation();
        let d = seq.len();
        let mut pos = vec![0usize; d + 2];
        for (i, &v) in seq.iter().enumerate() {
            pos[v] = i;
        }
        let mut letters = Vec::new();
        while let Some(a) = (1..d).find(|&a| pos[a + 1] < pos[a]) {
            seq.swap(pos[a], pos[a + 1]);
            pos.swap(a, a + 1);
            letters.push(a);
        }
        ReducedWord(letters)
    }

    /// All standard tableaux of a shape, ordered lexicographically by step
    /// sequence with first-component steps first.
    pub fn enumerate(shape: Bipartition) -> Vec<Tableau> {
        let mut out = Vec::new();
        let mut steps = Vec::with_capacity(shape.size());
        fn rec(l1: usize, l2: usize, steps: &mut Vec<u8>, out: &mut Vec<Tableau>) {
            if l1 == 0 && l2 == 0 {
                out.push(Tableau::from_steps(steps).expect("valid steps"));
                return;
            }
            if l1 > 0 {
                steps.push(1);
                rec(l1 - 1, l2, steps, out);
                steps.pop();
            }
            if l2 > 0 {
                steps.push(2);
                rec(l1, l2 - 1, steps, out);
                steps.pop();
            }
        }
        rec(shape.l1, shape.l2, &mut steps, &mut out);
        out
    }

    /// Composition with a skew tableau of `outer / self.shape()`.
    pub fn compose(&self, skew: &SkewTableau) -> Result<Tableau, CombError> {
        if skew.inner != self.shape {
            return Err(CombError::InvalidTableau(format!(
                "skew tableau starts at {} but the tableau has shape {}",
                skew.inner, self.shape
            )));
        }
        let mut steps = self.steps();
        steps.extend_from_slice(&skew.steps);
        Tableau::from_steps(&steps)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.columns();
        write!(f, "({:?},{:?})", a, b)
    }
}

/// Number of inversions of a sequence.
pub fn inversions(seq: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                n += 1;
            }
        }
    }
    n
}

/// A word in the simple transpositions `s_1 .. s_{d-1}`, leftmost letter
/// first. As an operator it acts right to left.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedWord(pub Vec<usize>);

impl ReducedWord {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Applies the word to a filling: the rightmost letter acts first.
    pub fn apply(&self, f: &Filling) -> Filling {
        let mut out = f.clone();
        for &a in self.0.iter().rev() {
            out = out.swap_entries(a);
        }
        out
    }
}

/// An arbitrary bijective filling of a one-column bipartition, not
/// necessarily standard.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Filling {
    pub shape: Bipartition,
    pub col1: Vec<usize>,
    pub col2: Vec<usize>,
}

impl Filling {
    /// Interchanges the entries `a` and `a + 1`.
    pub fn swap_entries(&self, a: usize) -> Filling {
        let f = |x: usize| {
            if x == a {
                a + 1
            } else if x == a + 1 {
                a
            } else {
                x
            }
        };
        Filling {
            shape: self.shape,
            col1: self.col1.iter().map(|&x| f(x)).collect(),
            col2: self.col2.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn is_standard(&self) -> bool {
        self.col1.windows(2).all(|w| w[0] < w[1]) && self.col2.windows(2).all(|w| w[0] < w[1])
    }

    pub fn to_tableau(&self) -> Option<Tableau> {
        if self.is_standard() {
            Tableau::from_columns(&self.col1, &self.col2).ok()
        } else {
            None
        }
    }
}

/// A standard filling of the skew diagram `outer / inner`, stored as the
/// path steps leading from `inner` to `outer`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewTableau {
    pub outer: Bipartition,
    pub inner: Bipartition,
    steps: Vec<u8>,
}

impl SkewTableau {
    pub fn from_steps(outer: Bipartition, inner: Bipartition, steps: &[u8]) -> Result<Self, CombError> {
        if !outer.contains(&inner) {
            return Err(CombError::NotContained { outer, inner });
        }
        let n1 = steps.iter().filter(|&&s| s == 1).count();
        let n2 = steps.iter().filter(|&&s| s == 2).count();
        if n1 + n2 != steps.len() || inner.l1 + n1 != outer.l1 || inner.l2 + n2 != outer.l2 {
            return Err(CombError::InvalidTableau(format!("steps do not fill the skew shape {outer}/{inner}")));
        }
        Ok(SkewTableau { outer, inner, steps: steps.to_vec() })
    }

    pub fn steps(&self) -> &[u8] {
        &self.steps
    }
}

/// Outcome of comparing two tableaux in the dominance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomOrder {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// `a` precedes `b` on shapes: `|a1 - a2| >= |b1 - b2|`.
pub fn shape_preceq(a: &Bipartition, b: &Bipartition) -> bool {
    a.label().abs() >= b.label().abs()
}

/// `T ⪯ S`: every restriction of `T` precedes the matching restriction of `S`.
pub fn precedes(t: &Tableau, s: &Tableau) -> bool {
    t.size() == s.size() && (1..=t.size()).all(|k| shape_preceq(&t.shape_at(k), &s.shape_at(k)))
}

/// The dominance order on tableaux of the same size: `T ⊴ S` iff `T ⪯ S`
/// and the residue sequences agree.
pub fn dominance(t: &Tableau, s: &Tableau, cfg: &AlgebraConfig) -> DomOrder {
    if t == s {
        return DomOrder::Equal;
    }
    if t.size() != s.size() || t.residue_sequence(cfg) != s.residue_sequence(cfg) {
        return DomOrder::Incomparable;
    }
    match (precedes(t, s), precedes(s, t)) {
        (true, false) => DomOrder::Less,
        (false, true) => DomOrder::Greater,
        (true, true) => DomOrder::Equal,
        (false, false) => DomOrder::Incomparable,
    }
}

/// Nodes of the shape that are not removable.
pub fn garnir_nodes(shape: Bipartition) -> Vec<Node> {
    let mut v = Vec::new();
    for comp in [1u8, 2] {
        for row in 1..shape.part(comp) {
            v.push(Node::new(row, comp));
        }
    }
    v
}

/// The Garnir tableaux attached to a Garnir node `A = (r,1,m)`: with
/// `u = T^lambda(A)` and `v` the entry below it, one tableau `s_u T^lambda`
/// when `v = u + 1`, and the pair `s_u s_{u+1} T^lambda`,
/// `s_{u+1} s_u T^lambda` when `v = u + 2`.
pub fn garnir_tableaux(node: Node, shape: Bipartition) -> Result<Vec<Filling>, CombError> {
    if !shape.contains_node(node) || node.row >= shape.part(node.comp) {
        return Err(CombError::NotGarnirNode(node));
    }
    let init = Tableau::initial(shape);
    let u = init.entry_at(node)?;
    let v = init.entry_at(Node::new(node.row + 1, node.comp))?;
    let f = init.to_filling();
    match v - u {
        1 => Ok(vec![ReducedWord(vec![u]).apply(&f)]),
        2 => Ok(vec![ReducedWord(vec![u, u + 1]).apply(&f), ReducedWord(vec![u + 1, u]).apply(&f)]),
        _ => unreachable!("consecutive entries of an initial tableau differ by 1 or 2"),
    }
}
