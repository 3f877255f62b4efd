//! BGG complexes of cell modules, their exact homology, the two-term
//! complex for shapes on a wall, the restriction rule, and the compositions
//! of one-column homomorphisms around a diamond.
//!
//! For a shape `λ` in an alcove, term `C_i` collects the linked shapes `ν`
//! with `|ℓ(ν)| = |ℓ(λ)| + i`, at most one on each side of the origin, each
//! shifted by `i`. The shape on the same side as `λ` comes first. The
//! differential `δ_i: C_{i+1} → C_i` is assembled from one-column
//! homomorphisms with the sign pattern
//!
//! ```text
//!   |ℓ(λ)| + i even:  ( -φ   φ )      odd:  (  φ  -φ )
//!                     (  φ  -φ )            ( -φ   φ )
//! ```
//!
//! for `i > 0`, plain signs for `δ_0`, and plain signs for a last column
//! whose partner on the other side no longer exists.

use exactla::{BigRational, LaurentPoly, LinAlgError, RationalMatrix};
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::cellmod::{as_single_term, hom_source, hom_sources, simple_graded_dim, CellError, HomKind, ModuleStore};
use crate::combinatorics::{AlgebraConfig, Bipartition, Tableau};
use crate::geometry::{simple_basis_paths, GeometryContext, Path, Side};
use crate::rewrite::CellVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BggError {
    #[error("{0} lies on a wall; use the two-term wall complex")]
    OnWall(Bipartition),
    #[error("{0} lies in an alcove; use the full complex")]
    InAlcove(Bipartition),
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// One term `C_i = ⊕ Δ(ν)⟨shift⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub shapes: Vec<Bipartition>,
    pub shift: i64,
    pub dims: Vec<usize>,
}

impl Term {
    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.dims
            .iter()
            .map(|d| {
                let o = acc;
                acc += d;
                o
            })
            .collect()
    }
}

/// A chain complex of shifted cell modules with its differentials
/// `δ_i: C_{i+1} → C_i`.
#[derive(Debug, Clone)]
pub struct BggComplex {
    pub base: Bipartition,
    pub convention: SignConvention,
    pub terms: Vec<Term>,
    pub differentials: Vec<RationalMatrix>,
    /// Degree of every basis vector of every term, after the shift.
    pub degrees: Vec<Vec<i64>>,
}

/// The linked shapes at level `i` of the complex of `λ`: same side first.
pub fn level_shapes(ctx: &GeometryContext, lambda: &Bipartition, i: usize) -> Vec<Bipartition> {
    let base = ctx.length(lambda);
    let target = base.abs_twice() + 2 * i as i64;
    let mut shapes: Vec<Bipartition> =
        ctx.linkage_class(lambda).into_iter().filter(|s| ctx.length(s).abs_twice() == target).collect();
    shapes.sort_by_key(|s| ctx.length(s).side() != base.side());
    shapes
}

/// How the blocks of the differentials are signed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    /// The displayed matrices: plain `δ_0`, the even/odd patterns for
    /// `i > 0`, and a plain column once one side is exhausted.
    #[default]
    Displayed,
    /// Same-side blocks positive and the opposite-side blocks of `δ_i`
    /// multiplied by `(−1)^i`. Both compositions around a diamond agree on
    /// the generator, so this choice makes every square cancel.
    Alternating,
}

/// Sign of the block `ν_{i+1} → ν_i` in `δ_i`; `same_side` says whether the
/// two shapes lie on the same side of the origin.
pub fn differential_sign(
    convention: SignConvention,
    base_abs_twice: i64,
    i: usize,
    same_side: bool,
    full_column: bool,
) -> i64 {
    let base = base_abs_twice / 2;
    match convention {
        SignConvention::Displayed => {
            if i == 0 || !full_column {
                return 1;
            }
            let even = (base + i as i64) % 2 == 0;
            if even == same_side {
                -1
            } else {
                1
            }
        }
        SignConvention::Alternating => {
            if same_side || i.is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
    }
}

impl ModuleStore {
    /// The BGG complex of an alcove shape with the displayed signs.
    pub fn build_complex(&mut self, lambda: &Bipartition) -> Result<BggComplex, BggError> {
        self.build_complex_with(lambda, SignConvention::Displayed)
    }

    pub fn build_complex_with(
        &mut self,
        lambda: &Bipartition,
        convention: SignConvention,
    ) -> Result<BggComplex, BggError> {
        let ctx = *self.ctx();
        let base = ctx.length(lambda);
        if base.is_wall() {
            return Err(BggError::OnWall(*lambda));
        }
        let mut levels = vec![vec![*lambda]];
        loop {
            let next = level_shapes(&ctx, lambda, levels.len());
            if next.is_empty() {
                break;
            }
            levels.push(next);
        }
        let terms: Vec<Term> = levels
            .iter()
            .enumerate()
            .map(|(i, shapes)| Term {
                shapes: shapes.clone(),
                shift: i as i64,
                dims: shapes.iter().map(|s| Tableau::enumerate(*s).len()).collect(),
            })
            .collect();
        let degrees = terms
            .iter()
            .map(|t| {
                t.shapes
                    .iter()
                    .flat_map(|s| Tableau::enumerate(*s).into_iter().map(|x| x.degree(&ctx.cfg) + t.shift))
                    .collect()
            })
            .collect();
        let mut differentials = Vec::new();
        for i in 0..terms.len().saturating_sub(1) {
            let (lower, upper) = (&terms[i], &terms[i + 1]);
            let full_column = upper.shapes.len() == 2;
            let mut m = RationalMatrix::zeros(lower.dim(), upper.dim());
            let (lo, uo) = (lower.offsets(), upper.offsets());
            for (a, tgt) in lower.shapes.iter().enumerate() {
                for (b, src) in upper.shapes.iter().enumerate() {
                    if hom_source(&ctx, src, tgt).is_err() {
                        continue;
                    }
                    let hom = self.build_hom(src, tgt)?;
                    let same = ctx.length(src).side() == ctx.length(tgt).side();
                    let sign = differential_sign(convention, base.abs_twice(), i, same, full_column);
                    m.add_block(lo[a], uo[b], &hom.matrix.scaled(&BigRational::from_integer(sign.into())));
                }
            }
            differentials.push(m);
        }
        Ok(BggComplex { base: *lambda, convention, terms, differentials, degrees })
    }

    /// The two-term complex `0 → Δ(μ)⟨1⟩ → Δ(λ) → 0` of a wall shape.
    pub fn build_wall_complex(&mut self, lambda: &Bipartition) -> Result<WallComplex, BggError> {
        let ctx = *self.ctx();
        let len = ctx.length(lambda);
        if !len.is_wall() {
            return Err(BggError::InAlcove(*lambda));
        }
        let dim = Tableau::enumerate(*lambda).len();
        let sources = hom_sources(&ctx, lambda);
        let Some(h) = sources.first() else {
            return Ok(WallComplex { lambda: *lambda, mu: None, rank: 0, source_dim: 0, target_dim: dim });
        };
        let hom = self.build_hom(&h.source, lambda)?;
        Ok(WallComplex {
            lambda: *lambda,
            mu: Some(h.source),
            rank: hom.rank(),
            source_dim: Tableau::enumerate(h.source).len(),
            target_dim: dim,
        })
    }

    /// Both compositions around one diamond, evaluated on the generator of
    /// `Δ(α)`.
    pub fn diamond(&mut self, d: &Diamond) -> Result<DiamondValues, BggError> {
        let z = CellVector::basis(Tableau::initial(d.alpha));
        let via_main = self.compose(&z, &d.alpha, &d.beta, &d.gamma)?;
        let via_prime = self.compose(&z, &d.alpha, &d.beta_prime, &d.gamma)?;
        Ok(DiamondValues { via_main, via_prime })
    }

    fn compose(
        &mut self,
        v: &CellVector,
        a: &Bipartition,
        b: &Bipartition,
        c: &Bipartition,
    ) -> Result<CellVector, BggError> {
        let ctx = *self.ctx();
        let h1 = hom_source(&ctx, a, b)?;
        let mid = self.apply_hom(&h1, b, v)?;
        let h2 = hom_source(&ctx, b, c)?;
        Ok(self.apply_hom(&h2, c, &mid)?)
    }
}

/// Ranks and homology of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Homology {
    pub ranks: Vec<usize>,
    /// `dim C_i − rank δ_{i−1} − rank δ_i`; negative values betray a failure
    /// of `δ ∘ δ = 0`.
    pub dims: Vec<i64>,
    pub graded: Vec<LaurentPoly>,
}

impl BggComplex {
    /// Every `δ_i ∘ δ_{i+1}` vanishes.
    pub fn is_complex(&self) -> Result<bool, BggError> {
        for w in self.differentials.windows(2) {
            if !w[0].checked_mul(&w[1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Indices `i` with `δ_i ∘ δ_{i+1} ≠ 0`.
    pub fn square_failures(&self) -> Result<Vec<usize>, BggError> {
        let mut out = Vec::new();
        for (i, w) in self.differentials.windows(2).enumerate() {
            if !w[0].checked_mul(&w[1])?.is_zero() {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Every differential preserves degrees once the shifts are applied.
    pub fn is_degree_zero(&self) -> bool {
        self.differentials
            .iter()
            .enumerate()
            .all(|(i, m)| m.iter().all(|(r, c, _)| self.degrees[i][r] == self.degrees[i + 1][c]))
    }

    /// Exact homology, total and degree by degree.
    pub fn homology(&self) -> Homology {
        let n = self.terms.len();
        let ranks: Vec<usize> = self.differentials.iter().map(|m| m.rank()).collect();
        let rank = |i: isize| -> usize {
            if i < 0 || i as usize >= ranks.len() {
                0
            } else {
                ranks[i as usize]
            }
        };
        let dims = (0..n)
            .map(|i| self.terms[i].dim() as i64 - rank(i as isize - 1) as i64 - rank(i as isize) as i64)
            .collect();
        let graded = (0..n).map(|i| self.graded_homology(i)).collect();
        Homology { ranks, dims, graded }
    }

    fn graded_homology(&self, i: usize) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        let mut degs: Vec<i64> = self.degrees[i].clone();
        degs.sort();
        degs.dedup();
        for k in degs {
            let dim = self.degrees[i].iter().filter(|&&x| x == k).count();
            let below = if i > 0 {
                degree_block_rank(&self.differentials[i - 1], &self.degrees[i - 1], &self.degrees[i], k)
            } else {
                0
            };
            let above = if i < self.differentials.len() {
                degree_block_rank(&self.differentials[i], &self.degrees[i], &self.degrees[i + 1], k)
            } else {
                0
            };
            out.add_term(k, dim as i64 - below as i64 - above as i64);
        }
        out
    }

    /// `Σ_i (−1)^i dim C_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.terms.iter().enumerate().map(|(i, t)| if i % 2 == 0 { t.dim() as i64 } else { -(t.dim() as i64) }).sum()
    }

    /// `Σ_i (−1)^i dim_t C_i` with the shifts included.
    pub fn graded_euler_characteristic(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (i, degs) in self.degrees.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for &k in degs {
                out.add_term(k, sign);
            }
        }
        out
    }

    pub fn summary(&self) -> Result<ComplexReport, BggError> {
        let h = self.homology();
        Ok(ComplexReport {
            lambda: self.base.to_string(),
            signs: self.convention,
            terms: self
                .terms
                .iter()
                .flat_map(|t| {
                    t.shapes.iter().zip(&t.dims).map(|(s, &dim)| TermReport {
                        shape: s.to_string(),
                        shift: t.shift,
                        dim,
                    })
                })
                .collect(),
            ranks: h.ranks,
            square_failures: self.square_failures()?,
            homology: h.dims,
            graded_h0: h.graded.first().cloned().unwrap_or_default(),
            euler_characteristic: self.euler_characteristic(),
        })
    }
}

fn degree_block_rank(m: &RationalMatrix, row_deg: &[i64], col_deg: &[i64], k: i64) -> usize {
    let rows: Vec<usize> = (0..row_deg.len()).filter(|&r| row_deg[r] == k).collect();
    let cols: Vec<usize> = (0..col_deg.len()).filter(|&c| col_deg[c] == k).collect();
    if rows.is_empty() || cols.is_empty() {
        return 0;
    }
    let mut row_pos = vec![usize::MAX; row_deg.len()];
    for (i, &r) in rows.iter().enumerate() {
        row_pos[r] = i;
    }
    let mut col_pos = vec![usize::MAX; col_deg.len()];
    for (j, &c) in cols.iter().enumerate() {
        col_pos[c] = j;
    }
    let mut sub = RationalMatrix::zeros(rows.len(), cols.len());
    for (r, c, x) in m.iter() {
        if row_pos[r] != usize::MAX && col_pos[c] != usize::MAX {
            sub.set(row_pos[r], col_pos[c], x.clone());
        }
    }
    sub.rank()
}

/// JSON-ready summary of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub lambda: String,
    pub signs: SignConvention,
    pub terms: Vec<TermReport>,
    pub ranks: Vec<usize>,
    /// Indices `i` with `δ_i ∘ δ_{i+1} ≠ 0`.
    pub square_failures: Vec<usize>,
    pub homology: Vec<i64>,
    #[serde(rename = "graded_H0")]
    pub graded_h0: LaurentPoly,
    pub euler_characteristic: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermReport {
    pub shape: String,
    pub shift: i64,
    pub dim: usize,
}

/// The complex `0 → Δ(μ)⟨1⟩ → Δ(λ) → 0` of a wall shape `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallComplex {
    pub lambda: Bipartition,
    pub mu: Option<Bipartition>,
    pub rank: usize,
    pub source_dim: usize,
    pub target_dim: usize,
}

impl WallComplex {
    pub fn is_injective(&self) -> bool {
        self.rank == self.source_dim
    }

    pub fn cokernel_dim(&self) -> usize {
        self.target_dim - self.rank
    }
}

/// Four linked shapes `α → β, β' → γ` with `|ℓ(α)| = |ℓ(γ)| + 2`; `β` lies on
/// the side of `γ`, `β'` on the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Diamond {
    pub alpha: Bipartition,
    pub beta: Bipartition,
    pub beta_prime: Bipartition,
    pub gamma: Bipartition,
}

impl Diamond {
    /// Whether `α` lies on the same side of the origin as `γ`.
    pub fn alpha_same_side(&self, ctx: &GeometryContext) -> bool {
        ctx.length(&self.alpha).side() == ctx.length(&self.gamma).side()
    }
}

/// The two compositions around a diamond applied to the generator of `Δ(α)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiamondValues {
    pub via_main: CellVector,
    pub via_prime: CellVector,
}

/// All diamonds of one configuration.
pub fn diamonds(ctx: &GeometryContext) -> Vec<Diamond> {
    let mut out = Vec::new();
    for gamma in ctx.cfg.bipartitions() {
        if ctx.length(&gamma).is_wall() {
            continue;
        }
        let srcs = hom_sources(ctx, &gamma);
        let (Some(beta), Some(beta_prime)) = (
            srcs.iter().find(|h| h.kind == HomKind::Main).map(|h| h.source),
            srcs.iter().find(|h| h.kind == HomKind::Prime).map(|h| h.source),
        ) else {
            continue;
        };
        for alpha in level_shapes(ctx, &gamma, 2) {
            if hom_source(ctx, &alpha, &beta).is_ok() && hom_source(ctx, &alpha, &beta_prime).is_ok() {
                out.push(Diamond { alpha, beta, beta_prime, gamma });
            }
        }
    }
    out
}

/// Walls, in order of application, of the reflections predicted to carry
/// the initial path of `α` onto the two diamond composites when `α` lies on
/// the side of `γ`: `(via β, via β')`.
pub fn predicted_diamond_walls(ctx: &GeometryContext, d: &Diamond) -> (Vec<i64>, Vec<i64>) {
    let side = ctx.length(&d.gamma).side();
    // Work in the non-positive picture and mirror walls back: the length
    // preserving mirror exchanges wall `w` with wall `1 - w`.
    let flip = |w: i64| if side == Side::Neg { w } else { 1 - w };
    let signed = |s: &Bipartition| {
        let l = ctx.length(s);
        let m = l.twice / 2;
        if side == Side::Neg {
            m
        } else {
            -m
        }
    };
    let lg = signed(&d.gamma);
    let lb = signed(&d.beta);
    let via_main = vec![flip(lb), flip(0), flip(1), flip(lg + 1)];
    let via_prime = vec![flip(0), flip(1)];
    (via_main, via_prime)
}

/// Applies reflections in the given walls, each at the last contact of the
/// current path, to the initial path of `shape`.
pub fn reflect_initial(ctx: &GeometryContext, shape: &Bipartition, walls: &[i64]) -> Option<Path> {
    let mut p = Path::from(Tableau::initial(*shape));
    for &w in walls {
        p = p.reflect_last(ctx, w).ok()?;
    }
    Some(p)
}

/// Outcome of checking one diamond.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiamondCheck {
    pub diamond: Diamond,
    pub alpha_same_side: bool,
    /// Unit in front of the single basis vector of each composite, if the
    /// composite is such a multiple.
    pub unit_main: Option<i64>,
    pub unit_prime: Option<i64>,
    /// Whether each composite is supported on the predicted path.
    pub path_main_ok: Option<bool>,
    pub path_prime_ok: Option<bool>,
    /// `(−1)^{|ℓ(γ)|}`.
    pub predicted_sign: i64,
}

impl DiamondCheck {
    /// The composites are unit multiples of single basis vectors, supported
    /// on the predicted paths where a prediction applies.
    pub fn values_match(&self) -> bool {
        self.unit_main.is_some()
            && self.unit_prime.is_some()
            && self.path_main_ok != Some(false)
            && self.path_prime_ok != Some(false)
    }

    /// The relative sign `unit_main / unit_prime` agrees with `(−1)^{|ℓ(γ)|}`.
    pub fn sign_matches(&self) -> bool {
        match (self.unit_main, self.unit_prime) {
            (Some(a), Some(b)) => a * b == self.predicted_sign,
            _ => false,
        }
    }
}

impl ModuleStore {
    pub fn check_diamond(&mut self, d: &Diamond) -> Result<DiamondCheck, BggError> {
        let ctx = *self.ctx();
        let values = self.diamond(d)?;
        let unit = |v: &CellVector| {
            as_single_term(v)
                .and_then(|(_, c)| (c.abs() == BigRational::one()).then(|| if c.is_positive() { 1 } else { -1 }))
        };
        let same = d.alpha_same_side(&ctx);
        let (path_main_ok, path_prime_ok) = if same {
            let (wm, wp) = predicted_diamond_walls(&ctx, d);
            let check = |v: &CellVector, walls: &[i64]| {
                let predicted = reflect_initial(&ctx, &d.alpha, walls).map(|p| p.tableau());
                Some(predicted.is_some() && as_single_term(v).map(|(t, _)| t) == predicted)
            };
            (check(&values.via_main, &wm), check(&values.via_prime, &wp))
        } else {
            (None, None)
        };
        let gl = ctx.length(&d.gamma).twice.abs() / 2;
        Ok(DiamondCheck {
            diamond: *d,
            alpha_same_side: same,
            unit_main: unit(&values.via_main),
            unit_prime: unit(&values.via_prime),
            path_main_ok,
            path_prime_ok,
            predicted_sign: if gl % 2 == 0 { 1 } else { -1 },
        })
    }
}

/// `dim L_d(λ)` against the sum over removable nodes of `dim L_{d−1}(λ − □)`,
/// total and graded.
///
/// Two sums are reported. `restricted_sum` runs over every removable node.
/// `refined_sum` drops a node whose removal lands on a wall farther from the
/// origin than `λ`: restricting the complex of `λ` to that residue gives an
/// exact complex, so such a node contributes nothing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchingReport {
    pub lambda: Bipartition,
    pub removed: Vec<Bipartition>,
    /// Removed shapes lying on a wall farther from the origin than `λ`.
    pub outer_wall: Vec<Bipartition>,
    pub dim: usize,
    pub restricted_sum: usize,
    pub refined_sum: usize,
    pub graded: LaurentPoly,
    pub graded_restricted_sum: LaurentPoly,
    pub graded_refined_sum: LaurentPoly,
}

impl BranchingReport {
    /// The sum over all removable nodes matches.
    pub fn holds(&self) -> bool {
        self.dim == self.restricted_sum
    }

    pub fn holds_graded(&self) -> bool {
        self.graded == self.graded_restricted_sum
    }

    /// The sum without outer-wall removals matches.
    pub fn holds_refined(&self) -> bool {
        self.dim == self.refined_sum
    }

    pub fn holds_refined_graded(&self) -> bool {
        self.graded == self.graded_refined_sum
    }
}

pub fn restriction_check(cfg: &AlgebraConfig, lambda: &Bipartition) -> Result<BranchingReport, BggError> {
    lambda.check_size(cfg).map_err(CellError::from)?;
    let ctx = GeometryContext::new(*cfg);
    let graded = simple_graded_dim(&ctx, lambda);
    let dim = simple_basis_paths(&ctx, lambda).len();
    let removed: Vec<Bipartition> = lambda.removable().into_iter().filter_map(|n| lambda.remove(n)).collect();
    let mut outer_wall = Vec::new();
    let (mut restricted_sum, mut refined_sum) = (0, 0);
    let (mut graded_restricted_sum, mut graded_refined_sum) = (LaurentPoly::zero(), LaurentPoly::zero());
    if cfg.d() == 1 {
        // Every removal leaves the empty bipartition, whose simple module is
        // the trivial one-dimensional module.
        restricted_sum = removed.len();
        refined_sum = removed.len();
        graded_restricted_sum = LaurentPoly::monomial(0, removed.len() as i64);
        graded_refined_sum = graded_restricted_sum.clone();
    } else if !removed.is_empty() {
        let small = GeometryContext::new(cfg.with_d(cfg.d() - 1).map_err(CellError::from)?);
        let base = ctx.length(lambda).abs_twice();
        for s in &removed {
            let n = simple_basis_paths(&small, s).len();
            let g = simple_graded_dim(&small, s);
            restricted_sum += n;
            graded_restricted_sum = graded_restricted_sum + g.clone();
            let len = small.length(s);
            if len.is_wall() && len.abs_twice() > base {
                outer_wall.push(*s);
            } else {
                refined_sum += n;
                graded_refined_sum = graded_refined_sum + g;
            }
        }
    }
    Ok(BranchingReport {
        lambda: *lambda,
        removed,
        outer_wall,
        dim,
        restricted_sum,
        refined_sum,
        graded,
        graded_restricted_sum,
        graded_refined_sum,
    })
}
