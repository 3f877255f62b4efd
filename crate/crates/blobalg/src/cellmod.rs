//! Cell modules, the one-column homomorphisms between them, simple modules
//! and graded decomposition numbers.
//!
//! A homomorphism `φ: Δ(σ) → Δ(μ)` between linked shapes with
//! `|ℓ(σ)| = |ℓ(μ)| + 1` is determined by the image of the cyclic generator:
//! the initial path of `σ` reflected in the wall separating `σ` from `μ`.
//! Every other column follows from `φ(ψ_T) = ψ_{w_T} φ(z)`, evaluated by the
//! straightening engine of the target.
//!
//! Two sources exist for an alcove target: the *main* one on the same side
//! of the origin, and the *prime* one on the opposite side. A wall target has
//! only the prime source.

use std::collections::{BTreeMap, HashMap};

use exactla::{BigRational, LaurentPoly, LinAlgError, RationalMatrix};
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::{AlgebraConfig, Bipartition, CombError, Tableau};
use crate::geometry::{in_main_image, in_prime_image, simple_basis_paths, GeomError, GeometryContext, Path};
use crate::rewrite::{CellVector, Engine, RewriteError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CellError {
    #[error("no one-column homomorphism defined from {domain} to {codomain}")]
    NoHomomorphism { domain: Bipartition, codomain: Bipartition },
    #[error("reflected generator of {domain} ends at {got}, expected {codomain}")]
    GeneratorMismatch { domain: Bipartition, codomain: Bipartition, got: Bipartition },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Comb(#[from] CombError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// `Δ(λ)` as a graded vector space with its standard basis.
#[derive(Debug, Clone)]
pub struct CellModule {
    shape: Bipartition,
    basis: Vec<Tableau>,
    degrees: Vec<i64>,
}

impl CellModule {
    pub fn new(cfg: &AlgebraConfig, shape: Bipartition) -> Result<Self, CellError> {
        shape.check_size(cfg)?;
        let basis = Tableau::enumerate(shape);
        let degrees = basis.iter().map(|t| t.degree(cfg)).collect();
        Ok(CellModule { shape, basis, degrees })
    }

    pub fn shape(&self) -> Bipartition {
        self.shape
    }

    pub fn basis(&self) -> &[Tableau] {
        &self.basis
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `dim_t Δ(λ) = Σ_T t^{deg T}`.
    pub fn graded_dim(&self) -> LaurentPoly {
        self.degrees.iter().map(|&k| LaurentPoly::t_pow(k)).sum()
    }
}

/// Which of the two possible sources a homomorphism starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum HomKind {
    /// Source on the same side of the origin as the target.
    Main,
    /// Source on the opposite side.
    Prime,
}

/// A source shape for a homomorphism into a given target, with the wall
/// separating the two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HomSource {
    pub kind: HomKind,
    pub source: Bipartition,
    pub wall: i64,
}

/// The sources of the homomorphisms into `target`: linked shapes one step
/// further from the origin. Main source first.
pub fn hom_sources(ctx: &GeometryContext, target: &Bipartition) -> Vec<HomSource> {
    let lt = ctx.length(target);
    let pt = ctx.pairing_of_label(target.label());
    let mut out: Vec<HomSource> = ctx
        .linkage_class(target)
        .into_iter()
        .filter(|s| ctx.length(s).abs_twice() == lt.abs_twice() + 2)
        .filter_map(|s| {
            let ls = ctx.length(&s);
            let kind = if ls.side() == lt.side() { HomKind::Main } else { HomKind::Prime };
            if lt.is_wall() && kind == HomKind::Main {
                return None;
            }
            let ps = ctx.pairing_of_label(s.label());
            let wall = (ps + pt).div_euclid(2 * ctx.e());
            Some(HomSource { kind, source: s, wall })
        })
        .collect();
    out.sort_by_key(|h| h.kind);
    out
}

/// The homomorphism datum from `source` to `target`, if one is defined.
pub fn hom_source(ctx: &GeometryContext, source: &Bipartition, target: &Bipartition) -> Result<HomSource, CellError> {
    hom_sources(ctx, target)
        .into_iter()
        .find(|h| h.source == *source)
        .ok_or(CellError::NoHomomorphism { domain: *source, codomain: *target })
}

/// The image of the cyclic generator of `Δ(source)`: the initial path of
/// `source` reflected in the separating wall.
pub fn generator_image(ctx: &GeometryContext, h: &HomSource, target: &Bipartition) -> Result<Tableau, CellError> {
    let path = Path::from(Tableau::initial(h.source)).reflect_last(ctx, h.wall)?;
    if path.end() != *target {
        return Err(CellError::GeneratorMismatch { domain: h.source, codomain: *target, got: path.end() });
    }
    Ok(path.tableau())
}

/// Matrix of a homomorphism `Δ(source) → Δ(target)`: rows indexed by the
/// target basis, columns by the source basis, both in enumeration order.
#[derive(Debug, Clone)]
pub struct HomMatrix {
    pub source: Bipartition,
    pub target: Bipartition,
    pub kind: HomKind,
    pub wall: i64,
    pub generator_image: Tableau,
    pub matrix: RationalMatrix,
    /// Degree of the map; always `1` for these homomorphisms.
    pub degree: i64,
}

impl HomMatrix {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Whether every nonzero entry raises the degree by exactly `degree`.
    pub fn is_homogeneous(&self, source: &CellModule, target: &CellModule) -> bool {
        self.matrix.iter().all(|(r, c, _)| target.degrees()[r] == source.degrees()[c] + self.degree)
    }
}

/// Straightening engines for every shape of one configuration, created on
/// demand.
pub struct ModuleStore {
    ctx: GeometryContext,
    engines: HashMap<Bipartition, Engine>,
}

impl ModuleStore {
    pub fn new(cfg: AlgebraConfig) -> Self {
        ModuleStore { ctx: GeometryContext::new(cfg), engines: HashMap::new() }
    }

    pub fn ctx(&self) -> &GeometryContext {
        &self.ctx
    }

    pub fn config(&self) -> &AlgebraConfig {
        &self.ctx.cfg
    }

    pub fn engine(&mut self, shape: Bipartition) -> Result<&mut Engine, CellError> {
        if !self.engines.contains_key(&shape) {
            let eng = Engine::new(self.ctx.cfg, shape)?;
            self.engines.insert(shape, eng);
        }
        Ok(self.engines.get_mut(&shape).expect("just inserted"))
    }

    /// The engines created so far, ordered by shape.
    pub fn engines(&self) -> Vec<(&Bipartition, &Engine)> {
        let mut v: Vec<_> = self.engines.iter().collect();
        v.sort_by_key(|(s, _)| **s);
        v
    }

    pub fn module(&self, shape: Bipartition) -> Result<CellModule, CellError> {
        CellModule::new(&self.ctx.cfg, shape)
    }

    /// `ψ_{a1} ⋯ ψ_{ak} v` in `Δ(shape)`.
    pub fn act_crossings(
        &mut self,
        shape: Bipartition,
        word: &[usize],
        v: &CellVector,
    ) -> Result<CellVector, CellError> {
        let eng = self.engine(shape)?;
        let mut v = v.clone();
        for &r in word.iter().rev() {
            if v.is_zero() {
                break;
            }
            v = eng.apply_crossing(r, &v)?;
        }
        Ok(v)
    }

    /// Image of a source vector under the homomorphism `h` into `target`.
    pub fn apply_hom(&mut self, h: &HomSource, target: &Bipartition, v: &CellVector) -> Result<CellVector, CellError> {
        let gen = generator_image(&self.ctx, h, target)?;
        let mut out = CellVector::zero();
        for (t, c) in v.iter() {
            let word = t.reduced_word().0;
            let img = self.act_crossings(*target, &word, &CellVector::basis(gen))?;
            out.add_scaled(&img, c);
        }
        Ok(out)
    }

    /// The homomorphism `Δ(source) → Δ(target)`.
    pub fn build_hom(&mut self, source: &Bipartition, target: &Bipartition) -> Result<HomMatrix, CellError> {
        let h = hom_source(&self.ctx, source, target)?;
        let gen = generator_image(&self.ctx, &h, target)?;
        let src_basis = Tableau::enumerate(*source);
        let mut cols = Vec::with_capacity(src_basis.len());
        for t in &src_basis {
            let word = t.reduced_word().0;
            let img = self.act_crossings(*target, &word, &CellVector::basis(gen))?;
            let index = self.engine(*target)?.index();
            cols.push(img.to_coords(index).expect("images stay in the target module"));
        }
        let rows = self.engine(*target)?.dim();
        Ok(HomMatrix {
            source: *source,
            target: *target,
            kind: h.kind,
            wall: h.wall,
            generator_image: gen,
            matrix: RationalMatrix::from_sparse_columns(rows, &cols),
            degree: 1,
        })
    }

    /// All homomorphisms into `target`, main source first.
    pub fn homs_into(&mut self, target: &Bipartition) -> Result<Vec<HomMatrix>, CellError> {
        let sources = hom_sources(&self.ctx, target);
        sources.iter().map(|h| self.build_hom(&h.source, target)).collect()
    }

    /// Generators on which `hom` fails to intertwine the two module
    /// structures, as human-readable names. Empty means `hom` is a module
    /// map.
    pub fn intertwining_failures(&mut self, hom: &HomMatrix) -> Result<Vec<String>, CellError> {
        let d = self.ctx.cfg.d();
        let mut failures = Vec::new();
        let m = &hom.matrix;
        for r in 1..d {
            let a = self.engine(hom.source)?.crossing_matrix(r)?;
            let b = self.engine(hom.target)?.crossing_matrix(r)?;
            if m.checked_mul(&a)? != b.checked_mul(m)? {
                failures.push(format!("psi_{r}"));
            }
        }
        for s in 1..=d {
            let a = self.engine(hom.source)?.dot_matrix(s)?;
            let b = self.engine(hom.target)?.dot_matrix(s)?;
            if m.checked_mul(&a)? != b.checked_mul(m)? {
                failures.push(format!("y_{s}"));
            }
        }
        let cfg = self.ctx.cfg;
        let mut residues: Vec<Vec<u32>> = Tableau::enumerate(hom.source)
            .iter()
            .chain(Tableau::enumerate(hom.target).iter())
            .map(|t| t.residue_sequence(&cfg))
            .collect();
        residues.sort();
        residues.dedup();
        for i in residues {
            let a = self.engine(hom.source)?.idem_matrix(&i);
            let b = self.engine(hom.target)?.idem_matrix(&i);
            if m.checked_mul(&a)? != b.checked_mul(m)? {
                failures.push(format!("e({i:?})"));
            }
        }
        Ok(failures)
    }

    /// Whether the column space of `hom` is the span of the basis vectors
    /// indexed by [`image_paths`].
    pub fn image_matches_paths(&mut self, hom: &HomMatrix) -> Result<bool, CellError> {
        let paths = image_paths(&self.ctx, hom.kind, &hom.target);
        let index = self.engine(hom.target)?.index();
        let cols: Vec<Vec<(usize, BigRational)>> =
            paths.iter().map(|p| vec![(index[&p.tableau()], BigRational::one())]).collect();
        let span = RationalMatrix::from_sparse_columns(hom.matrix.nrows(), &cols);
        Ok(hom.matrix.colspace_equal(&span)?)
    }

    /// `dim Δ(μ) − rank(Σ Im φ)` over all homomorphisms into `μ`.
    pub fn quotient_dim(&mut self, mu: &Bipartition) -> Result<usize, CellError> {
        let dim = self.engine(*mu)?.dim();
        let homs = self.homs_into(mu)?;
        let mut acc = RationalMatrix::zeros(dim, 0);
        for h in &homs {
            acc = acc.hstack(&h.matrix)?;
        }
        Ok(dim - acc.rank())
    }

    pub fn gram_matrix(&mut self, shape: &Bipartition) -> Result<RationalMatrix, CellError> {
        Ok(self.engine(*shape)?.gram_matrix()?)
    }

    pub fn gram_rank(&mut self, shape: &Bipartition) -> Result<usize, CellError> {
        Ok(self.gram_matrix(shape)?.rank())
    }

    /// Dimension of the radical of the form on `Δ(λ)`.
    pub fn radical_dim(&mut self, shape: &Bipartition) -> Result<usize, CellError> {
        let dim = self.engine(*shape)?.dim();
        Ok(dim - self.gram_rank(shape)?)
    }

    /// Summary of `Δ(λ)` and `L(λ)` for reports.
    pub fn report(&mut self, shape: &Bipartition) -> Result<CellReport, CellError> {
        cell_report(&self.ctx, shape)
    }
}

/// The predicate-defined spanning set of the image of the map of the given
/// kind into `target`.
pub fn image_paths(ctx: &GeometryContext, kind: HomKind, target: &Bipartition) -> Vec<Path> {
    Tableau::enumerate(*target)
        .into_iter()
        .map(Path::from)
        .filter(|p| match kind {
            HomKind::Main => in_main_image(ctx, p),
            HomKind::Prime => in_prime_image(ctx, p),
        })
        .collect()
}

/// `dim_t L(μ)` as the generating function of the simple-basis paths.
pub fn simple_graded_dim(ctx: &GeometryContext, mu: &Bipartition) -> LaurentPoly {
    simple_basis_paths(ctx, mu).iter().map(|p| LaurentPoly::t_pow(p.degree(ctx))).sum()
}

/// `[Δ(μ) : L(λ)]_t`.
pub fn graded_decomposition_number(ctx: &GeometryContext, mu: &Bipartition, lambda: &Bipartition) -> LaurentPoly {
    if !ctx.dominates(mu, lambda) {
        return LaurentPoly::zero();
    }
    let gap = ctx.length(lambda).abs_twice() - ctx.length(mu).abs_twice();
    LaurentPoly::t_pow(gap / 2)
}

/// The nonzero column `[Δ(μ) : L(λ)]_t` over the shapes `μ ⊵ λ`.
pub fn decomposition_column(ctx: &GeometryContext, lambda: &Bipartition) -> Vec<(Bipartition, LaurentPoly)> {
    ctx.dominating_class(lambda).into_iter().map(|mu| (mu, graded_decomposition_number(ctx, &mu, lambda))).collect()
}

/// The nonzero row `[Δ(μ) : L(λ)]_t` over the shapes `λ ⊴ μ`.
pub fn decomposition_row(ctx: &GeometryContext, mu: &Bipartition) -> Vec<(Bipartition, LaurentPoly)> {
    ctx.linkage_class(mu)
        .into_iter()
        .filter(|l| ctx.dominates(mu, l))
        .map(|l| (l, graded_decomposition_number(ctx, mu, &l)))
        .collect()
}

/// `Σ_λ [Δ(μ) : L(λ)]_t · dim_t L(λ)`, which must reproduce `dim_t Δ(μ)`.
pub fn decomposition_graded_dim(ctx: &GeometryContext, mu: &Bipartition) -> LaurentPoly {
    decomposition_row(ctx, mu).iter().map(|(l, d)| d * &simple_graded_dim(ctx, l)).sum()
}

/// JSON-ready summary of one cell module.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellReport {
    pub shape: String,
    pub length: String,
    pub dim: usize,
    pub dim_t: LaurentPoly,
    pub simple_dim: usize,
    pub simple_dim_t: LaurentPoly,
    /// `[Δ(shape) : L(λ)]_t` for the shapes `λ` below.
    pub decomposition: BTreeMap<String, LaurentPoly>,
}

pub fn cell_report(ctx: &GeometryContext, shape: &Bipartition) -> Result<CellReport, CellError> {
    let module = CellModule::new(&ctx.cfg, *shape)?;
    let simple = simple_graded_dim(ctx, shape);
    Ok(CellReport {
        shape: shape.to_string(),
        length: ctx.length(shape).to_string(),
        dim: module.dim(),
        dim_t: module.graded_dim(),
        simple_dim: simple.eval_at_1() as usize,
        simple_dim_t: simple,
        decomposition: decomposition_row(ctx, shape).into_iter().map(|(l, d)| (l.to_string(), d)).collect(),
    })
}

/// Coordinates of a vector that is a unit multiple of one basis vector.
pub fn as_single_term(v: &CellVector) -> Option<(Tableau, BigRational)> {
    if v.len() != 1 {
        return None;
    }
    v.iter().next().map(|(t, c)| (*t, c.clone())).filter(|(_, c)| !c.is_zero())
}
