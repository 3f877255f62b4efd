//! Per-shape verification checks shared by `blob verify` and the acceptance
//! suite. Every check is exact; a failing check carries a witness.

use anyhow::Result;
use blobalg::bgg::{diamonds, restriction_check, SignConvention};
use blobalg::cellmod::{decomposition_graded_dim, simple_graded_dim, CellModule, ModuleStore};
use blobalg::combinatorics::{AlgebraConfig, Bipartition};
use blobalg::geometry::simple_basis_paths;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        let witness = if ok { None } else { Some(witness()) };
        Check { name: name.into(), ok, witness }
    }
}

/// Bounds and switches for one verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest `d` for the relation suite.
    pub relations_max_d: usize,
    /// Largest `d` for the generator-by-generator intertwining test.
    pub intertwining_max_d: usize,
    pub signs: SignConvention,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { relations_max_d: 7, intertwining_max_d: 7, signs: SignConvention::Displayed }
    }
}

/// Every defining and Garnir relation holds on `Δ(λ)`.
pub fn check_relations(store: &mut ModuleStore, lambda: &Bipartition) -> Result<Check> {
    let report = store.engine(*lambda)?.relation_suite()?;
    let failures: Vec<String> = report
        .failures()
        .map(|c| format!("{} ({} failures, first at {})", c.relation, c.failed, c.witness.clone().unwrap_or_default()))
        .collect();
    Ok(Check::new("relations", failures.is_empty(), || failures.join("; ")))
}

/// Path count, Gram rank and image quotient agree; the graded simple
/// dimension is bar-invariant; the graded decomposition identity holds.
pub fn check_simple(store: &mut ModuleStore, lambda: &Bipartition) -> Result<Vec<Check>> {
    let ctx = *store.ctx();
    let paths = simple_basis_paths(&ctx, lambda).len();
    let gram = store.gram_rank(lambda)?;
    let quotient = store.quotient_dim(lambda)?;
    let dim_t = simple_graded_dim(&ctx, lambda);
    let cell_t = CellModule::new(store.config(), *lambda)?.graded_dim();
    let sum_t = decomposition_graded_dim(&ctx, lambda);
    Ok(vec![
        Check::new("simple dimension: paths = gram rank = image quotient", paths == gram && gram == quotient, || {
            format!("paths {paths}, gram rank {gram}, image quotient {quotient}")
        }),
        Check::new("graded simple dimension is bar-invariant", dim_t.is_bar_invariant(), || format!("{dim_t}")),
        Check::new("graded decomposition identity", cell_t == sum_t, || format!("dim_t Δ = {cell_t}, sum = {sum_t}")),
    ])
}

/// Every homomorphism into `Δ(λ)`: full column rank, degree one, image
/// spanned by the predicted paths, and (for small `d`) intertwining.
pub fn check_homs(store: &mut ModuleStore, lambda: &Bipartition, intertwine: bool) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for hom in store.homs_into(lambda)? {
        let label = format!("{}→{}", hom.source, hom.target);
        let src = store.module(hom.source)?;
        let tgt = store.module(hom.target)?;
        let rank = hom.rank();
        out.push(Check::new(format!("hom {label}: full column rank"), rank == src.dim(), || {
            format!("rank {rank} < {}", src.dim())
        }));
        out.push(Check::new(format!("hom {label}: homogeneous of degree 1"), hom.is_homogeneous(&src, &tgt), || {
            "a matrix entry changes degree by other than 1".into()
        }));
        let image_ok = store.image_matches_paths(&hom)?;
        out.push(Check::new(format!("hom {label}: image spanned by predicted paths"), image_ok, || {
            "column space differs from the predicted path span".into()
        }));
        if intertwine {
            let bad = store.intertwining_failures(&hom)?;
            out.push(Check::new(format!("hom {label}: intertwines generators"), bad.is_empty(), || bad.join("; ")));
        }
    }
    Ok(out)
}

/// The BGG complex of an alcove shape, or the two-term complex of a wall
/// shape, resolves `L(λ)`.
pub fn check_bgg(store: &mut ModuleStore, lambda: &Bipartition, signs: SignConvention) -> Result<Vec<Check>> {
    let ctx = *store.ctx();
    let simple = simple_basis_paths(&ctx, lambda).len();
    if ctx.length(lambda).is_wall() {
        let w = store.build_wall_complex(lambda)?;
        return Ok(vec![
            Check::new("wall complex: injective", w.is_injective(), || format!("rank {} < {}", w.rank, w.source_dim)),
            Check::new("wall complex: cokernel = L", w.cokernel_dim() == simple, || {
                format!("cokernel {} vs simple {simple}", w.cokernel_dim())
            }),
        ]);
    }
    let c = store.build_complex_with(lambda, signs)?;
    let sq = c.square_failures()?;
    let h = c.homology();
    let graded = simple_graded_dim(&ctx, lambda);
    Ok(vec![
        Check::new("complex: δ∘δ = 0", sq.is_empty(), || format!("δ_i∘δ_(i+1) ≠ 0 for i in {sq:?}")),
        Check::new("complex: differentials of degree 0", c.is_degree_zero(), || "a block changes degree".into()),
        Check::new("complex: H_0 = L", h.dims[0] == simple as i64 && h.graded[0] == graded, || {
            format!("H_0 {} ({}) vs L {simple} ({graded})", h.dims[0], h.graded[0])
        }),
        Check::new("complex: H_i = 0 for i > 0", h.dims[1..].iter().all(|&x| x == 0), || format!("{:?}", h.dims)),
        Check::new(
            "complex: Euler characteristic = dim L",
            c.euler_characteristic() == simple as i64 && c.graded_euler_characteristic() == graded,
            || format!("{} ({}) vs {simple} ({graded})", c.euler_characteristic(), c.graded_euler_characteristic()),
        ),
    ])
}

/// `dim L_d(λ) = Σ_□ dim L_{d−1}(λ − □)` over all removable nodes.
pub fn check_branching(cfg: &AlgebraConfig, lambda: &Bipartition) -> Result<Check> {
    let b = restriction_check(cfg, lambda)?;
    Ok(Check::new("branching over all removable nodes", b.holds(), || {
        format!(
            "dim L = {}, sum = {} over {:?}; without outer-wall removals {:?}: {}",
            b.dim,
            b.restricted_sum,
            b.removed.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            b.outer_wall.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            b.refined_sum
        )
    }))
}

/// Both compositions around every diamond are unit multiples of the
/// predicted basis vector.
pub fn check_diamonds(store: &mut ModuleStore) -> Result<Vec<Check>> {
    let ctx = *store.ctx();
    let mut out = Vec::new();
    for dm in diamonds(&ctx) {
        let ch = store.check_diamond(&dm)?;
        out.push(Check::new(
            format!("diamond {}→({},{})→{}", dm.alpha, dm.beta, dm.beta_prime, dm.gamma),
            ch.values_match(),
            || {
                format!(
                    "units {:?}/{:?}, paths {:?}/{:?}",
                    ch.unit_main, ch.unit_prime, ch.path_main_ok, ch.path_prime_ok
                )
            },
        ));
    }
    Ok(out)
}

/// Result of verifying one shape.
#[derive(Debug, Clone, Serialize)]
pub struct ShapeVerdict {
    pub d: usize,
    pub e: i64,
    pub kappa: (i64, i64),
    pub lambda: String,
    pub checks: Vec<Check>,
}

impl ShapeVerdict {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// Runs every per-shape check for one configuration, and the diamond checks
/// as a pseudo-shape `"diamonds"`.
pub fn verify_config(store: &mut ModuleStore, opts: &VerifyOptions) -> Result<Vec<ShapeVerdict>> {
    let cfg = *store.config();
    let d = cfg.d();
    let mut out = Vec::new();
    for lambda in cfg.bipartitions() {
        let mut checks = Vec::new();
        if d <= opts.relations_max_d {
            checks.push(check_relations(store, &lambda)?);
        }
        checks.extend(check_simple(store, &lambda)?);
        checks.extend(check_homs(store, &lambda, d <= opts.intertwining_max_d)?);
        checks.extend(check_bgg(store, &lambda, opts.signs)?);
        if d >= 2 && !store.ctx().length(&lambda).is_wall() {
            checks.push(check_branching(&cfg, &lambda)?);
        }
        out.push(ShapeVerdict { d, e: cfg.e(), kappa: cfg.kappa(), lambda: lambda.to_string(), checks });
    }
    let checks = check_diamonds(store)?;
    if !checks.is_empty() {
        out.push(ShapeVerdict { d, e: cfg.e(), kappa: cfg.kappa(), lambda: "diamonds".into(), checks });
    }
    Ok(out)
}
