//! Oracles shared by the module-level test suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use blobalg::combinatorics::{enumerate_bipartitions, AlgebraConfig, Bipartition, Tableau};
use exactla::LaurentPoly;

/// `κ₂ − κ₁ ≡ 1 (mod e)`: the configurations in which the blob relation
/// kills idempotents of most cell modules.
pub fn adjacent(e: i64, kappa: (i64, i64)) -> bool {
    (kappa.1 - kappa.0).rem_euclid(e) == 1
}

/// All `(e, κ)` with `e` in the range and `κ₂ − κ₁ ≢ 1 (mod e)`.
pub fn healthy_configs(es: std::ops::RangeInclusive<i64>) -> Vec<(i64, (i64, i64))> {
    es.flat_map(|e| AlgebraConfig::standard_kappas(e).into_iter().map(move |k| (e, k)))
        .filter(|&(e, k)| !adjacent(e, k))
        .collect()
}

/// Twice `|ℓ|` from the alcove definition.
pub fn abs_twice_length(cfg: &AlgebraConfig, b: &Bipartition) -> i64 {
    let e = cfg.e();
    let p = b.label() + cfg.kappa().1 - cfg.kappa().0;
    let twice = if p.rem_euclid(e) == 0 { 2 * (p / e) - 1 } else { 2 * p.div_euclid(e) };
    twice.abs()
}

/// Linkage as equality of the residue multisets of the nodes.
pub fn linked(cfg: &AlgebraConfig, a: &Bipartition, b: &Bipartition) -> bool {
    let content = |x: &Bipartition| {
        let (k1, k2) = cfg.kappa();
        let mut m = BTreeMap::new();
        for (len, k) in [(x.l1, k1), (x.l2, k2)] {
            for r in 1..=len as i64 {
                *m.entry((k + 1 - r).rem_euclid(cfg.e())).or_insert(0usize) += 1;
            }
        }
        m
    };
    content(a) == content(b)
}

/// `Σ_T t^{deg T}` over the standard tableaux of the shape.
pub fn cell_graded_dim(cfg: &AlgebraConfig, b: &Bipartition) -> LaurentPoly {
    Tableau::enumerate(*b).iter().map(|t| LaurentPoly::monomial(t.degree(cfg), 1)).sum()
}

/// Graded simple dimensions obtained by peeling composition factors off the
/// cell modules, from the shapes farthest from the origin inwards:
/// `dim_t L(λ) = dim_t Δ(λ) − Σ t^{|ℓ(ν)|−|ℓ(λ)|} dim_t L(ν)` over linked `ν`
/// strictly farther out.
pub fn peeled_simple_dims(cfg: &AlgebraConfig) -> BTreeMap<Bipartition, LaurentPoly> {
    let mut shapes = enumerate_bipartitions(cfg.d());
    shapes.sort_by_key(|b| std::cmp::Reverse(abs_twice_length(cfg, b)));
    let mut out: BTreeMap<Bipartition, LaurentPoly> = BTreeMap::new();
    for b in shapes {
        let lb = abs_twice_length(cfg, &b);
        let mut dim = cell_graded_dim(cfg, &b);
        for (nu, l) in &out {
            let ln = abs_twice_length(cfg, nu);
            if ln > lb && linked(cfg, &b, nu) {
                dim = dim - LaurentPoly::monomial((ln - lb) / 2, 1) * l.clone();
            }
        }
        out.insert(b, dim);
    }
    out
}
