mod common;

use std::collections::BTreeMap;

use blobalg::cellmod::{
    decomposition_column, decomposition_graded_dim, graded_decomposition_number, simple_graded_dim, CellModule,
    ModuleStore,
};
use blobalg::combinatorics::{AlgebraConfig, Bipartition};
use blobalg::geometry::{simple_basis_paths, GeometryContext};
use common::{abs_twice_length, adjacent, cell_graded_dim, healthy_configs, linked, peeled_simple_dims};
use exactla::LaurentPoly;

#[test]
fn simple_dimensions_match_the_peeling_oracle() {
    for (e, kappa) in healthy_configs(2..=6) {
        for d in 1..=10 {
            let cfg = AlgebraConfig::new(d, e, kappa).unwrap();
            let ctx = GeometryContext::new(cfg);
            let oracle = peeled_simple_dims(&cfg);
            for (b, dim) in &oracle {
                assert_eq!(&simple_graded_dim(&ctx, b), dim, "d={d} e={e} κ={kappa:?} {b}");
                assert_eq!(simple_basis_paths(&ctx, b).len() as i64, dim.eval_at_1());
                assert!(dim.is_bar_invariant());
            }
        }
    }
}

#[test]
fn gram_rank_and_image_quotient_give_the_simple_dimension() {
    for (e, kappa) in healthy_configs(3..=5) {
        for d in 1..=8 {
            let cfg = AlgebraConfig::new(d, e, kappa).unwrap();
            let oracle = peeled_simple_dims(&cfg);
            let mut store = ModuleStore::new(cfg);
            for b in cfg.bipartitions() {
                let want = oracle[&b].eval_at_1() as usize;
                assert_eq!(store.gram_rank(&b).unwrap(), want, "gram d={d} e={e} κ={kappa:?} {b}");
                assert_eq!(store.quotient_dim(&b).unwrap(), want, "quotient d={d} e={e} κ={kappa:?} {b}");
                assert_eq!(store.radical_dim(&b).unwrap(), store.module(b).unwrap().dim() - want);
            }
        }
    }
}

#[test]
fn cell_modules_have_the_tableau_basis() {
    for d in 1..=9 {
        let cfg = AlgebraConfig::new(d, 4, (0, 2)).unwrap();
        for b in cfg.bipartitions() {
            let m = CellModule::new(&cfg, b).unwrap();
            assert_eq!(m.graded_dim(), cell_graded_dim(&cfg, &b));
            assert_eq!(m.dim(), m.basis().len());
        }
    }
}

#[test]
fn graded_decomposition_numbers() {
    for (e, kappa) in healthy_configs(2..=5) {
        for d in 1..=10 {
            let cfg = AlgebraConfig::new(d, e, kappa).unwrap();
            let ctx = GeometryContext::new(cfg);
            for mu in cfg.bipartitions() {
                for lambda in cfg.bipartitions() {
                    let (lm, ll) = (abs_twice_length(&cfg, &mu), abs_twice_length(&cfg, &lambda));
                    let want = if mu == lambda {
                        LaurentPoly::one()
                    } else if linked(&cfg, &mu, &lambda) && ll > lm {
                        LaurentPoly::monomial((ll - lm) / 2, 1)
                    } else {
                        LaurentPoly::zero()
                    };
                    assert_eq!(graded_decomposition_number(&ctx, &mu, &lambda), want, "[Δ({mu}):L({lambda})]");
                }
                assert_eq!(decomposition_graded_dim(&ctx, &mu), cell_graded_dim(&cfg, &mu));
            }
        }
    }
}

#[test]
fn worked_example_decomposition_column() {
    let cfg = AlgebraConfig::new(9, 4, (0, 2)).unwrap();
    let ctx = GeometryContext::new(cfg);
    let got: BTreeMap<Bipartition, LaurentPoly> =
        decomposition_column(&ctx, &Bipartition::new(1, 8)).into_iter().collect();
    let want: BTreeMap<Bipartition, LaurentPoly> = [((1, 8), 0), ((2, 7), 1), ((5, 4), 2), ((6, 3), 1)]
        .into_iter()
        .map(|((a, b), k)| (Bipartition::new(a, b), LaurentPoly::monomial(k, 1)))
        .collect();
    assert_eq!(got, want);
}

#[test]
fn homomorphisms_are_injective_homogeneous_intertwining_maps() {
    for (e, kappa) in healthy_configs(3..=5) {
        for d in 2..=7 {
            let cfg = AlgebraConfig::new(d, e, kappa).unwrap();
            let mut store = ModuleStore::new(cfg);
            for b in cfg.bipartitions() {
                for hom in store.homs_into(&b).unwrap() {
                    let src = store.module(hom.source).unwrap();
                    let tgt = store.module(hom.target).unwrap();
                    assert_eq!(hom.rank(), src.dim(), "{}→{}", hom.source, hom.target);
                    assert_eq!(hom.degree, 1);
                    assert!(hom.is_homogeneous(&src, &tgt));
                    assert!(store.intertwining_failures(&hom).unwrap().is_empty(), "{}→{}", hom.source, hom.target);
                    assert!(store.image_matches_paths(&hom).unwrap());
                    // Sources are linked and one step farther from the origin.
                    assert!(linked(&cfg, &hom.source, &hom.target));
                    assert!(abs_twice_length(&cfg, &hom.source) > abs_twice_length(&cfg, &hom.target));
                }
            }
        }
    }
}

#[test]
fn gap_one_configurations_lose_the_simple_dimension_identity() {
    // With κ₂ − κ₁ ≡ 1 the blob relation kills the generator of Δ(1,2):
    // its Gram form vanishes although two paths survive.
    assert!(adjacent(2, (0, 1)));
    let cfg = AlgebraConfig::new(3, 2, (0, 1)).unwrap();
    let ctx = GeometryContext::new(cfg);
    let mut store = ModuleStore::new(cfg);
    let b = Bipartition::new(1, 2);
    assert_eq!(simple_basis_paths(&ctx, &b).len(), 2);
    assert_eq!(store.gram_rank(&b).unwrap(), 0);
}
