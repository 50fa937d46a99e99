mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use vacuum_core::pbw::{VaVector, VacuumModule};
use vacuum_core::rational::{frac, int, parse_rational, Q};
use vacuum_core::rootsys::LieAlgebra;
use vacuum_core::singular::{
    critical_counterexample, find_singular, gorelik_kac_not_simple, is_admissible, is_singular,
    verify_nonvanishing, weight_space_basis,
};
use vacuum_core::Error;

fn module(spec: &str, k: Q) -> VacuumModule {
    VacuumModule::new(Arc::new(LieAlgebra::from_str_spec(spec).unwrap()), k)
}

fn fixture() -> BTreeMap<String, Vec<usize>> {
    let text = include_str!("fixtures/a1_singular_dims.json");
    let v: serde_json::Value = serde_json::from_str(text).unwrap();
    v["kernel_dims"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(k, dims)| {
            (
                k.clone(),
                dims.as_array()
                    .unwrap()
                    .iter()
                    .map(|d| d.as_u64().unwrap() as usize)
                    .collect(),
            )
        })
        .collect()
}

#[test]
fn fixture_agrees_with_dense_oracle_up_to_degree_four() {
    let g = LieAlgebra::from_str_spec("A1").unwrap();
    for (level, dims) in fixture() {
        let k = parse_rational(&level).unwrap();
        for delta in 1..=4 {
            let (_, ns) = common::oracle_singular_space(&g, &k, delta);
            assert_eq!(ns.len(), dims[delta as usize - 1], "k={level} Δ={delta}");
        }
    }
}

#[test]
fn engine_agrees_with_fixture_up_to_degree_six() {
    for (level, dims) in fixture() {
        let m = module("A1", parse_rational(&level).unwrap());
        let got: Vec<usize> = find_singular(&m, 6)
            .unwrap()
            .iter()
            .map(|r| r.kernel_dim)
            .collect();
        assert_eq!(got, dims, "k={level}");
    }
}

#[test]
fn kernels_span_the_oracle_null_space() {
    let g = LieAlgebra::from_str_spec("A1").unwrap();
    for k in [int(0), int(1), int(2), frac(-4, 3), frac(1, 3)] {
        let m = module("A1", k.clone());
        let reports = find_singular(&m, 3).unwrap();
        for (report, delta) in reports.iter().zip(1..) {
            let (basis, ns) = common::oracle_singular_space(&g, &k, delta);
            let oracle: Vec<VaVector> = ns
                .iter()
                .map(|v| {
                    VaVector::from_terms(k.clone(), basis.iter().cloned().zip(v.iter().cloned()))
                })
                .collect();
            let ours: Vec<VaVector> = report.vectors.iter().map(|v| v.vector.clone()).collect();
            assert_eq!(ours.len(), oracle.len());
            let mut joint = ours.clone();
            joint.extend(oracle.iter().cloned());
            assert_eq!(common::span_rank(&joint), ours.len(), "k={k} Δ={delta}");
        }
    }
}

#[test]
fn level_zero_and_one_lines() {
    let m = module("A1", int(0));
    let e = m.algebra().e_index(0);
    let r = find_singular(&m, 2).unwrap();
    assert_eq!(r[0].kernel_dim, 1);
    assert_eq!(
        r[0].vectors[0].vector,
        m.monomial_vector(m.monomial(&[(e, 1)]))
    );
    assert!(r[0].vectors[0].zhu_nonzero);
    assert_eq!(r[1].kernel_dim, 0);

    let m = module("A1", int(1));
    let r = find_singular(&m, 3).unwrap();
    assert_eq!(
        r.iter().map(|x| x.kernel_dim).collect::<Vec<_>>(),
        vec![0, 1, 0]
    );
    assert_eq!(
        r[1].vectors[0].vector,
        m.monomial_vector(m.monomial(&[(e, 1), (e, 1)]))
    );
    assert_eq!(
        vacuum_core::grpoisson::format_zhu(m.algebra(), &r[1].vectors[0].zhu_image),
        "e[1]^2"
    );
}

#[test]
fn e_minus_one_is_singular_only_at_level_zero() {
    for k in [int(0), int(1), frac(-1, 2), int(-2), frac(7, 5)] {
        let m = module("A1", k.clone());
        let e = m.algebra().e_index(0);
        let v = m.monomial_vector(m.monomial(&[(e, 1)]));
        assert_eq!(is_singular(&m, &v).unwrap(), k.is_zero(), "k={k}");
    }
    let m = module("A1", int(1));
    assert!(is_singular(&m, &m.vacuum()).unwrap());
    assert_eq!(
        is_singular(&m, &m.zero()),
        Err(Error::ZeroVector("singularity test"))
    );
}

#[test]
fn singular_vectors_have_depth_zero() {
    for k in [int(0), int(1), int(2), frac(-1, 2), frac(-4, 3)] {
        let m = module("A1", k.clone());
        let verdict = verify_nonvanishing(&m, 6).unwrap();
        assert!(verdict.pass, "k={k}");
        let found: usize = verdict.reports.iter().map(|r| r.kernel_dim).sum();
        assert!(found >= 1, "k={k}");
        for r in &verdict.reports {
            for v in &r.vectors {
                assert_eq!(v.min_depth, 0);
                assert!(v.zhu_nonzero);
                assert!(v.vector.is_homogeneous(r.delta));
            }
        }
    }
}

#[test]
fn rank_two_singular_vectors() {
    // k = 1 for A2: e_θ(−1)² 𝟏 generates the maximal submodule at Δ = 2.
    let m = module("A2", int(1));
    let verdict = verify_nonvanishing(&m, 2).unwrap();
    assert!(verdict.pass);
    let dims: Vec<usize> = verdict.reports.iter().map(|r| r.kernel_dim).collect();
    assert_eq!(dims, vec![0, 1]);
    let g = m.algebra();
    let theta = g.e_index(g.theta_index);
    assert_eq!(
        verdict.reports[1].vectors[0].vector,
        m.monomial_vector(m.monomial(&[(theta, 1), (theta, 1)]))
    );
    // B2 at k = 0: e_θ(−1)𝟏.
    let m = module("B2", int(0));
    let r = find_singular(&m, 1).unwrap();
    assert_eq!(r[0].kernel_dim, 1);
}

#[test]
fn gorelik_kac_classifier() {
    let g = LieAlgebra::from_str_spec("A1").unwrap();
    let expected = [
        (int(-2), true),
        (frac(-3, 2), false),
        (frac(-4, 3), true),
        (frac(-1, 2), true),
        (int(0), true),
        (int(1), true),
        (frac(7, 5), true),
        (int(-3), false),
        (frac(-5, 3), false),
    ];
    for (k, not_simple) in expected {
        assert_eq!(gorelik_kac_not_simple(&g, &k), not_simple, "k={k}");
    }
    let g2 = LieAlgebra::from_str_spec("G2").unwrap();
    // r∨ = 3, h∨ = 4.
    assert!(!gorelik_kac_not_simple(&g2, &frac(-11, 3)));
    assert!(!gorelik_kac_not_simple(&g2, &frac(-23, 6)));
    assert!(gorelik_kac_not_simple(&g2, &frac(-10, 3)));
}

#[test]
fn simple_levels_have_no_singular_vectors() {
    for k in [frac(-3, 2), frac(-5, 3)] {
        let g = LieAlgebra::from_str_spec("A1").unwrap();
        assert!(!gorelik_kac_not_simple(&g, &k));
        let m = module("A1", k.clone());
        let total: usize = find_singular(&m, 6)
            .unwrap()
            .iter()
            .map(|r| r.kernel_dim)
            .sum();
        assert_eq!(total, 0, "k={k}");
    }
}

#[test]
fn admissibility() {
    let g = LieAlgebra::from_str_spec("A1").unwrap();
    assert!(is_admissible(&g, &frac(-1, 2)));
    assert!(is_admissible(&g, &frac(-5, 4)));
    assert!(is_admissible(&g, &frac(-4, 3)));
    assert!(is_admissible(&g, &int(0)));
    assert!(!is_admissible(&g, &int(-2)));
    assert!(!is_admissible(&g, &frac(-3, 2)));
    let b2 = LieAlgebra::from_str_spec("B2").unwrap();
    // h = 4, h∨ = 3, r∨ = 2: even q needs p ≥ h.
    assert!(is_admissible(&b2, &(frac(9, 2) - int(3))));
    assert!(!is_admissible(&b2, &(frac(3, 2) - int(3))));
    assert!(is_admissible(&b2, &(frac(7, 3) - int(3))));
}

#[test]
fn critical_level_witness() {
    let m = module("A1", int(-2));
    let report = critical_counterexample(&m, 4).unwrap();
    assert!(report.pass);
    assert!(report.sugawara.singular);
    assert_eq!(report.sugawara.min_depth, 0);
    assert!(!report.sugawara.zhu_image.is_zero());
    assert!(report.translated.singular);
    assert!(report.translated.min_depth >= 1);
    assert!(report.translated.zhu_image.is_zero());
    for g in &report.graded {
        assert_eq!(g.depth, g.j as i64);
        assert!(g.singular);
    }
    assert_eq!(verify_nonvanishing(&m, 3), Err(Error::CriticalRefused));
}

#[test]
fn weight_space_enumeration_is_deterministic() {
    let g = LieAlgebra::from_str_spec("B2").unwrap();
    let a = weight_space_basis(&g, 3, Some(&[1, 1]));
    let b = weight_space_basis(&g, 3, Some(&[1, 1]));
    assert_eq!(a.monomials, b.monomials);
    assert!(a.monomials.windows(2).all(|w| w[0] < w[1]));
    for m in &a.monomials {
        assert_eq!(m.stats(&g).weight, vec![1, 1]);
        assert_eq!(a.column(m).map(|i| &a.monomials[i]), Some(m));
    }
}
